use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (out, err, code) = qgalg::cli::main_with_args(&argv);
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    std::process::exit(code);
}
