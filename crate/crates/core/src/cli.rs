//! Command-line front end: argument model, report type and rendering.
//!
//! The `qgalg` binary is a thin wrapper around [`run`].

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_decomposition, reproduce_table, ComponentClass, RowStatus, TableReport, VcrReport};
use crate::error::{Error, Result};
use crate::fingerprint::{
    compare_fingerprints, congruence_fingerprint_cached, Comparison, Fingerprint, FingerprintCache, ModulusEntry,
};
use crate::perm::{parse_cycles, Catalog, FiniteGroup, PermGroup, Tier};
use crate::wedderburn::{decompose, Decomposition, SimpleComponentDescriptor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qgalg",
    version,
    about = "Wedderburn decompositions of rational group algebras"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Leave `elapsed_ms` out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TierArg {
    Default,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wedderburn decomposition of ℚG.
    Decompose {
        /// Catalog name or `perm:<degree>:<cycles;cycles;...>`.
        group: String,
    },
    /// Classify every simple component of ℚG.
    Classify { group: String },
    /// Decide the component condition for G.
    Vcr { group: String },
    /// Regress the bundled tables.
    Tables {
        /// Table number (1 to 4); all tables when absent.
        #[arg(long)]
        table: Option<u8>,
        #[arg(long, value_enum, default_value_t = TierArg::Default)]
        tier: TierArg,
    },
    /// Congruence-quotient fingerprint of U(ℤG).
    Fingerprint {
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Compare the fingerprints of two groups.
    Compare {
        left: String,
        right: String,
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Print the JSON schema of the report.
    Schema,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct GroupId {
    pub name: String,
    pub order: usize,
    pub degree: usize,
    /// SHA-256 over the sorted element list.
    pub hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ComponentView {
    pub matrix_size: u64,
    pub center: String,
    pub cyclotomic_order: u64,
    pub crossed_degree: u64,
    pub rational_dimension: u64,
    /// `M_m(F)` for `d = 1`, otherwise the crossed-product datum.
    pub datum: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DecompositionView {
    pub complete: bool,
    pub group_order: usize,
    pub dimension_sum: u64,
    pub components: Vec<ComponentView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ClassificationView {
    pub complete: bool,
    pub components: Vec<ComponentClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ComparisonView {
    pub left: Fingerprint,
    pub right: Fingerprint,
    pub comparison: Comparison,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Decomposition(DecompositionView),
    Classification(ClassificationView),
    Vcr(VcrReport),
    Tables { tables: Vec<TableReport> },
    Fingerprint(Fingerprint),
    Comparison(ComparisonView),
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Report {
    pub command: Vec<String>,
    pub group: Option<GroupId>,
    pub result: Payload,
    pub provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    /// Exit code for a successful run producing this report.
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Payload::Tables { tables } if tables.iter().any(|t| t.mismatches() > 0) => EXIT_MISMATCH,
            Payload::Error { .. } => EXIT_USAGE,
            _ => EXIT_OK,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering; drops most of the detail.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(g) = &self.group {
            let _ = writeln!(out, "group {} (order {}, degree {})", g.name, g.order, g.degree);
        }
        match &self.result {
            Payload::Decomposition(d) => {
                for c in &d.components {
                    let _ = writeln!(out, "  [{}, {}]  {}", c.matrix_size, c.center, c.datum);
                }
                let _ = writeln!(
                    out,
                    "complete: {}; dimension {} of {}",
                    d.complete, d.dimension_sum, d.group_order
                );
            }
            Payload::Classification(c) => {
                for comp in &c.components {
                    let _ = writeln!(out, "  {:<16} {}", comp.tag.to_string(), comp.detail);
                }
                let _ = writeln!(out, "complete: {}", c.complete);
            }
            Payload::Vcr(v) => {
                let _ = writeln!(out, "vcr: {}", v.verdict);
                for w in &v.witnesses {
                    let tag = w.tag.map(|t| t.to_string()).unwrap_or_else(|| "-".into());
                    let _ = writeln!(out, "  witness {} ({tag}) from {:?}", w.algebra, w.source);
                }
            }
            Payload::Tables { tables } => {
                for t in tables {
                    let _ = writeln!(
                        out,
                        "table {} ({}): {} match, {} mismatch, {} attested, {} skipped",
                        t.table,
                        t.tier,
                        t.count(RowStatus::Match),
                        t.mismatches(),
                        t.count(RowStatus::Attested),
                        t.count(RowStatus::Skipped)
                    );
                    for r in t.rows.iter().filter(|r| r.status == RowStatus::Mismatch) {
                        let _ = writeln!(
                            out,
                            "  line {} {}: expected {}, computed {}",
                            r.line, r.group, r.expected, r.computed
                        );
                    }
                }
            }
            Payload::Fingerprint(f) => write_fingerprint(&mut out, f),
            Payload::Comparison(c) => {
                write_fingerprint(&mut out, &c.left);
                write_fingerprint(&mut out, &c.right);
                match &c.comparison {
                    Comparison::Indistinguishable { moduli } => {
                        let _ = writeln!(out, "indistinguishable at moduli {moduli:?}");
                    }
                    Comparison::DistinguishedAt {
                        modulus,
                        field,
                        left,
                        right,
                    } => {
                        let _ = writeln!(out, "distinguished at m = {modulus} by {field}: {left} vs {right}");
                    }
                }
            }
            Payload::Error { message } => {
                let _ = writeln!(out, "error: {message}");
            }
        }
        for p in &self.provenance {
            let _ = writeln!(out, "# {p}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "# {ms} ms");
        }
        out
    }
}

fn write_fingerprint(out: &mut String, f: &Fingerprint) {
    let _ = writeln!(out, "{}:", f.group);
    for e in &f.entries {
        match e {
            ModulusEntry::Computed(r) => {
                let _ = writeln!(
                    out,
                    "  m = {}: order {}, abelianization {:?}, exponent {}, classes {}",
                    r.modulus, r.unit_group_order, r.abelianization, r.exponent, r.class_count
                );
            }
            ModulusEntry::Skipped { modulus, reason } => {
                let _ = writeln!(out, "  m = {modulus}: skipped ({reason})");
            }
        }
    }
}

/// Exit code for a library error.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeBound { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

/// Resolves a catalog name or an inline `perm:<degree>:<cycles;...>` description.
pub fn resolve_group(input: &str) -> Result<(String, Arc<PermGroup>)> {
    if let Some(rest) = input.strip_prefix("perm:") {
        let (deg, gens) = rest.split_once(':').ok_or_else(|| Error::Parse {
            location: input.into(),
            message: "expected perm:<degree>:<generators>".into(),
        })?;
        let degree: usize = deg.trim().parse().map_err(|_| Error::Parse {
            location: input.into(),
            message: format!("bad degree `{deg}`"),
        })?;
        let perms = gens
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        let g = PermGroup::from_generators(degree, perms)?;
        return Ok((input.to_string(), Arc::new(g)));
    }
    let catalog = Catalog::load()?;
    let entry = catalog.get(input).ok_or_else(|| Error::UnknownGroup(input.to_string()))?;
    Ok((entry.name.clone(), Arc::new(entry.group()?)))
}

fn group_id(name: &str, g: &PermGroup) -> GroupId {
    GroupId {
        name: name.to_string(),
        order: g.order(),
        degree: g.degree(),
        hash: g.elements_hash(),
    }
}

fn crossed_datum(c: &SimpleComponentDescriptor) -> String {
    let (m, d, k) = (c.matrix_size, c.crossed_degree, c.cyclotomic_order);
    if d == 1 {
        return if m == 1 {
            c.center.to_string()
        } else {
            format!("M{m}({})", c.center)
        };
    }
    let inner = match c.cyclic_generator() {
        Some(r) => {
            let (_, s) = c.power_exponent(r);
            let power = if s == 0 {
                "1".to_string()
            } else {
                format!("zeta_{k}^{s}")
            };
            format!(
                "(Q(zeta_{k})/{}, zeta -> zeta^{}, u^{d} = {power})",
                c.center, c.action[r]
            )
        }
        None => format!("(Q(zeta_{k})/{}, non-cyclic of order {d})", c.center),
    };
    if m == 1 {
        inner
    } else {
        format!("M{m}{inner}")
    }
}

pub fn decomposition_view(dec: &Decomposition) -> DecompositionView {
    DecompositionView {
        complete: dec.complete,
        group_order: dec.group_order,
        dimension_sum: dec.total_dimension(),
        components: dec
            .components
            .iter()
            .map(|c| ComponentView {
                matrix_size: c.matrix_size,
                center: c.center.to_string(),
                cyclotomic_order: c.cyclotomic_order,
                crossed_degree: c.crossed_degree,
                rational_dimension: c.rational_dimension(),
                datum: crossed_datum(c),
            })
            .collect(),
    }
}

fn completeness_note(complete: bool) -> String {
    if complete {
        "recomputed: strong Shoda pairs account for all of QG".into()
    } else {
        "recomputed: strong Shoda pairs do not account for all of QG; listed components only".into()
    }
}

fn cache(dir: &Option<PathBuf>) -> Option<FingerprintCache> {
    dir.as_ref().map(FingerprintCache::new)
}

/// The JSON schema of [`Report`].
pub fn report_schema() -> String {
    let schema = schemars::schema_for!(Report);
    serde_json::to_string_pretty(&schema).expect("schema serializes") + "\n"
}

/// Runs a parsed command. `argv` is echoed into the report.
pub fn run(cli: &Cli, argv: &[String]) -> Result<Report> {
    let start = Instant::now();
    let mut group = None;
    let mut provenance = Vec::new();
    let result = match &cli.command {
        Command::Decompose { group: input } => {
            let (name, g) = resolve_group(input)?;
            group = Some(group_id(&name, &g));
            let dec = decompose(&g)?;
            provenance.push(completeness_note(dec.complete));
            Payload::Decomposition(decomposition_view(&dec))
        }
        Command::Classify { group: input } => {
            let (name, g) = resolve_group(input)?;
            group = Some(group_id(&name, &g));
            let dec = decompose(&g)?;
            provenance.push(completeness_note(dec.complete));
            Payload::Classification(ClassificationView {
                complete: dec.complete,
                components: classify_decomposition(&dec)?,
            })
        }
        Command::Vcr { group: input } => {
            let (name, g) = resolve_group(input)?;
            group = Some(group_id(&name, &g));
            let v = crate::classify::vcr_verdict(&g)?;
            provenance.push(completeness_note(v.complete));
            if v.has_quotient_witness() {
                provenance.push("quotient witnesses carry the component attested for the excluded group".into());
            }
            Payload::Vcr(v)
        }
        Command::Tables { table, tier } => {
            let tier = match tier {
                TierArg::Default => Tier::Default,
                TierArg::All => Tier::Extended,
            };
            let which: Vec<u8> = match table {
                Some(t) => vec![*t],
                None => vec![1, 2, 3, 4],
            };
            let tables = which
                .iter()
                .map(|&t| reproduce_table(t, tier))
                .collect::<Result<Vec<_>>>()?;
            let attested: usize = tables.iter().map(|t| t.count(RowStatus::Attested)).sum();
            let recomputed: usize = tables
                .iter()
                .map(|t| t.count(RowStatus::Match) + t.count(RowStatus::Mismatch))
                .sum();
            provenance.push(format!("{recomputed} rows recomputed, {attested} attested"));
            Payload::Tables { tables }
        }
        Command::Fingerprint {
            group: input,
            moduli,
            cache_dir,
        } => {
            let (name, g) = resolve_group(input)?;
            group = Some(group_id(&name, &g));
            let f = congruence_fingerprint_cached(&name, &g, moduli, cache(cache_dir).as_ref())?;
            provenance.push("recomputed by enumeration of (Z/m)G".into());
            Payload::Fingerprint(f)
        }
        Command::Compare {
            left,
            right,
            moduli,
            cache_dir,
        } => {
            let c = cache(cache_dir);
            let (na, a) = resolve_group(left)?;
            let (nb, b) = resolve_group(right)?;
            let fa = congruence_fingerprint_cached(&na, &a, moduli, c.as_ref())?;
            let fb = congruence_fingerprint_cached(&nb, &b, moduli, c.as_ref())?;
            let comparison = compare_fingerprints(&fa, &fb);
            if matches!(comparison, Comparison::Indistinguishable { .. }) {
                provenance.push("indistinguishable only over the listed moduli; not an isomorphism proof".into());
            }
            Payload::Comparison(ComparisonView {
                left: fa,
                right: fb,
                comparison,
            })
        }
        Command::Schema => {
            return Err(Error::InvalidInput("the schema command has no report".into()));
        }
    };
    Ok(Report {
        command: argv.to_vec(),
        group,
        result,
        provenance,
        elapsed_ms: (!cli.no_timing).then(|| start.elapsed().as_millis() as u64),
    })
}

/// Parses `argv`, runs, and returns (stdout text, stderr text, exit code).
pub fn main_with_args(argv: &[String]) -> (String, String, i32) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (text, String::new(), code)
            } else {
                (String::new(), text, code)
            };
        }
    };
    if matches!(cli.command, Command::Schema) {
        return (report_schema(), String::new(), EXIT_OK);
    }
    let args = argv.iter().skip(1).cloned().collect::<Vec<_>>();
    match run(&cli, &args) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            (text, String::new(), report.exit_code())
        }
        Err(e) => {
            let code = error_exit_code(&e);
            match cli.format {
                Format::Json => {
                    let report = Report {
                        command: args,
                        group: None,
                        result: Payload::Error { message: e.to_string() },
                        provenance: Vec::new(),
                        elapsed_ms: None,
                    };
                    (report.to_json() + "\n", format!("error: {e}\n"), code)
                }
                Format::Text => (String::new(), format!("error: {e}\n"), code),
            }
        }
    }
}
