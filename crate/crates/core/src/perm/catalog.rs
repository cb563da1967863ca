//! The bundled catalog of named groups.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::iso::IsoOutcome;
use super::perm::Perm;
use super::traits::FiniteGroup;
use crate::data::{self, Record};
use crate::error::{Error, Result};

pub use crate::data::DATA_DIR_ENV;

pub const CATALOG_FILE: &str = "catalog.txt";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Default,
    Extended,
}

impl Tier {
    pub fn parse(s: &str) -> Option<Tier> {
        match s {
            "" | "default" => Some(Tier::Default),
            "extended" => Some(Tier::Extended),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Default => "default",
            Tier::Extended => "extended",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub order: usize,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub aliases: Vec<String>,
    /// Wedderburn component recorded for the group in the excluded-groups
    /// table, e.g. `M3(Q)`.
    pub witness_component: Option<String>,
    pub tier: Tier,
}

impl CatalogEntry {
    /// Builds the group and checks the stated order.
    pub fn group(&self) -> Result<PermGroup> {
        let g = PermGroup::from_generators(self.degree, self.generators.clone())?;
        if g.order() != self.order {
            return Err(Error::invalid(format!(
                "catalog entry {}: generators give order {}, expected {}",
                self.name,
                g.order(),
                self.order
            )));
        }
        Ok(g)
    }

    pub fn matches(&self, name: &str) -> bool {
        let n = normalize_name(name);
        normalize_name(&self.name) == n || self.aliases.iter().any(|a| normalize_name(a) == n)
    }
}

/// Canonical spelling of a group name: whitespace removed, `SG[n,m]` and
/// `SmallGroup(n,m)` folded to `SG(n,m)`, `×` folded to `x`.
pub fn normalize_name(name: &str) -> String {
    let s: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '×' => 'x',
            '⋊' => ':',
            c => c,
        })
        .collect();
    let s = s.replace("\\times", "x").replace("\\rtimes", ":");
    let s = if let Some(rest) = s.strip_prefix("SmallGroup") {
        format!("SG{rest}")
    } else {
        s
    };
    if let Some(rest) = s.strip_prefix("SG[") {
        if let Some(inner) = rest.strip_suffix(']') {
            return format!("SG({inner})");
        }
    }
    s
}

/// Parses `(1,2,3)(4,5)` on `degree` points; `()` or the empty string is the
/// identity.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(text, "expected `(`"))?;
        let close = open.find(')').ok_or_else(|| Error::parse(text, "unclosed cycle"))?;
        let body = &open[..close];
        if !body.trim().is_empty() {
            let pts = body
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::parse(text, format!("bad point `{}`", p.trim())))
                })
                .collect::<Result<Vec<u32>>>()?;
            cycles.push(pts);
        }
        rest = open[close + 1..].trim_start();
    }
    Perm::from_cycles(degree, &cycles)
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str, source: &str) -> Result<Catalog> {
        let records = data::parse_records(text, source, "catalog", 7)?;
        let entries = records
            .iter()
            .map(|r| Self::entry(r, source))
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { entries })
    }

    fn entry(r: &Record, source: &str) -> Result<CatalogEntry> {
        let loc = format!("{source}:{}", r.line);
        let num = |i: usize, what: &str| {
            r.field(i)
                .parse::<usize>()
                .map_err(|_| Error::parse(&loc, format!("bad {what} `{}`", r.field(i))))
        };
        let order = num(1, "order")?;
        let degree = num(2, "degree")?;
        let generators = r
            .field(3)
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_cycles(degree, s).map_err(|e| Error::parse(&loc, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let tier = Tier::parse(r.field(6)).ok_or_else(|| Error::parse(&loc, format!("bad tier `{}`", r.field(6))))?;
        Ok(CatalogEntry {
            name: r.field(0).to_string(),
            order,
            degree,
            generators,
            aliases: r.list(4),
            witness_component: Some(r.field(5).to_string()).filter(|s| !s.is_empty()),
            tier,
        })
    }

    /// The catalog from the data directory override, or the bundled copy.
    pub fn load() -> Result<Catalog> {
        let (text, source) = data::read_data_file(CATALOG_FILE)?;
        Catalog::parse(&text, &source)
    }

    /// The bundled catalog, parsed once.
    pub fn bundled() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            Catalog::parse(data::bundled(CATALOG_FILE).expect("bundled catalog"), CATALOG_FILE)
                .expect("bundled catalog parses")
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.matches(name))
    }

    pub fn group(&self, name: &str) -> Result<PermGroup> {
        self.get(name)
            .ok_or_else(|| Error::UnknownGroup(name.to_string()))?
            .group()
    }

    /// Entries carrying a witness component (the excluded-groups table).
    pub fn excluded_groups(&self) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.witness_component.is_some()).collect()
    }
}

/// Looks `name` up in the bundled catalog.
pub fn catalog_load(name: &str) -> Result<PermGroup> {
    Catalog::bundled().group(name)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpimorphicImages {
    pub found: Vec<String>,
    /// Candidates for which the isomorphism search hit its node limit.
    pub undecided: Vec<String>,
}

/// Names of the `candidates` isomorphic to some quotient of `g`.
pub fn epimorphic_images_in(g: &PermGroup, candidates: &[&CatalogEntry]) -> Result<Vec<String>> {
    Ok(epimorphic_images_in_detailed(g, candidates)?.found)
}

pub fn epimorphic_images_in_detailed(g: &PermGroup, candidates: &[&CatalogEntry]) -> Result<EpimorphicImages> {
    let normals = g.normal_subgroups()?;
    let mut targets: Vec<(&CatalogEntry, Option<PermGroup>)> = candidates
        .iter()
        .filter(|c| g.order() % c.order == 0)
        .map(|c| (*c, None))
        .collect();
    let mut out = EpimorphicImages::default();
    for (entry, built) in targets.iter_mut() {
        let mut decided = false;
        let mut undecided = false;
        for n in normals.iter().filter(|n| g.order() / n.order() == entry.order) {
            let q = g.quotient(n)?;
            if built.is_none() {
                *built = Some(entry.group()?);
            }
            match q.group.is_isomorphic(built.as_ref().expect("built")) {
                IsoOutcome::Isomorphic => {
                    decided = true;
                    break;
                }
                IsoOutcome::Undecided => undecided = true,
                IsoOutcome::NotIsomorphic => {}
            }
        }
        if decided {
            out.found.push(entry.name.clone());
        } else if undecided {
            out.undecided.push(entry.name.clone());
        }
    }
    out.found.sort();
    out.undecided.sort();
    Ok(out)
}
