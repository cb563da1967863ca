//! Congruence-quotient fingerprints: invariants of `U((ℤ/m)G)` over a range
//! of moduli, and comparison of two groups by them.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grouprings::unit_group_mod;
use crate::perm::traits::{abelianization_invariants, class_count, exponent};
use crate::perm::{FiniteGroup, PermGroup};

/// Invariants of `U((ℤ/m)G)` for one modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub struct FingerprintRecord {
    pub modulus: u64,
    pub unit_group_order: u64,
    pub abelianization: Vec<u64>,
    pub exponent: u64,
    pub class_count: u64,
}

impl fmt::Display for FingerprintRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {:?}, {}, {})",
            self.modulus, self.unit_group_order, self.abelianization, self.exponent, self.class_count
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ModulusEntry {
    Computed(FingerprintRecord),
    Skipped { modulus: u64, reason: String },
}

impl ModulusEntry {
    pub fn modulus(&self) -> u64 {
        match self {
            ModulusEntry::Computed(r) => r.modulus,
            ModulusEntry::Skipped { modulus, .. } => *modulus,
        }
    }

    pub fn record(&self) -> Option<&FingerprintRecord> {
        match self {
            ModulusEntry::Computed(r) => Some(r),
            ModulusEntry::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Fingerprint {
    pub group: String,
    /// One entry per modulus, moduli strictly increasing.
    pub entries: Vec<ModulusEntry>,
}

impl Fingerprint {
    pub fn record(&self, m: u64) -> Option<&FingerprintRecord> {
        self.entries.iter().find(|e| e.modulus() == m).and_then(|e| e.record())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum FingerprintField {
    Order,
    Abelianization,
    Exponent,
    ClassCount,
}

impl fmt::Display for FingerprintField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FingerprintField::Order => "order",
            FingerprintField::Abelianization => "abelianization",
            FingerprintField::Exponent => "exponent",
            FingerprintField::ClassCount => "class_count",
        };
        write!(f, "{s}")
    }
}

/// Outcome of comparing two fingerprints. `Indistinguishable` only speaks
/// about the moduli it lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Comparison {
    Indistinguishable {
        moduli: Vec<u64>,
    },
    DistinguishedAt {
        modulus: u64,
        field: FingerprintField,
        left: String,
        right: String,
    },
}

fn normalize_moduli(moduli: &[u64]) -> Result<Vec<u64>> {
    let mut ms = moduli.to_vec();
    ms.sort_unstable();
    ms.dedup();
    if let Some(&m) = ms.iter().find(|&&m| m < 2) {
        return Err(Error::invalid(format!("modulus {m} must be at least 2")));
    }
    Ok(ms)
}

/// The record for a single modulus.
pub fn fingerprint_record(g: &Arc<PermGroup>, m: u64) -> Result<FingerprintRecord> {
    let u = unit_group_mod(g, m)?;
    Ok(FingerprintRecord {
        modulus: m,
        unit_group_order: u.order() as u64,
        abelianization: abelianization_invariants(&u),
        exponent: exponent(&u),
        class_count: class_count(&u) as u64,
    })
}

fn entry_for(g: &Arc<PermGroup>, m: u64, name: &str, cache: Option<&FingerprintCache>) -> Result<ModulusEntry> {
    if let Some(r) = cache.and_then(|c| c.get(name, g, m)) {
        return Ok(ModulusEntry::Computed(r));
    }
    match fingerprint_record(g, m) {
        Ok(r) => {
            if let Some(c) = cache {
                c.put(name, g, &r)?;
            }
            Ok(ModulusEntry::Computed(r))
        }
        Err(e @ Error::SizeBound { .. }) => Ok(ModulusEntry::Skipped {
            modulus: m,
            reason: e.to_string(),
        }),
        Err(e) => Err(e),
    }
}

/// Fingerprint of `g` over `moduli` (sorted and deduplicated). Moduli whose
/// ring exceeds the enumeration bound are recorded as skipped.
pub fn congruence_fingerprint(name: &str, g: &Arc<PermGroup>, moduli: &[u64]) -> Result<Fingerprint> {
    congruence_fingerprint_cached(name, g, moduli, None)
}

pub fn congruence_fingerprint_cached(
    name: &str,
    g: &Arc<PermGroup>,
    moduli: &[u64],
    cache: Option<&FingerprintCache>,
) -> Result<Fingerprint> {
    let ms = normalize_moduli(moduli)?;
    let entries: Vec<Result<ModulusEntry>> = std::thread::scope(|s| {
        let handles: Vec<_> = ms
            .iter()
            .map(|&m| s.spawn(move || entry_for(g, m, name, cache)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fingerprint worker panicked"))
            .collect()
    });
    Ok(Fingerprint {
        group: name.to_string(),
        entries: entries.into_iter().collect::<Result<_>>()?,
    })
}

/// First modulus (in increasing order) and field where the fingerprints
/// differ. Moduli skipped on either side are not compared.
pub fn compare_fingerprints(a: &Fingerprint, b: &Fingerprint) -> Comparison {
    let mut compared = Vec::new();
    for ea in &a.entries {
        let m = ea.modulus();
        let (Some(ra), Some(rb)) = (ea.record(), b.record(m)) else {
            continue;
        };
        let checks = [
            (
                FingerprintField::Order,
                ra.unit_group_order.to_string(),
                rb.unit_group_order.to_string(),
            ),
            (
                FingerprintField::Abelianization,
                format!("{:?}", ra.abelianization),
                format!("{:?}", rb.abelianization),
            ),
            (
                FingerprintField::Exponent,
                ra.exponent.to_string(),
                rb.exponent.to_string(),
            ),
            (
                FingerprintField::ClassCount,
                ra.class_count.to_string(),
                rb.class_count.to_string(),
            ),
        ];
        for (field, left, right) in checks {
            if left != right {
                return Comparison::DistinguishedAt {
                    modulus: m,
                    field,
                    left,
                    right,
                };
            }
        }
        compared.push(m);
    }
    Comparison::Indistinguishable { moduli: compared }
}

/// Fingerprints both groups and compares them.
pub fn compare_groups(
    (name_a, a): (&str, &Arc<PermGroup>),
    (name_b, b): (&str, &Arc<PermGroup>),
    moduli: &[u64],
) -> Result<Comparison> {
    let fa = congruence_fingerprint(name_a, a, moduli)?;
    let fb = congruence_fingerprint(name_b, b, moduli)?;
    Ok(compare_fingerprints(&fa, &fb))
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    group: String,
    group_hash: String,
    record: FingerprintRecord,
    record_hash: String,
}

fn record_hash(group_hash: &str, r: &FingerprintRecord) -> String {
    let body = serde_json::to_string(r).expect("record serializes");
    let mut h = Sha256::new();
    h.update(group_hash.as_bytes());
    h.update(body.as_bytes());
    hex::encode(h.finalize())
}

/// On-disk cache of fingerprint records keyed by group name and modulus.
/// Entries are used only if the stored group hash matches the group and
/// the stored record hash matches the record.
#[derive(Debug, Clone)]
pub struct FingerprintCache {
    dir: PathBuf,
}

impl FingerprintCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FingerprintCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, name: &str, m: u64) -> PathBuf {
        let safe: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        self.dir.join(format!("{safe}-m{m}.json"))
    }

    pub fn get(&self, name: &str, g: &PermGroup, m: u64) -> Option<FingerprintRecord> {
        let text = std::fs::read_to_string(self.path(name, m)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        let gh = g.elements_hash();
        let valid = file.group == name
            && file.group_hash == gh
            && file.record.modulus == m
            && file.record_hash == record_hash(&gh, &file.record);
        valid.then_some(file.record)
    }

    pub fn put(&self, name: &str, g: &PermGroup, r: &FingerprintRecord) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let gh = g.elements_hash();
        let file = CacheFile {
            group: name.to_string(),
            record_hash: record_hash(&gh, r),
            group_hash: gh,
            record: r.clone(),
        };
        let text = serde_json::to_string_pretty(&file).map_err(|e| Error::Io(e.to_string()))?;
        let path = self.path(name, r.modulus);
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }
}
