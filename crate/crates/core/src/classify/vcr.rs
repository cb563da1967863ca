use std::fmt;
use std::sync::Arc;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::{classify_component, AlgebraDescriptor, ClassTag, ComponentClass};
use crate::error::Result;
use crate::perm::{epimorphic_images_in, Catalog, PermGroup};
use crate::wedderburn::{decompose, Decomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub enum Vcr {
    Yes,
    No,
    Undetermined,
}

impl fmt::Display for Vcr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Vcr::Yes => "yes",
            Vcr::No => "no",
            Vcr::Undetermined => "undetermined",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub enum WitnessSource {
    /// The group maps onto an excluded group carrying this component.
    Quotient { image: String },
    /// A component of the computed decomposition.
    Component { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct Witness {
    pub source: WitnessSource,
    pub algebra: String,
    pub tag: Option<ClassTag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct VcrReport {
    pub verdict: Vcr,
    pub witnesses: Vec<Witness>,
    pub complete: bool,
    pub components: Vec<ComponentClass>,
}

impl VcrReport {
    pub fn has_quotient_witness(&self) -> bool {
        self.witnesses
            .iter()
            .any(|w| matches!(w.source, WitnessSource::Quotient { .. }))
    }

    pub fn has_component_witness(&self) -> bool {
        self.witnesses
            .iter()
            .any(|w| matches!(w.source, WitnessSource::Component { .. }))
    }
}

/// Classifies every component of a decomposition, in order.
pub fn classify_decomposition(dec: &Decomposition) -> Result<Vec<ComponentClass>> {
    dec.components.iter().map(classify_component).collect()
}

/// Decides whether every non-commutative simple component of ℚG is a totally
/// definite quaternion algebra or exceptional of type 2.
pub fn vcr_verdict(g: &Arc<PermGroup>) -> Result<VcrReport> {
    let catalog = Catalog::bundled();
    let excluded = catalog.excluded_groups();
    let mut witnesses = Vec::new();
    for name in epimorphic_images_in(g, &excluded)? {
        let entry = catalog.get(&name).expect("image comes from the catalog");
        let algebra = entry.witness_component.clone().unwrap_or_default();
        let tag = AlgebraDescriptor::parse(&algebra).ok().map(|a| {
            if a.matrix_size >= 3 {
                ClassTag::NonExceptional
            } else {
                ClassTag::Undetermined
            }
        });
        witnesses.push(Witness {
            source: WitnessSource::Quotient { image: name },
            algebra,
            tag,
        });
    }
    let dec = decompose(g)?;
    let components = classify_decomposition(&dec)?;
    let mut undetermined = false;
    for (index, c) in components.iter().enumerate() {
        match c.tag {
            ClassTag::ExceptionalType1 | ClassTag::NonExceptional => witnesses.push(Witness {
                source: WitnessSource::Component { index },
                algebra: c.detail.clone(),
                tag: Some(c.tag),
            }),
            ClassTag::Undetermined => undetermined = true,
            _ => {}
        }
    }
    let verdict = if !witnesses.is_empty() {
        Vcr::No
    } else if dec.complete && !undetermined {
        Vcr::Yes
    } else {
        Vcr::Undetermined
    };
    Ok(VcrReport {
        verdict,
        witnesses,
        complete: dec.complete,
        components,
    })
}
