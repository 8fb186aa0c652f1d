//! JSON input documents.

use std::collections::BTreeMap;

use polymat::algebra::{generic_gorenstein_rank, GenericGorensteinParams};
use polymat::constructions::{
    principal_borel_bases, sublattice_polymatroid, transversal, BorelGenerator, Sublattice,
    TransversalPresentation,
};
use polymat::polymatroid::{
    downward_closure, is_base_set, polymatroid_from_rank, rank_function, BaseSet,
    DiscretePolymatroid, RankFunction, VectorSet,
};
use polymat::{GroundSubset, IntVector, Verdict};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum Raw {
    VectorSet {
        n: usize,
        vectors: Vec<Vec<u32>>,
    },
    BaseSet {
        n: usize,
        vectors: Vec<Vec<u32>>,
    },
    RankFunction {
        n: usize,
        values: Vec<u64>,
    },
    Transversal {
        n: usize,
        family: Vec<Vec<usize>>,
    },
    Sublattice {
        n: usize,
        members: Vec<Vec<usize>>,
        mu: Vec<u64>,
    },
    Borel {
        a: Vec<u32>,
    },
    Params {
        alpha: Vec<u64>,
        d: u64,
    },
}

/// A validated input document.
#[derive(Clone, Debug)]
pub enum Document {
    VectorSet(VectorSet),
    BaseSet(BaseSet),
    RankFunction(RankFunction),
    Transversal(TransversalPresentation),
    Sublattice {
        lattice: Sublattice,
        mu: BTreeMap<GroundSubset, u64>,
    },
    Borel(BorelGenerator),
    Params(GenericGorensteinParams),
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema {
        field: field.into(),
        message: message.into(),
    }
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(schema("n", "must be at least 1"));
    }
    Ok(())
}

fn vectors(n: usize, field: &str, raw: Vec<Vec<u32>>) -> Result<Vec<IntVector>, CliError> {
    raw.into_iter()
        .enumerate()
        .map(|(k, v)| {
            let at = format!("{field}[{k}]");
            if v.len() != n {
                return Err(schema(
                    at,
                    format!("expected {n} entries, found {}", v.len()),
                ));
            }
            IntVector::new(v).map_err(|e| schema(at, e.to_string()))
        })
        .collect()
}

fn subset(n: usize, field: String, elements: &[usize]) -> Result<GroundSubset, CliError> {
    if let Some(&e) = elements.iter().find(|&&e| e == 0 || e > n) {
        return Err(schema(field, format!("element {e} is not in 1..={n}")));
    }
    Ok(GroundSubset::from_elements(elements.iter().map(|e| e - 1)))
}

/// Parses and validates a document.
pub fn parse_document(bytes: &[u8]) -> Result<Document, CliError> {
    let text = std::str::from_utf8(bytes).map_err(|e| schema("document", e.to_string()))?;
    let raw: Raw = serde_json::from_str(text).map_err(|e| schema("document", e.to_string()))?;
    let invalid = |field: &str| {
        let field = field.to_string();
        move |e: polymat::Error| schema(field, e.to_string())
    };
    Ok(match raw {
        Raw::VectorSet { n, vectors: v } => {
            check_n(n)?;
            let v = vectors(n, "vectors", v)?;
            Document::VectorSet(VectorSet::new(n, v).map_err(invalid("vectors"))?)
        }
        Raw::BaseSet { n, vectors: v } => {
            check_n(n)?;
            let v = vectors(n, "vectors", v)?;
            if v.is_empty() {
                return Err(schema("vectors", "a base set must be nonempty"));
            }
            Document::BaseSet(BaseSet::new(n, v).map_err(invalid("vectors"))?)
        }
        Raw::RankFunction { n, values } => {
            check_n(n)?;
            if n >= 32 || values.len() != 1usize << n {
                return Err(schema(
                    "values",
                    format!("expected 2^{n} entries, found {}", values.len()),
                ));
            }
            Document::RankFunction(RankFunction::new(n, values).map_err(invalid("values"))?)
        }
        Raw::Transversal { n, family } => {
            check_n(n)?;
            let family = family
                .iter()
                .enumerate()
                .map(|(k, a)| subset(n, format!("family[{k}]"), a))
                .collect::<Result<Vec<_>, _>>()?;
            Document::Transversal(
                TransversalPresentation::new(n, family).map_err(invalid("family"))?,
            )
        }
        Raw::Sublattice { n, members, mu } => {
            check_n(n)?;
            if mu.len() != members.len() {
                return Err(schema(
                    "mu",
                    format!("expected {} entries, found {}", members.len(), mu.len()),
                ));
            }
            let members = members
                .iter()
                .enumerate()
                .map(|(k, a)| subset(n, format!("members[{k}]"), a))
                .collect::<Result<Vec<_>, _>>()?;
            let mut map = BTreeMap::new();
            for (k, (&a, &m)) in members.iter().zip(&mu).enumerate() {
                if map.insert(a, m).is_some() {
                    return Err(schema(format!("members[{k}]"), "repeated member"));
                }
            }
            let lattice = Sublattice::new(n, members).map_err(invalid("members"))?;
            Document::Sublattice { lattice, mu: map }
        }
        Raw::Borel { a } => {
            if a.is_empty() {
                return Err(schema("a", "must be nonempty"));
            }
            let a = IntVector::new(a).map_err(invalid("a"))?;
            Document::Borel(BorelGenerator::new(a).map_err(invalid("a"))?)
        }
        Raw::Params { alpha, d } => {
            Document::Params(GenericGorensteinParams::new(alpha, d).map_err(invalid("alpha"))?)
        }
    })
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::VectorSet(_) => "vector-set",
            Self::BaseSet(_) => "base-set",
            Self::RankFunction(_) => "rank-function",
            Self::Transversal(_) => "transversal",
            Self::Sublattice { .. } => "sublattice",
            Self::Borel(_) => "borel",
            Self::Params(_) => "params",
        }
    }

    /// The discrete polymatroid the document describes. A base set stands for
    /// its downward closure.
    pub fn polymatroid(&self) -> Result<DiscretePolymatroid, CliError> {
        Ok(match self {
            Self::VectorSet(s) => DiscretePolymatroid::new(s.clone())?,
            Self::BaseSet(b) => {
                if let Verdict::Violated(w) = is_base_set(b) {
                    return Err(polymat::Error::InvalidBaseSet(w.to_string()).into());
                }
                DiscretePolymatroid::new(downward_closure(&b.to_vector_set())?)?
            }
            Self::RankFunction(rho) => polymatroid_from_rank(rho)?,
            Self::Transversal(pres) => {
                let (b, _) = transversal(pres)?;
                DiscretePolymatroid::from_generators(b.n(), b.vectors().to_vec())?
            }
            Self::Sublattice { lattice, mu } => sublattice_polymatroid(lattice, mu)?,
            Self::Borel(a) => {
                let b = a.bases()?;
                DiscretePolymatroid::from_generators(b.n(), b.vectors().to_vec())?
            }
            Self::Params(params) => polymatroid_from_rank(&generic_gorenstein_rank(params))?,
        })
    }

    /// The base set: given directly, or the bases of the polymatroid.
    pub fn base_set(&self) -> Result<BaseSet, CliError> {
        Ok(match self {
            Self::BaseSet(b) => b.clone(),
            Self::Transversal(pres) => transversal(pres)?.0,
            Self::Borel(a) => principal_borel_bases(a.vector())?,
            _ => self.polymatroid()?.bases().clone(),
        })
    }

    /// The rank function: given directly, or computed from the bases.
    pub fn rank_function(&self) -> Result<RankFunction, CliError> {
        Ok(match self {
            Self::RankFunction(rho) => rho.clone(),
            Self::Params(params) => generic_gorenstein_rank(params),
            _ => rank_function(&self.base_set()?),
        })
    }
}

pub fn vector_json(u: &IntVector) -> Value {
    json!(u.entries())
}

pub fn vectors_json<'a>(vs: impl IntoIterator<Item = &'a IntVector>) -> Value {
    Value::Array(vs.into_iter().map(vector_json).collect())
}

pub fn subset_json(a: GroundSubset) -> Value {
    json!(a.elements().map(|e| e + 1).collect::<Vec<_>>())
}

pub fn vector_set_doc(s: &VectorSet) -> Value {
    json!({"kind": "vector-set", "n": s.n(), "vectors": vectors_json(s.iter())})
}

pub fn base_set_doc(b: &BaseSet) -> Value {
    json!({"kind": "base-set", "n": b.n(), "vectors": vectors_json(b.iter())})
}

pub fn rank_doc(rho: &RankFunction) -> Value {
    json!({"kind": "rank-function", "n": rho.n(), "values": rho.values()})
}

pub fn transversal_doc(pres: &TransversalPresentation) -> Value {
    let family: Vec<Value> = pres.family().iter().map(|&a| subset_json(a)).collect();
    json!({"kind": "transversal", "n": pres.n(), "family": family})
}

/// Parses `1,2,0` into a vector.
pub fn parse_vector(text: &str) -> Result<IntVector, CliError> {
    let entries = text
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("bad vector {text:?}: {e}")))?;
    IntVector::new(entries).map_err(|e| CliError::Usage(format!("bad vector {text:?}: {e}")))
}
