//! Concurrent-operator sets that exhibit GHZ contradictions, their
//! certification, and the classification of `(d, N)` cells.

mod chain;
mod classify;
mod methods;
mod verify;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::ProductOperator;
use crate::phase::RationalPhase;

pub use classify::{certify_cell, classify, classify_plane, witness_construction, RegimeCell};
pub use methods::{method1, method1_candidate, method2, method2_candidate, method3, smallest_method1_factor};
pub use verify::{check_genuine_dimension, check_irreducible, verify_construction, Certificate, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Method {
    /// `f` consecutive `Y = X(1/(fd))` factors at `ν = 1` against `X`.
    Cyclic,
    /// Conjugate pairs `Y`, `Ỹ` forcing uniform variations, target `Y^{⊗N}`.
    Conjugate,
    /// Method 2's base set plus a chain of multiples of `1/d²`.
    Chain,
}

impl Method {
    pub fn number(self) -> u8 {
        match self {
            Method::Cyclic => 1,
            Method::Conjugate => 2,
            Method::Chain => 3,
        }
    }
}

impl TryFrom<u8> for Method {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Method::Cyclic),
            2 => Ok(Method::Conjugate),
            3 => Ok(Method::Chain),
            _ => Err(format!("unknown method {v}")),
        }
    }
}

impl From<Method> for u8 {
    fn from(m: Method) -> u8 {
        m.number()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// An operator together with the eigenvalue phase claimed for it on the
/// standard GHZ state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimedOperator {
    pub op: ProductOperator,
    pub exponent: RationalPhase,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionMeta {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<u32>,
    /// Multipliers of `φ_o` learned by the chain, in order.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chain: Option<Vec<i64>>,
}

/// A concurrent operator set whose hidden-variable system should be
/// unsatisfiable once `target` is included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub d: u32,
    pub n: usize,
    pub method: Method,
    pub phi_o: RationalPhase,
    pub operators: Vec<ClaimedOperator>,
    pub target: ClaimedOperator,
    pub meta: ConstructionMeta,
}

impl Construction {
    /// All operators including the target.
    pub fn all_operators(&self) -> impl Iterator<Item = &ClaimedOperator> {
        self.operators.iter().chain(std::iter::once(&self.target))
    }

    pub fn operator_count(&self) -> usize {
        self.operators.len() + 1
    }

    /// Distinct factor angles used on each qudit.
    pub fn angles_per_qudit(&self) -> Vec<BTreeSet<RationalPhase>> {
        let mut sets = vec![BTreeSet::new(); self.n];
        for c in self.all_operators() {
            for (k, a) in c.op.angles().iter().enumerate() {
                sets[k].insert(a.clone());
            }
        }
        sets
    }

    /// Number of one-qudit measurement bases per qudit.
    pub fn bases_per_qudit(&self) -> Vec<usize> {
        self.angles_per_qudit().iter().map(BTreeSet::len).collect()
    }

    pub fn items(&self) -> Vec<(ProductOperator, RationalPhase)> {
        self.all_operators().map(|c| (c.op.clone(), c.exponent.clone())).collect()
    }

    pub fn to_json(&self) -> ConstructionJson {
        let op = |c: &ClaimedOperator| OperatorJson { angles: c.op.angles().to_vec(), exponent: c.exponent.clone() };
        ConstructionJson {
            d: self.d,
            n: self.n,
            method: self.method,
            phi_o: self.phi_o.clone(),
            operators: self.operators.iter().map(op).collect(),
            target: op(&self.target),
            meta: self.meta.clone(),
        }
    }
}

/// Outcome of asking a method for a contradiction at a given `(d, N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MethodOutcome {
    Contradiction(Box<Construction>),
    /// The method's final congruence is solvable here.
    NoContradiction {
        d: u32,
        n: usize,
        method: Method,
        reason: String,
    },
}

impl MethodOutcome {
    pub fn construction(&self) -> Option<&Construction> {
        match self {
            MethodOutcome::Contradiction(c) => Some(c),
            MethodOutcome::NoContradiction { .. } => None,
        }
    }

    pub fn into_construction(self) -> Option<Construction> {
        match self {
            MethodOutcome::Contradiction(c) => Some(*c),
            MethodOutcome::NoContradiction { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub angles: Vec<RationalPhase>,
    pub exponent: RationalPhase,
}

/// `{"d", "n", "method", "phi_o", "operators", "target", "meta"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub d: u32,
    pub n: usize,
    pub method: Method,
    pub phi_o: RationalPhase,
    pub operators: Vec<OperatorJson>,
    pub target: OperatorJson,
    #[serde(default)]
    pub meta: ConstructionMeta,
}

impl TryFrom<ConstructionJson> for Construction {
    type Error = Error;

    fn try_from(j: ConstructionJson) -> Result<Self> {
        let d = j.d;
        let n = j.n;
        let claimed = |o: OperatorJson| -> Result<ClaimedOperator> {
            if o.angles.len() != n {
                return Err(Error::ShapeMismatch { expected: n, actual: o.angles.len() });
            }
            Ok(ClaimedOperator { op: ProductOperator::new(d, o.angles)?, exponent: o.exponent })
        };
        Ok(Construction {
            d,
            n,
            method: j.method,
            phi_o: j.phi_o,
            operators: j.operators.into_iter().map(claimed).collect::<Result<_>>()?,
            target: claimed(j.target)?,
            meta: j.meta,
        })
    }
}
