//! Hidden-variable value assignments as linear congruences over `Z_d`.
//!
//! A noncontextual model gives every one-qudit observable `X_k(φ)` a definite
//! eigenvalue `ω^{x_k(φ)}`. A product operator with eigenvalue `ω^e` on the
//! GHZ state then demands `Σ_k x_k(φ_k) ≡ e (mod d)`. A set of operators admits
//! a model iff the resulting system is solvable.

mod invariance;
mod modular;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::ProductOperator;
use crate::phase::RationalPhase;

pub use invariance::{invariance_demo, InvarianceReport, PairRelation, ScalingRelation};

/// Default limit on `d^(#variables)` for exhaustive search.
pub const DEFAULT_BRUTE_CAP: u64 = 1_000_000;

/// The observable `X_k(angle)` on qudit `k` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorLabel {
    pub qudit: usize,
    pub angle: RationalPhase,
}

impl FactorLabel {
    pub fn new(qudit: usize, angle: RationalPhase) -> Self {
        FactorLabel { qudit, angle }
    }
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}({})", self.qudit, self.angle)
    }
}

/// `Σ coeffs[i].1 · x_{coeffs[i].0} ≡ rhs (mod d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<(usize, i64)>,
    pub rhs: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HvSystem {
    d: u32,
    vars: Vec<FactorLabel>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vars: Vec<FactorLabel>,
    pub values: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HvVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
}

impl HvVerdict {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpliedDifference {
    pub pair: (FactorLabel, FactorLabel),
    pub forced: Option<u32>,
}

impl HvSystem {
    pub fn new(d: u32) -> Result<Self> {
        crate::ops::check_dim(d)?;
        Ok(HvSystem { d, vars: Vec::new(), constraints: Vec::new() })
    }

    /// One constraint per `(operator, eigenvalue phase)` pair. Variables are
    /// sorted by `(qudit, angle)`.
    pub fn from_operators(d: u32, items: &[(ProductOperator, RationalPhase)]) -> Result<Self> {
        let mut n = None;
        let mut labels = BTreeSet::new();
        let mut rows = Vec::with_capacity(items.len());
        for (op, exponent) in items {
            if op.dim() != d {
                return Err(Error::DimensionMismatch(d, op.dim()));
            }
            match n {
                Some(prev) if prev != op.len() => return Err(Error::InconsistentParticleCount(prev, op.len())),
                _ => n = Some(op.len()),
            }
            let e = exponent.units(d).ok_or_else(|| Error::NotARootOfUnity(exponent.to_string(), d))?;
            let row: Vec<FactorLabel> =
                op.angles().iter().enumerate().map(|(k, a)| FactorLabel::new(k + 1, a.clone())).collect();
            labels.extend(row.iter().cloned());
            rows.push((row, e));
        }
        let mut system = HvSystem { d, vars: labels.into_iter().collect(), constraints: Vec::new() };
        for (row, e) in rows {
            system.add_constraint(row.into_iter().map(|l| (l, 1)), e);
        }
        Ok(system)
    }

    /// Adds a constraint, registering any new variables. Coefficients on the
    /// same label are merged.
    pub fn add_constraint(&mut self, coeffs: impl IntoIterator<Item = (FactorLabel, i64)>, rhs: u32) {
        let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
        for (label, c) in coeffs {
            let idx = self.intern(label);
            *merged.entry(idx).or_default() += c;
        }
        let d = i64::from(self.d);
        let coeffs = merged.into_iter().filter(|(_, c)| c.rem_euclid(d) != 0).collect();
        self.constraints.push(Constraint { coeffs, rhs: rhs % self.d });
    }

    fn intern(&mut self, label: FactorLabel) -> usize {
        match self.index_of(&label) {
            Some(i) => i,
            None => {
                self.vars.push(label);
                self.vars.len() - 1
            }
        }
    }

    pub fn index_of(&self, label: &FactorLabel) -> Option<usize> {
        self.vars.iter().position(|v| v == label)
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn vars(&self) -> &[FactorLabel] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// `d^(#variables)`, saturating.
    pub fn search_space(&self) -> u128 {
        u128::from(self.d).checked_pow(self.vars.len() as u32).unwrap_or(u128::MAX)
    }

    fn matrix(&self) -> (Vec<Vec<i64>>, Vec<i64>) {
        let n = self.vars.len();
        let a = self
            .constraints
            .iter()
            .map(|c| {
                let mut row = vec![0i64; n];
                for &(i, v) in &c.coeffs {
                    row[i] += v;
                }
                row
            })
            .collect();
        let b = self.constraints.iter().map(|c| i64::from(c.rhs)).collect();
        (a, b)
    }

    pub fn satisfies(&self, values: &[u32]) -> bool {
        let d = i64::from(self.d);
        self.constraints.iter().all(|c| {
            let lhs: i64 = c.coeffs.iter().map(|&(i, v)| v * i64::from(values[i])).sum();
            (lhs - i64::from(c.rhs)).rem_euclid(d) == 0
        })
    }

    pub fn is_satisfiable(&self) -> bool {
        let (a, b) = self.matrix();
        modular::solve(&a, self.vars.len(), &b, i64::from(self.d)).is_some()
    }

    /// Decides solvability by diagonal normal form over `Z_d`. A satisfiable
    /// system comes with its lexicographically smallest solution.
    pub fn solve(&self) -> HvVerdict {
        let (a, b) = self.matrix();
        match modular::lex_min_solution(&a, self.vars.len(), &b, i64::from(self.d)) {
            Some(x) => self.sat(x.into_iter().map(|v| v as u32).collect()),
            None => HvVerdict { status: Status::Unsat, witness: None },
        }
    }

    fn sat(&self, values: Vec<u32>) -> HvVerdict {
        HvVerdict { status: Status::Sat, witness: Some(Witness { vars: self.vars.clone(), values }) }
    }

    /// Exhaustive search over `Z_d^(#variables)` in lexicographic order.
    pub fn brute_force_solve(&self, cap: u64) -> Result<HvVerdict> {
        let size = self.search_space();
        if size > u128::from(cap) {
            return Err(Error::BruteForceCapExceeded { size, cap });
        }
        let n = self.vars.len();
        let mut x = vec![0u32; n];
        loop {
            if self.satisfies(&x) {
                return Ok(self.sat(x));
            }
            // Odometer step, last variable fastest.
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(HvVerdict { status: Status::Unsat, witness: None });
                }
                k -= 1;
                x[k] += 1;
                if x[k] < self.d {
                    break;
                }
                x[k] = 0;
            }
        }
    }

    /// The value of `Σ c_i x_i (mod d)` if it is the same for every solution.
    ///
    /// A linear functional is constant on the solution set iff it lies in the
    /// row module of the constraint matrix, i.e. `Aᵀ y ≡ c` is solvable.
    pub fn forced_value(&self, functional: &[(FactorLabel, i64)]) -> Result<Option<u32>> {
        let (a, b) = self.matrix();
        let d = i64::from(self.d);
        let n = self.vars.len();
        let Some(x0) = modular::solve(&a, n, &b, d) else {
            return Err(Error::Unsatisfiable);
        };
        let mut c = vec![0i64; n];
        let mut stray: BTreeMap<&FactorLabel, i64> = BTreeMap::new();
        for (label, coeff) in functional {
            match self.index_of(label) {
                Some(i) => c[i] += coeff,
                None => *stray.entry(label).or_default() += coeff,
            }
        }
        // A label the system never mentions is free.
        if stray.values().any(|v| v.rem_euclid(d) != 0) {
            return Ok(None);
        }
        let m = a.len();
        let at: Vec<Vec<i64>> = (0..n).map(|j| (0..m).map(|i| a[i][j]).collect()).collect();
        if modular::solve(&at, m, &c, d).is_none() {
            return Ok(None);
        }
        let value: i64 = c.iter().zip(&x0).map(|(p, q)| p * q).sum();
        Ok(Some(value.rem_euclid(d) as u32))
    }

    /// For each `(u, v)`, the forced value of `x_u - x_v`, if any.
    pub fn implied_differences(&self, pairs: &[(FactorLabel, FactorLabel)]) -> Result<Vec<ImpliedDifference>> {
        pairs
            .iter()
            .map(|(u, v)| {
                let forced = self.forced_value(&[(u.clone(), 1), (v.clone(), -1)])?;
                Ok(ImpliedDifference { pair: (u.clone(), v.clone()), forced })
            })
            .collect()
    }

    /// Sum of the selected constraint rows, as label coefficients and rhs.
    pub fn sum_rows(&self, rows: impl IntoIterator<Item = usize>) -> (BTreeMap<FactorLabel, i64>, i64) {
        let mut total: BTreeMap<FactorLabel, i64> = BTreeMap::new();
        let mut rhs = 0i64;
        for r in rows {
            let c = &self.constraints[r];
            for &(i, v) in &c.coeffs {
                *total.entry(self.vars[i].clone()).or_default() += v;
            }
            rhs += i64::from(c.rhs);
        }
        total.retain(|_, v| *v != 0);
        (total, rhs)
    }
}

#[derive(Deserialize)]
struct HvSystemJson {
    d: u32,
    vars: Vec<FactorLabel>,
    constraints: Vec<Constraint>,
}

impl<'de> Deserialize<'de> for HvSystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = HvSystemJson::deserialize(deserializer)?;
        if raw.d < 2 {
            return Err(D::Error::custom(format!("modulus must be at least 2, got {}", raw.d)));
        }
        let unique: BTreeSet<&FactorLabel> = raw.vars.iter().collect();
        if unique.len() != raw.vars.len() {
            return Err(D::Error::custom("duplicate variable"));
        }
        for c in &raw.constraints {
            if let Some((i, _)) = c.coeffs.iter().find(|(i, _)| *i >= raw.vars.len()) {
                return Err(D::Error::custom(format!("variable index {i} out of range")));
            }
            if c.rhs >= raw.d {
                return Err(D::Error::custom(format!("rhs {} not reduced mod {}", c.rhs, raw.d)));
            }
        }
        Ok(HvSystem { d: raw.d, vars: raw.vars, constraints: raw.constraints })
    }
}
