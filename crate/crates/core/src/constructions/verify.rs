use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::Serialize;

use super::{Construction, ConstructionJson};
use crate::error::{Error, Result};
use crate::ghz::GhzState;
use crate::hv::{HvSystem, HvVerdict, Status, DEFAULT_BRUTE_CAP};
use crate::ops::DEFAULT_DENSE_CAP;
use crate::phase::RationalPhase;

/// Tolerance for the dense eigenvector residual.
pub const DENSE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Re-check with dense tensors and brute force when within the caps.
    pub oracle: bool,
    pub dense_cap: usize,
    pub brute_cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { oracle: true, dense_cap: DEFAULT_DENSE_CAP, brute_cap: DEFAULT_BRUTE_CAP }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub construction: ConstructionJson,
    pub quantum_ok: bool,
    pub hv_verdict: Option<HvVerdict>,
    /// Eigenvalues re-checked on the full `d^N` vector.
    pub oracle_checked: bool,
    /// HV status re-checked by exhaustive search.
    pub brute_force_checked: bool,
    /// Every oracle check that ran agreed with the exact result.
    pub oracle_consistent: bool,
    pub genuinely_d_dimensional: bool,
    pub irreducible: Vec<bool>,
    pub operator_count: usize,
    pub bases_per_qudit: Vec<usize>,
    /// `quantum_ok`, UNSAT, and oracle agreement.
    pub valid: bool,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

/// True iff no two distinct angles differ by a nonzero multiple of `1/d`,
/// i.e. no eigenvector of one factor basis is orthogonal to one of another.
pub fn check_genuine_dimension(d: u32, angles: &BTreeSet<RationalPhase>) -> bool {
    let v: Vec<_> = angles.iter().collect();
    v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| !(*a - *b).is_multiple_of_unit(d)))
}

/// Per qudit `k`: drop factor `k` everywhere, keep the reduced operators that
/// are still exact eigenoperators of the `(N-1)`-qudit GHZ state, and report
/// `true` iff what remains no longer contradicts (SAT or empty).
pub fn check_irreducible(c: &Construction) -> Result<Vec<bool>> {
    if c.n < 2 {
        return Err(Error::InvalidParticleCount(c.n));
    }
    let reduced_state = GhzState::standard(c.d, c.n - 1)?;
    (0..c.n)
        .map(|k| {
            let mut items = Vec::new();
            for o in c.all_operators() {
                let Some(op) = o.op.without_qudit(k) else { continue };
                if let Some(e) = reduced_state.eigenvalue_exponent(&op)? {
                    items.push((op, e));
                }
            }
            if items.is_empty() {
                return Ok(true);
            }
            Ok(HvSystem::from_operators(c.d, &items)?.is_satisfiable())
        })
        .collect()
}

fn dense_matches(state: &GhzState, c: &Construction, cap: usize) -> Result<Vec<bool>> {
    let v = state.to_dense(cap)?;
    c.all_operators()
        .map(|o| {
            let w = o.op.apply_dense(v.view(), cap)?;
            let lambda: Complex64 = o.exponent.to_complex();
            let residual = w.iter().zip(v.iter()).map(|(a, b)| (a - lambda * b).norm()).fold(0.0, f64::max);
            Ok(residual <= DENSE_TOL)
        })
        .collect()
}

/// Runs every check on `c` and records the results; failures never abort.
pub fn verify_construction(c: &Construction, opts: &VerifyOptions) -> Certificate {
    let mut warnings = Vec::new();
    let state = GhzState::standard(c.d, c.n);
    let exact: Vec<bool> = match &state {
        Ok(s) => {
            c.all_operators().map(|o| matches!(s.eigenvalue_exponent(&o.op), Ok(Some(e)) if e == o.exponent)).collect()
        }
        Err(e) => {
            warnings.push(format!("cannot build GHZ state: {e}"));
            vec![false; c.operator_count()]
        }
    };
    let quantum_ok = exact.iter().all(|&b| b);

    let system = HvSystem::from_operators(c.d, &c.items());
    let hv_verdict = match &system {
        Ok(s) => Some(s.solve()),
        Err(e) => {
            warnings.push(format!("cannot form HV system: {e}"));
            None
        }
    };

    let mut oracle_checked = false;
    let mut brute_force_checked = false;
    let mut oracle_consistent = true;
    if opts.oracle {
        if let Ok(s) = &state {
            match dense_matches(s, c, opts.dense_cap) {
                Ok(dense) => {
                    oracle_checked = true;
                    oracle_consistent &= dense == exact;
                }
                Err(e) => warnings.push(format!("dense oracle skipped: {e}")),
            }
        }
        if let (Ok(sys), Some(v)) = (&system, &hv_verdict) {
            match sys.brute_force_solve(opts.brute_cap) {
                Ok(b) => {
                    brute_force_checked = true;
                    oracle_consistent &= b.status == v.status;
                }
                Err(e) => warnings.push(format!("brute-force oracle skipped: {e}")),
            }
        }
    }

    let genuinely_d_dimensional = c.angles_per_qudit().iter().all(|a| check_genuine_dimension(c.d, a));
    let irreducible = check_irreducible(c).unwrap_or_else(|e| {
        warnings.push(format!("irreducibility not checked: {e}"));
        Vec::new()
    });
    let unsat = hv_verdict.as_ref().is_some_and(|v| v.status == Status::Unsat);
    Certificate {
        construction: c.to_json(),
        quantum_ok,
        hv_verdict,
        oracle_checked,
        brute_force_checked,
        oracle_consistent,
        genuinely_d_dimensional,
        irreducible,
        operator_count: c.operator_count(),
        bases_per_qudit: c.bases_per_qudit(),
        valid: quantum_ok && unsat && oracle_consistent,
        warnings,
    }
}
