//! Constraints that GHZ invariance places on hidden-variable variations.
//!
//! Rotating qudit `i` by `+φ` and qudit `j` by `-φ` leaves the collective
//! angle unchanged, so the rotated operator must still have eigenvalue one.
//! With the variation `Δ_k(φ) = x_k(φ) - x_k(0)`, each such operator forces
//! `Δ_i(φ) + Δ_j(-φ) ≡ 0`. Only the sampled angles are constrained; nothing
//! here says anything about angles that were not measured.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{FactorLabel, HvSystem};
use crate::error::{Error, Result};
use crate::ops::ProductOperator;
use crate::phase::RationalPhase;

/// A forced value of a relation between qudits `i` and `j` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRelation {
    pub i: usize,
    pub j: usize,
    pub forced: Option<u32>,
}

/// `n1·Δ_k(φ) - n2·Δ_k(φ·n1/n2)` for each qudit `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingRelation {
    pub n1: usize,
    pub n2: usize,
    pub scaled_angle: RationalPhase,
    pub per_qudit: Vec<Option<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub d: u32,
    pub n: usize,
    pub angle: RationalPhase,
    pub operator_count: usize,
    /// `Δ_i(φ) + Δ_j(-φ)` for every ordered pair `i != j`.
    pub antisymmetry: Vec<PairRelation>,
    /// `Δ_i(φ) - Δ_j(φ)` for `i < j`.
    pub uniformity: Vec<PairRelation>,
    /// `Δ_k(φ) + Δ_k(-φ)`, reported with `i = j = k`.
    pub oddness: Vec<PairRelation>,
    pub scaling: Option<ScalingRelation>,
}

impl InvarianceReport {
    /// True iff every reported relation is forced to zero.
    pub fn all_forced_zero(&self) -> bool {
        let pairs = self.antisymmetry.iter().chain(&self.uniformity).chain(&self.oddness);
        let pairs_ok = pairs.into_iter().all(|r| r.forced == Some(0));
        let scaling_ok = self.scaling.as_ref().is_none_or(|s| s.per_qudit.iter().all(|f| *f == Some(0)));
        pairs_ok && scaling_ok
    }
}

fn delta(k: usize, angle: &RationalPhase, weight: i64) -> [(FactorLabel, i64); 2] {
    [(FactorLabel::new(k, angle.clone()), weight), (FactorLabel::new(k, RationalPhase::zero()), -weight)]
}

/// Builds `X` and every two-qudit counter-rotation at `angle` (and at
/// `angle·n1/n2` when a partition `(n1, n2)` with `n1 < n2`, `n1 + n2 = N` is
/// given, plus the operator rotating the first `n1` qudits by `angle` and the
/// rest by `-angle·n1/n2`), then reports which relations the eigenvalue-one
/// constraints force.
pub fn invariance_demo(
    d: u32,
    n: usize,
    angle: &RationalPhase,
    partition: Option<(usize, usize)>,
) -> Result<InvarianceReport> {
    crate::ops::check_dim(d)?;
    if n < 3 {
        return Err(Error::InvalidParticleCount(n));
    }
    let scaled = match partition {
        Some((n1, n2)) => {
            if n1 == 0 || n1 >= n2 || n1 + n2 != n {
                return Err(Error::Construction(format!("invalid partition {n1}:{n2} of {n} qudits")));
            }
            let ratio = BigRational::new(BigInt::from(n1), BigInt::from(n2));
            Some(RationalPhase::from_ratio(angle.as_ratio() * ratio))
        }
        None => None,
    };

    let zero = RationalPhase::zero();
    let mut items = vec![(ProductOperator::all_x(d, n)?, zero.clone())];
    for theta in std::iter::once(angle).chain(scaled.as_ref()) {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut angles = vec![zero.clone(); n];
                    angles[i] = theta.clone();
                    angles[j] = -theta;
                    items.push((ProductOperator::new(d, angles)?, zero.clone()));
                }
            }
        }
    }
    if let (Some((n1, _)), Some(psi)) = (partition, &scaled) {
        let angles = (0..n).map(|k| if k < n1 { angle.clone() } else { -psi }).collect();
        items.push((ProductOperator::new(d, angles)?, zero.clone()));
    }
    let system = HvSystem::from_operators(d, &items)?;

    let neg = -angle;
    let mut antisymmetry = Vec::new();
    let mut uniformity = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let f: Vec<_> = delta(i, angle, 1).into_iter().chain(delta(j, &neg, 1)).collect();
            antisymmetry.push(PairRelation { i, j, forced: system.forced_value(&f)? });
            if i < j {
                let f: Vec<_> = delta(i, angle, 1).into_iter().chain(delta(j, angle, -1)).collect();
                uniformity.push(PairRelation { i, j, forced: system.forced_value(&f)? });
            }
        }
    }
    let oddness = (1..=n)
        .map(|k| {
            let f: Vec<_> = delta(k, angle, 1).into_iter().chain(delta(k, &neg, 1)).collect();
            Ok(PairRelation { i: k, j: k, forced: system.forced_value(&f)? })
        })
        .collect::<Result<Vec<_>>>()?;

    let scaling = match (partition, scaled) {
        (Some((n1, n2)), Some(psi)) => {
            let per_qudit = (1..=n)
                .map(|k| {
                    let f: Vec<_> =
                        delta(k, angle, n1 as i64).into_iter().chain(delta(k, &psi, -(n2 as i64))).collect();
                    system.forced_value(&f)
                })
                .collect::<Result<Vec<_>>>()?;
            Some(ScalingRelation { n1, n2, scaled_angle: psi, per_qudit })
        }
        _ => None,
    };

    Ok(InvarianceReport {
        d,
        n,
        angle: angle.clone(),
        operator_count: items.len(),
        antisymmetry,
        uniformity,
        oddness,
        scaling,
    })
}
