//! One-qudit monomial operators and their N-fold tensor products.
//!
//! Every operator used here (`Z`, `X`, rotations `R(φ)` and rotated
//! observables `X(φ)`) has exactly one unit-modulus entry per column, so it is
//! stored as a cyclic shift plus one phase per basis ket. Dense matrices are
//! only produced for numeric cross-checks.

use ndarray::{Array2, ArrayView1};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::{Angle, RationalPhase};

/// Largest dense dimension `d^N` the numeric bridge will build by default.
pub const DEFAULT_DENSE_CAP: usize = 4096;

pub(crate) fn check_dim(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(())
}

/// A `d×d` operator mapping `|n⟩` to `e^{2πi·phases[n]} |n + shift mod d⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOp {
    dim: u32,
    shift: u32,
    phases: Vec<RationalPhase>,
}

impl MonomialOp {
    pub fn new(dim: u32, shift: u32, phases: Vec<RationalPhase>) -> Result<Self> {
        check_dim(dim)?;
        if phases.len() != dim as usize {
            return Err(Error::ShapeMismatch { expected: dim as usize, actual: phases.len() });
        }
        Ok(MonomialOp { dim, shift: shift % dim, phases })
    }

    pub fn identity(d: u32) -> Result<Self> {
        Self::new(d, 0, vec![RationalPhase::zero(); d as usize])
    }

    /// The clock operator `Z = Σ ω^n |n⟩⟨n|`.
    pub fn z(d: u32) -> Result<Self> {
        check_dim(d)?;
        Self::new(d, 0, (0..d).map(|n| RationalPhase::new(n, d)).collect())
    }

    /// The raising operator `X = Σ |n+1⟩⟨n|` with `|d⟩ ≡ |0⟩`.
    pub fn x(d: u32) -> Result<Self> {
        Self::new(d, 1, vec![RationalPhase::zero(); d as usize])
    }

    /// `X(φ)`: phase `φ` on the steps `n → n+1` for `n < d-1`, and `(1-d)φ` on
    /// the wrap-around step `d-1 → 0`.
    pub fn rotated_x(d: u32, phi: &RationalPhase) -> Result<Self> {
        check_dim(d)?;
        let mut phases = vec![phi.clone(); d as usize];
        phases[d as usize - 1] = phi.scale(1 - i64::from(d));
        Self::new(d, 1, phases)
    }

    /// `R(φ) = exp(-i S_z φ)` with `S = (d-1)/2`; entry `n` carries `(n - S)φ`.
    ///
    /// Takes an unreduced [`Angle`] because for even `d` a full turn gives `-1`.
    pub fn rotation(d: u32, phi: &Angle) -> Result<Self> {
        check_dim(d)?;
        let phases = (0..d)
            .map(|n| {
                let twice_m = BigInt::from(2 * i64::from(n) - (i64::from(d) - 1));
                let coeff = BigRational::new(twice_m, BigInt::from(2));
                phi.scale(&coeff).phase()
            })
            .collect();
        Self::new(d, 0, phases)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn phases(&self) -> &[RationalPhase] {
        &self.phases
    }

    /// Where ket `n` is sent, and with which phase.
    pub fn image(&self, n: u32) -> (u32, &RationalPhase) {
        ((n + self.shift) % self.dim, &self.phases[n as usize])
    }

    /// The product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &MonomialOp) -> Result<MonomialOp> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let phases = (0..self.dim)
            .map(|n| {
                let (mid, first) = rhs.image(n);
                first + &self.phases[mid as usize]
            })
            .collect();
        MonomialOp::new(self.dim, self.shift + rhs.shift, phases)
    }

    pub fn adjoint(&self) -> MonomialOp {
        let d = self.dim;
        let shift = (d - self.shift) % d;
        let phases = (0..d).map(|m| -&self.phases[((m + d - self.shift) % d) as usize]).collect();
        MonomialOp { dim: d, shift, phases }
    }

    /// `R(φ) · self · R(φ)^{-1}`.
    pub fn conjugate(&self, phi: &Angle) -> Result<MonomialOp> {
        let r = MonomialOp::rotation(self.dim, phi)?;
        r.compose(self)?.compose(&r.adjoint())
    }

    /// Multiplies the whole operator by `e^{2πi·phase}`.
    pub fn with_global_phase(&self, phase: &RationalPhase) -> MonomialOp {
        MonomialOp { dim: self.dim, shift: self.shift, phases: self.phases.iter().map(|p| p + phase).collect() }
    }

    pub fn to_dense(&self) -> Array2<Complex64> {
        let d = self.dim as usize;
        let mut m = Array2::zeros((d, d));
        for n in 0..self.dim {
            let (row, phase) = self.image(n);
            m[[row as usize, n as usize]] = phase.to_complex();
        }
        m
    }
}

/// A tensor product `X_1(φ_1) ⊗ … ⊗ X_N(φ_N)`, stored by its angles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductOperator {
    d: u32,
    angles: Vec<RationalPhase>,
}

impl ProductOperator {
    pub fn new(d: u32, angles: Vec<RationalPhase>) -> Result<Self> {
        check_dim(d)?;
        if angles.is_empty() {
            return Err(Error::InvalidParticleCount(0));
        }
        Ok(ProductOperator { d, angles })
    }

    /// `X ⊗ … ⊗ X` on `n` qudits.
    pub fn all_x(d: u32, n: usize) -> Result<Self> {
        Self::new(d, vec![RationalPhase::zero(); n])
    }

    /// Each qudit `k` gets `X(multipliers[k]·unit)`.
    pub fn from_multipliers(d: u32, unit: &RationalPhase, multipliers: &[i64]) -> Result<Self> {
        Self::new(d, multipliers.iter().map(|&m| unit.scale(m)).collect())
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn angles(&self) -> &[RationalPhase] {
        &self.angles
    }

    /// `Φ = Σ φ_k` modulo one turn.
    pub fn collective_angle(&self) -> RationalPhase {
        self.angles.iter().sum()
    }

    pub fn factor(&self, k: usize) -> MonomialOp {
        MonomialOp::rotated_x(self.d, &self.angles[k]).expect("dimension validated on construction")
    }

    pub fn factors(&self) -> impl Iterator<Item = MonomialOp> + '_ {
        (0..self.angles.len()).map(|k| self.factor(k))
    }

    /// The same operator with qudit `k` removed, or `None` for a single factor.
    pub fn without_qudit(&self, k: usize) -> Option<ProductOperator> {
        if self.angles.len() <= 1 {
            return None;
        }
        let mut angles = self.angles.clone();
        angles.remove(k);
        Some(ProductOperator { d: self.d, angles })
    }

    /// `d^N`, or an error above `cap`.
    pub fn dense_size(&self, cap: usize) -> Result<usize> {
        dense_size(self.d, self.angles.len(), cap)
    }

    /// The full `d^N × d^N` matrix. Qudit 1 is the most significant digit.
    pub fn to_dense(&self, cap: usize) -> Result<Array2<Complex64>> {
        self.dense_size(cap)?;
        let mut acc = Array2::from_elem((1, 1), Complex64::new(1.0, 0.0));
        for f in self.factors() {
            acc = ndarray::linalg::kron(&acc, &f.to_dense());
        }
        Ok(acc)
    }

    /// Applies the dense tensor product to a state vector one factor at a time,
    /// without materializing the `d^N × d^N` matrix.
    pub fn apply_dense(&self, state: ArrayView1<Complex64>, cap: usize) -> Result<Vec<Complex64>> {
        let size = self.dense_size(cap)?;
        if state.len() != size {
            return Err(Error::ShapeMismatch { expected: size, actual: state.len() });
        }
        let d = self.d as usize;
        let n = self.angles.len();
        let mut current: Vec<Complex64> = state.to_vec();
        for (k, factor) in self.factors().enumerate() {
            let mat = factor.to_dense();
            let stride = d.pow((n - 1 - k) as u32);
            let mut next = vec![Complex64::new(0.0, 0.0); size];
            for (idx, amp) in current.iter().enumerate() {
                if amp.norm_sqr() == 0.0 {
                    continue;
                }
                let digit = (idx / stride) % d;
                let base = idx - digit * stride;
                for row in 0..d {
                    let entry = mat[[row, digit]];
                    if entry.norm_sqr() != 0.0 {
                        next[base + row * stride] += entry * amp;
                    }
                }
            }
            current = next;
        }
        Ok(current)
    }
}

pub(crate) fn dense_size(d: u32, n: usize, cap: usize) -> Result<usize> {
    let size = u128::from(d).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::DenseCapExceeded { size, cap });
    }
    Ok(size as usize)
}
