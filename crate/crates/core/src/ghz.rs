//! Rotated GHZ states `|Ψ(Φ)⟩ = e^{-iSΦ}/√d · Σ_n e^{inΦ} |n…n⟩`.
//!
//! The states live in the `d`-dimensional span of the diagonal kets `|n…n⟩`,
//! which every product of shift-one monomial factors maps into itself. All
//! exact work happens there; the `d^N` vector is built only for the numeric
//! oracle.

use ndarray::Array1;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::{check_dim, dense_size, ProductOperator};
use crate::phase::{Angle, RationalPhase};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GhzState {
    d: u32,
    n: usize,
    phi: Angle,
}

/// Result of an overlap: an exact zero test plus its numeric value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overlap {
    pub is_zero: bool,
    pub value: Complex64,
}

/// `⟨Ψ|P|Ψ⟩ = (1/d) Σ_n e^{2πi·phases[n]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expectation {
    pub phases: Vec<RationalPhase>,
    pub value: Complex64,
}

impl GhzState {
    /// The state at collective angle `phi` (in turns).
    ///
    /// `phi` is kept modulo the state's true period: one turn for odd `d`, two
    /// for even `d`, where a full turn flips the sign.
    pub fn new(d: u32, n: usize, phi: &Angle) -> Result<Self> {
        check_dim(d)?;
        if n == 0 {
            return Err(Error::InvalidParticleCount(n));
        }
        Ok(GhzState { d, n, phi: phi.reduce(Self::period(d)) })
    }

    /// `(|0…0⟩ + … + |d-1…d-1⟩)/√d`.
    pub fn standard(d: u32, n: usize) -> Result<Self> {
        Self::new(d, n, &Angle::zero())
    }

    fn period(d: u32) -> i64 {
        if d.is_multiple_of(2) {
            2
        } else {
            1
        }
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> &Angle {
        &self.phi
    }

    /// Phase of the amplitude on `|n…n⟩`: `(n - S)Φ` with `S = (d-1)/2`.
    pub fn amplitude_phases(&self) -> Vec<RationalPhase> {
        (0..self.d)
            .map(|k| {
                let twice_m = BigInt::from(2 * i64::from(k) - (i64::from(self.d) - 1));
                self.phi.scale(&BigRational::new(twice_m, BigInt::from(2))).phase()
            })
            .collect()
    }

    /// Rotates qudit `k` by `angles[k]`; only the sum matters.
    pub fn apply_rotations(&self, angles: &[Angle]) -> Result<Self> {
        if angles.len() != self.n {
            return Err(Error::ShapeMismatch { expected: self.n, actual: angles.len() });
        }
        let total: Angle = angles.iter().sum();
        Self::new(self.d, self.n, &(&self.phi + &total))
    }

    fn check_shape(&self, d: u32, n: usize) -> Result<()> {
        if self.d != d {
            return Err(Error::DimensionMismatch(self.d, d));
        }
        if self.n != n {
            return Err(Error::ShapeMismatch { expected: self.n, actual: n });
        }
        Ok(())
    }

    /// `⟨self|other⟩ = sin(dδ/2) / (d sin(δ/2))` with `δ = 2π(Φ' - Φ)`.
    pub fn inner_product(&self, other: &GhzState) -> Result<Overlap> {
        self.check_shape(other.d, other.n)?;
        let delta = &other.phi - &self.phi;
        let is_zero = {
            let p = delta.phase();
            !p.is_zero() && p.is_multiple_of_unit(self.d)
        };
        let value = if delta.is_integer() {
            // Limit of the closed form: e^{-2πi S δ} = (-1)^{(d-1)δ}.
            let whole = delta.as_ratio().to_integer();
            let odd = (whole * BigInt::from(self.d - 1)) % BigInt::from(2) != BigInt::from(0);
            Complex64::new(if odd { -1.0 } else { 1.0 }, 0.0)
        } else if is_zero {
            Complex64::new(0.0, 0.0)
        } else {
            let half = std::f64::consts::PI * delta.to_f64();
            let d = f64::from(self.d);
            Complex64::new((d * half).sin() / (d * half.sin()), 0.0)
        };
        Ok(Overlap { is_zero, value })
    }

    /// Phases `λ_n` such that `P` sends the amplitude on `|n…n⟩` to `e^{2πiλ_n}`
    /// times the amplitude this state has on `|n+1…n+1⟩`.
    fn transfer_phases(&self, p: &ProductOperator) -> Result<Vec<RationalPhase>> {
        self.check_shape(p.dim(), p.len())?;
        let d = self.d as usize;
        let amps = self.amplitude_phases();
        let mut picked = vec![RationalPhase::zero(); d];
        for factor in p.factors() {
            if factor.shift() != 1 {
                return Err(Error::Construction("product factors must shift by one".into()));
            }
            for (acc, ph) in picked.iter_mut().zip(factor.phases()) {
                *acc = &*acc + ph;
            }
        }
        Ok((0..d).map(|k| &(&amps[k] + &picked[k]) - &amps[(k + 1) % d]).collect())
    }

    /// The eigenvalue of `p` as a phase `λ` (eigenvalue `e^{2πiλ}`), or `None`
    /// if this state is not an eigenstate of `p`.
    pub fn eigenvalue_exponent(&self, p: &ProductOperator) -> Result<Option<RationalPhase>> {
        let lambdas = self.transfer_phases(p)?;
        let first = &lambdas[0];
        Ok(lambdas.iter().all(|l| l == first).then(|| first.clone()))
    }

    pub fn expectation(&self, p: &ProductOperator) -> Result<Expectation> {
        let phases = self.transfer_phases(p)?;
        let sum: Complex64 = phases.iter().map(RationalPhase::to_complex).sum();
        Ok(Expectation { value: sum / f64::from(self.d), phases })
    }

    /// The full `d^N` amplitude vector; qudit 1 is the most significant digit.
    pub fn to_dense(&self, cap: usize) -> Result<Array1<Complex64>> {
        let size = dense_size(self.d, self.n, cap)?;
        let d = self.d as usize;
        let repunit: usize = (0..self.n).map(|k| d.pow(k as u32)).sum();
        let norm = 1.0 / f64::from(self.d).sqrt();
        let mut v = Array1::zeros(size);
        for (k, ph) in self.amplitude_phases().iter().enumerate() {
            v[k * repunit] = ph.to_complex() * norm;
        }
        Ok(v)
    }
}

/// JSON form `{"d": int, "n": int, "phi": "p/q"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GhzStateJson {
    pub d: u32,
    pub n: usize,
    pub phi: String,
}

impl From<&GhzState> for GhzStateJson {
    fn from(s: &GhzState) -> Self {
        GhzStateJson { d: s.d, n: s.n, phi: s.phi.to_string() }
    }
}

impl TryFrom<GhzStateJson> for GhzState {
    type Error = Error;

    fn try_from(j: GhzStateJson) -> Result<Self> {
        let phi: Angle = j.phi.parse()?;
        let state = GhzState::new(j.d, j.n, &phi)?;
        if state.phi != phi || phi.to_string() != j.phi {
            return Err(Error::Phase(crate::error::ParsePhaseError::OutOfRange(j.phi)));
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::DEFAULT_DENSE_CAP;

    fn p(s: &str) -> RationalPhase {
        s.parse().unwrap()
    }

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn dense_overlap(x: &GhzState, y: &GhzState) -> Complex64 {
        let u = x.to_dense(DEFAULT_DENSE_CAP).unwrap();
        let v = y.to_dense(DEFAULT_DENSE_CAP).unwrap();
        u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    #[test]
    fn standard_state() {
        let s = GhzState::standard(2, 3).unwrap();
        assert_eq!(s.amplitude_phases(), vec![p("0/1"), p("0/1")]);
        let v = s.to_dense(64).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((v[0].re - h).abs() < 1e-15 && (v[7].re - h).abs() < 1e-15);
        assert_eq!(v.iter().filter(|z| z.norm() > 0.0).count(), 2);
    }

    #[test]
    fn rotated_state_phases() {
        let s = GhzState::new(3, 2, &a("1/3")).unwrap();
        assert_eq!(s.amplitude_phases(), vec![p("2/3"), p("0/1"), p("1/3")]);
        let flipped = GhzState::new(2, 1, &a("1")).unwrap();
        assert_eq!(flipped.amplitude_phases(), vec![p("1/2"), p("1/2")]);
        assert!(matches!(GhzState::new(1, 3, &Angle::zero()), Err(Error::InvalidDimension(1))));
        assert!(matches!(GhzState::new(3, 0, &Angle::zero()), Err(Error::InvalidParticleCount(0))));
    }

    #[test]
    fn rotations_depend_only_on_sum() {
        let s = GhzState::standard(3, 3).unwrap();
        assert_eq!(s.apply_rotations(&[a("1/9"), a("-1/9"), a("0")]).unwrap(), s);
        let s4 = GhzState::standard(4, 3).unwrap();
        assert_eq!(s4.apply_rotations(&[a("1/9"), a("-1/9"), a("0")]).unwrap(), s4);
        let one = s.apply_rotations(&[a("1/3"), a("0"), a("0")]).unwrap();
        let spread = s.apply_rotations(&[a("1/9"), a("1/9"), a("1/9")]).unwrap();
        assert_eq!(one, spread);
        assert!(s.inner_product(&one).unwrap().is_zero);
        assert!(s.apply_rotations(&[a("1/3")]).is_err());
    }

    #[test]
    fn inner_product_values() {
        let s = GhzState::standard(3, 2).unwrap();
        assert_eq!(s.inner_product(&s).unwrap().value, Complex64::new(1.0, 0.0));
        let third = GhzState::new(3, 2, &a("1/3")).unwrap();
        let ov = s.inner_product(&third).unwrap();
        assert!(ov.is_zero);
        assert_eq!(ov.value, Complex64::new(0.0, 0.0));
        // Direct amplitude sum (1/3)(e^{-iπ} + 1 + e^{iπ}) = -1/3.
        let half = GhzState::new(3, 2, &a("1/2")).unwrap();
        let ov = s.inner_product(&half).unwrap();
        assert!(!ov.is_zero);
        assert!((ov.value - Complex64::new(-1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((dense_overlap(&s, &half) - ov.value).norm() < 1e-12);
        assert!(s.inner_product(&GhzState::standard(3, 3).unwrap()).is_err());
    }

    #[test]
    fn even_dimension_full_turn_overlap_is_minus_one() {
        let s = GhzState::standard(2, 2).unwrap();
        let t = GhzState::new(2, 2, &a("1")).unwrap();
        let ov = s.inner_product(&t).unwrap();
        assert!(!ov.is_zero);
        assert_eq!(ov.value, Complex64::new(-1.0, 0.0));
        assert!((dense_overlap(&s, &t) - ov.value).norm() < 1e-12);
    }

    #[test]
    fn eigenvalue_examples() {
        let s = GhzState::standard(3, 3).unwrap();
        let x = ProductOperator::all_x(3, 3).unwrap();
        assert_eq!(s.eigenvalue_exponent(&x).unwrap(), Some(RationalPhase::zero()));

        let s4 = GhzState::standard(3, 4).unwrap();
        let op = ProductOperator::new(3, vec![p("1/9"), p("1/9"), p("1/9"), p("0/1")]).unwrap();
        assert_eq!(s4.eigenvalue_exponent(&op).unwrap(), Some(p("1/3")));

        let s2 = GhzState::standard(3, 2).unwrap();
        let off = ProductOperator::new(3, vec![p("1/18"), p("0/1")]).unwrap();
        assert_eq!(s2.eigenvalue_exponent(&off).unwrap(), None);
        let ov = s2.expectation(&off).unwrap().value.norm();
        assert!(ov > 0.0 && ov < 1.0);

        assert!(s.eigenvalue_exponent(&ProductOperator::all_x(4, 3).unwrap()).is_err());
    }

    #[test]
    fn expectation_examples() {
        let s = GhzState::standard(2, 3).unwrap();
        let x = ProductOperator::all_x(2, 3).unwrap();
        assert!((s.expectation(&x).unwrap().value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let q = ProductOperator::new(2, vec![p("1/4"), p("0/1"), p("0/1")]).unwrap();
        assert!(s.expectation(&q).unwrap().value.norm() < 1e-15);
    }

    #[test]
    fn dense_state_example() {
        let v = GhzState::standard(2, 2).unwrap().to_dense(64).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let expected = [h, 0.0, 0.0, h];
        for (x, e) in v.iter().zip(expected) {
            assert!((x - Complex64::new(e, 0.0)).norm() < 1e-15);
        }
        assert!(GhzState::standard(2, 13).unwrap().to_dense(DEFAULT_DENSE_CAP).is_err());
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let s = GhzState::new(4, 3, &a("3/2")).unwrap();
        let j = GhzStateJson::from(&s);
        assert_eq!(j.phi, "3/2");
        assert_eq!(GhzState::try_from(j).unwrap(), s);
        let bad = GhzStateJson { d: 3, n: 3, phi: "3/2".into() };
        assert!(GhzState::try_from(bad).is_err());
    }
}
