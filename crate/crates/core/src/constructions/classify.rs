use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::methods::{method1, method2, method3, smallest_method1_factor};
use super::verify::{verify_construction, Certificate, VerifyOptions};
use super::{Construction, Method};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegimeCell {
    pub d: u32,
    pub n: usize,
    pub regime: u8,
    pub witness_method: Method,
    /// Method 1 factor, when `witness_method` is 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<u32>,
}

impl RegimeCell {
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.d, self.n, self.regime, self.witness_method)
    }
}

/// Regime 1 if Method 1 applies for some factor, else 2 if `gcd(N, d) > 1`,
/// else 3.
pub fn classify(d: u32, n: usize) -> Result<RegimeCell> {
    crate::ops::check_dim(d)?;
    if n < 3 {
        return Err(Error::InvalidParticleCount(n));
    }
    let cell = |regime, witness_method, f| RegimeCell { d, n, regime, witness_method, f };
    Ok(match smallest_method1_factor(d, n) {
        Some(f) => cell(1, Method::Cyclic, Some(f)),
        None if n.gcd(&(d as usize)) > 1 => cell(2, Method::Conjugate, None),
        None => cell(3, Method::Chain, None),
    })
}

/// The contradiction that witnesses `cell`'s regime.
pub fn witness_construction(cell: &RegimeCell) -> Result<Construction> {
    let (d, n) = (cell.d, cell.n);
    let outcome = match (cell.witness_method, cell.f) {
        (Method::Cyclic, Some(f)) => method1(d, n, f)?,
        (Method::Cyclic, None) => return Err(Error::Construction("Method 1 cell without a factor".into())),
        (Method::Conjugate, _) => method2(d, n)?,
        (Method::Chain, _) => return method3(d, n),
    };
    outcome.into_construction().ok_or_else(|| {
        Error::Construction(format!("method {} gives no contradiction at d = {d}, N = {n}", cell.witness_method))
    })
}

/// Builds and verifies the witness, failing unless the certificate is valid.
pub fn certify_cell(cell: &RegimeCell, opts: &VerifyOptions) -> Result<Certificate> {
    let c = witness_construction(cell)?;
    let cert = verify_construction(&c, opts);
    if !cert.valid {
        let reason = if !cert.quantum_ok {
            "claimed eigenvalues do not hold"
        } else if !cert.oracle_consistent {
            "oracle disagrees with exact result"
        } else {
            "hidden-variable system is satisfiable"
        };
        return Err(Error::VerificationFailed { d: cell.d, n: cell.n, reason: reason.into() });
    }
    Ok(cert)
}

/// All cells `2 <= d <= d_max`, `3 <= N <= n_max`, ordered by `d` then `N`.
/// Cells are evaluated in parallel.
pub fn classify_plane(d_max: u32, n_max: usize, verify: bool) -> Result<Vec<RegimeCell>> {
    crate::ops::check_dim(d_max)?;
    if n_max < 3 {
        return Err(Error::InvalidParticleCount(n_max));
    }
    let coords: Vec<(u32, usize)> = (2..=d_max).flat_map(|d| (3..=n_max).map(move |n| (d, n))).collect();
    let opts = VerifyOptions::default();
    coords
        .into_par_iter()
        .map(|(d, n)| {
            let cell = classify(d, n)?;
            if verify {
                certify_cell(&cell, &opts)?;
            }
            Ok(cell)
        })
        .collect()
}
