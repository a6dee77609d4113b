use num_integer::Integer;

use super::chain;
use super::{ClaimedOperator, Construction, ConstructionMeta, Method, MethodOutcome};
use crate::error::{Error, Result};
use crate::ops::ProductOperator;
use crate::phase::RationalPhase;

/// Upper bound on chain operators tried by Method 3.
const MAX_CHAIN_STEPS: usize = 12;

fn claimed(d: u32, angles: Vec<RationalPhase>, exponent: RationalPhase) -> Result<ClaimedOperator> {
    Ok(ClaimedOperator { op: ProductOperator::new(d, angles)?, exponent })
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParticleCount(n));
    }
    Ok(())
}

/// Method 1 operators for any valid `f`, whether or not they contradict.
///
/// `Y = X(1/(fd))`. Besides `X⊗N` at `ν = 0` there are `N` operators at
/// `ν = 1`, each with a cyclic block of `f` consecutive `Y` factors starting at
/// a different qudit. The block starting at qudit 1 is the target.
pub fn method1_candidate(d: u32, n: usize, f: u32) -> Result<Construction> {
    crate::ops::check_dim(d)?;
    check_n(n)?;
    if f < 2 || !d.is_multiple_of(f) || n <= f as usize {
        return Err(Error::InvalidFactor { f, d, n });
    }
    let phi_o = RationalPhase::new(1, f * d);
    let omega = RationalPhase::unit(d);
    let block = |start: usize| -> Vec<RationalPhase> {
        (0..n)
            .map(|k| {
                let offset = (k + n - start) % n;
                if offset < f as usize {
                    phi_o.clone()
                } else {
                    RationalPhase::zero()
                }
            })
            .collect()
    };
    let mut operators = vec![claimed(d, vec![RationalPhase::zero(); n], RationalPhase::zero())?];
    for start in 1..n {
        operators.push(claimed(d, block(start), omega.clone())?);
    }
    Ok(Construction {
        d,
        n,
        method: Method::Cyclic,
        target: claimed(d, block(0), omega)?,
        phi_o,
        operators,
        meta: ConstructionMeta { f: Some(f), chain: None },
    })
}

/// Method 1 at factor `f`: contradicts iff `N` is not a multiple of `f`.
pub fn method1(d: u32, n: usize, f: u32) -> Result<MethodOutcome> {
    let c = method1_candidate(d, n, f)?;
    if n.is_multiple_of(f as usize) {
        return Ok(MethodOutcome::NoContradiction {
            d,
            n,
            method: Method::Cyclic,
            reason: format!("f·ΣY ≡ N (mod {d}) is solvable because {f} divides {n}"),
        });
    }
    Ok(MethodOutcome::Contradiction(Box::new(c)))
}

/// The smallest divisor `f` of `d` with `1 < f < N` and `N mod f != 0`.
pub fn smallest_method1_factor(d: u32, n: usize) -> Option<u32> {
    (2..=d).find(|&f| d.is_multiple_of(f) && (f as usize) < n && !n.is_multiple_of(f as usize))
}

/// `X⊗N` and `O_1 … O_{N+1}`, all at `ν = 0`, with `Y = X(φ_o)`, `Ỹ = X(-φ_o)`.
///
/// `O_k` (`k < N`) has `Y` on qudit `k` and `Ỹ` on qudit `N`; `O_N` has `Ỹ` on
/// `N-1` and `Y` on `N`; `O_{N+1}` has `Y` on 1 and `Ỹ` on `N-1`.
fn conjugate_base(d: u32, n: usize, phi_o: &RationalPhase) -> Result<Vec<ClaimedOperator>> {
    let y = phi_o.clone();
    let ty = -phi_o;
    let zero = RationalPhase::zero();
    let with = |pairs: &[(usize, &RationalPhase)]| {
        let mut angles = vec![zero.clone(); n];
        for &(k, a) in pairs {
            angles[k] = a.clone();
        }
        claimed(d, angles, zero.clone())
    };
    let mut ops = vec![with(&[])?];
    for k in 0..n - 1 {
        ops.push(with(&[(k, &y), (n - 1, &ty)])?);
    }
    ops.push(with(&[(n - 2, &ty), (n - 1, &y)])?);
    ops.push(with(&[(0, &y), (n - 2, &ty)])?);
    Ok(ops)
}

/// Method 2 operators with target `Y⊗N` at `ν = 1`, whether or not they contradict.
pub fn method2_candidate(d: u32, n: usize) -> Result<Construction> {
    crate::ops::check_dim(d)?;
    check_n(n)?;
    let phi_o = RationalPhase::new(1, d as usize * n);
    let operators = conjugate_base(d, n, &phi_o)?;
    let target = claimed(d, vec![phi_o.clone(); n], RationalPhase::unit(d))?;
    Ok(Construction { d, n, method: Method::Conjugate, phi_o, operators, target, meta: ConstructionMeta::default() })
}

/// Method 2: contradicts iff `NΔ ≡ 1 (mod d)` is unsolvable, i.e. `gcd(N, d) > 1`.
pub fn method2(d: u32, n: usize) -> Result<MethodOutcome> {
    let c = method2_candidate(d, n)?;
    if n.gcd(&(d as usize)) == 1 {
        return Ok(MethodOutcome::NoContradiction {
            d,
            n,
            method: Method::Conjugate,
            reason: format!("NΔ ≡ 1 (mod {d}) is solvable because gcd({n}, {d}) = 1"),
        });
    }
    Ok(MethodOutcome::Contradiction(Box::new(c)))
}

/// Method 3 for `3 <= N < d`, with `φ_o = 1/d²`.
pub fn method3(d: u32, n: usize) -> Result<Construction> {
    crate::ops::check_dim(d)?;
    if n < 3 || n >= d as usize {
        return Err(Error::InvalidParticleCount(n));
    }
    let phi_o = RationalPhase::new(1, u64::from(d) * u64::from(d));
    let mut operators = conjugate_base(d, n, &phi_o)?;
    let plan = chain::plan(d, n, MAX_CHAIN_STEPS)
        .ok_or_else(|| Error::Construction(format!("no chain within {MAX_CHAIN_STEPS} steps for d = {d}, N = {n}")))?;
    for step in &plan.steps {
        let op = ProductOperator::from_multipliers(d, &phi_o, &step.multipliers)?;
        operators.push(ClaimedOperator { op, exponent: RationalPhase::zero() });
    }
    let target = ClaimedOperator {
        op: ProductOperator::from_multipliers(d, &phi_o, &plan.target)?,
        exponent: RationalPhase::unit(d),
    };
    Ok(Construction {
        d,
        n,
        method: Method::Chain,
        phi_o,
        operators,
        target,
        meta: ConstructionMeta { f: None, chain: Some(plan.steps.iter().map(|s| s.learned.1).collect()) },
    })
}
