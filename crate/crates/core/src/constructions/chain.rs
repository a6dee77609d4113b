//! Search for chains of `ν = 0` operators built from multiples of `φ_o`.
//!
//! Write `Y^{(n)}_k = X_k(n·φ_o)` and `Δ^{(n)}_k` for its hidden-variable
//! variation relative to `X_k`. After Method 2's base set every qudit has
//! `Δ^{(1)}_k = Δ`, and the two qudits carrying `Ỹ` also have
//! `Δ^{(-1)}_k = -Δ`. A `ν = 0` operator whose multipliers sum to zero, with
//! all but one factor already known to scale as `n·Δ`, forces the remaining
//! factor to scale too. The search looks for the fewest such operators after
//! which a target with multipliers `m, 1, …, 1` (`m = d - N + 1`, so the sum
//! is `d`) is fully known: hidden variables then predict `ω^{dΔ} = 1`.
//!
//! New multipliers are only introduced on three chain qudits (the first and
//! the last two). Multipliers used on one qudit stay distinct modulo `d`, so
//! no two of its measurement bases share an eigenvector.

use std::collections::BTreeSet;

/// One chain operator: multiplier per qudit (0 for `X`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ChainStep {
    pub multipliers: Vec<i64>,
    pub learned: (usize, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ChainPlan {
    pub steps: Vec<ChainStep>,
    /// Target multipliers, summing to `d`.
    pub target: Vec<i64>,
}

struct Search {
    d: i64,
    n: usize,
    chain: [usize; 3],
    m: i64,
    known: Vec<BTreeSet<i64>>,
    steps: Vec<ChainStep>,
}

impl Search {
    fn goal(&self) -> Option<Vec<i64>> {
        self.chain.iter().find(|&&q| self.known[q].contains(&self.m)).map(|&q| {
            let mut t = vec![1; self.n];
            t[q] = self.m;
            t
        })
    }

    /// Candidate steps in a fixed order: chain qudit, then new multiplier
    /// ascending; for each multiplier the first helper combination found.
    fn moves(&self) -> Vec<ChainStep> {
        let mut out = Vec::new();
        for &k in &self.chain {
            let mut found: Vec<(i64, Vec<i64>)> = Vec::new();
            let mut offer = |value: i64, mults: Vec<i64>| {
                if !found.iter().any(|(v, _)| *v == value) {
                    found.push((value, mults));
                }
            };
            let others: Vec<usize> = (0..self.n).filter(|&q| q != k).collect();
            for &q in &others {
                for &a in self.known[q].iter().filter(|&&a| a != 0) {
                    let mut mults = vec![0; self.n];
                    mults[q] = a;
                    offer(-a, mults);
                }
            }
            for (x, &q1) in others.iter().enumerate() {
                for &q2 in &others[x + 1..] {
                    for &a in self.known[q1].iter().filter(|&&a| a != 0) {
                        for &b in self.known[q2].iter().filter(|&&b| b != 0) {
                            let mut mults = vec![0; self.n];
                            mults[q1] = a;
                            mults[q2] = b;
                            offer(-(a + b), mults);
                        }
                    }
                }
            }
            found.sort_by_key(|(v, _)| *v);
            for (value, mut mults) in found {
                let fresh = value != 0
                    && value.abs() < self.d
                    && self.known[k].iter().all(|&u| (value - u).rem_euclid(self.d) != 0);
                if fresh {
                    mults[k] = value;
                    out.push(ChainStep { multipliers: mults, learned: (k, value) });
                }
            }
        }
        out
    }

    fn dfs(&mut self, depth: usize) -> Option<Vec<i64>> {
        if let Some(t) = self.goal() {
            return Some(t);
        }
        if depth == 0 {
            return None;
        }
        for step in self.moves() {
            let (k, v) = step.learned;
            self.known[k].insert(v);
            self.steps.push(step);
            if let Some(t) = self.dfs(depth - 1) {
                return Some(t);
            }
            self.steps.pop();
            self.known[k].remove(&v);
        }
        None
    }
}

/// Iterative deepening up to `max_steps` chain operators.
pub(crate) fn plan(d: u32, n: usize, max_steps: usize) -> Option<ChainPlan> {
    if n < 3 || n as u32 >= d {
        return None;
    }
    let mut known = vec![BTreeSet::from([0, 1]); n];
    known[n - 2].insert(-1);
    known[n - 1].insert(-1);
    let mut search = Search {
        d: i64::from(d),
        n,
        chain: [0, n - 2, n - 1],
        m: i64::from(d) - n as i64 + 1,
        known,
        steps: Vec::new(),
    };
    (0..=max_steps).find_map(|depth| {
        search.steps.clear();
        search.dfs(depth).map(|target| ChainPlan { steps: search.steps.clone(), target })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoted_cases() {
        let p = plan(5, 3, 8).unwrap();
        assert_eq!(p.steps.len(), 2);
        assert_eq!(p.target, vec![1, 3, 1]);

        let p = plan(7, 3, 8).unwrap();
        assert_eq!(p.steps.len(), 4);
        assert_eq!(p.target, vec![1, 1, 5]);

        let p = plan(7, 6, 8).unwrap();
        assert_eq!(p.steps.len(), 1);
        assert_eq!(p.steps[0].multipliers, vec![2, 0, 0, 0, -1, -1]);
        assert_eq!(p.target, vec![2, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn every_step_is_balanced_and_uses_known_factors() {
        for d in 4..=12u32 {
            for n in 3..d as usize {
                let p = plan(d, n, 10).unwrap_or_else(|| panic!("no chain for d={d} n={n}"));
                let mut known = vec![BTreeSet::from([0i64, 1]); n];
                known[n - 2].insert(-1);
                known[n - 1].insert(-1);
                for s in &p.steps {
                    assert_eq!(s.multipliers.iter().sum::<i64>(), 0);
                    let (k, v) = s.learned;
                    assert_eq!(s.multipliers[k], v);
                    for (q, m) in s.multipliers.iter().enumerate() {
                        if q != k {
                            assert!(known[q].contains(m));
                        }
                    }
                    known[k].insert(v);
                }
                assert_eq!(p.target.iter().sum::<i64>(), i64::from(d));
                for (q, m) in p.target.iter().enumerate() {
                    assert!(known[q].contains(m));
                }
            }
        }
    }

    #[test]
    fn outside_regime() {
        assert!(plan(5, 5, 8).is_none());
        assert!(plan(5, 2, 8).is_none());
    }
}
