//! Linear congruences `A x ≡ b (mod m)` for arbitrary, possibly composite `m`.
//!
//! `Z/mZ` has zero divisors, so row reduction by division is not available.
//! Instead `A` is brought to diagonal form `U A V = D` using only unimodular
//! integer row and column operations built from extended gcds. Unimodular
//! integer matrices stay invertible modulo `m`, so `A x ≡ b` is solvable iff
//! `D y ≡ U b` is, and that system decouples into one congruence per row.

use num_integer::Integer;

#[derive(Debug, Clone)]
pub(crate) struct Diagonalized {
    modulus: i64,
    rows: usize,
    cols: usize,
    /// Nonzero diagonal entries `D[i][i]`, `i < rank`.
    pivots: Vec<i64>,
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
}

fn rem(x: i128, m: i64) -> i64 {
    x.rem_euclid(i128::from(m)) as i64
}

/// Returns `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`, for `a, b >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Replaces rows (or columns) `p` and `q` of `mat` by `[[s, t], [u, w]]` times them.
fn combine_rows(mat: &mut [Vec<i64>], p: usize, q: usize, coeffs: [i64; 4], m: i64) {
    let [s, t, u, w] = coeffs.map(i128::from);
    for c in 0..mat[p].len() {
        let (x, y) = (i128::from(mat[p][c]), i128::from(mat[q][c]));
        mat[p][c] = rem(s * x + t * y, m);
        mat[q][c] = rem(u * x + w * y, m);
    }
}

fn combine_cols(mat: &mut [Vec<i64>], p: usize, q: usize, coeffs: [i64; 4], m: i64) {
    let [s, t, u, w] = coeffs.map(i128::from);
    for row in mat.iter_mut() {
        let (x, y) = (i128::from(row[p]), i128::from(row[q]));
        row[p] = rem(s * x + t * y, m);
        row[q] = rem(u * x + w * y, m);
    }
}

/// Unimodular 2×2 that sends `(a, b)` to `(gcd(a, b), 0)`.
/// When `a | b` the pivot line itself is left unchanged.
fn eliminator(a: i64, b: i64) -> [i64; 4] {
    if b % a == 0 {
        return [1, 0, -(b / a), 1];
    }
    let (g, s, t) = ext_gcd(a, b);
    [s, t, -(b / g), a / g]
}

impl Diagonalized {
    /// Diagonalizes the `rows × cols` matrix `a` modulo `m`.
    pub(crate) fn new(a: &[Vec<i64>], cols: usize, m: i64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        let rows = a.len();
        let mut d: Vec<Vec<i64>> = a
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|&x| rem(i128::from(x), m)).collect()
            })
            .collect();
        let mut u = identity(rows);
        let mut vt = identity(cols); // rows of vt are columns of V
        let mut pivots = Vec::new();

        for t in 0..rows.min(cols) {
            // Pick the entry with the smallest representative as pivot.
            let Some((pr, pc)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| (d[i][j], i, j))
            else {
                break;
            };
            d.swap(t, pr);
            u.swap(t, pr);
            for row in d.iter_mut() {
                row.swap(t, pc);
            }
            vt.swap(t, pc);

            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if d[i][t] != 0 {
                        let c = eliminator(d[t][t], d[i][t]);
                        combine_rows(&mut d, t, i, c, m);
                        combine_rows(&mut u, t, i, c, m);
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if d[t][j] != 0 {
                        let c = eliminator(d[t][t], d[t][j]);
                        combine_cols(&mut d, t, j, c, m);
                        combine_rows(&mut vt, t, j, c, m);
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            pivots.push(d[t][t]);
        }

        let v = (0..cols).map(|i| (0..cols).map(|j| vt[j][i]).collect()).collect();
        Diagonalized { modulus: m, rows, cols, pivots, u, v }
    }

    /// Some solution of `A x ≡ b`, or `None` if there is none.
    pub(crate) fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let m = self.modulus;
        assert_eq!(b.len(), self.rows);
        let c: Vec<i64> = self
            .u
            .iter()
            .map(|row| rem(row.iter().zip(b).map(|(&x, &y)| i128::from(x) * i128::from(y)).sum(), m))
            .collect();
        let mut y = vec![0i64; self.cols];
        for (i, &ci) in c.iter().enumerate() {
            match self.pivots.get(i) {
                Some(&a) => {
                    let g = a.gcd(&m);
                    if ci % g != 0 {
                        return None;
                    }
                    let reduced = m / g;
                    let inv = mod_inverse(a / g, reduced);
                    y[i] = rem(i128::from(ci / g) * i128::from(inv), reduced);
                }
                None if ci != 0 => return None,
                None => {}
            }
        }
        Some(
            self.v
                .iter()
                .map(|row| rem(row.iter().zip(&y).map(|(&x, &z)| i128::from(x) * i128::from(z)).sum(), m))
                .collect(),
        )
    }
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let (g, s, _) = ext_gcd(a.rem_euclid(m), m);
    debug_assert_eq!(g, 1);
    s.rem_euclid(m)
}

/// Some solution of `A x ≡ b (mod m)`.
pub(crate) fn solve(a: &[Vec<i64>], cols: usize, b: &[i64], m: i64) -> Option<Vec<i64>> {
    if a.is_empty() {
        return Some(vec![0; cols]);
    }
    Diagonalized::new(a, cols, m).solve(b)
}

/// The lexicographically smallest solution in `{0..m}^cols`.
///
/// Fixes one coordinate at a time to the smallest value that leaves the
/// remaining system solvable.
pub(crate) fn lex_min_solution(a: &[Vec<i64>], cols: usize, b: &[i64], m: i64) -> Option<Vec<i64>> {
    solve(a, cols, b, m)?;
    let mut rhs: Vec<i64> = b.to_vec();
    let mut fixed = Vec::with_capacity(cols);
    for j in 0..cols {
        let rest: Vec<Vec<i64>> = a.iter().map(|r| r[j + 1..].to_vec()).collect();
        let value = (0..m)
            .find(|&v| {
                let trial: Vec<i64> = rhs
                    .iter()
                    .zip(a)
                    .map(|(&bi, row)| rem(i128::from(bi) - i128::from(row[j]) * i128::from(v), m))
                    .collect();
                solve(&rest, cols - j - 1, &trial, m).is_some()
            })
            .expect("a solution extending the fixed prefix exists");
        for (bi, row) in rhs.iter_mut().zip(a) {
            *bi = rem(i128::from(*bi) - i128::from(row[j]) * i128::from(value), m);
        }
        fixed.push(value);
    }
    Some(fixed)
}
