//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Entries after k steps are (k+1)x(k+1) minors of the input, so every
//! division is exact and coefficient growth stays polynomial in the minor
//! bound. Pivoting: leftmost nonzero column, largest absolute value in the
//! column, smallest row index on ties.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Result of forward elimination.
pub struct Echelon {
    pub mat: Vec<Vec<BigInt>>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

pub fn echelon(mut m: Vec<Vec<BigInt>>) -> Echelon {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let mut best: Option<usize> = None;
        for r in rank..rows {
            if !m[r][col].is_zero() {
                match best {
                    None => best = Some(r),
                    Some(b) => {
                        if m[r][col].abs() > m[b][col].abs() {
                            best = Some(r);
                        }
                    }
                }
            }
        }
        let Some(pr) = best else { continue };
        m.swap(rank, pr);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            // rows with a zero pivot-column entry still rescale by
            // pivot/prev, which is what keeps every later division exact
            let factor = std::mem::replace(&mut row[col], BigInt::zero());
            if factor.is_zero() {
                for c in (col + 1)..cols {
                    if !row[c].is_zero() {
                        let t = &pivot * &row[c];
                        row[c] = t / &prev;
                    }
                }
            } else {
                for c in (col + 1)..cols {
                    let t = &pivot * &row[c] - &factor * &pivot_row[c];
                    row[c] = t / &prev;
                }
            }
        }
        prev = pivot;
        pivot_cols.push(col);
        rank += 1;
    }
    Echelon {
        mat: m,
        rank,
        pivot_cols,
    }
}

/// Rank only.
pub fn rank(m: Vec<Vec<BigInt>>) -> usize {
    echelon(m).rank
}

/// Basis of the right null space, from back substitution on the echelon.
/// One vector per free column, normalized to primitive integer entries with
/// a positive unit at its free coordinate.
pub fn kernel(e: &Echelon, cols: usize) -> Vec<Vec<BigRational>> {
    let pivot_set: std::collections::BTreeSet<usize> = e.pivot_cols.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &j in &free {
        let mut x = vec![BigRational::zero(); cols];
        x[j] = BigRational::one();
        for i in (0..e.rank).rev() {
            let p = e.pivot_cols[i];
            let mut acc = BigRational::zero();
            for c in (p + 1)..cols {
                if !e.mat[i][c].is_zero() && !x[c].is_zero() {
                    acc += BigRational::from(e.mat[i][c].clone()) * &x[c];
                }
            }
            if !acc.is_zero() {
                x[p] = -acc / BigRational::from(e.mat[i][p].clone());
            }
        }
        basis.push(normalize(x));
    }
    basis
}

/// Clear denominators and content; sign so the last nonzero entry of the
/// original normalization (the free coordinate) stays positive.
fn normalize(v: Vec<BigRational>) -> Vec<BigRational> {
    let mut lcm = BigInt::one();
    for c in &v {
        if !c.is_zero() {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = num_integer::gcd(content, c.clone());
    }
    if content.is_zero() {
        return v;
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|c| c / &content).collect();
    if let Some(last) = out.iter().rev().find(|c| !c.is_zero()) {
        if last.is_negative() {
            for c in &mut out {
                *c = -c.clone();
            }
        }
    }
    out.into_iter().map(BigRational::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank(m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn kernel_line() {
        let e = echelon(m(&[&[1, 1]]));
        let k = kernel(&e, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0], -v[1].clone());
        assert!(!v[1].is_zero());
    }

    #[test]
    fn kernel_satisfies_system() {
        let a = m(&[&[2, 3, 5, 7], &[1, -1, 0, 2], &[3, 2, 5, 9]]);
        let e = echelon(a.clone());
        let k = kernel(&e, 4);
        assert_eq!(e.rank + k.len(), 4);
        for v in &k {
            for row in &a {
                let mut acc = BigRational::zero();
                for (c, x) in row.iter().zip(v) {
                    acc += BigRational::from(c.clone()) * x;
                }
                assert!(acc.is_zero());
            }
        }
    }
}
