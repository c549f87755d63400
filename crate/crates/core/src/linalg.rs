//! Exact rank of sparse integer matrices over `Q` and over `GF(p)`.
//!
//! Over `Q` the matrix is first reduced with integer row operations using
//! `±1` pivots only (exact over `Z`, so rank-preserving over `Q`). Whatever is
//! left, if anything, goes through dense fraction-free Bareiss elimination
//! with arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sparse row: `(column, value)` sorted by column, no zero values.
pub type SparseRow = Vec<(usize, i64)>;

/// Rank over the rationals.
pub fn rank_rational(mut rows: Vec<SparseRow>) -> usize {
    rows.retain(|r| !r.is_empty());
    let mut rank = 0;
    loop {
        let Some((pivot_row, pivot_col, pivot_val)) = find_unit_pivot(&rows) else {
            break;
        };
        let pivot = rows.swap_remove(pivot_row);
        rank += 1;
        let mut overflowed = false;
        for row in rows.iter_mut() {
            let Ok(pos) = row.binary_search_by_key(&pivot_col, |&(c, _)| c) else {
                continue;
            };
            // row -= (a / p) * pivot, with p = ±1
            let factor = row[pos].1 * pivot_val;
            match axpy_checked(row, &pivot, factor) {
                Some(updated) => *row = updated,
                None => {
                    overflowed = true;
                    break;
                }
            }
        }
        if overflowed {
            // the pivot row was never fully applied; hand it back to Bareiss
            rows.push(pivot);
            rank -= 1;
            break;
        }
        rows.retain(|r| !r.is_empty());
    }
    if rows.is_empty() {
        return rank;
    }
    rank + bareiss_rank(to_dense_bigint(&rows))
}

fn find_unit_pivot(rows: &[SparseRow]) -> Option<(usize, usize, i64)> {
    let mut best: Option<(usize, usize, usize, i64)> = None;
    for (i, row) in rows.iter().enumerate() {
        if best.is_some_and(|(len, ..)| row.len() >= len) {
            continue;
        }
        if let Some(&(c, v)) = row.iter().find(|(_, v)| v.abs() == 1) {
            best = Some((row.len(), i, c, v));
            if row.len() == 1 {
                break;
            }
        }
    }
    best.map(|(_, i, c, v)| (i, c, v))
}

/// `row - factor * pivot`, or `None` on overflow.
fn axpy_checked(row: &SparseRow, pivot: &SparseRow, factor: i64) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_pivot {
            let v = pivot[j].1.checked_mul(factor)?.checked_neg()?;
            out.push((pivot[j].0, v));
            j += 1;
        } else {
            let v = row[i].1.checked_sub(pivot[j].1.checked_mul(factor)?)?;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn to_dense_bigint(rows: &[SparseRow]) -> Vec<Vec<BigInt>> {
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|&(c, _)| c)).collect();
    cols.sort_unstable();
    cols.dedup();
    rows.iter()
        .map(|r| {
            let mut dense = vec![BigInt::zero(); cols.len()];
            for &(c, v) in r {
                let idx = cols.binary_search(&c).expect("column collected above");
                dense[idx] = BigInt::from(v);
            }
            dense
        })
        .collect()
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            for j in col + 1..ncols {
                let v = (&pivot_row[col] * &row[j] - &row[col] * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
    }
    rank
}

/// Rank over `GF(p)`; `p` must be prime.
pub fn rank_mod_p(rows: Vec<SparseRow>, p: u32) -> usize {
    let p = p as u64;
    let mut rows: Vec<Vec<(usize, u64)>> = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(c, v)| (c, v.rem_euclid(p as i64) as u64))
                .filter(|&(_, v)| v != 0)
                .collect::<Vec<_>>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    let mut rank = 0;
    while !rows.is_empty() {
        let best = rows
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i)
            .expect("rows is nonempty");
        let pivot = rows.swap_remove(best);
        rank += 1;
        let (pc, pv) = pivot[0];
        let inv = mod_pow(pv, p - 2, p);
        for row in rows.iter_mut() {
            let Ok(pos) = row.binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let factor = row[pos].1 * inv % p;
            *row = axpy_mod(row, &pivot, factor, p);
        }
        rows.retain(|r| !r.is_empty());
    }
    rank
}

fn axpy_mod(row: &[(usize, u64)], pivot: &[(usize, u64)], factor: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        if j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            out.push(row[i]);
            i += 1;
        } else if i >= row.len() || pivot[j].0 < row[i].0 {
            out.push((pivot[j].0, (p - pivot[j].1 * factor % p) % p));
            j += 1;
        } else {
            let v = (row[i].1 + p - pivot[j].1 * factor % p) % p;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sparse(dense: &[Vec<i64>]) -> Vec<SparseRow> {
        dense
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
            .collect()
    }

    /// Textbook elimination over exact fractions, kept independent of the
    /// code under test.
    fn rank_by_fractions(dense: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut m: Vec<Vec<BigRational>> = dense
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &m[rank][col];
                    for c in 0..ncols {
                        let delta = &f * &m[rank][c];
                        m[r][c] -= delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_known_ranks() {
        let m = vec![vec![2, 4], vec![1, 2]];
        assert_eq!(rank_rational(sparse(&m)), 1);
        assert_eq!(rank_mod_p(sparse(&m), 2), 1);
        let m = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(rank_rational(sparse(&m)), 2);
        assert_eq!(rank_mod_p(sparse(&m), 2), 0);
        assert_eq!(rank_mod_p(sparse(&m), 3), 2);
        assert_eq!(rank_rational(vec![]), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = vec![vec![1, big], vec![big, 3], vec![3, 1]];
        assert_eq!(rank_rational(sparse(&m)), rank_by_fractions(&m));
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    proptest! {
        #[test]
        fn rational_rank_matches_fraction_elimination(
            m in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..7)
        ) {
            prop_assert_eq!(rank_rational(sparse(&m)), rank_by_fractions(&m));
        }

        #[test]
        fn bareiss_matches_fraction_elimination(
            m in prop::collection::vec(prop::collection::vec(-9i64..=9, 5), 1..6)
        ) {
            let dense = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            prop_assert_eq!(bareiss_rank(dense), rank_by_fractions(&m));
        }

        #[test]
        fn mod_p_rank_never_exceeds_rational_rank(
            m in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..6)
        ) {
            let q = rank_rational(sparse(&m));
            prop_assert!(rank_mod_p(sparse(&m), 2) <= q);
            prop_assert!(rank_mod_p(sparse(&m), 3) <= q);
        }
    }
}
