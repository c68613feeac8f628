//! Linear algebra over 𝔽_p, over ℤ (Hermite normal form) and over ℤ/mℤ
//! (division-free characteristic polynomials).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{inv_mod, mul_mod};

/// Row-reduces `m` over 𝔽_p in place and returns the pivot columns.
fn row_echelon(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let t = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - mul_mod(t, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_mod(m: &[Vec<u64>], p: u64) -> usize {
    let mut a = m.to_vec();
    row_echelon(&mut a, p).len()
}

/// Basis of the left kernel `{v : v·M = 0}` of an `r × c` matrix over 𝔽_p.
pub fn left_kernel_mod(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    // [M | I]: rows whose M-part reduces to zero carry kernel vectors
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let pivots = row_echelon_prefix(&mut aug, p, c);
    aug.into_iter()
        .skip(pivots)
        .map(|row| row[c..].to_vec())
        .collect()
}

/// Echelon form with pivots restricted to the first `c` columns; returns
/// the number of pivot rows (which come first).
fn row_echelon_prefix(m: &mut [Vec<u64>], p: u64, c: usize) -> usize {
    let rows = m.len();
    let mut r = 0;
    for col in 0..c {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, k);
        let inv = inv_mod(m[r][col], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let t = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - mul_mod(t, y, p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Finds the first linear dependency of `vecs[last]` on `vecs[..last]` over
/// 𝔽_p, returning coefficients `c` with `vecs[last] = Σ c_i vecs[i]`.
pub fn express_mod(vecs: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let k = vecs.len();
    let n = target.len();
    // columns are the vectors; solve A c = target
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|row| {
            let mut v: Vec<u64> = vecs.iter().map(|col| col[row]).collect();
            v.push(target[row]);
            v
        })
        .collect();
    let pivots = row_echelon(&mut m, p);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut c = vec![0u64; k];
    for (i, &col) in pivots.iter().enumerate() {
        c[col] = m[i][k];
    }
    Some(c)
}

/// Hermite normal form of the lattice spanned by `gens` together with
/// `d·ℤ^n`. Rows of the result are upper triangular with positive pivots
/// dividing `d` and entries above each pivot reduced into `[0, pivot)`.
pub fn hnf_with_modulus(gens: &[Vec<BigInt>], n: usize, d: &BigInt) -> Vec<Vec<BigInt>> {
    let reduce_tail = |row: &mut Vec<BigInt>, from: usize| {
        for x in row[from..].iter_mut() {
            *x = x.mod_floor(d);
        }
    };
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|x| x.mod_floor(d)).collect())
        .filter(|g: &Vec<BigInt>| g.iter().any(|x| !x.is_zero()))
        .collect();
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut unit = vec![BigInt::zero(); n];
        unit[j] = d.clone();
        rows.push(unit);
        loop {
            let live: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][j].is_zero()).collect();
            if live.len() <= 1 {
                break;
            }
            let piv = *live.iter().min_by_key(|&&i| rows[i][j].abs()).unwrap();
            let prow = rows[piv].clone();
            for &i in &live {
                if i == piv {
                    continue;
                }
                let q = rows[i][j].div_floor(&prow[j]);
                for c in j..n {
                    let t = &q * &prow[c];
                    rows[i][c] -= t;
                }
                reduce_tail(&mut rows[i], j + 1);
            }
        }
        let k = (0..rows.len())
            .find(|&i| !rows[i][j].is_zero())
            .expect("d·e_j keeps the column alive");
        let mut prow = rows.swap_remove(k);
        if prow[j].is_negative() {
            for x in prow.iter_mut() {
                *x = -&*x;
            }
            reduce_tail(&mut prow, j + 1);
        }
        out.push(prow);
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // size-reduce above the diagonal
    for j in 0..n {
        for i in 0..j {
            let q = out[i][j].div_floor(&out[j][j]);
            if !q.is_zero() {
                let pj = out[j].clone();
                for c in j..n {
                    out[i][c] -= &q * &pj[c];
                }
            }
        }
    }
    out
}

/// Solves `c · B = w` for the upper-triangular basis `B`, returning integer
/// coordinates when `w` lies in the lattice.
pub fn solve_upper(b: &[Vec<BigInt>], w: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = b.len();
    let mut w = w.to_vec();
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let (q, r) = w[i].div_rem(&b[i][i]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for j in i..n {
                w[j] -= &q * &b[i][j];
            }
        }
        c.push(q);
    }
    Some(c)
}

/// Characteristic polynomial `det(X·I - M)` of a square integer matrix modulo
/// `m`, by Berkowitz's division-free algorithm. Ascending coefficients.
pub fn charpoly_mod(a: &[Vec<BigInt>], m: &BigInt) -> Vec<BigInt> {
    let n = a.len();
    let md = |x: BigInt| x.mod_floor(m);
    // Berkowitz: build the Toeplitz vectors for each leading principal block
    let mut v: Vec<BigInt> = vec![BigInt::one()]; // char poly of the empty matrix, descending
    for r in 0..n {
        // block of size r+1: a[r][r], row R = a[r][..r], column C = a[..r][r], principal A_r
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(md(-a[r][r].clone()));
        // powers: R·A^k·C for k = 0..r-1
        let mut col: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let s: BigInt = (0..r).map(|i| &a[r][i] * &col[i]).sum();
            t.push(md(-s));
            col = (0..r)
                .map(|i| md((0..r).map(|j| &a[i][j] * &col[j]).sum()))
                .collect();
        }
        // new = T · v where T is the (r+2) × (r+1) lower-triangular Toeplitz matrix
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, vj) in v.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    acc += &t[i - j] * vj;
                }
            }
            *slot = md(acc);
        }
        v = next;
    }
    v.reverse();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_and_rank() {
        let p = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_mod(&m, p), 2);
        let k = left_kernel_mod(&m, p);
        assert_eq!(k.len(), 1);
        assert!((0..3).all(|j| (0..3).map(|i| k[0][i] * m[i][j]).sum::<u64>() % p == 0));
    }

    #[test]
    fn express_finds_combination() {
        let p = 5;
        let vecs = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(express_mod(&vecs, &[2, 3, 0], p), Some(vec![2, 3]));
        assert_eq!(express_mod(&vecs, &[1, 0, 0], p), None);
    }

    #[test]
    fn hnf_spans_the_same_lattice() {
        let gens = bi(&[&[2, 4, 6], &[0, 3, 9], &[1, 1, 1]]);
        let d = BigInt::from(36);
        let h = hnf_with_modulus(&gens, 3, &d);
        for (i, row) in h.iter().enumerate() {
            assert!(row[i].is_positive());
            for x in &row[..i] {
                assert!(x.is_zero());
            }
        }
        for g in &gens {
            assert!(solve_upper(&h, g).is_some());
        }
        let det: BigInt = (0..3).map(|i| h[i][i].clone()).product();
        // lattice generated by gens contains 36·Z^3, so det divides 36^3
        assert!((num_traits::pow(d, 3) % det).is_zero());
    }

    #[test]
    fn berkowitz_matches_small_cases() {
        let m = BigInt::from(1_000_003);
        let a = bi(&[&[2, 1], &[3, 4]]);
        // X^2 - 6X + 5
        let cp = charpoly_mod(&a, &m);
        assert_eq!(
            cp,
            vec![BigInt::from(5), BigInt::from(1_000_003 - 6), BigInt::one()]
        );
        let c = bi(&[&[0, 0, -6], &[1, 0, 11], &[0, 1, -6]]);
        // companion matrix of X^3 + 6X^2 - 11X + 6
        let cp = charpoly_mod(&c, &m);
        let expect: Vec<BigInt> = [6i64, -11, 6, 1]
            .iter()
            .map(|&x| BigInt::from(x).mod_floor(&m))
            .collect();
        assert_eq!(cp, expect);
    }
}
