use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;
use crate::arith::is_prime_u64;
use crate::error::{domain, Result};
use crate::hensel::{lift_factors, reduce_symmetric};
use crate::modp::{factor_mod_p, ModPolynomial};

/// Squarefree decomposition of a monic integer polynomial: monic, squarefree,
/// pairwise coprime `g_i` with `F = ∏ g_i^{e_i}`.
pub fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    assert!(f.is_monic());
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    // Yun's algorithm; a primitive divisor of a monic polynomial is monic.
    let d = f.derivative();
    let a = IntPolynomial::gcd(f, &d);
    let mut b = f.exact_div(&a).expect("gcd divides");
    let mut c = d.exact_div(&a).expect("gcd divides derivative");
    let mut i = 1u32;
    while b.deg() > 0 {
        let diff = &c - &b.derivative();
        if diff.is_zero() {
            out.push((b, i));
            break;
        }
        let g = IntPolynomial::gcd(&b, &diff);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        b = b.exact_div(&g).expect("gcd divides");
        c = diff.exact_div(&g).expect("gcd divides");
        i += 1;
    }
    out
}

/// Complete factorisation of a monic integer polynomial into monic
/// irreducibles over ℚ, sorted canonically.
pub fn factor_over_q(f: &IntPolynomial) -> Result<Vec<(IntPolynomial, u32)>> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    if !f.is_monic() {
        return domain("factor_over_q expects a monic polynomial");
    }
    f.check_degree()?;
    let mut out = Vec::new();
    for (part, e) in squarefree_decomposition(f) {
        for g in factor_squarefree(&part) {
            out.push((g, e));
        }
    }
    out.sort();
    Ok(out)
}

/// Irreducibility over ℚ of a monic integer polynomial.
pub fn is_irreducible_over_q(f: &IntPolynomial) -> Result<bool> {
    let fs = factor_over_q(f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&p| is_prime_u64(p))
}

/// Zassenhaus: factor mod a good prime, lift, recombine.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    if f.coeff(0).is_zero() {
        let rest = f.exact_div(&IntPolynomial::x()).unwrap();
        let mut v = vec![IntPolynomial::x()];
        v.extend(factor_squarefree(&rest));
        return v;
    }
    // choose the good prime with the fewest modular factors among the first few
    let mut best: Option<(u64, Vec<ModPolynomial>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let fbar = ModPolynomial::from_int(f, p);
        if fbar.deg() != n || ModPolynomial::gcd(&fbar, &fbar.derivative()).deg() > 0 {
            continue;
        }
        let facs: Vec<ModPolynomial> = factor_mod_p(&fbar).into_iter().map(|(g, _)| g).collect();
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, facs) = best.expect("some prime does not divide the discriminant");
    // coefficient bound for any factor: 2^n · ||f||_1
    let norm: BigInt = f.coeffs().iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << (n + 1)) * norm;
    let bp = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = bp.clone();
    while pk <= bound {
        pk *= &bp;
        k += 1;
    }
    let lifted = lift_factors(f, &facs, k);
    recombine(f, lifted, &pk)
}

fn recombine(f: &IntPolynomial, mut pool: Vec<IntPolynomial>, pk: &BigInt) -> Vec<IntPolynomial> {
    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for subset in Combinations::new(pool.len(), size) {
            let cand = subset.iter().fold(IntPolynomial::one(), |a, &i| {
                reduce_symmetric(&(&a * &pool[i]), pk)
            });
            // constant-term divisibility is a cheap filter
            let c0 = cand.coeff(0);
            if c0.is_zero() || !(rest.coeff(0) % &c0).is_zero() {
                continue;
            }
            if let Some(q) = rest.exact_div(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.deg() > 0 {
        found.push(rest);
    }
    found
}

/// Lexicographic k-subsets of {0..n}.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn expand(fs: &[(IntPolynomial, u32)]) -> IntPolynomial {
        fs.iter().map(|(g, e)| g.pow(*e)).product()
    }

    #[test]
    fn examples() {
        let phi12 = p("X^4 - X^2 + 1");
        let f = p("X - 1").pow(4) * phi12.clone();
        assert_eq!(
            factor_over_q(&f).unwrap(),
            vec![(p("X - 1"), 4), (phi12.clone(), 1)]
        );
        assert_eq!(factor_over_q(&phi12).unwrap(), vec![(phi12, 1)]);
        assert_eq!(
            factor_over_q(&p("X^2 - 1")).unwrap(),
            vec![(p("X - 1"), 1), (p("X + 1"), 1)]
        );
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // X^4 - 10X^2 + 1 splits modulo every prime but not over ℚ
        assert!(is_irreducible_over_q(&p("X^4 - 10X^2 + 1")).unwrap());
        let sd3 = p("X^8 - 40X^6 + 352X^4 - 960X^2 + 576");
        assert!(is_irreducible_over_q(&sd3).unwrap());
    }

    #[test]
    fn products_factor_back() {
        let parts = [
            "X^2 + X + 1",
            "X^3 - X - 1",
            "X - 1",
            "X^4 - 10X^2 + 1",
            "X^2 - 2",
        ];
        let f = p(parts[0]).pow(2) * p(parts[1]) * p(parts[2]).pow(3) * p(parts[3]) * p(parts[4]);
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(expand(&fs), f);
        assert_eq!(fs.len(), 5);
        let zero_root = p("X^3 - X");
        assert_eq!(factor_over_q(&zero_root).unwrap().len(), 3);
    }

    #[test]
    fn squarefree_parts() {
        let f = p("X - 1").pow(3) * p("X + 2").pow(2) * p("X^2 + 1");
        let sq = squarefree_decomposition(&f);
        assert_eq!(
            sq,
            vec![(p("X^2 + 1"), 1), (p("X + 2"), 2), (p("X - 1"), 3)]
        );
    }
}
