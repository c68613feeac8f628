//! Cyclotomic polynomials, totient arithmetic, factorisation shapes modulo p,
//! resultants of cyclotomic pairs and the admissible index sets `C_d`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::arith::{is_prime_u64, mult_order, pow_mod, prime_power};
use crate::error::{domain, Result};
use crate::intpoly::{factor_over_q, IntPolynomial};
use crate::modp::{factor_mod_p, ModPolynomial};
use crate::obstruction::check_square;
use crate::padic::LocalSymbolSet;

pub use crate::arith::totient;

/// Largest `n` accepted by [`cyclotomic`].
pub const MAX_CYCLOTOMIC_INDEX: u64 = 1_000_000;

fn distinct_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coefficients of `Φ_r` for squarefree `r ≥ 2` from the product
/// `Π_{d | r} (1 - X^d)^{μ(r/d)}`, truncated at half the degree and mirrored.
///
/// Arithmetic wraps in `i128`, so every coefficient is exact modulo `2^128`;
/// the true coefficients are far smaller in this range.
fn squarefree_coeffs(primes: &[u64]) -> Vec<i128> {
    let r: u64 = primes.iter().product();
    let deg: usize = primes.iter().map(|&q| (q - 1) as usize).product();
    let half = deg / 2;
    let mut c = vec![0i128; half + 1];
    c[0] = 1;
    for mask in 0u32..(1 << primes.len()) {
        // divisor d = r / (product of primes in mask), exponent μ(r/d) = (-1)^|mask|
        let q: u64 = (0..primes.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| primes[i])
            .product();
        let d = (r / q) as usize;
        if d > half {
            continue;
        }
        if mask.count_ones() % 2 == 0 {
            for i in (d..=half).rev() {
                c[i] = c[i].wrapping_sub(c[i - d]);
            }
        } else {
            for i in d..=half {
                c[i] = c[i].wrapping_add(c[i - d]);
            }
        }
    }
    // Φ_r(0) = 1 for r ≥ 2, so the series product is Φ_r itself
    let mut full = vec![0i128; deg + 1];
    for i in 0..=half {
        full[i] = c[i];
        full[deg - i] = c[i];
    }
    full
}

fn memo() -> &'static Mutex<HashMap<u64, Arc<IntPolynomial>>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial `Φ_n`, `1 ≤ n ≤ 10^6`. Memoized.
pub fn cyclotomic(n: u64) -> Result<IntPolynomial> {
    if n == 0 || n > MAX_CYCLOTOMIC_INDEX {
        return domain(format!(
            "cyclotomic index {n} outside 1..={MAX_CYCLOTOMIC_INDEX}"
        ));
    }
    if let Some(f) = memo().lock().unwrap().get(&n) {
        return Ok((**f).clone());
    }
    let f = if n == 1 {
        IntPolynomial::linear(1)
    } else {
        let primes = distinct_primes(n);
        let rad: u64 = primes.iter().product();
        let step = (n / rad) as usize;
        let base = squarefree_coeffs(&primes);
        let mut coeffs = vec![BigInt::from(0); (base.len() - 1) * step + 1];
        for (i, &c) in base.iter().enumerate() {
            coeffs[i * step] = BigInt::from(c);
        }
        IntPolynomial::new(coeffs)
    };
    memo().lock().unwrap().insert(n, Arc::new(f.clone()));
    Ok(f)
}

/// All `n` with `φ(n) = k`, ascending.
///
/// Built prime by prime: `n = Π q^a` has `φ(n) = Π q^{a-1}(q-1)`, so every
/// prime divisor `q` of `n` has `q - 1 | k`.
pub fn totient_fiber(k: u64) -> Result<Vec<u64>> {
    if k == 0 {
        return domain("totient fiber of 0");
    }
    let mut divisors: Vec<u64> = (1..=k)
        .take_while(|d| d * d <= k)
        .filter(|d| k.is_multiple_of(*d))
        .collect();
    let upper: Vec<u64> = divisors.iter().rev().map(|d| k / d).collect();
    divisors.extend(upper);
    divisors.dedup();
    let mut primes: Vec<u64> = divisors
        .iter()
        .map(|d| d + 1)
        .filter(|&q| is_prime_u64(q))
        .collect();
    primes.sort_unstable();
    primes.reverse();
    let mut out = Vec::new();
    fiber_rec(k, &primes, 1, &mut out);
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn fiber_rec(k: u64, primes: &[u64], acc: u64, out: &mut Vec<u64>) {
    if k == 1 {
        out.push(acc);
        // the factor 2 leaves φ unchanged
        if acc % 2 == 1 {
            out.push(2 * acc);
        }
        return;
    }
    for (i, &q) in primes.iter().enumerate() {
        if !k.is_multiple_of(q - 1) {
            continue;
        }
        let mut rest = k / (q - 1);
        let mut n = acc * q;
        loop {
            fiber_rec(rest, &primes[i + 1..], n, out);
            if !rest.is_multiple_of(q) {
                break;
            }
            rest /= q;
            n *= q;
        }
    }
}

/// The `n` with `Φ_n = f`, if `f` is a cyclotomic polynomial.
pub fn cyclotomic_index(f: &IntPolynomial) -> Result<Option<u64>> {
    if f.deg() == 0 || !f.is_monic() {
        return Ok(None);
    }
    for n in totient_fiber(f.deg() as u64)? {
        if cyclotomic(n)? == *f {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Whether every irreducible factor of `f` over ℚ is cyclotomic.
pub fn is_cyclotomic_product(f: &IntPolynomial) -> Result<bool> {
    for (g, _) in factor_over_q(f)? {
        if cyclotomic_index(&g)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shape of `Φ_n` modulo p: `Φ_n ≡ Φ_m^{φ(p^e)}` with `n = p^e·m`, and `Φ_m`
/// splits into `φ(m)/d` distinct irreducibles of degree `d = ord_m(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycloShape {
    pub n: u64,
    pub p: u64,
    pub e: u32,
    pub m: u64,
    pub factor_degree: u64,
    pub factor_count: u64,
    pub power: u64,
    /// Whether the irreducible factors are `*`-symmetric, which holds for all
    /// of them or none: `p^r ≡ -1 mod m` for some `r`.
    pub symmetric: bool,
}

impl fmt::Display for CycloShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Φ_{} mod {}: {} irreducible factor(s) of degree {}, each to the power {} (m = {}, e = {}, {})",
            self.n,
            self.p,
            self.factor_count,
            self.factor_degree,
            self.power,
            self.m,
            self.e,
            if self.symmetric { "*-symmetric" } else { "not *-symmetric" }
        )
    }
}

/// `∃ r ≥ 0: p^r ≡ -1 mod m`, for `m ≥ 3` coprime to p.
fn reaches_minus_one(p: u64, m: u64) -> bool {
    let d = mult_order(p % m, m);
    (0..d).any(|r| pow_mod(p % m, r, m) == m - 1)
}

fn split_off(n: u64, p: u64) -> (u32, u64) {
    let (mut e, mut m) = (0, n);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (e, m)
}

pub fn cyclo_shape(n: u64, p: u64) -> Result<CycloShape> {
    if n == 0 {
        return domain("cyclotomic index 0");
    }
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    let (e, m) = split_off(n, p);
    let power = if e == 0 { 1 } else { (p - 1) * p.pow(e - 1) };
    let (factor_degree, factor_count, symmetric) = if m <= 2 {
        (1, 1, true)
    } else {
        let d = mult_order(p % m, m);
        (d, totient(m) / d, reaches_minus_one(p, m))
    };
    Ok(CycloShape {
        n,
        p,
        e,
        m,
        factor_degree,
        factor_count,
        power,
        symmetric,
    })
}

/// The reduction set of `Φ_n` over `ℚ_p` by the closed rule.
pub fn cyclo_symbol_set(n: u64, p: u64) -> Result<LocalSymbolSet> {
    let shape = cyclo_shape(n, p)?;
    let members = match shape.m {
        1 => vec![ModPolynomial::from_i64(p, &[-1, 1])],
        2 => vec![ModPolynomial::from_i64(p, &[1, 1])],
        m if shape.symmetric => {
            let phi = ModPolynomial::from_int(&cyclotomic(m)?, p);
            factor_mod_p(&phi).into_iter().map(|(g, _)| g).collect()
        }
        _ => Vec::new(),
    };
    Ok(LocalSymbolSet::from_members(p, members))
}

/// `n / n'` as a prime power `p^k` with `k ≥ 1`, if it is one.
fn ratio_prime(n: u64, n2: u64) -> Option<u64> {
    if !n.is_multiple_of(n2) {
        return None;
    }
    prime_power(n / n2).map(|(p, _)| p)
}

/// `Res(Φ_n, Φ_{n'})` for `n > n' ≥ 1` in closed form.
///
/// For `n' = 1` this is `(-1)^{φ(n)} Φ_n(1)`, which is `-2` for `n = 2`,
/// `p` for `n = p^e > 2` and `1` otherwise. For `n' > 1` it is `p^{φ(n')}`
/// when `n/n'` is a power of the prime `p` and `1` otherwise.
pub fn apostol_resultant(n: u64, n2: u64) -> Result<BigInt> {
    if n2 == 0 || n <= n2 {
        return domain(format!("need n > n' ≥ 1, got ({n}, {n2})"));
    }
    if n2 == 1 {
        let at_one = prime_power(n).map_or(1, |(p, _)| p as i64);
        let sign = if totient(n) % 2 == 1 { -1 } else { 1 };
        return Ok(BigInt::from(sign * at_one));
    }
    Ok(match ratio_prime(n, n2) {
        Some(p) => num_traits::pow(BigInt::from(p), totient(n2) as usize),
        None => BigInt::from(1),
    })
}

/// `Π(Φ_n, Φ_{n'})` for `n ≠ n'` by the closed rule.
pub fn pi_cyclo(n: u64, n2: u64) -> Result<Vec<u64>> {
    if n == 0 || n2 == 0 {
        return domain("cyclotomic index 0");
    }
    if n == n2 {
        return domain(format!(
            "Π(Φ_{n}, Φ_{n}) is not covered by the closed rule; use pi_set"
        ));
    }
    let (n, n2) = if n > n2 { (n, n2) } else { (n2, n) };
    let Some(p) = ratio_prime(n, n2) else {
        return Ok(Vec::new());
    };
    let (_, m) = split_off(n, p);
    Ok(if m <= 2 || reaches_minus_one(p, m) {
        vec![p]
    } else {
        Vec::new()
    })
}

/// `(C̃_d, C_d)` for `d ∈ {10, 18}`.
///
/// `C̃_d` holds every `l` with `φ(l) < 22 - d`, together with those with
/// `φ(l) = 22 - d` for which `Φ_l` satisfies the square condition; `C_10`
/// drops 20 from `C̃_10` and `C_18 = C̃_18`.
pub fn c_sets(d: u32) -> Result<(Vec<u64>, Vec<u64>)> {
    if d != 10 && d != 18 {
        return domain(format!("C_d is defined for d ∈ {{10, 18}}, got {d}"));
    }
    let bound = 22 - u64::from(d);
    let mut tilde = Vec::new();
    for k in 1..=bound {
        for l in totient_fiber(k)? {
            if k < bound || check_square(&cyclotomic(l)?)?.holds() {
                tilde.push(l);
            }
        }
    }
    tilde.sort_unstable();
    let c = tilde
        .iter()
        .copied()
        .filter(|&l| d != 10 || l != 20)
        .collect();
    Ok((tilde, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::resultant;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), p("X - 1"));
        assert_eq!(cyclotomic(2).unwrap(), p("X + 1"));
        assert_eq!(cyclotomic(12).unwrap(), p("X^4 - X^2 + 1"));
        assert_eq!(cyclotomic(20).unwrap(), p("X^8 - X^6 + X^4 - X^2 + 1"));
        assert_eq!(cyclotomic(9).unwrap(), p("X^6 + X^3 + 1"));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=120u64 {
            let prod: IntPolynomial = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| cyclotomic(d).unwrap())
                .product();
            let mut c = vec![BigInt::from(0); n as usize + 1];
            c[0] = BigInt::from(-1);
            c[n as usize] = BigInt::from(1);
            assert_eq!(prod, IntPolynomial::new(c), "n = {n}");
        }
    }

    #[test]
    fn famous_large_heights() {
        // Φ_105 is the first with a coefficient -2
        let f = cyclotomic(105).unwrap();
        assert_eq!(f.coeff(7), BigInt::from(-2));
        assert_eq!(f.deg(), 48);
        let g = cyclotomic(255255).unwrap();
        assert_eq!(g.deg() as u64, totient(255255));
        assert_eq!(g.coeff(0), BigInt::from(1));
    }

    #[test]
    fn fibers() {
        assert_eq!(totient_fiber(12).unwrap(), vec![13, 21, 26, 28, 36, 42]);
        assert_eq!(totient_fiber(10).unwrap(), vec![11, 22]);
        assert_eq!(totient_fiber(1).unwrap(), vec![1, 2]);
        assert!(totient_fiber(14).unwrap().is_empty());
        for k in 1..=150u64 {
            let scan: Vec<u64> = (1..=2 * k * k).filter(|&n| totient(n) == k).collect();
            assert_eq!(totient_fiber(k).unwrap(), scan, "k = {k}");
        }
    }

    #[test]
    fn shapes() {
        let s = cyclo_shape(12, 3).unwrap();
        assert_eq!(
            (
                s.m,
                s.e,
                s.factor_degree,
                s.factor_count,
                s.power,
                s.symmetric
            ),
            (4, 1, 2, 1, 2, true)
        );
        let s = cyclo_shape(9, 3).unwrap();
        assert_eq!((s.m, s.e, s.power), (1, 2, 6));
        let s = cyclo_shape(5, 11).unwrap();
        assert_eq!(
            (s.m, s.factor_degree, s.factor_count, s.symmetric),
            (5, 1, 4, false)
        );
    }

    #[test]
    fn symbol_sets() {
        assert_eq!(
            cyclo_symbol_set(9, 3).unwrap().members,
            vec![ModPolynomial::from_i64(3, &[-1, 1])]
        );
        assert_eq!(
            cyclo_symbol_set(12, 3).unwrap().members,
            vec![ModPolynomial::from_i64(3, &[1, 0, 1])]
        );
        assert!(cyclo_symbol_set(5, 11).unwrap().is_empty());
    }

    #[test]
    fn resultants_match_closed_form() {
        assert_eq!(apostol_resultant(9, 1).unwrap(), BigInt::from(3));
        assert_eq!(apostol_resultant(12, 1).unwrap(), BigInt::from(1));
        assert_eq!(apostol_resultant(2, 1).unwrap(), BigInt::from(-2));
        assert_eq!(apostol_resultant(6, 3).unwrap(), BigInt::from(4));
        assert!(apostol_resultant(3, 3).is_err());
        for n in 2..=30u64 {
            for n2 in 1..n {
                let r = resultant(&cyclotomic(n).unwrap(), &cyclotomic(n2).unwrap()).unwrap();
                assert_eq!(apostol_resultant(n, n2).unwrap(), r, "({n}, {n2})");
            }
        }
    }

    #[test]
    fn pi_cyclo_examples() {
        assert_eq!(pi_cyclo(3, 6).unwrap(), vec![2]);
        assert!(pi_cyclo(12, 1).unwrap().is_empty());
        assert!(pi_cyclo(20, 12).unwrap().is_empty());
        assert!(pi_cyclo(4, 4).is_err());
    }

    #[test]
    fn c_sets_literal() {
        let (t18, c18) = c_sets(18).unwrap();
        assert_eq!(c18, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(t18, c18);
        let (t10, c10) = c_sets(10).unwrap();
        assert_eq!(
            c10,
            vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 16, 18, 21, 22, 24, 28, 30, 36, 42]
        );
        assert!(t10.contains(&20));
        assert!(!t10.contains(&13) && !t10.contains(&26));
        assert!(c_sets(12).is_err());
    }
}
