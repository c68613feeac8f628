//! Integer helpers: primality, factorisation, valuations and perfect squares.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn big_pow_mod(b: &BigUint, e: &BigUint, m: &BigUint) -> BigUint {
    b.modpow(e, m)
}

/// Miller-Rabin on arbitrary integers: deterministic below 3.3·10^24, and
/// with 12 fixed bases a strong probable-prime test above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = big_pow_mod(&BigUint::from(a), &d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn rho_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
    let mut steps = 0u64;
    while d == 1 {
        // Brent-style batching of gcds
        let mut q = 1u64;
        for _ in 0..64 {
            x = f(x);
            y = f(f(y));
            q = mul_mod(q, x.abs_diff(y), n);
        }
        d = gcd_u64(q, n);
        steps += 64;
        if d == n {
            // fall back to single stepping from scratch
            let (mut x1, mut y1) = (2u64, 2u64);
            loop {
                x1 = f(x1);
                y1 = f(f(y1));
                let g = gcd_u64(x1.abs_diff(y1), n);
                if g != 1 {
                    return (g != n).then_some(g);
                }
            }
        }
        if steps > 1 << 26 {
            return None;
        }
    }
    Some(d)
}

fn rho_big(n: &BigUint, c: u64) -> Option<BigUint> {
    let cc = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &cc) % n;
    let mut x = BigUint::from(2u32);
    let mut y = x.clone();
    let mut steps = 0u64;
    loop {
        let mut q = BigUint::one();
        for _ in 0..64 {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            q = (q * diff) % n;
        }
        let d = q.gcd(n);
        steps += 64;
        if d == *n {
            return None;
        }
        if !d.is_one() {
            return Some(d);
        }
        if steps > 1 << 24 {
            return None;
        }
    }
}

fn split(n: &BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(n) {
        out.push(n.clone());
        return;
    }
    if let Some(r) = n.sqrt().pow(2).eq(n).then(|| n.sqrt()) {
        split(&r, out);
        split(&r, out);
        return;
    }
    for c in 1..200u64 {
        let d = match n.to_u64() {
            Some(v) => rho_u64(v, c).map(BigUint::from),
            None => rho_big(n, c),
        };
        if let Some(d) = d {
            split(&d, out);
            split(&(n / &d), out);
            return;
        }
    }
    // Not expected for the sizes met here; keep the cofactor whole.
    out.push(n.clone());
}

/// Prime factorisation of |n| as sorted (prime, exponent) pairs; n must be nonzero.
pub fn factor_integer(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut m = n.abs().to_biguint().unwrap_or_default();
    assert!(!m.is_zero(), "cannot factor zero");
    let mut primes = Vec::new();
    let mut p = 2u32;
    while p < 10_000 {
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            primes.push(bp.clone());
        }
        if &bp * &bp > m {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        split(&m, &mut primes);
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((r, e)) if *r == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// True for nonnegative perfect squares, zero included.
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Legendre symbol (a/p) for odd prime p, with a not divisible by p.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    match pow_mod(r, (p - 1) / 2, p) {
        1 => 1,
        0 => 0,
        _ => -1,
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (g, x, _) = egcd(a as i128, p as i128);
    debug_assert_eq!(g, 1, "not invertible");
    x.rem_euclid(p as i128) as u64
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Multiplicative order of a modulo m (gcd(a, m) = 1, m ≥ 2).
pub fn mult_order(a: u64, m: u64) -> u64 {
    let a = a % m;
    let mut x = a;
    let mut k = 1;
    while x != 1 % m {
        x = mul_mod(x, a, m);
        k += 1;
    }
    k
}

/// If `n = p^e` for a prime p and e ≥ 1, returns (p, e).
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > n {
        return Some((n, 1));
    }
    let mut m = n;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}
