use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ModPolynomial;

/// Seed used for equal-degree splitting unless the caller picks another.
pub const DEFAULT_SEED: u64 = 0x5eed_1234;

/// Complete factorisation of a monic polynomial over 𝔽_p into monic
/// irreducibles with multiplicities, sorted canonically.
pub fn factor_mod_p(f: &ModPolynomial) -> Vec<(ModPolynomial, u32)> {
    factor_mod_p_seeded(f, DEFAULT_SEED)
}

/// As [`factor_mod_p`] with an explicit seed for the randomised splitting step.
/// The result does not depend on the seed.
pub fn factor_mod_p_seeded(f: &ModPolynomial, seed: u64) -> Vec<(ModPolynomial, u32)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let f = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(ModPolynomial, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&f) {
        for (block, d) in distinct_degree_factor(&part) {
            for g in equal_degree_factor(&block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort();
    let mut merged: Vec<(ModPolynomial, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, e)) if *h == g => *e += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime monic
/// squarefree parts `g_i` with `f = ∏ g_i^{e_i}`.
pub fn squarefree_decomposition(f: &ModPolynomial) -> Vec<(ModPolynomial, u32)> {
    let p = f.p();
    let mut result = Vec::new();
    if f.deg() == 0 {
        return result;
    }
    let mut c = ModPolynomial::gcd(f, &f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = ModPolynomial::gcd(&w, &c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            result.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.deg() > 0 {
        // c is a p-th power
        let root = ModPolynomial::new(p, c.coeffs().iter().step_by(p as usize).copied().collect());
        for (g, e) in squarefree_decomposition(&root.monic()) {
            result.push((g, e * p as u32));
        }
    }
    result
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal
/// degree, returned as (product, degree) pairs.
pub fn distinct_degree_factor(f: &ModPolynomial) -> Vec<(ModPolynomial, usize)> {
    let p = f.p();
    let x = ModPolynomial::x(p);
    let pe = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.rem(&rest);
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(&pe, &rest);
        let g = ModPolynomial::gcd(&h.sub(&x), &rest);
        if g.deg() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

fn random_poly(p: u64, below: usize, rng: &mut ChaCha8Rng) -> ModPolynomial {
    ModPolynomial::new(p, (0..below).map(|_| rng.gen_range(0..p)).collect())
}

fn equal_degree_factor(f: &ModPolynomial, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPolynomial> {
    if f.deg() == d {
        return vec![f.monic()];
    }
    let p = f.p();
    let n = f.deg();
    loop {
        let a = random_poly(p, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            a.pow_mod(&e, f).sub(&ModPolynomial::one(p))
        };
        let g = ModPolynomial::gcd(&b, f);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree_factor(&g, d, rng);
            out.extend(equal_degree_factor(&h.monic(), d, rng));
            return out;
        }
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &ModPolynomial) -> bool {
    let n = f.deg();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let p = f.p();
    let f = f.monic();
    let x = ModPolynomial::x(p);
    let frob = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.pow_mod(&BigUint::from(p), &f);
        }
        h
    };
    if !frob(n).sub(&x).rem(&f).is_zero() {
        return false;
    }
    let mut m = n;
    let mut q = 2;
    let mut prime_divisors = Vec::new();
    while q * q <= m {
        if m.is_multiple_of(q) {
            prime_divisors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        prime_divisors.push(m);
    }
    prime_divisors
        .into_iter()
        .all(|q| ModPolynomial::gcd(&frob(n / q).sub(&x), &f).is_one())
}
