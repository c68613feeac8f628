//! Quadratic Hensel lifting of coprime factorisations from 𝔽_p to ℤ/p^k.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::intpoly::IntPolynomial;
use crate::modp::ModPolynomial;

/// Reduces every coefficient into `[0, m)`.
pub fn reduce(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Reduces every coefficient into `(-m/2, m/2]`.
pub fn reduce_symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half = m / 2;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mulm(a: &IntPolynomial, b: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    reduce(&(a * b), m)
}

fn divrem_monic(
    a: &IntPolynomial,
    b: &IntPolynomial,
    m: &BigInt,
) -> (IntPolynomial, IntPolynomial) {
    let (q, r) = a.div_rem_monic(b);
    (reduce(&q, m), reduce(&r, m))
}

/// One quadratic step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` to the same
/// relations modulo `m²`. `h` is monic; `g` carries the leading coefficient.
fn lift_step(
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
    s: &IntPolynomial,
    t: &IntPolynomial,
    m: &BigInt,
) -> [IntPolynomial; 4] {
    let m2 = m * m;
    let e = reduce(&(f - &mulm(g, h, &m2)), &m2);
    let (q, r) = divrem_monic(&mulm(s, &e, &m2), h, &m2);
    let g2 = reduce(&(g + &mulm(t, &e, &m2) + mulm(&q, g, &m2)), &m2);
    let h2 = reduce(&(h + &r), &m2);
    let b = reduce(
        &(&mulm(s, &g2, &m2) + &mulm(t, &h2, &m2) - IntPolynomial::one()),
        &m2,
    );
    let (c, d) = divrem_monic(&mulm(s, &b, &m2), &h2, &m2);
    let s2 = reduce(&(s - &d), &m2);
    let t2 = reduce(&(t - &mulm(t, &b, &m2) - mulm(&c, &g2, &m2)), &m2);
    [g2, h2, s2, t2]
}

/// Lifts the monic coprime factorisation `f ≡ ∏ factors (mod p)` of the monic
/// polynomial `f` to monic factors modulo `p^k`, coefficients in `[0, p^k)`.
pub fn lift_factors(f: &IntPolynomial, factors: &[ModPolynomial], k: u32) -> Vec<IntPolynomial> {
    assert!(f.is_monic());
    assert!(!factors.is_empty());
    let p = factors[0].p();
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    if factors.len() == 1 {
        return vec![reduce(f, &pk)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let gbar = left.iter().fold(ModPolynomial::one(p), |a, b| a.mul(b));
    let hbar = right.iter().fold(ModPolynomial::one(p), |a, b| a.mul(b));
    let (g, h) = lift_pair(f, &gbar, &hbar, k);
    let mut out = lift_factors(&g, left, k);
    out.extend(lift_factors(&h, right, k));
    out
}

/// Lifts `f ≡ gbar · hbar (mod p)` with both factors monic and coprime to
/// monic `g, h` modulo `p^k`.
pub fn lift_pair(
    f: &IntPolynomial,
    gbar: &ModPolynomial,
    hbar: &ModPolynomial,
    k: u32,
) -> (IntPolynomial, IntPolynomial) {
    let p = gbar.p();
    let bp = BigInt::from(p);
    let pk = num_traits::pow(bp.clone(), k as usize);
    let (one, s, t) = ModPolynomial::xgcd(gbar, hbar);
    assert!(one.is_one(), "Hensel lifting needs coprime factors");
    let (mut g, mut h) = (gbar.to_int(), hbar.to_int());
    let (mut s, mut t) = (s.to_int(), t.to_int());
    let mut m = bp;
    while m < pk {
        let [g2, h2, s2, t2] = lift_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    let g = reduce(&g, &pk);
    let h = reduce(&h, &pk);
    // g keeps the leading coefficient of f, which is 1 modulo p^k
    debug_assert!(g.leading().is_none_or(|c| c.mod_floor(&pk).is_one()));
    (g, h)
}
