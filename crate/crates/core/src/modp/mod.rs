//! Polynomials over prime fields and their complete factorisation.

mod factor;

pub use factor::{
    distinct_degree_factor, factor_mod_p, factor_mod_p_seeded, is_irreducible,
    squarefree_decomposition, DEFAULT_SEED,
};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{inv_mod, is_prime_u64, mul_mod};
use crate::error::{domain, Error, Result};
use crate::intpoly::poly::write_terms;
use crate::intpoly::IntPolynomial;

/// Polynomial over 𝔽_p with residues in `[0, p)` and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModPolynomial {
    p: u64,
    coeffs: Vec<u64>,
}

/// Reduces an integer polynomial modulo the prime `p`.
pub fn reduce_mod_p(f: &IntPolynomial, p: u64) -> Result<ModPolynomial> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(ModPolynomial::from_int(f, p))
}

/// True iff `fbar(0)^-1 X^deg fbar(1/X) = fbar`.
pub fn is_star_symmetric_mod_p(fbar: &ModPolynomial) -> Result<bool> {
    Ok(fbar.star()? == *fbar)
}

impl ModPolynomial {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPolynomial { p, coeffs }
    }

    /// Coefficientwise reduction; `p` is assumed prime.
    pub fn from_int(f: &IntPolynomial, p: u64) -> Self {
        let bp = BigInt::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&bp).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        ModPolynomial { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Lift to ℤ[X] with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Lift to ℤ[X] with coefficients in `(-p/2, p/2]`.
    pub fn to_int_symmetric(&self) -> IntPolynomial {
        let half = self.p / 2;
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    if c > half {
                        BigInt::from(c) - BigInt::from(self.p)
                    } else {
                        BigInt::from(c)
                    }
                })
                .collect(),
        )
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing polynomials over different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let s = self.coeff(i) as u128 + other.coeff(i) as u128;
                    (s % p as u128) as u64
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        Self::new(
            p,
            (0..n)
                .map(|i| {
                    let (a, b) = (self.coeff(i), other.coeff(i));
                    if a >= b {
                        a - b
                    } else {
                        p - (b - a)
                    }
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs.iter().map(|&a| mul_mod(a, c % p, p)).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.p).sub(self)
    }

    /// Scales to a monic polynomial (the zero polynomial is returned unchanged).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.same_field(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.deg() < d.deg() || self.is_zero() {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let dd = d.deg();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let t = mul_mod(c, dj, p);
                r[i + j] = if r[i + j] >= t {
                    r[i + j] - t
                } else {
                    p - (t - r[i + j])
                };
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Returns (g, s, t) with s·a + t·b = g, g monic.
    pub fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = ((mul_mod(acc, x, self.p) as u128 + c as u128) % self.p as u128) as u64;
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.p);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `fbar(0)^-1 X^deg fbar(1/X)`.
    pub fn star(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0 == 0 {
            return Err(Error::Domain(
                "star involution needs a nonzero constant term".into(),
            ));
        }
        let mut v = self.coeffs.clone();
        v.reverse();
        Ok(Self::new(self.p, v).scale(inv_mod(c0, self.p)))
    }

    /// Canonical ordering key: degree, then coefficients from the top.
    pub fn sort_key(&self) -> (usize, Vec<u64>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().rev().copied().collect(),
        )
    }
}

impl Ord for ModPolynomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.p
            .cmp(&other.p)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl PartialOrd for ModPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_poly(f)?;
        write!(f, " mod {}", self.p)
    }
}

impl ModPolynomial {
    fn fmt_poly(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            &self.coeffs,
            |c| *c == 0,
            |c| (false, c.to_string(), *c == 1),
        )
    }

    /// Display form without the `mod p` suffix.
    pub fn poly_string(&self) -> String {
        struct Bare<'a>(&'a ModPolynomial);
        impl fmt::Display for Bare<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_poly(f)
            }
        }
        Bare(self).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = reduce_mod_p(&ip("X^2 - 11X + 1"), 3).unwrap();
        assert_eq!(f, ModPolynomial::from_i64(3, &[1, -2, 1]));
        assert_eq!(
            reduce_mod_p(&ip("X - 1"), 2).unwrap(),
            ModPolynomial::from_i64(2, &[1, 1])
        );
        assert!(reduce_mod_p(&ip("X"), 4).is_err());
        assert_eq!(f.to_string(), "X^2 + X + 1 mod 3");
    }

    #[test]
    fn star_symmetry() {
        assert!(is_star_symmetric_mod_p(&ModPolynomial::from_i64(2, &[1, 1])).unwrap());
        assert!(is_star_symmetric_mod_p(&ModPolynomial::from_i64(3, &[1, 0, 1])).unwrap());
        assert!(!is_star_symmetric_mod_p(&ModPolynomial::from_i64(5, &[2, 1, 1])).unwrap());
        assert!(ModPolynomial::from_i64(5, &[0, 1]).star().is_err());
        // X - 1 and X + 1 coincide over F_2
        assert_eq!(
            ModPolynomial::from_i64(2, &[-1, 1]),
            ModPolynomial::from_i64(2, &[1, 1])
        );
    }

    #[test]
    fn xgcd_identity() {
        let a = ModPolynomial::from_i64(7, &[1, 2, 3, 4]);
        let b = ModPolynomial::from_i64(7, &[3, 0, 1]);
        let (g, s, t) = ModPolynomial::xgcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, ModPolynomial::gcd(&a, &b));
    }
}
