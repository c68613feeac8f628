use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::is_square;
use crate::error::{domain, Result};
use crate::intpoly::{
    circle_profile, classify_symmetry, decompose, CircleProfile, IntPolynomial,
    SymmetricDecomposition, Symmetry,
};

/// Outcome of the square condition, naming the first quantity that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareCheck {
    Holds,
    /// `|F(1)|` is not a square.
    AtOne(BigInt),
    /// `|F(-1)|` is not a square.
    AtMinusOne(BigInt),
    /// `(-1)^{deg/2} F(1) F(-1)` is not a square.
    Product(BigInt),
}

impl SquareCheck {
    pub fn holds(&self) -> bool {
        matches!(self, SquareCheck::Holds)
    }
}

impl fmt::Display for SquareCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareCheck::Holds => f.write_str("holds"),
            SquareCheck::AtOne(v) => write!(f, "fails: |F(1)| = {v} is not a square"),
            SquareCheck::AtMinusOne(v) => write!(f, "fails: |F(-1)| = {v} is not a square"),
            SquareCheck::Product(v) => {
                write!(f, "fails: (-1)^(deg/2) F(1) F(-1) = {v} is not a square")
            }
        }
    }
}

/// Whether `|F(1)|`, `|F(-1)|` and `(-1)^{deg F/2} F(1) F(-1)` are all
/// squares, zero counting as a square.
pub fn check_square(f: &IntPolynomial) -> Result<SquareCheck> {
    if f.deg() % 2 == 1 {
        return domain(format!("{f} has odd degree"));
    }
    if classify_symmetry(f)? == Symmetry::NonSymmetric {
        return domain(format!("{f} is not *-symmetric"));
    }
    let (a, b) = (f.eval_i64(1), f.eval_i64(-1));
    if !is_square(&a.abs()) {
        return Ok(SquareCheck::AtOne(a.abs()));
    }
    if !is_square(&b.abs()) {
        return Ok(SquareCheck::AtMinusOne(b.abs()));
    }
    let mut prod = a * b;
    if (f.deg() / 2) % 2 == 1 {
        prod = -prod;
    }
    if prod.is_negative() || !is_square(&prod) {
        return Ok(SquareCheck::Product(prod));
    }
    Ok(SquareCheck::Holds)
}

/// Decomposition and circle data of a `*`-symmetric polynomial.
#[derive(Clone, Debug)]
pub(crate) struct Setup {
    pub dec: SymmetricDecomposition,
    pub profile: CircleProfile,
}

impl Setup {
    pub fn new(f: &IntPolynomial) -> Result<Self> {
        let dec = decompose(f)?;
        let profile = circle_profile(&dec)?;
        Ok(Setup { dec, profile })
    }

    pub fn degree(&self) -> usize {
        self.dec.input.deg()
    }

    pub fn m_plus(&self) -> i64 {
        i64::from(self.dec.m_plus)
    }

    pub fn m_minus(&self) -> i64 {
        i64::from(self.dec.m_minus)
    }

    /// `m(F)`: roots outside the closed unit disc, with multiplicity.
    pub fn m_outside(&self) -> i64 {
        self.profile.m_f as i64
    }

    pub fn e_f12(&self) -> i32 {
        self.profile.e_f12
    }

    /// The type 1 factors with multiplicity and number of circle pairs.
    pub fn type1(&self) -> Vec<(IntPolynomial, i64, usize)> {
        self.dec
            .type1
            .iter()
            .map(|(f, m)| (f.clone(), i64::from(*m), self.profile.pairs_of(f)))
            .collect()
    }

    pub fn f12_at(&self, x: i64) -> BigInt {
        self.dec.f12().eval_i64(x)
    }

    pub fn is_zero_at_pm1(&self) -> bool {
        self.dec.m_plus > 0 || self.dec.m_minus > 0
    }
}

/// The sign condition: `r, s ≥ m(F)`, and `r ≡ s ≡ m(F) mod 2` when
/// `F(1) F(-1) ≠ 0`.
pub fn check_sign(f: &IntPolynomial, r: u64, s: u64) -> Result<bool> {
    if (r + s) as usize != f.deg() {
        return domain(format!(
            "r + s = {} differs from deg F = {}",
            r + s,
            f.deg()
        ));
    }
    let setup = Setup::new(f)?;
    Ok(sign_holds(&setup, r, s))
}

pub(crate) fn sign_holds(setup: &Setup, r: u64, s: u64) -> bool {
    let m = setup.m_outside();
    let (r, s) = (r as i64, s as i64);
    if r < m || s < m {
        return false;
    }
    setup.is_zero_at_pm1() || ((r - m) % 2 == 0 && (s - m) % 2 == 0)
}

/// `e(P)` for a product that may be the constant 1.
pub(crate) fn e_of(p: &IntPolynomial) -> i32 {
    let v = p.eval_i64(1) * p.eval_i64(-1);
    let neg = (p.deg() / 2) % 2 == 1;
    match (v.is_negative(), neg) {
        (false, false) | (true, true) => 1,
        _ => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    const LEHMER: &str = "X^10 + X^9 - X^7 - X^6 - X^5 - X^4 - X^3 + X + 1";

    #[test]
    fn square_examples() {
        let phi13 = p("X^12 + X^11 + X^10 + X^9 + X^8 + X^7 + X^6 + X^5 + X^4 + X^3 + X^2 + X + 1");
        assert_eq!(check_square(&phi13).unwrap(), SquareCheck::AtOne(13.into()));
        assert!(check_square(&p("X^8 - X^6 + X^4 - X^2 + 1"))
            .unwrap()
            .holds());
        // g g* with g = X^2 + X - 1
        assert!(check_square(&(p("X^2 + X - 1") * p("X^2 - X - 1")))
            .unwrap()
            .holds());
        assert!(check_square(&p("X^2 - 2X + 1")).unwrap().holds());
        assert!(check_square(&p("X^3 - 1")).is_err());
    }

    #[test]
    fn sign_examples() {
        let s = p(LEHMER);
        assert!(check_sign(&s, 3, 19).is_err());
        assert!(check_sign(&s, 1, 9).unwrap());
        assert!(!check_sign(&s, 2, 8).unwrap());
        let phi12 = p("X^4 - X^2 + 1");
        assert!(check_sign(&phi12, 0, 4).unwrap());
        assert!(!check_sign(&phi12, 1, 3).unwrap());
    }
}
