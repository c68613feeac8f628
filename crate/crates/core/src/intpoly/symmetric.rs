//! The involution `F ↦ F*`, trace polynomials and the split of a
//! `*`-symmetric polynomial into its type 0, 1 and 2 parts.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::factor_over_q;
use super::poly::sign;
use super::sturm::{sturm_count, Bound};
use super::{IntPolynomial, RatPolynomial};
use crate::error::{domain, internal, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    PlusSymmetric,
    MinusSymmetric,
    NonSymmetric,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::PlusSymmetric => "plus_symmetric",
            Symmetry::MinusSymmetric => "minus_symmetric",
            Symmetry::NonSymmetric => "non_symmetric",
        })
    }
}

fn check_monic_unit_free(f: &IntPolynomial) -> Result<()> {
    if !f.is_monic() {
        return domain(format!("{f} is not monic"));
    }
    if f.coeff(0).is_zero() {
        return domain(format!("{f} vanishes at 0"));
    }
    Ok(())
}

/// `F(0)^-1 X^deg F(1/X)` over ℚ.
pub fn star(f: &IntPolynomial) -> Result<RatPolynomial> {
    check_monic_unit_free(f)?;
    let c0 = BigRational::from_integer(f.coeff(0));
    Ok(RatPolynomial::new(
        f.reversed()
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) / &c0)
            .collect(),
    ))
}

/// `F*` when it has integer coefficients, which is the case iff `F(0) = ±1`.
pub fn star_integral(f: &IntPolynomial) -> Result<IntPolynomial> {
    check_monic_unit_free(f)?;
    let c0 = f.coeff(0);
    if c0.abs() != BigInt::one() {
        return domain(format!("{f}: F* is not integral since F(0) = {c0}"));
    }
    Ok(f.reversed().scale(&c0))
}

pub fn classify_symmetry(f: &IntPolynomial) -> Result<Symmetry> {
    check_monic_unit_free(f)?;
    let c0 = f.coeff(0);
    if c0.abs() != BigInt::one() || star_integral(f)? != *f {
        return Ok(Symmetry::NonSymmetric);
    }
    Ok(if c0.is_positive() {
        Symmetry::PlusSymmetric
    } else {
        Symmetry::MinusSymmetric
    })
}

/// `X^n h(X + 1/X)` for `h` of degree `n`.
pub fn symmetric_lift(h: &IntPolynomial) -> IntPolynomial {
    let n = h.deg();
    let base = IntPolynomial::from_i64(&[1, 0, 1]);
    let mut acc = IntPolynomial::zero();
    let mut pw = IntPolynomial::one();
    for k in 0..=n {
        if !h.coeff(k).is_zero() {
            let term = (&pw * &IntPolynomial::monomial(h.coeff(k), n - k)).clone();
            acc = &acc + &term;
        }
        pw = &pw * &base;
    }
    acc
}

/// The trace polynomial `h` of a +1-symmetric `f` of degree `2n`, defined by
/// `f(X) = X^n h(X + 1/X)`.
pub fn trace_polynomial(f: &IntPolynomial) -> Result<IntPolynomial> {
    if classify_symmetry(f)? != Symmetry::PlusSymmetric {
        return domain(format!("{f} is not +1-symmetric"));
    }
    if f.deg() % 2 == 1 {
        return domain(format!("{f} has odd degree"));
    }
    let n = f.deg() / 2;
    let base = IntPolynomial::from_i64(&[1, 0, 1]);
    // (X^2+1)^k for k = 0..=n
    let mut powers = vec![IntPolynomial::one()];
    for k in 1..=n {
        powers.push(&powers[k - 1] * &base);
    }
    let mut rest = f.clone();
    let mut h = vec![BigInt::zero(); n + 1];
    for k in (0..=n).rev() {
        let c = rest.coeff(n + k);
        if !c.is_zero() {
            let term = &powers[k] * &IntPolynomial::monomial(c.clone(), n - k);
            rest = &rest - &term;
        }
        h[k] = c;
    }
    let h = IntPolynomial::new(h);
    if !rest.is_zero() || symmetric_lift(&h) != *f {
        return internal(format!("trace polynomial of {f} failed re-expansion"));
    }
    Ok(h)
}

/// A `*`-symmetric polynomial split into powers of `X ∓ 1`, +1-symmetric
/// irreducibles (type 1) and pairs `g·g*` with `g ≠ g*` (type 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDecomposition {
    pub input: IntPolynomial,
    pub m_plus: u32,
    pub m_minus: u32,
    pub type1: Vec<(IntPolynomial, u32)>,
    pub type2: Vec<(IntPolynomial, IntPolynomial, u32)>,
    pub symmetry_sign: i32,
}

impl SymmetricDecomposition {
    pub fn f0(&self) -> IntPolynomial {
        &IntPolynomial::linear(1).pow(self.m_plus) * &IntPolynomial::linear(-1).pow(self.m_minus)
    }

    pub fn f1(&self) -> IntPolynomial {
        self.type1.iter().map(|(f, m)| f.pow(*m)).product()
    }

    pub fn f2(&self) -> IntPolynomial {
        self.type2
            .iter()
            .map(|(g, gs, m)| (g * gs).pow(*m))
            .product()
    }

    /// `F / ((X-1)^m₊ (X+1)^m₋)`.
    pub fn f12(&self) -> IntPolynomial {
        &self.f1() * &self.f2()
    }

    /// The symmetric rational irreducible factors: `X - 1`, `X + 1` when
    /// present, then the type 1 factors in canonical order.
    pub fn symmetric_factors(&self) -> Vec<IntPolynomial> {
        let mut out = Vec::new();
        if self.m_plus > 0 {
            out.push(IntPolynomial::linear(1));
        }
        if self.m_minus > 0 {
            out.push(IntPolynomial::linear(-1));
        }
        out.extend(self.type1.iter().map(|(f, _)| f.clone()));
        out
    }

    /// Multiplicity of a symmetric factor, 0 if absent.
    pub fn multiplicity(&self, f: &IntPolynomial) -> u32 {
        if *f == IntPolynomial::linear(1) {
            self.m_plus
        } else if *f == IntPolynomial::linear(-1) {
            self.m_minus
        } else {
            self.type1
                .iter()
                .find(|(g, _)| g == f)
                .map_or(0, |(_, m)| *m)
        }
    }

    pub fn reconstruct(&self) -> IntPolynomial {
        &self.f0() * &self.f12()
    }
}

/// Splits a monic `*`-symmetric polynomial into its type 0, 1 and 2 parts.
pub fn decompose(f: &IntPolynomial) -> Result<SymmetricDecomposition> {
    let symmetry = classify_symmetry(f)?;
    if symmetry == Symmetry::NonSymmetric {
        return domain(format!("{f} is not *-symmetric"));
    }
    let factors = factor_over_q(f)?;
    let (xm1, xp1) = (IntPolynomial::linear(1), IntPolynomial::linear(-1));
    let mut dec = SymmetricDecomposition {
        input: f.clone(),
        m_plus: 0,
        m_minus: 0,
        type1: Vec::new(),
        type2: Vec::new(),
        symmetry_sign: if symmetry == Symmetry::PlusSymmetric {
            1
        } else {
            -1
        },
    };
    for (g, m) in &factors {
        if *g == xm1 {
            dec.m_plus = *m;
            continue;
        }
        if *g == xp1 {
            dec.m_minus = *m;
            continue;
        }
        let gs = star_integral(g)?;
        if gs == *g {
            if g.coeff(0) != BigInt::one() || g.deg() % 2 == 1 {
                return internal(format!(
                    "symmetric irreducible {g} is not +1-symmetric of even degree"
                ));
            }
            dec.type1.push((g.clone(), *m));
        } else {
            match factors.iter().find(|(h, _)| *h == gs) {
                Some((_, ms)) if ms == m => {
                    if *g < gs {
                        dec.type2.push((g.clone(), gs, *m));
                    }
                }
                _ => {
                    return internal(format!(
                        "{g} and its image {gs} have different multiplicities"
                    ))
                }
            }
        }
    }
    if dec.symmetry_sign < 0 && dec.m_plus.is_multiple_of(2) {
        return internal(format!("-1-symmetric {f} with even multiplicity of X - 1"));
    }
    if dec.reconstruct() != *f {
        return internal(format!("decomposition of {f} does not reconstruct it"));
    }
    Ok(dec)
}

/// Root data on the unit circle: per type 1 factor, the number of conjugate
/// root pairs on the circle, the total count `N` of such roots with
/// multiplicity, the number `m(F)` of roots outside the closed unit disc, and
/// the sign `e(F₁₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleProfile {
    pub pairs: Vec<(IntPolynomial, usize)>,
    pub n_circle: usize,
    pub m_f: usize,
    pub e_f12: i32,
}

impl CircleProfile {
    pub fn pairs_of(&self, f: &IntPolynomial) -> usize {
        self.pairs
            .iter()
            .find(|(g, _)| g == f)
            .map_or(0, |(_, c)| *c)
    }
}

/// Sign of `(-1)^{deg P/2} P(1) P(-1)` for a +1-symmetric `P` of even degree.
pub fn e_sign(p: &IntPolynomial) -> Result<i32> {
    let v = p.eval_i64(1) * p.eval_i64(-1);
    let s = sign(&v) * if (p.deg() / 2) % 2 == 1 { -1 } else { 1 };
    if s == 0 {
        return internal(format!("{p} vanishes at ±1"));
    }
    Ok(s)
}

pub fn circle_profile(d: &SymmetricDecomposition) -> Result<CircleProfile> {
    let mut pairs = Vec::with_capacity(d.type1.len());
    let mut n_circle = 0usize;
    for (f, m) in &d.type1 {
        let h = trace_polynomial(f)?;
        let c = sturm_count(&h, &Bound::int(-2), &Bound::int(2))?;
        n_circle += 2 * (*m as usize) * c;
        pairs.push((f.clone(), c));
    }
    let deg = d.input.deg();
    let off = deg - d.m_plus as usize - d.m_minus as usize - n_circle;
    if off % 2 == 1 {
        return internal("odd number of roots off the unit circle");
    }
    let e_f12 = e_sign(&d.f12())?;
    if (n_circle as i64 - (1 - e_f12 as i64)).rem_euclid(4) != 0 {
        return internal("root count on the circle contradicts e(F12)");
    }
    Ok(CircleProfile {
        pairs,
        n_circle,
        m_f: off / 2,
        e_f12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    const LEHMER: &str = "X^10 + X^9 - X^7 - X^6 - X^5 - X^4 - X^3 + X + 1";

    #[test]
    fn star_examples() {
        let phi12 = p("X^4 - X^2 + 1");
        assert_eq!(star(&phi12).unwrap().to_integer(), Some(phi12.clone()));
        assert_eq!(star(&p("X - 1")).unwrap().to_integer(), Some(p("X - 1")));
        let s = star(&p("X - 2")).unwrap();
        assert!(s.is_monic());
        assert_eq!(s.to_integer(), None);
        assert_eq!(s.coeffs()[0], BigRational::new((-1).into(), 2.into()));
        assert!(star(&p("X^2 + X")).is_err());
        assert!(star(&p("2X + 1")).is_err());
    }

    #[test]
    fn star_is_an_involution() {
        for s in ["X^3 + 2X + 1", "X^5 - 7X^2 + X - 1", "X^2 - 11X + 1"] {
            let f = p(s);
            let once = star_integral(&f).unwrap();
            let once = once.scale(&once.leading().unwrap().clone());
            let twice = star_integral(&once).unwrap();
            assert_eq!(twice, f);
        }
    }

    #[test]
    fn classify() {
        assert_eq!(
            classify_symmetry(&p("X^2 - 3X + 1")).unwrap(),
            Symmetry::PlusSymmetric
        );
        assert_eq!(
            classify_symmetry(&p("X - 1")).unwrap(),
            Symmetry::MinusSymmetric
        );
        assert_eq!(
            classify_symmetry(&p("X^2 + X + 2")).unwrap(),
            Symmetry::NonSymmetric
        );
    }

    #[test]
    fn trace_polynomials() {
        assert_eq!(trace_polynomial(&p("X^4 - X^2 + 1")).unwrap(), p("X^2 - 3"));
        assert_eq!(trace_polynomial(&p("X^2 + 1")).unwrap(), p("X"));
        let h = trace_polynomial(&p(LEHMER)).unwrap();
        assert_eq!(h.deg(), 5);
        assert_eq!(symmetric_lift(&h), p(LEHMER));
        assert!(trace_polynomial(&p("X + 1")).is_err());
        assert!(trace_polynomial(&p("X^2 + X + 2")).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let phi12 = p("X^4 - X^2 + 1");
        let f = p("X - 1").pow(4) * phi12.clone();
        let d = decompose(&f).unwrap();
        assert_eq!((d.m_plus, d.m_minus), (4, 0));
        assert_eq!(d.type1, vec![(phi12.clone(), 1)]);
        assert!(d.type2.is_empty());
        assert_eq!(d.f12(), phi12);

        let d = decompose(&p("X^2 - 11X + 1")).unwrap();
        assert_eq!(d.type1.len(), 1);

        // g = X^2 + X - 1 is not symmetric; g* = -(X^2 - X - 1) rescaled to monic
        let g = p("X^2 + X - 1");
        let gs = star_integral(&g).unwrap();
        assert_eq!(gs, p("X^2 - X - 1"));
        let f = (&g * &gs).pow(2) * p("X + 1").pow(2);
        let d = decompose(&f).unwrap();
        assert_eq!(d.type2, vec![(gs.clone(), g.clone(), 2)]);
        assert_eq!(d.m_minus, 2);
        assert_eq!(d.reconstruct(), f);

        assert!(decompose(&p("X^2 + X + 2")).is_err());
    }

    #[test]
    fn circle_profiles() {
        let lehmer = p(LEHMER);
        let prof = circle_profile(&decompose(&lehmer).unwrap()).unwrap();
        assert_eq!((prof.m_f, prof.n_circle), (1, 8));
        let expect = -sign(&(lehmer.eval_i64(1) * lehmer.eval_i64(-1)));
        assert_eq!(prof.e_f12, expect);

        let phi12 = p("X^4 - X^2 + 1");
        let prof = circle_profile(&decompose(&phi12).unwrap()).unwrap();
        assert_eq!((prof.n_circle, prof.m_f, prof.e_f12), (4, 0, 1));

        let f = p("X - 1").pow(4) * phi12;
        let d = decompose(&f).unwrap();
        let prof = circle_profile(&d).unwrap();
        assert_eq!((d.m_plus, prof.n_circle, prof.m_f), (4, 4, 0));
    }

    #[test]
    fn e_sign_matches_trace_polynomial() {
        for s in [
            LEHMER,
            "X^4 - X^2 + 1",
            "X^2 - 11X + 1",
            "X^4 + X^3 - 5X^2 + X + 1",
        ] {
            let f = p(s);
            let h = trace_polynomial(&f).unwrap();
            let v = sign(&(h.eval_i64(2) * h.eval_i64(-2)));
            assert_eq!(e_sign(&f).unwrap(), v, "{s}");
        }
    }
}
