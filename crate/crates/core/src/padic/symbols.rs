use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::square::{square_class, Place};
use super::{factor_over_qp, LocalSymbolSet};
use crate::arith::{factor_integer, is_prime_u64, valuation};
use crate::error::{domain, Error, Result};
use crate::intpoly::{classify_symmetry, factor_over_q, resultant, IntPolynomial, Symmetry};
use crate::modp::ModPolynomial;
use crate::par;

/// The distinct rational irreducible factors of `f` that can carry a
/// `*`-symmetric local factor: `X ∓ 1` and the +1-symmetric ones.
///
/// A `*`-symmetric factor `h` over `ℚ_p` of a rational irreducible `g` with
/// `g ≠ g*` would divide both `g` and `g*`, which are coprime; so type 2
/// factors never contribute.
pub(crate) fn symmetric_rational_factors(f: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let mut out = Vec::new();
    for (q, _) in factor_over_q(f)? {
        if q.coeff(0).is_zero() {
            continue;
        }
        let keep = if q.deg() == 1 {
            q == IntPolynomial::linear(1) || q == IntPolynomial::linear(-1)
        } else {
            classify_symmetry(&q)? == Symmetry::PlusSymmetric
        };
        if keep {
            out.push(q);
        }
    }
    Ok(out)
}

/// Reduction set of one symmetric rational irreducible factor.
pub(crate) fn factor_symbols(q: &IntPolynomial, p: u64) -> Result<Vec<ModPolynomial>> {
    if q.deg() == 1 {
        return Ok(vec![ModPolynomial::from_int(q, p)]);
    }
    Ok(factor_over_qp(q, p)?
        .into_iter()
        .filter(|g| g.star_symmetric)
        .map(|g| g.residue_polynomial())
        .collect())
}

/// The irreducible reductions modulo p of all `*`-symmetric irreducible
/// factors of `f` over `ℚ_p`.
pub fn symbol_set(f: &IntPolynomial, p: u64) -> Result<LocalSymbolSet> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    if f.is_zero() || !f.is_monic() {
        return domain(format!("{f} is not monic"));
    }
    let mut members = Vec::new();
    for q in symmetric_rational_factors(f)? {
        members.extend(factor_symbols(&q, p)?);
    }
    Ok(LocalSymbolSet::from_members(p, members))
}

/// One prime of Π(f, g) with the common reductions witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiPrime {
    pub p: u64,
    pub common: Vec<ModPolynomial>,
}

/// The primes where the reduction sets of `f` and `g` meet.
///
/// `shared` lists symmetric rational factors common to `f` and `g`; at every
/// prime where such a factor has a symmetric local factor the two sets meet,
/// and those primes are not enumerated. `undecided` lists candidate primes
/// the engine could not settle, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiSet {
    pub primes: Vec<PiPrime>,
    pub shared: Vec<IntPolynomial>,
    pub undecided: Vec<(BigUint, String)>,
}

impl PiSet {
    pub fn prime_list(&self) -> Vec<u64> {
        self.primes.iter().map(|q| q.p).collect()
    }

    /// Empty with certainty: no primes, no shared factor, nothing undecided.
    pub fn is_empty(&self) -> bool {
        self.primes.is_empty() && self.shared.is_empty() && self.undecided.is_empty()
    }

    pub fn is_decided(&self) -> bool {
        self.undecided.is_empty()
    }
}

/// Candidate primes: divisors of the resultants of distinct symmetric factors.
fn candidate_primes(a: &[IntPolynomial], b: &[IntPolynomial]) -> Result<BTreeSet<BigUint>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            if x == y {
                continue;
            }
            let r = resultant(x, y)?;
            if r.is_zero() {
                continue;
            }
            for (q, _) in factor_integer(&r) {
                out.insert(q);
            }
        }
    }
    Ok(out)
}

/// Π(f, g) for monic `f` and `g`.
pub fn pi_set(f: &IntPolynomial, g: &IntPolynomial) -> Result<PiSet> {
    for h in [f, g] {
        if h.is_zero() || !h.is_monic() {
            return domain(format!("{h} is not monic"));
        }
    }
    let a = symmetric_rational_factors(f)?;
    let b = symmetric_rational_factors(g)?;
    let shared: Vec<IntPolynomial> = a.iter().filter(|x| b.contains(x)).cloned().collect();
    let candidates: Vec<BigUint> = candidate_primes(&a, &b)?.into_iter().collect();
    let results = par::map(&candidates, |q| -> Result<Option<PiPrime>> {
        let Some(p) = q.to_u64() else {
            return Err(Error::Undecided(format!(
                "prime {q} exceeds the machine word"
            )));
        };
        let mut sa = Vec::new();
        for x in &a {
            sa.extend(factor_symbols(x, p)?);
        }
        let mut sb = Vec::new();
        for y in &b {
            sb.extend(factor_symbols(y, p)?);
        }
        let sa = LocalSymbolSet::from_members(p, sa);
        let sb = LocalSymbolSet::from_members(p, sb);
        let common = sa.intersection(&sb);
        Ok((!common.is_empty()).then_some(PiPrime { p, common }))
    });
    let mut out = PiSet {
        shared,
        ..PiSet::default()
    };
    for (q, r) in candidates.into_iter().zip(results) {
        match r {
            Ok(Some(pp)) => out.primes.push(pp),
            Ok(None) => {}
            Err(Error::Undecided(msg)) => out.undecided.push((q, msg)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The memberships `X ∓ 1 ∈ I(f; ℚ_p)` forced by valuations and square
/// classes of `f(±1)`: `X - 1` when `v_p(f(1))` is odd, `X + 1` when
/// `v_p(f(-1))` is odd, and at `p = 2` also `X - 1` when
/// `(-1)^{deg/2} f(1) f(-1)` is neither `1` nor `-3` in `ℚ_2^× / ℚ_2^{×2}`.
pub fn nonsquare_memberships(f: &IntPolynomial, p: u64) -> Result<LocalSymbolSet> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    if classify_symmetry(f)? == Symmetry::NonSymmetric {
        return domain(format!("{f} is not *-symmetric"));
    }
    let (a, b) = (f.eval_i64(1), f.eval_i64(-1));
    if a.is_zero() || b.is_zero() {
        return domain(format!("{f} vanishes at 1 or -1"));
    }
    let mut members = Vec::new();
    let xm1 = ModPolynomial::from_i64(p, &[-1, 1]);
    let xp1 = ModPolynomial::from_i64(p, &[1, 1]);
    if valuation(&a, p) % 2 == 1 {
        members.push(xm1.clone());
    }
    if valuation(&b, p) % 2 == 1 {
        members.push(xp1);
    }
    if p == 2 {
        let sign = if (f.deg() / 2) % 2 == 1 { -1 } else { 1 };
        let d = BigRational::from_integer(&a * &b * BigInt::from(sign));
        let c = square_class(&d, Place::Prime(2))?;
        let one = square_class(&BigRational::from_integer(1.into()), Place::Prime(2))?;
        let m3 = square_class(&BigRational::from_integer((-3).into()), Place::Prime(2))?;
        if c != one && c != m3 {
            members.push(xm1);
        }
    }
    Ok(LocalSymbolSet::from_members(p, members))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn symbol_set_examples() {
        assert!(symbol_set(&p("X^2 - 11X + 1"), 3).unwrap().is_empty());
        for q in [2, 3, 5, 7] {
            let s = symbol_set(&p("X - 1"), q).unwrap();
            assert_eq!(s.members, vec![ModPolynomial::from_i64(q, &[-1, 1])]);
        }
        // type 2 factors contribute nothing
        let g = p("X^2 + X - 1") * p("X^2 - X - 1");
        for q in [2, 3, 5, 11] {
            assert!(symbol_set(&g, q).unwrap().is_empty());
        }
    }

    #[test]
    fn pi_set_examples() {
        let phi12 = p("X^4 - X^2 + 1");
        assert!(pi_set(&phi12, &p("X - 1")).unwrap().is_empty());
        let pi = pi_set(&p("X^2 + X + 1"), &p("X^2 - X + 1")).unwrap();
        assert_eq!(pi.prime_list(), vec![2]);
        let pi = pi_set(&p("X - 1"), &p("X + 1")).unwrap();
        assert_eq!(pi.prime_list(), vec![2]);
        assert_eq!(
            pi.primes[0].common,
            vec![ModPolynomial::from_i64(2, &[1, 1])]
        );
        let shared = pi_set(&phi12, &(p("X - 1") * phi12.clone())).unwrap();
        assert_eq!(shared.shared, vec![phi12]);
    }

    #[test]
    fn nonsquare_examples() {
        // X^2 - 11X + 1: f(1) = -9, f(-1) = 13
        let f = p("X^2 - 11X + 1");
        let s = nonsquare_memberships(&f, 13).unwrap();
        assert_eq!(s.members, vec![ModPolynomial::from_i64(13, &[1, 1])]);
        let phi12 = p("X^4 - X^2 + 1");
        for q in [2, 3, 5, 7, 13] {
            assert!(nonsquare_memberships(&phi12, q).unwrap().is_empty());
        }
        assert!(nonsquare_memberships(&p("X - 1"), 3).is_err());
    }
}
