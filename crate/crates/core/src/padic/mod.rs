//! p-adic side: square classes, factorisation over `ℚ_p`, the reduction sets
//! of `*`-symmetric local factors and the prime sets where two of them meet.

mod linalg;
mod order;
mod square;
mod symbols;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub use linalg::{charpoly_mod, hnf_with_modulus, left_kernel_mod, solve_upper};
pub use square::{class_eq, square_class, Place, SquareClass};
pub(crate) use symbols::factor_symbols;
pub use symbols::{nonsquare_memberships, pi_set, symbol_set, PiPrime, PiSet};

use crate::arith::{inv_mod, is_prime_u64, valuation};
use crate::error::{domain, internal, Error, Result};
use crate::hensel::{lift_factors, reduce};
use crate::intpoly::{discriminant_abs, IntPolynomial, MAX_DEGREE};
use crate::modp::{factor_mod_p, ModPolynomial};

/// Largest degree accepted by [`factor_over_qp`].
pub const MAX_LOCAL_DEGREE: usize = 24;

/// Precision ceiling for p-adic approximations.
pub const MAX_PRECISION: u32 = 512;

/// A monic irreducible factor over `ℚ_p`, known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub p: u64,
    /// The factor modulo p, a power of one irreducible polynomial over 𝔽_p.
    pub reduction: ModPolynomial,
    pub residue_degree: usize,
    pub ramification_index: usize,
    pub star_symmetric: bool,
    /// Coefficients in `[0, p^precision)`.
    pub approx: IntPolynomial,
    pub precision: u32,
}

impl LocalFactor {
    pub fn degree(&self) -> usize {
        self.approx.deg()
    }

    /// The irreducible polynomial over 𝔽_p whose power is the reduction.
    pub fn residue_polynomial(&self) -> ModPolynomial {
        factor_mod_p(&self.reduction)[0].0.clone()
    }
}

/// The set of irreducible reductions modulo p of the `*`-symmetric
/// irreducible factors of a polynomial over `ℚ_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalSymbolSet {
    pub p: u64,
    pub members: Vec<ModPolynomial>,
}

impl LocalSymbolSet {
    pub fn empty(p: u64) -> Self {
        LocalSymbolSet {
            p,
            members: Vec::new(),
        }
    }

    pub fn from_members(p: u64, mut members: Vec<ModPolynomial>) -> Self {
        members.sort();
        members.dedup();
        LocalSymbolSet { p, members }
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &ModPolynomial) -> bool {
        self.members.binary_search(g).is_ok()
    }

    pub fn intersection(&self, other: &Self) -> Vec<ModPolynomial> {
        self.members
            .iter()
            .filter(|g| other.contains(g))
            .cloned()
            .collect()
    }
}

impl fmt::Display for LocalSymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return write!(f, "∅ (p = {})", self.p);
        }
        let parts: Vec<String> = self.members.iter().map(|g| g.poly_string()).collect();
        write!(f, "{{{}}} mod {}", parts.join(", "), self.p)
    }
}

/// Working precision `2·v_p(disc f) + 1`.
pub fn working_precision(f: &IntPolynomial, p: u64) -> Result<u32> {
    let disc = discriminant_abs(f)?;
    if disc.is_zero() {
        return domain(format!("{f} is not squarefree"));
    }
    let k = 2 * valuation(&disc, p) + 1;
    if k > MAX_PRECISION {
        return Err(Error::Undecided(format!(
            "precision {k} needed for {f} at p = {p} exceeds the cap {MAX_PRECISION}"
        )));
    }
    Ok(k)
}

/// `g*` modulo `m` for monic `g` whose constant term is a unit modulo `m`.
fn star_mod(g: &IntPolynomial, m: &BigInt, p: u64) -> Option<IntPolynomial> {
    let c0 = g.coeff(0).mod_floor(m);
    if (&c0 % BigInt::from(p)).is_zero() {
        return None;
    }
    let inv = inverse_mod_prime_power(&c0, m, p);
    Some(reduce(&g.reversed().scale(&inv), m))
}

/// Inverse of a unit modulo `m = p^k`, by Newton iteration from the inverse mod p.
fn inverse_mod_prime_power(a: &BigInt, m: &BigInt, p: u64) -> BigInt {
    let bp = BigInt::from(p);
    let a0 = a.mod_floor(&bp);
    let a0 = u64::try_from(a0).unwrap();
    let mut x = BigInt::from(inv_mod(a0, p));
    let mut modulus = bp;
    while &modulus < m {
        modulus = &modulus * &modulus;
        // x <- x (2 - a x)
        x = (&x * (BigInt::from(2) - a * &x)).mod_floor(&modulus);
    }
    x.mod_floor(m)
}

/// The factorisation of a monic squarefree `f` into monic irreducibles over
/// `ℚ_p`, each with residue degree, ramification index, reduction modulo p,
/// an approximation modulo `p^k` with `k = 2·v_p(disc f) + 1`, and whether it
/// is fixed by `*`.
///
/// Star symmetry is decided by comparing `g*` with `g` modulo `p^k`; two
/// distinct factors of `f` never agree to that precision, so the test is
/// exact whenever `g*` divides `f`, in particular for `*`-symmetric `f`.
pub fn factor_over_qp(f: &IntPolynomial, p: u64) -> Result<Vec<LocalFactor>> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    if !f.is_monic() {
        return domain(format!("{f} is not monic"));
    }
    if f.deg() > MAX_LOCAL_DEGREE.min(MAX_DEGREE) {
        return domain(format!("degree {} exceeds {MAX_LOCAL_DEGREE}", f.deg()));
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let k = working_precision(f, p)?;
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let fbar = ModPolynomial::from_int(f, p);
    let raw: Vec<(IntPolynomial, usize)> = if f.deg() == 1 {
        vec![(reduce(f, &pk), 1)]
    } else if ModPolynomial::gcd(&fbar, &fbar.derivative()).deg() == 0 {
        let facs: Vec<ModPolynomial> = factor_mod_p(&fbar).into_iter().map(|(g, _)| g).collect();
        lift_factors(f, &facs, k)
            .into_iter()
            .map(|g| {
                let d = g.deg();
                (g, d)
            })
            .collect()
    } else {
        order::split_components(f, p, k)?
            .into_iter()
            .map(|c| {
                debug_assert_eq!(c.approx.deg(), c.degree);
                (c.approx, c.residue_degree)
            })
            .collect()
    };
    let mut out = Vec::with_capacity(raw.len());
    for (g, fdeg) in &raw {
        let reduction = ModPolynomial::from_int(g, p);
        let parts = factor_mod_p(&reduction);
        if parts.len() != 1 {
            return internal(format!(
                "reduction of a local factor of {f} at {p} is not primary"
            ));
        }
        let star_symmetric = star_mod(g, &pk, p).is_some_and(|s| s == *g);
        out.push(LocalFactor {
            p,
            reduction,
            residue_degree: *fdeg,
            ramification_index: g.deg() / fdeg,
            star_symmetric,
            approx: g.clone(),
            precision: k,
        });
    }
    out.sort_by(|a, b| {
        a.reduction
            .cmp(&b.reduction)
            .then_with(|| a.approx.cmp(&b.approx))
    });
    let prod = raw
        .iter()
        .fold(IntPolynomial::one(), |acc, (g, _)| reduce(&(&acc * g), &pk));
    if prod != reduce(f, &pk) {
        return internal(format!("local factors of {f} at {p} do not multiply back"));
    }
    Ok(out)
}
