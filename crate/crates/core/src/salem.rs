//! Salem polynomials and nonprojective realizability of Salem numbers as
//! dynamical degrees of K3 surface automorphisms.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Signed;

use crate::arith::is_square;
use crate::cyclotomic::{c_sets, cyclotomic};
use crate::error::{domain, internal, Error, Result};
use crate::intpoly::{
    cauchy_bound, classify_symmetry, is_irreducible_over_q, sturm_count, trace_polynomial, Bound,
    IntPolynomial, Symmetry,
};
use crate::obstruction::{check_square, equivalence_classes, EquivalenceClasses, IndexMap, Setup};
use crate::padic::{pi_set, PiPrime};
use crate::par;

/// K3 lattice signature.
pub const K3_SIGNATURE: (u64, u64) = (3, 19);
const K3_RANK: usize = 22;

/// Whether `s` is the minimal polynomial of a Salem number: irreducible,
/// +1-symmetric of even degree at least 4, with trace polynomial having one
/// root in `(2, B)` and all others in `(-2, 2)`.
pub fn is_salem_polynomial(s: &IntPolynomial) -> bool {
    salem_check(s).unwrap_or(false)
}

fn salem_check(s: &IntPolynomial) -> Result<bool> {
    if !s.is_monic() || s.deg() < 4 || s.deg() % 2 == 1 {
        return Ok(false);
    }
    if classify_symmetry(s)? != Symmetry::PlusSymmetric || !is_irreducible_over_q(s)? {
        return Ok(false);
    }
    let h = trace_polynomial(s)?;
    // irreducibility keeps ±2 off the roots of h
    let inside = sturm_count(&h, &Bound::int(-2), &Bound::int(2))?;
    let above = sturm_count(&h, &Bound::int(2), &Bound::Finite(cauchy_bound(&h)))?;
    Ok(above == 1 && inside + 1 == h.deg())
}

/// Which result decides the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// Degree 10 or 18: some `l ∈ C_d` with `Π(S, Φ_l) ≠ ∅`.
    Npr1018,
    /// Degree 22: `|S(1)|` and `|S(-1)|` are squares.
    Degree22SquareTest,
    /// Degrees 4, 6, 8, 12, 14, 16, 20.
    AlwaysRealizableDegree,
    /// Degree 10 or 18 with the square condition failing for `S`, which
    /// forces `Π(S, Φ_1)` or `Π(S, Φ_2)` to be nonempty.
    SquareFailureShortcut,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Npr1018 => "NPR_10_18",
            Criterion::Degree22SquareTest => "degree_22_square_test",
            Criterion::AlwaysRealizableDegree => "always_realizable_degree",
            Criterion::SquareFailureShortcut => "square_failure_shortcut",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realizability {
    Realizable,
    NotRealizable,
    /// No witness was found and some candidate prime could not be settled.
    Undecided,
}

impl fmt::Display for Realizability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realizability::Realizable => "realizable",
            Realizability::NotRealizable => "not realizable",
            Realizability::Undecided => "undecided",
        })
    }
}

/// An `l ∈ C_d` with `Π(S, Φ_l) ≠ ∅` and the primes that show it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub l: u64,
    pub primes: Vec<PiPrime>,
}

/// A candidate prime for `Π(S, Φ_l)` the engine could not settle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndecidedPrime {
    pub l: u64,
    pub p: BigUint,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalemVerdict {
    pub polynomial: IntPolynomial,
    pub degree: usize,
    pub is_salem: bool,
    pub realizable: Realizability,
    pub criterion: Criterion,
    pub witnesses: Vec<Witness>,
    pub undecided: Vec<UndecidedPrime>,
    /// A complemented Salem polynomial certifying realizability, when requested
    /// and a construction is known for the case at hand.
    pub witness_f: Option<IntPolynomial>,
}

impl fmt::Display for SalemVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S = {} (degree {})", self.polynomial, self.degree)?;
        writeln!(f, "criterion: {}", self.criterion)?;
        for w in &self.witnesses {
            let ps: Vec<String> = w.primes.iter().map(|q| q.p.to_string()).collect();
            writeln!(f, "  Π(S, Φ_{}) ∋ {}", w.l, ps.join(", "))?;
        }
        for u in &self.undecided {
            writeln!(
                f,
                "  Π(S, Φ_{}): prime {} undecided ({})",
                u.l, u.p, u.reason
            )?;
        }
        if let Some(w) = &self.witness_f {
            writeln!(f, "witness F = {w}")?;
        }
        write!(f, "verdict: {}", self.realizable)
    }
}

/// Options for [`realizable_nonprojective_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct RealizeOptions {
    /// Build and check a witness complemented Salem polynomial.
    pub witness: bool,
}

pub fn realizable_nonprojective(s: &IntPolynomial) -> Result<SalemVerdict> {
    realizable_nonprojective_with(s, RealizeOptions::default())
}

pub fn realizable_nonprojective_with(
    s: &IntPolynomial,
    opts: RealizeOptions,
) -> Result<SalemVerdict> {
    let d = s.deg();
    if d % 2 == 1 || d > K3_RANK {
        return domain(format!("degree {d} is odd or exceeds {K3_RANK}"));
    }
    if !is_salem_polynomial(s) {
        return domain(format!("{s} is not a Salem polynomial"));
    }
    let mut verdict = SalemVerdict {
        polynomial: s.clone(),
        degree: d,
        is_salem: true,
        realizable: Realizability::Realizable,
        criterion: Criterion::AlwaysRealizableDegree,
        witnesses: Vec::new(),
        undecided: Vec::new(),
        witness_f: None,
    };
    let square_holds = check_square(s)?.holds();
    match d {
        22 => {
            verdict.criterion = Criterion::Degree22SquareTest;
            let both = is_square(&s.eval_i64(1).abs()) && is_square(&s.eval_i64(-1).abs());
            if !both {
                verdict.realizable = Realizability::NotRealizable;
            }
        }
        10 | 18 => {
            verdict.criterion = if square_holds {
                Criterion::Npr1018
            } else {
                Criterion::SquareFailureShortcut
            };
            let (witnesses, undecided) = scan_c_set(s, d as u32)?;
            verdict.realizable = if !witnesses.is_empty() {
                Realizability::Realizable
            } else if !undecided.is_empty() {
                Realizability::Undecided
            } else {
                Realizability::NotRealizable
            };
            if !square_holds && witnesses.is_empty() && undecided.is_empty() {
                return internal(format!(
                    "square condition fails for {s} but Π(S, Φ_l) is empty for all l ∈ C_{d}"
                ));
            }
            verdict.witnesses = witnesses;
            verdict.undecided = undecided;
        }
        _ => {}
    }
    if opts.witness && verdict.realizable == Realizability::Realizable {
        verdict.witness_f = if !square_holds && d <= 18 {
            Some(square_failure_witness(s)?)
        } else if let Some(w) = verdict.witnesses.first() {
            Some(build_witness(s, w.l)?)
        } else {
            None
        };
    }
    Ok(verdict)
}

fn scan_c_set(s: &IntPolynomial, d: u32) -> Result<(Vec<Witness>, Vec<UndecidedPrime>)> {
    let (_, c) = c_sets(d)?;
    let sets = par::try_map(&c, |&l| -> Result<_> {
        Ok((l, pi_set(s, &cyclotomic(l)?)?))
    })?;
    let mut witnesses = Vec::new();
    let mut undecided = Vec::new();
    for (l, set) in sets {
        if !set.shared.is_empty() {
            return internal(format!("Salem polynomial shares a factor with Φ_{l}"));
        }
        undecided.extend(set.undecided.into_iter().map(|(p, reason)| UndecidedPrime {
            l,
            p,
            reason,
        }));
        if !set.primes.is_empty() {
            witnesses.push(Witness {
                l,
                primes: set.primes,
            });
        }
    }
    Ok((witnesses, undecided))
}

/// The index map `𝔦_δ ∈ Idx(3, 19; F)` for a complemented Salem polynomial `F`
/// with Salem factor `s`: value 2 on the circle pair of `s` in position
/// `slot` (ordered by increasing trace) and the minimum everywhere else.
pub fn i_delta(f: &IntPolynomial, s: &IntPolynomial, slot: usize) -> Result<IndexMap> {
    if f.deg() != K3_RANK {
        return domain(format!(
            "complemented Salem polynomial must have degree {K3_RANK}, got {}",
            f.deg()
        ));
    }
    let setup = Setup::new(f)?;
    let mut found = false;
    let per_factor = setup
        .type1()
        .into_iter()
        .map(|(g, m, pairs)| {
            let mut vals = vec![-2 * m; pairs];
            if g == *s {
                found = true;
                if let Some(v) = vals.get_mut(slot) {
                    *v = 2;
                }
            }
            (g, vals)
        })
        .collect::<Vec<_>>();
    if !found {
        return domain(format!("{s} is not a factor of {f}"));
    }
    let pairs = setup.profile.pairs_of(s);
    if slot >= pairs {
        return domain(format!(
            "slot {slot} out of range: {s} has {pairs} circle pairs"
        ));
    }
    let idx = IndexMap {
        i_plus: -setup.m_plus(),
        i_minus: -setup.m_minus(),
        per_factor,
        signature: K3_SIGNATURE,
    };
    crate::obstruction::validate_index_map(f, &idx)?;
    Ok(idx)
}

/// The equivalence classes of a complemented Salem polynomial under `𝔦_δ`,
/// after checking that it has degree 22, is divisible by `s` and satisfies
/// the square condition.
pub fn witness_classes(s: &IntPolynomial, f: &IntPolynomial) -> Result<EquivalenceClasses> {
    if f.deg() != K3_RANK {
        return internal(format!("witness {f} has degree {}", f.deg()));
    }
    let square = check_square(f)?;
    if !square.holds() {
        return internal(format!("witness {f}: square condition {square}"));
    }
    let idx = i_delta(f, s, 0)?;
    equivalence_classes(f, idx.i_plus, idx.i_minus)
}

/// The complemented Salem polynomial certifying realizability through
/// `l ∈ C_d` for `d ∈ {10, 18}`, with the postconditions checked: degree 22,
/// the square condition, and a single equivalence class under `𝔦_δ`.
pub fn build_witness(s: &IntPolynomial, l: u64) -> Result<IntPolynomial> {
    let d = s.deg();
    if d != 10 && d != 18 {
        return domain(format!(
            "witnesses are built for degrees 10 and 18, got {d}"
        ));
    }
    if !is_salem_polynomial(s) {
        return domain(format!("{s} is not a Salem polynomial"));
    }
    let (_, c) = c_sets(d as u32)?;
    if !c.contains(&l) {
        return domain(format!("{l} is not in C_{d}"));
    }
    if !check_square(s)?.holds() {
        return domain(format!(
            "{s} fails the square condition; use square_failure_witness"
        ));
    }
    let pi = pi_set(s, &cyclotomic(l)?)?;
    if pi.primes.is_empty() {
        return match pi.undecided.first() {
            Some((p, why)) => Err(Error::Undecided(format!("Π(S, Φ_{l}) at {p}: {why}"))),
            None => domain(format!("Π(S, Φ_{l}) is empty")),
        };
    }
    let phi = |n: u64| cyclotomic(n);
    let x_minus = IntPolynomial::linear(1);
    let x_plus = IntPolynomial::linear(-1);
    let phi_l = phi(l)?;
    let deg_l = phi_l.deg();
    let cofactor = if d == 18 {
        phi_l.pow((4 / deg_l) as u32)
    } else {
        match l {
            5 | 8 | 10 => &phi_l * &(x_minus.pow(4) * x_plus.pow(4)),
            12 => phi_l.pow(3),
            15 | 24 => &phi_l * &phi(3)?.pow(2),
            // the printed table pairs Φ_16 with (X - 1)^4, which fails the
            // square condition, and Φ_30 with a single Φ_6, which has degree 20
            16 => &phi_l * &(x_minus.pow(2) * x_plus.pow(2)),
            30 => &phi_l * &phi(6)?.pow(2),
            11 => &phi_l * &x_minus.pow(2),
            22 => &phi_l * &x_plus.pow(2),
            _ if 12 % deg_l == 0 => phi_l.pow((12 / deg_l) as u32),
            _ => return internal(format!("no witness rule for l = {l}")),
        }
    };
    let f = s * &cofactor;
    let classes = witness_classes(s, &f)?;
    if !classes.is_weakest() {
        return internal(format!(
            "witness {f} has {} classes under 𝔦_δ:\n{classes}",
            classes.classes.len()
        ));
    }
    Ok(f)
}

/// For `S` of degree at most 18 failing the square condition, the
/// complemented Salem polynomial whose obstruction under `𝔦_δ` vanishes:
/// `(X-1)^{21-d}(X+1)S` if `|S(1)|` is not a square, `(X-1)(X+1)^{21-d}S`
/// if `|S(-1)|` is not, and `(X-1)^{22-d}S` otherwise. The checked
/// postcondition is that `S` shares its class with the higher power of `X ∓ 1`.
pub fn square_failure_witness(s: &IntPolynomial) -> Result<IntPolynomial> {
    let d = s.deg();
    if d > 18 || !is_salem_polynomial(s) {
        return domain(format!(
            "{s} is not a Salem polynomial of degree at most 18"
        ));
    }
    let x_minus = IntPolynomial::linear(1);
    let x_plus = IntPolynomial::linear(-1);
    let rest = (K3_RANK - d) as u32;
    let (f, partner) = if !is_square(&s.eval_i64(1).abs()) {
        (x_minus.pow(rest - 1) * x_plus.clone() * s.clone(), x_minus)
    } else if !is_square(&s.eval_i64(-1).abs()) {
        (x_minus * x_plus.pow(rest - 1) * s.clone(), x_plus)
    } else if !check_square(s)?.holds() {
        (x_minus.pow(rest) * s.clone(), x_minus)
    } else {
        return domain(format!("{s} satisfies the square condition"));
    };
    let classes = witness_classes(s, &f)?;
    if classes.class_of(s) != classes.class_of(&partner) {
        return internal(format!(
            "witness {f}: S is not joined to {partner}:\n{classes}"
        ));
    }
    Ok(f)
}

/// Salem polynomials of degree `d` whose palindromic coefficients are bounded
/// by `height` in absolute value, in lexicographic coefficient order.
pub fn salem_polynomials(d: usize, height: i64) -> Result<Vec<IntPolynomial>> {
    if d < 4 || d % 2 == 1 || d > K3_RANK {
        return domain(format!(
            "Salem degree must be even in [4, {K3_RANK}], got {d}"
        ));
    }
    if height < 1 {
        return domain("height must be positive");
    }
    let n = d / 2;
    let span = (2 * height + 1) as u64;
    let total = span
        .checked_pow(n as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::Domain(format!("search space ({span})^{n} is too large")))?;
    let codes: Vec<u64> = (0..total).collect();
    let found = par::map(&codes, |&code| {
        let mut c = code;
        let mut coeffs = vec![0i64; d + 1];
        coeffs[0] = 1;
        coeffs[d] = 1;
        for k in 1..=n {
            let v = (c % span) as i64 - height;
            c /= span;
            coeffs[k] = v;
            coeffs[d - k] = v;
        }
        // S(1) = h(2) < 0 and S(-1) = (-1)^n h(-2) > 0 for every Salem S
        let at_one: i64 = coeffs.iter().sum();
        let at_minus: i64 = coeffs
            .iter()
            .enumerate()
            .map(|(k, v)| if k % 2 == 0 { *v } else { -v })
            .sum();
        if at_one >= 0 || at_minus <= 0 {
            return None;
        }
        let s = IntPolynomial::from_i64(&coeffs);
        is_salem_polynomial(&s).then_some(s)
    });
    Ok(found.into_iter().flatten().collect())
}

/// Verdicts for every Salem polynomial of degree `d` up to trace height
/// `height`, keeping only those not found realizable.
pub fn scan_counterexamples(d: usize, height: i64) -> Result<Vec<SalemVerdict>> {
    let candidates = salem_polynomials(d, height)?;
    let verdicts = par::try_map(&candidates, realizable_nonprojective)?;
    Ok(verdicts
        .into_iter()
        .filter(|v| v.realizable != Realizability::Realizable)
        .collect())
}
