use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::conditions::Setup;
use crate::arith::{factor_integer, is_prime_u64};
use crate::error::{domain, Error, Result};
use crate::intpoly::{resultant, IntPolynomial};
use crate::modp::ModPolynomial;
use crate::padic::{class_eq, factor_symbols, LocalSymbolSet, Place};
use crate::par;

/// Which of `X - 1` (plus) and `X + 1` (minus).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn factor(self) -> IntPolynomial {
        match self {
            Side::Plus => IntPolynomial::linear(1),
            Side::Minus => IntPolynomial::linear(-1),
        }
    }
}

/// The prescribed determinant classes `δ₊, δ₋` of the `X ∓ 1` eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPair {
    pub delta_plus: BigInt,
    pub delta_minus: BigInt,
}

impl DeltaPair {
    pub fn get(&self, side: Side) -> &BigInt {
        match side {
            Side::Plus => &self.delta_plus,
            Side::Minus => &self.delta_minus,
        }
    }
}

pub(crate) fn delta_with(setup: &Setup, i_plus: i64, i_minus: i64) -> Result<DeltaPair> {
    let (mp, mm) = (setup.m_plus(), setup.m_minus());
    if (i_plus - mp).rem_euclid(2) != 0 || (i_minus - mm).rem_euclid(2) != 0 {
        return domain(format!(
            "(i₊, i₋) = ({i_plus}, {i_minus}) must have the parities of (m₊, m₋) = ({mp}, {mm})"
        ));
    }
    // m₊ ≡ m₋ mod 2, so keying the factor 2 on m₊ alone covers both sides
    let two = if mp % 2 == 1 { 2 } else { 1 };
    let one_side = |m: i64, i: i64, x: i64| {
        let sign = if ((m - i) / 2).rem_euclid(2) == 1 {
            -1
        } else {
            1
        };
        BigInt::from(sign * two) * setup.f12_at(x).abs()
    };
    Ok(DeltaPair {
        delta_plus: one_side(mp, i_plus, 1),
        delta_minus: one_side(mm, i_minus, -1),
    })
}

/// `δ±(F; i₊, i₋) = (-1)^{(m± - i±)/2} |F₁₂(±1)|`, with an extra factor 2
/// when `m₊` is odd.
pub fn delta(f: &IntPolynomial, i_plus: i64, i_minus: i64) -> Result<DeltaPair> {
    delta_with(&Setup::new(f)?, i_plus, i_minus)
}

/// Whether the primed set of `X ∓ 1` at `p` is `{X ∓ 1}` rather than empty.
fn primed_present(m: i64, delta: &BigInt, p: u64) -> Result<bool> {
    Ok(match m {
        0 | 1 => false,
        2 => {
            let d = BigRational::from_integer(delta.clone());
            let minus_one = BigRational::from_integer(BigInt::from(-1));
            !class_eq(&d, &minus_one, Place::Prime(p))?
        }
        _ => true,
    })
}

pub(crate) fn primed_with(
    setup: &Setup,
    deltas: &DeltaPair,
    side: Side,
    p: u64,
) -> Result<LocalSymbolSet> {
    let m = match side {
        Side::Plus => setup.m_plus(),
        Side::Minus => setup.m_minus(),
    };
    if m == 0 {
        return domain(format!("{} does not divide F", side.factor()));
    }
    Ok(if primed_present(m, deltas.get(side), p)? {
        LocalSymbolSet::from_members(p, vec![ModPolynomial::from_int(&side.factor(), p)])
    } else {
        LocalSymbolSet::empty(p)
    })
}

/// The primed reduction set of `X ∓ 1` at `p` for `(F; i₊, i₋)`.
pub fn primed_symbol_set(
    f: &IntPolynomial,
    i_plus: i64,
    i_minus: i64,
    side: Side,
    p: u64,
) -> Result<LocalSymbolSet> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    let setup = Setup::new(f)?;
    let deltas = delta_with(&setup, i_plus, i_minus)?;
    primed_with(&setup, &deltas, side, p)
}

/// A prime where the primed reduction sets of two factors meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCertificate {
    pub f: IntPolynomial,
    pub g: IntPolynomial,
    pub p: u64,
    pub common: ModPolynomial,
}

impl fmt::Display for EdgeCertificate {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "{} ~ {} via p = {} ({} mod {})",
            self.f,
            self.g,
            self.p,
            self.common.poly_string(),
            self.p
        )
    }
}

/// The partition of the symmetric rational factors of `F` into classes of
/// the equivalence relation defined by `(F; i₊, i₋)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClasses {
    /// All symmetric rational factors, in canonical order.
    pub members: Vec<IntPolynomial>,
    /// Classes as sorted lists of member positions, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub edges: Vec<EdgeCertificate>,
}

impl EquivalenceClasses {
    pub fn class_of(&self, f: &IntPolynomial) -> Option<usize> {
        let k = self.members.iter().position(|g| g == f)?;
        self.classes.iter().position(|c| c.contains(&k))
    }

    pub fn class_members(&self, c: usize) -> Vec<IntPolynomial> {
        self.classes[c]
            .iter()
            .map(|&k| self.members[k].clone())
            .collect()
    }

    /// Whether everything lies in one class.
    pub fn is_weakest(&self) -> bool {
        self.classes.len() <= 1
    }
}

impl fmt::Display for EquivalenceClasses {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, class) in self.classes.iter().enumerate() {
            let names: Vec<String> = class.iter().map(|&k| self.members[k].to_string()).collect();
            writeln!(out, "class {c}: {{{}}}", names.join(", "))?;
        }
        for e in &self.edges {
            writeln!(out, "  {e}")?;
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // the smaller root wins, so the result does not depend on edge order
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Outcome of testing one pair of factors.
enum PairOutcome {
    Edge(u64, ModPolynomial),
    NoEdge,
    Undecided(BigUint, String),
}

fn side_of(f: &IntPolynomial) -> Option<Side> {
    if *f == IntPolynomial::linear(1) {
        Some(Side::Plus)
    } else if *f == IntPolynomial::linear(-1) {
        Some(Side::Minus)
    } else {
        None
    }
}

fn candidate_primes(f: &IntPolynomial, g: &IntPolynomial) -> Result<Vec<BigUint>> {
    let r = resultant(f, g)?;
    Ok(factor_integer(&r).into_iter().map(|(q, _)| q).collect())
}

fn test_pair(
    setup: &Setup,
    deltas: &DeltaPair,
    f: &IntPolynomial,
    g: &IntPolynomial,
) -> Result<PairOutcome> {
    let mut undecided = None;
    match (side_of(f), side_of(g)) {
        (Some(a), Some(b)) => {
            debug_assert_ne!(a, b);
            let pa = primed_with(setup, deltas, a, 2)?;
            let pb = primed_with(setup, deltas, b, 2)?;
            let common = pa.intersection(&pb);
            return Ok(match common.into_iter().next() {
                Some(c) => PairOutcome::Edge(2, c),
                None => PairOutcome::NoEdge,
            });
        }
        (Some(side), None) | (None, Some(side)) => {
            let other = if side_of(f).is_some() { g } else { f };
            for q in candidate_primes(&side.factor(), other)? {
                let Some(p) = q.to_u64() else {
                    undecided.get_or_insert((q, "prime exceeds the machine word".to_string()));
                    continue;
                };
                if primed_with(setup, deltas, side, p)?.is_empty() {
                    continue;
                }
                let target = ModPolynomial::from_int(&side.factor(), p);
                match factor_symbols(other, p) {
                    Ok(s) if s.contains(&target) => return Ok(PairOutcome::Edge(p, target)),
                    Ok(_) => {}
                    Err(Error::Undecided(msg)) => {
                        undecided.get_or_insert((q, msg));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        (None, None) => {
            for q in candidate_primes(f, g)? {
                let Some(p) = q.to_u64() else {
                    undecided.get_or_insert((q, "prime exceeds the machine word".to_string()));
                    continue;
                };
                let both = factor_symbols(f, p).and_then(|a| Ok((a, factor_symbols(g, p)?)));
                match both {
                    Ok((a, b)) => {
                        let a = LocalSymbolSet::from_members(p, a);
                        let b = LocalSymbolSet::from_members(p, b);
                        if let Some(c) = a.intersection(&b).into_iter().next() {
                            return Ok(PairOutcome::Edge(p, c));
                        }
                    }
                    Err(Error::Undecided(msg)) => {
                        undecided.get_or_insert((q, msg));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(match undecided {
        Some((q, msg)) => PairOutcome::Undecided(q, msg),
        None => PairOutcome::NoEdge,
    })
}

pub(crate) fn classes_with(setup: &Setup, i_plus: i64, i_minus: i64) -> Result<EquivalenceClasses> {
    let deltas = delta_with(setup, i_plus, i_minus)?;
    let members = setup.dec.symmetric_factors();
    let n = members.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let outcomes = par::try_map(&pairs, |&(a, b)| {
        test_pair(setup, &deltas, &members[a], &members[b])
    })?;
    let mut uf = UnionFind((0..n).collect());
    let mut edges = Vec::new();
    let mut open = Vec::new();
    for (&(a, b), outcome) in pairs.iter().zip(outcomes) {
        match outcome {
            PairOutcome::Edge(p, common) => {
                uf.union(a, b);
                edges.push(EdgeCertificate {
                    f: members[a].clone(),
                    g: members[b].clone(),
                    p,
                    common,
                });
            }
            PairOutcome::NoEdge => {}
            PairOutcome::Undecided(q, msg) => open.push((a, b, q, msg)),
        }
    }
    for (a, b, q, msg) in open {
        if uf.find(a) != uf.find(b) {
            return Err(Error::Undecided(format!(
                "whether {} ~ {} at p = {q} could not be settled: {msg}",
                members[a], members[b]
            )));
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; n];
    for k in 0..n {
        let r = uf.find(k);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[root_class[r]].push(k);
    }
    Ok(EquivalenceClasses {
        members,
        classes,
        edges,
    })
}

/// The equivalence classes of `(F; i₊, i₋)`, each joining edge certified by a
/// prime and a common reduction.
pub fn equivalence_classes(
    f: &IntPolynomial,
    i_plus: i64,
    i_minus: i64,
) -> Result<EquivalenceClasses> {
    let setup = Setup::new(f)?;
    if f.deg() % 2 == 1 {
        return domain(format!("{f} has odd degree"));
    }
    for (name, v, m) in [
        ("i₊", i_plus, setup.m_plus()),
        ("i₋", i_minus, setup.m_minus()),
    ] {
        if v.abs() > m {
            return domain(format!("{name} = {v} exceeds the multiplicity {m}"));
        }
    }
    classes_with(&setup, i_plus, i_minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn delta_examples() {
        let f = p("X - 1").pow(4) * p("X^4 - X^2 + 1");
        let d = delta(&f, 0, 0).unwrap();
        assert_eq!(
            (d.delta_plus, d.delta_minus),
            (BigInt::from(1), BigInt::from(1))
        );
        let d = delta(&f, 2, 0).unwrap();
        assert_eq!(d.delta_plus, BigInt::from(-1));
        assert!(delta(&f, 1, 0).is_err());
        // odd m₊ inserts the factor 2: F = (X - 1)^3 (X + 1)^3 (X^2 - 3X + 1)
        let g = p("X - 1").pow(3) * p("X + 1").pow(3) * p("X^2 - 3X + 1");
        let d = delta(&g, 1, -1).unwrap();
        assert_eq!(d.delta_plus, BigInt::from(-2));
        assert_eq!(d.delta_minus, BigInt::from(10));
    }

    #[test]
    fn primed_sets() {
        let f = p("X - 1").pow(4) * p("X^4 - X^2 + 1");
        for q in [2, 3, 5] {
            assert!(!primed_symbol_set(&f, 0, 0, Side::Plus, q)
                .unwrap()
                .is_empty());
        }
        let g = p("X - 1") * p("X + 1") * p("X^4 - X^2 + 1");
        assert!(primed_symbol_set(&g, 1, 1, Side::Plus, 3)
            .unwrap()
            .is_empty());
        // m₊ = 2, δ₊ = -|F₁₂(1)| = -1 at i₊ = 0: empty at every p
        let h = p("X - 1").pow(2) * p("X^4 - X^2 + 1") * p("X^2 + 1");
        let d = delta(&h, 0, 0).unwrap();
        assert_eq!(d.delta_plus, BigInt::from(-2));
        let k = p("X - 1").pow(2) * p("X^4 - X^2 + 1");
        assert_eq!(delta(&k, 0, 0).unwrap().delta_plus, BigInt::from(-1));
        for q in [2, 3, 5, 7] {
            assert!(primed_symbol_set(&k, 0, 0, Side::Plus, q)
                .unwrap()
                .is_empty());
        }
        // δ₊ = 1 at i₊ = 2, which is -1 up to squares only where -1 is a square
        for q in [2, 3, 7] {
            assert!(!primed_symbol_set(&k, 2, 0, Side::Plus, q)
                .unwrap()
                .is_empty());
        }
        assert!(primed_symbol_set(&k, 2, 0, Side::Plus, 5)
            .unwrap()
            .is_empty());
        assert!(primed_symbol_set(&k, 0, 0, Side::Minus, 3).is_err());
    }

    #[test]
    fn class_examples() {
        let phi12 = p("X^4 - X^2 + 1");
        let f = p("X - 1").pow(4) * phi12.clone();
        let c = equivalence_classes(&f, 0, 0).unwrap();
        assert_eq!(c.classes.len(), 2);
        assert!(c.edges.is_empty());
        // (X - 1)^3 (X + 1)^3 (X^2 - X - 1)(X^2 + X - 1)
        let g = p("X - 1").pow(3) * p("X + 1").pow(3) * p("X^2 - X - 1") * p("X^2 + X - 1");
        let c = equivalence_classes(&g, 1, 1).unwrap();
        assert_eq!(c.classes, vec![vec![0, 1]]);
        assert_eq!(c.edges[0].p, 2);
        // Φ₃ Φ₆ (X^2 - X - 1)(X^2 + X - 1)
        let h = p("X^2 + X + 1") * p("X^2 - X + 1") * p("X^2 - X - 1") * p("X^2 + X - 1");
        let c = equivalence_classes(&h, 0, 0).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.edges[0].p, 2);
    }
}
