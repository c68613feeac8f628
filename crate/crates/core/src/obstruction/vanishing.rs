use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::classes::{classes_with, EquivalenceClasses};
use super::conditions::{check_square, e_of, sign_holds, Setup};
use super::index::{eta_with, validate_with, IndexMap};
use crate::cyclotomic::is_cyclotomic_product;
use crate::error::{domain, internal, Error, Result};
use crate::intpoly::IntPolynomial;

/// What certifies that the reference index has vanishing obstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guarantee {
    /// Built class by class, each class carrying a weakest relation.
    ClassDecomposition,
    /// `m₊ = 1` or `m₋ = 1` for a product of cyclotomic polynomials: such an
    /// index exists, but no explicit map is produced.
    CyclotomicExistence,
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Guarantee::ClassDecomposition => "class decomposition with weakest relations",
            Guarantee::CyclotomicExistence => "existence for cyclotomic products (no explicit map)",
        })
    }
}

/// An index map at signature `(n, n)` whose obstruction vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingIndex {
    pub index: Option<IndexMap>,
    pub guarantee: Guarantee,
}

/// Representative of `i mod 4` in `{-1, 0, 1, 2}`.
fn rep_plus(i: i64) -> i64 {
    (i + 1).rem_euclid(4) - 1
}

/// Representative of `i mod 4` in `{-2, -1, 0, 1}`.
fn rep_minus(i: i64) -> i64 {
    (i + 2).rem_euclid(4) - 2
}

fn check_prolong(setup: &Setup, i_plus: i64, i_minus: i64) -> Result<()> {
    let (mp, mm) = (setup.m_plus(), setup.m_minus());
    if i_plus.abs() > mp || i_minus.abs() > mm {
        return domain(format!(
            "(i₊, i₋) = ({i_plus}, {i_minus}) exceeds (m₊, m₋) = ({mp}, {mm})"
        ));
    }
    if (i_plus - mp).rem_euclid(2) != 0 || (i_minus - mp).rem_euclid(2) != 0 {
        return domain(format!(
            "i₊ ≡ i₋ ≡ m₊ mod 2 fails for ({i_plus}, {i_minus}), m₊ = {mp}"
        ));
    }
    let e = i64::from(setup.e_f12());
    if (i_plus + i_minus - (1 - e)).rem_euclid(4) != 0 {
        return domain(format!(
            "i₊ + i₋ = {} is not ≡ 1 - e(F₁₂) = {} mod 4",
            i_plus + i_minus,
            1 - e
        ));
    }
    Ok(())
}

/// Spreads `target` over circle-pair slots with values `≡ 2m mod 4` in
/// `[-2m, 2m]`, starting from the minimum. Slots are `(factor, m)`.
fn spread(slots: &[(usize, i64)], target: i64, rng: Option<&mut ChaCha8Rng>) -> Option<Vec<i64>> {
    let mut vals: Vec<i64> = slots.iter().map(|&(_, m)| -2 * m).collect();
    let mut deficit = target - vals.iter().sum::<i64>();
    let room: i64 = slots.iter().map(|&(_, m)| 4 * m).sum();
    if deficit < 0 || deficit % 4 != 0 || deficit > room {
        return None;
    }
    match rng {
        None => {
            for (v, &(_, m)) in vals.iter_mut().zip(slots) {
                let step = deficit.min(4 * m);
                *v += step;
                deficit -= step;
            }
        }
        Some(rng) => {
            while deficit > 0 {
                let open: Vec<usize> = (0..vals.len())
                    .filter(|&k| vals[k] < 2 * slots[k].1)
                    .collect();
                let k = open[rng.gen_range(0..open.len())];
                vals[k] += 4;
                deficit -= 4;
            }
        }
    }
    Some(vals)
}

/// An index map `j ∈ Idx(n, n; F)` with `j(X ∓ 1) ≡ i± mod 4` such that the
/// obstruction of `(F, j)` vanishes.
///
/// `F` must satisfy the square condition and `(i₊, i₋)` the prolongation
/// constraints. When `m₊ = 1` or `m₋ = 1` only products of cyclotomic
/// polynomials are accepted, and then only existence is reported.
pub fn construct_vanishing_index(
    f: &IntPolynomial,
    i_plus: i64,
    i_minus: i64,
) -> Result<VanishingIndex> {
    construct_vanishing_index_seeded(f, i_plus, i_minus, None)
}

/// As [`construct_vanishing_index`]; a seed picks a random admissible spread of
/// each class's index sum over its circle pairs instead of the greedy one.
pub fn construct_vanishing_index_seeded(
    f: &IntPolynomial,
    i_plus: i64,
    i_minus: i64,
    seed: Option<u64>,
) -> Result<VanishingIndex> {
    if f.deg() % 2 == 1 {
        return domain(format!("{f} has odd degree"));
    }
    let setup = Setup::new(f)?;
    let square = check_square(f)?;
    if !square.holds() {
        return domain(format!("the square condition {square}"));
    }
    check_prolong(&setup, i_plus, i_minus)?;
    let (mp, mm) = (setup.m_plus(), setup.m_minus());
    if mp == 1 || mm == 1 {
        if is_cyclotomic_product(f)? {
            return Ok(VanishingIndex {
                index: None,
                guarantee: Guarantee::CyclotomicExistence,
            });
        }
        return Err(Error::Unsupported(format!(
            "multiplicity 1 at X ∓ 1 (m₊ = {mp}, m₋ = {mm}) outside products of cyclotomic polynomials"
        )));
    }
    let index = build(&setup, i_plus, i_minus, seed)?;
    validate_with(&setup, &index)
        .or_else(|e| internal(format!("constructed index map is invalid: {e}")))?;
    Ok(VanishingIndex {
        index: Some(index),
        guarantee: Guarantee::ClassDecomposition,
    })
}

fn build(setup: &Setup, i_plus: i64, i_minus: i64, seed: Option<u64>) -> Result<IndexMap> {
    let (mp, mm) = (setup.m_plus(), setup.m_minus());
    // with both multiplicities even and at least 2, the surplus (X ∓ 1)^2k
    // split off as ±identity on a hyperbolic block adds nothing to the index
    let peel = mp >= 2 && mm >= 2 && mp % 2 == 0 && mm % 2 == 0;
    let work = if peel {
        let f12 = setup.dec.f12();
        let f0 = &IntPolynomial::linear(1).pow(2) * &IntPolynomial::linear(-1).pow(2);
        Setup::new(&(&f0 * &f12))?
    } else {
        setup.clone()
    };
    let rp = if work.m_plus() == 0 {
        0
    } else {
        rep_plus(i_plus)
    };
    let rm = if work.m_minus() == 0 {
        0
    } else {
        rep_minus(i_minus)
    };
    if rp.abs() > work.m_plus() || rm.abs() > work.m_minus() {
        return internal(format!(
            "representatives ({rp}, {rm}) exceed the multiplicities"
        ));
    }
    let classes = classes_with(&work, rp, rm)?;
    let type1 = work.type1();
    let mut per_factor: Vec<(IntPolynomial, Vec<i64>)> = type1
        .iter()
        .map(|(g, _, pairs)| (g.clone(), vec![0; *pairs]))
        .collect();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    for c in 0..classes.classes.len() {
        let members = classes.class_members(c);
        let mut fixed = 0;
        let mut core = IntPolynomial::one();
        let mut slots = Vec::new();
        for g in &members {
            if *g == IntPolynomial::linear(1) {
                fixed += rp;
            } else if *g == IntPolynomial::linear(-1) {
                fixed += rm;
            } else {
                let k = type1
                    .iter()
                    .position(|(h, _, _)| h == g)
                    .expect("class member is a type 1 factor");
                let (_, m, pairs) = &type1[k];
                core = &core * &g.pow(*m as u32);
                slots.extend((0..*pairs).map(|_| (k, *m)));
            }
        }
        let e = i64::from(e_of(&core));
        if (fixed - (1 - e)).rem_euclid(4) != 0 {
            return internal(format!(
                "class {{{}}}: X ∓ 1 values sum to {fixed}, not ≡ 1 - e = {} mod 4",
                join(&members),
                1 - e
            ));
        }
        let Some(vals) = spread(&slots, -fixed, rng.as_mut()) else {
            return internal(format!(
                "class {{{}}}: index sum {} is out of reach",
                join(&members),
                -fixed
            ));
        };
        let mut next = vec![0usize; type1.len()];
        for (&(k, _), v) in slots.iter().zip(vals) {
            per_factor[k].1[next[k]] = v;
            next[k] += 1;
        }
    }
    let n = (setup.degree() / 2) as u64;
    Ok(IndexMap {
        i_plus: rp,
        i_minus: rm,
        per_factor,
        signature: (n, n),
    })
}

fn join(fs: &[IntPolynomial]) -> String {
    fs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// The obstruction map of `(F, 𝔦)` on the class indicators, obtained by
/// comparing real Hasse–Witt bits with a reference index of vanishing
/// obstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub index: IndexMap,
    pub classes: EquivalenceClasses,
    /// The bit of each class indicator, in class order.
    pub values: Vec<u8>,
    pub vanishes: bool,
    /// Dimension of the reduced obstruction group.
    pub reduced_rank: usize,
    pub reference: IndexMap,
    pub eta_index: Vec<(IntPolynomial, u8)>,
    pub eta_reference: Vec<(IntPolynomial, u8)>,
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "index: {}", self.index)?;
        writeln!(out, "reference: {}", self.reference)?;
        for (c, class) in self.classes.classes.iter().enumerate() {
            let names: Vec<String> = class
                .iter()
                .map(|&k| self.classes.members[k].to_string())
                .collect();
            writeln!(
                out,
                "class {c}: {{{}}}  ob = {}",
                names.join(", "),
                self.values[c]
            )?;
        }
        for e in &self.classes.edges {
            writeln!(out, "  {e}")?;
        }
        writeln!(out, "reduced rank: {}", self.reduced_rank)?;
        write!(
            out,
            "verdict: {}",
            if self.vanishes {
                "obstruction vanishes"
            } else {
                "obstruction does not vanish"
            }
        )
    }
}

pub fn obstruction_map(f: &IntPolynomial, idx: &IndexMap) -> Result<ObstructionReport> {
    obstruction_map_seeded(f, idx, None)
}

/// As [`obstruction_map`] with a seeded reference index.
pub fn obstruction_map_seeded(
    f: &IntPolynomial,
    idx: &IndexMap,
    seed: Option<u64>,
) -> Result<ObstructionReport> {
    let setup = Setup::new(f)?;
    validate_with(&setup, idx)?;
    let (r, s) = idx.signature;
    if (r as i64 - s as i64).rem_euclid(8) != 0 {
        return domain(format!("signature ({r}, {s}) has r ≢ s mod 8"));
    }
    if !sign_holds(&setup, r, s) {
        return domain(format!("the sign condition fails at ({r}, {s})"));
    }
    let square = check_square(f)?;
    if !square.holds() {
        return domain(format!("the square condition {square}"));
    }
    if setup.m_plus() == 1 || setup.m_minus() == 1 {
        return Err(Error::Unsupported(format!(
            "multiplicity 1 at X ∓ 1 (m₊ = {}, m₋ = {})",
            setup.m_plus(),
            setup.m_minus()
        )));
    }
    let classes = classes_with(&setup, idx.i_plus, idx.i_minus)?;
    let reference = construct_vanishing_index_seeded(f, idx.i_plus, idx.i_minus, seed)?
        .index
        .expect("explicit index when m± ≠ 1");
    let eta_index = eta_with(&setup, idx);
    let eta_reference = eta_with(&setup, &reference);
    let values: Vec<u8> = classes
        .classes
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&k| eta_index[k].1 ^ eta_reference[k].1)
                .fold(0, |a, b| a ^ b)
        })
        .collect();
    if values.iter().fold(0, |a, b| a ^ b) != 0 {
        return internal("obstruction values do not sum to zero over the classes");
    }
    Ok(ObstructionReport {
        index: idx.clone(),
        vanishes: values.iter().all(|&v| v == 0),
        reduced_rank: classes.classes.len().saturating_sub(1),
        classes,
        values,
        reference,
        eta_index,
        eta_reference,
    })
}
