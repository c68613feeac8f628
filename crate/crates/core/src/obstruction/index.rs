use std::fmt;

use super::conditions::{sign_holds, Setup};
use crate::error::{domain, Result};
use crate::intpoly::IntPolynomial;

/// An index map: the signature data of a real isometry on each real
/// `*`-symmetric irreducible factor.
///
/// `per_factor` lists every type 1 rational factor with one value per circle
/// pair, slot `k` being the pair with the `k`-th smallest trace `ζ + ζ⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexMap {
    pub i_plus: i64,
    pub i_minus: i64,
    pub per_factor: Vec<(IntPolynomial, Vec<i64>)>,
    pub signature: (u64, u64),
}

impl IndexMap {
    /// Sum of all values, which equals `r - s`.
    pub fn total(&self) -> i64 {
        self.i_plus + self.i_minus + self.per_factor.iter().flat_map(|(_, v)| v).sum::<i64>()
    }

    /// Sum of the values on the real factors of the rational factor `f`.
    pub fn sum_over(&self, f: &IntPolynomial) -> i64 {
        if *f == IntPolynomial::linear(1) {
            self.i_plus
        } else if *f == IntPolynomial::linear(-1) {
            self.i_minus
        } else {
            self.per_factor
                .iter()
                .find(|(g, _)| g == f)
                .map_or(0, |(_, v)| v.iter().sum())
        }
    }

    pub fn values_of(&self, f: &IntPolynomial) -> Option<&[i64]> {
        self.per_factor
            .iter()
            .find(|(g, _)| g == f)
            .map(|(_, v)| v.as_slice())
    }
}

impl fmt::Display for IndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(r, s) = ({}, {}); X - 1 ↦ {}; X + 1 ↦ {}",
            self.signature.0, self.signature.1, self.i_plus, self.i_minus
        )?;
        for (g, v) in &self.per_factor {
            let vals: Vec<String> = v.iter().map(i64::to_string).collect();
            write!(f, "; {g} ↦ [{}]", vals.join(", "))?;
        }
        Ok(())
    }
}

/// Checks every index-map constraint for `F`, returning the setup.
pub(crate) fn validate_with(setup: &Setup, idx: &IndexMap) -> Result<()> {
    let (r, s) = idx.signature;
    if (r + s) as usize != setup.degree() {
        return domain(format!(
            "signature ({r}, {s}) does not match degree {}",
            setup.degree()
        ));
    }
    for (name, v, m) in [
        ("X - 1", idx.i_plus, setup.m_plus()),
        ("X + 1", idx.i_minus, setup.m_minus()),
    ] {
        if v.abs() > m || (v - m).rem_euclid(2) != 0 {
            return domain(format!(
                "value {v} on {name} violates |i| ≤ {m}, i ≡ {m} mod 2"
            ));
        }
    }
    let type1 = setup.type1();
    if idx.per_factor.len() != type1.len() {
        return domain("index map does not list every type 1 factor");
    }
    for ((g, vals), (f, m, pairs)) in idx.per_factor.iter().zip(&type1) {
        if g != f || vals.len() != *pairs {
            return domain(format!(
                "index map entry for {g} does not match the circle pairs of {f}"
            ));
        }
        for &v in vals {
            if v.abs() > 2 * m || (v - 2 * m).rem_euclid(4) != 0 {
                return domain(format!(
                    "value {v} on a circle pair of {f} violates |v| ≤ {}, v ≡ {} mod 4",
                    2 * m,
                    2 * m
                ));
            }
        }
    }
    if idx.total() != r as i64 - s as i64 {
        return domain(format!(
            "index values sum to {}, not r - s = {}",
            idx.total(),
            r as i64 - s as i64
        ));
    }
    Ok(())
}

pub fn validate_index_map(f: &IntPolynomial, idx: &IndexMap) -> Result<()> {
    validate_with(&Setup::new(f)?, idx)
}

/// One real slot: its admissible values `lo, lo + step, ..., hi`.
#[derive(Clone, Copy)]
struct Slot {
    lo: i64,
    hi: i64,
    step: i64,
}

/// Index maps in `Idx(r, s; F)`, all of them or the first `limit`, in
/// lexicographic order of `(i₊, i₋, pair values)`. Empty exactly when the sign
/// condition fails.
pub fn enumerate_index_maps(
    f: &IntPolynomial,
    r: u64,
    s: u64,
    limit: Option<usize>,
) -> Result<Vec<IndexMap>> {
    if (r + s) as usize != f.deg() {
        return domain(format!(
            "r + s = {} differs from deg F = {}",
            r + s,
            f.deg()
        ));
    }
    let setup = Setup::new(f)?;
    let type1 = setup.type1();
    let mut slots = vec![
        Slot {
            lo: -setup.m_plus(),
            hi: setup.m_plus(),
            step: 2,
        },
        Slot {
            lo: -setup.m_minus(),
            hi: setup.m_minus(),
            step: 2,
        },
    ];
    for (_, m, pairs) in &type1 {
        slots.extend((0..*pairs).map(|_| Slot {
            lo: -2 * m,
            hi: 2 * m,
            step: 4,
        }));
    }
    // suffix bounds for pruning
    let mut min_rest = vec![0i64; slots.len() + 1];
    let mut max_rest = vec![0i64; slots.len() + 1];
    for k in (0..slots.len()).rev() {
        min_rest[k] = min_rest[k + 1] + slots[k].lo;
        max_rest[k] = max_rest[k + 1] + slots[k].hi;
    }
    let target = r as i64 - s as i64;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(slots.len());
    let cap = limit.unwrap_or(usize::MAX);
    let mut emit = |vals: &[i64]| {
        let mut it = vals[2..].iter().copied();
        let per_factor = type1
            .iter()
            .map(|(g, _, pairs)| (g.clone(), it.by_ref().take(*pairs).collect()))
            .collect();
        out.push(IndexMap {
            i_plus: vals[0],
            i_minus: vals[1],
            per_factor,
            signature: (r, s),
        });
    };
    search(
        &slots,
        &min_rest,
        &max_rest,
        target,
        &mut current,
        cap,
        &mut 0,
        &mut emit,
    );
    debug_assert_eq!(
        out.is_empty(),
        !sign_holds(&setup, r, s) && limit != Some(0)
    );
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    slots: &[Slot],
    min_rest: &[i64],
    max_rest: &[i64],
    remaining: i64,
    current: &mut Vec<i64>,
    cap: usize,
    count: &mut usize,
    emit: &mut dyn FnMut(&[i64]),
) {
    if *count >= cap {
        return;
    }
    let k = current.len();
    if k == slots.len() {
        if remaining == 0 {
            emit(current);
            *count += 1;
        }
        return;
    }
    if remaining < min_rest[k] || remaining > max_rest[k] {
        return;
    }
    let slot = slots[k];
    let mut v = slot.lo;
    while v <= slot.hi {
        current.push(v);
        search(
            slots,
            min_rest,
            max_rest,
            remaining - v,
            current,
            cap,
            count,
            emit,
        );
        current.pop();
        v += slot.step;
    }
}

/// The real Hasse–Witt bits of an index map on each symmetric rational factor,
/// in the order of [`crate::intpoly::SymmetricDecomposition::symmetric_factors`].
///
/// With `t = (deg(f^{m_f}) - Σ idx)/2` negative squares, the bit is
/// `t(t-1)/2 mod 2`, which is 1 exactly when `t ≡ 2, 3 mod 4`.
pub fn eta_infinity(f: &IntPolynomial, idx: &IndexMap) -> Result<Vec<(IntPolynomial, u8)>> {
    let setup = Setup::new(f)?;
    validate_with(&setup, idx)?;
    Ok(eta_with(&setup, idx))
}

pub(crate) fn eta_with(setup: &Setup, idx: &IndexMap) -> Vec<(IntPolynomial, u8)> {
    setup
        .dec
        .symmetric_factors()
        .into_iter()
        .map(|g| {
            let full = (g.deg() as i64) * i64::from(setup.dec.multiplicity(&g));
            let t = (full - idx.sum_over(&g)) / 2;
            let bit = u8::from(matches!(t.rem_euclid(4), 2 | 3));
            (g, bit)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::e_sign;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    const LEHMER: &str = "X^10 + X^9 - X^7 - X^6 - X^5 - X^4 - X^3 + X + 1";

    #[test]
    fn enumeration_examples() {
        let phi12 = p("X^4 - X^2 + 1");
        let maps = enumerate_index_maps(&phi12, 4, 0, None).unwrap();
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].per_factor[0].1, vec![2, 2]);
        assert_eq!(enumerate_index_maps(&phi12, 2, 2, None).unwrap().len(), 2);
        assert!(enumerate_index_maps(&phi12, 1, 3, None).unwrap().is_empty());
        let s = p(LEHMER);
        assert!(enumerate_index_maps(&s, 3, 19, None).is_err());
        let maps = enumerate_index_maps(&s, 1, 9, None).unwrap();
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0].per_factor[0].1, vec![-2, -2, -2, -2]);
        let f = p("X - 1").pow(4) * phi12;
        assert_eq!(enumerate_index_maps(&f, 8, 0, None).unwrap().len(), 1);
        assert_eq!(enumerate_index_maps(&f, 4, 4, Some(3)).unwrap().len(), 3);
    }

    #[test]
    fn enumerated_maps_validate_and_satisfy_the_congruence() {
        let f = p("X - 1").pow(2) * p("X + 1").pow(2) * p("X^4 - X^2 + 1") * p("X^2 + 1");
        let e = e_sign(&(p("X^4 - X^2 + 1") * p("X^2 + 1"))).unwrap() as i64;
        for (r, s) in [(5, 5), (9, 1), (1, 9)] {
            for m in enumerate_index_maps(&f, r, s, None).unwrap() {
                validate_index_map(&f, &m).unwrap();
                assert_eq!((m.i_plus + m.i_minus - (1 - e)).rem_euclid(4), 0);
            }
        }
    }

    #[test]
    fn eta_bits() {
        let f = p("X - 1").pow(4) * p("X^4 - X^2 + 1");
        let top = &enumerate_index_maps(&f, 8, 0, None).unwrap()[0];
        let bits = eta_infinity(&f, top).unwrap();
        assert_eq!(bits.iter().map(|(_, b)| *b).collect::<Vec<_>>(), vec![0, 0]);
        let bad = IndexMap {
            i_plus: 3,
            ..top.clone()
        };
        assert!(eta_infinity(&f, &bad).is_err());
    }
}
