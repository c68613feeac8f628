use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::sign;
use super::IntPolynomial;
use crate::error::{domain, Result};

/// Endpoint of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(v: i64) -> Self {
        Bound::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    fn sign_of(&self, p: &IntPolynomial) -> i32 {
        match self {
            Bound::Finite(x) => p.sign_at(x),
            Bound::PosInf => p.leading().map_or(0, sign),
            Bound::NegInf => {
                let s = p.leading().map_or(0, sign);
                if p.deg() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }
}

/// The Sturm sequence of `h`, with each member reduced to a positive multiple
/// of its primitive part so that signs are preserved.
pub fn sturm_sequence(h: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![h.clone()];
    if h.deg() == 0 {
        return seq;
    }
    seq.push(h.derivative());
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.deg() == 0 {
            break;
        }
        let mut r = a.pseudo_rem(b);
        // pseudo_rem multiplies by lc(b)^k; undo a negative factor
        let k = a.deg() - b.deg() + 1;
        if sign(b.leading().unwrap()) < 0 && k % 2 == 1 {
            r = -r;
        }
        if r.is_zero() {
            break;
        }
        let c = r.content();
        let r = IntPolynomial::new(r.coeffs().iter().map(|x| -(x / &c)).collect());
        seq.push(r);
    }
    seq
}

fn variations(seq: &[IntPolynomial], at: &Bound) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in seq {
        let s = at.sign_of(p);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of the squarefree polynomial `h` in the
/// open interval `(a, b)`.
pub fn sturm_count(h: &IntPolynomial, a: &Bound, b: &Bound) -> Result<usize> {
    if h.is_zero() {
        return domain("Sturm count of the zero polynomial");
    }
    let ordered = match (a, b) {
        (Bound::Finite(x), Bound::Finite(y)) => x < y,
        (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        _ => true,
    };
    if !ordered {
        return domain("Sturm interval must satisfy a < b");
    }
    for e in [a, b] {
        if let Bound::Finite(x) = e {
            if h.sign_at(x) == 0 {
                return domain(format!("polynomial vanishes at the endpoint {x}"));
            }
        }
    }
    let seq = sturm_sequence(h);
    if seq.last().is_some_and(|g| g.deg() > 0) {
        return domain("Sturm count requires a squarefree polynomial");
    }
    let (va, vb) = (variations(&seq, a), variations(&seq, b));
    Ok(va.saturating_sub(vb))
}

/// Isolating intervals for all real roots of the squarefree `h`, in ascending
/// order, by bisection driven by exact Sturm counts.
pub fn isolate_real_roots(h: &IntPolynomial) -> Result<Vec<(BigRational, BigRational)>> {
    let seq = sturm_sequence(h);
    if seq.last().is_some_and(|g| g.deg() > 0) {
        return domain("root isolation requires a squarefree polynomial");
    }
    let bound = cauchy_bound(h);
    let lo = -bound.clone();
    let mut out = Vec::new();
    let mut stack = vec![(lo, bound)];
    let count = |x: &BigRational, y: &BigRational| {
        // roots in (x, y]
        let vx = variations(&seq, &Bound::Finite(x.clone()));
        let vy = variations(&seq, &Bound::Finite(y.clone()));
        vx - vy
    };
    while let Some((x, y)) = stack.pop() {
        let c = count(&x, &y);
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push((x, y));
            continue;
        }
        let mid = (&x + &y) / BigInt::from(2);
        stack.push((mid.clone(), y));
        stack.push((x, mid));
    }
    out.sort();
    Ok(out)
}

/// `1 + max |c_i / c_n|`, an upper bound on the absolute value of every root.
pub fn cauchy_bound(h: &IntPolynomial) -> BigRational {
    let lc = BigRational::from_integer(h.leading().cloned().unwrap_or_else(|| BigInt::from(1)));
    let lc = if lc < BigRational::from_integer(0.into()) {
        -lc
    } else {
        lc
    };
    let mut m = BigRational::from_integer(0.into());
    for c in &h.coeffs()[..h.deg()] {
        let v = BigRational::from_integer(if sign(c) < 0 { -c.clone() } else { c.clone() }) / &lc;
        if v > m {
            m = v;
        }
    }
    m + BigRational::from_integer(1.into())
}
