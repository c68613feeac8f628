//! Square classes `ℚ_v^× / ℚ_v^{×2}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{is_prime_u64, legendre};
use crate::error::{domain, Result};

/// A place of ℚ: a finite prime or the real place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("∞"),
        }
    }
}

/// Canonical representative data of a class in `ℚ_v^× / ℚ_v^{×2}`.
///
/// `unit_class` is the Legendre symbol of the unit part for odd `p`, the unit
/// part modulo 8 for `p = 2`, and the sign at the real place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    pub place: Place,
    pub parity: u8,
    pub unit_class: i64,
}

fn strip(n: &BigInt, p: u64) -> (u32, BigInt) {
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

pub fn square_class(x: &BigRational, place: Place) -> Result<SquareClass> {
    if x.is_zero() {
        return domain("zero has no square class");
    }
    match place {
        Place::Infinity => Ok(SquareClass {
            place,
            parity: 0,
            unit_class: if x.is_negative() { -1 } else { 1 },
        }),
        Place::Prime(p) => {
            if !is_prime_u64(p) {
                return domain(format!("{p} is not prime"));
            }
            let (vn, un) = strip(x.numer(), p);
            let (vd, ud) = strip(x.denom(), p);
            let parity = ((vn + vd) % 2) as u8;
            // u/w and u·w differ by the square w²
            let unit = un * ud;
            let unit_class = if p == 2 {
                unit.mod_floor(&BigInt::from(8)).to_i64().unwrap()
            } else {
                legendre(&unit, p) as i64
            };
            Ok(SquareClass {
                place,
                parity,
                unit_class,
            })
        }
    }
}

/// True iff `x / y` is a square in `ℚ_v`.
pub fn class_eq(x: &BigRational, y: &BigRational, place: Place) -> Result<bool> {
    Ok(square_class(x, place)? == square_class(y, place)?)
}
