use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;
use crate::error::{domain, Result};

/// Resultant of two nonzero integer polynomials, computed with the
/// subresultant pseudo-remainder sequence.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return domain("resultant of the zero polynomial");
    }
    Ok(subresultant(f, g))
}

fn subresultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (mut a, mut b) = (f.clone(), g.clone());
    let ca = a.content();
    let cb = b.content();
    let t = num_traits::pow(ca.clone(), b.deg()) * num_traits::pow(cb.clone(), a.deg());
    a = IntPolynomial::new(a.coeffs().iter().map(|c| c / &ca).collect());
    b = IntPolynomial::new(b.coeffs().iter().map(|c| c / &cb).collect());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    while b.deg() > 0 {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let denom = &gg * num_traits::pow(h.clone(), delta);
        b = IntPolynomial::new(r.coeffs().iter().map(|c| c / &denom).collect());
        gg = a.leading().unwrap().clone();
        // h <- g^delta / h^(delta-1)
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(gg.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.is_zero() {
            return BigInt::zero();
        }
    }
    let da = a.deg();
    let lb = b.leading().cloned().unwrap_or_default();
    // h <- lc(B)^deg(A) / h^(deg(A)-1)
    let hh = if da == 0 {
        BigInt::one()
    } else {
        num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
    };
    s * t * hh
}

/// Resultant as the determinant of the Sylvester matrix, by fraction-free
/// (Bareiss) elimination. Slower than [`resultant`]; kept as an independent route.
pub fn resultant_sylvester(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return domain("resultant of the zero polynomial");
    }
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    if size == 0 {
        return Ok(BigInt::one());
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows hold descending coefficients, shifted
    for i in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_floor(&prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Discriminant up to sign: `Res(f, f')` for monic `f`.
pub fn discriminant_abs(f: &IntPolynomial) -> Result<BigInt> {
    if f.deg() < 1 {
        return Ok(BigInt::one());
    }
    Ok(resultant(f, &f.derivative())?.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn known_values() {
        let phi12 = p("X^4 - X^2 + 1");
        assert_eq!(resultant(&phi12, &p("X - 1")).unwrap(), BigInt::from(1));
        assert_eq!(
            resultant(&p("X^2 - X + 1"), &p("X^2 + X + 1")).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(resultant(&phi12, &phi12).unwrap(), BigInt::zero());
        assert_eq!(
            resultant(&p("X - 3"), &p("X - 5")).unwrap(),
            BigInt::from(-2)
        );
        assert_eq!(resultant(&p("2"), &p("X^3 + 1")).unwrap(), BigInt::from(8));
        assert!(resultant(&IntPolynomial::zero(), &phi12).is_err());
    }

    #[test]
    fn routes_agree() {
        let polys = [
            "X^5 - 3X^2 + 7",
            "2X^3 + X - 4",
            "X^4 + X^3 - X + 9",
            "3X^2 - 6",
            "X^6 - X",
            "X - 1",
            "5",
        ];
        for a in polys {
            for b in polys {
                let (fa, fb) = (p(a), p(b));
                assert_eq!(
                    resultant(&fa, &fb).unwrap(),
                    resultant_sylvester(&fa, &fb).unwrap(),
                    "{a} / {b}"
                );
            }
        }
    }
}
