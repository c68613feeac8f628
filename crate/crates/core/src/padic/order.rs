//! p-maximal orders of `ℚ[X]/(f)` by the Round 2 algorithm, and the splitting
//! of `O ⊗ ℤ_p` into local components through idempotents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::linalg::{
    charpoly_mod, express_mod, hnf_with_modulus, left_kernel_mod, rank_mod, solve_upper,
};
use crate::arith::{inv_mod, mul_mod};
use crate::error::{internal, Result};
use crate::intpoly::IntPolynomial;
use crate::modp::{factor_mod_p, ModPolynomial};

type Table = Vec<Vec<Vec<BigInt>>>;
type TableP = Vec<Vec<Vec<u64>>>;

/// An order given by a ℤ-basis `basis[i] / den` in power-basis coordinates,
/// together with its multiplication table in that basis.
pub(crate) struct Order {
    f: IntPolynomial,
    n: usize,
    den: BigInt,
    basis: Vec<Vec<BigInt>>,
    table: Table,
}

/// Product of two power-basis vectors modulo the monic `f`.
fn mul_power(a: &[BigInt], b: &[BigInt], f: &IntPolynomial) -> Vec<BigInt> {
    let n = f.deg();
    let mut prod = vec![BigInt::zero(); 2 * n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (n..2 * n).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            prod[k - n + i] -= &c * f.coeff(i);
        }
    }
    prod.truncate(n);
    prod
}

fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

fn to_u64(v: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    v.iter()
        .map(|x| x.mod_floor(&bp).to_u64().unwrap())
        .collect()
}

fn from_u64(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl Order {
    fn equation(f: &IntPolynomial) -> Self {
        let n = f.deg();
        Self::new(
            f,
            BigInt::one(),
            (0..n).map(|i| unit_vector(n, i)).collect(),
        )
    }

    fn new(f: &IntPolynomial, den: BigInt, basis: Vec<Vec<BigInt>>) -> Self {
        let n = f.deg();
        let mut o = Order {
            f: f.clone(),
            n,
            den,
            basis,
            table: Vec::new(),
        };
        let den2 = &o.den * &o.den;
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let prod = mul_power(&o.basis[i], &o.basis[j], f);
                row.push(
                    o.coords(&prod, &den2)
                        .expect("an order is closed under products"),
                );
            }
            table.push(row);
        }
        o.table = table;
        o
    }

    /// Coordinates of `num / den` (power basis) in the order basis, if it lies in the order.
    fn coords(&self, num: &[BigInt], den: &BigInt) -> Option<Vec<BigInt>> {
        let mut w = Vec::with_capacity(self.n);
        for x in num {
            let (q, r) = (x * &self.den).div_rem(den);
            if !r.is_zero() {
                return None;
            }
            w.push(q);
        }
        solve_upper(&self.basis, &w)
    }

    fn table_mod(&self, p: u64) -> TableP {
        self.table
            .iter()
            .map(|row| row.iter().map(|v| to_u64(v, p)).collect())
            .collect()
    }

    fn one(&self) -> Vec<BigInt> {
        self.coords(&unit_vector(self.n, 0), &BigInt::one())
            .unwrap()
    }

    fn generator(&self) -> Vec<BigInt> {
        self.coords(&unit_vector(self.n, 1.min(self.n - 1)), &BigInt::one())
            .unwrap()
    }

    fn mul_big(&self, a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &xy * t;
                    }
                }
            }
        }
        out.iter().map(|x| x.mod_floor(m)).collect()
    }

    /// Radical of `O/pO` lifted to `O`, as an HNF basis in order coordinates.
    fn radical(&self, p: u64, tp: &TableP) -> Vec<Vec<BigInt>> {
        let n = self.n;
        let kernel = if p as u128 > n as u128 {
            // for p > n the radical is the kernel of the trace form
            let tr: Vec<u64> = (0..n)
                .map(|m| (0..n).fold(0, |acc, j| (acc + tp[m][j][j]) % p))
                .collect();
            let gram: Vec<Vec<u64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n).fold(0, |acc, m| (acc + mul_mod(tp[i][j][m], tr[m], p)) % p)
                        })
                        .collect()
                })
                .collect();
            left_kernel_mod(&gram, p)
        } else {
            let mut q = p;
            let mut j = 1;
            while (q as usize) < n {
                q *= p;
                j += 1;
            }
            let rows: Vec<Vec<u64>> = (0..n)
                .map(|i| {
                    let mut v = vec![0u64; n];
                    v[i] = 1;
                    for _ in 0..j {
                        v = pow_p(tp, &v, p, p);
                    }
                    v
                })
                .collect();
            left_kernel_mod(&rows, p)
        };
        let gens: Vec<Vec<BigInt>> = kernel.iter().map(|v| from_u64(v)).collect();
        hnf_with_modulus(&gens, n, &BigInt::from(p))
    }

    /// One enlargement step; `None` when the order is already p-maximal.
    fn enlarge(&self, p: u64) -> Option<Order> {
        let n = self.n;
        let tp = self.table_mod(p);
        let rad = self.radical(p, &tp);
        // β ↦ (coordinates of β γ_k in the radical basis, mod p)
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row = Vec::with_capacity(n * n);
                for g in &rad {
                    let mut v = vec![BigInt::zero(); n];
                    for (l, gl) in g.iter().enumerate() {
                        if gl.is_zero() {
                            continue;
                        }
                        for (k, t) in self.table[i][l].iter().enumerate() {
                            v[k] += gl * t;
                        }
                    }
                    let c = solve_upper(&rad, &v).expect("the radical is an ideal");
                    row.extend(to_u64(&c, p));
                }
                row
            })
            .collect();
        let kernel = left_kernel_mod(&rows, p);
        if kernel.is_empty() {
            return None;
        }
        let gens: Vec<Vec<BigInt>> = kernel.iter().map(|v| from_u64(v)).collect();
        let u = hnf_with_modulus(&gens, n, &BigInt::from(p));
        // new basis rows u·B / (p·den) in power coordinates
        let new_den = &self.den * p;
        let rows: Vec<Vec<BigInt>> = u
            .iter()
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).map(|k| &r[k] * &self.basis[k][c]).sum())
                    .collect()
            })
            .collect();
        let mut basis = hnf_with_modulus(&rows, n, &new_den);
        let mut g = new_den.clone();
        for row in &basis {
            for x in row {
                g = g.gcd(x);
            }
        }
        for row in basis.iter_mut() {
            for x in row.iter_mut() {
                *x = &*x / &g;
            }
        }
        Some(Order::new(&self.f, new_den / g, basis))
    }
}

fn mul_p(t: &TableP, a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; n];
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n {
            if b[j] == 0 {
                continue;
            }
            let ab = mul_mod(a[i], b[j], p);
            for (k, &c) in t[i][j].iter().enumerate() {
                if c != 0 {
                    out[k] = (out[k] + mul_mod(ab, c, p)) % p;
                }
            }
        }
    }
    out
}

fn pow_p(t: &TableP, a: &[u64], mut e: u64, p: u64) -> Vec<u64> {
    let n = a.len();
    let mut result: Option<Vec<u64>> = None;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => mul_p(t, &r, &base, p),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mul_p(t, &base, &base, p);
        }
    }
    result.unwrap_or_else(|| {
        let mut v = vec![0u64; n];
        v[0] = 1;
        v
    })
}

/// The p-maximal order containing `ℤ[X]/(f)`.
pub(crate) fn p_maximal_order(f: &IntPolynomial, p: u64) -> Order {
    let mut o = Order::equation(f);
    while let Some(next) = o.enlarge(p) {
        o = next;
    }
    o
}

/// One local component of `O ⊗ ℤ_p`: the monic factor of `f` over `ℚ_p`
/// modulo `p^k` with its residue degree and ramification index.
pub(crate) struct Component {
    pub degree: usize,
    pub residue_degree: usize,
    pub approx: IntPolynomial,
}

/// Splits `f` over `ℚ_p` through the primitive idempotents of `O/pO`, where
/// `O` is the p-maximal order. Factors are returned modulo `p^k`.
pub(crate) fn split_components(f: &IntPolynomial, p: u64, k: u32) -> Result<Vec<Component>> {
    let o = p_maximal_order(f, p);
    let n = o.n;
    let tp = o.table_mod(p);
    let one = to_u64(&o.one(), p);
    // Berlekamp subalgebra {α : α^p = α} of O/pO, spanned by the idempotents
    let frob: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut v = vec![0u64; n];
            v[i] = 1;
            let mut w = pow_p(&tp, &v, p, p);
            w[i] = (w[i] + p - 1) % p;
            w
        })
        .collect();
    let berlekamp = left_kernel_mod(&frob, p);
    let mut idem = vec![one.clone()];
    for b in &berlekamp {
        let mut next = Vec::new();
        for e in &idem {
            next.extend(split_idempotent(&tp, b, e, p)?);
        }
        idem = next;
    }
    if idem.len() != berlekamp.len() {
        return internal("idempotent splitting did not separate all components");
    }
    let rad = o.radical(p, &tp);
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let x = o.generator();
    let mut out = Vec::with_capacity(idem.len());
    let mut total = 0;
    for e in &idem {
        let span: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let mut v = vec![0u64; n];
                v[j] = 1;
                mul_p(&tp, e, &v, p)
            })
            .collect();
        let ni = rank_mod(&span, p);
        let in_rad: Vec<Vec<u64>> = rad
            .iter()
            .map(|g| mul_p(&tp, e, &to_u64(g, p), p))
            .collect();
        let fi = ni - rank_mod(&in_rad, p);
        let big_e = lift_idempotent(&o, &from_u64(e), &pk)?;
        let a = o.mul_big(&x, &big_e, &pk);
        let mat: Vec<Vec<BigInt>> = (0..n)
            .map(|j| o.mul_big(&a, &unit_vector(n, j), &pk))
            .collect();
        let cp = charpoly_mod(&mat, &pk);
        if cp[..n - ni].iter().any(|c| !c.is_zero()) {
            return internal("component characteristic polynomial has a nonzero tail");
        }
        let approx = IntPolynomial::new(cp[n - ni..].to_vec());
        total += ni;
        out.push(Component {
            degree: ni,
            residue_degree: fi,
            approx,
        });
    }
    if total != n {
        return internal("local component degrees do not add up");
    }
    Ok(out)
}

/// Splits the idempotent `e` using the Berlekamp element `b`.
fn split_idempotent(tp: &TableP, b: &[u64], e: &[u64], p: u64) -> Result<Vec<Vec<u64>>> {
    let be = mul_p(tp, b, e, p);
    let mut powers = vec![e.to_vec()];
    let coeffs = loop {
        let next = mul_p(tp, powers.last().unwrap(), &be, p);
        if let Some(c) = express_mod(&powers, &next, p) {
            break c;
        }
        powers.push(next);
    };
    if powers.len() == 1 {
        return Ok(vec![e.to_vec()]);
    }
    // minimal polynomial X^d - Σ c_i X^i
    let mut mp: Vec<u64> = coeffs.iter().map(|&c| (p - c) % p).collect();
    mp.push(1);
    let roots: Vec<u64> = factor_mod_p(&ModPolynomial::new(p, mp))
        .into_iter()
        .map(|(g, m)| {
            if g.deg() == 1 && m == 1 {
                Ok((p - g.coeff(0)) % p)
            } else {
                internal("Berlekamp element with a non-split minimal polynomial")
            }
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(roots.len());
    for &c in &roots {
        let mut acc = e.to_vec();
        for &c2 in &roots {
            if c2 == c {
                continue;
            }
            // (be - c2 e) / (c - c2)
            let inv = inv_mod((c + p - c2) % p, p);
            let factor: Vec<u64> = be
                .iter()
                .zip(e)
                .map(|(&x, &y)| mul_mod((x + p - mul_mod(c2, y, p)) % p, inv, p))
                .collect();
            acc = mul_p(tp, &acc, &factor, p);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Lifts an idempotent of `O/pO` to `O/p^kO` by `e ↦ 3e² - 2e³`.
fn lift_idempotent(o: &Order, e: &[BigInt], pk: &BigInt) -> Result<Vec<BigInt>> {
    let mut e = e.to_vec();
    for _ in 0..64 {
        let e2 = o.mul_big(&e, &e, pk);
        if e2 == e {
            return Ok(e);
        }
        let e3 = o.mul_big(&e2, &e, pk);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(a, b)| -> BigInt { (a * 3u32 - b * 2u32).mod_floor(pk) })
            .collect();
    }
    internal("idempotent lifting did not converge")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn index_of(o: &Order) -> BigInt {
        // [O : ℤ[x]] = den^n / ∏ pivots
        let n = o.n;
        let piv: BigInt = (0..n).map(|i| o.basis[i][i].clone()).product();
        num_traits::pow(o.den.clone(), n) / piv
    }

    #[test]
    fn maximal_order_indices() {
        // X^2 - 5: ℤ[(1+√5)/2] has index 2
        assert_eq!(
            index_of(&p_maximal_order(&p("X^2 - 5"), 2)),
            BigInt::from(2)
        );
        assert_eq!(index_of(&p_maximal_order(&p("X^2 - 5"), 5)), BigInt::one());
        // X^2 - 12 = 4·3: index 2 at p = 2
        assert_eq!(
            index_of(&p_maximal_order(&p("X^2 - 12"), 2)),
            BigInt::from(2)
        );
        // ℤ[2∛3] sits inside ℤ[∛3] with index 8
        assert_eq!(
            index_of(&p_maximal_order(&p("X^3 - 24"), 2)),
            BigInt::from(8)
        );
    }

    #[test]
    fn components_of_small_examples() {
        // X^2 - 11X + 1 splits over ℚ_3 into two linear factors
        let comps = split_components(&p("X^2 - 11X + 1"), 3, 5).unwrap();
        assert_eq!(comps.len(), 2);
        // Φ_9 is totally ramified at 3
        let comps = split_components(&p("X^6 + X^3 + 1"), 3, 3).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].degree, comps[0].residue_degree), (6, 1));
        // X^2 + 1 at 5 splits, at 3 stays inert, at 2 ramifies
        assert_eq!(split_components(&p("X^2 + 1"), 5, 2).unwrap().len(), 2);
        let c = split_components(&p("X^2 + 1"), 3, 2).unwrap();
        assert_eq!((c.len(), c[0].residue_degree), (1, 2));
        let c = split_components(&p("X^2 + 1"), 2, 4).unwrap();
        assert_eq!((c.len(), c[0].residue_degree), (1, 1));
    }
}
