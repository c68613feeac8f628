//! Integer polynomials: arithmetic, parsing, resultants, Sturm sequences,
//! factorisation over ℚ and the `*`-symmetric structure.

pub(crate) mod poly;

mod factor;
mod resultant;
mod sturm;
mod symmetric;

pub use factor::{factor_over_q, is_irreducible_over_q, squarefree_decomposition};
pub use poly::{parse_polynomial, IntPolynomial, RatPolynomial, MAX_DEGREE};
pub use resultant::{bareiss_det, discriminant_abs, resultant, resultant_sylvester};
pub use sturm::{cauchy_bound, isolate_real_roots, sturm_count, sturm_sequence, Bound};
pub use symmetric::{
    circle_profile, classify_symmetry, decompose, e_sign, star, star_integral, symmetric_lift,
    trace_polynomial, CircleProfile, SymmetricDecomposition, Symmetry,
};
