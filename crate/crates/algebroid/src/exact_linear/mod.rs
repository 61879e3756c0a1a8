//! Exact scalars, dense linear maps and quotient spaces.

pub mod field;
pub mod linear;
pub mod quotient;
pub mod scalar;

pub use field::{format_rational, parse_rational, Field};
pub use linear::{in_span, is_zero_vec, same_span, span_rank, unit_vec, vec_add, vec_scale, vec_sub, LinearMap};
pub use quotient::{quotient_by, QuotientSpace};
pub use scalar::{Extension, Scalar};

/// Some `x` with `map(x) = target`.
pub fn solve_linear<F: Field>(map: &LinearMap<F>, target: &[F]) -> Option<Vec<F>> {
    map.solve(target)
}

/// Basis of `ker(map)`.
pub fn kernel<F: Field>(map: &LinearMap<F>) -> Vec<Vec<F>> {
    map.kernel()
}
