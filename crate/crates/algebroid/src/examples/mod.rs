//! Example families at finite scale and the groupoid and Hopf-algebra
//! infrastructure behind them.

pub mod constructors;
pub mod groupoid;
pub mod hopf;

pub use constructors::{
    build_convolution_algebroid, build_crossed_product, build_function_algebroid, build_tensor_algebroid, build_two_sided, convolution_integrals,
    crossed_integrals, function_integrals, pointwise, tensor_integrals, two_sided_integrals, unit_functions, StandardIntegrals, TwoSidedData,
};
pub use groupoid::{FiniteGroup, FiniteGroupoid, GroupoidJson};
pub use hopf::{build_group_hopf, verify_hopf, FiniteHopf, HopfAction, HopfFlavor};

use crate::algebra_core::FiniteAlgebra;
use crate::bialgebroid::{RegularMha, StarStructure};
use crate::error::{Error, Result};
use crate::exact_linear::{Field, LinearMap};
use crate::integration::{assemble_measured, BaseWeight, MeasuredMha};

/// Names accepted by [`named_example`].
pub const EXAMPLE_NAMES: &[&str] = &["function-algebroid", "convolution", "tensor", "crossed-product", "two-sided", "group-algebra"];

/// An instance together with its involution (if any) and default partial integrals.
#[derive(Clone, Debug)]
pub struct Example<F: Field> {
    pub mha: RegularMha<F>,
    pub star: Option<StarStructure<F>>,
    pub integrals: StandardIntegrals<F>,
    pub groupoid: Option<FiniteGroupoid>,
}

/// `F[Z/2]` acting on `F^{1,2}` by swapping the points.
pub fn swap_action<F: Field>() -> (FiniteAlgebra<F>, FiniteHopf<F>, HopfAction<F>) {
    let c = pointwise::<F>(2, vec!["p1".into(), "p2".into()]);
    let h = build_group_hopf::<F>(&FiniteGroup::cyclic(2), HopfFlavor::GroupAlgebra);
    let swap = LinearMap::from_fn(2, 2, |r, k| if r != k { F::one() } else { F::zero() });
    let act = HopfAction::of_group(vec![LinearMap::identity(2), swap]);
    (c, h, act)
}

/// `C = B = F^{1,2}`, `H = F[Z/2]` swapping on both sides, `S_B = S_C = ι`.
pub fn two_sided_swap<F: Field>() -> TwoSidedData<F> {
    let (c, h, act) = swap_action::<F>();
    TwoSidedData {
        b: c.clone(),
        c,
        h,
        left: act.clone(),
        right: act,
        s_b: LinearMap::identity(2),
        s_c: LinearMap::identity(2),
    }
}

/// Builds one of [`EXAMPLE_NAMES`]; groupoid examples default to the pair groupoid on two points.
pub fn named_example<F: Field>(name: &str, groupoid: Option<&FiniteGroupoid>) -> Result<Example<F>> {
    let g = groupoid.cloned().unwrap_or_else(|| FiniteGroupoid::pair(2));
    let ones = |k: usize| vec![F::one(); k];
    let with_star = |mha: RegularMha<F>, integrals, groupoid| Example {
        star: StarStructure::of(&mha.a),
        mha,
        integrals,
        groupoid,
    };
    Ok(match name {
        "function-algebroid" => with_star(build_function_algebroid(&g), function_integrals(&g, &ones(g.units.len())), Some(g)),
        "convolution" => with_star(build_convolution_algebroid(&g), convolution_integrals(&g, &ones(g.units.len())), Some(g)),
        "tensor" => {
            let b = pointwise::<F>(2, vec!["x1".into(), "x2".into()]);
            let c = pointwise::<F>(2, vec!["y1".into(), "y2".into()]);
            let id = LinearMap::identity(2);
            with_star(build_tensor_algebroid(&b, &c, &id, &id)?, tensor_integrals(2, 2, &ones(2), &ones(2)), None)
        }
        "crossed-product" => {
            let (c, h, act) = swap_action::<F>();
            let ints = crossed_integrals(c.dim(), &h);
            with_star(build_crossed_product(&c, &h, &act)?, ints, None)
        }
        "two-sided" => {
            let d = two_sided_swap::<F>();
            with_star(build_two_sided(&d)?, two_sided_integrals(&d, &ones(2), &ones(2)), None)
        }
        "group-algebra" => {
            let h = build_group_hopf::<F>(&FiniteGroup::cyclic(2), HopfFlavor::GroupAlgebra);
            let n = h.dim();
            let ints = StandardIntegrals {
                phi_c: LinearMap::from_rows(1, n, vec![h.phi.clone()]),
                psi_b: LinearMap::from_rows(1, n, vec![h.psi.clone()]),
            };
            let mut mha = h.as_algebroid();
            mha.name = "group-algebra".into();
            with_star(mha, ints, None)
        }
        other => return Err(Error::Invalid(format!("unknown example {other:?}; expected one of {}", EXAMPLE_NAMES.join(", ")))),
    })
}

/// A named example with its standard partial integrals and base weight `mu`
/// (uniform when absent) assembled into a measured algebroid.
pub fn measured_example<F: Field>(name: &str, groupoid: Option<&FiniteGroupoid>, mu: Option<&[F]>) -> Result<MeasuredMha<F>> {
    let ex = named_example::<F>(name, groupoid)?;
    let m = &ex.mha;
    let weight = match mu {
        Some(mu) if mu.len() == m.b.dim() && mu.len() == m.c.dim() => BaseWeight::symmetric(mu.to_vec()),
        Some(mu) => return Err(Error::Dimension(format!("weight of length {} for bases of dimension {} and {}", mu.len(), m.b.dim(), m.c.dim()))),
        None => BaseWeight::new(vec![F::one(); m.b.dim()], vec![F::one(); m.c.dim()]),
    };
    assemble_measured(m, &weight, &ex.integrals.phi_c, &ex.integrals.psi_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebroid::{derive_antipode, verify_regular_mha, verify_star};
    use crate::Rational;

    #[test]
    fn named_examples_are_regular_star_algebroids() {
        for name in EXAMPLE_NAMES {
            let ex = named_example::<Rational>(name, None).unwrap();
            let r = verify_regular_mha(&ex.mha);
            assert!(r.all_pass(), "{name}: {:?}", r.failures());
            let star = ex.star.as_ref().unwrap_or_else(|| panic!("{name} has no involution"));
            let r = verify_star(&ex.mha, star);
            assert!(r.all_pass(), "{name}: {:?}", r.failures());
        }
    }

    #[test]
    fn derived_antipode_matches_the_built_one() {
        for name in EXAMPLE_NAMES {
            let ex = named_example::<Rational>(name, None).unwrap();
            let derived = derive_antipode(&ex.mha).unwrap();
            assert_eq!(&derived, ex.mha.antipode().unwrap(), "{name}");
        }
    }

    #[test]
    fn unknown_name_is_invalid() {
        assert!(named_example::<Rational>("nope", None).is_err());
    }
}
