//! Modifiers of multiplier Hopf algebroids, the modified structures they
//! produce, and the Radon-Nikodym cocycle recipes that repair non-counital
//! base weights.

use serde_json::{json, Value};

use crate::algebra_core::{automorphism_failure, FiniteAlgebra, Subalgebra};
use crate::balanced_tensor::apply_legs;
use crate::bialgebroid::{derive_antipode, verify_regular_mha, verify_star, MhaParts, RegularMha, StarStructure};
use crate::error::{Error, Result};
use crate::examples::{build_convolution_algebroid, build_crossed_product, build_two_sided, convolution_integrals, crossed_integrals, two_sided_integrals};
use crate::examples::{FiniteGroupoid, FiniteHopf, HopfAction, TwoSidedData};
use crate::exact_linear::scalar::split_square;
use crate::exact_linear::{same_span, unit_vec, vec_add, vec_scale, Extension, Field, LinearMap};
use crate::integration::{assemble_measured, check_base_weight, eval, BaseWeight, IntegralEquations, IntegralSide, MeasuredMha};
use crate::report::{compare, vec_json, Report};
use crate::structure_theory::{element_inverse, modular_automorphism, restricted, Convolutions};

fn inverse_of<F: Field>(f: &LinearMap<F>, what: &str) -> Result<LinearMap<F>> {
    f.inverse().ok_or_else(|| Error::Invalid(format!("{what} not invertible")))
}

fn matrix_diff<F: Field>(what: &str, x: &LinearMap<F>, y: &LinearMap<F>) -> Option<Value> {
    if x == y {
        return None;
    }
    let col = (0..x.dom().min(y.dom())).find(|&i| x.column(i) != y.column(i));
    Some(json!({ "map": what, "column": col }))
}

/// `(θ, Θ_λ, Θ_ρ)` for a left multiplier bialgebroid; for the right one the
/// same shape holds `(θ, _ρΘ, _λΘ)` with `θ` acting on `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftModifier<F: Field> {
    /// Automorphism of the base, in base coordinates.
    pub theta: LinearMap<F>,
    /// The component compatible with the source map.
    pub source: LinearMap<F>,
    /// The component compatible with the target map.
    pub target: LinearMap<F>,
}

pub type RightModifier<F> = LeftModifier<F>;

/// `(Θ_λ, Θ_ρ, _λΘ, _ρΘ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Modifier<F: Field> {
    pub theta_lambda: LinearMap<F>,
    pub theta_rho: LinearMap<F>,
    pub lambda_theta: LinearMap<F>,
    pub rho_theta: LinearMap<F>,
}

impl<F: Field> Modifier<F> {
    pub fn identity(n: usize) -> Self {
        let id = LinearMap::identity(n);
        Self {
            theta_lambda: id.clone(),
            theta_rho: id.clone(),
            lambda_theta: id.clone(),
            rho_theta: id,
        }
    }

    /// Only the left comultiplication is changed.
    pub fn left_only(theta_lambda: LinearMap<F>, theta_rho: LinearMap<F>) -> Self {
        let id = LinearMap::identity(theta_lambda.dom());
        Self {
            theta_lambda,
            theta_rho,
            lambda_theta: id.clone(),
            rho_theta: id,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.components().iter().all(|c| c.is_identity())
    }

    fn components(&self) -> [&LinearMap<F>; 4] {
        [&self.theta_lambda, &self.theta_rho, &self.lambda_theta, &self.rho_theta]
    }

    /// `(Θ_λΘ′_λ, Θ′_ρΘ_ρ, _λΘ′_λΘ, _ρΘ_ρΘ′)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            theta_lambda: self.theta_lambda.compose(&other.theta_lambda),
            theta_rho: other.theta_rho.compose(&self.theta_rho),
            lambda_theta: other.lambda_theta.compose(&self.lambda_theta),
            rho_theta: self.rho_theta.compose(&other.rho_theta),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        Some(Self {
            theta_lambda: self.theta_lambda.inverse()?,
            theta_rho: self.theta_rho.inverse()?,
            lambda_theta: self.lambda_theta.inverse()?,
            rho_theta: self.rho_theta.inverse()?,
        })
    }

    /// The modifier of the modification by `base` that corresponds to `self`:
    /// every component is composed with the inverse of the one in `base`.
    pub fn translated(&self, base: &Self) -> Option<Self> {
        Some(Self {
            theta_lambda: self.theta_lambda.compose(&base.theta_lambda.inverse()?),
            theta_rho: self.theta_rho.compose(&base.theta_rho.inverse()?),
            lambda_theta: self.lambda_theta.compose(&base.lambda_theta.inverse()?),
            rho_theta: self.rho_theta.compose(&base.rho_theta.inverse()?),
        })
    }

    pub fn left(&self, m: &RegularMha<F>) -> Option<LeftModifier<F>> {
        Some(LeftModifier {
            theta: restricted(&self.theta_lambda, &m.b)?,
            source: self.theta_lambda.clone(),
            target: self.theta_rho.clone(),
        })
    }

    pub fn right(&self, m: &RegularMha<F>) -> Option<RightModifier<F>> {
        Some(LeftModifier {
            theta: restricted(&self.rho_theta, &m.c)?,
            source: self.rho_theta.clone(),
            target: self.lambda_theta.clone(),
        })
    }

    pub fn is_trivial_on_base(&self, m: &RegularMha<F>) -> bool {
        let fixes = |s: &Subalgebra<F>| (0..s.dim()).all(|k| self.components().iter().all(|c| c.apply(&s.basis_element(k)) == s.basis_element(k)));
        fixes(&m.b) && fixes(&m.c)
    }

    /// `∗∘Θ_λ = _λΘ∘∗` and `∗∘Θ_ρ = _ρΘ∘∗`; `None` without an involution.
    pub fn is_self_adjoint(&self, a: &FiniteAlgebra<F>) -> Option<bool> {
        a.involution()?;
        let ok = (0..a.dim()).all(|i| {
            let e = a.basis(i);
            a.star(&self.theta_lambda.column(i)) == self.lambda_theta.apply(&a.star(&e)) && a.star(&self.theta_rho.column(i)) == self.rho_theta.apply(&a.star(&e))
        });
        Some(ok)
    }
}

/// Raw data of the modification: `S̃_B = S_B∘θ⁻¹`, `Δ̃_B = (Θ_λ⊗ι)Δ_B`,
/// `Δ̃_C = (_λΘ⊗ι)Δ_C`, `ε̃_B = ε_B∘Θ_ρ⁻¹`, `ε̃_C = ε_C∘_λΘ⁻¹`,
/// `S̃ = Θ_ρ∘S∘_ρΘ⁻¹`.
pub fn modified_parts<F: Field>(m: &RegularMha<F>, md: &Modifier<F>) -> Result<MhaParts<F>> {
    let theta_b = restricted(&md.theta_lambda, &m.b).ok_or_else(|| Error::rejected("Θ_λ(B) = B", "theta-base", json!("Θ_λ does not preserve B")))?;
    let theta_c = restricted(&md.rho_theta, &m.c).ok_or_else(|| Error::rejected("_ρΘ(C) = C", "modifier-right", json!("_ρΘ does not preserve C")))?;
    let id = LinearMap::identity(m.dim());
    let theta_rho_inv = inverse_of(&md.theta_rho, "Θ_ρ")?;
    let lambda_theta_inv = inverse_of(&md.lambda_theta, "_λΘ")?;
    let rho_theta_inv = inverse_of(&md.rho_theta, "_ρΘ")?;
    let mut parts = m.parts();
    parts.name = format!("modified {}", m.name);
    parts.s_b = m.s_b.compose(&inverse_of(&theta_b, "Θ_λ on B")?);
    parts.s_c = m.s_c.compose(&inverse_of(&theta_c, "_ρΘ on C")?);
    parts.delta_b = (0..m.dim()).map(|i| apply_legs(&m.rep_b(i), &md.theta_lambda, &id)).collect();
    parts.delta_c = (0..m.dim()).map(|i| apply_legs(&m.rep_c(i), &md.lambda_theta, &id)).collect();
    parts.eps_b = m.eps_b.as_ref().map(|e| e.compose(&theta_rho_inv));
    parts.eps_c = m.eps_c.as_ref().map(|e| e.compose(&lambda_theta_inv));
    parts.antipode = m.antipode.as_ref().map(|s| md.theta_rho.compose(s).compose(&rho_theta_inv));
    Ok(parts)
}

/// Every modifier axiom, plus the consequences that hold for full
/// algebroids (all finite unital instances are full).
pub fn check_modifier<F: Field>(m: &RegularMha<F>, md: &Modifier<F>) -> Result<Report> {
    let n = m.dim();
    let a = &m.a;
    let mut r = Report::new();
    if md.components().iter().any(|c| c.cod() != n || c.dom() != n) {
        return Err(Error::Dimension(format!("modifier components must be {n}×{n}")));
    }
    r.record("Θ_λ automorphism", "theta-base", automorphism_failure(a, &md.theta_lambda, false));
    r.record("Θ_ρ automorphism", "theta-base", automorphism_failure(a, &md.theta_rho, false));
    r.record("_λΘ automorphism", "modifier-right", automorphism_failure(a, &md.lambda_theta, false));
    r.record("_ρΘ automorphism", "modifier-right", automorphism_failure(a, &md.rho_theta, false));
    let (Some(left), Some(right)) = (md.left(m), md.right(m)) else {
        r.record("Θ_λ(B) = B and _ρΘ(C) = C", "theta-base", Some(json!({ "B": md.left(m).is_some(), "C": md.right(m).is_some() })));
        return Ok(r);
    };
    if !r.all_pass() {
        return Ok(r);
    }
    let (Some(tb_inv), Some(tc_inv)) = (left.theta.inverse(), right.theta.inverse()) else {
        r.fail("θ invertible", "theta-base", json!("restriction to the base is singular"));
        return Ok(r);
    };
    let (db, dc) = (m.b.dim(), m.c.dim());
    r.check("Θ_ρ∘t = t∘θ⁻¹", "theta-base", 0..db, |k| {
        let x = unit_vec(db, k);
        compare(json!({ "x": k }), &md.theta_rho.apply(&m.t_elem(&x)), &m.t_elem(&tb_inv.apply(&x)))
    });
    r.check("_λΘ∘S_C = S_C∘θ⁻¹", "modifier-right", 0..dc, |k| {
        let y = unit_vec(dc, k);
        compare(json!({ "y": k }), &md.lambda_theta.apply(&m.sc_elem(&y)), &m.sc_elem(&tc_inv.apply(&y)))
    });
    r.check("Θ_ρ∘S_B∘Θ_λ = S_B", "modifier-antipode-base", 0..db, |k| {
        let x = unit_vec(db, k);
        compare(json!({ "x": k }), &md.theta_rho.apply(&m.t_elem(&left.theta.apply(&x))), &m.t_elem(&x))
    });
    r.check("_λΘ∘S_C∘_ρΘ = S_C", "modifier-antipode-base", 0..dc, |k| {
        let y = unit_vec(dc, k);
        compare(json!({ "y": k }), &md.lambda_theta.apply(&m.sc_elem(&right.theta.apply(&y))), &m.sc_elem(&y))
    });

    let tilde = RegularMha::new(modified_parts(m, md)?)?;
    let id = LinearMap::identity(n);
    let (tb, tc) = (&tilde.tensors.target_b, &tilde.tensors.target_c);
    r.check("(Θ_λ⊗ι)Δ_B = (ι⊗Θ_ρ)Δ_B", "theta-comultiplication", 0..n, |i| {
        compare(json!({ "a": i }), &tb.project(&apply_legs(&m.rep_b(i), &md.theta_lambda, &id)), &tb.project(&apply_legs(&m.rep_b(i), &id, &md.theta_rho)))
    });
    r.check("(_λΘ⊗ι)Δ_C = (ι⊗_ρΘ)Δ_C", "modifier-right", 0..n, |i| {
        compare(json!({ "a": i }), &tc.project(&apply_legs(&m.rep_c(i), &md.lambda_theta, &id)), &tc.project(&apply_legs(&m.rep_c(i), &id, &md.rho_theta)))
    });

    let fixes = |f: &LinearMap<F>, s: &Subalgebra<F>| (0..s.dim()).find_map(|k| compare(json!({ "base": k }), &f.apply(&s.basis_element(k)), &s.basis_element(k)));
    r.record("Θ_λ∘t = t and Θ_ρ∘s = s", "modified-full", fixes(&md.theta_lambda, &m.c).or_else(|| fixes(&md.theta_rho, &m.b)));
    r.record("_ρΘ∘t = t and _λΘ∘s = s", "modified-full", fixes(&md.rho_theta, &m.b).or_else(|| fixes(&md.lambda_theta, &m.c)));
    let (ob, oc) = (&m.tensors.target_b, &m.tensors.target_c);
    r.check("Δ_B∘Θ_λ = (ι⊗Θ_λ)Δ_B and Δ_B∘Θ_ρ = (Θ_ρ⊗ι)Δ_B", "modified-full", 0..n, |i| {
        compare(json!({ "a": i, "map": "Θ_λ" }), &m.delta_b.apply(&md.theta_lambda.column(i)), &ob.project(&apply_legs(&m.rep_b(i), &id, &md.theta_lambda)))
            .or_else(|| compare(json!({ "a": i, "map": "Θ_ρ" }), &m.delta_b.apply(&md.theta_rho.column(i)), &ob.project(&apply_legs(&m.rep_b(i), &md.theta_rho, &id))))
    });
    r.check("Δ_C∘_ρΘ = (_ρΘ⊗ι)Δ_C and Δ_C∘_λΘ = (ι⊗_λΘ)Δ_C", "modified-full", 0..n, |i| {
        compare(json!({ "a": i, "map": "_ρΘ" }), &m.delta_c.apply(&md.rho_theta.column(i)), &oc.project(&apply_legs(&m.rep_c(i), &md.rho_theta, &id)))
            .or_else(|| compare(json!({ "a": i, "map": "_λΘ" }), &m.delta_c.apply(&md.lambda_theta.column(i)), &oc.project(&apply_legs(&m.rep_c(i), &id, &md.lambda_theta))))
    });
    r.info("trivial on the base", "modifier-self-adjoint", json!(md.is_trivial_on_base(m)));
    if let Some(sa) = md.is_self_adjoint(a) {
        r.info("self-adjoint", "modifier-self-adjoint", json!(sa));
    }
    Ok(r)
}

/// The modified algebroid with its verification.
#[derive(Clone, Debug)]
pub struct Modification<F: Field> {
    pub mha: RegularMha<F>,
    pub modifier: Modifier<F>,
    pub report: Report,
}

pub fn modify<F: Field>(m: &RegularMha<F>, md: &Modifier<F>) -> Result<Modification<F>> {
    let mut r = check_modifier(m, md)?;
    if let Some(e) = r.failures().first() {
        return Err(Error::rejected(&e.axiom, &e.paper_eq, e.witness.clone().unwrap_or(Value::Null)));
    }
    let tilde = RegularMha::new(modified_parts(m, md)?)?;
    let n = m.dim();
    let id = LinearMap::identity(n);
    let verified = verify_regular_mha(&tilde);
    let first = verified.failures().first().map(|e| json!({ "axiom": e.axiom, "label": e.paper_eq, "witness": e.witness }));
    r.extend_prefixed("modified: ", verified);
    r.record("modification is a regular multiplier Hopf algebroid", "modification", first);

    let left = md.left(m).expect("checked");
    let right = md.right(m).expect("checked");
    if let (Some(eb), Some(ec)) = (&m.eps_b, &m.eps_c) {
        let lhs = left.theta.compose(eb).compose(&inverse_of(&md.theta_lambda, "Θ_λ")?);
        r.record("ε̃_B = ε_B∘Θ_ρ⁻¹ = θ∘ε_B∘Θ_λ⁻¹", "modified-lt-counit", matrix_diff("ε̃_B", &lhs, tilde.eps_b()?));
        let rhs = right.theta.compose(ec).compose(&inverse_of(&md.rho_theta, "_ρΘ")?);
        r.record("ε̃_C = ε_C∘_λΘ⁻¹ = θ∘ε_C∘_ρΘ⁻¹", "modified-rt-counit", matrix_diff("ε̃_C", &rhs, tilde.eps_c()?));
    }
    if let Some(s) = &m.antipode {
        let other = md.lambda_theta.compose(s).compose(&inverse_of(&md.theta_lambda, "Θ_λ")?);
        r.record("S̃ = Θ_ρ∘S∘_ρΘ⁻¹ = _λΘ∘S∘Θ_λ⁻¹", "modified-antipode", matrix_diff("S̃", &other, tilde.antipode()?));
        match derive_antipode(&tilde) {
            Ok(d) => {
                r.record("S̃ is the antipode of the modification", "modified-antipode", matrix_diff("derived", &d, tilde.antipode()?));
            }
            Err(e) => r.fail("S̃ is the antipode of the modification", "modified-antipode", json!(e.to_string())),
        }
    }
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let (tb, tc) = (&tilde.tensors.target_b, &tilde.tensors.target_c);
    r.check("T̃_λ = (ι⊗Θ_ρ)T_λ", "theta-tl", pairs(), |(i, j)| {
        compare(json!({ "a": i, "b": j }), &tb.project(&apply_legs(&tilde.rep_b(j), m.rmap(i), &id)), &tb.project(&apply_legs(&m.rep_b(j), m.rmap(i), &md.theta_rho)))
    });
    r.check("T̃_ρ = (Θ_λ⊗ι)T_ρ", "theta-tr", pairs(), |(i, j)| {
        compare(json!({ "a": i, "b": j }), &tb.project(&apply_legs(&tilde.rep_b(i), &id, m.rmap(j))), &tb.project(&apply_legs(&m.rep_b(i), &md.theta_lambda, m.rmap(j))))
    });
    r.check("(Θ_λ, θ) and (Θ_ρ, ι) are isomorphisms onto the modification", "modified-isomorphism", 0..n, |i| {
        [&md.theta_lambda, &md.theta_rho].iter().find_map(|f| compare(json!({ "a": i }), &tilde.delta_b.apply(&f.column(i)), &tb.project(&apply_legs(&m.rep_b(i), f, f))))
    });
    r.check("(_λΘ, ι) and (_ρΘ, θ) are isomorphisms onto the modification", "modified-isomorphism", 0..n, |i| {
        [&md.lambda_theta, &md.rho_theta].iter().find_map(|f| compare(json!({ "a": i }), &tilde.delta_c.apply(&f.column(i)), &tc.project(&apply_legs(&m.rep_c(i), f, f))))
    });
    if md.is_self_adjoint(&m.a) == Some(true) {
        if let Some(star) = StarStructure::of(&tilde.a) {
            let sr = verify_star(&tilde, &star);
            r.record("self-adjoint modifier preserves the involution", "modification", sr.failures().first().map(|e| json!(e.axiom)));
        }
    }
    if md.is_trivial_on_base(m) {
        let before = IntegralEquations::new(m)?;
        let after = IntegralEquations::new(&tilde)?;
        for side in [IntegralSide::Left, IntegralSide::Right] {
            let cols = |v: Vec<LinearMap<F>>| v.iter().map(|x| x.rows().concat()).collect::<Vec<_>>();
            let (u, w) = (cols(before.solve(side)), cols(after.solve(side)));
            let dim = u.first().or(w.first()).map_or(0, |v| v.len());
            r.record(&format!("partial integrals unchanged ({side:?})"), "modification-integrals", (!same_span(dim, &u, &w)).then(|| json!({ "before": u.len(), "after": w.len() })));
        }
    }
    Ok(Modification { mha: tilde, modifier: md.clone(), report: r })
}

/// Componentwise comparison of two algebroids on the same algebra and bases.
pub fn structure_difference<F: Field>(x: &RegularMha<F>, y: &RegularMha<F>) -> Option<Value> {
    matrix_diff("S_B", &x.s_b, &y.s_b)
        .or_else(|| matrix_diff("S_C", &x.s_c, &y.s_c))
        .or_else(|| matrix_diff("Δ_B", &x.delta_b, &y.delta_b))
        .or_else(|| matrix_diff("Δ_C", &x.delta_c, &y.delta_c))
        .or_else(|| (x.eps_b != y.eps_b).then(|| json!("ε_B")))
        .or_else(|| (x.eps_c != y.eps_c).then(|| json!("ε_C")))
        .or_else(|| (x.antipode != y.antipode).then(|| json!("S")))
}

/// Group law: the product of two modifiers is a modifier, and modifying in two
/// steps with the translated second modifier equals modifying once.
pub fn check_group_law<F: Field>(m: &RegularMha<F>, m1: &Modifier<F>, m2: &Modifier<F>) -> Result<Report> {
    let mut r = Report::new();
    let prod = m1.compose(m2);
    let pr = check_modifier(m, &prod)?;
    r.record("product of modifiers is a modifier", "modifier-group", pr.failures().first().map(|e| json!(e.axiom)));
    let inv = m1.inverse().ok_or_else(|| Error::Invalid("modifier not invertible".into()))?;
    let ir = check_modifier(m, &inv)?;
    r.record("inverse of a modifier is a modifier", "modifier-group", ir.failures().first().map(|e| json!(e.axiom)));
    if !pr.all_pass() {
        return Ok(r);
    }
    let once = modify(m, &prod)?;
    let step = modify(m, m1)?;
    let translated = prod.translated(m1).ok_or_else(|| Error::Invalid("modifier not invertible".into()))?;
    let tr = check_modifier(&step.mha, &translated)?;
    r.record("translated modifier is a modifier of the modification", "modifier-group", tr.failures().first().map(|e| json!(e.axiom)));
    if tr.all_pass() {
        let twice = modify(&step.mha, &translated)?;
        r.record("modify(modify(A, m₁), m′) = modify(A, m₁m₂)", "modifier-group", structure_difference(&twice.mha, &once.mha));
    }
    Ok(r)
}

/// `Θ_λ(a) = v⁻¹av`, `Θ_ρ(a) = S_B(v⁻¹)aS_B(v)`, `_λΘ(a) = uau⁻¹`,
/// `_ρΘ(a) = S_C⁻¹(u)aS_C⁻¹(u⁻¹)` for invertible `u, v ∈ B` (base coordinates).
pub fn inner_modifier<F: Field>(m: &RegularMha<F>, u: &[F], v: &[F]) -> Result<Modifier<F>> {
    let (a, bb) = (&m.a, &m.b.algebra);
    let not_invertible = |w: &str| Error::Invalid(format!("{w} is not invertible in B"));
    let u_inv = element_inverse(bb, u).ok_or_else(|| not_invertible("u"))?;
    let v_inv = element_inverse(bb, v).ok_or_else(|| not_invertible("v"))?;
    let s_c_inv = inverse_of(&m.s_c, "S_C")?;
    let conj = |l: &[F], r: &[F]| a.left_mul_map(l).compose(&a.right_mul_map(r));
    let inc = |x: &[F]| m.b.include(x);
    let inc_c = |y: &[F]| m.c.include(&s_c_inv.apply(y));
    Ok(Modifier {
        theta_lambda: conj(&inc(&v_inv), &inc(v)),
        theta_rho: conj(&m.t_elem(&v_inv), &m.t_elem(v)),
        lambda_theta: conj(&inc(u), &inc(&u_inv)),
        rho_theta: conj(&inc_c(u), &inc_c(&u_inv)),
    })
}

/// Closed formulas for the counits and antipode of an inner modification.
pub fn inner_formulas<F: Field>(m: &RegularMha<F>, tilde: &RegularMha<F>, u: &[F], v: &[F]) -> Result<Report> {
    let (a, n) = (&m.a, m.dim());
    let (bb, cc) = (&m.b.algebra, &m.c.algebra);
    let u_inv = element_inverse(bb, u).ok_or_else(|| Error::Invalid("u is not invertible in B".into()))?;
    let v_inv = element_inverse(bb, v).ok_or_else(|| Error::Invalid("v is not invertible in B".into()))?;
    let s_c_inv = inverse_of(&m.s_c, "S_C")?;
    let (eb, ec, s) = (m.eps_b()?, m.eps_c()?, m.antipode()?);
    let (ua, ua_inv, va, va_inv) = (m.b.include(u), m.b.include(&u_inv), m.b.include(v), m.b.include(&v_inv));
    let (teb, tec, ts) = (tilde.eps_b()?, tilde.eps_c()?, tilde.antipode()?);
    let mut r = Report::new();
    r.check("ε̃_B(a) = ε_B(av⁻¹)v", "modified-lt-counit", 0..n, |i| {
        let rhs = bb.mul(&eb.apply(&a.mul(&a.basis(i), &va_inv)), v);
        compare(json!({ "a": i }), &teb.column(i), &rhs)
    });
    // ε̃_C = ε_C∘_λΘ⁻¹ with _λΘ(a) = uau⁻¹
    r.check("ε̃_C(a) = S_C⁻¹(u)ε_C(u⁻¹a)", "modified-rt-counit", 0..n, |i| {
        let rhs = cc.mul(&s_c_inv.apply(u), &ec.apply(&a.mul(&ua_inv, &a.basis(i))));
        compare(json!({ "a": i }), &tec.column(i), &rhs)
    });
    r.check("S̃(a) = uS(vav⁻¹)u⁻¹", "modified-antipode", 0..n, |i| {
        let rhs = a.mul3(&ua, &s.apply(&a.mul3(&va, &a.basis(i), &va_inv)), &ua_inv);
        compare(json!({ "a": i }), &ts.column(i), &rhs)
    });
    Ok(r)
}

/// For a unital algebroid and a modifier with `θ = ι`: the invertible
/// character `χ = ε_B∘Θ_λ`, checked to reproduce `Θ_λ = ρ(χ)` and
/// `Θ_ρ = λ(χ)`.
pub fn modifier_character<F: Field>(m: &RegularMha<F>, md: &Modifier<F>) -> Result<(LinearMap<F>, Report)> {
    let (a, n) = (&m.a, m.dim());
    if a.unit().is_none() {
        return Err(Error::Invalid("the character correspondence is only available for unital algebroids".into()));
    }
    let left = md.left(m).ok_or_else(|| Error::Invalid("Θ_λ does not preserve B".into()))?;
    if !left.theta.is_identity() {
        return Err(Error::Invalid("the character correspondence needs θ = ι".into()));
    }
    let eb = m.eps_b()?;
    let bb = &m.b.algebra;
    let chi = eb.compose(&md.theta_lambda);
    let chi_bar = eb.compose(&inverse_of(&md.theta_lambda, "Θ_λ")?);
    let chi_rho = eb.compose(&md.theta_rho);
    let mut r = Report::new();
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    for (name, c) in [("ε_B∘Θ_λ", &chi), ("ε_B∘Θ_ρ", &chi_rho)] {
        r.check(&format!("{name} is a character"), "left-modifier-characters", pairs(), |(i, j)| {
            let (x, y) = (a.basis(i), a.basis(j));
            let cb = c.column(j);
            let lhs = c.apply(&a.mul(&x, &y));
            compare(json!({ "a": i, "b": j, "via": "s" }), &lhs, &c.apply(&a.mul(&x, &m.b.include(&cb)))).or_else(|| compare(json!({ "a": i, "b": j, "via": "t" }), &lhs, &c.apply(&a.mul(&x, &m.t_elem(&cb)))))
        });
    }
    // (υ∗ω)(a) = Σ ω(a₍₂₎)υ(a₍₁₎)
    let convolve = |u: &LinearMap<F>, w: &LinearMap<F>| -> LinearMap<F> {
        let cols: Vec<Vec<F>> = (0..n)
            .map(|i| {
                m.rep_b(i).iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(vec![F::zero(); bb.dim()], |acc, (k, c)| vec_add(&acc, &vec_scale(&bb.mul(&w.column(k % n), &u.column(k / n)), c)))
            })
            .collect();
        LinearMap::from_columns(bb.dim(), &cols)
    };
    r.record("χ∗χ̄ = ε_B = χ̄∗χ", "left-modifier-characters", matrix_diff("χ∗χ̄", &convolve(&chi, &chi_bar), eb).or_else(|| matrix_diff("χ̄∗χ", &convolve(&chi_bar, &chi), eb)));
    // ρ(χ)(a) = Σ χ(a₍₂₎)a₍₁₎ and λ(χ) from the convolution operators
    let rho_chi = {
        let cols: Vec<Vec<F>> = (0..n)
            .map(|i| {
                m.rep_b(i).iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(vec![F::zero(); n], |acc, (k, c)| vec_add(&acc, &vec_scale(&a.mul(&m.b.include(&chi.column(k % n)), &a.basis(k / n)), c)))
            })
            .collect();
        LinearMap::from_columns(n, &cols)
    };
    let lambda_chi = Convolutions::new(m)?.lambda_b(&chi);
    r.record("Θ_λ = ρ(χ)", "left-modifier-characters", matrix_diff("ρ(χ)", &rho_chi, &md.theta_lambda));
    r.record("Θ_ρ = λ(χ)", "left-modifier-characters", matrix_diff("λ(χ)", &lambda_chi, &md.theta_rho));
    Ok((chi, r))
}

/// Radon-Nikodym data: `D(γ) = μ(t(γ))/μ(s(γ))` on a groupoid, or
/// `D: H → C` with `μ(S(h)▷y) = μ(D_h y)` for a Hopf action.
#[derive(Clone, Debug)]
pub enum Cocycle<F: Field> {
    Groupoid(Vec<F>),
    Hopf(LinearMap<F>),
}

/// Every square-free `d` with `√d` needed for `√x` and missing from `ext`.
fn missing_root<F: Field>(x: &F, ext: &Extension) -> Option<u64> {
    let q = x.to_rational()?;
    let (_, m) = split_square(&num_traits::Signed::abs(&q))?;
    (!ext.contains_root(m)).then_some(m)
}

#[derive(Clone, Debug)]
pub struct GroupoidRn<F: Field> {
    pub cocycle: Cocycle<F>,
    /// `D^{1/2}` per arrow.
    pub root: Vec<F>,
    pub modifier: Modifier<F>,
    pub original: RegularMha<F>,
    pub modified: Modification<F>,
    pub report: Report,
}

/// The convolution algebroid of `g` modified by `(σ_{1/2}, σ_{1/2}, σ_{-1/2}, σ_{-1/2})`
/// with `σ_t(f)(γ) = f(γ)D^t(γ)`.
pub fn groupoid_rn_modifier<F: Field>(g: &FiniteGroupoid, mu: &[F], ext: &Extension) -> Result<GroupoidRn<F>> {
    let (n, k) = (g.arrows(), g.units.len());
    if mu.len() != k {
        return Err(Error::Dimension(format!("μ needs {k} values, got {}", mu.len())));
    }
    if mu.iter().any(|x| x.is_zero() || !x.is_positive()) {
        return Err(Error::Invalid("μ must be strictly positive on the units".into()));
    }
    let d: Vec<F> = (0..n).map(|c| mu[g.target_index(c)].clone() / mu[g.source_index(c)].clone()).collect();
    let mut missing: Vec<u64> = d.iter().filter_map(|x| missing_root(x, ext)).collect();
    missing.sort_unstable();
    missing.dedup();
    if !missing.is_empty() {
        return Err(Error::MissingRoots(missing));
    }
    let root: Vec<F> = d.iter().map(|x| x.sqrt_in(ext).ok_or(Error::MissingRoots(vec![]))).collect::<Result<_>>()?;
    let root_inv: Vec<F> = root.iter().map(|x| x.inv().expect("positive")).collect();
    let diag = |v: &[F]| LinearMap::from_fn(n, n, |r, c| if r == c { v[c].clone() } else { F::zero() });
    let modifier = Modifier {
        theta_lambda: diag(&root),
        theta_rho: diag(&root),
        lambda_theta: diag(&root_inv),
        rho_theta: diag(&root_inv),
    };
    let mut r = Report::new();
    r.check("D(γγ′) = D(γ)D(γ′)", "radon-nikodym-cocycle", (0..n).flat_map(|x| (0..n).map(move |y| (x, y))), |(x, y)| {
        let c = g.compose(x, y)?;
        (d[c] != d[x].clone() * d[y].clone()).then(|| json!({ "arrows": [x, y] }))
    });
    let original = build_convolution_algebroid::<F>(g);
    let modified = modify(&original, &modifier)?;
    r.extend(modified.report.clone());
    let tilde = &modified.mha;

    let w = BaseWeight::symmetric(mu.to_vec());
    let bw = check_base_weight(tilde, &w)?;
    r.record("(μ, μ) counital for the modification", "modification", (!bw.flags.counital).then(|| json!({ "mu": vec_json(mu) })));
    let ints = convolution_integrals(g, &vec![F::one(); k]);
    let eqs = IntegralEquations::new(tilde)?;
    r.record(
        "restriction to the units stays a partial integral",
        "modification-integrals",
        (eqs.verdicts(&ints.phi_c, IntegralSide::Left)? != [true; 3] || eqs.verdicts(&ints.psi_b, IntegralSide::Right)? != [true; 3]).then(|| json!("f ↦ f|_units")),
    );
    // Δ_B(e_γ) = e_γ⊗e_γ, so the modified comultiplications are rescaled diagonals
    let (tb, tc) = (&tilde.tensors.target_b, &tilde.tensors.target_c);
    r.check("Δ̃_B(e_γ) = D^{1/2}(γ)e_γ⊗e_γ and Δ̃_C(e_γ) = D^{-1/2}(γ)e_γ⊗e_γ", "modification", 0..n, |c| {
        let e = unit_vec(n, c);
        compare(json!({ "arrow": c, "side": "B" }), &tilde.delta_b_of(&e), &vec_scale(&tb.project_pure(&e, &e), &root[c]))
            .or_else(|| compare(json!({ "arrow": c, "side": "C" }), &tilde.delta_c_of(&e), &vec_scale(&tc.project_pure(&e, &e), &root_inv[c])))
    });
    r.check("ε̃_B(f)(u) = Σ_{t(γ)=u} f(γ)D^{-1/2}(γ) and ε̃_C(f)(u) = Σ_{s(γ)=u} f(γ)D^{1/2}(γ)", "modification", 0..n, |c| {
        let eb = vec_scale(&unit_vec(k, g.target_index(c)), &root_inv[c]);
        let ec = vec_scale(&unit_vec(k, g.source_index(c)), &root[c]);
        compare(json!({ "arrow": c, "side": "B" }), &tilde.eps_b().ok()?.column(c), &eb).or_else(|| compare(json!({ "arrow": c, "side": "C" }), &tilde.eps_c().ok()?.column(c), &ec))
    });
    r.record("S̃ = S", "modified-antipode", (tilde.antipode != original.antipode).then(|| json!("antipode changed")));
    Ok(GroupoidRn { cocycle: Cocycle::Groupoid(d), root, modifier, original, modified, report: r })
}

/// The measured algebroid `(Ã, μ, μ, φ̂, φ̂)` for the groupoid recipe, with
/// `φ̂(f∗g) = φ̂(g∗σ₁(f))` checked.
pub fn groupoid_rn_measured<F: Field>(g: &FiniteGroupoid, mu: &[F], rn: &GroupoidRn<F>) -> Result<(MeasuredMha<F>, Report)> {
    let tilde = &rn.modified.mha;
    let ints = convolution_integrals(g, &vec![F::one(); g.units.len()]);
    let x = assemble_measured(tilde, &BaseWeight::symmetric(mu.to_vec()), &ints.phi_c, &ints.psi_b)?;
    let Cocycle::Groupoid(d) = &rn.cocycle else { unreachable!("groupoid recipe") };
    let n = g.arrows();
    let sigma1 = LinearMap::from_fn(n, n, |r, c| if r == c { d[c].clone() } else { F::zero() });
    let a = &tilde.a;
    let mut r = Report::new();
    r.check("φ̂(f∗g) = φ̂(g∗σ₁(f))", "modular-automorphism", (0..n).flat_map(|i| (0..n).map(move |j| (i, j))), |(i, j)| {
        let lhs = eval(&x.phi.omega, &a.mul(&a.basis(i), &a.basis(j)));
        let rhs = eval(&x.phi.omega, &a.mul(&a.basis(j), &sigma1.column(i)));
        (lhs != rhs).then(|| json!({ "f": i, "g": j }))
    });
    let sigma = modular_automorphism(&x)?;
    r.record("σ^φ = σ₁", "modular-automorphism", matrix_diff("σ^φ", &sigma.sigma_phi, &sigma1));
    Ok((x, r))
}

fn act_by<F: Field>(act: &HopfAction<F>, h: &[F], y: &[F]) -> Vec<F> {
    h.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(vec![F::zero(); y.len()], |acc, (k, c)| vec_add(&acc, &vec_scale(&act.act(k, y), c)))
}

/// `(ι⊗Δ)Δ(e_q)`.
fn coproduct2<F: Field>(h: &FiniteHopf<F>, q: usize) -> Vec<(usize, usize, usize, F)> {
    h.coproduct(q).into_iter().flat_map(|(p1, p2, c)| h.coproduct(p2).into_iter().map(move |(s, t, k)| (p1, s, t, c.clone() * k))).collect()
}

/// Solves `μ(S(h)▷y) = μ(D_h y)` for every basis `h` against the Gram
/// pairing of `μ`.
pub fn radon_nikodym_cocycle<F: Field>(c: &FiniteAlgebra<F>, h: &FiniteHopf<F>, act: &HopfAction<F>, mu: &[F], antipode_power: i32) -> Result<LinearMap<F>> {
    let dc = c.dim();
    let gram = LinearMap::from_fn(dc, dc, |k, l| eval(mu, &c.mul(&c.basis(k), &c.basis(l))));
    if !gram.is_injective() {
        return Err(Error::Invalid("μ is not faithful on C".into()));
    }
    let s = match antipode_power {
        1 => h.antipode.clone(),
        -1 => inverse_of(&h.antipode, "S_H")?,
        _ => return Err(Error::Invalid("antipode power must be ±1".into())),
    };
    let gt = gram.transpose();
    let cols: Vec<Vec<F>> = (0..h.dim())
        .map(|q| {
            let f: Vec<F> = (0..dc).map(|l| eval(mu, &act_by(act, &s.column(q), &c.basis(l)))).collect();
            gt.solve(&f).ok_or_else(|| Error::rejected("μ quasi-invariant", "radon-nikodym-cocycle", json!({ "h": q })))
        })
        .collect::<Result<_>>()?;
    Ok(LinearMap::from_columns(dc, &cols))
}

/// Unital one-cocycle law `D(1) = 1`, `D(hg) = D(h₍₁₎)(h₍₂₎▷D(g))`, and the
/// commutation `D_{h₍₁₎}(h₍₂₎▷y) = (h₍₁₎▷y)D_{h₍₂₎}`.
pub fn check_cocycle<F: Field>(c: &FiniteAlgebra<F>, h: &FiniteHopf<F>, act: &HopfAction<F>, d: &LinearMap<F>) -> Report {
    let (dh, dc) = (h.dim(), c.dim());
    let hh = &h.algebra;
    let mut r = Report::new();
    r.record("D(1) = 1", "radon-nikodym-cocycle", compare(json!("D(1)"), &d.apply(&h.one()), &c.one()));
    r.check("D(hg) = D(h₍₁₎)(h₍₂₎▷D(g))", "radon-nikodym-cocycle", (0..dh).flat_map(|p| (0..dh).map(move |q| (p, q))), |(p, q)| {
        let lhs = d.apply(&hh.mul(&hh.basis(p), &hh.basis(q)));
        let rhs = h.coproduct(p).into_iter().fold(vec![F::zero(); dc], |acc, (h1, h2, k)| vec_add(&acc, &vec_scale(&c.mul(&d.column(h1), &act.act(h2, &d.column(q))), &k)));
        compare(json!({ "h": p, "g": q }), &lhs, &rhs)
    });
    r.check("D_{h₍₁₎}(h₍₂₎▷y) = (h₍₁₎▷y)D_{h₍₂₎}", "chb-modification", (0..dh).flat_map(|p| (0..dc).map(move |y| (p, y))), |(p, y)| {
        let (l, rr) = h.coproduct(p).into_iter().fold((vec![F::zero(); dc], vec![F::zero(); dc]), |(l, rr), (h1, h2, k)| {
            let e = c.basis(y);
            (vec_add(&l, &vec_scale(&c.mul(&d.column(h1), &act.act(h2, &e)), &k)), vec_add(&rr, &vec_scale(&c.mul(&act.act(h1, &e), &d.column(h2)), &k)))
        });
        compare(json!({ "h": p, "y": y }), &l, &rr)
    });
    r
}

fn first_failure(r: &Report) -> Result<()> {
    match r.failures().first() {
        Some(e) => Err(Error::rejected(&e.axiom, &e.paper_eq, e.witness.clone().unwrap_or(Value::Null))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug)]
pub struct CrossedRn<F: Field> {
    pub cocycle: Cocycle<F>,
    pub modifier: Modifier<F>,
    pub original: RegularMha<F>,
    pub modified: Modification<F>,
    pub measured: MeasuredMha<F>,
    pub report: Report,
}

/// `C#H` modified by `((β†_D)⁻¹, β_D⁻¹, ι, ι)` with `β_D(y#h) = yD_{h₍₁₎}#h₍₂₎`
/// and `β†_D(y#h) = D_{h₍₂₎}y#h₍₁₎`.
pub fn crossed_rn_modifier<F: Field>(c: &FiniteAlgebra<F>, h: &FiniteHopf<F>, act: &HopfAction<F>, mu: &[F]) -> Result<CrossedRn<F>> {
    if let Some(w) = act.symmetry_failure(h) {
        return Err(Error::rejected("symmetric action", "ch-symmetric", w));
    }
    let original = build_crossed_product(c, h, act)?;
    let d = radon_nikodym_cocycle(c, h, act, mu, 1)?;
    let mut r = check_cocycle(c, h, act, &d);
    first_failure(&r)?;
    let (dc, dh) = (c.dim(), h.dim());
    let n = dc * dh;
    let el = |y: &[F], g: usize| -> Vec<F> { (0..n).map(|p| if p % dh == g { y[p / dh].clone() } else { F::zero() }).collect() };
    let beta = LinearMap::from_columns(
        n,
        &(0..n).map(|p| h.coproduct(p % dh).into_iter().fold(vec![F::zero(); n], |acc, (h1, h2, k)| vec_add(&acc, &vec_scale(&el(&c.mul(&c.basis(p / dh), &d.column(h1)), h2), &k)))).collect::<Vec<_>>(),
    );
    let beta_dag = LinearMap::from_columns(
        n,
        &(0..n).map(|p| h.coproduct(p % dh).into_iter().fold(vec![F::zero(); n], |acc, (h1, h2, k)| vec_add(&acc, &vec_scale(&el(&c.mul(&d.column(h2), &c.basis(p / dh)), h1), &k)))).collect::<Vec<_>>(),
    );
    let a = &original.a;
    r.record("β_D automorphism", "chb-modification", automorphism_failure(a, &beta, false));
    r.record("β†_D automorphism", "chb-modification", automorphism_failure(a, &beta_dag, false));
    // β̄(y#h) = y(h₍₁₎▷D(S(h₍₂₎)))#h₍₃₎ inverts β_D
    let s = &h.antipode;
    let beta_bar = LinearMap::from_columns(
        n,
        &(0..n)
            .map(|p| {
                coproduct2(h, p % dh).into_iter().fold(vec![F::zero(); n], |acc, (h1, h2, h3, k)| {
                    let y = c.mul(&c.basis(p / dh), &act.act(h1, &d.apply(&s.column(h2))));
                    vec_add(&acc, &vec_scale(&el(&y, h3), &k))
                })
            })
            .collect::<Vec<_>>(),
    );
    r.record("β̄_D = β_D⁻¹", "chb-modification", (!beta.compose(&beta_bar).is_identity()).then(|| json!("β_D∘β̄_D ≠ ι")));
    first_failure(&r)?;
    let modifier = Modifier::left_only(inverse_of(&beta_dag, "β†_D")?, inverse_of(&beta, "β_D")?);
    let modified = modify(&original, &modifier)?;
    r.extend(modified.report.clone());
    let tilde = &modified.mha;
    let w = BaseWeight::symmetric(mu.to_vec());
    let bw = check_base_weight(tilde, &w)?;
    r.record("(μ, μ) counital for the modification", "chb-modification", (!bw.flags.counital).then(|| json!({ "mu": vec_json(mu) })));
    let ints = crossed_integrals(dc, h);
    let measured = assemble_measured(tilde, &w, &ints.phi_c, &ints.psi_b)?;
    // σ^φ(yh) = yσ_H(h₍₂₎)D_{S⁻¹(h₍₁₎)}
    let sigma = modular_automorphism(&measured)?;
    let s_inv = inverse_of(s, "S_H")?;
    let one_h = h.one();
    let in_a = |y: &[F], hv: &[F]| -> Vec<F> { (0..n).map(|p| y[p / dh].clone() * hv[p % dh].clone()).collect() };
    r.check("σ^φ(yh) = yσ_H(h₍₂₎)D_{S⁻¹(h₍₁₎)}", "modular-automorphism", 0..n, |p| {
        let (y, g) = (p / dh, p % dh);
        let rhs = h.coproduct(g).into_iter().fold(vec![F::zero(); n], |acc, (h1, h2, k)| {
            let term = a.mul3(&in_a(&c.basis(y), &one_h), &in_a(&c.one(), &h.modular_automorphism.column(h2)), &in_a(&d.apply(&s_inv.column(h1)), &one_h));
            vec_add(&acc, &vec_scale(&term, &k))
        });
        compare(json!({ "yh": p }), &sigma.sigma_phi.column(p), &rhs)
    });
    Ok(CrossedRn { cocycle: Cocycle::Hopf(d), modifier, original, modified, measured, report: r })
}

#[derive(Clone, Debug)]
pub struct TwoSidedRn<F: Field> {
    pub data: TwoSidedData<F>,
    pub cocycle: Cocycle<F>,
    pub modifier: Modifier<F>,
    pub original: RegularMha<F>,
    pub modified: Modification<F>,
    pub measured: MeasuredMha<F>,
    pub report: Report,
}

/// `C#H#C^op` with `S_B = ι`, `S_C = σ`, modified by `(Θ_λ⁻¹, Θ_ρ⁻¹, ι, ι)`
/// where `Θ_λ(yhx) = y(D_{h₍₂₎})^{op}h₍₁₎x` and `Θ_ρ(yhx) = yD_{h₍₁₎}h₍₂₎x`.
pub fn twosided_rn_modifier<F: Field>(c: &FiniteAlgebra<F>, h: &FiniteHopf<F>, act: &HopfAction<F>, mu: &[F], sigma: &LinearMap<F>) -> Result<TwoSidedRn<F>> {
    let (dc, dh) = (c.dim(), h.dim());
    let mut r = Report::new();
    r.record("C is an H-module algebra", "chb-action-algebra", act.module_algebra_failure(h, c, false));
    first_failure(&r)?;
    let pairs = || (0..dc).flat_map(|i| (0..dc).map(move |j| (i, j)));
    r.check("μ(ab) = μ(bσ(a))", "chb-modular", pairs(), |(i, j)| {
        let lhs = eval(mu, &c.mul(&c.basis(i), &c.basis(j)));
        let rhs = eval(mu, &c.mul(&c.basis(j), &sigma.column(i)));
        (lhs != rhs).then(|| json!({ "a": i, "b": j }))
    });
    r.record("σ automorphism", "chb-modular", automorphism_failure(c, sigma, false));
    let s = &h.antipode;
    let s2 = s.compose(s);
    r.check("σ(h▷y) = S²(h)▷σ(y)", "chb-modular", (0..dh).flat_map(|q| (0..dc).map(move |y| (q, y))), |(q, y)| {
        compare(json!({ "h": q, "y": y }), &sigma.apply(&act.act(q, &c.basis(y))), &act_by(act, &s2.column(q), &sigma.column(y)))
    });
    first_failure(&r)?;
    let d = radon_nikodym_cocycle(c, h, act, mu, 1)?;
    r.extend(check_cocycle(c, h, act, &d));
    r.check("σ(D_h) = D_{S²(h)}", "chb-modification", 0..dh, |q| compare(json!({ "h": q }), &sigma.apply(&d.column(q)), &d.apply(&s2.column(q))));
    let d_op = radon_nikodym_cocycle(&c.opposite(), h, act, mu, -1)?;
    r.record("μ^op is quasi-invariant with cocycle D", "chb-modification", matrix_diff("D^op", &d_op, &d));
    first_failure(&r)?;

    let right_ops: Vec<LinearMap<F>> = (0..dh).map(|q| (0..dh).fold(LinearMap::zeros(dc, dc), |acc, k| if s[(k, q)].is_zero() { acc } else { acc.add(&act.ops[k].scale(&s[(k, q)])) })).collect();
    let data = TwoSidedData {
        c: c.clone(),
        h: h.clone(),
        b: c.opposite(),
        left: act.clone(),
        right: HopfAction::of_group(right_ops),
        s_b: LinearMap::identity(dc),
        s_c: sigma.clone(),
    };
    let original = build_two_sided(&data)?;
    let (db, n) = (dc, original.dim());
    let a = &original.a;
    let el = |y: &[F], g: &[F], x: &[F]| -> Vec<F> { (0..n).map(|p| y[p / (dh * db)].clone() * g[(p / db) % dh].clone() * x[p % db].clone()).collect() };
    let (one_c, one_h) = (c.one(), h.one());
    let split = |p: usize| (p / (dh * db), (p / db) % dh, p % db);
    let build = |f: &dyn Fn(usize, usize, usize) -> Vec<F>| LinearMap::from_columns(n, &(0..n).map(|p| { let (y, g, x) = split(p); f(y, g, x) }).collect::<Vec<_>>());
    // (D)^op = S_B⁻¹(D) and S_B = ι
    let theta_lambda = build(&|y, g, x| {
        h.coproduct(g).into_iter().fold(vec![F::zero(); n], |acc, (h1, h2, k)| {
            let term = a.mul3(&el(&unit_vec(dc, y), &one_h, &d.column(h2)), &el(&one_c, &unit_vec(dh, h1), &one_c), &el(&one_c, &one_h, &unit_vec(db, x)));
            vec_add(&acc, &vec_scale(&term, &k))
        })
    });
    let theta_rho = build(&|y, g, x| {
        h.coproduct(g).into_iter().fold(vec![F::zero(); n], |acc, (h1, h2, k)| {
            let term = el(&c.mul(&unit_vec(dc, y), &d.column(h1)), &unit_vec(dh, h2), &unit_vec(db, x));
            vec_add(&acc, &vec_scale(&term, &k))
        })
    });
    r.record("Θ_λ automorphism", "chb-modification", automorphism_failure(a, &theta_lambda, false));
    r.record("Θ_ρ automorphism", "chb-modification", automorphism_failure(a, &theta_rho, false));
    first_failure(&r)?;
    let modifier = Modifier::left_only(inverse_of(&theta_lambda, "Θ_λ")?, inverse_of(&theta_rho, "Θ_ρ")?);
    let modified = modify(&original, &modifier)?;
    r.extend(modified.report.clone());
    let tilde = &modified.mha;
    let w = BaseWeight::new(mu.to_vec(), mu.to_vec());
    let bw = check_base_weight(tilde, &w)?;
    r.record("(μ^op, μ) counital for the modification", "chb-modification", (!bw.flags.counital).then(|| json!({ "mu": vec_json(mu) })));
    let ints = two_sided_integrals(&data, mu, mu);
    let measured = assemble_measured(tilde, &w, &ints.phi_c, &ints.psi_b)?;
    let sm = modular_automorphism(&measured)?;
    let sigma_inv = inverse_of(sigma, "σ")?;
    let s_inv = inverse_of(s, "S_H")?;
    r.check("σ^φ(y) = σ(y) and σ^φ(y^op) = σ⁻¹(y)^op", "modular-automorphism", 0..dc, |k| {
        let y = unit_vec(dc, k);
        compare(json!({ "y": k }), &sm.sigma_phi.apply(&el(&y, &one_h, &one_c)), &el(&sigma.apply(&y), &one_h, &one_c))
            .or_else(|| compare(json!({ "y^op": k }), &sm.sigma_phi.apply(&el(&one_c, &one_h, &y)), &el(&one_c, &one_h, &sigma_inv.apply(&y))))
    });
    r.check("σ^φ(h) = σ_H(h₍₂₎)D_{S(h₍₁₎)}(D_{S⁻¹(h₍₃₎)})^op", "modular-automorphism", 0..dh, |g| {
        let rhs = coproduct2(h, g).into_iter().fold(vec![F::zero(); n], |acc, (h1, h2, h3, k)| {
            let term = a.mul3(&el(&one_c, &h.modular_automorphism.column(h2), &one_c), &el(&d.apply(&s.column(h1)), &one_h, &one_c), &el(&one_c, &one_h, &d.apply(&s_inv.column(h3))));
            vec_add(&acc, &vec_scale(&term, &k))
        });
        compare(json!({ "h": g }), &sm.sigma_phi.apply(&el(&one_c, &unit_vec(dh, g), &one_c)), &rhs)
    });
    Ok(TwoSidedRn { data, cocycle: Cocycle::Hopf(d), modifier, original, modified, measured, report: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{named_example, swap_action, EXAMPLE_NAMES};
    use crate::integration::is_faithful;
    use crate::{Rational as Q, Scalar};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn crossed() -> RegularMha<Q> {
        named_example::<Q>("crossed-product", None).unwrap().mha
    }

    #[test]
    fn identity_modifier_changes_nothing() {
        for name in EXAMPLE_NAMES {
            let m = named_example::<Q>(name, None).unwrap().mha;
            let md = Modifier::identity(m.dim());
            let t = modify(&m, &md).unwrap();
            assert!(t.report.all_pass(), "{name}: {:?}", t.report.failures());
            assert_eq!(structure_difference(&m, &t.mha), None, "{name}");
        }
    }

    #[test]
    fn groupoid_rn_on_p2() {
        let g = FiniteGroupoid::pair(2);
        let mu = [q(1), q(4)];
        let rn = groupoid_rn_modifier(&g, &mu, &Extension::rational()).unwrap();
        assert!(rn.report.all_pass(), "{:?}", rn.report.failures());
        let Cocycle::Groupoid(d) = &rn.cocycle else { panic!() };
        // arrows (1,1), (1,2), (2,1), (2,2): D = μ(target)/μ(source)
        assert_eq!(d, &vec![q(1), qr(1, 4), q(4), q(1)]);
        assert_eq!(rn.root, vec![q(1), qr(1, 2), q(2), q(1)]);
        assert_eq!(rn.modifier.is_self_adjoint(&rn.original.a), Some(true));
        let (x, r) = groupoid_rn_measured(&g, &mu, &rn).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures());
        assert!(is_faithful(&x.mha.a, &x.phi.omega));
        // the original structure is not counital for (μ, μ)
        let bw = check_base_weight(&rn.original, &BaseWeight::symmetric(mu.to_vec())).unwrap();
        assert!(!bw.flags.counital);
    }

    #[test]
    fn uniform_weight_gives_the_identity_modifier() {
        let g = FiniteGroupoid::pair(3);
        let rn = groupoid_rn_modifier(&g, &[q(2), q(2), q(2)], &Extension::rational()).unwrap();
        assert!(rn.modifier.is_identity());
        assert!(rn.report.all_pass(), "{:?}", rn.report.failures());
        let (c, h, act) = swap_action::<Q>();
        let rn = twosided_rn_modifier(&c, &h, &act, &[q(5), q(5)], &LinearMap::identity(2)).unwrap();
        assert!(rn.modifier.is_identity());
        assert_eq!(structure_difference(&rn.original, &rn.modified.mha), None);
        assert!(rn.report.all_pass(), "{:?}", rn.report.failures());
    }

    #[test]
    fn groupoid_rn_on_a_three_point_pair_groupoid() {
        let g = FiniteGroupoid::pair(3);
        let mu = [q(1), q(4), q(9)];
        let rn = groupoid_rn_modifier(&g, &mu, &Extension::rational()).unwrap();
        assert!(rn.report.all_pass(), "{:?}", rn.report.failures());
        // arrow (3,1): D = 9, root 3
        assert_eq!(rn.root[6], q(3));
        let (x, r) = groupoid_rn_measured(&g, &mu, &rn).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures());
        assert!(is_faithful(&x.mha.a, &x.psi.omega));
    }

    #[test]
    fn groupoid_rn_needs_square_roots() {
        let g = FiniteGroupoid::pair(2);
        let err = groupoid_rn_modifier(&g, &[q(1), q(2)], &Extension::rational()).unwrap_err();
        assert!(matches!(err, Error::MissingRoots(ref v) if v == &vec![2]), "{err:?}");
        let mu = [Scalar::from_rational(q(1)), Scalar::from_rational(q(2))];
        let rn = groupoid_rn_modifier(&g, &mu, &Extension::new(&[2]).unwrap()).unwrap();
        assert!(rn.report.all_pass(), "{:?}", rn.report.failures());
        let (_, r) = groupoid_rn_measured(&g, &mu, &rn).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures());
    }

    #[test]
    fn crossed_rn_with_swap_action() {
        let (c, h, act) = swap_action::<Q>();
        let rn = crossed_rn_modifier(&c, &h, &act, &[q(1), q(4)]).unwrap();
        assert!(rn.report.all_pass(), "{:?}", rn.report.failures());
        let Cocycle::Hopf(d) = &rn.cocycle else { panic!() };
        assert_eq!(d.column(0), vec![q(1), q(1)]);
        assert_eq!(d.column(1), vec![q(4), qr(1, 4)]);
        assert!(is_faithful(&rn.measured.mha.a, &rn.measured.phi.omega));
    }

    #[test]
    fn invariant_weight_gives_the_identity_modifier() {
        let (c, h, act) = swap_action::<Q>();
        let rn = crossed_rn_modifier(&c, &h, &act, &[q(3), q(3)]).unwrap();
        assert!(rn.modifier.is_identity());
        assert!(rn.report.all_pass(), "{:?}", rn.report.failures());
    }

    #[test]
    fn twosided_rn_with_swap_action() {
        let (c, h, act) = swap_action::<Q>();
        let rn = twosided_rn_modifier(&c, &h, &act, &[q(1), q(4)], &LinearMap::identity(2)).unwrap();
        assert!(rn.report.all_pass(), "{:?}", rn.report.failures());
        assert!(!rn.modifier.is_identity());
    }

    #[test]
    fn twosided_rn_rejects_a_non_modular_sigma() {
        let (c, h, act) = swap_action::<Q>();
        let swap = LinearMap::from_fn(2, 2, |r, k| if r != k { q(1) } else { q(0) });
        match twosided_rn_modifier(&c, &h, &act, &[q(1), q(4)], &swap) {
            Err(Error::Rejected { label, .. }) => assert_eq!(label, "chb-modular"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inner_modifier_on_the_crossed_product() {
        let m = crossed();
        let (u, v) = (vec![q(1), q(2)], vec![q(3), q(-1)]);
        let md = inner_modifier(&m, &u, &v).unwrap();
        let t = modify(&m, &md).unwrap();
        assert!(t.report.all_pass(), "{:?}", t.report.failures());
        let r = inner_formulas(&m, &t.mha, &u, &v).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures());
        let (chi, r) = modifier_character(&m, &md).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures());
        assert_eq!(chi.cod(), m.b.dim());
        assert!(inner_modifier(&m, &[q(0), q(1)], &v).is_err());
    }

    #[test]
    fn inner_right_counit_uses_u_inverse_inside() {
        let m = crossed();
        let (u, v) = (vec![q(1), q(2)], vec![q(3), q(-1)]);
        let t = modify(&m, &inner_modifier(&m, &u, &v).unwrap()).unwrap().mha;
        let (a, cc, ec) = (&m.a, &m.c.algebra, m.eps_c().unwrap());
        let u_inv = element_inverse(&m.b.algebra, &u).unwrap();
        // p1#g
        let x = a.basis(1);
        let swapped = cc.mul(&u_inv, &ec.apply(&a.mul(&m.b.include(&u), &x)));
        assert_eq!(t.eps_c().unwrap().apply(&x), vec![q(0), q(2)]);
        assert_eq!(swapped, vec![q(0), qr(1, 2)]);
    }

    #[test]
    fn group_law_round_trip() {
        let m = crossed();
        let m1 = inner_modifier(&m, &[q(1), q(2)], &[q(3), q(-1)]).unwrap();
        let m2 = inner_modifier(&m, &[q(5), q(1)], &[q(2), q(7)]).unwrap();
        let r = check_group_law(&m, &m1, &m2).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures());
        assert!(r.count(crate::report::Status::Pass) >= 4);
        let back = modify(&modify(&m, &m1).unwrap().mha, &m1.inverse().unwrap().translated(&m1).unwrap().compose(&Modifier::identity(m.dim())));
        assert!(back.is_ok());
    }

    #[test]
    fn theta_that_moves_the_base_is_rejected() {
        let m = named_example::<Q>("convolution", None).unwrap().mha;
        let a = &m.a;
        // arrows (1,1), (1,2), (2,1), (2,2) multiply as 2×2 matrix units
        let x = vec![q(1), q(1), q(0), q(1)];
        let x_inv = vec![q(1), q(-1), q(0), q(1)];
        assert_eq!(a.mul(&x, &x_inv), a.one());
        let conj = a.left_mul_map(&x).compose(&a.right_mul_map(&x_inv));
        let md = Modifier::left_only(conj.clone(), conj);
        let r = check_modifier(&m, &md).unwrap();
        assert!(r.failures().iter().any(|f| f.paper_eq == "theta-base"));
        match modify(&m, &md) {
            Err(Error::Rejected { label, .. }) => assert_eq!(label, "theta-base"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_modifier_scaling_is_rejected() {
        let m = crossed();
        let md = Modifier::left_only(LinearMap::identity(m.dim()).scale(&q(2)), LinearMap::identity(m.dim()));
        assert!(modify(&m, &md).is_err());
    }
}
