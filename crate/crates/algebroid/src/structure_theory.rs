//! Convolution operators, modular automorphisms and elements, uniqueness of
//! integrals, the dual algebra and Haar rescaling for measured algebroids.
//!
//! Functionals act on the left and right as `(a·ω)(b) = ω(ba)` and
//! `(ω·a)(b) = ω(ab)`. Everything is solved against Gram matrices.

use serde::Serialize;
use serde_json::json;

use crate::algebra_core::{automorphism_failure, FiniteAlgebra, Subalgebra};
use crate::balanced_tensor::apply_legs;
use crate::bialgebroid::RegularMha;
use crate::error::{Error, Result};
use crate::exact_linear::{same_span, vec_add, vec_scale, Field, LinearMap};
use crate::integration::{
    eval, factorize, is_faithful, lesssim, modular_automorphism_of, pull_back, BaseWeight, FactorizableFunctional, IntegralEquations, IntegralSide, MeasuredMha,
};
use crate::report::{compare, vec_json, Report};

/// Two-sided inverse of `x` in a unital algebra.
pub fn element_inverse<F: Field>(alg: &FiniteAlgebra<F>, x: &[F]) -> Option<Vec<F>> {
    let one = alg.unit()?.clone();
    let y = alg.left_mul_map(x).solve(&one)?;
    (alg.mul(&y, x) == one).then_some(y)
}

fn inverse_of<F: Field>(f: &LinearMap<F>, what: &str) -> Result<LinearMap<F>> {
    f.inverse().ok_or_else(|| Error::Invalid(format!("{what} not invertible")))
}

/// `a ↦ f(ax)` (`right`) or `a ↦ f(xa)`.
pub fn shifted<F: Field>(alg: &FiniteAlgebra<F>, f: &LinearMap<F>, x: &[F], right: bool) -> LinearMap<F> {
    let mul = if right { alg.right_mul_map(x) } else { alg.left_mul_map(x) };
    f.compose(&mul)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConvolutionKind {
    Lambda,
    Rho,
}

/// Slice formulas for the four convolution operators of a unital algebroid.
pub struct Convolutions<'a, F: Field> {
    m: &'a RegularMha<F>,
    s_b_inv: LinearMap<F>,
    s_c_inv: LinearMap<F>,
}

impl<'a, F: Field> Convolutions<'a, F> {
    pub fn new(m: &'a RegularMha<F>) -> Result<Self> {
        Ok(Self {
            m,
            s_b_inv: inverse_of(&m.s_b, "S_B")?,
            s_c_inv: inverse_of(&m.s_c, "S_C")?,
        })
    }

    fn build(&self, rep: impl Fn(usize) -> Vec<F>, cell: impl Fn(usize, usize) -> Vec<F>) -> LinearMap<F> {
        let n = self.m.dim();
        let cols: Vec<Vec<F>> = (0..n)
            .map(|i| {
                rep(i).iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(vec![F::zero(); n], |acc, (k, c)| vec_add(&acc, &vec_scale(&cell(k / n, k % n), c)))
            })
            .collect();
        LinearMap::from_columns(n, &cols)
    }

    /// `λ(_Bυ)(a) = (_Bυ⊗ι)(Δ_B(a))`.
    pub fn lambda_b(&self, f: &LinearMap<F>) -> LinearMap<F> {
        let (m, a) = (self.m, &self.m.a);
        self.build(|i| m.rep_b(i), |c, d| a.mul(&m.t_elem(&f.column(c)), &a.basis(d)))
    }

    /// `λ(υ_B)(a) = (S_C⁻¹υ_B⊗ι)(Δ_C(a))`.
    pub fn lambda_b_right(&self, f: &LinearMap<F>) -> LinearMap<F> {
        let (m, a) = (self.m, &self.m.a);
        self.build(|i| m.rep_c(i), |c, d| a.mul(&a.basis(d), &m.c.include(&self.s_c_inv.apply(&f.column(c)))))
    }

    /// `ρ(_Cω)(a) = (ι⊗S_B⁻¹_Cω)(Δ_B(a))`.
    pub fn rho_c(&self, f: &LinearMap<F>) -> LinearMap<F> {
        let (m, a) = (self.m, &self.m.a);
        self.build(|i| m.rep_b(i), |c, d| a.mul(&m.b.include(&self.s_b_inv.apply(&f.column(d))), &a.basis(c)))
    }

    /// `ρ(ω_C)(a) = (ι⊗ω_C)(Δ_C(a))`.
    pub fn rho_c_right(&self, f: &LinearMap<F>) -> LinearMap<F> {
        let (m, a) = (self.m, &self.m.a);
        self.build(|i| m.rep_c(i), |c, d| a.mul(&a.basis(c), &m.sc_elem(&f.column(d))))
    }

    /// `λ(υ)` and `ρ(υ)` of a factorizable functional, one-sided formulas compared.
    pub fn of(&self, f: &FactorizableFunctional<F>, kind: ConvolutionKind) -> (LinearMap<F>, Option<serde_json::Value>) {
        let (x, y) = match kind {
            ConvolutionKind::Lambda => (self.lambda_b(&f.b_left), self.lambda_b_right(&f.b_right)),
            ConvolutionKind::Rho => (self.rho_c(&f.c_left), self.rho_c_right(&f.c_right)),
        };
        let failure = (0..self.m.dim()).find_map(|i| compare(json!({ "a": i }), &x.column(i), &y.column(i)));
        (x, failure)
    }
}

#[derive(Clone, Debug)]
pub struct ConvolutionOperator<F: Field> {
    pub kind: ConvolutionKind,
    pub functional: Vec<F>,
    pub map: LinearMap<F>,
}

/// `λ(υ)` or `ρ(υ)` for a factorizable `υ`, with both one-sided formulas and
/// `ε∘λ(υ) = υ` checked.
pub fn convolution<F: Field>(m: &RegularMha<F>, w: &BaseWeight<F>, upsilon: &FactorizableFunctional<F>, kind: ConvolutionKind) -> Result<(ConvolutionOperator<F>, Report)> {
    let conv = Convolutions::new(m)?;
    let mut r = Report::new();
    let (map, failure) = conv.of(upsilon, kind);
    let name = match kind {
        ConvolutionKind::Lambda => "λ(_Bυ) = λ(υ_B)",
        ConvolutionKind::Rho => "ρ(_Cυ) = ρ(υ_C)",
    };
    r.record(name, "convolution", failure);
    let eps = w.counit_functional(m)?;
    r.record("ε∘conv(υ) = υ", "convolution", compare(json!("functional"), &pull_back(&eps, &map), &upsilon.omega));
    Ok((ConvolutionOperator { kind, functional: upsilon.omega.clone(), map }, r))
}

/// Identities among convolution operators, for the given
/// functionals (all factorizable for a faithful weight).
pub fn convolution_laws<F: Field>(m: &RegularMha<F>, w: &BaseWeight<F>, functionals: &[Vec<F>]) -> Result<Report> {
    let conv = Convolutions::new(m)?;
    let mut r = Report::new();
    let n = m.dim();
    let s = m.antipode()?.clone();
    let eps = w.counit_functional(m)?;

    let fe = factorize(m, w, &eps)?;
    let id = LinearMap::identity(n);
    let ops = [
        ("λ(_Bε) = ι", conv.lambda_b(&fe.b_left)),
        ("λ(ε_B) = ι", conv.lambda_b_right(&fe.b_right)),
        ("ρ(_Cε) = ι", conv.rho_c(&fe.c_left)),
        ("ρ(ε_C) = ι", conv.rho_c_right(&fe.c_right)),
    ];
    for (name, op) in ops {
        r.record(name, "convolution-counit", (!op.is_identity()).then(|| json!({ "differs_at": (0..n).find(|&i| op.column(i) != id.column(i)) })));
    }

    let facts: Vec<FactorizableFunctional<F>> = functionals.iter().map(|f| factorize(m, w, f)).collect::<Result<_>>()?;
    let lams: Vec<LinearMap<F>> = facts.iter().map(|f| conv.of(f, ConvolutionKind::Lambda).0).collect();
    let rhos: Vec<LinearMap<F>> = facts.iter().map(|f| conv.of(f, ConvolutionKind::Rho).0).collect();
    r.check("one-sided formulas agree", "convolution", facts.iter().enumerate(), |(k, f)| {
        let (_, a) = conv.of(f, ConvolutionKind::Lambda);
        let (_, b) = conv.of(f, ConvolutionKind::Rho);
        a.or(b).map(|e| json!({ "functional": k, "at": e }))
    });
    r.check("ε∘λ(υ) = υ = ε∘ρ(υ)", "convolution", facts.iter().enumerate(), |(k, f)| {
        compare(json!({ "functional": k, "op": "λ" }), &pull_back(&eps, &lams[k]), &f.omega).or_else(|| compare(json!({ "functional": k, "op": "ρ" }), &pull_back(&eps, &rhos[k]), &f.omega))
    });
    let pairs = || (0..facts.len()).flat_map(|i| (0..facts.len()).map(move |j| (i, j)));
    r.check("λ(υ)ρ(ω) = ρ(ω)λ(υ)", "convolution", pairs(), |(i, j)| {
        (lams[i].compose(&rhos[j]) != rhos[j].compose(&lams[i])).then(|| json!({ "upsilon": i, "omega": j }))
    });
    r.check("υ∘ρ(ω) = ω∘λ(υ)", "convolution", pairs(), |(i, j)| {
        compare(json!({ "upsilon": i, "omega": j }), &pull_back(&facts[i].omega, &rhos[j]), &pull_back(&facts[j].omega, &lams[i]))
    });
    r.check("ρ(υ)∘S = S∘λ(υ∘S) and λ(υ)∘S = S∘ρ(υ∘S)", "convolution-2", facts.iter().enumerate(), |(k, f)| {
        let g = factorize(m, w, &pull_back(&f.omega, &s)).ok()?;
        let lam_s = conv.of(&g, ConvolutionKind::Lambda).0;
        let rho_s = conv.of(&g, ConvolutionKind::Rho).0;
        let ok = rhos[k].compose(&s) == s.compose(&lam_s) && lams[k].compose(&s) == s.compose(&rho_s);
        (!ok).then(|| json!({ "functional": k }))
    });
    if let Some(j) = m.a.involution() {
        // (∗∘υ∘∗)(a) = conj(υ(a*)); ∗∘T∘∗ = J∘conj(T)∘J for the antilinear J∘conj
        let star_fn = |f: &[F]| -> Vec<F> { (0..n).map(|i| eval(f, &m.a.star(&m.a.basis(i))).conj()).collect() };
        let star_op = |t: &LinearMap<F>| j.compose(&t.conj()).compose(j);
        r.check("ρ(∗∘υ∘∗) = ∗∘ρ(υ)∘∗ and λ(∗∘υ∘∗) = ∗∘λ(υ)∘∗", "convolution-2", facts.iter().enumerate(), |(k, f)| {
            let g = factorize(m, w, &star_fn(&f.omega)).ok()?;
            let ok = conv.of(&g, ConvolutionKind::Rho).0 == star_op(&rhos[k]) && conv.of(&g, ConvolutionKind::Lambda).0 == star_op(&lams[k]);
            (!ok).then(|| json!({ "functional": k }))
        });
    }
    Ok(r)
}

/// Invariance of the partial integrals restated through convolution operators.
pub fn convolution_invariance<F: Field>(m: &RegularMha<F>, phi_c: &LinearMap<F>, psi_b: &LinearMap<F>) -> Result<Report> {
    let conv = Convolutions::new(m)?;
    let (a, n) = (&m.a, m.dim());
    let s = m.antipode()?;
    let mut r = Report::new();
    let psi_in_a = m.b.embed.compose(psi_b);
    let phi_in_a = m.c.embed.compose(phi_c);
    r.record("λ(_Bψ) = ψ_B = λ(ψ_B)", "convolution-right-invariance", (conv.lambda_b(psi_b) != psi_in_a || conv.lambda_b_right(psi_b) != psi_in_a).then(|| json!("ψ_B")));
    r.record("ρ(_Cφ) = φ_C = ρ(φ_C)", "convolution-left-invariance", (conv.rho_c(phi_c) != phi_in_a || conv.rho_c_right(phi_c) != phi_in_a).then(|| json!("φ_C")));
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    r.check("λ(a·_Bψ)(b) = S(λ(ψ_B·b)(a))", "convolution-right-invariance", pairs(), |(i, j)| {
        let lhs = conv.lambda_b(&shifted(a, psi_b, &a.basis(i), true)).column(j);
        let rhs = s.apply(&conv.lambda_b_right(&shifted(a, psi_b, &a.basis(j), false)).column(i));
        compare(json!({ "a": i, "b": j }), &lhs, &rhs)
    });
    r.check("ρ(φ_C·a)(b) = S(ρ(b·_Cφ)(a))", "convolution-left-invariance", pairs(), |(i, j)| {
        let lhs = conv.rho_c_right(&shifted(a, phi_c, &a.basis(i), false)).column(j);
        let rhs = s.apply(&conv.rho_c(&shifted(a, phi_c, &a.basis(j), true)).column(i));
        compare(json!({ "a": i, "b": j }), &lhs, &rhs)
    });
    Ok(r)
}

/// `σ^φ` and `σ^ψ` with their intertwining properties.
#[derive(Clone, Debug)]
pub struct ModularAutomorphism<F: Field> {
    /// `φ(ab) = φ(bσ^φ(a))`.
    pub sigma_phi: LinearMap<F>,
    pub sigma_psi: LinearMap<F>,
    /// `σ^φ(B) = B` and `σ^ψ(C) = C`.
    pub preserves_bases: bool,
    pub report: Report,
}

pub(crate) fn restricted<F: Field>(f: &LinearMap<F>, s: &Subalgebra<F>) -> Option<LinearMap<F>> {
    let cols: Option<Vec<Vec<F>>> = (0..s.dim()).map(|k| s.coords(&f.apply(&s.basis_element(k)))).collect();
    cols.map(|c| LinearMap::from_columns(s.dim(), &c))
}

fn check_kms<F: Field>(r: &mut Report, name: &str, alg: &FiniteAlgebra<F>, omega: &[F], sigma: &LinearMap<F>) {
    let n = alg.dim();
    r.check(name, "modular-automorphism", (0..n).flat_map(|i| (0..n).map(move |j| (i, j))), |(i, j)| {
        let lhs = eval(omega, &alg.mul(&alg.basis(i), &alg.basis(j)));
        let rhs = eval(omega, &alg.mul(&alg.basis(j), &sigma.column(i)));
        (lhs != rhs).then(|| json!({ "a": i, "b": j }))
    });
}

pub fn modular_automorphism<F: Field>(x: &MeasuredMha<F>) -> Result<ModularAutomorphism<F>> {
    let m = &x.mha;
    let (a, n) = (&m.a, m.dim());
    let sigma_phi = modular_automorphism_of(a, &x.phi.omega).ok_or_else(|| Error::Invalid("φ is not faithful; the measured data is inconsistent".into()))?;
    let sigma_psi = modular_automorphism_of(a, &x.psi.omega).ok_or_else(|| Error::Invalid("ψ is not faithful; the measured data is inconsistent".into()))?;
    let s = m.antipode()?;
    let s2 = s.compose(s);
    let s2_inv = inverse_of(&s2, "S²")?;
    let mut r = Report::new();

    check_kms(&mut r, "φ(ab) = φ(bσ^φ(a))", a, &x.phi.omega, &sigma_phi);
    check_kms(&mut r, "ψ(ab) = ψ(bσ^ψ(a))", a, &x.psi.omega, &sigma_psi);
    r.record("σ^φ is an automorphism", "modular-automorphism", automorphism_failure(a, &sigma_phi, false));
    r.record("σ^ψ is an automorphism", "modular-automorphism", automorphism_failure(a, &sigma_psi, false));
    let on_base = |s: &Subalgebra<F>, f: &LinearMap<F>, g: &LinearMap<F>| (0..s.dim()).find_map(|k| compare(json!({ "base": k }), &f.apply(&s.basis_element(k)), &g.apply(&s.basis_element(k))));
    r.record("σ^φ|_C = S²|_C", "modular-automorphism", on_base(&m.c, &sigma_phi, &s2));
    r.record("σ^ψ|_B = S⁻²|_B", "modular-automorphism", on_base(&m.b, &sigma_psi, &s2_inv));

    let tb = &m.tensors.target_b;
    let tc = &m.tensors.target_c;
    let intertwine = |name: &str, sigma: &LinearMap<F>, l: &LinearMap<F>, rr: &LinearMap<F>, r: &mut Report| {
        r.check(&format!("Δ_B∘{name}"), "modular-automorphism", 0..n, |i| {
            compare(json!({ "a": i }), &m.delta_b.apply(&sigma.column(i)), &tb.project(&apply_legs(&m.rep_b(i), l, rr)))
        });
        r.check(&format!("Δ_C∘{name}"), "modular-automorphism", 0..n, |i| {
            compare(json!({ "a": i }), &m.delta_c.apply(&sigma.column(i)), &tc.project(&apply_legs(&m.rep_c(i), l, rr)))
        });
    };
    intertwine("σ^φ = (S²⊗σ^φ)∘Δ", &sigma_phi, &s2, &sigma_phi, &mut r);
    intertwine("σ^ψ = (σ^ψ⊗S⁻²)∘Δ", &sigma_psi, &sigma_psi, &s2_inv, &mut r);

    let rb = restricted(&sigma_phi, &m.b);
    let rc = restricted(&sigma_psi, &m.c);
    let preserves_bases = rb.is_some() && rc.is_some();
    r.record("σ^φ(B) = B and σ^ψ(C) = C", "modular-automorphism", (!preserves_bases).then(|| json!({ "sigma_phi_B": rb.is_some(), "sigma_psi_C": rc.is_some() })));

    let (bb, cc) = (&m.b.algebra, &m.c.algebra);
    let base_pairs = |s: &Subalgebra<F>| (0..s.dim()).flat_map(move |k| (0..n).map(move |i| (k, i)));
    if let Some(sb) = &rb {
        // S²∘σ^φ and (σ^φ∘S²)⁻¹ on B
        let s2b = restricted(&s2, &m.b).expect("S² preserves B");
        let left = s2b.compose(sb);
        let right = inverse_of(&sb.compose(&s2b), "σ^φ∘S² on B")?;
        r.check("φ_B(xa) = (S²∘σ^φ)(x)φ_B(a)", "bphi-phib", base_pairs(&m.b), |(k, i)| {
            let xa = a.mul(&m.b.basis_element(k), &a.basis(i));
            compare(json!({ "x": k, "a": i }), &x.phi.b_right.apply(&xa), &bb.mul(&left.column(k), &x.phi.b_right.column(i)))
        });
        r.check("_Bφ(ax) = _Bφ(a)(σ^φ∘S²)⁻¹(x)", "bphi-phib", base_pairs(&m.b), |(k, i)| {
            let ax = a.mul(&a.basis(i), &m.b.basis_element(k));
            compare(json!({ "x": k, "a": i }), &x.phi.b_left.apply(&ax), &bb.mul(&x.phi.b_left.column(i), &right.column(k)))
        });
    }
    if let Some(sc) = &rc {
        let s2c = restricted(&s2_inv, &m.c).expect("S⁻² preserves C");
        let left = s2c.compose(sc);
        let right = inverse_of(&sc.compose(&s2c), "σ^ψ∘S⁻² on C")?;
        r.check("ψ_C(ya) = (S⁻²∘σ^ψ)(y)ψ_C(a)", "cpsi-psic", base_pairs(&m.c), |(k, i)| {
            let ya = a.mul(&m.c.basis_element(k), &a.basis(i));
            compare(json!({ "y": k, "a": i }), &x.psi.c_right.apply(&ya), &cc.mul(&left.column(k), &x.psi.c_right.column(i)))
        });
        r.check("_Cψ(ay) = _Cψ(a)(σ^ψ∘S⁻²)⁻¹(y)", "cpsi-psic", base_pairs(&m.c), |(k, i)| {
            let ay = a.mul(&a.basis(i), &m.c.basis_element(k));
            compare(json!({ "y": k, "a": i }), &x.psi.c_left.apply(&ay), &cc.mul(&x.psi.c_left.column(i), &right.column(k)))
        });
    }
    r.check("φ(ya) = φ(aS²(y))", "integrals-modular-base", base_pairs(&m.c), |(k, i)| {
        let y = m.c.basis_element(k);
        let lhs = eval(&x.phi.omega, &a.mul(&y, &a.basis(i)));
        let rhs = eval(&x.phi.omega, &a.mul(&a.basis(i), &s2.apply(&y)));
        (lhs != rhs).then(|| json!({ "y": k, "a": i }))
    });
    r.check("ψ(ax) = ψ(S²(x)a)", "integrals-modular-base", base_pairs(&m.b), |(k, i)| {
        let xb = m.b.basis_element(k);
        let lhs = eval(&x.psi.omega, &a.mul(&a.basis(i), &xb));
        let rhs = eval(&x.psi.omega, &a.mul(&s2.apply(&xb), &a.basis(i)));
        (lhs != rhs).then(|| json!({ "x": k, "a": i }))
    });
    Ok(ModularAutomorphism { sigma_phi, sigma_psi, preserves_bases, report: r })
}

/// `δ⁺` with `φ∘S = δ⁺·φ` and `δ⁻` with `φ∘S⁻¹ = φ·δ⁻`.
#[derive(Clone, Debug)]
pub struct ModularElement<F: Field> {
    pub delta_plus: Vec<F>,
    pub delta_minus: Vec<F>,
    pub report: Report,
}

pub fn modular_element<F: Field>(x: &MeasuredMha<F>, sigma: &ModularAutomorphism<F>) -> Result<ModularElement<F>> {
    let m = &x.mha;
    let (a, n) = (&m.a, m.dim());
    let s = m.antipode()?;
    let s_inv = inverse_of(s, "S")?;
    let phi = &x.phi.omega;
    let psi_plus = pull_back(phi, s);
    let psi_minus = pull_back(phi, &s_inv);
    let inconsistent = || Error::Invalid("φ is not faithful; the measured data is inconsistent".into());
    let delta_plus = lesssim(a, &psi_plus, phi).ok_or_else(inconsistent)?.0;
    let delta_minus = lesssim(a, &psi_minus, phi).ok_or_else(inconsistent)?.1;
    let mut r = Report::new();
    let label = "modular-element-second";

    r.check("φ∘S = δ⁺·φ and φ∘S⁻¹ = φ·δ⁻", label, 0..n, |i| {
        let e = a.basis(i);
        let lhs = vec![eval(phi, &a.mul(&e, &delta_plus)), eval(phi, &a.mul(&delta_minus, &e))];
        compare(json!({ "a": i }), &lhs, &[psi_plus[i].clone(), psi_minus[i].clone()])
    });
    let inv_plus = element_inverse(a, &delta_plus);
    let inv_minus = element_inverse(a, &delta_minus);
    r.record("δ⁺ and δ⁻ invertible", label, (inv_plus.is_none() || inv_minus.is_none()).then(|| json!({ "delta_plus": vec_json(&delta_plus), "delta_minus": vec_json(&delta_minus) })));

    let conv = Convolutions::new(m)?;
    let lam = conv.lambda_b(&x.phi.b_left);
    r.check("_Bφ(a)δ⁺ = λ(φ)(a) = δ⁻φ_B(a)", label, 0..n, |i| {
        let l = a.mul(&m.b.include(&x.phi.b_left.column(i)), &delta_plus);
        let rr = a.mul(&delta_minus, &m.b.include(&x.phi.b_right.column(i)));
        compare(json!({ "a": i, "side": "left" }), &l, &lam.column(i)).or_else(|| compare(json!({ "a": i, "side": "right" }), &rr, &lam.column(i)))
    });
    let one = a.one();
    r.record("S(δ⁺)δ⁻ = 1", label, compare(json!("S(δ⁺)δ⁻"), &a.mul(&s.apply(&delta_plus), &delta_minus), &one));
    r.record("δ⁻S(δ⁺) = 1", label, compare(json!("δ⁻S(δ⁺)"), &a.mul(&delta_minus, &s.apply(&delta_plus)), &one));
    let eps = x.counit.clone();
    r.check("ε·δ⁻ = ε = δ⁺·ε", label, 0..n, |i| {
        let e = a.basis(i);
        let lhs = vec![eval(&eps, &a.mul(&delta_minus, &e)), eval(&eps, &a.mul(&e, &delta_plus))];
        compare(json!({ "a": i }), &lhs, &[eps[i].clone(), eps[i].clone()])
    });
    let (tb, tc) = (&m.tensors.target_b, &m.tensors.target_c);
    let grouplike = [
        ("Δ_B(δ⁺) = δ⁺⊗δ⁺", m.delta_b_of(&delta_plus), tb.project_pure(&delta_plus, &delta_plus)),
        ("Δ_B(δ⁻) = δ⁺⊗δ⁻", m.delta_b_of(&delta_minus), tb.project_pure(&delta_plus, &delta_minus)),
        ("Δ_C(δ⁻) = δ⁻⊗δ⁻", m.delta_c_of(&delta_minus), tc.project_pure(&delta_minus, &delta_minus)),
        ("Δ_C(δ⁺) = δ⁻⊗δ⁺", m.delta_c_of(&delta_plus), tc.project_pure(&delta_minus, &delta_plus)),
    ];
    for (name, lhs, rhs) in grouplike {
        r.record(name, label, compare(json!(name), &lhs, &rhs));
    }
    if a.involution().is_some() {
        r.record("δ⁺ = (δ⁻)*", label, compare(json!("δ⁺"), &delta_plus, &a.star(&delta_minus)));
    }
    if sigma.preserves_bases {
        let sp = &sigma.sigma_phi;
        let s2 = s.compose(s);
        let s2_inv = inverse_of(&s2, "S²")?;
        let sp_inv = inverse_of(sp, "σ^φ")?;
        let sigma_psi_minus = s.compose(&sp_inv).compose(&s_inv);
        let sigma_psi_plus = s_inv.compose(&sp_inv).compose(s);
        r.check("xδ⁻ = δ⁻S²(σ^φ(x)) and xδ⁺ = δ⁺σ^φ(S²(x))", label, 0..m.b.dim(), |k| {
            let xb = m.b.basis_element(k);
            compare(json!({ "x": k, "delta": "-" }), &a.mul(&xb, &delta_minus), &a.mul(&delta_minus, &s2.apply(&sp.apply(&xb))))
                .or_else(|| compare(json!({ "x": k, "delta": "+" }), &a.mul(&xb, &delta_plus), &a.mul(&delta_plus, &sp.apply(&s2.apply(&xb)))))
        });
        r.check("δ⁻y = S⁻²(σ^ψ⁻(y))δ⁻ and yδ⁺ = δ⁺σ^ψ⁺(S⁻²(y))", label, 0..m.c.dim(), |k| {
            let y = m.c.basis_element(k);
            compare(json!({ "y": k, "delta": "-" }), &a.mul(&delta_minus, &y), &a.mul(&s2_inv.apply(&sigma_psi_minus.apply(&y)), &delta_minus))
                .or_else(|| compare(json!({ "y": k, "delta": "+" }), &a.mul(&y, &delta_plus), &a.mul(&delta_plus, &sigma_psi_plus.apply(&s2_inv.apply(&y)))))
        });
    }
    Ok(ModularElement { delta_plus, delta_minus, report: r })
}

/// Left and right integrals for the fixed base weight, compared with
/// `M(B)·φ`, `φ·M(B)` and `M(C)·ψ`, `ψ·M(C)`.
#[derive(Clone, Debug)]
pub struct Uniqueness<F: Field> {
    pub left_integrals: Vec<Vec<F>>,
    pub right_integrals: Vec<Vec<F>>,
    pub report: Report,
}

/// `{a ↦ ω(ax)}` (`right`) or `{a ↦ ω(xa)}` for `x` in a base.
fn rescaled<F: Field>(a: &FiniteAlgebra<F>, base: &Subalgebra<F>, omega: &[F], right: bool) -> Vec<Vec<F>> {
    (0..base.dim())
        .map(|k| {
            let x = base.basis_element(k);
            (0..a.dim()).map(|i| eval(omega, &if right { a.mul(&a.basis(i), &x) } else { a.mul(&x, &a.basis(i)) })).collect()
        })
        .collect()
}

/// All functionals `μ_C∘X` with `X` a partial left integral (`Left`), or
/// `μ_B∘X` with `X` a partial right integral.
pub fn integral_space<F: Field>(m: &RegularMha<F>, w: &BaseWeight<F>, side: IntegralSide) -> Result<Vec<Vec<F>>> {
    let eqs = IntegralEquations::new(m)?;
    let mu = match side {
        IntegralSide::Left => &w.mu_c,
        IntegralSide::Right => &w.mu_b,
    };
    Ok(eqs.solve(side).iter().map(|x| pull_back(mu, x)).collect())
}

pub fn uniqueness_check<F: Field>(x: &MeasuredMha<F>) -> Result<Uniqueness<F>> {
    let m = &x.mha;
    let (a, n) = (&m.a, m.dim());
    let mut r = Report::new();
    let left_integrals = integral_space(m, &x.weight, IntegralSide::Left)?;
    let right_integrals = integral_space(m, &x.weight, IntegralSide::Right)?;
    r.info("left integrals", "integrals-uniqueness", json!({ "dim": left_integrals.len() }));
    r.info("right integrals", "integrals-uniqueness", json!({ "dim": right_integrals.len() }));
    let (phi, psi) = (&x.phi.omega, &x.psi.omega);
    let span_eq = |u: &[Vec<F>], v: &[Vec<F>]| (!same_span(n, u, v)).then(|| json!({ "dims": [u.len(), v.len()] }));
    r.record("left integrals = M(B)·φ", "integrals-uniqueness", span_eq(&left_integrals, &rescaled(a, &m.b, phi, true)));
    r.record("left integrals = φ·M(B)", "integrals-uniqueness", span_eq(&left_integrals, &rescaled(a, &m.b, phi, false)));
    r.record("right integrals = M(C)·ψ", "integrals-uniqueness", span_eq(&right_integrals, &rescaled(a, &m.c, psi, true)));
    r.record("right integrals = ψ·M(C)", "integrals-uniqueness", span_eq(&right_integrals, &rescaled(a, &m.c, psi, false)));

    // (A·_Bφ(A))·ψ = (A·_Cψ(A))·φ and ψ·(φ_B(A)A) = φ·(ψ_C(A)A)
    let family = |omega: &[F], factor: &LinearMap<F>, base: &Subalgebra<F>, right: bool| -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for c in 0..n {
            for e in 0..n {
                let z = base.include(&factor.column(e));
                let mult = if right { a.mul(&a.basis(c), &z) } else { a.mul(&z, &a.basis(c)) };
                out.push((0..n).map(|i| eval(omega, &if right { a.mul(&a.basis(i), &mult) } else { a.mul(&mult, &a.basis(i)) })).collect());
            }
        }
        out
    };
    r.record(
        "(A·_Bφ(A))·ψ = (A·_Cψ(A))·φ",
        "uniqueness-phi-psi",
        span_eq(&family(psi, &x.phi.b_left, &m.b, true), &family(phi, &x.psi.c_left, &m.c, true)),
    );
    r.record(
        "ψ·(φ_B(A)A) = φ·(ψ_C(A)A)",
        "uniqueness-phi-psi",
        span_eq(&family(psi, &x.phi.b_right, &m.b, false), &family(phi, &x.psi.c_right, &m.c, false)),
    );
    let all: Vec<&Vec<F>> = left_integrals.iter().chain(&right_integrals).collect();
    r.check("every integral ω′ satisfies ω′ ≲ φ and ω′ ≲ ψ", "uniqueness-full", all.iter().enumerate(), |(k, w)| {
        (lesssim(a, w, phi).is_none() || lesssim(a, w, psi).is_none()).then(|| json!({ "integral": k }))
    });
    Ok(Uniqueness { left_integrals, right_integrals, report: r })
}

/// Whether `omega` lies in `M(B)·φ`. A left integral for another base weight
/// generally does not.
pub fn in_integral_family<F: Field>(x: &MeasuredMha<F>, omega: &[F]) -> bool {
    let a = &x.mha.a;
    let fam = rescaled(a, &x.mha.b, &x.phi.omega, true);
    crate::exact_linear::in_span(a.dim(), &fam, omega)
}

/// Dual-basis test for a left module over `d` given by the action matrices of
/// `d`'s basis: some `υᵢ ∈ Hom_D(M, D)` and `eᵢ ∈ M` with `m = Σ υᵢ(m)·eᵢ`.
pub fn is_locally_projective<F: Field>(d: &FiniteAlgebra<F>, action: &[LinearMap<F>]) -> bool {
    let k = d.dim();
    let Some(first) = action.first() else { return true };
    let dm = first.dom();
    // Hom_D(M, D): f(d_j·m) = d_j f(m), unknown f as k×dm
    let unknowns = k * dm;
    let cols: Vec<Vec<F>> = (0..unknowns)
        .map(|u| {
            let mut f = LinearMap::zeros(k, dm);
            f[(u / dm, u % dm)] = F::one();
            let mut col = Vec::new();
            for (j, act) in action.iter().enumerate() {
                let lhs = f.compose(act);
                let rhs = d.left_mul_map(&d.basis(j)).compose(&f);
                col.extend(lhs.sub(&rhs).rows().concat());
            }
            col
        })
        .collect();
    let rows = cols[0].len();
    let homs: Vec<LinearMap<F>> = LinearMap::from_columns(rows, &cols).kernel().into_iter().map(|v| LinearMap::from_rows(k, dm, v.chunks(dm).map(|c| c.to_vec()).collect())).collect();
    if homs.is_empty() {
        return dm == 0;
    }
    // u·e = Σ_j u_j action[j] e; unknowns e_i ∈ M for each hom
    let act_of = |u: &[F]| -> LinearMap<F> {
        u.iter().zip(action).fold(LinearMap::zeros(dm, dm), |acc, (c, m)| if c.is_zero() { acc } else { acc.add(&m.scale(c)) })
    };
    let mut sys_cols = Vec::new();
    for h in &homs {
        for t in 0..dm {
            let col: Vec<F> = (0..dm).flat_map(|mm| act_of(&h.column(mm)).column(t)).collect();
            sys_cols.push(col);
        }
    }
    let target: Vec<F> = LinearMap::<F>::identity(dm).columns().concat();
    LinearMap::from_columns(dm * dm, &sys_cols).solve(&target).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Projectivity {
    pub b_left: bool,
    pub b_right: bool,
    pub c_left: bool,
    pub c_right: bool,
}

impl Projectivity {
    pub fn all(&self) -> bool {
        self.b_left && self.b_right && self.c_left && self.c_right
    }
}

/// Local projectivity of `_BA`, `A_B`, `_CA`, `A_C` (base algebras are unital,
/// hence firm).
pub fn local_projectivity<F: Field>(m: &RegularMha<F>) -> (Projectivity, Report) {
    let a = &m.a;
    let module = |s: &Subalgebra<F>, right: bool| -> bool {
        let acts: Vec<LinearMap<F>> = (0..s.dim())
            .map(|k| {
                let x = s.basis_element(k);
                if right {
                    a.right_mul_map(&x)
                } else {
                    a.left_mul_map(&x)
                }
            })
            .collect();
        let alg = if right { s.algebra.opposite() } else { s.algebra.clone() };
        is_locally_projective(&alg, &acts)
    };
    let p = Projectivity {
        b_left: module(&m.b, false),
        b_right: module(&m.b, true),
        c_left: module(&m.c, false),
        c_right: module(&m.c, true),
    };
    let mut r = Report::new();
    for (name, ok) in [("_BA", p.b_left), ("A_B", p.b_right), ("_CA", p.c_left), ("A_C", p.c_right)] {
        r.record(&format!("{name} locally projective"), "projective", (!ok).then(|| json!(name)));
    }
    (p, r)
}

/// Gram invertibility of `φ` and `ψ`, with the hypotheses of the
/// faithfulness theorem recorded first.
pub fn faithfulness_check<F: Field>(x: &MeasuredMha<F>) -> Report {
    let mut r = Report::new();
    let (p, pr) = local_projectivity(&x.mha);
    r.extend(pr);
    let hyp = p.all() && x.phi.is_full() && x.psi.is_full();
    r.info("hypotheses: locally projective, full, B unital", "integrals-faithful", json!(hyp));
    let a = &x.mha.a;
    r.record("φ faithful", "integrals-faithful", (!is_faithful(a, &x.phi.omega)).then(|| json!({ "phi": vec_json(&x.phi.omega) })));
    r.record("ψ faithful", "integrals-faithful", (!is_faithful(a, &x.psi.omega)).then(|| json!({ "psi": vec_json(&x.psi.omega) })));
    r
}

/// Fullness and faithfulness of an arbitrary functional. A non-full integral
/// falls outside the faithfulness theorem and is reported as such, not as a
/// failure.
pub fn integral_faithfulness<F: Field>(m: &RegularMha<F>, w: &BaseWeight<F>, omega: &[F]) -> Result<Report> {
    let f = factorize(m, w, omega)?;
    let mut r = Report::new();
    let full = f.is_full();
    let faithful = is_faithful(&m.a, omega);
    if full {
        r.record("full integral is faithful", "integrals-faithful", (!faithful).then(|| json!({ "omega": vec_json(omega) })));
    } else {
        r.info("not full: outside the theorem's hypotheses", "integrals-faithful", json!({ "faithful": faithful }));
    }
    Ok(r)
}

/// `Â = A·φ` with elements stored as the `a` in `a·φ`, so `(a·φ)(c) = φ(ca)`.
#[derive(Clone, Debug)]
pub struct DualAlgebra<F: Field> {
    /// Structure constants in the basis `eᵢ·φ`.
    pub algebra: FiniteAlgebra<F>,
    pub report: Report,
}

pub fn dual_algebra<F: Field>(x: &MeasuredMha<F>) -> Result<DualAlgebra<F>> {
    let m = &x.mha;
    let (a, n) = (&m.a, m.dim());
    let phi = &x.phi.omega;
    let w = &x.weight;
    let conv = Convolutions::new(m)?;
    let mut r = Report::new();
    // basis functionals e_i·φ
    let g = crate::integration::gram(a, phi);
    let as_elem = |f: &[F]| g.solve(f);
    let funcs: Vec<Vec<F>> = (0..n).map(|i| (0..n).map(|c| eval(phi, &a.mul(&a.basis(c), &a.basis(i)))).collect()).collect();
    r.record("dim Â = dim A", "dual-algebra", (!g.is_injective()).then(|| json!({ "rank": g.rank() })));
    let hat_spans = [
        ("A·φ", crate::integration::gram(a, phi).columns()),
        ("φ·A", g.rows()),
        ("A·ψ", crate::integration::gram(a, &x.psi.omega).columns()),
        ("ψ·A", crate::integration::gram(a, &x.psi.omega).rows()),
    ];
    r.check("A·φ = φ·A = A·ψ = ψ·A", "dual-algebra", hat_spans.iter(), |(name, span)| (!same_span(n, &funcs, span)).then(|| json!(name)));

    let facts: Vec<FactorizableFunctional<F>> = funcs.iter().map(|f| factorize(m, w, f)).collect::<Result<_>>()?;
    let rhos: Vec<LinearMap<F>> = facts.iter().map(|f| conv.of(f, ConvolutionKind::Rho).0).collect();
    let lams: Vec<LinearMap<F>> = facts.iter().map(|f| conv.of(f, ConvolutionKind::Lambda).0).collect();
    let mut table = vec![vec![Vec::new(); n]; n];
    let mut failure = None;
    let mut formula_failure = None;
    let t_lambda = m.canonical_maps().t_lambda.inverse.clone();
    let tl = &m.tensors.t_lambda;
    for i in 0..n {
        for j in 0..n {
            let prod = pull_back(&funcs[i], &rhos[j]);
            let other = pull_back(&funcs[j], &lams[i]);
            if prod != other && failure.is_none() {
                failure = Some(json!({ "i": i, "j": j }));
            }
            let Some(coeffs) = as_elem(&prod) else {
                return Err(Error::rejected("ωω′ ∈ Â", "dual-algebra", json!({ "i": i, "j": j })));
            };
            // f = (φ_C⊗ι)(T_λ⁻¹(a⊗b)) with c⊗d ↦ dφ_C(c)
            if let Some(inv) = &t_lambda {
                let pre = tl.section(&inv.apply(&m.tensors.target_b.project_pure(&a.basis(i), &a.basis(j))));
                let f = pre.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(vec![F::zero(); n], |acc, (k, c)| {
                    vec_add(&acc, &vec_scale(&a.mul(&a.basis(k % n), &m.c.include(&x.phi_c.column(k / n))), c))
                });
                if f != coeffs && formula_failure.is_none() {
                    formula_failure = Some(json!({ "i": i, "j": j, "formula": vec_json(&f), "direct": vec_json(&coeffs) }));
                }
            } else if formula_failure.is_none() {
                formula_failure = Some(json!("T_λ not invertible"));
            }
            table[i][j] = coeffs;
        }
    }
    r.record("ω∘ρ(ω′) = ω′∘λ(ω)", "dual-algebra", failure);
    r.record("ωω′ = f·φ with f = (φ_C⊗ι)(T_λ⁻¹(a⊗b))", "dual-product", formula_failure);
    let labels = (0..n).map(|i| format!("{}·φ", a.labels()[i])).collect();
    let hat = FiniteAlgebra::from_dense(n, labels, |i, j| table[i][j].clone());
    let assoc = crate::algebra_core::check_algebra(&hat);
    r.record("Â associative", "dual-algebra", assoc.failures().first().map(|e| json!(e.axiom)));
    let products: Vec<Vec<F>> = (0..n).flat_map(|i| (0..n).map(|j| hat.mul(&hat.basis(i), &hat.basis(j))).collect::<Vec<_>>()).collect();
    r.record("ÂÂ = Â", "dual-algebra", (crate::exact_linear::span_rank(n, &products) != n).then(|| json!("not idempotent")));
    let nondeg = (0..n).all(|i| !hat.left_mul_map(&hat.basis(i)).is_zero() && !hat.right_mul_map(&hat.basis(i)).is_zero());
    r.record("Â non-degenerate on basis elements", "dual-algebra", (!nondeg).then(|| json!("zero product")));

    // ω∗a = ρ(ω)(a), a∗ω = λ(ω)(a) make A a bimodule
    let triples = || (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
    let hat_rho = |coeffs: &[F]| coeffs.iter().zip(&rhos).fold(LinearMap::zeros(n, n), |acc, (c, r)| acc.add(&r.scale(c)));
    let hat_lam = |coeffs: &[F]| coeffs.iter().zip(&lams).fold(LinearMap::zeros(n, n), |acc, (c, l)| acc.add(&l.scale(c)));
    r.check("ω∗(ω′∗a) = (ωω′)∗a and (a∗ω)∗ω′ = a∗(ωω′)", "dual-algebra", triples(), |(i, j, k)| {
        let left = rhos[i].compose(&rhos[j]).column(k) != hat_rho(&table[i][j]).column(k);
        let right = lams[j].compose(&lams[i]).column(k) != hat_lam(&table[i][j]).column(k);
        (left || right).then(|| json!({ "i": i, "j": j, "a": k }))
    });
    r.check("(ω∗a)∗ω′ = ω∗(a∗ω′)", "dual-algebra", triples(), |(i, j, k)| {
        (lams[j].compose(&rhos[i]).column(k) != rhos[i].compose(&lams[j]).column(k)).then(|| json!({ "i": i, "j": j, "a": k }))
    });
    let eps = &x.counit;
    let fe = factorize(m, w, eps)?;
    let (le, re) = (conv.of(&fe, ConvolutionKind::Lambda).0, conv.of(&fe, ConvolutionKind::Rho).0);
    r.check("υ∘ρ(ω) = ω∘λ(υ) for υ ∈ {ε} ∪ Â", "dual-algebra", 0..n, |i| {
        compare(json!({ "omega": i }), &pull_back(eps, &rhos[i]), &pull_back(&funcs[i], &le)).or_else(|| compare(json!({ "omega": i, "side": "λ" }), &pull_back(eps, &lams[i]), &pull_back(&funcs[i], &re)))
    });
    // j(a·φ)(T) = φ(Ta) agrees with j(φ·σ⁻¹(a))(T) = φ(σ⁻¹(a)T)
    if let Some(sigma) = modular_automorphism_of(a, phi) {
        let sigma_inv = inverse_of(&sigma, "σ^φ")?;
        r.check("j(a·φ) = j(φ·σ⁻¹(a))", "extension-multipliers", (0..n).flat_map(|i| (0..n).map(move |t| (i, t))), |(i, t)| {
            let lhs = eval(phi, &a.mul(&a.basis(t), &a.basis(i)));
            let rhs = eval(phi, &a.mul(&sigma_inv.column(i), &a.basis(t)));
            (lhs != rhs).then(|| json!({ "a": i, "T": t }))
        });
    }
    Ok(DualAlgebra { algebra: hat, report: r })
}

/// Rescaling of `φ` by an invertible `z ∈ _Bφ(C)` to `h = z⁻¹·φ`.
#[derive(Clone, Debug)]
pub struct HaarAnalysis<F: Field> {
    pub z: Option<Vec<F>>,
    pub h: Option<Vec<F>>,
    /// `h|_B = μ_B`.
    pub haar: bool,
    pub report: Report,
}

pub fn haar_analysis<F: Field>(x: &MeasuredMha<F>, sigma: &ModularAutomorphism<F>, delta: &ModularElement<F>) -> Result<HaarAnalysis<F>> {
    let m = &x.mha;
    let (a, n) = (&m.a, m.dim());
    if a.unit().is_none() {
        return Err(Error::Invalid("Haar rescaling needs a unital total algebra".into()));
    }
    if !sigma.preserves_bases {
        return Err(Error::Invalid("Haar rescaling needs σ^φ(B) = B".into()));
    }
    let mut r = Report::new();
    let (phi, psi) = (&x.phi.omega, &x.psi.omega);
    let one = a.one();
    // ψ(a_Bφ(1)) = ψ(φ_B(1)a) = φ(a_Cψ(1)) = φ(ψ_C(1)a)
    let bphi1 = m.b.include(&x.phi.b_left.apply(&one));
    let phib1 = m.b.include(&x.phi.b_right.apply(&one));
    let cpsi1 = m.c.include(&x.psi.c_left.apply(&one));
    let psic1 = m.c.include(&x.psi.c_right.apply(&one));
    r.check("ψ(a·_Bφ(1)) = ψ(φ_B(1)a) = φ(a·_Cψ(1)) = φ(ψ_C(1)a)", "unital-uniqueness-1", 0..n, |i| {
        let e = a.basis(i);
        let vals = [eval(psi, &a.mul(&e, &bphi1)), eval(psi, &a.mul(&phib1, &e)), eval(phi, &a.mul(&e, &cpsi1)), eval(phi, &a.mul(&psic1, &e))];
        vals.iter().any(|v| *v != vals[0]).then(|| json!({ "a": i }))
    });

    let image: Vec<Vec<F>> = (0..m.c.dim()).map(|k| m.b.include(&x.phi.b_left.apply(&m.c.basis_element(k)))).collect();
    let mut z = None;
    for seed in 0..16u64 {
        let cand = if seed == 0 && !image.is_empty() {
            image[0].clone()
        } else {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            image.iter().fold(vec![F::zero(); n], |acc, v| vec_add(&acc, &vec_scale(v, &F::from_i64(rand::Rng::gen_range(&mut rng, 1..=31)))))
        };
        if element_inverse(a, &cand).is_some() {
            z = Some(cand);
            break;
        }
    }
    let Some(z) = z else {
        r.info("invertible z ∈ _Bφ(C)", "integrals-proper", json!("none found"));
        return Ok(HaarAnalysis { z: None, h: None, haar: false, report: r });
    };
    let z_inv = element_inverse(a, &z).expect("checked");
    let h: Vec<F> = (0..n).map(|i| eval(phi, &a.mul(&a.basis(i), &z_inv))).collect();
    let s = m.antipode()?;
    r.record("δ⁺ = z⁻¹S(z)", "integrals-proper", compare(json!("δ⁺"), &delta.delta_plus, &a.mul(&z_inv, &s.apply(&z))));
    r.record("h∘S = h", "integrals-proper", compare(json!("h∘S"), &pull_back(&h, s), &h));
    let fh = factorize(m, &x.weight, &h)?;
    let eqs = IntegralEquations::new(m)?;
    r.record("h is a left integral", "integrals-proper", (eqs.verdicts(&fh.c_left, IntegralSide::Left)? != [true; 3]).then(|| json!("_Ch")));
    r.record("h is a right integral", "integrals-proper", (eqs.verdicts(&fh.b_left, IntegralSide::Right)? != [true; 3]).then(|| json!("_Bh")));

    let restrict = |s: &Subalgebra<F>| -> Vec<F> { (0..s.dim()).map(|k| eval(&h, &s.basis_element(k))).collect() };
    let haar = restrict(&m.b) == x.weight.mu_b;
    if haar {
        r.record("h|_B = μ_B ⟹ h|_C = μ_C", "unital-uniqueness-2", compare(json!("h|_C"), &restrict(&m.c), &x.weight.mu_c));
        let ones = |s: &Subalgebra<F>| s.coords(&one).expect("unital base");
        r.record("_Ch_C(1) = 1 and _Bh_B(1) = 1", "unital-uniqueness-2", compare(json!("_Ch(1)"), &fh.c_left.apply(&one), &ones(&m.c)).or_else(|| compare(json!("_Bh(1)"), &fh.b_left.apply(&one), &ones(&m.b))));
    } else {
        r.info("h|_B = μ_B", "unital-uniqueness-2", json!(false));
    }
    Ok(HaarAnalysis { z: Some(z), h: Some(h), haar, report: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{build_function_algebroid, function_integrals, measured_example, named_example, FiniteGroupoid, EXAMPLE_NAMES};
    use crate::integration::assemble_measured;
    use crate::Rational as Q;
    use num_traits::Zero;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn p2_weighted() -> MeasuredMha<Q> {
        let g = FiniteGroupoid::pair(2);
        let m = build_function_algebroid::<Q>(&g);
        let ints = function_integrals(&g, &[q(1), q(1)]);
        assemble_measured(&m, &BaseWeight::symmetric(vec![q(1), q(4)]), &ints.phi_c, &ints.psi_b).unwrap()
    }

    #[test]
    fn counit_convolution_is_the_identity() {
        for name in EXAMPLE_NAMES {
            let x = measured_example::<Q>(name, None, None).unwrap();
            let fe = factorize(&x.mha, &x.weight, &x.counit).unwrap();
            for kind in [ConvolutionKind::Lambda, ConvolutionKind::Rho] {
                let (op, r) = convolution(&x.mha, &x.weight, &fe, kind).unwrap();
                assert!(r.all_pass(), "{name}: {:?}", r.failures());
                assert!(op.map.is_identity(), "{name} {kind:?}");
            }
        }
    }

    #[test]
    fn convolution_lemmas_on_every_example() {
        for name in EXAMPLE_NAMES {
            let x = measured_example::<Q>(name, None, None).unwrap();
            let n = x.mha.dim();
            let mut fs = vec![x.phi.omega.clone(), x.psi.omega.clone()];
            fs.push((0..n).map(|i| q(i as i64 * 3 - 2)).collect());
            let r = convolution_laws(&x.mha, &x.weight, &fs).unwrap();
            assert!(r.all_pass(), "{name}: {:?}", r.failures());
            let r = convolution_invariance(&x.mha, &x.phi_c, &x.psi_b).unwrap();
            assert!(r.all_pass(), "{name}: {:?}", r.failures());
        }
    }

    #[test]
    fn modular_automorphism_of_commutative_and_tensor_examples() {
        let x = p2_weighted();
        let s = modular_automorphism(&x).unwrap();
        assert!(s.sigma_phi.is_identity());
        assert!(s.report.all_pass(), "{:?}", s.report.failures());
        let t = measured_example::<Q>("tensor", None, None).unwrap();
        let st = modular_automorphism(&t).unwrap();
        let s2 = t.mha.antipode().unwrap().compose(t.mha.antipode().unwrap());
        assert_eq!(st.sigma_phi, s2);
        assert_eq!(st.sigma_psi, s2);
        for name in EXAMPLE_NAMES {
            let x = measured_example::<Q>(name, None, None).unwrap();
            let s = modular_automorphism(&x).unwrap();
            assert!(s.report.all_pass(), "{name}: {:?}", s.report.failures());
        }
    }

    #[test]
    fn modular_element_of_p2_functions() {
        let x = p2_weighted();
        let s = modular_automorphism(&x).unwrap();
        let d = modular_element(&x, &s).unwrap();
        assert!(d.report.all_pass(), "{:?}", d.report.failures());
        let expected = vec![q(1), q(4), Q::new(1.into(), 4.into()), q(1)];
        assert_eq!(d.delta_plus, expected);
        assert!(d.report.passed("_Bφ(a)δ⁺ = λ(φ)(a) = δ⁻φ_B(a)"));
    }

    #[test]
    fn trivial_modular_elements() {
        for name in ["convolution", "crossed-product", "group-algebra"] {
            let x = measured_example::<Q>(name, None, None).unwrap();
            let s = modular_automorphism(&x).unwrap();
            let d = modular_element(&x, &s).unwrap();
            assert!(d.report.all_pass(), "{name}: {:?}", d.report.failures());
            let one = x.mha.a.one();
            assert_eq!(d.delta_plus, one, "{name}");
            assert_eq!(d.delta_minus, one, "{name}");
        }
    }

    #[test]
    fn uniqueness_dimensions() {
        let x = p2_weighted();
        let u = uniqueness_check(&x).unwrap();
        assert!(u.report.all_pass(), "{:?}", u.report.failures());
        assert_eq!(u.left_integrals.len(), 2);
        let z2 = measured_example::<Q>("group-algebra", None, None).unwrap();
        let u = uniqueness_check(&z2).unwrap();
        assert_eq!(u.left_integrals.len(), 1);
        for name in EXAMPLE_NAMES {
            let x = measured_example::<Q>(name, None, None).unwrap();
            let u = uniqueness_check(&x).unwrap();
            assert!(u.report.all_pass(), "{name}: {:?}", u.report.failures());
        }
    }

    #[test]
    fn integral_for_another_weight_is_out_of_family() {
        let x = p2_weighted();
        let other: Vec<Q> = pull_back(&[q(1), q(1)], &x.phi_c);
        assert!(!in_integral_family(&x, &other));
        let same: Vec<Q> = pull_back(&[q(3), q(12)], &x.phi_c);
        assert!(in_integral_family(&x, &same));
    }

    #[test]
    fn local_projectivity_of_examples_and_a_counterexample() {
        for name in EXAMPLE_NAMES {
            let ex = named_example::<Q>(name, None).unwrap();
            let (p, _) = local_projectivity(&ex.mha);
            assert!(p.all(), "{name}");
        }
        let dual_numbers = FiniteAlgebra::<Q>::from_products(2, vec!["1".into(), "x".into()], |i, j| if i + j < 2 { vec![(i + j, q(1))] } else { vec![] });
        let zero = LinearMap::zeros(1, 1);
        assert!(!is_locally_projective(&dual_numbers, &[LinearMap::identity(1), zero]));
        let free = [dual_numbers.left_mul_map(&dual_numbers.basis(0)), dual_numbers.left_mul_map(&dual_numbers.basis(1))];
        assert!(is_locally_projective(&dual_numbers, &free));
        let field = FiniteAlgebra::<Q>::from_products(1, vec!["1".into()], |_, _| vec![(0, q(1))]);
        assert!(is_locally_projective(&field, &[LinearMap::identity(3)]));
    }

    #[test]
    fn faithfulness() {
        let x = p2_weighted();
        let r = faithfulness_check(&x);
        assert!(r.all_pass(), "{:?}", r.failures());
        assert!(!is_faithful(&x.mha.a, &vec![q(0); 4]));
        let g = FiniteGroupoid::pair(2);
        let partial = function_integrals(&g, &[q(1), q(0)]);
        let omega = pull_back(&[q(1), q(4)], &partial.phi_c);
        let r = integral_faithfulness(&x.mha, &x.weight, &omega).unwrap();
        assert!(r.all_pass());
        assert!(!is_faithful(&x.mha.a, &omega));
    }

    #[test]
    fn dual_of_the_group_algebra_is_pointwise() {
        let x = measured_example::<Q>("group-algebra", None, None).unwrap();
        let d = dual_algebra(&x).unwrap();
        assert!(d.report.all_pass(), "{:?}", d.report.failures());
        let h = &d.algebra;
        let phi_e = x.phi.omega[0].clone();
        assert!(!phi_e.is_zero());
        assert_eq!(h.mul(&h.basis(0), &h.basis(0)), vec_scale(&h.basis(0), &phi_e));
        assert_eq!(h.mul(&h.basis(1), &h.basis(1)), vec_scale(&h.basis(1), &phi_e));
        assert!(h.mul(&h.basis(0), &h.basis(1)).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn dual_of_p2_functions_is_matrices() {
        let g = FiniteGroupoid::pair(2);
        let x = p2_weighted();
        let d = dual_algebra(&x).unwrap();
        assert!(d.report.all_pass(), "{:?}", d.report.failures());
        let h = &d.algebra;
        // products of point functionals follow composition of arrows
        let orient = |flip: bool| {
            (0..4).all(|i| {
                (0..4).all(|j| {
                    let p = h.mul(&h.basis(i), &h.basis(j));
                    match if flip { g.compose(j, i) } else { g.compose(i, j) } {
                        Some(k) => p.iter().enumerate().all(|(l, c)| (l == k) != c.is_zero()),
                        None => p.iter().all(|c| c.is_zero()),
                    }
                })
            })
        };
        assert!(orient(false) || orient(true));
        for name in EXAMPLE_NAMES {
            let x = measured_example::<Q>(name, None, None).unwrap();
            let d = dual_algebra(&x).unwrap();
            assert!(d.report.all_pass(), "{name}: {:?}", d.report.failures());
            assert_eq!(d.algebra.dim(), x.mha.dim());
        }
    }

    #[test]
    fn haar_rescaling() {
        let z2 = measured_example::<Q>("group-algebra", None, None).unwrap();
        let s = modular_automorphism(&z2).unwrap();
        let d = modular_element(&z2, &s).unwrap();
        let h = haar_analysis(&z2, &s, &d).unwrap();
        assert!(h.report.all_pass(), "{:?}", h.report.failures());
        assert_eq!(h.h.unwrap(), vec![q(1), q(0)]);
        for name in EXAMPLE_NAMES {
            let x = measured_example::<Q>(name, None, None).unwrap();
            let s = modular_automorphism(&x).unwrap();
            let d = modular_element(&x, &s).unwrap();
            let h = haar_analysis(&x, &s, &d).unwrap();
            assert!(h.z.is_some(), "{name}");
            assert!(h.report.all_pass(), "{name}: {:?}", h.report.failures());
        }
    }
}
