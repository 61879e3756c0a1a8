//! The example families: functions on and convolution algebras of finite
//! groupoids, tensor products `C⊗B`, symmetric crossed products `C#H` and
//! two-sided crossed products `C#H#B`.

use serde_json::json;

use crate::algebra_core::FiniteAlgebra;
use crate::balanced_tensor::tensor;
use crate::bialgebroid::{MhaParts, RegularMha};
use crate::error::{Error, Result};
use crate::exact_linear::{unit_vec, vec_scale, Field, LinearMap};
use crate::report::compare;

use super::groupoid::FiniteGroupoid;
use super::hopf::{FiniteHopf, HopfAction};

/// A partial left integral `φ_C: A → C` and a partial right integral `ψ_B: A → B`.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardIntegrals<F: Field> {
    pub phi_c: LinearMap<F>,
    pub psi_b: LinearMap<F>,
}

fn zero<F: Field>(n: usize) -> Vec<F> {
    vec![F::zero(); n]
}

/// Pointwise algebra `F^n` with complex conjugation.
pub fn pointwise<F: Field>(n: usize, labels: Vec<String>) -> FiniteAlgebra<F> {
    FiniteAlgebra::from_products(n, labels, |i, j| if i == j { vec![(i, F::one())] } else { vec![] })
        .with_involution(LinearMap::identity(n))
        .expect("pointwise conjugation")
}

/// `F^{G⁰}` labelled by the units of `g`.
pub fn unit_functions<F: Field>(g: &FiniteGroupoid) -> FiniteAlgebra<F> {
    pointwise(g.units.len(), g.units.iter().map(|&u| g.labels[u].clone()).collect())
}

/// Functions on the arrows with pointwise product; `B = s*F^{G⁰}`,
/// `C = t*F^{G⁰}`, `Δ` the pull-back of composition, `S(f)(γ) = f(γ⁻¹)`.
pub fn build_function_algebroid<F: Field>(g: &FiniteGroupoid) -> RegularMha<F> {
    let n = g.arrows();
    let k = g.units.len();
    let a = pointwise::<F>(n, g.labels.clone());
    let pull = |side: &dyn Fn(usize) -> usize, u: usize| -> Vec<F> { (0..n).map(|c| if side(c) == u { F::one() } else { F::zero() }).collect() };
    let b_basis = (0..k).map(|u| pull(&|c| g.source_index(c), u)).collect();
    let c_basis = (0..k).map(|u| pull(&|c| g.target_index(c), u)).collect();
    let delta: Vec<Vec<F>> = (0..n)
        .map(|c| {
            let mut v: Vec<F> = zero(n * n);
            for a1 in 0..n {
                for a2 in 0..n {
                    if g.compose(a1, a2) == Some(c) {
                        v[a1 * n + a2] = F::one();
                    }
                }
            }
            v
        })
        .collect();
    let restrict = LinearMap::from_fn(k, n, |u, c| if g.is_unit(c) && g.unit_index(c) == u { F::one() } else { F::zero() });
    let s = LinearMap::from_fn(n, n, |r, c| if r == g.inverse[c] { F::one() } else { F::zero() });
    RegularMha::new(MhaParts {
        name: "function-algebroid".into(),
        algebra: a,
        b_basis,
        c_basis,
        s_b: LinearMap::identity(k),
        s_c: LinearMap::identity(k),
        delta_b: delta.clone(),
        delta_c: delta,
        eps_b: Some(restrict.clone()),
        eps_c: Some(restrict),
        antipode: Some(s),
    })
    .expect("function algebroid")
}

/// Convolution algebra with `f*(γ) = conj(f(γ⁻¹))`, `B = C = F^{G⁰}`,
/// `Δ(δ_γ) = δ_γ⊗δ_γ`, `ε_B(δ_γ) = δ_{t(γ)}`, `ε_C(δ_γ) = δ_{s(γ)}`.
pub fn build_convolution_algebroid<F: Field>(g: &FiniteGroupoid) -> RegularMha<F> {
    let n = g.arrows();
    let k = g.units.len();
    let inv = LinearMap::from_fn(n, n, |r, c| if r == g.inverse[c] { F::one() } else { F::zero() });
    let a = FiniteAlgebra::from_products(n, g.labels.clone(), |x, y| g.compose(x, y).map(|z| vec![(z, F::one())]).unwrap_or_default())
        .with_involution(inv.clone())
        .expect("convolution involution");
    let base: Vec<Vec<F>> = g.units.iter().map(|&u| unit_vec(n, u)).collect();
    let delta: Vec<Vec<F>> = (0..n).map(|c| tensor(&unit_vec(n, c), &unit_vec(n, c))).collect();
    let eps = |side: &dyn Fn(usize) -> usize| LinearMap::from_fn(k, n, |u, c| if side(c) == u { F::one() } else { F::zero() });
    RegularMha::new(MhaParts {
        name: "convolution".into(),
        algebra: a,
        b_basis: base.clone(),
        c_basis: base,
        s_b: LinearMap::identity(k),
        s_c: LinearMap::identity(k),
        delta_b: delta.clone(),
        delta_c: delta,
        eps_b: Some(eps(&|c| g.target_index(c))),
        eps_c: Some(eps(&|c| g.source_index(c))),
        antipode: Some(inv),
    })
    .expect("convolution algebroid")
}

/// `A = C⊗B` (index `y·dim B + x`) with `Δ_B(y⊗x) = (y⊗1)⊗(1⊗x) = Δ_C(y⊗x)`,
/// `ε_B(y⊗x) = xS_B⁻¹(y)`, `ε_C(y⊗x) = S_C⁻¹(x)y`, `S(y⊗x) = S_B(x)⊗S_C(y)`.
pub fn build_tensor_algebroid<F: Field>(b: &FiniteAlgebra<F>, c: &FiniteAlgebra<F>, s_b: &LinearMap<F>, s_c: &LinearMap<F>) -> Result<RegularMha<F>> {
    let (db, dc) = (b.dim(), c.dim());
    let (one_b, one_c) = match (b.unit(), c.unit()) {
        (Some(x), Some(y)) => (x.clone(), y.clone()),
        _ => return Err(Error::Invalid("tensor algebroid needs unital bases".into())),
    };
    let s_b_inv = s_b.inverse().ok_or_else(|| Error::Invalid("S_B not invertible".into()))?;
    let s_c_inv = s_c.inverse().ok_or_else(|| Error::Invalid("S_C not invertible".into()))?;
    let mut a = c.tensor(b);
    if let (Some(jc), Some(jb)) = (c.involution(), b.involution()) {
        a = a.with_involution(jc.kron(jb))?;
    }
    let n = dc * db;
    let el = |y: &[F], x: &[F]| tensor(y, x);
    let b_basis = (0..db).map(|x| el(&one_c, &unit_vec(db, x))).collect();
    let c_basis = (0..dc).map(|y| el(&unit_vec(dc, y), &one_b)).collect();
    let delta: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let (y, x) = (i / db, i % db);
            tensor(&el(&unit_vec(dc, y), &one_b), &el(&one_c, &unit_vec(db, x)))
        })
        .collect();
    let eps_b = LinearMap::from_columns(db, &(0..n).map(|i| b.mul(&unit_vec(db, i % db), &s_b_inv.column(i / db))).collect::<Vec<_>>());
    let eps_c = LinearMap::from_columns(dc, &(0..n).map(|i| c.mul(&s_c_inv.column(i % db), &unit_vec(dc, i / db))).collect::<Vec<_>>());
    let s = LinearMap::from_columns(n, &(0..n).map(|i| el(&s_b.column(i % db), &s_c.column(i / db))).collect::<Vec<_>>());
    RegularMha::new(MhaParts {
        name: "tensor".into(),
        algebra: a,
        b_basis,
        c_basis,
        s_b: s_b.clone(),
        s_c: s_c.clone(),
        delta_b: delta.clone(),
        delta_c: delta,
        eps_b: Some(eps_b),
        eps_c: Some(eps_c),
        antipode: Some(s),
    })
}

/// Smash product `C#H` (index `y·dim H + h`) for a commutative `C` with a
/// symmetric module-algebra action; `B = C`, `S_B = S_C = ι`.
pub fn build_crossed_product<F: Field>(c: &FiniteAlgebra<F>, h: &FiniteHopf<F>, act: &HopfAction<F>) -> Result<RegularMha<F>> {
    let (dc, dh) = (c.dim(), h.dim());
    let n = dc * dh;
    for i in 0..dc {
        for j in 0..dc {
            if let Some(w) = compare(json!([i, j]), &c.mul(&c.basis(i), &c.basis(j)), &c.mul(&c.basis(j), &c.basis(i))) {
                return Err(Error::rejected("crossed-product", "chb-action-algebra", json!({ "C not commutative": w })));
            }
        }
    }
    if let Some(w) = act.module_algebra_failure(h, c, false) {
        return Err(Error::rejected("crossed-product", "chb-action-algebra", w));
    }
    if let Some(w) = act.symmetry_failure(h) {
        return Err(Error::rejected("crossed-product", "ch-symmetric", w));
    }
    let one_c = c.one();
    let one_h = h.one();
    let hh = &h.algebra;
    let labels = c.labels().iter().flat_map(|y| hh.labels().iter().map(move |g| format!("{y}{g}"))).collect();
    // (y⊗h)(y'⊗h') = y(h₍₁₎▷y') ⊗ h₍₂₎h'
    let mut a = FiniteAlgebra::from_dense(n, labels, |p, q| {
        let (y, g) = (p / dh, p % dh);
        let (y2, g2) = (q / dh, q % dh);
        let mut out: Vec<F> = zero(n);
        for (g1, g2a, k) in h.coproduct(g) {
            let cy = c.mul(&c.basis(y), &act.act(g1, &c.basis(y2)));
            let hv = hh.mul(&hh.basis(g2a), &hh.basis(g2));
            for (o, v) in out.iter_mut().zip(tensor(&cy, &hv)) {
                *o = o.add_ref(&k.mul_ref(&v));
            }
        }
        out
    });
    let el = |y: &[F], g: &[F]| tensor(y, g);
    if let (Some(_), Some(_)) = (c.involution(), hh.involution()) {
        // (yh)* = h*y*
        let cols: Vec<Vec<F>> = (0..n)
            .map(|p| {
                let hs = el(&one_c, &hh.star(&hh.basis(p % dh)));
                let ys = el(&c.star(&c.basis(p / dh)), &one_h);
                a.mul(&hs, &ys)
            })
            .collect();
        a = a.clone().with_involution(LinearMap::from_columns(n, &cols)).unwrap_or(a);
    }
    let base: Vec<Vec<F>> = (0..dc).map(|y| el(&unit_vec(dc, y), &one_h)).collect();
    // Δ_B(yh) = yh₍₁₎ ⊗ h₍₂₎
    let delta_b: Vec<Vec<F>> = (0..n)
        .map(|p| {
            let (y, g) = (p / dh, p % dh);
            let mut v: Vec<F> = zero(n * n);
            for (g1, g2, k) in h.coproduct(g) {
                let t = tensor(&el(&unit_vec(dc, y), &unit_vec(dh, g1)), &el(&one_c, &unit_vec(dh, g2)));
                for (o, x) in v.iter_mut().zip(t) {
                    *o = o.add_ref(&k.mul_ref(&x));
                }
            }
            v
        })
        .collect();
    // Δ_C(hy) = h₍₁₎ ⊗ h₍₂₎y, ε_C(hy) = yε_H(h), on the spanning set {hy}
    let hy = |g: usize, y: usize| a.mul(&el(&one_c, &unit_vec(dh, g)), &el(&unit_vec(dc, y), &one_h));
    let spanning: Vec<Vec<F>> = (0..dh).flat_map(|g| (0..dc).map(move |y| (g, y))).map(|(g, y)| hy(g, y)).collect();
    let delta_c_vals: Vec<Vec<F>> = (0..dh)
        .flat_map(|g| (0..dc).map(move |y| (g, y)))
        .map(|(g, y)| {
            let mut v: Vec<F> = zero(n * n);
            for (g1, g2, k) in h.coproduct(g) {
                let right = a.mul(&el(&one_c, &unit_vec(dh, g2)), &el(&unit_vec(dc, y), &one_h));
                let t = tensor(&el(&one_c, &unit_vec(dh, g1)), &right);
                for (o, x) in v.iter_mut().zip(t) {
                    *o = o.add_ref(&k.mul_ref(&x));
                }
            }
            v
        })
        .collect();
    let delta_c_map = LinearMap::from_spanning(n, n * n, &spanning, &delta_c_vals).ok_or_else(|| Error::Invalid("{hy} does not span C#H".into()))?;
    let eps_c_vals: Vec<Vec<F>> = (0..dh).flat_map(|g| (0..dc).map(move |y| (g, y))).map(|(g, y)| vec_scale(&unit_vec(dc, y), &h.eps[g])).collect();
    let eps_c = LinearMap::from_spanning(n, dc, &spanning, &eps_c_vals).expect("spanning checked");
    let eps_b = LinearMap::from_columns(dc, &(0..n).map(|p| vec_scale(&unit_vec(dc, p / dh), &h.eps[p % dh])).collect::<Vec<_>>());
    // S(yh) = S_H(h)y
    let s = LinearMap::from_columns(n, &(0..n).map(|p| a.mul(&el(&one_c, &h.antipode.column(p % dh)), &el(&unit_vec(dc, p / dh), &one_h))).collect::<Vec<_>>());
    RegularMha::new(MhaParts {
        name: "crossed-product".into(),
        algebra: a,
        b_basis: base.clone(),
        c_basis: base,
        s_b: LinearMap::identity(dc),
        s_c: LinearMap::identity(dc),
        delta_b,
        delta_c: delta_c_map.columns(),
        eps_b: Some(eps_b),
        eps_c: Some(eps_c),
        antipode: Some(s),
    })
}

/// Data for `C#H#B`.
#[derive(Clone, Debug)]
pub struct TwoSidedData<F: Field> {
    pub c: FiniteAlgebra<F>,
    pub h: FiniteHopf<F>,
    pub b: FiniteAlgebra<F>,
    /// `h ▷ y` on `C`.
    pub left: HopfAction<F>,
    /// `x ◁ h` on `B`.
    pub right: HopfAction<F>,
    pub s_b: LinearMap<F>,
    pub s_c: LinearMap<F>,
}

fn act_vec<F: Field>(act: &HopfAction<F>, h: &[F], v: &[F]) -> Vec<F> {
    let mut out: Vec<F> = zero(v.len());
    for (k, c) in h.iter().enumerate() {
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(act.act(k, v)) {
                *o = o.add_ref(&c.mul_ref(&x));
            }
        }
    }
    out
}

/// Two-sided crossed product `A = C⊗H⊗B`, index `(y·dim H + h)·dim B + x`.
pub fn build_two_sided<F: Field>(d: &TwoSidedData<F>) -> Result<RegularMha<F>> {
    let (c, h, b) = (&d.c, &d.h, &d.b);
    let (dc, dh, db) = (c.dim(), h.dim(), b.dim());
    let n = dc * dh * db;
    if let Some(w) = d.left.module_algebra_failure(h, c, false) {
        return Err(Error::rejected("two-sided", "chb-action-algebra", w));
    }
    if let Some(w) = d.right.module_algebra_failure(h, b, true) {
        return Err(Error::rejected("two-sided", "chb-action-algebra", w));
    }
    for g in 0..dh {
        let sg = h.antipode.column(g);
        for x in 0..db {
            let lhs = d.s_b.apply(&d.right.act(g, &b.basis(x)));
            let rhs = act_vec(&d.left, &sg, &d.s_b.column(x));
            if let Some(w) = compare(json!({ "S_B(x◁h) = S_H(h)▷S_B(x)": [x, g] }), &lhs, &rhs) {
                return Err(Error::rejected("two-sided", "chb-action-antipode", w));
            }
        }
        for y in 0..dc {
            let lhs = d.s_c.apply(&d.left.act(g, &c.basis(y)));
            let rhs = act_vec(&d.right, &sg, &d.s_c.column(y));
            if let Some(w) = compare(json!({ "S_C(h▷y) = S_C(y)◁S_H(h)": [y, g] }), &lhs, &rhs) {
                return Err(Error::rejected("two-sided", "chb-action-antipode", w));
            }
        }
    }
    let (s_b_inv, s_c_inv) = match (d.s_b.inverse(), d.s_c.inverse()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Invalid("S_B and S_C must be invertible".into())),
    };
    let hh = &h.algebra;
    let (one_c, one_h, one_b) = (c.one(), h.one(), b.one());
    let el = |y: &[F], g: &[F], x: &[F]| tensor(&tensor(y, g), x);
    let split = |p: usize| (p / (dh * db), (p / db) % dh, p % db);
    let labels = (0..n)
        .map(|p| {
            let (y, g, x) = split(p);
            format!("{}{}{}", c.labels()[y], hh.labels()[g], b.labels()[x])
        })
        .collect();
    // (yhx)(y'h'x') = y(h₍₁₎▷y') ⊗ h₍₂₎h'₍₁₎ ⊗ (x◁h'₍₂₎)x'
    let a = FiniteAlgebra::from_dense(n, labels, |p, q| {
        let (y, g, x) = split(p);
        let (y2, g2, x2) = split(q);
        let mut out: Vec<F> = zero(n);
        for (g1, g1b, k1) in h.coproduct(g) {
            let cy = c.mul(&c.basis(y), &d.left.act(g1, &c.basis(y2)));
            for (h1, h2, k2) in h.coproduct(g2) {
                let hv = hh.mul(&hh.basis(g1b), &hh.basis(h1));
                let bx = b.mul(&d.right.act(h2, &b.basis(x)), &b.basis(x2));
                let k = k1.mul_ref(&k2);
                for (o, v) in out.iter_mut().zip(el(&cy, &hv, &bx)) {
                    *o = o.add_ref(&k.mul_ref(&v));
                }
            }
        }
        out
    });
    let mut a = a;
    if let (Some(_), Some(_), Some(_)) = (c.involution(), hh.involution(), b.involution()) {
        // (yhx)* = x*h*y*
        let cols: Vec<Vec<F>> = (0..n)
            .map(|p| {
                let (y, g, x) = split(p);
                let xs = el(&one_c, &one_h, &b.star(&b.basis(x)));
                let hs = el(&one_c, &hh.star(&hh.basis(g)), &one_b);
                let ys = el(&c.star(&c.basis(y)), &one_h, &one_b);
                a.mul3(&xs, &hs, &ys)
            })
            .collect();
        a = a.clone().with_involution(LinearMap::from_columns(n, &cols)).unwrap_or(a);
    }
    let b_basis: Vec<Vec<F>> = (0..db).map(|x| el(&one_c, &one_h, &unit_vec(db, x))).collect();
    let c_basis: Vec<Vec<F>> = (0..dc).map(|y| el(&unit_vec(dc, y), &one_h, &one_b)).collect();
    // Δ_B(yhx) = yh₍₁₎ ⊗ h₍₂₎x, and the same representative for Δ_C
    let delta: Vec<Vec<F>> = (0..n)
        .map(|p| {
            let (y, g, x) = split(p);
            let mut v: Vec<F> = zero(n * n);
            for (g1, g2, k) in h.coproduct(g) {
                let t = tensor(&el(&unit_vec(dc, y), &unit_vec(dh, g1), &one_b), &el(&one_c, &unit_vec(dh, g2), &unit_vec(db, x)));
                for (o, w) in v.iter_mut().zip(t) {
                    *o = o.add_ref(&k.mul_ref(&w));
                }
            }
            v
        })
        .collect();
    // counits on the spanning set {xhy}
    let triples: Vec<(usize, usize, usize)> = (0..db).flat_map(|x| (0..dh).flat_map(move |g| (0..dc).map(move |y| (x, g, y)))).collect();
    let spanning: Vec<Vec<F>> = triples
        .iter()
        .map(|&(x, g, y)| a.mul3(&b_basis[x], &el(&one_c, &unit_vec(dh, g), &one_b), &c_basis[y]))
        .collect();
    let eps_b_vals: Vec<Vec<F>> = triples.iter().map(|&(x, g, y)| b.mul(&b.basis(x), &s_b_inv.apply(&d.left.act(g, &c.basis(y))))).collect();
    let eps_c_vals: Vec<Vec<F>> = triples.iter().map(|&(x, g, y)| c.mul(&s_c_inv.apply(&d.right.act(g, &b.basis(x))), &c.basis(y))).collect();
    let eps_b = LinearMap::from_spanning(n, db, &spanning, &eps_b_vals).ok_or_else(|| Error::Invalid("{xhy} does not span A".into()))?;
    let eps_c = LinearMap::from_spanning(n, dc, &spanning, &eps_c_vals).expect("spanning checked");
    // S(yhx) = S_B(x)S_H(h)S_C(y)
    let s = LinearMap::from_columns(
        n,
        &(0..n)
            .map(|p| {
                let (y, g, x) = split(p);
                let sbx = el(&d.s_b.column(x), &one_h, &one_b);
                let sh = el(&one_c, &h.antipode.column(g), &one_b);
                let scy = el(&one_c, &one_h, &d.s_c.column(y));
                a.mul3(&sbx, &sh, &scy)
            })
            .collect::<Vec<_>>(),
    );
    RegularMha::new(MhaParts {
        name: "two-sided".into(),
        algebra: a,
        b_basis,
        c_basis,
        s_b: d.s_b.clone(),
        s_c: d.s_c.clone(),
        delta_b: delta.clone(),
        delta_c: delta,
        eps_b: Some(eps_b),
        eps_c: Some(eps_c),
        antipode: Some(s),
    })
}

/// `φ_C(f)(γ) = Σ_{t(γ')=t(γ)} f(γ')h(s(γ'))`, `ψ_B(f)(γ) = Σ_{s(γ')=s(γ)} f(γ')h(t(γ'))`.
pub fn function_integrals<F: Field>(g: &FiniteGroupoid, h: &[F]) -> StandardIntegrals<F> {
    let (n, k) = (g.arrows(), g.units.len());
    StandardIntegrals {
        phi_c: LinearMap::from_fn(k, n, |u, c| if g.target_index(c) == u { h[g.source_index(c)].clone() } else { F::zero() }),
        psi_b: LinearMap::from_fn(k, n, |u, c| if g.source_index(c) == u { h[g.target_index(c)].clone() } else { F::zero() }),
    }
}

/// `φ_C(f)(u) = f(u)h(u)`, used on both sides.
pub fn convolution_integrals<F: Field>(g: &FiniteGroupoid, h: &[F]) -> StandardIntegrals<F> {
    let (n, k) = (g.arrows(), g.units.len());
    let m = LinearMap::from_fn(k, n, |u, c| if g.units[u] == c { h[u].clone() } else { F::zero() });
    StandardIntegrals { phi_c: m.clone(), psi_b: m }
}

/// `φ_C = ι⊗υ` and `ψ_B = ω⊗ι` on `C⊗B`.
pub fn tensor_integrals<F: Field>(dc: usize, db: usize, upsilon: &[F], omega: &[F]) -> StandardIntegrals<F> {
    let n = dc * db;
    StandardIntegrals {
        phi_c: LinearMap::from_fn(dc, n, |y, p| if p / db == y { upsilon[p % db].clone() } else { F::zero() }),
        psi_b: LinearMap::from_fn(db, n, |x, p| if p % db == x { omega[p / db].clone() } else { F::zero() }),
    }
}

/// `yh ↦ yφ_H(h)` and `yh ↦ yψ_H(h)` on `C#H`.
pub fn crossed_integrals<F: Field>(dc: usize, h: &FiniteHopf<F>) -> StandardIntegrals<F> {
    let dh = h.dim();
    let n = dc * dh;
    StandardIntegrals {
        phi_c: LinearMap::from_fn(dc, n, |y, p| if p / dh == y { h.phi[p % dh].clone() } else { F::zero() }),
        psi_b: LinearMap::from_fn(dc, n, |y, p| if p / dh == y { h.psi[p % dh].clone() } else { F::zero() }),
    }
}

/// `yhx ↦ yφ_H(h)υ(x)` and `yhx ↦ ω(y)ψ_H(h)x` on `C#H#B`.
pub fn two_sided_integrals<F: Field>(d: &TwoSidedData<F>, upsilon: &[F], omega: &[F]) -> StandardIntegrals<F> {
    let (dc, dh, db) = (d.c.dim(), d.h.dim(), d.b.dim());
    let n = dc * dh * db;
    let split = |p: usize| (p / (dh * db), (p / db) % dh, p % db);
    StandardIntegrals {
        phi_c: LinearMap::from_fn(dc, n, |r, p| {
            let (y, g, x) = split(p);
            if y == r {
                d.h.phi[g].mul_ref(&upsilon[x])
            } else {
                F::zero()
            }
        }),
        psi_b: LinearMap::from_fn(db, n, |r, p| {
            let (y, g, x) = split(p);
            if x == r {
                omega[y].mul_ref(&d.h.psi[g])
            } else {
                F::zero()
            }
        }),
    }
}
