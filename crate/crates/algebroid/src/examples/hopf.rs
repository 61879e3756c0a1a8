//! Finite-dimensional Hopf algebras of finite groups and their actions.

use serde_json::{json, Value};

use crate::algebra_core::{check_algebra, FiniteAlgebra};
use crate::balanced_tensor::{expand_first, expand_second, tensor};
use crate::bialgebroid::{tensor_mul, MhaParts, RegularMha};
use crate::error::{Error, Result};
use crate::exact_linear::{unit_vec, Field, LinearMap};
use crate::report::{compare, Report};

use super::groupoid::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfFlavor {
    /// `F[Γ]`, grouplike basis.
    GroupAlgebra,
    /// `F^Γ`, point masses.
    FunctionAlgebra,
}

/// A finite-dimensional Hopf algebra with its integrals and modular data.
#[derive(Clone, Debug)]
pub struct FiniteHopf<F: Field> {
    pub name: String,
    pub algebra: FiniteAlgebra<F>,
    /// `Δ(eᵢ)` in `H ⊗ H`.
    pub delta: Vec<Vec<F>>,
    pub eps: Vec<F>,
    pub antipode: LinearMap<F>,
    /// Left integral, as values on the basis.
    pub phi: Vec<F>,
    /// Right integral `φ∘S`.
    pub psi: Vec<F>,
    /// `ψ(a) = φ(aδ)`.
    pub modular_element: Vec<F>,
    /// `φ(ab) = φ(bσ(a))`.
    pub modular_automorphism: LinearMap<F>,
}

fn pair<F: Field>(v: &[F], w: &[F]) -> F {
    v.iter().zip(w).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(F::zero(), |acc, (a, b)| acc + a.mul_ref(b))
}

/// Normalizes so that the first non-zero entry is one.
fn normalized<F: Field>(v: Vec<F>) -> Vec<F> {
    let lead = v.iter().find(|x| !x.is_zero()).cloned();
    match lead.and_then(|l| l.inv()) {
        Some(inv) => v.into_iter().map(|x| x * inv.clone()).collect(),
        None => v,
    }
}

impl<F: Field> FiniteHopf<F> {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Non-zero terms `c·e_i⊗e_j` of `Δ(e_h)`.
    pub fn coproduct(&self, h: usize) -> Vec<(usize, usize, F)> {
        let n = self.dim();
        self.delta[h]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / n, k % n, c.clone()))
            .collect()
    }

    pub fn one(&self) -> Vec<F> {
        self.algebra.one()
    }

    /// Assembles a Hopf algebra from its structure maps, computing integrals
    /// and modular data by linear solves.
    pub fn new(name: &str, algebra: FiniteAlgebra<F>, delta: Vec<Vec<F>>, eps: Vec<F>, antipode: LinearMap<F>) -> Result<Self> {
        let n = algebra.dim();
        let one = algebra.unit().cloned().ok_or_else(|| Error::Invalid("Hopf algebra without unit".into()))?;
        // (ι⊗φ)Δ(a) = φ(a)1 and (ψ⊗ι)Δ(a) = ψ(a)1, linear in the functional
        let invariance = |left: bool| -> Vec<Vec<F>> {
            let mut rows = Vec::new();
            for a in 0..n {
                let mut eqs = vec![vec![F::zero(); n]; n];
                for (k, c) in delta[a].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (i, j) = (k / n, k % n);
                    let (kept, integrated) = if left { (i, j) } else { (j, i) };
                    eqs[kept][integrated] = eqs[kept][integrated].add_ref(c);
                }
                for (l, eq) in eqs.iter_mut().enumerate() {
                    eq[a] = eq[a].sub_ref(&one[l]);
                }
                rows.extend(eqs);
            }
            LinearMap::from_rows(rows.len(), n, rows).kernel()
        };
        let left = invariance(true);
        if left.len() != 1 {
            return Err(Error::rejected("integrals", "integrals-mha", json!({ "left_integrals": left.len() })));
        }
        let phi = normalized(left[0].clone());
        let psi: Vec<F> = (0..n).map(|a| pair(&phi, &antipode.column(a))).collect();
        let gram = LinearMap::from_fn(n, n, |j, k| pair(&phi, &algebra.mul(&algebra.basis(j), &algebra.basis(k))));
        let delta_mod = gram.solve(&psi).ok_or_else(|| Error::rejected("integrals", "integrals-mha", json!("φ is not faithful")))?;
        let sigma_cols: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let target: Vec<F> = (0..n).map(|j| pair(&phi, &algebra.mul(&algebra.basis(i), &algebra.basis(j)))).collect();
                gram.solve(&target).expect("Gram matrix invertible")
            })
            .collect();
        Ok(Self {
            name: name.to_string(),
            algebra,
            delta,
            eps,
            antipode,
            phi,
            psi,
            modular_element: delta_mod,
            modular_automorphism: LinearMap::from_columns(n, &sigma_cols),
        })
    }

    /// As an algebroid over the scalars.
    pub fn as_algebroid(&self) -> RegularMha<F> {
        let n = self.dim();
        let one = self.one();
        let eps = LinearMap::from_rows(1, n, vec![self.eps.clone()]);
        RegularMha::new(MhaParts {
            name: self.name.clone(),
            algebra: self.algebra.clone(),
            b_basis: vec![one.clone()],
            c_basis: vec![one],
            s_b: LinearMap::identity(1),
            s_c: LinearMap::identity(1),
            delta_b: self.delta.clone(),
            delta_c: self.delta.clone(),
            eps_b: Some(eps.clone()),
            eps_c: Some(eps),
            antipode: Some(self.antipode.clone()),
        })
        .expect("scalar base")
    }
}

/// `F[Γ]` or `F^Γ`, with the standard involutions.
pub fn build_group_hopf<F: Field>(g: &FiniteGroup, flavor: HopfFlavor) -> FiniteHopf<F> {
    let n = g.order();
    let e = g.identity;
    let one = F::one();
    match flavor {
        HopfFlavor::GroupAlgebra => {
            let algebra = FiniteAlgebra::from_products(n, g.labels.clone(), |a, b| vec![(g.mul(a, b), one.clone())]);
            let inv = LinearMap::from_fn(n, n, |r, c| if r == g.inv(c) { F::one() } else { F::zero() });
            let algebra = algebra.with_involution(inv.clone()).expect("g* = g⁻¹");
            let delta = (0..n).map(|a| tensor(&unit_vec(n, a), &unit_vec(n, a))).collect();
            FiniteHopf::new(&format!("F[{}]", n), algebra, delta, vec![F::one(); n], inv).expect("group algebra")
        }
        HopfFlavor::FunctionAlgebra => {
            let labels = g.labels.iter().map(|l| format!("δ{l}")).collect();
            let algebra = FiniteAlgebra::from_products(n, labels, |a, b| if a == b { vec![(a, one.clone())] } else { vec![] });
            let algebra = algebra.with_involution(LinearMap::identity(n)).expect("pointwise conjugation");
            let delta = (0..n)
                .map(|c| {
                    let mut v = vec![F::zero(); n * n];
                    for a in 0..n {
                        v[a * n + g.mul(g.inv(a), c)] = F::one();
                    }
                    v
                })
                .collect();
            let eps = (0..n).map(|a| if a == e { F::one() } else { F::zero() }).collect();
            let s = LinearMap::from_fn(n, n, |r, c| if r == g.inv(c) { F::one() } else { F::zero() });
            FiniteHopf::new(&format!("F^{}", n), algebra, delta, eps, s).expect("function algebra")
        }
    }
}

/// Hopf algebra axioms and invariance of the integrals.
pub fn verify_hopf<F: Field>(h: &FiniteHopf<F>) -> Report {
    let mut r = Report::new();
    let n = h.dim();
    let a = &h.algebra;
    r.extend_prefixed("H: ", check_algebra(a));
    let id = LinearMap::<F>::identity(n);
    let one = h.one();
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    r.check("Δ multiplicative", "hopf-axioms", pairs(), |(i, j)| {
        let lhs: Vec<F> = {
            let p = a.mul(&a.basis(i), &a.basis(j));
            let mut v = vec![F::zero(); n * n];
            for (k, c) in p.iter().enumerate() {
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(&h.delta[k]) {
                        *x = x.add_ref(&c.mul_ref(y));
                    }
                }
            }
            v
        };
        compare(json!([i, j]), &lhs, &tensor_mul(a, &h.delta[i], &h.delta[j]))
    });
    r.check("Δ coassociative", "hopf-axioms", 0..n, |i| {
        compare(json!(i), &expand_first(&h.delta[i], n, |j| h.delta[j].clone()), &expand_second(&h.delta[i], n, |j| h.delta[j].clone()))
    });
    let eps_row = LinearMap::from_rows(1, n, vec![h.eps.clone()]);
    r.check("(ε⊗ι)Δ = ι = (ι⊗ε)Δ", "hopf-axioms", 0..n, |i| {
        let left = eps_row.kron(&id).apply(&h.delta[i]);
        let right = id.kron(&eps_row).apply(&h.delta[i]);
        compare(json!(i), &left, &a.basis(i)).or_else(|| compare(json!(i), &right, &a.basis(i)))
    });
    r.check("m(S⊗ι)Δ = ε1 = m(ι⊗S)Δ", "hopf-axioms", 0..n, |i| {
        let mut left = vec![F::zero(); n];
        let mut right = vec![F::zero(); n];
        for (p, q, c) in h.coproduct(i) {
            let l = a.mul(&h.antipode.column(p), &a.basis(q));
            let rr = a.mul(&a.basis(p), &h.antipode.column(q));
            for k in 0..n {
                left[k] = left[k].add_ref(&c.mul_ref(&l[k]));
                right[k] = right[k].add_ref(&c.mul_ref(&rr[k]));
            }
        }
        let target: Vec<F> = one.iter().map(|x| x.mul_ref(&h.eps[i])).collect();
        compare(json!(i), &left, &target).or_else(|| compare(json!(i), &right, &target))
    });
    r.check("(ι⊗φ)(Δ(a)(b⊗1)) = φ(a)b", "integrals-mha", pairs(), |(i, j)| {
        let mut out = vec![F::zero(); n];
        for (p, q, c) in h.coproduct(i) {
            let w = c.mul_ref(&h.phi[q]);
            if !w.is_zero() {
                let pb = a.mul(&a.basis(p), &a.basis(j));
                for k in 0..n {
                    out[k] = out[k].add_ref(&w.mul_ref(&pb[k]));
                }
            }
        }
        let target: Vec<F> = a.basis(j).iter().map(|x| x.mul_ref(&h.phi[i])).collect();
        compare(json!([i, j]), &out, &target)
    });
    r.check("(ψ⊗ι)((1⊗b)Δ(a)) = ψ(a)b", "integrals-mha", pairs(), |(i, j)| {
        let mut out = vec![F::zero(); n];
        for (p, q, c) in h.coproduct(i) {
            let w = c.mul_ref(&h.psi[p]);
            if !w.is_zero() {
                let bq = a.mul(&a.basis(j), &a.basis(q));
                for k in 0..n {
                    out[k] = out[k].add_ref(&w.mul_ref(&bq[k]));
                }
            }
        }
        let target: Vec<F> = a.basis(j).iter().map(|x| x.mul_ref(&h.psi[i])).collect();
        compare(json!([i, j]), &out, &target)
    });
    r
}

/// A left action `H ⊗ C → C`, one operator per basis element of `H`.
#[derive(Clone, Debug)]
pub struct HopfAction<F: Field> {
    pub ops: Vec<LinearMap<F>>,
}

impl<F: Field> HopfAction<F> {
    /// Group elements acting by the given automorphisms of `C`.
    pub fn of_group(ops: Vec<LinearMap<F>>) -> Self {
        Self { ops }
    }

    pub fn trivial(h: &FiniteHopf<F>, dim_c: usize) -> Self {
        Self {
            ops: h.eps.iter().map(|e| LinearMap::identity(dim_c).scale(e)).collect(),
        }
    }

    pub fn act(&self, h: usize, y: &[F]) -> Vec<F> {
        self.ops[h].apply(y)
    }

    /// Action law, unitality and `h▷(yy') = (h₍₁₎▷y)(h₍₂₎▷y')`.
    pub fn module_algebra_failure(&self, h: &FiniteHopf<F>, c: &FiniteAlgebra<F>, right: bool) -> Option<Value> {
        let n = h.dim();
        let d = c.dim();
        if self.ops.len() != n || self.ops.iter().any(|o| o.cod() != d || o.dom() != d) {
            return Some(json!("one d×d operator per basis element of H"));
        }
        let op_of = |v: &[F]| -> LinearMap<F> {
            let mut m = LinearMap::zeros(d, d);
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    m = m.add(&self.ops[k].scale(c));
                }
            }
            m
        };
        for i in 0..n {
            for j in 0..n {
                let prod = op_of(&h.algebra.mul(&h.algebra.basis(i), &h.algebra.basis(j)));
                let composed = if right { self.ops[j].compose(&self.ops[i]) } else { self.ops[i].compose(&self.ops[j]) };
                if prod != composed {
                    return Some(json!({ "action law": [i, j] }));
                }
            }
        }
        if !op_of(&h.one()).is_identity() {
            return Some(json!("1_H does not act as the identity"));
        }
        let one_c = c.one();
        for i in 0..n {
            let target: Vec<F> = one_c.iter().map(|x| x.mul_ref(&h.eps[i])).collect();
            if let Some(w) = compare(json!({ "h": i, "law": "h▷1 = ε(h)1" }), &self.act(i, &one_c), &target) {
                return Some(w);
            }
            for y in 0..d {
                for y2 in 0..d {
                    let lhs = self.act(i, &c.mul(&c.basis(y), &c.basis(y2)));
                    let mut rhs = vec![F::zero(); d];
                    for (p, q, k) in h.coproduct(i) {
                        let v = c.mul(&self.act(p, &c.basis(y)), &self.act(q, &c.basis(y2)));
                        for (r, x) in rhs.iter_mut().zip(v) {
                            *r = r.add_ref(&k.mul_ref(&x));
                        }
                    }
                    if let Some(w) = compare(json!({ "h": i, "y": y, "y'": y2 }), &lhs, &rhs) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    /// `h₍₁₎ ⊗ h₍₂₎▷y = h₍₂₎ ⊗ h₍₁₎▷y`.
    pub fn symmetry_failure(&self, h: &FiniteHopf<F>) -> Option<Value> {
        let n = h.dim();
        let d = self.ops.first().map_or(0, |o| o.cod());
        for i in 0..n {
            for y in 0..d {
                let e = unit_vec(d, y);
                let mut lhs = vec![F::zero(); n * d];
                let mut rhs = vec![F::zero(); n * d];
                for (p, q, c) in h.coproduct(i) {
                    let l = self.act(q, &e);
                    let r = self.act(p, &e);
                    for k in 0..d {
                        lhs[p * d + k] = lhs[p * d + k].add_ref(&c.mul_ref(&l[k]));
                        rhs[q * d + k] = rhs[q * d + k].add_ref(&c.mul_ref(&r[k]));
                    }
                }
                if let Some(w) = compare(json!({ "h": i, "y": y }), &lhs, &rhs) {
                    return Some(w);
                }
            }
        }
        None
    }
}
