//! Left and right multiplier bialgebroids and regular multiplier Hopf
//! algebroids at finite dimension: canonical maps, antipode derivation and
//! exhaustive axiom reports.
//!
//! `Δ_B(a)` lives in `bsA⊗btA` and `Δ_C(a)` in `cAt⊗cAs`, both stored by
//! quotient coordinates. All algebras here are unital, so `Δ_B(a)` is an
//! honest element and not only a two-sided multiplier.

use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::algebra_core::{automorphism_failure, hom_failure, FiniteAlgebra, ModuleStructure, Side, Subalgebra};
use crate::balanced_tensor::{apply_legs, build_balanced, expand_first, expand_second, swap_matrix, tensor, BalancedTensor, TripleTensor};
use crate::error::{Error, Result};
use crate::exact_linear::{span_rank, unit_vec, Field, LinearMap};
use crate::report::{compare, vec_json, Report};

/// Raw data of a candidate: everything given on bases.
#[derive(Clone, Debug)]
pub struct MhaParts<F: Field> {
    pub name: String,
    pub algebra: FiniteAlgebra<F>,
    /// Basis of `B ⊆ A`.
    pub b_basis: Vec<Vec<F>>,
    /// Basis of `C ⊆ A`.
    pub c_basis: Vec<Vec<F>>,
    /// `S_B: B → C` in base coordinates.
    pub s_b: LinearMap<F>,
    /// `S_C: C → B`.
    pub s_c: LinearMap<F>,
    /// Representatives of `Δ_B(eᵢ)` in `A ⊗ A`.
    pub delta_b: Vec<Vec<F>>,
    pub delta_c: Vec<Vec<F>>,
    /// `ε_B: A → B`.
    pub eps_b: Option<LinearMap<F>>,
    /// `ε_C: A → C`.
    pub eps_c: Option<LinearMap<F>>,
    pub antipode: Option<LinearMap<F>>,
}

/// The six balanced tensor flavors.
#[derive(Clone, Debug)]
pub struct Tensors<F: Field> {
    /// `bsA⊗btA`, home of `Δ_B`.
    pub target_b: BalancedTensor<F>,
    /// `cAt⊗cAs`, home of `Δ_C`.
    pub target_c: BalancedTensor<F>,
    /// `btA⊗bAt`, domain of `T_λ`.
    pub t_lambda: BalancedTensor<F>,
    /// `bAs⊗bsA`, domain of `T_ρ`.
    pub t_rho: BalancedTensor<F>,
    /// `cAs⊗csA`, domain of `_λT`.
    pub lambda_t: BalancedTensor<F>,
    /// `ctA⊗cAt`, domain of `_ρT`.
    pub rho_t: BalancedTensor<F>,
}

#[derive(Clone, Debug)]
pub struct CanonicalMap<F: Field> {
    pub name: &'static str,
    /// `None` when the formula does not descend to the balanced quotient.
    pub matrix: Option<LinearMap<F>>,
    pub inverse: Option<LinearMap<F>>,
    pub witness: Option<Value>,
}

impl<F: Field> CanonicalMap<F> {
    pub fn is_bijective(&self) -> bool {
        self.inverse.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalMaps<F: Field> {
    pub t_lambda: CanonicalMap<F>,
    pub t_rho: CanonicalMap<F>,
    pub lambda_t: CanonicalMap<F>,
    pub rho_t: CanonicalMap<F>,
}

impl<F: Field> CanonicalMaps<F> {
    pub fn all(&self) -> [&CanonicalMap<F>; 4] {
        [&self.t_lambda, &self.t_rho, &self.lambda_t, &self.rho_t]
    }

    pub fn all_bijective(&self) -> bool {
        self.all().iter().all(|m| m.is_bijective())
    }
}

/// A regular multiplier Hopf algebroid candidate. Construction only checks
/// shapes and that `B`, `C` are subalgebras; everything else is verified by
/// the report functions.
#[derive(Clone, Debug)]
pub struct RegularMha<F: Field> {
    pub name: String,
    pub a: FiniteAlgebra<F>,
    pub b: Subalgebra<F>,
    pub c: Subalgebra<F>,
    pub s_b: LinearMap<F>,
    pub s_c: LinearMap<F>,
    /// `A → bsA⊗btA` in quotient coordinates.
    pub delta_b: LinearMap<F>,
    /// `A → cAt⊗cAs`.
    pub delta_c: LinearMap<F>,
    pub eps_b: Option<LinearMap<F>>,
    pub eps_c: Option<LinearMap<F>>,
    pub antipode: Option<LinearMap<F>>,
    pub tensors: Tensors<F>,
    lmaps: Vec<LinearMap<F>>,
    rmaps: Vec<LinearMap<F>>,
    canonical: OnceLock<CanonicalMaps<F>>,
}

fn module<F: Field>(name: &str, side: Side, base: &FiniteAlgebra<F>, ops: Vec<LinearMap<F>>) -> ModuleStructure<F> {
    ModuleStructure {
        name: name.to_string(),
        side,
        base: base.clone(),
        ops,
    }
}

/// Product in the tensor algebra `A ⊗ A`.
pub fn tensor_mul<F: Field>(a: &FiniteAlgebra<F>, u: &[F], v: &[F]) -> Vec<F> {
    let n = a.dim();
    let mut out = vec![F::zero(); n * n];
    let nz = |w: &[F]| -> Vec<(usize, usize, F)> {
        w.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / n, k % n, c.clone()))
            .collect()
    };
    let (us, vs) = (nz(u), nz(v));
    for (i, j, x) in &us {
        for (k, l, y) in &vs {
            let xy = x.mul_ref(y);
            for (p, c1) in a.structure(*i, *k) {
                let xyc = xy.mul_ref(c1);
                for (q, c2) in a.structure(*j, *l) {
                    let cell = &mut out[p * n + q];
                    *cell = cell.add_ref(&xyc.mul_ref(c2));
                }
            }
        }
    }
    out
}

/// Antilinear `v ↦ J·conj(v)`.
fn antilinear<F: Field>(j: &LinearMap<F>, v: &[F]) -> Vec<F> {
    let c: Vec<F> = v.iter().map(|x| x.conj()).collect();
    j.apply(&c)
}

impl<F: Field> RegularMha<F> {
    pub fn new(parts: MhaParts<F>) -> Result<Self> {
        let a = parts.algebra;
        let n = a.dim();
        let b = Subalgebra::from_basis(&a, &parts.b_basis, (0..parts.b_basis.len()).map(|i| format!("x{i}")).collect())?;
        let c = Subalgebra::from_basis(&a, &parts.c_basis, (0..parts.c_basis.len()).map(|i| format!("y{i}")).collect())?;
        let (db, dc) = (b.dim(), c.dim());
        if parts.s_b.cod() != dc || parts.s_b.dom() != db || parts.s_c.cod() != db || parts.s_c.dom() != dc {
            return Err(Error::Dimension("S_B and S_C must map between the bases".into()));
        }
        if parts.delta_b.len() != n || parts.delta_c.len() != n || parts.delta_b.iter().chain(&parts.delta_c).any(|v| v.len() != n * n) {
            return Err(Error::Dimension("one comultiplication vector of length n² per basis element".into()));
        }
        let check_shape = |m: &Option<LinearMap<F>>, cod: usize, what: &str| -> Result<()> {
            match m {
                Some(m) if m.cod() != cod || m.dom() != n => Err(Error::Dimension(what.to_string())),
                _ => Ok(()),
            }
        };
        check_shape(&parts.eps_b, db, "ε_B: A → B")?;
        check_shape(&parts.eps_c, dc, "ε_C: A → C")?;
        check_shape(&parts.antipode, n, "S: A → A")?;

        let lmaps: Vec<LinearMap<F>> = (0..n).map(|i| a.left_mul_map(&a.basis(i))).collect();
        let rmaps: Vec<LinearMap<F>> = (0..n).map(|i| a.right_mul_map(&a.basis(i))).collect();
        let xs: Vec<Vec<F>> = (0..db).map(|k| b.basis_element(k)).collect();
        let tx: Vec<Vec<F>> = (0..db).map(|k| c.include(&parts.s_b.column(k))).collect();
        let ys: Vec<Vec<F>> = (0..dc).map(|k| c.basis_element(k)).collect();
        let sy: Vec<Vec<F>> = (0..dc).map(|k| b.include(&parts.s_c.column(k))).collect();
        let l = |vs: &[Vec<F>]| -> Vec<LinearMap<F>> { vs.iter().map(|v| a.left_mul_map(v)).collect() };
        let r = |vs: &[Vec<F>]| -> Vec<LinearMap<F>> { vs.iter().map(|v| a.right_mul_map(v)).collect() };
        let (ba, ca) = (&b.algebra, &c.algebra);
        let tensors = Tensors {
            target_b: build_balanced("bsA⊗btA", module("sA", Side::Left, ba, l(&xs)), module("tA", Side::Right, ba, l(&tx)))?,
            target_c: build_balanced("cAt⊗cAs", module("At", Side::Left, ca, r(&sy)), module("As", Side::Right, ca, r(&ys)))?,
            t_lambda: build_balanced("btA⊗bAt", module("tA", Side::Right, ba, l(&tx)), module("At", Side::Left, ba, r(&tx)))?,
            t_rho: build_balanced("bAs⊗bsA", module("As", Side::Right, ba, r(&xs)), module("sA", Side::Left, ba, l(&xs)))?,
            lambda_t: build_balanced("cAs⊗csA", module("As", Side::Right, ca, r(&ys)), module("sA", Side::Left, ca, l(&ys)))?,
            rho_t: build_balanced("ctA⊗cAt", module("tA", Side::Right, ca, l(&sy)), module("At", Side::Left, ca, r(&sy)))?,
        };
        let delta_b = LinearMap::from_columns(tensors.target_b.dim(), &parts.delta_b.iter().map(|v| tensors.target_b.project(v)).collect::<Vec<_>>());
        let delta_c = LinearMap::from_columns(tensors.target_c.dim(), &parts.delta_c.iter().map(|v| tensors.target_c.project(v)).collect::<Vec<_>>());
        Ok(Self {
            name: parts.name,
            a,
            b,
            c,
            s_b: parts.s_b,
            s_c: parts.s_c,
            delta_b,
            delta_c,
            eps_b: parts.eps_b,
            eps_c: parts.eps_c,
            antipode: parts.antipode,
            tensors,
            lmaps,
            rmaps,
            canonical: OnceLock::new(),
        })
    }

    /// Back to raw data, with canonical representatives for `Δ`.
    pub fn parts(&self) -> MhaParts<F> {
        let n = self.dim();
        MhaParts {
            name: self.name.clone(),
            algebra: self.a.clone(),
            b_basis: (0..self.b.dim()).map(|k| self.b.basis_element(k)).collect(),
            c_basis: (0..self.c.dim()).map(|k| self.c.basis_element(k)).collect(),
            s_b: self.s_b.clone(),
            s_c: self.s_c.clone(),
            delta_b: (0..n).map(|i| self.rep_b(i)).collect(),
            delta_c: (0..n).map(|i| self.rep_c(i)).collect(),
            eps_b: self.eps_b.clone(),
            eps_c: self.eps_c.clone(),
            antipode: self.antipode.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn with_antipode(mut self, s: LinearMap<F>) -> Self {
        self.antipode = Some(s);
        self
    }

    pub fn lmap(&self, i: usize) -> &LinearMap<F> {
        &self.lmaps[i]
    }

    pub fn rmap(&self, i: usize) -> &LinearMap<F> {
        &self.rmaps[i]
    }

    /// `Δ_B(eᵢ)` as its canonical representative in `A ⊗ A`.
    pub fn rep_b(&self, i: usize) -> Vec<F> {
        self.tensors.target_b.section(&self.delta_b.column(i))
    }

    pub fn rep_c(&self, i: usize) -> Vec<F> {
        self.tensors.target_c.section(&self.delta_c.column(i))
    }

    pub fn delta_b_of(&self, a: &[F]) -> Vec<F> {
        self.delta_b.apply(a)
    }

    pub fn delta_c_of(&self, a: &[F]) -> Vec<F> {
        self.delta_c.apply(a)
    }

    /// `t(x) = S_B(x)` as an element of `A`, for `x` in `B` coordinates.
    pub fn t_elem(&self, x: &[F]) -> Vec<F> {
        self.c.include(&self.s_b.apply(x))
    }

    /// `S_C(y) ∈ A` for `y` in `C` coordinates.
    pub fn sc_elem(&self, y: &[F]) -> Vec<F> {
        self.b.include(&self.s_c.apply(y))
    }

    /// `Δ_B(a)(b ⊗ c)` in `bsA⊗btA` coordinates.
    pub fn delta_b_times(&self, a: usize, b: &LinearMap<F>, c: &LinearMap<F>) -> Vec<F> {
        self.tensors.target_b.project(&apply_legs(&self.rep_b(a), b, c))
    }

    /// `(b ⊗ c)Δ_C(a)` in `cAt⊗cAs` coordinates.
    pub fn times_delta_c(&self, a: usize, b: &LinearMap<F>, c: &LinearMap<F>) -> Vec<F> {
        self.tensors.target_c.project(&apply_legs(&self.rep_c(a), b, c))
    }

    fn require<'a>(&self, m: &'a Option<LinearMap<F>>, what: &str) -> Result<&'a LinearMap<F>> {
        m.as_ref().ok_or_else(|| Error::Invalid(format!("{} has no {what}", self.name)))
    }

    pub fn eps_b(&self) -> Result<&LinearMap<F>> {
        self.require(&self.eps_b, "left counit")
    }

    pub fn eps_c(&self) -> Result<&LinearMap<F>> {
        self.require(&self.eps_c, "right counit")
    }

    pub fn antipode(&self) -> Result<&LinearMap<F>> {
        self.require(&self.antipode, "antipode")
    }

    /// `a ↦ S_B(ε_B(a))` as a map `A → A`.
    pub fn t_eps_b(&self) -> Result<LinearMap<F>> {
        Ok(self.c.embed.compose(&self.s_b).compose(self.eps_b()?))
    }

    /// `a ↦ S_C(ε_C(a))` as a map `A → A`.
    pub fn s_eps_c(&self) -> Result<LinearMap<F>> {
        Ok(self.b.embed.compose(&self.s_c).compose(self.eps_c()?))
    }

    /// `ε_B` landing in `A`.
    pub fn eps_b_in_a(&self) -> Result<LinearMap<F>> {
        Ok(self.b.embed.compose(self.eps_b()?))
    }

    pub fn eps_c_in_a(&self) -> Result<LinearMap<F>> {
        Ok(self.c.embed.compose(self.eps_c()?))
    }

    /// The four canonical maps, computed once.
    pub fn canonical_maps(&self) -> &CanonicalMaps<F> {
        self.canonical.get_or_init(|| canonical_maps(self))
    }
}

fn canonical_map<F: Field>(name: &'static str, label: &str, dom: &BalancedTensor<F>, cod: &BalancedTensor<F>, mut f: impl FnMut(usize, usize) -> Vec<F>) -> CanonicalMap<F> {
    let n = dom.base_dim();
    let cols: Vec<Vec<F>> = (0..n * n).map(|k| cod.project(&f(k / n, k % n))).collect();
    let raw = LinearMap::from_columns(cod.dim(), &cols);
    match dom.descend_matrix(&raw, label) {
        Err(e) => CanonicalMap {
            name,
            matrix: None,
            inverse: None,
            witness: Some(match e {
                Error::Rejected { witness, .. } => witness,
                other => json!(other.to_string()),
            }),
        },
        Ok(m) => {
            let inverse = m.inverse();
            let witness = if inverse.is_some() {
                None
            } else if m.is_square() {
                Some(json!({ "kernel": m.kernel().first().map(|v| vec_json(v)) }))
            } else {
                Some(json!({ "dom": m.dom(), "cod": m.cod(), "rank": m.rank() }))
            };
            CanonicalMap {
                name,
                matrix: Some(m),
                inverse,
                witness,
            }
        }
    }
}

/// `T_λ(a⊗b) = Δ_B(b)(a⊗1)`, `T_ρ(a⊗b) = Δ_B(a)(1⊗b)`,
/// `_λT(a⊗b) = (a⊗1)Δ_C(b)`, `_ρT(a⊗b) = (1⊗b)Δ_C(a)`.
pub fn canonical_maps<F: Field>(m: &RegularMha<F>) -> CanonicalMaps<F> {
    let n = m.dim();
    let id = LinearMap::<F>::identity(n);
    let t = &m.tensors;
    CanonicalMaps {
        t_lambda: canonical_map("T_λ", "left-galois-maps", &t.t_lambda, &t.target_b, |a, b| apply_legs(&m.rep_b(b), m.rmap(a), &id)),
        t_rho: canonical_map("T_ρ", "left-galois-maps", &t.t_rho, &t.target_b, |a, b| apply_legs(&m.rep_b(a), &id, m.rmap(b))),
        lambda_t: canonical_map("_λT", "right-galois-maps", &t.lambda_t, &t.target_c, |a, b| apply_legs(&m.rep_c(b), m.lmap(a), &id)),
        rho_t: canonical_map("_ρT", "right-galois-maps", &t.rho_t, &t.target_c, |a, b| apply_legs(&m.rep_c(a), &id, m.lmap(b))),
    }
}

fn record_err(r: &mut Report, axiom: &str, label: &str, e: Error) {
    let w = match e {
        Error::Rejected { witness, .. } => witness,
        other => json!(other.to_string()),
    };
    r.fail(axiom, label, w);
}

/// `S_B` and `S_C` are anti-isomorphisms and `B`, `C` commute.
fn verify_bases<F: Field>(m: &RegularMha<F>, r: &mut Report) {
    let (bb, cc) = (&m.b.algebra, &m.c.algebra);
    let bij = |f: &LinearMap<F>| if f.inverse().is_some() { None } else { Some(json!("not bijective")) };
    r.record("S_B anti-isomorphism", "base-anti-isomorphism", bij(&m.s_b).or_else(|| hom_failure(bb, cc, &m.s_b, true)));
    r.record("S_C anti-isomorphism", "base-anti-isomorphism", bij(&m.s_c).or_else(|| hom_failure(cc, bb, &m.s_c, true)));
    let failure = (0..m.b.dim()).find_map(|i| {
        let x = m.b.basis_element(i);
        (0..m.c.dim()).find_map(|j| {
            let y = m.c.basis_element(j);
            compare(json!([i, j]), &m.a.mul(&x, &y), &m.a.mul(&y, &x))
        })
    });
    r.record("B and C commute", "base-commute", failure);
}

/// Every invariant of the left multiplier bialgebroid `(A, B, S_B, Δ_B, ε_B)`.
pub fn verify_left_bialgebroid<F: Field>(m: &RegularMha<F>) -> Report {
    let mut r = Report::new();
    let n = m.dim();
    let a = &m.a;
    let tb = &m.tensors.target_b;
    let id = LinearMap::<F>::identity(n);
    let db = m.b.dim();
    let xs: Vec<Vec<F>> = (0..db).map(|k| m.b.basis_element(k)).collect();
    let txs: Vec<Vec<F>> = (0..db).map(|k| m.t_elem(&unit_vec(db, k))).collect();
    let lx: Vec<LinearMap<F>> = xs.iter().map(|x| a.left_mul_map(x)).collect();
    let ltx: Vec<LinearMap<F>> = txs.iter().map(|x| a.left_mul_map(x)).collect();
    let rx: Vec<LinearMap<F>> = xs.iter().map(|x| a.right_mul_map(x)).collect();
    let rtx: Vec<LinearMap<F>> = txs.iter().map(|x| a.right_mul_map(x)).collect();

    let cases = || (0..n).flat_map(move |i| (0..db).map(move |k| (i, k)));
    r.check("Δ_B(s(x)a) = (1⊗s(x))Δ_B(a)", "left-delta-bimodule", cases(), |(i, k)| {
        let lhs = m.delta_b_of(&a.mul(&xs[k], &a.basis(i)));
        let rhs = tb.project(&apply_legs(&m.rep_b(i), &id, &lx[k]));
        compare(json!({"a": i, "x": k}), &lhs, &rhs)
    });
    r.check("Δ_B(t(x)a) = (t(x)⊗1)Δ_B(a)", "left-delta-bimodule", cases(), |(i, k)| {
        let lhs = m.delta_b_of(&a.mul(&txs[k], &a.basis(i)));
        let rhs = tb.project(&apply_legs(&m.rep_b(i), &ltx[k], &id));
        compare(json!({"a": i, "x": k}), &lhs, &rhs)
    });
    r.check("Δ_B(as(x)) = Δ_B(a)(1⊗s(x))", "left-delta-bimodule", cases(), |(i, k)| {
        let lhs = m.delta_b_of(&a.mul(&a.basis(i), &xs[k]));
        compare(json!({"a": i, "x": k}), &lhs, &m.delta_b_times(i, &id, &rx[k]))
    });
    r.check("Δ_B(at(x)) = Δ_B(a)(t(x)⊗1)", "left-delta-bimodule", cases(), |(i, k)| {
        let lhs = m.delta_b_of(&a.mul(&a.basis(i), &txs[k]));
        compare(json!({"a": i, "x": k}), &lhs, &m.delta_b_times(i, &rtx[k], &id))
    });

    let dc = m.c.dim();
    let pairs = (0..db).flat_map(|k| (0..dc).map(move |l| (k, l)));
    r.check("Δ_B(xy) = y⊗x", "delta-bimodule-extended", pairs, |(k, l)| {
        let y = m.c.basis_element(l);
        let lhs = m.delta_b_of(&a.mul(&xs[k], &y));
        compare(json!({"x": k, "y": l}), &lhs, &tb.project(&tensor(&y, &xs[k])))
    });

    let reps: Vec<Vec<F>> = (0..n).map(|i| m.rep_b(i)).collect();
    let rels = tb.relation_basis();
    r.check("Δ_B(a) normalizes the balancing relations", "delta-takeuchi", (0..n).flat_map(|i| (0..rels.len()).map(move |k| (i, k))), |(i, k)| {
        let v = tensor_mul(a, &reps[i], &rels[k]);
        (!tb.is_relation(&v)).then(|| json!({"a": i, "relation": k, "value": tb.project(&v).iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
    });
    r.check("Δ_B(ab) = Δ_B(a)Δ_B(b)", "delta-multiplicative", (0..n).flat_map(|i| (0..n).map(move |j| (i, j))), |(i, j)| {
        let lhs = m.delta_b_of(&a.mul(&a.basis(i), &a.basis(j)));
        let rhs = tb.project(&tensor_mul(a, &reps[i], &reps[j]));
        compare(json!([i, j]), &lhs, &rhs)
    });
    if let Some(u) = a.unit() {
        r.record("Δ_B(1) = 1⊗1", "delta-multiplicative", compare(json!("unit"), &m.delta_b_of(u), &tb.project(&tensor(u, u))));
    }

    let tt = TripleTensor::new("bsA⊗btA⊗btA", tb, tb);
    r.check("(Δ_B⊗ι)Δ_B = (ι⊗Δ_B)Δ_B", "delta-coassociative", 0..n, |i| {
        let lhs = tt.project(&expand_first(&reps[i], n, |j| reps[j].clone()));
        let rhs = tt.project(&expand_second(&reps[i], n, |j| reps[j].clone()));
        compare(json!({"a": i}), &lhs, &rhs)
    });

    match m.eps_b() {
        Err(_) => r.info("left counit", "left-counit", json!("absent")),
        Ok(eps) => {
            let bb = &m.b.algebra;
            r.check("ε_B(s(x)a) = xε_B(a)", "counit-module", cases(), |(i, k)| {
                let lhs = eps.apply(&a.mul(&xs[k], &a.basis(i)));
                compare(json!({"a": i, "x": k}), &lhs, &bb.mul(&bb.basis(k), &eps.column(i)))
            });
            r.check("ε_B(t(x)a) = ε_B(a)x", "counit-module", cases(), |(i, k)| {
                let lhs = eps.apply(&a.mul(&txs[k], &a.basis(i)));
                compare(json!({"a": i, "x": k}), &lhs, &bb.mul(&eps.column(i), &bb.basis(k)))
            });
            let te = m.t_eps_b().expect("counit present");
            let first = tb.slice(n, |i, j| a.mul(&te.column(i), &a.basis(j)));
            let second = tb.slice(n, |i, j| a.mul(&m.b.include(&eps.column(j)), &a.basis(i)));
            let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
            match first {
                Err(e) => record_err(&mut r, "(ε_B⊗ι)(Δ_B(a)(1⊗b)) = ab", "left-counit", e),
                Ok(sl) => {
                    r.check("(ε_B⊗ι)(Δ_B(a)(1⊗b)) = ab", "left-counit", pairs(), |(i, j)| {
                        let lhs = sl.apply(&m.delta_b_times(i, &id, m.rmap(j)));
                        compare(json!([i, j]), &lhs, &a.mul(&a.basis(i), &a.basis(j)))
                    });
                }
            }
            match second {
                Err(e) => record_err(&mut r, "(ι⊗ε_B)(Δ_B(a)(b⊗1)) = ab", "left-counit", e),
                Ok(sl) => {
                    r.check("(ι⊗ε_B)(Δ_B(a)(b⊗1)) = ab", "left-counit", pairs(), |(i, j)| {
                        let lhs = sl.apply(&m.delta_b_times(i, m.rmap(j), &id));
                        compare(json!([i, j]), &lhs, &a.mul(&a.basis(i), &a.basis(j)))
                    });
                }
            }
        }
    }
    r
}

/// Mirror of [`verify_left_bialgebroid`] for `(A, C, S_C, Δ_C, ε_C)`.
pub fn verify_right_bialgebroid<F: Field>(m: &RegularMha<F>) -> Report {
    let mut r = Report::new();
    let n = m.dim();
    let a = &m.a;
    let tc = &m.tensors.target_c;
    let id = LinearMap::<F>::identity(n);
    let dc = m.c.dim();
    let ys: Vec<Vec<F>> = (0..dc).map(|k| m.c.basis_element(k)).collect();
    let sys: Vec<Vec<F>> = (0..dc).map(|k| m.sc_elem(&unit_vec(dc, k))).collect();
    let ly: Vec<LinearMap<F>> = ys.iter().map(|y| a.left_mul_map(y)).collect();
    let lsy: Vec<LinearMap<F>> = sys.iter().map(|y| a.left_mul_map(y)).collect();
    let ry: Vec<LinearMap<F>> = ys.iter().map(|y| a.right_mul_map(y)).collect();
    let rsy: Vec<LinearMap<F>> = sys.iter().map(|y| a.right_mul_map(y)).collect();

    let cases = || (0..n).flat_map(move |i| (0..dc).map(move |k| (i, k)));
    r.check("Δ_C(ya) = (y⊗1)Δ_C(a)", "right-delta-bimodule", cases(), |(i, k)| {
        let lhs = m.delta_c_of(&a.mul(&ys[k], &a.basis(i)));
        compare(json!({"a": i, "y": k}), &lhs, &m.times_delta_c(i, &ly[k], &id))
    });
    r.check("Δ_C(S_C(y)a) = (1⊗S_C(y))Δ_C(a)", "right-delta-bimodule", cases(), |(i, k)| {
        let lhs = m.delta_c_of(&a.mul(&sys[k], &a.basis(i)));
        compare(json!({"a": i, "y": k}), &lhs, &m.times_delta_c(i, &id, &lsy[k]))
    });
    r.check("Δ_C(ay) = Δ_C(a)(y⊗1)", "right-delta-bimodule", cases(), |(i, k)| {
        let lhs = m.delta_c_of(&a.mul(&a.basis(i), &ys[k]));
        let rhs = tc.project(&apply_legs(&m.rep_c(i), &ry[k], &id));
        compare(json!({"a": i, "y": k}), &lhs, &rhs)
    });
    r.check("Δ_C(aS_C(y)) = Δ_C(a)(1⊗S_C(y))", "right-delta-bimodule", cases(), |(i, k)| {
        let lhs = m.delta_c_of(&a.mul(&a.basis(i), &sys[k]));
        let rhs = tc.project(&apply_legs(&m.rep_c(i), &id, &rsy[k]));
        compare(json!({"a": i, "y": k}), &lhs, &rhs)
    });

    let reps: Vec<Vec<F>> = (0..n).map(|i| m.rep_c(i)).collect();
    let rels = tc.relation_basis();
    r.check("the balancing relations absorb Δ_C(a)", "delta-takeuchi", (0..n).flat_map(|i| (0..rels.len()).map(move |k| (i, k))), |(i, k)| {
        let v = tensor_mul(a, &rels[k], &reps[i]);
        (!tc.is_relation(&v)).then(|| json!({"a": i, "relation": k}))
    });
    r.check("Δ_C(ab) = Δ_C(a)Δ_C(b)", "delta-multiplicative", (0..n).flat_map(|i| (0..n).map(move |j| (i, j))), |(i, j)| {
        let lhs = m.delta_c_of(&a.mul(&a.basis(i), &a.basis(j)));
        compare(json!([i, j]), &lhs, &tc.project(&tensor_mul(a, &reps[i], &reps[j])))
    });
    if let Some(u) = a.unit() {
        r.record("Δ_C(1) = 1⊗1", "delta-multiplicative", compare(json!("unit"), &m.delta_c_of(u), &tc.project(&tensor(u, u))));
    }

    let tt = TripleTensor::new("cAt⊗cAs⊗cAs", tc, tc);
    r.check("(Δ_C⊗ι)Δ_C = (ι⊗Δ_C)Δ_C", "right-delta-co-associative", 0..n, |i| {
        let lhs = tt.project(&expand_first(&reps[i], n, |j| reps[j].clone()));
        let rhs = tt.project(&expand_second(&reps[i], n, |j| reps[j].clone()));
        compare(json!({"a": i}), &lhs, &rhs)
    });

    match m.eps_c() {
        Err(_) => r.info("right counit", "right-counit", json!("absent")),
        Ok(eps) => {
            let cc = &m.c.algebra;
            r.check("ε_C(ay) = ε_C(a)y", "counit-module", cases(), |(i, k)| {
                let lhs = eps.apply(&a.mul(&a.basis(i), &ys[k]));
                compare(json!({"a": i, "y": k}), &lhs, &cc.mul(&eps.column(i), &cc.basis(k)))
            });
            r.check("ε_C(aS_C(y)) = yε_C(a)", "counit-module", cases(), |(i, k)| {
                let lhs = eps.apply(&a.mul(&a.basis(i), &sys[k]));
                compare(json!({"a": i, "y": k}), &lhs, &cc.mul(&cc.basis(k), &eps.column(i)))
            });
            let se = m.s_eps_c().expect("counit present");
            let first = tc.slice(n, |i, j| a.mul(&a.basis(j), &m.c.include(&eps.column(i))));
            let second = tc.slice(n, |i, j| a.mul(&a.basis(i), &se.column(j)));
            let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
            match first {
                Err(e) => record_err(&mut r, "(ε_C⊗ι)((1⊗b)Δ_C(a)) = ba", "right-counit", e),
                Ok(sl) => {
                    r.check("(ε_C⊗ι)((1⊗b)Δ_C(a)) = ba", "right-counit", pairs(), |(i, j)| {
                        let lhs = sl.apply(&m.times_delta_c(i, &id, m.lmap(j)));
                        compare(json!([i, j]), &lhs, &a.mul(&a.basis(j), &a.basis(i)))
                    });
                }
            }
            match second {
                Err(e) => record_err(&mut r, "(ι⊗ε_C)((b⊗1)Δ_C(a)) = ba", "right-counit", e),
                Ok(sl) => {
                    r.check("(ι⊗ε_C)((b⊗1)Δ_C(a)) = ba", "right-counit", pairs(), |(i, j)| {
                        let lhs = sl.apply(&m.times_delta_c(i, m.lmap(j), &id));
                        compare(json!([i, j]), &lhs, &a.mul(&a.basis(j), &a.basis(i)))
                    });
                }
            }
        }
    }
    r
}

/// Solutions `W: A → base` of `W∘P = Q∘W` for each pair.
fn hom_space<F: Field>(n: usize, d: usize, pairs: &[(LinearMap<F>, LinearMap<F>)]) -> Vec<LinearMap<F>> {
    let unknowns = d * n;
    let mut rows = Vec::new();
    for (p, q) in pairs {
        for r in 0..d {
            for c in 0..n {
                let mut row = vec![F::zero(); unknowns];
                for k in 0..n {
                    if !p[(k, c)].is_zero() {
                        row[r * n + k] = row[r * n + k].add_ref(&p[(k, c)]);
                    }
                }
                for k in 0..d {
                    if !q[(r, k)].is_zero() {
                        row[k * n + c] = row[k * n + c].sub_ref(&q[(r, k)]);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = LinearMap::from_rows(rows.len(), unknowns, rows);
    sys.kernel()
        .into_iter()
        .map(|v| LinearMap::from_rows(d, n, v.chunks(n).map(|c| c.to_vec()).collect()))
        .collect()
}

/// Condition (1) of regularity: the four products of `A` with the images of
/// the full module-map spaces are all of `A`.
pub fn regularity_subspaces<F: Field>(m: &RegularMha<F>) -> Vec<(&'static str, Option<Value>)> {
    let n = m.dim();
    let a = &m.a;
    let (db, dc) = (m.b.dim(), m.c.dim());
    let (bb, cc) = (&m.b.algebra, &m.c.algebra);
    let image = |homs: &[LinearMap<F>]| -> Vec<Vec<F>> { homs.iter().flat_map(|w| w.columns()).collect() };
    let i_b = hom_space(n, db, &(0..db).map(|k| (a.left_mul_map(&m.b.basis_element(k)), bb.left_mul_map(&bb.basis(k)))).collect::<Vec<_>>());
    let i_b_up = hom_space(n, db, &(0..db).map(|k| (a.left_mul_map(&m.t_elem(&unit_vec(db, k))), bb.right_mul_map(&bb.basis(k)))).collect::<Vec<_>>());
    let i_c = hom_space(n, dc, &(0..dc).map(|k| (a.right_mul_map(&m.c.basis_element(k)), cc.right_mul_map(&cc.basis(k)))).collect::<Vec<_>>());
    let i_c_up = hom_space(n, dc, &(0..dc).map(|k| (a.right_mul_map(&m.sc_elem(&unit_vec(dc, k))), cc.left_mul_map(&cc.basis(k)))).collect::<Vec<_>>());
    let span = |gens: Vec<Vec<F>>, left: bool| -> Option<Value> {
        let prods: Vec<Vec<F>> = gens
            .iter()
            .flat_map(|g| (0..n).map(move |i| (g, i)))
            .map(|(g, i)| if left { a.mul(g, &a.basis(i)) } else { a.mul(&a.basis(i), g) })
            .collect();
        let rank = span_rank(n, &prods);
        (rank != n).then(|| json!({ "rank": rank, "dim": n }))
    };
    vec![
        ("S_B(I_B)·A = A", span(image(&i_b).iter().map(|x| m.t_elem(x)).collect(), true)),
        ("I^B·A = A", span(image(&i_b_up).iter().map(|x| m.b.include(x)).collect(), true)),
        ("A·S_C(I_C) = A", span(image(&i_c).iter().map(|y| m.sc_elem(y)).collect(), false)),
        ("A·^CI = A", span(image(&i_c_up).iter().map(|y| m.c.include(y)).collect(), false)),
    ]
}

/// Full regular multiplier Hopf algebroid suite.
pub fn verify_regular_mha<F: Field>(m: &RegularMha<F>) -> Report {
    let mut r = Report::new();
    verify_bases(m, &mut r);
    r.extend(verify_left_bialgebroid(m));
    r.extend(verify_right_bialgebroid(m));
    let n = m.dim();
    let (tb, tc) = (&m.tensors.target_b, &m.tensors.target_c);

    let reps_b: Vec<Vec<F>> = (0..n).map(|i| m.rep_b(i)).collect();
    let reps_c: Vec<Vec<F>> = (0..n).map(|i| m.rep_c(i)).collect();
    let mixed = TripleTensor::new("bsA⊗btA⊗cAs", tb, tc);
    r.check("(Δ_B⊗ι)Δ_C = (ι⊗Δ_C)Δ_B", "compatible", 0..n, |i| {
        let lhs = mixed.project(&expand_first(&reps_c[i], n, |j| reps_b[j].clone()));
        let rhs = mixed.project(&expand_second(&reps_b[i], n, |j| reps_c[j].clone()));
        compare(json!({"a": i}), &lhs, &rhs)
    });

    for (name, failure) in regularity_subspaces(m) {
        r.record(name, "regularity-subspaces", failure);
    }

    let canon = m.canonical_maps();
    for cm in canon.all() {
        let label = if cm.name.starts_with('T') { "left-galois-maps" } else { "right-galois-maps" };
        r.record(&format!("{} bijective", cm.name), label, cm.witness.clone());
    }

    let id = LinearMap::<F>::identity(n);
    r.check("(ι⊗m)(T̃_λ⊗ι) = (mΣ⊗ι)(ι⊗T̃_ρ)", "dg:left-galois-1", (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))), |(i, j, k)| {
        let lhs = apply_legs(&apply_legs(&reps_b[j], m.rmap(i), &id), &id, m.rmap(k));
        let rhs = apply_legs(&apply_legs(&reps_b[j], &id, m.rmap(k)), m.rmap(i), &id);
        compare(json!([i, j, k]), &tb.project(&lhs), &tb.project(&rhs))
    });

    if m.eps_b.is_some() && m.eps_c.is_some() {
        counit_identities(m, &mut r);
    }

    match &m.antipode {
        None => r.info("antipode", "dg:antipode", json!("absent")),
        Some(s) => {
            antipode_checks(m, s, &mut r);
            match derive_antipode(m) {
                Ok(d) => {
                    let diff = (&d != s).then(|| json!({ "derived": d.columns().iter().map(|c| vec_json(c)).collect::<Vec<_>>() }));
                    r.record("derived antipode equals S", "antipode-derived", diff);
                }
                Err(e) => record_err(&mut r, "derived antipode equals S", "antipode-derived", e),
            }
        }
    }
    r
}

fn counit_identities<F: Field>(m: &RegularMha<F>, r: &mut Report) {
    let n = m.dim();
    let a = &m.a;
    let eb = m.eps_b.as_ref().expect("checked");
    let ec = m.eps_c.as_ref().expect("checked");
    let eb_a = m.eps_b_in_a().expect("checked");
    let ec_a = m.eps_c_in_a().expect("checked");
    let tb_e = m.t_eps_b().expect("checked");
    let sc_e = m.s_eps_c().expect("checked");
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    r.check("ε_B(ab) = ε_B(aε_B(b))", "counits-multiplicative", pairs(), |(i, j)| {
        let lhs = eb.apply(&a.mul(&a.basis(i), &a.basis(j)));
        compare(json!([i, j]), &lhs, &eb.apply(&a.mul(&a.basis(i), &eb_a.column(j))))
    });
    r.check("ε_B(ab) = ε_B(aS_B(ε_B(b)))", "counits-multiplicative", pairs(), |(i, j)| {
        let lhs = eb.apply(&a.mul(&a.basis(i), &a.basis(j)));
        compare(json!([i, j]), &lhs, &eb.apply(&a.mul(&a.basis(i), &tb_e.column(j))))
    });
    r.check("ε_C(ab) = ε_C(ε_C(a)b)", "counits-multiplicative", pairs(), |(i, j)| {
        let lhs = ec.apply(&a.mul(&a.basis(i), &a.basis(j)));
        compare(json!([i, j]), &lhs, &ec.apply(&a.mul(&ec_a.column(i), &a.basis(j))))
    });
    r.check("ε_C(ab) = ε_C(S_C(ε_C(a))b)", "counits-multiplicative", pairs(), |(i, j)| {
        let lhs = ec.apply(&a.mul(&a.basis(i), &a.basis(j)));
        compare(json!([i, j]), &lhs, &ec.apply(&a.mul(&sc_e.column(i), &a.basis(j))))
    });
}

fn antipode_checks<F: Field>(m: &RegularMha<F>, s: &LinearMap<F>, r: &mut Report) {
    let n = m.dim();
    let a = &m.a;
    let t = &m.tensors;
    let (db, dc) = (m.b.dim(), m.c.dim());
    r.record("S anti-automorphism", "antipode-anti-multiplicative", automorphism_failure(a, s, true));

    let xs: Vec<Vec<F>> = (0..db).map(|k| m.b.basis_element(k)).collect();
    let ys: Vec<Vec<F>> = (0..dc).map(|k| m.c.basis_element(k)).collect();
    let txs: Vec<Vec<F>> = (0..db).map(|k| m.t_elem(&unit_vec(db, k))).collect();
    let sys: Vec<Vec<F>> = (0..dc).map(|k| m.sc_elem(&unit_vec(dc, k))).collect();
    let sa: Vec<Vec<F>> = (0..n).map(|i| s.column(i)).collect();
    r.check("S(xa) = S(a)S_B(x), S(ax) = S_B(x)S(a)", "antipode-module", (0..n).flat_map(|i| (0..db).map(move |k| (i, k))), |(i, k)| {
        compare(json!({"a": i, "x": k}), &s.apply(&a.mul(&xs[k], &a.basis(i))), &a.mul(&sa[i], &txs[k]))
            .or_else(|| compare(json!({"a": i, "x": k}), &s.apply(&a.mul(&a.basis(i), &xs[k])), &a.mul(&txs[k], &sa[i])))
    });
    r.check("S(ya) = S(a)S_C(y), S(ay) = S_C(y)S(a)", "antipode-module", (0..n).flat_map(|i| (0..dc).map(move |k| (i, k))), |(i, k)| {
        compare(json!({"a": i, "y": k}), &s.apply(&a.mul(&ys[k], &a.basis(i))), &a.mul(&sa[i], &sys[k]))
            .or_else(|| compare(json!({"a": i, "y": k}), &s.apply(&a.mul(&a.basis(i), &ys[k])), &a.mul(&sys[k], &sa[i])))
    });

    if let (Ok(eb), Ok(ec)) = (m.eps_b(), m.eps_c()) {
        r.record("S_B∘ε_B = ε_C∘S", "antipode-counits", compare(json!("matrix"), &m.s_b.compose(eb).rows().concat(), &ec.compose(s).rows().concat()));
        r.record("S_C∘ε_C = ε_B∘S", "antipode-counits", compare(json!("matrix"), &m.s_c.compose(ec).rows().concat(), &eb.compose(s).rows().concat()));
    }

    let canon = m.canonical_maps();
    let (Some(t_lambda), Some(t_rho), Some(lambda_t), Some(rho_t)) = (&canon.t_lambda.matrix, &canon.t_rho.matrix, &canon.lambda_t.matrix, &canon.rho_t.matrix) else {
        r.fail("antipode diagrams", "dg:antipode", json!("a canonical map does not descend"));
        return;
    };
    let id = LinearMap::<F>::identity(n);

    // m(S⊗ι)T_ρ = S_Cε_C⊗ι and m(ι⊗S)_λT = ι⊗S_Bε_B
    if let (Ok(sce), Ok(tbe)) = (m.s_eps_c(), m.t_eps_b()) {
        let m_s1 = t.target_b.descend(n, "dg:antipode", |i, j| a.mul(&sa[i], &a.basis(j)));
        let m_1s = t.target_c.descend(n, "dg:antipode", |i, j| a.mul(&a.basis(i), &sa[j]));
        match m_s1 {
            Err(e) => record_err(r, "m(S⊗ι)T_ρ = S_Cε_C⊗ι", "dg:antipode", e),
            Ok(ms) => {
                let lhs = ms.compose(t_rho);
                let rhs = t.t_rho.descend(n, "dg:antipode", |i, j| a.mul(&sce.column(i), &a.basis(j)));
                let failure = match rhs {
                    Err(_) => Some(json!("S_Cε_C⊗ι does not descend")),
                    Ok(rhs) => compare(json!("matrix"), &lhs.rows().concat(), &rhs.rows().concat()),
                };
                r.record("m(S⊗ι)T_ρ = S_Cε_C⊗ι", "dg:antipode", failure);
            }
        }
        match m_1s {
            Err(e) => record_err(r, "m(ι⊗S)_λT = ι⊗S_Bε_B", "dg:antipode", e),
            Ok(ms) => {
                let lhs = ms.compose(lambda_t);
                let rhs = t.lambda_t.descend(n, "dg:antipode", |i, j| a.mul(&a.basis(i), &tbe.column(j)));
                let failure = match rhs {
                    Err(_) => Some(json!("ι⊗S_Bε_B does not descend")),
                    Ok(rhs) => compare(json!("matrix"), &lhs.rows().concat(), &rhs.rows().concat()),
                };
                r.record("m(ι⊗S)_λT = ι⊗S_Bε_B", "dg:antipode", failure);
            }
        }
    }

    let i_s = id.kron(s);
    let s_i = s.kron(&id);
    let sigma_ss = swap_matrix::<F>(n).compose(&s.kron(s));
    let mat_eq = |lhs: Result<LinearMap<F>>, rhs: Result<LinearMap<F>>| -> Option<Value> {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => compare(json!("matrix"), &l.rows().concat(), &r.rows().concat()),
            (Err(e), _) | (_, Err(e)) => Some(json!(e.to_string())),
        }
    };
    r.record(
        "T_ρ∘(ι⊗S)∘_ρT = ι⊗S",
        "dg:galois-inverse",
        mat_eq(
            t.target_c.induced_map(&t.t_rho, &i_s).map(|m| t_rho.compose(&m).compose(rho_t)),
            t.rho_t.induced_map(&t.target_b, &i_s),
        ),
    );
    r.record(
        "_λT∘(S⊗ι)∘T_λ = S⊗ι",
        "dg:galois-inverse",
        mat_eq(
            t.target_b.induced_map(&t.lambda_t, &s_i).map(|m| lambda_t.compose(&m).compose(t_lambda)),
            t.t_lambda.induced_map(&t.target_c, &s_i),
        ),
    );
    r.record(
        "_ρT∘Σ(S⊗S) = Σ(S⊗S)∘T_λ",
        "dg:galois-antipode",
        mat_eq(
            t.t_lambda.induced_map(&t.rho_t, &sigma_ss).map(|m| rho_t.compose(&m)),
            t.target_b.induced_map(&t.target_c, &sigma_ss).map(|m| m.compose(t_lambda)),
        ),
    );
    r.record(
        "T_ρ∘Σ(S⊗S) = Σ(S⊗S)∘_λT",
        "dg:galois-antipode",
        mat_eq(
            t.lambda_t.induced_map(&t.t_rho, &sigma_ss).map(|m| t_rho.compose(&m)),
            t.target_c.induced_map(&t.target_b, &sigma_ss).map(|m| m.compose(lambda_t)),
        ),
    );
}

/// Solves both antipode diagrams, together with the module conditions on
/// `S`, for `S`. Rejected when the system is inconsistent or underdetermined.
pub fn derive_antipode<F: Field>(m: &RegularMha<F>) -> Result<LinearMap<F>> {
    let n = m.dim();
    let a = &m.a;
    let t = &m.tensors;
    let sce = m.s_eps_c()?;
    let tbe = m.t_eps_b()?;
    let canon = m.canonical_maps();
    let (Some(t_rho), Some(lambda_t)) = (&canon.t_rho.matrix, &canon.lambda_t.matrix) else {
        return Err(Error::rejected("derive-antipode", "dg:antipode", json!("canonical maps do not descend")));
    };
    // unknown S[k][i] at index k * n + i
    let unknowns = n * n;
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    let mut push = |row: Vec<F>, v: F| {
        if row.iter().any(|x| !x.is_zero()) || !v.is_zero() {
            rows.push(row);
            rhs.push(v);
        }
    };
    let prod = |i: usize, j: usize| -> &[(usize, F)] { a.structure(i, j) };

    for p in 0..n {
        for q in 0..n {
            // Σ c_ij S(e_i) e_j = S_C(ε_C(e_p)) e_q
            let rep = t.target_b.section(&t_rho.apply(&t.t_rho.project_pure(&a.basis(p), &a.basis(q))));
            let target = a.mul(&sce.column(p), &a.basis(q));
            let mut eqs = vec![vec![F::zero(); unknowns]; n];
            for (ij, c) in rep.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (ij / n, ij % n);
                for k in 0..n {
                    for (l, x) in prod(k, j) {
                        let cell = &mut eqs[*l][k * n + i];
                        *cell = cell.add_ref(&c.mul_ref(x));
                    }
                }
            }
            for (row, v) in eqs.into_iter().zip(target) {
                push(row, v);
            }
            // Σ c_ij e_i S(e_j) = e_p S_B(ε_B(e_q))
            let rep = t.target_c.section(&lambda_t.apply(&t.lambda_t.project_pure(&a.basis(p), &a.basis(q))));
            let target = a.mul(&a.basis(p), &tbe.column(q));
            let mut eqs = vec![vec![F::zero(); unknowns]; n];
            for (ij, c) in rep.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (ij / n, ij % n);
                for k in 0..n {
                    for (l, x) in prod(i, k) {
                        let cell = &mut eqs[*l][k * n + j];
                        *cell = cell.add_ref(&c.mul_ref(x));
                    }
                }
            }
            for (row, v) in eqs.into_iter().zip(target) {
                push(row, v);
            }
        }
    }
    // module conditions: S(v) = S(e_i)·w or w·S(e_i) for base elements w
    let mut module_eq = |v: Vec<F>, i: usize, w: &[F], w_left: bool| {
        let mut eqs = vec![vec![F::zero(); unknowns]; n];
        for (col, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (l, eq) in eqs.iter_mut().enumerate() {
                eq[l * n + col] = eq[l * n + col].add_ref(c);
            }
        }
        for k in 0..n {
            let ek = a.basis(k);
            let prodv = if w_left { a.mul(w, &ek) } else { a.mul(&ek, w) };
            for (l, x) in prodv.iter().enumerate() {
                if !x.is_zero() {
                    eqs[l][k * n + i] = eqs[l][k * n + i].sub_ref(x);
                }
            }
        }
        for row in eqs {
            push(row, F::zero());
        }
    };
    let (db, dc) = (m.b.dim(), m.c.dim());
    for i in 0..n {
        let e = a.basis(i);
        for k in 0..db {
            let x = m.b.basis_element(k);
            let tx = m.t_elem(&unit_vec(db, k));
            module_eq(a.mul(&x, &e), i, &tx, false);
            module_eq(a.mul(&e, &x), i, &tx, true);
        }
        for k in 0..dc {
            let y = m.c.basis_element(k);
            let sy = m.sc_elem(&unit_vec(dc, k));
            module_eq(a.mul(&y, &e), i, &sy, false);
            module_eq(a.mul(&e, &y), i, &sy, true);
        }
    }
    let sys = LinearMap::from_rows(rows.len(), unknowns, rows);
    let Some(sol) = sys.solve(&rhs) else {
        let aug = sys.hstack(&LinearMap::from_columns(rhs.len(), &[rhs]));
        return Err(Error::rejected(
            "derive-antipode",
            "dg:antipode",
            json!({ "inconsistent": true, "rank": sys.rank(), "augmented_rank": aug.rank() }),
        ));
    };
    let kernel = sys.kernel();
    if !kernel.is_empty() {
        return Err(Error::rejected("derive-antipode", "dg:antipode", json!({ "underdetermined": kernel.len() })));
    }
    Ok(LinearMap::from_rows(n, n, sol.chunks(n).map(|c| c.to_vec()).collect()))
}

/// The involution on `A`; `a* = J·conj(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarStructure<F: Field> {
    pub j: LinearMap<F>,
}

impl<F: Field> StarStructure<F> {
    pub fn of(a: &FiniteAlgebra<F>) -> Option<Self> {
        a.involution().map(|j| Self { j: j.clone() })
    }

    pub fn star(&self, v: &[F]) -> Vec<F> {
        antilinear(&self.j, v)
    }

    /// `*⊗*` on `A ⊗ A`.
    pub fn star2(&self, v: &[F]) -> Vec<F> {
        antilinear(&self.j.kron(&self.j), v)
    }
}

/// The involution conditions and their counit/antipode consequences.
pub fn verify_star<F: Field>(m: &RegularMha<F>, star: &StarStructure<F>) -> Report {
    let mut r = Report::new();
    let n = m.dim();
    let a = &m.a;
    let st = |v: &[F]| star.star(v);
    let (db, dc) = (m.b.dim(), m.c.dim());

    let failure = (0..n).find_map(|i| compare(json!({"a": i, "law": "a** = a"}), &st(&st(&a.basis(i))), &a.basis(i))).or_else(|| {
        (0..n).find_map(|i| {
            (0..n).find_map(|j| {
                compare(
                    json!({"a": i, "b": j, "law": "(ab)* = b*a*"}),
                    &st(&a.mul(&a.basis(i), &a.basis(j))),
                    &a.mul(&st(&a.basis(j)), &st(&a.basis(i))),
                )
            })
        })
    });
    r.record("* is an involution of A", "involution", failure);
    let closed = (0..db)
        .find_map(|k| (!m.b.contains(&st(&m.b.basis_element(k)))).then(|| json!({"B": k})))
        .or_else(|| (0..dc).find_map(|k| (!m.c.contains(&st(&m.c.basis_element(k)))).then(|| json!({"C": k}))));
    r.record("B and C are *-subalgebras", "involution", closed);

    let star_b = |x: &[F]| m.b.coords_unchecked(&st(&m.b.include(x)));
    let star_c = |y: &[F]| m.c.coords_unchecked(&st(&m.c.include(y)));
    r.check("S_B∘*∘S_C∘* = ι_C", "involution", 0..dc, |k| {
        let y = unit_vec(dc, k);
        compare(json!({"y": k}), &m.s_b.apply(&star_b(&m.s_c.apply(&star_c(&y)))), &y)
    });
    r.check("S_C∘*∘S_B∘* = ι_B", "involution", 0..db, |k| {
        let x = unit_vec(db, k);
        compare(json!({"x": k}), &m.s_c.apply(&star_c(&m.s_b.apply(&star_b(&x)))), &x)
    });

    let (tb, tc) = (&m.tensors.target_b, &m.tensors.target_c);
    let descends = tc.relation_basis().iter().all(|rel| tb.is_relation(&star.star2(rel)));
    if !descends {
        r.fail("Δ_B(a*)(b*⊗c*) = ((b⊗c)Δ_C(a))^{*⊗*}", "involution", json!("*⊗* does not map cAt⊗cAs to bsA⊗btA"));
    } else {
        let stars: Vec<LinearMap<F>> = (0..n).map(|i| a.right_mul_map(&st(&a.basis(i)))).collect();
        r.check(
            "Δ_B(a*)(b*⊗c*) = ((b⊗c)Δ_C(a))^{*⊗*}",
            "involution",
            (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))),
            |(i, j, k)| {
                let astar = st(&a.basis(i));
                let rep = tb.section(&m.delta_b_of(&astar));
                let lhs = tb.project(&apply_legs(&rep, &stars[j], &stars[k]));
                let rhs_c = apply_legs(&m.rep_c(i), m.lmap(j), m.lmap(k));
                let rhs = tb.project(&star.star2(&rhs_c));
                compare(json!([i, j, k]), &lhs, &rhs)
            },
        );
    }

    if let (Ok(eb), Ok(ec)) = (m.eps_b(), m.eps_c()) {
        r.check("ε_C∘* = *∘S_B∘ε_B", "counit-antipode-involution", 0..n, |i| {
            compare(json!({"a": i}), &ec.apply(&st(&a.basis(i))), &star_c(&m.s_b.apply(&eb.column(i))))
        });
        r.check("ε_B∘* = *∘S_C∘ε_C", "counit-antipode-involution", 0..n, |i| {
            compare(json!({"a": i}), &eb.apply(&st(&a.basis(i))), &star_b(&m.s_c.apply(&ec.column(i))))
        });
    }
    if let Ok(s) = m.antipode() {
        r.check("S∘*∘S∘* = ι", "counit-antipode-involution", 0..n, |i| {
            let e = a.basis(i);
            compare(json!({"a": i}), &s.apply(&st(&s.apply(&st(&e)))), &e)
        });
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    /// Group algebra of Z/2 with `Δ(g) = g⊗g` over the scalars.
    fn z2(delta: impl Fn(usize) -> Vec<Rational>) -> MhaParts<Rational> {
        let a = FiniteAlgebra::from_products(2, vec!["e".into(), "g".into()], |i, j| vec![((i + j) % 2, q(1))]);
        let one = vec![q(1), q(0)];
        MhaParts {
            name: "Z/2".into(),
            algebra: a,
            b_basis: vec![one.clone()],
            c_basis: vec![one],
            s_b: LinearMap::identity(1),
            s_c: LinearMap::identity(1),
            delta_b: (0..2).map(&delta).collect(),
            delta_c: (0..2).map(&delta).collect(),
            eps_b: Some(LinearMap::from_rows(1, 2, vec![vec![q(1), q(1)]])),
            eps_c: Some(LinearMap::from_rows(1, 2, vec![vec![q(1), q(1)]])),
            antipode: Some(LinearMap::identity(2)),
        }
    }

    fn grouplike(i: usize) -> Vec<Rational> {
        tensor(&unit_vec(2, i), &unit_vec(2, i))
    }

    #[test]
    fn z2_group_algebra_passes() {
        let m = RegularMha::new(z2(grouplike)).unwrap();
        let r = verify_regular_mha(&m);
        assert!(r.all_pass(), "{}", r.to_json_lines());
        let canon = m.canonical_maps();
        assert!(canon.all_bijective());
        assert_eq!(canon.t_rho.matrix.as_ref().unwrap().dom(), 4);
    }

    #[test]
    fn z2_inverse_of_t_rho_uses_antipode() {
        // T_ρ⁻¹(a⊗b) = a₍₁₎ ⊗ S(a₍₂₎)b for grouplikes
        let m = RegularMha::new(z2(grouplike)).unwrap();
        let inv = m.canonical_maps().t_rho.inverse.clone().unwrap();
        let brute = LinearMap::from_fn(4, 4, |r, c| {
            let (g, h) = (c / 2, c % 2);
            if r == g * 2 + (g + h) % 2 {
                q(1)
            } else {
                q(0)
            }
        });
        assert_eq!(inv, brute);
    }

    #[test]
    fn identity_comultiplication_has_no_antipode() {
        let fake = |i: usize| tensor(&unit_vec(2, i), &unit_vec(2, 0));
        let m = RegularMha::new(z2(fake)).unwrap();
        let err = derive_antipode(&m).unwrap_err();
        assert_eq!(err.label(), Some("dg:antipode"));
    }

    #[test]
    fn derived_antipode_of_z2_is_identity() {
        let m = RegularMha::new(z2(grouplike)).unwrap();
        assert!(derive_antipode(&m).unwrap().is_identity());
    }

    #[test]
    fn hom_space_of_scalars_is_everything() {
        let homs = hom_space::<Rational>(2, 1, &[(LinearMap::identity(2), LinearMap::identity(1))]);
        assert_eq!(homs.len(), 2);
    }
}
