//! Balanced tensor products `A ⊗_B A` as explicit quotients of `A ⊗ A`,
//! with checked induced maps, flips and slice maps.
//!
//! Elements of `A ⊗ A` are vectors of length `n²` indexed by `i * n + j`.

use serde_json::{json, Value};

use crate::algebra_core::ModuleStructure;
use crate::error::{Error, Result};
use crate::exact_linear::{quotient_by, Field, LinearMap, QuotientSpace};
use crate::report::vec_json;

/// `a ⊗ b` as a vector in `A ⊗ A`.
pub fn tensor<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(if x.is_zero() || y.is_zero() { F::zero() } else { x.mul_ref(y) });
        }
    }
    out
}

/// `(f ⊗ g)(v)` for `v ∈ A ⊗ A`, with `f: F^n → F^p`, `g: F^n → F^q`.
pub fn apply_legs<F: Field>(v: &[F], f: &LinearMap<F>, g: &LinearMap<F>) -> Vec<F> {
    let n1 = f.dom();
    let n2 = g.dom();
    assert_eq!(v.len(), n1 * n2, "dimension mismatch in apply_legs");
    let (p, q) = (f.cod(), g.cod());
    let mut out = vec![F::zero(); p * q];
    for i in 0..n1 {
        for j in 0..n2 {
            let c = &v[i * n2 + j];
            if c.is_zero() {
                continue;
            }
            for r in 0..p {
                let a = &f[(r, i)];
                if a.is_zero() {
                    continue;
                }
                let ca = c.mul_ref(a);
                for s in 0..q {
                    let b = &g[(s, j)];
                    if !b.is_zero() {
                        let cell = &mut out[r * q + s];
                        *cell = cell.add_ref(&ca.mul_ref(b));
                    }
                }
            }
        }
    }
    out
}

/// Matrix of `a ⊗ b ↦ b ⊗ a` on `F^n ⊗ F^n`.
pub fn swap_matrix<F: Field>(n: usize) -> LinearMap<F> {
    let mut m = LinearMap::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            m[(j * n + i, i * n + j)] = F::one();
        }
    }
    m
}

/// Bilinear map `A ⊗ A → F^cod` from its values on basis pairs.
pub fn bilinear_matrix<F: Field>(n: usize, cod: usize, mut f: impl FnMut(usize, usize) -> Vec<F>) -> LinearMap<F> {
    let cols: Vec<Vec<F>> = (0..n * n).map(|k| f(k / n, k % n)).collect();
    LinearMap::from_columns(cod, &cols)
}

/// A quotient `A ⊗ A / span{x·a ⊗ b − a ⊗ x·b}` for a pair of actions.
#[derive(Clone, Debug)]
pub struct BalancedTensor<F: Field> {
    /// Decorated flavor name, e.g. `bsA⊗btA`.
    pub tag: String,
    pub first: ModuleStructure<F>,
    pub second: ModuleStructure<F>,
    quotient: QuotientSpace<F>,
    n: usize,
}

impl<F: Field> BalancedTensor<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Dimension of `A`.
    pub fn base_dim(&self) -> usize {
        self.n
    }

    pub fn quotient(&self) -> &QuotientSpace<F> {
        &self.quotient
    }

    pub fn project(&self, v: &[F]) -> Vec<F> {
        self.quotient.project(v)
    }

    pub fn project_pure(&self, a: &[F], b: &[F]) -> Vec<F> {
        self.project(&tensor(a, b))
    }

    pub fn section(&self, q: &[F]) -> Vec<F> {
        self.quotient.section(q)
    }

    pub fn is_relation(&self, v: &[F]) -> bool {
        self.quotient.is_relation(v)
    }

    pub fn relation_basis(&self) -> &[Vec<F>] {
        self.quotient.relation_basis()
    }

    /// First relation vector that `m` fails to map into `dst`'s relations.
    pub fn descent_failure(&self, dst: &BalancedTensor<F>, m: &LinearMap<F>) -> Option<Value> {
        for r in self.relation_basis() {
            let img = m.apply(r);
            if !dst.is_relation(&img) {
                return Some(json!({
                    "from": self.tag,
                    "to": dst.tag,
                    "relation": vec_json(r),
                }));
            }
        }
        None
    }

    /// `π_dst ∘ m ∘ ι_self`, after checking that `m` respects the relations.
    pub fn induced_map(&self, dst: &BalancedTensor<F>, m: &LinearMap<F>) -> Result<LinearMap<F>> {
        if m.dom() != self.n * self.n || m.cod() != dst.n * dst.n {
            return Err(Error::Dimension(format!("map between {} and {}", self.tag, dst.tag)));
        }
        if let Some(w) = self.descent_failure(dst, m) {
            return Err(Error::rejected("induced-map", "delta-takeuchi", w));
        }
        Ok(dst.quotient.projection_map().compose(m).compose(&self.quotient.section_map()))
    }

    /// The flip `a ⊗ b ↦ b ⊗ a` into `dst`.
    pub fn flip_to(&self, dst: &BalancedTensor<F>) -> Result<LinearMap<F>> {
        self.induced_map(dst, &swap_matrix(self.n))
    }

    /// A map out of the quotient given on basis pairs; rejected with a
    /// witness relation when it does not vanish on the relations.
    pub fn slice(&self, cod: usize, f: impl FnMut(usize, usize) -> Vec<F>) -> Result<LinearMap<F>> {
        self.descend(cod, "left-counit", f)
    }

    /// As [`Self::slice`], naming `label` on rejection.
    pub fn descend(&self, cod: usize, label: &str, f: impl FnMut(usize, usize) -> Vec<F>) -> Result<LinearMap<F>> {
        self.descend_matrix(&bilinear_matrix(self.n, cod, f), label)
    }

    /// `m: A ⊗ A → F^cod` restricted to the quotient, if it kills the relations.
    pub fn descend_matrix(&self, m: &LinearMap<F>, label: &str) -> Result<LinearMap<F>> {
        for r in self.relation_basis() {
            let v = m.apply(r);
            if v.iter().any(|x| !x.is_zero()) {
                return Err(Error::rejected(
                    "descent",
                    label,
                    json!({ "tensor": self.tag, "relation": vec_json(r), "value": vec_json(&v) }),
                ));
            }
        }
        Ok(m.compose(&self.quotient.section_map()))
    }
}

/// Builds the quotient of `A ⊗ A` by `first(x)a ⊗ b − a ⊗ second(x)b`.
pub fn build_balanced<F: Field>(tag: &str, first: ModuleStructure<F>, second: ModuleStructure<F>) -> Result<BalancedTensor<F>> {
    if first.ops.len() != second.ops.len() {
        return Err(Error::Dimension("module structures over different bases".into()));
    }
    let n = first.ops.first().map_or(0, |o| o.cod());
    let id = LinearMap::identity(n);
    let mut rels = Vec::new();
    for (o1, o2) in first.ops.iter().zip(&second.ops) {
        let k = o1.kron(&id).sub(&id.kron(o2));
        rels.extend(k.columns().into_iter().filter(|c| c.iter().any(|x| !x.is_zero())));
    }
    Ok(BalancedTensor {
        tag: tag.to_string(),
        first,
        second,
        quotient: quotient_by(n * n, &rels),
        n,
    })
}

/// `A ⊗ A ⊗ A` modulo balancing relations on legs (1,2) and (2,3).
///
/// Built in two stages: first `A ⊗ A → Q₁₂` on legs (1,2), then the image of
/// `A ⊗ R₂₃` in `Q₁₂ ⊗ A`.
#[derive(Clone, Debug)]
pub struct TripleTensor<F: Field> {
    pub tag: String,
    n: usize,
    p12: LinearMap<F>,
    outer: QuotientSpace<F>,
}

impl<F: Field> TripleTensor<F> {
    pub fn new(tag: &str, legs12: &BalancedTensor<F>, legs23: &BalancedTensor<F>) -> Self {
        let n = legs12.base_dim();
        let p12 = legs12.quotient().projection_map();
        let q1 = p12.cod();
        let mut rels = Vec::new();
        for a in 0..n {
            for r in legs23.relation_basis() {
                let mut v = vec![F::zero(); q1 * n];
                for j in 0..n {
                    for k in 0..n {
                        let c = &r[j * n + k];
                        if c.is_zero() {
                            continue;
                        }
                        for p in 0..q1 {
                            let x = &p12[(p, a * n + j)];
                            if !x.is_zero() {
                                let cell = &mut v[p * n + k];
                                *cell = cell.add_ref(&c.mul_ref(x));
                            }
                        }
                    }
                }
                rels.push(v);
            }
        }
        Self {
            tag: tag.to_string(),
            n,
            p12,
            outer: quotient_by(q1 * n, &rels),
        }
    }

    pub fn dim(&self) -> usize {
        self.outer.dim()
    }

    /// Projects `v ∈ A ⊗ A ⊗ A`, index `(i * n + j) * n + k`.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        let n = self.n;
        assert_eq!(v.len(), n * n * n);
        let q1 = self.p12.cod();
        let mut w = vec![F::zero(); q1 * n];
        for ij in 0..n * n {
            for k in 0..n {
                let c = &v[ij * n + k];
                if c.is_zero() {
                    continue;
                }
                for p in 0..q1 {
                    let x = &self.p12[(p, ij)];
                    if !x.is_zero() {
                        let cell = &mut w[p * n + k];
                        *cell = cell.add_ref(&c.mul_ref(x));
                    }
                }
            }
        }
        self.outer.project(&w)
    }
}

/// `(f ⊗ id)(v)` for `v ∈ A ⊗ A` and `f: A → A ⊗ A`, giving `A ⊗ A ⊗ A`.
pub fn expand_first<F: Field>(v: &[F], n: usize, f: impl Fn(usize) -> Vec<F>) -> Vec<F> {
    let mut out = vec![F::zero(); n * n * n];
    for i in 0..n {
        let row: Vec<(usize, &F)> = (0..n).map(|j| (j, &v[i * n + j])).filter(|(_, c)| !c.is_zero()).collect();
        if row.is_empty() {
            continue;
        }
        let fi = f(i);
        for (ab, x) in fi.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, c) in &row {
                let cell = &mut out[ab * n + j];
                *cell = cell.add_ref(&x.mul_ref(c));
            }
        }
    }
    out
}

/// `(id ⊗ f)(v)` for `v ∈ A ⊗ A` and `f: A → A ⊗ A`.
pub fn expand_second<F: Field>(v: &[F], n: usize, f: impl Fn(usize) -> Vec<F>) -> Vec<F> {
    let mut out = vec![F::zero(); n * n * n];
    for j in 0..n {
        let col: Vec<(usize, &F)> = (0..n).map(|i| (i, &v[i * n + j])).filter(|(_, c)| !c.is_zero()).collect();
        if col.is_empty() {
            continue;
        }
        let fj = f(j);
        for (bc, x) in fj.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in &col {
                let cell = &mut out[i * n * n + bc];
                *cell = cell.add_ref(&x.mul_ref(c));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{FiniteAlgebra, Side};
    use crate::exact_linear::unit_vec;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn pointwise(n: usize) -> FiniteAlgebra<Rational> {
        FiniteAlgebra::from_products(n, FiniteAlgebra::<Rational>::default_labels(n), |i, j| {
            if i == j {
                vec![(i, q(1))]
            } else {
                vec![]
            }
        })
    }

    fn scalars_acting(n: usize) -> ModuleStructure<Rational> {
        ModuleStructure {
            name: "scalar".into(),
            side: Side::Left,
            base: pointwise(1),
            ops: vec![LinearMap::identity(n)],
        }
    }

    #[test]
    fn scalar_base_gives_full_tensor() {
        let t = build_balanced("A⊗A", scalars_acting(2), scalars_acting(2)).unwrap();
        assert_eq!(t.dim(), 4);
        let flip = t.flip_to(&t).unwrap();
        assert_eq!(flip, swap_matrix(2));
        assert!(flip.compose(&flip).is_identity());
    }

    #[test]
    fn diagonal_balancing_on_two_points() {
        // F² acting on itself on both legs: x·a ⊗ b = a ⊗ x·b leaves the diagonal
        let a = pointwise(2);
        let ops: Vec<_> = (0..2).map(|i| a.left_mul_map(&unit_vec(2, i))).collect();
        let m = ModuleStructure {
            name: "F²".into(),
            side: Side::Left,
            base: pointwise(2),
            ops,
        };
        let t = build_balanced("diag", m.clone(), m).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.is_relation(&tensor(&unit_vec(2, 0), &unit_vec(2, 1))));
        // multiplication is balanced, a random functional is not
        assert!(t.slice(2, |i, j| if i == j { unit_vec(2, i) } else { vec![q(0); 2] }).is_ok());
        assert!(t.slice(1, |i, j| vec![q((i + 2 * j) as i64)]).is_err());
        assert!(t.slice(2, |_, _| vec![q(0); 2]).unwrap().is_zero());
    }

    #[test]
    fn expansions_place_legs() {
        let n = 2;
        let v = tensor(&unit_vec::<Rational>(n, 1), &unit_vec(n, 0));
        let f = |i: usize| tensor(&unit_vec::<Rational>(n, i), &unit_vec(n, i));
        let left = expand_first(&v, n, f);
        let right = expand_second(&v, n, f);
        let mut expect_l = vec![q(0); 8];
        expect_l[(n + 1) * n] = q(1); // e1⊗e1⊗e0
        let mut expect_r = vec![q(0); 8];
        expect_r[n * n] = q(1); // e1⊗e0⊗e0
        assert_eq!(left, expect_l);
        assert_eq!(right, expect_r);
    }

    #[test]
    fn apply_legs_matches_kron() {
        let f = LinearMap::from_rows(2, 2, vec![vec![q(1), q(2)], vec![q(0), q(1)]]);
        let g = LinearMap::from_rows(2, 2, vec![vec![q(3), q(0)], vec![q(1), q(1)]]);
        let v = vec![q(1), q(-1), q(2), q(5)];
        assert_eq!(apply_legs(&v, &f, &g), f.kron(&g).apply(&v));
    }
}
