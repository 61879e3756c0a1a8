//! Finite-dimensional algebras by structure constants, multipliers,
//! subalgebras, base embeddings and module structures.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_linear::{is_zero_vec, span_rank, unit_vec, Field, LinearMap};
use crate::report::{compare, vec_json, Report};

/// `eᵢeⱼ = Σₖ c[i][j][k] eₖ`, stored sparsely per basis pair.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra<F: Field> {
    dim: usize,
    table: Vec<Vec<(usize, F)>>,
    involution: Option<LinearMap<F>>,
    labels: Vec<String>,
    unit: Option<Vec<F>>,
}

impl<F: Field> FiniteAlgebra<F> {
    /// `product(i, j)` returns `eᵢeⱼ` as sparse `(k, coeff)` pairs.
    pub fn from_products(dim: usize, labels: Vec<String>, mut product: impl FnMut(usize, usize) -> Vec<(usize, F)>) -> Self {
        assert_eq!(labels.len(), dim, "one label per basis element");
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut entry: Vec<(usize, F)> = Vec::new();
                for (k, c) in product(i, j) {
                    assert!(k < dim, "structure constant index out of range");
                    if let Some(e) = entry.iter_mut().find(|(kk, _)| *kk == k) {
                        e.1 = e.1.add_ref(&c);
                    } else {
                        entry.push((k, c));
                    }
                }
                entry.retain(|(_, c)| !c.is_zero());
                entry.sort_by_key(|(k, _)| *k);
                table.push(entry);
            }
        }
        let mut a = Self {
            dim,
            table,
            involution: None,
            labels,
            unit: None,
        };
        a.unit = a.compute_unit();
        a
    }

    /// Dense variant: `product(i, j)` is the full coefficient vector.
    pub fn from_dense(dim: usize, labels: Vec<String>, mut product: impl FnMut(usize, usize) -> Vec<F>) -> Self {
        Self::from_products(dim, labels, |i, j| {
            product(i, j).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
        })
    }

    pub fn default_labels(dim: usize) -> Vec<String> {
        (0..dim).map(|i| format!("e{i}")).collect()
    }

    /// Attaches `a* = J·conj(a)` after validating it.
    pub fn with_involution(mut self, j: LinearMap<F>) -> Result<Self> {
        if j.cod() != self.dim || j.dom() != self.dim {
            return Err(Error::Dimension("involution matrix".into()));
        }
        self.involution = Some(j);
        if let Some(w) = self.involution_failure() {
            return Err(Error::rejected("involution", "algebra-involution", w));
        }
        Ok(self)
    }

    pub fn without_involution(mut self) -> Self {
        self.involution = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn involution(&self) -> Option<&LinearMap<F>> {
        self.involution.as_ref()
    }

    pub fn unit(&self) -> Option<&Vec<F>> {
        self.unit.as_ref()
    }

    pub fn one(&self) -> Vec<F> {
        self.unit.clone().expect("algebra has a unit")
    }

    pub fn basis(&self, i: usize) -> Vec<F> {
        unit_vec(self.dim, i)
    }

    pub fn structure(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul_ref(y);
                for (k, c) in &self.table[i * n + j] {
                    out[*k] = out[*k].add_ref(&xy.mul_ref(c));
                }
            }
        }
        out
    }

    pub fn mul3(&self, a: &[F], b: &[F], c: &[F]) -> Vec<F> {
        self.mul(&self.mul(a, b), c)
    }

    /// `x ↦ a·x`.
    pub fn left_mul_map(&self, a: &[F]) -> LinearMap<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        LinearMap::from_columns(self.dim, &cols)
    }

    /// `x ↦ x·a`.
    pub fn right_mul_map(&self, a: &[F]) -> LinearMap<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        LinearMap::from_columns(self.dim, &cols)
    }

    pub fn star(&self, a: &[F]) -> Vec<F> {
        let j = self.involution.as_ref().expect("algebra has an involution");
        let c: Vec<F> = a.iter().map(|x| x.conj()).collect();
        j.apply(&c)
    }

    /// Antilinear maps are stored as `J` with `f(a) = J·conj(a)`; this is the
    /// linear map `a ↦ J·a`, useful only in combination with conjugation.
    pub fn star_matrix(&self) -> Option<&LinearMap<F>> {
        self.involution.as_ref()
    }

    fn compute_unit(&self) -> Option<Vec<F>> {
        let n = self.dim;
        if n == 0 {
            return None;
        }
        // u·eⱼ = eⱼ and eⱼ·u = eⱼ for every j, linear in u
        let mut rows = Vec::with_capacity(2 * n * n);
        let mut rhs = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            let mut left = LinearMap::zeros(n, n);
            let mut right = LinearMap::zeros(n, n);
            for i in 0..n {
                for (k, c) in self.structure(i, j) {
                    left[(*k, i)] = c.clone();
                }
                for (k, c) in self.structure(j, i) {
                    right[(*k, i)] = c.clone();
                }
            }
            for k in 0..n {
                rows.push(left.row(k).to_vec());
                rhs.push(if k == j { F::one() } else { F::zero() });
                rows.push(right.row(k).to_vec());
                rhs.push(if k == j { F::one() } else { F::zero() });
            }
        }
        let m = LinearMap::from_rows(rows.len(), n, rows);
        m.solve(&rhs)
    }

    pub fn opposite(&self) -> Self {
        let mut a = Self::from_products(self.dim, self.labels.clone(), |i, j| self.structure(j, i).to_vec());
        a.involution = self.involution.clone();
        a
    }

    /// `A₁ ⊗ A₂` with basis index `i * dim₂ + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n1, n2) = (self.dim, other.dim);
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let mut t = Self::from_products(n1 * n2, labels, |p, q| {
            let (i, j) = (p / n2, p % n2);
            let (k, l) = (q / n2, q % n2);
            let mut out = Vec::new();
            for (a, c) in self.structure(i, k) {
                for (b, d) in other.structure(j, l) {
                    out.push((a * n2 + b, c.mul_ref(d)));
                }
            }
            out
        });
        if let (Some(j1), Some(j2)) = (&self.involution, &other.involution) {
            t.involution = Some(j1.kron(j2));
        }
        t
    }

    fn associativity_failure(&self) -> Option<Value> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if let Some(w) = compare(json!([i, j, k]), &lhs, &rhs) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    fn nondegeneracy_failure(&self) -> Option<Value> {
        // a ↦ (a·eⱼ, eⱼ·a)ⱼ must be injective
        let n = self.dim;
        let mut rows = Vec::new();
        for j in 0..n {
            let r = self.right_mul_map(&self.basis(j));
            let l = self.left_mul_map(&self.basis(j));
            rows.extend(r.rows());
            rows.extend(l.rows());
        }
        let m = LinearMap::from_rows(rows.len(), n, rows);
        m.kernel().into_iter().next().map(|v| json!({ "kernel": vec_json(&v) }))
    }

    fn idempotency_failure(&self) -> Option<Value> {
        let n = self.dim;
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = self.mul(&self.basis(i), &self.basis(j));
                if !is_zero_vec(&p) {
                    products.push(p);
                }
            }
        }
        let r = span_rank(n, &products);
        (r < n).then(|| json!({ "rank_of_products": r, "dim": n }))
    }

    fn involution_failure(&self) -> Option<Value> {
        let n = self.dim;
        self.involution.as_ref()?;
        for i in 0..n {
            let ei = self.basis(i);
            if self.star(&self.star(&ei)) != ei {
                return Some(json!({ "involutive_at": i }));
            }
            for j in 0..n {
                let ej = self.basis(j);
                let lhs = self.star(&self.mul(&ei, &ej));
                let rhs = self.mul(&self.star(&ej), &self.star(&ei));
                if let Some(w) = compare(json!({ "anti_multiplicative_at": [i, j] }), &lhs, &rhs) {
                    return Some(w);
                }
            }
        }
        None
    }

    /// Whether the algebra passes every check of [`check_algebra`].
    pub fn is_valid(&self) -> bool {
        check_algebra(self).all_pass()
    }
}

/// Associativity, non-degeneracy, idempotency, unit and involution checks.
pub fn check_algebra<F: Field>(a: &FiniteAlgebra<F>) -> Report {
    let mut r = Report::new();
    r.record("associativity", "algebra-associative", a.associativity_failure());
    r.record("non-degeneracy", "algebra-nondegenerate", a.nondegeneracy_failure());
    r.record("idempotency", "algebra-idempotent", a.idempotency_failure());
    r.record(
        "local-units",
        "algebra-local-units",
        a.unit().is_none().then(|| json!("no two-sided unit")),
    );
    if a.involution().is_some() {
        r.record("involution", "algebra-involution", a.involution_failure());
    }
    r
}

pub fn find_unit<F: Field>(a: &FiniteAlgebra<F>) -> Option<Vec<F>> {
    a.unit().cloned()
}

/// Whether `f` is a bijective homomorphism, or anti-homomorphism when `anti`.
pub fn automorphism_check<F: Field>(a: &FiniteAlgebra<F>, f: &LinearMap<F>, anti: bool) -> bool {
    automorphism_failure(a, f, anti).is_none()
}

pub fn automorphism_failure<F: Field>(a: &FiniteAlgebra<F>, f: &LinearMap<F>, anti: bool) -> Option<Value> {
    let n = a.dim();
    if f.cod() != n || f.dom() != n {
        return Some(json!("dimension mismatch"));
    }
    if !f.is_injective() {
        return Some(json!({ "kernel": vec_json(&f.kernel()[0]) }));
    }
    hom_failure(a, a, f, anti)
}

/// First basis pair on which `f: A → D` fails to be (anti-)multiplicative.
pub fn hom_failure<F: Field>(a: &FiniteAlgebra<F>, d: &FiniteAlgebra<F>, f: &LinearMap<F>, anti: bool) -> Option<Value> {
    let images: Vec<Vec<F>> = f.columns();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.apply(&a.mul(&a.basis(i), &a.basis(j)));
            let rhs = if anti {
                d.mul(&images[j], &images[i])
            } else {
                d.mul(&images[i], &images[j])
            };
            if let Some(w) = compare(json!([i, j]), &lhs, &rhs) {
                return Some(w);
            }
        }
    }
    None
}

/// A pair `(L, R)` with `R(a)·b = a·L(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier<F: Field> {
    pub left: LinearMap<F>,
    pub right: LinearMap<F>,
}

impl<F: Field> Multiplier<F> {
    pub fn of_element(a: &FiniteAlgebra<F>, x: &[F]) -> Self {
        Self {
            left: a.left_mul_map(x),
            right: a.right_mul_map(x),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            left: self.left.compose(&other.left),
            right: other.right.compose(&self.right),
        }
    }

    pub fn is_compatible(&self, a: &FiniteAlgebra<F>) -> bool {
        (0..a.dim()).all(|i| {
            (0..a.dim()).all(|j| {
                let ei = a.basis(i);
                let ej = a.basis(j);
                a.mul(&self.right.apply(&ei), &ej) == a.mul(&ei, &self.left.apply(&ej))
            })
        })
    }
}

pub struct MultiplierAlgebra<F: Field> {
    pub algebra: FiniteAlgebra<F>,
    pub basis: Vec<Multiplier<F>>,
    /// Canonical map `A → M(A)` in the chosen basis.
    pub embedding: LinearMap<F>,
}

/// Solves for all multipliers of a non-degenerate idempotent algebra.
pub fn multiplier_algebra<F: Field>(a: &FiniteAlgebra<F>) -> Result<MultiplierAlgebra<F>> {
    let check = check_algebra(a);
    for axiom in ["non-degeneracy", "idempotency"] {
        if !check.passed(axiom) {
            let w = check.get(axiom).and_then(|e| e.witness.clone()).unwrap_or(Value::Null);
            return Err(Error::rejected(axiom, "multiplier-algebra", w));
        }
    }
    let n = a.dim();
    let nn = n * n;
    // unknowns: L (n×n) then R (n×n), index (r, c) ↦ r*n + c
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mul_coeff = |i: usize, j: usize, k: usize| -> F {
        a.structure(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // R(eᵢ)eⱼ − eᵢL(eⱼ), coefficient k
                let mut row = vec![F::zero(); 2 * nn];
                for m in 0..n {
                    row[nn + m * n + i] = row[nn + m * n + i].add_ref(&mul_coeff(m, j, k));
                    row[m * n + j] = row[m * n + j].sub_ref(&mul_coeff(i, m, k));
                }
                rows.push(row);
                // L(eᵢeⱼ) − L(eᵢ)eⱼ
                let mut row = vec![F::zero(); 2 * nn];
                for (p, c) in a.structure(i, j) {
                    row[k * n + p] = row[k * n + p].add_ref(c);
                }
                for m in 0..n {
                    row[m * n + i] = row[m * n + i].sub_ref(&mul_coeff(m, j, k));
                }
                rows.push(row);
                // R(eᵢeⱼ) − eᵢR(eⱼ)
                let mut row = vec![F::zero(); 2 * nn];
                for (p, c) in a.structure(i, j) {
                    row[nn + k * n + p] = row[nn + k * n + p].add_ref(c);
                }
                for m in 0..n {
                    row[nn + m * n + j] = row[nn + m * n + j].sub_ref(&mul_coeff(i, m, k));
                }
                rows.push(row);
            }
        }
    }
    let sys = LinearMap::from_rows(rows.len(), 2 * nn, rows);
    let sols = sys.kernel();
    let to_mult = |v: &[F]| Multiplier {
        left: LinearMap::from_rows(n, n, (0..n).map(|r| v[r * n..(r + 1) * n].to_vec()).collect()),
        right: LinearMap::from_rows(n, n, (0..n).map(|r| v[nn + r * n..nn + (r + 1) * n].to_vec()).collect()),
    };
    let basis: Vec<Multiplier<F>> = sols.iter().map(|v| to_mult(v)).collect();
    let flat = |m: &Multiplier<F>| -> Vec<F> {
        let mut v = m.left.rows().concat();
        v.extend(m.right.rows().concat());
        v
    };
    let basis_matrix = LinearMap::from_columns(2 * nn, &sols);
    let coords = |m: &Multiplier<F>| basis_matrix.solve(&flat(m)).expect("product of multipliers is a multiplier");
    let d = basis.len();
    let algebra = FiniteAlgebra::from_dense(d, FiniteAlgebra::<F>::default_labels(d), |i, j| coords(&basis[i].compose(&basis[j])));
    let emb_cols: Vec<Vec<F>> = (0..n).map(|i| coords(&Multiplier::of_element(a, &a.basis(i)))).collect();
    let embedding = LinearMap::from_columns(d, &emb_cols);
    Ok(MultiplierAlgebra {
        algebra,
        basis,
        embedding,
    })
}

/// A subalgebra of `A` given by a basis, with its own structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct Subalgebra<F: Field> {
    pub algebra: FiniteAlgebra<F>,
    /// Columns are the basis elements in `A`.
    pub embed: LinearMap<F>,
    left_inverse: LinearMap<F>,
}

impl<F: Field> Subalgebra<F> {
    pub fn from_basis(a: &FiniteAlgebra<F>, basis: &[Vec<F>], labels: Vec<String>) -> Result<Self> {
        let n = a.dim();
        let embed = LinearMap::from_columns(n, basis);
        if !embed.is_injective() {
            return Err(Error::Invalid("subalgebra basis is linearly dependent".into()));
        }
        let left_inverse = left_inverse(&embed);
        let d = basis.len();
        let mut failure = None;
        let algebra = FiniteAlgebra::from_dense(d, labels, |i, j| {
            let p = a.mul(&basis[i], &basis[j]);
            let c = left_inverse.apply(&p);
            if embed.apply(&c) != p && failure.is_none() {
                failure = Some(json!({ "product_outside": [i, j] }));
            }
            c
        });
        if let Some(w) = failure {
            return Err(Error::rejected("subalgebra-closure", "base-embedding", w));
        }
        let mut sub = Self {
            algebra,
            embed,
            left_inverse,
        };
        if a.involution().is_some() {
            // closed under * when every basis star lies in the span
            let cols: Option<Vec<Vec<F>>> = (0..d)
                .map(|i| sub.coords(&a.star(&basis[i])))
                .collect();
            if let Some(cols) = cols {
                let jb = LinearMap::from_columns(d, &cols);
                sub.algebra = sub.algebra.clone().with_involution(jb).unwrap_or(sub.algebra);
            }
        }
        Ok(sub)
    }

    pub fn dim(&self) -> usize {
        self.embed.dom()
    }

    pub fn include(&self, x: &[F]) -> Vec<F> {
        self.embed.apply(x)
    }

    pub fn basis_element(&self, i: usize) -> Vec<F> {
        self.embed.column(i)
    }

    /// Coordinates of an element of `A`, if it lies in the subalgebra.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        let c = self.left_inverse.apply(v);
        (self.embed.apply(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of a vector known to lie in the subalgebra.
    pub fn coords_unchecked(&self, v: &[F]) -> Vec<F> {
        self.left_inverse.apply(v)
    }

    pub fn left_inverse(&self) -> &LinearMap<F> {
        &self.left_inverse
    }
}

/// Some `P` with `P·E = I` for an injective `E`.
pub fn left_inverse<F: Field>(e: &LinearMap<F>) -> LinearMap<F> {
    let (_, rows) = e.transpose().rref();
    let d = e.dom();
    let square = LinearMap::from_rows(d, d, rows.iter().map(|&r| e.row(r).to_vec()).collect());
    let inv = square.inverse().expect("independent rows are invertible");
    let mut sel = LinearMap::zeros(d, e.cod());
    for (k, &r) in rows.iter().enumerate() {
        sel[(k, r)] = F::one();
    }
    inv.compose(&sel)
}

/// An injective (anti-)homomorphism `B → M(A) = A`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseEmbedding<F: Field> {
    pub base: FiniteAlgebra<F>,
    pub map: LinearMap<F>,
    pub anti: bool,
}

impl<F: Field> BaseEmbedding<F> {
    pub fn check(&self, a: &FiniteAlgebra<F>) -> Option<Value> {
        if !self.map.is_injective() {
            return Some(json!("embedding not injective"));
        }
        hom_failure(&self.base, a, &self.map, self.anti)
    }

    pub fn image(&self, x: &[F]) -> Vec<F> {
        self.map.apply(x)
    }

    pub fn multiplier(&self, a: &FiniteAlgebra<F>, x: &[F]) -> Multiplier<F> {
        Multiplier::of_element(a, &self.image(x))
    }

    /// First basis pair whose images fail to commute with the partner's.
    pub fn commute_failure(&self, a: &FiniteAlgebra<F>, partner: &BaseEmbedding<F>) -> Option<Value> {
        for i in 0..self.map.dom() {
            let x = self.map.column(i);
            for j in 0..partner.map.dom() {
                let y = partner.map.column(j);
                if let Some(w) = compare(json!([i, j]), &a.mul(&x, &y), &a.mul(&y, &x)) {
                    return Some(w);
                }
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An action of a base algebra on `A`, one operator per base basis element.
#[derive(Clone, Debug)]
pub struct ModuleStructure<F: Field> {
    pub name: String,
    pub side: Side,
    pub base: FiniteAlgebra<F>,
    pub ops: Vec<LinearMap<F>>,
}

impl<F: Field> ModuleStructure<F> {
    pub fn op(&self, x: &[F]) -> LinearMap<F> {
        let n = self.ops.first().map_or(0, |o| o.cod());
        let mut m = LinearMap::zeros(n, n);
        for (c, o) in x.iter().zip(&self.ops) {
            if !c.is_zero() {
                m = m.add(&o.scale(c));
            }
        }
        m
    }

    /// Left: `x·(x'·a) = (xx')·a`; right: `(a·x)·x' = a·(xx')`; unit acts as the identity.
    pub fn action_failure(&self) -> Option<Value> {
        let d = self.base.dim();
        for i in 0..d {
            for j in 0..d {
                let prod = self.op(&self.base.mul(&self.base.basis(i), &self.base.basis(j)));
                let composed = match self.side {
                    Side::Left => self.ops[i].compose(&self.ops[j]),
                    Side::Right => self.ops[j].compose(&self.ops[i]),
                };
                if prod != composed {
                    return Some(json!({ "module": self.name, "pair": [i, j] }));
                }
            }
        }
        if let Some(u) = self.base.unit() {
            if !self.op(u).is_identity() {
                return Some(json!({ "module": self.name, "unit": "does not act as identity" }));
            }
        }
        None
    }

    /// `x ↦ (a ↦ x·a)` injective.
    pub fn is_faithful(&self) -> bool {
        let n = self.ops.first().map_or(0, |o| o.cod());
        let cols: Vec<Vec<F>> = self.ops.iter().map(|o| o.rows().concat()).collect();
        LinearMap::from_columns(n * n, &cols).is_injective()
    }

    /// Span of all `x·a` is the whole space.
    pub fn is_idempotent(&self) -> bool {
        let n = self.ops.first().map_or(0, |o| o.cod());
        let vs: Vec<Vec<F>> = self.ops.iter().flat_map(|o| o.columns()).collect();
        span_rank(n, &vs) == n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn z2() -> FiniteAlgebra<Rational> {
        FiniteAlgebra::from_products(2, vec!["e".into(), "g".into()], |i, j| vec![((i + j) % 2, q(1))])
    }

    #[test]
    fn pointwise_functions_pass() {
        let a = pointwise(4);
        assert!(check_algebra(&a).all_pass());
        assert_eq!(find_unit(&a), Some(vec![q(1); 4]));
    }

    #[test]
    fn zero_product_is_degenerate() {
        let a = FiniteAlgebra::<Rational>::from_products(1, vec!["z".into()], |_, _| vec![]);
        let r = check_algebra(&a);
        assert!(!r.passed("non-degeneracy"));
        assert_eq!(find_unit(&a), None);
    }

    #[test]
    fn group_algebra_z2() {
        let a = z2();
        assert!(check_algebra(&a).all_pass());
        assert_eq!(find_unit(&a), Some(vec![q(1), q(0)]));
    }

    #[test]
    fn multiplier_algebra_of_unital() {
        for a in [z2(), pointwise(2)] {
            let m = multiplier_algebra(&a).unwrap();
            assert_eq!(m.algebra.dim(), a.dim());
            assert!(m.embedding.inverse().is_some());
            assert!(m.basis.iter().all(|x| x.is_compatible(&a)));
        }
    }

    #[test]
    fn automorphisms() {
        let a = pointwise(2);
        assert!(automorphism_check(&a, &LinearMap::identity(2), false));
        let swap = LinearMap::from_rows(2, 2, vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        assert!(automorphism_check(&a, &swap, false));
        let shear = LinearMap::from_rows(2, 2, vec![vec![q(1), q(1)], vec![q(0), q(1)]]);
        assert!(!automorphism_check(&a, &shear, false));
        assert!(automorphism_failure(&a, &shear, false).is_some());
    }

    #[test]
    fn subalgebra_coordinates() {
        let a = pointwise(4);
        let b = Subalgebra::from_basis(&a, &[vec![q(1), q(1), q(0), q(0)], vec![q(0), q(0), q(1), q(1)]], vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(b.coords(&[q(2), q(2), q(5), q(5)]), Some(vec![q(2), q(5)]));
        assert_eq!(b.coords(&[q(1), q(0), q(0), q(0)]), None);
        assert!(check_algebra(&b.algebra).all_pass());
        let bad = Subalgebra::from_basis(&a, &[vec![q(1), q(1), q(0), q(0)], vec![q(1), q(0), q(1), q(0)]], vec!["x".into(), "y".into()]);
        assert!(bad.is_err());
    }

    #[test]
    fn involution_validation() {
        let a = z2();
        // g* = g on the group algebra
        assert!(a.clone().with_involution(LinearMap::identity(2)).is_ok());
        let neg = LinearMap::from_rows(2, 2, vec![vec![q(1), q(0)], vec![q(0), q(-1)]]);
        assert!(a.clone().with_involution(neg.scale(&q(2))).is_err());
    }

    #[test]
    fn module_action_axiom() {
        let b = pointwise(2);
        let a = pointwise(4);
        let ops: Vec<_> = (0..2)
            .map(|i| {
                let mut v = vec![q(0); 4];
                v[2 * i] = q(1);
                v[2 * i + 1] = q(1);
                a.left_mul_map(&v)
            })
            .collect();
        let m = ModuleStructure {
            name: "test".into(),
            side: Side::Left,
            base: b,
            ops,
        };
        assert!(m.action_failure().is_none());
        assert!(m.is_faithful());
        assert!(m.is_idempotent());
    }
}
