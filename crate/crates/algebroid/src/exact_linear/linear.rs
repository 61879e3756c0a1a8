use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::Field;

/// Dense matrix of a linear map `F^dom → F^cod`, stored row-major.
#[derive(Clone, PartialEq)]
pub struct LinearMap<F> {
    cod: usize,
    dom: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for LinearMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap {}x{}", self.cod, self.dom)?;
        for r in 0..self.cod {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Index<(usize, usize)> for LinearMap<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.dom + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for LinearMap<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.dom + c]
    }
}

impl<F: Field> LinearMap<F> {
    pub fn zeros(cod: usize, dom: usize) -> Self {
        Self {
            cod,
            dom,
            data: vec![F::zero(); cod * dom],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(cod: usize, dom: usize, rows: Vec<Vec<F>>) -> Self {
        assert_eq!(rows.len(), cod, "row count");
        let mut data = Vec::with_capacity(cod * dom);
        for r in rows {
            assert_eq!(r.len(), dom, "row length");
            data.extend(r);
        }
        Self { cod, dom, data }
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cod: usize, cols: &[Vec<F>]) -> Self {
        let dom = cols.len();
        let mut m = Self::zeros(cod, dom);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), cod, "column length");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m[(i, j)] = x.clone();
                }
            }
        }
        m
    }

    pub fn from_fn(cod: usize, dom: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(cod * dom);
        for r in 0..cod {
            for c in 0..dom {
                data.push(f(r, c));
            }
        }
        Self { cod, dom, data }
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn is_square(&self) -> bool {
        self.cod == self.dom
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.dom..(r + 1) * self.dom]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.cod).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        (0..self.cod).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.dom).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.dom, "dimension mismatch in apply");
        let mut out = vec![F::zero(); self.cod];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.dom + c];
                if !a.is_zero() {
                    *o = o.add_ref(&a.mul_ref(x));
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!(self.dom, other.cod, "dimension mismatch in compose");
        let mut out = Self::zeros(self.cod, other.dom);
        for r in 0..self.cod {
            for k in 0..self.dom {
                let a = &self.data[r * self.dom + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.dom {
                    let b = &other.data[k * other.dom + c];
                    if !b.is_zero() {
                        let cell = &mut out.data[r * other.dom + c];
                        *cell = cell.add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!((self.cod, self.dom), (other.cod, other.dom));
        Self {
            cod: self.cod,
            dom: self.dom,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!((self.cod, self.dom), (other.cod, other.dom));
        Self {
            cod: self.cod,
            dom: self.dom,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> LinearMap<F> {
        Self {
            cod: self.cod,
            dom: self.dom,
            data: self.data.iter().map(|a| a.mul_ref(s)).collect(),
        }
    }

    pub fn transpose(&self) -> LinearMap<F> {
        Self::from_fn(self.dom, self.cod, |r, c| self[(c, r)].clone())
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> LinearMap<F> {
        Self {
            cod: self.cod,
            dom: self.dom,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Kronecker product; basis `(i, j)` of the domain is `i * other.dom + j`.
    pub fn kron(&self, other: &LinearMap<F>) -> LinearMap<F> {
        let mut out = Self::zeros(self.cod * other.cod, self.dom * other.dom);
        for r1 in 0..self.cod {
            for c1 in 0..self.dom {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.cod {
                    for c2 in 0..other.dom {
                        let b = &other[(r2, c2)];
                        if !b.is_zero() {
                            out[(r1 * other.cod + r2, c1 * other.dom + c2)] = a.mul_ref(b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!(self.dom, other.dom);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            cod: self.cod + other.cod,
            dom: self.dom,
            data,
        }
    }

    /// Places `self` left of `other`.
    pub fn hstack(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!(self.cod, other.cod);
        Self::from_fn(self.cod, self.dom + other.dom, |r, c| {
            if c < self.dom {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.dom)].clone()
            }
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (LinearMap<F>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.cod, self.dom);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..cols {
                    self.data.swap(p * cols + k, r * cols + k);
                }
            }
            let inv = self[(r, c)].inv().expect("non-zero pivot");
            for k in c..cols {
                let v = &self.data[r * cols + k];
                if !v.is_zero() {
                    self.data[r * cols + k] = v.mul_ref(&inv);
                }
            }
            let pivot_row: Vec<(usize, F)> = (c..cols)
                .filter(|&k| !self.data[r * cols + k].is_zero())
                .map(|k| (k, self.data[r * cols + k].clone()))
                .collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for (k, v) in &pivot_row {
                    let cell = &mut self.data[i * cols + k];
                    *cell = cell.sub_ref(&f.mul_ref(v));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.dom];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.dom).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.dom];
            v[free] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                let x = &m[(r, free)];
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn image(&self) -> Vec<Vec<F>> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.dom
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.cod
    }

    /// Some `x` with `self·x = target`, or `None` when `target` is outside
    /// the image.
    pub fn solve(&self, target: &[F]) -> Option<Vec<F>> {
        assert_eq!(target.len(), self.cod, "dimension mismatch in solve");
        let aug = self.hstack(&LinearMap::from_columns(self.cod, &[target.to_vec()]));
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.dom) {
            return None;
        }
        let mut x = vec![F::zero(); self.dom];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m[(r, self.dom)].clone();
        }
        Some(x)
    }

    /// Solves `self·X = targets` column by column in one elimination.
    pub fn solve_many(&self, targets: &LinearMap<F>) -> Option<LinearMap<F>> {
        assert_eq!(targets.cod, self.cod, "dimension mismatch in solve");
        let aug = self.hstack(targets);
        let (m, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.dom) {
            return None;
        }
        let mut x = LinearMap::zeros(self.dom, targets.dom);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..targets.dom {
                x[(p, c)] = m[(r, self.dom + c)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<LinearMap<F>> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_many(&LinearMap::identity(self.cod))?;
        if self.rank() == self.cod {
            Some(x)
        } else {
            None
        }
    }

    /// The map taking `spanning[k]` to `values[k]`, if such a map exists.
    ///
    /// `spanning` must span the domain.
    pub fn from_spanning(dom: usize, cod: usize, spanning: &[Vec<F>], values: &[Vec<F>]) -> Option<LinearMap<F>> {
        assert_eq!(spanning.len(), values.len());
        // X·S = V  ⇔  Sᵀ·Xᵀ = Vᵀ
        let s_t = LinearMap::from_rows(spanning.len(), dom, spanning.to_vec());
        let v_t = LinearMap::from_rows(values.len(), cod, values.to_vec());
        if s_t.rank() != dom {
            return None;
        }
        Some(s_t.solve_many(&v_t)?.transpose())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.cod)
    }
}

pub fn vec_add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect()
}

pub fn vec_sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.sub_ref(y)).collect()
}

pub fn vec_scale<F: Field>(a: &[F], s: &F) -> Vec<F> {
    a.iter().map(|x| x.mul_ref(s)).collect()
}

pub fn is_zero_vec<F: Field>(a: &[F]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn unit_vec<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// Rank of a list of vectors of common length `n`.
pub fn span_rank<F: Field>(n: usize, vs: &[Vec<F>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    LinearMap::from_rows(vs.len(), n, vs.to_vec()).rank()
}

/// Whether `v` lies in the span of `vs`.
pub fn in_span<F: Field>(n: usize, vs: &[Vec<F>], v: &[F]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    if vs.is_empty() {
        return false;
    }
    LinearMap::from_columns(n, vs).solve(v).is_some()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span<F: Field>(n: usize, a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = span_rank(n, a);
    let rb = span_rank(n, b);
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    ra == rb && span_rank(n, &all) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> LinearMap<Rational> {
        let cod = rows.len();
        let dom = rows[0].len();
        LinearMap::from_rows(
            cod,
            dom,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect())
                .collect(),
        )
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn solve_identity_returns_target() {
        let id = LinearMap::<Rational>::identity(3);
        assert_eq!(id.solve(&v(&[4, -1, 7])), Some(v(&[4, -1, 7])));
    }

    #[test]
    fn solve_zero_map_rejects_nonzero() {
        let z = LinearMap::<Rational>::zeros(2, 2);
        assert_eq!(z.solve(&v(&[1, 0])), None);
    }

    #[test]
    fn solve_two_by_two() {
        assert_eq!(m(&[&[1, 1], &[0, 2]]).solve(&v(&[3, 4])), Some(v(&[1, 2])));
    }

    #[test]
    fn kernel_examples() {
        assert!(LinearMap::<Rational>::identity(3).kernel().is_empty());
        assert_eq!(LinearMap::<Rational>::zeros(2, 2).kernel().len(), 2);
        let k = m(&[&[1, 2], &[2, 4]]).kernel();
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(k[0][0].clone() * Rational::from_i64(-1), k[0][1].clone() * Rational::from_i64(2));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.compose(&inv).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn from_spanning_recovers_map() {
        let a = m(&[&[1, 2], &[3, 4], &[0, 1]]);
        let span = vec![v(&[1, 1]), v(&[1, -1]), v(&[2, 0])];
        let vals: Vec<_> = span.iter().map(|s| a.apply(s)).collect();
        assert_eq!(LinearMap::from_spanning(2, 3, &span, &vals), Some(a));
        // inconsistent values on a dependent spanning set
        let bad = vec![v(&[1]), v(&[1]), v(&[3])];
        assert!(LinearMap::from_spanning(2, 1, &span, &bad).is_none());
    }

    #[test]
    fn kron_indexing() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let id = LinearMap::<Rational>::identity(2);
        let k = a.kron(&id);
        assert_eq!(k.apply(&v(&[1, 0, 0, 0])), v(&[0, 0, 1, 0]));
    }

    #[test]
    fn span_helpers() {
        let a = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        let b = vec![v(&[1, 1, 0]), v(&[1, -1, 0])];
        assert!(same_span(3, &a, &b));
        assert!(in_span(3, &a, &v(&[3, 4, 0])));
        assert!(!in_span(3, &a, &v(&[0, 0, 1])));
    }
}
