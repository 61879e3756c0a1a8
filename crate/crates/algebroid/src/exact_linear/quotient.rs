use super::field::Field;
use super::linear::LinearMap;

/// `Fⁿ / span(relations)` with a fixed echelon-form section.
///
/// Quotient coordinates are the values at the non-pivot columns of the
/// reduced relation matrix, so every class has one canonical representative.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientSpace<F: Field> {
    ambient: usize,
    // reduced relation rows, each with a leading 1 at `pivots[k]`
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl<F: Field> QuotientSpace<F> {
    pub fn trivial(n: usize) -> Self {
        Self {
            ambient: n,
            rows: Vec::new(),
            pivots: Vec::new(),
            free: (0..n).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis of the relation subspace in reduced form.
    pub fn relation_basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// π.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "dimension mismatch in project");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    w[k] = w[k].sub_ref(&f.mul_ref(x));
                }
            }
        }
        self.free.iter().map(|&c| w[c].clone()).collect()
    }

    /// ι, the canonical representative.
    pub fn section(&self, q: &[F]) -> Vec<F> {
        assert_eq!(q.len(), self.dim(), "dimension mismatch in section");
        let mut v = vec![F::zero(); self.ambient];
        for (x, &c) in q.iter().zip(&self.free) {
            v[c] = x.clone();
        }
        v
    }

    pub fn is_relation(&self, v: &[F]) -> bool {
        self.project(v).iter().all(|x| x.is_zero())
    }

    pub fn projection_map(&self) -> LinearMap<F> {
        let cols: Vec<Vec<F>> = (0..self.ambient)
            .map(|i| self.project(&super::linear::unit_vec(self.ambient, i)))
            .collect();
        LinearMap::from_columns(self.dim(), &cols)
    }

    pub fn section_map(&self) -> LinearMap<F> {
        let mut m = LinearMap::zeros(self.ambient, self.dim());
        for (j, &c) in self.free.iter().enumerate() {
            m[(c, j)] = F::one();
        }
        m
    }
}

/// Builds `Fⁿ / span(relations)`.
pub fn quotient_by<F: Field>(n: usize, relations: &[Vec<F>]) -> QuotientSpace<F> {
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in relations {
        assert_eq!(r.len(), n, "relation vector length");
        let mut w = r.clone();
        for (row, &p) in rows.iter().zip(&pivots) {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    w[k] = w[k].sub_ref(&f.mul_ref(x));
                }
            }
        }
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let inv = w[p].inv().expect("non-zero");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        for row in rows.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (k, x) in w.iter().enumerate() {
                if !x.is_zero() {
                    row[k] = row[k].sub_ref(&f.mul_ref(x));
                }
            }
        }
        rows.push(w);
        pivots.push(p);
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&k| pivots[k]);
    let rows: Vec<Vec<F>> = order.iter().map(|&k| rows[k].clone()).collect();
    let pivots: Vec<usize> = order.iter().map(|&k| pivots[k]).collect();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free = (0..n).filter(|&c| !is_pivot[c]).collect();
    QuotientSpace {
        ambient: n,
        rows,
        pivots,
        free,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::linear::unit_vec;
    use crate::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn one_relation_in_plane() {
        let q = quotient_by(2, &[v(&[1, -1])]);
        assert_eq!(q.dim(), 1);
        assert!(q.is_relation(&v(&[1, -1])));
        // π(a, b) is a + b up to the basis choice
        assert_eq!(q.project(&v(&[2, 5])), q.project(&v(&[7, 0])));
        assert_ne!(q.project(&v(&[1, 0])), vec![Rational::from_i64(0)]);
    }

    #[test]
    fn no_relations_is_identity() {
        let q = quotient_by::<Rational>(3, &[]);
        assert_eq!(q.dim(), 3);
        assert!(q.projection_map().is_identity());
    }

    #[test]
    fn rank_two_relations_in_four_space() {
        let rels = vec![v(&[1, 1, 0, 0]), v(&[0, 0, 1, 1]), v(&[1, 1, 1, 1])];
        let q = quotient_by(4, &rels);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.relation_rank(), 2);
    }

    #[test]
    fn section_is_right_inverse() {
        let rels = vec![v(&[1, 2, 0, -1]), v(&[0, 1, 1, 1])];
        let q = quotient_by(4, &rels);
        let p = q.projection_map();
        let s = q.section_map();
        assert!(p.compose(&s).is_identity());
        for i in 0..4 {
            let e = unit_vec::<Rational>(4, i);
            let back = q.section(&q.project(&e));
            let diff: Vec<_> = e.iter().zip(&back).map(|(a, b)| a.clone() - b.clone()).collect();
            assert!(q.is_relation(&diff));
        }
    }
}
