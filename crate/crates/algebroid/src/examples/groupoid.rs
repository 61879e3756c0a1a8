//! Finite groups and groupoids given by explicit tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A finite group by multiplication table; element 0 need not be the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub labels: Vec<String>,
    mul: Vec<usize>,
    pub identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(labels: Vec<String>, mul: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if mul.len() != n * n || mul.iter().any(|&k| k >= n) {
            return Err(Error::Invalid("group table must be n×n with entries below n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] == g && mul[g * n + e] == g))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| mul[g * n + h] == identity && mul[h * n + g] == identity)
                .ok_or_else(|| Error::Invalid(format!("{} has no inverse", labels[g])))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::Invalid(format!("group table not associative at {a},{b},{c}")));
                    }
                }
            }
        }
        Ok(Self {
            labels,
            mul,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") }).collect();
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_table(labels, mul).expect("cyclic group")
    }

    /// The symmetric group on three letters, permutations in lexicographic order.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx: HashMap<[usize; 3], usize> = perms.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut mul = Vec::with_capacity(36);
        for p in &perms {
            for q in &perms {
                // (pq)(k) = p(q(k))
                let r = [p[q[0]], p[q[1]], p[q[2]]];
                mul.push(idx[&r]);
            }
        }
        let labels = perms.iter().map(|p| format!("{}{}{}", p[0] + 1, p[1] + 1, p[2] + 1)).collect();
        Self::from_table(labels, mul).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a))
    }
}

/// A finite groupoid; units are arrows, `s` and `t` return arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    pub labels: Vec<String>,
    pub units: Vec<usize>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    compose: Vec<Option<usize>>,
    pub inverse: Vec<usize>,
}

/// Serialized form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub arrows: Vec<String>,
    pub units: Vec<String>,
    pub s: BTreeMap<String, String>,
    pub t: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
    pub inverse: BTreeMap<String, String>,
}

impl FiniteGroupoid {
    /// Checks the groupoid axioms; `compose[a*n+b]` is `ab`, defined iff `s(a) = t(b)`.
    pub fn new(labels: Vec<String>, units: Vec<usize>, s: Vec<usize>, t: Vec<usize>, compose: Vec<Option<usize>>, inverse: Vec<usize>) -> Result<Self> {
        let g = Self {
            labels,
            units,
            s,
            t,
            compose,
            inverse,
        };
        match g.axiom_failure() {
            None => Ok(g),
            Some(w) => Err(Error::rejected("groupoid", "groupoid-axioms", w)),
        }
    }

    pub fn axiom_failure(&self) -> Option<Value> {
        let n = self.labels.len();
        if self.s.len() != n || self.t.len() != n || self.inverse.len() != n || self.compose.len() != n * n {
            return Some(json!("table sizes do not match the arrow count"));
        }
        if self.units.is_empty() && n > 0 {
            return Some(json!("no units"));
        }
        for &u in &self.units {
            if self.s[u] != u || self.t[u] != u {
                return Some(json!({ "unit": self.labels[u], "law": "s(u) = t(u) = u" }));
            }
        }
        for a in 0..n {
            if !self.units.contains(&self.s[a]) || !self.units.contains(&self.t[a]) {
                return Some(json!({ "arrow": self.labels[a], "law": "s, t land in the units" }));
            }
            for b in 0..n {
                let composable = self.s[a] == self.t[b];
                match self.compose[a * n + b] {
                    Some(_) if !composable => return Some(json!({ "pair": [self.labels[a], self.labels[b]], "law": "defined only when s(a) = t(b)" })),
                    None if composable => return Some(json!({ "pair": [self.labels[a], self.labels[b]], "law": "composable pairs compose" })),
                    Some(c) if self.s[c] != self.s[b] || self.t[c] != self.t[a] => {
                        return Some(json!({ "pair": [self.labels[a], self.labels[b]], "law": "s(ab) = s(b), t(ab) = t(a)" }))
                    }
                    _ => {}
                }
            }
            if self.compose(self.t[a], a) != Some(a) || self.compose(a, self.s[a]) != Some(a) {
                return Some(json!({ "arrow": self.labels[a], "law": "units are neutral" }));
            }
            let i = self.inverse[a];
            if self.compose(a, i) != Some(self.t[a]) || self.compose(i, a) != Some(self.s[a]) {
                return Some(json!({ "arrow": self.labels[a], "law": "γγ⁻¹ = t(γ), γ⁻¹γ = s(γ)" }));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (Some(ab), Some(bc)) = (self.compose(a, b), self.compose(b, c)) else {
                        continue;
                    };
                    if self.compose(ab, c) != self.compose(a, bc) {
                        return Some(json!({ "triple": [self.labels[a], self.labels[b], self.labels[c]], "law": "associativity" }));
                    }
                }
            }
        }
        None
    }

    pub fn arrows(&self) -> usize {
        self.labels.len()
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose[a * self.arrows() + b]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units.contains(&a)
    }

    /// Position of a unit arrow in `units`.
    pub fn unit_index(&self, u: usize) -> usize {
        self.units.iter().position(|&v| v == u).expect("arrow is a unit")
    }

    pub fn source_index(&self, a: usize) -> usize {
        self.unit_index(self.s[a])
    }

    pub fn target_index(&self, a: usize) -> usize {
        self.unit_index(self.t[a])
    }

    /// Pair groupoid on `k` points; arrow `(i,j)` has target `i` and source `j`.
    pub fn pair(k: usize) -> Self {
        let n = k * k;
        let idx = |i: usize, j: usize| i * k + j;
        let labels = (0..n).map(|a| format!("({},{})", a / k + 1, a % k + 1)).collect();
        let units = (0..k).map(|i| idx(i, i)).collect();
        let s = (0..n).map(|a| idx(a % k, a % k)).collect();
        let t = (0..n).map(|a| idx(a / k, a / k)).collect();
        let mut compose = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if a % k == b / k {
                    compose[a * n + b] = Some(idx(a / k, b % k));
                }
            }
        }
        let inverse = (0..n).map(|a| idx(a % k, a / k)).collect();
        Self::new(labels, units, s, t, compose, inverse).expect("pair groupoid")
    }

    /// A group as a groupoid with one unit.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let e = g.identity;
        let compose = (0..n * n).map(|k| Some(g.mul(k / n, k % n))).collect();
        Self::new(g.labels.clone(), vec![e], vec![e; n], vec![e; n], compose, (0..n).map(|a| g.inv(a)).collect()).expect("group")
    }

    pub fn one_point() -> Self {
        Self::pair(1)
    }

    /// `k` units and no other arrows.
    pub fn discrete(k: usize) -> Self {
        let mut compose = vec![None; k * k];
        for a in 0..k {
            compose[a * k + a] = Some(a);
        }
        let labels = (0..k).map(|a| format!("u{}", a + 1)).collect();
        Self::new(labels, (0..k).collect(), (0..k).collect(), (0..k).collect(), compose, (0..k).collect()).expect("discrete")
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (n, m) = (self.arrows(), other.arrows());
        let total = n + m;
        let labels = self.labels.iter().map(|l| format!("{l}.0")).chain(other.labels.iter().map(|l| format!("{l}.1"))).collect();
        let units = self.units.iter().copied().chain(other.units.iter().map(|u| u + n)).collect();
        let s = self.s.iter().copied().chain(other.s.iter().map(|u| u + n)).collect();
        let t = self.t.iter().copied().chain(other.t.iter().map(|u| u + n)).collect();
        let inverse = self.inverse.iter().copied().chain(other.inverse.iter().map(|u| u + n)).collect();
        let mut compose = vec![None; total * total];
        for a in 0..total {
            for b in 0..total {
                compose[a * total + b] = match (a < n, b < n) {
                    (true, true) => self.compose(a, b),
                    (false, false) => other.compose(a - n, b - n).map(|c| c + n),
                    _ => None,
                };
            }
        }
        Self::new(labels, units, s, t, compose, inverse).expect("disjoint union")
    }

    pub fn to_json(&self) -> GroupoidJson {
        let n = self.arrows();
        let l = |a: usize| self.labels[a].clone();
        let mut compose = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.compose(a, b) {
                    compose.push([l(a), l(b), l(c)]);
                }
            }
        }
        GroupoidJson {
            arrows: self.labels.clone(),
            units: self.units.iter().map(|&u| l(u)).collect(),
            s: (0..n).map(|a| (l(a), l(self.s[a]))).collect(),
            t: (0..n).map(|a| (l(a), l(self.t[a]))).collect(),
            compose,
            inverse: (0..n).map(|a| (l(a), l(self.inverse[a]))).collect(),
        }
    }

    pub fn from_json(j: &GroupoidJson) -> Result<Self> {
        let n = j.arrows.len();
        let idx: HashMap<&str, usize> = j.arrows.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if idx.len() != n {
            return Err(Error::Invalid("duplicate arrow labels".into()));
        }
        let look = |l: &str, field: &str| -> Result<usize> { idx.get(l).copied().ok_or_else(|| Error::Invalid(format!("{field}: unknown arrow {l:?}"))) };
        let map = |m: &BTreeMap<String, String>, field: &str| -> Result<Vec<usize>> {
            j.arrows
                .iter()
                .map(|a| m.get(a).ok_or_else(|| Error::Invalid(format!("{field}: missing entry for {a:?}"))).and_then(|v| look(v, field)))
                .collect()
        };
        let units = j.units.iter().map(|u| look(u, "units")).collect::<Result<Vec<_>>>()?;
        let s = map(&j.s, "s")?;
        let t = map(&j.t, "t")?;
        let inverse = map(&j.inverse, "inverse")?;
        let mut compose = vec![None; n * n];
        for [a, b, c] in &j.compose {
            let (a, b, c) = (look(a, "compose")?, look(b, "compose")?, look(c, "compose")?);
            compose[a * n + b] = Some(c);
        }
        Self::new(j.arrows.clone(), units, s, t, compose, inverse)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let j: GroupoidJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("groupoid JSON: {e}")))?;
        Self::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_p2() {
        let g = FiniteGroupoid::pair(2);
        assert_eq!(g.arrows(), 4);
        assert_eq!(g.labels[2], "(2,1)");
        // (2,1) has target 2 and source 1
        assert_eq!(g.target_index(2), 1);
        assert_eq!(g.source_index(2), 0);
        assert_eq!(g.compose(1, 2), Some(0));
        assert_eq!(g.compose(2, 2), None);
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroupoid::pair(2).disjoint_union(&FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)));
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(FiniteGroupoid::parse(&text).unwrap(), g);
    }

    #[test]
    fn broken_inverse_rejected() {
        let mut j = FiniteGroupoid::pair(2).to_json();
        j.inverse.insert("(1,2)".into(), "(1,2)".into());
        let err = FiniteGroupoid::from_json(&j).unwrap_err();
        assert_eq!(err.label(), Some("groupoid-axioms"));
    }

    #[test]
    fn s3_center_is_trivial() {
        let g = FiniteGroup::s3();
        assert_eq!((0..6).filter(|&a| g.is_central(a)).count(), 1);
        assert!(FiniteGroup::cyclic(3).is_central(1));
    }
}
