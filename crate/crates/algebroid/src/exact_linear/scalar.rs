use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{format_rational, Field};

/// The square roots adjoined to Q(i) for a session.
///
/// Each entry is a square-free integer greater than one; `√m` is available
/// exactly when `m` is a product of entries modulo squares.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Extension {
    roots: Vec<u64>,
    // GF(2) echelon basis over primes, keyed by leading prime
    basis: BTreeMap<u64, BTreeSet<u64>>,
}

impl Extension {
    pub fn rational() -> Self {
        Self::default()
    }

    /// Adjoins `√d` for each listed `d`. Non-square-free inputs are reduced;
    /// `None` if some `d` is not a positive integer.
    pub fn new(ds: &[u64]) -> Option<Self> {
        let mut ext = Self::default();
        for &d in ds {
            ext.adjoin(d)?;
        }
        Some(ext)
    }

    pub fn adjoin(&mut self, d: u64) -> Option<()> {
        if d == 0 {
            return None;
        }
        let (_, m) = squarefree_u64(d)?;
        if m == 1 || self.contains_root(m) {
            return Some(());
        }
        let v = reduce(&self.basis, prime_set(m));
        if let Some(&lead) = v.iter().next_back() {
            self.basis.insert(lead, v);
        }
        self.roots.push(m);
        self.roots.sort_unstable();
        Some(())
    }

    pub fn roots(&self) -> &[u64] {
        &self.roots
    }

    /// Whether `√m` lies in the field, for square-free `m`.
    pub fn contains_root(&self, m: u64) -> bool {
        reduce(&self.basis, prime_set(m)).is_empty()
    }
}

fn reduce(basis: &BTreeMap<u64, BTreeSet<u64>>, mut v: BTreeSet<u64>) -> BTreeSet<u64> {
    let mut cursor = u64::MAX;
    while let Some(p) = v.range(..=cursor).next_back().copied() {
        if let Some(b) = basis.get(&p) {
            v = v.symmetric_difference(b).copied().collect();
        }
        if p == 0 {
            break;
        }
        cursor = p - 1;
    }
    v
}

fn prime_set(mut m: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut p = 2;
    while p * p <= m {
        while m % p == 0 {
            m /= p;
            out.insert(p);
        }
        p += 1;
    }
    if m > 1 {
        out.insert(m);
    }
    out
}

fn primes_of(m: u64) -> Vec<u64> {
    prime_set(m).into_iter().collect()
}

/// Writes `n = k²·m` with `m` square-free.
fn squarefree_u64(mut n: u64) -> Option<(u64, u64)> {
    if n == 0 {
        return None;
    }
    let mut k = 1u64;
    let mut m = 1u64;
    let mut p = 2u64;
    while p * p <= n && p < 1_000_000 {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += 1;
    }
    if n > 1 {
        let r = n.sqrt();
        if r * r == n {
            k *= r;
        } else if n >= 1_000_000_000_000 {
            return None;
        } else {
            m *= n;
        }
    }
    Some((k, m))
}

/// Writes a positive rational as `k²·m` with rational `k` and square-free
/// integer `m`; `None` for non-positive input or oversized radicands.
pub(crate) fn split_square(q: &BigRational) -> Option<(BigRational, u64)> {
    if !Signed::is_positive(q) {
        return if q.is_zero() {
            Some((BigRational::zero(), 1))
        } else {
            None
        };
    }
    // q = num/den = num·den / den²
    let prod = (q.numer() * q.denom()).to_u64()?;
    let (k, m) = squarefree_u64(prod)?;
    Some((
        BigRational::new(BigInt::from(k), q.denom().clone()),
        m,
    ))
}

/// Exact element of Q(i)[√d₁, …]: a finite sum of `(re + i·im)·√m` over
/// square-free radicands `m`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<Term>,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Term {
    rad: u64,
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn rational(q: BigRational) -> Self {
        Self::complex(q, BigRational::zero())
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Self::term(1, re, im)
    }

    pub fn i() -> Self {
        Self::complex(BigRational::zero(), BigRational::one())
    }

    /// `√m` for a square-free `m`.
    pub fn sqrt_of(m: u64) -> Self {
        let (k, r) = squarefree_u64(m).expect("positive radicand");
        Self::term(r, BigRational::from_integer(k.into()), BigRational::zero())
    }

    fn term(rad: u64, re: BigRational, im: BigRational) -> Self {
        if re.is_zero() && im.is_zero() {
            Self::default()
        } else {
            Self {
                terms: vec![Term { rad, re, im }],
            }
        }
    }

    fn from_map(map: BTreeMap<u64, (BigRational, BigRational)>) -> Self {
        Self {
            terms: map
                .into_iter()
                .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
                .map(|(rad, (re, im))| Term { rad, re, im })
                .collect(),
        }
    }

    /// Square-free radicands with non-zero coefficient, in increasing order.
    pub fn radicands(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.rad).collect()
    }

    /// `(radicand, re, im)` triples.
    pub fn parts(&self) -> impl Iterator<Item = (u64, &BigRational, &BigRational)> {
        self.terms.iter().map(|t| (t.rad, &t.re, &t.im))
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (u64, BigRational, BigRational)>) -> Option<Self> {
        let mut acc = Self::zero();
        for (d, re, im) in parts {
            let (k, m) = squarefree_u64(d)?;
            let k = BigRational::from_integer(k.into());
            acc = acc + Self::term(m, re * &k, im * &k);
        }
        Some(acc)
    }

    fn galois_flip(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    if t.rad % p == 0 {
                        Term {
                            rad: t.rad,
                            re: -t.re.clone(),
                            im: -t.im.clone(),
                        }
                    } else {
                        t.clone()
                    }
                })
                .collect(),
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.terms.len() == 1 && other.terms.len() == 1 && self.terms[0].rad == 1 && other.terms[0].rad == 1 {
            let (a, b) = (&self.terms[0], &other.terms[0]);
            if a.im.is_zero() && b.im.is_zero() {
                return Self::term(1, &a.re * &b.re, BigRational::zero());
            }
        }
        let mut map: BTreeMap<u64, (BigRational, BigRational)> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let g = a.rad.gcd(&b.rad);
                let rad = (a.rad / g) * (b.rad / g);
                let g = BigRational::from_integer(g.into());
                let re = (&a.re * &b.re - &a.im * &b.im) * &g;
                let im = (&a.re * &b.im + &a.im * &b.re) * &g;
                let e = map.entry(rad).or_insert_with(|| (BigRational::zero(), BigRational::zero()));
                e.0 += re;
                e.1 += im;
            }
        }
        Self::from_map(map)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let flip = |t: &Term| {
            if negate {
                Term {
                    rad: t.rad,
                    re: -t.re.clone(),
                    im: -t.im.clone(),
                }
            } else {
                t.clone()
            }
        };
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.rad.cmp(&b.rad),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(flip(&other.terms[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let (a, b) = (&self.terms[i], &other.terms[j]);
                    let (re, im) = if negate {
                        (&a.re - &b.re, &a.im - &b.im)
                    } else {
                        (&a.re + &b.re, &a.im + &b.im)
                    };
                    if !(re.is_zero() && im.is_zero()) {
                        out.push(Term { rad: a.rad, re, im });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    fn inverse(&self) -> Option<Self> {
        if self.terms.is_empty() {
            return None;
        }
        let mut primes = BTreeSet::new();
        for t in &self.terms {
            primes.extend(primes_of(t.rad));
        }
        let mut z = self.clone();
        let mut acc = Self::one();
        for p in primes {
            let zc = z.galois_flip(p);
            acc = acc.mul_impl(&zc);
            z = z.mul_impl(&zc);
        }
        debug_assert!(z.terms.len() == 1 && z.terms[0].rad == 1);
        let t = &z.terms[0];
        let norm = &t.re * &t.re + &t.im * &t.im;
        let inv = Self::complex(&t.re / &norm, -(&t.im / &norm));
        Some(acc.mul_impl(&inv))
    }

    fn real_sign(&self) -> Ordering {
        match self.terms.as_slice() {
            [] => return Ordering::Equal,
            [t] => return if Signed::is_positive(&t.re) { Ordering::Greater } else { Ordering::Less },
            _ => {}
        }
        // refine rational enclosures of each √m until the sum's sign is clear
        let mut bits = 16u32;
        loop {
            let scale = BigInt::one() << bits;
            let denom = BigRational::from_integer(scale.clone());
            let (mut lo, mut hi) = (BigRational::zero(), BigRational::zero());
            for t in &self.terms {
                let (rl, rh) = if t.rad == 1 {
                    (BigRational::one(), BigRational::one())
                } else {
                    let s = (BigInt::from(t.rad) * &scale * &scale).sqrt();
                    (
                        BigRational::from_integer(s.clone()) / &denom,
                        BigRational::from_integer(s + 1) / &denom,
                    )
                };
                if Signed::is_positive(&t.re) {
                    lo += &t.re * rl;
                    hi += &t.re * rh;
                } else {
                    lo += &t.re * rh;
                    hi += &t.re * rl;
                }
            }
            if Signed::is_positive(&lo) {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let coef = match (t.re.is_zero(), t.im.is_zero()) {
                    (false, true) => format_rational(&t.re),
                    (true, false) => format!("{}i", format_rational(&t.im)),
                    _ => format!("({}+{}i)", format_rational(&t.re), format_rational(&t.im)),
                };
                if t.rad == 1 {
                    coef
                } else {
                    format!("{}*sqrt({})", coef, t.rad)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_impl(&rhs, false)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.add_impl(&rhs, true)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_impl(&rhs)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.mul_impl(&rhs.inverse().expect("division by zero"))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::zero().add_impl(&self, true)
    }
}

impl Field for Scalar {
    fn from_rational(q: BigRational) -> Self {
        Self::rational(q)
    }

    fn inv(&self) -> Option<Self> {
        self.inverse()
    }

    fn conj(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    rad: t.rad,
                    re: t.re.clone(),
                    im: -t.im.clone(),
                })
                .collect(),
        }
    }

    fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.im.is_zero())
    }

    fn sign(&self) -> Option<Ordering> {
        if self.is_real() {
            Some(self.real_sign())
        } else {
            None
        }
    }

    fn sqrt_in(&self, ext: &Extension) -> Option<Self> {
        let q = self.to_rational()?;
        let (k, m) = split_square(&q.abs())?;
        if !ext.contains_root(m) {
            return None;
        }
        let root = Self::term(m, k, BigRational::zero());
        Some(if q.is_negative() { root * Self::i() } else { root })
    }

    fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [t] if t.rad == 1 && t.im.is_zero() => Some(t.re.clone()),
            _ => None,
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_impl(other)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.add_impl(other, false)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_impl(other, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::from_ratio(p, d)
    }

    #[test]
    fn sqrt_products_reduce() {
        let s2 = Scalar::sqrt_of(2);
        let s3 = Scalar::sqrt_of(3);
        assert_eq!(s2.clone() * s2.clone(), q(2, 1));
        assert_eq!(s2.clone() * s3.clone(), Scalar::sqrt_of(6));
        assert_eq!(Scalar::sqrt_of(6) * s3, q(3, 1) * s2);
        assert_eq!(Scalar::sqrt_of(8), q(2, 1) * Scalar::sqrt_of(2));
    }

    #[test]
    fn inverse_in_tower() {
        let z = q(1, 1) + Scalar::sqrt_of(2) + Scalar::i() * Scalar::sqrt_of(3);
        let w = z.inv().unwrap();
        assert_eq!(z * w, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn conjugation_fixes_roots() {
        let z = q(2, 3) * Scalar::sqrt_of(5) + Scalar::i();
        assert_eq!(z.conj().conj(), z);
        assert_eq!(Scalar::sqrt_of(5).conj(), Scalar::sqrt_of(5));
        assert!(!z.is_real());
        assert_eq!(z.sign(), None);
    }

    #[test]
    fn sign_by_refinement() {
        // √2 + √3 − √10 ≈ −0.016
        let z = Scalar::sqrt_of(2) + Scalar::sqrt_of(3) - Scalar::sqrt_of(10);
        assert_eq!(z.sign(), Some(Ordering::Less));
        let w = Scalar::sqrt_of(2) - q(141, 100);
        assert_eq!(w.sign(), Some(Ordering::Greater));
        assert!(!z.is_positive());
        assert!(Scalar::zero().is_positive());
    }

    #[test]
    fn sqrt_respects_extension() {
        let plain = Extension::rational();
        let with2 = Extension::new(&[2]).unwrap();
        assert_eq!(q(2, 1).sqrt_in(&plain), None);
        assert_eq!(q(2, 1).sqrt_in(&with2), Some(Scalar::sqrt_of(2)));
        assert_eq!(q(1, 2).sqrt_in(&with2), Some(q(1, 2) * Scalar::sqrt_of(2)));
        assert_eq!(q(4, 1).sqrt_in(&plain), Some(q(2, 1)));
        assert_eq!(q(-1, 1).sqrt_in(&plain), Some(Scalar::i()));
        let e = Extension::new(&[2, 3]).unwrap();
        assert!(e.contains_root(6));
        assert!(!e.contains_root(5));
        assert_eq!(q(6, 1).sqrt_in(&e), Some(Scalar::sqrt_of(6)));
    }

    #[test]
    fn extension_dedups_dependent_roots() {
        let e = Extension::new(&[2, 3, 6, 8]).unwrap();
        assert_eq!(e.roots(), &[2, 3]);
    }
}
