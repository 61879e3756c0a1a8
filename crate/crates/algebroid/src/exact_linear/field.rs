use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::Extension;

/// Exact scalar field used by every construction in the crate.
///
/// Implementors must be fields of characteristic zero containing the
/// rationals, with a conjugation that is an involutive automorphism.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn conj(&self) -> Self;

    /// Fixed by conjugation.
    fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Sign of a real element; `None` when the element is not real.
    fn sign(&self) -> Option<Ordering>;

    fn is_positive(&self) -> bool {
        matches!(self.sign(), Some(Ordering::Greater | Ordering::Equal))
    }

    /// Square root inside the field generated by `ext`, if it exists there.
    fn sqrt_in(&self, ext: &Extension) -> Option<Self>;

    fn to_rational(&self) -> Option<BigRational>;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
}

impl Field for BigRational {
    fn from_rational(q: BigRational) -> Self {
        q
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_real(&self) -> bool {
        true
    }

    fn sign(&self) -> Option<Ordering> {
        Some(if self.is_zero() {
            Ordering::Equal
        } else if Signed::is_positive(self) {
            Ordering::Greater
        } else {
            Ordering::Less
        })
    }

    fn sqrt_in(&self, ext: &Extension) -> Option<Self> {
        let (k, m) = super::scalar::split_square(self)?;
        if m == 1 && ext.contains_root(1) {
            Some(k)
        } else {
            None
        }
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_round_trip() {
        for s in ["3/4", "-7", "0", "12/5"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("0.5").is_none());
    }

    #[test]
    fn rational_sqrt_needs_square() {
        let ext = Extension::rational();
        assert_eq!(
            BigRational::from_ratio(9, 4).sqrt_in(&ext),
            Some(BigRational::from_ratio(3, 2))
        );
        assert_eq!(BigRational::from_i64(2).sqrt_in(&ext), None);
        assert_eq!(BigRational::from_i64(-4).sqrt_in(&ext), None);
    }
}
