use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// An integer vector of Z^E taken modulo the all-ones vector, stored with coordinate 0
/// set to zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", from = "Vec<i64>")]
pub struct QuotientVector(Vec<i64>);

impl From<Vec<i64>> for QuotientVector {
    fn from(v: Vec<i64>) -> Self {
        QuotientVector::new(v)
    }
}

impl From<QuotientVector> for Vec<i64> {
    fn from(v: QuotientVector) -> Self {
        v.0
    }
}

impl QuotientVector {
    pub fn new(mut coords: Vec<i64>) -> Self {
        if let Some(&c) = coords.first() {
            for x in coords.iter_mut() {
                *x -= c;
            }
        }
        QuotientVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        QuotientVector(vec![0; n])
    }

    /// v_S, the indicator vector of `s`.
    pub fn indicator(n: usize, s: ElementSet) -> Self {
        QuotientVector::new((0..n).map(|i| s.contains(i) as i64).collect())
    }

    /// Clears denominators of a rational vector; positive rescaling changes the point
    /// but not the ray it spans.
    pub fn from_rationals(v: &[BigRational]) -> Result<Self> {
        let lcm = v
            .iter()
            .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        v.iter()
            .map(|x| {
                (x.numer() * (&lcm / x.denom()))
                    .to_i64()
                    .ok_or_else(|| Error::InvalidArgument("coordinate overflows i64".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(QuotientVector::new)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Coordinates in the basis e_1, .., e_{n-1} of Z^E / Z𝟙.
    pub fn quotient_coords(&self) -> &[i64] {
        &self.0[1.min(self.0.len())..]
    }

    pub fn from_quotient_coords(q: &[i64]) -> Self {
        let mut v = Vec::with_capacity(q.len() + 1);
        v.push(0);
        v.extend_from_slice(q);
        QuotientVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Divides by the gcd of the coordinates.
    pub fn primitive(&self) -> Self {
        let g = self.0.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g <= 1 {
            return self.clone();
        }
        QuotientVector(self.0.iter().map(|x| x / g).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        QuotientVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: i64) -> Self {
        QuotientVector(self.0.iter().map(|a| a * c).collect())
    }

    /// If the class contains a 0/1 vector, its support. The class of v_S also contains
    /// -v_{E∖S}; the returned set is the one whose indicator lies in the class.
    pub fn as_indicator(&self) -> Option<ElementSet> {
        let min = *self.0.iter().min()?;
        let mut s = ElementSet::empty();
        for (i, &x) in self.0.iter().enumerate() {
            match x - min {
                0 => {}
                1 => s.insert(i),
                _ => return None,
            }
        }
        Some(s)
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.0
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    }
}

impl fmt::Debug for QuotientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form_and_indicator() {
        let v = QuotientVector::new(vec![3, 4, 3]);
        assert_eq!(v.coords(), &[0, 1, 0]);
        assert_eq!(v.as_indicator(), Some(ElementSet::singleton(1)));
        let w = QuotientVector::indicator(3, ElementSet::from_iter([0, 2]));
        assert_eq!(w.coords(), &[0, -1, 0]);
        assert_eq!(w.as_indicator(), Some(ElementSet::from_iter([0, 2])));
        assert_eq!(QuotientVector::new(vec![0, 2, 4]).primitive().coords(), &[0, 1, 2]);
        assert_eq!(QuotientVector::new(vec![0, 2, 5]).as_indicator(), None);
    }

    #[test]
    fn rationals_clear_denominators() {
        let v = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
            BigRational::from_integer(0.into()),
        ];
        let q = QuotientVector::from_rationals(&v).unwrap();
        assert_eq!(q.coords(), &[0, -1, -3]);
    }

    proptest! {
        #[test]
        fn constant_shifts_are_invisible(v in proptest::collection::vec(-50i64..50, 1..8), c in -20i64..20) {
            let shifted: Vec<i64> = v.iter().map(|x| x + c).collect();
            prop_assert_eq!(QuotientVector::new(v), QuotientVector::new(shifted));
        }
    }
}
