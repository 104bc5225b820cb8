//! Colours as elements of the Klein four-group Z2 x Z2.
//!
//! `1 = (0,1)`, `2 = (1,0)`, `3 = (1,1)` and `0` is the identity, which only
//! shows up as a flow value. With this encoding group addition is bitwise XOR.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Colour(u8);

impl Colour {
    pub const ZERO: Colour = Colour(0);
    pub const ONE: Colour = Colour(1);
    pub const TWO: Colour = Colour(2);
    pub const THREE: Colour = Colour(3);

    /// The three proper colours in search order.
    pub const NONZERO: [Colour; 3] = [Colour::ONE, Colour::TWO, Colour::THREE];

    pub fn new(value: u8) -> Option<Colour> {
        (value < 4).then_some(Colour(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Bit used for this colour in a domain mask.
    pub(crate) fn mask(self) -> u8 {
        1 << self.0
    }
}

impl Add for Colour {
    type Output = Colour;
    fn add(self, rhs: Colour) -> Colour {
        Colour(self.0 ^ rhs.0)
    }
}

impl AddAssign for Colour {
    fn add_assign(&mut self, rhs: Colour) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Colour {
    fn sum<I: Iterator<Item = Colour>>(iter: I) -> Colour {
        iter.fold(Colour::ZERO, |a, b| a + b)
    }
}

impl TryFrom<u8> for Colour {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, Self::Error> {
        Colour::new(v).ok_or_else(|| format!("colour value {v} out of range 0..=3"))
    }
}

impl From<Colour> for u8 {
    fn from(c: Colour) -> u8 {
        c.0
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A permutation of the nonzero colours, stored as the images of 1, 2, 3.
/// Every such permutation is a group automorphism of Z2 x Z2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColourPermutation([Colour; 3]);

impl ColourPermutation {
    pub fn identity() -> Self {
        ColourPermutation(Colour::NONZERO)
    }

    /// All six permutations in lexicographic order of their image lists.
    pub fn all() -> [ColourPermutation; 6] {
        let [a, b, c] = Colour::NONZERO;
        [
            ColourPermutation([a, b, c]),
            ColourPermutation([a, c, b]),
            ColourPermutation([b, a, c]),
            ColourPermutation([b, c, a]),
            ColourPermutation([c, a, b]),
            ColourPermutation([c, b, a]),
        ]
    }

    /// The permutation sending 1, 2, 3 to the given images, if they are the
    /// three nonzero colours.
    pub fn from_images(images: [Colour; 3]) -> Option<Self> {
        let mut sorted = images;
        sorted.sort();
        (sorted == Colour::NONZERO).then_some(ColourPermutation(images))
    }

    pub fn apply(&self, c: Colour) -> Colour {
        if c.is_zero() {
            c
        } else {
            self.0[c.0 as usize - 1]
        }
    }
}

/// Ordered boundary colours of a multipole, one entry per free end in
/// connector order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryVector(pub Vec<Colour>);

impl BoundaryVector {
    pub fn from_values(values: &[u8]) -> Option<Self> {
        values
            .iter()
            .map(|&v| Colour::new(v).filter(|c| !c.is_zero()))
            .collect::<Option<Vec<_>>>()
            .map(BoundaryVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Colour {
        self.0.iter().copied().sum()
    }

    /// Sum over the entries `range` (typically one connector).
    pub fn sum_range(&self, range: std::ops::Range<usize>) -> Colour {
        self.0[range].iter().copied().sum()
    }

    pub fn permuted(&self, p: &ColourPermutation) -> BoundaryVector {
        BoundaryVector(self.0.iter().map(|&c| p.apply(c)).collect())
    }

    /// Number of entries carrying each of the colours 1, 2, 3.
    pub fn class_counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for c in &self.0 {
            if !c.is_zero() {
                counts[c.0 as usize - 1] += 1;
            }
        }
        counts
    }

    pub fn values(&self) -> Vec<u8> {
        self.0.iter().map(|c| c.0).collect()
    }
}

impl fmt::Display for BoundaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parity Lemma check: the boundary colours of a coloured multipole sum to 0.
pub fn parity_check(b: &BoundaryVector) -> bool {
    b.sum().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[u8]) -> BoundaryVector {
        BoundaryVector::from_values(v).unwrap()
    }

    #[test]
    fn klein_addition() {
        for a in 0..4 {
            let a = Colour::new(a).unwrap();
            assert_eq!(a + a, Colour::ZERO);
            assert_eq!(a + Colour::ZERO, a);
        }
        assert_eq!(Colour::ONE + Colour::TWO, Colour::THREE);
    }

    #[test]
    fn parity_examples() {
        assert!(parity_check(&bv(&[1, 2, 3])));
        assert!(parity_check(&bv(&[1, 1])));
        assert!(!parity_check(&bv(&[1, 2])));
    }

    #[test]
    fn permutations_are_automorphisms() {
        for p in ColourPermutation::all() {
            for a in Colour::NONZERO {
                for b in Colour::NONZERO {
                    assert_eq!(p.apply(a + b), p.apply(a) + p.apply(b));
                }
            }
        }
    }

    #[test]
    fn zero_rejected_in_boundary() {
        assert!(BoundaryVector::from_values(&[1, 0]).is_none());
    }
}
