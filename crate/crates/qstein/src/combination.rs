//! Finitely supported linear combinations over an ordered basis.
//!
//! A [`Combination`] never stores a zero coefficient, so structural equality
//! is equality of vectors. Tensors are combinations over pairs of indices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Combination<B: Ord> {
    terms: BTreeMap<B, GaussianRational>,
}

pub type Tensor<B> = Combination<(B, B)>;

impl<B: Ord> Default for Combination<B> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> Combination<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, GaussianRational::from_int(1))
    }

    pub fn term(b: B, c: GaussianRational) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn add_term(&mut self, b: B, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn coeff(&self, b: &B) -> GaussianRational {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
    }

    /// Re-index every term, summing coefficients that collide.
    pub fn map_index<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> Combination<C> {
        self.iter().map(|(b, x)| (f(b), x.clone())).collect()
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(b, _)| keep(b)).map(|(b, x)| (b.clone(), x.clone())).collect() }
    }

    /// Linear extension of a basis-level map.
    pub fn flat_map<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> Combination<C>) -> Combination<C> {
        let mut out = Combination::zero();
        for (b, x) in self.iter() {
            out.add_scaled(&f(b), x);
        }
        out
    }

    /// Linear extension of a basis-level functional.
    pub fn fold_linear(&self, mut f: impl FnMut(&B) -> GaussianRational) -> GaussianRational {
        self.iter().map(|(b, x)| x * &f(b)).sum()
    }
}

/// The elementary tensor `a ⊗ b`.
pub fn tensor<A: Ord + Clone, B: Ord + Clone>(a: &Combination<A>, b: &Combination<B>) -> Combination<(A, B)> {
    let mut out = Combination::zero();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.add_term((i.clone(), j.clone()), x * y);
        }
    }
    out
}

impl<B: Ord + Clone> FromIterator<(B, GaussianRational)> for Combination<B> {
    fn from_iter<I: IntoIterator<Item = (B, GaussianRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + Clone> Add<&Combination<B>> for &Combination<B> {
    type Output = Combination<B>;
    fn add(self, o: &Combination<B>) -> Combination<B> {
        let mut out = self.clone();
        for (b, x) in o.iter() {
            out.add_term(b.clone(), x.clone());
        }
        out
    }
}

impl<B: Ord + Clone> Sub<&Combination<B>> for &Combination<B> {
    type Output = Combination<B>;
    fn sub(self, o: &Combination<B>) -> Combination<B> {
        let mut out = self.clone();
        for (b, x) in o.iter() {
            out.add_term(b.clone(), -x);
        }
        out
    }
}

impl<B: Ord + Clone> Add for Combination<B> {
    type Output = Combination<B>;
    fn add(self, o: Combination<B>) -> Combination<B> {
        &self + &o
    }
}

impl<B: Ord + Clone> Sub for Combination<B> {
    type Output = Combination<B>;
    fn sub(self, o: Combination<B>) -> Combination<B> {
        &self - &o
    }
}

impl<B: Ord + Clone> Neg for &Combination<B> {
    type Output = Combination<B>;
    fn neg(self) -> Combination<B> {
        self.scale(&GaussianRational::from_int(-1))
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for Combination<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, x)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({x})·{b:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let a: Combination<i64> = [(1, 2.into()), (2, 3.into())].into_iter().collect();
        let b: Combination<i64> = [(1, 2.into())].into_iter().collect();
        let d = &a - &b;
        assert_eq!(d, Combination::term(2, 3.into()));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn map_index_merges_collisions() {
        let a: Combination<i64> = [(1, 1.into()), (-1, 1.into())].into_iter().collect();
        assert_eq!(a.map_index(|n| n.abs()), Combination::term(1, 2.into()));
    }

    #[test]
    fn tensor_is_bilinear() {
        let a: Combination<i64> = [(0, 1.into()), (1, 2.into())].into_iter().collect();
        let b = Combination::term(5i64, 3.into());
        let t = tensor(&a, &b);
        assert_eq!(t.coeff(&(1, 5)), 6.into());
        assert_eq!(t.len(), 2);
    }
}
