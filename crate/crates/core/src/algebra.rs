//! The interface every target dg algebra implements.
//!
//! Morphisms out of a free algebra only need element arithmetic in the target,
//! so the same morphism and homotopy code runs against the ground field, free
//! algebras, and their interval extensions `B⊗Λ(t,dt)`.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::graded::Scalar;

/// Degree information for a (possibly inhomogeneous) element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(i32),
    Mixed,
}

impl Degree {
    pub fn merge(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Zero, d) | (d, Degree::Zero) => d,
            (Degree::Homogeneous(a), Degree::Homogeneous(b)) if a == b => Degree::Homogeneous(a),
            _ => Degree::Mixed,
        }
    }

    /// Whether an element of this degree may be the image of something of
    /// degree `expected` (zero is allowed everywhere).
    pub fn admits(self, expected: i32) -> bool {
        matches!(self, Degree::Zero) || self == Degree::Homogeneous(expected)
    }
}

/// A cohomologically graded, graded-commutative dg algebra over the rationals.
pub trait DgAlgebra: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, x: &Self::Elem, c: &Scalar) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// The differential, of degree +1.
    fn d(&self, x: &Self::Elem) -> Self::Elem;
    /// `x ↦ (-1)^{|x|} x`, applied to each homogeneous component.
    fn parity_twist(&self, x: &Self::Elem) -> Self::Elem;
    fn degree(&self, x: &Self::Elem) -> Degree;
    /// Human-readable rendering.
    fn render(&self, x: &Self::Elem) -> String;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        self.scale(x, &-Scalar::one())
    }

    fn from_scalar(&self, c: &Scalar) -> Self::Elem {
        self.scale(&self.one(), c)
    }

    fn pow(&self, x: &Self::Elem, n: u32) -> Self::Elem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The ground field, concentrated in degree zero with zero differential.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Ground;

impl DgAlgebra for Ground {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    fn one(&self) -> Scalar {
        Scalar::one()
    }

    fn is_zero(&self, x: &Scalar) -> bool {
        x.is_zero()
    }

    fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x + y
    }

    fn scale(&self, x: &Scalar, c: &Scalar) -> Scalar {
        x * c
    }

    fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x * y
    }

    fn d(&self, _x: &Scalar) -> Scalar {
        Scalar::zero()
    }

    fn parity_twist(&self, x: &Scalar) -> Scalar {
        x.clone()
    }

    fn degree(&self, x: &Scalar) -> Degree {
        if x.is_zero() {
            Degree::Zero
        } else {
            Degree::Homogeneous(0)
        }
    }

    fn render(&self, x: &Scalar) -> String {
        crate::graded::format_scalar(x)
    }
}
