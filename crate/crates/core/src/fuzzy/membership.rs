use crate::scalar::Scalar;

use super::FuzzyError;

/// Where the flat part of a membership function sits, if anywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Plain triangle `(a, b, c)`.
    Triangle,
    /// Degree 1 on `[0, b]`, falling to 0 at `c`. `a` is pinned to 0.
    LeftShoulder,
    /// Rising from `a`, degree 1 on `[b, 1]`. `c` is pinned to 1.
    RightShoulder,
}

/// Triangular membership function on the unit interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFunction<T> {
    a: T,
    b: T,
    c: T,
    shape: Shape,
}

impl<T: Scalar> MembershipFunction<T> {
    pub fn new(a: T, b: T, c: T, shape: Shape) -> Result<Self, FuzzyError> {
        let ordered = a <= b && b <= c;
        if !(a.in_unit() && b.in_unit() && c.in_unit()) || !ordered {
            return Err(FuzzyError::InvalidMembership {
                a: a.as_f64(),
                b: b.as_f64(),
                c: c.as_f64(),
            });
        }
        match shape {
            Shape::LeftShoulder if a != T::zero() => Err(FuzzyError::InvalidMembership {
                a: a.as_f64(),
                b: b.as_f64(),
                c: c.as_f64(),
            }),
            Shape::RightShoulder if c != T::one() => Err(FuzzyError::InvalidMembership {
                a: a.as_f64(),
                b: b.as_f64(),
                c: c.as_f64(),
            }),
            _ => Ok(Self { a, b, c, shape }),
        }
    }

    pub fn triangle(a: T, b: T, c: T) -> Result<Self, FuzzyError> {
        Self::new(a, b, c, Shape::Triangle)
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn peak(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Membership degree of `x`. Errors when `x` is outside `[0, 1]`.
    pub fn membership(&self, x: T) -> Result<T, FuzzyError> {
        if !x.in_unit() {
            return Err(FuzzyError::Domain(x.as_f64()));
        }
        Ok(self.degree(x))
    }

    /// Unchecked evaluation used on hot paths where `x` is already known to
    /// be in the unit interval.
    #[inline]
    pub(crate) fn degree(&self, x: T) -> T {
        let (a, b, c) = (self.a, self.b, self.c);
        let zero = T::zero();
        let one = T::one();
        match self.shape {
            Shape::LeftShoulder if x <= b => return one,
            Shape::RightShoulder if x >= b => return one,
            _ => {}
        }
        if x == b {
            one
        } else if x <= a || x >= c {
            zero
        } else if x < b {
            (x - a) / (b - a)
        } else {
            (c - x) / (c - b)
        }
    }

    /// Closed support `[a, c]` (the region with nonzero degree, up to its
    /// endpoints).
    pub fn support(&self) -> (T, T) {
        (self.a, self.c)
    }
}
