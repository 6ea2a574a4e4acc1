//! Torus arithmetic.

use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Torus {
    pub width: f64,
    pub height: f64,
}

impl Torus {
    pub fn new(width: f64, height: f64) -> Self {
        Self { width, height }
    }

    pub fn wrap(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (wrap_coord(x, self.width), wrap_coord(y, self.height))
    }

    /// Shortest displacement from `from` to `to`.
    pub fn delta(&self, from: (f64, f64), to: (f64, f64)) -> (f64, f64) {
        (
            shortest(to.0 - from.0, self.width),
            shortest(to.1 - from.1, self.height),
        )
    }

    pub fn distance(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        let (dx, dy) = self.delta(a, b);
        dx.hypot(dy)
    }
}

fn wrap_coord(v: f64, size: f64) -> f64 {
    let w = v.rem_euclid(size);
    // rem_euclid can return `size` itself for tiny negative inputs.
    if w >= size {
        0.0
    } else {
        w
    }
}

fn shortest(d: f64, size: f64) -> f64 {
    let d = d.rem_euclid(size);
    if d > size / 2.0 {
        d - size
    } else {
        d
    }
}

/// Angle normalised to `(-PI, PI]`.
pub fn normalize_angle(a: f64) -> f64 {
    let a = a.rem_euclid(TAU);
    if a > PI {
        a - TAU
    } else {
        a
    }
}
