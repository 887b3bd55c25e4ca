//! Plane-based Euclidean PGA in three dimensions, `Cl(3,0,1)`.
//!
//! A vector `v0·e0 + v1·e1 + v2·e2 + v3·e3` is the plane
//! `v0 + v1·x + v2·y + v3·z = 0`. Points are not vectors here: a point `P`
//! is encoded by the complement `V_P` of planes through it.

use std::fmt;
use std::sync::Arc;

use crate::clifford::{Algebra, Multivector};
use crate::error::{GaError, Result};
use crate::quadratic_space::{Complement, QuadraticForm, Vector};
use crate::scalar::Scalar;

/// Index of the degenerate generator in `Cl(3,0,1)`.
pub const E0: usize = 0;

#[derive(Clone, Debug, PartialEq)]
pub struct Plane<S: Scalar> {
    v: Vector<S>,
}

impl<S: Scalar> Plane<S> {
    /// Multiples of `e0` are not planes.
    pub fn new(v: Vector<S>) -> Result<Self> {
        if v.dim() != 4 {
            return Err(GaError::DimensionMismatch { expected: 4, got: v.dim() });
        }
        if v.0[1..].iter().all(|c| c.is_negligible()) {
            return Err(GaError::NotAPlane);
        }
        Ok(Self { v })
    }

    pub fn from_coeffs(v0: S, v1: S, v2: S, v3: S) -> Result<Self> {
        Self::new(Vector(vec![v0, v1, v2, v3]))
    }

    pub fn from_multivector(x: &Multivector<S>) -> Result<Self> {
        if x.algebra().dim() != 4 || x.algebra().e0() != Some(E0) {
            return Err(GaError::AlgebraMismatch);
        }
        Self::new(x.to_vector().ok_or(GaError::NotAPlane)?)
    }

    pub fn vector(&self) -> &Vector<S> {
        &self.v
    }

    /// `(v1, v2, v3)`: the Euclidean normal.
    pub fn normal(&self) -> [S; 3] {
        [self.v.0[1].clone(), self.v.0[2].clone(), self.v.0[3].clone()]
    }

    pub fn offset(&self) -> &S {
        &self.v.0[0]
    }

    pub fn to_multivector(&self, alg: &Arc<Algebra<S>>) -> Result<Multivector<S>> {
        Multivector::from_vector(alg, &self.v)
    }

    pub fn scale(&self, lambda: &S) -> Result<Self> {
        if lambda.is_negligible() {
            return Err(GaError::ZeroScale);
        }
        Ok(Self { v: self.v.scale(lambda) })
    }

    /// Unit-magnitude representative, in floats.
    pub fn normalized(&self) -> Plane<f64> {
        let m = magnitude(self);
        Plane { v: Vector(self.v.0.iter().map(|c| c.to_f64() / m).collect()) }
    }
}

impl<S: Scalar> fmt::Display for Plane<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.v.0;
        write!(f, "{},{},{},{}", c[0], c[1], c[2], c[3])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointP<S: Scalar> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> PointP<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn origin() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    pub fn coords(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

/// `B(v, v) = v1² + v2² + v3²`.
pub fn magnitude_squared<S: Scalar>(p: &Plane<S>) -> S {
    p.normal().iter().fold(S::zero(), |acc, c| acc + c.clone() * c.clone())
}

pub fn magnitude<S: Scalar>(p: &Plane<S>) -> f64 {
    magnitude_squared(p).to_f64().sqrt()
}

/// `B(u, v)` for the PGA form.
pub fn bilinear<S: Scalar>(u: &Plane<S>, v: &Plane<S>) -> S {
    u.normal().iter().zip(v.normal()).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
}

/// `θ ∈ [0, π]` with `B(u,v) = |u||v| cos θ`. Orientation matters: `u` and
/// `-u` are at angle `π`.
pub fn dihedral_angle<S: Scalar>(u: &Plane<S>, v: &Plane<S>) -> f64 {
    let cos = bilinear(u, v).to_f64() / (magnitude(u) * magnitude(v));
    cos.clamp(-1.0, 1.0).acos()
}

/// `cos² θ` computed exactly, without leaving the scalar field.
pub fn cos_squared_angle<S: Scalar>(u: &Plane<S>, v: &Plane<S>) -> S {
    let b = bilinear(u, v);
    b.clone() * b / (magnitude_squared(u) * magnitude_squared(v))
}

/// The complement `V_P = {v : v0 + v1·x + v2·y + v3·z = 0}`.
pub fn point_complement<S: Scalar>(p: &PointP<S>) -> Complement<S> {
    Complement::at_point(&QuadraticForm::pga3(), E0, &p.coords()).expect("PGA3 has a degenerate e0")
}

pub fn incident<S: Scalar>(p: &PointP<S>, plane: &Plane<S>) -> bool {
    incidence_value(p, plane).is_negligible()
}

/// `v0 + v1·x + v2·y + v3·z`.
pub fn incidence_value<S: Scalar>(p: &PointP<S>, plane: &Plane<S>) -> S {
    let n = plane.normal();
    plane.offset().clone() + n[0].clone() * p.x.clone() + n[1].clone() * p.y.clone() + n[2].clone() * p.z.clone()
}

/// The unique plane through `P` parallel to `plane`, with the same
/// orientation and magnitude: `ω_P(π(plane))`.
pub fn parallel_through<S: Scalar>(p: &PointP<S>, plane: &Plane<S>) -> Plane<S> {
    let (w, _) = point_complement(p).playfair_project_vector(plane.vector()).expect("dimension 4");
    Plane::new(w).expect("projection keeps the normal")
}
