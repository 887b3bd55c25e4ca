use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Algebra, Blade};
use crate::error::{GaError, Result};
use crate::quadratic_space::Vector;
use crate::scalar::Scalar;

/// A sparse element of `Cl(V)`: blade → nonzero coefficient.
#[derive(Clone, Debug)]
pub struct Multivector<S: Scalar> {
    alg: Arc<Algebra<S>>,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> PartialEq for Multivector<S> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.terms == other.terms
    }
}

fn accumulate<S: Scalar>(terms: &mut BTreeMap<Blade, S>, b: Blade, c: S) {
    if c.is_negligible() {
        return;
    }
    match terms.get_mut(&b) {
        Some(v) => {
            *v = v.clone() + c;
            if v.is_negligible() {
                terms.remove(&b);
            }
        }
        None => {
            terms.insert(b, c);
        }
    }
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(alg: &Arc<Algebra<S>>) -> Self {
        Self { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(alg: &Arc<Algebra<S>>, s: S) -> Self {
        Self::from_blade(alg, Blade::SCALAR, s)
    }

    pub fn one(alg: &Arc<Algebra<S>>) -> Self {
        Self::scalar(alg, S::one())
    }

    /// `c · b`. Panics if the blade lies outside the algebra.
    pub fn from_blade(alg: &Arc<Algebra<S>>, b: Blade, c: S) -> Self {
        assert!((b.0 as usize) < alg.blade_count(), "blade {b} outside algebra of dimension {}", alg.dim());
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, b, c);
        Self { alg: alg.clone(), terms }
    }

    /// The unit blade with the given ascending indices.
    pub fn blade(alg: &Arc<Algebra<S>>, indices: &[usize]) -> Result<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i >= alg.dim()) {
            return Err(GaError::DimensionMismatch { expected: alg.dim(), got: i + 1 });
        }
        Ok(Self::from_blade(alg, Blade::from_indices(indices), S::one()))
    }

    pub fn basis_vector(alg: &Arc<Algebra<S>>, i: usize) -> Self {
        Self::from_blade(alg, Blade::vector(i), S::one())
    }

    /// The degenerate generator `e0`.
    pub fn e0(alg: &Arc<Algebra<S>>) -> Result<Self> {
        Ok(Self::basis_vector(alg, alg.require_e0()?))
    }

    pub fn from_vector(alg: &Arc<Algebra<S>>, v: &Vector<S>) -> Result<Self> {
        if v.dim() != alg.dim() {
            return Err(GaError::DimensionMismatch { expected: alg.dim(), got: v.dim() });
        }
        Ok(Self::from_terms(alg, v.coords().iter().enumerate().map(|(i, c)| (Blade::vector(i), c.clone()))))
    }

    pub fn from_terms(alg: &Arc<Algebra<S>>, terms: impl IntoIterator<Item = (Blade, S)>) -> Self {
        let mut out = BTreeMap::new();
        for (b, c) in terms {
            assert!((b.0 as usize) < alg.blade_count(), "blade {b} outside algebra");
            accumulate(&mut out, b, c);
        }
        Self { alg: alg.clone(), terms: out }
    }

    /// Dense coordinates indexed by blade mask.
    pub fn from_coords(alg: &Arc<Algebra<S>>, coords: &[S]) -> Self {
        Self::from_terms(alg, coords.iter().enumerate().map(|(m, c)| (Blade(m as u32), c.clone())))
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Blade, S> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    pub fn scalar_part(&self) -> S {
        self.coefficient(Blade::SCALAR)
    }

    pub fn coords(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.alg.blade_count()];
        for (b, c) in &self.terms {
            out[b.0 as usize] = c.clone();
        }
        out
    }

    /// The grade-1 part as a vector; `None` if other grades are present.
    pub fn to_vector(&self) -> Option<Vector<S>> {
        if self.terms.keys().any(|b| b.grade() != 1) {
            return None;
        }
        let mut v = Vector::zero(self.alg.dim());
        for (b, c) in &self.terms {
            v.0[b.0.trailing_zeros() as usize] = c.clone();
        }
        Some(v)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.alg.same_as(&other.alg) {
            Ok(())
        } else {
            Err(GaError::AlgebraMismatch)
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(&self.alg, self.terms.iter().map(|(b, c)| (*b, c.clone() * s.clone())))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (b, c) in &other.terms {
            accumulate(&mut terms, *b, c.clone());
        }
        Ok(Self { alg: self.alg.clone(), terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// The geometric product, built blade by blade from `e_i e_i = B(e_i, e_i)`
    /// and `e_i e_j = -e_j e_i`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((blade, f)) = self.alg.blade_product(*a, *b) {
                    accumulate(&mut terms, blade, f * x.clone() * y.clone());
                }
            }
        }
        Ok(Self { alg: self.alg.clone(), terms })
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((blade, f)) = self.alg.blade_wedge(*a, *b) {
                    accumulate(&mut terms, blade, f * x.clone() * y.clone());
                }
            }
        }
        Ok(Self { alg: self.alg.clone(), terms })
    }

    /// Exterior product. Panics on mismatched algebras.
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge of elements from different algebras")
    }

    pub fn grade_part(&self, k: usize) -> Result<Self> {
        if k > self.alg.dim() {
            return Err(GaError::GradeOutOfRange { k, dim: self.alg.dim() });
        }
        Ok(self.filter(|b| b.grade() == k))
    }

    pub(crate) fn filter(&self, mut keep: impl FnMut(Blade) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(b, _)| keep(**b)).map(|(b, c)| (*b, c.clone())).collect();
        Self { alg: self.alg.clone(), terms }
    }

    /// Grades present with a nonzero coefficient, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Zero counts as homogeneous of every grade.
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    /// `α`: negates the odd-grade parts.
    pub fn grade_involution(&self) -> Self {
        let terms =
            self.terms.iter().map(|(b, c)| (*b, if b.grade() % 2 == 1 { -c.clone() } else { c.clone() })).collect();
        Self { alg: self.alg.clone(), terms }
    }

    pub fn even_part(&self) -> Self {
        self.filter(|b| b.grade() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|b| b.grade() % 2 == 1)
    }

    /// Whether any stored blade contains `e_i`.
    pub fn mentions(&self, i: usize) -> bool {
        self.terms.keys().any(|b| b.contains(i))
    }

    /// Coefficientwise comparison up to the scalar negligibility test.
    pub fn approx_eq(&self, other: &Self) -> bool {
        match self.try_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

/// Canonical text: terms by ascending blade mask, e.g. `2 + 3*e1 - e01`.
pub fn format_terms<'a, S: Scalar>(terms: impl IntoIterator<Item = (&'a Blade, &'a S)>) -> String {
    let mut out = String::new();
    for (b, c) in terms {
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if *b == Blade::SCALAR {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&b.name());
        } else {
            out.push_str(&format!("{mag}*{}", b.name()));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms.iter()))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<S: Scalar> $tr<&Multivector<S>> for &Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, rhs: &Multivector<S>) -> Multivector<S> {
                self.$try(rhs).expect("operands belong to different algebras")
            }
        }
        impl<S: Scalar> $tr<Multivector<S>> for Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, rhs: Multivector<S>) -> Multivector<S> {
                (&self).$method(&rhs)
            }
        }
        impl<S: Scalar> $tr<&Multivector<S>> for Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, rhs: &Multivector<S>) -> Multivector<S> {
                (&self).$method(rhs)
            }
        }
        impl<S: Scalar> $tr<Multivector<S>> for &Multivector<S> {
            type Output = Multivector<S>;
            fn $method(self, rhs: Multivector<S>) -> Multivector<S> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        let terms = self.terms.iter().map(|(b, c)| (*b, -c.clone())).collect();
        Multivector { alg: self.alg.clone(), terms }
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        -&self
    }
}
