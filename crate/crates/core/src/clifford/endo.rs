use std::sync::Arc;

use super::{Algebra, Blade, Multivector};
use crate::error::{GaError, Result};
use crate::linalg::Matrix;
use crate::quadratic_space::{is_isometry, Vector};
use crate::scalar::Scalar;

/// A linear map on `Cl(V)` in the blade basis, stored column by column: the
/// image of every basis blade.
#[derive(Clone, Debug)]
pub struct LinearEndo<S: Scalar> {
    alg: Arc<Algebra<S>>,
    columns: Vec<Multivector<S>>,
}

impl<S: Scalar> PartialEq for LinearEndo<S> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.columns == other.columns
    }
}

impl<S: Scalar> LinearEndo<S> {
    pub fn from_fn(alg: &Arc<Algebra<S>>, mut image: impl FnMut(Blade) -> Multivector<S>) -> Self {
        let columns = (0..alg.blade_count() as u32).map(|m| image(Blade(m))).collect();
        Self { alg: alg.clone(), columns }
    }

    pub fn identity(alg: &Arc<Algebra<S>>) -> Self {
        Self::from_fn(alg, |b| Multivector::from_blade(alg, b, S::one()))
    }

    pub fn zero(alg: &Arc<Algebra<S>>) -> Self {
        Self::from_fn(alg, |_| Multivector::zero(alg))
    }

    pub fn algebra(&self) -> &Arc<Algebra<S>> {
        &self.alg
    }

    pub fn image_of(&self, b: Blade) -> &Multivector<S> {
        &self.columns[b.0 as usize]
    }

    pub fn apply(&self, x: &Multivector<S>) -> Result<Multivector<S>> {
        if !self.alg.same_as(x.algebra()) {
            return Err(GaError::AlgebraMismatch);
        }
        Ok(x.terms().fold(Multivector::zero(&self.alg), |acc, (b, c)| acc + self.image_of(*b).scale(c)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let columns = other.columns.iter().map(|c| self.apply(c)).collect::<Result<_>>()?;
        Ok(Self { alg: self.alg.clone(), columns })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(Self { alg: self.alg.clone(), columns })
    }

    /// Matrix entry: coefficient of blade `row` in the image of blade `col`.
    pub fn entry(&self, row: Blade, col: Blade) -> S {
        self.image_of(col).coefficient(row)
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let n = self.alg.blade_count();
        Matrix::from_fn(n, n, |r, c| self.entry(Blade(r as u32), Blade(c as u32)))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.alg)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Multivector::is_zero)
    }
}

/// The left-regular representation `y ↦ x·y`.
pub fn left_mul_matrix<S: Scalar>(x: &Multivector<S>) -> LinearEndo<S> {
    let alg = x.algebra();
    LinearEndo::from_fn(alg, |b| x * Multivector::from_blade(alg, b, S::one()))
}

/// `Cl(f)`: the unital algebra endomorphism extending an isometry `f` of the
/// working form. A blade maps to the product of the images of its factors.
pub fn clifford_extend<S: Scalar>(alg: &Arc<Algebra<S>>, f: &Matrix<S>) -> Result<LinearEndo<S>> {
    if !is_isometry(f, alg.form(), alg.form()) {
        return Err(GaError::NotAnIsometry);
    }
    Ok(extend_unchecked(alg, f))
}

pub(crate) fn extend_unchecked<S: Scalar>(alg: &Arc<Algebra<S>>, f: &Matrix<S>) -> LinearEndo<S> {
    let images: Vec<Multivector<S>> =
        (0..alg.dim()).map(|i| Multivector::from_vector(alg, &Vector(f.column(i))).expect("square map")).collect();
    LinearEndo::from_fn(alg, |b| b.indices().fold(Multivector::one(alg), |acc, i| acc * &images[i]))
}

/// `α = Cl(-id)`.
pub fn grade_involution_endo<S: Scalar>(alg: &Arc<Algebra<S>>) -> LinearEndo<S> {
    let neg = Matrix::diagonal(&vec![-S::one(); alg.dim()]);
    extend_unchecked(alg, &neg)
}
