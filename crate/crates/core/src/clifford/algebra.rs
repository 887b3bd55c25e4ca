use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use super::{Blade, Multivector};
use crate::error::{GaError, Result};
use crate::linalg::Matrix;
use crate::quadratic_space::{Complement, QuadraticForm, Vector};
use crate::scalar::Scalar;

/// A Clifford algebra `Cl(V)`, computed in the diagonal working basis of its
/// form. Forms given by a non-diagonal gram matrix are diagonalized once and
/// the change of basis is kept for input/output conversion.
#[derive(Debug)]
pub struct Algebra<S: Scalar> {
    input_form: QuadraticForm<S>,
    form: QuadraticForm<S>,
    metric: Vec<S>,
    /// `(P⁻¹, P)` when the working basis differs from the input basis.
    basis_change: Option<(Matrix<S>, Matrix<S>)>,
    e0: Option<usize>,
    quotient: OnceLock<Arc<Algebra<S>>>,
}

impl<S: Scalar> Algebra<S> {
    pub fn new(input_form: QuadraticForm<S>) -> Result<Arc<Self>> {
        let d = input_form.diagonalization().clone();
        let metric = d.entries.clone();
        let form = QuadraticForm::diagonal(&metric)?;
        let n = metric.len();
        let basis_change =
            if d.change_of_basis == Matrix::identity(n) { None } else { Some((d.inverse, d.change_of_basis)) };
        let e0 = metric.iter().position(Scalar::is_negligible);
        Ok(Arc::new(Self { input_form, form, metric, basis_change, e0, quotient: OnceLock::new() }))
    }

    /// Diagonal algebra with `r` degenerate generators first, then `p`
    /// positive and `q` negative ones.
    pub fn from_signature(p: usize, q: usize, r: usize) -> Result<Arc<Self>> {
        Self::new(QuadraticForm::from_signature(p, q, r)?)
    }

    /// Euclidean plane-based PGA, `Cl(3,0,1)`.
    pub fn pga3() -> Arc<Self> {
        Self::from_signature(3, 0, 1).expect("valid signature")
    }

    /// The same algebra with a different degenerate basis vector playing `e0`.
    pub fn with_e0(&self, e0: usize) -> Result<Arc<Self>> {
        if !self.form.is_degenerate_basis_vector(e0) {
            return Err(GaError::NotDegenerate(e0));
        }
        Ok(Arc::new(Self {
            input_form: self.input_form.clone(),
            form: self.form.clone(),
            metric: self.metric.clone(),
            basis_change: self.basis_change.clone(),
            e0: Some(e0),
            quotient: OnceLock::new(),
        }))
    }

    pub fn dim(&self) -> usize {
        self.metric.len()
    }

    pub fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    /// Squares `e_i²` of the working basis vectors.
    pub fn metric(&self) -> &[S] {
        &self.metric
    }

    /// The diagonal form of the working basis.
    pub fn form(&self) -> &QuadraticForm<S> {
        &self.form
    }

    pub fn input_form(&self) -> &QuadraticForm<S> {
        &self.input_form
    }

    pub fn e0(&self) -> Option<usize> {
        self.e0
    }

    pub fn require_e0(&self) -> Result<usize> {
        self.e0.ok_or(GaError::NoDegenerateGenerator)
    }

    /// `p,q,r` of the form.
    pub fn label(&self) -> String {
        let (p, q, r) = self.form.signature();
        format!("{p},{q},{r}")
    }

    /// Whether two handles describe the same algebra.
    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.metric == other.metric && self.e0 == other.e0)
    }

    pub fn has_identity_basis(&self) -> bool {
        self.basis_change.is_none()
    }

    /// Product of two basis blades: the resulting blade and its coefficient,
    /// or `None` when a repeated factor squares to zero.
    pub fn blade_product(&self, a: Blade, b: Blade) -> Option<(Blade, S)> {
        let mut coeff = if a.reorder_is_odd(b) { -S::one() } else { S::one() };
        for i in Blade(a.0 & b.0).indices() {
            let m = &self.metric[i];
            if m.is_negligible() {
                return None;
            }
            coeff = coeff * m.clone();
        }
        Some((Blade(a.0 ^ b.0), coeff))
    }

    /// Exterior product of two basis blades.
    pub fn blade_wedge(&self, a: Blade, b: Blade) -> Option<(Blade, S)> {
        if a.0 & b.0 != 0 {
            return None;
        }
        let sign = if a.reorder_is_odd(b) { -S::one() } else { S::one() };
        Some((Blade(a.0 | b.0), sign))
    }

    /// `Cl(V/F·e0)`: the Clifford algebra of the quotient form, with the
    /// transversal `e_i, i ≠ e0` relabelled consecutively.
    pub fn quotient(&self) -> Result<Arc<Self>> {
        let e0 = self.require_e0()?;
        if let Some(q) = self.quotient.get() {
            return Ok(q.clone());
        }
        let metric: Vec<S> = self.metric.iter().enumerate().filter(|(i, _)| *i != e0).map(|(_, m)| m.clone()).collect();
        if metric.is_empty() {
            return Err(GaError::Invalid("quotient of a one-dimensional space is zero-dimensional".into()));
        }
        let q = Self::new(QuadraticForm::diagonal(&metric)?)?;
        Ok(self.quotient.get_or_init(|| q).clone())
    }

    /// The blade of the quotient algebra corresponding to an `e0`-free blade.
    pub fn quotient_blade(&self, b: Blade) -> Option<Blade> {
        let e0 = self.e0?;
        if b.contains(e0) {
            return None;
        }
        let low = b.0 & ((1 << e0) - 1);
        let high = (b.0 >> (e0 + 1)) << e0;
        Some(Blade(low | high))
    }

    /// Inverse of [`quotient_blade`](Self::quotient_blade).
    pub fn lift_quotient_blade(&self, b: Blade) -> Option<Blade> {
        let e0 = self.e0?;
        let low = b.0 & ((1 << e0) - 1);
        let high = (b.0 >> e0) << (e0 + 1);
        Some(Blade(low | high))
    }

    pub fn coordinate_complement(&self) -> Result<Complement<S>> {
        Complement::coordinate(&self.form, self.require_e0()?)
    }

    /// The complement of hyperplanes through a Euclidean point.
    pub fn complement_at_point(&self, point: &[S]) -> Result<Complement<S>> {
        Complement::at_point(&self.form, self.require_e0()?, point)
    }

    /// Checks that a complement was built over this algebra's working form.
    pub fn check_complement(&self, comp: &Complement<S>) -> Result<()> {
        if comp.form() != &self.form || Some(comp.e0()) != self.e0 {
            return Err(GaError::AlgebraMismatch);
        }
        Ok(())
    }

    /// Converts coordinates in the input basis to working coordinates.
    pub fn vector_from_input(&self, v: &Vector<S>) -> Vector<S> {
        match &self.basis_change {
            None => v.clone(),
            Some((to_working, _)) => Vector(to_working.mul_vec(&v.0)),
        }
    }

    /// The input-basis blade `e_S` (a wedge of input basis vectors) as an
    /// element of the algebra.
    pub fn input_blade(self: &Arc<Self>, b: Blade) -> Multivector<S> {
        match &self.basis_change {
            None => Multivector::from_blade(self, b, S::one()),
            Some((to_working, _)) => outermorphism(self, to_working, b),
        }
    }

    /// Coefficients of `x` with respect to the input-basis blades.
    pub fn to_input_terms(self: &Arc<Self>, x: &Multivector<S>) -> BTreeMap<Blade, S> {
        match &self.basis_change {
            None => x.clone().into_terms(),
            Some((_, from_working)) => x
                .terms()
                .fold(Multivector::zero(self), |acc, (b, c)| acc + outermorphism(self, from_working, *b).scale(c))
                .into_terms(),
        }
    }
}

/// Image of a blade under the exterior extension of a linear map.
fn outermorphism<S: Scalar>(alg: &Arc<Algebra<S>>, map: &Matrix<S>, b: Blade) -> Multivector<S> {
    b.indices().fold(Multivector::scalar(alg, S::one()), |acc, i| {
        let v = Multivector::from_vector(alg, &Vector(map.column(i))).expect("square map");
        acc.wedge(&v)
    })
}
