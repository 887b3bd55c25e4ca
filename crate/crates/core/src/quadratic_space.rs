//! Quadratic spaces: symmetric bilinear forms, radicals, quotients,
//! complements of a degenerate line and their canonical sections.

use std::sync::OnceLock;

use crate::error::{GaError, Result};
use crate::linalg::Matrix;
use crate::scalar::{sign_of, Scalar};
use crate::MAX_DIM;

/// Coordinates of a vector in the working basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<S>(pub Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn zero(dim: usize) -> Self {
        Self(vec![S::zero(); dim])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = S::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_negligible)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.sub(other).is_zero()
    }
}

/// A subspace given by a linearly independent spanning list.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Vec<Vector<S>>,
}

impl<S: Scalar> Subspace<S> {
    pub fn new(ambient: usize, basis: Vec<Vector<S>>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.dim() != ambient) {
            return Err(GaError::DimensionMismatch { expected: ambient, got: v.dim() });
        }
        let s = Self { ambient, basis };
        if s.stacked().rank() != s.basis.len() {
            return Err(GaError::LinearlyDependent);
        }
        Ok(s)
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector<S>] {
        &self.basis
    }

    /// Basis vectors as the rows of a matrix.
    fn stacked(&self) -> Matrix<S> {
        if self.basis.is_empty() {
            return Matrix::zeros(0, self.ambient);
        }
        Matrix::from_rows(&self.basis.iter().map(|v| v.0.clone()).collect::<Vec<_>>())
    }

    pub fn contains(&self, v: &Vector<S>) -> bool {
        let mut rows: Vec<Vec<S>> = self.basis.iter().map(|b| b.0.clone()).collect();
        rows.push(v.0.clone());
        Matrix::from_rows(&rows).rank() == self.dim()
    }
}

/// Congruence diagonalization `Pᵀ·G·P = diag(entries)`. Columns of `P` are
/// the working basis expressed in the input basis; zero entries come first.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalization<S> {
    pub change_of_basis: Matrix<S>,
    pub inverse: Matrix<S>,
    pub entries: Vec<S>,
}

/// A symmetric bilinear form on an `n`-dimensional space.
#[derive(Clone, Debug)]
pub struct QuadraticForm<S> {
    gram: Matrix<S>,
    diag: OnceLock<Diagonalization<S>>,
}

impl<S: PartialEq> PartialEq for QuadraticForm<S> {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl<S: Scalar> QuadraticForm<S> {
    pub fn new(gram: Matrix<S>) -> Result<Self> {
        if !gram.is_square() {
            return Err(GaError::DimensionMismatch { expected: gram.rows(), got: gram.cols() });
        }
        let dim = gram.rows();
        if dim == 0 {
            return Err(GaError::Invalid("a quadratic space needs at least one basis vector".into()));
        }
        if dim > MAX_DIM {
            return Err(GaError::DimensionTooLarge(dim));
        }
        if let Some((i, j)) = gram.first_asymmetry() {
            return Err(GaError::NotSymmetric(i, j));
        }
        Ok(Self { gram, diag: OnceLock::new() })
    }

    pub fn diagonal(entries: &[S]) -> Result<Self> {
        Self::new(Matrix::diagonal(entries))
    }

    /// Diagonal form with `r` zeros, then `p` ones, then `q` minus ones.
    pub fn from_signature(p: usize, q: usize, r: usize) -> Result<Self> {
        use std::iter::repeat_n;
        let entries: Vec<S> =
            repeat_n(S::zero(), r).chain(repeat_n(S::one(), p)).chain(repeat_n(-S::one(), q)).collect();
        Self::diagonal(&entries)
    }

    /// The plane-based 3D Euclidean form: `e0² = 0`, `e1² = e2² = e3² = 1`.
    pub fn pga3() -> Self {
        Self::from_signature(3, 0, 1).expect("valid signature")
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    pub fn bilinear(&self, u: &Vector<S>, v: &Vector<S>) -> Result<S> {
        for w in [u, v] {
            if w.dim() != self.dim() {
                return Err(GaError::DimensionMismatch { expected: self.dim(), got: w.dim() });
            }
        }
        let gv = self.gram.mul_vec(&v.0);
        Ok(u.0.iter().zip(&gv).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn radical(&self) -> Subspace<S> {
        let basis = self.gram.kernel().into_iter().map(Vector).collect();
        Subspace { ambient: self.dim(), basis }
    }

    /// Whether the basis vector `e_i` pairs to zero with everything.
    pub fn is_degenerate_basis_vector(&self, i: usize) -> bool {
        i < self.dim() && self.gram.row(i).iter().all(Scalar::is_negligible)
    }

    fn check_radical(&self, u_sub: &Subspace<S>) -> Result<()> {
        if u_sub.ambient_dim() != self.dim() {
            return Err(GaError::DimensionMismatch { expected: self.dim(), got: u_sub.ambient_dim() });
        }
        for (k, u) in u_sub.basis().iter().enumerate() {
            let gu = self.gram.mul_vec(&u.0);
            if let Some(i) = gu.iter().position(|x| !x.is_negligible()) {
                return Err(GaError::NotRadical(k, i));
            }
        }
        Ok(())
    }

    /// Indices of the standard basis vectors that represent `V/U`.
    pub fn quotient_transversal(&self, u_sub: &Subspace<S>) -> Vec<usize> {
        let (_, pivots) = u_sub.stacked().rref();
        (0..self.dim()).filter(|i| !pivots.contains(i)).collect()
    }

    /// The form induced on `V/U`, represented on the transversal returned by
    /// [`quotient_transversal`](Self::quotient_transversal).
    pub fn quotient_form(&self, u_sub: &Subspace<S>) -> Result<Self> {
        self.check_radical(u_sub)?;
        let t = self.quotient_transversal(u_sub);
        Self::new(Matrix::from_fn(t.len(), t.len(), |i, j| self.gram[(t[i], t[j])].clone()))
    }

    pub fn diagonalization(&self) -> &Diagonalization<S> {
        self.diag.get_or_init(|| diagonalize(&self.gram))
    }

    /// `(p, q, r)`: counts of positive, negative and zero diagonal entries.
    pub fn signature(&self) -> (usize, usize, usize) {
        let mut sig = (0, 0, 0);
        for e in &self.diagonalization().entries {
            match sign_of(e) {
                1 => sig.0 += 1,
                -1 => sig.1 += 1,
                _ => sig.2 += 1,
            }
        }
        sig
    }
}

/// Symmetric Gaussian elimination. When no nonzero diagonal pivot remains
/// but an off-diagonal entry does, the basis vector `x` is replaced by `x + y`.
fn diagonalize<S: Scalar>(gram: &Matrix<S>) -> Diagonalization<S> {
    let n = gram.rows();
    let mut a = gram.clone();
    let mut p = Matrix::<S>::identity(n);

    let add_col = |m: &mut Matrix<S>, dst: usize, src: usize, f: &S| {
        for r in 0..m.rows() {
            let d = m[(r, src)].clone() * f.clone();
            m[(r, dst)] = m[(r, dst)].clone() + d;
        }
    };
    let add_row = |m: &mut Matrix<S>, dst: usize, src: usize, f: &S| {
        for c in 0..m.cols() {
            let d = m[(src, c)].clone() * f.clone();
            m[(dst, c)] = m[(dst, c)].clone() + d;
        }
    };
    let swap = |a: &mut Matrix<S>, p: &mut Matrix<S>, i: usize, j: usize| {
        for r in 0..n {
            let t = a[(r, i)].clone();
            a[(r, i)] = a[(r, j)].clone();
            a[(r, j)] = t;
            let t = p[(r, i)].clone();
            p[(r, i)] = p[(r, j)].clone();
            p[(r, j)] = t;
        }
        for c in 0..n {
            let t = a[(i, c)].clone();
            a[(i, c)] = a[(j, c)].clone();
            a[(j, c)] = t;
        }
    };

    for k in 0..n {
        if a[(k, k)].is_negligible() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_negligible()) {
                swap(&mut a, &mut p, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_negligible()) {
                let one = S::one();
                add_col(&mut a, k, j, &one);
                add_row(&mut a, k, j, &one);
                add_col(&mut p, k, j, &one);
            } else {
                continue;
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_negligible() {
                continue;
            }
            let f = -(a[(i, k)].clone() / pivot.clone());
            add_col(&mut a, i, k, &f);
            add_row(&mut a, i, k, &f);
            add_col(&mut p, i, k, &f);
        }
    }

    let raw: Vec<S> = (0..n).map(|i| a[(i, i)].clone()).collect();
    let mut order: Vec<usize> = (0..n).filter(|&i| raw[i].is_negligible()).collect();
    order.extend((0..n).filter(|&i| !raw[i].is_negligible()));
    let entries = order.iter().map(|&i| if raw[i].is_negligible() { S::zero() } else { raw[i].clone() }).collect();
    let change_of_basis = Matrix::from_fn(n, n, |r, c| p[(r, order[c])].clone());
    let inverse = change_of_basis.inverse().expect("congruence transform is invertible");
    Diagonalization { change_of_basis, inverse, entries }
}

/// `true` iff `mapᵀ·G_dst·map = G_src`.
pub fn is_isometry<S: Scalar>(map: &Matrix<S>, src: &QuadraticForm<S>, dst: &QuadraticForm<S>) -> bool {
    if map.rows() != dst.dim() || map.cols() != src.dim() {
        return false;
    }
    map.transpose().mul(dst.gram()).mul(map).approx_eq(src.gram())
}

/// Invertible isometries fixing the radical elementwise.
pub fn is_weak_orthogonal<S: Scalar>(map: &Matrix<S>, form: &QuadraticForm<S>) -> bool {
    is_isometry(map, form, form)
        && map.is_invertible()
        && form.radical().basis().iter().all(|r| Vector(map.mul_vec(&r.0)).approx_eq(r))
}

/// How a complement was specified.
#[derive(Clone, Debug, PartialEq)]
pub enum ComplementSpec<S> {
    Basis(Subspace<S>),
    /// Euclidean point `P`; the complement is the space of hyperplanes through `P`.
    Point(Vec<S>),
}

/// A complement `W` of the degenerate line `F·e0`.
///
/// Stored through its canonical section: `ω_W([e_i]) = e_i + shift_i·e0` for
/// every transversal index `i ≠ e0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Complement<S> {
    form: QuadraticForm<S>,
    e0: usize,
    shifts: Vec<S>,
    spec: ComplementSpec<S>,
}

impl<S: Scalar> Complement<S> {
    fn check_e0(form: &QuadraticForm<S>, e0: usize) -> Result<()> {
        if e0 >= form.dim() {
            return Err(GaError::DimensionMismatch { expected: form.dim(), got: e0 + 1 });
        }
        if !form.is_degenerate_basis_vector(e0) {
            return Err(GaError::NotDegenerate(e0));
        }
        Ok(())
    }

    /// The coordinate complement spanned by every basis vector except `e0`.
    pub fn coordinate(form: &QuadraticForm<S>, e0: usize) -> Result<Self> {
        Self::check_e0(form, e0)?;
        let n = form.dim();
        let basis = (0..n).filter(|&i| i != e0).map(|i| Vector::basis(n, i)).collect();
        Ok(Self {
            form: form.clone(),
            e0,
            shifts: vec![S::zero(); n],
            spec: ComplementSpec::Basis(Subspace { ambient: n, basis }),
        })
    }

    pub fn from_subspace(form: &QuadraticForm<S>, e0: usize, w: Subspace<S>) -> Result<Self> {
        Self::check_e0(form, e0)?;
        let n = form.dim();
        if w.ambient_dim() != n {
            return Err(GaError::DimensionMismatch { expected: n, got: w.ambient_dim() });
        }
        if w.dim() != n - 1 {
            return Err(GaError::NotAComplement(format!("dimension {} instead of {}", w.dim(), n - 1)));
        }
        let e0v = Vector::basis(n, e0);
        for b in w.basis() {
            if !form.bilinear(b, &e0v)?.is_negligible() {
                return Err(GaError::NotAComplement("not orthogonal to e0".into()));
            }
        }
        let t: Vec<usize> = (0..n).filter(|&i| i != e0).collect();
        // Rows: basis vectors; columns: transversal coordinates.
        let trans = Matrix::from_fn(n - 1, n - 1, |k, j| w.basis()[k].0[t[j]].clone());
        let inv = trans.inverse().ok_or_else(|| GaError::NotAComplement("contains a multiple of e0".into()))?;
        // ω([e_i]) = Σ_k a_k w_k with aᵀ·trans = e_iᵀ, so a = row i of trans⁻¹.
        let mut shifts = vec![S::zero(); n];
        for (j, &i) in t.iter().enumerate() {
            shifts[i] = (0..n - 1).fold(S::zero(), |acc, k| acc + inv[(j, k)].clone() * w.basis()[k].0[e0].clone());
        }
        Ok(Self { form: form.clone(), e0, shifts, spec: ComplementSpec::Basis(w) })
    }

    /// `V_P = {v : v_e0 + Σ_k v_{t_k}·p_k = 0}`, the hyperplanes through `P`.
    pub fn at_point(form: &QuadraticForm<S>, e0: usize, point: &[S]) -> Result<Self> {
        Self::check_e0(form, e0)?;
        let n = form.dim();
        if point.len() != n - 1 {
            return Err(GaError::DimensionMismatch { expected: n - 1, got: point.len() });
        }
        let mut shifts = vec![S::zero(); n];
        for (k, i) in (0..n).filter(|&i| i != e0).enumerate() {
            shifts[i] = -point[k].clone();
        }
        Ok(Self { form: form.clone(), e0, shifts, spec: ComplementSpec::Point(point.to_vec()) })
    }

    pub fn form(&self) -> &QuadraticForm<S> {
        &self.form
    }

    pub fn e0(&self) -> usize {
        self.e0
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn spec(&self) -> &ComplementSpec<S> {
        &self.spec
    }

    /// The `e0`-coefficient added to `e_i` by the canonical section.
    pub fn shift(&self, i: usize) -> &S {
        &self.shifts[i]
    }

    /// Indices `i ≠ e0`, in ascending order.
    pub fn transversal(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| i != self.e0).collect()
    }

    /// Image of `[e_i]` under the canonical section.
    pub fn section_of_basis(&self, i: usize) -> Vector<S> {
        let mut v = Vector::basis(self.dim(), i);
        v.0[self.e0] = self.shifts[i].clone();
        v
    }

    /// Split-adapted basis of `W`: the section images of the transversal.
    pub fn basis(&self) -> Vec<Vector<S>> {
        self.transversal().into_iter().map(|i| self.section_of_basis(i)).collect()
    }

    /// `ω_W` as an `n × (n-1)` matrix acting on transversal coordinates.
    pub fn canonical_section(&self) -> Matrix<S> {
        Matrix::from_columns(&self.basis().into_iter().map(|v| v.0).collect::<Vec<_>>())
    }

    /// The projection `π: V → V/F·e0` on transversal coordinates.
    pub fn projection(&self) -> Matrix<S> {
        let t = self.transversal();
        Matrix::from_fn(t.len(), self.dim(), |k, j| if t[k] == j { S::one() } else { S::zero() })
    }

    /// The Playfair projection `π_W = ω_W ∘ π` as an endomorphism of `V`.
    pub fn playfair_matrix(&self) -> Matrix<S> {
        self.canonical_section().mul(&self.projection())
    }

    pub fn contains(&self, v: &Vector<S>) -> bool {
        let expected =
            self.transversal().into_iter().fold(S::zero(), |acc, i| acc + self.shifts[i].clone() * v.0[i].clone());
        (v.0[self.e0].clone() - expected).is_negligible()
    }

    /// The unique `(w, λ)` with `w ∈ W` and `v = w + λ·e0`.
    pub fn playfair_project_vector(&self, v: &Vector<S>) -> Result<(Vector<S>, S)> {
        if v.dim() != self.dim() {
            return Err(GaError::DimensionMismatch { expected: self.dim(), got: v.dim() });
        }
        let w = Vector(self.playfair_matrix().mul_vec(&v.0));
        let lambda = v.0[self.e0].clone() - w.0[self.e0].clone();
        Ok((w, lambda))
    }
}
