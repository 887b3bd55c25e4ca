//! Units, the unit-group decomposition and the bivector Lie algebra.

use std::sync::Arc;

use crate::clifford::{left_mul_matrix, Algebra, Blade, Multivector};
use crate::error::{GaError, Result};
use crate::linalg::Matrix;
use crate::playfair::decompose;
use crate::quadratic_space::{Complement, Vector};
use crate::scalar::Scalar;

/// A unit written as `r·(1 + tail·e0)` with `r` a unit of `Cl(W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitDecomposition<S: Scalar> {
    pub r: Multivector<S>,
    pub tail: Multivector<S>,
}

impl<S: Scalar> UnitDecomposition<S> {
    pub fn reconstruct(&self) -> Multivector<S> {
        let alg = self.r.algebra();
        let e0 = Multivector::e0(alg).expect("decomposition of a degenerate algebra");
        &self.r * (Multivector::one(alg) + &self.tail * e0)
    }

    /// Product in `R× ⋉_τ (1 + M)`:
    /// `(r₁, t₁)(r₂, t₂) = (r₁r₂, τ(r₂⁻¹)(t₁) + t₂)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let r2_inv = inverse(&other.r)?;
        let tail = tau_action(&r2_inv, &self.tail)? + &other.tail;
        Ok(Self { r: self.r.try_mul(&other.r)?, tail })
    }
}

/// `B = rotational + ideal_vector·e0` with `rotational ∈ Cl²(W)` and
/// `ideal_vector ∈ W`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivectorSplit<S: Scalar> {
    pub rotational: Multivector<S>,
    pub ideal_vector: Vector<S>,
}

/// Two-sided inverse, found by solving `x·z = 1` in the left-regular
/// representation.
pub fn inverse<S: Scalar>(x: &Multivector<S>) -> Result<Multivector<S>> {
    let alg = x.algebra();
    let not_unit = || GaError::NotAUnit(format!("{x} is not a unit"));
    let m = left_mul_matrix(x).to_dense();
    let z = m.solve(&Multivector::one(alg).coords()).ok_or_else(not_unit)?;
    let z = Multivector::from_coords(alg, &z);
    let one = Multivector::one(alg);
    if (x * &z).approx_eq(&one) && (&z * x).approx_eq(&one) {
        Ok(z)
    } else {
        Err(not_unit())
    }
}

/// Splits a unit as `x = r·(1 + tail·e0)`. By the unit criterion `x` is a
/// unit exactly when its `Cl(W)` component `r` is.
pub fn unit_decompose<S: Scalar>(x: &Multivector<S>, comp: &Complement<S>) -> Result<UnitDecomposition<S>> {
    let split = decompose(x, comp)?;
    let r = split.at_w;
    let r_inv = inverse(&r).map_err(|_| GaError::NotAUnit(format!("r-component {r} not a unit")))?;
    let tail = &r_inv * &split.ideal_cofactor;
    Ok(UnitDecomposition { r, tail })
}

/// `τ(r)(m) = r·m·α(r⁻¹)`.
pub fn tau_action<S: Scalar>(r: &Multivector<S>, m: &Multivector<S>) -> Result<Multivector<S>> {
    let r_inv = inverse(r)?;
    r.try_mul(m)?.try_mul(&r_inv.grade_involution())
}

/// `b × x = ½(bx − xb)`.
pub fn commutator<S: Scalar>(b: &Multivector<S>, x: &Multivector<S>) -> Result<Multivector<S>> {
    Ok(b.try_mul(x)?.try_sub(&x.try_mul(b)?)?.scale(&S::one().half()))
}

fn require_grade2<S: Scalar>(b: &Multivector<S>) -> Result<()> {
    if b.is_homogeneous(2) {
        Ok(())
    } else {
        Err(GaError::NotGrade2)
    }
}

/// Writes a bivector as `Σ uᵢvᵢ` with `B(uᵢ, vᵢ) = 0`, using at most
/// `⌊dim/2⌋` pairs.
pub fn simple_bivector_decomposition<S: Scalar>(b: &Multivector<S>) -> Result<Vec<(Vector<S>, Vector<S>)>> {
    require_grade2(b)?;
    let alg = b.algebra();
    let n = alg.dim();
    // Antisymmetric coefficient matrix: b = Σ_{i<j} a[i][j] e_i e_j.
    let mut a = Matrix::zeros(n, n);
    for (blade, c) in b.terms() {
        let idx: Vec<usize> = blade.indices().collect();
        a[(idx[0], idx[1])] = c.clone();
        a[(idx[1], idx[0])] = -c.clone();
    }
    let metric = alg.metric();
    let dot = |u: &Vector<S>, v: &Vector<S>| {
        (0..n).fold(S::zero(), |acc, k| acc + metric[k].clone() * u.0[k].clone() * v.0[k].clone())
    };
    let mut pairs = Vec::new();
    while let Some((i, j)) =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_negligible())
    {
        let pivot = a[(i, j)].clone();
        let row_i = Vector(a.row(i).to_vec());
        let row_j = Vector(a.row(j).to_vec());
        // The rank-two piece agreeing with `a` on rows i and j is row_i ∧ row_j / pivot.
        for k in 0..n {
            for l in 0..n {
                let c =
                    (row_i.0[k].clone() * row_j.0[l].clone() - row_j.0[k].clone() * row_i.0[l].clone()) / pivot.clone();
                a[(k, l)] = a[(k, l)].clone() - c;
            }
        }
        let mut u = row_j.scale(&(-S::one() / pivot));
        let mut v = row_i;
        let (uu, vv, uv) = (dot(&u, &u), dot(&v, &v), dot(&u, &v));
        if !uv.is_negligible() {
            if !uu.is_negligible() {
                v = v.sub(&u.scale(&(uv / uu)));
            } else if !vv.is_negligible() {
                u = u.sub(&v.scale(&(uv / vv)));
            } else {
                // Both null: the pair spans a hyperbolic plane.
                let half = S::one().half();
                (u, v) = (u.sub(&v).scale(&half), u.add(&v));
            }
        }
        pairs.push((u, v));
    }
    Ok(pairs)
}

/// `B = Cl(π_W)(B) + w·e0`, exhibiting `Cl²(V) = Cl²(W) ⋉ W·e0`.
pub fn bivector_split<S: Scalar>(b: &Multivector<S>, comp: &Complement<S>) -> Result<BivectorSplit<S>> {
    require_grade2(b)?;
    let split = decompose(b, comp)?;
    let ideal_vector = split.ideal_cofactor.to_vector().expect("cofactor of a bivector is a vector");
    Ok(BivectorSplit { rotational: split.at_w, ideal_vector })
}

/// Structure constants of the commutator in a chosen basis of `Cl²(V)`:
/// `basis[i] × basis[j] = Σ_k constants[i][j][k]·basis[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieTable<S: Scalar> {
    pub basis: Vec<Multivector<S>>,
    pub constants: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> LieTable<S> {
    pub fn bracket(&self, i: usize, j: usize) -> &[S] {
        &self.constants[i][j]
    }
}

fn bivector_blades(n: usize) -> Vec<Blade> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| Blade::from_indices(&[i, j]))).collect()
}

pub fn lie_structure_table<S: Scalar>(alg: &Arc<Algebra<S>>, basis: &[Multivector<S>]) -> Result<LieTable<S>> {
    let blades = bivector_blades(alg.dim());
    for b in basis {
        if !b.algebra().same_as(alg) {
            return Err(GaError::AlgebraMismatch);
        }
        require_grade2(b)?;
    }
    let coords = Matrix::from_columns(
        &basis.iter().map(|b| blades.iter().map(|&bl| b.coefficient(bl)).collect()).collect::<Vec<_>>(),
    );
    let needed = blades.len();
    let rank = if basis.is_empty() { 0 } else { coords.rank() };
    if rank != needed || basis.len() != needed {
        return Err(GaError::NotSpanning { rank, needed });
    }
    let mut constants = Vec::with_capacity(needed);
    for bi in basis {
        let mut row = Vec::with_capacity(needed);
        for bj in basis {
            let br = commutator(bi, bj)?;
            let rhs: Vec<S> = blades.iter().map(|&bl| br.coefficient(bl)).collect();
            row.push(coords.solve(&rhs).expect("commutator of bivectors is a bivector"));
        }
        constants.push(row);
    }
    Ok(LieTable { basis: basis.to_vec(), constants })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn e(alg: &Arc<Algebra<Q>>, idx: &[usize]) -> Multivector<Q> {
        Multivector::blade(alg, idx).unwrap()
    }

    fn s(alg: &Arc<Algebra<Q>>, n: i64) -> Multivector<Q> {
        Multivector::scalar(alg, q(n))
    }

    fn vecq(c: &[i64]) -> Vector<Q> {
        Vector::from_i64(c)
    }

    #[test]
    fn inverse_examples() {
        let a = Algebra::pga3();
        assert_eq!(inverse(&e(&a, &[1])).unwrap(), e(&a, &[1]));
        assert_eq!(inverse(&(s(&a, 1) + e(&a, &[0]))).unwrap(), s(&a, 1) - e(&a, &[0]));
        assert!(matches!(inverse(&e(&a, &[0])), Err(GaError::NotAUnit(_))));
        let x = s(&a, 2) + e(&a, &[1, 2]);
        assert_eq!(&x * inverse(&x).unwrap(), s(&a, 1));
    }

    #[test]
    fn unit_decompose_examples() {
        let a = Algebra::pga3();
        let origin = a.coordinate_complement().unwrap();
        let x = e(&a, &[1]) + e(&a, &[0]);
        let d = unit_decompose(&x, &origin).unwrap();
        assert_eq!(d, UnitDecomposition { r: e(&a, &[1]), tail: e(&a, &[1]) });
        assert_eq!(d.reconstruct(), x);
        assert_eq!(unit_decompose(&s(&a, 1), &origin).unwrap(), UnitDecomposition { r: s(&a, 1), tail: s(&a, 0) });
        assert_eq!(unit_decompose(&e(&a, &[0]), &origin), Err(GaError::NotAUnit("r-component 0 not a unit".into())));
    }

    #[test]
    fn compose_matches_product() {
        let a = Algebra::pga3();
        let p = a.complement_at_point(&[q(1), q(-2), q(3)]).unwrap();
        let x = e(&a, &[1]) + e(&a, &[0, 2]) + s(&a, 2);
        let y = e(&a, &[2, 3]) + s(&a, 1) + e(&a, &[0]);
        let dx = unit_decompose(&x, &p).unwrap();
        let dy = unit_decompose(&y, &p).unwrap();
        assert_eq!(dx.compose(&dy).unwrap(), unit_decompose(&(&x * &y), &p).unwrap());
    }

    #[test]
    fn tau_examples() {
        let a = Algebra::pga3();
        let m = e(&a, &[1, 3]) + s(&a, 4);
        assert_eq!(tau_action(&s(&a, 1), &m).unwrap(), m);
        assert_eq!(tau_action(&e(&a, &[1]), &e(&a, &[2])).unwrap(), e(&a, &[2]));
        assert_eq!(tau_action(&e(&a, &[1]), &s(&a, 1)).unwrap(), s(&a, -1));
    }

    #[test]
    fn commutator_examples() {
        let a = Algebra::pga3();
        assert!(commutator(&e(&a, &[1, 2]), &e(&a, &[1, 2])).unwrap().is_zero());
        assert_eq!(commutator(&e(&a, &[1, 2]), &e(&a, &[1])).unwrap(), -e(&a, &[2]));
        assert_eq!(commutator(&e(&a, &[1, 2]), &e(&a, &[2, 3])).unwrap(), e(&a, &[1, 3]));
    }

    fn product_sum(a: &Arc<Algebra<Q>>, pairs: &[(Vector<Q>, Vector<Q>)]) -> Multivector<Q> {
        pairs.iter().fold(Multivector::zero(a), |acc, (u, v)| {
            acc + Multivector::from_vector(a, u).unwrap() * Multivector::from_vector(a, v).unwrap()
        })
    }

    #[test]
    fn simple_bivector_examples() {
        let a = Algebra::pga3();
        assert_eq!(
            simple_bivector_decomposition(&e(&a, &[1, 2])).unwrap(),
            vec![(vecq(&[0, 1, 0, 0]), vecq(&[0, 0, 1, 0]))]
        );

        let pairs = simple_bivector_decomposition(&(e(&a, &[1, 2]) + e(&a, &[0, 3]))).unwrap();
        let mut got = pairs.clone();
        got.sort_by_key(|(u, _)| u.0.iter().position(|c| *c != q(0)));
        assert_eq!(got, vec![(vecq(&[1, 0, 0, 0]), vecq(&[0, 0, 0, 1])), (vecq(&[0, 1, 0, 0]), vecq(&[0, 0, 1, 0]))]);

        assert!(simple_bivector_decomposition(&Multivector::zero(&a)).unwrap().is_empty());
        assert_eq!(simple_bivector_decomposition(&e(&a, &[1])), Err(GaError::NotGrade2));
    }

    #[test]
    fn simple_bivector_handles_null_pairs() {
        // Built from null vectors e0 ± e2 and e1 + e3, so some pivots land in the hyperbolic branch.
        let a = Algebra::<Q>::from_signature(2, 2, 0).unwrap();
        let u = e(&a, &[0]) + e(&a, &[2]);
        let v = e(&a, &[1]) + e(&a, &[3]);
        let w = e(&a, &[0]) - e(&a, &[2]);
        let b = u.wedge(&v) + v.wedge(&w) + e(&a, &[0, 1]).scale(&q(3));
        let pairs = simple_bivector_decomposition(&b).unwrap();
        assert!(pairs.len() <= 2);
        for (u, v) in &pairs {
            assert_eq!(a.form().bilinear(u, v).unwrap(), q(0));
        }
        assert_eq!(product_sum(&a, &pairs), b);
    }

    #[test]
    fn bivector_split_examples() {
        let a = Algebra::pga3();
        let origin = a.coordinate_complement().unwrap();
        let split = bivector_split(&(e(&a, &[1, 2]) + e(&a, &[0, 1])), &origin).unwrap();
        assert_eq!(split, BivectorSplit { rotational: e(&a, &[1, 2]), ideal_vector: vecq(&[0, -1, 0, 0]) });
        let split = bivector_split(&e(&a, &[1, 2]), &origin).unwrap();
        assert_eq!(split.ideal_vector, vecq(&[0, 0, 0, 0]));
        let split = bivector_split(&e(&a, &[0, 3]), &origin).unwrap();
        assert!(split.rotational.is_zero());
        assert_eq!(split.ideal_vector, vecq(&[0, 0, 0, -1]));
        assert_eq!(bivector_split(&e(&a, &[1]), &origin), Err(GaError::NotGrade2));
    }

    #[test]
    fn lie_table_examples() {
        let a = Algebra::pga3();
        let basis: Vec<_> = [[2, 3], [3, 1], [1, 2], [0, 1], [0, 2], [0, 3]]
            .iter()
            .map(|ix| {
                let sign = if ix[0] < ix[1] { 1 } else { -1 };
                e(&a, &[ix[0].min(ix[1]), ix[0].max(ix[1])]).scale(&q(sign))
            })
            .collect();
        let table = lie_structure_table(&a, &basis).unwrap();
        let bracket = table.bracket(0, 1);
        assert_eq!(bracket.iter().filter(|c| **c != q(0)).count(), 1);
        assert_ne!(bracket[2], q(0));
        for i in 3..6 {
            for j in 3..6 {
                assert!(table.bracket(i, j).iter().all(|c| *c == q(0)));
            }
        }
        for i in 0..6 {
            assert!(table.bracket(i, i).iter().all(|c| *c == q(0)));
        }
        assert!(matches!(lie_structure_table(&a, &basis[..5]), Err(GaError::NotSpanning { rank: 5, needed: 6 })));
    }
}
