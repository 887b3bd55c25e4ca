//! Playfair decomposition of multivectors and the structure around it: the
//! derivation `D_W`, the ideal `Cl(V)e0`, the quotient algebra `Cl(V/F·e0)`
//! and the twisted trivial extension `Cl(W) ⋉_α Cl(W)`.
//!
//! A complement `W` of `F·e0` is handled through its split-adapted basis
//! `w_i = e_i + c_i·e0`. The map `T: e_i ↦ w_i, e0 ↦ e0` is an orthogonal
//! transformation fixing `e0`, so `Cl(T⁻¹)` rewrites any element in the
//! split blade basis, where the decomposition is read off.

use std::sync::Arc;

use crate::clifford::{Algebra, Blade, LinearEndo, Multivector};
use crate::error::{GaError, Result};
use crate::quadratic_space::{Complement, Subspace, Vector};
use crate::scalar::Scalar;

/// `X = at_w + ideal_cofactor·e0` with both parts in `Cl(W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlayfairSplit<S: Scalar> {
    pub at_w: Multivector<S>,
    pub ideal_cofactor: Multivector<S>,
}

impl<S: Scalar> PlayfairSplit<S> {
    /// The part at infinity, `ideal_cofactor·e0`.
    pub fn ideal_part(&self) -> Multivector<S> {
        let alg = self.at_w.algebra();
        &self.ideal_cofactor * Multivector::e0(alg).expect("split of a degenerate algebra")
    }

    pub fn reconstruct(&self) -> Multivector<S> {
        &self.at_w + self.ideal_part()
    }
}

/// An element `(r, m)` of `Cl(W) ⋉_α Cl(W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedPair<S: Scalar> {
    pub r: Multivector<S>,
    pub m: Multivector<S>,
}

/// Applies the Clifford extension of the linear map sending `e_i` to
/// `images[i]`, assumed to be an isometry.
fn extend_apply<S: Scalar>(images: &[Multivector<S>], x: &Multivector<S>) -> Multivector<S> {
    let alg = x.algebra();
    x.terms().fold(Multivector::zero(alg), |acc, (b, c)| {
        let img = b.indices().fold(Multivector::one(alg), |p, i| p * &images[i]);
        acc + img.scale(c)
    })
}

/// Images of the basis under `e_i ↦ e_i + sign·c_i·e0`; `e0` maps to
/// `e0_image`.
fn shifted_images<S: Scalar>(
    alg: &Arc<Algebra<S>>,
    comp: &Complement<S>,
    sign: &S,
    e0_image: Multivector<S>,
) -> Vec<Multivector<S>> {
    let e0 = comp.e0();
    (0..alg.dim())
        .map(|i| {
            if i == e0 {
                e0_image.clone()
            } else {
                Multivector::from_terms(
                    alg,
                    [(Blade::vector(i), S::one()), (Blade::vector(e0), sign.clone() * comp.shift(i).clone())],
                )
            }
        })
        .collect()
}

fn check<S: Scalar>(x: &Multivector<S>, comp: &Complement<S>) -> Result<usize> {
    x.algebra().check_complement(comp)?;
    Ok(comp.e0())
}

/// `Cl(T⁻¹)(x)`: coordinates of `x` in the split blade basis of `comp`.
pub fn to_split_basis<S: Scalar>(x: &Multivector<S>, comp: &Complement<S>) -> Result<Multivector<S>> {
    let e0 = check(x, comp)?;
    let alg = x.algebra();
    let images = shifted_images(alg, comp, &-S::one(), Multivector::basis_vector(alg, e0));
    Ok(extend_apply(&images, x))
}

/// `Cl(T)(x)`: inverse of [`to_split_basis`].
pub fn from_split_basis<S: Scalar>(x: &Multivector<S>, comp: &Complement<S>) -> Result<Multivector<S>> {
    let e0 = check(x, comp)?;
    let alg = x.algebra();
    let images = shifted_images(alg, comp, &S::one(), Multivector::basis_vector(alg, e0));
    Ok(extend_apply(&images, x))
}

/// `Cl(π_W)(x)` computed directly as the Clifford extension of the Playfair
/// projection `π_W = ω_W ∘ π`.
pub fn playfair_projection<S: Scalar>(x: &Multivector<S>, comp: &Complement<S>) -> Result<Multivector<S>> {
    check(x, comp)?;
    let alg = x.algebra();
    let images = shifted_images(alg, comp, &S::one(), Multivector::zero(alg));
    Ok(extend_apply(&images, x))
}

/// Whether `x ∈ Cl(W)`.
pub fn in_complement_algebra<S: Scalar>(x: &Multivector<S>, comp: &Complement<S>) -> Result<bool> {
    Ok(!to_split_basis(x, comp)?.mentions(comp.e0()))
}

/// Splits a coordinate-basis element into its `e0`-free part and the
/// cofactor `Y` with `(e0 terms) = Y·e0`.
fn split_coordinate<S: Scalar>(x: &Multivector<S>, e0: usize) -> (Multivector<S>, Multivector<S>) {
    let alg = x.algebra();
    let free = x.filter(|b| !b.contains(e0));
    let cofactor = Multivector::from_terms(
        alg,
        x.terms().filter(|(b, _)| b.contains(e0)).map(|(b, c)| {
            // e_S = ± e_{S∖0} e0: moving e0 to the end passes every larger index.
            let passes = b.indices().filter(|&i| i > e0).count();
            (b.without(e0), if passes % 2 == 1 { -c.clone() } else { c.clone() })
        }),
    );
    (free, cofactor)
}

/// The Playfair decomposition `x = Cl(π_W)(x) + Y·e0`.
pub fn decompose<S: Scalar>(x: &Multivector<S>, comp: &Complement<S>) -> Result<PlayfairSplit<S>> {
    let e0 = check(x, comp)?;
    let (free, cofactor) = split_coordinate(&to_split_basis(x, comp)?, e0);
    Ok(PlayfairSplit { at_w: from_split_basis(&free, comp)?, ideal_cofactor: from_split_basis(&cofactor, comp)? })
}

/// `D_W(x) = x − Cl(π_W)(x)`.
pub fn derivation_d<S: Scalar>(comp: &Complement<S>, x: &Multivector<S>) -> Result<Multivector<S>> {
    Ok(x - playfair_projection(x, comp)?)
}

/// `D_W` as a matrix on the blade basis.
pub fn derivation_endo<S: Scalar>(alg: &Arc<Algebra<S>>, comp: &Complement<S>) -> Result<LinearEndo<S>> {
    alg.check_complement(comp)?;
    Ok(LinearEndo::from_fn(alg, |b| {
        derivation_d(comp, &Multivector::from_blade(alg, b, S::one())).expect("checked complement")
    }))
}

/// `Cl(π): Cl(V) → Cl(V/F·e0)`. Blades containing `e0` vanish; the others
/// are relabelled onto the quotient's consecutive basis.
pub fn quotient_project<S: Scalar>(x: &Multivector<S>) -> Result<Multivector<S>> {
    let alg = x.algebra();
    let quotient = alg.quotient()?;
    Ok(Multivector::from_terms(
        &quotient,
        x.terms().filter_map(|(b, c)| alg.quotient_blade(*b).map(|qb| (qb, c.clone()))),
    ))
}

/// `Cl(ω_W)`: the canonical isomorphism `Cl(V/F·e0) → Cl(W)`.
pub fn lift_from_quotient<S: Scalar>(
    alg: &Arc<Algebra<S>>,
    q: &Multivector<S>,
    comp: &Complement<S>,
) -> Result<Multivector<S>> {
    alg.check_complement(comp)?;
    let quotient = alg.quotient()?;
    if !q.algebra().same_as(&quotient) {
        return Err(GaError::AlgebraMismatch);
    }
    let coord = Multivector::from_terms(
        alg,
        q.terms().map(|(b, c)| (alg.lift_quotient_blade(*b).expect("degenerate algebra"), c.clone())),
    );
    from_split_basis(&coord, comp)
}

/// Membership in the two-sided ideal `Cl(V)e0`.
pub fn is_in_ideal<S: Scalar>(x: &Multivector<S>) -> Result<bool> {
    Ok(quotient_project(x)?.is_zero())
}

pub fn to_twisted_pair<S: Scalar>(x: &Multivector<S>, comp: &Complement<S>) -> Result<TwistedPair<S>> {
    let split = decompose(x, comp)?;
    Ok(TwistedPair { r: split.at_w, m: split.ideal_cofactor })
}

/// `(r, m) ↦ r + m·e0`. Both components must lie in `Cl(W)`.
pub fn from_twisted_pair<S: Scalar>(p: &TwistedPair<S>, comp: &Complement<S>) -> Result<Multivector<S>> {
    for part in [&p.r, &p.m] {
        if !in_complement_algebra(part, comp)? {
            return Err(GaError::NotInComplement);
        }
    }
    let e0 = Multivector::e0(p.r.algebra())?;
    Ok(&p.r + &p.m * e0)
}

/// `(r₁, m₁)(r₂, m₂) = (r₁r₂, r₁m₂ + m₁α(r₂))`.
pub fn twisted_mul<S: Scalar>(p: &TwistedPair<S>, q: &TwistedPair<S>) -> Result<TwistedPair<S>> {
    let r = p.r.try_mul(&q.r)?;
    let m = p.r.try_mul(&q.m)?.try_add(&p.m.try_mul(&q.r.grade_involution())?)?;
    Ok(TwistedPair { r, m })
}

/// `x ↦ λ·x·e0`, an isomorphism from `Cl(W)` onto the ideal for `λ ≠ 0`.
pub fn right_mul_e0<S: Scalar>(x: &Multivector<S>, lambda: &S) -> Result<Multivector<S>> {
    if lambda.is_negligible() {
        return Err(GaError::ZeroScale);
    }
    let e0 = Multivector::e0(x.algebra())?;
    Ok((x * e0).scale(lambda))
}

/// Recovers the complement `W` whose `D_W` is the given derivation:
/// `W = span{e_i − d(e_i) : i ≠ e0}`.
pub fn complement_from_derivation<S: Scalar>(d: &LinearEndo<S>) -> Result<Complement<S>> {
    let alg = d.algebra();
    let e0 = alg.require_e0()?;
    let e0v = Multivector::basis_vector(alg, e0);
    if d.apply(&e0v)? != e0v {
        return Err(GaError::DoesNotFixE0);
    }
    let n = alg.blade_count() as u32;
    for m in 0..n {
        if !is_in_ideal(d.image_of(Blade(m)))? {
            return Err(GaError::ImageNotInIdeal);
        }
    }
    if !d.image_of(Blade::SCALAR).is_zero() {
        return Err(GaError::NotADerivation("d(1) ≠ 0".into()));
    }
    for i in 0..alg.dim() {
        if !d.image_of(Blade::vector(i)).is_homogeneous(1) {
            return Err(GaError::NotADerivation(format!("e{i} is not mapped into V")));
        }
    }
    // With d(1) = 0, Leibniz on (generator, blade) pairs implies it on all
    // pairs: writing A = vA', d(vA'B) = v·d(A'B) + d(v)A'B unfolds by
    // induction on A.
    for a in (0..alg.dim()).map(|i| 1u32 << i) {
        for b in 0..n {
            let (ba, bb) = (Blade(a), Blade(b));
            let x = Multivector::from_blade(alg, ba, S::one());
            let y = Multivector::from_blade(alg, bb, S::one());
            let lhs = d.apply(&(&x * &y))?;
            let rhs = &x * d.image_of(bb) + d.image_of(ba) * &y;
            if !lhs.approx_eq(&rhs) {
                return Err(GaError::NotADerivation(format!("Leibniz fails on ({ba}, {bb})")));
            }
        }
    }
    let basis = (0..alg.dim())
        .filter(|&i| i != e0)
        .map(|i| {
            let v = Multivector::basis_vector(alg, i) - d.image_of(Blade::vector(i));
            v.to_vector().expect("grade-1 image")
        })
        .collect::<Vec<Vector<S>>>();
    Complement::from_subspace(alg.form(), e0, Subspace::new(alg.dim(), basis)?)
}

/// Grade-parity split `x = x_even + x_odd`.
pub fn even_odd_split<S: Scalar>(x: &Multivector<S>) -> (Multivector<S>, Multivector<S>) {
    (x.even_part(), x.odd_part())
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

    fn point(alg: &Arc<Algebra<Q>>, p: [i64; 3]) -> Complement<Q> {
        alg.complement_at_point(&p.map(q)).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let a = Algebra::pga3();
        let origin = a.coordinate_complement().unwrap();
        let x = e(&a, &[0]).scale(&q(2)) + e(&a, &[1]) + e(&a, &[0, 1]).scale(&q(3));
        let split = decompose(&x, &origin).unwrap();
        assert_eq!(split.at_w, e(&a, &[1]));
        assert_eq!(split.ideal_cofactor, s(&a, 2) - e(&a, &[1]).scale(&q(3)));
        assert_eq!(split.reconstruct(), x);

        let pseudo = e(&a, &[1, 2, 3]);
        let split = decompose(&pseudo, &point(&a, [0, 0, 0])).unwrap();
        assert_eq!(split.at_w, pseudo);
        assert!(split.ideal_cofactor.is_zero());

        let p = point(&a, [1, 0, 0]);
        let split = decompose(&e(&a, &[1]), &p).unwrap();
        assert_eq!(split.at_w, e(&a, &[1]) - e(&a, &[0]));
        assert_eq!(split.ideal_cofactor, s(&a, 1));
    }

    #[test]
    fn projection_routes_agree() {
        let a = Algebra::pga3();
        let p = point(&a, [2, -1, 3]);
        for m in 0..16 {
            let x = Multivector::from_blade(&a, Blade(m), q(1));
            assert_eq!(decompose(&x, &p).unwrap().at_w, playfair_projection(&x, &p).unwrap());
        }
    }

    #[test]
    fn derivation_examples() {
        let a = Algebra::pga3();
        let origin = a.coordinate_complement().unwrap();
        assert_eq!(derivation_d(&origin, &e(&a, &[0])).unwrap(), e(&a, &[0]));
        assert!(derivation_d(&origin, &e(&a, &[1])).unwrap().is_zero());
        assert_eq!(derivation_d(&point(&a, [1, 0, 0]), &e(&a, &[1])).unwrap(), e(&a, &[0]));
    }

    #[test]
    fn ideal_membership() {
        let a = Algebra::pga3();
        assert!(is_in_ideal(&e(&a, &[0])).unwrap());
        assert!(is_in_ideal(&e(&a, &[0, 1])).unwrap());
        assert!(!is_in_ideal(&(s(&a, 1) + e(&a, &[0]))).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let a = Algebra::pga3();
        let qa = a.quotient().unwrap();
        assert!(quotient_project(&e(&a, &[0])).unwrap().is_zero());
        let img = quotient_project(&(e(&a, &[1]) + e(&a, &[0]).scale(&q(2)))).unwrap();
        assert_eq!(img, Multivector::basis_vector(&qa, 0));
        assert!(matches!(
            quotient_project(&Multivector::one(&Algebra::<Q>::from_signature(3, 0, 0).unwrap())),
            Err(GaError::NoDegenerateGenerator)
        ));
    }

    #[test]
    fn lift_is_a_section_of_the_quotient() {
        let a = Algebra::pga3();
        let qa = a.quotient().unwrap();
        let p = point(&a, [1, 2, -1]);
        for m in 0..8 {
            let b = Multivector::from_blade(&qa, Blade(m), q(1));
            let lifted = lift_from_quotient(&a, &b, &p).unwrap();
            assert!(in_complement_algebra(&lifted, &p).unwrap());
            assert_eq!(quotient_project(&lifted).unwrap(), b);
        }
    }

    #[test]
    fn twisted_examples() {
        let a = Algebra::pga3();
        let origin = a.coordinate_complement().unwrap();
        let one = to_twisted_pair(&s(&a, 1), &origin).unwrap();
        assert_eq!(one, TwistedPair { r: s(&a, 1), m: s(&a, 0) });
        let p = TwistedPair { r: e(&a, &[1]), m: s(&a, 1) };
        assert_eq!(from_twisted_pair(&p, &origin).unwrap(), e(&a, &[1]) + e(&a, &[0]));

        let x = TwistedPair { r: e(&a, &[1, 2]) + s(&a, 3), m: e(&a, &[3]) };
        assert_eq!(twisted_mul(&one, &x).unwrap(), x);
        let e1 = TwistedPair { r: e(&a, &[1]), m: s(&a, 0) };
        assert_eq!(twisted_mul(&e1, &e1).unwrap(), one);
        let e2 = TwistedPair { r: e(&a, &[2]), m: s(&a, 0) };
        assert_eq!(twisted_mul(&p, &e2).unwrap(), TwistedPair { r: e(&a, &[1, 2]), m: -e(&a, &[2]) });

        let bad = TwistedPair { r: e(&a, &[0]), m: s(&a, 0) };
        assert_eq!(from_twisted_pair(&bad, &origin), Err(GaError::NotInComplement));
    }

    #[test]
    fn right_mul_examples() {
        let a = Algebra::pga3();
        assert_eq!(right_mul_e0(&s(&a, 1), &q(1)).unwrap(), e(&a, &[0]));
        assert_eq!(right_mul_e0(&e(&a, &[1]), &q(2)).unwrap(), e(&a, &[0, 1]).scale(&q(-2)));
        assert_ne!(right_mul_e0(&e(&a, &[1]), &q(1)).unwrap(), right_mul_e0(&e(&a, &[1]), &q(2)).unwrap());
        assert_eq!(right_mul_e0(&e(&a, &[1]), &q(0)), Err(GaError::ZeroScale));
    }

    #[test]
    fn derivation_round_trip_examples() {
        let a = Algebra::pga3();
        let origin = a.coordinate_complement().unwrap();
        let d = derivation_endo(&a, &origin).unwrap();
        let w = complement_from_derivation(&d).unwrap();
        assert_eq!(w.canonical_section(), origin.canonical_section());

        // d(e1) = e0, d(e2) = d(e3) = 0, d(e0) = e0, extended by Leibniz.
        let p = point(&a, [1, 0, 0]);
        let d = derivation_endo(&a, &p).unwrap();
        assert_eq!(d.image_of(Blade::vector(1)), &e(&a, &[0]));
        assert!(d.image_of(Blade::vector(2)).is_zero());
        let w = complement_from_derivation(&d).unwrap();
        assert_eq!(w.canonical_section(), p.canonical_section());

        assert_eq!(complement_from_derivation(&LinearEndo::zero(&a)), Err(GaError::DoesNotFixE0));
    }

    #[test]
    fn rejects_non_derivations() {
        let a = Algebra::pga3();
        // Fixes e0 and lands in the ideal but ignores the Leibniz rule on e0e1.
        let d = LinearEndo::from_fn(&a, |b| if b == Blade::vector(0) { e(&a, &[0]) } else { Multivector::zero(&a) });
        assert!(matches!(complement_from_derivation(&d), Err(GaError::NotADerivation(_))));
        let id = LinearEndo::identity(&a);
        assert_eq!(complement_from_derivation(&id), Err(GaError::ImageNotInIdeal));

        // In Cl(0,0,2) a nonzero d(1) = e01 survives every generator pair
        // (e01 is annihilated by both generators), so it needs its own check.
        let n = Algebra::<Q>::from_signature(0, 0, 2).unwrap();
        let d = LinearEndo::from_fn(&n, |b| match b.mask() {
            0 | 3 => e(&n, &[0, 1]),
            1 => e(&n, &[0]),
            _ => Multivector::zero(&n),
        });
        assert!(matches!(complement_from_derivation(&d), Err(GaError::NotADerivation(m)) if m.contains("d(1)")));
    }

    #[test]
    fn even_odd_examples() {
        let a = Algebra::pga3();
        assert_eq!(even_odd_split(&(s(&a, 1) + e(&a, &[1]))), (s(&a, 1), e(&a, &[1])));
        let even_count = (0..16u32).filter(|m| m.count_ones() % 2 == 0).count();
        assert_eq!(even_count, 8);
        let x = e(&a, &[0, 2]) + e(&a, &[1, 2]);
        assert_eq!(x.grade_involution(), x);
    }
}
