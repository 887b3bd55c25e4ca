//! Executable checks of the decomposition results, one suite per lemma or
//! theorem. Every suite runs in exact rational arithmetic on a seeded RNG,
//! so a given seed always reproduces the same samples.

use std::sync::Arc;
use std::thread;

use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::clifford::{Algebra, Blade, LinearEndo, Multivector};
use crate::linalg::Matrix;
use crate::pga3d::{self, Plane, PointP};
use crate::playfair::{self, from_split_basis};
use crate::quadratic_space::{Complement, Subspace, Vector};
use crate::scalar::{Rational, Scalar};
use crate::structure;

type Q = Rational;
type Alg = Arc<Algebra<Q>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: &'static str,
    pub statement: &'static str,
    pub status: Status,
    /// What was checked, or why it failed or was skipped.
    pub detail: String,
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {:<24} {} ({})", self.name, self.statement, self.detail)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    /// Random samples per property.
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self { seed: 0x9a_ca1c, samples: 100 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Needs {
    Nothing,
    Degenerate,
    Pga3,
}

pub struct Suite {
    pub name: &'static str,
    pub statement: &'static str,
    needs: Needs,
    run: fn(&mut Ctx) -> Outcome,
}

type Outcome = Result<String, String>;

struct Ctx {
    alg: Alg,
    rng: StdRng,
    samples: usize,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Random-sample generators shared by the suites and the test code.
pub mod gen {
    use super::*;

    /// `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 5`.
    pub fn rational(rng: &mut impl Rng) -> Q {
        Q::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())
    }

    pub fn nonzero_rational(rng: &mut impl Rng) -> Q {
        loop {
            let q = rational(rng);
            if !q.is_negligible() {
                return q;
            }
        }
    }

    /// Each blade present with probability one half.
    pub fn multivector(alg: &Alg, rng: &mut impl Rng) -> Multivector<Q> {
        let mut terms = Vec::new();
        for m in 0..alg.blade_count() as u32 {
            if rng.gen_bool(0.5) {
                terms.push((Blade(m), rational(rng)));
            }
        }
        Multivector::from_terms(alg, terms)
    }

    pub fn vector(n: usize, rng: &mut impl Rng) -> Vector<Q> {
        Vector((0..n).map(|_| rational(rng)).collect())
    }

    pub fn grade(alg: &Alg, k: usize, rng: &mut impl Rng) -> Multivector<Q> {
        Multivector::from_terms(
            alg,
            (0..alg.blade_count() as u32)
                .map(Blade)
                .filter(|b| b.grade() == k)
                .map(|b| (b, rational(rng)))
                .collect::<Vec<_>>(),
        )
    }

    pub fn point(alg: &Alg, rng: &mut impl Rng) -> Vec<Q> {
        (0..alg.dim() - 1).map(|_| rational(rng)).collect()
    }

    pub fn complement(alg: &Alg, rng: &mut impl Rng) -> Complement<Q> {
        alg.complement_at_point(&point(alg, rng)).expect("degenerate algebra")
    }

    /// A random element of `Cl(W)`: random `e0`-free coordinates in the
    /// split blade basis.
    pub fn in_complement(alg: &Alg, comp: &Complement<Q>, rng: &mut impl Rng) -> Multivector<Q> {
        let e0 = comp.e0();
        let x = multivector(alg, rng).into_terms().into_iter().filter(|(b, _)| !b.contains(e0));
        from_split_basis(&Multivector::from_terms(alg, x), comp).expect("matching complement")
    }

    pub fn vector_in_complement(alg: &Alg, comp: &Complement<Q>, rng: &mut impl Rng) -> Multivector<Q> {
        let x = in_complement(alg, comp, rng);
        x.grade_part(1).expect("grade 1 exists")
    }

    pub fn bivector_in_complement(alg: &Alg, comp: &Complement<Q>, rng: &mut impl Rng) -> Multivector<Q> {
        let x = grade(alg, 2, rng).into_terms().into_iter().filter(|(b, _)| !b.contains(comp.e0()));
        from_split_basis(&Multivector::from_terms(alg, x), comp).expect("matching complement")
    }

    /// `v₁⋯v_k·(1 + m·e0)` with nonnull `vᵢ ∈ W` and `m ∈ Cl(W)`.
    pub fn unit(alg: &Alg, comp: &Complement<Q>, rng: &mut impl Rng) -> Multivector<Q> {
        let mut r = Multivector::scalar(alg, nonzero_rational(rng));
        for _ in 0..rng.gen_range(0..=3) {
            let v = loop {
                let v = vector_in_complement(alg, comp, rng);
                if !(&v * &v).scalar_part().is_negligible() {
                    break v;
                }
            };
            r = r * v;
        }
        let m = in_complement(alg, comp, rng);
        r * (Multivector::one(alg) + m * Multivector::e0(alg).expect("degenerate algebra"))
    }
}

/// Product of basis blades by rewriting the concatenated index word:
/// adjacent transpositions flip the sign, adjacent repeats contract
/// against the metric. Shares nothing with the bitmask product.
pub fn rewrite_product(metric: &[Q], a: Blade, b: Blade) -> (Blade, Q) {
    let mut word: Vec<usize> = a.indices().chain(b.indices()).collect();
    let mut coef = Q::one();
    let mut k = 0;
    while k + 1 < word.len() {
        if word[k] > word[k + 1] {
            word.swap(k, k + 1);
            coef = -coef;
            k = k.saturating_sub(1);
        } else if word[k] == word[k + 1] {
            coef *= metric[word[k]].clone();
            word.drain(k..k + 2);
            k = k.saturating_sub(1);
        } else {
            k += 1;
        }
    }
    (Blade::from_indices(&word), coef)
}

/// The se(3) generators as 4×4 homogeneous matrices: rotations `L_x, L_y,
/// L_z` then translations `T_x, T_y, T_z`.
pub fn se3_generators() -> Vec<[[i64; 4]; 4]> {
    let mut gens = Vec::new();
    for (i, j) in [(2, 1), (0, 2), (1, 0)] {
        let mut m = [[0; 4]; 4];
        m[i][j] = 1;
        m[j][i] = -1;
        gens.push(m);
    }
    for i in 0..3 {
        let mut m = [[0; 4]; 4];
        m[i][3] = 1;
        gens.push(m);
    }
    gens
}

/// Coordinates of an se(3) matrix in [`se3_generators`].
pub fn se3_coords(m: &[[i64; 4]; 4]) -> [i64; 6] {
    [m[2][1], m[0][2], m[1][0], m[0][3], m[1][3], m[2][3]]
}

pub fn matrix_commutator(a: &[[i64; 4]; 4], b: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j] - b[i][k] * a[k][j]).sum();
        }
    }
    out
}

/// The bivectors matching `−L_x, −L_y, −L_z, −T_x, −T_y, −T_z`:
/// `e23, e31, e12, e01, e02, e03`.
pub fn se3_bivector_basis(alg: &Alg) -> Vec<Multivector<Q>> {
    let b = |i, j, s: i64| Multivector::from_blade(alg, Blade::from_indices(&[i, j]), Q::from_i64(s));
    vec![b(2, 3, 1), b(1, 3, -1), b(1, 2, 1), b(0, 1, 1), b(0, 2, 1), b(0, 3, 1)]
}

fn is_pga3(alg: &Alg) -> bool {
    alg.has_identity_basis() && alg.e0() == Some(0) && alg.metric() == [0, 1, 1, 1].map(Q::from_i64)
}

fn all_blades(alg: &Alg) -> impl Iterator<Item = Multivector<Q>> + '_ {
    (0..alg.blade_count() as u32).map(move |m| Multivector::from_blade(alg, Blade(m), Q::one()))
}

fn e0(alg: &Alg) -> Multivector<Q> {
    Multivector::e0(alg).expect("degenerate algebra")
}

fn quotient_form(c: &mut Ctx) -> Outcome {
    let form = c.alg.form().clone();
    let n = form.dim();
    let rad = form.radical();
    form.quotient_form(&rad).map_err(err)?;
    for _ in 0..c.samples {
        let (v, w) = (gen::vector(n, &mut c.rng), gen::vector(n, &mut c.rng));
        let mut shifted = (v.clone(), w.clone());
        for b in rad.basis() {
            shifted.0 = shifted.0.add(&b.scale(&gen::rational(&mut c.rng)));
            shifted.1 = shifted.1.add(&b.scale(&gen::rational(&mut c.rng)));
        }
        let lhs = form.bilinear(&shifted.0, &shifted.1).map_err(err)?;
        ensure(lhs == form.bilinear(&v, &w).map_err(err)?, || format!("B changes on the class of {v:?}"))?;
    }
    // Converse: a line that pairs nonzero with something is not radical,
    // and B then depends on the representative.
    let mut witnesses = 0;
    for i in (0..n).filter(|&i| !form.is_degenerate_basis_vector(i)) {
        let u = Vector::basis(n, i);
        let line = Subspace::new(n, vec![u.clone()]).map_err(err)?;
        ensure(form.quotient_form(&line).is_err(), || format!("span(e{i}) accepted as radical"))?;
        let v = Vector::zero(n);
        ensure(form.bilinear(&v.add(&u), &u).map_err(err)? != form.bilinear(&v, &u).map_err(err)?, || {
            format!("B well defined modulo non-radical e{i}")
        })?;
        witnesses += 1;
    }
    Ok(format!("radical dim {}, {} samples, {witnesses} non-radical witnesses", rad.dim(), c.samples))
}

fn orthogonal_complements(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let n = alg.dim();
    let e0 = alg.require_e0().map_err(err)?;
    let e0v = Vector::basis(n, e0);
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let form = alg.form();
        let basis = comp.basis();
        for w in &basis {
            ensure(form.bilinear(w, &e0v).map_err(err)?.is_negligible(), || "W not orthogonal to e0".into())?;
        }
        let mut all = basis.clone();
        all.push(e0v.clone());
        ensure(Subspace::new(n, all).is_ok(), || "W + F·e0 is not direct".into())?;
        let pi_omega = comp.projection().mul(&comp.canonical_section());
        ensure(pi_omega == Matrix::identity(n - 1), || "π∘ω_W is not the identity".into())?;
        // Any other basis of W yields the same section.
        let mixed: Vec<Vector<Q>> = (0..basis.len())
            .map(|k| {
                let mut v = basis[k].clone();
                for (j, b) in basis.iter().enumerate() {
                    if j > k {
                        v = v.add(&b.scale(&gen::rational(&mut c.rng)));
                    }
                }
                v
            })
            .collect();
        let again = Complement::from_subspace(form, e0, Subspace::new(n, mixed).map_err(err)?).map_err(err)?;
        ensure(again.canonical_section() == comp.canonical_section(), || "section depends on the basis".into())?;
    }
    Ok(format!("{} random complements", c.samples))
}

fn playfair_vector(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let n = alg.dim();
    let e0 = alg.require_e0().map_err(err)?;
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let v = gen::vector(n, &mut c.rng);
        let (w, lambda) = comp.playfair_project_vector(&v).map_err(err)?;
        ensure(comp.contains(&w), || format!("{w:?} not in W"))?;
        ensure(w.add(&Vector::basis(n, e0).scale(&lambda)) == v, || "v ≠ w + λe0".into())?;
        let mut cols: Vec<Vec<Q>> = comp.basis().into_iter().map(|b| b.0).collect();
        cols.push(Vector::basis(n, e0).0);
        let m = Matrix::from_columns(&cols);
        ensure(m.rank() == n, || "decomposition not unique".into())?;
        let sol = m.solve(&v.0).ok_or("no solution")?;
        ensure(sol[n - 1] == lambda, || "re-solved λ differs".into())?;
    }
    Ok(format!("{} vectors", c.samples))
}

fn playfair_axiom(c: &mut Ctx) -> Outcome {
    for _ in 0..c.samples {
        let p = PointP::new(gen::rational(&mut c.rng), gen::rational(&mut c.rng), gen::rational(&mut c.rng));
        let plane = loop {
            if let Ok(pl) = Plane::new(gen::vector(4, &mut c.rng)) {
                break pl;
            }
        };
        let par = pga3d::parallel_through(&p, &plane);
        ensure(pga3d::incident(&p, &par), || format!("{par} misses the point"))?;
        ensure(par.normal() == plane.normal(), || "parallel class changed".into())?;
        // Incidence of plane + λe0 is linear in λ with coefficient 1.
        let m = Matrix::from_rows(&[vec![Q::one()]]);
        ensure(m.rank() == 1, || "λ not unique".into())?;
        let lambda = m.solve(&[-pga3d::incidence_value(&p, &plane)]).ok_or("no λ")?;
        let shifted = plane.vector().add(&Vector::basis(4, 0).scale(&lambda[0]));
        ensure(&shifted == par.vector(), || "result is not the unique e0-shift".into())?;
    }
    Ok(format!("{} point/plane pairs", c.samples))
}

fn commuting_e0(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let e0 = e0(&alg);
    for x in all_blades(&alg) {
        ensure(&e0 * &x == x.grade_involution() * &e0, || format!("fails on blade {x}"))?;
    }
    for _ in 0..c.samples {
        let x = gen::multivector(&alg, &mut c.rng);
        ensure(&e0 * &x == x.grade_involution() * &e0, || format!("fails on {x}"))?;
    }
    Ok(format!("{} blades, {} random", alg.blade_count(), c.samples))
}

/// Re-solves `x = Σ a_S·w_S + Σ b_S·w_S·e0` directly.
fn resolve(x: &Multivector<Q>, comp: &Complement<Q>) -> Result<(Multivector<Q>, Multivector<Q>), String> {
    let alg = x.algebra();
    let e0i = comp.e0();
    let subsets: Vec<Blade> = (0..alg.blade_count() as u32).map(Blade).filter(|b| !b.contains(e0i)).collect();
    let ws: Vec<Multivector<Q>> = subsets
        .iter()
        .map(|&b| from_split_basis(&Multivector::from_blade(alg, b, Q::one()), comp).map_err(err))
        .collect::<Result<_, _>>()?;
    let mut cols: Vec<Vec<Q>> = ws.iter().map(|w| w.coords()).collect();
    cols.extend(ws.iter().map(|w| (w * e0(alg)).coords()));
    let m = Matrix::from_columns(&cols);
    if m.rank() != alg.blade_count() {
        return Err("split blades do not form a basis".into());
    }
    let sol = m.solve(&x.coords()).ok_or("no solution")?;
    let k = ws.len();
    let combine = |coef: &[Q]| ws.iter().zip(coef).fold(Multivector::zero(alg), |acc, (w, c)| acc + w.scale(c));
    Ok((combine(&sol[..k]), combine(&sol[k..])))
}

fn playfair_decomposition(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let points = (c.samples / 20).max(2);
    for _ in 0..points {
        let comp = gen::complement(&alg, &mut c.rng);
        for _ in 0..20 {
            let x = gen::multivector(&alg, &mut c.rng);
            let s = playfair::decompose(&x, &comp).map_err(err)?;
            ensure(s.reconstruct() == x, || format!("{x} not reconstructed"))?;
            ensure(playfair::in_complement_algebra(&s.at_w, &comp).map_err(err)?, || "at_w ∉ Cl(W)".into())?;
            ensure(playfair::in_complement_algebra(&s.ideal_cofactor, &comp).map_err(err)?, || "Y ∉ Cl(W)".into())?;
            ensure(s.at_w == playfair::playfair_projection(&x, &comp).map_err(err)?, || "at_w ≠ Cl(π_W)(x)".into())?;
            let (a, y) = resolve(&x, &comp)?;
            ensure(a == s.at_w && y == s.ideal_cofactor, || format!("re-solve disagrees on {x}"))?;
        }
    }
    Ok(format!("{points} complements × 20 multivectors"))
}

fn ideal_equality(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let e0 = e0(&alg);
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let x = gen::multivector(&alg, &mut c.rng);
        let proj = playfair::playfair_projection(&x, &comp).map_err(err)?;
        ensure(&proj * &e0 == &x * &e0, || format!("Cl(π_W)(x)e0 ≠ xe0 for {x}"))?;
    }
    Ok(format!("{} samples", c.samples))
}

fn derivation(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let e0 = e0(&alg);
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let d = |x: &Multivector<Q>| playfair::derivation_d(&comp, x).map_err(err);
        ensure(d(&e0)? == e0, || "D_W(e0) ≠ e0".into())?;
        let (x, y) = (gen::multivector(&alg, &mut c.rng), gen::multivector(&alg, &mut c.rng));
        ensure(d(&(&x * &y))? == &x * d(&y)? + d(&x)? * &y, || format!("Leibniz fails on {x}, {y}"))?;
        ensure(d(&d(&x)?)? == d(&x)?, || "D_W not idempotent".into())?;
        let v = Multivector::from_vector(&alg, &gen::vector(alg.dim(), &mut c.rng)).map_err(err)?;
        let dv = d(&v)?;
        ensure(dv.is_homogeneous(1) && dv.terms().all(|(b, _)| *b == Blade::vector(comp.e0())), || {
            "D_W(v) ∉ F·e0".into()
        })?;
    }
    Ok(format!("{} samples", c.samples))
}

fn quotient_algebra(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let e0 = e0(&alg);
    let qp = |x: &Multivector<Q>| playfair::quotient_project(x).map_err(err);
    for _ in 0..c.samples {
        let (x, y) = (gen::multivector(&alg, &mut c.rng), gen::multivector(&alg, &mut c.rng));
        ensure(qp(&(&x * &y))? == qp(&x)? * qp(&y)?, || format!("Cl(π) not multiplicative on {x}, {y}"))?;
        let z = if c.rng.gen_bool(0.5) { &y * &e0 } else { y.clone() };
        let in_ideal = playfair::decompose(&z, &alg.coordinate_complement().map_err(err)?).map_err(err)?.at_w.is_zero();
        ensure(playfair::is_in_ideal(&z).map_err(err)? == in_ideal, || format!("kernel ≠ ideal at {z}"))?;
    }
    let quotient = alg.quotient().map_err(err)?;
    for m in 0..quotient.blade_count() as u32 {
        let b = Multivector::from_blade(&quotient, Blade(m), Q::one());
        let lifted = Multivector::from_blade(&alg, alg.lift_quotient_blade(Blade(m)).ok_or("lift")?, Q::one());
        ensure(qp(&lifted)? == b, || format!("{b} not hit"))?;
    }
    Ok(format!("{} samples, surjective on {} blades", c.samples, quotient.blade_count()))
}

fn ideal_proper(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let e0 = e0(&alg);
    let one = Multivector::one(&alg);
    ensure(!playfair::is_in_ideal(&one).map_err(err)?, || "1 lies in the ideal".into())?;
    ensure(!e0.is_zero(), || "ideal is trivial".into())?;
    for x in all_blades(&alg) {
        for y in all_blades(&alg) {
            ensure((&x * &e0 * &y * &e0).is_zero(), || format!("({x}e0)({y}e0) ≠ 0"))?;
        }
    }
    for _ in 0..c.samples {
        let (x, y) = (gen::multivector(&alg, &mut c.rng), gen::multivector(&alg, &mut c.rng));
        let m = &y * &e0;
        ensure(playfair::is_in_ideal(&(&x * &m)).map_err(err)?, || "not a left ideal".into())?;
        ensure(playfair::is_in_ideal(&(&m * &x)).map_err(err)?, || "not a right ideal".into())?;
    }
    // A nonnull vector is invertible, so it generates the whole algebra.
    if let Some(i) = (0..alg.dim()).find(|&i| !alg.metric()[i].is_negligible()) {
        structure::inverse(&Multivector::basis_vector(&alg, i)).map_err(err)?;
    }
    Ok(format!("square-zero on {} blade pairs, {} two-sided samples", alg.blade_count().pow(2), c.samples))
}

/// The derivation with `d(e_i) = λ_i·e0` and `d(e0) = e0`, extended to
/// blades by the Leibniz rule.
fn derivation_from_shifts(alg: &Alg, lambdas: &[Q]) -> LinearEndo<Q> {
    let e0i = alg.e0().expect("degenerate algebra");
    LinearEndo::from_fn(alg, |b| {
        let idx: Vec<usize> = b.indices().collect();
        let mut total = Multivector::zero(alg);
        for k in 0..idx.len() {
            let mut term = Multivector::one(alg);
            for (j, &i) in idx.iter().enumerate() {
                let f = if j == k {
                    let l = if i == e0i { Q::one() } else { lambdas[i].clone() };
                    Multivector::from_blade(alg, Blade::vector(e0i), l)
                } else {
                    Multivector::basis_vector(alg, i)
                };
                term = term * f;
            }
            total = total + term;
        }
        total
    })
}

fn complement_derivation(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let rounds = (c.samples / 5).max(4);
    for _ in 0..rounds {
        let comp = gen::complement(&alg, &mut c.rng);
        let d = playfair::derivation_endo(&alg, &comp).map_err(err)?;
        let back = playfair::complement_from_derivation(&d).map_err(err)?;
        ensure(back.canonical_section() == comp.canonical_section(), || "W → D → W changed W".into())?;

        let lambdas: Vec<Q> = (0..alg.dim()).map(|_| gen::rational(&mut c.rng)).collect();
        let d = derivation_from_shifts(&alg, &lambdas);
        let w = playfair::complement_from_derivation(&d).map_err(err)?;
        ensure(playfair::derivation_endo(&alg, &w).map_err(err)? == d, || "D → W → D changed D".into())?;
    }
    Ok(format!("{rounds} round trips each way"))
}

fn right_multiplication(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let e0i = alg.require_e0().map_err(err)?;
    let ideal_dim = (0..alg.blade_count() as u32).filter(|m| Blade(*m).contains(e0i)).count();
    for _ in 0..(c.samples / 10).max(3) {
        let comp = gen::complement(&alg, &mut c.rng);
        let lambda = gen::nonzero_rational(&mut c.rng);
        let images: Vec<Multivector<Q>> = (0..alg.blade_count() as u32)
            .map(Blade)
            .filter(|b| !b.contains(e0i))
            .map(|b| {
                let w = from_split_basis(&Multivector::from_blade(&alg, b, Q::one()), &comp).map_err(err)?;
                playfair::right_mul_e0(&w, &lambda).map_err(err)
            })
            .collect::<Result<_, _>>()?;
        for img in &images {
            ensure(playfair::is_in_ideal(img).map_err(err)?, || format!("{img} outside the ideal"))?;
        }
        let rank = Matrix::from_columns(&images.iter().map(|m| m.coords()).collect::<Vec<_>>()).rank();
        ensure(rank == images.len() && rank == ideal_dim, || format!("rank {rank}, ideal dim {ideal_dim}"))?;
        let other = lambda.clone() + Q::one();
        if !other.is_negligible() {
            let x = Multivector::one(&alg);
            ensure(
                playfair::right_mul_e0(&x, &lambda).map_err(err)? != playfair::right_mul_e0(&x, &other).map_err(err)?,
                || "distinct λ give the same map".into(),
            )?;
        }
    }
    Ok(format!("bijective onto the {ideal_dim}-dimensional ideal"))
}

fn canonical_isomorphisms(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let quotient = alg.quotient().map_err(err)?;
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let (a, b) = (gen::multivector(&quotient, &mut c.rng), gen::multivector(&quotient, &mut c.rng));
        let lift = |x: &Multivector<Q>| playfair::lift_from_quotient(&alg, x, &comp).map_err(err);
        ensure(lift(&(&a * &b))? == lift(&a)? * lift(&b)?, || "Cl(ω_W) not multiplicative".into())?;
        ensure(playfair::quotient_project(&lift(&a)?).map_err(err)? == a, || "Cl(π)∘Cl(ω_W) ≠ id".into())?;
        let w = gen::in_complement(&alg, &comp, &mut c.rng);
        ensure(lift(&playfair::quotient_project(&w).map_err(err)?)? == w, || "Cl(ω_W)∘Cl(π) ≠ id on Cl(W)".into())?;
    }
    Ok(format!("{} samples", c.samples))
}

fn twisted_extension(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let (x, y) = (gen::multivector(&alg, &mut c.rng), gen::multivector(&alg, &mut c.rng));
        let phi = |z: &Multivector<Q>| playfair::to_twisted_pair(z, &comp).map_err(err);
        let lhs = phi(&(&x * &y))?;
        ensure(lhs == playfair::twisted_mul(&phi(&x)?, &phi(&y)?).map_err(err)?, || {
            format!("φ not multiplicative on {x}, {y}")
        })?;
        ensure(playfair::from_twisted_pair(&phi(&x)?, &comp).map_err(err)? == x, || "φ⁻¹∘φ ≠ id".into())?;
    }
    Ok(format!("{} pairs", c.samples))
}

fn even_odd(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let x = gen::multivector(&alg, &mut c.rng).even_part();
        let y = gen::multivector(&alg, &mut c.rng).even_part();
        let (px, py) =
            (playfair::to_twisted_pair(&x, &comp).map_err(err)?, playfair::to_twisted_pair(&y, &comp).map_err(err)?);
        ensure(px.r == px.r.even_part() && px.m == px.m.odd_part(), || format!("{x} does not split even ⋉ odd"))?;
        // On even r the twist is trivial.
        let untwisted = (&px.r * &py.r, &px.r * &py.m + &px.m * &py.r);
        let twisted = playfair::twisted_mul(&px, &py).map_err(err)?;
        ensure(twisted.r == untwisted.0 && twisted.m == untwisted.1, || "twist visible on Cl⁺".into())?;
        let (ev, od) = playfair::even_odd_split(&gen::multivector(&alg, &mut c.rng));
        ensure(ev.grade_involution() == ev && od.grade_involution() == -od, || "parity split wrong".into())?;
    }
    Ok(format!("{} even pairs", c.samples))
}

fn units_twisted(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let e0 = e0(&alg);
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let u = gen::unit(&alg, &comp, &mut c.rng);
        structure::inverse(&u).map_err(err)?;
        let d = structure::unit_decompose(&u, &comp).map_err(err)?;
        ensure(d.reconstruct() == u, || format!("{u} not reconstructed"))?;
        let m = gen::multivector(&alg, &mut c.rng);
        ensure(structure::inverse(&(&m * &e0)).is_err(), || "ideal element inverted".into())?;
        // The unit criterion on arbitrary elements.
        let x = gen::multivector(&alg, &mut c.rng);
        let r = playfair::decompose(&x, &comp).map_err(err)?.at_w;
        ensure(structure::inverse(&x).is_ok() == structure::inverse(&r).is_ok(), || {
            format!("unit criterion fails on {x}")
        })?;
    }
    Ok(format!("{} generated units", c.samples))
}

fn unit_group(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let (a, b) = (gen::unit(&alg, &comp, &mut c.rng), gen::unit(&alg, &comp, &mut c.rng));
        let da = structure::unit_decompose(&a, &comp).map_err(err)?;
        let db = structure::unit_decompose(&b, &comp).map_err(err)?;
        let dab = structure::unit_decompose(&(&a * &b), &comp).map_err(err)?;
        ensure(da.compose(&db).map_err(err)? == dab, || format!("semidirect law fails on {a}, {b}"))?;
        let m = gen::in_complement(&alg, &comp, &mut c.rng);
        let lhs = structure::tau_action(&(&da.r * &db.r), &m).map_err(err)?;
        let rhs = structure::tau_action(&da.r, &structure::tau_action(&db.r, &m).map_err(err)?).map_err(err)?;
        ensure(lhs == rhs, || "τ is not a homomorphism".into())?;
    }
    Ok(format!("{} unit pairs", c.samples))
}

fn bivector_ideal(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let n = alg.dim();
    let e0m = e0(&alg);
    for _ in 0..c.samples {
        let comp = gen::complement(&alg, &mut c.rng);
        let b = gen::grade(&alg, 2, &mut c.rng);
        let split = structure::bivector_split(&b, &comp).map_err(err)?;
        ensure(comp.contains(&split.ideal_vector), || "ideal vector ∉ W".into())?;
        let w = Multivector::from_vector(&alg, &split.ideal_vector).map_err(err)?;
        ensure(playfair::derivation_d(&comp, &b).map_err(err)? == &w * &e0m, || "D_W(B) ≠ w·e0".into())?;
        ensure(
            split.rotational.is_homogeneous(2)
                && playfair::in_complement_algebra(&split.rotational, &comp).map_err(err)?,
            || "rotational part ∉ Cl²(W)".into(),
        )?;
        let pairs = structure::simple_bivector_decomposition(&b).map_err(err)?;
        ensure(pairs.len() <= n / 2, || format!("{} simple pieces", pairs.len()))?;
        let mut sum = Multivector::zero(&alg);
        for (u, v) in &pairs {
            ensure(alg.form().bilinear(u, v).map_err(err)?.is_negligible(), || "pair not orthogonal".into())?;
            sum = sum
                + Multivector::from_vector(&alg, u).map_err(err)? * Multivector::from_vector(&alg, v).map_err(err)?;
        }
        ensure(sum == b, || format!("simple pieces do not sum to {b}"))?;
        // On a simple bivector: D_W(v₁v₂) = (λ₂w₁ − λ₁w₂)e0.
        if let Some((u, v)) = pairs.first() {
            let (w1, l1) = comp.playfair_project_vector(u).map_err(err)?;
            let (w2, l2) = comp.playfair_project_vector(v).map_err(err)?;
            let expected = Multivector::from_vector(&alg, &w1.scale(&l2).sub(&w2.scale(&l1))).map_err(err)? * &e0m;
            let uv =
                Multivector::from_vector(&alg, u).map_err(err)? * Multivector::from_vector(&alg, v).map_err(err)?;
            ensure(playfair::derivation_d(&comp, &uv).map_err(err)? == expected, || "simple-bivector formula".into())?;
        }
    }
    Ok(format!("{} bivectors", c.samples))
}

fn lie_split(c: &mut Ctx) -> Outcome {
    let alg = c.alg.clone();
    let e0m = e0(&alg);
    let cmt = |a: &Multivector<Q>, b: &Multivector<Q>| structure::commutator(a, b).map_err(err);
    let bivectors: Vec<_> = all_blades(&alg).filter(|b| b.is_homogeneous(2)).collect();
    for b in &bivectors {
        for x in all_blades(&alg) {
            let k = x.grades()[0];
            ensure(cmt(b, &x)?.is_homogeneous(k), || format!("{b} × {x} leaves grade {k}"))?;
        }
    }
    for _ in 0..c.samples {
        let [b1, b2, b3] = [0, 1, 2].map(|_| gen::grade(&alg, 2, &mut c.rng));
        let jacobi = cmt(&b1, &cmt(&b2, &b3)?)? + cmt(&b2, &cmt(&b3, &b1)?)? + cmt(&b3, &cmt(&b1, &b2)?)?;
        ensure(jacobi.is_zero(), || "Jacobi fails".into())?;
        let comp = gen::complement(&alg, &mut c.rng);
        let (r1, r2) = (
            gen::bivector_in_complement(&alg, &comp, &mut c.rng),
            gen::bivector_in_complement(&alg, &comp, &mut c.rng),
        );
        let w = gen::vector_in_complement(&alg, &comp, &mut c.rng);
        let lhs = cmt(&cmt(&r1, &r2)?, &w)?;
        let rhs = cmt(&r1, &cmt(&r2, &w)?)? - cmt(&r2, &cmt(&r1, &w)?)?;
        ensure(lhs == rhs, || "Lie τ not a homomorphism".into())?;
        ensure(cmt(&r1, &(&w * &e0m))? == cmt(&r1, &w)? * &e0m, || "B × we0 ≠ (B × w)e0".into())?;
        let w2 = gen::vector_in_complement(&alg, &comp, &mut c.rng);
        ensure(cmt(&(&w * &e0m), &(&w2 * &e0m))?.is_zero(), || "W·e0 not abelian".into())?;
    }
    Ok(format!("grades exhaustive over {} bivector blades, {} Jacobi triples", bivectors.len(), c.samples))
}

fn se3(c: &mut Ctx) -> Outcome {
    let basis = se3_bivector_basis(&c.alg);
    let table = structure::lie_structure_table(&c.alg, &basis).map_err(err)?;
    let gens = se3_generators();
    for a in 0..6 {
        for b in 0..6 {
            let oracle = se3_coords(&matrix_commutator(&gens[a], &gens[b]));
            // basis[k] = −G_k, so [basis_a, basis_b] = [G_a, G_b] = −Σ c_k basis_k.
            let expected: Vec<Q> = oracle.iter().map(|&v| Q::from_i64(-v)).collect();
            ensure(table.bracket(a, b) == expected.as_slice(), || format!("bracket ({a}, {b}) differs"))?;
        }
    }
    Ok("36 brackets match the 4×4 matrix oracle".into())
}

fn cosine_law(c: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..c.samples {
        let [u, v] = [0, 1].map(|_| loop {
            if let Ok(p) = Plane::new(gen::vector(4, &mut c.rng)) {
                break p;
            }
        });
        let exact = pga3d::cos_squared_angle(&u, &v) * pga3d::magnitude_squared(&u) * pga3d::magnitude_squared(&v);
        let b = pga3d::bilinear(&u, &v);
        ensure(exact == b.clone() * b, || "cos²θ·|u|²|v|² ≠ B²".into())?;
        let (nu, nv) = (u.normal().map(|x| x.to_f64()), v.normal().map(|x| x.to_f64()));
        let dot: f64 = nu.iter().zip(&nv).map(|(a, b)| a * b).sum();
        let norm = |n: &[f64; 3]| n.iter().map(|x| x * x).sum::<f64>().sqrt();
        let oracle = (dot / (norm(&nu) * norm(&nv))).clamp(-1.0, 1.0).acos();
        let fu = Plane::new(Vector(u.vector().0.iter().map(Scalar::to_f64).collect())).map_err(err)?;
        let fv = Plane::new(Vector(v.vector().0.iter().map(Scalar::to_f64).collect())).map_err(err)?;
        let diff = (pga3d::dihedral_angle(&fu, &fv) - oracle).abs();
        worst = worst.max(diff);
        ensure(diff <= 1e-12, || format!("angle off by {diff:e}"))?;
    }
    Ok(format!("{} plane pairs, max deviation {worst:.1e}", c.samples))
}

fn product_oracle(c: &mut Ctx) -> Outcome {
    let mut pairs = 0usize;
    let mut algebras: Vec<Alg> = Vec::new();
    for n in 1..=4 {
        for p in 0..=n {
            for q in 0..=n - p {
                algebras.push(Algebra::from_signature(p, q, n - p - q).map_err(err)?);
            }
        }
    }
    algebras.push(c.alg.clone());
    for alg in &algebras {
        for a in 0..alg.blade_count() as u32 {
            for b in 0..alg.blade_count() as u32 {
                let (blade, coef) = rewrite_product(alg.metric(), Blade(a), Blade(b));
                let got = alg.blade_product(Blade(a), Blade(b));
                let want = if coef.is_negligible() { None } else { Some((blade, coef)) };
                ensure(got == want, || format!("{} · {} in {}", Blade(a), Blade(b), alg.label()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} blade pairs over {} algebras", algebras.len()))
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "quotient-form",
        statement: "B descends to V/U iff U is radical",
        needs: Needs::Nothing,
        run: quotient_form,
    },
    Suite {
        name: "orthogonal-complements",
        statement: "complements of F·e0 are orthogonal and carry a unique section",
        needs: Needs::Degenerate,
        run: orthogonal_complements,
    },
    Suite {
        name: "playfair-vector",
        statement: "v = π_W(v) + λe0 uniquely",
        needs: Needs::Degenerate,
        run: playfair_vector,
    },
    Suite {
        name: "playfair-axiom",
        statement: "a unique plane through P parallel to a given plane",
        needs: Needs::Pga3,
        run: playfair_axiom,
    },
    Suite { name: "commuting-e0", statement: "e0·X = α(X)·e0", needs: Needs::Degenerate, run: commuting_e0 },
    Suite {
        name: "playfair-decomposition",
        statement: "X = Cl(π_W)(X) + Y·e0 with Y in Cl(W)",
        needs: Needs::Degenerate,
        run: playfair_decomposition,
    },
    Suite {
        name: "ideal-equality",
        statement: "Cl(π_W)(X)·e0 = X·e0, so Cl(V)e0 = Cl(W)e0",
        needs: Needs::Degenerate,
        run: ideal_equality,
    },
    Suite {
        name: "derivation",
        statement: "D_W is a Clifford algebra derivation fixing e0",
        needs: Needs::Degenerate,
        run: derivation,
    },
    Suite {
        name: "quotient-algebra",
        statement: "Cl(V)/Cl(V)e0 is the Clifford algebra of V/F·e0",
        needs: Needs::Degenerate,
        run: quotient_algebra,
    },
    Suite {
        name: "ideal-proper",
        statement: "Cl(V)e0 is a proper nontrivial two-sided square-zero ideal",
        needs: Needs::Degenerate,
        run: ideal_proper,
    },
    Suite {
        name: "complement-derivation",
        statement: "complements correspond one-to-one with derivations fixing e0",
        needs: Needs::Degenerate,
        run: complement_derivation,
    },
    Suite {
        name: "right-multiplication",
        statement: "X ↦ λX·e0 maps Cl(W) isomorphically onto the ideal",
        needs: Needs::Degenerate,
        run: right_multiplication,
    },
    Suite {
        name: "canonical-isomorphisms",
        statement: "Cl(V)/Cl(V)e0, Cl(V/F·e0) and Cl(W) are canonically isomorphic",
        needs: Needs::Degenerate,
        run: canonical_isomorphisms,
    },
    Suite {
        name: "twisted-extension",
        statement: "Cl(V) is the twisted trivial extension Cl(W) ⋉_α Cl(W)",
        needs: Needs::Degenerate,
        run: twisted_extension,
    },
    Suite { name: "even-odd", statement: "Cl⁺(V) is Cl⁺(W) ⋉ Cl⁻(W)", needs: Needs::Degenerate, run: even_odd },
    Suite {
        name: "units-twisted",
        statement: "(r, m) is a unit exactly when r is",
        needs: Needs::Degenerate,
        run: units_twisted,
    },
    Suite {
        name: "unit-group", statement: "Cl(V)× is Cl(W)× ⋉_τ Cl(W)", needs: Needs::Degenerate, run: unit_group
    },
    Suite {
        name: "bivector-ideal",
        statement: "D_W(B) = w·e0 for some w in W",
        needs: Needs::Degenerate,
        run: bivector_ideal,
    },
    Suite {
        name: "lie-split",
        statement: "Cl²(V) is the semidirect sum Cl²(W) ⋉ W·e0",
        needs: Needs::Degenerate,
        run: lie_split,
    },
    Suite { name: "se3", statement: "Cl²(V) is se(3) for 3D Euclidean PGA", needs: Needs::Pga3, run: se3 },
    Suite { name: "cosine-law", statement: "B(u, v) = |u||v| cos θ", needs: Needs::Pga3, run: cosine_law },
    Suite {
        name: "product-oracle",
        statement: "blade products agree with index-word rewriting",
        needs: Needs::Nothing,
        run: product_oracle,
    },
];

pub fn find(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn run_suite(suite: &Suite, alg: &Alg, cfg: Config) -> Report {
    let skip = match suite.needs {
        Needs::Nothing => None,
        Needs::Degenerate if alg.e0().is_none() => Some("algebra has no degenerate generator"),
        Needs::Pga3 if !is_pga3(alg) => Some("needs the 3,0,1 algebra"),
        _ => None,
    };
    let (status, detail) = match skip {
        Some(why) => (Status::Skip, why.to_string()),
        None => {
            let salt = suite.name.bytes().fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
            let mut ctx = Ctx { alg: alg.clone(), rng: StdRng::seed_from_u64(cfg.seed ^ salt), samples: cfg.samples };
            match (suite.run)(&mut ctx) {
                Ok(d) => (Status::Pass, d),
                Err(d) => (Status::Fail, d),
            }
        }
    };
    Report { name: suite.name, statement: suite.statement, status, detail }
}

/// Runs the suites concurrently; reports come back in suite order.
pub fn run_all(suites: &[&'static Suite], alg: &Alg, cfg: Config) -> Vec<Report> {
    thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|s| scope.spawn(move || run_suite(s, alg, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    })
}
