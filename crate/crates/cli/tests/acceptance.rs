//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every criterion compares the library against an oracle written here, from
//! the defining formulas, rather than against the library's own `verify`
//! module.

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use gacalc_core::linalg::Matrix;
use gacalc_core::pga3d::{self, Plane, PointP};
use gacalc_core::playfair::{self, TwistedPair};
use gacalc_core::structure;
use gacalc_core::{expr, Algebra, Blade, Complement, GaError, LinearEndo, Multivector, Rational, Scalar, Vector};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Q = Rational;
type Mv = Multivector<Q>;
type Alg = Arc<Algebra<Q>>;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut StdRng) -> Outcome, Option<Duration>);

const SEED: u64 = 0x5eed_ac7e;

fn main() {
    let criteria: [Criterion; 12] = [
        ("product-oracle", product_oracle, Some(Duration::from_secs(5))),
        ("commuting-lemma", commuting_lemma, Some(Duration::from_secs(1))),
        ("playfair-decomposition", playfair_decomposition, None),
        ("derivation-laws", derivation_laws, None),
        ("twisted-extension", twisted_extension, None),
        ("quotient-identification", quotient_identification, None),
        ("complement-derivation-bijection", complement_derivation, None),
        ("unit-group", unit_group, None),
        ("bivector-lie-algebra", bivector_lie_algebra, None),
        ("playfair-axiom", playfair_axiom, None),
        ("cosine-law", cosine_law, None),
        ("cli", cli, None),
    ];
    let mut failures = 0;
    let total = Instant::now();
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let mut rng = StdRng::seed_from_u64(SEED ^ i as u64);
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| run(&mut rng))).unwrap_or_else(|p| Err(panic_message(p)));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took {took:?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.2?}]", i + 1, took),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{:.2?}]", i + 1, took);
            }
        }
    }
    println!("{} of 12 criteria passed in {:.2?}", 12 - failures, total.elapsed());
    if failures > 0 {
        std::process::exit(1);
    }
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    let msg = p
        .downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default();
    format!("panicked: {msg}")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: gacalc_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn qi(n: i64) -> Q {
    Q::from_i64(n)
}

// ---------------------------------------------------------------- generators

fn rational(rng: &mut StdRng) -> Q {
    Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

fn nonzero_rational(rng: &mut StdRng) -> Q {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Dense-ish random element: each coordinate is zero with probability 1/3.
fn random_mv(alg: &Alg, rng: &mut StdRng) -> Mv {
    let mut coords = Vec::with_capacity(alg.blade_count());
    for _ in 0..alg.blade_count() {
        coords.push(if rng.gen_ratio(1, 3) { Q::zero() } else { rational(rng) });
    }
    Multivector::from_coords(alg, &coords)
}

fn random_point(rng: &mut StdRng) -> [Q; 3] {
    [rational(rng), rational(rng), rational(rng)]
}

fn pga() -> Alg {
    Algebra::pga3()
}

fn e(alg: &Alg, i: usize) -> Mv {
    Multivector::basis_vector(alg, i)
}

fn blades(alg: &Alg) -> Vec<Mv> {
    (0..alg.blade_count() as u32).map(|m| Multivector::from_blade(alg, Blade(m), Q::one())).collect()
}

/// Grade involution straight from its definition: negate odd grades.
fn alpha(x: &Mv) -> Mv {
    Multivector::from_terms(
        x.algebra(),
        x.terms().map(|(b, c)| (*b, if b.grade() % 2 == 1 { -c.clone() } else { c.clone() })),
    )
}

// ------------------------------------------------------ split-basis oracle

/// The complement `V_P` of planes through `P`: `w_i = e_i − p_i·e0`, since
/// `v0 + v·p = 0` on `V_P`.
fn w_vectors(alg: &Alg, p: &[Q; 3]) -> [Mv; 3] {
    let e0 = e(alg, 0);
    [1, 2, 3].map(|i| e(alg, i) - e0.scale(&p[i - 1]))
}

/// `Cl(V)` in the basis `{w_S} ∪ {w_S·e0}` for `S ⊆ {1,2,3}`, solved by
/// inverting the 16×16 change-of-basis matrix.
struct SplitOracle {
    alg: Alg,
    w_products: Vec<Mv>,
    inverse: Matrix<Q>,
}

impl SplitOracle {
    fn new(alg: &Alg, p: &[Q; 3]) -> Self {
        let w = w_vectors(alg, p);
        let w_products: Vec<Mv> = (0..8u32)
            .map(|s| (0..3).filter(|k| s >> k & 1 == 1).fold(Multivector::one(alg), |acc, k| acc * &w[k]))
            .collect();
        let e0 = e(alg, 0);
        let mut columns: Vec<Vec<Q>> = w_products.iter().map(|x| x.coords()).collect();
        columns.extend(w_products.iter().map(|x| (x * &e0).coords()));
        let inverse = Matrix::from_columns(&columns).inverse().expect("split basis spans Cl(V)");
        SplitOracle { alg: alg.clone(), w_products, inverse }
    }

    /// `x = A + Y·e0` with `A, Y ∈ Cl(W)`.
    fn split(&self, x: &Mv) -> (Mv, Mv) {
        let c = self.inverse.mul_vec(&x.coords());
        let combine = |cs: &[Q]| {
            cs.iter().zip(&self.w_products).fold(Multivector::zero(&self.alg), |acc, (c, w)| acc + w.scale(c))
        };
        (combine(&c[..8]), combine(&c[8..]))
    }

    fn in_cl_w(&self, x: &Mv) -> bool {
        self.split(x).1.is_zero()
    }
}

// ------------------------------------------------------------------ 1

/// Reduces a word of generators by bubble sort: adjacent swaps of distinct
/// generators flip the sign, equal neighbours contract to their square.
fn rewrite_word(mut word: Vec<usize>, squares: &[Q]) -> (u32, Q) {
    let mut coeff = Q::one();
    'outer: loop {
        for k in 0..word.len().saturating_sub(1) {
            if word[k] == word[k + 1] {
                coeff *= squares[word[k]].clone();
                word.drain(k..k + 2);
                continue 'outer;
            }
            if word[k] > word[k + 1] {
                word.swap(k, k + 1);
                coeff = -coeff;
                continue 'outer;
            }
        }
        break;
    }
    (word.iter().fold(0, |m, &i| m | 1 << i), coeff)
}

fn product_oracle(_: &mut StdRng) -> Outcome {
    let mut pairs = 0;
    let mut algebras = 0;
    for n in 1..=4 {
        for p in 0..=n {
            for q in 0..=n - p {
                let alg = Algebra::<Q>::from_signature(p, q, n - p - q).map_err(|e| e.to_string())?;
                let gram = alg.input_form().gram();
                let squares: Vec<Q> = (0..n).map(|i| gram[(i, i)].clone()).collect();
                ensure(gram.is_diagonal(), || format!("({p},{q},{}) gram is not diagonal", n - p - q))?;
                for a in 0..1u32 << n {
                    for b in 0..1u32 << n {
                        let word: Vec<usize> = Blade(a).indices().chain(Blade(b).indices()).collect();
                        let (mask, coeff) = rewrite_word(word, &squares);
                        let expected = Multivector::from_blade(&alg, Blade(mask), coeff);
                        let got = Multivector::from_blade(&alg, Blade(a), Q::one())
                            * Multivector::from_blade(&alg, Blade(b), Q::one());
                        ensure(got == expected, || {
                            format!("({p},{q},{}) {} * {}: {got} vs {expected}", n - p - q, Blade(a), Blade(b))
                        })?;
                        pairs += 1;
                    }
                }
                algebras += 1;
            }
        }
    }
    Ok(format!("{pairs} blade pairs across {algebras} signatures match the rewrite oracle"))
}

// ------------------------------------------------------------------ 2

fn commuting_lemma(rng: &mut StdRng) -> Outcome {
    let alg = pga();
    let e0 = e(&alg, 0);
    let check = |x: &Mv| ensure(&e0 * x == alpha(x) * &e0, || format!("e0·X ≠ α(X)·e0 for X = {x}"));
    for b in blades(&alg) {
        check(&b)?;
    }
    for _ in 0..1000 {
        check(&random_mv(&alg, rng))?;
    }
    Ok("16 blades and 1000 random elements".into())
}

// ------------------------------------------------------------------ 3

fn playfair_decomposition(rng: &mut StdRng) -> Outcome {
    let alg = pga();
    let e0 = e(&alg, 0);
    for _ in 0..20 {
        let p = random_point(rng);
        let comp = ok(alg.complement_at_point(&p))?;
        let oracle = SplitOracle::new(&alg, &p);
        for _ in 0..200 {
            let x = random_mv(&alg, rng);
            let s = ok(playfair::decompose(&x, &comp))?;
            ensure(&s.at_w + &s.ideal_cofactor * &e0 == x, || format!("reconstruction fails for {x}"))?;
            ensure(oracle.in_cl_w(&s.at_w), || format!("at_w ∉ Cl(W) for {x}"))?;
            ensure(oracle.in_cl_w(&s.ideal_cofactor), || format!("cofactor ∉ Cl(W) for {x}"))?;
            let (a, y) = oracle.split(&x);
            ensure(s.at_w == a && s.ideal_cofactor == y, || format!("re-solve disagrees for {x}"))?;
        }
    }
    Ok("20 points × 200 elements: exact, in Cl(W), unique".into())
}

// ------------------------------------------------------------------ 4

fn derivation_laws(rng: &mut StdRng) -> Outcome {
    let alg = pga();
    let e0 = e(&alg, 0);
    let p = random_point(rng);
    let comp = ok(alg.complement_at_point(&p))?;
    let oracle = SplitOracle::new(&alg, &p);
    let d = |x: &Mv| ok(playfair::derivation_d(&comp, x));
    for _ in 0..1000 {
        let (x, y) = (random_mv(&alg, rng), random_mv(&alg, rng));
        let dxy = d(&(&x * &y))?;
        ensure(dxy == &x * d(&y)? + d(&x)? * &y, || format!("Leibniz fails for {x}, {y}"))?;
        // D_W(X) = X − Cl(π_W)(X) = Y·e0.
        ensure(d(&x)? == oracle.split(&x).1 * &e0, || format!("D_W({x}) disagrees with the oracle"))?;
    }
    ensure(d(&e0)? == e0, || "D_W(e0) ≠ e0".into())?;
    let endo = ok(playfair::derivation_endo(&alg, &comp))?;
    ensure(ok(endo.compose(&endo))? == endo, || "D_W is not idempotent".into())?;
    Ok("Leibniz on 1000 pairs, D(e0) = e0, D² = D".into())
}

// ------------------------------------------------------------------ 5

fn twisted_extension(rng: &mut StdRng) -> Outcome {
    let alg = pga();
    let e0 = e(&alg, 0);
    let p = random_point(rng);
    let comp = ok(alg.complement_at_point(&p))?;
    let oracle = SplitOracle::new(&alg, &p);
    let phi = |x: &Mv| ok(playfair::to_twisted_pair(x, &comp));
    for _ in 0..1000 {
        let (x, y) = (random_mv(&alg, rng), random_mv(&alg, rng));
        let (px, py) = (phi(&x)?, phi(&y)?);
        let (r, m) = oracle.split(&x);
        ensure(px == TwistedPair { r, m }, || format!("φ({x}) disagrees with the oracle"))?;
        let prod = ok(playfair::twisted_mul(&px, &py))?;
        // (r1, m1)(r2, m2) = (r1 r2, r1 m2 + m1 α(r2))
        let expected = TwistedPair { r: &px.r * &py.r, m: &px.r * &py.m + &px.m * alpha(&py.r) };
        ensure(prod == expected, || format!("twisted_mul differs from its formula on {x}, {y}"))?;
        ensure(phi(&(&x * &y))? == prod, || format!("φ(xy) ≠ φ(x)φ(y) for {x}, {y}"))?;
    }
    let all = blades(&alg);
    for a in &all {
        for b in &all {
            ensure((a * &e0 * b * &e0).is_zero(), || format!("({a}·e0)({b}·e0) ≠ 0"))?;
        }
    }
    Ok("1000 pairs multiplicative; ideal squares to zero on 256 blade pairs".into())
}

// ------------------------------------------------------------------ 6

fn quotient_identification(rng: &mut StdRng) -> Outcome {
    let alg = pga();
    let e0 = e(&alg, 0);
    let proj = |x: &Mv| ok(playfair::quotient_project(x));
    for _ in 0..500 {
        let (x, y) = (random_mv(&alg, rng), random_mv(&alg, rng));
        ensure(proj(&(&x * &y))? == proj(&x)? * proj(&y)?, || format!("not multiplicative on {x}, {y}"))?;
    }
    // Rank oracle for membership in Cl(V)e0.
    let ideal: Vec<Vec<Q>> = blades(&alg).iter().map(|b| (b * &e0).coords()).collect();
    let ideal_rank = Matrix::from_columns(&ideal).rank();
    let in_ideal = |x: &Mv| {
        let mut cols = ideal.clone();
        cols.push(x.coords());
        Matrix::from_columns(&cols).rank() == ideal_rank
    };
    let mut samples: Vec<Mv> = (0..500)
        .map(|k| {
            let x = random_mv(&alg, rng);
            if k % 2 == 0 {
                x * &e0
            } else {
                x
            }
        })
        .collect();
    samples.extend(blades(&alg));
    let mut members = 0;
    for x in &samples {
        let expected = in_ideal(x);
        members += expected as usize;
        ensure(proj(x)?.is_zero() == expected, || format!("kernel disagrees with the ideal on {x}"))?;
        ensure(ok(playfair::is_in_ideal(x))? == expected, || format!("is_in_ideal wrong on {x}"))?;
    }
    Ok(format!("500 pairs multiplicative; kernel = ideal on {} elements ({members} members)", samples.len()))
}

// ------------------------------------------------------------------ 7

fn same_subspace(a: &Complement<Q>, b: &Complement<Q>) -> bool {
    a.basis().iter().all(|v| b.contains(v)) && b.basis().iter().all(|v| a.contains(v))
}

fn complement_derivation(rng: &mut StdRng) -> Outcome {
    let alg = pga();
    let e0 = e(&alg, 0);
    for _ in 0..20 {
        let p = random_point(rng);
        let comp = ok(alg.complement_at_point(&p))?;
        // Complement → derivation → complement.
        let d = ok(playfair::derivation_endo(&alg, &comp))?;
        let back = ok(playfair::complement_from_derivation(&d))?;
        ensure(same_subspace(&back, &comp), || format!("complement round trip fails at {p:?}"))?;

        // Derivation → complement → derivation, starting from D = Y·e0 of the oracle split.
        let oracle = SplitOracle::new(&alg, &p);
        let d_oracle = LinearEndo::from_fn(&alg, |b| oracle.split(&Multivector::from_blade(&alg, b, Q::one())).1 * &e0);
        let comp2 = ok(playfair::complement_from_derivation(&d_oracle))?;
        for (i, w) in w_vectors(&alg, &p).iter().enumerate() {
            let v = w.to_vector().expect("grade 1");
            ensure(comp2.contains(&v), || format!("w_{} ∉ recovered complement at {p:?}", i + 1))?;
        }
        ensure(ok(playfair::derivation_endo(&alg, &comp2))? == d_oracle, || {
            format!("derivation round trip fails at {p:?}")
        })?;
    }
    Ok("20 points, both directions".into())
}

// ------------------------------------------------------------------ 8

/// A versor `s·v1⋯vk` of non-null vectors in `W`, with its inverse
/// `s⁻¹·vk⁻¹⋯v1⁻¹` where `v⁻¹ = v / v²`.
fn random_versor(alg: &Alg, w: &[Mv; 3], rng: &mut StdRng) -> (Mv, Mv) {
    let s = nonzero_rational(rng);
    let mut r = Multivector::scalar(alg, s.clone());
    let mut r_inv = Multivector::scalar(alg, s.recip());
    for _ in 0..rng.gen_range(0..=3) {
        let v = loop {
            let v = w.iter().fold(Multivector::zero(alg), |acc, wi| acc + wi.scale(&rational(rng)));
            let sq = (&v * &v).scalar_part();
            if !sq.is_zero() {
                break v;
            }
        };
        let sq = (&v * &v).scalar_part();
        r = r * &v;
        r_inv = v.scale(&sq.recip()) * r_inv;
    }
    (r, r_inv)
}

fn random_in_w(oracle: &SplitOracle, rng: &mut StdRng) -> Mv {
    let alg = oracle.alg.clone();
    oracle.w_products.iter().fold(Multivector::zero(&alg), |acc, w| acc + w.scale(&rational(rng)))
}

fn unit_group(rng: &mut StdRng) -> Outcome {
    let alg = pga();
    let e0 = e(&alg, 0);
    let one = Multivector::one(&alg);
    let p = random_point(rng);
    let comp = ok(alg.complement_at_point(&p))?;
    let oracle = SplitOracle::new(&alg, &p);
    let w = w_vectors(&alg, &p);
    let mut units = Vec::new();
    for _ in 0..500 {
        let (r, r_inv) = random_versor(&alg, &w, rng);
        let t = random_in_w(&oracle, rng);
        let x = &r * (&one + &t * &e0);
        let d = ok(structure::unit_decompose(&x, &comp))?;
        ensure(d.r == r && d.tail == t, || format!("wrong decomposition of {x}"))?;
        ensure(d.reconstruct() == x, || format!("reconstruction fails for {x}"))?;
        // x⁻¹ = (1 − t·e0)·r⁻¹
        let x_inv = (&one - &t * &e0) * &r_inv;
        ensure(ok(structure::inverse(&x))? == x_inv, || format!("inverse of {x} disagrees"))?;
        units.push((x, r, r_inv, t));
    }
    let mut ideal: Vec<Mv> = blades(&alg).into_iter().filter(|b| b.mentions(0)).collect();
    ideal.extend((0..500).map(|_| random_mv(&alg, rng) * &e0));
    for x in &ideal {
        ensure(matches!(structure::inverse(x), Err(GaError::NotAUnit(_))), || format!("{x} did not report NotAUnit"))?;
    }
    for k in 0..500 {
        let (x1, r1, _, t1) = &units[k];
        let (x2, r2, r2_inv, t2) = &units[(k * 7 + 3) % 500];
        // (r1, t1)(r2, t2) = (r1 r2, τ(r2⁻¹)(t1) + t2) with τ(r)(m) = r m α(r⁻¹).
        let expected_tail = r2_inv * t1 * alpha(r2) + t2;
        let d = ok(structure::unit_decompose(&(x1 * x2), &comp))?;
        ensure(d.r == r1 * r2 && d.tail == expected_tail, || format!("semidirect law fails on pair {k}"))?;
        let composed =
            ok(ok(structure::unit_decompose(x1, &comp))?.compose(&ok(structure::unit_decompose(x2, &comp))?))?;
        ensure(composed == d, || format!("compose disagrees on pair {k}"))?;
    }
    Ok(format!("500 units, {} ideal elements rejected, 500 semidirect pairs", ideal.len()))
}

// ------------------------------------------------------------------ 9

type M4 = [[i64; 4]; 4];

/// `L_x, L_y, L_z, T_x, T_y, T_z` acting on homogeneous points `(x, y, z, 1)`.
fn se3_generators() -> [M4; 6] {
    let rot = |i: usize, j: usize| {
        let mut m = [[0; 4]; 4];
        m[i][j] = 1;
        m[j][i] = -1;
        m
    };
    let tr = |i: usize| {
        let mut m = [[0; 4]; 4];
        m[i][3] = 1;
        m
    };
    [rot(2, 1), rot(0, 2), rot(1, 0), tr(0), tr(1), tr(2)]
}

fn bracket(a: &M4, b: &M4) -> M4 {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j] - b[i][k] * a[k][j]).sum();
        }
    }
    out
}

fn se3_coordinates(m: &M4) -> [i64; 6] {
    [m[2][1], m[0][2], m[1][0], m[0][3], m[1][3], m[2][3]]
}

/// The matrix by which `B` moves points: planes move by `v ↦ B × v`, so
/// points move by the negative transpose (incidence `v1x + v2y + v3z + v0`
/// is preserved). Plane coordinates are ordered `(v1, v2, v3, v0)`.
fn point_action(b: &Mv) -> Result<M4, String> {
    let alg = b.algebra();
    let order = [1, 2, 3, 0];
    let mut m = [[0; 4]; 4];
    for (col, &src) in order.iter().enumerate() {
        let image = ok(structure::commutator(b, &e(alg, src)))?;
        for (row, &dst) in order.iter().enumerate() {
            let c = image.coefficient(Blade::vector(dst));
            ensure(c.is_integer(), || format!("non-integral action of {b}"))?;
            m[col][row] = -c.to_integer().try_into().map_err(|_| "overflow".to_string())?;
        }
    }
    Ok(m)
}

fn bivector_lie_algebra(rng: &mut StdRng) -> Outcome {
    let alg = pga();
    let all = blades(&alg);
    let mut checked = 0;
    for b in all.iter().filter(|b| b.is_homogeneous(2)) {
        for x in &all {
            let k = x.grades()[0];
            let c = ok(structure::commutator(b, x))?;
            ensure(c == (b * x - x * b).scale(&Q::new(1.into(), 2.into())), || format!("{b} × {x} ≠ ½(BX − XB)"))?;
            ensure(c.is_homogeneous(k), || format!("{b} × {x} leaves grade {k}"))?;
            checked += 1;
        }
    }
    let bivector = |rng: &mut StdRng| random_mv(&alg, rng).grade_part(2).expect("grade 2 exists");
    let cmt = |a: &Mv, b: &Mv| ok(structure::commutator(a, b));
    for _ in 0..200 {
        let (a, b, c) = (bivector(rng), bivector(rng), bivector(rng));
        let j = cmt(&a, &cmt(&b, &c)?)? + cmt(&b, &cmt(&c, &a)?)? + cmt(&c, &cmt(&a, &b)?)?;
        ensure(j.is_zero(), || format!("Jacobi fails on {a}, {b}, {c}"))?;
    }

    let b = |i, j, s: i64| Multivector::from_blade(&alg, Blade::from_indices(&[i, j]), qi(s));
    let basis = [b(2, 3, 1), b(1, 3, -1), b(1, 2, 1), b(0, 1, 1), b(0, 2, 1), b(0, 3, 1)];
    let gens = se3_generators();
    // Each basis bivector acts on points as ±(its se(3) generator); read off the sign.
    let mut signs = [0i64; 6];
    for k in 0..6 {
        let action = point_action(&basis[k])?;
        signs[k] = [1, -1]
            .into_iter()
            .find(|&s| action == gens[k].map(|row| row.map(|v| s * v)))
            .ok_or_else(|| format!("{} does not act as ±generator {k}", basis[k]))?;
    }
    let table = ok(structure::lie_structure_table(&alg, &basis))?;
    for a in 0..6 {
        for b in 0..6 {
            // [s_a G_a, s_b G_b] = Σ c_k s_k G_k.
            let g = se3_coordinates(&bracket(&gens[a], &gens[b]));
            let expected: Vec<Q> = (0..6).map(|k| qi(signs[a] * signs[b] * signs[k] * g[k])).collect();
            ensure(table.bracket(a, b) == expected.as_slice(), || {
                format!("[{}, {}]: {:?} vs {:?}", basis[a], basis[b], table.bracket(a, b), expected)
            })?;
        }
    }
    Ok(format!("{checked} grade checks, 200 Jacobi triples, 36 se(3) brackets"))
}

// ------------------------------------------------------------------ 10

fn playfair_axiom(rng: &mut StdRng) -> Outcome {
    for _ in 0..100 {
        let [x, y, z] = random_point(rng);
        let point = PointP::new(x.clone(), y.clone(), z.clone());
        let plane = loop {
            if let Ok(p) = Plane::from_coeffs(rational(rng), rational(rng), rational(rng), rational(rng)) {
                break p;
            }
        };
        let v = plane.vector().coords().to_vec();
        let out = pga3d::parallel_through(&point, &plane);
        let o = out.vector().coords();
        let meets = |v0: &Q| v0.clone() + &v[1] * &x + &v[2] * &y + &v[3] * &z;
        ensure(meets(&o[0]).is_zero(), || format!("{out} misses the point"))?;
        ensure(o[1..] == v[1..], || format!("{out} is not parallel to {plane}"))?;
        // Incidence is affine in λ with slope 1, so exactly one λ works.
        let lambda = -meets(&v[0]);
        ensure(o[0] == &v[0] + &lambda, || format!("λ for {plane} is not {lambda}"))?;
        ensure(!meets(&(&v[0] + &lambda + Q::one())).is_zero(), || "λ is not unique".into())?;
    }
    Ok("100 (P, Π) pairs".into())
}

// ------------------------------------------------------------------ 11

fn cosine_law(rng: &mut StdRng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let [u, v] = [0, 1].map(|_| loop {
            let c: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            if let Ok(p) = Plane::new(Vector(c.to_vec())) {
                break p;
            }
        });
        let theta = pga3d::dihedral_angle(&u, &v);
        let (nu, nv) = (u.normal(), v.normal());
        let dot: f64 = (0..3).map(|i| nu[i] * nv[i]).sum();
        let norm = |n: &[f64; 3]| n.iter().map(|c| c * c).sum::<f64>().sqrt();
        let (mu, mv) = (norm(&nu), norm(&nv));
        let cos = dot / (mu * mv);
        worst = worst.max((theta.cos() - cos).abs());
        ensure((theta.cos() - cos).abs() <= 1e-12, || format!("cos θ off by {:e}", (theta.cos() - cos).abs()))?;
        let b = pga3d::bilinear(&u, &v);
        ensure((b - mu * mv * theta.cos()).abs() <= 1e-12, || format!("B(u,v) ≠ |u||v|cos θ for {u}, {v}"))?;
    }
    Ok(format!("100 plane pairs, worst |Δcos θ| = {worst:.1e}"))
}

// ------------------------------------------------------------------ 12

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = gacalc_cli::run(std::iter::once("gacalc").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf-8"))
}

fn cli(rng: &mut StdRng) -> Outcome {
    let (code, out) = run_cli(&["check", "--suite", "all"]);
    let passes = out.lines().filter(|l| l.starts_with("PASS")).count();
    ensure(code == 0, || format!("check exited {code}:\n{out}"))?;
    ensure(passes >= 12, || format!("only {passes} PASS lines"))?;
    ensure(!out.lines().any(|l| l.starts_with("FAIL")), || "check reported a FAIL".into())?;

    let alg = pga();
    for _ in 0..1000 {
        let x = random_mv(&alg, rng);
        let text = expr::print(&x);
        let back = expr::parse_eval(&text, &alg).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == x, || format!("round trip changed {text}"))?;
    }
    for _ in 0..50 {
        let text = expr::print(&random_mv(&alg, rng));
        let (code, out) = run_cli(&["--scalars", "rational", "eval", &text]);
        ensure(code == 0 && out.trim() == text, || format!("`eval {text}` printed {out:?}"))?;
    }
    Ok(format!("check: {passes} PASS lines; 1000 library and 50 CLI round trips"))
}
