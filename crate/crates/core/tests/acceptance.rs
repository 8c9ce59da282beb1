//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every comparison is exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splicenorm::diagram::{parse_diagram, random_diagram, RandomParams};
use splicenorm::geometry::{minkowski_sum, width, Polytope};
use splicenorm::rational::{int, ratio};
use splicenorm::{CohomologyClass, GraphLink, LaurentPolynomial, Rational, SpliceDiagram};

const L_EN: &str = include_str!("../../../data/l_en.spl");
const TREFOIL: &str = include_str!("../../../data/trefoil.spl");

const CORPUS_SIZE: usize = 200;
const KNOT_CORPUS_SIZE: usize = 40;
const CLASSES_PER_DIAGRAM: u32 = 100;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < budget, || format!("{what} took {elapsed:?}, budget {budget:?}"))
}

fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
}

fn q2(a: (i64, i64), b: (i64, i64)) -> Vec<Rational> {
    vec![ratio(a.0, a.1), ratio(b.0, b.1)]
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Diagrams drawn from a mix of generator settings; every diagram has at
/// most six nodes.
struct Corpus {
    links: Vec<(u64, GraphLink)>,
}

impl Corpus {
    fn build(seed: u64, size: usize, keep: impl Fn(&SpliceDiagram) -> bool) -> Corpus {
        let settings = [
            RandomParams { max_nodes: 6, max_degree: 4, weight_bound: 3 },
            RandomParams { max_nodes: 4, max_degree: 4, weight_bound: 5 },
            RandomParams { max_nodes: 3, max_degree: 5, weight_bound: 7 },
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut links = Vec::with_capacity(size);
        while links.len() < size {
            let s: u64 = rng.random();
            let params = settings[links.len() % settings.len()];
            let d = random_diagram(s, params).expect("generator succeeds");
            if keep(&d) {
                links.push((s, GraphLink::new(d).expect("linking matrix")));
            }
        }
        Corpus { links }
    }
}

fn class_strategy(r: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-25i64..=25, r)
}

fn runner(seed: u64, cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn shrunk<T: std::fmt::Debug>(err: TestError<T>) -> String {
    match err {
        TestError::Fail(why, value) => format!("minimal counterexample {value:?}: {why}"),
        TestError::Abort(why) => format!("aborted: {why}"),
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let d = parse_diagram(L_EN).map_err(e)?;
    let g = GraphLink::new(d).map_err(e)?;

    // (a) polynomial against the published quotient and factored form
    let delta = g.alexander().map_err(e)?.clone();
    let mut num = LaurentPolynomial::binomial(&[15, -20, -20]);
    for _ in 0..2 {
        num = num.mul(&LaurentPolynomial::binomial(&[-10, -6, -6])).map_err(e)?;
    }
    let den = LaurentPolynomial::binomial(&[3, -4, -4])
        .mul(&LaurentPolynomial::binomial(&[-5, -3, -3]))
        .map_err(e)?;
    let quotient = num.divide_exact(&den).map_err(e)?;
    ensure(delta == quotient.canonicalize().map_err(e)?, || "polynomial differs from the quotient".into())?;
    let u = LaurentPolynomial::binomial(&[5, 3, 3]);
    let u_plus = u.add(&poly(3, &[(&[0, 0, 0], 2)])).map_err(e)?;
    let quintic =
        poly(3, &[(&[12, 0, 0], 1), (&[9, 4, 4], 1), (&[6, 8, 8], 1), (&[3, 12, 12], 1), (&[0, 16, 16], 1)]);
    let factored = poly(3, &[(&[-15, -25, -25], -1)])
        .mul(&u)
        .and_then(|p| p.mul(&u_plus))
        .and_then(|p| p.mul(&u_plus))
        .and_then(|p| p.mul(&quintic))
        .map_err(e)?;
    ensure(factored == quotient, || "factored form is not equal to the quotient".into())?;
    ensure(delta == factored.canonicalize().map_err(e)?, || {
        "polynomial differs from the factored form".into()
    })?;

    // (b) Newton polytope in essential coordinates
    let red = g.reduction().map_err(e)?;
    ensure(red.rank == 2, || format!("b_e = {}, expected 2", red.rank))?;
    let mut expected_newton =
        vec![vec![int(0), int(16)], vec![int(12), int(0)], vec![int(27), int(9)], vec![int(15), int(25)]];
    expected_newton.sort();
    for (name, p) in [("zonotope", g.zonotope().map_err(e)?), ("support", g.support_polytope().map_err(e)?)] {
        let projected = p.map_linear(&red.forward).and_then(|p| p.project(2)).map_err(e)?;
        ensure(projected.vertices() == expected_newton.as_slice(), || {
            format!("{name} projects to {:?}", projected.vertices())
        })?;
    }

    // (c) Thurston norm formula at 1000 random rational classes
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e4);
    for _ in 0..1000 {
        let coords: Vec<Rational> =
            (0..3).map(|_| ratio(rng.random_range(-60..=60), rng.random_range(1..=12))).collect();
        let (p1, p23) = (&coords[0], &coords[1] + &coords[2]);
        let formula =
            int(4) * (int(3) * p1 - int(4) * &p23).abs() + int(3) * (int(5) * p1 + int(3) * &p23).abs();
        let phi = CohomologyClass::new(coords.clone());
        let t = g.thurston_norm(&phi).map_err(e)?;
        ensure(t == formula, || format!("Thurston norm at {phi} is {t}, formula gives {formula}"))?;
    }

    // (d) reduced unit ball
    let ball = g.unit_ball().map_err(e)?;
    let printed = [q2((-3, 116), (5, 116)), q2((3, 116), (-5, 116))];
    for v in &printed {
        ensure(ball.vertices().contains(v), || format!("missing printed vertex {v:?}"))?;
    }
    let derived = [q2((4, 87), (3, 87)), q2((-4, 87), (-3, 87))];
    let typo = q2((4, 77), (3, 77));
    ensure(!ball.vertices().contains(&typo), || "(4/77,3/77) should not be a vertex".into())?;
    for v in &derived {
        ensure(ball.vertices().contains(v), || {
            format!("missing vertex {v:?}; the printed (4/77,3/77) is a suspected typo, the norm formula gives 87")
        })?;
    }
    ensure(ball.vertices().len() == 4, || format!("ball has {} vertices", ball.vertices().len()))?;

    // (e) hyperplanes and facets
    let hs = g.characteristic_hyperplanes().map_err(e)?;
    let lines: Vec<Vec<BigInt>> = hs.iter().map(|h| h.primitive.clone()).collect();
    let expected_lines =
        vec![vec![BigInt::from(3), BigInt::from(-4)], vec![BigInt::from(5), BigInt::from(3)]];
    ensure(lines == expected_lines, || format!("reduced hyperplanes {lines:?}"))?;
    let report = g.classify_facets().map_err(e)?;
    ensure(report.facets.len() == 4 && report.all_fibered(), || "facets are not 4 fibered facets".into())?;
    ensure(report.interior_crossings() == 0, || "a hyperplane crosses a facet interior".into())?;
    ensure(report.vertex_hyperplanes.iter().all(|h| !h.is_empty()), || {
        "a ball vertex is off the hyperplanes".into()
    })?;

    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "L_EN suite")?;
    Ok(format!(
        "Δ matches quotient and factored form; 4 Newton vertices; 1000 norm evaluations; ball ±(4/87,3/87), ±(-3/116,5/116) (printed 77 flagged as typo); 4 fibered facets; {elapsed:.2?}"
    ))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let g = GraphLink::new(parse_diagram(TREFOIL).map_err(e)?).map_err(e)?;
    let delta = g.alexander().map_err(e)?;
    let expected = poly(1, &[(&[2], 1), (&[1], -1), (&[0], 1)]);
    ensure(delta == &expected, || format!("Δ = {delta}"))?;
    let phi = CohomologyClass::from_ints(&[1]);
    let report = g.norm_report(&phi).map_err(e)?;
    ensure(report.thurston == int(1), || format!("‖1‖_T = {}", report.thurston))?;
    ensure(report.alexander == int(2), || format!("‖1‖_A = {}", report.alexander))?;
    ensure(report.knot_offset == Some(int(1)) && report.coincide, || "offset is not |φ|".into())?;
    let genus = g.fiber_genus(&phi).map_err(e)?;
    ensure(genus.genus == int(1) && genus.integral, || format!("genus {}", genus.genus))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_millis(100), "trefoil suite")?;
    Ok(format!("Δ = {delta}, ‖1‖_T = 1, ‖1‖_A = 2, offset 1, g = 1; {elapsed:.2?}"))
}

fn criterion_3(corpus: &Corpus) -> Verdict {
    let start = Instant::now();
    let mut checked = 0u64;
    for (k, (seed, g)) in corpus.links.iter().enumerate() {
        let r = g.r();
        let mut runner = runner(k as u64, CLASSES_PER_DIAGRAM);
        runner
            .run(&class_strategy(r), |v| {
                let phi = CohomologyClass::from_ints(&v);
                let a = g.alexander_width(&phi).map_err(|x| TestCaseError::fail(x.to_string()))?;
                let t = g.thurston_all_vertices(&phi).map_err(|x| TestCaseError::fail(x.to_string()))?;
                prop_assert_eq!(a, t);
                Ok(())
            })
            .map_err(|err| format!("diagram seed {seed}: {}", shrunk(err)))?;
        checked += u64::from(CLASSES_PER_DIAGRAM);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "coincidence corpus")?;
    Ok(format!(
        "{} diagrams (r >= 2), {checked} classes, ‖φ‖_A = ‖φ‖_T throughout; {elapsed:.2?}",
        corpus.links.len()
    ))
}

/// Hull of all subset sums of the node segments, an oracle independent of
/// the iterated Minkowski sum.
fn subset_sum_zonotope(g: &GraphLink) -> Result<Polytope, String> {
    let lm = g.linking();
    let mut segments: Vec<(Rational, Vec<i64>)> =
        lm.node_columns().into_iter().zip(&lm.delta_tilde_minus_2).map(|(c, s)| (s.clone(), c)).collect();
    if g.r() == 1 {
        segments.push((int(1), vec![1]));
    }
    let r = g.r();
    let mut points = Vec::with_capacity(1 << segments.len());
    for mask in 0u32..(1 << segments.len()) {
        let mut p = vec![Rational::zero(); r];
        for (k, (s, c)) in segments.iter().enumerate() {
            if mask & (1 << k) != 0 {
                for (x, l) in p.iter_mut().zip(c) {
                    *x += s * BigInt::from(*l);
                }
            }
        }
        points.push(p);
    }
    Polytope::from_points(r, points).map(|p| p.to_origin_orthant()).map_err(e)
}

fn criterion_4(corpus: &Corpus, knots: &Corpus) -> Verdict {
    let mut max_p = 0;
    for (seed, g) in corpus.links.iter().chain(&knots.links) {
        let p = g.diagram().p();
        max_p = max_p.max(p);
        ensure(p <= 6, || format!("diagram seed {seed} has {p} nodes"))?;
        let support = g.support_polytope().map_err(e)?;
        let zono = g.zonotope().map_err(e)?;
        ensure(support == zono, || {
            format!("diagram seed {seed}: Newton polytope differs from the zonotope")
        })?;
        let oracle = subset_sum_zonotope(g)?;
        ensure(&oracle == zono, || {
            format!("diagram seed {seed}: zonotope differs from the subset-sum hull")
        })?;
    }
    Ok(format!(
        "{} link and {} knot diagrams (p <= {max_p}): Newton polytope = zonotope",
        corpus.links.len(),
        knots.links.len()
    ))
}

fn criterion_5(corpus: &Corpus) -> Verdict {
    let mut evaluations = 0;
    let mut pairs = 0;
    for (k, (seed, g)) in corpus.links.iter().enumerate() {
        let d = g.diagram();
        let lm = g.linking();
        for c in 0..lm.node_count {
            ensure(lm.delta_tilde_minus_2[c].is_positive(), || {
                format!("diagram seed {seed}: δ̃ - 2 = {} at {}", lm.delta_tilde_minus_2[c], lm.columns[c])
            })?;
        }
        for leaf in d.leaves() {
            let (node, alpha) = d.anchor(leaf).ok_or("leaf without node")?;
            let (lc, nc) = (lm.column_of(leaf).unwrap(), lm.column_of(node).unwrap());
            for j in 0..d.r() {
                pairs += 1;
                ensure(lm.entries[j][lc] * alpha as i64 == lm.entries[j][nc], || {
                    format!("diagram seed {seed}: α·l ≠ l_node at leaf {}", lm.columns[lc])
                })?;
            }
        }
        runner(1000 + k as u64, 20)
            .run(&class_strategy(d.r()), |v| {
                let phi = CohomologyClass::from_ints(&v);
                let full = g.thurston_all_vertices(&phi).map_err(|x| TestCaseError::fail(x.to_string()))?;
                let nodes: Rational = g
                    .node_terms(&phi)
                    .map_err(|x| TestCaseError::fail(x.to_string()))?
                    .into_iter()
                    .map(|t| t.contribution)
                    .sum();
                prop_assert_eq!(full, nodes);
                Ok(())
            })
            .map_err(|err| format!("diagram seed {seed}: {}", shrunk(err)))?;
        evaluations += 20;
    }
    Ok(format!(
        "node+leaf sum = node sum at {evaluations} classes; {pairs} divisibility pairs; δ̃ - 2 > 0 at every node"
    ))
}

fn rational_points(dim: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-12i64..=12, 1i64..=4), dim), 1..8)
        .prop_map(|pts| pts.into_iter().map(|p| p.into_iter().map(|(a, b)| ratio(a, b)).collect()).collect())
}

fn criterion_6() -> Verdict {
    let strategy = (1usize..=4).prop_flat_map(|dim| {
        (
            rational_points(dim),
            rational_points(dim),
            prop::collection::vec((-9i64..=9, 1i64..=5), dim),
            (0i64..=20, 1i64..=6),
        )
    });
    let mut runner = runner(6, 500);
    let count = std::cell::Cell::new(0);
    runner
        .run(&strategy, |(p, q, phi, (ln, ld))| {
            let dim = phi.len();
            let p = Polytope::from_points(dim, p).unwrap();
            let q = Polytope::from_points(dim, q).unwrap();
            let phi: Vec<Rational> = phi.into_iter().map(|(a, b)| ratio(a, b)).collect();
            let lambda = ratio(ln, ld);
            let sum = minkowski_sum(&p, &q).unwrap();
            prop_assert_eq!(width(&sum, &phi).unwrap(), width(&p, &phi).unwrap() + width(&q, &phi).unwrap());
            let scaled = p.scale(&lambda).unwrap();
            prop_assert_eq!(width(&scaled, &phi).unwrap(), &lambda * width(&p, &phi).unwrap());
            count.set(count.get() + 1);
            Ok(())
        })
        .map_err(shrunk)?;
    Ok(format!("{} random polytope pairs and scalars: width is Minkowski linear", count.get()))
}

fn criterion_7(corpus: &Corpus) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = 0;
    let mut non_fibered = 0;
    for (seed, g) in &corpus.links {
        let lm = g.linking();
        let r = g.r();
        let hs = g.characteristic_hyperplanes().map_err(e)?;
        let red = g.reduction().map_err(e)?;
        for k in 0..50 {
            let mut v: Vec<i64> = (0..r).map(|_| rng.random_range(-12..=12)).collect();
            if k % 2 == 1 {
                // project onto a random node hyperplane: (l·l) v - (v·l) l
                let l = lm.column(rng.random_range(0..lm.node_count));
                let ll: i64 = l.iter().map(|x| x * x).sum();
                let vl: i64 = v.iter().zip(&l).map(|(a, b)| a * b).sum();
                v = v.iter().zip(&l).map(|(a, b)| ll * a - vl * b).collect();
            }
            let phi = CohomologyClass::from_ints(&v);
            let nonzero = |c: usize| !phi.pair(&lm.column(c)).is_zero();
            let node_only = (0..lm.node_count).all(nonzero);
            let full = (0..lm.columns.len()).all(nonzero);
            ensure(node_only == full, || format!("diagram seed {seed}: criteria disagree at {phi}"))?;
            let reduced = red.reduce_class(phi.coords());
            let on_reduced = hs.iter().any(|h| h.reduced_value(&reduced).is_zero());
            ensure(on_reduced == !node_only, || format!("diagram seed {seed}: reduction unsound at {phi}"))?;
            pairs += 1;
            non_fibered += usize::from(!node_only);
        }
    }

    let mut balls = 0;
    let mut facets = 0;
    for (seed, g) in &corpus.links {
        if g.reduction().map_err(e)?.rank > 3 {
            continue;
        }
        let report = g.classify_facets().map_err(e)?;
        ensure(report.all_fibered(), || format!("diagram seed {seed}: non-fibered facet"))?;
        ensure(report.interior_crossings() == 0, || {
            format!("diagram seed {seed}: hyperplane crosses a facet")
        })?;
        balls += 1;
        facets += report.facets.len();
    }
    ensure(pairs >= 10_000, || format!("only {pairs} pairs"))?;
    Ok(format!(
        "{pairs} (diagram, φ) pairs ({non_fibered} non-fibered) agree; {facets} facets on {balls} balls all fibered, no interior crossings"
    ))
}

fn run(label: &str, f: impl FnOnce() -> Verdict) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(msg)
    });
    match outcome {
        Ok(detail) => {
            println!("PASS criterion {label}: {detail}");
            true
        }
        Err(why) => {
            println!("FAIL criterion {label}: {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let corpus = Corpus::build(2024, CORPUS_SIZE, |d| d.r() >= 2);
    let knots = Corpus::build(2025, KNOT_CORPUS_SIZE, |d| d.r() == 1);
    let results = [
        run("1 (L_EN golden suite)", criterion_1),
        run("2 (trefoil golden suite)", criterion_2),
        run("3 (coincidence corpus)", || criterion_3(&corpus)),
        run("4 (zonotope oracle)", || criterion_4(&corpus, &knots)),
        run("5 (decomposition identities)", || criterion_5(&corpus)),
        run("6 (width linearity)", criterion_6),
        run("7 (fibration suite)", || criterion_7(&corpus)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
