//! Corpus checks: the structural identities and coincidence results, run
//! on seeded random diagrams.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::class::CohomologyClass;
use crate::diagram::{random_diagram, RandomParams};
use crate::error::Result;
use crate::geometry::MAX_BALL_DIM;
use crate::graphlink::GraphLink;
use crate::rational::{self, Rational};

pub const CHECKS: [&str; 7] = [
    "valence",
    "divisibility",
    "zonotope",
    "decomposition",
    "coincidence",
    "fibration-criterion",
    "fibered-facets",
];

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub count: usize,
    pub seed: u64,
    pub params: RandomParams,
    /// Random integral classes per diagram.
    pub classes: usize,
    /// Coordinate bound for random classes.
    pub class_bound: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { count: 50, seed: 0, params: RandomParams::default(), classes: 20, class_bound: 10 }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub runs: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub diagrams: usize,
    pub checks: Vec<CheckTally>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }
}

pub fn random_class(rng: &mut impl Rng, r: usize, bound: i64) -> CohomologyClass {
    let coords: Vec<i64> = (0..r).map(|_| rng.random_range(-bound..=bound)).collect();
    CohomologyClass::from_ints(&coords)
}

struct Recorder<'a> {
    tally: &'a mut [CheckTally],
    label: String,
}

impl Recorder<'_> {
    fn record(&mut self, check: usize, outcome: Result<Option<String>>) {
        let t = &mut self.tally[check];
        t.runs += 1;
        match outcome {
            Ok(None) => {}
            Ok(Some(msg)) => t.failures.push(format!("{}: {msg}", self.label)),
            Err(e) => t.failures.push(format!("{}: {e}", self.label)),
        }
    }
}

/// Runs every check on one diagram, with the given classes.
pub fn check_link(g: &GraphLink, classes: &[CohomologyClass], tally: &mut [CheckTally], label: String) {
    let mut rec = Recorder { tally, label };
    let lm = g.linking();
    let d = g.diagram();

    let bad: Vec<String> = (0..lm.node_count)
        .filter(|&c| !lm.delta_tilde_minus_2[c].is_positive())
        .map(|c| lm.columns[c].clone())
        .collect();
    rec.record(0, Ok((!bad.is_empty()).then(|| format!("corrected valence not positive at {bad:?}"))));

    let mut msg = None;
    for leaf in d.leaves() {
        let (node, alpha) = d.anchor(leaf).expect("leaf is attached to a node");
        let lc = lm.column(lm.column_of(leaf).unwrap());
        let nc = lm.column(lm.column_of(node).unwrap());
        if lc.iter().zip(&nc).any(|(&l, &n)| l * alpha as i64 != n) {
            msg = Some(format!("leaf {} does not divide its node", d.vertex(leaf).id));
        }
    }
    rec.record(1, Ok(msg));

    let zono = (|| {
        let z = g.zonotope()?;
        let s = g.support_polytope()?;
        Ok((z != s).then(|| "Newton polytope differs from the zonotope".to_string()))
    })();
    rec.record(2, zono);

    for phi in classes {
        let decomposition = (|| {
            let full = g.thurston_all_vertices(phi)?;
            let nodes: Rational = g.node_terms(phi)?.into_iter().map(|t| t.contribution).sum();
            Ok((full != nodes)
                .then(|| format!("at {phi}: {} vs {}", rational::format(&full), rational::format(&nodes))))
        })();
        rec.record(3, decomposition);

        let coincidence = (|| {
            let t = g.thurston_norm(phi)?;
            let a = g.alexander_width(phi)?;
            let expected = if g.r() == 1 { &t + phi.coords()[0].abs() } else { t.clone() };
            Ok((a != expected).then(|| {
                format!("at {phi}: alexander {} thurston {}", rational::format(&a), rational::format(&t))
            }))
        })();
        rec.record(4, coincidence);

        rec.record(5, g.is_fibered(phi).map(|_| None));
    }

    match g.reduction() {
        Ok(red) if red.rank <= MAX_BALL_DIM => {
            let facets = (|| {
                let report = g.classify_facets()?;
                let unfibered = report.facets.iter().filter(|f| !f.fibered).count();
                let crossings = report.interior_crossings();
                Ok((unfibered > 0 || crossings > 0)
                    .then(|| format!("{unfibered} non-fibered facets, {crossings} interior crossings")))
            })();
            rec.record(6, facets);
        }
        Ok(_) => {}
        Err(e) => rec.record(6, Err(e)),
    }
}

/// Checks `count` random diagrams drawn from `seed`.
pub fn verify_corpus(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checks: Vec<CheckTally> =
        CHECKS.iter().map(|&name| CheckTally { name, ..Default::default() }).collect();
    for _ in 0..opts.count {
        let trial_seed: u64 = rng.random();
        let d = random_diagram(trial_seed, opts.params)?;
        let classes: Vec<CohomologyClass> = (0..opts.classes)
            .map(|_| random_class(&mut rng, d.r(), opts.class_bound))
            .filter(|phi| !phi.is_zero() || opts.classes == 1)
            .collect();
        let label = format!("diagram seed {trial_seed}");
        match GraphLink::new(d) {
            Ok(g) => check_link(&g, &classes, &mut checks, label),
            Err(e) => checks[0].failures.push(format!("{label}: {e}")),
        }
    }
    Ok(VerifyReport { diagrams: opts.count, checks })
}
