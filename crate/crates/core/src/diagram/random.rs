//! Seeded generator of valid splice diagrams, used as test input.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{splice, validate, Edge, Sign, SpliceDiagram, Vertex, VertexKind};
use crate::error::{Error, Result};

const MAX_ATTEMPTS: usize = 200;
const MAX_SLOT_TRIES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub max_nodes: usize,
    pub max_degree: usize,
    pub weight_bound: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_nodes: 4, max_degree: 4, weight_bound: 5 }
    }
}

/// Single-node diagram `Σ(sign; arrow_weights, leaf_weights)` with one arrow
/// per entry of `arrow_weights` (in order) and one leaf per `leaf_weights`.
pub fn seifert_diagram(
    name: &str,
    sign: Sign,
    arrow_weights: &[u64],
    leaf_weights: &[u64],
) -> Result<SpliceDiagram> {
    let mut vertices = vec![Vertex { id: format!("{name}n"), kind: VertexKind::Node(sign) }];
    let mut edges = Vec::new();
    for (j, &w) in arrow_weights.iter().enumerate() {
        edges.push(Edge { ends: [0, vertices.len()], weights: [Some(w), None] });
        vertices.push(Vertex { id: format!("{name}a{}", j + 1), kind: VertexKind::Arrowhead });
    }
    for (j, &w) in leaf_weights.iter().enumerate() {
        edges.push(Edge { ends: [0, vertices.len()], weights: [Some(w), None] });
        vertices.push(Vertex { id: format!("{name}b{}", j + 1), kind: VertexKind::Leaf });
    }
    SpliceDiagram::new(name, vertices, edges)
}

/// Deterministic in `seed`. Splices between 1 and `max_nodes` random Seifert
/// diagrams whose weights around each node are pairwise coprime, with leaf
/// weights at least 2.
pub fn random_diagram(seed: u64, params: RandomParams) -> Result<SpliceDiagram> {
    if params.max_nodes == 0 || params.max_degree < 3 || params.weight_bound < 3 {
        return Err(Error::Generator(format!(
            "need max_nodes >= 1, max_degree >= 3, weight_bound >= 3; got {params:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(d) = attempt(&mut rng, params) {
            let report = validate(&d);
            if report.errors.is_empty() && report.warnings.is_empty() {
                return Ok(d);
            }
        }
    }
    Err(Error::Generator(format!("no valid diagram after {MAX_ATTEMPTS} attempts")))
}

fn attempt(rng: &mut ChaCha8Rng, params: RandomParams) -> Option<SpliceDiagram> {
    let pieces = rng.random_range(1..=params.max_nodes);
    let mut d = random_piece(rng, params, 0, 1)?;
    for k in 1..pieces {
        // the new piece needs one arrow for the splice, and the result needs one left
        let min_arrows = if d.r() >= 2 { 1 } else { 2 };
        let s = random_piece(rng, params, k, min_arrows)?;
        let a1 = d.arrows()[rng.random_range(0..d.r())];
        let a2 = s.arrows()[rng.random_range(0..s.r())];
        let (a1, a2) = (d.vertex(a1).id.clone(), s.vertex(a2).id.clone());
        d = splice(&d, &a1, &s, &a2).ok()?;
    }
    Some(d)
}

fn random_piece(
    rng: &mut ChaCha8Rng,
    params: RandomParams,
    index: usize,
    min_arrows: usize,
) -> Option<SpliceDiagram> {
    let degree = rng.random_range(3..=params.max_degree);
    let arrows = rng.random_range(min_arrows.min(degree)..=degree);
    let mut chosen: Vec<u64> = Vec::with_capacity(degree);
    for slot in 0..degree {
        let low = if slot < arrows { 1 } else { 2 };
        let w = (0..MAX_SLOT_TRIES)
            .map(|_| rng.random_range(low..=params.weight_bound))
            .find(|w| chosen.iter().all(|c| c.gcd(w) == 1))?;
        chosen.push(w);
    }
    let sign = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
    let name = format!("p{}", index + 1);
    seifert_diagram(&name, sign, &chosen[..arrows], &chosen[arrows..]).ok()
}
