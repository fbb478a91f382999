//! Simple circuits and disjoint circuit families in the auxiliary digraphs:
//! winding numbers, the circle/cross/bullet partition, blocks, and bad arcs.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Arc, ArcDigraph, ArcKind, KindTag};
use crate::ground::GroundSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("arc {0} is not in the digraph")]
    ArcNotFound(Arc),
    #[error("no arc {tail} -> {head} of the requested kind")]
    NoSuchStep { tail: usize, head: usize },
    #[error("step {tail} -> {head} matches several arcs; give the arc kind explicitly")]
    AmbiguousStep { tail: usize, head: usize },
    #[error("empty circuit")]
    Empty,
    #[error("arc sequence breaks at position {position}: not a closed walk")]
    NotClosed { position: usize },
    #[error("vertex {0} is visited twice")]
    RepeatedVertex(usize),
    #[error("circuit has no row arc")]
    NoRowArc,
    #[error("winding number {0} is not positive")]
    ZeroWinding(i64),
    #[error("block starting at bullet {bullet} mixes vertex classes")]
    BlockStructureViolation { bullet: usize },
    #[error("row arc {arc} jumps over {count} essential bullets of a circuit with winding number {winding}")]
    JumpCountViolation { arc: Arc, count: usize, winding: usize },
    #[error("circuits {first} and {second} share vertex {vertex}")]
    Overlap { first: usize, second: usize, vertex: usize },
    #[error("circuit {index} has (s, p) = ({s}, {p}), expected ({expected_s}, {expected_p})")]
    NonUniformParameters { index: usize, s: usize, p: usize, expected_s: usize, expected_p: usize },
    #[error("family of {a} circuits has s = {s}, p = {p} but gcd(s, p) ≠ {a}")]
    MultiplicityMismatch { a: usize, s: usize, p: usize },
    #[error("row arcs {first} and {second} jump over the same essential bullets")]
    JumpSetCollision { first: Arc, second: Arc },
}

impl CircuitError {
    pub fn code(&self) -> &'static str {
        match self {
            CircuitError::ArcNotFound(_) | CircuitError::NoSuchStep { .. } => "ArcNotFound",
            CircuitError::AmbiguousStep { .. } => "AmbiguousStep",
            CircuitError::Empty | CircuitError::NotClosed { .. } => "NotClosed",
            CircuitError::RepeatedVertex(_) => "RepeatedVertex",
            CircuitError::NoRowArc => "NoRowArc",
            CircuitError::ZeroWinding(_) => "ZeroWinding",
            CircuitError::BlockStructureViolation { .. } => "BlockStructureViolation",
            CircuitError::JumpCountViolation { .. } => "JumpCountViolation",
            CircuitError::Overlap { .. } => "Overlap",
            CircuitError::NonUniformParameters { .. } | CircuitError::MultiplicityMismatch { .. } => {
                "NonUniformParameters"
            }
            CircuitError::JumpSetCollision { .. } => "JumpSetCollision",
        }
    }
}

/// A simple directed circuit with positive winding number, rotated to start
/// at its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Circuit {
    arcs: Vec<Arc>,
    row_arcs: usize,
    winding: usize,
}

impl Circuit {
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Vertices in traversal order.
    pub fn vertices(&self) -> Vec<usize> {
        self.arcs.iter().map(|a| a.tail).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.arcs.iter().map(|a| a.tail).collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.arcs.iter().any(|a| a.tail == v)
    }

    /// Number of non-short arcs (`s_i`).
    pub fn row_arc_count(&self) -> usize {
        self.row_arcs
    }

    pub fn winding(&self) -> usize {
        self.winding
    }

    pub fn count_kind(&self, pred: impl Fn(ArcKind) -> bool) -> usize {
        self.arcs.iter().filter(|a| pred(a.kind)).count()
    }
}

/// Checks that `arcs` is a simple closed walk of `d` with at least one row arc
/// and positive winding number.
pub fn validate_circuit(d: &ArcDigraph, arcs: &[Arc]) -> Result<Circuit, CircuitError> {
    if arcs.is_empty() {
        return Err(CircuitError::Empty);
    }
    for a in arcs {
        if !d.contains(a) {
            return Err(CircuitError::ArcNotFound(*a));
        }
    }
    for t in 1..arcs.len() {
        if arcs[t - 1].head != arcs[t].tail {
            return Err(CircuitError::NotClosed { position: t });
        }
    }
    if arcs[arcs.len() - 1].head != arcs[0].tail {
        return Err(CircuitError::NotClosed { position: arcs.len() });
    }
    let mut seen = BTreeSet::new();
    for a in arcs {
        if !seen.insert(a.tail) {
            return Err(CircuitError::RepeatedVertex(a.tail));
        }
    }
    let n = d.ground().size() as i64;
    let total: i64 = arcs.iter().map(|a| a.length).sum();
    debug_assert_eq!(total.rem_euclid(n), 0);
    let winding = total / n;
    if winding <= 0 {
        return Err(CircuitError::ZeroWinding(winding));
    }
    let row_arcs = arcs.iter().filter(|a| !a.kind.is_short()).count();
    if row_arcs == 0 {
        return Err(CircuitError::NoRowArc);
    }
    let start = (0..arcs.len()).min_by_key(|&t| arcs[t].tail).unwrap();
    let mut rotated = arcs[start..].to_vec();
    rotated.extend_from_slice(&arcs[..start]);
    Ok(Circuit { arcs: rotated, row_arcs, winding: winding as usize })
}

/// Builds a circuit from `(tail, head, kind)` steps, resolving row indices
/// from the endpoints.
pub fn circuit_from_steps(
    d: &ArcDigraph,
    steps: &[(usize, usize, KindTag)],
) -> Result<Circuit, CircuitError> {
    let arcs = steps
        .iter()
        .map(|&(tail, head, tag)| d.resolve(tail, head, tag).ok_or(CircuitError::NoSuchStep { tail, head }))
        .collect::<Result<Vec<_>, _>>()?;
    validate_circuit(d, &arcs)
}

/// Builds a circuit from a vertex sequence. A trailing repeat of the first
/// vertex is optional. Every step must be realized by exactly one arc.
pub fn circuit_from_vertices(d: &ArcDigraph, seq: &[usize]) -> Result<Circuit, CircuitError> {
    let mut seq = seq.to_vec();
    if seq.len() > 1 && seq.first() == seq.last() {
        seq.pop();
    }
    if seq.is_empty() {
        return Err(CircuitError::Empty);
    }
    let mut arcs = Vec::with_capacity(seq.len());
    for t in 0..seq.len() {
        let (tail, head) = (seq[t], seq[(t + 1) % seq.len()]);
        let between = d.arcs_between(tail, head);
        match between.as_slice() {
            [] => return Err(CircuitError::NoSuchStep { tail, head }),
            [a] => arcs.push(*a),
            _ => return Err(CircuitError::AmbiguousStep { tail, head }),
        }
    }
    validate_circuit(d, &arcs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Circle,
    Cross,
    Bullet,
}

/// `B_j = [b_j, v_j]_n`, with the tail of the row arc leaving it (`minus`)
/// and the head of the row arc entering it (`plus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub bullet: usize,
    pub end: usize,
    pub kind: BlockKind,
    pub minus: usize,
    pub plus: usize,
}

impl Block {
    pub fn members(&self, g: GroundSet) -> Vec<usize> {
        (0..=g.dist(self.bullet, self.end)).map(|t| g.shift(self.bullet, t as i64)).collect()
    }

    pub fn contains(&self, g: GroundSet, v: usize) -> bool {
        g.dist(self.bullet, v) <= g.dist(self.bullet, self.end)
    }
}

/// Vertex partition induced by a circuit or a family of disjoint circuits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub circles: Vec<usize>,
    pub crosses: Vec<usize>,
    pub bullets: Vec<usize>,
    /// Bullets visited by the circuits, ascending (`b_1 < … < b_s`).
    pub essential: Vec<usize>,
    /// One block per essential bullet, in the same order.
    pub blocks: Vec<Block>,
}

impl Classification {
    pub fn block_of(&self, g: GroundSet, v: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.contains(g, v))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Circle,
    Cross,
    Bullet,
}

/// Classifies the vertices of `[n]` with respect to the union of `circuits`.
pub fn classify(g: GroundSet, circuits: &[Circuit]) -> Result<Classification, CircuitError> {
    let n = g.size();
    let mut class = vec![Class::Bullet; n + 1];
    let mut on_circuit = vec![false; n + 1];
    for c in circuits {
        for a in c.arcs() {
            on_circuit[a.tail] = true;
            match a.kind {
                ArcKind::Forward => class[a.head] = Class::Circle,
                ArcKind::Reverse => class[a.tail] = Class::Cross,
                _ => {}
            }
        }
    }
    let pick = |want: Class| -> Vec<usize> { g.indices().filter(|&j| class[j] == want).collect() };
    let circles = pick(Class::Circle);
    let crosses = pick(Class::Cross);
    let bullets = pick(Class::Bullet);
    let essential: Vec<usize> = bullets.iter().copied().filter(|&j| on_circuit[j]).collect();

    let mut blocks = Vec::with_capacity(essential.len());
    let mut covered = 0;
    for &b in &essential {
        let t = (1..=n).find(|&t| class[g.shift(b, t as i64)] == Class::Bullet).unwrap();
        let end = g.shift(b, t as i64 - 1);
        let kind = if t == 1 {
            BlockKind::Bullet
        } else {
            let first = class[g.succ(b)];
            let uniform = (1..t).all(|q| class[g.shift(b, q as i64)] == first);
            match first {
                Class::Circle if uniform => BlockKind::Circle,
                Class::Cross if uniform => BlockKind::Cross,
                _ => return Err(CircuitError::BlockStructureViolation { bullet: b }),
            }
        };
        if (0..t).any(|q| !on_circuit[g.shift(b, q as i64)]) {
            return Err(CircuitError::BlockStructureViolation { bullet: b });
        }
        covered += t;
        let (minus, plus) = match kind {
            BlockKind::Cross => (b, end),
            BlockKind::Circle => (end, b),
            BlockKind::Bullet => (b, b),
        };
        blocks.push(Block { bullet: b, end, kind, minus, plus });
    }
    if covered != on_circuit.iter().filter(|&&x| x).count() {
        let bullet = essential.first().copied().unwrap_or(0);
        return Err(CircuitError::BlockStructureViolation { bullet });
    }
    Ok(Classification { circles, crosses, bullets, essential, blocks })
}

/// Row arcs predicted from the block structure: `(B⁻_i, B⁺_{i+p})`.
pub fn predicted_row_arcs(class: &Classification, p: usize) -> Vec<(usize, usize)> {
    let s = class.blocks.len();
    (0..s)
        .map(|i| (class.blocks[i].minus, class.blocks[(i + p) % s].plus))
        .collect()
}

/// A row arc jumping over `p_i − 1` essential bullets of member `circuit`
/// (1-based) of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadArc {
    pub arc: Arc,
    pub circuit: usize,
    pub jumped: usize,
}

/// All bad arcs of `d` with respect to the circuits, checking the jump-count
/// bounds on the way.
pub fn bad_arcs(d: &ArcDigraph, circuits: &[Circuit]) -> Result<Vec<BadArc>, CircuitError> {
    let g = d.ground();
    let mut out = Vec::new();
    for (idx, c) in circuits.iter().enumerate() {
        let class = classify(g, std::slice::from_ref(c))?;
        let p = c.winding();
        for arc in d.row_arcs() {
            let count = arc.jumped(g, &class.essential).len();
            let in_range = count + 1 >= p && count <= p + 1;
            let ends_ok = (count + 1 != p || c.contains_vertex(arc.tail))
                && (count != p + 1 || c.contains_vertex(arc.head));
            if !in_range || !ends_ok {
                return Err(CircuitError::JumpCountViolation { arc: *arc, count, winding: p });
            }
            if count + 1 == p {
                out.push(BadArc { arc: *arc, circuit: idx + 1, jumped: count });
            }
        }
    }
    Ok(out)
}

/// A family of pairwise vertex-disjoint circuits with pooled parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFamily {
    pub circuits: Vec<Circuit>,
    /// Number of circuits.
    pub a: usize,
    /// Total number of row arcs.
    pub s: usize,
    /// Total winding number.
    pub p: usize,
    pub classification: Classification,
}

impl CircuitFamily {
    /// Pooled essential bullets, ascending.
    pub fn bullets(&self) -> &[usize] {
        &self.classification.essential
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.circuits.iter().flat_map(|c| c.arcs().iter())
    }

    pub fn row_arcs(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.arcs().filter(|a| !a.kind.is_short())
    }
}

/// Validates a family of circuits of `d` and pools its classification.
pub fn validate_family(d: &ArcDigraph, mut circuits: Vec<Circuit>) -> Result<CircuitFamily, CircuitError> {
    if circuits.is_empty() {
        return Err(CircuitError::Empty);
    }
    circuits.sort_by_key(|c| c.arcs()[0].tail);
    let g = d.ground();
    let mut owner = vec![0usize; g.size() + 1];
    for (idx, c) in circuits.iter().enumerate() {
        for v in c.vertices() {
            if owner[v] != 0 {
                return Err(CircuitError::Overlap { first: owner[v], second: idx + 1, vertex: v });
            }
            owner[v] = idx + 1;
        }
    }
    let (s0, p0) = (circuits[0].row_arc_count(), circuits[0].winding());
    for (idx, c) in circuits.iter().enumerate() {
        if (c.row_arc_count(), c.winding()) != (s0, p0) {
            return Err(CircuitError::NonUniformParameters {
                index: idx + 1,
                s: c.row_arc_count(),
                p: c.winding(),
                expected_s: s0,
                expected_p: p0,
            });
        }
    }
    let a = circuits.len();
    let (s, p) = (a * s0, a * p0);
    if s.gcd(&p) != a {
        return Err(CircuitError::MultiplicityMismatch { a, s, p });
    }
    let classification = classify(g, &circuits)?;
    let mut jump_sets: Vec<(Vec<usize>, Arc)> = Vec::with_capacity(s);
    for c in &circuits {
        for arc in c.arcs().iter().filter(|a| !a.kind.is_short()) {
            let jumped = arc.jumped(g, &classification.essential);
            if jumped.len() != p {
                return Err(CircuitError::JumpCountViolation { arc: *arc, count: jumped.len(), winding: p });
            }
            jump_sets.push((jumped, *arc));
        }
    }
    jump_sets.sort();
    for w in jump_sets.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(CircuitError::JumpSetCollision { first: w[0].1, second: w[1].1 });
        }
    }
    Ok(CircuitFamily { circuits, a, s, p, classification })
}
