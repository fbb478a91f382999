//! The auxiliary digraphs on `[n]`: `F(A)` of a circular matrix, and the
//! circulant-case digraphs `D(n, k)` and `G(n, k)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ground::{GroundError, GroundSet};
use crate::matrix::CircularMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("digraph parameters out of range: n = {n}, k = {k}")]
    Params { n: usize, k: usize },
}

/// Arc kinds. Row arcs carry the 1-based row they come from; in `D(n, k)` and
/// `G(n, k)` the length-`k` arc leaving `i` is the row arc of row `i + 1` of
/// `C_n^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Row(usize),
    #[serde(rename = "fwd")]
    Forward,
    #[serde(rename = "rev")]
    Reverse,
    /// Length `k + 1` arcs of `G(n, k)`.
    Long,
}

impl ArcKind {
    pub fn is_row(self) -> bool {
        matches!(self, ArcKind::Row(_))
    }

    pub fn is_short(self) -> bool {
        matches!(self, ArcKind::Forward | ArcKind::Reverse)
    }

    pub fn row(self) -> Option<usize> {
        match self {
            ArcKind::Row(i) => Some(i),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub kind: ArcKind,
    /// Signed length: the number of ones of the row for row arcs, `±1` for
    /// short arcs, `k + 1` for long arcs.
    pub length: i64,
}

impl Arc {
    pub fn forward(g: GroundSet, tail: usize) -> Self {
        Arc { tail, head: g.succ(tail), kind: ArcKind::Forward, length: 1 }
    }

    pub fn reverse(g: GroundSet, tail: usize) -> Self {
        Arc { tail, head: g.pred(tail), kind: ArcKind::Reverse, length: -1 }
    }

    /// Vertices of `S` this arc jumps over, ascending.
    ///
    /// A row or long arc `(u, v)` jumps over `(u, v]_n`; the forward arc
    /// `(j − 1, j)` and the reverse arc `(j, j − 1)` jump over `j` only.
    pub fn jumped(&self, g: GroundSet, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = match self.kind {
            ArcKind::Forward => set.iter().copied().filter(|&j| j == self.head).collect(),
            ArcKind::Reverse => set.iter().copied().filter(|&j| j == self.tail).collect(),
            ArcKind::Row(_) | ArcKind::Long => set
                .iter()
                .copied()
                .filter(|&j| {
                    let d = match g.dist(self.tail, j) {
                        0 => g.size(),
                        d => d,
                    };
                    d as i64 <= self.length
                })
                .collect(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.tail, self.head)?;
        match self.kind {
            ArcKind::Row(i) => write!(f, "row={i}")?,
            ArcKind::Forward => f.write_str("fwd")?,
            ArcKind::Reverse => f.write_str("rev")?,
            ArcKind::Long => f.write_str("long")?,
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "lowercase")]
pub enum Flavor {
    /// `F(A)` of a circular matrix.
    F,
    /// Row arcs `(i, i + k)` and reverse arcs `(i, i − 1)`.
    D { k: usize },
    /// Arcs `(i, i + k)` and `(i, i + k + 1)`.
    G { k: usize },
}

/// Kind tag used to resolve arcs given by endpoints only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindTag {
    Row,
    Fwd,
    Rev,
    Long,
}

impl KindTag {
    fn matches(self, kind: ArcKind) -> bool {
        matches!(
            (self, kind),
            (KindTag::Row, ArcKind::Row(_))
                | (KindTag::Fwd, ArcKind::Forward)
                | (KindTag::Rev, ArcKind::Reverse)
                | (KindTag::Long, ArcKind::Long)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDigraph {
    ground: GroundSet,
    flavor: Flavor,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl ArcDigraph {
    fn from_arcs(ground: GroundSet, flavor: Flavor, mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        let mut out = vec![Vec::new(); ground.size() + 1];
        for (idx, a) in arcs.iter().enumerate() {
            out[a.tail].push(idx);
        }
        Self { ground, flavor, arcs, out }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// All arcs sorted by `(tail, head, kind)`.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = &Arc> + '_ {
        self.out[v].iter().map(move |&idx| &self.arcs[idx])
    }

    pub fn row_arcs(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.arcs.iter().filter(|a| a.kind.is_row())
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    pub fn arcs_between(&self, tail: usize, head: usize) -> Vec<Arc> {
        if !self.ground.contains(tail) {
            return Vec::new();
        }
        self.out_arcs(tail).filter(|a| a.head == head).copied().collect()
    }

    /// The unique arc `tail -> head` whose kind matches `tag`.
    pub fn resolve(&self, tail: usize, head: usize, tag: KindTag) -> Option<Arc> {
        let mut hits = self.arcs_between(tail, head).into_iter().filter(|a| tag.matches(a.kind));
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.head == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// One arc per line as `tail -> head [kind]`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for a in &self.arcs {
            s.push_str(&a.to_string());
            s.push('\n');
        }
        s
    }
}

/// `F(A)`: a row arc `(ℓ_i − 1, u_i)` per row plus both short arcs at every
/// vertex.
pub fn build_f(a: &CircularMatrix) -> ArcDigraph {
    let g = a.ground();
    let mut arcs = Vec::with_capacity(a.m() + 2 * g.size());
    for (k, iv) in a.rows().iter().enumerate() {
        arcs.push(Arc {
            tail: g.pred(iv.lo),
            head: iv.hi,
            kind: ArcKind::Row(k + 1),
            length: iv.len(g) as i64,
        });
    }
    for j in g.indices() {
        arcs.push(Arc::forward(g, j));
        arcs.push(Arc::reverse(g, j));
    }
    ArcDigraph::from_arcs(g, Flavor::F, arcs)
}

fn row_arc_of_circulant(g: GroundSet, i: usize, k: usize) -> Arc {
    Arc {
        tail: i,
        head: g.shift(i, k as i64),
        kind: ArcKind::Row(g.succ(i)),
        length: k as i64,
    }
}

/// `D(n, k)`: arcs `(i, i + k)` and `(i, i − 1)`.
pub fn build_d(n: usize, k: usize) -> Result<ArcDigraph, DigraphError> {
    let g = GroundSet::new(n)?;
    if k < 2 || k > n - 1 {
        return Err(DigraphError::Params { n, k });
    }
    let arcs = g
        .indices()
        .flat_map(|i| [row_arc_of_circulant(g, i, k), Arc::reverse(g, i)])
        .collect();
    Ok(ArcDigraph::from_arcs(g, Flavor::D { k }, arcs))
}

/// `G(n, k)`: arcs `(i, i + k)` and `(i, i + k + 1)`.
pub fn build_g(n: usize, k: usize) -> Result<ArcDigraph, DigraphError> {
    let g = GroundSet::new(n)?;
    if k < 1 || k > n - 1 {
        return Err(DigraphError::Params { n, k });
    }
    let arcs = g
        .indices()
        .flat_map(|i| {
            [
                row_arc_of_circulant(g, i, k),
                Arc { tail: i, head: g.shift(i, k as i64 + 1), kind: ArcKind::Long, length: k as i64 + 1 },
            ]
        })
        .collect();
    Ok(ArcDigraph::from_arcs(g, Flavor::G { k }, arcs))
}

/// Vertices of `set` jumped over by `arc`.
pub fn jumped_vertices(g: GroundSet, arc: &Arc, set: &[usize]) -> Vec<usize> {
    arc.jumped(g, set)
}
