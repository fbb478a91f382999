//! Both directions between circuit families of `F(A)` and circulant minors
//! of `A`.
//!
//! Forward: the pooled essential bullets `B` of a bad-arc-free family give
//! `A/([n] ∖ B) ≈ C_s^p`. Reverse: given a surviving column set `B` with
//! `A/([n] ∖ B) ≈ C_s^p`, pick for every window `j` the row `r(j)` whose
//! trace is `{b_{j−p+1}, …, b_j}` and whose right end is closest to `b_j`,
//! move each `b_j` to `ℓ_{r(j+p)} − 1` or `u_{r(j)}`, and close the row arcs
//! of the chosen rows into circuits with forward and reverse short paths.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{bad_arcs, validate_circuit, validate_family, CircuitError, CircuitFamily};
use crate::digraph::{build_f, Arc, ArcKind};
use crate::ground::GroundSet;
use crate::matrix::{contract_onto, recognize_circulant, trace_of, CircularMatrix, MatrixError, Minor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("bullet list must be strictly ascending, within [1, n], with at least 3 entries")]
    MalformedBullets,
    #[error("contracting onto {bullets:?} does not give a circulant minor")]
    NotACirculantMinor { bullets: Vec<usize> },
    #[error("contraction gives C_{s}^{found}, not C_{s}^{expected}")]
    ParameterMismatch { s: usize, expected: usize, found: usize },
    #[error("row arc {arc} is a bad arc with respect to circuit {circuit}")]
    BadArcPresent { arc: Arc, circuit: usize },
    #[error("no row traces the window ending at bullet {bullet} (j = {j})")]
    EmptyWindow { j: usize, bullet: usize },
    #[error("bullet normalization did not reach a fixpoint after {passes} passes")]
    NotAFixpoint { passes: usize },
    #[error("construction produced {found} circuits, expected gcd(s, p) = {expected}")]
    DecompositionMismatch { expected: usize, found: usize },
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

impl SynthesisError {
    pub fn code(&self) -> &'static str {
        match self {
            SynthesisError::Matrix(e) => e.code(),
            SynthesisError::Circuit(e) => e.code(),
            SynthesisError::MalformedBullets => "MalformedBullets",
            SynthesisError::NotACirculantMinor { .. } => "NotACirculantMinor",
            SynthesisError::ParameterMismatch { .. } => "ParameterMismatch",
            SynthesisError::BadArcPresent { .. } => "BadArcPresent",
            SynthesisError::EmptyWindow { .. } => "EmptyWindow",
            SynthesisError::NotAFixpoint { .. } => "NotAFixpoint",
            SynthesisError::DecompositionMismatch { .. } => "DecompositionMismatch",
            SynthesisError::VerificationFailed(_) => "VerificationFailed",
        }
    }
}

fn verify(cond: bool, what: impl FnOnce() -> String) -> Result<(), SynthesisError> {
    if cond {
        Ok(())
    } else {
        Err(SynthesisError::VerificationFailed(what()))
    }
}

/// A surviving column set `B` with `A/N ≈ C_s^p`, `N = [n] ∖ B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub bullets: Vec<usize>,
    pub complement: Vec<usize>,
    pub s: usize,
    pub p: usize,
    pub a: usize,
    pub minor: Minor,
}

/// Forward direction: the minor induced by a bad-arc-free family.
pub fn circuits_to_minor(a: &CircularMatrix, family: &CircuitFamily) -> Result<MinorWitness, SynthesisError> {
    let f = build_f(a);
    for arc in family.arcs() {
        verify(f.contains(arc), || format!("arc {arc} is not an arc of F(A)"))?;
    }
    if let Some(bad) = bad_arcs(&f, &family.circuits)?.first() {
        return Err(SynthesisError::BadArcPresent { arc: bad.arc, circuit: bad.circuit });
    }
    let bullets = family.bullets().to_vec();
    let minor = contract_onto(a, &bullets)?;
    let found = recognize_circulant(&minor);
    verify(found == Some((family.s, family.p)), || {
        format!("expected C_{}^{}, contraction gives {:?}", family.s, family.p, found)
    })?;

    // every row outside the family contains the trace of some family row
    let g = a.ground();
    let family_rows: Vec<usize> = family.row_arcs().filter_map(|arc| arc.kind.row()).collect();
    let family_traces: Vec<Vec<usize>> = family_rows
        .iter()
        .map(|&i| sorted(trace_of(a.rows()[i - 1], g, &bullets)))
        .collect();
    for (k, &iv) in a.rows().iter().enumerate() {
        if family_rows.contains(&(k + 1)) {
            continue;
        }
        let t = sorted(trace_of(iv, g, &bullets));
        verify(family_traces.iter().any(|ft| ft.iter().all(|x| t.contains(x))), || {
            format!("row {} dominates no row of the family", k + 1)
        })?;
    }
    Ok(MinorWitness {
        complement: g.complement(&bullets),
        bullets,
        s: family.s,
        p: family.p,
        a: family.a,
        minor,
    })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn check_bullets(g: GroundSet, bullets: &[usize]) -> Result<(), SynthesisError> {
    let ascending = bullets.windows(2).all(|w| w[0] < w[1]);
    if bullets.len() < 3 || !ascending || !bullets.iter().all(|&b| g.contains(b)) {
        return Err(SynthesisError::MalformedBullets);
    }
    Ok(())
}

/// Verifies `A/([n] ∖ B) ≈ C_s^p` for the given `p` and returns `s`.
pub fn verify_minor(a: &CircularMatrix, bullets: &[usize], p: usize) -> Result<usize, SynthesisError> {
    check_bullets(a.ground(), bullets)?;
    let minor = contract_onto(a, bullets)?;
    match recognize_circulant(&minor) {
        Some((s, found)) if found == p => Ok(s),
        Some((s, found)) => Err(SynthesisError::ParameterMismatch { s, expected: p, found }),
        None => Err(SynthesisError::NotACirculantMinor { bullets: bullets.to_vec() }),
    }
}

/// `R(j)` for every `j ∈ [s]`: the rows whose trace on `B` is the window
/// `{b_{j−p+1}, …, b_j}`. Entry `j − 1` holds `R(j)`.
pub fn windows_and_r(a: &CircularMatrix, bullets: &[usize], p: usize) -> Result<Vec<Vec<usize>>, SynthesisError> {
    let g = a.ground();
    let s = bullets.len();
    let traces: Vec<Vec<usize>> = a.rows().iter().map(|&iv| sorted(trace_of(iv, g, bullets))).collect();
    (1..=s)
        .map(|j| {
            let window = sorted((0..p).map(|t| bullets[(j - 1 + s - t) % s]).collect());
            let rows: Vec<usize> = traces
                .iter()
                .enumerate()
                .filter(|(_, t)| **t == window)
                .map(|(k, _)| k + 1)
                .collect();
            if rows.is_empty() {
                Err(SynthesisError::EmptyWindow { j, bullet: bullets[j - 1] })
            } else {
                Ok(rows)
            }
        })
        .collect()
}

/// One row of the window table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEntry {
    pub j: usize,
    pub bullet: usize,
    /// `R(j)`.
    pub candidates: Vec<usize>,
    /// `r(j)`.
    pub chosen: usize,
    /// `h_j = u_{r(j)} − b_j`.
    pub offset: usize,
}

fn choose(a: &CircularMatrix, bullet: usize, candidates: &[usize]) -> Result<(usize, usize), SynthesisError> {
    let g = a.ground();
    let mut best: Option<(usize, usize)> = None;
    let mut tie = false;
    for &i in candidates {
        let h = g.dist(bullet, a.rows()[i - 1].hi);
        match best {
            Some((_, bh)) if h == bh => tie = true,
            Some((_, bh)) if h > bh => {}
            _ => {
                best = Some((i, h));
                tie = false;
            }
        }
    }
    verify(!tie, || format!("two rows of R share the right end nearest to bullet {bullet}"))?;
    Ok(best.expect("R(j) is nonempty"))
}

/// `r(j)` with `h_j` minimal.
pub fn select_r(a: &CircularMatrix, bullets: &[usize], p: usize, j: usize) -> Result<(usize, usize), SynthesisError> {
    let table = window_table(a, bullets, p)?;
    table
        .get(j.wrapping_sub(1))
        .map(|e| (e.chosen, e.offset))
        .ok_or(SynthesisError::MalformedBullets)
}

pub fn window_table(a: &CircularMatrix, bullets: &[usize], p: usize) -> Result<Vec<WindowEntry>, SynthesisError> {
    let r = windows_and_r(a, bullets, p)?;
    r.into_iter()
        .enumerate()
        .map(|(k, candidates)| {
            let bullet = bullets[k];
            let (chosen, offset) = choose(a, bullet, &candidates)?;
            Ok(WindowEntry { j: k + 1, bullet, candidates, chosen, offset })
        })
        .collect()
}

/// The normalized column `b'_j` for every window of `table`.
fn normalized_positions(a: &CircularMatrix, table: &[WindowEntry], p: usize) -> Vec<usize> {
    let g = a.ground();
    let s = table.len();
    (0..s)
        .map(|k| {
            let b = table[k].bullet;
            let u = a.rows()[table[k].chosen - 1].hi;
            let l = a.rows()[table[(k + p) % s].chosen - 1].lo;
            // ℓ ∈ [b + 1, u] measured from b; empty when u = b
            let (off_u, off_l) = (g.dist(b, u), g.dist(b, l));
            if off_l >= 1 && off_l <= off_u {
                g.pred(l)
            } else {
                u
            }
        })
        .collect()
}

fn is_fixpoint(a: &CircularMatrix, table: &[WindowEntry], p: usize) -> bool {
    let s = table.len();
    (0..s).all(|k| {
        let b = table[k].bullet;
        let u = a.rows()[table[k].chosen - 1].hi;
        let l = a.rows()[table[(k + p) % s].chosen - 1].lo;
        b == u || b == a.ground().pred(l)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    pub original: Vec<usize>,
    /// `B'`, ascending.
    pub normalized: Vec<usize>,
    /// Window table of the original bullet set.
    pub table: Vec<WindowEntry>,
    /// `b'_j` for each `j`, in the indexing of `original`.
    pub image: Vec<usize>,
    pub passes: usize,
}

impl Normalization {
    /// Whether more than one pass was needed to reach a fixpoint.
    pub fn iterated(&self) -> bool {
        self.passes > 1
    }
}

/// `B → B'`: `b'_j = ℓ_{r(j+p)} − 1` if `ℓ_{r(j+p)} ∈ [b_j + 1, u_{r(j)}]_n`,
/// else `b'_j = u_{r(j)}`.
pub fn normalize_bullets(a: &CircularMatrix, bullets: &[usize], p: usize) -> Result<Normalization, SynthesisError> {
    let s = verify_minor(a, bullets, p)?;
    let table = window_table(a, bullets, p)?;
    let mut image = normalized_positions(a, &table, p);
    let mut current = sorted(image.clone());
    let mut passes = 1;
    loop {
        verify(current.len() == s && current.windows(2).all(|w| w[0] < w[1]), || {
            format!("normalized bullets {current:?} collapse")
        })?;
        let found = recognize_circulant(&contract_onto(a, &current)?);
        verify(found == Some((s, p)), || format!("contraction onto {current:?} gives {found:?}"))?;
        let next_table = window_table(a, &current, p)?;
        if is_fixpoint(a, &next_table, p) {
            break;
        }
        if passes >= a.n() {
            return Err(SynthesisError::NotAFixpoint { passes });
        }
        let step = normalized_positions(a, &next_table, p);
        for b in image.iter_mut() {
            let k = current.binary_search(b).expect("image lies in current");
            *b = step[k];
        }
        current = sorted(step);
        passes += 1;
    }
    Ok(Normalization { original: bullets.to_vec(), normalized: current, table, image, passes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedPath {
    pub j: usize,
    pub arcs: Vec<Arc>,
}

/// Everything the reverse construction computed, for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisTrace {
    pub s: usize,
    pub p: usize,
    pub normalization: Normalization,
    /// Window table of `B'`.
    pub table: Vec<WindowEntry>,
    /// `T`: the row arcs of the chosen rows, by `j`.
    pub row_arcs: Vec<Arc>,
    /// `P ⊆ [s]`.
    pub forward_set: Vec<usize>,
    /// `{b'_j : j ∈ P}`.
    pub forward_vertices: Vec<usize>,
    /// `Q ⊆ [s]`.
    pub reverse_set: Vec<usize>,
    pub reverse_vertices: Vec<usize>,
    /// `F_j` for `j ∈ P`.
    pub forward_paths: Vec<IndexedPath>,
    /// `R_j` for `j ∈ Q`.
    pub reverse_paths: Vec<IndexedPath>,
}

/// Reverse direction: a family of `gcd(s, p)` disjoint bad-arc-free circuits
/// whose essential bullets are the normalized column set.
pub fn minor_to_circuits(
    a: &CircularMatrix,
    bullets: &[usize],
    p: usize,
) -> Result<(CircuitFamily, SynthesisTrace), SynthesisError> {
    let normalization = normalize_bullets(a, bullets, p)?;
    let b = &normalization.normalized;
    let s = b.len();
    let g = a.ground();
    let table = window_table(a, b, p)?;
    let row = |j: usize| a.rows()[table[j].chosen - 1];

    let row_arcs: Vec<Arc> = (0..s)
        .map(|j| {
            let iv = row(j);
            Arc { tail: g.pred(iv.lo), head: iv.hi, kind: ArcKind::Row(table[j].chosen), length: iv.len(g) as i64 }
        })
        .collect();
    let mut forward_paths = Vec::new();
    let mut reverse_paths = Vec::new();
    for j in 0..s {
        let target = g.pred(row((j + p) % s).lo);
        if b[j] != target {
            let len = g.dist(b[j], target);
            let arcs = (0..len).map(|t| Arc::forward(g, g.shift(b[j], t as i64))).collect();
            forward_paths.push(IndexedPath { j: j + 1, arcs });
        }
        let u = row(j).hi;
        if b[j] != u {
            let len = g.dist(b[j], u);
            let arcs = (0..len).map(|t| Arc::reverse(g, g.shift(u, -(t as i64)))).collect();
            reverse_paths.push(IndexedPath { j: j + 1, arcs });
        }
    }

    let mut all: Vec<Arc> = row_arcs.clone();
    all.extend(forward_paths.iter().flat_map(|f| f.arcs.iter().copied()));
    all.extend(reverse_paths.iter().flat_map(|r| r.arcs.iter().copied()));

    let n = g.size();
    let mut succ: Vec<Option<Arc>> = vec![None; n + 1];
    let mut indeg = vec![0usize; n + 1];
    for arc in &all {
        verify(succ[arc.tail].is_none(), || format!("vertex {} has out-degree above one", arc.tail))?;
        succ[arc.tail] = Some(*arc);
        indeg[arc.head] += 1;
    }
    for v in g.indices() {
        let out = succ[v].is_some() as usize;
        verify(indeg[v] == out, || format!("vertex {v} has in-degree {} and out-degree {out}", indeg[v]))?;
    }

    let mut visited = vec![false; n + 1];
    let mut circuits = Vec::new();
    for start in g.indices() {
        if visited[start] || succ[start].is_none() {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = start;
        while !visited[v] {
            visited[v] = true;
            let arc = succ[v].expect("degree checked");
            walk.push(arc);
            v = arc.head;
        }
        circuits.push(validate_circuit(&build_f(a), &walk)?);
    }
    let expected = s.gcd(&p);
    if circuits.len() != expected {
        return Err(SynthesisError::DecompositionMismatch { expected, found: circuits.len() });
    }
    let f = build_f(a);
    let family = validate_family(&f, circuits)?;
    verify(family.bullets() == b.as_slice(), || {
        format!("family bullets {:?} differ from {:?}", family.bullets(), b)
    })?;
    verify((family.s, family.p) == (s, p), || format!("family has (s, p) = ({}, {})", family.s, family.p))?;
    if let Some(bad) = bad_arcs(&f, &family.circuits)?.first() {
        return Err(SynthesisError::VerificationFailed(format!("constructed family has bad arc {}", bad.arc)));
    }

    let forward_set: Vec<usize> = forward_paths.iter().map(|f| f.j).collect();
    let reverse_set: Vec<usize> = reverse_paths.iter().map(|r| r.j).collect();
    let trace = SynthesisTrace {
        s,
        p,
        forward_vertices: forward_set.iter().map(|&j| b[j - 1]).collect(),
        reverse_vertices: reverse_set.iter().map(|&j| b[j - 1]).collect(),
        forward_set,
        reverse_set,
        normalization,
        table,
        row_arcs,
        forward_paths,
        reverse_paths,
    };
    Ok((family, trace))
}
