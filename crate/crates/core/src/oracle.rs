//! Brute-force ground truth: subset enumeration of circulant contraction
//! minors, exhaustive circuit and family enumeration, and cross-checks of
//! every characterization against them.
//!
//! Everything here is deliberately naive. Bullets, jumps and bad arcs are
//! recomputed from their definitions rather than through [`crate::circuit`].

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bridge::GSide;
use crate::circuit::{classify, predicted_row_arcs, validate_circuit, validate_family, BlockKind, Circuit};
use crate::digraph::{build_f, Arc, ArcDigraph, ArcKind, Flavor};
use crate::ground::{CircularInterval, GroundSet};
use crate::matrix::{contract_onto, recognize_circulant, CircularMatrix, Minor, ParseOptions};
use crate::synthesis::{circuits_to_minor, minor_to_circuits, normalize_bullets};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the oracle bound {max}")]
    BoundExceeded { n: usize, max: usize },
    #[error("more than {cap} circuits; {} enumerated before stopping", partial.len())]
    CircuitCapExceeded { cap: usize, partial: Vec<Circuit> },
    #[error("more than {cap} families; {} enumerated before stopping", partial.len())]
    FamilyCapExceeded { cap: usize, partial: Vec<OracleFamily> },
    #[error("operation not defined on this digraph flavor")]
    WrongFlavor,
}

impl OracleError {
    pub fn code(&self) -> &'static str {
        match self {
            OracleError::BoundExceeded { .. } => "BoundExceeded",
            OracleError::CircuitCapExceeded { .. } | OracleError::FamilyCapExceeded { .. } => "CapExceeded",
            OracleError::WrongFlavor => "WrongFlavor",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_n: usize,
    pub max_circuits: usize,
    pub max_families: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 14, max_circuits: 2_000_000, max_families: 2_000_000 }
    }
}

fn check_bound(n: usize, limits: &Limits) -> Result<(), OracleError> {
    if n > limits.max_n {
        Err(OracleError::BoundExceeded { n, max: limits.max_n })
    } else {
        Ok(())
    }
}

/// `(u, u + len]_n`, allowing `len ≥ n`.
fn jumps(g: GroundSet, tail: usize, len: i64, x: usize) -> bool {
    (1..=len.min(g.size() as i64)).any(|t| g.shift(tail, t) == x)
}

/// Vertices of a circuit that are neither heads of forward arcs nor tails of
/// reverse arcs.
pub fn essential_bullets(circuits: &[Circuit]) -> Vec<usize> {
    let mut on = BTreeSet::new();
    let mut marked = BTreeSet::new();
    for c in circuits {
        for a in c.arcs() {
            on.insert(a.tail);
            match a.kind {
                ArcKind::Forward => {
                    marked.insert(a.head);
                }
                ArcKind::Reverse => {
                    marked.insert(a.tail);
                }
                _ => {}
            }
        }
    }
    on.difference(&marked).copied().collect()
}

fn jump_count(g: GroundSet, arc: &Arc, set: &[usize]) -> usize {
    set.iter().filter(|&&x| jumps(g, arc.tail, arc.length, x)).count()
}

fn has_bad_arc(d: &ArcDigraph, c: &Circuit) -> bool {
    let g = d.ground();
    let bullets = essential_bullets(std::slice::from_ref(c));
    let p = c.winding();
    d.arcs()
        .iter()
        .filter(|a| a.kind.is_row())
        .any(|a| jump_count(g, a, &bullets) + 1 == p)
}

/// A surviving column set found by subset enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteMinor {
    pub bullets: Vec<usize>,
    pub s: usize,
    pub p: usize,
    /// `B'`, or the error code normalization failed with.
    pub normalized: Result<Vec<usize>, String>,
}

/// Every `B ⊆ [n]` with `3 ≤ |B| ≤ n − 1` whose contraction is `C_s^p`.
pub fn brute_minors(a: &CircularMatrix, limits: &Limits) -> Result<Vec<BruteMinor>, OracleError> {
    let n = a.n();
    check_bound(n, limits)?;
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) - 1 {
        if mask.count_ones() < 3 {
            continue;
        }
        let bullets: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).map(|j| j + 1).collect();
        let Ok(minor) = contract_onto(a, &bullets) else { continue };
        if let Some((s, p)) = recognize_circulant(&minor) {
            let normalized = normalize_bullets(a, &bullets, p)
                .map(|nz| nz.normalized)
                .map_err(|e| e.code().to_string());
            out.push(BruteMinor { bullets, s, p, normalized });
        }
    }
    out.sort_by(|x, y| x.bullets.cmp(&y.bullets));
    Ok(out)
}

/// All circuits of `d` with positive winding and at least one non-short arc,
/// in lexicographic order of their arc lists.
pub fn enumerate_circuits(d: &ArcDigraph, limits: &Limits) -> Result<Vec<Circuit>, OracleError> {
    let g = d.ground();
    check_bound(g.size(), limits)?;
    let mut out = Vec::new();
    let mut on_path = vec![false; g.size() + 1];
    let mut path: Vec<Arc> = Vec::new();
    for start in g.indices() {
        on_path[start] = true;
        dfs(d, start, start, &mut on_path, &mut path, &mut out, limits)?;
        on_path[start] = false;
    }
    out.sort();
    Ok(out)
}

fn dfs(
    d: &ArcDigraph,
    start: usize,
    v: usize,
    on_path: &mut [bool],
    path: &mut Vec<Arc>,
    out: &mut Vec<Circuit>,
    limits: &Limits,
) -> Result<(), OracleError> {
    for arc in d.out_arcs(v) {
        if arc.head == start {
            path.push(*arc);
            if let Ok(c) = validate_circuit(d, path) {
                if out.len() >= limits.max_circuits {
                    return Err(OracleError::CircuitCapExceeded { cap: limits.max_circuits, partial: out.clone() });
                }
                out.push(c);
            }
            path.pop();
        } else if arc.head > start && !on_path[arc.head] {
            on_path[arc.head] = true;
            path.push(*arc);
            dfs(d, start, arc.head, on_path, path, out, limits)?;
            path.pop();
            on_path[arc.head] = false;
        }
    }
    Ok(())
}

fn vertex_mask(c: &Circuit) -> u64 {
    c.arcs().iter().fold(0, |m, a| m | 1u64 << a.tail)
}

/// All sets of pairwise disjoint members of `pool`, each nonempty, as index
/// lists in lexicographic order.
fn disjoint_sets(masks: &[u64], cap: usize, out: &mut Vec<Vec<usize>>) -> bool {
    fn go(masks: &[u64], from: usize, used: u64, cur: &mut Vec<usize>, cap: usize, out: &mut Vec<Vec<usize>>) -> bool {
        for i in from..masks.len() {
            if masks[i] & used == 0 {
                cur.push(i);
                if out.len() >= cap {
                    return false;
                }
                out.push(cur.clone());
                if !go(masks, i + 1, used | masks[i], cur, cap, out) {
                    return false;
                }
                cur.pop();
            }
        }
        true
    }
    go(masks, 0, 0, &mut Vec::new(), cap, out)
}

/// A family of disjoint circuits of `F(A)` or `D(n, k)` without bad arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleFamily {
    pub circuits: Vec<Circuit>,
    pub bullets: Vec<usize>,
    pub a: usize,
    pub s: usize,
    pub p: usize,
}

/// Families of pairwise disjoint circuits with common `(s_i, p_i)`, no bad
/// arcs, pooled `2 ≤ p ≤ s − 1`, and at least one vertex of `[n]` that is not
/// an essential bullet.
pub fn enumerate_families(d: &ArcDigraph, limits: &Limits) -> Result<Vec<OracleFamily>, OracleError> {
    let n = d.ground().size();
    let keep = |f: &OracleFamily| f.p >= 2 && f.p < f.s && f.bullets.len() < n;
    match enumerate_disjoint_families(d, limits) {
        Ok(all) => Ok(all.into_iter().filter(keep).collect()),
        Err(OracleError::FamilyCapExceeded { cap, partial }) => {
            Err(OracleError::FamilyCapExceeded { cap, partial: partial.into_iter().filter(keep).collect() })
        }
        Err(e) => Err(e),
    }
}

/// Every family of pairwise disjoint circuits with common `(s_i, p_i)` and no
/// bad arcs, without restricting the pooled parameters.
pub fn enumerate_disjoint_families(d: &ArcDigraph, limits: &Limits) -> Result<Vec<OracleFamily>, OracleError> {
    if matches!(d.flavor(), Flavor::G { .. }) {
        return Err(OracleError::WrongFlavor);
    }
    let circuits: Vec<Circuit> =
        enumerate_circuits(d, limits)?.into_iter().filter(|c| !has_bad_arc(d, c)).collect();
    let mut groups: BTreeMap<(usize, usize), Vec<Circuit>> = BTreeMap::new();
    for c in circuits {
        groups.entry((c.row_arc_count(), c.winding())).or_default().push(c);
    }
    let mut out = Vec::new();
    for pool in groups.values() {
        let masks: Vec<u64> = pool.iter().map(vertex_mask).collect();
        let mut sets = Vec::new();
        let complete = disjoint_sets(&masks, limits.max_families.saturating_sub(out.len()), &mut sets);
        for set in sets {
            let members: Vec<Circuit> = set.iter().map(|&i| pool[i].clone()).collect();
            let a = members.len();
            let s: usize = members.iter().map(|c| c.row_arc_count()).sum();
            let p: usize = members.iter().map(|c| c.winding()).sum();
            let bullets = essential_bullets(&members);
            out.push(OracleFamily { circuits: members, bullets, a, s, p });
        }
        if !complete {
            return Err(OracleError::FamilyCapExceeded { cap: limits.max_families, partial: out });
        }
    }
    out.sort_by(|x, y| (&x.bullets, &x.circuits).cmp(&(&y.bullets, &y.circuits)));
    Ok(out)
}

/// A family of disjoint circuits of `G(n, k)` with common `(n1, n2, n3)`,
/// `gcd(n1, n2, n3) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFamily {
    pub circuits: Vec<Circuit>,
    pub vertices: Vec<usize>,
    pub params: GSide,
}

pub fn enumerate_g_families(d: &ArcDigraph, limits: &Limits) -> Result<Vec<GFamily>, OracleError> {
    if !matches!(d.flavor(), Flavor::G { .. }) {
        return Err(OracleError::WrongFlavor);
    }
    let mut groups: BTreeMap<(usize, usize, usize), Vec<Circuit>> = BTreeMap::new();
    for c in enumerate_circuits(d, limits)? {
        let n2 = c.count_kind(|k| k.is_row());
        let n3 = c.count_kind(|k| k == ArcKind::Long);
        let n1 = c.winding();
        if n1.gcd(&n2).gcd(&n3) == 1 {
            groups.entry((n1, n2, n3)).or_default().push(c);
        }
    }
    let mut out = Vec::new();
    for (&(n1, n2, n3), pool) in &groups {
        let masks: Vec<u64> = pool.iter().map(vertex_mask).collect();
        let mut sets = Vec::new();
        let complete = disjoint_sets(&masks, limits.max_families.saturating_sub(out.len()), &mut sets);
        for set in sets {
            let circuits: Vec<Circuit> = set.iter().map(|&i| pool[i].clone()).collect();
            let vertices: BTreeSet<usize> = circuits.iter().flat_map(|c| c.vertices()).collect();
            let params = GSide { d: circuits.len(), n1, n2, n3 };
            out.push(GFamily { circuits, vertices: vertices.into_iter().collect(), params });
        }
        if !complete {
            return Err(OracleError::FamilyCapExceeded { cap: limits.max_families, partial: Vec::new() });
        }
    }
    out.sort_by(|x, y| (&x.vertices, x.params).cmp(&(&y.vertices, y.params)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Discrepancy {
    MinorWithoutFamily { bullets: Vec<usize> },
    FamilyWithoutMinor { bullets: Vec<usize> },
    NormalizationFailed { bullets: Vec<usize>, code: String },
    SynthesisFailed { bullets: Vec<usize>, code: String },
    RoundTripMismatch { bullets: Vec<usize>, expected: Vec<usize>, found: Vec<usize> },
    FamilyRejected { bullets: Vec<usize>, code: String },
    ForwardMismatch { bullets: Vec<usize>, found: Vec<usize> },
    NotAFixpoint { bullets: Vec<usize>, normalized: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamCount {
    pub s: usize,
    pub p: usize,
    pub minors: usize,
    pub families: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossReport {
    pub n: usize,
    pub rows: Vec<CircularInterval>,
    /// Subsets whose contraction is circulant.
    pub subsets: usize,
    /// Distinct normalized bullet sets from subset enumeration.
    pub minor_sets: Vec<Vec<usize>>,
    /// Distinct pooled bullet sets of bad-arc-free families.
    pub family_sets: Vec<Vec<usize>>,
    pub circuits: usize,
    pub families: usize,
    /// Bullet sets whose normalization needed more than one pass.
    pub iterated: Vec<Vec<usize>>,
    pub counts: Vec<ParamCount>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compares the normalized column sets of all circulant contraction minors
/// with the pooled bullet sets of all bad-arc-free families of `F(A)`, and
/// round-trips both constructions on every instance.
pub fn cross_validate(a: &CircularMatrix, limits: &Limits) -> Result<CrossReport, OracleError> {
    let minors = brute_minors(a, limits)?;
    let f = build_f(a);
    let circuits = enumerate_circuits(&f, limits)?.len();
    let families = enumerate_families(&f, limits)?;
    let mut discrepancies = Vec::new();
    let mut iterated = Vec::new();
    let mut minor_sets: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();

    for m in &minors {
        let normalized = match &m.normalized {
            Ok(b) => b.clone(),
            Err(code) => {
                discrepancies
                    .push(Discrepancy::NormalizationFailed { bullets: m.bullets.clone(), code: code.clone() });
                continue;
            }
        };
        minor_sets.insert(normalized.clone(), (m.s, m.p));
        match minor_to_circuits(a, &m.bullets, m.p) {
            Ok((fam, trace)) => {
                if trace.normalization.iterated() {
                    iterated.push(m.bullets.clone());
                }
                if fam.bullets() != normalized.as_slice() || (fam.s, fam.p) != (m.s, m.p) {
                    discrepancies.push(Discrepancy::RoundTripMismatch {
                        bullets: m.bullets.clone(),
                        expected: normalized,
                        found: fam.bullets().to_vec(),
                    });
                }
            }
            Err(e) => discrepancies
                .push(Discrepancy::SynthesisFailed { bullets: m.bullets.clone(), code: e.code().to_string() }),
        }
    }

    let mut family_sets: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for fam in &families {
        family_sets.insert(fam.bullets.clone(), (fam.s, fam.p));
        let checked = validate_family(&f, fam.circuits.clone())
            .map_err(|e| e.code().to_string())
            .and_then(|vf| circuits_to_minor(a, &vf).map_err(|e| e.code().to_string()));
        match checked {
            Ok(w) if w.bullets != fam.bullets || (w.s, w.p) != (fam.s, fam.p) => {
                discrepancies.push(Discrepancy::ForwardMismatch { bullets: fam.bullets.clone(), found: w.bullets })
            }
            Ok(_) => {}
            Err(code) => discrepancies.push(Discrepancy::FamilyRejected { bullets: fam.bullets.clone(), code }),
        }
        match normalize_bullets(a, &fam.bullets, fam.p) {
            Ok(nz) if nz.normalized != fam.bullets => discrepancies
                .push(Discrepancy::NotAFixpoint { bullets: fam.bullets.clone(), normalized: nz.normalized }),
            Ok(_) => {}
            Err(e) => discrepancies.push(Discrepancy::NormalizationFailed {
                bullets: fam.bullets.clone(),
                code: e.code().to_string(),
            }),
        }
    }

    for b in minor_sets.keys().filter(|b| !family_sets.contains_key(*b)) {
        discrepancies.push(Discrepancy::MinorWithoutFamily { bullets: b.clone() });
    }
    for b in family_sets.keys().filter(|b| !minor_sets.contains_key(*b)) {
        discrepancies.push(Discrepancy::FamilyWithoutMinor { bullets: b.clone() });
    }

    let mut counts: BTreeMap<(usize, usize), ParamCount> = BTreeMap::new();
    for &(s, p) in minor_sets.values() {
        counts.entry((s, p)).or_insert(ParamCount { s, p, minors: 0, families: 0 }).minors += 1;
    }
    for &(s, p) in family_sets.values() {
        counts.entry((s, p)).or_insert(ParamCount { s, p, minors: 0, families: 0 }).families += 1;
    }

    Ok(CrossReport {
        n: a.n(),
        rows: a.rows().to_vec(),
        subsets: minors.len(),
        minor_sets: minor_sets.into_keys().collect(),
        family_sets: family_sets.into_keys().collect(),
        circuits,
        families: families.len(),
        iterated,
        counts: counts.into_values().collect(),
        discrepancies,
    })
}

/// Structural checks on a single circuit of `d`: `gcd(s, p) = 1`, jump
/// counts of every row arc in `{p − 1, p, p + 1}` with the endpoint
/// conditions, bad-arc tails inside circle blocks, and row arcs equal to
/// `(B⁻_i, B⁺_{i+p})`. Returns one message per violation.
pub fn circuit_violations(d: &ArcDigraph, c: &Circuit) -> Vec<String> {
    let g = d.ground();
    let mut out = Vec::new();
    let (s, p) = (c.row_arc_count(), c.winding());
    if s.gcd(&p) != 1 {
        out.push(format!("gcd({s}, {p}) != 1"));
    }
    let bullets = essential_bullets(std::slice::from_ref(c));
    let class = match classify(g, std::slice::from_ref(c)) {
        Ok(class) => class,
        Err(e) => {
            out.push(format!("classification failed: {e}"));
            return out;
        }
    };
    if class.essential != bullets {
        out.push(format!("essential bullets {:?} != {:?}", class.essential, bullets));
    }
    for arc in d.arcs().iter().filter(|a| a.kind.is_row()) {
        let count = jump_count(g, arc, &bullets);
        if count + 1 < p || count > p + 1 {
            out.push(format!("{arc} jumps {count} bullets, winding {p}"));
        }
        if count + 1 == p {
            if !c.contains_vertex(arc.tail) {
                out.push(format!("{arc} jumps p - 1 bullets but its tail is off the circuit"));
            }
            let in_circle = class
                .block_of(g, arc.tail)
                .is_some_and(|b| b.kind == BlockKind::Circle);
            if !in_circle {
                out.push(format!("bad arc {arc} does not leave a circle block"));
            }
            if c.contains_vertex(arc.head) && !class.circles.contains(&arc.head) {
                out.push(format!("bad arc {arc} ends at a circuit vertex that is not a circle"));
            }
        }
        if count == p + 1 && !c.contains_vertex(arc.head) {
            out.push(format!("{arc} jumps p + 1 bullets but its head is off the circuit"));
        }
    }
    let mut predicted = predicted_row_arcs(&class, p);
    let mut actual: Vec<(usize, usize)> =
        c.arcs().iter().filter(|a| !a.kind.is_short()).map(|a| (a.tail, a.head)).collect();
    predicted.sort_unstable();
    actual.sort_unstable();
    if predicted != actual {
        out.push(format!("row arcs {actual:?} != predicted {predicted:?}"));
    }
    out
}

/// Pooled checks on a family: `a = gcd(s, p)`, every row arc of the family
/// jumps exactly `p` pooled bullets, distinct jump sets, and row arcs equal to
/// `(B⁻_i, B⁺_{i+p})` over the pooled blocks.
pub fn family_violations(d: &ArcDigraph, fam: &OracleFamily) -> Vec<String> {
    let g = d.ground();
    let mut out = Vec::new();
    if fam.s.gcd(&fam.p) != fam.a {
        out.push(format!("gcd({}, {}) != a = {}", fam.s, fam.p, fam.a));
    }
    if fam.bullets.len() != fam.s {
        out.push(format!("{} bullets for s = {}", fam.bullets.len(), fam.s));
    }
    let mut sets = BTreeSet::new();
    for arc in fam.circuits.iter().flat_map(|c| c.arcs()).filter(|a| !a.kind.is_short()) {
        let jumped: Vec<usize> =
            fam.bullets.iter().copied().filter(|&x| jumps(g, arc.tail, arc.length, x)).collect();
        if jumped.len() != fam.p {
            out.push(format!("{arc} jumps {} pooled bullets, p = {}", jumped.len(), fam.p));
        }
        if !sets.insert(jumped) {
            out.push(format!("{arc} repeats a jump set"));
        }
    }
    match classify(g, &fam.circuits) {
        Ok(class) => {
            let mut predicted = predicted_row_arcs(&class, fam.p);
            let mut actual: Vec<(usize, usize)> = fam
                .circuits
                .iter()
                .flat_map(|c| c.arcs())
                .filter(|a| !a.kind.is_short())
                .map(|a| (a.tail, a.head))
                .collect();
            predicted.sort_unstable();
            actual.sort_unstable();
            if predicted != actual {
                out.push(format!("row arcs {actual:?} != predicted {predicted:?}"));
            }
        }
        Err(e) => out.push(format!("classification failed: {e}")),
    }
    out
}

/// Whether some column bijection onto `Z_s` maps the traces of `minor`
/// exactly onto the cyclic windows of length `p`. Column `0` is pinned to `0`.
pub fn is_isomorphic_to_circulant(minor: &Minor, s: usize, p: usize) -> bool {
    if minor.columns.len() != s || minor.traces.len() != s || s == 0 {
        return false;
    }
    if minor.traces.iter().any(|t| t.len() != p) {
        return false;
    }
    let rows: Vec<u32> = minor
        .traces
        .iter()
        .map(|t| t.iter().fold(0u32, |m, c| m | 1 << minor.columns.binary_search(c).unwrap()))
        .collect();
    let mut target: Vec<u32> =
        (0..s).map(|i| (0..p).fold(0u32, |m, t| m | 1 << ((i + t) % s))).collect();
    target.sort_unstable();
    let mut perm: Vec<usize> = (0..s).collect();
    // Heap's algorithm over positions 1..s
    let check = |perm: &[usize]| {
        let mut image: Vec<u32> = rows
            .iter()
            .map(|&r| (0..s).filter(|&c| r >> c & 1 == 1).fold(0u32, |m, c| m | 1 << perm[c]))
            .collect();
        image.sort_unstable();
        image == target
    };
    if check(&perm) {
        return true;
    }
    let k = s - 1;
    let mut ctr = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if ctr[i] < i {
            if i % 2 == 0 {
                perm.swap(1, 1 + i);
            } else {
                perm.swap(1 + ctr[i], 1 + i);
            }
            if check(&perm) {
                return true;
            }
            ctr[i] += 1;
            i = 0;
        } else {
            ctr[i] = 0;
            i += 1;
        }
    }
    false
}

/// The `(s, p)` for which [`is_isomorphic_to_circulant`] holds, if any.
pub fn circulant_by_search(minor: &Minor) -> Option<(usize, usize)> {
    let s = minor.columns.len();
    (2..s).find(|&p| is_isomorphic_to_circulant(minor, s, p)).map(|p| (s, p))
}

/// A random circular matrix on `[n]`: random arcs, dominating rows dropped,
/// resampled until every column is covered.
pub fn random_circular<R: Rng>(rng: &mut R, n: usize) -> CircularMatrix {
    let g = GroundSet::new(n).expect("n >= 3");
    loop {
        let m = rng.gen_range(2..=n);
        let rows: Vec<CircularInterval> = (0..m)
            .map(|_| {
                let lo = rng.gen_range(1..=n);
                let len = rng.gen_range(2..n);
                CircularInterval::new(lo, g.shift(lo, len as i64 - 1))
            })
            .collect();
        if let Ok(a) = CircularMatrix::from_intervals(g, rows, ParseOptions { drop_dominated: true }) {
            return a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{build_d, build_g};
    use crate::fixtures::eq1;
    use crate::matrix::make_circulant;

    #[test]
    fn brute_minors_on_eq1() {
        let cat = brute_minors(&eq1(), &Limits::default()).unwrap();
        let find = |b: &[usize]| cat.iter().find(|m| m.bullets == b).map(|m| (m.s, m.p));
        assert_eq!(find(&[2, 5, 9, 10, 12]), Some((5, 2)));
        assert_eq!(find(&[2, 5, 8, 10, 12]), Some((5, 2)));
        assert_eq!(find(&[2, 5, 7, 10, 12]), Some((5, 2)));
        assert_eq!(find(&[1, 4, 6, 9, 10, 12]), Some((6, 2)));
    }

    #[test]
    fn small_circulant_has_no_proper_minor() {
        assert!(brute_minors(&make_circulant(5, 2).unwrap(), &Limits::default()).unwrap().is_empty());
    }

    #[test]
    fn bound_is_enforced() {
        let a = make_circulant(15, 4).unwrap();
        assert_eq!(brute_minors(&a, &Limits::default()), Err(OracleError::BoundExceeded { n: 15, max: 14 }));
    }

    #[test]
    fn families_of_eq1() {
        let f = build_f(&eq1());
        let fams = enumerate_families(&f, &Limits::default()).unwrap();
        let sets: Vec<&[usize]> = fams.iter().map(|x| x.bullets.as_slice()).collect();
        assert!(sets.contains(&[2, 5, 9, 10, 12].as_slice()));
        assert!(sets.contains(&[1, 4, 6, 9, 10, 12].as_slice()));
        assert!(!sets.contains(&[2, 5, 8, 10, 12].as_slice()));
        assert!(!sets.contains(&[2, 5, 7, 10, 12].as_slice()));
    }

    #[test]
    fn d52_has_no_family() {
        let d = build_d(5, 2).unwrap();
        assert!(enumerate_families(&d, &Limits::default()).unwrap().is_empty());
    }

    #[test]
    fn g125_has_witness_circuit() {
        let g = build_g(12, 5).unwrap();
        let circuits = enumerate_circuits(&g, &Limits::default()).unwrap();
        assert!(circuits.iter().any(|c| {
            c.count_kind(|k| k.is_row()) == 6 && c.count_kind(|k| k == ArcKind::Long) == 1
        }));
        assert_eq!(enumerate_families(&g, &Limits::default()), Err(OracleError::WrongFlavor));
    }

    #[test]
    fn cross_validate_eq1() {
        let r = cross_validate(&eq1(), &Limits::default()).unwrap();
        assert!(r.is_clean(), "{:?}", r.discrepancies);
        assert!(r.minor_sets.contains(&vec![2, 5, 9, 10, 12]));
    }

    #[test]
    fn circulant_12_5() {
        let a = make_circulant(12, 5).unwrap();
        let r = cross_validate(&a, &Limits::default()).unwrap();
        assert!(r.is_clean(), "{:?}", r.discrepancies);
        assert!(r.counts.iter().any(|c| (c.s, c.p) == (5, 2) && c.minors > 0));
        let sets = |d: &ArcDigraph| -> BTreeSet<Vec<usize>> {
            enumerate_families(d, &Limits::default()).unwrap().into_iter().map(|f| f.bullets).collect()
        };
        let d = build_d(12, 5).unwrap();
        assert_eq!(sets(&build_f(&a)), sets(&d));
        for m in brute_minors(&a, &Limits::default()).unwrap() {
            assert_eq!(m.normalized.as_ref(), Ok(&m.bullets));
            let (fam, trace) = minor_to_circuits(&a, &m.bullets, m.p).unwrap();
            assert!(trace.forward_paths.is_empty());
            assert!(fam.arcs().all(|arc| d.contains(arc)));
        }
    }

    #[test]
    fn circuit_cap_reports_prefix() {
        let f = build_f(&eq1());
        let limits = Limits { max_circuits: 3, ..Limits::default() };
        match enumerate_circuits(&f, &limits) {
            Err(OracleError::CircuitCapExceeded { cap: 3, partial }) => assert_eq!(partial.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isomorphism_search_matches_recognizer() {
        let a = make_circulant(7, 3).unwrap();
        let m = contract_onto(&a, &(1..=7).collect::<Vec<_>>()).unwrap();
        assert!(is_isomorphic_to_circulant(&m, 7, 3));
        assert!(!is_isomorphic_to_circulant(&m, 7, 2));
        assert_eq!(circulant_by_search(&m), recognize_circulant(&m));
    }

    #[test]
    fn random_matrices_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(5..=12);
            let a = random_circular(&mut rng, n);
            assert_eq!(a.n(), n);
        }
    }
}
