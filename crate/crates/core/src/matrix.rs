//! Circular and circulant matrices, and their contraction and deletion minors.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ground::{CircularInterval, GroundError, GroundSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("row {row}: support is not a circular interval")]
    NonCircularRow { row: usize },
    #[error("row {row} dominates row {dominated}")]
    DominatingRow { row: usize, dominated: usize },
    #[error("row {0} is a zero row")]
    ZeroRow(usize),
    #[error("column {0} is a zero column")]
    ZeroColumn(usize),
    #[error("matrix has no rows")]
    NoRows,
    #[error("row {row} has a single one")]
    RowTooSmall { row: usize },
    #[error("row {row} has {len} entries, expected {n}")]
    RowWidth { row: usize, len: usize, n: usize },
    #[error("row {row} has entry {value}, expected 0 or 1")]
    NotBinary { row: usize, value: u8 },
    #[error("circulant parameters out of range: n = {n}, k = {k}")]
    CirculantParams { n: usize, k: usize },
    #[error("row index {row} is outside [1, {m}]")]
    RowOutOfRange { row: usize, m: usize },
    #[error("contraction leaves no column")]
    NoColumnsLeft,
    #[error("every row contains all surviving columns; the minor is a single all-ones row")]
    EmptyResult,
    #[error("matrix file must give exactly one of rows or dense")]
    FileShape,
}

impl MatrixError {
    pub fn code(&self) -> &'static str {
        match self {
            MatrixError::Ground(_) => "IndexOutOfRange",
            MatrixError::NonCircularRow { .. } => "NonCircularRow",
            MatrixError::DominatingRow { .. } => "DominatingRow",
            MatrixError::ZeroRow(_) | MatrixError::ZeroColumn(_) | MatrixError::NoRows => {
                "ZeroRowOrColumn"
            }
            MatrixError::RowTooSmall { .. } => "RowTooSmall",
            MatrixError::RowWidth { .. } | MatrixError::NotBinary { .. } => "MalformedDenseRow",
            MatrixError::CirculantParams { .. } => "ParameterOutOfRange",
            MatrixError::RowOutOfRange { .. } => "IndexOutOfRange",
            MatrixError::NoColumnsLeft => "NoColumnsLeft",
            MatrixError::EmptyResult => "EmptyResult",
            MatrixError::FileShape => "MalformedMatrixFile",
        }
    }
}

/// Parameters of `C_n^k`, whose `i`-th row is `[i, i + k)_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirculantPattern {
    pub n: usize,
    pub k: usize,
}

/// Input rows for [`parse_circular`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawRows {
    /// 1-based inclusive `(lo, hi)` pairs.
    Intervals(Vec<(usize, usize)>),
    Dense(Vec<Vec<u8>>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Remove dominating rows (and all but one copy of duplicates) instead of
    /// rejecting them.
    pub drop_dominated: bool,
}

/// A circular 0/1 matrix with no dominating rows and no zero rows or columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircularMatrix {
    ground: GroundSet,
    rows: Vec<CircularInterval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pattern: Option<CirculantPattern>,
}

fn dense_row_interval(row: usize, values: &[u8], g: GroundSet) -> Result<CircularInterval, MatrixError> {
    let n = g.size();
    if values.len() != n {
        return Err(MatrixError::RowWidth { row, len: values.len(), n });
    }
    if let Some(&value) = values.iter().find(|&&v| v > 1) {
        return Err(MatrixError::NotBinary { row, value });
    }
    let ones = values.iter().filter(|&&v| v == 1).count();
    match ones {
        0 => return Err(MatrixError::ZeroRow(row)),
        1 => return Err(MatrixError::RowTooSmall { row }),
        _ => {}
    }
    if ones == n {
        return Ok(CircularInterval::new(1, n));
    }
    // the interval starts at the unique 1 preceded by a 0
    let at = |j: usize| values[j - 1] == 1;
    let starts: Vec<usize> = g.indices().filter(|&j| at(j) && !at(g.pred(j))).collect();
    if starts.len() != 1 {
        return Err(MatrixError::NonCircularRow { row });
    }
    let lo = starts[0];
    Ok(CircularInterval::new(lo, g.shift(lo, ones as i64 - 1)))
}

/// Validates raw rows against the circular-matrix assumptions.
pub fn parse_circular(
    raw: &RawRows,
    g: GroundSet,
    options: ParseOptions,
) -> Result<CircularMatrix, MatrixError> {
    let rows: Vec<CircularInterval> = match raw {
        RawRows::Intervals(pairs) => pairs
            .iter()
            .enumerate()
            .map(|(i, &(lo, hi))| {
                let iv = CircularInterval::checked(lo, hi, g)?;
                if lo == hi {
                    return Err(MatrixError::RowTooSmall { row: i + 1 });
                }
                Ok(iv)
            })
            .collect::<Result<_, _>>()?,
        RawRows::Dense(dense) => dense
            .iter()
            .enumerate()
            .map(|(i, values)| dense_row_interval(i + 1, values, g))
            .collect::<Result<_, _>>()?,
    };
    CircularMatrix::from_intervals(g, rows, options)
}

impl CircularMatrix {
    pub fn from_intervals(
        g: GroundSet,
        rows: Vec<CircularInterval>,
        options: ParseOptions,
    ) -> Result<Self, MatrixError> {
        for (i, iv) in rows.iter().enumerate() {
            g.check(iv.lo)?;
            g.check(iv.hi)?;
            if iv.lo == iv.hi {
                return Err(MatrixError::RowTooSmall { row: i + 1 });
            }
        }
        let rows = if options.drop_dominated {
            minimal_rows(&rows, g)
        } else {
            if let Some((row, dominated)) = find_domination(&rows, g) {
                return Err(MatrixError::DominatingRow { row, dominated });
            }
            rows
        };
        if rows.is_empty() {
            return Err(MatrixError::NoRows);
        }
        let mut covered = vec![false; g.size() + 1];
        for iv in &rows {
            for j in iv.closed_members(g) {
                covered[j] = true;
            }
        }
        if let Some(j) = g.indices().find(|&j| !covered[j]) {
            return Err(MatrixError::ZeroColumn(j));
        }
        Ok(Self { ground: g, rows, pattern: None })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[CircularInterval] {
        &self.rows
    }

    /// Row `i` for `i ∈ [1, m]`.
    pub fn row(&self, i: usize) -> Result<CircularInterval, MatrixError> {
        i.checked_sub(1)
            .and_then(|k| self.rows.get(k).copied())
            .ok_or(MatrixError::RowOutOfRange { row: i, m: self.m() })
    }

    pub fn pattern(&self) -> Option<CirculantPattern> {
        self.pattern
    }

    /// Dense 0/1 rows.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let g = self.ground;
        self.rows
            .iter()
            .map(|iv| g.indices().map(|j| iv.contains(g, j) as u8).collect())
            .collect()
    }

    /// Row index (1-based) whose interval is exactly `iv`.
    pub fn row_index_of(&self, iv: CircularInterval) -> Option<usize> {
        self.rows.iter().position(|r| *r == iv).map(|k| k + 1)
    }
}

/// First `(row, dominated)` pair with `rows[dominated] ⊆ rows[row]`, 1-based.
fn find_domination(rows: &[CircularInterval], g: GroundSet) -> Option<(usize, usize)> {
    for (i, outer) in rows.iter().enumerate() {
        for (j, inner) in rows.iter().enumerate() {
            if i != j && inner.is_subset_of(outer, g) {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// Inclusion-minimal rows, first copy of each duplicate, in input order.
fn minimal_rows(rows: &[CircularInterval], g: GroundSet) -> Vec<CircularInterval> {
    rows.iter()
        .enumerate()
        .filter(|&(i, outer)| {
            !rows.iter().enumerate().any(|(j, inner)| {
                j != i && inner.is_subset_of(outer, g) && (inner != outer || j < i)
            })
        })
        .map(|(_, iv)| *iv)
        .collect()
}

/// `C_n^k` with row `i` equal to `[i, i + k)_n`.
pub fn make_circulant(n: usize, k: usize) -> Result<CircularMatrix, MatrixError> {
    if n < 4 || k < 2 || k > n - 1 {
        return Err(MatrixError::CirculantParams { n, k });
    }
    let g = GroundSet::new(n)?;
    let rows = g
        .indices()
        .map(|i| CircularInterval::new(i, g.shift(i, k as i64 - 1)))
        .collect();
    let mut a = CircularMatrix::from_intervals(g, rows, ParseOptions::default())?;
    a.pattern = Some(CirculantPattern { n, k });
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Contraction,
    Deletion,
}

/// A contraction or deletion minor, kept in the column coordinates of the
/// parent matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minor {
    /// Surviving columns, ascending.
    pub columns: Vec<usize>,
    /// Row traces, each listed in cyclic order from the start of its run.
    pub traces: Vec<Vec<usize>>,
    pub provenance: Provenance,
    /// Original row (1-based) realizing each trace.
    pub source_rows: Vec<usize>,
}

impl Minor {
    /// Dense 0/1 form with columns in the order of `self.columns`.
    pub fn to_dense(&self) -> Vec<Vec<bool>> {
        self.traces
            .iter()
            .map(|t| self.columns.iter().map(|c| t.contains(c)).collect())
            .collect()
    }

    /// Whether some cyclic rotation of the surviving columns makes every
    /// trace a non-wrapping run.
    pub fn is_interval_matrix(&self) -> bool {
        let s = self.columns.len();
        if s == 0 {
            return true;
        }
        let pos = |c: &usize| self.columns.binary_search(c).unwrap();
        (0..s).any(|start| {
            self.traces.iter().all(|t| {
                if t.is_empty() {
                    return true;
                }
                let rotated: Vec<usize> = t.iter().map(|c| (pos(c) + s - start) % s).collect();
                let lo = *rotated.iter().min().unwrap();
                let hi = *rotated.iter().max().unwrap();
                hi - lo + 1 == t.len()
            })
        })
    }
}

fn sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// `[ℓ_i, u_i]_n ∩ B` in cyclic order starting from `ℓ_i`.
///
/// `columns` must be ascending; `i` is 1-based.
pub fn trace(a: &CircularMatrix, i: usize, columns: &[usize]) -> Result<Vec<usize>, MatrixError> {
    let iv = a.row(i)?;
    Ok(trace_of(iv, a.ground(), columns))
}

pub(crate) fn trace_of(iv: CircularInterval, g: GroundSet, columns: &[usize]) -> Vec<usize> {
    let mut hit: Vec<usize> = columns.iter().copied().filter(|&c| iv.contains(g, c)).collect();
    hit.sort_by_key(|&c| g.dist(iv.lo, c));
    hit
}

fn check_columns(a: &CircularMatrix, cols: &[usize]) -> Result<(), MatrixError> {
    for &c in cols {
        a.ground().check(c)?;
    }
    Ok(())
}

/// `A/N`: drop the columns in `removed` and keep the inclusion-minimal
/// distinct traces. Equal traces are represented by the smallest row index.
pub fn contract(a: &CircularMatrix, removed: &[usize]) -> Result<Minor, MatrixError> {
    check_columns(a, removed)?;
    let columns = a.ground().complement(removed);
    contract_onto(a, &columns)
}

/// Like [`contract`], but given the surviving columns (ascending) directly.
pub fn contract_onto(a: &CircularMatrix, columns: &[usize]) -> Result<Minor, MatrixError> {
    check_columns(a, columns)?;
    if columns.is_empty() {
        return Err(MatrixError::NoColumnsLeft);
    }
    let g = a.ground();
    let traces: Vec<Vec<usize>> = a.rows().iter().map(|&iv| trace_of(iv, g, columns)).collect();
    let sets: Vec<Vec<usize>> = traces
        .iter()
        .map(|t| {
            let mut s = t.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let mut kept = Vec::new();
    for i in 0..traces.len() {
        let dominated_or_dup = (0..traces.len()).any(|j| {
            j != i
                && sorted_subset(&sets[j], &sets[i])
                && (sets[j].len() < sets[i].len() || j < i)
        });
        if !dominated_or_dup {
            kept.push(i);
        }
    }
    if kept.iter().all(|&i| sets[i].len() == columns.len()) {
        return Err(MatrixError::EmptyResult);
    }
    Ok(Minor {
        columns: columns.to_vec(),
        traces: kept.iter().map(|&i| traces[i].clone()).collect(),
        provenance: Provenance::Contraction,
        source_rows: kept.iter().map(|&i| i + 1).collect(),
    })
}

/// Deletion minor: drop the columns in `removed` and every row meeting them.
pub fn delete(a: &CircularMatrix, removed: &[usize]) -> Result<Minor, MatrixError> {
    check_columns(a, removed)?;
    let g = a.ground();
    let columns = g.complement(removed);
    let mut traces = Vec::new();
    let mut source_rows = Vec::new();
    for (k, iv) in a.rows().iter().enumerate() {
        if removed.iter().all(|&c| !iv.contains(g, c)) {
            traces.push(iv.closed_members(g));
            source_rows.push(k + 1);
        }
    }
    Ok(Minor { columns, traces, provenance: Provenance::Deletion, source_rows })
}

/// Returns `(s, p)` when the minor is isomorphic to `C_s^p` with
/// `2 ≤ p ≤ s − 1`.
///
/// Relies on the traces being cyclic runs of the surviving columns, which
/// holds for every contraction of a circular matrix: the minor is `C_s^p`
/// exactly when it has `s` traces, all of size `p`, covering all `s` cyclic
/// windows of length `p`.
pub fn recognize_circulant(minor: &Minor) -> Option<(usize, usize)> {
    let s = minor.columns.len();
    if minor.traces.len() != s || s < 3 {
        return None;
    }
    let p = minor.traces[0].len();
    if p < 2 || p > s - 1 {
        return None;
    }
    let mut seen = vec![false; s];
    for t in &minor.traces {
        if t.len() != p {
            return None;
        }
        let mut member = vec![false; s];
        for c in t {
            member[minor.columns.binary_search(c).ok()?] = true;
        }
        let starts: Vec<usize> = (0..s).filter(|&q| member[q] && !member[(q + s - 1) % s]).collect();
        if starts.len() != 1 {
            return None;
        }
        let start = starts[0];
        if (0..p).any(|t| !member[(start + t) % s]) || seen[start] {
            return None;
        }
        seen[start] = true;
    }
    Some((s, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::eq1;
    use proptest::prelude::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn parse_eq1_dense() {
        let dense = vec![
            vec![1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
            vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        ];
        let a = parse_circular(&RawRows::Dense(dense.clone()), g(12), ParseOptions::default()).unwrap();
        let pairs: Vec<_> = a.rows().iter().map(|r| (r.lo, r.hi)).collect();
        assert_eq!(pairs, vec![(1, 5), (2, 8), (5, 9), (7, 10), (10, 12), (12, 2)]);
        assert_eq!(a.to_dense(), dense);
        assert_eq!(a, eq1());
    }

    #[test]
    fn parse_rejections() {
        let opts = ParseOptions::default();
        let err = parse_circular(&RawRows::Intervals(vec![(1, 5), (2, 4)]), g(6), opts).unwrap_err();
        assert_eq!(err, MatrixError::DominatingRow { row: 1, dominated: 2 });
        assert_eq!(err.code(), "DominatingRow");

        let err = parse_circular(&RawRows::Dense(vec![vec![1, 0, 1, 0, 0, 0]]), g(6), opts).unwrap_err();
        assert_eq!(err, MatrixError::NonCircularRow { row: 1 });

        let err = parse_circular(&RawRows::Dense(vec![vec![0, 0, 1, 0, 0, 0]]), g(6), opts).unwrap_err();
        assert_eq!(err.code(), "RowTooSmall");
        let err = parse_circular(&RawRows::Intervals(vec![(3, 3)]), g(6), opts).unwrap_err();
        assert_eq!(err.code(), "RowTooSmall");

        let err = parse_circular(&RawRows::Intervals(vec![(1, 3), (3, 5)]), g(6), opts).unwrap_err();
        assert_eq!(err, MatrixError::ZeroColumn(6));
        let err = parse_circular(&RawRows::Dense(vec![vec![0; 6]]), g(6), opts).unwrap_err();
        assert_eq!(err.code(), "ZeroRowOrColumn");

        let err = parse_circular(&RawRows::Intervals(vec![(1, 3), (1, 3), (4, 6)]), g(6), opts).unwrap_err();
        assert_eq!(err.code(), "DominatingRow");
    }

    #[test]
    fn drop_dominated_keeps_minimal_rows() {
        let opts = ParseOptions { drop_dominated: true };
        let raw = RawRows::Intervals(vec![(1, 5), (2, 4), (2, 4), (5, 1)]);
        let a = parse_circular(&raw, g(6), opts).unwrap();
        assert_eq!(a.rows(), &[CircularInterval::new(2, 4), CircularInterval::new(5, 1)]);
    }

    #[test]
    fn full_row_alone_is_valid() {
        let a = parse_circular(&RawRows::Dense(vec![vec![1; 5]]), g(5), ParseOptions::default()).unwrap();
        assert!(a.rows()[0].is_full(a.ground()));
    }

    #[test]
    fn circulant_examples() {
        let c = make_circulant(5, 2).unwrap();
        let pairs: Vec<_> = c.rows().iter().map(|r| (r.lo, r.hi)).collect();
        assert_eq!(pairs, vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        assert_eq!(c.pattern(), Some(CirculantPattern { n: 5, k: 2 }));
        assert_eq!(make_circulant(12, 5).unwrap().rows()[0], CircularInterval::new(1, 5));
        assert!(make_circulant(4, 1).is_err());
        assert!(make_circulant(5, 5).is_err());
        assert!(make_circulant(3, 2).is_err());
    }

    #[test]
    fn trace_examples() {
        let a = eq1();
        let b = [2, 5, 8, 10, 12];
        assert_eq!(trace(&a, 2, &b).unwrap(), vec![2, 5, 8]);
        assert_eq!(trace(&a, 1, &b).unwrap(), vec![2, 5]);
        assert_eq!(trace(&a, 6, &b).unwrap(), vec![12, 2]);
        let all: Vec<usize> = (1..=12).collect();
        assert_eq!(trace(&a, 6, &all).unwrap(), vec![12, 1, 2]);
        assert!(trace(&a, 7, &b).is_err());
    }

    #[test]
    fn contraction_examples() {
        let a = eq1();
        let m = contract_onto(&a, &[2, 5, 9, 10, 12]).unwrap();
        assert_eq!(m.traces, vec![vec![2, 5], vec![5, 9], vec![9, 10], vec![10, 12], vec![12, 2]]);
        assert_eq!(m.source_rows, vec![1, 3, 4, 5, 6]);
        assert_eq!(recognize_circulant(&m), Some((5, 2)));

        let m = contract(&a, &[]).unwrap();
        assert_eq!(m.traces.len(), 6);
        assert_eq!(m.traces[5], vec![12, 1, 2]);

        let m = contract_onto(&a, &[2, 5, 7, 10, 12]).unwrap();
        assert_eq!(m.traces, vec![vec![2, 5], vec![5, 7], vec![7, 10], vec![10, 12], vec![12, 2]]);
        assert!(!m.source_rows.contains(&2));

        let m = contract_onto(&a, &[1, 4, 6, 9, 10, 12]).unwrap();
        assert_eq!(recognize_circulant(&m), Some((6, 2)));

        let m = contract_onto(&a, &[1, 2, 3]).unwrap();
        assert_eq!(recognize_circulant(&m), None);
    }

    #[test]
    fn contraction_to_single_full_trace_is_reported() {
        let raw = RawRows::Intervals(vec![(3, 1), (1, 3)]);
        let a = parse_circular(&raw, g(5), ParseOptions::default()).unwrap();
        assert_eq!(contract_onto(&a, &[1, 3]), Err(MatrixError::EmptyResult));
        assert_eq!(contract_onto(&a, &[]), Err(MatrixError::NoColumnsLeft));

        // a row missing every surviving column leaves a zero trace behind
        let m = contract_onto(&eq1(), &[1, 2]).unwrap();
        assert_eq!(m.traces, vec![Vec::<usize>::new()]);
        assert_eq!(recognize_circulant(&m), None);
    }

    #[test]
    fn deletion_examples() {
        let a = eq1();
        let m = delete(&a, &[1]).unwrap();
        assert_eq!(m.source_rows, vec![2, 3, 4, 5]);
        let m = delete(&a, &[3]).unwrap();
        assert_eq!(m.source_rows, vec![3, 4, 5, 6]);
        assert!(m.is_interval_matrix());
        let m = delete(&a, &[]).unwrap();
        assert_eq!(m.source_rows, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn circulant_recognizes_itself() {
        for n in 4..=12 {
            for k in 2..n {
                let c = make_circulant(n, k).unwrap();
                let m = contract(&c, &[]).unwrap();
                assert_eq!(recognize_circulant(&m), Some((n, k)), "C_{n}^{k}");
            }
        }
    }

    #[test]
    fn identity_minor_is_not_circulant() {
        let c = make_circulant(6, 2).unwrap();
        let m = contract_onto(&c, &[1, 3, 5]).unwrap();
        assert_eq!(m.traces.len(), 3);
        assert_eq!(recognize_circulant(&m), None);
    }

    proptest! {
        #[test]
        fn traces_are_cyclic_runs(mask in 1u16..(1 << 12)) {
            let a = eq1();
            let cols: Vec<usize> = (1..=12).filter(|j| mask & (1 << (j - 1)) != 0).collect();
            let s = cols.len();
            for i in 1..=a.m() {
                let t = trace(&a, i, &cols).unwrap();
                if t.is_empty() || t.len() == s {
                    continue;
                }
                let start = cols.iter().position(|&c| c == t[0]).unwrap();
                for (off, c) in t.iter().enumerate() {
                    prop_assert_eq!(*c, cols[(start + off) % s]);
                }
            }
        }

        #[test]
        fn deletion_yields_interval_matrix(mask in 1u16..(1 << 12) - 1) {
            let a = eq1();
            let removed: Vec<usize> = (1..=12).filter(|j| mask & (1 << (j - 1)) != 0).collect();
            let m = delete(&a, &removed).unwrap();
            prop_assert!(m.is_interval_matrix());
        }
    }
}
