use std::fmt::{self, Display, Write};

use circminor::bridge::{DSide, GSide, GToD};
use circminor::matrix::CirculantPattern;
use circminor::oracle::{BruteMinor, CrossReport};
use circminor::synthesis::WindowEntry;
use circminor::{Arc, CircularInterval};
use serde::{Deserialize, Serialize};

pub struct Set<'a>(pub &'a [usize]);

impl Display for Set<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

fn arc_pairs(arcs: &[Arc]) -> String {
    let parts: Vec<String> = arcs.iter().map(|a| format!("({},{})", a.tail, a.head)).collect();
    format!("{{{}}}", parts.join(","))
}

pub trait Render {
    fn text(&self) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub m: usize,
    pub rows: Vec<CircularInterval>,
    pub circulant: Option<CirculantPattern>,
    pub arcs: Vec<Arc>,
}

impl Render for AnalyzeReport {
    fn text(&self) -> String {
        let mut s = format!("circular matrix: n = {}, m = {}\n", self.n, self.m);
        if let Some(c) = self.circulant {
            writeln!(s, "circulant: C_{}^{}", c.n, c.k).unwrap();
        }
        for (i, r) in self.rows.iter().enumerate() {
            writeln!(s, "  row {}: {}", i + 1, r).unwrap();
        }
        writeln!(s, "F(A): {} arcs", self.arcs.len()).unwrap();
        for a in &self.arcs {
            writeln!(s, "  {a}").unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub bullets: Vec<usize>,
    pub a: usize,
    pub s: usize,
    pub p: usize,
    pub circuits: Vec<Vec<Arc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorsReport {
    pub subsets: Option<Vec<BruteMinor>>,
    pub families: Option<Vec<FamilyEntry>>,
}

impl Render for MinorsReport {
    fn text(&self) -> String {
        let mut s = String::new();
        if let Some(subsets) = &self.subsets {
            writeln!(s, "circulant minors by subset enumeration: {}", subsets.len()).unwrap();
            for m in subsets {
                let norm = match &m.normalized {
                    Ok(b) => Set(b).to_string(),
                    Err(code) => format!("error[{code}]"),
                };
                writeln!(s, "  B={} C_{}^{} B'={}", Set(&m.bullets), m.s, m.p, norm).unwrap();
            }
        }
        if let Some(families) = &self.families {
            writeln!(s, "circuit families without bad arcs: {}", families.len()).unwrap();
            for f in families {
                writeln!(s, "  B={} C_{}^{} a={}", Set(&f.bullets), f.s, f.p, f.a).unwrap();
                for c in &f.circuits {
                    writeln!(s, "    {}", arc_pairs(c)).unwrap();
                }
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FromCircuitsReport {
    pub bullets: Vec<usize>,
    pub complement: Vec<usize>,
    pub s: usize,
    pub p: usize,
    pub a: usize,
    pub traces: Vec<Vec<usize>>,
    pub source_rows: Vec<usize>,
}

impl Render for FromCircuitsReport {
    fn text(&self) -> String {
        let mut s = format!("A/N ≈ C_{}^{}, B={}\n", self.s, self.p, Set(&self.bullets));
        writeln!(s, "N={}", Set(&self.complement)).unwrap();
        writeln!(s, "a={}", self.a).unwrap();
        writeln!(s, "minor rows:").unwrap();
        for (t, r) in self.traces.iter().zip(&self.source_rows) {
            writeln!(s, "  row {}: {}", r, Set(t)).unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub j: usize,
    pub b: usize,
    pub candidates: Vec<usize>,
    pub r: usize,
    pub h: usize,
    pub b_prime: usize,
}

impl TableRow {
    pub fn new(e: &WindowEntry, b_prime: usize) -> Self {
        TableRow { j: e.j, b: e.bullet, candidates: e.candidates.clone(), r: e.chosen, h: e.offset, b_prime }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEntry {
    pub j: usize,
    pub arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToCircuitsReport {
    pub bullets: Vec<usize>,
    pub normalized: Vec<usize>,
    pub s: usize,
    pub p: usize,
    pub passes: usize,
    pub table: Vec<TableRow>,
    pub t: Vec<Arc>,
    pub p_indices: Vec<usize>,
    pub p_vertices: Vec<usize>,
    pub q_indices: Vec<usize>,
    pub q_vertices: Vec<usize>,
    pub forward_paths: Vec<PathEntry>,
    pub reverse_paths: Vec<PathEntry>,
    pub circuits: Vec<Vec<Arc>>,
}

impl Render for ToCircuitsReport {
    fn text(&self) -> String {
        let mut s = format!("B={} C_{}^{}\n", Set(&self.bullets), self.s, self.p);
        writeln!(s, "B'={}", Set(&self.normalized)).unwrap();
        if self.passes > 1 {
            writeln!(s, "normalization passes: {}", self.passes).unwrap();
        }
        writeln!(s, "  j  b_j  R(j)  r(j)  h_j  b'_j").unwrap();
        for r in &self.table {
            writeln!(s, "  {}  {}  {}  {}  {}  {}", r.j, r.b, Set(&r.candidates), r.r, r.h, r.b_prime).unwrap();
        }
        writeln!(s, "T={}", arc_pairs(&self.t)).unwrap();
        writeln!(s, "P={} (vertices {})", Set(&self.p_indices), Set(&self.p_vertices)).unwrap();
        writeln!(s, "Q={} (vertices {})", Set(&self.q_indices), Set(&self.q_vertices)).unwrap();
        for f in &self.forward_paths {
            writeln!(s, "F_{}={}", f.j, arc_pairs(&f.arcs)).unwrap();
        }
        for r in &self.reverse_paths {
            writeln!(s, "R_{}={}", r.j, arc_pairs(&r.arcs)).unwrap();
        }
        writeln!(s, "circuits: {}", self.circuits.len()).unwrap();
        for c in &self.circuits {
            let parts: Vec<String> = c.iter().map(|a| a.to_string()).collect();
            writeln!(s, "  {}", parts.join(", ")).unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "direction", rename_all = "kebab-case")]
pub enum Translation {
    DToG { from: DSide, to: GSide },
    GToD { from: GSide, to: GToD },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceRow {
    pub multiplicity: usize,
    pub d_side: Option<DSide>,
    pub g_side: Option<GSide>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantReport {
    pub n: usize,
    pub k: usize,
    pub translation: Option<Translation>,
    pub existence: Vec<ExistenceRow>,
}

impl Render for CirculantReport {
    fn text(&self) -> String {
        let mut s = format!("C_{}^{}\n", self.n, self.k);
        match &self.translation {
            Some(Translation::DToG { from, to }) => {
                writeln!(s, "D-side a={} s={} p={} w={}", from.a, from.s, from.p, from.w).unwrap();
                writeln!(s, "G-side d={} n1={} n2={} n3={}", to.d, to.n1, to.n2, to.n3).unwrap();
            }
            Some(Translation::GToD { from, to }) => {
                writeln!(s, "G-side d={} n1={} n2={} n3={}", from.d, from.n1, from.n2, from.n3).unwrap();
                writeln!(s, "D-side a={} s={} p={}", to.a, to.s, to.p).unwrap();
                writeln!(s, "pooled minor C_{}^{}", to.pooled_s, to.pooled_p).unwrap();
            }
            None => {}
        }
        if !self.existence.is_empty() {
            writeln!(s, "  mult  D(n,k): s p w  G(n,k): n1 n2 n3").unwrap();
            for row in &self.existence {
                let d = row.d_side.map_or("-".to_string(), |x| format!("{} {} {}", x.s, x.p, x.w));
                let g = row.g_side.map_or("-".to_string(), |x| format!("{} {} {}", x.n1, x.n2, x.n3));
                writeln!(s, "  {}  {}  {}", row.multiplicity, d, g).unwrap();
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledReport {
    pub label: String,
    pub report: CrossReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub seed: Option<u64>,
    pub reports: Vec<LabeledReport>,
}

impl OracleReport {
    pub fn discrepancies(&self) -> usize {
        self.reports.iter().map(|r| r.report.discrepancies.len()).sum()
    }
}

impl Render for OracleReport {
    fn text(&self) -> String {
        let mut s = String::new();
        if let Some(seed) = self.seed {
            writeln!(s, "seed {seed}").unwrap();
        }
        for LabeledReport { label, report } in &self.reports {
            writeln!(
                s,
                "{label}: n={} subsets={} bullet-sets={} family-sets={} circuits={} families={} discrepancies={}",
                report.n,
                report.subsets,
                report.minor_sets.len(),
                report.family_sets.len(),
                report.circuits,
                report.families,
                report.discrepancies.len()
            )
            .unwrap();
            for c in &report.counts {
                writeln!(s, "  C_{}^{}: minors={} families={}", c.s, c.p, c.minors, c.families).unwrap();
            }
            for b in &report.iterated {
                writeln!(s, "  iterated normalization at {}", Set(b)).unwrap();
            }
            for d in &report.discrepancies {
                writeln!(s, "  discrepancy {d:?}").unwrap();
            }
        }
        s
    }
}
