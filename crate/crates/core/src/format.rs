//! File formats read by the command-line tool.
//!
//! A matrix file holds `n` and exactly one of `rows` (1-based inclusive
//! `[lo, hi]` pairs) or `dense` (0/1 row lists). A circuit file holds
//! `circuits`, each either a list of `{tail, head, kind}` arcs or a plain
//! vertex sequence.

use serde::{Deserialize, Serialize};

use crate::circuit::{circuit_from_steps, circuit_from_vertices, Circuit};
use crate::digraph::{ArcDigraph, KindTag};
use crate::error::Error;
use crate::ground::GroundSet;
use crate::matrix::{parse_circular, CircularMatrix, MatrixError, ParseOptions, RawRows};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<Vec<Vec<u8>>>,
}

impl MatrixFile {
    pub fn from_matrix(a: &CircularMatrix) -> Self {
        MatrixFile { n: a.n(), rows: Some(a.rows().iter().map(|r| (r.lo, r.hi)).collect()), dense: None }
    }

    pub fn to_matrix(&self, options: ParseOptions) -> Result<CircularMatrix, Error> {
        let g = GroundSet::new(self.n)?;
        let raw = match (&self.rows, &self.dense) {
            (Some(rows), None) => RawRows::Intervals(rows.clone()),
            (None, Some(dense)) => RawRows::Dense(dense.clone()),
            _ => return Err(MatrixError::FileShape.into()),
        };
        Ok(parse_circular(&raw, g, options)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSpec {
    pub tail: usize,
    pub head: usize,
    pub kind: KindTag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CircuitSpec {
    Arcs(Vec<ArcSpec>),
    Vertices(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub circuits: Vec<CircuitSpec>,
}

impl CircuitFile {
    pub fn resolve(&self, d: &ArcDigraph) -> Result<Vec<Circuit>, Error> {
        self.circuits
            .iter()
            .map(|spec| match spec {
                CircuitSpec::Arcs(arcs) => {
                    let steps: Vec<_> = arcs.iter().map(|a| (a.tail, a.head, a.kind)).collect();
                    Ok(circuit_from_steps(d, &steps)?)
                }
                CircuitSpec::Vertices(seq) => Ok(circuit_from_vertices(d, seq)?),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::build_f;
    use crate::fixtures::eq1;

    #[test]
    fn matrix_file_round_trip() {
        let text = r#"{"n":12,"rows":[[1,5],[2,8],[5,9],[7,10],[10,12],[12,2]]}"#;
        let file: MatrixFile = serde_json::from_str(text).unwrap();
        assert_eq!(file.to_matrix(ParseOptions::default()).unwrap(), eq1());
        assert_eq!(serde_json::to_string(&MatrixFile::from_matrix(&eq1())).unwrap(), text);
    }

    #[test]
    fn matrix_file_needs_exactly_one_form() {
        let both: MatrixFile = serde_json::from_str(r#"{"n":3,"rows":[[1,2]],"dense":[[1,1,0]]}"#).unwrap();
        assert!(both.to_matrix(ParseOptions::default()).is_err());
        let none: MatrixFile = serde_json::from_str(r#"{"n":3}"#).unwrap();
        assert!(none.to_matrix(ParseOptions::default()).is_err());
    }

    #[test]
    fn circuit_file_both_shapes() {
        let f = build_f(&eq1());
        let text = r#"{"circuits":[
            [{"tail":1,"head":8,"kind":"row"},{"tail":8,"head":7,"kind":"rev"},{"tail":7,"head":6,"kind":"rev"},
             {"tail":6,"head":10,"kind":"row"},{"tail":10,"head":11,"kind":"fwd"},{"tail":11,"head":2,"kind":"row"},
             {"tail":2,"head":1,"kind":"rev"}],
            [4,9,12,5,4]
        ]}"#;
        let file: CircuitFile = serde_json::from_str(text).unwrap();
        let circuits = file.resolve(&f).unwrap();
        assert_eq!(circuits.len(), 2);
        assert_eq!(circuits[1].vertices(), vec![4, 9, 12, 5]);
    }
}
