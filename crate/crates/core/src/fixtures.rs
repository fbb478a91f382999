//! Small matrices used throughout the tests and the CLI examples.

use crate::ground::{CircularInterval, GroundSet};
use crate::matrix::{CircularMatrix, ParseOptions};

/// The 6×12 circular matrix with rows `[1,5] [2,8] [5,9] [7,10] [10,12] [12,2]`.
pub fn eq1() -> CircularMatrix {
    let g = GroundSet::new(12).expect("n = 12");
    let rows = [(1, 5), (2, 8), (5, 9), (7, 10), (10, 12), (12, 2)]
        .into_iter()
        .map(|(lo, hi)| CircularInterval::new(lo, hi))
        .collect();
    CircularMatrix::from_intervals(g, rows, ParseOptions::default()).expect("valid fixture")
}
