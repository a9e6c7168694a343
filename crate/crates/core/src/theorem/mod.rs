//! Exact verification of the solution counts for `x+y+z=1` and `x+y=z` over
//! eventually 2-bad numbers.

mod case21;
mod identities;
mod pattern;
mod search;
mod solutions;
mod tables;

use thiserror::Error;

use crate::cf::CfError;
use crate::quadfield::QuadError;

pub use case21::{check_case21, Case21Check};
pub use identities::{extra_identity, insertion, ExtraIdentity, Insertion, InsertionKind};
pub use pattern::{classify_pattern, excludes_b2, forbidden_interval, Exclusion, ForbiddenPattern};
pub use search::{
    hull_contains, search_triples, survivor_contains, DigitRule, SearchConfig, SearchResult,
    DEFAULT_LOOKAHEAD, MAX_SEARCH_DEPTH,
};
pub use solutions::{
    b22_solutions, check_sum, generate_from, generate_solutions, main2_solutions, main_solutions,
    parse_code, predicted_class, scalene_family, BaseSolution, CodeSymbol, Component, Relation,
    SolutionTriple, MAX_CODE_LEN,
};
pub use tables::{
    even_table, odd_table, verify_case_row, verify_tables, CaseRow, ExclusionCheck, Parity,
    RowCheck, TableReport, TableSummary, EXCLUSION_DEPTH,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("row {row} is not defined for n = {n} (wrong parity)")]
    ParityMismatch { row: String, n: usize },
    #[error("parameter out of range: {0}")]
    Param(String),
    #[error("transform hits a pole")]
    Pole,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}
