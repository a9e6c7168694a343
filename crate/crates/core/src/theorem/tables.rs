use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::pattern::{classify_pattern, excludes_b2, Exclusion, ForbiddenPattern};
use super::TheoremError;
use crate::cf::{eval_finite, Cylinder, Digit};
use crate::quadfield::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// One line of a case table. Words are suffixes: the cylinders are
/// `I(3, (2)^n, x_suffix)` and `I(3, (2)^n, y_suffix)`, the endpoints
/// `[(2)^{n+1}, left, ∞]` and `[(2)^{n+1}, right, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRow {
    pub id: String,
    pub x_suffix: Vec<Digit>,
    pub y_suffix: Vec<Digit>,
    pub left: Vec<Digit>,
    pub right: Vec<Digit>,
    pub parity: Parity,
}

type RawRow = (
    &'static str,
    &'static [Digit],
    &'static [Digit],
    &'static [Digit],
    &'static [Digit],
);

const EVEN_ROWS: [RawRow; 17] = [
    ("1", &[1], &[1], &[3], &[]),
    ("2.1", &[1, 2], &[2, 2], &[3], &[3, 1]),
    ("2.2", &[1, 2], &[2, 1], &[2, 1, 12], &[3, 1]),
    ("2.3.1", &[1, 1, 1], &[2, 2, 1], &[3], &[3, 2]),
    ("2.3.2", &[1, 1, 1], &[2, 2, 2], &[3], &[3, 3]),
    ("2.3.3", &[1, 1, 2], &[2, 2, 1], &[2, 1, 14], &[3, 10]),
    ("2.3.4", &[1, 1, 2], &[2, 2, 2], &[2, 1, 10], &[3, 20]),
    ("2.4.1", &[1, 1, 1], &[2, 1, 1], &[2, 1, 6], &[3, 4]),
    ("2.4.2", &[1, 1, 1], &[2, 1, 2], &[2, 1, 4], &[3, 8]),
    ("2.4.3", &[1, 1, 2], &[2, 1, 1], &[2, 1, 3], &[2, 1]),
    (
        "2.4.4.1.1",
        &[1, 1, 2, 1, 1],
        &[2, 1, 2, 1, 1],
        &[2, 1, 3],
        &[2, 1],
    ),
    (
        "2.4.4.1.2",
        &[1, 1, 2, 1, 1],
        &[2, 1, 2, 1, 2],
        &[2, 1, 3],
        &[2, 1],
    ),
    (
        "2.4.4.1.3",
        &[1, 1, 2, 1, 2],
        &[2, 1, 2, 1, 2],
        &[2, 1, 3],
        &[2, 1],
    ),
    (
        "2.4.4.1.4",
        &[1, 1, 2, 1, 2],
        &[2, 1, 2, 1, 1],
        &[2, 1, 3],
        &[2, 1],
    ),
    (
        "2.4.4.2",
        &[1, 1, 2, 1],
        &[2, 1, 2, 2],
        &[2, 1, 2, 1, 20],
        &[2, 1],
    ),
    ("2.4.4.3", &[1, 1, 2, 2], &[2, 1, 2, 1], &[2, 1, 3], &[2, 1]),
    ("2.4.4.4", &[1, 1, 2, 2], &[2, 1, 2, 2], &[2, 1, 3], &[2, 1]),
];

const ODD_ROWS: [RawRow; 17] = [
    ("1", &[1], &[1], &[], &[3]),
    ("2.1", &[1, 2], &[2, 2], &[3, 1], &[3]),
    ("2.2", &[1, 2], &[2, 1], &[3, 1], &[2, 1, 12]),
    ("2.3.1", &[1, 1, 1], &[2, 2, 1], &[3, 2], &[3]),
    ("2.3.2", &[1, 1, 1], &[2, 2, 2], &[3, 3], &[3]),
    ("2.3.3", &[1, 1, 2], &[2, 2, 1], &[3, 10], &[2, 1, 14]),
    ("2.3.4", &[1, 1, 2], &[2, 2, 2], &[3, 20], &[2, 1, 10]),
    ("2.4.1", &[1, 1, 1], &[2, 1, 1], &[3, 4], &[2, 1, 6]),
    ("2.4.2", &[1, 1, 1], &[2, 1, 2], &[3, 8], &[2, 1, 4]),
    ("2.4.3", &[1, 1, 2], &[2, 1, 1], &[2, 1], &[2, 1, 3]),
    (
        "2.4.4.1.1",
        &[1, 1, 2, 1, 1],
        &[2, 1, 2, 1, 1],
        &[2, 1],
        &[2, 1, 3],
    ),
    (
        "2.4.4.1.2",
        &[1, 1, 2, 1, 1],
        &[2, 1, 2, 1, 2],
        &[2, 1],
        &[2, 1, 3],
    ),
    (
        "2.4.4.1.3",
        &[1, 1, 2, 1, 2],
        &[2, 1, 2, 1, 2],
        &[2, 1],
        &[2, 1, 3],
    ),
    (
        "2.4.4.1.4",
        &[1, 1, 2, 1, 2],
        &[2, 1, 2, 1, 1],
        &[2, 1],
        &[2, 1, 3],
    ),
    (
        "2.4.4.2",
        &[1, 1, 2, 1],
        &[2, 1, 2, 2],
        &[2, 1],
        &[2, 1, 2, 1, 20],
    ),
    ("2.4.4.3", &[1, 1, 2, 2], &[2, 1, 2, 1], &[2, 1], &[2, 1, 3]),
    ("2.4.4.4", &[1, 1, 2, 2], &[2, 1, 2, 2], &[2, 1], &[2, 1, 3]),
];

fn build(raw: &[RawRow], parity: Parity) -> Vec<CaseRow> {
    raw.iter()
        .map(|&(id, x, y, l, r)| CaseRow {
            id: id.to_string(),
            x_suffix: x.to_vec(),
            y_suffix: y.to_vec(),
            left: l.to_vec(),
            right: r.to_vec(),
            parity,
        })
        .collect()
}

/// Rows used when `n` is even.
pub fn even_table() -> Vec<CaseRow> {
    build(&EVEN_ROWS, Parity::Even)
}

/// Rows used when `n` is odd.
pub fn odd_table() -> Vec<CaseRow> {
    build(&ODD_ROWS, Parity::Odd)
}

impl CaseRow {
    fn cylinder_word(&self, n: usize, suffix: &[Digit]) -> Vec<Digit> {
        let mut w = vec![3];
        w.extend(std::iter::repeat_n(2, n));
        w.extend_from_slice(suffix);
        w
    }

    pub fn x_word(&self, n: usize) -> Vec<Digit> {
        self.cylinder_word(n, &self.x_suffix)
    }

    pub fn y_word(&self, n: usize) -> Vec<Digit> {
        self.cylinder_word(n, &self.y_suffix)
    }

    fn endpoint_word(n: usize, suffix: &[Digit]) -> Vec<Digit> {
        let mut w = vec![2; n + 1];
        w.extend_from_slice(suffix);
        w
    }

    pub fn left_word(&self, n: usize) -> Vec<Digit> {
        Self::endpoint_word(n, &self.left)
    }

    pub fn right_word(&self, n: usize) -> Vec<Digit> {
        Self::endpoint_word(n, &self.right)
    }
}

/// Result of checking one row at one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub id: String,
    pub n: usize,
    pub pass: bool,
    pub z_lo: Rat,
    pub z_hi: Rat,
    pub left: Rat,
    pub right: Rat,
    pub pattern: Option<ForbiddenPattern>,
}

/// Exact check that `1 − X − Y` lies in the row's forbidden pattern.
pub fn verify_case_row(row: &CaseRow, n: usize) -> Result<RowCheck, TheoremError> {
    if Parity::of(n) != row.parity {
        return Err(TheoremError::ParityMismatch {
            row: row.id.clone(),
            n,
        });
    }
    let (x_lo, x_hi) = Cylinder::new(&row.x_word(n))?.hull();
    let (y_lo, y_hi) = Cylinder::new(&row.y_word(n))?.hull();
    let one = Rat::from_integer(1.into());
    let z_lo = &one - &x_hi - &y_hi;
    let z_hi = &one - &x_lo - &y_lo;
    let (lw, rw) = (row.left_word(n), row.right_word(n));
    let (left, right) = (eval_finite(&lw), eval_finite(&rw));
    let pattern = classify_pattern(&lw, &rw);
    let pass = left < right
        && left <= z_lo
        && z_hi <= right
        && pattern.as_ref().is_some_and(|p| p.contains(&left, &right));
    Ok(RowCheck {
        id: row.id.clone(),
        n,
        pass,
        z_lo,
        z_hi,
        left,
        right,
        pattern,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionCheck {
    pub lo: Rat,
    pub hi: Rat,
    pub outcome: Exclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableSummary {
    pub rows_checked: usize,
    pub rows_passed: usize,
    pub intervals_checked: usize,
    pub intervals_certified: usize,
    pub all_pass: bool,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
    pub exclusions: Vec<ExclusionCheck>,
    pub summary: TableSummary,
}

pub const EXCLUSION_DEPTH: usize = 30;

/// All rows of both tables for `n = 0..=n_max`, plus the B₂-exclusion oracle
/// on every distinct endpoint interval. Row order is deterministic.
pub fn verify_tables(n_max: usize) -> TableReport {
    let (even, odd) = (even_table(), odd_table());
    let jobs: Vec<(&CaseRow, usize)> = (0..=n_max)
        .flat_map(|n| {
            let table = if n % 2 == 0 { &even } else { &odd };
            table.iter().map(move |row| (row, n))
        })
        .collect();
    let rows: Vec<RowCheck> = jobs
        .par_iter()
        .map(|&(row, n)| verify_case_row(row, n).expect("parity matched by construction"))
        .collect();

    let mut intervals = BTreeSet::new();
    for r in &rows {
        intervals.insert((r.left.clone(), r.right.clone()));
        if let Some(p) = &r.pattern {
            intervals.insert((p.r1.clone(), p.r2.clone()));
        }
    }
    let intervals: Vec<(Rat, Rat)> = intervals.into_iter().filter(|(a, b)| a < b).collect();
    let exclusions: Vec<ExclusionCheck> = intervals
        .par_iter()
        .map(|(lo, hi)| ExclusionCheck {
            lo: lo.clone(),
            hi: hi.clone(),
            outcome: excludes_b2(lo, hi, EXCLUSION_DEPTH),
        })
        .collect();

    let rows_passed = rows.iter().filter(|r| r.pass).count();
    let intervals_certified = exclusions
        .iter()
        .filter(|e| e.outcome == Exclusion::CertifiedEmpty)
        .count();
    let summary = TableSummary {
        rows_checked: rows.len(),
        rows_passed,
        intervals_checked: exclusions.len(),
        intervals_certified,
        all_pass: rows_passed == rows.len() && intervals_certified == exclusions.len(),
    };
    TableReport {
        rows,
        exclusions,
        summary,
    }
}

#[derive(Serialize)]
struct RowJson<'a> {
    id: &'a str,
    n: usize,
    pass: bool,
    z_interval: [String; 2],
    endpoints: [String; 2],
    pattern: Option<String>,
}

#[derive(Serialize)]
struct ExclusionJson {
    interval: [String; 2],
    outcome: String,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    rows: Vec<RowJson<'a>>,
    exclusions: Vec<ExclusionJson>,
    summary: &'a TableSummary,
}

fn outcome_label(e: &Exclusion) -> String {
    match e {
        Exclusion::CertifiedEmpty => "certified-empty".into(),
        Exclusion::Witness(w) => format!("witness{w:?}"),
        Exclusion::Inconclusive => "inconclusive".into(),
    }
}

impl TableReport {
    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    id: &r.id,
                    n: r.n,
                    pass: r.pass,
                    z_interval: [r.z_lo.to_string(), r.z_hi.to_string()],
                    endpoints: [r.left.to_string(), r.right.to_string()],
                    pattern: r.pattern.as_ref().map(|p| p.label()),
                })
                .collect(),
            exclusions: self
                .exclusions
                .iter()
                .map(|e| ExclusionJson {
                    interval: [e.lo.to_string(), e.hi.to_string()],
                    outcome: outcome_label(&e.outcome),
                })
                .collect(),
            summary: &self.summary,
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "row {:<10} n={:<3} {}  pattern={}",
                r.id,
                r.n,
                if r.pass { "PASS" } else { "FAIL" },
                r.pattern.as_ref().map_or("none".to_string(), |p| p.label()),
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "rows: {}/{} pass; intervals excluded from B2: {}/{}",
            s.rows_passed, s.rows_checked, s.intervals_certified, s.intervals_checked
        );
        out
    }
}
