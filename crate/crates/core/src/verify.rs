//! The defining-condition verifier.
//!
//! Verification never fails with an error on mathematical grounds: every
//! violated condition becomes a [`Finding`] in the returned report, so a
//! single run collects all evidence. The verifier doubles as the test
//! oracle for every construction in the crate.

use crate::{Grid, HeffterParams, IhsParams};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// One violated condition, tagged with its kind and location.
///
/// `array` is the 0-based index of the offending grid within a set, always
/// 0 when a single grid is verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Finding {
    RowSum {
        array: usize,
        row: usize,
        observed: i64,
    },
    ColSum {
        array: usize,
        col: usize,
        observed: i64,
    },
    RowCount {
        array: usize,
        row: usize,
        observed: usize,
        expected: usize,
    },
    ColCount {
        array: usize,
        col: usize,
        observed: usize,
        expected: usize,
    },
    /// A repeated absolute value, a value outside `[1, limit]`, or a wrong
    /// total support size.
    SupportMismatch {
        array: usize,
        value: u64,
        observed: u64,
        expected: u64,
    },
    ZeroEntry {
        array: usize,
        row: usize,
        col: usize,
    },
    /// Structural mismatch: wrong grid dimensions or wrong number of grids.
    Bounds {
        array: usize,
        observed: (usize, usize),
        expected: (usize, usize),
    },
}

impl Finding {
    /// The stable kind tag of this finding.
    pub fn tag(&self) -> &'static str {
        match self {
            Finding::RowSum { .. } => "row-sum",
            Finding::ColSum { .. } => "col-sum",
            Finding::RowCount { .. } => "row-count",
            Finding::ColCount { .. } => "col-count",
            Finding::SupportMismatch { .. } => "support-mismatch",
            Finding::ZeroEntry { .. } => "zero-entry",
            Finding::Bounds { .. } => "bounds",
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::RowSum { array, row, observed } => {
                write!(f, "row-sum: array {array} row {row} sums to {observed}, expected 0")
            }
            Finding::ColSum { array, col, observed } => {
                write!(f, "col-sum: array {array} col {col} sums to {observed}, expected 0")
            }
            Finding::RowCount { array, row, observed, expected } => write!(
                f,
                "row-count: array {array} row {row} has {observed} filled cells, expected {expected}"
            ),
            Finding::ColCount { array, col, observed, expected } => write!(
                f,
                "col-count: array {array} col {col} has {observed} filled cells, expected {expected}"
            ),
            Finding::SupportMismatch { array, value, observed, expected } => write!(
                f,
                "support-mismatch: array {array} value {value} observed {observed}, expected {expected}"
            ),
            Finding::ZeroEntry { array, row, col } => {
                write!(f, "zero-entry: array {array} cell ({row},{col})")
            }
            Finding::Bounds { array, observed, expected } => write!(
                f,
                "bounds: array {array} is {}x{}, expected {}x{}",
                observed.0, observed.1, expected.0, expected.1
            ),
        }
    }
}

/// Structured pass/fail evidence. `valid` holds exactly when `violations`
/// is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Finding>,
}

impl VerifyReport {
    fn from_findings(violations: Vec<Finding>) -> Self {
        VerifyReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, tag: &str) -> bool {
        self.violations.iter().any(|v| v.tag() == tag)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid ({} findings)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn check_lines(
    g: &Grid,
    array: usize,
    row_fill: usize,
    col_fill: usize,
    findings: &mut Vec<Finding>,
) {
    for (i, (&count, &sum)) in g.row_fills().iter().zip(g.row_sums().iter()).enumerate() {
        if count != row_fill {
            findings.push(Finding::RowCount {
                array,
                row: i + 1,
                observed: count,
                expected: row_fill,
            });
        }
        if sum != 0 {
            findings.push(Finding::RowSum {
                array,
                row: i + 1,
                observed: sum,
            });
        }
    }
    for (j, (&count, &sum)) in g.col_fills().iter().zip(g.col_sums().iter()).enumerate() {
        if count != col_fill {
            findings.push(Finding::ColCount {
                array,
                col: j + 1,
                observed: count,
                expected: col_fill,
            });
        }
        if sum != 0 {
            findings.push(Finding::ColSum {
                array,
                col: j + 1,
                observed: sum,
            });
        }
    }
}

/// Checks that all absolute values across `grids` are pairwise distinct, lie
/// in `[1, limit]`, and number exactly `expected_count`. Equivalent to the
/// support picking one representative of each pair `{x, -x}` with
/// `x` in `[1, limit]`.
fn check_support(grids: &[&Grid], limit: u64, expected_count: u64, findings: &mut Vec<Finding>) {
    let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
    let mut total = 0u64;
    for (a, g) in grids.iter().enumerate() {
        for (r, c, v) in g.iter() {
            if v == 0 {
                findings.push(Finding::ZeroEntry { array: a, row: r, col: c });
                continue;
            }
            total += 1;
            let abs = v.unsigned_abs();
            if abs > limit {
                findings.push(Finding::SupportMismatch {
                    array: a,
                    value: abs,
                    observed: abs,
                    expected: limit,
                });
            }
            *seen.entry(abs).or_insert(0) += 1;
        }
    }
    for (&value, &count) in &seen {
        if count > 1 {
            // location of duplicates is recoverable from the grids; report once
            findings.push(Finding::SupportMismatch {
                array: 0,
                value,
                observed: count as u64,
                expected: 1,
            });
        }
    }
    if total != expected_count {
        findings.push(Finding::SupportMismatch {
            array: 0,
            value: 0,
            observed: total,
            expected: expected_count,
        });
    }
}

/// Verifies `g` against the integer Heffter array conditions for `p`:
/// `s` filled cells per row, `k` per column, all line sums zero, support
/// one-per-pair within `[1, 2nk]`.
///
/// A dimension mismatch is reported as a `bounds` finding, not an error.
pub fn verify_heffter(g: &Grid, p: &HeffterParams) -> VerifyReport {
    let mut findings = Vec::new();
    if (g.rows(), g.cols()) != (p.m, p.n) {
        findings.push(Finding::Bounds {
            array: 0,
            observed: (g.rows(), g.cols()),
            expected: (p.m, p.n),
        });
        return VerifyReport::from_findings(findings);
    }
    check_lines(g, 0, p.s, p.k, &mut findings);
    let cells = p.cells() as u64;
    check_support(&[g], 2 * cells, cells, &mut findings);
    VerifyReport::from_findings(findings)
}

/// Verifies a set of grids against the integer Heffter array set conditions
/// for `p`: exactly `c` totally filled `m x n` zero-sum arrays whose joint
/// support is one-per-pair within `[1, 2mnc]`.
pub fn verify_ihs(blocks: &[Grid], p: &IhsParams) -> VerifyReport {
    let mut findings = Vec::new();
    if blocks.len() != p.c {
        findings.push(Finding::Bounds {
            array: blocks.len(),
            observed: (blocks.len(), 0),
            expected: (p.c, 0),
        });
    }
    let mut ok_blocks: Vec<&Grid> = Vec::new();
    for (a, g) in blocks.iter().enumerate() {
        if (g.rows(), g.cols()) != (p.m, p.n) {
            findings.push(Finding::Bounds {
                array: a,
                observed: (g.rows(), g.cols()),
                expected: (p.m, p.n),
            });
            continue;
        }
        check_lines(g, a, p.n, p.m, &mut findings);
        ok_blocks.push(g);
    }
    let cells = p.cells() as u64;
    check_support(&ok_blocks, 2 * cells, cells, &mut findings);
    VerifyReport::from_findings(findings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Grid;

    // A hand-checked H(3,3;3,3)-shaped candidate is impossible (9 is 1 mod 4),
    // so tests here use small synthetic grids plus the shipped fixtures
    // exercised in the integration tests.

    #[test]
    fn empty_grid_reports_counts() {
        let g = Grid::new(20, 10).unwrap();
        let p = HeffterParams::new(20, 10, 9, 18).unwrap();
        let report = verify_heffter(&g, &p);
        assert!(!report.valid);
        assert!(report.has("row-count"));
        assert!(report.has("col-count"));
    }

    #[test]
    fn dimension_mismatch_is_bounds_finding() {
        let g = Grid::new(4, 4).unwrap();
        let p = HeffterParams::new(20, 10, 9, 18).unwrap();
        let report = verify_heffter(&g, &p);
        assert_eq!(report.violations.len(), 1);
        assert!(report.has("bounds"));
    }

    #[test]
    fn duplicate_absolute_values_are_reported_once() {
        let a = Grid::from_rows(&[vec![1, 2, -3], vec![-1, -2, 3]]).unwrap();
        let p = IhsParams::new(2, 3, 1).unwrap();
        let report = verify_ihs(&[a], &p);
        assert!(!report.valid);
        let dups: Vec<_> = report
            .violations
            .iter()
            .filter(|f| f.tag() == "support-mismatch")
            .collect();
        // values 1, 2, 3 each repeated, plus the total-count finding is absent
        // (6 entries = mnc = 6)
        assert_eq!(dups.len(), 3);
    }
}
