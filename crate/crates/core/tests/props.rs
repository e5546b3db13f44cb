//! Property tests for the algebraic invariants: elementary transforms,
//! template zero-sums, and verifier dualities.

use heffter_core::blocks::{self, IntervalSet};
use heffter_core::ihs;
use heffter_core::{verify_heffter, verify_ihs, Grid, HeffterParams, IhsParams};
use proptest::prelude::*;

fn arb_grid() -> impl Strategy<Value = Grid> {
    (1usize..6, 1usize..6)
        .prop_flat_map(|(rows, cols)| {
            let cells = proptest::collection::vec(
                (any::<bool>(), 1i64..80, any::<bool>()),
                rows * cols,
            );
            (Just(rows), Just(cols), cells)
        })
        .prop_map(|(rows, cols, cells)| {
            let mut g = Grid::new(rows, cols).unwrap();
            for (i, (filled, v, neg)) in cells.into_iter().enumerate() {
                if filled {
                    let value = if neg { -v } else { v };
                    g.set(i / cols + 1, i % cols + 1, value).unwrap();
                }
            }
            g
        })
}

fn set4_2() -> impl Strategy<Value = IntervalSet> {
    (1i64..500).prop_map(|s| IntervalSet::new(s, 4, 2).unwrap())
}
fn set4_1() -> impl Strategy<Value = IntervalSet> {
    (1i64..500).prop_map(|s| IntervalSet::new(s, 4, 1).unwrap())
}
fn set8_1() -> impl Strategy<Value = IntervalSet> {
    (1i64..500).prop_map(|s| IntervalSet::new(s, 8, 1).unwrap())
}
fn set8_2() -> impl Strategy<Value = IntervalSet> {
    (1i64..500).prop_map(|s| IntervalSet::new(s, 8, 2).unwrap())
}

fn assert_zero_sum_on(args: &[&IntervalSet], grid: &Grid) {
    assert!(grid.row_sums().iter().all(|&s| s == 0), "{grid:?}");
    assert!(grid.col_sums().iter().all(|&s| s == 0), "{grid:?}");
    let mut expected: Vec<u64> = args
        .iter()
        .flat_map(|s| s.elements())
        .map(|v| v as u64)
        .collect();
    expected.sort_unstable();
    assert_eq!(grid.support(), expected);
}

proptest! {
    #[test]
    fn support_matches_skeleton(g in arb_grid()) {
        prop_assert_eq!(g.support().len(), g.skeleton().len());
    }

    #[test]
    fn shift_preserves_skeleton_and_balanced_lines(g in arb_grid(), alpha in 1i64..1000) {
        let shifted = g.shift(alpha).unwrap();
        prop_assert_eq!(shifted.skeleton(), g.skeleton());
        // lines with as many positive as negative entries that sum to zero
        // keep summing to zero
        for r in 1..=g.rows() {
            let entries: Vec<i64> = (1..=g.cols()).filter_map(|c| g.get(r, c)).collect();
            let pos = entries.iter().filter(|&&v| v > 0).count();
            if 2 * pos == entries.len() && entries.iter().sum::<i64>() == 0 {
                let sum: i64 = (1..=g.cols()).filter_map(|c| shifted.get(r, c)).sum();
                prop_assert_eq!(sum, 0);
            }
        }
        for c in 1..=g.cols() {
            let entries: Vec<i64> = (1..=g.rows()).filter_map(|r| g.get(r, c)).collect();
            let pos = entries.iter().filter(|&&v| v > 0).count();
            if 2 * pos == entries.len() && entries.iter().sum::<i64>() == 0 {
                let sum: i64 = (1..=g.rows()).filter_map(|r| shifted.get(r, c)).sum();
                prop_assert_eq!(sum, 0);
            }
        }
    }

    #[test]
    fn transforms_are_involutions(g in arb_grid()) {
        prop_assert_eq!(g.negate().negate(), g.clone());
        prop_assert_eq!(g.transpose().transpose(), g);
    }

    #[test]
    fn verify_transposes(g in arb_grid(), m in 1usize..6, n in 1usize..6, s in 1usize..6, k in 1usize..6) {
        let p = HeffterParams::new(m, n, s, k).unwrap();
        let report = verify_heffter(&g, &p);
        let flipped = verify_heffter(&g.transpose(), &p.transposed());
        prop_assert_eq!(report.valid, flipped.valid);
    }

    #[test]
    fn p1_zero_sum(a in set4_2(), b in set4_2(), c in set4_2(), d in set4_2()) {
        let g = blocks::p1(&a, &b, &c, &d).unwrap();
        assert_zero_sum_on(&[&a, &b, &c, &d], &g);
    }

    #[test]
    fn p2_zero_sum(a in set4_1(), b in set4_1(), c in set4_1(), d in set4_1()) {
        let g = blocks::p2(&a, &b, &c, &d).unwrap();
        assert_zero_sum_on(&[&a, &b, &c, &d], &g);
    }

    #[test]
    fn q1_zero_sum(a in set4_2(), b in set4_2(), y1 in set4_1(), y2 in set4_1(), y3 in set4_1(), y4 in set4_1()) {
        let g = blocks::q1(&a, &b, &y1, &y2, &y3, &y4).unwrap();
        assert_zero_sum_on(&[&a, &b, &y1, &y2, &y3, &y4], &g);
    }

    #[test]
    fn q2_zero_sum(a in set4_2(), y1 in set4_1(), y2 in set4_1(), y3 in set4_1(), z in set8_1()) {
        let g = blocks::q2(&a, &y1, &y2, &y3, &z).unwrap();
        assert_zero_sum_on(&[&a, &y1, &y2, &y3, &z], &g);
    }

    #[test]
    fn q3_zero_sum(y in proptest::array::uniform6(set4_1())) {
        let g = blocks::q3(&y[0], &y[1], &y[2], &y[3], &y[4], &y[5]).unwrap();
        assert_zero_sum_on(&[&y[0], &y[1], &y[2], &y[3], &y[4], &y[5]], &g);
    }

    #[test]
    fn r1_zero_sum(x in proptest::array::uniform3(set4_2()), w in proptest::array::uniform3(set8_2())) {
        let g = blocks::r1(&x[0], &x[1], &x[2], &w[0], &w[1], &w[2]).unwrap();
        assert_zero_sum_on(&[&x[0], &x[1], &x[2], &w[0], &w[1], &w[2]], &g);
    }

    #[test]
    fn r2_zero_sum(y in proptest::array::uniform3(set4_1()), z in proptest::array::uniform3(set8_1())) {
        let g = blocks::r2(&y[0], &y[1], &y[2], &z[0], &z[1], &z[2]).unwrap();
        assert_zero_sum_on(&[&y[0], &y[1], &y[2], &z[0], &z[1], &z[2]], &g);
    }

    #[test]
    fn negate_preserves_set_validity(c in 1usize..12) {
        let p = IhsParams::new(4, 5, c).unwrap();
        let set: Vec<Grid> = blocks::ihs_4x5(c).unwrap().iter().map(Grid::negate).collect();
        prop_assert!(verify_ihs(&set, &p).valid);
    }

    #[test]
    fn shiftable_base_shifts_cleanly(mh in 2usize..6, nh in 2usize..6, alpha in 1i64..10_000) {
        let (m, n) = (2 * mh, 2 * nh);
        let base = ihs::shiftable_full(m, n).unwrap();
        let shifted = base.shift(alpha).unwrap();
        prop_assert!(shifted.row_sums().iter().all(|&s| s == 0));
        prop_assert!(shifted.col_sums().iter().all(|&s| s == 0));
        let support = shifted.support();
        prop_assert_eq!(support[0], alpha as u64 + 1);
        prop_assert_eq!(*support.last().unwrap(), alpha as u64 + (m * n) as u64);
    }
}

fn figure1() -> Grid {
    heffter_core::io::load_path(std::path::Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../fixtures/figure1.csv"
    )))
    .unwrap()
    .0
    .remove(0)
}

#[test]
fn negate_preserves_array_validity() {
    let p = HeffterParams::new(20, 10, 9, 18).unwrap();
    assert!(verify_heffter(&figure1().negate(), &p).valid);
}

#[test]
fn every_single_entry_perturbation_fails() {
    let reference = figure1();
    let p = HeffterParams::new(20, 10, 9, 18).unwrap();
    assert!(verify_heffter(&reference, &p).valid);
    for (r, c, v) in reference.iter() {
        let bump = if v == -1 { -2 } else { v + 1 };
        let mut broken = Grid::new(20, 10).unwrap();
        for (r2, c2, v2) in reference.iter() {
            broken
                .set(r2, c2, if (r2, c2) == (r, c) { bump } else { v2 })
                .unwrap();
        }
        let report = verify_heffter(&broken, &p);
        assert!(!report.valid, "perturbing ({r},{c}) went unnoticed");
        assert!(report.has("row-sum"), "({r},{c}): {report}");
    }
}
