//! Rectangular integer Heffter array construction.
//!
//! The central route handles `d = gcd(s,k) = 1 (mod 4)`, `d >= 5`,
//! `nk = 0 (mod 4)`: write `m = e*k1`, `n = e*s1`, `s = d*s1`, `k = d*k1`
//! with `gcd(s1,k1) = 1` and `e > d`. A five-per-line square of order
//! `4N = e*s1*k1` on the fixed cyclic-diagonal skeleton is folded by residue
//! remapping into an `e*k1 x e*s1` array with five entries per line class
//! ([`fold_to_rectangle`]); for `d = 5 + 4t` with `t > 0` a shiftable
//! companion on `4t` further diagonal classes ([`diagonal_companion`]) is
//! shifted past the folded support and overlaid. Injectivity of the fold and
//! skeleton disjointness of the overlay are enforced at runtime.
//!
//! [`compose_diagonal`] turns any verified Heffter array set into a
//! rectangular Heffter array by diagonal block placement. [`construct`]
//! dispatches among all routes.

use crate::solver::BaseProvider;
use crate::verify::{verify_heffter, verify_ihs};
use crate::{ihs, Error, Grid, HeffterParams, IhsParams, Outcome};

/// Derived data for the fold-and-overlay construction, with `k1` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldPlan {
    pub e: usize,
    pub s1: usize,
    pub k1: usize,
    pub d: usize,
    /// `d = 5 + 4t`.
    pub t: usize,
    /// Order of the base square, `4N = e * s1 * k1`.
    pub order: usize,
}

impl FoldPlan {
    pub fn new(e: usize, s1: usize, k1: usize, d: usize) -> Result<Self, Error> {
        if crate::params::gcd(s1, k1) != 1 {
            return Err(Error::WrongCase(format!(
                "s1 = {s1} and k1 = {k1} must be coprime"
            )));
        }
        if k1 % 2 == 0 {
            return Err(Error::WrongCase(format!(
                "k1 = {k1} must be odd (transpose the parameters first)"
            )));
        }
        if d < 5 || d % 4 != 1 {
            return Err(Error::WrongCase(format!("d = {d} must be 1 (mod 4), at least 5")));
        }
        if e <= d {
            return Err(Error::WrongCase(format!("e = {e} must exceed d = {d}")));
        }
        let order = e * s1 * k1;
        if order % 4 != 0 {
            return Err(Error::WrongCase(format!(
                "e*s1*k1 = {order} must be divisible by 4"
            )));
        }
        Ok(FoldPlan {
            e,
            s1,
            k1,
            d,
            t: (d - 5) / 4,
            order,
        })
    }

    pub fn from_params(p: &HeffterParams) -> Result<Self, Error> {
        let e = p
            .e()
            .ok_or_else(|| Error::WrongCase(format!("ms != nk for {p:?}")))?;
        FoldPlan::new(e, p.s1(), p.k1(), p.d())
    }

    /// Diagonal residue classes mod `order` holding the base square's
    /// skeleton.
    pub fn base_residues(&self) -> [usize; 5] {
        let half = self.order / 2;
        [0, 1, 2, half, half + 1]
    }

    /// Row offset used by the fold (nonzero only in the lower half when
    /// `s1` is even, where it keeps the folded diagonals clear of the
    /// companion's).
    pub fn row_offset(&self, i: usize) -> usize {
        if self.s1 % 2 == 0 && i > self.order / 2 {
            3
        } else {
            0
        }
    }

    /// Diagonal residue classes mod `e` carried by the shiftable companion:
    /// `[3, 2+2t] ⊔ [e-2t, e-1]` for odd `s1`, `[3, 4t+2]` for even `s1`.
    pub fn companion_residues(&self) -> Vec<usize> {
        if self.t == 0 {
            return Vec::new();
        }
        if self.s1 % 2 == 1 {
            (3..=2 + 2 * self.t)
                .chain(self.e - 2 * self.t..=self.e - 1)
                .collect()
        } else {
            (3..=4 * self.t + 2).collect()
        }
    }
}

/// Folds a five-per-line base square of order `4N` onto an
/// `e*k1 x e*s1` rectangle by reducing row indices mod `e*k1` (with the
/// plan's row offset) and column indices mod `e*s1`. Each target row
/// collects `s1` source rows and each target column `k1` source columns, so
/// line sums stay zero and fill counts become `5*s1` and `5*k1`.
///
/// The base must pass verification as a five-per-line square on the exact
/// cyclic-diagonal skeleton; the remapping is checked injective at runtime
/// and a collision is an error.
pub fn fold_to_rectangle(base: &Grid, plan: &FoldPlan) -> Result<Grid, Error> {
    crate::solver::check_base(base, plan.order)?;
    let rows = plan.e * plan.k1;
    let cols = plan.e * plan.s1;
    let mut out = Grid::new(rows, cols)?;
    for (i, j, v) in base.iter() {
        let u = (i + plan.row_offset(i) - 1) % rows + 1;
        let w = (j - 1) % cols + 1;
        out.set(u, w, v).map_err(|e| match e {
            Error::CellOccupied { row, col } => Error::FoldCollision(row, col),
            other => other,
        })?;
    }
    Ok(out)
}

/// Builds the shiftable companion: a totally sign-balanced array on the
/// plan's `4t` diagonal residue classes with support `[1, 4t*order]`,
/// every row holding `4t*s1` entries, every column `4t*k1`, and all line
/// sums zero. Returns an empty grid when `t = 0`.
///
/// Adjacent residues `(l, l+1)` are filled in pairs: two cyclic diagonal
/// walks sharing their column at every step carry consecutive values with
/// opposite signs, so each column gains a constant from the pair; pairs are
/// signed alternately and all are anchored on row 1, which cancels the
/// column constants and the row-1 wraparound in one stroke.
pub fn diagonal_companion(plan: &FoldPlan) -> Result<Grid, Error> {
    let rows = plan.e * plan.k1;
    let cols = plan.e * plan.s1;
    let mut g = Grid::new(rows, cols)?;
    let residues = plan.companion_residues();
    let steps = plan.order;
    for (pi, pair) in residues.chunks(2).enumerate() {
        let [lo, hi] = pair else {
            return Err(Error::Internal("odd companion residue count".into()));
        };
        if *hi != lo + 1 {
            return Err(Error::Internal("companion residues must pair adjacently".into()));
        }
        let sigma = if pi % 2 == 0 { 1i64 } else { -1i64 };
        let block = (pi * 2 * steps) as i64;
        let b0 = hi % plan.e; // anchor column minus one: b0 ≡ hi (mod e)
        for p in 0..steps {
            let upper_row = p % rows + 1;
            let lower_row = (p + 1) % rows + 1;
            let col = (b0 + p) % cols + 1;
            g.set(upper_row, col, sigma * (block + 2 * p as i64 + 1))?;
            g.set(lower_row, col, -sigma * (block + 2 * p as i64 + 2))?;
        }
    }
    Ok(g)
}

/// Constructs `H(m,n;s,k)` for `d = gcd(s,k) = 1 (mod 4)`, `d >= 5`,
/// `nk = 0 (mod 4)` and `e > d` by folding a base square and overlaying the
/// shifted companion.
pub fn build_fold_overlay(p: &HeffterParams, bases: &BaseProvider) -> Result<Grid, Error> {
    if let Some(reason) = p.admissibility_failure() {
        return Err(Error::Inadmissible(reason));
    }
    if (p.n * p.k) % 4 != 0 {
        return Err(Error::WrongCase(format!("nk = {} not 0 (mod 4)", p.n * p.k)));
    }
    if p.k1() % 2 == 0 {
        return Ok(build_fold_overlay(&p.transposed(), bases)?.transpose());
    }
    let plan = FoldPlan::from_params(p)?;
    let base = bases.base(plan.order)?;
    let folded = fold_to_rectangle(&base, &plan)?;
    if plan.t == 0 {
        return Ok(folded);
    }
    let companion = diagonal_companion(&plan)?;
    folded.overlay(&companion.shift(5 * plan.order as i64)?)
}

/// Places the blocks of a verified Heffter array set down the main diagonal:
/// block `i` occupies rows `(i-1)k+1 .. ik` and columns `(i-1)s+1 .. is`,
/// giving an `H(ck, cs; s, k)`.
pub fn compose_diagonal(blocks: &[Grid]) -> Result<Grid, Error> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::InvalidInput("empty block list".into()))?;
    let (k, s, c) = (first.rows(), first.cols(), blocks.len());
    let p = IhsParams::new(k, s, c)?;
    let report = verify_ihs(blocks, &p);
    if !report.valid {
        return Err(Error::InvalidInput(format!(
            "blocks are not a Heffter array set: {}",
            report.violations[0]
        )));
    }
    let mut out = Grid::new(c * k, c * s)?;
    for (i, block) in blocks.iter().enumerate() {
        out.place(block, i * k + 1, i * s + 1)?;
    }
    Ok(out)
}

/// Top-level dispatcher.
///
/// Routes, in order: diagonal composition of a buildable Heffter array set
/// when `m = ck`, `n = cs` (closed-form and total), then the fold-and-overlay
/// route. Tuples failing the necessary conditions come back `Inadmissible`;
/// admissible tuples outside every route come back `Unsupported` with a
/// case description. Every built array is verified before it is returned.
pub fn construct(
    m: usize,
    n: usize,
    s: usize,
    k: usize,
    bases: &BaseProvider,
) -> Result<Outcome<Grid>, Error> {
    let p = HeffterParams::new(m, n, s, k)?;
    if let Some(reason) = p.admissibility_failure() {
        return Ok(Outcome::Inadmissible(reason));
    }

    if m % k == 0 && n % s == 0 && m / k == n / s {
        let set_params = IhsParams::new(k, s, m / k)?;
        if let Outcome::Built(blocks, route) = ihs::build_ihs(&set_params)? {
            let grid = compose_diagonal(&blocks)?;
            return certify(grid, &p, format!("diagonal composition of {route}"));
        }
    }

    let d = p.d();
    if d % 4 == 1 && d >= 5 && (n * k) % 4 == 0 {
        match build_fold_overlay(&p, bases) {
            Ok(grid) => {
                return certify(grid, &p, "diagonal fold with shiftable companion".into())
            }
            // e = d is the square-family case, solved elsewhere
            Err(Error::WrongCase(_)) => {}
            Err(other) => return Err(other),
        }
    }

    Ok(Outcome::Unsupported(classify_unsupported(&p)))
}

fn certify(grid: Grid, p: &HeffterParams, route: String) -> Result<Outcome<Grid>, Error> {
    let report = verify_heffter(&grid, p);
    if !report.valid {
        return Err(Error::Internal(format!(
            "constructed array fails verification: {}",
            report.violations[0]
        )));
    }
    Ok(Outcome::Built(grid, route))
}

/// Describes why an admissible tuple is outside the routes built here.
fn classify_unsupported(p: &HeffterParams) -> String {
    let head = format!("H({},{};{},{})", p.m, p.n, p.s, p.k);
    let d = p.d();
    // normalize so the odd one of (s, k) plays the column role
    let (s, k) = if p.k % 2 == 1 { (p.s, p.k) } else { (p.k, p.s) };
    match d % 4 {
        0 | 2 | 3 => format!(
            "{head}: gcd(s,k) = {d} is {} (mod 4); existence known in the literature, not constructed here",
            d % 4
        ),
        1 if d >= 5 && (p.n * p.k) % 4 == 3 => format!(
            "{head}: gcd = {d} with nk = 3 (mod 4); existence known in the literature, not constructed here"
        ),
        1 if d >= 5 => format!(
            "{head}: square-family case (m/k1 = gcd); existence known in the literature, not constructed here"
        ),
        _ if s % 4 == 0 && k != 5 => format!(
            "{head}: coprime with s = 0 (mod 4); existence known in the literature, not constructed here"
        ),
        _ if k >= 7 && !matches!(s, 3 | 5 | 6 | 10) => format!(
            "{head}: coprime with odd k >= 7; existence known in the literature, not constructed here"
        ),
        _ => format!("{head}: existence open (conjectured); no construction known"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks;
    use std::path::Path;
    use std::time::Duration;

    fn fixtures_dir() -> std::path::PathBuf {
        Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")).to_path_buf()
    }

    fn provider() -> BaseProvider {
        BaseProvider::new(Some(fixtures_dir()), Duration::from_secs(600), 0)
    }

    fn figure_fixture() -> Grid {
        let (grids, _) = crate::io::load_path(&fixtures_dir().join("figure1.csv")).unwrap();
        grids.into_iter().next().unwrap()
    }

    /// Splits the published overlay by support: folded part `[1, 100]`,
    /// shifted companion `(100, 180]`.
    fn split_figure() -> (Grid, Grid) {
        let fig = figure_fixture().transpose();
        let mut folded = Grid::new(10, 20).unwrap();
        let mut companion = Grid::new(10, 20).unwrap();
        for (r, c, v) in fig.iter() {
            if v.abs() <= 100 {
                folded.set(r, c, v).unwrap();
            } else {
                companion.set(r, c, v).unwrap();
            }
        }
        (folded, companion)
    }

    #[test]
    fn figure_split_parts_have_published_shapes() {
        let (folded, shifted) = split_figure();
        // folded part is a valid H(10,20;10,5)
        let p = HeffterParams::new(10, 20, 10, 5).unwrap();
        assert!(verify_heffter(&folded, &p).valid);
        // companion part, unshifted, is a shiftable H(10,20;8,4) on the
        // residue classes [3,6] mod 10
        let plan = FoldPlan::new(10, 2, 1, 9).unwrap();
        assert_eq!(plan.companion_residues(), vec![3, 4, 5, 6]);
        let mut unshifted = Grid::new(10, 20).unwrap();
        for (r, c, v) in shifted.iter() {
            unshifted
                .set(r, c, if v > 0 { v - 100 } else { v + 100 })
                .unwrap();
            let diff = (c as i64 - r as i64).rem_euclid(10) as usize;
            assert!((3..=6).contains(&diff), "cell ({r},{c}) off the classes");
        }
        assert_eq!(unshifted.support(), (1..=80).collect::<Vec<u64>>());
        assert!(unshifted.row_sums().iter().all(|&s| s == 0));
        assert!(unshifted.col_sums().iter().all(|&s| s == 0));
        assert_eq!(unshifted.shift(100).unwrap(), shifted);
        // and the overlay reassembles the figure
        assert_eq!(
            folded.overlay(&shifted).unwrap(),
            figure_fixture().transpose()
        );
    }

    #[test]
    fn companion_matches_contract() {
        // e = 10, s1 = 2, k1 = 1, t = 1: same shape as the published example
        let plan = FoldPlan::new(10, 2, 1, 9).unwrap();
        let c = diagonal_companion(&plan).unwrap();
        assert_eq!((c.rows(), c.cols()), (10, 20));
        assert_eq!(c.support(), (1..=80).collect::<Vec<u64>>());
        assert!(c.row_sums().iter().all(|&s| s == 0));
        assert!(c.col_sums().iter().all(|&s| s == 0));
        assert!(c.row_fills().iter().all(|&f| f == 8));
        assert!(c.col_fills().iter().all(|&f| f == 4));
        for (r, col, v) in c.iter() {
            let diff = (col as i64 - r as i64).rem_euclid(10) as usize;
            assert!((3..=6).contains(&diff));
            assert_ne!(v, 0);
        }
        // sign balance per line
        for r in 1..=10 {
            let pos = (1..=20).filter(|&col| c.get(r, col).unwrap_or(-1) > 0).count();
            assert_eq!(pos, 4);
        }
    }

    #[test]
    fn companion_shapes_across_plans() {
        for (e, s1, k1, d) in [(12, 1, 1, 5), (8, 2, 1, 5), (16, 1, 1, 9), (12, 1, 1, 9), (14, 2, 1, 9), (32, 1, 3, 13)] {
            let plan = FoldPlan::new(e, s1, k1, d).unwrap();
            let c = diagonal_companion(&plan).unwrap();
            if plan.t == 0 {
                assert!(c.is_empty());
                continue;
            }
            let cells = 4 * plan.t * plan.order;
            assert_eq!(c.support(), (1..=cells as u64).collect::<Vec<u64>>());
            assert!(c.row_sums().iter().all(|&s| s == 0), "plan {plan:?}");
            assert!(c.col_sums().iter().all(|&s| s == 0), "plan {plan:?}");
            assert!(c
                .row_fills()
                .iter()
                .all(|&f| f == 4 * plan.t * plan.s1));
            assert!(c
                .col_fills()
                .iter()
                .all(|&f| f == 4 * plan.t * plan.k1));
        }
    }

    #[test]
    fn fold_even_s1_onto_wide_rectangle() {
        // e = 8, s1 = 2, k1 = 1 folds the order-16 base onto 8x16 with the
        // lower-half row offset active
        let bases = provider();
        let base = bases.base(16).unwrap();
        let plan = FoldPlan::new(8, 2, 1, 5).unwrap();
        assert_eq!(plan.base_residues(), [0, 1, 2, 8, 9]);
        let folded = fold_to_rectangle(&base, &plan).unwrap();
        let p = HeffterParams::new(8, 16, 10, 5).unwrap();
        assert!(verify_heffter(&folded, &p).valid);
    }

    #[test]
    fn overlay_with_unit_factors_returns_the_base() {
        let bases = provider();
        let p = HeffterParams::new(8, 8, 5, 5).unwrap();
        let grid = build_fold_overlay(&p, &bases).unwrap();
        assert_eq!(grid, bases.base(8).unwrap());
    }

    #[test]
    fn construct_at_published_scale() {
        // the published 20x10 shape: transposed fold of an order-20 base
        // plus a shifted companion
        let bases = provider();
        match construct(20, 10, 9, 18, &bases).unwrap() {
            Outcome::Built(g, route) => {
                assert!(route.contains("fold"), "{route}");
                assert_eq!((g.rows(), g.cols()), (20, 10));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compose_single_block_is_identity_shape() {
        let blocks = blocks::ihs_4x5(1).unwrap();
        let composed = compose_diagonal(&blocks).unwrap();
        assert_eq!(composed, blocks[0]);
        let p = HeffterParams::new(4, 5, 5, 4).unwrap();
        assert!(verify_heffter(&composed, &p).valid);
    }

    #[test]
    fn compose_4x5_pair() {
        let blocks = blocks::ihs_4x5(2).unwrap();
        let composed = compose_diagonal(&blocks).unwrap();
        let p = HeffterParams::new(8, 10, 5, 4).unwrap();
        assert!(verify_heffter(&composed, &p).valid);
    }

    #[test]
    fn compose_rejects_duplicated_blocks() {
        let b = blocks::ihs_4x5(1).unwrap().remove(0);
        assert!(matches!(
            compose_diagonal(&[b.clone(), b]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn construct_examples() {
        let bases = provider();
        // inadmissible: nk = 1 (mod 4)
        assert!(matches!(
            construct(3, 3, 3, 3, &bases).unwrap(),
            Outcome::Inadmissible(_)
        ));
        // via the 4x5 set
        match construct(8, 10, 5, 4, &bases).unwrap() {
            Outcome::Built(g, route) => {
                assert!(route.contains("composition"), "{route}");
                assert_eq!((g.rows(), g.cols()), (8, 10));
            }
            other => panic!("unexpected {other:?}"),
        }
        // tight even case via the shiftable family
        match construct(8, 4, 4, 8, &bases).unwrap() {
            Outcome::Built(g, _) => {
                let p = HeffterParams::new(8, 4, 4, 8).unwrap();
                assert!(verify_heffter(&g, &p).valid);
            }
            other => panic!("unexpected {other:?}"),
        }
        // admissible but outside every route: coprime, k = 3
        assert!(matches!(
            construct(4, 4, 3, 3, &bases).unwrap(),
            Outcome::Unsupported(_)
        ));
    }
}
