//! Skeleton-constrained exact search.
//!
//! A [`SolveTask`] prescribes a skeleton inside a `rows x cols` frame; the
//! solver chooses one sign per value in `[1, V]` (where `V` is the skeleton
//! size) and a bijection from the signed values onto the skeleton cells so
//! that every line sums to zero. Lines are the columns plus each row
//! restricted to each of the task's row bands, which lets one task model a
//! whole array set side by side.
//!
//! The search is depth-first over cells in a static most-constrained-line
//! order, assigning signed values with forward checking: a line with one
//! empty cell forces its value; fuller lines are pruned by remaining-support
//! bounds, parity feasibility and (for two empty cells) exact pair
//! existence. The global negation symmetry is broken by fixing the sign of
//! value 1. Find-first mode restarts with seeded value-order shuffles under
//! a growing node limit; a run that completes without a node-limit abort is
//! an exhaustive proof, so `Infeasible` is only ever reported from a
//! completed run and a timeout is always reported as `TimedOut`.

use crate::io::{FixtureCatalog, Meta};
use crate::verify::verify_heffter;
use crate::{Error, Grid, HeffterParams};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// A skeleton-completion task.
#[derive(Debug, Clone)]
pub struct SolveTask {
    pub rows: usize,
    pub cols: usize,
    /// Filled coordinates, 1-based.
    pub skeleton: Vec<(usize, usize)>,
    /// Inclusive 1-based column ranges partitioning `[1, cols]`; each row is
    /// a separate zero-sum line within each band.
    pub row_bands: Vec<(usize, usize)>,
    /// Expected filled-cell count per row line, if prescribed.
    pub row_fill: Option<usize>,
    /// Expected filled-cell count per column, if prescribed.
    pub col_fill: Option<usize>,
    pub seed: u64,
    pub budget: Option<Duration>,
    /// Fixed ascending value order, no restarts.
    pub exhaustive: bool,
    /// Restrict the largest value to row 1. Sound only for skeletons
    /// invariant under the diagonal translation `(i,j) -> (i+1, j+1)`.
    pub pin_max_first_row: bool,
}

impl SolveTask {
    pub fn new(rows: usize, cols: usize, skeleton: Vec<(usize, usize)>) -> Self {
        SolveTask {
            rows,
            cols,
            skeleton,
            row_bands: vec![(1, cols)],
            row_fill: None,
            col_fill: None,
            seed: 0,
            budget: None,
            exhaustive: false,
            pin_max_first_row: false,
        }
    }

    /// A totally filled frame.
    pub fn full(rows: usize, cols: usize) -> Self {
        let skeleton = (1..=rows)
            .flat_map(|r| (1..=cols).map(move |c| (r, c)))
            .collect();
        SolveTask::new(rows, cols, skeleton)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Found(Grid),
    /// The search space was exhausted without a solution; a proof within
    /// the fixed-support model, never returned on timeout.
    Infeasible,
    TimedOut,
}

/// Search statistics. `elapsed_ms` is wall time and is excluded from
/// determinism comparisons; `nodes` and `restarts` are reproducible for a
/// fixed task and seed.
#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub nodes: u64,
    pub restarts: u32,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub stats: SolveStats,
}

enum Dfs {
    Found,
    Exhausted,
    NodeLimit,
    Timeout,
}

/// Luby restart sequence: 1, 1, 2, 1, 1, 2, 4, ... Near-optimal for
/// heavy-tailed search-time distributions.
fn luby(mut i: u64) -> u64 {
    loop {
        let mut k = 1u32;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if (1u64 << k) - 1 == i {
            return 1u64 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

struct Engine {
    v_max: usize,
    cells: Vec<(usize, usize)>,
    cell_lines: Vec<[usize; 2]>,
    line_cells: Vec<Vec<usize>>,
    order: Vec<usize>,
    in_first_row: Vec<bool>,
    pin_max: bool,
    // search state
    assigned: Vec<Option<i64>>,
    line_rem: Vec<usize>,
    line_sum: Vec<i64>,
    used: Vec<bool>,
    odd_free: usize,
    even_free: usize,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
}

impl Engine {
    fn new(task: &SolveTask) -> Result<Self, Error> {
        let nbands = task.row_bands.len();
        let mut band_of_col = vec![usize::MAX; task.cols + 1];
        let mut covered = 0usize;
        for (bi, &(lo, hi)) in task.row_bands.iter().enumerate() {
            if lo < 1 || hi > task.cols || lo > hi {
                return Err(Error::Solver(format!("bad row band ({lo}, {hi})")));
            }
            for c in lo..=hi {
                if band_of_col[c] != usize::MAX {
                    return Err(Error::Solver(format!("row bands overlap at column {c}")));
                }
                band_of_col[c] = bi;
                covered += 1;
            }
        }
        if covered != task.cols {
            return Err(Error::Solver("row bands do not cover all columns".into()));
        }

        let n_lines = task.rows * nbands + task.cols;
        let mut line_cells = vec![Vec::new(); n_lines];
        let mut cell_lines = Vec::with_capacity(task.skeleton.len());
        let mut seen = vec![false; task.rows * task.cols];
        let mut in_first_row = Vec::with_capacity(task.skeleton.len());
        for (idx, &(r, c)) in task.skeleton.iter().enumerate() {
            if r < 1 || r > task.rows || c < 1 || c > task.cols {
                return Err(Error::Solver(format!("skeleton cell ({r},{c}) out of bounds")));
            }
            let flat = (r - 1) * task.cols + (c - 1);
            if seen[flat] {
                return Err(Error::Solver(format!("duplicate skeleton cell ({r},{c})")));
            }
            seen[flat] = true;
            let row_line = (r - 1) * nbands + band_of_col[c];
            let col_line = task.rows * nbands + (c - 1);
            line_cells[row_line].push(idx);
            line_cells[col_line].push(idx);
            cell_lines.push([row_line, col_line]);
            in_first_row.push(r == 1);
        }
        if task.skeleton.is_empty() {
            return Err(Error::Solver("empty skeleton".into()));
        }
        if let Some(rf) = task.row_fill {
            for (li, cells) in line_cells.iter().enumerate().take(task.rows * nbands) {
                if !cells.is_empty() && cells.len() != rf {
                    return Err(Error::Solver(format!(
                        "row line {li} has {} cells, prescribed {rf}",
                        cells.len()
                    )));
                }
            }
        }
        if let Some(cf) = task.col_fill {
            for (ci, cells) in line_cells.iter().skip(task.rows * nbands).enumerate() {
                if cells.len() != cf {
                    return Err(Error::Solver(format!(
                        "column {} has {} cells, prescribed {cf}",
                        ci + 1,
                        cells.len()
                    )));
                }
            }
        }

        let order = static_order(&line_cells, &cell_lines, task.skeleton.len());
        let v_max = task.skeleton.len();
        let line_rem: Vec<usize> = line_cells.iter().map(Vec::len).collect();
        Ok(Engine {
            v_max,
            cells: task.skeleton.clone(),
            cell_lines,
            line_cells,
            order,
            in_first_row,
            pin_max: task.pin_max_first_row,
            assigned: vec![None; v_max],
            line_rem,
            line_sum: vec![0; n_lines],
            used: vec![false; v_max + 1],
            odd_free: v_max.div_ceil(2),
            even_free: v_max / 2,
            nodes: 0,
            node_limit: None,
            deadline: None,
        })
    }

    fn place(&mut self, cell: usize, value: i64, trail: &mut Vec<usize>) -> bool {
        let abs = value.unsigned_abs() as usize;
        if abs == 0 || abs > self.v_max || self.used[abs] || self.assigned[cell].is_some() {
            return false;
        }
        if value == -1 {
            return false; // negation symmetry: value 1 is placed positive
        }
        if self.pin_max && abs == self.v_max && !self.in_first_row[cell] {
            return false;
        }
        self.assigned[cell] = Some(value);
        self.used[abs] = true;
        if abs % 2 == 1 {
            self.odd_free -= 1;
        } else {
            self.even_free -= 1;
        }
        for &line in &self.cell_lines[cell] {
            self.line_rem[line] -= 1;
            self.line_sum[line] += value;
        }
        trail.push(cell);
        true
    }

    fn undo(&mut self, trail: &[usize]) {
        for &cell in trail.iter().rev() {
            let value = self.assigned[cell].take().expect("trailed cell assigned");
            let abs = value.unsigned_abs() as usize;
            self.used[abs] = false;
            if abs % 2 == 1 {
                self.odd_free += 1;
            } else {
                self.even_free += 1;
            }
            for &line in &self.cell_lines[cell] {
                self.line_rem[line] += 1;
                self.line_sum[line] -= value;
            }
        }
    }

    /// Sum of the `r` largest unused values.
    fn top_sum(&self, r: usize) -> i64 {
        let mut total = 0i64;
        let mut left = r;
        for v in (1..=self.v_max).rev() {
            if !self.used[v] {
                total += v as i64;
                left -= 1;
                if left == 0 {
                    break;
                }
            }
        }
        total
    }

    /// Can some choice of `r` distinct unused values, signed freely, sum to
    /// `-sum`? Necessary checks only, exact for `r <= 2`.
    fn line_feasible(&self, line: usize) -> Feas {
        let rem = self.line_rem[line];
        let sum = self.line_sum[line];
        match rem {
            0 => {
                if sum == 0 {
                    Feas::Ok
                } else {
                    Feas::Fail
                }
            }
            1 => {
                let forced = -sum;
                let abs = forced.unsigned_abs() as usize;
                if abs == 0 || abs > self.v_max || self.used[abs] {
                    return Feas::Fail;
                }
                let cell = self.line_cells[line]
                    .iter()
                    .copied()
                    .find(|&c| self.assigned[c].is_none())
                    .expect("one empty cell");
                Feas::Forced(cell, forced)
            }
            r => {
                let need = sum.unsigned_abs() as i64;
                if need > self.top_sum(r) {
                    return Feas::Fail;
                }
                // parity: the signed sum has the parity of the chosen values
                let lo = r.saturating_sub(self.even_free);
                let hi = r.min(self.odd_free);
                if lo > hi {
                    return Feas::Fail;
                }
                if lo == hi && (lo % 2) as i64 != (sum.rem_euclid(2)) {
                    return Feas::Fail;
                }
                if r == 2 && !self.pair_exists(need as usize) {
                    return Feas::Fail;
                }
                Feas::Ok
            }
        }
    }

    /// Two distinct unused values with `a + b = t` or `a - b = t`.
    fn pair_exists(&self, t: usize) -> bool {
        if t == 0 {
            return false; // a = b is never allowed
        }
        if t < 2 * self.v_max {
            for a in 1..=(t - 1) / 2 {
                let b = t - a;
                if b <= self.v_max && !self.used[a] && !self.used[b] {
                    return true;
                }
            }
        }
        for b in 1..=self.v_max.saturating_sub(t) {
            if !self.used[b] && !self.used[b + t] {
                return true;
            }
        }
        false
    }

    /// Assigns `value` to `cell` and propagates forced completions; on
    /// failure the caller must undo the partial trail.
    fn try_assign(&mut self, cell: usize, value: i64, trail: &mut Vec<usize>) -> bool {
        let start = trail.len();
        if !self.place(cell, value, trail) {
            return false;
        }
        let mut qi = start;
        while qi < trail.len() {
            let c = trail[qi];
            qi += 1;
            for li in 0..2 {
                let line = self.cell_lines[c][li];
                match self.line_feasible(line) {
                    Feas::Fail => return false,
                    Feas::Forced(fc, fv) => {
                        if !self.place(fc, fv, trail) {
                            return false;
                        }
                    }
                    Feas::Ok => {}
                }
            }
        }
        true
    }

    fn over_limits(&self) -> Option<Dfs> {
        if let Some(limit) = self.node_limit {
            if self.nodes >= limit {
                return Some(Dfs::NodeLimit);
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Some(Dfs::Timeout);
                }
            }
        }
        None
    }

    fn dfs(&mut self, from: usize, value_order: &[usize]) -> Dfs {
        let mut pos = from;
        while pos < self.order.len() && self.assigned[self.order[pos]].is_some() {
            pos += 1;
        }
        if pos == self.order.len() {
            return Dfs::Found;
        }
        let cell = self.order[pos];
        let [row_line, col_line] = self.cell_lines[cell];
        let lean = self.line_sum[row_line] + self.line_sum[col_line];
        for &v in value_order {
            if self.used[v] {
                continue;
            }
            if self.pin_max && v == self.v_max && !self.in_first_row[cell] {
                continue;
            }
            let signs: [i64; 2] = if lean > 0 { [-1, 1] } else { [1, -1] };
            for sign in signs {
                let value = sign * v as i64;
                if value == -1 {
                    continue;
                }
                self.nodes += 1;
                if let Some(stop) = self.over_limits() {
                    return stop;
                }
                let mut trail = Vec::new();
                if self.try_assign(cell, value, &mut trail) {
                    match self.dfs(pos + 1, value_order) {
                        Dfs::Found => return Dfs::Found,
                        Dfs::Exhausted => self.undo(&trail),
                        stop => {
                            self.undo(&trail);
                            return stop;
                        }
                    }
                } else {
                    self.undo(&trail);
                }
            }
        }
        Dfs::Exhausted
    }

    fn extract(&self, rows: usize, cols: usize) -> Result<Grid, Error> {
        let mut g = Grid::new(rows, cols)?;
        for (idx, &(r, c)) in self.cells.iter().enumerate() {
            let v = self.assigned[idx]
                .ok_or_else(|| Error::Internal("unassigned cell in solution".into()))?;
            g.set(r, c, v)?;
        }
        Ok(g)
    }
}

enum Feas {
    Ok,
    Fail,
    Forced(usize, i64),
}

/// Static cell order: repeatedly take a cell from the line with the fewest
/// unordered cells, preferring the cell whose crossing line is fullest.
/// Completing lines early maximizes forced assignments at search time.
fn static_order(
    line_cells: &[Vec<usize>],
    cell_lines: &[[usize; 2]],
    n_cells: usize,
) -> Vec<usize> {
    let mut remaining: Vec<usize> = line_cells.iter().map(Vec::len).collect();
    let mut placed = vec![false; n_cells];
    let mut order = Vec::with_capacity(n_cells);
    for _ in 0..n_cells {
        let line = (0..line_cells.len())
            .filter(|&l| remaining[l] > 0)
            .min_by_key(|&l| (remaining[l], l))
            .expect("cells remain");
        let cell = line_cells[line]
            .iter()
            .copied()
            .filter(|&c| !placed[c])
            .min_by_key(|&c| {
                let other = if cell_lines[c][0] == line {
                    cell_lines[c][1]
                } else {
                    cell_lines[c][0]
                };
                (remaining[other], c)
            })
            .expect("line has unplaced cell");
        placed[cell] = true;
        order.push(cell);
        for &l in &cell_lines[cell] {
            remaining[l] -= 1;
        }
    }
    order
}

/// Runs the search. `Found` grids always pass the corresponding line and
/// support checks; `Infeasible` is an exhaustion proof within the model.
pub fn solve(task: &SolveTask) -> Result<SolveOutcome, Error> {
    let started = Instant::now();
    let mut engine = Engine::new(task)?;
    engine.deadline = task.budget.map(|b| started + b);

    let v_max = engine.v_max;
    let ascending: Vec<usize> = (1..=v_max).collect();
    let descending: Vec<usize> = (1..=v_max).rev().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(task.seed);
    let mut restarts = 0u32;
    let mut order: Vec<usize>;

    let status = loop {
        let value_order: &[usize] = if task.exhaustive {
            &ascending
        } else if restarts == 0 {
            &descending
        } else {
            order = descending.clone();
            order.shuffle(&mut rng);
            &order
        };
        engine.node_limit = if task.exhaustive {
            None
        } else {
            Some(engine.nodes + 50_000 * luby(restarts as u64 + 1))
        };
        match engine.dfs(0, value_order) {
            Dfs::Found => {
                let grid = engine.extract(task.rows, task.cols)?;
                break SolveStatus::Found(grid);
            }
            Dfs::Exhausted => break SolveStatus::Infeasible,
            Dfs::Timeout => break SolveStatus::TimedOut,
            Dfs::NodeLimit => {
                restarts += 1;
                continue;
            }
        }
    };
    Ok(SolveOutcome {
        status,
        stats: SolveStats {
            nodes: engine.nodes,
            restarts,
            elapsed_ms: started.elapsed().as_millis(),
        },
    })
}

/// The fixed cyclic-diagonal skeleton of the five-per-line base squares:
/// cells `(i, j)` with `(j - i) mod order` in `{0, 1, 2, order/2,
/// order/2 + 1}`.
pub fn base_skeleton(order: usize) -> Vec<(usize, usize)> {
    let half = order / 2;
    let residues = [0, 1, 2, half, half + 1];
    let mut cells = Vec::with_capacity(5 * order);
    for i in 1..=order {
        for j in 1..=order {
            let diff = (j as i64 - i as i64).rem_euclid(order as i64) as usize;
            if residues.contains(&diff) {
                cells.push((i, j));
            }
        }
    }
    cells
}

/// The search task for a five-per-line base square of the given order
/// (a multiple of 4, at least 8).
pub fn base_array_task(order: usize, seed: u64, budget: Option<Duration>) -> Result<SolveTask, Error> {
    if order < 8 || order % 4 != 0 {
        return Err(Error::Solver(format!(
            "base order {order} must be a multiple of 4, at least 8"
        )));
    }
    let mut task = SolveTask::new(order, order, base_skeleton(order));
    task.row_fill = Some(5);
    task.col_fill = Some(5);
    task.seed = seed;
    task.budget = budget;
    // the skeleton is invariant under (i,j) -> (i+1, j+1)
    task.pin_max_first_row = true;
    Ok(task)
}

fn base_params(order: usize) -> HeffterParams {
    HeffterParams::new(order, order, 5, 5).expect("small positive parameters")
}

/// Checks a candidate base square: correct size, exactly the cyclic-diagonal
/// skeleton, and valid as a five-per-line array.
pub fn check_base(grid: &Grid, order: usize) -> Result<(), Error> {
    if (grid.rows(), grid.cols()) != (order, order) {
        return Err(Error::InvalidBase(format!(
            "expected {order}x{order}, got {}x{}",
            grid.rows(),
            grid.cols()
        )));
    }
    let expected = base_skeleton(order);
    if grid.skeleton() != expected {
        let got: std::collections::BTreeSet<_> = grid.skeleton().into_iter().collect();
        let want: std::collections::BTreeSet<_> = expected.into_iter().collect();
        let (r, c) = *got
            .symmetric_difference(&want)
            .next()
            .expect("sets differ");
        return Err(Error::SkeletonMismatch(r, c));
    }
    let report = verify_heffter(grid, &base_params(order));
    if !report.valid {
        return Err(Error::InvalidBase(report.violations[0].to_string()));
    }
    Ok(())
}

/// Fetches or searches for a base five-per-line square of the given order:
/// fixture catalog first, then an exact search within the budget.
pub fn base_array(
    order: usize,
    catalog: Option<&FixtureCatalog>,
    budget: Duration,
    seed: u64,
) -> Result<Grid, Error> {
    if let Some(catalog) = catalog {
        if let Some((grids, _)) = catalog.load(&FixtureCatalog::base_key(order))? {
            if grids.len() != 1 {
                return Err(Error::InvalidBase("fixture must hold one grid".into()));
            }
            check_base(&grids[0], order)?;
            return Ok(grids[0].clone());
        }
    }
    let task = base_array_task(order, seed, Some(budget))?;
    let outcome = solve(&task)?;
    match outcome.status {
        SolveStatus::Found(grid) => {
            check_base(&grid, order)?;
            Ok(grid)
        }
        SolveStatus::Infeasible => Err(Error::BaseUnavailable {
            order,
            reason: "search space exhausted".into(),
        }),
        SolveStatus::TimedOut => Err(Error::BaseUnavailable {
            order,
            reason: format!(
                "search timed out after {} nodes, {} restarts",
                outcome.stats.nodes, outcome.stats.restarts
            ),
        }),
    }
}

/// A caching base-array source configured with a fixture directory, budget
/// and seed.
#[derive(Debug)]
pub struct BaseProvider {
    catalog: Option<FixtureCatalog>,
    budget: Duration,
    seed: u64,
    cache: Mutex<std::collections::BTreeMap<usize, Grid>>,
}

impl BaseProvider {
    pub fn new(fixtures_dir: Option<PathBuf>, budget: Duration, seed: u64) -> Self {
        BaseProvider {
            catalog: fixtures_dir.map(FixtureCatalog::new),
            budget,
            seed,
            cache: Mutex::new(std::collections::BTreeMap::new()),
        }
    }

    pub fn base(&self, order: usize) -> Result<Grid, Error> {
        if let Some(hit) = self.cache.lock().expect("lock").get(&order) {
            return Ok(hit.clone());
        }
        let grid = base_array(order, self.catalog.as_ref(), self.budget, self.seed)?;
        self.cache
            .lock()
            .expect("lock")
            .insert(order, grid.clone());
        Ok(grid)
    }
}

/// Splits a wide multi-band grid into its per-band grids.
pub fn split_bands(grid: &Grid, band_width: usize) -> Result<Vec<Grid>, Error> {
    if band_width == 0 || grid.cols() % band_width != 0 {
        return Err(Error::Solver(format!(
            "width {} not a multiple of band width {band_width}",
            grid.cols()
        )));
    }
    let count = grid.cols() / band_width;
    let mut out = vec![Grid::new(grid.rows(), band_width)?; count];
    for (r, c, v) in grid.iter() {
        let band = (c - 1) / band_width;
        out[band].set(r, (c - 1) % band_width + 1, v)?;
    }
    Ok(out)
}

/// Searches for a totally filled set `IHS(m, n; c)` in the open ranges
/// `n = 3` or `n = 5` with odd `m` coprime to `n`. Found sets are exported
/// to the fixture catalog when one is given.
pub fn probe_open(
    m: usize,
    n: usize,
    c: usize,
    budget: Option<Duration>,
    seed: u64,
    catalog: Option<&FixtureCatalog>,
) -> Result<SolveOutcome, Error> {
    if c == 0 {
        return Err(Error::NonPositiveDimension(0));
    }
    match n {
        3 => {
            if m < 3 || m % 2 == 0 || crate::params::gcd(m, 3) != 1 || !matches!((m * c) % 4, 0 | 1)
            {
                return Err(Error::Inadmissible(format!(
                    "probe needs odd m >= 3 coprime to 3 with mc = 0, 1 (mod 4); got m = {m}, c = {c}"
                )));
            }
        }
        5 => {
            if m < 5 || m % 2 == 0 || crate::params::gcd(m, 5) != 1 || !matches!((m * c) % 4, 0 | 3)
            {
                return Err(Error::Inadmissible(format!(
                    "probe needs odd m >= 5 coprime to 5 with mc = 0, 3 (mod 4); got m = {m}, c = {c}"
                )));
            }
        }
        _ => {
            return Err(Error::Inadmissible(format!(
                "probe covers n = 3 or n = 5 only, got {n}"
            )))
        }
    }
    let mut task = SolveTask::full(m, n * c);
    task.row_bands = (0..c).map(|i| (i * n + 1, (i + 1) * n)).collect();
    task.seed = seed;
    task.budget = budget;
    let outcome = solve(&task)?;
    if let SolveStatus::Found(wide) = &outcome.status {
        let blocks = split_bands(wide, n)?;
        let p = crate::IhsParams::new(m, n, c)?;
        let report = crate::verify::verify_ihs(&blocks, &p);
        if !report.valid {
            return Err(Error::Internal(format!(
                "probe solution fails verification: {}",
                report.violations[0]
            )));
        }
        if let Some(catalog) = catalog {
            let meta = Meta {
                ihs: Some(p),
                route: Some("exact search".into()),
                seed: Some(seed),
                ..Meta::default()
            };
            catalog.store(&format!("probe-ihs-{m}x{n}x{c}"), &blocks, &meta)?;
        }
    }
    Ok(outcome)
}
