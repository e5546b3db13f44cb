//! Assembly of complete integer Heffter array sets.
//!
//! Four constructions cover the cases this crate builds directly:
//!
//! * [`build_n3mod4`]: `m = 2 (mod 4)`, `n = 3 (mod 4)`, `n >= 7`, `c` even.
//!   Each array stacks 2x3 blocks down the first three columns and tiles the
//!   rest with 6x4 and 4x4 zero-sum blocks fed by an interval partition.
//! * [`build_n1mod4`]: `m = 2 (mod 4)`, `n = 1 (mod 4)`, `n >= 9`, `c` even.
//!   Same column stack, plus a 6x6 block and transposed 6x4 blocks.
//! * [`build_even_even`]: `m, n` even. A totally filled shiftable base array
//!   with support `[1, mn]` and its shifts by `mn, 2mn, ...`.
//! * [`build_stacked_n5`]: `m = 0 (mod 4)`, `n = 5`. Vertical stacking of
//!   the 4x5 family.
//!
//! [`build_ihs`] dispatches among them (trying both orientations) and tags
//! everything else inadmissible or unsupported.

use crate::blocks::{self, BlockFamilySpec, IntervalSet};
use crate::{Error, Grid, IhsParams, Outcome};

/// Which congruence case of the two-column-stack assembly applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackVariant {
    /// `n = 3 (mod 4)`, `n >= 7`.
    N3Mod4,
    /// `n = 1 (mod 4)`, `n >= 9`.
    N1Mod4,
}

/// The interval decomposition feeding one two-column-stack assembly.
///
/// `m1`, `m2`, `m3` are the leftover ranges once the 2x3 families have taken
/// their support; `f`/`g`/`h`/`j` list the carved pieces in the exact order
/// the template constructions consume them.
#[derive(Debug, Clone)]
pub struct PartitionPlan {
    pub m1: IntervalSet,
    pub m2: Option<IntervalSet>,
    pub m3: IntervalSet,
    /// 4-sets of type 2.
    pub f: Vec<IntervalSet>,
    /// 4-sets of type 1.
    pub g: Vec<IntervalSet>,
    /// 8-sets of type 1.
    pub h: Vec<IntervalSet>,
    /// 8-sets of type 2.
    pub j: Vec<IntervalSet>,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub delta: usize,
}

/// Sequential carver over a consecutive integer range.
struct RangeCarver {
    next: i64,
    end: i64,
}

impl RangeCarver {
    fn new(start: i64, end: i64) -> Self {
        RangeCarver { next: start, end }
    }

    fn remaining(&self) -> usize {
        (self.end - self.next + 1).max(0) as usize
    }

    fn take(&mut self, len: usize) -> Result<IntervalSet, Error> {
        if self.remaining() < len {
            return Err(Error::PartitionInfeasible(format!(
                "range [{}, {}] exhausted: asked for {len}, {} left",
                self.next,
                self.end,
                self.remaining()
            )));
        }
        let s = IntervalSet::new(self.next, len, 1)?;
        self.next += len as i64;
        Ok(s)
    }
}

/// Sequential carver over a step-2 arithmetic progression.
struct ApCarver {
    next: i64,
    end: i64,
}

impl ApCarver {
    fn new(start: i64, end: i64) -> Self {
        ApCarver { next: start, end }
    }

    fn remaining(&self) -> usize {
        if self.next > self.end {
            0
        } else {
            ((self.end - self.next) / 2 + 1) as usize
        }
    }

    fn take(&mut self, len: usize) -> Result<IntervalSet, Error> {
        if self.remaining() < len {
            return Err(Error::PartitionInfeasible(format!(
                "progression [{}, {}]_2 exhausted: asked for {len}, {} left",
                self.next,
                self.end,
                self.remaining()
            )));
        }
        let s = IntervalSet::new(self.next, len, 2)?;
        self.next += 2 * len as i64;
        Ok(s)
    }
}

struct CaseDims {
    v: usize,
    w: usize,
    t: usize,
}

fn case_dims(p: &IhsParams, variant: StackVariant) -> Result<CaseDims, Error> {
    if let Some(reason) = p.admissibility_failure() {
        return Err(Error::Inadmissible(reason));
    }
    if p.m % 4 != 2 || p.m < 6 {
        return Err(Error::WrongCase(format!(
            "m = {} must be 2 (mod 4) and at least 6",
            p.m
        )));
    }
    if p.c % 2 != 0 {
        return Err(Error::WrongCase(format!("c = {} must be even", p.c)));
    }
    let w = match variant {
        StackVariant::N3Mod4 => {
            if p.n % 4 != 3 || p.n < 7 {
                return Err(Error::WrongCase(format!(
                    "n = {} must be 3 (mod 4) and at least 7",
                    p.n
                )));
            }
            (p.n - 7) / 4
        }
        StackVariant::N1Mod4 => {
            if p.n % 4 != 1 || p.n < 9 {
                return Err(Error::WrongCase(format!(
                    "n = {} must be 1 (mod 4) and at least 9",
                    p.n
                )));
            }
            (p.n - 9) / 4
        }
    };
    Ok(CaseDims {
        v: (p.m - 6) / 4,
        w,
        t: (p.c - 2) / 2,
    })
}

/// The 2x3 family parameters shared by both stack variants.
fn family_specs(dims: &CaseDims) -> (BlockFamilySpec, BlockFamilySpec) {
    let (v, t1) = (dims.v as i64, dims.t as i64 + 1);
    let a = BlockFamilySpec {
        alpha: 8 * (t1 - 1) + 9,
        beta: 8 * (3 * v + 4) * t1,
        u: (4 * (v + 1) * t1) as usize,
    };
    let b = BlockFamilySpec {
        alpha: 1,
        beta: 4 * (6 * v + 9) * t1,
        u: t1 as usize,
    };
    (a, b)
}

/// Computes the carved interval partition for the given stack variant.
///
/// Pieces are listed in consumption order: templates are built in a fixed
/// order (6x4 blocks, then 4x4 blocks for the `n = 3` case; 6x6, 6x4, 4x4
/// for the `n = 1` case) and each piece is carved on demand from the low end
/// of its source range, which pins the whole decomposition.
pub fn plan_partition(p: &IhsParams, variant: StackVariant) -> Result<PartitionPlan, Error> {
    let dims = case_dims(p, variant)?;
    let (v, w, t1) = (dims.v as i64, dims.w as i64, dims.t as i64 + 1);
    let mnc = p.cells() as i64;

    let m1_end = 16 * v * t1 + 24 * t1; // = 16v(t+1) + 24t + 24
    let m1 = IntervalSet::new(2, (m1_end / 2) as usize, 2)?;
    let (m2_start, m2_end, m3_start) = match variant {
        StackVariant::N3Mod4 => {
            let m2s = 32 * v * t1 + 48 * t1 + 1;
            let m2e = (40 * v + 16 * w) * t1 + 48 * t1;
            (m2s, m2e, m2e + 1)
        }
        StackVariant::N1Mod4 => {
            let m2s = 32 * v * t1 + 48 * t1 + 1;
            let m2e = 32 * v * t1 + 72 * t1;
            (m2s, m2e, m2e + 1)
        }
    };
    let m2 = if m2_end >= m2_start {
        Some(IntervalSet::new(
            m2_start,
            (m2_end - m2_start + 1) as usize,
            1,
        )?)
    } else {
        None
    };
    let m3 = IntervalSet::new(m3_start, (mnc - m3_start + 1) as usize, 1)?;

    // Type-2 pieces come from M1 and from the odd/even sub-progressions of
    // M2 (an empty M2 leaves both sub-progressions empty).
    let mut m1_carver = ApCarver::new(2, m1_end);
    let mut m2_odds = ApCarver::new(m2_start | 1, m2_end);
    let mut m2_evens = ApCarver::new(m2_start + (m2_start % 2), m2_end);

    let mut f = Vec::new();
    let mut j = Vec::new();
    let (alpha, beta, gamma, delta);
    match variant {
        StackVariant::N3Mod4 => {
            alpha = ((4 * v + 4 * w + 3) * t1) as usize;
            beta = ((8 * v * w + 4 * v + 8 * w + 7) * t1) as usize;
            gamma = t1 as usize;
            delta = 0;
            while m1_carver.remaining() >= 4 {
                f.push(m1_carver.take(4)?);
            }
            while m2_odds.remaining() >= 4 {
                f.push(m2_odds.take(4)?);
            }
            while m2_evens.remaining() >= 4 {
                f.push(m2_evens.take(4)?);
            }
        }
        StackVariant::N1Mod4 => {
            alpha = ((2 * v + 3) * t1) as usize;
            beta = ((8 * v * w + 10 * v + 12 * w + 3) * t1) as usize;
            gamma = (3 * t1) as usize;
            delta = (3 * t1) as usize;
            // 8-sets first, from the low end of each sub-progression; when
            // 3(t+1) is odd the last one spills over to the low end of M1.
            while j.len() < delta && m2_odds.remaining() >= 8 {
                j.push(m2_odds.take(8)?);
            }
            while j.len() < delta && m2_evens.remaining() >= 8 {
                j.push(m2_evens.take(8)?);
            }
            while j.len() < delta {
                j.push(m1_carver.take(8)?);
            }
            while m1_carver.remaining() >= 4 {
                f.push(m1_carver.take(4)?);
            }
            while m2_odds.remaining() >= 4 {
                f.push(m2_odds.take(4)?);
            }
            while m2_evens.remaining() >= 4 {
                f.push(m2_evens.take(4)?);
            }
        }
    }
    for (carver, name) in [(&m1_carver, "M1"), (&m2_odds, "M2 odd"), (&m2_evens, "M2 even")] {
        if carver.remaining() != 0 {
            return Err(Error::PartitionInfeasible(format!(
                "{name} not exhausted: {} elements left",
                carver.remaining()
            )));
        }
    }
    if f.len() != alpha || j.len() != delta {
        return Err(Error::PartitionInfeasible(format!(
            "type-2 piece counts: got {} four-sets and {} eight-sets, expected {alpha} and {delta}",
            f.len(),
            j.len()
        )));
    }

    // Type-1 pieces are carved from M3 in template-consumption order.
    let mut m3_carver = RangeCarver::new(m3_start, mnc);
    let mut g = Vec::new();
    let mut h = Vec::new();
    match variant {
        StackVariant::N3Mod4 => {
            for _ in 0..(2 * w + 1) * t1 {
                for _ in 0..4 {
                    g.push(m3_carver.take(4)?); // 6x4 block on two F and four G
                }
            }
            for _ in 0..t1 {
                for _ in 0..3 {
                    g.push(m3_carver.take(4)?); // 6x4 block on one F, three G, one H
                }
                h.push(m3_carver.take(8)?);
            }
            for _ in 0..v * (2 * w + 1) * t1 {
                for _ in 0..4 {
                    g.push(m3_carver.take(4)?); // 4x4 block on four G
                }
            }
        }
        StackVariant::N1Mod4 => {
            for _ in 0..t1 {
                for _ in 0..3 {
                    g.push(m3_carver.take(4)?); // 6x6 block on three G, three H
                }
                for _ in 0..3 {
                    h.push(m3_carver.take(8)?);
                }
            }
            for _ in 0..v * t1 {
                for _ in 0..4 {
                    g.push(m3_carver.take(4)?);
                }
            }
            for _ in 0..(v + 2 * w) * t1 {
                for _ in 0..6 {
                    g.push(m3_carver.take(4)?);
                }
            }
            for _ in 0..2 * v * w * t1 {
                for _ in 0..4 {
                    g.push(m3_carver.take(4)?);
                }
            }
        }
    }
    if m3_carver.remaining() != 0 {
        return Err(Error::PartitionInfeasible(format!(
            "M3 not exhausted: {} elements left",
            m3_carver.remaining()
        )));
    }
    if g.len() != beta || h.len() != gamma {
        return Err(Error::PartitionInfeasible(format!(
            "type-1 piece counts: got {} four-sets and {} eight-sets, expected {beta} and {gamma}",
            g.len(),
            h.len()
        )));
    }

    Ok(PartitionPlan {
        m1,
        m2,
        m3,
        f,
        g,
        h,
        j,
        alpha,
        beta,
        gamma,
        delta,
    })
}

/// What occupies one block position of an assembled array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// 2x3 family-b block, as is.
    StackB,
    /// 2x3 family-a block, negated.
    StackANeg,
    /// 2x3 family-a block, as is.
    StackAPos,
    /// 6x4 zero-sum block.
    Z6,
    /// 6x4 zero-sum block placed transposed (4 rows by 6 columns).
    Z6Transposed,
    /// 4x4 zero-sum block.
    Z4,
    /// 6x6 zero-sum block.
    W,
}

impl Slot {
    fn area(&self) -> usize {
        match self {
            Slot::StackB | Slot::StackANeg | Slot::StackAPos => 6,
            Slot::Z6 | Slot::Z6Transposed => 24,
            Slot::Z4 => 16,
            Slot::W => 36,
        }
    }
}

/// Per-array placement map: each slot's kind and top-left cell, in block
/// consumption order. The same plan is applied to every array of the set.
#[derive(Debug, Clone)]
pub struct LayoutPlan {
    pub rows: usize,
    pub cols: usize,
    pub placements: Vec<(Slot, usize, usize)>,
}

impl LayoutPlan {
    /// The column-stack-plus-tiles frame of both variants: the first three
    /// columns stack 2x3 blocks (one positive family-b, then negated and
    /// alternating family-a blocks); the remaining columns tile with 6x4,
    /// 4x4 and (for the `n = 1 (mod 4)` case) 6x6 and transposed 6x4
    /// blocks.
    pub fn for_variant(p: &IhsParams, variant: StackVariant) -> Result<Self, Error> {
        let dims = case_dims(p, variant)?;
        let (v, w) = (dims.v, dims.w);
        let mut placements = vec![
            (Slot::StackB, 1, 1),
            (Slot::StackANeg, 3, 1),
            (Slot::StackANeg, 5, 1),
        ];
        for band in 0..v {
            placements.push((Slot::StackAPos, 7 + 4 * band, 1));
            placements.push((Slot::StackANeg, 9 + 4 * band, 1));
        }
        match variant {
            StackVariant::N3Mod4 => {
                for slot in 0..=w {
                    placements.push((Slot::Z6, 1, 4 + 4 * slot));
                }
                for band in 0..v {
                    for slot in 0..=w {
                        placements.push((Slot::Z4, 7 + 4 * band, 4 + 4 * slot));
                    }
                }
            }
            StackVariant::N1Mod4 => {
                placements.push((Slot::W, 1, 4));
                for slot in 0..w {
                    placements.push((Slot::Z6, 1, 10 + 4 * slot));
                }
                for band in 0..v {
                    placements.push((Slot::Z6Transposed, 7 + 4 * band, 4));
                }
                for band in 0..v {
                    for slot in 0..w {
                        placements.push((Slot::Z4, 7 + 4 * band, 10 + 4 * slot));
                    }
                }
            }
        }
        let plan = LayoutPlan {
            rows: p.m,
            cols: p.n,
            placements,
        };
        let area: usize = plan.placements.iter().map(|(s, _, _)| s.area()).sum();
        if area != p.m * p.n {
            return Err(Error::Internal(format!(
                "layout covers {area} cells of a {}-cell frame",
                p.m * p.n
            )));
        }
        Ok(plan)
    }
}

/// Pops pieces off the plan queues in order.
struct PieceFeed<'a> {
    f: std::slice::Iter<'a, IntervalSet>,
    g: std::slice::Iter<'a, IntervalSet>,
    h: std::slice::Iter<'a, IntervalSet>,
    j: std::slice::Iter<'a, IntervalSet>,
}

impl<'a> PieceFeed<'a> {
    fn new(plan: &'a PartitionPlan) -> Self {
        PieceFeed {
            f: plan.f.iter(),
            g: plan.g.iter(),
            h: plan.h.iter(),
            j: plan.j.iter(),
        }
    }

    fn f(&mut self) -> Result<&'a IntervalSet, Error> {
        self.f
            .next()
            .ok_or_else(|| Error::PartitionInfeasible("out of 4-sets of type 2".into()))
    }

    fn g(&mut self) -> Result<&'a IntervalSet, Error> {
        self.g
            .next()
            .ok_or_else(|| Error::PartitionInfeasible("out of 4-sets of type 1".into()))
    }

    fn h(&mut self) -> Result<&'a IntervalSet, Error> {
        self.h
            .next()
            .ok_or_else(|| Error::PartitionInfeasible("out of 8-sets of type 1".into()))
    }

    fn j(&mut self) -> Result<&'a IntervalSet, Error> {
        self.j
            .next()
            .ok_or_else(|| Error::PartitionInfeasible("out of 8-sets of type 2".into()))
    }

    fn assert_drained(&mut self) -> Result<(), Error> {
        if self.f.next().is_some()
            || self.g.next().is_some()
            || self.h.next().is_some()
            || self.j.next().is_some()
        {
            return Err(Error::Internal("partition pieces left unconsumed".into()));
        }
        Ok(())
    }
}

/// Applies the layout to every array of the set, consuming each block queue
/// in order; every slot takes a fresh block.
fn assemble(
    p: &IhsParams,
    layout: &LayoutPlan,
    blocks: AssemblyBlocks,
) -> Result<Vec<Grid>, Error> {
    fn next(q: &mut std::vec::IntoIter<Grid>, what: &str) -> Result<Grid, Error> {
        q.next()
            .ok_or_else(|| Error::Internal(format!("out of {what} blocks")))
    }
    let mut a = blocks.family_a.into_iter();
    let mut b = blocks.family_b.into_iter();
    let mut z6 = blocks.z6.into_iter();
    let mut z4 = blocks.z4.into_iter();
    let mut w = blocks.w.into_iter();
    let mut arrays = Vec::with_capacity(p.c);
    for _ in 0..p.c {
        let mut grid = Grid::new(layout.rows, layout.cols)?;
        for &(slot, r, c) in &layout.placements {
            let block = match slot {
                Slot::StackB => next(&mut b, "family-b")?,
                Slot::StackANeg => next(&mut a, "family-a")?.negate(),
                Slot::StackAPos => next(&mut a, "family-a")?,
                Slot::Z6 => next(&mut z6, "6x4")?,
                Slot::Z6Transposed => next(&mut z6, "6x4")?.transpose(),
                Slot::Z4 => next(&mut z4, "4x4")?,
                Slot::W => next(&mut w, "6x6")?,
            };
            grid.place(&block, r, c)?;
        }
        arrays.push(grid);
    }
    if a.len() + b.len() + z6.len() + z4.len() + w.len() != 0 {
        return Err(Error::Internal("blocks left over after assembly".into()));
    }
    Ok(arrays)
}

#[derive(Default)]
struct AssemblyBlocks {
    family_a: Vec<Grid>,
    family_b: Vec<Grid>,
    z6: Vec<Grid>,
    z4: Vec<Grid>,
    w: Vec<Grid>,
}

/// Integer Heffter array set for `m = 2 (mod 4)`, `n = 3 (mod 4)`, `n >= 7`
/// and even `c`.
pub fn build_n3mod4(p: &IhsParams) -> Result<Vec<Grid>, Error> {
    let dims = case_dims(p, StackVariant::N3Mod4)?;
    let (v, w, t1) = (dims.v, dims.w, dims.t + 1);
    let (spec_a, spec_b) = family_specs(&dims);
    let a_blocks = blocks::family_a(&spec_a)?;
    let b_blocks = blocks::family_b(&spec_b)?;
    let plan = plan_partition(p, StackVariant::N3Mod4)?;
    let mut feed = PieceFeed::new(&plan);

    let mut z6 = Vec::new();
    for _ in 0..(2 * w + 1) * t1 {
        z6.push(blocks::q1(
            feed.f()?,
            feed.f()?,
            feed.g()?,
            feed.g()?,
            feed.g()?,
            feed.g()?,
        )?);
    }
    for _ in 0..t1 {
        z6.push(blocks::q2(
            feed.f()?,
            feed.g()?,
            feed.g()?,
            feed.g()?,
            feed.h()?,
        )?);
    }
    let mut z4 = Vec::new();
    for _ in 0..v * t1 {
        z4.push(blocks::p1(feed.f()?, feed.f()?, feed.f()?, feed.f()?)?);
    }
    for _ in 0..v * (2 * w + 1) * t1 {
        z4.push(blocks::p2(feed.g()?, feed.g()?, feed.g()?, feed.g()?)?);
    }
    feed.assert_drained()?;

    let layout = LayoutPlan::for_variant(p, StackVariant::N3Mod4)?;
    assemble(
        p,
        &layout,
        AssemblyBlocks {
            family_a: a_blocks,
            family_b: b_blocks,
            z6,
            z4,
            ..AssemblyBlocks::default()
        },
    )
}

/// Integer Heffter array set for `m = 2 (mod 4)`, `n = 1 (mod 4)`, `n >= 9`
/// and even `c`.
pub fn build_n1mod4(p: &IhsParams) -> Result<Vec<Grid>, Error> {
    let dims = case_dims(p, StackVariant::N1Mod4)?;
    let (v, w, t1) = (dims.v, dims.w, dims.t + 1);
    let (spec_a, spec_b) = family_specs(&dims);
    let a_blocks = blocks::family_a(&spec_a)?;
    let b_blocks = blocks::family_b(&spec_b)?;
    let plan = plan_partition(p, StackVariant::N1Mod4)?;
    let mut feed = PieceFeed::new(&plan);

    let mut w_blocks = Vec::new();
    for _ in 0..t1 {
        w_blocks.push(blocks::r1(
            feed.f()?,
            feed.f()?,
            feed.f()?,
            feed.j()?,
            feed.j()?,
            feed.j()?,
        )?);
    }
    for _ in 0..t1 {
        w_blocks.push(blocks::r2(
            feed.g()?,
            feed.g()?,
            feed.g()?,
            feed.h()?,
            feed.h()?,
            feed.h()?,
        )?);
    }
    let mut z6 = Vec::new();
    for _ in 0..v * t1 {
        z6.push(blocks::q1(
            feed.f()?,
            feed.f()?,
            feed.g()?,
            feed.g()?,
            feed.g()?,
            feed.g()?,
        )?);
    }
    for _ in 0..(v + 2 * w) * t1 {
        z6.push(blocks::q3(
            feed.g()?,
            feed.g()?,
            feed.g()?,
            feed.g()?,
            feed.g()?,
            feed.g()?,
        )?);
    }
    let mut z4 = Vec::new();
    for _ in 0..2 * v * w * t1 {
        z4.push(blocks::p2(feed.g()?, feed.g()?, feed.g()?, feed.g()?)?);
    }
    feed.assert_drained()?;

    let layout = LayoutPlan::for_variant(p, StackVariant::N1Mod4)?;
    assemble(
        p,
        &layout,
        AssemblyBlocks {
            family_a: a_blocks,
            family_b: b_blocks,
            z6,
            z4,
            w: w_blocks,
        },
    )
}

/// A totally filled shiftable zero-sum `m x n` array with support `[1, mn]`,
/// for even `m, n >= 4`.
///
/// The grid is tiled by row bands of height 4 (one of height 6 when
/// `m = 2 (mod 4)`) and column segments of width 4 (one of width 6 when
/// `n = 2 (mod 4)`); every tile is one of the fixed balanced zero-sum
/// templates on consecutive values, so each band and segment is closed
/// under both line-sum and sign-balance checks.
pub fn shiftable_full(m: usize, n: usize) -> Result<Grid, Error> {
    if m < 4 || n < 4 || m % 2 != 0 || n % 2 != 0 {
        return Err(Error::WrongCase(format!(
            "shiftable full arrays need even m, n >= 4, got {m} x {n}"
        )));
    }
    let bands = |dim: usize| -> Vec<usize> {
        let mut out = Vec::new();
        let mut left = dim;
        if dim % 4 == 2 {
            out.push(6);
            left -= 6;
        }
        while left > 0 {
            out.push(4);
            left -= 4;
        }
        out
    };

    let consec = |start: i64, count: usize| -> Result<Vec<IntervalSet>, Error> {
        (0..count)
            .map(|i| IntervalSet::new(start + 4 * i as i64, 4, 1))
            .collect()
    };
    let tile = |h: usize, wd: usize, start: i64| -> Result<Grid, Error> {
        match (h, wd) {
            (4, 4) => {
                let y = consec(start, 4)?;
                blocks::p2(&y[0], &y[1], &y[2], &y[3])
            }
            (6, 4) => {
                let y = consec(start, 6)?;
                blocks::q3(&y[0], &y[1], &y[2], &y[3], &y[4], &y[5])
            }
            (4, 6) => {
                let y = consec(start, 6)?;
                Ok(blocks::q3(&y[0], &y[1], &y[2], &y[3], &y[4], &y[5])?.transpose())
            }
            (6, 6) => {
                let y = consec(start, 3)?;
                let z: Vec<IntervalSet> = (0..3)
                    .map(|i| IntervalSet::new(start + 12 + 8 * i as i64, 8, 1))
                    .collect::<Result<_, _>>()?;
                blocks::r2(&y[0], &y[1], &y[2], &z[0], &z[1], &z[2])
            }
            _ => Err(Error::Internal(format!("no {h}x{wd} tile"))),
        }
    };

    let mut grid = Grid::new(m, n)?;
    let mut next = 1i64;
    let mut r0 = 1;
    for bh in bands(m) {
        let mut c0 = 1;
        for sw in bands(n) {
            grid.place(&tile(bh, sw, next)?, r0, c0)?;
            next += (bh * sw) as i64;
            c0 += sw;
        }
        r0 += bh;
    }
    Ok(grid)
}

/// Integer Heffter array set for even `m, n`: a shiftable base and its
/// shifts by `mn, 2mn, ...`.
pub fn build_even_even(p: &IhsParams) -> Result<Vec<Grid>, Error> {
    if let Some(reason) = p.admissibility_failure() {
        return Err(Error::Inadmissible(reason));
    }
    if p.m % 2 != 0 || p.n % 2 != 0 {
        return Err(Error::WrongCase(format!(
            "m = {}, n = {} must both be even",
            p.m, p.n
        )));
    }
    let base = shiftable_full(p.m, p.n)?;
    let mn = (p.m * p.n) as i64;
    let mut out = Vec::with_capacity(p.c);
    out.push(base.clone());
    for i in 1..p.c {
        out.push(base.shift(i as i64 * mn)?);
    }
    Ok(out)
}

/// Integer Heffter array set `IHS(m, 5; c)` for `m = 0 (mod 4)`: each array
/// stacks `m/4` consecutive blocks of the 4x5 family.
pub fn build_stacked_n5(m: usize, c: usize) -> Result<Vec<Grid>, Error> {
    if m == 0 || m % 4 != 0 {
        return Err(Error::WrongCase(format!("m = {m} must be a positive multiple of 4")));
    }
    if c == 0 {
        return Err(Error::NonPositiveDimension(0));
    }
    let q = m / 4;
    let blocks = blocks::ihs_4x5(q * c)?;
    let mut out = Vec::with_capacity(c);
    for i in 0..c {
        let mut grid = Grid::new(m, 5)?;
        for (slot, block) in blocks[i * q..(i + 1) * q].iter().enumerate() {
            grid.place(block, 1 + 4 * slot, 1)?;
        }
        out.push(grid);
    }
    Ok(out)
}

/// Routes `(m, n, c)` to a set builder, trying the transposed orientation
/// when the given one has no route.
pub fn build_ihs(p: &IhsParams) -> Result<Outcome<Vec<Grid>>, Error> {
    if let Some(reason) = p.admissibility_failure() {
        return Ok(Outcome::Inadmissible(reason));
    }
    for (params, transposed) in [(*p, false), (p.transposed(), true)] {
        let label = |route: &str| {
            if transposed {
                format!("{route}, transposed")
            } else {
                route.to_string()
            }
        };
        if params.m % 2 == 0 && params.n % 2 == 0 {
            let set = build_even_even(&params)?;
            return Ok(Outcome::Built(
                orient(set, transposed),
                label("even-even shiftable family"),
            ));
        }
        if params.m % 4 == 0 && params.n == 5 {
            let set = build_stacked_n5(params.m, params.c)?;
            return Ok(Outcome::Built(
                orient(set, transposed),
                label("stacked 4x5 family"),
            ));
        }
        if params.m % 4 == 2 && params.m >= 6 && params.n % 2 == 1 {
            if params.n % 4 == 3 && params.n >= 7 {
                let set = build_n3mod4(&params)?;
                return Ok(Outcome::Built(
                    orient(set, transposed),
                    label("two-column stack, n = 3 (mod 4)"),
                ));
            }
            if params.n % 4 == 1 && params.n >= 9 {
                let set = build_n1mod4(&params)?;
                return Ok(Outcome::Built(
                    orient(set, transposed),
                    label("two-column stack, n = 1 (mod 4)"),
                ));
            }
        }
    }
    Ok(Outcome::Unsupported(classify_unsupported(p)))
}

fn orient(set: Vec<Grid>, transposed: bool) -> Vec<Grid> {
    if transposed {
        set.iter().map(Grid::transpose).collect()
    } else {
        set
    }
}

fn classify_unsupported(p: &IhsParams) -> String {
    let (m, n) = (p.m.min(p.n), p.m.max(p.n));
    if m % 2 == 1 && n % 2 == 1 && m >= 7 {
        return format!(
            "IHS({}, {}; {}): both sides odd and >= 7; existence known in the literature, not constructed here",
            p.m, p.n, p.c
        );
    }
    if n % 4 == 0 && m % 2 == 1 && m != 5 {
        return format!(
            "IHS({}, {}; {}): one side 0 (mod 4), other odd != 5; existence known in the literature, not constructed here",
            p.m, p.n, p.c
        );
    }
    if m <= 5 {
        return format!(
            "IHS({}, {}; {}): small side {} has no general construction here (open or external)",
            p.m, p.n, p.c, m
        );
    }
    format!("IHS({}, {}; {}): no construction route", p.m, p.n, p.c)
}
