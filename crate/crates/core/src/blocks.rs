//! Elementary zero-sum building blocks.
//!
//! Two parametric families of 2x3 blocks drive the first-columns stack of
//! every assembled set: [`family_a`] blocks have column sums `(-2, 1, 1)`,
//! [`family_b`] blocks `(-4, 2, 2)`; all row sums are zero. The fixed
//! templates [`p1`], [`p2`] (4x4), [`q1`], [`q2`], [`q3`] (6x4) and [`r1`],
//! [`r2`] (6x6) are totally filled zero-sum blocks whose supports are the
//! disjoint union of their interval arguments. [`ihs_4x5`] produces the
//! complete 4x5 set families for every count `c >= 1`.

use crate::{Error, Grid};
use serde::{Deserialize, Serialize};

/// Parameters `(alpha, beta, u)` of the 2x3 block families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFamilySpec {
    pub alpha: i64,
    pub beta: i64,
    pub u: usize,
}

impl BlockFamilySpec {
    pub fn new(alpha: i64, beta: i64, u: usize) -> Result<Self, Error> {
        if alpha < 1 || beta < 1 || u < 1 {
            return Err(Error::FamilyHypothesis(format!(
                "alpha = {alpha}, beta = {beta}, u = {u} must all be positive"
            )));
        }
        Ok(BlockFamilySpec { alpha, beta, u })
    }
}

/// `u` blocks of size 2x3 with row sums `(0,0)`, column sums `(-2,1,1)` and
/// joint support `[alpha, alpha+4u-2]_2 ⊔ [beta-2u+1, beta] ⊔
/// [alpha+beta, alpha+beta+2u-1]`. Requires `beta >= alpha + 6u - 2`.
pub fn family_a(spec: &BlockFamilySpec) -> Result<Vec<Grid>, Error> {
    let (a, b, u) = (spec.alpha, spec.beta, spec.u as i64);
    if b < a + 6 * u - 2 {
        return Err(Error::FamilyHypothesis(format!(
            "beta = {b} < alpha + 6u - 2 = {}",
            a + 6 * u - 2
        )));
    }
    (0..u)
        .map(|j| {
            Grid::from_rows(&[
                vec![a + 4 * j, -(a + b + 2 * j), b - 2 * j],
                vec![-(a + 2 + 4 * j), a + b + 1 + 2 * j, -(b - 1 - 2 * j)],
            ])
        })
        .collect()
}

/// `2u` blocks of size 2x3 with row sums `(0,0)`, column sums `(-4,2,2)` and
/// joint support `[1, 8u-1]_2 ⊔ [beta-4u+1, beta+4u]`. Requires
/// `beta >= 12u - 1`. The `alpha` field of the spec is unused.
pub fn family_b(spec: &BlockFamilySpec) -> Result<Vec<Grid>, Error> {
    let (b, u) = (spec.beta, spec.u as i64);
    if b < 12 * u - 1 {
        return Err(Error::FamilyHypothesis(format!(
            "beta = {b} < 12u - 1 = {}",
            12 * u - 1
        )));
    }
    let mut out = Vec::with_capacity(2 * spec.u);
    for j in 0..u {
        out.push(Grid::from_rows(&[
            vec![1 + 8 * j, -(b + 1 + 4 * j), b - 4 * j],
            vec![-(5 + 8 * j), b + 3 + 4 * j, -(b - 2 - 4 * j)],
        ])?);
        out.push(Grid::from_rows(&[
            vec![3 + 8 * j, -(b + 2 + 4 * j), b - 1 - 4 * j],
            vec![-(7 + 8 * j), b + 4 + 4 * j, -(b - 3 - 4 * j)],
        ])?);
    }
    Ok(out)
}

/// An arithmetic progression `[start, start + (len-1)*step]` with
/// `step` in `{1, 2}`: the `len`-set of type `step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet {
    pub start: i64,
    pub len: usize,
    pub step: i64,
}

impl IntervalSet {
    pub fn new(start: i64, len: usize, step: i64) -> Result<Self, Error> {
        if !matches!(step, 1 | 2) {
            return Err(Error::WrongSetShape {
                arg: "step",
                expected: "step of 1 or 2".into(),
                got: step.to_string(),
            });
        }
        if len == 0 {
            return Err(Error::WrongSetShape {
                arg: "len",
                expected: "nonempty set".into(),
                got: "0".into(),
            });
        }
        Ok(IntervalSet { start, len, step })
    }

    pub fn end(&self) -> i64 {
        self.start + (self.len as i64 - 1) * self.step
    }

    pub fn elements(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.len as i64).map(move |i| self.start + i * self.step)
    }

    fn shape(&self, arg: &'static str, len: usize, step: i64) -> Result<(), Error> {
        if self.len != len || self.step != step {
            return Err(Error::WrongSetShape {
                arg,
                expected: format!("{len}-set of type {step}"),
                got: format!("{}-set of type {}", self.len, self.step),
            });
        }
        Ok(())
    }

    /// Base value for the template formulas: the 4-set of type 2
    /// `[x+2, x+8]_2` has base `x = start - 2`.
    fn x4(&self, arg: &'static str) -> Result<i64, Error> {
        self.shape(arg, 4, 2)?;
        Ok(self.start - 2)
    }

    /// Base of a 4-set of type 1 `[y+1, y+4]`.
    fn y4(&self, arg: &'static str) -> Result<i64, Error> {
        self.shape(arg, 4, 1)?;
        Ok(self.start - 1)
    }

    /// Base of an 8-set of type 1 `[z+1, z+8]`.
    fn z8(&self, arg: &'static str) -> Result<i64, Error> {
        self.shape(arg, 8, 1)?;
        Ok(self.start - 1)
    }

    /// Base of an 8-set of type 2 `[w+2, w+16]_2`.
    fn w8(&self, arg: &'static str) -> Result<i64, Error> {
        self.shape(arg, 8, 2)?;
        Ok(self.start - 2)
    }
}

/// 4x4 zero-sum block on four 4-sets of type 2.
pub fn p1(
    x1: &IntervalSet,
    x2: &IntervalSet,
    x3: &IntervalSet,
    x4: &IntervalSet,
) -> Result<Grid, Error> {
    let a = x1.x4("X1")?;
    let b = x2.x4("X2")?;
    let c = x3.x4("X3")?;
    let d = x4.x4("X4")?;
    Grid::from_rows(&[
        vec![a + 2, -(a + 6), -(b + 2), b + 6],
        vec![-(a + 4), a + 8, b + 4, -(b + 8)],
        vec![-(c + 2), c + 6, d + 2, -(d + 6)],
        vec![c + 4, -(c + 8), -(d + 4), d + 8],
    ])
}

/// 4x4 zero-sum block on four 4-sets of type 1.
pub fn p2(
    y1: &IntervalSet,
    y2: &IntervalSet,
    y3: &IntervalSet,
    y4: &IntervalSet,
) -> Result<Grid, Error> {
    let a = y1.y4("Y1")?;
    let b = y2.y4("Y2")?;
    let c = y3.y4("Y3")?;
    let d = y4.y4("Y4")?;
    Grid::from_rows(&[
        vec![a + 1, -(a + 3), -(b + 1), b + 3],
        vec![-(a + 2), a + 4, b + 2, -(b + 4)],
        vec![-(c + 1), c + 3, d + 1, -(d + 3)],
        vec![c + 2, -(c + 4), -(d + 2), d + 4],
    ])
}

/// 6x4 zero-sum block on two 4-sets of type 2 and four 4-sets of type 1.
pub fn q1(
    x1: &IntervalSet,
    x2: &IntervalSet,
    y1: &IntervalSet,
    y2: &IntervalSet,
    y3: &IntervalSet,
    y4: &IntervalSet,
) -> Result<Grid, Error> {
    let a = x1.x4("X1")?;
    let b = x2.x4("X2")?;
    let c = y1.y4("Y1")?;
    let d = y2.y4("Y2")?;
    let e = y3.y4("Y3")?;
    let f = y4.y4("Y4")?;
    Grid::from_rows(&[
        vec![a + 2, -(a + 6), -(b + 2), b + 6],
        vec![-(a + 4), a + 8, b + 4, -(b + 8)],
        vec![-(c + 1), c + 3, d + 1, -(d + 3)],
        vec![c + 2, -(c + 4), -(d + 2), d + 4],
        vec![-(e + 1), e + 3, f + 1, -(f + 3)],
        vec![e + 2, -(e + 4), -(f + 2), f + 4],
    ])
}

/// 6x4 zero-sum block on one 4-set of type 2, three 4-sets of type 1 and one
/// 8-set of type 1.
pub fn q2(
    x1: &IntervalSet,
    y1: &IntervalSet,
    y2: &IntervalSet,
    y3: &IntervalSet,
    z1: &IntervalSet,
) -> Result<Grid, Error> {
    let a = x1.x4("X1")?;
    let b = y1.y4("Y1")?;
    let c = y2.y4("Y2")?;
    let d = y3.y4("Y3")?;
    let z = z1.z8("Z1")?;
    Grid::from_rows(&[
        vec![a + 2, -(a + 4), -(b + 1), b + 3],
        vec![-(a + 6), a + 8, b + 2, -(b + 4)],
        vec![-(c + 1), c + 2, d + 3, -(d + 4)],
        vec![c + 3, -(c + 4), -(d + 1), d + 2],
        vec![z + 8, z + 1, -(z + 5), -(z + 4)],
        vec![-(z + 6), -(z + 3), z + 2, z + 7],
    ])
}

/// 6x4 zero-sum block on six 4-sets of type 1.
pub fn q3(
    y1: &IntervalSet,
    y2: &IntervalSet,
    y3: &IntervalSet,
    y4: &IntervalSet,
    y5: &IntervalSet,
    y6: &IntervalSet,
) -> Result<Grid, Error> {
    let a = y1.y4("Y1")?;
    let b = y2.y4("Y2")?;
    let c = y3.y4("Y3")?;
    let d = y4.y4("Y4")?;
    let e = y5.y4("Y5")?;
    let f = y6.y4("Y6")?;
    Grid::from_rows(&[
        vec![a + 1, -(a + 2), -(b + 1), b + 2],
        vec![-(a + 3), a + 4, b + 3, -(b + 4)],
        vec![-(c + 1), c + 3, d + 1, -(d + 3)],
        vec![c + 2, -(c + 4), -(d + 2), d + 4],
        vec![-(e + 1), e + 3, f + 1, -(f + 3)],
        vec![e + 2, -(e + 4), -(f + 2), f + 4],
    ])
}

/// 6x6 zero-sum block on three 4-sets of type 2 and three 8-sets of type 2.
pub fn r1(
    x1: &IntervalSet,
    x2: &IntervalSet,
    x3: &IntervalSet,
    w1: &IntervalSet,
    w2: &IntervalSet,
    w3: &IntervalSet,
) -> Result<Grid, Error> {
    let a = x1.x4("X1")?;
    let b = x2.x4("X2")?;
    let c = x3.x4("X3")?;
    let u = w1.w8("W1")?;
    let v = w2.w8("W2")?;
    let w = w3.w8("W3")?;
    Grid::from_rows(&[
        vec![u + 2, -(u + 6), -(u + 10), u + 12, a + 8, -(a + 6)],
        vec![-(u + 4), u + 14, u + 8, -(u + 16), -(a + 4), a + 2],
        vec![b + 8, -(b + 6), v + 2, -(v + 6), -(v + 10), v + 12],
        vec![-(b + 4), b + 2, -(v + 4), v + 14, v + 8, -(v + 16)],
        vec![-(w + 10), w + 12, c + 8, -(c + 6), w + 2, -(w + 6)],
        vec![w + 8, -(w + 16), -(c + 4), c + 2, -(w + 4), w + 14],
    ])
}

/// 6x6 zero-sum block on three 4-sets of type 1 and three 8-sets of type 1.
pub fn r2(
    y1: &IntervalSet,
    y2: &IntervalSet,
    y3: &IntervalSet,
    z1: &IntervalSet,
    z2: &IntervalSet,
    z3: &IntervalSet,
) -> Result<Grid, Error> {
    let a = y1.y4("Y1")?;
    let b = y2.y4("Y2")?;
    let c = y3.y4("Y3")?;
    let u = z1.z8("Z1")?;
    let v = z2.z8("Z2")?;
    let w = z3.z8("Z3")?;
    Grid::from_rows(&[
        vec![u + 1, -(u + 3), -(u + 5), u + 6, a + 4, -(a + 3)],
        vec![-(u + 2), u + 7, u + 4, -(u + 8), -(a + 2), a + 1],
        vec![b + 4, -(b + 3), v + 1, -(v + 3), -(v + 5), v + 6],
        vec![-(b + 2), b + 1, -(v + 2), v + 7, v + 4, -(v + 8)],
        vec![-(w + 5), w + 6, c + 4, -(c + 3), w + 1, -(w + 3)],
        vec![w + 4, -(w + 8), -(c + 2), c + 1, -(w + 2), w + 7],
    ])
}

/// The complete 4x5 set family: `c` totally filled 4x5 zero-sum blocks whose
/// joint support is exactly `[1, 20c]`. Works for every `c >= 1`; together
/// these pass `verify_ihs` with parameters `(4, 5, c)`.
pub fn ihs_4x5(c: usize) -> Result<Vec<Grid>, Error> {
    if c == 0 {
        return Err(Error::NonPositiveDimension(0));
    }
    let blocks = if c % 2 == 0 {
        let t = (c as i64 - 2) / 2;
        let mut out = Vec::with_capacity(c);
        for i in 0..=t {
            out.push(Grid::from_rows(&[
                vec![1 + 16 * i, -(3 + 16 * i), -(5 + 16 * i), 7 + 16 * i],
                vec![-(2 + 16 * i), 4 + 16 * i, 10 + 16 * i, -(12 + 16 * i)],
                vec![6 + 16 * i, -(8 + 16 * i), -(14 + 16 * i), 16 + 16 * i],
                vec![
                    24 * t + 24 - 8 * i,
                    -(24 * t + 23 - 8 * i),
                    -(24 * t + 22 - 8 * i),
                    24 * t + 21 - 8 * i,
                ],
                vec![
                    -(24 * t + 29 + 8 * i),
                    24 * t + 30 + 8 * i,
                    24 * t + 31 + 8 * i,
                    -(24 * t + 32 + 8 * i),
                ],
            ])?);
            out.push(Grid::from_rows(&[
                vec![
                    24 * t + 20 - 8 * i,
                    -(24 * t + 19 - 8 * i),
                    -(24 * t + 18 - 8 * i),
                    24 * t + 17 - 8 * i,
                ],
                vec![
                    -(24 * t + 25 + 8 * i),
                    24 * t + 26 + 8 * i,
                    24 * t + 27 + 8 * i,
                    -(24 * t + 28 + 8 * i),
                ],
                vec![
                    32 * t + 33 + 8 * i,
                    -(32 * t + 34 + 8 * i),
                    -(32 * t + 35 + 8 * i),
                    32 * t + 36 + 8 * i,
                ],
                vec![
                    -(32 * t + 37 + 8 * i),
                    32 * t + 38 + 8 * i,
                    32 * t + 39 + 8 * i,
                    -(32 * t + 40 + 8 * i),
                ],
                vec![9 + 16 * i, -(11 + 16 * i), -(13 + 16 * i), 15 + 16 * i],
            ])?);
        }
        out
    } else {
        let t = (c as i64 - 1) / 2;
        let mut out = Vec::with_capacity(c);
        out.push(Grid::from_rows(&[
            vec![16 * t + 1, -(16 * t + 3), -(16 * t + 5), 16 * t + 7],
            vec![-(16 * t + 10), 16 * t + 9, 16 * t + 12, -(16 * t + 11)],
            vec![-(40 * t + 17), 40 * t + 16, -(40 * t + 18), 40 * t + 19],
            vec![40 * t + 20, -(40 * t + 14), -4, -2],
            vec![6, -8, 40 * t + 15, -(40 * t + 13)],
        ])?);
        for i in 0..t {
            out.push(Grid::from_rows(&[
                vec![1 + 16 * i, -(3 + 16 * i), -(5 + 16 * i), 7 + 16 * i],
                vec![-(10 + 16 * i), 12 + 16 * i, 18 + 16 * i, -(20 + 16 * i)],
                vec![14 + 16 * i, -(16 + 16 * i), -(22 + 16 * i), 24 + 16 * i],
                vec![
                    24 * t + 12 - 8 * i,
                    -(24 * t + 11 - 8 * i),
                    -(24 * t + 10 - 8 * i),
                    24 * t + 9 - 8 * i,
                ],
                vec![
                    -(24 * t + 17 + 8 * i),
                    24 * t + 18 + 8 * i,
                    24 * t + 19 + 8 * i,
                    -(24 * t + 20 + 8 * i),
                ],
            ])?);
            out.push(Grid::from_rows(&[
                vec![
                    24 * t + 8 - 8 * i,
                    -(24 * t + 7 - 8 * i),
                    -(24 * t + 6 - 8 * i),
                    24 * t + 5 - 8 * i,
                ],
                vec![
                    -(24 * t + 13 + 8 * i),
                    24 * t + 14 + 8 * i,
                    24 * t + 15 + 8 * i,
                    -(24 * t + 16 + 8 * i),
                ],
                vec![
                    32 * t + 13 + 8 * i,
                    -(32 * t + 14 + 8 * i),
                    -(32 * t + 15 + 8 * i),
                    32 * t + 16 + 8 * i,
                ],
                vec![
                    -(32 * t + 17 + 8 * i),
                    32 * t + 18 + 8 * i,
                    32 * t + 19 + 8 * i,
                    -(32 * t + 20 + 8 * i),
                ],
                vec![9 + 16 * i, -(11 + 16 * i), -(13 + 16 * i), 15 + 16 * i],
            ])?);
        }
        out
    };
    // callers always receive 4x5 blocks
    Ok(blocks.iter().map(Grid::transpose).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_ihs;
    use crate::IhsParams;
    use std::collections::BTreeSet;

    fn support_set(grids: &[Grid]) -> BTreeSet<u64> {
        grids.iter().flat_map(|g| g.support()).collect()
    }

    #[test]
    fn family_a_matches_hand_expansion() {
        // first block of the (9, 56, 8) family
        let blocks = family_a(&BlockFamilySpec::new(9, 56, 8).unwrap()).unwrap();
        assert_eq!(blocks.len(), 8);
        assert_eq!(
            blocks[0],
            Grid::from_rows(&[vec![9, -65, 56], vec![-11, 66, -55]]).unwrap()
        );
        // smallest admissible family, expanded by hand from the formulas
        let tiny = family_a(&BlockFamilySpec::new(1, 7, 1).unwrap()).unwrap();
        assert_eq!(
            tiny[0],
            Grid::from_rows(&[vec![1, -8, 7], vec![-3, 9, -6]]).unwrap()
        );
        assert_eq!(tiny[0].col_sums(), vec![-2, 1, 1]);
        assert_eq!(tiny[0].row_sums(), vec![0, 0]);
    }

    #[test]
    fn family_a_signatures_and_support() {
        let spec = BlockFamilySpec::new(9, 56, 8).unwrap();
        let blocks = family_a(&spec).unwrap();
        let mut expected = BTreeSet::new();
        expected.extend((0..).map(|i| 9 + 2 * i).take_while(|&v| v <= 39)); // [9,39]_2
        expected.extend(41..=56); // [41,56]
        expected.extend(65..=80); // [65,80]
        assert_eq!(support_set(&blocks), expected);
        for b in &blocks {
            assert_eq!(b.row_sums(), vec![0, 0]);
            assert_eq!(b.col_sums(), vec![-2, 1, 1]);
            assert_eq!(b.iter().map(|(_, _, v)| v).sum::<i64>(), 0);
        }
    }

    #[test]
    fn family_b_matches_hand_expansion() {
        let blocks = family_b(&BlockFamilySpec::new(1, 60, 1).unwrap()).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(
            blocks[0],
            Grid::from_rows(&[vec![1, -61, 60], vec![-5, 63, -58]]).unwrap()
        );
        assert_eq!(
            blocks[1],
            Grid::from_rows(&[vec![3, -62, 59], vec![-7, 64, -57]]).unwrap()
        );
        let mut expected: BTreeSet<u64> = [1u64, 3, 5, 7].into_iter().collect();
        expected.extend(57..=64);
        assert_eq!(support_set(&blocks), expected);
        for b in &blocks {
            assert_eq!(b.col_sums(), vec![-4, 2, 2]);
        }
    }

    #[test]
    fn family_hypotheses_enforced() {
        assert!(matches!(
            family_a(&BlockFamilySpec::new(1, 4, 1).unwrap()),
            Err(Error::FamilyHypothesis(_))
        ));
        assert!(matches!(
            family_b(&BlockFamilySpec::new(1, 10, 1).unwrap()),
            Err(Error::FamilyHypothesis(_))
        ));
    }

    #[test]
    fn q1_matches_worked_example_block() {
        let f1 = IntervalSet::new(2, 4, 2).unwrap();
        let f2 = IntervalSet::new(10, 4, 2).unwrap();
        let g1 = IntervalSet::new(89, 4, 1).unwrap();
        let g2 = IntervalSet::new(93, 4, 1).unwrap();
        let g3 = IntervalSet::new(97, 4, 1).unwrap();
        let g4 = IntervalSet::new(101, 4, 1).unwrap();
        let block = q1(&f1, &f2, &g1, &g2, &g3, &g4).unwrap();
        let expected = Grid::from_rows(&[
            vec![2, -6, -10, 14],
            vec![-4, 8, 12, -16],
            vec![-89, 91, 93, -95],
            vec![90, -92, -94, 96],
            vec![-97, 99, 101, -103],
            vec![98, -100, -102, 104],
        ])
        .unwrap();
        assert_eq!(block, expected);
    }

    #[test]
    fn q2_matches_worked_example_block() {
        let f3 = IntervalSet::new(18, 4, 2).unwrap();
        let g5 = IntervalSet::new(105, 4, 1).unwrap();
        let g6 = IntervalSet::new(109, 4, 1).unwrap();
        let g7 = IntervalSet::new(113, 4, 1).unwrap();
        let h1 = IntervalSet::new(117, 8, 1).unwrap();
        let block = q2(&f3, &g5, &g6, &g7, &h1).unwrap();
        let expected = Grid::from_rows(&[
            vec![18, -20, -105, 107],
            vec![-22, 24, 106, -108],
            vec![-109, 110, 115, -116],
            vec![111, -112, -113, 114],
            vec![124, 117, -121, -120],
            vec![-122, -119, 118, 123],
        ])
        .unwrap();
        assert_eq!(block, expected);
    }

    #[test]
    fn p2_matches_worked_example_block() {
        let g8 = IntervalSet::new(125, 4, 1).unwrap();
        let g9 = IntervalSet::new(129, 4, 1).unwrap();
        let g10 = IntervalSet::new(133, 4, 1).unwrap();
        let g11 = IntervalSet::new(137, 4, 1).unwrap();
        let block = p2(&g8, &g9, &g10, &g11).unwrap();
        assert_eq!(
            block,
            Grid::from_rows(&[
                vec![125, -127, -129, 131],
                vec![-126, 128, 130, -132],
                vec![-133, 135, 137, -139],
                vec![134, -136, -138, 140],
            ])
            .unwrap()
        );
    }

    #[test]
    fn wrong_shape_names_argument() {
        let bad = IntervalSet::new(2, 4, 1).unwrap();
        let ok = IntervalSet::new(10, 4, 2).unwrap();
        let g = IntervalSet::new(89, 4, 1).unwrap();
        match q1(&bad, &ok, &g, &g, &g, &g) {
            Err(Error::WrongSetShape { arg, .. }) => assert_eq!(arg, "X1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn overlapping_arguments_show_up_in_verification() {
        // constructors accept overlapping sets; the verifier flags the result
        let y = IntervalSet::new(1, 4, 1).unwrap();
        let z = IntervalSet::new(5, 4, 1).unwrap();
        let block = p2(&y, &y, &z, &z).unwrap();
        let p = IhsParams::new(4, 4, 1).unwrap();
        let report = verify_ihs(&[block], &p);
        assert!(report.has("support-mismatch"));
    }

    #[test]
    fn smallest_odd_set_matches_display() {
        let blocks = ihs_4x5(1).unwrap();
        assert_eq!(blocks.len(), 1);
        // transpose of the displayed block at t = 0
        let expected = Grid::from_rows(&[
            vec![1, -10, -17, 20, 6],
            vec![-3, 9, 16, -14, -8],
            vec![-5, 12, -18, -4, 15],
            vec![7, -11, 19, -2, -13],
        ])
        .unwrap();
        assert_eq!(blocks[0], expected);
        assert!(verify_ihs(&blocks, &IhsParams::new(4, 5, 1).unwrap()).valid);
    }

    #[test]
    fn duplicated_block_fails_set_verification() {
        let block = ihs_4x5(1).unwrap().remove(0);
        let p = IhsParams::new(4, 5, 2).unwrap();
        let report = verify_ihs(&[block.clone(), block], &p);
        assert!(!report.valid);
        assert!(report.has("support-mismatch"));
    }

    #[test]
    fn even_pair_supports_partition() {
        let blocks = ihs_4x5(2).unwrap();
        let ranges: [BTreeSet<u64>; 1] = [(1..=40).collect()];
        assert_eq!(support_set(&blocks), ranges[0]);
        // each pair covers the stated interval split
        let first: BTreeSet<u64> = blocks[0].support().into_iter().collect();
        assert!(first.iter().all(|v| (1..=16).contains(v) || (17..=32).contains(v)));
    }

    #[test]
    fn ihs_4x5_sweep() {
        for c in 1..=50 {
            let blocks = ihs_4x5(c).unwrap();
            let p = IhsParams::new(4, 5, c).unwrap();
            let report = verify_ihs(&blocks, &p);
            assert!(report.valid, "c = {c}: {report}");
        }
    }
}
