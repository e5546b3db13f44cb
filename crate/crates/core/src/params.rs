//! Validated parameter tuples and the necessary existence conditions.
//!
//! All checks are exact integer identities. Constructors reject non-positive
//! dimensions and tuples whose support bound `2nk` (or `2mnc`) exceeds
//! `2^62`, so every downstream computation stays within `i64`.

use crate::Error;
use serde::{Deserialize, Serialize};

const MAX_SUPPORT: u128 = 1 << 62;

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parameters `(m, n, s, k)` of an integer Heffter array `H(m,n;s,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeffterParams {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub k: usize,
}

impl HeffterParams {
    pub fn new(m: usize, n: usize, s: usize, k: usize) -> Result<Self, Error> {
        for &d in &[m, n, s, k] {
            if d == 0 {
                return Err(Error::NonPositiveDimension(0));
            }
        }
        if 2 * (n as u128) * (k as u128) > MAX_SUPPORT
            || 2 * (m as u128) * (s as u128) > MAX_SUPPORT
        {
            return Err(Error::Overflow(format!("2nk for ({m},{n},{s},{k})")));
        }
        Ok(HeffterParams { m, n, s, k })
    }

    /// All necessary conditions: `ms = nk`, `3 <= s <= n`, `3 <= k <= m`
    /// and `nk = 0 or 3 (mod 4)`.
    pub fn admissible(&self) -> bool {
        let (m, n, s, k) = (self.m, self.n, self.s, self.k);
        m * s == n * k && (3..=n).contains(&s) && (3..=m).contains(&k) && matches!((n * k) % 4, 0 | 3)
    }

    /// Names the first failing necessary condition, if any.
    pub fn admissibility_failure(&self) -> Option<String> {
        let (m, n, s, k) = (self.m, self.n, self.s, self.k);
        if m * s != n * k {
            return Some(format!("ms = {} differs from nk = {}", m * s, n * k));
        }
        if !(3..=n).contains(&s) {
            return Some(format!("s = {s} outside [3, n = {n}]"));
        }
        if !(3..=m).contains(&k) {
            return Some(format!("k = {k} outside [3, m = {m}]"));
        }
        if !matches!((n * k) % 4, 0 | 3) {
            return Some(format!("nk = {} is {} (mod 4)", n * k, (n * k) % 4));
        }
        None
    }

    /// Number of filled cells, `nk = ms`.
    pub fn cells(&self) -> usize {
        self.n * self.k
    }

    pub fn d(&self) -> usize {
        gcd(self.s, self.k)
    }

    /// The coprime parts `s1 = s/d`, `k1 = k/d`.
    pub fn s1(&self) -> usize {
        self.s / self.d()
    }

    pub fn k1(&self) -> usize {
        self.k / self.d()
    }

    /// The common factor `e` with `m = e*k1` and `n = e*s1`; defined exactly
    /// when `ms = nk`.
    pub fn e(&self) -> Option<usize> {
        if self.m * self.s != self.n * self.k {
            return None;
        }
        let k1 = self.k1();
        if self.m % k1 != 0 {
            return None;
        }
        let e = self.m / k1;
        (e * self.s1() == self.n).then_some(e)
    }

    pub fn transposed(&self) -> Self {
        HeffterParams {
            m: self.n,
            n: self.m,
            s: self.k,
            k: self.s,
        }
    }
}

/// Parameters `(m, n, c)` of an integer Heffter array set `IHS(m,n;c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IhsParams {
    pub m: usize,
    pub n: usize,
    pub c: usize,
}

impl IhsParams {
    pub fn new(m: usize, n: usize, c: usize) -> Result<Self, Error> {
        for &d in &[m, n, c] {
            if d == 0 {
                return Err(Error::NonPositiveDimension(0));
            }
        }
        if 2 * (m as u128) * (n as u128) * (c as u128) > MAX_SUPPORT {
            return Err(Error::Overflow(format!("2mnc for ({m},{n},{c})")));
        }
        Ok(IhsParams { m, n, c })
    }

    /// Necessary conditions: `m, n >= 3` and `mnc = 0 or 3 (mod 4)`.
    pub fn admissible(&self) -> bool {
        self.m >= 3 && self.n >= 3 && matches!((self.m * self.n * self.c) % 4, 0 | 3)
    }

    pub fn admissibility_failure(&self) -> Option<String> {
        if self.m < 3 || self.n < 3 {
            return Some(format!("m = {}, n = {} must both be >= 3", self.m, self.n));
        }
        let r = (self.m * self.n * self.c) % 4;
        if !matches!(r, 0 | 3) {
            return Some(format!("mnc = {} is {r} (mod 4)", self.m * self.n * self.c));
        }
        None
    }

    /// Total entry count `mnc` across the set.
    pub fn cells(&self) -> usize {
        self.m * self.n * self.c
    }

    /// The count parameter `t` with `c = 2t + 2` (even) or `c = 2t + 1`
    /// (odd).
    pub fn t(&self) -> usize {
        if self.c % 2 == 0 {
            (self.c - 2) / 2
        } else {
            (self.c - 1) / 2
        }
    }

    pub fn transposed(&self) -> Self {
        IhsParams {
            m: self.n,
            n: self.m,
            c: self.c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_parameters_are_admissible() {
        assert!(HeffterParams::new(20, 10, 9, 18).unwrap().admissible());
    }

    #[test]
    fn three_cubed_is_not() {
        // nk = 9 is 1 (mod 4)
        let p = HeffterParams::new(3, 3, 3, 3).unwrap();
        assert!(!p.admissible());
        assert!(p.admissibility_failure().unwrap().contains("(mod 4)"));
    }

    #[test]
    fn worked_example_set_is_admissible() {
        assert!(IhsParams::new(10, 7, 2).unwrap().admissible());
    }

    #[test]
    fn zero_dimension_is_an_error() {
        assert!(HeffterParams::new(0, 3, 3, 3).is_err());
        assert!(IhsParams::new(3, 0, 1).is_err());
    }

    #[test]
    fn overflow_is_rejected() {
        assert!(matches!(
            IhsParams::new(1 << 21, 1 << 21, 1 << 21),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn derived_factorization() {
        let p = HeffterParams::new(20, 10, 9, 18).unwrap();
        assert_eq!(p.d(), 9);
        assert_eq!((p.s1(), p.k1()), (1, 2));
        assert_eq!(p.e(), Some(10));
        let q = p.transposed();
        assert_eq!((q.s1(), q.k1()), (2, 1));
        assert_eq!(q.e(), Some(10));
    }
}
