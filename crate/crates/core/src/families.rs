//! Membership, enumeration and empirical counts for `DP_n` and `ODP_n`.
//!
//! The fast generator uses the fact that a partial isometry of a chain is
//! either order-preserving or order-reversing: it is the restriction of a
//! translation `x -> x + t` or of a reflection `x -> c - x`. The oracle
//! generator walks all of `I_n` and filters, and is only used to check the
//! fast one.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain_maps::{PartialInjection, Point};
use crate::error::{Error, Result};

/// Default ceiling on `n` for the structural generator.
pub const DEFAULT_ENUMERATION_CAP: Point = 20;
/// Hard ceiling on `n` for the brute-force oracle (`|I_8|` is about 1.4M).
pub const ORACLE_CAP: Point = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// All partial isometries.
    Dp,
    /// Order-preserving partial isometries.
    Odp,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Dp, Family::Odp];

    pub fn name(self) -> &'static str {
        match self {
            Family::Dp => "DP",
            Family::Odp => "ODP",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dp" => Ok(Family::Dp),
            "odp" => Ok(Family::Odp),
            _ => Err(Error::Parse(format!("unknown family {s:?} (expected dp or odp)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Height,
    Fix,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Height => "height",
            Statistic::Fix => "fix",
        })
    }
}

pub fn is_member(a: &PartialInjection, fam: Family) -> bool {
    match fam {
        Family::Dp => a.is_isometry(),
        Family::Odp => a.is_isometry() && a.is_order_preserving(),
    }
}

/// Streams the elements of the family in canonical order (height, then
/// domain, then image), optionally restricted to a single height.
pub fn enumerate_fast(
    n: Point,
    fam: Family,
    height: Option<Point>,
) -> Result<impl Iterator<Item = PartialInjection>> {
    enumerate_fast_with_cap(n, fam, height, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_fast_with_cap(
    n: Point,
    fam: Family,
    height: Option<Point>,
    cap: Point,
) -> Result<impl Iterator<Item = PartialInjection>> {
    if n > cap {
        return Err(Error::LimitExceeded { what: "enumeration", n, cap });
    }
    let heights = match height {
        Some(p) => p..=p,
        None => 0..=n,
    };
    Ok(heights.flat_map(move |p| of_height(n, fam, p)))
}

fn of_height(n: Point, fam: Family, p: Point) -> impl Iterator<Item = PartialInjection> {
    (1..=n)
        .combinations(p as usize)
        .flat_map(move |dom| maps_on_domain(n, fam, dom))
}

/// All family members with the given domain, sorted by image list.
fn maps_on_domain(n: Point, fam: Family, dom: Vec<Point>) -> Vec<PartialInjection> {
    let (lo, hi) = match (dom.first(), dom.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return vec![PartialInjection::empty(n)],
    };
    let span = hi - lo;
    let mut images: Vec<Vec<Point>> = Vec::with_capacity(2 * (n - span) as usize);
    // translations x -> x - lo + first
    for first in 1..=n - span {
        images.push(dom.iter().map(|&x| x - lo + first).collect());
    }
    // reflections x -> c - x; below height 2 they coincide with translations
    if fam == Family::Dp && dom.len() >= 2 {
        for c in hi + 1..=lo + n {
            images.push(dom.iter().map(|&x| c - x).collect());
        }
    }
    images.sort_unstable();
    images
        .into_iter()
        .map(|img| PartialInjection::from_sorted_unchecked(n, dom.iter().copied().zip(img).collect()))
        .collect()
}

/// Every member of the family, found by filtering all of `I_n`. Returned in
/// canonical order.
pub fn enumerate_oracle(n: Point, fam: Family) -> Result<Vec<PartialInjection>> {
    if n > ORACLE_CAP {
        return Err(Error::LimitExceeded { what: "oracle", n, cap: ORACLE_CAP });
    }
    let mut out = Vec::new();
    let mut pairs = Vec::with_capacity(n as usize);
    let mut used = vec![false; n as usize + 1];
    walk_partial_injections(n, 1, &mut pairs, &mut used, &mut |pairs| {
        let a = PartialInjection::from_sorted_unchecked(n, pairs.to_vec());
        if is_member(&a, fam) {
            out.push(a);
        }
    });
    out.sort_unstable();
    Ok(out)
}

fn walk_partial_injections(
    n: Point,
    x: Point,
    pairs: &mut Vec<(Point, Point)>,
    used: &mut [bool],
    visit: &mut impl FnMut(&[(Point, Point)]),
) {
    if x > n {
        visit(pairs);
        return;
    }
    walk_partial_injections(n, x + 1, pairs, used, visit);
    for y in 1..=n {
        if !used[y as usize] {
            used[y as usize] = true;
            pairs.push((x, y));
            walk_partial_injections(n, x + 1, pairs, used, visit);
            pairs.pop();
            used[y as usize] = false;
        }
    }
}

/// Height and fix histograms of one family at one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histograms {
    pub by_height: Vec<u64>,
    pub by_fix: Vec<u64>,
}

impl Histograms {
    pub fn order(&self) -> u64 {
        self.by_height.iter().sum()
    }

    pub fn get(&self, stat: Statistic) -> &[u64] {
        match stat {
            Statistic::Height => &self.by_height,
            Statistic::Fix => &self.by_fix,
        }
    }
}

/// Counts by height and by fix, one parallel worker per height.
pub fn histograms_with_cap(n: Point, fam: Family, cap: Point) -> Result<Histograms> {
    if n > cap {
        return Err(Error::LimitExceeded { what: "enumeration", n, cap });
    }
    let len = n as usize + 1;
    let zero = || Histograms { by_height: vec![0; len], by_fix: vec![0; len] };
    Ok((0..=n)
        .into_par_iter()
        .map(|p| {
            let mut h = zero();
            for a in of_height(n, fam, p) {
                h.by_height[p as usize] += 1;
                h.by_fix[a.fix_count()] += 1;
            }
            h
        })
        .reduce(zero, |mut acc, h| {
            acc.by_height.iter_mut().zip(&h.by_height).for_each(|(a, b)| *a += b);
            acc.by_fix.iter_mut().zip(&h.by_fix).for_each(|(a, b)| *a += b);
            acc
        }))
}

pub fn histograms(n: Point, fam: Family) -> Result<Histograms> {
    histograms_with_cap(n, fam, DEFAULT_ENUMERATION_CAP)
}

/// `F(n; p)` for `p = 0..=n`, counted by enumeration.
pub fn count_by_height(n: Point, fam: Family) -> Result<Vec<u64>> {
    Ok(histograms(n, fam)?.by_height)
}

/// `F(n; m)` for `m = 0..=n`, counted by enumeration.
pub fn count_by_fix(n: Point, fam: Family) -> Result<Vec<u64>> {
    Ok(histograms(n, fam)?.by_fix)
}

pub fn order(n: Point, fam: Family) -> Result<u64> {
    Ok(histograms(n, fam)?.order())
}

/// Triangle of counts `F(n; k)` for `0 <= k <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub statistic: Statistic,
    pub family: Family,
    pub rows: Vec<Vec<u64>>,
    pub row_sums: Vec<u64>,
}

impl CountTable {
    pub fn from_rows(family: Family, statistic: Statistic, rows: Vec<Vec<u64>>) -> Self {
        let row_sums = rows.iter().map(|r| r.iter().sum()).collect();
        CountTable { statistic, family, rows, row_sums }
    }

    /// Builds the triangle by enumeration.
    pub fn empirical(family: Family, statistic: Statistic, max_n: Point, cap: Point) -> Result<Self> {
        let rows = (0..=max_n)
            .map(|n| histograms_with_cap(n, family, cap).map(|h| h.get(statistic).to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows(family, statistic, rows))
    }

    pub fn max_n(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }
}
