//! Closed-form counts for `DP_n` and `ODP_n` by height and by number of
//! fixed points, the height recurrence, and the bijection behind it.
//!
//! All arithmetic is exact. Intermediates are carried in `u128`; results fit
//! in `u64` for every `n <= FORMULA_CAP`.

use std::collections::HashSet;

use serde::Serialize;

use crate::chain_maps::{PartialInjection, Point};
use crate::error::{Error, Result};
use crate::families::{self, CountTable, Family, Statistic};

/// Largest `n` accepted by the closed forms.
pub const FORMULA_CAP: Point = 60;

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Only the empty map has height 0.
    HeightZero,
    /// `n^2`: every height-1 partial injection is an isometry.
    HeightOne,
    /// `(2n-p+1)/(p+1) * C(n,p)`.
    OdpHeight,
    /// `2(2n-p+1)/(p+1) * C(n,p)`.
    DpHeight,
    /// `C(n,m)`: maps with a fixed point (ODP) or two (DP) are partial identities.
    FixBinomial,
    /// `2^(n+1) - (2n+1)`.
    OdpFixZero,
    /// `2(2^n - 1)/3`.
    DpFixOneEven,
    /// `2(2^(n-1) - 1)/3 + 2^(n-1)`.
    DpFixOneOdd,
    /// `(13 * 2^n - (3n^2 + 9n + 10))/3`.
    DpFixZeroEven,
    /// `(25 * 2^(n-1) - (3n^2 + 9n + 10))/3`.
    DpFixZeroOdd,
    /// `3 * 2^n - 2(n+1)`.
    OdpOrder,
    /// `3 * 2^(n+1) - (n+2)^2 - 1`.
    DpOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub value: u64,
    pub branch: Branch,
}

fn check_cap(n: Point) -> Result<()> {
    if n > FORMULA_CAP {
        return Err(Error::LimitExceeded { what: "closed-form", n, cap: FORMULA_CAP });
    }
    Ok(())
}

fn check_index(n: Point, k: Point, name: &str) -> Result<()> {
    check_cap(n)?;
    if k > n {
        return Err(Error::Domain(format!("{name} = {k} exceeds n = {n}")));
    }
    Ok(())
}

pub fn binomial(n: Point, k: Point) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    // each partial product C(n-k+i, i) is an integer
    (1..=k).fold(1u128, |acc, i| acc * (n - k + i) / i)
}

fn exact_div(num: u128, den: u128) -> u128 {
    assert!(num.is_multiple_of(den), "{num} is not divisible by {den}");
    num / den
}

fn finish(value: u128, branch: Branch) -> FormulaResult {
    let value = u64::try_from(value).expect("closed-form value fits in u64 below the cap");
    FormulaResult { value, branch }
}

fn pow2(e: Point) -> u128 {
    1u128 << e
}

/// `F(n; p)` for `ODP_n` by height.
pub fn f_height_odp(n: Point, p: Point) -> Result<FormulaResult> {
    check_index(n, p, "p")?;
    if p == 0 {
        return Ok(finish(1, Branch::HeightZero));
    }
    let num = (2 * n as u128 - p as u128 + 1) * binomial(n, p);
    Ok(finish(exact_div(num, p as u128 + 1), Branch::OdpHeight))
}

/// `F(n; p)` for `DP_n` by height.
pub fn f_height_dp(n: Point, p: Point) -> Result<FormulaResult> {
    check_index(n, p, "p")?;
    Ok(match p {
        0 => finish(1, Branch::HeightZero),
        1 => finish(n as u128 * n as u128, Branch::HeightOne),
        _ => {
            let num = 2 * (2 * n as u128 - p as u128 + 1) * binomial(n, p);
            finish(exact_div(num, p as u128 + 1), Branch::DpHeight)
        }
    })
}

/// `F(n; m)` for `ODP_n` by number of fixed points.
pub fn f_fix_odp(n: Point, m: Point) -> Result<FormulaResult> {
    check_index(n, m, "m")?;
    Ok(if m == 0 {
        finish(pow2(n + 1) - (2 * n as u128 + 1), Branch::OdpFixZero)
    } else {
        finish(binomial(n, m), Branch::FixBinomial)
    })
}

/// `F(n; m)` for `DP_n` by number of fixed points. The `m = 0` and `m = 1`
/// cases split on the parity of `n`.
pub fn f_fix_dp(n: Point, m: Point) -> Result<FormulaResult> {
    check_index(n, m, "m")?;
    let even = n.is_multiple_of(2);
    let quad = 3 * (n as u128).pow(2) + 9 * n as u128 + 10;
    Ok(match m {
        0 if even => finish(exact_div(13 * pow2(n) - quad, 3), Branch::DpFixZeroEven),
        0 => finish(exact_div(25 * pow2(n - 1) - quad, 3), Branch::DpFixZeroOdd),
        1 if even => finish(exact_div(2 * (pow2(n) - 1), 3), Branch::DpFixOneEven),
        1 => finish(exact_div(2 * (pow2(n - 1) - 1), 3) + pow2(n - 1), Branch::DpFixOneOdd),
        _ => finish(binomial(n, m), Branch::FixBinomial),
    })
}

pub fn order_odp(n: Point) -> Result<FormulaResult> {
    check_cap(n)?;
    Ok(finish(3 * pow2(n) - 2 * (n as u128 + 1), Branch::OdpOrder))
}

pub fn order_dp(n: Point) -> Result<FormulaResult> {
    check_cap(n)?;
    Ok(finish(3 * pow2(n + 1) - (n as u128 + 2).pow(2) - 1, Branch::DpOrder))
}

pub fn f_height(fam: Family, n: Point, p: Point) -> Result<FormulaResult> {
    match fam {
        Family::Dp => f_height_dp(n, p),
        Family::Odp => f_height_odp(n, p),
    }
}

pub fn f_fix(fam: Family, n: Point, m: Point) -> Result<FormulaResult> {
    match fam {
        Family::Dp => f_fix_dp(n, m),
        Family::Odp => f_fix_odp(n, m),
    }
}

pub fn f_stat(fam: Family, stat: Statistic, n: Point, k: Point) -> Result<FormulaResult> {
    match stat {
        Statistic::Height => f_height(fam, n, k),
        Statistic::Fix => f_fix(fam, n, k),
    }
}

pub fn order_closed(fam: Family, n: Point) -> Result<FormulaResult> {
    match fam {
        Family::Dp => order_dp(n),
        Family::Odp => order_odp(n),
    }
}

/// Triangle of closed-form values for `0 <= k <= n <= max_n`.
pub fn formula_table(fam: Family, stat: Statistic, max_n: Point) -> Result<CountTable> {
    check_cap(max_n)?;
    let rows = (0..=max_n)
        .map(|n| (0..=n).map(|k| f_stat(fam, stat, n, k).map(|r| r.value)).collect())
        .collect::<Result<Vec<Vec<u64>>>>()?;
    Ok(CountTable::from_rows(fam, stat, rows))
}

/// Checks `sum_{p=2}^{n} (2n-p+1)/(p+1) C(n,p) = 3*2^n - n^2 - 2n - 3`.
pub fn verify_sum_identity(n: Point) -> Result<bool> {
    check_cap(n)?;
    if n < 2 {
        return Err(Error::Domain(format!("sum identity needs n >= 2, got {n}")));
    }
    let lhs: u128 = (2..=n)
        .map(|p| f_height_odp(n, p).map(|r| r.value as u128))
        .sum::<Result<u128>>()?;
    let n = n as u128;
    let rhs = 3 * pow2(n as Point) - n * n - 2 * n - 3;
    Ok(lhs == rhs)
}

/// Checks `F(n;p) = F(n-1;p-1) + F(n-1;p)` on the closed forms, with
/// `F(n-1;p) = 0` when `p > n-1`.
pub fn recurrence_check(n: Point, p: Point, fam: Family) -> Result<bool> {
    check_cap(n)?;
    if !(n >= p && p >= 3) {
        return Err(Error::Domain(format!("recurrence needs n >= p >= 3, got n={n}, p={p}")));
    }
    let lhs = f_height(fam, n, p)?.value;
    let left = f_height(fam, n - 1, p - 1)?.value;
    let right = if p > n - 1 { 0 } else { f_height(fam, n - 1, p)?.value };
    Ok(lhs == left + right)
}

/// Lifts `a` from `ODP_{n-1}` with height `p-1` to a height-`p` element of
/// `ODP_n` that involves `n` in its domain or image.
///
/// * right shoulder equal to right waist: adjoin `n -> n`;
/// * right shoulder above right waist: adjoin `n -> n - shoulder + waist`;
/// * right shoulder below right waist: lift the inverse and invert back.
pub fn phi_bijection(a: &PartialInjection, n: Point) -> Result<PartialInjection> {
    if n == 0 || a.n() != n - 1 {
        return Err(Error::MismatchedChain { left: a.n(), right: n.saturating_sub(1) });
    }
    if !families::is_member(a, Family::Odp) {
        return Err(Error::Domain(format!("{a} is not an order-preserving partial isometry")));
    }
    let stats = a.statistics();
    let (shoulder, waist) = match (stats.right_shoulder, stats.right_waist) {
        (Some(s), Some(w)) => (s, w),
        _ => return Err(Error::Domain("the empty map has no shoulder or waist".into())),
    };
    let adjoin = |b: &PartialInjection, shoulder: Point, waist: Point| {
        let mut pairs = b.pairs().to_vec();
        pairs.push((n, n - shoulder + waist));
        PartialInjection::new(n, pairs)
    };
    if shoulder >= waist {
        adjoin(a, shoulder, waist)
    } else {
        // the inverse swaps shoulders and waists
        Ok(adjoin(&a.inverse(), waist, shoulder)?.inverse())
    }
}

/// Outcome of checking the decomposition `F(n;p) = |A| + |B|` where `A`
/// holds the height-`p` elements avoiding `n` and `B` those touching it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub n: Point,
    pub p: Point,
    /// `|A|`, the embedded height-`p` elements of `ODP_{n-1}`.
    pub embedded: usize,
    /// `|B|`, elements of height `p` with `n` in domain or image.
    pub touching: usize,
    /// Size of the source `{a in ODP_{n-1} : h(a) = p-1}`.
    pub sources: usize,
    pub injective: bool,
    pub image_is_touching_set: bool,
    pub partition_ok: bool,
}

impl PhiReport {
    pub fn ok(&self) -> bool {
        self.injective && self.image_is_touching_set && self.partition_ok
    }
}

/// Runs the lift over every height-`(p-1)` element of `ODP_{n-1}` and
/// compares against a direct enumeration of `ODP_n` at height `p`.
pub fn verify_phi(n: Point, p: Point) -> Result<PhiReport> {
    if !(n >= p && p >= 2) {
        return Err(Error::Domain(format!("lift check needs n >= p >= 2, got n={n}, p={p}")));
    }
    let targets: Vec<PartialInjection> =
        families::enumerate_fast(n, Family::Odp, Some(p))?.collect();
    let touching: HashSet<&PartialInjection> = targets
        .iter()
        .filter(|a| a.domain().contains(&n) || a.image().contains(&n))
        .collect();

    let sources: Vec<PartialInjection> =
        families::enumerate_fast(n - 1, Family::Odp, Some(p - 1))?.collect();
    let lifted = sources
        .iter()
        .map(|a| phi_bijection(a, n))
        .collect::<Result<Vec<_>>>()?;
    let lifted_set: HashSet<&PartialInjection> = lifted.iter().collect();
    let injective = lifted_set.len() == lifted.len();
    let image_is_touching_set = lifted_set == touching;

    let embedded: Vec<PartialInjection> = families::enumerate_fast(n - 1, Family::Odp, Some(p))?
        .map(|a| PartialInjection::new(n, a.pairs().iter().copied()))
        .collect::<Result<_>>()?;
    let embedded_set: HashSet<&PartialInjection> = embedded.iter().collect();
    let all: HashSet<&PartialInjection> = targets.iter().collect();
    let partition_ok = embedded_set.is_disjoint(&touching)
        && embedded_set.union(&touching).copied().collect::<HashSet<_>>() == all;

    Ok(PhiReport {
        n,
        p,
        embedded: embedded.len(),
        touching: touching.len(),
        sources: sources.len(),
        injective,
        image_is_touching_set,
        partition_ok,
    })
}
