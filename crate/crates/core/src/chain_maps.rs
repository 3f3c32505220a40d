//! Partial injective maps on the chain `1..=n`.
//!
//! A [`PartialInjection`] is stored as its graph: a list of `(x, y)` pairs
//! sorted by `x`. Maps act on the right, so the product `a.compose(&b)`
//! sends `x` to `(x a) b`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the chain `1..=n`.
pub type Point = u32;

/// Partial injective map on the chain `1..=n`.
///
/// Equality includes the chain size: the same graph on two different chains
/// gives two different values. The empty map is the zero of every semigroup
/// built from these values.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct PartialInjection {
    n: Point,
    pairs: Vec<(Point, Point)>,
}

/// JSON shape of a map: `{"n": 3, "map": [[1,1],[2,2]]}`.
#[derive(Serialize, Deserialize)]
struct RawMap {
    n: Point,
    map: Vec<[Point; 2]>,
}

impl TryFrom<RawMap> for PartialInjection {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        PartialInjection::new(raw.n, raw.map.into_iter().map(|[x, y]| (x, y)))
    }
}

impl From<PartialInjection> for RawMap {
    fn from(a: PartialInjection) -> Self {
        RawMap {
            n: a.n,
            map: a.pairs.into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }
}

/// Height, waists, shoulders and fixed points of a map.
///
/// Waists and shoulders are `None` exactly when the map is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapStatistics {
    pub height: usize,
    pub right_waist: Option<Point>,
    pub left_waist: Option<Point>,
    pub right_shoulder: Option<Point>,
    pub left_shoulder: Option<Point>,
    pub fix_set: Vec<Point>,
    pub fix_count: usize,
}

/// Successive differences of a sorted point set.
///
/// Two sets have the same signature iff one is a translate of the other.
/// A set and its mirror image have reversed signatures.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GapSignature(pub Vec<Point>);

impl GapSignature {
    pub fn reversed(&self) -> GapSignature {
        GapSignature(self.0.iter().rev().copied().collect())
    }

    /// The smaller of the signature and its reverse; equal for sets that
    /// are congruent up to a reflection.
    pub fn unoriented(&self) -> GapSignature {
        let rev = self.reversed();
        if rev < *self {
            rev
        } else {
            self.clone()
        }
    }
}

/// Gap signature of a strictly increasing point list.
pub fn gap_signature(points: &[Point]) -> GapSignature {
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
    GapSignature(points.windows(2).map(|w| w[1] - w[0]).collect())
}

impl PartialInjection {
    /// Validates `pairs` and builds the canonical (sorted by domain point) map.
    pub fn new(n: Point, pairs: impl IntoIterator<Item = (Point, Point)>) -> Result<Self> {
        let mut pairs: Vec<(Point, Point)> = pairs.into_iter().collect();
        for &(x, y) in &pairs {
            for p in [x, y] {
                if p == 0 || p > n {
                    return Err(Error::OutOfRange { point: p, n });
                }
            }
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::NotFunctional(w[0].0));
        }
        let mut ys: Vec<Point> = pairs.iter().map(|&(_, y)| y).collect();
        ys.sort_unstable();
        if let Some(w) = ys.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotInjective(w[0]));
        }
        Ok(PartialInjection { n, pairs })
    }

    /// Builds a map from pairs already known to be valid and sorted by `x`.
    pub(crate) fn from_sorted_unchecked(n: Point, pairs: Vec<(Point, Point)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        PartialInjection { n, pairs }
    }

    pub fn empty(n: Point) -> Self {
        PartialInjection { n, pairs: Vec::new() }
    }

    pub fn identity(n: Point) -> Self {
        Self::partial_identity(n, 1..=n).expect("points of the chain are in range")
    }

    /// Restriction of the identity to `points`.
    pub fn partial_identity(n: Point, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        Self::new(n, points.into_iter().map(|x| (x, x)))
    }

    pub fn n(&self) -> Point {
        self.n
    }

    pub fn pairs(&self) -> &[(Point, Point)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn height(&self) -> usize {
        self.pairs.len()
    }

    /// Domain points in increasing order.
    pub fn domain(&self) -> Vec<Point> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }

    /// Image points in increasing order.
    pub fn image(&self) -> Vec<Point> {
        let mut ys: Vec<Point> = self.pairs.iter().map(|&(_, y)| y).collect();
        ys.sort_unstable();
        ys
    }

    /// Image of `x`, if `x` is in the domain.
    pub fn apply(&self, x: Point) -> Option<Point> {
        self.pairs
            .binary_search_by_key(&x, |&(d, _)| d)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    /// Left-to-right product: `x (self * other) = (x self) other`.
    pub fn compose(&self, other: &PartialInjection) -> Result<PartialInjection> {
        if self.n != other.n {
            return Err(Error::MismatchedChain { left: self.n, right: other.n });
        }
        let pairs = self
            .pairs
            .iter()
            .filter_map(|&(x, y)| other.apply(y).map(|z| (x, z)))
            .collect();
        Ok(PartialInjection { n: self.n, pairs })
    }

    pub fn inverse(&self) -> PartialInjection {
        let mut pairs: Vec<(Point, Point)> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        PartialInjection { n: self.n, pairs }
    }

    pub fn statistics(&self) -> MapStatistics {
        let fix_set: Vec<Point> = self
            .pairs
            .iter()
            .filter(|(x, y)| x == y)
            .map(|&(x, _)| x)
            .collect();
        MapStatistics {
            height: self.pairs.len(),
            right_waist: self.pairs.iter().map(|&(_, y)| y).max(),
            left_waist: self.pairs.iter().map(|&(_, y)| y).min(),
            right_shoulder: self.pairs.last().map(|&(x, _)| x),
            left_shoulder: self.pairs.first().map(|&(x, _)| x),
            fix_count: fix_set.len(),
            fix_set,
        }
    }

    pub fn fix_count(&self) -> usize {
        self.pairs.iter().filter(|(x, y)| x == y).count()
    }

    /// `|x - y| = |x a - y a|` for all pairs of domain points.
    pub fn is_isometry(&self) -> bool {
        self.all_pairs(|(x1, y1), (x2, y2)| x1.abs_diff(x2) == y1.abs_diff(y2))
    }

    pub fn is_order_preserving(&self) -> bool {
        // pairs are sorted by x, so x1 < x2 below
        self.all_pairs(|(_, y1), (_, y2)| y1 <= y2)
    }

    pub fn is_order_reversing(&self) -> bool {
        self.all_pairs(|(_, y1), (_, y2)| y1 >= y2)
    }

    fn all_pairs(&self, pred: impl Fn((Point, Point), (Point, Point)) -> bool) -> bool {
        self.pairs
            .iter()
            .enumerate()
            .all(|(i, &a)| self.pairs[i + 1..].iter().all(|&b| pred(a, b)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self).map(|sq| sq == *self).unwrap_or(false)
    }

    pub fn is_partial_identity(&self) -> bool {
        self.pairs.iter().all(|(x, y)| x == y)
    }

    pub fn domain_signature(&self) -> GapSignature {
        gap_signature(&self.domain())
    }

    pub fn image_signature(&self) -> GapSignature {
        gap_signature(&self.image())
    }

    /// Parses the two-row matrix notation `(x1 x2 ... / y1 y2 ...)`.
    ///
    /// The empty map is written `()` or `( / )`.
    pub fn from_matrix(n: Point, text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected parenthesised matrix, got {text:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Self::empty(n));
        }
        let (top, bottom) = inner
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("missing '/' in {text:?}")))?;
        let row = |s: &str| -> Result<Vec<Point>> {
            s.split_whitespace()
                .map(|tok| tok.parse().map_err(|_| Error::Parse(format!("bad point {tok:?}"))))
                .collect()
        };
        let (xs, ys) = (row(top)?, row(bottom)?);
        if xs.len() != ys.len() {
            return Err(Error::Parse(format!("rows of different length in {text:?}")));
        }
        Self::new(n, xs.into_iter().zip(ys))
    }
}

impl Ord for PartialInjection {
    /// Canonical order: chain size, then height, then domain
    /// lexicographically, then the image list read in domain order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.pairs.len().cmp(&other.pairs.len()))
            .then_with(|| self.pairs.iter().map(|p| p.0).cmp(other.pairs.iter().map(|p| p.0)))
            .then_with(|| self.pairs.iter().map(|p| p.1).cmp(other.pairs.iter().map(|p| p.1)))
    }
}

impl PartialOrd for PartialInjection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("()");
        }
        let row = |pick: fn(&(Point, Point)) -> Point| {
            self.pairs.iter().map(|p| pick(p).to_string()).collect::<Vec<_>>().join(" ")
        };
        write!(f, "({} / {})", row(|p| p.0), row(|p| p.1))
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(n: Point, pairs: &[(Point, Point)]) -> PartialInjection {
        PartialInjection::new(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert_eq!(map(3, &[(1, 1), (2, 2)]), PartialInjection::partial_identity(3, [1, 2]).unwrap());
        assert_eq!(map(3, &[(3, 1), (2, 2)]).pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(
            PartialInjection::new(3, [(1, 2), (2, 2)]),
            Err(Error::NotInjective(2))
        );
        assert_eq!(
            PartialInjection::new(3, [(1, 2), (1, 3)]),
            Err(Error::NotFunctional(1))
        );
        assert_eq!(
            PartialInjection::new(3, [(1, 4)]),
            Err(Error::OutOfRange { point: 4, n: 3 })
        );
        assert_eq!(
            PartialInjection::new(3, [(0, 1)]),
            Err(Error::OutOfRange { point: 0, n: 3 })
        );
        assert!(PartialInjection::new(0, []).unwrap().is_empty());
    }

    #[test]
    fn equality_includes_chain_size() {
        assert_ne!(map(3, &[(1, 1)]), map(4, &[(1, 1)]));
    }

    #[test]
    fn compose_left_to_right() {
        let e = map(3, &[(1, 1), (2, 2)]);
        let s = map(3, &[(2, 2), (3, 1)]);
        assert_eq!(e.compose(&s).unwrap(), map(3, &[(2, 2)]));

        let a = map(3, &[(1, 2)]);
        let b = map(3, &[(2, 3)]);
        assert_eq!(a.compose(&b).unwrap(), map(3, &[(1, 3)]));
        assert!(b.compose(&a).unwrap().is_empty());

        assert!(e.compose(&PartialInjection::empty(3)).unwrap().is_empty());

        let c = map(3, &[(2, 2), (3, 3)]);
        let d = map(3, &[(1, 1), (3, 3)]);
        let ec = e.compose(&c).unwrap();
        assert_eq!(ec, map(3, &[(2, 2)]));
        assert_eq!(c.compose(&d).unwrap(), map(3, &[(3, 3)]));
        assert!(ec.compose(&d).unwrap().is_empty());
    }

    #[test]
    fn compose_rejects_mismatched_chains() {
        assert_eq!(
            map(3, &[(1, 1)]).compose(&map(4, &[(1, 1)])),
            Err(Error::MismatchedChain { left: 3, right: 4 })
        );
    }

    #[test]
    fn inverse_transposes() {
        assert_eq!(map(3, &[(1, 2), (2, 3)]).inverse(), map(3, &[(2, 1), (3, 2)]));
        assert!(PartialInjection::empty(3).inverse().is_empty());
        let a = map(5, &[(1, 5), (2, 3)]);
        let ai = a.inverse();
        assert_eq!(a.compose(&ai).unwrap().compose(&a).unwrap(), a);
    }

    #[test]
    fn statistics_read_off() {
        let s = map(5, &[(2, 4), (3, 3), (4, 2)]).statistics();
        assert_eq!(s.height, 3);
        assert_eq!(s.fix_set, vec![3]);
        assert_eq!(s.fix_count, 1);
        assert_eq!(s.right_shoulder, Some(4));
        assert_eq!(s.left_shoulder, Some(2));
        assert_eq!(s.right_waist, Some(4));
        assert_eq!(s.left_waist, Some(2));

        assert_eq!(PartialInjection::identity(6).statistics().fix_count, 6);

        let s = map(3, &[(1, 3), (2, 2)]).statistics();
        assert_eq!((s.fix_set.as_slice(), s.fix_count), (&[2][..], 1));

        let s = PartialInjection::empty(4).statistics();
        assert_eq!(s.height, 0);
        assert_eq!(s.right_waist, None);
        assert_eq!(s.left_shoulder, None);
    }

    #[test]
    fn isometry_and_order_predicates() {
        let n = 6;
        let swap_ends = map(n, &[(1, n), (n, 1)]);
        assert!(swap_ends.is_isometry());
        assert!(!swap_ends.is_order_preserving());
        assert!(swap_ends.is_order_reversing());

        assert!(!map(3, &[(1, 1), (2, 3)]).is_isometry());

        let reflect = map(4, &[(2, 3), (3, 2), (4, 1)]);
        assert!(reflect.is_isometry());
        assert!(reflect.is_order_reversing());

        for a in [PartialInjection::empty(3), map(3, &[(2, 1)])] {
            assert!(a.is_isometry() && a.is_order_preserving() && a.is_order_reversing());
        }
    }

    #[test]
    fn idempotents_are_partial_identities() {
        let a = map(3, &[(2, 2)]);
        assert!(a.is_idempotent() && a.is_partial_identity());
        let b = map(3, &[(2, 2), (3, 1)]);
        assert!(!b.is_idempotent() && !b.is_partial_identity());
        let z = PartialInjection::empty(3);
        assert!(z.is_idempotent() && z.is_partial_identity());
    }

    #[test]
    fn gap_signatures() {
        assert_eq!(gap_signature(&[1, 3, 4]), GapSignature(vec![2, 1]));
        assert_eq!(gap_signature(&[2, 4, 5]), gap_signature(&[1, 3, 4]));
        assert_eq!(gap_signature(&[]), GapSignature(vec![]));
        assert_eq!(gap_signature(&[7]), GapSignature(vec![]));
        assert_eq!(GapSignature(vec![2, 1]).unoriented(), GapSignature(vec![1, 2]));
    }

    #[test]
    fn text_and_json_formats() {
        let a = map(4, &[(1, 3), (2, 2)]);
        assert_eq!(a.to_string(), "(1 2 / 3 2)");
        assert_eq!(PartialInjection::from_matrix(4, "(1 2 / 3 2)").unwrap(), a);
        assert_eq!(PartialInjection::empty(4).to_string(), "()");
        assert!(PartialInjection::from_matrix(4, "( / )").unwrap().is_empty());
        assert!(PartialInjection::from_matrix(4, "(1 2 / 3)").is_err());

        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":4,"map":[[1,3],[2,2]]}"#);
        assert_eq!(serde_json::from_str::<PartialInjection>(&json).unwrap(), a);
        assert!(serde_json::from_str::<PartialInjection>(r#"{"n":2,"map":[[1,1],[2,1]]}"#).is_err());
    }

    #[test]
    fn canonical_order() {
        let mut v = [map(3, &[(1, 2), (2, 3)]),
            map(3, &[(2, 2)]),
            map(3, &[(1, 1), (2, 2)]),
            PartialInjection::empty(3),
            map(3, &[(1, 3)])];
        v.sort();
        let shown: Vec<String> = v.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, ["()", "(1 / 3)", "(2 / 2)", "(1 2 / 1 2)", "(1 2 / 2 3)"]);
    }
}
