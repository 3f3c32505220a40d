//! Green's preorders and classes, twice: from the domain/image criteria
//! and from principal ideals of a multiplication table.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use super::table::SemigroupTable;
use crate::chain_maps::{gap_signature, PartialInjection, Point};
use crate::error::{Error, Result};
use crate::families::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    R,
    L,
    H,
    D,
    /// Equality of principal two-sided ideals. Only the table oracle
    /// computes it separately; it coincides with D on finite semigroups.
    J,
}

impl Relation {
    pub const GREEN: [Relation; 4] = [Relation::R, Relation::L, Relation::H, Relation::D];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(Relation::R),
            "l" => Ok(Relation::L),
            "h" => Ok(Relation::H),
            "d" => Ok(Relation::D),
            "j" => Ok(Relation::J),
            _ => Err(Error::Parse(format!("unknown relation {s:?}"))),
        }
    }
}

/// A partition of table indices into classes. Blocks are sorted internally
/// and ordered by their smallest index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreensClasses {
    pub relation: Relation,
    pub partition: Vec<Vec<usize>>,
}

impl GreensClasses {
    fn from_keys<K: std::hash::Hash + Eq>(relation: Relation, keys: impl IntoIterator<Item = K>) -> Self {
        let mut slot: HashMap<K, usize> = HashMap::new();
        let mut partition: Vec<Vec<usize>> = Vec::new();
        for (i, key) in keys.into_iter().enumerate() {
            let next = partition.len();
            let b = *slot.entry(key).or_insert(next);
            if b == next {
                partition.push(Vec::new());
            }
            partition[b].push(i);
        }
        GreensClasses { relation, partition }
    }

    pub fn len(&self) -> usize {
        self.partition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.partition.iter().map(Vec::len).collect()
    }

    /// Class label of every index.
    pub fn labels(&self) -> Vec<usize> {
        let total = self.partition.iter().map(Vec::len).sum();
        let mut labels = vec![usize::MAX; total];
        for (b, block) in self.partition.iter().enumerate() {
            block.iter().for_each(|&i| labels[i] = b);
        }
        labels
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &GreensClasses) -> bool {
        let labels = coarser.labels();
        self.partition
            .iter()
            .all(|block| block.iter().map(|&i| labels[i]).all_equal())
    }
}

fn same_chain(a: &PartialInjection, b: &PartialInjection) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::MismatchedChain { left: a.n(), right: b.n() });
    }
    Ok(())
}

fn is_subset(small: &[Point], big: &[Point]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// `a <=_R b` iff `Dom a` is contained in `Dom b`.
pub fn r_le(a: &PartialInjection, b: &PartialInjection) -> Result<bool> {
    same_chain(a, b)?;
    Ok(is_subset(&a.domain(), &b.domain()))
}

/// `a <=_L b` iff `Im a` is contained in `Im b`.
pub fn l_le(a: &PartialInjection, b: &PartialInjection) -> Result<bool> {
    same_chain(a, b)?;
    Ok(is_subset(&a.image(), &b.image()))
}

pub fn h_le(a: &PartialInjection, b: &PartialInjection) -> Result<bool> {
    Ok(r_le(a, b)? && l_le(a, b)?)
}

fn signatures_match(x: &[Point], y: &[Point], fam: Family) -> bool {
    let (sx, sy) = (gap_signature(x), gap_signature(y));
    sx == sy || (fam == Family::Dp && sx.reversed() == sy)
}

/// `a <=_D b` iff `Dom a` embeds isometrically into `Dom b` (order-preservingly
/// for ODP). Found by scanning subsets of `Dom b` of the right size.
pub fn d_le(a: &PartialInjection, b: &PartialInjection, fam: Family) -> Result<bool> {
    same_chain(a, b)?;
    let (da, db) = (a.domain(), b.domain());
    if da.len() > db.len() {
        return Ok(false);
    }
    Ok(db
        .iter()
        .copied()
        .combinations(da.len())
        .any(|t| signatures_match(&da, &t, fam)))
}

/// `a D b` iff the domains have the same size and are congruent (by a
/// translation for ODP, or a translation or reflection for DP).
pub fn d_related(a: &PartialInjection, b: &PartialInjection, fam: Family) -> Result<bool> {
    same_chain(a, b)?;
    Ok(a.height() == b.height() && signatures_match(&a.domain(), &b.domain(), fam))
}

fn d_key(a: &PartialInjection, fam: Family) -> (usize, Vec<Point>) {
    let sig = a.domain_signature();
    let sig = match fam {
        Family::Odp => sig,
        Family::Dp => sig.unoriented(),
    };
    (a.height(), sig.0)
}

/// Classes from the criteria: R by domain, L by image, H by both, D (and J)
/// by domain type.
pub fn greens_classes_criterion(
    elements: &[PartialInjection],
    fam: Family,
    relation: Relation,
) -> GreensClasses {
    let keys = elements.iter().map(|a| match relation {
        Relation::R => (a.domain(), Vec::new()),
        Relation::L => (a.image(), Vec::new()),
        Relation::H => (a.domain(), a.image()),
        Relation::D | Relation::J => {
            let (h, sig) = d_key(a, fam);
            (vec![h as Point], sig)
        }
    });
    GreensClasses::from_keys(relation, keys)
}

/// Fixed-width bitset over table indices.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &Bits) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a |= b);
    }
}

/// `a S^1`, always containing `a` itself.
fn right_ideal(t: &SemigroupTable, a: usize) -> Bits {
    let mut s = Bits::new(t.len());
    s.insert(a);
    (0..t.len()).for_each(|x| s.insert(t.mul(a, x)));
    s
}

/// `S^1 a`.
fn left_ideal(t: &SemigroupTable, a: usize) -> Bits {
    let mut s = Bits::new(t.len());
    s.insert(a);
    (0..t.len()).for_each(|x| s.insert(t.mul(x, a)));
    s
}

/// `S^1 a S^1`.
fn two_sided_ideal(t: &SemigroupTable, a: usize) -> Bits {
    let left = left_ideal(t, a);
    let mut s = Bits::new(t.len());
    for x in 0..t.len() {
        if left.contains(x) {
            s.union_with(&right_ideal(t, x));
        }
    }
    s
}

/// `a <=_J b`, i.e. `a` lies in `S^1 b S^1`.
pub fn j_le_oracle(t: &SemigroupTable, a: usize, b: usize) -> bool {
    two_sided_ideal(t, b).contains(a)
}

fn compose_relations(first: &GreensClasses, second: &GreensClasses) -> Vec<Bits> {
    let (l1, l2) = (first.labels(), second.labels());
    (0..l1.len())
        .map(|a| {
            let mut s = Bits::new(l1.len());
            for &c in &first.partition[l1[a]] {
                for &b in &second.partition[l2[c]] {
                    s.insert(b);
                }
            }
            s
        })
        .collect()
}

/// Whether `R∘L = L∘R` on the table, which makes D their join.
pub fn r_l_commute(t: &SemigroupTable) -> Result<bool> {
    let r = greens_classes_oracle(t, Relation::R)?;
    let l = greens_classes_oracle(t, Relation::L)?;
    Ok(compose_relations(&r, &l) == compose_relations(&l, &r))
}

/// Classes from the definitions: R by equal right ideals `aS^1`, L by equal
/// left ideals `S^1a`, H = R ∩ L, D = R∘L, J by equal `S^1aS^1`.
pub fn greens_classes_oracle(t: &SemigroupTable, relation: Relation) -> Result<GreensClasses> {
    t.check_associative()?;
    let n = t.len();
    Ok(match relation {
        Relation::R => GreensClasses::from_keys(relation, (0..n).map(|a| right_ideal(t, a))),
        Relation::L => GreensClasses::from_keys(relation, (0..n).map(|a| left_ideal(t, a))),
        Relation::H => GreensClasses::from_keys(
            relation,
            (0..n).map(|a| (right_ideal(t, a), left_ideal(t, a))),
        ),
        Relation::D => {
            let r = greens_classes_oracle(t, Relation::R)?;
            let l = greens_classes_oracle(t, Relation::L)?;
            GreensClasses::from_keys(relation, compose_relations(&r, &l))
        }
        Relation::J => GreensClasses::from_keys(relation, (0..n).map(|a| two_sided_ideal(t, a))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::enumerate_fast;
    use crate::greens::table::build_table;

    fn map(n: Point, pairs: &[(Point, Point)]) -> PartialInjection {
        PartialInjection::new(n, pairs.iter().copied()).unwrap()
    }

    fn family(n: u32, fam: Family) -> Vec<PartialInjection> {
        enumerate_fast(n, fam, None).unwrap().collect()
    }

    /// Any map with the given domain, for preorder tests that only look at
    /// domains.
    fn with_domain(n: Point, dom: &[Point]) -> PartialInjection {
        map(n, &dom.iter().map(|&x| (x, x)).collect::<Vec<_>>())
    }

    #[test]
    fn preorders() {
        let a = map(3, &[(2, 2)]);
        let b = map(3, &[(1, 1), (2, 2)]);
        assert!(r_le(&a, &b).unwrap() && l_le(&a, &b).unwrap() && h_le(&a, &b).unwrap());

        let z = PartialInjection::empty(3);
        for b in family(3, Family::Dp) {
            assert!(r_le(&z, &b).unwrap() && l_le(&z, &b).unwrap() && h_le(&z, &b).unwrap());
            assert!(d_le(&z, &b, Family::Dp).unwrap());
        }

        let a = map(3, &[(1, 2)]);
        let b = map(3, &[(2, 1), (3, 2)]);
        assert!(!r_le(&a, &b).unwrap());
        assert!(l_le(&a, &b).unwrap());
        assert!(!h_le(&a, &b).unwrap());

        assert!(r_le(&a, &map(4, &[(1, 1)])).is_err());
    }

    #[test]
    fn d_preorder() {
        let a = with_domain(5, &[1, 3]);
        let b = with_domain(5, &[2, 4, 5]);
        assert!(d_le(&a, &b, Family::Odp).unwrap());
        assert!(d_le(&a, &b, Family::Dp).unwrap());

        let a = with_domain(4, &[1, 2, 4]);
        let b = with_domain(4, &[1, 3, 4]);
        assert!(d_le(&a, &b, Family::Dp).unwrap());
        assert!(!d_le(&a, &b, Family::Odp).unwrap());
        assert!(!d_le(&b, &a, Family::Odp).unwrap());
        assert!(!d_le(&with_domain(4, &[1, 4]), &with_domain(4, &[1, 2, 3]), Family::Dp).unwrap());
    }

    #[test]
    fn d_relation() {
        let id12 = PartialInjection::partial_identity(4, [1, 2]).unwrap();
        assert!(d_related(&id12, &map(4, &[(3, 2), (4, 3)]), Family::Odp).unwrap());
        assert!(!d_related(&map(4, &[(1, 1)]), &id12, Family::Odp).unwrap());
        assert!(d_related(&map(4, &[(1, 1)]), &map(4, &[(3, 2)]), Family::Odp).unwrap());
        assert!(!d_related(&PartialInjection::empty(4), &map(4, &[(3, 2)]), Family::Odp).unwrap());
    }

    #[test]
    fn d_related_is_two_way_d_le() {
        for n in 0..=5 {
            for fam in Family::ALL {
                let els = family(n, fam);
                for a in &els {
                    for b in &els {
                        assert_eq!(
                            d_related(a, b, fam).unwrap(),
                            d_le(a, b, fam).unwrap() && d_le(b, a, fam).unwrap(),
                            "{a} {b} {fam}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn d_le_agrees_with_principal_ideals() {
        for n in 0..=4 {
            for fam in Family::ALL {
                let els = family(n, fam);
                let t = build_table(&els, false).unwrap();
                for (i, a) in els.iter().enumerate() {
                    for (j, b) in els.iter().enumerate() {
                        assert_eq!(d_le(a, b, fam).unwrap(), j_le_oracle(&t, i, j), "{a} {b} {fam}");
                    }
                }
            }
        }
    }

    #[test]
    fn r_classes_of_odp2() {
        let els = family(2, Family::Odp);
        let r = greens_classes_criterion(&els, Family::Odp, Relation::R);
        let mut sizes = r.sizes();
        sizes.sort();
        assert_eq!(sizes, [1, 1, 2, 2]);
    }

    #[test]
    fn d_class_counts_of_4_chain() {
        // ODP keeps {1,2,4} and {1,3,4} apart; DP identifies them by reflection.
        let odp = family(4, Family::Odp);
        let t = build_table(&odp, false).unwrap();
        assert_eq!(greens_classes_oracle(&t, Relation::D).unwrap().len(), 9);
        assert_eq!(greens_classes_criterion(&odp, Family::Odp, Relation::D).len(), 9);
        let dp = family(4, Family::Dp);
        assert_eq!(greens_classes_criterion(&dp, Family::Dp, Relation::D).len(), 8);
    }

    #[test]
    fn criterion_equals_oracle() {
        for n in 0..=5 {
            for fam in Family::ALL {
                let els = family(n, fam);
                let t = build_table(&els, false).unwrap();
                for rel in Relation::GREEN {
                    assert_eq!(
                        greens_classes_criterion(&els, fam, rel),
                        greens_classes_oracle(&t, rel).unwrap(),
                        "{fam} n={n} {rel}"
                    );
                }
                assert!(r_l_commute(&t).unwrap());
                assert_eq!(
                    greens_classes_oracle(&t, Relation::J).unwrap().partition,
                    greens_classes_oracle(&t, Relation::D).unwrap().partition
                );
            }
        }
    }

    #[test]
    fn h_class_sizes() {
        for n in 0..=6 {
            let odp = greens_classes_criterion(&family(n, Family::Odp), Family::Odp, Relation::H);
            assert!(odp.sizes().iter().all(|&s| s == 1));
            let dp = greens_classes_criterion(&family(n, Family::Dp), Family::Dp, Relation::H);
            assert!(dp.sizes().iter().all(|&s| s == 1 || s == 2));
        }
    }

    #[test]
    fn refinements() {
        let els = family(5, Family::Dp);
        let c = |rel| greens_classes_criterion(&els, Family::Dp, rel);
        let (r, l, h, d) = (c(Relation::R), c(Relation::L), c(Relation::H), c(Relation::D));
        assert!(h.refines(&r) && h.refines(&l) && r.refines(&d) && l.refines(&d));
        assert!(!d.refines(&r));
    }
}
