use std::collections::HashMap;

use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::chain_maps::PartialInjection;
use crate::error::{Error, Result};

/// An element of a multiplication table: a concrete map, or a label
/// adjoined from outside (the zero of a Rees quotient, or an external
/// identity).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TableElement {
    Map(PartialInjection),
    Zero,
    Identity,
}

impl TableElement {
    pub fn as_map(&self) -> Option<&PartialInjection> {
        match self {
            TableElement::Map(a) => Some(a),
            _ => None,
        }
    }
}

impl std::fmt::Display for TableElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableElement::Map(a) => a.fmt(f),
            TableElement::Zero => f.write_str("0"),
            TableElement::Identity => f.write_str("1"),
        }
    }
}

impl Serialize for TableElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TableElement::Map(a) => a.serialize(s),
            TableElement::Zero => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("adjoined", "zero")?;
                m.end()
            }
            TableElement::Identity => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("adjoined", "identity")?;
                m.end()
            }
        }
    }
}

/// Finite semigroup given by an indexed element list and a full
/// multiplication table. Immutable once built.
#[derive(Debug, Clone)]
pub struct SemigroupTable {
    elements: Vec<TableElement>,
    mult: Vec<usize>,
    zero_index: Option<usize>,
    identity_adjoined: bool,
}

impl SemigroupTable {
    pub(crate) fn from_parts(
        elements: Vec<TableElement>,
        mult: Vec<usize>,
        zero_index: Option<usize>,
    ) -> Self {
        debug_assert_eq!(mult.len(), elements.len() * elements.len());
        SemigroupTable { elements, mult, zero_index, identity_adjoined: false }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[TableElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &TableElement {
        &self.elements[i]
    }

    pub fn zero_index(&self) -> Option<usize> {
        self.zero_index
    }

    pub fn identity_adjoined(&self) -> bool {
        self.identity_adjoined
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.elements.len() + b]
    }

    pub fn index_of(&self, e: &TableElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    /// First triple (in index order) with `(ab)c != a(bc)`, if any.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.len();
        let bad = (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        match bad {
            Some((a, b, c)) => Err(Error::NotAssociative(a, b, c)),
            None => Ok(()),
        }
    }

    /// Indices `e` with `ee = e`.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Every element is regular and idempotents commute.
    pub fn is_inverse(&self) -> bool {
        let n = self.len();
        let regular = (0..n)
            .into_par_iter()
            .all(|a| (0..n).any(|x| self.mul(self.mul(a, x), a) == a));
        let es = self.idempotents();
        regular
            && es
                .iter()
                .all(|&e| es.iter().all(|&f| self.mul(e, f) == self.mul(f, e)))
    }

    /// `members` is closed under multiplication by any element on either side.
    pub fn is_two_sided_ideal(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.len()];
        members.iter().for_each(|&i| inside[i] = true);
        members
            .iter()
            .all(|&i| (0..self.len()).all(|s| inside[self.mul(i, s)] && inside[self.mul(s, i)]))
    }

    /// CSV with a header row of column indices and one row per left factor;
    /// each cell is the index of the product.
    pub fn to_csv(&self) -> String {
        let n = self.len();
        let mut out = String::from("index");
        for j in 0..n {
            out.push_str(&format!(",{j}"));
        }
        out.push('\n');
        for i in 0..n {
            out.push_str(&i.to_string());
            for j in 0..n {
                out.push_str(&format!(",{}", self.mul(i, j)));
            }
            out.push('\n');
        }
        out
    }

    /// JSON manifest mapping indices to elements.
    pub fn manifest_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry<'a> {
            index: usize,
            element: &'a TableElement,
        }
        serde_json::json!({
            "size": self.len(),
            "zero_index": self.zero_index,
            "identity_adjoined": self.identity_adjoined,
            "elements": self
                .elements
                .iter()
                .enumerate()
                .map(|(index, element)| Entry { index, element })
                .collect::<Vec<_>>(),
        })
    }
}

/// Builds the multiplication table of a set of maps closed under
/// composition, optionally adjoining an external identity as the last
/// element.
pub fn build_table(elements: &[PartialInjection], adjoin_identity: bool) -> Result<SemigroupTable> {
    let index: HashMap<&PartialInjection, usize> =
        elements.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let rows: Vec<Result<Vec<usize>>> = elements
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            elements
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    a.compose(b)
                        .ok()
                        .and_then(|c| index.get(&c).copied())
                        .ok_or(Error::NotClosed { left: i, right: j })
                })
                .collect()
        })
        .collect();

    let base = elements.len();
    let size = base + usize::from(adjoin_identity);
    let mut mult = Vec::with_capacity(size * size);
    for row in rows {
        mult.extend(row?);
        if adjoin_identity {
            mult.push(mult.len() / size);
        }
    }
    if adjoin_identity {
        mult.extend(0..size);
    }

    let mut table_elements: Vec<TableElement> =
        elements.iter().cloned().map(TableElement::Map).collect();
    if adjoin_identity {
        table_elements.push(TableElement::Identity);
    }
    let zero_index = elements.iter().position(|a| a.is_empty());
    let mut table = SemigroupTable::from_parts(table_elements, mult, zero_index);
    table.identity_adjoined = adjoin_identity;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{enumerate_fast, Family};

    fn family(n: u32, fam: Family) -> Vec<PartialInjection> {
        enumerate_fast(n, fam, None).unwrap().collect()
    }

    #[test]
    fn table_sizes() {
        assert_eq!(build_table(&family(2, Family::Odp), false).unwrap().len(), 6);
        assert_eq!(build_table(&family(3, Family::Dp), false).unwrap().len(), 22);
        let one = build_table(&[PartialInjection::identity(3)], false).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.mul(0, 0), 0);
        assert_eq!(one.zero_index(), None);
    }

    #[test]
    fn zero_is_empty_map() {
        let t = build_table(&family(3, Family::Odp), false).unwrap();
        let z = t.zero_index().unwrap();
        assert_eq!(t.element(z), &TableElement::Map(PartialInjection::empty(3)));
        for x in 0..t.len() {
            assert_eq!(t.mul(z, x), z);
            assert_eq!(t.mul(x, z), z);
        }
    }

    #[test]
    fn not_closed_is_reported() {
        let a = PartialInjection::new(3, [(1, 2)]).unwrap();
        let b = PartialInjection::new(3, [(2, 3)]).unwrap();
        assert_eq!(
            build_table(&[a, b], false).unwrap_err(),
            Error::NotClosed { left: 0, right: 0 }
        );
    }

    #[test]
    fn adjoined_identity_acts_as_identity() {
        let t = build_table(&family(2, Family::Dp), true).unwrap();
        assert!(t.identity_adjoined());
        let one = t.len() - 1;
        assert_eq!(t.element(one), &TableElement::Identity);
        for x in 0..t.len() {
            assert_eq!(t.mul(one, x), x);
            assert_eq!(t.mul(x, one), x);
        }
        t.check_associative().unwrap();
    }

    #[test]
    fn non_associative_table_detected() {
        let elements = vec![TableElement::Zero, TableElement::Identity];
        let t = SemigroupTable::from_parts(elements, vec![0, 0, 0, 0], Some(0));
        t.check_associative().unwrap();
        let t = SemigroupTable::from_parts(
            vec![TableElement::Zero, TableElement::Identity],
            // x * y = not x
            vec![1, 1, 0, 0],
            Some(0),
        );
        assert!(matches!(t.check_associative(), Err(Error::NotAssociative(..))));
    }

    #[test]
    fn families_are_inverse_semigroups() {
        for n in 0..=5 {
            for fam in Family::ALL {
                let t = build_table(&family(n, fam), false).unwrap();
                t.check_associative().unwrap();
                assert!(t.is_inverse(), "{fam} n={n}");
            }
        }
    }

    #[test]
    fn idempotents_are_the_partial_identities() {
        for n in 0..=6 {
            for fam in Family::ALL {
                let t = build_table(&family(n, fam), false).unwrap();
                let es = t.idempotents();
                assert_eq!(es.len(), 1 << n);
                assert!(es.iter().all(|&e| t.element(e).as_map().unwrap().is_partial_identity()));
            }
        }
    }

    #[test]
    fn csv_and_manifest() {
        let t = build_table(&family(1, Family::Odp), false).unwrap();
        assert_eq!(t.to_csv(), "index,0,1\n0,0,0\n1,0,1\n");
        let m = t.manifest_json();
        assert_eq!(m["size"], 2);
        assert_eq!(m["zero_index"], 0);
        assert_eq!(m["elements"][1]["element"]["map"], serde_json::json!([[1, 1]]));
    }
}
