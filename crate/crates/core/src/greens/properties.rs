use serde::Serialize;

use super::table::SemigroupTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// `(e, s)` with `e` a nonzero idempotent, `es` a nonzero idempotent,
    /// and `s` not one.
    #[serde(rename = "not_0_E_unitary")]
    NotZeroEUnitary,
    /// `(a, b, c)` with `abc = 0` but `ab != 0` and `bc != 0`.
    #[serde(rename = "not_categorical")]
    NotCategorical,
}

/// Element indices certifying that a structural property fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<usize>,
}

impl Witness {
    /// Re-checks the violation against `table`.
    pub fn replay(&self, table: &SemigroupTable) -> bool {
        let Some(zero) = table.zero_index() else {
            return false;
        };
        let in_range = self.elements.iter().all(|&i| i < table.len());
        match (self.kind, self.elements.as_slice()) {
            (WitnessKind::NotZeroEUnitary, &[e, s]) if in_range => {
                zero_e_unitary_violation(table, zero, e, s)
            }
            (WitnessKind::NotCategorical, &[a, b, c]) if in_range => {
                categorical_violation(table, zero, a, b, c)
            }
            _ => false,
        }
    }

    /// JSON with the elements written out inline.
    pub fn to_json(&self, table: &SemigroupTable) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "elements": self
                .elements
                .iter()
                .map(|&i| serde_json::json!({ "index": i, "element": table.element(i) }))
                .collect::<Vec<_>>(),
        })
    }

    /// `name=element` pairs for human-readable output.
    pub fn describe(&self, table: &SemigroupTable) -> String {
        let names: &[&str] = match self.kind {
            WitnessKind::NotZeroEUnitary => &["e", "s"],
            WitnessKind::NotCategorical => &["a", "b", "c"],
        };
        names
            .iter()
            .zip(&self.elements)
            .map(|(name, &i)| format!("{name}={}", table.element(i)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn is_nonzero_idempotent(t: &SemigroupTable, zero: usize, x: usize) -> bool {
    x != zero && t.mul(x, x) == x
}

fn zero_e_unitary_violation(t: &SemigroupTable, zero: usize, e: usize, s: usize) -> bool {
    is_nonzero_idempotent(t, zero, e)
        && is_nonzero_idempotent(t, zero, t.mul(e, s))
        && !is_nonzero_idempotent(t, zero, s)
}

fn categorical_violation(t: &SemigroupTable, zero: usize, a: usize, b: usize, c: usize) -> bool {
    let (ab, bc) = (t.mul(a, b), t.mul(b, c));
    ab != zero && bc != zero && t.mul(ab, c) == zero
}

/// For every nonzero idempotent `e` and every `s`, `es` a nonzero idempotent
/// forces `s` to be one. Returns the first violation in index order.
pub fn is_zero_e_unitary(t: &SemigroupTable) -> Result<(bool, Option<Witness>)> {
    let zero = t.zero_index().ok_or(Error::NoZero)?;
    let es: Vec<usize> = t.idempotents().into_iter().filter(|&e| e != zero).collect();
    for &e in &es {
        for s in 0..t.len() {
            if zero_e_unitary_violation(t, zero, e, s) {
                let w = Witness { kind: WitnessKind::NotZeroEUnitary, elements: vec![e, s] };
                return Ok((false, Some(w)));
            }
        }
    }
    Ok((true, None))
}

/// `abc = 0` implies `ab = 0` or `bc = 0`. Returns the first violating
/// triple in index order.
pub fn is_categorical(t: &SemigroupTable) -> Result<(bool, Option<Witness>)> {
    let zero = t.zero_index().ok_or(Error::NoZero)?;
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            if t.mul(a, b) == zero {
                continue;
            }
            for c in 0..n {
                if categorical_violation(t, zero, a, b, c) {
                    let w = Witness { kind: WitnessKind::NotCategorical, elements: vec![a, b, c] };
                    return Ok((false, Some(w)));
                }
            }
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_maps::{PartialInjection, Point};
    use crate::families::{enumerate_fast, Family};
    use crate::greens::table::{build_table, TableElement};

    fn table(n: Point, fam: Family) -> SemigroupTable {
        let els: Vec<_> = enumerate_fast(n, fam, None).unwrap().collect();
        build_table(&els, false).unwrap()
    }

    fn idx(t: &SemigroupTable, pairs: &[(Point, Point)]) -> usize {
        let n = t.element(0).as_map().unwrap().n();
        let a = PartialInjection::new(n, pairs.iter().copied()).unwrap();
        t.index_of(&TableElement::Map(a)).unwrap()
    }

    #[test]
    fn odp_is_zero_e_unitary() {
        for n in 0..=6 {
            assert_eq!(is_zero_e_unitary(&table(n, Family::Odp)).unwrap(), (true, None));
        }
    }

    #[test]
    fn dp_is_not_zero_e_unitary_from_three() {
        for n in 0..=2 {
            assert!(is_zero_e_unitary(&table(n, Family::Dp)).unwrap().0);
        }
        for n in 3..=6 {
            let t = table(n, Family::Dp);
            let (ok, w) = is_zero_e_unitary(&t).unwrap();
            assert!(!ok);
            assert!(w.unwrap().replay(&t));
        }
    }

    #[test]
    fn dp3_counterexample_pair_replays() {
        let t = table(3, Family::Dp);
        let w = Witness {
            kind: WitnessKind::NotZeroEUnitary,
            elements: vec![idx(&t, &[(1, 1), (2, 2)]), idx(&t, &[(2, 2), (3, 1)])],
        };
        assert!(w.replay(&t));
        let first = is_zero_e_unitary(&t).unwrap().1.unwrap();
        assert_eq!(first.describe(&t), "e=(2 / 2) s=(1 2 / 3 2)");
    }

    #[test]
    fn odp_is_not_categorical() {
        assert!(is_categorical(&table(1, Family::Odp)).unwrap().0);
        for n in 2..=6 {
            let t = table(n, Family::Odp);
            let (ok, w) = is_categorical(&t).unwrap();
            assert!(!ok);
            assert!(w.unwrap().replay(&t));
        }
        let t = table(3, Family::Odp);
        let w = Witness {
            kind: WitnessKind::NotCategorical,
            elements: vec![
                idx(&t, &[(1, 1), (2, 2)]),
                idx(&t, &[(2, 2), (3, 3)]),
                idx(&t, &[(1, 1), (3, 3)]),
            ],
        };
        assert!(w.replay(&t));
    }

    #[test]
    fn trivial_semigroup() {
        let t = build_table(&[PartialInjection::empty(2)], false).unwrap();
        assert_eq!(is_zero_e_unitary(&t).unwrap(), (true, None));
        assert_eq!(is_categorical(&t).unwrap(), (true, None));
    }

    #[test]
    fn no_zero_is_an_error() {
        let t = build_table(&[PartialInjection::identity(2)], false).unwrap();
        assert_eq!(is_zero_e_unitary(&t), Err(Error::NoZero));
        assert_eq!(is_categorical(&t), Err(Error::NoZero));
    }

    #[test]
    fn bogus_witness_does_not_replay() {
        let t = table(3, Family::Odp);
        let w = Witness { kind: WitnessKind::NotCategorical, elements: vec![0, 0, 0] };
        assert!(!w.replay(&t));
        let w = Witness { kind: WitnessKind::NotZeroEUnitary, elements: vec![1, 2, 3] };
        assert!(!w.replay(&t));
        let w = Witness { kind: WitnessKind::NotZeroEUnitary, elements: vec![1, 999] };
        assert!(!w.replay(&t));
    }

    #[test]
    fn witness_json() {
        let t = table(3, Family::Dp);
        let w = is_zero_e_unitary(&t).unwrap().1.unwrap();
        let j = w.to_json(&t);
        assert_eq!(j["kind"], "not_0_E_unitary");
        assert_eq!(j["elements"][0]["element"]["map"], serde_json::json!([[2, 2]]));
    }
}
