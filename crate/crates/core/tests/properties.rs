use chainisom::families::{enumerate_fast, Family};
use chainisom::verify::CycleLemma;
use chainisom::{PartialInjection, Point};
use proptest::prelude::*;

/// Random partial injection on a chain of size up to 12.
fn partial_injection() -> impl Strategy<Value = PartialInjection> {
    (0u32..=12).prop_flat_map(|n| {
        let points: Vec<Point> = (1..=n).collect();
        (
            Just(n),
            proptest::sample::subsequence(points.clone(), 0..=n as usize),
            Just(points).prop_shuffle(),
        )
            .prop_map(|(n, dom, img)| PartialInjection::new(n, dom.into_iter().zip(img)).unwrap())
    })
}

fn same_chain_triple() -> impl Strategy<Value = [PartialInjection; 3]> {
    (1u32..=9).prop_flat_map(|n| {
        let one = move || {
            let points: Vec<Point> = (1..=n).collect();
            (
                proptest::sample::subsequence(points.clone(), 0..=n as usize),
                Just(points).prop_shuffle(),
            )
                .prop_map(move |(dom, img)| PartialInjection::new(n, dom.into_iter().zip(img)).unwrap())
        };
        [one(), one(), one()]
    })
}

proptest! {
    #[test]
    fn serialized_forms_round_trip(a in partial_injection()) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(&serde_json::from_str::<PartialInjection>(&json).unwrap(), &a);
        prop_assert_eq!(&PartialInjection::from_matrix(a.n(), &a.to_string()).unwrap(), &a);
        prop_assert_eq!(&PartialInjection::new(a.n(), a.pairs().iter().rev().copied()).unwrap(), &a);
    }

    #[test]
    fn inverse_laws_hold_in_i_n(a in partial_injection()) {
        let ai = a.inverse();
        prop_assert_eq!(&ai.inverse(), &a);
        prop_assert_eq!(&a.compose(&ai).unwrap().compose(&a).unwrap(), &a);
        prop_assert_eq!(&ai.compose(&a).unwrap().compose(&ai).unwrap(), &ai);
        prop_assert_eq!(a.is_idempotent(), a.is_partial_identity());
        prop_assert!(a.compose(&ai).unwrap().is_partial_identity());
    }

    #[test]
    fn composition_is_associative(t in same_chain_triple()) {
        let [a, b, c] = t;
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn statistics_are_consistent(a in partial_injection()) {
        let s = a.statistics();
        prop_assert_eq!(s.height, a.pairs().len());
        prop_assert!(s.fix_count <= s.height);
        prop_assert_eq!(s.fix_count, s.fix_set.len());
        prop_assert_eq!(s.right_waist.is_none(), a.is_empty());
        prop_assert_eq!(s.left_shoulder.is_none(), a.is_empty());
        prop_assert_eq!(a.domain_signature().0.len(), s.height.saturating_sub(1));
    }

    #[test]
    fn isometries_are_monotone_one_way(a in partial_injection()) {
        if a.is_isometry() {
            prop_assert!(a.is_order_preserving() || a.is_order_reversing());
        }
    }
}

fn members(n: Point, fam: Family) -> Vec<PartialInjection> {
    enumerate_fast(n, fam, None).unwrap().collect()
}

#[test]
fn associativity_exhaustive_on_dp4() {
    let els = members(4, Family::Dp);
    for a in &els {
        for b in &els {
            let ab = a.compose(b).unwrap();
            for c in &els {
                assert_eq!(ab.compose(c).unwrap(), a.compose(&b.compose(c).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn inverse_laws_exhaustive_on_dp5() {
    for a in members(5, Family::Dp) {
        let ai = a.inverse();
        assert_eq!(a.compose(&ai).unwrap().compose(&a).unwrap(), a);
        assert_eq!(ai.compose(&a).unwrap().compose(&ai).unwrap(), ai);
    }
}

#[test]
fn inverse_of_dp4_is_an_involution() {
    for a in members(4, Family::Dp) {
        assert_eq!(a.inverse().inverse(), a);
    }
}

#[test]
fn families_are_closed() {
    for n in 0..=6 {
        for fam in Family::ALL {
            let els = members(n, fam);
            for a in &els {
                for b in &els {
                    let c = a.compose(b).unwrap();
                    assert!(c.is_isometry());
                    if fam == Family::Odp {
                        assert!(c.is_order_preserving());
                    }
                }
            }
        }
    }
}

#[test]
fn cycle_structure_lemmas_up_to_seven() {
    for n in 0..=7 {
        for fam in Family::ALL {
            for a in enumerate_fast(n, fam, None).unwrap() {
                for lemma in CycleLemma::ALL.into_iter().filter(|l| l.applies_to(fam)) {
                    assert!(lemma.holds(&a), "{lemma:?} fails for {a} in {fam}_{n}");
                }
            }
        }
    }
}
