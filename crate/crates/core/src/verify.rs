//! Named verification checks over a range of chain sizes, each producing a
//! [`VerificationReport`] with one entry per instance.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::chain_maps::{PartialInjection, Point};
use crate::closed_forms::{self, f_height_odp, verify_phi};
use crate::error::{Error, Result};
use crate::families::{self, enumerate_fast, enumerate_oracle, is_member, Family, Statistic};
use crate::greens::{
    self, build_rees_quotient, build_table, greens_classes_criterion, greens_classes_oracle,
    ideal_elements, is_categorical, is_zero_e_unitary, Relation, SemigroupTable, TableElement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Closure,
    FixTrichotomy,
    Dichotomy,
    OracleEquivalence,
    Formulas,
    Recurrence,
    SumIdentity,
    PhiBijection,
    Greens,
    Eunitary,
    Categorical,
    Rees,
    InverseLaws,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::Closure,
        Check::FixTrichotomy,
        Check::Dichotomy,
        Check::OracleEquivalence,
        Check::Formulas,
        Check::Recurrence,
        Check::SumIdentity,
        Check::PhiBijection,
        Check::Greens,
        Check::Eunitary,
        Check::Categorical,
        Check::Rees,
        Check::InverseLaws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Closure => "closure",
            Check::FixTrichotomy => "fix-trichotomy",
            Check::Dichotomy => "dichotomy",
            Check::OracleEquivalence => "oracle-equivalence",
            Check::Formulas => "formulas",
            Check::Recurrence => "recurrence",
            Check::SumIdentity => "sum-identity",
            Check::PhiBijection => "phi-bijection",
            Check::Greens => "greens",
            Check::Eunitary => "eunitary",
            Check::Categorical => "categorical",
            Check::Rees => "rees",
            Check::InverseLaws => "inverse-laws",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// Per-element lemmas about fixed points and order of partial isometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleLemma {
    /// The number of fixed points is 0, 1 or the height.
    FixTrichotomy,
    /// More than one fixed point makes the map idempotent.
    ManyFixedIdempotent,
    /// Fixing 1 or n makes the map a partial identity.
    EndpointFixIdentity,
    /// A single fixed point `i` forces `x + xa = 2i` on the whole domain.
    SingleFixReflects,
    /// ODP only: `n` in both domain and image is fixed.
    TopPointFixed,
    /// ODP only: any fixed point makes the map idempotent.
    OdpFixIdempotent,
    /// Every partial isometry is order-preserving or order-reversing.
    Dichotomy,
}

impl CycleLemma {
    pub const ALL: [CycleLemma; 7] = [
        CycleLemma::FixTrichotomy,
        CycleLemma::ManyFixedIdempotent,
        CycleLemma::EndpointFixIdentity,
        CycleLemma::SingleFixReflects,
        CycleLemma::TopPointFixed,
        CycleLemma::OdpFixIdempotent,
        CycleLemma::Dichotomy,
    ];

    /// Whether the lemma is claimed for members of `fam`.
    pub fn applies_to(self, fam: Family) -> bool {
        match self {
            CycleLemma::TopPointFixed | CycleLemma::OdpFixIdempotent => fam == Family::Odp,
            _ => true,
        }
    }

    pub fn holds(self, a: &PartialInjection) -> bool {
        let stats = a.statistics();
        let n = a.n();
        match self {
            CycleLemma::FixTrichotomy => matches!(stats.fix_count, 0 | 1) || stats.fix_count == stats.height,
            CycleLemma::ManyFixedIdempotent => stats.fix_count <= 1 || a.is_idempotent(),
            CycleLemma::EndpointFixIdentity => {
                let fixes_end = stats.fix_set.first() == Some(&1) || stats.fix_set.last() == Some(&n);
                !fixes_end || a.is_partial_identity()
            }
            CycleLemma::SingleFixReflects => match stats.fix_set.as_slice() {
                &[i] => a.pairs().iter().all(|&(x, y)| x + y == 2 * i),
                _ => true,
            },
            CycleLemma::TopPointFixed => {
                let top_in_both = a.apply(n).is_some() && a.image().last() == Some(&n);
                !top_in_both || a.apply(n) == Some(n)
            }
            CycleLemma::OdpFixIdempotent => stats.fix_count == 0 || a.is_idempotent(),
            CycleLemma::Dichotomy => a.is_order_preserving() || a.is_order_reversing(),
        }
    }
}

/// First member of `fam` (in canonical order) violating `lemma`.
pub fn find_lemma_violation(n: Point, fam: Family, lemma: CycleLemma) -> Result<Option<PartialInjection>> {
    Ok(enumerate_fast(n, fam, None)?.find(|a| !lemma.holds(a)))
}

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub params: Map<String, Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Human-readable form of `witness`.
    #[serde(skip)]
    pub note: Option<String>,
}

impl Instance {
    fn new(params: Value, pass: bool) -> Self {
        let params = match params {
            Value::Object(m) => m,
            other => Map::from_iter([("value".to_string(), other)]),
        };
        Instance { params, pass, witness: None, note: None }
    }

    fn with_witness(mut self, witness: Value, note: impl Into<String>) -> Self {
        self.witness = Some(witness);
        self.note = Some(note.into());
        self
    }

    pub fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                v => format!("{k}={v}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: Check,
    pub n_range: [Point; 2],
    pub instances: Vec<Instance>,
    pub pass: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&Instance> {
        self.instances.iter().find(|i| !i.pass)
    }
}

/// Parses `a..b` or `a..=b` (both inclusive) or a single `n`.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<Point>> {
    let num = |t: &str| {
        t.trim()
            .parse::<Point>()
            .map_err(|_| Error::Parse(format!("bad n-range {s:?}")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(Error::Parse(format!("empty n-range {s:?}")));
    }
    Ok(lo..=hi)
}

pub fn run_check(check: Check, range: RangeInclusive<Point>) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut instances = Vec::new();
    for n in range.clone() {
        match check {
            Check::Closure => closure(n, &mut instances)?,
            Check::FixTrichotomy => lemmas(n, &mut instances, |l| l != CycleLemma::Dichotomy)?,
            Check::Dichotomy => lemmas(n, &mut instances, |l| l == CycleLemma::Dichotomy)?,
            Check::OracleEquivalence => oracle_equivalence(n, &mut instances)?,
            Check::Formulas => formulas(n, &mut instances)?,
            Check::Recurrence => recurrence(n, &mut instances)?,
            Check::SumIdentity => {
                if n >= 2 {
                    let ok = closed_forms::verify_sum_identity(n)?;
                    instances.push(Instance::new(json!({ "n": n }), ok));
                }
            }
            Check::PhiBijection => phi(n, &mut instances)?,
            Check::Greens => greens_check(n, &mut instances)?,
            Check::Eunitary => eunitary(n, &mut instances)?,
            Check::Categorical => categorical(n, &mut instances)?,
            Check::Rees => rees(n, &mut instances)?,
            Check::InverseLaws => inverse_laws(n, &mut instances)?,
        }
    }
    let pass = instances.iter().all(|i| i.pass);
    Ok(VerificationReport {
        check,
        n_range: [*range.start(), *range.end()],
        instances,
        pass,
        wall_time: start.elapsed(),
    })
}

fn members(n: Point, fam: Family) -> Result<Vec<PartialInjection>> {
    Ok(enumerate_fast(n, fam, None)?.collect())
}

fn map_json(a: &PartialInjection) -> Value {
    serde_json::to_value(a).expect("maps serialize")
}

fn table_of(n: Point, fam: Family) -> Result<SemigroupTable> {
    build_table(&members(n, fam)?, false)
}

fn closure(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    for fam in Family::ALL {
        let els = members(n, fam)?;
        let bad = els.iter().find_map(|a| {
            els.iter().find_map(|b| {
                let c = a.compose(b).ok()?;
                (!is_member(&c, fam)).then(|| (a.clone(), b.clone(), c))
            })
        });
        let inst = Instance::new(json!({ "n": n, "family": fam }), bad.is_none());
        out.push(match bad {
            Some((a, b, c)) => inst.with_witness(
                json!({ "a": map_json(&a), "b": map_json(&b), "product": map_json(&c) }),
                format!("a={a} b={b} ab={c}"),
            ),
            None => inst,
        });
    }
    Ok(())
}

fn lemmas(n: Point, out: &mut Vec<Instance>, select: impl Fn(CycleLemma) -> bool) -> Result<()> {
    for fam in Family::ALL {
        for lemma in CycleLemma::ALL.into_iter().filter(|&l| select(l) && l.applies_to(fam)) {
            let bad = find_lemma_violation(n, fam, lemma)?;
            let inst = Instance::new(json!({ "n": n, "family": fam, "lemma": lemma }), bad.is_none());
            out.push(match bad {
                Some(a) => inst.with_witness(json!({ "element": map_json(&a) }), a.to_string()),
                None => inst,
            });
        }
    }
    Ok(())
}

fn oracle_equivalence(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    for fam in Family::ALL {
        let fast = members(n, fam)?;
        let oracle = enumerate_oracle(n, fam)?;
        let inst = Instance::new(json!({ "n": n, "family": fam }), fast == oracle);
        let diff = fast
            .iter()
            .find(|a| oracle.binary_search(a).is_err())
            .or_else(|| oracle.iter().find(|a| fast.binary_search(a).is_err()));
        out.push(match diff {
            Some(a) => inst.with_witness(json!({ "element": map_json(a) }), format!("only one side has {a}")),
            None => inst,
        });
    }
    Ok(())
}

fn formulas(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    for fam in Family::ALL {
        let hist = families::histograms(n, fam)?;
        let mut mismatch = None;
        'stats: for stat in [Statistic::Height, Statistic::Fix] {
            for k in 0..=n {
                let closed = closed_forms::f_stat(fam, stat, n, k)?.value;
                let counted = hist.get(stat)[k as usize];
                if closed != counted {
                    mismatch = Some((stat.to_string(), k, counted, closed));
                    break 'stats;
                }
            }
        }
        let closed_order = closed_forms::order_closed(fam, n)?.value;
        if mismatch.is_none() && closed_order != hist.order() {
            mismatch = Some(("order".into(), n, hist.order(), closed_order));
        }
        let inst = Instance::new(json!({ "n": n, "family": fam }), mismatch.is_none());
        out.push(match mismatch {
            Some((stat, k, counted, closed)) => inst.with_witness(
                json!({ "statistic": stat, "k": k, "empirical": counted, "closed_form": closed }),
                format!("{stat} k={k}: counted {counted}, formula {closed}"),
            ),
            None => inst,
        });
    }
    Ok(())
}

fn recurrence(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    for fam in Family::ALL {
        for p in 3..=n {
            let ok = closed_forms::recurrence_check(n, p, fam)?;
            out.push(Instance::new(json!({ "n": n, "p": p, "family": fam }), ok));
        }
    }
    Ok(())
}

fn phi(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    for p in 3..=n {
        let r = verify_phi(n, p)?;
        let counts_ok = (r.embedded + r.touching) as u64 == f_height_odp(n, p)?.value
            && r.sources == r.touching;
        let inst = Instance::new(json!({ "n": n, "p": p }), r.ok() && counts_ok);
        out.push(if inst.pass {
            inst
        } else {
            let note = format!("{r:?}");
            inst.with_witness(serde_json::to_value(&r).expect("report serializes"), note)
        });
    }
    Ok(())
}

fn greens_check(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    for fam in Family::ALL {
        let els = members(n, fam)?;
        let table = build_table(&els, false)?;
        for rel in Relation::GREEN {
            let ok = greens_classes_criterion(&els, fam, rel) == greens_classes_oracle(&table, rel)?;
            out.push(Instance::new(json!({ "n": n, "family": fam, "relation": rel }), ok));
        }
        let commute = greens::r_l_commute(&table)?;
        out.push(Instance::new(json!({ "n": n, "family": fam, "relation": "R∘L=L∘R" }), commute));
        let max_h = match fam {
            Family::Odp => 1,
            Family::Dp => 2,
        };
        let sizes = greens_classes_criterion(&els, fam, Relation::H).sizes();
        let ok = sizes.iter().all(|&s| (1..=max_h).contains(&s));
        out.push(Instance::new(json!({ "n": n, "family": fam, "relation": "H-sizes" }), ok));
    }
    Ok(())
}

fn witness_instance(
    params: Value,
    expected: bool,
    (holds, witness): (bool, Option<greens::Witness>),
    table: &SemigroupTable,
) -> Instance {
    let replays = witness.as_ref().is_none_or(|w| w.replay(table));
    let inst = Instance::new(params, holds == expected && replays);
    match witness {
        Some(w) => {
            let note = w.describe(table);
            inst.with_witness(w.to_json(table), note)
        }
        None => inst,
    }
}

fn eunitary(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    for fam in Family::ALL {
        let table = table_of(n, fam)?;
        // DP_n picks up a reflection fixing an interior point once n >= 3
        let expected = fam == Family::Odp || n < 3;
        let res = is_zero_e_unitary(&table)?;
        out.push(witness_instance(json!({ "n": n, "family": fam }), expected, res, &table));
    }
    Ok(())
}

fn categorical(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    let table = table_of(n, Family::Odp)?;
    let res = is_categorical(&table)?;
    out.push(witness_instance(json!({ "n": n, "family": Family::Odp }), n < 2, res, &table));
    for p in 1..=n {
        let q = build_rees_quotient(n, p)?;
        let res = is_categorical(&q.table)?;
        out.push(witness_instance(json!({ "n": n, "quotient_p": p }), true, res, &q.table));
    }
    Ok(())
}

fn rees(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    let odp = table_of(n, Family::Odp)?;
    for p in 0..=n {
        let idx: Vec<usize> = ideal_elements(n, p)?
            .into_iter()
            .map(|a| odp.index_of(&TableElement::Map(a)).expect("ideal lies in ODP_n"))
            .collect();
        out.push(Instance::new(json!({ "n": n, "ideal_p": p }), odp.is_two_sided_ideal(&idx)));
    }
    for p in 1..=n {
        let q = build_rees_quotient(n, p)?;
        let size_ok = q.table.len() as u64 == f_height_odp(n, p)?.value + 1;
        let assoc = q.table.check_associative().is_ok();
        let inverse = q.table.is_inverse();
        let (eu, w1) = is_zero_e_unitary(&q.table)?;
        let (cat, w2) = is_categorical(&q.table)?;
        let inst = Instance::new(json!({ "n": n, "quotient_p": p }), size_ok && assoc && inverse && eu && cat);
        out.push(match w1.or(w2) {
            Some(w) => {
                let note = w.describe(&q.table);
                inst.with_witness(w.to_json(&q.table), note)
            }
            None => inst,
        });
    }
    Ok(())
}

fn inverse_laws(n: Point, out: &mut Vec<Instance>) -> Result<()> {
    for fam in Family::ALL {
        let els = members(n, fam)?;
        let bad = els.iter().find(|a| {
            let ai = a.inverse();
            let aia = a.compose(&ai).and_then(|x| x.compose(a));
            let iai = ai.compose(a).and_then(|x| x.compose(&ai));
            aia.as_ref() != Ok(*a) || iai != Ok(ai.clone()) || ai.inverse() != **a || !is_member(&ai, fam)
        });
        let table = build_table(&els, false)?;
        let ok = bad.is_none() && table.check_associative().is_ok() && table.is_inverse();
        let inst = Instance::new(json!({ "n": n, "family": fam }), ok);
        out.push(match bad {
            Some(a) => inst.with_witness(json!({ "element": map_json(a) }), a.to_string()),
            None => inst,
        });
    }
    Ok(())
}
