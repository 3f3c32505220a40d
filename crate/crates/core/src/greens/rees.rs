//! The ideals `L(n,p)` of `ODP_n` and their Rees quotients
//! `Q(n,p) = L(n,p) / L(n,p-1)`.

use std::collections::HashMap;

use super::table::{SemigroupTable, TableElement};
use crate::chain_maps::{PartialInjection, Point};
use crate::error::{Error, Result};
use crate::families::{enumerate_fast, Family};

/// Elements of `ODP_n` of height at most `p`, in canonical order.
pub fn ideal_elements(n: Point, p: Point) -> Result<Vec<PartialInjection>> {
    if p > n {
        return Err(Error::Domain(format!("ideal height {p} exceeds n = {n}")));
    }
    Ok((0..=p)
        .map(|h| enumerate_fast(n, Family::Odp, Some(h)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect())
}

#[derive(Debug, Clone)]
pub struct ReesQuotient {
    pub n: Point,
    pub p: Point,
    /// Index 0 is the adjoined zero; the rest are the height-`p` maps.
    pub table: SemigroupTable,
}

/// `Q(n,p)`: height-`p` elements of `ODP_n` plus a zero; a product is zero
/// whenever the product in `ODP_n` drops below height `p`.
pub fn build_rees_quotient(n: Point, p: Point) -> Result<ReesQuotient> {
    if !(1 <= p && p <= n) {
        return Err(Error::Domain(format!("Rees quotient needs 1 <= p <= n, got n={n}, p={p}")));
    }
    let maps: Vec<PartialInjection> = enumerate_fast(n, Family::Odp, Some(p))?.collect();
    let index: HashMap<&PartialInjection, usize> =
        maps.iter().enumerate().map(|(i, a)| (a, i + 1)).collect();
    let size = maps.len() + 1;
    let mut mult = vec![0; size * size];
    for (i, a) in maps.iter().enumerate() {
        for (j, b) in maps.iter().enumerate() {
            let c = a.compose(b)?;
            if c.height() == p as usize {
                mult[(i + 1) * size + j + 1] = index[&c];
            }
        }
    }
    let elements = std::iter::once(TableElement::Zero)
        .chain(maps.into_iter().map(TableElement::Map))
        .collect();
    Ok(ReesQuotient { n, p, table: SemigroupTable::from_parts(elements, mult, Some(0)) })
}
