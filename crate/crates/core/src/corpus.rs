//! The builtin test corpus: every builtin ring up to a given order, with its subrings.

use rayon::prelude::*;

use crate::ring::{center, enumerate_subrings, Builtin, FiniteRing, RingError, Subring};

/// Rings up to this order get every subring; larger ones get `{0}`, `Z(R)` and `R`.
pub const SUBRING_ENUMERATION_LIMIT: usize = 32;

/// Default bound for the quick corpus.
pub const QUICK_ORDER: usize = 16;

/// Default bound for the full corpus.
pub const FULL_ORDER: usize = 64;

/// A ring together with the subrings a sweep quantifies over.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub ring: FiniteRing,
    pub subrings: Vec<Subring>,
    /// Whether `subrings` lists every subring.
    pub exhaustive: bool,
}

impl CorpusEntry {
    pub fn new(ring: FiniteRing) -> Result<Self, RingError> {
        if ring.order() <= SUBRING_ENUMERATION_LIMIT {
            let subrings = enumerate_subrings(&ring, SUBRING_ENUMERATION_LIMIT)?;
            return Ok(Self {
                ring,
                subrings,
                exhaustive: true,
            });
        }
        let mut subrings = vec![ring.zero_subring(), center(&ring), ring.whole()];
        subrings.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        subrings.dedup();
        Ok(Self {
            ring,
            subrings,
            exhaustive: false,
        })
    }

    pub fn ideals(&self) -> impl Iterator<Item = &Subring> {
        self.subrings.iter().filter(|s| s.is_ideal())
    }
}

/// Invariant-factor lists `d_1 | ... | d_m` (each at least 2) with product `n`.
pub fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    fn extend(rest: u64, last: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            let mut f = prefix.clone();
            f.reverse();
            out.push(f);
            return;
        }
        // Build from the largest factor down; each next factor divides the previous.
        for d in 2..=rest.min(last) {
            if rest.is_multiple_of(d) && last.is_multiple_of(d) {
                prefix.push(d);
                extend(rest / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for d in 2..=n {
        if n.is_multiple_of(d) {
            let mut prefix = vec![d];
            extend(n / d, d, &mut prefix, &mut out);
        }
    }
    out.retain(|f| f.iter().product::<u64>() == n);
    out.sort();
    out
}

const DIRECT_SUMS: &[&str] = &[
    "direct_sum(zn(2),mat_row(2))",
    "direct_sum(zn(3),mat_row(2))",
    "direct_sum(mat_row(2),zn(4))",
    "direct_sum(mat_row(2),mat_row(2))",
    "direct_sum(mat_upper_tri(2),zn(2))",
    "direct_sum(mat_row(3),zn(2))",
    "direct_sum(mat_upper_tri(2),zn(3))",
    "direct_sum(mat_row(2),mat_upper_tri(2))",
    "direct_sum(mat_upper_tri(2),mat_upper_tri(2))",
];

/// Every builtin constructor of order at most `max_order`, in a fixed order.
pub fn builtin_family(max_order: usize) -> Vec<Builtin> {
    let max = max_order as u64;
    let mut out: Vec<Builtin> = (1..=max).map(Builtin::Zn).collect();
    for n in 2..=max {
        out.extend(abelian_types(n).into_iter().map(Builtin::ZeroRing));
    }
    let moduli = || 2..=max;
    out.extend(moduli().map(Builtin::MatRow).filter(|b| b.order() <= max));
    out.extend(
        moduli()
            .map(Builtin::MatUpperTri)
            .filter(|b| b.order() <= max),
    );
    out.extend(
        moduli()
            .map(Builtin::MatScalarAmbient)
            .filter(|b| b.order() <= max),
    );
    out.extend(
        moduli()
            .map(|m| Builtin::MatFull { n: 2, m })
            .filter(|b| b.order() <= max),
    );
    out.extend(
        DIRECT_SUMS
            .iter()
            .map(|s| s.parse::<Builtin>().expect("corpus direct sums parse"))
            .filter(|b| b.order() <= max),
    );
    out
}

/// Builds the corpus for [`builtin_family`]`(max_order)`, in the same order.
pub fn builtin_corpus(max_order: usize) -> Result<Vec<CorpusEntry>, RingError> {
    builtin_family(max_order)
        .par_iter()
        .map(|b| CorpusEntry::new(b.build()?))
        .collect()
}
