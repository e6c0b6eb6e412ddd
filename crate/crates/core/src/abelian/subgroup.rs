use std::collections::{HashSet, VecDeque};

use super::{AbelianError, AbelianGroup};

/// Default order cap for exhaustive subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 64;

/// A subgroup stored with its full, sorted element set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: AbelianGroup,
    generators: Vec<usize>,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// The trivial subgroup `{0}`.
    pub fn zero(group: &AbelianGroup) -> Self {
        Self::from_sorted(group.clone(), Vec::new(), vec![0])
    }

    pub fn whole(group: &AbelianGroup) -> Self {
        let gens = (0..group.rank()).map(|i| group.basis(i)).collect();
        Self::from_sorted(group.clone(), gens, group.elements().collect())
    }

    fn from_sorted(group: AbelianGroup, generators: Vec<usize>, elements: Vec<usize>) -> Self {
        let mut member = vec![false; group.order()];
        for &x in &elements {
            member[x] = true;
        }
        Self {
            group,
            generators,
            elements,
            member,
        }
    }

    /// Wraps an element set after checking that it is a subgroup.
    pub fn from_elements(group: &AbelianGroup, elements: &[usize]) -> Result<Self, AbelianError> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if let Some(&bad) = elems.iter().find(|&&x| !group.contains_index(x)) {
            return Err(AbelianError::IndexOutOfRange(bad));
        }
        let mut member = vec![false; group.order()];
        for &x in &elems {
            member[x] = true;
        }
        let closed = member[0]
            && elems
                .iter()
                .all(|&a| member[group.neg(a)] && elems.iter().all(|&b| member[group.add(a, b)]));
        if !closed {
            return Err(AbelianError::NotASubgroup);
        }
        let generators = greedy_generators(group, &elems);
        Ok(Self {
            group: group.clone(),
            generators,
            elements: elems,
            member,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.elements.iter().all(|&x| other.contains(x))
    }

    /// Invariant factors of the subgroup, read off its element-order statistics.
    ///
    /// For each prime `p`, the counts `#{x : p^k x = 0}` determine the
    /// partition of the `p`-primary part; the primary parts are then merged.
    pub fn invariant_factors(&self) -> Vec<u64> {
        invariant_factors_from_orders(self.elements.iter().map(|&x| self.group.element_order(x)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors().len() <= 1
    }

    /// `<self, g>`, built as the union of the cosets `self + k g`.
    pub fn join_element(&self, g: usize) -> Subgroup {
        if self.contains(g) {
            return self.clone();
        }
        let mut member = self.member.clone();
        let mut elements = self.elements.clone();
        let mut shift = g;
        while !member[shift] {
            for &h in &self.elements {
                let x = self.group.add(h, shift);
                member[x] = true;
                elements.push(x);
            }
            shift = self.group.add(shift, g);
        }
        elements.sort_unstable();
        let mut generators = self.generators.clone();
        generators.push(g);
        Subgroup {
            group: self.group.clone(),
            generators,
            elements,
            member,
        }
    }
}

/// Invariant factors of a finite abelian group given the multiset of its element orders.
pub fn invariant_factors_from_orders(orders: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let orders: Vec<u64> = orders.into_iter().collect();
    let n = orders.len() as u64;
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            primes.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    // exponents[p] = partition of the p-primary part, largest first.
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for &p in &primes {
        let mut p_part = 1;
        while n.is_multiple_of(p_part * p) {
            p_part *= p;
        }
        let mut at_least = Vec::new();
        let mut prev_log = 0u32;
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
            let log = count.ilog(p);
            at_least.push((log - prev_log) as usize);
            prev_log = log;
            if count == p_part {
                break;
            }
        }
        let parts = at_least[0];
        let powers: Vec<u64> = (1..=parts)
            .map(|i| {
                let exp = at_least.iter().filter(|&&c| c >= i).count() as u32;
                p.pow(exp)
            })
            .collect();
        columns.push(powers);
    }
    let m = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..m)
        .map(|i| {
            columns
                .iter()
                .map(|col| col.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

fn greedy_generators(group: &AbelianGroup, elems: &[usize]) -> Vec<usize> {
    let mut span = Subgroup::zero(group);
    for &x in elems {
        if !span.contains(x) {
            span = span.join_element(x);
        }
    }
    span.generators
}

/// Smallest subgroup of `group` containing `gens`.
pub fn subgroup_generated(group: &AbelianGroup, gens: &[usize]) -> Result<Subgroup, AbelianError> {
    if let Some(&bad) = gens.iter().find(|&&x| !group.contains_index(x)) {
        return Err(AbelianError::IndexOutOfRange(bad));
    }
    let mut span = Subgroup::zero(group);
    for &g in gens {
        span = span.join_element(g);
    }
    Ok(span)
}

/// `|G : H|`.
pub fn index(group: &AbelianGroup, sub: &Subgroup) -> Result<usize, AbelianError> {
    if sub.group() != group {
        return Err(AbelianError::NotASubgroup);
    }
    Ok(group.order() / sub.order())
}

/// Every subgroup exactly once, sorted by `(order, elements)`.
pub fn all_subgroups(group: &AbelianGroup, cap: usize) -> Result<Vec<Subgroup>, AbelianError> {
    if group.order() > cap {
        return Err(AbelianError::CapExceeded {
            order: group.order(),
            cap,
        });
    }
    // Cyclic subgroups, deduplicated, as join candidates.
    let mut cyclic_gens = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in group.elements().skip(1) {
        let c = Subgroup::zero(group).join_element(x);
        if seen_cyclic.insert(c.elements.clone()) {
            cyclic_gens.push(x);
        }
    }

    let start = Subgroup::zero(group);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(start.elements.clone());
    let mut queue = VecDeque::from([start]);
    let mut found = Vec::new();
    while let Some(h) = queue.pop_front() {
        for &g in &cyclic_gens {
            if h.contains(g) {
                continue;
            }
            let j = h.join_element(g);
            if seen.insert(j.elements.clone()) {
                queue.push_back(j);
            }
        }
        found.push(h);
    }
    found.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(found)
}
