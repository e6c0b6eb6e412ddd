use super::{AbelianError, AbelianGroup, Subgroup};

/// Default cap on the number of isomorphisms an enumeration may yield.
pub const DEFAULT_ISOMORPHISM_CAP: u64 = 1_000_000;

/// An additive isomorphism, stored as the images of the source's canonical generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupIsomorphism {
    source: AbelianGroup,
    target: AbelianGroup,
    images: Vec<usize>,
}

impl GroupIsomorphism {
    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    /// Image of `e_i` for each source generator.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.source
            .coords(x)
            .iter()
            .zip(&self.images)
            .fold(0, |acc, (&c, &img)| {
                self.target.add(acc, self.target.scale(c, img))
            })
    }

    /// Full lookup table `x -> phi(x)` over the source.
    pub fn materialize(&self) -> Vec<usize> {
        self.source.elements().map(|x| self.apply(x)).collect()
    }
}

/// Lazy, deterministic enumeration of all isomorphisms `source -> target`.
///
/// Generator images are tried in increasing element order, so maps come out
/// lexicographically ordered by their image tuples. A candidate image for `e_i`
/// must have order exactly `d_i` and must meet the span of the earlier images
/// trivially; every completed tuple is therefore a bijective homomorphism.
pub struct Isomorphisms {
    source: AbelianGroup,
    target: AbelianGroup,
    candidates: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    chosen: Vec<usize>,
    spans: Vec<Subgroup>,
    cap: u64,
    yielded: u64,
    finished: bool,
}

impl Isomorphisms {
    pub fn yielded(&self) -> u64 {
        self.yielded
    }
}

pub fn isomorphisms(source: &AbelianGroup, target: &AbelianGroup, cap: u64) -> Isomorphisms {
    let orders = source.cyclic_orders();
    let candidates: Vec<Vec<usize>> = if source.order() == target.order() {
        orders
            .iter()
            .map(|&d| {
                target
                    .elements()
                    .filter(|&y| target.element_order(y) == d)
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    Isomorphisms {
        finished: source.order() != target.order(),
        cursor: vec![0; source.rank()],
        chosen: Vec::with_capacity(source.rank()),
        spans: vec![Subgroup::zero(target)],
        source: source.clone(),
        target: target.clone(),
        candidates,
        cap,
        yielded: 0,
    }
}

impl Iterator for Isomorphisms {
    type Item = Result<GroupIsomorphism, AbelianError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        let rank = self.source.rank();
        loop {
            let depth = self.chosen.len();
            if depth == rank {
                let images = self.chosen.clone();
                if rank == 0 {
                    self.finished = true;
                } else {
                    self.chosen.pop();
                    self.spans.pop();
                }
                if self.yielded == self.cap {
                    self.finished = true;
                    return Some(Err(AbelianError::SearchBudgetExceeded(self.cap)));
                }
                self.yielded += 1;
                return Some(Ok(GroupIsomorphism {
                    source: self.source.clone(),
                    target: self.target.clone(),
                    images,
                }));
            }
            let d = self.source.cyclic_orders()[depth] as usize;
            let mut advanced = false;
            while self.cursor[depth] < self.candidates[depth].len() {
                let c = self.candidates[depth][self.cursor[depth]];
                self.cursor[depth] += 1;
                let span = &self.spans[depth];
                if span.contains(c) {
                    continue;
                }
                let joined = span.join_element(c);
                if joined.order() == span.order() * d {
                    self.chosen.push(c);
                    self.spans.push(joined);
                    if depth + 1 < rank {
                        self.cursor[depth + 1] = 0;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                if depth == 0 {
                    self.finished = true;
                    return None;
                }
                self.chosen.pop();
                self.spans.pop();
            }
        }
    }
}
