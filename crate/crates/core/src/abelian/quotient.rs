use super::snf::smith_normal_form;
use super::{AbelianError, AbelianGroup, Subgroup};

/// `G / H` identified with its canonical invariant-factor group.
///
/// Cosets are addressed by the index of their image in [`QuotientGroup::structure`].
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    parent: AbelianGroup,
    kernel: Subgroup,
    structure: AbelianGroup,
    projection: Vec<usize>,
    coset_reps: Vec<usize>,
}

impl QuotientGroup {
    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// The canonical group `Z_{d_1} x ... x Z_{d_m}` with `d_1 | ... | d_m`.
    pub fn structure(&self) -> &AbelianGroup {
        &self.structure
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.structure.cyclic_orders().to_vec()
    }

    pub fn order(&self) -> usize {
        self.structure.order()
    }

    /// Coset of `x`, as an element index of [`Self::structure`].
    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Smallest parent element of each coset, indexed by coset.
    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    pub fn lift(&self, coset: usize) -> usize {
        self.coset_reps[coset]
    }

    pub fn is_cyclic(&self) -> bool {
        self.structure.rank() <= 1
    }
}

/// Quotient `G / H` with coset representatives, projection and canonical structure.
pub fn quotient(group: &AbelianGroup, sub: &Subgroup) -> Result<QuotientGroup, AbelianError> {
    if sub.group() != group {
        return Err(AbelianError::NotASubgroup);
    }
    let k = group.rank();
    let mut rows: Vec<Vec<i64>> = group
        .cyclic_orders()
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut row = vec![0i64; k];
            row[i] = d as i64;
            row
        })
        .collect();
    for &h in sub.generators() {
        rows.push(group.coords(h).iter().map(|&c| c as i64).collect());
    }
    let snf = smith_normal_form(&rows, k);
    let columns = snf.nontrivial_columns();
    debug_assert!(
        columns.iter().all(|&(_, d)| d > 1),
        "finite groups have full-rank relations"
    );
    let structure = AbelianGroup::new(columns.iter().map(|&(_, d)| d as u64).collect())?;

    let projection: Vec<usize> = group
        .elements()
        .map(|x| {
            let c = group.coords(x);
            let canon: Vec<i64> = columns
                .iter()
                .map(|&(j, _)| {
                    c.iter()
                        .enumerate()
                        .map(|(i, &ci)| ci as i64 * snf.transform[i][j])
                        .sum()
                })
                .collect();
            structure.index_of_ints(&canon)
        })
        .collect();

    let mut coset_reps = vec![usize::MAX; structure.order()];
    for x in group.elements().rev() {
        coset_reps[projection[x]] = x;
    }
    debug_assert!(coset_reps.iter().all(|&r| r != usize::MAX));
    debug_assert!(group
        .elements()
        .all(|x| (projection[x] == 0) == sub.contains(x)));

    Ok(QuotientGroup {
        parent: group.clone(),
        kernel: sub.clone(),
        structure,
        projection,
        coset_reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::subgroup_generated;

    fn g(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn z8_mod_four_is_z4() {
        let z8 = g(&[8]);
        let h = subgroup_generated(&z8, &[4]).unwrap();
        let q = quotient(&z8, &h).unwrap();
        assert_eq!(q.invariant_factors(), vec![4]);
        assert_eq!(q.coset_reps().len(), 4);
    }

    #[test]
    fn z12_mod_three_is_z3() {
        let z12 = g(&[12]);
        let h = subgroup_generated(&z12, &[3]).unwrap();
        let q = quotient(&z12, &h).unwrap();
        assert_eq!(q.invariant_factors(), vec![3]);
    }

    #[test]
    fn full_quotient_is_trivial() {
        let grp = g(&[2, 6]);
        let q = quotient(&grp, &Subgroup::whole(&grp)).unwrap();
        assert!(q.invariant_factors().is_empty());
        assert_eq!(q.order(), 1);
        assert!(grp.elements().all(|x| q.project(x) == 0));
    }

    #[test]
    fn projection_is_a_homomorphism_with_the_right_kernel() {
        let grp = g(&[2, 4, 6]);
        let h = subgroup_generated(&grp, &[grp.index_of_coords(&[1, 2, 3]).unwrap()]).unwrap();
        let q = quotient(&grp, &h).unwrap();
        let s = q.structure();
        assert_eq!(q.order(), grp.order() / h.order());
        for a in grp.elements() {
            assert_eq!(q.project(a) == 0, h.contains(a));
            for b in grp.elements() {
                assert_eq!(q.project(grp.add(a, b)), s.add(q.project(a), q.project(b)));
            }
        }
        for (c, &rep) in q.coset_reps().iter().enumerate() {
            assert_eq!(q.project(rep), c);
        }
    }

    #[test]
    fn mismatched_parent_is_rejected() {
        let h = Subgroup::zero(&g(&[2]));
        assert!(matches!(
            quotient(&g(&[3]), &h),
            Err(AbelianError::NotASubgroup)
        ));
    }
}
