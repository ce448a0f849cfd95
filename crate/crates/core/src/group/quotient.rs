use std::sync::Arc;

use super::{generate_group_with_cap, FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `G / N` acting on the right cosets of `N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    /// Parent element index -> quotient element index.
    pub projection: Vec<u32>,
    pub kernel: Subgroup,
}

impl FiniteGroup {
    pub fn quotient_group(self: &Arc<Self>, normal: &Subgroup) -> Result<Quotient> {
        if !Arc::ptr_eq(normal.parent(), self) {
            return Err(Error::SubgroupMismatch);
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut coset_rep = Vec::new();
        for x in self.all() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = coset_rep.len() as u32;
            coset_rep.push(x);
            for &h in normal.members() {
                coset_of[self.mul(h as usize, x)] = c;
            }
        }
        let k = coset_rep.len();
        let gens: Vec<Permutation> = self
            .generator_indices()
            .iter()
            .map(|&g| {
                let images = coset_rep
                    .iter()
                    .map(|&r| coset_of[self.mul(r, g as usize)] as usize)
                    .collect();
                Permutation::new(images).expect("coset action is a permutation")
            })
            .collect();
        let group = generate_group_with_cap(k, gens, usize::MAX)?;

        // Extend the projection along the BFS tree of the parent.
        let mut projection = vec![u32::MAX; n];
        projection[0] = 0;
        for x in self.all() {
            for gi in 0..self.generators().len() {
                let y = self.mul_generator(x, gi);
                if projection[y] == u32::MAX {
                    projection[y] = group.mul_generator(projection[x] as usize, gi) as u32;
                }
            }
        }
        Ok(Quotient {
            group,
            projection,
            kernel: normal.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;

    #[test]
    fn quotient_of_s3_by_a3() {
        let g = generate_group(
            3,
            vec![
                Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
                Permutation::from_cycles(3, &[vec![0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        let a3 = g.derived_subgroup();
        let q = g.quotient_group(&a3).unwrap();
        assert_eq!(q.group.order(), 2);
        for a in g.all() {
            for b in g.all() {
                assert_eq!(
                    q.projection[g.mul(a, b)] as usize,
                    q.group.mul(q.projection[a] as usize, q.projection[b] as usize)
                );
            }
        }
        let whole = g.quotient_group(&Subgroup::whole(&g)).unwrap();
        assert_eq!(whole.group.order(), 1);
        let t = crate::group::subgroup_generated(&g, &[g.generator_indices()[1] as usize]);
        assert_eq!(g.quotient_group(&t).unwrap_err(), Error::NotNormal);
    }
}
