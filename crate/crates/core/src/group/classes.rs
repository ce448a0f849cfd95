use super::FiniteGroup;

/// Conjugacy classes ordered by their smallest element index.
#[derive(Debug, Clone)]
pub struct ConjugacyClassSet {
    pub class_of: Vec<u32>,
    /// Minimal element index in each class.
    pub representatives: Vec<u32>,
    pub sizes: Vec<usize>,
    pub rep_orders: Vec<u64>,
    /// Sorted element indices of each class.
    pub members: Vec<Vec<u32>>,
    /// Class containing the inverses of each class.
    pub inverse_class: Vec<u32>,
}

impl ConjugacyClassSet {
    pub(super) fn compute(group: &FiniteGroup) -> Self {
        let n = group.order();
        let gens: Vec<usize> = group.generator_indices().iter().map(|&g| g as usize).collect();
        let mut class_of = vec![u32::MAX; n];
        let mut representatives = Vec::new();
        let mut members = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let c = representatives.len() as u32;
            representatives.push(x as u32);
            class_of[x] = c;
            let mut orbit = vec![x as u32];
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head] as usize;
                head += 1;
                for &g in &gens {
                    let z = group.conjugate(y, g);
                    if class_of[z] == u32::MAX {
                        class_of[z] = c;
                        orbit.push(z as u32);
                    }
                }
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let sizes = members.iter().map(Vec::len).collect();
        let rep_orders = representatives
            .iter()
            .map(|&r| group.element_order(r as usize))
            .collect();
        let inverse_class = representatives
            .iter()
            .map(|&r| class_of[group.inverse(r as usize)])
            .collect();
        ConjugacyClassSet {
            class_of,
            representatives,
            sizes,
            rep_orders,
            members,
            inverse_class,
        }
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c] as usize
    }

    /// Class of `rep(c)^k` for each exponent `k` in `0..rep_orders[c]`.
    pub fn power_classes(&self, group: &FiniteGroup, c: usize) -> Vec<usize> {
        let g = self.representative(c);
        let mut out = Vec::with_capacity(self.rep_orders[c] as usize);
        let mut y = 0;
        for _ in 0..self.rep_orders[c] {
            out.push(self.class_of(y));
            y = group.mul(y, g);
        }
        out
    }
}
