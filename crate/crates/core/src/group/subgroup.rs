use std::sync::{Arc, OnceLock};

use super::{generate_group_with_cap, FiniteGroup};
use crate::error::{Error, Result};
use crate::numtheory;

/// A subgroup stored as a sorted set of parent element indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<u32>,
    mask: Vec<bool>,
    as_group: OnceLock<Arc<SubgroupGroup>>,
}

/// A subgroup realized as a group in its own right.
#[derive(Debug)]
pub struct SubgroupGroup {
    pub group: Arc<FiniteGroup>,
    /// Own element index -> parent element index.
    pub embedding: Vec<u32>,
    /// Parent element index -> own element index, `u32::MAX` outside.
    pub back: Vec<u32>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.order(), self.parent.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    fn from_mask(parent: &Arc<FiniteGroup>, mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i as u32))
            .collect();
        Subgroup {
            parent: parent.clone(),
            members,
            mask,
            as_group: OnceLock::new(),
        }
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup::from_mask(parent, vec![true; parent.order()])
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        Subgroup::from_mask(parent, mask)
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x as usize))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| a && b)
            .collect();
        Subgroup::from_mask(&self.parent, mask)
    }

    /// The subgroup as a permutation group of its own, built once and cached.
    pub fn as_group(&self) -> &Arc<SubgroupGroup> {
        self.as_group.get_or_init(|| {
            let gens = small_generating_set(&self.parent, &self.members);
            let perms = gens.iter().map(|&g| self.parent.element(g)).collect();
            let group = generate_group_with_cap(self.parent.degree(), perms, usize::MAX)
                .expect("subgroup closure cannot exceed its parent");
            let embedding: Vec<u32> = group
                .all()
                .map(|x| {
                    self.parent
                        .index_of_images(group.images(x))
                        .expect("subgroup element lies in parent") as u32
                })
                .collect();
            let mut back = vec![u32::MAX; self.parent.order()];
            for (i, &e) in embedding.iter().enumerate() {
                back[e as usize] = i as u32;
            }
            debug_assert_eq!(embedding.len(), self.order());
            Arc::new(SubgroupGroup {
                group,
                embedding,
                back,
            })
        })
    }
}

/// Generators picked greedily: a member joins when it is not yet in the span.
fn small_generating_set(group: &FiniteGroup, members: &[u32]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![false; group.order()];
    span[0] = true;
    for &x in members {
        if !span[x as usize] {
            gens.push(x as usize);
            span = closure_mask(group, &gens);
        }
    }
    gens
}

fn closure_mask(group: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; group.order()];
    mask[0] = true;
    let mut list = vec![0usize];
    let mut head = 0;
    while head < list.len() {
        let x = list[head];
        head += 1;
        for &g in gens {
            let y = group.mul(x, g);
            if !mask[y] {
                mask[y] = true;
                list.push(y);
            }
        }
    }
    mask
}

/// Smallest subgroup containing the given elements.
pub fn subgroup_generated(group: &Arc<FiniteGroup>, elements: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = Vec::new();
    let mut mask = vec![false; group.order()];
    mask[0] = true;
    for &x in elements {
        if !mask[x] {
            gens.push(x);
            mask = closure_mask(group, &gens);
        }
    }
    Subgroup::from_mask(group, mask)
}

impl FiniteGroup {
    pub fn center(self: &Arc<Self>) -> Subgroup {
        let gens = self.generator_indices();
        let mask = self
            .all()
            .map(|x| {
                gens.iter()
                    .all(|&g| self.mul(x, g as usize) == self.mul(g as usize, x))
            })
            .collect();
        Subgroup::from_mask(self, mask)
    }

    /// Normal closure of the commutators of the generators.
    pub fn derived_subgroup(self: &Arc<Self>) -> Subgroup {
        let gens: Vec<usize> = self.generator_indices().iter().map(|&g| g as usize).collect();
        let mut seeds = Vec::new();
        for &a in &gens {
            for &b in &gens {
                seeds.push(self.commutator(a, b));
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn normal_closure(self: &Arc<Self>, elements: &[usize]) -> Subgroup {
        let mut h = subgroup_generated(self, elements);
        loop {
            let gens: Vec<usize> = self.generator_indices().iter().map(|&g| g as usize).collect();
            let extra: Vec<usize> = small_generating_set(self, h.members())
                .into_iter()
                .flat_map(|s| gens.iter().map(move |&g| (s, g)))
                .map(|(s, g)| self.conjugate(s, g))
                .filter(|&c| !h.contains(c))
                .collect();
            if extra.is_empty() {
                return h;
            }
            let mut all: Vec<usize> = h.members().iter().map(|&x| x as usize).collect();
            all.extend(extra);
            h = subgroup_generated(self, &all);
        }
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = self.generator_indices();
        h.members().iter().all(|&x| {
            gens.iter()
                .all(|&g| h.contains(self.conjugate(x as usize, g as usize)))
        })
    }

    /// All subgroups of index `p` of a `p`-group, as kernels of the nonzero
    /// functionals on the Frattini quotient, sorted by member list.
    pub fn maximal_subgroups_index_p(self: &Arc<Self>) -> Result<Vec<Subgroup>> {
        let n = self.order();
        let p = match self.p_group_prime() {
            Some(p) => p,
            None if n == 1 => return Ok(Vec::new()),
            None => return Err(Error::NotPGroup { order: n }),
        };
        let derived = self.derived_subgroup();
        let mut seeds: Vec<usize> = derived.members().iter().map(|&x| x as usize).collect();
        seeds.extend(self.all().map(|x| self.pow(x, p)));
        let frattini = subgroup_generated(self, &seeds);

        // A basis of G / Frattini chosen among the generators.
        let mut basis: Vec<usize> = Vec::new();
        let mut span = frattini.clone();
        for &g in self.generator_indices() {
            if !span.contains(g as usize) {
                basis.push(g as usize);
                let mut s: Vec<usize> = span.members().iter().map(|&x| x as usize).collect();
                s.push(g as usize);
                span = subgroup_generated(self, &s);
            }
        }
        let rank = basis.len();
        let mut coords = vec![Vec::new(); n];
        for v in vectors(p, rank) {
            let mut e = 0;
            for (b, &k) in basis.iter().zip(&v) {
                e = self.mul(e, self.pow(*b, k));
            }
            for &f in frattini.members() {
                coords[self.mul(e, f as usize)] = v.clone();
            }
        }
        let mut out: Vec<Subgroup> = vectors(p, rank)
            .filter(|f| f.iter().find(|&&c| c != 0) == Some(&1))
            .map(|f| {
                let mask = coords
                    .iter()
                    .map(|v| v.iter().zip(&f).map(|(a, b)| a * b).sum::<u64>() % p == 0)
                    .collect();
                Subgroup::from_mask(self, mask)
            })
            .collect();
        out.sort_by(|a, b| a.members.cmp(&b.members));
        Ok(out)
    }

    /// Normal Sylow subgroups of a nilpotent group, ascending by prime.
    pub fn sylow_decomposition(self: &Arc<Self>) -> Result<Vec<(u64, Subgroup)>> {
        let n = self.order() as u64;
        let factors = numtheory::factorize(n);
        if factors.len() <= 1 {
            return Ok(factors
                .into_iter()
                .map(|(p, _)| (p, Subgroup::whole(self)))
                .collect());
        }
        let classes = self.classes();
        let mut out = Vec::new();
        for &(p, e) in &factors {
            let part = p.pow(e) as usize;
            let mask: Vec<bool> = self
                .all()
                .map(|x| is_power_of(classes.rep_orders[classes.class_of(x)], p))
                .collect();
            let h = Subgroup::from_mask(self, mask);
            if h.order() != part {
                return Err(Error::NotNilpotent { prime: p });
            }
            let closed = subgroup_generated(
                self,
                &h.members().iter().map(|&x| x as usize).collect::<Vec<_>>(),
            );
            if closed.order() != part {
                return Err(Error::NotNilpotent { prime: p });
            }
            out.push((p, h));
        }
        Ok(out)
    }

    pub fn is_nilpotent(self: &Arc<Self>) -> bool {
        self.sylow_decomposition().is_ok()
    }
}

fn is_power_of(mut k: u64, p: u64) -> bool {
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

/// All vectors of length `len` over `0..p`, lexicographically.
fn vectors(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = k % p;
            k /= p;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;
    use crate::perm::Permutation;

    fn s3() -> Arc<FiniteGroup> {
        generate_group(
            3,
            vec![
                Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
                Permutation::from_cycles(3, &[vec![0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.derived_subgroup().order(), 3);
        assert!(g.is_normal(&g.derived_subgroup()));
        let t = g.index_of(&Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap();
        let h = subgroup_generated(&g, &[t]);
        assert_eq!(h.order(), 2);
        assert!(!g.is_normal(&h));
        assert!(matches!(g.maximal_subgroups_index_p(), Err(Error::NotPGroup { .. })));
        assert!(matches!(g.sylow_decomposition(), Err(Error::NotNilpotent { .. })));
    }

    #[test]
    fn empty_generators_give_trivial_subgroup() {
        let g = s3();
        let h = subgroup_generated(&g, &[]);
        assert_eq!(h.members(), &[0]);
        assert_eq!(h, Subgroup::trivial(&g));
    }

    #[test]
    fn subgroup_as_group_embeds() {
        let g = s3();
        let a = g.derived_subgroup();
        let sg = a.as_group();
        assert_eq!(sg.group.order(), 3);
        for x in sg.group.all() {
            for y in sg.group.all() {
                let xy = sg.group.mul(x, y);
                assert_eq!(
                    sg.embedding[xy] as usize,
                    g.mul(sg.embedding[x] as usize, sg.embedding[y] as usize)
                );
            }
        }
    }

    #[test]
    fn vectors_enumerate_lexicographically() {
        let v: Vec<_> = vectors(2, 2).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
