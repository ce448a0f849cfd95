//! Explicitly enumerated permutation groups.
//!
//! Every element gets a dense index fixed by breadth-first enumeration from the
//! identity, trying generators in the order given. Index 0 is always the identity.

mod classes;
mod quotient;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

pub use classes::ConjugacyClassSet;
pub use quotient::Quotient;
pub use subgroup::{subgroup_generated, Subgroup, SubgroupGroup};

use crate::error::{Error, Result};
use crate::numtheory;
use crate::perm::Permutation;

/// Default upper bound on the number of elements a closure may produce.
pub const DEFAULT_CAP: usize = 20_000;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 4096;

pub struct FiniteGroup {
    degree: usize,
    order: usize,
    generators: Vec<Permutation>,
    // order * degree images, element-major
    points: Vec<u16>,
    lookup: HashMap<Box<[u16]>, u32>,
    generator_index: Vec<u32>,
    // right_by_gen[g][x] = index of x * generators[g]
    right_by_gen: Vec<Vec<u32>>,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
    classes: OnceLock<Arc<ConjugacyClassSet>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Enumerates the group generated by `generators` on `degree` points.
pub fn generate_group(degree: usize, generators: Vec<Permutation>) -> Result<Arc<FiniteGroup>> {
    generate_group_with_cap(degree, generators, DEFAULT_CAP)
}

pub fn generate_group_with_cap(
    degree: usize,
    generators: Vec<Permutation>,
    cap: usize,
) -> Result<Arc<FiniteGroup>> {
    for g in &generators {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
    }
    let identity = Permutation::identity(degree);
    let mut points: Vec<u16> = identity.images().to_vec();
    let mut lookup: HashMap<Box<[u16]>, u32> = HashMap::new();
    lookup.insert(identity.images().into(), 0);
    let mut right_by_gen: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
    let mut order = 1usize;
    let mut queue = VecDeque::from([0usize]);
    let mut buf = vec![0u16; degree];
    while let Some(x) = queue.pop_front() {
        for (gi, g) in generators.iter().enumerate() {
            let src = &points[x * degree..(x + 1) * degree];
            for (b, &s) in buf.iter_mut().zip(src) {
                *b = g.images()[s as usize];
            }
            let y = match lookup.get(buf.as_slice()) {
                Some(&y) => y,
                None => {
                    if order >= cap {
                        return Err(Error::ClosureTooLarge { cap });
                    }
                    let y = order as u32;
                    lookup.insert(buf.clone().into_boxed_slice(), y);
                    points.extend_from_slice(&buf);
                    queue.push_back(order);
                    order += 1;
                    y
                }
            };
            right_by_gen[gi].push(y);
        }
    }
    // BFS visits elements in index order, so right_by_gen[g][x] lines up with x.
    let generator_index = generators
        .iter()
        .map(|g| lookup[g.images()])
        .collect();
    let mut group = FiniteGroup {
        degree,
        order,
        generators,
        points,
        lookup,
        generator_index,
        right_by_gen,
        inverses: Vec::new(),
        table: None,
        classes: OnceLock::new(),
    };
    group.inverses = (0..order)
        .map(|x| {
            let mut inv = vec![0u16; degree];
            for (i, &v) in group.images(x).iter().enumerate() {
                inv[v as usize] = i as u16;
            }
            group.lookup[inv.as_slice()]
        })
        .collect();
    if order <= TABLE_LIMIT {
        group.table = Some(group.build_table());
    }
    Ok(Arc::new(group))
}

impl FiniteGroup {
    fn build_table(&self) -> Vec<u32> {
        let n = self.order();
        // Express each element as (bfs parent) * generator, then fill rows by
        // right-multiplying already known products.
        let mut parent = vec![(0u32, 0usize); n];
        let mut known = vec![false; n];
        known[0] = true;
        for x in 0..n {
            for (gi, right) in self.right_by_gen.iter().enumerate() {
                let y = right[x] as usize;
                if !known[y] {
                    known[y] = true;
                    parent[y] = (x as u32, gi);
                }
            }
        }
        // BFS discovers every element after its parent, so index order is safe.
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u32;
            for b in 1..n {
                let (pb, g) = parent[b];
                row[b] = self.right_by_gen[g][row[pb as usize] as usize];
            }
        }
        table
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[u32] {
        &self.generator_index
    }

    pub fn images(&self, x: usize) -> &[u16] {
        &self.points[x * self.degree..(x + 1) * self.degree]
    }

    pub fn element(&self, x: usize) -> Permutation {
        Permutation::from_raw(self.images(x).to_vec())
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        self.lookup.get(p.images()).map(|&i| i as usize)
    }

    pub(crate) fn index_of_images(&self, images: &[u16]) -> Option<usize> {
        self.lookup.get(images).map(|&i| i as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.table {
            return t[a * self.order() + b] as usize;
        }
        let (pa, pb) = (self.images(a), self.images(b));
        if self.degree <= 64 {
            let mut buf = [0u16; 64];
            for (d, &s) in buf.iter_mut().zip(pa) {
                *d = pb[s as usize];
            }
            self.lookup[&buf[..self.degree]] as usize
        } else {
            let buf: Vec<u16> = pa.iter().map(|&s| pb[s as usize]).collect();
            self.lookup[buf.as_slice()] as usize
        }
    }

    /// `x * generators[g]`, without a table lookup.
    pub fn mul_generator(&self, x: usize, g: usize) -> usize {
        self.right_by_gen[g][x] as usize
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x] as usize
    }

    /// `g^-1 x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(
            self.mul(self.inverse(a), self.inverse(b)),
            self.mul(a, b),
        )
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes()
            .rep_orders
            .iter()
            .fold(1, |acc, &o| numtheory::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generator_index;
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| self.mul(a as usize, b as usize) == self.mul(b as usize, a as usize))
        })
    }

    /// The prime `p` if the order is a power of `p` greater than one.
    pub fn p_group_prime(&self) -> Option<u64> {
        let f = numtheory::factorize(self.order() as u64);
        (f.len() == 1).then(|| f[0].0)
    }

    pub fn classes(&self) -> &Arc<ConjugacyClassSet> {
        self.classes
            .get_or_init(|| Arc::new(ConjugacyClassSet::compute(self)))
    }

    /// Indices of all elements, in order.
    pub fn all(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

/// Partition of the group into conjugacy classes.
pub fn conjugacy_classes(group: &FiniteGroup) -> Arc<ConjugacyClassSet> {
    group.classes().clone()
}
