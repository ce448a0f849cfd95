//! Arithmetic on class functions: products, inner products, decomposition,
//! induction and restriction, kernels, monomial sources.

use std::sync::Arc;

use num_traits::Signed;

use crate::chartable::CharacterTable;
use crate::cyclotomic::{ring, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Quotient, Subgroup};
use crate::modp::Fp;
use crate::numtheory::{is_prime, lcm, pow_mod, smallest_primitive_root_of_unity};

/// One exact value per conjugacy class, in class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        let n = group.classes().len();
        if values.len() != n {
            return Err(Error::HypothesisViolation(format!(
                "class function has {} values for {n} classes",
                values.len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn from_row(table: &CharacterTable, row: usize) -> Result<Self> {
        table.check_row(row)?;
        Ok(ClassFunction {
            group: table.group().clone(),
            values: table.row_values(row),
        })
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        ClassFunction {
            group: group.clone(),
            values: vec![Cyclotomic::one(); group.classes().len()],
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity element.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Value at an element index.
    pub fn at(&self, x: usize) -> &Cyclotomic {
        &self.values[self.group.classes().class_of(x)]
    }

    pub fn scale(&self, r: &Rational) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        same_group(self, other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }
}

fn same_group(f: &ClassFunction, g: &ClassFunction) -> Result<()> {
    if Arc::ptr_eq(&f.group, &g.group) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// Constituents of a character: `(row, multiplicity)` ascending by row.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Decomposition {
    pub constituents: Vec<(usize, u64)>,
    /// Number of distinct constituents.
    pub eta: usize,
}

impl Decomposition {
    fn from_multiplicities(mults: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let constituents: Vec<(usize, u64)> = mults.into_iter().filter(|&(_, m)| m > 0).collect();
        Decomposition {
            eta: constituents.len(),
            constituents,
        }
    }

    pub fn multiplicity(&self, row: usize) -> u64 {
        self.constituents
            .iter()
            .find(|&&(r, _)| r == row)
            .map_or(0, |&(_, m)| m)
    }

    pub fn rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.constituents.iter().map(|&(r, _)| r)
    }

    pub fn degree(&self, table: &CharacterTable) -> u64 {
        self.constituents.iter().map(|&(r, m)| m * table.degree(r)).sum()
    }
}

/// Pointwise product.
pub fn product(f: &ClassFunction, g: &ClassFunction) -> Result<ClassFunction> {
    same_group(f, g)?;
    Ok(ClassFunction {
        group: f.group.clone(),
        values: f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect(),
    })
}

pub fn conjugate_char(f: &ClassFunction) -> ClassFunction {
    ClassFunction {
        group: f.group.clone(),
        values: f.values.iter().map(Cyclotomic::conjugate).collect(),
    }
}

/// `(1/|G|) sum_c |C| f(c) conj(g(c))`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rational> {
    same_group(f, g)?;
    let cl = f.group.classes();
    let mut s = Cyclotomic::zero();
    for (c, (a, b)) in f.values.iter().zip(&g.values).enumerate() {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let size = Rational::from_integer(cl.sizes[c].into());
        s = &s + &(a * &b.conjugate()).scale(&size);
    }
    let order = Rational::from_integer(f.group.order().into());
    Ok(s.as_rational()? / order)
}

/// Multiplicities `<f, theta_i>` over the table; fails unless all are nonnegative integers.
pub fn decompose(f: &ClassFunction, table: &CharacterTable) -> Result<Decomposition> {
    if !Arc::ptr_eq(&f.group, table.group()) {
        return Err(Error::GroupMismatch);
    }
    let m = table.conductor();
    let dense: Option<Vec<Vec<i64>>> = f
        .values
        .iter()
        .map(|v| if m % v.conductor() == 0 { v.to_dense_int(m) } else { None })
        .collect();
    if let Some(dense) = dense {
        let r = table.ring();
        let mi = table.modular();
        let res: Vec<u64> = dense.iter().map(|v| r.residue(v, &mi.basis, mi.prime)).collect();
        if let Some(d) = certify(table, &dense, &res) {
            return Ok(d);
        }
    }
    // exact inner products explain the failure, or succeed for unusual encodings
    let mut mults = Vec::new();
    for row in 0..table.len() {
        let theta = ClassFunction::from_row(table, row)?;
        let ip = inner_product(f, &theta).map_err(|_| {
            Error::NotACharacter(format!("inner product with row {row} is not rational"))
        })?;
        if !ip.is_integer() || ip.is_negative() {
            return Err(Error::NotACharacter(format!(
                "multiplicity of row {row} would be {ip}"
            )));
        }
        let k: u64 = u64::try_from(ip.to_integer())
            .map_err(|_| Error::NotACharacter(format!("multiplicity of row {row} too large")))?;
        mults.push((row, k));
    }
    Ok(Decomposition::from_multiplicities(mults))
}

/// Decomposition of the product of two table rows.
pub fn decompose_product(table: &CharacterTable, a: usize, b: usize) -> Result<Decomposition> {
    table.check_row(a)?;
    table.check_row(b)?;
    let r = table.ring();
    let mi = table.modular();
    let f = Fp(mi.prime);
    let (ra, rb) = (table.dense_row(a), table.dense_row(b));
    let dense: Vec<Vec<i64>> = ra
        .iter()
        .zip(rb)
        .map(|(x, y)| {
            if x.iter().all(|&c| c == 0) || y.iter().all(|&c| c == 0) {
                r.zero()
            } else {
                r.mul(x, y)
            }
        })
        .collect();
    let res: Vec<u64> = mi.residues[a]
        .iter()
        .zip(&mi.residues[b])
        .map(|(&x, &y)| f.mul(x, y))
        .collect();
    certify(table, &dense, &res).ok_or_else(|| {
        Error::NotACharacter(format!("product of rows {a} and {b} failed exact recomposition"))
    })
}

/// Candidate multiplicities from the modular image, accepted only if they
/// reproduce `dense` exactly.
fn certify(table: &CharacterTable, dense: &[Vec<i64>], res: &[u64]) -> Option<Decomposition> {
    let mi = table.modular();
    let f = Fp(mi.prime);
    let mults: Vec<(usize, u64)> = mi
        .weights
        .iter()
        .enumerate()
        .map(|(row, w)| {
            // residues are below 2^32, so each product fits in a u64
            let m = res.iter().zip(w).map(|(&x, &y)| (x * y) as u128).sum::<u128>() % f.0 as u128;
            (row, m as u64)
        })
        .filter(|&(_, m)| m != 0)
        .collect();
    let degree = dense[0][0];
    if degree <= 0 || dense[0][1..].iter().any(|&c| c != 0) {
        return None;
    }
    let total: u128 = mults
        .iter()
        .map(|&(row, m)| m as u128 * table.degree(row) as u128)
        .sum();
    if total != degree as u128 {
        return None;
    }
    for (c, want) in dense.iter().enumerate() {
        let mut acc = vec![0i128; want.len()];
        for &(row, m) in &mults {
            for (s, &v) in acc.iter_mut().zip(table.dense(row, c)) {
                *s += m as i128 * v as i128;
            }
        }
        if acc.iter().zip(want).any(|(&s, &w)| s != w as i128) {
            return None;
        }
    }
    Some(Decomposition::from_multiplicities(mults))
}

/// `sum m_i theta_i` as a class function.
pub fn recompose(d: &Decomposition, table: &CharacterTable) -> ClassFunction {
    let r = table.ring();
    let values = (0..table.classes().len())
        .map(|c| {
            let mut acc = r.zero();
            for &(row, m) in &d.constituents {
                r.add_scaled(&mut acc, table.dense(row, c), m as i64);
            }
            Cyclotomic::from_dense_int(table.conductor(), &acc)
        })
        .collect();
    ClassFunction {
        group: table.group().clone(),
        values,
    }
}

fn subgroup_of(g: &Arc<FiniteGroup>, h: &Subgroup) -> Result<()> {
    if Arc::ptr_eq(h.parent(), g) {
        Ok(())
    } else {
        Err(Error::SubgroupMismatch)
    }
}

/// `f^G(g) = |G| / (|H| |g^G|) * sum over h in H with h ~ g of f(h)`.
pub fn induce(g: &Arc<FiniteGroup>, h: &Subgroup, f: &ClassFunction) -> Result<ClassFunction> {
    subgroup_of(g, h)?;
    let sg = h.as_group();
    if !Arc::ptr_eq(&f.group, &sg.group) {
        return Err(Error::SubgroupMismatch);
    }
    let gcl = g.classes();
    let hcl = sg.group.classes();
    let mut counts = vec![0usize; hcl.len()];
    let values = (0..gcl.len())
        .map(|c| {
            counts.iter_mut().for_each(|x| *x = 0);
            let mut any = false;
            for &x in &gcl.members[c] {
                let own = sg.back[x as usize];
                if own != u32::MAX {
                    counts[hcl.class_of(own as usize)] += 1;
                    any = true;
                }
            }
            if !any {
                return Cyclotomic::zero();
            }
            let mut s = Cyclotomic::zero();
            for (hc, &k) in counts.iter().enumerate() {
                if k > 0 {
                    s = &s + &f.values[hc].scale(&Rational::from_integer(k.into()));
                }
            }
            let factor = Rational::new(
                g.order().into(),
                (h.order() * gcl.sizes[c]).into(),
            );
            s.scale(&factor)
        })
        .collect();
    Ok(ClassFunction {
        group: g.clone(),
        values,
    })
}

/// Restriction to `H`, as a class function on `H` realized as its own group.
pub fn restrict(f: &ClassFunction, h: &Subgroup) -> Result<ClassFunction> {
    subgroup_of(&f.group, h)?;
    let sg = h.as_group();
    let hcl = sg.group.classes();
    let values = hcl
        .representatives
        .iter()
        .map(|&rep| f.at(sg.embedding[rep as usize] as usize).clone())
        .collect();
    Ok(ClassFunction {
        group: sg.group.clone(),
        values,
    })
}

fn element_mask(f: &ClassFunction, pred: impl Fn(&Cyclotomic) -> bool) -> Vec<usize> {
    let cl = f.group.classes();
    (0..cl.len())
        .filter(|&c| pred(&f.values[c]))
        .flat_map(|c| cl.members[c].iter().map(|&x| x as usize))
        .collect()
}

/// `{g : f(g) = f(1)}`.
pub fn kernel(f: &ClassFunction) -> Subgroup {
    let d = f.degree().clone();
    let members = element_mask(f, |v| *v == d);
    crate::group::subgroup_generated(&f.group, &members)
}

/// `{g : |f(g)| = f(1)}`.
pub fn character_center(f: &ClassFunction) -> Subgroup {
    let d2 = f.degree().norm_squared();
    let members = element_mask(f, |v| v.norm_squared() == d2);
    crate::group::subgroup_generated(&f.group, &members)
}

pub fn is_faithful(f: &ClassFunction) -> bool {
    kernel(f).order() == 1
}

/// Composition of a class function of `G/N` with the projection.
pub fn lift_character(q: &Quotient, theta: &ClassFunction) -> Result<ClassFunction> {
    if !Arc::ptr_eq(&q.group, &theta.group) {
        return Err(Error::GroupMismatch);
    }
    let g = q.kernel.parent();
    let values = g
        .classes()
        .representatives
        .iter()
        .map(|&rep| theta.at(q.projection[rep as usize] as usize).clone())
        .collect();
    Ok(ClassFunction {
        group: g.clone(),
        values,
    })
}

/// `Lin(G)`, built by extending characters of `<g_1, ..., g_i> G'/G'` one generator
/// at a time. Character `t` has mixed-radix digits `t_i < k_i` (first digit least
/// significant), where `k_i` is the order of `g_i` modulo the previous layer; on the
/// new layer it takes `g_i -> mu_i`, the `t_i`-th `k_i`-th root of its value at `g_i^(k_i)`.
/// Index 0 is the trivial character.
pub struct LinearCharacters {
    group: Arc<FiniteGroup>,
    /// Values lie in `Q(zeta_m)`, `m` the exponent of `G`.
    m: u64,
    coset_of: Vec<u32>,
    /// Coset -> position in layer order.
    pos_of: Vec<u32>,
    /// `(size of the previous layer, k_i, position of g_i^(k_i))`.
    steps: Vec<(usize, u64, usize)>,
    len: usize,
}

impl LinearCharacters {
    pub fn new(g: &Arc<FiniteGroup>) -> Self {
        let derived = g.derived_subgroup();
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut coset_rep = Vec::new();
        for x in g.all() {
            if coset_of[x] == u32::MAX {
                let c = coset_rep.len() as u32;
                coset_rep.push(x);
                for &h in derived.members() {
                    coset_of[g.mul(h as usize, x)] = c;
                }
            }
        }
        let mut pos_of = vec![u32::MAX; coset_rep.len()];
        let mut layer = vec![0u32];
        pos_of[0] = 0;
        let mut steps = Vec::new();
        for &gen in g.generator_indices() {
            let gen = gen as usize;
            if pos_of[coset_of[gen] as usize] != u32::MAX {
                continue;
            }
            let n = layer.len();
            let mut power = gen;
            let mut k = 1u64;
            while pos_of[coset_of[power] as usize] == u32::MAX {
                for s in 0..n {
                    let c = coset_of[g.mul(coset_rep[layer[s] as usize], power)];
                    pos_of[c as usize] = layer.len() as u32;
                    layer.push(c);
                }
                power = g.mul(power, gen);
                k += 1;
            }
            steps.push((n, k, pos_of[coset_of[power] as usize] as usize));
        }
        LinearCharacters {
            group: g.clone(),
            m: g.exponent(),
            coset_of,
            pos_of,
            steps,
            len: layer.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// `lambda(x) = zeta_m^e` as exponents `e`, indexed by layer position.
    fn exponents(&self, index: usize) -> Vec<u64> {
        let m = self.m;
        let mut e = vec![0u64; self.len];
        let mut rest = index;
        for &(n, k, at) in &self.steps {
            let t = rest as u64 % k;
            rest /= k as usize;
            assert_eq!(e[at] % k, 0, "extension of a linear character has no k-th root");
            let mu = (e[at] / k + t * (m / k)) % m;
            for j in 1..k as usize {
                for s in 0..n {
                    e[j * n + s] = (e[s] + j as u64 * mu) % m;
                }
            }
        }
        e
    }

    /// Exponents of `lambda` at the class representatives of `G`.
    pub fn class_exponents(&self, index: usize) -> Vec<u64> {
        let e = self.exponents(index);
        self.group
            .classes()
            .representatives
            .iter()
            .map(|&r| e[self.pos_of[self.coset_of[r as usize] as usize] as usize])
            .collect()
    }

    pub fn get(&self, index: usize) -> ClassFunction {
        assert!(index < self.len, "linear character {index} out of range");
        let values = self
            .class_exponents(index)
            .into_iter()
            .map(|e| crate::cyclotomic::root_of_unity(self.m as u32, e as i64))
            .collect();
        ClassFunction {
            group: self.group.clone(),
            values,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ClassFunction> + '_ {
        (0..self.len).map(|i| self.get(i))
    }
}

/// All of `Lin(G)` in the order of [`LinearCharacters`].
pub fn linear_characters(g: &Arc<FiniteGroup>) -> Result<Vec<ClassFunction>> {
    Ok(LinearCharacters::new(g).iter().collect())
}

/// `{g in G : lambda(g^-1 h g) = lambda(h) for all h in H}` for `H` normal.
pub fn inertia_group(g: &Arc<FiniteGroup>, h: &Subgroup, lambda: &ClassFunction) -> Result<Subgroup> {
    subgroup_of(g, h)?;
    if !g.is_normal(h) {
        return Err(Error::NotNormal);
    }
    let sg = h.as_group();
    if !Arc::ptr_eq(&lambda.group, &sg.group) {
        return Err(Error::SubgroupMismatch);
    }
    let hgroup = &sg.group;
    let value_at = |x: usize| lambda.at(sg.back[x] as usize);
    // Conjugates of a class function agree everywhere iff they agree on all of H;
    // a generating set suffices only for linear characters.
    let test_elems: Vec<usize> = if lambda.degree() == &Cyclotomic::one() {
        hgroup
            .generator_indices()
            .iter()
            .map(|&x| sg.embedding[x as usize] as usize)
            .collect()
    } else {
        h.members().iter().map(|&x| x as usize).collect()
    };
    let members: Vec<usize> = g
        .all()
        .filter(|&y| {
            test_elems
                .iter()
                .all(|&x| value_at(g.conjugate(x, y)) == value_at(x))
        })
        .collect();
    Ok(crate::group::subgroup_generated(g, &members))
}

/// A subgroup `H` of index `p` and a linear `xi` on `H` with `xi^G = chi`.
#[derive(Clone, Debug)]
pub struct MonomialSource {
    pub subgroup: Subgroup,
    /// Position of `H` among the canonically ordered maximal subgroups.
    pub subgroup_index: usize,
    pub xi: ClassFunction,
    /// Position of `xi` in the canonical linear-character order of `H`.
    pub xi_index: usize,
}

pub fn monomial_source(table: &CharacterTable, row: usize) -> Result<MonomialSource> {
    let subgroups = table.group().maximal_subgroups_index_p()?;
    monomial_source_among(table, row, &subgroups)
}

/// As [`monomial_source`], scanning a precomputed list of maximal subgroups.
pub fn monomial_source_among(
    table: &CharacterTable,
    row: usize,
    subgroups: &[Subgroup],
) -> Result<MonomialSource> {
    table.check_row(row)?;
    let g = table.group();
    let p = g
        .p_group_prime()
        .ok_or(Error::NotPGroup { order: g.order() })?;
    let degree = table.degree(row);
    if degree != p {
        return Err(Error::HypothesisViolation(format!(
            "monomial source needs a character of degree {p}, row {row} has degree {degree}"
        )));
    }
    let chi = ClassFunction::from_row(table, row)?;
    for (hi, h) in subgroups.iter().enumerate() {
        let chi_h = restrict(&chi, h)?;
        let lins = LinearCharacters::new(&h.as_group().group);
        let ctx = ModContext::new(&chi_h, lins.conductor() as u32);
        let chi_res = ctx.residues(&chi_h);
        for xi_index in 0..lins.len() {
            let xi_res: Vec<u64> = lins
                .class_exponents(xi_index)
                .into_iter()
                .map(|e| ctx.root_residue(e, lins.conductor()))
                .collect();
            if ctx.inner_product(&chi_res, &xi_res, &chi_h.group) == 0 {
                continue;
            }
            let xi = lins.get(xi_index);
            if induce(g, h, &xi)? == chi {
                return Ok(MonomialSource {
                    subgroup: h.clone(),
                    subgroup_index: hi,
                    xi,
                    xi_index,
                });
            }
        }
    }
    Err(Error::NoSourceFound { degree })
}

/// Residues of class functions modulo a large prime, for cheap nonvanishing tests
/// of inner products whose exact value is a small integer.
struct ModContext {
    m: u32,
    q: u64,
    omega: u64,
    basis: Vec<u64>,
}

impl ModContext {
    fn new(f: &ClassFunction, conductor: u32) -> Self {
        let m = f.values.iter().map(Cyclotomic::conductor).fold(conductor, lcm);
        let floor = 1u64 << 20;
        let step = m as u64;
        let mut q = floor - floor % step + 1;
        while q <= floor || !is_prime(q) {
            q += step;
        }
        let omega = smallest_primitive_root_of_unity(step, q).expect("q = 1 mod m");
        ModContext {
            m,
            q,
            omega,
            basis: ring(m).residue_basis(omega, q),
        }
    }

    fn residues(&self, f: &ClassFunction) -> Vec<u64> {
        let r = ring(self.m);
        f.values
            .iter()
            .map(|v| {
                let d = v.to_dense_int(self.m).expect("character values are algebraic integers");
                r.residue(&d, &self.basis, self.q)
            })
            .collect()
    }

    /// Residue of `zeta_n^e` for `n | m`.
    fn root_residue(&self, e: u64, n: u64) -> u64 {
        pow_mod(self.omega, e * (self.m as u64 / n), self.q)
    }

    /// `|G| <a, b>` modulo `q`.
    fn inner_product(&self, a: &[u64], b: &[u64], group: &FiniteGroup) -> u64 {
        let f = Fp(self.q);
        let cl = group.classes();
        (0..a.len()).fold(0, |acc, c| {
            let size = cl.sizes[c] as u64 % self.q;
            f.add(acc, f.mul(size, f.mul(a[c], b[cl.inverse_class[c] as usize])))
        })
    }
}
