//! Irreducible character tables with exact cyclotomic values.

mod dixon;

use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use dixon::{choose_dixon_prime, class_matrix};

use crate::constructions::Built;
use crate::cyclotomic::{ring, CycloRing, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{ConjugacyClassSet, FiniteGroup};
use crate::modp::Fp;
use crate::numtheory::{is_prime, smallest_primitive_root_of_unity};

pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Arc<ConjugacyClassSet>,
    conductor: u32,
    // [row][class] -> coordinates in the power basis of Q(zeta_conductor)
    dense: Vec<Vec<Vec<i64>>>,
    degrees: Vec<u64>,
    factors: Option<Vec<(usize, usize)>>,
    modular: OnceLock<ModularImage>,
}

impl std::fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CharacterTable")
            .field("order", &self.group.order())
            .field("conductor", &self.conductor)
            .field("degrees", &self.degrees)
            .finish()
    }
}

/// Reduction of the table modulo a large prime `q = 1 (mod conductor)`.
#[derive(Debug)]
pub struct ModularImage {
    pub prime: u64,
    /// Images of `1, zeta, .., zeta^(dim-1)`.
    pub basis: Vec<u64>,
    /// `residues[row][class]`.
    pub residues: Vec<Vec<u64>>,
    /// `weights[row][class] = |C| conj(theta_row(C)) / |G|`, so that
    /// `<f, theta_row> = sum_c f(c) weights[row][c]`.
    pub weights: Vec<Vec<u64>>,
}

/// Serialized table: `{order, conductor, classes, irreducibles, degrees}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub order: usize,
    pub conductor: u32,
    pub classes: Vec<ClassDoc>,
    pub irreducibles: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub rep_index: usize,
    pub size: usize,
    pub rep_order: u64,
}

/// Character table by the Dixon method.
pub fn character_table(group: &Arc<FiniteGroup>) -> CharacterTable {
    let rows = dixon::dixon_rows(group);
    CharacterTable::assemble(group.clone(), group.exponent() as u32, rows, None)
}

/// Character table of a constructed group; direct products use tensor tables.
pub fn table_for(built: &Built) -> CharacterTable {
    match &built.product {
        Some(dp) => {
            let t1 = table_for(&dp.left);
            let t2 = table_for(&dp.right);
            tensor_table_of_product(&t1, &t2, &built.group, &dp.projections)
        }
        None => character_table(&built.group),
    }
}

/// Irreducibles of `G1 x G2` as all outer products `chi1 x chi2`.
pub fn tensor_table_of_product(
    t1: &CharacterTable,
    t2: &CharacterTable,
    product: &Arc<FiniteGroup>,
    projections: &[Vec<u32>; 2],
) -> CharacterTable {
    let classes = product.classes();
    let m = product.exponent() as u32;
    let r = ring(m);
    let pairs: Vec<(usize, usize)> = classes
        .representatives
        .iter()
        .map(|&rep| {
            (
                t1.classes.class_of(projections[0][rep as usize] as usize),
                t2.classes.class_of(projections[1][rep as usize] as usize),
            )
        })
        .collect();
    let lift = |t: &CharacterTable, row: usize, c: usize| -> Vec<i64> {
        lift_dense(&t.dense[row][c], t.conductor, m)
    };
    let mut rows = Vec::new();
    let mut factors = Vec::new();
    for a in 0..t1.len() {
        for b in 0..t2.len() {
            rows.push(
                pairs
                    .iter()
                    .map(|&(c1, c2)| r.mul(&lift(t1, a, c1), &lift(t2, b, c2)))
                    .collect(),
            );
            factors.push((a, b));
        }
    }
    CharacterTable::assemble(product.clone(), m, rows, Some(factors))
}

/// Rewrites dense coordinates over `from` as coordinates over `to`, `from | to`.
fn lift_dense(a: &[i64], from: u32, to: u32) -> Vec<i64> {
    if from == to {
        return a.to_vec();
    }
    let r = ring(to);
    let step = (to / from) as usize;
    let mut out = r.zero();
    for (e, &c) in a.iter().enumerate() {
        if c != 0 {
            r.add_scaled(&mut out, &r.zeta_pow[e * step], c);
        }
    }
    out
}

fn sparse(a: &[i64]) -> impl Iterator<Item = (usize, i64)> + '_ {
    a.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (e, c))
}

/// Canonical value order: lexicographic on the nonzero `(exponent, coefficient)` list.
fn cmp_value(a: &[i64], b: &[i64]) -> Ordering {
    sparse(a).cmp(sparse(b))
}

impl CharacterTable {
    fn assemble(
        group: Arc<FiniteGroup>,
        conductor: u32,
        rows: Vec<Vec<Vec<i64>>>,
        factors: Option<Vec<(usize, usize)>>,
    ) -> Self {
        let classes = group.classes().clone();
        let degree = |row: &Vec<Vec<i64>>| row[0][0] as u64;
        let trivial = |row: &Vec<Vec<i64>>| row.iter().all(|v| v[0] == 1 && v[1..].iter().all(|&c| c == 0));
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (&rows[i], &rows[j]);
            degree(a)
                .cmp(&degree(b))
                .then_with(|| trivial(b).cmp(&trivial(a)))
                .then_with(|| {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| cmp_value(x, y))
                        .find(|o| o.is_ne())
                        .unwrap_or(Ordering::Equal)
                })
        });
        let factors = factors.map(|f| order.iter().map(|&i| f[i]).collect());
        let mut slots: Vec<Option<Vec<Vec<i64>>>> = rows.into_iter().map(Some).collect();
        let dense: Vec<Vec<Vec<i64>>> = order.iter().map(|&i| slots[i].take().unwrap()).collect();
        let degrees = dense.iter().map(degree).collect();
        CharacterTable {
            group,
            classes,
            conductor,
            dense,
            degrees,
            factors,
            modular: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ConjugacyClassSet> {
        &self.classes
    }

    /// The exponent of the group; all values lie in `Q(zeta_conductor)`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn ring(&self) -> Arc<CycloRing> {
        ring(self.conductor)
    }

    pub fn len(&self) -> usize {
        self.dense.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dense.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.degrees[row]
    }

    pub fn check_row(&self, row: usize) -> Result<()> {
        if row < self.len() {
            Ok(())
        } else {
            Err(Error::RowOutOfRange {
                row,
                rows: self.len(),
            })
        }
    }

    /// For tensor tables, the factor rows `(a, b)` with `row = chi_a x chi_b`.
    pub fn factors(&self) -> Option<&[(usize, usize)]> {
        self.factors.as_deref()
    }

    /// Row of a tensor table given its factor rows.
    pub fn row_of_factors(&self, a: usize, b: usize) -> Option<usize> {
        self.factors.as_ref()?.iter().position(|&p| p == (a, b))
    }

    pub fn dense(&self, row: usize, class: usize) -> &[i64] {
        &self.dense[row][class]
    }

    pub fn dense_row(&self, row: usize) -> &[Vec<i64>] {
        &self.dense[row]
    }

    pub fn value(&self, row: usize, class: usize) -> Cyclotomic {
        Cyclotomic::from_dense_int(self.conductor, &self.dense[row][class])
    }

    pub fn row_values(&self, row: usize) -> Vec<Cyclotomic> {
        (0..self.classes.len()).map(|c| self.value(row, c)).collect()
    }

    pub fn irreducibles(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.len()).map(|r| self.row_values(r)).collect()
    }

    pub fn is_linear(&self, row: usize) -> bool {
        self.degrees[row] == 1
    }

    /// Row of the complex conjugate character.
    pub fn conjugate_row(&self, row: usize) -> usize {
        let inv = &self.classes.inverse_class;
        (0..self.len())
            .find(|&s| {
                self.degrees[s] == self.degrees[row]
                    && (0..self.classes.len())
                        .all(|c| self.dense[s][c] == self.dense[row][inv[c] as usize])
            })
            .expect("conjugate of an irreducible is irreducible")
    }

    /// Short hex digest of the row values, for echoing row references.
    pub fn fingerprint(&self, row: usize) -> String {
        let mut h = Sha256::new();
        h.update(self.conductor.to_le_bytes());
        for v in &self.dense[row] {
            for &c in v {
                h.update(c.to_le_bytes());
            }
        }
        h.finalize()[..6].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_document(&self) -> TableDocument {
        let cl = &self.classes;
        TableDocument {
            order: self.group.order(),
            conductor: self.conductor,
            classes: (0..cl.len())
                .map(|c| ClassDoc {
                    rep_index: cl.representative(c),
                    size: cl.sizes[c],
                    rep_order: cl.rep_orders[c],
                })
                .collect(),
            irreducibles: self.irreducibles(),
            degrees: self.degrees.clone(),
        }
    }

    pub fn modular(&self) -> &ModularImage {
        self.modular.get_or_init(|| ModularImage::build(self))
    }

    /// Both orthogonality relations, exactly, over the integral power basis.
    pub fn check_orthogonality(&self) -> Result<()> {
        let r = self.ring();
        let n = self.len();
        let k = self.classes.len();
        let order = self.group.order() as i64;
        let conj: Vec<Vec<Vec<i64>>> = self
            .dense
            .iter()
            .map(|row| row.iter().map(|v| r.conj(v)).collect())
            .collect();
        let expect = |v: &[i64], value: i64, what: &str| -> Result<()> {
            if v[0] == value && v[1..].iter().all(|&c| c == 0) {
                Ok(())
            } else {
                Err(Error::NotACharacter(format!("{what} fails")))
            }
        };
        for i in 0..n {
            for j in i..n {
                let mut s = r.zero();
                for c in 0..k {
                    let a = &self.dense[i][c];
                    if a.iter().all(|&x| x == 0) {
                        continue;
                    }
                    r.add_scaled(&mut s, &r.mul(a, &conj[j][c]), self.classes.sizes[c] as i64);
                }
                expect(&s, if i == j { order } else { 0 }, &format!("first orthogonality ({i}, {j})"))?;
            }
        }
        for c in 0..k {
            let centralizer = order / self.classes.sizes[c] as i64;
            for d in c..k {
                let mut s = r.zero();
                for i in 0..n {
                    r.add_assign(&mut s, &r.mul(&self.dense[i][c], &conj[i][d]));
                }
                expect(&s, if c == d { centralizer } else { 0 }, &format!("second orthogonality ({c}, {d})"))?;
            }
        }
        Ok(())
    }

    /// Orthogonality relations checked in the modular image only.
    pub fn check_orthogonality_modular(&self) -> Result<()> {
        let mi = self.modular();
        let f = Fp(mi.prime);
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let s = (0..self.classes.len()).fold(0, |acc, c| f.add(acc, f.mul(mi.residues[i][c], mi.weights[j][c])));
                if s != u64::from(i == j) {
                    return Err(Error::NotACharacter(format!("first orthogonality ({i}, {j}) fails")));
                }
            }
        }
        Ok(())
    }

    pub fn sum_of_squared_degrees(&self) -> u64 {
        self.degrees.iter().map(|d| d * d).sum()
    }
}

impl ModularImage {
    fn build(t: &CharacterTable) -> Self {
        let m = t.conductor as u64;
        let order = t.group.order() as u64;
        let floor = (1u64 << 20).max(order + 1);
        let mut q = floor - floor % m + 1;
        while q <= floor || !is_prime(q) {
            q += m;
        }
        let omega = smallest_primitive_root_of_unity(m, q).expect("q = 1 mod m");
        let r = t.ring();
        let basis = r.residue_basis(omega, q);
        let f = Fp(q);
        let residues: Vec<Vec<u64>> = t
            .dense
            .iter()
            .map(|row| row.iter().map(|v| r.residue(v, &basis, q)).collect())
            .collect();
        let inv_order = f.inv(order % q);
        let inv = &t.classes.inverse_class;
        let weights = residues
            .iter()
            .map(|row| {
                (0..row.len())
                    .map(|c| {
                        let size = t.classes.sizes[c] as u64 % q;
                        f.mul(f.mul(size, row[inv[c] as usize]), inv_order)
                    })
                    .collect()
            })
            .collect();
        ModularImage {
            prime: q,
            basis,
            residues,
            weights,
        }
    }
}
