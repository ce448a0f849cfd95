//! Burnside-Dixon: common eigenvectors of the class matrices over `F_l`, then
//! exact lifting of each character by averaging over the powers of class
//! representatives.

use crate::cyclotomic::ring;
use crate::group::{ConjugacyClassSet, FiniteGroup};
use crate::modp::{eigenspaces, identity, rref, Fp, Matrix};
use crate::numtheory::{is_prime, isqrt, smallest_primitive_root_of_unity};

/// Smallest prime `l = 1 (mod exponent)` with `l > 2 sqrt(order)`.
pub fn choose_dixon_prime(order: u64, exponent: u64) -> u64 {
    let mut l = exponent + 1;
    loop {
        if l * l > 4 * order && is_prime(l) {
            return l;
        }
        l += exponent;
    }
}

/// `(M_i)[j][k] = #{(x, y) : x in C_i, y in C_j, x y = rep(C_k)}`.
pub fn class_matrix(group: &FiniteGroup, classes: &ConjugacyClassSet, i: usize) -> Vec<Vec<u64>> {
    let n = classes.len();
    let mut m = vec![vec![0u64; n]; n];
    for (j, row) in sparse_class_matrix(group, classes, i).into_iter().enumerate() {
        for (k, c) in row {
            m[j][k as usize] = c as u64;
        }
    }
    m
}

/// Rows of the class matrix as `(k, count)` lists.
fn sparse_class_matrix(group: &FiniteGroup, classes: &ConjugacyClassSet, i: usize) -> Vec<Vec<(u32, u32)>> {
    let n = classes.len();
    let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    let inverses: Vec<usize> = classes.members[i]
        .iter()
        .map(|&x| group.inverse(x as usize))
        .collect();
    let mut js = Vec::with_capacity(inverses.len());
    for k in 0..n {
        let rep = classes.representative(k);
        js.clear();
        js.extend(inverses.iter().map(|&xi| classes.class_of(group.mul(xi, rep)) as u32));
        js.sort_unstable();
        for chunk in js.chunk_by(|a, b| a == b) {
            rows[chunk[0] as usize].push((k as u32, chunk.len() as u32));
        }
    }
    rows
}

/// Irreducible characters as dense integral coordinates over `Q(zeta_m)`,
/// `m = exponent`, indexed `[row][class]`. Rows are unsorted.
pub(crate) fn dixon_rows(group: &FiniteGroup) -> Vec<Vec<Vec<i64>>> {
    let classes = group.classes();
    let n = classes.len();
    let order = group.order() as u64;
    let m = group.exponent();
    let l = choose_dixon_prime(order, m);
    let f = Fp(l);

    let mut spaces: Vec<Matrix> = vec![identity(n)];
    for i in 1..n {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mi = sparse_class_matrix(group, classes, i);
        spaces = spaces
            .into_iter()
            .flat_map(|s| if s.len() == 1 { vec![s] } else { split(s, &mi, f) })
            .collect();
    }
    assert!(
        spaces.iter().all(|s| s.len() == 1),
        "class matrices failed to split the class algebra over F_{l}"
    );

    let omega = smallest_primitive_root_of_unity(m, l).expect("l = 1 mod exponent");
    let lift = Lifter::new(group, classes, m, omega, f);
    spaces
        .into_iter()
        .map(|mut s| {
            let v = s.pop().unwrap();
            lift.character(&v)
        })
        .collect()
}

/// Splits an invariant subspace (RREF rows) along the eigenspaces of one class matrix.
fn split(basis: Matrix, mi: &[Vec<(u32, u32)>], f: Fp) -> Vec<Matrix> {
    let d = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).unwrap())
        .collect();
    // transpose of the restriction: t[s][r] = (M_i b_r)[pivot_s]
    let t: Matrix = pivots
        .iter()
        .map(|&ps| {
            basis
                .iter()
                .map(|b| {
                    mi[ps]
                        .iter()
                        .fold(0, |acc, &(k, c)| f.add(acc, f.mul(c as u64 % f.0, b[k as usize])))
                })
                .collect()
        })
        .collect();
    let es = eigenspaces(t, f);
    let total: usize = es.iter().map(|(_, v)| v.len()).sum();
    assert_eq!(total, d, "class matrix is not diagonalizable on an invariant subspace");
    if es.len() == 1 {
        return vec![basis];
    }
    es.into_iter()
        .map(|(_, coords)| {
            let mut vecs: Matrix = coords
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; basis[0].len()];
                    for (&cr, b) in c.iter().zip(&basis) {
                        if cr == 0 {
                            continue;
                        }
                        for (x, &y) in v.iter_mut().zip(b) {
                            if y != 0 {
                                *x = f.add(*x, f.mul(cr, y));
                            }
                        }
                    }
                    v
                })
                .collect();
            rref(&mut vecs, f);
            vecs
        })
        .collect()
}

struct Lifter<'a> {
    classes: &'a ConjugacyClassSet,
    order: u64,
    m: u64,
    f: Fp,
    omega: u64,
    power_classes: Vec<Vec<usize>>,
}

impl<'a> Lifter<'a> {
    fn new(group: &FiniteGroup, classes: &'a ConjugacyClassSet, m: u64, omega: u64, f: Fp) -> Self {
        let power_classes = (0..classes.len()).map(|c| classes.power_classes(group, c)).collect();
        Lifter {
            classes,
            order: group.order() as u64,
            m,
            f,
            omega,
            power_classes,
        }
    }

    /// Exact character from a common eigenvector of the class matrices.
    fn character(&self, v: &[u64]) -> Vec<Vec<i64>> {
        let f = self.f;
        let n = v.len();
        let inv0 = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
        let size_inv: Vec<u64> = self
            .classes
            .sizes
            .iter()
            .map(|&s| f.inv(s as u64 % f.0))
            .collect();

        // d^2 * sum_k w_k w_{k*} / |C_k| = |G|
        let norm = (0..n).fold(0, |acc, k| {
            let kk = self.classes.inverse_class[k] as usize;
            f.add(acc, f.mul(f.mul(w[k], w[kk]), size_inv[k]))
        });
        let d2 = f.mul(self.order % f.0, f.inv(norm));
        let degree = (1..=isqrt(self.order))
            .find(|&d| d * d % f.0 == d2)
            .expect("character degree not recovered");
        let values: Vec<u64> = (0..n)
            .map(|k| f.mul(f.mul(w[k], degree % f.0), size_inv[k]))
            .collect();

        let r = ring(self.m as u32);
        (0..n)
            .map(|c| {
                let pcs = &self.power_classes[c];
                let o = pcs.len() as u64;
                let step = self.m / o;
                let omega_o = crate::numtheory::pow_mod(self.omega, step, f.0);
                let omega_o_inv = f.inv(omega_o);
                let o_inv = f.inv(o % f.0);
                let mut dense = r.zero();
                let mut total = 0u64;
                for j in 0..o {
                    // a_j = (1/o) sum_t chi(g^t) omega_o^(-j t)
                    let base = crate::numtheory::pow_mod(omega_o_inv, j, f.0);
                    let mut wt = 1u64;
                    let mut s = 0u64;
                    for &pc in pcs {
                        s = f.add(s, f.mul(values[pc], wt));
                        wt = f.mul(wt, base);
                    }
                    let a = f.mul(s, o_inv);
                    assert!(a <= degree, "eigenvalue multiplicity {a} exceeds degree {degree}");
                    if a != 0 {
                        r.add_scaled(&mut dense, &r.zeta_pow[(j * step) as usize], a as i64);
                    }
                    total += a;
                }
                assert_eq!(total, degree, "eigenvalue multiplicities do not sum to the degree");
                dense
            })
            .collect()
    }
}
