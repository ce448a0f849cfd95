//! Arithmetic tables for `Z[x] / Phi_m(x)` and dense integral elements.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::numtheory;

/// Power-basis data for the cyclotomic field of conductor `m`.
#[derive(Debug)]
pub struct CycloRing {
    pub conductor: u32,
    /// Degree of the field, `phi(m)`.
    pub dim: usize,
    /// Coefficients of the monic `Phi_m`, constant term first, length `dim + 1`.
    pub poly: Vec<i64>,
    /// Reduced coordinates of `zeta^k` for `k` in `0..m`.
    pub zeta_pow: Vec<Vec<i64>>,
}

static RINGS: OnceLock<RwLock<HashMap<u32, Arc<CycloRing>>>> = OnceLock::new();

/// Shared ring data for conductor `m`, built on first use.
pub fn ring(m: u32) -> Arc<CycloRing> {
    assert!(m >= 1, "conductor must be positive");
    let rings = RINGS.get_or_init(Default::default);
    if let Some(r) = rings.read().unwrap().get(&m) {
        return r.clone();
    }
    let built = Arc::new(CycloRing::build(m));
    rings.write().unwrap().entry(m).or_insert(built).clone()
}

/// `Phi_m` as integer coefficients, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    // x^m - 1 divided by Phi_d for each proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

impl CycloRing {
    fn build(m: u32) -> Self {
        let poly = cyclotomic_polynomial(m);
        let dim = numtheory::euler_phi(m as u64) as usize;
        debug_assert_eq!(poly.len(), dim + 1);
        let mut zeta_pow = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; dim];
        cur[0] = 1;
        for _ in 0..m {
            zeta_pow.push(cur.clone());
            // multiply by x, then fold the top coefficient back
            let top = cur[dim - 1];
            for j in (1..dim).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..dim {
                    cur[j] -= top * poly[j];
                }
            }
        }
        CycloRing {
            conductor: m,
            dim,
            poly,
            zeta_pow,
        }
    }

    /// Reduces a dense polynomial in place modulo `Phi_m` and truncates it to `dim`.
    pub fn reduce_i128(&self, a: &mut Vec<i128>) {
        let d = self.dim;
        for k in (d..a.len()).rev() {
            let c = a[k];
            if c != 0 {
                for j in 0..d {
                    a[k - d + j] -= c * self.poly[j] as i128;
                }
            }
        }
        a.truncate(d);
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.dim]
    }

    pub fn one(&self) -> Vec<i64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn root(&self, k: u64) -> Vec<i64> {
        self.zeta_pow[(k % self.conductor as u64) as usize].clone()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let d = self.dim;
        let mut prod = vec![0i128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] += x as i128 * y as i128;
                }
            }
        }
        self.reduce_i128(&mut prod);
        prod.into_iter().map(narrow).collect()
    }

    pub fn add_assign(&self, acc: &mut [i64], a: &[i64]) {
        for (s, &x) in acc.iter_mut().zip(a) {
            *s = s.checked_add(x).expect("cyclotomic coefficient overflow");
        }
    }

    pub fn add_scaled(&self, acc: &mut [i64], a: &[i64], scale: i64) {
        for (s, &x) in acc.iter_mut().zip(a) {
            *s = x
                .checked_mul(scale)
                .and_then(|v| s.checked_add(v))
                .expect("cyclotomic coefficient overflow");
        }
    }

    /// Complex conjugation, `zeta -> zeta^(m-1)`.
    pub fn conj(&self, a: &[i64]) -> Vec<i64> {
        let m = self.conductor as usize;
        let mut out = self.zero();
        for (k, &c) in a.iter().enumerate() {
            if c != 0 {
                self.add_scaled(&mut out, &self.zeta_pow[(m - k) % m], c);
            }
        }
        out
    }

    /// Powers `omega^k mod l` for `k` in `0..dim`, where `omega` has order `m` mod `l`.
    pub fn residue_basis(&self, omega: u64, l: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.dim);
        let mut w = 1 % l;
        for _ in 0..self.dim {
            out.push(w);
            w = w * omega % l;
        }
        out
    }

    /// Image of `a` under the ring map `zeta -> omega` into `F_l`.
    pub fn residue(&self, a: &[i64], basis: &[u64], l: u64) -> u64 {
        let li = l as i128;
        let mut s: i128 = 0;
        for (&c, &w) in a.iter().zip(basis) {
            if c != 0 {
                s = (s + (c as i128).rem_euclid(li) * w as i128) % li;
            }
        }
        s as u64
    }

    pub fn is_rational(&self, a: &[i64]) -> bool {
        a[1..].iter().all(|&c| c == 0)
    }
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("cyclotomic coefficient overflow")
}
