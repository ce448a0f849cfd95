//! Dense linear algebra over a prime field `F_l`, `l < 2^31`.

use crate::numtheory::inv_mod;

#[derive(Clone, Copy, Debug)]
pub struct Fp(pub u64);

impl Fp {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn inv(self, a: u64) -> u64 {
        inv_mod(a, self.0)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }
}

pub type Matrix = Vec<Vec<u64>>;

/// Reduced row echelon form in place; zero rows are removed. Returns pivot columns.
pub fn rref(rows: &mut Matrix, f: Fp) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : mat * x = 0}`.
pub fn nullspace(mat: &Matrix, ncols: usize, f: Fp) -> Matrix {
    let mut rows = mat.clone();
    let pivots = rref(&mut rows, f);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.sub(0, row[fc]);
            }
            v
        })
        .collect()
}

/// Similarity reduction `H = Q A Q^-1` to upper Hessenberg form. Returns `H` and `Q^-1`.
pub fn hessenberg(mut a: Matrix, f: Fp) -> (Matrix, Matrix) {
    let n = a.len();
    let mut qinv = identity(n);
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| a[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            a.swap(piv, j + 1);
            for row in a.iter_mut().chain(qinv.iter_mut()) {
                row.swap(piv, j + 1);
            }
        }
        let inv = f.inv(a[j + 1][j]);
        for k in j + 2..n {
            if a[k][j] == 0 {
                continue;
            }
            let u = f.mul(a[k][j], inv);
            // row_k -= u * row_{j+1}, then col_{j+1} += u * col_k
            let (top, bottom) = a.split_at_mut(k);
            for (x, &y) in bottom[0].iter_mut().zip(&top[j + 1]) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(u, y));
                }
            }
            for row in a.iter_mut().chain(qinv.iter_mut()) {
                if row[k] != 0 {
                    row[j + 1] = f.add(row[j + 1], f.mul(u, row[k]));
                }
            }
        }
    }
    (a, qinv)
}

/// `det(xI - H)` for upper Hessenberg `H`, constant term first.
pub fn hessenberg_char_poly(h: &Matrix, f: Fp) -> Vec<u64> {
    let n = h.len();
    // p_{m+1} = (x - h_mm) p_m - sum_i h_im * prod_{k=i+1..m} h_{k,k-1} * p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        for (k, &c) in polys[m].iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], c);
            next[k] = f.sub(next[k], f.mul(h[m][m], c));
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let coef = f.mul(h[i][m], prod);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = f.sub(next[k], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Characteristic polynomial `det(xI - A)`, constant term first.
pub fn char_poly(a: Matrix, f: Fp) -> Vec<u64> {
    hessenberg_char_poly(&hessenberg(a, f).0, f)
}

/// Kernel of `H - lambda I` for upper Hessenberg `H`.
fn hessenberg_kernel(h: &Matrix, lambda: u64, f: Fp) -> Matrix {
    let n = h.len();
    let mut rows = h.clone();
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = f.sub(row[i], lambda);
    }
    // Rows enter the active set once the column sweep reaches their subdiagonal,
    // so every active row is zero left of the current column.
    let mut pivot_row = vec![usize::MAX; n];
    let mut active: Vec<usize> = Vec::new();
    let mut next = 0;
    for col in 0..n {
        while next < n && next <= col + 1 {
            active.push(next);
            next += 1;
        }
        let Some(pos) = active.iter().position(|&r| rows[r][col] != 0) else {
            continue;
        };
        let r = active.remove(pos);
        pivot_row[col] = r;
        let inv = f.inv(rows[r][col]);
        let src = rows[r].clone();
        for &o in &active {
            let c = rows[o][col];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv);
            for (x, &y) in rows[o][col..].iter_mut().zip(&src[col..]) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
    }
    (0..n)
        .filter(|&c| pivot_row[c] == usize::MAX)
        .map(|free| {
            let mut x = vec![0u64; n];
            x[free] = 1;
            for col in (0..n).rev() {
                let r = pivot_row[col];
                if r == usize::MAX {
                    continue;
                }
                let row = &rows[r];
                let mut s = 0u64;
                for c in col + 1..n {
                    if row[c] != 0 && x[c] != 0 {
                        s = f.add(s, f.mul(row[c], x[c]));
                    }
                }
                x[col] = f.mul(f.sub(0, s), f.inv(row[col]));
            }
            x
        })
        .collect()
}

/// Eigenvalues of `a` in `F_l` (ascending) with a basis of each eigenspace.
pub fn eigenspaces(a: Matrix, f: Fp) -> Vec<(u64, Matrix)> {
    let (h, qinv) = hessenberg(a, f);
    let poly = hessenberg_char_poly(&h, f);
    roots(&poly, f)
        .into_iter()
        .map(|lambda| {
            let vecs = hessenberg_kernel(&h, lambda, f)
                .into_iter()
                .map(|u| mat_vec(&qinv, &u, f))
                .collect();
            (lambda, vecs)
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[u64], f: Fp) -> Vec<u64> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(&x, &y)| x != 0 && y != 0)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        })
        .collect()
}

/// Distinct roots of a polynomial in `F_l`, ascending, by exhaustive evaluation.
pub fn roots(poly: &[u64], f: Fp) -> Vec<u64> {
    (0..f.0)
        .filter(|&x| poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_companion() {
        // companion matrix of x^3 - 2x - 5 over F_13
        let f = Fp(13);
        let a = vec![vec![0, 0, 5], vec![1, 0, 2], vec![0, 1, 0]];
        assert_eq!(char_poly(a, f), vec![f.from_i64(-5), f.from_i64(-2), 0, 1]);
    }

    #[test]
    fn char_poly_matches_determinant_brute_force() {
        let f = Fp(101);
        let a = vec![vec![3, 7, 1], vec![2, 9, 4], vec![8, 5, 6]];
        let cp = char_poly(a.clone(), f);
        for x in 0..101u64 {
            // det(xI - A) by cofactor expansion
            let m: Vec<Vec<u64>> = (0..3)
                .map(|i| (0..3).map(|j| f.sub(if i == j { x } else { 0 }, a[i][j])).collect())
                .collect();
            let det = |r: [usize; 3]| f.mul(f.mul(m[0][r[0]], m[1][r[1]]), m[2][r[2]]);
            let d = f.sub(
                f.add(f.add(det([0, 1, 2]), det([1, 2, 0])), det([2, 0, 1])),
                f.add(f.add(det([2, 1, 0]), det([0, 2, 1])), det([1, 0, 2])),
            );
            let eval = cp.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
            assert_eq!(eval, d);
        }
    }

    #[test]
    fn eigenspaces_of_diagonalizable_matrix() {
        // S D S^-1 with D = diag(2, 2, 5, 0) over F_11
        let f = Fp(11);
        let s = vec![vec![1, 2, 0, 1], vec![0, 1, 3, 0], vec![4, 0, 1, 1], vec![0, 0, 1, 2]];
        let d = [2u64, 2, 5, 0];
        // columns of S are eigenvectors: A = S D S^-1, computed as A S = S D
        let mut sinv_rows: Matrix = s.iter().cloned().zip(identity(4)).map(|(mut a, b)| {
            a.extend(b);
            a
        }).collect();
        rref(&mut sinv_rows, f);
        let sinv: Matrix = sinv_rows.iter().map(|r| r[4..].to_vec()).collect();
        let sd: Matrix = s.iter().map(|r| r.iter().zip(&d).map(|(&x, &y)| f.mul(x, y)).collect()).collect();
        let a: Matrix = sd.iter().map(|r| {
            (0..4).map(|j| (0..4).fold(0, |acc, k| f.add(acc, f.mul(r[k], sinv[k][j])))).collect()
        }).collect();
        let es = eigenspaces(a.clone(), f);
        let summary: Vec<(u64, usize)> = es.iter().map(|(l, v)| (*l, v.len())).collect();
        assert_eq!(summary, vec![(0, 1), (2, 2), (5, 1)]);
        for (l, vs) in es {
            for v in vs {
                let av = mat_vec(&a, &v, f);
                let lv: Vec<u64> = v.iter().map(|&x| f.mul(l, x)).collect();
                assert_eq!(av, lv);
                assert!(v.iter().any(|&x| x != 0));
            }
        }
    }

    #[test]
    fn nullspace_dimension() {
        let f = Fp(7);
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(&a, 3, f);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s = row.iter().zip(&v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
        assert_eq!(roots(&[f.from_i64(-2), 0, 1], f), vec![3, 4]);
    }
}
