//! Scalars, dense matrices and subspaces over GF(p).
//!
//! The modulus is fixed when a session constructs its first object; all
//! operations assert that operands share it. Scalars are `u64` residues in
//! `0..p` handled through an [`Fp`] field handle, matrices are dense and
//! row-major. Everything here is exact; dimensions stay small (a few hundred),
//! so plain Gaussian elimination is the right tool.

use crate::par;
use crate::poly::FpPoly;

/// Field handle for GF(p). `p` must be an odd prime below 2^31 so products of
/// residues fit in a `u64` without overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 3 && p < (1 << 31), "modulus out of range: {p}");
        assert!(is_prime(p), "modulus must be prime: {p}");
        assert!(p % 2 == 1, "modulus must be odd: {p}");
        Fp { p }
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Canonical residue of a signed integer.
    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

/// Trial-division primality test; sufficient for the moduli accepted by
/// [`Fp::new`].
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    fp: Fp,
    rows: usize,
    cols: usize,
    dat: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(fp: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix {
            fp,
            rows,
            cols,
            dat: vec![0; rows * cols],
        }
    }

    pub fn identity(fp: Fp, n: usize) -> Self {
        let mut m = Self::zeros(fp, n, n);
        for i in 0..n {
            m.dat[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(fp: Fp, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut dat = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for v in row {
                assert!(v < fp.p(), "entry {v} not reduced mod {}", fp.p());
                dat.push(v);
            }
        }
        FpMatrix {
            fp,
            rows: r,
            cols: c,
            dat,
        }
    }

    pub fn from_flat(fp: Fp, rows: usize, cols: usize, dat: Vec<u64>) -> Self {
        assert_eq!(dat.len(), rows * cols);
        debug_assert!(dat.iter().all(|&v| v < fp.p()));
        FpMatrix {
            fp,
            rows,
            cols,
            dat,
        }
    }

    /// Column vector from a slice.
    pub fn col_vec(fp: Fp, v: &[u64]) -> Self {
        FpMatrix {
            fp,
            rows: v.len(),
            cols: 1,
            dat: v.to_vec(),
        }
    }

    #[inline]
    pub fn fp(&self) -> Fp {
        self.fp
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.dat[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.fp.p());
        self.dat[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.dat[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dat.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.fp, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.dat[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        self.zip(other, |fp, a, b| fp.add(a, b))
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        self.zip(other, |fp, a, b| fp.sub(a, b))
    }

    fn zip(&self, other: &FpMatrix, f: impl Fn(Fp, u64, u64) -> u64) -> FpMatrix {
        assert_eq!(self.fp, other.fp, "modulus mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let dat = self
            .dat
            .iter()
            .zip(&other.dat)
            .map(|(&a, &b)| f(self.fp, a, b))
            .collect();
        FpMatrix {
            fp: self.fp,
            rows: self.rows,
            cols: self.cols,
            dat,
        }
    }

    pub fn scale(&self, s: u64) -> FpMatrix {
        let dat = self.dat.iter().map(|&a| self.fp.mul(a, s)).collect();
        FpMatrix {
            fp: self.fp,
            rows: self.rows,
            cols: self.cols,
            dat,
        }
    }

    fn mul_row(&self, other: &FpMatrix, r: usize) -> Vec<u64> {
        let p = self.fp.p();
        let mut out = vec![0u64; other.cols];
        // Accumulate raw products and reduce lazily; p < 2^31 keeps
        // (p-1)^2 * 4 below u64::MAX, so reduce every four terms.
        let mut pending = 0usize;
        for k in 0..self.cols {
            let a = self.get(r, k);
            if a == 0 {
                continue;
            }
            let orow = other.row(k);
            for (o, &b) in out.iter_mut().zip(orow) {
                *o += a * b;
            }
            pending += 1;
            if pending == 4 {
                for o in out.iter_mut() {
                    *o %= p;
                }
                pending = 0;
            }
        }
        if pending > 0 {
            for o in out.iter_mut() {
                *o %= p;
            }
        }
        out
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.fp, other.fp, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let rows = par::map_vec(self.rows, |r| self.mul_row(other, r));
        FpMatrix {
            fp: self.fp,
            rows: self.rows,
            cols: other.cols,
            dat: rows.concat(),
        }
    }

    /// Sequential twin of [`FpMatrix::mul`]; benches compare the two.
    pub fn mul_seq(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.fp, other.fp, "modulus mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let rows = par::map_vec_seq(self.rows, |r| self.mul_row(other, r));
        FpMatrix {
            fp: self.fp,
            rows: self.rows,
            cols: other.cols,
            dat: rows.concat(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let p = self.fp.p();
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    if x != 0 {
                        acc = (acc + self.get(r, k) * x) % p;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = FpMatrix::identity(self.fp, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.fp, other.fp);
        assert_eq!(self.rows, other.rows);
        let mut out = FpMatrix::zeros(self.fp, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.dat[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.dat[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        out
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.fp, other.fp);
        assert_eq!(self.cols, other.cols);
        let mut dat = self.dat.clone();
        dat.extend_from_slice(&other.dat);
        FpMatrix {
            fp: self.fp,
            rows: self.rows + other.rows,
            cols: self.cols,
            dat,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.fp, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.dat[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let mut acc = 0;
        for i in 0..self.rows {
            acc = self.fp.add(acc, self.get(i, i));
        }
        acc
    }

    /// trace(self * other) without forming the product.
    pub fn trace_of_product(&self, other: &FpMatrix) -> u64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(other.cols, self.rows);
        let p = self.fp.p();
        let mut acc: u64 = 0;
        let mut pending = 0u32;
        for r in 0..self.rows {
            for c in 0..self.cols {
                acc += self.get(r, c) * other.get(c, r);
                pending += 1;
                if pending == 4 {
                    acc %= p;
                    pending = 0;
                }
            }
        }
        acc % p
    }

    /// In-place Gauss-Jordan. Returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let fp = self.fp;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.dat.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = fp.inv(self.get(r, c));
            for j in c..self.cols {
                let v = fp.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in c..self.cols {
                        let v = fp.sub(self.get(i, j), fp.mul(f, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solve `self * x = rhs` column-wise. `None` when inconsistent; free
    /// variables are set to zero, so the solution is reproducible.
    pub fn solve(&self, rhs: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(self.rows, rhs.rows, "shape mismatch");
        let aug = self.hstack(rhs);
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMatrix::zeros(self.fp, self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, red.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    /// Basis of `{x : self * x = 0}`, one column per basis vector, in the
    /// canonical free-column order.
    pub fn nullspace(&self) -> FpMatrix {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut ns = FpMatrix::zeros(self.fp, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            ns.set(fc, j, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                ns.set(pc, j, self.fp.neg(red.get(r, fc)));
            }
        }
        ns
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let aug = self.hstack(&FpMatrix::identity(self.fp, self.rows));
        let (red, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots[self.rows - 1] >= self.rows {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.fp, self.rows, self.rows);
        for r in 0..self.rows {
            for c in 0..self.rows {
                inv.set(r, c, red.get(r, self.rows + c));
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial det(xI - self), monic, by Hessenberg
    /// reduction and the leading-minor recurrence.
    pub fn charpoly(&self) -> FpPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let fp = self.fp;
        if n == 0 {
            return FpPoly::one(fp);
        }
        let mut h = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for j in 0..n.saturating_sub(2) {
            let Some(pr) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
                continue;
            };
            if pr != j + 1 {
                for c in 0..n {
                    let (a, b) = (h.get(pr, c), h.get(j + 1, c));
                    h.set(pr, c, b);
                    h.set(j + 1, c, a);
                }
                for r in 0..n {
                    let (a, b) = (h.get(r, pr), h.get(r, j + 1));
                    h.set(r, pr, b);
                    h.set(r, j + 1, a);
                }
            }
            let inv = fp.inv(h.get(j + 1, j));
            for i in j + 2..n {
                let f = fp.mul(h.get(i, j), inv);
                if f == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = fp.sub(h.get(i, c), fp.mul(f, h.get(j + 1, c)));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = fp.add(h.get(r, j + 1), fp.mul(f, h.get(r, i)));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p_k = (x - h[k][k]) p_{k-1} - sum_i h[k-i][k] (prod subdiagonals) p_{k-i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let prev = &polys[k];
            let mut cur = vec![0u64; k + 2];
            for (d, &c) in prev.iter().enumerate() {
                cur[d + 1] = fp.add(cur[d + 1], c);
                cur[d] = fp.sub(cur[d], fp.mul(h.get(k, k), c));
            }
            let mut subprod = 1u64;
            for i in 1..=k {
                subprod = fp.mul(subprod, h.get(k - i + 1, k - i));
                if subprod == 0 {
                    break;
                }
                let coef = fp.mul(h.get(k - i, k), subprod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[k - i].iter().enumerate() {
                    cur[d] = fp.sub(cur[d], fp.mul(coef, c));
                }
            }
            polys.push(cur);
        }
        FpPoly::new(fp, polys.pop().unwrap())
    }

    /// Minimal polynomial: least monic polynomial annihilating the matrix,
    /// found as the first linear dependence among its powers.
    pub fn minpoly(&self) -> FpPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let fp = self.fp;
        if n == 0 {
            return FpPoly::one(fp);
        }
        // Augmented rows [vec(A^k) | e_k]; a zero left part exposes the
        // dependence coefficients on the right.
        let w = n * n;
        let mut reduced: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut pw = FpMatrix::identity(fp, n);
        for k in 0..=n {
            let mut row: Vec<u64> = pw.dat.clone();
            row.resize(w + n + 1, 0);
            row[w + k] = 1;
            for (rr, &pc) in reduced.iter().zip(&pivots) {
                if row[pc] != 0 {
                    let f = row[pc];
                    for (a, &b) in row.iter_mut().zip(rr) {
                        *a = fp.sub(*a, fp.mul(f, b));
                    }
                }
            }
            if let Some(pc) = (0..w).find(|&c| row[c] != 0) {
                let inv = fp.inv(row[pc]);
                for a in row.iter_mut() {
                    *a = fp.mul(*a, inv);
                }
                reduced.push(row);
                pivots.push(pc);
                pw = pw.mul(self);
            } else {
                // x^k = sum c_i x^i with c_i = -row[w+i] for i < k.
                let mut coeffs = vec![0u64; k + 1];
                for (i, c) in coeffs.iter_mut().enumerate().take(k) {
                    *c = row[w + i];
                }
                coeffs[k] = 1;
                return FpPoly::new(fp, coeffs);
            }
        }
        unreachable!("dependence must appear by degree n");
    }
}

/// A subspace of GF(p)^n held as a row-rref basis matrix, which makes the
/// representation canonical: equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    mat: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(fp: Fp, ambient: usize) -> Self {
        Subspace {
            mat: FpMatrix::zeros(fp, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(fp: Fp, ambient: usize) -> Self {
        Subspace {
            mat: FpMatrix::identity(fp, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given row vectors.
    pub fn from_rows(fp: Fp, rows: Vec<Vec<u64>>, ambient: usize) -> Self {
        if rows.is_empty() {
            return Self::zero(fp, ambient);
        }
        let mut m = FpMatrix::from_rows(fp, rows);
        assert_eq!(m.cols(), ambient);
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let dat = m.dat[..rank * ambient].to_vec();
        Subspace {
            mat: FpMatrix::from_flat(fp, rank, ambient, dat),
            pivots,
        }
    }

    /// Span of the columns of a matrix.
    pub fn from_cols(m: &FpMatrix) -> Self {
        let rows = (0..m.cols()).map(|c| m.col(c)).collect();
        Self::from_rows(m.fp(), rows, m.rows())
    }

    pub fn fp(&self) -> Fp {
        self.mat.fp()
    }

    pub fn ambient(&self) -> usize {
        self.mat.cols()
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical basis vectors, one per row.
    pub fn basis_rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim()).map(|r| self.mat.row(r).to_vec()).collect()
    }

    /// Basis as matrix columns (ambient x dim).
    pub fn basis_cols(&self) -> FpMatrix {
        self.mat.transpose()
    }

    /// Reduce `v` modulo the subspace; zero iff `v` is a member.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient());
        let fp = self.fp();
        let mut v = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            if v[pc] != 0 {
                let f = v[pc];
                for (a, &b) in v.iter_mut().zip(self.mat.row(r)) {
                    *a = fp.sub(*a, fp.mul(f, b));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.mat.row(r)))
    }

    /// Coordinates of `v` in the canonical basis; `None` if not a member.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient());
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::from_rows(self.fp(), rows, self.ambient())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient());
        let fp = self.fp();
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(fp, self.ambient());
        }
        // x = A^T u = B^T v: kernel of [A^T | -B^T] yields members.
        let at = self.mat.transpose();
        let bt = other.mat.transpose().scale(fp.neg(1));
        let ker = at.hstack(&bt).nullspace();
        let rows: Vec<Vec<u64>> = (0..ker.cols())
            .map(|j| {
                let u: Vec<u64> = (0..self.dim()).map(|i| ker.get(i, j)).collect();
                at.apply(&u)
            })
            .collect();
        Subspace::from_rows(fp, rows, self.ambient())
    }

    /// Ambient coordinate indices not used as pivots; the corresponding unit
    /// vectors represent a basis of the quotient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient())
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fp {
        Fp::new(3)
    }

    #[test]
    fn scalar_arithmetic() {
        let f = Fp::new(7);
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.pow(3, 6), 1);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    #[should_panic]
    fn rejects_even_modulus() {
        Fp::new(2);
    }

    #[test]
    #[should_panic]
    fn rejects_composite_modulus() {
        Fp::new(9);
    }

    #[test]
    fn rref_solve_nullspace() {
        let f = f3();
        // x + 2y = 1, 2x + y = 2 over GF(3)
        let a = FpMatrix::from_rows(f, vec![vec![1, 2], vec![2, 1]]);
        let b = FpMatrix::col_vec(f, &[1, 2]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);

        let sing = FpMatrix::from_rows(f, vec![vec![1, 2], vec![2, 1], vec![0, 0]]);
        let bad = FpMatrix::col_vec(f, &[0, 0, 1]);
        assert!(sing.solve(&bad).is_none());

        let ns = FpMatrix::identity(f, 4).nullspace();
        assert_eq!(ns.cols(), 0);

        let m = FpMatrix::from_rows(f, vec![vec![1, 1, 1], vec![0, 0, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.cols(), 2);
        assert!(m.mul(&ns).is_zero());
    }

    #[test]
    fn rank_nullity_and_idempotent_rref() {
        let f = Fp::new(5);
        let m = FpMatrix::from_rows(
            f,
            vec![vec![1, 2, 3, 4], vec![2, 4, 1, 3], vec![3, 1, 4, 2]],
        );
        let (r1, piv) = m.rref();
        let (r2, piv2) = r1.rref();
        assert_eq!(r1, r2);
        assert_eq!(piv, piv2);
        assert_eq!(m.rank() + m.nullspace().cols(), m.cols());
    }

    #[test]
    fn inverse_round_trip() {
        let f = f3();
        let m = FpMatrix::from_rows(f, vec![vec![1, 1], vec![1, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(f, 2));
        let sing = FpMatrix::from_rows(f, vec![vec![1, 2], vec![2, 1]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn charpoly_companion_and_nilpotent() {
        let f = f3();
        // Companion matrix of x^2 + 1 over GF(3).
        let c = FpMatrix::from_rows(f, vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(c.charpoly().coeffs(), &[1, 0, 1]);
        let n = FpMatrix::from_rows(f, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(n.charpoly().coeffs(), &[0, 0, 1]);
        assert_eq!(n.minpoly().coeffs(), &[0, 0, 1]);
    }

    #[test]
    fn minpoly_annihilates_and_divides_charpoly() {
        let f = Fp::new(5);
        let m = FpMatrix::from_rows(
            f,
            vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 3]],
        );
        let mp = m.minpoly();
        // (x-2)(x-3) = x^2 + 2 over GF(5)
        assert_eq!(mp.coeffs(), &[1, 0, 1]);
        assert!(mp.eval_matrix(&m).is_zero());
        let cp = m.charpoly();
        assert!(cp.rem(&mp).is_zero());
    }

    #[test]
    fn subspace_operations() {
        let f = f3();
        let a = Subspace::from_rows(f, vec![vec![1, 0, 1], vec![0, 1, 1]], 3);
        let b = Subspace::from_rows(f, vec![vec![1, 1, 2]], 3);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[1, 1, 2]));
        assert!(a.contains_subspace(&b));
        assert_eq!(a.intersect(&b), b);
        assert_eq!(a.sum(&b), a);
        let c = Subspace::from_rows(f, vec![vec![0, 0, 1]], 3);
        assert_eq!(a.intersect(&c).dim(), 0);
        assert_eq!(a.sum(&c).dim(), 3);
        assert_eq!(a.complement_indices(), vec![2]);
    }

    #[test]
    fn subspace_canonical_form() {
        let f = f3();
        let a = Subspace::from_rows(f, vec![vec![1, 2, 0], vec![1, 1, 0]], 3);
        let b = Subspace::from_rows(f, vec![vec![2, 1, 0], vec![0, 1, 0]], 3);
        assert_eq!(a, b);
    }
}
