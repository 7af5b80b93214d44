//! Univariate polynomials over GF(p) and complete factorization.
//!
//! Coefficients are stored low degree first. Factorization is Berlekamp's
//! method: squarefree decomposition (with p-th-root descent when the
//! derivative vanishes), then kernel of the Frobenius map, then splitting by
//! gcds against shifted kernel elements. The degrees that show up here are
//! tiny, so the exhaustive scan over shift values is the simple, fully
//! deterministic choice.

use crate::fp::{Fp, FpMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    fp: Fp,
    coeffs: Vec<u64>, // low degree first, no trailing zeros (zero poly = empty)
}

impl FpPoly {
    pub fn new(fp: Fp, mut coeffs: Vec<u64>) -> Self {
        for c in &coeffs {
            assert!(*c < fp.p(), "coefficient not reduced");
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { fp, coeffs }
    }

    pub fn zero(fp: Fp) -> Self {
        FpPoly {
            fp,
            coeffs: Vec::new(),
        }
    }

    pub fn one(fp: Fp) -> Self {
        FpPoly {
            fp,
            coeffs: vec![1],
        }
    }

    pub fn x(fp: Fp) -> Self {
        FpPoly {
            fp,
            coeffs: vec![0, 1],
        }
    }

    /// x - a
    pub fn linear(fp: Fp, a: u64) -> Self {
        FpPoly {
            fp,
            coeffs: vec![fp.neg(a), 1],
        }
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.fp.inv(self.leading()))
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        FpPoly::new(
            self.fp,
            self.coeffs.iter().map(|&c| self.fp.mul(c, s)).collect(),
        )
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.fp.add(self.coeff(i), other.coeff(i)))
            .collect();
        FpPoly::new(self.fp, coeffs)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.fp.sub(self.coeff(i), other.coeff(i)))
            .collect();
        FpPoly::new(self.fp, coeffs)
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.fp);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = self.fp.add(coeffs[i + j], self.fp.mul(a, b));
            }
        }
        FpPoly::new(self.fp, coeffs)
    }

    pub fn divrem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let fp = self.fp;
        if self.degree() < divisor.degree() || self.is_zero() {
            return (FpPoly::zero(fp), self.clone());
        }
        let dlead_inv = fp.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let dq = divisor.degree();
        let mut quot = vec![0u64; self.degree() - dq + 1];
        for k in (dq..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = fp.mul(c, dlead_inv);
            quot[k - dq] = q;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dq + i] = fp.sub(rem[k - dq + i], fp.mul(q, dc));
            }
        }
        (FpPoly::new(fp, quot), FpPoly::new(fp, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.divrem(divisor).1
    }

    pub fn div_exact(&self, divisor: &FpPoly) -> FpPoly {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, exp: usize) -> FpPoly {
        let mut acc = FpPoly::one(self.fp);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Extended gcd: returns (g, u, v) monic with u*self + v*other = g.
    pub fn ext_gcd(&self, other: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let fp = self.fp;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (FpPoly::one(fp), FpPoly::zero(fp));
        let (mut v0, mut v1) = (FpPoly::zero(fp), FpPoly::one(fp));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let nu = u0.sub(&q.mul(&u1));
            let nv = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = nu;
            v0 = v1;
            v1 = nv;
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let lead_inv = fp.inv(r0.leading());
        (
            r0.scale(lead_inv),
            u0.scale(lead_inv),
            v0.scale(lead_inv),
        )
    }

    pub fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.fp);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.fp.mul(c, (i as u64) % self.fp.p()))
            .collect();
        FpPoly::new(self.fp, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.fp.add(self.fp.mul(acc, x), c);
        }
        acc
    }

    pub fn eval_matrix(&self, m: &FpMatrix) -> FpMatrix {
        assert_eq!(m.rows(), m.cols());
        let mut acc = FpMatrix::zeros(m.fp(), m.rows(), m.rows());
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..m.rows() {
                acc.set(i, i, m.fp().add(acc.get(i, i), c));
            }
        }
        acc
    }

    /// x^e mod self, by square and multiply.
    pub fn pow_x_mod(&self, e: u64) -> FpPoly {
        let mut acc = FpPoly::one(self.fp);
        let mut base = FpPoly::x(self.fp).rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(self);
            }
        }
        acc
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// plus the leading unit: `self = unit * prod f_i^{e_i}`.
    pub fn factor(&self) -> (u64, Vec<(FpPoly, usize)>) {
        assert!(!self.is_zero(), "factor of zero polynomial");
        let unit = self.leading();
        let mut out: Vec<(FpPoly, usize)> = Vec::new();
        for (g, mult) in squarefree_parts(&self.monic()) {
            for irr in berlekamp_squarefree(&g) {
                out.push((irr, mult));
            }
        }
        out.sort_by(|a, b| {
            (a.0.degree(), a.0.coeffs())
                .cmp(&(b.0.degree(), b.0.coeffs()))
        });
        (unit, out)
    }

    pub fn is_irreducible(&self) -> bool {
        if self.degree() == 0 {
            return false;
        }
        let (_, f) = self.factor();
        f.len() == 1 && f[0].1 == 1 && f[0].0.degree() == self.degree()
    }
}

/// Squarefree decomposition of a monic polynomial in characteristic p;
/// returns pairwise coprime squarefree parts with their multiplicities.
fn squarefree_parts(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let fp = f.fp();
    if f.degree() == 0 {
        return Vec::new();
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(x^p) = g(x)^p since Frobenius fixes GF(p).
        let p = fp.p() as usize;
        let mut coeffs = vec![0u64; f.degree() / p + 1];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = f.coeff(i * p);
        }
        let g = FpPoly::new(fp, coeffs);
        return squarefree_parts(&g)
            .into_iter()
            .map(|(h, m)| (h, m * p))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&deriv);
    let mut w = f.div_exact(&c);
    let mut i = 1usize;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if fac.degree() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if c.degree() > 0 {
        // Leftover p-th power: recurse on its p-th root.
        let p = fp.p() as usize;
        debug_assert!(c.derivative().is_zero());
        let mut coeffs = vec![0u64; c.degree() / p + 1];
        for (j, cc) in coeffs.iter_mut().enumerate() {
            *cc = c.coeff(j * p);
        }
        let g = FpPoly::new(fp, coeffs);
        out.extend(
            squarefree_parts(&g)
                .into_iter()
                .map(|(h, m)| (h, m * p)),
        );
    }
    out
}

/// Berlekamp factorization of a monic squarefree polynomial.
fn berlekamp_squarefree(f: &FpPoly) -> Vec<FpPoly> {
    let fp = f.fp();
    let n = f.degree();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Frobenius matrix on GF(p)[x]/(f): column i holds x^{ip} mod f.
    let mut q = FpMatrix::zeros(fp, n, n);
    let xp = f.pow_x_mod(fp.p());
    let mut col = FpPoly::one(fp);
    for i in 0..n {
        for d in 0..n {
            q.set(d, i, col.coeff(d));
        }
        col = col.mul(&xp).rem(f);
    }
    for i in 0..n {
        let v = fp.sub(q.get(i, i), 1);
        q.set(i, i, v);
    }
    let ker = q.nullspace();
    let r = ker.cols();
    if r == 1 {
        return vec![f.clone()];
    }
    // Each kernel element v has prod_s gcd(f, v - s) = f; splitting every
    // current factor against every (v, s) pair reaches all r irreducibles.
    let mut factors = vec![f.clone()];
    for j in 0..r {
        if factors.len() == r {
            break;
        }
        let v = FpPoly::new(fp, ker.col(j));
        if v.degree() == 0 {
            continue;
        }
        for s in 0..fp.p() {
            if factors.len() == r {
                break;
            }
            let shifted = v.sub(&FpPoly::new(fp, vec![s]));
            let mut next = Vec::with_capacity(factors.len());
            for g in factors {
                if g.degree() <= 1 {
                    next.push(g);
                    continue;
                }
                let d = g.gcd(&shifted);
                if d.degree() > 0 && d.degree() < g.degree() {
                    next.push(g.div_exact(&d));
                    next.push(d);
                } else {
                    next.push(g);
                }
            }
            factors = next;
        }
    }
    debug_assert_eq!(factors.len(), r, "Berlekamp split incomplete");
    factors.into_iter().map(|g| g.monic()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fp {
        Fp::new(3)
    }

    #[test]
    fn ext_gcd_bezout() {
        // x^2 + 1 is irreducible mod 3, so the shared factor is x + 2
        let f = f3();
        let a = FpPoly::new(f, vec![1, 0, 1]).mul(&FpPoly::new(f, vec![2, 1]));
        let b = FpPoly::new(f, vec![1, 1]).mul(&FpPoly::new(f, vec![2, 1]));
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(g, FpPoly::new(f, vec![2, 1]).monic());
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn arithmetic_and_division() {
        let f = f3();
        let a = FpPoly::new(f, vec![1, 0, 1]); // 1 + x^2
        let b = FpPoly::new(f, vec![1, 1]); // 1 + x
        let (q, r) = a.divrem(&b);
        assert_eq!(b.mul(&q).add(&r), a);
        assert_eq!(a.eval(1), 2);
    }

    #[test]
    fn factor_cube_roots() {
        let f = f3();
        // x^3 - x = x (x-1) (x+1)
        let poly = FpPoly::new(f, vec![0, 2, 0, 1]);
        let (unit, facs) = poly.factor();
        assert_eq!(unit, 1);
        let expected = [
            FpPoly::new(f, vec![0, 1]),
            FpPoly::new(f, vec![1, 1]),
            FpPoly::new(f, vec![2, 1]),
        ];
        assert_eq!(facs.len(), 3);
        for (fac, m) in &facs {
            assert_eq!(*m, 1);
            assert!(expected.contains(fac));
        }
    }

    #[test]
    fn factor_frobenius_power() {
        let f = f3();
        // x^3 - 1 = (x - 1)^3 in characteristic 3
        let poly = FpPoly::new(f, vec![2, 0, 0, 1]);
        let (_, facs) = poly.factor();
        assert_eq!(facs, vec![(FpPoly::new(f, vec![2, 1]), 3)]);
    }

    #[test]
    fn factor_irreducible_quadratic() {
        let f = f3();
        // x^2 + 1 has no roots mod 3
        let poly = FpPoly::new(f, vec![1, 0, 1]);
        assert!(poly.is_irreducible());
    }

    #[test]
    fn factor_round_trip_mixed() {
        let f = Fp::new(5);
        // 2 (x^2+2)^2 (x+1) : rebuild from factors, unit included
        let a = FpPoly::new(f, vec![2, 0, 1]);
        let b = FpPoly::new(f, vec![1, 1]);
        let poly = a.mul(&a).mul(&b).scale(2);
        let (unit, facs) = poly.factor();
        let mut rebuilt = FpPoly::new(f, vec![unit]);
        for (fac, m) in &facs {
            assert!(fac.is_monic());
            for _ in 0..*m {
                rebuilt = rebuilt.mul(fac);
            }
        }
        assert_eq!(rebuilt, poly);
    }

    #[test]
    fn squarefree_multiplicities() {
        let f = f3();
        // x^2 (x-1)^3
        let poly = FpPoly::new(f, vec![0, 0, 1])
            .mul(&FpPoly::linear(f, 1))
            .mul(&FpPoly::linear(f, 1))
            .mul(&FpPoly::linear(f, 1));
        let (_, facs) = poly.factor();
        assert!(facs.contains(&(FpPoly::x(f), 2)));
        assert!(facs.contains(&(FpPoly::linear(f, 1), 3)));
    }
}
