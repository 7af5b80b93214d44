//! Constructors for the algebras this crate studies: truncated polynomial
//! rings, matrix and (dual) group algebras, tensor products, restricted
//! enveloping algebras of Lie superalgebras, smash products, bosonizations,
//! divided-power Hopf algebras, duals, and Hopf quotients.
//!
//! The enveloping algebra is built on the monomial basis
//! x_1^(a_1) ... x_r^(a_r) y_1^(e_1) ... y_s^(e_s) with a_i < p and e_j < 2,
//! by rewriting g * monomial recursively: prepend when the generator is
//! smallest, bump the exponent (folding x^p into the p-map and y^2 into
//! [y,y]/2 on overflow), or swap past the leading factor with a Koszul sign
//! plus a bracket correction. Each swap's same-degree subterms start with a
//! smaller generator, so the recursion terminates; results are memoized and
//! the full table is assembled degreewise from products of generator
//! operators.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{HopfData, StructAlgebra};
use crate::analysis;
use crate::fp::{Fp, FpMatrix, Subspace};
use crate::lie::{LieError, RestrictedLieSuper};
use crate::module::AlgModule;

/// Hard cap on constructed dimension: structure constants are stored densely
/// (dim^3 entries), so this bounds memory.
pub const DENSE_DIM_CAP: usize = 320;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid restricted Lie superalgebra: {0}")]
    Lie(#[from] LieError),
    #[error("dimension {dim} exceeds the dense structure-constant cap {cap}")]
    TooLarge { dim: u128, cap: usize },
    #[error("the given map is not an algebra automorphism")]
    NotAutomorphism,
    #[error("the given map does not satisfy sigma^{want} = id")]
    WrongOrder { want: usize },
    #[error("group order {order} is divisible by the characteristic {p}")]
    OrderDivisibleByP { order: usize, p: u64 },
    #[error("multiplication is not Z_{modulus}-graded: product of basis {i}, {j} breaks degree")]
    NotGraded { i: usize, j: usize, modulus: usize },
    #[error("construction needs a parity-graded algebra")]
    NotSuper,
    #[error("construction needs Hopf data")]
    NoHopfData,
    #[error("generator {generator} does not span a Hopf ideal: {law} law fails")]
    NotHopfIdeal {
        generator: usize,
        law: &'static str,
    },
}

/// k[x]/(x^n) with the augmentation x -> 0.
pub fn truncated_polynomial(fp: Fp, n: usize) -> StructAlgebra {
    assert!(n >= 1);
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let mut mult = vec![0u64; n * n * n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mult[(i * n + j) * n + i + j] = 1;
            }
        }
    }
    let mut unit = vec![0u64; n];
    unit[0] = 1;
    let mut aug = vec![0u64; n];
    aug[0] = 1;
    StructAlgebra::new(fp, labels, mult, unit, None)
        .with_augmentation(aug)
        .with_frobenius_flag(true)
}

/// Full matrix algebra M_n(GF(p)) on the elementary-matrix basis.
pub fn matrix_algebra(fp: Fp, n: usize) -> StructAlgebra {
    let dim = n * n;
    let labels = (0..n)
        .flat_map(|r| (0..n).map(move |c| format!("E{}{}", r + 1, c + 1)))
        .collect();
    let mut mult = vec![0u64; dim * dim * dim];
    for r in 0..n {
        for c in 0..n {
            let i = r * n + c;
            for r2 in 0..n {
                for c2 in 0..n {
                    let j = r2 * n + c2;
                    if c == r2 {
                        mult[(i * dim + j) * dim + r * n + c2] = 1;
                    }
                }
            }
        }
    }
    let mut unit = vec![0u64; dim];
    for r in 0..n {
        unit[r * n + r] = 1;
    }
    StructAlgebra::new(fp, labels, mult, unit, None).with_frobenius_flag(true)
}

/// Functions on Z_m: the dual group algebra, with its Hopf structure
/// (deconcatenation of the group law).
pub fn function_algebra(fp: Fp, m: usize) -> StructAlgebra {
    assert!(m >= 1);
    let labels = (0..m).map(|i| format!("d{i}")).collect();
    let mut mult = vec![0u64; m * m * m];
    for i in 0..m {
        mult[(i * m + i) * m + i] = 1;
    }
    let unit = vec![1u64; m];
    let mut comult = vec![vec![0u64; m * m]; m];
    for i in 0..m {
        for j in 0..m {
            let l = (i + m - j) % m;
            comult[i][j * m + l] = 1;
        }
    }
    let mut counit = vec![0u64; m];
    counit[0] = 1;
    let mut antipode = FpMatrix::zeros(fp, m, m);
    for i in 0..m {
        antipode.set((m - i) % m, i, 1);
    }
    StructAlgebra::new(fp, labels, mult, unit, None).with_hopf(HopfData {
        comult,
        counit,
        antipode,
    })
}

/// Group algebra of Z_m with its Hopf structure (grouplike generators).
pub fn cyclic_group_algebra(fp: Fp, m: usize) -> StructAlgebra {
    assert!(m >= 1);
    let labels = (0..m).map(|j| format!("g^{j}")).collect();
    let mut mult = vec![0u64; m * m * m];
    for i in 0..m {
        for j in 0..m {
            mult[(i * m + j) * m + (i + j) % m] = 1;
        }
    }
    let mut unit = vec![0u64; m];
    unit[0] = 1;
    let mut comult = vec![vec![0u64; m * m]; m];
    for j in 0..m {
        comult[j][j * m + j] = 1;
    }
    let counit = vec![1u64; m];
    let mut antipode = FpMatrix::zeros(fp, m, m);
    for j in 0..m {
        antipode.set((m - j) % m, j, 1);
    }
    StructAlgebra::new(fp, labels, mult, unit, None).with_hopf(HopfData {
        comult,
        counit,
        antipode,
    })
}

/// Tensor product with the Koszul sign rule; an ungraded factor counts as
/// concentrated in even degree.
pub fn tensor_algebra_product(a: &StructAlgebra, b: &StructAlgebra) -> StructAlgebra {
    assert_eq!(a.fp().p(), b.fp().p());
    let fp = a.fp();
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    assert!(dim <= DENSE_DIM_CAP, "tensor dimension over the dense cap");
    let pa: Vec<u8> = a
        .parity()
        .map(|p| p.to_vec())
        .unwrap_or_else(|| vec![0; da]);
    let pb: Vec<u8> = b
        .parity()
        .map(|p| p.to_vec())
        .unwrap_or_else(|| vec![0; db]);
    let idx = |i: usize, k: usize| i * db + k;
    let labels = (0..da)
        .flat_map(|i| {
            let la = &a.labels()[i];
            (0..db).map(move |k| format!("{}*{}", la, b.labels()[k]))
        })
        .collect();
    let mut mult = vec![0u64; dim * dim * dim];
    for i in 0..da {
        for k in 0..db {
            for j in 0..da {
                for l in 0..db {
                    // (a_i ⊗ b_k)(a_j ⊗ b_l) = (-1)^(|b_k||a_j|) a_i a_j ⊗ b_k b_l
                    let sign_flip = pb[k] & pa[j] == 1;
                    let ca = a.c(i, j);
                    let cb = b.c(k, l);
                    let base = (idx(i, k) * dim + idx(j, l)) * dim;
                    for (u, &x) in ca.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (v, &y) in cb.iter().enumerate() {
                            if y == 0 {
                                continue;
                            }
                            let val = fp.mul(x, y);
                            let val = if sign_flip { fp.neg(val) } else { val };
                            let slot = &mut mult[base + idx(u, v)];
                            *slot = fp.add(*slot, val);
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![0u64; dim];
    for (i, &x) in a.unit().iter().enumerate() {
        for (k, &y) in b.unit().iter().enumerate() {
            unit[idx(i, k)] = fp.mul(x, y);
        }
    }
    let parity = if a.parity().is_some() || b.parity().is_some() {
        let mut par = Vec::with_capacity(dim);
        for i in 0..da {
            for k in 0..db {
                par.push((pa[i] + pb[k]) % 2);
            }
        }
        Some(par)
    } else {
        None
    };
    let mut out = StructAlgebra::new(fp, labels, mult, unit, parity);
    if let (Some(aa), Some(ab)) = (a.augmentation(), b.augmentation()) {
        let mut aug = vec![0u64; dim];
        for i in 0..da {
            for k in 0..db {
                aug[idx(i, k)] = fp.mul(aa[i], ab[k]);
            }
        }
        out = out.with_augmentation(aug);
    }
    out.with_frobenius_flag(a.frobenius_by_construction() && b.frobenius_by_construction())
}

/// Restricted enveloping algebra together with its monomial bookkeeping.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub algebra: Arc<StructAlgebra>,
    /// Monomial index of each Lie generator.
    pub generator_monomials: Vec<usize>,
    /// Exponent tuple of each monomial, generator order.
    pub exponents: Vec<Vec<u8>>,
    /// Monomials with no odd factors: a basis of the even subalgebra.
    pub even_monomials: Vec<usize>,
    pub even_gens: usize,
    pub odd_gens: usize,
}

impl Envelope {
    /// Image of a Lie element under the canonical embedding.
    pub fn embed(&self, lie_coords: &[u64]) -> Vec<u64> {
        let fp = self.algebra.fp();
        let mut v = vec![0u64; self.algebra.dim()];
        for (l, &c) in lie_coords.iter().enumerate() {
            if c != 0 {
                let m = self.generator_monomials[l];
                v[m] = fp.add(v[m], c);
            }
        }
        v
    }
}

struct PbwCtx<'a> {
    lie: &'a RestrictedLieSuper,
    fp: Fp,
    dim: usize,
    strides: Vec<usize>,
    radices: Vec<u64>,
    memo: Vec<Vec<Option<Vec<u64>>>>,
}

impl<'a> PbwCtx<'a> {
    fn digit(&self, m: usize, g: usize) -> u64 {
        (m / self.strides[g]) as u64 % self.radices[g]
    }

    fn first_factor(&self, m: usize) -> Option<usize> {
        (0..self.lie.dim()).find(|&g| self.digit(m, g) != 0)
    }

    fn degree(&self, m: usize) -> u64 {
        (0..self.lie.dim()).map(|g| self.digit(m, g)).sum()
    }

    fn parity(&self, m: usize) -> u8 {
        let even = self.lie.even_dim();
        let odd: u64 = (even..self.lie.dim()).map(|g| self.digit(m, g)).sum();
        (odd % 2) as u8
    }

    fn unit_vec(&self, m: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim];
        v[m] = 1;
        v
    }

    /// Coordinates of generator_g * monomial_m in the monomial basis.
    fn mult_gen(&mut self, g: usize, m: usize) -> Vec<u64> {
        if let Some(v) = &self.memo[g][m] {
            return v.clone();
        }
        let result = self.compute(g, m);
        self.memo[g][m] = Some(result.clone());
        result
    }

    fn compute(&mut self, g: usize, m: usize) -> Vec<u64> {
        let fp = self.fp;
        let h = match self.first_factor(m) {
            None => return self.unit_vec(self.strides[g]),
            Some(h) => h,
        };
        if g < h {
            return self.unit_vec(m + self.strides[g]);
        }
        if g == h {
            let e = self.digit(m, g);
            if e + 1 < self.radices[g] {
                return self.unit_vec(m + self.strides[g]);
            }
            // exponent overflow: fold into the p-map (even) or [y,y]/2 (odd)
            let m_rest = m - (e as usize) * self.strides[g];
            let fold: Vec<u64> = if g < self.lie.even_dim() {
                self.lie.pmap_of(g).to_vec()
            } else {
                let half = fp.inv(2);
                self.lie
                    .bracket_of(g, g)
                    .iter()
                    .map(|&c| fp.mul(half, c))
                    .collect()
            };
            let mut acc = vec![0u64; self.dim];
            for (l, &c) in fold.iter().enumerate() {
                if c != 0 {
                    let part = self.mult_gen(l, m_rest);
                    for (slot, &x) in acc.iter_mut().zip(&part) {
                        *slot = fp.add(*slot, fp.mul(c, x));
                    }
                }
            }
            return acc;
        }
        // g > h: swap past the leading factor
        let m1 = m - self.strides[h];
        let inner = self.mult_gen(g, m1);
        let sign_flip = self.lie.parity(g) & self.lie.parity(h) == 1;
        let mut acc = vec![0u64; self.dim];
        for (n, &c) in inner.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let part = self.mult_gen(h, n);
            let c = if sign_flip { fp.neg(c) } else { c };
            for (slot, &x) in acc.iter_mut().zip(&part) {
                *slot = fp.add(*slot, fp.mul(c, x));
            }
        }
        let bracket = self.lie.bracket_of(g, h).to_vec();
        for (l, &c) in bracket.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let part = self.mult_gen(l, m1);
            for (slot, &x) in acc.iter_mut().zip(&part) {
                *slot = fp.add(*slot, fp.mul(c, x));
            }
        }
        acc
    }
}

/// Restricted enveloping algebra of a validated restricted Lie superalgebra,
/// with its full Hopf structure (generators primitive).
pub fn envelope(lie: &RestrictedLieSuper) -> Result<Envelope, ConstructError> {
    lie.validate()?;
    let fp = lie.fp();
    let p = fp.p();
    let ngen = lie.dim();
    let radices: Vec<u64> = (0..ngen)
        .map(|g| if g < lie.even_dim() { p } else { 2 })
        .collect();
    let mut dim_check: u128 = 1;
    for &r in &radices {
        dim_check *= r as u128;
    }
    if dim_check > DENSE_DIM_CAP as u128 {
        return Err(ConstructError::TooLarge {
            dim: dim_check,
            cap: DENSE_DIM_CAP,
        });
    }
    let dim = dim_check as usize;
    let mut strides = vec![1usize; ngen];
    for g in 1..ngen {
        strides[g] = strides[g - 1] * radices[g - 1] as usize;
    }
    let mut ctx = PbwCtx {
        lie,
        fp,
        dim,
        strides: strides.clone(),
        radices,
        memo: vec![vec![None; dim]; ngen],
    };

    // generator operators, one column per monomial
    let gen_ops: Vec<FpMatrix> = (0..ngen)
        .map(|g| {
            let mut mat = FpMatrix::zeros(fp, dim, dim);
            for m in 0..dim {
                for (r, &val) in ctx.mult_gen(g, m).iter().enumerate() {
                    if val != 0 {
                        mat.set(r, m, val);
                    }
                }
            }
            mat
        })
        .collect();

    // assemble left-multiplication operators degreewise
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&m| (ctx.degree(m), m));
    let mut ops: Vec<Option<FpMatrix>> = vec![None; dim];
    ops[0] = Some(FpMatrix::identity(fp, dim));
    for &m in order.iter().skip(1) {
        let h = ctx.first_factor(m).unwrap();
        let prev = ops[m - strides[h]]
            .as_ref()
            .expect("lower-degree operator already assembled");
        ops[m] = Some(gen_ops[h].mul(prev));
    }

    let mut mult = vec![0u64; dim * dim * dim];
    for i in 0..dim {
        let op = ops[i].as_ref().unwrap();
        for j in 0..dim {
            let base = (i * dim + j) * dim;
            for l in 0..dim {
                mult[base + l] = op.get(l, j);
            }
        }
    }

    let exponents: Vec<Vec<u8>> = (0..dim)
        .map(|m| (0..ngen).map(|g| ctx.digit(m, g) as u8).collect())
        .collect();
    let labels: Vec<String> = (0..dim)
        .map(|m| {
            if m == 0 {
                return "1".to_string();
            }
            let parts: Vec<String> = (0..ngen)
                .filter(|&g| exponents[m][g] != 0)
                .map(|g| {
                    let name = &lie.labels()[g];
                    if exponents[m][g] == 1 {
                        name.clone()
                    } else {
                        format!("{}^{}", name, exponents[m][g])
                    }
                })
                .collect();
            parts.join("*")
        })
        .collect();
    let parity: Vec<u8> = (0..dim).map(|m| ctx.parity(m)).collect();
    let mut unit = vec![0u64; dim];
    unit[0] = 1;
    let alg = StructAlgebra::new(fp, labels, mult, unit, Some(parity.clone()));

    // re-verify the defining relations on the finished table
    let gen_mono: Vec<usize> = strides.clone();
    let embed = |coords: &[u64]| -> Vec<u64> {
        let mut v = vec![0u64; dim];
        for (l, &c) in coords.iter().enumerate() {
            if c != 0 {
                v[gen_mono[l]] = fp.add(v[gen_mono[l]], c);
            }
        }
        v
    };
    for g in 0..ngen {
        for h in 0..ngen {
            let bg = alg.basis_vector(gen_mono[g]);
            let bh = alg.basis_vector(gen_mono[h]);
            let gh = alg.multiply(&bg, &bh);
            let hg = alg.multiply(&bh, &bg);
            let sign_flip = lie.parity(g) & lie.parity(h) == 1;
            let mut comm = vec![0u64; dim];
            for k in 0..dim {
                let x = if sign_flip {
                    fp.add(gh[k], hg[k])
                } else {
                    fp.sub(gh[k], hg[k])
                };
                comm[k] = x;
            }
            assert_eq!(
                comm,
                embed(lie.bracket_of(g, h)),
                "bracket relation failed in the envelope"
            );
        }
    }
    for g in 0..lie.even_dim() {
        let bg = alg.basis_vector(gen_mono[g]);
        let mut pw = bg.clone();
        for _ in 1..p {
            pw = alg.multiply(&pw, &bg);
        }
        assert_eq!(
            pw,
            embed(lie.pmap_of(g)),
            "p-th power relation failed in the envelope"
        );
    }

    // Hopf structure: generators are primitive; extend multiplicatively
    let mut comult_mats: Vec<Option<FpMatrix>> = vec![None; dim];
    let mut start = FpMatrix::zeros(fp, dim, dim);
    start.set(0, 0, 1);
    comult_mats[0] = Some(start);
    for &m in order.iter().skip(1) {
        let h = ctx.first_factor(m).unwrap();
        let prev = comult_mats[m - strides[h]].as_ref().unwrap();
        // (h ⊗ 1 + 1 ⊗ h) acting on sum u ⊗ v: left legs get L_h, right
        // legs get a Koszul sign by the left leg's parity
        let left = gen_ops[h].mul(prev);
        let mut signed = prev.clone();
        if lie.parity(h) == 1 {
            for u in 0..dim {
                if parity[u] == 1 {
                    for v in 0..dim {
                        signed.set(u, v, fp.neg(signed.get(u, v)));
                    }
                }
            }
        }
        let right = signed.mul(&gen_ops[h].transpose());
        comult_mats[m] = Some(left.add(&right));
    }
    let comult: Vec<Vec<u64>> = comult_mats
        .into_iter()
        .map(|m| {
            let m = m.unwrap();
            let mut flat = Vec::with_capacity(dim * dim);
            for u in 0..dim {
                for v in 0..dim {
                    flat.push(m.get(u, v));
                }
            }
            flat
        })
        .collect();
    let mut counit = vec![0u64; dim];
    counit[0] = 1;
    let mut antipode = FpMatrix::zeros(fp, dim, dim);
    antipode.set(0, 0, 1);
    let right_ops: Vec<FpMatrix> = (0..ngen)
        .map(|g| alg.right_mult_matrix(&alg.basis_vector(gen_mono[g])))
        .collect();
    for &m in order.iter().skip(1) {
        let h = ctx.first_factor(m).unwrap();
        let m1 = m - strides[h];
        let prev = antipode.col(m1);
        // S(h m1) = (-1)^(|h||m1|) S(m1) S(h), S(h) = -h
        let mut img = right_ops[h].apply(&prev);
        let flip = lie.parity(h) & parity[m1] == 0;
        for x in img.iter_mut() {
            if flip {
                *x = fp.neg(*x);
            }
        }
        for (r, &val) in img.iter().enumerate() {
            antipode.set(r, m, val);
        }
    }

    let alg = alg.with_hopf(HopfData {
        comult,
        counit,
        antipode,
    });
    let even_monomials: Vec<usize> = (0..dim)
        .filter(|&m| {
            (lie.even_dim()..ngen).all(|g| exponents[m][g] == 0)
        })
        .collect();
    Ok(Envelope {
        algebra: Arc::new(alg),
        generator_monomials: gen_mono,
        exponents,
        even_monomials,
        even_gens: lie.even_dim(),
        odd_gens: lie.odd_dim(),
    })
}

/// Smash product A # kZ_m along an automorphism sigma of order dividing m,
/// with m coprime to p. Basis (a_i ⊗ g^j) at index j*dim(A) + i.
pub fn smash_group(
    a: &StructAlgebra,
    m: usize,
    sigma: &FpMatrix,
) -> Result<StructAlgebra, ConstructError> {
    let fp = a.fp();
    let da = a.dim();
    assert!(m >= 1);
    if m as u64 % fp.p() == 0 {
        return Err(ConstructError::OrderDivisibleByP {
            order: m,
            p: fp.p(),
        });
    }
    if sigma.rows() != da || sigma.cols() != da {
        return Err(ConstructError::NotAutomorphism);
    }
    if sigma.apply(a.unit()) != a.unit() || sigma.rank() != da {
        return Err(ConstructError::NotAutomorphism);
    }
    for i in 0..da {
        for j in 0..da {
            let lhs = sigma.apply(a.c(i, j));
            let rhs = a.multiply(&sigma.col(i), &sigma.col(j));
            if lhs != rhs {
                return Err(ConstructError::NotAutomorphism);
            }
        }
    }
    let mut powers = vec![FpMatrix::identity(fp, da)];
    for j in 1..=m {
        powers.push(sigma.mul(&powers[j - 1]));
    }
    if powers[m] != FpMatrix::identity(fp, da) {
        return Err(ConstructError::WrongOrder { want: m });
    }

    let dim = da * m;
    assert!(dim <= DENSE_DIM_CAP, "smash dimension over the dense cap");
    let idx = |i: usize, j: usize| j * da + i;
    let mut mult = vec![0u64; dim * dim * dim];
    for j in 0..m {
        for i in 0..da {
            for l in 0..m {
                for k in 0..da {
                    // (a_i ⊗ g^j)(a_k ⊗ g^l) = a_i sigma^j(a_k) ⊗ g^(j+l)
                    let w = a.multiply(&a.basis_vector(i), &powers[j].col(k));
                    let sector = (j + l) % m;
                    let base = (idx(i, j) * dim + idx(k, l)) * dim;
                    for (u, &c) in w.iter().enumerate() {
                        if c != 0 {
                            mult[base + idx(u, sector)] = c;
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![0u64; dim];
    for (i, &c) in a.unit().iter().enumerate() {
        unit[idx(i, 0)] = c;
    }
    let labels = (0..m)
        .flat_map(|j| {
            (0..da).map(move |i| format!("{}#g{}", a.labels()[i], j))
        })
        .collect();
    let parity = a.parity().and_then(|par| {
        // sigma must preserve the grading for the product to stay graded
        let preserved = (0..da).all(|i| {
            sigma
                .col(i)
                .iter()
                .enumerate()
                .all(|(r, &c)| c == 0 || par[r] == par[i])
        });
        preserved.then(|| {
            (0..m)
                .flat_map(|_| par.iter().copied())
                .collect::<Vec<u8>>()
        })
    });
    let mut out = StructAlgebra::new(fp, labels, mult, unit, parity)
        .with_frobenius_flag(a.frobenius_by_construction());
    if let Some(aug) = a.augmentation() {
        let preserved = (0..da).all(|i| {
            let mut acc = 0;
            for (r, &c) in sigma.col(i).iter().enumerate() {
                acc = fp.add(acc, fp.mul(c, aug[r]));
            }
            acc == aug[i]
        });
        if preserved {
            let mut big = vec![0u64; dim];
            for j in 0..m {
                for i in 0..da {
                    big[idx(i, j)] = aug[i];
                }
            }
            out = out.with_augmentation(big);
        }
    }
    Ok(out)
}

/// Smash product A # functions(Z_m) for a Z_m-graded A. Basis
/// (a_i ⊗ delta_u) at index u*dim(A) + i.
pub fn smash_function_algebra(
    a: &StructAlgebra,
    m: usize,
    grading: &[usize],
) -> Result<StructAlgebra, ConstructError> {
    let fp = a.fp();
    let da = a.dim();
    assert_eq!(grading.len(), da);
    assert!(grading.iter().all(|&g| g < m));
    for (i, &u) in a.unit().iter().enumerate() {
        if u != 0 && grading[i] != 0 {
            return Err(ConstructError::NotGraded {
                i,
                j: i,
                modulus: m,
            });
        }
    }
    for i in 0..da {
        for j in 0..da {
            let want = (grading[i] + grading[j]) % m;
            for (l, &c) in a.c(i, j).iter().enumerate() {
                if c != 0 && grading[l] != want {
                    return Err(ConstructError::NotGraded { i, j, modulus: m });
                }
            }
        }
    }
    let dim = da * m;
    assert!(dim <= DENSE_DIM_CAP, "smash dimension over the dense cap");
    let idx = |i: usize, u: usize| u * da + i;
    let mut mult = vec![0u64; dim * dim * dim];
    for u in 0..m {
        for i in 0..da {
            for v in 0..m {
                for k in 0..da {
                    // (a_i ⊗ d_u)(a_k ⊗ d_v) = [deg a_k = u - v] a_i a_k ⊗ d_v
                    if grading[k] != (u + m - v) % m {
                        continue;
                    }
                    let base = (idx(i, u) * dim + idx(k, v)) * dim;
                    for (w, &c) in a.c(i, k).iter().enumerate() {
                        if c != 0 {
                            mult[base + idx(w, v)] = c;
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![0u64; dim];
    for u in 0..m {
        for (i, &c) in a.unit().iter().enumerate() {
            unit[idx(i, u)] = c;
        }
    }
    let labels = (0..m)
        .flat_map(|u| {
            (0..da).map(move |i| format!("{}#d{}", a.labels()[i], u))
        })
        .collect();
    let parity = a.parity().map(|par| {
        (0..m)
            .flat_map(|_| par.iter().copied())
            .collect::<Vec<u8>>()
    });
    let mut out = StructAlgebra::new(fp, labels, mult, unit, parity)
        .with_frobenius_flag(a.frobenius_by_construction());
    if let Some(aug) = a.augmentation() {
        let mut big = vec![0u64; dim];
        for (i, &c) in aug.iter().enumerate() {
            big[idx(i, 0)] = c;
        }
        if out.is_character(&big) {
            out = out.with_augmentation(big);
        }
    }
    Ok(out)
}

/// Bosonization of a super Hopf algebra: the smash product with kZ_2 along
/// the parity involution, as an ordinary (ungraded) Hopf algebra.
pub fn bosonize(h: &StructAlgebra) -> Result<StructAlgebra, ConstructError> {
    let par = h.parity().ok_or(ConstructError::NotSuper)?.to_vec();
    let fp = h.fp();
    let da = h.dim();
    let dim = 2 * da;
    assert!(dim <= DENSE_DIM_CAP, "bosonization over the dense cap");
    let idx = |i: usize, j: usize| j * da + i;
    let sgn = |i: usize, j: usize| -> bool { par[i] == 1 && j == 1 };

    let mut mult = vec![0u64; dim * dim * dim];
    for j in 0..2usize {
        for i in 0..da {
            for l in 0..2usize {
                for k in 0..da {
                    // (a ⊗ g^j)(b ⊗ g^l) = (-1)^(j|b|) ab ⊗ g^(j+l)
                    let sector = (j + l) % 2;
                    let flip = sgn(k, j);
                    let base = (idx(i, j) * dim + idx(k, l)) * dim;
                    for (u, &c) in h.c(i, k).iter().enumerate() {
                        if c != 0 {
                            mult[base + idx(u, sector)] = if flip { fp.neg(c) } else { c };
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![0u64; dim];
    for (i, &c) in h.unit().iter().enumerate() {
        unit[idx(i, 0)] = c;
    }
    let labels: Vec<String> = (0..2usize)
        .flat_map(|j| {
            (0..da).map(move |i| format!("{}#g{}", h.labels()[i], j))
        })
        .collect();
    let out = StructAlgebra::new(fp, labels, mult, unit, None)
        .with_frobenius_flag(h.frobenius_by_construction());
    let Some(hopf) = h.hopf().cloned() else {
        return Ok(out);
    };

    // biproduct coproduct: Delta(a ⊗ g^j) =
    //   sum (a_(1) ⊗ g^(|a_(2)|+j)) ⊗ (a_(2) ⊗ g^j)
    let mut comult = vec![vec![0u64; dim * dim]; dim];
    for j in 0..2usize {
        for i in 0..da {
            let d = &hopf.comult[i];
            let target = &mut comult[idx(i, j)];
            for u in 0..da {
                for v in 0..da {
                    let c = d[u * da + v];
                    if c != 0 {
                        let left = idx(u, (par[v] as usize + j) % 2);
                        let right = idx(v, j);
                        target[left * dim + right] = fp.add(target[left * dim + right], c);
                    }
                }
            }
        }
    }
    let mut counit = vec![0u64; dim];
    for j in 0..2usize {
        for i in 0..da {
            counit[idx(i, j)] = hopf.counit[i];
        }
    }
    // S(a ⊗ g^j) = (-1)^((|a|+j)|a|) S_A(a) ⊗ g^(|a|+j)
    let mut antipode = FpMatrix::zeros(fp, dim, dim);
    for j in 0..2usize {
        for i in 0..da {
            let sector = (par[i] as usize + j) % 2;
            let flip = par[i] == 1 && (par[i] as usize + j) % 2 == 1;
            for (r, &c) in hopf.antipode.col(i).iter().enumerate() {
                if c != 0 {
                    antipode.set(
                        idx(r, sector),
                        idx(i, j),
                        if flip { fp.neg(c) } else { c },
                    );
                }
            }
        }
    }
    Ok(out.with_hopf(HopfData {
        comult,
        counit,
        antipode,
    }))
}

/// Transport a super module over h to a module over its bosonization: the
/// group generator acts as the parity involution of the module.
pub fn super_to_bosonized_module(
    m: &AlgModule,
    bos: &Arc<StructAlgebra>,
) -> Result<AlgModule, ConstructError> {
    let par = m.parity().ok_or(ConstructError::NotSuper)?.to_vec();
    let h = m.alg();
    let da = h.dim();
    assert_eq!(bos.dim(), 2 * da, "bosonization dimension mismatch");
    let fp = h.fp();
    let d = m.dim();
    let mut invol = FpMatrix::zeros(fp, d, d);
    for (r, &p) in par.iter().enumerate() {
        invol.set(r, r, if p == 1 { fp.neg(1) } else { 1 });
    }
    let action = (0..bos.dim())
        .map(|t| {
            let (i, j) = (t % da, t / da);
            if j == 0 {
                m.action(i).clone()
            } else {
                m.action(i).mul(&invol)
            }
        })
        .collect();
    Ok(AlgModule::new(Arc::clone(bos), action, None))
}

/// Divided power Hopf algebra of height n: basis alpha_0..alpha_(p^n - 1),
/// alpha_i alpha_j = binom(i+j, i) alpha_(i+j), deconcatenation coproduct.
pub fn divided_power_hopf(fp: Fp, n: u32) -> StructAlgebra {
    let p = fp.p();
    let dim_u = p.checked_pow(n).expect("divided power dimension overflow") as usize;
    assert!(dim_u <= DENSE_DIM_CAP, "divided power algebra over the dense cap");
    let dim = dim_u;
    let labels = (0..dim)
        .map(|i| if i == 0 { "1".to_string() } else { format!("a({i})") })
        .collect();
    let mut mult = vec![0u64; dim * dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            if i + j < dim {
                let c = binomial_mod_p(fp, (i + j) as u64, i as u64);
                mult[(i * dim + j) * dim + i + j] = c;
            }
        }
    }
    let mut unit = vec![0u64; dim];
    unit[0] = 1;
    let mut comult = vec![vec![0u64; dim * dim]; dim];
    for i in 0..dim {
        for a in 0..=i {
            comult[i][a * dim + (i - a)] = 1;
        }
    }
    let mut counit = vec![0u64; dim];
    counit[0] = 1;
    let mut antipode = FpMatrix::zeros(fp, dim, dim);
    for i in 0..dim {
        let v = if i % 2 == 1 { fp.neg(1) } else { 1 };
        antipode.set(i, i, v);
    }
    StructAlgebra::new(fp, labels, mult, unit, None).with_hopf(HopfData {
        comult,
        counit,
        antipode,
    })
}

/// Lucas: binomial(n, k) mod p.
pub fn binomial_mod_p(fp: Fp, mut n: u64, mut k: u64) -> u64 {
    let p = fp.p();
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        // binomial(nd, kd) for digits < p
        let mut num = 1u64;
        let mut den = 1u64;
        for t in 0..kd {
            num = fp.mul(num, (nd - t) % p);
            den = fp.mul(den, (t + 1) % p);
        }
        acc = fp.mul(acc, fp.mul(num, fp.inv(den.max(1))));
        n /= p;
        k /= p;
    }
    acc
}

/// Dual Hopf algebra on the dual basis: multiplication transposes the
/// coproduct and vice versa.
pub fn dual_hopf(h: &StructAlgebra) -> Result<StructAlgebra, ConstructError> {
    let hopf = h.hopf().ok_or(ConstructError::NoHopfData)?.clone();
    let fp = h.fp();
    let dim = h.dim();
    let labels = h.labels().iter().map(|l| format!("{l}*")).collect();
    let mut mult = vec![0u64; dim * dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let base = (i * dim + j) * dim;
            for l in 0..dim {
                mult[base + l] = hopf.comult[l][i * dim + j];
            }
        }
    }
    let unit = hopf.counit.clone();
    let mut comult = vec![vec![0u64; dim * dim]; dim];
    for l in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                comult[l][i * dim + j] = h.c(i, j)[l];
            }
        }
    }
    let counit = h.unit().to_vec();
    let antipode = hopf.antipode.transpose();
    let parity = h.parity().map(|p| p.to_vec());
    Ok(
        StructAlgebra::new(fp, labels, mult, unit, parity).with_hopf(HopfData {
            comult,
            counit,
            antipode,
        }),
    )
}

/// Quotient of a Hopf algebra by the two-sided ideal generated by the given
/// elements, verified to be a Hopf ideal.
pub fn hopf_quotient(
    h: &Arc<StructAlgebra>,
    gens: &[Vec<u64>],
) -> Result<StructAlgebra, ConstructError> {
    let hopf = h.hopf().ok_or(ConstructError::NoHopfData)?.clone();
    let fp = h.fp();
    let dim = h.dim();
    let alg_gens = analysis::generating_set(h);

    // two-sided ideal closure
    let mut span = Subspace::zero(fp, dim);
    let mut work: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        if !span.contains(g) {
            span = span.sum(&Subspace::from_rows(fp, vec![g.clone()], dim));
            work.push(g.clone());
        }
    }
    while let Some(v) = work.pop() {
        for &g in &alg_gens {
            for w in [
                h.multiply(&h.basis_vector(g), &v),
                h.multiply(&v, &h.basis_vector(g)),
            ] {
                if !span.contains(&w) {
                    span = span.sum(&Subspace::from_rows(fp, vec![w.clone()], dim));
                    work.push(w);
                }
            }
        }
    }

    // Hopf ideal checks on the ideal basis
    let comp = span.complement_indices();
    let proj = {
        let mut m = FpMatrix::zeros(fp, comp.len(), dim);
        for j in 0..dim {
            let red = span.reduce(&h.basis_vector(j));
            for (r, &src) in comp.iter().enumerate() {
                m.set(r, j, red[src]);
            }
        }
        m
    };
    for (gi, row) in span.basis_rows().into_iter().enumerate() {
        let mut eps = 0u64;
        for (l, &c) in row.iter().enumerate() {
            eps = fp.add(eps, fp.mul(c, hopf.counit[l]));
        }
        if eps != 0 {
            return Err(ConstructError::NotHopfIdeal {
                generator: gi,
                law: "counit",
            });
        }
        let s = hopf.antipode.apply(&row);
        if !span.contains(&s) {
            return Err(ConstructError::NotHopfIdeal {
                generator: gi,
                law: "antipode",
            });
        }
        // Delta(v) must vanish under the two-sided projection
        let mut delta = FpMatrix::zeros(fp, dim, dim);
        for (l, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for u in 0..dim {
                for w in 0..dim {
                    let x = hopf.comult[l][u * dim + w];
                    if x != 0 {
                        delta.set(u, w, fp.add(delta.get(u, w), fp.mul(c, x)));
                    }
                }
            }
        }
        let projected = proj.mul(&delta).mul(&proj.transpose());
        if !projected.is_zero() {
            return Err(ConstructError::NotHopfIdeal {
                generator: gi,
                law: "comultiplication",
            });
        }
    }

    let (base, comp) = analysis::quotient_algebra(h, &span);
    let d = comp.len();
    let mut comult = vec![vec![0u64; d * d]; d];
    for (k, &src) in comp.iter().enumerate() {
        for u in 0..dim {
            for w in 0..dim {
                let c = hopf.comult[src][u * dim + w];
                if c == 0 {
                    continue;
                }
                let ru = span.reduce(&h.basis_vector(u));
                let rw = span.reduce(&h.basis_vector(w));
                for (uu, &cu) in comp.iter().enumerate() {
                    if ru[cu] == 0 {
                        continue;
                    }
                    for (ww, &cw) in comp.iter().enumerate() {
                        if rw[cw] == 0 {
                            continue;
                        }
                        let val = fp.mul(c, fp.mul(ru[cu], rw[cw]));
                        comult[k][uu * d + ww] = fp.add(comult[k][uu * d + ww], val);
                    }
                }
            }
        }
    }
    let counit: Vec<u64> = comp.iter().map(|&i| hopf.counit[i]).collect();
    let mut antipode = FpMatrix::zeros(fp, d, d);
    for (k, &src) in comp.iter().enumerate() {
        let s = span.reduce(&hopf.antipode.col(src));
        for (r, &dst) in comp.iter().enumerate() {
            antipode.set(r, k, s[dst]);
        }
    }
    Ok(base.with_hopf(HopfData {
        comult,
        counit,
        antipode,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::tests::mixed_example;

    fn f3() -> Fp {
        Fp::new(3)
    }

    #[test]
    fn envelope_of_even_line_matches_truncated_polynomial() {
        let fp = f3();
        let l = RestrictedLieSuper::new(fp, 1, 0, vec!["x".to_string()]);
        let env = envelope(&l).unwrap();
        assert_eq!(env.algebra.dim(), 3);
        let trunc = truncated_polynomial(fp, 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(env.algebra.c(i, j), trunc.c(i, j));
            }
        }
        assert!(env.algebra.validate(0).is_ok());
    }

    #[test]
    fn envelope_of_odd_line_is_exterior() {
        let fp = f3();
        let l = RestrictedLieSuper::new(fp, 0, 1, vec!["y".to_string()]);
        let env = envelope(&l).unwrap();
        assert_eq!(env.algebra.dim(), 2);
        let y = env.algebra.basis_vector(1);
        assert!(env.algebra.multiply(&y, &y).iter().all(|&c| c == 0));
        assert_eq!(env.algebra.parity(), Some(&[0u8, 1][..]));
    }

    #[test]
    fn envelope_of_mixed_example() {
        let env = envelope(&mixed_example()).unwrap();
        let alg = &env.algebra;
        assert_eq!(alg.dim(), 54);
        assert_eq!(env.even_monomials.len(), 27);
        assert!(alg.validate(0).is_ok());
        // [t1, x] = x + t inside the envelope
        let t1 = alg.basis_vector(env.generator_monomials[2]);
        let x = alg.basis_vector(env.generator_monomials[0]);
        let lhs = alg.multiply(&t1, &x);
        let rhs = alg.multiply(&x, &t1);
        let fp = alg.fp();
        let comm: Vec<u64> = lhs
            .iter()
            .zip(&rhs)
            .map(|(&a, &b)| fp.sub(a, b))
            .collect();
        assert_eq!(comm, env.embed(&[1, 1, 0, 0]));
        // y^2 = (x + t)/2
        let y = alg.basis_vector(env.generator_monomials[3]);
        let y2 = alg.multiply(&y, &y);
        let half = fp.inv(2);
        let expect: Vec<u64> = env.embed(&[1, 1, 0, 0]).iter().map(|&c| fp.mul(half, c)).collect();
        assert_eq!(y2, expect);
    }

    #[test]
    fn smash_group_negation_on_truncated() {
        let fp = f3();
        let a = truncated_polynomial(fp, 9);
        // x -> -x
        let mut sigma = FpMatrix::zeros(fp, 9, 9);
        for i in 0..9 {
            let v = if i % 2 == 1 { fp.neg(1) } else { 1 };
            sigma.set(i, i, v);
        }
        let s = smash_group(&a, 2, &sigma).unwrap();
        assert_eq!(s.dim(), 18);
        assert!(s.validate(0).is_ok());
        assert!(s.augmentation().is_some());
    }

    #[test]
    fn smash_group_rejects_modular_order() {
        let fp = f3();
        let a = truncated_polynomial(fp, 3);
        let sigma = FpMatrix::identity(fp, 3);
        assert_eq!(
            smash_group(&a, 3, &sigma).unwrap_err(),
            ConstructError::OrderDivisibleByP { order: 3, p: 3 }
        );
    }

    #[test]
    fn smash_function_block_model() {
        let fp = f3();
        let a = truncated_polynomial(fp, 6);
        let grading: Vec<usize> = (0..6).map(|i| i % 3).collect();
        let s = smash_function_algebra(&a, 3, &grading).unwrap();
        assert_eq!(s.dim(), 18);
        assert!(s.validate(0).is_ok());
        assert!(!s.is_commutative());
        assert!(s.augmentation().is_some());
    }

    #[test]
    fn smash_function_rejects_bad_grading() {
        let fp = f3();
        let a = truncated_polynomial(fp, 4);
        // x * x = x^2 would need degree 0, not 1
        let grading = vec![0usize, 1, 1, 0];
        assert!(matches!(
            smash_function_algebra(&a, 2, &grading),
            Err(ConstructError::NotGraded { .. })
        ));
    }

    #[test]
    fn bosonize_exterior_line() {
        let fp = f3();
        let l = RestrictedLieSuper::new(fp, 0, 1, vec!["y".to_string()]);
        let env = envelope(&l).unwrap();
        let b = bosonize(&env.algebra).unwrap();
        assert_eq!(b.dim(), 4);
        assert!(b.validate(0).is_ok());
        assert!(b.parity().is_none());
        assert!(b.hopf().is_some());
        // g y g^-1 = -y: (y#g0)(1#g1) vs (1#g1)(y#g0)
        let yg = b.multiply(&b.basis_vector(1), &b.basis_vector(2));
        let gy = b.multiply(&b.basis_vector(2), &b.basis_vector(1));
        let neg: Vec<u64> = yg.iter().map(|&c| fp.neg(c)).collect();
        assert_eq!(gy, neg);
    }

    #[test]
    fn divided_power_small_products() {
        let fp = f3();
        let d = divided_power_hopf(fp, 2);
        assert_eq!(d.dim(), 9);
        // a(1) a(1) = 2 a(2); a(1) a(2) = 3 a(3) = 0
        assert_eq!(d.c(1, 1)[2], 2);
        assert!(d.c(1, 2).iter().all(|&c| c == 0));
        assert!(d.validate(0).is_ok());
    }

    #[test]
    fn dual_of_divided_power_is_truncated_polynomial() {
        let fp = f3();
        let d = divided_power_hopf(fp, 2);
        let dual = dual_hopf(&d).unwrap();
        let trunc = truncated_polynomial(fp, 9);
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(dual.c(i, j), trunc.c(i, j));
            }
        }
        assert!(dual.validate(0).is_ok());
    }

    #[test]
    fn hopf_quotient_of_divided_power() {
        let fp = f3();
        let d = Arc::new(divided_power_hopf(fp, 1));
        // the ideal generated by the primitive a(1) is a Hopf ideal
        let mut gen = vec![0u64; 3];
        gen[1] = 1;
        let q = hopf_quotient(&d, &[gen]).unwrap();
        assert_eq!(q.dim(), 1);
        // a(2) alone generates a non-Hopf ideal: Delta a(2) has a(1) ⊗ a(1)
        let mut gen = vec![0u64; 3];
        gen[2] = 1;
        assert_eq!(
            hopf_quotient(&d, &[gen]).unwrap_err(),
            ConstructError::NotHopfIdeal {
                generator: 0,
                law: "comultiplication"
            }
        );
    }

    #[test]
    fn tensor_with_koszul_sign() {
        let fp = f3();
        let l = RestrictedLieSuper::new(fp, 0, 1, vec!["y".to_string()]);
        let e1 = envelope(&l).unwrap();
        let l2 = RestrictedLieSuper::new(fp, 0, 1, vec!["z".to_string()]);
        let e2 = envelope(&l2).unwrap();
        let t = tensor_algebra_product(&e1.algebra, &e2.algebra);
        assert_eq!(t.dim(), 4);
        assert!(t.validate(0).is_ok());
        // (y ⊗ 1)(1 ⊗ z) = y ⊗ z, (1 ⊗ z)(y ⊗ 1) = -(y ⊗ z)
        let yz = t.multiply(&t.basis_vector(2), &t.basis_vector(1));
        let zy = t.multiply(&t.basis_vector(1), &t.basis_vector(2));
        let neg: Vec<u64> = yz.iter().map(|&c| fp.neg(c)).collect();
        assert_eq!(zy, neg);
    }

    #[test]
    fn binomials_by_lucas() {
        let fp = f3();
        assert_eq!(binomial_mod_p(fp, 4, 2), 0); // 6 = 0 mod 3
        assert_eq!(binomial_mod_p(fp, 4, 1), 1); // 4 = 1 mod 3
        assert_eq!(binomial_mod_p(fp, 9, 3), 0);
        assert_eq!(binomial_mod_p(fp, 8, 4), 1); // 70 = 1 mod 3
    }
}
