//! Finite-dimensional left modules over structure-constant algebras.
//!
//! A module stores one action matrix per algebra basis element. Submodules
//! and quotients pick their bases by pivot-complement of reduced row echelon
//! form, so repeated runs produce identical coordinates.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::StructAlgebra;
use crate::fp::{FpMatrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("the map is not a character: fails multiplicativity or unit")]
    NotCharacter,
    #[error("the algebra carries no augmentation; no trivial module exists")]
    NoAugmentation,
    #[error("operation requires a parity-graded module over a super algebra")]
    NotSuper,
    #[error("the algebra has no Hopf data")]
    NotHopf,
}

#[derive(Debug, Clone)]
pub struct AlgModule {
    alg: Arc<StructAlgebra>,
    dim: usize,
    action: Vec<FpMatrix>,
    parity: Option<Vec<u8>>,
}

impl PartialEq for AlgModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg)
            && self.dim == other.dim
            && self.action == other.action
            && self.parity == other.parity
    }
}

impl AlgModule {
    pub fn new(alg: Arc<StructAlgebra>, action: Vec<FpMatrix>, parity: Option<Vec<u8>>) -> Self {
        assert_eq!(action.len(), alg.dim());
        let dim = action.first().map_or(0, |m| m.rows());
        for m in &action {
            assert_eq!(m.rows(), dim);
            assert_eq!(m.cols(), dim);
        }
        if let Some(par) = &parity {
            assert_eq!(par.len(), dim);
        }
        AlgModule {
            alg,
            dim,
            action,
            parity,
        }
    }

    /// The left regular module.
    pub fn regular(alg: &Arc<StructAlgebra>) -> Self {
        let action = alg.left_regular();
        let parity = alg.parity().map(|p| p.to_vec());
        AlgModule::new(Arc::clone(alg), action, parity)
    }

    /// One-dimensional module on which the algebra acts through a character.
    pub fn from_character(
        alg: &Arc<StructAlgebra>,
        chi: &[u64],
    ) -> Result<Self, ModuleError> {
        if !alg.is_character(chi) {
            return Err(ModuleError::NotCharacter);
        }
        let fp = alg.fp();
        let action = chi
            .iter()
            .map(|&c| FpMatrix::from_flat(fp, 1, 1, vec![c]))
            .collect();
        Ok(AlgModule::new(
            Arc::clone(alg),
            action,
            alg.parity().map(|_| vec![0]),
        ))
    }

    /// The trivial module along the algebra's augmentation.
    pub fn trivial(alg: &Arc<StructAlgebra>) -> Result<Self, ModuleError> {
        let aug = alg
            .augmentation()
            .ok_or(ModuleError::NoAugmentation)?
            .to_vec();
        Self::from_character(alg, &aug)
    }

    pub fn alg(&self) -> &Arc<StructAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &FpMatrix {
        &self.action[i]
    }

    pub fn parity(&self) -> Option<&[u8]> {
        self.parity.as_deref()
    }

    /// Action operator of an algebra element given by coordinates.
    pub fn act_matrix(&self, a: &[u64]) -> FpMatrix {
        let fp = self.alg.fp();
        let mut out = FpMatrix::zeros(fp, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let m = &self.action[i];
            for r in 0..self.dim {
                for col in 0..self.dim {
                    let v = m.get(r, col);
                    if v != 0 {
                        out.set(r, col, fp.add(out.get(r, col), fp.mul(c, v)));
                    }
                }
            }
        }
        out
    }

    pub fn act_vec(&self, a: &[u64], v: &[u64]) -> Vec<u64> {
        let fp = self.alg.fp();
        let mut out = vec![0u64; self.dim];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let image = self.action[i].apply(v);
            for (o, x) in out.iter_mut().zip(image) {
                *o = fp.add(*o, fp.mul(c, x));
            }
        }
        out
    }

    /// Module axioms on a generating set: unit acts as identity and the
    /// action respects products `g * b_j`.
    pub fn validate(&self, gens: &[usize]) -> bool {
        let unit_act = self.act_matrix(self.alg.unit());
        if unit_act != FpMatrix::identity(self.alg.fp(), self.dim) {
            return false;
        }
        for &g in gens {
            for j in 0..self.alg.dim() {
                let lhs = self.action[g].mul(&self.action[j]);
                let rhs = self.act_matrix(self.alg.c(g, j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest submodule containing the given vectors, via closure under the
    /// actions of the listed algebra generators.
    pub fn spin(&self, seeds: &[Vec<u64>], gens: &[usize]) -> Subspace {
        let fp = self.alg.fp();
        let mut span = Subspace::zero(fp, self.dim);
        let mut work: Vec<Vec<u64>> = Vec::new();
        for s in seeds {
            if !span.contains(s) {
                span = span.sum(&Subspace::from_rows(fp, vec![s.clone()], self.dim));
                work.push(s.clone());
            }
        }
        while let Some(v) = work.pop() {
            for &g in gens {
                let w = self.action[g].apply(&v);
                if !span.contains(&w) {
                    span = span.sum(&Subspace::from_rows(fp, vec![w.clone()], self.dim));
                    work.push(w);
                }
            }
        }
        span
    }

    /// Restriction of the action to an invariant subspace.
    pub fn submodule(&self, sub: &Subspace) -> AlgModule {
        let basis = sub.basis_cols();
        let d = sub.dim();
        let fp = self.alg.fp();
        let action = self
            .action
            .iter()
            .map(|m| {
                let image = m.mul(&basis);
                let mut out = FpMatrix::zeros(fp, d, d);
                for c in 0..d {
                    let col = image.col(c);
                    let coords = sub
                        .coords(&col)
                        .expect("subspace is not action invariant");
                    for (r, val) in coords.into_iter().enumerate() {
                        out.set(r, c, val);
                    }
                }
                out
            })
            .collect();
        let parity = self.sub_parity(sub);
        AlgModule::new(Arc::clone(&self.alg), action, parity)
    }

    /// Quotient by an invariant subspace; the quotient basis is the
    /// pivot-complement of the subspace's echelon form.
    pub fn quotient(&self, sub: &Subspace) -> AlgModule {
        let comp = sub.complement_indices();
        let d = comp.len();
        let fp = self.alg.fp();
        let action = self
            .action
            .iter()
            .map(|m| {
                let mut out = FpMatrix::zeros(fp, d, d);
                for (c, &src) in comp.iter().enumerate() {
                    let col = m.col(src);
                    let red = sub.reduce(&col);
                    for (r, &dst) in comp.iter().enumerate() {
                        out.set(r, c, red[dst]);
                    }
                }
                out
            })
            .collect();
        let parity = self
            .parity
            .as_ref()
            .map(|p| comp.iter().map(|&i| p[i]).collect());
        AlgModule::new(Arc::clone(&self.alg), action, parity)
    }

    /// Project an ambient vector to quotient coordinates.
    pub fn project_to_quotient(sub: &Subspace, v: &[u64]) -> Vec<u64> {
        let red = sub.reduce(v);
        sub.complement_indices().iter().map(|&i| red[i]).collect()
    }

    pub fn direct_sum(parts: &[&AlgModule]) -> AlgModule {
        assert!(!parts.is_empty());
        let alg = Arc::clone(parts[0].alg());
        let fp = alg.fp();
        let dim: usize = parts.iter().map(|m| m.dim).sum();
        let action = (0..alg.dim())
            .map(|l| {
                let mut out = FpMatrix::zeros(fp, dim, dim);
                let mut off = 0;
                for part in parts {
                    for r in 0..part.dim {
                        for c in 0..part.dim {
                            let v = part.action[l].get(r, c);
                            if v != 0 {
                                out.set(off + r, off + c, v);
                            }
                        }
                    }
                    off += part.dim;
                }
                out
            })
            .collect();
        let parity = if parts.iter().all(|m| m.parity.is_some()) {
            Some(
                parts
                    .iter()
                    .flat_map(|m| m.parity.as_ref().unwrap().iter().copied())
                    .collect(),
            )
        } else {
            None
        };
        AlgModule::new(alg, action, parity)
    }

    /// Twist by a character of a Hopf algebra: the new action of `h` is the
    /// old action of `sum gamma(h_(1)) h_(2)`. The inverse twist is the
    /// character composed with the antipode.
    pub fn tensor_with_character(&self, gamma: &[u64]) -> Result<AlgModule, ModuleError> {
        if !self.alg.is_character(gamma) {
            return Err(ModuleError::NotCharacter);
        }
        let hopf = self.alg.hopf().ok_or(ModuleError::NotHopf)?;
        let fp = self.alg.fp();
        let adim = self.alg.dim();
        let action = (0..adim)
            .map(|i| {
                // twisted coordinates of b_i: sum over Delta terms (u, v) of
                // gamma(b_u) * b_v
                let mut twisted = vec![0u64; adim];
                let d = &hopf.comult[i];
                for u in 0..adim {
                    if gamma[u] == 0 {
                        continue;
                    }
                    for v in 0..adim {
                        let c = d[u * adim + v];
                        if c != 0 {
                            twisted[v] = fp.add(twisted[v], fp.mul(gamma[u], c));
                        }
                    }
                }
                self.act_matrix(&twisted)
            })
            .collect();
        Ok(AlgModule::new(
            Arc::clone(&self.alg),
            action,
            self.parity.clone(),
        ))
    }

    /// Character composed with the antipode; the convolution inverse.
    pub fn character_inverse(alg: &StructAlgebra, gamma: &[u64]) -> Result<Vec<u64>, ModuleError> {
        let hopf = alg.hopf().ok_or(ModuleError::NotHopf)?;
        let fp = alg.fp();
        let dim = alg.dim();
        let mut out = vec![0u64; dim];
        for j in 0..dim {
            let mut acc = 0;
            // gamma(S(b_j))
            for (l, &s) in hopf.antipode.col(j).iter().enumerate() {
                acc = fp.add(acc, fp.mul(s, gamma[l]));
            }
            out[j] = acc;
        }
        Ok(out)
    }

    fn sub_parity(&self, sub: &Subspace) -> Option<Vec<u8>> {
        let par = self.parity.as_ref()?;
        let mut out = Vec::with_capacity(sub.dim());
        for row in sub.basis_rows() {
            let mut seen: Option<u8> = None;
            for (i, &c) in row.iter().enumerate() {
                if c != 0 {
                    match seen {
                        None => seen = Some(par[i]),
                        Some(s) if s != par[i] => return None,
                        _ => {}
                    }
                }
            }
            out.push(seen.unwrap_or(0));
        }
        Some(out)
    }
}

/// Basis of the space of module maps `m -> n`, as matrices acting on
/// coordinate columns. Intertwining is imposed for the listed generators,
/// which suffices when they generate the algebra.
pub fn hom_space(m: &AlgModule, n: &AlgModule, gens: &[usize]) -> Vec<FpMatrix> {
    assert!(Arc::ptr_eq(m.alg(), n.alg()));
    let fp = m.alg().fp();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    // Unknown F is dn x dm; constraint act_n(g) F - F act_m(g) = 0.
    let cols = dn * dm;
    let mut rows = Vec::with_capacity(gens.len() * cols);
    for &g in gens {
        let am = m.action(g);
        let an = n.action(g);
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![0u64; cols];
                for k in 0..dn {
                    let v = an.get(r, k);
                    if v != 0 {
                        row[k * dm + c] = fp.add(row[k * dm + c], v);
                    }
                }
                for k in 0..dm {
                    let v = am.get(k, c);
                    if v != 0 {
                        row[r * dm + k] = fp.sub(row[r * dm + k], v);
                    }
                }
                rows.push(row);
            }
        }
    }
    let sys = FpMatrix::from_rows(fp, rows);
    let ker = sys.nullspace();
    (0..ker.cols())
        .map(|j| {
            let flat = ker.col(j);
            FpMatrix::from_flat(fp, dn, dm, flat)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::fp::Fp;

    #[test]
    fn regular_module_of_truncated_polynomial() {
        let alg = Arc::new(construct::truncated_polynomial(Fp::new(3), 3));
        let reg = AlgModule::regular(&alg);
        assert!(reg.validate(&[0, 1]));
        assert_eq!(reg.dim(), 3);
        // x spins to the whole radical
        let sub = reg.spin(&[vec![0, 1, 0]], &[1]);
        assert_eq!(sub.dim(), 2);
        let s = reg.submodule(&sub);
        assert!(s.validate(&[1]));
        let q = reg.quotient(&sub);
        assert!(q.validate(&[1]));
        assert_eq!(q.dim(), 1);
    }

    #[test]
    fn trivial_module_and_hom() {
        let alg = Arc::new(construct::truncated_polynomial(Fp::new(3), 3));
        let t = AlgModule::trivial(&alg).unwrap();
        assert_eq!(t.dim(), 1);
        let homs = hom_space(&t, &t, &[1]);
        assert_eq!(homs.len(), 1);
        let reg = AlgModule::regular(&alg);
        // Hom(k, A) = socle of A = span(x^2): one dimension
        let homs = hom_space(&t, &reg, &[1]);
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn direct_sum_dims() {
        let alg = Arc::new(construct::truncated_polynomial(Fp::new(3), 2));
        let reg = AlgModule::regular(&alg);
        let s = AlgModule::direct_sum(&[&reg, &reg]);
        assert_eq!(s.dim(), 4);
        assert!(s.validate(&[0, 1]));
    }
}
