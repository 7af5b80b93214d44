//! Verification of Hopf-algebra axioms on structure-constant data, the
//! primitive-element space, and the conjugation character of a single odd
//! generator.
//!
//! Coassociativity, counit laws, and the antipode convolution laws are
//! checked on every basis element. Multiplicativity of the coproduct is
//! checked on (generator, basis) pairs, which extends to all products: the
//! set of x with Delta(x y) = Delta(x) Delta(y) for all y is a subalgebra
//! containing the generators.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::StructAlgebra;
use crate::analysis;
use crate::construct::Envelope;
use crate::fp::{FpMatrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfViolation {
    #[error("no Hopf data attached")]
    Missing,
    #[error("coproduct of the unit is not 1 ⊗ 1")]
    UnitComult,
    #[error("coassociativity fails on basis element {elem}")]
    Coassociativity { elem: usize },
    #[error("counit law fails on basis element {elem}")]
    CounitLaw { elem: usize },
    #[error("coproduct is not multiplicative on basis pair ({i}, {j})")]
    NotAlgebraMap { i: usize, j: usize },
    #[error("counit is not multiplicative on basis pair ({i}, {j})")]
    CounitNotMultiplicative { i: usize, j: usize },
    #[error("left antipode law fails on basis element {elem}")]
    AntipodeLeft { elem: usize },
    #[error("right antipode law fails on basis element {elem}")]
    AntipodeRight { elem: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfReport {
    pub dim: usize,
    pub cocommutative: bool,
    pub checked_pairs: usize,
}

/// Verify all Hopf axioms. The Koszul sign rule is used in the tensor
/// product multiplication whenever the algebra carries a parity.
pub fn check_hopf(h: &Arc<StructAlgebra>) -> Result<HopfReport, HopfViolation> {
    let hopf = h.hopf().ok_or(HopfViolation::Missing)?;
    let fp = h.fp();
    let dim = h.dim();
    let par: Vec<u8> = h
        .parity()
        .map(|p| p.to_vec())
        .unwrap_or_else(|| vec![0; dim]);
    let ent = |l: usize, u: usize, v: usize| hopf.comult[l][u * dim + v];

    // Delta(1) = 1 ⊗ 1
    {
        let unit = h.unit();
        for u in 0..dim {
            for v in 0..dim {
                let mut lhs = 0u64;
                for (l, &c) in unit.iter().enumerate() {
                    lhs = fp.add(lhs, fp.mul(c, ent(l, u, v)));
                }
                if lhs != fp.mul(unit[u], unit[v]) {
                    return Err(HopfViolation::UnitComult);
                }
            }
        }
    }

    // sparse coproduct entries, reused by the elementwise checks below
    let entries: Vec<Vec<(usize, usize, u64)>> = (0..dim)
        .map(|l| {
            let mut e = Vec::new();
            for u in 0..dim {
                for v in 0..dim {
                    let c = ent(l, u, v);
                    if c != 0 {
                        e.push((u, v, c));
                    }
                }
            }
            e
        })
        .collect();

    // coassociativity and counit laws, elementwise
    let mut lhs_cube = vec![0u64; dim * dim * dim];
    let mut rhs_cube = vec![0u64; dim * dim * dim];
    for l in 0..dim {
        lhs_cube.fill(0);
        rhs_cube.fill(0);
        for &(x, w, c) in &entries[l] {
            for &(u, v, d) in &entries[x] {
                let slot = &mut lhs_cube[(u * dim + v) * dim + w];
                *slot = fp.add(*slot, fp.mul(c, d));
            }
        }
        for &(u, x, c) in &entries[l] {
            for &(v, w, d) in &entries[x] {
                let slot = &mut rhs_cube[(u * dim + v) * dim + w];
                *slot = fp.add(*slot, fp.mul(c, d));
            }
        }
        if lhs_cube != rhs_cube {
            return Err(HopfViolation::Coassociativity { elem: l });
        }
        let mut left = vec![0u64; dim];
        let mut right = vec![0u64; dim];
        for &(u, v, c) in &entries[l] {
            left[v] = fp.add(left[v], fp.mul(c, hopf.counit[u]));
            right[u] = fp.add(right[u], fp.mul(c, hopf.counit[v]));
        }
        let e_l = h.basis_vector(l);
        if left != e_l || right != e_l {
            return Err(HopfViolation::CounitLaw { elem: l });
        }
    }

    // counit is an algebra map
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = 0u64;
            for (l, &c) in h.c(i, j).iter().enumerate() {
                lhs = fp.add(lhs, fp.mul(c, hopf.counit[l]));
            }
            if lhs != fp.mul(hopf.counit[i], hopf.counit[j]) {
                return Err(HopfViolation::CounitNotMultiplicative { i, j });
            }
        }
    }

    // coproduct is an algebra map on (generator, basis) pairs
    let gens = analysis::generating_set(h);
    let mut checked_pairs = 0usize;
    for &g in &gens {
        for j in 0..dim {
            let mut lhs = vec![0u64; dim * dim];
            for (l, &c) in h.c(g, j).iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for t in 0..dim * dim {
                    lhs[t] = fp.add(lhs[t], fp.mul(c, hopf.comult[l][t]));
                }
            }
            let mut rhs = vec![0u64; dim * dim];
            for &(u, v, c1) in &entries[g] {
                for &(x, y, c2) in &entries[j] {
                    // (u ⊗ v)(x ⊗ y) = (-1)^(|v||x|) ux ⊗ vy
                    let mut coef = fp.mul(c1, c2);
                    if par[v] & par[x] == 1 {
                        coef = fp.neg(coef);
                    }
                    let pux = h.c(u, x);
                    let pvy = h.c(v, y);
                    for (a, &ca) in pux.iter().enumerate() {
                        if ca == 0 {
                            continue;
                        }
                        for (b, &cb) in pvy.iter().enumerate() {
                            if cb == 0 {
                                continue;
                            }
                            let t = a * dim + b;
                            rhs[t] = fp.add(rhs[t], fp.mul(coef, fp.mul(ca, cb)));
                        }
                    }
                }
            }
            if lhs != rhs {
                return Err(HopfViolation::NotAlgebraMap { i: g, j });
            }
            checked_pairs += 1;
        }
    }

    // antipode convolution laws
    for l in 0..dim {
        let mut left = vec![0u64; dim];
        let mut right = vec![0u64; dim];
        for &(u, v, c) in &entries[l] {
            let su = hopf.antipode.col(u);
            let term = h.multiply(&su, &h.basis_vector(v));
            for (k, &t) in term.iter().enumerate() {
                left[k] = fp.add(left[k], fp.mul(c, t));
            }
            let sv = hopf.antipode.col(v);
            let term = h.multiply(&h.basis_vector(u), &sv);
            for (k, &t) in term.iter().enumerate() {
                right[k] = fp.add(right[k], fp.mul(c, t));
            }
        }
        let target: Vec<u64> = h
            .unit()
            .iter()
            .map(|&c| fp.mul(c, hopf.counit[l]))
            .collect();
        if left != target {
            return Err(HopfViolation::AntipodeLeft { elem: l });
        }
        if right != target {
            return Err(HopfViolation::AntipodeRight { elem: l });
        }
    }

    let cocommutative = (0..dim).all(|l| {
        (0..dim).all(|u| {
            (u..dim).all(|v| {
                let flipped = if par[u] & par[v] == 1 {
                    fp.neg(ent(l, v, u))
                } else {
                    ent(l, v, u)
                };
                ent(l, u, v) == flipped
            })
        })
    });

    Ok(HopfReport {
        dim,
        cocommutative,
        checked_pairs,
    })
}

/// Space of primitive elements: x with Delta(x) = x ⊗ 1 + 1 ⊗ x.
pub fn primitives(h: &StructAlgebra) -> Result<Subspace, HopfViolation> {
    let hopf = h.hopf().ok_or(HopfViolation::Missing)?;
    let fp = h.fp();
    let dim = h.dim();
    let unit = h.unit();
    let mut sys = FpMatrix::zeros(fp, dim * dim, dim);
    for u in 0..dim {
        for v in 0..dim {
            let r = u * dim + v;
            for l in 0..dim {
                let mut val = hopf.comult[l][u * dim + v];
                if l == u {
                    val = fp.sub(val, unit[v]);
                }
                if l == v {
                    val = fp.sub(val, unit[u]);
                }
                sys.set(r, l, val);
            }
        }
    }
    Ok(Subspace::from_cols(&sys.nullspace()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("expected exactly one odd generator, found {odd}")]
    NotSingleOddLine { odd: usize },
    #[error("right multiplication by even monomial {monomial} does not preserve the odd line")]
    OddLineNotStable { monomial: usize },
    #[error("conjugation map is not the convolution id * chi at even monomial {monomial}")]
    NotConvolution { monomial: usize },
    #[error("chi is not multiplicative on even monomial pair ({i}, {j})")]
    NotMultiplicative { i: usize, j: usize },
}

/// The conjugation data of the odd generator y in an enveloping algebra
/// with one-dimensional odd part: y h = alpha(h) y for even h, where
/// alpha = id * chi is the convolution of the identity with a character chi
/// of the even subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddConjugation {
    /// Monomial indices of the even subalgebra basis.
    pub even_monomials: Vec<usize>,
    /// chi on that basis.
    pub chi: Vec<u64>,
    /// alpha on that basis, columns in even-monomial coordinates.
    pub alpha: FpMatrix,
}

pub fn odd_character_check(env: &Envelope) -> Result<OddConjugation, CharacterError> {
    if env.odd_gens != 1 {
        return Err(CharacterError::NotSingleOddLine { odd: env.odd_gens });
    }
    let alg = &env.algebra;
    let fp = alg.fp();
    let dim = alg.dim();
    let evens = &env.even_monomials;
    let ne = evens.len();
    assert_eq!(dim, 2 * ne, "odd line should double the even subalgebra");
    let y_mono = env.generator_monomials[env.even_gens];
    let y = alg.basis_vector(y_mono);
    let pos: Vec<Option<usize>> = {
        let mut pos = vec![None; dim];
        for (k, &m) in evens.iter().enumerate() {
            pos[m] = Some(k);
        }
        pos
    };

    // read alpha off y * h = alpha(h) * y
    let mut alpha = FpMatrix::zeros(fp, ne, ne);
    let mut chi = vec![0u64; ne];
    for (k, &m) in evens.iter().enumerate() {
        let w = alg.multiply(&y, &alg.basis_vector(m));
        for (t, &c) in w.iter().enumerate() {
            if c == 0 {
                continue;
            }
            // appending y to an even monomial lands on index m' + y stride
            let Some(&Some(row)) = t.checked_sub(y_mono).map(|e| &pos[e]) else {
                return Err(CharacterError::OddLineNotStable { monomial: m });
            };
            alpha.set(row, k, c);
        }
        // chi = counit ∘ alpha
        let hopf = alg.hopf().expect("envelope carries Hopf data");
        let mut val = 0u64;
        for r in 0..ne {
            val = fp.add(val, fp.mul(alpha.get(r, k), hopf.counit[evens[r]]));
        }
        chi[k] = val;
    }

    // alpha must be the convolution id * chi
    let hopf = alg.hopf().expect("envelope carries Hopf data");
    for (k, &m) in evens.iter().enumerate() {
        let mut conv = vec![0u64; ne];
        for (u_pos, &u) in evens.iter().enumerate() {
            for (v_pos, &v) in evens.iter().enumerate() {
                let c = hopf.comult[m][u * dim + v];
                if c != 0 {
                    conv[u_pos] = fp.add(conv[u_pos], fp.mul(c, chi[v_pos]));
                }
            }
        }
        if conv != alpha.col(k) {
            return Err(CharacterError::NotConvolution { monomial: m });
        }
    }

    // chi must be a character of the even subalgebra
    for (i_pos, &i) in evens.iter().enumerate() {
        for (j_pos, &j) in evens.iter().enumerate() {
            let prod = alg.c(i, j);
            let mut val = 0u64;
            for (t, &c) in prod.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let Some(t_pos) = pos[t] else {
                    return Err(CharacterError::NotMultiplicative { i, j });
                };
                val = fp.add(val, fp.mul(c, chi[t_pos]));
            }
            if val != fp.mul(chi[i_pos], chi[j_pos]) {
                return Err(CharacterError::NotMultiplicative { i, j });
            }
        }
    }

    Ok(OddConjugation {
        even_monomials: evens.clone(),
        chi,
        alpha,
    })
}
