//! Structural analysis of a finite-dimensional algebra: radical, blocks,
//! projective indecomposables, simples, quiver, and shape tests.
//!
//! The radical is computed by the layered characteristic-coefficient method:
//! starting from the trace form, layer j intersects with the kernel of the
//! bilinear form given by the coefficient of lambda^(n - p^j) in the
//! characteristic polynomial of left multiplication. Over GF(p) each layer
//! map is linear and after floor(log_p n) layers the intersection is exactly
//! the radical. Everything downstream (idempotent splitting, lifting, module
//! filtrations) is deterministic except the non-commutative corner split,
//! which tries seeded pseudorandom elements before an exhaustive sweep.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::StructAlgebra;
use crate::fp::{Fp, FpMatrix, Subspace};
use crate::module::{hom_space, AlgModule};
use crate::par;
use crate::quiver::{ArQuiver, QuiverData, QuiverVertex};

/// Seed tags so each randomized subroutine draws an independent stream from
/// the analysis seed, regardless of call order.
const TAG_CORNER_SPLIT: u64 = 0x636f_726e;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("algebra is not Nakayama: {0}")]
    NotNakayama(NonUniserialWitness),
    #[error("algebra has {0} blocks; the stable quiver shape applies per block")]
    NotConnected(usize),
    #[error("algebra is not self-injective by construction; refusing to shape its stable quiver")]
    NotKnownSelfInjective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// A projective indecomposable whose radical filtration has a non-simple
/// layer, certifying that the algebra is not Nakayama.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUniserialWitness {
    pub side: Side,
    pub class_index: usize,
    pub layer: usize,
    pub summands: usize,
}

impl fmt::Display for NonUniserialWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} projective #{} has {} simple summands in radical layer {}",
            self.side, self.class_index, self.summands, self.layer
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NakayamaResult {
    pub holds: bool,
    pub witness: Option<NonUniserialWitness>,
}

#[derive(Debug, Clone)]
pub struct Block {
    pub idempotent: Vec<u64>,
    pub algebra: Arc<StructAlgebra>,
    /// Columns express the block basis in ambient coordinates.
    pub embedding: FpMatrix,
}

/// Complete family of orthogonal primitive idempotents with the projective
/// indecomposables they generate, grouped into isomorphism classes.
#[derive(Debug, Clone)]
pub struct PimFamily {
    pub idempotents: Vec<Vec<u64>>,
    pub modules: Vec<AlgModule>,
    /// Embedding of each projective's basis into ambient coordinates.
    pub embeddings: Vec<FpMatrix>,
    pub class_of: Vec<usize>,
    pub class_count: usize,
}

#[derive(Debug, Clone)]
pub struct SimpleClass {
    pub module: AlgModule,
    /// Dimension over GF(p) of the endomorphism field.
    pub endo_degree: usize,
    /// Indices into the pim family isomorphic to this class's projective.
    pub pims: Vec<usize>,
    pub idempotent: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixAlgebraShape {
    pub matrix_size: usize,
    pub field_degree: usize,
}

/// Basis-independent isomorphism data used to compare algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub center_dim: usize,
    pub radical_series_dims: Vec<usize>,
    pub block_dims: Vec<usize>,
    pub simples: Vec<(usize, usize)>,
    pub nakayama: bool,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim {} | center {} | radical series {:?} | blocks {:?} | simples {:?} | nakayama {}",
            self.dim,
            self.center_dim,
            self.radical_series_dims,
            self.block_dims,
            self.simples,
            self.nakayama
        )
    }
}

/// Lazy, memoizing analysis of one algebra. All randomized subroutines
/// derive their streams from the construction seed, so results are
/// reproducible and independent of call order.
pub struct Analysis {
    alg: Arc<StructAlgebra>,
    seed: u64,
    left_regular: Option<Arc<Vec<FpMatrix>>>,
    generators: Option<Vec<usize>>,
    radical: Option<Subspace>,
    radical_series: Option<Vec<Subspace>>,
    center: Option<Subspace>,
    central_idempotents: Option<Vec<Vec<u64>>>,
    blocks: Option<Vec<Block>>,
    pims: Option<PimFamily>,
    simples: Option<Vec<SimpleClass>>,
    quiver: Option<QuiverData>,
    nakayama: Option<NakayamaResult>,
}

impl Analysis {
    pub fn new(alg: Arc<StructAlgebra>, seed: u64) -> Self {
        Analysis {
            alg,
            seed,
            left_regular: None,
            generators: None,
            radical: None,
            radical_series: None,
            center: None,
            central_idempotents: None,
            blocks: None,
            pims: None,
            simples: None,
            quiver: None,
            nakayama: None,
        }
    }

    /// Reuse a radical computed elsewhere. The opposite algebra has the same
    /// radical subspace, so the right-side Nakayama pass injects it here.
    pub fn with_known_radical(alg: Arc<StructAlgebra>, radical: Subspace, seed: u64) -> Self {
        let mut a = Analysis::new(alg, seed);
        assert_eq!(radical.ambient(), a.alg.dim());
        a.radical = Some(radical);
        a
    }

    pub fn alg(&self) -> &Arc<StructAlgebra> {
        &self.alg
    }

    pub fn fp(&self) -> Fp {
        self.alg.fp()
    }

    fn left_regular_arc(&mut self) -> Arc<Vec<FpMatrix>> {
        if self.left_regular.is_none() {
            self.left_regular = Some(Arc::new(self.alg.left_regular()));
        }
        Arc::clone(self.left_regular.as_ref().unwrap())
    }

    /// A small generating set of basis elements, greedy by index.
    pub fn generating_set(&mut self) -> Vec<usize> {
        if self.generators.is_none() {
            self.generators = Some(generating_set(&self.alg));
        }
        self.generators.clone().unwrap()
    }

    /// The Jacobson radical.
    pub fn radical(&mut self) -> &Subspace {
        if self.radical.is_none() {
            self.radical = Some(self.compute_radical());
        }
        self.radical.as_ref().unwrap()
    }

    fn compute_radical(&mut self) -> Subspace {
        let fp = self.fp();
        let n = self.alg.dim();
        let p = fp.p();
        let reg = self.left_regular_arc();
        let mut basis: Vec<Vec<u64>> = (0..n)
            .map(|i| self.alg.basis_vector(i))
            .collect();
        let mut pj: u64 = 1;
        let mut j = 0usize;
        while pj <= n as u64 {
            if basis.is_empty() {
                break;
            }
            let m = basis.len();
            let ops: Vec<FpMatrix> = par::map_vec(m, |i| combo_matrix(fp, &reg, &basis[i]));
            let coeff_index = n - pj as usize;
            let entries: Vec<u64> = if j == 0 {
                par::map_vec(m * m, |t| {
                    let (k, i) = (t / m, t % m);
                    ops[i].trace_of_product(&ops[k])
                })
            } else {
                par::map_vec(m * m, |t| {
                    let (k, i) = (t / m, t % m);
                    let prod = ops[i].mul_seq(&ops[k]);
                    prod.charpoly().coeff(coeff_index)
                })
            };
            let form = FpMatrix::from_flat(fp, m, m, entries);
            let ker = form.nullspace();
            let mut next = Vec::with_capacity(ker.cols());
            for c in 0..ker.cols() {
                let coeffs = ker.col(c);
                let mut v = vec![0u64; n];
                for (i, &a) in coeffs.iter().enumerate() {
                    if a != 0 {
                        for (slot, &b) in v.iter_mut().zip(&basis[i]) {
                            *slot = fp.add(*slot, fp.mul(a, b));
                        }
                    }
                }
                next.push(v);
            }
            basis = next;
            j += 1;
            pj *= p;
        }
        Subspace::from_rows(fp, basis, n)
    }

    /// Powers of the radical, `[J, J^2, ...]`, down to and including zero.
    pub fn radical_series(&mut self) -> &Vec<Subspace> {
        if self.radical_series.is_none() {
            let j = self.radical().clone();
            let fp = self.fp();
            let n = self.alg.dim();
            let mut series = vec![j.clone()];
            loop {
                let prev = series.last().unwrap();
                if prev.dim() == 0 {
                    break;
                }
                let mut products = Vec::new();
                for a in j.basis_rows() {
                    for b in prev.basis_rows() {
                        products.push(self.alg.multiply(&a, &b));
                    }
                }
                let next = Subspace::from_rows(fp, products, n);
                assert!(
                    next.dim() < prev.dim(),
                    "radical power chain failed to shrink: the computed radical is not nilpotent"
                );
                series.push(next);
            }
            self.radical_series = Some(series);
        }
        self.radical_series.as_ref().unwrap()
    }

    /// Dimensions `[dim A, dim J, dim J^2, ..., 0]`.
    pub fn radical_series_dims(&mut self) -> Vec<usize> {
        let mut dims = vec![self.alg.dim()];
        dims.extend(self.radical_series().iter().map(|s| s.dim()));
        dims
    }

    /// Number of nonzero terms in `[A, J, J^2, ...]`.
    pub fn loewy_length(&mut self) -> usize {
        self.radical_series_dims()
            .iter()
            .filter(|&&d| d > 0)
            .count()
    }

    pub fn center(&mut self) -> &Subspace {
        if self.center.is_none() {
            self.center = Some(self.alg.center());
        }
        self.center.as_ref().unwrap()
    }

    /// The complete set of primitive central idempotents, sorted by
    /// (block dimension, coordinates). On a parity-graded algebra the
    /// idempotents are taken from the even part of the center, so the
    /// induced decomposition is the graded one and every block inherits
    /// the grading.
    pub fn central_idempotents(&mut self) -> &Vec<Vec<u64>> {
        if self.central_idempotents.is_none() {
            self.central_idempotents = Some(self.compute_central_idempotents());
        }
        self.central_idempotents.as_ref().unwrap()
    }

    fn compute_central_idempotents(&mut self) -> Vec<Vec<u64>> {
        let fp = self.fp();
        let alg = Arc::clone(&self.alg);
        let mut z = self.center().clone();
        if let Some(par) = alg.parity() {
            let dim = alg.dim();
            let mut even = FpMatrix::zeros(fp, dim, dim - par.iter().filter(|&&b| b == 1).count());
            let mut c = 0;
            for (i, &b) in par.iter().enumerate() {
                if b == 0 {
                    even.set(i, c, 1);
                    c += 1;
                }
            }
            z = z.intersect(&Subspace::from_cols(&even));
        }
        assert!(z.contains(alg.unit()), "center must contain the unit");
        let embed = z.basis_cols();
        let solver = ColumnSolver::new(&embed);
        let zalg = subalgebra_on_cols(&alg, &embed, &solver, alg.unit(), None);
        assert!(zalg.is_commutative());

        // nilradical of the center: kernel of a high power of Frobenius
        let zdim = zalg.dim();
        let frob = frobenius_matrix(&zalg);
        let mut steps = 1u32;
        let mut pw = fp.p();
        while (pw as usize) < zdim {
            pw = pw.saturating_mul(fp.p());
            steps += 1;
        }
        let nil = Subspace::from_cols(&frob.pow(steps as u64).nullspace());
        let (zbar, comp) = quotient_algebra(&zalg, &nil);
        let prims_bar = split_commutative_semisimple(&zbar);

        // lift through the nilradical, last one as the complement of the sum
        let mut lifted: Vec<Vec<u64>> = Vec::with_capacity(prims_bar.len());
        let mut sum = vec![0u64; zdim];
        let mut sorted_bar = prims_bar;
        sorted_bar.sort();
        for (pos, ebar) in sorted_bar.iter().enumerate() {
            let e = if pos + 1 == sorted_bar.len() {
                let mut v = zalg.unit().to_vec();
                for (slot, &s) in v.iter_mut().zip(&sum) {
                    *slot = fp.sub(*slot, s);
                }
                v
            } else {
                let mut rep = vec![0u64; zdim];
                for (k, &idx) in comp.iter().enumerate() {
                    rep[idx] = ebar[k];
                }
                let mut one_minus = zalg.unit().to_vec();
                for (slot, &s) in one_minus.iter_mut().zip(&sum) {
                    *slot = fp.sub(*slot, s);
                }
                let v = zalg.multiply(&zalg.multiply(&one_minus, &rep), &one_minus);
                lift_idempotent(&zalg, v)
            };
            for (slot, &x) in sum.iter_mut().zip(&e) {
                *slot = fp.add(*slot, x);
            }
            lifted.push(e);
        }

        // back to ambient coordinates, then canonical order
        let mut out: Vec<Vec<u64>> = lifted
            .into_iter()
            .map(|e| embed.apply(&e))
            .collect();
        for e in &out {
            let sq = alg.multiply(e, e);
            assert_eq!(&sq, e, "central idempotent lift failed");
        }
        let mut total = vec![0u64; alg.dim()];
        for e in &out {
            for (slot, &x) in total.iter_mut().zip(e) {
                *slot = fp.add(*slot, x);
            }
        }
        assert_eq!(&total, alg.unit(), "central idempotents do not sum to 1");
        out.sort_by_key(|e| (alg.left_mult_matrix(e).rank(), e.clone()));
        out
    }

    /// Block decomposition along the primitive central idempotents, sorted
    /// by (dimension, idempotent coordinates).
    pub fn blocks(&mut self) -> &Vec<Block> {
        if self.blocks.is_none() {
            let alg = Arc::clone(&self.alg);
            let idems = self.central_idempotents().clone();
            let blocks = idems
                .into_iter()
                .map(|e| {
                    let (embed, parity) = invariant_image_basis(&alg, &e);
                    let solver = ColumnSolver::new(&embed);
                    let balg = subalgebra_on_cols(&alg, &embed, &solver, &e, parity)
                        .with_frobenius_flag(alg.frobenius_by_construction());
                    Block {
                        idempotent: e,
                        algebra: Arc::new(balg),
                        embedding: embed,
                    }
                })
                .collect();
            self.blocks = Some(blocks);
        }
        self.blocks.as_ref().unwrap()
    }

    /// Orthogonal primitive idempotents, their projectives, and the grouping
    /// into isomorphism classes.
    pub fn pims(&mut self) -> &PimFamily {
        if self.pims.is_none() {
            self.pims = Some(self.compute_pims());
        }
        self.pims.as_ref().unwrap()
    }

    fn compute_pims(&mut self) -> PimFamily {
        let alg = Arc::clone(&self.alg);
        let fp = self.fp();
        let j = self.radical().clone();
        let (abar_raw, comp) = quotient_algebra(&alg, &j);
        let abar = Arc::new(abar_raw);
        let mut fam_bar = primitive_family(&abar, self.seed ^ TAG_CORNER_SPLIT);
        fam_bar.sort();

        // lift sequentially, keeping orthogonality by corner correction
        let mut lifted: Vec<Vec<u64>> = Vec::with_capacity(fam_bar.len());
        let mut sum = vec![0u64; alg.dim()];
        for (pos, ebar) in fam_bar.iter().enumerate() {
            let e = if pos + 1 == fam_bar.len() {
                let mut v = alg.unit().to_vec();
                for (slot, &s) in v.iter_mut().zip(&sum) {
                    *slot = fp.sub(*slot, s);
                }
                v
            } else {
                let mut rep = vec![0u64; alg.dim()];
                for (k, &idx) in comp.iter().enumerate() {
                    rep[idx] = ebar[k];
                }
                let mut one_minus = alg.unit().to_vec();
                for (slot, &s) in one_minus.iter_mut().zip(&sum) {
                    *slot = fp.sub(*slot, s);
                }
                let v = alg.multiply(&alg.multiply(&one_minus, &rep), &one_minus);
                lift_idempotent(&alg, v)
            };
            let sq = alg.multiply(&e, &e);
            assert_eq!(sq, e, "idempotent lift failed");
            for (slot, &x) in sum.iter_mut().zip(&e) {
                *slot = fp.add(*slot, x);
            }
            lifted.push(e);
        }

        // sort pims canonically, carrying their images in the quotient along
        let mut order: Vec<usize> = (0..lifted.len()).collect();
        let dims: Vec<usize> = lifted
            .iter()
            .map(|e| alg.right_mult_matrix(e).rank())
            .collect();
        order.sort_by_key(|&i| (dims[i], lifted[i].clone()));
        let lifted: Vec<Vec<u64>> = order.iter().map(|&i| lifted[i].clone()).collect();
        let fam_bar: Vec<Vec<u64>> = order.iter().map(|&i| fam_bar[i].clone()).collect();

        // isomorphism classes: tops agree iff ebar_i Abar ebar_l != 0
        let links = |i: usize, l: usize| -> bool {
            for b in 0..abar.dim() {
                let prod = abar.multiply(
                    &abar.multiply(&fam_bar[i], &abar.basis_vector(b)),
                    &fam_bar[l],
                );
                if prod.iter().any(|&c| c != 0) {
                    return true;
                }
            }
            false
        };
        let mut class_of = vec![usize::MAX; lifted.len()];
        let mut class_count = 0usize;
        for i in 0..lifted.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            class_of[i] = class_count;
            for l in (i + 1)..lifted.len() {
                if class_of[l] == usize::MAX && links(i, l) {
                    assert!(links(l, i), "iso linkage must be symmetric on primitives");
                    class_of[l] = class_count;
                }
            }
            class_count += 1;
        }

        let mut modules = Vec::with_capacity(lifted.len());
        let mut embeddings = Vec::with_capacity(lifted.len());
        for e in &lifted {
            let (embed, parity) = invariant_image_basis(&alg, e);
            let module = left_module_on_cols(&alg, &embed, parity);
            modules.push(module);
            embeddings.push(embed);
        }

        PimFamily {
            idempotents: lifted,
            modules,
            embeddings,
            class_of,
            class_count,
        }
    }

    /// One simple module per isomorphism class, sorted by (dimension,
    /// representative idempotent coordinates).
    pub fn simples(&mut self) -> &Vec<SimpleClass> {
        if self.simples.is_none() {
            self.simples = Some(self.compute_simples());
        }
        self.simples.as_ref().unwrap()
    }

    fn compute_simples(&mut self) -> Vec<SimpleClass> {
        let fam = self.pims().clone();
        let mut classes: Vec<SimpleClass> = Vec::with_capacity(fam.class_count);
        for c in 0..fam.class_count {
            let members: Vec<usize> = (0..fam.idempotents.len())
                .filter(|&i| fam.class_of[i] == c)
                .collect();
            let rep = members[0];
            let p = &fam.modules[rep];
            let rad = self.radical_submodule(p);
            let simple = p.quotient(&rad);
            let endo = self.corner_dimension(&fam.idempotents[rep]);
            assert_eq!(
                simple.dim() % endo,
                0,
                "endomorphism field degree must divide the simple's dimension"
            );
            assert_eq!(
                simple.dim() / endo,
                members.len(),
                "matrix size over the endo field must equal the class size"
            );
            classes.push(SimpleClass {
                module: simple,
                endo_degree: endo,
                pims: members,
                idempotent: fam.idempotents[rep].clone(),
            });
        }
        classes.sort_by(|a, b| {
            (a.module.dim(), &a.idempotent).cmp(&(b.module.dim(), &b.idempotent))
        });
        classes
    }

    /// dim of e (A/J) e, the endomorphism field of the top of Ae.
    fn corner_dimension(&mut self, e: &[u64]) -> usize {
        let alg = Arc::clone(&self.alg);
        let fp = self.fp();
        let j = self.radical().clone();
        let n = alg.dim();
        let mut rows = Vec::with_capacity(n);
        for b in 0..n {
            let v = alg.multiply(&alg.multiply(e, &alg.basis_vector(b)), e);
            rows.push(j.reduce(&v));
        }
        Subspace::from_rows(fp, rows, n).dim()
    }

    /// Span of the radical's action on a module: J.M in module coordinates.
    pub fn radical_submodule(&mut self, m: &AlgModule) -> Subspace {
        assert!(Arc::ptr_eq(m.alg(), &self.alg));
        let fp = self.fp();
        let j = self.radical().clone();
        let mut rows = Vec::new();
        for a in j.basis_rows() {
            let op = m.act_matrix(&a);
            for c in 0..m.dim() {
                rows.push(op.col(c));
            }
        }
        Subspace::from_rows(fp, rows, m.dim())
    }

    /// Multiplicity of each simple class in a module killed by the radical.
    pub fn simple_multiplicities(&mut self, m: &AlgModule) -> Vec<usize> {
        let gens = self.generating_set();
        let simples = self.simples().clone();
        simples
            .iter()
            .map(|s| {
                let h = hom_space(&s.module, m, &gens).len();
                assert_eq!(
                    h % s.endo_degree,
                    0,
                    "hom dimension must be divisible by the endo degree"
                );
                h / s.endo_degree
            })
            .collect()
    }

    /// Quiver with one vertex per simple and arrow multiplicities read off
    /// the first radical layers of the projectives.
    pub fn ext_quiver(&mut self) -> &QuiverData {
        if self.quiver.is_none() {
            let fam = self.pims().clone();
            let simples = self.simples().clone();
            let mut arrows = Vec::new();
            for (src, class) in simples.iter().enumerate() {
                let p = &fam.modules[class.pims[0]];
                let rad = self.radical_submodule(p);
                let jp = p.submodule(&rad);
                let rad2 = self.radical_submodule(&jp);
                let layer = jp.quotient(&rad2);
                for (dst, &mult) in self.simple_multiplicities(&layer).iter().enumerate() {
                    if mult > 0 {
                        arrows.push((src, dst, mult));
                    }
                }
            }
            let vertices = simples
                .iter()
                .map(|s| QuiverVertex {
                    dim: s.module.dim(),
                    endo_degree: s.endo_degree,
                })
                .collect();
            self.quiver = Some(QuiverData { vertices, arrows });
        }
        self.quiver.as_ref().unwrap()
    }

    /// Nakayama test: every projective indecomposable, on both sides, must
    /// have simple-or-zero radical layers.
    pub fn is_nakayama(&mut self) -> NakayamaResult {
        if self.nakayama.is_none() {
            let left = self.uniserial_witness(Side::Left);
            let result = match left {
                Some(w) => NakayamaResult {
                    holds: false,
                    witness: Some(w),
                },
                None => {
                    let op = Arc::new(self.alg.opposite());
                    let mut op_an = Analysis::with_known_radical(
                        op,
                        self.radical().clone(),
                        self.seed,
                    );
                    match op_an.uniserial_witness(Side::Right) {
                        Some(w) => NakayamaResult {
                            holds: false,
                            witness: Some(w),
                        },
                        None => NakayamaResult {
                            holds: true,
                            witness: None,
                        },
                    }
                }
            };
            self.nakayama = Some(result);
        }
        self.nakayama.clone().unwrap()
    }

    fn uniserial_witness(&mut self, side: Side) -> Option<NonUniserialWitness> {
        let fam = self.pims().clone();
        let class_count = fam.class_count;
        for c in 0..class_count {
            let rep = (0..fam.idempotents.len())
                .find(|&i| fam.class_of[i] == c)
                .unwrap();
            let mut m = fam.modules[rep].clone();
            let mut layer = 0usize;
            loop {
                let rad = self.radical_submodule(&m);
                let top = m.quotient(&rad);
                let summands: usize = self.simple_multiplicities(&top).iter().sum();
                if summands > 1 {
                    return Some(NonUniserialWitness {
                        side,
                        class_index: c,
                        layer,
                        summands,
                    });
                }
                if rad.dim() == 0 {
                    break;
                }
                m = m.submodule(&rad);
                layer += 1;
            }
        }
        None
    }

    /// Recognize a full matrix algebra over an extension field: semisimple
    /// with a single block.
    pub fn recognize_matrix_algebra(&mut self) -> Option<MatrixAlgebraShape> {
        if self.radical().dim() != 0 {
            return None;
        }
        if self.blocks().len() != 1 {
            return None;
        }
        let simples = self.simples();
        assert_eq!(simples.len(), 1, "one block of a semisimple algebra carries one simple");
        let s = &simples[0];
        let n = s.pims.len();
        let m = s.endo_degree;
        assert_eq!(
            n * n * m,
            self.alg.dim(),
            "semisimple single-block dimension bookkeeping failed"
        );
        Some(MatrixAlgebraShape {
            matrix_size: n,
            field_degree: m,
        })
    }

    /// Stable translation quiver shape for a connected self-injective
    /// Nakayama algebra: a tube of rank (number of simples) and height
    /// (Loewy length - 1).
    pub fn ar_quiver(&mut self) -> Result<ArQuiver, AnalysisError> {
        if !self.alg.frobenius_by_construction() {
            return Err(AnalysisError::NotKnownSelfInjective);
        }
        let nk = self.is_nakayama();
        if !nk.holds {
            return Err(AnalysisError::NotNakayama(nk.witness.unwrap()));
        }
        let blocks = self.blocks().len();
        if blocks != 1 {
            return Err(AnalysisError::NotConnected(blocks));
        }
        let simples = self.simples().len();
        let loewy = self.loewy_length();
        Ok(ArQuiver { simples, loewy })
    }

    pub fn fingerprint(&mut self) -> Fingerprint {
        let dim = self.alg.dim();
        let center_dim = self.center().dim();
        let radical_series_dims = self.radical_series_dims();
        let mut block_dims: Vec<usize> = self
            .blocks()
            .iter()
            .map(|b| b.algebra.dim())
            .collect();
        block_dims.sort_unstable();
        let mut simples: Vec<(usize, usize)> = self
            .simples()
            .iter()
            .map(|s| (s.module.dim(), s.endo_degree))
            .collect();
        simples.sort_unstable();
        let nakayama = self.is_nakayama().holds;
        Fingerprint {
            dim,
            center_dim,
            radical_series_dims,
            block_dims,
            simples,
            nakayama,
        }
    }
}

/// Greedy generating set: repeatedly adjoin the first basis element outside
/// the subalgebra generated so far.
pub fn generating_set(alg: &Arc<StructAlgebra>) -> Vec<usize> {
    let reg = AlgModule::regular(alg);
    let unit = alg.unit().to_vec();
    let mut gens: Vec<usize> = Vec::new();
    loop {
        let span = reg.spin(&[unit.clone()], &gens);
        match (0..alg.dim()).find(|&i| !span.contains(&alg.basis_vector(i))) {
            None => return gens,
            Some(i) => gens.push(i),
        }
    }
}

/// Quotient by a two-sided ideal; basis is the pivot-complement, so basis
/// vectors of the quotient are images of ambient basis vectors.
pub fn quotient_algebra(
    alg: &StructAlgebra,
    ideal: &Subspace,
) -> (StructAlgebra, Vec<usize>) {
    let fp = alg.fp();
    let comp = ideal.complement_indices();
    let d = comp.len();
    let mut mult = vec![0u64; d * d * d];
    for (i, &bi) in comp.iter().enumerate() {
        for (j, &bj) in comp.iter().enumerate() {
            let prod = ideal.reduce(alg.c(bi, bj));
            let base = (i * d + j) * d;
            for (k, &bk) in comp.iter().enumerate() {
                mult[base + k] = prod[bk];
            }
        }
    }
    let unit_red = ideal.reduce(alg.unit());
    let unit: Vec<u64> = comp.iter().map(|&i| unit_red[i]).collect();
    let labels: Vec<String> = comp.iter().map(|&i| alg.labels()[i].clone()).collect();
    let parity = alg.parity().and_then(|par| {
        let homogeneous = ideal.basis_rows().into_iter().all(|row| {
            let mut seen = None;
            row.iter().enumerate().all(|(i, &c)| {
                if c == 0 {
                    return true;
                }
                match seen {
                    None => {
                        seen = Some(par[i]);
                        true
                    }
                    Some(s) => s == par[i],
                }
            })
        });
        if homogeneous {
            Some(comp.iter().map(|&i| par[i]).collect::<Vec<u8>>())
        } else {
            None
        }
    });
    let mut out = StructAlgebra::new(fp, labels, mult, unit, parity);
    if let Some(aug) = alg.augmentation() {
        if ideal.basis_rows().iter().all(|row| {
            let mut acc = 0u64;
            for (i, &c) in row.iter().enumerate() {
                acc = fp.add(acc, fp.mul(c, aug[i]));
            }
            acc == 0
        }) {
            let aug_q: Vec<u64> = comp.iter().map(|&i| aug[i]).collect();
            out = out.with_augmentation(aug_q);
        }
    }
    (out, comp)
}

/// Solve v = E x for x when v lies in the column space of E, by inverting
/// an independent row selection.
pub struct ColumnSolver {
    rows: Vec<usize>,
    inv: FpMatrix,
}

impl ColumnSolver {
    pub fn new(e: &FpMatrix) -> Self {
        let d = e.cols();
        let (_, pivots) = e.transpose().rref();
        assert_eq!(pivots.len(), d, "columns must be independent");
        let fp = e.fp();
        let mut sel = FpMatrix::zeros(fp, d, d);
        for (r, &src) in pivots.iter().enumerate() {
            for c in 0..d {
                sel.set(r, c, e.get(src, c));
            }
        }
        let inv = sel.inverse().expect("selected rows must be invertible");
        ColumnSolver {
            rows: pivots,
            inv,
        }
    }

    pub fn coords(&self, v: &[u64]) -> Vec<u64> {
        let picked: Vec<u64> = self.rows.iter().map(|&r| v[r]).collect();
        self.inv.apply(&picked)
    }
}

/// Subalgebra on an explicit column basis; the caller supplies the unit in
/// ambient coordinates and the basis parity if it is homogeneous.
pub fn subalgebra_on_cols(
    alg: &StructAlgebra,
    embed: &FpMatrix,
    solver: &ColumnSolver,
    unit_ambient: &[u64],
    parity: Option<Vec<u8>>,
) -> StructAlgebra {
    let fp = alg.fp();
    let d = embed.cols();
    let cols: Vec<Vec<u64>> = (0..d).map(|c| embed.col(c)).collect();
    let mut mult = vec![0u64; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let prod = alg.multiply(&cols[i], &cols[j]);
            let coords = solver.coords(&prod);
            debug_assert_eq!(embed.apply(&coords), prod, "product left the subalgebra");
            let base = (i * d + j) * d;
            mult[base..base + d].copy_from_slice(&coords);
        }
    }
    let unit = solver.coords(unit_ambient);
    let labels = (0..d).map(|i| format!("s{i}")).collect();
    StructAlgebra::new(fp, labels, mult, unit, parity)
}

/// Greedy basis of A.e (image of right multiplication), homogeneous when the
/// ambient algebra is graded and e is even.
fn invariant_image_basis(alg: &StructAlgebra, e: &[u64]) -> (FpMatrix, Option<Vec<u8>>) {
    let fp = alg.fp();
    let n = alg.dim();
    let r = alg.right_mult_matrix(e);
    let mut span = Subspace::zero(fp, n);
    let mut cols: Vec<Vec<u64>> = Vec::new();
    let mut parities: Vec<u8> = Vec::new();
    let mut homogeneous = alg.parity().is_some();
    for i in 0..n {
        let v = r.col(i);
        if v.iter().all(|&c| c == 0) || span.contains(&v) {
            continue;
        }
        span = span.sum(&Subspace::from_rows(fp, vec![v.clone()], n));
        if homogeneous {
            match alg.parity_of(&v) {
                Some(par) => parities.push(par),
                None => homogeneous = false,
            }
        }
        cols.push(v);
    }
    let d = cols.len();
    let mut embed = FpMatrix::zeros(fp, n, d);
    for (c, col) in cols.iter().enumerate() {
        for (row, &val) in col.iter().enumerate() {
            embed.set(row, c, val);
        }
    }
    let parity = if homogeneous { Some(parities) } else { None };
    (embed, parity)
}

/// Left module structure on an invariant column space.
fn left_module_on_cols(
    alg: &Arc<StructAlgebra>,
    embed: &FpMatrix,
    parity: Option<Vec<u8>>,
) -> AlgModule {
    let fp = alg.fp();
    let solver = ColumnSolver::new(embed);
    let d = embed.cols();
    let action = (0..alg.dim())
        .map(|l| {
            let image = alg.left_mult_matrix(&alg.basis_vector(l)).mul(embed);
            let mut out = FpMatrix::zeros(fp, d, d);
            for c in 0..d {
                let coords = solver.coords(&image.col(c));
                for (r, val) in coords.into_iter().enumerate() {
                    out.set(r, c, val);
                }
            }
            out
        })
        .collect();
    AlgModule::new(Arc::clone(alg), action, parity)
}

fn combo_matrix(fp: Fp, mats: &[FpMatrix], coords: &[u64]) -> FpMatrix {
    let n = mats[0].rows();
    let mut out = FpMatrix::zeros(fp, n, n);
    for (m, &c) in mats.iter().zip(coords) {
        if c == 0 {
            continue;
        }
        for r in 0..n {
            for k in 0..n {
                let v = m.get(r, k);
                if v != 0 {
                    out.set(r, k, fp.add(out.get(r, k), fp.mul(c, v)));
                }
            }
        }
    }
    out
}

/// x^p for one element, via the power of its left multiplication operator.
fn element_frobenius(alg: &StructAlgebra, v: &[u64]) -> Vec<u64> {
    let l = alg.left_mult_matrix(v);
    l.pow(alg.fp().p()).apply(alg.unit())
}

/// Matrix of the (linear, since the algebra is commutative over the prime
/// field) Frobenius map x -> x^p on basis vectors.
fn frobenius_matrix(alg: &StructAlgebra) -> FpMatrix {
    assert!(alg.is_commutative());
    let fp = alg.fp();
    let n = alg.dim();
    let mut out = FpMatrix::zeros(fp, n, n);
    for i in 0..n {
        let img = element_frobenius(alg, &alg.basis_vector(i));
        for (r, &val) in img.iter().enumerate() {
            out.set(r, i, val);
        }
    }
    out
}

/// Newton iteration e <- 3e^2 - 2e^3, doubling the precision modulo radical
/// powers each step.
fn lift_idempotent(alg: &StructAlgebra, mut e: Vec<u64>) -> Vec<u64> {
    let fp = alg.fp();
    for _ in 0..64 {
        let sq = alg.multiply(&e, &e);
        if sq == e {
            return e;
        }
        let cube = alg.multiply(&sq, &e);
        let mut next = vec![0u64; e.len()];
        for i in 0..e.len() {
            next[i] = fp.sub(fp.mul(3 % fp.p(), sq[i]), fp.mul(2, cube[i]));
        }
        e = next;
    }
    panic!("idempotent iteration did not converge");
}

/// Complete orthogonal primitive idempotents of a commutative semisimple
/// algebra, by splitting along Frobenius-fixed elements. Fully deterministic.
fn split_commutative_semisimple(alg: &StructAlgebra) -> Vec<Vec<u64>> {
    assert!(alg.is_commutative());
    let mut out = Vec::new();
    let mut stack = vec![alg.unit().to_vec()];
    while let Some(e) = stack.pop() {
        match split_step_commutative(alg, &e) {
            None => out.push(e),
            Some(parts) => stack.extend(parts),
        }
    }
    out
}

/// One splitting step inside the piece e*A: None when the piece is a field.
fn split_step_commutative(alg: &StructAlgebra, e: &[u64]) -> Option<Vec<Vec<u64>>> {
    let fp = alg.fp();
    let (embed, _) = invariant_image_basis(alg, e);
    if embed.cols() == 1 {
        return None;
    }
    let solver = ColumnSolver::new(&embed);
    let piece = subalgebra_on_cols(alg, &embed, &solver, e, None);
    let d = piece.dim();
    let frob = frobenius_matrix(&piece);
    let fixed = frob.sub(&FpMatrix::identity(fp, d)).nullspace();
    let r = fixed.cols();
    assert!(r >= 1, "the unit is always Frobenius-fixed");
    if r == 1 {
        return None;
    }
    let unit_p = piece.unit().to_vec();
    let v = (0..r)
        .map(|c| fixed.col(c))
        .find(|v| {
            let two = Subspace::from_rows(fp, vec![unit_p.clone(), v.clone()], d);
            two.dim() == 2
        })
        .expect("a fixed space of dimension >= 2 contains a non-scalar");
    let minpoly = piece.left_mult_matrix(&v).minpoly();
    let (_, factors) = minpoly.factor();
    let roots: Vec<u64> = factors
        .iter()
        .map(|(f, _)| {
            assert_eq!(f.degree(), 1, "Frobenius-fixed elements split completely");
            fp.neg(f.coeff(0))
        })
        .collect();
    assert!(roots.len() >= 2);
    let parts: Vec<Vec<u64>> = roots
        .iter()
        .map(|&a| {
            let mut acc = unit_p.clone();
            for &b in &roots {
                if b == a {
                    continue;
                }
                // acc *= (v - b) / (a - b)
                let scale = fp.inv(fp.sub(a, b));
                let mut shifted = v.clone();
                for (s, &u) in shifted.iter_mut().zip(&unit_p) {
                    *s = fp.sub(*s, fp.mul(b, u));
                }
                acc = piece.multiply(&acc, &shifted);
                for s in acc.iter_mut() {
                    *s = fp.mul(*s, scale);
                }
            }
            embed.apply(&acc)
        })
        .collect();
    Some(parts)
}

/// Complete orthogonal primitive idempotents of a semisimple algebra.
/// Non-commutative corners are split along an element whose minimal
/// polynomial has coprime factors: seeded pseudorandom tries first, then an
/// exhaustive deterministic sweep.
fn primitive_family(alg: &Arc<StructAlgebra>, seed: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut stack = vec![alg.unit().to_vec()];
    while let Some(e) = stack.pop() {
        match split_step_general(alg, &e, seed) {
            None => out.push(e),
            Some((e1, e2)) => {
                stack.push(e2);
                stack.push(e1);
            }
        }
    }
    out
}

fn split_step_general(
    alg: &Arc<StructAlgebra>,
    e: &[u64],
    seed: u64,
) -> Option<(Vec<u64>, Vec<u64>)> {
    let fp = alg.fp();
    let (embed, _) = invariant_image_basis_two_sided(alg, e);
    let d = embed.cols();
    if d == 1 {
        return None;
    }
    let solver = ColumnSolver::new(&embed);
    let piece = subalgebra_on_cols(alg, &embed, &solver, e, None);
    if piece.is_commutative() {
        return split_step_commutative_pair(alg, e, &embed, &piece);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<Vec<u64>> = Vec::new();
    for _ in 0..64 {
        candidates.push((0..d).map(|_| rng.gen_range(0..fp.p())).collect());
    }
    for i in 0..d {
        candidates.push(piece.basis_vector(i));
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut v = piece.basis_vector(i);
            v[j] = fp.add(v[j], 1);
            candidates.push(v);
        }
    }
    for z in candidates {
        let minpoly = piece.left_mult_matrix(&z).minpoly();
        let (_, factors) = minpoly.factor();
        if factors.len() < 2 {
            continue;
        }
        let (f0, m0) = &factors[0];
        let mut g = f0.pow(*m0);
        let mut h = crate::poly::FpPoly::one(fp);
        for (f, m) in factors.iter().skip(1) {
            h = h.mul(&f.pow(*m));
        }
        let (one, u, _) = g.ext_gcd(&h);
        assert!(one.is_one(), "distinct irreducible factors are coprime");
        // e1 = (u*g)(z) is the idempotent cutting out the h-part
        g = u.mul(&g);
        let e1_piece = eval_poly_in_algebra(&piece, &g, &z);
        let sq = piece.multiply(&e1_piece, &e1_piece);
        assert_eq!(sq, e1_piece, "polynomial idempotent construction failed");
        if e1_piece.iter().all(|&c| c == 0) || e1_piece == piece.unit() {
            continue;
        }
        let e1 = embed.apply(&e1_piece);
        let mut e2 = e.to_vec();
        for (s, &x) in e2.iter_mut().zip(&e1) {
            *s = fp.sub(*s, x);
        }
        return Some((e1, e2));
    }
    panic!("failed to split a non-commutative semisimple corner");
}

/// Commutative corner split returning exactly two pieces (first CRT factor
/// against the rest), reusing the field certificate.
fn split_step_commutative_pair(
    alg: &Arc<StructAlgebra>,
    e: &[u64],
    embed: &FpMatrix,
    piece: &StructAlgebra,
) -> Option<(Vec<u64>, Vec<u64>)> {
    let fp = alg.fp();
    let d = piece.dim();
    let frob = frobenius_matrix(piece);
    let fixed = frob.sub(&FpMatrix::identity(fp, d)).nullspace();
    if fixed.cols() == 1 {
        return None;
    }
    let unit_p = piece.unit().to_vec();
    let v = (0..fixed.cols())
        .map(|c| fixed.col(c))
        .find(|v| Subspace::from_rows(fp, vec![unit_p.clone(), v.clone()], d).dim() == 2)
        .expect("fixed space of dim >= 2 contains a non-scalar");
    let minpoly = piece.left_mult_matrix(&v).minpoly();
    let (_, factors) = minpoly.factor();
    let a = fp.neg(factors[0].0.coeff(0));
    let mut acc = unit_p.clone();
    for (f, _) in factors.iter().skip(1) {
        let b = fp.neg(f.coeff(0));
        let scale = fp.inv(fp.sub(a, b));
        let mut shifted = v.clone();
        for (s, &u) in shifted.iter_mut().zip(&unit_p) {
            *s = fp.sub(*s, fp.mul(b, u));
        }
        acc = piece.multiply(&acc, &shifted);
        for s in acc.iter_mut() {
            *s = fp.mul(*s, scale);
        }
    }
    let e1 = embed.apply(&acc);
    let mut e2 = e.to_vec();
    for (s, &x) in e2.iter_mut().zip(&e1) {
        *s = fp.sub(*s, x);
    }
    Some((e1, e2))
}

/// Greedy basis of the corner e*A*e.
fn invariant_image_basis_two_sided(
    alg: &StructAlgebra,
    e: &[u64],
) -> (FpMatrix, Option<Vec<u8>>) {
    let fp = alg.fp();
    let n = alg.dim();
    let mut span = Subspace::zero(fp, n);
    let mut cols: Vec<Vec<u64>> = Vec::new();
    for i in 0..n {
        let v = alg.multiply(&alg.multiply(e, &alg.basis_vector(i)), e);
        if v.iter().all(|&c| c == 0) || span.contains(&v) {
            continue;
        }
        span = span.sum(&Subspace::from_rows(fp, vec![v.clone()], n));
        cols.push(v);
    }
    let d = cols.len();
    let mut embed = FpMatrix::zeros(fp, n, d);
    for (c, col) in cols.iter().enumerate() {
        for (row, &val) in col.iter().enumerate() {
            embed.set(row, c, val);
        }
    }
    (embed, None)
}

fn eval_poly_in_algebra(alg: &StructAlgebra, f: &crate::poly::FpPoly, z: &[u64]) -> Vec<u64> {
    let fp = alg.fp();
    let coeffs = f.coeffs();
    let mut acc = vec![0u64; alg.dim()];
    for &c in coeffs.iter().rev() {
        acc = alg.multiply(&acc, z);
        for (slot, &u) in acc.iter_mut().zip(alg.unit()) {
            *slot = fp.add(*slot, fp.mul(c, u));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn an(alg: StructAlgebra) -> Analysis {
        Analysis::new(Arc::new(alg), 7)
    }

    #[test]
    fn radical_of_truncated_polynomial() {
        let mut a = an(construct::truncated_polynomial(Fp::new(3), 9));
        assert_eq!(a.radical().dim(), 8);
        assert_eq!(
            a.radical_series_dims(),
            vec![9, 8, 7, 6, 5, 4, 3, 2, 1, 0]
        );
        assert_eq!(a.loewy_length(), 9);
    }

    #[test]
    fn radical_of_matrix_algebra_is_zero() {
        let mut a = an(construct::matrix_algebra(Fp::new(3), 2));
        assert_eq!(a.radical().dim(), 0);
        assert_eq!(a.center().dim(), 1);
    }

    #[test]
    fn modular_group_algebra_is_local() {
        // kZ3 at p = 3 is isomorphic to k[x]/(x^3)
        let mut a = an(construct::cyclic_group_algebra(Fp::new(3), 3));
        assert_eq!(a.radical().dim(), 2);
        assert_eq!(a.central_idempotents().len(), 1);
        assert_eq!(a.pims().idempotents.len(), 1);
    }

    #[test]
    fn function_algebra_splits_into_lines() {
        let mut a = an(construct::function_algebra(Fp::new(3), 3));
        assert_eq!(a.radical().dim(), 0);
        let idems = a.central_idempotents().clone();
        assert_eq!(idems.len(), 3);
        for e in &idems {
            assert_eq!(e.iter().filter(|&&c| c != 0).count(), 1);
        }
        assert_eq!(a.blocks().len(), 3);
        assert_eq!(a.simples().len(), 3);
    }

    #[test]
    fn matrix_algebra_shape() {
        let mut a = an(construct::matrix_algebra(Fp::new(3), 2));
        let fam = a.pims().clone();
        assert_eq!(fam.idempotents.len(), 2);
        assert_eq!(fam.class_count, 1);
        let shape = a.recognize_matrix_algebra().unwrap();
        assert_eq!(shape.matrix_size, 2);
        assert_eq!(shape.field_degree, 1);
        assert!(a.is_nakayama().holds);
    }

    #[test]
    fn nakayama_of_serial_and_non_serial() {
        let mut serial = an(construct::truncated_polynomial(Fp::new(3), 3));
        assert!(serial.is_nakayama().holds);

        let a = construct::truncated_polynomial(Fp::new(3), 3);
        let b = construct::truncated_polynomial(Fp::new(3), 3);
        let mut two_vars = an(construct::tensor_algebra_product(&a, &b));
        let nk = two_vars.is_nakayama();
        assert!(!nk.holds);
        let w = nk.witness.unwrap();
        assert_eq!(w.layer, 1);
        assert_eq!(w.summands, 2);
    }

    #[test]
    fn stable_quiver_of_serial_local_algebra() {
        let mut a = an(construct::truncated_polynomial(Fp::new(3), 3));
        let q = a.ar_quiver().unwrap();
        assert_eq!(q.simples, 1);
        assert_eq!(q.loewy, 3);
        assert_eq!(q.vertex_count(), 2);
    }

    #[test]
    fn fingerprint_is_basis_invariant() {
        let alg = construct::truncated_polynomial(Fp::new(5), 4);
        let fp = alg.fp();
        let dim = alg.dim();
        let mut q = FpMatrix::identity(fp, dim);
        // unit must stay the unit; mix the radical part only
        q.set(1, 2, 2);
        q.set(1, 3, 4);
        q.set(2, 3, 1);
        let moved = alg.change_basis(&q);
        let f1 = an(alg).fingerprint();
        let f2 = an(moved).fingerprint();
        assert_eq!(f1, f2);
    }

    #[test]
    fn ext_quiver_of_two_variable_truncated() {
        let a = construct::truncated_polynomial(Fp::new(3), 3);
        let b = construct::truncated_polynomial(Fp::new(3), 2);
        let mut t = an(construct::tensor_algebra_product(&a, &b));
        let q = t.ext_quiver().clone();
        assert_eq!(q.vertices.len(), 1);
        assert_eq!(q.arrows, vec![(0, 0, 2)]);
    }
}
