//! Minimal projective covers, minimal resolutions, and a window-based
//! complexity estimate read off the growth of the cover dimensions.

use thiserror::Error;

use crate::analysis::Analysis;
use crate::fp::{FpMatrix, Subspace};
use crate::module::AlgModule;

/// One step P -> M of a minimal projective cover, with its kernel.
#[derive(Debug, Clone)]
pub struct CoverStep {
    pub cover: AlgModule,
    /// Matrix of the cover map, target coordinates by cover coordinates.
    pub map: FpMatrix,
    pub kernel: AlgModule,
    pub kernel_in_cover: Subspace,
    /// How many copies of each projective class the cover uses.
    pub class_counts: Vec<usize>,
}

/// Minimal projective cover of a module. Generators are picked greedily:
/// for each simple class, columns of the class idempotent's action are
/// accepted whenever they add something new modulo the radical plus what is
/// already generated; each accepted generator contributes exactly one copy
/// of the class projective to the cover.
pub fn projective_cover(an: &mut Analysis, m: &AlgModule) -> CoverStep {
    let alg = an.alg().clone();
    let fp = an.fp();
    let dm = m.dim();
    let class_count = an.simples().len();
    if dm == 0 {
        let empty = AlgModule::new(
            alg.clone(),
            (0..alg.dim()).map(|_| FpMatrix::zeros(fp, 0, 0)).collect(),
            None,
        );
        return CoverStep {
            cover: empty.clone(),
            map: FpMatrix::zeros(fp, 0, 0),
            kernel: empty,
            kernel_in_cover: Subspace::zero(fp, 0),
            class_counts: vec![0; class_count],
        };
    }

    let classes = an.simples().clone();
    let pims = an.pims().clone();
    let gens = an.generating_set();
    let jm = an.radical_submodule(m);
    let top = m.quotient(&jm);
    let mults = an.simple_multiplicities(&top);

    let mut picks: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut reach = jm.clone();
    for (c, class) in classes.iter().enumerate() {
        if mults[c] == 0 {
            continue;
        }
        let ec_action = m.act_matrix(&class.idempotent);
        for j in 0..dm {
            let v = ec_action.col(j);
            if reach.contains(&v) {
                continue;
            }
            picks.push((c, v.clone()));
            let mut seeds = reach.basis_rows();
            seeds.push(v);
            reach = m.spin(&seeds, &gens);
        }
    }
    assert_eq!(reach.dim(), dm, "cover generators fail to reach the module");
    let mut class_counts = vec![0usize; class_count];
    for &(c, _) in &picks {
        class_counts[c] += 1;
    }
    assert_eq!(
        class_counts, mults,
        "cover multiplicities disagree with the top"
    );

    let mut parts: Vec<&AlgModule> = Vec::new();
    let mut blocks: Vec<(usize, &Vec<u64>)> = Vec::new();
    for (c, v) in &picks {
        let rep = classes[*c].pims[0];
        parts.push(&pims.modules[rep]);
        blocks.push((rep, v));
    }
    let cover = if parts.is_empty() {
        AlgModule::new(
            alg.clone(),
            (0..alg.dim()).map(|_| FpMatrix::zeros(fp, 0, 0)).collect(),
            None,
        )
    } else {
        AlgModule::direct_sum(&parts)
    };

    let dp = cover.dim();
    let mut map = FpMatrix::zeros(fp, dm, dp);
    let mut col = 0usize;
    for (rep, v) in &blocks {
        let emb = &pims.embeddings[*rep];
        for k in 0..emb.cols() {
            let img = m.act_vec(&emb.col(k), v);
            for (r, &x) in img.iter().enumerate() {
                map.set(r, col, x);
            }
            col += 1;
        }
    }
    assert_eq!(map.rank(), dm, "cover map is not surjective");

    let kernel_in_cover = Subspace::from_cols(&map.nullspace());
    let kernel = cover.submodule(&kernel_in_cover);
    let rad_cover = an.radical_submodule(&cover);
    assert!(
        rad_cover.contains_subspace(&kernel_in_cover),
        "cover is not minimal: kernel escapes the radical"
    );
    CoverStep {
        cover,
        map,
        kernel,
        kernel_in_cover,
        class_counts,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinResolution {
    /// Dimensions of the projective covers P_0, P_1, ...
    pub cover_dims: Vec<usize>,
    /// Dimensions of the syzygies Omega^1, Omega^2, ...
    pub syzygy_dims: Vec<usize>,
}

/// Iterated minimal covers to the given depth.
pub fn min_resolution(an: &mut Analysis, m: &AlgModule, depth: usize) -> MinResolution {
    let mut cover_dims = Vec::with_capacity(depth);
    let mut syzygy_dims = Vec::with_capacity(depth);
    let mut current = m.clone();
    for _ in 0..depth {
        if current.dim() == 0 {
            cover_dims.push(0);
            syzygy_dims.push(0);
            continue;
        }
        let step = projective_cover(an, &current);
        cover_dims.push(step.cover.dim());
        syzygy_dims.push(step.kernel.dim());
        current = step.kernel;
    }
    MinResolution {
        cover_dims,
        syzygy_dims,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ComplexityClass {
    #[error("0 (the resolution terminates)")]
    Zero,
    #[error("1 (cover dimensions are eventually constant)")]
    One,
    #[error("2 (cover dimensions grow along an arithmetic progression)")]
    Two,
    #[error("at least 2 (growth unresolved within the window)")]
    AtLeastTwoUnresolved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityEstimate {
    pub class: ComplexityClass,
    /// The cover dimensions the verdict was read from. Any verdict is only
    /// as good as this finite window.
    pub window: Vec<usize>,
}

/// Classify resolution growth from a finite window of cover dimensions.
/// Needs at least 8 entries; the last 4 decide constancy and the last 6
/// decide arithmetic growth.
pub fn complexity_estimate(cover_dims: &[usize]) -> ComplexityEstimate {
    assert!(
        cover_dims.len() >= 8,
        "complexity estimate needs a resolution of depth at least 8"
    );
    let window = cover_dims.to_vec();
    let class = if *cover_dims.last().unwrap() == 0 {
        ComplexityClass::Zero
    } else {
        let tail4 = &cover_dims[cover_dims.len() - 4..];
        let tail6 = &cover_dims[cover_dims.len() - 6..];
        if tail4.iter().all(|&d| d == tail4[0]) {
            ComplexityClass::One
        } else {
            let diff = tail6[1] as i64 - tail6[0] as i64;
            let ap = diff > 0
                && tail6
                    .windows(2)
                    .all(|w| w[1] as i64 - w[0] as i64 == diff);
            if ap {
                ComplexityClass::Two
            } else {
                ComplexityClass::AtLeastTwoUnresolved
            }
        }
    };
    ComplexityEstimate { class, window }
}
