//! Restricted Lie superalgebras over GF(p), p odd, given by structure
//! constants on a homogeneous basis (even generators first), with a p-map
//! on the even part.
//!
//! Validation checks super skew-symmetry, the graded Jacobi identity, parity
//! additivity of the bracket, and restrictedness on basis elements
//! (ad of the p-map image equals the p-th power of ad), which extends to the
//! whole algebra. At p = 3 the cube identity [u,[u,u]] = 0 for odd u is an
//! independent axiom and is checked exhaustively; at p >= 5 it follows from
//! the Jacobi identity.
//!
//! The p-map on non-basis elements is evaluated with the two-term Jacobson
//! sum: (x+y)^[p] = x^[p] + y^[p] + sum_i s_i(x,y), where i*s_i(x,y) is the
//! coefficient of t^(i-1) in ad(tx+y)^(p-1)(x).

use std::fmt;

use thiserror::Error;

use crate::fp::{Fp, FpMatrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("bracket of basis elements {i}, {j} is not parity homogeneous")]
    ParityViolation { i: usize, j: usize },
    #[error("super skew-symmetry fails on basis pair ({i}, {j})")]
    SuperSkew { i: usize, j: usize },
    #[error("graded Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("odd cube identity [u,[u,u]] = 0 fails for an odd element")]
    OddCube { coords: Vec<u64> },
    #[error("p-map image of even basis element {i} has odd support")]
    PmapSupport { i: usize },
    #[error("restrictedness fails on basis element {i}: ad(x^[p]) != (ad x)^p")]
    PmapAdjoint { i: usize },
    #[error("subspace lattice too large to enumerate (about {estimate} subspaces)")]
    DimensionTooLarge { estimate: u128 },
    #[error("no unique largest {kind} ideal: incomparable maxima of dims {dims:?}")]
    AmbiguousMaximum {
        kind: &'static str,
        dims: (usize, usize),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementClass {
    Toral,
    PNilpotent,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriterionFailure {
    OddPartTooBig(usize),
    OddBracketEscapesNilradical,
    NoSuitableX0,
    NoSuitableT0,
}

impl fmt::Display for CriterionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionFailure::OddPartTooBig(d) => {
                write!(f, "odd part has dimension {d} > 1")
            }
            CriterionFailure::OddBracketEscapesNilradical => {
                write!(f, "the p-closure of [y,y] is not inside the largest nilpotent ideal")
            }
            CriterionFailure::NoSuitableX0 => {
                write!(f, "no p-nilpotent x0 with T + (k x0)_p = N (direct)")
            }
            CriterionFailure::NoSuitableT0 => {
                write!(f, "no toral t0 with L0 = N + k t0")
            }
        }
    }
}

/// Witness for a positive finiteness verdict: the certifying elements and
/// each clause that was checked, all of which hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionWitness {
    pub x0: Vec<u64>,
    pub t0: Vec<u64>,
    pub clauses: Vec<(String, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub holds: bool,
    pub failure: Option<CriterionFailure>,
    pub witness: Option<CriterionWitness>,
    pub nilpotent_ideal_dim: usize,
    pub toral_ideal_dim: usize,
}

#[derive(Debug, Clone)]
pub struct RestrictedLieSuper {
    fp: Fp,
    even: usize,
    odd: usize,
    labels: Vec<String>,
    bracket: Vec<u64>, // flat dim^2 x dim
    pmap: Vec<Vec<u64>>,
}

impl RestrictedLieSuper {
    /// Zero bracket and zero p-map on `even + odd` basis elements, even
    /// generators first. Fill in with `set_bracket` / `set_pmap`.
    pub fn new(fp: Fp, even: usize, odd: usize, labels: Vec<String>) -> Self {
        let dim = even + odd;
        assert_eq!(labels.len(), dim);
        RestrictedLieSuper {
            fp,
            even,
            odd,
            labels,
            bracket: vec![0; dim * dim * dim],
            pmap: vec![vec![0; dim]; even],
        }
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn even_dim(&self) -> usize {
        self.even
    }

    pub fn odd_dim(&self) -> usize {
        self.odd
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i >= self.even)
    }

    /// Set [b_i, b_j]; for i != j the mirrored bracket is filled in by super
    /// skew-symmetry.
    pub fn set_bracket(&mut self, i: usize, j: usize, coords: &[u64]) {
        let dim = self.dim();
        assert_eq!(coords.len(), dim);
        let base = (i * dim + j) * dim;
        self.bracket[base..base + dim].copy_from_slice(coords);
        if i != j {
            let sign_flip = self.parity(i) & self.parity(j) == 0;
            let mirrored: Vec<u64> = coords
                .iter()
                .map(|&c| {
                    if sign_flip {
                        self.fp.neg(c)
                    } else {
                        c
                    }
                })
                .collect();
            let base = (j * dim + i) * dim;
            self.bracket[base..base + dim].copy_from_slice(&mirrored);
        }
    }

    pub fn set_pmap(&mut self, i: usize, coords: &[u64]) {
        assert!(i < self.even);
        assert_eq!(coords.len(), self.dim());
        self.pmap[i] = coords.to_vec();
    }

    pub fn bracket_of(&self, i: usize, j: usize) -> &[u64] {
        let dim = self.dim();
        let base = (i * dim + j) * dim;
        &self.bracket[base..base + dim]
    }

    pub fn pmap_of(&self, i: usize) -> &[u64] {
        &self.pmap[i]
    }

    pub fn bracket_vec(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let dim = self.dim();
        let fp = self.fp;
        let mut out = vec![0u64; dim];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let c = fp.mul(a, b);
                for (slot, &s) in out.iter_mut().zip(self.bracket_of(i, j)) {
                    *slot = fp.add(*slot, fp.mul(c, s));
                }
            }
        }
        out
    }

    pub fn ad_matrix(&self, v: &[u64]) -> FpMatrix {
        let dim = self.dim();
        let mut out = FpMatrix::zeros(self.fp, dim, dim);
        for k in 0..dim {
            let img = self.bracket_vec(v, &self.basis_vector(k));
            for (r, &val) in img.iter().enumerate() {
                out.set(r, k, val);
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim()];
        v[i] = 1;
        v
    }

    fn is_even_vec(&self, v: &[u64]) -> bool {
        v.iter().skip(self.even).all(|&c| c == 0)
    }

    /// All axioms, on basis elements (sufficient by multilinearity, and for
    /// restrictedness by linearity of ad and the Jacobson expansion).
    pub fn validate(&self) -> Result<(), LieError> {
        let fp = self.fp;
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let b = self.bracket_of(i, j);
                let want = (self.parity(i) + self.parity(j)) % 2;
                for (k, &c) in b.iter().enumerate() {
                    if c != 0 && self.parity(k) != want {
                        return Err(LieError::ParityViolation { i, j });
                    }
                }
                let mirror = self.bracket_of(j, i);
                let sign_flip = self.parity(i) & self.parity(j) == 0;
                for (k, &c) in b.iter().enumerate() {
                    let expect = if sign_flip { fp.neg(c) } else { c };
                    if mirror[k] != expect {
                        return Err(LieError::SuperSkew { i, j });
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    // (-1)^(|i||k|) [i,[j,k]] + (-1)^(|j||i|) [j,[k,i]]
                    //   + (-1)^(|k||j|) [k,[i,j]] = 0
                    let mut acc = vec![0u64; dim];
                    let terms = [(i, j, k), (j, k, i), (k, i, j)];
                    let signs = [
                        self.parity(i) & self.parity(k),
                        self.parity(j) & self.parity(i),
                        self.parity(k) & self.parity(j),
                    ];
                    for ((a, b, c), s) in terms.iter().zip(signs) {
                        let inner = self.bracket_of(*b, *c).to_vec();
                        let outer = self.bracket_vec(&self.basis_vector(*a), &inner);
                        for (slot, &x) in acc.iter_mut().zip(&outer) {
                            let signed = if s == 1 { fp.neg(x) } else { x };
                            *slot = fp.add(*slot, signed);
                        }
                    }
                    if acc.iter().any(|&c| c != 0) {
                        return Err(LieError::Jacobi { i, j, k });
                    }
                }
            }
        }
        if fp.p() == 3 && self.odd > 0 {
            // at p = 3 the odd cube axiom is independent of Jacobi
            let count = 3u64.checked_pow(self.odd as u32).unwrap_or(u64::MAX);
            assert!(count <= 1 << 20, "odd part too large for the cube sweep");
            let mut coords = vec![0u64; self.odd];
            loop {
                let mut u = vec![0u64; dim];
                for (t, &c) in coords.iter().enumerate() {
                    u[self.even + t] = c;
                }
                let cube = self.bracket_vec(&u, &self.bracket_vec(&u, &u));
                if cube.iter().any(|&c| c != 0) {
                    return Err(LieError::OddCube { coords: u });
                }
                if !increment_odometer(&mut coords, 3) {
                    break;
                }
            }
        }
        for i in 0..self.even {
            if !self.is_even_vec(&self.pmap[i]) {
                return Err(LieError::PmapSupport { i });
            }
            let lhs = self.ad_matrix(&self.pmap[i]);
            let rhs = self.ad_matrix(&self.basis_vector(i)).pow(fp.p());
            if lhs != rhs {
                return Err(LieError::PmapAdjoint { i });
            }
        }
        Ok(())
    }

    /// p-map of an arbitrary even element, folding basis terms with the
    /// two-term Jacobson sum. Cost grows linearly with p.
    pub fn pmap_eval(&self, v: &[u64]) -> Vec<u64> {
        assert!(self.is_even_vec(v), "p-map applies to even elements");
        let fp = self.fp;
        let dim = self.dim();
        let mut acc: Option<(Vec<u64>, Vec<u64>)> = None; // (element, its p-map)
        for i in 0..self.even {
            if v[i] == 0 {
                continue;
            }
            let mut term = vec![0u64; dim];
            term[i] = v[i];
            // (c x)^[p] = c^p x^[p] = c x^[p] over the prime field
            let term_p: Vec<u64> = self.pmap[i].iter().map(|&c| fp.mul(v[i], c)).collect();
            acc = Some(match acc {
                None => (term, term_p),
                Some((x, xp)) => {
                    let mut sum = vec![0u64; dim];
                    for k in 0..dim {
                        sum[k] = fp.add(x[k], term[k]);
                    }
                    let mut sum_p = vec![0u64; dim];
                    for k in 0..dim {
                        sum_p[k] = fp.add(xp[k], term_p[k]);
                    }
                    for s in self.jacobson_terms(&x, &term) {
                        for k in 0..dim {
                            sum_p[k] = fp.add(sum_p[k], s[k]);
                        }
                    }
                    (sum, sum_p)
                }
            });
        }
        match acc {
            None => vec![0u64; dim],
            Some((_, vp)) => vp,
        }
    }

    /// s_i(x, y) for i = 1..p-1: i * s_i is the coefficient of t^(i-1) in
    /// ad(tx + y)^(p-1) applied to x.
    fn jacobson_terms(&self, x: &[u64], y: &[u64]) -> Vec<Vec<u64>> {
        let fp = self.fp;
        let p = fp.p() as usize;
        let dim = self.dim();
        let adx = self.ad_matrix(x);
        let ady = self.ad_matrix(y);
        // polynomial in t with vector coefficients, degree index = t-power
        let mut poly: Vec<Vec<u64>> = vec![x.to_vec()];
        for _ in 0..(p - 1) {
            let mut next: Vec<Vec<u64>> = vec![vec![0u64; dim]; poly.len() + 1];
            for (d, coeff) in poly.iter().enumerate() {
                let via_x = adx.apply(coeff);
                let via_y = ady.apply(coeff);
                for k in 0..dim {
                    next[d + 1][k] = fp.add(next[d + 1][k], via_x[k]);
                    next[d][k] = fp.add(next[d][k], via_y[k]);
                }
            }
            poly = next;
        }
        (1..p)
            .map(|i| {
                let inv = fp.inv(i as u64);
                poly[i - 1].iter().map(|&c| fp.mul(inv, c)).collect()
            })
            .collect()
    }

    /// Iterated p-map classification.
    pub fn element_class(&self, v: &[u64]) -> ElementClass {
        assert!(self.is_even_vec(v));
        if v.iter().all(|&c| c == 0) {
            return ElementClass::PNilpotent;
        }
        let first = self.pmap_eval(v);
        if first == v {
            return ElementClass::Toral;
        }
        let mut cur = first;
        for _ in 0..=self.even {
            if cur.iter().all(|&c| c == 0) {
                return ElementClass::PNilpotent;
            }
            cur = self.pmap_eval(&cur);
        }
        ElementClass::Neither
    }

    /// Smallest restricted subalgebra of the even part containing the given
    /// even vectors: close under brackets, then p-maps of the spanning set.
    pub fn p_closure(&self, seeds: &[Vec<u64>]) -> Subspace {
        let fp = self.fp;
        let dim = self.dim();
        for s in seeds {
            assert!(self.is_even_vec(s), "p-closure input must be even");
        }
        let mut span = Subspace::zero(fp, dim);
        let mut work: Vec<Vec<u64>> = Vec::new();
        let mut spanning: Vec<Vec<u64>> = Vec::new();
        let push = |v: Vec<u64>,
                    span: &mut Subspace,
                    work: &mut Vec<Vec<u64>>,
                    spanning: &mut Vec<Vec<u64>>| {
            if !v.iter().all(|&c| c == 0) && !span.contains(&v) {
                *span = span.sum(&Subspace::from_rows(fp, vec![v.clone()], dim));
                work.push(v.clone());
                spanning.push(v);
            }
        };
        for s in seeds {
            push(s.clone(), &mut span, &mut work, &mut spanning);
        }
        while let Some(v) = work.pop() {
            let others = spanning.clone();
            for u in others {
                push(
                    self.bracket_vec(&v, &u),
                    &mut span,
                    &mut work,
                    &mut spanning,
                );
            }
            push(self.pmap_eval(&v), &mut span, &mut work, &mut spanning);
        }
        span
    }

    /// Center of the even part: even vectors commuting with all of L0.
    pub fn lie_center(&self) -> Subspace {
        let fp = self.fp;
        let dim = self.dim();
        let mut rows = Vec::new();
        // v in L0 with [v, e_k] = 0 for all even k; build the stacked system
        for k in 0..self.even {
            for out in 0..dim {
                let mut row = vec![0u64; self.even];
                for i in 0..self.even {
                    row[i] = self.bracket_of(i, k)[out];
                }
                rows.push(row);
            }
        }
        let sys = FpMatrix::from_rows(fp, rows);
        let ker = sys.nullspace();
        let mut basis = Vec::new();
        for c in 0..ker.cols() {
            let coeffs = ker.col(c);
            let mut v = vec![0u64; dim];
            v[..self.even].copy_from_slice(&coeffs);
            basis.push(v);
        }
        Subspace::from_rows(fp, basis, dim)
    }

    fn even_subspace_to_full(&self, s: &Subspace) -> Subspace {
        let dim = self.dim();
        let rows: Vec<Vec<u64>> = s
            .basis_rows()
            .into_iter()
            .map(|r| {
                let mut v = vec![0u64; dim];
                v[..self.even].copy_from_slice(&r);
                v
            })
            .collect();
        Subspace::from_rows(self.fp, rows, dim)
    }

    fn is_even_ideal(&self, s: &Subspace) -> bool {
        // s given in full coordinates, even support
        for row in s.basis_rows() {
            for k in 0..self.even {
                let b = self.bracket_vec(&self.basis_vector(k), &row);
                if !s.contains(&b) {
                    return false;
                }
            }
        }
        true
    }

    fn is_p_stable(&self, s: &Subspace) -> bool {
        s.basis_rows()
            .into_iter()
            .all(|row| s.contains(&self.pmap_eval(&row)))
    }

    fn is_lie_nilpotent(&self, s: &Subspace) -> bool {
        let fp = self.fp;
        let dim = self.dim();
        let mut cur = s.clone();
        loop {
            if cur.dim() == 0 {
                return true;
            }
            let mut prods = Vec::new();
            for a in s.basis_rows() {
                for b in cur.basis_rows() {
                    prods.push(self.bracket_vec(&a, &b));
                }
            }
            let next = Subspace::from_rows(fp, prods, dim);
            if next.dim() >= cur.dim() {
                return false;
            }
            cur = next;
        }
    }

    fn is_abelian(&self, s: &Subspace) -> bool {
        let rows = s.basis_rows();
        for a in &rows {
            for b in &rows {
                if self.bracket_vec(a, b).iter().any(|&c| c != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// p-map injectivity on an abelian p-stable subspace, where the p-map is
    /// linear over the prime field.
    fn pmap_injective_on(&self, s: &Subspace) -> bool {
        if s.dim() == 0 {
            return true;
        }
        let fp = self.fp;
        let rows = s.basis_rows();
        let mut cols = Vec::new();
        for r in &rows {
            let img = self.pmap_eval(r);
            cols.push(s.coords(&img).expect("p-stable subspace"));
        }
        let d = s.dim();
        let mut m = FpMatrix::zeros(fp, d, d);
        for (c, col) in cols.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m.rank() == d
    }

    const LATTICE_CAP: u128 = 10_000_000;

    fn enumeration_guard(&self) -> Result<(), LieError> {
        let estimate = subspace_lattice_size(self.fp.p(), self.even);
        if self.even > 6 || estimate > Self::LATTICE_CAP {
            return Err(LieError::DimensionTooLarge { estimate });
        }
        Ok(())
    }

    fn largest_filtered_ideal(
        &self,
        kind: &'static str,
        accept: impl Fn(&Subspace) -> bool,
    ) -> Result<Subspace, LieError> {
        self.enumeration_guard()?;
        let mut passing: Vec<Subspace> = Vec::new();
        for_each_subspace(self.fp, self.even, &mut |even_sub| {
            let full = self.even_subspace_to_full(even_sub);
            if self.is_even_ideal(&full) && self.is_p_stable(&full) && accept(&full) {
                passing.push(full);
            }
        });
        let best = passing
            .iter()
            .max_by_key(|s| s.dim())
            .expect("the zero ideal always passes")
            .clone();
        for s in &passing {
            if !best.contains_subspace(s) {
                return Err(LieError::AmbiguousMaximum {
                    kind,
                    dims: (best.dim(), s.dim()),
                });
            }
        }
        Ok(best)
    }

    /// Largest p-stable Lie-nilpotent ideal of the even part, by exhaustive
    /// subspace enumeration with a uniqueness certificate.
    pub fn largest_nilpotent_ideal(&self) -> Result<Subspace, LieError> {
        self.largest_filtered_ideal("nilpotent", |s| self.is_lie_nilpotent(s))
    }

    /// Largest toral (abelian, p-map injective) p-stable ideal of the even
    /// part.
    pub fn largest_toral_ideal(&self) -> Result<Subspace, LieError> {
        self.largest_filtered_ideal("toral", |s| {
            self.is_abelian(s) && self.pmap_injective_on(s)
        })
    }

    /// Decide the finiteness-of-indecomposables criterion: the odd part is
    /// at most a line, [y,y] generates inside the largest nilpotent ideal N,
    /// N splits as T + (k x0)_p for a p-nilpotent x0 (with (k x0)_p inside
    /// the p-closure of [y,y] when the odd part is a line), and the even
    /// part is N plus a toral line.
    pub fn rep_finite_criterion(&self) -> Result<CriterionOutcome, LieError> {
        self.validate()?;
        let fp = self.fp;
        let dim = self.dim();
        if self.odd >= 2 {
            return Ok(CriterionOutcome {
                holds: false,
                failure: Some(CriterionFailure::OddPartTooBig(self.odd)),
                witness: None,
                nilpotent_ideal_dim: 0,
                toral_ideal_dim: 0,
            });
        }
        let n_ideal = self.largest_nilpotent_ideal()?;
        let t_ideal = self.largest_toral_ideal()?;
        let fail = |f: CriterionFailure| CriterionOutcome {
            holds: false,
            failure: Some(f),
            witness: None,
            nilpotent_ideal_dim: n_ideal.dim(),
            toral_ideal_dim: t_ideal.dim(),
        };

        let odd_closure: Option<Subspace> = if self.odd == 1 {
            let y = self.basis_vector(self.even);
            let yy = self.bracket_vec(&y, &y);
            Some(self.p_closure(&[yy]))
        } else {
            None
        };
        if let Some(c) = &odd_closure {
            if !n_ideal.contains_subspace(c) {
                return Ok(fail(CriterionFailure::OddBracketEscapesNilradical));
            }
        }

        // sweep x0 over N in lexicographic coordinate order
        let n_rows = n_ideal.basis_rows();
        let mut x0_found: Option<(Vec<u64>, Subspace)> = None;
        let mut coords = vec![0u64; n_rows.len()];
        loop {
            let mut v = vec![0u64; dim];
            for (t, &c) in coords.iter().enumerate() {
                if c != 0 {
                    for (slot, &b) in v.iter_mut().zip(&n_rows[t]) {
                        *slot = fp.add(*slot, fp.mul(c, b));
                    }
                }
            }
            if self.element_class(&v) == ElementClass::PNilpotent {
                let xp = self.p_closure(&[v.clone()]);
                let direct = t_ideal.intersect(&xp).dim() == 0
                    && t_ideal.sum(&xp).dim() == n_ideal.dim()
                    && n_ideal.contains_subspace(&xp);
                let inside_odd = odd_closure
                    .as_ref()
                    .map_or(true, |c| c.contains_subspace(&xp));
                if direct && inside_odd {
                    x0_found = Some((v, xp));
                    break;
                }
            }
            if n_rows.is_empty() || !increment_odometer(&mut coords, fp.p()) {
                break;
            }
        }
        let (x0, x0_closure) = match x0_found {
            Some(v) => v,
            None => return Ok(fail(CriterionFailure::NoSuitableX0)),
        };

        // sweep t0 over the even part
        let mut t0_found: Option<Vec<u64>> = None;
        let mut coords = vec![0u64; self.even];
        loop {
            let mut v = vec![0u64; dim];
            v[..self.even].copy_from_slice(&coords);
            let toral_or_zero = self.pmap_eval(&v) == v;
            if toral_or_zero {
                let span_with_n = if v.iter().all(|&c| c == 0) {
                    n_ideal.clone()
                } else {
                    n_ideal.sum(&Subspace::from_rows(fp, vec![v.clone()], dim))
                };
                if span_with_n.dim() == self.even {
                    t0_found = Some(v);
                    break;
                }
            }
            if self.even == 0 || !increment_odometer(&mut coords, fp.p()) {
                break;
            }
        }
        let t0 = match t0_found {
            Some(v) => v,
            None => return Ok(fail(CriterionFailure::NoSuitableT0)),
        };

        let mut clauses = vec![
            (
                format!("odd part has dimension {} <= 1", self.odd),
                true,
            ),
            ("x0 is p-nilpotent".to_string(), true),
            (
                "N = T + (k x0)_p with zero intersection".to_string(),
                true,
            ),
            (
                "t0 is toral or zero with L0 = N + k t0".to_string(),
                true,
            ),
        ];
        if self.odd == 1 {
            clauses.push((
                "([y,y])_p lies inside N".to_string(),
                true,
            ));
            clauses.push((
                "(k x0)_p lies inside ([y,y])_p".to_string(),
                odd_closure
                    .as_ref()
                    .map_or(true, |c| c.contains_subspace(&x0_closure)),
            ));
        }
        Ok(CriterionOutcome {
            holds: true,
            failure: None,
            witness: Some(CriterionWitness { x0, t0, clauses }),
            nilpotent_ideal_dim: n_ideal.dim(),
            toral_ideal_dim: t_ideal.dim(),
        })
    }
}

/// Advance mixed-radix digits (all radix p), least significant first.
/// Returns false on wraparound.
pub(crate) fn increment_odometer(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// Number of subspaces of GF(p)^n, saturating.
pub fn subspace_lattice_size(p: u64, n: usize) -> u128 {
    let mut total: u128 = 0;
    for k in 0..=n {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            let pn = (p as u128).checked_pow((n - i) as u32);
            let pk = (p as u128).checked_pow((k - i) as u32);
            match (pn, pk) {
                (Some(a), Some(b)) => {
                    num = match num.checked_mul(a - 1) {
                        Some(v) => v,
                        None => return u128::MAX,
                    };
                    den *= b - 1;
                }
                _ => return u128::MAX,
            }
        }
        total = match total.checked_add(num / den) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    total
}

/// Visit every subspace of GF(p)^n exactly once, as reduced row echelon
/// bases in a fixed deterministic order.
pub fn for_each_subspace<F: FnMut(&Subspace)>(fp: Fp, n: usize, f: &mut F) {
    f(&Subspace::zero(fp, n));
    let p = fp.p();
    for k in 1..=n {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free entries: row r, column c with c > pivots[r], c not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pivots = &pivots;
                    ((pivots[r] + 1)..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut values = vec![0u64; free.len()];
            loop {
                let mut rows = vec![vec![0u64; n]; k];
                for (r, row) in rows.iter_mut().enumerate() {
                    row[pivots[r]] = 1;
                }
                for (&(r, c), &v) in free.iter().zip(&values) {
                    rows[r][c] = v;
                }
                f(&Subspace::from_rows(fp, rows, n));
                if values.is_empty() || !increment_odometer(&mut values, p) {
                    break;
                }
            }
            if !next_combination(&mut pivots, n) {
                break;
            }
        }
    }
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn f3() -> Fp {
        Fp::new(3)
    }

    /// L0 = span(x, t, t1), L1 = span(y); [t1, x] = x + t, [t1, y] = 2y,
    /// [y, y] = x + t; x^[3] = 0, t^[3] = t, t1^[3] = t1.
    pub(crate) fn mixed_example() -> RestrictedLieSuper {
        let fp = Fp::new(3);
        let labels = ["x", "t", "t1", "y"].map(String::from).to_vec();
        let mut l = RestrictedLieSuper::new(fp, 3, 1, labels);
        l.set_bracket(2, 0, &[1, 1, 0, 0]);
        l.set_bracket(2, 3, &[0, 0, 0, 2]);
        l.set_bracket(3, 3, &[1, 1, 0, 0]);
        l.set_pmap(1, &[0, 1, 0, 0]);
        l.set_pmap(2, &[0, 0, 1, 0]);
        l
    }

    #[test]
    fn mixed_example_validates() {
        mixed_example().validate().unwrap();
    }

    #[test]
    fn broken_jacobi_is_caught() {
        let fp = f3();
        let labels = ["a", "b", "c"].map(String::from).to_vec();
        let mut l = RestrictedLieSuper::new(fp, 3, 0, labels);
        // [a,b] = c, [b,c] = a, [a,c] = a: fails Jacobi
        l.set_bracket(0, 1, &[0, 0, 1]);
        l.set_bracket(1, 2, &[1, 0, 0]);
        l.set_bracket(0, 2, &[1, 0, 0]);
        assert!(matches!(l.validate(), Err(LieError::Jacobi { .. })));
    }

    #[test]
    fn broken_restrictedness_is_caught() {
        let fp = f3();
        let labels = ["x", "h"].map(String::from).to_vec();
        let mut l = RestrictedLieSuper::new(fp, 2, 0, labels);
        // [h, x] = x, so (ad x)^3 = 0 but claim x^[3] = h
        l.set_bracket(1, 0, &[1, 0]);
        l.set_pmap(0, &[0, 1]);
        l.set_pmap(1, &[0, 1]);
        assert_eq!(l.validate(), Err(LieError::PmapAdjoint { i: 0 }));
    }

    #[test]
    fn pmap_eval_on_sums() {
        let l = mixed_example();
        // (x + t)^[3] = t: ad(tx+y) terms all vanish on the abelian pair
        let v = vec![1, 1, 0, 0];
        assert_eq!(l.pmap_eval(&v), vec![0, 1, 0, 0]);
        assert_eq!(l.element_class(&v), ElementClass::Neither);
        assert_eq!(l.element_class(&[1, 0, 0, 0]), ElementClass::PNilpotent);
        assert_eq!(l.element_class(&[0, 1, 0, 0]), ElementClass::Toral);
    }

    #[test]
    fn ideals_of_mixed_example() {
        let l = mixed_example();
        let n = l.largest_nilpotent_ideal().unwrap();
        assert_eq!(n.dim(), 2);
        assert!(n.contains(&[1, 0, 0, 0]));
        assert!(n.contains(&[0, 1, 0, 0]));
        let t = l.largest_toral_ideal().unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.contains(&[0, 1, 0, 0]));
    }

    #[test]
    fn criterion_holds_for_mixed_example() {
        let l = mixed_example();
        let out = l.rep_finite_criterion().unwrap();
        assert!(out.holds, "failure: {:?}", out.failure);
        let w = out.witness.unwrap();
        assert_eq!(w.x0, vec![1, 0, 0, 0]);
        assert!(w.clauses.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn criterion_rejects_big_odd_part() {
        let fp = f3();
        let labels = ["x", "y1", "y2"].map(String::from).to_vec();
        let l = RestrictedLieSuper::new(fp, 1, 2, labels);
        let out = l.rep_finite_criterion().unwrap();
        assert!(!out.holds);
        assert_eq!(out.failure, Some(CriterionFailure::OddPartTooBig(2)));
    }

    #[test]
    fn criterion_rejects_two_dim_nil_even_part() {
        // abelian 2-dim even algebra with zero p-map: N = L0 needs
        // T + (k x0)_p = N, but every closure is a line and T = 0
        let fp = f3();
        let labels = ["a", "b"].map(String::from).to_vec();
        let l = RestrictedLieSuper::new(fp, 2, 0, labels);
        let out = l.rep_finite_criterion().unwrap();
        assert!(!out.holds);
        assert_eq!(out.failure, Some(CriterionFailure::NoSuitableX0));
    }

    #[test]
    fn subspace_enumeration_counts() {
        assert_eq!(subspace_lattice_size(3, 2), 6);
        let mut count = 0;
        for_each_subspace(f3(), 2, &mut |_| count += 1);
        assert_eq!(count, 6);
        assert_eq!(subspace_lattice_size(3, 3), 28);
        let mut count = 0;
        for_each_subspace(f3(), 3, &mut |_| count += 1);
        assert_eq!(count, 28);
    }

    #[test]
    fn p_closure_of_nilpotent_line() {
        let l = mixed_example();
        // x^[3] = 0: closure of x is just the line
        let c = l.p_closure(&[vec![1, 0, 0, 0]]);
        assert_eq!(c.dim(), 1);
        // closure of x + t picks up t
        let c = l.p_closure(&[vec![1, 1, 0, 0]]);
        assert_eq!(c.dim(), 2);
    }
}
