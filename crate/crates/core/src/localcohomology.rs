//! Local cohomology of R-free complexes through the monomial model of
//! `H^m_p(R)`, and generalized local cohomology `H^i_p(M, N)`.
//!
//! For an R-free complex G, the Čech double complex has a single nonzero
//! row: `H^j_p(R(−s)) = 0` for `j ≠ m` (m the number of variables in the
//! block). So `H^i_p(G) = H^{i−m}(H^m_p(G))`, and `H^m_p(R(−s))_γ` has the
//! monomials of degree `γ − s` with negative exponents on the block as a
//! basis.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::complexes::{homgr, quotient_cohomology_dim, r_free_replacement, BaseResolution};
use crate::error::{Error, Result};
use crate::grading::{Block, Multidegree, Region};
use crate::linalg::Matrix;
use crate::pieces::{piece_matrix, PieceBasis};
use crate::polyring::{Complex, FreeModule, ModuleElement, Ring};
use crate::resolutions::{finite_pd, free_resolution, krull_dimension, PdStatus, PresentedModule, QuotientRing};

/// `H^m_block(G)`: the complex G read through the monomial model, with
/// cohomological degrees raised by m.
#[derive(Clone, Debug)]
pub struct InvertedComplex {
    pub complex: Complex,
    pub region: Region,
    pub offset: i64,
}

impl InvertedComplex {
    pub fn lo(&self) -> i64 {
        self.complex.lo() + self.offset
    }

    pub fn hi(&self) -> i64 {
        self.complex.hi() + self.offset
    }

    pub fn piece_basis(&self, ring: &Ring, i: i64, gamma: &Multidegree) -> Result<PieceBasis> {
        PieceBasis::new(ring, &self.complex.term(i - self.offset), self.region, gamma)
    }

    /// The differential `H^i → H^{i+1}` on degree-γ pieces.
    pub fn piece_differential(&self, ring: &Ring, i: i64, gamma: &Multidegree) -> Result<Matrix> {
        let src = self.piece_basis(ring, i, gamma)?;
        let tgt = self.piece_basis(ring, i + 1, gamma)?;
        Ok(piece_matrix(ring, &self.complex.differential(i - self.offset), &src, &tgt))
    }
}

/// Replaces each free module F by `F ⊗ H^m_block(R)`; an empty block gives the identity functor.
pub fn apply_top_functor(ring: &Ring, c: &Complex, block: Block) -> InvertedComplex {
    let width = ring.grading().block_range(block).len() as i64;
    let region = if width == 0 { Region::NonNegative } else { Region::inverting(block) };
    InvertedComplex {
        complex: c.clone(),
        region,
        offset: width,
    }
}

/// `dim ker d^i_γ − rank d^{i−1}_γ`.
pub fn piece_cohomology(ring: &Ring, c: &InvertedComplex, i: i64, gamma: &Multidegree) -> Result<usize> {
    if i < c.lo() || i > c.hi() {
        return Ok(0);
    }
    let k = ring.field();
    let b = c.piece_basis(ring, i, gamma)?;
    if b.is_empty() {
        return Ok(0);
    }
    let out = c.piece_differential(ring, i, gamma)?.rank(k);
    let inc = c.piece_differential(ring, i - 1, gamma)?.rank(k);
    Ok(b.len() - out - inc)
}

/// Graded dimensions `(i, γ) ↦ dim H^i(…)_γ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    pub entries: BTreeMap<(i64, Multidegree), usize>,
}

impl CohomologyTable {
    pub fn get(&self, i: i64, gamma: &Multidegree) -> Option<usize> {
        self.entries.get(&(i, gamma.clone())).copied()
    }

    pub fn insert(&mut self, i: i64, gamma: Multidegree, dim: usize) {
        self.entries.insert((i, gamma), dim);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i\tdegree\tdim\n");
        for ((i, g), d) in &self.entries {
            let _ = writeln!(out, "{i}\t{g}\t{d}");
        }
        out
    }

    /// One line per entry, nonzero entries only.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for ((i, g), d) in &self.entries {
            if *d > 0 {
                let _ = writeln!(out, "H^{i} in degree {g}: {d}");
            }
        }
        if out.is_empty() {
            out.push_str("all entries vanish\n");
        }
        out
    }
}

/// Cohomology of an inverted complex over a set of cells.
pub fn cohomology_table(ring: &Ring, c: &InvertedComplex, degrees: &[i64], window: &[Multidegree]) -> Result<CohomologyTable> {
    let cells: Vec<(i64, Multidegree)> = window
        .iter()
        .flat_map(|g| degrees.iter().map(move |&i| (i, g.clone())))
        .collect();
    let dims: Vec<Result<usize>> = cells
        .par_iter()
        .map(|(i, g)| piece_cohomology(ring, c, *i, g))
        .collect();
    let mut table = CohomologyTable::default();
    for ((i, g), d) in cells.into_iter().zip(dims) {
        table.insert(i, g, d?);
    }
    Ok(table)
}

/// Settings shared by the generalized local cohomology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// bound used when deciding finite projective dimension
    pub max_resolution: usize,
    /// resolution steps beyond the sufficient depth
    pub extra_depth: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            max_resolution: 8,
            extra_depth: 0,
        }
    }
}

/// Which module of the pair was resolved completely.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteSide {
    First,
    Second,
}

/// The R-free complex whose top-functor cohomology is `H^•_block(M, N)`.
#[derive(Clone, Debug)]
pub struct GlcModel {
    pub replacement: Complex,
    pub finite_side: FiniteSide,
    pub truncation_depth: usize,
    pub block: Block,
}

impl GlcModel {
    pub fn top(&self, ring: &Ring) -> InvertedComplex {
        apply_top_functor(ring, &self.replacement, self.block)
    }

    pub fn table(&self, ring: &Ring, degrees: &[i64], window: &[Multidegree]) -> Result<CohomologyTable> {
        cohomology_table(ring, &self.top(ring), degrees, window)
    }
}

/// Resolution depth sufficient for cohomological degrees `i_lo..=i_hi`.
pub fn truncation_depth(finite_pd: usize, dim: usize, i_lo: i64, i_hi: i64, extra: usize) -> usize {
    let i_hi = i_hi.max(0) as usize;
    finite_pd + i_hi.max(dim) + 1 + (-i_lo).max(0) as usize + extra
}

fn pd_or_violation(status: PdStatus) -> Option<usize> {
    status.value()
}

/// Resolutions of `m` and `n` with one of them complete: the first with finite
/// projective dimension is resolved completely, the other is cut off deep enough.
fn paired_resolutions(
    s: &QuotientRing,
    m: &PresentedModule,
    n: &PresentedModule,
    degrees: (i64, i64),
    opts: Truncation,
) -> Result<(Complex, Complex, FiniteSide, usize)> {
    let dim = krull_dimension(s);
    let pm = pd_or_violation(finite_pd(s, m, opts.max_resolution));
    let (side, pd) = match pm {
        Some(pd) => (FiniteSide::First, pd),
        None => match pd_or_violation(finite_pd(s, n, opts.max_resolution)) {
            Some(pd) => (FiniteSide::Second, pd),
            None => {
                return Err(Error::HypothesisViolation(format!(
                    "neither module has a free resolution of length at most {}",
                    opts.max_resolution
                )))
            }
        },
    };
    let depth = truncation_depth(pd, dim, degrees.0, degrees.1, opts.extra_depth);
    let (fm, fn_) = match side {
        FiniteSide::First => (
            free_resolution(s, m, pd).complex,
            free_resolution(s, n, depth).complex,
        ),
        FiniteSide::Second => (
            free_resolution(s, m, depth).complex,
            free_resolution(s, n, pd).complex,
        ),
    };
    Ok((fm, fn_, side, depth))
}

/// The model for `H^i_block(M, N)`, `i` in `degrees`: `Homgr_S(F^M, F^N)`
/// made R-free.
pub fn glc_model(s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, block: Block, degrees: (i64, i64), opts: Truncation) -> Result<GlcModel> {
    let ring = s.ring();
    let (fm, fn_, finite_side, depth) = paired_resolutions(s, m, n, degrees, opts)?;
    let hom = homgr(ring.field(), &fm, &fn_)?;
    let replacement = if s.is_polynomial_ring() {
        hom
    } else {
        r_free_replacement(ring, &hom, &BaseResolution::of_ring(s))?.complex
    };
    Ok(GlcModel {
        replacement,
        finite_side,
        truncation_depth: depth,
        block,
    })
}

/// The model for `H^i_block(N, M ⊗ ω_S)` when M has finite projective
/// dimension: `Homgr_S(F^N, F^M ⊗ ω_S)`, a complex of sums of ω_S made R-free
/// through the R-resolution of ω_S.
pub fn glc_model_canonical(s: &QuotientRing, n: &PresentedModule, m: &PresentedModule, block: Block, degrees: (i64, i64), opts: Truncation) -> Result<GlcModel> {
    let ring = s.ring();
    let dim = krull_dimension(s);
    let Some(pm) = finite_pd(s, m, opts.max_resolution).value() else {
        return Err(Error::HypothesisViolation(
            "the canonical route needs a module of finite projective dimension".into(),
        ));
    };
    let (depth, fn_, side) = match finite_pd(s, n, opts.max_resolution).value() {
        Some(pn) => (pn, free_resolution(s, n, pn).complex, FiniteSide::First),
        None => {
            let depth = truncation_depth(pm, dim, degrees.0, degrees.1, opts.extra_depth);
            (depth, free_resolution(s, n, depth).complex, FiniteSide::Second)
        }
    };
    let fm = free_resolution(s, m, pm).complex;
    let slots = homgr(ring.field(), &fn_, &fm)?;
    let base = if s.is_polynomial_ring() {
        let sigma = ring.grading().sigma();
        return Ok(GlcModel {
            replacement: slots.twist(&sigma),
            finite_side: side,
            truncation_depth: depth,
            block,
        });
    } else {
        BaseResolution::canonical(s)
    };
    Ok(GlcModel {
        replacement: r_free_replacement(ring, &slots, &base)?.complex,
        finite_side: side,
        truncation_depth: depth,
        block,
    })
}

/// Dimensions of `H^i_block(M, N)_γ` for `i ∈ degrees` and γ in `window`.
pub fn generalized_local_cohomology(
    s: &QuotientRing,
    m: &PresentedModule,
    n: &PresentedModule,
    block: Block,
    degrees: &[i64],
    window: &[Multidegree],
    opts: Truncation,
) -> Result<CohomologyTable> {
    let lo = degrees.iter().copied().min().unwrap_or(0);
    let hi = degrees.iter().copied().max().unwrap_or(0);
    glc_model(s, m, n, block, (lo, hi), opts)?.table(s.ring(), degrees, window)
}

/// `H^i_block(N)` from the R-resolution of N alone.
pub fn local_cohomology(s: &QuotientRing, n: &PresentedModule, block: Block, degrees: &[i64], window: &[Multidegree]) -> Result<CohomologyTable> {
    let ring = s.ring();
    let res = free_resolution(&s.ambient(), &n.over_r(s), ring.nvars() + 1);
    if !res.complete {
        return Err(Error::HypothesisViolation("the R-resolution did not terminate".into()));
    }
    cohomology_table(ring, &apply_top_functor(ring, &res.complex, block), degrees, window)
}

/// `dim Ext^i_S(M, N)_γ` from an S-resolution of M and a presentation of N.
pub fn ext_dim(s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, i: i64, gamma: &Multidegree) -> Result<usize> {
    if i < 0 {
        return Ok(0);
    }
    let res = free_resolution(s, m, i as usize + 1);
    ext_dim_from_resolution(s, &res.complex, n, i, gamma)
}

/// `Ext^i` from a given resolution (cohomological indexing, `F_q` in degree −q).
pub fn ext_dim_from_resolution(s: &QuotientRing, f: &Complex, n: &PresentedModule, i: i64, gamma: &Multidegree) -> Result<usize> {
    let ring = s.ring();
    let target = Complex::concentrated(n.ambient.clone(), 0);
    let hom = homgr(ring.field(), f, &target)?;
    let g0 = n.rank();
    let relations = |t: i64| -> Vec<ModuleElement> {
        let fr = f.rank(-t);
        let mut out = Vec::new();
        for j in 0..fr {
            for col in n.relations.columns() {
                out.push(col.reindex(|l| Some(j * g0 + l)));
            }
        }
        out
    };
    quotient_cohomology_dim(s, &hom, &relations, i, gamma)
}

/// Result of the Ext-limit oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleValue {
    Stable(usize),
    /// the dimensions for t = 1..t_max; the last two differ
    Unstabilized(Vec<usize>),
}

/// `dim Ext^i_S(M / I^t M, N)_γ` for `t = 1..t_max`, I the ideal of the block.
pub fn ext_limit_sequence(s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, block: Block, i: i64, gamma: &Multidegree, t_max: u32) -> Result<Vec<usize>> {
    (1..=t_max)
        .map(|t| ext_dim(s, &m.modulo_block_power(s.ring(), block, t), n, i, gamma))
        .collect()
}

pub fn ext_limit_oracle(s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, block: Block, i: i64, gamma: &Multidegree, t_max: u32) -> Result<OracleValue> {
    let seq = ext_limit_sequence(s, m, n, block, i, gamma, t_max)?;
    Ok(match seq.as_slice() {
        [.., a, b] if a == b => OracleValue::Stable(*b),
        _ => OracleValue::Unstabilized(seq),
    })
}

/// A free module `R(−s)` as a one-term complex, for single-module checks.
pub fn single_module(shifts: Vec<Multidegree>) -> Complex {
    Complex::concentrated(FreeModule::new(shifts), 0)
}
