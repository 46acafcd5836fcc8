//! Verification of `H^i_p(M, N)_γ ≅ Hom_k(H^{dim S − i}_q(N, M ⊗ ω_S)_{−γ}, k)`
//! by comparing graded dimensions, the classical special cases, and the
//! explicit residue pairing over R.

use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::complexes::homgr;
use crate::error::{Error, Result};
use crate::grading::{Block, Multidegree};
use crate::linalg::Matrix;
use crate::localcohomology::{apply_top_functor, ext_dim, glc_model, glc_model_canonical, local_cohomology, CohomologyTable, InvertedComplex, Truncation};
use crate::polyring::{Complex, FreeModule, Ring};
use crate::resolutions::{canonical_module, finite_pd, is_cohen_macaulay, krull_dimension, tensor_with, tor_vanishes, PdStatus, PresentedModule, QuotientRing};

/// Which hypothesis of the duality theorem holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// M has finite projective dimension
    FirstFinite,
    /// N has finite projective dimension and `Tor_i(M, ω_S) = 0` for `i > 0`
    SecondFinite,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::FirstFinite => write!(f, "M finite pd"),
            Branch::SecondFinite => write!(f, "N finite pd, Tor(M, omega) = 0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub sharp: bool,
    /// `(α, β)` with `Σ α_i deg x_i = Σ β_j deg y_j` when not sharp
    pub witness: Option<(Vec<u64>, Vec<u64>)>,
    pub cohen_macaulay: bool,
    pub dim: usize,
    pub pd_m: PdStatus,
    pub pd_n: PdStatus,
    pub tor_vanishes: Option<bool>,
    pub branch: Option<Branch>,
}

impl HypothesisReport {
    pub fn branch_holds(&self, b: Branch) -> bool {
        match b {
            Branch::FirstFinite => self.pd_m.is_finite(),
            Branch::SecondFinite => self.pd_n.is_finite() && self.tor_vanishes == Some(true),
        }
    }

    pub fn passed(&self) -> bool {
        self.sharp && self.cohen_macaulay && self.branch.is_some()
    }

    /// The first failing hypothesis, in words.
    pub fn violation(&self) -> Option<String> {
        if !self.sharp {
            return Some(match &self.witness {
                Some((a, b)) => format!("grading is not sharp: alpha = {a:?}, beta = {b:?}"),
                None => "grading is not sharp".into(),
            });
        }
        if !self.cohen_macaulay {
            return Some("S is not Cohen-Macaulay".into());
        }
        if self.branch.is_none() {
            return Some("neither M has finite projective dimension nor N has finite projective dimension with Tor(M, omega_S) = 0".into());
        }
        None
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pd = |p: &PdStatus| match p {
            PdStatus::Finite(v) => format!("finite ({v})"),
            PdStatus::ExceededBound { certified_infinite: true } => "infinite".into(),
            PdStatus::ExceededBound { certified_infinite: false } => "exceeded bound".into(),
        };
        writeln!(f, "sharp: {}", self.sharp)?;
        writeln!(f, "cohen-macaulay: {}", self.cohen_macaulay)?;
        writeln!(f, "dim S: {}", self.dim)?;
        writeln!(f, "pd M: {}", pd(&self.pd_m))?;
        writeln!(f, "pd N: {}", pd(&self.pd_n))?;
        if let Some(t) = self.tor_vanishes {
            writeln!(f, "Tor(M, omega) vanishes: {t}")?;
        }
        match self.branch {
            Some(b) => writeln!(f, "branch: {b}"),
            None => writeln!(f, "branch: none"),
        }
    }
}

pub fn check_hypotheses(s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, bound: usize) -> HypothesisReport {
    let g = s.ring().grading();
    let sharp = g.is_sharp();
    let witness = g.sharpness_witness();
    let cohen_macaulay = is_cohen_macaulay(s);
    let dim = krull_dimension(s);
    let pd_m = finite_pd(s, m, bound);
    let pd_n = finite_pd(s, n, bound);
    let tor = (pd_n.is_finite() && cohen_macaulay).then(|| {
        let w = canonical_module(s).expect("Cohen-Macaulay");
        tor_vanishes(s, m, &w, bound.max(dim + 1))
    });
    let branch = if pd_m.is_finite() {
        Some(Branch::FirstFinite)
    } else if tor == Some(true) {
        Some(Branch::SecondFinite)
    } else {
        None
    };
    HypothesisReport {
        sharp,
        witness,
        cohen_macaulay,
        dim,
        pd_m,
        pd_n,
        tor_vanishes: tor,
        branch,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCell {
    pub i: i64,
    pub gamma: Multidegree,
    pub lhs: usize,
    pub rhs: usize,
}

impl DualityCell {
    pub fn matches(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub hypotheses: HypothesisReport,
    pub cells: Vec<DualityCell>,
    /// extra equalities checked by a scenario, as (description, passed)
    pub checks: Vec<(String, bool)>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.matches()) && self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn summary(&self) -> String {
        let total = self.cells.len();
        let good = self.cells.iter().filter(|c| c.matches()).count();
        if self.passed() {
            format!("PASS {good}/{total} cells")
        } else {
            format!("FAIL {good}/{total} cells")
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i\tdegree\tlhs\trhs\tmatch\n");
        for c in &self.cells {
            let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", c.i, c.gamma, c.lhs, c.rhs, c.matches());
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.hypotheses.to_string());
        for c in self.cells.iter().filter(|c| !c.matches()) {
            let _ = writeln!(out, "mismatch: i = {} degree {}: {} vs {}", c.i, c.gamma, c.lhs, c.rhs);
        }
        for (what, ok) in &self.checks {
            let _ = writeln!(out, "{}: {what}", if *ok { "ok" } else { "failed" });
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}

/// Both sides of the duality, as cohomology tables.
#[derive(Clone, Debug)]
pub struct DualitySides {
    pub lhs: CohomologyTable,
    /// indexed by `(dim S − i, −γ)`
    pub rhs: CohomologyTable,
}

fn sides(s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, hyp: &HypothesisReport, branch: Branch, window: &[Multidegree], opts: Truncation) -> Result<DualitySides> {
    let ring = s.ring();
    let dim = hyp.dim as i64;
    let degrees: Vec<i64> = (0..=dim).collect();
    let negated: Vec<Multidegree> = window.iter().map(|g| -g).collect();
    let lhs_model = glc_model(s, m, n, Block::P, (0, dim), opts)?;
    let rhs_model = match branch {
        Branch::FirstFinite => glc_model_canonical(s, n, m, Block::Q, (0, dim), opts)?,
        Branch::SecondFinite => {
            let w = tensor_with(m, &canonical_module(s)?);
            glc_model(s, n, &w, Block::Q, (0, dim), opts)?
        }
    };
    let (lhs, rhs) = rayon::join(
        || lhs_model.table(ring, &degrees, window),
        || rhs_model.table(ring, &degrees, &negated),
    );
    Ok(DualitySides { lhs: lhs?, rhs: rhs? })
}

/// Compares `dim H^i_p(M,N)_γ` with `dim H^{dim S−i}_q(N, M⊗ω_S)_{−γ}` for
/// `0 ≤ i ≤ dim S` and γ in `window`.
pub fn verify_duality(s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, window: &[Multidegree], opts: Truncation) -> Result<DualityReport> {
    verify_duality_via(s, m, n, window, opts, None)
}

/// As [`verify_duality`], computing the right side through the given
/// hypothesis branch instead of the first one that holds.
pub fn verify_duality_via(s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, window: &[Multidegree], opts: Truncation, branch: Option<Branch>) -> Result<DualityReport> {
    let hyp = check_hypotheses(s, m, n, opts.max_resolution);
    if let Some(v) = hyp.violation() {
        return Err(Error::HypothesisViolation(v));
    }
    let branch = match branch {
        Some(b) if !hyp.branch_holds(b) => return Err(Error::HypothesisViolation(format!("branch \"{b}\" does not hold"))),
        Some(b) => b,
        None => hyp.branch.expect("checked"),
    };
    let sides = sides(s, m, n, &hyp, branch, window, opts)?;
    let dim = hyp.dim as i64;
    let mut cells = Vec::new();
    for i in 0..=dim {
        for g in window {
            cells.push(DualityCell {
                i,
                gamma: g.clone(),
                lhs: sides.lhs.get(i, g).unwrap_or(0),
                rhs: sides.rhs.get(dim - i, &-g).unwrap_or(0),
            });
        }
    }
    Ok(DualityReport {
        hypotheses: hyp,
        cells,
        checks: vec![],
    })
}

/// The special cases of the duality theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    /// n = 0: graded local duality
    LocalDuality,
    /// m = 0 and M = S: Serre duality
    Serre,
    /// n = 0: Suzuki duality
    Suzuki,
    /// M = S
    HerzogRahimi,
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "local_duality" => Ok(Scenario::LocalDuality),
            "serre" => Ok(Scenario::Serre),
            "suzuki" => Ok(Scenario::Suzuki),
            "herzog_rahimi" => Ok(Scenario::HerzogRahimi),
            other => Err(Error::WrongShape(format!("unknown scenario {other}"))),
        }
    }
}

fn is_ring_itself(ring: &Ring, m: &PresentedModule) -> bool {
    m.rank() == 1 && m.ambient.shifts[0] == ring.zero_degree() && m.relations.columns().iter().all(|c| c.is_zero())
}

pub fn scenario(name: Scenario, s: &QuotientRing, m: &PresentedModule, n: &PresentedModule, window: &[Multidegree], opts: Truncation) -> Result<DualityReport> {
    let ring = s.ring();
    let g = ring.grading();
    match name {
        Scenario::LocalDuality | Scenario::Suzuki if g.n() != 0 => {
            return Err(Error::WrongShape("this scenario needs an empty y-block".into()))
        }
        Scenario::Serre if g.m() != 0 => return Err(Error::WrongShape("serre needs an empty x-block".into())),
        _ => {}
    }
    if matches!(name, Scenario::LocalDuality | Scenario::HerzogRahimi | Scenario::Serre) && !is_ring_itself(ring, m) {
        return Err(Error::WrongShape("this scenario needs M = S".into()));
    }
    let mut report = verify_duality(s, m, n, window, opts)?;
    let dim = report.hypotheses.dim as i64;
    let degrees: Vec<i64> = (0..=dim).collect();
    match name {
        Scenario::LocalDuality | Scenario::Suzuki => {
            // the q-block is empty, so the right side is Ext^{dim−i}(N, M ⊗ ω)_{−γ}
            let w = tensor_with(m, &canonical_module(s)?);
            let ok = report
                .cells
                .par_iter()
                .map(|c| ext_dim(s, n, &w, dim - c.i, &-&c.gamma).map(|e| e == c.rhs))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            report.checks.push(("right side equals Ext^(dim-i)(N, M (x) omega) computed from a resolution of N".into(), ok));
        }
        Scenario::Serre => {
            let ok = report
                .cells
                .par_iter()
                .map(|c| ext_dim(s, m, n, c.i, &c.gamma).map(|e| e == c.lhs))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            report.checks.push(("left side equals Ext^i(M, N) computed from a resolution of M".into(), ok));
        }
        Scenario::HerzogRahimi => {
            let direct = local_cohomology(s, n, Block::P, &degrees, window)?;
            let ok = report.cells.iter().all(|c| direct.get(c.i, &c.gamma) == Some(c.lhs));
            report.checks.push(("left side equals H^i_p(N) from the R-resolution of N".into(), ok));
        }
    }
    Ok(report)
}

/// The two top-functor complexes paired by the residue: `H^m_p(F)` and
/// `H^n_q(Hom_R(F, ω_R))`.
pub fn pairing_complexes(ring: &Ring, f: &Complex) -> Result<(InvertedComplex, InvertedComplex)> {
    let omega = Complex::concentrated(FreeModule::new(vec![ring.grading().sigma()]), 0);
    let dual = homgr(ring.field(), f, &omega)?;
    Ok((apply_top_functor(ring, f, Block::P), apply_top_functor(ring, &dual, Block::Q)))
}

/// Matrix of the residue pairing between the chains of `H^m_p(F)` in
/// degree `(i, γ)` and those of `H^n_q(Hom(F, ω_R))` in degree `(dim R − i, −γ)`:
/// `x^e ⊗ f_j` pairs with `x^{e'} ⊗ f_j^*` to 1 exactly when `e + e' = (−1, …, −1)`.
pub fn pairing_matrix(ring: &Ring, f: &Complex, i: i64, gamma: &Multidegree) -> Result<Matrix> {
    let (a, b) = pairing_complexes(ring, f)?;
    pairing_between(ring, &a, &b, i, gamma)
}

fn pairing_between(ring: &Ring, a: &InvertedComplex, b: &InvertedComplex, i: i64, gamma: &Multidegree) -> Result<Matrix> {
    let nv = ring.nvars() as i64;
    let ba = a.piece_basis(ring, i, gamma)?;
    let bb = b.piece_basis(ring, nv - i, &-gamma)?;
    let mut m = Matrix::zeros(ba.len(), bb.len());
    for (r, (j, e)) in ba.elements().iter().enumerate() {
        let dual: Vec<i64> = e.iter().map(|x| -1 - x).collect();
        if let Some(c) = bb.position(*j, &dual) {
            m.set(r, c, 1);
        }
    }
    Ok(m)
}

/// Ranks for the pairing induced on cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingCheck {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub rank: usize,
}

impl PairingCheck {
    pub fn is_perfect(&self) -> bool {
        self.lhs_dim == self.rank && self.rhs_dim == self.rank
    }
}

/// Rank of `Z_Aᵀ P Z_B` on the cycle spaces; equals both cohomology
/// dimensions exactly when the induced pairing is perfect.
pub fn induced_pairing(ring: &Ring, f: &Complex, i: i64, gamma: &Multidegree) -> Result<PairingCheck> {
    let k = ring.field();
    let nv = ring.nvars() as i64;
    let (a, b) = pairing_complexes(ring, f)?;
    let p = pairing_between(ring, &a, &b, i, gamma)?;
    let neg = -gamma;
    let za = a.piece_differential(ring, i, gamma)?.kernel(k);
    let zb = b.piece_differential(ring, nv - i, &neg)?.kernel(k);
    let za = Matrix::from_columns(p.rows(), &za);
    let zb = Matrix::from_columns(p.cols(), &zb);
    let rank = za.transpose().mul(&p, k).mul(&zb, k).rank(k);
    let dim_of = |c: &InvertedComplex, i: i64, g: &Multidegree| crate::localcohomology::piece_cohomology(ring, c, i, g);
    Ok(PairingCheck {
        lhs_dim: dim_of(&a, i, gamma)?,
        rhs_dim: dim_of(&b, nv - i, &neg)?,
        rank,
    })
}
