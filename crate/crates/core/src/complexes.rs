//! Hom complexes, and R-free replacements of complexes of S-modules.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grading::{Multidegree, Region};
use crate::groebner::GroebnerBasis;
use crate::linalg::Matrix;
use crate::pieces::{piece_matrix, span_in_piece, PieceBasis};
use crate::polyring::{Complex, FreeModule, ModuleElement, ModuleMap, Polynomial, Ring};
use crate::resolutions::{resolution_over_r, QuotientRing, ResolutionReport};
use crate::scalars::Field;

/// Block layout of `Hom(F^a, G^b)` inside the Hom complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBlock {
    pub a: i64,
    pub b: i64,
    pub offset: usize,
}

/// The Hom complex `C^i = ⊕_{b−a=i} Hom(F^a, G^b)`.
///
/// The basis element `φ_{l,j}` of `Hom(F^a, G^b)` sends the j-th basis
/// element of `F^a` to the l-th basis element of `G^b`; it sits at position
/// `j · rank G^b + l` of its block and has degree `deg g_l − deg f_j`.
/// The differential is `Dφ = d_G ∘ φ − (−1)^i φ ∘ d_F` on `C^i`.
pub fn homgr(k: Field, f: &Complex, g: &Complex) -> Result<Complex> {
    Ok(homgr_with_blocks(k, f, g)?.0)
}

pub fn homgr_with_blocks(k: Field, f: &Complex, g: &Complex) -> Result<(Complex, Vec<Vec<HomBlock>>)> {
    if f.is_truncated() && g.is_truncated() {
        return Err(Error::BothUnbounded);
    }
    let lo = g.lo() - f.hi();
    let hi = g.hi() - f.lo();
    let mut layouts: Vec<Vec<HomBlock>> = Vec::new();
    let mut terms = Vec::new();
    for i in lo..=hi {
        let mut blocks = Vec::new();
        let mut shifts = Vec::new();
        for a in f.lo()..=f.hi() {
            let b = a + i;
            if b < g.lo() || b > g.hi() {
                continue;
            }
            blocks.push(HomBlock { a, b, offset: shifts.len() });
            let (fa, gb) = (f.term(a), g.term(b));
            for fj in &fa.shifts {
                for gl in &gb.shifts {
                    shifts.push(gl - fj);
                }
            }
        }
        layouts.push(blocks);
        terms.push(FreeModule::new(shifts));
    }
    let find = |i: i64, a: i64| -> Option<usize> {
        if i < lo || i > hi {
            return None;
        }
        layouts[(i - lo) as usize].iter().find(|bl| bl.a == a).map(|bl| bl.offset)
    };
    let nv_one = |p: &Polynomial| p.clone();
    let mut maps = Vec::new();
    for i in lo..hi {
        let sign_neg_one = i.rem_euclid(2) == 0; // −(−1)^i
        let mut cols: Vec<ModuleElement> = Vec::new();
        for bl in &layouts[(i - lo) as usize] {
            let (fa, gb) = (f.term(bl.a), g.term(bl.b));
            let dg = g.differential(bl.b);
            // rows of d_F^{a−1}: F^{a−1} → F^a
            let df_prev = f.differential(bl.a - 1);
            let mut df_rows: Vec<Vec<(usize, Polynomial)>> = vec![Vec::new(); fa.rank()];
            for (jp, col) in df_prev.columns().iter().enumerate() {
                for (j, p) in col.entries() {
                    df_rows[*j].push((jp, p.clone()));
                }
            }
            let off_g = find(i + 1, bl.a);
            let off_f = find(i + 1, bl.a - 1);
            let gb_next = g.rank(bl.b + 1);
            for (j, df_row) in df_rows.iter().enumerate() {
                for l in 0..gb.rank() {
                    let mut entries: Vec<(usize, Polynomial)> = Vec::new();
                    if let Some(off) = off_g {
                        for (lp, p) in dg.column(l).entries() {
                            entries.push((off + j * gb_next + lp, nv_one(p)));
                        }
                    }
                    if let Some(off) = off_f {
                        for (jp, p) in df_row {
                            let p = if sign_neg_one { p.neg(k) } else { p.clone() };
                            entries.push((off + jp * gb.rank() + l, p));
                        }
                    }
                    let mut acc = ModuleElement::zero();
                    for (idx, p) in entries {
                        acc = acc.add(&ModuleElement::from_entries(vec![(idx, p)]), k);
                    }
                    cols.push(acc);
                }
            }
        }
        let src = terms[(i - lo) as usize].clone();
        let tgt = terms[(i - lo + 1) as usize].clone();
        maps.push(ModuleMap::new_unchecked(src, tgt, cols));
    }
    Ok((Complex::new(lo, terms, maps).with_truncation(f.is_truncated() || g.is_truncated()), layouts))
}

/// An R-free resolution `P_c → … → P_0` of a module X, with X the cokernel of `P_1 → P_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseResolution {
    modules: Vec<FreeModule>,
    /// `maps[k−1] : P_k → P_{k−1}`
    maps: Vec<ModuleMap>,
}

impl BaseResolution {
    /// The R-resolution of S itself.
    pub fn of_ring(s: &QuotientRing) -> Self {
        Self::from_report(&resolution_over_r(s))
    }

    pub fn from_report(res: &ResolutionReport) -> Self {
        let c = res.length();
        BaseResolution {
            modules: (0..=c).map(|q| res.module(q)).collect(),
            maps: (1..=c).map(|q| res.differential(q)).collect(),
        }
    }

    /// `Hom_R(P^S, R(−σ))` reversed: a resolution of ω_S when S is Cohen–Macaulay.
    pub fn canonical(s: &QuotientRing) -> Self {
        let base = Self::of_ring(s);
        let sigma = s.ring().grading().sigma();
        let c = base.length();
        let modules = (0..=c)
            .map(|k| FreeModule::new(base.modules[c - k].shifts.iter().map(|x| &sigma - x).collect()))
            .collect();
        // P^ω_k → P^ω_{k−1} is the dual of P_{c−k+1} → P_{c−k}
        let maps = (1..=c).map(|k| base.maps[c - k].dual(&sigma)).collect();
        BaseResolution { modules, maps }
    }

    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, k: usize) -> &FreeModule {
        &self.modules[k]
    }

    pub fn map(&self, k: usize) -> &ModuleMap {
        &self.maps[k - 1]
    }
}

/// Position of the block `(t, k)` (slot complex degree t, resolution index k) in `G^{t−k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacementBlock {
    pub t: i64,
    pub k: usize,
    pub offset: usize,
    pub len: usize,
}

/// An R-free complex G with a surjective quasi-isomorphism onto a complex of
/// X-modules; `π` is the augmentation on the blocks `(t, 0)`.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub complex: Complex,
    pub blocks: Vec<ReplacementBlock>,
    /// rank of `P_0` (generators of X)
    pub base_rank: usize,
}

impl Replacement {
    pub fn block(&self, t: i64, k: usize) -> Option<&ReplacementBlock> {
        self.blocks.iter().find(|b| b.t == t && b.k == k)
    }

    /// `π^d : G^d → C^d ⊗ P_0`, as a matrix of constants.
    pub fn projection(&self, d: i64, nvars: usize) -> ModuleMap {
        let src = self.complex.term(d);
        let cols = (0..src.rank())
            .map(|idx| match self.block(d, 0) {
                Some(b) if idx >= b.offset && idx < b.offset + b.len => ModuleElement::basis(idx - b.offset, nvars),
                _ => ModuleElement::zero(),
            })
            .collect();
        let tgt = self
            .block(d, 0)
            .map(|b| FreeModule::new(src.shifts[b.offset..b.offset + b.len].to_vec()))
            .unwrap_or_default();
        ModuleMap::new_unchecked(src, tgt, cols)
    }
}

/// Slot module of the block `(t, k)`: `C^t ⊗ P_k`.
fn block_module(c: &Complex, base: &BaseResolution, t: i64, k: usize) -> FreeModule {
    let pk = base.module(k);
    FreeModule::new(
        c.term(t)
            .shifts
            .iter()
            .flat_map(|s| pk.shifts.iter().map(move |u| s + u))
            .collect(),
    )
}

/// R-free replacement of a bounded complex whose term in degree t is
/// `C^t ⊗ X`, where the maps of `c` act on the X-factor by multiplication.
///
/// Blocks `C^t ⊗ P_k` sit in degree `t − k`. The complex is built from the
/// top degree down: each new column `C^t ⊗ P^X` is glued in as the cone of a
/// chain map into the part already built, lifted through Gröbner bases.
pub fn r_free_replacement(ring: &Ring, c: &Complex, base: &BaseResolution) -> Result<Replacement> {
    Builder::new(ring, c, base).run()
}

struct Builder<'a> {
    ring: &'a Ring,
    c: &'a Complex,
    base: &'a BaseResolution,
    dlo: i64,
    blocks: Vec<ReplacementBlock>,
    terms: Vec<FreeModule>,
    internal: HashMap<(i64, usize), Vec<ModuleElement>>,
    psi: HashMap<(i64, usize), Vec<ModuleElement>>,
}

impl<'a> Builder<'a> {
    fn new(ring: &'a Ring, c: &'a Complex, base: &'a BaseResolution) -> Self {
        let cl = base.length() as i64;
        let (tlo, thi) = (c.lo(), c.hi());
        let dlo = tlo - cl;
        let mut blocks = Vec::new();
        let mut terms = Vec::new();
        if !c.terms().is_empty() {
            for d in dlo..=thi {
                let mut shifts = Vec::new();
                for t in d.max(tlo)..=(d + cl).min(thi) {
                    let kk = (t - d) as usize;
                    let m = block_module(c, base, t, kk);
                    blocks.push(ReplacementBlock { t, k: kk, offset: shifts.len(), len: m.rank() });
                    shifts.extend(m.shifts);
                }
                terms.push(FreeModule::new(shifts));
            }
        }
        Builder {
            ring,
            c,
            base,
            dlo,
            blocks,
            terms,
            internal: HashMap::new(),
            psi: HashMap::new(),
        }
    }

    fn term_rank(&self, d: i64) -> usize {
        if d < self.dlo || d >= self.dlo + self.terms.len() as i64 {
            0
        } else {
            self.terms[(d - self.dlo) as usize].rank()
        }
    }

    fn find(&self, t: i64, k: usize) -> Option<&ReplacementBlock> {
        self.blocks.iter().find(|b| b.t == t && b.k == k)
    }

    /// Positions in `G^d` of the blocks with slot degree above `t`, with their columns of D.
    fn upper(&self, d: i64, t: i64) -> (Vec<usize>, Vec<ModuleElement>) {
        let k = self.ring.field();
        let mut idx = Vec::new();
        let mut cols = Vec::new();
        for b in self.blocks.iter().filter(|b| b.t > t && b.t - b.k as i64 == d) {
            let (int, psi) = (&self.internal[&(b.t, b.k)], &self.psi[&(b.t, b.k)]);
            for i in 0..b.len {
                idx.push(b.offset + i);
                cols.push(int[i].add(&psi[i], k));
            }
        }
        (idx, cols)
    }

    fn combine(&self, positions: &[usize], coeffs: &[Polynomial]) -> ModuleElement {
        ModuleElement::from_entries(
            positions
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&p, c)| (p, c.clone()))
                .collect(),
        )
    }

    fn run(mut self) -> Result<Replacement> {
        let k = self.ring.field();
        let base_rank = self.base.module(0).rank();
        if self.c.terms().is_empty() {
            return Ok(Replacement {
                complex: Complex::empty(),
                blocks: vec![],
                base_rank,
            });
        }
        for t in (self.c.lo()..=self.c.hi()).rev() {
            for kk in 0..=self.base.length() {
                let Some(bl) = self.find(t, kk).cloned() else { continue };
                let pk = self.base.module(kk).rank();
                let internal: Vec<ModuleElement> = if kk == 0 {
                    vec![ModuleElement::zero(); bl.len]
                } else {
                    let below = self.find(t, kk - 1).expect("block below").clone();
                    let pk1 = self.base.module(kk - 1).rank();
                    (0..bl.len)
                        .map(|idx| {
                            let (l, u) = (idx / pk, idx % pk);
                            self.base.map(kk).column(u).reindex(|u2| Some(below.offset + l * pk1 + u2))
                        })
                        .collect()
                };
                let psi = if kk == 0 {
                    self.psi_zero(t, &bl)?
                } else {
                    let d = t - kk as i64;
                    let below = self.find(t, kk - 1).expect("block below").clone();
                    let (positions, upper_cols) = self.upper(d + 1, t);
                    let gb = (!upper_cols.is_empty())
                        .then(|| GroebnerBasis::new(self.ring, self.term_rank(d + 2), &upper_cols, &[]));
                    let prev_psi = &self.psi[&(t, kk - 1)];
                    let mut out = Vec::with_capacity(bl.len);
                    for col in &internal {
                        let mut rhs = ModuleElement::zero();
                        for (pos, p) in col.entries() {
                            rhs = rhs.add(&prev_psi[pos - below.offset].scale(p, k), k);
                        }
                        if rhs.is_zero() {
                            out.push(ModuleElement::zero());
                            continue;
                        }
                        let coeffs = gb.as_ref().ok_or(Error::NotInSubmodule)?.lift(&rhs.neg(k))?;
                        out.push(self.combine(&positions, &coeffs));
                    }
                    out
                };
                self.internal.insert((t, kk), internal);
                self.psi.insert((t, kk), psi);
            }
        }
        let mut maps = Vec::new();
        let dhi = self.dlo + self.terms.len() as i64 - 1;
        for d in self.dlo..dhi {
            let src = self.terms[(d - self.dlo) as usize].clone();
            let tgt = self.terms[(d - self.dlo + 1) as usize].clone();
            let mut dcols = vec![ModuleElement::zero(); src.rank()];
            for b in self.blocks.iter().filter(|b| b.t - b.k as i64 == d) {
                let (int, psi) = (&self.internal[&(b.t, b.k)], &self.psi[&(b.t, b.k)]);
                for i in 0..b.len {
                    dcols[b.offset + i] = int[i].add(&psi[i], k);
                }
            }
            maps.push(ModuleMap::new_unchecked(src, tgt, dcols));
        }
        Ok(Replacement {
            complex: Complex::new(self.dlo, self.terms, maps),
            blocks: self.blocks,
            base_rank,
        })
    }

    /// ψ_0: lift `δ^t ⊗ 1` to cycles of `G^{t+1}` above t.
    fn psi_zero(&self, t: i64, bl: &ReplacementBlock) -> Result<Vec<ModuleElement>> {
        let k = self.ring.field();
        let nv = self.ring.nvars();
        let p0 = self.base.module(0).rank();
        let Some(next) = self.find(t + 1, 0).cloned() else {
            return Ok(vec![ModuleElement::zero(); bl.len]);
        };
        let delta = self.c.differential(t);
        let d1 = t + 1;
        let (positions, upper_cols) = self.upper(d1, t);
        let col_at = |pos: usize| -> &ModuleElement {
            let i = positions.iter().position(|&p| p == pos).expect("position above t");
            &upper_cols[i]
        };
        // generators of ker π in G^{t+1}: P_0-relations on the block (t+1, 0), and the other blocks
        let mut kernel_gens: Vec<ModuleElement> = Vec::new();
        if self.base.length() >= 1 {
            let rel = self.base.map(1);
            let slots = next.len / p0.max(1);
            for l in 0..slots {
                for col in rel.columns() {
                    kernel_gens.push(col.reindex(|u| Some(next.offset + l * p0 + u)));
                }
            }
        }
        for &pos in &positions {
            if pos < next.offset || pos >= next.offset + next.len {
                kernel_gens.push(ModuleElement::basis(pos, nv));
            }
        }
        let apply = |v: &ModuleElement| -> ModuleElement {
            let mut acc = ModuleElement::zero();
            for (pos, p) in v.entries() {
                acc = acc.add(&col_at(*pos).scale(p, k), k);
            }
            acc
        };
        let images: Vec<ModuleElement> = kernel_gens.iter().map(&apply).collect();
        let mut gb: Option<GroebnerBasis> = None;
        let mut out = Vec::with_capacity(bl.len);
        for idx in 0..bl.len {
            let (l, u) = (idx / p0, idx % p0);
            let g = delta.column(l).reindex(|l2| Some(next.offset + l2 * p0 + u));
            let dg = apply(&g);
            if dg.is_zero() {
                out.push(g);
                continue;
            }
            if gb.is_none() {
                gb = Some(GroebnerBasis::new(self.ring, self.term_rank(d1 + 1), &images, &[]));
            }
            let coeffs = gb.as_ref().unwrap().lift(&dg)?;
            let mut corr = ModuleElement::zero();
            for (gen, cf) in kernel_gens.iter().zip(&coeffs) {
                if !cf.is_zero() {
                    corr = corr.add(&gen.scale(cf, k), k);
                }
            }
            out.push(g.sub(&corr, k));
        }
        Ok(out)
    }
}

/// Dimension of `H^i` of a complex of free modules modulo a subcomplex,
/// in degree γ. `relations[t]` generates the submodule in degree t; the
/// relations of `s` are added on every basis element. Requires finite
/// graded pieces of R.
pub fn quotient_cohomology_dim(
    s: &QuotientRing,
    c: &Complex,
    relations: &dyn Fn(i64) -> Vec<ModuleElement>,
    i: i64,
    gamma: &Multidegree,
) -> Result<usize> {
    let ring = s.ring();
    let k = ring.field();
    let basis = |t: i64| PieceBasis::new(ring, &c.term(t), Region::NonNegative, gamma);
    let span = |t: i64, b: &PieceBasis| -> Result<Matrix> {
        let module = c.term(t);
        let mut gens = relations(t);
        for l in 0..module.rank() {
            for f in s.gb() {
                gens.push(ModuleElement::from_entries(vec![(l, f.clone())]));
            }
        }
        span_in_piece(ring, &module, &gens, b, gamma)
    };
    let (bp, bi, bn) = (basis(i - 1)?, basis(i)?, basis(i + 1)?);
    if bi.is_empty() {
        return Ok(0);
    }
    let d_in = piece_matrix(ring, &c.differential(i - 1), &bp, &bi);
    let d_out = piece_matrix(ring, &c.differential(i), &bi, &bn);
    let w_next = span(i + 1, &bn)?;
    let w_here = span(i, &bi)?;
    let z = bi.len() - (d_out.hstack(&w_next).rank(k) - w_next.rank(k));
    let b = w_here.hstack(&d_in).rank(k);
    Ok(z - b)
}

/// `C ⊗ P` for a free module P: each map `A` becomes `A ⊗ 1_P`.
pub fn tensor_with_free(c: &Complex, p: &FreeModule) -> Complex {
    let pr = p.rank();
    let term = |f: &FreeModule| {
        FreeModule::new(f.shifts.iter().flat_map(|s| p.shifts.iter().map(move |u| s + u)).collect())
    };
    let terms: Vec<FreeModule> = c.terms().iter().map(term).collect();
    let maps = c
        .maps()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut cols = Vec::with_capacity(d.source.rank() * pr);
            for col in d.columns() {
                for u in 0..pr {
                    cols.push(col.reindex(|l| Some(l * pr + u)));
                }
            }
            ModuleMap::new_unchecked(terms[i].clone(), terms[i + 1].clone(), cols)
        })
        .collect();
    Complex::new(c.lo(), terms, maps).with_truncation(c.is_truncated())
}
