//! Monomial bases of graded pieces and the matrices of module maps on them.
//!
//! A piece basis element is `(basis index, exponent vector)`. In an inverted
//! region the exponents of one variable block are negative; multiplying by a
//! monomial that lifts such an exponent to zero or above gives zero.

use std::collections::HashMap;

use crate::error::Result;
use crate::grading::{enumerate_region, Multidegree, Region};
use crate::linalg::Matrix;
use crate::polyring::{FreeModule, ModuleElement, ModuleMap, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceBasis {
    region: Region,
    elems: Vec<(usize, Vec<i64>)>,
    index: HashMap<(usize, Vec<i64>), usize>,
}

impl PieceBasis {
    pub fn new(ring: &Ring, module: &FreeModule, region: Region, gamma: &Multidegree) -> Result<Self> {
        let mut elems = Vec::new();
        for (j, s) in module.shifts.iter().enumerate() {
            for e in enumerate_region(ring.grading(), region, &(gamma - s))? {
                elems.push((j, e));
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(PieceBasis { region, elems, index })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[(usize, Vec<i64>)] {
        &self.elems
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn position(&self, j: usize, exps: &[i64]) -> Option<usize> {
        self.index.get(&(j, exps.to_vec())).copied()
    }

    /// Coordinates of `v · x^e` for an element `v` of the free module.
    fn image(&self, ring: &Ring, v: &ModuleElement, e: &[i64], out: &mut [u32]) {
        let k = ring.field();
        let mut buf = e.to_vec();
        for (i, p) in v.entries() {
            'terms: for (mono, c) in p.terms() {
                for (slot, (&a, &b)) in buf.iter_mut().zip(e.iter().zip(mono.exponents())) {
                    *slot = a + b as i64;
                }
                if let Some(pos) = self.index.get(&(*i, buf.clone())) {
                    out[*pos] = k.add(out[*pos], *c);
                } else {
                    // truncated by the inverted block, or a degree mismatch
                    debug_assert!(self.truncates(ring, &buf));
                    continue 'terms;
                }
            }
        }
    }

    fn truncates(&self, ring: &Ring, exps: &[i64]) -> bool {
        let g = ring.grading();
        let block = match self.region {
            Region::PNegative => g.block_range(crate::grading::Block::P),
            Region::QNegative => g.block_range(crate::grading::Block::Q),
            Region::NonNegative => return false,
        };
        block.into_iter().any(|v| exps[v] >= 0)
    }

    /// The coordinate vector of `v · x^e`.
    pub fn vector_of(&self, ring: &Ring, v: &ModuleElement, e: &[i64]) -> Vec<u32> {
        let mut out = vec![0; self.len()];
        self.image(ring, v, e, &mut out);
        out
    }
}

/// Matrix of `map` from the piece `src` of its source to the piece `tgt` of its target.
pub fn piece_matrix(ring: &Ring, map: &ModuleMap, src: &PieceBasis, tgt: &PieceBasis) -> Matrix {
    let mut m = Matrix::zeros(tgt.len(), src.len());
    let mut col = vec![0u32; tgt.len()];
    for (c, (j, e)) in src.elements().iter().enumerate() {
        col.iter_mut().for_each(|x| *x = 0);
        tgt.image(ring, map.column(*j), e, &mut col);
        for (r, &v) in col.iter().enumerate() {
            if v != 0 {
                m.set(r, c, v);
            }
        }
    }
    m
}

/// Columns spanning the degree-γ part of the submodule generated by `gens`
/// (homogeneous elements of `module`), inside the non-negative piece `basis`.
pub fn span_in_piece(ring: &Ring, module: &FreeModule, gens: &[ModuleElement], basis: &PieceBasis, gamma: &Multidegree) -> Result<Matrix> {
    let g = ring.grading();
    let mut cols = Vec::new();
    for v in gens {
        let Some(d) = v.degree(g, module) else { continue };
        for e in enumerate_region(g, Region::NonNegative, &(gamma - &d))? {
            let c = basis.vector_of(ring, v, &e);
            if c.iter().any(|&x| x != 0) {
                cols.push(c);
            }
        }
    }
    Ok(Matrix::from_columns(basis.len(), &cols))
}
