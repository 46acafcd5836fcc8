//! Quotient rings S = R/J, presented modules, minimal graded free
//! resolutions, and the ring invariants built from them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grading::{Block, Multidegree};
use crate::groebner::{ideal_basis, reduce_polynomial, GroebnerBasis};
use crate::polyring::{Complex, FreeModule, ModuleElement, ModuleMap, Monomial, Polynomial, Ring};

/// S = R/J together with a reduced Gröbner basis of J.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    ring: Ring,
    relations: Vec<Polynomial>,
    gb: Vec<Polynomial>,
}

impl QuotientRing {
    pub fn new(ring: Ring, relations: Vec<Polynomial>) -> Result<Self> {
        let relations: Vec<Polynomial> = relations.into_iter().filter(|f| !f.is_zero()).collect();
        for f in &relations {
            if f.degree(ring.grading()).is_none() {
                return Err(Error::WrongShape(format!(
                    "relation {} is not homogeneous",
                    f.display(&ring)
                )));
            }
        }
        let gb = ideal_basis(&ring, &relations);
        if gb.iter().any(|f| f.is_constant()) {
            return Err(Error::WrongShape("the relations generate the unit ideal".into()));
        }
        Ok(QuotientRing { ring, relations, gb })
    }

    pub fn polynomial_ring(ring: Ring) -> Self {
        QuotientRing {
            ring,
            relations: vec![],
            gb: vec![],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Reduced Gröbner basis of J.
    pub fn gb(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        reduce_polynomial(&self.ring, f, &self.gb)
    }

    /// The polynomial ring R as a quotient by the zero ideal.
    pub fn ambient(&self) -> QuotientRing {
        QuotientRing::polynomial_ring(self.ring.clone())
    }

    /// S as a cyclic R-module.
    pub fn as_r_module(&self) -> PresentedModule {
        PresentedModule::cyclic(&self.ring, &self.relations)
    }
}

/// The cokernel of `relations: source → ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    pub ambient: FreeModule,
    pub relations: ModuleMap,
}

impl PresentedModule {
    pub fn new(ring: &Ring, ambient: FreeModule, relation_shifts: Vec<Multidegree>, relations: Vec<ModuleElement>) -> Result<Self> {
        let relations = ModuleMap::new(ring.grading(), FreeModule::new(relation_shifts), ambient.clone(), relations)?;
        Ok(PresentedModule { ambient, relations })
    }

    /// Relations given by elements alone; their degrees are read off the entries.
    pub fn from_elements(ring: &Ring, ambient: FreeModule, relations: Vec<ModuleElement>) -> Result<Self> {
        let relations: Vec<ModuleElement> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let mut shifts = Vec::with_capacity(relations.len());
        for (j, r) in relations.iter().enumerate() {
            match r.degree(ring.grading(), &ambient) {
                Some(d) => shifts.push(d),
                None => {
                    return Err(Error::WrongShape(format!("relation {} is not homogeneous", j + 1)));
                }
            }
        }
        Self::new(ring, ambient, shifts, relations)
    }

    pub fn free(shifts: Vec<Multidegree>) -> Self {
        let ambient = FreeModule::new(shifts);
        PresentedModule {
            relations: ModuleMap::zero(FreeModule::zero(), ambient.clone()),
            ambient,
        }
    }

    /// `R/(gens)` on a generator of degree zero.
    pub fn cyclic(ring: &Ring, gens: &[Polynomial]) -> Self {
        let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
        let ambient = FreeModule::new(vec![ring.zero_degree()]);
        let shifts = gens
            .iter()
            .map(|g| g.degree(ring.grading()).expect("homogeneous generator"))
            .collect();
        let cols = gens
            .iter()
            .map(|g| ModuleElement::from_entries(vec![(0, (*g).clone())]))
            .collect();
        PresentedModule {
            relations: ModuleMap::new_unchecked(FreeModule::new(shifts), ambient.clone(), cols),
            ambient,
        }
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    /// `M(−δ)`: all generator degrees raised by δ.
    pub fn twisted(&self, delta: &Multidegree) -> PresentedModule {
        PresentedModule {
            ambient: self.ambient.twisted(delta),
            relations: self.relations.twisted(delta),
        }
    }

    fn with_extra_relations(&self, extra: Vec<(Multidegree, ModuleElement)>) -> PresentedModule {
        let mut shifts = self.relations.source.shifts.clone();
        let mut cols = self.relations.columns().to_vec();
        for (s, c) in extra {
            shifts.push(s);
            cols.push(c);
        }
        PresentedModule {
            ambient: self.ambient.clone(),
            relations: ModuleMap::new_unchecked(FreeModule::new(shifts), self.ambient.clone(), cols),
        }
    }

    /// The same module regarded over R: the relations of S are added on every generator.
    pub fn over_r(&self, s: &QuotientRing) -> PresentedModule {
        let g = s.ring().grading();
        let mut extra = Vec::new();
        for (l, shift) in self.ambient.shifts.iter().enumerate() {
            for f in s.relations() {
                let d = f.degree(g).expect("homogeneous relation");
                extra.push((&d + shift, ModuleElement::from_entries(vec![(l, f.clone())])));
            }
        }
        self.with_extra_relations(extra)
    }

    /// `M / I^t M` where I is generated by the variables of `block`.
    pub fn modulo_block_power(&self, ring: &Ring, block: Block, t: u32) -> PresentedModule {
        let g = ring.grading();
        let range = g.block_range(block);
        let mut monos = vec![Monomial::one(ring.nvars())];
        for _ in 0..t {
            let mut next = Vec::new();
            for m in &monos {
                let last = range
                    .clone()
                    .rfind(|&v| m.exponents()[v] > 0)
                    .unwrap_or(range.start);
                for v in last..range.end {
                    next.push(m.mul(&Monomial::var(v, ring.nvars())));
                }
            }
            monos = next;
        }
        if range.is_empty() && t > 0 {
            monos.clear();
        }
        let mut extra = Vec::new();
        for (l, shift) in self.ambient.shifts.iter().enumerate() {
            for m in &monos {
                extra.push((
                    &m.degree(g) + shift,
                    ModuleElement::from_entries(vec![(l, Polynomial::monomial(m.clone(), 1))]),
                ));
            }
        }
        self.with_extra_relations(extra)
    }
}

/// A minimal graded free resolution, possibly cut off at a length bound.
///
/// The complex is cohomologically indexed: `F_q` sits in degree `−q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub complex: Complex,
    pub minimal: bool,
    pub complete: bool,
    pub betti: BTreeMap<(usize, Multidegree), usize>,
}

impl ResolutionReport {
    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        (0..=self.complex.terms().len())
            .rev()
            .find(|&q| self.rank(q) > 0)
            .unwrap_or(0)
    }

    pub fn module(&self, q: usize) -> FreeModule {
        self.complex.term(-(q as i64))
    }

    pub fn rank(&self, q: usize) -> usize {
        self.complex.rank(-(q as i64))
    }

    /// `d_q : F_q → F_{q−1}`.
    pub fn differential(&self, q: usize) -> ModuleMap {
        self.complex.differential(-(q as i64))
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..self.complex.terms().len()).map(|q| self.rank(q)).collect()
    }

    /// Rows: homological degree; columns: the degrees that occur.
    pub fn betti_tsv(&self) -> String {
        let degrees: std::collections::BTreeSet<&Multidegree> = self.betti.keys().map(|(_, d)| d).collect();
        let mut out = String::from("q");
        for d in &degrees {
            let _ = write!(out, "\t{d}");
        }
        out.push('\n');
        for q in 0..self.complex.terms().len() {
            let _ = write!(out, "{q}");
            for d in &degrees {
                let _ = write!(out, "\t{}", self.betti.get(&(q, (*d).clone())).copied().unwrap_or(0));
            }
            out.push('\n');
        }
        out
    }
}

struct Stage {
    shifts: Vec<Multidegree>,
    /// images of the basis elements in the previous module
    cols: Vec<ModuleElement>,
}

fn constant_pivot(cols: &[ModuleElement]) -> Option<(usize, usize, u32)> {
    for (j, c) in cols.iter().enumerate() {
        for (i, p) in c.entries() {
            if p.is_constant() {
                return Some((*i, j, p.constant_term()));
            }
        }
    }
    None
}

/// Removes unit entries of `next.cols` by dropping the matching basis
/// element of `cur` and column of `next`.
fn eliminate_constants(s: &QuotientRing, cur: &mut Stage, next: &mut Stage) {
    let k = s.ring().field();
    while let Some((i, j, u)) = constant_pivot(&next.cols) {
        let pivot = next.cols[j].clone();
        let inv = k.inv_nz(u);
        for (l, col) in next.cols.iter_mut().enumerate() {
            if l == j {
                continue;
            }
            if let Some(a) = col.get(i).cloned() {
                let factor = a.scale(k.neg(inv), k);
                let mut updated = col.add(&pivot.scale(&factor, k), k);
                if !s.is_polynomial_ring() {
                    updated = ModuleElement::from_entries(
                        updated.entries().iter().map(|(r, p)| (*r, s.reduce(p))).collect(),
                    );
                }
                *col = updated;
            }
        }
        next.cols.remove(j);
        next.shifts.remove(j);
        cur.shifts.remove(i);
        cur.cols.remove(i);
        for col in next.cols.iter_mut() {
            *col = col.reindex(|r| match r.cmp(&i) {
                std::cmp::Ordering::Less => Some(r),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(r - 1),
            });
        }
        let keep: Vec<bool> = next.cols.iter().map(|c| !c.is_zero()).collect();
        let mut it = keep.iter();
        next.shifts.retain(|_| *it.next().unwrap());
        next.cols.retain(|c| !c.is_zero());
    }
}

fn syzygy_stage(s: &QuotientRing, cur: &Stage) -> Stage {
    let ring = s.ring();
    let module = FreeModule::new(cur.shifts.clone());
    let prev_rank = cur.cols.iter().flat_map(|c| c.entries().iter().map(|(i, _)| i + 1)).max().unwrap_or(0);
    if cur.cols.is_empty() {
        return Stage { shifts: vec![], cols: vec![] };
    }
    let gb = GroebnerBasis::new(ring, prev_rank, &cur.cols, s.gb());
    let cols = gb.syzygies();
    let shifts = cols
        .iter()
        .map(|c| c.degree(ring.grading(), &module).expect("syzygies are homogeneous"))
        .collect();
    Stage { shifts, cols }
}

/// Minimal graded free resolution of `m` over `s` through homological degree `max_length`.
pub fn free_resolution(s: &QuotientRing, m: &PresentedModule, max_length: usize) -> ResolutionReport {
    let mut stages: Vec<Stage> = vec![Stage {
        shifts: m.ambient.shifts.clone(),
        cols: vec![],
    }];
    let mut first = Stage {
        shifts: m.relations.source.shifts.clone(),
        cols: m.relations.columns().to_vec(),
    };
    if !s.is_polynomial_ring() {
        for c in first.cols.iter_mut() {
            *c = ModuleElement::from_entries(c.entries().iter().map(|(r, p)| (*r, s.reduce(p))).collect());
        }
    }
    let keep: Vec<bool> = first.cols.iter().map(|c| !c.is_zero()).collect();
    let mut it = keep.iter();
    first.shifts.retain(|_| *it.next().unwrap());
    first.cols.retain(|c| !c.is_zero());
    eliminate_constants(s, &mut stages[0], &mut first);
    stages.push(first);
    let mut complete = false;
    loop {
        let q = stages.len() - 1;
        if stages[q].cols.is_empty() {
            complete = true;
            stages.pop();
            break;
        }
        if q > max_length {
            break;
        }
        let mut next = syzygy_stage(s, &stages[q]);
        eliminate_constants(s, &mut stages[q], &mut next);
        stages.push(next);
    }
    stages.truncate(max_length + 1);
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let len = stages.len();
    let modules: Vec<FreeModule> = stages.iter().map(|st| FreeModule::new(st.shifts.clone())).collect();
    for q in (0..len).rev() {
        terms.push(modules[q].clone());
        if q > 0 {
            maps.push(ModuleMap::new_unchecked(
                modules[q].clone(),
                modules[q - 1].clone(),
                stages[q].cols.clone(),
            ));
        }
    }
    let complex = Complex::new(-(len as i64 - 1), terms, maps).with_truncation(!complete);
    let mut betti = BTreeMap::new();
    for (q, st) in stages.iter().enumerate() {
        for d in &st.shifts {
            *betti.entry((q, d.clone())).or_insert(0) += 1;
        }
    }
    let minimal = !complex.has_constant_entries();
    ResolutionReport {
        complex,
        minimal,
        complete,
        betti,
    }
}

/// Dimension of S: the largest set of variables independent modulo the initial ideal of J.
pub fn krull_dimension(s: &QuotientRing) -> usize {
    let nv = s.ring().nvars();
    let leads: Vec<Vec<usize>> = s
        .gb()
        .iter()
        .filter_map(|f| f.leading())
        .map(|(m, _)| (0..nv).filter(|&v| m.exponents()[v] > 0).collect())
        .collect();
    let mut best = 0;
    for mask in 0u32..(1 << nv) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if leads.iter().all(|l| !l.iter().all(|&v| mask & (1 << v) != 0)) {
            best = size;
        }
    }
    best
}

/// The minimal R-resolution of S.
pub fn resolution_over_r(s: &QuotientRing) -> ResolutionReport {
    free_resolution(&s.ambient(), &s.as_r_module(), s.ring().nvars() + 1)
}

/// Projective dimension of S over R.
pub fn pd_over_r(s: &QuotientRing) -> Option<usize> {
    let r = resolution_over_r(s);
    r.complete.then(|| r.length())
}

/// depth S, via Auslander–Buchsbaum over R.
pub fn depth(s: &QuotientRing) -> Option<usize> {
    pd_over_r(s).map(|pd| s.ring().nvars() - pd)
}

pub fn is_cohen_macaulay(s: &QuotientRing) -> bool {
    match pd_over_r(s) {
        Some(pd) => pd + krull_dimension(s) == s.ring().nvars(),
        None => false,
    }
}

/// ω_S as `Ext^c_R(S, R(−σ))`, presented over S.
pub fn canonical_module(s: &QuotientRing) -> Result<PresentedModule> {
    let sigma = s.ring().grading().sigma();
    if s.is_polynomial_ring() {
        return Ok(PresentedModule::free(vec![sigma]));
    }
    let res = resolution_over_r(s);
    if !res.complete || res.length() + krull_dimension(s) != s.ring().nvars() {
        return Err(Error::NotCohenMacaulay);
    }
    let c = res.length();
    let dual = res.differential(c).dual(&sigma);
    let mut module = PresentedModule {
        ambient: dual.target.clone(),
        relations: dual,
    };
    let cols: Vec<ModuleElement> = module
        .relations
        .columns()
        .iter()
        .map(|col| ModuleElement::from_entries(col.entries().iter().map(|(r, p)| (*r, s.reduce(p))).collect()))
        .collect();
    module.relations = ModuleMap::new_unchecked(module.relations.source.clone(), module.ambient.clone(), cols);
    Ok(module)
}

/// `M ⊗_S W`, presented on the tensor products of generators.
pub fn tensor_with(m: &PresentedModule, w: &PresentedModule) -> PresentedModule {
    let (f0, g0) = (&m.ambient, &w.ambient);
    let gr = g0.rank();
    let ambient = FreeModule::new(
        f0.shifts
            .iter()
            .flat_map(|a| g0.shifts.iter().map(move |b| a + b))
            .collect(),
    );
    let mut shifts = Vec::new();
    let mut cols = Vec::new();
    for (c, col) in m.relations.columns().iter().enumerate() {
        for l in 0..gr {
            shifts.push(&m.relations.source.shifts[c] + &g0.shifts[l]);
            cols.push(col.reindex(|i| Some(i * gr + l)));
        }
    }
    for i in 0..f0.rank() {
        for (c, col) in w.relations.columns().iter().enumerate() {
            shifts.push(&f0.shifts[i] + &w.relations.source.shifts[c]);
            cols.push(col.reindex(|l| Some(i * gr + l)));
        }
    }
    PresentedModule {
        relations: ModuleMap::new_unchecked(FreeModule::new(shifts), ambient.clone(), cols),
        ambient,
    }
}

/// `d ⊗ 1_W` on generators: columns indexed by `(source basis, W generator)`.
fn tensor_map_columns(d: &ModuleMap, wrank: usize) -> Vec<ModuleElement> {
    let mut out = Vec::new();
    for col in d.columns() {
        for l in 0..wrank {
            out.push(col.reindex(|i| Some(i * wrank + l)));
        }
    }
    out
}

/// `1_F ⊗ (relations of W)` for a free module of the given rank.
fn relation_columns(frank: usize, w: &PresentedModule) -> Vec<ModuleElement> {
    let wrank = w.rank();
    let mut out = Vec::new();
    for i in 0..frank {
        for col in w.relations.columns() {
            out.push(col.reindex(|l| Some(i * wrank + l)));
        }
    }
    out
}

/// Whether `Tor^S_i(M, W)` vanishes for `1 ≤ i ≤ i_max`.
pub fn tor_vanishes(s: &QuotientRing, m: &PresentedModule, w: &PresentedModule, i_max: usize) -> bool {
    let ring = s.ring();
    let res = free_resolution(s, m, i_max + 1);
    let wr = w.rank();
    for i in 1..=i_max {
        let fi = res.rank(i);
        if fi == 0 {
            continue;
        }
        let prev = res.rank(i - 1);
        let mut gens = tensor_map_columns(&res.differential(i), wr);
        let nsource = gens.len();
        gens.extend(relation_columns(prev, w));
        let syz = GroebnerBasis::new(ring, prev * wr, &gens, s.gb()).syzygies();
        let cycles: Vec<ModuleElement> = syz
            .iter()
            .map(|z| z.reindex(|j| (j < nsource).then_some(j)))
            .filter(|z| !z.is_zero())
            .collect();
        let mut boundaries = relation_columns(fi, w);
        if res.rank(i + 1) > 0 {
            boundaries.extend(tensor_map_columns(&res.differential(i + 1), wr));
        }
        let gb = GroebnerBasis::untracked(ring, fi * wr, &boundaries, s.gb());
        if cycles.iter().any(|z| !gb.contains(z)) {
            return false;
        }
    }
    true
}

/// Outcome of a bounded search for a finite free resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdStatus {
    Finite(usize),
    /// The resolution did not stop within the bound. It is certainly
    /// infinite when the bound already exceeds depth S.
    ExceededBound { certified_infinite: bool },
}

impl PdStatus {
    pub fn is_finite(&self) -> bool {
        matches!(self, PdStatus::Finite(_))
    }

    pub fn value(&self) -> Option<usize> {
        match self {
            PdStatus::Finite(v) => Some(*v),
            _ => None,
        }
    }
}

pub fn finite_pd(s: &QuotientRing, m: &PresentedModule, bound: usize) -> PdStatus {
    let res = free_resolution(s, m, bound);
    if res.complete {
        PdStatus::Finite(res.length())
    } else {
        let certified_infinite = depth(s).is_some_and(|d| bound > d);
        PdStatus::ExceededBound { certified_infinite }
    }
}
