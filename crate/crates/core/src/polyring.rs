//! Sparse polynomials over F_p, graded free modules, degree-compatible maps
//! and bounded cochain complexes of free modules.
//!
//! Monomials are ordered by graded reverse lexicographic order with respect
//! to the all-ones weight and x1 > ... > xm > y1 > ... > yn. The order does
//! not depend on the Z^r-grading, which need not be positive.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::grading::{enumerate_region, GradingData, Multidegree, Region};
use crate::scalars::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn degree(&self, g: &GradingData) -> Multidegree {
        let exps: Vec<i64> = self.0.iter().map(|&e| e as i64).collect();
        g.degree_of_exponents(&exps)
    }

    /// Graded reverse lexicographic comparison.
    pub fn grevlex(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

/// The polynomial ring R over F_p with its Z^r-grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: Field,
    grading: GradingData,
}

impl Ring {
    pub fn new(field: Field, grading: GradingData) -> Self {
        Ring { field, grading }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grading(&self) -> &GradingData {
        &self.grading
    }

    pub fn nvars(&self) -> usize {
        self.grading.nvars()
    }

    pub fn rank(&self) -> usize {
        self.grading.rank()
    }

    pub fn var_name(&self, i: usize) -> String {
        let m = self.grading.m();
        if i < m {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - m + 1)
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(Monomial::var(i, self.nvars()), 1)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(1, self.nvars())
    }

    pub fn zero_degree(&self) -> Multidegree {
        Multidegree::zero(self.rank())
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        self.field.scalar(v)
    }

    /// Index of the variable called `name` (x1..xm, y1..yn).
    pub fn var_index(&self, name: &str) -> Option<usize> {
        let block = name.get(..1)?;
        let k: usize = name[1..].parse().ok()?;
        if k == 0 {
            return None;
        }
        match block {
            "x" if k <= self.grading.m() => Some(k - 1),
            "y" if k <= self.grading.n() => Some(self.grading.m() + k - 1),
            _ => None,
        }
    }
}

/// A polynomial as a list of terms sorted by decreasing monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: u32, nvars: usize) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(nvars), c)],
            }
        }
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(k: Field, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.sort_by(|a, b| b.0.grevlex(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = k.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, other: &Polynomial, k: Field) -> Polynomial {
        self.combine(other, k, false)
    }

    pub fn sub(&self, other: &Polynomial, k: Field) -> Polynomial {
        self.combine(other, k, true)
    }

    fn combine(&self, other: &Polynomial, k: Field, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let oc = |c: u32| if negate { k.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.grevlex(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), oc(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = k.add(a[i].1, oc(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), oc(*c))));
        Polynomial { terms: out }
    }

    pub fn neg(&self, k: Field) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), k.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u32, k: Field) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), k.mul(*a, c))).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: u32, k: Field) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), k.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, k: Field) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1, k);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1, k);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                prods.push((m1.mul(m2), k.mul(*c1, *c2)));
            }
        }
        Polynomial::from_terms(k, prods)
    }

    pub fn pow(&self, e: u32, k: Field, nvars: usize) -> Polynomial {
        let mut acc = Polynomial::constant(1, nvars);
        for _ in 0..e {
            acc = acc.mul(self, k);
        }
        acc
    }

    /// The common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn degree(&self, g: &GradingData) -> Option<Multidegree> {
        let d = self.terms.first()?.0.degree(g);
        self.terms[1..]
            .iter()
            .all(|(m, _)| m.degree(g) == d)
            .then_some(d)
    }

    pub fn is_homogeneous_of(&self, g: &GradingData, d: &Multidegree) -> bool {
        self.terms.iter().all(|(m, _)| m.degree(g) == *d)
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PolyDisplay<'a> {
        PolyDisplay { p: self, ring }
    }
}

pub struct PolyDisplay<'a> {
    p: &'a Polynomial,
    ring: &'a Ring,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let k = self.ring.field();
        for (idx, (m, c)) in self.p.terms.iter().enumerate() {
            // print residues above p/2 as negatives
            let (neg, mag) = if *c > k.char() / 2 { (true, k.char() - c) } else { (false, *c) };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if mag != 1 || m.is_one() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i)),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// A graded free module; `shifts[i]` is the degree of the i-th basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeModule {
    pub shifts: Vec<Multidegree>,
}

impl FreeModule {
    pub fn new(shifts: Vec<Multidegree>) -> Self {
        FreeModule { shifts }
    }

    pub fn zero() -> Self {
        FreeModule { shifts: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn twisted(&self, delta: &Multidegree) -> FreeModule {
        FreeModule {
            shifts: self.shifts.iter().map(|s| s + delta).collect(),
        }
    }

    pub fn direct_sum(parts: &[&FreeModule]) -> FreeModule {
        FreeModule {
            shifts: parts.iter().flat_map(|p| p.shifts.iter().cloned()).collect(),
        }
    }

    /// Monomial basis `(basis index, monomial)` of the piece of degree `gamma`.
    pub fn graded_piece_basis(&self, g: &GradingData, gamma: &Multidegree) -> Result<Vec<(usize, Monomial)>> {
        let mut out = Vec::new();
        for (i, s) in self.shifts.iter().enumerate() {
            for e in enumerate_region(g, Region::NonNegative, &(gamma - s))? {
                let exps: Vec<u32> = e.iter().map(|&v| v as u32).collect();
                out.push((i, Monomial::from_exponents(&exps)));
            }
        }
        Ok(out)
    }
}

/// An element of a free module: sorted `(basis index, nonzero coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModuleElement {
    entries: Vec<(usize, Polynomial)>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement { entries: vec![] }
    }

    pub fn from_entries(mut entries: Vec<(usize, Polynomial)>) -> Self {
        entries.retain(|(_, p)| !p.is_zero());
        entries.sort_by_key(|(i, _)| *i);
        for w in entries.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate index in module element");
        }
        ModuleElement { entries }
    }

    pub fn from_dense(v: Vec<Polynomial>) -> Self {
        Self::from_entries(v.into_iter().enumerate().collect())
    }

    pub fn basis(i: usize, nvars: usize) -> Self {
        ModuleElement {
            entries: vec![(i, Polynomial::constant(1, nvars))],
        }
    }

    pub fn entries(&self) -> &[(usize, Polynomial)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&Polynomial> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self, rank: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); rank];
        for (i, p) in &self.entries {
            out[*i] = p.clone();
        }
        out
    }

    pub fn add(&self, other: &ModuleElement, k: Field) -> ModuleElement {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1.add(&b[j].1, k);
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        ModuleElement { entries: out }
    }

    pub fn neg(&self, k: Field) -> ModuleElement {
        ModuleElement {
            entries: self.entries.iter().map(|(i, p)| (*i, p.neg(k))).collect(),
        }
    }

    pub fn sub(&self, other: &ModuleElement, k: Field) -> ModuleElement {
        self.add(&other.neg(k), k)
    }

    pub fn scale(&self, f: &Polynomial, k: Field) -> ModuleElement {
        ModuleElement::from_entries(self.entries.iter().map(|(i, p)| (*i, p.mul(f, k))).collect())
    }

    /// Reindexes entries through `map`; entries mapped to `None` are dropped.
    pub fn reindex(&self, map: impl Fn(usize) -> Option<usize>) -> ModuleElement {
        ModuleElement::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, p)| map(*i).map(|j| (j, p.clone())))
                .collect(),
        )
    }

    pub fn offset(&self, by: usize) -> ModuleElement {
        ModuleElement {
            entries: self.entries.iter().map(|(i, p)| (i + by, p.clone())).collect(),
        }
    }

    /// Degree of a homogeneous element in a free module with the given shifts.
    pub fn degree(&self, g: &GradingData, module: &FreeModule) -> Option<Multidegree> {
        let mut deg: Option<Multidegree> = None;
        for (i, p) in &self.entries {
            for (m, _) in p.terms() {
                let d = &m.degree(g) + &module.shifts[*i];
                match &deg {
                    None => deg = Some(d),
                    Some(e) if *e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }
}

/// A degree-preserving map of graded free modules, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: FreeModule,
    pub target: FreeModule,
    columns: Vec<ModuleElement>,
}

impl ModuleMap {
    /// Checks that entry (i, j) is homogeneous of degree `shift_source(j) - shift_target(i)`.
    pub fn new(g: &GradingData, source: FreeModule, target: FreeModule, columns: Vec<ModuleElement>) -> Result<Self> {
        let map = Self::new_unchecked(source, target, columns);
        map.check_degrees(g)?;
        Ok(map)
    }

    pub fn new_unchecked(source: FreeModule, target: FreeModule, columns: Vec<ModuleElement>) -> Self {
        assert_eq!(source.rank(), columns.len(), "one column per source basis element");
        debug_assert!(columns
            .iter()
            .all(|c| c.entries().iter().all(|(i, _)| *i < target.rank())));
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let columns = vec![ModuleElement::zero(); source.rank()];
        ModuleMap {
            source,
            target,
            columns,
        }
    }

    pub fn identity(module: &FreeModule, nvars: usize) -> Self {
        let columns = (0..module.rank()).map(|i| ModuleElement::basis(i, nvars)).collect();
        ModuleMap {
            source: module.clone(),
            target: module.clone(),
            columns,
        }
    }

    pub fn check_degrees(&self, g: &GradingData) -> Result<()> {
        for (j, col) in self.columns.iter().enumerate() {
            for (i, p) in col.entries() {
                let expected = &self.source.shifts[j] - &self.target.shifts[*i];
                if !p.is_homogeneous_of(g, &expected) {
                    return Err(Error::DegreeMismatch {
                        row: *i,
                        col: j,
                        expected,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn columns(&self) -> &[ModuleElement] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &ModuleElement {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Polynomial> {
        self.columns[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, v: &ModuleElement, k: Field) -> ModuleElement {
        let mut acc = ModuleElement::zero();
        for (j, p) in v.entries() {
            acc = acc.add(&self.columns[*j].scale(p, k), k);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap, k: Field) -> ModuleMap {
        assert_eq!(other.target.rank(), self.source.rank());
        let columns = other.columns.iter().map(|c| self.apply(c, k)).collect();
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            columns,
        }
    }

    pub fn scaled(&self, c: u32, k: Field) -> ModuleMap {
        let nv_poly = |p: &Polynomial| p.scale(c, k);
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            columns: self
                .columns
                .iter()
                .map(|col| ModuleElement::from_entries(col.entries().iter().map(|(i, p)| (*i, nv_poly(p))).collect()))
                .collect(),
        }
    }

    /// The transposed matrix, as a map between the given modules.
    pub fn transpose_into(&self, source: FreeModule, target: FreeModule) -> ModuleMap {
        assert_eq!(source.rank(), self.target.rank());
        assert_eq!(target.rank(), self.source.rank());
        let mut cols: Vec<Vec<(usize, Polynomial)>> = vec![Vec::new(); self.target.rank()];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, p) in col.entries() {
                cols[*i].push((j, p.clone()));
            }
        }
        ModuleMap {
            source,
            target,
            columns: cols.into_iter().map(ModuleElement::from_entries).collect(),
        }
    }

    /// Graded dual `Hom(-, R(-twist))`: a map `target^* → source^*` where the
    /// dual of a basis element of degree `s` has degree `twist - s`.
    pub fn dual(&self, twist: &Multidegree) -> ModuleMap {
        let dual_of = |f: &FreeModule| FreeModule::new(f.shifts.iter().map(|s| twist - s).collect());
        self.transpose_into(dual_of(&self.target), dual_of(&self.source))
    }

    pub fn has_constant_entries(&self) -> bool {
        self.columns
            .iter()
            .any(|c| c.entries().iter().any(|(_, p)| p.constant_term() != 0))
    }

    pub fn twisted(&self, delta: &Multidegree) -> ModuleMap {
        ModuleMap {
            source: self.source.twisted(delta),
            target: self.target.twisted(delta),
            columns: self.columns.clone(),
        }
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            columns: self
                .columns
                .iter()
                .map(|c| ModuleElement::from_entries(c.entries().iter().map(|(i, p)| (*i, f(p))).collect()))
                .collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(maps: &[&ModuleMap]) -> ModuleMap {
        let source = FreeModule::direct_sum(&maps.iter().map(|m| &m.source).collect::<Vec<_>>());
        let target = FreeModule::direct_sum(&maps.iter().map(|m| &m.target).collect::<Vec<_>>());
        let mut columns = Vec::new();
        let mut off = 0;
        for m in maps {
            columns.extend(m.columns.iter().map(|c| c.offset(off)));
            off += m.target.rank();
        }
        ModuleMap {
            source,
            target,
            columns,
        }
    }
}

/// A bounded cochain complex `C^lo → C^{lo+1} → … → C^hi` of graded free modules.
///
/// A complex marked truncated stands for an unbounded one (a resolution cut
/// off below `lo`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    lo: i64,
    terms: Vec<FreeModule>,
    maps: Vec<ModuleMap>,
    truncated: bool,
}

impl Complex {
    pub fn new(lo: i64, terms: Vec<FreeModule>, maps: Vec<ModuleMap>) -> Self {
        assert_eq!(maps.len() + 1, terms.len().max(1), "one map between consecutive terms");
        for (k, d) in maps.iter().enumerate() {
            assert_eq!(d.source.rank(), terms[k].rank());
            assert_eq!(d.target.rank(), terms[k + 1].rank());
        }
        Complex {
            lo,
            terms,
            maps,
            truncated: false,
        }
    }

    pub fn with_truncation(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn empty() -> Self {
        Complex {
            lo: 0,
            terms: vec![],
            maps: vec![],
            truncated: false,
        }
    }

    /// A single module placed in cohomological degree `at`.
    pub fn concentrated(module: FreeModule, at: i64) -> Self {
        Complex {
            lo: at,
            terms: vec![module],
            maps: vec![],
            truncated: false,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.terms.iter().all(|t| t.rank() == 0)
    }

    pub fn term(&self, t: i64) -> FreeModule {
        if t < self.lo || t > self.hi() {
            FreeModule::zero()
        } else {
            self.terms[(t - self.lo) as usize].clone()
        }
    }

    pub fn term_ref(&self, t: i64) -> Option<&FreeModule> {
        if t < self.lo || t > self.hi() {
            None
        } else {
            Some(&self.terms[(t - self.lo) as usize])
        }
    }

    pub fn rank(&self, t: i64) -> usize {
        self.term_ref(t).map_or(0, |f| f.rank())
    }

    /// The differential `C^t → C^{t+1}` (zero outside the support).
    pub fn differential(&self, t: i64) -> ModuleMap {
        if t >= self.lo && t < self.hi() {
            self.maps[(t - self.lo) as usize].clone()
        } else {
            ModuleMap::zero(self.term(t), self.term(t + 1))
        }
    }

    pub fn differential_ref(&self, t: i64) -> Option<&ModuleMap> {
        if t >= self.lo && t < self.hi() {
            Some(&self.maps[(t - self.lo) as usize])
        } else {
            None
        }
    }

    pub fn terms(&self) -> &[FreeModule] {
        &self.terms
    }

    pub fn maps(&self) -> &[ModuleMap] {
        &self.maps
    }

    /// `C{i}`: the term in degree t is `C^{t+i}`; odd shifts negate the differentials.
    pub fn shift(&self, i: i64, k: Field) -> Complex {
        let maps = if i.rem_euclid(2) == 1 {
            self.maps.iter().map(|d| d.scaled(k.neg(1), k)).collect()
        } else {
            self.maps.clone()
        };
        Complex {
            lo: self.lo - i,
            terms: self.terms.clone(),
            maps,
            truncated: self.truncated,
        }
    }

    pub fn twist(&self, delta: &Multidegree) -> Complex {
        Complex {
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.twisted(delta)).collect(),
            maps: self.maps.iter().map(|d| d.twisted(delta)).collect(),
            truncated: self.truncated,
        }
    }

    pub fn check_degrees(&self, g: &GradingData) -> Result<()> {
        self.maps.iter().try_for_each(|d| d.check_degrees(g))
    }

    /// Every composite `d^{t+1} ∘ d^t`, for a d∘d = 0 check.
    pub fn squares(&self, k: Field) -> Vec<ModuleMap> {
        self.maps.windows(2).map(|w| w[1].compose(&w[0], k)).collect()
    }

    /// Whether any differential has a nonzero constant entry.
    pub fn has_constant_entries(&self) -> bool {
        self.maps.iter().any(|d| d.has_constant_entries())
    }
}
