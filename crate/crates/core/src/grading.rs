//! The degree group Z^r, degree data of the variables, the sharpness test,
//! and enumeration of exponent vectors of a fixed degree in sign-constrained
//! regions.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lp::{self, rat, LpOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(pub Vec<i64>);

impl Multidegree {
    pub fn zero(r: usize) -> Self {
        Multidegree(vec![0; r])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Multidegree(self.0.iter().map(|c| c * k).collect())
    }

    /// The hypercube of radius `w` around the origin, in lexicographic order.
    pub fn window(r: usize, w: i64) -> Vec<Multidegree> {
        let mut out = vec![vec![]];
        for _ in 0..r {
            let mut next = Vec::new();
            for prefix in &out {
                for c in -w..=w {
                    let mut v = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Multidegree).collect()
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.rank(), rhs.rank());
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Multidegree {
    type Output = Multidegree;
    fn sub(self, rhs: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.rank(), rhs.rank());
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| -a).collect())
    }
}

/// Degrees of the x-block and y-block variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingData {
    rank: usize,
    deg_x: Vec<Multidegree>,
    deg_y: Vec<Multidegree>,
}

/// A variable block: `P` is the x-variables, `Q` the y-variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    P,
    Q,
}

impl Block {
    pub fn other(self) -> Block {
        match self {
            Block::P => Block::Q,
            Block::Q => Block::P,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::P => write!(f, "p"),
            Block::Q => write!(f, "q"),
        }
    }
}

/// Sign pattern for [`enumerate_region`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// exponents <= -1 on x, >= 0 on y
    PNegative,
    /// exponents >= 0 on x, <= -1 on y
    QNegative,
    NonNegative,
}

impl Region {
    pub fn inverting(block: Block) -> Region {
        match block {
            Block::P => Region::PNegative,
            Block::Q => Region::QNegative,
        }
    }
}

impl GradingData {
    pub fn new(deg_x: Vec<Multidegree>, deg_y: Vec<Multidegree>) -> Result<Self> {
        let rank = deg_x
            .first()
            .or(deg_y.first())
            .map(|d| d.rank())
            .ok_or_else(|| Error::WrongShape("a ring needs at least one variable".into()))?;
        if rank == 0 {
            return Err(Error::WrongShape("degree vectors must be nonempty".into()));
        }
        if deg_x.iter().chain(&deg_y).any(|d| d.rank() != rank) {
            return Err(Error::WrongShape("degree vectors of differing lengths".into()));
        }
        Ok(GradingData { rank, deg_x, deg_y })
    }

    /// Convenience constructor from plain integer rows.
    pub fn from_rows(deg_x: &[&[i64]], deg_y: &[&[i64]]) -> Result<Self> {
        Self::new(
            deg_x.iter().map(|d| Multidegree(d.to_vec())).collect(),
            deg_y.iter().map(|d| Multidegree(d.to_vec())).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn m(&self) -> usize {
        self.deg_x.len()
    }

    pub fn n(&self) -> usize {
        self.deg_y.len()
    }

    pub fn nvars(&self) -> usize {
        self.m() + self.n()
    }

    pub fn deg_x(&self) -> &[Multidegree] {
        &self.deg_x
    }

    pub fn deg_y(&self) -> &[Multidegree] {
        &self.deg_y
    }

    /// Degree of variable `i` in the order x1..xm, y1..yn.
    pub fn var_degree(&self, i: usize) -> &Multidegree {
        if i < self.m() {
            &self.deg_x[i]
        } else {
            &self.deg_y[i - self.m()]
        }
    }

    pub fn block_of(&self, var: usize) -> Block {
        if var < self.m() {
            Block::P
        } else {
            Block::Q
        }
    }

    pub fn block_range(&self, block: Block) -> std::ops::Range<usize> {
        match block {
            Block::P => 0..self.m(),
            Block::Q => self.m()..self.nvars(),
        }
    }

    /// Sum of all variable degrees; the generator degree of the canonical module of R.
    pub fn sigma(&self) -> Multidegree {
        self.deg_x
            .iter()
            .chain(&self.deg_y)
            .fold(Multidegree::zero(self.rank), |acc, d| &acc + d)
    }

    pub fn degree_of_exponents(&self, exps: &[i64]) -> Multidegree {
        let mut out = vec![0; self.rank];
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                for (o, c) in out.iter_mut().zip(&self.var_degree(i).0) {
                    *o += e * c;
                }
            }
        }
        Multidegree(out)
    }

    /// The same grading with the roles of the two blocks exchanged.
    pub fn swapped(&self) -> GradingData {
        GradingData {
            rank: self.rank,
            deg_x: self.deg_y.clone(),
            deg_y: self.deg_x.clone(),
        }
    }

    /// A nonzero `(alpha, beta)` with `sum alpha_i deg x_i = sum beta_j deg y_j`,
    /// or `None` when the grading is sharp.
    pub fn sharpness_witness(&self) -> Option<(Vec<u64>, Vec<u64>)> {
        let cols: Vec<Vec<i64>> = self
            .deg_x
            .iter()
            .map(|d| d.0.clone())
            .chain(self.deg_y.iter().map(|d| (-d).0))
            .collect();
        lp::nonzero_cone_point(&cols, self.rank).map(|w| {
            let (a, b) = w.split_at(self.m());
            (a.to_vec(), b.to_vec())
        })
    }

    /// Every fiber `{(alpha, beta) >= 0 : sum alpha_i deg x_i = gamma + sum beta_j deg y_j}`
    /// is finite. Decided on the recession cone: a fiber is infinite exactly
    /// when the homogeneous system has a nonzero nonnegative rational solution.
    pub fn is_sharp(&self) -> bool {
        self.sharpness_witness().is_none()
    }

    /// A nonzero nonnegative exponent vector of degree zero, if one exists.
    /// `None` means every graded piece of R is finite-dimensional.
    pub fn positivity_witness(&self) -> Option<Vec<u64>> {
        let cols: Vec<Vec<i64>> = (0..self.nvars())
            .map(|i| self.var_degree(i).0.clone())
            .collect();
        lp::nonzero_cone_point(&cols, self.rank)
    }

    pub fn has_finite_pieces(&self) -> bool {
        self.positivity_witness().is_none()
    }

    fn region_is_finite(&self, region: Region) -> bool {
        match region {
            Region::PNegative | Region::QNegative => self.is_sharp(),
            Region::NonNegative => self.has_finite_pieces(),
        }
    }
}

pub fn is_sharp(g: &GradingData) -> bool {
    g.is_sharp()
}

/// All exponent vectors `(a, b)` in `region` with `sum a_i deg x_i + sum b_j deg y_j = gamma`,
/// sorted lexicographically.
pub fn enumerate_region(g: &GradingData, region: Region, gamma: &Multidegree) -> Result<Vec<Vec<i64>>> {
    if !g.region_is_finite(region) {
        return Err(Error::NonFiniteRegion(format!(
            "{region:?} region of degree {gamma} is infinite for this grading"
        )));
    }
    Ok(enumerate_unchecked(g, region, gamma))
}

fn inverted(g: &GradingData, region: Region, var: usize) -> bool {
    match region {
        Region::PNegative => var < g.m(),
        Region::QNegative => var >= g.m(),
        Region::NonNegative => false,
    }
}

fn enumerate_unchecked(g: &GradingData, region: Region, gamma: &Multidegree) -> Vec<Vec<i64>> {
    let nv = g.nvars();
    let r = g.rank();
    // substitute a_i = -1 - u_i on inverted coordinates, a_i = u_i elsewhere
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(nv);
    let mut target = gamma.0.clone();
    for i in 0..nv {
        let d = &g.var_degree(i).0;
        if inverted(g, region, i) {
            cols.push(d.iter().map(|c| -c).collect());
            for (t, c) in target.iter_mut().zip(d) {
                *t += c;
            }
        } else {
            cols.push(d.clone());
        }
    }
    if nv == 0 {
        return if target.iter().all(|&t| t == 0) { vec![vec![]] } else { vec![] };
    }
    let a: Vec<Vec<_>> = (0..r).map(|k| cols.iter().map(|c| rat(c[k])).collect()).collect();
    let b: Vec<_> = target.iter().map(|&t| rat(t)).collect();
    let mut upper = vec![0i64; nv];
    for i in 0..nv {
        let mut obj = vec![rat(0); nv];
        obj[i] = rat(1);
        match lp::maximize(&a, &b, &obj) {
            LpOutcome::Infeasible => return vec![],
            LpOutcome::Unbounded => unreachable!("finiteness was checked"),
            LpOutcome::Optimal { value, .. } => {
                upper[i] = value.floor().to_integer().to_i64().expect("bound fits in i64");
                debug_assert!(!value.is_negative());
            }
        }
    }
    // suffix interval bounds on the remaining contribution of each degree coordinate
    let mut lo = vec![vec![0i64; r]; nv + 1];
    let mut hi = vec![vec![0i64; r]; nv + 1];
    for i in (0..nv).rev() {
        for k in 0..r {
            let v = cols[i][k] * upper[i];
            lo[i][k] = lo[i + 1][k] + v.min(0);
            hi[i][k] = hi[i + 1][k] + v.max(0);
        }
    }
    let mut out = Vec::new();
    let mut u = vec![0i64; nv];
    let mut rest = target;
    dfs(0, &cols, &upper, &lo, &hi, &mut u, &mut rest, &mut out);
    let mut res: Vec<Vec<i64>> = out
        .into_iter()
        .map(|u| {
            u.iter()
                .enumerate()
                .map(|(i, &x)| if inverted(g, region, i) { -1 - x } else { x })
                .collect()
        })
        .collect();
    res.sort();
    res
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    i: usize,
    cols: &[Vec<i64>],
    upper: &[i64],
    lo: &[Vec<i64>],
    hi: &[Vec<i64>],
    u: &mut Vec<i64>,
    rest: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if rest.iter().enumerate().any(|(k, &t)| t < lo[i][k] || t > hi[i][k]) {
        return;
    }
    if i == cols.len() {
        out.push(u.clone());
        return;
    }
    for v in 0..=upper[i] {
        u[i] = v;
        dfs(i + 1, cols, upper, lo, hi, u, rest, out);
        for (t, c) in rest.iter_mut().zip(&cols[i]) {
            *t -= c;
        }
    }
    for (t, c) in rest.iter_mut().zip(&cols[i]) {
        *t += c * (upper[i] + 1);
    }
    u[i] = 0;
}
