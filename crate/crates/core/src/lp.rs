//! Exact two-phase simplex over the rationals (Bland's rule).
//!
//! Problems here have a handful of rows and at most a dozen columns. The
//! tableau is first run on `i128` fractions with checked arithmetic and redone
//! over `BigRational` only if that overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
}

/// Exact arithmetic for the tableau; `None` signals overflow.
trait Exact: Clone + PartialOrd + Zero + One + Signed {
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigRational) -> Option<Self>;
    fn to_big(&self) -> BigRational;
    fn minus(&self, o: &Self) -> Option<Self>;
    fn times(&self, o: &Self) -> Option<Self>;
    fn over(&self, o: &Self) -> Option<Self>;
}

impl Exact for BigRational {
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
    fn from_big(v: &BigRational) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn over(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
}

type Small = Ratio<i128>;

impl Exact for Small {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn from_big(v: &BigRational) -> Option<Self> {
        let n = i128::try_from(v.numer()).ok()?;
        let d = i128::try_from(v.denom()).ok()?;
        Some(Ratio::new(n, d))
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn over(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
}

enum Solved<T> {
    Infeasible,
    Unbounded,
    Optimal(Vec<T>),
}

struct Tableau<T> {
    // rows x (cols + 1); last column is the right-hand side
    t: Vec<Vec<T>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<T: Exact> Tableau<T> {
    fn pivot(&mut self, row: usize, col: usize) -> Option<()> {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v = v.over(&p)?;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (v, pv) in line.iter_mut().zip(pivot_row.iter()) {
                if !pv.is_zero() {
                    *v = v.minus(&f.times(pv)?)?;
                }
            }
        }
        self.basis[row] = col;
        Some(())
    }

    /// Maximizes `obj` over the current basis; columns >= `allowed` may not
    /// enter. `Some(false)` means unbounded.
    fn optimize(&mut self, obj: &[T], allowed: usize) -> Option<bool> {
        loop {
            // reduced costs: obj_j - sum_i obj_{basis_i} * t[i][j]
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.t[i][j].is_zero() {
                        rc = rc.minus(&obj[b].times(&self.t[i][j])?)?;
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Some(true);
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][col];
                if a.is_positive() {
                    let ratio = self.t[i][self.cols].over(a)?;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return Some(false),
                Some((row, _)) => self.pivot(row, col)?,
            }
        }
    }
}

fn solve<T: Exact>(a: &[Vec<T>], b: &[T], c: &[T]) -> Option<Solved<T>> {
    let rows = a.len();
    let n = c.len();
    let cols = n + rows;
    let mut t = Vec::with_capacity(rows);
    for i in 0..rows {
        let neg = b[i].is_negative();
        let mut line = vec![T::zero(); cols + 1];
        for j in 0..n {
            let v = a[i][j].clone();
            line[j] = if neg { -v } else { v };
        }
        line[n + i] = T::one();
        let rhs = b[i].clone();
        line[cols] = if neg { -rhs } else { rhs };
        t.push(line);
    }
    let mut tab = Tableau {
        t,
        basis: (n..cols).collect(),
        cols,
    };
    // phase 1: maximize -(sum of artificials)
    let mut obj1 = vec![T::zero(); cols];
    for v in obj1.iter_mut().skip(n) {
        *v = -T::one();
    }
    tab.optimize(&obj1, cols)?;
    for i in 0..rows {
        if tab.basis[i] >= n && !tab.t[i][cols].is_zero() {
            return Some(Solved::Infeasible);
        }
    }
    // drive artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j)?;
                i += 1;
            } else {
                tab.t.remove(i);
                tab.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    let mut obj2 = vec![T::zero(); cols];
    obj2[..n].clone_from_slice(c);
    if !tab.optimize(&obj2, n)? {
        return Some(Solved::Unbounded);
    }
    let mut point = vec![T::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            point[bv] = tab.t[i][cols].clone();
        }
    }
    Some(Solved::Optimal(point))
}

fn convert<T: Exact>(v: &[BigRational]) -> Option<Vec<T>> {
    v.iter().map(T::from_big).collect()
}

/// Maximizes `c·x` subject to `a x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let small = || -> Option<Solved<Small>> {
        let a: Vec<Vec<Small>> = a.iter().map(|r| convert(r)).collect::<Option<_>>()?;
        solve(&a, &convert(b)?, &convert(c)?)
    };
    let solved = match small() {
        Some(Solved::Infeasible) => Solved::Infeasible,
        Some(Solved::Unbounded) => Solved::Unbounded,
        Some(Solved::Optimal(p)) => Solved::Optimal(p.iter().map(Exact::to_big).collect()),
        None => solve(a, b, c).expect("no overflow over BigRational"),
    };
    match solved {
        Solved::Infeasible => LpOutcome::Infeasible,
        Solved::Unbounded => LpOutcome::Unbounded,
        Solved::Optimal(point) => {
            let value = point.iter().zip(c).fold(BigRational::zero(), |acc, (x, w)| acc + x * w);
            LpOutcome::Optimal { value, point }
        }
    }
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Feasibility of `columns · x = 0`, `sum x = 1`, `x >= 0`.
fn cone_lp<T: Exact>(columns: &[Vec<i64>], rows: usize) -> Option<Solved<T>> {
    let n = columns.len();
    let mut a: Vec<Vec<T>> = (0..rows)
        .map(|k| columns.iter().map(|col| T::from_i64(col[k])).collect())
        .collect();
    a.push(vec![T::one(); n]);
    let mut b = vec![T::zero(); rows];
    b.push(T::one());
    solve(&a, &b, &vec![T::zero(); n])
}

fn primitive_small(point: &[Small]) -> Option<Vec<u64>> {
    let mut den: i128 = 1;
    for x in point {
        den = den.checked_mul(x.denom() / den.gcd(x.denom()))?;
    }
    let ints: Vec<i128> = point.iter().map(|x| x.numer().checked_mul(&(den / x.denom()))).collect::<Option<_>>()?;
    let g = ints.iter().fold(0i128, |acc, v| acc.gcd(v));
    ints.iter().map(|v| u64::try_from(v / g).ok()).collect()
}

fn primitive_big(point: &[BigRational]) -> Vec<u64> {
    let mut den = BigInt::one();
    for x in point {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = point.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.iter()
        .map(|v| u64::try_from(v / &g).expect("small witness"))
        .collect()
}

/// Some `h` among the columns and their sum with `h·c > 0` for every column `c`;
/// such an `h` rules out nonzero points of the cone.
fn has_separating_candidate(columns: &[Vec<i64>], rows: usize) -> bool {
    let total: Vec<i64> = (0..rows).map(|k| columns.iter().map(|c| c[k]).sum()).collect();
    let dot = |h: &[i64], c: &[i64]| h.iter().zip(c).map(|(a, b)| a * b).sum::<i64>();
    std::iter::once(&total)
        .chain(columns)
        .any(|h| columns.iter().all(|c| dot(h, c) > 0))
}

/// A point supported on a zero column or on two opposite columns.
fn two_column_point(columns: &[Vec<i64>], rows: usize) -> Option<Vec<u64>> {
    let n = columns.len();
    let unit = |idx: &[(usize, u64)]| {
        let mut w = vec![0u64; n];
        for &(i, v) in idx {
            w[i] = v;
        }
        w
    };
    if let Some(j) = columns.iter().position(|c| c.iter().all(|&v| v == 0)) {
        return Some(unit(&[(j, 1)]));
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&columns[i], &columns[j]);
            let parallel = (0..rows).all(|k| (0..rows).all(|l| a[k] * b[l] == a[l] * b[k]));
            let dot: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            if parallel && dot < 0 {
                let k = (0..rows).find(|&k| b[k] != 0).expect("nonzero column");
                let (p, q) = (b[k].unsigned_abs(), a[k].unsigned_abs());
                let g = p.gcd(&q);
                return Some(unit(&[(i, p / g), (j, q / g)]));
            }
        }
    }
    None
}

/// A nonzero point of `{x >= 0 : columns · x = 0}`, scaled to coprime integers,
/// or `None` when the cone is `{0}`.
pub fn nonzero_cone_point(columns: &[Vec<i64>], rows: usize) -> Option<Vec<u64>> {
    if columns.is_empty() || has_separating_candidate(columns, rows) {
        return None;
    }
    if let Some(w) = two_column_point(columns, rows) {
        return Some(w);
    }
    match cone_lp::<Small>(columns, rows) {
        Some(Solved::Optimal(p)) => {
            if let Some(w) = primitive_small(&p) {
                return Some(w);
            }
        }
        Some(_) => return None,
        None => {}
    }
    match cone_lp::<BigRational>(columns, rows).expect("no overflow over BigRational") {
        Solved::Optimal(p) => Some(primitive_big(&p)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_max() {
        // max x + y s.t. x + 2y + s = 4, 3x + y + t = 6
        let a = vec![
            vec![rat(1), rat(2), rat(1), rat(0)],
            vec![rat(3), rat(1), rat(0), rat(1)],
        ];
        let out = maximize(&a, &[rat(4), rat(6)], &[rat(1), rat(1), rat(0), rat(0)]);
        match out {
            LpOutcome::Optimal { value, .. } => {
                assert_eq!(value, BigRational::new(BigInt::from(14), BigInt::from(5)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![rat(1), rat(1)]];
        assert_eq!(maximize(&a, &[rat(-1)], &[rat(0), rat(0)]), LpOutcome::Infeasible);
        let a = vec![vec![rat(1), rat(-1)]];
        assert_eq!(maximize(&a, &[rat(0)], &[rat(1), rat(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn falls_back_on_overflow() {
        // x + y = 10^40, max 3x + y
        let big = BigRational::from_integer(BigInt::from(10).pow(40));
        let a = vec![vec![rat(1), rat(1)]];
        match maximize(&a, std::slice::from_ref(&big), &[rat(3), rat(1)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, big.clone() * rat(3));
                assert_eq!(point, vec![big, rat(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cone_points() {
        // x - y = 0 has the ray (1, 1)
        assert_eq!(nonzero_cone_point(&[vec![1], vec![-1]], 1), Some(vec![1, 1]));
        // x + y = 0 forces zero
        assert_eq!(nonzero_cone_point(&[vec![1], vec![1]], 1), None);
        // 2x - 3y = 0 -> (3, 2)
        assert_eq!(nonzero_cone_point(&[vec![2], vec![-3]], 1), Some(vec![3, 2]));
    }
}
