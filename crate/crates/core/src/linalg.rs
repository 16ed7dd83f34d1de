//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Row reduction is fraction-free with gcd normalisation of every stored row. Entries
//! live in `i128` until an operation overflows, at which point the whole echelon form is
//! promoted to `BigInt`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

trait Exact: Clone + Integer + Signed + CheckedMul + CheckedSub {}
impl Exact for i128 {}
impl Exact for BigInt {}

#[derive(Clone, Debug)]
struct Echelon<T> {
    width: usize,
    // leading column -> row whose first nonzero entry sits in that column
    pivots: BTreeMap<usize, Vec<T>>,
}

fn leading<T: Exact>(row: &[T]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn normalise<T: Exact>(row: &mut [T]) {
    let mut g = T::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = x.div_floor(&g);
    }
}

impl<T: Exact> Echelon<T> {
    fn new(width: usize) -> Self {
        Echelon {
            width,
            pivots: BTreeMap::new(),
        }
    }

    /// Reduces `row` against the stored pivots. `None` on overflow.
    fn reduce(&self, mut row: Vec<T>) -> Option<Vec<T>> {
        normalise(&mut row);
        while let Some(c) = leading(&row) {
            let Some(p) = self.pivots.get(&c) else { break };
            let a = p[c].clone();
            let b = row[c].clone();
            let g = a.gcd(&b);
            let (a, b) = (a.div_floor(&g), b.div_floor(&g));
            for j in c..self.width {
                let lhs = row[j].checked_mul(&a)?;
                let rhs = p[j].checked_mul(&b)?;
                row[j] = lhs.checked_sub(&rhs)?;
            }
            normalise(&mut row);
        }
        Some(row)
    }

    /// Inserts a row; `Some(true)` if the rank grew, `None` on overflow.
    fn insert(&mut self, row: Vec<T>) -> Option<bool> {
        let row = self.reduce(row)?;
        match leading(&row) {
            None => Some(false),
            Some(c) => {
                self.pivots.insert(c, row);
                Some(true)
            }
        }
    }
}

/// Incrementally built row space of an integer matrix.
#[derive(Clone, Debug)]
pub struct RowSpace {
    inner: Inner,
}

#[derive(Clone, Debug)]
enum Inner {
    Small(Echelon<i128>),
    Big(Echelon<BigInt>),
}

fn promote(e: &Echelon<i128>) -> Echelon<BigInt> {
    Echelon {
        width: e.width,
        pivots: e
            .pivots
            .iter()
            .map(|(&c, r)| (c, r.iter().map(|&x| BigInt::from(x)).collect()))
            .collect(),
    }
}

impl RowSpace {
    pub fn new(width: usize) -> Self {
        RowSpace {
            inner: Inner::Small(Echelon::new(width)),
        }
    }

    pub fn width(&self) -> usize {
        match &self.inner {
            Inner::Small(e) => e.width,
            Inner::Big(e) => e.width,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            Inner::Small(e) => e.pivots.len(),
            Inner::Big(e) => e.pivots.len(),
        }
    }

    /// Adds a row. Returns true if it was not already in the span.
    pub fn insert(&mut self, row: &[i64]) -> bool {
        assert_eq!(row.len(), self.width(), "row width mismatch");
        if let Inner::Small(e) = &mut self.inner {
            if let Some(grew) = e.insert(row.iter().map(|&x| x as i128).collect()) {
                return grew;
            }
            self.inner = Inner::Big(promote(e));
        }
        match &mut self.inner {
            Inner::Big(e) => e
                .insert(row.iter().map(|&x| BigInt::from(x)).collect())
                .expect("bigint arithmetic cannot overflow"),
            Inner::Small(_) => unreachable!(),
        }
    }

    pub fn contains(&self, row: &[i64]) -> bool {
        assert_eq!(row.len(), self.width(), "row width mismatch");
        match &self.inner {
            Inner::Small(e) => {
                if let Some(r) = e.reduce(row.iter().map(|&x| x as i128).collect()) {
                    return leading(&r).is_none();
                }
                let big = promote(e);
                let r = big
                    .reduce(row.iter().map(|&x| BigInt::from(x)).collect())
                    .expect("bigint arithmetic cannot overflow");
                leading(&r).is_none()
            }
            Inner::Big(e) => {
                let r = e
                    .reduce(row.iter().map(|&x| BigInt::from(x)).collect())
                    .expect("bigint arithmetic cannot overflow");
                leading(&r).is_none()
            }
        }
    }
}

/// Rank over the rationals of an integer matrix given by rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut space = RowSpace::new(first.len());
    for r in rows {
        space.insert(r);
        if space.rank() == space.width() {
            break;
        }
    }
    space.rank()
}

/// Is `v` a rational combination of `rows`?
pub fn in_span(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let mut space = RowSpace::new(v.len());
    for r in rows {
        space.insert(r);
    }
    space.contains(v)
}

/// Determinant of a square integer matrix (Bareiss).
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Small determinant used for Plücker coordinates; `m` is `p x p` with `p <= 6`.
pub fn small_determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0i64;
            for (j, &x) in m[0].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let d = x * small_determinant(&minor);
                if j % 2 == 0 {
                    acc += d;
                } else {
                    acc -= d;
                }
            }
            acc
        }
    }
}

/// Elementary divisors (nonzero diagonal of the Smith normal form) of an integer matrix.
pub fn elementary_divisors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let mut fix = None;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    for j in t..cols {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// True if the rows extend to a basis of the integer lattice they live in, i.e. they are
/// linearly independent and all elementary divisors equal one.
pub fn is_unimodular_rows(m: &[Vec<i64>]) -> bool {
    let d = elementary_divisors(m);
    d.len() == m.len() && d.iter().all(|x| x.is_one())
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

/// One rational solution of `a x = b`, if any.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix.
pub fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == k {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        cols.push(solve(a, &e)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&rows), 2);
        assert!(in_span(&rows, &[1, 3, 4]));
        assert!(!in_span(&rows, &[0, 0, 1]));
    }

    #[test]
    fn rank_survives_overflow_promotion() {
        let big = i64::MAX / 3;
        let rows = vec![
            vec![big, big - 1, 7],
            vec![big - 5, big, 11],
            vec![3, 5, big],
            vec![1, 1, 1],
        ];
        let r = rank(&rows);
        assert_eq!(r, 3);
    }

    #[test]
    fn determinant_and_divisors() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(determinant(&m), BigInt::from(-144));
        let d = elementary_divisors(&m);
        assert_eq!(
            d,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert!(is_unimodular_rows(&[vec![1, 1, 0], vec![0, 1, 1]]));
        assert!(!is_unimodular_rows(&[vec![1, 1, 0], vec![1, -1, 0]]));
    }

    #[test]
    fn small_determinant_matches_bareiss() {
        let m = vec![
            vec![1, 0, 2, -1],
            vec![3, 0, 0, 5],
            vec![2, 1, 4, -3],
            vec![1, 0, 5, 0],
        ];
        assert_eq!(BigInt::from(small_determinant(&m)), determinant(&m));
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = to_rational(&[vec![2, 1], vec![1, 1]]);
        let inv = inverse(&a).unwrap();
        let expect = to_rational(&[vec![1, -1], vec![-1, 2]]);
        assert_eq!(inv, expect);
        assert!(inverse(&to_rational(&[vec![1, 2], vec![2, 4]])).is_none());
    }
}
