//! Dense exact linear algebra over Q(ζ_l).
//!
//! Elimination always takes the first nonzero entry as pivot. Over an exact
//! field there is nothing to stabilize, and a fixed pivot rule keeps every
//! downstream selection reproducible.

use std::fmt;

use super::{Cyclotomic, Rational};
use crate::error::{Error, Result};

pub type Vector = Vec<Cyclotomic>;

pub fn zero_vector(order: u32, len: usize) -> Vector {
    vec![Cyclotomic::zero(order); len]
}

pub fn is_zero_vector(v: &[Cyclotomic]) -> bool {
    v.iter().all(Cyclotomic::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Cyclotomic], c: &Cyclotomic, v: &[Cyclotomic]) {
    if c.is_zero() {
        return;
    }
    if let Some(r) = c.as_rational() {
        let r = r.clone();
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                a.add_scaled(x, &r);
            }
        }
    } else {
        for (a, x) in acc.iter_mut().zip(v) {
            a.add_mul(c, x);
        }
    }
}

pub fn scale_vector(v: &[Cyclotomic], c: &Cyclotomic) -> Vector {
    v.iter().map(|x| x * c).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: Vec<Cyclotomic>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        ExactMatrix {
            rows,
            cols,
            order,
            entries: vec![Cyclotomic::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.entries[i * n + i] = Cyclotomic::one(order);
        }
        m
    }

    pub fn from_rows(order: u32, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|x| x.order() != order) {
                return Err(Error::OrderMismatch(order, bad.order()));
            }
            entries.extend(row);
        }
        Ok(ExactMatrix {
            rows: n,
            cols,
            order,
            entries,
        })
    }

    pub fn from_columns(order: u32, rows: usize, cols: Vec<Vector>) -> Result<Self> {
        let n = cols.len();
        let mut m = Self::zeros(rows, n, order);
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    col.len()
                )));
            }
            for (i, x) in col.into_iter().enumerate() {
                if x.order() != order {
                    return Err(Error::OrderMismatch(order, x.order()));
                }
                m.entries[i * n + j] = x;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Cyclotomic) {
        debug_assert_eq!(x.order(), self.order);
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.entries)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.order);
        for i in 0..self.rows {
            let acc = &mut out.entries[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                axpy(acc, self.get(i, k), other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Cyclotomic::zero(self.order);
                for (a, x) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, x);
                }
                acc
            })
            .collect())
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for x in &mut m.entries[r * m.cols..(r + 1) * m.cols] {
                *x = &*x * &inv;
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = -m.get(i, c);
                    let cols = m.cols;
                    axpy(&mut m.entries[i * cols..(i + 1) * cols], &f, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.order, self.cols);
        for i in 0..self.rows {
            basis.insert(self.row(i).to_vec());
        }
        basis.rank()
    }

    /// Exact rank and a basis of the right kernel {x : Mx = 0}.
    pub fn rank_kernel(&self) -> (usize, Vec<Vector>) {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&fc| {
                let mut v = zero_vector(self.order, self.cols);
                v[fc] = Cyclotomic::one(self.order);
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, fc);
                }
                v
            })
            .collect();
        (pivots.len(), kernel)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over Q(z_{})", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A row space built one vector at a time.
///
/// Stored rows have a leading 1 at distinct pivot columns and every stored row
/// vanishes at the pivots of the rows inserted before it, so a single pass in
/// insertion order reduces any vector.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    order: u32,
    len: usize,
    rows: Vec<(usize, Vector)>,
}

impl EchelonBasis {
    pub fn new(order: u32, len: usize) -> Self {
        EchelonBasis {
            order,
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` is in
    /// the span.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = -&v[*p];
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> bool {
        is_zero_vector(&self.reduce(v.to_vec()))
    }

    /// Adds `v` if it is independent of the stored rows; returns whether it was.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

/// Indices of the vectors kept by a left-to-right scan that keeps a vector iff
/// it is independent of those already kept.
pub fn greedy_max_independent(vectors: &[Vector]) -> Vec<usize> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let order = first.first().map(Cyclotomic::order).unwrap_or(1);
    let mut basis = EchelonBasis::new(order, first.len());
    vectors
        .iter()
        .enumerate()
        .filter_map(|(i, v)| basis.insert(v.clone()).then_some(i))
        .collect()
}

/// Coordinates with respect to a fixed, linearly independent family.
///
/// Each stored echelon row remembers which combination of the family produced
/// it, so a solve is one reduction pass plus a combination of those records.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    order: u32,
    family_len: usize,
    rows: Vec<(usize, Vector, Vector)>,
}

impl CoordinateSolver {
    /// Fails if the family is linearly dependent.
    pub fn new(order: u32, len: usize, family: &[Vector]) -> Result<Self> {
        let n = family.len();
        let mut rows: Vec<(usize, Vector, Vector)> = Vec::with_capacity(n);
        for (idx, v) in family.iter().enumerate() {
            if v.len() != len {
                return Err(Error::DimensionMismatch("family vector length".into()));
            }
            let mut v = v.clone();
            let mut comb = zero_vector(order, n);
            comb[idx] = Cyclotomic::one(order);
            for (p, row, rc) in &rows {
                if !v[*p].is_zero() {
                    let f = -&v[*p];
                    axpy(&mut v, &f, row);
                    axpy(&mut comb, &f, rc);
                }
            }
            let Some(p) = v.iter().position(|x| !x.is_zero()) else {
                return Err(Error::Internal("coordinate family is dependent".into()));
            };
            let inv = v[p].inv()?;
            v = scale_vector(&v, &inv);
            comb = scale_vector(&comb, &inv);
            rows.push((p, v, comb));
        }
        Ok(CoordinateSolver {
            order,
            family_len: n,
            rows,
        })
    }

    /// Coefficients c with Σ c_i family_i = target, or `None` if the target is
    /// outside the span.
    pub fn solve(&self, target: &[Cyclotomic]) -> Option<Vector> {
        let mut v = target.to_vec();
        let mut coords = zero_vector(self.order, self.family_len);
        for (p, row, comb) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                let neg = -&f;
                axpy(&mut v, &neg, row);
                axpy(&mut coords, &f, comb);
            }
        }
        is_zero_vector(&v).then_some(coords)
    }
}

/// Embeds a rational vector into Q(ζ_l).
pub fn embed(order: u32, v: &[Rational]) -> Vector {
    v.iter().map(|r| Cyclotomic::from_rational(order, r.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(order: u32, n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(order, n)
    }

    fn ints(order: u32, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(order, x)).collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = ExactMatrix::identity(2, 1).rank_kernel();
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn proportional_cyclotomic_rows() {
        let w = Cyclotomic::zeta_pow(3, 1);
        let w2 = Cyclotomic::zeta_pow(3, 2);
        let m = ExactMatrix::from_rows(3, 2, vec![vec![q(3, 1), w.clone()], vec![w2.clone(), q(3, 1)]]).unwrap();
        let (r, k) = m.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        assert!(is_zero_vector(&m.mul_vec(&k[0]).unwrap()));
    }

    #[test]
    fn greedy_examples() {
        let v = |xs: &[i64]| ints(1, xs);
        assert_eq!(
            greedy_max_independent(&[v(&[1, 0]), v(&[2, 0]), v(&[0, 1])]),
            vec![0, 2]
        );
        assert_eq!(greedy_max_independent(&[v(&[0, 0]), v(&[1, 1])]), vec![1]);
        // the first of two proportional vectors wins
        let a = v(&[1, 2]);
        let b = v(&[3, 6]);
        assert_eq!(greedy_max_independent(&[a.clone(), b.clone()]), vec![0]);
        assert_eq!(greedy_max_independent(&[b, a]), vec![0]);
    }

    #[test]
    fn coordinate_solver() {
        let fam = vec![ints(1, &[1, 1, 0]), ints(1, &[0, 1, 1])];
        let s = CoordinateSolver::new(1, 3, &fam).unwrap();
        assert_eq!(s.solve(&ints(1, &[2, 5, 3])).unwrap(), ints(1, &[2, 3]));
        assert!(s.solve(&ints(1, &[1, 0, 0])).is_none());
        assert!(CoordinateSolver::new(1, 3, &[ints(1, &[1, 1, 0]), ints(1, &[2, 2, 0])]).is_err());
    }

    fn matrix() -> impl Strategy<Value = ExactMatrix> {
        (
            1usize..5,
            1usize..5,
            prop_oneof![Just(1u32), Just(3), Just(5)],
            0usize..3,
        )
            .prop_flat_map(|(r, c, l, rank_cap)| {
                let phi = if l == 1 { 1 } else { l as usize - 1 };
                proptest::collection::vec(-3i64..4, r * c * phi).prop_map(move |xs| {
                    let mut it = xs.into_iter();
                    let mut rows: Vec<Vector> = (0..r)
                        .map(|_| {
                            (0..c)
                                .map(|_| {
                                    let cs: Vec<Rational> = (0..phi).map(|_| it.next().unwrap().into()).collect();
                                    Cyclotomic::from_coeffs(l, &cs).unwrap()
                                })
                                .collect()
                        })
                        .collect();
                    // force some dependence: later rows copy combinations of early ones
                    for i in (rank_cap + 1)..r {
                        let z = Cyclotomic::zeta_pow(l, i as i64);
                        rows[i] = scale_vector(&rows[i % (rank_cap + 1)], &z);
                    }
                    ExactMatrix::from_rows(l, c, rows).unwrap()
                })
            })
    }

    /// Numerical rank of the complex embedding by Gaussian elimination with a
    /// magnitude threshold.
    fn float_rank(m: &ExactMatrix) -> usize {
        let mut a: Vec<Vec<(f64, f64)>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(Cyclotomic::to_complex).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len())
                .max_by(|&x, &y| {
                    let nx = a[x][c].0.hypot(a[x][c].1);
                    let ny = a[y][c].0.hypot(a[y][c].1);
                    nx.partial_cmp(&ny).unwrap()
                })
                .filter(|&p| a[p][c].0.hypot(a[p][c].1) > 1e-8)
            else {
                continue;
            };
            a.swap(rank, p);
            let (pr, pi) = a[rank][c];
            let den = pr * pr + pi * pi;
            for i in (rank + 1)..a.len() {
                let (xr, xi) = a[i][c];
                let fr = (xr * pr + xi * pi) / den;
                let fi = (xi * pr - xr * pi) / den;
                for j in c..m.cols() {
                    let (yr, yi) = a[rank][j];
                    a[i][j].0 -= fr * yr - fi * yi;
                    a[i][j].1 -= fr * yi + fi * yr;
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel(m in matrix()) {
            let (r, kernel) = m.rank_kernel();
            prop_assert_eq!(r + kernel.len(), m.cols());
            prop_assert_eq!(r, m.rank());
            for k in &kernel {
                prop_assert!(is_zero_vector(&m.mul_vec(k).unwrap()));
            }
            prop_assert_eq!(greedy_max_independent(&m.row_vectors()).len(), r);
            prop_assert!(float_rank(&m) <= r);
        }
    }
}
