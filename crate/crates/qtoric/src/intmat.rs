//! Dense integer matrices with exact arithmetic: Smith normal form,
//! integral linear solves, cokernel presentations, and fraction-free
//! determinants. Everything downstream (ring reduction, ideal membership,
//! smoothness checks) is built on the primitives in this module.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Row-major matrix over the integers. Dimensions may be zero.
#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, big(*v));
            }
        }
        m
    }

    /// Build from column vectors (each of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = IMat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column of wrong height");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, c).clone()).collect()
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + lik * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// Keep only the listed columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> IMat {
        let mut out = IMat::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, j, self.at(i, c).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + q * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, dst) + q * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.at(r, j);
            self.set(r, j, v);
        }
    }

    /// Exact determinant of a square matrix (fraction-free Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        sign * a.at(n - 1, n - 1)
    }

    /// Inverse of a matrix with determinant ±1, via the adjugate.
    pub fn inverse_unimodular(&self) -> Option<IMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let d = self.det();
        if !(&d).abs().is_one() {
            return None;
        }
        let mut inv = IMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // cofactor expansion: inv[j][i] = (-1)^{i+j} * minor(i, j) / det
                let minor = self.minor(i, j).det();
                let c = if (i + j) % 2 == 0 { minor } else { -minor };
                inv.set(j, i, &c * &d); // dividing by ±1 == multiplying
            }
        }
        Some(inv)
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> IMat {
        let mut out = IMat::zeros(self.rows - 1, self.cols - 1);
        let mut ri = 0;
        for i in 0..self.rows {
            if i == skip_r {
                continue;
            }
            let mut ci = 0;
            for j in 0..self.cols {
                if j == skip_c {
                    continue;
                }
                out.set(ri, ci, self.at(i, j).clone());
                ci += 1;
            }
            ri += 1;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

impl std::fmt::Debug for IMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form `U * A * V = D` with `D` diagonal, entries non-negative
/// and each dividing the next.
pub struct Snf {
    pub d: Vec<BigInt>,
    pub rank: usize,
    pub u: IMat,
    pub v: IMat,
}

pub fn snf(a: &IMat) -> Snf {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut u = IMat::identity(rows);
    let mut v = IMat::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // locate a pivot of minimal absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m.at(i, j).is_zero()
                    && pivot.is_none_or(|(pi, pj)| m.at(i, j).abs() < m.at(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap_rows(t, pi);
        u.swap_rows(t, pi);
        m.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            // clear column t with euclidean row steps
            let mut dirty = false;
            for i in t + 1..rows {
                if m.at(i, t).is_zero() {
                    continue;
                }
                let q = -(m.at(i, t) / m.at(t, t));
                m.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !m.at(i, t).is_zero() {
                    m.swap_rows(i, t);
                    u.swap_rows(i, t);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for j in t + 1..cols {
                if m.at(t, j).is_zero() {
                    continue;
                }
                let q = -(m.at(t, j) / m.at(t, t));
                m.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !m.at(t, j).is_zero() {
                    m.swap_cols(j, t);
                    v.swap_cols(j, t);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot divides the rest of its row and column; enforce the
            // divisibility chain on the trailing block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(m.at(i, j) % m.at(t, t)).is_zero());
            match offender {
                Some((i, _)) => {
                    m.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if m.at(t, t).is_negative() {
            m.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let d: Vec<BigInt> = (0..rows.min(cols)).map(|i| m.at(i, i).clone()).collect();
    let rank = d.iter().filter(|x| !x.is_zero()).count();
    Snf { d, rank, u, v }
}

/// Cokernel of `A` as a map into Z^rows: free rank plus the torsion
/// coefficients (diagonal entries > 1, in divisibility order).
pub fn cokernel(a: &IMat) -> (usize, Vec<BigInt>) {
    cokernel_parts(a.rows, &snf(a))
}

/// Cokernel data from a precomputed SNF of a matrix with `rows` rows.
pub fn cokernel_parts(rows: usize, s: &Snf) -> (usize, Vec<BigInt>) {
    let torsion: Vec<BigInt> =
        s.d.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect();
    (rows - s.rank, torsion)
}

/// One integral solution `x` of `A x = b`, if any exists.
pub fn solve(a: &IMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let s = snf(a);
    solve_with(a, &s, b)
}

/// Same as [`solve`] but reusing a precomputed SNF of `a`.
pub fn solve_with(a: &IMat, s: &Snf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = num_integer::Integer::div_rem(ubi, &s.d[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_of_known_matrix() {
        // 4x4 example with invariant factors (1, 3, 21, 0)
        let a = IMat::from_rows_i64(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let s = snf(&a);
        assert_eq!(s.d, vec![big(1), big(3), big(21), big(0)]);
        assert_eq!(s.rank, 3);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { s.d[i].clone() } else { BigInt::zero() };
                assert_eq!(*d.at(i, j), expect);
            }
        }
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
    }

    #[test]
    fn snf_handles_empty_and_zero() {
        let a = IMat::zeros(3, 0);
        let s = snf(&a);
        assert_eq!(s.rank, 0);
        assert_eq!(cokernel(&a), (3, vec![]));

        let z = IMat::zeros(2, 3);
        assert_eq!(cokernel(&z), (2, vec![]));
    }

    #[test]
    fn solve_round_trip() {
        let a = IMat::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let x = vec![big(3), big(-1), big(2)];
        let b = a.mul_vec(&x);
        let got = solve(&a, &b).expect("solvable");
        assert_eq!(a.mul_vec(&got), b);
    }

    #[test]
    fn solve_detects_non_integral() {
        // 2x = 1 has no integer solution
        let a = IMat::from_rows_i64(&[vec![2]]);
        assert!(solve(&a, &[big(1)]).is_none());
        assert_eq!(solve(&a, &[big(6)]), Some(vec![big(3)]));
    }

    #[test]
    fn det_and_inverse() {
        let a = IMat::from_rows_i64(&[vec![2, 3], vec![3, 5]]);
        assert_eq!(a.det(), big(1));
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv), IMat::identity(2));
        assert_eq!(inv.mul(&a), IMat::identity(2));

        let b = IMat::from_rows_i64(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(b.det(), big(2));
        assert!(b.inverse_unimodular().is_none());
    }

    #[test]
    fn det_of_singular_and_empty() {
        let a = IMat::from_rows_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.det(), big(0));
        assert_eq!(IMat::zeros(0, 0).det(), big(1));
    }
}
