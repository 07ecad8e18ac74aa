//! Exact linear algebra: reduced row echelon form over the rationals and
//! Hermite normal form over the integers. Small and dense is all the engines
//! need; no pivot-size heuristics, everything is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Rat;
use crate::{Error, Result};

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::domain("matrix needs at least one row"));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(Error::domain("matrix needs at least one column"));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged rows in matrix"));
        }
        Ok(Mat { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rat::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rat::one();
        }
        Mat { rows: n, cols: n, data }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// columns in order; their count is the rank. Pivot choice is the first
    /// row with a nonzero entry, so the result is deterministic.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.at(r, c).recip();
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j) - &(&f * self.at(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat { rows: n, cols: 2 * n, data: vec![Rat::zero(); n * 2 * n] };
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = Mat { rows: n, cols: n, data: vec![Rat::zero(); n * n] };
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.at(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel {x : Ax = 0}, one vector per free column,
    /// in ascending free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut red = self.clone();
        let pivots = red.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red.at(row, f);
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.cols {
            return Err(Error::domain("vector length does not match matrix width"));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---- Integer vector helpers ----

/// Gcd of all entries; zero for the all-zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Divides out the content, preserving direction. All-zero stays all-zero.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&v);
    if !c.is_zero() {
        for x in &mut v {
            *x /= &c;
        }
    }
    v
}

/// Primitive vector with the first nonzero entry positive. Used where a line
/// rather than a direction is meant (hyperplane normals, kernel vectors).
pub fn sign_canonical_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = primitive(v);
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut v {
                *x = -&*x;
            }
        }
    }
    v
}

/// Basis of the integer kernel {x in Z^n : Ax = 0} of an integer matrix,
/// each vector primitive and sign-canonical. Spans the same space as the
/// rational kernel.
pub fn integer_kernel(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let rat_rows: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_int(x.clone())).collect())
        .collect();
    let m = Mat::from_rows(rat_rows)?;
    Ok(m.kernel_basis()
        .into_iter()
        .map(|v| {
            let lcm = v
                .iter()
                .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect();
            sign_canonical_primitive(ints)
        })
        .collect())
}

/// Euclidean floor division: quotient q with n - q*d in [0, |d|).
fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    if r.is_negative() {
        if d.is_positive() {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}

/// Row-style Hermite normal form of the lattice spanned by the given rows.
///
/// The result is in row echelon shape with positive pivots, entries above
/// each pivot reduced into [0, pivot), and zero rows dropped. Two generating
/// sets span the same lattice exactly when their forms are equal.
pub fn row_hnf(rows: Vec<Vec<BigInt>>) -> Result<Vec<Vec<BigInt>>> {
    if rows.is_empty() {
        return Err(Error::domain("Hermite form of an empty generating set"));
    }
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::domain("ragged rows in lattice generators"));
    }
    let mut work = rows;
    let mut r = 0;
    for col in 0..n {
        loop {
            // Smallest nonzero magnitude in this column at or below r.
            let pivot = (r..work.len())
                .filter(|&i| !work[i][col].is_zero())
                .min_by_key(|&i| work[i][col].abs());
            let Some(p) = pivot else {
                break;
            };
            work.swap(r, p);
            let mut done = true;
            for i in r + 1..work.len() {
                if !work[i][col].is_zero() {
                    let q = floor_div(&work[i][col], &work[r][col]);
                    for j in 0..n {
                        let sub = &q * &work[r][j];
                        work[i][j] -= sub;
                    }
                    if !work[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                if work[r][col].is_negative() {
                    for x in &mut work[r] {
                        *x = -&*x;
                    }
                }
                for i in 0..r {
                    let q = floor_div(&work[i][col], &work[r][col]);
                    if !q.is_zero() {
                        for j in 0..n {
                            let sub = &q * &work[r][j];
                            work[i][j] -= sub;
                        }
                    }
                }
                r += 1;
                break;
            }
        }
        if r == work.len() {
            break;
        }
    }
    work.truncate(r);
    Ok(work)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rref_finds_rank_and_pivots_of_a_singular_matrix() {
        let mut m = Mat::from_rows(vec![rv(&[1, 2, 3]), rv(&[2, 4, 6]), rv(&[1, 0, 1])]).unwrap();
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1], "third row is dependent");
        assert_eq!(m.at(0, 0), &Rat::one());
        assert!(m.row(2).iter().all(|x| x.is_zero()), "dependent row must clear");
    }

    #[test]
    fn inverse_round_trips_on_a_generic_matrix() {
        let m = Mat::from_rows(vec![rv(&[2, 1, 0]), rv(&[1, 3, 1]), rv(&[0, 1, 1])]).unwrap();
        let inv = m.inverse().expect("matrix is invertible");
        for i in 0..3 {
            let e: Vec<Rat> = (0..3)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect();
            let col: Vec<Rat> = (0..3).map(|k| inv.at(k, i).clone()).collect();
            assert_eq!(m.mul_vec(&col).unwrap(), e, "column {i} of the inverse is off");
        }
        assert!(
            Mat::from_rows(vec![rv(&[1, 2]), rv(&[2, 4])]).unwrap().inverse().is_none(),
            "singular matrix must have no inverse"
        );
    }

    #[test]
    fn kernel_vectors_annihilate_the_matrix() {
        let m = Mat::from_rows(vec![rv(&[1, 2, 3, 4]), rv(&[0, 1, 1, 1])]).unwrap();
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2, "4 columns minus rank 2");
        for v in &basis {
            let img = m.mul_vec(v).unwrap();
            assert!(img.iter().all(|x| x.is_zero()), "kernel vector maps to nonzero");
        }
    }

    #[test]
    fn integer_kernel_is_primitive_and_sign_fixed() {
        let rows = vec![iv(&[2, -4, 2])];
        let k = integer_kernel(&rows).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(content(v), BigInt::from(1), "kernel vector not primitive: {v:?}");
            assert!(
                v.iter().find(|x| !x.is_zero()).unwrap() > &BigInt::zero(),
                "leading sign must be positive"
            );
        }
    }

    #[test]
    fn hnf_is_invariant_under_generator_shuffling() {
        let a = row_hnf(vec![iv(&[2, 1]), iv(&[0, 3])]).unwrap();
        let b = row_hnf(vec![iv(&[2, 4]), iv(&[2, 1]), iv(&[4, 5])]).unwrap();
        assert_eq!(a, b, "same lattice, different generators");
        assert_eq!(a, vec![iv(&[2, 1]), iv(&[0, 3])]);
    }

    #[test]
    fn hnf_recognizes_a_diagonal_lattice() {
        let h = row_hnf(vec![
            iv(&[60, 0]),
            iv(&[0, 12]),
            iv(&[60, 12]),
            iv(&[120, 24]),
        ])
        .unwrap();
        assert_eq!(h, vec![iv(&[60, 0]), iv(&[0, 12])]);
    }

    #[test]
    fn hnf_handles_negative_and_dependent_rows() {
        let h = row_hnf(vec![iv(&[-3, 0, 0]), iv(&[6, 0, 0]), iv(&[0, 0, 5])]).unwrap();
        assert_eq!(h, vec![iv(&[3, 0, 0]), iv(&[0, 0, 5])]);
    }

    #[test]
    fn primitive_preserves_direction_and_canonical_fixes_sign() {
        assert_eq!(primitive(iv(&[-4, -6])), iv(&[-2, -3]));
        assert_eq!(sign_canonical_primitive(iv(&[-4, -6])), iv(&[2, 3]));
        assert_eq!(primitive(iv(&[0, 0])), iv(&[0, 0]));
    }
}
