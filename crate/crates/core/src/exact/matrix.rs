use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Dense column vector of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatVector(pub Vec<Rational>);

impl RatVector {
    pub fn zeros(n: usize) -> Self {
        RatVector(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &RatVector) -> Result<Rational> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len().to_string(),
                got: other.len().to_string(),
            });
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn sub(&self, other: &RatVector) -> Result<RatVector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len().to_string(),
                got: other.len().to_string(),
            });
        }
        Ok(RatVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }
}

impl From<Vec<Rational>> for RatVector {
    fn from(v: Vec<Rational>) -> Self {
        RatVector(v)
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{ncols} columns"),
                got: format!("{} columns", bad.len()),
            });
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                got: format!("{} rows", other.rows),
            });
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RatVector) -> Result<RatVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols.to_string(),
                got: v.len().to_string(),
            });
        }
        Ok(RatVector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solves `a · x = b` exactly by Gaussian elimination with partial pivoting
/// on nonzero entries.
pub fn solve_exact(a: &RatMatrix, b: &RatVector) -> Result<RatVector> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("square matrix ({n}x{n})"),
            got: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n.to_string(),
            got: b.len().to_string(),
        });
    }

    // augmented rows [A | b]
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();

    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(col, p);
        rank += 1;
        let inv = rows[col][col].recip().expect("pivot is nonzero");
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &(&factor * p);
            }
        }
    }
    if rank < n {
        return Err(Error::SingularMatrix { rank, size: n });
    }
    Ok(RatVector(
        rows.into_iter().map(|mut r| r.pop().unwrap()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_system() {
        let b = RatVector(vec![q(1, 4), q(1, 16), q(0, 1)]);
        assert_eq!(solve_exact(&RatMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn pencil_system_at_genus_five() {
        // rows F0, G0, H0 on (lambda, alpha_0, beta_0) with beta_1 = 1/2, alpha_1 = 0
        let a = ints(&[&[1, -12, 0], &[3, -12, -12], &[0, 0, 4]]);
        let b = RatVector(vec![q(-1, 2), q(0, 1), q(0, 1)]);
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x, RatVector(vec![q(1, 4), q(1, 16), q(0, 1)]));
    }

    #[test]
    fn four_by_four_resubstitution() {
        let a = ints(&[
            &[3, -7, 2, 9],
            &[0, 5, -1, -4],
            &[-8, 1, 6, 2],
            &[4, 4, -9, 1],
        ]);
        let b = RatVector(vec![q(1, 1), q(-2, 1), q(3, 1), q(5, 1)]);
        let x = solve_exact(&a, &b).unwrap();
        assert!(a.mul_vec(&x).unwrap().sub(&b).unwrap().is_zero());
    }

    #[test]
    fn singular_and_mismatch() {
        let a = ints(&[&[1, 2], &[2, 4]]);
        let b = RatVector(vec![q(1, 1), q(2, 1)]);
        assert_eq!(
            solve_exact(&a, &b),
            Err(Error::SingularMatrix { rank: 1, size: 2 })
        );
        let rect = ints(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(
            solve_exact(&rect, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            solve_exact(&RatMatrix::identity(3), &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_leading_pivot_needs_swap() {
        let a = ints(&[&[0, 1], &[1, 0]]);
        let b = RatVector(vec![q(2, 1), q(3, 1)]);
        assert_eq!(
            solve_exact(&a, &b).unwrap(),
            RatVector(vec![q(3, 1), q(2, 1)])
        );
    }

    fn arb_system(n: usize) -> impl Strategy<Value = (RatMatrix, RatVector)> {
        (
            prop::collection::vec(-9i64..=9, n * n),
            prop::collection::vec((-20i64..20, 1i64..8), n),
        )
            .prop_map(move |(entries, xs)| {
                let rows = entries
                    .chunks(n)
                    .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                    .collect();
                let x = RatVector(xs.into_iter().map(|(p, d)| q(p, d)).collect());
                (RatMatrix::from_rows(rows).unwrap(), x)
            })
    }

    proptest! {
        #[test]
        fn solve_round_trip((a, x) in arb_system(4)) {
            let b = a.mul_vec(&x).unwrap();
            match solve_exact(&a, &b) {
                Ok(y) => prop_assert_eq!(y, x),
                Err(Error::SingularMatrix { .. }) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
