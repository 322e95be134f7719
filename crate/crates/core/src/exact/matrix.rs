use num_traits::{One, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "matrix entries",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[Rat]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "matrix row",
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns<C: AsRef<[Rat]>>(cols: &[C]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                what: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = Rat::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Solves `self * x = rhs`. Returns `None` when the matrix is singular.
    pub fn solve(&self, rhs: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                what: "right-hand side",
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = self
            .to_rows()
            .into_iter()
            .zip(rhs)
            .map(|(mut r, b)| {
                r.push(b.clone());
                r
            })
            .collect();
        // fraction-free forward pass
        let mut prev = Rat::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => a.swap(i, k),
                    None => return Ok(None),
                }
            }
            for i in k + 1..n {
                for j in k + 1..=n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = Rat::zero();
            }
            prev = a[k][k].clone();
        }
        let mut x = vec![Rat::zero(); n];
        for k in (0..n).rev() {
            let mut acc = a[k][n].clone();
            for j in k + 1..n {
                acc -= &a[k][j] * &x[j];
            }
            x[k] = acc / &a[k][k];
        }
        Ok(Some(x))
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    let pivot_row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let m = Self::from_rows(&a).unwrap_or_else(|_| Self::zeros(self.rows, self.cols));
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;

    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant of the square matrix whose columns are `cols`.
pub fn det_columns<C: AsRef<[Rat]>>(cols: &[C]) -> Result<Rat> {
    RatMatrix::from_columns(cols)?.det()
}

/// Affine rank of a point set: rank of the differences to the first point.
pub fn affine_rank<P: AsRef<[Rat]>>(points: &[P]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let first = first.as_ref();
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.as_ref().iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(&diffs).map_or(0, |m| m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, ratio};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        let rows: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        RatMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn det_identity_and_swaps() {
        assert_eq!(RatMatrix::identity(4).det().unwrap(), rat(1));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), rat(-1));
        assert_eq!(m(&[&[0, 0], &[1, 0]]).det().unwrap(), rat(0));
        assert_eq!(RatMatrix::zeros(0, 0).det().unwrap(), rat(1));
    }

    #[test]
    fn det_laplace_cones() {
        let a1 = [rat(0), rat(1), rat(0)];
        let a2 = [rat(1), rat(1), rat(-1)];
        let a3 = [rat(4), rat(-2), rat(-1)];
        let a4 = [rat(0), rat(0), rat(1)];
        let d1 = det_columns(&[&a1[..], &a2, &a4]).unwrap();
        let d2 = det_columns(&[&a2[..], &a3, &a4]).unwrap();
        assert_eq!(num_traits::Signed::abs(&d1), rat(1));
        assert_eq!(num_traits::Signed::abs(&d2), rat(6));
    }

    #[test]
    fn det_non_square() {
        assert!(matches!(
            RatMatrix::zeros(2, 3).det(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn solve_facet_intersections() {
        // x = 0 and 4 - 2x - y = 0
        let a = m(&[&[1, 0], &[-2, -1]]);
        let x = a.solve(&[rat(0), rat(-4)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(0), rat(4)]);
        // y = 0 and 1 + x - y = 0
        let a = m(&[&[0, 1], &[1, -1]]);
        let x = a.solve(&[rat(0), rat(-1)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(-1), rat(0)]);
    }

    #[test]
    fn solve_singular_and_identity() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).solve(&[rat(1), rat(2)]).unwrap(), None);
        let v = vec![ratio(1, 3), rat(-2), rat(5)];
        assert_eq!(RatMatrix::identity(3).solve(&v).unwrap().unwrap(), v);
        assert!(RatMatrix::identity(3).solve(&v[..2]).is_err());
    }

    #[test]
    fn nullspace_basis() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![rat(-1), rat(1), rat(0)]);
        assert_eq!(a.rank(), 2);
    }
}
