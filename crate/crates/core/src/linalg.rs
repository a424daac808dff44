//! Small dense matrices over `F_p` with Gaussian elimination.

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeModulus};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: PrimeModulus,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, modulus: PrimeModulus) -> Self {
        Matrix {
            rows,
            cols,
            modulus,
            data: vec![modulus.zero(); rows * cols],
        }
    }

    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::param("ragged matrix rows"));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            for &x in row {
                if x.modulus() != modulus {
                    return Err(Error::ModulusMismatch(modulus.value(), x.modulus().value()));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            modulus,
            data,
        })
    }

    /// The `len(points) x width` power matrix with entry `(mu, nu) = x_mu^nu`.
    pub fn powers(points: &[FieldElement], width: usize, modulus: PrimeModulus) -> Self {
        let mut m = Matrix::zeros(points.len(), width, modulus);
        for (i, &x) in points.iter().enumerate() {
            let mut acc = modulus.one();
            for k in 0..width {
                m.data[i * width + k] = acc;
                acc = acc * x;
            }
        }
        m
    }

    /// Entry `(mu, nu) = x_mu^{exponents[nu]}`.
    pub fn generalized_powers(
        points: &[FieldElement],
        exponents: &[u64],
        modulus: PrimeModulus,
    ) -> Self {
        let mut m = Matrix::zeros(points.len(), exponents.len(), modulus);
        for (i, &x) in points.iter().enumerate() {
            for (k, &e) in exponents.iter().enumerate() {
                m.data[i * exponents.len() + k] = x.pow(e);
            }
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduces in place to reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, piv);
            let inv = self.get(row, col).inverse().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(row, c) * inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c) - f * self.get(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// True iff the unit vector `e_j` lies in the row space.
    ///
    /// After RREF, a vector is in the row space iff it equals the combination of
    /// pivot rows weighted by its pivot-column entries; for `e_j` that means `j`
    /// is a pivot column whose row is exactly `e_j`.
    pub fn row_space_contains_unit(&self, j: usize) -> bool {
        assert!(j < self.cols, "column index out of range");
        let mut m = self.clone();
        let pivots = m.rref();
        let Some(row) = pivots.iter().position(|&c| c == j) else {
            return false;
        };
        (0..m.cols).all(|c| c == j || m.get(row, c).is_zero())
    }

    pub fn determinant(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::param(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut m = self.clone();
        let mut det = self.modulus.one();
        for col in 0..m.cols {
            let Some(piv) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(self.modulus.zero());
            };
            if piv != col {
                m.swap_rows(col, piv);
                det = -det;
            }
            let pv = m.get(col, col);
            det = det * pv;
            let inv = pv.inverse().expect("pivot is nonzero");
            for r in col + 1..m.rows {
                let f = m.get(r, col) * inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - f * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Solves `M x = rhs` for square non-singular `M`; `None` if singular.
    pub fn solve(&self, rhs: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if self.rows != self.cols || rhs.len() != self.rows {
            return Err(Error::param(
                "solve needs a square system with matching rhs",
            ));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1, self.modulus);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n, rhs[r]);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some((0..n).map(|r| aug.get(r, n)).collect()))
    }
}
