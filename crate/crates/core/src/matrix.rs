//! Small dense matrices over a [`Field`].

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        DenseMatrix { field: field.clone(), rows, cols, data: alloc::vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = DenseMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// The matrix unit `E_{ij}` (zero-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = DenseMatrix::zero(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(DenseMatrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    fn same_shape(&self, o: &Self) -> Result<(), Error> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(alloc::format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, Error> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(DenseMatrix { data, ..self.clone() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, Error> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Ok(DenseMatrix { data, ..self.clone() })
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, k)).collect();
        DenseMatrix { data, ..self.clone() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, Error> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(alloc::format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let f = &self.field;
        let mut out = DenseMatrix::zero(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let s = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, s);
                }
            }
        }
        Ok(out)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Scalar, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(a.get(r, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = a.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv)?;
            for r in c + 1..n {
                let x = a.get(r, c).clone();
                if f.is_zero(&x) {
                    continue;
                }
                let k = f.mul(&x, &inv);
                for j in c..n {
                    let v = f.sub(a.get(r, j), &f.mul(&k, a.get(c, j)));
                    a.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut b = DenseMatrix::identity(f, n);
        for c in 0..n {
            let p = (c..n).find(|&r| !f.is_zero(a.get(r, c))).ok_or(Error::DivisionByZero)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    b.data.swap(p * n + j, c * n + j);
                }
            }
            let inv = f.inv(a.get(c, c))?;
            for j in 0..n {
                a.set(c, j, f.mul(a.get(c, j), &inv));
                b.set(c, j, f.mul(b.get(c, j), &inv));
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let k = a.get(r, c).clone();
                if f.is_zero(&k) {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), &f.mul(&k, a.get(c, j))));
                    b.set(r, j, f.sub(b.get(r, j), &f.mul(&k, b.get(c, j))));
                }
            }
        }
        Ok(b)
    }

    /// Rows as rendered strings, for reports.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.field.render(self.get(i, j))).collect()).collect()
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.render_rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(rows: &[&[i64]]) -> DenseMatrix {
        let f = Field::rationals();
        DenseMatrix::from_rows(&f, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), Field::rationals().from_i64(18));
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
        assert_eq!(q(&[&[0, 1], &[1, 0]]).det().unwrap(), Field::rationals().from_i64(-1));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(&[&[1, 0], &[2, 1]]).to_string(), "[[1, 0], [2, 1]]");
    }
}
