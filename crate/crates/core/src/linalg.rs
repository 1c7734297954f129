//! Dense exact vectors, matrices and polynomials over Q(√5).

use std::fmt;
use std::ops::{Index, Mul, Neg};

use crate::arith::FieldElement;
use crate::error::{Error, Result};

/// A coordinate vector in the ambient space.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Vector(pub Vec<FieldElement>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![FieldElement::zero(); dim])
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| FieldElement::from_integer(c)).collect())
    }

    /// Unit vector `e_i` (zero based) in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.0[i] = FieldElement::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    /// The standard form `(x, y) = Σ xᶦyᶦ`.
    pub fn dot(&self, other: &Vector) -> FieldElement {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElement::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &FieldElement) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    /// True if `self` and `other` are linearly dependent.
    pub fn is_collinear(&self, other: &Vector) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let minor = &self.0[i] * &other.0[j] - &self.0[j] * &other.0[i];
                if !minor.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Zero-pads `self` into a larger space starting at coordinate `offset`.
    pub fn embed(&self, dim: usize, offset: usize) -> Vector {
        let mut v = Vector::zeros(dim);
        v.0[offset..offset + self.dim()].clone_from_slice(&self.0);
        v
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl Index<usize> for Vector {
    type Output = FieldElement;
    fn index(&self, i: usize) -> &FieldElement {
        &self.0[i]
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vector::dim);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..r {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, FieldElement::from_integer(e));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: FieldElement) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.dim());
        Vector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn pow(&self, mut exp: u32) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> FieldElement {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return FieldElement::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = FieldElement::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return FieldElement::zero();
                };
                m.swap_rows(k, p);
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            let prev_inv = prev.inverse().expect("Bareiss pivot is nonzero");
            for i in k + 1..n {
                let lead = m.get(i, k).clone();
                for j in k + 1..n {
                    let v = &(&(m.get(i, j) * &pivot) - &(&lead * m.get(k, j))) * &prev_inv;
                    m.set(i, j, v);
                }
                m.set(i, k, FieldElement::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !m.get(i, k).is_zero()).ok_or(Error::DivisionByZero)?;
            m.swap_rows(k, p);
            inv.swap_rows(k, p);
            let s = m.get(k, k).inverse()?;
            for j in 0..n {
                m.set(k, j, m.get(k, j) * &s);
                inv.set(k, j, inv.get(k, j) * &s);
            }
            for i in 0..n {
                if i == k || m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k).clone();
                for j in 0..n {
                    m.set(i, j, m.get(i, j) - &(&f * m.get(k, j)));
                    inv.set(i, j, inv.get(i, j) - &(&f * inv.get(k, j)));
                }
            }
        }
        Ok(inv)
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let s = m.get(row, col).inverse().expect("nonzero pivot");
            for j in 0..self.cols {
                m.set(row, j, m.get(row, j) * &s);
            }
            for i in 0..self.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let f = m.get(i, col).clone();
                    for j in 0..self.cols {
                        m.set(i, j, m.get(i, j) - &(&f * m.get(row, j)));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = Vector::zeros(self.cols);
                v.0[fc] = FieldElement::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v.0[pc] = -m.get(r, fc);
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.cols - self.kernel().len()
    }

    /// Monic characteristic polynomial `det(tI − M)`.
    ///
    /// Evaluated exactly at `t = 0, 1, −1, 2, −2, …` and interpolated.
    pub fn char_poly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let points: Vec<FieldElement> = (0..=n as i64)
            .map(|i| FieldElement::from_integer(if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) }))
            .collect();
        let values: Vec<FieldElement> = points
            .iter()
            .map(|t| Matrix::identity(n).scale(t).sub(self).det())
            .collect();
        let p = Poly::interpolate(&points, &values);
        debug_assert!(p.degree() == Some(n) && p.leading().is_one());
        p
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimensions do not match");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.data[i * rhs.cols + j];
                        out.data[i * rhs.cols + j] = cur + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&FieldElement::from_integer(-1))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Polynomial in `t` with coefficients listed from the constant term up.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly(Vec<FieldElement>);

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| FieldElement::from_integer(c)).collect())
    }

    pub fn one() -> Self {
        Poly(vec![FieldElement::one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, t: &FieldElement) -> FieldElement {
        self.0.iter().rev().fold(FieldElement::zero(), |acc, c| &(&acc * t) + c)
    }

    pub fn scale(&self, s: &FieldElement) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    /// Lagrange interpolation through `(points[i], values[i])` via Newton's
    /// divided differences.
    pub fn interpolate(points: &[FieldElement], values: &[FieldElement]) -> Poly {
        assert_eq!(points.len(), values.len());
        let n = points.len();
        let mut dd = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i] - &points[i - level];
                dd[i] = &num / &den;
            }
        }
        let mut p = Poly::new(Vec::new());
        for k in (0..n).rev() {
            let linear = Poly::new(vec![-&points[k], FieldElement::one()]);
            p = &(&p * &linear) + &Poly(vec![dd[k].clone()]);
        }
        p
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut out = vec![FieldElement::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let zero = FieldElement::zero();
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_rational() && c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            match (deg, mag.is_one()) {
                (0, _) => f.write_str(&coeff)?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{coeff}t")?,
                (_, true) => write!(f, "t^{deg}")?,
                (_, false) => write!(f, "{coeff}t^{deg}")?,
            }
        }
        Ok(())
    }
}
