use num_traits::{One, Zero};

use super::{ExactNumError, Frac, Int, IntMat};

/// Dense matrix over the rationals; entries are always reduced fractions.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Frac>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Frac::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Frac::one());
        }
        m
    }

    pub fn from_int(m: &IntMat) -> Self {
        let mut out = RatMat::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, Frac::from_integer(m.at(i, j).clone()));
            }
        }
        out
    }

    pub fn from_shape(rows: usize, cols: usize, entries: Vec<Frac>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMat {
            rows,
            cols,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Frac {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Frac) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<Frac> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in multiplication");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.at(k, j);
                    let cur = out.at(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RatMat::from_shape(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> RatMat {
        RatMat::from_shape(self.rows, self.cols, self.data.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Frac) -> RatMat {
        RatMat::from_shape(self.rows, self.cols, self.data.iter().map(|a| a * c).collect())
    }

    /// Exact inverse via Gauss-Jordan elimination. `None` if singular.
    pub fn inverse(&self) -> Option<RatMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let x = a.at(col, j).clone();
                    let y = a.at(pivot, j).clone();
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let x = inv.at(col, j).clone();
                    let y = inv.at(pivot, j).clone();
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let p = a.at(col, col).clone();
            for j in 0..n {
                let v = a.at(col, j) / &p;
                a.set(col, j, v);
                let v = inv.at(col, j) / &p;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j) - &f * a.at(col, j);
                    a.set(r, j, v);
                    let v = inv.at(r, j) - &f * inv.at(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> Int {
        let mut l = Int::one();
        for e in &self.data {
            l = num_integer::Integer::lcm(&l, e.denom());
        }
        l
    }

    /// Scales by `c` and converts; panics if any entry is non-integral after
    /// scaling, so call with a multiple of `denominator_lcm`.
    pub fn scaled_to_int(&self, c: &Int) -> IntMat {
        let mut out = IntMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.at(i, j) * Frac::from_integer(c.clone());
                assert!(v.is_integer(), "entry did not clear denominator");
                out.set(i, j, v.to_integer());
            }
        }
        out
    }

    /// Exact conversion; errors if any entry has a denominator.
    pub fn to_int(&self) -> Result<IntMat, ExactNumError> {
        if self.data.iter().any(|e| !e.is_integer()) {
            return Err(ExactNumError::DimensionMismatch(
                "matrix has non-integral entries".into(),
            ));
        }
        Ok(self.scaled_to_int(&Int::one()))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Frac::is_integer)
    }
}

impl std::fmt::Debug for RatMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;

    #[test]
    fn inverse_roundtrip() {
        let m = RatMat::from_int(&IntMat::from_rows(&[vec![0, 2], vec![2, 0]]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
        assert_eq!(*inv.at(0, 1), frac(1, 2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = RatMat::from_int(&IntMat::from_rows(&[vec![1, 2], vec![2, 4]]));
        assert!(m.inverse().is_none());
    }
}
