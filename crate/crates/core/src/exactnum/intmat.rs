use num_traits::{One, Signed, Zero};

use super::{ExactNumError, Int};

/// Dense integer matrix with arbitrary-precision entries, row-major.
///
/// Empty (0xn, nx0) shapes are legal; they show up as rank-0 lattices and
/// empty sublattice bases.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = IntMat::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, Int::from(x));
            }
        }
        m
    }

    pub fn from_shape(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMat {
            rows,
            cols,
            data: entries,
        }
    }

    pub fn diagonal(entries: &[Int]) -> Self {
        let n = entries.len();
        let mut m = IntMat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Int) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in multiplication");
        let mut out = IntMat::zeros(self.rows, other.cols);
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

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        IntMat::from_shape(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        IntMat::from_shape(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> IntMat {
        IntMat::from_shape(self.rows, self.cols, self.data.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Int) -> IntMat {
        IntMat::from_shape(self.rows, self.cols, self.data.iter().map(|a| a * c).collect())
    }

    /// Vertical stacking; column counts must agree (a 0-row block adapts).
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        if other.rows > 0 && self.rows > 0 {
            assert_eq!(self.cols, other.cols);
        }
        let mut data = Vec::with_capacity((self.rows + other.rows) * cols);
        data.extend(self.data.iter().cloned());
        data.extend(other.data.iter().cloned());
        IntMat {
            rows: self.rows + other.rows,
            cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntMat) -> IntMat {
        let mut out = IntMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix_rows(&self, row_indices: &[usize]) -> IntMat {
        let mut out = IntMat::zeros(row_indices.len(), self.cols);
        for (i, &r) in row_indices.iter().enumerate() {
            for j in 0..self.cols {
                out.set(i, j, self.at(r, j).clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Int, ExactNumError> {
        if !self.is_square() {
            return Err(ExactNumError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.at(r, k).is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            let a = m.at(k, j).clone();
                            let b = m.at(r, j).clone();
                            m.set(k, j, b);
                            m.set(r, j, a);
                        }
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    debug_assert!((&num % &prev).is_zero());
                    m.set(i, j, num / &prev);
                }
            }
            for i in k + 1..n {
                m.set(i, k, Int::zero());
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// Row Hermite normal form of the row lattice: zero rows dropped, pivots
    /// positive, entries above each pivot reduced to [0, pivot). Canonical
    /// for the lattice spanned by the rows.
    pub fn hermite_normal_form(&self) -> IntMat {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivot_row = 0usize;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            // Euclidean reduction within this column, below pivot_row.
            loop {
                let mut best: Option<usize> = None;
                for r in pivot_row..rows {
                    if !m.at(r, col).is_zero() {
                        best = match best {
                            None => Some(r),
                            Some(b) => {
                                if m.at(r, col).abs() < m.at(b, col).abs() {
                                    Some(r)
                                } else {
                                    Some(b)
                                }
                            }
                        };
                    }
                }
                let Some(b) = best else { break };
                if b != pivot_row {
                    for j in 0..cols {
                        let x = m.at(pivot_row, j).clone();
                        let y = m.at(b, j).clone();
                        m.set(pivot_row, j, y);
                        m.set(b, j, x);
                    }
                }
                let mut done = true;
                let p = m.at(pivot_row, col).clone();
                for r in pivot_row + 1..rows {
                    if m.at(r, col).is_zero() {
                        continue;
                    }
                    let q = div_round(m.at(r, col), &p);
                    for j in 0..cols {
                        let v = m.at(r, j) - &q * m.at(pivot_row, j);
                        m.set(r, j, v);
                    }
                    if !m.at(r, col).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if m.at(pivot_row, col).is_zero() {
                continue;
            }
            if m.at(pivot_row, col).is_negative() {
                for j in 0..cols {
                    let v = -m.at(pivot_row, j);
                    m.set(pivot_row, j, v);
                }
            }
            let p = m.at(pivot_row, col).clone();
            for r in 0..pivot_row {
                let q = num_integer::Integer::div_floor(m.at(r, col), &p);
                if q.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let v = m.at(r, j) - &q * m.at(pivot_row, j);
                    m.set(r, j, v);
                }
            }
            pivot_row += 1;
        }
        m.submatrix_rows(&(0..pivot_row).collect::<Vec<_>>())
    }
}

/// Quotient rounding to nearest, which keeps Euclidean row reduction small.
fn div_round(a: &Int, b: &Int) -> Int {
    let two = Int::from(2);
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if &r * &two > b.abs() {
        q + Int::one()
    } else {
        q
    }
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
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

    #[test]
    fn det_matches_cofactor_expansion() {
        // Independent oracle: recursive cofactor expansion.
        fn cofactor_det(m: &IntMat) -> Int {
            let n = m.rows();
            if n == 0 {
                return Int::one();
            }
            if n == 1 {
                return m.at(0, 0).clone();
            }
            let mut acc = Int::zero();
            for j in 0..n {
                if m.at(0, j).is_zero() {
                    continue;
                }
                let mut minor = IntMat::zeros(n - 1, n - 1);
                for i in 1..n {
                    let mut cj = 0;
                    for jj in 0..n {
                        if jj == j {
                            continue;
                        }
                        minor.set(i - 1, cj, m.at(i, jj).clone());
                        cj += 1;
                    }
                }
                let term = m.at(0, j) * cofactor_det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }

        let samples = [
            IntMat::from_rows(&[vec![0, 2], vec![2, 0]]),
            IntMat::from_rows(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]),
            IntMat::from_rows(&[
                vec![3, -1, 2, 0],
                vec![1, 4, -2, 5],
                vec![0, 2, 2, -3],
                vec![7, 0, 1, 1],
            ]),
        ];
        for m in &samples {
            assert_eq!(m.det().unwrap(), cofactor_det(m));
        }
    }

    #[test]
    fn det_rank0_is_one() {
        assert_eq!(IntMat::zeros(0, 0).det().unwrap(), Int::one());
    }

    #[test]
    fn hnf_is_canonical_for_row_lattice() {
        let a = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        // Same lattice, different generators: add multiples of rows to others.
        let b = IntMat::from_rows(&[vec![2, 4, 4], vec![-4, 10, 16], vec![6, 14, 32], vec![0, 0, 0]]);
        assert_eq!(a.hermite_normal_form(), b.hermite_normal_form());
    }

    #[test]
    fn hnf_of_scaled_row() {
        let m = IntMat::from_rows(&[vec![2, 0]]);
        let h = m.hermite_normal_form();
        assert_eq!(h, IntMat::from_rows(&[vec![2, 0]]));
    }
}
