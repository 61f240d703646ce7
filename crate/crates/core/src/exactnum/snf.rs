use num_traits::{Signed, Zero};

use super::{ExactNumError, Int, IntMat, RatMat};

/// Smith normal form data: `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with a divisibility chain d1 | d2 | ...
///
/// `v_inv` is carried along because saturation and quotient presentations
/// need rows of the inverse transform. The transforms themselves are not
/// canonical; callers may only rely on the stated identities.
pub struct SnfDecomposition {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl SnfDecomposition {
    /// Diagonal entries, including any zeros.
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.at(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    m: IntMat,
    u: IntMat,
    v: IntMat,
    v_inv: IntMat,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols() {
            let x = self.m.at(a, j).clone();
            let y = self.m.at(b, j).clone();
            self.m.set(a, j, y);
            self.m.set(b, j, x);
        }
        for j in 0..self.u.cols() {
            let x = self.u.at(a, j).clone();
            let y = self.u.at(b, j).clone();
            self.u.set(a, j, y);
            self.u.set(b, j, x);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows() {
            let x = self.m.at(i, a).clone();
            let y = self.m.at(i, b).clone();
            self.m.set(i, a, y);
            self.m.set(i, b, x);
        }
        for i in 0..self.v.rows() {
            let x = self.v.at(i, a).clone();
            let y = self.v.at(i, b).clone();
            self.v.set(i, a, y);
            self.v.set(i, b, x);
        }
        // Inverse of a swap is the same swap, acting on rows of v_inv.
        for j in 0..self.v_inv.cols() {
            let x = self.v_inv.at(a, j).clone();
            let y = self.v_inv.at(b, j).clone();
            self.v_inv.set(a, j, y);
            self.v_inv.set(b, j, x);
        }
    }

    /// row[target] -= q * row[source]
    fn add_row(&mut self, target: usize, source: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.m.cols() {
            let v = self.m.at(target, j) - q * self.m.at(source, j);
            self.m.set(target, j, v);
        }
        for j in 0..self.u.cols() {
            let v = self.u.at(target, j) - q * self.u.at(source, j);
            self.u.set(target, j, v);
        }
    }

    /// col[target] -= q * col[source]
    fn add_col(&mut self, target: usize, source: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.m.rows() {
            let v = self.m.at(i, target) - q * self.m.at(i, source);
            self.m.set(i, target, v);
        }
        for i in 0..self.v.rows() {
            let v = self.v.at(i, target) - q * self.v.at(i, source);
            self.v.set(i, target, v);
        }
        // (I + qE)^-1 = I - qE acting on the left: row[source] += q * row[target].
        for j in 0..self.v_inv.cols() {
            let v = self.v_inv.at(source, j) + q * self.v_inv.at(target, j);
            self.v_inv.set(source, j, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.m.cols() {
            let v = -self.m.at(r, j);
            self.m.set(r, j, v);
        }
        for j in 0..self.u.cols() {
            let v = -self.u.at(r, j);
            self.u.set(r, j, v);
        }
    }
}

pub fn smith_normal_form(input: &IntMat) -> SnfDecomposition {
    let rows = input.rows();
    let cols = input.cols();
    let mut w = Work {
        m: input.clone(),
        u: IntMat::identity(rows),
        v: IntMat::identity(cols),
        v_inv: IntMat::identity(cols),
    };

    let steps = rows.min(cols);
    for t in 0..steps {
        // Find a nonzero pivot in the remaining block, smallest in absolute
        // value to keep growth down.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w.m.at(i, j).is_zero() {
                    continue;
                }
                pivot = match pivot {
                    None => Some((i, j)),
                    Some((pi, pj)) => {
                        if w.m.at(i, j).abs() < w.m.at(pi, pj).abs() {
                            Some((i, j))
                        } else {
                            Some((pi, pj))
                        }
                    }
                };
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        'reduce: loop {
            // Clear column t below the pivot.
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if w.m.at(i, t).is_zero() {
                        continue;
                    }
                    let q = num_integer::Integer::div_floor(w.m.at(i, t), w.m.at(t, t));
                    w.add_row(i, t, &q);
                    if !w.m.at(i, t).is_zero() {
                        w.swap_rows(t, i);
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            // Clear row t right of the pivot; may disturb the column.
            let mut col_dirty = false;
            loop {
                let mut clean = true;
                for j in t + 1..cols {
                    if w.m.at(t, j).is_zero() {
                        continue;
                    }
                    let q = num_integer::Integer::div_floor(w.m.at(t, j), w.m.at(t, t));
                    w.add_col(j, t, &q);
                    if !w.m.at(t, j).is_zero() {
                        w.swap_cols(t, j);
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            for i in t + 1..rows {
                if !w.m.at(i, t).is_zero() {
                    col_dirty = true;
                }
            }
            if col_dirty {
                continue 'reduce;
            }
            // Pivot must divide every remaining entry for the chain property.
            let mut offender: Option<usize> = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(w.m.at(i, j) % w.m.at(t, t)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // Fold the offending row into row t and restart.
                    let minus_one = -Int::from(1);
                    w.add_row(t, i, &minus_one);
                }
                None => break 'reduce,
            }
        }
        if w.m.at(t, t).is_negative() {
            w.negate_row(t);
        }
    }

    SnfDecomposition {
        d: w.m,
        u: w.u,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Basis of the saturated left kernel {x : x * m = 0}; rows of the result.
pub fn kernel_basis(m: &IntMat) -> IntMat {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let rows: Vec<usize> = (rank..m.rows()).collect();
    snf.u.submatrix_rows(&rows)
}

/// Saturation of the row span: basis of (Q-span of rows) intersected with Z^n.
///
/// Errors with `DependentRows` if the rows are not independent.
pub fn saturate(basis: &IntMat, ambient_rank: usize) -> Result<IntMat, ExactNumError> {
    assert!(basis.cols() == ambient_rank || basis.rows() == 0);
    if basis.rows() == 0 {
        return Ok(IntMat::zeros(0, ambient_rank));
    }
    let snf = smith_normal_form(basis);
    if snf.rank() != basis.rows() {
        return Err(ExactNumError::DependentRows);
    }
    // basis = u^-1 * d * v_inv, so the saturation is spanned by the first
    // k rows of v_inv.
    let rows: Vec<usize> = (0..basis.rows()).collect();
    Ok(snf.v_inv.submatrix_rows(&rows).hermite_normal_form())
}

/// Basis of the intersection of the row lattices of `a` and `b` (rational
/// generators allowed; full rank not required).
pub fn lattice_intersection(a: &RatMat, b: &RatMat) -> RatMat {
    assert_eq!(a.cols(), b.cols());
    let scale_a = a.denominator_lcm();
    let scale_b = b.denominator_lcm();
    let scale = num_integer::Integer::lcm(&scale_a, &scale_b);
    let ai = a.scaled_to_int(&scale);
    let bi = b.scaled_to_int(&scale);
    // Rows (x, y) with x*ai = y*bi; the intersection is spanned by the x*ai.
    let stacked = ai.vstack(&bi.neg());
    let ker = kernel_basis(&stacked);
    let mut combos = IntMat::zeros(ker.rows(), ai.cols());
    for r in 0..ker.rows() {
        for k in 0..ai.rows() {
            let c = ker.at(r, k).clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..ai.cols() {
                let v = combos.at(r, j) + &c * ai.at(k, j);
                combos.set(r, j, v);
            }
        }
    }
    let reduced = combos.hermite_normal_form();
    RatMat::from_int(&reduced).scale(&crate::exactnum::Frac::new(Int::from(1), scale))
}
