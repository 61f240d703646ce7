use num_traits::{One, Signed, Zero};

use crate::exactnum::{
    kernel_basis, lattice_intersection, saturate, smith_normal_form, Frac, Int, IntMat, RatMat,
};

use super::{Lattice, LatticeError, Sublattice};

/// Solves vectors = X * basis exactly over Q; `None` if some row is outside
/// the span. `basis` may have fewer rows than columns.
pub fn express_in_basis(vectors: &RatMat, basis: &RatMat) -> Option<RatMat> {
    // Gaussian elimination on the transposed system basis^T x^T = vectors^T.
    let bt = basis.transpose();
    let vt = vectors.transpose();
    let rows = bt.rows();
    let cols = bt.cols();
    let rhs = vt.cols();
    let mut a = bt;
    let mut b = vt;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a.at(i, c).is_zero()) else {
            continue;
        };
        for j in 0..cols {
            let x = a.at(r, j).clone();
            let y = a.at(p, j).clone();
            a.set(r, j, y);
            a.set(p, j, x);
        }
        for j in 0..rhs {
            let x = b.at(r, j).clone();
            let y = b.at(p, j).clone();
            b.set(r, j, y);
            b.set(p, j, x);
        }
        let piv = a.at(r, c).clone();
        for j in 0..cols {
            let v = a.at(r, j) / &piv;
            a.set(r, j, v);
        }
        for j in 0..rhs {
            let v = b.at(r, j) / &piv;
            b.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.at(i, c).is_zero() {
                continue;
            }
            let f = a.at(i, c).clone();
            for j in 0..cols {
                let v = a.at(i, j) - &f * a.at(r, j);
                a.set(i, j, v);
            }
            for j in 0..rhs {
                let v = b.at(i, j) - &f * b.at(r, j);
                b.set(i, j, v);
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Rows of `a` beyond rank must have zero rhs for consistency.
    for i in r..rows {
        for j in 0..rhs {
            if !b.at(i, j).is_zero() {
                return None;
            }
        }
    }
    let mut x = RatMat::zeros(cols, rhs);
    for (c, p) in pivot_of_col.iter().enumerate() {
        if let Some(p) = p {
            for j in 0..rhs {
                x.set(c, j, b.at(*p, j).clone());
            }
        }
    }
    Some(x.transpose())
}

impl Sublattice {
    /// Saturated basis of {x in L : (x, S) = 0}.
    pub fn orthogonal_complement(&self) -> Sublattice {
        let pairing = self.ambient().gram().mul(&self.basis().transpose());
        let basis = kernel_basis(&pairing).hermite_normal_form();
        Sublattice::new(self.ambient().clone(), basis)
            .expect("kernel basis rows are independent")
    }

    /// Primitive closure (saturation) inside the ambient lattice.
    pub fn primitive_closure(&self) -> Result<Sublattice, LatticeError> {
        if self.rank() == 0 {
            return Ok(self.clone());
        }
        let sat = saturate(self.basis(), self.ambient().rank())?;
        Sublattice::new(self.ambient().clone(), sat)
    }

    pub fn is_primitive(&self) -> Result<bool, LatticeError> {
        let closure = self.primitive_closure()?;
        Ok(closure.basis().hermite_normal_form() == self.basis().hermite_normal_form())
    }

    /// Dual basis rows of the sublattice inside its own rational span,
    /// in ambient coordinates.
    pub fn dual_basis(&self) -> RatMat {
        let g = self.induced_gram();
        let ginv = RatMat::from_int(&g).inverse().expect("nondegenerate");
        ginv.mul(&RatMat::from_int(self.basis()))
    }
}

/// Glue group of two orthogonal sublattices: the quotient of the primitive
/// closure of their direct sum by the direct sum itself, with both
/// projections to the discriminant groups.
#[derive(Clone, Debug)]
pub struct GlueGroup {
    orders: Vec<u64>,
    /// (tuple in A_S, tuple in A_T) per generator.
    pairs: Vec<(Vec<i64>, Vec<i64>)>,
    /// Generators as integer rows in ambient coordinates.
    lifts: IntMat,
}

impl GlueGroup {
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn pairs(&self) -> &[(Vec<i64>, Vec<i64>)] {
        &self.pairs
    }

    pub fn lifts(&self) -> &IntMat {
        &self.lifts
    }
}

/// Computes the glue group of orthogonal sublattices `s` and `t` of a common
/// ambient lattice; projections are injective when both are primitive.
pub fn glue_group(s: &Sublattice, t: &Sublattice) -> Result<GlueGroup, LatticeError> {
    assert_eq!(s.ambient(), t.ambient(), "sublattices share the ambient");
    let pairing = s.basis().mul(s.ambient().gram()).mul(&t.basis().transpose());
    if !pairing.is_zero() {
        return Err(LatticeError::NotOrthogonal);
    }
    let combined = s.basis().vstack(t.basis());
    if combined.rows() == 0 {
        return Ok(GlueGroup {
            orders: vec![],
            pairs: vec![],
            lifts: IntMat::zeros(0, s.ambient().rank()),
        });
    }
    let closure = saturate(&combined, s.ambient().rank())?;
    // Express the direct sum in the closure basis; the quotient is read off
    // the Smith normal form of that expression.
    let x = express_in_basis(&RatMat::from_int(&combined), &RatMat::from_int(&closure))
        .expect("combined lattice lies in its closure")
        .to_int()
        .expect("index is integral");
    let snf = smith_normal_form(&x);
    let disc_s = s.as_lattice()?.discriminant_group();
    let disc_t = t.as_lattice()?.discriminant_group();
    let mut orders = Vec::new();
    let mut pairs = Vec::new();
    let mut lift_rows: Vec<Vec<Int>> = Vec::new();
    for (i, d) in snf.diagonal().iter().enumerate() {
        assert!(!d.is_zero());
        if d.is_one() {
            continue;
        }
        orders.push(u64::try_from(d).expect("glue order fits"));
        // Generator i of the quotient: (row i of v_inv) * closure.
        let mut row = vec![Int::zero(); s.ambient().rank()];
        for t_idx in 0..closure.rows() {
            let c = snf.v_inv.at(i, t_idx).clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..s.ambient().rank() {
                row[j] = &row[j] + &c * closure.at(t_idx, j);
            }
        }
        let row_mat = IntMat::from_shape(1, row.len(), row.clone());
        // Split over the rational spans of s and t.
        let coeffs = express_in_basis(
            &RatMat::from_int(&row_mat),
            &RatMat::from_int(&combined),
        )
        .expect("glue vector lies in the combined span");
        let mut s_coords = RatMat::zeros(1, s.rank());
        for j in 0..s.rank() {
            s_coords.set(0, j, coeffs.at(0, j).clone());
        }
        let mut t_coords = RatMat::zeros(1, t.rank());
        for j in 0..t.rank() {
            t_coords.set(0, j, coeffs.at(0, s.rank() + j).clone());
        }
        pairs.push((disc_s.tuple_of(&s_coords), disc_t.tuple_of(&t_coords)));
        lift_rows.push(row);
    }
    let lifts = if lift_rows.is_empty() {
        IntMat::zeros(0, s.ambient().rank())
    } else {
        let flat: Vec<Int> = lift_rows.concat();
        IntMat::from_shape(lift_rows.len(), s.ambient().rank(), flat)
    };
    Ok(GlueGroup {
        orders,
        pairs,
        lifts,
    })
}

/// An overlattice together with its basis expressed in the coordinates of
/// the lattice it extends.
#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: Lattice,
    pub basis_in_base: RatMat,
}

impl Overlattice {
    /// Rewrites row vectors from base coordinates into overlattice
    /// coordinates; rows must lie in the overlattice.
    pub fn coords_of(&self, rows_in_base: &RatMat) -> IntMat {
        express_in_basis(rows_in_base, &self.basis_in_base)
            .expect("rows lie in the overlattice span")
            .to_int()
            .expect("rows are overlattice elements")
    }
}

/// Builds the overlattice of `m` generated by the canonical lifts of an
/// isotropic subgroup of A_m (given by residue tuples). Fails with
/// `NotIsotropic` if the result is not an even integral lattice.
pub fn overlattice_from_glue(
    m: &Lattice,
    glue_tuples: &[Vec<i64>],
) -> Result<Overlattice, LatticeError> {
    let disc = m.discriminant_group();
    let n = m.rank();
    let mut rows = RatMat::identity(n);
    for t in glue_tuples {
        let lift = disc.lift(t);
        rows = stack_rat(&rows, &lift);
    }
    // Intersecting with itself canonicalizes via HNF on the scaled lattice.
    let scale = rows.denominator_lcm();
    let scaled = rows.scaled_to_int(&scale);
    let hnf = scaled.hermite_normal_form();
    if hnf.rows() != n {
        return Err(LatticeError::DependentRows);
    }
    let basis = RatMat::from_int(&hnf).scale(&Frac::new(Int::one(), scale));
    let gram_rat = basis
        .mul(&RatMat::from_int(m.gram()))
        .mul(&basis.transpose());
    if !gram_rat.is_integral() {
        return Err(LatticeError::NotIsotropic);
    }
    let gram = gram_rat.to_int().expect("checked integral");
    for i in 0..n {
        if !(gram.at(i, i) % Int::from(2)).is_zero() {
            return Err(LatticeError::NotIsotropic);
        }
    }
    Ok(Overlattice {
        lattice: Lattice::new(gram)?,
        basis_in_base: basis,
    })
}

fn stack_rat(a: &RatMat, b: &RatMat) -> RatMat {
    let mut out = RatMat::zeros(a.rows() + b.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.at(i, j).clone());
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out.set(a.rows() + i, j, b.at(i, j).clone());
        }
    }
    out
}

/// Intersection of two rational row lattices, kept rational.
pub fn intersect_spans(a: &RatMat, b: &RatMat) -> RatMat {
    lattice_intersection(a, b)
}

#[allow(dead_code)]
fn abs_int(v: &Int) -> Int {
    v.abs()
}

#[cfg(test)]
mod tests {
    use super::super::named::parse_lattice_name;
    use super::*;

    #[test]
    fn complement_of_full_is_zero() {
        let e8 = parse_lattice_name("E8").unwrap();
        let full = e8.full_sublattice();
        assert_eq!(full.orthogonal_complement().rank(), 0);
    }

    #[test]
    fn closure_removes_content() {
        let a1 = parse_lattice_name("A1").unwrap();
        let doubled = a1.sublattice(IntMat::from_rows(&[vec![2]])).unwrap();
        let closed = doubled.primitive_closure().unwrap();
        assert_eq!(*closed.basis(), IntMat::identity(1));
    }

    #[test]
    fn express_in_basis_detects_outside() {
        let basis = RatMat::from_int(&IntMat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]));
        let inside = RatMat::from_int(&IntMat::from_rows(&[vec![3, -2, 0]]));
        let outside = RatMat::from_int(&IntMat::from_rows(&[vec![0, 0, 1]]));
        assert!(express_in_basis(&inside, &basis).is_some());
        assert!(express_in_basis(&outside, &basis).is_none());
    }

    #[test]
    fn trivial_glue_for_unimodular_summand() {
        let e8 = parse_lattice_name("E8").unwrap();
        let full = e8.full_sublattice();
        let zero = e8.sublattice(IntMat::zeros(0, 8)).unwrap();
        let glue = glue_group(&full, &zero).unwrap();
        assert_eq!(glue.order(), 1);
    }

    #[test]
    fn overlattice_with_trivial_glue_is_identity() {
        let l = parse_lattice_name("U(2)").unwrap();
        let over = overlattice_from_glue(&l, &[]).unwrap();
        assert_eq!(over.lattice, l);
    }
}
