use crate::exactnum::{kernel_basis, IntMat, RatMat};

use super::sublat::express_in_basis;
use super::{Lattice, LatticeError, Sublattice};

/// Gram-preserving integer matrix of order 2 on a lattice (column action).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionData {
    lattice: Lattice,
    matrix: IntMat,
}

impl InvolutionData {
    pub fn new(lattice: Lattice, matrix: IntMat) -> Result<Self, LatticeError> {
        let n = lattice.rank();
        assert!(matrix.rows() == n && matrix.cols() == n, "size mismatch");
        if matrix.mul(&matrix) != IntMat::identity(n) {
            return Err(LatticeError::NotExtendable);
        }
        if matrix.transpose().mul(lattice.gram()).mul(&matrix) != *lattice.gram() {
            return Err(LatticeError::NotExtendable);
        }
        Ok(InvolutionData { lattice, matrix })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    /// Same matrix acting on a rescaled copy of the lattice.
    pub fn on_rescaled(&self, m: i64) -> InvolutionData {
        InvolutionData::new(self.lattice.rescale(m), self.matrix.clone())
            .expect("rescaling preserves isometries")
    }

    /// (fixed, anti) eigenlattices: saturated kernels of g -+ 1. Their ranks
    /// sum to the rank and they are orthogonal to each other.
    pub fn eigenlattices(&self) -> (Sublattice, Sublattice) {
        let n = self.lattice.rank();
        let id = IntMat::identity(n);
        // Column kernels; kernel_basis works on rows, so transpose first.
        let fixed = kernel_basis(&self.matrix.sub(&id).transpose()).hermite_normal_form();
        let anti = kernel_basis(&self.matrix.add(&id).transpose()).hermite_normal_form();
        let fixed = Sublattice::new(self.lattice.clone(), fixed)
            .expect("kernel rows independent");
        let anti = Sublattice::new(self.lattice.clone(), anti)
            .expect("kernel rows independent");
        debug_assert_eq!(fixed.rank() + anti.rank(), n);
        (fixed, anti)
    }
}

/// The involution acting as +1 on a primitive sublattice `p` of a
/// unimodular lattice and as -1 on its orthogonal complement. The extension
/// over the glue is integral because both eigenlattices are 2-elementary;
/// a non-integral extension reports `NotExtendable`.
pub fn involution_from_orthogonal_pair(
    lattice: &Lattice,
    p: &Sublattice,
) -> Result<InvolutionData, LatticeError> {
    assert_eq!(p.ambient(), lattice, "sublattice of the wrong lattice");
    let n = lattice.rank();
    let complement = p.orthogonal_complement();
    let combined = p.basis().vstack(complement.basis());
    assert_eq!(combined.rows(), n, "eigenspaces span the ambient");
    let coeffs = express_in_basis(
        &RatMat::identity(n),
        &RatMat::from_int(&combined),
    )
    .expect("standard basis lies in the rational span");
    // sigma(e_i) = e_i - 2 * (complement component of e_i).
    let mut rows = RatMat::identity(n);
    for i in 0..n {
        for b in 0..complement.rank() {
            let c = coeffs.at(i, p.rank() + b).clone();
            if c == crate::exactnum::frac(0, 1) {
                continue;
            }
            for j in 0..n {
                let v = rows.at(i, j).clone()
                    - crate::exactnum::frac(2, 1)
                        * &c
                        * crate::exactnum::Frac::from_integer(
                            complement.basis().at(b, j).clone(),
                        );
                rows.set(i, j, v);
            }
        }
    }
    if !rows.is_integral() {
        return Err(LatticeError::NotExtendable);
    }
    let matrix = rows.to_int().expect("checked integral").transpose();
    InvolutionData::new(lattice.clone(), matrix)
}

#[cfg(test)]
mod tests {
    use super::super::named::parse_lattice_name;
    use super::*;

    #[test]
    fn minus_identity_on_e8() {
        let e8 = parse_lattice_name("E8").unwrap();
        let zero = e8.sublattice(IntMat::zeros(0, 8)).unwrap();
        let inv = involution_from_orthogonal_pair(&e8, &zero).unwrap();
        assert_eq!(*inv.matrix(), IntMat::identity(8).neg());
        let (fixed, anti) = inv.eigenlattices();
        assert_eq!(fixed.rank(), 0);
        assert_eq!(anti.rank(), 8);
    }

    #[test]
    fn identity_on_full_sublattice() {
        let e8 = parse_lattice_name("E8").unwrap();
        let inv = involution_from_orthogonal_pair(&e8, &e8.full_sublattice()).unwrap();
        assert_eq!(*inv.matrix(), IntMat::identity(8));
    }

    #[test]
    fn swap_on_u_plus_u() {
        // Factor swap on U + U: fixed and anti lattices are the diagonal and
        // antidiagonal, both isometric to U(2).
        let l = parse_lattice_name("U+U").unwrap();
        let mut swap = IntMat::zeros(4, 4);
        for i in 0..2 {
            swap.set(i, i + 2, crate::exactnum::int(1));
            swap.set(i + 2, i, crate::exactnum::int(1));
        }
        let inv = InvolutionData::new(l, swap).unwrap();
        let (fixed, anti) = inv.eigenlattices();
        let u2 = parse_lattice_name("U(2)").unwrap();
        assert_eq!(fixed.induced_gram(), *u2.gram());
        assert_eq!(anti.induced_gram(), *u2.gram());
    }

    #[test]
    fn root_in_e8_gives_a1_e7_split() {
        let e8 = parse_lattice_name("E8").unwrap();
        let mut basis = IntMat::zeros(1, 8);
        basis.set(0, 0, crate::exactnum::int(1));
        let p = e8.sublattice(basis).unwrap();
        let inv = involution_from_orthogonal_pair(&e8, &p).unwrap();
        let (fixed, anti) = inv.eigenlattices();
        assert_eq!(fixed.rank(), 1);
        assert_eq!(anti.rank(), 7);
        assert_eq!(
            fixed.induced_gram(),
            IntMat::from_rows(&[vec![-2]])
        );
        // Anti part is E7 up to isometry.
        let e7 = parse_lattice_name("E7").unwrap();
        let anti_lat = anti.as_lattice().unwrap();
        assert!(
            super::super::is_isometric_definite(&anti_lat, &e7)
                .unwrap()
                .is_some()
        );
    }
}
