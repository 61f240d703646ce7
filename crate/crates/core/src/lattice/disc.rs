use num_traits::Zero;

use crate::exactnum::{smith_normal_form, Frac, Int, IntMat, RatMat};
use crate::finform::FiniteQuadraticForm;

use super::{Lattice, LatticeError};

/// Discriminant group A = L*/L in invariant-factor form, with rational
/// generator lifts (rows, in lattice-basis coordinates) and the data needed
/// to map arbitrary dual vectors back to residue tuples.
#[derive(Clone, Debug)]
pub struct DiscGroup {
    orders: Vec<u64>,
    lifts: RatMat,
    u: IntMat,
    diag: Vec<Int>,
    kept: Vec<usize>,
    gram: IntMat,
}

impl Lattice {
    /// A_L from the Smith normal form of the Gram matrix: with u G v = d,
    /// generator i lifts to (column i of v) / d_i.
    pub fn discriminant_group(&self) -> DiscGroup {
        let snf = smith_normal_form(self.gram());
        let diag = snf.diagonal();
        let n = self.rank();
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            assert!(!d.is_zero(), "nondegenerate gram has full SNF rank");
            if *d != Int::from(1) {
                kept.push(i);
                orders.push(u64::try_from(d).expect("discriminant order fits"));
            }
        }
        let mut lifts = RatMat::zeros(kept.len(), n);
        for (row, &i) in kept.iter().enumerate() {
            for j in 0..n {
                lifts.set(
                    row,
                    j,
                    Frac::new(snf.v.at(j, i).clone(), diag[i].clone()),
                );
            }
        }
        DiscGroup {
            orders,
            lifts,
            u: snf.u,
            diag,
            kept,
            gram: self.gram().clone(),
        }
    }

    /// Discriminant quadratic form of an even lattice.
    pub fn discriminant_form(&self) -> Result<FiniteQuadraticForm, LatticeError> {
        if !self.is_even() {
            return Err(LatticeError::OddLattice);
        }
        let disc = self.discriminant_group();
        let k = disc.orders.len();
        let pairings = disc.lifts.mul(&RatMat::from_int(&self.gram())).mul(&disc.lifts.transpose());
        let mut gram = RatMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram.set(i, j, pairings.at(i, j).clone());
            }
        }
        Ok(FiniteQuadraticForm::new(disc.orders.clone(), gram)?)
    }
}

impl DiscGroup {
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn gen_count(&self) -> usize {
        self.orders.len()
    }

    /// Rational lift (row, lattice-basis coordinates) of a residue tuple,
    /// using the canonical representatives in [0, d_i).
    pub fn lift(&self, tuple: &[i64]) -> RatMat {
        assert_eq!(tuple.len(), self.orders.len());
        let n = self.gram.rows();
        let mut out = RatMat::zeros(1, n);
        for (i, &c) in tuple.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = Frac::from_integer(Int::from(c));
            for j in 0..n {
                let v = out.at(0, j) + &c * self.lifts.at(i, j);
                out.set(0, j, v);
            }
        }
        out
    }

    /// Residue tuple of a dual vector (row, lattice-basis coordinates).
    /// Panics if the vector does not pair integrally with the lattice.
    pub fn tuple_of(&self, dual_row: &RatMat) -> Vec<i64> {
        assert_eq!(dual_row.rows(), 1);
        let pair = dual_row.mul(&RatMat::from_int(&self.gram));
        assert!(
            pair.is_integral(),
            "vector is not in the dual lattice"
        );
        let m = pair.to_int().expect("checked integral");
        let mut tuple = Vec::with_capacity(self.kept.len());
        for (slot, &i) in self.kept.iter().enumerate() {
            let mut acc = Int::zero();
            for j in 0..self.u.cols() {
                acc += self.u.at(i, j) * m.at(0, j);
            }
            let r = num_integer::Integer::mod_floor(&acc, &self.diag[i]);
            let _ = slot;
            tuple.push(i64::try_from(&r).expect("residue fits"));
        }
        tuple
    }

    /// Whether a rational row vector lies in the dual lattice.
    pub fn is_dual_vector(&self, row: &RatMat) -> bool {
        row.mul(&RatMat::from_int(&self.gram)).is_integral()
    }
}
