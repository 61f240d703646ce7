use num_traits::{Signed, Zero};

use crate::exactnum::{lattice_intersection, smith_normal_form, Int, IntMat, RatMat};

/// Subgroup of a finite abelian group `A = ⊕ Z/d_i`, represented by the
/// preimage lattice in Z^k: a full-rank integer lattice containing
/// diag(d) Z^k, stored as a canonical (HNF) basis. Two subgroups are equal
/// iff their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    ambient_orders: Vec<u64>,
    lattice: IntMat,
}

impl Subgroup {
    pub fn trivial(ambient_orders: &[u64]) -> Self {
        Subgroup::from_generators(ambient_orders, &[])
    }

    pub fn full(ambient_orders: &[u64]) -> Self {
        Subgroup {
            ambient_orders: ambient_orders.to_vec(),
            lattice: IntMat::identity(ambient_orders.len()),
        }
    }

    pub fn from_generators(ambient_orders: &[u64], gens: &[Vec<i64>]) -> Self {
        let k = ambient_orders.len();
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(gens.len() + k);
        for g in gens {
            assert_eq!(g.len(), k, "generator has wrong length");
            rows.push(g.clone());
        }
        for (i, &d) in ambient_orders.iter().enumerate() {
            let mut row = vec![0i64; k];
            row[i] = d as i64;
            rows.push(row);
        }
        let lattice = IntMat::from_rows(&rows).hermite_normal_form();
        assert_eq!(lattice.rows(), k, "subgroup lattice must be full rank");
        Subgroup {
            ambient_orders: ambient_orders.to_vec(),
            lattice,
        }
    }

    pub fn ambient_orders(&self) -> &[u64] {
        &self.ambient_orders
    }

    pub fn order(&self) -> u64 {
        let ambient: Int = self
            .ambient_orders
            .iter()
            .map(|&d| Int::from(d))
            .product();
        let det = self.lattice.det().expect("square").abs();
        let (q, r) = num_integer::Integer::div_rem(&ambient, &det);
        assert!(r.is_zero());
        u64::try_from(q).expect("subgroup order fits in u64")
    }

    pub fn contains_element(&self, elt: &[i64]) -> bool {
        // Forward elimination against the upper-triangular HNF basis: the
        // pivot of row i sits at column i, and columns left of i are already
        // cleared when row i is reached.
        let k = self.ambient_orders.len();
        assert_eq!(elt.len(), k);
        let mut rem: Vec<Int> = elt.iter().map(|&x| Int::from(x)).collect();
        for i in 0..k {
            let p = self.lattice.at(i, i);
            let (q, r) = num_integer::Integer::div_rem(&rem[i], p);
            if !r.is_zero() {
                return false;
            }
            for j in i..k {
                rem[j] = &rem[j] - &q * self.lattice.at(i, j);
            }
        }
        rem.iter().all(Zero::is_zero)
    }

    pub fn contains(&self, other: &Subgroup) -> bool {
        (0..other.lattice.rows()).all(|r| {
            let row: Vec<i64> = (0..other.lattice.cols())
                .map(|j| i64::try_from(other.lattice.at(r, j)).expect("fits"))
                .collect();
            self.contains_element(&row)
        })
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.ambient_orders, other.ambient_orders);
        let stacked = self.lattice.vstack(&other.lattice);
        Subgroup {
            ambient_orders: self.ambient_orders.clone(),
            lattice: stacked.hermite_normal_form(),
        }
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.ambient_orders, other.ambient_orders);
        let a = RatMat::from_int(&self.lattice);
        let b = RatMat::from_int(&other.lattice);
        let meet = lattice_intersection(&a, &b).to_int().expect("integral");
        Subgroup {
            ambient_orders: self.ambient_orders.clone(),
            lattice: meet.hermite_normal_form(),
        }
    }

    /// Invariant-factor presentation: orders (each > 1, divisibility chain)
    /// together with generator tuples in the ambient group.
    pub fn presentation(&self) -> (Vec<u64>, Vec<Vec<i64>>) {
        let k = self.ambient_orders.len();
        if k == 0 {
            return (vec![], vec![]);
        }
        let diag = IntMat::diagonal(
            &self
                .ambient_orders
                .iter()
                .map(|&d| Int::from(d))
                .collect::<Vec<_>>(),
        );
        // Express diag basis in the subgroup-lattice basis: X = diag * L^-1.
        let l_inv = RatMat::from_int(&self.lattice).inverse().expect("full rank");
        let x = RatMat::from_int(&diag)
            .mul(&l_inv)
            .to_int()
            .expect("diag lattice inside subgroup lattice");
        let snf = smith_normal_form(&x);
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        for (i, d) in snf.diagonal().iter().enumerate() {
            assert!(!d.is_zero(), "quotient of full-rank lattices is finite");
            let order = u64::try_from(d).expect("order fits in u64");
            if order == 1 {
                continue;
            }
            // Generator i of the quotient is row i of v_inv, in subgroup
            // lattice coordinates; convert to an ambient tuple.
            let mut tuple = vec![0i64; k];
            for j in 0..k {
                let mut acc = Int::zero();
                for t in 0..k {
                    acc += snf.v_inv.at(i, t) * self.lattice.at(t, j);
                }
                let m = Int::from(self.ambient_orders[j]);
                let r = num_integer::Integer::mod_floor(&acc, &m);
                tuple[j] = i64::try_from(&r).expect("fits");
            }
            orders.push(order);
            gens.push(tuple);
        }
        (orders, gens)
    }

    /// Number of invariant factors (minimal generator count).
    pub fn min_generators(&self) -> usize {
        self.presentation().0.len()
    }

    /// All elements, as ambient tuples. Callers gate on `order()` first.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let (orders, gens) = self.presentation();
        let k = self.ambient_orders.len();
        let mut out = vec![vec![0i64; k]];
        for (gi, g) in gens.iter().enumerate() {
            let d = orders[gi];
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..d {
                    next.push(cur.clone());
                    for j in 0..k {
                        cur[j] = (cur[j] + g[j]).rem_euclid(self.ambient_orders[j] as i64);
                    }
                }
            }
            out = next;
        }
        out
    }
}

/// Reduce an ambient tuple into canonical residue range.
pub fn normalize_tuple(orders: &[u64], elt: &[i64]) -> Vec<i64> {
    orders
        .iter()
        .zip(elt)
        .map(|(&d, &x)| x.rem_euclid(d as i64))
        .collect()
}

/// Sum of two tuples in the ambient group.
pub fn add_tuples(orders: &[u64], a: &[i64], b: &[i64]) -> Vec<i64> {
    orders
        .iter()
        .zip(a.iter().zip(b))
        .map(|(&d, (&x, &y))| (x + y).rem_euclid(d as i64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_of_diagonal_subgroup() {
        // In (Z/2)^2 the diagonal {00, 11} is cyclic of order 2.
        let s = Subgroup::from_generators(&[2, 2], &[vec![1, 1]]);
        assert_eq!(s.order(), 2);
        let (orders, gens) = s.presentation();
        assert_eq!(orders, vec![2]);
        assert_eq!(gens, vec![vec![1, 1]]);
        assert!(s.contains_element(&[1, 1]));
        assert!(!s.contains_element(&[1, 0]));
    }

    #[test]
    fn subgroup_of_z4() {
        let s = Subgroup::from_generators(&[4], &[vec![2]]);
        assert_eq!(s.order(), 2);
        assert!(s.contains_element(&[2]));
        assert!(!s.contains_element(&[1]));
        let full = Subgroup::full(&[4]);
        assert!(full.contains(&s));
        assert!(!s.contains(&full));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subgroup::from_generators(&[2, 2, 2], &[vec![1, 0, 0]]);
        let b = Subgroup::from_generators(&[2, 2, 2], &[vec![0, 1, 0]]);
        assert_eq!(a.sum(&b).order(), 4);
        assert_eq!(a.intersection(&b).order(), 1);
        let c = Subgroup::from_generators(&[2, 2, 2], &[vec![1, 0, 0], vec![1, 1, 0]]);
        assert_eq!(a.intersection(&c), a);
    }

    #[test]
    fn elements_enumeration() {
        let s = Subgroup::from_generators(&[2, 4], &[vec![1, 2], vec![0, 2]]);
        let elts = s.elements();
        assert_eq!(elts.len() as u64, s.order());
        for e in &elts {
            assert!(s.contains_element(e));
        }
    }
}
