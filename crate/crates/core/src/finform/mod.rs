//! Finite abelian groups carrying quadratic forms with values in Q/2Z and
//! bilinear forms in Q/Z.
//!
//! Degenerate forms are first-class: the two order-2 forms with b = 0 and
//! q-value 1 resp. 0 (written `w` and `z`) appear throughout the
//! classification as restrictions to glue subgroups. Nondegeneracy is
//! asserted per operation, never per type.
//!
//! The generator matrix stores q-values in [0,2) on the diagonal and
//! b-values in [0,1) off the diagonal; b on the diagonal is recovered as the
//! q-value mod 1, never the other way around.

mod descriptor;
mod gauss;
mod isomorphism;
mod standard;
mod subgroup;

pub use descriptor::{FormDescriptor, Order4Part};
pub use standard::{standard_form, StandardForm};
pub use subgroup::{add_tuples, normalize_tuple, Subgroup};

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{smith_normal_form, Frac, Int, IntMat, RatMat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("unknown form name: {0}")]
    UnknownName(String),
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("carrier too large for this operation")]
    ResourceLimit,
    #[error("operation requires a 2-group of exponent at most 4")]
    UnsupportedExponent,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("invalid form data: {0}")]
    InvalidForm(String),
}

/// Finite abelian group in invariant-factor presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinAb {
    orders: Vec<u64>,
}

impl FinAb {
    pub fn new(orders: Vec<u64>) -> Result<Self, FormError> {
        if orders.iter().any(|&d| d < 2) {
            return Err(FormError::InvalidForm("invariant factor below 2".into()));
        }
        for w in orders.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(FormError::InvalidForm(
                    "orders do not form a divisibility chain".into(),
                ));
            }
        }
        Ok(FinAb { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn min_generators(&self) -> usize {
        self.orders.len()
    }
}

/// A finite quadratic form (possibly degenerate).
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    gram: RatMat,
}

pub(crate) fn mod_frac(x: &Frac, modulus: u64) -> Frac {
    let m = Frac::from_integer(Int::from(modulus));
    let q = (x / &m).floor();
    x - q * m
}

impl FiniteQuadraticForm {
    /// Builds a form after normalizing entries and checking the axioms that
    /// are visible on generators (order compatibility of q and b).
    pub fn new(orders: Vec<u64>, gram: RatMat) -> Result<Self, FormError> {
        let k = orders.len();
        if gram.rows() != k || gram.cols() != k {
            return Err(FormError::InvalidForm("gram size mismatch".into()));
        }
        if orders.iter().any(|&d| d < 2) {
            return Err(FormError::InvalidForm("order below 2".into()));
        }
        let mut sorted: Vec<usize> = (0..k).collect();
        sorted.sort_by_key(|&i| orders[i]);
        let orders_sorted: Vec<u64> = sorted.iter().map(|&i| orders[i]).collect();
        for w in orders_sorted.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(FormError::InvalidForm(
                    "orders do not form a divisibility chain".into(),
                ));
            }
        }
        let mut norm = RatMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let raw = gram.at(sorted[i], sorted[j]);
                if gram.at(sorted[i], sorted[j]) != gram.at(sorted[j], sorted[i]) {
                    return Err(FormError::InvalidForm("gram not symmetric".into()));
                }
                let v = if i == j {
                    mod_frac(raw, 2)
                } else {
                    mod_frac(raw, 1)
                };
                norm.set(i, j, v);
            }
        }
        // d_i * b(g_i, g_j) must vanish mod 1 and d_i^2 * q(g_i) mod 2.
        for i in 0..k {
            let d = Frac::from_integer(Int::from(orders_sorted[i]));
            for j in 0..k {
                if i == j {
                    let v = norm.at(i, i) * &d * &d;
                    if !mod_frac(&v, 2).is_zero() {
                        return Err(FormError::InvalidForm(
                            "q-value incompatible with generator order".into(),
                        ));
                    }
                } else {
                    let v = norm.at(i, j) * &d;
                    if !mod_frac(&v, 1).is_zero() {
                        return Err(FormError::InvalidForm(
                            "b-value incompatible with generator order".into(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteQuadraticForm {
            orders: orders_sorted,
            gram: norm,
        })
    }

    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            orders: vec![],
            gram: RatMat::zeros(0, 0),
        }
    }

    pub fn group(&self) -> FinAb {
        FinAb::new(self.orders.clone()).expect("stored orders are canonical")
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn gen_count(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn gram(&self) -> &RatMat {
        &self.gram
    }

    /// q-value of an arbitrary tuple, reduced into [0, 2).
    pub fn q_value(&self, elt: &[i64]) -> Frac {
        assert_eq!(elt.len(), self.orders.len());
        let mut acc = Frac::zero();
        for i in 0..elt.len() {
            if elt[i] == 0 {
                continue;
            }
            let xi = Frac::from_integer(Int::from(elt[i]));
            acc += &xi * &xi * self.gram.at(i, i);
            for j in i + 1..elt.len() {
                if elt[j] == 0 {
                    continue;
                }
                let xj = Frac::from_integer(Int::from(elt[j]));
                acc += Frac::from_integer(Int::from(2)) * xi.clone() * xj * self.gram.at(i, j);
            }
        }
        mod_frac(&acc, 2)
    }

    /// b-value of two tuples, reduced into [0, 1).
    pub fn b_value(&self, a: &[i64], b: &[i64]) -> Frac {
        assert_eq!(a.len(), self.orders.len());
        assert_eq!(b.len(), self.orders.len());
        let mut acc = Frac::zero();
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            let xi = Frac::from_integer(Int::from(a[i]));
            for j in 0..b.len() {
                if b[j] == 0 {
                    continue;
                }
                let yj = Frac::from_integer(Int::from(b[j]));
                // The diagonal of b is q mod 1.
                let bij = if i == j {
                    mod_frac(self.gram.at(i, i), 1)
                } else {
                    self.gram.at(i, j).clone()
                };
                acc += &xi * yj * bij;
            }
        }
        mod_frac(&acc, 1)
    }

    pub fn direct_sum(&self, other: &FiniteQuadraticForm) -> FiniteQuadraticForm {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        let gram = self.gram.clone();
        let k1 = self.gen_count();
        let k = orders.len();
        let mut combined = RatMat::zeros(k, k);
        for i in 0..k1 {
            for j in 0..k1 {
                combined.set(i, j, gram.at(i, j).clone());
            }
        }
        for i in 0..other.gen_count() {
            for j in 0..other.gen_count() {
                combined.set(k1 + i, k1 + j, other.gram.at(i, j).clone());
            }
        }
        canonicalize(orders, combined).expect("direct sum of valid forms is valid")
    }

    pub fn negate(&self) -> FiniteQuadraticForm {
        FiniteQuadraticForm::new(self.orders.clone(), self.gram.neg())
            .expect("negation preserves validity")
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::full(&self.orders)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trivial(&self.orders)
    }

    /// All elements of the carrier; gate on `order()`.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &d in &self.orders {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for base in &out {
                for r in 0..d as i64 {
                    let mut e = base.clone();
                    e.push(r);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    /// Multiset of q-values over the whole carrier, as sorted (value, count).
    pub fn value_multiset(&self) -> Vec<(Frac, u64)> {
        let mut counts: std::collections::BTreeMap<Frac, u64> = Default::default();
        for e in self.elements() {
            *counts.entry(self.q_value(&e)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Subgroup orthogonal to `h` under b, by solving the linear congruence
    /// system exactly (no carrier enumeration).
    pub fn orthogonal_subgroup(&self, h: &Subgroup) -> Subgroup {
        assert_eq!(h.ambient_orders(), self.orders());
        let k = self.orders.len();
        let (_, hgens) = h.presentation();
        if hgens.is_empty() || k == 0 {
            return Subgroup::full(&self.orders);
        }
        let exponent = *self.orders.last().unwrap();
        let m = Int::from(exponent);
        // Rows: one congruence per h-generator; entries M * b(g_i, h_g).
        let mut rmat = IntMat::zeros(hgens.len(), k);
        for (r, hg) in hgens.iter().enumerate() {
            for i in 0..k {
                let mut unit = vec![0i64; k];
                unit[i] = 1;
                let val = self.b_value(&unit, hg) * Frac::from_integer(m.clone());
                assert!(val.is_integer(), "b-values clear the exponent");
                rmat.set(r, i, val.to_integer());
            }
        }
        // Solutions of R x = 0 mod M: project the kernel of (x, y) -> xR^T + yM.
        let stacked = rmat.transpose().vstack(&IntMat::diagonal(
            &vec![m.clone(); hgens.len()],
        ));
        let ker = crate::exactnum::kernel_basis(&stacked);
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for r in 0..ker.rows() {
            let tuple: Vec<i64> = (0..k)
                .map(|j| {
                    let v = num_integer::Integer::mod_floor(
                        ker.at(r, j),
                        &Int::from(self.orders[j]),
                    );
                    i64::try_from(&v).expect("fits")
                })
                .collect();
            gens.push(tuple);
        }
        Subgroup::from_generators(&self.orders, &gens)
    }

    /// Radical {x : b(x, .) = 0}.
    pub fn radical(&self) -> Subgroup {
        self.orthogonal_subgroup(&self.full_subgroup())
    }

    /// Kernel {x in radical : q(x) = 0}.
    pub fn kernel(&self) -> Subgroup {
        let rad = self.radical();
        let gens: Vec<Vec<i64>> = rad
            .elements()
            .into_iter()
            .filter(|e| self.q_value(e).is_zero())
            .collect();
        Subgroup::from_generators(&self.orders, &gens)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().order() == 1
    }

    /// True iff q vanishes mod 2 and b mod 1 on the subgroup.
    pub fn is_isotropic(&self, h: &Subgroup) -> bool {
        let (_, gens) = h.presentation();
        for (i, g) in gens.iter().enumerate() {
            if !self.q_value(g).is_zero() {
                return false;
            }
            for g2 in gens.iter().skip(i + 1) {
                if !self.b_value(g, g2).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Restriction to a subgroup: form on the subgroup's own presentation,
    /// returned with the chosen generators (as ambient tuples), aligned with
    /// the form's generator order.
    pub fn restrict(&self, h: &Subgroup) -> (FiniteQuadraticForm, Vec<Vec<i64>>) {
        assert_eq!(h.ambient_orders(), self.orders());
        let (orders, gens) = h.presentation();
        self.form_on_generators(orders, gens)
    }

    /// Builds the form induced on the given (order, ambient tuple) generators
    /// of an internal subgroup, keeping tuples aligned with the result.
    fn form_on_generators(
        &self,
        orders: Vec<u64>,
        gens: Vec<Vec<i64>>,
    ) -> (FiniteQuadraticForm, Vec<Vec<i64>>) {
        let mut idx: Vec<usize> = (0..orders.len()).collect();
        idx.sort_by_key(|&i| orders[i]);
        let orders: Vec<u64> = idx.iter().map(|&i| orders[i]).collect();
        let gens: Vec<Vec<i64>> = idx.iter().map(|&i| gens[i].clone()).collect();
        let k = orders.len();
        let mut gram = RatMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let v = if i == j {
                    self.q_value(&gens[i])
                } else {
                    self.b_value(&gens[i], &gens[j])
                };
                gram.set(i, j, v);
            }
        }
        let form =
            FiniteQuadraticForm::new(orders, gram).expect("restriction of a valid form");
        (form, gens)
    }

    /// Form induced on (orthogonal complement of `gamma`) / `gamma` for an
    /// isotropic subgroup `gamma`.
    pub fn subquotient(&self, gamma: &Subgroup) -> Result<FiniteQuadraticForm, FormError> {
        if !self.is_isotropic(gamma) {
            return Err(FormError::NotIsotropic);
        }
        let perp = self.orthogonal_subgroup(gamma);
        let (_, perp_gens) = perp.presentation();
        let (_, gamma_gens) = gamma.presentation();
        // Work in Z^k: lattice of perp and of gamma (+ diag rows).
        let big = lattice_of(&self.orders, &perp_gens);
        let small = lattice_of(&self.orders, &gamma_gens);
        let (orders, gens) = quotient_presentation(&big, &small, &self.orders);
        Ok(self.form_on_generators(orders, gens).0)
    }
}

/// Lattice in Z^k projecting onto the subgroup spanned by `gens`.
fn lattice_of(ambient_orders: &[u64], gens: &[Vec<i64>]) -> IntMat {
    let k = ambient_orders.len();
    let mut rows: Vec<Vec<i64>> = gens.to_vec();
    for (i, &d) in ambient_orders.iter().enumerate() {
        let mut row = vec![0i64; k];
        row[i] = d as i64;
        rows.push(row);
    }
    IntMat::from_rows(&rows).hermite_normal_form()
}

/// Presentation of big/small as (orders, generator tuples in the ambient).
fn quotient_presentation(
    big: &IntMat,
    small: &IntMat,
    ambient_orders: &[u64],
) -> (Vec<u64>, Vec<Vec<i64>>) {
    let k = ambient_orders.len();
    if k == 0 {
        return (vec![], vec![]);
    }
    let big_inv = RatMat::from_int(big).inverse().expect("full rank");
    let x = RatMat::from_int(small)
        .mul(&big_inv)
        .to_int()
        .expect("small lattice contained in big");
    let snf = smith_normal_form(&x);
    let mut orders = Vec::new();
    let mut gens = Vec::new();
    for (i, d) in snf.diagonal().iter().enumerate() {
        assert!(!d.is_zero());
        let order = u64::try_from(d).expect("fits");
        if order == 1 {
            continue;
        }
        let mut tuple = vec![0i64; k];
        for j in 0..k {
            let mut acc = Int::zero();
            for t in 0..k {
                acc += snf.v_inv.at(i, t) * big.at(t, j);
            }
            let m = Int::from(ambient_orders[j]);
            let r = num_integer::Integer::mod_floor(&acc, &m);
            tuple[j] = i64::try_from(&r).expect("fits");
        }
        orders.push(order);
        gens.push(tuple);
    }
    (orders, gens)
}

/// Sorts generator orders ascending (permuting the gram accordingly) and
/// merges coprime factors so the stored orders form a divisibility chain.
fn canonicalize(orders: Vec<u64>, gram: RatMat) -> Result<FiniteQuadraticForm, FormError> {
    let k = orders.len();
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by_key(|&i| orders[i]);
    let sorted: Vec<u64> = idx.iter().map(|&i| orders[i]).collect();
    let mut g = RatMat::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            g.set(a, b, gram.at(idx[a], idx[b]).clone());
        }
    }
    // Merge a coprime pair (d_i, d_j) into one generator of order d_i * d_j.
    for i in 0..k {
        for j in i + 1..k {
            if num_integer::Integer::gcd(&sorted[i], &sorted[j]) == 1 {
                let mut keep: Vec<usize> = (0..k).filter(|&t| t != i && t != j).collect();
                let merged_order = sorted[i] * sorted[j];
                let mut orders2: Vec<u64> = keep.iter().map(|&t| sorted[t]).collect();
                orders2.push(merged_order);
                keep.push(usize::MAX); // marker for the merged generator
                let kk = orders2.len();
                let mut g2 = RatMat::zeros(kk, kk);
                let merged_val = |a: usize, b: usize, m: &RatMat| -> Frac {
                    // merged generator = g_i + g_j
                    if a == usize::MAX && b == usize::MAX {
                        let q = m.at(i, i)
                            + m.at(j, j)
                            + Frac::from_integer(Int::from(2)) * m.at(i, j);
                        mod_frac(&q, 2)
                    } else if a == usize::MAX {
                        mod_frac(&(m.at(i, b).clone() + m.at(j, b)), 1)
                    } else if b == usize::MAX {
                        mod_frac(&(m.at(a, i).clone() + m.at(a, j)), 1)
                    } else if a == b {
                        m.at(a, a).clone()
                    } else {
                        m.at(a, b).clone()
                    }
                };
                for (a2, &ai) in keep.iter().enumerate() {
                    for (b2, &bi) in keep.iter().enumerate() {
                        g2.set(a2, b2, merged_val(ai, bi, &g));
                    }
                }
                return canonicalize(orders2, g2);
            }
        }
    }
    FiniteQuadraticForm::new(sorted, g)
}

impl std::fmt::Debug for FiniteQuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteQuadraticForm(orders={:?}, gram={:?})", self.orders, self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;

    #[test]
    fn u_values() {
        let u = standard_form(StandardForm::U);
        let vals = u.value_multiset();
        // {0,0,0,1}
        assert_eq!(
            vals,
            vec![(frac(0, 1), 3), (frac(1, 1), 1)]
        );
    }

    #[test]
    fn v_values() {
        let v = standard_form(StandardForm::V);
        let vals = v.value_multiset();
        assert_eq!(vals, vec![(frac(0, 1), 1), (frac(1, 1), 3)]);
    }

    #[test]
    fn w_and_z_are_degenerate() {
        for name in [StandardForm::W, StandardForm::Z] {
            let f = standard_form(name);
            assert_eq!(f.radical().order(), 2);
        }
        assert_eq!(standard_form(StandardForm::W).kernel().order(), 1);
        assert_eq!(standard_form(StandardForm::Z).kernel().order(), 2);
    }

    #[test]
    fn radical_of_w_z2_stack() {
        // w + z^2: radical is everything, kernel has index 2.
        let w = standard_form(StandardForm::W);
        let z = standard_form(StandardForm::Z);
        let f = w.direct_sum(&z).direct_sum(&z);
        assert_eq!(f.radical().min_generators(), 3);
        assert_eq!(f.kernel().min_generators(), 2);
    }

    #[test]
    fn axioms_exhaustive_on_small_forms() {
        // q(na) = n^2 q(a) and q(a+b) = q(a)+q(b)+2b(a,b), checked on every
        // element pair of each catalogued small form.
        let forms = [
            standard_form(StandardForm::U),
            standard_form(StandardForm::V),
            standard_form(StandardForm::W),
            standard_form(StandardForm::Z),
            standard_form(StandardForm::V4),
            standard_form(StandardForm::FracForm(1, 4)),
            standard_form(StandardForm::FracForm(-1, 4)),
            standard_form(StandardForm::U).direct_sum(&standard_form(StandardForm::V4)),
        ];
        for f in &forms {
            assert!(f.order() <= 256);
            let elts = f.elements();
            for a in &elts {
                for n in 0..4i64 {
                    let na: Vec<i64> = a
                        .iter()
                        .zip(f.orders())
                        .map(|(&x, &d)| (n * x).rem_euclid(d as i64))
                        .collect();
                    let lhs = f.q_value(&na);
                    let rhs = mod_frac(&(Frac::from_integer(Int::from(n * n)) * f.q_value(a)), 2);
                    assert_eq!(lhs, rhs, "q(na) = n^2 q(a) failed");
                }
                for b in &elts {
                    let ab = add_tuples(f.orders(), a, b);
                    let lhs = f.q_value(&ab);
                    let rhs = mod_frac(
                        &(f.q_value(a)
                            + f.q_value(b)
                            + Frac::from_integer(Int::from(2)) * f.b_value(a, b)),
                        2,
                    );
                    assert_eq!(lhs, rhs, "polarization axiom failed");
                }
            }
        }
    }

    #[test]
    fn subquotient_cardinality() {
        let u = standard_form(StandardForm::U);
        let q = u.direct_sum(&u);
        // One isotropic line in u^2: (e1 of first u, e1 of second u) has q = 0.
        let gamma = Subgroup::from_generators(q.orders(), &[vec![1, 0, 1, 0]]);
        assert!(q.is_isotropic(&gamma));
        let sub = q.subquotient(&gamma).unwrap();
        assert_eq!(sub.order() * 4, q.order());
    }

    #[test]
    fn restrict_to_trivial() {
        let u = standard_form(StandardForm::U);
        let (f, _) = u.restrict(&u.trivial_subgroup());
        assert_eq!(f.gen_count(), 0);
    }
}
