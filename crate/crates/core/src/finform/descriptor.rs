use num_traits::Zero;

use crate::exactnum::Frac;

use super::{FiniteQuadraticForm, FormError};

/// Canonical label for the forms arising in the classification pipeline:
/// for those forms, equal descriptors imply isomorphic forms (and trivially
/// conversely), which the test suite cross-validates against the
/// backtracking isomorphism search.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FormDescriptor {
    pub dim: usize,
    pub radical_dim: usize,
    pub radical_q_nonzero: bool,
    /// Arf invariant of the nondegenerate quotient, defined when all
    /// q-values are integral and the carrier is 2-elementary. When the
    /// radical carries a nonzero q-value the complement class is a gauge
    /// choice, normalized here to 0.
    pub arf: Option<u8>,
    /// Gauss-sum signature mod 8 for nondegenerate forms.
    pub sig: Option<u8>,
    /// Present exactly when the carrier has order-4 invariant factors.
    pub order4: Option<Order4Part>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Order4Part {
    pub two_count: usize,
    pub four_count: usize,
    pub value_counts: Vec<(Frac, u64)>,
}

impl FiniteQuadraticForm {
    pub fn descriptor(&self) -> Result<FormDescriptor, FormError> {
        if self.orders().iter().any(|&d| d != 2 && d != 4) {
            return Err(FormError::UnsupportedExponent);
        }
        let dim = self.gen_count();
        let radical = self.radical();
        let radical_elements = radical.elements();
        let radical_dim = radical.min_generators();
        let radical_q_nonzero = radical_elements
            .iter()
            .any(|e| !self.q_value(e).is_zero());

        let two_elementary = self.orders().iter().all(|&d| d == 2);
        let all_integral = self
            .value_multiset()
            .iter()
            .all(|(v, _)| v.is_integer());

        let arf = if two_elementary && all_integral {
            if radical_q_nonzero {
                Some(0)
            } else {
                // q vanishes on the radical, so the quotient form is defined;
                // read the Arf invariant off the zero count.
                let quot = self.subquotient(&radical)?;
                Some(arf_from_counts(&quot))
            }
        } else {
            None
        };

        let sig = if radical.order() == 1 {
            Some(self.gauss_signature()?)
        } else {
            None
        };

        let order4 = if self.orders().iter().any(|&d| d == 4) {
            Some(Order4Part {
                two_count: self.orders().iter().filter(|&&d| d == 2).count(),
                four_count: self.orders().iter().filter(|&&d| d == 4).count(),
                value_counts: self.value_multiset(),
            })
        } else {
            None
        };

        Ok(FormDescriptor {
            dim,
            radical_dim,
            radical_q_nonzero,
            arf,
            sig,
            order4,
        })
    }
}

fn arf_from_counts(nondeg: &FiniteQuadraticForm) -> u8 {
    let n = nondeg.gen_count() as u32;
    if n == 0 {
        return 0;
    }
    let zeros: u64 = nondeg
        .value_multiset()
        .iter()
        .filter(|(v, _)| v.is_zero())
        .map(|(_, c)| *c)
        .sum();
    // Arf 0 forms have 2^(n-1) + 2^(n/2-1) zeros, Arf 1 forms fewer.
    if zeros > 1u64 << (n - 1) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::super::standard::{power, standard_form, StandardForm};
    use super::*;

    fn u() -> FiniteQuadraticForm {
        standard_form(StandardForm::U)
    }
    fn v() -> FiniteQuadraticForm {
        standard_form(StandardForm::V)
    }
    fn w() -> FiniteQuadraticForm {
        standard_form(StandardForm::W)
    }
    fn z() -> FiniteQuadraticForm {
        standard_form(StandardForm::Z)
    }

    #[test]
    fn u3w_descriptor() {
        let f = power(&u(), 3).direct_sum(&w());
        let d = f.descriptor().unwrap();
        assert_eq!(d.dim, 7);
        assert_eq!(d.radical_dim, 1);
        assert!(d.radical_q_nonzero);
        assert_eq!(d.arf, Some(0));
    }

    #[test]
    fn u3z_descriptor() {
        let f = power(&u(), 3).direct_sum(&z());
        let d = f.descriptor().unwrap();
        assert_eq!(d.dim, 7);
        assert_eq!(d.radical_dim, 1);
        assert!(!d.radical_q_nonzero);
        assert_eq!(d.arf, Some(0));
    }

    #[test]
    fn v_z2_descriptor() {
        let f = v().direct_sum(&power(&z(), 2));
        let d = f.descriptor().unwrap();
        assert_eq!(d.dim, 4);
        assert_eq!(d.radical_dim, 2);
        assert!(!d.radical_q_nonzero);
        assert_eq!(d.arf, Some(1));
    }

    #[test]
    fn descriptors_separate_u_and_v() {
        assert_ne!(u().descriptor().unwrap(), v().descriptor().unwrap());
    }

    #[test]
    fn descriptor_matches_isomorphism_on_relations() {
        // w + z = w^2 and w + v = w + u: equal descriptors and isomorphic.
        let pairs = [
            (w().direct_sum(&z()), power(&w(), 2)),
            (w().direct_sum(&v()), w().direct_sum(&u())),
            (power(&w(), 4), power(&w(), 2).direct_sum(&power(&z(), 2))),
        ];
        for (a, b) in &pairs {
            assert_eq!(a.descriptor().unwrap(), b.descriptor().unwrap());
            assert!(a.is_isomorphic(b).unwrap().is_some());
        }
    }
}
