use crate::exactnum::{frac, RatMat};

use super::FiniteQuadraticForm;

/// The named building-block forms.
///
/// `U` and `V` are the discriminant forms of the doubled hyperbolic plane
/// and of the (negative definite) D4 lattice; `W` and `Z` are the two
/// degenerate forms on Z/2 with q-value 1 resp. 0; `FracForm(a, n)` is the
/// form on Z/n with q(gen) = a/n mod 2; `V4` is the order-16 form on
/// (Z/4)^2 carried by the doubled D4 lattice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StandardForm {
    U,
    V,
    W,
    Z,
    FracForm(i64, i64),
    V4,
}

pub fn standard_form(name: StandardForm) -> FiniteQuadraticForm {
    match name {
        StandardForm::U => {
            let mut g = RatMat::zeros(2, 2);
            g.set(0, 1, frac(1, 2));
            g.set(1, 0, frac(1, 2));
            FiniteQuadraticForm::new(vec![2, 2], g).expect("u is valid")
        }
        StandardForm::V => {
            let mut g = RatMat::zeros(2, 2);
            g.set(0, 0, frac(1, 1));
            g.set(1, 1, frac(1, 1));
            g.set(0, 1, frac(1, 2));
            g.set(1, 0, frac(1, 2));
            FiniteQuadraticForm::new(vec![2, 2], g).expect("v is valid")
        }
        StandardForm::W => {
            let mut g = RatMat::zeros(1, 1);
            g.set(0, 0, frac(1, 1));
            FiniteQuadraticForm::new(vec![2], g).expect("w is valid")
        }
        StandardForm::Z => {
            FiniteQuadraticForm::new(vec![2], RatMat::zeros(1, 1)).expect("z is valid")
        }
        StandardForm::FracForm(a, n) => {
            assert!(n > 1, "FracForm needs modulus > 1");
            let mut g = RatMat::zeros(1, 1);
            g.set(0, 0, frac(a, n));
            FiniteQuadraticForm::new(vec![n as u64], g).expect("fraction form is valid")
        }
        StandardForm::V4 => {
            let mut g = RatMat::zeros(2, 2);
            g.set(0, 0, frac(1, 2));
            g.set(1, 1, frac(1, 2));
            g.set(0, 1, frac(1, 4));
            g.set(1, 0, frac(1, 4));
            FiniteQuadraticForm::new(vec![4, 4], g).expect("v(4) is valid")
        }
    }
}

/// n-fold direct sum helper.
pub fn power(form: &FiniteQuadraticForm, n: usize) -> FiniteQuadraticForm {
    let mut acc = FiniteQuadraticForm::trivial();
    for _ in 0..n {
        acc = acc.direct_sum(form);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;

    #[test]
    fn w_value_is_one() {
        let w = standard_form(StandardForm::W);
        assert_eq!(w.q_value(&[1]), frac(1, 1));
        assert!(w.b_value(&[1], &[1]).eq(&frac(0, 1)));
    }

    #[test]
    fn v4_generator_pairings() {
        let v4 = standard_form(StandardForm::V4);
        assert_eq!(v4.q_value(&[1, 0]), frac(1, 2));
        assert_eq!(v4.b_value(&[1, 0], &[0, 1]), frac(1, 4));
        assert_eq!(v4.q_value(&[2, 0]), frac(0, 1)); // 4 * (1/2) = 2 = 0 mod 2
        assert_eq!(v4.q_value(&[1, 1]), frac(3, 2)); // 1/2 + 1/2 + 2/4
    }

    #[test]
    fn neg_quarter_form() {
        let f = standard_form(StandardForm::FracForm(-1, 4));
        assert_eq!(f.q_value(&[1]), frac(7, 4));
        assert_eq!(f.q_value(&[2]), frac(1, 1));
    }
}
