use num_traits::Zero;

use crate::exactnum::{Frac, Int};

use super::{FiniteQuadraticForm, FormError};

/// Element of Z[zeta_8] in the basis (1, z, z^2, z^3) with z^4 = -1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Cyclo8([i64; 4]);

impl Cyclo8 {
    const ZERO: Cyclo8 = Cyclo8([0; 4]);

    fn root_power(k: u8) -> Cyclo8 {
        let k = k % 8;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k as usize] = 1;
        } else {
            c[(k - 4) as usize] = -1;
        }
        Cyclo8(c)
    }

    fn add(self, other: Cyclo8) -> Cyclo8 {
        let mut c = [0i64; 4];
        for i in 0..4 {
            c[i] = self.0[i] + other.0[i];
        }
        Cyclo8(c)
    }

    fn mul_root(self, k: u8) -> Cyclo8 {
        let mut out = self;
        for _ in 0..(k % 8) {
            let Cyclo8([a, b, c, d]) = out;
            out = Cyclo8([-d, a, b, c]);
        }
        out
    }

    fn scale(self, m: i64) -> Cyclo8 {
        Cyclo8([self.0[0] * m, self.0[1] * m, self.0[2] * m, self.0[3] * m])
    }
}

impl FiniteQuadraticForm {
    /// Milgram signature: the residue s mod 8 with
    /// sum_x exp(pi i q(x)) = sqrt(|A|) * zeta_8^s, computed exactly in
    /// Z[zeta_8]. Requires a nondegenerate form on a 2-group of exponent
    /// at most 4 (all q-values then lie in (1/4)Z).
    pub fn gauss_signature(&self) -> Result<u8, FormError> {
        if self.orders().iter().any(|&d| d != 2 && d != 4) {
            return Err(FormError::UnsupportedExponent);
        }
        if !self.is_nondegenerate() {
            return Err(FormError::DegenerateForm);
        }
        let four = Frac::from_integer(Int::from(4));
        let mut sum = Cyclo8::ZERO;
        for e in self.elements() {
            let q = self.q_value(&e);
            let scaled = q * &four; // q in units of 1/4: zeta_8 exponent
            assert!(scaled.is_integer());
            let k = u8::try_from(
                num_integer::Integer::mod_floor(&scaled.to_integer(), &Int::from(8)),
            )
            .expect("reduced exponent");
            sum = sum.add(Cyclo8::root_power(k));
        }
        // |A| = 2^a; the target is 2^(a/2) * zeta^s, with sqrt2 = z - z^3.
        let a: u32 = self
            .orders()
            .iter()
            .map(|&d| if d == 2 { 1 } else { 2 })
            .sum();
        let base = if a % 2 == 0 {
            Cyclo8([1 << (a / 2), 0, 0, 0])
        } else {
            Cyclo8([0, 1, 0, -1]).scale(1 << (a / 2))
        };
        for s in 0u8..8 {
            if base.mul_root(s) == sum {
                return Ok(s);
            }
        }
        Err(FormError::DegenerateForm)
    }
}

#[allow(dead_code)]
fn unused(f: &Frac) -> bool {
    f.is_zero()
}
