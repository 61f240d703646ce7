use num_traits::{Signed, Zero};

use super::{ExactNumError, Frac, IntMat, RatMat};

/// Exact signature (n_plus, n_minus) of a nondegenerate symmetric integer
/// matrix, by rational congruence diagonalization.
///
/// When every remaining diagonal entry vanishes, a symmetric row+column move
/// manufactures a nonzero pivot from an off-diagonal entry.
pub fn signature(gram: &IntMat) -> Result<(usize, usize), ExactNumError> {
    if !gram.is_square() {
        return Err(ExactNumError::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        });
    }
    assert!(gram.is_symmetric(), "signature requires a symmetric matrix");
    let n = gram.rows();
    let mut m = RatMat::from_int(gram);
    let mut plus = 0usize;
    let mut minus = 0usize;
    for t in 0..n {
        if m.at(t, t).is_zero() {
            // Prefer a later diagonal entry.
            if let Some(r) = (t + 1..n).find(|&r| !m.at(r, r).is_zero()) {
                swap_symmetric(&mut m, t, r);
            } else if let Some((i, j)) = find_offdiag(&m, t) {
                // row_i += row_j and col_i += col_j gives diagonal 2*m[i][j].
                add_symmetric(&mut m, i, j);
                swap_symmetric(&mut m, t, i);
            } else {
                return Err(ExactNumError::DegenerateForm);
            }
        }
        let pivot = m.at(t, t).clone();
        if pivot.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for r in t + 1..n {
            if m.at(r, t).is_zero() {
                continue;
            }
            let f = m.at(r, t) / &pivot;
            for c in t..n {
                let v = m.at(r, c).clone() - &f * m.at(t, c);
                m.set(r, c, v);
            }
            for c in t..n {
                let v = m.at(c, r).clone() - &f * m.at(c, t);
                m.set(c, r, v);
            }
        }
    }
    Ok((plus, minus))
}

fn swap_symmetric(m: &mut RatMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    let n = m.rows();
    for j in 0..n {
        let x = m.at(a, j).clone();
        let y = m.at(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
    for i in 0..n {
        let x = m.at(i, a).clone();
        let y = m.at(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

fn add_symmetric(m: &mut RatMat, target: usize, source: usize) {
    let n = m.rows();
    for j in 0..n {
        let v = m.at(target, j) + m.at(source, j);
        m.set(target, j, v);
    }
    for i in 0..n {
        let v = m.at(i, target) + m.at(i, source);
        m.set(i, target, v);
    }
}

fn find_offdiag(m: &RatMat, from: usize) -> Option<(usize, usize)> {
    let n = m.rows();
    for i in from..n {
        for j in i + 1..n {
            if !m.at(i, j).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

#[allow(dead_code)]
fn frac_is_zero(f: &Frac) -> bool {
    f.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_plane() {
        let u = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(signature(&u).unwrap(), (1, 1));
    }

    #[test]
    fn degenerate_detected() {
        let m = IntMat::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(matches!(signature(&m), Err(ExactNumError::DegenerateForm)));
    }

    #[test]
    fn rank0_signature() {
        assert_eq!(signature(&IntMat::zeros(0, 0)).unwrap(), (0, 0));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        // Random small unimodular matrices as products of elementary ops.
        fn unimodular(n: usize) -> impl Strategy<Value = IntMat> {
            proptest::collection::vec((0usize..n, 0usize..n, -2i64..3), 0..8).prop_map(
                move |ops| {
                    let mut p = IntMat::identity(n);
                    for (i, j, c) in ops {
                        if i == j {
                            continue;
                        }
                        // row_i += c * row_j
                        for col in 0..n {
                            let v = p.at(i, col) + &crate::exactnum::int(c) * p.at(j, col);
                            p.set(i, col, v);
                        }
                    }
                    p
                },
            )
        }

        fn symmetric(n: usize) -> impl Strategy<Value = IntMat> {
            proptest::collection::vec(-5i64..6, n * (n + 1) / 2).prop_map(move |vals| {
                let mut m = IntMat::zeros(n, n);
                let mut it = vals.into_iter();
                for i in 0..n {
                    for j in i..n {
                        let v = crate::exactnum::int(it.next().unwrap());
                        m.set(i, j, v.clone());
                        m.set(j, i, v);
                    }
                }
                m
            })
        }

        proptest! {
            #[test]
            fn invariant_under_congruence((g, p) in (symmetric(4), unimodular(4))) {
                let orig = signature(&g);
                let conj = p.transpose().mul(&g).mul(&p);
                let trans = signature(&conj);
                match (orig, trans) {
                    (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                    (Err(_), Err(_)) => {}
                    other => prop_assert!(false, "congruence changed degeneracy: {:?}", other),
                }
            }
        }
    }
}
