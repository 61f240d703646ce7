use num_traits::{Signed, Zero};

use crate::exactnum::{Frac, Int, RatMat};

use super::{Lattice, LatticeError};

/// All vectors of the stated norm in a definite lattice, one per sign pair
/// (the representative has positive first nonzero coordinate). The norm is
/// given in the lattice's own sign convention; for negative definite input
/// the enumeration runs on the negated Gram.
pub fn short_vectors(lattice: &Lattice, norm: i64) -> Result<Vec<Vec<Int>>, LatticeError> {
    let n = lattice.rank();
    if n == 0 {
        return Ok(vec![]);
    }
    let (plus, minus) = lattice.signature();
    let (gram, target) = if minus == 0 {
        (RatMat::from_int(lattice.gram()), norm)
    } else if plus == 0 {
        (RatMat::from_int(&lattice.gram().neg()), -norm)
    } else {
        return Err(LatticeError::IndefiniteLattice);
    };
    if target <= 0 {
        return Ok(vec![]);
    }
    let target = Frac::from_integer(Int::from(target));

    // Exact LDL: q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2.
    let mut work = gram;
    let mut diag = vec![Frac::zero(); n];
    let mut upper = RatMat::zeros(n, n);
    for i in 0..n {
        let d = work.at(i, i).clone();
        assert!(d.is_positive(), "definite gram has positive pivots");
        diag[i] = d.clone();
        for j in i + 1..n {
            upper.set(i, j, work.at(i, j) / &d);
        }
        for r in i + 1..n {
            for c in i + 1..n {
                let v = work.at(r, c) - work.at(r, i) * work.at(i, c) / &d;
                work.set(r, c, v);
            }
        }
    }

    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut coords = vec![0i64; n];
    walk(
        n,
        &diag,
        &upper,
        &target,
        n,
        &target,
        &mut coords,
        &mut found,
    );
    let mut out = Vec::new();
    for v in found {
        let first = v.iter().find(|&&x| x != 0);
        match first {
            None => continue,
            Some(&x) if x < 0 => continue,
            _ => out.push(v.into_iter().map(Int::from).collect()),
        }
    }
    Ok(out)
}

/// Depth-first box walk over coordinate `level - 1`, with `remaining` norm
/// budget; collects exact hits.
#[allow(clippy::too_many_arguments)]
fn walk(
    n: usize,
    diag: &[Frac],
    upper: &RatMat,
    target: &Frac,
    level: usize,
    remaining: &Frac,
    coords: &mut Vec<i64>,
    found: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        if remaining.is_zero() && coords.iter().any(|&x| x != 0) {
            found.push(coords.clone());
        }
        return;
    }
    let i = level - 1;
    // Center of the allowed interval: -sum_{j>i} u_ij x_j.
    let mut center = Frac::zero();
    for j in i + 1..n {
        if coords[j] == 0 {
            continue;
        }
        center -= upper.at(i, j) * Frac::from_integer(Int::from(coords[j]));
    }
    // Scan integers outward from the rounded center while the quadratic
    // contribution stays within budget.
    let start = round_to_i64(&center);
    for dir in [1i64, -1] {
        let mut x = if dir == 1 { start } else { start - 1 };
        loop {
            let offset = Frac::from_integer(Int::from(x)) - &center;
            let contrib = &diag[i] * &offset * &offset;
            if &contrib > remaining {
                break;
            }
            coords[i] = x;
            let next_rem = remaining - &contrib;
            walk(n, diag, upper, target, level - 1, &next_rem, coords, found);
            coords[i] = 0;
            x += dir;
        }
    }
}

fn round_to_i64(f: &Frac) -> i64 {
    let num = f.numer();
    let den = f.denom();
    let two = Int::from(2);
    let rounded = num_integer::Integer::div_floor(&(num * &two + den), &(den * &two));
    i64::try_from(&rounded).expect("coordinate fits in i64")
}

#[cfg(test)]
mod tests {
    use super::super::named::parse_lattice_name;
    use super::*;

    #[test]
    fn a1_doubled_norm_four() {
        let l = parse_lattice_name("A1(2)").unwrap();
        let v = short_vectors(&l, -4).unwrap();
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn e8_has_240_roots() {
        // Independent oracle: the even-coordinate model of the same lattice.
        // Roots are +-e_i +- e_j (112 of them) and half-integer vectors with
        // all |x_i| = 1/2 and an even number of minus signs (128).
        let mut oracle = 0usize;
        for i in 0..8 {
            for j in i + 1..8 {
                let _ = (i, j);
                oracle += 4;
            }
        }
        let mut half = 0usize;
        for mask in 0u32..256 {
            if mask.count_ones() % 2 == 0 {
                half += 1;
            }
        }
        oracle += half;
        assert_eq!(oracle, 240);

        let e8 = parse_lattice_name("E8").unwrap();
        let v = short_vectors(&e8, -2).unwrap();
        assert_eq!(2 * v.len(), 240);
    }

    #[test]
    fn doubled_e8_has_no_minus_two() {
        let l = parse_lattice_name("E8(2)").unwrap();
        assert!(short_vectors(&l, -2).unwrap().is_empty());
        assert_eq!(2 * short_vectors(&l, -4).unwrap().len(), 240);
    }

    #[test]
    fn indefinite_rejected() {
        let u = parse_lattice_name("U").unwrap();
        assert!(matches!(
            short_vectors(&u, 2),
            Err(LatticeError::IndefiniteLattice)
        ));
    }

    #[test]
    fn wrong_sign_norm_is_empty() {
        let e8 = parse_lattice_name("E8").unwrap();
        assert!(short_vectors(&e8, 2).unwrap().is_empty());
    }
}
