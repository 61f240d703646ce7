use num_traits::Signed;

use crate::exactnum::{Int, IntMat};

use super::{short_vectors, Lattice, LatticeError};

const MAX_RANK: usize = 8;
const MAX_DET: i64 = 256;

/// Finds an isometry g with g^T G2 g = G1 between definite lattices, or
/// `None`. Invariant prechecks (rank, determinant, short-vector counts)
/// run first; then a backtracking assignment maps the basis of the first
/// lattice onto vectors of the second with matching pairings.
///
/// Intended for rank <= 8 and |det| <= 2^8; larger inputs give
/// `ResourceLimit`.
pub fn is_isometric_definite(
    l1: &Lattice,
    l2: &Lattice,
) -> Result<Option<IntMat>, LatticeError> {
    if l1.rank() != l2.rank() {
        return Ok(None);
    }
    let n = l1.rank();
    if n == 0 {
        return Ok(Some(IntMat::zeros(0, 0)));
    }
    if n > MAX_RANK || l1.det().abs() > Int::from(MAX_DET) || l2.det().abs() > Int::from(MAX_DET)
    {
        return Err(LatticeError::ResourceLimit);
    }
    let sig1 = l1.signature();
    let sig2 = l2.signature();
    if sig1.0 != 0 && sig1.1 != 0 {
        return Err(LatticeError::IndefiniteLattice);
    }
    if sig2.0 != 0 && sig2.1 != 0 {
        return Err(LatticeError::IndefiniteLattice);
    }
    if sig1 != sig2 {
        return Ok(None);
    }
    if l1.det() != l2.det() {
        return Ok(None);
    }
    let negative = sig1.0 == 0;
    let (g1, g2) = if negative {
        (l1.gram().neg(), l2.gram().neg())
    } else {
        (l1.gram().clone(), l2.gram().clone())
    };
    let pos1 = Lattice::new(g1.clone())?;
    let pos2 = Lattice::new(g2.clone())?;

    // Count prechecks at every norm on either diagonal.
    let mut norms: Vec<i64> = Vec::new();
    for i in 0..n {
        let v = i64::try_from(g1.at(i, i)).expect("norm fits");
        if !norms.contains(&v) {
            norms.push(v);
        }
        let v = i64::try_from(g2.at(i, i)).expect("norm fits");
        if !norms.contains(&v) {
            norms.push(v);
        }
    }
    for &t in &norms {
        if short_vectors(&pos1, t)?.len() != short_vectors(&pos2, t)?.len() {
            return Ok(None);
        }
    }

    // Candidate images per basis vector: all vectors of the right norm,
    // both signs.
    let mut candidates: Vec<Vec<Vec<Int>>> = Vec::with_capacity(n);
    for i in 0..n {
        let norm = i64::try_from(g1.at(i, i)).expect("norm fits");
        let ups = short_vectors(&pos2, norm)?;
        let mut cands = Vec::with_capacity(2 * ups.len());
        for v in ups {
            cands.push(v.iter().map(|x| -x).collect::<Vec<Int>>());
            cands.push(v);
        }
        candidates.push(cands);
    }

    let mut images: Vec<Vec<Int>> = Vec::new();
    if !assign(&g1, &g2, &candidates, &mut images) {
        return Ok(None);
    }
    // g columns are the images; verify the defining identity on the
    // original (possibly negated) grams.
    let mut w = IntMat::zeros(n, n);
    for (i, img) in images.iter().enumerate() {
        for (j, x) in img.iter().enumerate() {
            w.set(i, j, x.clone());
        }
    }
    let g = w.transpose();
    debug_assert_eq!(g.transpose().mul(l2.gram()).mul(&g), *l1.gram());
    Ok(Some(g))
}

fn assign(
    g1: &IntMat,
    g2: &IntMat,
    candidates: &[Vec<Vec<Int>>],
    images: &mut Vec<Vec<Int>>,
) -> bool {
    let i = images.len();
    if i == g1.rows() {
        return true;
    }
    'cand: for cand in &candidates[i] {
        for (j, prev) in images.iter().enumerate() {
            if pair(g2, cand, prev) != *g1.at(i, j) {
                continue 'cand;
            }
        }
        images.push(cand.clone());
        if assign(g1, g2, candidates, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn pair(g: &IntMat, a: &[Int], b: &[Int]) -> Int {
    let n = g.rows();
    let mut acc = Int::from(0);
    for i in 0..n {
        if a[i] == Int::from(0) {
            continue;
        }
        for j in 0..n {
            acc += &a[i] * g.at(i, j) * &b[j];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::named::parse_lattice_name;
    use super::*;
    use crate::exactnum::IntMat;

    #[test]
    fn permuted_basis_is_isometric() {
        let e8x2 = parse_lattice_name("E8(2)").unwrap();
        // Reverse the basis order.
        let n = e8x2.rank();
        let mut p = IntMat::zeros(n, n);
        for i in 0..n {
            p.set(i, n - 1 - i, Int::from(1));
        }
        let permuted =
            Lattice::new(p.transpose().mul(e8x2.gram()).mul(&p)).unwrap();
        let iso = is_isometric_definite(&e8x2, &permuted).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn determinant_separates_d4_from_a1s() {
        let d4 = parse_lattice_name("D4").unwrap();
        let a14 = parse_lattice_name("A1^4").unwrap();
        assert!(is_isometric_definite(&d4, &a14).unwrap().is_none());
    }

    #[test]
    fn a1_e7_not_isometric_to_d8() {
        // Both rank 8, det 4; root counts 128 vs 112 separate them.
        let l1 = parse_lattice_name("A1+E7").unwrap();
        let l2 = parse_lattice_name("D8").unwrap();
        let r1 = short_vectors(&l1, -2).unwrap().len() * 2;
        let r2 = short_vectors(&l2, -2).unwrap().len() * 2;
        assert_eq!((r1, r2), (128, 112));
        assert!(is_isometric_definite(&l1, &l2).unwrap().is_none());
    }

    #[test]
    fn e8_self_isometric() {
        let e8 = parse_lattice_name("E8").unwrap();
        let g = is_isometric_definite(&e8, &e8).unwrap().unwrap();
        assert_eq!(g.transpose().mul(e8.gram()).mul(&g), *e8.gram());
    }

    #[test]
    fn oversized_input_rejected() {
        let big = parse_lattice_name("A1(2)^5").unwrap(); // det 4^5 > 256
        assert!(matches!(
            is_isometric_definite(&big, &big),
            Err(LatticeError::ResourceLimit)
        ));
    }
}
