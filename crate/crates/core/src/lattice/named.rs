use crate::exactnum::IntMat;

use super::{Lattice, LatticeError};

/// Negated Cartan matrix of a simply-laced root system, so the root
/// lattices come out negative definite. Node numbering is fixed once and
/// for all: A_n is a chain; D_n is a chain of n-2 nodes with two extra
/// nodes attached to its last link; E_n uses the chain 1-3-4-5-6(-7)(-8)
/// with node 2 attached to node 4.
fn negated_cartan(edges: &[(usize, usize)], n: usize) -> IntMat {
    let mut g = IntMat::zeros(n, n);
    for i in 0..n {
        g.set(i, i, crate::exactnum::int(-2));
    }
    for &(a, b) in edges {
        g.set(a, b, crate::exactnum::int(1));
        g.set(b, a, crate::exactnum::int(1));
    }
    g
}

pub fn root_a(n: usize) -> Lattice {
    assert!(n >= 1);
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Lattice::new(negated_cartan(&edges, n))
        .expect("root lattice gram is nondegenerate")
        .with_name(format!("A{n}"))
}

pub fn root_d(n: usize) -> Lattice {
    assert!(n >= 3);
    let mut edges: Vec<(usize, usize)> = (0..n - 3).map(|i| (i, i + 1)).collect();
    edges.push((n - 3, n - 2));
    edges.push((n - 3, n - 1));
    Lattice::new(negated_cartan(&edges, n))
        .expect("root lattice gram is nondegenerate")
        .with_name(format!("D{n}"))
}

pub fn root_e(n: usize) -> Lattice {
    assert!((6..=8).contains(&n));
    // 0-based: chain 0-2-3-4-5(-6)(-7), with node 1 attached to node 3.
    let mut edges = vec![(0, 2), (2, 3), (1, 3), (3, 4), (4, 5)];
    if n >= 7 {
        edges.push((5, 6));
    }
    if n == 8 {
        edges.push((6, 7));
    }
    Lattice::new(negated_cartan(&edges, n))
        .expect("root lattice gram is nondegenerate")
        .with_name(format!("E{n}"))
}

pub fn hyperbolic() -> Lattice {
    Lattice::new(IntMat::from_rows(&[vec![0, 1], vec![1, 0]]))
        .expect("U is nondegenerate")
        .with_name("U")
}

pub fn rank_one(n: i64) -> Lattice {
    assert!(n != 0);
    Lattice::new(IntMat::from_rows(&[vec![n]]))
        .expect("nonzero rank-1 form")
        .with_name(format!("<{n}>"))
}

pub fn zero_lattice() -> Lattice {
    Lattice::new(IntMat::zeros(0, 0))
        .expect("rank 0 lattice")
        .with_name("0")
}

/// Parses labels like `U`, `U(2)`, `A1(2)^3`, `E8(2)`, `<4>`,
/// `U+U(2)+D4(2)` or `0` into the corresponding lattice.
pub fn parse_lattice_name(label: &str) -> Result<Lattice, LatticeError> {
    let label = label.trim();
    if label == "0" {
        return Ok(zero_lattice());
    }
    let mut acc: Option<Lattice> = None;
    for term in label.split('+') {
        let lat = parse_term(term.trim())
            .ok_or_else(|| LatticeError::UnknownName(label.to_string()))?;
        acc = Some(match acc {
            None => lat,
            Some(prev) => prev.direct_sum(&lat),
        });
    }
    acc.ok_or_else(|| LatticeError::UnknownName(label.to_string()))
        .map(|l| l.with_name(label))
}

fn parse_term(term: &str) -> Option<Lattice> {
    let (body, power) = match term.split_once('^') {
        Some((b, p)) => (b, p.parse::<usize>().ok()?),
        None => (term, 1),
    };
    if power == 0 {
        return Some(zero_lattice());
    }
    let (core, scale) = match body.find('(') {
        Some(i) => {
            let inner = body[i..].strip_prefix('(')?.strip_suffix(')')?;
            (&body[..i], inner.parse::<i64>().ok()?)
        }
        None => (body, 1),
    };
    let base = if core == "U" {
        hyperbolic()
    } else if let Some(rest) = core.strip_prefix('A') {
        root_a(rest.parse().ok()?)
    } else if let Some(rest) = core.strip_prefix('D') {
        root_d(rest.parse().ok()?)
    } else if let Some(rest) = core.strip_prefix('E') {
        root_e(rest.parse().ok()?)
    } else if let Some(inner) = core.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        rank_one(inner.parse().ok()?)
    } else {
        return None;
    };
    let scaled = if scale == 1 { base } else { base.rescale(scale) };
    let mut acc = scaled.clone();
    for _ in 1..power {
        acc = acc.direct_sum(&scaled);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Int;

    #[test]
    fn u2_gram() {
        let l = parse_lattice_name("U(2)").unwrap();
        assert_eq!(*l.gram(), IntMat::from_rows(&[vec![0, 2], vec![2, 0]]));
    }

    #[test]
    fn a1_is_minus_two() {
        let l = parse_lattice_name("A1").unwrap();
        assert_eq!(*l.gram(), IntMat::from_rows(&[vec![-2]]));
    }

    #[test]
    fn e8_is_unimodular_even() {
        // Determinant of the E8 Cartan matrix is 1 (cofactor oracle lives in
        // the IntMat tests; here the Bareiss value is pinned).
        let l = root_e(8);
        assert_eq!(l.det(), Int::from(1));
        assert!(l.is_even());
        assert_eq!(l.signature(), (0, 8));
    }

    #[test]
    fn e8_doubled_det() {
        let l = parse_lattice_name("E8(2)").unwrap();
        assert_eq!(l.det(), Int::from(256));
    }

    #[test]
    fn powers_and_sums() {
        let l = parse_lattice_name("A1(2)^3+U").unwrap();
        assert_eq!(l.rank(), 5);
        assert_eq!(l.det(), Int::from(-64));
        assert_eq!(l.signature(), (1, 4));
    }

    #[test]
    fn signature_blockwise() {
        let l = parse_lattice_name("U+U(2)+E8(2)").unwrap();
        assert_eq!(l.signature(), (2, 10));
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(parse_lattice_name("F4").is_err());
    }
}
