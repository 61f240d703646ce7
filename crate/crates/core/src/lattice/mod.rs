//! Even integral lattices and the sublattice calculus the classification
//! rests on: orthogonal complements, primitive closures, glue groups,
//! overlattices from isotropic glue, short vector enumeration, definite
//! isometry testing and lattice involutions.

mod disc;
mod files;
mod involution;
mod isometry;
mod named;
mod shortvec;
mod sublat;

pub use disc::DiscGroup;
pub use files::{parse_lattice_file, parse_sublattice_file, render_lattice_file};
pub use involution::{involution_from_orthogonal_pair, InvolutionData};
pub use isometry::is_isometric_definite;
pub use named::parse_lattice_name;
pub use shortvec::short_vectors;
pub use sublat::{GlueGroup, Overlattice};

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{signature, ExactNumError, Int, IntMat};
use crate::finform::FormError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown lattice name: {0}")]
    UnknownName(String),
    #[error("gram matrix must be square and symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("lattice is not even")]
    OddLattice,
    #[error("discriminant group is not 2-elementary")]
    NotTwoElementary,
    #[error("sublattices are not orthogonal")]
    NotOrthogonal,
    #[error("glue subgroup is not isotropic (overlattice not even integral)")]
    NotIsotropic,
    #[error("lattice is not definite")]
    IndefiniteLattice,
    #[error("input exceeds the supported size for this operation")]
    ResourceLimit,
    #[error("rows are linearly dependent")]
    DependentRows,
    #[error("involution does not extend integrally")]
    NotExtendable,
    #[error("lattice must have all pairings even")]
    NotDoubled,
    #[error("file format error: {0}")]
    FileFormat(String),
    #[error(transparent)]
    ExactNum(#[from] ExactNumError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Free Z-module of finite rank with a nondegenerate integral symmetric
/// bilinear form, given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct Lattice {
    gram: IntMat,
    name: Option<String>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}
impl Eq for Lattice {}

impl Lattice {
    pub fn new(gram: IntMat) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(LatticeError::DegenerateForm);
        }
        Ok(Lattice { gram, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn det(&self) -> Int {
        self.gram.det().expect("gram is square")
    }

    pub fn signature(&self) -> (usize, usize) {
        signature(&self.gram).expect("gram is nondegenerate")
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (self.gram.at(i, i) % Int::from(2)).is_zero())
    }

    /// All pairings divisible by two (the doubled-lattice condition).
    pub fn is_doubled(&self) -> bool {
        (0..self.rank())
            .all(|i| (0..self.rank()).all(|j| (self.gram.at(i, j) % Int::from(2)).is_zero()))
    }

    pub fn rescale(&self, m: i64) -> Lattice {
        assert!(m != 0);
        let gram = self.gram.scale(&Int::from(m));
        let name = self.name.as_ref().map(|n| format!("{n}({m})"));
        Lattice { gram, name }
    }

    /// Halves every pairing; requires a doubled lattice.
    pub fn half_scale(&self) -> Result<Lattice, LatticeError> {
        if !self.is_doubled() {
            return Err(LatticeError::NotDoubled);
        }
        let mut g = IntMat::zeros(self.rank(), self.rank());
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                g.set(i, j, self.gram.at(i, j) / Int::from(2));
            }
        }
        Lattice::new(g)
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let gram = self.gram.direct_sum(&other.gram);
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Lattice { gram, name }
    }

    /// The whole lattice as a sublattice of itself.
    pub fn full_sublattice(&self) -> Sublattice {
        Sublattice::new(self.clone(), IntMat::identity(self.rank()))
            .expect("identity basis is valid")
    }

    pub fn sublattice(&self, basis: IntMat) -> Result<Sublattice, LatticeError> {
        Sublattice::new(self.clone(), basis)
    }

    /// (r, l, delta) of an even 2-elementary lattice; the parity delta is 0
    /// exactly when every discriminant-form value is integral mod 2.
    pub fn two_elementary_invariants(&self) -> Result<TwoElemInvariants, LatticeError> {
        let disc = self.discriminant_group();
        if disc.orders().iter().any(|&d| d != 2) {
            return Err(LatticeError::NotTwoElementary);
        }
        if !self.is_even() {
            return Err(LatticeError::OddLattice);
        }
        let form = self.discriminant_form()?;
        let delta = u8::from(!form.value_multiset().iter().all(|(v, _)| v.is_integer()));
        Ok(TwoElemInvariants {
            rank: self.rank(),
            gen_count: disc.orders().len(),
            delta,
        })
    }
}

/// The complete invariant (r, l, delta) of an even hyperbolic 2-elementary
/// lattice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TwoElemInvariants {
    pub rank: usize,
    pub gen_count: usize,
    pub delta: u8,
}

impl std::fmt::Display for TwoElemInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.rank, self.gen_count, self.delta)
    }
}

/// Sublattice given by generator rows in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: Lattice,
    basis: IntMat,
}

impl Sublattice {
    pub fn new(ambient: Lattice, basis: IntMat) -> Result<Self, LatticeError> {
        if basis.rows() > 0 {
            assert_eq!(basis.cols(), ambient.rank(), "basis width mismatch");
            let snf = crate::exactnum::smith_normal_form(&basis);
            if snf.rank() != basis.rows() {
                return Err(LatticeError::DependentRows);
            }
        }
        Ok(Sublattice { ambient, basis })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn induced_gram(&self) -> IntMat {
        self.basis
            .mul(self.ambient.gram())
            .mul(&self.basis.transpose())
    }

    /// The sublattice as an abstract lattice in its own basis.
    pub fn as_lattice(&self) -> Result<Lattice, LatticeError> {
        Lattice::new(self.induced_gram())
    }
}
