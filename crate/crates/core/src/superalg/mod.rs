//! Superspaces, Lie superalgebras, their modules, and the matrix families.

mod families;
mod lie;
mod powers;

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::exactlin::Scalar;

pub use families::{
    build_cpe, build_gl, build_osp, build_pe, build_pe_extension, build_psl, build_psq, build_q,
    build_sl, build_spe, form_preserving, invariance_defect, matrix_parity, osp_form, pe_form, q_form,
    supercommutator, supertrace, tau_z, FamilyError, MatrixSuperalgebra,
};
pub use lie::{JacobiViolation, LieSuperalgebra, ModuleAction, RepViolation};
pub use powers::{power_basis, PowerKind, PowerSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: usize) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(self.bit() + 1)
    }

    pub fn sum<I: IntoIterator<Item = Parity>>(it: I) -> Parity {
        it.into_iter().fold(Parity::Even, |a, b| a + b)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `(-1)^{p(a) p(b)}`.
pub fn koszul(a: Parity, b: Parity) -> i64 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

pub fn koszul_scalar(a: Parity, b: Parity) -> Scalar {
    Scalar::from_int(koszul(a, b))
}

/// A finite-dimensional superspace with a labelled, parity-homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperSpace {
    pub labels: Vec<String>,
    pub parities: Vec<Parity>,
}

impl SuperSpace {
    pub fn new(labels: Vec<String>, parities: Vec<Parity>) -> Self {
        assert_eq!(labels.len(), parities.len());
        SuperSpace { labels, parities }
    }

    /// Basis labelled `prefix0, prefix1, ...`.
    pub fn anonymous(prefix: &str, parities: Vec<Parity>) -> Self {
        let labels = (0..parities.len()).map(|i| format!("{prefix}{i}")).collect();
        SuperSpace { labels, parities }
    }

    /// `(m|n)` with the even vectors first.
    pub fn standard(m: usize, n: usize) -> Self {
        let mut parities = vec![Parity::Even; m];
        parities.extend(std::iter::repeat_n(Parity::Odd, n));
        let labels = (0..m).map(|i| format!("e{}", i + 1)).chain((0..n).map(|j| format!("f{}", j + 1))).collect();
        SuperSpace { labels, parities }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// `(even, odd)` dimension counts.
    pub fn superdim(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    /// Basis of ordered pairs `(i, j)` at index `i * other.dim() + j`.
    pub fn tensor(&self, other: &SuperSpace) -> SuperSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        let mut parities = Vec::with_capacity(self.dim() * other.dim());
        for (a, p) in self.labels.iter().zip(&self.parities) {
            for (b, q) in other.labels.iter().zip(&other.parities) {
                labels.push(format!("{a}*{b}"));
                parities.push(*p + *q);
            }
        }
        SuperSpace { labels, parities }
    }

    /// Dual basis with the same parities.
    pub fn dual(&self) -> SuperSpace {
        SuperSpace { labels: self.labels.iter().map(|l| format!("{l}^")).collect(), parities: self.parities.clone() }
    }

    /// Parity-flipped copy.
    pub fn flip(&self) -> SuperSpace {
        SuperSpace {
            labels: self.labels.iter().map(|l| format!("P{l}")).collect(),
            parities: self.parities.iter().map(|p| p.flip()).collect(),
        }
    }
}
