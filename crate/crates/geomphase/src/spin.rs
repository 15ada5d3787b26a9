//! Spin-j operator matrices in the |j m⟩ basis, ordered m = −j, …, +j.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// Spin quantum number stored as the integer 2j, so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinJ {
    two_j: u32,
}

impl SpinJ {
    pub fn from_two_j(two_j: u32) -> Result<Self> {
        if two_j == 0 {
            return Err(Error::InvalidSpec("2j must be at least 1".into()));
        }
        Ok(SpinJ { two_j })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    /// j as a float (1/2, 1, 3/2, …).
    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Hilbert-space dimension 2j + 1.
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// Magnetic quantum numbers m = −j..+j in ascending order.
    pub fn m_values(&self) -> impl Iterator<Item = f64> + '_ {
        let j = self.j();
        (0..self.dim()).map(move |k| -j + k as f64)
    }
}

/// The (2j+1)-dimensional matrices J_x, J_y, J_z, J_± for one value of j.
///
/// `jz` is diagonal with entries m ascending; `jplus = jx + i·jy` raises m by
/// one with ⟨m+1|J₊|m⟩ = √((j−m)(j+m+1)); `jminus = jplus†`.
#[derive(Debug, Clone)]
pub struct SpinOperatorSet {
    pub j: SpinJ,
    pub jx: CMatrix,
    pub jy: CMatrix,
    pub jz: CMatrix,
    pub jplus: CMatrix,
    pub jminus: CMatrix,
}

/// Build the spin operators for a given j.
pub fn build_spin_operators(j: SpinJ) -> SpinOperatorSet {
    let dim = j.dim();
    let jv = j.j();
    let ms: Vec<f64> = j.m_values().collect();

    let jz = CMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            C64::from(ms[r])
        } else {
            C64::from(0.0)
        }
    });
    let mut jplus = CMatrix::zeros(dim, dim);
    for k in 0..dim - 1 {
        let m = ms[k];
        jplus[(k + 1, k)] = C64::from(((jv - m) * (jv + m + 1.0)).sqrt());
    }
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus).map(|z| z * C64::from(0.5));
    let jy = (&jplus - &jminus).map(|z| z * C64::new(0.0, -0.5));

    SpinOperatorSet {
        j,
        jx,
        jy,
        jz,
        jplus,
        jminus,
    }
}
