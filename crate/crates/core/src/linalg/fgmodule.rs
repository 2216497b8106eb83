use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// A finitely generated abelian group in invariant-factor form
/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | d₂ | … | d_k`, every `dᵢ > 1`.
///
/// Modules over ℤ/m are stored as their underlying abelian groups, so a free
/// ℤ/m summand shows up as a torsion factor `m`. Two values are isomorphic
/// exactly when they compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGModule {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FGModule {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if let Some(d) = torsion.iter().find(|d| **d <= BigInt::one()) {
            return Err(Error::InvalidModule(format!("invariant factor {d} must exceed 1")));
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::InvalidModule(format!(
                    "invariant factors {} and {} break the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { rank, torsion })
    }

    /// Trusted constructor for values coming out of a Smith normal form.
    pub(crate) fn from_invariants(rank: usize, torsion: Vec<BigInt>) -> Self {
        debug_assert!(Self::new(rank, torsion.clone()).is_ok());
        Self { rank, torsion }
    }

    pub fn zero() -> Self {
        Self { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: i64) -> Self {
        match order {
            0 => Self::free(1),
            1 | -1 => Self::zero(),
            n => Self { rank: 0, torsion: vec![BigInt::from(n.abs())] },
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 = ℤ) into canonical form.
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let diag: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
        let m = IntMatrix::diagonal(&diag);
        cokernel(&m)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &FGModule) -> FGModule {
        let mut orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        orders.extend(std::iter::repeat(BigInt::zero()).take(self.rank + other.rank));
        cokernel(&IntMatrix::diagonal(&orders))
    }
}

impl fmt::Display for FGModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FGModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGModule({self})")
    }
}

/// Quotient of ℤ^rows by the span of the columns of `m`.
pub fn cokernel(m: &IntMatrix) -> FGModule {
    let diag = invariant_factors(m);
    let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
    let rank = m.rows() - nonzero.len();
    let torsion = nonzero.into_iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
    FGModule::from_invariants(rank, torsion)
}

/// Cokernel over ℤ/m: the relations `m·id` are appended before reducing.
pub fn cokernel_mod(m: &IntMatrix, modulus: &BigInt) -> FGModule {
    let rel = IntMatrix::scalar(m.rows(), modulus);
    cokernel(&m.hstack(&rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::from_rows(&[[1]])), FGModule::zero());
        assert_eq!(cokernel(&IntMatrix::from_rows(&[[0]])), FGModule::free(1));
        assert_eq!(cokernel(&IntMatrix::from_rows(&[[2, 0], [0, 3]])), FGModule::cyclic(6));
        assert_eq!(cokernel(&IntMatrix::zeros(2, 0)), FGModule::free(2));
    }

    #[test]
    fn cokernel_modulo() {
        // ℤ/4 ⊗ (ℤ/6) = ℤ/2
        let m = IntMatrix::from_rows(&[[6]]);
        assert_eq!(cokernel_mod(&m, &BigInt::from(4)), FGModule::cyclic(2));
        assert_eq!(cokernel_mod(&IntMatrix::zeros(2, 0), &BigInt::from(3)).torsion().len(), 2);
    }

    #[test]
    fn validation() {
        assert!(FGModule::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(FGModule::new(0, vec![BigInt::from(1)]).is_err());
        assert!(FGModule::new(1, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
    }

    #[test]
    fn normalization_and_display() {
        let m = FGModule::from_cyclic_orders(&[4, 6, 0]);
        assert_eq!(m.to_string(), "Z + Z/2 + Z/12");
        assert_eq!(m.torsion_order(), BigInt::from(24));
        assert_eq!(FGModule::zero().to_string(), "0");
    }
}
