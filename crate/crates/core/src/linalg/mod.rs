//! Exact linear algebra over ℤ (and ℤ/m through appended relations).

mod fgmodule;
mod lattice;
mod matrix;
mod presentation;
mod snf;

pub use fgmodule::{cokernel, cokernel_mod, FGModule};
pub use lattice::{unit_vector, Lattice, Subquotient, Vector};
pub use matrix::IntMatrix;
pub use presentation::Presentation;
pub use snf::{invariant_factors, rank_of, smith_normal_form, Snf};

use crate::error::{Error, Result};

/// `ker(kernel_of) / im(image_of)` inside ℤ^ambient_rank.
pub fn subquotient(ambient_rank: usize, kernel_of: &IntMatrix, image_of: &IntMatrix) -> Result<FGModule> {
    subquotient_with_generators(ambient_rank, kernel_of, image_of).map(|sq| sq.module())
}

pub fn subquotient_with_generators(
    ambient_rank: usize,
    kernel_of: &IntMatrix,
    image_of: &IntMatrix,
) -> Result<Subquotient> {
    if kernel_of.cols() != ambient_rank || image_of.rows() != ambient_rank {
        return Err(Error::Shape(format!(
            "subquotient of ℤ^{ambient_rank}: kernel map is {}x{}, image map is {}x{}",
            kernel_of.rows(),
            kernel_of.cols(),
            image_of.rows(),
            image_of.cols()
        )));
    }
    if !(kernel_of * image_of).is_zero() {
        return Err(Error::ImageNotInKernel);
    }
    Subquotient::new(Lattice::kernel(kernel_of), &image_of.columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_differentials() {
        let m = subquotient(2, &IntMatrix::zeros(0, 2), &IntMatrix::zeros(2, 0)).unwrap();
        assert_eq!(m, FGModule::free(2));
    }

    #[test]
    fn circle_degree_one() {
        // H^1 of the triangle boundary: kernel of the zero map out of C^1 modulo im d^0
        let d0 = IntMatrix::from_rows(&[[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]);
        let m = subquotient(3, &IntMatrix::zeros(0, 3), &d0).unwrap();
        assert_eq!(m, FGModule::free(1));
        assert_eq!(rank_of(&d0), 2);
    }

    #[test]
    fn forced_torsion() {
        let m = subquotient(1, &IntMatrix::zeros(0, 1), &IntMatrix::from_rows(&[[2]])).unwrap();
        assert_eq!(m, FGModule::cyclic(2));
    }

    #[test]
    fn composite_must_vanish() {
        let r = subquotient(1, &IntMatrix::from_rows(&[[1]]), &IntMatrix::from_rows(&[[2]]));
        assert_eq!(r, Err(Error::ImageNotInKernel));
    }
}
