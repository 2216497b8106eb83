use num_bigint::BigInt;

use super::fgmodule::{cokernel, FGModule};
use super::lattice::{Lattice, Vector};
use super::matrix::IntMatrix;

/// `ℤ^generators / span(columns of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relations: IntMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), generators, "relation matrix must have one row per generator");
        Self { generators, relations }
    }

    pub fn free(generators: usize) -> Self {
        Self { generators, relations: IntMatrix::zeros(generators, 0) }
    }

    /// `(ℤ/m)^generators`
    pub fn modular(generators: usize, modulus: &BigInt) -> Self {
        Self { generators, relations: IntMatrix::scalar(generators, modulus) }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn relation_vectors(&self) -> Vec<Vector> {
        self.relations.columns()
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::column_span(&self.relations)
    }

    pub fn module(&self) -> FGModule {
        cokernel(&self.relations)
    }

    /// `copies` copies of this presentation side by side.
    pub fn power(&self, copies: usize) -> Self {
        let blocks = vec![self.relations.clone(); copies];
        Self { generators: self.generators * copies, relations: IntMatrix::block_diag(&blocks) }
    }

    pub fn direct_sum(parts: &[Presentation]) -> Self {
        let blocks: Vec<IntMatrix> = parts.iter().map(|p| p.relations.clone()).collect();
        Self {
            generators: parts.iter().map(|p| p.generators).sum(),
            relations: IntMatrix::block_diag(&blocks),
        }
    }

    /// Whether every column of `m` (a map into this module's generators)
    /// lies in the relation span, i.e. `m` is zero on the quotient.
    pub fn annihilates(&self, m: &IntMatrix) -> bool {
        assert_eq!(m.rows(), self.generators);
        if m.is_zero() {
            return true;
        }
        if self.is_free() {
            return false;
        }
        let rel = self.relation_lattice();
        m.columns().iter().all(|c| rel.contains(c))
    }

    /// Whether `f: source → self` maps the relations of `source` into ours.
    pub fn receives_relations(&self, f: &IntMatrix, source: &Presentation) -> bool {
        if source.is_free() {
            return true;
        }
        self.annihilates(&(f * &source.relations))
    }
}
