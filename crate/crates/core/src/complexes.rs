//! Bounded cochain complexes of presented modules and maps between them.

use crate::error::{Error, Result};
use crate::linalg::{FGModule, IntMatrix, Lattice, Presentation, Subquotient};

/// `C^min → C^{min+1} → … → C^max`, each term a presented module.
///
/// Differentials act on generators; `d^{n+1} d^n` must vanish on the quotient.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    min_degree: i64,
    modules: Vec<Presentation>,
    differentials: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn new(min_degree: i64, modules: Vec<Presentation>, differentials: Vec<IntMatrix>) -> Result<Self> {
        if differentials.len() + 1 != modules.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            let (src, tgt) = (&modules[i], &modules[i + 1]);
            if d.cols() != src.generators() || d.rows() != tgt.generators() {
                return Err(Error::InvalidComplex(format!(
                    "d^{} is {}x{} but ranks are {} -> {}",
                    min_degree + i as i64,
                    d.rows(),
                    d.cols(),
                    src.generators(),
                    tgt.generators()
                )));
            }
            if !tgt.receives_relations(d, src) {
                return Err(Error::InvalidComplex(format!(
                    "d^{} does not respect relations",
                    min_degree + i as i64
                )));
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            let dd = &differentials[i + 1] * &differentials[i];
            if !modules[i + 2].annihilates(&dd) {
                return Err(Error::InvalidComplex(format!(
                    "d^{} d^{} != 0",
                    min_degree + i as i64 + 1,
                    min_degree + i as i64
                )));
            }
        }
        Ok(Self { min_degree, modules, differentials })
    }

    /// Complex of free modules given by its differentials.
    pub fn free(min_degree: i64, ranks: &[usize], differentials: Vec<IntMatrix>) -> Result<Self> {
        Self::new(min_degree, ranks.iter().map(|&r| Presentation::free(r)).collect(), differentials)
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.modules.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    fn index(&self, n: i64) -> Option<usize> {
        (n >= self.min_degree && n <= self.max_degree()).then(|| (n - self.min_degree) as usize)
    }

    /// The module in degree `n`; zero outside the range.
    pub fn module(&self, n: i64) -> Presentation {
        self.index(n).map_or_else(|| Presentation::free(0), |i| self.modules[i].clone())
    }

    pub fn rank(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.modules[i].generators())
    }

    /// `d^n : C^n → C^{n+1}`, a zero matrix of the right shape when absent.
    pub fn differential(&self, n: i64) -> IntMatrix {
        match self.index(n) {
            Some(i) if i < self.differentials.len() => self.differentials[i].clone(),
            _ => IntMatrix::zeros(self.rank(n + 1), self.rank(n)),
        }
    }

    pub fn total_rank(&self) -> usize {
        self.modules.iter().map(Presentation::generators).sum()
    }

    /// `H^n` with canonical generators.
    pub fn cohomology_group(&self, n: i64) -> Result<Subquotient> {
        let here = self.module(n);
        let next = self.module(n + 1);
        let d_out = self.differential(n);
        let d_in = self.differential(n - 1);
        let cycles = Lattice::preimage(&d_out, &next.relation_vectors());
        let mut boundaries = d_in.columns();
        boundaries.extend(here.relation_vectors());
        Subquotient::new(cycles, &boundaries)
    }

    pub fn cohomology(&self, n: i64) -> Result<FGModule> {
        Ok(self.cohomology_group(n)?.module())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| {
                let r = self.module(n).module().rank() as i64;
                if n.rem_euclid(2) == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }
}

/// Degreewise maps `f^n : S^n → T^n` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: CochainComplex,
    target: CochainComplex,
    components: Vec<IntMatrix>,
}

impl ComplexMap {
    /// `components[i]` acts in degree `source.min_degree() + i`.
    pub fn new(source: CochainComplex, target: CochainComplex, components: Vec<IntMatrix>) -> Result<Self> {
        if components.len() != source.modules.len() {
            return Err(Error::InvalidComplex(format!(
                "map needs {} components, got {}",
                source.modules.len(),
                components.len()
            )));
        }
        let map = Self { source, target, components };
        for n in map.source.degrees() {
            let f = map.component(n);
            if f.cols() != map.source.rank(n) || f.rows() != map.target.rank(n) {
                return Err(Error::InvalidComplex(format!("component in degree {n} has the wrong shape")));
            }
            if !map.target.module(n).receives_relations(&f, &map.source.module(n)) {
                return Err(Error::InvalidComplex(format!("component in degree {n} does not respect relations")));
            }
        }
        for n in map.source.min_degree() - 1..=map.source.max_degree() {
            let lhs = &map.target.differential(n) * &map.component(n);
            let rhs = &map.component(n + 1) * &map.source.differential(n);
            if !map.target.module(n + 1).annihilates(&(&lhs - &rhs)) {
                return Err(Error::InvalidComplex(format!("map does not commute with d in degree {n}")));
            }
        }
        Ok(map)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let comps = c.degrees().map(|n| IntMatrix::identity(c.rank(n))).collect();
        Self { source: c.clone(), target: c.clone(), components: comps }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Self {
        let comps = source.degrees().map(|n| IntMatrix::zeros(target.rank(n), source.rank(n))).collect();
        Self { source: source.clone(), target: target.clone(), components: comps }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> IntMatrix {
        match self.source.index(n) {
            Some(i) => self.components[i].clone(),
            None => IntMatrix::zeros(self.target.rank(n), self.source.rank(n)),
        }
    }

    /// `g ∘ self`
    pub fn then(&self, g: &ComplexMap) -> Result<ComplexMap> {
        let comps = self.source.degrees().map(|n| &g.component(n) * &self.component(n)).collect();
        ComplexMap::new(self.source.clone(), g.target.clone(), comps)
    }

    /// Whether `self - other = d h + h d` for the given `h^n : S^n → T^{n-1}`,
    /// `homotopy[i]` acting in degree `source.min_degree() + i`.
    pub fn is_homotopic_via(&self, other: &ComplexMap, homotopy: &[IntMatrix]) -> bool {
        let h = |n: i64| -> IntMatrix {
            match self.source.index(n) {
                Some(i) if i < homotopy.len() => homotopy[i].clone(),
                _ => IntMatrix::zeros(self.target.rank(n - 1), self.source.rank(n)),
            }
        };
        self.source.degrees().all(|n| {
            let diff = &self.component(n) - &other.component(n);
            let dh = &self.target.differential(n - 1) * &h(n);
            let hd = &h(n + 1) * &self.source.differential(n);
            if dh.shape() != diff.shape() || hd.shape() != diff.shape() {
                return false;
            }
            self.target.module(n).annihilates(&(&diff - &(&dh + &hd)))
        })
    }
}

/// Matrix of `H^n(f)` in the canonical generators of source and target.
pub fn induced_map_on_cohomology(f: &ComplexMap, n: i64) -> Result<IntMatrix> {
    let hs = f.source.cohomology_group(n)?;
    let ht = f.target.cohomology_group(n)?;
    hs.induced(&f.component(n), &ht)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> CochainComplex {
        let d0 = IntMatrix::from_rows(&[[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]);
        CochainComplex::free(0, &[3, 3], vec![d0]).unwrap()
    }

    #[test]
    fn point_complex() {
        let c = CochainComplex::free(0, &[1], vec![]).unwrap();
        assert_eq!(c.cohomology(0).unwrap(), FGModule::free(1));
        assert_eq!(c.cohomology(3).unwrap(), FGModule::zero());
        assert_eq!(c.cohomology(-1).unwrap(), FGModule::zero());
    }

    #[test]
    fn circle_cohomology() {
        let c = circle();
        assert_eq!(c.cohomology(0).unwrap(), FGModule::free(1));
        assert_eq!(c.cohomology(1).unwrap(), FGModule::free(1));
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = IntMatrix::from_rows(&[[1]]);
        assert!(CochainComplex::free(0, &[1, 1, 1], vec![d.clone(), d]).is_err());
    }

    #[test]
    fn relations_produce_torsion() {
        // ℤ --2--> ℤ/8: H^0 = 4ℤ, H^1 = ℤ/2
        let c = CochainComplex::new(
            0,
            vec![Presentation::free(1), Presentation::new(1, IntMatrix::from_rows(&[[8]]))],
            vec![IntMatrix::from_rows(&[[2]])],
        )
        .unwrap();
        assert_eq!(c.cohomology(0).unwrap(), FGModule::free(1));
        assert_eq!(c.cohomology(1).unwrap(), FGModule::cyclic(2));
    }

    #[test]
    fn induced_maps() {
        let c = circle();
        let id = ComplexMap::identity(&c);
        assert!(induced_map_on_cohomology(&id, 1).unwrap().is_identity());
        let z = ComplexMap::zero(&c, &c);
        assert!(induced_map_on_cohomology(&z, 1).unwrap().is_zero());

        // rotation 0 -> 1 -> 2 -> 0, acting on cochains by pullback
        let p0 = IntMatrix::from_rows(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        // edges 01, 02, 12; (rot^* c)(01) = c(12), (02) = -c(01) oriented as 10, (12) = c(20) = -c(02)
        let p1 = IntMatrix::from_rows(&[[0, 0, 1], [-1, 0, 0], [0, -1, 0]]);
        let rot = ComplexMap::new(c.clone(), c.clone(), vec![p0, p1]).unwrap();
        assert!(induced_map_on_cohomology(&rot, 1).unwrap().is_identity());
    }

    #[test]
    fn homotopy_certificate() {
        let c = circle();
        let id = ComplexMap::identity(&c);
        let none = vec![IntMatrix::zeros(0, 3), IntMatrix::zeros(3, 3)];
        assert!(id.is_homotopic_via(&id, &none));
        assert!(!id.is_homotopic_via(&ComplexMap::zero(&c, &c), &none));
    }
}
