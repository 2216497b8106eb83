//! Finite groups, G-modules, free resolutions over ℤG and group cohomology.

mod gmodule;
mod group;
mod resolution;

pub use gmodule::{invariants, invariants_group, GModule};
pub use group::FiniteGroup;
pub use resolution::{
    bar_resolution, bar_resolution_with, periodic_resolution, periodic_resolution_for, resolution,
    ExactnessCertificate, RGMap, RGTerm, Resolution, ResolutionKind,
};

use num_bigint::BigInt;

use crate::complexes::CochainComplex;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{FGModule, IntMatrix};

/// Matrix of `Hom_RG(d, M)`: precomposition with an RG-map `d : P → P'`,
/// sending `M^{rank P'}` to `M^{rank P}`. A term `c·g` acts as `c·action(g)`.
pub fn hom_rg_map(d: &RGMap, m: &GModule) -> IntMatrix {
    let n = m.generators();
    let mut out = IntMatrix::zeros(d.source_rank() * n, d.target_rank() * n);
    for i in 0..d.source_rank() {
        for &(j, g, c) in d.image(i) {
            out.add_block(i * n, j * n, m.action(g), &BigInt::from(c));
        }
    }
    out
}

/// `Hom_RG(P_•, M)` in degrees `0..=length`.
pub fn hom_rg(res: &Resolution, m: &GModule) -> Result<CochainComplex> {
    m.ensure_group(res.group())?;
    let modules = res.ranks().iter().map(|&r| m.presentation().power(r)).collect();
    let diffs = (1..=res.length()).map(|p| hom_rg_map(res.differential(p), m)).collect();
    CochainComplex::new(0, modules, diffs)
}

/// `H^p(G; M)` computed from a resolution of the given kind.
pub fn group_cohomology(group: &FiniteGroup, m: &GModule, p: usize, kind: ResolutionKind) -> Result<FGModule> {
    m.ensure_group(group)?;
    let res = resolution(group, kind, p + 1, &Limits::from_env())?;
    group_cohomology_from(&res, m, p)
}

/// `H^p` of `Hom_RG(P_•, M)`; needs `P_{p+1}`, so `p < length`.
pub fn group_cohomology_from(res: &Resolution, m: &GModule, p: usize) -> Result<FGModule> {
    if p >= res.length() && res.group().order() > 1 {
        return Err(Error::ResolutionTooShort { requested: p, length: res.length() });
    }
    hom_rg(res, m)?.cohomology(p as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Presentation;

    fn z2_cohomology(m: &GModule, kind: ResolutionKind) -> Vec<FGModule> {
        (0..5).map(|p| group_cohomology(m.group(), m, p, kind).unwrap()).collect()
    }

    #[test]
    fn periodic_cochains_for_z2() {
        let g = FiniteGroup::cyclic(2);
        let res = periodic_resolution(2, 4).unwrap();
        let c = hom_rg(&res, &GModule::integers(&g)).unwrap();
        let ds: Vec<IntMatrix> = (0..4).map(|p| c.differential(p)).collect();
        assert_eq!(ds, vec![IntMatrix::from_rows(&[[0]]), IntMatrix::from_rows(&[[2]]), IntMatrix::from_rows(&[[0]]), IntMatrix::from_rows(&[[2]])]);

        let c = hom_rg(&res, &GModule::cyclic_sign(&g).unwrap()).unwrap();
        assert_eq!(c.differential(0), IntMatrix::from_rows(&[[-2]]));
        assert_eq!(c.differential(1), IntMatrix::from_rows(&[[0]]));
    }

    #[test]
    fn z2_values() {
        let g = FiniteGroup::cyclic(2);
        let z = FGModule::free(1);
        let t = FGModule::cyclic(2);
        let zero = FGModule::zero();
        for kind in [ResolutionKind::Bar, ResolutionKind::Periodic] {
            let triv = z2_cohomology(&GModule::integers(&g), kind);
            assert_eq!(triv, vec![z.clone(), zero.clone(), t.clone(), zero.clone(), t.clone()]);
            let sign = z2_cohomology(&GModule::cyclic_sign(&g).unwrap(), kind);
            assert_eq!(sign, vec![zero.clone(), t.clone(), zero.clone(), t.clone(), zero.clone()]);
        }
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::trivial();
        let m = GModule::trivial(g.clone(), Presentation::free(2));
        assert_eq!(group_cohomology(&g, &m, 0, ResolutionKind::Bar).unwrap(), FGModule::free(2));
        assert_eq!(group_cohomology(&g, &m, 3, ResolutionKind::Periodic).unwrap(), FGModule::zero());
    }

    #[test]
    fn degree_zero_is_invariants() {
        let g = FiniteGroup::cyclic(3);
        let rot = IntMatrix::from_rows(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let m = GModule::from_generator_actions(g.clone(), Presentation::free(3), &[(1, rot)]).unwrap();
        assert_eq!(group_cohomology(&g, &m, 0, ResolutionKind::Bar).unwrap(), invariants(&m).unwrap());
        // ℤ[ℤ/3] is induced, so acyclic
        assert_eq!(group_cohomology(&g, &m, 2, ResolutionKind::Periodic).unwrap(), FGModule::zero());
    }

    #[test]
    fn symmetric_group_low_degrees() {
        let g = FiniteGroup::symmetric(3);
        let z = GModule::integers(&g);
        let h: Vec<FGModule> = (0..4).map(|p| group_cohomology(&g, &z, p, ResolutionKind::Bar).unwrap()).collect();
        assert_eq!(h, vec![FGModule::free(1), FGModule::zero(), FGModule::cyclic(2), FGModule::zero()]);
    }

    #[test]
    fn group_mismatch_and_short_resolution() {
        let m = GModule::integers(&FiniteGroup::cyclic(2));
        let g3 = FiniteGroup::cyclic(3);
        assert!(matches!(group_cohomology(&g3, &m, 0, ResolutionKind::Bar), Err(Error::GroupMismatch(_))));
        let res = bar_resolution(m.group(), 2).unwrap();
        assert!(matches!(group_cohomology_from(&res, &m, 2), Err(Error::ResolutionTooShort { .. })));
    }
}
