//! The Swan double complex `Hom_RG(P_p, C^q(X; A))` and the comparison of
//! its spectral sequence with group cohomology of cohomology and with the
//! Borel construction.

use crate::borel::{borel_cohomology_all, borel_space_with};
use crate::complexes::CochainComplex;
use crate::error::{Error, Result};
use crate::groupcoh::{hom_rg, hom_rg_map, resolution, FiniteGroup, GModule, Resolution, ResolutionKind};
use crate::gspace::{cochains, cohomology_gmodule, SimplicialGComplex};
use crate::limits::Limits;
use crate::linalg::{FGModule, IntMatrix};
use crate::spectral::{graded_check_with, stable_page_index, total_complex, DoubleComplex, GradedCheck, SSPage, SpectralSequence};

#[derive(Clone, Debug)]
pub struct SwanScenario {
    space: SimplicialGComplex,
    coefficients: GModule,
    p_max: usize,
    q_max: usize,
    resolution_kind: ResolutionKind,
}

impl SwanScenario {
    pub fn new(
        space: SimplicialGComplex,
        coefficients: GModule,
        p_max: usize,
        q_max: usize,
        resolution_kind: ResolutionKind,
    ) -> Result<Self> {
        coefficients.ensure_group(space.group())?;
        if resolution_kind == ResolutionKind::Periodic && space.group().cyclic_generator().is_none() {
            return Err(Error::InvalidGroup("the periodic resolution needs a cyclic group".into()));
        }
        space.ensure_regular()?;
        Ok(Self { space, coefficients, p_max, q_max, resolution_kind })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.space.group()
    }

    pub fn space(&self) -> &SimplicialGComplex {
        &self.space
    }

    pub fn coefficients(&self) -> &GModule {
        &self.coefficients
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn resolution_kind(&self) -> ResolutionKind {
        self.resolution_kind
    }

    pub fn with_resolution(&self, kind: ResolutionKind) -> Result<Self> {
        Self::new(self.space.clone(), self.coefficients.clone(), self.p_max, self.q_max, kind)
    }

    /// E₂ cells `(p, q)` unaffected by the truncation box. A bound that
    /// truncates nothing (`q_max > dim X`, or the trivial group) is ignored.
    pub fn cell_is_certified(&self, p: usize, q: usize) -> bool {
        let p_bound = if self.group().order() == 1 { usize::MAX } else { self.p_max };
        let q_bound = if self.q_max > self.space.dimension() { usize::MAX } else { self.q_max };
        p + q + 2 <= p_bound.min(q_bound)
    }

    /// Total degrees whose cohomology the truncated total complex computes
    /// exactly: every cell of total degree `n + 1` must be present.
    pub fn degree_is_certified(&self, n: usize) -> bool {
        let p_ok = n < self.p_max || self.group().order() == 1;
        let q_ok = n < self.q_max || self.q_max > self.space.dimension();
        p_ok && q_ok
    }

    fn resolution(&self, limits: &Limits) -> Result<Resolution> {
        resolution(self.group(), self.resolution_kind, self.p_max, limits)
    }
}

/// `Sw^{p,q} = Hom_RG(P_p, C^q(X; A))`, `d_h` from the resolution, `d_v`
/// from the coboundary (signed by the builder).
pub fn build_swan(s: &SwanScenario) -> Result<DoubleComplex> {
    build_swan_with(s, &Limits::from_env())
}

pub fn build_swan_with(s: &SwanScenario, limits: &Limits) -> Result<DoubleComplex> {
    let res = s.resolution(limits)?;
    let c = cochains(&s.space, &s.coefficients, s.q_max)?;
    let top = c.max_degree();
    let modules: Vec<GModule> = (0..=s.q_max).map(|q| if q <= top { c.gmodule(q) } else { Ok(empty(s.group())) }).collect::<Result<_>>()?;
    for p in 0..=s.p_max {
        let size: usize = modules.iter().map(|m| m.generators() * res.rank(p)).sum();
        limits.check(format!("Swan column {p}"), size)?;
    }
    let complex = c.complex().clone();
    DoubleComplex::build(
        s.p_max,
        s.q_max,
        |p, q| modules[q].presentation().power(res.rank(p)),
        |p, q| {
            if p < res.length() {
                Ok(hom_rg_map(res.differential(p + 1), &modules[q]))
            } else {
                let n = modules[q].generators();
                Ok(IntMatrix::zeros(res.rank(p + 1) * n, res.rank(p) * n))
            }
        },
        |p, q| {
            let block = if q < top {
                complex.differential(q as i64)
            } else {
                IntMatrix::zeros(modules[q + 1].generators(), modules[q].generators())
            };
            Ok(IntMatrix::block_diag(&vec![block; res.rank(p)]))
        },
    )
}

fn empty(group: &FiniteGroup) -> GModule {
    GModule::trivial(group.clone(), crate::linalg::Presentation::free(0))
}

/// `H^p(G; H^q(X; A))` for `p ≤ p_max`, `q ≤ q_max`, indexed `[p][q]`.
pub fn grothendieck_e2(s: &SwanScenario) -> Result<Vec<Vec<FGModule>>> {
    grothendieck_e2_with(s, &Limits::from_env())
}

pub fn grothendieck_e2_with(s: &SwanScenario, limits: &Limits) -> Result<Vec<Vec<FGModule>>> {
    let res = resolution(s.group(), s.resolution_kind, s.p_max + 1, limits)?;
    let mut grid = vec![Vec::with_capacity(s.q_max + 1); s.p_max + 1];
    for q in 0..=s.q_max {
        let h = cohomology_gmodule(&s.space, &s.coefficients, q)?;
        let c: CochainComplex = hom_rg(&res, &h)?;
        for (p, col) in grid.iter_mut().enumerate() {
            col.push(c.cohomology(p as i64)?);
        }
    }
    Ok(grid)
}

/// `Hom_RG(P_p, H^q(X; A))` as abelian groups, indexed `[p][q]`.
pub fn hom_of_cohomology(s: &SwanScenario) -> Result<Vec<Vec<FGModule>>> {
    let res = s.resolution(&Limits::from_env())?;
    let hs: Vec<GModule> = (0..=s.q_max).map(|q| cohomology_gmodule(&s.space, &s.coefficients, q)).collect::<Result<_>>()?;
    Ok((0..=s.p_max).map(|p| hs.iter().map(|h| h.presentation().power(res.rank(p)).module()).collect()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComparison {
    pub p: usize,
    pub q: usize,
    pub left: FGModule,
    pub right: FGModule,
    pub certified: bool,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub n: usize,
    pub left: FGModule,
    pub right: FGModule,
    pub rank_equal: bool,
    pub torsion_order_equal: bool,
    pub equal: bool,
}

impl DegreeComparison {
    fn new(n: usize, left: FGModule, right: FGModule) -> Self {
        let rank_equal = left.rank() == right.rank();
        let torsion_order_equal = left.torsion_order() == right.torsion_order();
        Self { n, left, right, rank_equal, torsion_order_equal, equal: rank_equal && torsion_order_equal }
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub swan_e2: Vec<Vec<FGModule>>,
    pub grothendieck_e2: Vec<Vec<FGModule>>,
    pub e2_cells: Vec<CellComparison>,
    /// `H^n(Tot)` for every degree of the box, with its certification flag.
    pub total: Vec<(FGModule, bool)>,
    pub abutment: Vec<GradedCheck>,
    pub borel: Vec<FGModule>,
    pub borel_degrees: Vec<DegreeComparison>,
    /// Present when the action is free and `X/G` is simplicial.
    pub quotient_degrees: Option<Vec<DegreeComparison>>,
}

impl ComparisonReport {
    pub fn e2_verdict(&self) -> bool {
        self.e2_cells.iter().filter(|c| c.certified).all(|c| c.equal)
    }

    pub fn abutment_verdict(&self) -> bool {
        self.abutment.iter().all(|g| g.verdict)
    }

    pub fn borel_verdict(&self) -> bool {
        self.borel_degrees.iter().all(|d| d.equal)
    }

    pub fn quotient_verdict(&self) -> bool {
        self.quotient_degrees.as_ref().map_or(true, |v| v.iter().all(|d| d.equal))
    }

    pub fn verdict(&self) -> bool {
        self.e2_verdict() && self.abutment_verdict() && self.borel_verdict() && self.quotient_verdict()
    }
}

/// Runs the three-way comparison; Borel degrees are `k < borel_n_max` that
/// are also certified for the total complex.
pub fn compare(s: &SwanScenario, borel_n_max: usize) -> Result<ComparisonReport> {
    compare_with(s, borel_n_max, &Limits::from_env())
}

pub fn compare_with(s: &SwanScenario, borel_n_max: usize, limits: &Limits) -> Result<ComparisonReport> {
    let d = build_swan_with(s, limits)?;
    let ss = SpectralSequence::new(&d);
    let e2 = ss.page(2)?;
    let swan_e2 = e2.entries().to_vec();
    let grothendieck = grothendieck_e2_with(s, limits)?;
    let mut e2_cells = Vec::new();
    for p in 0..=s.p_max {
        for q in 0..=s.q_max {
            let (left, right) = (swan_e2[p][q].clone(), grothendieck[p][q].clone());
            e2_cells.push(CellComparison { p, q, equal: left == right, left, right, certified: s.cell_is_certified(p, q) });
        }
    }
    let tot = total_complex(&d)?;
    let total: Vec<(FGModule, bool)> = (0..=d.max_total_degree())
        .map(|n| Ok((tot.cohomology(n as i64)?, s.degree_is_certified(n))))
        .collect::<Result<_>>()?;
    let stable = ss.page(stable_page_index(&d))?;
    let abutment = (0..=d.max_total_degree())
        .filter(|&n| s.degree_is_certified(n))
        .map(|n| graded_check_with(&ss, &stable, n))
        .collect::<Result<Vec<_>>>()?;
    let borel = if borel_n_max > 0 {
        let b = borel_space_with(&s.space, borel_n_max, limits)?;
        borel_cohomology_all(&b, &s.coefficients)?
    } else {
        Vec::new()
    };
    let borel_degrees = borel
        .iter()
        .enumerate()
        .filter(|&(n, _)| n < total.len() && total[n].1)
        .map(|(n, b)| DegreeComparison::new(n, total[n].0.clone(), b.clone()))
        .collect();
    let quotient_degrees = if s.space.is_free() && s.coefficients.is_trivial_action() {
        match s.space.orbit_complex() {
            Ok(q) => {
                let a = GModule::trivial(q.group().clone(), s.coefficients.presentation().clone());
                let c = cochains(&q, &a, q.dimension())?;
                let v = (0..total.len())
                    .filter(|&n| total[n].1)
                    .map(|n| Ok(DegreeComparison::new(n, total[n].0.clone(), c.complex().cohomology(n as i64)?)))
                    .collect::<Result<Vec<_>>>()?;
                Some(v)
            }
            Err(_) => None,
        }
    } else {
        None
    };
    Ok(ComparisonReport {
        swan_e2,
        grothendieck_e2: grothendieck,
        e2_cells,
        total,
        abutment,
        borel,
        borel_degrees,
        quotient_degrees,
    })
}

/// Pages `2..=stable` of one scenario.
pub fn swan_pages(s: &SwanScenario, limits: &Limits) -> Result<Vec<SSPage>> {
    let d = build_swan_with(s, limits)?;
    let ss = SpectralSequence::new(&d);
    (2..=stable_page_index(&d)).map(|r| ss.page(r)).collect()
}

/// Cell-by-cell agreement of the pages computed from the bar and the
/// periodic resolution, over the certified cells.
#[derive(Clone, Debug)]
pub struct PageAgreement {
    pub r: usize,
    pub cells: Vec<CellComparison>,
}

impl PageAgreement {
    pub fn verdict(&self) -> bool {
        self.cells.iter().filter(|c| c.certified).all(|c| c.equal)
    }
}

pub fn resolution_independence(s: &SwanScenario, limits: &Limits) -> Result<Vec<PageAgreement>> {
    let bar = swan_pages(&s.with_resolution(ResolutionKind::Bar)?, limits)?;
    let periodic = swan_pages(&s.with_resolution(ResolutionKind::Periodic)?, limits)?;
    Ok(bar
        .iter()
        .zip(&periodic)
        .map(|(a, b)| {
            let mut cells = Vec::new();
            for p in 0..=s.p_max {
                for q in 0..=s.q_max {
                    let (left, right) = (a.entry(p as i64, q as i64), b.entry(p as i64, q as i64));
                    cells.push(CellComparison { p, q, equal: left == right, left, right, certified: s.cell_is_certified(p, q) });
                }
            }
            PageAgreement { r: a.r(), cells }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gspace::cycle_edges;
    use crate::spectral::page;

    fn point(n: usize, kind: ResolutionKind, p_max: usize) -> SwanScenario {
        let g = FiniteGroup::cyclic(n);
        SwanScenario::new(SimplicialGComplex::point(g.clone()), GModule::integers(&g), p_max, 2, kind).unwrap()
    }

    #[test]
    fn point_total_cohomology() {
        let s = point(2, ResolutionKind::Periodic, 5);
        let tot = total_complex(&build_swan(&s).unwrap()).unwrap();
        let h: Vec<FGModule> = (0..5).map(|n| tot.cohomology(n).unwrap()).collect();
        let (z, t, o) = (FGModule::free(1), FGModule::cyclic(2), FGModule::zero());
        assert_eq!(h, vec![z.clone(), o.clone(), t.clone(), o.clone(), t.clone()]);
        let e2 = page(&build_swan(&s).unwrap(), 2).unwrap();
        assert_eq!((0..5).map(|p| e2.entry(p, 0)).collect::<Vec<_>>(), vec![z, o.clone(), t.clone(), o, t]);
        assert!((0..5).all(|p| e2.entry(p, 1).is_zero()));
    }

    #[test]
    fn point_comparison() {
        let r = compare(&point(2, ResolutionKind::Bar, 4), 4).unwrap();
        assert!(r.verdict(), "{r:?}");
        assert_eq!(r.total[2].0, FGModule::cyclic(2));
        assert_eq!(r.borel[2], FGModule::cyclic(2));
    }

    #[test]
    fn hexagon_cells_and_abutment() {
        let g = FiniteGroup::cyclic(2);
        let x = SimplicialGComplex::from_generator_actions(g.clone(), 6, &cycle_edges(6), &[(1, vec![3, 4, 5, 0, 1, 2])]).unwrap();
        let s = SwanScenario::new(x, GModule::integers(&g), 4, 4, ResolutionKind::Periodic).unwrap();
        let d = build_swan(&s).unwrap();
        assert_eq!((d.rank(0, 0), d.rank(3, 1), d.rank(2, 2)), (6, 6, 0));
        let r = compare(&s, 3).unwrap();
        assert!(r.verdict(), "{r:?}");
        let q = r.quotient_degrees.as_ref().unwrap();
        assert_eq!(q[0].right, FGModule::free(1));
        assert_eq!(q[1].right, FGModule::free(1));
        assert_eq!(r.total[2].0, FGModule::zero());
    }

    #[test]
    fn e1_is_hom_into_cohomology() {
        let g = FiniteGroup::cyclic(2);
        let x = SimplicialGComplex::from_generator_actions(g.clone(), 4, &cycle_edges(4), &[(1, vec![0, 3, 2, 1])]).unwrap();
        let s = SwanScenario::new(x, GModule::integers(&g), 3, 3, ResolutionKind::Bar).unwrap();
        let e1 = page(&build_swan(&s).unwrap(), 1).unwrap();
        let oracle = hom_of_cohomology(&s).unwrap();
        for p in 0..=3 {
            for q in 0..=3 {
                assert_eq!(e1.entry(p as i64, q as i64), oracle[p][q]);
            }
        }
    }

    #[test]
    fn reflection_square_row_one() {
        let g = FiniteGroup::cyclic(2);
        let x = SimplicialGComplex::from_generator_actions(g.clone(), 4, &cycle_edges(4), &[(1, vec![0, 3, 2, 1])]).unwrap();
        let s = SwanScenario::new(x, GModule::integers(&g), 4, 4, ResolutionKind::Periodic).unwrap();
        let grid = grothendieck_e2(&s).unwrap();
        let row: Vec<FGModule> = (0..4).map(|p| grid[p][1].clone()).collect();
        assert_eq!(row, vec![FGModule::zero(), FGModule::cyclic(2), FGModule::zero(), FGModule::cyclic(2)]);
    }

    #[test]
    fn trivial_group_circle() {
        let g = FiniteGroup::trivial();
        let x = SimplicialGComplex::with_trivial_action(g.clone(), 3, &cycle_edges(3)).unwrap();
        let s = SwanScenario::new(x, GModule::integers(&g), 2, 2, ResolutionKind::Periodic).unwrap();
        let r = compare(&s, 3).unwrap();
        assert!(r.verdict());
        assert_eq!(r.total[0].0, FGModule::free(1));
        assert_eq!(r.total[1].0, FGModule::free(1));
        let d = build_swan(&s).unwrap();
        assert_eq!((d.rank(1, 0), d.rank(0, 1)), (0, 3));
    }

    #[test]
    fn scenario_validation() {
        let s3 = FiniteGroup::symmetric(3);
        let x = SimplicialGComplex::point(s3.clone());
        assert!(SwanScenario::new(x.clone(), GModule::integers(&s3), 2, 2, ResolutionKind::Periodic).is_err());
        let z2 = GModule::integers(&FiniteGroup::cyclic(2));
        assert!(matches!(SwanScenario::new(x, z2, 2, 2, ResolutionKind::Bar), Err(Error::GroupMismatch(_))));
    }
}
