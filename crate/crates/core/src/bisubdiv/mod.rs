//! Subdivision calculus on separately-affine bisimplexes.
//!
//! A `(p, q)`-bisimplex `w : Δ^p × Δ^q → ℚ^a × ℚ^b` is stored by its values
//! on vertex pairs: `base[i] = π w(e_i, ·)` and `grid[i][j] = w(e_i, f_j)` in
//! the fibre coordinates. Primed operators act in the first variable (rows of
//! the grid, carrying the base point along), double-primed ones in the second
//! (columns, base fixed).

mod affine;

use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use affine::{Point, Vertices};

/// Ceiling on the number of distinct bisimplexes examined while searching for
/// the smallness index.
pub const MAX_SEARCH_TERMS: usize = 200_000;

/// Extra subdivision rounds allowed beyond the diameter estimate.
const DEPTH_GUARD: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineBisimplex {
    base: Vec<Point>,
    grid: Vec<Vec<Point>>,
}

impl AffineBisimplex {
    pub fn new(base: Vec<Vec<BigRational>>, grid: Vec<Vec<Vec<BigRational>>>) -> Result<Self> {
        if base.is_empty() || base.len() != grid.len() {
            return Err(Error::Shape(format!("{} base points for {} grid rows", base.len(), grid.len())));
        }
        let a = base[0].len();
        let cols = grid[0].len();
        if cols == 0 {
            return Err(Error::Shape("grid rows are empty".into()));
        }
        let b = grid[0][0].len();
        if base.iter().any(|x| x.len() != a) {
            return Err(Error::Shape("base points of different dimensions".into()));
        }
        if grid.iter().any(|row| row.len() != cols || row.iter().any(|x| x.len() != b)) {
            return Err(Error::Shape("ragged fibre grid".into()));
        }
        Ok(Self { base, grid })
    }

    /// Integer coordinates divided by a common denominator.
    pub fn from_integers(base: &[Vec<i64>], grid: &[Vec<Vec<i64>>], denominator: i64) -> Result<Self> {
        let q = |x: &i64| BigRational::new((*x).into(), denominator.into());
        Self::new(
            base.iter().map(|p| p.iter().map(q).collect()).collect(),
            grid.iter().map(|row| row.iter().map(|p| p.iter().map(q).collect()).collect()).collect(),
        )
    }

    pub fn p(&self) -> usize {
        self.base.len() - 1
    }

    pub fn q(&self) -> usize {
        self.grid[0].len() - 1
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p(), self.q())
    }

    pub fn base_dim(&self) -> usize {
        self.base[0].len()
    }

    pub fn fiber_dim(&self) -> usize {
        self.grid[0][0].len()
    }

    pub fn base(&self) -> &[Vec<BigRational>] {
        &self.base
    }

    pub fn grid(&self) -> &[Vec<Vec<BigRational>>] {
        &self.grid
    }

    /// Points `(base_i, grid_ij)` of `ℚ^{a+b}`; the image lies in their hull.
    pub fn grid_points(&self) -> impl Iterator<Item = Point> + '_ {
        self.base.iter().zip(&self.grid).flat_map(|(b, row)| row.iter().map(move |f| b.iter().chain(f).cloned().collect()))
    }

    pub fn base_face(&self, i: usize) -> Self {
        Self { base: affine::face(&self.base, i), grid: affine::face(&self.grid, i) }
    }

    pub fn fiber_face(&self, j: usize) -> Self {
        Self { base: self.base.clone(), grid: self.grid.iter().map(|row| affine::face(row, j)).collect() }
    }

    fn rows(&self) -> Vertices {
        self.base.iter().zip(&self.grid).map(|(b, row)| b.iter().chain(row.iter().flatten()).cloned().collect()).collect()
    }

    fn from_rows(rows: Vertices, a: usize, q: usize, b: usize) -> Self {
        let base = rows.iter().map(|r| r[..a].to_vec()).collect();
        let grid = rows.iter().map(|r| (0..=q).map(|j| r[a + j * b..a + (j + 1) * b].to_vec()).collect()).collect();
        Self { base, grid }
    }

    fn columns(&self) -> Vertices {
        (0..=self.q()).map(|j| self.grid.iter().flat_map(|row| row[j].iter().cloned()).collect()).collect()
    }

    fn from_columns(base: &[Point], cols: Vertices, b: usize) -> Self {
        let grid = (0..base.len()).map(|i| cols.iter().map(|c| c[i * b..(i + 1) * b].to_vec()).collect()).collect();
        Self { base: base.to_vec(), grid }
    }

}

/// Integer combination of bisimplexes of any bidegrees.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MixedChain {
    terms: BTreeMap<AffineBisimplex, BigInt>,
}

impl MixedChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_simplex(s: AffineBisimplex) -> Self {
        let mut c = Self::zero();
        c.add_term(s, BigInt::one());
        c
    }

    pub fn add_term(&mut self, s: AffineBisimplex, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineBisimplex, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &AffineBisimplex) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(AffineBisimplex::bidegree).collect()
    }

    pub fn component(&self, p: usize, q: usize) -> MixedChain {
        Self { terms: self.terms.iter().filter(|(s, _)| s.bidegree() == (p, q)).map(|(s, c)| (s.clone(), c.clone())).collect() }
    }

    /// Sum of the absolute values of the coefficients.
    pub fn mass(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    fn map(&self, f: impl Fn(&AffineBisimplex) -> Vec<(AffineBisimplex, i64)>) -> MixedChain {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            for (t, k) in f(s) {
                out.add_term(t, c * k);
            }
        }
        out
    }

    fn scaled(mut self, k: i64) -> Self {
        for v in self.terms.values_mut() {
            *v *= k;
        }
        self
    }
}

impl Add for &MixedChain {
    type Output = MixedChain;
    fn add(self, rhs: &MixedChain) -> MixedChain {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MixedChain {
    type Output = MixedChain;
    fn neg(self) -> MixedChain {
        self.clone().scaled(-1)
    }
}

impl Sub for &MixedChain {
    type Output = MixedChain;
    fn sub(self, rhs: &MixedChain) -> MixedChain {
        self + &(-rhs)
    }
}

/// Chain of a fixed bidegree `(p, q)` in `ℚ^a × ℚ^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiChain {
    p: usize,
    q: usize,
    a: usize,
    b: usize,
    chain: MixedChain,
}

impl BiChain {
    pub fn zero(p: usize, q: usize, a: usize, b: usize) -> Self {
        Self { p, q, a, b, chain: MixedChain::zero() }
    }

    pub fn from_simplex(s: AffineBisimplex) -> Self {
        let (p, q, a, b) = (s.p(), s.q(), s.base_dim(), s.fiber_dim());
        Self { p, q, a, b, chain: MixedChain::from_simplex(s) }
    }

    pub fn from_mixed(p: usize, q: usize, a: usize, b: usize, chain: MixedChain) -> Result<Self> {
        let mut c = Self::zero(p, q, a, b);
        for (s, k) in chain.terms {
            c.add_term(s, k)?;
        }
        Ok(c)
    }

    pub fn add_term(&mut self, s: AffineBisimplex, c: BigInt) -> Result<()> {
        if s.bidegree() != (self.p, self.q) || s.base_dim() != self.a || s.fiber_dim() != self.b {
            return Err(Error::Shape(format!(
                "bisimplex of bidegree {:?} in dimensions ({}, {}) added to a ({}, {}) chain in ({}, {})",
                s.bidegree(),
                s.base_dim(),
                s.fiber_dim(),
                self.p,
                self.q,
                self.a,
                self.b
            )));
        }
        self.chain.add_term(s, c);
        Ok(())
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn mixed(&self) -> &MixedChain {
        &self.chain
    }

    pub fn into_mixed(self) -> MixedChain {
        self.chain
    }

    pub fn is_zero(&self) -> bool {
        self.chain.is_zero()
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

fn alt(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `∂' = Σ (−1)^i ∂'_i` (base-vertex deletions).
pub fn boundary_base(c: &MixedChain) -> MixedChain {
    c.map(|s| if s.p() == 0 { Vec::new() } else { (0..=s.p()).map(|i| (s.base_face(i), alt(i))).collect() })
}

/// `∂'' = (−1)^p Σ (−1)^j ∂''_j` (fibre-column deletions).
pub fn boundary_fiber(c: &MixedChain) -> MixedChain {
    c.map(|s| if s.q() == 0 { Vec::new() } else { (0..=s.q()).map(|j| (s.fiber_face(j), alt(s.p() + j))).collect() })
}

pub fn boundary_total(c: &MixedChain) -> MixedChain {
    &boundary_base(c) + &boundary_fiber(c)
}

/// `Sd'`: barycentric subdivision of the first variable.
pub fn subdivide_base(c: &MixedChain) -> MixedChain {
    c.map(|s| {
        let (a, q, b) = (s.base_dim(), s.q(), s.fiber_dim());
        affine::sd(&s.rows()).into_iter().map(|(v, k)| (AffineBisimplex::from_rows(v, a, q, b), k)).collect()
    })
}

/// `Sd''`: barycentric subdivision of the second variable, base fixed.
pub fn subdivide_fiber(c: &MixedChain) -> MixedChain {
    c.map(fiber_sd_terms)
}

fn fiber_sd_terms(s: &AffineBisimplex) -> Vec<(AffineBisimplex, i64)> {
    let b = s.fiber_dim();
    affine::sd(&s.columns()).into_iter().map(|(v, k)| (AffineBisimplex::from_columns(&s.base, v, b), k)).collect()
}

/// `Sd = Sd' Sd''`.
pub fn subdivide_total(c: &MixedChain) -> MixedChain {
    subdivide_base(&subdivide_fiber(c))
}

/// `ρ'`: cone homotopy in the first variable, `(p, q) → (p + 1, q)`.
pub fn rho_base(c: &MixedChain) -> MixedChain {
    c.map(|s| {
        let (a, q, b) = (s.base_dim(), s.q(), s.fiber_dim());
        affine::cone_homotopy(&s.rows()).into_iter().map(|(v, k)| (AffineBisimplex::from_rows(v, a, q, b), k)).collect()
    })
}

/// `ρ''`: cone homotopy in the second variable with the sign `(−1)^p`.
pub fn rho_fiber(c: &MixedChain) -> MixedChain {
    c.map(|s| {
        let b = s.fiber_dim();
        let sign = alt(s.p());
        affine::cone_homotopy(&s.columns())
            .into_iter()
            .map(|(v, k)| (AffineBisimplex::from_columns(&s.base, v, b), k * sign))
            .collect()
    })
}

/// `ρ = ρ' Sd'' + ρ''`, so that `1 − Sd = ∂ρ + ρ∂`.
pub fn rho_total(c: &MixedChain) -> MixedChain {
    &rho_base(&subdivide_fiber(c)) + &rho_fiber(c)
}

/// `(∂'c, ∂''c)`; a component is zero when the corresponding degree is 0.
pub fn boundary(c: &BiChain) -> (MixedChain, MixedChain) {
    (boundary_base(&c.chain), boundary_fiber(&c.chain))
}

pub fn subdivide(c: &BiChain) -> BiChain {
    BiChain { chain: subdivide_total(&c.chain), ..c.clone() }
}

/// `(ρ'Sd''c, ρ''c)` of bidegrees `(p + 1, q)` and `(p, q + 1)`.
pub fn homotopy_rho(c: &BiChain) -> (MixedChain, MixedChain) {
    (rho_base(&subdivide_fiber(&c.chain)), rho_fiber(&c.chain))
}

/// Finite family of open axis-parallel boxes in `ℚ^{a+b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexCover {
    boxes: Vec<(Point, Point)>,
}

impl ConvexCover {
    pub fn new(boxes: Vec<(Vec<BigRational>, Vec<BigRational>)>) -> Result<Self> {
        let dim = boxes.first().map_or(0, |b| b.0.len());
        for (lo, hi) in &boxes {
            if lo.len() != dim || hi.len() != dim {
                return Err(Error::Shape("boxes of different dimensions".into()));
            }
            if lo.iter().zip(hi).any(|(l, h)| l >= h) {
                return Err(Error::Shape("box with a non-positive side".into()));
            }
        }
        Ok(Self { boxes })
    }

    /// Boxes `(lo/den, hi/den)`.
    pub fn from_integers(boxes: &[(Vec<i64>, Vec<i64>)], denominator: i64) -> Result<Self> {
        let q = |v: &Vec<i64>| v.iter().map(|x| BigRational::new((*x).into(), denominator.into())).collect();
        Self::new(boxes.iter().map(|(l, h)| (q(l), q(h))).collect())
    }

    pub fn boxes(&self) -> &[(Vec<BigRational>, Vec<BigRational>)] {
        &self.boxes
    }

    fn box_contains(&self, k: usize, x: &[BigRational]) -> bool {
        let (lo, hi) = &self.boxes[k];
        x.len() == lo.len() && x.iter().zip(lo).zip(hi).all(|((v, l), h)| l < v && v < h)
    }

    /// Index of a box containing every grid point of `s`.
    pub fn containing_box(&self, s: &AffineBisimplex) -> Option<usize> {
        let pts: Vec<Point> = s.grid_points().collect();
        (0..self.boxes.len()).find(|&k| pts.iter().all(|x| self.box_contains(k, x)))
    }

    pub fn is_small(&self, s: &AffineBisimplex) -> bool {
        self.containing_box(s).is_some()
    }

    pub fn is_small_chain(&self, c: &MixedChain) -> bool {
        c.terms().all(|(s, _)| self.is_small(s))
    }

    /// Largest ℓ∞ depth of `x` inside a single box (≤ 0 when uncovered).
    fn depth(&self, x: &[BigRational]) -> BigRational {
        self.boxes
            .iter()
            .map(|(lo, hi)| x.iter().zip(lo).zip(hi).map(|((v, l), h)| (v - l).min(h - v)).min().unwrap_or_else(BigRational::zero))
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

fn diameter(s: &AffineBisimplex) -> BigRational {
    let pts: Vec<Point> = s.grid_points().collect();
    (0..pts[0].len())
        .map(|k| {
            let max = pts.iter().map(|x| &x[k]).max().unwrap();
            let min = pts.iter().map(|x| &x[k]).min().unwrap();
            max - min
        })
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Subdivision rounds after which the pieces are certainly below the depth of
/// the shallowest grid point, plus a guard.
fn depth_bound(s: &AffineBisimplex, cover: &ConvexCover) -> Result<usize> {
    let margin = s.grid_points().map(|x| cover.depth(&x)).min().unwrap();
    if !margin.is_positive() {
        return Err(Error::NotCovered("a grid point lies in no box".into()));
    }
    let k = s.p().max(s.q()).max(1);
    let shrink = BigRational::new(k.into(), (k + 1).into());
    let mut d = diameter(s);
    let mut n = 0;
    while d >= margin {
        d *= &shrink;
        n += 1;
    }
    Ok(n + DEPTH_GUARD)
}

/// Least `n` such that every bisimplex occurring in `Sd^n σ` lies in one box.
pub fn smallness_index(s: &AffineBisimplex, cover: &ConvexCover) -> Result<usize> {
    if cover.is_small(s) {
        return Ok(0);
    }
    let bound = depth_bound(s, cover)?;
    let mut level: BTreeSet<AffineBisimplex> = BTreeSet::from([s.clone()]);
    for n in 1..=bound {
        let mut next = BTreeSet::new();
        for t in &level {
            for (u, _) in fiber_sd_terms(t) {
                let (a, q, b) = (u.base_dim(), u.q(), u.fiber_dim());
                for (v, _) in affine::sd(&u.rows()) {
                    let v = AffineBisimplex::from_rows(v, a, q, b);
                    if !cover.is_small(&v) {
                        next.insert(v);
                    }
                }
            }
            if next.len() > MAX_SEARCH_TERMS {
                return Err(Error::ResourceLimit { what: "smallness search".into(), size: next.len(), limit: MAX_SEARCH_TERMS });
            }
        }
        if next.is_empty() {
            return Ok(n);
        }
        level = next;
    }
    Err(Error::NotCovered(format!("still not small after {bound} subdivisions")))
}

/// `τ` and `D` for a fixed cover, with the smallness indices cached.
pub struct SmallChains<'a> {
    cover: &'a ConvexCover,
    cache: RefCell<BTreeMap<AffineBisimplex, usize>>,
}

impl<'a> SmallChains<'a> {
    pub fn new(cover: &'a ConvexCover) -> Self {
        Self { cover, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn cover(&self) -> &ConvexCover {
        self.cover
    }

    pub fn index(&self, s: &AffineBisimplex) -> Result<usize> {
        if let Some(&n) = self.cache.borrow().get(s) {
            return Ok(n);
        }
        let n = smallness_index(s, self.cover)?;
        self.cache.borrow_mut().insert(s.clone(), n);
        Ok(n)
    }

    /// `Σ_{j=from}^{to−1} ρ Sd^j σ`.
    fn rho_sd_range(s: &AffineBisimplex, from: usize, to: usize) -> MixedChain {
        let mut out = MixedChain::zero();
        let mut c = MixedChain::from_simplex(s.clone());
        for j in 0..to {
            if j >= from {
                out = &out + &rho_total(&c);
            }
            if j + 1 < to {
                c = subdivide_total(&c);
            }
        }
        out
    }

    /// `τσ = Sd^{n(σ)}σ + Σ_i (−1)^i Σ_{j=n(∂'_iσ)}^{n(σ)−1} ρSd^j ∂'_iσ
    ///       + (−1)^p Σ_i (−1)^i Σ_{j=n(∂''_iσ)}^{n(σ)−1} ρSd^j ∂''_iσ`.
    pub fn tau_simplex(&self, s: &AffineBisimplex) -> Result<MixedChain> {
        let n = self.index(s)?;
        let mut out = MixedChain::from_simplex(s.clone());
        for _ in 0..n {
            out = subdivide_total(&out);
        }
        if n == 0 {
            return Ok(out);
        }
        if s.p() > 0 {
            for i in 0..=s.p() {
                let f = s.base_face(i);
                let nf = self.index(&f)?;
                out = &out + &Self::rho_sd_range(&f, nf, n).scaled(alt(i));
            }
        }
        if s.q() > 0 {
            for i in 0..=s.q() {
                let f = s.fiber_face(i);
                let nf = self.index(&f)?;
                out = &out + &Self::rho_sd_range(&f, nf, n).scaled(alt(s.p() + i));
            }
        }
        Ok(out)
    }

    /// `Dσ = Σ_{j=0}^{n(σ)−1} ρ Sd^j σ`.
    pub fn homotopy_simplex(&self, s: &AffineBisimplex) -> Result<MixedChain> {
        let n = self.index(s)?;
        Ok(Self::rho_sd_range(s, 0, n))
    }

    pub fn tau(&self, c: &MixedChain) -> Result<MixedChain> {
        self.linear(c, |s| self.tau_simplex(s))
    }

    pub fn homotopy(&self, c: &MixedChain) -> Result<MixedChain> {
        self.linear(c, |s| self.homotopy_simplex(s))
    }

    fn linear(&self, c: &MixedChain, f: impl Fn(&AffineBisimplex) -> Result<MixedChain>) -> Result<MixedChain> {
        let mut out = MixedChain::zero();
        for (s, k) in c.terms() {
            for (t, m) in f(s)?.terms() {
                out.add_term(t.clone(), k * m);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Retraction {
    pub tau: BiChain,
    /// Components of bidegrees `(p + 1, q)` and `(p, q + 1)`.
    pub homotopy: (MixedChain, MixedChain),
}

/// `τ` and `D` with `∂D + D∂ = 1 − τ`, `τ` small and `τ = 1` on small chains.
pub fn small_chain_retraction(c: &BiChain, cover: &ConvexCover) -> Result<Retraction> {
    let sc = SmallChains::new(cover);
    let tau = sc.tau(&c.chain)?;
    let d = sc.homotopy(&c.chain)?;
    let (p, q) = c.bidegree();
    Ok(Retraction {
        tau: BiChain { chain: tau, ..c.clone() },
        homotopy: (d.component(p + 1, q), d.component(p, q + 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> AffineBisimplex {
        AffineBisimplex::from_integers(&[vec![0], vec![1]], &[vec![vec![]], vec![vec![]]], 1).unwrap()
    }

    fn sample_11() -> AffineBisimplex {
        AffineBisimplex::from_integers(&[vec![0], vec![3]], &[vec![vec![1], vec![4]], vec![vec![-2], vec![5]]], 2).unwrap()
    }

    #[test]
    fn shapes() {
        assert!(AffineBisimplex::from_integers(&[vec![0], vec![1, 2]], &[vec![vec![]], vec![vec![]]], 1).is_err());
        let s = sample_11();
        assert_eq!((s.bidegree(), s.base_dim(), s.fiber_dim()), ((1, 1), 1, 1));
        assert_eq!(AffineBisimplex::from_rows(s.rows(), 1, 1, 1), s);
        assert_eq!(AffineBisimplex::from_columns(&s.base, s.columns(), 1), s);
        let mut c = BiChain::zero(1, 1, 1, 1);
        assert!(c.add_term(interval(), BigInt::one()).is_err());
    }

    #[test]
    fn interval_boundary_and_subdivision() {
        let c = BiChain::from_simplex(interval());
        let (d1, d2) = boundary(&c);
        assert!(d2.is_zero());
        assert_eq!(d1.len(), 2);
        let sd = subdivide(&c);
        assert_eq!(sd.len(), 2);
        assert_eq!(boundary_total(sd.mixed()), subdivide_total(&d1));
    }

    #[test]
    fn point_is_fixed() {
        let pt = AffineBisimplex::from_integers(&[vec![1]], &[vec![vec![2]]], 1).unwrap();
        let c = BiChain::from_simplex(pt);
        assert_eq!(subdivide(&c), c);
        let (r1, r2) = homotopy_rho(&c);
        assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn chain_identities() {
        let c = MixedChain::from_simplex(sample_11());
        assert!(boundary_total(&boundary_total(&c)).is_zero());
        assert!((&boundary_base(&boundary_fiber(&c)) + &boundary_fiber(&boundary_base(&c))).is_zero());
        assert_eq!(subdivide_total(&c).len(), 4);
        let lhs = &c - &subdivide_total(&c);
        let rhs = &boundary_total(&rho_total(&c)) + &rho_total(&boundary_total(&c));
        assert_eq!(lhs, rhs);
        assert!((&boundary_fiber(&rho_base(&c)) + &rho_base(&boundary_fiber(&c))).is_zero());
        assert!((&boundary_base(&rho_fiber(&c)) + &rho_fiber(&boundary_base(&c))).is_zero());
    }

    #[test]
    fn interval_smallness() {
        let two = ConvexCover::from_integers(&[(vec![-1], vec![6]), (vec![4], vec![11])], 10).unwrap();
        let three = ConvexCover::from_integers(&[(vec![-1], vec![3]), (vec![2], vec![6]), (vec![5], vec![11])], 10).unwrap();
        let one = ConvexCover::from_integers(&[(vec![-1], vec![2])], 1).unwrap();
        assert_eq!(smallness_index(&interval(), &one).unwrap(), 0);
        assert_eq!(smallness_index(&interval(), &two).unwrap(), 1);
        // 1/2 sits on the open edge of the right box, so [1/2, 3/4] only fits
        // once it has shrunk below 1/10: four rounds, not two.
        assert_eq!(smallness_index(&interval(), &three).unwrap(), 4);
        let four = ConvexCover::from_integers(
            &[(vec![-2], vec![6]), (vec![4], vec![12]), (vec![9], vec![16]), (vec![14], vec![22])],
            20,
        )
        .unwrap();
        assert_eq!(smallness_index(&interval(), &four).unwrap(), 2);
        let gap = ConvexCover::from_integers(&[(vec![-1], vec![5]), (vec![5], vec![11])], 10).unwrap();
        assert!(matches!(smallness_index(&interval(), &gap), Err(Error::NotCovered(_))));
    }

    #[test]
    fn interval_retraction() {
        let two = ConvexCover::from_integers(&[(vec![-1], vec![6]), (vec![4], vec![11])], 10).unwrap();
        let c = BiChain::from_simplex(interval());
        let r = small_chain_retraction(&c, &two).unwrap();
        assert_eq!(r.tau, subdivide(&c));
        let sc = SmallChains::new(&two);
        let d = &r.homotopy.0 + &r.homotopy.1;
        let lhs = &boundary_total(&d) + &sc.homotopy(&boundary_total(c.mixed())).unwrap();
        assert_eq!(lhs, c.mixed() - r.tau.mixed());
        assert!(two.is_small_chain(r.tau.mixed()));
        let again = sc.tau(r.tau.mixed()).unwrap();
        assert_eq!(&again, r.tau.mixed());
    }
}
