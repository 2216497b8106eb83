//! First-quadrant double complexes and the spectral sequence of the column
//! filtration, computed page by page with exact lattice arithmetic.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complexes::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{FGModule, IntMatrix, Lattice, Presentation, Subquotient, Vector};

/// Cells `C^{p,q}` for `0 ≤ p ≤ p_max`, `0 ≤ q ≤ q_max`, with horizontal
/// differentials `p → p+1` and vertical ones `q → q+1`.
///
/// The vertical differentials are stored already multiplied by `(−1)^p`, so
/// the total differential is `d_h + d_v`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    p_max: usize,
    q_max: usize,
    cells: Vec<Vec<Presentation>>,
    d_h: Vec<Vec<IntMatrix>>,
    d_v: Vec<Vec<IntMatrix>>,
}

impl DoubleComplex {
    /// `cell(p, q)`, `d_h(p, q) : C^{p,q} → C^{p+1,q}` (asked for `p < p_max`)
    /// and the unsigned `d_v(p, q) : C^{p,q} → C^{p,q+1}` (asked for
    /// `q < q_max`), which must commute with `d_h`; the `(−1)^p` sign is
    /// applied here.
    pub fn build(
        p_max: usize,
        q_max: usize,
        mut cell: impl FnMut(usize, usize) -> Presentation,
        mut d_h: impl FnMut(usize, usize) -> Result<IntMatrix>,
        mut d_v_unsigned: impl FnMut(usize, usize) -> Result<IntMatrix>,
    ) -> Result<Self> {
        let cells: Vec<Vec<Presentation>> = (0..=p_max).map(|p| (0..=q_max).map(|q| cell(p, q)).collect()).collect();
        let mut h = Vec::with_capacity(p_max);
        for p in 0..p_max {
            h.push((0..=q_max).map(|q| d_h(p, q)).collect::<Result<Vec<_>>>()?);
        }
        let mut v = Vec::with_capacity(p_max + 1);
        for p in 0..=p_max {
            let sign = if p % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            v.push((0..q_max).map(|q| d_v_unsigned(p, q).map(|m| m.scale(&sign))).collect::<Result<Vec<_>>>()?);
        }
        let d = Self { p_max, q_max, cells, d_h: h, d_v: v };
        d.validate()?;
        Ok(d)
    }

    /// Free cells given by their ranks.
    pub fn free(
        ranks: &[Vec<usize>],
        d_h: impl FnMut(usize, usize) -> Result<IntMatrix>,
        d_v_unsigned: impl FnMut(usize, usize) -> Result<IntMatrix>,
    ) -> Result<Self> {
        let p_max = ranks.len().checked_sub(1).ok_or_else(|| Error::InvalidComplex("no columns".into()))?;
        let q_max = ranks[0].len().checked_sub(1).ok_or_else(|| Error::InvalidComplex("no rows".into()))?;
        if ranks.iter().any(|c| c.len() != q_max + 1) {
            return Err(Error::InvalidComplex("ragged rank grid".into()));
        }
        Self::build(p_max, q_max, |p, q| Presentation::free(ranks[p][q]), d_h, d_v_unsigned)
    }

    fn validate(&self) -> Result<()> {
        for p in 0..=self.p_max {
            for q in 0..=self.q_max {
                let here = &self.cells[p][q];
                if p < self.p_max {
                    let m = &self.d_h[p][q];
                    let tgt = &self.cells[p + 1][q];
                    if m.shape() != (tgt.generators(), here.generators()) {
                        return Err(Error::InvalidComplex(format!("d_h at ({p},{q}) has the wrong shape")));
                    }
                    if !tgt.receives_relations(m, here) {
                        return Err(Error::InvalidComplex(format!("d_h at ({p},{q}) does not respect relations")));
                    }
                }
                if q < self.q_max {
                    let m = &self.d_v[p][q];
                    let tgt = &self.cells[p][q + 1];
                    if m.shape() != (tgt.generators(), here.generators()) {
                        return Err(Error::InvalidComplex(format!("d_v at ({p},{q}) has the wrong shape")));
                    }
                    if !tgt.receives_relations(m, here) {
                        return Err(Error::InvalidComplex(format!("d_v at ({p},{q}) does not respect relations")));
                    }
                }
                if p + 2 <= self.p_max && !self.cells[p + 2][q].annihilates(&(&self.d_h[p + 1][q] * &self.d_h[p][q])) {
                    return Err(Error::InvalidComplex(format!("d_h d_h != 0 at ({p},{q})")));
                }
                if q + 2 <= self.q_max && !self.cells[p][q + 2].annihilates(&(&self.d_v[p][q + 1] * &self.d_v[p][q])) {
                    return Err(Error::InvalidComplex(format!("d_v d_v != 0 at ({p},{q})")));
                }
                if p < self.p_max && q < self.q_max {
                    let hv = &self.d_h[p][q + 1] * &self.d_v[p][q];
                    let vh = &self.d_v[p + 1][q] * &self.d_h[p][q];
                    if !self.cells[p + 1][q + 1].annihilates(&(&hv + &vh)) {
                        return Err(Error::InvalidComplex(format!("d_h d_v + d_v d_h != 0 at ({p},{q})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn cell(&self, p: usize, q: usize) -> &Presentation {
        &self.cells[p][q]
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.cells.get(p).and_then(|c| c.get(q)).map_or(0, Presentation::generators)
    }

    /// Horizontal differential at `(p, q)`; zero leaving the box.
    pub fn d_h(&self, p: usize, q: usize) -> IntMatrix {
        if p < self.p_max {
            self.d_h[p][q].clone()
        } else {
            IntMatrix::zeros(0, self.rank(p, q))
        }
    }

    /// Signed vertical differential at `(p, q)`; zero leaving the box.
    pub fn d_v(&self, p: usize, q: usize) -> IntMatrix {
        if q < self.q_max {
            self.d_v[p][q].clone()
        } else {
            IntMatrix::zeros(0, self.rank(p, q))
        }
    }

    pub fn max_total_degree(&self) -> usize {
        self.p_max + self.q_max
    }

    /// Columns present in total degree `n`.
    fn columns(&self, n: i64) -> std::ops::Range<usize> {
        if n < 0 || n as usize > self.max_total_degree() {
            return 0..0;
        }
        let n = n as usize;
        n.saturating_sub(self.q_max)..n.min(self.p_max) + 1
    }

    fn offsets(&self, n: i64) -> Vec<(usize, usize, usize)> {
        let mut off = 0;
        self.columns(n)
            .map(|p| {
                let q = n as usize - p;
                let r = self.rank(p, q);
                let e = (p, off, r);
                off += r;
                e
            })
            .collect()
    }

    fn tot_rank(&self, n: i64) -> usize {
        self.offsets(n).iter().map(|&(_, _, r)| r).sum()
    }

    fn tot_module(&self, n: i64) -> Presentation {
        let parts: Vec<Presentation> =
            self.columns(n).map(|p| self.cells[p][n as usize - p].clone()).collect();
        Presentation::direct_sum(&parts)
    }

    fn tot_differential(&self, n: i64) -> IntMatrix {
        let src = self.offsets(n);
        let tgt = self.offsets(n + 1);
        let mut m = IntMatrix::zeros(self.tot_rank(n + 1), self.tot_rank(n));
        let one = BigInt::one();
        for &(p, c0, _) in &src {
            let q = n as usize - p;
            for &(p2, r0, _) in &tgt {
                if p2 == p + 1 && p < self.p_max {
                    m.add_block(r0, c0, &self.d_h[p][q], &one);
                } else if p2 == p && q < self.q_max {
                    m.add_block(r0, c0, &self.d_v[p][q], &one);
                }
            }
        }
        m
    }

    /// Whether total degree `n` is unaffected by the truncation of the box:
    /// `H^n` needs every cell of total degree `n + 1`.
    pub fn degree_is_certified(&self, n: usize) -> bool {
        n < self.p_max.min(self.q_max)
    }
}

/// `Tot^n = ⊕_{p+q=n} C^{p,q}` (columns in increasing `p`), `d = d_h + d_v`.
pub fn total_complex(d: &DoubleComplex) -> Result<CochainComplex> {
    let top = d.max_total_degree() as i64;
    let modules = (0..=top).map(|n| d.tot_module(n)).collect();
    let diffs = (0..top).map(|n| d.tot_differential(n)).collect();
    CochainComplex::new(0, modules, diffs)
}

/// One page: `E_r^{p,q}` with canonical generators and `d_r` between them.
#[derive(Clone, Debug)]
pub struct SSPage {
    r: usize,
    p_max: usize,
    q_max: usize,
    entries: Vec<Vec<FGModule>>,
    relations: Vec<Vec<Presentation>>,
    d_r: Vec<Vec<IntMatrix>>,
}

impl SSPage {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    /// `E_r^{p,q}`; zero outside the box.
    pub fn entry(&self, p: i64, q: i64) -> FGModule {
        self.idx(p, q).map_or_else(FGModule::zero, |(p, q)| self.entries[p][q].clone())
    }

    pub fn entries(&self) -> &[Vec<FGModule>] {
        &self.entries
    }

    fn idx(&self, p: i64, q: i64) -> Option<(usize, usize)> {
        (p >= 0 && q >= 0 && p as usize <= self.p_max && q as usize <= self.q_max).then(|| (p as usize, q as usize))
    }

    fn presentation(&self, p: i64, q: i64) -> Presentation {
        self.idx(p, q).map_or_else(|| Presentation::free(0), |(p, q)| self.relations[p][q].clone())
    }

    /// `d_r : E_r^{p,q} → E_r^{p+r, q−r+1}` in canonical generators.
    pub fn differential(&self, p: i64, q: i64) -> IntMatrix {
        match self.idx(p, q) {
            Some((a, b)) => self.d_r[a][b].clone(),
            None => {
                let r = self.r as i64;
                IntMatrix::zeros(self.presentation(p + r, q - r + 1).generators(), 0)
            }
        }
    }

    /// Whether `d_r` out of `(p, q)` is zero modulo the target relations.
    pub fn differential_vanishes(&self, p: i64, q: i64) -> bool {
        let r = self.r as i64;
        self.presentation(p + r, q - r + 1).annihilates(&self.differential(p, q))
    }

    /// Whether `d_r ∘ d_r` vanishes at every cell.
    pub fn d_squared_vanishes(&self) -> bool {
        let r = self.r as i64;
        (0..=self.p_max as i64).all(|p| {
            (0..=self.q_max as i64).all(|q| {
                let first = self.differential(p, q);
                let second = self.differential(p + r, q - r + 1);
                let target = self.presentation(p + 2 * r, q - 2 * r + 2);
                if second.cols() != first.rows() || second.rows() != target.generators() {
                    return first.rows() == 0 || second.rows() == 0;
                }
                target.annihilates(&(&second * &first))
            })
        })
    }

    /// Cohomology of `(E_r, d_r)` at `(p, q)`.
    pub fn page_cohomology(&self, p: i64, q: i64) -> Result<FGModule> {
        let r = self.r as i64;
        let here = self.presentation(p, q);
        let out = self.differential(p, q);
        let target = self.presentation(p + r, q - r + 1);
        let incoming = self.differential(p - r, q + r - 1);
        let cycles = if out.rows() == 0 {
            Lattice::full(here.generators())
        } else {
            Lattice::preimage(&out, &target.relation_vectors())
        };
        let mut gens = here.relation_vectors();
        if incoming.rows() == here.generators() {
            gens.extend(incoming.columns());
        }
        Ok(Subquotient::new(cycles, &gens)?.module())
    }

    /// Same entries at every cell.
    pub fn same_entries(&self, other: &SSPage) -> bool {
        self.p_max == other.p_max && self.q_max == other.q_max && self.entries == other.entries
    }
}

type ZKey = (i64, usize, Option<usize>);

/// Lazily computed filtration lattices of one double complex.
pub struct SpectralSequence<'a> {
    d: &'a DoubleComplex,
    tot: Vec<IntMatrix>,
    modules: Vec<Presentation>,
    cache: RefCell<HashMap<ZKey, Lattice>>,
}

impl<'a> SpectralSequence<'a> {
    pub fn new(d: &'a DoubleComplex) -> Self {
        let top = d.max_total_degree() as i64;
        let tot = (0..=top).map(|n| d.tot_differential(n)).collect();
        let modules = (0..=top).map(|n| d.tot_module(n)).collect();
        Self { d, tot, modules, cache: RefCell::new(HashMap::new()) }
    }

    fn module(&self, n: i64) -> Presentation {
        if n < 0 || n as usize >= self.modules.len() {
            Presentation::free(0)
        } else {
            self.modules[n as usize].clone()
        }
    }

    fn differential(&self, n: i64) -> IntMatrix {
        if n < 0 || n as usize >= self.tot.len() {
            IntMatrix::zeros(self.d.tot_rank(n + 1), self.d.tot_rank(n))
        } else {
            self.tot[n as usize].clone()
        }
    }

    /// First coordinate of column `p` in `Tot^n`, or the rank when `p` lies
    /// past the last column.
    fn column_start(&self, n: i64, p: usize) -> usize {
        self.d.offsets(n).iter().find(|&&(c, _, _)| c >= p).map_or(self.d.tot_rank(n), |&(_, o, _)| o)
    }

    /// `{x ∈ F^p Tot^n : d x ∈ F^t Tot^{n+1} + Rel} + Rel`.
    fn z(&self, n: i64, p: i64, t: i64) -> Lattice {
        let cols = self.d.columns(n);
        let p_eff = (p.max(0) as usize).clamp(cols.start, cols.end);
        let next = self.d.columns(n + 1);
        let t_eff = if next.is_empty() || t <= (p_eff.max(next.start)) as i64 {
            None
        } else {
            Some((t as usize).min(next.end))
        };
        let key = (n, p_eff, t_eff);
        if let Some(l) = self.cache.borrow().get(&key) {
            return l.clone();
        }
        let l = self.compute_z(n, p_eff, t_eff);
        self.cache.borrow_mut().insert(key, l.clone());
        l
    }

    fn compute_z(&self, n: i64, p: usize, t: Option<usize>) -> Lattice {
        let dim = self.d.tot_rank(n);
        let start = self.column_start(n, p);
        let module = self.module(n);
        let mut gens: Vec<Vector> = Vec::new();
        match t {
            None => gens.extend((start..dim).map(|i| crate::linalg::unit_vector(dim, i))),
            Some(t) => {
                let cut = self.column_start(n + 1, t);
                let d = self.differential(n);
                let proj = d.submatrix(0..cut, start..dim);
                let below: Vec<Vector> = self
                    .module(n + 1)
                    .relation_vectors()
                    .into_iter()
                    .filter(|v| v[cut..].iter().all(Zero::is_zero))
                    .map(|v| v[..cut].to_vec())
                    .collect();
                for b in &Lattice::preimage(&proj, &below).basis() {
                    let mut v = vec![BigInt::zero(); start];
                    v.extend(b.iter().cloned());
                    gens.push(v);
                }
            }
        }
        gens.extend(module.relation_vectors());
        Lattice::span(dim, gens)
    }

    fn subquotient(&self, r: usize, p: i64, q: i64) -> Result<Subquotient> {
        let n = p + q;
        let r = r as i64;
        let num = self.z(n, p, p + r);
        let mut den: Vec<Vector> = self.z(n, p + 1, p + r).basis();
        if r >= 1 {
            let d = self.differential(n - 1);
            for b in &self.z(n - 1, p - r + 1, p).basis() {
                den.push(d.mul_vec(b));
            }
        }
        Subquotient::new(num, &den)
    }

    pub fn page(&self, r: usize) -> Result<SSPage> {
        let (pm, qm) = (self.d.p_max, self.d.q_max);
        let mut sqs = Vec::with_capacity(pm + 1);
        for p in 0..=pm {
            let col = (0..=qm).map(|q| self.subquotient(r, p as i64, q as i64)).collect::<Result<Vec<_>>>()?;
            sqs.push(col);
        }
        let ri = r as i64;
        let mut d_r = Vec::with_capacity(pm + 1);
        for p in 0..=pm {
            let mut col = Vec::with_capacity(qm + 1);
            for q in 0..=qm {
                let (tp, tq) = (p as i64 + ri, q as i64 - ri + 1);
                let src = &sqs[p][q];
                let m = if tp >= 0 && tq >= 0 && (tp as usize) <= pm && (tq as usize) <= qm {
                    src.induced(&self.differential((p + q) as i64), &sqs[tp as usize][tq as usize])?
                } else {
                    IntMatrix::zeros(0, src.num_generators())
                };
                col.push(m);
            }
            d_r.push(col);
        }
        let entries = sqs.iter().map(|c| c.iter().map(Subquotient::module).collect()).collect();
        let relations = sqs
            .iter()
            .map(|c| c.iter().map(|s| Presentation::new(s.num_generators(), s.relation_matrix())).collect())
            .collect();
        Ok(SSPage { r, p_max: pm, q_max: qm, entries, relations, d_r })
    }

    /// Graded pieces `F^pH^n / F^{p+1}H^n` of the cohomology of `Tot`,
    /// computed from cycles and boundaries directly.
    pub fn filtration_quotients(&self, n: usize) -> Result<Vec<(usize, FGModule)>> {
        let n = n as i64;
        let cols = self.d.columns(n);
        let d_in = self.differential(n - 1);
        let mut boundaries = d_in.columns();
        boundaries.extend(self.module(n).relation_vectors());
        let never = self.d.max_total_degree() as i64 + 2;
        let mut out = Vec::new();
        for p in cols.clone() {
            let upper = self.z(n, p as i64, never).with_generators(&boundaries);
            let lower = self.z(n, p as i64 + 1, never).with_generators(&boundaries);
            out.push((p, Subquotient::from_lattices(upper, &lower)?.module()));
        }
        Ok(out)
    }
}

/// `E_r` of the column filtration.
pub fn page(d: &DoubleComplex, r: usize) -> Result<SSPage> {
    SpectralSequence::new(d).page(r)
}

/// The page from which all differentials vanish for degree reasons.
pub fn stable_page_index(d: &DoubleComplex) -> usize {
    d.p_max + d.q_max + 2
}

pub fn stable_page(d: &DoubleComplex) -> Result<SSPage> {
    page(d, stable_page_index(d))
}

/// Pages `r_min..=r_max` sharing one lattice cache.
pub fn pages(d: &DoubleComplex, r_min: usize, r_max: usize) -> Result<Vec<SSPage>> {
    let ss = SpectralSequence::new(d);
    (r_min..=r_max).map(|r| ss.page(r)).collect()
}

/// Comparison of `H^n(Tot)` with `⊕_{p+q=n} E_∞^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCheck {
    pub n: usize,
    pub total: FGModule,
    pub graded: Vec<(usize, FGModule)>,
    pub total_rank: usize,
    pub graded_rank: usize,
    pub total_torsion_order: BigInt,
    pub graded_torsion_product: BigInt,
    pub rank_equal: bool,
    /// `|tors H^n|` equals the product of the graded torsion orders.
    pub torsion_product_equal: bool,
    /// `|tors H^n|` divides that product, as it must for any filtration.
    pub torsion_divides: bool,
    /// `E_∞^{p,n−p}` equals `F^pH^n/F^{p+1}H^n` for every `p`.
    pub filtration_matches: bool,
    pub verdict: bool,
}

pub fn associated_graded_check(d: &DoubleComplex, n: usize) -> Result<GradedCheck> {
    let ss = SpectralSequence::new(d);
    let stable = ss.page(stable_page_index(d))?;
    graded_check_with(&ss, &stable, n)
}

pub(crate) fn graded_check_with(ss: &SpectralSequence<'_>, stable: &SSPage, n: usize) -> Result<GradedCheck> {
    let d = ss.d;
    let total = total_complex(d)?.cohomology(n as i64)?;
    let graded: Vec<(usize, FGModule)> =
        d.columns(n as i64).map(|p| (p, stable.entry(p as i64, (n - p) as i64))).collect();
    let graded_rank = graded.iter().map(|(_, m)| m.rank()).sum();
    let graded_torsion_product = graded.iter().fold(BigInt::one(), |acc, (_, m)| acc * m.torsion_order());
    let total_torsion_order = total.torsion_order();
    let rank_equal = graded_rank == total.rank();
    let torsion_product_equal = graded_torsion_product == total_torsion_order;
    let torsion_divides = (&graded_torsion_product % &total_torsion_order).is_zero();
    let filtration_matches = ss.filtration_quotients(n)? == graded;
    Ok(GradedCheck {
        n,
        total_rank: total.rank(),
        total,
        graded,
        graded_rank,
        total_torsion_order,
        graded_torsion_product,
        rank_equal,
        torsion_product_equal,
        torsion_divides,
        filtration_matches,
        verdict: rank_equal && torsion_divides && filtration_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_cell(rank: usize) -> DoubleComplex {
        DoubleComplex::free(&[vec![rank]], |_, _| unreachable!(), |_, _| unreachable!()).unwrap()
    }

    /// Columns `ℤ --1--> ℤ` in rows 0 → 1, joined horizontally by `c`.
    fn exact_columns(c: i64) -> DoubleComplex {
        DoubleComplex::free(
            &[vec![1, 1], vec![1, 1]],
            |_, _| Ok(IntMatrix::from_rows(&[[c]])),
            |_, _| Ok(IntMatrix::from_rows(&[[1]])),
        )
        .unwrap()
    }

    #[test]
    fn single_cell_everything() {
        let d = single_cell(2);
        let tot = total_complex(&d).unwrap();
        assert_eq!(tot.cohomology(0).unwrap(), FGModule::free(2));
        assert_eq!(page(&d, 0).unwrap().entry(0, 0), FGModule::free(2));
        assert_eq!(stable_page(&d).unwrap().entry(0, 0), FGModule::free(2));
        let g = associated_graded_check(&d, 0).unwrap();
        assert!(g.verdict && g.torsion_product_equal);
    }

    #[test]
    fn exact_columns_vanish() {
        for c in [0, 3] {
            let d = exact_columns(c);
            let e1 = page(&d, 1).unwrap();
            assert!(e1.entries().iter().flatten().all(FGModule::is_zero));
            assert!(stable_page(&d).unwrap().entries().iter().flatten().all(FGModule::is_zero));
            for n in 0..3 {
                let g = associated_graded_check(&d, n).unwrap();
                assert!(g.verdict && g.total.is_zero());
            }
        }
    }

    #[test]
    fn page_zero_is_cells_with_vertical_differential() {
        let d = exact_columns(2);
        let e0 = page(&d, 0).unwrap();
        assert_eq!(e0.entry(1, 0), FGModule::free(1));
        assert_eq!(e0.differential(1, 0), IntMatrix::from_rows(&[[-1]]));
        assert!(e0.d_squared_vanishes());
    }

    #[test]
    fn rejects_noncommuting_squares() {
        let r = DoubleComplex::free(
            &[vec![1, 1], vec![1, 1]],
            |_, q| Ok(IntMatrix::from_rows(&[[if q == 0 { 1 } else { 2 }]])),
            |_, _| Ok(IntMatrix::from_rows(&[[1]])),
        );
        assert!(matches!(r, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn nontrivial_extension() {
        // one row ℤ --2--> ℤ: the cokernel ℤ/2 sits at p = 1
        let d = DoubleComplex::free(&[vec![1], vec![1]], |_, _| Ok(IntMatrix::from_rows(&[[2]])), |_, _| unreachable!())
            .unwrap();
        let e2 = page(&d, 2).unwrap();
        assert_eq!(e2.entry(1, 0), FGModule::cyclic(2));
        assert_eq!(e2.entry(0, 0), FGModule::zero());
    }

    #[test]
    fn longer_differential() {
        // zig-zag x(0,1) → y(1,1) ← u(1,0) → v(2,0): x survives to E_2 and
        // d_2 hits v
        let ranks = vec![vec![0, 1], vec![1, 1], vec![1, 0]];
        let d = DoubleComplex::free(
            &ranks,
            |p, q| {
                let (s, t) = (ranks[p][q], ranks[p + 1][q]);
                Ok(if s == 1 && t == 1 { IntMatrix::from_rows(&[[1]]) } else { IntMatrix::zeros(t, s) })
            },
            |p, q| {
                let (s, t) = (ranks[p][q], ranks[p][q + 1]);
                Ok(if s == 1 && t == 1 { IntMatrix::from_rows(&[[1]]) } else { IntMatrix::zeros(t, s) })
            },
        );
        let d = d.unwrap();
        let e1 = page(&d, 1).unwrap();
        assert_eq!(e1.entry(0, 1), FGModule::free(1));
        assert_eq!(e1.entry(2, 0), FGModule::free(1));
        let e2 = page(&d, 2).unwrap();
        assert_eq!(e2.differential(0, 1).shape(), (1, 1));
        assert_eq!(e2.differential(0, 1).get(0, 0).magnitude(), &1u32.into());
        let e3 = page(&d, 3).unwrap();
        assert!(e3.entries().iter().flatten().all(FGModule::is_zero));
        for r in 0..3 {
            let a = page(&d, r).unwrap();
            let b = page(&d, r + 1).unwrap();
            for p in 0..3 {
                for q in 0..2 {
                    assert_eq!(a.page_cohomology(p, q).unwrap(), b.entry(p, q), "r={r} ({p},{q})");
                }
            }
        }
    }
}
