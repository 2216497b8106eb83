//! Sublattices of ℤ^n and their subquotients.
//!
//! Lattice bases are kept sparse: the complexes that feed these routines
//! have wide, mostly-zero differentials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fgmodule::FGModule;
use super::matrix::IntMatrix;
use super::snf::snf_with_row_transforms;
use crate::error::{Error, Result};

pub type Vector = Vec<BigInt>;

/// `(index, entry)` pairs with increasing indices and nonzero entries.
pub(crate) type Sparse = Vec<(usize, BigInt)>;

pub fn unit_vector(dim: usize, i: usize) -> Vector {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::from(1);
    v
}

fn sparse(v: &[BigInt]) -> Sparse {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn dense(v: &Sparse, dim: usize) -> Vector {
    let mut out = vec![BigInt::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

fn entry(v: &Sparse, i: usize) -> Option<&BigInt> {
    v.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &v[k].1)
}

/// `x − q·y`
fn axpy(x: &Sparse, q: &BigInt, y: &Sparse) -> Sparse {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (x.iter().peekable(), y.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some(&&(i, ref u)), Some(&&(j, ref w))) if i == j => {
                let z = u - q * w;
                if !z.is_zero() {
                    out.push((i, z));
                }
                a.next();
                b.next();
            }
            (Some(&&(i, ref u)), Some(&&(j, _))) if i < j => {
                out.push((i, u.clone()));
                a.next();
            }
            (Some(&&(i, ref u)), None) => {
                out.push((i, u.clone()));
                a.next();
            }
            (_, Some(&&(j, ref w))) => {
                out.push((j, -(q * w)));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

fn negate(v: &mut Sparse) {
    for (_, x) in v.iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Eliminates rows `0..row_limit` from the generating set.
///
/// Returns the echelon vectors (positive pivot first) with their pivot
/// rows in increasing order, and the leftover vectors, which vanish on all
/// eliminated rows. Together they are a unimodular transform of the input.
fn eliminate(vecs: Vec<Sparse>, row_limit: usize) -> (Vec<Sparse>, Vec<usize>, Vec<Sparse>) {
    let mut buckets: BTreeMap<usize, Vec<Sparse>> = BTreeMap::new();
    let mut rest = Vec::new();
    let mut place = |v: Sparse, buckets: &mut BTreeMap<usize, Vec<Sparse>>| match v.first() {
        None => {}
        Some(&(i, _)) if i < row_limit => buckets.entry(i).or_default().push(v),
        Some(_) => rest.push(v),
    };
    for v in vecs {
        place(v, &mut buckets);
    }
    let mut basis = Vec::new();
    let mut pivots = Vec::new();
    while let Some((r, mut group)) = buckets.pop_first() {
        while group.len() > 1 {
            let k = (0..group.len()).min_by(|&a, &b| group[a][0].1.abs().cmp(&group[b][0].1.abs())).unwrap();
            let pivot = group.swap_remove(k);
            let mut same = vec![];
            for w in group.drain(..) {
                let q = w[0].1.div_floor(&pivot[0].1);
                let w = axpy(&w, &q, &pivot);
                if w.first().is_some_and(|&(i, _)| i == r) {
                    same.push(w);
                } else {
                    place(w, &mut buckets);
                }
            }
            same.push(pivot);
            group = same;
        }
        let mut v = group.pop().unwrap();
        if v[0].1.is_negative() {
            negate(&mut v);
        }
        basis.push(v);
        pivots.push(r);
    }
    (basis, pivots, rest)
}

/// A sublattice of ℤ^dim with a column-echelon basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Sparse>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::coordinate(dim, 0..dim)
    }

    /// Coordinate sublattice spanned by the given unit vectors.
    pub fn coordinate(dim: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = coords.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Self { dim, basis: idx.iter().map(|&i| vec![(i, BigInt::one())]).collect(), pivots: idx }
    }

    pub fn span(dim: usize, gens: Vec<Vector>) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == dim));
        Self::span_sparse(dim, gens.iter().map(|g| sparse(g)).collect())
    }

    fn span_sparse(dim: usize, gens: Vec<Sparse>) -> Self {
        let (basis, pivots, rest) = eliminate(gens, dim);
        debug_assert!(rest.is_empty());
        Self { dim, basis, pivots }
    }

    pub fn column_span(m: &IntMatrix) -> Self {
        Self::span(m.rows(), m.columns())
    }

    /// `{x : m x = 0}`
    pub fn kernel(m: &IntMatrix) -> Self {
        Self::preimage(m, &[])
    }

    /// `{x : m x ∈ span(target)}`
    pub fn preimage(m: &IntMatrix, target: &[Vector]) -> Self {
        let (rows, cols) = m.shape();
        let mut vecs: Vec<Sparse> = (0..cols).map(|_| Vec::new()).collect();
        for i in 0..rows {
            for (j, x) in m.row(i).iter().enumerate() {
                if !x.is_zero() {
                    vecs[j].push((i, x.clone()));
                }
            }
        }
        for (j, v) in vecs.iter_mut().enumerate() {
            v.push((rows + j, BigInt::one()));
        }
        for t in target {
            debug_assert_eq!(t.len(), rows);
            vecs.push(sparse(t));
        }
        let (_, _, rest) = eliminate(vecs, rows);
        let gens = rest.into_iter().map(|v| v.into_iter().map(|(i, x)| (i - rows, x)).collect()).collect();
        Self::span_sparse(cols, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Dense copies of the basis vectors.
    pub fn basis(&self) -> Vec<Vector> {
        self.basis.iter().map(|b| dense(b, self.dim)).collect()
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis())
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Self::span_sparse(self.dim, g)
    }

    pub fn with_generators(&self, extra: &[Vector]) -> Lattice {
        let mut g = self.basis.clone();
        g.extend(extra.iter().map(|v| sparse(v)));
        Self::span_sparse(self.dim, g)
    }

    /// Sparse coefficients of `x` in the basis, indexed by basis position.
    fn coords_sparse(&self, x: &Sparse) -> Option<Sparse> {
        let mut r = x.clone();
        let mut c = Vec::new();
        while let Some((i, a)) = r.first().cloned() {
            let k = self.pivots.binary_search(&i).ok()?;
            let b = &self.basis[k];
            let (q, rem) = a.div_rem(&b[0].1);
            if !rem.is_zero() {
                return None;
            }
            r = axpy(&r, &q, b);
            c.push((k, q));
        }
        Some(c)
    }

    /// Coefficients of `x` in the basis, or `None` when `x` is outside.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vector> {
        assert_eq!(x.len(), self.dim);
        self.coords_sparse(&sparse(x)).map(|c| dense(&c, self.rank()))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.coords_sparse(&sparse(x)).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.coords_sparse(b).is_some())
    }

    /// `Σ c_k b_k` as a dense ambient vector.
    fn combine(&self, c: &Sparse) -> Vector {
        let mut out = vec![BigInt::zero(); self.dim];
        for (k, a) in c {
            for (i, x) in &self.basis[*k] {
                out[*i] += a * x;
            }
        }
        out
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.rank() == other.rank()
            && self.contains_lattice(other)
            && other.contains_lattice(self)
    }
}

/// `Z / B` for lattices `B ⊆ Z ⊆ ℤ^n`, with canonical generators.
///
/// Generators are ordered like the invariant factors: torsion summands by
/// increasing order, then free summands.
///
/// Relations with a unit pivot are used to eliminate a coordinate of `Z`
/// outright; only the coordinates touched by the remaining relations go
/// through a Smith normal form, and the untouched ones are free summands.
#[derive(Clone, Debug)]
pub struct Subquotient {
    sub: Lattice,
    /// `(p, b)` with `b[p] = 1` and `b` zero below `p`, increasing `p`.
    eliminated: Vec<(usize, Sparse)>,
    /// Coordinates of `Z` seen by the Smith normal form, increasing.
    active: Vec<usize>,
    u: IntMatrix,
    keep: Vec<usize>,
    /// Coordinates of `Z` that are free summands on their own.
    passive: Vec<usize>,
    orders: Vec<BigInt>,
    generators: Vec<Vector>,
}

impl Subquotient {
    pub fn new(sub: Lattice, quotient_gens: &[Vector]) -> Result<Self> {
        let gens = quotient_gens.iter().map(|g| sparse(g)).collect();
        Self::new_sparse(sub, gens)
    }

    fn new_sparse(sub: Lattice, quotient_gens: Vec<Sparse>) -> Result<Self> {
        let k = sub.rank();
        let mut coords = Vec::with_capacity(quotient_gens.len());
        for g in &quotient_gens {
            let c = sub.coords_sparse(g).ok_or(Error::NotInLattice)?;
            if !c.is_empty() {
                coords.push(c);
            }
        }
        let (basis, _, rest) = eliminate(coords, k);
        debug_assert!(rest.is_empty());
        let (units, others): (Vec<Sparse>, Vec<Sparse>) = basis.into_iter().partition(|b| b[0].1.is_one());
        let eliminated: Vec<(usize, Sparse)> = units.into_iter().map(|b| (b[0].0, b)).collect();
        let core: Vec<Sparse> = others.into_iter().map(|b| reduce(&eliminated, b)).collect();
        let mut active: Vec<usize> = core.iter().flat_map(|v| v.iter().map(|(i, _)| *i)).collect();
        active.sort_unstable();
        active.dedup();
        let passive: Vec<usize> = {
            let mut skip = vec![false; k];
            for &i in active.iter().chain(eliminated.iter().map(|(p, _)| p)) {
                skip[i] = true;
            }
            (0..k).filter(|&i| !skip[i]).collect()
        };
        let mut c = IntMatrix::zeros(active.len(), core.len());
        for (j, v) in core.iter().enumerate() {
            for (i, x) in v {
                let row = active.binary_search(i).unwrap();
                c.set(row, j, x.clone());
            }
        }
        let red = snf_with_row_transforms(&c);
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..active.len() {
            let d = red.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            keep.push(i);
            orders.push(d);
        }
        orders.extend(passive.iter().map(|_| BigInt::zero()));
        let mut generators: Vec<Vector> = keep
            .iter()
            .map(|&i| {
                let col: Sparse = (0..active.len())
                    .filter(|&r| !red.u_inv.get(r, i).is_zero())
                    .map(|r| (active[r], red.u_inv.get(r, i).clone()))
                    .collect();
                sub.combine(&col)
            })
            .collect();
        generators.extend(passive.iter().map(|&i| dense(&sub.basis[i], sub.dim)));
        Ok(Self { sub, eliminated, active, u: red.u, keep, passive, orders, generators })
    }

    pub fn from_lattices(sub: Lattice, quotient: &Lattice) -> Result<Self> {
        Self::new_sparse(sub, quotient.basis.clone())
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn sub(&self) -> &Lattice {
        &self.sub
    }

    /// Orders of the canonical generators; zero marks a free summand.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn module(&self) -> FGModule {
        let rank = self.orders.iter().filter(|d| d.is_zero()).count();
        let torsion = self.orders.iter().filter(|d| !d.is_zero()).cloned().collect();
        FGModule::from_invariants(rank, torsion)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Canonical coordinates of `x ∈ Z`, torsion entries reduced into `[0, d)`.
    pub fn coords(&self, x: &[BigInt]) -> Result<Vector> {
        let c = self.sub.coords_sparse(&sparse(x)).ok_or(Error::NotInLattice)?;
        let c = reduce(&self.eliminated, c);
        let on_active: Vec<(usize, &BigInt)> =
            c.iter().filter_map(|(i, x)| self.active.binary_search(i).ok().map(|r| (r, x))).collect();
        let mut out: Vector = self
            .keep
            .iter()
            .zip(&self.orders)
            .map(|(&i, d)| {
                let mut acc = BigInt::zero();
                for &(r, x) in &on_active {
                    let a = self.u.get(i, r);
                    if !a.is_zero() {
                        acc += a * x;
                    }
                }
                if d.is_zero() {
                    acc
                } else {
                    acc.mod_floor(d)
                }
            })
            .collect();
        out.extend(self.passive.iter().map(|&i| entry(&c, i).cloned().unwrap_or_else(BigInt::zero)));
        Ok(out)
    }

    /// Relation matrix of the abstract module on the canonical generators.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.orders.len();
        let cols: Vec<Vector> = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = d.clone();
                v
            })
            .collect();
        IntMatrix::from_columns(n, &cols)
    }

    /// Matrix of the map induced by an ambient-level map `f` into `target`.
    pub fn induced(&self, f: &IntMatrix, target: &Subquotient) -> Result<IntMatrix> {
        assert_eq!(f.cols(), self.ambient_dim());
        assert_eq!(f.rows(), target.ambient_dim());
        let cols = self
            .generators
            .iter()
            .map(|g| target.coords(&f.mul_vec(g)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(target.num_generators(), &cols))
    }
}

/// Rewrites `x` modulo the unit-pivot relations so that it vanishes on
/// every eliminated coordinate.
fn reduce(eliminated: &[(usize, Sparse)], mut x: Sparse) -> Sparse {
    for (p, b) in eliminated {
        if let Some(a) = entry(&x, *p).cloned() {
            x = axpy(&x, &a, b);
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vector {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn span_membership() {
        let l = Lattice::span(3, vec![v(&[2, 0, 0]), v(&[0, 3, 3]), v(&[2, 3, 3])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[4, -6, -6])));
        assert!(!l.contains(&v(&[1, 0, 0])));
        assert!(!l.contains(&v(&[0, 3, 2])));
    }

    #[test]
    fn kernel_of_triangle_coboundary() {
        // coboundary C^0 -> C^1 of the triangle boundary
        let d = IntMatrix::from_rows(&[[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]);
        let k = Lattice::kernel(&d);
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&v(&[1, 1, 1])));
    }

    #[test]
    fn preimage_of_even_vectors() {
        let m = IntMatrix::from_rows(&[[1, 1]]);
        let p = Lattice::preimage(&m, &[v(&[2])]);
        assert_eq!(p.rank(), 2);
        assert!(p.contains(&v(&[1, 1])));
        assert!(!p.contains(&v(&[1, 0])));
    }

    #[test]
    fn subquotient_coordinates() {
        // ℤ^2 / span{(2,0)} = ℤ/2 ⊕ ℤ
        let sq = Subquotient::new(Lattice::full(2), &[v(&[2, 0])]).unwrap();
        assert_eq!(sq.module(), FGModule::from_invariants(1, vec![BigInt::from(2)]));
        assert_eq!(sq.coords(&v(&[3, 0])).unwrap().iter().filter(|x| !x.is_zero()).count(), 1);
        assert!(sq.coords(&v(&[2, 0])).unwrap().iter().all(Zero::is_zero));
        for g in sq.generators() {
            let c = sq.coords(g).unwrap();
            assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 1);
        }
    }

    #[test]
    fn subquotient_rejects_outside_generators() {
        let z = Lattice::span(2, vec![v(&[1, 0])]);
        assert!(matches!(Subquotient::new(z, &[v(&[0, 1])]), Err(Error::NotInLattice)));
    }
}
