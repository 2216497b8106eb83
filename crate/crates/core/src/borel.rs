//! Simplicial skeleta of EG and of the Borel construction `X ×_G EG`, with
//! twisted-coefficient cochains computing equivariant cohomology.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::complexes::CochainComplex;
use crate::error::{Error, Result};
use crate::groupcoh::{FiniteGroup, GModule};
use crate::gspace::SimplicialGComplex;
use crate::limits::Limits;
use crate::linalg::{FGModule, IntMatrix};

/// A simplicial set truncated at level `n_max`, given by face and degeneracy
/// tables. Degeneracies are stored for levels below `n_max` only.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSet {
    /// Builds the tables from enumerated levels and key-level face and
    /// degeneracy functions.
    pub fn from_levels<K: Clone + Eq + Hash>(
        levels: &[Vec<K>],
        face: impl Fn(&K, usize) -> K,
        degeneracy: impl Fn(&K, usize) -> K,
    ) -> Result<Self> {
        let index: Vec<HashMap<&K, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
        let lookup = |n: usize, k: &K| -> Result<usize> {
            index[n].get(k).copied().ok_or_else(|| Error::InvalidSpace(format!("level {n} is not closed under faces/degeneracies")))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..levels.len() {
            let t = levels[n].iter().map(|k| (0..=n).map(|i| lookup(n - 1, &face(k, i))).collect()).collect::<Result<_>>()?;
            faces.push(t);
        }
        let mut degeneracies = Vec::new();
        for n in 0..levels.len().saturating_sub(1) {
            let t = levels[n].iter().map(|k| (0..=n).map(|i| lookup(n + 1, &degeneracy(k, i))).collect()).collect::<Result<_>>()?;
            degeneracies.push(t);
        }
        Ok(Self { sizes: levels.iter().map(Vec::len).collect(), faces, degeneracies })
    }

    pub fn n_max(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `d_i` on the `s`-th simplex of level `n ≥ 1`.
    pub fn face(&self, n: usize, s: usize, i: usize) -> usize {
        self.faces[n][s][i]
    }

    /// `s_i` on the `s`-th simplex of level `n < n_max`.
    pub fn degeneracy(&self, n: usize, s: usize, i: usize) -> usize {
        self.degeneracies[n][s][i]
    }

    /// Whether simplex `s` of level `n` is in the image of some degeneracy.
    pub fn nondegenerate(&self, n: usize) -> Vec<bool> {
        let mut nd = vec![true; self.sizes[n]];
        if n > 0 {
            for t in &self.degeneracies[n - 1] {
                for &s in t {
                    nd[s] = false;
                }
            }
        }
        nd
    }

    /// Checks every simplicial identity among the stored maps; errors name
    /// the first failure.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: String| Err(Error::InvalidSpace(format!("simplicial identity fails: {what}")));
        for n in 2..=self.n_max() {
            for s in 0..self.sizes[n] {
                for j in 1..=n {
                    for i in 0..j {
                        let a = self.face(n - 1, self.face(n, s, j), i);
                        let b = self.face(n - 1, self.face(n, s, i), j - 1);
                        if a != b {
                            return fail(format!("d_{i} d_{j} != d_{} d_{i} on level {n} simplex {s}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..self.n_max() {
            for s in 0..self.sizes[n] {
                for j in 0..=n {
                    let sj = self.degeneracy(n, s, j);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, sj, i);
                        let rhs = if i < j {
                            self.degeneracy(n - 1, self.face(n, s, i), j - 1)
                        } else if i == j || i == j + 1 {
                            s
                        } else {
                            self.degeneracy(n - 1, self.face(n, s, i - 1), j)
                        };
                        if lhs != rhs {
                            return fail(format!("d_{i} s_{j} on level {n} simplex {s}"));
                        }
                    }
                    if n + 1 < self.n_max() {
                        for i in 0..=j {
                            let a = self.degeneracy(n + 1, sj, i);
                            let b = self.degeneracy(n + 1, self.degeneracy(n, s, i), j + 1);
                            if a != b {
                                return fail(format!("s_{i} s_{j} != s_{} s_{i} on level {n} simplex {s}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Integer cochains, normalized (vanishing on degenerate simplices) or not.
    pub fn cochain_complex(&self, normalized: bool) -> Result<CochainComplex> {
        let twist: Vec<Vec<usize>> = self.sizes.iter().map(|&k| vec![0; k]).collect();
        twisted_cochains(self, &twist, &GModule::integers(&FiniteGroup::trivial()), normalized)
    }
}

/// Cochains `f` on the simplices of `s` with values in `a`, where the face
/// `d_0` of simplex `σ` on level `n` contributes `action(twist[n][σ])·f(d_0σ)`.
fn twisted_cochains(
    s: &SimplicialSet,
    twist: &[Vec<usize>],
    a: &GModule,
    normalized: bool,
) -> Result<CochainComplex> {
    let n_gen = a.generators();
    let cells: Vec<Vec<usize>> = (0..=s.n_max())
        .map(|n| {
            if normalized {
                s.nondegenerate(n).iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
            } else {
                (0..s.size(n)).collect()
            }
        })
        .collect();
    let position: Vec<HashMap<usize, usize>> =
        cells.iter().map(|c| c.iter().enumerate().map(|(k, &i)| (i, k)).collect()).collect();
    let modules = cells.iter().map(|c| a.presentation().power(c.len())).collect();
    let mut diffs = Vec::new();
    for n in 0..s.n_max() {
        let mut d = IntMatrix::zeros(cells[n + 1].len() * n_gen, cells[n].len() * n_gen);
        for (row, &sigma) in cells[n + 1].iter().enumerate() {
            for i in 0..=n + 1 {
                let f = s.face(n + 1, sigma, i);
                let Some(&col) = position[n].get(&f) else { continue };
                let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                let g = if i == 0 { twist[n + 1][sigma] } else { a.group().identity() };
                d.add_block(row * n_gen, col * n_gen, a.action(g), &sign);
            }
        }
        diffs.push(d);
    }
    CochainComplex::new(0, modules, diffs)
}

/// Levels `G^{n+1}` with faces deleting and degeneracies repeating entries.
pub fn eg_skeleton(group: &FiniteGroup, n_max: usize) -> Result<SimplicialSet> {
    eg_skeleton_with(group, n_max, &Limits::from_env())
}

pub fn eg_skeleton_with(group: &FiniteGroup, n_max: usize, limits: &Limits) -> Result<SimplicialSet> {
    let mut levels = Vec::new();
    for n in 0..=n_max {
        let size = (group.order() as u128).checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
        limits.check(format!("EG level {n}"), usize::try_from(size).unwrap_or(usize::MAX))?;
        levels.push(all_tuples(group.order(), n + 1));
    }
    SimplicialSet::from_levels(&levels, |k: &Vec<usize>, i| remove(k, i), |k: &Vec<usize>, i| repeat(k, i))
}

fn all_tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn remove(k: &[usize], i: usize) -> Vec<usize> {
    let mut t = k.to_vec();
    t.remove(i);
    t
}

fn repeat(k: &[usize], i: usize) -> Vec<usize> {
    let mut t = k.to_vec();
    t.insert(i, k[i]);
    t
}

/// A level simplex of `X × EG`: a vertex tuple spanning a simplex of `X`,
/// and a tuple of group elements.
pub type BorelKey = (Vec<usize>, Vec<usize>);

/// The quotient `(X_ord × EG)/G` truncated at level `n_max`, where `X_ord`
/// is the simplicial set of all vertex tuples spanning a simplex of `X`.
///
/// Orbit representatives are the simplices whose first group entry is the
/// identity; `d_0` of a representative equals `g_1` times a representative,
/// and `twist` stores that `g_1`.
#[derive(Clone, Debug)]
pub struct BorelSpace {
    group: FiniteGroup,
    n_max: usize,
    keys: Vec<Vec<BorelKey>>,
    sset: SimplicialSet,
    twist: Vec<Vec<usize>>,
}

impl BorelSpace {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn simplicial_set(&self) -> &SimplicialSet {
        &self.sset
    }

    /// Orbit representatives on level `n`.
    pub fn representatives(&self, n: usize) -> &[BorelKey] {
        &self.keys[n]
    }

    pub fn level_sizes(&self) -> &[usize] {
        self.sset.sizes()
    }

    /// Twisted cochain complex in degrees `0..=n_max`.
    pub fn cochains(&self, a: &GModule, normalized: bool) -> Result<CochainComplex> {
        a.ensure_group(&self.group)?;
        twisted_cochains(&self.sset, &self.twist, a, normalized)
    }
}

/// Vertex tuples of length `len` whose vertex set is a simplex of `x`.
fn spanning_tuples(x: &SimplicialGComplex, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for t in &out {
            for v in 0..x.num_vertices() {
                let mut u = t.clone();
                u.push(v);
                if x.contains(&u) {
                    next.push(u);
                }
            }
        }
        out = next;
    }
    out
}

pub fn borel_space(x: &SimplicialGComplex, n_max: usize) -> Result<BorelSpace> {
    borel_space_with(x, n_max, &Limits::from_env())
}

pub fn borel_space_with(x: &SimplicialGComplex, n_max: usize, limits: &Limits) -> Result<BorelSpace> {
    x.ensure_regular()?;
    let g = x.group();
    let e = g.identity();
    let mut keys: Vec<Vec<BorelKey>> = Vec::new();
    for n in 0..=n_max {
        let xs = spanning_tuples(x, n + 1);
        let size = (g.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX).saturating_mul(xs.len() as u128);
        limits.check(format!("Borel level {n}"), usize::try_from(size).unwrap_or(usize::MAX))?;
        let gs = all_tuples(g.order(), n);
        let mut level = Vec::with_capacity(size as usize);
        for xt in &xs {
            for gt in &gs {
                let mut full = vec![e];
                full.extend(gt);
                level.push((xt.clone(), full));
            }
        }
        keys.push(level);
    }
    check_free(x, &keys)?;
    let act = |h: usize, k: &BorelKey| -> BorelKey {
        (k.0.iter().map(|&v| x.vertex_action(h)[v]).collect(), k.1.iter().map(|&a| g.mul(h, a)).collect())
    };
    let normalize = |k: BorelKey| -> BorelKey {
        let h = g.inv(k.1[0]);
        act(h, &k)
    };
    let sset = SimplicialSet::from_levels(
        &keys,
        |k, i| normalize((remove(&k.0, i), remove(&k.1, i))),
        |k, i| (repeat(&k.0, i), repeat(&k.1, i)),
    )?;
    let twist = keys.iter().enumerate().map(|(n, l)| l.iter().map(|k| if n == 0 { e } else { k.1[1] }).collect()).collect();
    Ok(BorelSpace { group: g.clone(), n_max, keys, sset, twist })
}

/// The diagonal action on `X_ord × EG` is free: no non-identity element
/// fixes a representative.
fn check_free(x: &SimplicialGComplex, keys: &[Vec<BorelKey>]) -> Result<()> {
    let g = x.group();
    for level in keys {
        for (xt, gt) in level {
            for h in g.elements().filter(|&h| h != g.identity()) {
                let fixed = xt.iter().all(|&v| x.vertex_action(h)[v] == v) && gt.iter().all(|&a| g.mul(h, a) == a);
                if fixed {
                    return Err(Error::InvalidSpace(format!("element {h} fixes a simplex of X × EG")));
                }
            }
        }
    }
    Ok(())
}

/// `H^k_G(X; A)` from the normalized twisted cochains of the Borel space.
pub fn borel_cohomology(b: &BorelSpace, a: &GModule, k: usize) -> Result<FGModule> {
    borel_cohomology_with(b, a, k, true)
}

pub fn borel_cohomology_with(b: &BorelSpace, a: &GModule, k: usize, normalized: bool) -> Result<FGModule> {
    if k >= b.n_max {
        return Err(Error::DegreeBeyondSkeleton { k, n_max: b.n_max });
    }
    b.cochains(a, normalized)?.cohomology(k as i64)
}

/// All certified degrees `0..n_max` at once.
pub fn borel_cohomology_all(b: &BorelSpace, a: &GModule) -> Result<Vec<FGModule>> {
    let c = b.cochains(a, true)?;
    (0..b.n_max).map(|k| c.cohomology(k as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcoh::{group_cohomology, ResolutionKind};
    use crate::gspace::cycle_edges;

    #[test]
    fn eg_levels() {
        let s = eg_skeleton(&FiniteGroup::cyclic(2), 2).unwrap();
        assert_eq!(s.sizes(), &[2, 4, 8]);
        s.check_identities().unwrap();
        let t = eg_skeleton(&FiniteGroup::trivial(), 3).unwrap();
        assert_eq!(t.sizes(), &[1, 1, 1, 1]);
        assert_eq!(t.nondegenerate(2), vec![false]);
    }

    #[test]
    fn eg_is_acyclic() {
        let s = eg_skeleton(&FiniteGroup::cyclic(3), 3).unwrap();
        for normalized in [true, false] {
            let c = s.cochain_complex(normalized).unwrap();
            assert_eq!(c.cohomology(0).unwrap(), FGModule::free(1));
            assert_eq!(c.cohomology(1).unwrap(), FGModule::zero());
            assert_eq!(c.cohomology(2).unwrap(), FGModule::zero());
        }
    }

    #[test]
    fn point_gives_group_cohomology() {
        let g = FiniteGroup::cyclic(2);
        let b = borel_space(&SimplicialGComplex::point(g.clone()), 4).unwrap();
        assert_eq!(b.level_sizes(), &[1, 2, 4, 8, 16]);
        b.simplicial_set().check_identities().unwrap();
        let z = GModule::integers(&g);
        let h = borel_cohomology_all(&b, &z).unwrap();
        let oracle: Vec<FGModule> = (0..4).map(|p| group_cohomology(&g, &z, p, ResolutionKind::Periodic).unwrap()).collect();
        assert_eq!(h, oracle);
        let sign = GModule::cyclic_sign(&g).unwrap();
        assert_eq!(borel_cohomology(&b, &sign, 1).unwrap(), FGModule::cyclic(2));
        assert!(matches!(borel_cohomology(&b, &z, 4), Err(Error::DegreeBeyondSkeleton { .. })));
    }

    #[test]
    fn trivial_group_circle() {
        let x = SimplicialGComplex::with_trivial_action(FiniteGroup::trivial(), 3, &cycle_edges(3)).unwrap();
        let b = borel_space(&x, 3).unwrap();
        let z = GModule::integers(x.group());
        assert_eq!(borel_cohomology_all(&b, &z).unwrap(), vec![FGModule::free(1), FGModule::free(1), FGModule::zero()]);
    }

    #[test]
    fn normalized_matches_unnormalized() {
        let g = FiniteGroup::cyclic(2);
        let x = SimplicialGComplex::from_generator_actions(g.clone(), 4, &cycle_edges(4), &[(1, vec![0, 3, 2, 1])]).unwrap();
        let b = borel_space(&x, 3).unwrap();
        let z = GModule::integers(&g);
        for k in 0..3 {
            assert_eq!(borel_cohomology_with(&b, &z, k, true).unwrap(), borel_cohomology_with(&b, &z, k, false).unwrap());
        }
    }

    #[test]
    fn hexagon_level_zero() {
        let g = FiniteGroup::cyclic(2);
        let x = SimplicialGComplex::from_generator_actions(g.clone(), 6, &cycle_edges(6), &[(1, vec![3, 4, 5, 0, 1, 2])]).unwrap();
        let b = borel_space(&x, 2).unwrap();
        assert_eq!(b.level_sizes()[0], 6);
        assert_eq!(borel_cohomology(&b, &GModule::integers(&g), 1).unwrap(), FGModule::free(1));
    }
}
