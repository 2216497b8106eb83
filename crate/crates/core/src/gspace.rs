//! Finite simplicial complexes with a simplicial group action, their
//! equivariant cochains and cohomology G-modules.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::complexes::CochainComplex;
use crate::error::{Error, Result};
use crate::groupcoh::{FiniteGroup, GModule};
use crate::linalg::{IntMatrix, Presentation};

pub type Simplex = Vec<usize>;

/// A finite simplicial complex on vertices `0..num_vertices` with a left
/// action of a finite group by vertex permutations.
///
/// Simplices are sorted vertex lists; within each dimension they are kept in
/// lexicographic order, which also fixes their orientation.
#[derive(Clone, Debug)]
pub struct SimplicialGComplex {
    group: FiniteGroup,
    num_vertices: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    vertex_action: Vec<Vec<usize>>,
}

impl SimplicialGComplex {
    /// `vertex_action[g][v]` is the image of `v` under `g`. The simplex set
    /// is the face closure of `simplices` plus every vertex.
    pub fn new(
        group: FiniteGroup,
        num_vertices: usize,
        simplices: &[Simplex],
        vertex_action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mut closure: Vec<BTreeSet<Simplex>> = Vec::new();
        let mut add = |s: Simplex| {
            let d = s.len() - 1;
            if closure.len() <= d {
                closure.resize_with(d + 1, BTreeSet::new);
            }
            closure[d].insert(s);
        };
        for v in 0..num_vertices {
            add(vec![v]);
        }
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::InvalidSpace("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSpace(format!("simplex {s:?} repeats a vertex")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::InvalidSpace(format!("simplex {s:?} uses unknown vertex {v}")));
            }
            for mask in 1u64..(1u64 << s.len()) {
                add(s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        let simplices: Vec<Vec<Simplex>> = closure.into_iter().map(|l| l.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let x = Self { group, num_vertices, simplices, index, vertex_action };
        x.check_action()?;
        Ok(x)
    }

    /// Extends vertex permutations given for the group's generators.
    pub fn from_generator_actions(
        group: FiniteGroup,
        num_vertices: usize,
        simplices: &[Simplex],
        generator_actions: &[(usize, Vec<usize>)],
    ) -> Result<Self> {
        for &s in group.generators() {
            if !generator_actions.iter().any(|(g, _)| *g == s) {
                return Err(Error::InvalidSpace(format!("no vertex action given for generator {s}")));
            }
        }
        for (g, p) in generator_actions {
            check_permutation(p, num_vertices).map_err(|m| Error::InvalidSpace(format!("generator {g}: {m}")))?;
        }
        let lookup = |s: usize| generator_actions.iter().find(|(g, _)| *g == s).unwrap().1.clone();
        let action = group.extend_from_generators((0..num_vertices).collect(), lookup, |a: &Vec<usize>, b| {
            b.iter().map(|&v| a[v]).collect()
        })?;
        Self::new(group, num_vertices, simplices, action)
    }

    /// The complex with the trivial action.
    pub fn with_trivial_action(group: FiniteGroup, num_vertices: usize, simplices: &[Simplex]) -> Result<Self> {
        let action = vec![(0..num_vertices).collect(); group.order()];
        Self::new(group, num_vertices, simplices, action)
    }

    pub fn point(group: FiniteGroup) -> Self {
        Self::with_trivial_action(group, 1, &[]).expect("a point is a valid complex")
    }

    fn check_action(&self) -> Result<()> {
        let g = &self.group;
        if self.vertex_action.len() != g.order() {
            return Err(Error::InvalidSpace(format!(
                "need a vertex permutation per group element ({}), got {}",
                g.order(),
                self.vertex_action.len()
            )));
        }
        for (a, p) in self.vertex_action.iter().enumerate() {
            check_permutation(p, self.num_vertices)
                .map_err(|m| Error::InvalidSpace(format!("element {a}: {m}")))?;
        }
        if self.vertex_action[g.identity()].iter().enumerate().any(|(v, &w)| v != w) {
            return Err(Error::InvalidSpace("identity does not act trivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                if (0..self.num_vertices).any(|v| self.vertex_action[a][self.vertex_action[b][v]] != self.vertex_action[ab][v]) {
                    return Err(Error::InvalidSpace(format!("vertex action is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        for level in &self.simplices {
            for s in level {
                for a in g.elements() {
                    let t = self.act(a, s);
                    if !self.index[s.len() - 1].contains_key(&t) {
                        return Err(Error::InvalidSpace(format!(
                            "element {a} maps simplex {s:?} to {t:?}, which is not a simplex"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Simplices of dimension `q` in lexicographic order.
    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.simplices.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let mut t = s.to_vec();
        t.sort_unstable();
        t.dedup();
        !t.is_empty() && self.simplex_index(&t).is_some()
    }

    pub fn vertex_action(&self, g: usize) -> &[usize] {
        &self.vertex_action[g]
    }

    /// `g·s` as a sorted simplex.
    pub fn act(&self, g: usize, s: &[usize]) -> Simplex {
        let mut t: Simplex = s.iter().map(|&v| self.vertex_action[g][v]).collect();
        t.sort_unstable();
        t
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(q, l)| if q % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// A group element mapping some simplex to itself without fixing it
    /// pointwise, if any.
    pub fn irregularity(&self) -> Option<(usize, Simplex)> {
        for level in &self.simplices {
            for s in level {
                for g in self.group.elements() {
                    if self.act(g, s) == *s && s.iter().any(|&v| self.vertex_action[g][v] != v) {
                        return Some((g, s.clone()));
                    }
                }
            }
        }
        None
    }

    pub fn is_regular(&self) -> bool {
        self.irregularity().is_none()
    }

    pub fn is_free(&self) -> bool {
        let e = self.group.identity();
        self.group
            .elements()
            .filter(|&g| g != e)
            .all(|g| (0..self.num_vertices).all(|v| self.vertex_action[g][v] != v))
    }

    pub(crate) fn ensure_regular(&self) -> Result<()> {
        match self.irregularity() {
            None => Ok(()),
            Some((g, s)) => Err(Error::IrregularAction(format!(
                "element {g} maps simplex {s:?} to itself without fixing its vertices"
            ))),
        }
    }

    /// Barycentric subdivision with the induced action. New vertices are the
    /// old simplices ordered by (dimension, lexicographic).
    pub fn barycentric_subdivision(&self) -> Result<Self> {
        let mut ids: HashMap<Simplex, usize> = HashMap::new();
        for level in &self.simplices {
            for s in level {
                let k = ids.len();
                ids.insert(s.clone(), k);
            }
        }
        let mut flags = Vec::new();
        for level in &self.simplices {
            for s in level {
                if !self.is_face_of_larger(s) {
                    full_flags(s, &ids, &mut Vec::new(), &mut flags);
                }
            }
        }
        let mut ordered: Vec<Simplex> = vec![Vec::new(); ids.len()];
        for (s, &i) in &ids {
            ordered[i] = s.clone();
        }
        let action = self
            .group
            .elements()
            .map(|g| ordered.iter().map(|s| ids[&self.act(g, s)]).collect())
            .collect();
        Self::new(self.group.clone(), ids.len(), &flags, action)
    }

    fn is_face_of_larger(&self, s: &[usize]) -> bool {
        let d = s.len() - 1;
        self.simplices(d + 1).iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok()))
    }

    /// Relabels vertex `v` as `perm[v]`, conjugating the action.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.num_vertices).map_err(Error::InvalidSpace)?;
        let mut inv = vec![0; perm.len()];
        for (v, &w) in perm.iter().enumerate() {
            inv[w] = v;
        }
        let all: Vec<Simplex> = self.simplices.iter().flatten().map(|s| s.iter().map(|&v| perm[v]).collect()).collect();
        let action = self
            .group
            .elements()
            .map(|g| (0..self.num_vertices).map(|w| perm[self.vertex_action[g][inv[w]]]).collect())
            .collect();
        Self::new(self.group.clone(), self.num_vertices, &all, action)
    }

    /// The orbit complex `X/G` with trivial action of the trivial group.
    ///
    /// Only meaningful when the quotient is again simplicial; an error is
    /// returned when two orbits of simplices collapse onto one vertex set or
    /// a simplex meets an orbit twice.
    pub fn orbit_complex(&self) -> Result<SimplicialGComplex> {
        let mut orbit_of = vec![usize::MAX; self.num_vertices];
        let mut n = 0;
        for v in 0..self.num_vertices {
            if orbit_of[v] == usize::MAX {
                for g in self.group.elements() {
                    orbit_of[self.vertex_action[g][v]] = n;
                }
                n += 1;
            }
        }
        let mut images = Vec::new();
        for (q, level) in self.simplices.iter().enumerate() {
            let mut seen: BTreeSet<Simplex> = BTreeSet::new();
            let mut orbits: BTreeSet<Simplex> = BTreeSet::new();
            for s in level {
                let mut img: Simplex = s.iter().map(|&v| orbit_of[v]).collect();
                img.sort_unstable();
                img.dedup();
                if img.len() != q + 1 {
                    return Err(Error::InvalidSpace(format!("simplex {s:?} meets a vertex orbit twice")));
                }
                let rep = self.group.elements().map(|g| self.act(g, s)).min().unwrap();
                orbits.insert(rep);
                seen.insert(img);
            }
            if seen.len() != orbits.len() {
                return Err(Error::InvalidSpace(format!("{q}-simplex orbits are not determined by their vertices")));
            }
            images.extend(seen);
        }
        SimplicialGComplex::with_trivial_action(FiniteGroup::trivial(), n, &images)
    }
}

fn check_permutation(p: &[usize], n: usize) -> std::result::Result<(), String> {
    if p.len() != n {
        return Err(format!("permutation has {} entries, expected {n}", p.len()));
    }
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(format!("{p:?} is not a permutation of 0..{n}"));
        }
    }
    Ok(())
}

/// All maximal flags `s ⊃ s' ⊃ … ⊃ vertex` below `s`, as subdivision simplices.
fn full_flags(s: &[usize], ids: &HashMap<Simplex, usize>, chain: &mut Vec<usize>, out: &mut Vec<Simplex>) {
    chain.push(ids[s]);
    if s.len() == 1 {
        out.push(chain.clone());
    } else {
        for i in 0..s.len() {
            let mut face = s.to_vec();
            face.remove(i);
            full_flags(&face, ids, chain, out);
        }
    }
    chain.pop();
}

/// Barycentric subdivision repeated until the action is regular (at most twice).
pub fn regularize(x: &SimplicialGComplex) -> Result<SimplicialGComplex> {
    let once = x.barycentric_subdivision()?;
    if once.is_regular() {
        return Ok(once);
    }
    let twice = once.barycentric_subdivision()?;
    twice.ensure_regular()?;
    Ok(twice)
}

/// Maximal simplices of the boundary of an `n`-gon on vertices `0..n`.
pub fn cycle_edges(n: usize) -> Vec<Simplex> {
    (0..n).map(|i| vec![i, (i + 1) % n]).collect()
}

/// `C^•(X; A)` together with the G-action in every degree.
#[derive(Clone, Debug)]
pub struct EquivariantCochainComplex {
    group: FiniteGroup,
    complex: CochainComplex,
    actions: Vec<Vec<IntMatrix>>,
}

impl EquivariantCochainComplex {
    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn max_degree(&self) -> usize {
        self.actions.len() - 1
    }

    /// Action of `g` on `C^q`.
    pub fn action(&self, q: usize, g: usize) -> &IntMatrix {
        &self.actions[q][g]
    }

    /// `C^q` as a G-module.
    pub fn gmodule(&self, q: usize) -> Result<GModule> {
        GModule::new(self.group.clone(), self.complex.module(q as i64), self.actions[q].clone())
    }
}

/// Cochains in degrees `0..=min(q_max, dim X)` with `(g·c)(σ) = g·c(g⁻¹σ)`,
/// including the orientation sign of `g⁻¹` on `σ`.
pub fn cochains(x: &SimplicialGComplex, a: &GModule, q_max: usize) -> Result<EquivariantCochainComplex> {
    a.ensure_group(&x.group)?;
    x.ensure_regular()?;
    let top = q_max.min(x.dimension());
    let n = a.generators();
    let modules: Vec<Presentation> = (0..=top).map(|q| a.presentation().power(x.count(q))).collect();
    let mut diffs = Vec::with_capacity(top);
    for q in 0..top {
        let mut d = IntMatrix::zeros(x.count(q + 1) * n, x.count(q) * n);
        for (t, tau) in x.simplices(q + 1).iter().enumerate() {
            for i in 0..tau.len() {
                let mut face = tau.clone();
                face.remove(i);
                let f = x.simplex_index(&face).unwrap();
                let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                d.add_block(t * n, f * n, &IntMatrix::identity(n), &sign);
            }
        }
        diffs.push(d);
    }
    let complex = CochainComplex::new(0, modules, diffs)?;
    let mut actions = Vec::with_capacity(top + 1);
    for q in 0..=top {
        let per_g = x
            .group
            .elements()
            .map(|g| {
                let ginv = x.group.inv(g);
                let mut m = IntMatrix::zeros(x.count(q) * n, x.count(q) * n);
                for (s, sigma) in x.simplices(q).iter().enumerate() {
                    let moved: Vec<usize> = sigma.iter().map(|&v| x.vertex_action[ginv][v]).collect();
                    let (sorted, sign) = sort_with_sign(&moved);
                    let src = x.simplex_index(&sorted).unwrap();
                    m.add_block(s * n, src * n, a.action(g), &BigInt::from(sign));
                }
                m
            })
            .collect::<Vec<_>>();
        actions.push(per_g);
    }
    let c = EquivariantCochainComplex { group: x.group.clone(), complex, actions };
    check_equivariance(&c)?;
    Ok(c)
}

fn check_equivariance(c: &EquivariantCochainComplex) -> Result<()> {
    for q in 0..c.max_degree() {
        let d = c.complex.differential(q as i64);
        for g in c.group.elements() {
            let lhs = &d * c.action(q, g);
            let rhs = c.action(q + 1, g) * &d;
            if !c.complex.module(q as i64 + 1).annihilates(&(&lhs - &rhs)) {
                return Err(Error::InvalidSpace(format!("action of {g} does not commute with d in degree {q}")));
            }
        }
    }
    for q in 0..=c.max_degree() {
        c.gmodule(q)?;
    }
    Ok(())
}

/// Sorts a list of distinct vertices, returning the permutation sign.
pub(crate) fn sort_with_sign(v: &[usize]) -> (Vec<usize>, i64) {
    let mut s = v.to_vec();
    let mut sign = 1;
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (s, sign)
}

/// `H^q(X; A)` with the induced G-action.
pub fn cohomology_gmodule(x: &SimplicialGComplex, a: &GModule, q: usize) -> Result<GModule> {
    let c = cochains(x, a, q + 1)?;
    if q > c.max_degree() {
        return Ok(GModule::trivial(x.group.clone(), Presentation::free(0)));
    }
    let h = c.complex.cohomology_group(q as i64)?;
    GModule::from_subquotient(&x.group, &h, &c.actions[q])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcoh::invariants;
    use crate::linalg::FGModule;

    fn rotation(n: usize, k: usize) -> Vec<usize> {
        (0..n).map(|v| (v + k) % n).collect()
    }

    pub(crate) fn hexagon_antipodal() -> SimplicialGComplex {
        SimplicialGComplex::from_generator_actions(FiniteGroup::cyclic(2), 6, &cycle_edges(6), &[(1, rotation(6, 3))])
            .unwrap()
    }

    #[test]
    fn construction_and_counts() {
        let x = hexagon_antipodal();
        assert_eq!((x.count(0), x.count(1)), (6, 6));
        assert!(x.is_regular() && x.is_free());
        assert_eq!(x.euler_characteristic(), 0);
        let bad = SimplicialGComplex::from_generator_actions(FiniteGroup::cyclic(2), 3, &[vec![0, 1]], &[(1, vec![2, 1, 0])]);
        assert!(matches!(bad, Err(Error::InvalidSpace(_))));
    }

    #[test]
    fn subdivision_counts() {
        let tri = SimplicialGComplex::with_trivial_action(FiniteGroup::trivial(), 3, &cycle_edges(3)).unwrap();
        let sd = regularize(&tri).unwrap();
        assert_eq!((sd.count(0), sd.count(1)), (6, 6));
        let disk = SimplicialGComplex::with_trivial_action(FiniteGroup::trivial(), 3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(disk.barycentric_subdivision().unwrap().count(2), 6);
    }

    #[test]
    fn edge_flip_becomes_regular() {
        let x = SimplicialGComplex::from_generator_actions(FiniteGroup::cyclic(2), 2, &[vec![0, 1]], &[(1, vec![1, 0])])
            .unwrap();
        assert!(!x.is_regular());
        assert!(matches!(cochains(&x, &GModule::integers(x.group()), 1), Err(Error::IrregularAction(_))));
        let r = regularize(&x).unwrap();
        assert!(r.is_regular());
        assert_eq!((r.count(0), r.count(1)), (3, 2));
        // the midpoint is vertex 2 and is fixed
        assert_eq!(r.vertex_action(1)[2], 2);
    }

    #[test]
    fn circle_cochains() {
        let tri = SimplicialGComplex::with_trivial_action(FiniteGroup::trivial(), 3, &cycle_edges(3)).unwrap();
        let c = cochains(&tri, &GModule::integers(tri.group()), 3).unwrap();
        assert_eq!(c.complex().differential(0), IntMatrix::from_rows(&[[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]));
    }

    #[test]
    fn hexagon_actions_are_permutations() {
        let x = hexagon_antipodal();
        let c = cochains(&x, &GModule::integers(x.group()), 1).unwrap();
        for q in 0..2 {
            let a = c.action(q, 1);
            assert!((&*a * a).is_identity());
            assert!(a.entries().iter().all(|v| v.magnitude() <= &1u32.into()));
        }
    }

    #[test]
    fn induced_actions_on_h1() {
        let hex = SimplicialGComplex::from_generator_actions(FiniteGroup::cyclic(6), 6, &cycle_edges(6), &[(1, rotation(6, 1))])
            .unwrap();
        let h1 = cohomology_gmodule(&hex, &GModule::integers(hex.group()), 1).unwrap();
        assert_eq!(h1.underlying(), FGModule::free(1));
        assert!(h1.is_trivial_action());

        let square = SimplicialGComplex::from_generator_actions(FiniteGroup::cyclic(2), 4, &cycle_edges(4), &[(1, vec![0, 3, 2, 1])])
            .unwrap();
        let h1 = cohomology_gmodule(&square, &GModule::integers(square.group()), 1).unwrap();
        assert_eq!(h1.action(1), &IntMatrix::from_rows(&[[-1]]));
        let h0 = cohomology_gmodule(&square, &GModule::integers(square.group()), 0).unwrap();
        assert_eq!(invariants(&h0).unwrap(), FGModule::free(1));
    }

    #[test]
    fn point_cohomology_is_coefficients() {
        let g = FiniteGroup::cyclic(2);
        let a = GModule::cyclic_sign(&g).unwrap();
        let h0 = cohomology_gmodule(&SimplicialGComplex::point(g.clone()), &a, 0).unwrap();
        assert_eq!(h0.action(1), a.action(1));
        let h2 = cohomology_gmodule(&SimplicialGComplex::point(g), &a, 2).unwrap();
        assert_eq!(h2.underlying(), FGModule::zero());
    }

    #[test]
    fn quotient_of_antipodal_hexagon() {
        let q = hexagon_antipodal().orbit_complex().unwrap();
        assert_eq!((q.count(0), q.count(1)), (3, 3));
        let square = SimplicialGComplex::from_generator_actions(FiniteGroup::cyclic(2), 4, &cycle_edges(4), &[(1, rotation(4, 2))])
            .unwrap();
        assert!(square.orbit_complex().is_err());
    }

    #[test]
    fn relabeling_preserves_structure() {
        let x = hexagon_antipodal();
        let y = x.relabel(&[3, 0, 5, 1, 4, 2]).unwrap();
        let a = GModule::integers(x.group());
        for q in 0..2 {
            assert_eq!(
                cohomology_gmodule(&x, &a, q).unwrap().underlying(),
                cohomology_gmodule(&y, &a, q).unwrap().underlying()
            );
        }
    }
}
