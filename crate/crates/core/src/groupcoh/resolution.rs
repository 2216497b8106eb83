use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{IntMatrix, Lattice, Subquotient};

/// Above this ℤ-rank the SNF exactness check is replaced by the contracting
/// homotopy check (bar resolutions only).
const SNF_CERTIFICATE_RANK: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResolutionKind {
    Bar,
    Periodic,
}

impl std::str::FromStr for ResolutionKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bar" => Ok(Self::Bar),
            "periodic" => Ok(Self::Periodic),
            other => Err(format!("unknown resolution kind {other:?} (expected \"bar\" or \"periodic\")")),
        }
    }
}

impl std::fmt::Display for ResolutionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Bar => "bar",
            Self::Periodic => "periodic",
        })
    }
}

/// One group-ring term `coeff · g · e_target`.
pub type RGTerm = (usize, usize, i64);

/// An RG-linear map between free RG-modules, stored by the images of the
/// source generators: `d(e_i) = Σ coeff · g · e_j` over `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RGMap {
    source_rank: usize,
    target_rank: usize,
    images: Vec<Vec<RGTerm>>,
}

impl RGMap {
    pub fn new(source_rank: usize, target_rank: usize, images: Vec<Vec<RGTerm>>) -> Self {
        assert_eq!(images.len(), source_rank);
        let images = images.into_iter().map(normalize_terms).collect();
        Self { source_rank, target_rank, images }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn image(&self, i: usize) -> &[RGTerm] {
        &self.images[i]
    }

    /// Applies the map to a group-ring combination of source generators.
    pub fn apply(&self, group: &FiniteGroup, x: &[RGTerm]) -> Vec<RGTerm> {
        let mut out = Vec::new();
        for &(i, h, c) in x {
            for &(j, g, a) in &self.images[i] {
                out.push((j, group.mul(h, g), c * a));
            }
        }
        normalize_terms(out)
    }

    /// The underlying ℤ-matrix; basis element `h·e_i` has index `i·|G| + h`.
    pub fn z_matrix(&self, group: &FiniteGroup) -> IntMatrix {
        let n = group.order();
        let mut m = IntMatrix::zeros(self.target_rank * n, self.source_rank * n);
        for (i, terms) in self.images.iter().enumerate() {
            for h in group.elements() {
                for &(j, g, c) in terms {
                    *m.get_mut(j * n + group.mul(h, g), i * n + h) += c;
                }
            }
        }
        m
    }
}

fn normalize_terms(terms: Vec<RGTerm>) -> Vec<RGTerm> {
    let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (j, g, c) in terms {
        *acc.entry((j, g)).or_insert(0) += c;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).map(|((j, g), c)| (j, g, c)).collect()
}

/// How exactness of a resolution was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactnessCertificate {
    /// Subquotients `ker d_p / im d_{p+1}` computed and found zero.
    Snf,
    /// An explicit ℤ-linear contraction `s` with `ds + sd = 1` was checked.
    ContractingHomotopy,
    /// Only `P_0` is present (trivial group).
    Trivial,
}

/// A free resolution `P_length → … → P_0 → ℤ` of the trivial module over ℤG.
#[derive(Clone, Debug)]
pub struct Resolution {
    group: FiniteGroup,
    kind: ResolutionKind,
    ranks: Vec<usize>,
    differentials: Vec<RGMap>,
    augmentation: Vec<i64>,
    certificate: ExactnessCertificate,
}

impl Resolution {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kind(&self) -> ResolutionKind {
        self.kind
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Free RG-rank of `P_p`; zero beyond the length.
    pub fn rank(&self, p: usize) -> usize {
        self.ranks.get(p).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_p : P_p → P_{p-1}` for `1 ≤ p ≤ length`.
    pub fn differential(&self, p: usize) -> &RGMap {
        &self.differentials[p - 1]
    }

    /// `ε(e_i)` for the generators of `P_0`.
    pub fn augmentation(&self) -> &[i64] {
        &self.augmentation
    }

    pub fn certificate(&self) -> ExactnessCertificate {
        self.certificate
    }

    fn augmentation_matrix(&self) -> IntMatrix {
        let n = self.group.order();
        let mut m = IntMatrix::zeros(1, self.rank(0) * n);
        for (i, &a) in self.augmentation.iter().enumerate() {
            for h in self.group.elements() {
                m.set(0, i * n + h, BigInt::from(a));
            }
        }
        m
    }

    fn check_squares(&self) -> Result<()> {
        if self.length() >= 1 {
            let d1 = self.differential(1);
            for i in 0..d1.source_rank() {
                let total: i64 = d1.image(i).iter().map(|&(j, _, c)| c * self.augmentation[j]).sum();
                if total != 0 {
                    return Err(Error::InvalidComplex(format!("ε∘d_1 is nonzero on generator {i}")));
                }
            }
        }
        for p in 2..=self.length() {
            let (hi, lo) = (self.differential(p), self.differential(p - 1));
            for i in 0..hi.source_rank() {
                if !lo.apply(&self.group, hi.image(i)).is_empty() {
                    return Err(Error::InvalidComplex(format!("d_{} d_{p} is nonzero on generator {i}", p - 1)));
                }
            }
        }
        Ok(())
    }

    /// Exactness of `P_length → … → P_0 → ℤ → 0` at `ℤ` and at `P_0 … P_{length-1}`.
    fn certify_by_snf(&self) -> Result<()> {
        let eps = self.augmentation_matrix();
        if Lattice::column_span(&eps) != Lattice::full(1) {
            return Err(Error::InvalidComplex("augmentation is not surjective".into()));
        }
        let mut outgoing = eps;
        for p in 0..self.length() {
            let incoming = self.differential(p + 1).z_matrix(&self.group);
            let h = Subquotient::new(Lattice::kernel(&outgoing), &incoming.columns())?;
            if !h.is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "resolution is not exact at P_{p}: homology {}",
                    h.module()
                )));
            }
            outgoing = incoming;
        }
        Ok(())
    }
}

/// Shared bookkeeping for normalized bar tuples `[g_1|…|g_p]`, `g_i ≠ e`.
struct BarTuples<'a> {
    group: &'a FiniteGroup,
    nonidentity: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl<'a> BarTuples<'a> {
    fn new(group: &'a FiniteGroup) -> Self {
        let nonidentity: Vec<usize> = group.elements().filter(|&g| g != group.identity()).collect();
        let mut position = vec![None; group.order()];
        for (k, &g) in nonidentity.iter().enumerate() {
            position[g] = Some(k);
        }
        Self { group, nonidentity, position }
    }

    fn decode(&self, p: usize, mut idx: usize) -> Vec<usize> {
        let b = self.nonidentity.len();
        let mut t = vec![0; p];
        for slot in t.iter_mut().rev() {
            *slot = self.nonidentity[idx % b];
            idx /= b;
        }
        t
    }

    /// Index of a tuple, or `None` if some entry is the identity.
    fn encode(&self, t: &[usize]) -> Option<usize> {
        let b = self.nonidentity.len();
        t.iter().try_fold(0usize, |acc, &g| Some(acc * b + self.position[g]?))
    }

    /// `d[g_1|…|g_p]` in the normalized bar resolution.
    fn boundary(&self, t: &[usize]) -> Vec<RGTerm> {
        let p = t.len();
        let mut out = Vec::new();
        let mut push = |g: usize, tuple: &[usize], c: i64| {
            if let Some(j) = self.encode(tuple) {
                out.push((j, g, c));
            }
        };
        let e = self.group.identity();
        push(t[0], &t[1..], 1);
        for i in 1..p {
            let mut merged = Vec::with_capacity(p - 1);
            merged.extend_from_slice(&t[..i - 1]);
            merged.push(self.group.mul(t[i - 1], t[i]));
            merged.extend_from_slice(&t[i + 1..]);
            push(e, &merged, if i % 2 == 0 { 1 } else { -1 });
        }
        push(e, &t[..p - 1], if p % 2 == 0 { 1 } else { -1 });
        out
    }
}

/// Normalized bar resolution of length `p_max`, limits from the environment.
pub fn bar_resolution(group: &FiniteGroup, p_max: usize) -> Result<Resolution> {
    bar_resolution_with(group, p_max, &Limits::from_env())
}

pub fn bar_resolution_with(group: &FiniteGroup, p_max: usize, limits: &Limits) -> Result<Resolution> {
    let tuples = BarTuples::new(group);
    let b = tuples.nonidentity.len();
    let mut ranks = Vec::with_capacity(p_max + 1);
    for p in 0..=p_max {
        let r = (b as u128).checked_pow(p as u32).unwrap_or(u128::MAX);
        let z_rank = r.saturating_mul(group.order() as u128);
        limits.check(format!("bar resolution P_{p} over ℤ"), usize::try_from(z_rank).unwrap_or(usize::MAX))?;
        ranks.push(r as usize);
    }
    let mut differentials = Vec::with_capacity(p_max);
    for p in 1..=p_max {
        if ranks[p] == 0 {
            differentials.push(RGMap::new(0, ranks[p - 1], Vec::new()));
            continue;
        }
        let images = (0..ranks[p]).map(|i| tuples.boundary(&tuples.decode(p, i))).collect();
        differentials.push(RGMap::new(ranks[p], ranks[p - 1], images));
    }
    let mut res = Resolution {
        group: group.clone(),
        kind: ResolutionKind::Bar,
        ranks,
        differentials,
        augmentation: vec![1],
        certificate: ExactnessCertificate::Trivial,
    };
    res.check_squares()?;
    res.certificate = if group.order() == 1 {
        ExactnessCertificate::Trivial
    } else if max_z_rank(&res) <= SNF_CERTIFICATE_RANK {
        res.certify_by_snf()?;
        ExactnessCertificate::Snf
    } else {
        certify_bar_by_homotopy(&res, &tuples)?;
        ExactnessCertificate::ContractingHomotopy
    };
    Ok(res)
}

fn max_z_rank(res: &Resolution) -> usize {
    res.ranks.iter().map(|r| r * res.group.order()).max().unwrap_or(0)
}

/// Checks `d s + s d = 1` for `s(h[g_1|…|g_p]) = [h|g_1|…|g_p]` (zero when
/// `h = e`), and `ε s_{-1} = 1`, `d_1 s_0 + s_{-1} ε = 1` with `s_{-1}(1) = []`.
fn certify_bar_by_homotopy(res: &Resolution, tuples: &BarTuples<'_>) -> Result<()> {
    let g = &res.group;
    let e = g.identity();
    let contract = |p: usize, x: &[RGTerm]| -> Vec<RGTerm> {
        let mut out = Vec::new();
        for &(i, h, c) in x {
            let mut t = vec![h];
            t.extend(tuples.decode(p, i));
            if let Some(j) = tuples.encode(&t) {
                out.push((j, e, c));
            }
        }
        normalize_terms(out)
    };
    for p in 0..res.length() {
        for i in 0..res.rank(p) {
            for h in g.elements() {
                let x = vec![(i, h, 1)];
                let ds = res.differential(p + 1).apply(g, &contract(p, &x));
                let sd = if p == 0 {
                    // s_{-1} ε x = []
                    vec![(0, e, res.augmentation[i])]
                } else {
                    contract(p - 1, &res.differential(p).apply(g, &x))
                };
                let mut total = ds;
                total.extend(sd);
                total.push((i, h, -1));
                if !normalize_terms(total).is_empty() {
                    return Err(Error::InvalidComplex(format!(
                        "contracting homotopy fails on P_{p} generator {i} translated by {h}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Periodic resolution of `ℤ/n` (`n ≥ 2`): every `P_p = ℤG`, with `d_p = t − 1`
/// for odd `p` and the norm `1 + t + … + t^{n-1}` for even `p`.
pub fn periodic_resolution(n: usize, p_max: usize) -> Result<Resolution> {
    if n < 2 {
        return Err(Error::InvalidGroup(format!("periodic resolution needs order at least 2, got {n}")));
    }
    periodic_resolution_for(&FiniteGroup::cyclic(n), p_max)
}

/// Periodic resolution of a cyclic group given by its table. The trivial
/// group gets the resolution `ℤ` concentrated in degree 0.
pub fn periodic_resolution_for(group: &FiniteGroup, p_max: usize) -> Result<Resolution> {
    let t = group
        .cyclic_generator()
        .ok_or_else(|| Error::InvalidGroup("periodic resolution needs a cyclic group".into()))?;
    let e = group.identity();
    if group.order() == 1 {
        return Ok(Resolution {
            group: group.clone(),
            kind: ResolutionKind::Periodic,
            ranks: vec![1],
            differentials: Vec::new(),
            augmentation: vec![1],
            certificate: ExactnessCertificate::Trivial,
        });
    }
    let minus = RGMap::new(1, 1, vec![vec![(0, t, 1), (0, e, -1)]]);
    let norm = RGMap::new(1, 1, vec![group.elements().map(|g| (0, g, 1)).collect()]);
    let differentials = (1..=p_max).map(|p| if p % 2 == 1 { minus.clone() } else { norm.clone() }).collect();
    let res = Resolution {
        group: group.clone(),
        kind: ResolutionKind::Periodic,
        ranks: vec![1; p_max + 1],
        differentials,
        augmentation: vec![1],
        certificate: ExactnessCertificate::Snf,
    };
    res.check_squares()?;
    res.certify_by_snf()?;
    Ok(res)
}

/// Resolution of the requested kind and length.
pub fn resolution(group: &FiniteGroup, kind: ResolutionKind, p_max: usize, limits: &Limits) -> Result<Resolution> {
    match kind {
        ResolutionKind::Bar => bar_resolution_with(group, p_max, limits),
        ResolutionKind::Periodic => periodic_resolution_for(group, p_max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_ranks() {
        let r = bar_resolution(&FiniteGroup::trivial(), 3).unwrap();
        assert_eq!(r.ranks(), &[1, 0, 0, 0]);
        let r = bar_resolution(&FiniteGroup::cyclic(2), 3).unwrap();
        assert_eq!(r.ranks(), &[1, 1, 1, 1]);
        assert_eq!(r.certificate(), ExactnessCertificate::Snf);
        let r = bar_resolution(&FiniteGroup::cyclic(3), 2).unwrap();
        assert_eq!(r.ranks(), &[1, 2, 4]);
    }

    #[test]
    fn homotopy_and_snf_certificates_agree() {
        let g = FiniteGroup::symmetric(3);
        let r = bar_resolution_with(&g, 3, &Limits::default()).unwrap();
        r.certify_by_snf().unwrap();
        let t = BarTuples::new(&g);
        certify_bar_by_homotopy(&r, &t).unwrap();
    }

    #[test]
    fn large_bar_uses_homotopy() {
        let r = bar_resolution(&FiniteGroup::cyclic(4), 5).unwrap();
        assert_eq!(r.certificate(), ExactnessCertificate::ContractingHomotopy);
    }

    #[test]
    fn resource_limit() {
        let err = bar_resolution_with(&FiniteGroup::cyclic(5), 6, &Limits::new(1000)).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn periodic_differentials() {
        let r = periodic_resolution(3, 4).unwrap();
        assert_eq!(r.differential(1).image(0), &[(0, 0, -1), (0, 1, 1)]);
        assert_eq!(r.differential(2).image(0), &[(0, 0, 1), (0, 1, 1), (0, 2, 1)]);
        assert_eq!(r.differential(3), r.differential(1));
        assert_eq!(r.differential(4), r.differential(2));
        assert!(periodic_resolution(1, 2).is_err());
    }

    #[test]
    fn broken_differential_is_caught() {
        let mut r = periodic_resolution(2, 3).unwrap();
        // t + 1 twice in a row is not exact
        r.differentials[2] = r.differentials[1].clone();
        assert!(r.check_squares().is_err());
    }
}
