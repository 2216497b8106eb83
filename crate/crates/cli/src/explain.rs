//! Size preview of a scenario without computing any cohomology.

use std::fmt::Write as _;

use swan_core::groupcoh::ResolutionKind;
use swan_core::gspace::SimplicialGComplex;

use crate::scenario::Scenario;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sizes {
    /// Free RG-ranks of `P_0..=P_{p_max}`.
    pub resolution_ranks: Vec<usize>,
    /// Number of `q`-simplices, `q = 0..=dim`.
    pub simplex_counts: Vec<usize>,
    /// ℤ-generators of `C^q(X; A)` for `q ≤ q_max`.
    pub cochain_ranks: Vec<usize>,
    /// ℤ-generators of the Swan cells, indexed `[p][q]`.
    pub swan_cells: Vec<Vec<usize>>,
    /// ℤ-generators of `Tot^n`.
    pub total_ranks: Vec<usize>,
    /// Simplices of the Borel model at levels `0..=borel_n_max`.
    pub borel_levels: Vec<u128>,
}

pub fn resolution_ranks(order: usize, cyclic: bool, kind: ResolutionKind, p_max: usize) -> Vec<usize> {
    (0..=p_max)
        .map(|p| match kind {
            _ if order == 1 => usize::from(p == 0),
            ResolutionKind::Bar => (order - 1).saturating_pow(p as u32),
            ResolutionKind::Periodic if cyclic => 1,
            ResolutionKind::Periodic => 0,
        })
        .collect()
}

/// Vertex tuples of length `n + 1` spanning a simplex: each `k`-simplex
/// contributes the surjections onto its `k + 1` vertices.
fn spanning_tuples(x: &SimplicialGComplex, n: usize) -> u128 {
    (0..=x.dimension().min(n)).map(|k| x.count(k) as u128 * surjections(n + 1, k + 1)).sum()
}

fn surjections(m: usize, k: usize) -> u128 {
    // Inclusion–exclusion: Σ (−1)^j C(k, j) (k − j)^m.
    let mut total: i128 = 0;
    let mut binom: i128 = 1;
    for j in 0..=k {
        let term = binom * ((k - j) as i128).pow(m as u32);
        total += if j % 2 == 0 { term } else { -term };
        binom = binom * (k - j) as i128 / (j + 1) as i128;
    }
    total as u128
}

pub fn sizes(s: &Scenario) -> Sizes {
    let x = &s.space;
    let gens = s.module.generators();
    let resolution_ranks = resolution_ranks(s.group.order(), s.group.cyclic_generator().is_some(), s.kind, s.p_max());
    let simplex_counts: Vec<usize> = (0..=x.dimension()).map(|q| x.count(q)).collect();
    let cochain_ranks: Vec<usize> =
        (0..=s.q_max()).map(|q| simplex_counts.get(q).copied().unwrap_or(0) * gens).collect();
    let swan_cells: Vec<Vec<usize>> =
        resolution_ranks.iter().map(|&r| cochain_ranks.iter().map(|&c| r * c).collect()).collect();
    let total_ranks = (0..=s.p_max() + s.q_max())
        .map(|n| (0..=n.min(s.p_max())).filter(|&p| n - p <= s.q_max()).map(|p| swan_cells[p][n - p]).sum())
        .collect();
    let order = s.group.order() as u128;
    let borel_levels = (0..=s.borel_n_max())
        .filter(|_| s.borel_n_max() > 0)
        .map(|n| order.saturating_pow(n as u32).saturating_mul(spanning_tuples(x, n)))
        .collect();
    Sizes { resolution_ranks, simplex_counts, cochain_ranks, swan_cells, total_ranks, borel_levels }
}

pub fn explain(s: &Scenario) -> String {
    let z = sizes(s);
    let mut out = String::new();
    let name = if s.file.name.is_empty() { "(unnamed)" } else { &s.file.name };
    let _ = writeln!(out, "scenario {name}");
    let _ = writeln!(out, "group: order {}, generators {:?}", s.group.order(), s.group.generators());
    let _ = writeln!(out, "module: {} generators, underlying group {}", s.module.generators(), s.module.underlying());
    let _ = writeln!(out, "{} resolution RG-ranks (p = 0..={}): {:?}", s.kind, s.p_max(), z.resolution_ranks);
    let _ = writeln!(out, "simplex counts (q = 0..={}): {:?}", s.space.dimension(), z.simplex_counts);
    let _ = writeln!(out, "cochain ranks C^q (q = 0..={}): {:?}", s.q_max(), z.cochain_ranks);
    let _ = writeln!(out, "Swan cell ranks [p][q]:");
    for (p, row) in z.swan_cells.iter().enumerate() {
        let _ = writeln!(out, "  p={p}: {row:?}");
    }
    let _ = writeln!(out, "total complex ranks Tot^n: {:?}", z.total_ranks);
    if z.borel_levels.is_empty() {
        let _ = writeln!(out, "Borel: not requested (borel_n_max = 0)");
    } else {
        let _ = writeln!(out, "Borel level sizes (n = 0..={}): {:?}", s.borel_n_max(), z.borel_levels);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(3, 2), 6);
        assert_eq!(surjections(4, 4), 24);
        assert_eq!(surjections(2, 3), 0);
    }

    #[test]
    fn ranks() {
        assert_eq!(resolution_ranks(3, true, ResolutionKind::Bar, 4), vec![1, 2, 4, 8, 16]);
        assert_eq!(resolution_ranks(1, true, ResolutionKind::Bar, 3), vec![1, 0, 0, 0]);
        assert_eq!(resolution_ranks(4, true, ResolutionKind::Periodic, 2), vec![1, 1, 1]);
    }
}
