//! Seeded generators for property tests: small double complexes built from
//! elementary pieces, and rational bichains with box covers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bisubdiv::{AffineBisimplex, BiChain, ConvexCover};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::spectral::DoubleComplex;

#[derive(Clone, Copy, Debug)]
pub struct DoubleComplexShape {
    pub max_p: usize,
    pub max_q: usize,
    pub max_rank: usize,
    pub max_entry: i64,
    pub max_pieces: usize,
}

impl Default for DoubleComplexShape {
    fn default() -> Self {
        Self { max_p: 4, max_q: 4, max_rank: 4, max_entry: 3, max_pieces: 6 }
    }
}

type Gen = (usize, usize, usize);

struct Pieces {
    ranks: Vec<Vec<usize>>,
    /// `(source, target, coefficient)` of the total differential.
    arrows: Vec<(Gen, Gen, i64)>,
}

impl Pieces {
    fn fits(&self, cells: &[(usize, usize)], cap: usize) -> bool {
        cells.iter().all(|&(p, q)| self.ranks[p][q] + cells.iter().filter(|&&c| c == (p, q)).count() <= cap)
    }

    fn add(&mut self, p: usize, q: usize) -> Gen {
        self.ranks[p][q] += 1;
        (p, q, self.ranks[p][q] - 1)
    }
}

fn nonzero<R: Rng>(rng: &mut R, max: i64) -> i64 {
    let c = rng.gen_range(1..=max);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// Adds one elementary piece: a lone generator, a vertical or horizontal
/// pair, a commuting square, or a zig-zag `x_i → y_i` (vertical),
/// `x_i → y_{i+1}` (horizontal) whose cancellations produce higher `d_r`.
fn add_piece<R: Rng>(rng: &mut R, pieces: &mut Pieces, shape: &DoubleComplexShape, p_max: usize, q_max: usize) {
    let (p, q) = (rng.gen_range(0..=p_max), rng.gen_range(0..=q_max));
    let cap = shape.max_rank;
    match rng.gen_range(0..6) {
        0 => {
            if pieces.fits(&[(p, q)], cap) {
                pieces.add(p, q);
            }
        }
        1 if q < q_max => {
            if pieces.fits(&[(p, q), (p, q + 1)], cap) {
                let (x, y) = (pieces.add(p, q), pieces.add(p, q + 1));
                pieces.arrows.push((x, y, nonzero(rng, shape.max_entry)));
            }
        }
        2 if p < p_max => {
            if pieces.fits(&[(p, q), (p + 1, q)], cap) {
                let (x, y) = (pieces.add(p, q), pieces.add(p + 1, q));
                pieces.arrows.push((x, y, nonzero(rng, shape.max_entry)));
            }
        }
        3 if p < p_max && q < q_max => {
            if pieces.fits(&[(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)], cap) {
                let x = pieces.add(p, q);
                let (y1, y2, z) = (pieces.add(p + 1, q), pieces.add(p, q + 1), pieces.add(p + 1, q + 1));
                let (a1, a2) = (nonzero(rng, 1), nonzero(rng, 1));
                let a = nonzero(rng, 2);
                pieces.arrows.extend([(x, y1, a1), (x, y2, a2), (y1, z, a), (y2, z, -a1 * a * a2)]);
            }
        }
        4 | 5 => {
            let len = rng.gen_range(1..=2);
            if len + 1 > p_max || len + 1 > q_max {
                return;
            }
            let (p, q) = (rng.gen_range(0..=p_max - len - 1), rng.gen_range(len..q_max));
            let mut cells: Vec<(usize, usize)> = (0..=len).map(|i| (p + i, q - i)).collect();
            cells.extend((0..=len + 1).map(|i| (p + i, q + 1 - i)));
            if !pieces.fits(&cells, cap) {
                return;
            }
            let xs: Vec<Gen> = (0..=len).map(|i| pieces.add(p + i, q - i)).collect();
            let ys: Vec<Gen> = (0..=len + 1).map(|i| pieces.add(p + i, q + 1 - i)).collect();
            for (i, &x) in xs.iter().enumerate() {
                // Often leave the first vertical arrow out and make the later
                // ones invertible, so that the horizontal arrows compose
                // into a differential of higher page.
                let v = if i == 0 && rng.gen_bool(0.5) {
                    0
                } else if i > 0 && rng.gen_bool(0.6) {
                    nonzero(rng, 1)
                } else {
                    rng.gen_range(-2..=2)
                };
                let h = rng.gen_range(-2..=2);
                if v != 0 {
                    pieces.arrows.push((x, ys[i], v));
                }
                if h != 0 {
                    pieces.arrows.push((x, ys[i + 1], h));
                }
            }
        }
        _ => {}
    }
}

/// Unimodular `U` and `U⁻¹` as a product of up to two elementary matrices.
fn unimodular<R: Rng>(rng: &mut R, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.3) {
            let m = IntMatrix::scalar(1, &-BigInt::one());
            return (m.clone(), m);
        }
        return (u, inv);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let (i, j) = (idx[0], idx[1]);
        let s = BigInt::from(nonzero(rng, 1));
        let mut e = IntMatrix::identity(n);
        e.set(i, j, s.clone());
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, -s);
        u = &e * &u;
        inv = &inv * &e_inv;
    }
    (u, inv)
}

/// A first-quadrant double complex with cell ranks ≤ `max_rank` and
/// differential entries in `[−max_entry, max_entry]`; `d² = 0` and
/// anticommutation hold by construction and are re-validated by the builder.
pub fn random_double_complex<R: Rng>(rng: &mut R, shape: &DoubleComplexShape) -> Result<DoubleComplex> {
    for _ in 0..1000 {
        if let Some(d) = try_double_complex(rng, shape)? {
            return Ok(d);
        }
    }
    Err(Error::InvalidComplex("no admissible random double complex after 1000 attempts".into()))
}

fn try_double_complex<R: Rng>(rng: &mut R, shape: &DoubleComplexShape) -> Result<Option<DoubleComplex>> {
    let p_max = rng.gen_range(1..=shape.max_p);
    let q_max = rng.gen_range(1..=shape.max_q);
    let mut pieces = Pieces { ranks: vec![vec![0; q_max + 1]; p_max + 1], arrows: Vec::new() };
    for _ in 0..rng.gen_range(1..=shape.max_pieces) {
        add_piece(rng, &mut pieces, shape, p_max, q_max);
    }
    let ranks = pieces.ranks.clone();
    let mut h: Vec<Vec<IntMatrix>> = (0..p_max)
        .map(|p| (0..=q_max).map(|q| IntMatrix::zeros(ranks[p + 1][q], ranks[p][q])).collect())
        .collect();
    let mut v: Vec<Vec<IntMatrix>> = (0..=p_max)
        .map(|p| (0..q_max).map(|q| IntMatrix::zeros(ranks[p][q + 1], ranks[p][q])).collect())
        .collect();
    for &((p, q, i), (p2, q2, j), c) in &pieces.arrows {
        let m = if p2 == p + 1 { &mut h[p][q] } else { &mut v[p][q] };
        debug_assert!((p2 == p + 1 && q2 == q) || (p2 == p && q2 == q + 1));
        *m.get_mut(j, i) += c;
    }
    let bases: Vec<Vec<(IntMatrix, IntMatrix)>> =
        ranks.iter().map(|col| col.iter().map(|&n| unimodular(rng, n)).collect()).collect();
    let conj = |m: &IntMatrix, s: (usize, usize), t: (usize, usize)| &(&bases[t.0][t.1].0 * m) * &bases[s.0][s.1].1;
    for p in 0..p_max {
        for q in 0..=q_max {
            h[p][q] = conj(&h[p][q], (p, q), (p + 1, q));
        }
    }
    for p in 0..=p_max {
        for q in 0..q_max {
            v[p][q] = conj(&v[p][q], (p, q), (p, q + 1));
        }
    }
    let bound = BigInt::from(shape.max_entry);
    if h.iter().chain(&v).flatten().any(|m| m.max_abs_entry() > bound) {
        return Ok(None);
    }
    let sign = |p: usize| BigInt::from(if p % 2 == 0 { 1 } else { -1 });
    DoubleComplex::free(&ranks, |p, q| Ok(h[p][q].clone()), |p, q| Ok(v[p][q].scale(&sign(p)))).map(Some)
}

fn rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into())
}

fn point<R: Rng>(rng: &mut R, dim: usize) -> Vec<BigRational> {
    (0..dim).map(|_| rational(rng)).collect()
}

pub fn random_bisimplex<R: Rng>(rng: &mut R, p: usize, q: usize, a: usize, b: usize) -> AffineBisimplex {
    let base = (0..=p).map(|_| point(rng, a)).collect();
    let grid = (0..=p).map(|_| (0..=q).map(|_| point(rng, b)).collect()).collect();
    AffineBisimplex::new(base, grid).expect("shapes are consistent by construction")
}

/// One or two bisimplexes of bidegree `(p, q)` with coefficients in `{±1, ±2}`.
pub fn random_bichain<R: Rng>(rng: &mut R, p: usize, q: usize, a: usize, b: usize) -> BiChain {
    let mut c = BiChain::zero(p, q, a, b);
    for _ in 0..rng.gen_range(1..=2) {
        let k = BigInt::from(nonzero(rng, 2));
        c.add_term(random_bisimplex(rng, p, q, a, b), k).expect("bidegree matches");
    }
    c
}

/// Grid of overlapping open boxes over the bounding box of `c`: one or two
/// cells per axis, each widened by a random fraction of its side.
pub fn random_cover<R: Rng>(rng: &mut R, c: &BiChain) -> ConvexCover {
    let pts: Vec<Vec<BigRational>> = c.mixed().terms().flat_map(|(s, _)| s.grid_points()).collect();
    let dim = pts[0].len();
    let one = BigRational::one();
    let mut axes = Vec::with_capacity(dim);
    for k in 0..dim {
        let lo = pts.iter().map(|x| &x[k]).min().unwrap().clone();
        let hi = pts.iter().map(|x| &x[k]).max().unwrap().clone();
        let width = if hi > lo { &hi - &lo } else { one.clone() };
        let cells = rng.gen_range(1..=2usize);
        let side = &width / BigRational::from_integer(cells.into());
        let widen = &side * BigRational::new(rng.gen_range(1i64..=2).into(), 3.into());
        let slack = &width / BigRational::from_integer(8.into());
        let intervals: Vec<(BigRational, BigRational)> = (0..cells)
            .map(|i| {
                let a = &lo + &side * BigRational::from_integer(i.into());
                let b = &a + &side;
                let l = if i == 0 { &a - &slack } else { &a - &widen };
                let h = if i + 1 == cells { &b + &slack } else { &b + &widen };
                (l, h)
            })
            .collect();
        axes.push(intervals);
    }
    let mut boxes = vec![(Vec::new(), Vec::new())];
    for intervals in &axes {
        boxes = boxes
            .into_iter()
            .flat_map(|(l, h): (Vec<BigRational>, Vec<BigRational>)| {
                intervals.iter().map(move |(a, b)| {
                    let (mut l, mut h) = (l.clone(), h.clone());
                    l.push(a.clone());
                    h.push(b.clone());
                    (l, h)
                })
            })
            .collect();
    }
    debug_assert!(boxes.iter().all(|(l, h)| l.iter().zip(h).all(|(a, b)| a < b && !(b - a).is_zero())));
    ConvexCover::new(boxes).expect("boxes have positive sides")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_complexes_respect_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = DoubleComplexShape::default();
        for _ in 0..20 {
            let d = random_double_complex(&mut rng, &shape).unwrap();
            for p in 0..=d.p_max() {
                for q in 0..=d.q_max() {
                    assert!(d.rank(p, q) <= 4);
                }
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_bichain(&mut ChaCha8Rng::seed_from_u64(3), 1, 2, 1, 1);
        let b = random_bichain(&mut ChaCha8Rng::seed_from_u64(3), 1, 2, 1, 1);
        assert_eq!(a, b);
        let ca = random_cover(&mut ChaCha8Rng::seed_from_u64(4), &a);
        let cb = random_cover(&mut ChaCha8Rng::seed_from_u64(4), &b);
        assert_eq!(ca, cb);
    }
}
