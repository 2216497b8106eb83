//! Smith normal form over the integers.
//!
//! Pivoting picks the nonzero entry of least absolute value in the active
//! submatrix; the transforms are tracked only when requested.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v == d`, with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain of nonnegative entries.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut w = Work::new(m, Track { u: true, u_inv: false, v: true });
    w.run();
    let d = w.diagonal_matrix();
    Snf { u: w.u.unwrap(), d, v: w.v.unwrap() }
}

/// Diagonal entries only (rank-many nonzero values followed by zeros).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut w = Work::new(m, Track::default());
    w.run();
    w.diag()
}

pub fn rank_of(m: &IntMatrix) -> usize {
    invariant_factors(m).iter().filter(|x| !x.is_zero()).count()
}

/// Row transform and its inverse, as needed for a change of basis.
pub(crate) struct RowReduction {
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
}

pub(crate) fn snf_with_row_transforms(m: &IntMatrix) -> RowReduction {
    let mut w = Work::new(m, Track { u: true, u_inv: true, v: false });
    w.run();
    RowReduction { diag: w.diag(), u: w.u.unwrap(), u_inv: w.u_inv.unwrap() }
}

#[derive(Default, Clone, Copy)]
struct Track {
    u: bool,
    u_inv: bool,
    v: bool,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Work {
    fn new(m: &IntMatrix, t: Track) -> Self {
        let (rows, cols) = m.shape();
        Self {
            a: (0..rows).map(|i| m.row(i).to_vec()).collect(),
            rows,
            cols,
            u: t.u.then(|| IntMatrix::identity(rows)),
            u_inv: t.u_inv.then(|| IntMatrix::identity(rows)),
            v: t.v.then(|| IntMatrix::identity(cols)),
        }
    }

    fn diag(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.a[i][i].clone()).collect()
    }

    fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows.min(self.cols) {
            d.set(i, i, self.a[i][i].clone());
        }
        d
    }

    // row_i <- row_i - q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let (src, dst) = if i < t {
            let (lo, hi) = self.a.split_at_mut(t);
            (&hi[0], &mut lo[i])
        } else {
            let (lo, hi) = self.a.split_at_mut(i);
            (&lo[t], &mut hi[0])
        };
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d -= q * s;
            }
        }
        if let Some(u) = self.u.as_mut() {
            for j in 0..u.cols() {
                let s = u.get(t, j).clone();
                if !s.is_zero() {
                    *u.get_mut(i, j) -= q * s;
                }
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // inverse update: col_t += q * col_i
            for r in 0..ui.rows() {
                let s = ui.get(r, i).clone();
                if !s.is_zero() {
                    *ui.get_mut(r, t) += q * s;
                }
            }
        }
    }

    // col_j <- col_j - q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                let s = &row[t] * q;
                row[j] -= s;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for r in 0..v.rows() {
                let s = v.get(r, t).clone();
                if !s.is_zero() {
                    *v.get_mut(r, j) -= q * s;
                }
            }
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some(u) = self.u.as_mut() {
            for j in 0..u.cols() {
                let x = u.get(i, j).clone();
                let y = std::mem::replace(u.get_mut(k, j), x);
                u.set(i, j, y);
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for r in 0..ui.rows() {
                let x = ui.get(r, i).clone();
                let y = std::mem::replace(ui.get_mut(r, k), x);
                ui.set(r, i, y);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        if let Some(v) = self.v.as_mut() {
            for r in 0..v.rows() {
                let x = v.get(r, j).clone();
                let y = std::mem::replace(v.get_mut(r, k), x);
                v.set(r, j, y);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = self.u.as_mut() {
            for j in 0..u.cols() {
                let x = -u.get(i, j);
                u.set(i, j, x);
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for r in 0..ui.rows() {
                let x = -ui.get(r, i);
                ui.set(r, i, x);
            }
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                let better = best.as_ref().map_or(true, |(_, _, b)| ax < *b);
                if better {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        let (i, j, _) = best.unwrap();
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_axpy(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_axpy(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // move the smallest leftover remainder into the pivot position
                    let mut best = (t, t, self.a[t][t].abs());
                    for i in t + 1..self.rows {
                        let x = self.a[i][t].abs();
                        if !x.is_zero() && x < best.2 {
                            best = (i, t, x);
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = self.a[t][j].abs();
                        if !x.is_zero() && x < best.2 {
                            best = (t, j, x);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the remaining block by the pivot
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        self.row_axpy(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken: {diag:?}");
            } else {
                assert!(w[0].is_zero() || !w[0].is_negative());
            }
        }
        assert!(diag.iter().all(|x| !x.is_negative()));
        s
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 2));
        assert!(s.d.is_zero());
        assert!(s.u.is_identity() && s.v.is_identity());
    }

    #[test]
    fn identity_matrix() {
        let s = check(&IntMatrix::identity(3));
        assert!(s.d.is_identity());
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2,3) is not in normal form: expect diag(1,6)
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular() {
        let s = check(&IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(3)]);
        let s = check(&IntMatrix::from_rows(&[[6], [4], [10]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2)]);
    }

    #[test]
    fn row_transform_inverse() {
        let m = IntMatrix::from_rows(&[[3, 1, 4], [1, 5, 9], [2, 6, 5], [3, 5, 8]]);
        let r = snf_with_row_transforms(&m);
        assert!((&r.u * &r.u_inv).is_identity());
    }
}
