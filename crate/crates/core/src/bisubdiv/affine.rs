//! Barycentric subdivision and the cone homotopy on affine simplices given
//! by their vertex lists (Eilenberg–Steenrod's `Sd` and `R`).

use num_rational::BigRational;
use num_traits::Zero;

pub(crate) type Point = Vec<BigRational>;
pub(crate) type Vertices = Vec<Point>;
/// Unmerged signed terms.
pub(crate) type Terms = Vec<(Vertices, i64)>;

pub(crate) fn barycenter(v: &[Point]) -> Point {
    let dim = v[0].len();
    let n = BigRational::from_integer(v.len().into());
    (0..dim)
        .map(|k| v.iter().fold(BigRational::zero(), |acc, p| acc + &p[k]) / &n)
        .collect()
}

pub(crate) fn face<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect()
}

fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

fn cone(apex: &Point, terms: Terms) -> Terms {
    terms
        .into_iter()
        .map(|(mut t, c)| {
            t.insert(0, apex.clone());
            (t, c)
        })
        .collect()
}

/// `Sd [v] = [v]`, `Sd σ = b_σ · Sd ∂σ`.
pub(crate) fn sd(v: &[Point]) -> Terms {
    if v.len() == 1 {
        return vec![(v.to_vec(), 1)];
    }
    let b = barycenter(v);
    let mut inner = Vec::new();
    for i in 0..v.len() {
        inner.extend(sd(&face(v, i)).into_iter().map(|(t, c)| (t, c * sign(i))));
    }
    cone(&b, inner)
}

/// `R [v] = 0`, `R σ = b_σ · (σ − Sd σ − R ∂σ)`; satisfies `∂R + R∂ = 1 − Sd`.
pub(crate) fn cone_homotopy(v: &[Point]) -> Terms {
    if v.len() == 1 {
        return Vec::new();
    }
    let b = barycenter(v);
    let mut inner = vec![(v.to_vec(), 1)];
    inner.extend(sd(v).into_iter().map(|(t, c)| (t, -c)));
    for i in 0..v.len() {
        inner.extend(cone_homotopy(&face(v, i)).into_iter().map(|(t, c)| (t, -c * sign(i))));
    }
    cone(&b, inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64) -> Point {
        vec![BigRational::from_integer(x.into())]
    }

    #[test]
    fn interval_subdivision() {
        let t = sd(&[pt(0), pt(2)]);
        assert_eq!(t, vec![(vec![pt(1), pt(2)], 1), (vec![pt(1), pt(0)], -1)]);
        assert_eq!(sd(&[pt(0), pt(1), pt(2)]).len(), 6);
    }

    #[test]
    fn interval_homotopy() {
        // R[0,2] = [1,0,2] − [1,1,2] + [1,1,0]
        let r = cone_homotopy(&[pt(0), pt(2)]);
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|(t, _)| t.len() == 3 && t[0] == pt(1)));
    }
}
