use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// `mul(a, b)` is the product `a·b`; elements are indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the group axioms; errors name the first failing triple.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("row {a} contains out-of-range element {x}")));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails for ({a}, {b}, {c}): ({a}*{b})*{c} = {} but {a}*({b}*{c}) = {}",
                            m(m(a, b), c),
                            m(a, m(b, c))
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        let generators = (0..n).filter(|&g| g != identity).collect();
        Ok(Self { order: n, table: flat, identity, inverse, generators })
    }

    /// `ℤ/n` with element `k` standing for `t^k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        let generators = if n > 1 { vec![1] } else { Vec::new() };
        Self { order: n, table, identity: 0, inverse, generators }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Symmetric group on `k` points; elements are permutations in
    /// lexicographic order and `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let c: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(table).expect("symmetric group table is valid");
        if k >= 2 {
            let mut swap: Vec<usize> = (0..k).collect();
            swap.swap(0, 1);
            let mut cycle: Vec<usize> = (1..k).collect();
            cycle.push(0);
            let mut gens = vec![index(&swap)];
            if k > 2 {
                gens.push(index(&cycle));
            }
            g.generators = gens;
        }
        g
    }

    /// Replaces the distinguished generating set.
    pub fn with_generators(mut self, generators: Vec<usize>) -> Result<Self> {
        if let Some(&g) = generators.iter().find(|&&g| g >= self.order) {
            return Err(Error::InvalidGroup(format!("generator {g} is not an element")));
        }
        self.generators = generators;
        if self.words_from_generators().iter().any(Option::is_none) {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        if self.order == 1 {
            return Some(self.identity);
        }
        self.generators
            .iter()
            .copied()
            .chain(self.elements())
            .find(|&g| self.element_order(g) == self.order)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// For each element, a word `g = s_k ⋯ s_1` in the generators
    /// (listed first-applied first), found by breadth-first search.
    pub(crate) fn words_from_generators(&self) -> Vec<Option<Vec<usize>>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in &self.generators {
                let y = self.mul(s, x);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(s);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
    }

    /// Extends values on the generators to all elements as a left action
    /// `value(s·x) = combine(value(s), value(x))`.
    pub(crate) fn extend_from_generators<T: Clone>(
        &self,
        identity: T,
        generator_value: impl Fn(usize) -> T,
        combine: impl Fn(&T, &T) -> T,
    ) -> Result<Vec<T>> {
        let words = self.words_from_generators();
        words
            .iter()
            .enumerate()
            .map(|(g, w)| {
                let w = w.as_ref().ok_or_else(|| {
                    Error::InvalidGroup(format!("element {g} is not reachable from the generators"))
                })?;
                Ok(w.iter().fold(identity.clone(), |acc, &s| combine(&generator_value(s), &acc)))
            })
            .collect()
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..k {
        for rest in permutations(k - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_laws() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.element_order(2), 2);
        assert_eq!(g.cyclic_generator(), Some(1));
    }

    #[test]
    fn symmetric_three() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
        assert_eq!(s3.cyclic_generator(), None);
        assert!(s3.words_from_generators().iter().all(Option::is_some));
    }

    #[test]
    fn table_round_trip() {
        let z3 = FiniteGroup::cyclic(3);
        let table: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| z3.mul(a, b)).collect()).collect();
        let g = FiniteGroup::from_table(table).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(2), 1);
    }

    #[test]
    fn malformed_table_names_the_triple() {
        // a loop that is not associative
        let table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        let err = FiniteGroup::from_table(table).unwrap_err();
        match err {
            Error::InvalidGroup(msg) => assert!(msg.contains("associativity fails for ("), "{msg}"),
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn missing_inverse() {
        let table = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table(table), Err(Error::InvalidGroup(_))));
    }
}
