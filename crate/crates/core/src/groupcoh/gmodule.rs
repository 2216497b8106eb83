use num_bigint::BigInt;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::{FGModule, IntMatrix, Lattice, Presentation, Subquotient};

/// A presented abelian group with a left action of a finite group.
///
/// `action(g)` acts on generators; it must preserve the relation lattice and
/// satisfy `action(g)·action(h) = action(gh)` on the quotient.
#[derive(Clone, Debug)]
pub struct GModule {
    group: FiniteGroup,
    presentation: Presentation,
    action: Vec<IntMatrix>,
}

impl GModule {
    pub fn new(group: FiniteGroup, presentation: Presentation, action: Vec<IntMatrix>) -> Result<Self> {
        let n = presentation.generators();
        if action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "need one action matrix per group element ({}), got {}",
                group.order(),
                action.len()
            )));
        }
        for (g, a) in action.iter().enumerate() {
            if a.shape() != (n, n) {
                return Err(Error::InvalidModule(format!(
                    "action of element {g} is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !presentation.receives_relations(a, &presentation) {
                return Err(Error::InvalidModule(format!("action of element {g} does not preserve relations")));
            }
        }
        let m = Self { group, presentation, action };
        m.check_action_laws()?;
        Ok(m)
    }

    /// Builds the action from matrices for the group's generators.
    pub fn from_generator_actions(
        group: FiniteGroup,
        presentation: Presentation,
        generator_actions: &[(usize, IntMatrix)],
    ) -> Result<Self> {
        let n = presentation.generators();
        for &s in group.generators() {
            if !generator_actions.iter().any(|(g, _)| *g == s) {
                return Err(Error::InvalidModule(format!("no action given for generator {s}")));
            }
        }
        let lookup = |s: usize| -> IntMatrix {
            generator_actions.iter().find(|(g, _)| *g == s).map(|(_, m)| m.clone()).unwrap()
        };
        if let Some((_, m)) = generator_actions.iter().find(|(_, m)| m.shape() != (n, n)) {
            return Err(Error::InvalidModule(format!(
                "generator action is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        let action = group.extend_from_generators(IntMatrix::identity(n), lookup, |a, b| a * b)?;
        Self::new(group, presentation, action)
    }

    pub fn trivial(group: FiniteGroup, presentation: Presentation) -> Self {
        let n = presentation.generators();
        let action = vec![IntMatrix::identity(n); group.order()];
        Self { group, presentation, action }
    }

    /// ℤ with the trivial action.
    pub fn integers(group: &FiniteGroup) -> Self {
        Self::trivial(group.clone(), Presentation::free(1))
    }

    /// ℤ on which `g` acts by `sign(g) ∈ {±1}`.
    pub fn sign(group: &FiniteGroup, sign: impl Fn(usize) -> i64) -> Result<Self> {
        let action = group.elements().map(|g| IntMatrix::from_rows(&[[sign(g)]])).collect();
        Self::new(group.clone(), Presentation::free(1), action)
    }

    /// ℤ with `g` acting by `-1` exactly when `g` lies outside the index-2
    /// subgroup generated by squares; for ℤ/2 this is the sign module.
    pub fn cyclic_sign(group: &FiniteGroup) -> Result<Self> {
        let gen = group
            .cyclic_generator()
            .ok_or_else(|| Error::InvalidModule("sign module needs a cyclic group".into()))?;
        if group.order() % 2 != 0 {
            return Err(Error::InvalidModule("sign module needs a group of even order".into()));
        }
        let mut power = vec![0usize; group.order()];
        let mut x = group.identity();
        for k in 0..group.order() {
            power[x] = k;
            x = group.mul(gen, x);
        }
        Self::sign(group, |g| if power[g] % 2 == 0 { 1 } else { -1 })
    }

    /// Permutation module ℤ[S] for a left action on a finite set.
    pub fn permutation(group: &FiniteGroup, points: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let action = group
            .elements()
            .map(|g| {
                let mut m = IntMatrix::zeros(points, points);
                for x in 0..points {
                    m.set(act(g, x), x, BigInt::from(1));
                }
                m
            })
            .collect();
        Self::new(group.clone(), Presentation::free(points), action)
    }

    /// Same action with coefficients reduced mod `m`.
    pub fn modulo(&self, modulus: &BigInt) -> Result<Self> {
        let n = self.presentation.generators();
        let rel = self.presentation.relations().hstack(&IntMatrix::scalar(n, modulus));
        Self::new(self.group.clone(), Presentation::new(n, rel), self.action.clone())
    }

    fn check_action_laws(&self) -> Result<()> {
        let e = self.group.identity();
        let n = self.presentation.generators();
        if !self.presentation.annihilates(&(&self.action[e] - &IntMatrix::identity(n))) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                let lhs = &self.action[g] * &self.action[h];
                if !self.presentation.annihilates(&(&lhs - &self.action[gh])) {
                    return Err(Error::InvalidModule(format!(
                        "action is not a homomorphism: action({g})·action({h}) != action({gh})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> usize {
        self.presentation.generators()
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn underlying(&self) -> FGModule {
        self.presentation.module()
    }

    pub fn is_trivial_action(&self) -> bool {
        let n = self.generators();
        self.action.iter().all(|a| self.presentation.annihilates(&(a - &IntMatrix::identity(n))))
    }

    pub(crate) fn ensure_group(&self, group: &FiniteGroup) -> Result<()> {
        if &self.group != group {
            return Err(Error::GroupMismatch(format!(
                "module is over a group of order {}, expected order {}",
                self.group.order(),
                group.order()
            )));
        }
        Ok(())
    }

    /// Builds the module of `H` from a subquotient together with the action
    /// induced by ambient-level matrices that preserve it.
    pub(crate) fn from_subquotient(group: &FiniteGroup, sq: &Subquotient, ambient_action: &[IntMatrix]) -> Result<Self> {
        let action = ambient_action.iter().map(|a| sq.induced(a, sq)).collect::<Result<Vec<_>>>()?;
        let presentation = Presentation::new(sq.num_generators(), sq.relation_matrix());
        Self::new(group.clone(), presentation, action)
    }
}

/// `M^G`: elements fixed by every group element.
pub fn invariants(m: &GModule) -> Result<FGModule> {
    Ok(invariants_group(m)?.module())
}

pub fn invariants_group(m: &GModule) -> Result<Subquotient> {
    let n = m.generators();
    let id = IntMatrix::identity(n);
    let mut stacked = IntMatrix::zeros(0, n);
    for g in m.group.elements() {
        stacked = stacked.vstack(&(m.action(g) - &id));
    }
    let rel = m.presentation.power(m.group.order());
    let fixed = Lattice::preimage(&stacked, &rel.relation_vectors());
    Subquotient::new(fixed, &m.presentation.relation_vectors())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let triv = GModule::trivial(z2.clone(), Presentation::free(2));
        assert_eq!(invariants(&triv).unwrap(), FGModule::free(2));

        let sign = GModule::cyclic_sign(&z2).unwrap();
        assert_eq!(invariants(&sign).unwrap(), FGModule::zero());

        let swap = GModule::permutation(&z2, 2, |g, x| if g == 1 { 1 - x } else { x }).unwrap();
        assert_eq!(invariants(&swap).unwrap(), FGModule::free(1));
    }

    #[test]
    fn sign_mod_two_is_trivial() {
        let z2 = FiniteGroup::cyclic(2);
        let sign = GModule::cyclic_sign(&z2).unwrap().modulo(&BigInt::from(2)).unwrap();
        assert!(sign.is_trivial_action());
        assert_eq!(invariants(&sign).unwrap(), FGModule::cyclic(2));
    }

    #[test]
    fn generator_extension() {
        let z3 = FiniteGroup::cyclic(3);
        let rot = IntMatrix::from_rows(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let m = GModule::from_generator_actions(z3, Presentation::free(3), &[(1, rot.clone())]).unwrap();
        assert_eq!(m.action(2), &(&rot * &rot));
        assert_eq!(invariants(&m).unwrap(), FGModule::free(1));
    }

    #[test]
    fn bad_action_is_rejected() {
        let z2 = FiniteGroup::cyclic(2);
        // multiplication by 2 squared is not the identity
        let two = IntMatrix::from_rows(&[[2]]);
        let r = GModule::from_generator_actions(z2, Presentation::free(1), &[(1, two)]);
        assert!(matches!(r, Err(Error::InvalidModule(_))));
    }
}
