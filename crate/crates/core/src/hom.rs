//! Ring homomorphisms between truncated GF(2) polynomial rings.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::{same_ring, Monomial, Ring, RingElement};

/// A ring map given by the images of the source generators.
///
/// Maps that send some generator to an element that is not homogeneous of
/// the generator's degree are allowed; they are flagged as non-graded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    assignments: Vec<RingElement>,
    graded: bool,
}

impl RingHom {
    pub fn new(source: &Ring, target: &Ring, assignments: Vec<RingElement>) -> Result<Self> {
        if assignments.len() != source.num_generators() {
            return Err(Error::ArityMismatch {
                expected: source.num_generators(),
                got: assignments.len(),
            });
        }
        if assignments.iter().any(|a| !same_ring(a.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        let graded = assignments
            .iter()
            .enumerate()
            .all(|(i, a)| a.is_homogeneous_of(source.generator_degree(i)));
        Ok(RingHom {
            source: source.clone(),
            target: target.clone(),
            assignments,
            graded,
        })
    }

    /// Every generator goes to zero.
    pub fn zero(source: &Ring, target: &Ring) -> Self {
        Self::new(
            source,
            target,
            vec![RingElement::zero(target); source.num_generators()],
        )
        .expect("zero map is well formed")
    }

    pub fn identity(ring: &Ring) -> Self {
        Self::new(
            ring,
            ring,
            (0..ring.num_generators())
                .map(|i| RingElement::generator(ring, i))
                .collect(),
        )
        .expect("identity map is well formed")
    }

    /// Builds a map from `name -> expression` pairs; unnamed generators go to zero.
    pub fn from_named(source: &Ring, target: &Ring, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut assignments = vec![RingElement::zero(target); source.num_generators()];
        for (name, text) in pairs {
            let i = source
                .generator_index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            assignments[i] = RingElement::parse(target, text)?;
        }
        Self::new(source, target, assignments)
    }

    /// Parses `a1=t, a2=t^2` style assignment lists.
    pub fn parse_assignments(source: &Ring, target: &Ring, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `name=value`, found `{part}`")))?;
            pairs.push((name.trim(), value.trim()));
        }
        Self::from_named(source, target, &pairs)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn assignments(&self) -> &[RingElement] {
        &self.assignments
    }

    pub fn assignment(&self, index: usize) -> &RingElement {
        &self.assignments[index]
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Substitutes the assignments into every monomial of `a`.
    pub fn apply(&self, a: &RingElement) -> Result<RingElement> {
        if !same_ring(a.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        let mut powers: HashMap<(usize, u32), RingElement> = HashMap::new();
        let mut out = RingElement::zero(&self.target);
        for m in a.terms() {
            out.add_assign_ref(&self.apply_monomial(m, &mut powers));
        }
        Ok(out)
    }

    fn apply_monomial(
        &self,
        m: &Monomial,
        powers: &mut HashMap<(usize, u32), RingElement>,
    ) -> RingElement {
        let mut acc = RingElement::one(&self.target);
        for &(i, e) in m.exponents() {
            let p = powers
                .entry((i, e))
                .or_insert_with(|| self.assignments[i].pow(e));
            acc = &acc * p;
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// `self` after `first`: `x -> self(first(x))`.
    pub fn after(&self, first: &RingHom) -> Result<RingHom> {
        if !same_ring(first.target(), &self.source) {
            return Err(Error::RingMismatch);
        }
        let assignments = first
            .assignments
            .iter()
            .map(|a| self.apply(a))
            .collect::<Result<Vec<_>>>()?;
        RingHom::new(&first.source, &self.target, assignments)
    }
}

pub fn apply_hom(h: &RingHom, a: &RingElement) -> Result<RingElement> {
    h.apply(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    #[test]
    fn zero_and_identity() {
        let r = RingDescriptor::polynomial(&[("a1", 1), ("a2", 2)], 6).unwrap();
        let x = RingElement::parse(&r, "a1 + a2^2").unwrap();
        let z = RingHom::zero(&r, &r);
        assert!(apply_hom(&z, &x).unwrap().is_zero());
        let id = RingHom::identity(&r);
        assert_eq!(apply_hom(&id, &x).unwrap(), x);
        // the constant term survives a zero map
        let y = RingElement::parse(&r, "1 + a1").unwrap();
        assert!(apply_hom(&z, &y).unwrap().is_one());
    }

    #[test]
    fn substitution_into_one_variable() {
        let r = RingDescriptor::polynomial(&[("a1", 1), ("a2", 2)], 6).unwrap();
        let t = RingDescriptor::polynomial(&[("t", 1)], 6).unwrap();
        let h = RingHom::from_named(&r, &t, &[("a1", "t"), ("a2", "t^2")]).unwrap();
        assert!(h.is_graded());
        let x = RingElement::parse(&r, "a1*a2").unwrap();
        assert_eq!(apply_hom(&h, &x).unwrap().to_string(), "t^3");
    }

    #[test]
    fn non_graded_maps_are_flagged() {
        let r = RingDescriptor::polynomial(&[("a1", 1)], 4).unwrap();
        let h = RingHom::from_named(&r, &RingDescriptor::gf2(), &[("a1", "1")]).unwrap();
        assert!(!h.is_graded());
        let x = RingElement::parse(&r, "a1 + a1^2").unwrap();
        assert!(apply_hom(&h, &x).unwrap().is_zero());
    }

    #[test]
    fn source_mismatch() {
        let r = RingDescriptor::polynomial(&[("a1", 1)], 4).unwrap();
        let s = RingDescriptor::polynomial(&[("b1", 1)], 4).unwrap();
        let h = RingHom::identity(&r);
        assert_eq!(
            apply_hom(&h, &RingElement::one(&s)),
            Err(Error::RingMismatch)
        );
        assert!(matches!(
            RingHom::new(&r, &r, vec![]),
            Err(Error::ArityMismatch { expected: 1, got: 0 })
        ));
    }
}
