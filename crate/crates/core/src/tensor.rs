//! Tensor products of truncated rings.
//!
//! [`TensorElement`] keeps the two factors apart as pairs of monomials.
//! For checks that need ring maps into and out of `R ⊗ S` (or triple
//! products), [`TensorRing`] flattens the product into a single polynomial
//! ring whose generators are slot-tagged copies, truncated by total degree.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ring::{same_ring, GeneratorSpec, Monomial, Ring, RingDescriptor, RingElement};

/// A sum of pure tensors of monomials in `left ⊗ right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    left: Ring,
    right: Ring,
    terms: BTreeSet<(Monomial, Monomial)>,
}

fn toggle_pair(set: &mut BTreeSet<(Monomial, Monomial)>, p: (Monomial, Monomial)) {
    if !set.remove(&p) {
        set.insert(p);
    }
}

impl TensorElement {
    pub fn zero(left: &Ring, right: &Ring) -> Self {
        TensorElement {
            left: left.clone(),
            right: right.clone(),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(left: &Ring, right: &Ring) -> Self {
        Self::pure(&RingElement::one(left), &RingElement::one(right))
    }

    /// `a ⊗ b`, expanded bilinearly.
    pub fn pure(a: &RingElement, b: &RingElement) -> Self {
        let mut out = Self::zero(a.ring(), b.ring());
        for x in a.terms() {
            for y in b.terms() {
                toggle_pair(&mut out.terms, (x.clone(), y.clone()));
            }
        }
        out
    }

    pub fn from_pairs(left: &Ring, right: &Ring, pairs: impl IntoIterator<Item = (Monomial, Monomial)>) -> Self {
        let mut out = Self::zero(left, right);
        for (l, r) in pairs {
            if l.degree() <= left.truncation_degree() && r.degree() <= right.truncation_degree() {
                toggle_pair(&mut out.terms, (l, r));
            }
        }
        out
    }

    pub fn left_ring(&self) -> &Ring {
        &self.left
    }

    pub fn right_ring(&self) -> &Ring {
        &self.right
    }

    pub fn terms(&self) -> impl Iterator<Item = &(Monomial, Monomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_rings(&self, other: &TensorElement) -> Result<()> {
        if same_ring(&self.left, &other.left) && same_ring(&self.right, &other.right) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_rings(other)?;
        Ok(TensorElement {
            left: self.left.clone(),
            right: self.right.clone(),
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        })
    }

    pub fn checked_mul(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_rings(other)?;
        let (nl, nr) = (self.left.truncation_degree(), self.right.truncation_degree());
        let mut out = Self::zero(&self.left, &self.right);
        for (a, b) in &self.terms {
            for (c, d) in &other.terms {
                if a.degree() + c.degree() > nl || b.degree() + d.degree() > nr {
                    continue;
                }
                toggle_pair(&mut out.terms, (a.product(c), b.product(d)));
            }
        }
        Ok(out)
    }

    /// Total degree of each term, summed across the two factors; `None`
    /// unless all terms agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|(l, r)| l.degree() + r.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Applies `f ⊗ g` and returns the result in the target tensor product.
    pub fn map(&self, f: &RingHom, g: &RingHom) -> Result<TensorElement> {
        if !same_ring(f.source(), &self.left) || !same_ring(g.source(), &self.right) {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zero(f.target(), g.target());
        for (l, r) in &self.terms {
            let fl = f.apply(&RingElement::from_monomial(&self.left, l.clone()))?;
            let gr = g.apply(&RingElement::from_monomial(&self.right, r.clone()))?;
            out = out.checked_add(&Self::pure(&fl, &gr))?;
        }
        Ok(out)
    }

    /// Multiplies the two factors together; both must be the same ring.
    pub fn multiply_out(&self) -> Result<RingElement> {
        if !same_ring(&self.left, &self.right) {
            return Err(Error::RingMismatch);
        }
        Ok(RingElement::from_monomials(
            &self.left,
            self.terms.iter().map(|(l, r)| l.product(r)),
        ))
    }

    /// Groups terms by their left monomial: `(left monomial, right coefficient)`.
    pub fn by_left(&self) -> Vec<(Monomial, RingElement)> {
        let mut out: Vec<(Monomial, RingElement)> = Vec::new();
        for (l, r) in &self.terms {
            match out.last_mut() {
                Some((m, coeff)) if m == l => {
                    coeff.toggle_monomial(r.clone());
                }
                _ => out.push((l.clone(), RingElement::from_monomial(&self.right, r.clone()))),
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (l, r)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} ⊗ {}", l.display(&self.left), r.display(&self.right))?;
        }
        Ok(())
    }
}

/// A flattened tensor product `R₀ ⊗ R₁ ⊗ … ⊗ R_{s-1}`.
#[derive(Debug, Clone)]
pub struct TensorRing {
    factors: Vec<Ring>,
    offsets: Vec<usize>,
    flat: Ring,
}

impl TensorRing {
    /// Generators are named `name#slot`; truncation is by total degree.
    pub fn new(factors: &[&Ring], truncation_degree: u32) -> TensorRing {
        let mut gens = Vec::new();
        let mut offsets = Vec::new();
        for (slot, f) in factors.iter().enumerate() {
            offsets.push(gens.len());
            for g in f.generators() {
                gens.push(GeneratorSpec::new(format!("{}#{}", g.name, slot), g.degree));
            }
        }
        let flat = RingDescriptor::new(gens, truncation_degree).expect("slot-tagged names are unique");
        TensorRing {
            factors: factors.iter().map(|r| (*r).clone()).collect(),
            offsets,
            flat,
        }
    }

    /// `R^{⊗n}` truncated at the ring's own truncation degree.
    pub fn power(ring: &Ring, n: usize) -> TensorRing {
        let refs = vec![ring; n];
        Self::new(&refs, ring.truncation_degree())
    }

    pub fn flat(&self) -> &Ring {
        &self.flat
    }

    pub fn factor(&self, slot: usize) -> &Ring {
        &self.factors[slot]
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// The inclusion of factor `slot`.
    pub fn inclusion(&self, slot: usize) -> RingHom {
        let f = &self.factors[slot];
        let assignments = (0..f.num_generators())
            .map(|i| RingElement::generator(&self.flat, self.offsets[slot] + i))
            .collect();
        RingHom::new(f, &self.flat, assignments).expect("inclusion is well formed")
    }

    pub fn embed(&self, slot: usize, a: &RingElement) -> Result<RingElement> {
        if !same_ring(a.ring(), &self.factors[slot]) {
            return Err(Error::RingMismatch);
        }
        Ok(RingElement::from_monomials(
            &self.flat,
            a.terms().map(|m| m.shifted(self.offsets[slot])),
        ))
    }

    /// Places a two-factor tensor `t` into slots `(a, b)` of this product.
    pub fn embed_tensor(&self, a: usize, b: usize, t: &TensorElement) -> Result<RingElement> {
        if !same_ring(t.left_ring(), &self.factors[a]) || !same_ring(t.right_ring(), &self.factors[b]) {
            return Err(Error::RingMismatch);
        }
        let (oa, ob) = (self.offsets[a], self.offsets[b]);
        Ok(RingElement::from_monomials(
            &self.flat,
            t.terms().map(|(l, r)| l.shifted(oa).product(&r.shifted(ob))),
        ))
    }

    /// Flattens a two-factor tensor; requires a two-factor ring.
    pub fn flatten(&self, t: &TensorElement) -> Result<RingElement> {
        if self.factors.len() != 2
            || !same_ring(t.left_ring(), &self.factors[0])
            || !same_ring(t.right_ring(), &self.factors[1])
        {
            return Err(Error::RingMismatch);
        }
        let off = self.offsets[1];
        Ok(RingElement::from_monomials(
            &self.flat,
            t.terms().map(|(l, r)| l.product(&r.shifted(off))),
        ))
    }

    /// Splits an element of a two-factor flat ring back into pairs.
    pub fn unflatten(&self, a: &RingElement) -> Result<TensorElement> {
        if self.factors.len() != 2 || !same_ring(a.ring(), &self.flat) {
            return Err(Error::RingMismatch);
        }
        let (left, right) = (&self.factors[0], &self.factors[1]);
        Ok(TensorElement::from_pairs(
            left,
            right,
            a.terms().map(|m| m.split_at(self.offsets[1], left, right)),
        ))
    }
}

pub fn tensor_add(a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    a.checked_add(b)
}

pub fn tensor_mul(a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    a.checked_mul(b)
}
