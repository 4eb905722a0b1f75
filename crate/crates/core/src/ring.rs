//! Truncated graded polynomial algebras over GF(2).
//!
//! A [`RingDescriptor`] fixes an ordered list of named generators, each with a
//! positive weight, and a hard truncation degree `N`: every monomial of
//! weighted degree above `N` is identified with zero, eagerly, after every
//! product. Coefficients live in GF(2), so an element is just a set of
//! monomials and addition is symmetric difference.
//!
//! Monomials are ordered by weighted degree, then lexicographically on the
//! exponent vector with larger exponents of earlier generators first. This
//! order fixes printing, JSON output and the column order used by the
//! degreewise solver.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_named_poly;

/// One named polynomial generator with its internal weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
        }
    }
}

/// On-disk shape of a ring descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingConfig {
    pub generators: Vec<GeneratorSpec>,
    pub truncation_degree: u32,
}

/// A graded commutative polynomial algebra over GF(2), truncated above a
/// fixed weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    generators: Vec<GeneratorSpec>,
    truncation_degree: u32,
}

/// Shared handle to a ring; elements keep one of these.
pub type Ring = Arc<RingDescriptor>;

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || "+-*^()".contains(c))
        && !name.chars().next().is_some_and(|c| c.is_ascii_digit())
}

impl RingDescriptor {
    pub fn new(generators: Vec<GeneratorSpec>, truncation_degree: u32) -> Result<Ring> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_name(&g.name) {
                return Err(Error::InvalidGeneratorName(g.name.clone()));
            }
            if g.degree == 0 {
                return Err(Error::ZeroDegreeGenerator(g.name.clone()));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(RingDescriptor {
            generators,
            truncation_degree,
        }))
    }

    /// GF(2) itself: no generators.
    pub fn gf2() -> Ring {
        Arc::new(RingDescriptor {
            generators: Vec::new(),
            truncation_degree: 0,
        })
    }

    /// `GF(2)[names...]` with the given degrees.
    pub fn polynomial(gens: &[(&str, u32)], truncation_degree: u32) -> Result<Ring> {
        Self::new(
            gens.iter()
                .map(|(n, d)| GeneratorSpec::new(*n, *d))
                .collect(),
            truncation_degree,
        )
    }

    pub fn from_config(config: RingConfig) -> Result<Ring> {
        Self::new(config.generators, config.truncation_degree)
    }

    pub fn from_toml_str(text: &str) -> Result<Ring> {
        let config: RingConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_config(config)
    }

    pub fn from_json_str(text: &str) -> Result<Ring> {
        let config: RingConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_config(config)
    }

    pub fn to_config(&self) -> RingConfig {
        RingConfig {
            generators: self.generators.clone(),
            truncation_degree: self.truncation_degree,
        }
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation_degree
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator_degree(&self, index: usize) -> u32 {
        self.generators[index].degree
    }

    /// Builds a monomial from `(generator index, exponent)` pairs. Zero
    /// exponents are dropped and repeated indices accumulate.
    pub fn monomial(&self, exponents: &[(usize, u32)]) -> Result<Monomial> {
        let mut dense = vec![0u32; self.generators.len()];
        for &(i, e) in exponents {
            if i >= self.generators.len() {
                return Err(Error::UnknownGenerator(format!("#{i}")));
            }
            dense[i] += e;
        }
        Ok(self.monomial_from_dense(&dense))
    }

    pub(crate) fn monomial_from_dense(&self, dense: &[u32]) -> Monomial {
        let mut degree = 0u32;
        let mut exps = Vec::new();
        for (i, &e) in dense.iter().enumerate() {
            if e > 0 {
                degree += e * self.generators[i].degree;
                exps.push((i, e));
            }
        }
        Monomial {
            degree,
            exponents: exps,
        }
    }

    /// All monomials of weighted degree exactly `d`, in canonical order.
    pub fn graded_basis(&self, d: u32) -> Result<Vec<Monomial>> {
        if d > self.truncation_degree {
            return Err(Error::DegreeOutOfRange {
                degree: d,
                max: self.truncation_degree,
            });
        }
        let mut out = Vec::new();
        let mut dense = vec![0u32; self.generators.len()];
        self.enumerate(0, d, &mut dense, &mut out);
        Ok(out)
    }

    fn enumerate(&self, index: usize, remaining: u32, dense: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if index == self.generators.len() {
            if remaining == 0 {
                out.push(self.monomial_from_dense(dense));
            }
            return;
        }
        let w = self.generators[index].degree;
        // larger exponents of earlier generators come first
        for e in (0..=remaining / w).rev() {
            dense[index] = e;
            self.enumerate(index + 1, remaining - e * w, dense, out);
        }
        dense[index] = 0;
    }

    /// Every monomial that survives truncation, degree by degree.
    pub fn full_basis(&self) -> Vec<Monomial> {
        (0..=self.truncation_degree)
            .flat_map(|d| self.graded_basis(d).expect("degree within truncation"))
            .collect()
    }
}

/// A monomial: sparse generator-index to positive-exponent map with its
/// cached weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            degree: 0,
            exponents: Vec::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.exponents
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents
            .iter()
            .find(|(i, _)| *i == index)
            .map_or(0, |(_, e)| *e)
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exponents.len() + other.exponents.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exponents, &other.exponents);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            exponents: exps,
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            degree: self.degree * k,
            exponents: self.exponents.iter().map(|&(i, e)| (i, e * k)).collect(),
        }
    }

    /// Reindexes generators by `offset`, for embedding into a tensor ring.
    pub(crate) fn shifted(&self, offset: usize) -> Monomial {
        Monomial {
            degree: self.degree,
            exponents: self.exponents.iter().map(|&(i, e)| (i + offset, e)).collect(),
        }
    }

    /// Splits generator indices at `at`; the right half is reindexed from 0.
    pub(crate) fn split_at(&self, at: usize, left: &RingDescriptor, right: &RingDescriptor) -> (Monomial, Monomial) {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for &(i, e) in &self.exponents {
            if i < at {
                l.push((i, e));
            } else {
                r.push((i - at, e));
            }
        }
        let ld = l.iter().map(|&(i, e)| e * left.generator_degree(i)).sum();
        let rd = r.iter().map(|&(i, e)| e * right.generator_degree(i)).sum();
        (
            Monomial {
                degree: ld,
                exponents: l,
            },
            Monomial {
                degree: rd,
                exponents: r,
            },
        )
    }

    pub fn display<'a>(&'a self, ring: &'a RingDescriptor) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, ring }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (a, b) = (&self.exponents, &other.exponents);
            let mut i = 0;
            loop {
                match (a.get(i), b.get(i)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(ia, ea)), Some(&(ib, eb))) => {
                        if ia != ib {
                            // the one using the earlier generator has the larger exponent there
                            return ia.cmp(&ib);
                        }
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                    }
                }
                i += 1;
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    ring: &'a RingDescriptor,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        for (k, &(i, e)) in self.mono.exponents.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(&self.ring.generators[i].name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// An element of a truncated GF(2) polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    terms: BTreeSet<Monomial>,
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn toggle(set: &mut BTreeSet<Monomial>, m: Monomial) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

impl RingElement {
    pub fn zero(ring: &Ring) -> Self {
        RingElement {
            ring: ring.clone(),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_monomial(ring, Monomial::one())
    }

    /// The generator at `index`, or zero if its degree exceeds the truncation.
    pub fn generator(ring: &Ring, index: usize) -> Self {
        let m = ring.monomial(&[(index, 1)]).expect("generator index in range");
        Self::from_monomial(ring, m)
    }

    pub fn generator_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Self::generator(ring, i))
    }

    pub fn from_monomial(ring: &Ring, m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        if m.degree <= ring.truncation_degree {
            terms.insert(m);
        }
        RingElement {
            ring: ring.clone(),
            terms,
        }
    }

    /// Sums the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials(ring: &Ring, monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut terms = BTreeSet::new();
        for m in monomials {
            if m.degree <= ring.truncation_degree {
                toggle(&mut terms, m);
            }
        }
        RingElement {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().unwrap().is_one()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Largest degree of a term, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().next_back().map(Monomial::degree)
    }

    /// Degree if the element is a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = self.terms.iter().next()?.degree;
        self.terms.iter().all(|m| m.degree == first).then_some(first)
    }

    /// True for zero and for elements whose terms all have degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.iter().all(|m| m.degree == d)
    }

    /// The part of degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|m| m.degree == d).cloned().collect(),
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(RingElement {
            ring: self.ring.clone(),
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        })
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let cap = self.ring.truncation_degree;
        let mut terms = BTreeSet::new();
        for a in &self.terms {
            if a.degree > cap {
                break;
            }
            for b in &other.terms {
                // terms are sorted by degree
                if a.degree + b.degree > cap {
                    break;
                }
                toggle(&mut terms, a.product(b));
            }
        }
        Ok(RingElement {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn add_assign_ref(&mut self, other: &RingElement) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in addition");
        for m in &other.terms {
            toggle(&mut self.terms, m.clone());
        }
    }

    pub(crate) fn toggle_monomial(&mut self, m: Monomial) {
        if m.degree <= self.ring.truncation_degree {
            toggle(&mut self.terms, m);
        }
    }

    /// Squaring via the Frobenius: cross terms vanish in characteristic 2.
    pub fn square(&self) -> RingElement {
        RingElement::from_monomials(&self.ring, self.terms.iter().map(|m| m.pow(2)))
    }

    /// Raising to `2^k` is additive, so it acts monomialwise.
    pub fn frobenius(&self, k: u32) -> RingElement {
        let e = 1u32 << k;
        RingElement::from_monomials(&self.ring, self.terms.iter().map(|m| m.pow(e)))
    }

    pub fn pow(&self, mut e: u32) -> RingElement {
        let mut acc = RingElement::one(&self.ring);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.square();
            }
        }
        acc
    }

    /// Reads an element from text such as `1 + a1^2*a2`.
    pub fn parse(ring: &Ring, text: &str) -> Result<RingElement> {
        let poly = parse_named_poly(text)?;
        let mut out = RingElement::zero(ring);
        for named in poly {
            let mut exps = Vec::new();
            for (name, e) in named {
                let i = ring
                    .generator_index(&name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                exps.push((i, e));
            }
            out.toggle_monomial(ring.monomial(&exps)?);
        }
        Ok(out)
    }

    /// Moves the element into `target`, which must declare the same
    /// generators; only truncation may differ.
    pub fn retruncate(&self, target: &Ring) -> Result<RingElement> {
        if self.ring.generators != target.generators {
            return Err(Error::RingMismatch);
        }
        Ok(RingElement::from_monomials(target, self.terms.iter().cloned()))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", m.display(&self.ring))?;
        }
        Ok(())
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;

    /// Panics on a ring mismatch; use [`element_add`] for the checked form.
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;

    /// Panics on a ring mismatch; use [`element_mul`] for the checked form.
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

pub fn element_add(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.checked_add(b)
}

pub fn element_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.checked_mul(b)
}

pub fn graded_basis(ring: &RingDescriptor, d: u32) -> Result<Vec<Monomial>> {
    ring.graded_basis(d)
}
