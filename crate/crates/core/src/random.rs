//! Seeded random elements for property suites and randomized checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hom::RingHom;
use crate::ring::{Ring, RingElement};
use crate::series::StrictSeries1;

/// A sum of up to `max_terms` monomials of degree at most `max_degree`.
pub fn random_element<R: Rng + ?Sized>(ring: &Ring, rng: &mut R, max_degree: u32, max_terms: usize) -> RingElement {
    let pool: Vec<_> = ring
        .full_basis()
        .into_iter()
        .filter(|m| m.degree() <= max_degree)
        .collect();
    let n = rng.gen_range(0..=max_terms);
    RingElement::from_monomials(ring, (0..n).filter_map(|_| pool.choose(rng).cloned()))
}

/// A random element homogeneous of degree `d` (possibly zero).
pub fn random_homogeneous<R: Rng + ?Sized>(ring: &Ring, rng: &mut R, d: u32) -> RingElement {
    let basis = ring.graded_basis(d).unwrap_or_default();
    RingElement::from_monomials(ring, basis.into_iter().filter(|_| rng.gen_bool(0.5)))
}

/// A strict series whose `x^n` coefficient is homogeneous of degree `n - 1`.
pub fn random_graded_strict<R: Rng + ?Sized>(ring: &Ring, truncation: u32, rng: &mut R) -> StrictSeries1 {
    let coeffs: Vec<_> = (2..=truncation)
        .map(|n| (n, random_homogeneous(ring, rng, n - 1)))
        .collect();
    StrictSeries1::from_higher(ring, truncation, coeffs).expect("exponents start at 2")
}

/// A strict series with arbitrary (inhomogeneous) coefficients.
pub fn random_strict<R: Rng + ?Sized>(ring: &Ring, truncation: u32, rng: &mut R) -> StrictSeries1 {
    let top = ring.truncation_degree();
    let coeffs: Vec<_> = (2..=truncation)
        .map(|n| (n, random_element(ring, rng, top, 3)))
        .collect();
    StrictSeries1::from_higher(ring, truncation, coeffs).expect("exponents start at 2")
}

/// A ring map sending each generator to a random element of `target`.
pub fn random_hom<R: Rng + ?Sized>(source: &Ring, target: &Ring, rng: &mut R) -> RingHom {
    let top = target.truncation_degree();
    let assignments = (0..source.num_generators())
        .map(|_| random_element(target, rng, top, 4))
        .collect();
    RingHom::new(source, target, assignments).expect("assignments live in the target")
}
