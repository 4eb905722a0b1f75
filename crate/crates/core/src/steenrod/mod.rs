//! Strict automorphisms of the additive formal group law and the Hopf
//! algebra that corepresents them.
//!
//! In characteristic 2 a strict series is additive exactly when it is
//! supported on the exponents `2^i`, so a point is a list of coefficients
//! `f_1, f_2, …` at `x^2, x^4, …` (with `f_0 = 1` implicit). Composition and
//! inversion of these lists are computed in closed form; feeding in the
//! generic point over `GF(2)[ξ_1, …, ξ_k]` and reading off coefficients
//! yields the coproduct and antipode of the corepresenting Hopf algebra.
//!
//! Side convention: in `Δ(ξ_n)` the outer (post-composed) factor sits in
//! the left tensor slot. See [`CONVENTION`].

pub mod oracle;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgl::{is_endomorphism, FormalGroupLaw};
use crate::hom::RingHom;
use crate::random::random_element;
use crate::ring::{same_ring, GeneratorSpec, Ring, RingDescriptor, RingElement};
use crate::series::{Series1, StrictSeries1};
use crate::tensor::{TensorElement, TensorRing};

pub use oracle::{milnor_oracle_compare, naive_coproduct, OracleEntry, OracleReport};

/// Echoed in every report that prints a coproduct.
pub const CONVENTION: &str = "outer-left";

/// Number of levels `i ≥ 1` with `2^i ≤ truncation`.
pub fn levels(truncation: u32) -> usize {
    if truncation < 2 {
        0
    } else {
        (31 - truncation.leading_zeros()) as usize
    }
}

/// A strict series supported on 2-power exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveStrictSeries {
    underlying: StrictSeries1,
}

impl AdditiveStrictSeries {
    /// Validates support and the endomorphism identity against `x + y`.
    pub fn new(series: StrictSeries1) -> Result<Self> {
        let add = FormalGroupLaw::additive(series.ring(), series.truncation());
        let check = is_endomorphism(&series, &add)?;
        if let Some(d) = check.failing_degree {
            return Err(Error::NotAdditive { degree: d });
        }
        if let Some(n) = series.support().into_iter().find(|n| !n.is_power_of_two()) {
            return Err(Error::NotAdditive { degree: n });
        }
        Ok(AdditiveStrictSeries { underlying: series })
    }

    /// `x + Σ f_i x^{2^i}` from `f_1, f_2, …`; 2-power support makes the
    /// endomorphism identity automatic, so nothing is rechecked.
    fn from_levels_unchecked(ring: &Ring, truncation: u32, coeffs: &[RingElement]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (1u32 << (i + 1), c.clone()));
        AdditiveStrictSeries {
            underlying: StrictSeries1::from_higher(ring, truncation, terms).expect("2-power exponents"),
        }
    }

    pub fn identity(ring: &Ring, truncation: u32) -> Self {
        AdditiveStrictSeries {
            underlying: StrictSeries1::identity(ring, truncation),
        }
    }

    pub fn series(&self) -> &StrictSeries1 {
        &self.underlying
    }

    pub fn into_series(self) -> StrictSeries1 {
        self.underlying
    }

    pub fn ring(&self) -> &Ring {
        self.underlying.ring()
    }

    pub fn truncation(&self) -> u32 {
        self.underlying.truncation()
    }

    /// Coefficients at `x^{2^i}` for `i = 1 ..= levels`.
    pub fn level_coefficients(&self) -> Vec<RingElement> {
        (1..=levels(self.truncation()))
            .map(|i| self.underlying.coeff(1 << i))
            .collect()
    }

    fn all_levels(&self) -> Vec<RingElement> {
        let mut v = vec![RingElement::one(self.ring())];
        v.extend(self.level_coefficients());
        v
    }
}

/// Builds a point from its coefficients at `x^2, x^4, …`. Missing trailing
/// coefficients are zero.
pub fn make_additive(ring: &Ring, truncation: u32, coeffs: &[RingElement]) -> Result<AdditiveStrictSeries> {
    let l = levels(truncation);
    if coeffs.len() > l {
        return Err(Error::ArityMismatch {
            expected: l,
            got: coeffs.len(),
        });
    }
    if coeffs.iter().any(|c| !same_ring(c.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (1u32 << (i + 1), c.clone()));
    AdditiveStrictSeries::new(StrictSeries1::from_higher(ring, truncation, terms)?)
}

fn check_pair(f: &AdditiveStrictSeries, g: &AdditiveStrictSeries) -> Result<()> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.truncation() != g.truncation() {
        return Err(Error::TruncationMismatch {
            left: f.truncation(),
            right: g.truncation(),
        });
    }
    Ok(())
}

/// `f ∘ g` by `h_n = Σ_{i+j=n} f_j · g_i^{2^j}`.
pub fn compose_aut(f: &AdditiveStrictSeries, g: &AdditiveStrictSeries) -> Result<AdditiveStrictSeries> {
    check_pair(f, g)?;
    let (fl, gl) = (f.all_levels(), g.all_levels());
    let ring = f.ring();
    let h: Vec<RingElement> = (1..fl.len())
        .map(|n| {
            let mut acc = RingElement::zero(ring);
            for j in 0..=n {
                let term = &fl[j] * &gl[n - j].frobenius(j as u32);
                acc.add_assign_ref(&term);
            }
            acc
        })
        .collect();
    Ok(AdditiveStrictSeries::from_levels_unchecked(ring, f.truncation(), &h))
}

/// The inverse point: `g_n = Σ_{j=1}^{n} f_j · g_{n-j}^{2^j}`.
pub fn invert_aut(f: &AdditiveStrictSeries) -> AdditiveStrictSeries {
    let fl = f.all_levels();
    let ring = f.ring();
    let mut g = vec![RingElement::one(ring)];
    for n in 1..fl.len() {
        let mut acc = RingElement::zero(ring);
        for j in 1..=n {
            acc.add_assign_ref(&(&fl[j] * &g[n - j].frobenius(j as u32)));
        }
        g.push(acc);
    }
    AdditiveStrictSeries::from_levels_unchecked(ring, f.truncation(), &g[1..])
}

/// `GF(2)[ξ_1, …, ξ_k]` with `|ξ_i| = 2^i - 1`.
pub fn dual_steenrod_ring(k: usize, truncation: u32) -> Result<Ring> {
    let needed = 1u32 << k;
    if truncation < needed {
        return Err(Error::TruncationTooSmall {
            needed,
            got: truncation,
        });
    }
    RingDescriptor::new(
        (1..=k)
            .map(|i| GeneratorSpec::new(format!("xi{i}"), (1u32 << i) - 1))
            .collect(),
        truncation,
    )
}

/// The point whose coefficients are the generators themselves.
pub fn generic_point(ring: &Ring, truncation: u32) -> AdditiveStrictSeries {
    let coeffs: Vec<_> = (0..ring.num_generators())
        .map(|i| RingElement::generator(ring, i))
        .collect();
    AdditiveStrictSeries::from_levels_unchecked(ring, truncation, &coeffs)
}

fn check_levels(ring: &Ring, truncation: u32) -> Result<()> {
    let k = ring.num_generators();
    if levels(truncation) < k {
        return Err(Error::TruncationTooSmall {
            needed: 1 << k,
            got: truncation,
        });
    }
    Ok(())
}

/// `Δ(ξ_n)` for every generator: coefficient of `x^{2^n}` in `f ∘ g` where
/// `f` has coefficients `ξ_j ⊗ 1` and `g` has `1 ⊗ ξ_i`.
pub fn derive_coproduct(ring: &Ring) -> Result<Vec<TensorElement>> {
    let t = ring.truncation_degree();
    check_levels(ring, t)?;
    let tr = TensorRing::power(ring, 2);
    let outer: Vec<_> = (0..ring.num_generators())
        .map(|i| tr.embed(0, &RingElement::generator(ring, i)))
        .collect::<Result<_>>()?;
    let inner: Vec<_> = (0..ring.num_generators())
        .map(|i| tr.embed(1, &RingElement::generator(ring, i)))
        .collect::<Result<_>>()?;
    let f = AdditiveStrictSeries::from_levels_unchecked(tr.flat(), t, &outer);
    let g = AdditiveStrictSeries::from_levels_unchecked(tr.flat(), t, &inner);
    let h = compose_aut(&f, &g)?;
    (1..=ring.num_generators())
        .map(|n| tr.unflatten(&h.series().coeff(1 << n)))
        .collect()
}

/// `c(ξ_n)`: coefficients of the inverse of the generic point.
pub fn derive_antipode(ring: &Ring) -> Result<Vec<RingElement>> {
    let t = ring.truncation_degree();
    check_levels(ring, t)?;
    let inv = invert_aut(&generic_point(ring, t));
    Ok(inv.level_coefficients().into_iter().take(ring.num_generators()).collect())
}

/// Coproduct and antipode tables for `GF(2)[ξ_1, …, ξ_k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSteenrodPresentation {
    ring: Ring,
    coproduct: Vec<TensorElement>,
    antipode: Vec<RingElement>,
}

impl DualSteenrodPresentation {
    /// Derives both tables; truncation defaults to `2^k`.
    pub fn derive(k: usize, truncation: Option<u32>) -> Result<Self> {
        let ring = dual_steenrod_ring(k, truncation.unwrap_or(1 << k))?;
        let coproduct = derive_coproduct(&ring)?;
        let antipode = derive_antipode(&ring)?;
        Ok(DualSteenrodPresentation {
            ring,
            coproduct,
            antipode,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.ring.num_generators()
    }

    pub fn truncation(&self) -> u32 {
        self.ring.truncation_degree()
    }

    /// `Δ(ξ_n)` for `n = 1 ..= k` at index `n - 1`.
    pub fn coproduct(&self) -> &[TensorElement] {
        &self.coproduct
    }

    pub fn antipode(&self) -> &[RingElement] {
        &self.antipode
    }

    /// Replaces one coproduct entry; for mutation testing of the checks.
    pub fn with_coproduct_entry(mut self, n: usize, value: TensorElement) -> Self {
        self.coproduct[n - 1] = value;
        self
    }

    pub fn with_antipode_entry(mut self, n: usize, value: RingElement) -> Self {
        self.antipode[n - 1] = value;
        self
    }

    pub fn generator_name(&self, n: usize) -> &str {
        &self.ring.generators()[n - 1].name
    }
}

/// One identity checked by [`verify_hopf`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfCheck {
    pub identity: String,
    pub subject: String,
    pub degree: u32,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub checks: Vec<HopfCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &HopfCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn compare(identity: &str, subject: &str, degree: u32, lhs: &RingElement, rhs: &RingElement) -> HopfCheck {
    let diff = lhs + rhs;
    HopfCheck {
        identity: identity.to_string(),
        subject: subject.to_string(),
        degree,
        passed: diff.is_zero(),
        residual: (!diff.is_zero()).then(|| diff.to_string()),
    }
}

/// Number of random products checked for multiplicativity of `Δ`.
pub const RANDOM_PRODUCTS: usize = 8;

/// Checks, per generator: coassociativity, both counit laws, both antipode
/// convolution identities, the involution `c ∘ c = id` and homogeneity of
/// the tables; then multiplicativity of `Δ` on seeded random products.
pub fn verify_hopf(p: &DualSteenrodPresentation, seed: u64) -> Result<HopfReport> {
    let ring = &p.ring;
    let k = ring.num_generators();
    let t2 = TensorRing::power(ring, 2);
    let t3 = TensorRing::power(ring, 3);
    let gen = |i: usize| RingElement::generator(ring, i);

    let delta = RingHom::new(
        ring,
        t2.flat(),
        p.coproduct.iter().map(|d| t2.flatten(d)).collect::<Result<_>>()?,
    )?;
    // Δ ⊗ id and id ⊗ Δ as maps R⊗R → R⊗R⊗R
    let mut delta_id = Vec::with_capacity(2 * k);
    let mut id_delta = Vec::with_capacity(2 * k);
    for d in &p.coproduct {
        delta_id.push(t3.embed_tensor(0, 1, d)?);
        id_delta.push(t3.embed(0, &gen(delta_id.len() - 1))?);
    }
    for (i, d) in p.coproduct.iter().enumerate() {
        delta_id.push(t3.embed(2, &gen(i))?);
        id_delta.push(t3.embed_tensor(1, 2, d)?);
    }
    let delta_id = RingHom::new(t2.flat(), t3.flat(), delta_id)?;
    let id_delta = RingHom::new(t2.flat(), t3.flat(), id_delta)?;

    let zero = RingElement::zero(ring);
    let gens: Vec<_> = (0..k).map(gen).collect();
    let halves = |left: Vec<RingElement>, right: Vec<RingElement>| {
        RingHom::new(t2.flat(), ring, left.into_iter().chain(right).collect())
    };
    let eps_id = halves(vec![zero.clone(); k], gens.clone())?;
    let id_eps = halves(gens.clone(), vec![zero.clone(); k])?;
    let c_id = halves(p.antipode.clone(), gens.clone())?;
    let id_c = halves(gens.clone(), p.antipode.clone())?;
    let antipode = RingHom::new(ring, ring, p.antipode.clone())?;

    let per_generator: Vec<Vec<HopfCheck>> = (1..=k)
        .into_par_iter()
        .map(|n| -> Result<Vec<HopfCheck>> {
            let name = p.generator_name(n);
            let xi = gen(n - 1);
            let degree = ring.generator_degree(n - 1);
            let d = delta.apply(&xi)?;
            let mut out = vec![
                compare("coassociativity", name, degree, &delta_id.apply(&d)?, &id_delta.apply(&d)?),
                compare("left-counit", name, degree, &eps_id.apply(&d)?, &xi),
                compare("right-counit", name, degree, &id_eps.apply(&d)?, &xi),
                compare("left-antipode", name, degree, &c_id.apply(&d)?, &zero),
                compare("right-antipode", name, degree, &id_c.apply(&d)?, &zero),
                compare("antipode-involution", name, degree, &antipode.apply(&p.antipode[n - 1])?, &xi),
            ];
            let graded = p.coproduct[n - 1].homogeneous_degree() == Some(degree)
                && p.antipode[n - 1].homogeneous_degree() == Some(degree);
            out.push(HopfCheck {
                identity: "grading".into(),
                subject: name.to_string(),
                degree,
                passed: graded,
                residual: (!graded).then(|| format!("Δ = {}; c = {}", p.coproduct[n - 1], p.antipode[n - 1])),
            });
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut checks: Vec<HopfCheck> = per_generator.into_iter().flatten().collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = ring.truncation_degree() / 2;
    for trial in 0..if k == 0 { 0 } else { RANDOM_PRODUCTS } {
        let u = random_element(ring, &mut rng, half, 3);
        let v = random_element(ring, &mut rng, half, 3);
        let uv = &u * &v;
        let du = t2.unflatten(&delta.apply(&u)?)?;
        let dv = t2.unflatten(&delta.apply(&v)?)?;
        let product = t2.flatten(&du.checked_mul(&dv)?)?;
        let degree = uv.max_degree().unwrap_or(0);
        checks.push(compare(
            "multiplicativity",
            &format!("random pair {trial}: ({u})·({v})"),
            degree,
            &delta.apply(&uv)?,
            &product,
        ));
    }
    Ok(HopfReport { checks })
}

/// The series `x + Σ ξ_i x^{2^i}` as a plain series, for cross-checks.
pub fn generic_series(ring: &Ring, truncation: u32) -> Series1 {
    generic_point(ring, truncation).into_series().into_series()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::compose1;
    use std::collections::BTreeSet;

    fn poly(gens: &[(&str, u32)], n: u32) -> Ring {
        RingDescriptor::polynomial(gens, n).unwrap()
    }

    #[test]
    fn make_additive_examples() {
        let r = dual_steenrod_ring(2, 4).unwrap();
        let id = make_additive(&r, 4, &[]).unwrap();
        assert_eq!(id, AdditiveStrictSeries::identity(&r, 4));
        let p = make_additive(&r, 4, &[RingElement::generator(&r, 0)]).unwrap();
        assert_eq!(p.series().to_text(), "x + xi1*x^2");
        let cube = StrictSeries1::parse(&r, 4, "x + x^3").unwrap();
        assert_eq!(AdditiveStrictSeries::new(cube), Err(Error::NotAdditive { degree: 3 }));
        assert!(matches!(
            make_additive(&r, 4, &vec![RingElement::zero(&r); 3]),
            Err(Error::ArityMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn closed_form_matches_series_composition() {
        let q = poly(&[("c", 1)], 16);
        let c = RingElement::generator(&q, 0);
        let f = make_additive(&q, 8, std::slice::from_ref(&c)).unwrap();
        let h = compose_aut(&f, &f).unwrap();
        let direct = compose1(f.series(), f.series()).unwrap();
        assert_eq!(h.series().as_series(), &direct);
        // x^2: c + c = 0; x^4: c · c^2
        assert!(h.series().coeff(2).is_zero());
        assert_eq!(h.series().coeff(4).to_string(), "c^3");
        assert!(compose_aut(&AdditiveStrictSeries::identity(&q, 8), &f).unwrap() == f);
    }

    #[test]
    fn generic_composition_degree_two() {
        let r = poly(&[("u1", 1), ("v1", 1)], 8);
        let f = make_additive(&r, 4, &[RingElement::generator(&r, 0)]).unwrap();
        let g = make_additive(&r, 4, &[RingElement::generator(&r, 1)]).unwrap();
        assert_eq!(compose_aut(&f, &g).unwrap().series().coeff(2).to_string(), "u1 + v1");
    }

    #[test]
    fn inversion_examples() {
        let r = dual_steenrod_ring(2, 4).unwrap();
        let id = AdditiveStrictSeries::identity(&r, 4);
        assert_eq!(invert_aut(&id), id);
        let f = make_additive(&r, 4, &[RingElement::generator(&r, 0)]).unwrap();
        assert_eq!(invert_aut(&f).series().to_text(), "x + xi1*x^2 + xi1^3*x^4");
        let g = generic_point(&r, 4);
        let inv = invert_aut(&g);
        assert_eq!(inv.series().coeff(2).to_string(), "xi1");
        assert_eq!(inv.series().coeff(4).to_string(), "xi1^3 + xi2");
        assert_eq!(compose_aut(&g, &inv).unwrap(), id);
        assert_eq!(compose_aut(&inv, &g).unwrap(), id);
    }

    #[test]
    fn coproduct_low_generators() {
        let p = DualSteenrodPresentation::derive(2, None).unwrap();
        assert_eq!(p.coproduct()[0].to_string(), "1 ⊗ xi1 + xi1 ⊗ 1");
        // outer-left: the ξ_1 from the outer factor multiplies ξ_1^2 of the inner
        assert_eq!(p.coproduct()[1].to_string(), "1 ⊗ xi2 + xi1 ⊗ xi1^2 + xi2 ⊗ 1");
    }

    #[test]
    fn antipode_low_generators() {
        let p = DualSteenrodPresentation::derive(3, None).unwrap();
        let c: Vec<String> = p.antipode().iter().map(|e| e.to_string()).collect();
        assert_eq!(c[0], "xi1");
        assert_eq!(c[1], "xi1^3 + xi2");
        let expected = RingElement::parse(p.ring(), "xi3 + xi1*xi2^2 + xi1^4*xi2 + xi1^7").unwrap();
        assert_eq!(p.antipode()[2], expected);
    }

    #[test]
    fn counit_recovers_left_factor() {
        let p = DualSteenrodPresentation::derive(3, None).unwrap();
        let r = p.ring();
        let zero = RingHom::zero(r, r);
        let id = RingHom::identity(r);
        for (i, d) in p.coproduct().iter().enumerate() {
            let killed = d.map(&id, &zero).unwrap();
            assert_eq!(killed, TensorElement::pure(&RingElement::generator(r, i), &RingElement::one(r)));
        }
    }

    #[test]
    fn hopf_axioms_small() {
        for k in 0..=3 {
            let p = DualSteenrodPresentation::derive(k, None).unwrap();
            let report = verify_hopf(&p, 11).unwrap();
            assert!(report.passed(), "k = {k}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn corrupted_table_fails_coassociativity_at_degree_three() {
        let p = DualSteenrodPresentation::derive(3, None).unwrap();
        let r = p.ring().clone();
        let xi2 = RingElement::generator(&r, 1);
        let flip = TensorElement::pure(&xi2, &RingElement::one(&r));
        let bad = p.coproduct()[1].checked_add(&flip).unwrap();
        let report = verify_hopf(&p.with_coproduct_entry(2, bad), 11).unwrap();
        let first = report
            .failures()
            .filter(|c| c.identity == "coassociativity")
            .min_by_key(|c| c.degree)
            .unwrap();
        assert_eq!((first.subject.as_str(), first.degree), ("xi2", 3));
        assert_eq!(first.residual.as_deref(), Some("xi1#0*xi1#1^2"));
    }

    #[test]
    fn dropping_the_cross_term_breaks_the_antipode() {
        // the primitive table is coassociative, so only the antipode notices
        let p = DualSteenrodPresentation::derive(2, None).unwrap();
        let r = p.ring().clone();
        let prim = TensorElement::pure(&RingElement::generator(&r, 1), &RingElement::one(&r))
            .checked_add(&TensorElement::pure(&RingElement::one(&r), &RingElement::generator(&r, 1)))
            .unwrap();
        let report = verify_hopf(&p.with_coproduct_entry(2, prim), 3).unwrap();
        let failed: BTreeSet<_> = report.failures().map(|c| c.identity.as_str()).collect();
        assert!(failed.contains("left-antipode") && !failed.contains("coassociativity"));
    }

    #[test]
    fn truncation_too_small() {
        assert_eq!(
            DualSteenrodPresentation::derive(3, Some(7)),
            Err(Error::TruncationTooSmall { needed: 8, got: 7 })
        );
        let p = DualSteenrodPresentation::derive(0, None).unwrap();
        assert!(p.coproduct().is_empty() && p.antipode().is_empty());
    }
}
