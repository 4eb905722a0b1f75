//! A twisted-additive model of unoriented bordism and its cooperations.
//!
//! The base ring `GF(2)[a_1, …, a_m]` (`|a_i| = i`) stands in for the
//! cooperation ring; its law is `F = b⁻¹(b(x) + b(y))` for
//! `b(x) = x + Σ a_i x^{i+1}`, so the 2-series vanishes by construction. A
//! ring map `Φ` out of the base evaluates to the strict series
//! `x + Σ Φ(a_i) x^{i+1}`, which is a strict isomorphism from `Φ_*F` to the
//! additive law.
//!
//! Evaluated series live at truncation `m + 1`, the highest exponent the
//! generators reach. At that window evaluation is a monoid homomorphism:
//! `ev(internal_compose(Φ₁, Φ₂)) = ev(Φ₁) ∘ ev(Φ₂)`, with the outer factor
//! in the left tensor slot (see [`CONVENTION`]).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fgl::{check_axioms, is_endomorphism, n_series, transport, twist_additive, FormalGroupLaw};
use crate::hom::RingHom;
use crate::ring::{same_ring, GeneratorSpec, Ring, RingDescriptor, RingElement};
use crate::series::{compose1, Series1, StrictSeries1};
use crate::tensor::{TensorElement, TensorRing};

/// Echoed in every report that prints a cooperation coproduct.
pub const CONVENTION: &str = "ev-left-outer";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BordismModel {
    base: Ring,
    mishchenko: StrictSeries1,
    law: FormalGroupLaw,
}

/// Builds the model with `m` cooperation generators at truncation `N`.
pub fn build_model(m: usize, truncation: u32) -> Result<BordismModel> {
    let needed = m as u32 + 1;
    if needed > truncation {
        return Err(Error::TruncationTooSmall {
            needed,
            got: truncation,
        });
    }
    let base = RingDescriptor::new(
        (1..=m).map(|i| GeneratorSpec::new(format!("a{i}"), i as u32)).collect(),
        truncation,
    )?;
    let mishchenko = StrictSeries1::from_higher(
        &base,
        truncation,
        (1..=m).map(|i| (i as u32 + 1, RingElement::generator(&base, i - 1))),
    )?;
    let law = twist_additive(&mishchenko)?;
    if !n_series(&law, 2).is_zero() {
        return Err(Error::ModelInconsistency("2-series of the model law is nonzero".into()));
    }
    Ok(BordismModel { base, mishchenko, law })
}

impl BordismModel {
    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn mishchenko(&self) -> &StrictSeries1 {
        &self.mishchenko
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn generators(&self) -> usize {
        self.base.num_generators()
    }

    pub fn truncation(&self) -> u32 {
        self.law.truncation()
    }

    /// Truncation of evaluated series: `m + 1`.
    pub fn window(&self) -> u32 {
        self.generators() as u32 + 1
    }

    /// `GF(2)[e]`, the ring of the orientation-class variable.
    pub fn orientation_ring(&self) -> Ring {
        RingDescriptor::polynomial(&[("e", 1)], self.truncation()).expect("single generator")
    }

    fn check_source(&self, phi: &RingHom) -> Result<()> {
        if same_ring(phi.source(), &self.base) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// `Σ_{i≥0} e^{i+1} ⊗ a_i` with `a_0 = 1`.
pub fn coaction(model: &BordismModel) -> TensorElement {
    let e_ring = model.orientation_ring();
    let e = RingElement::generator(&e_ring, 0);
    let base = model.base();
    let mut total = TensorElement::pure(&e, &RingElement::one(base));
    for i in 1..=model.generators() {
        let term = TensorElement::pure(&e.pow(i as u32 + 1), &RingElement::generator(base, i - 1));
        total = total.checked_add(&term).expect("same rings");
    }
    total
}

/// Applies `id ⊗ Φ` to the coaction and reads the result as a series in `e`.
pub fn coaction_series(model: &BordismModel, phi: &RingHom) -> Result<Series1> {
    model.check_source(phi)?;
    let e_ring = model.orientation_ring();
    let mapped = coaction(model).map(&RingHom::identity(&e_ring), phi)?;
    let mut coeffs: BTreeMap<u32, RingElement> = BTreeMap::new();
    for (l, r) in mapped.terms() {
        let c = coeffs
            .entry(l.exponent(0))
            .or_insert_with(|| RingElement::zero(phi.target()));
        c.toggle_monomial(r.clone());
    }
    Series1::from_coefficients(phi.target(), model.window(), coeffs)
}

/// The image of a ring map under evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluatedPoint {
    pub target: Ring,
    pub hom: RingHom,
    /// `x + Σ Φ(a_i) x^{i+1}` at the model's window.
    pub series: StrictSeries1,
    /// `Φ_*F` at the same window; `series` carries it to the additive law.
    pub law: FormalGroupLaw,
    /// Whether `series` is also an automorphism of the additive law.
    pub additive_automorphism: bool,
}

/// Evaluates `Φ` and certifies the image. A certification failure means the
/// model itself is inconsistent and is reported as such.
pub fn ev(model: &BordismModel, phi: &RingHom) -> Result<EvaluatedPoint> {
    model.check_source(phi)?;
    let w = model.window();
    let series = StrictSeries1::from_higher(
        phi.target(),
        w,
        (1..=model.generators()).map(|i| (i as u32 + 1, phi.assignment(i - 1).clone())),
    )?;
    let law = model.law.truncate(w).base_change(phi)?;
    let image = transport(&law, &series)?;
    if !image.is_additive() {
        return Err(Error::ModelInconsistency(format!(
            "evaluated series does not linearize the base-changed law: {image}"
        )));
    }
    let additive = FormalGroupLaw::additive(phi.target(), w);
    let additive_automorphism = is_endomorphism(&series, &additive)?.holds;
    Ok(EvaluatedPoint {
        target: phi.target().clone(),
        hom: phi.clone(),
        series,
        law,
        additive_automorphism,
    })
}

/// The ring map with `a_i ↦` coefficient of `x^{i+1}` in `φ`.
///
/// The base ring carries only cooperation generators, so `g` contributes
/// its target ring and must start at the model's base. Coefficients of `φ`
/// above `x^{m+1}` have no generator to land on and are dropped.
pub fn pair_to_ring_map(model: &BordismModel, g: &RingHom, phi: &StrictSeries1) -> Result<RingHom> {
    model.check_source(g)?;
    if !same_ring(g.target(), phi.ring()) {
        return Err(Error::RingMismatch);
    }
    let assignments = (1..=model.generators()).map(|i| phi.coeff(i as u32 + 1)).collect();
    RingHom::new(&model.base, g.target(), assignments)
}

/// `γ(φ)`: substitution `s(e) ↦ s(φ(e))` from series for `f_*F` to series
/// for `g_*F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTransport {
    phi: StrictSeries1,
    source: FormalGroupLaw,
    target: FormalGroupLaw,
}

/// Builds `γ(φ)` after certifying that `φ` carries `f_*F` onto `g_*F` at
/// `φ`'s truncation.
pub fn gamma_transport(model: &BordismModel, phi: &StrictSeries1, f: &RingHom, g: &RingHom) -> Result<GammaTransport> {
    model.check_source(f)?;
    model.check_source(g)?;
    if !same_ring(f.target(), g.target()) || !same_ring(f.target(), phi.ring()) {
        return Err(Error::RingMismatch);
    }
    let t = phi.truncation();
    if t > model.truncation() {
        return Err(Error::TruncationMismatch {
            left: t,
            right: model.truncation(),
        });
    }
    let law = model.law.truncate(t);
    let source = law.base_change(f)?;
    let target = law.base_change(g)?;
    let moved = transport(&source, phi)?;
    let diff = moved.law().checked_add(target.law())?;
    if let Some(d) = diff.lowest_degree() {
        return Err(Error::NotAnIsomorphism { degree: d });
    }
    Ok(GammaTransport { phi: phi.clone(), source, target })
}

impl GammaTransport {
    pub fn phi(&self) -> &StrictSeries1 {
        &self.phi
    }

    pub fn source_law(&self) -> &FormalGroupLaw {
        &self.source
    }

    pub fn target_law(&self) -> &FormalGroupLaw {
        &self.target
    }

    /// `s ↦ s ∘ φ`.
    pub fn apply(&self, s: &Series1) -> Result<Series1> {
        compose1(s, self.phi.as_series())
    }
}

/// `Δ(a_n)` for `n = 1 ..= m`, from the generic composite `b' ∘ b` with the
/// outer coefficients in the left slot.
pub fn cooperation_coproduct(model: &BordismModel) -> Result<Vec<TensorElement>> {
    let base = model.base();
    let tr = TensorRing::power(base, 2);
    let w = model.window();
    let side = |slot| -> Result<Series1> {
        let coeffs = (1..=model.generators())
            .map(|i| Ok((i as u32 + 1, tr.embed(slot, &RingElement::generator(base, i - 1))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(StrictSeries1::from_higher(tr.flat(), w, coeffs)?.into_series())
    };
    let h = compose1(&side(0)?, &side(1)?)?;
    (1..=model.generators())
        .map(|n| tr.unflatten(&h.coeff(n as u32 + 1)))
        .collect()
}

/// The ring map whose evaluation is `ev(Φ₁) ∘ ev(Φ₂)`, read through the
/// cooperation coproduct: `a_n ↦ μ(Φ₁ ⊗ Φ₂)(Δ a_n)`.
pub fn internal_compose(model: &BordismModel, phi1: &RingHom, phi2: &RingHom) -> Result<RingHom> {
    model.check_source(phi1)?;
    model.check_source(phi2)?;
    if !same_ring(phi1.target(), phi2.target()) {
        return Err(Error::RingMismatch);
    }
    let assignments = cooperation_coproduct(model)?
        .iter()
        .map(|d| d.map(phi1, phi2)?.multiply_out())
        .collect::<Result<_>>()?;
    RingHom::new(&model.base, phi1.target(), assignments)
}

/// Checks the model's law axioms and vanishing 2-series again, for reports.
pub fn verify_model(model: &BordismModel) -> Result<()> {
    check_axioms(model.law.law(), model.truncation())?;
    if n_series(&model.law, 2).is_zero() {
        Ok(())
    } else {
        Err(Error::ModelInconsistency("2-series of the model law is nonzero".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series2;

    fn t_ring(n: u32) -> Ring {
        RingDescriptor::polynomial(&[("t", 1)], n).unwrap()
    }

    #[test]
    fn build_examples() {
        let m0 = build_model(0, 4).unwrap();
        assert!(m0.law().is_additive());
        let m = build_model(2, 4).unwrap();
        let law = m.law().law();
        assert!(law.homogeneous_part(2).is_zero());
        let expected = Series2::parse(m.base(), 4, "a2*x^2*y + a2*x*y^2").unwrap();
        assert_eq!(law.homogeneous_part(3), expected);
        assert!(n_series(build_model(3, 8).unwrap().law(), 2).is_zero());
        assert_eq!(
            build_model(4, 4),
            Err(Error::TruncationTooSmall { needed: 5, got: 4 })
        );
    }

    #[test]
    fn coaction_terms() {
        let m = build_model(3, 4).unwrap();
        assert_eq!(coaction(&m).to_string(), "e ⊗ 1 + e^2 ⊗ a1 + e^3 ⊗ a2 + e^4 ⊗ a3");
        assert_eq!(coaction(&build_model(0, 2).unwrap()).to_string(), "e ⊗ 1");
    }

    #[test]
    fn ev_examples() {
        let m = build_model(3, 6).unwrap();
        let r = t_ring(6);
        let zero = ev(&m, &RingHom::zero(m.base(), &r)).unwrap();
        assert_eq!(zero.series, StrictSeries1::identity(&r, 4));
        let powers = RingHom::parse_assignments(m.base(), &r, "a1=t, a2=t^2, a3=t^3").unwrap();
        let p = ev(&m, &powers).unwrap();
        assert_eq!(p.series.to_text(), "x + t*x^2 + t^2*x^3 + t^3*x^4");
        assert!(!p.additive_automorphism);
        assert_eq!(&coaction_series(&m, &powers).unwrap(), p.series.as_series());
    }

    #[test]
    fn pair_round_trip() {
        let m = build_model(3, 6).unwrap();
        let r = RingDescriptor::polynomial(&[("c", 2)], 8).unwrap();
        let g = RingHom::zero(m.base(), &r);
        let id = pair_to_ring_map(&m, &g, &StrictSeries1::identity(&r, 4)).unwrap();
        assert!(id.assignments().iter().all(|a| a.is_zero()));
        let phi = StrictSeries1::parse(&r, 4, "x + c*x^3").unwrap();
        let h = pair_to_ring_map(&m, &g, &phi).unwrap();
        let shown: Vec<_> = h.assignments().iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, ["0", "c", "0"]);
        assert_eq!(ev(&m, &h).unwrap().series, phi);
    }

    #[test]
    fn coproduct_examples() {
        let m = build_model(3, 4).unwrap();
        let d = cooperation_coproduct(&m).unwrap();
        assert_eq!(d[0].to_string(), "1 ⊗ a1 + a1 ⊗ 1");
        // (b(x))^2 = x^2 + a1^2 x^4 contributes no x^3 cross term
        assert_eq!(d[1].to_string(), "1 ⊗ a2 + a2 ⊗ 1");
        assert_eq!(d[2].to_string(), "1 ⊗ a3 + a1 ⊗ a1^2 + a2 ⊗ a1 + a3 ⊗ 1");
    }

    #[test]
    fn compose_with_zero_is_neutral() {
        let m = build_model(3, 6).unwrap();
        let r = t_ring(6);
        let phi = RingHom::parse_assignments(m.base(), &r, "a1=t, a2=t^2+t, a3=t^3").unwrap();
        let zero = RingHom::zero(m.base(), &r);
        assert_eq!(internal_compose(&m, &phi, &zero).unwrap(), phi);
        assert_eq!(internal_compose(&m, &zero, &phi).unwrap(), phi);
        let both = internal_compose(&m, &phi, &phi).unwrap();
        let lhs = ev(&m, &both).unwrap().series;
        let p = ev(&m, &phi).unwrap().series;
        assert_eq!(lhs, p.compose(&p).unwrap());
    }

    #[test]
    fn gamma_identity_and_rejection() {
        let m = build_model(3, 6).unwrap();
        let r = t_ring(6);
        let f = RingHom::parse_assignments(m.base(), &r, "a1=t, a2=0, a3=t^3").unwrap();
        let gamma = gamma_transport(&m, &StrictSeries1::identity(&r, 4), &f, &f).unwrap();
        let s = Series1::parse(&r, 4, "x + t*x^2 + x^3").unwrap();
        assert_eq!(gamma.apply(&s).unwrap(), s);
        let bad = StrictSeries1::parse(&r, 4, "x + x^3").unwrap();
        assert!(matches!(
            gamma_transport(&m, &bad, &f, &f),
            Err(Error::NotAnIsomorphism { .. })
        ));
    }

    #[test]
    fn gamma_between_evaluations() {
        // ψ = b_g⁻¹ ∘ b_f carries f_*F onto g_*F
        let m = build_model(3, 6).unwrap();
        let r = t_ring(6);
        let f = RingHom::parse_assignments(m.base(), &r, "a1=t, a2=t^2, a3=0").unwrap();
        let g = RingHom::parse_assignments(m.base(), &r, "a1=0, a2=t, a3=t^2").unwrap();
        let bf = ev(&m, &f).unwrap().series;
        let bg = ev(&m, &g).unwrap().series;
        let psi = bg.revert().compose(&bf).unwrap();
        let gamma = gamma_transport(&m, &psi, &f, &g).unwrap();
        let e = Series1::identity(&r, 4);
        assert_eq!(gamma.apply(&e).unwrap(), *psi.as_series());
        let e2 = e.pow(2);
        assert_eq!(gamma.apply(&e2).unwrap(), psi.as_series().pow(2));
    }

    #[test]
    fn model_solves_to_additive() {
        let m = build_model(3, 6).unwrap();
        verify_model(&m).unwrap();
        let phi = crate::fgl::solve_iso_to_additive(m.law()).unwrap();
        assert!(transport(m.law(), &phi).unwrap().is_additive());
    }
}
