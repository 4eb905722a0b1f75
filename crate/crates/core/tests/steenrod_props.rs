use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fglab_core::random::random_element;
use fglab_core::steenrod::{compose_aut, invert_aut, levels, make_additive, AdditiveStrictSeries, DualSteenrodPresentation};
use fglab_core::{compose1, Ring, RingDescriptor, RingHom, TensorRing};

const N: u32 = 32;

fn coefficients() -> Ring {
    RingDescriptor::polynomial(&[("u", 1), ("v", 2), ("w", 3)], 40).unwrap()
}

fn random_point(r: &Ring, rng: &mut ChaCha8Rng) -> AdditiveStrictSeries {
    let coeffs: Vec<_> = (0..levels(N)).map(|_| random_element(r, rng, 4, 2)).collect();
    make_additive(r, N, &coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn group_axioms(seed in any::<u64>()) {
        let r = coefficients();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g, h) = (random_point(&r, &mut rng), random_point(&r, &mut rng), random_point(&r, &mut rng));
        let id = AdditiveStrictSeries::identity(&r, N);
        prop_assert_eq!(compose_aut(&compose_aut(&f, &g)?, &h)?, compose_aut(&f, &compose_aut(&g, &h)?)?);
        prop_assert_eq!(&compose_aut(&f, &id)?, &f);
        prop_assert_eq!(&compose_aut(&id, &f)?, &f);
        prop_assert_eq!(&compose_aut(&f, &invert_aut(&f))?, &id);
        prop_assert_eq!(&compose_aut(&invert_aut(&f), &f)?, &id);
    }

    #[test]
    fn closed_form_is_series_composition(seed in any::<u64>()) {
        let r = coefficients();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = (random_point(&r, &mut rng), random_point(&r, &mut rng));
        let h = compose_aut(&f, &g)?;
        let direct = compose1(f.series(), g.series())?;
        prop_assert!(direct.support().iter().all(|n| n.is_power_of_two()));
        prop_assert_eq!(h.series().as_series(), &direct);
        prop_assert_eq!(invert_aut(&f).into_series(), f.series().revert());
    }

    #[test]
    fn coproduct_and_antipode_are_algebra_maps(seed in any::<u64>(), k in 1usize..=4) {
        let p = DualSteenrodPresentation::derive(k, None)?;
        let r = p.ring();
        let t2 = TensorRing::power(r, 2);
        let delta = RingHom::new(r, t2.flat(), p.coproduct().iter().map(|d| t2.flatten(d)).collect::<Result<_, _>>()?)?;
        let c = RingHom::new(r, r, p.antipode().to_vec())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let top = r.truncation_degree();
        let u = random_element(r, &mut rng, top / 2, 4);
        let v = random_element(r, &mut rng, top / 2, 4);
        let uv = &u * &v;
        prop_assert_eq!(delta.apply(&uv)?, &delta.apply(&u)? * &delta.apply(&v)?);
        prop_assert_eq!(c.apply(&uv)?, &c.apply(&u)? * &c.apply(&v)?);
        prop_assert_eq!(c.apply(&c.apply(&u)?)?, u);
    }
}

#[test]
fn tables_are_homogeneous() {
    for k in 0..=5 {
        let p = DualSteenrodPresentation::derive(k, None).unwrap();
        for n in 1..=k {
            let degree = (1u32 << n) - 1;
            assert_eq!(p.coproduct()[n - 1].homogeneous_degree(), Some(degree), "Δ(xi{n})");
            assert_eq!(p.antipode()[n - 1].homogeneous_degree(), Some(degree), "c(xi{n})");
        }
    }
}

#[test]
fn tables_are_stable_under_larger_truncation() {
    let small = DualSteenrodPresentation::derive(3, None).unwrap();
    let large = DualSteenrodPresentation::derive(3, Some(24)).unwrap();
    for n in 0..3 {
        assert_eq!(small.coproduct()[n].to_string(), large.coproduct()[n].to_string());
        assert_eq!(small.antipode()[n].to_string(), large.antipode()[n].to_string());
    }
}
