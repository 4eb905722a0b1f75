use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fglab_core::random::{random_element, random_strict};
use fglab_core::{compose1, revert, series_mul, subst2, Ring, RingDescriptor, Series1, Series2, StrictSeries1};

const N: u32 = 7;

fn ring() -> Ring {
    RingDescriptor::polynomial(&[("a1", 1), ("a2", 2)], 6).unwrap()
}

fn strict_triple(seed: u64) -> (StrictSeries1, StrictSeries1, StrictSeries1) {
    let r = ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_strict(&r, N, &mut rng), random_strict(&r, N, &mut rng), random_strict(&r, N, &mut rng))
}

fn squared_coefficients(h: &Series1) -> Series1 {
    let coeffs = h.terms().map(|(e, c)| (2 * e[0], c.square()));
    Series1::from_coefficients(h.ring(), h.truncation(), coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_and_unital(seed in any::<u64>()) {
        let (f, g, h) = strict_triple(seed);
        let (f, g, h) = (f.as_series(), g.as_series(), h.as_series());
        prop_assert_eq!(compose1(&compose1(f, g)?, h)?, compose1(f, &compose1(g, h)?)?);
        let id = Series1::identity(f.ring(), N);
        prop_assert_eq!(&compose1(f, &id)?, f);
        prop_assert_eq!(&compose1(&id, f)?, f);
    }

    #[test]
    fn reversion_inverts_on_both_sides(seed in any::<u64>()) {
        let (f, _, _) = strict_triple(seed);
        let inv = revert(&f);
        let id = StrictSeries1::identity(f.ring(), N);
        prop_assert_eq!(f.compose(&inv)?, id.clone());
        prop_assert_eq!(inv.compose(&f)?, id);
        prop_assert_eq!(revert(&inv), f);
    }

    #[test]
    fn squaring_doubles_exponents(seed in any::<u64>()) {
        let (f, _, _) = strict_triple(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = Series1::from_coefficients(f.ring(), N, [(3, random_element(f.ring(), &mut rng, 6, 3))])?;
        let h = f.as_series().checked_add(&shift)?;
        prop_assert_eq!(series_mul(&h, &h)?, squared_coefficients(&h));
        prop_assert_eq!(h.frobenius_square(), squared_coefficients(&h));
    }

    #[test]
    fn truncation_is_coherent(seed in any::<u64>(), m in 1u32..N) {
        let (f, g, _) = strict_triple(seed);
        let (fs, gs) = (f.as_series(), g.as_series());
        let (fm, gm) = (fs.truncate(m), gs.truncate(m));
        prop_assert_eq!(compose1(fs, gs)?.truncate(m), compose1(&fm, &gm)?);
        prop_assert_eq!(series_mul(fs, gs)?.truncate(m), series_mul(&fm, &gm)?);
        prop_assert_eq!(fs.checked_add(gs)?.truncate(m), fm.checked_add(&gm)?);
        prop_assert_eq!(revert(&f).truncate(m), revert(&f.truncate(m)));
        let law = Series2::additive(f.ring(), N);
        prop_assert_eq!(
            subst2(&law, fs, gs)?.truncate(m),
            subst2(&Series2::additive(f.ring(), m), &fm, &gm)?
        );
    }

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>()) {
        let (f, _, _) = strict_triple(seed);
        let s = f.as_series();
        prop_assert_eq!(&Series1::parse(s.ring(), N, &s.to_text())?, s);
        prop_assert_eq!(&Series1::from_json_terms(s.ring(), N, &s.to_json_terms())?, s);
    }
}
