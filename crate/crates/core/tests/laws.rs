mod common;

use proptest::prelude::*;
use rand::Rng;

use wfcoalg::{
    inverse_image, is_coalgebra_hom, Carrier, Coalgebra, FValue, FinMap, FunctorExpr, Limits,
    Subobject,
};

fn random_map(rng: &mut impl Rng, dom: usize, cod: usize) -> FinMap {
    let table = (0..dom).map(|_| rng.gen_range(0..cod)).collect();
    FinMap::new(Carrier::range(dom), Carrier::range(cod), table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functor_preserves_identity_and_composition(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = common::small_functor(&mut rng, 3, 400, true);
        let x = Carrier::range(3);
        let g = random_map(&mut rng, 3, 3);
        let h = random_map(&mut rng, 3, 2);
        let gh = g.then(&h).unwrap();
        for v in f.eval_obj(&x, 1000).unwrap() {
            prop_assert_eq!(&f.eval_map(&FinMap::identity(&x), &v).unwrap(), &v);
            let twice = f.eval_map(&h, &f.eval_map(&g, &v).unwrap()).unwrap();
            prop_assert_eq!(f.eval_map(&gh, &v).unwrap(), twice);
        }
    }

    #[test]
    fn laws_on_random_coalgebras(seed in any::<u64>(), n in 0usize..=4) {
        let mut rng = common::rng(seed);
        let f = common::small_functor(&mut rng, n.max(1), 300, true);
        let c = common::coalgebra(&mut rng, &f, n);
        let report = common::laws::check(&c, &mut rng);
        prop_assert!(report.violations.is_empty(), "{}", report.violations.join("\n"));
    }

    #[test]
    fn laws_on_random_wellfounded_coalgebras(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = common::rng(seed);
        let f = common::small_functor(&mut rng, n, 300, true);
        if let Some(c) = common::wellfounded_coalgebra(&mut rng, &f, n) {
            let report = common::laws::check(&c, &mut rng);
            prop_assert!(report.wellfounded);
            prop_assert!(report.violations.is_empty(), "{}", report.violations.join("\n"));
        }
    }
}

#[test]
fn r_breaks_the_pullback_equation_for_a_collapsing_map() {
    let r = wfcoalg::catalog::r_coalgebra();
    let point = Coalgebra::new(FunctorExpr::R, Carrier::range(1), vec![FValue::Dot]).unwrap();
    let f = FinMap::constant(r.carrier(), point.carrier(), 0).unwrap();
    assert!(is_coalgebra_hom(&f, &r, &point).unwrap());
    let empty = Subobject::empty(point.carrier());
    let lhs = r.next_time(&inverse_image(&f, &empty).unwrap()).unwrap();
    let rhs = inverse_image(&f, &point.next_time(&empty).unwrap()).unwrap();
    assert!(lhs.is_subset(&rhs));
    assert_eq!(lhs.render(), "{}");
    assert_eq!(rhs.render(), "{0,1}");
}

#[test]
fn r_does_not_preserve_inverse_images_concretely() {
    // the inverse image of R(∅) ⊆ R1 along R!: R2 -> R1 is all of R2,
    // while R applied to the inverse image ∅ ⊆ 2 is just {d}
    let bang = FinMap::constant(&Carrier::range(2), &Carrier::range(1), 0).unwrap();
    let lim = Limits::default();
    let over_two = FunctorExpr::R
        .eval_obj(&Carrier::range(2), lim.max_enum)
        .unwrap();
    let hits: Vec<&FValue> = over_two
        .iter()
        .filter(|v| FunctorExpr::R.eval_map(&bang, v).unwrap() == FValue::Dot)
        .collect();
    assert_eq!(hits.len(), 3);
    assert_eq!(
        FunctorExpr::R
            .eval_obj(&Carrier::empty(), lim.max_enum)
            .unwrap(),
        vec![FValue::Dot]
    );
    assert!(!FunctorExpr::R.preserves_inverse_images());
}

#[test]
fn catalog_examples_satisfy_the_laws() {
    let mut rng = common::rng(7);
    for c in [
        wfcoalg::catalog::graph_g(),
        wfcoalg::catalog::r_coalgebra(),
        wfcoalg::catalog::self_loop(),
        wfcoalg::catalog::predecessor(4),
        wfcoalg::catalog::fibonacci_coalgebra(4),
        wfcoalg::catalog::automaton(),
        wfcoalg::catalog::lts(),
    ] {
        let report = common::laws::check(&c, &mut rng);
        assert!(
            report.violations.is_empty(),
            "{}",
            report.violations.join("\n")
        );
    }
}
