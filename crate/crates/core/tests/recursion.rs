mod common;

use proptest::prelude::*;
use rand::Rng;

use wfcoalg::catalog;
use wfcoalg::{
    find_homs, find_para_homs, hylo, initial_chain, para_hylo, recursive_oracle, unfold_to_mu,
    Algebra, Carrier, ConstSet, FunctorExpr, Limits, OracleOptions, ParaAlgebra, Unfolding,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hylo_is_the_unique_solution(seed in any::<u64>(), n in 1usize..=3, k in 1usize..=3) {
        let mut rng = common::rng(seed);
        let f = common::small_functor(&mut rng, n.max(k), 200, true);
        let Some(c) = common::wellfounded_coalgebra(&mut rng, &f, n) else { return Ok(()) };
        let lim = Limits::default();
        let x = Carrier::range(k);
        let dom = f.eval_obj(&x, lim.max_enum).unwrap();
        let table: Vec<usize> = dom.iter().map(|_| rng.gen_range(0..k)).collect();
        let alg = Algebra::from_table(f.clone(), x.clone(), table, &lim).unwrap();
        let h = hylo(&c, &alg).unwrap();
        prop_assert_eq!(find_homs(&c, &alg, &lim).unwrap(), vec![h]);

        let ptable: Vec<usize> = (0..dom.len() * n).map(|_| rng.gen_range(0..k)).collect();
        let palg = ParaAlgebra::from_table(f.clone(), x, c.carrier().clone(), ptable, &lim).unwrap();
        let p = para_hylo(&c, &palg).unwrap();
        prop_assert_eq!(find_para_homs(&c, &palg, &lim).unwrap(), vec![p]);
    }
}

#[test]
fn chain_stages_are_recursive() {
    let lim = Limits::default();
    let sigma = ConstSet::named("Sigma", Carrier::new(["a", "b"]).unwrap());
    let functors = [
        FunctorExpr::R,
        FunctorExpr::sum(vec![FunctorExpr::Id, FunctorExpr::constant(1)]),
        FunctorExpr::sum(vec![
            FunctorExpr::prod(vec![FunctorExpr::Id, FunctorExpr::Id]),
            FunctorExpr::constant(1),
        ]),
        FunctorExpr::pow(FunctorExpr::Id),
        FunctorExpr::sum(vec![
            FunctorExpr::constant(1),
            FunctorExpr::exp(sigma, FunctorExpr::Id),
        ]),
    ];
    let mut checked = 0;
    for f in &functors {
        let chain = initial_chain(f, 5, &lim);
        for i in 0..chain.len() {
            let Some(stage) = chain.stage_coalgebra(i) else {
                continue;
            };
            if stage.len() > 4 {
                continue;
            }
            let verdict = recursive_oracle(&stage, &OracleOptions::new(2));
            assert!(verdict.passed(), "stage {i} of {f}");
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} stages");
}

#[test]
fn r_coalgebra_cycles_yet_maps_into_mu() {
    let r = catalog::r_coalgebra();
    let Unfolding::Cycle(report) = unfold_to_mu(&r) else {
        panic!("expected a cycle")
    };
    assert!(!report.conclusive);
    let mu = initial_chain(&FunctorExpr::R, 4, &Limits::default())
        .mu()
        .unwrap();
    let homs = wfcoalg::coalgebra_homs(&r, &mu, &Limits::default()).unwrap();
    assert_eq!(homs.len(), 1);
    assert_eq!(homs[0].render(), "[0↦d, 1↦d]");
}

#[test]
fn parametric_schemes_match_closed_forms() {
    assert_eq!(catalog::factorials(5).unwrap()[3], 6);
    assert_eq!(catalog::fibonacci(7, 0, 1).unwrap()[6], 8);
    let fib = catalog::fibonacci_coalgebra(5);
    assert!(wfcoalg::parametric_oracle(&fib, &OracleOptions::new(2)).passed());
}
