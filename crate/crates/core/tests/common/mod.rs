#![allow(dead_code)]

pub mod laws;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wfcoalg::{Carrier, Coalgebra, ConstSet, FValue, FunctorExpr, Limits};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random grammar functor of depth at most `depth`.
pub fn functor(rng: &mut impl Rng, depth: usize, allow_r: bool) -> FunctorExpr {
    let leaf = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..if allow_r { 5 } else { 4 }) {
        0 | 1 => FunctorExpr::Id,
        2 => FunctorExpr::constant(1),
        3 => FunctorExpr::constant(2),
        _ => FunctorExpr::R,
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    match rng.gen_range(0..4) {
        0 => FunctorExpr::sum(vec![
            functor(rng, depth - 1, allow_r),
            functor(rng, depth - 1, allow_r),
        ]),
        1 => FunctorExpr::prod(vec![
            functor(rng, depth - 1, allow_r),
            functor(rng, depth - 1, allow_r),
        ]),
        2 => FunctorExpr::exp(
            ConstSet::named("Sigma", Carrier::new(["a", "b"]).unwrap()),
            functor(rng, depth - 1, allow_r),
        ),
        _ => FunctorExpr::pow(functor(rng, depth - 1, allow_r)),
    }
}

/// A random functor with `|F n|` small enough to enumerate, and nonempty.
pub fn small_functor(rng: &mut impl Rng, n: usize, max_size: u128, allow_r: bool) -> FunctorExpr {
    loop {
        let f = functor(rng, 2, allow_r);
        match f.cardinality(n) {
            Some(k) if k > 0 && k <= max_size => return f,
            _ => continue,
        }
    }
}

/// A coalgebra with structure values drawn uniformly from `F A`.
pub fn coalgebra(rng: &mut impl Rng, f: &FunctorExpr, n: usize) -> Coalgebra {
    let carrier = Carrier::range(n);
    let values = f.eval_obj(&carrier, Limits::default().max_enum).unwrap();
    let structure = (0..n)
        .map(|_| values.choose(rng).expect("F A is nonempty").clone())
        .collect();
    Coalgebra::new(f.clone(), carrier, structure).unwrap()
}

/// A coalgebra where state `k` only points at states of a random ranking
/// below it, so it is well-founded whenever every state finds a value.
pub fn wellfounded_coalgebra(rng: &mut impl Rng, f: &FunctorExpr, n: usize) -> Option<Coalgebra> {
    let carrier = Carrier::range(n);
    let values = f.eval_obj(&carrier, Limits::default().max_enum).unwrap();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let structure = (0..n)
        .map(|a| {
            let below: Vec<&FValue> = values
                .iter()
                .filter(|v| v.support().iter().all(|&b| rank[b] < rank[a]))
                .collect();
            below.choose(rng).map(|v| (*v).clone())
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Coalgebra::new(f.clone(), carrier, structure).unwrap())
}
