//! Shared fixtures for the benchmarks.

use wfcoalg::{Carrier, Coalgebra, FValue, FunctorExpr};

/// A powerset coalgebra on `n` states: a chain `k -> {k-1, k-2}` followed by
/// a cycle of length `cycle` hanging off the top.
pub fn chain_with_cycle(n: usize, cycle: usize) -> Coalgebra {
    let total = n + cycle;
    let structure = (0..total)
        .map(|k| {
            let succ: Vec<usize> = if k < n {
                (k.saturating_sub(2)..k).collect()
            } else if k + 1 < total {
                vec![k + 1]
            } else {
                vec![n]
            };
            FValue::Set(succ.into_iter().map(FValue::Id).collect())
        })
        .collect();
    Coalgebra::new(
        FunctorExpr::pow(FunctorExpr::Id),
        Carrier::range(total),
        structure,
    )
    .expect("well formed")
}
