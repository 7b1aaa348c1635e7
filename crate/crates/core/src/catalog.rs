//! Worked examples: graphs, automata, the `R` counterexample and the classic
//! divide-and-conquer schemes.

use std::collections::HashMap;

use crate::coalgebra::Coalgebra;
use crate::error::Result;
use crate::finset::Carrier;
use crate::functor::{ConstSet, FValue, FunctorExpr};
use crate::recursion::{hylo_with, para_hylo_with};

fn set(items: &[usize]) -> FValue {
    FValue::Set(items.iter().map(|&i| FValue::Id(i)).collect())
}

fn halt() -> FValue {
    FValue::Inj(1, Box::new(FValue::Const(0)))
}

/// `a -> b`, `c <-> d` as a powerset coalgebra.
pub fn graph_g() -> Coalgebra {
    Coalgebra::new(
        FunctorExpr::pow(FunctorExpr::Id),
        Carrier::new(["a", "b", "c", "d"]).expect("distinct"),
        vec![set(&[1]), set(&[]), set(&[3]), set(&[2])],
    )
    .expect("well formed")
}

/// A single vertex with a self-loop.
pub fn self_loop() -> Coalgebra {
    Coalgebra::new(
        FunctorExpr::pow(FunctorExpr::Id),
        Carrier::new(["x"]).expect("distinct"),
        vec![set(&[0])],
    )
    .expect("well formed")
}

/// `C = {0,1}` with `γ(0) = γ(1) = (0,1)` for the functor `R`: recursive but
/// neither well-founded nor parametrically recursive.
pub fn r_coalgebra() -> Coalgebra {
    Coalgebra::new(
        FunctorExpr::R,
        Carrier::range(2),
        vec![FValue::Pair(0, 1), FValue::Pair(0, 1)],
    )
    .expect("well formed")
}

/// `n ↦ n-1` on `{0..n-1}` for `F X = X + 1`, halting at `0`.
pub fn predecessor(n: usize) -> Coalgebra {
    let f = FunctorExpr::sum(vec![FunctorExpr::Id, FunctorExpr::constant(1)]);
    let structure = (0..n)
        .map(|k| {
            if k == 0 {
                halt()
            } else {
                FValue::Inj(0, Box::new(FValue::Id(k - 1)))
            }
        })
        .collect();
    Coalgebra::new(f, Carrier::range(n), structure).expect("well formed")
}

/// `n ↦ (n-1, n-2)` on `{0..n-1}` for `F X = X × X + 1`, halting at `0` and `1`.
pub fn fibonacci_coalgebra(n: usize) -> Coalgebra {
    let f = FunctorExpr::sum(vec![
        FunctorExpr::prod(vec![FunctorExpr::Id, FunctorExpr::Id]),
        FunctorExpr::constant(1),
    ]);
    let structure = (0..n)
        .map(|k| {
            if k < 2 {
                halt()
            } else {
                FValue::Inj(
                    0,
                    Box::new(FValue::Tuple(vec![FValue::Id(k - 1), FValue::Id(k - 2)])),
                )
            }
        })
        .collect();
    Coalgebra::new(f, Carrier::range(n), structure).expect("well formed")
}

/// `0!, ..., n!` via parametric recursion over the predecessor coalgebra:
/// `x_0 = 1`, `x_k = x_{k-1} · k`.
pub fn factorials(n: usize) -> Result<Vec<u64>> {
    para_hylo_with(&predecessor(n + 1), |v: FValue<u64>, k| match v {
        FValue::Inj(0, prev) => match *prev {
            FValue::Id(x) => x * k as u64,
            _ => unreachable!("X + 1 shape"),
        },
        _ => 1,
    })
}

/// `F_0, ..., F_n` with `F_0 = a0`, `F_1 = a1`, by parametric recursion.
pub fn fibonacci(n: usize, a0: u64, a1: u64) -> Result<Vec<u64>> {
    para_hylo_with(&fibonacci_coalgebra(n + 1), |v: FValue<u64>, k| match v {
        FValue::Inj(0, pair) => match *pair {
            FValue::Tuple(xs) => match (&xs[0], &xs[1]) {
                (FValue::Id(i), FValue::Id(j)) => i + j,
                _ => unreachable!("X × X shape"),
            },
            _ => unreachable!("X × X shape"),
        },
        _ => match k {
            0 => a0,
            1 => a1,
            _ => 0,
        },
    })
}

/// A three-state deterministic automaton over `{a,b}` for `F X = 2 × X^Sigma`.
pub fn automaton() -> Coalgebra {
    let sigma = ConstSet::named("Sigma", Carrier::new(["a", "b"]).expect("distinct"));
    let f = FunctorExpr::prod(vec![
        FunctorExpr::constant(2),
        FunctorExpr::exp(sigma, FunctorExpr::Id),
    ]);
    let state = |accept: usize, on_a: usize, on_b: usize| {
        FValue::Tuple(vec![
            FValue::Const(accept),
            FValue::Func(vec![FValue::Id(on_a), FValue::Id(on_b)]),
        ])
    };
    Coalgebra::new(
        f,
        Carrier::new(["p", "q", "r"]).expect("distinct"),
        vec![state(0, 1, 0), state(1, 2, 0), state(0, 2, 2)],
    )
    .expect("well formed")
}

/// A labelled transition system for `F X = P(Sigma × X)`:
/// `s0 -a-> s1`, `s0 -b-> s2`, `s1 -a-> s2`, `s3 -a-> s3`.
pub fn lts() -> Coalgebra {
    let sigma = ConstSet::named("Sigma", Carrier::new(["a", "b"]).expect("distinct"));
    let f = FunctorExpr::pow(FunctorExpr::prod(vec![
        FunctorExpr::Const(sigma),
        FunctorExpr::Id,
    ]));
    let step = |moves: &[(usize, usize)]| {
        FValue::Set(
            moves
                .iter()
                .map(|&(l, t)| FValue::Tuple(vec![FValue::Const(l), FValue::Id(t)]))
                .collect(),
        )
    };
    Coalgebra::new(
        f,
        Carrier::new(["s0", "s1", "s2", "s3"]).expect("distinct"),
        vec![
            step(&[(0, 1), (1, 2)]),
            step(&[(0, 2)]),
            step(&[]),
            step(&[(0, 3)]),
        ],
    )
    .expect("well formed")
}

/// Quicksort as a hylomorphism of `qsplit` and `qmerge` for
/// `F X = 1 + A × X × X`, over all lists up to a fixed length.
#[derive(Debug, Clone)]
pub struct Quicksort {
    pub letters: Carrier,
    pub lists: Vec<Vec<usize>>,
    pub coalgebra: Coalgebra,
    index: HashMap<Vec<usize>, usize>,
}

/// Renders a list of letters as `1.2.2`, the empty list as `nil`.
pub fn list_label(letters: &Carrier, list: &[usize]) -> String {
    if list.is_empty() {
        "nil".to_owned()
    } else {
        list.iter()
            .map(|&a| letters.label(a))
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl Quicksort {
    pub fn new(letters: Carrier, max_len: usize) -> Self {
        let mut lists: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier = lists.clone();
        for _ in 0..max_len {
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    letters.elements().map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            lists.extend(frontier.iter().cloned());
        }
        let index: HashMap<Vec<usize>, usize> = lists
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let functor = Quicksort::functor(&letters);
        let structure = lists
            .iter()
            .map(|w| match w.split_first() {
                None => FValue::Inj(0, Box::new(FValue::Const(0))),
                Some((&a, rest)) => {
                    let low: Vec<usize> = rest.iter().copied().filter(|&x| x <= a).collect();
                    let high: Vec<usize> = rest.iter().copied().filter(|&x| x > a).collect();
                    FValue::Inj(
                        1,
                        Box::new(FValue::Tuple(vec![
                            FValue::Const(a),
                            FValue::Id(index[&low]),
                            FValue::Id(index[&high]),
                        ])),
                    )
                }
            })
            .collect();
        let carrier = Carrier::new(lists.iter().map(|w| list_label(&letters, w)))
            .expect("lists are distinct");
        let coalgebra = Coalgebra::new(functor, carrier, structure).expect("well formed");
        Quicksort {
            letters,
            lists,
            coalgebra,
            index,
        }
    }

    pub fn functor(letters: &Carrier) -> FunctorExpr {
        FunctorExpr::sum(vec![
            FunctorExpr::constant(1),
            FunctorExpr::prod(vec![
                FunctorExpr::Const(ConstSet::named("A", letters.clone())),
                FunctorExpr::Id,
                FunctorExpr::Id,
            ]),
        ])
    }

    /// `qsort = qmerge ∘ F qsort ∘ qsplit` on every list of the carrier.
    pub fn sort_all(&self) -> Result<Vec<Vec<usize>>> {
        hylo_with(&self.coalgebra, |v: FValue<Vec<usize>>| match v {
            FValue::Inj(1, node) => match *node {
                FValue::Tuple(mut parts) => {
                    let (FValue::Id(high), FValue::Id(mut low), FValue::Const(a)) = (
                        parts.pop().expect("3"),
                        parts.pop().expect("3"),
                        parts.pop().expect("3"),
                    ) else {
                        unreachable!("A × X × X shape")
                    };
                    low.push(a);
                    low.extend(high);
                    low
                }
                _ => unreachable!("A × X × X shape"),
            },
            _ => Vec::new(),
        })
    }

    /// Sorts one list; `None` if it is longer than the carrier allows.
    pub fn sort(&self, input: &[usize]) -> Result<Option<Vec<usize>>> {
        let Some(&i) = self.index.get(input) else {
            return Ok(None);
        };
        Ok(Some(self.sort_all()?.swap_remove(i)))
    }

    pub fn index_of(&self, list: &[usize]) -> Option<usize> {
        self.index.get(list).copied()
    }
}
