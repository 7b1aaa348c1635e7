//! Built-in example documents and their demo reports.

use std::fmt::Write as _;

use wfcoalg::catalog::{self, Quicksort};
use wfcoalg::functor::quote_label;
use wfcoalg::{
    Algebra, Carrier, Coalgebra, Error, FValue, Limits, ParaAlgebra, Subobject, WitnessPolicy,
};

use crate::commands::{oracle_report, run_command, Command, Options, Report, EXIT_CAP, EXIT_HOLDS};
use crate::spec::{NamedAlgebra, NamedCoalgebra, NamedParaAlgebra, SpecDocument};

pub const NAMES: [&str; 7] = [
    "graph-g",
    "r-coalgebra",
    "quicksort",
    "factorial",
    "fibonacci",
    "automaton",
    "lts",
];

fn coalgebra_doc(
    description: &str,
    carriers: Vec<(&str, Carrier)>,
    name: &str,
    c: Coalgebra,
) -> SpecDocument {
    let carrier_name = carriers
        .iter()
        .find(|(_, k)| k == c.carrier())
        .map(|(n, _)| n.to_string())
        .expect("carrier declared");
    SpecDocument {
        description: Some(description.to_owned()),
        carriers: carriers
            .into_iter()
            .map(|(n, k)| (n.to_owned(), k))
            .collect(),
        functor: Some(c.functor().clone()),
        coalgebras: vec![NamedCoalgebra {
            name: name.to_owned(),
            carrier_name,
            coalgebra: c,
        }],
        algebras: Vec::new(),
        para_algebras: Vec::new(),
    }
}

fn labels(names: &[&str]) -> Carrier {
    Carrier::new(names.iter().copied()).expect("distinct labels")
}

fn numbers(n: usize) -> Carrier {
    Carrier::new((0..n).map(|k| k.to_string())).expect("distinct labels")
}

/// The example document behind a demo, as `--emit` prints it.
pub fn document(name: &str) -> Option<SpecDocument> {
    let limits = Limits::default();
    Some(match name {
        "graph-g" => {
            let g = catalog::graph_g();
            let mut doc = coalgebra_doc(
                "a -> b, c <-> d",
                vec![("A", g.carrier().clone())],
                "G",
                g.clone(),
            );
            let heights = numbers(3);
            // height of a finite tree, saturating at 2
            let alg = Algebra::from_fn(g.functor().clone(), heights.clone(), &limits, |v| {
                v.support()
                    .into_iter()
                    .map(|h| (h + 1).min(2))
                    .max()
                    .unwrap_or(0)
            })
            .expect("total");
            doc.carriers.push(("H".into(), heights));
            doc.algebras.push(NamedAlgebra {
                name: "height".into(),
                carrier_name: "H".into(),
                algebra: alg,
            });
            doc
        }
        "r-coalgebra" => {
            let r = catalog::r_coalgebra();
            let targets = labels(&["x", "y"]);
            let mut doc = coalgebra_doc(
                "gamma(0) = gamma(1) = (0,1) for R X = {(x,y) : x != y} + {d}",
                vec![("C", r.carrier().clone()), ("B", targets.clone())],
                "gamma",
                r.clone(),
            );
            let alg = Algebra::from_fn(r.functor().clone(), targets, &limits, |v| match v {
                FValue::Pair(_, y) => *y,
                _ => 0,
            })
            .expect("total");
            doc.algebras.push(NamedAlgebra {
                name: "E".into(),
                carrier_name: "B".into(),
                algebra: alg,
            });
            doc
        }
        "quicksort" => {
            let qs = Quicksort::new(labels(&["1", "2"]), 3);
            coalgebra_doc(
                "qsplit on lists of length at most 3 over {1,2}",
                vec![
                    ("A", qs.letters.clone()),
                    ("L", qs.coalgebra.carrier().clone()),
                ],
                "qsplit",
                qs.coalgebra,
            )
        }
        "factorial" => {
            let p = catalog::predecessor(6);
            let n = p.carrier().clone();
            let mut doc = coalgebra_doc(
                "n -> n-1 on {0..5}, halting at 0",
                vec![("N", n.clone())],
                "pred",
                p.clone(),
            );
            let alg = Algebra::from_fn(p.functor().clone(), n, &limits, |v| match v {
                FValue::Inj(0, k) => k.support().into_iter().next().map_or(0, |k| (k + 1).min(5)),
                _ => 0,
            })
            .expect("total");
            doc.algebras.push(NamedAlgebra {
                name: "succ".into(),
                carrier_name: "N".into(),
                algebra: alg,
            });
            doc
        }
        "fibonacci" => {
            let c = catalog::fibonacci_coalgebra(8);
            let n = c.carrier().clone();
            let parity = labels(&["even", "odd"]);
            let mut doc = coalgebra_doc(
                "n -> (n-1, n-2) on {0..7}, halting at 0 and 1",
                vec![("N", n.clone()), ("Parity", parity.clone())],
                "fib",
                c.clone(),
            );
            let alg =
                ParaAlgebra::from_fn(c.functor().clone(), parity, n, &limits, |v, k| match v {
                    FValue::Inj(0, pair) => match pair.as_ref() {
                        FValue::Tuple(xs) => match (&xs[0], &xs[1]) {
                            (FValue::Id(i), FValue::Id(j)) => (i + j) % 2,
                            _ => 0,
                        },
                        _ => 0,
                    },
                    _ => usize::from(k == 1),
                })
                .expect("total");
            doc.para_algebras.push(NamedParaAlgebra {
                name: "parity".into(),
                carrier_name: "Parity".into(),
                params_name: "N".into(),
                algebra: alg,
            });
            doc
        }
        "automaton" => {
            let m = catalog::automaton();
            coalgebra_doc(
                "deterministic automaton over {a,b}",
                vec![("Sigma", labels(&["a", "b"])), ("Q", m.carrier().clone())],
                "M",
                m,
            )
        }
        "lts" => {
            let t = catalog::lts();
            coalgebra_doc(
                "s0 -a-> s1, s0 -b-> s2, s1 -a-> s2, s3 -a-> s3",
                vec![("Sigma", labels(&["a", "b"])), ("S", t.carrier().clone())],
                "T",
                t,
            )
        }
        _ => return None,
    })
}

/// Runs a demo. `input` is demo specific: a comma-separated list for
/// quicksort, `n` for factorial and fibonacci.
pub fn run_demo(name: &str, input: Option<&str>, opts: &Options) -> Report {
    let Some(doc) = document(name) else {
        return Report::usage(format!(
            "unknown demo `{name}`; available: {}",
            NAMES.join(", ")
        ));
    };
    let result = match name {
        "quicksort" => quicksort(input, opts),
        "factorial" => numbers_demo(input, 5, "factorial", catalog::factorials),
        "fibonacci" => numbers_demo(input, 7, "fibonacci", |n| catalog::fibonacci(n, 0, 1)),
        _ if input.is_some() => Err(Report::usage(format!("demo `{name}` takes no input"))),
        "graph-g" => Ok(graph_g(&doc, opts)),
        "r-coalgebra" => Ok(r_coalgebra(&doc, opts)),
        "automaton" => Ok(run_command(&doc, Command::CheckWf, opts)),
        "lts" => Ok(lts(&doc)),
        _ => unreachable!("names are covered"),
    };
    result.unwrap_or_else(|r| r)
}

fn graph_g(doc: &SpecDocument, opts: &Options) -> Report {
    let g = &doc.coalgebras[0].coalgebra;
    let mut out = String::new();
    let subs: Vec<String> = g.subcoalgebras().iter().map(Subobject::render).collect();
    let cart: Vec<String> = g
        .cartesian_subcoalgebras()
        .iter()
        .map(Subobject::render)
        .collect();
    let _ = writeln!(out, "subcoalgebras: {}", subs.join(" "));
    let _ = writeln!(out, "cartesian subcoalgebras: {}", cart.join(" "));
    Report::new(out, EXIT_HOLDS).then(run_command(doc, Command::CheckWf, opts))
}

fn r_coalgebra(doc: &SpecDocument, opts: &Options) -> Report {
    let c = &doc.coalgebras[0];
    let opts = Options {
        max_carrier: opts.max_carrier.max(3),
        policy: WitnessPolicy::MostSolutions,
        ..opts.clone()
    };
    run_command(doc, Command::CheckWf, &opts)
        .then(oracle_report(c, &opts, false))
        .then(oracle_report(c, &opts, true))
}

fn lts(doc: &SpecDocument) -> Report {
    let t = &doc.coalgebras[0].coalgebra;
    let mut out = String::from("next-time operator: ○S = states whose moves all land in S\n");
    for s in Subobject::all(t.carrier()) {
        match t.next_time(&s) {
            Ok(n) => {
                let _ = writeln!(out, "  ○{} = {}", s.render(), n.render());
            }
            Err(e) => return Report::from_error(&e),
        }
    }
    Report::new(out, EXIT_HOLDS)
}

fn numbers_demo(
    input: Option<&str>,
    default: usize,
    what: &str,
    run: impl Fn(usize) -> Result<Vec<u64>, Error>,
) -> Result<Report, Report> {
    let n = match input {
        None => default,
        Some(s) => s.trim().parse::<usize>().map_err(|_| {
            Report::usage(format!("{what} input must be a natural number, got `{s}`"))
        })?,
    };
    if n > 20 {
        return Err(Report::usage(format!(
            "{what} input {n} is too large (at most 20)"
        )));
    }
    let values = run(n).map_err(|e| Report::from_error(&e))?;
    let text: Vec<String> = values.iter().map(u64::to_string).collect();
    Ok(Report::new(format!("{}\n", text.join(",")), EXIT_HOLDS))
}

fn quicksort(input: Option<&str>, opts: &Options) -> Result<Report, Report> {
    let Some(input) = input else {
        let qs = Quicksort::new(labels(&["1", "2"]), 3);
        let sorted = qs.sort_all().map_err(|e| Report::from_error(&e))?;
        let mut out = String::new();
        for (w, s) in qs.lists.iter().zip(&sorted) {
            let _ = writeln!(
                out,
                "{} -> {}",
                catalog::list_label(&qs.letters, w),
                catalog::list_label(&qs.letters, s)
            );
        }
        return Ok(Report::new(out, EXIT_HOLDS));
    };
    let items: Vec<&str> = input
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let mut letters: Vec<&str> = items.clone();
    if letters.iter().all(|s| s.parse::<i64>().is_ok()) {
        letters.sort_by_key(|s| s.parse::<i64>().expect("checked"));
    } else {
        letters.sort_unstable();
    }
    letters.dedup();
    if letters
        .iter()
        .any(|l| !l.chars().all(wfcoalg::functor::is_label_char))
    {
        return Err(Report::usage("quicksort input items must be plain words"));
    }
    // the carrier holds every list up to the input length
    let k = letters.len() as u128;
    let lists: u128 = (0..=items.len() as u32).map(|i| k.saturating_pow(i)).sum();
    if lists > opts.limits.max_enum as u128 {
        return Err(Report::new(
            format!(
                "error: {}\n",
                Error::CapExceeded {
                    what: "list carrier",
                    needed: lists.to_string(),
                    cap: opts.limits.max_enum,
                }
            ),
            EXIT_CAP,
        ));
    }
    let carrier = Carrier::new(letters.iter().copied()).map_err(|e| Report::from_error(&e))?;
    let word: Vec<usize> = items
        .iter()
        .map(|s| carrier.index_of(s).expect("letter"))
        .collect();
    let qs = Quicksort::new(carrier, items.len());
    let sorted = qs
        .sort(&word)
        .map_err(|e| Report::from_error(&e))?
        .expect("input is in the carrier");
    let out: Vec<String> = sorted
        .iter()
        .map(|&a| quote_label(qs.letters.label(a)))
        .collect();
    Ok(Report::new(format!("{}\n", out.join(",")), EXIT_HOLDS))
}
