//! Well-founded parts, the well-foundedness test and the coreflection into
//! well-founded coalgebras.

use crate::coalgebra::{hom_failure, Coalgebra};
use crate::error::{Error, Result};
use crate::finset::{FinMap, Subobject};

/// The least fixed point of `○` together with the Kleene chain reaching it.
#[derive(Clone, Debug)]
pub struct WfPartResult {
    pub part: Subobject,
    pub structure: Coalgebra,
    pub inclusion: FinMap,
    /// `∅ = a_0 ⊊ a_1 ⊊ ... ⊊ a_k = a_{k+1}`; the last two entries coincide.
    pub chain: Vec<Subobject>,
}

impl WfPartResult {
    /// Applications of `○` performed, at most `|A| + 1`.
    pub fn iterations(&self) -> usize {
        self.chain.len() - 1
    }
}

pub fn wf_part(c: &Coalgebra) -> WfPartResult {
    let mut chain = vec![Subobject::empty(c.carrier())];
    loop {
        let last = chain.last().expect("chain starts nonempty");
        let next = c.next_time(last).expect("same carrier");
        let done = next == *last;
        chain.push(next);
        if done {
            break;
        }
    }
    let part = chain.last().expect("nonempty").clone();
    let sub = c
        .subcoalgebra(&part)
        .expect("same carrier")
        .expect("fixed points of next time are subcoalgebras");
    WfPartResult {
        part,
        structure: sub.coalgebra,
        inclusion: sub.inclusion,
        chain,
    }
}

/// Well-founded iff the whole carrier is the least fixed point of `○`.
/// Cross-checked against acyclicity of the canonical graph.
pub fn is_wellfounded(c: &Coalgebra) -> Result<bool> {
    let by_fixpoint = wf_part(c).part.is_full();
    let by_graph = c.canonical_graph().is_acyclic();
    if by_fixpoint != by_graph {
        return Err(Error::Inconsistent(format!(
            "least fixed point says {by_fixpoint}, canonical graph says {by_graph}"
        )));
    }
    Ok(by_fixpoint)
}

/// Names a vertex on a cycle of the canonical graph, if there is one.
pub(crate) fn cycle_error(c: &Coalgebra) -> Option<Error> {
    c.canonical_graph().bottom_up_order().err().map(|cycle| {
        let labels: Vec<String> = cycle
            .iter()
            .chain(cycle.first())
            .map(|&v| c.carrier().label(v).to_owned())
            .collect();
        Error::NotWellFounded {
            vertex: labels[0].clone(),
            cycle: labels,
        }
    })
}

/// Corestricts a homomorphism out of a well-founded coalgebra to the
/// well-founded part of its target.
pub fn coreflect(f: &FinMap, b: &Coalgebra, a: &Coalgebra) -> Result<FinMap> {
    if !crate::coalgebra::is_coalgebra_hom(f, b, a)? {
        let at = hom_failure(f, b, a)?.expect("square fails somewhere");
        return Err(Error::NotHomomorphism(b.carrier().label(at).to_owned()));
    }
    if !is_wellfounded(b)? {
        return Err(cycle_error(b)
            .unwrap_or_else(|| Error::Inconsistent("not well-founded yet acyclic".into())));
    }
    let wf = wf_part(a);
    let position: Vec<Option<usize>> = {
        let mut p = vec![None; a.len()];
        for (i, &m) in wf.part.members().iter().enumerate() {
            p[m] = Some(i);
        }
        p
    };
    let table = b
        .carrier()
        .elements()
        .map(|x| {
            position[f.apply(x)].ok_or_else(|| {
                Error::Inconsistent(format!(
                    "image of `{}` escapes the well-founded part",
                    b.carrier().label(x)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FinMap::new(b.carrier().clone(), wf.structure.carrier().clone(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coalgebra::is_coalgebra_hom;
    use crate::finset::Carrier;
    use crate::functor::FunctorExpr;

    #[test]
    fn graph_g_part_is_a_b() {
        let g = catalog::graph_g();
        let wf = wf_part(&g);
        assert_eq!(
            wf.part,
            Subobject::from_labels(g.carrier(), &["a", "b"]).unwrap()
        );
        let rendered: Vec<String> = wf.chain.iter().map(Subobject::render).collect();
        assert_eq!(rendered, ["{}", "{b}", "{a,b}", "{a,b}"]);
        assert_eq!(wf.structure.carrier().labels(), &["a", "b"]);
        assert!(!is_wellfounded(&g).unwrap());
    }

    #[test]
    fn empty_and_r_coalgebras() {
        let empty = Coalgebra::empty(FunctorExpr::pow(FunctorExpr::Id));
        assert!(wf_part(&empty).part.is_empty());
        assert!(is_wellfounded(&empty).unwrap());

        let r = catalog::r_coalgebra();
        assert!(wf_part(&r).part.is_empty());
        assert!(!is_wellfounded(&r).unwrap());
    }

    #[test]
    fn sample_verdicts() {
        assert!(!is_wellfounded(&catalog::automaton()).unwrap());
        assert!(is_wellfounded(&catalog::predecessor(3)).unwrap());
        assert!(is_wellfounded(&catalog::fibonacci_coalgebra(8)).unwrap());
        let lts = catalog::lts();
        assert!(!is_wellfounded(&lts).unwrap());
    }

    #[test]
    fn coreflection_of_a_sink() {
        let g = catalog::graph_g();
        let b_only = g
            .subcoalgebra(&Subobject::from_labels(g.carrier(), &["b"]).unwrap())
            .unwrap()
            .unwrap();
        let f = coreflect(&b_only.inclusion, &b_only.coalgebra, &g).unwrap();
        let wf = wf_part(&g);
        assert_eq!(f.cod().labels(), &["a", "b"]);
        assert_eq!(f.cod().label(f.apply(0)), "b");
        assert!(is_coalgebra_hom(&f, &b_only.coalgebra, &wf.structure).unwrap());
        assert_eq!(f.then(&wf.inclusion).unwrap(), b_only.inclusion);
    }

    #[test]
    fn coreflection_trivial_cases() {
        let pred = catalog::predecessor(3);
        let id = FinMap::identity(pred.carrier());
        assert_eq!(coreflect(&id, &pred, &pred).unwrap(), id);

        let g = catalog::graph_g();
        let empty = Coalgebra::empty(g.functor().clone());
        let f = FinMap::new(Carrier::empty(), g.carrier().clone(), vec![]).unwrap();
        assert_eq!(coreflect(&f, &empty, &g).unwrap().dom().len(), 0);
    }

    #[test]
    fn coreflection_errors_are_distinct() {
        let g = catalog::graph_g();
        let id = FinMap::identity(g.carrier());
        assert!(matches!(
            coreflect(&id, &g, &g),
            Err(Error::NotWellFounded { .. })
        ));
        let pred = catalog::predecessor(3);
        let shift = FinMap::new(
            pred.carrier().clone(),
            pred.carrier().clone(),
            vec![1, 2, 0],
        )
        .unwrap();
        assert!(matches!(
            coreflect(&shift, &pred, &pred),
            Err(Error::NotHomomorphism(_))
        ));
    }
}
