//! Structured recursion out of coalgebras: certified hylomorphisms, the
//! initial-algebra chain, unfoldings into `μF`, and brute-force
//! recursiveness oracles.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::coalgebra::{check_functors, Algebra, Coalgebra, ParaAlgebra};
use crate::error::{bounded_pow, cap_error, Error, Limits, Result};
use crate::finset::{odometer, Carrier, FinMap};
use crate::functor::{FValue, FunctorExpr};
use crate::wellfounded::{cycle_error, is_wellfounded};

/// A finite `F`-tree, an element of some stage `W_i` of the initial chain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term(pub Box<FValue<Term>>);

impl Term {
    pub fn node(shape: FValue<Term>) -> Term {
        Term(Box::new(shape))
    }

    pub fn shape(&self) -> &FValue<Term> {
        &self.0
    }

    pub fn height(&self) -> usize {
        1 + self.0.support().iter().map(Term::height).max().unwrap_or(0)
    }

    pub fn render(&self, functor: &FunctorExpr) -> String {
        functor.render_value(&self.0, &|t: &Term| t.render(functor))
    }
}

/// Vertices in an order that visits successors first; refuses cyclic
/// (non-well-founded) coalgebras.
fn certified_order(c: &Coalgebra) -> Result<Vec<usize>> {
    if !is_wellfounded(c)? {
        return Err(cycle_error(c)
            .unwrap_or_else(|| Error::Inconsistent("not well-founded yet acyclic".into())));
    }
    c.canonical_graph()
        .bottom_up_order()
        .map_err(|_| Error::Inconsistent("well-founded yet cyclic".into()))
}

/// Evaluates `h = e ∘ F h ∘ α` bottom-up over a well-founded coalgebra.
/// The result type is arbitrary, so `e` need not have a finite carrier.
pub fn try_hylo_with<T, G>(c: &Coalgebra, mut e: G) -> Result<Vec<T>>
where
    T: Clone + Ord,
    G: FnMut(FValue<T>) -> Result<T>,
{
    let order = certified_order(c)?;
    let mut out: Vec<Option<T>> = vec![None; c.len()];
    for a in order {
        let v = c.functor().map_value(c.at(a), &mut |b: &usize| {
            out[*b].clone().expect("successors first")
        })?;
        out[a] = Some(e(v)?);
    }
    Ok(out
        .into_iter()
        .map(|x| x.expect("every vertex visited"))
        .collect())
}

pub fn hylo_with<T, G>(c: &Coalgebra, mut e: G) -> Result<Vec<T>>
where
    T: Clone + Ord,
    G: FnMut(FValue<T>) -> T,
{
    try_hylo_with(c, |v| Ok(e(v)))
}

/// The unique coalgebra-to-algebra morphism out of a well-founded coalgebra.
pub fn hylo(c: &Coalgebra, alg: &Algebra) -> Result<FinMap> {
    check_functors(c.functor(), alg.functor())?;
    let table = try_hylo_with(c, |v: FValue<usize>| alg.apply(&v))?;
    let h = FinMap::new(c.carrier().clone(), alg.carrier().clone(), table)?;
    for a in c.carrier().elements() {
        let pushed = c.functor().eval_map(&h, c.at(a))?;
        if alg.apply(&pushed)? != h.apply(a) {
            return Err(Error::Inconsistent(format!(
                "hylomorphism square fails at `{}`",
                c.carrier().label(a)
            )));
        }
    }
    Ok(h)
}

/// `e†(a) = e(F e† (α(a)), a)` over a well-founded coalgebra.
pub fn try_para_hylo_with<T, G>(c: &Coalgebra, mut e: G) -> Result<Vec<T>>
where
    T: Clone + Ord,
    G: FnMut(FValue<T>, usize) -> Result<T>,
{
    let order = certified_order(c)?;
    let mut out: Vec<Option<T>> = vec![None; c.len()];
    for a in order {
        let v = c.functor().map_value(c.at(a), &mut |b: &usize| {
            out[*b].clone().expect("successors first")
        })?;
        out[a] = Some(e(v, a)?);
    }
    Ok(out
        .into_iter()
        .map(|x| x.expect("every vertex visited"))
        .collect())
}

pub fn para_hylo_with<T, G>(c: &Coalgebra, mut e: G) -> Result<Vec<T>>
where
    T: Clone + Ord,
    G: FnMut(FValue<T>, usize) -> T,
{
    try_para_hylo_with(c, |v, a| Ok(e(v, a)))
}

pub fn para_hylo(c: &Coalgebra, alg: &ParaAlgebra) -> Result<FinMap> {
    check_functors(c.functor(), alg.functor())?;
    if alg.params() != c.carrier() {
        return Err(Error::CarrierMismatch {
            expected: c.carrier().to_string(),
            found: alg.params().to_string(),
        });
    }
    let table = try_para_hylo_with(c, |v: FValue<usize>, a| alg.apply(&v, a))?;
    let h = FinMap::new(c.carrier().clone(), alg.carrier().clone(), table)?;
    for a in c.carrier().elements() {
        let pushed = c.functor().eval_map(&h, c.at(a))?;
        if alg.apply(&pushed, a)? != h.apply(a) {
            return Err(Error::Inconsistent(format!(
                "parametric square fails at `{}`",
                c.carrier().label(a)
            )));
        }
    }
    Ok(h)
}

/// Precomputed `F h (α(a))` for every candidate `h: A -> {0..n-1}`.
struct HomTable {
    states: usize,
    count: usize,
    digits: Vec<u32>,
    images: Vec<u32>,
}

impl HomTable {
    fn build(
        c: &Coalgebra,
        n: usize,
        index: &HashMap<FValue, usize>,
        limits: &Limits,
    ) -> Result<Self> {
        let states = c.len();
        let count = bounded_pow(n as u64, states as u64, limits.max_maps).ok_or_else(|| {
            cap_error(
                "candidate morphisms",
                n as u64,
                states as u64,
                limits.max_maps,
            )
        })? as usize;
        let mut digits = Vec::with_capacity(count * states);
        let mut images = Vec::with_capacity(count * states);
        let mut h = vec![0usize; states];
        for _ in 0..count {
            for a in 0..states {
                let v = c.functor().map_value(c.at(a), &mut |&b: &usize| h[b])?;
                digits.push(h[a] as u32);
                images.push(index[&v] as u32);
            }
            odometer(&mut h, n);
        }
        Ok(HomTable {
            states,
            count,
            digits,
            images,
        })
    }

    fn solves_plain(&self, h: usize, e: &[usize]) -> bool {
        let row = h * self.states;
        (row..row + self.states).all(|i| e[self.images[i] as usize] == self.digits[i] as usize)
    }

    fn solves_para(&self, h: usize, e: &[usize]) -> bool {
        let row = h * self.states;
        (0..self.states).all(|a| {
            e[self.images[row + a] as usize * self.states + a] == self.digits[row + a] as usize
        })
    }

    fn count_solutions(&self, e: &[usize], para: bool, stop_at: usize) -> usize {
        let mut found = 0;
        for h in 0..self.count {
            let ok = if para {
                self.solves_para(h, e)
            } else {
                self.solves_plain(h, e)
            };
            if ok {
                found += 1;
                if found >= stop_at {
                    break;
                }
            }
        }
        found
    }

    fn solutions(&self, e: &[usize], para: bool, dom: &Carrier, cod: &Carrier) -> Vec<FinMap> {
        (0..self.count)
            .filter(|&h| {
                if para {
                    self.solves_para(h, e)
                } else {
                    self.solves_plain(h, e)
                }
            })
            .map(|h| {
                let row = h * self.states;
                let table = self.digits[row..row + self.states]
                    .iter()
                    .map(|&d| d as usize)
                    .collect();
                FinMap::new(dom.clone(), cod.clone(), table).expect("digits are in range")
            })
            .collect()
    }
}

fn value_index(domain: &[FValue]) -> HashMap<FValue, usize> {
    domain
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect()
}

/// Every coalgebra-to-algebra morphism `C -> X`, by exhaustive search.
pub fn find_homs(c: &Coalgebra, alg: &Algebra, limits: &Limits) -> Result<Vec<FinMap>> {
    check_functors(c.functor(), alg.functor())?;
    let homs = HomTable::build(c, alg.carrier().len(), &value_index(alg.domain()), limits)?;
    Ok(homs.solutions(alg.table(), false, c.carrier(), alg.carrier()))
}

/// Every solution of the parametric recursion scheme, by exhaustive search.
pub fn find_para_homs(c: &Coalgebra, alg: &ParaAlgebra, limits: &Limits) -> Result<Vec<FinMap>> {
    check_functors(c.functor(), alg.functor())?;
    if alg.params() != c.carrier() {
        return Err(Error::CarrierMismatch {
            expected: c.carrier().to_string(),
            found: alg.params().to_string(),
        });
    }
    let homs = HomTable::build(c, alg.carrier().len(), &value_index(alg.domain()), limits)?;
    Ok(homs.solutions(alg.table(), true, c.carrier(), alg.carrier()))
}

/// Which failing algebra an oracle reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessPolicy {
    /// The first failure in lexicographic table order.
    #[default]
    First,
    /// Among failures on the smallest failing carrier, one with the most
    /// morphisms (ties broken lexicographically).
    MostSolutions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub max_carrier: usize,
    pub limits: Limits,
    pub policy: WitnessPolicy,
}

impl OracleOptions {
    pub fn new(max_carrier: usize) -> Self {
        OracleOptions {
            max_carrier,
            limits: Limits::default(),
            policy: WitnessPolicy::First,
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_policy(mut self, policy: WitnessPolicy) -> Self {
        self.policy = policy;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessAlgebra {
    Plain(Algebra),
    Parametric(ParaAlgebra),
}

impl WitnessAlgebra {
    pub fn render(&self) -> String {
        match self {
            WitnessAlgebra::Plain(a) => a.render(),
            WitnessAlgebra::Parametric(p) => p.render(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleWitness {
    pub carrier_size: usize,
    pub algebra: WitnessAlgebra,
    pub morphism_count: usize,
    pub solutions: Vec<FinMap>,
}

/// Outcome of a finite recursiveness check. A failure is conclusive; a pass
/// only covers the carriers listed in `sizes_checked`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub status: OracleStatus,
    pub witness: Option<OracleWitness>,
    pub sizes_checked: Vec<usize>,
    /// Why coverage stopped short of `max_carrier`, if it did.
    pub cap_exceeded: Option<Error>,
}

impl OracleVerdict {
    pub fn passed(&self) -> bool {
        self.status == OracleStatus::Pass
    }

    pub fn is_complete(&self) -> bool {
        self.cap_exceeded.is_none()
    }
}

/// Every algebra on carriers `0..=max_carrier` admits exactly one
/// coalgebra-to-algebra morphism.
pub fn recursive_oracle(c: &Coalgebra, opts: &OracleOptions) -> OracleVerdict {
    run_oracle(c, opts, false)
}

/// Every `e: F X × A -> X` on carriers `0..=max_carrier` has exactly one solution.
pub fn parametric_oracle(c: &Coalgebra, opts: &OracleOptions) -> OracleVerdict {
    run_oracle(c, opts, true)
}

const CHUNK: u64 = 1 << 12;

fn decode(mut k: u64, base: usize, digits: &mut [usize]) {
    for d in digits.iter_mut().rev() {
        *d = (k % base as u64) as usize;
        k /= base as u64;
    }
}

fn run_oracle(c: &Coalgebra, opts: &OracleOptions, para: bool) -> OracleVerdict {
    let mut sizes_checked = Vec::new();
    for n in 0..=opts.max_carrier {
        if n == 0 && !c.functor().is_empty_on_empty() {
            // no algebra lives on the empty set
            continue;
        }
        match check_size(c, n, opts, para) {
            Ok(None) => sizes_checked.push(n),
            Ok(Some(witness)) => {
                return OracleVerdict {
                    status: OracleStatus::Fail,
                    witness: Some(witness),
                    sizes_checked,
                    cap_exceeded: None,
                }
            }
            Err(e) => {
                return OracleVerdict {
                    status: OracleStatus::Pass,
                    witness: None,
                    sizes_checked,
                    cap_exceeded: Some(e),
                }
            }
        }
    }
    OracleVerdict {
        status: OracleStatus::Pass,
        witness: None,
        sizes_checked,
        cap_exceeded: None,
    }
}

fn check_size(
    c: &Coalgebra,
    n: usize,
    opts: &OracleOptions,
    para: bool,
) -> Result<Option<OracleWitness>> {
    let carrier = Carrier::range(n);
    let domain = c.functor().eval_obj(&carrier, opts.limits.max_enum)?;
    let width = if para {
        domain.len() * c.len()
    } else {
        domain.len()
    };
    let total = bounded_pow(n as u64, width as u64, opts.limits.max_maps).ok_or_else(|| {
        cap_error(
            if para {
                "parametric algebras"
            } else {
                "algebras"
            },
            n as u64,
            width as u64,
            opts.limits.max_maps,
        )
    })?;
    let homs = HomTable::build(c, n, &value_index(&domain), &opts.limits)?;

    let chunks = total.div_ceil(CHUNK);
    let scan_chunk = |ci: u64, stop_at: usize| -> Option<(usize, u64)> {
        let start = ci * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut e = vec![0usize; width];
        decode(start, n.max(1), &mut e);
        let mut best: Option<(usize, u64)> = None;
        for k in start..end {
            let found = homs.count_solutions(&e, para, stop_at);
            if found != 1 {
                match opts.policy {
                    WitnessPolicy::First => return Some((found, k)),
                    WitnessPolicy::MostSolutions => {
                        if best.is_none_or(|(b, _)| found > b) {
                            best = Some((found, k));
                        }
                    }
                }
            }
            odometer(&mut e, n);
        }
        best
    };
    let hit = match opts.policy {
        WitnessPolicy::First => (0..chunks)
            .into_par_iter()
            .find_map_first(|ci| scan_chunk(ci, 2)),
        WitnessPolicy::MostSolutions => (0..chunks)
            .into_par_iter()
            .filter_map(|ci| scan_chunk(ci, usize::MAX))
            .reduce_with(|a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            }),
    };
    let Some((_, k)) = hit else {
        return Ok(None);
    };

    let mut table = vec![0usize; width];
    decode(k, n.max(1), &mut table);
    let solutions = homs.solutions(&table, para, c.carrier(), &carrier);
    let functor = c.functor().clone();
    let algebra = if para {
        WitnessAlgebra::Parametric(ParaAlgebra::with_domain(
            functor,
            carrier,
            c.carrier().clone(),
            domain,
            table,
        )?)
    } else {
        WitnessAlgebra::Plain(Algebra::with_domain(functor, carrier, domain, table)?)
    };
    Ok(Some(OracleWitness {
        carrier_size: n,
        algebra,
        morphism_count: solutions.len(),
        solutions,
    }))
}

/// The chain `W_0 = ∅`, `W_{i+1} = F W_i` with its connecting inclusions.
#[derive(Debug, Clone)]
pub struct InitialChain {
    functor: FunctorExpr,
    layers: Vec<Vec<FValue>>,
    inclusions: Vec<Vec<usize>>,
    stabilized_at: Option<usize>,
    cap_exceeded: Option<Error>,
}

pub fn initial_chain(functor: &FunctorExpr, max_depth: usize, limits: &Limits) -> InitialChain {
    let mut chain = InitialChain {
        functor: functor.clone(),
        layers: vec![Vec::new()],
        inclusions: Vec::new(),
        stabilized_at: None,
        cap_exceeded: None,
    };
    for i in 0..max_depth {
        let elems: Vec<usize> = (0..chain.layers[i].len()).collect();
        let next = match functor.enumerate(&elems, limits.max_enum) {
            Ok(next) => next,
            Err(e) => {
                chain.cap_exceeded = Some(e);
                break;
            }
        };
        let index = value_index(&next);
        let inclusion: Vec<usize> = if i == 0 {
            Vec::new()
        } else {
            let below = &chain.inclusions[i - 1];
            chain.layers[i]
                .iter()
                .map(|v| {
                    let w = functor
                        .map_value(v, &mut |&t: &usize| below[t])
                        .expect("chain values are well formed");
                    index[&w]
                })
                .collect()
        };
        let bijective = next.len() == chain.layers[i].len();
        chain.layers.push(next);
        chain.inclusions.push(inclusion);
        if bijective {
            chain.stabilized_at = Some(i);
            break;
        }
    }
    chain
}

impl InitialChain {
    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn stabilized(&self) -> bool {
        self.stabilized_at.is_some()
    }

    pub fn stabilized_at(&self) -> Option<usize> {
        self.stabilized_at
    }

    pub fn cap_exceeded(&self) -> Option<&Error> {
        self.cap_exceeded.as_ref()
    }

    /// Number of stages `W_0..W_k` computed.
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Element `t` of `W_i` as a tree.
    pub fn term(&self, i: usize, t: usize) -> Term {
        Term::node(
            self.functor
                .map_value(&self.layers[i][t], &mut |&c: &usize| self.term(i - 1, c))
                .expect("chain values are well formed"),
        )
    }

    pub fn terms(&self, i: usize) -> Vec<Term> {
        (0..self.layers[i].len()).map(|t| self.term(i, t)).collect()
    }

    /// `W_i` with structure `w_{i,i+1}: W_i -> F W_i`, for every stage whose
    /// successor was computed.
    pub fn stage_coalgebra(&self, i: usize) -> Option<Coalgebra> {
        let up = self.inclusions.get(i)?;
        let labels: Vec<String> = self
            .terms(i)
            .iter()
            .map(|t| t.render(&self.functor))
            .collect();
        let carrier = Carrier::new(labels).expect("distinct terms render distinctly");
        let structure = up.iter().map(|&j| self.layers[i + 1][j].clone()).collect();
        Some(Coalgebra::new(self.functor.clone(), carrier, structure).expect("well formed"))
    }

    /// `μF` as the coalgebra `(W_k, ι⁻¹)` once the chain has stabilized.
    pub fn mu(&self) -> Option<Coalgebra> {
        self.stage_coalgebra(self.stabilized_at?)
    }
}

/// Result of unfolding a coalgebra into finite trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unfolding {
    Terms(Vec<Term>),
    Cycle(CycleReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub cycle: Vec<usize>,
    pub labels: Vec<String>,
    /// Whether the cycle rules out any morphism into `μF`; only guaranteed
    /// for functors preserving inverse images.
    pub conclusive: bool,
}

impl CycleReport {
    pub fn note(&self) -> &'static str {
        if self.conclusive {
            "no coalgebra-to-algebra morphism into the initial algebra exists"
        } else {
            "the functor does not preserve inverse images; a morphism into the initial algebra may still exist (use find-homs)"
        }
    }
}

/// The coalgebra-to-algebra morphism into the term algebra, or a cycle.
pub fn unfold_to_mu(c: &Coalgebra) -> Unfolding {
    match c.canonical_graph().bottom_up_order() {
        Err(cycle) => Unfolding::Cycle(CycleReport {
            labels: cycle
                .iter()
                .map(|&v| c.carrier().label(v).to_owned())
                .collect(),
            cycle,
            conclusive: c.functor().preserves_inverse_images(),
        }),
        Ok(order) => {
            let mut out: Vec<Option<Term>> = vec![None; c.len()];
            for a in order {
                let shape = c
                    .functor()
                    .map_value(c.at(a), &mut |b: &usize| {
                        out[*b].clone().expect("successors first")
                    })
                    .expect("structure is well formed");
                out[a] = Some(Term::node(shape));
            }
            Unfolding::Terms(out.into_iter().map(|t| t.expect("visited")).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn hylo_refuses_cycles_and_names_a_vertex() {
        let g = catalog::graph_g();
        let alg = Algebra::from_fn(
            g.functor().clone(),
            Carrier::range(1),
            &Limits::default(),
            |_| 0,
        )
        .unwrap();
        match hylo(&g, &alg) {
            Err(Error::NotWellFounded { vertex, .. }) => assert!(vertex == "c" || vertex == "d"),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn hylo_of_empty_coalgebra() {
        let f = FunctorExpr::pow(FunctorExpr::Id);
        let empty = Coalgebra::empty(f.clone());
        let alg = Algebra::from_fn(f, Carrier::range(2), &Limits::default(), |_| 1).unwrap();
        assert_eq!(hylo(&empty, &alg).unwrap().dom().len(), 0);
    }

    #[test]
    fn hylo_checks_functors() {
        let g = catalog::predecessor(3);
        let alg =
            Algebra::from_fn(FunctorExpr::R, Carrier::range(1), &Limits::default(), |_| 0).unwrap();
        assert!(matches!(hylo(&g, &alg), Err(Error::FunctorMismatch { .. })));
    }

    #[test]
    fn predecessor_refolds_to_identity() {
        let pred = catalog::predecessor(3);
        // zero and successor on {0,1,2,3}, saturating at the top
        let alg = Algebra::from_fn(
            pred.functor().clone(),
            Carrier::range(4),
            &Limits::default(),
            |v| match v {
                FValue::Inj(0, x) => match **x {
                    FValue::Id(k) => (k + 1).min(3),
                    _ => unreachable!(),
                },
                _ => 0,
            },
        )
        .unwrap();
        let h = hylo(&pred, &alg).unwrap();
        assert_eq!(h.table(), &[0, 1, 2]);
        assert_eq!(find_homs(&pred, &alg, &Limits::default()).unwrap(), vec![h]);
    }

    #[test]
    fn para_hylo_without_recursive_dependency() {
        let pred = catalog::predecessor(4);
        let out = para_hylo_with(&pred, |_v: FValue<u64>, a| 10 * a as u64);
        assert_eq!(out.unwrap(), vec![0, 10, 20, 30]);
    }

    #[test]
    fn initial_chain_examples() {
        let r = initial_chain(&FunctorExpr::R, 6, &Limits::default());
        assert_eq!(r.stabilized_at(), Some(1));
        assert_eq!(r.sizes(), vec![0, 1, 1]);
        let mu = r.mu().unwrap();
        assert_eq!(mu.carrier().labels(), &["d"]);
        assert_eq!(mu.structure(), &[FValue::Dot]);

        let id = initial_chain(&FunctorExpr::Id, 6, &Limits::default());
        assert_eq!(id.stabilized_at(), Some(0));
        assert_eq!(id.mu().unwrap().len(), 0);

        let nat = FunctorExpr::sum(vec![FunctorExpr::Id, FunctorExpr::constant(1)]);
        let chain = initial_chain(&nat, 8, &Limits::default());
        assert!(!chain.stabilized());
        assert_eq!(chain.sizes(), (0..=8).collect::<Vec<_>>());
        assert!(chain.mu().is_none());
    }

    #[test]
    fn initial_chain_stops_at_cap() {
        let p = FunctorExpr::pow(FunctorExpr::Id);
        let chain = initial_chain(&p, 10, &Limits::default());
        assert_eq!(chain.sizes(), vec![0, 1, 2, 4, 16, 65536]);
        assert!(chain.cap_exceeded().is_some());
        assert!(!chain.stabilized());
    }

    #[test]
    fn unfolding_predecessor() {
        let pred = catalog::predecessor(3);
        let Unfolding::Terms(terms) = unfold_to_mu(&pred) else {
            panic!("acyclic")
        };
        let zero = Term::node(FValue::Inj(1, Box::new(FValue::Const(0))));
        let succ = |t: Term| Term::node(FValue::Inj(0, Box::new(FValue::Id(t))));
        assert_eq!(terms[2], succ(succ(zero.clone())));
        assert_eq!(terms[2].render(pred.functor()), "in0(in0(in1(*)))");
        assert_eq!(terms[0].height(), 1);
    }

    #[test]
    fn unfolding_reports_cycles() {
        let lp = catalog::self_loop();
        let Unfolding::Cycle(report) = unfold_to_mu(&lp) else {
            panic!("cyclic")
        };
        assert_eq!(report.labels, vec!["x"]);
        assert!(report.conclusive);

        let r = catalog::r_coalgebra();
        let Unfolding::Cycle(report) = unfold_to_mu(&r) else {
            panic!("cyclic")
        };
        assert!(!report.conclusive);
    }

    #[test]
    fn r_coalgebra_has_one_morphism_into_every_small_algebra() {
        let r = catalog::r_coalgebra();
        for n in 1..=2 {
            let x = Carrier::range(n);
            let dom = FunctorExpr::R.eval_obj(&x, 100).unwrap();
            for alg in FinMap::all(&Carrier::range(dom.len()), &x, 1 << 20).unwrap() {
                let alg = Algebra::from_table(
                    FunctorExpr::R,
                    x.clone(),
                    alg.table().to_vec(),
                    &Limits::default(),
                )
                .unwrap();
                let homs = find_homs(&r, &alg, &Limits::default()).unwrap();
                let at_d = alg.apply(&FValue::Dot).unwrap();
                assert_eq!(homs.len(), 1);
                assert_eq!(homs[0].table(), &[at_d, at_d]);
            }
        }
    }

    #[test]
    fn empty_coalgebra_has_exactly_one_morphism() {
        let f = FunctorExpr::pow(FunctorExpr::Id);
        let alg =
            Algebra::from_fn(f.clone(), Carrier::range(2), &Limits::default(), |_| 0).unwrap();
        assert_eq!(
            find_homs(&Coalgebra::empty(f), &alg, &Limits::default())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn self_loop_has_ambiguous_algebras() {
        let lp = catalog::self_loop();
        let x = Carrier::range(2);
        let mut counts = Vec::new();
        for table in FinMap::all(&Carrier::range(4), &x, 1 << 10).unwrap() {
            let alg = Algebra::from_table(
                lp.functor().clone(),
                x.clone(),
                table.table().to_vec(),
                &Limits::default(),
            )
            .unwrap();
            counts.push(find_homs(&lp, &alg, &Limits::default()).unwrap().len());
        }
        assert_eq!(counts.len(), 16);
        assert!(counts.iter().any(|&c| c != 1));

        // e(∅)=1, e({0})=0, e({1})=1, e({0,1})=1: both constants solve it
        let alg = Algebra::from_pairs(
            lp.functor().clone(),
            x.clone(),
            vec![
                (FValue::Set([].into()), 1),
                (FValue::Set([FValue::Id(0)].into()), 0),
                (FValue::Set([FValue::Id(1)].into()), 1),
                (FValue::Set([FValue::Id(0), FValue::Id(1)].into()), 1),
            ],
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(find_homs(&lp, &alg, &Limits::default()).unwrap().len(), 2);
    }

    #[test]
    fn oracle_verdicts_on_small_cases() {
        let lp = catalog::self_loop();
        let v = recursive_oracle(&lp, &OracleOptions::new(2));
        assert_eq!(v.status, OracleStatus::Fail);
        let w = v.witness.unwrap();
        assert_ne!(w.morphism_count, 1);
        assert_eq!(w.solutions.len(), w.morphism_count);

        let empty = Coalgebra::empty(FunctorExpr::pow(FunctorExpr::Id));
        assert!(parametric_oracle(&empty, &OracleOptions::new(2)).passed());

        let fib = catalog::fibonacci_coalgebra(4);
        let v = parametric_oracle(&fib, &OracleOptions::new(2));
        assert!(v.passed() && v.is_complete());
        assert_eq!(v.sizes_checked, vec![1, 2]);
    }

    #[test]
    fn oracle_on_functor_empty_at_zero() {
        // F X = X * X has no algebra-free empty carrier: size 0 is admitted
        let f = FunctorExpr::prod(vec![FunctorExpr::Id, FunctorExpr::Id]);
        let c = Coalgebra::new(
            f,
            Carrier::range(1),
            vec![FValue::Tuple(vec![FValue::Id(0), FValue::Id(0)])],
        )
        .unwrap();
        let v = recursive_oracle(&c, &OracleOptions::new(2));
        assert_eq!(v.status, OracleStatus::Fail);
        let w = v.witness.unwrap();
        assert_eq!((w.carrier_size, w.morphism_count), (0, 0));
    }

    #[test]
    fn oracle_reports_partial_coverage() {
        let f = FunctorExpr::pow(FunctorExpr::pow(FunctorExpr::Id));
        let c = Coalgebra::empty(f);
        let limits = Limits {
            max_enum: 100_000,
            max_maps: 1000,
        };
        let v = recursive_oracle(&c, &OracleOptions::new(3).with_limits(limits));
        assert!(v.passed());
        assert!(!v.is_complete());
        assert_eq!(v.sizes_checked, vec![1]);
    }
}
