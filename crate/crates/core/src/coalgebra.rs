//! Coalgebras and algebras over finite carriers, the next time operator and
//! canonical graphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{bounded_pow, cap_error, Error, Limits, Result};
use crate::finset::{Carrier, FinMap, Subobject};
use crate::functor::{FValue, FunctorExpr};

/// A coalgebra `α: A -> F A`, stored pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    functor: FunctorExpr,
    carrier: Carrier,
    structure: Vec<FValue>,
}

impl Coalgebra {
    pub fn new(functor: FunctorExpr, carrier: Carrier, structure: Vec<FValue>) -> Result<Self> {
        if structure.len() != carrier.len() {
            return Err(Error::InvalidMap(format!(
                "structure has {} entries for {} states",
                structure.len(),
                carrier.len()
            )));
        }
        for v in &structure {
            functor.check_over(v, carrier.len())?;
        }
        Ok(Coalgebra {
            functor,
            carrier,
            structure,
        })
    }

    pub fn empty(functor: FunctorExpr) -> Self {
        Coalgebra {
            functor,
            carrier: Carrier::empty(),
            structure: Vec::new(),
        }
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn structure(&self) -> &[FValue] {
        &self.structure
    }

    pub fn at(&self, a: usize) -> &FValue {
        &self.structure[a]
    }

    fn own(&self, s: &Subobject) -> Result<()> {
        if *s.of() != self.carrier {
            return Err(Error::CarrierMismatch {
                expected: self.carrier.to_string(),
                found: s.of().to_string(),
            });
        }
        Ok(())
    }

    /// `○s`: the states whose structure is supported inside `s`.
    pub fn next_time(&self, s: &Subobject) -> Result<Subobject> {
        self.own(s)?;
        Ok(next_time_of(&self.structure, &self.carrier, s.members()))
    }

    pub fn canonical_graph(&self) -> CanonicalGraph {
        CanonicalGraph {
            vertices: self.carrier.clone(),
            succ: self.structure.iter().map(FValue::support).collect(),
        }
    }

    pub fn is_subcoalgebra(&self, s: &Subobject) -> Result<bool> {
        Ok(s.is_subset(&self.next_time(s)?))
    }

    /// The restriction of the structure to `s`, when `s` is closed.
    pub fn subcoalgebra(&self, s: &Subobject) -> Result<Option<Subcoalgebra>> {
        if !self.is_subcoalgebra(s)? {
            return Ok(None);
        }
        let (carrier, inclusion) = s.carrier();
        let reindex: HashMap<usize, usize> = s
            .members()
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i))
            .collect();
        let structure = s
            .members()
            .iter()
            .map(|&a| {
                self.functor
                    .map_value(&self.structure[a], &mut |b: &usize| reindex[b])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(Subcoalgebra {
            coalgebra: Coalgebra {
                functor: self.functor.clone(),
                carrier,
                structure,
            },
            inclusion,
        }))
    }

    /// Cartesian subcoalgebras are exactly the fixed points of `○`.
    pub fn is_cartesian(&self, s: &Subobject) -> Result<bool> {
        Ok(*s == self.next_time(s)?)
    }

    /// Every subset closed under the structure, in bitmask order.
    pub fn subcoalgebras(&self) -> Vec<Subobject> {
        Subobject::all(&self.carrier)
            .into_iter()
            .filter(|s| s.is_subset(&next_time_of(&self.structure, &self.carrier, s.members())))
            .collect()
    }

    pub fn cartesian_subcoalgebras(&self) -> Vec<Subobject> {
        Subobject::all(&self.carrier)
            .into_iter()
            .filter(|s| *s == next_time_of(&self.structure, &self.carrier, s.members()))
            .collect()
    }

    /// The strong quotient along a surjection whose kernel is a congruence.
    pub fn quotient(&self, e: &FinMap) -> Result<Coalgebra> {
        if *e.dom() != self.carrier {
            return Err(Error::CarrierMismatch {
                expected: self.carrier.to_string(),
                found: e.dom().to_string(),
            });
        }
        if let Some(b) = e.first_missed() {
            return Err(Error::NotSurjective(e.cod().label(b).to_owned()));
        }
        let mut rep: Vec<Option<(usize, FValue)>> = vec![None; e.cod().len()];
        for a in self.carrier.elements() {
            let pushed = self.functor.eval_map(e, &self.structure[a])?;
            match &rep[e.apply(a)] {
                None => rep[e.apply(a)] = Some((a, pushed)),
                Some((first, v)) if *v != pushed => {
                    return Err(Error::IncompatibleKernel(
                        self.carrier.label(*first).to_owned(),
                        self.carrier.label(a).to_owned(),
                    ))
                }
                Some(_) => {}
            }
        }
        Ok(Coalgebra {
            functor: self.functor.clone(),
            carrier: e.cod().clone(),
            structure: rep.into_iter().map(|r| r.expect("surjective").1).collect(),
        })
    }

    /// Disjoint union, with labels tagged `l.` and `r.`, and both injections.
    pub fn coproduct(&self, other: &Coalgebra) -> Result<(Coalgebra, FinMap, FinMap)> {
        self.same_functor(other)?;
        let labels = self
            .carrier
            .labels()
            .iter()
            .map(|l| format!("l.{l}"))
            .chain(other.carrier.labels().iter().map(|l| format!("r.{l}")));
        let carrier = Carrier::new(labels)?;
        let shift = self.len();
        let mut structure = self.structure.clone();
        for v in &other.structure {
            structure.push(other.functor.map_value(v, &mut |&b: &usize| b + shift)?);
        }
        let inl = FinMap::new(
            self.carrier.clone(),
            carrier.clone(),
            self.carrier.elements().collect(),
        )?;
        let inr = FinMap::new(
            other.carrier.clone(),
            carrier.clone(),
            other.carrier.elements().map(|b| b + shift).collect(),
        )?;
        Ok((
            Coalgebra {
                functor: self.functor.clone(),
                carrier,
                structure,
            },
            inl,
            inr,
        ))
    }

    pub(crate) fn same_functor(&self, other: &Coalgebra) -> Result<()> {
        check_functors(&self.functor, &other.functor)
    }

    /// Renders the structure table as `a -> value` lines.
    pub fn render(&self) -> String {
        self.carrier
            .elements()
            .map(|a| {
                format!(
                    "{} -> {}\n",
                    crate::functor::quote_label(self.carrier.label(a)),
                    self.functor.render_over(&self.structure[a], &self.carrier)
                )
            })
            .collect()
    }
}

pub(crate) fn check_functors(a: &FunctorExpr, b: &FunctorExpr) -> Result<()> {
    if a != b {
        return Err(Error::FunctorMismatch {
            left: a.to_string(),
            right: b.to_string(),
        });
    }
    Ok(())
}

/// `○_f(s) = {a : τ(f(a)) ⊆ s}` for a map `f: A -> F B` given pointwise.
pub fn next_time_of(values: &[FValue], dom: &Carrier, s: &BTreeSet<usize>) -> Subobject {
    Subobject::new(
        dom,
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.support().is_subset(s))
            .map(|(a, _)| a),
    )
    .expect("indices come from the domain")
}

/// A subcoalgebra with its inclusion into the parent carrier.
#[derive(Clone, Debug)]
pub struct Subcoalgebra {
    pub coalgebra: Coalgebra,
    pub inclusion: FinMap,
}

/// `F f ∘ α = β ∘ f`.
pub fn is_coalgebra_hom(f: &FinMap, src: &Coalgebra, dst: &Coalgebra) -> Result<bool> {
    src.same_functor(dst)?;
    if *f.dom() != src.carrier || *f.cod() != dst.carrier {
        return Err(Error::CarrierMismatch {
            expected: format!("{} -> {}", src.carrier, dst.carrier),
            found: format!("{} -> {}", f.dom(), f.cod()),
        });
    }
    Ok(hom_failure(f, src, dst)?.is_none())
}

/// The first state where the homomorphism square fails.
pub(crate) fn hom_failure(f: &FinMap, src: &Coalgebra, dst: &Coalgebra) -> Result<Option<usize>> {
    for a in src.carrier.elements() {
        let pushed = src
            .functor
            .map_value(&src.structure[a], &mut |&x: &usize| f.apply(x))?;
        if pushed != dst.structure[f.apply(a)] {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Every coalgebra homomorphism `src -> dst`, by exhaustive search.
pub fn coalgebra_homs(src: &Coalgebra, dst: &Coalgebra, limits: &Limits) -> Result<Vec<FinMap>> {
    src.same_functor(dst)?;
    let (n, k) = (dst.len() as u64, src.len() as u64);
    bounded_pow(n, k, limits.max_maps)
        .ok_or_else(|| cap_error("homomorphism search", n, k, limits.max_maps))?;
    let mut out = Vec::new();
    for f in FinMap::all(&src.carrier, &dst.carrier, limits.max_maps)? {
        if hom_failure(&f, src, dst)?.is_none() {
            out.push(f);
        }
    }
    Ok(out)
}

/// An algebra `e: F X -> X` over a finite carrier, tabulated on `F X`.
#[derive(Clone, Debug)]
pub struct Algebra {
    functor: FunctorExpr,
    carrier: Carrier,
    domain: Vec<FValue>,
    index: HashMap<FValue, usize>,
    table: Vec<usize>,
}

impl Algebra {
    /// `table[i]` is the value on the `i`-th element of `F X` in enumeration order.
    pub fn from_table(
        functor: FunctorExpr,
        carrier: Carrier,
        table: Vec<usize>,
        limits: &Limits,
    ) -> Result<Self> {
        let domain = functor.eval_obj(&carrier, limits.max_enum)?;
        Algebra::with_domain(functor, carrier, domain, table)
    }

    pub(crate) fn with_domain(
        functor: FunctorExpr,
        carrier: Carrier,
        domain: Vec<FValue>,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::NotTotal(format!(
                "{} of {} entries given",
                table.len(),
                domain.len()
            )));
        }
        if table.iter().any(|&x| x >= carrier.len()) {
            return Err(Error::InvalidMap(
                "algebra value outside its carrier".into(),
            ));
        }
        let index = domain
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        Ok(Algebra {
            functor,
            carrier,
            domain,
            index,
            table,
        })
    }

    pub fn from_fn<G>(
        functor: FunctorExpr,
        carrier: Carrier,
        limits: &Limits,
        mut e: G,
    ) -> Result<Self>
    where
        G: FnMut(&FValue) -> usize,
    {
        let domain = functor.eval_obj(&carrier, limits.max_enum)?;
        let table = domain.iter().map(&mut e).collect();
        Algebra::with_domain(functor, carrier, domain, table)
    }

    /// Builds from explicit `(value, result)` pairs, which must cover `F X`.
    pub fn from_pairs(
        functor: FunctorExpr,
        carrier: Carrier,
        pairs: Vec<(FValue, usize)>,
        limits: &Limits,
    ) -> Result<Self> {
        let given: HashMap<FValue, usize> = pairs.into_iter().collect();
        let domain = functor.eval_obj(&carrier, limits.max_enum)?;
        let mut table = Vec::with_capacity(domain.len());
        for v in &domain {
            match given.get(v) {
                Some(&x) => table.push(x),
                None => return Err(Error::NotTotal(functor.render_over(v, &carrier))),
            }
        }
        Algebra::with_domain(functor, carrier, domain, table)
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn domain(&self) -> &[FValue] {
        &self.domain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, v: &FValue) -> Result<usize> {
        self.index
            .get(v)
            .map(|&i| self.table[i])
            .ok_or_else(|| Error::MalformedValue(self.functor.render_over(v, &self.carrier)))
    }

    pub fn render(&self) -> String {
        self.domain
            .iter()
            .zip(&self.table)
            .map(|(v, &x)| {
                format!(
                    "{} -> {}\n",
                    self.functor.render_over(v, &self.carrier),
                    crate::functor::quote_label(self.carrier.label(x))
                )
            })
            .collect()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.functor == other.functor
            && self.carrier == other.carrier
            && self.domain == other.domain
            && self.table == other.table
    }
}

impl Eq for Algebra {}

/// A parametric algebra `e: F X × A -> X`, tabulated with the `A` index
/// varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParaAlgebra {
    base: Algebra,
    params: Carrier,
}

impl ParaAlgebra {
    /// `table[i * |A| + a]` is `e(v_i, a)`.
    pub fn from_table(
        functor: FunctorExpr,
        carrier: Carrier,
        params: Carrier,
        table: Vec<usize>,
        limits: &Limits,
    ) -> Result<Self> {
        let domain = functor.eval_obj(&carrier, limits.max_enum)?;
        ParaAlgebra::with_domain(functor, carrier, params, domain, table)
    }

    pub(crate) fn with_domain(
        functor: FunctorExpr,
        carrier: Carrier,
        params: Carrier,
        domain: Vec<FValue>,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != domain.len() * params.len() {
            return Err(Error::NotTotal(format!(
                "{} of {} entries given",
                table.len(),
                domain.len() * params.len()
            )));
        }
        if table.iter().any(|&x| x >= carrier.len()) {
            return Err(Error::InvalidMap(
                "algebra value outside its carrier".into(),
            ));
        }
        // the flattened table rides along in an `Algebra` whose index maps values to rows
        let index = domain
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        Ok(ParaAlgebra {
            base: Algebra {
                functor,
                carrier,
                domain,
                index,
                table,
            },
            params,
        })
    }

    pub fn from_fn<G>(
        functor: FunctorExpr,
        carrier: Carrier,
        params: Carrier,
        limits: &Limits,
        mut e: G,
    ) -> Result<Self>
    where
        G: FnMut(&FValue, usize) -> usize,
    {
        let domain = functor.eval_obj(&carrier, limits.max_enum)?;
        let table = domain
            .iter()
            .flat_map(|v| params.elements().map(|a| (v, a)).collect::<Vec<_>>())
            .map(|(v, a)| e(v, a))
            .collect();
        ParaAlgebra::with_domain(functor, carrier, params, domain, table)
    }

    pub fn from_pairs(
        functor: FunctorExpr,
        carrier: Carrier,
        params: Carrier,
        pairs: Vec<((FValue, usize), usize)>,
        limits: &Limits,
    ) -> Result<Self> {
        let given: HashMap<(FValue, usize), usize> = pairs.into_iter().collect();
        let domain = functor.eval_obj(&carrier, limits.max_enum)?;
        let mut table = Vec::with_capacity(domain.len() * params.len());
        for v in &domain {
            for a in params.elements() {
                match given.get(&(v.clone(), a)) {
                    Some(&x) => table.push(x),
                    None => {
                        return Err(Error::NotTotal(format!(
                            "{} @ {}",
                            functor.render_over(v, &carrier),
                            params.label(a)
                        )))
                    }
                }
            }
        }
        ParaAlgebra::with_domain(functor, carrier, params, domain, table)
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.base.functor
    }

    pub fn carrier(&self) -> &Carrier {
        &self.base.carrier
    }

    pub fn params(&self) -> &Carrier {
        &self.params
    }

    pub fn domain(&self) -> &[FValue] {
        &self.base.domain
    }

    pub fn table(&self) -> &[usize] {
        &self.base.table
    }

    pub fn apply(&self, v: &FValue, a: usize) -> Result<usize> {
        let row = self.base.index.get(v).ok_or_else(|| {
            Error::MalformedValue(self.base.functor.render_over(v, &self.base.carrier))
        })?;
        Ok(self.base.table[row * self.params.len() + a])
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.base.domain.iter().enumerate() {
            for a in self.params.elements() {
                let x = self.base.table[i * self.params.len() + a];
                out.push_str(&format!(
                    "{} @ {} -> {}\n",
                    self.base.functor.render_over(v, &self.base.carrier),
                    crate::functor::quote_label(self.params.label(a)),
                    crate::functor::quote_label(self.base.carrier.label(x))
                ));
            }
        }
        out
    }
}

/// The graph `a -> b` iff `b ∈ τ(α(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalGraph {
    pub vertices: Carrier,
    pub succ: Vec<BTreeSet<usize>>,
}

impl CanonicalGraph {
    /// An order listing every vertex after all of its successors, or a cycle.
    pub fn bottom_up_order(&self) -> std::result::Result<Vec<usize>, Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.vertices.len();
        let mut mark = vec![Mark::New; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            // iterative DFS; the stack holds (vertex, remaining successors)
            let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
            mark[root] = Mark::Active;
            stack.push((root, self.succ[root].iter().rev().copied().collect()));
            while let Some((v, pending)) = stack.last_mut() {
                let v = *v;
                match pending.pop() {
                    Some(w) => match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Active;
                            stack.push((w, self.succ[w].iter().rev().copied().collect()));
                        }
                        Mark::Active => {
                            let start = stack.iter().position(|(u, _)| *u == w).expect("on stack");
                            return Err(stack[start..].iter().map(|(u, _)| *u).collect());
                        }
                        Mark::Done => {}
                    },
                    None => {
                        mark[v] = Mark::Done;
                        order.push(v);
                        stack.pop();
                    }
                }
            }
        }
        Ok(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.bottom_up_order().is_ok()
    }

    /// The graph as a powerset coalgebra.
    pub fn to_coalgebra(&self) -> Coalgebra {
        Coalgebra {
            functor: FunctorExpr::pow(FunctorExpr::Id),
            carrier: self.vertices.clone(),
            structure: self
                .succ
                .iter()
                .map(|s| FValue::Set(s.iter().map(|&b| FValue::Id(b)).collect()))
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let q = |i: usize| format!("{:?}", self.vertices.label(i));
        let mut out = String::from("digraph canonical {\n");
        for v in self.vertices.elements() {
            out.push_str(&format!("  {};\n", q(v)));
        }
        for (v, ws) in self.succ.iter().enumerate() {
            for &w in ws {
                out.push_str(&format!("  {} -> {};\n", q(v), q(w)));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, ws) in self.succ.iter().enumerate() {
            writeln!(
                f,
                "{} -> {}",
                crate::functor::quote_label(self.vertices.label(v)),
                self.vertices.render_set(ws)
            )?;
        }
        Ok(())
    }
}
