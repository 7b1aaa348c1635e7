//! Slow, definition-level versions of the main operations, used to
//! cross-check the fast ones. Everything here enumerates `F X` explicitly.

use std::collections::HashMap;

use crate::coalgebra::Coalgebra;
use crate::error::{Limits, Result};
use crate::finset::{direct_image, pullback, Carrier, FinMap, Subobject};
use crate::functor::{FValue, FunctorExpr};

/// `F X` as a plain finite set, with its index.
pub struct Enumerated {
    pub values: Vec<FValue>,
    pub carrier: Carrier,
    index: HashMap<FValue, usize>,
}

impl Enumerated {
    pub fn new(f: &FunctorExpr, x: &Carrier, limits: &Limits) -> Result<Self> {
        let values = f.eval_obj(x, limits.max_enum)?;
        let index = values
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        Ok(Enumerated {
            carrier: Carrier::range(values.len()),
            values,
            index,
        })
    }

    pub fn index_of(&self, v: &FValue) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// `F m: F S -> F X` as a map between enumerations.
    pub fn map_from(&self, f: &FunctorExpr, m: &FinMap, src: &Enumerated) -> Result<FinMap> {
        let table = src
            .values
            .iter()
            .map(|v| Ok(self.index[&f.eval_map(m, v)?]))
            .collect::<Result<Vec<_>>>()?;
        FinMap::new(src.carrier.clone(), self.carrier.clone(), table)
    }
}

/// Whether `v` is `F m (w)` for some `w ∈ F S`, by trying every `w`.
pub fn in_image(f: &FunctorExpr, s: &Subobject, v: &FValue, limits: &Limits) -> Result<bool> {
    let (sub, incl) = s.carrier();
    for w in f.eval_obj(&sub, limits.max_enum)? {
        if f.eval_map(&incl, &w)? == *v {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The intersection of every subset whose `F`-image contains `v`.
pub fn support(f: &FunctorExpr, x: &Carrier, v: &FValue, limits: &Limits) -> Result<Subobject> {
    let mut out = Subobject::full(x);
    for s in Subobject::all(x) {
        if in_image(f, &s, v, limits)? {
            out = out.meet(&s)?;
        }
    }
    Ok(out)
}

/// `○s` as the image of the pullback of `α` along `F(s ↪ A)`.
pub fn next_time(c: &Coalgebra, s: &Subobject, limits: &Limits) -> Result<Subobject> {
    let f = c.functor();
    let fa = Enumerated::new(f, c.carrier(), limits)?;
    let (sub, incl) = s.carrier();
    let fs = Enumerated::new(f, &sub, limits)?;
    let alpha = structure_map(c, &fa)?;
    let fm = fa.map_from(f, &incl, &fs)?;
    let pb = pullback(&alpha, &fm)?;
    direct_image(&pb.left, &Subobject::full(&pb.carrier))
}

/// `α: A -> F A` as a map into an enumeration.
pub fn structure_map(c: &Coalgebra, fa: &Enumerated) -> Result<FinMap> {
    let table = c
        .structure()
        .iter()
        .map(|v| fa.index[v])
        .collect::<Vec<_>>();
    FinMap::new(c.carrier().clone(), fa.carrier.clone(), table)
}

/// Whether `s` is a subcoalgebra whose square with `α` is a pullback,
/// checked by building the pullback and comparing it with the square.
pub fn is_cartesian(c: &Coalgebra, s: &Subobject, limits: &Limits) -> Result<bool> {
    let Some(sub) = c.subcoalgebra(s)? else {
        return Ok(false);
    };
    let f = c.functor();
    let fa = Enumerated::new(f, c.carrier(), limits)?;
    let fs = Enumerated::new(f, sub.coalgebra.carrier(), limits)?;
    let alpha = structure_map(c, &fa)?;
    let beta = structure_map(&sub.coalgebra, &fs)?;
    let fm = fa.map_from(f, &sub.inclusion, &fs)?;
    let pb = pullback(&alpha, &fm)?;
    let u = pb.mediate(&sub.inclusion, &beta)?;
    Ok(u.is_injective() && u.is_surjective())
}

/// The least fixed point of `○` as the meet of every `s` with `○s ⊆ s`.
pub fn wf_part(c: &Coalgebra) -> Result<Subobject> {
    let mut out = Subobject::full(c.carrier());
    for s in Subobject::all(c.carrier()) {
        if c.next_time(&s)?.is_subset(&s) {
            out = out.meet(&s)?;
        }
    }
    Ok(out)
}

/// Every homomorphism `A -> B` found by trying every map.
pub fn coalgebra_homs(src: &Coalgebra, dst: &Coalgebra, limits: &Limits) -> Result<Vec<FinMap>> {
    let mut out = Vec::new();
    for h in FinMap::all(src.carrier(), dst.carrier(), limits.max_maps)? {
        let ok = src
            .carrier()
            .elements()
            .map(|a| Ok(src.functor().eval_map(&h, src.at(a))? == *dst.at(h.apply(a))))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if ok {
            out.push(h);
        }
    }
    Ok(out)
}
