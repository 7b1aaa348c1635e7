//! The grammar of finite set functors and their action on sets and maps.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{Carrier, FinMap, Subobject};

/// A constant set (or exponent alphabet) occurring in a functor expression.
///
/// The name is how the set is written in functor syntax: a numeral, a
/// declared carrier name, or an inline literal such as `{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstSet {
    pub name: String,
    pub carrier: Carrier,
}

impl ConstSet {
    /// The numeral `n`: `1` is `{*}`, any other `n` is `{0,..,n-1}`.
    pub fn numeral(n: usize) -> Self {
        let carrier = if n == 1 {
            Carrier::new(["*"]).expect("singleton")
        } else {
            Carrier::range(n)
        };
        ConstSet {
            name: n.to_string(),
            carrier,
        }
    }

    pub fn named(name: impl Into<String>, carrier: Carrier) -> Self {
        ConstSet {
            name: name.into(),
            carrier,
        }
    }

    /// An inline literal, named after its own rendering.
    pub fn literal(carrier: Carrier) -> Self {
        let labels: Vec<String> = carrier.labels().iter().map(|l| quote_label(l)).collect();
        ConstSet {
            name: format!("{{{}}}", labels.join(",")),
            carrier,
        }
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }
}

/// Syntax tree of a finite set endofunctor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorExpr {
    Const(ConstSet),
    Id,
    Sum(Vec<FunctorExpr>),
    Prod(Vec<FunctorExpr>),
    /// `G^Σ`, functions from a finite nonempty alphabet into `G`.
    Exp(ConstSet, Box<FunctorExpr>),
    /// Finite powerset `P(G)`.
    Pow(Box<FunctorExpr>),
    /// `R X = {(x,y) ∈ X×X : x ≠ y} + {d}`. Preserves finite intersections
    /// but not inverse images.
    R,
}

/// An element of `F X`, with carrier elements of type `E`.
///
/// Equality is structural; sets are kept ordered so equal values compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FValue<E = usize> {
    Const(usize),
    Id(E),
    Inj(usize, Box<FValue<E>>),
    Tuple(Vec<FValue<E>>),
    Func(Vec<FValue<E>>),
    Set(BTreeSet<FValue<E>>),
    /// The point `d` of `R X`.
    Dot,
    /// A pair of distinct elements in `R X`.
    Pair(E, E),
}

impl<E: Ord + Clone> FValue<E> {
    /// Least support: the carrier elements the value mentions.
    pub fn support(&self) -> BTreeSet<E> {
        let mut out = BTreeSet::new();
        self.collect_support(&mut out);
        out
    }

    fn collect_support(&self, out: &mut BTreeSet<E>) {
        match self {
            FValue::Const(_) | FValue::Dot => {}
            FValue::Id(x) => {
                out.insert(x.clone());
            }
            FValue::Pair(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            FValue::Inj(_, v) => v.collect_support(out),
            FValue::Tuple(vs) | FValue::Func(vs) => vs.iter().for_each(|v| v.collect_support(out)),
            FValue::Set(vs) => vs.iter().for_each(|v| v.collect_support(out)),
        }
    }
}

impl FunctorExpr {
    pub fn constant(n: usize) -> Self {
        FunctorExpr::Const(ConstSet::numeral(n))
    }

    pub fn sum(parts: Vec<FunctorExpr>) -> Self {
        FunctorExpr::Sum(parts)
    }

    pub fn prod(parts: Vec<FunctorExpr>) -> Self {
        FunctorExpr::Prod(parts)
    }

    pub fn pow(inner: FunctorExpr) -> Self {
        FunctorExpr::Pow(Box::new(inner))
    }

    pub fn exp(alphabet: ConstSet, inner: FunctorExpr) -> Self {
        FunctorExpr::Exp(alphabet, Box::new(inner))
    }

    pub fn depth(&self) -> usize {
        match self {
            FunctorExpr::Const(_) | FunctorExpr::Id | FunctorExpr::R => 0,
            FunctorExpr::Sum(fs) | FunctorExpr::Prod(fs) => {
                1 + fs.iter().map(FunctorExpr::depth).max().unwrap_or(0)
            }
            FunctorExpr::Exp(_, g) | FunctorExpr::Pow(g) => 1 + g.depth(),
        }
    }

    pub fn contains_r(&self) -> bool {
        match self {
            FunctorExpr::R => true,
            FunctorExpr::Const(_) | FunctorExpr::Id => false,
            FunctorExpr::Sum(fs) | FunctorExpr::Prod(fs) => fs.iter().any(FunctorExpr::contains_r),
            FunctorExpr::Exp(_, g) | FunctorExpr::Pow(g) => g.contains_r(),
        }
    }

    /// Structural verdict: every grammar functor without an `R` leaf
    /// preserves inverse images.
    pub fn preserves_inverse_images(&self) -> bool {
        !self.contains_r()
    }

    /// `|F X|` for `|X| = n`, or `None` on overflow.
    pub fn cardinality(&self, n: usize) -> Option<u128> {
        let n = n as u128;
        match self {
            FunctorExpr::Const(c) => Some(c.len() as u128),
            FunctorExpr::Id => Some(n),
            FunctorExpr::R => n.checked_mul(n.saturating_sub(1))?.checked_add(1),
            FunctorExpr::Sum(fs) => fs
                .iter()
                .try_fold(0u128, |acc, f| acc.checked_add(f.cardinality(n as usize)?)),
            FunctorExpr::Prod(fs) => {
                let sizes = fs
                    .iter()
                    .map(|f| f.cardinality(n as usize))
                    .collect::<Vec<_>>();
                if sizes.contains(&Some(0)) {
                    return Some(0);
                }
                sizes
                    .into_iter()
                    .try_fold(1u128, |acc, s| acc.checked_mul(s?))
            }
            FunctorExpr::Exp(sigma, g) => {
                let base = g.cardinality(n as usize)?;
                base.checked_pow(u32::try_from(sigma.len()).ok()?)
            }
            FunctorExpr::Pow(g) => {
                let k = g.cardinality(n as usize)?;
                if k >= 127 {
                    None
                } else {
                    Some(1u128 << k)
                }
            }
        }
    }

    /// `F ∅ = ∅`.
    pub fn is_empty_on_empty(&self) -> bool {
        self.cardinality(0) == Some(0)
    }

    /// Every element of `F X` where `X` is given by `elems`, duplicate-free
    /// and in a fixed order. Fails rather than truncates past `cap`.
    pub fn enumerate<E: Clone + Ord>(&self, elems: &[E], cap: u64) -> Result<Vec<FValue<E>>> {
        match self.cardinality(elems.len()) {
            Some(k) if k <= cap as u128 => Ok(self.enumerate_unchecked(elems)),
            size => Err(Error::CapExceeded {
                what: "functor enumeration",
                needed: size.map_or_else(|| "more than 2^127".to_owned(), |k| k.to_string()),
                cap,
            }),
        }
    }

    fn enumerate_unchecked<E: Clone + Ord>(&self, elems: &[E]) -> Vec<FValue<E>> {
        match self {
            FunctorExpr::Const(c) => (0..c.len()).map(FValue::Const).collect(),
            FunctorExpr::Id => elems.iter().cloned().map(FValue::Id).collect(),
            FunctorExpr::R => {
                let mut out = vec![FValue::Dot];
                for x in elems {
                    for y in elems {
                        if x != y {
                            out.push(FValue::Pair(x.clone(), y.clone()));
                        }
                    }
                }
                out
            }
            FunctorExpr::Sum(fs) => fs
                .iter()
                .enumerate()
                .flat_map(|(k, f)| {
                    f.enumerate_unchecked(elems)
                        .into_iter()
                        .map(move |v| FValue::Inj(k, Box::new(v)))
                })
                .collect(),
            FunctorExpr::Prod(fs) => {
                if fs.iter().any(|f| f.cardinality(elems.len()) == Some(0)) {
                    return Vec::new();
                }
                let parts: Vec<Vec<FValue<E>>> =
                    fs.iter().map(|f| f.enumerate_unchecked(elems)).collect();
                cartesian(&parts).into_iter().map(FValue::Tuple).collect()
            }
            FunctorExpr::Exp(sigma, g) => {
                let inner = g.enumerate_unchecked(elems);
                let parts = vec![inner; sigma.len()];
                cartesian(&parts).into_iter().map(FValue::Func).collect()
            }
            FunctorExpr::Pow(g) => {
                let inner = g.enumerate_unchecked(elems);
                (0u128..1 << inner.len())
                    .map(|mask| {
                        FValue::Set(
                            inner
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| mask & (1 << i) != 0)
                                .map(|(_, v)| v.clone())
                                .collect(),
                        )
                    })
                    .collect()
            }
        }
    }

    /// `F X` for a carrier `X`.
    pub fn eval_obj(&self, x: &Carrier, cap: u64) -> Result<Vec<FValue>> {
        let elems: Vec<usize> = x.elements().collect();
        self.enumerate(&elems, cap)
    }

    /// Checks that `v` has the shape of `F` and only mentions members.
    pub fn check<E: PartialEq>(&self, v: &FValue<E>, member: &dyn Fn(&E) -> bool) -> Result<()> {
        let bad = |what: &str| {
            Err(Error::MalformedValue(format!(
                "{what} for functor `{self}`"
            )))
        };
        match (self, v) {
            (FunctorExpr::Const(c), FValue::Const(i)) => {
                if *i < c.len() {
                    Ok(())
                } else {
                    bad("constant out of range")
                }
            }
            (FunctorExpr::Id, FValue::Id(x)) => {
                if member(x) {
                    Ok(())
                } else {
                    bad("element outside the carrier")
                }
            }
            (FunctorExpr::R, FValue::Dot) => Ok(()),
            (FunctorExpr::R, FValue::Pair(x, y)) => {
                if !member(x) || !member(y) {
                    bad("element outside the carrier")
                } else if x == y {
                    bad("pair components must differ")
                } else {
                    Ok(())
                }
            }
            (FunctorExpr::Sum(fs), FValue::Inj(k, w)) => match fs.get(*k) {
                Some(f) => f.check(w, member),
                None => bad("injection index out of range"),
            },
            (FunctorExpr::Prod(fs), FValue::Tuple(ws)) => {
                if fs.len() != ws.len() {
                    return bad("tuple arity mismatch");
                }
                fs.iter().zip(ws).try_for_each(|(f, w)| f.check(w, member))
            }
            (FunctorExpr::Exp(sigma, g), FValue::Func(ws)) => {
                if sigma.len() != ws.len() {
                    return bad("function table arity mismatch");
                }
                ws.iter().try_for_each(|w| g.check(w, member))
            }
            (FunctorExpr::Pow(g), FValue::Set(ws)) => {
                ws.iter().try_for_each(|w| g.check(w, member))
            }
            _ => bad("shape mismatch"),
        }
    }

    /// Well-formedness over the carrier `{0..n-1}`, including distinct pair components.
    pub fn check_over(&self, v: &FValue, n: usize) -> Result<()> {
        self.check(v, &|&x| x < n)
    }

    /// The action of `F` on a map, given elementwise. Pairs of `R` collapse
    /// to `d` exactly when the map merges their components.
    pub fn map_value<E, E2, M>(&self, v: &FValue<E>, f: &mut M) -> Result<FValue<E2>>
    where
        E2: Ord + Clone,
        M: FnMut(&E) -> E2,
    {
        let bad = || {
            Err(Error::MalformedValue(format!(
                "shape mismatch for functor `{self}`"
            )))
        };
        Ok(match (self, v) {
            (FunctorExpr::Const(_), FValue::Const(i)) => FValue::Const(*i),
            (FunctorExpr::Id, FValue::Id(x)) => FValue::Id(f(x)),
            (FunctorExpr::R, FValue::Dot) => FValue::Dot,
            (FunctorExpr::R, FValue::Pair(x, y)) => {
                let (fx, fy) = (f(x), f(y));
                if fx == fy {
                    FValue::Dot
                } else {
                    FValue::Pair(fx, fy)
                }
            }
            (FunctorExpr::Sum(fs), FValue::Inj(k, w)) => match fs.get(*k) {
                Some(g) => FValue::Inj(*k, Box::new(g.map_value(w, f)?)),
                None => return bad(),
            },
            (FunctorExpr::Prod(fs), FValue::Tuple(ws)) if fs.len() == ws.len() => FValue::Tuple(
                fs.iter()
                    .zip(ws)
                    .map(|(g, w)| g.map_value(w, f))
                    .collect::<Result<_>>()?,
            ),
            (FunctorExpr::Exp(sigma, g), FValue::Func(ws)) if sigma.len() == ws.len() => {
                FValue::Func(
                    ws.iter()
                        .map(|w| g.map_value(w, f))
                        .collect::<Result<_>>()?,
                )
            }
            (FunctorExpr::Pow(g), FValue::Set(ws)) => FValue::Set(
                ws.iter()
                    .map(|w| g.map_value(w, f))
                    .collect::<Result<_>>()?,
            ),
            _ => return bad(),
        })
    }

    /// `F f` applied to a value over `f.dom()`.
    pub fn eval_map(&self, f: &FinMap, v: &FValue) -> Result<FValue> {
        self.check_over(v, f.dom().len())?;
        self.map_value(v, &mut |&x| f.apply(x))
    }

    /// `τ_X(v)`: the least subset of `X` whose `F`-image contains `v`.
    pub fn support(&self, x: &Carrier, v: &FValue) -> Subobject {
        Subobject::from_set(x, v.support())
    }

    /// Whether `v ∈ F X` lies in the image of `F(S ↪ X)`.
    pub fn in_image(&self, s: &Subobject, v: &FValue) -> bool {
        v.support().iter().all(|x| s.contains(*x))
    }

    /// Renders a value in the textual value syntax.
    pub fn render_value<E>(&self, v: &FValue<E>, label: &dyn Fn(&E) -> String) -> String {
        let mut out = String::new();
        self.render_into(v, label, &mut out);
        out
    }

    /// Renders a value over the elements of `x`.
    pub fn render_over(&self, v: &FValue, x: &Carrier) -> String {
        self.render_value(v, &|&i: &usize| quote_label(x.label(i)))
    }

    fn render_into<E>(&self, v: &FValue<E>, label: &dyn Fn(&E) -> String, out: &mut String) {
        use std::fmt::Write;
        match (self, v) {
            (FunctorExpr::Const(c), FValue::Const(i)) => {
                out.push_str(&quote_label(c.carrier.label(*i)))
            }
            (FunctorExpr::Id, FValue::Id(x)) => out.push_str(&label(x)),
            (FunctorExpr::R, FValue::Dot) => out.push('d'),
            (FunctorExpr::R, FValue::Pair(x, y)) => {
                let _ = write!(out, "({}, {})", label(x), label(y));
            }
            (FunctorExpr::Sum(fs), FValue::Inj(k, w)) => {
                let _ = write!(out, "in{k}(");
                fs[*k].render_into(w, label, out);
                out.push(')');
            }
            (FunctorExpr::Prod(fs), FValue::Tuple(ws)) => {
                out.push('(');
                for (i, (g, w)) in fs.iter().zip(ws).enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    g.render_into(w, label, out);
                }
                out.push(')');
            }
            (FunctorExpr::Exp(sigma, g), FValue::Func(ws)) => {
                out.push('[');
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    let _ = write!(out, "{}: ", quote_label(sigma.carrier.label(i)));
                    g.render_into(w, label, out);
                }
                out.push(']');
            }
            (FunctorExpr::Pow(g), FValue::Set(ws)) => {
                out.push('{');
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    g.render_into(w, label, out);
                }
                out.push('}');
            }
            _ => out.push_str("<malformed>"),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            FunctorExpr::Const(c) => write!(f, "{}", c.name),
            FunctorExpr::Id => write!(f, "X"),
            FunctorExpr::R => write!(f, "R"),
            FunctorExpr::Pow(g) => {
                write!(f, "P(")?;
                g.fmt_prec(f, 0)?;
                write!(f, ")")
            }
            FunctorExpr::Exp(sigma, g) => {
                if prec > 2 {
                    write!(f, "(")?;
                }
                g.fmt_prec(f, 3)?;
                write!(f, "^{}", sigma.name)?;
                if prec > 2 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            FunctorExpr::Sum(fs) | FunctorExpr::Prod(fs) => {
                let (mine, sep, empty) = match self {
                    FunctorExpr::Sum(_) => (0, " + ", "0"),
                    _ => (1, " * ", "1"),
                };
                if fs.is_empty() {
                    return write!(f, "{empty}");
                }
                let wrap = prec > mine || fs.len() == 1;
                if wrap {
                    write!(f, "(")?;
                }
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    g.fmt_prec(f, mine + 1)?;
                }
                if wrap {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn cartesian<T: Clone>(parts: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for part in parts {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                part.iter().map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// Characters allowed in an unquoted element label.
pub fn is_label_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '•')
}

/// Writes a label bare when it is a plain word (or `*`), quoted otherwise.
pub fn quote_label(label: &str) -> String {
    if label == "*" || (!label.is_empty() && label.chars().all(is_label_char)) {
        label.to_owned()
    } else {
        let mut out = String::from('"');
        for c in label.chars() {
            if c == '"' || c == '\\' {
                out.push('\\');
            }
            out.push(c);
        }
        out.push('"');
        out
    }
}
