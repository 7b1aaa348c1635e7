//! Finite sets, total maps between them, subsets, images and pullbacks.
//!
//! Elements of a [`Carrier`] are addressed by their position; labels only
//! matter for display and parsing. Every operation here is pure.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite, ordered set of distinct labelled elements.
#[derive(Clone)]
pub struct Carrier {
    labels: Arc<[String]>,
}

impl Carrier {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        Ok(Carrier {
            labels: labels.into(),
        })
    }

    /// The carrier `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        Carrier {
            labels: (0..n).map(|i| i.to_string()).collect::<Vec<_>>().into(),
        }
    }

    pub fn empty() -> Self {
        Carrier::range(0)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// Renders a set of element indices as `{a,b}`.
    pub fn render_set<'a, I: IntoIterator<Item = &'a usize>>(&self, members: I) -> String {
        let parts: Vec<&str> = members.into_iter().map(|&i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Carrier {}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

/// A total function between two carriers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMap {
    dom: Carrier,
    cod: Carrier,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: Carrier, cod: Carrier, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::InvalidMap(format!(
                "table has {} entries for a domain of {} elements",
                table.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= cod.len()) {
            return Err(Error::InvalidMap(format!(
                "image index {bad} outside codomain of {} elements",
                cod.len()
            )));
        }
        Ok(FinMap { dom, cod, table })
    }

    /// Builds a map from label pairs.
    pub fn from_labels(dom: &Carrier, cod: &Carrier, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut table = vec![usize::MAX; dom.len()];
        for (x, y) in pairs {
            let i = dom
                .index_of(x)
                .ok_or_else(|| Error::UnknownElement(x.to_string()))?;
            let j = cod
                .index_of(y)
                .ok_or_else(|| Error::UnknownElement(y.to_string()))?;
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidMap(format!(
                "`{}` is not mapped",
                dom.label(i)
            )));
        }
        FinMap::new(dom.clone(), cod.clone(), table)
    }

    pub fn identity(c: &Carrier) -> Self {
        FinMap {
            dom: c.clone(),
            cod: c.clone(),
            table: c.elements().collect(),
        }
    }

    pub fn constant(dom: &Carrier, cod: &Carrier, value: usize) -> Result<Self> {
        FinMap::new(dom.clone(), cod.clone(), vec![value; dom.len()])
    }

    pub fn dom(&self) -> &Carrier {
        &self.dom
    }

    pub fn cod(&self) -> &Carrier {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinMap) -> Result<FinMap> {
        if self.cod != other.dom {
            return Err(Error::CarrierMismatch {
                expected: other.dom.to_string(),
                found: self.cod.to_string(),
            });
        }
        Ok(FinMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            table: self.table.iter().map(|&y| other.table[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.first_missed().is_none()
    }

    /// The first codomain element without a preimage.
    pub fn first_missed(&self) -> Option<usize> {
        let mut hit = vec![false; self.cod.len()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.iter().position(|h| !h)
    }

    /// Every map `dom -> cod`, in lexicographic table order.
    pub fn all(dom: &Carrier, cod: &Carrier, cap: u64) -> Result<Vec<FinMap>> {
        let (n, k) = (cod.len() as u64, dom.len() as u64);
        let total = crate::error::bounded_pow(n, k, cap)
            .ok_or_else(|| crate::error::cap_error("map enumeration", n, k, cap))?;
        let mut out = Vec::with_capacity(total as usize);
        let mut table = vec![0usize; dom.len()];
        for _ in 0..total {
            out.push(FinMap {
                dom: dom.clone(),
                cod: cod.clone(),
                table: table.clone(),
            });
            odometer(&mut table, cod.len());
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .dom
            .elements()
            .map(|x| format!("{}↦{}", self.dom.label(x), self.cod.label(self.table[x])))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Advances a big-endian base-`base` counter by one, wrapping to zero.
pub(crate) fn odometer(digits: &mut [usize], base: usize) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return;
        }
        *d = 0;
    }
}

/// A subset of a carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subobject {
    of: Carrier,
    members: BTreeSet<usize>,
}

impl Subobject {
    pub fn new<I: IntoIterator<Item = usize>>(of: &Carrier, members: I) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= of.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(Subobject {
            of: of.clone(),
            members,
        })
    }

    pub fn from_labels(of: &Carrier, labels: &[&str]) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| {
                of.index_of(l)
                    .ok_or_else(|| Error::UnknownElement(l.to_string()))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Subobject {
            of: of.clone(),
            members,
        })
    }

    pub(crate) fn from_set(of: &Carrier, members: BTreeSet<usize>) -> Self {
        debug_assert!(members.iter().all(|&m| m < of.len()));
        Subobject {
            of: of.clone(),
            members,
        }
    }

    pub fn empty(of: &Carrier) -> Self {
        Subobject::from_set(of, BTreeSet::new())
    }

    pub fn full(of: &Carrier) -> Self {
        Subobject::from_set(of, of.elements().collect())
    }

    /// All `2^|of|` subsets, ordered by bitmask.
    pub fn all(of: &Carrier) -> Vec<Subobject> {
        assert!(
            of.len() < 24,
            "refusing to enumerate 2^{} subsets",
            of.len()
        );
        (0u32..1 << of.len())
            .map(|mask| {
                Subobject::from_set(
                    of,
                    of.elements().filter(|&i| mask & (1 << i) != 0).collect(),
                )
            })
            .collect()
    }

    pub fn of(&self) -> &Carrier {
        &self.of
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.of.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn is_subset(&self, other: &Subobject) -> bool {
        self.members.is_subset(&other.members)
    }

    fn same_carrier(&self, other: &Subobject) -> Result<()> {
        if self.of != other.of {
            return Err(Error::CarrierMismatch {
                expected: self.of.to_string(),
                found: other.of.to_string(),
            });
        }
        Ok(())
    }

    pub fn meet(&self, other: &Subobject) -> Result<Subobject> {
        self.same_carrier(other)?;
        Ok(Subobject::from_set(
            &self.of,
            self.members.intersection(&other.members).copied().collect(),
        ))
    }

    pub fn join(&self, other: &Subobject) -> Result<Subobject> {
        self.same_carrier(other)?;
        Ok(Subobject::from_set(
            &self.of,
            self.members.union(&other.members).copied().collect(),
        ))
    }

    /// The subset as a carrier of its own, with the inclusion into `of`.
    pub fn carrier(&self) -> (Carrier, FinMap) {
        let labels: Vec<String> = self
            .members
            .iter()
            .map(|&i| self.of.label(i).to_owned())
            .collect();
        let sub = Carrier::new(labels).expect("labels of a carrier are distinct");
        let incl = FinMap {
            dom: sub.clone(),
            cod: self.of.clone(),
            table: self.members.iter().copied().collect(),
        };
        (sub, incl)
    }

    pub fn render(&self) -> String {
        self.of.render_set(&self.members)
    }
}

/// Inverse image `f⁻¹(s)`.
pub fn inverse_image(f: &FinMap, s: &Subobject) -> Result<Subobject> {
    if s.of != f.cod {
        return Err(Error::CarrierMismatch {
            expected: f.cod.to_string(),
            found: s.of.to_string(),
        });
    }
    Ok(Subobject::from_set(
        &f.dom,
        f.dom
            .elements()
            .filter(|&x| s.contains(f.apply(x)))
            .collect(),
    ))
}

/// Direct image `f[t]`.
pub fn direct_image(f: &FinMap, t: &Subobject) -> Result<Subobject> {
    if t.of != f.dom {
        return Err(Error::CarrierMismatch {
            expected: f.dom.to_string(),
            found: t.of.to_string(),
        });
    }
    Ok(Subobject::from_set(
        &f.cod,
        t.members.iter().map(|&x| f.apply(x)).collect(),
    ))
}

/// A pullback of a cospan `f: X -> Z <- Y: g`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub carrier: Carrier,
    pub left: FinMap,
    pub right: FinMap,
    pairs: Vec<(usize, usize)>,
}

impl Pullback {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The unique map from the apex of a commuting cone into the pullback.
    pub fn mediate(&self, p: &FinMap, q: &FinMap) -> Result<FinMap> {
        if p.dom != q.dom {
            return Err(Error::CarrierMismatch {
                expected: p.dom.to_string(),
                found: q.dom.to_string(),
            });
        }
        if p.cod != self.left.cod || q.cod != self.right.cod {
            return Err(Error::InvalidMap(
                "cone legs do not match the cospan".into(),
            ));
        }
        let index: HashMap<(usize, usize), usize> = self
            .pairs
            .iter()
            .enumerate()
            .map(|(i, &pr)| (pr, i))
            .collect();
        let table = p
            .dom
            .elements()
            .map(|w| {
                index
                    .get(&(p.apply(w), q.apply(w)))
                    .copied()
                    .ok_or_else(|| {
                        Error::InvalidMap(format!("cone does not commute at `{}`", p.dom.label(w)))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        FinMap::new(p.dom.clone(), self.carrier.clone(), table)
    }
}

/// The pullback `{(x,y) : f(x) = g(y)}` with its projections, in lexicographic order.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback> {
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch {
            left: f.cod.to_string(),
            right: g.cod.to_string(),
        });
    }
    let pairs: Vec<(usize, usize)> = f
        .dom
        .elements()
        .flat_map(|x| {
            g.dom
                .elements()
                .filter(move |&y| f.apply(x) == g.apply(y))
                .map(move |y| (x, y))
        })
        .collect();
    let carrier = Carrier::new(
        pairs
            .iter()
            .map(|&(x, y)| format!("({},{})", f.dom.label(x), g.dom.label(y))),
    )?;
    let left = FinMap::new(
        carrier.clone(),
        f.dom.clone(),
        pairs.iter().map(|p| p.0).collect(),
    )?;
    let right = FinMap::new(
        carrier.clone(),
        g.dom.clone(),
        pairs.iter().map(|p| p.1).collect(),
    )?;
    Ok(Pullback {
        carrier,
        left,
        right,
        pairs,
    })
}
