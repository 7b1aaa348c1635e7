//! Law checks over a single coalgebra. Each returns human-readable
//! violations; an empty list means every law held.

use rand::Rng;

use wfcoalg::brute;
use wfcoalg::{
    coalgebra_homs, coreflect, direct_image, inverse_image, is_coalgebra_hom, is_wellfounded,
    wf_part, Coalgebra, FinMap, Limits, Subobject,
};

pub struct Report {
    pub violations: Vec<String>,
    pub homs_checked: usize,
    pub wellfounded: bool,
}

fn fail(out: &mut Vec<String>, c: &Coalgebra, law: &str, detail: String) {
    out.push(format!(
        "{law}: {detail}\n  functor {}\n{}",
        c.functor(),
        c.render()
    ));
}

/// Homomorphisms into `c` worth checking: endomorphisms, subcoalgebra
/// inclusions and the fold `c + c -> c`.
pub fn homs_into(c: &Coalgebra) -> Vec<(Coalgebra, FinMap)> {
    let lim = Limits::default();
    let mut out: Vec<(Coalgebra, FinMap)> = coalgebra_homs(c, c, &lim)
        .unwrap()
        .into_iter()
        .map(|h| (c.clone(), h))
        .collect();
    for s in c.subcoalgebras() {
        let sub = c.subcoalgebra(&s).unwrap().unwrap();
        out.push((sub.coalgebra, sub.inclusion));
    }
    let (sum, inl, inr) = c.coproduct(c).unwrap();
    let mut fold = vec![0; sum.len()];
    for a in c.carrier().elements() {
        fold[inl.apply(a)] = a;
        fold[inr.apply(a)] = a;
    }
    out.push((
        sum.clone(),
        FinMap::new(sum.carrier().clone(), c.carrier().clone(), fold).unwrap(),
    ));
    out
}

/// Corestriction of `h` onto its image, a surjection.
pub fn onto_image(h: &FinMap) -> FinMap {
    let image = direct_image(h, &Subobject::full(h.dom())).unwrap();
    let (carrier, _) = image.carrier();
    let pos: Vec<usize> = {
        let mut p = vec![usize::MAX; h.cod().len()];
        for (i, &m) in image.members().iter().enumerate() {
            p[m] = i;
        }
        p
    };
    FinMap::new(
        h.dom().clone(),
        carrier,
        h.table().iter().map(|&y| pos[y]).collect(),
    )
    .unwrap()
}

pub fn check(c: &Coalgebra, rng: &mut impl Rng) -> Report {
    let lim = Limits::default();
    let mut v = Vec::new();
    let subsets = Subobject::all(c.carrier());
    let next: Vec<Subobject> = subsets.iter().map(|s| c.next_time(s).unwrap()).collect();

    // monotone, meets, agreement with the pullback construction
    for (i, s) in subsets.iter().enumerate() {
        let by_pullback = brute::next_time(c, s, &lim).unwrap();
        if by_pullback != next[i] {
            fail(
                &mut v,
                c,
                "next-time/pullback",
                format!(
                    "{} vs {} at {}",
                    next[i].render(),
                    by_pullback.render(),
                    s.render()
                ),
            );
        }
        for (j, t) in subsets.iter().enumerate() {
            if s.is_subset(t) && !next[i].is_subset(&next[j]) {
                fail(
                    &mut v,
                    c,
                    "monotone",
                    format!("{} ⊆ {}", s.render(), t.render()),
                );
            }
            let meet = c.next_time(&s.meet(t).unwrap()).unwrap();
            if meet != next[i].meet(&next[j]).unwrap() {
                fail(
                    &mut v,
                    c,
                    "meets",
                    format!("{} ∧ {}", s.render(), t.render()),
                );
            }
        }
        let cart = c.is_cartesian(s).unwrap();
        if cart != brute::is_cartesian(c, s, &lim).unwrap() {
            fail(&mut v, c, "cartesian", s.render());
        }
    }

    // supports are least
    for a in c.carrier().elements() {
        let fast = c.functor().support(c.carrier(), c.at(a));
        let slow = brute::support(c.functor(), c.carrier(), c.at(a), &lim).unwrap();
        if fast != slow {
            fail(
                &mut v,
                c,
                "support",
                format!("{} vs {}", fast.render(), slow.render()),
            );
        }
        for s in &subsets {
            if c.functor().in_image(s, c.at(a))
                != brute::in_image(c.functor(), s, c.at(a), &lim).unwrap()
            {
                fail(&mut v, c, "in-image", s.render());
            }
        }
    }

    // least fixed point
    let wf = wf_part(c);
    if wf.part != brute::wf_part(c).unwrap() {
        fail(&mut v, c, "lfp", wf.part.render());
    }
    if wf.iterations() > c.len() + 1 {
        fail(&mut v, c, "lfp-iterations", wf.iterations().to_string());
    }
    let wellfounded = match is_wellfounded(c) {
        Ok(b) => b,
        Err(e) => {
            fail(&mut v, c, "verdicts", e.to_string());
            false
        }
    };
    if !is_wellfounded(&wf.structure).unwrap() {
        fail(&mut v, c, "wf-part-wellfounded", wf.part.render());
    }

    // Galois connection for a random endomap
    let table = (0..c.len()).map(|_| rng.gen_range(0..c.len())).collect();
    let f = FinMap::new(c.carrier().clone(), c.carrier().clone(), table).unwrap();
    for s in &subsets {
        let pre = inverse_image(&f, s).unwrap();
        for t in &subsets {
            let lhs = direct_image(&f, t).unwrap().is_subset(s);
            if lhs != t.is_subset(&pre) {
                fail(
                    &mut v,
                    c,
                    "galois",
                    format!("{} {} {}", f.render(), s.render(), t.render()),
                );
            }
        }
    }

    // homomorphism laws
    let homs = homs_into(c);
    for (b, h) in &homs {
        assert!(is_coalgebra_hom(h, b, c).unwrap());
        let exact = h.is_injective() || c.functor().preserves_inverse_images();
        for (i, s) in subsets.iter().enumerate() {
            let lhs = b.next_time(&inverse_image(h, s).unwrap()).unwrap();
            let rhs = inverse_image(h, &next[i]).unwrap();
            if !lhs.is_subset(&rhs) {
                fail(
                    &mut v,
                    c,
                    "amb",
                    format!("{} along {}", s.render(), h.render()),
                );
            }
            if exact && lhs != rhs {
                fail(
                    &mut v,
                    c,
                    "pback",
                    format!("{} along {}", s.render(), h.render()),
                );
            }
        }
        if is_wellfounded(b).unwrap() {
            match coreflect(h, b, c) {
                Ok(g) => {
                    if g.then(&wf.inclusion).unwrap() != *h
                        || !is_coalgebra_hom(&g, b, &wf.structure).unwrap()
                    {
                        fail(&mut v, c, "coreflection", h.render());
                    }
                }
                Err(e) => fail(&mut v, c, "coreflection", e.to_string()),
            }
        }
    }

    // closure of well-foundedness
    if wellfounded {
        for s in c.subcoalgebras() {
            let sub = c.subcoalgebra(&s).unwrap().unwrap();
            if !is_wellfounded(&sub.coalgebra).unwrap() {
                fail(&mut v, c, "closure/sub", s.render());
            }
        }
        for (b, h) in &homs {
            if b.carrier() == c.carrier() {
                let q = c.quotient(&onto_image(h)).unwrap();
                if !is_wellfounded(&q).unwrap() {
                    fail(&mut v, c, "closure/quotient", h.render());
                }
            }
        }
        let (sum, _, _) = c.coproduct(&wf.structure).unwrap();
        if !is_wellfounded(&sum).unwrap() {
            fail(&mut v, c, "closure/coproduct", String::new());
        }
    }

    Report {
        violations: v,
        homs_checked: homs.len(),
        wellfounded,
    }
}
