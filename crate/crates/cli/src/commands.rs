//! Report-producing commands. Each returns the full report text and an exit
//! code: 0 when the property holds or the value was computed, 1 when it
//! fails (with a witness), 2 for usage errors, 3 when a cap was exceeded.

use std::fmt::Write as _;

use wfcoalg::functor::quote_label;
use wfcoalg::{
    find_homs, find_para_homs, hylo, initial_chain, is_wellfounded, para_hylo, parametric_oracle,
    recursive_oracle, unfold_to_mu, wf_part, Coalgebra, Error, FinMap, Limits, OracleOptions,
    OracleVerdict, Unfolding, WitnessPolicy,
};

use crate::spec::{NamedCoalgebra, SpecDocument};

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    CheckWf,
    WfPart,
    CanonicalGraph,
    Hylo,
    ParaHylo,
    InitialChain,
    FindHoms,
    OracleRecursive,
    OracleParametric,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub coalgebra: Option<String>,
    pub algebra: Option<String>,
    pub limits: Limits,
    pub max_carrier: usize,
    pub max_depth: usize,
    pub policy: WitnessPolicy,
    pub dot: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            coalgebra: None,
            algebra: None,
            limits: Limits::default(),
            max_carrier: 2,
            max_depth: 6,
            policy: WitnessPolicy::First,
            dot: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: u8,
}

impl Report {
    pub fn new(text: String, code: u8) -> Self {
        Report { text, code }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Report::new(format!("error: {}\n", msg.into()), EXIT_USAGE)
    }

    pub fn from_error(e: &Error) -> Self {
        let code = if e.is_cap_exceeded() {
            EXIT_CAP
        } else if matches!(e, Error::NotWellFounded { .. }) {
            EXIT_FAILS
        } else {
            EXIT_USAGE
        };
        Report::new(format!("error: {e}\n"), code)
    }

    /// Appends another report, keeping the worse exit code.
    pub fn then(mut self, other: Report) -> Self {
        self.text.push_str(&other.text);
        self.code = self.code.max(other.code);
        self
    }
}

pub fn run_command(doc: &SpecDocument, cmd: Command, opts: &Options) -> Report {
    let run = || -> Result<Report, Report> {
        Ok(match cmd {
            Command::CheckWf => check_wf(pick(doc, opts)?),
            Command::WfPart => wf_part_report(pick(doc, opts)?),
            Command::CanonicalGraph => {
                let g = pick(doc, opts)?.coalgebra.canonical_graph();
                Report::new(
                    if opts.dot { g.to_dot() } else { g.to_string() },
                    EXIT_HOLDS,
                )
            }
            Command::Hylo => hylo_report(doc, opts)?,
            Command::ParaHylo => para_hylo_report(doc, opts)?,
            Command::InitialChain => {
                let f = doc
                    .functor
                    .as_ref()
                    .ok_or_else(|| Report::usage("the document declares no functor"))?;
                chain_report(f, opts)
            }
            Command::FindHoms => find_homs_report(doc, opts)?,
            Command::OracleRecursive => oracle_report(pick(doc, opts)?, opts, false),
            Command::OracleParametric => oracle_report(pick(doc, opts)?, opts, true),
        })
    };
    run().unwrap_or_else(|r| r)
}

fn pick<'d>(doc: &'d SpecDocument, opts: &Options) -> Result<&'d NamedCoalgebra, Report> {
    doc.coalgebra(opts.coalgebra.as_deref())
        .ok_or_else(|| match &opts.coalgebra {
            Some(n) => Report::usage(format!("no coalgebra named `{n}`")),
            None => Report::usage("the document declares no coalgebra"),
        })
}

fn header(c: &NamedCoalgebra) -> String {
    format!(
        "coalgebra {} : {} ({} states), functor {}\n",
        c.name,
        c.carrier_name,
        c.coalgebra.len(),
        c.coalgebra.functor()
    )
}

fn cycle_line(c: &Coalgebra) -> Option<String> {
    let cycle = c.canonical_graph().bottom_up_order().err()?;
    let labels: Vec<String> = cycle
        .iter()
        .chain(cycle.first())
        .map(|&v| quote_label(c.carrier().label(v)))
        .collect();
    Some(labels.join(" -> "))
}

fn map_lines(h: &FinMap) -> String {
    h.dom()
        .elements()
        .map(|a| {
            format!(
                "  {} -> {}\n",
                quote_label(h.dom().label(a)),
                quote_label(h.cod().label(h.apply(a)))
            )
        })
        .collect()
}

fn check_wf(c: &NamedCoalgebra) -> Report {
    let mut out = header(c);
    let part = wf_part(&c.coalgebra).part;
    let verdict = match is_wellfounded(&c.coalgebra) {
        Ok(v) => v,
        Err(e) => return Report::from_error(&e),
    };
    let rel = if part.is_full() { "=" } else { "≠" };
    let _ = writeln!(
        out,
        "well-founded part = {} {rel} {}",
        part.render(),
        c.carrier_name
    );
    if let Some(cycle) = cycle_line(&c.coalgebra) {
        let _ = writeln!(out, "cycle: {cycle}");
    }
    if verdict {
        out.push_str("verdict: well-founded\n");
        Report::new(out, EXIT_HOLDS)
    } else {
        out.push_str("verdict: not well-founded\n");
        Report::new(out, EXIT_FAILS)
    }
}

fn wf_part_report(c: &NamedCoalgebra) -> Report {
    let mut out = header(c);
    let wf = wf_part(&c.coalgebra);
    out.push_str("chain:\n");
    for (i, s) in wf.chain.iter().enumerate() {
        let _ = writeln!(out, "  a{i} = {}", s.render());
    }
    let _ = writeln!(
        out,
        "least fixed point after {} applications",
        wf.iterations()
    );
    let _ = writeln!(out, "well-founded part = {}", wf.part.render());
    out.push_str("structure:\n");
    for line in wf.structure.render().lines() {
        let _ = writeln!(out, "  {line}");
    }
    Report::new(out, EXIT_HOLDS)
}

fn refusal(c: &NamedCoalgebra, e: &Error) -> Report {
    match e {
        Error::NotWellFounded { vertex, cycle } => Report::new(
            format!(
                "{}refused: not well-founded, `{vertex}` lies on the cycle {}\n",
                header(c),
                cycle.join(" -> ")
            ),
            EXIT_FAILS,
        ),
        other => Report::from_error(other),
    }
}

fn hylo_report(doc: &SpecDocument, opts: &Options) -> Result<Report, Report> {
    let c = pick(doc, opts)?;
    let alg = doc
        .algebra(opts.algebra.as_deref())
        .ok_or_else(|| Report::usage("no matching algebra in the document"))?;
    Ok(match hylo(&c.coalgebra, &alg.algebra) {
        Ok(h) => Report::new(
            format!(
                "{}hylomorphism into {} : {}\n{}",
                header(c),
                alg.name,
                alg.carrier_name,
                map_lines(&h)
            ),
            EXIT_HOLDS,
        ),
        Err(e) => refusal(c, &e),
    })
}

fn para_hylo_report(doc: &SpecDocument, opts: &Options) -> Result<Report, Report> {
    let c = pick(doc, opts)?;
    let alg = doc
        .para_algebra(opts.algebra.as_deref())
        .ok_or_else(|| Report::usage("no matching para_algebra in the document"))?;
    Ok(match para_hylo(&c.coalgebra, &alg.algebra) {
        Ok(h) => Report::new(
            format!(
                "{}parametric solution for {} : {}\n{}",
                header(c),
                alg.name,
                alg.carrier_name,
                map_lines(&h)
            ),
            EXIT_HOLDS,
        ),
        Err(e) => refusal(c, &e),
    })
}

fn find_homs_report(doc: &SpecDocument, opts: &Options) -> Result<Report, Report> {
    let c = pick(doc, opts)?;
    let name = opts.algebra.as_deref();
    let plain = doc.algebra(name);
    let para = doc.para_algebra(name);
    let (label, found) = match (plain, para) {
        (Some(a), _) => (
            format!("{} : {}", a.name, a.carrier_name),
            find_homs(&c.coalgebra, &a.algebra, &opts.limits),
        ),
        (None, Some(p)) => (
            format!("{} : {} over {}", p.name, p.carrier_name, p.params_name),
            find_para_homs(&c.coalgebra, &p.algebra, &opts.limits),
        ),
        _ => return Err(Report::usage("no matching algebra in the document")),
    };
    let homs = found.map_err(|e| Report::from_error(&e))?;
    let mut out = header(c);
    let _ = writeln!(
        out,
        "coalgebra-to-algebra morphisms into {label}: {}",
        homs.len()
    );
    for h in &homs {
        let _ = writeln!(out, "  {}", h.render());
    }
    if let Unfolding::Cycle(report) = unfold_to_mu(&c.coalgebra) {
        let _ = writeln!(out, "note: canonical graph has a cycle; {}", report.note());
    }
    Ok(Report::new(out, EXIT_HOLDS))
}

fn chain_report(f: &wfcoalg::FunctorExpr, opts: &Options) -> Report {
    let chain = initial_chain(f, opts.max_depth, &opts.limits);
    let mut out = format!("initial chain of {f}, at most {} steps\n", opts.max_depth);
    for i in 0..chain.len() {
        let size = chain.sizes()[i];
        let _ = writeln!(
            out,
            "W{i}: {size} element{}",
            if size == 1 { "" } else { "s" }
        );
        if size <= 16 {
            for t in chain.terms(i) {
                let _ = writeln!(out, "  {}", t.render(f));
            }
        }
    }
    if let Some(k) = chain.stabilized_at() {
        let mu = chain.mu().expect("stabilized");
        let labels: Vec<String> = mu
            .carrier()
            .labels()
            .iter()
            .map(|l| quote_label(l))
            .collect();
        let _ = writeln!(out, "stabilized at W{k}: μF = {{{}}}", labels.join(", "));
        Report::new(out, EXIT_HOLDS)
    } else if let Some(e) = chain.cap_exceeded() {
        let _ = writeln!(out, "stopped: {e}");
        Report::new(out, EXIT_CAP)
    } else {
        out.push_str("not stabilized within the depth limit\n");
        Report::new(out, EXIT_FAILS)
    }
}

pub fn oracle_report(c: &NamedCoalgebra, opts: &Options, para: bool) -> Report {
    let oracle_opts = OracleOptions::new(opts.max_carrier)
        .with_limits(opts.limits)
        .with_policy(opts.policy);
    let verdict: OracleVerdict = if para {
        parametric_oracle(&c.coalgebra, &oracle_opts)
    } else {
        recursive_oracle(&c.coalgebra, &oracle_opts)
    };
    let kind = if para { "parametric" } else { "recursive" };
    let mut out = header(c);
    let _ = writeln!(out, "{kind} oracle, carriers up to {}", opts.max_carrier);
    let sizes: Vec<String> = verdict.sizes_checked.iter().map(usize::to_string).collect();
    let _ = writeln!(
        out,
        "sizes checked: {}",
        if sizes.is_empty() {
            "none".to_owned()
        } else {
            sizes.join(", ")
        }
    );
    if let Some(w) = &verdict.witness {
        let _ = writeln!(
            out,
            "verdict: fail, an algebra on {} elements has {} solutions",
            w.carrier_size, w.morphism_count
        );
        out.push_str("witness algebra:\n");
        for line in w.algebra.render().lines() {
            let _ = writeln!(out, "  {line}");
        }
        out.push_str("solutions:\n");
        for h in &w.solutions {
            let _ = writeln!(out, "  {}", h.render());
        }
        return Report::new(out, EXIT_FAILS);
    }
    match &verdict.cap_exceeded {
        Some(e) => {
            let _ = writeln!(out, "stopped: {e}");
            out.push_str("verdict: no failure found on the sizes checked\n");
            Report::new(out, EXIT_CAP)
        }
        None => {
            out.push_str("verdict: pass (every algebra checked has exactly one solution)\n");
            Report::new(out, EXIT_HOLDS)
        }
    }
}
