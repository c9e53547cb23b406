//! The end-to-end certificate: the indicator of the open cover U of ℚ is
//! continuous from the Michael line but discontinuous once the union axiom
//! is weakened to countable unions.

use num::{One, Zero};
use serde::Serialize;
use serde_json::json;
use topo_core::continuity::{
    check_continuity, replay as replay_continuity, ContinuityCertificate, ContinuityVerdict,
    StepFunction,
};
use topo_core::enumeration::{build_paper_u, EnumerationError};
use topo_core::measure::{measure_bounds, MeasureBounds};
use topo_core::rational::{fmt_rat, rat, MeasureValue, Rat};
use topo_core::topology::{RuleId, TopologySpec};
use topo_core::{complement, Interval, SetExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssertionOutcome {
    Holds,
    Failed,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem1Outcome {
    AllHold,
    Failed,
    Inconclusive,
}

impl Theorem1Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Theorem1Outcome::AllHold => 0,
            Theorem1Outcome::Failed => 1,
            Theorem1Outcome::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Theorem1Report {
    pub a: Rat,
    pub terms: u32,
    pub enumeration_id: &'static str,
    pub lengths_id: &'static str,
    pub michael: ContinuityCertificate,
    pub michael_c: ContinuityCertificate,
    pub measure: MeasureBounds,
    pub erratum: String,
    pub assertions: Vec<(String, AssertionOutcome)>,
    pub outcome: Theorem1Outcome,
}

/// Builds U = paperU(a) and f = 1_U, checks continuity on both Michael
/// topologies, attaches the measure bounds of U, and evaluates the named
/// assertions. `a` must be positive.
pub fn run(a: Rat, terms: u32) -> Result<Theorem1Report, EnumerationError> {
    let u = build_paper_u(a.clone())?;
    let f = StepFunction::indicator(u.clone());

    let michael = check_continuity(&f, TopologySpec::MICHAEL, terms);
    let michael_c = check_continuity(&f, TopologySpec::MICHAEL_C, terms);
    let measure = measure_bounds(&u, terms).expect("families always have measure bounds");

    let mut assertions = Vec::new();
    let mut push = |name: &str, outcome: AssertionOutcome| {
        assertions.push((name.to_string(), outcome));
    };

    push(
        "indicator of U is continuous on michael",
        match michael.verdict {
            ContinuityVerdict::Continuous => AssertionOutcome::Holds,
            ContinuityVerdict::Unknown => AssertionOutcome::Inconclusive,
            ContinuityVerdict::Discontinuous => AssertionOutcome::Failed,
        },
    );
    push(
        "michael analysis has exactly four preimage cases",
        if michael.cases.len() == 4 {
            AssertionOutcome::Holds
        } else {
            AssertionOutcome::Failed
        },
    );
    push(
        "indicator of U is discontinuous on michaelC",
        match michael_c.verdict {
            ContinuityVerdict::Discontinuous => AssertionOutcome::Holds,
            ContinuityVerdict::Unknown => AssertionOutcome::Inconclusive,
            ContinuityVerdict::Continuous => AssertionOutcome::Failed,
        },
    );

    let canonical_witness = Interval::rational(rat(-1, 2), rat(1, 2));
    let witness_ok = michael_c
        .witness_case()
        .map(|c| c.representative == canonical_witness)
        .unwrap_or(false);
    push(
        "discontinuity witness is V = (-1/2,1/2)",
        if witness_ok {
            AssertionOutcome::Holds
        } else {
            AssertionOutcome::Failed
        },
    );

    let preimage_ok = michael_c
        .witness_case()
        .map(|c| c.preimage == complement(u.clone()) && c.openness.rule == RuleId::R1)
        .unwrap_or(false);
    push(
        "witness preimage is the complement of U, rejected by rule R1",
        if preimage_ok {
            AssertionOutcome::Holds
        } else {
            AssertionOutcome::Failed
        },
    );

    // 0 < s_1 = a/2 <= lower <= upper <= a, all exact
    let s1 = MeasureValue::Finite(&a / (Rat::one() + Rat::one()));
    let chain_ok = MeasureValue::Finite(Rat::zero()) < s1
        && s1 <= measure.lower
        && measure.lower <= measure.upper
        && measure.upper <= MeasureValue::Finite(a.clone());
    push(
        "measure chain 0 < a/2 <= lower <= upper <= a",
        if chain_ok {
            AssertionOutcome::Holds
        } else {
            AssertionOutcome::Failed
        },
    );

    push(
        "michael certificate replays",
        match replay_continuity(&michael, &f) {
            Ok(()) => AssertionOutcome::Holds,
            Err(_) => AssertionOutcome::Failed,
        },
    );
    push(
        "michaelC certificate replays",
        match replay_continuity(&michael_c, &f) {
            Ok(()) => AssertionOutcome::Holds,
            Err(_) => AssertionOutcome::Failed,
        },
    );

    let outcome = if assertions
        .iter()
        .any(|(_, o)| *o == AssertionOutcome::Failed)
    {
        Theorem1Outcome::Failed
    } else if assertions
        .iter()
        .any(|(_, o)| *o == AssertionOutcome::Inconclusive)
    {
        Theorem1Outcome::Inconclusive
    } else {
        Theorem1Outcome::AllHold
    };

    let erratum = erratum_note(&michael_c);

    Ok(Theorem1Report {
        a,
        terms,
        enumeration_id: "calkin-wilf-signed",
        lengths_id: "geometric",
        michael,
        michael_c,
        measure,
        erratum,
        assertions,
        outcome,
    })
}

/// The discontinuity argument is often phrased "λ(U) is finite, so λ(ℝ∖U) is
/// uncountable"; a measure value is not a cardinality. The certified reading
/// replaces it by a windowed positivity fact.
fn erratum_note(michael_c: &ContinuityCertificate) -> String {
    let bound = michael_c
        .witness_case()
        .and_then(|c| c.openness.evidence.measure_bounds.as_ref())
        .map(|b| format!("lambda(window \\ U) >= {}", b.lower))
        .unwrap_or_else(|| "a positive windowed lower bound".to_string());
    format!(
        "the phrase \"lambda(R\\U) is uncountable\" conflates a measure with a cardinality; \
         certified reading: lambda(R\\U) is infinite (witnessed by {bound} > 0 on a bounded \
         window), hence R\\U is uncountable and cannot be a countable union of singletons"
    )
}

pub fn to_json(r: &Theorem1Report) -> serde_json::Value {
    let assertions: Vec<serde_json::Value> = r
        .assertions
        .iter()
        .map(|(name, o)| json!({ "name": name, "outcome": o }))
        .collect();
    json!({
        "parameters": {
            "a": { "num": r.a.numer().to_string(), "den": r.a.denom().to_string() },
            "terms": r.terms,
            "enumeration": r.enumeration_id,
            "lengths": r.lengths_id,
        },
        "michael": serde_json::to_value(&r.michael).expect("serializable"),
        "michaelC": serde_json::to_value(&r.michael_c).expect("serializable"),
        "measure": serde_json::to_value(&r.measure).expect("serializable"),
        "erratum": r.erratum,
        "assertions": assertions,
        "outcome": r.outcome,
    })
}

pub fn to_text(r: &Theorem1Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("theorem1 a={} terms {}\n", fmt_rat(&r.a), r.terms));
    out.push_str(&format!(
        "  parameters: enumeration={} lengths={}\n",
        r.enumeration_id, r.lengths_id
    ));
    out.push_str(&format!("  U = {}\n", paper_u_display(&r.a)));
    out.push_str("  continuity on michael:\n");
    out.push_str(&crate::render::continuity_text(&r.michael, 2));
    out.push_str("  continuity on michaelC:\n");
    out.push_str(&crate::render::continuity_text(&r.michael_c, 2));
    out.push_str("  measure of U:\n");
    out.push_str(&crate::render::measure_text(&r.measure, 2));
    out.push_str(&format!("  erratum: {}\n", r.erratum));
    out.push_str("  assertions:\n");
    for (name, o) in &r.assertions {
        let tag = match o {
            AssertionOutcome::Holds => "holds",
            AssertionOutcome::Failed => "FAILED",
            AssertionOutcome::Inconclusive => "inconclusive",
        };
        out.push_str(&format!("    [{tag}] {name}\n"));
    }
    let summary = match r.outcome {
        Theorem1Outcome::AllHold => "all assertions hold",
        Theorem1Outcome::Failed => "ASSERTION FAILED",
        Theorem1Outcome::Inconclusive => "inconclusive (Unknown verdict encountered)",
    };
    out.push_str(&format!("  outcome: {summary}\n"));
    out
}

fn paper_u_display(a: &Rat) -> String {
    match build_paper_u(a.clone()) {
        Ok(SetExpr::Family(fd)) => fd.id_string(),
        _ => format!("paperU(a={})", fmt_rat(a)),
    }
}
