//! Stable text rendering of certificates and reports. Identical inputs
//! produce byte-identical output; JSON serialization preserves exact
//! rationals as numerator/denominator string pairs.

use topo_core::continuity::{ContinuityCertificate, ContinuityVerdict};
use topo_core::measure::MeasureBounds;
use topo_core::membership::Membership;
use topo_core::rational::fmt_rat;
use topo_core::sets::Decomposition;
use topo_core::topology::{AxiomReport, OpennessCertificate, TopologySpec};

fn pad(indent: usize) -> String {
    "  ".repeat(indent)
}

pub fn openness_text(cert: &OpennessCertificate, indent: usize) -> String {
    let p = pad(indent);
    let t = TopologySpec {
        basis: cert.basis,
        union_mode: cert.union_mode,
    };
    let mut out = String::new();
    out.push_str(&format!("{p}verdict: {}\n", cert.verdict));
    out.push_str(&format!("{p}rule: {}\n", cert.rule));
    out.push_str(&format!("{p}topology: {}\n", t.name()));
    out.push_str(&format!("{p}truncation: {}\n", cert.truncation));
    let ev = &cert.evidence;
    if let Some(intervals) = &ev.intervals {
        let rendered: Vec<String> = intervals.iter().map(|iv| iv.to_string()).collect();
        out.push_str(&format!("{p}intervals: [{}]\n", rendered.join(", ")));
    }
    if let Some(points) = &ev.points {
        if !points.is_empty() {
            let rendered: Vec<String> = points.iter().map(|pt| pt.to_string()).collect();
            out.push_str(&format!("{p}points: [{}]\n", rendered.join(", ")));
        }
    }
    if let Some(fid) = &ev.family_id {
        out.push_str(&format!("{p}familyId: {fid}\n"));
    }
    if let Some(b) = &ev.measure_bounds {
        out.push_str(&format!("{p}measure: {}\n", measure_line(b)));
    }
    if let Some(card) = &ev.cardinality {
        out.push_str(&format!("{p}cardinality: {card}\n"));
    }
    if let Some(inner) = &ev.inner {
        out.push_str(&format!("{p}inner certificate:\n"));
        out.push_str(&openness_text(inner, indent + 1));
    }
    out
}

pub fn measure_line(b: &MeasureBounds) -> String {
    format!(
        "lower={} upper={} (terms {})",
        b.lower, b.upper, b.truncation
    )
}

pub fn measure_text(b: &MeasureBounds, indent: usize) -> String {
    let p = pad(indent);
    format!(
        "{p}lower: {}\n{p}upper: {}\n{p}truncation: {}\n",
        b.lower, b.upper, b.truncation
    )
}

pub fn membership_text(m: Membership, indent: usize) -> String {
    format!("{}verdict: {m}\n", pad(indent))
}

pub fn decomposition_text(d: &Decomposition, indent: usize) -> String {
    let p = pad(indent);
    let mut out = String::new();
    let intervals: Vec<String> = d
        .canonical
        .intervals
        .iter()
        .map(|iv| iv.to_string())
        .collect();
    out.push_str(&format!("{p}intervals: [{}]\n", intervals.join(", ")));
    if !d.canonical.points.is_empty() {
        let points: Vec<String> = d.canonical.points.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{p}points: [{}]\n", points.join(", ")));
    }
    let witnesses: Vec<String> = d.witnesses.iter().map(fmt_rat).collect();
    out.push_str(&format!("{p}witnesses: [{}]\n", witnesses.join(", ")));
    match d.truncation {
        Some(n) => out.push_str(&format!("{p}truncation: {n}\n")),
        None => out.push_str(&format!("{p}truncation: exact\n")),
    }
    out
}

pub fn continuity_text(cert: &ContinuityCertificate, indent: usize) -> String {
    let p = pad(indent);
    let mut out = String::new();
    out.push_str(&format!("{p}verdict: {}\n", cert.verdict));
    out.push_str(&format!("{p}domain: {}\n", cert.domain.name()));
    out.push_str(&format!("{p}truncation: {}\n", cert.truncation));
    for case in &cert.cases {
        let values: Vec<String> = case.value_class.iter().map(fmt_rat).collect();
        out.push_str(&format!(
            "{p}case {{{}}} via {}: preimage {} -> {} [{}]\n",
            values.join(","),
            case.representative,
            case.preimage,
            case.openness.verdict,
            case.openness.rule,
        ));
    }
    if let Some(case) = cert.witness_case() {
        out.push_str(&format!(
            "{p}witness: V = {} with preimage {} not open\n",
            case.representative, case.preimage
        ));
        out.push_str(&openness_text(&case.openness, indent + 1));
    }
    if cert.verdict == ContinuityVerdict::Continuous {
        out.push_str(&format!(
            "{p}all {} preimage cases are open\n",
            cert.cases.len()
        ));
    }
    out
}

pub fn axioms_text(r: &AxiomReport, indent: usize) -> String {
    let p = pad(indent);
    let mut out = String::new();
    let fmt_set = |s: &[u32]| {
        let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        format!("{{{}}}", items.join(","))
    };
    if r.is_valid_topology() {
        out.push_str(&format!("{p}valid topology: yes\n"));
        return out;
    }
    out.push_str(&format!("{p}valid topology: no\n"));
    if r.missing_empty {
        out.push_str(&format!(
            "{p}axiom 1 violated: {{}} is not in the collection\n"
        ));
    }
    if r.missing_universe {
        out.push_str(&format!(
            "{p}axiom 1 violated: the universe is not in the collection\n"
        ));
    }
    if let Some(v) = &r.union_violation {
        let fam: Vec<String> = v.subfamily.iter().map(|s| fmt_set(s)).collect();
        out.push_str(&format!(
            "{p}axiom 2 violated: union of {} is {}, which is not in the collection\n",
            fam.join(" and "),
            fmt_set(&v.union)
        ));
    }
    if let Some(v) = &r.intersection_violation {
        out.push_str(&format!(
            "{p}axiom 3 violated: {} meet {} is {}, which is not in the collection\n",
            fmt_set(&v.left),
            fmt_set(&v.right),
            fmt_set(&v.intersection)
        ));
    }
    out
}
