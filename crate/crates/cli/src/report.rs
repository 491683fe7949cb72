//! Serializable analysis reports and their text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use nomvote_core::analysis::{AgentVetoes, Evidence, ManipulationWitness, VetoReport};
use nomvote_core::characterization::NomVerdict;
use nomvote_core::domain::{Alternative, AlternativeSpace};
use nomvote_core::oracle::{AxiomVerdict, Counterexample};

use crate::config::RuleConfig;

pub const DEFAULT_WITNESS_CAP: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct PredicateReport {
    pub nom: bool,
    pub rationale: String,
    pub dictator: Option<usize>,
}

impl From<NomVerdict> for PredicateReport {
    fn from(v: NomVerdict) -> Self {
        PredicateReport {
            nom: v.nom,
            rationale: v.rationale,
            dictator: v.dictator,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl AxiomReport {
    pub fn new(verdict: &AxiomVerdict, space: &AlternativeSpace) -> Self {
        AxiomReport {
            holds: verdict.holds,
            counterexample: verdict.counterexample.as_ref().map(|c| describe_counterexample(c, space)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdicts {
    pub nom_brute: bool,
    pub nom_veto: bool,
    pub predicate: Option<PredicateReport>,
    /// Closed-form veto sets equal the brute-force ones, when a closed form exists.
    pub closed_veto_agrees: Option<bool>,
    pub axioms: BTreeMap<String, AxiomReport>,
}

impl Verdicts {
    pub fn discrepancy(&self) -> bool {
        self.nom_brute != self.nom_veto
            || self.predicate.as_ref().is_some_and(|p| p.nom != self.nom_brute)
            || self.closed_veto_agrees == Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgentVetoReport {
    pub agent: usize,
    pub vetoed: Vec<Alternative>,
    pub strongly_vetoed: Vec<Alternative>,
    /// Alternative -> tops of the agent that exclude it.
    pub vetoing_tops: BTreeMap<Alternative, Vec<Alternative>>,
}

impl From<&AgentVetoes> for AgentVetoReport {
    fn from(v: &AgentVetoes) -> Self {
        AgentVetoReport {
            agent: v.agent,
            vetoed: v.vetoed.iter().copied().collect(),
            strongly_vetoed: v.strongly_vetoed.iter().copied().collect(),
            vetoing_tops: v.witnesses.clone(),
        }
    }
}

pub fn veto_entries(report: &VetoReport) -> Vec<AgentVetoReport> {
    report.agents.iter().map(AgentVetoReport::from).collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EvidenceReport {
    Subprofile {
        others: Vec<Alternative>,
        truthful_outcome: Alternative,
        manipulated_outcome: Alternative,
    },
    OptionSets {
        truthful: Vec<Alternative>,
        misreport: Vec<Alternative>,
        truthful_value: Alternative,
        misreport_value: Alternative,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub agent: usize,
    pub kind: &'static str,
    pub truth: Vec<Alternative>,
    pub misreport: Vec<Alternative>,
    pub evidence: EvidenceReport,
}

impl From<&ManipulationWitness> for WitnessReport {
    fn from(w: &ManipulationWitness) -> Self {
        let evidence = match &w.evidence {
            Evidence::Subprofile {
                others,
                truthful_outcome,
                manipulated_outcome,
            } => EvidenceReport::Subprofile {
                others: others.clone(),
                truthful_outcome: *truthful_outcome,
                manipulated_outcome: *manipulated_outcome,
            },
            Evidence::OptionSets {
                truthful,
                misreport,
                truthful_value,
                misreport_value,
            } => EvidenceReport::OptionSets {
                truthful: truthful.iter().copied().collect(),
                misreport: misreport.iter().copied().collect(),
                truthful_value: *truthful_value,
                misreport_value: *misreport_value,
            },
        };
        WitnessReport {
            agent: w.agent,
            kind: w.kind.as_str(),
            truth: w.truth.ranking().to_vec(),
            misreport: w.misreport.ranking().to_vec(),
            evidence,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessGroup {
    pub agent: usize,
    pub kind: &'static str,
    pub total: usize,
    pub shown: Vec<WitnessReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSummary {
    pub total: usize,
    pub cap: usize,
    pub groups: Vec<WitnessGroup>,
}

impl WitnessSummary {
    /// Keeps the first `cap` witnesses of each (agent, kind) in scan order;
    /// totals stay exact.
    pub fn new(witnesses: &[ManipulationWitness], cap: usize) -> Self {
        let mut groups: BTreeMap<(usize, &'static str), WitnessGroup> = BTreeMap::new();
        for w in witnesses {
            let group = groups.entry((w.agent, w.kind.as_str())).or_insert_with(|| WitnessGroup {
                agent: w.agent,
                kind: w.kind.as_str(),
                total: 0,
                shown: Vec::new(),
            });
            group.total += 1;
            if group.shown.len() < cap {
                group.shown.push(w.into());
            }
        }
        WitnessSummary {
            total: witnesses.len(),
            cap,
            groups: groups.into_values().collect(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub veto_ms: f64,
    pub brute_ms: f64,
    pub axioms_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub rule: RuleConfig,
    pub nom: bool,
    pub discrepancy: bool,
    pub verdicts: Verdicts,
    pub veto: Vec<AgentVetoReport>,
    pub witnesses: WitnessSummary,
    pub timing: Timing,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptionSetReport {
    pub rule: RuleConfig,
    pub agent: usize,
    pub top: Alternative,
    pub brute: Vec<Alternative>,
    pub closed: Option<Vec<Alternative>>,
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VetoCommandReport {
    pub rule: RuleConfig,
    pub every_veto_strong: bool,
    pub brute: Vec<AgentVetoReport>,
    pub closed: Option<Vec<AgentVetoReport>>,
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessCommandReport {
    pub rule: RuleConfig,
    pub witnesses: WitnessSummary,
}

pub fn describe_counterexample(c: &Counterexample, space: &AlternativeSpace) -> String {
    let l = |x: Alternative| space.label(x);
    let profile = |p: &[nomvote_core::domain::Preference]| {
        p.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    };
    match c {
        Counterexample::Manipulation {
            agent,
            profile: p,
            misreport,
            truthful_outcome,
            manipulated_outcome,
        } => format!(
            "agent {agent} at profile [{}] reports {misreport}: {} instead of {}",
            profile(p),
            l(*manipulated_outcome),
            l(*truthful_outcome)
        ),
        Counterexample::Inefficiency {
            profile: p,
            outcome,
            better,
        } => format!(
            "at profile [{}] outcome {} is unanimously beaten by {}",
            profile(p),
            l(*outcome),
            l(*better)
        ),
        Counterexample::Asymmetry {
            tops,
            swapped,
            outcome,
            swapped_outcome,
        } => format!("tops {tops} give {} but {swapped} give {}", l(*outcome), l(*swapped_outcome)),
        Counterexample::NotDictatorial { overruled } => {
            format!("every agent is overruled somewhere ({} agents checked)", overruled.len())
        }
        Counterexample::ObviousManipulation(w) => describe_witness(&WitnessReport::from(w), space),
    }
}

fn set(xs: &[Alternative], space: &AlternativeSpace) -> String {
    let items: Vec<String> = xs.iter().map(|&x| space.label(x)).collect();
    format!("[{}]", items.join(" "))
}

fn ranking(xs: &[Alternative], space: &AlternativeSpace) -> String {
    let items: Vec<String> = xs.iter().map(|&x| space.label(x)).collect();
    format!("({})", items.join(","))
}

pub fn describe_witness(w: &WitnessReport, space: &AlternativeSpace) -> String {
    let l = |x: Alternative| space.label(x);
    let head = format!(
        "agent {} truth {} misreport top {}",
        w.agent,
        ranking(&w.truth, space),
        l(w.misreport[0])
    );
    match &w.evidence {
        EvidenceReport::Subprofile {
            others,
            truthful_outcome,
            manipulated_outcome,
        } => format!(
            "{head}: others report tops {}, outcome {} becomes {}",
            ranking(others, space),
            l(*truthful_outcome),
            l(*manipulated_outcome)
        ),
        EvidenceReport::OptionSets {
            truthful,
            misreport,
            truthful_value,
            misreport_value,
        } => {
            let which = if w.kind == "best_case" { "best" } else { "worst" };
            format!(
                "{head}: truthful {which} of {} is {}, misreport {which} of {} is {}",
                set(truthful, space),
                l(*truthful_value),
                set(misreport, space),
                l(*misreport_value)
            )
        }
    }
}

fn render_vetoes(out: &mut String, entries: &[AgentVetoReport], space: &AlternativeSpace) {
    for e in entries {
        let _ = writeln!(
            out,
            "  agent {}: V = {}  SV = {}",
            e.agent,
            set(&e.vetoed, space),
            set(&e.strongly_vetoed, space)
        );
    }
}

fn render_witnesses(out: &mut String, summary: &WitnessSummary, space: &AlternativeSpace) {
    let _ = writeln!(out, "witnesses: {} total", summary.total);
    for g in &summary.groups {
        let _ = writeln!(
            out,
            "  agent {} {}: {} total, showing {}",
            g.agent,
            g.kind,
            g.total,
            g.shown.len()
        );
        for w in &g.shown {
            let _ = writeln!(out, "    {}", describe_witness(w, space));
        }
    }
}

fn rule_line(rule: &RuleConfig) -> String {
    let size = match (rule.m, rule.objects) {
        (Some(m), _) => format!("m={m}"),
        (_, Some(k)) => format!("objects={k}"),
        _ => String::new(),
    };
    format!("rule: {} n={} {size} {}", rule.family.as_str(), rule.n, rule.parameters_json())
}

pub fn render_analysis(r: &AnalysisReport, space: &AlternativeSpace) -> String {
    let mut out = String::new();
    if r.discrepancy {
        out.push_str("*** DISCREPANCY: verdict sources disagree ***\n");
    }
    let _ = writeln!(out, "{}", rule_line(&r.rule));
    let _ = writeln!(out, "verdict: {}", if r.nom { "NOM" } else { "NOT NOM" });
    let v = &r.verdicts;
    let _ = writeln!(out, "  nom_brute: {}", v.nom_brute);
    let _ = writeln!(out, "  nom_veto:  {}", v.nom_veto);
    if let Some(p) = &v.predicate {
        let _ = writeln!(out, "  predicate: {} ({})", p.nom, p.rationale);
    }
    if let Some(a) = v.closed_veto_agrees {
        let _ = writeln!(out, "  closed-form veto sets agree: {a}");
    }
    for (name, a) in &v.axioms {
        let _ = write!(out, "  {name}: {}", a.holds);
        if let Some(c) = &a.counterexample {
            let _ = write!(out, " ({c})");
        }
        out.push('\n');
    }
    out.push_str("veto sets:\n");
    render_vetoes(&mut out, &r.veto, space);
    render_witnesses(&mut out, &r.witnesses, space);
    let t = &r.timing;
    let _ = writeln!(
        out,
        "timing: veto {:.1} ms, brute {:.1} ms, axioms {:.1} ms",
        t.veto_ms, t.brute_ms, t.axioms_ms
    );
    out
}

pub fn render_option_set(r: &OptionSetReport, space: &AlternativeSpace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", rule_line(&r.rule));
    let _ = writeln!(out, "option set of agent {} with top {}", r.agent, space.label(r.top));
    let _ = writeln!(out, "  brute force: {}", set(&r.brute, space));
    match &r.closed {
        Some(c) => {
            let _ = writeln!(out, "  closed form: {}", set(c, space));
        }
        None => {
            let _ = writeln!(out, "  closed form: n/a");
        }
    }
    if let Some(a) = r.agreement {
        let _ = writeln!(out, "  agreement: {a}");
    }
    if let Some(n) = &r.note {
        let _ = writeln!(out, "  note: {n}");
    }
    out
}

pub fn render_veto(r: &VetoCommandReport, space: &AlternativeSpace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", rule_line(&r.rule));
    let _ = writeln!(out, "every veto strong: {}", r.every_veto_strong);
    out.push_str("brute force:\n");
    render_vetoes(&mut out, &r.brute, space);
    if let Some(c) = &r.closed {
        out.push_str("closed form:\n");
        render_vetoes(&mut out, c, space);
    }
    if let Some(a) = r.agreement {
        let _ = writeln!(out, "agreement: {a}");
    }
    if let Some(n) = &r.note {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn render_witness(r: &WitnessCommandReport, space: &AlternativeSpace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", rule_line(&r.rule));
    render_witnesses(&mut out, &r.witnesses, space);
    out
}
