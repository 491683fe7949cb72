//! Closed-form NOM tests on rule parameters, and the efficiency corollaries
//! evaluated on a veto report once their hypotheses are machine-checked.

use std::fmt::Write as _;

use crate::analysis::{veto_sets, VetoReport};
use crate::budget::Budget;
use crate::domain::{Agent, Alternative};
use crate::error::{NomError, Result};
use crate::oracle;
use crate::rules::{quota_to_committees, BallotFamily, CommitteeFamily, Family, MedianScheme, QuotaFamily, RuleDescriptor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NomVerdict {
    pub nom: bool,
    pub rationale: String,
    /// Set when the rule was recognised as a dictatorship before applying a
    /// characterization that only covers non-dictatorial rules.
    pub dictator: Option<Agent>,
}

impl NomVerdict {
    fn holds(rationale: impl Into<String>) -> Self {
        NomVerdict {
            nom: true,
            rationale: rationale.into(),
            dictator: None,
        }
    }

    fn fails(rationale: impl Into<String>) -> Self {
        NomVerdict {
            nom: false,
            rationale: rationale.into(),
            dictator: None,
        }
    }

    fn dictatorial(agent: Agent) -> Self {
        NomVerdict {
            nom: true,
            rationale: format!("dictatorial (agent {agent})"),
            dictator: Some(agent),
        }
    }

    pub fn is_dictatorial(&self) -> bool {
        self.dictator.is_some()
    }
}

fn near_low(x: Alternative) -> bool {
    x <= 1
}

fn near_high(x: Alternative, m: usize) -> bool {
    x + 2 >= m
}

/// Median scheme over `0..m`: NOM iff `α_1 ∈ {a, a+1}` and `α_{n-1} ∈ {b-1, b}`.
pub fn nom_predicate_mvs(scheme: &MedianScheme, m: usize) -> NomVerdict {
    let (lo, hi) = (scheme.lowest(), scheme.highest());
    let b = m - 1;
    let mut failures = Vec::new();
    if !near_low(lo) {
        failures.push(format!("α_1={lo}∉{{0,1}}"));
    }
    if !near_high(hi, m) {
        failures.push(format!("α_{}={hi}∉{{{},{b}}}", scheme.alpha.len(), b.saturating_sub(1)));
    }
    if failures.is_empty() {
        NomVerdict::holds(format!("α_1={lo}∈{{0,1}} and α_{}={hi}∈{{{},{b}}}", scheme.alpha.len(), b - 1))
    } else {
        NomVerdict::fails(failures.join(", "))
    }
}

/// Generalized median scheme: dictatorial families are NOM; otherwise NOM iff
/// every agent has `p_{N∖{i}} ∈ {a, a+1}` and `p_{{i}} ∈ {b-1, b}`.
pub fn nom_predicate_gmv(p: &BallotFamily, n: usize, m: usize) -> NomVerdict {
    let b = m - 1;
    if let Some(agent) = (0..n).find(|&i| p.own(i) == 0 && p.others(n, i) == b) {
        return NomVerdict::dictatorial(agent);
    }
    let mut failures = String::new();
    for i in 0..n {
        let (others, own) = (p.others(n, i), p.own(i));
        if !near_low(others) {
            let _ = write!(failures, "agent {i}: p_N∖{{{i}}}={others}∉{{0,1}}; ");
        }
        if !near_high(own, m) {
            let _ = write!(failures, "agent {i}: p_{{{i}}}={own}∉{{{},{b}}}; ", b - 1);
        }
    }
    if failures.is_empty() {
        NomVerdict::holds("every agent has p_N∖{i}∈{a,a+1} and p_{i}∈{b-1,b}")
    } else {
        NomVerdict::fails(failures.trim_end_matches("; "))
    }
}

/// Voting by committees: dictatorial families are NOM; otherwise NOM iff no
/// agent lies in every winning coalition of any committee and no singleton
/// coalition wins.
pub fn nom_predicate_vbc(w: &CommitteeFamily, n: usize) -> NomVerdict {
    let dictator = (0..n).find(|&i| {
        w.committees
            .iter()
            .all(|c| c.minimal().len() == 1 && c.minimal()[0].len() == 1 && c.minimal()[0].contains(i))
    });
    if let Some(agent) = dictator {
        return NomVerdict::dictatorial(agent);
    }
    let mut failures = Vec::new();
    for (k, committee) in w.committees.iter().enumerate() {
        let core = committee.intersection(n);
        if !core.is_empty() {
            failures.push(format!("agents {core:?} in every winning coalition of W_{k}"));
        }
        if let Some(i) = committee.singleton_winner() {
            failures.push(format!("singleton {{{i}}}∈W_{k}"));
        }
    }
    if failures.is_empty() {
        NomVerdict::holds("every committee has empty intersection and no singleton winner")
    } else {
        NomVerdict::fails(failures.join(", "))
    }
}

/// Voting by quota: NOM iff every quota lies in `[2, n-1]`. With `n = 2`
/// that interval is empty, so no quota rule qualifies.
pub fn nom_predicate_quota(q: &QuotaFamily, n: usize) -> NomVerdict {
    let bad: Vec<String> = q
        .quotas
        .iter()
        .enumerate()
        .filter(|(_, &quota)| quota < 2 || quota + 1 > n)
        .map(|(k, quota)| format!("q_{k}={quota}∉[2,{}]", n.saturating_sub(1)))
        .collect();
    if bad.is_empty() {
        NomVerdict::holds(format!("every quota in [2,{}]", n - 1))
    } else {
        NomVerdict::fails(bad.join(", "))
    }
}

/// The family predicate for a rule, where the family has one.
pub fn nom_predicate(rule: &RuleDescriptor) -> Option<NomVerdict> {
    let (n, m) = (rule.n(), rule.m());
    Some(match rule.family() {
        Family::Median(scheme) => nom_predicate_mvs(scheme, m),
        Family::GeneralizedMedian(p) => nom_predicate_gmv(p, n, m),
        Family::Committees(w) => nom_predicate_vbc(w, n),
        Family::Quota(q) => nom_predicate_quota(q, n),
        _ => return None,
    })
}

/// Quota predicate routed through the committee predicate.
pub fn nom_predicate_quota_via_committees(q: &QuotaFamily, n: usize) -> NomVerdict {
    nom_predicate_vbc(&quota_to_committees(q, n), n)
}

/// Efficient tops-only rules: NOM iff (i) at most one agent vetoes anything
/// and its vetoes are strong, or (ii) some `y` has `SV_i = V_i ⊆ {y}` for all
/// agents. Assumes efficiency has been checked.
pub fn corollary_efficient_clauses(report: &VetoReport) -> NomVerdict {
    let vetoers: Vec<_> = report.vetoers().collect();
    if vetoers.len() <= 1 && vetoers.iter().all(|a| a.every_veto_strong()) {
        return NomVerdict::holds(match vetoers.first() {
            Some(a) => format!("clause (i): only agent {} vetoes, all strongly", a.agent),
            None => "clause (i): no vetoers".to_string(),
        });
    }
    if let Some(y) = single_common_veto(report) {
        let within = y.map_or_else(|| "∅".to_string(), |y| format!("{{{y}}}"));
        return NomVerdict::holds(format!("clause (ii): SV_i=V_i⊆{within} for every agent"));
    }
    NomVerdict::fails(describe_vetoes(report))
}

/// Efficient, anonymous tops-only rules: NOM iff no agent vetoes, or some `y`
/// has `SV_i = V_i = {y}` for every agent.
pub fn corollary_anon_efficient_clauses(report: &VetoReport) -> NomVerdict {
    if report.vetoers().next().is_none() {
        return NomVerdict::holds("V_i=∅ for every agent");
    }
    let first = &report.agents[0];
    if first.vetoed.len() == 1 {
        let y = *first.vetoed.iter().next().expect("one element");
        let all_same = report.agents.iter().all(|a| {
            a.every_veto_strong() && a.vetoed.len() == 1 && a.vetoed.contains(&y)
        });
        if all_same {
            return NomVerdict::holds(format!("SV_i=V_i={{{y}}} for every agent"));
        }
    }
    NomVerdict::fails(describe_vetoes(report))
}

fn single_common_veto(report: &VetoReport) -> Option<Option<Alternative>> {
    if !report.every_veto_strong() {
        return None;
    }
    let mut common: Option<Alternative> = None;
    for a in &report.agents {
        match a.vetoed.len() {
            0 => {}
            1 => {
                let x = *a.vetoed.iter().next().expect("one element");
                if common.is_some_and(|y| y != x) {
                    return None;
                }
                common = Some(x);
            }
            _ => return None,
        }
    }
    Some(common)
}

fn describe_vetoes(report: &VetoReport) -> String {
    report
        .agents
        .iter()
        .map(|a| format!("agent {}: V={:?} SV={:?}", a.agent, a.vetoed, a.strongly_vetoed))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Veto-based NOM test for efficient rules, after the oracle confirms efficiency.
pub fn nom_corollary_efficient(rule: &RuleDescriptor, budget: &Budget) -> Result<NomVerdict> {
    let eff = oracle::is_efficient(rule, budget)?;
    if !eff.holds {
        return Err(NomError::HypothesisNotVerified("rule is not efficient".into()));
    }
    Ok(corollary_efficient_clauses(&veto_sets(rule, budget)?))
}

/// Veto-based NOM test for efficient and anonymous rules, after the oracle confirms both.
pub fn nom_corollary_anon_efficient(rule: &RuleDescriptor, budget: &Budget) -> Result<NomVerdict> {
    if !oracle::is_efficient(rule, budget)?.holds {
        return Err(NomError::HypothesisNotVerified("rule is not efficient".into()));
    }
    if !oracle::is_anonymous(rule, budget)?.holds {
        return Err(NomError::HypothesisNotVerified("rule is not anonymous".into()));
    }
    Ok(corollary_anon_efficient_clauses(&veto_sets(rule, budget)?))
}
