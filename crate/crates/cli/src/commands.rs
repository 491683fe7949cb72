//! The verbs behind the binary. Each returns a report; rendering and exit
//! codes are decided by the caller.

use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use nomvote_core::analysis::{
    find_obvious_manipulations, find_profitable_manipulations, option_set, option_set_closed, veto_sets,
    veto_sets_closed,
};
use nomvote_core::budget::Budget;
use nomvote_core::characterization::nom_predicate;
use nomvote_core::domain::{enumerate_preferences, Alternative, AlternativeSpace};
use nomvote_core::oracle::{is_anonymous, is_dictatorial, is_efficient, is_strategy_proof};
use nomvote_core::rules::RuleDescriptor;
use nomvote_core::NomError;

use crate::config::RuleConfig;
use crate::report::{
    veto_entries, AnalysisReport, AxiomReport, OptionSetReport, Timing, Verdicts, VetoCommandReport,
    WitnessCommandReport, WitnessSummary,
};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Axiom {
    Efficient,
    Anonymous,
    Dictatorial,
    StrategyProof,
}

impl Axiom {
    fn key(self) -> &'static str {
        match self {
            Axiom::Efficient => "efficient",
            Axiom::Anonymous => "anonymous",
            Axiom::Dictatorial => "dictatorial",
            Axiom::StrategyProof => "strategy_proof",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    /// Worst-case and best-case obvious manipulations.
    Obvious,
    /// Every profitable manipulation.
    Plain,
}

/// Reads `NOMVOTE_BUDGET`: either a bare profile cap `N` or
/// `profiles=N,preferences=M` in any order.
pub fn budget_from_env(value: Option<&str>) -> Result<Budget, CliError> {
    let mut budget = Budget::default();
    let Some(value) = value.map(str::trim).filter(|v| !v.is_empty()) else {
        return Ok(budget);
    };
    let bad = || CliError::Usage(format!("NOMVOTE_BUDGET: cannot parse {value:?}"));
    if let Ok(n) = value.parse() {
        budget.max_profiles = n;
        return Ok(budget);
    }
    for part in value.split(',') {
        let (key, n) = part.split_once('=').ok_or_else(bad)?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "profiles" => budget.max_profiles = n,
            "preferences" => budget.max_preferences = n,
            _ => return Err(bad()),
        }
    }
    Ok(budget)
}

pub fn load(path: &Path) -> Result<(RuleConfig, RuleDescriptor), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let config = RuleConfig::parse(&text)?;
    let rule = config.to_rule()?;
    Ok((config, rule))
}

pub fn render<T: Serialize>(report: &T, format: Format, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Text => text(report),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

pub fn check(
    config: &RuleConfig,
    rule: &RuleDescriptor,
    axioms: &[Axiom],
    cap: usize,
    budget: &Budget,
) -> Result<AnalysisReport, CliError> {
    let mut timing = Timing::default();
    let space = *rule.space();

    let started = Instant::now();
    let mut axiom_reports = std::collections::BTreeMap::new();
    let mut wanted = axioms.to_vec();
    wanted.sort();
    wanted.dedup();
    for axiom in wanted {
        let verdict = match axiom {
            Axiom::Efficient => is_efficient(rule, budget)?,
            Axiom::Anonymous => is_anonymous(rule, budget)?,
            Axiom::Dictatorial => is_dictatorial(rule, budget)?,
            Axiom::StrategyProof => is_strategy_proof(rule, |_| true, budget)?,
        };
        axiom_reports.insert(axiom.key().to_string(), AxiomReport::new(&verdict, &space));
    }
    timing.axioms_ms = ms(started);

    let started = Instant::now();
    let veto = veto_sets(rule, budget)?;
    let closed_veto_agrees = match veto_sets_closed(rule, budget) {
        Ok(closed) => Some(closed.same_sets(&veto)),
        Err(NomError::UnsupportedFamily(_)) => None,
        Err(e) => return Err(e.into()),
    };
    timing.veto_ms = ms(started);

    let started = Instant::now();
    let witnesses = find_obvious_manipulations(rule, budget)?;
    timing.brute_ms = ms(started);

    let verdicts = Verdicts {
        nom_brute: witnesses.is_empty(),
        nom_veto: veto.every_veto_strong(),
        predicate: nom_predicate(rule).map(Into::into),
        closed_veto_agrees,
        axioms: axiom_reports,
    };
    Ok(AnalysisReport {
        rule: config.clone(),
        nom: verdicts.nom_brute,
        discrepancy: verdicts.discrepancy(),
        verdicts,
        veto: veto_entries(&veto),
        witnesses: WitnessSummary::new(&witnesses, cap),
        timing,
    })
}

/// Accepts an index (`3`), or for subset spaces a set of objects (`{0,1}`).
pub fn parse_alternative(s: &str, space: &AlternativeSpace) -> Result<Alternative, CliError> {
    let s = s.trim();
    let bad = |why: &str| CliError::Usage(format!("--top {s:?}: {why}"));
    let x = if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let objects = space
            .objects()
            .ok_or_else(|| bad("set notation needs a subset space"))?;
        inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .try_fold(0usize, |acc, t| {
                let k: usize = t.parse().map_err(|_| bad("expected object indices"))?;
                if k >= objects {
                    return Err(bad("object out of range"));
                }
                Ok(acc | 1 << k)
            })?
    } else {
        s.parse().map_err(|_| bad("expected an alternative"))?
    };
    if x >= space.size() {
        return Err(bad("alternative out of range"));
    }
    Ok(x)
}

pub fn option_set_report(
    config: &RuleConfig,
    rule: &RuleDescriptor,
    agent: usize,
    top: &str,
    budget: &Budget,
) -> Result<OptionSetReport, CliError> {
    if agent >= rule.n() {
        return Err(CliError::Usage(format!("--agent {agent}: rule has {} agents", rule.n())));
    }
    let top = parse_alternative(top, rule.space())?;
    let brute: Vec<Alternative> = option_set(rule, agent, top, budget)?.members.into_iter().collect();
    let (closed, note) = match option_set_closed(rule, agent, top) {
        Ok(o) => (Some(o.members.into_iter().collect::<Vec<_>>()), None),
        Err(NomError::UnsupportedFamily(name)) => (
            None,
            Some(format!("no closed form for family {name}; brute force only")),
        ),
        Err(NomError::AssumptionViolated(why)) => (None, Some(format!("closed form not applicable: {why}"))),
        Err(e) => return Err(e.into()),
    };
    Ok(OptionSetReport {
        rule: config.clone(),
        agent,
        top,
        agreement: closed.as_ref().map(|c| *c == brute),
        brute,
        closed,
        note,
    })
}

pub fn veto_report(config: &RuleConfig, rule: &RuleDescriptor, budget: &Budget) -> Result<VetoCommandReport, CliError> {
    let brute = veto_sets(rule, budget)?;
    let (closed, note) = match veto_sets_closed(rule, budget) {
        Ok(c) => (Some(c), None),
        Err(NomError::UnsupportedFamily(name)) => (
            None,
            Some(format!("no closed form for family {name}; brute force only")),
        ),
        Err(e) => return Err(e.into()),
    };
    Ok(VetoCommandReport {
        rule: config.clone(),
        every_veto_strong: brute.every_veto_strong(),
        agreement: closed.as_ref().map(|c| c.same_sets(&brute)),
        brute: veto_entries(&brute),
        closed: closed.as_ref().map(veto_entries),
        note,
    })
}

pub fn witness_report(
    config: &RuleConfig,
    rule: &RuleDescriptor,
    kind: WitnessKind,
    agent: Option<usize>,
    cap: usize,
    budget: &Budget,
) -> Result<WitnessCommandReport, CliError> {
    if let Some(a) = agent.filter(|&a| a >= rule.n()) {
        return Err(CliError::Usage(format!("--agent {a}: rule has {} agents", rule.n())));
    }
    let mut witnesses = match kind {
        WitnessKind::Obvious => find_obvious_manipulations(rule, budget)?,
        WitnessKind::Plain => {
            let prefs = enumerate_preferences(rule.space(), budget)?;
            let mut out = Vec::new();
            for i in (0..rule.n()).filter(|&i| agent.is_none_or(|a| a == i)) {
                for truth in &prefs {
                    out.extend(find_profitable_manipulations(rule, i, truth, budget)?);
                }
            }
            out
        }
    };
    witnesses.retain(|w| agent.is_none_or(|a| a == w.agent));
    Ok(WitnessCommandReport {
        rule: config.clone(),
        witnesses: WitnessSummary::new(&witnesses, cap),
    })
}
