//! Option sets, veto and strong-veto sets, and the search for profitable and
//! obvious manipulations.
//!
//! All rules here are tops-only, so the option set an agent leaves open
//! depends on its report only through the reported top. Veto structure is
//! therefore computed per top, while the obvious-manipulation scan still
//! ranges over every full true preference: best and worst elements of an
//! option set depend on the whole order.

use std::collections::{BTreeMap, BTreeSet};

use crate::budget::Budget;
use crate::domain::{enumerate_preferences, splice, subprofiles, Agent, Alternative, Preference};
use crate::error::{NomError, Result};
use crate::rules::{quota_to_committees, BallotFamily, Coalition, Committee, Family, MedianScheme, RuleDescriptor};

pub type AltSet = BTreeSet<Alternative>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionSet {
    pub agent: Agent,
    pub top: Alternative,
    pub members: AltSet,
}

fn check_agent(rule: &RuleDescriptor, agent: Agent, top: Alternative) -> Result<()> {
    if agent >= rule.n() {
        return Err(NomError::DimensionMismatch(format!(
            "agent {agent} outside 0..{}",
            rule.n()
        )));
    }
    if top >= rule.m() {
        return Err(NomError::DimensionMismatch(format!(
            "top {top} outside 0..{}",
            rule.m()
        )));
    }
    Ok(())
}

/// Outcomes reachable when `agent` reports top `top`, over all `m^(n-1)`
/// reports of the others.
pub fn option_set(
    rule: &RuleDescriptor,
    agent: Agent,
    top: Alternative,
    budget: &Budget,
) -> Result<OptionSet> {
    check_agent(rule, agent, top)?;
    budget.check_power("subprofiles (m^(n-1))", rule.m(), rule.n() - 1)?;
    let members = subprofiles(rule.n(), rule.m())
        .map(|others| rule.eval_unchecked(splice(&others, agent, top).tops()))
        .collect();
    Ok(OptionSet {
        agent,
        top,
        members,
    })
}

/// Option set left open by a full preference report.
pub fn option_set_of(
    rule: &RuleDescriptor,
    agent: Agent,
    report: &Preference,
    budget: &Budget,
) -> Result<OptionSet> {
    if report.len() != rule.m() {
        return Err(NomError::DimensionMismatch(format!(
            "preference over {} alternatives, rule has {}",
            report.len(),
            rule.m()
        )));
    }
    option_set(rule, agent, report.top(), budget)
}

/// Every agent's option set for every top, indexed `[agent][top]`, from a
/// single pass over all top vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionSets {
    sets: Vec<Vec<AltSet>>,
}

impl OptionSets {
    pub fn compute(rule: &RuleDescriptor, budget: &Budget) -> Result<Self> {
        let (n, m) = (rule.n(), rule.m());
        let table = rule.outcome_table(budget)?;
        let mut sets = vec![vec![AltSet::new(); m]; n];
        for (idx, &outcome) in table.iter().enumerate() {
            let tops = crate::domain::TopVector::from_index(idx, n, m);
            for (agent, &t) in tops.tops().iter().enumerate() {
                sets[agent][t].insert(outcome);
            }
        }
        Ok(OptionSets { sets })
    }

    pub fn get(&self, agent: Agent, top: Alternative) -> &AltSet {
        &self.sets[agent][top]
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn m(&self) -> usize {
        self.sets.first().map_or(0, Vec::len)
    }
}

/// Closed-form median option set: `[top, α_{n-1}]` below `α_1`,
/// `[α_1, α_{n-1}]` between, `[α_1, top]` above.
pub fn option_set_closed_mvs(scheme: &MedianScheme, top: Alternative) -> AltSet {
    interval_option_set(scheme.lowest(), scheme.highest(), top)
}

/// Closed-form generalized median option set, with `p_{N∖{i}}` and `p_{{i}}`
/// as the interval ends. Requires `p_{N∖{i}} <= p_{{i}}`.
pub fn option_set_closed_gmv(
    p: &BallotFamily,
    n: usize,
    agent: Agent,
    top: Alternative,
) -> Result<AltSet> {
    let (lo, hi) = (p.others(n, agent), p.own(agent));
    if lo > hi {
        return Err(NomError::AssumptionViolated(format!(
            "p_N∖{{{agent}}} = {lo} exceeds p_{{{agent}}} = {hi}"
        )));
    }
    Ok(interval_option_set(lo, hi, top))
}

fn interval_option_set(lo: Alternative, hi: Alternative, top: Alternative) -> AltSet {
    if top < lo {
        (top..=hi).collect()
    } else if top <= hi {
        (lo..=hi).collect()
    } else {
        (lo..=top).collect()
    }
}

/// Closed-form option set where one exists (median and generalized median).
pub fn option_set_closed(rule: &RuleDescriptor, agent: Agent, top: Alternative) -> Result<OptionSet> {
    check_agent(rule, agent, top)?;
    let members = match rule.family() {
        Family::Median(scheme) => option_set_closed_mvs(scheme, top),
        Family::GeneralizedMedian(p) => option_set_closed_gmv(p, rule.n(), agent, top)?,
        other => return Err(NomError::UnsupportedFamily(other.name())),
    };
    Ok(OptionSet {
        agent,
        top,
        members,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentVetoes {
    pub agent: Agent,
    /// `V_i`: alternatives excluded from some option set of the agent.
    pub vetoed: AltSet,
    /// `SV_i`: alternatives excluded by every report whose top differs.
    pub strongly_vetoed: AltSet,
    /// For each vetoed alternative, tops whose option set excludes it. The
    /// brute-force report lists all of them; the closed form lists the tops
    /// that realise each veto directly.
    pub witnesses: BTreeMap<Alternative, Vec<Alternative>>,
}

impl AgentVetoes {
    pub fn every_veto_strong(&self) -> bool {
        self.vetoed == self.strongly_vetoed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VetoReport {
    pub agents: Vec<AgentVetoes>,
}

impl VetoReport {
    /// `SV_i = V_i` for every agent.
    pub fn every_veto_strong(&self) -> bool {
        self.agents.iter().all(AgentVetoes::every_veto_strong)
    }

    /// Compares `V_i` and `SV_i` for all agents, ignoring witness lists.
    pub fn same_sets(&self, other: &VetoReport) -> bool {
        self.agents.len() == other.agents.len()
            && self.agents.iter().zip(&other.agents).all(|(a, b)| {
                a.vetoed == b.vetoed && a.strongly_vetoed == b.strongly_vetoed
            })
    }

    pub fn vetoers(&self) -> impl Iterator<Item = &AgentVetoes> {
        self.agents.iter().filter(|a| !a.vetoed.is_empty())
    }
}

fn agent_vetoes<F>(agent: Agent, m: usize, option_set: F) -> AgentVetoes
where
    F: Fn(Alternative) -> AltSet,
{
    let sets: Vec<AltSet> = (0..m).map(option_set).collect();
    let mut witnesses: BTreeMap<Alternative, Vec<Alternative>> = BTreeMap::new();
    for (top, set) in sets.iter().enumerate() {
        for x in (0..m).filter(|x| !set.contains(x)) {
            witnesses.entry(x).or_default().push(top);
        }
    }
    let vetoed: AltSet = witnesses.keys().copied().collect();
    let strongly_vetoed = strong_vetoes(&vetoed, &sets);
    AgentVetoes {
        agent,
        vetoed,
        strongly_vetoed,
        witnesses,
    }
}

fn strong_vetoes(vetoed: &AltSet, sets: &[AltSet]) -> AltSet {
    vetoed
        .iter()
        .copied()
        .filter(|&x| {
            sets.iter()
                .enumerate()
                .all(|(top, set)| top == x || !set.contains(&x))
        })
        .collect()
}

/// Veto and strong-veto sets by exhaustive option-set computation.
pub fn veto_sets(rule: &RuleDescriptor, budget: &Budget) -> Result<VetoReport> {
    let sets = OptionSets::compute(rule, budget)?;
    Ok(veto_report(&sets))
}

pub fn veto_report(sets: &OptionSets) -> VetoReport {
    let agents = (0..sets.n())
        .map(|agent| agent_vetoes(agent, sets.m(), |top| sets.get(agent, top).clone()))
        .collect();
    VetoReport { agents }
}

/// Veto sets from the closed-form characterizations: intervals outside the
/// extreme fixed ballots for (generalized) median schemes and the
/// committee conditions for voting by committees or quota. Strong vetoes come
/// from closed-form option sets where they exist, else from a brute-force
/// scan of that agent's option sets.
pub fn veto_sets_closed(rule: &RuleDescriptor, budget: &Budget) -> Result<VetoReport> {
    let (n, m) = (rule.n(), rule.m());
    let agents = match rule.family() {
        Family::Median(scheme) => (0..n)
            .map(|agent| interval_vetoes(agent, m, scheme.lowest(), scheme.highest()))
            .collect(),
        Family::GeneralizedMedian(p) => (0..n)
            .map(|agent| {
                let (lo, hi) = (p.others(n, agent), p.own(agent));
                if lo <= hi {
                    Ok(interval_vetoes(agent, m, lo, hi))
                } else {
                    everything_vetoed(rule, agent, lo, hi, budget)
                }
            })
            .collect::<Result<_>>()?,
        Family::Committees(w) => committee_vetoes(rule, &w.committees, budget)?,
        Family::Quota(q) => committee_vetoes(rule, &quota_to_committees(q, n).committees, budget)?,
        other => return Err(NomError::UnsupportedFamily(other.name())),
    };
    Ok(VetoReport { agents })
}

/// Vetoes when the option sets are intervals with ends `lo <= hi`.
fn interval_vetoes(agent: Agent, m: usize, lo: Alternative, hi: Alternative) -> AgentVetoes {
    let mut witnesses = BTreeMap::new();
    for x in 0..lo {
        witnesses.insert(x, vec![lo]);
    }
    for x in hi + 1..m {
        witnesses.insert(x, vec![hi]);
    }
    let vetoed: AltSet = witnesses.keys().copied().collect();
    let sets: Vec<AltSet> = (0..m).map(|t| interval_option_set(lo, hi, t)).collect();
    let strongly_vetoed = strong_vetoes(&vetoed, &sets);
    AgentVetoes {
        agent,
        vetoed,
        strongly_vetoed,
        witnesses,
    }
}

/// `p_{{i}} < p_{N∖{i}}`: every alternative is vetoed.
fn everything_vetoed(
    rule: &RuleDescriptor,
    agent: Agent,
    lo: Alternative,
    hi: Alternative,
    budget: &Budget,
) -> Result<AgentVetoes> {
    let m = rule.m();
    let witnesses = (0..m)
        .map(|x| (x, vec![if x > hi { hi } else { lo }]))
        .collect();
    let sets = agent_option_sets(rule, agent, budget)?;
    Ok(AgentVetoes {
        agent,
        vetoed: (0..m).collect(),
        strongly_vetoed: strong_vetoes(&(0..m).collect(), &sets),
        witnesses,
    })
}

fn agent_option_sets(rule: &RuleDescriptor, agent: Agent, budget: &Budget) -> Result<Vec<AltSet>> {
    (0..rule.m())
        .map(|top| option_set(rule, agent, top, budget).map(|o| o.members))
        .collect()
}

/// `S ∈ V_i` iff some object `k` has either `k ∈ S` with `i` in every winning
/// coalition of `W_k`, or `k ∉ S` with `{i}` winning for `k`.
fn committee_vetoes(
    rule: &RuleDescriptor,
    committees: &[Committee],
    budget: &Budget,
) -> Result<Vec<AgentVetoes>> {
    let (n, m) = (rule.n(), rule.m());
    let full = m - 1;
    (0..n)
        .map(|agent| {
            let mut witnesses = BTreeMap::new();
            for set in 0..m {
                let blocks = committees.iter().enumerate().find_map(|(k, w)| {
                    let inside = set >> k & 1 == 1;
                    if inside && w.intersection(n).contains(agent) {
                        // Any top without k keeps k out of the outcome.
                        Some(0)
                    } else if !inside && w.wins(Coalition::singleton(agent)) {
                        // Any top with k forces k into the outcome.
                        Some(full)
                    } else {
                        None
                    }
                });
                if let Some(top) = blocks {
                    witnesses.insert(set, vec![top]);
                }
            }
            let vetoed: AltSet = witnesses.keys().copied().collect();
            let sets = agent_option_sets(rule, agent, budget)?;
            Ok(AgentVetoes {
                agent,
                strongly_vetoed: strong_vetoes(&vetoed, &sets),
                vetoed,
                witnesses,
            })
        })
        .collect()
}

/// True iff every veto is a strong veto for every agent.
pub fn is_nom_veto(rule: &RuleDescriptor, budget: &Budget) -> Result<bool> {
    Ok(veto_sets(rule, budget)?.every_veto_strong())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ManipulationKind {
    Plain,
    WorstCase,
    BestCase,
}

impl ManipulationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ManipulationKind::Plain => "plain",
            ManipulationKind::WorstCase => "worst_case",
            ManipulationKind::BestCase => "best_case",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// The others' tops (agent order, manipulator removed) at which the
    /// misreport profits.
    Subprofile {
        others: Vec<Alternative>,
        truthful_outcome: Alternative,
        manipulated_outcome: Alternative,
    },
    /// Option sets compared by the worst- or best-case condition, with the
    /// worst (resp. best) element of each under the true preference.
    OptionSets {
        truthful: AltSet,
        misreport: AltSet,
        truthful_value: Alternative,
        misreport_value: Alternative,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationWitness {
    pub agent: Agent,
    pub truth: Preference,
    pub misreport: Preference,
    pub kind: ManipulationKind,
    pub evidence: Evidence,
}

/// Every profitable misreport for `agent` with true preference `truth`,
/// paired with every subprofile of the others' tops where it profits.
/// Misreports are canonical preferences, one per top.
pub fn find_profitable_manipulations(
    rule: &RuleDescriptor,
    agent: Agent,
    truth: &Preference,
    budget: &Budget,
) -> Result<Vec<ManipulationWitness>> {
    let (n, m) = (rule.n(), rule.m());
    check_agent(rule, agent, 0)?;
    if truth.len() != m {
        return Err(NomError::DimensionMismatch(format!(
            "preference over {} alternatives, rule has {m}",
            truth.len()
        )));
    }
    budget.check_preferences(m)?;
    budget.check_power("subprofiles (m^(n-1))", m, n - 1)?;
    let mut out = Vec::new();
    for lie in (0..m).filter(|&t| t != truth.top()) {
        let misreport = Preference::canonical_with_top(lie, m)?;
        for others in subprofiles(n, m) {
            let truthful_outcome = rule.eval_unchecked(splice(&others, agent, truth.top()).tops());
            let manipulated_outcome = rule.eval_unchecked(splice(&others, agent, lie).tops());
            if truth.prefers(manipulated_outcome, truthful_outcome) {
                out.push(ManipulationWitness {
                    agent,
                    truth: truth.clone(),
                    misreport: misreport.clone(),
                    kind: ManipulationKind::Plain,
                    evidence: Evidence::Subprofile {
                        others,
                        truthful_outcome,
                        manipulated_outcome,
                    },
                });
            }
        }
    }
    Ok(out)
}

/// All obvious manipulations, scanning every agent, every true preference
/// and every profitable misreport top. Order: agent, true preference
/// (lexicographic), misreport top, then worst case before best case. Empty
/// means the rule is not obviously manipulable.
pub fn find_obvious_manipulations(
    rule: &RuleDescriptor,
    budget: &Budget,
) -> Result<Vec<ManipulationWitness>> {
    let (n, m) = (rule.n(), rule.m());
    let prefs = enumerate_preferences(rule.space(), budget)?;
    budget.check_power("top vectors (m^n)", m, n)?;
    let mut out = Vec::new();
    for agent in 0..n {
        // outcomes[top] = outcome per subprofile, in subprofile order
        let outcomes: Vec<Vec<Alternative>> = (0..m)
            .map(|top| {
                subprofiles(n, m)
                    .map(|others| rule.eval_unchecked(splice(&others, agent, top).tops()))
                    .collect()
            })
            .collect();
        let options: Vec<AltSet> = outcomes.iter().map(|o| o.iter().copied().collect()).collect();
        for truth in &prefs {
            let t = truth.top();
            for lie in (0..m).filter(|&l| l != t) {
                let profitable = outcomes[lie]
                    .iter()
                    .zip(&outcomes[t])
                    .any(|(&lied, &honest)| truth.prefers(lied, honest));
                if !profitable {
                    continue;
                }
                let misreport = Preference::canonical_with_top(lie, m)?;
                let (honest_set, lie_set) = (&options[t], &options[lie]);
                let checks = [
                    (
                        ManipulationKind::WorstCase,
                        truth.worst_in(honest_set.iter().copied())?,
                        truth.worst_in(lie_set.iter().copied())?,
                    ),
                    (
                        ManipulationKind::BestCase,
                        truth.best_in(honest_set.iter().copied())?,
                        truth.best_in(lie_set.iter().copied())?,
                    ),
                ];
                for (kind, truthful_value, misreport_value) in checks {
                    if truth.prefers(misreport_value, truthful_value) {
                        out.push(ManipulationWitness {
                            agent,
                            truth: truth.clone(),
                            misreport: misreport.clone(),
                            kind,
                            evidence: Evidence::OptionSets {
                                truthful: honest_set.clone(),
                                misreport: lie_set.clone(),
                                truthful_value,
                                misreport_value,
                            },
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// First witness and exact count per (agent, kind), in scan order.
pub fn summarize_witnesses(
    witnesses: &[ManipulationWitness],
) -> BTreeMap<(Agent, ManipulationKind), (&ManipulationWitness, usize)> {
    let mut out: BTreeMap<(Agent, ManipulationKind), (&ManipulationWitness, usize)> = BTreeMap::new();
    for w in witnesses {
        out.entry((w.agent, w.kind))
            .and_modify(|(_, count)| *count += 1)
            .or_insert((w, 1));
    }
    out
}

/// If there is a best-case witness there must be a worst-case one.
pub fn worst_case_suffices(witnesses: &[ManipulationWitness]) -> bool {
    let has = |k| witnesses.iter().any(|w| w.kind == k);
    !has(ManipulationKind::BestCase) || has(ManipulationKind::WorstCase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::AlternativeSpace;
    use crate::families;

    fn set(xs: &[usize]) -> AltSet {
        xs.iter().copied().collect()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn median_option_set_examples() {
        let rule = RuleDescriptor::median(3, 3, vec![1, 1]).unwrap();
        assert_eq!(option_set(&rule, 0, 0, &b()).unwrap().members, set(&[0, 1]));
        assert_eq!(option_set(&rule, 0, 2, &b()).unwrap().members, set(&[1, 2]));
        let scheme = MedianScheme::new(vec![1, 1]);
        assert_eq!(option_set_closed_mvs(&scheme, 0), set(&[0, 1]));
        assert_eq!(option_set_closed_mvs(&scheme, 2), set(&[1, 2]));
        assert_eq!(option_set_closed_mvs(&MedianScheme::new(vec![0, 2]), 1), set(&[0, 1, 2]));
    }

    #[test]
    fn status_quo_and_dictator_option_sets() {
        let space = AlternativeSpace::linear(4);
        let sq = RuleDescriptor::status_quo(3, space, 1).unwrap();
        for agent in 0..3 {
            for t in 0..4 {
                assert_eq!(option_set(&sq, agent, t, &b()).unwrap().members, set(&[1, t]));
            }
        }
        let d = RuleDescriptor::dictatorship(3, space, 2).unwrap();
        assert_eq!(option_set(&d, 2, 3, &b()).unwrap().members, set(&[3]));
        assert_eq!(option_set(&d, 0, 3, &b()).unwrap().members, set(&[0, 1, 2, 3]));
    }

    #[test]
    fn option_set_errors() {
        let rule = RuleDescriptor::median(3, 3, vec![1, 1]).unwrap();
        assert!(option_set(&rule, 3, 0, &b()).is_err());
        assert!(option_set(&rule, 0, 3, &b()).is_err());
        let tight = Budget {
            max_profiles: 8,
            ..b()
        };
        assert!(option_set(&rule, 0, 0, &tight).unwrap_err().is_budget());
        let gmv = RuleDescriptor::generalized_median(2, 3, vec![2, 0, 2, 0]).unwrap();
        assert!(matches!(
            option_set_closed(&gmv, 0, 1),
            Err(NomError::AssumptionViolated(_))
        ));
        let sq = RuleDescriptor::status_quo(2, AlternativeSpace::linear(3), 0).unwrap();
        assert_eq!(option_set_closed(&sq, 0, 0), Err(NomError::UnsupportedFamily("status_quo")));
    }

    #[test]
    fn option_set_depends_only_on_top() {
        let rule = RuleDescriptor::median(3, 4, vec![1, 2]).unwrap();
        let prefs = enumerate_preferences(rule.space(), &b()).unwrap();
        for agent in 0..3 {
            for p in &prefs {
                let q = Preference::canonical_with_top(p.top(), 4).unwrap();
                assert_eq!(
                    option_set_of(&rule, agent, p, &b()).unwrap(),
                    option_set_of(&rule, agent, &q, &b()).unwrap()
                );
            }
        }
    }

    #[test]
    fn closed_option_sets_match_brute_force() {
        for (n, m) in [(2, 3), (3, 3), (2, 4), (3, 4)] {
            for scheme in families::median_schemes(n, m) {
                let rule = RuleDescriptor::median(n, m, scheme.alpha.clone()).unwrap();
                let sets = OptionSets::compute(&rule, &b()).unwrap();
                for agent in 0..n {
                    for t in 0..m {
                        let closed = option_set_closed(&rule, agent, t).unwrap().members;
                        assert_eq!(&closed, sets.get(agent, t));
                        assert_eq!(closed, option_set(&rule, agent, t, &b()).unwrap().members);
                    }
                }
            }
        }
        for p in families::ballot_families(2, 3) {
            let rule = RuleDescriptor::generalized_median(2, 3, p.ballots.clone()).unwrap();
            for agent in 0..2 {
                for t in 0..3 {
                    if let Ok(closed) = option_set_closed_gmv(&p, 2, agent, t) {
                        assert_eq!(closed, option_set(&rule, agent, t, &b()).unwrap().members);
                    }
                }
            }
        }
    }

    #[test]
    fn veto_examples() {
        let space = AlternativeSpace::linear(3);
        for n in [2, 3] {
            for a in 0..3 {
                let sq = RuleDescriptor::status_quo(n, space, a).unwrap();
                let report = veto_sets(&sq, &b()).unwrap();
                let others: AltSet = (0..3).filter(|&x| x != a).collect();
                for agent in &report.agents {
                    assert_eq!(agent.vetoed, others);
                    assert_eq!(agent.strongly_vetoed, others);
                }
            }
        }
        let med = RuleDescriptor::median(3, 3, vec![1, 1]).unwrap();
        for agent in veto_sets(&med, &b()).unwrap().agents {
            assert_eq!(agent.vetoed, set(&[0, 2]));
        }
        let quota = RuleDescriptor::quota(3, vec![2, 2]).unwrap();
        assert!(veto_sets(&quota, &b()).unwrap().vetoers().next().is_none());
        let wide = RuleDescriptor::median(3, 3, vec![0, 2]).unwrap();
        assert!(veto_sets_closed(&wide, &b()).unwrap().vetoers().next().is_none());
    }

    #[test]
    fn strong_subset_of_veto() {
        for table in families::all_tables(2, 2) {
            let rule = RuleDescriptor::table(2, AlternativeSpace::linear(2), table).unwrap();
            for a in veto_sets(&rule, &b()).unwrap().agents {
                assert!(a.strongly_vetoed.is_subset(&a.vetoed));
            }
        }
    }

    #[test]
    fn gmv_closed_vetoes_match() {
        // n = 2, m = 3, p_{1} = 0, p_{2} = 2: agent 0 has p_{N∖{0}} = 2 > 0.
        let rule = RuleDescriptor::generalized_median(2, 3, vec![2, 0, 2, 0]).unwrap();
        let closed = veto_sets_closed(&rule, &b()).unwrap();
        assert_eq!(closed.agents[0].vetoed, set(&[0, 1, 2]));
        assert!(closed.same_sets(&veto_sets(&rule, &b()).unwrap()));
    }

    #[test]
    fn committee_singleton_winner_vetoes() {
        // {0} wins object 0: every S without object 0 is vetoed by agent 0.
        let c0 = Committee::new(vec![
            crate::rules::Coalition::from_agents([0]),
            crate::rules::Coalition::from_agents([1, 2]),
        ]);
        let rule = RuleDescriptor::committees(3, vec![c0, Committee::quota(3, 2)]).unwrap();
        let closed = veto_sets_closed(&rule, &b()).unwrap();
        for s in [0b00, 0b10] {
            assert!(closed.agents[0].vetoed.contains(&s));
        }
        assert!(closed.same_sets(&veto_sets(&rule, &b()).unwrap()));
    }

    #[test]
    fn closed_vetoes_unsupported() {
        let d = RuleDescriptor::dictatorship(2, AlternativeSpace::linear(3), 0).unwrap();
        assert_eq!(veto_sets_closed(&d, &b()), Err(NomError::UnsupportedFamily("dictatorship")));
    }

    #[test]
    fn dictatorship_has_no_manipulations() {
        let d = RuleDescriptor::dictatorship(3, AlternativeSpace::linear(3), 1).unwrap();
        for p in enumerate_preferences(d.space(), &b()).unwrap() {
            for agent in 0..3 {
                assert!(find_profitable_manipulations(&d, agent, &p, &b()).unwrap().is_empty());
            }
        }
        assert!(find_obvious_manipulations(&d, &b()).unwrap().is_empty());
    }

    #[test]
    fn status_quo_profitable_scan() {
        // n = 2, a = 0, truth (1,2,0). Truthfully the outcome is 1 when the
        // other reports 1 and 0 otherwise; if the other reports 2, reporting 2
        // turns 0 into 2. That is the only profitable pair.
        let sq = RuleDescriptor::status_quo(2, AlternativeSpace::linear(3), 0).unwrap();
        let truth = Preference::new(vec![1, 2, 0]).unwrap();
        let found = find_profitable_manipulations(&sq, 0, &truth, &b()).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].misreport.top(), 2);
        assert_eq!(
            found[0].evidence,
            Evidence::Subprofile {
                others: vec![2],
                truthful_outcome: 0,
                manipulated_outcome: 2
            }
        );
        // Manipulable, but not obviously.
        assert!(find_obvious_manipulations(&sq, &b()).unwrap().is_empty());
    }

    #[test]
    fn median_profitable_scan() {
        // n = 2, m = 3, alpha = (0): f = min(t_0, t_1). Truth (2,1,0) for
        // agent 0: outcome is min(2, t_1); lying changes it only downward.
        let med = RuleDescriptor::median(2, 3, vec![0]).unwrap();
        let truth = Preference::new(vec![2, 1, 0]).unwrap();
        assert!(find_profitable_manipulations(&med, 0, &truth, &b()).unwrap().is_empty());
        // Truth (2,0,1), others report 1: honest gives 1 (worst), lying 0 gives 0.
        let truth = Preference::new(vec![2, 0, 1]).unwrap();
        let found = find_profitable_manipulations(&med, 0, &truth, &b()).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].misreport.top(), 0);
        assert_eq!(
            found[0].evidence,
            Evidence::Subprofile {
                others: vec![1],
                truthful_outcome: 1,
                manipulated_outcome: 0
            }
        );
    }

    #[test]
    fn median_obvious_manipulation_found() {
        let med = RuleDescriptor::median(3, 3, vec![0, 0]).unwrap();
        let found = find_obvious_manipulations(&med, &b()).unwrap();
        assert!(!found.is_empty());
        assert!(!is_nom_veto(&med, &b()).unwrap());
        for w in &found {
            if let Evidence::OptionSets {
                truthful_value,
                misreport_value,
                ..
            } = w.evidence
            {
                assert!(w.truth.prefers(misreport_value, truthful_value));
            } else {
                panic!("obvious witnesses carry option sets");
            }
        }
        assert!(worst_case_suffices(&found));
        let summary = summarize_witnesses(&found);
        assert_eq!(summary.values().map(|(_, c)| c).sum::<usize>(), found.len());
    }

    #[test]
    fn veto_test_matches_scan_on_two_alternatives() {
        for table in families::all_tables(2, 2) {
            let rule = RuleDescriptor::table(2, AlternativeSpace::linear(2), table.clone()).unwrap();
            let brute = find_obvious_manipulations(&rule, &b()).unwrap().is_empty();
            assert_eq!(is_nom_veto(&rule, &b()).unwrap(), brute, "{table:?}");
        }
    }

    #[test]
    fn no_vetoers_means_nom() {
        let quota = RuleDescriptor::quota(3, vec![2, 2]).unwrap();
        assert!(veto_sets(&quota, &b()).unwrap().vetoers().next().is_none());
        assert!(find_obvious_manipulations(&quota, &b()).unwrap().is_empty());
    }

    #[test]
    fn veto_test_needs_onto() {
        // Alternative 2 is never chosen; agent 0 with true top 2 gains by
        // reporting 1. Every veto is still strong in the tops-reduced sense.
        let rule = RuleDescriptor::table(2, AlternativeSpace::linear(3), vec![0, 0, 0, 0, 1, 0, 0, 0, 0]).unwrap();
        assert!(!crate::rules::is_onto_tops(&rule, &b()).unwrap());
        let found = find_obvious_manipulations(&rule, &b()).unwrap();
        assert!(found.iter().any(|w| w.kind == ManipulationKind::BestCase));
        assert!(is_nom_veto(&rule, &b()).unwrap());
    }
}
