//! Brute-force checkers for strategy-proofness, efficiency, anonymity,
//! dictatorship and non-obvious manipulability. These scan definitions
//! directly and serve as ground truth for the closed forms.
//!
//! Counterexamples are the first found in lexicographic scan order and can be
//! re-checked with [`Counterexample::reverify`].

use crate::analysis::{find_obvious_manipulations, option_set_of, ManipulationKind, ManipulationWitness};
use crate::budget::{checked_pow, Budget};
use crate::domain::{enumerate_preferences, enumerate_top_vectors, Agent, Alternative, Preference, TopVector};
use crate::error::Result;
use crate::rules::RuleDescriptor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    /// `f(misreport, P_{-i}) P_i f(P)` with `P` the truthful profile.
    Manipulation {
        agent: Agent,
        profile: Vec<Preference>,
        misreport: Preference,
        truthful_outcome: Alternative,
        manipulated_outcome: Alternative,
    },
    /// Every agent strictly prefers `better` to `outcome` at `profile`.
    Inefficiency {
        profile: Vec<Preference>,
        outcome: Alternative,
        better: Alternative,
    },
    /// Swapping two agents' tops changes the outcome.
    Asymmetry {
        tops: TopVector,
        swapped: TopVector,
        outcome: Alternative,
        swapped_outcome: Alternative,
    },
    /// For each agent, a top vector where the outcome is not that agent's top.
    NotDictatorial { overruled: Vec<TopVector> },
    ObviousManipulation(ManipulationWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl AxiomVerdict {
    fn ok() -> Self {
        AxiomVerdict {
            holds: true,
            counterexample: None,
        }
    }

    fn violated(counterexample: Counterexample) -> Self {
        AxiomVerdict {
            holds: false,
            counterexample: Some(counterexample),
        }
    }
}

fn tops_of(profile: &[Preference]) -> TopVector {
    TopVector(profile.iter().map(Preference::top).collect())
}

/// Odometer over `base^len` index tuples, lexicographic.
fn index_tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = base.pow(len as u32);
    (0..count).map(move |idx| TopVector::from_index(idx, len, base).0)
}

/// Strategy-proofness on the domain of preferences accepted by `in_domain`;
/// both true preferences and misreports range over that domain.
pub fn is_strategy_proof<F>(rule: &RuleDescriptor, in_domain: F, budget: &Budget) -> Result<AxiomVerdict>
where
    F: Fn(&Preference) -> bool,
{
    let n = rule.n();
    let domain: Vec<Preference> = enumerate_preferences(rule.space(), budget)?
        .into_iter()
        .filter(|p| in_domain(p))
        .collect();
    budget.check_profiles("domain profiles (|D|^n)", checked_pow(domain.len(), n))?;
    for idx in index_tuples(domain.len(), n) {
        let profile: Vec<Preference> = idx.iter().map(|&j| domain[j].clone()).collect();
        let tops = tops_of(&profile);
        let truthful_outcome = rule.eval(&tops)?;
        for agent in 0..n {
            let truth = &profile[agent];
            for misreport in &domain {
                let manipulated_outcome = rule.eval(&tops.with(agent, misreport.top()))?;
                if truth.prefers(manipulated_outcome, truthful_outcome) {
                    return Ok(AxiomVerdict::violated(Counterexample::Manipulation {
                        agent,
                        profile,
                        misreport: misreport.clone(),
                        truthful_outcome,
                        manipulated_outcome,
                    }));
                }
            }
        }
    }
    Ok(AxiomVerdict::ok())
}

/// Efficiency over full preference profiles: no alternative is unanimously
/// strictly preferred to the outcome.
pub fn is_efficient(rule: &RuleDescriptor, budget: &Budget) -> Result<AxiomVerdict> {
    let (n, m) = (rule.n(), rule.m());
    let prefs = enumerate_preferences(rule.space(), budget)?;
    budget.check_profiles("preference profiles ((m!)^n)", checked_pow(prefs.len(), n))?;
    for idx in index_tuples(prefs.len(), n) {
        let profile: Vec<&Preference> = idx.iter().map(|&j| &prefs[j]).collect();
        let outcome = rule.eval(&TopVector(profile.iter().map(|p| p.top()).collect()))?;
        if let Some(better) = (0..m).find(|&x| profile.iter().all(|p| p.prefers(x, outcome))) {
            return Ok(AxiomVerdict::violated(Counterexample::Inefficiency {
                profile: profile.into_iter().cloned().collect(),
                outcome,
                better,
            }));
        }
    }
    Ok(AxiomVerdict::ok())
}

/// Anonymity, tested on top vectors: invariance under every transposition of
/// two agents' tops (transpositions generate all permutations).
pub fn is_anonymous(rule: &RuleDescriptor, budget: &Budget) -> Result<AxiomVerdict> {
    let n = rule.n();
    for tops in enumerate_top_vectors(rule.space(), n, budget)? {
        let outcome = rule.eval(&tops)?;
        for i in 0..n {
            for j in i + 1..n {
                let mut swapped = tops.clone();
                swapped.0.swap(i, j);
                let swapped_outcome = rule.eval(&swapped)?;
                if swapped_outcome != outcome {
                    return Ok(AxiomVerdict::violated(Counterexample::Asymmetry {
                        tops,
                        swapped,
                        outcome,
                        swapped_outcome,
                    }));
                }
            }
        }
    }
    Ok(AxiomVerdict::ok())
}

/// The agent whose top is always selected, if any.
pub fn find_dictator(rule: &RuleDescriptor, budget: &Budget) -> Result<Option<Agent>> {
    Ok(overruling_vectors(rule, budget)?
        .iter()
        .position(Option::is_none))
}

fn overruling_vectors(rule: &RuleDescriptor, budget: &Budget) -> Result<Vec<Option<TopVector>>> {
    let n = rule.n();
    let mut first: Vec<Option<TopVector>> = vec![None; n];
    for tops in enumerate_top_vectors(rule.space(), n, budget)? {
        let outcome = rule.eval(&tops)?;
        for (slot, &top) in first.iter_mut().zip(tops.tops()) {
            if slot.is_none() && top != outcome {
                *slot = Some(tops.clone());
            }
        }
        if first.iter().all(Option::is_some) {
            break;
        }
    }
    Ok(first)
}

pub fn is_dictatorial(rule: &RuleDescriptor, budget: &Budget) -> Result<AxiomVerdict> {
    let overruled = overruling_vectors(rule, budget)?;
    if overruled.iter().any(Option::is_none) {
        return Ok(AxiomVerdict::ok());
    }
    Ok(AxiomVerdict::violated(Counterexample::NotDictatorial {
        overruled: overruled.into_iter().flatten().collect(),
    }))
}

/// Non-obvious manipulability straight from the definition.
pub fn is_nom_brute(rule: &RuleDescriptor, budget: &Budget) -> Result<AxiomVerdict> {
    Ok(match find_obvious_manipulations(rule, budget)?.into_iter().next() {
        None => AxiomVerdict::ok(),
        Some(w) => AxiomVerdict::violated(Counterexample::ObviousManipulation(w)),
    })
}

impl Counterexample {
    /// Re-checks the counterexample against the axiom's definition.
    pub fn reverify(&self, rule: &RuleDescriptor, budget: &Budget) -> Result<bool> {
        Ok(match self {
            Counterexample::Manipulation {
                agent,
                profile,
                misreport,
                truthful_outcome,
                manipulated_outcome,
            } => {
                let tops = tops_of(profile);
                let honest = rule.eval(&tops)?;
                let lied = rule.eval(&tops.with(*agent, misreport.top()))?;
                honest == *truthful_outcome
                    && lied == *manipulated_outcome
                    && profile[*agent].prefers(lied, honest)
            }
            Counterexample::Inefficiency {
                profile,
                outcome,
                better,
            } => {
                rule.eval(&tops_of(profile))? == *outcome
                    && profile.iter().all(|p| p.prefers(*better, *outcome))
            }
            Counterexample::Asymmetry {
                tops,
                swapped,
                outcome,
                swapped_outcome,
            } => {
                let mut a = tops.0.clone();
                let mut b = swapped.0.clone();
                a.sort_unstable();
                b.sort_unstable();
                a == b
                    && rule.eval(tops)? == *outcome
                    && rule.eval(swapped)? == *swapped_outcome
                    && outcome != swapped_outcome
            }
            Counterexample::NotDictatorial { overruled } => {
                overruled.len() == rule.n()
                    && overruled
                        .iter()
                        .enumerate()
                        .map(|(agent, tops)| Ok(rule.eval(tops)? != tops.tops()[agent]))
                        .collect::<Result<Vec<bool>>>()?
                        .into_iter()
                        .all(|b| b)
            }
            Counterexample::ObviousManipulation(w) => reverify_obvious(rule, w, budget)?,
        })
    }
}

fn reverify_obvious(rule: &RuleDescriptor, w: &ManipulationWitness, budget: &Budget) -> Result<bool> {
    let truth = &w.truth;
    // Profitable somewhere, checked from full option-set recomputation.
    let honest = option_set_of(rule, w.agent, truth, budget)?.members;
    let lied = option_set_of(rule, w.agent, &w.misreport, budget)?.members;
    let profitable = crate::analysis::find_profitable_manipulations(rule, w.agent, truth, budget)?
        .iter()
        .any(|p| p.misreport.top() == w.misreport.top());
    let condition = match w.kind {
        ManipulationKind::WorstCase => {
            truth.prefers(truth.worst_in(lied.iter().copied())?, truth.worst_in(honest.iter().copied())?)
        }
        ManipulationKind::BestCase => {
            truth.prefers(truth.best_in(lied.iter().copied())?, truth.best_in(honest.iter().copied())?)
        }
        ManipulationKind::Plain => true,
    };
    Ok(profitable && condition)
}
