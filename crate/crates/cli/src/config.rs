//! JSON rule configs. Agent subsets are fixed-width bitstrings with agent 0
//! leftmost, so `"101"` is `{0, 2}` when `n = 3`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use nomvote_core::domain::{Alternative, AlternativeSpace};
use nomvote_core::rules::{
    BallotFamily, Coalition, Committee, CommitteeFamily, Family, MedianScheme, QuotaFamily, RuleDescriptor, TopsTable,
    Violation, MAX_AGENTS,
};
use nomvote_core::NomError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Median,
    Gmv,
    Committees,
    Quota,
    StatusQuo,
    Dictatorship,
    Table,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Median => "median",
            FamilyTag::Gmv => "gmv",
            FamilyTag::Committees => "committees",
            FamilyTag::Quota => "quota",
            FamilyTag::StatusQuo => "status_quo",
            FamilyTag::Dictatorship => "dictatorship",
            FamilyTag::Table => "table",
        }
    }

    fn parameter(self) -> &'static str {
        match self {
            FamilyTag::Median => "alpha",
            FamilyTag::Gmv => "ballots",
            FamilyTag::Committees => "committees",
            FamilyTag::Quota => "quotas",
            FamilyTag::StatusQuo => "status_quo",
            FamilyTag::Dictatorship => "dictator",
            FamilyTag::Table => "table",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleConfig {
    pub family: FamilyTag,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Alternative>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ballots: Option<BTreeMap<String, Alternative>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub committees: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotas: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status_quo: Option<Alternative>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dictator: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Alternative>>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{}", render(.0))]
    Invalid(Vec<Violation>),
}

fn render(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl ConfigError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            ConfigError::Invalid(v) => v,
            ConfigError::Parse(_) => &[],
        }
    }
}

fn violation(path: impl Into<String>, message: impl Into<String>) -> Violation {
    Violation {
        path: path.into(),
        message: message.into(),
    }
}

fn required<T: Clone>(field: &Option<T>, name: &str, family: FamilyTag, errors: &mut Vec<Violation>) -> Option<T> {
    if field.is_none() {
        errors.push(violation(name, format!("required for family {}", family.as_str())));
    }
    field.clone()
}

fn coalition(s: &str, n: usize) -> Option<Coalition> {
    if s.len() != n {
        return None;
    }
    Coalition::from_bitstring(s)
}

impl RuleConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Compact JSON of the family parameter, for sweep tables.
    pub fn parameters_json(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        value
            .get(self.family.parameter())
            .map_or_else(String::new, |v| v.to_string())
    }

    fn space(&self, errors: &mut Vec<Violation>) -> Option<AlternativeSpace> {
        let subsets_only = matches!(self.family, FamilyTag::Committees | FamilyTag::Quota);
        match (self.m, self.objects) {
            (Some(_), Some(_)) => {
                errors.push(violation("objects", "give either m or objects, not both"));
                None
            }
            (Some(_), None) if subsets_only => {
                errors.push(violation(
                    "m",
                    format!("family {} ranges over subsets; use objects", self.family.as_str()),
                ));
                None
            }
            (Some(m), None) => Some(AlternativeSpace::linear(m)),
            (None, Some(k)) => Some(AlternativeSpace::subsets(k)),
            (None, None) => {
                let name = if subsets_only { "objects" } else { "m" };
                errors.push(violation(name, "required"));
                None
            }
        }
    }

    fn unused_fields(&self, errors: &mut Vec<Violation>) {
        let present = [
            ("alpha", self.alpha.is_some()),
            ("ballots", self.ballots.is_some()),
            ("committees", self.committees.is_some()),
            ("quotas", self.quotas.is_some()),
            ("status_quo", self.status_quo.is_some()),
            ("dictator", self.dictator.is_some()),
            ("table", self.table.is_some()),
        ];
        for (name, set) in present {
            if set && name != self.family.parameter() {
                errors.push(violation(name, format!("not used by family {}", self.family.as_str())));
            }
        }
    }

    fn ballots(&self, map: &BTreeMap<String, Alternative>, m: usize, errors: &mut Vec<Violation>) -> Vec<Alternative> {
        let n = self.n;
        let full = (1usize << n) - 1;
        let mut ballots: Vec<Option<Alternative>> = vec![None; 1 << n];
        ballots[0] = Some(m.saturating_sub(1));
        ballots[full] = Some(0);
        for (key, &x) in map {
            match coalition(key, n) {
                Some(c) => ballots[c.index()] = Some(x),
                None => errors.push(violation(
                    format!("ballots.{key}"),
                    format!("expected a bitstring of width {n}"),
                )),
            }
        }
        ballots
            .into_iter()
            .enumerate()
            .map(|(s, b)| {
                b.unwrap_or_else(|| {
                    errors.push(violation(
                        format!("ballots.{}", Coalition(s as u32).to_bitstring(n)),
                        "missing",
                    ));
                    0
                })
            })
            .collect()
    }

    fn committees(&self, lists: &[Vec<String>], errors: &mut Vec<Violation>) -> Vec<Committee> {
        lists
            .iter()
            .enumerate()
            .map(|(k, list)| {
                let minimal = list
                    .iter()
                    .enumerate()
                    .filter_map(|(j, s)| {
                        let c = coalition(s, self.n);
                        if c.is_none() {
                            errors.push(violation(
                                format!("committees[{k}][{j}]"),
                                format!("expected a bitstring of width {}", self.n),
                            ));
                        }
                        c
                    })
                    .collect();
                Committee::new(minimal)
            })
            .collect()
    }

    /// Validates the config and builds the rule. Every error carries a field path.
    pub fn to_rule(&self) -> Result<RuleDescriptor, ConfigError> {
        let mut errors = Vec::new();
        if self.n == 0 || self.n > MAX_AGENTS {
            return Err(ConfigError::Invalid(vec![violation(
                "n",
                format!("need between 1 and {MAX_AGENTS} agents"),
            )]));
        }
        let space = self.space(&mut errors);
        self.unused_fields(&mut errors);
        let family = space.and_then(|space| {
            let m = space.size();
            Some(match self.family {
                FamilyTag::Median => {
                    Family::Median(MedianScheme::new(required(&self.alpha, "alpha", self.family, &mut errors)?))
                }
                FamilyTag::Gmv => {
                    let map = required(&self.ballots, "ballots", self.family, &mut errors)?;
                    Family::GeneralizedMedian(BallotFamily::new(self.ballots(&map, m, &mut errors)))
                }
                FamilyTag::Committees => {
                    let lists = required(&self.committees, "committees", self.family, &mut errors)?;
                    Family::Committees(CommitteeFamily::new(self.committees(&lists, &mut errors)))
                }
                FamilyTag::Quota => Family::Quota(QuotaFamily::new(required(
                    &self.quotas,
                    "quotas",
                    self.family,
                    &mut errors,
                )?)),
                FamilyTag::StatusQuo => Family::StatusQuo(required(&self.status_quo, "status_quo", self.family, &mut errors)?),
                FamilyTag::Dictatorship => Family::Dictatorship(required(&self.dictator, "dictator", self.family, &mut errors)?),
                FamilyTag::Table => Family::Table(TopsTable {
                    outcomes: required(&self.table, "table", self.family, &mut errors)?,
                }),
            })
        });
        if !errors.is_empty() {
            return Err(ConfigError::Invalid(errors));
        }
        let (space, family) = (space.expect("checked"), family.expect("checked"));
        RuleDescriptor::new(self.n, space, family).map_err(|e| match e {
            NomError::InvalidRule(v) => ConfigError::Invalid(
                v.into_iter()
                    .map(|mut v| {
                        if v.path == "space" {
                            v.path = if self.objects.is_some() { "objects" } else { "m" }.into();
                        }
                        v
                    })
                    .collect(),
            ),
            other => ConfigError::Invalid(vec![violation("", other.to_string())]),
        })
    }

    /// The config that describes `rule`.
    pub fn from_rule(rule: &RuleDescriptor) -> Self {
        let n = rule.n();
        let mut config = RuleConfig {
            family: FamilyTag::Table,
            n,
            m: None,
            objects: None,
            alpha: None,
            ballots: None,
            committees: None,
            quotas: None,
            status_quo: None,
            dictator: None,
            table: None,
        };
        match *rule.space() {
            AlternativeSpace::Linear { m } => config.m = Some(m),
            AlternativeSpace::Subsets { objects } => config.objects = Some(objects),
        }
        let bits = |c: &Coalition| c.to_bitstring(n);
        match rule.family() {
            Family::Median(s) => {
                config.family = FamilyTag::Median;
                config.alpha = Some(s.alpha.clone());
            }
            Family::GeneralizedMedian(p) => {
                config.family = FamilyTag::Gmv;
                config.ballots = Some(
                    p.ballots
                        .iter()
                        .enumerate()
                        .map(|(s, &x)| (bits(&Coalition(s as u32)), x))
                        .collect(),
                );
            }
            Family::Committees(w) => {
                config.family = FamilyTag::Committees;
                config.committees = Some(
                    w.committees
                        .iter()
                        .map(|c| c.minimal().iter().map(bits).collect())
                        .collect(),
                );
            }
            Family::Quota(q) => {
                config.family = FamilyTag::Quota;
                config.quotas = Some(q.quotas.clone());
            }
            Family::StatusQuo(a) => {
                config.family = FamilyTag::StatusQuo;
                config.status_quo = Some(*a);
            }
            Family::Dictatorship(d) => {
                config.family = FamilyTag::Dictatorship;
                config.dictator = Some(*d);
            }
            Family::Table(t) => config.table = Some(t.outcomes.clone()),
        }
        config
    }
}
