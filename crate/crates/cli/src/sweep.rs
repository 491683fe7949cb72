//! Family sweeps: every rule of a family at fixed sizes, one CSV row each.

use clap::ValueEnum;

use nomvote_core::analysis::{find_obvious_manipulations, veto_sets};
use nomvote_core::budget::Budget;
use nomvote_core::characterization::nom_predicate;
use nomvote_core::domain::AlternativeSpace;
use nomvote_core::families;
use nomvote_core::rules::{is_onto_tops, RuleDescriptor};

use crate::config::RuleConfig;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Median,
    Gmv,
    Committees,
    Quota,
    Table,
}

impl SweepFamily {
    fn as_str(self) -> &'static str {
        match self {
            SweepFamily::Median => "median",
            SweepFamily::Gmv => "gmv",
            SweepFamily::Committees => "committees",
            SweepFamily::Quota => "quota",
            SweepFamily::Table => "table",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub family: SweepFamily,
    pub n: usize,
    pub m: Option<usize>,
    pub objects: Option<usize>,
    /// Sample this many onto tables instead of enumerating all of them.
    pub samples: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub index: usize,
    pub parameters: String,
    pub onto: bool,
    pub predicate: Option<bool>,
    pub veto: bool,
    pub brute: bool,
}

impl SweepRow {
    /// The veto test is only claimed for onto rules.
    pub fn agrees(&self) -> bool {
        (!self.onto || self.veto == self.brute) && self.predicate.is_none_or(|p| p == self.brute)
    }
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub plan: SweepPlan,
    pub rows: Vec<SweepRow>,
    pub rejected: Option<usize>,
}

impl SweepTable {
    pub fn discrepancies(&self) -> usize {
        self.rows.iter().filter(|r| !r.agrees()).count()
    }

    pub fn summary(&self) -> String {
        let s = &self.plan;
        let size = match (s.m, s.objects) {
            (Some(m), _) => format!("m={m}"),
            (_, Some(k)) => format!("objects={k}"),
            _ => String::new(),
        };
        let mut line = format!(
            "# family={} n={} {size} rules={} nom={} non_onto={} discrepancies={}",
            s.family.as_str(),
            s.n,
            self.rows.len(),
            self.rows.iter().filter(|r| r.brute).count(),
            self.rows.iter().filter(|r| !r.onto).count(),
            self.discrepancies()
        );
        if let Some(rejected) = self.rejected {
            line.push_str(&format!(" seed={} rejected_non_onto={rejected}", s.seed));
        }
        line
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "family", "parameters", "onto", "predicate", "veto", "brute", "agree"])
            .expect("in-memory write");
        for r in &self.rows {
            let predicate = r.predicate.map_or_else(String::new, |p| p.to_string());
            w.write_record([
                r.index.to_string(),
                self.plan.family.as_str().to_string(),
                r.parameters.clone(),
                r.onto.to_string(),
                predicate,
                r.veto.to_string(),
                r.brute.to_string(),
                r.agrees().to_string(),
            ])
            .expect("in-memory write");
        }
        let mut out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}

fn need(v: Option<usize>, flag: &str, family: SweepFamily) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{flag} is required for family {}", family.as_str())))
}

fn rules(plan: &SweepPlan, budget: &Budget) -> Result<(Vec<RuleDescriptor>, Option<usize>), CliError> {
    let n = plan.n;
    let invalid = |e: nomvote_core::NomError| CliError::Usage(e.to_string());
    let linear = matches!(plan.family, SweepFamily::Median | SweepFamily::Gmv | SweepFamily::Table);
    if linear && plan.objects.is_some() {
        return Err(CliError::Usage(format!("--objects is not used by family {}", plan.family.as_str())));
    }
    if !linear && plan.m.is_some() {
        return Err(CliError::Usage(format!("--m is not used by family {}", plan.family.as_str())));
    }
    if n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let mut rejected = None;
    let rules = match plan.family {
        SweepFamily::Median => {
            let m = need(plan.m, "--m", plan.family)?;
            families::median_schemes(n, m)
                .into_iter()
                .map(|s| RuleDescriptor::median(n, m, s.alpha))
                .collect::<Result<_, _>>()
                .map_err(invalid)?
        }
        SweepFamily::Gmv => {
            let m = need(plan.m, "--m", plan.family)?;
            budget.check_power("ballot families", m, 1 << n)?;
            families::ballot_families(n, m)
                .into_iter()
                .map(|p| RuleDescriptor::generalized_median(n, m, p.ballots))
                .collect::<Result<_, _>>()
                .map_err(invalid)?
        }
        SweepFamily::Committees => {
            let k = need(plan.objects, "--objects", plan.family)?;
            // Antichain counts grow doubly exponentially; refuse past n = 4.
            if n > 4 {
                return Err(nomvote_core::NomError::BudgetExceeded {
                    what: "committee enumeration",
                    required: None,
                    limit: budget.max_profiles,
                }
                .into());
            }
            budget.check_power("committee families", families::committees(n).len(), k)?;
            families::committee_families(n, k)
                .into_iter()
                .map(|w| RuleDescriptor::committees(n, w))
                .collect::<Result<_, _>>()
                .map_err(invalid)?
        }
        SweepFamily::Quota => {
            let k = need(plan.objects, "--objects", plan.family)?;
            budget.check_power("quota families", n, k)?;
            families::quota_families(n, k)
                .into_iter()
                .map(|q| RuleDescriptor::quota(n, q.quotas))
                .collect::<Result<_, _>>()
                .map_err(invalid)?
        }
        SweepFamily::Table => {
            let m = need(plan.m, "--m", plan.family)?;
            let space = AlternativeSpace::linear(m);
            let tables = match plan.samples {
                Some(count) => {
                    let (tables, r) = families::sample_onto_tables(n, m, count, plan.seed);
                    rejected = Some(r);
                    tables
                }
                None => {
                    budget.check_profiles("outcome tables", families::table_count(n, m))?;
                    families::all_tables(n, m).collect()
                }
            };
            tables
                .into_iter()
                .map(|t| RuleDescriptor::table(n, space, t))
                .collect::<Result<_, _>>()
                .map_err(invalid)?
        }
    };
    Ok((rules, rejected))
}

pub fn run(plan: SweepPlan, budget: &Budget) -> Result<SweepTable, CliError> {
    let (rules, rejected) = rules(&plan, budget)?;
    let rows = rules
        .iter()
        .enumerate()
        .map(|(index, rule)| {
            Ok(SweepRow {
                index,
                parameters: RuleConfig::from_rule(rule).parameters_json(),
                onto: is_onto_tops(rule, budget)?,
                predicate: nom_predicate(rule).map(|v| v.nom),
                veto: veto_sets(rule, budget)?.every_veto_strong(),
                brute: find_obvious_manipulations(rule, budget)?.is_empty(),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(SweepTable { plan, rows, rejected })
}
