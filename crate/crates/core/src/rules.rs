//! Tops-only rule families: median voter schemes, generalized median voter
//! schemes, voting by committees, voting by quota, the status quo rule,
//! dictatorships and arbitrary outcome tables.
//!
//! Every rule is evaluated on a [`TopVector`] only, so tops-onlyness holds by
//! construction.

use std::fmt;

use itertools::Itertools;

use crate::budget::Budget;
use crate::domain::{enumerate_top_vectors, Agent, Alternative, AlternativeSpace, TopVector};
use crate::error::{NomError, Result};

/// Largest agent count a coalition bitmask can hold.
pub const MAX_AGENTS: usize = 31;

/// A set of agents as a bitmask, bit `i` standing for agent `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn singleton(agent: Agent) -> Self {
        Coalition(1 << agent)
    }

    pub fn all(n: usize) -> Self {
        Coalition(((1u64 << n) - 1) as u32)
    }

    pub fn from_agents<I: IntoIterator<Item = Agent>>(agents: I) -> Self {
        Coalition(agents.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn contains(self, agent: Agent) -> bool {
        self.0 >> agent & 1 == 1
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(self, agent: Agent) -> Self {
        Coalition(self.0 | 1 << agent)
    }

    pub fn remove(self, agent: Agent) -> Self {
        Coalition(self.0 & !(1 << agent))
    }

    pub fn intersect(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn agents(self) -> impl Iterator<Item = Agent> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Fixed-width bitstring, agent 0 leftmost: `{0, 2}` with n = 3 is `"101"`.
    pub fn to_bitstring(self, n: usize) -> String {
        (0..n).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        if s.len() > MAX_AGENTS {
            return None;
        }
        s.chars().enumerate().try_fold(Coalition::EMPTY, |acc, (i, c)| match c {
            '1' => Some(acc.insert(i)),
            '0' => Some(acc),
            _ => None,
        })
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.agents().join(","))
    }
}

/// Median voter scheme: the median of the `n` tops and `n - 1` fixed ballots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianScheme {
    pub alpha: Vec<Alternative>,
}

impl MedianScheme {
    pub fn new(alpha: Vec<Alternative>) -> Self {
        MedianScheme { alpha }
    }

    pub fn lowest(&self) -> Alternative {
        self.alpha[0]
    }

    pub fn highest(&self) -> Alternative {
        self.alpha[self.alpha.len() - 1]
    }
}

/// Monotonic family of fixed ballots `p_S`, indexed by coalition bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallotFamily {
    pub ballots: Vec<Alternative>,
}

impl BallotFamily {
    pub fn new(ballots: Vec<Alternative>) -> Self {
        BallotFamily { ballots }
    }

    pub fn ballot(&self, coalition: Coalition) -> Alternative {
        self.ballots[coalition.index()]
    }

    /// `p_{{i}}`
    pub fn own(&self, agent: Agent) -> Alternative {
        self.ballot(Coalition::singleton(agent))
    }

    /// `p_{N \ {i}}`
    pub fn others(&self, n: usize, agent: Agent) -> Alternative {
        self.ballot(Coalition::all(n).remove(agent))
    }
}

/// One committee, stored by its minimal winning coalitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Committee {
    minimal: Vec<Coalition>,
}

impl Committee {
    /// Keeps the coalitions as given (sorted, deduplicated); `validate` flags
    /// non-antichains.
    pub fn new(mut minimal: Vec<Coalition>) -> Self {
        minimal.sort();
        minimal.dedup();
        Committee { minimal }
    }

    /// All coalitions of size at least `quota`.
    pub fn quota(n: usize, quota: usize) -> Self {
        let minimal = (0..n)
            .combinations(quota)
            .map(Coalition::from_agents)
            .collect();
        Committee::new(minimal)
    }

    pub fn minimal(&self) -> &[Coalition] {
        &self.minimal
    }

    pub fn wins(&self, coalition: Coalition) -> bool {
        self.minimal.iter().any(|m| m.is_subset_of(coalition))
    }

    /// Intersection of all winning coalitions (equal to that of the minimal ones).
    pub fn intersection(&self, n: usize) -> Coalition {
        self.minimal
            .iter()
            .fold(Coalition::all(n), |acc, &m| acc.intersect(m))
    }

    pub fn singleton_winner(&self) -> Option<Agent> {
        self.minimal
            .iter()
            .find(|m| m.len() == 1)
            .and_then(|m| m.agents().next())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommitteeFamily {
    pub committees: Vec<Committee>,
}

impl CommitteeFamily {
    pub fn new(committees: Vec<Committee>) -> Self {
        CommitteeFamily { committees }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotaFamily {
    pub quotas: Vec<usize>,
}

impl QuotaFamily {
    pub fn new(quotas: Vec<usize>) -> Self {
        QuotaFamily { quotas }
    }
}

/// Outcome for every top vector, in lexicographic top-vector order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopsTable {
    pub outcomes: Vec<Alternative>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Median(MedianScheme),
    GeneralizedMedian(BallotFamily),
    Committees(CommitteeFamily),
    Quota(QuotaFamily),
    StatusQuo(Alternative),
    Dictatorship(Agent),
    Table(TopsTable),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Median(_) => "median",
            Family::GeneralizedMedian(_) => "gmv",
            Family::Committees(_) => "committees",
            Family::Quota(_) => "quota",
            Family::StatusQuo(_) => "status_quo",
            Family::Dictatorship(_) => "dictatorship",
            Family::Table(_) => "table",
        }
    }
}

/// A validation failure, located by a field path such as `alpha[1]` or
/// `ballots.101`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl Violation {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Checks every structural and family invariant. Empty means valid.
pub fn validate(n: usize, space: &AlternativeSpace, family: &Family) -> Vec<Violation> {
    let mut out = Vec::new();
    if n < 2 {
        out.push(Violation::new("n", format!("need at least 2 agents, got {n}")));
    }
    if n > MAX_AGENTS {
        out.push(Violation::new("n", format!("at most {MAX_AGENTS} agents supported")));
    }
    for problem in space.problems() {
        out.push(Violation::new("space", problem));
    }
    if !out.is_empty() {
        return out;
    }
    let m = space.size();
    match family {
        Family::Median(scheme) => {
            require_linear(space, &mut out);
            let alpha = &scheme.alpha;
            if alpha.len() != n - 1 {
                out.push(Violation::new(
                    "alpha",
                    format!("need n-1 = {} fixed ballots, got {}", n - 1, alpha.len()),
                ));
            }
            for (j, &a) in alpha.iter().enumerate() {
                if a >= m {
                    out.push(Violation::new(format!("alpha[{j}]"), format!("{a} not in 0..{m}")));
                }
            }
            for (j, w) in alpha.windows(2).enumerate() {
                if w[0] > w[1] {
                    out.push(Violation::new(
                        format!("alpha[{}]", j + 1),
                        format!("fixed ballots must be nondecreasing ({} > {})", w[0], w[1]),
                    ));
                }
            }
        }
        Family::GeneralizedMedian(p) => {
            require_linear(space, &mut out);
            validate_ballots(n, m, p, &mut out);
        }
        Family::Committees(family) => {
            require_objects(space, family.committees.len(), "committees", &mut out);
            for (k, committee) in family.committees.iter().enumerate() {
                validate_committee(n, k, committee, &mut out);
            }
        }
        Family::Quota(q) => {
            require_objects(space, q.quotas.len(), "quotas", &mut out);
            for (k, &quota) in q.quotas.iter().enumerate() {
                if quota < 1 || quota > n {
                    out.push(Violation::new(
                        format!("quotas[{k}]"),
                        format!("quota must lie in 1..={n}, got {quota}"),
                    ));
                }
            }
        }
        Family::StatusQuo(a) => {
            if *a >= m {
                out.push(Violation::new("status_quo", format!("{a} not in 0..{m}")));
            }
        }
        Family::Dictatorship(i) => {
            if *i >= n {
                out.push(Violation::new("dictator", format!("agent {i} not in 0..{n}")));
            }
        }
        Family::Table(table) => match crate::budget::checked_pow(m, n) {
            Some(len) if len == table.outcomes.len() as u64 => {
                for (idx, &x) in table.outcomes.iter().enumerate() {
                    if x >= m {
                        out.push(Violation::new(
                            format!("table[{idx}]"),
                            format!("{x} not in 0..{m}"),
                        ));
                    }
                }
            }
            expected => out.push(Violation::new(
                "table",
                format!(
                    "need m^n = {} outcomes, got {}",
                    expected.map_or("overflow".into(), |e| e.to_string()),
                    table.outcomes.len()
                ),
            )),
        },
    }
    out
}

fn require_linear(space: &AlternativeSpace, out: &mut Vec<Violation>) {
    if !space.is_linear() {
        out.push(Violation::new("space", "family needs a linear alternative space"));
    }
}

fn require_objects(space: &AlternativeSpace, got: usize, field: &str, out: &mut Vec<Violation>) {
    match space.objects() {
        None => out.push(Violation::new("space", "family needs a subset alternative space")),
        Some(k) if k != got => out.push(Violation::new(
            field,
            format!("need one entry per object ({k}), got {got}"),
        )),
        Some(_) => {}
    }
}

fn validate_ballots(n: usize, m: usize, p: &BallotFamily, out: &mut Vec<Violation>) {
    let path = |s: usize| format!("ballots.{}", Coalition(s as u32).to_bitstring(n));
    if p.ballots.len() != 1 << n {
        out.push(Violation::new(
            "ballots",
            format!("need one ballot per coalition (2^n = {}), got {}", 1 << n, p.ballots.len()),
        ));
        return;
    }
    let full = Coalition::all(n).index();
    for (s, &x) in p.ballots.iter().enumerate() {
        if x >= m {
            out.push(Violation::new(path(s), format!("{x} not in 0..{m}")));
        }
    }
    if p.ballots[full] != 0 {
        out.push(Violation::new(path(full), "p_N must equal a (0)"));
    }
    if p.ballots[0] != m - 1 {
        out.push(Violation::new(path(0), format!("p_∅ must equal b ({})", m - 1)));
    }
    // Covering pairs S ⊂ S ∪ {i} suffice for monotonicity.
    for s in 0..p.ballots.len() {
        for i in (0..n).filter(|&i| s >> i & 1 == 0) {
            let bigger = s | 1 << i;
            if p.ballots[bigger] > p.ballots[s] {
                out.push(Violation::new(
                    path(bigger),
                    format!(
                        "monotonicity: p_{} = {} exceeds p_{} = {}",
                        Coalition(bigger as u32).to_bitstring(n),
                        p.ballots[bigger],
                        Coalition(s as u32).to_bitstring(n),
                        p.ballots[s]
                    ),
                ));
            }
        }
    }
}

fn validate_committee(n: usize, k: usize, committee: &Committee, out: &mut Vec<Violation>) {
    let minimal = committee.minimal();
    if minimal.is_empty() {
        out.push(Violation::new(format!("committees[{k}]"), "committee must be nonempty"));
    }
    for (j, c) in minimal.iter().enumerate() {
        if c.is_empty() {
            out.push(Violation::new(
                format!("committees[{k}][{j}]"),
                "winning coalitions must be nonempty",
            ));
        }
        if c.0 >> n != 0 {
            out.push(Violation::new(
                format!("committees[{k}][{j}]"),
                format!("coalition mentions agents outside 0..{n}"),
            ));
        }
    }
    for (a, b) in minimal.iter().tuple_combinations() {
        if a.is_subset_of(*b) || b.is_subset_of(*a) {
            out.push(Violation::new(
                format!("committees[{k}]"),
                format!("minimal coalitions {a:?} and {b:?} are comparable (not an antichain)"),
            ));
        }
    }
}

/// A validated tops-only rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleDescriptor {
    n: usize,
    space: AlternativeSpace,
    family: Family,
}

impl RuleDescriptor {
    pub fn new(n: usize, space: AlternativeSpace, family: Family) -> Result<Self> {
        let violations = validate(n, &space, &family);
        if !violations.is_empty() {
            return Err(NomError::InvalidRule(violations));
        }
        Ok(RuleDescriptor { n, space, family })
    }

    pub fn median(n: usize, m: usize, alpha: Vec<Alternative>) -> Result<Self> {
        Self::new(n, AlternativeSpace::linear(m), Family::Median(MedianScheme::new(alpha)))
    }

    pub fn generalized_median(n: usize, m: usize, ballots: Vec<Alternative>) -> Result<Self> {
        Self::new(
            n,
            AlternativeSpace::linear(m),
            Family::GeneralizedMedian(BallotFamily::new(ballots)),
        )
    }

    pub fn committees(n: usize, committees: Vec<Committee>) -> Result<Self> {
        let objects = committees.len();
        Self::new(
            n,
            AlternativeSpace::subsets(objects),
            Family::Committees(CommitteeFamily::new(committees)),
        )
    }

    pub fn quota(n: usize, quotas: Vec<usize>) -> Result<Self> {
        let objects = quotas.len();
        Self::new(n, AlternativeSpace::subsets(objects), Family::Quota(QuotaFamily::new(quotas)))
    }

    pub fn status_quo(n: usize, space: AlternativeSpace, a: Alternative) -> Result<Self> {
        Self::new(n, space, Family::StatusQuo(a))
    }

    pub fn dictatorship(n: usize, space: AlternativeSpace, dictator: Agent) -> Result<Self> {
        Self::new(n, space, Family::Dictatorship(dictator))
    }

    pub fn table(n: usize, space: AlternativeSpace, outcomes: Vec<Alternative>) -> Result<Self> {
        Self::new(n, space, Family::Table(TopsTable { outcomes }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.space.size()
    }

    pub fn space(&self) -> &AlternativeSpace {
        &self.space
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Selected alternative at a top vector.
    pub fn eval(&self, tops: &TopVector) -> Result<Alternative> {
        let m = self.m();
        if tops.n() != self.n {
            return Err(NomError::DimensionMismatch(format!(
                "rule has {} agents, top vector has {}",
                self.n,
                tops.n()
            )));
        }
        if let Some(&bad) = tops.tops().iter().find(|&&t| t >= m) {
            return Err(NomError::DimensionMismatch(format!(
                "top {bad} outside the {m} alternatives"
            )));
        }
        Ok(self.eval_unchecked(tops.tops()))
    }

    /// `eval` without the dimension checks; `tops` must have length `n` and
    /// entries below `m`.
    pub(crate) fn eval_unchecked(&self, tops: &[Alternative]) -> Alternative {
        match &self.family {
            Family::Median(scheme) => eval_median(&scheme.alpha, tops),
            Family::GeneralizedMedian(p) => eval_gmv(p, tops),
            Family::Committees(w) => eval_committees(&w.committees, tops),
            Family::Quota(q) => eval_quota(&q.quotas, tops),
            Family::StatusQuo(a) => eval_status_quo(*a, tops),
            Family::Dictatorship(i) => tops[*i],
            Family::Table(t) => t.outcomes[tops.iter().fold(0, |acc, &x| acc * self.m() + x)],
        }
    }

    /// Materialises the rule as an outcome per top vector.
    pub fn outcome_table(&self, budget: &Budget) -> Result<Vec<Alternative>> {
        Ok(enumerate_top_vectors(&self.space, self.n, budget)?
            .map(|tv| self.eval_unchecked(tv.tops()))
            .collect())
    }
}

fn eval_median(alpha: &[Alternative], tops: &[Alternative]) -> Alternative {
    let mut all: Vec<Alternative> = tops.iter().chain(alpha).copied().collect();
    all.sort_unstable();
    all[tops.len() - 1]
}

/// `min_S max({t_j : j ∈ S} ∪ {p_S})`; for `S = ∅` the inner max is `p_∅`.
fn eval_gmv(p: &BallotFamily, tops: &[Alternative]) -> Alternative {
    (0u32..1 << tops.len())
        .map(|s| {
            let coalition = Coalition(s);
            coalition
                .agents()
                .map(|j| tops[j])
                .fold(p.ballot(coalition), Alternative::max)
        })
        .min()
        .expect("at least the empty coalition")
}

fn supporters(tops: &[Alternative], object: usize) -> Coalition {
    Coalition::from_agents((0..tops.len()).filter(|&i| tops[i] >> object & 1 == 1))
}

fn eval_committees(committees: &[Committee], tops: &[Alternative]) -> Alternative {
    committees
        .iter()
        .enumerate()
        .filter(|(k, w)| w.wins(supporters(tops, *k)))
        .fold(0, |acc, (k, _)| acc | 1 << k)
}

fn eval_quota(quotas: &[usize], tops: &[Alternative]) -> Alternative {
    quotas
        .iter()
        .enumerate()
        .filter(|(k, &q)| supporters(tops, *k).len() >= q)
        .fold(0, |acc, (k, _)| acc | 1 << k)
}

fn eval_status_quo(a: Alternative, tops: &[Alternative]) -> Alternative {
    if tops.iter().all(|&t| t == tops[0]) {
        tops[0]
    } else {
        a
    }
}

/// True iff every alternative is selected at some top vector.
pub fn is_onto_tops(rule: &RuleDescriptor, budget: &Budget) -> Result<bool> {
    let mut hit = vec![false; rule.m()];
    for x in rule.outcome_table(budget)? {
        hit[x] = true;
    }
    Ok(hit.into_iter().all(|h| h))
}

/// Committee family whose committee `k` wins exactly on coalitions of size `>= q_k`.
pub fn quota_to_committees(q: &QuotaFamily, n: usize) -> CommitteeFamily {
    CommitteeFamily::new(q.quotas.iter().map(|&quota| Committee::quota(n, quota)).collect())
}

/// Anonymous ballot family reproducing a median voter scheme:
/// `p_S = alpha_{n-|S|}` (1-indexed) for `0 < |S| < n`, `p_N = 0`, `p_∅ = m - 1`.
pub fn gmv_from_median(scheme: &MedianScheme, n: usize, m: usize) -> BallotFamily {
    let ballots = (0u32..1 << n)
        .map(|s| match Coalition(s).len() {
            0 => m - 1,
            size if size == n => 0,
            size => scheme.alpha[n - size - 1],
        })
        .collect();
    BallotFamily::new(ballots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(groups: &[&[usize]]) -> Committee {
        Committee::new(groups.iter().map(|g| Coalition::from_agents(g.iter().copied())).collect())
    }

    // Median by counting, independent of sorting: the unique y with at least
    // K/2 entries on each side.
    fn median_by_definition(values: &[usize]) -> usize {
        let k = values.len() as f64;
        *values
            .iter()
            .find(|&&y| {
                values.iter().filter(|&&v| v <= y).count() as f64 >= k / 2.0
                    && values.iter().filter(|&&v| v >= y).count() as f64 >= k / 2.0
            })
            .unwrap()
    }

    #[test]
    fn median_example() {
        let rule = RuleDescriptor::median(3, 3, vec![0, 2]).unwrap();
        assert_eq!(rule.eval(&TopVector(vec![2, 0, 1])), Ok(1));
        assert_eq!(median_by_definition(&[2, 0, 1, 0, 2]), 1);
    }

    #[test]
    fn median_matches_counting_definition() {
        let b = Budget::default();
        for (n, m) in [(2, 3), (3, 3), (3, 4), (4, 3)] {
            for alpha in crate::families::median_schemes(n, m) {
                let rule = RuleDescriptor::median(n, m, alpha.alpha.clone()).unwrap();
                for tv in enumerate_top_vectors(rule.space(), n, &b).unwrap() {
                    let all: Vec<_> = tv.tops().iter().chain(&alpha.alpha).copied().collect();
                    assert_eq!(rule.eval(&tv).unwrap(), median_by_definition(&all));
                }
            }
        }
    }

    #[test]
    fn quota_example() {
        // x = object 0, y = object 1.
        let rule = RuleDescriptor::quota(3, vec![2, 2]).unwrap();
        let tops = TopVector(vec![0b01, 0b11, 0b10]);
        assert_eq!(rule.eval(&tops), Ok(0b11));
        assert_eq!(rule.eval(&TopVector(vec![0b01, 0b00, 0b10])), Ok(0b00));
    }

    #[test]
    fn status_quo_example() {
        let rule = RuleDescriptor::status_quo(2, AlternativeSpace::linear(3), 0).unwrap();
        assert_eq!(rule.eval(&TopVector(vec![1, 1])), Ok(1));
        assert_eq!(rule.eval(&TopVector(vec![1, 2])), Ok(0));
    }

    #[test]
    fn dimension_mismatch() {
        let rule = RuleDescriptor::median(3, 3, vec![0, 2]).unwrap();
        assert!(matches!(
            rule.eval(&TopVector(vec![0, 1])),
            Err(NomError::DimensionMismatch(_))
        ));
        assert!(matches!(
            rule.eval(&TopVector(vec![0, 1, 3])),
            Err(NomError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn validate_ballot_family() {
        let space = AlternativeSpace::linear(3);
        // p_N = 1 instead of a = 0.
        let bad = Family::GeneralizedMedian(BallotFamily::new(vec![2, 1, 1, 1]));
        let v = validate(2, &space, &bad);
        assert!(v.iter().any(|v| v.path == "ballots.11" && v.message.contains("p_N must equal a")));
        let nonmono = Family::GeneralizedMedian(BallotFamily::new(vec![1, 2, 0, 0]));
        let v = validate(2, &space, &nonmono);
        assert!(v.iter().any(|v| v.message.contains("p_∅ must equal b")));
        assert!(v.iter().any(|v| v.message.contains("monotonicity")));
        let good = Family::GeneralizedMedian(BallotFamily::new(vec![2, 1, 1, 0]));
        assert!(validate(2, &space, &good).is_empty());
    }

    #[test]
    fn validate_committees() {
        let space = AlternativeSpace::subsets(2);
        let chain = Family::Committees(CommitteeFamily::new(vec![
            sets(&[&[0], &[0, 1]]),
            Committee::quota(3, 2),
        ]));
        let v = validate(3, &space, &chain);
        assert_eq!(v.len(), 1);
        assert!(v[0].message.contains("antichain"));
        let majority = Family::Committees(CommitteeFamily::new(vec![
            sets(&[&[0, 1], &[0, 2], &[1, 2]]),
            Committee::quota(3, 2),
        ]));
        assert!(validate(3, &space, &majority).is_empty());
        let empty = Family::Committees(CommitteeFamily::new(vec![
            Committee::new(vec![]),
            Committee::new(vec![Coalition::EMPTY]),
        ]));
        let v = validate(3, &space, &empty);
        assert!(v.iter().any(|v| v.path == "committees[0]"));
        assert!(v.iter().any(|v| v.path == "committees[1][0]"));
    }

    #[test]
    fn validate_misc() {
        let line = AlternativeSpace::linear(3);
        assert!(!validate(1, &line, &Family::Dictatorship(0)).is_empty());
        assert!(!validate(2, &line, &Family::Dictatorship(2)).is_empty());
        assert!(!validate(2, &line, &Family::StatusQuo(3)).is_empty());
        let unsorted = validate(3, &line, &Family::Median(MedianScheme::new(vec![2, 1])));
        assert_eq!(unsorted[0].path, "alpha[1]");
        let short = Family::Table(TopsTable { outcomes: vec![0; 8] });
        assert!(!validate(2, &line, &short).is_empty());
        assert!(!validate(3, &AlternativeSpace::subsets(2), &Family::Quota(QuotaFamily::new(vec![0, 4]))).is_empty());
        assert!(!validate(3, &AlternativeSpace::linear(4), &Family::Quota(QuotaFamily::new(vec![2, 2]))).is_empty());
        assert!(!validate(2, &AlternativeSpace::linear(1), &Family::Dictatorship(0)).is_empty());
    }

    #[test]
    fn onto() {
        let b = Budget::default();
        for alpha in crate::families::median_schemes(3, 4) {
            let rule = RuleDescriptor::median(3, 4, alpha.alpha).unwrap();
            assert!(is_onto_tops(&rule, &b).unwrap());
        }
        assert!(is_onto_tops(&RuleDescriptor::quota(3, vec![2, 2]).unwrap(), &b).unwrap());
        let constant =
            RuleDescriptor::table(2, AlternativeSpace::linear(2), vec![0; 4]).unwrap();
        assert!(!is_onto_tops(&constant, &b).unwrap());
    }

    #[test]
    fn quota_committees() {
        let q = QuotaFamily::new(vec![2, 3, 1]);
        let w = quota_to_committees(&q, 3);
        assert_eq!(w.committees[0], sets(&[&[0, 1], &[0, 2], &[1, 2]]));
        assert_eq!(w.committees[1], sets(&[&[0, 1, 2]]));
        assert_eq!(quota_to_committees(&QuotaFamily::new(vec![1]), 2).committees[0], sets(&[&[0], &[1]]));
    }

    #[test]
    fn quota_equals_committees_eval() {
        let b = Budget::default();
        for q in crate::families::quota_families(3, 2) {
            let quota = RuleDescriptor::quota(3, q.quotas.clone()).unwrap();
            let comm = RuleDescriptor::committees(3, quota_to_committees(&q, 3).committees).unwrap();
            assert_eq!(quota.outcome_table(&b).unwrap(), comm.outcome_table(&b).unwrap());
        }
    }

    #[test]
    fn gmv_from_median_examples() {
        let p = gmv_from_median(&MedianScheme::new(vec![1]), 2, 3);
        assert_eq!(p.ballots, vec![2, 1, 1, 0]);
        let p = gmv_from_median(&MedianScheme::new(vec![0, 0]), 3, 3);
        assert_eq!(p.ballots[0], 2);
        assert!(p.ballots[1..].iter().all(|&x| x == 0));
    }

    #[test]
    fn gmv_from_median_agrees_with_median() {
        let b = Budget::default();
        for (n, m) in [(2, 3), (3, 3), (2, 4), (3, 4), (4, 3)] {
            for scheme in crate::families::median_schemes(n, m) {
                let p = gmv_from_median(&scheme, n, m);
                let space = AlternativeSpace::linear(m);
                assert!(validate(n, &space, &Family::GeneralizedMedian(p.clone())).is_empty());
                let median = RuleDescriptor::median(n, m, scheme.alpha.clone()).unwrap();
                let gmv = RuleDescriptor::generalized_median(n, m, p.ballots).unwrap();
                assert_eq!(
                    median.outcome_table(&b).unwrap(),
                    gmv.outcome_table(&b).unwrap(),
                    "alpha {:?}",
                    scheme.alpha
                );
            }
        }
    }

    #[test]
    fn dictatorial_gmv_is_dictatorship() {
        // p_{1} = a, p_{N\1} = b.
        let b = Budget::default();
        let gmv = RuleDescriptor::generalized_median(2, 3, vec![2, 0, 2, 0]).unwrap();
        let dict = RuleDescriptor::dictatorship(2, AlternativeSpace::linear(3), 0).unwrap();
        assert_eq!(gmv.outcome_table(&b).unwrap(), dict.outcome_table(&b).unwrap());
    }

    #[test]
    fn bitstrings() {
        let c = Coalition::from_agents([0, 2]);
        assert_eq!(c.to_bitstring(3), "101");
        assert_eq!(Coalition::from_bitstring("101"), Some(c));
        assert_eq!(Coalition::from_bitstring("1x1"), None);
    }
}
