//! Alternatives, strict preferences, profiles and restricted-domain tests.
//!
//! Linear spaces store their alternatives as `0..m`. Subset spaces index a
//! subset of the objects `0..K` by its characteristic number: object `j`
//! contributes bit `j`, so `0` is the empty set and `2^K - 1` is the full set.

use std::fmt;

use itertools::Itertools;

use crate::budget::Budget;
use crate::error::{NomError, Result};

pub type Alternative = usize;
pub type Agent = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlternativeSpace {
    /// The ordered alternatives `0 < 1 < ... < m-1`.
    Linear { m: usize },
    /// All subsets of `objects` objects.
    Subsets { objects: usize },
}

impl AlternativeSpace {
    pub fn linear(m: usize) -> Self {
        AlternativeSpace::Linear { m }
    }

    pub fn subsets(objects: usize) -> Self {
        AlternativeSpace::Subsets { objects }
    }

    /// Number of alternatives.
    pub fn size(&self) -> usize {
        match *self {
            AlternativeSpace::Linear { m } => m,
            AlternativeSpace::Subsets { objects } => 1usize << objects,
        }
    }

    pub fn alternatives(&self) -> std::ops::Range<Alternative> {
        0..self.size()
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, AlternativeSpace::Linear { .. })
    }

    pub fn objects(&self) -> Option<usize> {
        match *self {
            AlternativeSpace::Subsets { objects } => Some(objects),
            AlternativeSpace::Linear { .. } => None,
        }
    }

    /// Structural problems with the space itself.
    pub fn problems(&self) -> Vec<String> {
        match *self {
            AlternativeSpace::Linear { m } if m < 2 => {
                vec![format!("linear space needs at least 2 alternatives, got {m}")]
            }
            AlternativeSpace::Subsets { objects } if objects < 2 => {
                vec![format!("subset space needs at least 2 objects, got {objects}")]
            }
            AlternativeSpace::Subsets { objects } if objects > 16 => {
                vec![format!("subset space supports at most 16 objects, got {objects}")]
            }
            _ => Vec::new(),
        }
    }

    /// Renders an alternative for humans: plain index on a line, `{0,2}` for subsets.
    pub fn label(&self, x: Alternative) -> String {
        match self {
            AlternativeSpace::Linear { .. } => x.to_string(),
            AlternativeSpace::Subsets { objects } => {
                let members = (0..*objects).filter(|k| x >> k & 1 == 1).join(",");
                format!("{{{members}}}")
            }
        }
    }
}

/// A strict linear order over `0..m`, best first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preference {
    ranking: Vec<Alternative>,
    // position[x] = rank of x, 0 is best
    position: Vec<usize>,
}

impl Preference {
    pub fn new(ranking: Vec<Alternative>) -> Result<Self> {
        let m = ranking.len();
        let mut position = vec![usize::MAX; m];
        for (rank, &x) in ranking.iter().enumerate() {
            if x >= m {
                return Err(NomError::InvalidPreference(format!(
                    "alternative {x} out of range 0..{m}"
                )));
            }
            if position[x] != usize::MAX {
                return Err(NomError::InvalidPreference(format!(
                    "alternative {x} ranked twice"
                )));
            }
            position[x] = rank;
        }
        Ok(Preference { ranking, position })
    }

    /// Top `top`, bottom `bottom`, everything else in ascending order.
    pub fn with_top_and_bottom(top: Alternative, bottom: Alternative, m: usize) -> Result<Self> {
        if top == bottom {
            return Err(NomError::EqualTopBottom(top));
        }
        if top >= m || bottom >= m {
            return Err(NomError::InvalidPreference(format!(
                "top {top} or bottom {bottom} out of range 0..{m}"
            )));
        }
        let mut ranking = Vec::with_capacity(m);
        ranking.push(top);
        ranking.extend((0..m).filter(|&x| x != top && x != bottom));
        ranking.push(bottom);
        Preference::new(ranking)
    }

    /// Canonical representative of all preferences with a given top: the top
    /// first, then the rest in ascending order.
    pub fn canonical_with_top(top: Alternative, m: usize) -> Result<Self> {
        if top >= m {
            return Err(NomError::InvalidPreference(format!(
                "top {top} out of range 0..{m}"
            )));
        }
        let ranking = std::iter::once(top)
            .chain((0..m).filter(|&x| x != top))
            .collect();
        Preference::new(ranking)
    }

    pub fn ranking(&self) -> &[Alternative] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    pub fn top(&self) -> Alternative {
        self.ranking[0]
    }

    pub fn bottom(&self) -> Alternative {
        self.ranking[self.ranking.len() - 1]
    }

    pub fn rank_of(&self, x: Alternative) -> usize {
        self.position[x]
    }

    /// Strict preference: `x` is ranked above `y`.
    pub fn prefers(&self, x: Alternative, y: Alternative) -> bool {
        self.position[x] < self.position[y]
    }

    pub fn best_in<I>(&self, ys: I) -> Result<Alternative>
    where
        I: IntoIterator<Item = Alternative>,
    {
        ys.into_iter()
            .min_by_key(|&y| self.position[y])
            .ok_or(NomError::EmptySet)
    }

    pub fn worst_in<I>(&self, ys: I) -> Result<Alternative>
    where
        I: IntoIterator<Item = Alternative>,
    {
        ys.into_iter()
            .max_by_key(|&y| self.position[y])
            .ok_or(NomError::EmptySet)
    }

    pub fn is_single_peaked(&self, space: &AlternativeSpace) -> Result<bool> {
        if !space.is_linear() {
            return Err(NomError::WrongSpace { expected: "linear" });
        }
        self.check_len(space)?;
        let peak = self.top();
        // Ranks must strictly worsen moving away from the peak on either side.
        let left_ok = (1..=peak).all(|x| self.prefers(x, x - 1));
        let right_ok = (peak + 1..self.len()).all(|x| self.prefers(x - 1, x));
        Ok(left_ok && right_ok)
    }

    pub fn is_separable(&self, space: &AlternativeSpace) -> Result<bool> {
        let objects = space
            .objects()
            .ok_or(NomError::WrongSpace { expected: "subsets" })?;
        self.check_len(space)?;
        for k in 0..objects {
            let bit = 1usize << k;
            let good = self.prefers(bit, 0);
            for set in (0..space.size()).filter(|s| s & bit == 0) {
                if self.prefers(set | bit, set) != good {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_len(&self, space: &AlternativeSpace) -> Result<()> {
        if self.len() != space.size() {
            return Err(NomError::DimensionMismatch(format!(
                "preference over {} alternatives used with a space of {}",
                self.len(),
                space.size()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preference{:?}", self.ranking)
    }
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.ranking.iter().join(","))
    }
}

/// The good objects `{k : {k} P ∅}` of a preference over subsets.
pub fn good_objects(pref: &Preference, objects: usize) -> Alternative {
    (0..objects)
        .filter(|k| pref.prefers(1 << k, 0))
        .fold(0, |acc, k| acc | 1 << k)
}

/// All `m!` strict preferences in lexicographic order of their rankings.
pub fn enumerate_preferences(space: &AlternativeSpace, budget: &Budget) -> Result<Vec<Preference>> {
    let m = space.size();
    budget.check_preferences(m)?;
    (0..m)
        .permutations(m)
        .map(Preference::new)
        .collect()
}

/// A profile of strict preferences, one per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    prefs: Vec<Preference>,
}

impl Profile {
    pub fn new(prefs: Vec<Preference>) -> Result<Self> {
        if prefs.len() < 2 {
            return Err(NomError::DimensionMismatch(format!(
                "a profile needs at least 2 agents, got {}",
                prefs.len()
            )));
        }
        let m = prefs[0].len();
        if prefs.iter().any(|p| p.len() != m) {
            return Err(NomError::DimensionMismatch(
                "preferences in a profile must share one alternative set".into(),
            ));
        }
        Ok(Profile { prefs })
    }

    pub fn prefs(&self) -> &[Preference] {
        &self.prefs
    }

    pub fn n(&self) -> usize {
        self.prefs.len()
    }

    pub fn tops(&self) -> TopVector {
        TopVector(self.prefs.iter().map(Preference::top).collect())
    }
}

/// The agents' top alternatives, agent 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopVector(pub Vec<Alternative>);

impl TopVector {
    pub fn tops(&self) -> &[Alternative] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Position in the lexicographic enumeration (agent 0 most significant).
    pub fn index(&self, m: usize) -> usize {
        self.0.iter().fold(0, |acc, &t| acc * m + t)
    }

    pub fn from_index(mut index: usize, n: usize, m: usize) -> Self {
        let mut tops = vec![0; n];
        for slot in tops.iter_mut().rev() {
            *slot = index % m;
            index /= m;
        }
        TopVector(tops)
    }

    /// Same vector with agent `agent`'s top replaced.
    pub fn with(&self, agent: Agent, top: Alternative) -> Self {
        let mut tops = self.0.clone();
        tops[agent] = top;
        TopVector(tops)
    }
}

impl fmt::Display for TopVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// All `m^n` top vectors in lexicographic order.
pub fn enumerate_top_vectors(
    space: &AlternativeSpace,
    n: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = TopVector>> {
    let m = space.size();
    let count = budget.check_power("top vectors (m^n)", m, n)? as usize;
    Ok((0..count).map(move |idx| TopVector::from_index(idx, n, m)))
}

/// Every way to fill `n - 1` coordinates with alternatives `0..m`, lexicographic.
pub(crate) fn subprofiles(n: usize, m: usize) -> impl Iterator<Item = Vec<Alternative>> {
    let count = m.pow((n - 1) as u32);
    (0..count).map(move |idx| TopVector::from_index(idx, n - 1, m).0)
}

/// Inserts agent `agent`'s top into a subprofile of the others' tops.
pub(crate) fn splice(others: &[Alternative], agent: Agent, top: Alternative) -> TopVector {
    let mut tops = Vec::with_capacity(others.len() + 1);
    tops.extend_from_slice(&others[..agent]);
    tops.push(top);
    tops.extend_from_slice(&others[agent..]);
    TopVector(tops)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pref(r: &[usize]) -> Preference {
        Preference::new(r.to_vec()).unwrap()
    }

    #[test]
    fn preference_counts() {
        let b = Budget::default();
        assert_eq!(enumerate_preferences(&AlternativeSpace::linear(2), &b).unwrap().len(), 2);
        let three = enumerate_preferences(&AlternativeSpace::linear(3), &b).unwrap();
        assert_eq!(three.len(), 6);
        assert_eq!(three[0].ranking(), &[0, 1, 2]);
        assert_eq!(
            enumerate_preferences(&AlternativeSpace::subsets(2), &b).unwrap().len(),
            24
        );
    }

    #[test]
    fn preference_enumeration_respects_budget() {
        let b = Budget {
            max_preferences: 100,
            ..Budget::default()
        };
        let err = enumerate_preferences(&AlternativeSpace::linear(6), &b).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Preference::new(vec![0, 0, 1]).is_err());
        assert!(Preference::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn top_and_bottom_construction() {
        assert_eq!(Preference::with_top_and_bottom(2, 0, 3).unwrap().ranking(), &[2, 1, 0]);
        assert_eq!(Preference::with_top_and_bottom(0, 3, 4).unwrap().ranking(), &[0, 1, 2, 3]);
        assert_eq!(
            Preference::with_top_and_bottom(1, 1, 3),
            Err(NomError::EqualTopBottom(1))
        );
    }

    #[test]
    fn best_and_worst() {
        let p = pref(&[2, 0, 1]);
        assert_eq!(p.best_in([0, 1]), Ok(0));
        assert_eq!(p.worst_in([0, 1]), Ok(1));
        assert_eq!(pref(&[0, 1, 2]).best_in(0..3), Ok(0));
        let q = pref(&[1, 2, 0]);
        assert_eq!(q.best_in([0, 2]), Ok(2));
        assert_eq!(q.worst_in([0, 2]), Ok(0));
        assert_eq!(q.best_in([]), Err(NomError::EmptySet));
        assert_eq!(q.worst_in([]), Err(NomError::EmptySet));
    }

    // Definitional single-peakedness: for all x < y < top or top < y < x, y P x.
    fn single_peaked_by_definition(p: &Preference) -> bool {
        let t = p.top();
        let m = p.len();
        for x in 0..m {
            for y in 0..m {
                let between = (x < y && y < t) || (t < y && y < x);
                if between && !(p.prefers(t, y) && p.prefers(y, x)) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn single_peaked_examples() {
        let line = AlternativeSpace::linear(3);
        assert!(pref(&[1, 0, 2]).is_single_peaked(&line).unwrap());
        assert!(!pref(&[0, 2, 1]).is_single_peaked(&line).unwrap());
        let two = AlternativeSpace::linear(2);
        assert!(pref(&[0, 1]).is_single_peaked(&two).unwrap());
        assert!(pref(&[1, 0]).is_single_peaked(&two).unwrap());
        assert_eq!(
            pref(&[0, 1, 2, 3]).is_single_peaked(&AlternativeSpace::subsets(2)),
            Err(NomError::WrongSpace { expected: "linear" })
        );
    }

    #[test]
    fn single_peaked_matches_definition() {
        let b = Budget::default();
        for m in 2..=6 {
            let space = AlternativeSpace::linear(m);
            let prefs = enumerate_preferences(&space, &b).unwrap();
            let mut count = 0;
            for p in &prefs {
                let fast = p.is_single_peaked(&space).unwrap();
                assert_eq!(fast, single_peaked_by_definition(p), "{p}");
                count += usize::from(fast);
            }
            // Peak plus a left/right interleaving: 2^(m-1).
            assert_eq!(count, 1 << (m - 1));
        }
        let space = AlternativeSpace::linear(3);
        let sp = enumerate_preferences(&space, &b)
            .unwrap()
            .into_iter()
            .filter(single_peaked_by_definition)
            .count();
        assert_eq!(sp, 4);
    }

    #[test]
    fn separable_examples() {
        // x = object 0 (bit 1), y = object 1 (bit 2).
        let space = AlternativeSpace::subsets(2);
        let additive = pref(&[0b11, 0b01, 0b10, 0b00]);
        assert!(additive.is_separable(&space).unwrap());
        let broken = pref(&[0b11, 0b00, 0b01, 0b10]);
        assert!(!broken.is_separable(&space).unwrap());
        assert_eq!(
            additive.is_separable(&AlternativeSpace::linear(4)),
            Err(NomError::WrongSpace { expected: "subsets" })
        );
    }

    #[test]
    fn separable_top_is_good_objects() {
        let b = Budget::default();
        for objects in [2, 3] {
            let space = AlternativeSpace::subsets(objects);
            if objects == 3 {
                // 8! preferences; sample every 97th to keep the test quick.
                let prefs = enumerate_preferences(&space, &b).unwrap();
                for p in prefs.iter().step_by(97) {
                    if p.is_separable(&space).unwrap() {
                        assert_eq!(p.top(), good_objects(p, objects));
                    }
                }
                continue;
            }
            let prefs = enumerate_preferences(&space, &b).unwrap();
            let separable: Vec<_> = prefs
                .iter()
                .filter(|p| p.is_separable(&space).unwrap())
                .collect();
            assert!(!separable.is_empty());
            for p in separable {
                assert_eq!(p.top(), good_objects(p, objects));
            }
        }
    }

    #[test]
    fn top_vector_enumeration() {
        let b = Budget::default();
        let v: Vec<_> = enumerate_top_vectors(&AlternativeSpace::linear(3), 2, &b)
            .unwrap()
            .collect();
        assert_eq!(v.len(), 9);
        assert_eq!(
            enumerate_top_vectors(&AlternativeSpace::linear(4), 3, &b).unwrap().count(),
            64
        );
        let first = enumerate_top_vectors(&AlternativeSpace::linear(2), 2, &b)
            .unwrap()
            .next()
            .unwrap();
        assert_eq!(first, TopVector(vec![0, 0]));
        for (idx, tv) in v.iter().enumerate() {
            assert_eq!(tv.index(3), idx);
        }
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        let tight = Budget {
            max_profiles: 8,
            ..Budget::default()
        };
        assert!(enumerate_top_vectors(&AlternativeSpace::linear(3), 2, &tight).is_err());
    }

    #[test]
    fn splice_inserts_at_agent() {
        assert_eq!(splice(&[5, 6], 0, 1), TopVector(vec![1, 5, 6]));
        assert_eq!(splice(&[5, 6], 1, 1), TopVector(vec![5, 1, 6]));
        assert_eq!(splice(&[5, 6], 2, 1), TopVector(vec![5, 6, 1]));
    }

    #[test]
    fn subset_labels() {
        let s = AlternativeSpace::subsets(2);
        assert_eq!(s.label(0), "{}");
        assert_eq!(s.label(3), "{0,1}");
        assert_eq!(AlternativeSpace::linear(3).label(2), "2");
    }
}
