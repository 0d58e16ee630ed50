//! Brute-force generation of even continued-fraction tuples with a given
//! crossing number.
//!
//! This is the independent oracle the closed formulas are checked against,
//! so it works straight from the defining predicate `sum |e_i| - l = c`
//! and never consults the formulas module. Tuples are produced as a stream
//! in a deterministic order: by length ascending, then lexicographically by
//! entries. Memory stays proportional to the tuple length.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cf::EvenCF;

/// Default ceiling on the crossing number accepted by [`census`]. At `c`
/// the full stream has about `2^(c-2)` tuples, so 24 keeps a census run in
/// the hundreds of milliseconds.
pub const DEFAULT_ENUM_CAP: u32 = 24;

/// Environment variable that overrides [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_ENV: &str = "BRIDGE_CENSUS_ENUM_CAP";

/// The effective crossing-number cap for exhaustive enumeration.
pub fn enum_cap() -> u32 {
    std::env::var(ENUM_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    /// The configured tuple-count cap was hit with tuples still remaining.
    #[error("tuple count cap of {cap} reached before the stream was exhausted")]
    LimitExceeded { cap: u64 },
    #[error(
        "crossing number {crossing} exceeds the enumeration cap {cap} \
         (set {ENUM_CAP_ENV} to raise it)"
    )]
    CrossingCapExceeded { crossing: u32, cap: u32 },
}

/// What to enumerate: a crossing number, plus optional restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumFilter {
    /// Target crossing number, at least 3.
    pub crossing: u32,
    /// Keep only tuples of this braid index.
    pub braid: Option<u32>,
    /// Keep only palindromes and anti-palindromes.
    pub palindromic_only: bool,
    /// Keep only the lexicographically least member of each orbit.
    pub dedupe: bool,
    /// Safety cap on the number of tuples yielded; exceeding it turns the
    /// stream into an error.
    pub cap: Option<u64>,
}

impl EnumFilter {
    pub fn new(crossing: u32) -> Self {
        EnumFilter {
            crossing,
            braid: None,
            palindromic_only: false,
            dedupe: false,
            cap: None,
        }
    }

    fn validate(&self) -> Result<(), EnumError> {
        if self.crossing < 3 {
            return Err(EnumError::InvalidFilter(format!(
                "crossing number must be at least 3 (got {})",
                self.crossing
            )));
        }
        if let Some(b) = self.braid {
            if b < 2 {
                return Err(EnumError::InvalidFilter(format!(
                    "braid index must be at least 2 (got {b})"
                )));
            }
        }
        Ok(())
    }
}

/// Streams every tuple matching the filter, each exactly once, ordered by
/// (length, entries).
pub fn enumerate_tuples(filter: &EnumFilter) -> Result<TupleStream, EnumError> {
    filter.validate()?;
    Ok(TupleStream::new(filter.clone()))
}

/// Depth-first search over tuple entries for one fixed length.
///
/// The running value `sum |e_i| - l` of the prefix is tracked; every slot
/// still to fill can contribute any integer >= 1 (magnitude 2 minus an
/// optional sign change), which gives the pruning bound, and the last slot
/// must land on the target exactly.
struct Dfs {
    target: i64,
    len: usize,
    entries: Vec<i64>,
    value: i64,
    sign_changes: u64,
    exhausted: bool,
}

impl Dfs {
    fn new(target: i64, len: usize) -> Self {
        Dfs {
            target,
            len,
            entries: Vec::with_capacity(len),
            value: 0,
            sign_changes: 0,
            exhausted: false,
        }
    }

    fn delta(&self, entry: i64) -> i64 {
        match self.entries.last() {
            Some(&prev) => ((prev < 0) != (entry < 0)) as i64,
            None => 0,
        }
    }

    /// Even magnitude bounds (lo, hi) for the next entry if it takes the
    /// given sign, or None if that side is empty.
    fn side_bounds(&self, negative: bool) -> Option<(i64, i64)> {
        let slots_left = (self.len - self.entries.len()) as i64;
        let budget = self.target - self.value;
        let delta = match self.entries.last() {
            Some(&prev) => ((prev < 0) != negative) as i64,
            None => 0,
        };
        if slots_left == 1 {
            let magnitude = budget + delta;
            (magnitude >= 2 && magnitude % 2 == 0).then_some((magnitude, magnitude))
        } else {
            let hi = budget - (slots_left - 1) + delta;
            (hi >= 2).then_some((2, hi & !1))
        }
    }

    fn first_candidate(&self) -> Option<i64> {
        if let Some((_, hi)) = self.side_bounds(true) {
            return Some(-hi);
        }
        self.side_bounds(false).map(|(lo, _)| lo)
    }

    fn next_candidate(&self, prev: i64) -> Option<i64> {
        if prev < 0 {
            let (lo, _) = self.side_bounds(true).expect("candidate came from this side");
            let next = prev + 2;
            if next <= -lo {
                return Some(next);
            }
            self.side_bounds(false).map(|(pos_lo, _)| pos_lo)
        } else {
            let (_, hi) = self.side_bounds(false).expect("candidate came from this side");
            let next = prev + 2;
            (next <= hi).then_some(next)
        }
    }

    fn push(&mut self, entry: i64) {
        let delta = self.delta(entry);
        self.value += entry.abs() - delta;
        self.sign_changes += delta as u64;
        self.entries.push(entry);
    }

    fn pop(&mut self) -> i64 {
        let entry = self.entries.pop().expect("pop on empty prefix");
        let delta = match self.entries.last() {
            Some(&prev) => ((prev < 0) != (entry < 0)) as i64,
            None => 0,
        };
        self.value -= entry.abs() - delta;
        self.sign_changes -= delta as u64;
        entry
    }

    /// Backtrack from the current prefix and move to the next tuple in
    /// lexicographic order. Returns the sign-change count alongside.
    fn next_tuple(&mut self) -> Option<(&[i64], u64)> {
        if self.exhausted {
            return None;
        }
        // After a yielded tuple the prefix is full; treat it as a dead end.
        let mut descending = self.entries.len() < self.len;
        loop {
            if descending {
                if self.entries.len() == self.len {
                    return Some((&self.entries, self.sign_changes));
                }
                match self.first_candidate() {
                    Some(entry) => {
                        self.push(entry);
                        continue;
                    }
                    None => descending = false,
                }
            } else {
                if self.entries.is_empty() {
                    self.exhausted = true;
                    return None;
                }
                let prev = self.pop();
                if let Some(entry) = self.next_candidate(prev) {
                    self.push(entry);
                    descending = true;
                }
            }
        }
    }
}

/// Iterator over matching tuples; see [`enumerate_tuples`].
pub struct TupleStream {
    filter: EnumFilter,
    dfs: Dfs,
    max_len: usize,
    yielded: u64,
    done: bool,
}

impl TupleStream {
    fn new(filter: EnumFilter) -> Self {
        let c = filter.crossing as i64;
        let max_len = ((c - 1) & !1) as usize;
        TupleStream {
            filter,
            dfs: Dfs::new(c, 2),
            max_len,
            yielded: 0,
            done: false,
        }
    }

}

fn accept_tuple(filter: &EnumFilter, entries: &[i64], sign_changes: u64) -> bool {
    if let Some(b) = filter.braid {
        // b = (c - l)/2 + 1 once the target value is reached
        let braid = (filter.crossing as i64 - sign_changes as i64) / 2 + 1;
        if braid != b as i64 {
            return false;
        }
    }
    if filter.palindromic_only {
        let palindrome = entries.iter().eq(entries.iter().rev());
        let anti = entries.iter().zip(entries.iter().rev()).all(|(a, b)| *a == -*b);
        if !palindrome && !anti {
            return false;
        }
    }
    true
}

impl Iterator for TupleStream {
    type Item = Result<EvenCF, EnumError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            let filter = &self.filter;
            let found = loop {
                match self.dfs.next_tuple() {
                    Some((entries, sign_changes)) => {
                        if accept_tuple(filter, entries, sign_changes) {
                            break Some(entries.to_vec());
                        }
                    }
                    None => break None,
                }
            };
            match found {
                Some(entries) => {
                    let tuple = EvenCF::from_vec_unchecked(entries);
                    if self.filter.dedupe && !tuple.is_orbit_canonical() {
                        continue;
                    }
                    if let Some(cap) = self.filter.cap {
                        if self.yielded >= cap {
                            self.done = true;
                            return Some(Err(EnumError::LimitExceeded { cap }));
                        }
                    }
                    self.yielded += 1;
                    return Some(Ok(tuple));
                }
                None => {
                    let next_len = self.dfs.len + 2;
                    if next_len > self.max_len {
                        self.done = true;
                        return None;
                    }
                    self.dfs = Dfs::new(self.filter.crossing as i64, next_len);
                }
            }
        }
    }
}

/// Per-braid-index tallies of a census.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraidCounts {
    /// Tuples with this braid index.
    pub e_cb: BigUint,
    /// Palindromic or anti-palindromic tuples with this braid index.
    pub ep_cb: BigUint,
    /// Orbit-canonical tuples with this braid index, i.e. knot classes.
    pub k_cb: BigUint,
}

/// Exhaustive tallies for one crossing number. The knot count `k` comes
/// from directly counting orbit-canonical tuples, not from dividing, so it
/// stays an independent oracle for the quarter-sum identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusCounts {
    pub c: u32,
    pub e: BigUint,
    pub e_p: BigUint,
    pub k: BigUint,
    pub per_braid: BTreeMap<u32, BraidCounts>,
}

impl CensusCounts {
    pub fn empty(c: u32) -> Self {
        CensusCounts {
            c,
            e: BigUint::zero(),
            e_p: BigUint::zero(),
            k: BigUint::zero(),
            per_braid: BTreeMap::new(),
        }
    }

    /// Tallies one enumerated tuple.
    pub fn record(&mut self, tuple: &EvenCF) {
        let braid = tuple.invariants().braid_index as u32;
        let slot = self.per_braid.entry(braid).or_default();
        self.e += 1u32;
        slot.e_cb += 1u32;
        if tuple.is_palindrome() || tuple.is_anti_palindrome() {
            self.e_p += 1u32;
            slot.ep_cb += 1u32;
        }
        if tuple.is_orbit_canonical() {
            self.k += 1u32;
            slot.k_cb += 1u32;
        }
    }

    /// Merges tallies from a disjoint partition of the same stream.
    pub fn merge(&mut self, other: CensusCounts) {
        assert_eq!(self.c, other.c, "merging censuses of different crossing numbers");
        self.e += other.e;
        self.e_p += other.e_p;
        self.k += other.k;
        for (b, counts) in other.per_braid {
            let slot = self.per_braid.entry(b).or_default();
            slot.e_cb += counts.e_cb;
            slot.ep_cb += counts.ep_cb;
            slot.k_cb += counts.k_cb;
        }
    }

    /// Checks `4 k_cb = e_cb + ep_cb` for every braid index, the structural
    /// consequence of orbits having size two or four.
    pub fn orbit_divisibility_ok(&self) -> bool {
        self.per_braid
            .values()
            .all(|s| &s.k_cb * 4u32 == &s.e_cb + &s.ep_cb)
    }

    /// Renders the census as a single JSON object with decimal-string
    /// counts (exact at any magnitude).
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            b: u32,
            e_cb: String,
            ep_cb: String,
            k_cb: String,
            #[serde(skip)]
            _marker: std::marker::PhantomData<&'a ()>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            c: u32,
            e: String,
            e_p: String,
            k_total: String,
            per_braid: Vec<Row<'a>>,
        }
        let doc = Doc {
            c: self.c,
            e: self.e.to_string(),
            e_p: self.e_p.to_string(),
            k_total: self.k.to_string(),
            per_braid: self
                .per_braid
                .iter()
                .map(|(&b, s)| Row {
                    b,
                    e_cb: s.e_cb.to_string(),
                    ep_cb: s.ep_cb.to_string(),
                    k_cb: s.k_cb.to_string(),
                    _marker: std::marker::PhantomData,
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("census serialization cannot fail")
    }
}

/// Exhaustively counts tuples, palindromic tuples and knot classes for one
/// crossing number, per braid index.
pub fn census(c: u32) -> Result<CensusCounts, EnumError> {
    let cap = enum_cap();
    if c > cap {
        return Err(EnumError::CrossingCapExceeded { crossing: c, cap });
    }
    let stream = enumerate_tuples(&EnumFilter::new(c))?;
    let mut counts = CensusCounts::empty(c);
    for tuple in stream {
        let tuple = tuple.expect("census stream has no tuple cap");
        counts.record(&tuple);
    }
    assert!(
        counts.orbit_divisibility_ok(),
        "orbit divisibility failed at c={c}: enumeration is broken"
    );
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::parse_cf;

    fn collect(filter: &EnumFilter) -> Vec<EvenCF> {
        enumerate_tuples(filter)
            .unwrap()
            .map(|t| t.unwrap())
            .collect()
    }

    fn cf(text: &str) -> EvenCF {
        parse_cf(text).unwrap()
    }

    #[test]
    fn crossing_three_stream() {
        let tuples = collect(&EnumFilter::new(3));
        assert_eq!(tuples, vec![cf("-2,2"), cf("2,-2")]);
    }

    #[test]
    fn crossing_six_braid_four() {
        let mut filter = EnumFilter::new(6);
        filter.braid = Some(4);
        let tuples = collect(&filter);
        assert_eq!(
            tuples,
            vec![cf("-4,-2"), cf("-2,-4"), cf("2,4"), cf("4,2")]
        );
    }

    #[test]
    fn crossing_seven_has_22_tuples() {
        assert_eq!(collect(&EnumFilter::new(7)).len(), 22);
    }

    #[test]
    fn all_example_sets_reproduced() {
        // the complete nonempty E(c,b) lists for c <= 6
        let cases: Vec<(u32, u32, Vec<&str>)> = vec![
            (3, 2, vec!["2,-2", "-2,2"]),
            (4, 3, vec!["2,2", "-2,-2"]),
            (5, 2, vec!["2,-2,2,-2", "-2,2,-2,2"]),
            (5, 3, vec!["2,-4", "-2,4", "4,-2", "-4,2"]),
            (
                6,
                3,
                vec!["2,2,-2,2", "-2,-2,2,-2", "2,-2,2,2", "-2,2,-2,-2", "2,-2,-2,2", "-2,2,2,-2"],
            ),
            (6, 4, vec!["2,4", "4,2", "-2,-4", "-4,-2"]),
        ];
        for (c, b, expected) in cases {
            let mut filter = EnumFilter::new(c);
            filter.braid = Some(b);
            let mut got = collect(&filter);
            let mut expected: Vec<EvenCF> = expected.into_iter().map(cf).collect();
            got.sort();
            expected.sort();
            assert_eq!(got, expected, "E({c},{b})");
        }
    }

    #[test]
    fn stream_is_deterministic() {
        let a = collect(&EnumFilter::new(9));
        let b = collect(&EnumFilter::new(9));
        assert_eq!(a, b);
    }

    #[test]
    fn stream_order_is_by_length_then_lex() {
        let tuples = collect(&EnumFilter::new(8));
        for pair in tuples.windows(2) {
            let key = |t: &EvenCF| (t.len(), t.entries().to_vec());
            assert!(key(&pair[0]) < key(&pair[1]));
        }
    }

    #[test]
    fn generated_tuples_satisfy_the_definition() {
        for c in 3..=10u32 {
            for tuple in collect(&EnumFilter::new(c)) {
                let inv = tuple.invariants();
                assert_eq!(inv.crossing_number, c as u128);
                assert!((tuple.len() as u32) < c, "length bound violated");
            }
        }
    }

    #[test]
    fn palindromic_filter_matches_examples() {
        // E_p(6) is exactly the two palindromes of E(6,3)
        let mut filter = EnumFilter::new(6);
        filter.palindromic_only = true;
        assert_eq!(collect(&filter), vec![cf("-2,2,2,-2"), cf("2,-2,-2,2")]);

        // E_p(5) is the anti-palindromic pair of E(5,2)
        let mut filter = EnumFilter::new(5);
        filter.palindromic_only = true;
        assert_eq!(collect(&filter), vec![cf("-2,2,-2,2"), cf("2,-2,2,-2")]);
    }

    #[test]
    fn census_at_seven() {
        let counts = census(7).unwrap();
        assert_eq!(counts.e, 22u32.into());
        assert_eq!(counts.e_p, 6u32.into());
        assert_eq!(counts.k, 7u32.into());
        let k: Vec<(u32, u32)> = counts
            .per_braid
            .iter()
            .map(|(&b, s)| (b, u32::try_from(&s.k_cb).unwrap()))
            .collect();
        assert_eq!(k, vec![(2, 1), (3, 2), (4, 4)]);
    }

    #[test]
    fn census_at_three_and_twelve() {
        let counts = census(3).unwrap();
        assert_eq!(counts.e, 2u32.into());
        assert_eq!(counts.e_p, 2u32.into());
        assert_eq!(counts.k, 1u32.into());

        let counts = census(12).unwrap();
        assert_eq!(counts.e, 682u32.into());
        assert_eq!(counts.e_p, 22u32.into());
    }

    #[test]
    fn census_rejects_crossing_beyond_cap() {
        let err = census(DEFAULT_ENUM_CAP + 1).unwrap_err();
        assert!(matches!(err, EnumError::CrossingCapExceeded { .. }));
    }

    #[test]
    fn dedupe_yields_quarter_of_tuples() {
        for c in 3..=12u32 {
            let counts = census(c).unwrap();
            let mut filter = EnumFilter::new(c);
            filter.dedupe = true;
            let canonical = collect(&filter);
            assert_eq!(
                BigUint::from(canonical.len()) * 4u32,
                &counts.e + &counts.e_p,
                "c={c}"
            );
        }
    }

    #[test]
    fn tuple_cap_errors_when_exceeded() {
        let mut filter = EnumFilter::new(7);
        filter.cap = Some(10);
        let results: Vec<_> = enumerate_tuples(&filter).unwrap().collect();
        assert_eq!(results.len(), 11);
        assert!(results[..10].iter().all(|r| r.is_ok()));
        assert_eq!(
            results[10],
            Err(EnumError::LimitExceeded { cap: 10 })
        );

        // a cap equal to the stream length is not an error
        let mut filter = EnumFilter::new(3);
        filter.cap = Some(2);
        let results: Vec<_> = enumerate_tuples(&filter).unwrap().collect();
        assert_eq!(results.len(), 2);
        assert!(results.iter().all(|r| r.is_ok()));
    }

    #[test]
    fn invalid_filters_are_rejected() {
        assert!(enumerate_tuples(&EnumFilter::new(2)).is_err());
        let mut filter = EnumFilter::new(5);
        filter.braid = Some(1);
        assert!(enumerate_tuples(&filter).is_err());
    }

    #[test]
    fn merged_partition_equals_full_census() {
        let full = census(9).unwrap();
        let mut even_slots = CensusCounts::empty(9);
        let mut odd_slots = CensusCounts::empty(9);
        for (i, tuple) in enumerate_tuples(&EnumFilter::new(9)).unwrap().enumerate() {
            let tuple = tuple.unwrap();
            if i % 2 == 0 {
                even_slots.record(&tuple);
            } else {
                odd_slots.record(&tuple);
            }
        }
        even_slots.merge(odd_slots);
        assert_eq!(even_slots, full);
    }

    #[test]
    fn census_json_shape() {
        let json = census(3).unwrap().to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["c"], 3);
        assert_eq!(value["e"], "2");
        assert_eq!(value["e_p"], "2");
        assert_eq!(value["k_total"], "1");
        assert_eq!(value["per_braid"][0]["b"], 2);
        assert_eq!(value["per_braid"][0]["k_cb"], "1");
    }
}
