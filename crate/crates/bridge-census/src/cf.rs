//! Even continued-fraction tuples and their knot invariants.
//!
//! A 2-bridge knot is encoded here as an even-length tuple of nonzero even
//! integers `(2a_1, ..., 2a_{2m})`. From such a tuple the crossing number and
//! braid index are read off exactly:
//!
//! ```text
//! c = sum |2a_i| - l        b = sum |a_i| - l + 1
//! ```
//!
//! where `l` counts the sign changes between adjacent entries. A knot and its
//! mirror together own either two or four such tuples, depending on whether
//! the tuple is a (anti-)palindrome; [`EvenCF::orbit`] materializes that set.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Rejected tuple contents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("tuple is empty")]
    Empty,
    #[error("entry must be nonzero even (got 0 at position {0})")]
    ZeroEntry(usize),
    #[error("entry must be nonzero even (got {value} at position {index})")]
    OddEntry { index: usize, value: i64 },
    #[error("entry magnitude exceeds the 64-bit range at position {0}")]
    MagnitudeTooLarge(usize),
    #[error("tuple length must be even (got {0} entries)")]
    OddLength(usize),
}

/// Rejected tuple text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed token {token:?}")]
    Malformed { token: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// An even continued-fraction representation: an even-length tuple of
/// nonzero even 64-bit integers.
///
/// Ordering is entry-wise integer comparison, which is what the orbit
/// code uses to pick a canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenCF {
    entries: Vec<i64>,
}

impl EvenCF {
    /// Validates and wraps a tuple of full entries (the `2a_i` values).
    pub fn new(entries: Vec<i64>) -> Result<Self, ValidationError> {
        if entries.is_empty() {
            return Err(ValidationError::Empty);
        }
        for (index, &value) in entries.iter().enumerate() {
            if value == 0 {
                return Err(ValidationError::ZeroEntry(index));
            }
            if value % 2 != 0 {
                return Err(ValidationError::OddEntry { index, value });
            }
            // i64::MIN is even and nonzero but has no negation, which the
            // orbit maps need
            if value == i64::MIN {
                return Err(ValidationError::MagnitudeTooLarge(index));
            }
        }
        if !entries.len().is_multiple_of(2) {
            return Err(ValidationError::OddLength(entries.len()));
        }
        Ok(EvenCF { entries })
    }

    /// Construction path for the generator, which only ever produces valid
    /// tuples. Validity is still checked in debug builds.
    pub(crate) fn from_vec_unchecked(entries: Vec<i64>) -> Self {
        debug_assert!(EvenCF::new(entries.clone()).is_ok());
        EvenCF { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty() // always false: length >= 2 by construction
    }

    /// Number of adjacent pairs with opposite signs.
    pub fn sign_changes(&self) -> u64 {
        self.entries
            .windows(2)
            .filter(|w| (w[0] < 0) != (w[1] < 0))
            .count() as u64
    }

    /// Exact crossing number, braid index and the quantities they are
    /// built from.
    pub fn invariants(&self) -> KnotInvariants {
        let sign_changes = self.sign_changes();
        let half_sum: u128 = self
            .entries
            .iter()
            .map(|&e| (e.unsigned_abs() / 2) as u128)
            .sum();
        KnotInvariants {
            sign_changes,
            half_sum,
            crossing_number: 2 * half_sum - sign_changes as u128,
            braid_index: half_sum - sign_changes as u128 + 1,
        }
    }

    fn reversed(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        EvenCF { entries }
    }

    fn negated(&self) -> Self {
        EvenCF {
            entries: self.entries.iter().map(|&e| -e).collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.entries
            .iter()
            .zip(self.entries.iter().rev())
            .all(|(a, b)| a == b)
    }

    pub fn is_anti_palindrome(&self) -> bool {
        self.entries
            .iter()
            .zip(self.entries.iter().rev())
            .all(|(a, b)| *a == -*b)
    }

    /// The full set of tuples representing the same knot or its mirror:
    /// the tuple itself, its reverse, and the negations of both.
    pub fn orbit(&self) -> OrbitClass {
        let reversed = self.reversed();
        let mut members = vec![
            self.clone(),
            reversed.negated(),
            self.negated(),
            reversed,
        ];
        members.sort();
        members.dedup();
        let symmetry_kind = if self.is_palindrome() {
            SymmetryKind::Palindrome
        } else if self.is_anti_palindrome() {
            SymmetryKind::AntiPalindrome
        } else {
            SymmetryKind::Generic
        };
        debug_assert_eq!(
            members.len(),
            if symmetry_kind == SymmetryKind::Generic { 4 } else { 2 }
        );
        let canonical = members[0].clone();
        OrbitClass {
            members,
            canonical,
            symmetry_kind,
        }
    }

    /// Whether this tuple is the canonical (lexicographically least)
    /// member of its orbit.
    pub fn is_orbit_canonical(&self) -> bool {
        let reversed = self.reversed();
        *self <= reversed.negated() && *self <= self.negated() && *self <= reversed
    }

    /// Evaluates the continued fraction `e_1 + 1/(e_2 + 1/(... + 1/e_n))`
    /// bottom-up with exact integer arithmetic and returns the reduced
    /// Schubert fraction.
    pub fn to_fraction(&self) -> Result<SchubertFraction, DegenerateFraction> {
        let last = *self.entries.last().expect("tuple is nonempty");
        let mut numer = BigInt::from(last);
        let mut denom = BigInt::one();
        for (position, &entry) in self.entries.iter().enumerate().rev().skip(1) {
            // entry + denom/numer = (entry*numer + denom) / numer
            if numer.is_zero() {
                return Err(DegenerateFraction { position });
            }
            let next = BigInt::from(entry) * &numer + &denom;
            denom = std::mem::replace(&mut numer, next);
        }
        if denom.is_zero() {
            return Err(DegenerateFraction { position: 0 });
        }
        Ok(SchubertFraction::new(numer, denom))
    }
}

impl fmt::Display for EvenCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for entry in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{entry}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for EvenCF {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cf(s)
    }
}

/// Parses a comma-separated tuple, with optional whitespace and optional
/// surrounding square brackets: `"2,-4,2,2"` or `"[2, -4, 2, 2]"`.
pub fn parse_cf(text: &str) -> Result<EvenCF, ParseError> {
    let mut body = text.trim();
    if let Some(inner) = body.strip_prefix('[') {
        body = inner
            .strip_suffix(']')
            .ok_or_else(|| ParseError::Malformed {
                token: text.trim().to_string(),
            })?
            .trim();
    } else if body.ends_with(']') {
        return Err(ParseError::Malformed {
            token: text.trim().to_string(),
        });
    }
    if body.is_empty() {
        return Err(ValidationError::Empty.into());
    }
    let mut entries = Vec::new();
    for token in body.split(',') {
        let token = token.trim();
        let value: i64 = token.parse().map_err(|_| ParseError::Malformed {
            token: token.to_string(),
        })?;
        entries.push(value);
    }
    Ok(EvenCF::new(entries)?)
}

/// Sign-change count, half sum `S = sum |a_i|`, and the crossing number and
/// braid index derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KnotInvariants {
    pub sign_changes: u64,
    pub half_sum: u128,
    pub crossing_number: u128,
    pub braid_index: u128,
}

/// Symmetry classification of a tuple under reversal and negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryKind {
    Palindrome,
    AntiPalindrome,
    Generic,
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryKind::Palindrome => write!(f, "palindrome"),
            SymmetryKind::AntiPalindrome => write!(f, "anti-palindrome"),
            SymmetryKind::Generic => write!(f, "generic"),
        }
    }
}

/// The 2- or 4-element symmetry orbit of a tuple, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    pub members: Vec<EvenCF>,
    pub canonical: EvenCF,
    pub symmetry_kind: SymmetryKind,
}

/// A reduced rational `p/q` with `q > 0`, obtained by evaluating the
/// continued fraction. `|p|` is an orbit invariant; the signs of `p` and
/// `q` depend on which orbit member was evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertFraction {
    pub p: BigInt,
    pub q: BigInt,
}

impl SchubertFraction {
    fn new(mut p: BigInt, mut q: BigInt) -> Self {
        let g = p.gcd(&q);
        if !g.is_one() {
            p /= &g;
            q /= &g;
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        SchubertFraction { p, q }
    }

    pub fn p_abs(&self) -> BigInt {
        self.p.abs()
    }
}

impl fmt::Display for SchubertFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// An intermediate denominator of the continued fraction vanished.
/// Unreachable for valid tuples (every tail has absolute value above one),
/// so this surfacing at all means the input broke an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("degenerate continued fraction: zero denominator at position {position}")]
pub struct DegenerateFraction {
    pub position: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(entries: &[i64]) -> EvenCF {
        EvenCF::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn parse_accepts_plain_and_bracketed() {
        assert_eq!(parse_cf("2,-4,2,2").unwrap(), cf(&[2, -4, 2, 2]));
        assert_eq!(parse_cf("2,-2").unwrap(), cf(&[2, -2]));
        assert_eq!(parse_cf(" [ 2, -4, 2, 2 ] ").unwrap(), cf(&[2, -4, 2, 2]));
        assert_eq!(parse_cf("[2,-2]").unwrap(), cf(&[2, -2]));
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(matches!(
            parse_cf("2,x,2,2"),
            Err(ParseError::Malformed { .. })
        ));
        assert!(matches!(parse_cf("2,,2,2"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_cf("[2,-2"), Err(ParseError::Malformed { .. })));
        assert!(matches!(parse_cf("2,-2]"), Err(ParseError::Malformed { .. })));
        // beyond 64-bit magnitude
        assert!(matches!(
            parse_cf("2,92233720368547758080"),
            Err(ParseError::Malformed { .. })
        ));
    }

    #[test]
    fn parse_rejects_invalid_tuples() {
        assert!(matches!(
            parse_cf("2,3"),
            Err(ParseError::Validation(ValidationError::OddEntry { .. }))
        ));
        assert!(matches!(
            parse_cf("2,0,2,2"),
            Err(ParseError::Validation(ValidationError::ZeroEntry(1)))
        ));
        assert!(matches!(
            parse_cf("2,-4,2"),
            Err(ParseError::Validation(ValidationError::OddLength(3)))
        ));
        assert!(matches!(
            parse_cf(""),
            Err(ParseError::Validation(ValidationError::Empty))
        ));
        assert!(matches!(
            parse_cf("[]"),
            Err(ParseError::Validation(ValidationError::Empty))
        ));
        // i64::MIN parses as an integer but cannot be negated by the
        // orbit maps
        assert!(matches!(
            parse_cf("-9223372036854775808,2"),
            Err(ParseError::Validation(ValidationError::MagnitudeTooLarge(0)))
        ));
        assert_eq!(
            parse_cf("-9223372036854775806,2").unwrap().entries(),
            [i64::MIN + 2, 2]
        );
    }

    #[test]
    fn render_round_trips() {
        for entries in [vec![2, -4, 2, 2], vec![2, -2], vec![-6, 8]] {
            let t = cf(&entries);
            assert_eq!(parse_cf(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn sign_change_counts() {
        assert_eq!(cf(&[2, -4, 2, 2]).sign_changes(), 2);
        assert_eq!(cf(&[2, 2]).sign_changes(), 0);
        assert_eq!(cf(&[2, -2, 2, -2]).sign_changes(), 3);
    }

    #[test]
    fn invariants_match_worked_examples() {
        let i = cf(&[2, -4, 2, 2]).invariants();
        assert_eq!(i.sign_changes, 2);
        assert_eq!(i.half_sum, 5);
        assert_eq!(i.crossing_number, 8);
        assert_eq!(i.braid_index, 4);

        let i = cf(&[2, 2]).invariants();
        assert_eq!((i.crossing_number, i.braid_index), (4, 3));

        let i = cf(&[-2, 2, -2, 2]).invariants();
        assert_eq!((i.crossing_number, i.braid_index), (5, 2));
    }

    #[test]
    fn crossing_minus_braid_is_half_sum_minus_one() {
        for t in [cf(&[2, -4, 2, 2]), cf(&[2, 2]), cf(&[-2, 2, -2, 2]), cf(&[4, 6, -2, 8])] {
            let i = t.invariants();
            assert_eq!(i.crossing_number - i.braid_index, i.half_sum - 1);
        }
    }

    #[test]
    fn orbit_of_anti_palindrome() {
        let o = cf(&[2, -2]).orbit();
        assert_eq!(o.symmetry_kind, SymmetryKind::AntiPalindrome);
        assert_eq!(o.members, vec![cf(&[-2, 2]), cf(&[2, -2])]);
        assert_eq!(o.canonical, cf(&[-2, 2]));
    }

    #[test]
    fn orbit_of_palindrome() {
        let o = cf(&[2, 2]).orbit();
        assert_eq!(o.symmetry_kind, SymmetryKind::Palindrome);
        assert_eq!(o.members, vec![cf(&[-2, -2]), cf(&[2, 2])]);
    }

    #[test]
    fn orbit_of_generic_tuple() {
        let o = cf(&[2, -4]).orbit();
        assert_eq!(o.symmetry_kind, SymmetryKind::Generic);
        assert_eq!(
            o.members,
            vec![cf(&[-4, 2]), cf(&[-2, 4]), cf(&[2, -4]), cf(&[4, -2])]
        );
        assert_eq!(o.canonical, cf(&[-4, 2]));
    }

    #[test]
    fn orbit_is_idempotent_and_invariant_preserving() {
        for t in [cf(&[2, -4, 2, 2]), cf(&[2, -2]), cf(&[6, 2, -4, 8])] {
            let o = t.orbit();
            let inv = t.invariants();
            for member in &o.members {
                let o2 = member.orbit();
                assert_eq!(o2.members, o.members);
                assert_eq!(o2.canonical, o.canonical);
                assert_eq!(member.invariants(), inv);
            }
        }
    }

    #[test]
    fn fraction_of_figure_eight() {
        let f = cf(&[2, 2]).to_fraction().unwrap();
        assert_eq!((f.p, f.q), (BigInt::from(5), BigInt::from(2)));
    }

    #[test]
    fn fraction_of_trefoil_has_p_three() {
        let f = cf(&[2, -2]).to_fraction().unwrap();
        assert_eq!(f.p_abs(), BigInt::from(3));
        assert_eq!((f.p, f.q), (BigInt::from(3), BigInt::from(2)));
    }

    #[test]
    fn fraction_of_8_14_has_p_31() {
        let f = cf(&[2, -4, 2, 2]).to_fraction().unwrap();
        assert_eq!(f.p_abs(), BigInt::from(31));
    }

    #[test]
    fn fraction_p_is_orbit_invariant() {
        for t in [cf(&[2, -4, 2, 2]), cf(&[2, 2]), cf(&[-4, 6, 2, -2])] {
            let p = t.to_fraction().unwrap().p_abs();
            for member in t.orbit().members {
                assert_eq!(member.to_fraction().unwrap().p_abs(), p);
            }
        }
    }
}
