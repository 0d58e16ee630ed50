//! Exact enumeration and braid-index statistics of 2-bridge knots.
//!
//! 2-bridge knots are represented by even continued fractions: even-length
//! tuples of nonzero even integers. The crate has four layers:
//!
//! - [`cf`]: tuples, their validity, crossing number / braid index, symmetry
//!   orbits and Schubert fractions.
//! - [`enumerate`]: brute-force streaming generation of all tuples with a
//!   given crossing number, the independent oracle everything else is
//!   checked against.
//! - [`formulas`]: exact closed-form and recursive counting and moment
//!   formulas, arbitrary precision throughout, usable to c = 10,000.
//! - [`verify`]: suites that cross-check enumeration against the formulas,
//!   the theorem statements against the closed forms, and the
//!   median-mode conjecture over a c-range.
//!
//! All public types are immutable after construction and every operation is
//! a pure function (the formula memo tables synchronize internally), so the
//! API is safe to use from any number of threads.
//!
//! ```
//! use bridge_census::{parse_cf, summary};
//!
//! let tuple = parse_cf("2,-4,2,2").unwrap();
//! let inv = tuple.invariants();
//! assert_eq!((inv.crossing_number, inv.braid_index), (8, 4));
//! assert_eq!(tuple.orbit().members.len(), 4);
//!
//! let stats = summary(8).unwrap();
//! assert_eq!(stats.knots, 12u32.into());
//! assert_eq!((stats.mode, stats.median.to_string()), (4, "4".into()));
//! ```

pub mod cf;
pub mod enumerate;
pub mod formulas;
pub mod verify;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use cf::{parse_cf, EvenCF, KnotInvariants, OrbitClass, SchubertFraction, SymmetryKind};
pub use enumerate::{census, enumerate_tuples, CensusCounts, EnumFilter};
pub use formulas::{summary, DistributionSummary};
pub use verify::{
    run_oracle_suite, run_theorem_suite, scan_median_conjecture, ConjectureScanResult,
    VerificationReport,
};
