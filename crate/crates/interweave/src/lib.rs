//! Interweaving structures as bit-packed binary matrices.
//!
//! An interweaving of order `n` is an `n x n` binary matrix telling
//! which of two thread systems lies on top at each crossing. Repeating
//! the matrix tiles the plane, so shifting its rows or columns
//! cyclically describes the same cloth; this crate works with matrices
//! up to that equivalence. It can
//!
//! * canonicalize a matrix to the lexicographically smallest member of
//!   its shift orbit ([`canonical`]),
//! * decide whether a matrix describes a workable fabric and whether its
//!   class is fixed by mirroring or quarter-turns ([`classify`]),
//! * enumerate every fabric class of a given order exactly once
//!   ([`enumerate_classes`], [`count_classes`]),
//! * audit the enumeration against two independent reference
//!   computations ([`oracle`]).
//!
//! ```
//! use interweave::{count_classes, EnumerationOptions};
//!
//! let report = count_classes(3, &EnumerationOptions::default()).unwrap();
//! assert_eq!(report.classes, 14);
//! assert_eq!(report.self_mirrored, 2);
//! assert_eq!(report.rotation_stable, 2);
//! ```

#![forbid(unsafe_code)]

pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod orbit;

pub use classify::{
    classify, is_fabric, is_permutation, is_rotation_stable, is_self_mirrored, ClassFlags,
};
pub use enumerate::{
    count_classes, enumerate_classes, generate_candidates, Candidates, ClassRecord,
    EnumerationOptions, EnumerationReport, Progress,
};
pub use format::{
    parse_grid, parse_matrix, parse_tuple, render_ascii, to_grid, to_pbm, to_tuple, ParseError,
};
pub use matrix::{BitMatrix, MatrixError, MAX_ORDER};
pub use oracle::{brute_force_partition, burnside_class_count, PartitionResult};
pub use orbit::{
    canonical, equivalent, find_shift, is_canonical, orbit, orbit_summary, OrbitSummary,
    ShiftPair,
};
