//! Predicates that sort matrices into the classes the enumerator reports.
//!
//! A matrix describes a workable fabric when every row and every column
//! mixes both bit values; a weft thread facing all warp or all weave
//! would fall out of the cloth. The remaining predicates are invariant
//! under shift equivalence, so they are properties of whole classes.

use crate::matrix::{self, BitMatrix};
use crate::orbit::{equivalent, OrbitScratch};

/// Class membership of one matrix. `fabric` is a property of the matrix
/// itself; the other three are shared by its whole shift orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlags {
    pub fabric: bool,
    pub primary: bool,
    pub self_mirrored: bool,
    pub rotation_stable: bool,
}

/// True when no row and no column is constant. Equivalently: no row code
/// is 0 or all-ones, the OR of all rows is all-ones and their AND is 0.
pub fn is_fabric(a: &BitMatrix) -> bool {
    let full = matrix::row_mask(a.order());
    let mut union = 0u64;
    let mut common = full;
    for &row in a.rows() {
        if row == 0 || row == full {
            return false;
        }
        union |= row;
        common &= row;
    }
    union == full && common == 0
}

/// Column test alone; the caller guarantees every row is already mixed.
pub(crate) fn fabric_columns(rows: &[u64], full: u64) -> bool {
    let mut union = 0u64;
    let mut common = full;
    for &row in rows {
        union |= row;
        common &= row;
    }
    union == full && common == 0
}

/// True for permutation matrices: one 1 per row and none missing per
/// column.
pub fn is_permutation(a: &BitMatrix) -> bool {
    permutation_rows(a.rows(), matrix::row_mask(a.order()))
}

pub(crate) fn permutation_rows(rows: &[u64], full: u64) -> bool {
    let mut union = 0u64;
    for &row in rows {
        if row.count_ones() != 1 {
            return false;
        }
        union |= row;
    }
    union == full
}

/// True when the matrix and its anti-diagonal reflection lie in the same
/// shift orbit.
pub fn is_self_mirrored(a: &BitMatrix) -> bool {
    equivalent(a, &a.mirror())
}

/// True when the matrix and its quarter-turn lie in the same shift orbit.
pub fn is_rotation_stable(a: &BitMatrix) -> bool {
    equivalent(a, &a.rotate())
}

/// Evaluates all four predicates at once.
pub fn classify(a: &BitMatrix) -> ClassFlags {
    ClassFlags {
        fabric: is_fabric(a),
        primary: is_permutation(a),
        self_mirrored: is_self_mirrored(a),
        rotation_stable: is_rotation_stable(a),
    }
}

/// Slice-level mirror test for an already canonical matrix: the mirror
/// orbit contains `rows` exactly when its canonical form equals `rows`.
pub(crate) fn self_mirrored_canonical(
    rows: &[u64],
    tmp: &mut [u64],
    scratch: &mut OrbitScratch,
) -> bool {
    matrix::mirror_rows(rows, tmp);
    scratch.canonical_matches(tmp, rows)
}

/// Slice-level rotation test for an already canonical matrix.
pub(crate) fn rotation_stable_canonical(
    rows: &[u64],
    tmp: &mut [u64],
    scratch: &mut OrbitScratch,
) -> bool {
    matrix::rotate_rows(rows, tmp);
    scratch.canonical_matches(tmp, rows)
}
