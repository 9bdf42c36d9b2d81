//! Equivalence of matrices under cyclic row and column shifts.
//!
//! Shifting rows by `k` and columns by `l` tiles the same pattern on a
//! torus, so two matrices are considered equivalent when some pair of
//! shifts carries one onto the other. Each equivalence class is named by
//! its canonical representative: the member whose row tuple is
//! lexicographically smallest. With `n` row shifts times `n` column
//! shifts an orbit never holds more than `n * n` members.

use crate::matrix::{self, BitMatrix};

/// Shift exponents addressing one orbit member: `rows` row shifts
/// followed by `cols` column shifts. Both components are reduced modulo
/// the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftPair {
    pub rows: usize,
    pub cols: usize,
}

/// Canonical representative plus the shape of an orbit. `divisors` holds
/// `(s, t)`: `s` distinct matrices arise from row shifts alone, and the
/// orbit splits into `t` bands of `s`; both numbers divide the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub canonical: BitMatrix,
    pub size: usize,
    pub divisors: (usize, usize),
}

/// All distinct shift translates of `a`, sorted ascending.
pub fn orbit(a: &BitMatrix) -> Vec<BitMatrix> {
    let n = a.order();
    let mut members = Vec::with_capacity(n * n);
    let mut shifted = a.clone();
    for l in 0..n {
        if l > 0 {
            shifted = shifted.col_shift(1);
        }
        for k in 0..n {
            members.push(shifted.row_shift(k));
        }
    }
    members.sort_unstable();
    members.dedup();
    members
}

/// Finds shift exponents with `a == b.row_shift(k).col_shift(l)`, i.e. a
/// witness that the two matrices lie in the same orbit.
///
/// # Panics
///
/// Panics when the orders differ.
pub fn find_shift(a: &BitMatrix, b: &BitMatrix) -> Option<ShiftPair> {
    let n = a.order();
    assert_eq!(n, b.order(), "order mismatch in orbit search");
    let mut shifted = b.clone();
    for l in 0..n {
        if l > 0 {
            shifted = shifted.col_shift(1);
        }
        for k in 0..n {
            if &shifted.row_shift(k) == a {
                return Some(ShiftPair { rows: k, cols: l });
            }
        }
    }
    None
}

/// True when some pair of shifts maps `b` onto `a`.
///
/// # Panics
///
/// Panics when the orders differ.
pub fn equivalent(a: &BitMatrix, b: &BitMatrix) -> bool {
    find_shift(a, b).is_some()
}

/// Lexicographically smallest member of the orbit of `a`.
pub fn canonical(a: &BitMatrix) -> BitMatrix {
    let mut scratch = OrbitScratch::new(a.order());
    scratch.canonical_into(a.rows());
    BitMatrix::from_rows_unchecked(scratch.best().to_vec())
}

/// True when `a` is the canonical representative of its own orbit.
pub fn is_canonical(a: &BitMatrix) -> bool {
    OrbitScratch::new(a.order()).is_canonical(a.rows())
}

/// Canonical representative, orbit size and the `(s, t)` factorization.
pub fn orbit_summary(a: &BitMatrix) -> OrbitSummary {
    let n = a.order();
    let members = orbit(a);
    let size = members.len();

    let mut row_translates: Vec<BitMatrix> = (0..n).map(|k| a.row_shift(k)).collect();
    row_translates.sort_unstable();
    row_translates.dedup();
    let s = row_translates.len();

    assert!(size.is_multiple_of(s), "orbit size {size} not a multiple of {s}");
    let t = size / s;
    assert!(n.is_multiple_of(s), "row-shift period {s} does not divide {n}");
    assert!(n.is_multiple_of(t), "band count {t} does not divide {n}");

    OrbitSummary {
        canonical: members[0].clone(),
        size,
        divisors: (s, t),
    }
}

/// Reusable workspace for shift-orbit scans over raw row slices. The
/// enumerator tests millions of candidates, so these routines avoid all
/// per-call allocation.
pub(crate) struct OrbitScratch {
    shifted: Vec<u64>,
    best: Vec<u64>,
    flat: Vec<u64>,
    idx: Vec<u32>,
}

impl OrbitScratch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            shifted: Vec::with_capacity(n),
            best: Vec::with_capacity(n),
            flat: Vec::with_capacity(n * n * n),
            idx: Vec::with_capacity(n * n),
        }
    }

    /// True when no shift translate of `rows` is lexicographically
    /// smaller; bails out at the first smaller translate.
    pub(crate) fn is_canonical(&mut self, rows: &[u64]) -> bool {
        let n = rows.len();
        self.shifted.clear();
        self.shifted.extend_from_slice(rows);
        for l in 0..n {
            if l > 0 {
                for r in self.shifted.iter_mut() {
                    *r = matrix::rotate_row_right(*r, 1, n);
                }
            }
            for k in 0..n {
                if k == 0 && l == 0 {
                    continue;
                }
                for (i, &row) in rows.iter().enumerate() {
                    let t = self.shifted[(i + k) % n];
                    if t != row {
                        if t < row {
                            return false;
                        }
                        break;
                    }
                }
            }
        }
        true
    }

    /// Computes the lexicographic minimum over all translates of `rows`
    /// into the internal buffer; read it back with [`Self::best`].
    pub(crate) fn canonical_into(&mut self, rows: &[u64]) {
        let n = rows.len();
        self.best.clear();
        self.best.extend_from_slice(rows);
        self.shifted.clear();
        self.shifted.extend_from_slice(rows);
        for l in 0..n {
            if l > 0 {
                for r in self.shifted.iter_mut() {
                    *r = matrix::rotate_row_right(*r, 1, n);
                }
            }
            for k in 0..n {
                let mut smaller = false;
                for i in 0..n {
                    let t = self.shifted[(i + k) % n];
                    if t != self.best[i] {
                        smaller = t < self.best[i];
                        break;
                    }
                }
                if smaller {
                    for i in 0..n {
                        self.best[i] = self.shifted[(i + k) % n];
                    }
                }
            }
        }
    }

    pub(crate) fn best(&self) -> &[u64] {
        &self.best
    }

    /// Canonicalizes `rows` and compares against `expect`.
    pub(crate) fn canonical_matches(&mut self, rows: &[u64], expect: &[u64]) -> bool {
        self.canonical_into(rows);
        self.best == expect
    }

    /// Number of distinct translates of `rows`.
    pub(crate) fn orbit_size(&mut self, rows: &[u64]) -> usize {
        let n = rows.len();
        self.flat.clear();
        self.shifted.clear();
        self.shifted.extend_from_slice(rows);
        for l in 0..n {
            if l > 0 {
                for r in self.shifted.iter_mut() {
                    *r = matrix::rotate_row_right(*r, 1, n);
                }
            }
            for k in 0..n {
                for i in 0..n {
                    self.flat.push(self.shifted[(i + k) % n]);
                }
            }
        }
        self.idx.clear();
        self.idx.extend(0..(n * n) as u32);
        let flat = &self.flat;
        self.idx.sort_unstable_by(|&a, &b| {
            let a = a as usize * n;
            let b = b as usize * n;
            flat[a..a + n].cmp(&flat[b..b + n])
        });
        let mut distinct = 1;
        for w in self.idx.windows(2) {
            let a = w[0] as usize * n;
            let b = w[1] as usize * n;
            if flat[a..a + n] != flat[b..b + n] {
                distinct += 1;
            }
        }
        distinct
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[u64]) -> BitMatrix {
        BitMatrix::new(rows.to_vec()).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> BitMatrix {
        let rows = (0..n)
            .map(|_| rng.gen_range(0..=matrix::row_mask(n)))
            .collect();
        BitMatrix::new(rows).unwrap()
    }

    #[test]
    fn orbit_of_order_two_identity() {
        let members = orbit(&BitMatrix::identity(2));
        assert_eq!(members, vec![mat(&[1, 2]), mat(&[2, 1])]);
    }

    #[test]
    fn constant_matrices_are_orbit_fixed_points() {
        assert_eq!(orbit(&mat(&[0, 0])).len(), 1);
        assert_eq!(orbit(&mat(&[7, 7, 7])).len(), 1);
    }

    #[test]
    fn orbit_members_are_mutually_equivalent() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..60 {
            let a = random_matrix(&mut rng, 4);
            for m in orbit(&a) {
                assert!(equivalent(&a, &m));
                assert_eq!(orbit(&m), orbit(&a));
            }
        }
    }

    #[test]
    fn orbit_size_never_exceeds_n_squared() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for n in 1..=6 {
            for _ in 0..100 {
                let a = random_matrix(&mut rng, n);
                let size = orbit(&a).len();
                assert!(size >= 1 && size <= n * n);
                assert_eq!(n * n % size, 0, "size {size} must divide n^2");
            }
        }
    }

    #[test]
    fn find_shift_returns_a_working_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let b = random_matrix(&mut rng, 5);
            let k = rng.gen_range(0..5);
            let l = rng.gen_range(0..5);
            let a = b.row_shift(k).col_shift(l);
            let w = find_shift(&a, &b).expect("shift witness");
            assert_eq!(b.row_shift(w.rows).col_shift(w.cols), a);
        }
    }

    #[test]
    fn unrelated_matrices_are_not_equivalent() {
        assert!(!equivalent(&mat(&[1, 2]), &mat(&[3, 3])));
        assert!(find_shift(&mat(&[1, 2]), &mat(&[0, 0])).is_none());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical(&mat(&[2, 1])), mat(&[1, 2]));
        assert_eq!(canonical(&mat(&[1, 2])), mat(&[1, 2]));
        assert_eq!(canonical(&mat(&[0, 0])), mat(&[0, 0]));
    }

    #[test]
    fn canonical_is_the_orbit_minimum_and_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..200 {
            let a = random_matrix(&mut rng, 4);
            let c = canonical(&a);
            assert_eq!(c, orbit(&a)[0]);
            assert_eq!(canonical(&c), c);
            assert!(is_canonical(&c));
            assert!(equivalent(&a, &c));
        }
    }

    #[test]
    fn canonical_agrees_with_equivalence_exhaustively() {
        // every 3x3 matrix: same canonical form exactly when equivalent
        let mut reps = Vec::new();
        for bits in 0u64..1 << 9 {
            let rows = vec![bits >> 6 & 7, bits >> 3 & 7, bits & 7];
            let a = BitMatrix::new(rows).unwrap();
            reps.push((canonical(&a), a));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..2000 {
            let i = rng.gen_range(0..reps.len());
            let j = rng.gen_range(0..reps.len());
            assert_eq!(
                equivalent(&reps[i].1, &reps[j].1),
                reps[i].0 == reps[j].0
            );
        }
    }

    #[test]
    fn is_canonical_examples() {
        assert!(is_canonical(&mat(&[1, 2])));
        assert!(!is_canonical(&mat(&[2, 1])));
        assert!(is_canonical(&mat(&[0, 0])));
    }

    #[test]
    fn canonical_first_row_is_the_orbit_wide_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        for _ in 0..200 {
            let a = random_matrix(&mut rng, 5);
            let c = canonical(&a);
            let min = orbit(&a)
                .iter()
                .flat_map(|m| m.rows().to_vec())
                .min()
                .unwrap();
            assert_eq!(c.row(0), min);
        }
    }

    #[test]
    fn summary_of_order_two_identity() {
        let s = orbit_summary(&BitMatrix::identity(2));
        assert_eq!(s.canonical, mat(&[1, 2]));
        assert_eq!(s.size, 2);
        assert_eq!(s.divisors, (2, 1));
    }

    #[test]
    fn summary_factorization_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for n in 2..=6 {
            for _ in 0..100 {
                let a = random_matrix(&mut rng, n);
                let s = orbit_summary(&a);
                assert_eq!(s.divisors.0 * s.divisors.1, s.size);
                assert_eq!(n % s.divisors.0, 0);
                assert_eq!(n % s.divisors.1, 0);
                assert_eq!(s.canonical, canonical(&a));
            }
        }
    }

    #[test]
    fn scratch_agrees_with_public_routines() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        for n in 2..=6 {
            let mut scratch = OrbitScratch::new(n);
            for _ in 0..200 {
                let a = random_matrix(&mut rng, n);
                assert_eq!(scratch.is_canonical(a.rows()), is_canonical(&a));
                scratch.canonical_into(a.rows());
                assert_eq!(scratch.best(), canonical(&a).rows());
                assert_eq!(scratch.orbit_size(a.rows()), orbit(&a).len());
            }
        }
    }

    #[test]
    fn equivalence_is_reflexive_symmetric_transitive() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let a = random_matrix(&mut rng, 4);
            let b = a.row_shift(rng.gen_range(0..4)).col_shift(rng.gen_range(0..4));
            let c = b.row_shift(rng.gen_range(0..4)).col_shift(rng.gen_range(0..4));
            assert!(equivalent(&a, &a));
            assert!(equivalent(&a, &b) && equivalent(&b, &a));
            assert!(equivalent(&a, &c));
        }
    }
}
