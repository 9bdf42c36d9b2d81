//! Slow reference computations used to audit the enumerator.
//!
//! [`brute_force_partition`] walks every matrix of a small order and
//! groups the full space into shift orbits by direct expansion, with no
//! pruning and no canonicality test, so it shares no shortcuts with the
//! production path. [`burnside_class_count`] counts the same classes a
//! third way, from the cycle structure of the shift action alone.

use crate::classify::is_fabric;
use crate::matrix::{BitMatrix, MatrixError};

/// Exhaustive partition of all `n x n` binary matrices into shift
/// orbits. Classes are listed in ascending order of their smallest
/// member and each class is sorted ascending, so the first member of
/// each class is its canonical representative.
#[derive(Debug, Clone)]
pub struct PartitionResult {
    pub order: usize,
    pub classes: Vec<Vec<BitMatrix>>,
    /// How many classes consist of fabric matrices.
    pub fabric_classes: u64,
}

/// Sweeps ids `0..2^(n*n)` in increasing order; each unvisited id opens
/// a new class, which is closed by expanding all `n * n` shift translates.
/// Limited to `n <= 4` because the sweep materializes every class.
pub fn brute_force_partition(n: usize) -> Result<PartitionResult, MatrixError> {
    if !(2..=4).contains(&n) {
        return Err(MatrixError::OrderOutOfRange {
            order: n,
            min: 2,
            max: 4,
        });
    }
    let cells = n * n;
    let universe: u64 = 1 << cells;
    let mut seen = vec![false; universe as usize];
    let mut classes = Vec::new();
    let mut fabric_classes = 0u64;

    for id in 0..universe {
        if seen[id as usize] {
            continue;
        }
        let root = decode(id, n);
        let mut member_ids: Vec<u64> = Vec::with_capacity(cells);
        let mut shifted = root.clone();
        for l in 0..n {
            if l > 0 {
                shifted = shifted.col_shift(1);
            }
            for k in 0..n {
                member_ids.push(encode(&shifted.row_shift(k)));
            }
        }
        member_ids.sort_unstable();
        member_ids.dedup();
        for &m in &member_ids {
            seen[m as usize] = true;
        }
        if is_fabric(&root) {
            fabric_classes += 1;
        }
        classes.push(member_ids.iter().map(|&m| decode(m, n)).collect());
    }

    Ok(PartitionResult {
        order: n,
        classes,
        fabric_classes,
    })
}

/// Row codes concatenated, first row most significant, so id order equals
/// lexicographic order on row tuples.
fn encode(a: &BitMatrix) -> u64 {
    let n = a.order();
    a.rows().iter().fold(0u64, |acc, &row| (acc << n) | row)
}

fn decode(id: u64, n: usize) -> BitMatrix {
    let mask = (1u64 << n) - 1;
    let rows = (0..n)
        .map(|i| (id >> ((n - 1 - i) * n)) & mask)
        .collect();
    BitMatrix::new(rows).unwrap()
}

/// Number of shift orbits among all `n x n` binary matrices, by counting
/// cycles of each shift pair: the pair `(k, l)` fixes `2^c` matrices
/// where `c` is the number of cycles of the translation `(i, j) ->
/// (i + k, j + l)` on the `n x n` torus, and averaging over all pairs
/// counts the orbits.
///
/// # Panics
///
/// Panics above order 11, where `2^(n*n)` outgrows the accumulator.
pub fn burnside_class_count(n: usize) -> u128 {
    assert!((1..=11).contains(&n), "order {n} overflows the class-count sum");
    let mut sum: u128 = 0;
    for k in 0..n {
        for l in 0..n {
            let row_period = n / gcd(n, k);
            let col_period = n / gcd(n, l);
            let cycle_len = lcm(row_period, col_period);
            let cycles = n * n / cycle_len;
            sum += 1u128 << cycles;
        }
    }
    sum / (n as u128 * n as u128)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
