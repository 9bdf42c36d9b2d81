//! Enumeration of fabric classes by canonical representative.
//!
//! Candidates are row tuples with every code in `1..=2^n-2` and the
//! first row no larger than any other; no canonical fabric matrix falls
//! outside that set, since a canonical form starts with its orbit's
//! smallest row and a fabric matrix has no constant rows. Each candidate
//! that passes the column test and the canonicality test names exactly
//! one class.
//!
//! The candidate space splits into strata by first row code. Strata are
//! scanned independently, possibly on several threads, and their results
//! are stitched back together in stratum order, so counts and record
//! streams never depend on the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::{Duration, Instant};

use crate::classify::{self, ClassFlags};
use crate::matrix::{self, BitMatrix, MatrixError, MAX_ORDER};
use crate::orbit::OrbitScratch;

/// Periodic report hook: `callback(total)` runs roughly once per `every`
/// candidates, with the number of candidates processed so far.
#[derive(Clone)]
pub struct Progress {
    pub every: u64,
    pub callback: Arc<dyn Fn(u64) + Send + Sync>,
}

impl fmt::Debug for Progress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Progress").field("every", &self.every).finish()
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    /// Worker threads; 1 scans strata sequentially.
    pub threads: usize,
    /// Evaluate the mirror test on every class.
    pub mirror: bool,
    /// Evaluate the quarter-turn test on every class.
    pub rotation: bool,
    pub progress: Option<Progress>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            mirror: true,
            rotation: true,
            progress: None,
        }
    }
}

/// Totals of one enumeration run. When a sink stops the run early the
/// totals cover only the work done up to that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub order: usize,
    /// Fabric classes found.
    pub classes: u64,
    /// Classes equivalent to their own mirror image.
    pub self_mirrored: u64,
    /// Classes equivalent to their own quarter-turn.
    pub rotation_stable: u64,
    /// Candidate tuples inspected.
    pub candidates: u64,
    pub elapsed: Duration,
}

/// One fabric class: its canonical representative, the class predicates
/// and the orbit size. Mirror and rotation flags are only evaluated when
/// the run asked for them and read false otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub canonical: BitMatrix,
    pub flags: ClassFlags,
    pub orbit_size: usize,
}

/// Counts fabric classes and both symmetric subfamilies of order `n`.
pub fn count_classes(
    order: usize,
    opts: &EnumerationOptions,
) -> Result<EnumerationReport, MatrixError> {
    let mut opts = opts.clone();
    opts.mirror = true;
    opts.rotation = true;
    run(order, &opts, false, &mut |_| ControlFlow::Continue(()))
}

/// Streams every fabric class of order `n` to `sink` in ascending order
/// of canonical row tuple. The sink may return `ControlFlow::Break` to
/// stop the run.
pub fn enumerate_classes<F>(
    order: usize,
    opts: &EnumerationOptions,
    mut sink: F,
) -> Result<EnumerationReport, MatrixError>
where
    F: FnMut(ClassRecord) -> ControlFlow<()>,
{
    run(order, opts, true, &mut sink)
}

/// Iterator over the raw candidate tuples of order `n`, in ascending
/// lexicographic order, before any fabric or canonicality filtering.
pub fn generate_candidates(order: usize) -> Result<Candidates, MatrixError> {
    check_order(order)?;
    let top = matrix::row_mask(order) - 1;
    Ok(Candidates {
        top,
        rows: Some(vec![1; order]),
    })
}

#[derive(Debug, Clone)]
pub struct Candidates {
    top: u64,
    rows: Option<Vec<u64>>,
}

impl Iterator for Candidates {
    type Item = BitMatrix;

    fn next(&mut self) -> Option<BitMatrix> {
        let rows = self.rows.as_mut()?;
        let item = BitMatrix::from_rows_unchecked(rows.clone());
        let n = rows.len();
        let mut i = n - 1;
        loop {
            if i == 0 {
                // exhaust the stratum: restart every digit at the next first row
                let first = rows[0] + 1;
                if first > self.top {
                    self.rows = None;
                } else {
                    rows.fill(first);
                }
                break;
            }
            rows[i] += 1;
            if rows[i] <= self.top {
                break;
            }
            rows[i] = rows[0];
            i -= 1;
        }
        Some(item)
    }
}

fn check_order(order: usize) -> Result<(), MatrixError> {
    if (2..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(MatrixError::OrderOutOfRange {
            order,
            min: 2,
            max: MAX_ORDER,
        })
    }
}

struct ScanParams {
    order: usize,
    /// Largest admissible row code, `2^n - 2`.
    top: u64,
    full: u64,
    mirror: bool,
    rotation: bool,
    collect: bool,
}

#[derive(Default)]
struct StratumTotals {
    candidates: u64,
    classes: u64,
    self_mirrored: u64,
    rotation_stable: u64,
    stopped: bool,
}

/// Candidates between stop-flag checks and progress updates.
const TICK_SPAN: u64 = 1 << 12;

struct Ticker<'a> {
    left: u64,
    processed: &'a AtomicU64,
    stop: &'a AtomicBool,
    progress: Option<&'a Progress>,
}

impl<'a> Ticker<'a> {
    fn new(
        processed: &'a AtomicU64,
        stop: &'a AtomicBool,
        progress: Option<&'a Progress>,
    ) -> Self {
        Self {
            left: TICK_SPAN,
            processed,
            stop,
            progress,
        }
    }

    /// Returns true when the scan should abort.
    fn tick(&mut self) -> bool {
        self.left -= 1;
        if self.left > 0 {
            return false;
        }
        self.left = TICK_SPAN;
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let total = self.processed.fetch_add(TICK_SPAN, Ordering::Relaxed) + TICK_SPAN;
        if let Some(p) = self.progress {
            if p.every > 0 && total / p.every != (total - TICK_SPAN) / p.every {
                (p.callback)(total);
            }
        }
        false
    }
}

/// Scans every candidate whose first row is `first_row`.
fn scan_stratum<F>(
    params: &ScanParams,
    first_row: u64,
    scratch: &mut OrbitScratch,
    tmp: &mut [u64],
    rows: &mut Vec<u64>,
    ticker: &mut Ticker<'_>,
    emit: &mut F,
) -> StratumTotals
where
    F: FnMut(ClassRecord) -> ControlFlow<()> + ?Sized,
{
    let n = params.order;
    rows.clear();
    rows.resize(n, first_row);
    let mut out = StratumTotals::default();
    loop {
        out.candidates += 1;
        if ticker.tick() {
            out.stopped = true;
            return out;
        }
        // rows are mixed by construction, so only columns need checking
        if classify::fabric_columns(rows, params.full) && scratch.is_canonical(rows) {
            out.classes += 1;
            let mut flags = ClassFlags {
                fabric: true,
                primary: classify::permutation_rows(rows, params.full),
                self_mirrored: false,
                rotation_stable: false,
            };
            if params.mirror && classify::self_mirrored_canonical(rows, tmp, scratch) {
                flags.self_mirrored = true;
                out.self_mirrored += 1;
            }
            if params.rotation && classify::rotation_stable_canonical(rows, tmp, scratch) {
                flags.rotation_stable = true;
                out.rotation_stable += 1;
            }
            if params.collect {
                let orbit_size = scratch.orbit_size(rows);
                let record = ClassRecord {
                    canonical: BitMatrix::from_rows_unchecked(rows.clone()),
                    flags,
                    orbit_size,
                };
                if emit(record).is_break() {
                    out.stopped = true;
                    return out;
                }
            }
        }
        // advance the odometer; the first digit marks the stratum and stays put
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            rows[i] += 1;
            if rows[i] <= params.top {
                break;
            }
            rows[i] = first_row;
            i -= 1;
        }
    }
}

fn accumulate(report: &mut EnumerationReport, totals: &StratumTotals) {
    report.candidates += totals.candidates;
    report.classes += totals.classes;
    report.self_mirrored += totals.self_mirrored;
    report.rotation_stable += totals.rotation_stable;
}

fn run(
    order: usize,
    opts: &EnumerationOptions,
    collect: bool,
    sink: &mut dyn FnMut(ClassRecord) -> ControlFlow<()>,
) -> Result<EnumerationReport, MatrixError> {
    check_order(order)?;
    let start = Instant::now();
    let full = matrix::row_mask(order);
    let strata = full - 1; // first row codes 1..=2^n-2
    let params = ScanParams {
        order,
        top: strata,
        full,
        mirror: opts.mirror,
        rotation: opts.rotation,
        collect,
    };
    let mut report = EnumerationReport {
        order,
        classes: 0,
        self_mirrored: 0,
        rotation_stable: 0,
        candidates: 0,
        elapsed: Duration::ZERO,
    };

    let processed = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let mut threads = opts.threads.max(1);
    if threads as u64 > strata {
        threads = strata as usize;
    }

    if threads == 1 {
        let mut scratch = OrbitScratch::new(order);
        let mut tmp = vec![0u64; order];
        let mut rows = Vec::with_capacity(order);
        let mut ticker = Ticker::new(&processed, &stop, opts.progress.as_ref());
        for first_row in 1..=strata {
            let totals = scan_stratum(
                &params,
                first_row,
                &mut scratch,
                &mut tmp,
                &mut rows,
                &mut ticker,
                sink,
            );
            accumulate(&mut report, &totals);
            if totals.stopped {
                break;
            }
        }
        report.elapsed = start.elapsed();
        return Ok(report);
    }

    let next = AtomicU64::new(0);
    let (tx, rx) = mpsc::channel::<(u64, StratumTotals, Vec<ClassRecord>)>();
    thread::scope(|scope| {
        for _ in 0..threads {
            let tx = tx.clone();
            let params = &params;
            let next = &next;
            let processed = &processed;
            let stop = &stop;
            let progress = opts.progress.as_ref();
            scope.spawn(move || {
                let mut scratch = OrbitScratch::new(params.order);
                let mut tmp = vec![0u64; params.order];
                let mut rows = Vec::with_capacity(params.order);
                let mut ticker = Ticker::new(processed, stop, progress);
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= strata || stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let mut records = Vec::new();
                    let totals = scan_stratum(
                        params,
                        idx + 1,
                        &mut scratch,
                        &mut tmp,
                        &mut rows,
                        &mut ticker,
                        &mut |rec| {
                            records.push(rec);
                            ControlFlow::Continue(())
                        },
                    );
                    let stopped = totals.stopped;
                    if tx.send((idx, totals, records)).is_err() || stopped {
                        break;
                    }
                }
            });
        }
        drop(tx);

        // replay stratum results in stratum order: output is independent
        // of how strata were spread over threads
        let mut pending: BTreeMap<u64, Vec<ClassRecord>> = BTreeMap::new();
        let mut next_emit = 0u64;
        let mut emitting = collect;
        for (idx, totals, records) in rx {
            if totals.stopped {
                emitting = false;
            }
            accumulate(&mut report, &totals);
            if !emitting {
                continue;
            }
            pending.insert(idx, records);
            while let Some(recs) = pending.remove(&next_emit) {
                next_emit += 1;
                for rec in recs {
                    if sink(rec).is_break() {
                        stop.store(true, Ordering::Relaxed);
                        emitting = false;
                        break;
                    }
                }
                if !emitting {
                    break;
                }
            }
        }
    });

    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, is_fabric};
    use crate::orbit::{is_canonical, orbit};

    fn mat(rows: &[u64]) -> BitMatrix {
        BitMatrix::new(rows.to_vec()).unwrap()
    }

    fn collect_records(order: usize, opts: &EnumerationOptions) -> Vec<ClassRecord> {
        let mut records = Vec::new();
        enumerate_classes(order, opts, |rec| {
            records.push(rec);
            ControlFlow::Continue(())
        })
        .unwrap();
        records
    }

    #[test]
    fn candidates_for_order_two() {
        let all: Vec<BitMatrix> = generate_candidates(2).unwrap().collect();
        assert_eq!(all, vec![mat(&[1, 1]), mat(&[1, 2]), mat(&[2, 2])]);
    }

    #[test]
    fn candidate_counts_follow_the_power_sum() {
        // order n admits sum over j of j^(n-1) tuples, j = 1..=2^n-2
        assert_eq!(generate_candidates(2).unwrap().count(), 3);
        assert_eq!(generate_candidates(3).unwrap().count(), 91);
        assert_eq!(generate_candidates(4).unwrap().count(), 11025);
    }

    #[test]
    fn candidates_are_ascending_and_first_row_minimal() {
        let all: Vec<BitMatrix> = generate_candidates(3).unwrap().collect();
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        for c in &all {
            let first = c.row(0);
            assert!(c.rows().iter().all(|&r| (1..=6).contains(&r)));
            assert!(c.rows().iter().all(|&r| r >= first));
        }
    }

    #[test]
    fn order_two_has_the_single_class() {
        let report = count_classes(2, &EnumerationOptions::default()).unwrap();
        assert_eq!(report.classes, 1);
        assert_eq!(report.self_mirrored, 1);
        assert_eq!(report.rotation_stable, 1);
        assert_eq!(report.candidates, 3);

        let records = collect_records(2, &EnumerationOptions::default());
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].canonical, mat(&[1, 2]));
        assert_eq!(records[0].orbit_size, 2);
        assert!(records[0].flags.primary);
    }

    #[test]
    fn order_three_counts() {
        let report = count_classes(3, &EnumerationOptions::default()).unwrap();
        assert_eq!(report.classes, 14);
        assert_eq!(report.self_mirrored, 2);
        assert_eq!(report.rotation_stable, 2);
        assert_eq!(report.candidates, 91);
    }

    #[test]
    fn order_four_counts() {
        let report = count_classes(4, &EnumerationOptions::default()).unwrap();
        assert_eq!(report.classes, 1446);
        assert_eq!(report.self_mirrored, 142);
        assert_eq!(report.rotation_stable, 18);
        assert_eq!(report.candidates, 11025);
    }

    #[test]
    fn records_are_canonical_fabric_and_ascending() {
        for n in [3, 4] {
            let records = collect_records(n, &EnumerationOptions::default());
            for w in records.windows(2) {
                assert!(w[0].canonical < w[1].canonical);
            }
            for rec in &records {
                assert!(is_canonical(&rec.canonical));
                assert!(is_fabric(&rec.canonical));
                assert!(rec.flags.fabric);
                let reference = classify(&rec.canonical);
                assert_eq!(rec.flags, reference);
                assert_eq!(rec.orbit_size, orbit(&rec.canonical).len());
            }
        }
    }

    #[test]
    fn orbit_sizes_cover_every_fabric_matrix() {
        // class sizes over order 3 must add up to the number of fabric
        // matrices counted directly
        let records = collect_records(3, &EnumerationOptions::default());
        let total: usize = records.iter().map(|r| r.orbit_size).sum();
        let mut direct = 0usize;
        for bits in 0u64..1 << 9 {
            let a = mat(&[bits >> 6 & 7, bits >> 3 & 7, bits & 7]);
            if is_fabric(&a) {
                direct += 1;
            }
        }
        assert_eq!(total, direct);
    }

    #[test]
    fn thread_count_never_changes_results() {
        let base_records = collect_records(4, &EnumerationOptions::default());
        let base_report = count_classes(4, &EnumerationOptions::default()).unwrap();
        for threads in [2, 3, 8] {
            let opts = EnumerationOptions {
                threads,
                ..Default::default()
            };
            assert_eq!(collect_records(4, &opts), base_records, "threads={threads}");
            let report = count_classes(4, &opts).unwrap();
            assert_eq!(report.classes, base_report.classes);
            assert_eq!(report.self_mirrored, base_report.self_mirrored);
            assert_eq!(report.rotation_stable, base_report.rotation_stable);
            assert_eq!(report.candidates, base_report.candidates);
        }
    }

    #[test]
    fn sinks_can_stop_the_stream_early() {
        let full = collect_records(4, &EnumerationOptions::default());
        for threads in [1, 4] {
            let opts = EnumerationOptions {
                threads,
                ..Default::default()
            };
            let mut got = Vec::new();
            enumerate_classes(4, &opts, |rec| {
                got.push(rec);
                if got.len() == 5 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })
            .unwrap();
            assert_eq!(&got[..], &full[..5], "threads={threads}");
        }
    }

    #[test]
    fn skipped_predicates_read_false_but_keep_the_class_count() {
        let opts = EnumerationOptions {
            mirror: false,
            rotation: false,
            ..Default::default()
        };
        let records = collect_records(3, &opts);
        assert_eq!(records.len(), 14);
        assert!(records.iter().all(|r| !r.flags.self_mirrored));
        assert!(records.iter().all(|r| !r.flags.rotation_stable));

        // count_classes always evaluates both predicates
        let report = count_classes(3, &opts).unwrap();
        assert_eq!(report.self_mirrored, 2);
        assert_eq!(report.rotation_stable, 2);
    }

    #[test]
    fn progress_callback_observes_the_sweep() {
        let seen = Arc::new(AtomicU64::new(0));
        let inner = Arc::clone(&seen);
        let opts = EnumerationOptions {
            progress: Some(Progress {
                every: TICK_SPAN,
                callback: Arc::new(move |total| {
                    inner.store(total, Ordering::Relaxed);
                }),
            }),
            ..Default::default()
        };
        let report = count_classes(4, &opts).unwrap();
        let last = seen.load(Ordering::Relaxed);
        assert!(last > 0, "callback never ran");
        assert!(last <= report.candidates);
    }

    #[test]
    fn rejects_unsupported_orders() {
        for n in [0, 1, 65] {
            assert!(count_classes(n, &EnumerationOptions::default()).is_err());
            assert!(generate_candidates(n).is_err());
        }
    }
}
