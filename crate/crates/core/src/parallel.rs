//! Block-claiming parallel scans with deterministic results.
//!
//! Workers claim contiguous index blocks from a shared counter. A shared
//! "lowest stop index" lets them skip work past the first stop found, and
//! results are reduced by index, so the outcome never depends on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

fn block_len(total: u64, workers: usize) -> u64 {
    (total / (workers as u64 * 16)).clamp(1, 4096)
}

/// Smallest `k < total` with `probe(k)` returning `Some`, with its value.
pub(crate) fn find_first<E, F>(total: u64, workers: usize, probe: F) -> Option<(u64, E)>
where
    E: Send,
    F: Fn(u64) -> Option<E> + Sync,
{
    if workers <= 1 || total <= 1 {
        return (0..total).find_map(|k| probe(k).map(|e| (k, e)));
    }
    let block = block_len(total, workers);
    let next = AtomicU64::new(0);
    let best = AtomicU64::new(u64::MAX);

    let found: Vec<(u64, E)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut hit = None;
                    loop {
                        let start = next.fetch_add(block, Ordering::Relaxed);
                        if start >= total || start > best.load(Ordering::Acquire) {
                            break;
                        }
                        for k in start..(start + block).min(total) {
                            if k > best.load(Ordering::Acquire) {
                                break;
                            }
                            if let Some(e) = probe(k) {
                                best.fetch_min(k, Ordering::AcqRel);
                                // Anything this worker finds later has a
                                // larger index than k.
                                hit = Some((k, e));
                                break;
                            }
                        }
                        if hit.is_some() {
                            break;
                        }
                    }
                    hit
                })
            })
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    found.into_iter().min_by_key(|(k, _)| *k)
}

/// Evaluates `f` on `0..total` and returns the values of the prefix that
/// ends at (and includes) the first index whose value satisfies `stop`, or
/// all values when none does. Indices past the first stop may be skipped.
pub(crate) fn collect_prefix<T, F, S>(total: u64, workers: usize, f: F, stop: S) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
    S: Fn(&T) -> bool + Sync,
{
    if workers <= 1 || total <= 1 {
        let mut out = Vec::new();
        for k in 0..total {
            let v = f(k);
            let done = stop(&v);
            out.push(v);
            if done {
                break;
            }
        }
        return out;
    }
    let block = block_len(total, workers);
    let next = AtomicU64::new(0);
    let best = AtomicU64::new(u64::MAX);

    let mut all: Vec<(u64, T)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut local = Vec::new();
                    'claim: loop {
                        let start = next.fetch_add(block, Ordering::Relaxed);
                        if start >= total || start > best.load(Ordering::Acquire) {
                            break;
                        }
                        for k in start..(start + block).min(total) {
                            if k > best.load(Ordering::Acquire) {
                                break 'claim;
                            }
                            let v = f(k);
                            let done = stop(&v);
                            local.push((k, v));
                            if done {
                                best.fetch_min(k, Ordering::AcqRel);
                                break 'claim;
                            }
                        }
                    }
                    local
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    all.sort_unstable_by_key(|(k, _)| *k);
    let cut = best.load(Ordering::Acquire);
    all.into_iter()
        .take_while(|(k, _)| *k <= cut)
        .map(|(_, v)| v)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_matches_sequential() {
        for workers in [1, 2, 3, 8] {
            for target in [0u64, 1, 17, 999, 5000] {
                let got = find_first(5000, workers, |k| {
                    (k >= target && k % 7 == target % 7).then_some(k * 2)
                });
                let want = (target < 5000).then_some((target, target * 2));
                assert_eq!(got, want, "workers {workers} target {target}");
            }
            assert_eq!(find_first(100, workers, |_| None::<()>), None);
        }
    }

    #[test]
    fn collect_prefix_is_schedule_independent() {
        for workers in [1, 2, 8] {
            let v = collect_prefix(10_000, workers, |k| k, |&k| k == 4321);
            assert_eq!(v, (0..=4321).collect::<Vec<_>>());
            let v = collect_prefix(300, workers, |k| k * k, |_| false);
            assert_eq!(v, (0..300).map(|k| k * k).collect::<Vec<_>>());
        }
    }
}
