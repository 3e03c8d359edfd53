//! Timed and multi-threaded enumeration.
//!
//! The search tree is split on the completions of row 1. Workers take
//! prefixes from a shared counter and keep per-prefix results, which are
//! merged in prefix order, so the output does not depend on `jobs`.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use loopkit_core::search::{Collector, Mode, SearchError, SearchSpec, SearchStats, Solver};
use loopkit_core::LoopTable;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunStats {
    #[serde(flatten)]
    pub search: SearchStats,
    pub complete: bool,
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub tables: Vec<LoopTable>,
    pub stats: RunStats,
}

impl RunOutput {
    pub fn complete(&self) -> bool {
        self.stats.complete
    }
}

/// Enumerates with `jobs` threads. `jobs <= 1` is the plain serial search,
/// whose statistics are reproducible.
pub fn enumerate(spec: &SearchSpec, jobs: usize) -> Result<RunOutput, SearchError> {
    let start = Instant::now();
    let (tables, search, complete) = if jobs <= 1 { serial(spec)? } else { parallel(spec, jobs)? };
    Ok(RunOutput { tables, stats: RunStats { search, complete, elapsed_secs: secs(start.elapsed()) } })
}

fn secs(d: Duration) -> f64 {
    (d.as_secs_f64() * 1000.0).round() / 1000.0
}

fn serial(spec: &SearchSpec) -> Result<(Vec<LoopTable>, SearchStats, bool), SearchError> {
    let e = loopkit_core::search::enumerate(spec)?;
    Ok((e.tables, e.stats, e.complete))
}

struct Slot<'a> {
    collector: Collector<'a>,
    stopped: bool,
}

fn parallel(spec: &SearchSpec, jobs: usize) -> Result<(Vec<LoopTable>, SearchStats, bool), SearchError> {
    let mut root = Solver::new(spec.order, &spec.constraints)?;
    root.set_max_nodes(spec.limits.max_nodes);
    let prefixes = match root.row1_prefixes() {
        Ok(p) => p,
        Err(SearchError::BudgetExceeded { .. }) => return Ok((Vec::new(), root.stats(), false)),
        Err(e) => return Err(e),
    };
    let base = root.stats();

    let next = AtomicUsize::new(0);
    // lowest prefix index that produced a first_only hit
    let first_hit = AtomicUsize::new(usize::MAX);
    let nodes = AtomicU64::new(base.nodes_expanded);
    let over_budget = AtomicBool::new(false);
    let slots: Vec<Mutex<Option<Slot>>> = prefixes.iter().map(|_| Mutex::new(None)).collect();
    let worker_stats = Mutex::new(Vec::new());

    thread::scope(|s| {
        for _ in 0..jobs.min(prefixes.len().max(1)) {
            s.spawn(|| {
                let mut solver = Solver::new(spec.order, &spec.constraints).expect("validated above");
                let mut reported = 0u64;
                loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= prefixes.len() || over_budget.load(Ordering::SeqCst) {
                        break;
                    }
                    if spec.mode == Mode::FirstOnly && first_hit.load(Ordering::SeqCst) < i {
                        continue;
                    }
                    if let Some(max) = spec.limits.max_nodes {
                        let used = nodes.load(Ordering::SeqCst);
                        solver.set_max_nodes(Some(solver.stats().nodes_expanded + max.saturating_sub(used)));
                    }
                    let mut collector = Collector::new(spec);
                    let result = solver.run(Some(&prefixes[i]), &mut |t| collector.push(t));
                    let done = solver.stats().nodes_expanded;
                    nodes.fetch_add(done - reported, Ordering::SeqCst);
                    reported = done;
                    match result {
                        Ok(finished) => {
                            if !finished {
                                first_hit.fetch_min(i, Ordering::SeqCst);
                            }
                            *slots[i].lock().unwrap() = Some(Slot { collector, stopped: !finished });
                        }
                        Err(_) => {
                            over_budget.store(true, Ordering::SeqCst);
                            *slots[i].lock().unwrap() = Some(Slot { collector, stopped: false });
                            break;
                        }
                    }
                }
                worker_stats.lock().unwrap().push(solver.stats());
            });
        }
    });

    let mut stats = base;
    for w in worker_stats.into_inner().unwrap() {
        stats.nodes_expanded += w.nodes_expanded;
        stats.solutions_found += w.solutions_found;
    }
    let mut merged = Collector::new(spec);
    for slot in slots.into_iter().filter_map(|m| m.into_inner().unwrap()) {
        let stop = slot.stopped && spec.mode == Mode::FirstOnly;
        merged.absorb(slot.collector);
        if stop {
            break;
        }
    }
    stats.isomorphism_rejections = merged.stats.isomorphism_rejections;
    let complete = !over_budget.into_inner();
    Ok((merged.finish(), stats, complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use loopkit_core::catalog;

    fn spec(n: usize, ids: &[&str], mode: Mode) -> SearchSpec {
        SearchSpec::new(n, ids.iter().map(|i| catalog::lookup(i).unwrap()).collect(), mode)
    }

    #[test]
    fn parallel_matches_serial() {
        for (n, ids) in [(5, &[][..]), (6, &["left_cheban"][..]), (1, &[][..]), (2, &["cheban"][..])] {
            for mode in [Mode::AllLabeled, Mode::UpToIsomorphism] {
                let s = spec(n, ids, mode);
                let a = enumerate(&s, 1).unwrap();
                let b = enumerate(&s, 4).unwrap();
                assert_eq!(a.tables, b.tables, "order {n} {ids:?} {mode:?}");
                assert_eq!(a.stats.search.solutions_found, b.stats.search.solutions_found);
                assert_eq!(a.stats.search.isomorphism_rejections, b.stats.search.isomorphism_rejections);
                assert!(b.complete());
            }
        }
    }

    #[test]
    fn parallel_first_only_is_deterministic() {
        use loopkit_core::search::Predicate;
        let s = spec(6, &[], Mode::FirstOnly).with_predicate(Predicate::nonassociative());
        let a = enumerate(&s, 1).unwrap();
        for _ in 0..3 {
            assert_eq!(enumerate(&s, 3).unwrap().tables, a.tables);
        }
    }

    #[test]
    fn parallel_budget() {
        let s = spec(6, &[], Mode::AllLabeled).with_max_nodes(500);
        let r = enumerate(&s, 3).unwrap();
        assert!(!r.complete());
    }
}
