//! Exact Stanley depth by searching interval partitions of the characteristic
//! poset.
//!
//! Deciding `sdepth(I) >= d` only needs the elements of rank at most `d`:
//! a partition with every upper end of size at least `d` can be rearranged so
//! that each nontrivial interval has an upper end of size exactly `d` and every
//! element of rank above `d` is a singleton. What remains is an exact cover of
//! the low-rank elements by intervals `[C, D]` with `|D| = d`, solved by
//! backtracking on the lowest uncovered element. The integration tests check
//! this reduction against an unrestricted enumeration of interval partitions.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::combin::{for_each_k_subset, submasks};
use crate::error::{Error, Result};
use crate::ideal::{full_mask, Monomial, SqfreeIdeal};
use crate::poset::{
    build_poset_with_cap, CharacteristicPoset, Interval, IntervalPartition, SubsetBits, DEFAULT_POSET_CAP,
};

/// Knobs for [`exact_sdepth`] and [`partition_exists`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Bisect on `d` instead of scanning down from the upper bound.
    pub binary_search: bool,
    /// Remember covered-set signatures that failed.
    pub memoize: bool,
    /// Split the root branch set across the rayon pool.
    pub parallel: bool,
    pub deadline: Option<Instant>,
    /// Known upper bound on the answer, e.g. a closed-form family bound.
    pub upper_hint: Option<usize>,
    pub poset_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            binary_search: false,
            memoize: false,
            parallel: true,
            deadline: None,
            upper_hint: None,
            poset_cap: DEFAULT_POSET_CAP,
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions { parallel: false, ..Self::default() }
    }

    pub fn with_deadline(mut self, after: Duration) -> Self {
        self.deadline = Some(Instant::now() + after);
        self
    }
}

/// Outcome of one feasibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(IntervalPartition),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// One feasibility test made while computing the Stanley depth.
#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub d: usize,
    pub feasible: bool,
    pub nodes: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(serialize_with = "ser_millis", rename = "elapsed_ms")]
    pub elapsed: Duration,
    pub probes: Vec<Probe>,
}

fn ser_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

#[derive(Clone, Debug, Serialize)]
pub struct SdepthResult {
    pub value: usize,
    pub witness: IntervalPartition,
    /// Where the search started: `min(n, hint, counting bound)`.
    pub upper_start: usize,
    pub stats: SearchStats,
}

/// A cheap bound valid for every ideal.
///
/// The rank-`m` elements (`m` the least generator degree) are the minimal
/// generators of that degree; each heads its own interval, which holds at least
/// `d - m` elements of rank `m + 1`.
pub fn counting_upper_bound(poset: &CharacteristicPoset) -> usize {
    let n = poset.n();
    let m = poset.ideal().min_degree();
    if m >= n {
        return n;
    }
    let bottoms = poset.rank(m).len();
    let next = poset.rank(m + 1).len();
    (m + next / bottoms).min(n)
}

/// Decides whether some interval partition has every `|D_i| >= d`.
pub fn partition_exists(poset: &CharacteristicPoset, d: usize, opts: &SearchOptions) -> Result<Feasibility> {
    let counter = AtomicU64::new(0);
    run_feasibility(poset, d, opts, &counter)
}

fn run_feasibility(
    poset: &CharacteristicPoset,
    d: usize,
    opts: &SearchOptions,
    counter: &AtomicU64,
) -> Result<Feasibility> {
    let lo = poset.ideal().min_degree();
    let hi = poset.n();
    if d < lo || d > hi {
        return Err(Error::DepthOutOfRange { d, lo, hi });
    }
    let problem = Problem::new(poset, d);
    let shared = Shared { nodes: counter, deadline: opts.deadline, aborted: AtomicBool::new(false) };

    let mut root = Worker::new(&problem, &shared, opts.memoize, None);
    if !root.feasible_counts(problem.elems[0].count_ones() as usize) {
        root.flush();
        return Ok(Feasibility::Infeasible);
    }
    let first = problem.elems[0];
    if first.count_ones() as usize == d {
        return Ok(Feasibility::Feasible(problem.witness(&[])));
    }
    let tops = problem.tops(first);

    let outcome = if opts.parallel && tops.len() > 1 {
        let found_at = AtomicUsize::new(usize::MAX);
        let results: Vec<Branch> = tops
            .par_iter()
            .enumerate()
            .map(|(i, &top)| {
                if found_at.load(Ordering::Relaxed) < i {
                    return Branch::Cancelled;
                }
                if shared.aborted.load(Ordering::Relaxed) {
                    return Branch::TimedOut;
                }
                let mut w = Worker::new(&problem, &shared, opts.memoize, Some((&found_at, i)));
                let r = w.branch_root(first, top);
                w.flush();
                if let Branch::Found(_) = r {
                    found_at.fetch_min(i, Ordering::Relaxed);
                }
                r
            })
            .collect();
        merge_branches(results)
    } else {
        let mut w = Worker::new(&problem, &shared, opts.memoize, None);
        let mut out = Branch::Exhausted;
        for &top in &tops {
            match w.branch_root(first, top) {
                Branch::Exhausted => continue,
                other => {
                    out = other;
                    break;
                }
            }
        }
        w.flush();
        out
    };

    match outcome {
        Branch::Found(chosen) => Ok(Feasibility::Feasible(problem.witness(&chosen))),
        Branch::Exhausted => Ok(Feasibility::Infeasible),
        Branch::TimedOut | Branch::Cancelled => Err(Error::Deadline { best_feasible: lo, least_infeasible: None }),
    }
}

// Lowest-index success wins; an earlier timed-out branch makes the answer unknown.
fn merge_branches(results: Vec<Branch>) -> Branch {
    for r in results {
        match r {
            Branch::Exhausted => continue,
            Branch::Found(w) => return Branch::Found(w),
            Branch::TimedOut => return Branch::TimedOut,
            Branch::Cancelled => unreachable!("only branches after a success are cancelled"),
        }
    }
    Branch::Exhausted
}

/// Largest `d` admitting a partition with all `|D_i| >= d`, with a witness.
pub fn exact_sdepth(ideal: &SqfreeIdeal, opts: &SearchOptions) -> Result<SdepthResult> {
    let poset = build_poset_with_cap(ideal, opts.poset_cap)?;
    exact_sdepth_of_poset(&poset, opts)
}

pub fn exact_sdepth_of_poset(poset: &CharacteristicPoset, opts: &SearchOptions) -> Result<SdepthResult> {
    let started = Instant::now();
    let n = poset.n();
    let lo = poset.ideal().min_degree();
    let mut start = counting_upper_bound(poset).min(n);
    if let Some(h) = opts.upper_hint {
        start = start.min(h.max(lo));
    }
    let counter = AtomicU64::new(0);
    let mut probes = Vec::new();
    // bound-implied infeasibility above the starting point
    let mut least_infeasible = (start < n).then_some(start + 1);
    let mut best_feasible = lo;

    let probe = |d: usize, probes: &mut Vec<Probe>| -> Result<Feasibility> {
        let before = counter.load(Ordering::Relaxed);
        let out = run_feasibility(poset, d, opts, &counter);
        let nodes = counter.load(Ordering::Relaxed) - before;
        if let Ok(f) = &out {
            probes.push(Probe { d, feasible: f.is_feasible(), nodes });
        }
        out
    };

    let deadline_err =
        |best: usize, least: Option<usize>| Error::Deadline { best_feasible: best, least_infeasible: least };

    let (value, witness) = if opts.binary_search {
        let (mut lo_d, mut hi_d) = (lo, start);
        let mut witness = None;
        while lo_d < hi_d {
            let mid = (lo_d + hi_d).div_ceil(2);
            match probe(mid, &mut probes) {
                Ok(Feasibility::Feasible(w)) => {
                    lo_d = mid;
                    best_feasible = mid;
                    witness = Some(w);
                }
                Ok(Feasibility::Infeasible) => {
                    hi_d = mid - 1;
                    least_infeasible = Some(mid);
                }
                Err(Error::Deadline { .. }) => return Err(deadline_err(best_feasible, least_infeasible)),
                Err(e) => return Err(e),
            }
        }
        let witness = match witness {
            Some(w) => w,
            None => match probe(lo_d, &mut probes) {
                Ok(Feasibility::Feasible(w)) => w,
                Ok(Feasibility::Infeasible) => unreachable!("the least generator degree is always feasible"),
                Err(Error::Deadline { .. }) => return Err(deadline_err(best_feasible, least_infeasible)),
                Err(e) => return Err(e),
            },
        };
        (lo_d, witness)
    } else {
        let mut found = None;
        for d in (lo..=start).rev() {
            match probe(d, &mut probes) {
                Ok(Feasibility::Feasible(w)) => {
                    found = Some((d, w));
                    break;
                }
                Ok(Feasibility::Infeasible) => least_infeasible = Some(d),
                Err(Error::Deadline { .. }) => return Err(deadline_err(best_feasible, least_infeasible)),
                Err(e) => return Err(e),
            }
        }
        found.expect("the least generator degree is always feasible")
    };

    Ok(SdepthResult {
        value,
        witness,
        upper_start: start,
        stats: SearchStats { nodes: counter.load(Ordering::Relaxed), elapsed: started.elapsed(), probes },
    })
}

/// Read-only data for one feasibility test.
struct Problem<'a> {
    poset: &'a CharacteristicPoset,
    d: usize,
    n: usize,
    /// Poset elements of rank <= d, by rank then lexicographically.
    elems: Vec<u64>,
    /// `choose[a][b]` for `a, b <= d`.
    choose: Vec<Vec<usize>>,
}

impl<'a> Problem<'a> {
    fn new(poset: &'a CharacteristicPoset, d: usize) -> Self {
        let elems = (0..=d).flat_map(|r| poset.rank(r).iter().map(|c| c.mask())).collect();
        let mut choose = vec![vec![0usize; d + 1]; d + 1];
        for a in 0..=d {
            choose[a][0] = 1;
            for b in 1..=a {
                choose[a][b] = choose[a - 1][b - 1] + if b < a { choose[a - 1][b] } else { 0 };
            }
        }
        Problem { poset, d, n: poset.n(), elems, choose }
    }

    /// Supersets of `c` of size `d`, lexicographically.
    fn tops(&self, c: u64) -> Vec<u64> {
        let need = self.d - c.count_ones() as usize;
        let mut out = Vec::new();
        for_each_k_subset(full_mask(self.n) & !c, need, |extra| out.push(c | extra));
        out
    }

    /// Chosen intervals plus singletons for everything left over.
    fn witness(&self, chosen: &[(u64, u64)]) -> IntervalPartition {
        let mut covered = SubsetBits::new(self.n);
        let mut intervals = Vec::new();
        for &(c, top) in chosen {
            for s in submasks(top & !c) {
                covered.set(c | s);
            }
            intervals.push(Interval { lower: Monomial::from_mask(c), upper: Monomial::from_mask(top) });
        }
        for e in self.poset.elements() {
            if !covered.get(e.mask()) {
                intervals.push(Interval::singleton(e));
            }
        }
        IntervalPartition::new(intervals)
    }
}

struct Shared<'a> {
    nodes: &'a AtomicU64,
    deadline: Option<Instant>,
    aborted: AtomicBool,
}

enum Branch {
    Found(Vec<(u64, u64)>),
    Exhausted,
    TimedOut,
    Cancelled,
}

enum Stop {
    TimedOut,
    Cancelled,
}

const CHECK_EVERY: u64 = 1 << 10;

struct Worker<'p, 'a> {
    problem: &'p Problem<'a>,
    shared: &'p Shared<'p>,
    covered: SubsetBits,
    /// Uncovered poset elements per rank, ranks `0..=d`.
    uncovered: Vec<usize>,
    chosen: Vec<(u64, u64)>,
    failed: Option<HashSet<Box<[u64]>>>,
    local_nodes: u64,
    /// Branch index and the lowest index known to have succeeded.
    cancel: Option<(&'p AtomicUsize, usize)>,
}

impl<'p, 'a> Worker<'p, 'a> {
    fn new(
        problem: &'p Problem<'a>,
        shared: &'p Shared<'p>,
        memoize: bool,
        cancel: Option<(&'p AtomicUsize, usize)>,
    ) -> Self {
        let uncovered = (0..=problem.d).map(|r| problem.poset.rank(r).len()).collect();
        Worker {
            problem,
            shared,
            covered: SubsetBits::new(problem.n),
            uncovered,
            chosen: Vec::new(),
            failed: memoize.then(HashSet::new),
            local_nodes: 0,
            cancel,
        }
    }

    fn flush(&mut self) {
        self.shared.nodes.fetch_add(self.local_nodes, Ordering::Relaxed);
        self.local_nodes = 0;
    }

    fn tick(&mut self) -> Result<(), Stop> {
        self.local_nodes += 1;
        if self.shared.aborted.load(Ordering::Relaxed) {
            return Err(Stop::TimedOut);
        }
        if !self.local_nodes.is_multiple_of(CHECK_EVERY) {
            return Ok(());
        }
        self.flush();
        if let Some(deadline) = self.shared.deadline {
            if Instant::now() >= deadline {
                self.shared.aborted.store(true, Ordering::Relaxed);
                return Err(Stop::TimedOut);
            }
        }
        if let Some((found_at, me)) = self.cancel {
            if found_at.load(Ordering::Relaxed) < me {
                return Err(Stop::Cancelled);
            }
        }
        Ok(())
    }

    fn interval_free(&self, c: u64, top: u64) -> bool {
        submasks(top & !c).all(|s| !self.covered.get(c | s))
    }

    fn cover(&mut self, c: u64, top: u64) {
        for s in submasks(top & !c) {
            let e = c | s;
            self.covered.set(e);
            self.uncovered[e.count_ones() as usize] -= 1;
        }
        self.chosen.push((c, top));
    }

    fn uncover(&mut self, c: u64, top: u64) {
        for s in submasks(top & !c) {
            let e = c | s;
            self.covered.clear(e);
            self.uncovered[e.count_ones() as usize] += 1;
        }
        self.chosen.pop();
    }

    /// Every uncovered element of rank `r` (the lowest uncovered rank) heads its
    /// own interval, so those intervals must fit in what is left at each rank.
    fn feasible_counts(&self, r: usize) -> bool {
        let d = self.problem.d;
        let heads = self.uncovered[r];
        (r + 1..=d).all(|j| heads * self.problem.choose[d - r][j - r] <= self.uncovered[j])
    }

    fn branch_root(&mut self, first: u64, top: u64) -> Branch {
        if !self.interval_free(first, top) {
            return Branch::Exhausted;
        }
        self.cover(first, top);
        let out = match self.dfs(1) {
            Ok(true) => Branch::Found(self.chosen.clone()),
            Ok(false) => Branch::Exhausted,
            Err(Stop::TimedOut) => Branch::TimedOut,
            Err(Stop::Cancelled) => Branch::Cancelled,
        };
        self.uncover(first, top);
        out
    }

    fn dfs(&mut self, mut pos: usize) -> Result<bool, Stop> {
        self.tick()?;
        let elems = &self.problem.elems;
        while pos < elems.len() && self.covered.get(elems[pos]) {
            pos += 1;
        }
        if pos == elems.len() {
            return Ok(true);
        }
        let c = elems[pos];
        let r = c.count_ones() as usize;
        if r == self.problem.d {
            // remaining low elements all have rank d and stand alone
            return Ok(true);
        }
        if !self.feasible_counts(r) {
            return Ok(false);
        }
        if let Some(failed) = &self.failed {
            if failed.contains(self.covered.words()) {
                return Ok(false);
            }
        }
        for top in self.problem.tops(c) {
            if !self.interval_free(c, top) {
                continue;
            }
            self.cover(c, top);
            let found = self.dfs(pos + 1)?;
            if found {
                return Ok(true);
            }
            self.uncover(c, top);
        }
        if let Some(failed) = &mut self.failed {
            failed.insert(self.covered.words().into());
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{kpartite_edge_ideal, KPartiteSpec};
    use crate::poset::{build_poset, validate_partition};

    fn m(idx: &[usize]) -> Monomial {
        Monomial::from_indices(idx.iter().copied()).unwrap()
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> SqfreeIdeal {
        SqfreeIdeal::new(n, gens.iter().map(|g| m(g))).unwrap()
    }

    fn k22() -> SqfreeIdeal {
        ideal(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
    }

    #[test]
    fn principal_ideal() {
        let p = build_poset(&ideal(2, &[&[1, 2]])).unwrap();
        let f = partition_exists(&p, 2, &SearchOptions::default()).unwrap();
        assert_eq!(f, Feasibility::Feasible(IntervalPartition::new(vec![Interval::singleton(m(&[1, 2]))])));
        let r = exact_sdepth(&ideal(2, &[&[1, 2]]), &SearchOptions::default()).unwrap();
        assert_eq!(r.value, 2);
    }

    #[test]
    fn k22_feasibility() {
        let p = build_poset(&k22()).unwrap();
        assert_eq!(partition_exists(&p, 4, &SearchOptions::default()).unwrap(), Feasibility::Infeasible);
        let f = partition_exists(&p, 3, &SearchOptions::default()).unwrap();
        let Feasibility::Feasible(w) = f else { panic!("d = 3 should be feasible") };
        assert_eq!(validate_partition(&p, &w), Ok(()));
        assert_eq!(w.min_upper_size(), Some(3));
        assert!(matches!(
            partition_exists(&p, 1, &SearchOptions::default()),
            Err(Error::DepthOutOfRange { d: 1, lo: 2, hi: 4 })
        ));
        assert!(partition_exists(&p, 5, &SearchOptions::default()).is_err());
    }

    #[test]
    fn k22_exact_value() {
        let r = exact_sdepth(&k22(), &SearchOptions::default()).unwrap();
        assert_eq!(r.value, 3);
        let p = build_poset(&k22()).unwrap();
        assert_eq!(validate_partition(&p, &r.witness), Ok(()));
    }

    #[test]
    fn mixed_degree_ideal() {
        // (x1x2, x3): value frozen from the brute-force enumeration in the integration tests
        let r = exact_sdepth(&ideal(3, &[&[1, 2], &[3]]), &SearchOptions::default()).unwrap();
        assert_eq!(r.value, 2);
        let p = build_poset(&ideal(3, &[&[1, 2], &[3]])).unwrap();
        assert_eq!(validate_partition(&p, &r.witness), Ok(()));
        assert_eq!(r.witness.min_upper_size(), Some(2));
    }

    #[test]
    fn options_do_not_change_the_answer_or_witness() {
        let spec = KPartiteSpec::new(vec![2, 2, 3]).unwrap();
        let i = kpartite_edge_ideal(&spec).unwrap();
        let base = exact_sdepth(&i, &SearchOptions::sequential()).unwrap();
        for opts in [
            SearchOptions::default(),
            SearchOptions { binary_search: true, ..SearchOptions::default() },
            SearchOptions { memoize: true, ..SearchOptions::sequential() },
            SearchOptions { upper_hint: Some(7), ..SearchOptions::default() },
        ] {
            let r = exact_sdepth(&i, &opts).unwrap();
            assert_eq!(r.value, base.value);
            assert_eq!(r.witness, base.witness);
        }
    }

    #[test]
    fn monotone_in_d() {
        let i = kpartite_edge_ideal(&KPartiteSpec::new(vec![2, 3]).unwrap()).unwrap();
        let p = build_poset(&i).unwrap();
        let verdicts: Vec<bool> =
            (2..=5).map(|d| partition_exists(&p, d, &SearchOptions::default()).unwrap().is_feasible()).collect();
        for w in verdicts.windows(2) {
            assert!(w[0] || !w[1], "{verdicts:?}");
        }
    }

    #[test]
    fn expired_deadline_reports_partial() {
        let i = kpartite_edge_ideal(&KPartiteSpec::new(vec![1, 1, 1, 1, 1, 1, 1, 1]).unwrap()).unwrap();
        let opts = SearchOptions { deadline: Some(Instant::now()), ..SearchOptions::default() };
        match exact_sdepth(&i, &opts) {
            Err(Error::Deadline { best_feasible, .. }) => assert!(best_feasible >= 2),
            // a tiny search can finish before the first deadline check
            Ok(r) => assert!(r.value >= 2),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn counting_bound_examples() {
        assert_eq!(counting_upper_bound(&build_poset(&k22()).unwrap()), 3);
        assert_eq!(counting_upper_bound(&build_poset(&ideal(2, &[&[1, 2]])).unwrap()), 2);
    }
}
