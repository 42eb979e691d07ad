//! Depth-first subset search with forced members, group constraints and
//! incremental predicate state.

use rayon::prelude::*;

use super::{Kind, Meter, SolveOptions};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::resolving::{strongly_resolves_unchecked, twin_classes, OrderedVertexSet};

pub(super) struct Outcome {
    pub witness: OrderedVertexSet,
    pub examined: u64,
    pub forced: usize,
    pub family_pruned: bool,
}

/// Predicate state that can be extended one member at a time.
trait Incremental: Sync {
    type State: Clone + Send + Sync;
    fn empty(&self) -> Self::State;
    fn push(&self, state: &Self::State, v: usize) -> Self::State;
    fn accepts(&self, state: &Self::State) -> bool;
}

/// A partition of the vertices into classes with equal keys so far.
#[derive(Clone)]
struct Partition {
    class: Vec<u32>,
    count: usize,
}

impl Partition {
    fn trivial(n: usize) -> Self {
        Partition {
            class: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    /// Splits every class by `key(u) < key_range`.
    fn refine(&self, key_range: usize, key: impl Fn(usize) -> usize) -> Self {
        let mut table = vec![u32::MAX; self.count * key_range];
        let mut class = Vec::with_capacity(self.class.len());
        let mut count = 0u32;
        for (u, &c) in self.class.iter().enumerate() {
            let slot = &mut table[c as usize * key_range + key(u)];
            if *slot == u32::MAX {
                *slot = count;
                count += 1;
            }
            class.push(*slot);
        }
        Partition {
            class,
            count: count as usize,
        }
    }

    fn is_discrete(&self) -> bool {
        self.count == self.class.len()
    }
}

struct ResolvingCheck<'a> {
    d: &'a DistanceMatrix,
    keys: usize,
}

impl Incremental for ResolvingCheck<'_> {
    type State = Partition;

    fn empty(&self) -> Partition {
        Partition::trivial(self.d.order())
    }

    fn push(&self, state: &Partition, v: usize) -> Partition {
        let row = self.d.row(v);
        state.refine(self.keys, |u| row[u] as usize)
    }

    fn accepts(&self, state: &Partition) -> bool {
        state.is_discrete()
    }
}

/// `r(u|Z) - r(v|Z)` is constant iff `u` and `v` agree on
/// `d(., z) - d(., z_0)` for every member `z`, with `z_0` the first member.
struct DoublyCheck<'a> {
    d: &'a DistanceMatrix,
    diameter: usize,
}

#[derive(Clone)]
struct DoublyState {
    anchor: Option<usize>,
    partition: Partition,
}

impl Incremental for DoublyCheck<'_> {
    type State = DoublyState;

    fn empty(&self) -> DoublyState {
        DoublyState {
            anchor: None,
            partition: Partition::trivial(self.d.order()),
        }
    }

    fn push(&self, state: &DoublyState, v: usize) -> DoublyState {
        match state.anchor {
            None => DoublyState {
                anchor: Some(v),
                partition: state.partition.clone(),
            },
            Some(a) => {
                let (rv, ra) = (self.d.row(v), self.d.row(a));
                let shift = self.diameter;
                DoublyState {
                    anchor: Some(a),
                    partition: state
                        .partition
                        .refine(2 * shift + 1, |u| rv[u] as usize + shift - ra[u] as usize),
                }
            }
        }
    }

    fn accepts(&self, state: &DoublyState) -> bool {
        state.anchor.is_some() && state.partition.is_discrete()
    }
}

/// Bitset over unordered pairs of vertices.
struct StrongCheck {
    words: usize,
    resolved_by: Vec<Vec<u64>>,
    full: Vec<u64>,
}

impl StrongCheck {
    fn new(d: &DistanceMatrix) -> Self {
        let n = d.order();
        let pairs = n * n.saturating_sub(1) / 2;
        let words = pairs.div_ceil(64);
        let mut full = vec![u64::MAX; words];
        if !pairs.is_multiple_of(64) {
            full[words - 1] = (1u64 << (pairs % 64)) - 1;
        }
        let resolved_by = (0..n)
            .into_par_iter()
            .map(|w| {
                let mut bits = vec![0u64; words];
                let mut idx = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if strongly_resolves_unchecked(d, w, u, v) {
                            bits[idx / 64] |= 1 << (idx % 64);
                        }
                        idx += 1;
                    }
                }
                bits
            })
            .collect();
        StrongCheck {
            words,
            resolved_by,
            full,
        }
    }
}

impl Incremental for StrongCheck {
    type State = Vec<u64>;

    fn empty(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn push(&self, state: &Vec<u64>, v: usize) -> Vec<u64> {
        state.iter().zip(&self.resolved_by[v]).map(|(a, b)| a | b).collect()
    }

    fn accepts(&self, state: &Vec<u64>) -> bool {
        *state == self.full
    }
}

/// Fixed-cardinality search over `forced ∪ (m members of candidates)`.
struct Problem<'a, C: Incremental> {
    check: &'a C,
    candidates: Vec<usize>,
    /// Group index of each vertex, if any.
    group_of: Vec<Option<usize>>,
    /// Largest candidate index that can still hit each group.
    group_last: Vec<usize>,
    meter: &'a Meter,
}

struct Frame {
    hits: Vec<u32>,
    unhit: usize,
}

impl<C: Incremental> Problem<'_, C> {
    fn search(&self, base: &C::State, frame: &Frame, slots: usize, parallel: bool) -> Result<Option<Vec<usize>>> {
        if slots == 0 {
            self.meter.tick()?;
            return Ok(self.check.accepts(base).then(Vec::new));
        }
        if frame.unhit > slots || self.candidates.len() < slots {
            return Ok(None);
        }
        let last_start = self.candidates.len() - slots;
        if parallel {
            (0..=last_start)
                .into_par_iter()
                .map(|i| self.branch(base, frame, i, slots))
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .unwrap_or(Ok(None))
        } else {
            for i in 0..=last_start {
                if let Some(found) = self.branch(base, frame, i, slots)? {
                    return Ok(Some(found));
                }
            }
            Ok(None)
        }
    }

    /// Search with `candidates[first]` as the smallest free member.
    fn branch(&self, base: &C::State, frame: &Frame, first: usize, slots: usize) -> Result<Option<Vec<usize>>> {
        if self.deadline_passed(frame, first) {
            return Ok(None);
        }
        let mut frame = Frame {
            hits: frame.hits.clone(),
            unhit: frame.unhit,
        };
        self.enter(&mut frame, self.candidates[first]);
        let state = self.check.push(base, self.candidates[first]);
        let mut chosen = vec![self.candidates[first]];
        let found = self.dfs(&state, &mut frame, first + 1, slots - 1, &mut chosen)?;
        Ok(found.then_some(chosen))
    }

    fn dfs(
        &self,
        state: &C::State,
        frame: &mut Frame,
        start: usize,
        slots: usize,
        chosen: &mut Vec<usize>,
    ) -> Result<bool> {
        if slots == 0 {
            self.meter.tick()?;
            return Ok(self.check.accepts(state));
        }
        if frame.unhit > slots {
            return Ok(false);
        }
        self.meter.check_clock()?;
        let end = self.candidates.len() + 1 - slots;
        for i in start..end {
            if self.deadline_passed(frame, i) {
                break;
            }
            let v = self.candidates[i];
            self.enter(frame, v);
            chosen.push(v);
            let next = self.check.push(state, v);
            if self.dfs(&next, frame, i + 1, slots - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
            self.leave(frame, v);
        }
        Ok(false)
    }

    /// True when some unhit group has no candidate at index `>= i`.
    fn deadline_passed(&self, frame: &Frame, i: usize) -> bool {
        frame.unhit > 0
            && frame
                .hits
                .iter()
                .zip(&self.group_last)
                .any(|(&h, &last)| h == 0 && last < i)
    }

    fn enter(&self, frame: &mut Frame, v: usize) {
        if let Some(gi) = self.group_of[v] {
            if frame.hits[gi] == 0 {
                frame.unhit -= 1;
            }
            frame.hits[gi] += 1;
        }
    }

    fn leave(&self, frame: &mut Frame, v: usize) {
        if let Some(gi) = self.group_of[v] {
            frame.hits[gi] -= 1;
            if frame.hits[gi] == 0 {
                frame.unhit += 1;
            }
        }
    }
}

fn run<C: Incremental>(
    check: &C,
    kind: Kind,
    n: usize,
    forced: &[usize],
    groups: &[Vec<usize>],
    opts: &SolveOptions,
    meter: &Meter,
) -> Result<Option<Vec<usize>>> {
    let mut is_forced = vec![false; n];
    for &f in forced {
        is_forced[f] = true;
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| !is_forced[v]).collect();

    let mut group_of = vec![None; n];
    for (gi, group) in groups.iter().enumerate() {
        for &v in group {
            group_of[v] = Some(gi);
        }
    }
    let mut hits = vec![0u32; groups.len()];
    for &f in forced {
        if let Some(gi) = group_of[f] {
            hits[gi] += 1;
        }
    }
    let group_last: Vec<usize> = groups
        .iter()
        .map(|group| {
            group
                .iter()
                .filter_map(|v| candidates.binary_search(v).ok())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let unhit = hits.iter().filter(|&&h| h == 0).count();
    // an unhit group without free candidates can never be hit
    if groups
        .iter()
        .zip(&hits)
        .any(|(g, &h)| h == 0 && !g.iter().any(|v| !is_forced[*v]))
    {
        return Ok(None);
    }

    let problem = Problem {
        check,
        candidates,
        group_of,
        group_last,
        meter,
    };
    let mut base = check.empty();
    for &f in forced {
        base = check.push(&base, f);
    }
    let frame = Frame { hits, unhit };
    let lower = kind.min_size().max(forced.len() + unhit);
    for size in lower..=n {
        let slots = size - forced.len();
        if let Some(free) = problem.search(&base, &frame, slots, opts.parallel)? {
            let mut witness: Vec<usize> = forced.iter().copied().chain(free).collect();
            witness.sort_unstable();
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

pub(super) fn pruned(kind: Kind, g: &Graph, d: &DistanceMatrix, opts: &SolveOptions) -> Result<Outcome> {
    let n = g.order();
    // all members of each twin class except its largest
    let forced: Vec<usize> = {
        let mut f: Vec<usize> = twin_classes(g)
            .into_iter()
            .flat_map(|mut c| {
                c.pop();
                c
            })
            .collect();
        f.sort_unstable();
        f
    };
    let (groups, family_pruned) = match (opts.family_pruning, g.family()) {
        (true, Some(family)) if family.layers() >= 2 => (family.last_layer_unit_ids(), true),
        _ => (Vec::new(), false),
    };

    let meter = Meter::new(&opts.budget);
    let diameter = d.diameter() as usize;
    let found = match kind {
        Kind::Resolving => run(
            &ResolvingCheck { d, keys: diameter + 1 },
            kind,
            n,
            &forced,
            &groups,
            opts,
            &meter,
        )?,
        Kind::Doubly => run(&DoublyCheck { d, diameter }, kind, n, &forced, &groups, opts, &meter)?,
        Kind::Strong => run(&StrongCheck::new(d), kind, n, &forced, &groups, opts, &meter)?,
    };
    let witness = found.ok_or_else(|| {
        Error::Invariant(format!("pruned search found no {kind} set within the search space"))
    })?;
    Ok(Outcome {
        witness: OrderedVertexSet::from_trusted(witness),
        examined: meter.examined(),
        forced: forced.len(),
        family_pruned,
    })
}
