//! The signature state machine (basis G, pending set P, syzygy sets S) and
//! the flat engines built on it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};

use serde_json::json;
use thiserror::Error;

use super::{
    make_spair, regular_reduce, rewritable, rewritable_sig, spair_parts, Criterion, Index, IndexOrder, Linear, SPair,
    SigPoly, Signature,
};
use crate::field::OpCounts;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigError {
    #[error("input polynomial {0} is zero")]
    ZeroInput(usize),
}

/// A pending unit of work.
#[derive(Clone, Debug)]
pub enum Entry {
    Pair(SPair),
    /// A fresh unit-signature element for an index whose generator is
    /// reduced again against the current basis.
    Seed {
        sig: Signature,
        poly: Polynomial,
    },
}

impl Entry {
    pub fn sig(&self) -> &Signature {
        match self {
            Entry::Pair(p) => &p.sig,
            Entry::Seed { sig, .. } => sig,
        }
    }

    fn tie_key(&self) -> (usize, usize) {
        match self {
            Entry::Pair(p) => (p.left.max(p.right) + 1, p.left.min(p.right)),
            Entry::Seed { .. } => (0, 0),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub pairs_created: u64,
    pub pairs_selected: u64,
    pub seeds: u64,
    pub rewritten_singular: u64,
    pub rewritten_syzygy: u64,
    pub rewritten_koszul: u64,
    /// Regular reductions performed (S-pairs and seeds actually reduced).
    pub reductions: u64,
    pub zero_reductions: u64,
    pub reduction_steps: u64,
}

impl EngineStats {
    pub fn rewritten(&self) -> u64 {
        self.rewritten_singular + self.rewritten_syzygy + self.rewritten_koszul
    }
}

/// What happened to the entry processed by [`SigState::process_next`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Rewritten(Criterion),
    Zero(Index),
    Nonzero(Index),
}

/// One processed entry, for the trace log.
#[derive(Clone, Debug)]
pub struct TraceRecord {
    pub step: u64,
    pub kind: &'static str,
    pub index: Index,
    pub sig_monomial: Monomial,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub left_rewritable: Option<Criterion>,
    pub right_rewritable: Option<Criterion>,
    pub outcome: &'static str,
}

impl TraceRecord {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "step": self.step,
            "kind": self.kind,
            "sig": { "index": self.index, "monomial": self.sig_monomial.exponents() },
            "left": self.left,
            "right": self.right,
            "left_rewritable": self.left_rewritable.map(Criterion::name),
            "right_rewritable": self.right_rewritable.map(Criterion::name),
            "outcome": self.outcome,
        })
    }
}

/// Pending entries of one index. When `sorted`, entries are in decreasing
/// signature order so the minimum sits at the end.
#[derive(Clone, Debug, Default)]
struct Bucket {
    entries: Vec<Entry>,
    sorted: bool,
}

impl Bucket {
    fn push(&mut self, e: Entry) {
        self.entries.push(e);
        self.sorted = false;
    }

    fn pop_min(&mut self, ring: &Ring) -> Option<Entry> {
        if !self.sorted {
            self.entries.sort_by(|a, b| {
                ring.cmp(&b.sig().monomial, &a.sig().monomial)
                    .then_with(|| b.tie_key().cmp(&a.tie_key()))
            });
            self.sorted = true;
        }
        self.entries.pop()
    }
}

/// Basis `G`, pending entries `P` and per-index syzygy queues `S`.
#[derive(Clone, Debug)]
pub struct SigState {
    elements: Vec<SigPoly>,
    pending: BTreeMap<Index, Bucket>,
    syzygies: BTreeMap<Index, VecDeque<Polynomial>>,
    recorded: BTreeMap<Index, Vec<Polynomial>>,
    criteria: bool,
    stats: EngineStats,
    trace: Option<Vec<TraceRecord>>,
}

impl SigState {
    /// `criteria` toggles the rewritability check (sGB versus plain
    /// signature Buchberger).
    pub fn new(criteria: bool) -> SigState {
        SigState {
            elements: Vec::new(),
            pending: BTreeMap::new(),
            syzygies: BTreeMap::new(),
            recorded: BTreeMap::new(),
            criteria,
            stats: EngineStats::default(),
            trace: None,
        }
    }

    pub fn enable_trace(&mut self) {
        self.trace.get_or_insert_with(Vec::new);
    }

    pub fn trace(&self) -> &[TraceRecord] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn elements(&self) -> &[SigPoly] {
        &self.elements
    }

    pub fn pending(&self) -> impl Iterator<Item = &Entry> + '_ {
        self.pending.values().flat_map(|b| b.entries.iter())
    }

    pub fn pending_len(&self) -> usize {
        self.pending.values().map(|b| b.entries.len()).sum()
    }

    pub fn stats(&self) -> EngineStats {
        self.stats
    }

    /// Every quotient ever recorded at `index`, in recording order.
    pub fn recorded(&self, index: Index) -> &[Polynomial] {
        self.recorded.get(&index).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Quotients recorded at `index` and not yet popped.
    pub fn queued(&self, index: Index) -> usize {
        self.syzygies.get(&index).map_or(0, VecDeque::len)
    }

    pub fn pop_syzygy(&mut self, index: Index) -> Option<Polynomial> {
        self.syzygies.get_mut(&index)?.pop_front()
    }

    /// Appends an element to `G` and creates its regular S-pairs against
    /// every earlier element with a comparable index. Returns its stamp.
    pub fn push(
        &mut self,
        ring: &Ring,
        order: &dyn IndexOrder,
        poly: Polynomial,
        sig: Signature,
        quo: Polynomial,
    ) -> usize {
        let stamp = self.elements.len();
        let zero = poly.is_zero();
        self.elements.push(SigPoly { poly, sig, quo, stamp });
        if !zero {
            for j in 0..stamp {
                if let Some(p) = make_spair(ring, order, &self.elements, stamp, j) {
                    self.pending.entry(p.sig.index).or_default().push(Entry::Pair(p));
                    self.stats.pairs_created += 1;
                }
            }
        }
        stamp
    }

    /// Inserts the input element `(f, (index, 1), 1)`, with `f` made monic.
    pub fn push_generator(&mut self, ring: &Ring, order: &dyn IndexOrder, index: Index, f: &Polynomial) -> usize {
        self.push(
            ring,
            order,
            f.monic(ring),
            Signature::unit(index, ring.nvars()),
            ring.one(),
        )
    }

    /// Queues a reseed of `(f, (index, 1), 1)`; duplicates are ignored.
    pub fn add_seed(&mut self, ring: &Ring, index: Index, f: &Polynomial) {
        let sig = Signature::unit(index, ring.nvars());
        let bucket = self.pending.entry(index).or_default();
        if bucket
            .entries
            .iter()
            .any(|e| matches!(e, Entry::Seed { sig: s, .. } if *s == sig))
        {
            return;
        }
        self.stats.seeds += 1;
        bucket.push(Entry::Seed {
            sig,
            poly: f.monic(ring),
        });
    }

    /// Whether some pending entry has its index inside `scope`.
    pub fn has_pending(&self, scope: &dyn IndexOrder) -> bool {
        self.pending
            .iter()
            .any(|(&i, b)| !b.entries.is_empty() && in_scope(scope, i))
    }

    /// The smallest in-scope index with pending entries.
    fn select(&self, scope: &dyn IndexOrder) -> Option<Index> {
        let mut best: Option<Index> = None;
        for (&i, b) in &self.pending {
            if b.entries.is_empty() || !in_scope(scope, i) {
                continue;
            }
            best = match best {
                Some(cur)
                    if scope
                        .compare(i, cur)
                        .expect("indices within one root path are comparable")
                        != Ordering::Less =>
                {
                    Some(cur)
                }
                _ => Some(i),
            };
        }
        best
    }

    /// Processes the pending entry of minimal signature among those whose
    /// index lies in `scope`. Selection, reduction and rewriting only look at
    /// indices inside `scope`; new pairs are formed with `full`.
    pub fn process_next(&mut self, ring: &Ring, scope: &dyn IndexOrder, full: &dyn IndexOrder) -> Option<Outcome> {
        let k = self.select(scope)?;
        let entry = self
            .pending
            .get_mut(&k)
            .and_then(|b| b.pop_min(ring))
            .expect("selected bucket is nonempty");
        self.stats.pairs_selected += 1;
        let step = self.stats.pairs_selected;
        let (poly, sig, quo, left, right, verdicts) = match entry {
            Entry::Pair(p) => {
                let mut verdicts = (None, None);
                if self.criteria {
                    let g = &self.elements;
                    verdicts = (
                        rewritable(scope, g, &g[p.left], &p.a),
                        rewritable(scope, g, &g[p.right], &p.b),
                    );
                }
                if let Some(c) = verdicts.0.or(verdicts.1) {
                    self.count_rewrite(c);
                    self.log(step, "pair", &p.sig, Some(p.left), Some(p.right), verdicts, "rewritten");
                    return Some(Outcome::Rewritten(c));
                }
                let (poly, quo) = spair_parts(ring, &self.elements, &p);
                (poly, p.sig, quo, Some(p.left), Some(p.right), verdicts)
            }
            Entry::Seed { sig, poly } => {
                let mut verdicts = (None, None);
                if self.criteria {
                    verdicts.0 = rewritable_sig(scope, &self.elements, &sig, None);
                }
                if let Some(c) = verdicts.0 {
                    self.count_rewrite(c);
                    self.log(step, "seed", &sig, None, None, verdicts, "rewritten");
                    return Some(Outcome::Rewritten(c));
                }
                (poly, sig, ring.one(), None, None, verdicts)
            }
        };
        let kind = if left.is_some() { "pair" } else { "seed" };
        let (poly, quo, steps) = regular_reduce(ring, scope, &self.elements, poly, &sig, quo);
        self.stats.reductions += 1;
        self.stats.reduction_steps += steps;
        let index = sig.index;
        let (poly, quo) = normalize(ring, poly, quo);
        if poly.is_zero() {
            self.stats.zero_reductions += 1;
            self.log(step, kind, &sig, left, right, verdicts, "zero");
            if !quo.is_zero() {
                self.syzygies.entry(index).or_default().push_back(quo.clone());
                self.recorded.entry(index).or_default().push(quo.clone());
            }
            self.push(ring, full, poly, sig, quo);
            Some(Outcome::Zero(index))
        } else {
            self.log(step, kind, &sig, left, right, verdicts, "nonzero");
            self.push(ring, full, poly, sig, quo);
            Some(Outcome::Nonzero(index))
        }
    }

    fn count_rewrite(&mut self, c: Criterion) {
        match c {
            Criterion::Singular => self.stats.rewritten_singular += 1,
            Criterion::Syzygy => self.stats.rewritten_syzygy += 1,
            Criterion::Koszul => self.stats.rewritten_koszul += 1,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn log(
        &mut self,
        step: u64,
        kind: &'static str,
        sig: &Signature,
        left: Option<usize>,
        right: Option<usize>,
        verdicts: (Option<Criterion>, Option<Criterion>),
        outcome: &'static str,
    ) {
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceRecord {
                step,
                kind,
                index: sig.index,
                sig_monomial: sig.monomial.clone(),
                left,
                right,
                left_rewritable: verdicts.0,
                right_rewritable: verdicts.1,
                outcome,
            });
        }
    }
}

fn in_scope(scope: &dyn IndexOrder, i: Index) -> bool {
    scope.compare(i, i).is_some()
}

/// Monic poly part (quotient scaled alike), or monic quotient for zero.
fn normalize(ring: &Ring, poly: Polynomial, quo: Polynomial) -> (Polynomial, Polynomial) {
    if poly.is_zero() {
        (poly, quo.monic(ring))
    } else {
        let (p, c) = poly.monic_with_factor(ring);
        (p, quo.scale(ring, c))
    }
}

/// Output of the flat engines.
#[derive(Clone, Debug)]
pub struct SigResult {
    /// Monic inputs, in order; index `i` refers to `inputs[i]`.
    pub inputs: Vec<Polynomial>,
    /// Nonzero poly parts of `G`.
    pub basis: Vec<Polynomial>,
    /// `syzygies[i]`: quotients recorded at index `i`.
    pub syzygies: Vec<Vec<Polynomial>>,
    pub elements: Vec<SigPoly>,
    pub stats: EngineStats,
    pub ops: OpCounts,
    pub trace: Vec<TraceRecord>,
}

fn run(ring: &Ring, fs: &[Polynomial], criteria: bool, trace: bool) -> Result<SigResult, SigError> {
    if let Some(i) = fs.iter().position(Polynomial::is_zero) {
        return Err(SigError::ZeroInput(i));
    }
    let before = ring.ops();
    let mut st = SigState::new(criteria);
    if trace {
        st.enable_trace();
    }
    for (i, f) in fs.iter().enumerate() {
        st.push_generator(ring, &Linear, i, f);
    }
    while st.process_next(ring, &Linear, &Linear).is_some() {}
    let basis = st
        .elements
        .iter()
        .filter(|e| !e.poly.is_zero())
        .map(|e| e.poly.clone())
        .collect();
    let syzygies = (0..fs.len()).map(|i| st.recorded(i).to_vec()).collect();
    Ok(SigResult {
        inputs: fs.iter().map(|f| f.monic(ring)).collect(),
        basis,
        syzygies,
        stats: st.stats,
        ops: ring.ops() - before,
        trace: st.trace.take().unwrap_or_default(),
        elements: st.elements,
    })
}

/// Signature Buchberger: every regular S-pair is reduced.
pub fn buchberger_sig(ring: &Ring, fs: &[Polynomial], trace: bool) -> Result<SigResult, SigError> {
    run(ring, fs, false, trace)
}

/// sGB: signature Buchberger with the rewritability check.
pub fn sgb(ring: &Ring, fs: &[Polynomial], trace: bool) -> Result<SigResult, SigError> {
    run(ring, fs, true, trace)
}
