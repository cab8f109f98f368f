//! Exact inversion numbers.
//!
//! Three independent backends:
//!
//! * `assign`: DFS over characteristic vectors in F2^k, one vertex at a
//!   time, pruning as soon as the flipped subgraph on the assigned vertices
//!   has a cycle. Iterative deepening on `k` gives the exact value and a
//!   certificate that `k − 1` sets do not suffice.
//! * `order`: for a tournament, the minimum over linear orders of the least
//!   Gram dimension realising that order's flip pattern with a free diagonal.
//! * `subset`: plain enumeration of all sequences of vertex subsets. Only
//!   usable on tiny inputs; it is the ground truth for the other two.
//!
//! The only symmetry used by `assign` is permuting family positions: the
//! coordinates are kept in non-increasing lexicographic order, which every
//! assignment can be brought into without changing any dot product.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::construct::{c3, dijoin};
use crate::digraph::{assignment_to_family, family_rank, Digraph, InversionFamily, VectorAssignment, VertexSet};
use crate::error::{Error, Result};
use crate::f2::{gram_factor_min, low_mask, min_gram_dim_free_diag, BitVec, SymMatrix};
use crate::par;

/// Largest family length the search accepts.
pub const MAX_K: usize = 12;

/// Largest order accepted by the order backend.
pub const ORDER_BACKEND_LIMIT: usize = 10;

/// Largest order accepted by the subset oracle.
pub const SUBSET_ORACLE_LIMIT: usize = 8;

/// Target number of independent subtrees handed to workers.
const SPLIT_TARGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    Assign,
    Order,
    Subset,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Assign => "assign",
            Backend::Order => "order",
            Backend::Subset => "subset",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assign" => Ok(Backend::Assign),
            "order" => Ok(Backend::Order),
            "subset" => Ok(Backend::Subset),
            other => Err(Error::usage(format!("unknown backend {other:?} (assign, order, subset)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub backend: Backend,
    pub max_k: usize,
    /// Node limit per call. Counted in search nodes, not time.
    pub budget: u64,
    /// Restrict every vertex vector to even weight.
    pub even_weight_only: bool,
    /// Same witness and node count regardless of thread count.
    pub deterministic: bool,
    /// Fan subtrees out to the rayon pool (no-op without the `parallel` feature).
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            backend: Backend::Assign,
            max_k: MAX_K,
            budget: u64::MAX,
            even_weight_only: false,
            deterministic: true,
            parallel: par::available(),
        }
    }
}

impl SearchOptions {
    pub fn sequential() -> Self {
        SearchOptions {
            parallel: false,
            ..Self::default()
        }
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_max_k(mut self, max_k: usize) -> Self {
        self.max_k = max_k;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_k > MAX_K {
            return Err(Error::TooLarge {
                what: "max_k",
                got: self.max_k,
                limit: MAX_K,
            });
        }
        Ok(())
    }
}

/// A certified inversion number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvResult {
    pub value: usize,
    pub witness: InversionFamily,
    pub backend: Backend,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl InvResult {
    /// `inv=… k_proof=…_exhausted backend=… nodes=…` followed by the family.
    pub fn report(&self) -> String {
        let proof = match self.value {
            0 => "none".to_string(),
            v => format!("{}_exhausted", v - 1),
        };
        format!(
            "inv={} k_proof={} backend={} nodes={}\n{}",
            self.value,
            proof,
            self.backend,
            self.nodes_explored,
            self.witness.to_text()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvOutcome {
    Exact(InvResult),
    /// Every `k ≤ max_k` was refuted; the value is at least `max_k + 1`.
    AboveLimit {
        backend: Backend,
        max_k: usize,
        nodes_explored: u64,
        elapsed: Duration,
    },
}

impl InvOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            InvOutcome::Exact(r) => Some(r.value),
            InvOutcome::AboveLimit { .. } => None,
        }
    }

    pub fn nodes_explored(&self) -> u64 {
        match self {
            InvOutcome::Exact(r) => r.nodes_explored,
            InvOutcome::AboveLimit { nodes_explored, .. } => *nodes_explored,
        }
    }

    pub fn into_result(self) -> Result<InvResult> {
        match self {
            InvOutcome::Exact(r) => Ok(r),
            InvOutcome::AboveLimit { max_k, .. } => Err(Error::Unresolved { max_k }),
        }
    }

    pub fn report(&self) -> String {
        match self {
            InvOutcome::Exact(r) => r.report(),
            InvOutcome::AboveLimit {
                backend,
                max_k,
                nodes_explored,
                ..
            } => format!(
                "inv>={} k_proof={max_k}_exhausted backend={backend} nodes={nodes_explored} status=unknown\n",
                max_k + 1
            ),
        }
    }
}

/// Dispatches on `opts.backend`.
pub fn inv(d: &Digraph, opts: &SearchOptions) -> Result<InvOutcome> {
    match opts.backend {
        Backend::Assign => inv_exact(d, opts),
        Backend::Order => inv_order_backend(d, opts),
        Backend::Subset => inv_subset(d, opts),
    }
}

/// Exact value through the selected backend, failing if it exceeds `max_k`.
pub fn inv_value(d: &Digraph, opts: &SearchOptions) -> Result<usize> {
    Ok(inv(d, opts)?.into_result()?.value)
}

fn check_witness(d: &Digraph, family: &InversionFamily, backend: Backend) -> Result<()> {
    let flipped = d.apply_family(family)?;
    if let Some(cycle) = flipped.find_cycle() {
        return Err(Error::InvariantViolation(format!(
            "{backend} backend returned a non-decycling witness for {}; cycle {cycle:?}",
            d.to_code()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// assign backend

/// Vertices by descending `|out − in|`, ties by index.
fn search_order(d: &Digraph) -> Vec<usize> {
    let n = d.order();
    let imbalance: Vec<i64> = (0..n)
        .map(|v| (d.out_mask(v).count_ones() as i64 - d.in_mask(v).count_ones() as i64).abs())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(imbalance[v]), v));
    order
}

struct Engine {
    n: usize,
    /// Adjacency relabelled so that search position `p` is vertex `order[p]`.
    out: Vec<u64>,
    inn: Vec<u64>,
    domain: Vec<u64>,
    order: Vec<usize>,
    k: usize,
}

/// Search state after `p` vertices have vectors.
#[derive(Clone)]
struct State {
    p: usize,
    x: Vec<u64>,
    /// `cols[j]`: positions whose vector has coordinate `j` set.
    cols: [u64; MAX_K],
    /// `reach[p * n + a]`: positions reachable from `a` in the flipped graph
    /// on the first `p` positions.
    reach: Vec<u64>,
    /// `ties[p]` bit `j`: coordinates `j` and `j + 1` agree on the first `p` rows.
    ties: Vec<u64>,
}

enum Stop {
    Budget,
    Cancelled,
}

struct Ctl<'a> {
    nodes: u64,
    limit: u64,
    cancel: Option<(&'a AtomicUsize, usize, bool)>,
}

impl Ctl<'_> {
    #[inline]
    fn tick(&mut self) -> std::result::Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Stop::Budget);
        }
        if self.nodes & 0x3ff == 0 {
            if let Some((found, idx, deterministic)) = self.cancel {
                let f = found.load(Ordering::Relaxed);
                if (deterministic && f < idx) || (!deterministic && f != usize::MAX) {
                    return Err(Stop::Cancelled);
                }
            }
        }
        Ok(())
    }
}

impl Engine {
    fn new(d: &Digraph, k: usize, even_weight_only: bool) -> Self {
        let n = d.order();
        let order = search_order(d);
        let g = d.induced(&order);
        let inn = (0..n).map(|v| g.in_mask(v)).collect();
        let domain = (0..(1u64 << k))
            .filter(|v| !even_weight_only || v.count_ones() % 2 == 0)
            .collect();
        Engine {
            n,
            out: g.out_rows().to_vec(),
            inn,
            domain,
            order,
            k,
        }
    }

    fn root(&self) -> State {
        let mut ties = vec![0u64; self.n + 1];
        ties[0] = low_mask(self.k.saturating_sub(1));
        State {
            p: 0,
            x: vec![0; self.n],
            cols: [0; MAX_K],
            reach: vec![0; (self.n + 1) * self.n],
            ties,
        }
    }

    /// Tries vector `x` at position `st.p`; on success fills level `p + 1`
    /// and advances. The caller undoes with [`Engine::unplace`].
    #[inline]
    fn place(&self, st: &mut State, x: u64) -> bool {
        let p = st.p;
        let n = self.n;
        let ties = st.ties[p];
        if ties & !x & (x >> 1) != 0 {
            return false;
        }
        let mut flip = 0u64;
        let mut bits = x;
        while bits != 0 {
            flip ^= st.cols[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        let assigned = low_mask(p);
        let fwd = self.out[p] & assigned;
        let back = self.inn[p] & assigned;
        let out_p = (fwd & !flip) | (back & flip);
        let in_p = (back & !flip) | (fwd & flip);

        let (cur, next) = st.reach.split_at_mut((p + 1) * n);
        let cur = &cur[p * n..];
        let mut reach = out_p;
        let mut rest = out_p;
        while rest != 0 {
            reach |= cur[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        if reach & in_p != 0 {
            return false;
        }
        let gained = reach | (1 << p);
        for a in 0..p {
            let ra = cur[a];
            next[a] = if (in_p >> a) & 1 == 1 || ra & in_p != 0 { ra | gained } else { ra };
        }
        next[p] = reach;
        st.ties[p + 1] = ties & !(x ^ (x >> 1));
        st.x[p] = x;
        let mut bits = x;
        while bits != 0 {
            st.cols[bits.trailing_zeros() as usize] |= 1 << p;
            bits &= bits - 1;
        }
        st.p = p + 1;
        true
    }

    #[inline]
    fn unplace(&self, st: &mut State) {
        st.p -= 1;
        let p = st.p;
        let mut bits = st.x[p];
        while bits != 0 {
            st.cols[bits.trailing_zeros() as usize] &= !(1 << p);
            bits &= bits - 1;
        }
    }

    fn dfs(&self, st: &mut State, ctl: &mut Ctl) -> std::result::Result<bool, Stop> {
        if st.p == self.n {
            return Ok(true);
        }
        for &x in &self.domain {
            ctl.tick()?;
            if self.place(st, x) {
                if self.dfs(st, ctl)? {
                    return Ok(true);
                }
                self.unplace(st);
            }
        }
        Ok(false)
    }

    /// Children of every state, in domain order.
    fn expand(&self, states: Vec<State>, nodes: &mut u64) -> Vec<State> {
        let mut next = Vec::new();
        for mut st in states {
            for &x in &self.domain {
                *nodes += 1;
                if self.place(&mut st, x) {
                    next.push(st.clone());
                    self.unplace(&mut st);
                }
            }
        }
        next
    }

    fn to_assignment(&self, st: &State) -> VectorAssignment {
        let mut bits = vec![0u64; self.n];
        for (p, &v) in self.order.iter().enumerate() {
            bits[v] = st.x[p];
        }
        VectorAssignment::from_bits(self.k, &bits)
    }
}

enum Branch {
    Found(VectorAssignment),
    Exhausted,
    OverBudget,
    Cancelled,
}

/// One level of the search: a family of exactly `k` sets, plus the number of
/// nodes spent.
pub fn search_level(d: &Digraph, k: usize, opts: &SearchOptions) -> Result<(Option<VectorAssignment>, u64)> {
    opts.validate()?;
    if k > MAX_K {
        return Err(Error::TooLarge {
            what: "family length k",
            got: k,
            limit: MAX_K,
        });
    }
    let engine = Engine::new(d, k, opts.even_weight_only);
    let budget = opts.budget;

    // Split the tree breadth-first into enough independent subtrees. The
    // split depends only on the input, so node counts do not depend on the
    // number of threads.
    let mut nodes = 0u64;
    let mut frontier = vec![engine.root()];
    while frontier.len() < SPLIT_TARGET && frontier.first().is_some_and(|s| s.p < engine.n) {
        frontier = engine.expand(frontier, &mut nodes);
        if nodes > budget {
            return Err(Error::BudgetExceeded { budget });
        }
    }
    if let Some(done) = frontier.iter().find(|s| s.p == engine.n) {
        return Ok((Some(engine.to_assignment(done)), nodes));
    }

    let found = AtomicUsize::new(usize::MAX);
    let local_limit = budget.saturating_sub(nodes);
    let outcomes = par::map(&frontier, opts.parallel, |idx, start| {
        let mut st = start.clone();
        let mut ctl = Ctl {
            nodes: 0,
            limit: local_limit,
            cancel: Some((&found, idx, opts.deterministic)),
        };
        let branch = match engine.dfs(&mut st, &mut ctl) {
            Ok(true) => {
                found.fetch_min(idx, Ordering::Relaxed);
                Branch::Found(engine.to_assignment(&st))
            }
            Ok(false) => Branch::Exhausted,
            Err(Stop::Budget) => Branch::OverBudget,
            Err(Stop::Cancelled) => Branch::Cancelled,
        };
        (branch, ctl.nodes)
    });

    if opts.deterministic {
        // Branches before the first success were never cancelled.
        for (branch, used) in outcomes {
            nodes = nodes.saturating_add(used);
            match branch {
                Branch::Found(a) if nodes <= budget => return Ok((Some(a), nodes)),
                Branch::Found(_) | Branch::OverBudget => return Err(Error::BudgetExceeded { budget }),
                Branch::Exhausted if nodes > budget => return Err(Error::BudgetExceeded { budget }),
                Branch::Exhausted => {}
                Branch::Cancelled => unreachable!("cancelled branch ahead of the winner"),
            }
        }
        Ok((None, nodes))
    } else {
        let mut winner = None;
        let mut over = false;
        for (branch, used) in outcomes {
            nodes = nodes.saturating_add(used);
            match branch {
                Branch::Found(a) => {
                    winner.get_or_insert(a);
                }
                Branch::OverBudget => over = true,
                Branch::Exhausted | Branch::Cancelled => {}
            }
        }
        match winner {
            Some(a) => Ok((Some(a), nodes)),
            None if over || nodes > budget => Err(Error::BudgetExceeded { budget }),
            None => Ok((None, nodes)),
        }
    }
}

/// A vector assignment in F2^k whose flips make `d` acyclic, if one exists.
pub fn exists_family(d: &Digraph, k: usize, opts: &SearchOptions) -> Result<Option<VectorAssignment>> {
    let (found, _) = search_level(d, k, opts)?;
    if let Some(a) = &found {
        let flipped = d.apply_assignment(a)?;
        if !flipped.is_acyclic() {
            return Err(Error::InvariantViolation(format!(
                "search returned a non-decycling assignment for {}",
                d.to_code()
            )));
        }
    }
    Ok(found)
}

/// Iterative deepening over `k = 0, 1, …, max_k` with the `assign` search.
pub fn inv_exact(d: &Digraph, opts: &SearchOptions) -> Result<InvOutcome> {
    opts.validate()?;
    let start = Instant::now();
    let mut nodes = 0u64;
    for k in 0..=opts.max_k {
        let level_opts = SearchOptions {
            budget: opts.budget.saturating_sub(nodes),
            ..opts.clone()
        };
        let (found, used) = search_level(d, k, &level_opts).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Error::BudgetExceeded { budget: opts.budget },
            other => other,
        })?;
        nodes += used;
        if let Some(a) = found {
            let witness = assignment_to_family(&a);
            check_witness(d, &witness, Backend::Assign)?;
            return Ok(InvOutcome::Exact(InvResult {
                value: k,
                witness,
                backend: Backend::Assign,
                nodes_explored: nodes,
                elapsed: start.elapsed(),
            }));
        }
    }
    Ok(InvOutcome::AboveLimit {
        backend: Backend::Assign,
        max_k: opts.max_k,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

// ---------------------------------------------------------------------------
// order backend

/// Flip pattern on an ordered prefix of a tournament: entry `(a, b)` is set
/// when the arc between `prefix[a]` and `prefix[b]` points backwards.
fn prefix_flips(d: &Digraph, prefix: &[usize]) -> SymMatrix {
    let mut m = SymMatrix::zeros(prefix.len());
    for (a, &u) in prefix.iter().enumerate() {
        for (b, &v) in prefix.iter().enumerate().skip(a + 1) {
            if d.has_arc(v, u) {
                m.set(a, b, true);
            }
        }
    }
    m
}

struct OrderSearch<'a> {
    d: &'a Digraph,
    budget: u64,
    nodes: u64,
    best: usize,
    best_order: Vec<usize>,
    best_diag: u64,
}

impl OrderSearch<'_> {
    fn extend(&mut self, prefix: &mut Vec<usize>, remaining: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let m = prefix_flips(self.d, prefix);
        let (k, diag) = min_gram_dim_free_diag(&m, ORDER_BACKEND_LIMIT)?;
        // The prefix block is a principal submatrix of every completion, so
        // its dimension is a lower bound.
        if k >= self.best {
            return Ok(());
        }
        if remaining == 0 {
            self.best = k;
            self.best_order = prefix.clone();
            self.best_diag = diag.bits();
            return Ok(());
        }
        for v in VertexSet(remaining).iter() {
            prefix.push(v);
            self.extend(prefix, remaining & !(1 << v))?;
            prefix.pop();
        }
        Ok(())
    }
}

/// `min over orders π` of the free-diagonal Gram dimension of the flip
/// pattern of `π`. Tournaments only, `n ≤ 10`.
pub fn inv_order_backend(d: &Digraph, opts: &SearchOptions) -> Result<InvOutcome> {
    opts.validate()?;
    let n = d.order();
    if n > ORDER_BACKEND_LIMIT {
        return Err(Error::TooLarge {
            what: "order backend digraph order",
            got: n,
            limit: ORDER_BACKEND_LIMIT,
        });
    }
    if !d.is_tournament() {
        return Err(Error::usage("the order backend only handles tournaments"));
    }
    let start = Instant::now();
    let mut search = OrderSearch {
        d,
        budget: opts.budget,
        nodes: 0,
        best: opts.max_k + 1,
        best_order: Vec::new(),
        best_diag: 0,
    };
    search.extend(&mut Vec::with_capacity(n), low_mask(n))?;
    if search.best > opts.max_k {
        return Ok(InvOutcome::AboveLimit {
            backend: Backend::Order,
            max_k: opts.max_k,
            nodes_explored: search.nodes,
            elapsed: start.elapsed(),
        });
    }

    // Realise the optimal pattern with exactly `best` coordinates.
    let order = &search.best_order;
    let pattern = prefix_flips(d, order).with_diagonal(search.best_diag);
    let factor = gram_factor_min(&pattern);
    debug_assert_eq!(factor.k, search.best);
    let mut vecs = vec![BitVec::zeros(factor.k); n];
    for (pos, &v) in order.iter().enumerate() {
        vecs[v] = factor.columns[pos];
    }
    let witness = assignment_to_family(&VectorAssignment::new(factor.k, vecs)?);
    check_witness(d, &witness, Backend::Order)?;
    Ok(InvOutcome::Exact(InvResult {
        value: search.best,
        witness,
        backend: Backend::Order,
        nodes_explored: search.nodes,
        elapsed: start.elapsed(),
    }))
}

// ---------------------------------------------------------------------------
// subset oracle

/// Smallest `k ≤ max_k` with a decycling sequence of `k` subsets, found by
/// trying all `(2ⁿ)ᵏ` sequences; refuses when that count exceeds `budget`.
fn subset_search(d: &Digraph, max_k: usize, budget: u64) -> Result<(Option<InversionFamily>, u64)> {
    let n = d.order();
    if n > SUBSET_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            what: "subset oracle digraph order",
            got: n,
            limit: SUBSET_ORACLE_LIMIT,
        });
    }
    let subsets = 1u64 << n;
    let mut nodes = 0u64;
    for k in 0..=max_k {
        let total = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(subsets));
        match total {
            Some(t) if nodes.saturating_add(t) <= budget => {}
            _ => return Err(Error::BudgetExceeded { budget }),
        }
        let mut seq = vec![0u64; k];
        loop {
            nodes += 1;
            let g = seq.iter().fold(d.clone(), |g, &s| g.invert(VertexSet(s)));
            if g.is_acyclic() {
                let family = InversionFamily::new(seq.iter().map(|&s| VertexSet(s)).collect());
                return Ok((Some(family), nodes));
            }
            // odometer
            let mut i = 0;
            while i < k {
                seq[i] += 1;
                if seq[i] < subsets {
                    break;
                }
                seq[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    Ok((None, nodes))
}

/// Ground-truth value when it is at most `max_k`, `None` when every
/// sequence of at most `max_k` subsets fails.
pub fn inv_subset_oracle(d: &Digraph, max_k: usize, budget: u64) -> Result<Option<usize>> {
    Ok(subset_search(d, max_k, budget)?.0.map(|f| f.len()))
}

fn inv_subset(d: &Digraph, opts: &SearchOptions) -> Result<InvOutcome> {
    opts.validate()?;
    let start = Instant::now();
    let (found, nodes) = subset_search(d, opts.max_k, opts.budget)?;
    Ok(match found {
        Some(witness) => {
            check_witness(d, &witness, Backend::Subset)?;
            InvOutcome::Exact(InvResult {
                value: witness.len(),
                witness,
                backend: Backend::Subset,
                nodes_explored: nodes,
                elapsed: start.elapsed(),
            })
        }
        None => InvOutcome::AboveLimit {
            backend: Backend::Subset,
            max_k: opts.max_k,
            nodes_explored: nodes,
            elapsed: start.elapsed(),
        },
    })
}

// ---------------------------------------------------------------------------
// criteria

/// Whether `inv(C₃ ⇒ D) = inv(D)`.
///
/// Always computed directly on the dijoin. When `inv(D) = k` is odd and at
/// least 3 it is also decided by the even-weight criterion (a `k`-family of
/// `D` with every vector orthogonal to `𝟏`), and the two answers must agree.
pub fn is_c3_tight(d: &Digraph, opts: &SearchOptions) -> Result<bool> {
    let assign = opts.clone().with_backend(Backend::Assign);
    let k = inv_exact(d, &assign)?.into_result()?.value;
    let joined = dijoin(&c3(), d)?;
    let direct = inv_exact(&joined, &assign)?.into_result()?.value;
    if direct != k && direct != k + 1 {
        return Err(Error::InvariantViolation(format!(
            "inv(C3 => D) = {direct} outside [{k}, {}] for D = {}",
            k + 1,
            d.to_code()
        )));
    }
    let tight = direct == k;
    if k >= 3 && k % 2 == 1 {
        let even = SearchOptions {
            even_weight_only: true,
            ..assign
        };
        let criterion = exists_family(d, k, &even)?.is_some();
        if criterion != tight {
            return Err(Error::InvariantViolation(format!(
                "even-weight criterion says {criterion} but direct computation says {tight} for D = {}",
                d.to_code()
            )));
        }
    }
    Ok(tight)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankVerdict {
    pub inv: usize,
    pub rank: usize,
    /// `inv` when even, `inv − 1` when odd.
    pub required: usize,
    pub holds: bool,
}

/// Checks the rank of a decycling assignment against the known inversion
/// number: at least `inv` when it is even, at least `inv − 1` when odd.
pub fn rank_bound(inv: usize, assignment: &VectorAssignment) -> RankVerdict {
    let rank = family_rank(assignment);
    let required = if inv % 2 == 0 { inv } else { inv - 1 };
    RankVerdict {
        inv,
        rank,
        required,
        holds: rank >= required,
    }
}

/// [`rank_bound`] with `inv(D)` computed here. The assignment must decycle `d`.
pub fn rank_lower_bound_check(d: &Digraph, assignment: &VectorAssignment, opts: &SearchOptions) -> Result<RankVerdict> {
    if !d.apply_assignment(assignment)?.is_acyclic() {
        return Err(Error::usage("assignment does not decycle the digraph"));
    }
    let inv = inv_value(d, opts)?;
    Ok(rank_bound(inv, assignment))
}
