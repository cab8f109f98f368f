//! Oriented graphs on at most 64 vertices, inversions and decycling families.
//!
//! Adjacency is one `u64` out-row per vertex. A family of vertex sets and its
//! characteristic-vector view are interchangeable: bit `i` of vertex `v`'s
//! vector records whether `v` lies in the `i`-th set, and an arc ends up
//! reversed after all inversions iff the vectors of its endpoints have dot
//! product 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::f2::{low_mask, rank_of_rows, BitVec, SymMatrix, MAX_WIDTH};

/// Largest order accepted by [`enumerate_tournaments`] and canonical forms.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// A subset of the vertices of a host digraph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        VertexSet(vertices.into_iter().fold(0, |acc, v| acc | (1u64 << v)))
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn is_valid_for(&self, n: usize) -> bool {
        self.0 & !low_mask(n) == 0
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An ordered sequence of vertex sets to invert one after another.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct InversionFamily {
    pub sets: Vec<VertexSet>,
}

impl InversionFamily {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        InversionFamily { sets }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn validate(&self, n: usize) -> Result<()> {
        for set in &self.sets {
            if !set.is_valid_for(n) {
                let vertex = (63 - set.0.leading_zeros()) as usize;
                return Err(Error::VertexOutOfRange { vertex, n });
            }
        }
        Ok(())
    }

    /// Parses one set per line of space-separated 0-based indices. A blank
    /// line is an empty set.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut sets = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let mut set = 0u64;
            for tok in line.split_whitespace() {
                let at = offset + (tok.as_ptr() as usize - line.as_ptr() as usize);
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(at, format!("bad vertex index {tok:?}")))?;
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                set |= 1 << v;
            }
            sets.push(VertexSet(set));
            offset += line.len() + 1;
        }
        Ok(InversionFamily { sets })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for set in &self.sets {
            let line: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Restriction to `vertices`, relabelled by position in that slice.
    pub fn restrict(&self, vertices: &[usize]) -> Self {
        let sets = self
            .sets
            .iter()
            .map(|s| VertexSet::from_vertices(vertices.iter().enumerate().filter(|(_, &v)| s.contains(v)).map(|(i, _)| i)))
            .collect();
        InversionFamily { sets }
    }
}

/// One characteristic vector per vertex, all of width `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorAssignment {
    pub k: usize,
    pub vecs: Vec<BitVec>,
}

impl VectorAssignment {
    pub fn new(k: usize, vecs: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = vecs.iter().find(|v| v.width() != k) {
            return Err(Error::WidthMismatch {
                left: k,
                right: bad.width(),
            });
        }
        Ok(VectorAssignment { k, vecs })
    }

    pub fn from_bits(k: usize, bits: &[u64]) -> Self {
        VectorAssignment {
            k,
            vecs: bits.iter().map(|&b| BitVec::new(k, b)).collect(),
        }
    }
}

/// Bit `i` of vertex `v`'s vector is `v ∈ Xᵢ`.
pub fn family_to_assignment(family: &InversionFamily, n: usize) -> Result<VectorAssignment> {
    let k = family.len();
    if k > MAX_WIDTH {
        return Err(Error::TooLarge {
            what: "family length",
            got: k,
            limit: MAX_WIDTH,
        });
    }
    family.validate(n)?;
    let vecs = (0..n)
        .map(|v| {
            let bits = family
                .sets
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(v))
                .fold(0u64, |acc, (i, _)| acc | (1 << i));
            BitVec::new(k, bits)
        })
        .collect();
    Ok(VectorAssignment { k, vecs })
}

pub fn assignment_to_family(assignment: &VectorAssignment) -> InversionFamily {
    let sets = (0..assignment.k)
        .map(|i| VertexSet::from_vertices((0..assignment.vecs.len()).filter(|&v| assignment.vecs[v].get(i))))
        .collect();
    InversionFamily { sets }
}

/// Rank over F2 of the vertex vectors.
pub fn family_rank(assignment: &VectorAssignment) -> usize {
    let rows: Vec<u64> = assignment.vecs.iter().map(BitVec::bits).collect();
    rank_of_rows(&rows)
}

/// Every vertex vector is orthogonal to the all-ones vector.
pub fn is_even_weight_assignment(assignment: &VectorAssignment) -> bool {
    assignment.vecs.iter().all(|v| v.weight() % 2 == 0)
}

/// Loop-free digraph without 2-cycles.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_WIDTH, "digraph order {n} exceeds {MAX_WIDTH}");
        Digraph { n, out: vec![0; n] }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_WIDTH {
            return Err(Error::TooLarge {
                what: "digraph order",
                got: n,
                limit: MAX_WIDTH,
            });
        }
        let mut d = Self::empty(n);
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Validates orientation of packed out-rows.
    pub fn from_out_rows(out: Vec<u64>) -> Result<Self> {
        let n = out.len();
        if n > MAX_WIDTH {
            return Err(Error::TooLarge {
                what: "digraph order",
                got: n,
                limit: MAX_WIDTH,
            });
        }
        for (u, &row) in out.iter().enumerate() {
            if row & !low_mask(n) != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: (63 - row.leading_zeros()) as usize,
                    n,
                });
            }
            if (row >> u) & 1 == 1 {
                return Err(Error::NotOriented(format!("loop at vertex {u}")));
            }
            for v in VertexSet(row).iter() {
                if (out[v] >> u) & 1 == 1 {
                    return Err(Error::NotOriented(format!("2-cycle between {u} and {v}")));
                }
            }
        }
        Ok(Digraph { n, out })
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::NotOriented(format!("loop at vertex {u}")));
        }
        if self.has_arc(v, u) {
            return Err(Error::NotOriented(format!("2-cycle between {u} and {v}")));
        }
        self.out[u] |= 1 << v;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn out_rows(&self) -> &[u64] {
        &self.out
    }

    pub fn out_mask(&self, v: usize) -> u64 {
        self.out[v]
    }

    pub fn in_mask(&self, v: usize) -> u64 {
        self.out
            .iter()
            .enumerate()
            .filter(|(_, &row)| (row >> v) & 1 == 1)
            .fold(0, |acc, (u, _)| acc | (1 << u))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        (self.out[u] >> v) & 1 == 1
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| VertexSet(self.out[u]).iter().map(move |v| (u, v)))
    }

    pub fn is_tournament(&self) -> bool {
        self.arc_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Induced subdigraph on `vertices`, relabelled by position.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut d = Digraph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if self.has_arc(u, v) {
                    d.out[a] |= 1 << b;
                }
            }
        }
        d
    }

    /// Reverses every arc with both ends in `set`.
    pub fn invert(&self, set: VertexSet) -> Digraph {
        let x = set.0 & low_mask(self.n);
        let mut out = self.out.clone();
        for u in VertexSet(x).iter() {
            // arcs u -> v inside X become v -> u
            let inside = self.out[u] & x;
            out[u] &= !inside;
            for v in VertexSet(inside).iter() {
                out[v] |= 1 << u;
            }
        }
        Digraph { n: self.n, out }
    }

    /// Inverts the sets one after another.
    pub fn apply_family(&self, family: &InversionFamily) -> Result<Digraph> {
        family.validate(self.n)?;
        Ok(family.sets.iter().fold(self.clone(), |d, &s| d.invert(s)))
    }

    /// Same result as [`Digraph::apply_family`], computed per arc: an arc
    /// flips iff it lies inside an odd number of sets.
    pub fn apply_family_parity(&self, family: &InversionFamily) -> Result<Digraph> {
        family.validate(self.n)?;
        let mut d = Digraph::empty(self.n);
        for (u, v) in self.arcs() {
            let inside = family.sets.iter().filter(|s| s.contains(u) && s.contains(v)).count();
            if inside % 2 == 1 {
                d.out[v] |= 1 << u;
            } else {
                d.out[u] |= 1 << v;
            }
        }
        Ok(d)
    }

    /// Reverses arc `uv` iff `𝐮·𝐯 = 1`.
    pub fn apply_assignment(&self, assignment: &VectorAssignment) -> Result<Digraph> {
        if assignment.vecs.len() != self.n {
            return Err(Error::usage(format!(
                "assignment covers {} vertices, digraph has {}",
                assignment.vecs.len(),
                self.n
            )));
        }
        let mut d = Digraph::empty(self.n);
        for (u, v) in self.arcs() {
            if assignment.vecs[u].dot(&assignment.vecs[v])? {
                d.out[v] |= 1 << u;
            } else {
                d.out[u] |= 1 << v;
            }
        }
        Ok(d)
    }

    /// Kahn's algorithm, always taking the smallest available vertex.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut remaining = low_mask(self.n);
        let in_masks: Vec<u64> = (0..self.n).map(|v| self.in_mask(v)).collect();
        let mut order = Vec::with_capacity(self.n);
        while remaining != 0 {
            let v = VertexSet(remaining).iter().find(|&v| in_masks[v] & remaining == 0)?;
            order.push(v);
            remaining &= !(1 << v);
        }
        Some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Some directed cycle, as a vertex sequence without the closing repeat.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        // 0 = unseen, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, self.out[root])];
            state[root] = 1;
            while let Some((u, rest)) = stack.last_mut() {
                let u = *u;
                if *rest == 0 {
                    state[u] = 2;
                    stack.pop();
                    continue;
                }
                let v = rest.trailing_zeros() as usize;
                *rest &= *rest - 1;
                match state[v] {
                    0 => {
                        state[v] = 1;
                        parent[v] = u;
                        stack.push((v, self.out[v]));
                    }
                    1 => {
                        let mut cycle = vec![u];
                        let mut w = u;
                        while w != v {
                            w = parent[w];
                            cycle.push(w);
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    _ => {}
                }
            }
        }
        None
    }

    pub fn reverse(&self) -> Digraph {
        let out = (0..self.n).map(|v| self.in_mask(v)).collect();
        Digraph { n: self.n, out }
    }

    /// Off-diagonal matrix marking the pairs whose arc points against `order`
    /// (`order[0]` first). The diagonal is left zero.
    pub fn flip_matrix(&self, order: &[usize]) -> Result<SymMatrix> {
        let pos = self.positions(order)?;
        let mut m = SymMatrix::zeros(self.n);
        for (u, v) in self.arcs() {
            if pos[u] > pos[v] {
                m.set(u, v, true);
            }
        }
        Ok(m)
    }

    fn positions(&self, order: &[usize]) -> Result<Vec<usize>> {
        let mut pos = vec![usize::MAX; self.n];
        if order.len() != self.n {
            return Err(Error::usage(format!(
                "order has {} entries, expected {}",
                order.len(),
                self.n
            )));
        }
        for (i, &v) in order.iter().enumerate() {
            if v >= self.n || pos[v] != usize::MAX {
                return Err(Error::usage(format!("order is not a permutation at entry {i}")));
            }
            pos[v] = i;
        }
        Ok(pos)
    }

    /// Adds an arc for every non-adjacent pair so that `family` still decycles
    /// the result: the new arc is oriented so that, after the flips the family
    /// induces on it, it agrees with the smallest-index topological order of
    /// `apply_family(self, family)`.
    pub fn extend_to_tournament(&self, family: &InversionFamily) -> Result<Digraph> {
        let flipped = self.apply_family(family)?;
        let order = flipped.topological_order().ok_or_else(|| {
            Error::usage("family does not decycle the digraph; cannot extend to a tournament")
        })?;
        let pos = self.positions(&order)?;
        let assignment = family_to_assignment(family, self.n)?;
        let mut t = self.clone();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adjacent(u, v) {
                    continue;
                }
                let (first, second) = if pos[u] < pos[v] { (u, v) } else { (v, u) };
                if assignment.vecs[u].dot(&assignment.vecs[v])? {
                    t.out[second] |= 1 << first;
                } else {
                    t.out[first] |= 1 << second;
                }
            }
        }
        Ok(t)
    }

    /// Off-diagonal adjacency bits, row-major, as one integer (`n ≤ 8`).
    fn adjacency_code(&self, perm: &[usize]) -> u64 {
        // perm[i] = original vertex placed at position i
        let mut code = 0u64;
        let mut t = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                if self.has_arc(perm[i], perm[j]) {
                    code |= 1 << t;
                }
                t += 1;
            }
        }
        code
    }

    /// Minimum adjacency encoding over all relabellings, by brute force.
    pub fn canonical_code(&self) -> Result<u64> {
        if self.n > MAX_ENUMERATION_ORDER {
            return Err(Error::TooLarge {
                what: "order for canonical form",
                got: self.n,
                limit: MAX_ENUMERATION_ORDER,
            });
        }
        let mut best = u64::MAX;
        for_each_permutation(self.n, |perm| {
            best = best.min(self.adjacency_code(perm));
        });
        Ok(best)
    }

    pub fn is_isomorphic(&self, other: &Digraph) -> Result<bool> {
        Ok(self.n == other.n
            && self.arc_count() == other.arc_count()
            && self.canonical_code()? == other.canonical_code()?)
    }

    /// Parses the adjacency-matrix text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::usage("empty digraph file"))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::usage(format!("bad vertex count {header:?}")))?;
        if n > MAX_WIDTH {
            return Err(Error::TooLarge {
                what: "digraph order",
                got: n,
                limit: MAX_WIDTH,
            });
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::usage(format!("expected {n} rows, found {i}")))?;
            rows.push(parse_row(line, n, i)?);
        }
        if lines.next().is_some() {
            return Err(Error::usage("trailing data after adjacency rows"));
        }
        Self::from_out_rows(rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &row in &self.out {
            s.push_str(&BitVec::new(self.n, row).to_string());
            s.push('\n');
        }
        s
    }

    /// One-line encoding: adjacency rows joined by `/`. The empty digraph is `-`.
    pub fn to_code(&self) -> String {
        if self.n == 0 {
            return "-".to_string();
        }
        self.out
            .iter()
            .map(|&r| BitVec::new(self.n, r).to_string())
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn from_code(code: &str) -> Result<Self> {
        let code = code.trim();
        if code == "-" {
            return Ok(Digraph::empty(0));
        }
        let parts: Vec<&str> = code.split('/').collect();
        let n = parts.len();
        if n > MAX_WIDTH {
            return Err(Error::TooLarge {
                what: "digraph order",
                got: n,
                limit: MAX_WIDTH,
            });
        }
        let rows = parts
            .iter()
            .enumerate()
            .map(|(i, p)| parse_row(p, n, i))
            .collect::<Result<Vec<_>>>()?;
        Self::from_out_rows(rows)
    }
}

fn parse_row(line: &str, n: usize, i: usize) -> Result<u64> {
    if line.len() != n {
        return Err(Error::usage(format!(
            "row {i} has {} entries, expected {n}",
            line.len()
        )));
    }
    let v: BitVec = line.parse()?;
    Ok(v.bits())
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({})", self.to_code())
    }
}

/// Heap's algorithm; `f` sees each permutation of `0..n` exactly once.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn transitive_tournament(n: usize) -> Digraph {
    let out = (0..n).map(|i| low_mask(n) & !low_mask(i + 1)).collect();
    Digraph { n, out }
}

/// Number of unordered pairs, i.e. bits in a labelled tournament code.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The labelled tournament whose pairs `i < j` (in row-major order) have
/// arc `i → j` when the matching bit of `code` is 1 and `j → i` otherwise.
pub fn tournament_from_code(n: usize, code: u64) -> Digraph {
    let mut d = Digraph::empty(n);
    let mut t = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if (code >> t) & 1 == 1 {
                d.out[i] |= 1 << j;
            } else {
                d.out[j] |= 1 << i;
            }
            t += 1;
        }
    }
    d
}

/// Inverse of [`tournament_from_code`]; `None` unless `d` is a tournament.
pub fn tournament_code(d: &Digraph) -> Option<u64> {
    if !d.is_tournament() {
        return None;
    }
    let mut code = 0u64;
    let mut t = 0;
    for i in 0..d.n {
        for j in (i + 1)..d.n {
            if d.has_arc(i, j) {
                code |= 1 << t;
            }
            t += 1;
        }
    }
    Some(code)
}

/// All `2^(n(n-1)/2)` labelled tournaments on `n ≤ 7` vertices, in code order.
pub fn enumerate_tournaments(n: usize) -> Result<impl Iterator<Item = Digraph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge {
            what: "tournament order",
            got: n,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    Ok((0..(1u64 << pair_count(n))).map(move |code| tournament_from_code(n, code)))
}

/// One tournament per isomorphism class: the member with the smallest code.
/// Classes come out ordered by that code.
pub fn tournament_classes(n: usize) -> Result<Vec<Digraph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge {
            what: "tournament order",
            got: n,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    let total = 1usize << pair_count(n);
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    for code in 0..total {
        if seen[code] {
            continue;
        }
        let d = tournament_from_code(n, code as u64);
        for_each_permutation(n, |perm| {
            let image = d.induced(perm);
            let c = tournament_code(&image).expect("relabelled tournament") as usize;
            seen[c] = true;
        });
        reps.push(d);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Digraph {
        Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(vs.iter().copied())
    }

    #[test]
    fn invert_examples() {
        let d = c3();
        assert_eq!(d.invert(VertexSet::EMPTY), d);
        let all = d.invert(VertexSet::full(3));
        assert_eq!(all, Digraph::from_arcs(3, &[(1, 0), (2, 1), (0, 2)]).unwrap());
        assert!(all.find_cycle().is_some());
        assert!(d.invert(set(&[0, 1])).is_acyclic());
    }

    #[test]
    fn oriented_invariants_enforced() {
        let mut d = Digraph::empty(3);
        d.add_arc(0, 1).unwrap();
        assert!(matches!(d.add_arc(1, 0), Err(Error::NotOriented(_))));
        assert!(matches!(d.add_arc(2, 2), Err(Error::NotOriented(_))));
        assert!(matches!(d.add_arc(0, 3), Err(Error::VertexOutOfRange { .. })));
        assert!(Digraph::from_out_rows(vec![0b10, 0b01]).is_err());
    }

    #[test]
    fn topological_order_examples() {
        assert_eq!(transitive_tournament(4).topological_order(), Some(vec![0, 1, 2, 3]));
        assert_eq!(c3().topological_order(), None);
        assert_eq!(c3().find_cycle(), Some(vec![0, 1, 2]));
        assert_eq!(transitive_tournament(5).find_cycle(), None);
    }

    #[test]
    fn apply_family_examples() {
        let d = c3();
        assert_eq!(d.apply_family(&InversionFamily::empty()).unwrap(), d);
        let f = InversionFamily::new(vec![set(&[0, 1]), set(&[1, 2])]);
        let mut twice = f.clone();
        twice.sets.extend(f.sets.iter().copied());
        assert_eq!(d.apply_family(&twice).unwrap(), d);
        let bad = InversionFamily::new(vec![set(&[5])]);
        assert!(matches!(d.apply_family(&bad), Err(Error::VertexOutOfRange { vertex: 5, n: 3 })));
    }

    #[test]
    fn assignment_conversions() {
        let empty = family_to_assignment(&InversionFamily::empty(), 3).unwrap();
        assert_eq!(empty.k, 0);
        assert!(empty.vecs.iter().all(|v| v.is_zero() && v.width() == 0));

        let f = InversionFamily::new(vec![set(&[0, 1])]);
        let a = family_to_assignment(&f, 3).unwrap();
        assert_eq!(a.k, 1);
        assert_eq!(a.vecs, vec![BitVec::ones(1), BitVec::ones(1), BitVec::zeros(1)]);
        assert_eq!(assignment_to_family(&a), f);
    }

    #[test]
    fn apply_assignment_examples() {
        let d = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        let zero = VectorAssignment::from_bits(2, &[0, 0]);
        assert_eq!(d.apply_assignment(&zero).unwrap(), d);
        let same = VectorAssignment::from_bits(2, &[0b01, 0b01]);
        assert_eq!(d.apply_assignment(&same).unwrap(), d.reverse());
    }

    #[test]
    fn flip_matrix_examples() {
        let tt = transitive_tournament(4);
        assert!(tt.flip_matrix(&[0, 1, 2, 3]).unwrap().is_zero());
        let rev = tt.flip_matrix(&[3, 2, 1, 0]).unwrap();
        assert_eq!(rev, SymMatrix::all_ones(4).with_diagonal(0));
        let mut orders = Vec::new();
        for_each_permutation(3, |p| orders.push(p.to_vec()));
        // rotations of the cycle disagree on one arc, the other orders on two
        let mut per_count = [0; 4];
        for order in orders {
            let m = c3().flip_matrix(&order).unwrap();
            let pairs = m.rows().iter().map(|r| r.count_ones()).sum::<u32>() / 2;
            per_count[pairs as usize] += 1;
        }
        assert_eq!(per_count, [0, 3, 3, 0]);
        assert!(tt.flip_matrix(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn reverse_examples() {
        let tt = transitive_tournament(5);
        assert_eq!(tt.reverse().topological_order(), Some(vec![4, 3, 2, 1, 0]));
        assert!(c3().reverse().is_isomorphic(&c3()).unwrap());
        assert_eq!(c3().reverse().reverse(), c3());
    }

    #[test]
    fn rank_and_weight() {
        let zero = VectorAssignment::from_bits(3, &[0, 0, 0]);
        assert_eq!(family_rank(&zero), 0);
        assert!(is_even_weight_assignment(&zero));
        let odd = VectorAssignment::from_bits(3, &[0b011, 0b100]);
        assert!(!is_even_weight_assignment(&odd));
        assert_eq!(family_rank(&odd), 2);
        // u = 0, v = w = 1 with odd k: v and w have odd weight
        let ext = VectorAssignment::from_bits(3, &[0, 0b111, 0b111]);
        assert!(!is_even_weight_assignment(&ext));
    }

    #[test]
    fn extend_to_tournament_examples() {
        let t = transitive_tournament(4);
        assert_eq!(t.extend_to_tournament(&InversionFamily::empty()).unwrap(), t);
        let e = Digraph::empty(4).extend_to_tournament(&InversionFamily::empty()).unwrap();
        assert_eq!(e, transitive_tournament(4));
        assert!(c3().extend_to_tournament(&InversionFamily::empty()).is_err());
    }

    #[test]
    fn tournament_enumeration_counts() {
        assert_eq!(enumerate_tournaments(1).unwrap().count(), 1);
        assert_eq!(enumerate_tournaments(3).unwrap().count(), 8);
        assert_eq!(enumerate_tournaments(5).unwrap().count(), 1024);
        assert!(enumerate_tournaments(8).is_err());
        let classes = tournament_classes(3).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().any(|d| d.is_acyclic()));
        assert!(classes.iter().any(|d| d.is_isomorphic(&c3()).unwrap()));
        // OEIS A000568
        let counts: Vec<usize> = (1..=6).map(|n| tournament_classes(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 12, 56]);
    }

    #[test]
    fn text_formats() {
        let d = c3();
        assert_eq!(Digraph::parse(&d.to_text()).unwrap(), d);
        assert_eq!(Digraph::from_code(&d.to_code()).unwrap(), d);
        assert_eq!(d.to_code(), "010/001/100");
        assert!(Digraph::parse("2\n11\n00\n").is_err());
        assert!(Digraph::parse("2\n01\n10\n").is_err());
        let f = InversionFamily::parse("0 1\n\n2\n", 3).unwrap();
        assert_eq!(f.sets, vec![set(&[0, 1]), VertexSet::EMPTY, set(&[2])]);
        assert_eq!(InversionFamily::parse(&f.to_text(), 3).unwrap(), f);
        assert!(matches!(
            InversionFamily::parse("0 7\n", 3),
            Err(Error::VertexOutOfRange { vertex: 7, n: 3 })
        ));
        assert!(matches!(InversionFamily::parse("0 x\n", 3), Err(Error::Parse { offset: 2, .. })));
    }
}
