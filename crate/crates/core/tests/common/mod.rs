#![allow(dead_code)]

use invlab_core::digraph::{pair_count, tournament_from_code, Digraph, InversionFamily, VertexSet};
use invlab_core::f2::SymMatrix;
use rand::Rng;

pub fn random_tournament<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    let code = rng.gen::<u64>() & ((1u64 << pair_count(n)) - 1);
    tournament_from_code(n, code)
}

/// Each pair independently gets no arc, `u → v` or `v → u`.
pub fn random_oriented<R: Rng>(rng: &mut R, n: usize) -> Digraph {
    let mut d = Digraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            match rng.gen_range(0..3) {
                0 => {}
                1 => d.add_arc(u, v).unwrap(),
                _ => d.add_arc(v, u).unwrap(),
            }
        }
    }
    d
}

pub fn random_family<R: Rng>(rng: &mut R, n: usize, k: usize) -> InversionFamily {
    let mask = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    InversionFamily::new((0..k).map(|_| VertexSet(rng.gen::<u64>() & mask)).collect())
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> SymMatrix {
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            if rng.gen::<bool>() {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// All symmetric matrices of order `n`, one per upper-triangle code.
pub fn all_symmetric(n: usize) -> impl Iterator<Item = SymMatrix> {
    let entries = n * (n + 1) / 2;
    (0..1u64 << entries).map(move |c| SymMatrix::from_upper_code(n, c))
}
