//! Graph constructions and the explicit decycling families built from them.
//!
//! Blow-ups lay their parts out consecutively: part 0 takes vertices
//! `0..|V(D₀)|`, part 1 the next block, and so on. Dijoins and k-joins are
//! blow-ups, so the same numbering applies to them. Docs index `Qₙ`'s path as
//! `v₁…vₙ`; in code vertex `vᵢ` is index `i - 1`.

mod expr;

pub use expr::{parse_expr, Expr};

use crate::digraph::{family_to_assignment, is_even_weight_assignment, transitive_tournament, Digraph, InversionFamily, VertexSet};
use crate::error::{Error, Result};
use crate::f2::{low_mask, MAX_WIDTH};

/// The directed triangle `0 → 1 → 2 → 0`.
pub fn c3() -> Digraph {
    Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).expect("static arcs")
}

pub fn transitive(n: usize) -> Digraph {
    transitive_tournament(n)
}

/// Transitive tournament with its hamiltonian path `v₁ → … → vₙ` reversed.
pub fn qn(n: usize) -> Digraph {
    let t = transitive_tournament(n);
    let mut rows = t.out_rows().to_vec();
    for i in 0..n.saturating_sub(1) {
        rows[i] &= !(1 << (i + 1));
        rows[i + 1] |= 1 << i;
    }
    Digraph::from_out_rows(rows).expect("Qn is oriented")
}

/// `Xᵢ = {v₂ᵢ, v₂ᵢ₊₁}` for `1 ≤ i ≤ ⌊(n−1)/2⌋`.
pub fn qn_family(n: usize) -> InversionFamily {
    let sets = (1..=n.saturating_sub(1) / 2)
        .map(|i| VertexSet::from_vertices([2 * i - 1, 2 * i]))
        .collect();
    InversionFamily::new(sets)
}

/// `H[D₁, …, Dₙ]`: part `i` replaces vertex `i` of `host`, and every arc
/// `i → j` of the host becomes all arcs from part `i` to part `j`.
pub fn blow_up(host: &Digraph, parts: &[Digraph]) -> Result<Digraph> {
    if parts.len() != host.order() {
        return Err(Error::usage(format!(
            "blow-up of a {}-vertex host needs {} parts, got {}",
            host.order(),
            host.order(),
            parts.len()
        )));
    }
    let offsets = part_offsets(parts)?;
    let total = offsets[parts.len()];
    let block = |j: usize| low_mask(offsets[j + 1] - offsets[j]) << offsets[j];
    let mut rows = vec![0u64; total];
    for (i, part) in parts.iter().enumerate() {
        let mut across = 0u64;
        for j in VertexSet(host.out_mask(i)).iter() {
            across |= block(j);
        }
        for (local, &row) in part.out_rows().iter().enumerate() {
            rows[offsets[i] + local] = (row << offsets[i]) | across;
        }
    }
    Digraph::from_out_rows(rows)
}

/// `offsets[i]` is the first vertex of part `i`; the last entry is the total.
pub fn part_offsets(parts: &[Digraph]) -> Result<Vec<usize>> {
    let mut offsets = Vec::with_capacity(parts.len() + 1);
    let mut total = 0usize;
    offsets.push(0);
    for p in parts {
        total += p.order();
        offsets.push(total);
    }
    if total > MAX_WIDTH {
        return Err(Error::TooLarge {
            what: "blow-up order",
            got: total,
            limit: MAX_WIDTH,
        });
    }
    Ok(offsets)
}

/// `L ⇒ R`.
pub fn dijoin(left: &Digraph, right: &Digraph) -> Result<Digraph> {
    blow_up(&transitive_tournament(2), &[left.clone(), right.clone()])
}

/// `[D₁, …, Dₖ]`, the blow-up of `TTₖ`.
pub fn k_join(parts: &[Digraph]) -> Result<Digraph> {
    blow_up(&transitive_tournament(parts.len()), parts)
}

/// A part-local set shifted to the part's block of vertices.
fn lift(set: VertexSet, offset: usize) -> VertexSet {
    VertexSet(set.0 << offset)
}

fn check_decycles(d: &Digraph, family: &InversionFamily) -> Result<()> {
    let flipped = d.apply_family(family)?;
    match flipped.find_cycle() {
        Some(cycle) => Err(Error::NotDecycling { cycle }),
        None => Ok(()),
    }
}

/// Turns a decycling family of `D` whose vectors all have even weight, of odd
/// length `k ≥ 3`, into a `k`-decycling family of `C₃ ⇒ D`: the triangle gets
/// `𝐮 = 0` and `𝐯 = 𝐰 = 𝟏`, and `D` keeps its vectors.
pub fn extend_family_to_c3_dijoin(d: &Digraph, family: &InversionFamily) -> Result<InversionFamily> {
    let k = family.len();
    if k < 3 || k % 2 == 0 {
        return Err(Error::usage(format!("family length must be odd and at least 3, got {k}")));
    }
    let assignment = family_to_assignment(family, d.order())?;
    if !is_even_weight_assignment(&assignment) {
        return Err(Error::usage("every vertex must lie in an even number of the sets"));
    }
    check_decycles(d, family).map_err(|e| Error::usage(format!("input family: {e}")))?;

    let joined = dijoin(&c3(), d)?;
    let triangle = VertexSet::from_vertices([1, 2]);
    let sets = family.sets.iter().map(|&s| VertexSet(lift(s, 3).0 | triangle.0)).collect();
    let extended = InversionFamily::new(sets);
    check_decycles(&joined, &extended).map_err(|e| Error::InvariantViolation(e.to_string()))?;
    Ok(extended)
}

/// Decycling family of `T[D₁, …, Dₙ]` of size at most `n + k − 1`, from a
/// `k`-family of `T` with even-weight vectors and one set `Yⱼ` per part with
/// `Inv(Dⱼ; Yⱼ)` acyclic:
///
/// ```text
/// Zᵢ       = Y₁ ∪ Xᵢ'   1 ≤ i ≤ k,   Xᵢ' = ⋃_{uⱼ ∈ Xᵢ} V(Dⱼ)
/// Zₖ₊ⱼ₋₁   = Yⱼ         2 ≤ j ≤ n
/// ```
///
/// Empty sets are dropped. The result is checked against the blow-up; a
/// residual cycle is returned as [`Error::NotDecycling`].
pub fn compose_blowup_family(
    host: &Digraph,
    host_family: &InversionFamily,
    parts: &[Digraph],
    part_sets: &[VertexSet],
) -> Result<InversionFamily> {
    let n = host.order();
    if parts.len() != n || part_sets.len() != n {
        return Err(Error::usage(format!(
            "host has {n} vertices but got {} parts and {} part sets",
            parts.len(),
            part_sets.len()
        )));
    }
    let assignment = family_to_assignment(host_family, n)?;
    if !is_even_weight_assignment(&assignment) {
        return Err(Error::usage("host family vectors must all have even weight"));
    }
    for (j, (part, &y)) in parts.iter().zip(part_sets).enumerate() {
        if !y.is_valid_for(part.order()) {
            return Err(Error::usage(format!("set for part {j} mentions vertices outside it")));
        }
        if !part.invert(y).is_acyclic() {
            return Err(Error::usage(format!("set for part {j} does not decycle it")));
        }
    }
    let offsets = part_offsets(parts)?;
    let whole_part = |j: usize| VertexSet(low_mask(parts[j].order()) << offsets[j]);
    let y1 = if n > 0 { lift(part_sets[0], offsets[0]) } else { VertexSet::EMPTY };

    let mut sets = Vec::with_capacity(host_family.len() + n.saturating_sub(1));
    for x in &host_family.sets {
        let blown = x.iter().fold(0u64, |acc, j| acc | whole_part(j).0);
        sets.push(VertexSet(y1.0 | blown));
    }
    for j in 1..n {
        sets.push(lift(part_sets[j], offsets[j]));
    }
    sets.retain(|s| !s.is_empty());
    let family = InversionFamily::new(sets);
    check_decycles(&blow_up(host, parts)?, &family)?;
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point() -> Digraph {
        Digraph::empty(1)
    }

    #[test]
    fn basic_shapes() {
        let c = c3();
        assert_eq!(c.arc_count(), 3);
        assert!(c.find_cycle().is_some());
        assert!(transitive(5).is_acyclic());
        assert_eq!(transitive(0).order(), 0);
        // every 2-subset inversion decycles the triangle
        for pair in [[0, 1], [1, 2], [0, 2]] {
            assert!(c.invert(VertexSet::from_vertices(pair)).is_acyclic());
        }
    }

    #[test]
    fn qn_shape_and_family() {
        let q = qn(5);
        assert!(q.is_tournament());
        assert!(q.has_arc(1, 0) && q.has_arc(4, 3) && q.has_arc(0, 2));
        assert_eq!(qn_family(1).len(), 0);
        assert_eq!(qn_family(3).sets, vec![VertexSet::from_vertices([1, 2])]);
        assert_eq!(qn_family(9).len(), 4);
        for n in 1..=15 {
            let f = qn_family(n);
            assert_eq!(f.len(), (n - 1) / 2);
            assert!(qn(n).apply_family(&f).unwrap().is_acyclic(), "n = {n}");
        }
    }

    #[test]
    fn dijoin_and_joins() {
        assert_eq!(dijoin(&point(), &point()).unwrap(), transitive(2));
        let d = dijoin(&c3(), &transitive(3)).unwrap();
        assert_eq!(d.order(), 6);
        assert_eq!(d.arc_count(), 3 + 3 + 9);
        let a = c3();
        let b = qn(4);
        assert_eq!(blow_up(&transitive(2), &[a.clone(), b.clone()]).unwrap(), dijoin(&a, &b).unwrap());
        let j = k_join(&[c3(), c3(), c3()]).unwrap();
        assert_eq!(j, blow_up(&transitive(3), &[c3(), c3(), c3()]).unwrap());
    }

    #[test]
    fn blow_up_by_points_is_host() {
        let h = qn(5);
        let parts = vec![point(); 5];
        assert_eq!(blow_up(&h, &parts).unwrap(), h);
        assert!(blow_up(&h, &parts[..4]).is_err());
    }

    #[test]
    fn extend_family_examples() {
        // each vertex lies in exactly two of the three sets
        let d = transitive(3);
        let f = InversionFamily::new(vec![
            VertexSet::from_vertices([0, 1]),
            VertexSet::from_vertices([0, 1, 2]),
            VertexSet::from_vertices([2]),
        ]);
        let ext = extend_family_to_c3_dijoin(&d, &f).unwrap();
        assert_eq!(ext.len(), 3);
        let joined = dijoin(&c3(), &d).unwrap();
        assert!(joined.apply_family(&ext).unwrap().is_acyclic());

        let even_k = InversionFamily::new(vec![VertexSet::EMPTY; 2]);
        assert!(matches!(extend_family_to_c3_dijoin(&d, &even_k), Err(Error::Usage(_))));
        let odd_weight = InversionFamily::new(vec![VertexSet::from_vertices([0]), VertexSet::EMPTY, VertexSet::EMPTY]);
        assert!(matches!(extend_family_to_c3_dijoin(&d, &odd_weight), Err(Error::Usage(_))));
    }

    #[test]
    fn compose_with_acyclic_parts() {
        let host = transitive(3);
        let f = InversionFamily::new(vec![VertexSet::from_vertices([0, 1]), VertexSet::from_vertices([0, 1])]);
        let parts = vec![transitive(2), point(), transitive(3)];
        let fam = compose_blowup_family(&host, &f, &parts, &[VertexSet::EMPTY; 3]).unwrap();
        // Z₁ = Z₂ = parts 0 and 1 blown up; no Yⱼ sets survive
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.sets[0], VertexSet::from_vertices([0, 1, 2]));
    }

    #[test]
    fn compose_rejects_bad_inputs() {
        let host = transitive(2);
        let odd = InversionFamily::new(vec![VertexSet::from_vertices([0])]);
        let parts = vec![c3(), c3()];
        let ys = [VertexSet::from_vertices([0, 1]); 2];
        assert!(matches!(compose_blowup_family(&host, &odd, &parts, &ys), Err(Error::Usage(_))));
        let bad_y = [VertexSet::EMPTY, VertexSet::from_vertices([0, 1])];
        assert!(matches!(
            compose_blowup_family(&host, &InversionFamily::empty(), &parts, &bad_y),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn compose_even_k_fails_verification() {
        // k = 0 is even: Y₁ is never inverted, so part 0 keeps its triangle.
        let host = transitive(2);
        let parts = vec![c3(), c3()];
        let ys = [VertexSet::from_vertices([0, 1]); 2];
        let r = compose_blowup_family(&host, &InversionFamily::empty(), &parts, &ys);
        assert!(matches!(r, Err(Error::NotDecycling { .. })));
    }
}
