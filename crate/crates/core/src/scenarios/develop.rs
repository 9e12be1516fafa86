use super::{fail, Context, ScenarioError};
use crate::corners::{apply_sym, BoundaryFacets, CornerComplex, CornerError, Slot, VertexKey};
use crate::golden::{GoldenScalar, LorentzMatrix, LorentzVector};
use crate::polytopes::{Cell600, Symmetry};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Transition for a gluing induced by `sym_b_to_a`: the copy of cell `b` developed
/// across facet `a` sits at `T · frame(b)` with `T = F_a · R_a · σ · F_b⁻¹`.
pub fn developed_transition(ctx: &Context, x: &CornerComplex, a: Slot, b: Slot, sym_b_to_a: &Symmetry) -> Option<LorentzMatrix> {
    let fa = x.cells[a.cell].frame.as_ref()?;
    let fb = x.cells[b.cell].frame.as_ref()?;
    Some(
        fa.compose(&ctx.tess.reflections[a.facet as usize])
            .compose(&ctx.tess.symmetry_matrix(sym_b_to_a))
            .compose(&fb.isometry_inverse()),
    )
}

/// Glue by a symmetry, recording the developed transition when both cells have frames.
pub fn glue_developed(ctx: &Context, x: &mut CornerComplex, a: Slot, b: Slot, sym_b_to_a: &Symmetry) -> Result<usize, CornerError> {
    let t = developed_transition(ctx, x, a, b, sym_b_to_a);
    x.glue_by_symmetry(a, b, sym_b_to_a, t)
}

/// Position in the hyperboloid model (up to scale) of the 120-cell vertex `key`.
pub fn vertex_point(cell: &Cell600, key: &VertexKey) -> LorentzVector {
    let vs: Vec<[GoldenScalar; 4]> = key.iter().map(|&i| cell.vertex(i as usize)).collect();
    let s: [GoldenScalar; 4] = std::array::from_fn(|k| {
        let mut acc = GoldenScalar::zero();
        for v in &vs {
            acc += &v[k];
        }
        acc
    });
    let mut dot = GoldenScalar::zero();
    for k in 0..4 {
        dot += &(&vs[0][k] * &s[k]);
    }
    // on H_a: -(φ/2) x0 + a·s = 0
    let x0 = &(&dot * &GoldenScalar::int(2)) / &GoldenScalar::phi();
    LorentzVector::new([x0, s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone()])
}

/// The pieces of two boundary facets matched by [`pair_facets`].
#[derive(Clone, Debug)]
pub struct FacetPairing {
    pub a: usize,
    pub b: usize,
    /// piece of facet `a`, piece of facet `b`, symmetry carrying the second onto the first
    pub pieces: Vec<(Slot, Slot, Symmetry)>,
}

fn extra(face: &[u32], clique: &[u32], facet: u32) -> Option<u32> {
    face.iter().copied().find(|v| !clique.contains(v) && *v != facet)
}

/// A piece of the same boundary facet across a straight ridge.
pub(crate) struct Neighbour {
    /// ridge vertices in the slot's cell
    pub ridge: Vec<VertexKey>,
    /// facet of the slot's cell glued across the ridge
    pub through: u32,
    pub piece: Slot,
    /// the same vertices, in order, in the neighbour's cell
    pub ridge_there: Vec<VertexKey>,
    /// facet of the neighbour's cell glued back across the ridge
    pub through_there: u32,
}

pub(crate) fn straight_neighbours(x: &CornerComplex, s: Slot) -> Result<Vec<Neighbour>, ScenarioError> {
    let cat = &x.cells[s.cell].catalog;
    let f = cat.facet_face(s.facet).ok_or_else(|| fail(format!("{s:?} is not a facet")))?;
    let n = cat.faces[f].len() + 1;
    let mut out = Vec::new();
    for r in cat.subfaces(f).filter(|&r| cat.faces[r].len() == n) {
        let h = extra(&cat.faces[r], &cat.clique, s.facet).unwrap();
        let Some((t, map)) = x.partner(Slot::new(s.cell, h)) else { continue };
        let img: Vec<VertexKey> = cat.vertices[r].iter().map(|v| map.image(v).unwrap()).collect();
        let tc = &x.cells[t.cell].catalog;
        let mut sorted = img.clone();
        sorted.sort_unstable();
        let rf = tc.find_by_vertices(&sorted).ok_or_else(|| fail("ridge image is not a face"))?;
        let f2 = extra(&tc.faces[rf], &tc.clique, t.facet).unwrap();
        let s2 = Slot::new(t.cell, f2);
        if !x.is_free(s2) {
            return Err(fail(format!("reflex ridge between {s:?} and {s2:?}")));
        }
        out.push(Neighbour { ridge: cat.vertices[r].clone(), through: h, piece: s2, ridge_there: img, through_there: t.facet });
    }
    Ok(out)
}

/// Symmetry of the 120-cell taking the flag at `b` (cell clique, facet, ridge facet,
/// vertex) to the flag at `a`.
pub(crate) fn flag_symmetry(ctx: &Context, x: &CornerComplex, a: Slot, va: &VertexKey, ra: u32, b: Slot, vb: &VertexKey, rb: u32) -> Option<Symmetry> {
    let flag = |s: Slot, v: &VertexKey, r: u32| -> Option<Vec<usize>> {
        let k = &x.cells[s.cell].catalog.clique;
        let mut f: Vec<usize> = k.iter().map(|&i| i as usize).collect();
        f.push(s.facet as usize);
        f.push(r as usize);
        let rest: Vec<u32> = v.iter().copied().filter(|i| !k.contains(i) && *i != s.facet && *i != r).collect();
        if rest.len() != 4 - f.len() {
            return None;
        }
        f.extend(rest.iter().map(|&i| i as usize));
        Some(f)
    };
    let to = flag(a, va, ra)?;
    let from = flag(b, vb, rb)?;
    let g = ctx.tess.symmetries.mapping(&from, &to).next()?;
    Some(ctx.tess.symmetries.elements[g].clone())
}

/// Pair the boundary facet containing `seed_a` with the one containing `seed_b`,
/// starting from `seed` on those pieces and extending across straight ridges.
/// Glues every matched piece; transitions are recorded where frames exist.
pub fn pair_facets(ctx: &Context, x: &mut CornerComplex, seed_a: Slot, seed_b: Slot, seed: Symmetry) -> Result<FacetPairing, ScenarioError> {
    let facets: BoundaryFacets = x.boundary_facets();
    let fa = *facets.facet_of.get(&seed_a).ok_or_else(|| fail(format!("{seed_a:?} is not on the boundary")))?;
    let fb = *facets.facet_of.get(&seed_b).ok_or_else(|| fail(format!("{seed_b:?} is not on the boundary")))?;
    if fa == fb {
        return Err(fail("a facet cannot be paired with itself"));
    }
    let mut assigned: BTreeMap<Slot, (Slot, Symmetry)> = BTreeMap::new();
    let mut queue = VecDeque::from([(seed_a, seed_b, seed)]);
    while let Some((a, b, s)) = queue.pop_front() {
        if let Some((b0, s0)) = assigned.get(&a) {
            if *b0 != b || *s0 != s {
                return Err(fail(format!("pairing is inconsistent at {a:?}")));
            }
            continue;
        }
        if facets.facet_of.get(&b) != Some(&fb) {
            return Err(fail(format!("pairing leaves the target facet at {b:?}")));
        }
        let inv = s.inverse();
        let na = straight_neighbours(x, a)?;
        let nb = straight_neighbours(x, b)?;
        for n in na {
            // the same ridge seen from b
            let mut rb: Vec<VertexKey> = n.ridge.iter().map(|v| apply_sym(&inv, v)).collect();
            rb.sort_unstable();
            let m = nb
                .iter()
                .find(|m| {
                    let mut r = m.ridge.clone();
                    r.sort_unstable();
                    r == rb
                })
                .ok_or_else(|| fail(format!("ridge at {a:?} is straight but its image at {b:?} is not")))?;
            let vb = apply_sym(&inv, &n.ridge[0]);
            let vb2 = m.ridge_there[m.ridge.iter().position(|w| *w == vb).unwrap()];
            let s2 = flag_symmetry(ctx, x, n.piece, &n.ridge_there[0], n.through_there, m.piece, &vb2, m.through_there)
                .ok_or_else(|| fail(format!("no symmetry extends the pairing to {:?}", n.piece)))?;
            queue.push_back((n.piece, m.piece, s2));
        }
        assigned.insert(a, (b, s));
    }
    let images: BTreeSet<Slot> = assigned.values().map(|(b, _)| *b).collect();
    let want_a: BTreeSet<Slot> = facets.facets[fa].iter().copied().collect();
    let want_b: BTreeSet<Slot> = facets.facets[fb].iter().copied().collect();
    let got_a: BTreeSet<Slot> = assigned.keys().copied().collect();
    if got_a != want_a || images != want_b {
        return Err(fail(format!(
            "pairing covers {} of {} pieces onto {} of {}",
            got_a.len(),
            want_a.len(),
            images.len(),
            want_b.len()
        )));
    }
    let pieces: Vec<(Slot, Slot, Symmetry)> = assigned.into_iter().map(|(a, (b, s))| (a, b, s)).collect();
    for (a, b, s) in &pieces {
        glue_developed(ctx, x, *a, *b, s)?;
    }
    Ok(FacetPairing { a: fa, b: fb, pieces })
}
