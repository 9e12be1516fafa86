use super::develop::vertex_point;
use super::surface::SurfaceS;
use super::data::ScenarioData;
use super::{fail, Context, ScenarioError};
use crate::corners::{CornerComplex, FacetMap, Slot, Strata};
use crate::golden::{Hyperplane, LorentzMatrix, LorentzVector};
use crate::pleated::surface_topology;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// One boundary arc of the developed disc: a pentagon edge on a cut.
#[derive(Clone, Debug)]
pub struct BoundaryArc {
    pub slot: Slot,
    /// endpoints in traversal order
    pub from: LorentzVector,
    pub to: LorentzVector,
    pub hyperplane: Hyperplane,
    /// the arc on the other side of the cut
    pub partner: Slot,
    /// carries this arc onto its partner, turning the disc over the cut
    pub pairing: LorentzMatrix,
}

/// A maximal run of boundary arcs in one hyperplane.
#[derive(Clone, Debug)]
pub struct Side {
    /// indices into `Disc::arcs`
    pub arcs: Vec<usize>,
    pub hyperplane: Hyperplane,
    /// facet of the base cell labelling the hyperplane
    pub label: usize,
}

impl Side {
    pub fn start<'a>(&self, d: &'a Disc) -> &'a LorentzVector {
        &d.arcs[self.arcs[0]].from
    }

    pub fn end<'a>(&self, d: &'a Disc) -> &'a LorentzVector {
        &d.arcs[*self.arcs.last().unwrap()].to
    }
}

/// S cut open along thin edges and developed into hyperbolic space.
#[derive(Clone, Debug)]
pub struct Disc {
    /// cells numbered as in S, frames placed in one copy of H⁴
    pub complex: CornerComplex,
    /// vertex strata of S: the centre and the two vertices of Θ
    pub centre: usize,
    pub white: Vec<usize>,
    /// boundary arcs in cyclic order
    pub arcs: Vec<BoundaryArc>,
    pub sides: Vec<Side>,
    /// uncut edges as one slot each, with their pleat flag
    pub interior: Vec<(Slot, bool)>,
}

fn edge_ends(x: &CornerComplex, st: &Strata, s: Slot) -> Vec<usize> {
    let cat = &x.cells[s.cell].catalog;
    let f = cat.facet_face(s.facet).unwrap();
    cat.subfaces(f).filter(|&g| cat.face_dim(g) == 0).map(|g| st.class(s.cell, g)).collect()
}

fn edge_stratum(x: &CornerComplex, st: &Strata, s: Slot) -> usize {
    st.class(s.cell, x.cells[s.cell].catalog.facet_face(s.facet).unwrap())
}

/// Vertices of S where all three parts meet.
pub fn theta_vertices(s: &SurfaceS) -> Vec<usize> {
    let st = s.surface.complex.strata();
    (0..st.len()).filter(|&v| st.dims[v] == 0 && s.parts_at(&st, v).len() == 3).collect()
}

/// Cut S along the thin edges that avoid `centre` and the vertices of Θ, and develop the result.
pub fn build_disc_at(ctx: &Context, s: &SurfaceS, centre: usize) -> Result<Disc, ScenarioError> {
    let x = &s.surface.complex;
    let st = x.strata();
    let pleats: BTreeSet<usize> = s.surface.pleats()?.into_iter().collect();
    let white = theta_vertices(s);
    let mut keep_at: BTreeSet<usize> = white.iter().copied().collect();
    keep_at.insert(centre);

    let mut kept = Vec::new();
    let mut cut = Vec::new();
    for g in x.gluings() {
        let pleat = pleats.contains(&edge_stratum(x, &st, g.a));
        if pleat || edge_ends(x, &st, g.a).iter().any(|v| keep_at.contains(v)) {
            kept.push((g.clone(), pleat));
        } else {
            cut.push(g.clone());
        }
    }

    // develop along the kept gluings
    let n = x.cells.len();
    let mut place: Vec<Option<LorentzMatrix>> = vec![None; n];
    place[0] = Some(LorentzMatrix::identity());
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for (g, _) in &kept {
            for (here, there) in [(g.a, g.b), (g.b, g.a)] {
                if here.cell != c || place[there.cell].is_some() {
                    continue;
                }
                let t = x.transition(here).ok_or_else(|| fail("S gluing without a transition"))?;
                place[there.cell] = Some(place[c].as_ref().unwrap().compose(&t));
                queue.push_back(there.cell);
            }
        }
    }
    let place: Vec<LorentzMatrix> =
        place.into_iter().collect::<Option<_>>().ok_or_else(|| fail("the cut surface is not connected"))?;
    for (g, _) in &kept {
        let t = x.transition(g.a).unwrap();
        if place[g.a.cell].compose(&t) != place[g.b.cell] {
            return Err(fail(format!("development does not close up across {}:{}", x.cells[g.a.cell].name, g.a.facet)));
        }
    }

    let frame = |c: usize| place[c].compose(x.cells[c].frame.as_ref().unwrap());
    let mut d = CornerComplex::new(x.polytope.clone());
    for (c, cell) in x.cells.iter().enumerate() {
        d.add_cell(&cell.catalog.clique, Some(frame(c)), cell.name.clone())?;
    }
    for (g, _) in &kept {
        d.glue(g.a, g.b, FacetMap::new(g.map.pairs().to_vec()), Some(LorentzMatrix::identity()))?;
    }
    let t = surface_topology(&d);
    if t.euler_characteristic != 1 || t.boundary_components != 1 || t.components != 1 {
        return Err(fail(format!("cutting S gives χ={} with {} boundary circle(s)", t.euler_characteristic, t.boundary_components)));
    }

    // walk the boundary circle
    let dst = d.strata();
    let free = d.free_slots();
    let mut at_vertex: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
    for &f in &free {
        for v in edge_ends(&d, &dst, f) {
            at_vertex.entry(v).or_default().push(f);
        }
    }
    let point = |c: usize, v: usize| -> LorentzVector {
        let (cell, face) = dst.members[v].iter().copied().find(|&(k, _)| k == c).unwrap();
        let key = d.cells[cell].catalog.vertices[face][0];
        d.cells[cell].frame.as_ref().unwrap().apply(&vertex_point(&x.polytope, &key))
    };
    let mut order = Vec::new();
    let first = free[0];
    let mut cur = first;
    let mut head = edge_ends(&d, &dst, cur)[1];
    loop {
        let ends = edge_ends(&d, &dst, cur);
        let tail = if ends[0] == head { ends[1] } else { ends[0] };
        order.push((cur, tail, head));
        let next = at_vertex[&head].iter().copied().find(|&f| f != cur).ok_or_else(|| fail("boundary vertex on one arc"))?;
        let ne = edge_ends(&d, &dst, next);
        cur = next;
        head = if ne[0] == head { ne[1] } else { ne[0] };
        if cur == first {
            break;
        }
        if order.len() > free.len() {
            return Err(fail("boundary walk does not close"));
        }
    }
    if order.len() != free.len() {
        return Err(fail(format!("boundary has {} arcs in one circle, {} in all", order.len(), free.len())));
    }

    let partner_of: BTreeMap<Slot, Slot> = cut.iter().flat_map(|g| [(g.a, g.b), (g.b, g.a)]).collect();
    let mut arcs = Vec::new();
    for &(slot, tail, head) in &order {
        let normal = d.cells[slot.cell].frame.as_ref().unwrap().apply(&ctx.tess.normals[slot.facet as usize]);
        let partner = partner_of[&slot];
        let t = x.transition(partner).ok_or_else(|| fail("cut gluing without a transition"))?;
        let pairing = place[partner.cell].compose(&t).compose(&place[slot.cell].isometry_inverse());
        arcs.push(BoundaryArc {
            slot,
            from: point(slot.cell, tail),
            to: point(slot.cell, head),
            hyperplane: Hyperplane::new(normal).map_err(|e| fail(e.to_string()))?,
            partner,
            pairing,
        });
    }

    // start at a change of hyperplane, then group runs
    let k = arcs.len();
    let start = (0..k)
        .find(|&i| !arcs[i].hyperplane.same_as(&arcs[(i + k - 1) % k].hyperplane))
        .ok_or_else(|| fail("the whole boundary lies in one hyperplane"))?;
    arcs.rotate_left(start);
    let mut sides: Vec<Side> = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        match sides.last_mut() {
            Some(s) if s.hyperplane.same_as(&a.hyperplane) => s.arcs.push(i),
            _ => {
                let label = ctx
                    .tess
                    .label_hyperplane(&a.hyperplane)
                    .ok_or_else(|| fail("side hyperplane is not a tessellation hyperplane"))?
                    .0;
                sides.push(Side { arcs: vec![i], hyperplane: a.hyperplane.clone(), label });
            }
        }
    }
    let interior = kept.iter().map(|(g, p)| (g.a, *p)).collect();
    Ok(Disc { complex: d, centre, white, arcs, sides, interior })
}

/// Centres for which the cut is a disc, with their side counts.
pub fn disc_centres(ctx: &Context, s: &SurfaceS) -> Vec<(usize, Result<usize, ScenarioError>)> {
    let st = s.surface.complex.strata();
    let white = theta_vertices(s);
    (0..st.len())
        .filter(|&v| st.dims[v] == 0 && !white.contains(&v))
        .map(|v| (v, build_disc_at(ctx, s, v).map(|d| d.sides.len())))
        .collect()
}

impl Disc {
    /// Labels of the two tessellation hyperplanes through each pentagon.
    pub fn pentagon_labels(&self, ctx: &Context) -> Result<Vec<[usize; 2]>, ScenarioError> {
        self.complex
            .cells
            .iter()
            .map(|c| {
                let f = c.frame.as_ref().unwrap();
                let mut out = [0; 2];
                for (k, &q) in c.catalog.clique.iter().enumerate() {
                    let h = Hyperplane::new(f.apply(&ctx.tess.normals[q as usize])).map_err(|e| fail(e.to_string()))?;
                    out[k] = ctx.tess.label_hyperplane(&h).ok_or_else(|| fail("pentagon off the tessellation"))?.0;
                }
                out.sort_unstable();
                Ok(out)
            })
            .collect()
    }

    /// Sides cut further wherever the pairing isometry changes along them, with their side index.
    pub fn facets(&self) -> Vec<(usize, Side)> {
        let mut out = Vec::new();
        for (i, s) in self.sides.iter().enumerate() {
            let mut run = Side { arcs: vec![s.arcs[0]], ..s.clone() };
            for w in s.arcs.windows(2) {
                if self.arcs[w[1]].pairing != self.arcs[w[0]].pairing {
                    out.push((i, std::mem::replace(&mut run, Side { arcs: Vec::new(), ..s.clone() })));
                }
                run.arcs.push(w[1]);
            }
            out.push((i, run));
        }
        out
    }

    pub fn arc_name(&self, k: usize) -> String {
        let s = self.arcs[k].slot;
        format!("{}:{}", self.complex.cells[s.cell].name, s.facet)
    }
}

/// The disc whose boundary arcs are exactly those listed in the side records.
pub fn build_disc(ctx: &Context, data: &ScenarioData, s: &SurfaceS) -> Result<Disc, ScenarioError> {
    let want: BTreeSet<(String, u32)> =
        data.sides.iter().flat_map(|r| r.arcs.iter().map(|e| (e.pentagon.clone(), e.slot))).collect();
    if want.is_empty() {
        return Err(fail("no side records"));
    }
    let st = s.surface.complex.strata();
    let white = theta_vertices(s);
    let mut found = Vec::new();
    for v in (0..st.len()).filter(|&v| st.dims[v] == 0 && !white.contains(&v)) {
        let Ok(d) = build_disc_at(ctx, s, v) else { continue };
        let got: BTreeSet<(String, u32)> =
            d.arcs.iter().map(|a| (d.complex.cells[a.slot.cell].name.clone(), a.slot.facet)).collect();
        if got == want {
            found.push(d);
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        n => Err(fail(format!("{n} centres give the listed boundary"))),
    }
}
