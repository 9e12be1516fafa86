use super::data::{CurveRecord, ScenarioData};
use super::develop::glue_developed;
use super::report::Check;
use super::{fail, Context, ScenarioError};
use crate::pleated::surface_topology;
use crate::corners::{CornerComplex, Slot, Strata, VertexKey};
use crate::polytopes::Symmetry;
use std::collections::BTreeMap;

/// The central surface: eight pentagons of the plane `{z, t}` glued edge to edge.
#[derive(Clone, Debug)]
pub struct Sigma {
    pub complex: CornerComplex,
    /// pentagon id to cell
    pub cells: BTreeMap<String, usize>,
    /// edge name to its two slots
    pub edges: BTreeMap<String, (Slot, Slot)>,
    /// the two facets cutting out every pentagon
    pub clique: [u32; 2],
}

pub fn build_sigma(ctx: &Context, data: &ScenarioData) -> Result<Sigma, ScenarioError> {
    let mut x = CornerComplex::new(ctx.cell.clone());
    let mut cells = BTreeMap::new();
    let mut clique = None;
    for p in data.pentagons_in("sigma") {
        let mut k = p.clique;
        k.sort_unstable();
        if *clique.get_or_insert(k) != k {
            return Err(fail(format!("pentagon {} is not parallel to the others", p.id)));
        }
        let word: Vec<usize> = p.word.iter().map(|&w| w as usize).collect();
        let frame = ctx.tess.frame_of_word(&word)?;
        let id = x.add_cell(&k, Some(frame), p.id.clone())?;
        cells.insert(p.id.clone(), id);
    }
    let clique = clique.ok_or_else(|| fail("no sigma pentagons"))?;
    let mut edges = BTreeMap::new();
    for e in data.edges_in("sigma") {
        if e.pleat {
            return Err(fail(format!("sigma edge {} is marked as a pleat", e.name)));
        }
        if e.a.slot != e.b.slot {
            return Err(fail(format!("sigma edge {} changes the facet label", e.name)));
        }
        let a = Slot::new(cells[&e.a.pentagon], e.a.slot);
        let b = Slot::new(cells[&e.b.pentagon], e.b.slot);
        glue_developed(ctx, &mut x, a, b, &Symmetry::identity())?;
        if edges.insert(e.name.clone(), (a, b)).is_some() {
            return Err(fail(format!("repeated sigma edge {}", e.name)));
        }
    }
    Ok(Sigma { complex: x, cells, edges, clique })
}

impl Sigma {
    fn edge_face(&self, name: &str) -> Result<(usize, usize, [VertexKey; 2]), ScenarioError> {
        let (a, _) = self.edges.get(name).ok_or_else(|| fail(format!("unknown sigma edge {name}")))?;
        let cat = &self.complex.cells[a.cell].catalog;
        let mut q = cat.clique.clone();
        q.push(a.facet);
        let f = cat.find(&q).ok_or_else(|| fail(format!("edge {name} is not a face")))?;
        let v = &cat.vertices[f];
        Ok((a.cell, f, [v[0], v[1]]))
    }

    /// Steps `(cell, edge face, end vertex)` of a closed curve along named edges.
    pub fn curve_steps(&self, strata: &Strata, curve: &CurveRecord) -> Result<Vec<(usize, usize, VertexKey)>, ScenarioError> {
        let faces: Vec<(usize, usize, [VertexKey; 2])> =
            curve.edges.iter().map(|e| self.edge_face(e)).collect::<Result<_, _>>()?;
        if faces.len() < 2 {
            return Err(fail(format!("curve {} is too short", curve.name)));
        }
        let class = |c: usize, v: &VertexKey| -> usize {
            let cat = &self.complex.cells[c].catalog;
            strata.class(c, cat.find(v).unwrap())
        };
        let ends = |i: usize| -> [usize; 2] {
            let (c, _, v) = &faces[i];
            [class(*c, &v[0]), class(*c, &v[1])]
        };
        // orient the first edge towards the second
        let (e0, e1) = (ends(0), ends(1));
        let mut head = if e1.contains(&e0[1]) {
            1
        } else if e1.contains(&e0[0]) {
            0
        } else {
            return Err(fail(format!("curve {}: first two edges are not consecutive", curve.name)));
        };
        let start = e0[1 - head];
        let mut steps = vec![(faces[0].0, faces[0].1, faces[0].2[head])];
        let mut at = e0[head];
        for i in 1..faces.len() {
            let e = ends(i);
            head = if e[0] == at {
                1
            } else if e[1] == at {
                0
            } else {
                return Err(fail(format!("curve {}: edge {} does not continue the path", curve.name, curve.edges[i])));
            };
            steps.push((faces[i].0, faces[i].1, faces[i].2[head]));
            at = e[head];
        }
        if at != start {
            return Err(fail(format!("curve {} is not closed", curve.name)));
        }
        Ok(steps)
    }
}

/// Σ is a closed orientable genus-2 surface.
pub fn surface_report(sigma: &Sigma) -> Check {
    let t = surface_topology(&sigma.complex);
    let ok = t.faces == 8 && t.boundary_components == 0 && t.components == 1 && t.orientable && t.genus == Some(2);
    Check::new(
        "sigma.surface",
        ok,
        format!("V={} E={} F={} orientable={} genus={:?}", t.vertices, t.edges, t.faces, t.orientable, t.genus),
    )
}
