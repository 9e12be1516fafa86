use super::data::{DataError, PentagonRecord, ScenarioData};
use super::report::Check;
use super::lemmas::BarConstruction;
use super::sigma::Sigma;
use super::{fail, Context, ScenarioError};
use crate::corners::{CornerComplex, FacetMap, Slot, Strata, VertexKey};
use crate::golden::LorentzMatrix;
use crate::pleated::PleatedSurface;
use std::collections::{BTreeMap, BTreeSet};

/// A pentagon of S located as a 2-face of one of the thickened pieces.
#[derive(Clone, Debug)]
pub struct SFace {
    pub id: String,
    pub group: String,
    /// index into the list of pieces
    pub bar: usize,
    /// representative cell and facet in the piece's complex
    pub cell: usize,
    pub facet: u32,
}

/// S with its pentagons traced back to the pieces they come from.
#[derive(Clone, Debug)]
pub struct SurfaceS {
    pub surface: PleatedSurface,
    pub faces: Vec<SFace>,
    /// group names in order of the part labels
    pub groups: Vec<String>,
    /// edge name to its two slots, for every edge of S
    pub edges: BTreeMap<String, (Slot, Slot)>,
}

fn face_key(x: &CornerComplex, c: usize, f: u32) -> (usize, u32) {
    match x.partner(Slot::new(c, f)) {
        Some((t, _)) => (c, f).min((t.cell, t.facet)),
        None => (c, f),
    }
}

fn edge_vertices(x: &CornerComplex, c: usize, f: u32, h: u32) -> Result<Vec<VertexKey>, ScenarioError> {
    let cat = &x.cells[c].catalog;
    let mut q = cat.clique.clone();
    q.extend([f, h]);
    let e = cat.find(&q).ok_or_else(|| fail(format!("facets {f} and {h} of cell {c} do not meet in an edge")))?;
    Ok(cat.vertices[e].clone())
}

/// The S pentagon met first when turning about the edge `f ∩ h` of cell `c`
/// from face `h` towards face `f`, with its slot, placement and vertex images.
struct Hit {
    key: (usize, u32),
    slot: u32,
    g: LorentzMatrix,
    verts: Vec<VertexKey>,
}

fn turn(x: &CornerComplex, faces: &BTreeMap<(usize, u32), usize>, c: usize, f: u32, h: u32, g: LorentzMatrix, verts: Vec<VertexKey>) -> Result<Option<Hit>, ScenarioError> {
    let (mut d, mut f, mut h, mut g, mut verts) = (c, f, h, g, verts);
    for _ in 0..4 * x.cells.len() + 4 {
        if faces.contains_key(&face_key(x, d, f)) {
            if face_key(x, d, f) != (d, f) {
                let s = Slot::new(d, f);
                let (t, map) = x.partner(s).unwrap();
                g = g.compose(&x.transition(s).ok_or_else(|| fail(format!("no transition at {s:?}")))?);
                verts = verts.iter().map(|v| map.image(v).unwrap()).collect();
                let cat = &x.cells[t.cell].catalog;
                let mut sorted = verts.clone();
                sorted.sort_unstable();
                let e = cat.find_by_vertices(&sorted).ok_or_else(|| fail("edge image is not an edge"))?;
                let other = cat.faces[e].iter().copied().find(|v| !cat.clique.contains(v) && *v != t.facet).unwrap();
                return Ok(Some(Hit { key: (t.cell, t.facet), slot: other, g, verts }));
            }
            return Ok(Some(Hit { key: (d, f), slot: h, g, verts }));
        }
        let s = Slot::new(d, f);
        let Some((t, map)) = x.partner(s) else { return Ok(None) };
        g = g.compose(&x.transition(s).ok_or_else(|| fail(format!("no transition at {s:?}")))?);
        verts = verts.iter().map(|v| map.image(v).unwrap()).collect();
        let cat = &x.cells[t.cell].catalog;
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        let e = cat.find_by_vertices(&sorted).ok_or_else(|| fail("edge image is not an edge"))?;
        let next = cat.faces[e].iter().copied().find(|v| !cat.clique.contains(v) && *v != t.facet).unwrap();
        d = t.cell;
        h = t.facet;
        f = next;
    }
    Err(fail(format!("turning about an edge of cell {c} does not terminate")))
}

fn locate(ctx: &Context, bars: &[BarConstruction], p: &PentagonRecord) -> Result<SFace, ScenarioError> {
    let word: Vec<usize> = p.word.iter().map(|&w| w as usize).collect();
    let frame = ctx.tess.frame_of_word(&word)?;
    let mut hits = Vec::new();
    for (b, bar) in bars.iter().enumerate() {
        let keep = bar.thick.keep;
        let Some(&y) = p.clique.iter().find(|&&k| k != keep) else { continue };
        if !p.clique.contains(&keep) {
            continue;
        }
        for (c, cell) in bar.naive.cells.iter().enumerate() {
            if cell.frame.as_ref() == Some(&frame) && cell.catalog.clique == [keep] && cell.catalog.facet_face(y).is_some() {
                hits.push((b, c, y));
            }
        }
    }
    match hits[..] {
        [(bar, cell, facet)] => Ok(SFace { id: p.id.clone(), group: p.group.clone(), bar, cell, facet }),
        [] => Err(fail(format!("pentagon {} (line {}) is not a face of any piece", p.id, p.line))),
        _ => Err(fail(format!("pentagon {} (line {}) is ambiguous", p.id, p.line))),
    }
}

/// Assemble S from the PENTAGONS of the given groups, located in the pieces
/// `bars` (with frames), glued inside each piece by turning about edges and
/// across Σ by the gluings of Σ.
pub fn build_surface_s(ctx: &Context, data: &ScenarioData, sigma: &Sigma, bars: &[BarConstruction], groups: &[&str]) -> Result<SurfaceS, ScenarioError> {
    let mut out = CornerComplex::new(ctx.cell.clone());
    let mut faces = Vec::new();
    let mut part = Vec::new();
    let mut index: Vec<BTreeMap<(usize, u32), usize>> = vec![BTreeMap::new(); bars.len()];
    for (gi, g) in groups.iter().enumerate() {
        for p in data.pentagons_in(g) {
            let f = locate(ctx, bars, p)?;
            let x = &bars[f.bar].naive;
            let key = face_key(x, f.cell, f.facet);
            let (cell, facet) = key;
            let frame = x.cells[cell].frame.clone();
            let mut k = vec![bars[f.bar].thick.keep, facet];
            k.sort_unstable();
            let id = out.add_cell(&k, frame, p.id.clone())?;
            if index[f.bar].insert(key, id).is_some() {
                return Err(fail(format!("pentagon {} is listed twice", p.id)));
            }
            faces.push(SFace { cell, facet, ..f });
            part.push(gi as u8);
        }
    }
    // Σ pentagon under each base cell
    let mut under: Vec<BTreeMap<usize, String>> = vec![BTreeMap::new(); bars.len()];
    for (b, bar) in bars.iter().enumerate() {
        for (name, &c) in &bar.thick.cells {
            under[b].insert(c, name.clone());
        }
    }
    let mut bottoms: BTreeMap<(String, u32), Vec<(usize, Vec<VertexKey>)>> = BTreeMap::new();
    let mut edges = BTreeMap::new();
    for (sid, f) in faces.iter().enumerate() {
        let bar = &bars[f.bar];
        let x = &bar.naive;
        let cat = out.cells[sid].catalog.clone();
        for e in cat.facet_ids() {
            let slot = Slot::new(sid, e);
            if e == bar.thick.base {
                let p = under[f.bar].get(&f.cell).ok_or_else(|| fail(format!("pentagon {} touches Σ away from a base cell", f.id)))?;
                let v = edge_vertices(x, f.cell, f.facet, e)?;
                bottoms.entry((p.clone(), f.facet)).or_default().push((sid, v));
                continue;
            }
            if !out.is_free(slot) {
                continue;
            }
            let verts = edge_vertices(x, f.cell, f.facet, e)?;
            let mut hit = turn(x, &index[f.bar], f.cell, e, f.facet, LorentzMatrix::identity(), verts.clone())?;
            if hit.is_none() {
                // the other way round: through the pentagon itself
                let s = Slot::new(f.cell, f.facet);
                if let (Some((t, map)), Some(tr)) = (x.partner(s), x.transition(s)) {
                    let vs: Vec<VertexKey> = verts.iter().map(|v| map.image(v).unwrap()).collect();
                    let tc = &x.cells[t.cell].catalog;
                    let mut sorted = vs.clone();
                    sorted.sort_unstable();
                    let ef = tc.find_by_vertices(&sorted).ok_or_else(|| fail("edge image is not an edge"))?;
                    let h = tc.faces[ef].iter().copied().find(|v| !tc.clique.contains(v) && *v != t.facet).unwrap();
                    hit = turn(x, &index[f.bar], t.cell, h, t.facet, tr, vs)?;
                }
            }
            let hit = hit.ok_or_else(|| fail(format!("edge {e} of pentagon {} lies on the boundary", f.id)))?;
            let other = index[f.bar][&hit.key];
            let b = Slot::new(other, hit.slot);
            if b == slot {
                return Err(fail(format!("edge {e} of pentagon {} folds onto itself", f.id)));
            }
            let map = FacetMap::new(verts.iter().copied().zip(hit.verts.iter().copied()).collect());
            out.glue(slot, b, map, Some(hit.g))?;
            edges.insert(format!("{}:{}", f.id, e), (slot, b));
        }
    }
    // across Σ
    for e in data.edges_in("sigma") {
        let (pa, pb) = ((e.a.pentagon.clone(), e.a.slot), (e.b.pentagon.clone(), e.b.slot));
        let mut here: Vec<(usize, Vec<VertexKey>, bool)> = Vec::new();
        for (k, side) in [(&pa, false), (&pb, true)] {
            for (sid, v) in bottoms.remove(k).unwrap_or_default() {
                here.push((sid, v, side));
            }
        }
        match &here[..] {
            // a piece on its own has boundary along Σ
            [] | [_] => {}
            [(s1, v1, b1), (s2, v2, b2)] => {
                let (sa, sb) = (sigma.edges[&e.name].0, sigma.edges[&e.name].1);
                let (t, map) = if b1 == b2 {
                    (LorentzMatrix::identity(), None)
                } else {
                    let from = if *b1 { sb } else { sa };
                    let (_, m) = sigma.complex.partner(from).unwrap();
                    (sigma.complex.transition(from).ok_or_else(|| fail("Σ gluing without transition"))?, Some(m))
                };
                let image = |v: &VertexKey| map.as_ref().map_or(Some(*v), |m| m.image(v));
                let pairs: Vec<(VertexKey, VertexKey)> = v1.iter().map(|v| (*v, image(v).unwrap())).collect();
                if pairs.iter().any(|(_, w)| !v2.contains(w)) {
                    return Err(fail(format!("S pentagons on Σ edge {} do not match", e.name)));
                }
                let (a, b) = (Slot::new(*s1, bars_base(bars, &faces[*s1])), Slot::new(*s2, bars_base(bars, &faces[*s2])));
                out.glue(a, b, FacetMap::new(pairs), Some(t))?;
                edges.insert(e.name.clone(), (a, b));
            }
            _ => return Err(fail(format!("{} pentagons of S meet Σ edge {}", here.len(), e.name))),
        }
    }
    if let Some(((p, f), _)) = bottoms.into_iter().next() {
        return Err(fail(format!("S meets Σ along {p}:{f}, which is not an edge of Σ")));
    }
    let surface = PleatedSurface::new(out, part)?;
    Ok(SurfaceS { surface, faces, groups: groups.iter().map(|g| g.to_string()).collect(), edges })
}

fn bars_base(bars: &[BarConstruction], f: &SFace) -> u32 {
    bars[f.bar].thick.base
}

impl SurfaceS {
    /// Parts of the pentagons around an edge or vertex stratum.
    pub fn parts_at(&self, strata: &Strata, s: usize) -> BTreeSet<u8> {
        strata.members[s].iter().map(|&(c, _)| self.surface.part[c]).collect()
    }

    fn edge_stratum(&self, strata: &Strata, slot: Slot) -> usize {
        let cat = &self.surface.complex.cells[slot.cell].catalog;
        let mut q = cat.clique.clone();
        q.push(slot.facet);
        strata.class(slot.cell, cat.find(&q).unwrap())
    }

    /// Pleated edges counted as interior to each part, then those on Θ.
    pub fn pleat_census(&self) -> Result<Vec<usize>, ScenarioError> {
        let strata = self.surface.complex.strata();
        let mut out = vec![0; self.groups.len() + 1];
        for e in self.surface.pleats()? {
            let parts = self.parts_at(&strata, e);
            match parts.len() {
                1 => out[*parts.iter().next().unwrap() as usize] += 1,
                _ => out[self.groups.len()] += 1,
            }
        }
        Ok(out)
    }

    /// The computed gluings of S against the `S` edge records: same pentagon sides, same pleat flag.
    pub fn edge_checksums(&self, data: &ScenarioData, group: &str) -> Result<usize, ScenarioError> {
        let strata = self.surface.complex.strata();
        let pleats: BTreeSet<usize> = self.surface.pleats()?.into_iter().collect();
        let x = &self.surface.complex;
        let side = |s: Slot| (x.cells[s.cell].name.clone(), s.facet);
        let mut computed: BTreeMap<[(String, u32); 2], bool> = BTreeMap::new();
        for g in x.gluings() {
            let mut k = [side(g.a), side(g.b)];
            k.sort();
            computed.insert(k, pleats.contains(&self.edge_stratum(&strata, g.a)));
        }
        let mut seen = 0;
        for e in data.edges_in(group) {
            let mut k = [(e.a.pentagon.clone(), e.a.slot), (e.b.pentagon.clone(), e.b.slot)];
            k.sort();
            let Some(&pleat) = computed.get(&k) else {
                return Err(DataError::Checksum { what: format!("S edge {}", e.name), expected: "a gluing".into(), computed: "none".into() }.into());
            };
            if pleat != e.pleat {
                let flag = |p: bool| if p { "pleat" } else { "thin" }.to_string();
                return Err(DataError::Checksum { what: format!("S edge {}", e.name), expected: flag(e.pleat), computed: flag(pleat) }.into());
            }
            seen += 1;
        }
        if seen != computed.len() {
            return Err(DataError::Checksum { what: "S edges".into(), expected: seen.to_string(), computed: computed.len().to_string() }.into());
        }
        Ok(seen)
    }

    /// Edge records for the computed gluings, in the data file's syntax.
    pub fn edge_records(&self, group: &str) -> Result<Vec<String>, ScenarioError> {
        let strata = self.surface.complex.strata();
        let pleats: BTreeSet<usize> = self.surface.pleats()?.into_iter().collect();
        let x = &self.surface.complex;
        let mut out = Vec::new();
        for (name, &(a, b)) in &self.edges {
            let flag = if pleats.contains(&self.edge_stratum(&strata, a)) { "pleat" } else { "thin" };
            out.push(format!("{group} {name} {}:{} {}:{} {flag}", x.cells[a.cell].name, a.facet, x.cells[b.cell].name, b.facet));
        }
        Ok(out)
    }

    pub fn checks(&self, data: &ScenarioData) -> Vec<Check> {
        let t = self.surface.topology();
        let mut out = vec![
            Check::new(
                "S.closed",
                t.components == 1 && t.boundary_components == 0,
                format!("{} component(s), {} boundary circle(s)", t.components, t.boundary_components),
            ),
            Check::expect("S.orientable", t.orientable, true),
            Check::expect("S.euler_characteristic", t.euler_characteristic, -4),
            Check::expect("S.genus", t.genus, Some(3)),
        ];
        let split: Vec<usize> = (0..self.groups.len()).map(|g| self.surface.part.iter().filter(|&&p| p as usize == g).count()).collect();
        out.push(Check::expect("S.pentagons", split, vec![4, 6, 6]));
        out.push(match self.pleat_census() {
            Ok(c) => Check::expect("S.pleats", c, vec![0, 6, 6, 4]),
            Err(e) => Check::error("S.pleats", e),
        });
        out.push(match self.edge_checksums(data, "S") {
            Ok(n) => Check::new("S.edge_checksums", true, format!("{n} edges match")),
            Err(e) => Check::error("S.edge_checksums", e),
        });
        out
    }
}
