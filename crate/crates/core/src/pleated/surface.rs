use super::path::{glt_weight_exact, EdgePath, PathError, Turn};
use crate::corners::{CellKind, CornerComplex, Slot, Strata, VertexKey};
use crate::golden::{GoldenScalar, LorentzMatrix, LorentzVector};
use crate::polytopes::LinkVertex;
use num_rational::Rational64;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("cell {0} is not a pentagon")]
    NotPentagon(usize),
    #[error("cell {0} has no developed position")]
    MissingFrame(usize),
    #[error("gluing at {0:?} carries no transition isometry")]
    MissingTransition(Slot),
    #[error("vertex stratum {0} lies on the boundary")]
    BoundaryVertex(usize),
    #[error("star of vertex stratum {0} has nontrivial holonomy")]
    Holonomy(usize),
    #[error("star of vertex stratum {0} leaves the four hyperplanes through the vertex")]
    NotInStar(usize),
    #[error("star of vertex stratum {0} is not a single disc")]
    NotADisc(usize),
    #[error("link of vertex stratum {0}: {1}")]
    Link(usize, PathError),
    #[error("edge stratum {0} has inconsistent pleating at its ends")]
    PleatMismatch(usize),
}

/// A surface assembled from right-angled pentagons of the tessellation, glued
/// edge to edge, each carrying its developed position.
#[derive(Clone, Debug)]
pub struct PleatedSurface {
    pub complex: CornerComplex,
    /// piece label per pentagon
    pub part: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTopology {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub components: usize,
    pub boundary_components: usize,
    /// for a connected orientable surface
    pub genus: Option<i64>,
}

/// Link of a vertex of the surface, read in a local orthant chart.
#[derive(Clone, Debug)]
pub struct VertexLink {
    pub stratum: usize,
    pub path: EdgePath,
    /// edge stratum of the surface edge leaving the vertex at each path vertex
    pub edges: Vec<usize>,
    pub weight: Rational64,
}

#[derive(Clone, Debug)]
pub struct SelfIntersection {
    pub total: Rational64,
    pub links: Vec<VertexLink>,
}

impl SelfIntersection {
    pub fn nonzero(&self) -> impl Iterator<Item = &VertexLink> {
        self.links.iter().filter(|l| !l.weight.is_zero())
    }
}

fn model_normal(x: &CornerComplex, facet: u32) -> LorentzVector {
    LorentzVector::with_unit_time(&x.polytope.vertex(facet as usize))
}

fn det4(mut m: [[GoldenScalar; 4]; 4]) -> GoldenScalar {
    let mut det = GoldenScalar::int(1);
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| !m[r][c].is_zero()) else { return GoldenScalar::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let inv = m[c][c].inverse().unwrap();
        det = &det * &m[c][c];
        for r in c + 1..4 {
            if !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..4 {
                    let d = &f * &m[c][k];
                    m[r][k] -= &d;
                }
            }
        }
    }
    det
}

/// `λ` with `a = λ b`, for proportional nonzero vectors.
fn ratio(a: &LorentzVector, b: &LorentzVector) -> Option<GoldenScalar> {
    if !a.is_proportional(b) {
        return None;
    }
    let k = (0..5).find(|&k| !b.0[k].is_zero())?;
    Some(&a.0[k] * &b.0[k].inverse()?)
}

/// Oriented orthant chart at a vertex: four developed normals.
struct Chart {
    normals: Vec<LorentzVector>,
}

impl Chart {
    fn new(mut normals: Vec<LorentzVector>) -> Self {
        let spatial: [[GoldenScalar; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| normals[i].0[j + 1].clone()));
        if det4(spatial).is_negative() {
            normals.swap(0, 1);
        }
        Self { normals }
    }

    /// Link vertex of the edge leaving the vertex perpendicular to the developed
    /// hyperplane with normal `m`, pointing into the cell `b(x, m) < 0`.
    fn direction(&self, m: &LorentzVector) -> Option<LinkVertex> {
        self.normals.iter().enumerate().find_map(|(i, n)| {
            let l = ratio(m, n)?;
            Some(LinkVertex::new(i as u8, l.is_negative()))
        })
    }
}

impl PleatedSurface {
    pub fn new(complex: CornerComplex, part: Vec<u8>) -> Result<Self, SurfaceError> {
        for (i, c) in complex.cells.iter().enumerate() {
            if c.kind() != CellKind::Pentagon {
                return Err(SurfaceError::NotPentagon(i));
            }
            if c.frame.is_none() {
                return Err(SurfaceError::MissingFrame(i));
            }
        }
        Ok(Self { complex, part })
    }

    pub fn topology(&self) -> SurfaceTopology {
        surface_topology(&self.complex)
    }

    /// Developed star of a vertex stratum: pentagon corners in cyclic order.
    fn walk(&self, strata: &Strata, s: usize) -> Result<Vec<Corner>, SurfaceError> {
        let x = &self.complex;
        let &(c0, f0) = &strata.members[s][0];
        let v0 = x.cells[c0].catalog.vertices[f0][0];
        let other = |c: usize, v: &VertexKey, not: u32| -> u32 {
            let k = &x.cells[c].catalog.clique;
            *v.iter().find(|r| !k.contains(r) && **r != not).unwrap()
        };
        let k0 = &x.cells[c0].catalog.clique;
        let r0 = *v0.iter().find(|r| !k0.contains(r)).unwrap();
        let mut out = Vec::new();
        let (mut c, mut v, mut r_in, mut g) = (c0, v0, r0, LorentzMatrix::identity());
        loop {
            let r_out = other(c, &v, r_in);
            let frame = x.cells[c].frame.as_ref().ok_or(SurfaceError::MissingFrame(c))?;
            let placed = g.compose(frame);
            out.push(Corner { cell: c, vertex: v, r_in, r_out, placed: placed.clone() });
            let slot = Slot::new(c, r_out);
            let (t, map) = x.partner(slot).ok_or(SurfaceError::BoundaryVertex(s))?;
            let tr = x.transition(slot).ok_or(SurfaceError::MissingTransition(slot))?;
            g = g.compose(&tr);
            c = t.cell;
            v = map.image(&v).unwrap();
            r_in = t.facet;
            if c == c0 && v == v0 && r_in == r0 {
                if g != LorentzMatrix::identity() {
                    return Err(SurfaceError::Holonomy(s));
                }
                break;
            }
            if out.len() > strata.members[s].len() {
                return Err(SurfaceError::NotADisc(s));
            }
        }
        if out.len() != strata.members[s].len() {
            return Err(SurfaceError::NotADisc(s));
        }
        Ok(out)
    }

    /// Link of a vertex stratum as a closed path in the octahedral 3-sphere.
    pub fn vertex_link(&self, strata: &Strata, s: usize) -> Result<VertexLink, SurfaceError> {
        let x = &self.complex;
        let corners = self.walk(strata, s)?;
        let first = &corners[0];
        let chart = Chart::new(first.vertex.iter().map(|&h| first.placed.apply(&model_normal(x, h))).collect());
        let mut verts = Vec::with_capacity(corners.len());
        let mut edges = Vec::with_capacity(corners.len());
        for (i, cr) in corners.iter().enumerate() {
            let dir = |h: u32| chart.direction(&cr.placed.apply(&model_normal(x, h))).ok_or(SurfaceError::NotInStar(s));
            let enter = dir(cr.r_out)?;
            let exit = dir(cr.r_in)?;
            if i > 0 && verts.last() != Some(&enter) {
                return Err(SurfaceError::NotInStar(s));
            }
            verts.push(exit);
            let cat = &x.cells[cr.cell].catalog;
            let mut e = cat.clique.clone();
            e.push(cr.r_out);
            edges.push(strata.class(cr.cell, cat.find(&e).unwrap()));
        }
        // the first corner's entering edge closes the loop
        let c0 = &corners[0];
        let enter0 = chart.direction(&c0.placed.apply(&model_normal(x, c0.r_out))).unwrap();
        if verts.last() != Some(&enter0) {
            return Err(SurfaceError::NotInStar(s));
        }
        verts.rotate_right(1);
        edges.rotate_right(1);
        let path = EdgePath::new(verts).map_err(|e| SurfaceError::Link(s, e))?;
        let weight = glt_weight_exact(&path);
        Ok(VertexLink { stratum: s, path, edges, weight })
    }

    pub fn vertex_links(&self) -> Result<Vec<VertexLink>, SurfaceError> {
        let strata = self.complex.strata();
        (0..strata.len()).filter(|&s| strata.dims[s] == 0).map(|s| self.vertex_link(&strata, s)).collect()
    }

    /// Pleated edge strata: the two pentagons along the edge are not coplanar.
    pub fn pleats(&self) -> Result<Vec<usize>, SurfaceError> {
        let mut seen: BTreeMap<usize, bool> = BTreeMap::new();
        for link in self.vertex_links()? {
            for (i, &e) in link.edges.iter().enumerate() {
                let bent = link.path.turn(i) == Turn::RightAngle;
                if *seen.entry(e).or_insert(bent) != bent {
                    return Err(SurfaceError::PleatMismatch(e));
                }
            }
        }
        Ok(seen.into_iter().filter(|&(_, b)| b).map(|(e, _)| e).collect())
    }

    /// Self-intersection as the sum of the push-off weights of the vertex links.
    pub fn self_intersection(&self) -> Result<SelfIntersection, SurfaceError> {
        let links = self.vertex_links()?;
        let total = links.iter().map(|l| l.weight).sum();
        Ok(SelfIntersection { total, links })
    }
}

#[derive(Clone, Debug)]
struct Corner {
    cell: usize,
    vertex: VertexKey,
    r_in: u32,
    r_out: u32,
    placed: LorentzMatrix,
}

/// Euler characteristic, orientability, boundary and genus of a pentagon complex.
pub fn surface_topology(x: &CornerComplex) -> SurfaceTopology {
    let strata = x.strata();
    let by_dim = strata.count_by_dim();
    let get = |d: usize| by_dim.get(d).copied().unwrap_or(0);
    let chi = x.euler_characteristic();
    let orientable = x.is_orientable();
    let components = x.components();
    // boundary circles: components of the graph of free edges
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn find(p: &mut BTreeMap<usize, usize>, a: usize) -> usize {
        let mut r = a;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        p.insert(a, r);
        r
    }
    for s in x.free_slots() {
        let cat = &x.cells[s.cell].catalog;
        let f = cat.facet_face(s.facet).unwrap();
        let ends: Vec<usize> =
            cat.subfaces(f).filter(|&g| cat.face_dim(g) == 0).map(|g| strata.class(s.cell, g)).collect();
        for &e in &ends {
            parent.entry(e).or_insert(e);
        }
        let (a, b) = (find(&mut parent, ends[0]), find(&mut parent, ends[1]));
        if a != b {
            parent.insert(a.max(b), a.min(b));
        }
    }
    let keys: Vec<usize> = parent.keys().copied().collect();
    let mut roots: Vec<usize> = keys.iter().map(|&k| find(&mut parent, k)).collect();
    roots.sort_unstable();
    roots.dedup();
    let boundary_components = roots.len();
    let genus = (orientable && components == 1).then(|| (2 - chi - boundary_components as i64) / 2);
    SurfaceTopology {
        vertices: get(0),
        edges: get(1),
        faces: get(2),
        euler_characteristic: chi,
        orientable,
        components,
        boundary_components,
        genus,
    }
}
