use super::catalog::{CellKind, ModelCatalog, VertexKey};
use crate::golden::LorentzMatrix;
use crate::polytopes::{Cell600, Symmetry, Zsqrt5};
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CornerError {
    #[error("slot {0:?} is already glued")]
    SlotOccupied(Slot),
    #[error("slot {0:?} is not a facet of its cell")]
    UnknownSlot(Slot),
    #[error("cannot glue a {0:?} facet to a {1:?} facet")]
    KindMismatch(CellKind, CellKind),
    #[error("facet map does not preserve the face lattice at {0:?}")]
    NotLatticeMap(Slot),
    #[error("a slot cannot be glued to itself")]
    SelfGluing,
    #[error("invalid model clique {0:?}")]
    BadClique(Vec<u32>),
    #[error("colouring error: {0}")]
    Colouring(String),
    #[error("illegal star around stratum {0}: {1}")]
    IllegalStar(usize, String),
}

/// A facet of a cell: `facet` is the extra 120-cell facet id cutting it out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub cell: usize,
    pub facet: u32,
}

impl Slot {
    pub fn new(cell: usize, facet: u32) -> Self {
        Self { cell, facet }
    }
}

/// Bijection between the vertices of two facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetMap {
    pairs: Vec<(VertexKey, VertexKey)>,
}

impl FacetMap {
    pub fn new(mut pairs: Vec<(VertexKey, VertexKey)>) -> Self {
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn identity(vs: &[VertexKey]) -> Self {
        Self::new(vs.iter().map(|&v| (v, v)).collect())
    }

    /// The map induced by a symmetry of the base cell on the given vertices.
    pub fn from_symmetry(sym: &Symmetry, vs: &[VertexKey]) -> Self {
        Self::new(vs.iter().map(|v| (*v, apply_sym(sym, v))).collect())
    }

    pub fn image(&self, v: &VertexKey) -> Option<VertexKey> {
        self.pairs.binary_search_by(|(a, _)| a.cmp(v)).ok().map(|i| self.pairs[i].1)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.pairs.iter().map(|&(a, b)| (b, a)).collect())
    }

    pub fn pairs(&self) -> &[(VertexKey, VertexKey)] {
        &self.pairs
    }
}

pub fn apply_sym(sym: &Symmetry, v: &VertexKey) -> VertexKey {
    let mut w = v.map(|x| sym.apply(x as usize) as u32);
    w.sort_unstable();
    w
}

#[derive(Clone, Debug)]
pub struct Gluing {
    pub a: Slot,
    pub b: Slot,
    /// vertices of facet `a` to vertices of facet `b`
    pub map: FacetMap,
    /// Isometry placing cell `b`'s developed copy across slot `a`: the neighbour is `T · frame(b)`.
    pub transition: Option<LorentzMatrix>,
}

#[derive(Clone, Debug)]
pub struct ModelCell {
    pub catalog: Arc<ModelCatalog>,
    /// Developed position (a tessellation isometry applied to the model face).
    pub frame: Option<LorentzMatrix>,
    pub name: String,
}

impl ModelCell {
    pub fn kind(&self) -> CellKind {
        self.catalog.kind
    }
}

/// Equivalence classes of model faces under the gluings.
#[derive(Clone, Debug)]
pub struct Strata {
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    pub members: Vec<Vec<(usize, usize)>>,
    pub dims: Vec<usize>,
}

impl Strata {
    pub fn class(&self, cell: usize, face: usize) -> usize {
        self.class_of[self.offsets[cell] + face]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut out = vec![0; self.dims.iter().max().map_or(0, |d| d + 1)];
        for &d in &self.dims {
            out[d] += 1;
        }
        out
    }
}

/// Right-angled model cells glued along facets.
#[derive(Clone, Debug)]
pub struct CornerComplex {
    pub polytope: Arc<Cell600>,
    catalogs: HashMap<Vec<u32>, Arc<ModelCatalog>>,
    pub cells: Vec<ModelCell>,
    gluings: Vec<Option<Gluing>>,
    slot_gluing: HashMap<Slot, usize>,
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root for deterministic representatives
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

impl CornerComplex {
    pub fn new(polytope: Arc<Cell600>) -> Self {
        Self { polytope, catalogs: HashMap::new(), cells: Vec::new(), gluings: Vec::new(), slot_gluing: HashMap::new() }
    }

    pub fn catalog(&mut self, clique: &[u32]) -> Result<Arc<ModelCatalog>, CornerError> {
        let mut k = clique.to_vec();
        k.sort_unstable();
        if let Some(c) = self.catalogs.get(&k) {
            return Ok(c.clone());
        }
        let c = Arc::new(ModelCatalog::new(&self.polytope, &k).ok_or_else(|| CornerError::BadClique(k.clone()))?);
        self.catalogs.insert(k, c.clone());
        Ok(c)
    }

    pub fn add_cell(&mut self, clique: &[u32], frame: Option<LorentzMatrix>, name: impl Into<String>) -> Result<usize, CornerError> {
        let catalog = self.catalog(clique)?;
        self.cells.push(ModelCell { catalog, frame, name: name.into() });
        Ok(self.cells.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn gluings(&self) -> impl Iterator<Item = &Gluing> {
        self.gluings.iter().flatten()
    }

    pub fn gluing_at(&self, s: Slot) -> Option<&Gluing> {
        self.slot_gluing.get(&s).and_then(|&i| self.gluings[i].as_ref())
    }

    /// The partner slot and the facet map from `s` to it.
    pub fn partner(&self, s: Slot) -> Option<(Slot, FacetMap)> {
        let g = self.gluing_at(s)?;
        if g.a == s {
            Some((g.b, g.map.clone()))
        } else {
            Some((g.a, g.map.inverse()))
        }
    }

    /// Transition isometry for crossing slot `s`: the neighbour is `T · frame(partner)`.
    pub fn transition(&self, s: Slot) -> Option<LorentzMatrix> {
        let g = self.gluing_at(s)?;
        let t = g.transition.clone()?;
        Some(if g.a == s { t } else { t.isometry_inverse() })
    }

    pub fn slots(&self, cell: usize) -> Vec<Slot> {
        self.cells[cell].catalog.facet_ids().into_iter().map(|f| Slot::new(cell, f)).collect()
    }

    pub fn free_slots(&self) -> Vec<Slot> {
        (0..self.cells.len()).flat_map(|c| self.slots(c)).filter(|s| !self.slot_gluing.contains_key(s)).collect()
    }

    pub fn is_free(&self, s: Slot) -> bool {
        !self.slot_gluing.contains_key(&s)
    }

    /// Face index of the facet named by a slot.
    pub fn slot_face(&self, s: Slot) -> Option<usize> {
        self.cells.get(s.cell)?.catalog.facet_face(s.facet)
    }

    pub fn slot_vertices(&self, s: Slot) -> Option<&[VertexKey]> {
        let f = self.slot_face(s)?;
        Some(&self.cells[s.cell].catalog.vertices[f])
    }

    pub fn glue(&mut self, a: Slot, b: Slot, map: FacetMap, transition: Option<LorentzMatrix>) -> Result<usize, CornerError> {
        if a == b {
            return Err(CornerError::SelfGluing);
        }
        for s in [a, b] {
            if self.slot_face(s).is_none() {
                return Err(CornerError::UnknownSlot(s));
            }
            if self.slot_gluing.contains_key(&s) {
                return Err(CornerError::SlotOccupied(s));
            }
        }
        let (ka, kb) = (self.cells[a.cell].kind(), self.cells[b.cell].kind());
        if ka != kb {
            return Err(CornerError::KindMismatch(ka, kb));
        }
        self.check_lattice_map(a, b, &map)?;
        let id = self.gluings.len();
        self.gluings.push(Some(Gluing { a, b, map, transition }));
        self.slot_gluing.insert(a, id);
        self.slot_gluing.insert(b, id);
        Ok(id)
    }

    /// Glue by the map induced by a symmetry sending facet `b` onto facet `a`.
    pub fn glue_by_symmetry(&mut self, a: Slot, b: Slot, sym_b_to_a: &Symmetry, transition: Option<LorentzMatrix>) -> Result<usize, CornerError> {
        let vb = self.slot_vertices(b).ok_or(CornerError::UnknownSlot(b))?.to_vec();
        let map = FacetMap::from_symmetry(sym_b_to_a, &vb).inverse();
        self.glue(a, b, map, transition)
    }

    pub fn unglue(&mut self, s: Slot) -> Option<Gluing> {
        let id = self.slot_gluing.remove(&s)?;
        let g = self.gluings[id].take()?;
        self.slot_gluing.remove(&g.a);
        self.slot_gluing.remove(&g.b);
        Some(g)
    }

    fn check_lattice_map(&self, a: Slot, b: Slot, map: &FacetMap) -> Result<(), CornerError> {
        let ca = &self.cells[a.cell].catalog;
        let cb = &self.cells[b.cell].catalog;
        let fa = ca.facet_face(a.facet).unwrap();
        let fb = cb.facet_face(b.facet).unwrap();
        let va = &ca.vertices[fa];
        let mut img: Vec<VertexKey> = Vec::with_capacity(va.len());
        for v in va {
            img.push(map.image(v).ok_or(CornerError::NotLatticeMap(a))?);
        }
        img.sort_unstable();
        if map.pairs().len() != va.len() || img != cb.vertices[fb] {
            return Err(CornerError::NotLatticeMap(a));
        }
        for face in ca.subfaces(fa) {
            let im: Vec<VertexKey> = ca.vertices[face].iter().map(|v| map.image(v).unwrap()).collect();
            if cb.find_by_vertices(&im).is_none() {
                return Err(CornerError::NotLatticeMap(a));
            }
        }
        Ok(())
    }

    /// Image of face `face` of the cell at slot `s` under the gluing at `s`.
    pub fn face_across(&self, s: Slot, face: usize) -> Option<(usize, usize)> {
        let (t, map) = self.partner(s)?;
        let ca = &self.cells[s.cell].catalog;
        let im: Vec<VertexKey> = ca.vertices[face].iter().map(|v| map.image(v)).collect::<Option<_>>()?;
        Some((t.cell, self.cells[t.cell].catalog.find_by_vertices(&im)?))
    }

    pub fn strata(&self) -> Strata {
        let mut offsets = Vec::with_capacity(self.cells.len());
        let mut n = 0;
        for c in &self.cells {
            offsets.push(n);
            n += c.catalog.faces.len();
        }
        let mut uf = UnionFind::new(n);
        for g in self.gluings() {
            let ca = &self.cells[g.a.cell].catalog;
            let fa = ca.facet_face(g.a.facet).unwrap();
            for face in ca.subfaces(fa) {
                let (cb, fb) = self.face_across(g.a, face).expect("validated gluing");
                uf.union(offsets[g.a.cell] + face, offsets[cb] + fb);
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut dims = Vec::new();
        let mut root_class = HashMap::new();
        for (c, cell) in self.cells.iter().enumerate() {
            for f in 0..cell.catalog.faces.len() {
                let r = uf.find(offsets[c] + f);
                let k = *root_class.entry(r).or_insert_with(|| {
                    members.push(Vec::new());
                    dims.push(cell.catalog.face_dim(f));
                    members.len() - 1
                });
                class_of[offsets[c] + f] = k;
                members[k].push((c, f));
            }
        }
        Strata { offsets, class_of, members, dims }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.strata().dims.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Sign of the canonical orientation of `cell` against the ordered frame
    /// given by the facets through vertex `v` in increasing order.
    fn vertex_sign(&self, cell: usize, v: &VertexKey) -> i32 {
        let k = &self.cells[cell].catalog.clique;
        let rest: Vec<u32> = v.iter().copied().filter(|x| !k.contains(x)).collect();
        let order: Vec<usize> = k.iter().chain(&rest).map(|&x| x as usize).collect();
        let rows: Vec<[Zsqrt5; 4]> = order.iter().map(|&i| self.polytope.vertices[i]).collect();
        let s = det4(&rows).to_golden(1).signum();
        if rest.len() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// +1 if the gluing identifies the cells with matching orientations when both
    /// carry their canonical orientation (so they must get opposite signs), -1 otherwise.
    fn gluing_parity(&self, g: &Gluing) -> i32 {
        let ca = &self.cells[g.a.cell].catalog;
        let fa = ca.facet_face(g.a.facet).unwrap();
        let v = ca.vertices[fa][0];
        let w = g.map.image(&v).unwrap();
        let side = |cell: usize, f: u32, vert: &VertexKey, ridges: &[u32]| -> i32 {
            let k = &self.cells[cell].catalog.clique;
            let mut sorted: Vec<u32> = vert.iter().copied().filter(|x| !k.contains(x)).collect();
            sorted.sort_unstable();
            let ordered: Vec<u32> = std::iter::once(f).chain(ridges.iter().copied()).collect();
            perm_sign(&sorted, &ordered) * self.vertex_sign(cell, vert)
        };
        let mut ga: Vec<u32> = v.iter().copied().filter(|x| !ca.clique.contains(x) && *x != g.a.facet).collect();
        ga.sort_unstable();
        // image ridges on the b side
        let gb: Vec<u32> = ga
            .iter()
            .map(|&r| {
                let mut fc = ca.clique.clone();
                fc.push(g.a.facet);
                fc.push(r);
                let ridge = ca.find(&fc).unwrap();
                let (_, rb) = self.face_across(g.a, ridge).unwrap();
                let cb = &self.cells[g.b.cell].catalog;
                *cb.faces[rb].iter().find(|x| !cb.clique.contains(x) && **x != g.b.facet).unwrap()
            })
            .collect();
        side(g.a.cell, g.a.facet, &v, &ga) * side(g.b.cell, g.b.facet, &w, &gb)
    }

    /// An orientation sign per cell making every gluing orientation-reversing, if one exists.
    pub fn orientation(&self) -> Option<Vec<i8>> {
        let mut adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); self.cells.len()];
        for g in self.gluings() {
            // required product of the two signs
            let need = -self.gluing_parity(g);
            adj[g.a.cell].push((g.b.cell, need));
            adj[g.b.cell].push((g.a.cell, need));
        }
        let mut sign = vec![0i8; self.cells.len()];
        for start in 0..self.cells.len() {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut q = VecDeque::from([start]);
            while let Some(c) = q.pop_front() {
                for &(d, need) in &adj[c] {
                    let want = (sign[c] as i32 * need) as i8;
                    if sign[d] == 0 {
                        sign[d] = want;
                        q.push_back(d);
                    } else if sign[d] != want {
                        return None;
                    }
                }
            }
        }
        Some(sign)
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation().is_some()
    }

    /// Number of connected components of the cell adjacency graph.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.cells.len());
        let mut n = self.cells.len();
        for g in self.gluings() {
            if uf.union(g.a.cell, g.b.cell) {
                n -= 1;
            }
        }
        n
    }
}

pub(crate) fn det4(m: &[[Zsqrt5; 4]]) -> Zsqrt5 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = Zsqrt5::new(0, 0);
    for c in 0..n {
        let minor: Vec<[Zsqrt5; 4]> = m[1..]
            .iter()
            .map(|row| {
                let mut r = [Zsqrt5::new(0, 0); 4];
                let mut k = 0;
                for (j, x) in row.iter().enumerate().take(n) {
                    if j != c {
                        r[k] = *x;
                        k += 1;
                    }
                }
                r
            })
            .collect();
        let t = m[0][c].mul(det4(&minor));
        acc = if c % 2 == 0 { acc.add(t) } else { acc.add(t.neg()) };
    }
    acc
}

/// Sign of the permutation taking `sorted` to `ordered` (same elements).
pub(crate) fn perm_sign(sorted: &[u32], ordered: &[u32]) -> i32 {
    let idx: Vec<usize> = ordered.iter().map(|x| sorted.iter().position(|y| y == x).unwrap()).collect();
    let mut inv = 0;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] > idx[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the determinant of the 600-cell vectors listed in `ordered`.
pub(crate) fn ordered_sign(cell: &Cell600, ordered: &[u32]) -> i32 {
    let rows: Vec<[Zsqrt5; 4]> = ordered.iter().map(|&i| cell.vertices[i as usize]).collect();
    det4(&rows).to_golden(1).signum()
}
