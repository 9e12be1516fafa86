use super::complex::{CornerComplex, CornerError, FacetMap, Slot, Strata, UnionFind};
use std::collections::{BTreeMap, HashMap};

/// The boundary facets of a complex: maximal unions of free slots joined across
/// straight (two-corner) ridges.
#[derive(Clone, Debug)]
pub struct BoundaryFacets {
    pub facets: Vec<Vec<Slot>>,
    pub facet_of: HashMap<Slot, usize>,
    /// whether the abstract facet maps injectively to the strata
    pub embedded: Vec<bool>,
    /// pairs of facets meeting along a right-angled ridge
    pub adjacent: Vec<(usize, usize)>,
    /// number of right-angled corners of the facet polygon (2-dimensional facets only)
    pub corners: Vec<usize>,
}

impl BoundaryFacets {
    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        let k = if a < b { (a, b) } else { (b, a) };
        self.adjacent.binary_search(&k).is_ok()
    }

    /// Count facets by number of polygon corners.
    pub fn corner_census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &c in &self.corners {
            *out.entry(c).or_insert(0) += 1;
        }
        out
    }

    pub fn non_embedded(&self) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| !self.embedded[i]).collect()
    }
}

/// Embedded flag per stratum: no cell meets the stratum in two distinct model faces.
pub fn embedded_faces_report(x: &CornerComplex) -> Vec<bool> {
    let st = x.strata();
    st.members
        .iter()
        .map(|m| {
            let mut cells: Vec<usize> = m.iter().map(|&(c, _)| c).collect();
            cells.sort_unstable();
            cells.windows(2).all(|w| w[0] != w[1])
        })
        .collect()
}

impl CornerComplex {
    /// Ridge faces of a slot: faces of codimension one inside the facet.
    fn slot_ridges(&self, s: Slot) -> Vec<usize> {
        let cat = &self.cells[s.cell].catalog;
        let f = cat.facet_face(s.facet).unwrap();
        let n = cat.faces[f].len() + 1;
        cat.subfaces(f).filter(|&r| cat.faces[r].len() == n).collect()
    }

    pub fn boundary_facets(&self) -> BoundaryFacets {
        let st = self.strata();
        self.boundary_facets_with(&st)
    }

    pub fn boundary_facets_with(&self, st: &Strata) -> BoundaryFacets {
        let free = self.free_slots();
        let mut by_ridge: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, &s) in free.iter().enumerate() {
            for r in self.slot_ridges(s) {
                by_ridge.entry(st.class(s.cell, r)).or_default().push((i, r));
            }
        }
        let mut uf = UnionFind::new(free.len());
        let mut straight = Vec::new();
        let mut right = Vec::new();
        for (&ridge, inc) in &by_ridge {
            let corners = st.members[ridge].len();
            if corners == 2 && inc.len() == 2 {
                uf.union(inc[0].0, inc[1].0);
                straight.push((inc[0], inc[1]));
            } else if corners == 1 && inc.len() == 2 {
                right.push((inc[0].0, inc[1].0));
            }
        }
        let mut facet_id = HashMap::new();
        let mut facets: Vec<Vec<Slot>> = Vec::new();
        for (i, &s) in free.iter().enumerate() {
            let r = uf.find(i);
            let k = *facet_id.entry(r).or_insert_with(|| {
                facets.push(Vec::new());
                facets.len() - 1
            });
            facets[k].push(s);
        }
        let facet_of: HashMap<Slot, usize> = free.iter().enumerate().map(|(i, &s)| (s, facet_id[&uf.find(i)])).collect();
        let mut adjacent: Vec<(usize, usize)> = right
            .iter()
            .map(|&(a, b)| {
                let (fa, fb) = (facet_of[&free[a]], facet_of[&free[b]]);
                if fa < fb {
                    (fa, fb)
                } else {
                    (fb, fa)
                }
            })
            .collect();
        adjacent.sort_unstable();
        adjacent.dedup();

        // abstract facets: slot faces identified only across straight ridges
        let mut off = Vec::with_capacity(free.len());
        let mut faces_of: Vec<Vec<usize>> = Vec::with_capacity(free.len());
        let mut n = 0;
        for &s in &free {
            let cat = &self.cells[s.cell].catalog;
            let fs: Vec<usize> = cat.subfaces(cat.facet_face(s.facet).unwrap()).collect();
            off.push(n);
            n += fs.len();
            faces_of.push(fs);
        }
        let local = |i: usize, face: usize| off[i] + faces_of[i].iter().position(|&x| x == face).unwrap();
        let mut auf = UnionFind::new(n);
        for &((i1, r1), (i2, r2)) in &straight {
            let (s1, s2) = (free[i1], free[i2]);
            let cat1 = &self.cells[s1.cell].catalog;
            // the other facet of cell 1 through the ridge is glued towards cell 2
            let h = *cat1.faces[r1].iter().find(|x| !cat1.clique.contains(x) && **x != s1.facet).unwrap();
            let through = Slot::new(s1.cell, h);
            let mut matched = false;
            if let Some((t, _)) = self.partner(through) {
                if t.cell == s2.cell {
                    if let Some((_, r2img)) = self.face_across(through, r1) {
                        if r2img == r2 {
                            matched = true;
                            for sub in cat1.subfaces(r1) {
                                let (_, img) = self.face_across(through, sub).unwrap();
                                auf.union(local(i1, sub), local(i2, img));
                            }
                        }
                    }
                }
            }
            if !matched {
                auf.union(local(i1, r1), local(i2, r2));
            }
        }
        let mut embedded = vec![true; facets.len()];
        let mut corners = vec![0; facets.len()];
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut class_size: HashMap<usize, usize> = HashMap::new();
        for (i, &s) in free.iter().enumerate() {
            for &face in &faces_of[i] {
                let a = auf.find(local(i, face));
                *class_size.entry(a).or_insert(0) += 1;
                let key = (facet_of[&s], st.class(s.cell, face));
                match seen.get(&key) {
                    Some(&prev) if prev != a => embedded[key.0] = false,
                    Some(_) => {}
                    None => {
                        seen.insert(key, a);
                    }
                }
            }
        }
        for (i, &s) in free.iter().enumerate() {
            let cat = &self.cells[s.cell].catalog;
            for &face in &faces_of[i] {
                let a = auf.find(local(i, face));
                if cat.face_dim(face) == 0 && class_size[&a] == 1 && cat.dim() == 3 {
                    corners[facet_of[&s]] += 1;
                }
            }
        }
        BoundaryFacets { facets, facet_of, embedded, adjacent, corners }
    }
}

/// A partial colouring of boundary facets, stored per slot so that it survives mirroring.
#[derive(Clone, Debug, Default)]
pub struct Colouring {
    pub slot_colour: BTreeMap<Slot, u8>,
}

impl Colouring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Colour a whole boundary facet.
    pub fn colour_facet(&mut self, facets: &BoundaryFacets, facet: usize, colour: u8) {
        for &s in &facets.facets[facet] {
            self.slot_colour.insert(s, colour);
        }
    }

    pub fn colours(&self) -> Vec<u8> {
        let mut c: Vec<u8> = self.slot_colour.values().copied().collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Proper on embedded facets, and each facet coloured uniformly.
    pub fn validate(&self, x: &CornerComplex, facets: &BoundaryFacets) -> Result<(), CornerError> {
        let mut per_facet: HashMap<usize, u8> = HashMap::new();
        for (s, &c) in &self.slot_colour {
            let f = *facets.facet_of.get(s).ok_or_else(|| CornerError::Colouring(format!("{s:?} is not a free slot")))?;
            if let Some(&old) = per_facet.get(&f) {
                if old != c {
                    return Err(CornerError::Colouring(format!("facet {f} has two colours")));
                }
            }
            per_facet.insert(f, c);
        }
        for &f in per_facet.keys() {
            if !facets.embedded[f] {
                return Err(CornerError::Colouring(format!("facet {f} is not embedded")));
            }
            if facets.facets[f].iter().any(|s| !self.slot_colour.contains_key(s)) {
                return Err(CornerError::Colouring(format!("facet {f} partially coloured")));
            }
        }
        for &(a, b) in &facets.adjacent {
            if let (Some(ca), Some(cb)) = (per_facet.get(&a), per_facet.get(&b)) {
                if ca == cb {
                    return Err(CornerError::Colouring(format!("adjacent facets {a}, {b} share colour {ca}")));
                }
            }
        }
        let _ = x;
        Ok(())
    }
}

/// Double the complex along each colour class in turn.
pub fn mirror(x: &CornerComplex, c: &Colouring) -> Result<CornerComplex, CornerError> {
    let facets = x.boundary_facets();
    c.validate(x, &facets)?;
    let mut cur = x.clone();
    let mut colouring = c.slot_colour.clone();
    for colour in c.colours() {
        let n = cur.cells.len();
        let mut next = cur.clone();
        for i in 0..n {
            let cell = &cur.cells[i];
            next.add_cell(&cell.catalog.clique.clone(), None, format!("{}'", cell.name))?;
        }
        let gl: Vec<_> = cur.gluings().cloned().collect();
        for g in gl {
            next.glue(Slot::new(g.a.cell + n, g.a.facet), Slot::new(g.b.cell + n, g.b.facet), g.map.clone(), None)?;
        }
        let mut new_colouring = colouring.clone();
        for (&s, &k) in &colouring {
            if k == colour {
                let vs = cur.slot_vertices(s).unwrap().to_vec();
                next.glue(s, Slot::new(s.cell + n, s.facet), FacetMap::identity(&vs), None)?;
                new_colouring.remove(&s);
            } else {
                new_colouring.insert(Slot::new(s.cell + n, s.facet), k);
            }
        }
        colouring = new_colouring;
        cur = next;
    }
    Ok(cur)
}
