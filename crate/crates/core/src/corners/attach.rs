use super::complex::{CornerComplex, CornerError, FacetMap, Slot};
use super::facets::BoundaryFacets;
use crate::polytopes::{Symmetry, SymmetryGroup};
use std::collections::BTreeMap;

/// Result of thickening a complex by one layer of cells.
#[derive(Clone, Debug)]
pub struct Thickening {
    pub complex: CornerComplex,
    /// `layer[i]`: the new cell attached above base cell `i`
    pub layer: Vec<usize>,
    /// base slot of each new cell (the facet lying on the original complex)
    pub base_slots: Vec<Slot>,
    pub facets: BoundaryFacets,
    /// boundary facets neither on nor adjacent to the base or the walls over free facets
    pub top: Vec<usize>,
}

impl Thickening {
    /// Top facets counted by number of polygon corners.
    pub fn top_census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &f in &self.top {
            *out.entry(self.facets.corners[f]).or_insert(0) += 1;
        }
        out
    }
}

/// The symmetry of the base cell carrying the facet `slot_b` of a cell with clique
/// `kb` onto `slot_a` of a cell with clique `ka`, inducing `map` (a to b) on vertices.
/// `ka` and `kb` list the clique elements in corresponding order.
pub fn extension_symmetry(
    x: &CornerComplex,
    group: &SymmetryGroup,
    ka: &[u32],
    kb: &[u32],
    slot_a: Slot,
    slot_b: Slot,
    map: &FacetMap,
) -> Option<Symmetry> {
    let cat_a = &x.cells[slot_a.cell].catalog;
    let va = x.slot_vertices(slot_a)?[0];
    let vb = map.image(&va)?;
    let mut from: Vec<usize> = kb.iter().map(|&v| v as usize).collect();
    let mut to: Vec<usize> = ka.iter().map(|&v| v as usize).collect();
    from.push(slot_b.facet as usize);
    to.push(slot_a.facet as usize);
    let cat_b = &x.cells[slot_b.cell].catalog;
    for &z in va.iter().filter(|z| !cat_a.clique.contains(z) && **z != slot_a.facet) {
        let mut r = cat_a.clique.clone();
        r.push(slot_a.facet);
        r.push(z);
        let rf = cat_a.find(&r)?;
        let img: Vec<_> = cat_a.vertices[rf].iter().map(|v| map.image(v)).collect::<Option<_>>()?;
        let rb = cat_b.find_by_vertices(&img)?;
        let zb = *cat_b.faces[rb].iter().find(|w| !cat_b.clique.contains(w) && **w != slot_b.facet)?;
        from.push(zb as usize);
        to.push(z as usize);
    }
    let _ = vb;
    let g = group.mapping(&from, &to).next()?;
    Some(group.elements[g].clone())
}

/// Attach one cell of the next dimension above every cell of `x`.
///
/// `base_facet(i)` names the facet of cell `i` that becomes the base of the
/// new cell: the new cell has clique `K_i \ {base_facet(i)}`, so the old cell is
/// its facet `base_facet(i)`. Side facets of neighbouring new cells are glued by
/// the unique extension of the old gluings.
pub fn attach_above(
    x: &CornerComplex,
    group: &SymmetryGroup,
    base_facet: impl Fn(usize) -> u32,
) -> Result<Thickening, CornerError> {
    let mut out = CornerComplex::new(x.polytope.clone());
    let mut layer = Vec::new();
    let mut base_slots = Vec::new();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for (i, c) in x.cells.iter().enumerate() {
        let b = base_facet(i);
        if !c.catalog.clique.contains(&b) {
            return Err(CornerError::BadClique(c.catalog.clique.clone()));
        }
        let k: Vec<u32> = c.catalog.clique.iter().copied().filter(|&v| v != b).collect();
        let id = out.add_cell(&k, c.frame.clone(), format!("{}^", c.name))?;
        layer.push(id);
        base_slots.push(Slot::new(id, b));
        let mut order = k.clone();
        order.push(b);
        kept.push(order);
    }
    for g in x.gluings() {
        let sym = extension_symmetry(x, group, &kept[g.a.cell], &kept[g.b.cell], g.a, g.b, &g.map)
            .expect("right-angled gluings extend to the attached cells");
        let a = Slot::new(layer[g.a.cell], g.a.facet);
        let b = Slot::new(layer[g.b.cell], g.b.facet);
        out.glue_by_symmetry(a, b, &sym, g.transition.clone())?;
    }
    let facets = out.boundary_facets();
    // floor and walls: the base facets and the facets over free facets of `x`
    let mut walls: Vec<usize> = base_slots.iter().map(|s| facets.facet_of[s]).collect();
    walls.extend(x.free_slots().iter().map(|s| facets.facet_of[&Slot::new(layer[s.cell], s.facet)]));
    let top = (0..facets.facets.len())
        .filter(|&f| walls.iter().all(|&b| b != f && !facets.are_adjacent(b, f)))
        .collect();
    Ok(Thickening { complex: out, layer, base_slots, facets, top })
}
