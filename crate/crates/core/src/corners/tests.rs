use super::*;
use crate::polytopes::{Cell600, SymmetryGroup};
use std::sync::{Arc, OnceLock};

fn cell() -> Arc<Cell600> {
    static C: OnceLock<Arc<Cell600>> = OnceLock::new();
    C.get_or_init(|| Arc::new(Cell600::build().unwrap())).clone()
}

fn group() -> &'static SymmetryGroup {
    static G: OnceLock<SymmetryGroup> = OnceLock::new();
    G.get_or_init(|| SymmetryGroup::generate(&cell()))
}

fn pentagon_clique() -> Vec<u32> {
    let c = cell();
    let n = c.neighbours(0).next().unwrap() as u32;
    vec![0, n]
}

fn double_pentagon() -> CornerComplex {
    let mut x = CornerComplex::new(cell());
    let k = pentagon_clique();
    let a = x.add_cell(&k, None, "P").unwrap();
    let b = x.add_cell(&k, None, "P'").unwrap();
    for s in x.slots(a) {
        let vs = x.slot_vertices(s).unwrap().to_vec();
        x.glue(s, Slot::new(b, s.facet), FacetMap::identity(&vs), None).unwrap();
    }
    x
}

#[test]
fn doubled_pentagon_is_a_sphere() {
    let x = double_pentagon();
    assert_eq!(x.strata().count_by_dim(), vec![5, 5, 2]);
    assert_eq!(x.euler_characteristic(), 2);
    assert!(x.is_orientable());
    assert!(x.free_slots().is_empty());
}

#[test]
fn type_mismatch_and_occupied_slot() {
    let mut x = CornerComplex::new(cell());
    let k = pentagon_clique();
    let p = x.add_cell(&k, None, "P").unwrap();
    let d = x.add_cell(&[0], None, "D").unwrap();
    let sp = x.slots(p)[0];
    let sd = x.slots(d)[0];
    let vs = x.slot_vertices(sp).unwrap().to_vec();
    let err = x.glue(sp, sd, FacetMap::identity(&vs), None).unwrap_err();
    assert!(matches!(err, CornerError::KindMismatch(..)));
    let q = x.add_cell(&k, None, "Q").unwrap();
    x.glue(sp, Slot::new(q, sp.facet), FacetMap::identity(&vs), None).unwrap();
    let err = x.glue(sp, Slot::new(q, x.slots(q)[1].facet), FacetMap::identity(&vs), None).unwrap_err();
    assert!(matches!(err, CornerError::SlotOccupied(_)));
}

#[test]
fn non_lattice_map_rejected() {
    let mut x = CornerComplex::new(cell());
    let d0 = x.add_cell(&[0], None, "D").unwrap();
    let d1 = x.add_cell(&[0], None, "D'").unwrap();
    let s = x.slots(d0)[0];
    let vs = x.slot_vertices(s).unwrap().to_vec();
    // a transposition of two non-adjacent pentagon vertices is not a dihedral map
    let mut pairs: Vec<_> = vs.iter().map(|&v| (v, v)).collect();
    let cat = x.cells[d0].catalog.clone();
    let j = (1..5).find(|&j| cat.find_by_vertices(&[vs[0], vs[j]]).is_none()).unwrap();
    pairs[0].1 = vs[j];
    pairs[j].1 = vs[0];
    let err = x.glue(s, Slot::new(d1, s.facet), FacetMap::new(pairs), None).unwrap_err();
    assert!(matches!(err, CornerError::NotLatticeMap(_)));
}

#[test]
fn glue_unglue_roundtrip() {
    let mut x = double_pentagon();
    let before = x.strata().count_by_dim();
    let s = x.slots(0)[2];
    let g = x.unglue(s).unwrap();
    assert_eq!(x.strata().count_by_dim(), vec![5, 6, 2]);
    x.glue(g.a, g.b, g.map, None).unwrap();
    assert_eq!(x.strata().count_by_dim(), before);
}

#[test]
fn mirrored_pentagon_has_genus_five() {
    let mut x = CornerComplex::new(cell());
    x.add_cell(&pentagon_clique(), None, "P").unwrap();
    let bf = x.boundary_facets();
    assert_eq!(bf.facets.len(), 5);
    let mut col = Colouring::new();
    for f in 0..5 {
        col.colour_facet(&bf, f, f as u8);
    }
    let m = mirror(&x, &col).unwrap();
    assert_eq!(m.len(), 32);
    assert_eq!(m.strata().count_by_dim(), vec![40, 80, 32]);
    assert_eq!(m.euler_characteristic(), -8);
    assert!(m.is_orientable());
    assert!(m.free_slots().is_empty());
}

#[test]
fn mirror_rejects_improper_colouring() {
    let mut x = CornerComplex::new(cell());
    x.add_cell(&pentagon_clique(), None, "P").unwrap();
    let bf = x.boundary_facets();
    let mut col = Colouring::new();
    let (a, b) = bf.adjacent[0];
    col.colour_facet(&bf, a, 1);
    col.colour_facet(&bf, b, 1);
    assert!(mirror(&x, &col).is_err());
    assert_eq!(mirror(&x, &Colouring::new()).unwrap().len(), 1);
}

#[test]
fn twisted_self_gluing_is_not_orientable() {
    // glue two opposite edges of a pentagon in both possible ways
    let mut results = Vec::new();
    for flip in [false, true] {
        let mut x = CornerComplex::new(cell());
        let p = x.add_cell(&pentagon_clique(), None, "P").unwrap();
        let ring = x.slots(p);
        let cat = x.cells[p].catalog.clone();
        let (s1, s2) = (ring[0], *ring.iter().find(|s| {
            let f1 = cat.facet_face(ring[0].facet).unwrap();
            let f2 = cat.facet_face(s.facet).unwrap();
            cat.vertices[f1].iter().all(|v| !cat.vertices[f2].contains(v))
        }).unwrap());
        let v1 = x.slot_vertices(s1).unwrap().to_vec();
        let v2 = x.slot_vertices(s2).unwrap().to_vec();
        let pairs = if flip { vec![(v1[0], v2[1]), (v1[1], v2[0])] } else { vec![(v1[0], v2[0]), (v1[1], v2[1])] };
        x.glue(s1, s2, FacetMap::new(pairs), None).unwrap();
        results.push(x.is_orientable());
    }
    results.sort();
    assert_eq!(results, vec![false, true]);
}

#[test]
fn single_cell_is_embedded_and_legal() {
    let mut x = CornerComplex::new(cell());
    x.add_cell(&[], None, "C").unwrap();
    assert!(embedded_faces_report(&x).iter().all(|&e| e));
    let r = check_corner_angles(&x);
    assert!(r.passes());
    assert_eq!(r.census.get(&1), Some(&720));
    let bf = x.boundary_facets();
    assert_eq!(bf.facets.len(), 120);
    assert!(bf.embedded.iter().all(|&e| e));
}

#[test]
fn star_sizes() {
    let mut x = CornerComplex::new(cell());
    x.add_cell(&[], None, "C").unwrap();
    let st = x.strata();
    let cat = x.cells[0].catalog.clone();
    for (len, expect) in [(4usize, 16usize), (3, 8), (2, 4)] {
        let f = (0..cat.faces.len()).find(|&i| cat.faces[i].len() == len).unwrap();
        let star = develop_star(&x, &st, st.class(0, f)).unwrap();
        assert_eq!(star.cells.len(), expect);
        assert_eq!(star.real_cells(), 1);
    }
}

#[test]
fn three_cells_around_a_pentagon() {
    let mut x = CornerComplex::new(cell());
    let k = pentagon_clique();
    let c: Vec<usize> = (0..3).map(|i| x.add_cell(&[], None, format!("C{i}")).unwrap()).collect();
    for (i, &f) in k.iter().enumerate() {
        let s = Slot::new(c[i], f);
        let vs = x.slot_vertices(s).unwrap().to_vec();
        x.glue(s, Slot::new(c[i + 1], f), FacetMap::identity(&vs), None).unwrap();
    }
    let r = check_corner_angles(&x);
    assert_eq!(r.violations.len(), 1);
    let st = x.strata();
    let p = x.cells[0].catalog.find(&k).unwrap();
    assert!(develop_star(&x, &st, st.class(0, p)).is_err());
    // two cells glued straight: legal star, 2 real cells
    let p1 = st.class(0, x.cells[0].catalog.find(&[k[0]]).unwrap());
    let star = develop_star(&x, &st, p1).unwrap();
    assert_eq!(star.cells.len(), 2);
}

#[test]
fn free_pentagon_top_pattern() {
    let mut x = CornerComplex::new(cell());
    let k = pentagon_clique();
    x.add_cell(&k, None, "P").unwrap();
    let t = attach_above(&x, group(), |_| k[1]).unwrap();
    assert_eq!(t.complex.cells[0].catalog.clique, vec![k[0]]);
    assert_eq!(t.top.len(), 1);
    assert_eq!(t.facets.corners[t.top[0]], 5);
}

#[test]
fn doubled_pentagon_thickens_to_a_ball_boundary() {
    let x = double_pentagon();
    let k = pentagon_clique();
    let t = attach_above(&x, group(), |_| k[1]).unwrap();
    // the two dodecahedra meet along five side faces; the boundary is two caps
    assert_eq!(t.complex.free_slots().len(), 2 * 7);
    assert!(t.complex.is_orientable());
}
