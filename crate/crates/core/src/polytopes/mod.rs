//! Face lattices of the 600-cell and its dual right-angled 120-cell, the
//! link triangulation of S³, and the labelled 120-cell tessellation of H⁴.

mod cell600;
mod link_sphere;
mod symmetry;
mod tessellation;

pub use cell600::{scaled_dot, scaled_vertices, Cell600, FaceLattice, PolytopeError, Zsqrt5, ADJACENT_DOT};
pub use link_sphere::{LinkSphere, LinkVertex};
pub use symmetry::{root_reflection, Symmetry, SymmetryGroup};
pub use tessellation::{FaceLabel, Tessellation};

use crate::golden::{classify_pair, Hyperplane, PairClass};

pub fn build_600cell() -> Result<Cell600, PolytopeError> {
    Cell600::build()
}

pub fn build_link_sphere() -> LinkSphere {
    LinkSphere::build()
}

/// Facet hyperplanes of the right-angled 120-cell, one per 600-cell vertex.
pub fn facet_hyperplanes_120cell(cell: &Cell600) -> Vec<Hyperplane> {
    (0..120)
        .map(|i| {
            Hyperplane::new(crate::golden::LorentzVector::with_unit_time(&cell.vertex(i)))
                .expect("facet normals are space-like")
        })
        .collect()
}

/// Summary of the exact pairwise classification of the 120 facet hyperplanes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FacetPairCensus {
    pub adjacent_orthogonal: usize,
    pub adjacent_other: usize,
    pub distant_ultraparallel: usize,
    pub distant_other: usize,
}

pub fn facet_pair_census(cell: &Cell600, planes: &[Hyperplane]) -> FacetPairCensus {
    let mut c = FacetPairCensus::default();
    for i in 0..planes.len() {
        for j in (i + 1)..planes.len() {
            let k = classify_pair(&planes[i], &planes[j]);
            match (cell.adjacent(i, j), k) {
                (true, PairClass::Orthogonal) => c.adjacent_orthogonal += 1,
                (true, _) => c.adjacent_other += 1,
                (false, PairClass::Ultraparallel) => c.distant_ultraparallel += 1,
                (false, _) => c.distant_other += 1,
            }
        }
    }
    c
}

/// For a pentagon `{a, b}` of the 120-cell: no facet adjacent to `a` but not `b`
/// touches a facet adjacent to `b` but not `a`. Returns a counterexample if any.
pub fn forbidden_corner_witness(cell: &Cell600, a: usize, b: usize) -> Option<(usize, usize)> {
    let only_a: Vec<usize> = cell.neighbours(a).filter(|&x| x != b && !cell.adjacent(x, b)).collect();
    let only_b: Vec<usize> = cell.neighbours(b).filter(|&x| x != a && !cell.adjacent(x, a)).collect();
    for &x in &only_a {
        for &y in &only_b {
            if x == y || cell.adjacent(x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// The facets meeting the pentagon `{a,b}` in an edge, computed from the
/// tetrahedra around the dual edge.
pub fn facets_around_pentagon(cell: &Cell600, a: usize, b: usize) -> Vec<usize> {
    let mut out: Vec<usize> = cell
        .lattice
        .faces(3)
        .iter()
        .filter(|t| t.contains(&(a as u32)) && t.contains(&(b as u32)))
        .flat_map(|t| t.iter().map(|&x| x as usize))
        .filter(|&x| x != a && x != b)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_hundred_cell_lattice() {
        let c = build_600cell().unwrap();
        assert_eq!(c.lattice.f_vector(), vec![120, 720, 1200, 600]);
        assert_eq!(c.lattice.euler_characteristic(), 0);
        for i in 0..120 {
            assert_eq!(c.neighbours(i).count(), 12);
        }
        // every 600-cell edge lies in exactly five tetrahedra
        let mut per_edge = std::collections::HashMap::new();
        for t in c.lattice.faces(3) {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    *per_edge.entry((t[i], t[j])).or_insert(0) += 1;
                }
            }
        }
        assert_eq!(per_edge.len(), 720);
        assert!(per_edge.values().all(|&n| n == 5));
    }

    #[test]
    fn dual_lattice_graded() {
        let c = build_600cell().unwrap();
        let d = &c.dual;
        assert_eq!(d.f_vector(), vec![600, 1200, 720, 120]);
        // a dodecahedron has 12 pentagons, a pentagon 5 edges, an edge 2 vertices
        assert!((0..120).all(|i| d.boundary(3, i).len() == 12));
        assert!((0..720).all(|i| d.boundary(2, i).len() == 5));
        assert!((0..1200).all(|i| d.boundary(1, i).len() == 2));
    }

    #[test]
    fn pentagon_neighbourhood_is_five_cycle() {
        let c = build_600cell().unwrap();
        for e in c.lattice.faces(1) {
            let (a, b) = (e[0] as usize, e[1] as usize);
            let ring = c.pentagon_ring(a, b);
            assert_eq!(ring.len(), 5);
            let mut sorted = ring.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, facets_around_pentagon(&c, a, b));
            for k in 0..5 {
                assert!(c.adjacent(ring[k], ring[(k + 1) % 5]));
                assert!(!c.adjacent(ring[k], ring[(k + 2) % 5]));
            }
        }
    }
}
