use super::*;
use crate::corners::{CornerComplex, FacetMap, Slot};
use crate::golden::LorentzMatrix;
use crate::polytopes::{Cell600, LinkVertex, Tessellation};
use num_rational::Rational64;
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn tess() -> &'static Tessellation {
    static T: OnceLock<Tessellation> = OnceLock::new();
    T.get_or_init(|| Tessellation::build().unwrap())
}

fn path(s: &str) -> EdgePath {
    EdgePath::parse(s).unwrap()
}

fn y_link() -> EdgePath {
    path("+e1 +e4 -e1 -e3 +e2 +e3")
}

#[test]
fn great_circle_has_weight_zero() {
    let p = path("+e1 +e2 -e1 -e2");
    assert!(p.turns().iter().all(|&t| t == Turn::Straight));
    assert_eq!(glt_weight_exact(&p), Rational64::from_integer(0));
    let est = glt_weight_monte_carlo(&p, &WeightConfig { samples: 2000, seed: 7 });
    assert!(est.identically_zero);
}

#[test]
fn two_arc_link_has_weight_zero() {
    let p = path("+e1 +e2 -e1 +e3");
    assert_eq!(p.turns(), vec![Turn::RightAngle, Turn::Straight, Turn::RightAngle, Turn::Straight]);
    assert_eq!(glt_weight_exact(&p), Rational64::from_integer(0));
}

#[test]
fn y_link_has_weight_half() {
    let p = y_link();
    assert_eq!(glt_weight_exact(&p), Rational64::new(1, 2));
    let est = glt_weight_monte_carlo(&p, &WeightConfig { samples: 20_000, seed: 1 });
    assert!(est.within(0.5, 0.05), "{est:?}");
    assert!(est.within(0.5, est.bound));
}

#[test]
fn monte_carlo_is_deterministic() {
    let cfg = WeightConfig { samples: 500, seed: 42 };
    assert_eq!(glt_weight_monte_carlo(&y_link(), &cfg), glt_weight_monte_carlo(&y_link(), &cfg));
}

#[test]
fn invalid_paths_are_rejected() {
    assert!(matches!(EdgePath::parse("+e1 -e1 +e2"), Err(PathError::NotAnEdge(..))));
    assert!(matches!(EdgePath::parse("+e1 +e2"), Err(PathError::TooShort(2))));
    assert!(matches!(EdgePath::parse("+e1 +e2 +e1 +e3"), Err(PathError::Backtrack(_))));
    assert!(EdgePath::parse("+e5 +e1 +e2").is_err());
}

fn signed_perm_det(perm: [u8; 4], signs: [bool; 4]) -> i32 {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    let neg = signs.iter().filter(|&&s| !s).count();
    if (inv + neg) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn arb_path() -> impl Strategy<Value = EdgePath> {
    prop::collection::vec(0usize..8, 3..12).prop_filter_map("not a closed edge path", |idx| {
        EdgePath::new(idx.into_iter().map(LinkVertex::from_index).collect()).ok()
    })
}

fn arb_signed_perm() -> impl Strategy<Value = ([u8; 4], [bool; 4])> {
    (Just([0u8, 1, 2, 3]).prop_shuffle(), any::<[bool; 4]>())
}

proptest! {
    #[test]
    fn weight_ignores_direction(p in arb_path()) {
        prop_assert_eq!(glt_weight_exact(&p), glt_weight_exact(&p.reversed()));
    }

    #[test]
    fn weight_transforms_by_determinant((perm, signs) in arb_signed_perm(), p in arb_path()) {
        let q = p.transformed(perm, signs);
        let d = signed_perm_det(perm, signs) as i64;
        prop_assert_eq!(glt_weight_exact(&q), glt_weight_exact(&p) * d);
    }

    #[test]
    fn per_sample_count_averages_to_exact(p in arb_path()) {
        // averaging over all 16 sign patterns is exact
        let mut total = 0;
        for m in 0..16u32 {
            let u: [i64; 4] = std::array::from_fn(|i| if m >> i & 1 == 1 { 3 } else { -5 });
            total += pushoff_count(&p, &u);
        }
        prop_assert_eq!(Rational64::new(total, 16), glt_weight_exact(&p));
    }
}

fn dodecahedron_boundary(frame: LorentzMatrix) -> CornerComplex {
    let cell: Arc<Cell600> = Arc::new(tess().cell.clone());
    let mut x = CornerComplex::new(cell.clone());
    let ns: Vec<u32> = cell.neighbours(0).map(|n| n as u32).collect();
    let ids: Vec<usize> = ns.iter().map(|&n| x.add_cell(&[0, n], Some(frame.clone()), format!("P{n}")).unwrap()).collect();
    for (i, &b) in ns.iter().enumerate() {
        for (j, &c) in ns.iter().enumerate() {
            if b < c && cell.adjacent(b as usize, c as usize) {
                let s = Slot::new(ids[i], c);
                let vs = x.slot_vertices(s).unwrap().to_vec();
                x.glue(s, Slot::new(ids[j], b), FacetMap::identity(&vs), Some(LorentzMatrix::identity())).unwrap();
            }
        }
    }
    x
}

#[test]
fn dodecahedron_boundary_is_an_unknotted_sphere() {
    let s = PleatedSurface::new(dodecahedron_boundary(LorentzMatrix::identity()), vec![0; 12]).unwrap();
    let top = s.topology();
    assert_eq!((top.vertices, top.edges, top.faces), (20, 30, 12));
    assert_eq!(top.genus, Some(0));
    assert_eq!(top.boundary_components, 0);
    let si = s.self_intersection().unwrap();
    assert_eq!(si.links.len(), 20);
    assert!(si.links.iter().all(|l| l.path.len() == 3));
    assert_eq!(si.total, Rational64::from_integer(0));
    assert_eq!(s.pleats().unwrap().len(), 30);
}

#[test]
fn moved_surface_keeps_its_links() {
    let r = tess().reflections[5].clone();
    let s = PleatedSurface::new(dodecahedron_boundary(r), vec![0; 12]).unwrap();
    assert_eq!(s.self_intersection().unwrap().total, Rational64::from_integer(0));
}

#[test]
fn open_disc_has_boundary_vertices() {
    let mut x = dodecahedron_boundary(LorentzMatrix::identity());
    let g = x.gluings().next().unwrap().a;
    x.unglue(g);
    let s = PleatedSurface::new(x, vec![0; 12]).unwrap();
    assert_eq!(s.topology().boundary_components, 1);
    assert!(matches!(s.self_intersection(), Err(SurfaceError::BoundaryVertex(_))));
}
