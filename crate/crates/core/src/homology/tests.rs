use super::*;
use crate::corners::{mirror, Colouring, CornerComplex, FacetMap, Slot};
use crate::polytopes::Cell600;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn cell() -> Arc<Cell600> {
    static C: OnceLock<Arc<Cell600>> = OnceLock::new();
    C.get_or_init(|| Arc::new(Cell600::build().unwrap())).clone()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn smith_of_small_matrices() {
    let id = IntegerMatrix::identity(3);
    assert_eq!(smith_normal_form(&id).d, id);
    let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(smith_normal_form(&a).invariants, big(&[2, 4]));
    let z = IntegerMatrix::zeros(2, 3);
    let s = smith_normal_form(&z);
    assert!(s.d.is_zero());
    assert_eq!(s.rank(), 0);
}

fn arb_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r).prop_map(|rows| IntegerMatrix::from_rows(&rows))
    })
}

fn det(m: &IntegerMatrix) -> BigInt {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    (0..n)
        .map(|j| {
            let minor = IntegerMatrix::from_rows(
                &(1..n).map(|i| (0..n).filter(|&k| k != j).map(|k| m[(i, k)].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            );
            let s = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
            s * &m[(0, j)] * det(&minor)
        })
        .sum()
}

proptest! {
    #[test]
    fn smith_form_is_diagonal_with_divisibility(a in arb_matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d[(i, j)].is_zero());
            }
        }
        for w in s.invariants.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.invariants.iter().all(|d| d.is_positive()));
        prop_assert_eq!(s.rank(), a.rank_over_q());
        prop_assert_eq!(det(&s.u).abs(), BigInt::from(1));
        prop_assert_eq!(det(&s.v).abs(), BigInt::from(1));
        if a.rows() == a.cols() {
            let prod: BigInt = if s.rank() == a.rows() { s.invariants.iter().product() } else { BigInt::zero() };
            prop_assert_eq!(prod, det(&a).abs());
        }
    }
}

#[test]
fn circle_and_projective_plane() {
    let circle = ChainComplex::new(vec![1, 1], vec![IntegerMatrix::zeros(1, 1)]).unwrap();
    assert_eq!(homology(&circle, 1), Homology { betti: 1, torsion: vec![] });
    assert_eq!(homology(&circle, 0).betti, 1);
    let rp2 = ChainComplex::new(
        vec![1, 1, 1],
        vec![IntegerMatrix::zeros(1, 1), IntegerMatrix::from_rows(&[vec![2]])],
    )
    .unwrap();
    assert_eq!(homology(&rp2, 1), Homology { betti: 0, torsion: big(&[2]) });
    assert_eq!(homology(&rp2, 2).betti, 0);
}

#[test]
fn bad_complex_is_rejected() {
    let r = ChainComplex::new(
        vec![1, 2, 1],
        vec![IntegerMatrix::from_rows(&[vec![1, 0]]), IntegerMatrix::from_rows(&[vec![1], vec![0]])],
    );
    assert_eq!(r.unwrap_err(), HomologyError::NotAComplex(2));
}

fn dodecahedron_boundary(skip: &[usize]) -> CornerComplex {
    let c = cell();
    let mut x = CornerComplex::new(c.clone());
    let ns: Vec<u32> = c.neighbours(0).map(|n| n as u32).enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, n)| n).collect();
    let ids: Vec<usize> = ns.iter().map(|&n| x.add_cell(&[0, n], None, format!("P{n}")).unwrap()).collect();
    for (i, &b) in ns.iter().enumerate() {
        for (j, &d) in ns.iter().enumerate() {
            if b < d && c.adjacent(b as usize, d as usize) {
                let s = Slot::new(ids[i], d);
                let vs = x.slot_vertices(s).unwrap().to_vec();
                x.glue(s, Slot::new(ids[j], b), FacetMap::identity(&vs), None).unwrap();
            }
        }
    }
    x
}

fn bettis(h: &CellularChains) -> Vec<usize> {
    (0..=h.chains.top_dim()).map(|k| h.homology(k).betti).collect()
}

#[test]
fn sphere_from_dodecahedron() {
    let x = dodecahedron_boundary(&[]);
    let h = CellularChains::build(&x).unwrap();
    assert_eq!(bettis(&h), vec![1, 0, 1]);
    assert!(h.homology(1).torsion.is_empty());
    // boundary of one pentagon
    let cat = &x.cells[0].catalog;
    let corners = &cat.vertices[0];
    let mut steps = Vec::new();
    let mut at = corners[0];
    for _ in 0..5 {
        let e = (0..cat.faces.len())
            .find(|&e| cat.face_dim(e) == 1 && cat.vertices[e].contains(&at) && !steps.iter().any(|&(_, f, _)| f == e))
            .unwrap();
        let to = *cat.vertices[e].iter().find(|&&v| v != at).unwrap();
        steps.push((0, e, to));
        at = to;
    }
    assert!(h.curve_class(&x, &steps).unwrap().is_zero());
    assert_eq!(h.curve_class(&x, &steps[..4]), Err(HomologyError::NotClosed));
}

#[test]
fn solid_dodecahedron_is_contractible() {
    let mut x = CornerComplex::new(cell());
    x.add_cell(&[0], None, "D").unwrap();
    let h = CellularChains::build(&x).unwrap();
    assert_eq!(bettis(&h), vec![1, 0, 0, 0]);
}

#[test]
fn mirrored_pentagon_is_genus_five() {
    let mut x = CornerComplex::new(cell());
    let n = cell().neighbours(0).next().unwrap() as u32;
    x.add_cell(&[0, n], None, "P").unwrap();
    let bf = x.boundary_facets();
    let mut col = Colouring::new();
    for f in 0..5 {
        col.colour_facet(&bf, f, f as u8);
    }
    let m = mirror(&x, &col).unwrap();
    let h = CellularChains::build(&m).unwrap();
    assert_eq!(bettis(&h), vec![1, 10, 1]);
    assert!(h.homology(1).torsion.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn betti_numbers_match_rational_ranks(skip in prop::collection::btree_set(0usize..12, 0..6)) {
        let skip: Vec<usize> = skip.into_iter().collect();
        let x = dodecahedron_boundary(&skip);
        let h = CellularChains::build(&x).unwrap();
        let c = &h.chains;
        let mut chi = 0i64;
        for k in 0..=c.top_dim() {
            let r_out = c.boundary(k).map_or(0, |b| b.rank_over_q());
            let r_in = c.boundary(k + 1).map_or(0, |b| b.rank_over_q());
            let b = c.rank(k) - r_out - r_in;
            prop_assert_eq!(h.homology(k).betti, b);
            chi += if k % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        prop_assert_eq!(chi, x.euler_characteristic());
        prop_assert_eq!(chi, c.euler_characteristic());
    }
}
