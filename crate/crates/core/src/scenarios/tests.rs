use super::*;
use crate::homology::CellularChains;
use crate::pleated::surface_topology;

fn ctx() -> &'static Context {
    Context::shared()
}

#[test]
fn bundled_data_parses() {
    let d = ScenarioData::bundled();
    assert_eq!(d.pentagons_in("sigma").count(), 8);
    assert_eq!(d.edges_in("sigma").count(), 20);
    assert_eq!(d.curves.len(), 3);
}

#[test]
fn sigma_is_a_genus_two_surface() {
    let s = build_sigma(ctx(), &ScenarioData::bundled()).unwrap();
    let top = surface_topology(&s.complex);
    assert_eq!((top.vertices, top.edges, top.faces), (10, 20, 8));
    assert_eq!(top.genus, Some(2));
    assert!(top.orientable);
    let h = CellularChains::build(&s.complex).unwrap();
    assert_eq!(h.homology(1).betti, 4);
    assert!(h.homology(1).torsion.is_empty());
}

#[test]
fn theta_curves_sum_to_zero() {
    let d = ScenarioData::bundled();
    let s = build_sigma(ctx(), &d).unwrap();
    let h = CellularChains::build(&s.complex).unwrap();
    let st = s.complex.strata();
    let mut total: Option<Vec<num_bigint::BigInt>> = None;
    for c in &d.curves {
        let steps = s.curve_steps(&st, c).unwrap();
        let z = h.edge_chain(&s.complex, &steps).unwrap();
        assert!(!h.cycle_class(&z).is_zero(), "{} is null-homologous", c.name);
        total = Some(match total {
            None => z,
            Some(t) => t.iter().zip(&z).map(|(a, b)| a + b).collect::<Vec<_>>(),
        });
    }
    assert!(h.cycle_class(&total.unwrap()).is_zero());
}

#[test]
fn lemma_constructions() {
    let checks = verify_lemma_constructions(ctx(), &ScenarioData::bundled());
    for c in &checks {
        eprintln!("{} {} {}", if c.passed { "ok " } else { "FAIL" }, c.id, c.witness);
    }
    assert!(all_pass(&checks));
}
