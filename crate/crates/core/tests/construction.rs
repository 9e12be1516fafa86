use nonspin_core::pleated::WeightConfig;
use nonspin_core::scenarios::*;
use std::collections::BTreeMap;
use std::sync::OnceLock;

fn ctx() -> &'static Context {
    Context::shared()
}

fn assembly() -> &'static (ScenarioData, Assembly) {
    static A: OnceLock<(ScenarioData, Assembly)> = OnceLock::new();
    A.get_or_init(|| {
        let data = ScenarioData::bundled();
        let a = assemble(ctx(), &data).expect("construction assembles");
        (data, a)
    })
}

fn disc() -> &'static Disc {
    static D: OnceLock<Disc> = OnceLock::new();
    D.get_or_init(|| {
        let (data, a) = assembly();
        build_disc(ctx(), data, &a.surface).expect("disc builds")
    })
}

#[test]
fn s_is_genus_three_with_expected_split() {
    let s = &assembly().1.surface;
    let t = s.surface.topology();
    assert_eq!((t.faces, t.euler_characteristic, t.genus), (16, -4, Some(3)));
    assert!(t.orientable);
    let mut per_group = BTreeMap::new();
    for f in &s.faces {
        *per_group.entry(f.group.as_str()).or_insert(0) += 1;
    }
    assert_eq!(per_group, BTreeMap::from([("S0", 4), ("S1", 6), ("S2", 6)]));
    assert_eq!(s.pleat_census().unwrap(), vec![0, 6, 6, 4]);
}

#[test]
fn theta_vertices_are_the_white_vertices() {
    let (_, a) = assembly();
    let s = &a.surface;
    let theta = theta_vertices(s);
    assert_eq!(theta.len(), 2);
    let r = self_intersection_report(s, &WeightConfig { samples: 2000, seed: 1 }).unwrap();
    let white: Vec<usize> = r.rows.iter().filter(|r| r.kind == LinkKind::White).map(|r| r.stratum).collect();
    assert_eq!(white, theta);
    assert_eq!(r.exact_total, num_rational::Rational64::from_integer(1));
    assert!(r.reversed);
}

#[test]
fn disc_has_twenty_sides_around_vertex_41() {
    let d = disc();
    assert_eq!(d.centre, 41);
    assert_eq!(d.sides.len(), 20);
    assert_eq!(d.facets().len(), 22);
    // consecutive sides share an endpoint
    for (i, s) in d.sides.iter().enumerate() {
        let next = &d.sides[(i + 1) % d.sides.len()];
        assert_eq!(s.end(d), next.start(d));
    }
}

#[test]
fn only_one_centre_reproduces_the_recorded_sides() {
    let (data, a) = assembly();
    let good: Vec<usize> = disc_centres(ctx(), &a.surface)
        .into_iter()
        .filter_map(|(c, sides)| (sides.ok() == Some(20)).then_some(c))
        .filter(|&c| {
            let d = build_disc_at(ctx(), &a.surface, c).unwrap();
            verify_claim42(ctx(), &d, &a.surface, data).iter().all(|k| k.passed)
        })
        .collect();
    assert_eq!(good, vec![41]);
}

#[test]
fn letters_follow_a_600_cell_path() {
    let l = letter_sides(ctx(), disc()).unwrap();
    let by_letter: BTreeMap<char, usize> = l.letters.iter().map(|(&f, &c)| (c, f)).collect();
    assert_eq!(by_letter, BTreeMap::from([('A', 8), ('B', 72), ('C', 52), ('D', 34), ('E', 46), ('F', 42)]));
    for w in ['A', 'B', 'C', 'D', 'E', 'F'].windows(2) {
        assert!(ctx().cell.adjacent(by_letter[&w[0]], by_letter[&w[1]]), "{w:?}");
    }
}

#[test]
fn separating_hyperplanes() {
    let seps = separators(ctx(), disc(), &assembly().1.surface).unwrap();
    let labels: Vec<(char, usize)> = seps.iter().map(|(c, _, l)| (*c, *l)).collect();
    assert_eq!(labels, vec![('α', 32), ('β', 40), ('γ', 0)]);
}

#[test]
fn poincare_structure() {
    let d = disc();
    let l = letter_sides(ctx(), d).unwrap();
    let fs = polygon_facets(d, &l);
    assert_eq!(fs.len(), 22);
    for f in &fs {
        assert_eq!(fs[f.partner].partner, fs.iter().position(|g| g.id == f.id).unwrap());
    }
    let cycles = ridge_cycles(&fs, d).unwrap();
    assert_eq!(cycles.len(), 6);
    assert!(cycles.iter().all(|c| c.quarter_turns == 4 && c.identity));
}

#[test]
fn suites_round_trip_by_name() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>(), Ok(s));
        assert_eq!(s.to_string(), s.name());
    }
    assert!("all".parse::<Suite>().is_err());
}

#[test]
fn corrupted_pairing_record_is_caught() {
    let text = BUNDLED.replacen("E1 E2", "E1 F2", 1);
    let data = ScenarioData::parse(&text).unwrap();
    let checks = Suite::Poincare.run(ctx(), &data, &WeightConfig::default());
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
    assert_eq!(failed, vec!["poincare.pairing_checksums"]);
}
