use super::claim::{verify_claim42, verify_poincare_22gon};
use super::data::ScenarioData;
use super::disc::build_disc;
use super::lemmas::verify_lemma_constructions;
use super::report::{all_pass, Check, VerificationReport};
use super::selfint::classify;
use super::sigma::{build_sigma, surface_report};
use super::{assemble, verify_surface, Context};
use crate::homology::CellularChains;
use crate::pleated::{glt_weight_exact, glt_weight_monte_carlo, surface_topology, EdgePath, WeightConfig};
use crate::polytopes::{facet_hyperplanes_120cell, facet_pair_census, facets_around_pentagon, forbidden_corner_witness, LinkSphere};
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Polytopes,
    Lemmas,
    Surface,
    Claim42,
    Poincare,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Polytopes, Suite::Lemmas, Suite::Surface, Suite::Claim42, Suite::Poincare];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Polytopes => "polytopes",
            Suite::Lemmas => "lemmas",
            Suite::Surface => "surface",
            Suite::Claim42 => "claim42",
            Suite::Poincare => "poincare",
        }
    }

    pub fn run(self, ctx: &Context, data: &ScenarioData, cfg: &WeightConfig) -> Vec<Check> {
        match self {
            Suite::Polytopes => verify_polytopes(ctx),
            Suite::Lemmas => verify_lemmas(ctx, data),
            Suite::Surface => verify_surface(ctx, data, cfg),
            Suite::Claim42 => verify_disc(ctx, data, false),
            Suite::Poincare => verify_disc(ctx, data, true),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Face lattice of the 600-cell, the link triangulation, the right-angled
/// configuration of facet hyperplanes and the forbidden-corner fact.
pub fn verify_polytopes(ctx: &Context) -> Vec<Check> {
    let cell = &ctx.tess.cell;
    let mut out = vec![Check::expect("polytopes.f_vector", cell.lattice.f_vector(), vec![120, 720, 1200, 600])];

    let edges = cell.lattice.faces(1);
    let tets = cell.lattice.faces(3);
    let mut per_edge = std::collections::BTreeMap::new();
    for e in edges {
        let n = tets.iter().filter(|t| e.iter().all(|v| t.contains(v))).count();
        *per_edge.entry(n).or_insert(0usize) += 1;
    }
    out.push(Check::new(
        "polytopes.tetrahedra_per_edge",
        per_edge.len() == 1 && per_edge.contains_key(&5),
        format!("edges by tetrahedron count {per_edge:?}"),
    ));
    // tetrahedra around the dual edge against common neighbours of its ends
    let ring_ok = edges.iter().all(|e| {
        let (a, b) = (e[0] as usize, e[1] as usize);
        let mut ring = cell.pentagon_ring(a, b);
        ring.sort_unstable();
        ring.len() == 5 && facets_around_pentagon(cell, a, b) == ring
    });
    out.push(Check::new("polytopes.pentagon_rings", ring_ok, format!("{} pentagons meet 5 facets in edges", edges.len())));

    let link = LinkSphere::build();
    let lc = (link.vertices.len(), link.edges.len(), link.triangles.len(), link.tetrahedra.len());
    out.push(Check::expect("polytopes.link_sphere", (lc, link.euler_characteristic()), ((8, 24, 32, 16), 0)));

    let c = facet_pair_census(cell, &facet_hyperplanes_120cell(cell));
    out.push(Check::new(
        "polytopes.right_angled",
        c.adjacent_orthogonal == 720 && c.adjacent_other == 0 && c.distant_other == 0 && c.distant_ultraparallel == 120 * 119 / 2 - 720,
        format!("{c:?}"),
    ));

    let bad: Vec<(usize, usize)> =
        edges.iter().filter_map(|e| forbidden_corner_witness(cell, e[0] as usize, e[1] as usize)).collect();
    out.push(Check::new(
        "polytopes.forbidden_corner",
        bad.is_empty(),
        if bad.is_empty() { format!("no forbidden corner at any of {} pentagons", edges.len()) } else { format!("counterexamples {bad:?}") },
    ));
    out.push(Check::expect("polytopes.symmetries", ctx.tess.symmetries.order(), 14400));
    out
}

/// Σ and its curves, then the thickenings and bars.
pub fn verify_lemmas(ctx: &Context, data: &ScenarioData) -> Vec<Check> {
    let sigma = match build_sigma(ctx, data) {
        Ok(s) => s,
        Err(e) => return vec![Check::error("sigma.surface", e)],
    };
    let mut out = vec![surface_report(&sigma)];
    out.extend(theta_curve_checks(&sigma, data));
    out.extend(verify_lemma_constructions(ctx, data));
    out
}

fn theta_curve_checks(sigma: &super::sigma::Sigma, data: &ScenarioData) -> Vec<Check> {
    let h = match CellularChains::build(&sigma.complex) {
        Ok(h) => h,
        Err(e) => return vec![Check::error("sigma.homology", e)],
    };
    let hom = h.homology(1);
    let mut out = vec![Check::new(
        "sigma.homology",
        hom.betti == 4 && hom.torsion.is_empty(),
        format!("H1 rank {} torsion {:?}", hom.betti, hom.torsion),
    )];
    let st = sigma.complex.strata();
    let mut total: Option<Vec<BigInt>> = None;
    for c in &data.curves {
        let id = format!("sigma.{}", c.name);
        let z = match sigma.curve_steps(&st, c).map_err(|e| e.to_string()).and_then(|s| h.edge_chain(&sigma.complex, &s).map_err(|e| e.to_string())) {
            Ok(z) => z,
            Err(e) => {
                out.push(Check::error(id, e));
                continue;
            }
        };
        let class = h.cycle_class(&z);
        out.push(Check::new(id, !class.is_zero(), format!("class {:?}", class.free)));
        total = Some(match total {
            None => z,
            Some(t) => t.iter().zip(&z).map(|(a, b)| a + b).collect(),
        });
    }
    out.push(match total {
        Some(t) if data.curves.len() == 3 => {
            let class = h.cycle_class(&t);
            Check::new("sigma.theta_sum", class.is_zero(), format!("sum class {:?}", class.free))
        }
        _ => Check::new("sigma.theta_sum", false, format!("{} curves", data.curves.len())),
    });
    out
}

/// Disjointness of the side hyperplanes of the 20-gon alone, or the 22-gon checks after it.
fn verify_disc(ctx: &Context, data: &ScenarioData, poincare: bool) -> Vec<Check> {
    let a = match assemble(ctx, data) {
        Ok(a) => a,
        Err(e) => return vec![Check::error("disc.build", e)],
    };
    let d = match build_disc(ctx, data, &a.surface) {
        Ok(d) => d,
        Err(e) => return vec![Check::error("disc.build", e)],
    };
    let t = surface_topology(&d.complex);
    let topo = Check::new(
        "disc.topology",
        t.faces == 16 && t.euler_characteristic == 1 && t.boundary_components == 1 && t.components == 1,
        format!("F={} χ={} boundary circles {} centre vertex {}", t.faces, t.euler_characteristic, t.boundary_components, d.centre),
    );
    let claim = verify_claim42(ctx, &d, &a.surface, data);
    if !poincare {
        let mut out = vec![topo];
        out.extend(claim);
        return out;
    }
    if !(topo.passed && all_pass(&claim)) {
        let failed: Vec<&str> = std::iter::once(&topo).chain(&claim).filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
        return vec![Check::new("poincare.precondition", false, format!("failed: {}", failed.join(", ")))];
    }
    verify_poincare_22gon(ctx, &d, data)
}

/// Run `suites` in order into one report named `name`.
pub fn run_report(name: &str, suites: &[Suite], ctx: &Context, data: &ScenarioData, cfg: &WeightConfig, timings: bool) -> VerificationReport {
    let mut r = VerificationReport::new(name, cfg.seed, cfg.samples);
    for s in suites {
        let t = Instant::now();
        let checks = s.run(ctx, data, cfg);
        r.push(checks, if timings { t.elapsed().as_millis() as u64 } else { 0 });
    }
    r
}

/// Agreement allowed between the Monte Carlo and exact weight of one curve.
pub const WEIGHT_TOL: f64 = 0.02;

/// Exact and sampled push-off weight of a single link curve.
pub fn weight_checks(path: &EdgePath, cfg: &WeightConfig) -> Vec<Check> {
    let exact = glt_weight_exact(path);
    let est = glt_weight_monte_carlo(path, cfg);
    let target = *exact.numer() as f64 / *exact.denom() as f64;
    vec![
        Check::new("weight.curve", true, format!("{path:?} {} edges, {}", path.len(), classify(path))),
        Check::new("weight.exact", true, exact.to_string()),
        Check::new(
            "weight.monte_carlo",
            est.within(target, WEIGHT_TOL),
            format!(
                "mean {:.4} over {} samples, Hoeffding bound {:.4}, identically zero {}",
                est.mean, est.samples, est.bound, est.identically_zero
            ),
        ),
    ]
}
