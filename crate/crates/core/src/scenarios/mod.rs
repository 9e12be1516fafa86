//! Transcribed construction data and the verification procedures built on it.

mod claim;
mod data;
mod develop;
mod disc;
mod lemmas;
mod report;
mod selfint;
mod sigma;
mod suites;
mod surface;

pub use claim::{
    letter_sides, polygon_facets, ridge_cycles, separators, verify_claim42, verify_poincare_22gon, Facet, Lettering, RidgeCycle,
};
pub use data::{
    AttachmentRecord, CurveRecord, DataError, EdgeEnd, EdgeRecord, PairingRecord, PentagonRecord, ScenarioData, SideRecord,
    BUNDLED,
};
pub use develop::{developed_transition, glue_developed, pair_facets, vertex_point, FacetPairing};
pub use disc::{build_disc, build_disc_at, disc_centres, theta_vertices, BoundaryArc, Disc, Side};
pub use lemmas::{build_bar, stack_over, thicken, verify_lemma_constructions, BarConstruction, Pairing, Thick};
pub use report::{all_pass, Check, CheckRecord, Status, VerificationReport, REPORT_SCHEMA_VERSION};
pub use selfint::{classify, self_intersection_report, LinkKind, LinkRow, SelfIntersectionReport};
pub use suites::{run_report, verify_lemmas, verify_polytopes, weight_checks, Suite, WEIGHT_TOL};
pub use surface::{build_surface_s, SFace, SurfaceS};
pub use sigma::{build_sigma, surface_report, Sigma};

use crate::corners::CornerError;
use crate::homology::HomologyError;
use crate::pleated::{SurfaceError, WeightConfig};
use crate::polytopes::{Cell600, PolytopeError, Tessellation};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Corner(#[from] CornerError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub(crate) fn fail(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Construction(msg.into())
}

/// The tessellation and base polytope shared by all constructions.
#[derive(Debug)]
pub struct Context {
    pub tess: Tessellation,
    pub cell: Arc<Cell600>,
}

impl Context {
    pub fn new() -> Result<Self, PolytopeError> {
        let tess = Tessellation::build()?;
        let cell = Arc::new(tess.cell.clone());
        Ok(Self { tess, cell })
    }

    /// A process-wide instance; the symmetry group takes a moment to generate.
    pub fn shared() -> &'static Context {
        static CTX: OnceLock<Context> = OnceLock::new();
        CTX.get_or_init(|| Context::new().expect("the 600-cell builds"))
    }
}

/// Σ, the three bars and the surface S built from them.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub sigma: Sigma,
    pub bars: Vec<BarConstruction>,
    pub surface: SurfaceS,
}

pub fn assemble(ctx: &Context, data: &ScenarioData) -> Result<Assembly, ScenarioError> {
    let sigma = build_sigma(ctx, data)?;
    let bars = ["N0", "N1", "N2"].iter().map(|n| build_bar(ctx, &sigma, data, n)).collect::<Result<Vec<_>, _>>()?;
    let surface = build_surface_s(ctx, data, &sigma, &bars, &["S0", "S1", "S2"])?;
    Ok(Assembly { sigma, bars, surface })
}

/// Topology, pleats and edge records of S, then its local self-intersection weights.
pub fn verify_surface(ctx: &Context, data: &ScenarioData, cfg: &WeightConfig) -> Vec<Check> {
    let a = match assemble(ctx, data) {
        Ok(a) => a,
        Err(e) => return vec![Check::error("S.assemble", e)],
    };
    let mut out = a.surface.checks(data);
    match self_intersection_report(&a.surface, cfg) {
        Ok(r) => out.extend(r.checks()),
        Err(e) => out.push(Check::error("selfint.links", e)),
    }
    out
}

#[cfg(test)]
mod tests;
