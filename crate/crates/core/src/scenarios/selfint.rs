use super::report::Check;
use super::surface::SurfaceS;
use super::ScenarioError;
use crate::pleated::{glt_weight_monte_carlo, EdgePath, WeightConfig, WeightEstimate};
use num_rational::Rational64;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Shape of a vertex link of S in the link of a vertex of the tessellation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LinkKind {
    /// four vertices on two axes
    GreatCircle,
    /// two half great circles meeting at antipodes
    TwoArc,
    /// three mutually orthogonal vertices
    Triangle,
    /// six vertices, a Y-shaped link through three sheets
    White,
    Other(usize),
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkKind::GreatCircle => write!(f, "great-circle"),
            LinkKind::TwoArc => write!(f, "two-arc"),
            LinkKind::Triangle => write!(f, "triangle"),
            LinkKind::White => write!(f, "white"),
            LinkKind::Other(n) => write!(f, "other({n})"),
        }
    }
}

pub fn classify(path: &EdgePath) -> LinkKind {
    let v = path.vertices();
    let axes: BTreeSet<u8> = v.iter().map(|x| x.axis).collect();
    let antipodal = v.iter().any(|x| v.contains(&x.antipode()));
    match (v.len(), axes.len()) {
        (4, 2) => LinkKind::GreatCircle,
        (4, 3) if antipodal => LinkKind::TwoArc,
        (3, 3) => LinkKind::Triangle,
        (6, 4) => LinkKind::White,
        (n, _) => LinkKind::Other(n),
    }
}

#[derive(Clone, Debug)]
pub struct LinkRow {
    pub stratum: usize,
    pub kind: LinkKind,
    pub path: EdgePath,
    /// number of the three parts of S meeting at the vertex
    pub parts: usize,
    /// in the orientation of M fixed by the report
    pub exact: Rational64,
    pub estimate: WeightEstimate,
}

#[derive(Clone, Debug)]
pub struct SelfIntersectionReport {
    /// M carries the orientation opposite to the model chart
    pub reversed: bool,
    pub rows: Vec<LinkRow>,
    pub exact_total: Rational64,
    pub estimate_total: f64,
}

/// Local weights of every vertex of S. M is oriented so the total is nonnegative.
pub fn self_intersection_report(s: &SurfaceS, cfg: &WeightConfig) -> Result<SelfIntersectionReport, ScenarioError> {
    let si = s.surface.self_intersection()?;
    let reversed = si.total < Rational64::zero();
    let sign = if reversed { -1 } else { 1 };
    let strata = s.surface.complex.strata();
    let mut rows = Vec::new();
    for l in si.links {
        let mut estimate = glt_weight_monte_carlo(&l.path, cfg);
        estimate.mean *= sign as f64;
        rows.push(LinkRow {
            stratum: l.stratum,
            kind: classify(&l.path),
            parts: s.parts_at(&strata, l.stratum).len(),
            exact: l.weight * sign,
            path: l.path,
            estimate,
        });
    }
    let estimate_total = rows.iter().map(|r| r.estimate.mean).sum();
    Ok(SelfIntersectionReport { reversed, exact_total: si.total * sign, estimate_total, rows })
}

const LINK_TOL: f64 = 0.02;
const TOTAL_TOL: f64 = 0.05;

impl SelfIntersectionReport {
    pub fn census(&self) -> BTreeMap<LinkKind, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rows {
            *out.entry(r.kind).or_insert(0) += 1;
        }
        out
    }

    fn of(&self, kind: LinkKind) -> impl Iterator<Item = &LinkRow> {
        self.rows.iter().filter(move |r| r.kind == kind)
    }

    pub fn checks(&self) -> Vec<Check> {
        let census: Vec<String> = self.census().iter().map(|(k, n)| format!("{n} {k}")).collect();
        let orient = if self.reversed { "M oriented opposite to the model chart" } else { "M oriented as the model chart" };
        let mut out = vec![Check::new("selfint.links", !self.rows.is_empty(), format!("{}; {orient}", census.join(", ")))];

        let bad: Vec<usize> =
            self.of(LinkKind::GreatCircle).filter(|r| !(r.exact.is_zero() && r.estimate.identically_zero)).map(|r| r.stratum).collect();
        out.push(Check::new(
            "selfint.great_circle",
            bad.is_empty(),
            if bad.is_empty() { "every push-off misses".into() } else { format!("nonzero at vertices {bad:?}") },
        ));

        let mut zero_rows = |id: &str, kinds: &dyn Fn(LinkKind) -> bool| {
            let rows: Vec<&LinkRow> = self.rows.iter().filter(|r| kinds(r.kind)).collect();
            let worst = rows.iter().map(|r| r.estimate.mean.abs()).fold(0.0, f64::max);
            let ok = rows.iter().all(|r| r.exact.is_zero() && r.estimate.within(0.0, LINK_TOL));
            out.push(Check::new(id, ok, format!("{} links, largest |mean| {worst:.4}", rows.len())));
        };
        zero_rows("selfint.two_arc", &|k| k == LinkKind::TwoArc);
        zero_rows("selfint.other", &|k| !matches!(k, LinkKind::GreatCircle | LinkKind::TwoArc | LinkKind::White));

        let white: Vec<&LinkRow> = self.of(LinkKind::White).collect();
        let half = Rational64::new(1, 2);
        let ok = white.len() == 2
            && white.iter().all(|r| r.exact == half && r.estimate.within(0.5, LINK_TOL) && r.parts == 3);
        let w: Vec<String> = white
            .iter()
            .map(|r| format!("vertex {} [{:?}] exact {} mean {:.4} on {} parts", r.stratum, r.path, r.exact, r.estimate.mean, r.parts))
            .collect();
        out.push(Check::new("selfint.white", ok, w.join("; ")));

        let nonzero: Vec<usize> = self.rows.iter().filter(|r| !r.exact.is_zero()).map(|r| r.stratum).collect();
        let white_ids: Vec<usize> = white.iter().map(|r| r.stratum).collect();
        out.push(Check::expect("selfint.nonzero_vertices", nonzero, white_ids));

        out.push(Check::new(
            "selfint.total",
            self.exact_total == Rational64::from_integer(1) && (self.estimate_total - 1.0).abs() <= TOTAL_TOL,
            format!("exact {} estimate {:.4}", self.exact_total, self.estimate_total),
        ));
        out
    }
}
