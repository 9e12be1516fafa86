use crate::polytopes::LinkVertex;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("a closed path needs at least three vertices, got {0}")]
    TooShort(usize),
    #[error("{0:?} and {1:?} are not joined by an edge of the link sphere")]
    NotAnEdge(LinkVertex, LinkVertex),
    #[error("path backtracks at position {0}")]
    Backtrack(usize),
    #[error("cannot parse path: {0}")]
    Parse(String),
}

/// A closed path in the 1-skeleton of the octahedral triangulation of S³,
/// stored as its cyclic vertex sequence.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgePath {
    vertices: Vec<LinkVertex>,
}

/// Behaviour of the path at one of its vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    Straight,
    RightAngle,
}

impl EdgePath {
    pub fn new(vertices: Vec<LinkVertex>) -> Result<Self, PathError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PathError::TooShort(n));
        }
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            if a.axis == b.axis {
                return Err(PathError::NotAnEdge(a, b));
            }
            if vertices[(i + 2) % n] == a {
                return Err(PathError::Backtrack((i + 1) % n));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[LinkVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(p, q)`.
    pub fn edges(&self) -> impl Iterator<Item = (LinkVertex, LinkVertex)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Turn at vertex `i`: straight when the path continues along a great circle.
    pub fn turn(&self, i: usize) -> Turn {
        let n = self.vertices.len();
        let prev = self.vertices[(i + n - 1) % n];
        let next = self.vertices[(i + 1) % n];
        if next == prev.antipode() {
            Turn::Straight
        } else {
            Turn::RightAngle
        }
    }

    pub fn turns(&self) -> Vec<Turn> {
        (0..self.len()).map(|i| self.turn(i)).collect()
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    /// Image under a signed permutation of the axes: axis `i` goes to `perm[i]` with sign `signs[i]`.
    pub fn transformed(&self, perm: [u8; 4], signs: [bool; 4]) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| LinkVertex::new(perm[v.axis as usize], v.positive == signs[v.axis as usize]))
            .collect();
        Self { vertices }
    }

    /// Parse whitespace- or comma-separated vertices such as `+e1 +e2 -e1 +e3`.
    pub fn parse(s: &str) -> Result<Self, PathError> {
        let vs: Vec<LinkVertex> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(PathError::Parse))
            .collect::<Result<_, _>>()?;
        Self::new(vs)
    }
}

impl fmt::Debug for EdgePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| format!("{v:?}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn det4(rows: [[i32; 4]; 4]) -> i32 {
    let mut m = rows.map(|r| r.map(|x| x as i64));
    let mut det = 1i64;
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| m[r][c] != 0) else { return 0 };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        // entries are 0/±1 on distinct axes, so a pivot row never needs scaling
        for r in c + 1..4 {
            if m[r][c] != 0 {
                let f = m[r][c] / m[c][c];
                for k in c..4 {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    det as i32
}

/// Sign of the intersection of the sector `span₊{p,q}` with the push-off of
/// `span₊{r,s}`, when the four vectors use four distinct axes.
fn sector_pair_sign(p: LinkVertex, q: LinkVertex, r: LinkVertex, s: LinkVertex) -> Option<i32> {
    let mut axes = [p.axis, q.axis, r.axis, s.axis];
    axes.sort_unstable();
    if axes.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(det4([p.vector(), q.vector(), r.vector(), s.vector()]))
}

/// Exact push-off weight: each ordered pair of sectors on four distinct axes meets
/// its push-off for exactly one of the 16 sign patterns of the push direction.
pub fn glt_weight_exact(path: &EdgePath) -> Rational64 {
    let edges: Vec<_> = path.edges().collect();
    let mut total = 0i64;
    for (i, &(p, q)) in edges.iter().enumerate() {
        for (j, &(r, s)) in edges.iter().enumerate() {
            if i != j {
                if let Some(sign) = sector_pair_sign(p, q, r, s) {
                    total += sign as i64;
                }
            }
        }
    }
    Rational64::new(total, 16)
}

/// Signed count of transverse intersections between the cone over the path
/// and its translate by `u` (all coordinates nonzero).
pub fn pushoff_count(path: &EdgePath, u: &[i64; 4]) -> i64 {
    let edges: Vec<_> = path.edges().collect();
    let mut total = 0;
    for (i, &(p, q)) in edges.iter().enumerate() {
        for (j, &(r, s)) in edges.iter().enumerate() {
            if i == j {
                continue;
            }
            let Some(sign) = sector_pair_sign(p, q, r, s) else { continue };
            // x = a p + b q = c r + d s + u with a, b, c, d > 0
            let inside = [(p, 1), (q, 1), (r, -1), (s, -1)]
                .iter()
                .all(|&(v, k)| u[v.axis as usize].signum() == (v.sign() * k) as i64);
            if inside {
                total += sign as i64;
            }
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for WeightConfig {
    fn default() -> Self {
        Self { samples: 100_000, seed: 0x5e_ed0f_5e1f }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightEstimate {
    pub mean: f64,
    /// Hoeffding half-width at confidence 1 - 10⁻⁶
    pub bound: f64,
    pub samples: usize,
    /// every sampled count was zero
    pub identically_zero: bool,
    pub resampled: usize,
}

impl WeightEstimate {
    pub fn within(&self, target: f64, tol: f64) -> bool {
        (self.mean - target).abs() <= tol
    }
}

/// Monte Carlo push-off average over random rational directions.
pub fn glt_weight_monte_carlo(path: &EdgePath, cfg: &WeightConfig) -> WeightEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let edges = path.len() as f64;
    let range = (edges * (edges - 1.0)).max(1.0);
    let mut sum = 0i64;
    let mut zero = true;
    let mut resampled = 0;
    for _ in 0..cfg.samples {
        let u = loop {
            let u: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-1000..=1000));
            if u.iter().all(|&x| x != 0) {
                break u;
            }
            // a zero coordinate makes some intersection non-transverse
            resampled += 1;
        };
        let c = pushoff_count(path, &u);
        zero &= c == 0;
        sum += c;
    }
    let n = cfg.samples.max(1) as f64;
    let bound = 2.0 * range * ((2.0f64 / 1e-6).ln() / (2.0 * n)).sqrt();
    WeightEstimate { mean: sum as f64 / n, bound, samples: cfg.samples, identically_zero: zero, resampled }
}
