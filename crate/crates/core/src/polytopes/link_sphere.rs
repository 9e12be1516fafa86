use std::fmt;

/// A vertex `±e_axis` of the link triangulation of S³.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkVertex {
    pub axis: u8,
    pub positive: bool,
}

impl LinkVertex {
    pub const fn new(axis: u8, positive: bool) -> Self {
        Self { axis, positive }
    }

    pub fn antipode(self) -> Self {
        Self::new(self.axis, !self.positive)
    }

    pub fn sign(self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn index(self) -> usize {
        2 * self.axis as usize + (!self.positive) as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::new((i / 2) as u8, i.is_multiple_of(2))
    }

    /// As a vector of R⁴.
    pub fn vector(self) -> [i32; 4] {
        let mut v = [0; 4];
        v[self.axis as usize] = self.sign();
        v
    }
}

impl fmt::Debug for LinkVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", if self.positive { "+" } else { "-" }, self.axis + 1)
    }
}

impl std::str::FromStr for LinkVertex {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (positive, rest) = match s.as_bytes().first() {
            Some(b'+') => (true, &s[1..]),
            Some(b'-') => (false, &s[1..]),
            _ => (true, s),
        };
        let axis: u8 = rest
            .strip_prefix('e')
            .and_then(|r| r.parse().ok())
            .filter(|&a| (1..=4).contains(&a))
            .ok_or_else(|| format!("bad link vertex `{s}` (expected ±e1..±e4)"))?;
        Ok(Self::new(axis - 1, positive))
    }
}

/// The triangulation of S³ into 16 right-angled tetrahedra, one per octant.
#[derive(Debug, Clone)]
pub struct LinkSphere {
    pub vertices: Vec<LinkVertex>,
    pub edges: Vec<[LinkVertex; 2]>,
    pub triangles: Vec<[LinkVertex; 3]>,
    pub tetrahedra: Vec<[LinkVertex; 4]>,
}

impl LinkSphere {
    pub fn build() -> Self {
        let vertices: Vec<LinkVertex> = (0..8).map(LinkVertex::from_index).collect();
        let mut edges = Vec::new();
        let mut triangles = Vec::new();
        for a in &vertices {
            for b in &vertices {
                if a < b && a.axis != b.axis {
                    edges.push([*a, *b]);
                    for c in &vertices {
                        if b < c && c.axis != a.axis && c.axis != b.axis {
                            triangles.push([*a, *b, *c]);
                        }
                    }
                }
            }
        }
        let tetrahedra = (0..16u8)
            .map(|m| std::array::from_fn(|i| LinkVertex::new(i as u8, m >> i & 1 == 0)))
            .collect();
        Self { vertices, edges, triangles, tetrahedra }
    }

    pub fn is_edge(a: LinkVertex, b: LinkVertex) -> bool {
        a.axis != b.axis
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
            - self.tetrahedra.len() as i64
    }

    /// Number of tetrahedra containing all the given vertices.
    pub fn tetrahedra_containing(&self, vs: &[LinkVertex]) -> usize {
        self.tetrahedra.iter().filter(|t| vs.iter().all(|v| t.contains(v))).count()
    }

    pub fn triangles_containing(&self, vs: &[LinkVertex]) -> usize {
        self.triangles.iter().filter(|t| vs.iter().all(|v| t.contains(v))).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let s = LinkSphere::build();
        assert_eq!(s.vertices.len(), 8);
        assert_eq!(s.edges.len(), 24);
        assert_eq!(s.triangles.len(), 32);
        assert_eq!(s.tetrahedra.len(), 16);
        assert_eq!(s.euler_characteristic(), 0);
    }

    #[test]
    fn incidences() {
        let s = LinkSphere::build();
        for t in &s.triangles {
            assert_eq!(s.tetrahedra_containing(t), 2);
        }
        for e in &s.edges {
            assert_eq!(s.triangles_containing(e), 4);
            assert_eq!(s.tetrahedra_containing(e), 4);
        }
    }

    #[test]
    fn parse_vertex() {
        assert_eq!("-e3".parse::<LinkVertex>().unwrap(), LinkVertex::new(2, false));
        assert_eq!("+e1".parse::<LinkVertex>().unwrap(), LinkVertex::new(0, true));
        assert!("e5".parse::<LinkVertex>().is_err());
    }
}
