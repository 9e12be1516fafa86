use crate::golden::GoldenScalar;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("f-vector mismatch: expected {expected:?}, found {found:?}")]
    FVector { expected: Vec<usize>, found: Vec<usize> },
    #[error("invalid reflection word: letter {0} is not a facet index")]
    InvalidWord(usize),
    #[error("face not found in lattice: {0:?}")]
    UnknownFace(Vec<u32>),
}

/// An element `a + b√5` of Z[√5], used for the scaled vertex coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zsqrt5 {
    pub a: i64,
    pub b: i64,
}

impl Zsqrt5 {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }
    pub fn mul(self, o: Self) -> Self {
        Self::new(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)
    }
    pub fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
    pub fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
    /// The value divided by `denom`, as an exact field element.
    pub fn to_golden(self, denom: i64) -> GoldenScalar {
        GoldenScalar::from_fracs(self.a, denom, self.b, denom)
    }
}

/// The 120 unit vectors of the 600-cell, scaled by 4 so that coordinates lie in Z[√5].
///
/// Order: the 8 axis vectors, then the 16 half-vectors, then the 96 golden ones.
pub fn scaled_vertices() -> Vec<[Zsqrt5; 4]> {
    let zero = Zsqrt5::new(0, 0);
    let mut out = Vec::with_capacity(120);
    for axis in 0..4 {
        for s in [1, -1] {
            let mut v = [zero; 4];
            v[axis] = Zsqrt5::new(4 * s, 0);
            out.push(v);
        }
    }
    for mask in 0..16u32 {
        let v = std::array::from_fn(|i| Zsqrt5::new(if mask >> i & 1 == 1 { -2 } else { 2 }, 0));
        out.push(v);
    }
    // ½(φ, 1, φ⁻¹, 0) scaled by 4: (1+√5, 2, -1+√5, 0)
    let base = [Zsqrt5::new(1, 1), Zsqrt5::new(2, 0), Zsqrt5::new(-1, 1), zero];
    for perm in even_permutations() {
        for signs in 0..8u32 {
            let mut v = [zero; 4];
            for (slot, &src) in perm.iter().enumerate() {
                let mut c = base[src];
                if src < 3 && signs >> src & 1 == 1 {
                    c = c.neg();
                }
                v[slot] = c;
            }
            out.push(v);
        }
    }
    out
}

pub(crate) fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
                        continue;
                    }
                    let mut inv = 0;
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            if p[i] > p[j] {
                                inv += 1;
                            }
                        }
                    }
                    if inv % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// 16·(v·w) for scaled vertices.
pub fn scaled_dot(v: &[Zsqrt5; 4], w: &[Zsqrt5; 4]) -> Zsqrt5 {
    (0..4).fold(Zsqrt5::new(0, 0), |acc, i| acc.add(v[i].mul(w[i])))
}

/// 16·φ/2 = 4 + 4√5
pub const ADJACENT_DOT: Zsqrt5 = Zsqrt5::new(4, 4);

/// Graded face poset of a regular polytope.
///
/// Faces are stored per dimension as sorted lists of "key" ids: for the
/// 600-cell the keys are vertex ids; for the 120-cell they are the ids of
/// the facets containing the face (a clique of the adjacency graph).
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub name: &'static str,
    faces: Vec<Vec<Vec<u32>>>,
    /// `boundary[k][i]`: indices of the (k-1)-faces in the boundary of k-face i.
    boundary: Vec<Vec<Vec<usize>>>,
    index: Vec<std::collections::HashMap<Vec<u32>, usize>>,
}

impl FaceLattice {
    fn from_faces(name: &'static str, faces: Vec<Vec<Vec<u32>>>, subset_means_boundary: bool) -> Self {
        let index: Vec<std::collections::HashMap<Vec<u32>, usize>> = faces
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect())
            .collect();
        let mut boundary = vec![Vec::new()];
        for k in 1..faces.len() {
            let mut bk = Vec::with_capacity(faces[k].len());
            for f in &faces[k] {
                let mut b = Vec::new();
                if subset_means_boundary {
                    // vertex-keyed: boundary faces are the subsets one smaller
                    for skip in 0..f.len() {
                        let sub: Vec<u32> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                        if let Some(&i) = index[k - 1].get(&sub) {
                            b.push(i);
                        }
                    }
                } else {
                    // clique-keyed: boundary faces are the supersets one larger
                    for (i, g) in faces[k - 1].iter().enumerate() {
                        if g.len() == f.len() + 1 && f.iter().all(|x| g.binary_search(x).is_ok()) {
                            b.push(i);
                        }
                    }
                }
                bk.push(b);
            }
            boundary.push(bk);
        }
        Self { name, faces, boundary, index }
    }

    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    pub fn faces(&self, k: usize) -> &[Vec<u32>] {
        &self.faces[k]
    }

    pub fn boundary(&self, k: usize, i: usize) -> &[usize] {
        &self.boundary[k][i]
    }

    pub fn find(&self, k: usize, key: &[u32]) -> Option<usize> {
        let mut s = key.to_vec();
        s.sort_unstable();
        self.index[k].get(&s).copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }
}

/// The 600-cell together with its adjacency data and the dual 120-cell view.
#[derive(Debug, Clone)]
pub struct Cell600 {
    pub vertices: Vec<[Zsqrt5; 4]>,
    adjacency: Vec<u128>,
    pub lattice: FaceLattice,
    /// Faces of the dual 120-cell, dimension 0..=3, keyed by facet cliques.
    pub dual: FaceLattice,
}

impl Cell600 {
    pub fn vertex(&self, i: usize) -> [GoldenScalar; 4] {
        std::array::from_fn(|k| self.vertices[i][k].to_golden(4))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i] >> j & 1 == 1
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let m = self.adjacency[i];
        (0..120).filter(move |&j| m >> j & 1 == 1)
    }

    pub fn common_neighbours(&self, ids: &[usize]) -> Vec<usize> {
        let m = ids.iter().fold(u128::MAX >> 8, |m, &i| m & self.adjacency[i]);
        (0..120).filter(|&j| m >> j & 1 == 1).collect()
    }

    /// Index of a scaled vertex vector.
    pub fn vertex_id(&self, v: &[Zsqrt5; 4]) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    /// Cyclic order of the 5 facets meeting the pentagon `{a, b}` in an edge.
    pub fn pentagon_ring(&self, a: usize, b: usize) -> Vec<usize> {
        let ring = self.common_neighbours(&[a, b]);
        let mut order = vec![ring[0]];
        while order.len() < ring.len() {
            let last = *order.last().unwrap();
            let next = ring
                .iter()
                .copied()
                .find(|&c| !order.contains(&c) && self.adjacent(last, c))
                .expect("pentagon link is a cycle");
            order.push(next);
        }
        order
    }

    /// Build and check against the known f-vector (120, 720, 1200, 600).
    pub fn build() -> Result<Self, PolytopeError> {
        let vertices = scaled_vertices();
        let n = vertices.len();
        let mut adjacency = vec![0u128; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && scaled_dot(&vertices[i], &vertices[j]) == ADJACENT_DOT {
                    adjacency[i] |= 1u128 << j;
                }
            }
        }
        let adj = |i: usize, j: usize| adjacency[i] >> j & 1 == 1;
        let mut cliques: Vec<Vec<Vec<u32>>> = vec![(0..n as u32).map(|i| vec![i]).collect()];
        for k in 1..4 {
            let mut next = Vec::new();
            for c in &cliques[k - 1] {
                let last = *c.last().unwrap() as usize;
                for j in (last + 1)..n {
                    if c.iter().all(|&x| adj(x as usize, j)) {
                        let mut d = c.clone();
                        d.push(j as u32);
                        next.push(d);
                    }
                }
            }
            cliques.push(next);
        }
        let lattice = FaceLattice::from_faces("600-cell", cliques.clone(), true);
        let expected = vec![120, 720, 1200, 600];
        if lattice.f_vector() != expected {
            return Err(PolytopeError::FVector { expected, found: lattice.f_vector() });
        }
        // 120-cell k-faces are the 600-cell (3-k)-faces
        let dual_faces: Vec<Vec<Vec<u32>>> = (0..4).map(|k| cliques[3 - k].clone()).collect();
        let dual = FaceLattice::from_faces("120-cell", dual_faces, false);
        let expected = vec![600, 1200, 720, 120];
        if dual.f_vector() != expected {
            return Err(PolytopeError::FVector { expected, found: dual.f_vector() });
        }
        Ok(Self { vertices, adjacency, lattice, dual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_count_and_norms() {
        let v = scaled_vertices();
        assert_eq!(v.len(), 120);
        for x in &v {
            assert_eq!(scaled_dot(x, x), Zsqrt5::new(16, 0));
        }
        let mut dedup = v.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 120);
    }

    #[test]
    fn twelve_neighbours_by_direct_count() {
        // oracle: count dot products equal to φ/2 directly from the coordinates
        let v = scaled_vertices();
        for x in &v {
            let c = v.iter().filter(|y| scaled_dot(x, y) == ADJACENT_DOT).count();
            assert_eq!(c, 12);
        }
    }
}
