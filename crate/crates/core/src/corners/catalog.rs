use crate::polytopes::Cell600;
use std::collections::HashMap;

/// A vertex of the 120-cell, named by its four facets.
pub type VertexKey = [u32; 4];

/// Kind of a model cell, determined by how many facets of the base 120-cell contain it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Pentagon,
    Dodecahedron,
    Cell120,
}

impl CellKind {
    pub fn from_clique_len(n: usize) -> Option<Self> {
        match n {
            0 => Some(Self::Cell120),
            1 => Some(Self::Dodecahedron),
            2 => Some(Self::Pentagon),
            _ => None,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Self::Pentagon => 2,
            Self::Dodecahedron => 3,
            Self::Cell120 => 4,
        }
    }
}

/// The faces of one model cell: the face of the base 120-cell cut out by the
/// facets in `clique`. Faces are the cliques containing `clique`; index 0 is the
/// cell itself.
#[derive(Debug, Clone)]
pub struct ModelCatalog {
    pub clique: Vec<u32>,
    pub kind: CellKind,
    pub faces: Vec<Vec<u32>>,
    /// vertex keys of each face, sorted
    pub vertices: Vec<Vec<VertexKey>>,
    index: HashMap<Vec<u32>, usize>,
    by_vertices: HashMap<Vec<VertexKey>, usize>,
}

impl ModelCatalog {
    pub fn new(cell: &Cell600, clique: &[u32]) -> Option<Self> {
        let mut k: Vec<u32> = clique.to_vec();
        k.sort_unstable();
        let kind = CellKind::from_clique_len(k.len())?;
        if !is_clique(cell, &k) {
            return None;
        }
        let mut faces = vec![k.clone()];
        extend(cell, &k, &[], &mut faces);
        faces[1..].sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Vec<u32>, usize> = faces.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        let all_vertices: Vec<VertexKey> =
            faces.iter().filter(|f| f.len() == 4).map(|f| [f[0], f[1], f[2], f[3]]).collect();
        let vertices: Vec<Vec<VertexKey>> = faces
            .iter()
            .map(|f| all_vertices.iter().filter(|v| f.iter().all(|x| v.contains(x))).copied().collect())
            .collect();
        let by_vertices = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Some(Self { clique: k, kind, faces, vertices, index, by_vertices })
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    /// Dimension of face `i`.
    pub fn face_dim(&self, i: usize) -> usize {
        4 - self.faces[i].len()
    }

    pub fn find(&self, clique: &[u32]) -> Option<usize> {
        let mut s = clique.to_vec();
        s.sort_unstable();
        self.index.get(&s).copied()
    }

    pub fn find_by_vertices(&self, vs: &[VertexKey]) -> Option<usize> {
        let mut s = vs.to_vec();
        s.sort_unstable();
        self.by_vertices.get(&s).copied()
    }

    /// The extra facet ids `f` such that `clique ∪ {f}` is a facet of the cell.
    pub fn facet_ids(&self) -> Vec<u32> {
        self.faces
            .iter()
            .filter(|f| f.len() == self.clique.len() + 1)
            .map(|f| *f.iter().find(|x| !self.clique.contains(x)).unwrap())
            .collect()
    }

    pub fn facet_face(&self, f: u32) -> Option<usize> {
        let mut c = self.clique.clone();
        c.push(f);
        self.find(&c)
    }

    /// Faces contained in face `i` (including `i`).
    pub fn subfaces(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let f = &self.faces[i];
        (0..self.faces.len()).filter(move |&j| f.iter().all(|x| self.faces[j].contains(x)))
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim() + 1];
        for i in 0..self.faces.len() {
            out[self.face_dim(i)] += 1;
        }
        out
    }
}

fn is_clique(cell: &Cell600, k: &[u32]) -> bool {
    k.iter().enumerate().all(|(i, &a)| k[i + 1..].iter().all(|&b| cell.adjacent(a as usize, b as usize)))
}

fn extend(cell: &Cell600, base: &[u32], added: &[u32], out: &mut Vec<Vec<u32>>) {
    if base.len() + added.len() == 4 {
        return;
    }
    let cur: Vec<usize> = base.iter().chain(added).map(|&x| x as usize).collect();
    let cands: Vec<usize> = if cur.is_empty() { (0..120).collect() } else { cell.common_neighbours(&cur) };
    let floor = added.last().map_or(0, |&x| x as usize + 1);
    for c in cands.into_iter().filter(|&c| c >= floor && !base.contains(&(c as u32))) {
        let mut a = added.to_vec();
        a.push(c as u32);
        let mut face: Vec<u32> = base.iter().chain(&a).copied().collect();
        face.sort_unstable();
        out.push(face);
        extend(cell, base, &a, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_f_vectors() {
        let c = Cell600::build().unwrap();
        let n = c.neighbours(0).next().unwrap() as u32;
        assert_eq!(ModelCatalog::new(&c, &[0, n]).unwrap().f_vector(), vec![5, 5, 1]);
        assert_eq!(ModelCatalog::new(&c, &[0]).unwrap().f_vector(), vec![20, 30, 12, 1]);
        assert_eq!(ModelCatalog::new(&c, &[]).unwrap().f_vector(), vec![600, 1200, 720, 120, 1]);
        assert!(ModelCatalog::new(&c, &[0, 1]).is_none());
    }
}
