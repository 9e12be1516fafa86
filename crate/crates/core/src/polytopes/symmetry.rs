use super::cell600::{scaled_dot, Cell600, Zsqrt5};
use crate::golden::{GoldenScalar, LorentzMatrix};
use std::collections::{HashMap, VecDeque};

/// A symmetry of the 120-cell, stored as a permutation of its 120 facets
/// (equivalently of the 600-cell vertices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry(pub Vec<u8>);

impl Symmetry {
    pub fn identity() -> Self {
        Self((0..120).collect())
    }

    pub fn apply(&self, facet: usize) -> usize {
        self.0[facet] as usize
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        Symmetry(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Symmetry {
        let mut inv = vec![0u8; 120];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Symmetry(inv)
    }

    /// Spatial 4×4 matrix: columns are the images of the axis vertices.
    pub fn spatial_matrix(&self, cell: &Cell600) -> [[GoldenScalar; 4]; 4] {
        let cols: Vec<[GoldenScalar; 4]> = (0..4).map(|i| cell.vertex(self.apply(2 * i))).collect();
        std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()))
    }

    pub fn matrix(&self, cell: &Cell600) -> LorentzMatrix {
        LorentzMatrix::spatial(&self.spatial_matrix(cell))
    }
}

/// Permutation induced on the vertices by the reflection in the root `v`.
pub fn root_reflection(cell: &Cell600, root: usize) -> Symmetry {
    let v = cell.vertices[root];
    let perm = cell
        .vertices
        .iter()
        .map(|w| {
            // s(W) = W - (W·V)·V / 8 in the 4x scaled coordinates
            let d = scaled_dot(w, &v);
            let img: [Zsqrt5; 4] = std::array::from_fn(|k| {
                let t = d.mul(v[k]);
                assert!(t.a % 8 == 0 && t.b % 8 == 0, "root reflection leaves the lattice");
                w[k].add(Zsqrt5::new(-t.a / 8, -t.b / 8))
            });
            cell.vertex_id(&img).expect("root reflection permutes the vertices") as u8
        })
        .collect();
    Symmetry(perm)
}

/// The full symmetry group (order 14400) with an orientation character.
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    pub elements: Vec<Symmetry>,
    /// +1 for orientation preserving, -1 otherwise.
    pub parity: Vec<i8>,
    index: HashMap<Symmetry, usize>,
}

impl SymmetryGroup {
    pub fn generate(cell: &Cell600) -> Self {
        // reflections in one root per ± pair
        let gens: Vec<Symmetry> = (0..120)
            .filter(|&r| {
                let v = cell.vertices[r];
                let neg = [v[0].neg(), v[1].neg(), v[2].neg(), v[3].neg()];
                r < cell.vertex_id(&neg).unwrap()
            })
            .map(|r| root_reflection(cell, r))
            .collect();
        let mut elements = vec![Symmetry::identity()];
        let mut parity = vec![1i8];
        let mut index = HashMap::new();
        index.insert(Symmetry::identity(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for gen in &gens {
                let h = gen.compose(&elements[i]);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    parity.push(-parity[i]);
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Self { elements, parity, index }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, s: &Symmetry) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// All symmetries mapping each `from[i]` to `to[i]`.
    pub fn mapping<'a>(&'a self, from: &'a [usize], to: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
        (0..self.elements.len()).filter(move |&g| from.iter().zip(to).all(|(&a, &b)| self.elements[g].apply(a) == b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_order_and_orientation() {
        let cell = Cell600::build().unwrap();
        let g = SymmetryGroup::generate(&cell);
        assert_eq!(g.order(), 14400);
        assert_eq!(g.parity.iter().filter(|&&p| p == 1).count(), 7200);
        // parity agrees with the determinant of the spatial matrix on a sample
        for i in (0..g.order()).step_by(997) {
            let m = g.elements[i].matrix(&cell);
            assert!(m.preserves_form());
            assert_eq!(m.determinant().signum(), g.parity[i] as i32);
        }
    }
}
