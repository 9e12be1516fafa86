use super::cell600::{Cell600, PolytopeError, Zsqrt5};
use super::symmetry::{Symmetry, SymmetryGroup};
use crate::golden::{lorentz_product, GoldenScalar, Hyperplane, LorentzMatrix, LorentzVector};
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

/// A face of the base 120-cell, named by the sorted ids of the facets containing it.
/// A single id is a facet, two a pentagon, three an edge, four a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceLabel(pub Vec<u32>);

impl FaceLabel {
    pub fn new(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    /// Dimension of the face in the 120-cell.
    pub fn dim(&self) -> usize {
        4 - self.0.len()
    }
}

/// The tessellation of H⁴ by right-angled 120-cells, with the base cell
/// bounded by the hyperplanes `b(x, (1; v)) = 0` for the 600-cell vertices `v`.
#[derive(Debug, Clone)]
pub struct Tessellation {
    pub cell: Cell600,
    pub normals: Vec<LorentzVector>,
    pub hyperplanes: Vec<Hyperplane>,
    pub reflections: Vec<LorentzMatrix>,
    pub symmetries: SymmetryGroup,
    normal_index: HashMap<LorentzVector, usize>,
}

impl Tessellation {
    pub fn build() -> Result<Self, PolytopeError> {
        let cell = Cell600::build()?;
        let normals: Vec<LorentzVector> = (0..120).map(|i| LorentzVector::with_unit_time(&cell.vertex(i))).collect();
        let hyperplanes: Vec<Hyperplane> =
            normals.iter().map(|n| Hyperplane::new(n.clone()).expect("facet normals are space-like")).collect();
        let reflections = hyperplanes.iter().map(LorentzMatrix::reflection).collect();
        let normal_index = normals.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let symmetries = SymmetryGroup::generate(&cell);
        Ok(Self { cell, normals, hyperplanes, reflections, symmetries, normal_index })
    }

    /// Product of facet reflections `r_{w1} ∘ r_{w2} ∘ … ∘ r_{wk}`: the cell reached
    /// by crossing facet `w1` of the base cell, then facet `w2` of that cell, and so on.
    pub fn frame_of_word(&self, word: &[usize]) -> Result<LorentzMatrix, PolytopeError> {
        let mut m = LorentzMatrix::identity();
        for &w in word {
            let r = self.reflections.get(w).ok_or(PolytopeError::InvalidWord(w))?;
            m = m.compose(r);
        }
        Ok(m)
    }

    /// Label of a face of the developed cell addressed by `word`.
    ///
    /// The face is given in the cell's own facet numbering, inherited from
    /// the base cell along the word, so the label is the face itself once the
    /// word is validated. `label_hyperplane` recovers labels independently.
    pub fn label_face(&self, word: &[usize], face: &FaceLabel) -> Result<FaceLabel, PolytopeError> {
        if let Some(&w) = word.iter().find(|&&w| w >= 120) {
            return Err(PolytopeError::InvalidWord(w));
        }
        if face.0.iter().any(|&f| f >= 120) || self.cell.dual.find(face.dim(), &face.0).is_none() {
            return Err(PolytopeError::UnknownFace(face.0.clone()));
        }
        Ok(face.clone())
    }

    /// Pull a tessellation hyperplane back to a facet of the base cell by descent:
    /// returns the facet id and the word of reflections used.
    pub fn label_hyperplane(&self, h: &Hyperplane) -> Option<(usize, Vec<usize>)> {
        let e0 = LorentzVector::basis(0);
        let mut n = h.normal().clone();
        // orient so that the base cell is on the negative side
        if lorentz_product(&e0, &n).is_positive() {
            n = -&n;
        }
        let q = lorentz_product(&self.normals[0], &self.normals[0]);
        let s = lorentz_product(&n, &n);
        if s != q {
            // rescale to the common norm when the ratio is a square in the field
            return self.label_hyperplane(&Hyperplane::new(rescale_to(&n, &q)?).ok()?);
        }
        let mut word = Vec::new();
        for _ in 0..10_000 {
            if let Some(&i) = self.normal_index.get(&n) {
                return Some((i, word));
            }
            let i = (0..120).find(|&i| lorentz_product(&n, &self.normals[i]).is_positive())?;
            n = self.reflections[i].apply(&n);
            word.push(i);
        }
        None
    }

    /// Decompose a tessellation symmetry `m = g ∘ σ` with `g` a product of facet
    /// reflections (returned as a word) and `σ` a symmetry of the base cell.
    pub fn locate(&self, m: &LorentzMatrix) -> Option<(Vec<usize>, Symmetry)> {
        let mut c = m.apply(&LorentzVector::basis(0));
        let mut word = Vec::new();
        for _ in 0..10_000 {
            match (0..120).find(|&i| lorentz_product(&c, &self.normals[i]).is_positive()) {
                Some(i) => {
                    c = self.reflections[i].apply(&c);
                    word.push(i);
                }
                None => break,
            }
        }
        if c != LorentzVector::basis(0) {
            return None;
        }
        let g = self.frame_of_word(&word).ok()?;
        let sigma = g.isometry_inverse().compose(m);
        let perm = (0..120)
            .map(|i| {
                let img = sigma.apply(&self.normals[i]);
                self.normal_index.get(&img).map(|&j| j as u8)
            })
            .collect::<Option<Vec<u8>>>()?;
        Some((word, Symmetry(perm)))
    }

    /// The matrix of a symmetry of the base cell.
    pub fn symmetry_matrix(&self, s: &Symmetry) -> LorentzMatrix {
        s.matrix(&self.cell)
    }

    /// Facet ids of the base cell adjacent to facet `i`.
    pub fn adjacent_facets(&self, i: usize) -> Vec<usize> {
        self.cell.neighbours(i).collect()
    }

    /// Scaled integer coordinates of a spatial golden vector, if it is a vertex.
    pub fn vertex_of(&self, v: &[GoldenScalar; 4]) -> Option<usize> {
        let z: Option<Vec<Zsqrt5>> = v
            .iter()
            .map(|c| {
                let a = (c.rational_part() * num_rational::BigRational::from_integer(4.into())).to_integer();
                let b = (c.surd_part() * num_rational::BigRational::from_integer(4.into())).to_integer();
                Some(Zsqrt5::new(a.to_i64()?, b.to_i64()?))
            })
            .collect();
        let z = z?;
        let arr = [z[0], z[1], z[2], z[3]];
        let id = self.cell.vertex_id(&arr)?;
        (self.cell.vertex(id) == *v).then_some(id)
    }
}

/// Scale `n` so that `b(n, n) = target`, when the ratio is a square of a rational
/// or of a rational multiple of the golden ratio.
fn rescale_to(n: &LorentzVector, target: &GoldenScalar) -> Option<LorentzVector> {
    let s = lorentz_product(n, n);
    if s.is_zero() {
        return None;
    }
    let ratio = target / &s;
    // try λ = r or λ = r·φ with r rational
    for base in [GoldenScalar::int(1), GoldenScalar::phi()] {
        let base_sq = &base * &base;
        let r2 = &ratio / &base_sq;
        if r2.is_rational() && r2.is_positive() {
            if let Some(r) = rational_sqrt(r2.rational_part()) {
                return Some(n.scale(&(&base * &GoldenScalar::rational(r))));
            }
        }
    }
    None
}

fn rational_sqrt(q: &num_rational::BigRational) -> Option<num_rational::BigRational> {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| num_rational::BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::{classify_pair, PairClass};

    #[test]
    fn descent_recovers_facet_labels() {
        let t = Tessellation::build().unwrap();
        let word = [0usize, 37, 5, 90, 3];
        let m = t.frame_of_word(&word).unwrap();
        for i in [0usize, 1, 17, 63, 119] {
            let h = m.apply_hyperplane(&t.hyperplanes[i]);
            let (label, _) = t.label_hyperplane(&h).unwrap();
            assert_eq!(label, i);
        }
        let (w, s) = t.locate(&m).unwrap();
        assert_eq!(s, Symmetry::identity());
        assert_eq!(t.frame_of_word(&w).unwrap(), m);
    }

    #[test]
    fn invalid_words_rejected() {
        let t = Tessellation::build().unwrap();
        assert!(t.frame_of_word(&[3, 120]).is_err());
        assert!(t.label_face(&[200], &FaceLabel::new(vec![0])).is_err());
        assert_eq!(t.label_face(&[], &FaceLabel::new(vec![7])).unwrap(), FaceLabel::new(vec![7]));
    }

    #[test]
    fn neighbouring_facets_orthogonal() {
        let t = Tessellation::build().unwrap();
        for j in t.adjacent_facets(0) {
            assert_eq!(classify_pair(&t.hyperplanes[0], &t.hyperplanes[j]), PairClass::Orthogonal);
        }
    }
}
