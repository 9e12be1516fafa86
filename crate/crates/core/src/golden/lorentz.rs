use super::GoldenScalar;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("normal vector is not space-like (b(n,n) has sign {0})")]
    NotSpaceLike(i32),
    #[error("hyperplanes are not disjoint: {0:?}")]
    NotDisjoint(PairClass),
    #[error("vector is not time-like")]
    NotTimeLike,
}

/// A vector of R^{4,1} with coordinates in Q(√5); index 0 is time-like.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LorentzVector(pub [GoldenScalar; 5]);

impl LorentzVector {
    pub fn new(c: [GoldenScalar; 5]) -> Self {
        Self(c)
    }

    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| GoldenScalar::zero()))
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = GoldenScalar::one();
        v
    }

    /// `(1; x1..x4)`, the facet normal attached to a point of the unit 3-sphere.
    pub fn with_unit_time(spatial: &[GoldenScalar; 4]) -> Self {
        Self([
            GoldenScalar::one(),
            spatial[0].clone(),
            spatial[1].clone(),
            spatial[2].clone(),
            spatial[3].clone(),
        ])
    }

    pub fn scale(&self, s: &GoldenScalar) -> Self {
        Self(std::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// True when `self = λ·other` for some nonzero λ.
    pub fn is_proportional(&self, other: &Self) -> bool {
        // all 2x2 minors vanish
        for i in 0..5 {
            for j in (i + 1)..5 {
                let m = &(&self.0[i] * &other.0[j]) - &(&self.0[j] * &other.0[i]);
                if !m.is_zero() {
                    return false;
                }
            }
        }
        !self.is_zero() && !other.is_zero()
    }

    pub fn to_f64(&self) -> [f64; 5] {
        std::array::from_fn(|i| self.0[i].to_f64())
    }
}

impl Index<usize> for LorentzVector {
    type Output = GoldenScalar;
    fn index(&self, i: usize) -> &GoldenScalar {
        &self.0[i]
    }
}

impl Add for &LorentzVector {
    type Output = LorentzVector;
    fn add(self, rhs: &LorentzVector) -> LorentzVector {
        LorentzVector(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &LorentzVector {
    type Output = LorentzVector;
    fn sub(self, rhs: &LorentzVector) -> LorentzVector {
        LorentzVector(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &LorentzVector {
    type Output = LorentzVector;
    fn neg(self) -> LorentzVector {
        LorentzVector(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl fmt::Debug for LorentzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Coefficient of `x0·y0` in the form: `-φ/2`.
pub fn time_coefficient() -> GoldenScalar {
    GoldenScalar::from_fracs(-1, 4, -1, 4)
}

/// `b(x,y) = -(φ/2)·x0·y0 + x1·y1 + x2·y2 + x3·y3 + x4·y4`.
pub fn lorentz_product(x: &LorentzVector, y: &LorentzVector) -> GoldenScalar {
    let mut acc = &time_coefficient() * &(&x.0[0] * &y.0[0]);
    for i in 1..5 {
        acc += &(&x.0[i] * &y.0[i]);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairClass {
    Equal,
    Orthogonal,
    Intersecting,
    Ideal,
    Ultraparallel,
}

impl PairClass {
    pub fn meets(self) -> bool {
        matches!(self, PairClass::Equal | PairClass::Orthogonal | PairClass::Intersecting)
    }
}

/// A hyperplane of H⁴, stored by a space-like normal of arbitrary length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: LorentzVector,
}

impl Hyperplane {
    pub fn new(normal: LorentzVector) -> Result<Self, GeometryError> {
        let q = lorentz_product(&normal, &normal);
        if !q.is_positive() {
            return Err(GeometryError::NotSpaceLike(q.signum()));
        }
        Ok(Self { normal })
    }

    pub fn normal(&self) -> &LorentzVector {
        &self.normal
    }

    pub fn norm_sq(&self) -> GoldenScalar {
        lorentz_product(&self.normal, &self.normal)
    }

    /// Same hyperplane, same normal direction up to positive scaling.
    pub fn same_as(&self, other: &Hyperplane) -> bool {
        self.normal.is_proportional(&other.normal)
    }

    /// Side of a time-like point: +1, -1, or 0 when the point lies on the hyperplane.
    /// The point is normalised to the future sheet first.
    pub fn side_of(&self, p: &LorentzVector) -> Result<i32, GeometryError> {
        let t = future_sign(p)?;
        Ok(lorentz_product(p, &self.normal).signum() * t)
    }

    /// A time-like point on the hyperplane: the form-orthogonal projection of `(1;0,0,0,0)`.
    pub fn base_point(&self) -> LorentzVector {
        let e0 = LorentzVector::basis(0);
        let c = &lorentz_product(&e0, &self.normal) / &self.norm_sq();
        &e0 - &self.normal.scale(&c)
    }

    pub fn scaled(&self, s: &GoldenScalar) -> Result<Self, GeometryError> {
        Hyperplane::new(self.normal.scale(s))
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{:?}", self.normal)
    }
}

/// +1 for future-pointing time-like vectors, -1 for past-pointing.
pub fn future_sign(p: &LorentzVector) -> Result<i32, GeometryError> {
    if !lorentz_product(p, p).is_negative() {
        return Err(GeometryError::NotTimeLike);
    }
    Ok(-lorentz_product(p, &LorentzVector::basis(0)).signum())
}

pub fn classify_pair(h1: &Hyperplane, h2: &Hyperplane) -> PairClass {
    if h1.normal.is_proportional(&h2.normal) {
        return PairClass::Equal;
    }
    let p = lorentz_product(&h1.normal, &h2.normal);
    if p.is_zero() {
        return PairClass::Orthogonal;
    }
    let d = &(&p * &p) - &(&h1.norm_sq() * &h2.norm_sq());
    match d.signum() {
        -1 => PairClass::Intersecting,
        0 => PairClass::Ideal,
        _ => PairClass::Ultraparallel,
    }
}

/// Reflection of `x` in `h`: `x - 2·b(x,n)/b(n,n)·n`.
pub fn reflect(h: &Hyperplane, x: &LorentzVector) -> LorentzVector {
    let c = &(&lorentz_product(x, &h.normal) / &h.norm_sq()) * &GoldenScalar::int(2);
    x - &h.normal.scale(&c)
}

/// Whether `h` strictly separates `h1` from `h2`. Both must be ultraparallel to `h`.
pub fn separates(h: &Hyperplane, h1: &Hyperplane, h2: &Hyperplane) -> Result<bool, GeometryError> {
    for hi in [h1, h2] {
        let c = classify_pair(h, hi);
        if c != PairClass::Ultraparallel {
            return Err(GeometryError::NotDisjoint(c));
        }
    }
    let s1 = h.side_of(&h1.base_point())?;
    let s2 = h.side_of(&h2.base_point())?;
    Ok(s1 * s2 < 0)
}

/// A 5×5 matrix over Q(√5) acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LorentzMatrix(pub [[GoldenScalar; 5]; 5]);

impl LorentzMatrix {
    pub fn identity() -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { GoldenScalar::one() } else { GoldenScalar::zero() })
        }))
    }

    pub fn reflection(h: &Hyperplane) -> Self {
        let cols: Vec<LorentzVector> = (0..5).map(|j| reflect(h, &LorentzVector::basis(j))).collect();
        Self(std::array::from_fn(|i| std::array::from_fn(|j| cols[j].0[i].clone())))
    }

    /// Matrix of a linear map fixing `x0` and acting by `m` on the spatial coordinates.
    pub fn spatial(m: &[[GoldenScalar; 4]; 4]) -> Self {
        let mut r = Self::identity();
        for i in 0..4 {
            for j in 0..4 {
                r.0[i + 1][j + 1] = m[i][j].clone();
            }
        }
        r
    }

    pub fn apply(&self, v: &LorentzVector) -> LorentzVector {
        LorentzVector(std::array::from_fn(|i| {
            let mut acc = GoldenScalar::zero();
            for j in 0..5 {
                if !self.0[i][j].is_zero() && !v.0[j].is_zero() {
                    acc += &(&self.0[i][j] * &v.0[j]);
                }
            }
            acc
        }))
    }

    pub fn compose(&self, rhs: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = GoldenScalar::zero();
                for k in 0..5 {
                    if !self.0[i][k].is_zero() && !rhs.0[k][j].is_zero() {
                        acc += &(&self.0[i][k] * &rhs.0[k][j]);
                    }
                }
                acc
            })
        }))
    }

    /// Inverse of a form-preserving matrix: `G⁻¹ Mᵀ G` with `G` the Gram matrix.
    pub fn isometry_inverse(&self) -> LorentzMatrix {
        let g0 = time_coefficient();
        let g0inv = g0.inverse().unwrap();
        LorentzMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut e = self.0[j][i].clone();
                if i == 0 {
                    e = &e * &g0inv;
                }
                if j == 0 {
                    e = &e * &g0;
                }
                e
            })
        }))
    }

    pub fn preserves_form(&self) -> bool {
        for i in 0..5 {
            for j in i..5 {
                let ci = self.apply(&LorentzVector::basis(i));
                let cj = self.apply(&LorentzVector::basis(j));
                let want = lorentz_product(&LorentzVector::basis(i), &LorentzVector::basis(j));
                if lorentz_product(&ci, &cj) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn determinant(&self) -> GoldenScalar {
        let mut m: Vec<Vec<GoldenScalar>> = self.0.iter().map(|r| r.to_vec()).collect();
        let mut det = GoldenScalar::one();
        for c in 0..5 {
            let Some(p) = (c..5).find(|&r| !m[r][c].is_zero()) else {
                return GoldenScalar::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det = &det * &piv;
            let inv = piv.inverse().unwrap();
            for r in (c + 1)..5 {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] * &inv;
                for k in c..5 {
                    let d = &f * &m[c][k];
                    m[r][k] -= &d;
                }
            }
        }
        det
    }

    /// Hyperplane image `g(H)`.
    pub fn apply_hyperplane(&self, h: &Hyperplane) -> Hyperplane {
        Hyperplane { normal: self.apply(h.normal()) }
    }
}

impl Mul for &LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, rhs: &LorentzMatrix) -> LorentzMatrix {
        self.compose(rhs)
    }
}

impl fmt::Debug for LorentzMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}
