use super::snf::{smith_normal_form, SmithForm};
use super::IntegerMatrix;
use crate::corners::{ordered_sign, perm_sign, CornerComplex, Strata, VertexKey};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary maps do not compose to zero in degree {0}")]
    NotAComplex(usize),
    #[error("boundary matrix {0} has the wrong shape")]
    Shape(usize),
    #[error("stratum {0} is glued to itself with reversed orientation")]
    FoldedCell(usize),
    #[error("edge path is not closed")]
    NotClosed,
    #[error("step {0} does not follow an edge of the complex")]
    BadStep(usize),
}

/// Free chain groups `C_0 … C_n` with boundary matrices; `boundary(k)` maps
/// `C_k → C_{k-1}` (rows indexed by `C_{k-1}`).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntegerMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl ChainComplex {
    /// `boundaries[k-1]` is `∂_k` for `k = 1..=n`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>) -> Result<Self, HomologyError> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(HomologyError::Shape(boundaries.len()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[i] || b.cols() != ranks[i + 1] {
                return Err(HomologyError::Shape(i + 1));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(HomologyError::NotAComplex(k + 1));
            }
        }
        Ok(Self { ranks, boundaries })
    }

    pub fn top_dim(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `∂_k`, or `None` outside `1..=n`.
    pub fn boundary(&self, k: usize) -> Option<&IntegerMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn smith(&self, k: usize) -> Option<SmithForm> {
        self.boundary(k).map(smith_normal_form)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }
}

pub fn homology(c: &ChainComplex, k: usize) -> Homology {
    let rank_out = c.smith(k).map_or(0, |s| s.rank());
    let (rank_in, torsion) = c.smith(k + 1).map_or((0, Vec::new()), |s| (s.rank(), s.torsion()));
    Homology { betti: c.rank(k) - rank_out - rank_in, torsion }
}

/// Cellular chains of a corner complex: one generator per stratum.
///
/// Every face of the 600-cell face lattice is oriented by the sign of
/// `det(clique, x₁, …, x_d)` on its flags, so incidence numbers are
/// permutation signs and gluings act by ±1 on generators.
#[derive(Clone, Debug)]
pub struct CellularChains {
    pub chains: ChainComplex,
    pub strata: Strata,
    /// position of each stratum in its chain group
    pub index: Vec<usize>,
    /// sign of each model face against its stratum generator, per cell
    sign: Vec<Vec<i8>>,
}

/// `o_Q(F) · o_{Q'}(m F)` for a face `face` of cell `a` carried to cell `b`.
fn transport_sign(x: &CornerComplex, a: usize, face: usize, b: usize, map: &dyn Fn(&VertexKey) -> VertexKey) -> i32 {
    let ca = &x.cells[a].catalog;
    let cb = &x.cells[b].catalog;
    let qa = &ca.faces[face];
    let v = ca.vertices[face][0];
    let xs: Vec<u32> = v.iter().copied().filter(|e| !qa.contains(e)).collect();
    let image = |clique: &[u32]| -> Vec<u32> {
        let f = ca.find(clique).unwrap();
        let im: Vec<VertexKey> = ca.vertices[f].iter().map(map).collect();
        cb.faces[cb.find_by_vertices(&im).unwrap()].clone()
    };
    let qb = image(qa);
    let mut ys = Vec::new();
    let mut cur_a = qa.clone();
    let mut cur_b = qb.clone();
    for &e in &xs {
        cur_a.push(e);
        let next = image(&cur_a);
        ys.push(*next.iter().find(|y| !cur_b.contains(y)).unwrap());
        cur_b = next;
    }
    let oa: Vec<u32> = qa.iter().chain(&xs).copied().collect();
    let ob: Vec<u32> = qb.iter().chain(&ys).copied().collect();
    ordered_sign(&x.polytope, &oa) * ordered_sign(&x.polytope, &ob)
}

impl CellularChains {
    pub fn build(x: &CornerComplex) -> Result<Self, HomologyError> {
        let strata = x.strata();
        let top = strata.dims.iter().copied().max().unwrap_or(0);
        let mut ranks = vec![0usize; if strata.is_empty() { 0 } else { top + 1 }];
        let mut index = vec![0; strata.len()];
        for (s, &d) in strata.dims.iter().enumerate() {
            index[s] = ranks[d];
            ranks[d] += 1;
        }
        // relative signs between model faces across gluings
        let offsets: Vec<usize> = x
            .cells
            .iter()
            .scan(0, |acc, c| {
                let o = *acc;
                *acc += c.catalog.faces.len();
                Some(o)
            })
            .collect();
        let total = x.cells.iter().map(|c| c.catalog.faces.len()).sum();
        let mut adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); total];
        for g in x.gluings() {
            let ca = &x.cells[g.a.cell].catalog;
            let fa = ca.facet_face(g.a.facet).unwrap();
            let map = |v: &VertexKey| g.map.image(v).unwrap();
            for face in ca.subfaces(fa) {
                let (cb, fb) = x.face_across(g.a, face).unwrap();
                let s = transport_sign(x, g.a.cell, face, cb, &map);
                adj[offsets[g.a.cell] + face].push((offsets[cb] + fb, s));
                adj[offsets[cb] + fb].push((offsets[g.a.cell] + face, s));
            }
        }
        let mut flat = vec![0i8; total];
        for (s, members) in strata.members.iter().enumerate() {
            let (c, f) = members[0];
            let start = offsets[c] + f;
            flat[start] = 1;
            let mut q = VecDeque::from([start]);
            while let Some(u) = q.pop_front() {
                for &(w, rel) in &adj[u] {
                    let want = (flat[u] as i32 * rel) as i8;
                    if flat[w] == 0 {
                        flat[w] = want;
                        q.push_back(w);
                    } else if flat[w] != want {
                        return Err(HomologyError::FoldedCell(s));
                    }
                }
            }
        }
        let sign: Vec<Vec<i8>> =
            x.cells.iter().enumerate().map(|(c, cell)| flat[offsets[c]..offsets[c] + cell.catalog.faces.len()].to_vec()).collect();
        let mut boundaries: Vec<IntegerMatrix> = (1..ranks.len()).map(|k| IntegerMatrix::zeros(ranks[k - 1], ranks[k])).collect();
        for (s, members) in strata.members.iter().enumerate() {
            let d = strata.dims[s];
            if d == 0 {
                continue;
            }
            let (c, f) = members[0];
            let cat = &x.cells[c].catalog;
            let q = &cat.faces[f];
            let mut extras: Vec<u32> =
                cat.vertices[f].iter().flat_map(|v| v.iter().copied()).filter(|e| !q.contains(e)).collect();
            extras.sort_unstable();
            extras.dedup();
            for e in extras {
                let mut g = q.clone();
                g.push(e);
                let Some(gi) = cat.find(&g) else { continue };
                let mut sorted = g.clone();
                sorted.sort_unstable();
                let inc = perm_sign(&sorted, &g) * sign[c][gi] as i32;
                let t = strata.class(c, gi);
                boundaries[d - 1][(index[t], index[s])] += inc;
            }
        }
        let chains = ChainComplex::new(ranks, boundaries)?;
        Ok(Self { chains, strata, index, sign })
    }

    pub fn homology(&self, k: usize) -> Homology {
        homology(&self.chains, k)
    }

    /// 1-chain of an edge path given as `(cell, edge face, end vertex)` steps.
    pub fn edge_chain(&self, x: &CornerComplex, steps: &[(usize, usize, VertexKey)]) -> Result<Vec<BigInt>, HomologyError> {
        let mut z = vec![BigInt::zero(); self.chains.rank(1)];
        for (i, &(c, e, to)) in steps.iter().enumerate() {
            let cat = x.cells.get(c).map(|cell| &cell.catalog).ok_or(HomologyError::BadStep(i))?;
            if e >= cat.faces.len() || cat.face_dim(e) != 1 || !cat.vertices[e].contains(&to) {
                return Err(HomologyError::BadStep(i));
            }
            let q = &cat.faces[e];
            let head = *to.iter().find(|v| !q.contains(v)).unwrap();
            let mut o = q.clone();
            o.push(head);
            let eps = ordered_sign(&x.polytope, &o) * self.sign[c][e] as i32;
            z[self.index[self.strata.class(c, e)]] += eps;
        }
        if let Some(d1) = self.chains.boundary(1) {
            if d1.apply(&z).iter().any(|v| !v.is_zero()) {
                return Err(HomologyError::NotClosed);
            }
        }
        Ok(z)
    }

    /// Class of a 1-cycle in `C₁ / im ∂₂ ⊇ H₁`, in Smith coordinates.
    pub fn cycle_class(&self, z: &[BigInt]) -> CurveClass {
        let n1 = self.chains.rank(1);
        match self.chains.smith(2) {
            Some(s) => {
                let zz = s.u.apply(z);
                let r = s.rank();
                let torsion = (0..r).filter(|&i| s.invariants[i] != BigInt::from(1)).map(|i| zz[i].mod_floor(&s.invariants[i])).collect();
                CurveClass { free: zz[r..].to_vec(), torsion }
            }
            None => CurveClass { free: z[..n1].to_vec(), torsion: Vec::new() },
        }
    }

    pub fn curve_class(&self, x: &CornerComplex, steps: &[(usize, usize, VertexKey)]) -> Result<CurveClass, HomologyError> {
        Ok(self.cycle_class(&self.edge_chain(x, steps)?))
    }
}

/// Homology class of a cycle: free coordinates and torsion residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl CurveClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}
