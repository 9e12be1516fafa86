use super::complex::{CornerComplex, CornerError, Slot, Strata};
use std::collections::{BTreeMap, VecDeque};

/// One cell of a completed star: a real cell of the complex, or a formal
/// reflection of one across the free facets listed in `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCell {
    /// `+1`/`-1` per axis: which side of each local hyperplane the cell occupies
    pub orthant: Vec<i8>,
    pub cell: usize,
    pub face: usize,
    pub word: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Star {
    pub stratum: usize,
    /// facet ids of the reference corner, one per local axis
    pub axes: Vec<u32>,
    pub cells: Vec<StarCell>,
}

impl Star {
    pub fn real_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.word.is_empty()).count()
    }
}

/// Complete the star of a stratum to the full tessellation star by formal reflections.
pub fn develop_star(x: &CornerComplex, st: &Strata, stratum: usize) -> Result<Star, CornerError> {
    let &(c0, f0) = st.members[stratum].first().ok_or_else(|| CornerError::IllegalStar(stratum, "empty".into()))?;
    let cat = &x.cells[c0].catalog;
    let axes: Vec<u32> = cat.faces[f0].iter().copied().filter(|v| !cat.clique.contains(v)).collect();
    let k = axes.len();
    let mut filled: BTreeMap<Vec<i8>, StarCell> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let start = StarCell { orthant: vec![1; k], cell: c0, face: f0, word: Vec::new() };
    filled.insert(start.orthant.clone(), start.clone());
    queue.push_back((start, axes.clone()));
    while let Some((sc, amap)) = queue.pop_front() {
        for i in 0..k {
            let h = amap[i];
            let slot = Slot::new(sc.cell, h);
            let mut orthant = sc.orthant.clone();
            orthant[i] = -orthant[i];
            let (next, nmap) = match x.partner(slot) {
                Some((t, _)) => {
                    let (_, face) = x
                        .face_across(slot, sc.face)
                        .ok_or_else(|| CornerError::IllegalStar(stratum, "gluing misses the corner".into()))?;
                    let ccat = &x.cells[sc.cell].catalog;
                    let tcat = &x.cells[t.cell].catalog;
                    let mut nmap = Vec::with_capacity(k);
                    for (j, &a) in amap.iter().enumerate() {
                        if j == i {
                            nmap.push(t.facet);
                            continue;
                        }
                        let mut r = ccat.clique.clone();
                        r.push(h);
                        r.push(a);
                        let rf = ccat.find(&r).unwrap();
                        let (_, img) = x.face_across(slot, rf).unwrap();
                        nmap.push(*tcat.faces[img].iter().find(|v| !tcat.clique.contains(v) && **v != t.facet).unwrap());
                    }
                    (StarCell { orthant: orthant.clone(), cell: t.cell, face, word: sc.word.clone() }, nmap)
                }
                None => {
                    let mut word = sc.word.clone();
                    word.push(h);
                    (StarCell { orthant: orthant.clone(), cell: sc.cell, face: sc.face, word }, amap.clone())
                }
            };
            match filled.get(&orthant) {
                Some(prev) => {
                    if (prev.cell, prev.face) != (next.cell, next.face) {
                        return Err(CornerError::IllegalStar(
                            stratum,
                            format!("orthant {orthant:?} claimed by cells {} and {}", prev.cell, next.cell),
                        ));
                    }
                }
                None => {
                    filled.insert(orthant, next.clone());
                    queue.push_back((next, nmap));
                }
            }
        }
    }
    Ok(Star { stratum, axes, cells: filled.into_values().collect() })
}

/// Census of corner counts around codimension-2 strata.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CornerReport {
    /// number of ridges by number of incident cell corners
    pub census: BTreeMap<usize, usize>,
    /// ridges with the forbidden count 3 (or more than 4)
    pub violations: Vec<usize>,
}

impl CornerReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_corner_angles(x: &CornerComplex) -> CornerReport {
    let st = x.strata();
    let mut r = CornerReport::default();
    for (i, m) in st.members.iter().enumerate() {
        let &(c, f) = &m[0];
        let cat = &x.cells[c].catalog;
        if cat.faces[f].len() != cat.clique.len() + 2 {
            continue;
        }
        *r.census.entry(m.len()).or_insert(0) += 1;
        if m.len() == 3 || m.len() > 4 {
            r.violations.push(i);
        }
    }
    r
}
