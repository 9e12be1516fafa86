use super::IntegerMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal, `dᵢ | dᵢ₊₁`, `dᵢ ≥ 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    /// nonzero diagonal entries
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors larger than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_one_abs()).cloned().collect()
    }
}

trait OneAbs {
    fn is_one_abs(&self) -> bool;
}

impl OneAbs for BigInt {
    fn is_one_abs(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

struct Work {
    a: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
    }
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
    }

    /// Smallest nonzero |entry| in the lower-right block from `t`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                    best = Some((i, j, x.abs()));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work { a: a.clone(), u: IntegerMatrix::identity(m), v: IntegerMatrix::identity(n) };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = w.min_pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[(t, t)].clone();
            let mut redo = false;
            for i in t + 1..m {
                if !w.a[(i, t)].is_zero() {
                    let q = w.a[(i, t)].div_floor(&p);
                    w.add_row(i, t, &-q);
                    redo |= !w.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.a[(t, j)].is_zero() {
                    let q = w.a[(t, j)].div_floor(&p);
                    w.add_col(j, t, &-q);
                    redo |= !w.a[(t, j)].is_zero();
                }
            }
            if redo {
                // a remainder is smaller than the pivot: move it up and repeat
                let (pi, pj) = w.min_pivot_in_cross(t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| !w.a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    w.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.a.negate_row(t);
            w.u.negate_row(t);
        }
        t += 1;
    }
    let invariants: Vec<BigInt> = (0..m.min(n)).map(|i| w.a[(i, i)].clone()).filter(|x| !x.is_zero()).collect();
    let out = SmithForm { d: w.a, u: w.u, v: w.v, invariants };
    assert_eq!(out.u.mul(a).mul(&out.v), out.d, "Smith normal form identity failed");
    out
}

impl Work {
    fn min_pivot_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a[(t, t)].abs());
        for i in t + 1..self.a.rows() {
            let x = self.a[(i, t)].abs();
            if !x.is_zero() && x < best.2 {
                best = (i, t, x);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a[(t, j)].abs();
            if !x.is_zero() && x < best.2 {
                best = (t, j, x);
            }
        }
        (best.0, best.1)
    }
}
