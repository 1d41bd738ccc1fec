//! Dense Gaussian elimination over an exact field.

use super::field::Field;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<C: Field>(m: &mut [Vec<C>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].finv();
        for v in m[r].iter_mut() {
            *v = v.fmul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.fmul(&m[r][j]);
                    m[i][j] = m[i][j].fsub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<C: Field>(m: &[Vec<C>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace<C: Field>(m: &[Vec<C>], cols: usize) -> Vec<Vec<C>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![C::zero(); cols];
        v[free] = C::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][free].fneg();
        }
        basis.push(v);
    }
    basis
}

/// Solution set of `m v = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<C> {
    Inconsistent,
    /// `particular + span(directions)`; `directions` empty means unique.
    Affine { particular: Vec<C>, directions: Vec<Vec<C>> },
}

pub fn solve<C: Field>(m: &[Vec<C>], b: &[C], cols: usize) -> Solution<C> {
    let mut a: Vec<Vec<C>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&cols) {
        return Solution::Inconsistent;
    }
    let mut particular = vec![C::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = a[r][cols].clone();
    }
    Solution::Affine { particular, directions: nullspace(m, cols) }
}
