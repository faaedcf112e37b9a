use num_traits::Zero;

use crate::scalar::Q;

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
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
        let inv = Q::from_integer(1.into()) / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of {v : m·v = 0}, m given as rows × cols.
pub(crate) fn kernel(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::from_integer(1.into());
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Standard basis vectors spanning a complement of the column space of m
/// (rows × cols): the non-pivot rows of the transpose echelon form.
pub(crate) fn cokernel_complement(m: &[Vec<Q>], rows: usize) -> Vec<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    // columns of m as rows, then echelon: pivot positions are hit coordinates
    let mut t: Vec<Vec<Q>> = (0..cols).map(|c| (0..rows).map(|r| m[r][c].clone()).collect()).collect();
    let pivots = rref(&mut t);
    (0..rows).filter(|r| !pivots.contains(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn kernel_and_cokernel() {
        // [[1, 1, 0], [0, 0, 0]]
        let m = vec![vec![qi(1), qi(1), qi(0)], vec![qi(0), qi(0), qi(0)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Q = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        assert_eq!(cokernel_complement(&m, 2), vec![1]);
    }
}
