//! Gaussian elimination over [`Fq`].

use super::field::Fq;

/// Row-reduces in place and returns the pivot columns.
pub fn row_reduce(f: &Fq, rows: &mut [Vec<u8>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in c..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(f: &Fq, rows: &[Vec<u8>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(f, &mut m, ncols).len()
}

/// A basis of `{x : M x = 0}`.
pub fn nullspace(f: &Fq, rows: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(f, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u8; ncols];
            x[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(m[r][fc]);
            }
            x
        })
        .collect()
}

/// Determinant of an `n × n` row-major matrix is nonzero.
pub fn is_invertible(f: &Fq, a: &[u8], n: usize) -> bool {
    let mut rows: Vec<Vec<u8>> = a.chunks(n).map(<[u8]>::to_vec).collect();
    row_reduce(f, &mut rows, n).len() == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_matrix() {
        let f = Fq::new(3).unwrap();
        // x + 2y = 0 over F_3
        let m = vec![vec![1, 2]];
        assert_eq!(rank(&f, &m, 2), 1);
        let k = nullspace(&f, &m, 2);
        assert_eq!(k, vec![vec![1, 1]]);
        assert!(is_invertible(&f, &[1, 1, 0, 1], 2));
        assert!(!is_invertible(&f, &[1, 2, 2, 1], 2));
    }
}
