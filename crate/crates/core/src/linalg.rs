//! Exact Gaussian elimination over a field.

use crate::field::Scalar;

/// Row rank of a matrix given as rows. All entries must share one field.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = &rows[i][c] * &inv;
                for j in c..cols {
                    let sub = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Determinant of a 3x3 matrix.
pub fn det3(m: &[[Scalar; 3]; 3]) -> Scalar {
    &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn ranks() {
        let f = FieldSpec::Rationals;
        let row = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(rank(vec![row(&[1, 2, 3]), row(&[2, 4, 6])]), 1);
        assert_eq!(rank(vec![row(&[1, 2, 3]), row(&[0, 1, 6]), row(&[1, 3, 9])]), 2);
        assert_eq!(rank(vec![row(&[0, 0]), row(&[0, 0])]), 0);
        let g = FieldSpec::prime(7).unwrap();
        let row7 = |v: &[i64]| v.iter().map(|&x| g.from_i64(x)).collect::<Vec<_>>();
        // second row is 3 times the first mod 7
        assert_eq!(rank(vec![row7(&[1, 5]), row7(&[3, 1])]), 1);
    }

    #[test]
    fn determinant() {
        let f = FieldSpec::Rationals;
        let m = [[2, 0, 1], [1, 3, 2], [1, 1, 1]].map(|r| r.map(|x| f.from_i64(x)));
        // 2(3-2) - 0 + 1(1-3)
        assert_eq!(det3(&m), f.from_i64(0));
    }
}
