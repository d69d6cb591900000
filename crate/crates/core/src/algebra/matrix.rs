//! Matrices of polynomials and their minors.

use thiserror::Error;

use super::field::Field;
use super::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row/column index out of range")]
    IndexOutOfRange,
    #[error("minor needs as many rows as columns (got {rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor size {size} out of range 1..={max}")]
    MinorSizeOutOfRange { size: usize, max: usize },
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("empty matrix")]
    Empty,
}

/// An `m x n` matrix of polynomials with `m <= n`.
///
/// Taller inputs are transposed on construction; the minors (and so every
/// ideal built from them) do not change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
    transposed: bool,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(rows: Vec<Vec<Polynomial<F>>>) -> Result<Self, MatrixError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(MatrixError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::Ragged);
        }
        let mut entries: Vec<_> = rows.into_iter().flatten().collect();
        if m > n {
            let mut t = Vec::with_capacity(m * n);
            for j in 0..n {
                for i in 0..m {
                    t.push(std::mem::take(&mut entries[i * n + j]));
                }
            }
            return Ok(Self {
                rows: n,
                cols: m,
                entries: t,
                transposed: true,
            });
        }
        Ok(Self {
            rows: m,
            cols: n,
            entries,
            transposed: false,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether the input was transposed to satisfy `m <= n`.
    pub fn was_transposed(&self) -> bool {
        self.transposed
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<Polynomial<F>>> {
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    /// Entry-wise map (e.g. substitution or coefficient change).
    pub fn map<G: Field>(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<G>) -> PolyMatrix<G> {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            transposed: self.transposed,
        }
    }

    /// Transpose, keeping the `m <= n` convention by re-normalising.
    pub fn transpose(&self) -> Result<Self, MatrixError> {
        let t: Vec<Vec<_>> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).clone()).collect())
            .collect();
        Self::new(t)
    }

    /// Determinant of the submatrix with the given (0-based) rows and columns.
    pub fn minor_determinant(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial<F>, MatrixError> {
        if rows.len() != cols.len() {
            return Err(MatrixError::NotSquare {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(MatrixError::IndexOutOfRange);
        }
        let sub: Vec<Vec<_>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Ok(determinant(sub))
    }

    /// All `s x s` minors, row subsets outer and column subsets inner, both lexicographic.
    pub fn minors_ideal_generators(&self, s: usize) -> Result<Vec<Polynomial<F>>, MatrixError> {
        if s == 0 || s > self.rows {
            return Err(MatrixError::MinorSizeOutOfRange {
                size: s,
                max: self.rows,
            });
        }
        Ok(minors(&self.row_vecs(), s))
    }
}

/// Determinant of a square matrix: explicit expansion up to size 3, fraction-free
/// Bareiss elimination beyond.
pub fn determinant<F: Field>(mut a: Vec<Vec<Polynomial<F>>>) -> Polynomial<F> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    match n {
        0 => Polynomial::one(),
        1 => a.pop().unwrap().pop().unwrap(),
        2 => &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]),
        3 => laplace3(&a),
        _ => bareiss(a),
    }
}

fn laplace3<F: Field>(a: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let m = |i: usize, j: usize, k: usize, l: usize| &(&a[i][j] * &a[k][l]) - &(&a[i][l] * &a[k][j]);
    let t0 = &a[0][0] * &m(1, 1, 2, 2);
    let t1 = &a[0][1] * &m(1, 0, 2, 2);
    let t2 = &a[0][2] * &m(1, 0, 2, 1);
    &(&t0 - &t1) + &t2
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss<F: Field>(mut a: Vec<Vec<Polynomial<F>>>) -> Polynomial<F> {
    let n = a.len();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            // prefer the sparsest nonzero pivot below
            let Some(r) = (k + 1..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].len())
            else {
                return Polynomial::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if k == 0 {
                    num
                } else {
                    num.exact_div(&prev).expect("Bareiss step must divide exactly")
                };
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All `k x k` minors of a (not necessarily normalised) rectangular matrix.
pub fn minors<F: Field>(rows: &[Vec<Polynomial<F>>], k: usize) -> Vec<Polynomial<F>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    if k == 0 {
        out.push(Polynomial::one());
        return out;
    }
    let col_sets = combinations(n, k);
    for rs in combinations(m, k) {
        for cs in &col_sets {
            let sub: Vec<Vec<_>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                .collect();
            out.push(determinant(sub));
        }
    }
    out
}

/// Jacobian matrix of `polys` with respect to the variables `vars`.
pub fn jacobian<F: Field>(polys: &[Polynomial<F>], vars: &[usize]) -> Vec<Vec<Polynomial<F>>> {
    polys
        .iter()
        .map(|p| vars.iter().map(|&v| p.derivative(v)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rational;
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::polynomial::Ring;

    fn mat(ring: &Ring, rows: &[&[&str]]) -> PolyMatrix<Rational> {
        PolyMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_polynomial(s, ring).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn p(ring: &Ring, s: &str) -> Polynomial<Rational> {
        parse_polynomial(s, ring).unwrap()
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn twisted_cubic_cone_minors() {
        let r = Ring::new(&["x", "y", "z", "w"]);
        let m = mat(&r, &[&["x", "y", "z"], &["y", "z", "w"]]);
        assert_eq!(m.minor_determinant(&[0, 1], &[0, 1]).unwrap(), p(&r, "x*z - y^2"));
        assert_eq!(m.minor_determinant(&[0, 1], &[1, 2]).unwrap(), p(&r, "y*w - z^2"));
        assert_eq!(m.minor_determinant(&[1], &[2]).unwrap(), p(&r, "w"));
        let gens = m.minors_ideal_generators(2).unwrap();
        assert_eq!(
            gens,
            vec![p(&r, "x*z - y^2"), p(&r, "x*w - y*z"), p(&r, "y*w - z^2")]
        );
        assert_eq!(m.minors_ideal_generators(1).unwrap().len(), 6);
    }

    #[test]
    fn curve_matrix_minors() {
        let r = Ring::new(&["x", "y", "z"]);
        let m = mat(&r, &[&["x", "y", "z"], &["y", "z", "x^2"]]);
        assert_eq!(
            m.minors_ideal_generators(2).unwrap(),
            vec![p(&r, "x*z - y^2"), p(&r, "x^3 - y*z"), p(&r, "y*x^2 - z^2")]
        );
    }

    #[test]
    fn errors() {
        let r = Ring::new(&["x", "y"]);
        let m = mat(&r, &[&["x", "y"]]);
        assert_eq!(
            m.minor_determinant(&[0], &[0, 1]),
            Err(MatrixError::NotSquare { rows: 1, cols: 2 })
        );
        assert_eq!(m.minor_determinant(&[1], &[0]), Err(MatrixError::IndexOutOfRange));
        assert!(matches!(
            m.minors_ideal_generators(2),
            Err(MatrixError::MinorSizeOutOfRange { .. })
        ));
    }

    #[test]
    fn tall_input_is_transposed() {
        let r = Ring::new(&["x", "y"]);
        let m = mat(&r, &[&["x"], &["y"]]);
        assert!(m.was_transposed());
        assert_eq!((m.rows(), m.cols()), (1, 2));
    }

    #[test]
    fn bareiss_matches_expansion_on_4x4() {
        let r = Ring::new(&["x", "y", "z"]);
        let rows: Vec<Vec<_>> = [
            ["x", "y", "0", "1"],
            ["0", "x+y", "z", "y"],
            ["z", "0", "x", "x*y"],
            ["1", "z", "y", "0"],
        ]
        .iter()
        .map(|row| row.iter().map(|s| p(&r, s)).collect())
        .collect();
        // cofactor expansion along the first row as oracle
        let mut oracle = Polynomial::zero();
        for j in 0..4 {
            let sub: Vec<Vec<_>> = (1..4)
                .map(|i| (0..4).filter(|&c| c != j).map(|c| rows[i][c].clone()).collect())
                .collect();
            let term = &rows[0][j] * &laplace3(&sub);
            oracle = if j % 2 == 0 {
                &oracle + &term
            } else {
                &oracle - &term
            };
        }
        assert_eq!(bareiss(rows), oracle);
    }
}
