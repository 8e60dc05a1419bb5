use crate::scalars::Scalar;

/// Row-major dense matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<C> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C>,
}

impl<C: Scalar> DenseMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        DenseMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + &(a.clone() * b);
                    }
                }
            }
        }
        out
    }

    pub fn determinant(&self) -> C {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = C::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return C::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * &piv;
            let inv = piv.inv().unwrap();
            for r in c + 1..n {
                let f = m[(r, c)].clone() * &inv;
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = m[(c, k)].clone() * &f;
                    m[(r, k)] = m[(r, k)].clone() - &v;
                }
            }
        }
        det
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces to reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].inv().unwrap();
            for k in c..self.cols {
                self[(r, k)] = self[(r, k)].clone() * &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for k in c..self.cols {
                    if self[(r, k)].is_zero() {
                        continue;
                    }
                    let v = self[(r, k)].clone() * &f;
                    self[(i, k)] = self[(i, k)].clone() - &v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column,
    /// each with a 1 in its free column.
    pub fn kernel(&self) -> Vec<Vec<C>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![C::zero(); self.cols];
            v[free] = C::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl<C> std::ops::Index<(usize, usize)> for DenseMatrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> std::ops::IndexMut<(usize, usize)> for DenseMatrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

/// Coordinates of vectors with respect to a fixed linearly independent family.
///
/// Holds the reduced echelon form of the family together with the
/// transformation that produced it, so that membership and coordinates are
/// one reduction each.
#[derive(Clone, Debug)]
pub struct SpanSolver<C> {
    echelon: Vec<Vec<C>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<C>>,
}

impl<C: Scalar> SpanSolver<C> {
    /// `basis` must be linearly independent; returns `None` otherwise.
    pub fn new(basis: &[Vec<C>]) -> Option<Self> {
        let k = basis.len();
        let n = basis.first().map_or(0, |v| v.len());
        let mut aug: Vec<Vec<C>> = basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut row = v.clone();
                row.extend((0..k).map(|j| if i == j { C::one() } else { C::zero() }));
                row
            })
            .collect();
        let mut m = DenseMatrix::from_rows(std::mem::take(&mut aug));
        if k == 0 {
            return Some(SpanSolver {
                echelon: Vec::new(),
                pivots: Vec::new(),
                transform: Vec::new(),
            });
        }
        let pivots = m.rref();
        let pivots: Vec<usize> = pivots.into_iter().filter(|&p| p < n).collect();
        if pivots.len() != k {
            return None;
        }
        let mut echelon = Vec::with_capacity(k);
        let mut transform = Vec::with_capacity(k);
        for r in 0..k {
            let row = m.row(r);
            echelon.push(row[..n].to_vec());
            transform.push(row[n..].to_vec());
        }
        Some(SpanSolver {
            echelon,
            pivots,
            transform,
        })
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Coefficients `c` with `v = Σ c_i basis_i`, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[C]) -> Option<Vec<C>> {
        let k = self.pivots.len();
        let mut residual = v.to_vec();
        let mut coeffs = vec![C::zero(); k];
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = residual[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, e) in residual.iter_mut().zip(&self.echelon[r]) {
                if !e.is_zero() {
                    *x = x.clone() - &(f.clone() * e);
                }
            }
            for (c, t) in coeffs.iter_mut().zip(&self.transform[r]) {
                if !t.is_zero() {
                    *c = c.clone() + &(f.clone() * t);
                }
            }
        }
        if residual.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn m(rows: &[&[i64]]) -> DenseMatrix<Rational> {
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            for i in 0..3 {
                let s = (0..3).fold(Rational::zero(), |acc, j| {
                    acc + &(a[(i, j)].clone() * &v[j])
                });
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn determinant_with_swaps() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.determinant(), Rational::from_i64(-1));
        let b = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(b.determinant(), Rational::from_i64(18));
    }

    #[test]
    fn span_coordinates() {
        let basis = vec![
            vec![
                Rational::from_i64(1),
                Rational::from_i64(1),
                Rational::from_i64(0),
            ],
            vec![
                Rational::from_i64(0),
                Rational::from_i64(1),
                Rational::from_i64(1),
            ],
        ];
        let s = SpanSolver::new(&basis).unwrap();
        let v = vec![
            Rational::from_i64(2),
            Rational::from_i64(5),
            Rational::from_i64(3),
        ];
        assert_eq!(
            s.coordinates(&v).unwrap(),
            vec![Rational::from_i64(2), Rational::from_i64(3)]
        );
        let w = vec![
            Rational::from_i64(1),
            Rational::from_i64(0),
            Rational::from_i64(0),
        ];
        assert!(s.coordinates(&w).is_none());
        let dependent = vec![basis[0].clone(), basis[0].clone()];
        assert!(SpanSolver::new(&dependent).is_none());
    }
}
