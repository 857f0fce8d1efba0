//! Dense determinants at desk scale.

use crate::scalar::Scalar;

/// Square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    /// Gaussian elimination with largest-magnitude pivoting. Exact for rationals.
    pub fn det(&self) -> S {
        let n = self.n;
        if n == 0 {
            return S::one();
        }
        let mut a = self.data.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&p, &q| {
                    a[p * n + col]
                        .abs()
                        .partial_cmp(&a[q * n + col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty range");
            if a[pivot * n + col].is_zero() {
                return S::zero();
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = det * p.clone();
            for row in col + 1..n {
                let factor = a[row * n + col].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j].clone();
                    a[row * n + j] = a[row * n + j].clone() - factor.clone() * v;
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    /// Leibniz expansion, the independent check.
    fn leibniz(m: &Matrix<Rational>) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.size();
        let mut total = ratio(0, 1);
        for p in perms(n) {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = ratio(1, 1);
            for (i, &pi) in p.iter().enumerate() {
                term *= m.get(i, pi).clone();
            }
            if inversions % 2 == 1 {
                term = -term;
            }
            total += term;
        }
        total
    }

    #[test]
    fn matches_leibniz() {
        let m = Matrix::from_fn(4, |i, j| ratio(((i * 7 + j * 3) % 5) as i64 - 2, (j + 1) as i64));
        assert_eq!(m.det(), leibniz(&m));
        let singular = Matrix::from_fn(3, |i, j| ratio((i + j) as i64, 1));
        assert_eq!(singular.det(), ratio(0, 1));
    }

    #[test]
    fn float_det() {
        let m = Matrix::from_rows(vec![vec![0.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(m.det(), -6.0);
    }
}
