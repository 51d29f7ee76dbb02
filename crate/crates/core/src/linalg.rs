//! Dense Hermitian positive-definite factorization for the small MMSE
//! systems seen by multi-antenna eavesdroppers (a few antennas each).

use num_complex::Complex64;

/// Row-major square Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermitian {
    n: usize,
    data: Vec<Complex64>,
}

impl Hermitian {
    pub fn zeros(n: usize) -> Self {
        Hermitian { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    /// `self += weight · v vᴴ`.
    pub fn add_rank_one(&mut self, weight: f64, v: &[Complex64]) {
        debug_assert_eq!(v.len(), self.n);
        for i in 0..self.n {
            let wi = v[i] * weight;
            for j in 0..self.n {
                self.data[i * self.n + j] += wi * v[j].conj();
            }
        }
    }
}

/// `P A Pᵀ = L Lᴴ` with symmetric diagonal pivoting (largest remaining
/// diagonal first).
#[derive(Debug, Clone)]
pub struct PivotedCholesky {
    n: usize,
    /// Lower factor, row-major; rows and columns in pivot order.
    l: Vec<Complex64>,
    /// `perm[k]` is the original index placed at position `k`.
    perm: Vec<usize>,
    /// Schur-complement diagonal chosen at each step.
    pivots: Vec<f64>,
}

impl PivotedCholesky {
    /// Factor `a`; `None` when a pivot is not strictly positive.
    pub fn new(a: &Hermitian) -> Option<Self> {
        let n = a.n;
        let mut work = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            let (p, &d) = (k..n)
                .map(|i| (i, &work[i * n + i].re))
                .max_by(|x, y| x.1.total_cmp(y.1))
                .expect("non-empty range");
            if !(d > 0.0) {
                return None;
            }
            if p != k {
                perm.swap(p, k);
                for c in 0..n {
                    work.swap(p * n + c, k * n + c);
                }
                for r in 0..n {
                    work.swap(r * n + p, r * n + k);
                }
            }
            pivots.push(d);
            let root = d.sqrt();
            work[k * n + k] = Complex64::new(root, 0.0);
            for i in k + 1..n {
                work[i * n + k] /= root;
            }
            for j in k + 1..n {
                let ljk = work[j * n + k].conj();
                for i in j..n {
                    let lik = work[i * n + k];
                    work[i * n + j] -= lik * ljk;
                }
            }
            for j in k + 1..n {
                work[j * n + j].im = 0.0;
                // keep the trailing block Hermitian for the next pivot scan
                for i in j + 1..n {
                    work[j * n + i] = work[i * n + j].conj();
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                work[i * n + j] = Complex64::new(0.0, 0.0);
            }
        }
        Some(PivotedCholesky { n, l: work, perm, pivots })
    }

    /// Ratio of the largest to the smallest pivot, a cheap lower estimate
    /// of the 2-norm condition number.
    pub fn condition_estimate(&self) -> f64 {
        let max = self.pivots.iter().cloned().fold(0.0, f64::max);
        let min = self.pivots.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    }

    /// `gᴴ A⁻¹ g`.
    pub fn inverse_quadratic_form(&self, g: &[Complex64]) -> f64 {
        let n = self.n;
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| g[p]).collect();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[i * n + k] * y[k];
            }
            y[i] = s / self.l[i * n + i].re;
        }
        y.iter().map(|v| v.norm_sqr()).sum()
    }
}
