//! Small dense Gaussian elimination routines used by the eigenspace and
//! certificate code.

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// `A x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// A nonzero vector of the kernel, or `None` if the columns are
    /// independent at the given relative pivot threshold.
    ///
    /// Elimination uses complete pivoting. Once every remaining entry is at
    /// most `pivot_tol` times the largest entry of the matrix, the remaining
    /// columns are free; the vector returned sets the lowest-indexed free
    /// column to 1 and the other free columns to 0.
    pub fn first_kernel_vector(&self, pivot_tol: f64) -> Option<Vec<f64>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..cols).collect();
        let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return (cols > 0).then(|| unit(cols, 0));
        }
        for k in 0..cols {
            let mut best = (k, k, 0.0f64);
            for i in k..rows {
                for (j, v) in a[i * cols + k..(i + 1) * cols].iter().enumerate() {
                    if v.abs() > best.2 {
                        best = (i, k + j, v.abs());
                    }
                }
            }
            let (p, q, magnitude) = best;
            if magnitude <= pivot_tol * scale {
                return Some(back_substitute(&a, cols, k, &perm));
            }
            if p != k {
                for j in 0..cols {
                    a.swap(p * cols + j, k * cols + j);
                }
            }
            if q != k {
                for i in 0..rows {
                    a.swap(i * cols + q, i * cols + k);
                }
                perm.swap(q, k);
            }
            let head = a[k * cols + k];
            for i in k + 1..rows {
                let f = a[i * cols + k] / head;
                if f == 0.0 {
                    continue;
                }
                a[i * cols + k] = 0.0;
                for j in k + 1..cols {
                    a[i * cols + j] -= f * a[k * cols + j];
                }
            }
        }
        None
    }
}

fn unit(len: usize, at: usize) -> Vec<f64> {
    let mut x = vec![0.0; len];
    x[at] = 1.0;
    x
}

/// Kernel vector once `rank` pivots sit on the diagonal of the echelon form
/// in `a`, whose columns are the original ones permuted by `perm`.
fn back_substitute(a: &[f64], cols: usize, rank: usize, perm: &[usize]) -> Vec<f64> {
    let free = (rank..cols)
        .min_by_key(|&j| perm[j])
        .expect("a free column");
    let mut y = vec![0.0; cols];
    y[free] = 1.0;
    for k in (0..rank).rev() {
        let s: f64 = (k + 1..cols).map(|j| a[k * cols + j] * y[j]).sum();
        y[k] = -s / a[k * cols + k];
    }
    let mut x = vec![0.0; cols];
    for (j, &orig) in perm.iter().enumerate() {
        x[orig] = y[j];
    }
    x
}

/// Greedy selection of linearly independent vectors, kept in reduced
/// echelon-like form.
#[derive(Debug, Clone)]
pub struct IndependentSet {
    pivot_tol: f64,
    reduced: Vec<(usize, Vec<f64>)>,
}

impl IndependentSet {
    pub fn new(pivot_tol: f64) -> Self {
        Self {
            pivot_tol,
            reduced: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced.is_empty()
    }

    /// Adds `v` if it is independent of the vectors already accepted.
    pub fn insert(&mut self, v: &[f64]) -> bool {
        let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return false;
        }
        let mut w = v.to_vec();
        for (p, row) in &self.reduced {
            let f = w[*p];
            if f != 0.0 {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi -= f * ri;
                }
            }
        }
        let (p, best) = w.iter().enumerate().fold((0, 0.0f64), |(bi, bv), (i, x)| {
            if x.abs() > bv {
                (i, x.abs())
            } else {
                (bi, bv)
            }
        });
        if best <= self.pivot_tol * scale {
            return false;
        }
        let head = w[p];
        for wi in &mut w {
            *wi /= head;
        }
        self.reduced.push((p, w));
        true
    }
}

/// Numerical rank of a family of vectors.
pub fn rank<'a>(vectors: impl IntoIterator<Item = &'a [f64]>, pivot_tol: f64) -> usize {
    let mut set = IndependentSet::new(pivot_tol);
    for v in vectors {
        set.insert(v);
    }
    set.len()
}
