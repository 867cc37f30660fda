//! Dense LU factorization with partial pivoting, plus the product-form eta
//! updates the simplex applies between refactorizations.

use gtep_milp::Scalar;

/// LU factors of a square basis matrix, `P A = L U` with unit-diagonal `L`
/// stored below the diagonal.
pub(crate) struct DenseLu<T> {
    m: usize,
    a: Vec<T>,
    piv: Vec<usize>,
}

impl<T: Scalar> DenseLu<T> {
    /// Factor the matrix given in row-major order. Returns `None` when a
    /// pivot column is numerically zero (singular basis).
    pub fn factor(m: usize, mut a: Vec<T>, singular_tol: T) -> Option<Self> {
        debug_assert_eq!(a.len(), m * m);
        let mut piv = vec![0usize; m];
        for k in 0..m {
            let mut p = k;
            let mut best = a[k * m + k].abs();
            for i in (k + 1)..m {
                let v = a[i * m + k].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= singular_tol {
                return None;
            }
            piv[k] = p;
            if p != k {
                for j in 0..m {
                    a.swap(k * m + j, p * m + j);
                }
            }
            let akk = a[k * m + k];
            for i in (k + 1)..m {
                let l = a[i * m + k] / akk;
                a[i * m + k] = l;
                if l != T::zero() {
                    let (head, tail) = a.split_at_mut(i * m);
                    let row_k = &head[k * m + k + 1..k * m + m];
                    let row_i = &mut tail[k + 1..m];
                    for (vi, vk) in row_i.iter_mut().zip(row_k) {
                        *vi = *vi - l * *vk;
                    }
                }
            }
        }
        Some(Self { m, a, piv })
    }

    /// Solve `A x = v` in place.
    pub fn solve(&self, v: &mut [T]) {
        let m = self.m;
        for k in 0..m {
            v.swap(k, self.piv[k]);
        }
        for i in 1..m {
            let mut acc = v[i];
            let row = &self.a[i * m..i * m + i];
            for (j, &l) in row.iter().enumerate() {
                acc = acc - l * v[j];
            }
            v[i] = acc;
        }
        for i in (0..m).rev() {
            let mut acc = v[i];
            let row = &self.a[i * m + i + 1..i * m + m];
            for (j, &u) in row.iter().enumerate() {
                acc = acc - u * v[i + 1 + j];
            }
            v[i] = acc / self.a[i * m + i];
        }
    }

    /// Solve `Aᵀ y = v` in place.
    pub fn solve_t(&self, v: &mut [T]) {
        let m = self.m;
        // Uᵀ z = v (forward)
        for i in 0..m {
            let mut acc = v[i];
            for j in 0..i {
                acc = acc - self.a[j * m + i] * v[j];
            }
            v[i] = acc / self.a[i * m + i];
        }
        // Lᵀ u = z (backward, unit diagonal)
        for i in (0..m).rev() {
            let mut acc = v[i];
            for j in (i + 1)..m {
                acc = acc - self.a[j * m + i] * v[j];
            }
            v[i] = acc;
        }
        for k in (0..m).rev() {
            v.swap(k, self.piv[k]);
        }
    }
}

/// Product-form update: after column `q` replaces basis position `r`,
/// `B_new⁻¹ = E · B_old⁻¹`, with `E` defined by the pivot column
/// `w = B_old⁻¹ a_q`.
pub(crate) struct Eta<T> {
    pub r: usize,
    pub coef: Vec<T>,
}

impl<T: Scalar> Eta<T> {
    pub fn from_pivot_column(w: &[T], r: usize) -> Self {
        let wr = w[r];
        let mut coef: Vec<T> = w.iter().map(|&wi| -wi / wr).collect();
        coef[r] = T::one() / wr;
        Self { r, coef }
    }

    /// x ← E x
    pub fn apply(&self, x: &mut [T]) {
        let t = x[self.r];
        if t == T::zero() {
            return;
        }
        for (xi, &ei) in x.iter_mut().zip(&self.coef) {
            *xi = *xi + ei * t;
        }
        x[self.r] = self.coef[self.r] * t;
    }

    /// x ← Eᵀ x
    pub fn apply_transposed(&self, x: &mut [T]) {
        let mut acc = T::zero();
        for (&xi, &ei) in x.iter().zip(&self.coef) {
            acc = acc + ei * xi;
        }
        x[self.r] = acc;
    }
}
