//! Fixed-size dense complex matrix helpers.

use num_complex::Complex64;

pub type Vector<const N: usize> = [Complex64; N];
pub type Matrix<const N: usize> = [[Complex64; N]; N];

pub type Vector4 = Vector<4>;
pub type Matrix4 = Matrix<4>;
pub type Matrix2 = Matrix<2>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn zeros<const N: usize>() -> Matrix<N> {
    [[ZERO; N]; N]
}

pub fn identity<const N: usize>() -> Matrix<N> {
    let mut m = zeros::<N>();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn basis_vector<const N: usize>(index: usize) -> Vector<N> {
    let mut v = [ZERO; N];
    v[index] = ONE;
    v
}

/// Conjugate transpose.
pub fn adjoint<const N: usize>(m: &Matrix<N>) -> Matrix<N> {
    let mut out = zeros::<N>();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = m[j][i].conj();
        }
    }
    out
}

pub fn add<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> Matrix<N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn scale<const N: usize>(m: &Matrix<N>, s: Complex64) -> Matrix<N> {
    let mut out = *m;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

pub fn matmul<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> Matrix<N> {
    let mut out = zeros::<N>();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec<const N: usize>(m: &Matrix<N>, v: &Vector<N>) -> Vector<N> {
    let mut out = [ZERO; N];
    for i in 0..N {
        out[i] = m[i].iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

/// `⟨a|b⟩`, conjugate-linear in the first argument.
pub fn inner<const N: usize>(a: &Vector<N>, b: &Vector<N>) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `⟨a|M|b⟩`.
pub fn matrix_element<const N: usize>(a: &Vector<N>, m: &Matrix<N>, b: &Vector<N>) -> Complex64 {
    inner(a, &matvec(m, b))
}

pub fn norm<const N: usize>(v: &Vector<N>) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace<const N: usize>(m: &Matrix<N>) -> Complex64 {
    (0..N).map(|i| m[i][i]).sum()
}

/// Largest entry modulus.
pub fn max_norm<const N: usize>(m: &Matrix<N>) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .map(|x| x.norm())
        .fold(0.0, f64::max)
}

/// `max |M - M†|`.
pub fn hermitian_deviation<const N: usize>(m: &Matrix<N>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..N {
        for j in i..N {
            dev = dev.max((m[i][j] - m[j][i].conj()).norm());
        }
    }
    dev
}

/// `max |M v - λ v|`.
pub fn eigen_residual<const N: usize>(m: &Matrix<N>, v: &Vector<N>, value: f64) -> f64 {
    matvec(m, v)
        .iter()
        .zip(v)
        .map(|(mv, x)| (mv - x * value).norm())
        .fold(0.0, f64::max)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant<const N: usize>(m: &Matrix<N>) -> Complex64 {
    let mut a = *m;
    let mut det = ONE;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap_or(col);
        if a[pivot][col].norm() == 0.0 {
            return ZERO;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            for k in col..N {
                let upper = a[col][k];
                a[row][k] -= factor * upper;
            }
        }
    }
    det
}
