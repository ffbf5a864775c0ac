use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};

pub const MAX_SWEEPS: usize = 64;

/// Eigenpairs of a Hermitian matrix, ascending.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenDecomposition<const N: usize> {
    pub values: [f64; N],
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: [Vector<N>; N],
    /// `max_k max_i |(H v_k − λ_k v_k)_i|`.
    pub residual: f64,
}

impl<const N: usize> EigenDecomposition<N> {
    /// Index of the eigenvector with the largest `|⟨state|v_k⟩|`.
    pub fn closest_to(&self, state: &Vector<N>) -> usize {
        let mut best = 0;
        let mut best_overlap = -1.0;
        for (k, v) in self.vectors.iter().enumerate() {
            let overlap = linalg::inner(state, v).norm();
            if overlap > best_overlap {
                best = k;
                best_overlap = overlap;
            }
        }
        best
    }
}

/// Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// Each rotation annihilates `a[p][q] = r e^{iθ}` with the unitary
/// `[[c, s e^{iθ}], [−s e^{−iθ}, c]]` embedded in rows/columns `p, q`.
/// Output is deterministic: eigenvalues ascending (stable on ties) and every
/// eigenvector rotated so its first component above `1e-12` is real positive.
pub fn eigh<const N: usize>(h: &Matrix<N>) -> Result<EigenDecomposition<N>> {
    if h.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(
            "matrix has non-finite entries".into(),
        ));
    }
    let scale = linalg::max_norm(h).max(1.0);
    let deviation = linalg::hermitian_deviation(h);
    if deviation >= 1e-12 * scale {
        return Err(Error::NotHermitian { deviation });
    }

    // Symmetrize so that rounding in the input cannot leak into the result.
    let mut a = *h;
    for i in 0..N {
        a[i][i] = a[i][i].re.into();
        for j in i + 1..N {
            let mean = (a[i][j] + a[j][i].conj()) / 2.0;
            a[i][j] = mean;
            a[j][i] = mean.conj();
        }
    }
    let mut v = linalg::identity::<N>();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut a, &mut v, p, q, sweeps > 4);
            }
        }
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));

    let mut values = [0.0; N];
    let mut vectors = [[linalg::ZERO; N]; N];
    for (k, &i) in order.iter().enumerate() {
        values[k] = a[i][i].re;
        let mut column: Vector<N> = std::array::from_fn(|row| v[row][i]);
        canonicalize_phase(&mut column);
        vectors[k] = column;
    }
    let residual = values
        .iter()
        .zip(&vectors)
        .map(|(&value, vector)| linalg::eigen_residual(h, vector, value))
        .fold(0.0, f64::max);

    Ok(EigenDecomposition {
        values,
        vectors,
        residual,
    })
}

fn off_diagonal_norm<const N: usize>(a: &Matrix<N>) -> f64 {
    let mut sum = 0.0;
    for i in 0..N {
        for j in i + 1..N {
            sum += a[i][j].norm_sqr();
        }
    }
    sum.sqrt()
}

fn rotate<const N: usize>(
    a: &mut Matrix<N>,
    v: &mut Matrix<N>,
    p: usize,
    q: usize,
    drop_negligible: bool,
) {
    let apq = a[p][q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[p][p].re;
    let aqq = a[q][q].re;
    // After a few sweeps, entries too small to change either diagonal element
    // are set to zero directly.
    if drop_negligible && app.abs() + 100.0 * r == app.abs() && aqq.abs() + 100.0 * r == aqq.abs() {
        a[p][q] = linalg::ZERO;
        a[q][p] = linalg::ZERO;
        return;
    }

    let phase = apq / r;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        1.0 / (2.0 * theta)
    } else {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let s_phase = phase * s;

    // columns: A ← A U
    for row in a.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * c - xq * s_phase.conj();
        row[q] = xp * s_phase + xq * c;
    }
    // rows: A ← U† A
    for k in 0..N {
        let (xp, xq) = (a[p][k], a[q][k]);
        a[p][k] = xp * c - xq * s_phase;
        a[q][k] = xp * s_phase.conj() + xq * c;
    }
    a[p][p] = (app - t * r).into();
    a[q][q] = (aqq + t * r).into();
    a[p][q] = linalg::ZERO;
    a[q][p] = linalg::ZERO;

    for row in v.iter_mut() {
        let (xp, xq) = (row[p], row[q]);
        row[p] = xp * c - xq * s_phase.conj();
        row[q] = xp * s_phase + xq * c;
    }
}

fn canonicalize_phase<const N: usize>(v: &mut Vector<N>) {
    if let Some(lead) = v.iter().find(|x| x.norm() > 1e-12).copied() {
        let rotation: Complex64 = lead.conj() / lead.norm();
        for x in v.iter_mut() {
            *x *= rotation;
        }
    }
}
