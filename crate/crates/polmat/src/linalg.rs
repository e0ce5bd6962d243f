//! Small fixed-size complex matrix helpers.

use num_complex::Complex64;

pub(crate) type CMat3 = [[Complex64; 3]; 3];
pub(crate) type CMat4 = [[Complex64; 4]; 4];

/// Conjugate transpose of a 4x4 complex matrix.
pub(crate) fn adjoint4(a: &CMat4) -> CMat4 {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.conj();
        }
    }
    out
}

/// Product of two 4x4 complex matrices.
pub(crate) fn mul4(a: &CMat4, b: &CMat4) -> CMat4 {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k] * bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Eigenvalues of a Hermitian 3x3 matrix, ascending.
///
/// Cyclic Jacobi sweeps with complex rotations; each rotation annihilates
/// one off-diagonal pair, and the off-diagonal mass decreases monotonically.
/// Convergence to machine precision takes a handful of sweeps at this size.
pub(crate) fn hermitian_eigenvalues3(m: &CMat3) -> [f64; 3] {
    let mut a = *m;
    // Work on the exactly Hermitian average so roundoff in the input cannot
    // leave a spurious imaginary diagonal.
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let avg = 0.5 * (a[i][j] + a[j][i].conj());
        a[i][j] = avg;
        a[j][i] = avg.conj();
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Complex64::new(row[i].re, 0.0);
    }

    let scale: f64 = a
        .iter()
        .flatten()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let off: f64 = (a[0][1].norm_sqr() + a[0][2].norm_sqr() + a[1][2].norm_sqr()).sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a[p][q];
            let r = apq.norm();
            if r <= 1e-18 * scale {
                continue;
            }
            let phase = apq / r;
            let app = a[p][p].re;
            let aqq = a[q][q].re;
            let tau = (app - aqq) / (2.0 * r);
            // Smaller root of t^2 + 2 tau t - 1 = 0.
            let t = if tau >= 0.0 {
                1.0 / (tau + (1.0 + tau * tau).sqrt())
            } else {
                1.0 / (tau - (1.0 + tau * tau).sqrt())
            };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;

            // A <- G^H A G with G[p][p] = c, G[p][q] = -s e^{i arg},
            // G[q][p] = s e^{-i arg}, G[q][q] = c.
            let mut next = a;
            for i in 0..3 {
                let aip = a[i][p];
                let aiq = a[i][q];
                next[i][p] = c * aip + s * phase.conj() * aiq;
                next[i][q] = c * aiq - s * phase * aip;
            }
            let mut fin = next;
            for j in 0..3 {
                let apj = next[p][j];
                let aqj = next[q][j];
                fin[p][j] = c * apj + s * phase * aqj;
                fin[q][j] = c * aqj - s * phase.conj() * apj;
            }
            fin[p][q] = Complex64::new(0.0, 0.0);
            fin[q][p] = Complex64::new(0.0, 0.0);
            fin[p][p] = Complex64::new(fin[p][p].re, 0.0);
            fin[q][q] = Complex64::new(fin[q][q].re, 0.0);
            a = fin;
        }
    }

    let mut eig = [a[0][0].re, a[1][1].re, a[2][2].re];
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    eig
}
