//! Fixed single-qubit gate matrices in row-major `[[row0], [row1]]` form.

use num_complex::Complex64 as C64;

pub type Matrix2 = [[C64; 2]; 2];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub fn identity() -> Matrix2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn hadamard() -> Matrix2 {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn pauli_x() -> Matrix2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn pauli_y() -> Matrix2 {
    [[ZERO, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), ZERO]]
}

pub fn pauli_z() -> Matrix2 {
    [[ONE, ZERO], [ZERO, -ONE]]
}

/// `exp(-i beta X)`, the per-qubit factor of the transverse-field mixer.
pub fn x_rotation(beta: f64) -> Matrix2 {
    let c = C64::new(beta.cos(), 0.0);
    let s = C64::new(0.0, -beta.sin());
    [[c, s], [s, c]]
}

/// `exp(-i theta/2 Z)`.
pub fn z_rotation(theta: f64) -> Matrix2 {
    [
        [C64::from_polar(1.0, -theta / 2.0), ZERO],
        [ZERO, C64::from_polar(1.0, theta / 2.0)],
    ]
}

pub fn adjoint(u: &Matrix2) -> Matrix2 {
    [
        [u[0][0].conj(), u[1][0].conj()],
        [u[0][1].conj(), u[1][1].conj()],
    ]
}

pub fn multiply(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// Max-entry deviation of `u^† u` from the identity is within `tol`.
pub fn is_unitary(u: &Matrix2, tol: f64) -> bool {
    let p = multiply(&adjoint(u), u);
    let id = identity();
    p.iter()
        .flatten()
        .zip(id.iter().flatten())
        .all(|(x, y)| (x - y).norm() <= tol)
}
