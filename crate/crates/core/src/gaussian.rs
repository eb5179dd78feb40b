//! Small Gaussian-state toolkit on real covariance matrices in
//! (x₁, p₁, x₂, p₂, …) ordering with vacuum = identity.

use nalgebra::{DMatrix, Matrix2, Matrix4, SymmetricEigen};
use rand::Rng;

use crate::error::{Error, Result};

/// Lower bound on symplectic eigenvalues accepted as physical.
pub const PHYSICAL_TOL: f64 = 1e-8;

pub fn omega(modes: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

fn sqrt_psd(sigma: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = SymmetricEigen::new(sigma.clone());
    if eig.eigenvalues.iter().any(|&l| !(l > 0.0)) {
        return Err(Error::InvalidState(
            "covariance is not positive definite".into(),
        ));
    }
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.transpose())
}

/// Symplectic spectrum in ascending order. With S = σ^{1/2}, the antisymmetric
/// K = SΩS has eigenvalues ±iν, so KᵀK has each ν² twice.
pub fn symplectic_eigenvalues(sigma: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = sigma.nrows();
    if !n.is_multiple_of(2) || sigma.ncols() != n {
        return Err(Error::InvalidState(format!(
            "{n}×{} is not an even square matrix",
            sigma.ncols()
        )));
    }
    let sym = 0.5 * (sigma + sigma.transpose());
    let s = sqrt_psd(&sym)?;
    let k = &s * omega(n / 2) * &s;
    let mut nu2: Vec<f64> = SymmetricEigen::new(k.transpose() * &k)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    nu2.sort_by(|a, b| a.total_cmp(b));
    Ok(nu2
        .chunks(2)
        .map(|p| (0.5 * (p[0] + p[1])).max(0.0).sqrt())
        .collect())
}

pub fn min_symplectic_eigenvalue(sigma: &DMatrix<f64>) -> Result<f64> {
    Ok(symplectic_eigenvalues(sigma)?[0])
}

/// Physical iff symmetric and every symplectic eigenvalue ≥ 1 − tol.
pub fn is_physical(sigma: &DMatrix<f64>, tol: f64) -> bool {
    let asym = (sigma - sigma.transpose()).amax();
    asym <= 1e-12 * sigma.amax().max(1.0)
        && min_symplectic_eigenvalue(sigma)
            .map(|nu| nu >= 1.0 - tol)
            .unwrap_or(false)
}

/// Every reduced single- and two-mode block, plus the full matrix, is physical.
pub fn all_reductions_physical(sigma: &DMatrix<f64>, tol: f64) -> bool {
    let n = sigma.nrows() / 2;
    if !is_physical(sigma, tol) {
        return false;
    }
    for i in 0..n {
        for j in i..n {
            let idx: Vec<usize> = if i == j {
                vec![2 * i, 2 * i + 1]
            } else {
                vec![2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
            };
            let sub = DMatrix::from_fn(idx.len(), idx.len(), |r, c| sigma[(idx[r], idx[c])]);
            if !is_physical(&sub, tol) {
                return false;
            }
        }
    }
    true
}

/// Flip the momentum of the second mode.
pub fn partial_transpose(sigma: &Matrix4<f64>) -> Matrix4<f64> {
    let p = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
    p * sigma * p
}

pub fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Single-mode squeezer, x scaled by e^{−r}.
pub fn squeezer(r: f64) -> Matrix2<f64> {
    Matrix2::new((-r).exp(), 0.0, 0.0, r.exp())
}

pub fn direct_sum(a: &Matrix2<f64>, b: &Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
    m
}

pub fn beam_splitter(theta: f64) -> Matrix4<f64> {
    let (s, c) = theta.sin_cos();
    let i = Matrix2::identity();
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&(i * c));
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&(i * s));
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&(i * -s));
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&(i * c));
    m
}

/// Two-mode squeezed vacuum: B = B′ = cosh 2r·1, C = sinh 2r·σ_z.
pub fn two_mode_squeezed(r: f64) -> Matrix4<f64> {
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, -s, //
        s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    )
}

pub fn two_mode_squeezer(r: f64) -> Matrix4<f64> {
    let (c, s) = (r.cosh(), r.sinh());
    Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, -s, //
        s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    )
}

/// Random two-mode Gaussian state S·diag(ν₁,ν₁,ν₂,ν₂)·Sᵀ with S built from local
/// rotation–squeeze–rotation stages around a beam splitter and a two-mode squeezer.
pub fn random_two_mode_state<R: Rng + ?Sized>(
    rng: &mut R,
    max_squeeze: f64,
    max_excess: f64,
) -> Matrix4<f64> {
    let mut ang = || rng.random_range(0.0..std::f64::consts::TAU);
    let (t1, t2, t3, t4, tb) = (ang(), ang(), ang(), ang(), ang());
    let mut sq = || rng.random_range(-max_squeeze..=max_squeeze);
    let (r1, r2, r3, r4, rt) = (sq(), sq(), sq(), sq(), sq().abs());
    let nu1 = 1.0 + rng.random_range(0.0..=max_excess);
    let nu2 = 1.0 + rng.random_range(0.0..=max_excess);
    let local = |ta, ra, tb, rb| {
        direct_sum(
            &(rotation(ta) * squeezer(ra)),
            &(rotation(tb) * squeezer(rb)),
        )
    };
    let s =
        local(t3, r3, t4, r4) * two_mode_squeezer(rt) * beam_splitter(tb) * local(t1, r1, t2, r2);
    let d = Matrix4::from_diagonal(&nalgebra::Vector4::new(nu1, nu1, nu2, nu2));
    let sigma = s * d * s.transpose();
    0.5 * (sigma + sigma.transpose())
}

pub fn to_dynamic4(m: &Matrix4<f64>) -> DMatrix<f64> {
    DMatrix::from_column_slice(4, 4, m.as_slice())
}
