//! Logarithmic negativity (natural log) and Rényi-2 steering of two-mode
//! Gaussian states. Partial transposition flips p of the second mode.

use nalgebra::{Matrix2, Matrix4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{partial_transpose, to_dynamic4};
use crate::model::Cooperativities;
use crate::scattering::BipartiteCov;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NegativityResult {
    pub eta_minus: f64,
    pub e_n: f64,
    /// det B + det B′ − 2 det C.
    pub sigma_tilde: f64,
}

impl NegativityResult {
    fn from_eta(eta_minus: f64, sigma_tilde: f64) -> Self {
        NegativityResult {
            eta_minus,
            e_n: (-eta_minus.ln()).max(0.0),
            sigma_tilde,
        }
    }
}

/// η₋² = ½(Σ̃ − √(Σ̃² − 4 det σ)), evaluated as 2 det σ / (Σ̃ + √…) to avoid
/// cancellation for strongly entangled states.
fn eta_from_invariants(sigma_tilde: f64, det: f64, radical: f64) -> Result<f64> {
    let floor = -1e-12 * sigma_tilde * sigma_tilde;
    if radical < floor || !radical.is_finite() {
        return Err(Error::InvalidState(format!(
            "Σ̃² − 4 det σ = {radical:.3e} is negative"
        )));
    }
    if !(det > 0.0) {
        return Err(Error::InvalidState(format!(
            "det σ = {det:.3e} is not positive"
        )));
    }
    let root = radical.max(0.0).sqrt();
    Ok((2.0 * det / (sigma_tilde + root)).sqrt())
}

pub fn log_negativity(cov: &BipartiteCov) -> Result<NegativityResult> {
    let sigma_tilde =
        cov.b().determinant() + cov.b_prime().determinant() - 2.0 * cov.c().determinant();
    let det = cov.sigma.determinant();
    let eta = eta_from_invariants(sigma_tilde, det, sigma_tilde * sigma_tilde - 4.0 * det)?;
    Ok(NegativityResult::from_eta(eta, sigma_tilde))
}

/// Standard-form covariance [[a1, 0, a4, a3], [0, a1, a3, −a4], [a4, a3, a2, 0], [a3, −a4, 0, a2]].
pub fn general_form(a1: f64, a2: f64, a3: f64, a4: f64) -> BipartiteCov {
    BipartiteCov::new(Matrix4::new(
        a1, 0.0, a4, a3, //
        0.0, a1, a3, -a4, //
        a4, a3, a2, 0.0, //
        a3, -a4, 0.0, a2,
    ))
}

/// Closed form for [`general_form`], where the radical factorises as
/// (a1+a2)²((a1−a2)² + 4(a3²+a4²)).
pub fn log_negativity_general(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<NegativityResult> {
    let r2 = a3 * a3 + a4 * a4;
    let sigma_tilde = a1 * a1 + a2 * a2 + 2.0 * r2;
    let det = (a1 * a2 - r2).powi(2);
    let radical = (a1 + a2).powi(2) * ((a1 - a2).powi(2) + 4.0 * r2);
    let eta = eta_from_invariants(sigma_tilde, det, radical)?;
    Ok(NegativityResult::from_eta(eta, sigma_tilde))
}

/// Reference value: smallest modulus among the eigenvalues ±iν of Ωσ̃, σ̃ the
/// partial transpose, found by a general (non-symmetric) eigensolver.
pub fn log_negativity_oracle(cov: &BipartiteCov) -> Result<NegativityResult> {
    let om = crate::gaussian::omega(2);
    let m = &om * to_dynamic4(&partial_transpose(&cov.sigma));
    let eta = m
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    if !eta.is_finite() {
        return Err(Error::EigenFailure {
            dim: 4,
            norm: m.norm(),
        });
    }
    let st = cov.b().determinant() + cov.b_prime().determinant() - 2.0 * cov.c().determinant();
    Ok(NegativityResult::from_eta(eta, st))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl ClosedForm {
    pub fn covariance(&self) -> BipartiteCov {
        general_form(self.c1, self.c2, self.c3, 0.0)
    }
}

/// Resonant, lossless-port, zero-temperature output covariance
/// diag(c1, c1, c2, c2) with cross block c3·σ_x.
pub fn closed_form_covariance(coops: &Cooperativities) -> Result<ClosedForm> {
    let Cooperativities {
        c_ab: a,
        c_mb: b,
        c_mc: c,
    } = *coops;
    if a < 0.0 || b < 0.0 || c < 0.0 {
        return Err(Error::param("cooperativity", "must be ≥ 0"));
    }
    let s = 1.0 + b + c;
    let gap = s - a * (1.0 + c);
    if !(gap > 0.0) {
        return Err(Error::Unstable { margin: -gap });
    }
    let d = gap * gap;
    let ac = a * (1.0 + c);
    Ok(ClosedForm {
        c1: (ac * ac + 6.0 * ac * s + s * s) / d,
        c2: (ac * ac + s * s - 2.0 * a * (b - 3.0 * b * c + (1.0 + c).powi(2))) / d,
        c3: 4.0 * (a * b * c).sqrt() * (1.0 + a + b + c * (1.0 + a)) / d,
    })
}

/// C_ab at which the closed forms diverge.
pub fn instability_threshold(c_mb: f64, c_mc: f64) -> f64 {
    1.0 + c_mb / (c_mc + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteeringResult {
    pub a_to_c: f64,
    pub c_to_a: f64,
}

fn renyi2(det: f64) -> f64 {
    0.5 * det.ln()
}

pub fn steering(cov: &BipartiteCov) -> Result<SteeringResult> {
    let dets = [
        cov.b().determinant(),
        cov.b_prime().determinant(),
        cov.sigma.determinant(),
    ];
    if dets.iter().any(|d| !(*d > 0.0)) {
        return Err(Error::InvalidState(format!(
            "nonpositive block determinant in {dets:?}"
        )));
    }
    let s = renyi2(dets[2]);
    Ok(SteeringResult {
        a_to_c: (renyi2(dets[0]) - s).max(0.0),
        c_to_a: (renyi2(dets[1]) - s).max(0.0),
    })
}

/// Apply local symplectic maps to each side.
pub fn local_transform(
    cov: &BipartiteCov,
    first: &Matrix2<f64>,
    second: &Matrix2<f64>,
) -> BipartiteCov {
    let s = crate::gaussian::direct_sum(first, second);
    BipartiteCov::new(s * cov.sigma * s.transpose())
}
