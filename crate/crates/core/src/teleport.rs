//! Continuous-variable teleportation with a two-mode Gaussian resource.
//!
//! Mode 1 is the input, mode 2 (the first resource mode) is mixed with it and
//! measured, mode 3 (the second resource mode) receives the displacement. With
//! σ_z = diag(1, −1) the unity-gain output quadratures are x₁ − σ_z x₂ + x₃.

use std::f64::consts::PI;

use nalgebra::{Cholesky, Matrix2, Matrix4, Vector2, Vector4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{build_drift, stability, Rwa};
use crate::entanglement::{log_negativity, NegativityResult};
use crate::error::{Error, Result};
use crate::gaussian::{
    direct_sum, min_symplectic_eigenvalue, rotation, two_mode_squeezed, PHYSICAL_TOL,
};
use crate::model::ChainParams;
use crate::scattering::{
    filtered_covariance, optical_microwave, output_covariance, BipartiteCov, NoiseMatrix,
};

fn sigma_z() -> Matrix2<f64> {
    Matrix2::new(1.0, 0.0, 0.0, -1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InputState {
    pub sigma0: Matrix2<f64>,
    pub x0: Vector2<f64>,
}

impl InputState {
    pub fn coherent(x0: Vector2<f64>) -> Self {
        InputState {
            sigma0: Matrix2::identity(),
            x0,
        }
    }

    pub fn vacuum() -> Self {
        Self::coherent(Vector2::zeros())
    }

    /// σ₀ = diag(e^{2r}, e^{−2r}).
    pub fn squeezed(r: f64, x0: Vector2<f64>) -> Self {
        InputState {
            sigma0: Matrix2::new((2.0 * r).exp(), 0.0, 0.0, (-2.0 * r).exp()),
            x0,
        }
    }

    fn validate(&self) -> Result<()> {
        let s = &self.sigma0;
        if (s[(0, 1)] - s[(1, 0)]).abs() > 1e-12 * s.amax()
            || !(s[(0, 0)] > 0.0)
            || !(s.determinant() >= 1.0 - 2.0 * PHYSICAL_TOL)
        {
            return Err(Error::InvalidState(
                "input covariance is not a physical single-mode state".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TeleportResult {
    pub sigma_out: Matrix2<f64>,
    /// Output mean is `u · x0`.
    pub u: Matrix2<f64>,
    pub fidelity: f64,
}

fn block(m: &Matrix4<f64>, r: usize, c: usize) -> Matrix2<f64> {
    m.fixed_view::<2, 2>(2 * r, 2 * c).into_owned()
}

fn check_resource(resource: &BipartiteCov) -> Result<()> {
    let nu = min_symplectic_eigenvalue(&crate::gaussian::to_dynamic4(&resource.sigma))?;
    if nu < 1.0 - PHYSICAL_TOL {
        return Err(Error::InvalidState(format!(
            "resource symplectic eigenvalue {nu:.6} < 1"
        )));
    }
    Ok(())
}

/// Unity-gain output state and fidelity.
///
/// The output covariance is the direct quadrature combination; the Gaussian
/// integral over measurement outcomes ([`teleport_output_kernel`]) reduces to
/// the same matrix with unit gain, but its block inversions lose roughly
/// log₁₀ cond(σ) digits, which is catastrophic for hot, strongly correlated
/// resources.
pub fn teleport_output(resource: &BipartiteCov, input: &InputState) -> Result<TeleportResult> {
    input.validate()?;
    check_resource(resource)?;
    let sigma_out = output_covariance_direct(resource, &input.sigma0);
    let fidelity = gaussian_fidelity(&input.sigma0, &sigma_out, &Vector2::zeros())?;
    Ok(TeleportResult {
        sigma_out,
        u: Matrix2::identity(),
        fidelity,
    })
}

/// Output state obtained by integrating the Wigner functions over the
/// measurement outcomes in closed form.
///
/// With σ₂₃⁻¹ = [[𝔸₂, 𝔸₂₃], [𝔸₃₂, 𝔸₃]] and P₀ = σ₀⁻¹ the Gaussian integral is
/// governed by Q = [[𝔸₂ + σ_z P₀ σ_z, σ_z P₀ − 𝔸₂₃], [P₀ σ_z − 𝔸₃₂, 𝔸₃ + P₀]]
/// with inverse blocks 𝔹; the output Wigner function is then
/// ∝ exp(−½ yᵀ𝐀y + ½ x₀ᵀ𝐁y − ½ x₀ᵀ𝐂x₀).
pub fn teleport_output_kernel(
    resource: &BipartiteCov,
    input: &InputState,
) -> Result<TeleportResult> {
    input.validate()?;
    check_resource(resource)?;
    let inv = resource
        .sigma
        .try_inverse()
        .ok_or_else(|| Error::DegenerateResource("resource covariance is singular".into()))?;
    let (a2, a23, a32, a3) = (
        block(&inv, 0, 0),
        block(&inv, 0, 1),
        block(&inv, 1, 0),
        block(&inv, 1, 1),
    );
    let p0 = input.sigma0.try_inverse().expect("validated input");
    let sz = sigma_z();

    let mut q = Matrix4::zeros();
    q.fixed_view_mut::<2, 2>(0, 0)
        .copy_from(&(a2 + sz * p0 * sz));
    q.fixed_view_mut::<2, 2>(0, 2).copy_from(&(sz * p0 - a23));
    q.fixed_view_mut::<2, 2>(2, 0).copy_from(&(p0 * sz - a32));
    q.fixed_view_mut::<2, 2>(2, 2).copy_from(&(a3 + p0));
    let qi = q
        .try_inverse()
        .ok_or_else(|| Error::DegenerateResource("measurement kernel is singular".into()))?;
    let (b2, b23, b32, b3) = (
        block(&qi, 0, 0),
        block(&qi, 0, 1),
        block(&qi, 1, 0),
        block(&qi, 1, 1),
    );

    let big_a = a3 - (a32 * b2 * a23 - a32 * b23 * a3 - a3 * b32 * a23 + a3 * b3 * a3);
    let big_b = -2.0 * p0 * (-sz * b2 * a23 - b32 * a23 + sz * b23 * a3 + b3 * a3);

    let sigma_out = big_a
        .try_inverse()
        .ok_or_else(|| Error::DegenerateResource("output precision matrix is singular".into()))?;
    let b_inv = big_b
        .try_inverse()
        .ok_or_else(|| Error::DegenerateResource("displacement map is singular".into()))?;
    let u = -2.0 * big_a * b_inv;
    let sigma_out = 0.5 * (sigma_out + sigma_out.transpose());
    let offset = u * input.x0 - input.x0;
    let fidelity = gaussian_fidelity(&input.sigma0, &sigma_out, &offset)?;
    Ok(TeleportResult {
        sigma_out,
        u,
        fidelity,
    })
}

/// Output covariance from the quadrature combination x₁ − σ_z x₂ + x₃.
pub fn output_covariance_direct(resource: &BipartiteCov, sigma0: &Matrix2<f64>) -> Matrix2<f64> {
    let sz = sigma_z();
    let (b, bp, c) = (resource.b(), resource.b_prime(), resource.c());
    sigma0 + bp + sz * b * sz - sz * c - c.transpose() * sz
}

/// Overlap 4π∫W₀W_out of two Gaussian Wigner functions whose means differ by
/// `offset`.
pub fn gaussian_fidelity(
    sigma0: &Matrix2<f64>,
    sigma_out: &Matrix2<f64>,
    offset: &Vector2<f64>,
) -> Result<f64> {
    let sum = sigma0 + sigma_out;
    let det = sum.determinant();
    let inv = sum
        .try_inverse()
        .filter(|_| det > 0.0)
        .ok_or_else(|| Error::InvalidState("σ₀ + σ_out is singular".into()))?;
    Ok(2.0 / det.sqrt() * (-0.5 * offset.dot(&(inv * offset))).exp())
}

/// 2/√(det σ₀ det σ_out det(σ₀+σ_out)); equals [`gaussian_fidelity`] only when
/// both states are pure.
pub fn fidelity_determinant_form(sigma0: &Matrix2<f64>, sigma_out: &Matrix2<f64>) -> f64 {
    2.0 / (sigma0.determinant() * sigma_out.determinant() * (sigma0 + sigma_out).determinant())
        .sqrt()
}

fn wigner(sigma_inv: &Matrix2<f64>, norm: f64, x: f64, p: f64) -> f64 {
    let v = Vector2::new(x, p);
    norm * (-0.5 * v.dot(&(sigma_inv * v))).exp()
}

/// Trapezoidal 4π∫W₀W_out over [−L, L]² with `points` nodes per axis.
pub fn wigner_overlap_grid(
    sigma0: &Matrix2<f64>,
    sigma_out: &Matrix2<f64>,
    offset: &Vector2<f64>,
    half_width: f64,
    points: usize,
) -> Result<f64> {
    let inv0 = sigma0
        .try_inverse()
        .ok_or_else(|| Error::InvalidState("σ₀ singular".into()))?;
    let inv1 = sigma_out
        .try_inverse()
        .ok_or_else(|| Error::InvalidState("σ_out singular".into()))?;
    let n0 = 1.0 / (2.0 * PI * sigma0.determinant().sqrt());
    let n1 = 1.0 / (2.0 * PI * sigma_out.determinant().sqrt());
    let h = 2.0 * half_width / (points - 1) as f64;
    let weight = |k: usize| if k == 0 || k == points - 1 { 0.5 } else { 1.0 };
    let mut acc = 0.0;
    for i in 0..points {
        let x = -half_width + h * i as f64;
        let mut row = 0.0;
        for j in 0..points {
            let p = -half_width + h * j as f64;
            row += weight(j)
                * wigner(&inv0, n0, x, p)
                * wigner(&inv1, n1, x - offset[0], p - offset[1]);
        }
        acc += weight(i) * row;
    }
    Ok(4.0 * PI * acc * h * h)
}

pub const ORACLE_HALF_WIDTH: f64 = 12.0;
pub const ORACLE_POINTS: usize = 601;

/// Monte Carlo estimate of the full protocol: sample the input and resource,
/// form the output quadratures and average the input Wigner function over them.
/// Returns (estimate, standard error).
pub fn monte_carlo_fidelity(
    resource: &BipartiteCov,
    input: &InputState,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let l0 = Cholesky::new(input.sigma0)
        .ok_or_else(|| Error::InvalidState("σ₀ not positive".into()))?
        .l();
    let lr = Cholesky::new(resource.sigma)
        .ok_or_else(|| Error::InvalidState("resource not positive".into()))?
        .l();
    let inv0 = input.sigma0.try_inverse().expect("positive");
    let n0 = 1.0 / (2.0 * PI * input.sigma0.determinant().sqrt());
    let sz = sigma_z();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..samples {
        let x1 = input.x0 + l0 * Vector2::new(draw(), draw());
        let r = lr * Vector4::new(draw(), draw(), draw(), draw());
        let y = x1 - sz * Vector2::new(r[0], r[1]) + Vector2::new(r[2], r[3]);
        let d = y - input.x0;
        let f = 4.0 * PI * wigner(&inv0, n0, d[0], d[1]);
        sum += f;
        sq += f * f;
    }
    let n = samples as f64;
    let mean = sum / n;
    Ok((mean, ((sq / n - mean * mean).max(0.0) / n).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub r_in: f64,
    pub e_n: f64,
    pub r_resource: f64,
    pub f_closed_form: f64,
    pub f_oracle: f64,
}

/// Fidelity of two-mode-squeezed resources of negativity E_N (r = E_N/2) for
/// squeezed inputs, closed form alongside the grid overlap.
pub fn fidelity_vs_negativity_benchmark(r_in: &[f64], e_n: &[f64]) -> Result<Vec<BenchmarkRow>> {
    let jobs: Vec<(f64, f64)> = r_in
        .iter()
        .flat_map(|&r| e_n.iter().map(move |&e| (r, e)))
        .collect();
    jobs.par_iter()
        .map(|&(r, e)| {
            let input = InputState::squeezed(r, Vector2::zeros());
            let resource = BipartiteCov::new(two_mode_squeezed(0.5 * e));
            let out = teleport_output(&resource, &input)?;
            let direct = output_covariance_direct(&resource, &input.sigma0);
            let f_oracle = wigner_overlap_grid(
                &input.sigma0,
                &direct,
                &Vector2::zeros(),
                ORACLE_HALF_WIDTH,
                ORACLE_POINTS,
            )?;
            Ok(BenchmarkRow {
                r_in: r,
                e_n: e,
                r_resource: 0.5 * e,
                f_closed_form: out.fidelity,
                f_oracle,
            })
        })
        .collect()
}

/// Rotate the second resource mode.
pub fn rotate_receiver(resource: &BipartiteCov, theta: f64) -> BipartiteCov {
    let s = direct_sum(&Matrix2::identity(), &rotation(theta));
    BipartiteCov::new(s * resource.sigma * s.transpose())
}

/// Receiver phase maximising the fidelity. Candidates are a 720-point scan
/// plus the phase that best aligns the cross block with σ_z (exact when the
/// local blocks are phase-insensitive, where the peak can be far narrower than
/// the scan step); golden-section refinement around the best candidate.
pub fn best_receiver_phase(
    resource: &BipartiteCov,
    input: &InputState,
) -> Result<(f64, TeleportResult)> {
    let eval = |t: f64| teleport_output(&rotate_receiver(resource, t), input);
    let n = 720;
    let step = std::f64::consts::TAU / n as f64;
    let m = sigma_z() * resource.c();
    let aligned = (m[(1, 0)] - m[(0, 1)])
        .atan2(m[(0, 0)] + m[(1, 1)])
        .rem_euclid(std::f64::consts::TAU);
    let mut best = (aligned, eval(aligned)?);
    for k in 0..n {
        let t = k as f64 * step;
        let r = eval(t)?;
        if r.fidelity > best.1.fidelity {
            best = (t, r);
        }
    }
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (best.0 - step, best.0 + step);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (eval(x1)?.fidelity, eval(x2)?.fidelity);
    for _ in 0..80 {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = eval(x1)?.fidelity;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = eval(x2)?.fidelity;
        }
    }
    let t = 0.5 * (lo + hi);
    let r = eval(t)?;
    Ok(if r.fidelity >= best.1.fidelity {
        (t, r)
    } else {
        best
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainTeleport {
    pub result: TeleportResult,
    /// Local phase applied to the microwave mode before the protocol.
    pub receiver_phase: f64,
    pub negativity: NegativityResult,
    pub resource: BipartiteCov,
    /// False when the filter quadrature did not converge.
    pub converged: bool,
}

/// Optical–microwave output state of the chain at centre `omega`, optionally
/// through a Gaussian filter of width `filter_width`, used as the resource.
pub fn chain_teleport_fidelity(
    params: &ChainParams,
    input: &InputState,
    omega: f64,
    filter_width: Option<f64>,
) -> Result<ChainTeleport> {
    let model = build_drift(params, Rwa::Magnon)?;
    let rep = stability(&model)?;
    if !rep.stable {
        return Err(Error::Unstable { margin: rep.margin });
    }
    let noise = NoiseMatrix::from_params(params)?;
    let (cov, converged) = match filter_width {
        None => (output_covariance(&model, &noise, omega)?, true),
        Some(w) => {
            let f = filtered_covariance(
                &model,
                &noise,
                omega,
                w,
                crate::scattering::DEFAULT_QUADRATURE_POINTS,
            )?;
            (f.cov, f.converged)
        }
    };
    let resource = optical_microwave(&cov);
    let negativity = log_negativity(&resource)?;
    let (receiver_phase, result) = best_receiver_phase(&resource, input)?;
    Ok(ChainTeleport {
        result,
        receiver_phase,
        negativity,
        resource,
        converged,
    })
}
