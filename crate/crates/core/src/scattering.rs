//! Input–output scattering and output-mode covariances.
//!
//! Output modes are filtered around a centre frequency ω. Because the optical
//! mode is described in the drive frame while the microwave is in the lab frame,
//! the pair that the blue-detuned drive correlates is the optical mode at −ω and
//! the microwave (and the phonon/magnon baths) at +ω; [`output_covariance`]
//! builds the covariance of exactly that sideband pair. The plain symmetrised
//! spectrum at a single ω, which mixes both optical sidebands, is available as
//! [`spectral_covariance`].

use nalgebra::{DMatrix, Matrix2, Matrix4, SMatrix, SymmetricEigen};
use serde::Serialize;

use crate::dynamics::{
    quadrature_transform, quadrature_transform_inverse, stability, DriftModel, CHANNELS,
};
use crate::error::{Error, Result};
use crate::model::{ChainParams, ModeLabel};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseMatrix {
    /// Bath occupation of each of the six noise channels.
    pub occupations: [f64; CHANNELS],
}

impl NoiseMatrix {
    pub fn vacuum() -> Self {
        NoiseMatrix {
            occupations: [0.0; CHANNELS],
        }
    }

    pub fn from_params(params: &ChainParams) -> Result<Self> {
        let occ = |l| params.occupation(l);
        let (na, nc) = (occ(ModeLabel::Optical)?, occ(ModeLabel::Microwave)?);
        Ok(NoiseMatrix {
            occupations: [
                na,
                na,
                occ(ModeLabel::Phonon)?,
                occ(ModeLabel::Magnon)?,
                nc,
                nc,
            ],
        })
    }

    /// ⟨A_in,i[ν] A_in,j[ν′]⟩ = N_A[i,j] δ(ν+ν′): blocks [[0, n], [n+1, 0]].
    pub fn bare(&self) -> DMatrix<C64> {
        let mut n = DMatrix::zeros(2 * CHANNELS, 2 * CHANNELS);
        for (k, &occ) in self.occupations.iter().enumerate() {
            n[(2 * k, 2 * k + 1)] = C64::new(occ, 0.0);
            n[(2 * k + 1, 2 * k)] = C64::new(occ + 1.0, 0.0);
        }
        n
    }

    /// Quadrature form, blocks [[2n+1, i], [−i, 2n+1]].
    pub fn quadrature(&self) -> DMatrix<C64> {
        let q = quadrature_transform(CHANNELS);
        &q * self.bare() * q.transpose()
    }
}

fn resolvent(model: &DriftModel, omega: f64) -> Result<SMatrix<C64, 8, 8>> {
    let m = SMatrix::<C64, 8, 8>::identity() * C64::new(0.0, omega) + model.a;
    m.lu().try_inverse().ok_or_else(|| {
        let rep = stability(model).ok();
        let nearest = rep
            .and_then(|r| {
                r.eigenvalues.into_iter().min_by(|x, y| {
                    let d = |z: &C64| (z + C64::new(0.0, omega)).norm();
                    d(x).total_cmp(&d(y))
                })
            })
            .unwrap_or_default();
        Error::SingularResolvent {
            omega,
            eig_re: nearest.re,
            eig_im: nearest.im,
        }
    })
}

/// S_A[ω] = 𝔹ᵀ(iω + 𝔸)⁻¹𝔹 + 1 in the bare operator basis, for o(t) ∝ e^{−iωt}.
pub fn scattering_matrix_bare(model: &DriftModel, omega: f64) -> Result<DMatrix<C64>> {
    let b = model.b.map(|x| C64::new(x, 0.0));
    let s = b.transpose() * resolvent(model, omega)? * b + SMatrix::<C64, 12, 12>::identity();
    Ok(DMatrix::from_column_slice(12, 12, s.as_slice()))
}

/// Scattering matrix in the quadrature basis.
pub fn scattering_matrix(model: &DriftModel, omega: f64) -> Result<DMatrix<C64>> {
    Ok(quadrature_transform(CHANNELS)
        * scattering_matrix_bare(model, omega)?
        * quadrature_transform_inverse(CHANNELS))
}

fn check_residue(im: f64, norm: f64) -> Result<()> {
    let limit = 1e-8 * norm.max(f64::MIN_POSITIVE);
    if im > limit {
        return Err(Error::ImaginaryResidue { residue: im, limit });
    }
    Ok(())
}

/// ½(S_R[ω] N_R S_Rᵀ[−ω] + S_R[−ω] N_Rᵀ S_Rᵀ[ω]) over all twelve channels.
pub fn spectral_covariance(
    model: &DriftModel,
    noise: &NoiseMatrix,
    omega: f64,
) -> Result<DMatrix<f64>> {
    let n = noise.quadrature();
    let (sp, sm) = (
        scattering_matrix(model, omega)?,
        scattering_matrix(model, -omega)?,
    );
    let s = (&sp * &n * sm.transpose() + &sm * n.transpose() * sp.transpose()) * C64::new(0.5, 0.0);
    let re = s.map(|z| z.re);
    check_residue(s.map(|z| z.im.abs()).max(), re.norm())?;
    Ok(re)
}

/// Output covariance of the filtered modes (a port, b bath, m bath, c port),
/// 8×8 in (x, p) pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputCovariance {
    pub center_frequency: f64,
    pub sigma: SMatrix<f64, 8, 8>,
}

/// Channel whose output each covariance slot reads, and the sideband its
/// annihilation part is taken at.
const OUTPUT_CHANNEL: [usize; 4] = [0, 2, 3, 4];
const ANNIHILATION_SIGN: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Covariance of the sideband pair at centre ω.
pub fn output_covariance(
    model: &DriftModel,
    noise: &NoiseMatrix,
    omega: f64,
) -> Result<OutputCovariance> {
    let na = noise.bare();
    let (sp, sm) = (
        scattering_matrix_bare(model, omega)?,
        scattering_matrix_bare(model, -omega)?,
    );
    // m_pos[(i, j)] = ⟨A_out,i[ω] A_out,j[−ω]⟩
    let m_pos = &sp * &na * sm.transpose();
    let m_neg = &sm * &na * sp.transpose();

    // operators: (channel row, sideband sign) as [annihilation, creation] per slot
    let mut ops = [(0usize, 0.0f64); 8];
    for k in 0..4 {
        let ch = OUTPUT_CHANNEL[k];
        ops[2 * k] = (2 * ch + 1, ANNIHILATION_SIGN[k]);
        ops[2 * k + 1] = (2 * ch, -ANNIHILATION_SIGN[k]);
    }
    let mut g = SMatrix::<C64, 8, 8>::zeros();
    for (x, &(ix, sx)) in ops.iter().enumerate() {
        for (y, &(iy, sy)) in ops.iter().enumerate() {
            if omega != 0.0 && sx != -sy {
                continue;
            }
            g[(x, y)] = if sx > 0.0 {
                m_pos[(ix, iy)]
            } else {
                m_neg[(ix, iy)]
            };
        }
    }

    let mut t = SMatrix::<C64, 8, 8>::zeros();
    let i = C64::i();
    for k in 0..4 {
        t[(2 * k, 2 * k)] = C64::new(1.0, 0.0);
        t[(2 * k, 2 * k + 1)] = C64::new(1.0, 0.0);
        t[(2 * k + 1, 2 * k)] = -i;
        t[(2 * k + 1, 2 * k + 1)] = i;
    }
    let r = t * g * t.transpose();
    let s = (r + r.transpose()) * C64::new(0.5, 0.0);
    let sigma = s.map(|z| z.re);
    check_residue(s.map(|z| z.im.abs()).max(), sigma.norm())?;
    Ok(OutputCovariance {
        center_frequency: omega,
        sigma,
    })
}

/// Gauss–Hermite nodes and weights for ∫e^{−t²}f(t)dt (Golub–Welsch).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let jac = DMatrix::from_fn(n, n, |i, j| {
        if i.abs_diff(j) == 1 {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            (
                eig.eigenvalues[k],
                std::f64::consts::PI.sqrt() * eig.eigenvectors[(0, k)].powi(2),
            )
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

pub const DEFAULT_QUADRATURE_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilteredCovariance {
    pub cov: OutputCovariance,
    pub bandwidth: f64,
    /// Relative change when the quadrature order is doubled.
    pub doubling_change: f64,
    pub converged: bool,
}

fn filtered_sum(
    model: &DriftModel,
    noise: &NoiseMatrix,
    omega: f64,
    width: f64,
    points: usize,
) -> Result<SMatrix<f64, 8, 8>> {
    let (t, w) = gauss_hermite(points);
    let mut acc = SMatrix::<f64, 8, 8>::zeros();
    for (tk, wk) in t.iter().zip(&w) {
        acc += output_covariance(model, noise, omega + width * tk)?.sigma * *wk;
    }
    Ok(acc / std::f64::consts::PI.sqrt())
}

/// Output covariance seen through a normalised Gaussian filter pair of width
/// `width` (|f|² ∝ e^{−δ²/σ²}).
pub fn filtered_covariance(
    model: &DriftModel,
    noise: &NoiseMatrix,
    omega: f64,
    width: f64,
    points: usize,
) -> Result<FilteredCovariance> {
    if !(width > 0.0) {
        return Err(Error::param("filter.bandwidth", "must be > 0"));
    }
    if points < 16 {
        return Err(Error::param(
            "filter.points",
            "need at least 16 quadrature points",
        ));
    }
    let sigma = filtered_sum(model, noise, omega, width, points)?;
    let fine = filtered_sum(model, noise, omega, width, 2 * points)?;
    let doubling_change = (fine - sigma).norm() / fine.norm();
    let converged = doubling_change <= 1e-6;
    if !converged {
        log::warn!("filter quadrature not converged at width {width:.3e}: relative change {doubling_change:.2e}");
    }
    Ok(FilteredCovariance {
        cov: OutputCovariance {
            center_frequency: omega,
            sigma: 0.5 * (sigma + sigma.transpose()),
        },
        bandwidth: width,
        doubling_change,
        converged,
    })
}

/// Covariance of a selected pair of output modes, σ = [[B, C], [Cᵀ, B′]].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BipartiteCov {
    pub sigma: Matrix4<f64>,
}

impl BipartiteCov {
    pub fn new(sigma: Matrix4<f64>) -> Self {
        BipartiteCov {
            sigma: 0.5 * (sigma + sigma.transpose()),
        }
    }

    pub fn from_blocks(b: Matrix2<f64>, bp: Matrix2<f64>, c: Matrix2<f64>) -> Self {
        let mut s = Matrix4::zeros();
        s.fixed_view_mut::<2, 2>(0, 0).copy_from(&b);
        s.fixed_view_mut::<2, 2>(2, 2).copy_from(&bp);
        s.fixed_view_mut::<2, 2>(0, 2).copy_from(&c);
        s.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
        BipartiteCov { sigma: s }
    }

    pub fn b(&self) -> Matrix2<f64> {
        self.sigma.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn b_prime(&self) -> Matrix2<f64> {
        self.sigma.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn c(&self) -> Matrix2<f64> {
        self.sigma.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn swapped(&self) -> Self {
        BipartiteCov::from_blocks(self.b_prime(), self.b(), self.c().transpose())
    }

    /// The ten independent entries, row-major upper triangle.
    pub fn upper_triangle(&self) -> [f64; 10] {
        let mut out = [0.0; 10];
        let mut k = 0;
        for i in 0..4 {
            for j in i..4 {
                out[k] = self.sigma[(i, j)];
                k += 1;
            }
        }
        out
    }
}

pub fn reduce_bipartite(
    cov: &OutputCovariance,
    pair: (ModeLabel, ModeLabel),
) -> Result<BipartiteCov> {
    for l in [pair.0, pair.1] {
        if !l.has_port() {
            return Err(Error::InvalidSelection(l.key().into()));
        }
    }
    if pair.0 == pair.1 {
        return Err(Error::InvalidSelection(format!("{}{}", pair.0, pair.1)));
    }
    let idx = [
        2 * pair.0.index(),
        2 * pair.0.index() + 1,
        2 * pair.1.index(),
        2 * pair.1.index() + 1,
    ];
    Ok(BipartiteCov::new(Matrix4::from_fn(|r, c| {
        cov.sigma[(idx[r], idx[c])]
    })))
}

/// Optical–microwave block of the output covariance.
pub fn optical_microwave(cov: &OutputCovariance) -> BipartiteCov {
    reduce_bipartite(cov, (ModeLabel::Optical, ModeLabel::Microwave))
        .expect("both modes have ports")
}
