//! Linearised Langevin drift `Ȧ = 𝔸A + 𝔹A_in` over the basis
//! (a†, a, b†, b, m†, m, c†, c) and its stability.
//!
//! The optical mode lives in the frame of the drive, the other three in the lab
//! frame. Noise channels, each a (†, non-†) pair:
//! 0 optical port, 1 optical internal, 2 phonon, 3 magnon, 4 microwave port,
//! 5 microwave internal.

use nalgebra::{DMatrix, SMatrix};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ChainParams, Drive};
use crate::C64;

pub type Drift = SMatrix<C64, 8, 8>;
pub type InputMatrix = SMatrix<f64, 8, 12>;

pub const CHANNELS: usize = 6;
/// Mode index (a, b, m, c) = (0..4) owning each noise channel.
pub const CHANNEL_MODE: [usize; CHANNELS] = [0, 0, 1, 2, 3, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub enum Rwa {
    /// Keep the counter-rotating magnon–phonon and magnon–microwave terms.
    Off,
    /// Beam-splitter magnon couplings, full optomechanical coupling.
    #[default]
    Magnon,
    /// Additionally drop the optomechanical beam-splitter part, leaving pure
    /// two-mode squeezing between optics and phonon.
    Resonant,
}

#[derive(Debug, Clone)]
pub struct DriftModel {
    pub a: Drift,
    pub b: InputMatrix,
    /// Per-pair `[[1, 1], [i, −i]]`, mapping (o†, o) to (x, p).
    pub q: Drift,
    /// Largest total linewidth; sets the stability tolerance.
    pub max_linewidth: f64,
}

/// Quadrature transform for `pairs` (†, non-†) pairs.
pub fn quadrature_transform(pairs: usize) -> DMatrix<C64> {
    let mut q = DMatrix::zeros(2 * pairs, 2 * pairs);
    let (one, i) = (C64::new(1.0, 0.0), C64::i());
    for k in 0..pairs {
        q[(2 * k, 2 * k)] = one;
        q[(2 * k, 2 * k + 1)] = one;
        q[(2 * k + 1, 2 * k)] = i;
        q[(2 * k + 1, 2 * k + 1)] = -i;
    }
    q
}

pub fn quadrature_transform_inverse(pairs: usize) -> DMatrix<C64> {
    let mut q = DMatrix::zeros(2 * pairs, 2 * pairs);
    let (h, hi) = (C64::new(0.5, 0.0), C64::new(0.0, 0.5));
    for k in 0..pairs {
        q[(2 * k, 2 * k)] = h;
        q[(2 * k, 2 * k + 1)] = -hi;
        q[(2 * k + 1, 2 * k)] = h;
        q[(2 * k + 1, 2 * k + 1)] = hi;
    }
    q
}

pub fn channel_rates(params: &ChainParams) -> [f64; CHANNELS] {
    let [a, b, m, c] = params.modes;
    [
        a.port_rate,
        a.internal_rate,
        b.internal_rate,
        m.internal_rate,
        c.port_rate,
        c.internal_rate,
    ]
}

pub fn build_drift(params: &ChainParams, rwa: Rwa) -> Result<DriftModel> {
    params.validate()?;
    let g = params.enhanced_coupling()?;
    let [ma, mb, mm, mc] = params.modes;
    let i = C64::i();
    let mut a = Drift::zeros();

    // annihilation rows sit at odd indices
    a[(1, 1)] = C64::new(-0.5 * ma.total_rate(), params.detuning);
    a[(3, 3)] = C64::new(-0.5 * mb.total_rate(), -mb.frequency);
    a[(5, 5)] = C64::new(-0.5 * mm.total_rate(), -mm.frequency);
    a[(7, 7)] = C64::new(-0.5 * mc.total_rate(), -mc.frequency);

    a[(1, 2)] = -i * g;
    a[(3, 0)] = -i * g;
    if rwa != Rwa::Resonant {
        a[(1, 3)] = -i * g;
        a[(3, 1)] = -i * g;
    }

    a[(3, 5)] = -i * params.g_mb;
    a[(5, 3)] = -i * params.g_mb;
    a[(5, 7)] = -i * params.g_mc;
    a[(7, 5)] = -i * params.g_mc;
    if rwa == Rwa::Off {
        a[(3, 4)] = -i * params.g_mb;
        a[(5, 2)] = -i * params.g_mb;
        a[(5, 6)] = -i * params.g_mc;
        a[(7, 4)] = -i * params.g_mc;
    }

    for k in 0..4 {
        let (d, n) = (2 * k, 2 * k + 1);
        for j in 0..4 {
            a[(d, 2 * j)] = a[(n, 2 * j + 1)].conj();
            a[(d, 2 * j + 1)] = a[(n, 2 * j)].conj();
        }
    }

    let mut b = InputMatrix::zeros();
    for (ch, rate) in channel_rates(params).into_iter().enumerate() {
        let k = CHANNEL_MODE[ch];
        b[(2 * k, 2 * ch)] = -rate.sqrt();
        b[(2 * k + 1, 2 * ch + 1)] = -rate.sqrt();
    }

    let q = Drift::from_iterator(quadrature_transform(4).iter().copied());
    let max_linewidth = params
        .modes
        .iter()
        .map(|m| m.total_rate())
        .fold(0.0, f64::max);
    Ok(DriftModel {
        a,
        b,
        q,
        max_linewidth,
    })
}

impl DriftModel {
    /// Drift in the (x, p) basis; real by construction.
    pub fn real_drift(&self) -> SMatrix<f64, 8, 8> {
        let qi = Drift::from_iterator(quadrature_transform_inverse(4).iter().copied());
        (self.q * self.a * qi).map(|z| z.re)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub eigenvalues: Vec<C64>,
    pub stable: bool,
    /// Largest real part, rad/s.
    pub margin: f64,
    pub tolerance: f64,
}

pub(crate) fn real_eigenvalues_of(m: DMatrix<f64>) -> Result<Vec<C64>> {
    let n = m.nrows();
    let norm = m.norm();
    nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000)
        .map(|s| s.complex_eigenvalues().iter().copied().collect())
        .ok_or(Error::EigenFailure { dim: n, norm })
}

pub fn stability(model: &DriftModel) -> Result<StabilityReport> {
    let ar = model.real_drift();
    let eigenvalues = real_eigenvalues_of(DMatrix::from_column_slice(8, 8, ar.as_slice()))?;
    let margin = eigenvalues
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let tolerance = 1e-9 * model.max_linewidth;
    Ok(StabilityReport {
        eigenvalues,
        stable: margin < -tolerance,
        margin,
        tolerance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HybridMode {
    pub frequency: f64,
    pub linewidth: f64,
}

/// Normal modes of the phonon–magnon–microwave subsystem with the optics
/// switched off, ascending in frequency.
pub fn hybrid_mode_frequencies(params: &ChainParams) -> Result<Vec<HybridMode>> {
    let mut p = params.clone();
    p.drive = Drive::Enhancement(0.0);
    let ar = build_drift(&p, Rwa::Magnon)?.real_drift();
    let sub = DMatrix::from_fn(6, 6, |r, c| ar[(r + 2, c + 2)]);
    let mut modes: Vec<HybridMode> = real_eigenvalues_of(sub)?
        .into_iter()
        .filter(|z| z.im < 0.0)
        .map(|z| HybridMode {
            frequency: -z.im,
            linewidth: -2.0 * z.re,
        })
        .collect();
    modes.sort_by(|x, y| x.frequency.total_cmp(&y.frequency));
    Ok(modes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModeLabel;
    use crate::presets;
    use crate::TWO_PI;

    fn decoupled() -> ChainParams {
        let mut p = presets::table1();
        p.g_mb = 0.0;
        p.g_mc = 0.0;
        p.drive = Drive::Enhancement(0.0);
        p
    }

    #[test]
    fn quadrature_transform_inverts() {
        let q = quadrature_transform(6);
        let qi = quadrature_transform_inverse(6);
        assert!((q * qi - DMatrix::<C64>::identity(12, 12)).camax() < 1e-15);
    }

    #[test]
    fn decoupled_spectrum_is_bare() {
        let p = decoupled();
        let rep = stability(&build_drift(&p, Rwa::Magnon).unwrap()).unwrap();
        assert!(rep.stable);
        let min_rate = p
            .modes
            .iter()
            .map(|m| m.total_rate())
            .fold(f64::INFINITY, f64::min);
        assert!((rep.margin + 0.5 * min_rate).abs() < 1e-9 * min_rate);
        for m in p.modes {
            let w = if m.label == ModeLabel::Optical {
                p.detuning
            } else {
                m.frequency
            };
            for s in [1.0, -1.0] {
                let hit = rep.eigenvalues.iter().any(|z| {
                    (z.re + 0.5 * m.total_rate()).abs() < 1e-6 * m.total_rate().max(1.0)
                        && (z.im - s * w).abs() < 1e-6 * w
                });
                assert!(hit, "{m:?}");
            }
        }
    }

    #[test]
    fn paired_rows_and_real_quadrature_drift() {
        let m = build_drift(&presets::table1(), Rwa::Off).unwrap();
        let ar = m.q * m.a * Drift::from_iterator(quadrature_transform_inverse(4).iter().copied());
        assert!(ar.map(|z| z.im.abs()).max() < 1e-6);
        for k in 0..4 {
            for j in 0..8 {
                let partner = j ^ 1;
                assert_eq!(m.a[(2 * k, j)], m.a[(2 * k + 1, partner)].conj());
            }
        }
    }

    #[test]
    fn input_matrix_carries_root_rates() {
        let p = presets::table1();
        let m = build_drift(&p, Rwa::Magnon).unwrap();
        let rates = channel_rates(&p);
        for ch in 0..CHANNELS {
            let k = CHANNEL_MODE[ch];
            assert_eq!(m.b[(2 * k, 2 * ch)], -rates[ch].sqrt());
            assert_eq!(m.b[(2 * k + 1, 2 * ch + 1)], -rates[ch].sqrt());
            assert_eq!(
                m.b.column(2 * ch).iter().filter(|x| **x != 0.0).count(),
                (rates[ch] > 0.0) as usize
            );
        }
    }

    #[test]
    fn eigenvalues_come_in_conjugate_pairs() {
        let rep = stability(&build_drift(&presets::table1(), Rwa::Off).unwrap()).unwrap();
        for z in &rep.eigenvalues {
            assert!(rep
                .eigenvalues
                .iter()
                .any(|w| (w - z.conj()).norm() < 1e-6 * z.norm()));
        }
    }

    #[test]
    fn table1_optimum_is_stable_and_overdrive_is_not() {
        let p = presets::table1();
        assert!(
            stability(&build_drift(&p, Rwa::Magnon).unwrap())
                .unwrap()
                .stable
        );
        let mut q = p.clone();
        let c = crate::model::cooperativities(&p).unwrap();
        q.set_c_ab(3.0 * (1.0 + c.c_mb / (c.c_mc + 1.0))).unwrap();
        assert!(
            !stability(&build_drift(&q, Rwa::Magnon).unwrap())
                .unwrap()
                .stable
        );
    }

    #[test]
    fn rwa_variants_agree_without_magnon_coupling() {
        let mut p = presets::table1();
        p.g_mb = 0.0;
        p.g_mc = 0.0;
        let on = build_drift(&p, Rwa::Magnon).unwrap();
        let off = build_drift(&p, Rwa::Off).unwrap();
        assert_eq!(on.a, off.a);
    }

    #[test]
    fn hybrid_modes_split_by_magnon_microwave_coupling() {
        let mut p = presets::table1();
        p.g_mb = 0.0;
        for l in [ModeLabel::Magnon, ModeLabel::Microwave] {
            *p.mode_mut(l) = crate::model::ModeSpec::new(l, TWO_PI * 10e9, TWO_PI * 1e3, 0.0);
        }
        let modes = hybrid_mode_frequencies(&p).unwrap();
        let w = TWO_PI * 10e9;
        let g = p.g_mc;
        assert_eq!(modes.len(), 3);
        assert!((modes[0].frequency - (w - g)).abs() < 1e-6 * w);
        assert!((modes[1].frequency - w).abs() < 1e-6 * w);
        assert!((modes[2].frequency - (w + g)).abs() < 1e-6 * w);
    }

    #[test]
    fn hybrid_modes_bare_without_coupling() {
        let mut p = decoupled();
        p.mode_mut(ModeLabel::Phonon).frequency = TWO_PI * 9e9;
        p.mode_mut(ModeLabel::Microwave).frequency = TWO_PI * 11e9;
        let modes = hybrid_mode_frequencies(&p).unwrap();
        let want = [(9e9, 1e3), (10e9, 1e6), (11e9, 101e6)];
        for (m, (f, l)) in modes.iter().zip(want) {
            assert!((m.frequency - TWO_PI * f).abs() < 1e-3, "{m:?}");
            assert!((m.linewidth - TWO_PI * l).abs() < 1e-6 * TWO_PI * l.max(1e6));
        }
    }

    /// Roots of det(λ − M) for the 3×3 annihilation block, by Durand–Kerner on
    /// the explicit characteristic cubic.
    fn cubic_roots(m: [[C64; 3]; 3]) -> [C64; 3] {
        let tr = m[0][0] + m[1][1] + m[2][2];
        let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
            + m[1][1] * m[2][2]
            - m[1][2] * m[2][1];
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        let scale = tr.norm().max(1.0);
        let poly = |z: C64| ((z - tr) * z + minors) * z - det;
        let mut r = [
            C64::new(0.4, 0.9) * scale,
            C64::new(0.4, 0.9).powi(2) * scale,
            C64::new(0.4, 0.9).powi(3) * scale,
        ];
        for _ in 0..500 {
            for k in 0..3 {
                let mut den = C64::new(1.0, 0.0);
                for j in 0..3 {
                    if j != k {
                        den *= r[k] - r[j];
                    }
                }
                r[k] -= poly(r[k]) / den;
            }
        }
        r
    }

    #[test]
    fn hybrid_modes_match_characteristic_polynomial_across_magnon_scan() {
        let base = presets::table1();
        for k in 0..41 {
            let mut p = base.clone();
            p.mode_mut(ModeLabel::Magnon).frequency = TWO_PI * (9.5e9 + k as f64 * 25e6);
            let [_, b, m, c] = p.modes;
            let i = C64::i();
            let d = |x: crate::model::ModeSpec| C64::new(-0.5 * x.total_rate(), -x.frequency);
            let blk = [
                [d(b), -i * p.g_mb, C64::new(0.0, 0.0)],
                [-i * p.g_mb, d(m), -i * p.g_mc],
                [C64::new(0.0, 0.0), -i * p.g_mc, d(c)],
            ];
            let mut want: Vec<(f64, f64)> = cubic_roots(blk)
                .iter()
                .map(|z| (-z.im, -2.0 * z.re))
                .collect();
            want.sort_by(|x, y| x.0.total_cmp(&y.0));
            let got = hybrid_mode_frequencies(&p).unwrap();
            for (g, w) in got.iter().zip(&want) {
                assert!((g.frequency - w.0).abs() < 1e-9 * w.0, "{g:?} {w:?}");
                assert!((g.linewidth - w.1).abs() < 1e-5 * p.g_mc, "{g:?} {w:?}");
            }
        }
    }
}
