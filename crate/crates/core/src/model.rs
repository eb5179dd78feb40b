use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{HBAR, K_B};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeLabel {
    #[serde(rename = "a")]
    Optical,
    #[serde(rename = "b")]
    Phonon,
    #[serde(rename = "m")]
    Magnon,
    #[serde(rename = "c")]
    Microwave,
}

impl ModeLabel {
    pub const ALL: [ModeLabel; 4] = [
        ModeLabel::Optical,
        ModeLabel::Phonon,
        ModeLabel::Magnon,
        ModeLabel::Microwave,
    ];

    /// Position in the (a, b, m, c) ordering used by every matrix in the crate.
    pub fn index(self) -> usize {
        match self {
            ModeLabel::Optical => 0,
            ModeLabel::Phonon => 1,
            ModeLabel::Magnon => 2,
            ModeLabel::Microwave => 3,
        }
    }

    pub fn key(self) -> &'static str {
        ["a", "b", "m", "c"][self.index()]
    }

    pub fn has_port(self) -> bool {
        matches!(self, ModeLabel::Optical | ModeLabel::Microwave)
    }
}

impl std::fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub label: ModeLabel,
    pub frequency: f64,
    pub internal_rate: f64,
    pub port_rate: f64,
    pub n_th: f64,
}

impl ModeSpec {
    pub fn new(label: ModeLabel, frequency: f64, internal_rate: f64, port_rate: f64) -> Self {
        ModeSpec {
            label,
            frequency,
            internal_rate,
            port_rate,
            n_th: 0.0,
        }
    }

    pub fn total_rate(&self) -> f64 {
        self.internal_rate + self.port_rate
    }

    pub fn efficiency(&self) -> f64 {
        self.port_rate / self.total_rate()
    }

    fn validate(&self) -> Result<()> {
        let k = self.label.key();
        let checks = [
            (self.frequency.is_finite(), "frequency", "must be finite"),
            (
                self.internal_rate >= 0.0 && self.internal_rate.is_finite(),
                "internal_rate",
                "must be ≥ 0",
            ),
            (
                self.port_rate >= 0.0 && self.port_rate.is_finite(),
                "port_rate",
                "must be ≥ 0",
            ),
            (
                self.total_rate() > 0.0,
                "total_rate",
                "internal + port rate must be > 0",
            ),
            (
                self.n_th >= 0.0 && self.n_th.is_finite(),
                "n_th",
                "must be ≥ 0",
            ),
            (
                self.label.has_port() || self.port_rate == 0.0,
                "port_rate",
                "phonon and magnon have no port",
            ),
        ];
        for (ok, field, why) in checks {
            if !ok {
                return Err(Error::param(&format!("modes.{k}.{field}"), why));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Drive {
    /// Pump power in watts.
    Power(f64),
    /// Intracavity field enhancement α = √n̄.
    Enhancement(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    /// Indexed by [`ModeLabel::index`].
    pub modes: [ModeSpec; 4],
    pub g_ab: f64,
    pub g_mb: f64,
    pub g_mc: f64,
    /// Drive minus cavity frequency; positive is blue.
    pub detuning: f64,
    pub drive: Drive,
    /// Kelvin. When set, overrides every per-mode `n_th`.
    pub temperature: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cooperativities {
    pub c_ab: f64,
    pub c_mb: f64,
    pub c_mc: f64,
}

impl ChainParams {
    pub fn mode(&self, label: ModeLabel) -> &ModeSpec {
        &self.modes[label.index()]
    }

    pub fn mode_mut(&mut self, label: ModeLabel) -> &mut ModeSpec {
        &mut self.modes[label.index()]
    }

    pub fn validate(&self) -> Result<()> {
        for (i, m) in self.modes.iter().enumerate() {
            if m.label.index() != i {
                return Err(Error::param(
                    "modes",
                    format!("slot {i} holds mode {}", m.label),
                ));
            }
            m.validate()?;
        }
        for (name, g) in [
            ("g_ab", self.g_ab),
            ("g_mb", self.g_mb),
            ("g_mc", self.g_mc),
        ] {
            if !(g >= 0.0 && g.is_finite()) {
                return Err(Error::param(name, "coupling rates must be ≥ 0"));
            }
        }
        if !self.detuning.is_finite() {
            return Err(Error::param("detuning", "must be finite"));
        }
        match self.drive {
            Drive::Power(p) if !(p >= 0.0 && p.is_finite()) => {
                return Err(Error::param("drive.power_w", "must be ≥ 0"))
            }
            Drive::Enhancement(a) if !(a >= 0.0 && a.is_finite()) => {
                return Err(Error::param("drive.alpha", "must be ≥ 0"))
            }
            _ => {}
        }
        if let Some(t) = self.temperature {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::param("temperature", "must be ≥ 0"));
            }
        }
        Ok(())
    }

    pub fn alpha(&self) -> Result<f64> {
        match self.drive {
            Drive::Enhancement(a) => Ok(a),
            Drive::Power(_) => mean_photon_number(self).map(f64::sqrt),
        }
    }

    /// Pump-enhanced optomechanical coupling G = α·g_ab.
    pub fn enhanced_coupling(&self) -> Result<f64> {
        Ok(self.alpha()? * self.g_ab)
    }

    /// Bath occupation seen by `label`, honouring the temperature override.
    pub fn occupation(&self, label: ModeLabel) -> Result<f64> {
        match self.temperature {
            Some(t) => thermal_occupation(self.mode(label).frequency, t),
            None => Ok(self.mode(label).n_th),
        }
    }

    /// Set α so that C_ab takes the requested value.
    pub fn set_c_ab(&mut self, c_ab: f64) -> Result<()> {
        if self.g_ab <= 0.0 {
            return Err(Error::param("g_ab", "must be > 0 to target C_ab"));
        }
        let g = coupling_for(
            c_ab,
            self.mode(ModeLabel::Optical),
            self.mode(ModeLabel::Phonon),
        );
        self.drive = Drive::Enhancement(g / self.g_ab);
        Ok(())
    }

    pub fn set_c_mb(&mut self, c_mb: f64) {
        self.g_mb = coupling_for(
            c_mb,
            self.mode(ModeLabel::Magnon),
            self.mode(ModeLabel::Phonon),
        );
    }

    pub fn set_c_mc(&mut self, c_mc: f64) {
        self.g_mc = coupling_for(
            c_mc,
            self.mode(ModeLabel::Magnon),
            self.mode(ModeLabel::Microwave),
        );
    }

    /// Redistribute a port mode's total linewidth so that κ_out/κ_tot = η.
    pub fn set_efficiency(&mut self, label: ModeLabel, eta: f64) -> Result<()> {
        if !label.has_port() {
            return Err(Error::InvalidSelection(label.key().into()));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::param("efficiency", "must lie in [0, 1]"));
        }
        let m = self.mode_mut(label);
        let tot = m.total_rate();
        m.port_rate = eta * tot;
        m.internal_rate = tot - m.port_rate;
        Ok(())
    }

    /// One occupation on every bath, optical included.
    pub fn set_uniform_occupation(&mut self, n: f64) {
        self.temperature = None;
        for m in &mut self.modes {
            m.n_th = n;
        }
    }

    /// Same bath occupation on phonon, magnon and microwave; optical stays cold.
    pub fn set_bath_occupation(&mut self, n: f64) {
        self.temperature = None;
        for l in [ModeLabel::Phonon, ModeLabel::Magnon, ModeLabel::Microwave] {
            self.mode_mut(l).n_th = n;
        }
        self.mode_mut(ModeLabel::Optical).n_th = 0.0;
    }
}

fn coupling_for(coop: f64, i: &ModeSpec, j: &ModeSpec) -> f64 {
    0.5 * (coop.max(0.0) * i.total_rate() * j.total_rate()).sqrt()
}

pub fn mean_photon_number(params: &ChainParams) -> Result<f64> {
    let Drive::Power(p) = params.drive else {
        return Err(Error::param(
            "drive",
            "mean photon number needs a power drive",
        ));
    };
    let a = params.mode(ModeLabel::Optical);
    if a.frequency <= 0.0 {
        return Err(Error::param("modes.a.frequency", "must be > 0"));
    }
    let kt = a.total_rate();
    if kt <= 0.0 {
        return Err(Error::param("modes.a.total_rate", "must be > 0"));
    }
    let d = params.detuning;
    Ok(a.port_rate * p / (HBAR * a.frequency * (d * d + 0.25 * kt * kt)))
}

/// Pump power that yields enhancement `alpha` for otherwise fixed parameters.
pub fn power_for_alpha(params: &ChainParams, alpha: f64) -> Result<f64> {
    let mut p = params.clone();
    p.drive = Drive::Power(1.0);
    Ok(alpha * alpha / mean_photon_number(&p)?)
}

pub fn thermal_occupation(frequency: f64, temperature: f64) -> Result<f64> {
    if !(frequency > 0.0) {
        return Err(Error::param("frequency", "must be > 0"));
    }
    if !(temperature >= 0.0) {
        return Err(Error::param("temperature", "must be ≥ 0"));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (HBAR * frequency / (K_B * temperature)).exp_m1())
}

pub fn cooperativities(params: &ChainParams) -> Result<Cooperativities> {
    params.validate()?;
    let g = params.enhanced_coupling()?;
    let [a, b, m, c] = params.modes;
    let coop = |g: f64, i: ModeSpec, j: ModeSpec| 4.0 * g * g / (i.total_rate() * j.total_rate());
    Ok(Cooperativities {
        c_ab: coop(g, a, b),
        c_mb: coop(params.g_mb, m, b),
        c_mc: coop(params.g_mc, m, c),
    })
}
