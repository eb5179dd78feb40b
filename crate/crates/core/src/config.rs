//! JSON configuration in ordinary frequency units (Hz); converted to angular
//! units on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ChainParams, Drive, ModeLabel, ModeSpec};
use crate::TWO_PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeConfig {
    pub freq_hz: f64,
    pub gamma_hz: f64,
    #[serde(default)]
    pub kappa_out_hz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_th: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Modes {
    pub a: ModeConfig,
    pub b: ModeConfig,
    pub m: ModeConfig,
    pub c: ModeConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Couplings {
    pub g_ab_hz: f64,
    pub g_mb_hz: f64,
    pub g_mc_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub modes: Modes,
    pub couplings: Couplings,
    pub drive: DriveConfig,
    pub detuning_hz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature_k: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub params: ChainParams,
    pub warnings: Vec<String>,
}

impl ConfigFile {
    pub fn into_params(self) -> Result<Loaded> {
        let mut warnings = Vec::new();
        let drive = match (self.drive.power_w, self.drive.alpha) {
            (Some(p), None) => Drive::Power(p),
            (None, Some(a)) => Drive::Enhancement(a),
            _ => {
                return Err(Error::config(
                    "drive",
                    "exactly one of `power_w` and `alpha` must be set",
                ))
            }
        };
        let mode = |label: ModeLabel, m: &ModeConfig| ModeSpec {
            label,
            frequency: TWO_PI * m.freq_hz,
            internal_rate: TWO_PI * m.gamma_hz,
            port_rate: TWO_PI * m.kappa_out_hz,
            n_th: m.n_th.unwrap_or(0.0),
        };
        let ms = &self.modes;
        let entries = [
            (ModeLabel::Optical, &ms.a),
            (ModeLabel::Phonon, &ms.b),
            (ModeLabel::Magnon, &ms.m),
            (ModeLabel::Microwave, &ms.c),
        ];
        if self.temperature_k.is_some() {
            for (l, m) in entries {
                if m.n_th.is_some() {
                    warnings.push(format!(
                        "modes.{l}.n_th ignored: temperature_k takes precedence"
                    ));
                }
            }
        }
        let params = ChainParams {
            modes: entries.map(|(l, m)| mode(l, m)),
            g_ab: TWO_PI * self.couplings.g_ab_hz,
            g_mb: TWO_PI * self.couplings.g_mb_hz,
            g_mc: TWO_PI * self.couplings.g_mc_hz,
            detuning: TWO_PI * self.detuning_hz,
            drive,
            temperature: self.temperature_k,
        };
        params.validate().map_err(|e| match e {
            Error::InvalidParameter { name, reason } => Error::config(&config_path(&name), reason),
            other => other,
        })?;
        for w in &warnings {
            log::warn!("{w}");
        }
        Ok(Loaded { params, warnings })
    }

    pub fn from_params(p: &ChainParams) -> Self {
        let mc = |m: &ModeSpec| ModeConfig {
            freq_hz: hz(m.frequency),
            gamma_hz: hz(m.internal_rate),
            kappa_out_hz: hz(m.port_rate),
            n_th: (m.n_th != 0.0).then_some(m.n_th),
        };
        let [a, b, m, c] = &p.modes;
        let (power_w, alpha) = match p.drive {
            Drive::Power(w) => (Some(w), None),
            Drive::Enhancement(a) => (None, Some(a)),
        };
        ConfigFile {
            modes: Modes {
                a: mc(a),
                b: mc(b),
                m: mc(m),
                c: mc(c),
            },
            couplings: Couplings {
                g_ab_hz: hz(p.g_ab),
                g_mb_hz: hz(p.g_mb),
                g_mc_hz: hz(p.g_mc),
            },
            drive: DriveConfig { power_w, alpha },
            detuning_hz: hz(p.detuning),
            temperature_k: p.temperature,
        }
    }
}

/// rad/s → Hz, trimmed to 15 significant digits so presets print as written.
fn hz(w: f64) -> f64 {
    let f = w / TWO_PI;
    format!("{f:.14e}").parse().unwrap_or(f)
}

/// Map an internal parameter name to the key a user wrote.
fn config_path(name: &str) -> String {
    let name = name
        .replace(".frequency", ".freq_hz")
        .replace(".internal_rate", ".gamma_hz")
        .replace(".port_rate", ".kappa_out_hz")
        .replace(".total_rate", ".gamma_hz");
    match name.as_str() {
        "g_ab" | "g_mb" | "g_mc" => format!("couplings.{name}_hz"),
        "detuning" => "detuning_hz".into(),
        "temperature" => "temperature_k".into(),
        _ => name,
    }
}

pub fn parse_config(text: &str) -> Result<Loaded> {
    let cfg: ConfigFile = serde_json::from_str(text).map_err(|e| {
        Error::config(
            &format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    cfg.into_params()
}

pub fn to_json(cfg: &ConfigFile) -> Result<String> {
    serde_json::to_string_pretty(cfg).map_err(|e| Error::Io(e.to_string()))
}

pub fn load_config(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(&path.display().to_string(), e.to_string()))?;
    parse_config(&text)
}
