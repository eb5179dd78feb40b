//! Built-in parameter sets. Values are entered as ordinary frequencies and
//! converted to angular units here.

use crate::model::{ChainParams, Drive, ModeLabel, ModeSpec};
use crate::TWO_PI;

pub const NAMES: [&str; 2] = ["table1", "table2"];

pub fn by_name(name: &str) -> Option<ChainParams> {
    match name {
        "table1" => Some(table1()),
        "table2" => Some(table2()),
        _ => None,
    }
}

fn mode(label: ModeLabel, freq_hz: f64, gamma_hz: f64, kappa_out_hz: f64) -> ModeSpec {
    ModeSpec::new(
        label,
        TWO_PI * freq_hz,
        TWO_PI * gamma_hz,
        TWO_PI * kappa_out_hz,
    )
}

/// Suspended-beam chain. The microwave frequency is not tabulated and is put on
/// resonance with the magnon; the drive sits at the entanglement optimum α = 42.
pub fn table1() -> ChainParams {
    ChainParams {
        modes: [
            mode(ModeLabel::Optical, 200e12, 0.1e9, 1e9),
            mode(ModeLabel::Phonon, 10e9, 1e3, 0.0),
            mode(ModeLabel::Magnon, 10e9, 1e6, 0.0),
            mode(ModeLabel::Microwave, 10e9, 1e6, 100e6),
        ],
        g_ab: TWO_PI * 0.2e6,
        g_mb: TWO_PI * 10e6,
        g_mc: TWO_PI * 180e6,
        detuning: TWO_PI * 10e9,
        drive: Drive::Enhancement(42.0),
        temperature: None,
    }
}

/// Disk implementation at unit enhancement.
pub fn table2() -> ChainParams {
    ChainParams {
        modes: [
            mode(ModeLabel::Optical, 193.5e12, 1e9, 99e9),
            mode(ModeLabel::Phonon, 0.567e9, 5e3, 0.0),
            mode(ModeLabel::Magnon, 0.567e9, 5e6, 0.0),
            mode(ModeLabel::Microwave, 0.567e9, 0.01e6, 0.99e6),
        ],
        g_ab: TWO_PI * 1e3,
        g_mb: TWO_PI * 5e6,
        g_mc: TWO_PI * 10e6,
        detuning: TWO_PI * 0.567e9,
        drive: Drive::Enhancement(1.0),
        temperature: None,
    }
}

/// Table I with lossless ports: internal optical and microwave losses removed,
/// external rates kept.
pub fn table1_ideal_ports() -> ChainParams {
    let mut p = table1();
    p.mode_mut(ModeLabel::Optical).internal_rate = 0.0;
    p.mode_mut(ModeLabel::Microwave).internal_rate = 0.0;
    p
}

/// A resonant, deeply sideband-resolved chain with unit port efficiency at zero
/// temperature, tuned to the requested cooperativities.
///
/// Optical, magnon and microwave linewidths share one unit (2π·100 kHz), the
/// phonon is 10⁶ times narrower and all frequencies sit 10⁵ units up. In this
/// regime the non-resonant optomechanical terms and the magnon dynamics drop
/// out, which is where the cooperativity closed forms hold.
pub fn resonant_chain(c_ab: f64, c_mb: f64, c_mc: f64) -> ChainParams {
    let unit_hz = 100e3;
    let w = 1e5 * unit_hz;
    let mut p = ChainParams {
        modes: [
            mode(ModeLabel::Optical, 200e12, 0.0, unit_hz),
            mode(ModeLabel::Phonon, w, 1e-6 * unit_hz, 0.0),
            mode(ModeLabel::Magnon, w, unit_hz, 0.0),
            mode(ModeLabel::Microwave, w, 0.0, unit_hz),
        ],
        g_ab: TWO_PI * 0.2e6,
        g_mb: 0.0,
        g_mc: 0.0,
        detuning: TWO_PI * w,
        drive: Drive::Enhancement(0.0),
        temperature: Some(0.0),
    };
    p.set_c_ab(c_ab).expect("g_ab > 0");
    p.set_c_mb(c_mb);
    p.set_c_mc(c_mc);
    p
}
