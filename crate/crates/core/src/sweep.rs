//! Parameter sweeps, the stability boundary scan and table emitters.

use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{build_drift, stability, Rwa};
use crate::entanglement::{instability_threshold, log_negativity, steering};
use crate::error::{Error, Result};
use crate::model::{cooperativities, ChainParams, Drive, ModeLabel};
use crate::scattering::{
    filtered_covariance, optical_microwave, output_covariance, NoiseMatrix,
    DEFAULT_QUADRATURE_POINTS,
};
use crate::teleport::{best_receiver_phase, fidelity_vs_negativity_benchmark, InputState};
use crate::TWO_PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    CoopAb,
    CoopMb,
    CoopMc,
    Alpha,
    PowerW,
    TemperatureK,
    /// One occupation on all four baths.
    UniformOccupation,
    /// Common bath occupation of phonon, magnon and microwave.
    BathOccupation,
    DetuningHz,
    FreqHz(ModeLabel),
    CouplingHz(char),
    Efficiency(ModeLabel),
    FilterCenterHz,
    FilterBandwidthHz,
}

const PARAM_NAMES: &[(&str, SweepParam)] = &[
    ("coop.ab", SweepParam::CoopAb),
    ("coop.mb", SweepParam::CoopMb),
    ("coop.mc", SweepParam::CoopMc),
    ("drive.alpha", SweepParam::Alpha),
    ("drive.power_w", SweepParam::PowerW),
    ("temperature_k", SweepParam::TemperatureK),
    ("n_th", SweepParam::UniformOccupation),
    ("bath.n_th", SweepParam::BathOccupation),
    ("detuning_hz", SweepParam::DetuningHz),
    ("modes.a.freq_hz", SweepParam::FreqHz(ModeLabel::Optical)),
    ("modes.b.freq_hz", SweepParam::FreqHz(ModeLabel::Phonon)),
    ("modes.m.freq_hz", SweepParam::FreqHz(ModeLabel::Magnon)),
    ("modes.c.freq_hz", SweepParam::FreqHz(ModeLabel::Microwave)),
    ("couplings.g_ab_hz", SweepParam::CouplingHz('a')),
    ("couplings.g_mb_hz", SweepParam::CouplingHz('b')),
    ("couplings.g_mc_hz", SweepParam::CouplingHz('c')),
    ("efficiency.a", SweepParam::Efficiency(ModeLabel::Optical)),
    ("efficiency.c", SweepParam::Efficiency(ModeLabel::Microwave)),
    ("filter.center_hz", SweepParam::FilterCenterHz),
    ("filter.bandwidth_hz", SweepParam::FilterBandwidthHz),
];

impl SweepParam {
    pub fn name(self) -> &'static str {
        PARAM_NAMES
            .iter()
            .find(|(_, p)| *p == self)
            .map(|(n, _)| *n)
            .expect("every parameter is named")
    }

    pub fn all_names() -> impl Iterator<Item = &'static str> {
        PARAM_NAMES.iter().map(|(n, _)| *n)
    }
}

impl FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PARAM_NAMES
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, p)| *p)
            .ok_or_else(|| {
                Error::config(
                    s,
                    format!(
                        "unknown sweep parameter; expected one of {}",
                        Self::all_names().collect::<Vec<_>>().join(", ")
                    ),
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn new(param: SweepParam, min: f64, max: f64, points: usize, scale: Scale) -> Self {
        Axis {
            param,
            min,
            max,
            points,
            scale,
        }
    }

    fn validate(&self) -> Result<()> {
        let name = self.param.name();
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::config(name, "axis bounds must be finite"));
        }
        if self.min != self.max && self.points < 2 {
            return Err(Error::config(name, "an axis needs at least 2 points"));
        }
        if self.scale == Scale::Log && !(self.min > 0.0 && self.max > 0.0) {
            return Err(Error::config(name, "log axis bounds must be > 0"));
        }
        Ok(())
    }

    /// Grid values; a zero-width axis collapses to its single value.
    pub fn values(&self) -> Vec<f64> {
        if self.min == self.max {
            return vec![self.min];
        }
        let n = self.points;
        (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                if k == 0 {
                    return self.min;
                }
                if k == n - 1 {
                    return self.max;
                }
                match self.scale {
                    Scale::Linear => self.min + t * (self.max - self.min),
                    Scale::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .map(|v| v.clamp(self.min.min(self.max), self.min.max(self.max)))
            .collect()
    }

    /// `name:min:max:points[:log|:lin]`
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(Error::config(
                text,
                "expected name:min:max:points[:log|lin]",
            ));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| Error::config(text, e.to_string()))
        };
        let scale = match parts.get(4).copied() {
            None | Some("lin") | Some("linear") => Scale::Linear,
            Some("log") => Scale::Log,
            Some(other) => return Err(Error::config(text, format!("unknown scale `{other}`"))),
        };
        let points = parts[3]
            .parse::<usize>()
            .map_err(|e| Error::config(text, e.to_string()))?;
        let axis = Axis::new(
            parts[0].parse()?,
            num(parts[1])?,
            num(parts[2])?,
            points,
            scale,
        );
        axis.validate()?;
        Ok(axis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Recipe {
    CoopPlane,
    MagnonScan,
    FilterScan,
    TemperatureScan,
    EfficiencyScan,
    DiskPlane,
    Benchmark,
    SteeringScan,
    Custom,
}

impl FromStr for Recipe {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "coop_plane" => Recipe::CoopPlane,
            "magnon_scan" => Recipe::MagnonScan,
            "filter_scan" => Recipe::FilterScan,
            "temperature_scan" => Recipe::TemperatureScan,
            "efficiency_scan" => Recipe::EfficiencyScan,
            "disk_plane" => Recipe::DiskPlane,
            "benchmark" => Recipe::Benchmark,
            "steering_scan" => Recipe::SteeringScan,
            "custom" => Recipe::Custom,
            _ => return Err(Error::config("recipe", format!("unknown recipe `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalOptions {
    /// Filter centre in rad/s; defaults to the detuning.
    pub filter_center: Option<f64>,
    /// Filter width in rad/s; `None` evaluates the sideband pair directly.
    pub filter_bandwidth: Option<f64>,
    pub quadrature_points: usize,
    pub fidelity: bool,
    pub steering: bool,
    pub input: InputState,
    pub rwa: Rwa,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            filter_center: None,
            filter_bandwidth: None,
            quadrature_points: DEFAULT_QUADRATURE_POINTS,
            fidelity: false,
            steering: false,
            input: InputState::vacuum(),
            rwa: Rwa::Magnon,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub recipe: Recipe,
    pub axes: Vec<Axis>,
    pub base: ChainParams,
    pub options: EvalOptions,
}

impl SweepSpec {
    /// Default axes and outputs for a recipe over `base`.
    pub fn for_recipe(recipe: Recipe, base: ChainParams) -> Self {
        use SweepParam::*;
        let mut options = EvalOptions::default();
        let log_plane = vec![
            Axis::new(CoopAb, 0.1, 1e3, 41, Scale::Log),
            Axis::new(CoopMc, 0.1, 1e3, 41, Scale::Log),
        ];
        let axes = match recipe {
            Recipe::CoopPlane => log_plane,
            Recipe::DiskPlane => {
                options.fidelity = true;
                log_plane
            }
            Recipe::MagnonScan => {
                let f = base.mode(ModeLabel::Magnon).frequency / TWO_PI;
                let span = 5.0 * base.g_mc.max(base.g_mb) / TWO_PI;
                vec![Axis::new(
                    FreqHz(ModeLabel::Magnon),
                    f - span,
                    f + span,
                    201,
                    Scale::Linear,
                )]
            }
            Recipe::FilterScan => {
                let gb = base.mode(ModeLabel::Phonon).total_rate() / TWO_PI;
                vec![Axis::new(
                    FilterBandwidthHz,
                    1e-6 * gb,
                    10.0 * gb,
                    29,
                    Scale::Log,
                )]
            }
            Recipe::TemperatureScan => {
                options.fidelity = true;
                vec![Axis::new(TemperatureK, 0.0, 100.0, 51, Scale::Linear)]
            }
            Recipe::EfficiencyScan => {
                options.fidelity = true;
                vec![
                    Axis::new(Efficiency(ModeLabel::Optical), 0.5, 1.0, 11, Scale::Linear),
                    Axis::new(
                        Efficiency(ModeLabel::Microwave),
                        0.5,
                        1.0,
                        11,
                        Scale::Linear,
                    ),
                ]
            }
            Recipe::SteeringScan => {
                options.steering = true;
                let a = base.alpha().unwrap_or(1.0);
                vec![Axis::new(Alpha, 0.0, a, 43, Scale::Linear)]
            }
            Recipe::Benchmark | Recipe::Custom => vec![],
        };
        SweepSpec {
            recipe,
            axes,
            base,
            options,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.recipe == Recipe::Benchmark {
            return Ok(());
        }
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::config("axes", "a sweep takes one or two axes"));
        }
        for a in &self.axes {
            a.validate()?;
        }
        self.base
            .validate()
            .map_err(|e| Error::config("base", e.to_string()))
    }
}

/// Apply one swept value. Filter settings live in `opts`.
pub fn apply(
    params: &mut ChainParams,
    opts: &mut EvalOptions,
    param: SweepParam,
    v: f64,
) -> Result<()> {
    use SweepParam::*;
    match param {
        CoopAb => params.set_c_ab(v)?,
        CoopMb => params.set_c_mb(v),
        CoopMc => params.set_c_mc(v),
        Alpha => params.drive = Drive::Enhancement(v),
        PowerW => params.drive = Drive::Power(v),
        TemperatureK => params.temperature = Some(v),
        UniformOccupation => params.set_uniform_occupation(v),
        BathOccupation => params.set_bath_occupation(v),
        DetuningHz => params.detuning = TWO_PI * v,
        FreqHz(l) => params.mode_mut(l).frequency = TWO_PI * v,
        CouplingHz('a') => params.g_ab = TWO_PI * v,
        CouplingHz('b') => params.g_mb = TWO_PI * v,
        CouplingHz(_) => params.g_mc = TWO_PI * v,
        Efficiency(l) => params.set_efficiency(l, v)?,
        FilterCenterHz => opts.filter_center = Some(TWO_PI * v),
        FilterBandwidthHz => opts.filter_bandwidth = Some(TWO_PI * v),
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRecord {
    pub stable: bool,
    pub margin: f64,
    pub c_ab: f64,
    pub c_mc: f64,
    pub eta_minus: Option<f64>,
    pub e_n: Option<f64>,
    pub steering_a_to_c: Option<f64>,
    pub steering_c_to_a: Option<f64>,
    pub fidelity: Option<f64>,
    pub receiver_phase: Option<f64>,
    pub filter_converged: Option<bool>,
}

/// Evaluate one parameter point. Unstable points carry no quantifiers.
pub fn evaluate_point(params: &ChainParams, opts: &EvalOptions) -> Result<PointRecord> {
    let coops = cooperativities(params)?;
    let model = build_drift(params, opts.rwa)?;
    let rep = stability(&model)?;
    let mut rec = PointRecord {
        stable: rep.stable,
        margin: rep.margin,
        c_ab: coops.c_ab,
        c_mc: coops.c_mc,
        eta_minus: None,
        e_n: None,
        steering_a_to_c: None,
        steering_c_to_a: None,
        fidelity: None,
        receiver_phase: None,
        filter_converged: None,
    };
    if !rep.stable {
        return Ok(rec);
    }
    let noise = NoiseMatrix::from_params(params)?;
    let center = opts.filter_center.unwrap_or(params.detuning);
    let cov = match opts.filter_bandwidth {
        None => output_covariance(&model, &noise, center)?,
        Some(w) => {
            let f = filtered_covariance(&model, &noise, center, w, opts.quadrature_points)?;
            rec.filter_converged = Some(f.converged);
            f.cov
        }
    };
    let resource = optical_microwave(&cov);
    let neg = log_negativity(&resource)?;
    rec.eta_minus = Some(neg.eta_minus);
    rec.e_n = Some(neg.e_n);
    if opts.steering {
        let s = steering(&resource)?;
        rec.steering_a_to_c = Some(s.a_to_c);
        rec.steering_c_to_a = Some(s.c_to_a);
    }
    if opts.fidelity {
        let (phase, out) = best_receiver_phase(&resource, &opts.input)?;
        rec.fidelity = Some(out.fidelity);
        rec.receiver_phase = Some(phase);
    }
    Ok(rec)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            _ => None,
        }
    }

    fn from_opt(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<Cell>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

const RECORD_COLUMNS: [&str; 11] = [
    "stable",
    "margin",
    "c_ab",
    "c_mc",
    "eta_minus",
    "e_n",
    "steering_a_to_c",
    "steering_c_to_a",
    "fidelity",
    "receiver_phase",
    "filter_converged",
];

fn record_cells(r: &PointRecord) -> Vec<Cell> {
    vec![
        Cell::Flag(r.stable),
        Cell::Num(r.margin),
        Cell::Num(r.c_ab),
        Cell::Num(r.c_mc),
        Cell::from_opt(r.eta_minus),
        Cell::from_opt(r.e_n),
        Cell::from_opt(r.steering_a_to_c),
        Cell::from_opt(r.steering_c_to_a),
        Cell::from_opt(r.fidelity),
        Cell::from_opt(r.receiver_phase),
        r.filter_converged.map_or(Cell::Empty, Cell::Flag),
    ]
}

/// A one-row table for a single point.
pub fn record_table(r: &PointRecord) -> Table {
    Table {
        columns: RECORD_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows: vec![record_cells(r)],
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::config("jobs", e.to_string()))
}

/// Evaluate the grid (first axis outermost). Row order is grid order.
pub fn run_sweep(spec: &SweepSpec, jobs: Option<usize>) -> Result<Table> {
    spec.validate()?;
    if spec.recipe == Recipe::Benchmark {
        return pool(jobs)?.install(benchmark_table);
    }
    let values: Vec<Vec<f64>> = spec.axes.iter().map(Axis::values).collect();
    let mut grid: Vec<Vec<f64>> = vec![vec![]];
    for vs in &values {
        grid = grid
            .into_iter()
            .flat_map(|g| vs.iter().map(move |v| [g.clone(), vec![*v]].concat()))
            .collect();
    }
    let rows: Result<Vec<Vec<Cell>>> = pool(jobs)?.install(|| {
        grid.par_iter()
            .map(|point| {
                let mut p = spec.base.clone();
                let mut o = spec.options.clone();
                for (axis, v) in spec.axes.iter().zip(point) {
                    apply(&mut p, &mut o, axis.param, *v)?;
                }
                let rec = evaluate_point(&p, &o)?;
                Ok(point
                    .iter()
                    .map(|v| Cell::Num(*v))
                    .chain(record_cells(&rec))
                    .collect())
            })
            .collect()
    });
    let columns = spec
        .axes
        .iter()
        .map(|a| a.param.name().to_string())
        .chain(RECORD_COLUMNS.iter().map(|s| s.to_string()))
        .collect();
    Ok(Table {
        columns,
        rows: rows?,
    })
}

pub const BENCHMARK_R_IN: [f64; 3] = [0.0, 0.3, 0.6];

fn benchmark_table() -> Result<Table> {
    let e_n: Vec<f64> = (0..=60).map(|k| 0.1 * k as f64).collect();
    let rows = fidelity_vs_negativity_benchmark(&BENCHMARK_R_IN, &e_n)?;
    Ok(Table {
        columns: ["r_in", "e_n", "r_resource", "f_closed_form", "f_oracle"]
            .map(String::from)
            .to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                [r.r_in, r.e_n, r.r_resource, r.f_closed_form, r.f_oracle]
                    .map(Cell::Num)
                    .to_vec()
            })
            .collect(),
    })
}

/// Drift margin as a function of C_ab at fixed C_mb, C_mc.
fn margin_at(base: &ChainParams, c_ab: f64) -> Result<f64> {
    let mut p = base.clone();
    p.set_c_ab(c_ab)?;
    Ok(stability(&build_drift(&p, Rwa::Magnon)?)?.margin)
}

/// Bisect the C_ab at which the drift margin crosses zero for each C_mc.
pub fn stability_boundary(
    base: &ChainParams,
    c_mc: &[f64],
    rel_tol: f64,
) -> Result<Vec<(f64, f64)>> {
    c_mc.par_iter()
        .map(|&cmc| {
            let mut p = base.clone();
            p.set_c_mc(cmc);
            let m0 = margin_at(&p, 0.0)?;
            if m0 >= 0.0 {
                return Err(Error::Bisection(format!(
                    "undriven system unstable at C_mc = {cmc}"
                )));
            }
            let (mut lo, mut hi) = (0.0, 1.0);
            while margin_at(&p, hi)? < 0.0 {
                lo = hi;
                hi *= 2.0;
                if hi > 1e15 {
                    return Err(Error::Bisection(format!(
                        "no sign change up to C_ab = {hi:.1e} at C_mc = {cmc}"
                    )));
                }
            }
            while hi - lo > rel_tol * hi {
                let mid = 0.5 * (lo + hi);
                if margin_at(&p, mid)? < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok((cmc, 0.5 * (lo + hi)))
        })
        .collect()
}

pub fn boundary_table(base: &ChainParams, c_mc: &[f64], jobs: Option<usize>) -> Result<Table> {
    let c_mb = cooperativities(base)?.c_mb;
    let pts = pool(jobs)?.install(|| stability_boundary(base, c_mc, 1e-9))?;
    Ok(Table {
        columns: ["c_mc", "c_ab_numeric", "c_ab_closed_form", "rel_diff"]
            .map(String::from)
            .to_vec(),
        rows: pts
            .iter()
            .map(|&(c, a)| {
                let t = instability_threshold(c_mb, c);
                [c, a, t, (a - t).abs() / t].map(Cell::Num).to_vec()
            })
            .collect(),
    })
}

/// Optical–microwave covariance entries across a frequency list.
pub fn spectrum_table(params: &ChainParams, freqs_hz: &[f64]) -> Result<Table> {
    let model = build_drift(params, Rwa::Magnon)?;
    let noise = NoiseMatrix::from_params(params)?;
    let mut columns = vec!["freq_hz".to_string()];
    for i in 0..4 {
        for j in i..4 {
            columns.push(format!("s{}{}", i + 1, j + 1));
        }
    }
    let rows: Result<Vec<Vec<Cell>>> = freqs_hz
        .par_iter()
        .map(|&f| {
            let cov = optical_microwave(&output_covariance(&model, &noise, TWO_PI * f)?);
            Ok(std::iter::once(f)
                .chain(cov.upper_triangle())
                .map(Cell::Num)
                .collect())
        })
        .collect();
    Ok(Table {
        columns,
        rows: rows?,
    })
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Num(x) => x.to_string(),
        Cell::Flag(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

fn parse_cell(s: &str) -> Result<Cell> {
    Ok(match s {
        "" => Cell::Empty,
        "true" => Cell::Flag(true),
        "false" => Cell::Flag(false),
        _ => Cell::Num(
            s.parse()
                .map_err(|_| Error::Io(format!("bad cell `{s}`")))?,
        ),
    })
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&table.columns).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell_text)).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn read_csv<R: Read>(input: R) -> Result<Table> {
    let mut r = csv::Reader::from_reader(input);
    let io = |e: csv::Error| Error::Io(e.to_string());
    let columns = r.headers().map_err(io)?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        rows.push(
            rec.map_err(io)?
                .iter()
                .map(parse_cell)
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Table { columns, rows })
}

pub fn write_json<W: Write>(table: &Table, mut out: W) -> Result<()> {
    let records: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj = table.columns.iter().zip(row).map(|(k, c)| {
                let v = match c {
                    Cell::Num(x) => serde_json::Number::from_f64(*x)
                        .map_or(serde_json::Value::Null, serde_json::Value::Number),
                    Cell::Flag(b) => serde_json::Value::Bool(*b),
                    Cell::Empty => serde_json::Value::Null,
                };
                (k.clone(), v)
            });
            serde_json::Value::Object(obj.collect())
        })
        .collect();
    serde_json::to_writer_pretty(&mut out, &records).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out).map_err(|e| Error::Io(e.to_string()))
}

pub fn read_json<R: Read>(input: R) -> Result<Table> {
    let records: Vec<serde_json::Map<String, serde_json::Value>> =
        serde_json::from_reader(input).map_err(|e| Error::Io(e.to_string()))?;
    let columns: Vec<String> = records
        .first()
        .map(|r| r.keys().cloned().collect())
        .unwrap_or_default();
    let rows = records
        .iter()
        .map(|r| {
            columns
                .iter()
                .map(|k| match r.get(k) {
                    Some(serde_json::Value::Number(n)) => Cell::Num(n.as_f64().unwrap_or(f64::NAN)),
                    Some(serde_json::Value::Bool(b)) => Cell::Flag(*b),
                    _ => Cell::Empty,
                })
                .collect()
        })
        .collect();
    Ok(Table { columns, rows })
}
