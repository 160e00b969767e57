//! INI-style experiment configuration.
//!
//! ```text
//! [model]
//! mu = 1
//! b = 0.5
//!
//! [grid]
//! n = 64
//! box_length = 32pi
//!
//! [run]
//! mode = simulate
//! t_end = 50
//! cutoff_radius = auto
//!
//! [output]
//! dir = out
//! ```
//!
//! Every key is optional unless the mode needs it; unknown sections and keys
//! are rejected with the offending line number.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use oblab::semigroup::bounds::{SampleSpec, DEFAULT_K_CAP};
use oblab::solver::{InitKind, InitialSpec, SolverConfig};
use oblab::ModelParams;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    LinearDecay,
    VerifyBounds,
    Simulate,
    Fit,
    Identities,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::LinearDecay => "linear-decay",
            Mode::VerifyBounds => "verify-bounds",
            Mode::Simulate => "simulate",
            Mode::Fit => "fit",
            Mode::Identities => "identities",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [
            Mode::LinearDecay,
            Mode::VerifyBounds,
            Mode::Simulate,
            Mode::Fit,
            Mode::Identities,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

/// Cutoff radius `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Auto,
    Value(f64),
}

/// Fit window for the `fit` mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    /// Every sample.
    All,
    /// Detected from the reference and saturation columns.
    Auto,
    Range(f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitSpec {
    pub input: Option<PathBuf>,
    pub column: Option<String>,
    pub window: Window,
    pub reference: String,
    pub saturation: String,
    /// Expected exponent; checked against the tolerance when present.
    pub target: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Option<Mode>,
    pub params: ModelParams,
    pub n: usize,
    pub box_length: f64,
    pub initial: InitialSpec,
    pub radius: Radius,
    pub eta1: Option<f64>,
    pub t_end: f64,
    pub cadence: f64,
    pub cfl: f64,
    pub fixed_dt: Option<f64>,
    pub nonlinear: bool,
    /// Orders `k` for the linear decay table.
    pub orders: Vec<u32>,
    pub decay_t_min: f64,
    pub decay_t_max: f64,
    pub decay_samples: usize,
    pub bound_samples: SampleSpec,
    pub k_cap: f64,
    pub fit: FitSpec,
    /// Random fixtures in the identity suite.
    pub fixtures: usize,
    /// Replaces the stress by a non-symmetric tensor in the cancellation check.
    pub inject_nonsymmetric: bool,
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub snapshots: bool,
    pub forcing: bool,
}

impl ExperimentConfig {
    pub fn defaults() -> Self {
        let (n, l) = (32, 16.0 * PI);
        Self {
            mode: None,
            params: ModelParams::default(),
            n,
            box_length: l,
            initial: default_initial(n, l),
            radius: Radius::Auto,
            eta1: None,
            t_end: 1.0,
            cadence: 0.1,
            cfl: 0.5,
            fixed_dt: None,
            nonlinear: true,
            orders: vec![0, 1, 2, 3],
            decay_t_min: 1e2,
            decay_t_max: 1e4,
            decay_samples: 41,
            bound_samples: SampleSpec::default(),
            k_cap: DEFAULT_K_CAP,
            fit: FitSpec {
                input: None,
                column: None,
                window: Window::Auto,
                reference: "norm_u_1".into(),
                saturation: "norm_u_0".into(),
                target: None,
            },
            fixtures: 100,
            inject_nonsymmetric: false,
            tolerance: None,
            seed: 0,
            out_dir: PathBuf::from("out"),
            snapshots: false,
            forcing: false,
        }
    }

    /// Resolved cutoff radius.
    pub fn cutoff_radius(&self) -> f64 {
        match self.radius {
            Radius::Auto => oblab::semigroup::bounds::default_cutoff_radius(&self.params),
            Radius::Value(r) => r,
        }
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            n: self.n,
            box_length: self.box_length,
            params: self.params,
            initial: self.initial,
            cfl: self.cfl,
            t_end: self.t_end,
            cadence: self.cadence,
            nonlinear: self.nonlinear,
            record_forcing: self.forcing,
            snapshots: self.snapshots,
            fixed_dt: self.fixed_dt,
            cutoff_radius: Some(self.cutoff_radius()),
            eta1: self.eta1,
        }
    }
}

/// Width `L/16`, widened to four grid spacings on coarse grids.
fn default_initial(n: usize, l: f64) -> InitialSpec {
    let mut spec = InitialSpec::default_for(l);
    spec.width = spec.width.max(4.0 * l / n as f64);
    spec
}

struct Entry {
    line: usize,
    value: String,
}

const SECTIONS: [(&str, &[&str]); 4] = [
    ("model", &["epsilon", "mu", "kappa", "beta", "alpha", "b"]),
    (
        "grid",
        &["n", "box_length", "initial", "amplitude", "stress_amplitude", "width"],
    ),
    (
        "run",
        &[
            "mode",
            "t_end",
            "cadence",
            "cfl",
            "dt",
            "nonlinear",
            "cutoff_radius",
            "eta1",
            "orders",
            "t_min",
            "t_max",
            "samples",
            "bound_r_samples",
            "bound_t_samples",
            "bound_t_min",
            "bound_t_max",
            "k_cap",
            "input",
            "column",
            "window",
            "reference",
            "saturation",
            "target",
            "fixtures",
            "inject_nonsymmetric",
            "tolerance",
            "seed",
        ],
    ),
    ("output", &["dir", "snapshots", "forcing"]),
];

fn strip_comment(line: &str) -> &str {
    let cut = line
        .char_indices()
        .find(|&(i, c)| (c == '#' || c == ';') && (i == 0 || line[..i].ends_with(char::is_whitespace)))
        .map_or(line.len(), |(i, _)| i);
    line[..cut].trim()
}

type Sections = BTreeMap<String, BTreeMap<String, Entry>>;

fn tokenize(text: &str) -> Result<Sections, CliError> {
    let mut out: Sections = BTreeMap::new();
    let mut current: Option<&'static str> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = strip_comment(raw);
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| CliError::config(line, format!("malformed section header {s:?}")))?
                .trim();
            let (known, _) = SECTIONS
                .iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| CliError::config(line, format!("unknown section [{name}]")))?;
            if out.contains_key(*known) {
                return Err(CliError::config(line, format!("section [{name}] appears twice")));
            }
            out.insert(known.to_string(), BTreeMap::new());
            current = Some(known);
            continue;
        }
        let (key, value) = s
            .split_once('=')
            .ok_or_else(|| CliError::config(line, format!("expected `key = value`, found {s:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let section =
            current.ok_or_else(|| CliError::config(line, format!("key `{key}` outside of any section")))?;
        let allowed = SECTIONS.iter().find(|(n, _)| *n == section).unwrap().1;
        if !allowed.contains(&key) {
            return Err(CliError::config(line, format!("unknown key `{key}` in [{section}]")));
        }
        if value.is_empty() {
            return Err(CliError::config(line, format!("empty value for `{key}`")));
        }
        let map = out.get_mut(section).unwrap();
        if let Some(prev) = map.get(key) {
            return Err(CliError::config(
                line,
                format!("duplicate key `{key}` (first set on line {})", prev.line),
            ));
        }
        map.insert(
            key.to_string(),
            Entry {
                line,
                value: value.to_string(),
            },
        );
    }
    Ok(out)
}

/// Accepts plain floats and multiples of pi: `pi`, `32pi`, `0.5*pi`.
pub fn parse_float(s: &str) -> Result<f64, String> {
    let lower = s.to_ascii_lowercase();
    let v = if let Some(coef) = lower.strip_suffix("pi") {
        let coef = coef.trim().trim_end_matches('*').trim();
        let c = if coef.is_empty() {
            1.0
        } else {
            coef.parse::<f64>().map_err(|_| format!("invalid number {s:?}"))?
        };
        c * PI
    } else {
        lower.parse::<f64>().map_err(|_| format!("invalid number {s:?}"))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.to_ascii_lowercase().as_str() {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        _ => Err(format!("expected on/off, found {s:?}")),
    }
}

fn parse_int<T: FromStr>(s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("invalid integer {s:?}"))
}

struct Reader<'a> {
    sections: &'a Sections,
}

impl Reader<'_> {
    fn get<T>(&self, section: &str, key: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Option<(T, usize)>, CliError> {
        let Some(e) = self.sections.get(section).and_then(|m| m.get(key)) else {
            return Ok(None);
        };
        parse(&e.value)
            .map(|v| Some((v, e.line)))
            .map_err(|m| CliError::config(e.line, format!("`{key}`: {m}")))
    }

    fn float(&self, section: &str, key: &str, slot: &mut f64) -> Result<Option<usize>, CliError> {
        Ok(self.get(section, key, parse_float)?.map(|(v, line)| {
            *slot = v;
            line
        }))
    }

    fn line(&self, section: &str, key: &str) -> Option<usize> {
        self.sections.get(section).and_then(|m| m.get(key)).map(|e| e.line)
    }
}

fn positive(line: Option<usize>, key: &str, v: f64) -> Result<(), CliError> {
    match line {
        Some(l) if !(v > 0.0) => Err(CliError::config(l, format!("`{key}` must be positive, got {v}"))),
        _ => Ok(()),
    }
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    let sections = tokenize(text)?;
    let r = Reader {
        sections: &sections,
    };
    let mut c = ExperimentConfig::defaults();

    if let Some((m, _)) = r.get("run", "mode", |s| s.parse::<Mode>())? {
        c.mode = Some(m);
    }

    let p = &mut c.params;
    for (key, slot) in [
        ("epsilon", &mut p.epsilon),
        ("mu", &mut p.mu),
        ("kappa", &mut p.kappa),
        ("beta", &mut p.beta),
        ("alpha", &mut p.alpha),
        ("b", &mut p.b),
    ] {
        r.float("model", key, slot)?;
    }
    let model_line = |key: &str| r.line("model", key).unwrap_or(0);
    if !(c.params.mu > 0.0) {
        return Err(CliError::config(
            model_line("mu"),
            format!("diffusive model requires mu > 0, got {}", c.params.mu),
        ));
    }
    if !(c.params.b.abs() <= 1.0) {
        return Err(CliError::config(
            model_line("b"),
            format!("b must lie in [-1, 1], got {}", c.params.b),
        ));
    }
    if let Err(e) = c.params.validate() {
        let key = ["epsilon", "kappa", "beta", "alpha"]
            .into_iter()
            .find(|k| e.to_string().contains(k))
            .unwrap_or("mu");
        return Err(CliError::config(model_line(key), e.to_string()));
    }

    if let Some((n, line)) = r.get("grid", "n", parse_int::<usize>)? {
        if n < 4 || n % 2 != 0 {
            return Err(CliError::config(line, format!("`n` must be even and at least 4, got {n}")));
        }
        c.n = n;
    }
    let l_line = r.float("grid", "box_length", &mut c.box_length)?;
    positive(l_line, "box_length", c.box_length)?;
    c.initial = default_initial(c.n, c.box_length);
    if let Some((kind, _)) = r.get("grid", "initial", |s| s.parse::<InitKind>().map_err(|e| e.to_string()))? {
        c.initial.kind = kind;
    }
    r.float("grid", "amplitude", &mut c.initial.amplitude)?;
    r.float("grid", "stress_amplitude", &mut c.initial.stress_amplitude)?;
    let w_line = r.float("grid", "width", &mut c.initial.width)?;
    positive(w_line, "width", c.initial.width)?;
    for key in ["amplitude", "stress_amplitude"] {
        let v = if key == "amplitude" {
            c.initial.amplitude
        } else {
            c.initial.stress_amplitude
        };
        if let Some(line) = r.line("grid", key) {
            if v < 0.0 {
                return Err(CliError::config(line, format!("`{key}` must be >= 0, got {v}")));
            }
        }
    }

    for (key, slot) in [("t_end", &mut c.t_end), ("cadence", &mut c.cadence)] {
        let line = r.float("run", key, slot)?;
        positive(line, key, *slot)?;
    }
    if let Some(line) = r.float("run", "cfl", &mut c.cfl)? {
        if !(c.cfl > 0.0 && c.cfl <= 1.0) {
            return Err(CliError::config(line, format!("`cfl` must lie in (0, 1], got {}", c.cfl)));
        }
    }
    if let Some((dt, line)) = r.get("run", "dt", parse_float)? {
        positive(Some(line), "dt", dt)?;
        c.fixed_dt = Some(dt);
    }
    if let Some((nl, _)) = r.get("run", "nonlinear", parse_bool)? {
        c.nonlinear = nl;
    }
    if let Some((radius, line)) = r.get("run", "cutoff_radius", |s| {
        if s.eq_ignore_ascii_case("auto") {
            Ok(Radius::Auto)
        } else {
            parse_float(s).map(Radius::Value)
        }
    })? {
        if let Radius::Value(v) = radius {
            positive(Some(line), "cutoff_radius", v)?;
        }
        c.radius = radius;
    }
    if let Some((eta, line)) = r.get("run", "eta1", |s| {
        if s.eq_ignore_ascii_case("auto") {
            Ok(None)
        } else {
            parse_float(s).map(Some)
        }
    })? {
        if let Some(v) = eta {
            if v < 0.0 {
                return Err(CliError::config(line, format!("`eta1` must be >= 0, got {v}")));
            }
        }
        c.eta1 = eta;
    }
    if let Some((orders, line)) = r.get("run", "orders", |s| {
        s.split(',')
            .map(|t| parse_int::<u32>(t.trim()))
            .collect::<Result<Vec<_>, _>>()
    })? {
        if orders.is_empty() || orders.iter().any(|&k| k > 3) {
            return Err(CliError::config(line, "`orders` must list values in 0..=3".to_string()));
        }
        c.orders = orders;
    }
    let t_min_line = r.float("run", "t_min", &mut c.decay_t_min)?;
    positive(t_min_line, "t_min", c.decay_t_min)?;
    let t_max_line = r.float("run", "t_max", &mut c.decay_t_max)?;
    if !(c.decay_t_max > c.decay_t_min) {
        return Err(CliError::config(
            t_max_line.or(t_min_line).unwrap_or(0),
            format!("`t_max` ({}) must exceed `t_min` ({})", c.decay_t_max, c.decay_t_min),
        ));
    }
    if let Some((s, line)) = r.get("run", "samples", parse_int::<usize>)? {
        if s < 8 {
            return Err(CliError::config(line, format!("`samples` must be at least 8, got {s}")));
        }
        c.decay_samples = s;
    }
    let spec = &mut c.bound_samples;
    for (key, slot) in [("bound_r_samples", &mut spec.r_count), ("bound_t_samples", &mut spec.t_count)] {
        if let Some((v, line)) = r.get("run", key, parse_int::<usize>)? {
            if v == 0 {
                return Err(CliError::config(line, format!("`{key}` must be positive")));
            }
            *slot = v;
        }
    }
    let bl = r.float("run", "bound_t_min", &mut spec.t_min)?;
    positive(bl, "bound_t_min", spec.t_min)?;
    let bh = r.float("run", "bound_t_max", &mut spec.t_max)?;
    if !(spec.t_max >= spec.t_min) {
        return Err(CliError::config(
            bh.or(bl).unwrap_or(0),
            "`bound_t_max` must be at least `bound_t_min`".to_string(),
        ));
    }
    let kl = r.float("run", "k_cap", &mut c.k_cap)?;
    positive(kl, "k_cap", c.k_cap)?;

    if let Some((p, _)) = r.get("run", "input", |s| Ok(PathBuf::from(s)))? {
        c.fit.input = Some(p);
    }
    if let Some((col, _)) = r.get("run", "column", |s| Ok(s.to_string()))? {
        c.fit.column = Some(col);
    }
    if let Some((w, _)) = r.get("run", "window", parse_window)? {
        c.fit.window = w;
    }
    if let Some((col, _)) = r.get("run", "reference", |s| Ok(s.to_string()))? {
        c.fit.reference = col;
    }
    if let Some((col, _)) = r.get("run", "saturation", |s| Ok(s.to_string()))? {
        c.fit.saturation = col;
    }
    if let Some((t, _)) = r.get("run", "target", parse_float)? {
        c.fit.target = Some(t);
    }
    if let Some((f, line)) = r.get("run", "fixtures", parse_int::<usize>)? {
        if f == 0 {
            return Err(CliError::config(line, "`fixtures` must be positive".to_string()));
        }
        c.fixtures = f;
    }
    if let Some((b, _)) = r.get("run", "inject_nonsymmetric", parse_bool)? {
        c.inject_nonsymmetric = b;
    }
    if let Some((t, line)) = r.get("run", "tolerance", parse_float)? {
        if t < 0.0 {
            return Err(CliError::config(line, format!("`tolerance` must be >= 0, got {t}")));
        }
        c.tolerance = Some(t);
    }
    if let Some((s, _)) = r.get("run", "seed", parse_int::<u64>)? {
        c.seed = s;
    }

    if let Some((d, _)) = r.get("output", "dir", |s| Ok(PathBuf::from(s)))? {
        c.out_dir = d;
    }
    if let Some((b, _)) = r.get("output", "snapshots", parse_bool)? {
        c.snapshots = b;
    }
    if let Some((b, _)) = r.get("output", "forcing", parse_bool)? {
        c.forcing = b;
    }

    if c.mode == Some(Mode::Fit) {
        c.require_fit_inputs()?;
    }
    Ok(c)
}

fn parse_window(s: &str) -> Result<Window, String> {
    match s.to_ascii_lowercase().as_str() {
        "auto" => Ok(Window::Auto),
        "all" => Ok(Window::All),
        _ => {
            let (a, b) = s
                .split_once(',')
                .ok_or_else(|| format!("expected auto, all or `t1, t2`, found {s:?}"))?;
            let (a, b) = (parse_float(a.trim())?, parse_float(b.trim())?);
            if !(a < b) {
                return Err(format!("empty window [{a}, {b}]"));
            }
            Ok(Window::Range(a, b))
        }
    }
}

impl ExperimentConfig {
    pub fn require_fit_inputs(&self) -> Result<(), CliError> {
        for (key, present) in [("input", self.fit.input.is_some()), ("column", self.fit.column.is_some())] {
            if !present {
                return Err(CliError::Config(format!("missing key `{key}` in [run] (required by fit)")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: CliError) -> usize {
        match e {
            CliError::ConfigLine { line, .. } => line,
            other => panic!("expected a line error, got {other}"),
        }
    }

    #[test]
    fn minimal_config_fills_defaults() {
        let c = parse_config("[run]\nmode = linear-decay\n").unwrap();
        assert_eq!(c.mode, Some(Mode::LinearDecay));
        assert_eq!(c.radius, Radius::Auto);
        assert_eq!(c.params, ModelParams::default());
        assert_eq!(c.orders, vec![0, 1, 2, 3]);
        assert_eq!(c.decay_samples, 41);
        assert_eq!(c.out_dir, PathBuf::from("out"));
        assert_eq!(c.cutoff_radius(), 0.5);
        assert!(parse_config("").is_ok());
    }

    #[test]
    fn mu_zero_names_the_requirement() {
        let e = parse_config("[model]\nepsilon = 0\nmu = 0\n").unwrap_err();
        assert!(e.to_string().contains("diffusive model requires mu > 0"), "{e}");
        assert_eq!(line_of(e), 3);
    }

    #[test]
    fn b_outside_unit_interval() {
        let e = parse_config("[model]\nb = 1.5\n").unwrap_err();
        assert!(e.to_string().contains("[-1, 1]"));
        assert_eq!(line_of(e), 2);
        assert!(parse_config("[model]\nb = -1\n").is_ok());
    }

    #[test]
    fn unknown_keys_and_sections() {
        let e = parse_config("[model]\nmu = 1\nkapa = 2\n").unwrap_err();
        assert!(e.to_string().contains("unknown key `kapa`"));
        assert_eq!(line_of(e), 3);
        assert_eq!(line_of(parse_config("# c\n[models]\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("mu = 1\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_config("[model]\nmu 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("[model]\nmu = 1\nmu = 2\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_config("[grid]\nn = 33\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("[run]\nmode = walk\n").unwrap_err()), 2);
    }

    #[test]
    fn pi_notation_and_comments() {
        let c = parse_config("[grid] # box\nn = 64\nbox_length = 32pi ; periodic\n[run]\ncutoff_radius = 0.25\n").unwrap();
        assert!((c.box_length - 32.0 * PI).abs() < 1e-12);
        assert_eq!(c.radius, Radius::Value(0.25));
        assert_eq!(parse_float("pi").unwrap(), PI);
        assert_eq!(parse_float("0.5*pi").unwrap(), 0.5 * PI);
        assert!(parse_float("xpi").is_err());
        assert!(parse_float("inf").is_err());
        // default width is L/16 at n = 64
        assert!((c.initial.width - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn coarse_grid_default_width_is_resolvable() {
        let c = ExperimentConfig::defaults();
        assert!(c.initial.width >= 4.0 * c.box_length / c.n as f64);
    }

    #[test]
    fn fit_mode_needs_input_and_column() {
        let e = parse_config("[run]\nmode = fit\ncolumn = u_0\n").unwrap_err();
        assert!(e.to_string().contains("`input`"));
        let c = parse_config("[run]\nmode = fit\ninput = a.csv\ncolumn = u_0\nwindow = 10, 1e3\n").unwrap();
        assert_eq!(c.fit.window, Window::Range(10.0, 1e3));
        assert!(parse_config("[run]\nwindow = 5, 1\n").is_err());
    }

    #[test]
    fn run_keys() {
        let c = parse_config(
            "[run]\nt_end = 2\ncadence = 0.5\ncfl = 0.3\ndt = 0.01\nnonlinear = off\neta1 = auto\nseed = 7\ntolerance = 0\n[output]\nsnapshots = on\nforcing = yes\ndir = /tmp/x\n",
        )
        .unwrap();
        assert_eq!((c.t_end, c.cadence, c.cfl, c.fixed_dt), (2.0, 0.5, 0.3, Some(0.01)));
        assert!(!c.nonlinear && c.snapshots && c.forcing);
        assert_eq!((c.seed, c.tolerance, c.eta1), (7, Some(0.0), None));
        let s = c.solver_config();
        assert!(s.record_forcing && s.snapshots);
        assert_eq!(line_of(parse_config("[run]\n\ncfl = 2\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_config("[run]\nt_end = -1\n").unwrap_err()), 2);
    }
}
