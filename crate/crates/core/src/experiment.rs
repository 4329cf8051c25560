//! Scenario configs, single solves, parameter sweeps, CSV and SVG output.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::base::{solve_base_with, BaseGame};
use crate::error::{Result, SpneError};
use crate::model::{EquilibriumResult, MarketParams, Tag};
use crate::oracle::{oracle_verify_spne, OracleConfig, OracleReport};
use crate::outside::{solve_outside_option, OutsideGame};
use crate::three_player::{
    solve_three_player, solve_two_player_comparison, ThreePlayerGame, TwoPlayerLineGame,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Base,
    Outside,
    ThreePlayer,
    TwoPlayerComparison,
}

impl FromStr for Variant {
    type Err = SpneError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "base" => Ok(Variant::Base),
            "outside" | "outside_option" => Ok(Variant::Outside),
            "three_player" => Ok(Variant::ThreePlayer),
            "two_player_comparison" => Ok(Variant::TwoPlayerComparison),
            other => Err(SpneError::Validation(format!("unknown variant '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub variant: Variant,
    pub params: MarketParams,
    /// Where inside a corner family's price interval metrics are evaluated.
    pub corner_frac: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            variant: Variant::Base,
            params: MarketParams::default(),
            corner_frac: 0.5,
        }
    }
}

/// Sets one named parameter. `delta` writes `v_l` and zeroes `v_f`.
pub fn set_param(params: &mut MarketParams, name: &str, value: f64) -> Result<()> {
    match name {
        "s" => params.s = value,
        "gamma" => params.gamma = value,
        "c" => params.c = value,
        "v_l" | "v_L" => params.v_l = value,
        "v_f" | "v_F" => params.v_f = value,
        "delta" => *params = params.with_delta(value),
        "delta_lb" => params.delta_lb = value,
        "m_ub" | "M" => params.m_ub = Some(value),
        "alpha" => params.alpha = value,
        "k" => params.k = value,
        "b" => params.b = value,
        "t" => params.t = value,
        other => {
            return Err(SpneError::Validation(format!(
                "unknown parameter '{other}'"
            )))
        }
    }
    Ok(())
}

pub fn parse_config(text: &str) -> Result<Config> {
    let mut cfg = Config::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| SpneError::Parse {
            line,
            msg: format!("expected 'key = value', got '{body}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let err = |msg: String| SpneError::Parse { line, msg };
        match key {
            "variant" => cfg.variant = value.parse().map_err(|e: SpneError| err(e.to_string()))?,
            "m_ub" | "M" if value.eq_ignore_ascii_case("none") => cfg.params.m_ub = None,
            _ => {
                let v: f64 = value
                    .parse()
                    .map_err(|_| err(format!("field '{key}': '{value}' is not a number")))?;
                if key == "corner_frac" {
                    cfg.corner_frac = v;
                } else {
                    set_param(&mut cfg.params, key, v).map_err(|e| err(e.to_string()))?;
                }
            }
        }
    }
    Ok(cfg)
}

pub fn load_config(path: &std::path::Path) -> Result<Config> {
    let mut text = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| SpneError::Parse {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
    parse_config(&text)
}

pub fn solve(cfg: &Config) -> Result<EquilibriumResult> {
    match cfg.variant {
        Variant::Base => solve_base_with(&cfg.params, cfg.corner_frac),
        Variant::Outside => solve_outside_option(&cfg.params),
        Variant::ThreePlayer => solve_three_player(&cfg.params),
        Variant::TwoPlayerComparison => solve_two_player_comparison(&cfg.params),
    }
}

/// Oracle reports for every candidate of `result`.
pub fn verify(
    cfg: &Config,
    result: &EquilibriumResult,
    oracle: &OracleConfig,
) -> Result<Vec<OracleReport>> {
    let p = cfg.params;
    result
        .candidates
        .iter()
        .map(|e| {
            let prof = &e.profile;
            match cfg.variant {
                Variant::Base => oracle_verify_spne(&BaseGame::for_profile(&p, prof), prof, oracle),
                Variant::Outside => oracle_verify_spne(&OutsideGame(p), prof, oracle),
                Variant::ThreePlayer => oracle_verify_spne(&ThreePlayerGame(p), prof, oracle),
                Variant::TwoPlayerComparison => {
                    oracle_verify_spne(&TwoPlayerLineGame(p), prof, oracle)
                }
            }
        })
        .collect()
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn fmt12(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{}", round12(x))
    }
}

pub const COLUMNS: [&str; 15] = [
    "swept",
    "i_l",
    "i_f",
    "p_l",
    "p_f",
    "n_l",
    "n_f",
    "pi_l",
    "pi_f",
    "degree",
    "eu_resource_cost",
    "tag",
    "oracle",
    "price_lo",
    "price_hi",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub swept: f64,
    pub i_l: f64,
    pub i_f: f64,
    pub p_l: f64,
    pub p_f: f64,
    pub n_l: f64,
    pub n_f: f64,
    pub pi_l: f64,
    pub pi_f: f64,
    pub degree: f64,
    pub eu_resource_cost: f64,
    pub tag: String,
    pub oracle: String,
    pub price_lo: f64,
    pub price_hi: f64,
}

impl ResultRow {
    fn failed(swept: f64, tag: String) -> Self {
        let n = f64::NAN;
        ResultRow {
            swept: round12(swept),
            i_l: n,
            i_f: n,
            p_l: n,
            p_f: n,
            n_l: n,
            n_f: n,
            pi_l: n,
            pi_f: n,
            degree: n,
            eu_resource_cost: n,
            tag,
            oracle: String::new(),
            price_lo: n,
            price_hi: n,
        }
    }

    pub fn from_result(
        swept: f64,
        result: &EquilibriumResult,
        oracle: Option<&[OracleReport]>,
    ) -> Self {
        let Some(e) = result.primary() else {
            return Self::failed(swept, result.tag.as_str().into());
        };
        let verdict = match oracle {
            None => String::new(),
            Some(reports) if reports.first().is_some_and(|r| r.passed()) => "pass".into(),
            Some(_) => "fail".into(),
        };
        let (lo, hi) = e
            .price_interval
            .map_or((f64::NAN, f64::NAN), |iv| (iv.lo, iv.hi));
        ResultRow {
            swept: round12(swept),
            i_l: round12(e.profile.i_l),
            i_f: round12(e.profile.i_f),
            p_l: round12(e.profile.p_l),
            p_f: round12(e.profile.p_f),
            n_l: round12(e.outcome.n_l),
            n_f: round12(e.outcome.n_f),
            pi_l: round12(e.outcome.pi_l),
            pi_f: round12(e.outcome.pi_f),
            degree: round12(e.metrics.degree_of_cooperation),
            eu_resource_cost: round12(e.metrics.eu_resource_cost),
            tag: result.tag.as_str().into(),
            oracle: verdict,
            price_lo: round12(lo),
            price_hi: round12(hi),
        }
    }

    fn record(&self) -> Vec<String> {
        let nums = [
            self.swept,
            self.i_l,
            self.i_f,
            self.p_l,
            self.p_f,
            self.n_l,
            self.n_f,
            self.pi_l,
            self.pi_f,
            self.degree,
            self.eu_resource_cost,
        ];
        let mut out: Vec<String> = nums.iter().map(|&x| fmt12(x)).collect();
        out.push(self.tag.clone());
        out.push(self.oracle.clone());
        out.push(fmt12(self.price_lo));
        out.push(fmt12(self.price_hi));
        out
    }

    fn from_record(rec: &csv::StringRecord) -> Result<Self> {
        let bad = |i: usize| SpneError::Parse {
            line: 0,
            msg: format!("column '{}' is not a number", COLUMNS[i]),
        };
        let num = |i: usize| -> Result<f64> {
            rec.get(i).unwrap_or("").parse::<f64>().map_err(|_| bad(i))
        };
        Ok(ResultRow {
            swept: num(0)?,
            i_l: num(1)?,
            i_f: num(2)?,
            p_l: num(3)?,
            p_f: num(4)?,
            n_l: num(5)?,
            n_f: num(6)?,
            pi_l: num(7)?,
            pi_f: num(8)?,
            degree: num(9)?,
            eu_resource_cost: num(10)?,
            tag: rec.get(11).unwrap_or("").to_string(),
            oracle: rec.get(12).unwrap_or("").to_string(),
            price_lo: num(13)?,
            price_hi: num(14)?,
        })
    }

    pub fn column(&self, name: &str) -> Option<f64> {
        Some(match name {
            "swept" => self.swept,
            "i_l" => self.i_l,
            "i_f" => self.i_f,
            "p_l" => self.p_l,
            "p_f" => self.p_f,
            "n_l" => self.n_l,
            "n_f" => self.n_f,
            "pi_l" => self.pi_l,
            "pi_f" => self.pi_f,
            "degree" => self.degree,
            "eu_resource_cost" => self.eu_resource_cost,
            "price_lo" => self.price_lo,
            "price_hi" => self.price_hi,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub config: Config,
    pub swept_param: String,
    pub lo: f64,
    pub hi: f64,
    pub n_steps: usize,
    pub oracle: Option<OracleConfig>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) || self.n_steps < 2 {
            return Err(SpneError::Validation(
                "sweep needs lo < hi and at least 2 steps".into(),
            ));
        }
        set_param(&mut MarketParams::default(), &self.swept_param, self.lo)
    }

    pub fn values(&self) -> Vec<f64> {
        let h = (self.hi - self.lo) / (self.n_steps - 1) as f64;
        (0..self.n_steps)
            .map(|i| {
                if i + 1 == self.n_steps {
                    self.hi
                } else {
                    self.lo + i as f64 * h
                }
            })
            .collect()
    }
}

fn sweep_row(spec: &SweepSpec, x: f64) -> ResultRow {
    let mut cfg = spec.config;
    if let Err(e) = set_param(&mut cfg.params, &spec.swept_param, x) {
        return ResultRow::failed(x, format!("Error: {e}"));
    }
    let result = match solve(&cfg) {
        Ok(r) => r,
        Err(e) => return ResultRow::failed(x, format!("Error: {e}")),
    };
    let reports = spec.oracle.as_ref().map(|o| verify(&cfg, &result, o));
    match reports {
        Some(Err(e)) => {
            let mut row = ResultRow::from_result(x, &result, None);
            row.oracle = format!("error: {e}");
            row
        }
        Some(Ok(r)) => ResultRow::from_result(x, &result, Some(&r)),
        None => ResultRow::from_result(x, &result, None),
    }
}

/// Reads `SPNE_THREADS`, ignoring unparsable or zero values.
pub fn thread_cap_from_env() -> Option<usize> {
    std::env::var("SPNE_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n: &usize| n > 0)
}

/// One row per grid value, in sweep order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ResultRow>> {
    spec.validate()?;
    let xs = spec.values();
    let work = || {
        xs.par_iter()
            .map(|&x| sweep_row(spec, x))
            .collect::<Vec<_>>()
    };
    match thread_cap_from_env() {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| SpneError::Numeric(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

/// Consecutive grid points where full cooperation gives way to partial cooperation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub last_full: f64,
    pub first_partial: f64,
}

impl Threshold {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.last_full + self.first_partial)
    }
}

pub fn detect_threshold(rows: &[ResultRow]) -> Option<Threshold> {
    let full = |r: &ResultRow| r.degree >= 1.0 - 1e-9;
    rows.windows(2)
        .find(|w| full(&w[0]) && w[1].degree < 1.0 - 1e-9)
        .map(|w| Threshold {
            last_full: w[0].swept,
            first_partial: w[1].swept,
        })
}

/// Header and rows only, handing the writer back.
pub fn write_rows<W: Write>(out: W, rows: &[ResultRow]) -> Result<W> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(COLUMNS)
        .map_err(|e| SpneError::Numeric(e.to_string()))?;
    for r in rows {
        w.write_record(r.record())
            .map_err(|e| SpneError::Numeric(e.to_string()))?;
    }
    w.into_inner()
        .map_err(|e| SpneError::Numeric(e.to_string()))
}

/// Rows followed by a `# threshold` comment line.
pub fn write_csv<W: Write>(out: W, rows: &[ResultRow], swept_param: &str) -> Result<()> {
    let io = |e: std::io::Error| SpneError::Numeric(format!("write failed: {e}"));
    let mut inner = write_rows(out, rows)?;
    match detect_threshold(rows) {
        Some(t) => writeln!(
            inner,
            "# threshold {swept_param} where degree < 1: {} (between {} and {})",
            fmt12(t.midpoint()),
            fmt12(t.last_full),
            fmt12(t.first_partial)
        ),
        None => writeln!(inner, "# threshold {swept_param} where degree < 1: none"),
    }
    .map_err(io)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| SpneError::Parse {
                line: 0,
                msg: e.to_string(),
            })?;
            ResultRow::from_record(&rec)
        })
        .collect()
}

/// A single polyline of `column` against the swept value.
pub fn svg_plot(rows: &[ResultRow], x_label: &str, column: &str) -> Result<String> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.column(column).map(|y| (r.swept, y)))
        .filter(|p| p.0.is_finite() && p.1.is_finite())
        .collect();
    if pts.is_empty() {
        return Err(SpneError::Validation(format!(
            "no finite values in column '{column}'"
        )));
    }
    let (w, h, m) = (640.0, 400.0, 50.0);
    let bounds = |f: fn(&(f64, f64)) -> f64| {
        let lo = pts.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 0.5, hi + 0.5)
        }
    };
    let (x0, x1) = bounds(|p| p.0);
    let (y0, y1) = bounds(|p| p.1);
    let mut poly = String::new();
    for (x, y) in &pts {
        let px = m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
        let py = h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);
        let _ = write!(poly, "{px:.2},{py:.2} ");
    }
    Ok(format!(
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">
<rect width="100%" height="100%" fill="white"/>
<line x1="{m}" y1="{yb}" x2="{xr}" y2="{yb}" stroke="black"/>
<line x1="{m}" y1="{m}" x2="{m}" y2="{yb}" stroke="black"/>
<text x="{xm}" y="{xl}" text-anchor="middle">{x_label} [{x0:.4}, {x1:.4}]</text>
<text x="12" y="{ym}" transform="rotate(-90 12 {ym})" text-anchor="middle">{column} [{y0:.4}, {y1:.4}]</text>
<polyline fill="none" stroke="steelblue" stroke-width="2" points="{pts}"/>
</svg>
"##,
        yb = h - m,
        xr = w - m,
        xm = w / 2.0,
        xl = h - 12.0,
        ym = h / 2.0,
        pts = poly.trim_end(),
    ))
}

/// Exit status for a solve: 0 success, 2 no equilibrium, 3 validation or parse error, 1 otherwise.
pub fn exit_code(result: &Result<EquilibriumResult>) -> i32 {
    match result {
        Ok(r) if r.tag == Tag::NoEquilibrium => 2,
        Ok(_) => 0,
        Err(SpneError::Validation(_)) | Err(SpneError::Parse { .. }) => 3,
        Err(_) => 1,
    }
}
