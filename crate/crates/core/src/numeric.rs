//! Quadratic maximization on an interval, a bounded 1-D maximizer, and grid scans.

use rayon::prelude::*;

use crate::error::{Result, SpneError};

/// `f(x) = a x² + b x + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadratic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Quadratic {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Quadratic { a, b, c }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }

    pub fn vertex(&self) -> f64 {
        -self.b / (2.0 * self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadMax {
    pub argmax: f64,
    pub value: f64,
    /// Both endpoints attain the maximum; `argmax` is then the lower one.
    pub tie: bool,
}

/// Maximum of a quadratic on `[d, e]`.
pub fn quad_max_on_interval(q: Quadratic, d: f64, e: f64) -> QuadMax {
    let at = |x: f64, tie: bool| QuadMax {
        argmax: x,
        value: q.eval(x),
        tie,
    };
    if q.a > 0.0 {
        let mid = 0.5 * (d + e);
        let v = q.vertex();
        if mid == v {
            at(d, true)
        } else if mid < v {
            at(d, false)
        } else {
            at(e, false)
        }
    } else if q.a < 0.0 {
        at(q.vertex().clamp(d, e), false)
    } else if q.b > 0.0 {
        at(e, false)
    } else if q.b < 0.0 {
        at(d, false)
    } else {
        at(d, true)
    }
}

/// A uniform grid on `[lo, hi]`, optionally refined around its best point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
    pub refinement_rounds: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, n_points: usize, refinement_rounds: usize) -> Result<Self> {
        if !(lo < hi) || n_points < 3 {
            return Err(SpneError::Numeric(format!(
                "grid needs lo < hi and n_points >= 3 (lo = {lo}, hi = {hi}, n = {n_points})"
            )));
        }
        Ok(GridSpec {
            lo,
            hi,
            n_points,
            refinement_rounds,
        })
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n_points - 1) as f64
    }

    /// Step after all refinement rounds.
    pub fn final_step(&self) -> f64 {
        let shrink = ((self.n_points - 1) as f64 / 2.0).powi(self.refinement_rounds as i32);
        self.step() / shrink
    }

    fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.hi
        } else {
            self.lo + i as f64 * self.step()
        }
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

fn evaluate<F>(f: &F, grid: &GridSpec) -> Vec<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    (0..grid.n_points)
        .into_par_iter()
        .map(|i| sanitize(f(grid.point(i))))
        .collect()
}

/// Index of the largest value; ties go to the lowest index.
fn best_index(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMax {
    pub argmax: f64,
    pub value: f64,
}

/// Scan a grid, then repeatedly rescan a window of one step around the best point.
pub fn grid_max<F>(f: &F, grid: &GridSpec) -> GridMax
where
    F: Fn(f64) -> f64 + Sync,
{
    let mut g = *grid;
    let mut best = GridMax {
        argmax: g.lo,
        value: f64::NEG_INFINITY,
    };
    for round in 0..=grid.refinement_rounds {
        let values = evaluate(f, &g);
        let i = best_index(&values);
        if values[i] > best.value || round == 0 {
            best = GridMax {
                argmax: g.point(i),
                value: values[i],
            };
        }
        if round == grid.refinement_rounds {
            break;
        }
        let h = g.step();
        let lo = (best.argmax - h).max(grid.lo);
        let hi = (best.argmax + h).min(grid.hi);
        if !(lo < hi) {
            break;
        }
        g = GridSpec {
            lo,
            hi,
            n_points: grid.n_points,
            refinement_rounds: 0,
        };
    }
    best
}

/// Golden-section search for a maximum on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = sanitize(f(x1));
    let mut f2 = sanitize(f(x2));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = sanitize(f(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = sanitize(f(x2));
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    /// All distinct maximizers within relative 1e-9 of the best value, best first.
    pub argmax: Vec<f64>,
    pub value: f64,
}

impl Maximum {
    pub fn is_unique(&self) -> bool {
        self.argmax.len() == 1
    }
}

/// Sharpens an interior maximizer by bisecting on the sign of a central-difference
/// slope. Golden search alone stalls near `sqrt(eps)` because the objective is flat
/// at the top; the slope changes sign crisply.
fn polish<F: Fn(f64) -> f64>(f: &F, x: f64, lo: f64, hi: f64) -> f64 {
    let scale = 1.0 + x.abs();
    let h = 1e-5 * scale;
    let w = 1e-6 * scale;
    let (mut a, mut b) = (x - w, x + w);
    if a - h <= lo || b + h >= hi {
        return x;
    }
    let slope = |z: f64| (f(z + h) - f(z - h)) / (2.0 * h);
    if !(slope(a) > 0.0 && slope(b) < 0.0) {
        return x;
    }
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if slope(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let m = 0.5 * (a + b);
    if sanitize(f(m)) >= sanitize(f(x)) - TIE_RTOL * f(x).abs().max(1e-9) {
        m
    } else {
        x
    }
}

const SCAN_POINTS: usize = 4001;
pub const TIE_RTOL: f64 = 1e-9;

fn expand_upper<F>(f: &F, lo: f64) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let mut hi = if lo > 0.0 { 4.0 * lo } else { lo + 1.0 };
    for _ in 0..60 {
        let grid = GridSpec::new(lo, hi, SCAN_POINTS, 0)?;
        let values = evaluate(f, &grid);
        if best_index(&values) <= SCAN_POINTS / 2 {
            return Ok(hi);
        }
        hi = lo + 2.0 * (hi - lo);
    }
    Err(SpneError::Numeric(
        "bracket expansion failed; objective looks unbounded".into(),
    ))
}

/// Maximize `f` on `[lo, hi]`, or on `[lo, ∞)` when `hi` is `None`.
///
/// Non-finite values are treated as excluded points.
pub fn maximize_1d<F>(f: &F, lo: f64, hi: Option<f64>) -> Result<Maximum>
where
    F: Fn(f64) -> f64 + Sync,
{
    let hi = match hi {
        Some(h) => h,
        None => expand_upper(f, lo)?,
    };
    if hi <= lo {
        let v = sanitize(f(lo));
        if v == f64::NEG_INFINITY {
            return Err(SpneError::Numeric(
                "objective is not finite on the domain".into(),
            ));
        }
        return Ok(Maximum {
            argmax: vec![lo],
            value: v,
        });
    }
    let grid = GridSpec::new(lo, hi, SCAN_POINTS, 0)?;
    let h = grid.step();
    let ys = evaluate(f, &grid);
    let n = ys.len();

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            ys[i].is_finite() && (i == 0 || ys[i] > ys[i - 1]) && (i + 1 == n || ys[i] >= ys[i + 1])
        })
        .collect();
    if peaks.is_empty() {
        return Err(SpneError::Numeric(
            "objective is not finite on the domain".into(),
        ));
    }
    peaks.sort_by(|&a, &b| ys[b].total_cmp(&ys[a]).then(a.cmp(&b)));
    peaks.truncate(64);

    let mut found: Vec<(f64, f64)> = peaks
        .par_iter()
        .map(|&i| {
            let x = grid.point(i);
            let a = (x - h).max(lo);
            let b = (x + h).min(hi);
            let (xr, _) = golden_max(f, a, b);
            let xr = polish(f, xr, lo, hi);
            let vr = sanitize(f(xr));
            let mut cand = vec![(x, ys[i]), (xr, vr)];
            // endpoints are checked exactly since golden search never lands on them
            if i == 0 || a == lo {
                cand.push((lo, sanitize(f(lo))));
            }
            if i + 1 == n || b == hi {
                cand.push((hi, sanitize(f(hi))));
            }
            cand.into_iter().fold(
                (x, f64::NEG_INFINITY),
                |acc, c| if c.1 > acc.1 { c } else { acc },
            )
        })
        .collect();

    let best = found.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let tol = TIE_RTOL * best.abs().max(1e-9);
    found.retain(|p| best - p.1 <= tol);
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut distinct: Vec<(f64, f64)> = Vec::new();
    for p in found {
        match distinct.last_mut() {
            Some(last) if (p.0 - last.0).abs() <= 4.0 * h => {
                if p.1 > last.1 {
                    *last = p;
                }
            }
            _ => distinct.push(p),
        }
    }
    distinct.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.total_cmp(&b.0)));
    Ok(Maximum {
        argmax: distinct.iter().map(|p| p.0).collect(),
        value: best,
    })
}
