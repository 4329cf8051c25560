//! Independent numeric backward induction used as a reference in tests.
//!
//! Nothing here calls the library's solvers: payoffs are written out again
//! from the model definitions, prices come from best-response iteration and
//! investments from grid-plus-golden search.
#![allow(dead_code)]

use std::f64::consts::PI;

pub fn golden(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - r * (b - a), a + r * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..120 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Best point of an `n`-point grid, including both ends.
pub fn dense_argmax(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> (f64, f64) {
    (0..n)
        .map(|i| {
            let x = if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            };
            (x, f(x))
        })
        .fold(
            (lo, f64::NEG_INFINITY),
            |acc, p| if p.1 > acc.1 { p } else { acc },
        )
}

/// Grid scan followed by golden refinement around the best grid point.
pub fn search(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> (f64, f64) {
    let (x, v) = dense_argmax(f, lo, hi, n);
    let h = (hi - lo) / (n - 1) as f64;
    let (xr, vr) = golden(f, (x - h).max(lo), (x + h).min(hi));
    if vr > v {
        (xr, vr)
    } else {
        (x, v)
    }
}

/// A two-stage price game `(p_l, p_f) -> (pi_l, pi_f)` solved by best-response iteration.
/// Returns `None` when the iteration does not settle on a mutual best response.
pub fn try_nash_prices(
    pay: &dyn Fn(f64, f64) -> (f64, f64),
    lo: f64,
    hi: f64,
) -> Option<(f64, f64)> {
    let (mut pl, mut pf) = (0.5 * (lo + hi), 0.5 * (lo + hi));
    for _ in 0..80 {
        let nl = search(&|p| pay(p, pf).0, lo, hi, 201).0;
        let nf = search(&|p| pay(nl, p).1, lo, hi, 201).0;
        let done = (nl - pl).abs() + (nf - pf).abs() < 1e-13;
        pl = nl;
        pf = nf;
        if done {
            break;
        }
    }
    let (vl, vf) = pay(pl, pf);
    let bl = dense_argmax(&|p| pay(p, pf).0, lo, hi, 4001).1;
    let bf = dense_argmax(&|p| pay(pl, p).1, lo, hi, 4001).1;
    let tol = 1e-7 * vl.abs().max(vf.abs()).max(1.0);
    (bl <= vl + tol && bf <= vf + tol).then_some((pl, pf))
}

pub fn nash_prices(pay: &dyn Fn(f64, f64) -> (f64, f64), lo: f64, hi: f64) -> (f64, f64) {
    try_nash_prices(pay, lo, hi).expect("price game has no pure equilibrium")
}

#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub s: f64,
    pub gamma: f64,
    pub c: f64,
    pub delta: f64,
}

impl Line {
    pub fn payoff(&self, il: f64, i_f: f64, pl: f64, pf: f64) -> (f64, f64) {
        let x = self.delta + (1.0 - i_f / il) + pf - pl;
        let nl = x.clamp(0.0, 1.0);
        let nf = 1.0 - nl;
        (
            nl * (pl - self.c) + self.s * i_f * i_f - self.gamma * il * il,
            nf * (pf - self.c) - self.s * i_f * i_f,
        )
    }

    pub fn prices(&self, il: f64, i_f: f64) -> (f64, f64) {
        nash_prices(&|a, b| self.payoff(il, i_f, a, b), self.c, self.c + 3.0)
    }

    pub fn lease(&self, il: f64) -> f64 {
        search(
            &|y| {
                let (a, b) = self.prices(il, y);
                self.payoff(il, y, a, b).1
            },
            0.0,
            il,
            41,
        )
        .0
    }

    pub fn leader_value(&self, il: f64) -> f64 {
        let y = self.lease(il);
        let (a, b) = self.prices(il, y);
        self.payoff(il, y, a, b).0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Outside {
    pub s: f64,
    pub gamma: f64,
    pub c: f64,
    pub alpha: f64,
    pub k: f64,
    pub b: f64,
}

impl Outside {
    pub fn payoff(&self, il: f64, i_f: f64, pl: f64, pf: f64) -> (f64, f64) {
        let x = (1.0 - i_f / il) + pf - pl;
        let nl = x.clamp(0.0, 1.0);
        let tl = self.alpha * (nl + self.k - pl + self.b * (il - i_f));
        let tf = self.alpha * (1.0 - nl + self.k - pf + self.b * i_f);
        (
            tl * (pl - self.c) + self.s * i_f * i_f - self.gamma * il * il,
            tf * (pf - self.c) - self.s * i_f * i_f,
        )
    }

    pub fn prices(&self, il: f64, i_f: f64) -> (f64, f64) {
        nash_prices(&|a, b| self.payoff(il, i_f, a, b), self.c, self.c + 3.0)
    }

    pub fn lease(&self, il: f64) -> f64 {
        search(
            &|y| {
                let (a, b) = self.prices(il, y);
                self.payoff(il, y, a, b).1
            },
            0.0,
            il,
            41,
        )
        .0
    }
}

/// Circle with two MNOs moving together and one MVNO between them.
#[derive(Clone, Copy, Debug)]
pub struct Circle {
    pub s: f64,
    pub gamma: f64,
    pub c: f64,
    pub t: f64,
}

impl Circle {
    pub fn payoff(&self, il: f64, i_f: f64, pl: f64, pf: f64) -> (f64, f64) {
        let phi = PI * (i_f + il) / (2.0 * il);
        // MVNO wins the users on both arcs adjacent to it up to the indifferent point
        let x = (phi / 2.0 + (pl - pf) / (2.0 * self.t)).clamp(0.0, phi);
        let mut n_mvno = 2.0 * x;
        if pl - pf >= self.t * phi {
            n_mvno = 2.0 * PI;
        }
        let n_mno = (2.0 * PI - n_mvno) / 2.0;
        (
            n_mno * (pl - self.c) + self.s * i_f * i_f - self.gamma * il * il,
            n_mvno * (pf - self.c) - 2.0 * self.s * i_f * i_f,
        )
    }

    pub fn prices(&self, il: f64, i_f: f64) -> Option<(f64, f64)> {
        let hi = self.c + 3.0 * self.t * PI;
        try_nash_prices(&|a, b| self.payoff(il, i_f, a, b), self.c, hi)
    }

    /// Leases whose price subgame has no pure equilibrium are skipped.
    pub fn lease(&self, il: f64) -> f64 {
        search(
            &|y| match self.prices(il, y) {
                Some((a, b)) => self.payoff(il, y, a, b).1,
                None => f64::NEG_INFINITY,
            },
            0.0,
            il,
            41,
        )
        .0
    }
}

pub fn rng(seed: u64) -> rand::rngs::StdRng {
    use rand::SeedableRng;
    rand::rngs::StdRng::seed_from_u64(seed)
}
