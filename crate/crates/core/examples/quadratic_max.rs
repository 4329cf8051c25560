//! The follower's lease problems reduce to maximizing a quadratic on an interval.

use spne::numeric::{quad_max_on_interval, Quadratic};

fn main() {
    let cases = [
        (
            "concave, vertex inside",
            Quadratic::new(-1.0, 1.0, 0.0),
            0.0,
            2.0,
        ),
        (
            "concave, vertex right of interval",
            Quadratic::new(-1.0, 6.0, 0.0),
            0.0,
            2.0,
        ),
        (
            "convex, right end farther",
            Quadratic::new(1.0, 0.0, 0.0),
            -1.0,
            3.0,
        ),
        (
            "convex, symmetric",
            Quadratic::new(1.0, 0.0, 0.0),
            -1.0,
            1.0,
        ),
        ("linear, falling", Quadratic::new(0.0, -2.0, 1.0), 0.0, 1.0),
        ("constant", Quadratic::new(0.0, 0.0, 3.0), 0.0, 1.0),
    ];
    for (name, q, d, e) in cases {
        let m = quad_max_on_interval(q, d, e);
        let tie = if m.tie { " (both ends tie)" } else { "" };
        println!(
            "{name:<36} on [{d}, {e}]: argmax {:.4}, value {:.4}{tie}",
            m.argmax, m.value
        );
    }
}
