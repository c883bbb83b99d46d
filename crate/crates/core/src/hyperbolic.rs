//! Closed-form geometry of a disc in the hyperbolic plane of curvature
//! `-K^2`, and selection of the smallest curvature scale satisfying the two
//! gluing constraints: boundary-interval endpoints far apart, and area
//! concentrated in a thin collar along the boundary.

use crate::error::{Error, Result};
use crate::tree;
use std::f64::consts::PI;

/// Relative tolerance of the curvature bisection.
pub const CURVATURE_TOL: f64 = 1e-9;

/// Default lower bound on the distance between interval endpoints.
pub const DEFAULT_MIN_CHORD: f64 = 0.75;

/// A closed disc of radius `radius` in the hyperbolic plane of curvature
/// `-k*k`, with a collar of width `collar` along its boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscSpec {
    pub k: f64,
    pub radius: f64,
    pub collar: f64,
}

impl DiscSpec {
    pub const DEFAULT_RADIUS: f64 = 0.5;
    pub const DEFAULT_COLLAR: f64 = 0.25;

    /// Disc of radius 1/2 with a 1/4 collar.
    pub fn new(k: f64) -> Result<Self> {
        Self::with_shape(k, Self::DEFAULT_RADIUS, Self::DEFAULT_COLLAR)
    }

    pub fn with_shape(k: f64, radius: f64, collar: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain(format!("curvature scale K must be > 0, got {k}")));
        }
        if !(radius > 0.0) || !(collar > 0.0) || !(collar < radius) {
            return Err(Error::Domain(format!(
                "need 0 < collar < radius, got collar={collar}, radius={radius}"
            )));
        }
        Ok(Self { k, radius, collar })
    }

    /// Area of the concentric sub-disc of radius `rho`:
    /// `2*pi*(cosh(K*rho) - 1)/K^2`.
    pub fn disc_area(&self, rho: f64) -> Result<f64> {
        if !(0.0..=self.radius + 1e-15).contains(&rho) {
            return Err(Error::Domain(format!(
                "rho={rho} outside [0, {}]",
                self.radius
            )));
        }
        Ok(area_of_radius(self.k, rho))
    }

    /// Chord and boundary-arc lengths subtended by a central angle `theta`
    /// between two points on the boundary circle.
    ///
    /// The chord satisfies `cosh(K x) = cosh^2(K r) - sinh^2(K r) cos(theta)`,
    /// evaluated in the equivalent cancellation-free form
    /// `sinh(K x / 2) = sinh(K r) sin(theta / 2)`. The arc is
    /// `theta * sinh(K r) / K`.
    pub fn chord_and_arc(&self, theta: f64) -> Result<(f64, f64)> {
        if !(0.0..=2.0 * PI + 1e-12).contains(&theta) {
            return Err(Error::Domain(format!("theta={theta} outside [0, 2*pi]")));
        }
        let chord = chord_length(self.k, self.radius, theta);
        let arc = theta * stable_sinh(self.k * self.radius) / self.k;
        Ok((chord, arc))
    }

    /// Fraction of the disc area lying inside radius `rho` (outside the
    /// collar when `rho = radius - collar`). Computed as
    /// `(sinh(K rho / 2) / sinh(K r / 2))^2` which is stable for large `K`.
    pub fn inner_area_fraction(&self, rho: f64) -> f64 {
        let a = ln_sinh(self.k * rho / 2.0);
        let b = ln_sinh(self.k * self.radius / 2.0);
        (2.0 * (a - b)).exp()
    }
}

/// `2*pi*(cosh(k*rho) - 1)/k^2`, via `4*pi*sinh(k*rho/2)^2/k^2`.
fn area_of_radius(k: f64, rho: f64) -> f64 {
    let half = k * rho / 2.0;
    if half < 350.0 {
        let s = half.sinh();
        4.0 * PI * s * s / (k * k)
    } else {
        // sinh^2 would overflow; asymptotically 4*sinh(x)^2 = e^(2x) - 2 + ...
        (PI / (k * k)) * (2.0 * half).exp()
    }
}

/// Chord between boundary points subtending angle `theta`:
/// `x = (2/K) asinh(sinh(K r) sin(theta/2))`.
fn chord_length(k: f64, r: f64, theta: f64) -> f64 {
    let s = (theta / 2.0).sin().max(0.0);
    if s == 0.0 {
        return 0.0;
    }
    let kr = k * r;
    if kr < 300.0 {
        (2.0 / k) * (stable_sinh(kr) * s).asinh()
    } else {
        // log-domain: asinh(y) = ln(2y) + O(y^-2) for large y
        let ln_y = ln_sinh(kr) + s.ln();
        if ln_y > 20.0 {
            (2.0 / k) * (ln_y + std::f64::consts::LN_2)
        } else {
            (2.0 / k) * ln_y.exp().asinh()
        }
    }
}

fn stable_sinh(x: f64) -> f64 {
    x.sinh()
}

/// `ln(sinh(t))` without overflow for large `t`.
fn ln_sinh(t: f64) -> f64 {
    if t <= 0.0 {
        f64::NEG_INFINITY
    } else if t < 20.0 {
        t.sinh().ln()
    } else {
        t + (-(-2.0 * t).exp()).ln_1p() - std::f64::consts::LN_2
    }
}

/// Both gluing conditions at curvature scale `k` for a tree of height `h`
/// with `2 * n_edges` boundary intervals.
fn conditions_hold(k: f64, n_edges: u64, e_min: f64, mass_fraction: f64) -> bool {
    let spec = match DiscSpec::new(k) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let theta = 2.0 * PI / (2.0 * n_edges as f64);
    let (chord, _) = spec.chord_and_arc(theta).expect("theta in range");
    let inner = spec.inner_area_fraction(spec.radius - spec.collar);
    chord >= e_min && inner <= mass_fraction
}

/// Minimal curvature scale `K` such that, for the disc of radius 1/2 split
/// into `2 N(h)` equal boundary intervals:
///
/// 1. the chord between the endpoints of one interval is at least `e_min`;
/// 2. at most `mass_fraction` of the disc area lies outside the 1/4 collar.
///
/// Found by bisection to relative tolerance [`CURVATURE_TOL`]; both
/// conditions are monotone in `K` (checked by the property tests).
pub fn select_curvature(h: u32) -> Result<f64> {
    let n = tree::edge_count(h);
    select_curvature_with(h, DEFAULT_MIN_CHORD, 1.0 / n as f64)
}

pub fn select_curvature_with(h: u32, e_min: f64, mass_fraction: f64) -> Result<f64> {
    if h < 1 {
        return Err(Error::Domain("tree height must be >= 1".into()));
    }
    if !(mass_fraction > 0.0) {
        return Err(Error::Domain("mass fraction must be positive".into()));
    }
    let diameter = 2.0 * DiscSpec::DEFAULT_RADIUS;
    if e_min >= diameter {
        return Err(Error::Infeasible(format!(
            "chord between interval endpoints is < {diameter} for every K, \
             cannot reach e_min={e_min}"
        )));
    }
    let n = tree::edge_count(h);
    let mut lo = 1e-6;
    if conditions_hold(lo, n, e_min, mass_fraction) {
        return Ok(lo);
    }
    let mut hi = 1.0;
    while !conditions_hold(hi, n, e_min, mass_fraction) {
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::Infeasible(format!(
                "no curvature below 1e9 satisfies both conditions for h={h}"
            )));
        }
    }
    while hi - lo > CURVATURE_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if conditions_hold(mid, n, e_min, mass_fraction) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
