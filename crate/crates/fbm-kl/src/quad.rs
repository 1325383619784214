//! Gauss-Legendre rules, composite integration, and the weighted trig
//! moments `int_0^1 u^alpha {sin,cos}(omega u) du` that back the Galerkin
//! assembly. The u^alpha factor has unbounded derivatives at u = 0 for
//! alpha < 1, so the first panel is subdivided geometrically toward zero.

/// Gauss-Legendre nodes and weights on [-1, 1].
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the Legendre polynomial P_n.
    pub fn new(points: usize) -> Self {
        assert!(points >= 2);
        let n = points;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Self { nodes, weights }
    }

    pub fn points(&self) -> usize {
        self.nodes.len()
    }

    /// Integrate f over [lo, hi] with a single panel.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> f64 {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite integration over [lo, hi] with uniform panels.
pub fn integrate_composite<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    panels: usize,
    rule: &GaussLegendre,
) -> f64 {
    let h = (hi - lo) / panels as f64;
    (0..panels)
        .map(|j| rule.integrate(&f, lo + j as f64 * h, lo + (j + 1) as f64 * h))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Sin,
    Cos,
}

/// `int_0^1 u^alpha trig(omega u) du`, alpha > -1, omega >= 0.
///
/// Uniform panels sized to the oscillation wavelength; the panel touching
/// u = 0 is split into geometrically shrinking cells so that u^alpha is
/// smooth within every cell actually integrated.
pub fn power_trig_moment(
    alpha: f64,
    omega: f64,
    trig: Trig,
    base_panels: usize,
    rule: &GaussLegendre,
) -> f64 {
    let f = |u: f64| {
        let w = u.powf(alpha);
        match trig {
            Trig::Sin => w * (omega * u).sin(),
            Trig::Cos => w * (omega * u).cos(),
        }
    };
    let panels = base_panels.max((omega / 2.0).ceil() as usize).max(1);
    let h = 1.0 / panels as f64;

    // Geometric grading of the first panel; the remainder below the last
    // cell contributes O((1e-14)^(alpha+1)) and is dropped.
    let mut acc = 0.0;
    let mut hi = h;
    while hi > 1e-14 {
        let lo = 0.5 * hi;
        acc += rule.integrate(f, lo, hi);
        hi = lo;
    }
    for j in 1..panels {
        acc += rule.integrate(f, j as f64 * h, (j + 1) as f64 * h);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gauss_rule_exact_for_polynomials() {
        let rule = GaussLegendre::new(8);
        // degree 15 monomial, exact for an 8-point rule
        let v = rule.integrate(|x| x.powi(14), -1.0, 1.0);
        assert!((v - 2.0 / 15.0).abs() < 1e-14);
        assert!((rule.integrate(|x| x.powi(15), -1.0, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn composite_matches_known_integral() {
        let rule = GaussLegendre::new(12);
        let v = integrate_composite(|x| (10.0 * x).sin(), 0.0, 1.0, 8, &rule);
        assert!((v - (1.0 - (10.0f64).cos()) / 10.0).abs() < 1e-13);
    }

    #[test]
    fn power_moment_closed_forms() {
        let rule = GaussLegendre::new(12);
        // alpha = 1: int u sin(wu) = (sin w - w cos w) / w^2
        for w in [1.0, 7.5, 120.0, 803.0] {
            let got = power_trig_moment(1.0, w, Trig::Sin, 16, &rule);
            let want = (w.sin() - w * w.cos()) / (w * w);
            assert!((got - want).abs() < 1e-14, "w={w}");
        }
        // alpha = 0: int cos(wu) = sin(w)/w
        let got = power_trig_moment(0.0, 31.0, Trig::Cos, 16, &rule);
        assert!((got - (31.0f64).sin() / 31.0).abs() < 1e-14);
    }

    #[test]
    fn power_moment_singular_weight() {
        let rule = GaussLegendre::new(12);
        // omega = 0: int u^alpha du = 1/(alpha+1), alpha fractional
        for alpha in [0.2, 0.6, 1.4] {
            let got = power_trig_moment(alpha, 0.0, Trig::Cos, 16, &rule);
            assert!((got - 1.0 / (alpha + 1.0)).abs() < 1e-13, "alpha={alpha}");
        }
        // cross-check a singular oscillatory case against a fine reference
        let alpha = 0.3;
        let w = 5.0 * PI;
        let got = power_trig_moment(alpha, w, Trig::Sin, 16, &rule);
        let fine = power_trig_moment(alpha, w, Trig::Sin, 512, &GaussLegendre::new(24));
        assert!((got - fine).abs() < 1e-13);
    }
}
