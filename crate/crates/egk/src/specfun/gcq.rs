//! Gauss-Chebyshev quadrature rule on (0, 1) with the closed-form weights
//! `w_n = (pi/2N) sin((2n-1)pi/2N)` and nodes `x_n = 1/2 + cos((2n-1)pi/2N)/2`.

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct GcqRule {
    weights: Vec<f64>,
    nodes: Vec<f64>,
}

/// Build the N-point rule.
pub fn gcq_rule(n: usize) -> Result<GcqRule> {
    if n == 0 {
        return Err(Error::InvalidParameter("GCQ rule requires N >= 1".into()));
    }
    let nf = n as f64;
    let mut weights = Vec::with_capacity(n);
    let mut nodes = Vec::with_capacity(n);
    for k in 1..=n {
        let theta = (2 * k - 1) as f64 * std::f64::consts::PI / (2.0 * nf);
        weights.push(std::f64::consts::PI / (2.0 * nf) * theta.sin());
        nodes.push(0.5 + 0.5 * theta.cos());
    }
    Ok(GcqRule { weights, nodes })
}

impl GcqRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Approximate `int_0^1 f(v) dv`.
    pub fn integrate_unit<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.weights
            .iter()
            .zip(&self.nodes)
            .map(|(&w, &x)| w * f(x))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_rule() {
        let r = gcq_rule(1).unwrap();
        assert!((r.weights()[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((r.nodes()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_node_rule_first_entry() {
        let r = gcq_rule(2).unwrap();
        let w = std::f64::consts::FRAC_PI_4 * (std::f64::consts::FRAC_PI_4).sin();
        let x = 0.5 + 0.5 * (std::f64::consts::FRAC_PI_4).cos();
        assert!((r.weights()[0] - w).abs() < 1e-15);
        assert!((r.nodes()[0] - x).abs() < 1e-15);
    }

    #[test]
    fn weight_sum_identity_and_limit() {
        // sum_n w_n = (pi/2N) / sin(pi/2N): equals pi/2 at N = 1 and tends to 1,
        // the measure of (0,1).
        for &n in &[1usize, 7, 30, 400] {
            let r = gcq_rule(n).unwrap();
            let total: f64 = r.integrate_unit(|_| 1.0);
            let t = std::f64::consts::PI / (2.0 * n as f64);
            assert!((total - t / t.sin()).abs() < 1e-13, "N={n}: {total}");
        }
        let total = gcq_rule(2000).unwrap().integrate_unit(|_| 1.0);
        assert!((total - 1.0).abs() < 1e-6, "got {total}");
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(gcq_rule(0).is_err());
    }
}
