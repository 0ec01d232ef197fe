//! Fixed-order Gauss–Legendre rules on the unit interval.

/// Eight-point Gauss–Legendre abscissae on [0, 1].
#[allow(clippy::excessive_precision)]
const NODES: [f64; 8] = [
    0.019_855_071_751_231_856,
    0.101_666_761_293_186_63,
    0.237_233_795_041_835_5,
    0.408_282_678_752_175_1,
    0.591_717_321_247_824_9,
    0.762_766_204_958_164_5,
    0.898_333_238_706_813_4,
    0.980_144_928_248_768_1,
];

/// Matching weights; they sum to one.
#[allow(clippy::excessive_precision)]
const WEIGHTS: [f64; 8] = [
    0.050_614_268_145_188_13,
    0.111_190_517_226_687_24,
    0.156_853_322_938_943_64,
    0.181_341_891_689_180_99,
    0.181_341_891_689_180_99,
    0.156_853_322_938_943_64,
    0.111_190_517_226_687_24,
    0.050_614_268_145_188_13,
];

/// Nodes and weights of the eight-point rule, mapped to [0, 1].
pub fn unit_rule() -> impl Iterator<Item = (f64, f64)> {
    NODES.into_iter().zip(WEIGHTS)
}

/// Integrates `f` over `[a, b]` with `panels` equal sub-intervals.
pub fn integrate<T, F>(a: f64, b: f64, panels: usize, mut f: F) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    F: FnMut(f64) -> T,
{
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut acc = T::default();
    for k in 0..panels {
        let lo = a + width * k as f64;
        for (s, w) in unit_rule() {
            acc = acc + f(lo + width * s) * (w * width);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_one() {
        let total: f64 = WEIGHTS.iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_degree_fifteen() {
        let val: f64 = integrate(-1.0, 2.0, 1, |x| x.powi(15));
        let exact = (2f64.powi(16) - 1.0) / 16.0;
        assert!((val - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn smooth_integrand_with_panels() {
        let val: f64 = integrate(0.0, std::f64::consts::PI, 4, f64::sin);
        assert!((val - 2.0).abs() < 1e-13);
    }
}
