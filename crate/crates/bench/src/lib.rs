//! Fixtures shared by the criterion benchmarks.

use gmpa_core::benchfuncs::{BaseFunction, BenchSpec};

/// Unshifted `function` on its default domain.
pub fn plain(function: BaseFunction, dim: usize) -> BenchSpec {
    BenchSpec::new(function, dim).expect("dimension supported")
}

/// Two well-separated samples of size `n`.
pub fn separated_samples(n: usize) -> (Vec<f64>, Vec<f64>) {
    let a = (0..n).map(|i| i as f64 * 0.37).collect();
    let b = (0..n).map(|i| 100.0 + i as f64 * 0.41).collect();
    (a, b)
}
