use crate::error::{OptimError, Result};
use crate::kernels::{binary_mask, uniform_vector};
use crate::problem::{clamp_in_place, Bounds};
use crate::rng::RandomSource;

/// Fish-aggregating-device perturbation over a set of positions.
///
/// Per member, two uniforms `r1`, `r2` pick the branch:
/// * `r1 ≤ r2`: `X += CF·[X_min + R ⊗ (X_max − X_min)] ⊗ U`, `U` a Bernoulli(`fads`) mask;
/// * `r1 > r2`: `X += [fads·(1 − r) + r]·(X_a − X_b)` for two distinct random
///   members `a`, `b` of the input set.
///
/// Differences are taken from the input snapshot, so earlier members'
/// perturbations do not leak into later ones. Results are clamped.
pub fn fads_perturbation(
    positions: &[Vec<f64>],
    bounds: &Bounds,
    fads: f64,
    cf: f64,
    rng: &mut impl RandomSource,
) -> Result<Vec<Vec<f64>>> {
    let n = positions.len();
    if n < 2 {
        return Err(OptimError::PopulationTooSmall { needed: 2, actual: n });
    }
    let d = bounds.dim();
    if let Some(bad) = positions.iter().find(|x| x.len() != d) {
        return Err(OptimError::DimensionMismatch { expected: d, actual: bad.len() });
    }
    let (lo, hi) = (bounds.lower(), bounds.upper());

    let mut out = Vec::with_capacity(n);
    for x in positions {
        let r1 = rng.uniform();
        let r2 = rng.uniform();
        let mut next = x.clone();
        if r1 <= r2 {
            let r = uniform_vector(d, rng)?;
            let mask = binary_mask(d, fads, rng)?;
            for j in 0..d {
                next[j] += cf * (lo[j] + r[j] * (hi[j] - lo[j])) * mask[j];
            }
        } else {
            let r = rng.uniform();
            let a = rng.index(n);
            let mut b = rng.index(n - 1);
            if b >= a {
                b += 1;
            }
            let scale = fads * (1.0 - r) + r;
            for j in 0..d {
                next[j] += scale * (positions[a][j] - positions[b][j]);
            }
        }
        clamp_in_place(&mut next, bounds);
        out.push(next);
    }
    Ok(out)
}
