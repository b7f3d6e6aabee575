//! Interpolation of sampled character values on one residue class.

use crate::error::{Error, Result};
use crate::exactnum::{rat, CycNum, NPoly, Rat};

/// Interpolates `samples` (all `n ≡ p mod r`, strictly increasing) by Newton
/// divided differences in `m = (n - p) / r` and returns the polynomial in `n`.
/// Vanishing top differences give a lower degree.
pub fn fit_polynomial(samples: &[(i64, CycNum)], r: u32, p: u32) -> Result<NPoly> {
    if r == 0 || p >= r {
        return Err(Error::InvalidSamples(format!("residue {p} outside [0, {r})")));
    }
    if samples.len() < 2 {
        return Err(Error::InvalidSamples(format!(
            "need at least 2 samples, got {}",
            samples.len()
        )));
    }
    let r64 = r as i64;
    for w in samples.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::InvalidSamples(format!("duplicate n = {}", w[0].0)));
        }
        if w[0].0 > w[1].0 {
            return Err(Error::InvalidSamples("n values must be increasing".into()));
        }
    }
    if let Some((n, _)) = samples.iter().find(|(n, _)| n.rem_euclid(r64) != p as i64) {
        return Err(Error::InvalidSamples(format!(
            "n = {n} is not congruent to {p} mod {r}"
        )));
    }

    let ms: Vec<i64> = samples.iter().map(|(n, _)| (n - p as i64) / r64).collect();
    let mut table: Vec<CycNum> = samples.iter().map(|(_, v)| v.clone()).collect();
    let mut newton = vec![table[0].clone()];
    for k in 1..samples.len() {
        for i in 0..samples.len() - k {
            let diff = &table[i + 1] - &table[i];
            table[i] = diff.scale(&rat(1, ms[i + k] - ms[i]));
        }
        newton.push(table[0].clone());
    }

    // Horner on the Newton form
    let order = newton.iter().map(CycNum::order).fold(1, num_integer::lcm);
    let mut poly = NPoly::zero(order);
    for (k, c) in newton.iter().enumerate().rev() {
        let factor = NPoly::from_coeffs(1, vec![CycNum::from_int(1, -ms[k]), CycNum::one(1)]);
        poly = &(&poly * &factor) + &NPoly::constant(c.clone());
    }
    Ok(poly.compose_affine(&rat(1, r64), &Rat::new((-(p as i64)).into(), r64.into())))
}
