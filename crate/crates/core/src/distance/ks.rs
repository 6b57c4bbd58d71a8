use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Two-sample Kolmogorov–Smirnov statistic: the largest gap between the
/// empirical CDFs of `a` and `b`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument(
            "KS statistic needs two non-empty samples".into(),
        ));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::InvalidArgument("KS sample contains NaN".into()));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap_or(Ordering::Equal));
    ys.sort_by(|p, q| p.partial_cmp(q).unwrap_or(Ordering::Equal));
    Ok(ks_sorted(&xs, &ys))
}

/// KS statistic for samples that are already sorted ascending.
pub fn ks_sorted(xs: &[f64], ys: &[f64]) -> f64 {
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut sup: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        // step past every copy of v in both samples before comparing
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        sup = sup.max((i as f64 / n - j as f64 / m).abs());
    }
    sup
}
