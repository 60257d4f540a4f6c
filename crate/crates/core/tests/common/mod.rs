#![allow(dead_code)]

/// Projection onto `{x ≥ 0, Σx = s}` by enumerating supports and keeping
/// the KKT point closest to `y`. Exponential in `y.len()`; for `n ≤ 12`.
pub fn simplex_oracle(y: &[f64], s: f64) -> Vec<f64> {
    let n = y.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 1u32..(1 << n) {
        let inside = |i: usize| mask & (1 << i) != 0;
        let size = (0..n).filter(|&i| inside(i)).count() as f64;
        let theta = ((0..n).filter(|&i| inside(i)).map(|i| y[i]).sum::<f64>() - s) / size;
        let kkt = (0..n).all(|i| {
            if inside(i) {
                y[i] - theta >= -1e-12
            } else {
                y[i] - theta <= 1e-12
            }
        });
        if !kkt {
            continue;
        }
        let x: Vec<f64> = (0..n)
            .map(|i| {
                if inside(i) {
                    (y[i] - theta).max(0.0)
                } else {
                    0.0
                }
            })
            .collect();
        let d: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, x));
        }
    }
    best.expect("KKT point exists").1
}

/// Projection onto `{‖x‖₁ ≤ r}` through the simplex oracle on `|y|`.
pub fn l1_ball_oracle(y: &[f64], r: f64) -> Vec<f64> {
    if y.iter().map(|v| v.abs()).sum::<f64>() <= r {
        return y.to_vec();
    }
    let mags: Vec<f64> = y.iter().map(|v| v.abs()).collect();
    simplex_oracle(&mags, r)
        .into_iter()
        .zip(y)
        .map(|(m, v)| m * v.signum())
        .collect()
}

/// `f(x) = λ‖x‖₁ + ½‖x‖²`.
pub fn elastic_value(x: &[f64], lambda: f64) -> f64 {
    x.iter().map(|v| lambda * v.abs() + 0.5 * v * v).sum()
}

/// `S_λ(v)` componentwise.
pub fn shrink(v: f64, lambda: f64) -> f64 {
    v.signum() * (v.abs() - lambda).max(0.0)
}

/// `D^{x*}(x, y) = f(y) − f(x) − ⟨x*, y − x⟩` for the elastic net.
pub fn elastic_bregman(x: &[f64], x_star: &[f64], y: &[f64], lambda: f64) -> f64 {
    let inner: f64 = x_star
        .iter()
        .zip(y.iter().zip(x))
        .map(|(s, (a, b))| s * (a - b))
        .sum();
    elastic_value(y, lambda) - elastic_value(x, lambda) - inner
}
