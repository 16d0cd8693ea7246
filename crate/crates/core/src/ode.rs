//! Classical fixed-step fourth-order Runge–Kutta for small dense systems.

use nalgebra::SVector;

/// Advances `y' = f(t, y)` by one step of size `h`.
pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &SVector<f64, N>, h: f64) -> SVector<f64, N>
where
    F: Fn(f64, &SVector<f64, N>) -> SVector<f64, N>,
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &(y + k1 * (0.5 * h)));
    let k3 = f(t + 0.5 * h, &(y + k2 * (0.5 * h)));
    let k4 = f(t + h, &(y + k3 * h));
    y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// Integrates from `t0` to `t_end` with steps of at most `h`; the last step is
/// shortened to land exactly on `t_end`. Returns every sample including the
/// initial state.
pub fn integrate<const N: usize, F>(
    f: F,
    t0: f64,
    y0: SVector<f64, N>,
    t_end: f64,
    h: f64,
) -> Vec<(f64, SVector<f64, N>)>
where
    F: Fn(f64, &SVector<f64, N>) -> SVector<f64, N>,
{
    assert!(h > 0.0, "step size must be positive");
    let steps = ((t_end - t0) / h).ceil().max(0.0) as usize;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push((t0, y));
    for i in 0..steps {
        let t = t0 + i as f64 * h;
        let t_next = if i + 1 == steps { t_end } else { t0 + (i + 1) as f64 * h };
        y = rk4_step(&f, t, &y, t_next - t);
        out.push((t_next, y));
    }
    out
}
