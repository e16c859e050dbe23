//! Adaptive Simpson quadrature.

/// Relative tolerance used for conduction integrals.
pub const DEFAULT_REL_TOL: f64 = 1e-6;
/// Maximum bisection depth below the initial panel.
pub const DEFAULT_MAX_DEPTH: u32 = 20;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fb: f64) -> Self {
        let m = 0.5 * (a + b);
        let fm = f(m);
        Self {
            a,
            b,
            fa,
            fm,
            fb,
            whole: simpson(a, b, fa, fm, fb),
        }
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrates `f` over `[a, b]` with adaptive Simpson refinement.
///
/// `rel_tol` is measured against the running estimate of `|∫f|`; each panel
/// accepts when the Richardson error estimate drops below its share of the
/// absolute budget. Returns 0 for an empty interval and the negated integral
/// when `a > b`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, max_depth: u32) -> f64 {
    if a == b {
        return 0.0;
    }
    if a > b {
        return -adaptive_simpson(f, b, a, rel_tol, max_depth);
    }
    let root = Panel::new(&f, a, b, f(a), f(b));
    // Coarse magnitude estimate for converting rel_tol into an absolute budget.
    let scale = root.whole.abs().max(f64::MIN_POSITIVE);
    refine(&f, root, rel_tol * scale, max_depth)
}

fn refine<F: Fn(f64) -> f64>(f: &F, p: Panel, abs_tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (p.a + p.b);
    let left = Panel::new(f, p.a, m, p.fa, p.fm);
    let right = Panel::new(f, m, p.b, p.fm, p.fb);
    let delta = left.whole + right.whole - p.whole;
    if depth == 0 || delta.abs() <= 15.0 * abs_tol {
        return left.whole + right.whole + delta / 15.0;
    }
    refine(f, left, abs_tol / 2.0, depth - 1) + refine(f, right, abs_tol / 2.0, depth - 1)
}
