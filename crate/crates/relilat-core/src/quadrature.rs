//! Adaptive Gauss-Kronrod quadrature (7-15 pair) on finite intervals, plus a
//! rational change of variables for tails to infinity.
//!
//! The integrands here are survival curves: bounded, piecewise smooth once
//! the caller splits at their kinks, decaying at infinity. A 15-point Kronrod
//! rule with the embedded 7-point Gauss estimate for the error, driven by a
//! worst-interval-first heap, is more than enough; nodes are interior, so
//! integrands never get evaluated at interval endpoints or at the mapped
//! infinity.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;
use core::fmt;
// Resolves float methods under no_std; redundant (hence allowed) with std.
#[allow(unused_imports)]
use num_traits::Float;

/// Positive 15-point Kronrod nodes on [-1, 1] (symmetric; index 0 is the
/// center). Gauss nodes are the even-index entries.
const KRONROD_NODES: [f64; 8] = [
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

/// Weights of the embedded 7-point Gauss rule, for nodes 0, 2, 4, 6.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum QuadratureError {
    /// The subdivision budget ran out before the tolerance was met; the best
    /// value so far and its error estimate are carried along.
    Nonconvergence { value: f64, error: f64 },
    /// The transformed tail integrand does not vanish near infinity.
    DivergentTail { at: f64, magnitude: f64 },
}

impl fmt::Display for QuadratureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadratureError::Nonconvergence { value, error } => {
                write!(f, "quadrature did not converge (value {value}, error estimate {error})")
            }
            QuadratureError::DivergentTail { at, magnitude } => {
                write!(f, "tail integrand is still {magnitude} near t = {at}; integral diverges")
            }
        }
    }
}

impl core::error::Error for QuadratureError {}

/// A converged integral with its error estimate and work counter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

/// One 15-point Kronrod evaluation on [a, b] with the embedded Gauss error
/// estimate.
fn kronrod15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = KRONROD_WEIGHTS[0] * fc;
    let mut gauss = GAUSS_WEIGHTS[0] * fc;
    for j in 1..8 {
        let offset = half * KRONROD_NODES[j];
        let pair = f(center - offset) + f(center + offset);
        kronrod += KRONROD_WEIGHTS[j] * pair;
        if j % 2 == 0 {
            gauss += GAUSS_WEIGHTS[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates f over [a, b] to the requested absolute tolerance, splitting
/// the worst segment until the summed error estimates fit. `max_subdivisions`
/// bounds the number of splits.
pub fn integrate(
    f: &mut impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureOutcome, QuadratureError> {
    debug_assert!(a.is_finite() && b.is_finite() && a <= b);
    if a == b {
        return Ok(QuadratureOutcome { value: 0.0, error: 0.0, subdivisions: 0 });
    }
    let (value, error) = kronrod15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total_value = value;
    let mut total_error = error;
    let mut subdivisions = 0usize;
    while total_error > abs_tol {
        if subdivisions >= max_subdivisions {
            return Err(QuadratureError::Nonconvergence {
                value: total_value,
                error: total_error,
            });
        }
        let worst = heap.pop().expect("heap holds all current segments");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval collapsed to adjacent floats; cannot refine further.
            return Err(QuadratureError::Nonconvergence {
                value: total_value,
                error: total_error,
            });
        }
        let (lv, le) = kronrod15(f, worst.a, mid);
        let (rv, re) = kronrod15(f, mid, worst.b);
        total_value += lv + rv - worst.value;
        total_error += le + re - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Segment { a: mid, b: worst.b, value: rv, error: re });
        subdivisions += 1;
    }
    // Re-sum from the segments for a tighter value than the incremental one.
    let mut value = 0.0;
    let mut error = 0.0;
    for seg in heap.iter() {
        value += seg.value;
        error += seg.error;
    }
    Ok(QuadratureOutcome { value, error, subdivisions })
}

/// Integrates f over [a, inf) by mapping t = a + u / (1 - u) onto u in
/// [0, 1). Before integrating, the transformed integrand is probed near
/// u = 1; if it has not decayed there the integral is declared divergent
/// rather than silently truncated.
pub fn integrate_tail(
    f: &mut impl FnMut(f64) -> f64,
    a: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureOutcome, QuadratureError> {
    let mut transformed = |u: f64| {
        let denom = 1.0 - u;
        let fv = f(a + u / denom);
        if fv == 0.0 {
            0.0
        } else {
            fv / (denom * denom)
        }
    };
    let probe_u = 1.0 - 1e-8;
    let probe = transformed(probe_u);
    if probe.abs() > 1e-12 {
        return Err(QuadratureError::DivergentTail {
            at: a + probe_u / (1.0 - probe_u),
            magnitude: probe,
        });
    }
    integrate(&mut transformed, 0.0, 1.0, abs_tol, max_subdivisions)
}
