use crate::error::Result;

/// Relative central-difference step.
pub const RELATIVE_STEP: f64 = 1e-6;
/// Step floors: the step is `max(|x|, floor)·RELATIVE_STEP`.
pub const DENSITY_STEP_FLOOR: f64 = 1.0;
pub const TEMPERATURE_STEP_FLOOR: f64 = 1.0;
pub const PRESSURE_STEP_FLOOR: f64 = 1e5;

/// Central difference with one Richardson extrapolation, O(h⁴).
pub fn derivative<F>(mut f: F, x: f64, scale_floor: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let nominal = x.abs().max(scale_floor) * RELATIVE_STEP;
    // Representable steps.
    let h = (x + nominal) - x;
    let h2 = (x + 0.5 * nominal) - x;
    let coarse = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let fine = (f(x + h2)? - f(x - h2)?) / (2.0 * h2);
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Partial derivative of a scalar field along coordinate `axis`.
pub fn partial<F>(mut f: F, point: &[f64], axis: usize, scale_floor: f64) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let mut shifted = point.to_vec();
    derivative(
        |x| {
            shifted[axis] = x;
            f(&shifted)
        },
        point[axis],
        scale_floor,
    )
}
