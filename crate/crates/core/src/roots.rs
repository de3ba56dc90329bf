//! Floating-point complex root finding (Aberth–Ehrlich iteration).
//!
//! Used for the advisory root-modulus check on polynomials that do not satisfy
//! a functional equation, and for plotting. Exact decisions go through
//! [`crate::weilpoly`].

use num_complex::Complex64;

/// All complex roots of the polynomial with the given coefficients (constant
/// term first). The leading coefficient must be nonzero.
pub fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    assert!(lead != 0.0, "leading coefficient must be nonzero");
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();

    // Fujiwara-style radius for the starting circle
    let radius = (0..n)
        .map(|i| monic[i].abs().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();

    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (val, der) = eval_with_derivative(&monic, z[i]);
            if val == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = val / der;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    // Newton polish
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (val, der) = eval_with_derivative(&monic, *root);
            if der.norm() == 0.0 {
                break;
            }
            let step = val / der;
            if !step.is_finite() {
                break;
            }
            *root -= step;
        }
    }
    z.sort_by(|a, b| a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm())));
    z
}

fn eval_with_derivative(coeffs: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        der = der * x + val;
        val = val * x + c;
    }
    (val, der)
}
