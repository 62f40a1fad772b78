//! Factorials, the half-integer gamma function and erf.

use std::f64::consts::PI;

/// n! as a float. Overflows to infinity past 170.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// (2k-1)!! with the convention (-1)!! = 1.
pub fn double_factorial_odd(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * (2 * j - 1) as f64)
}

/// Gamma(n/2) for odd n, via Gamma(k + 1/2) = (2k-1)!! sqrt(pi) / 2^k.
pub fn gamma_half_odd(n: usize) -> f64 {
    assert!(n % 2 == 1, "gamma_half_odd needs an odd argument, got {n}");
    let k = (n - 1) / 2;
    double_factorial_odd(k) * PI.sqrt() / 2f64.powi(k as i32)
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// 2^n n!, the squared norm of H_n in the unit-weight space.
pub fn h_norm_sq(n: usize) -> f64 {
    2f64.powi(n as i32) * factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_half_values() {
        assert_relative_eq!(gamma_half_odd(1), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half_odd(3), PI.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(
            gamma_half_odd(7),
            15.0 * PI.sqrt() / 8.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_relative_eq!(ln_factorial(20), factorial(20).ln(), max_relative = 1e-14);
        assert_eq!(double_factorial_odd(0), 1.0);
        assert_eq!(double_factorial_odd(4), 105.0);
    }

    #[test]
    fn erf_symmetry() {
        for &x in &[0.1, 0.7, 2.3] {
            assert_relative_eq!(erf(-x), -erf(x), max_relative = 1e-15);
            assert_relative_eq!(erf(x) + erfc(x), 1.0, max_relative = 1e-15);
        }
    }
}
