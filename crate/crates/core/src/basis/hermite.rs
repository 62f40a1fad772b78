//! Hermite polynomials H_n (weight e^{-x^2}) and the modified family
//! V_n(x) = 2^{-n/2} H_n(x / sqrt 2) (weight e^{-x^2/2}), with their closed-form
//! coefficient and inner-product tables.

use crate::special::factorial;

pub const MAX_DEGREE: usize = 200;

fn same_parity(a: usize, b: usize) -> bool {
    a % 2 == b % 2
}

fn sign_of_half(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// H_n(x) by H_{n+1} = 2x H_n - 2n H_{n-1}.
pub fn eval_h(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        if cur.is_infinite() {
            break;
        }
    }
    cur
}

/// V_n(x) by V_{n+1} = x V_n - n V_{n-1}.
pub fn eval_v(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
        if cur.is_infinite() {
            break;
        }
    }
    cur
}

/// H_0(x)..H_n(x).
pub fn eval_h_all(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(2.0 * x);
    }
    for k in 1..n {
        let next = 2.0 * x * out[k] - 2.0 * k as f64 * out[k - 1];
        out.push(next);
    }
    out
}

/// V_0(x)..V_n(x).
pub fn eval_v_all(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(x);
    }
    for k in 1..n {
        let next = x * out[k] - k as f64 * out[k - 1];
        out.push(next);
    }
    out
}

/// c_{n,m}, the scaled monomial coefficient with H_n(x) = n! sum_m c_{n,m} x^m.
pub fn coeff_c(n: usize, m: usize) -> f64 {
    if m > n || !same_parity(n, m) {
        return 0.0;
    }
    let half = (n - m) / 2;
    sign_of_half(half) * 2f64.powi(m as i32) / (factorial(m) * factorial(half))
}

/// Monomial coefficients of H_n, lowest degree first.
pub fn h_monomials(n: usize) -> Vec<f64> {
    let nf = factorial(n);
    (0..=n).map(|m| nf * coeff_c(n, m)).collect()
}

/// (x^m, H_n)_1 in closed form.
pub fn inner_xm_hn(m: usize, n: usize) -> f64 {
    if m < n || !same_parity(m, n) {
        return 0.0;
    }
    let half = (m - n) / 2;
    2f64.powi(n as i32 - m as i32) * factorial(m) / factorial(half)
}

/// (H_m, V_n)_{1/2} in closed form.
pub fn inner_hm_vn_half(m: usize, n: usize) -> f64 {
    if m < n || !same_parity(m, n) {
        return 0.0;
    }
    let half = (m - n) / 2;
    2f64.powi(n as i32) * factorial(m) / factorial(half)
}

/// (H_n, V_m)_1 in closed form.
pub fn inner_hn_vm_one(n: usize, m: usize) -> f64 {
    if m < n || !same_parity(m, n) {
        return 0.0;
    }
    let half = (m - n) / 2;
    sign_of_half(half) * 2f64.powi(n as i32 - m as i32) * factorial(m) / factorial(half)
}

/// Coefficients d_m with V_n = sum_m d_m H_m.
pub fn v_in_h(n: usize) -> Vec<f64> {
    let lead = 2f64.powi(-(n as i32)) * factorial(n);
    (0..=n)
        .map(|m| {
            if !same_parity(n, m) {
                return 0.0;
            }
            let half = (n - m) / 2;
            lead * sign_of_half(half) / (factorial(half) * factorial(m))
        })
        .collect()
}

/// Coefficients e_m with H_n = sum_m e_m V_m.
pub fn h_in_v(n: usize) -> Vec<f64> {
    let nf = factorial(n);
    (0..=n)
        .map(|m| {
            if !same_parity(n, m) {
                return 0.0;
            }
            let half = (n - m) / 2;
            nf * 2f64.powi(m as i32) / (factorial(m) * factorial(half))
        })
        .collect()
}
