use crate::basis::quadrature::QuadratureRule;
use crate::error::{Error, Result};

/// Exponent alpha of the Gaussian measure sqrt(alpha/pi) e^{-alpha t^2} dt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParam(f64);

impl WeightParam {
    pub const ONE: WeightParam = WeightParam(1.0);
    pub const HALF: WeightParam = WeightParam(0.5);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(WeightParam(alpha))
        } else {
            Err(Error::param(
                "alpha",
                format!("must be positive, got {alpha}"),
            ))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// Weights admissible as the domain of the convolution operator.
    pub fn for_operator(alpha: f64) -> Result<Self> {
        let w = Self::new(alpha)?;
        if alpha >= 2.0 {
            return Err(Error::param(
                "alpha",
                format!("operator domain needs alpha < 2, got {alpha}"),
            ));
        }
        Ok(w)
    }
}

/// (f, g)_alpha by the rule, substituting t = u / sqrt(alpha).
pub fn inner_product<F, G>(f: F, g: G, w: WeightParam, rule: &QuadratureRule) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let s = w.alpha().sqrt();
    rule.mean(|u| {
        let t = u / s;
        f(t) * g(t)
    })
}

pub fn norm_sq<F: Fn(f64) -> f64>(f: F, w: WeightParam, rule: &QuadratureRule) -> f64 {
    let s = w.alpha().sqrt();
    rule.mean(|u| {
        let v = f(u / s);
        v * v
    })
}

pub fn norm<F: Fn(f64) -> f64>(f: F, w: WeightParam, rule: &QuadratureRule) -> f64 {
    norm_sq(f, w, rule).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::hermite::{eval_h, eval_v};
    use crate::basis::quadrature::gauss_hermite_rule;
    use crate::special::{factorial, h_norm_sq};

    #[test]
    fn hermite_norms() {
        let rule = gauss_hermite_rule(64).unwrap();
        for n in 0..=10 {
            let h = inner_product(|t| eval_h(n, t), |t| eval_h(n, t), WeightParam::ONE, &rule);
            assert!((h - h_norm_sq(n)).abs() < 1e-9 * h_norm_sq(n), "n={n}");
            let v = inner_product(|t| eval_v(n, t), |t| eval_v(n, t), WeightParam::HALF, &rule);
            assert!((v - factorial(n)).abs() < 1e-9 * factorial(n), "n={n}");
        }
    }

    #[test]
    fn h2_against_v4() {
        let rule = gauss_hermite_rule(64).unwrap();
        let v = inner_product(|t| eval_h(2, t), |t| eval_v(4, t), WeightParam::ONE, &rule);
        assert!((v + 6.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(WeightParam::new(0.0).is_err());
        assert!(WeightParam::new(f64::NAN).is_err());
        assert!(WeightParam::for_operator(2.0).is_err());
        assert!(WeightParam::for_operator(1.5).is_ok());
    }
}
