//! Functions of t named on the command line.

use std::str::FromStr;
use std::sync::Arc;

use tachyon_core::basis::GridFunction;
use tachyon_core::special::erf;

use crate::error::{CliError, CliResult};

pub type Func = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `one`, `t`, `erf`, `tanh`, `gauss`, `cos:XI`, `sin:XI`, `exact:P`,
/// `poly:C0,C1,...` or `csv:PATH` (a `t,value` file, interpolated).
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    One,
    Linear,
    Erf,
    Tanh,
    Gauss,
    Cos(f64),
    Sin(f64),
    Exact(u32),
    Poly(Vec<f64>),
    Csv(String),
}

fn number<T: FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("bad {what} `{s}`"))
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let need = |what: &str| arg.ok_or_else(|| format!("`{head}` needs `{head}:{what}`"));
        Ok(match head {
            "one" => Source::One,
            "t" => Source::Linear,
            "erf" => Source::Erf,
            "tanh" => Source::Tanh,
            "gauss" => Source::Gauss,
            "cos" => Source::Cos(number(need("XI")?, "frequency")?),
            "sin" => Source::Sin(number(need("XI")?, "frequency")?),
            "exact" => {
                let p: u32 = number(need("P")?, "power")?;
                if p < 2 {
                    return Err(format!("exact solution needs p >= 2, got {p}"));
                }
                Source::Exact(p)
            }
            "poly" => Source::Poly(
                need("C0,C1,...")?
                    .split(',')
                    .map(|c| number(c, "coefficient"))
                    .collect::<Result<_, _>>()?,
            ),
            "csv" => Source::Csv(need("PATH")?.to_string()),
            other => return Err(format!("unknown function `{other}`")),
        })
    }
}

impl Source {
    pub fn build(&self) -> CliResult<Func> {
        Ok(match self.clone() {
            Source::One => Arc::new(|_| 1.0),
            Source::Linear => Arc::new(|t| t),
            Source::Erf => Arc::new(erf),
            Source::Tanh => Arc::new(f64::tanh),
            Source::Gauss => Arc::new(|t: f64| (-t * t).exp()),
            Source::Cos(xi) => Arc::new(move |t: f64| (xi * t).cos()),
            Source::Sin(xi) => Arc::new(move |t: f64| (xi * t).sin()),
            Source::Exact(p) => {
                let pf = p as f64;
                let scale = pf.powf(1.0 / (2.0 * (pf - 1.0)));
                Arc::new(move |t: f64| scale * (t * t * (pf - 1.0) / pf).exp())
            }
            Source::Poly(c) => {
                Arc::new(move |t: f64| c.iter().rev().fold(0.0, |acc, &a| acc * t + a))
            }
            Source::Csv(path) => {
                let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
                    path: path.clone().into(),
                    source,
                })?;
                let g = GridFunction::from_csv(&text)?;
                Arc::new(move |t| g.interpolate(t))
            }
        })
    }
}
