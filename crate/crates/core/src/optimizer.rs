//! Nelder–Mead simplex minimization.
//!
//! The simplex routine works in any dimension; the public entry points are
//! scalar because every objective in this crate has a single angle.

use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NelderMeadConfig {
    pub initial_point: f64,
    pub initial_step: f64,
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    pub f_tolerance: f64,
    pub x_tolerance: f64,
    pub max_evaluations: usize,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self {
            initial_point: 0.0,
            initial_step: 0.1,
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            f_tolerance: 1e-10,
            x_tolerance: 1e-10,
            max_evaluations: 500,
        }
    }
}

impl NelderMeadConfig {
    pub fn with_initial_point(self, initial_point: f64) -> Self {
        Self {
            initial_point,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checks: [(bool, &'static str); 8] = [
            (self.initial_point.is_finite(), "initial_point must be finite"),
            (
                self.initial_step.is_finite() && self.initial_step != 0.0,
                "initial_step must be finite and non-zero",
            ),
            (self.reflection > 0.0, "reflection must be > 0"),
            (self.expansion > 1.0, "expansion must be > 1"),
            (
                self.contraction > 0.0 && self.contraction < 1.0,
                "contraction must lie in (0, 1)",
            ),
            (self.shrink > 0.0 && self.shrink < 1.0, "shrink must lie in (0, 1)"),
            (
                self.f_tolerance > 0.0 && self.x_tolerance > 0.0,
                "tolerances must be > 0",
            ),
            (self.max_evaluations >= 1, "max_evaluations must be >= 1"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some(&(_, msg)) => Err(Error::InvalidConfig(msg)),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptimizationResult {
    pub best_point: f64,
    pub best_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

pub fn minimize<F>(f: F, cfg: &NelderMeadConfig) -> Result<OptimizationResult>
where
    F: FnMut(f64) -> f64,
{
    minimize_observed(f, cfg, |_| {})
}

/// Like [`minimize`], calling `observer` with the best simplex value after
/// every iteration.
pub fn minimize_observed<F, O>(mut f: F, cfg: &NelderMeadConfig, observer: O) -> Result<OptimizationResult>
where
    F: FnMut(f64) -> f64,
    O: FnMut(f64),
{
    let run = nelder_mead(|x: &[f64]| f(x[0]), &[cfg.initial_point], cfg, observer)?;
    Ok(OptimizationResult {
        best_point: run.point[0],
        best_value: run.value,
        evaluations: run.evaluations,
        converged: run.converged,
    })
}

/// Runs [`minimize`] from each start and keeps the lowest result (the first
/// one on ties).
pub fn minimize_multistart<F>(
    mut f: F,
    cfg: &NelderMeadConfig,
    starts: &[f64],
) -> Result<OptimizationResult>
where
    F: FnMut(f64) -> f64,
{
    let mut best: Option<OptimizationResult> = None;
    for &start in starts {
        let result = minimize(&mut f, &cfg.with_initial_point(start))?;
        if best.map_or(true, |b| result.best_value < b.best_value) {
            best = Some(result);
        }
    }
    best.ok_or(Error::NoStartingPoints)
}

pub(crate) struct Run {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Budgeted<F> {
    f: F,
    used: usize,
    max: usize,
}

impl<F: FnMut(&[f64]) -> f64> Budgeted<F> {
    /// `Ok(None)` once the budget is spent.
    fn eval(&mut self, x: &[f64]) -> Result<Option<f64>> {
        if self.used >= self.max {
            return Ok(None);
        }
        self.used += 1;
        let value = (self.f)(x);
        if !value.is_finite() {
            return Err(Error::NonFiniteObjective {
                point: x.to_vec(),
                value,
            });
        }
        Ok(Some(value))
    }
}

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Standard Nelder–Mead. Converged when both the value spread and the
/// simplex width (max coordinate distance from the best vertex) fall below
/// their tolerances.
pub(crate) fn nelder_mead<F, O>(
    f: F,
    x0: &[f64],
    cfg: &NelderMeadConfig,
    mut observer: O,
) -> Result<Run>
where
    F: FnMut(&[f64]) -> f64,
    O: FnMut(f64),
{
    cfg.validate()?;
    let n = x0.len();
    let mut obj = Budgeted {
        f,
        used: 0,
        max: cfg.max_evaluations,
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let first = obj.eval(x0)?.expect("budget >= 1");
    simplex.push((x0.to_vec(), first));
    let mut converged = false;

    'search: {
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += cfg.initial_step;
            match obj.eval(&x)? {
                Some(v) => simplex.push((x, v)),
                None => break 'search,
            }
        }

        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            observer(simplex[0].1);

            let spread = simplex[n].1 - simplex[0].1;
            let width = simplex[1..]
                .iter()
                .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| libm::fabs(a - b)))
                .fold(0.0, f64::max);
            if spread < cfg.f_tolerance && width < cfg.x_tolerance {
                converged = true;
                break 'search;
            }

            let mut centroid = alloc::vec![0.0; n];
            for (x, _) in &simplex[..n] {
                centroid.iter_mut().zip(x).for_each(|(c, xi)| *c += xi / n as f64);
            }
            let (worst_x, worst_v) = simplex[n].clone();
            let second_worst = simplex[n - 1].1;
            let best = simplex[0].1;

            let xr = lerp(&centroid, &worst_x, -cfg.reflection);
            let Some(fr) = obj.eval(&xr)? else { break 'search };

            if fr < best {
                let xe = lerp(&centroid, &xr, cfg.expansion);
                let Some(fe) = obj.eval(&xe)? else {
                    simplex[n] = (xr, fr);
                    break 'search;
                };
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < second_worst {
                simplex[n] = (xr, fr);
                continue;
            }

            let outside = fr < worst_v;
            let xc = if outside {
                lerp(&centroid, &xr, cfg.contraction)
            } else {
                lerp(&centroid, &worst_x, cfg.contraction)
            };
            let Some(fc) = obj.eval(&xc)? else {
                if outside {
                    simplex[n] = (xr, fr);
                }
                break 'search;
            };
            if (outside && fc <= fr) || (!outside && fc < worst_v) {
                simplex[n] = (xc, fc);
                continue;
            }

            let anchor = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x = lerp(&anchor, &vertex.0, cfg.shrink);
                let Some(v) = obj.eval(&x)? else { break 'search };
                *vertex = (x, v);
            }
        }
    }

    let (point, value) = simplex
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("simplex holds the initial point");
    Ok(Run {
        point,
        value,
        evaluations: obj.used,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::vec;

    #[test]
    fn quadratic_bowl() {
        let r = minimize(|x| (x - 2.0) * (x - 2.0), &NelderMeadConfig::default()).unwrap();
        assert!(r.converged);
        assert_abs_diff_eq!(r.best_point, 2.0, epsilon = 1e-6);
        assert!(r.evaluations <= 500);
    }

    #[test]
    fn sinusoid_minimum() {
        let (ci, cz, cx) = (-1.03241, 0.84090, 0.179005);
        let f = |t: f64| ci + cz * (2.0 * t).cos() + cx * (2.0 * t).sin();
        let r = minimize(f, &NelderMeadConfig::default()).unwrap();
        assert_abs_diff_eq!(r.best_value, ci - (cz * cz + cx * cx).sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn single_evaluation_budget() {
        let cfg = NelderMeadConfig {
            max_evaluations: 1,
            initial_point: 1.0,
            ..Default::default()
        };
        let r = minimize(|x| x * x, &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.evaluations, 1);
        assert_eq!(r.best_point, 1.0);
    }

    #[test]
    fn budget_exhaustion_keeps_best_seen() {
        let cfg = NelderMeadConfig {
            max_evaluations: 7,
            initial_point: 5.0,
            ..Default::default()
        };
        let mut seen = vec![];
        let r = minimize(
            |x| {
                seen.push(x * x);
                x * x
            },
            &cfg,
        )
        .unwrap();
        assert!(!r.converged);
        assert_eq!(r.evaluations, 7);
        assert_eq!(r.best_value, seen.iter().cloned().fold(f64::INFINITY, f64::min));
    }

    #[test]
    fn non_finite_objective_reports_point() {
        let err = minimize(|x| if x > 0.05 { f64::NAN } else { x }, &NelderMeadConfig::default())
            .unwrap_err();
        match err {
            Error::NonFiniteObjective { point, value } => {
                assert!(value.is_nan());
                assert!(point[0] > 0.05);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_configs() {
        let base = NelderMeadConfig::default();
        for cfg in [
            NelderMeadConfig { reflection: 0.0, ..base },
            NelderMeadConfig { expansion: 1.0, ..base },
            NelderMeadConfig { contraction: 1.0, ..base },
            NelderMeadConfig { shrink: 0.0, ..base },
            NelderMeadConfig { f_tolerance: 0.0, ..base },
            NelderMeadConfig { max_evaluations: 0, ..base },
            NelderMeadConfig { initial_step: 0.0, ..base },
        ] {
            assert!(matches!(minimize(|x| x, &cfg), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn multistart() {
        let cfg = NelderMeadConfig::default();
        let f = |x: f64| x * x - 0.3 * x;
        assert_eq!(
            minimize_multistart(f, &cfg, &[0.7]).unwrap(),
            minimize(f, &cfg.with_initial_point(0.7)).unwrap()
        );
        // Two basins: a shallow one near -2 and a deeper one near +2.
        let two = |x: f64| (x * x - 4.0).powi(2) - x;
        let local = minimize(two, &cfg.with_initial_point(-2.0)).unwrap();
        let global = minimize_multistart(two, &cfg, &[-2.0, 2.0]).unwrap();
        assert!(local.best_point < 0.0);
        assert!(global.best_point > 0.0);
        assert!(global.best_value < local.best_value);
        assert_eq!(minimize_multistart(f, &cfg, &[]), Err(Error::NoStartingPoints));
    }

    #[test]
    fn two_dimensional_rosenbrock() {
        let cfg = NelderMeadConfig {
            max_evaluations: 5000,
            initial_step: 0.5,
            ..Default::default()
        };
        let run = nelder_mead(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            &cfg,
            |_| {},
        )
        .unwrap();
        assert!(run.converged);
        assert_abs_diff_eq!(run.point[0], 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(run.point[1], 1.0, epsilon = 1e-6);
    }
}
