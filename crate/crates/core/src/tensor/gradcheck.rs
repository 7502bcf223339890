//! Central finite-difference comparison against tape gradients.

use crate::error::{shape_err, Result};
use crate::tensor::{Array2, NodeId, Tape};

/// Step used for central differences.
pub const FD_STEP: f64 = 1e-5;

/// Gradients smaller than this are compared absolutely rather than relatively.
pub const REL_ERROR_FLOOR: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct ParamError {
    pub name: String,
    pub max_rel_error: f64,
    /// Flat index of the worst element.
    pub worst_index: usize,
    pub analytic: f64,
    pub numeric: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradCheckReport {
    pub tolerance: f64,
    pub max_rel_error: f64,
    pub checked: usize,
    pub per_param: Vec<ParamError>,
    pub passed: bool,
}

impl GradCheckReport {
    pub fn worst(&self) -> Option<&ParamError> {
        self.per_param
            .iter()
            .max_by(|a, b| a.max_rel_error.total_cmp(&b.max_rel_error))
    }
}

pub fn relative_error(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(REL_ERROR_FLOOR)
}

fn loss_at<F>(build: &F, params: &[Array2]) -> Result<f64>
where
    F: Fn(&mut Tape, &[NodeId]) -> Result<NodeId>,
{
    let mut tape = Tape::new();
    let ids: Vec<NodeId> = params.iter().map(|p| tape.variable(p.clone())).collect();
    let loss = build(&mut tape, &ids)?;
    tape.value(loss).item()
}

/// Tape gradients of the scalar produced by `build` with respect to `params`.
pub fn analytic_gradients<F>(params: &[Array2], build: &F) -> Result<(f64, Vec<Array2>)>
where
    F: Fn(&mut Tape, &[NodeId]) -> Result<NodeId>,
{
    let mut tape = Tape::new();
    let ids: Vec<NodeId> = params.iter().map(|p| tape.variable(p.clone())).collect();
    let loss = build(&mut tape, &ids)?;
    let value = tape.value(loss).item()?;
    let mut grads = tape.backward(loss)?;
    Ok((value, ids.into_iter().map(|id| grads.take(id)).collect()))
}

/// Compares `analytic` against central differences of `build`, parameter by
/// parameter.
pub fn compare_gradients<F>(
    names: &[String],
    params: &[Array2],
    analytic: &[Array2],
    build: &F,
    tolerance: f64,
) -> Result<GradCheckReport>
where
    F: Fn(&mut Tape, &[NodeId]) -> Result<NodeId>,
{
    if names.len() != params.len() || analytic.len() != params.len() {
        return shape_err(
            "grad-check",
            format!(
                "{} names, {} params, {} gradients",
                names.len(),
                params.len(),
                analytic.len()
            ),
        );
    }
    let mut work = params.to_vec();
    let mut per_param = Vec::with_capacity(params.len());
    let mut checked = 0;
    for (p, name) in names.iter().enumerate() {
        if analytic[p].shape() != params[p].shape() {
            return shape_err("grad-check", format!("gradient of `{name}` has wrong shape"));
        }
        let mut worst = ParamError {
            name: name.clone(),
            max_rel_error: 0.0,
            worst_index: 0,
            analytic: 0.0,
            numeric: 0.0,
        };
        for j in 0..params[p].len() {
            let original = work[p].data()[j];
            work[p].data_mut()[j] = original + FD_STEP;
            let plus = loss_at(build, &work)?;
            work[p].data_mut()[j] = original - FD_STEP;
            let minus = loss_at(build, &work)?;
            work[p].data_mut()[j] = original;

            let numeric = (plus - minus) / (2.0 * FD_STEP);
            let a = analytic[p].data()[j];
            let err = relative_error(a, numeric);
            if err > worst.max_rel_error || !err.is_finite() {
                worst = ParamError {
                    name: name.clone(),
                    max_rel_error: err,
                    worst_index: j,
                    analytic: a,
                    numeric,
                };
            }
            checked += 1;
        }
        per_param.push(worst);
    }
    let max_rel_error =
        per_param
            .iter()
            .map(|e| e.max_rel_error)
            .fold(0.0_f64, |m, e| if e.is_nan() { f64::INFINITY } else { m.max(e) });
    Ok(GradCheckReport {
        tolerance,
        max_rel_error,
        checked,
        passed: max_rel_error < tolerance,
        per_param,
    })
}

/// Runs backward on the graph from `build` and checks it against finite
/// differences.
pub fn grad_check<F>(names: &[String], params: &[Array2], build: F, tolerance: f64) -> Result<GradCheckReport>
where
    F: Fn(&mut Tape, &[NodeId]) -> Result<NodeId>,
{
    let (_, analytic) = analytic_gradients(params, &build)?;
    compare_gradients(names, params, &analytic, &build, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{i}")).collect()
    }

    #[test]
    fn linear_graph_is_exact() {
        let w = Array2::from_rows(&[&[0.5, -1.0], &[2.0, 0.25]]);
        let x = Array2::row(vec![1.5, -0.5]);
        let report = grad_check(
            &names(2),
            &[w, x],
            |t, p| {
                let y = t.matmul(p[1], p[0])?;
                t.sum(y)
            },
            1e-8,
        )
        .unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.max_rel_error < 1e-8);
        assert_eq!(report.checked, 6);
    }

    #[test]
    fn corrupted_gradient_fails() {
        let x = Array2::row(vec![0.3, -0.7, 1.1]);
        let build = |t: &mut Tape, p: &[NodeId]| {
            let s = t.tanh(p[0])?;
            let q = t.square(s)?;
            t.sum(q)
        };
        let (_, mut analytic) = analytic_gradients(std::slice::from_ref(&x), &build).unwrap();
        analytic[0].data_mut()[1] += 0.05;
        let report = compare_gradients(&names(1), &[x], &analytic, &build, 1e-4).unwrap();
        assert!(!report.passed);
        assert_eq!(report.worst().unwrap().worst_index, 1);
    }
}
