//! Orthogonalization of an almost-invariant sequence with defect tracking.

use super::{is_unit, AlmostInvError};
use crate::groups::{GenMeasure, GroupElem};
use crate::reps::{invariance_defect, Rep, VectorH};

/// Residuals `‖v_m − v̂_m‖` at or below this are degenerate.
pub const PROJECTION_FLOOR: f64 = 1e-8;

/// Defect bookkeeping for one generator at one step.
#[derive(Clone, Debug)]
pub struct StepDefect {
    pub g: GroupElem,
    /// `‖g v_m − v_m‖`.
    pub source: f64,
    /// `‖g w_{k+1} − w_{k+1}‖`.
    pub output: f64,
    /// `(1 − 1/√k)^{-1}(‖g v_m − v_m‖ + 2/√k)`; infinite at `k = 1`.
    pub bound: f64,
}

/// Step `k`: `w_{k+1}` built from `v_m` (both 1-based).
#[derive(Clone, Debug)]
pub struct OrthoStep {
    pub k: usize,
    pub m: usize,
    /// `‖v̂_m‖`, the norm of the projection onto `span(w_1..w_k)`.
    pub projection_norm: f64,
    pub residual_norm: f64,
    pub defects: Vec<StepDefect>,
}

impl OrthoStep {
    pub fn bound_holds(&self) -> bool {
        self.defects.iter().all(|d| d.output <= d.bound)
    }
}

#[derive(Clone, Debug)]
pub struct Orthogonalized {
    pub vectors: Vec<VectorH<f64>>,
    /// Source index (1-based) of each output vector.
    pub sources: Vec<usize>,
    pub steps: Vec<OrthoStep>,
    /// The step whose scan ran out of input, if the run stopped early.
    pub exhausted_at: Option<usize>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram–Schmidt along the sequence: `w_1 = v_1`; at step `k` the first
/// `m` past the previous source with `|⟨v_m, w_i⟩| < 1/k` for all `i ≤ k`
/// yields `w_{k+1} = (v_m − v̂_m)/‖v_m − v̂_m‖`. The run continues until the
/// input is exhausted; with `target = Some(n)` fewer than `n` outputs is an
/// error.
pub fn orthogonalize(
    rep: &Rep<f64>,
    mu: &GenMeasure,
    seq: &[VectorH<f64>],
    target: Option<usize>,
) -> Result<Orthogonalized, AlmostInvError> {
    if seq.is_empty() {
        return Err(AlmostInvError::EmptySequence);
    }
    let mut dense = Vec::with_capacity(seq.len());
    for (i, v) in seq.iter().enumerate() {
        if !is_unit(v) {
            return Err(AlmostInvError::NotUnit(i + 1));
        }
        dense.push(rep.to_dense(v)?);
    }
    let mut ws: Vec<Vec<f64>> = vec![dense[0].clone()];
    let mut sources = vec![1];
    let mut steps = Vec::new();
    let mut exhausted_at = None;
    let limit = target.unwrap_or(usize::MAX);
    while ws.len() < limit {
        let k = ws.len();
        let start = sources[k - 1];
        let threshold = 1.0 / k as f64;
        let found = (start..dense.len()).find(|&i| ws.iter().all(|w| dot(&dense[i], w).abs() < threshold));
        let Some(i) = found else {
            exhausted_at = Some(k);
            break;
        };
        let v = &dense[i];
        let mut r = v.clone();
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for w in &ws {
                let c = dot(&r, w);
                r.iter_mut().zip(w).for_each(|(x, y)| *x -= c * y);
            }
        }
        let residual_norm = dot(&r, &r).sqrt();
        if residual_norm <= PROJECTION_FLOOR {
            return Err(AlmostInvError::DegenerateProjection(i + 1));
        }
        let projection: Vec<f64> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        r.iter_mut().for_each(|x| *x /= residual_norm);

        let v_report = invariance_defect(rep, mu, &seq[i])?;
        let w_report = invariance_defect(rep, mu, &rep.from_dense(&r))?;
        let kf = k as f64;
        let factor = 1.0 - 1.0 / kf.sqrt();
        let defects = v_report
            .defects
            .iter()
            .zip(&w_report.defects)
            .map(|((g, src), (_, out))| StepDefect {
                g: g.clone(),
                source: *src,
                output: *out,
                bound: if factor > 0.0 {
                    (src + 2.0 / kf.sqrt()) / factor
                } else {
                    f64::INFINITY
                },
            })
            .collect();
        steps.push(OrthoStep {
            k,
            m: i + 1,
            projection_norm: dot(&projection, &projection).sqrt(),
            residual_norm,
            defects,
        });
        ws.push(r);
        sources.push(i + 1);
    }
    if let Some(n) = target {
        if ws.len() < n {
            return Err(AlmostInvError::NoAdmissibleIndex(ws.len()));
        }
    }
    Ok(Orthogonalized {
        vectors: ws.iter().map(|w| rep.from_dense(w)).collect(),
        sources,
        steps,
        exhausted_at,
    })
}
