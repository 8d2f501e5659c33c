//! Discrete Forman-Ricci flow on edge weights: forward-Euler steps of the
//! short-term, normalized, or counting-curvature (R1) variant, with
//! per-step pruning of vanishing edges, trace recording, and classification
//! of the surviving complex.

use std::collections::HashSet;

use serde::Serialize;

use crate::bloch::{self, Prototype};
use crate::complex::{EdgeId, PolyhedralComplex};
use crate::curvature;
use crate::error::{Error, Result};
use crate::weights::{Strictness, WEIGHT_FLOOR};

/// Which curvature drives the flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowVariant {
    /// Normalized flow on the weighted curvature: γ' = γ − ε·(Ric − R̄ic)·γ.
    Normalized,
    /// Unnormalized short-term flow: γ' = γ − ε·Ric·γ.
    ShortTerm,
    /// Normalized flow driven by the counting edge curvature R1.
    R1,
}

/// Flow parameters. `epsilon` of exactly 0 is tolerated but pointless:
/// convergence detection is disabled and the run walks to `max_iter`
/// unchanged (callers should warn).
#[derive(Clone, Debug)]
pub struct FlowConfig {
    pub variant: FlowVariant,
    /// Step size, non-negative (default 0.1).
    pub epsilon: f64,
    /// Maximum number of steps (default 500).
    pub max_iter: usize,
    /// Edges whose weight falls below this fraction of the maximum weight
    /// are pruned; must lie in (0, 1) (default 0.05).
    pub threshold: f64,
    /// Rescale weights so the maximum is 1 after every step (default true).
    pub renormalize: bool,
    /// Converged when the largest relative weight update ε·max|Ric − R̄ic|
    /// falls below this (default 1e-6).
    pub tol: f64,
    /// Flip the sign of the update term (alternative printed form of the
    /// R1 flow).
    pub flip_sign: bool,
    /// Record a full complex snapshot every this many iterations.
    pub snapshot_every: Option<usize>,
    /// Clamp non-positive updated weights to a floor instead of failing.
    pub strictness: Strictness,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            variant: FlowVariant::Normalized,
            epsilon: 0.1,
            max_iter: 500,
            threshold: 0.05,
            renormalize: true,
            tol: 1e-6,
            flip_sign: false,
            snapshot_every: None,
            strictness: Strictness::Strict,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon < 0.0 {
            return Err(Error::Domain(format!(
                "step size must be non-negative and finite, got {}",
                self.epsilon
            )));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::Domain(format!(
                "prune threshold must lie in (0, 1), got {}",
                self.threshold
            )));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::Domain(format!(
                "convergence tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.snapshot_every == Some(0) {
            return Err(Error::Domain("snapshot interval must be at least 1".into()));
        }
        Ok(())
    }
}

/// Result of one flow step.
#[derive(Clone, Copy, Debug)]
pub struct StepInfo {
    /// Mean curvature over edges before the update.
    pub mean_ric: f64,
    /// Largest relative weight change ε·max|update factor| of the step,
    /// measured before any renormalization.
    pub max_rel_change: f64,
}

fn step_curvatures(c: &PolyhedralComplex, variant: FlowVariant) -> Result<Vec<f64>> {
    match variant {
        FlowVariant::Normalized | FlowVariant::ShortTerm => {
            curvature::ricci_all(c, curvature::CurvatureMode::Weighted)
        }
        FlowVariant::R1 => c
            .edge_ids_iter()
            .map(|e| Ok(bloch::r1(&bloch::edge_aux(c, e)?)))
            .collect(),
    }
}

fn apply_update(
    c: &mut PolyhedralComplex,
    rates: &[f64],
    epsilon: f64,
    renormalize: bool,
    strictness: Strictness,
) -> Result<f64> {
    let mut next: Vec<f64> = Vec::with_capacity(rates.len());
    let mut max_rel = 0.0f64;
    for (e, &rate) in c.edge_ids_iter().zip(rates) {
        let w = c.edge(e).weight;
        max_rel = max_rel.max((epsilon * rate).abs());
        let updated = w - epsilon * rate * w;
        if updated <= 0.0 || !updated.is_finite() {
            match strictness {
                Strictness::Strict => {
                    return Err(Error::DegenerateWeight(format!(
                        "edge {e} weight became {updated} (step too large?)"
                    )))
                }
                Strictness::Lenient => next.push(WEIGHT_FLOOR),
            }
        } else {
            next.push(updated);
        }
    }
    if renormalize {
        let max = next.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // A fixed point stays bit-identical: skip the division when the
        // maximum is already exactly 1.
        if max != 1.0 {
            for w in &mut next {
                *w /= max;
            }
        }
    }
    c.set_edge_weights(&next)?;
    Ok(max_rel)
}

/// One short-term flow step: γ'(e) = γ(e) − ε·Ric(e)·γ(e), weighted
/// curvature recomputed from the current weights.
pub fn flow_step_shortterm(
    c: &mut PolyhedralComplex,
    epsilon: f64,
    strictness: Strictness,
) -> Result<StepInfo> {
    let ric = step_curvatures(c, FlowVariant::ShortTerm)?;
    let mean = ric.iter().sum::<f64>() / ric.len().max(1) as f64;
    let max_rel = apply_update(c, &ric, epsilon, false, strictness)?;
    Ok(StepInfo { mean_ric: mean, max_rel_change: max_rel })
}

/// One normalized flow step: γ'(e) = γ(e) − ε·(Ric(e) − R̄ic)·γ(e), then an
/// optional rescale to maximum weight 1.
pub fn flow_step_normalized(
    c: &mut PolyhedralComplex,
    epsilon: f64,
    renormalize: bool,
    strictness: Strictness,
) -> Result<StepInfo> {
    let ric = step_curvatures(c, FlowVariant::Normalized)?;
    let mean = ric.iter().sum::<f64>() / ric.len().max(1) as f64;
    let rates: Vec<f64> = ric.iter().map(|r| r - mean).collect();
    let max_rel = apply_update(c, &rates, epsilon, renormalize, strictness)?;
    Ok(StepInfo { mean_ric: mean, max_rel_change: max_rel })
}

/// One normalized step driven by the counting edge curvature R1 instead of
/// the weighted curvature. `flip_sign` selects the alternative printed sign,
/// negating the update exactly.
pub fn flow_step_r1(
    c: &mut PolyhedralComplex,
    epsilon: f64,
    renormalize: bool,
    flip_sign: bool,
    strictness: Strictness,
) -> Result<StepInfo> {
    let r1 = step_curvatures(c, FlowVariant::R1)?;
    let mean = r1.iter().sum::<f64>() / r1.len().max(1) as f64;
    let sign = if flip_sign { -1.0 } else { 1.0 };
    let rates: Vec<f64> = r1.iter().map(|r| sign * (r - mean)).collect();
    let max_rel = apply_update(c, &rates, epsilon, renormalize, strictness)?;
    Ok(StepInfo { mean_ric: mean, max_rel_change: max_rel })
}

/// One row of a flow trace: the state at time `t` (after `t` steps).
#[derive(Clone, Debug, Serialize)]
pub struct FlowRow {
    pub t: usize,
    /// Mean curvature at this state; absent once the complex is empty.
    pub mean_ric: Option<f64>,
    pub n_edges: usize,
    pub chi: i64,
}

/// Why a flow run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxIter,
    Empty,
}

/// Full record of a flow run.
#[derive(Clone, Debug)]
pub struct FlowTrace {
    pub rows: Vec<FlowRow>,
    /// Complex snapshots at requested iterations, aligned with row times.
    pub snapshots: Vec<(usize, PolyhedralComplex)>,
    pub termination: Termination,
    /// Surviving complex after a final leaf pruning.
    pub final_complex: PolyhedralComplex,
    /// Euler characteristic of the surviving complex.
    pub final_chi: i64,
    pub prototype: Prototype,
}

/// Run the flow: repeat curvature → convergence check → update → clamp or
/// fail on degenerate weights → optional renormalize → prune edges whose
/// weight falls below `threshold` of the maximum (faces and simplices die
/// with their edges; no re-detection). Rows record the state at each time;
/// the final state is leaf-pruned and classified by its χ.
pub fn run_flow(start: &PolyhedralComplex, config: &FlowConfig) -> Result<FlowTrace> {
    config.validate()?;
    if start.edge_count() == 0 {
        return Err(Error::EmptyInput("flow needs a complex with edges".into()));
    }
    let mut c = start.clone();
    let mut rows = Vec::new();
    let mut snapshots = Vec::new();
    let snap_due =
        |t: usize| config.snapshot_every.map_or(false, |k| t % k == 0);
    let mut t = 0usize;
    let termination = loop {
        let ric = step_curvatures(&c, config.variant)?;
        let mean = ric.iter().sum::<f64>() / ric.len() as f64;
        rows.push(FlowRow {
            t,
            mean_ric: Some(mean),
            n_edges: c.edge_count(),
            chi: bloch::euler_characteristic_comb(&c),
        });
        if snap_due(t) {
            snapshots.push((t, c.clone()));
        }
        // ε = 0 disables convergence detection: the run is a no-op walk.
        if config.epsilon > 0.0 {
            let max_rel = ric
                .iter()
                .map(|r| match config.variant {
                    FlowVariant::ShortTerm => (config.epsilon * r).abs(),
                    _ => (config.epsilon * (r - mean)).abs(),
                })
                .fold(0.0f64, f64::max);
            if max_rel < config.tol {
                break Termination::Converged;
            }
        }
        if t == config.max_iter {
            break Termination::MaxIter;
        }
        t += 1;
        // Update weights in place.
        let rates: Vec<f64> = match config.variant {
            FlowVariant::ShortTerm => ric.clone(),
            FlowVariant::Normalized => ric.iter().map(|r| r - mean).collect(),
            FlowVariant::R1 => {
                let sign = if config.flip_sign { -1.0 } else { 1.0 };
                ric.iter().map(|r| sign * (r - mean)).collect()
            }
        };
        apply_update(
            &mut c,
            &rates,
            config.epsilon,
            config.renormalize && config.variant != FlowVariant::ShortTerm,
            config.strictness,
        )?;
        // Prune vanished edges, measured relative to the current maximum.
        let max_w = c
            .edges()
            .map(|(_, e)| e.weight)
            .fold(f64::NEG_INFINITY, f64::max);
        let dead: HashSet<EdgeId> = c
            .edges()
            .filter(|(_, e)| e.weight / max_w < config.threshold)
            .map(|(id, _)| id)
            .collect();
        if !dead.is_empty() {
            c = c.remove_edges(&dead);
        }
        if c.edge_count() == 0 {
            rows.push(FlowRow { t, mean_ric: None, n_edges: 0, chi: 0 });
            if snap_due(t) {
                snapshots.push((t, c.clone()));
            }
            break Termination::Empty;
        }
    };
    let final_complex = c.prune_leaves();
    let final_chi = bloch::euler_characteristic_comb(&final_complex);
    Ok(FlowTrace {
        rows,
        snapshots,
        termination,
        prototype: bloch::classify_prototype(final_chi as f64),
        final_chi,
        final_complex,
    })
}
