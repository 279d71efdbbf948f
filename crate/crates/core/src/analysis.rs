//! End-to-end decision for one algebra: certified obstructions, the form
//! solver, and a serializable report that can be re-checked offline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{
    decide_nondegenerate, invariant_form_space, verify_form, DecisionPolicy, NondegeneracyKind,
    NondegeneracyVerdict, SymForm,
};
use crate::lie::{LieAlgebra, LieError, StructureConstantsFile};
use crate::linalg::Rational;
use crate::obstructions::{
    obstruction_battery, verify_certificate, Decomposition, ObstructionCertificate,
    ObstructionError, DEFAULT_THETA_BUDGET,
};
use crate::poly::linear_pencil_determinant;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Seed, bounds and output mode; echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub mc_trials: usize,
    pub mc_range: u64,
    pub symbolic_max_dim: usize,
    pub symbolic_max_forms: usize,
    pub solver_dim_cap: usize,
    pub theta_budget: usize,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = DecisionPolicy::default();
        Self {
            seed: p.seed,
            mc_trials: p.mc_trials,
            mc_range: p.mc_range,
            symbolic_max_dim: p.symbolic_max_dim,
            symbolic_max_forms: p.symbolic_max_forms,
            solver_dim_cap: 64,
            theta_budget: DEFAULT_THETA_BUDGET,
            output: OutputFormat::Text,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{0} must be positive")]
    NotPositive(&'static str),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let checks = [
            ("mc_trials", self.mc_trials as u64),
            ("mc_range", self.mc_range),
            ("symbolic_max_dim", self.symbolic_max_dim as u64),
            ("symbolic_max_forms", self.symbolic_max_forms as u64),
            ("solver_dim_cap", self.solver_dim_cap as u64),
            ("theta_budget", self.theta_budget as u64),
        ];
        match checks.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(ConfigError::NotPositive(name)),
            None => Ok(()),
        }
    }

    pub fn policy(&self) -> DecisionPolicy {
        DecisionPolicy {
            seed: self.seed,
            mc_trials: self.mc_trials,
            mc_range: self.mc_range,
            symbolic_max_dim: self.symbolic_max_dim,
            symbolic_max_forms: self.symbolic_max_forms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub dim: usize,
    pub nilpotency_class: Option<usize>,
    pub lower_central_dims: Vec<usize>,
    pub upper_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub commutator_dim: usize,
}

impl AlgebraSummary {
    pub fn of(g: &LieAlgebra) -> Self {
        let s = g.central_series();
        Self {
            dim: g.dim(),
            nilpotency_class: g.nilpotency_class(),
            lower_central_dims: s.descending_dims(),
            upper_central_dims: s.ascending_dims(),
            center_dim: g.center().dim(),
            commutator_dim: g.commutator().dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Admits {
        witness: SymForm,
        signature: (usize, usize, usize),
    },
    Refuted {
        certificate: ObstructionCertificate,
    },
    RefutedSymbolic,
    RefutedMonteCarlo {
        trials: usize,
        range: u64,
        #[serde(with = "crate::linalg::serde_rational")]
        bound: Rational,
    },
    /// No certificate and the solver was not run.
    Undecided {
        reason: String,
    },
}

impl Verdict {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Admits { .. } => "admits",
            Self::Refuted { .. } => "refuted",
            Self::RefutedSymbolic => "refuted_symbolic",
            Self::RefutedMonteCarlo { .. } => "refuted_monte_carlo",
            Self::Undecided { .. } => "undecided",
        }
    }

    pub fn admits(&self) -> bool {
        matches!(self, Self::Admits { .. })
    }

    pub fn refutes(&self) -> bool {
        matches!(
            self,
            Self::Refuted { .. } | Self::RefutedSymbolic | Self::RefutedMonteCarlo { .. }
        )
    }

    pub fn certificate(&self) -> Option<&ObstructionCertificate> {
        match self {
            Self::Refuted { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Admits { signature, .. } => format!(
                "admits an ad-invariant metric (witness inertia: {} positive, {} negative, {} zero)",
                signature.0, signature.1, signature.2
            ),
            Self::Refuted { certificate } => {
                format!("refuted [{}]: {}", certificate.kind_name(), certificate.describe())
            }
            Self::RefutedSymbolic => {
                "refuted: the generic invariant form has identically zero determinant".into()
            }
            Self::RefutedMonteCarlo { trials, bound, .. } => format!(
                "refuted (Monte Carlo): {trials} random invariant forms all singular, error bound {}",
                crate::linalg::format_rational(bound)
            ),
            Self::Undecided { reason } => format!("undecided: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub summary: AlgebraSummary,
    pub verdict: Verdict,
    /// First certified obstruction, independent of the solver.
    pub obstruction: Option<ObstructionCertificate>,
    /// Solver outcome when it ran.
    pub solver: Option<NondegeneracyVerdict>,
    pub form_space_dim: Option<usize>,
    /// An obstruction and a solver witness for the same algebra.
    pub soundness_conflict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverMode {
    /// Solver only when no obstruction is found.
    AfterObstructions,
    /// Solver always (within the dimension cap), for cross-checks.
    Always,
    Never,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Obstructions first, then (depending on `mode` and the dimension cap) the
/// invariant form solver. Abelian algebras take the identity form directly.
pub fn analyze(
    g: &LieAlgebra,
    registered: &[Decomposition],
    config: &RunConfig,
    mode: SolverMode,
) -> Result<Analysis, AnalysisError> {
    let summary = AlgebraSummary::of(g);
    if g.is_abelian() {
        let witness = SymForm::identity(g.dim());
        let signature = witness.signature();
        return Ok(Analysis {
            summary,
            verdict: Verdict::Admits { witness, signature },
            obstruction: None,
            solver: None,
            form_space_dim: None,
            soundness_conflict: false,
        });
    }
    let obstruction = obstruction_battery(g, registered, config.theta_budget)?;
    let run_solver = g.dim() <= config.solver_dim_cap
        && match mode {
            SolverMode::Always => true,
            SolverMode::AfterObstructions => obstruction.is_none(),
            SolverMode::Never => false,
        };
    let (solver, form_space_dim) = if run_solver {
        let space = invariant_form_space(g);
        let d = space.dim();
        (
            Some(decide_nondegenerate(&space, &config.policy())),
            Some(d),
        )
    } else {
        (None, None)
    };
    let solver_admits = solver.as_ref().is_some_and(NondegeneracyVerdict::admits);
    let verdict = if let Some(c) = &obstruction {
        Verdict::Refuted {
            certificate: c.clone(),
        }
    } else if let Some(s) = &solver {
        match &s.kind {
            NondegeneracyKind::Admits { witness } => Verdict::Admits {
                witness: witness.clone(),
                signature: witness.signature(),
            },
            NondegeneracyKind::RefutedSymbolic => Verdict::RefutedSymbolic,
            NondegeneracyKind::RefutedMonteCarlo {
                trials,
                range,
                bound,
            } => Verdict::RefutedMonteCarlo {
                trials: *trials,
                range: *range,
                bound: bound.clone(),
            },
        }
    } else {
        Verdict::Undecided {
            reason: if g.dim() > config.solver_dim_cap {
                format!(
                    "no obstruction found and dimension {} exceeds the solver cap {}",
                    g.dim(),
                    config.solver_dim_cap
                )
            } else {
                "no obstruction found and the solver was disabled".into()
            },
        }
    };
    Ok(Analysis {
        summary,
        verdict,
        soundness_conflict: obstruction.is_some() && solver_admits,
        obstruction,
        solver,
        form_space_dim,
    })
}

/// How the algebra was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDescriptor {
    pub kind: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Report for a single algebra, complete enough to be re-verified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub input: InputDescriptor,
    pub config: RunConfig,
    pub algebra: StructureConstantsFile,
    pub analysis: Analysis,
    /// Construction-side prediction (graph or parabolic classification).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prediction: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agrees_with_prediction: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl VerdictReport {
    pub fn new(
        input: InputDescriptor,
        config: &RunConfig,
        g: &LieAlgebra,
        analysis: Analysis,
    ) -> Self {
        Self {
            input,
            config: config.clone(),
            algebra: StructureConstantsFile::from_algebra(g),
            analysis,
            prediction: None,
            agrees_with_prediction: None,
            details: None,
            timings: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub verdict_kind: String,
    pub checked: Vec<String>,
}

/// Recomputes everything a report asserts from its stored payload.
pub fn verify_report(report: &VerdictReport) -> Result<VerifyOutcome, String> {
    let g = report.algebra.to_algebra().map_err(|e| e.to_string())?;
    let mut checked = Vec::new();
    let a = &report.analysis;
    if AlgebraSummary::of(&g) != a.summary {
        return Err("algebra summary does not match the stored algebra".into());
    }
    checked.push("algebra summary".to_string());
    if a.soundness_conflict {
        return Err("report records an obstruction together with a witness".into());
    }
    if let Some(c) = &a.obstruction {
        verify_certificate(&g, c)?;
        checked.push(format!("certificate {}", c.kind_name()));
    }
    match &a.verdict {
        Verdict::Admits { witness, signature } => {
            verify_form(&g, witness).map_err(|e| format!("witness fails: {e}"))?;
            if witness.signature() != *signature {
                return Err("witness signature differs".into());
            }
            checked.push("witness form".into());
        }
        Verdict::Refuted { certificate } => {
            if a.obstruction.as_ref() != Some(certificate) {
                return Err("verdict certificate differs from the recorded obstruction".into());
            }
        }
        Verdict::RefutedSymbolic => {
            let space = invariant_form_space(&g);
            let zero = if space.dim() == 0 {
                g.dim() > 0
            } else {
                let mats: Vec<_> = space.basis.iter().map(|b| b.matrix().clone()).collect();
                linear_pencil_determinant(&mats).is_zero()
            };
            if !zero {
                return Err("determinant of the generic invariant form is not zero".into());
            }
            checked.push("symbolic determinant".into());
        }
        Verdict::RefutedMonteCarlo { .. } => {
            let space = invariant_form_space(&g);
            let again = decide_nondegenerate(&space, &report.config.policy());
            let same = match (&again.kind, &a.verdict) {
                (
                    NondegeneracyKind::RefutedMonteCarlo {
                        trials,
                        range,
                        bound,
                    },
                    Verdict::RefutedMonteCarlo {
                        trials: t2,
                        range: r2,
                        bound: b2,
                    },
                ) => trials == t2 && range == r2 && bound == b2,
                _ => false,
            };
            if !same {
                return Err("re-running the seeded trials gives a different outcome".into());
            }
            checked.push("seeded Monte Carlo trials".into());
        }
        Verdict::Undecided { .. } => {}
    }
    Ok(VerifyOutcome {
        verdict_kind: a.verdict.kind_name().to_string(),
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall::free_nilpotent;

    #[test]
    fn free_algebras() {
        let cfg = RunConfig::default();
        for (p, k, admits) in [(3, 2, true), (2, 3, true), (2, 2, false), (4, 2, false)] {
            let a = analyze(&free_nilpotent(p, k), &[], &cfg, SolverMode::Always).unwrap();
            assert_eq!(a.verdict.admits(), admits, "n_{{{p},{k}}}");
            assert!(!a.soundness_conflict);
        }
        let h = analyze(
            &free_nilpotent(2, 2),
            &[],
            &cfg,
            SolverMode::AfterObstructions,
        )
        .unwrap();
        assert!(matches!(
            h.verdict.certificate(),
            Some(ObstructionCertificate::DimSeries { j: 1, .. })
        ));
        assert!(h.solver.is_none());
    }

    #[test]
    fn abelian_shortcut_and_cap() {
        let cfg = RunConfig {
            solver_dim_cap: 2,
            ..RunConfig::default()
        };
        let a = analyze(&LieAlgebra::abelian(5), &[], &cfg, SolverMode::Always).unwrap();
        assert!(a.verdict.admits());
        let b = analyze(&free_nilpotent(3, 2), &[], &cfg, SolverMode::Always).unwrap();
        assert!(matches!(b.verdict, Verdict::Undecided { .. }));
    }

    #[test]
    fn report_round_trip_and_verify() {
        let cfg = RunConfig::default();
        for g in [
            free_nilpotent(3, 2),
            free_nilpotent(2, 2),
            free_nilpotent(4, 2),
        ] {
            let a = analyze(&g, &[], &cfg, SolverMode::AfterObstructions).unwrap();
            let report = VerdictReport::new(
                InputDescriptor {
                    kind: "free".into(),
                    source: "test".into(),
                },
                &cfg,
                &g,
                a,
            );
            let text = serde_json::to_string(&report).unwrap();
            let back: VerdictReport = serde_json::from_str(&text).unwrap();
            assert_eq!(back, report);
            verify_report(&back).unwrap();
        }
    }

    #[test]
    fn tampered_reports_fail() {
        let cfg = RunConfig::default();
        let g = free_nilpotent(3, 2);
        let a = analyze(&g, &[], &cfg, SolverMode::AfterObstructions).unwrap();
        let mut report = VerdictReport::new(
            InputDescriptor {
                kind: "free".into(),
                source: "test".into(),
            },
            &cfg,
            &g,
            a,
        );
        if let Verdict::Admits { witness, .. } = &mut report.analysis.verdict {
            *witness = SymForm::identity(6);
        }
        assert!(verify_report(&report).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            mc_trials: 0,
            ..RunConfig::default()
        };
        assert_eq!(bad.validate(), Err(ConfigError::NotPositive("mc_trials")));
    }
}
