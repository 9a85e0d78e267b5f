//! Executable identity checks. Every closed form the library implements is compared
//! against an independent evaluation and turned into a [`VerificationReport`].

mod checks;
mod report;
pub mod tolerances;

use rayon::prelude::*;
use serde::Serialize;

use crate::families::Truncation;
pub use report::{record, Builder, Mode, Quantity, Summary, VerificationReport};
pub use tolerances::{Tolerance, Tolerances, TABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    All,
    Orthonormality,
    Resolution,
    Normalization,
    Buchholz,
    Temporal,
    Action,
    Overlap,
    Energy,
    Discrepancies,
}

type Group = for<'a, 'b> fn(&'a checks::Ctx<'b>) -> Vec<VerificationReport>;

impl Selection {
    pub const GROUPS: [Selection; 9] = [
        Selection::Orthonormality,
        Selection::Resolution,
        Selection::Normalization,
        Selection::Buchholz,
        Selection::Temporal,
        Selection::Action,
        Selection::Overlap,
        Selection::Energy,
        Selection::Discrepancies,
    ];

    fn group(self) -> Option<Group> {
        Some(match self {
            Selection::All => return None,
            Selection::Orthonormality => checks::orthonormality,
            Selection::Resolution => checks::resolution,
            Selection::Normalization => checks::normalization,
            Selection::Buchholz => checks::buchholz,
            Selection::Temporal => checks::temporal,
            Selection::Action => checks::action,
            Selection::Overlap => checks::overlap_checks,
            Selection::Energy => checks::energy,
            Selection::Discrepancies => checks::discrepancies,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Extra γ added to the grids of checks whose domain admits it.
    pub gamma: Option<f64>,
    /// Replaces the default adaptive truncation of fast-converging families.
    pub truncation: Option<Truncation>,
    /// Seed for the sampled label pairs of the overlap and kernel checks.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { gamma: None, truncation: None, seed: 20_240_601 }
    }
}

/// Runs the selected groups in parallel and returns every record ordered by `check_id`
/// (stable, so records sharing an id keep their construction order).
pub fn run(selection: Selection, config: &VerifyConfig, tolerances: &Tolerances) -> Vec<VerificationReport> {
    let groups: Vec<Group> = match selection {
        Selection::All => Selection::GROUPS.iter().filter_map(|s| s.group()).collect(),
        s => s.group().into_iter().collect(),
    };
    let ctx = checks::Ctx { config, tol: tolerances };
    let mut records: Vec<VerificationReport> = groups.par_iter().map(|g| g(&ctx)).flatten().collect();
    records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    records
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_runs_are_deterministic_and_sorted() {
        let cfg = VerifyConfig::default();
        let tol = Tolerances::default();
        let a = run(Selection::Action, &cfg, &tol);
        let b = run(Selection::Action, &cfg, &tol);
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].check_id <= w[1].check_id));
        assert!(a.iter().all(|r| r.pass), "{a:#?}");
    }

    #[test]
    fn gamma_extends_grids_in_domain_only() {
        let tol = Tolerances::default();
        let base = run(Selection::Orthonormality, &VerifyConfig::default(), &tol);
        let ext = run(Selection::Orthonormality, &VerifyConfig { gamma: Some(2.2), ..Default::default() }, &tol);
        assert_eq!(ext.len(), base.len() + 1);
        let out = run(Selection::Orthonormality, &VerifyConfig { gamma: Some(1.2), ..Default::default() }, &tol);
        assert_eq!(out.len(), base.len());
    }
}
