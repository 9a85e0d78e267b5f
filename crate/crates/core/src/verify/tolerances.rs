//! The tolerance ladder used by every check.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub name: &'static str,
    pub value: f64,
    pub description: &'static str,
}

pub const TABLE: &[Tolerance] = &[
    Tolerance { name: "gram", value: 1e-10, description: "max |G - I| with exact Laguerre quadrature" },
    Tolerance { name: "fd-residual", value: 1e-3, description: "relative eigen-residual, central differences" },
    Tolerance { name: "fd-order", value: 0.125, description: "relative deviation of residual(2h)/residual(h) from 4" },
    Tolerance { name: "class1-moment", value: 1e-10, description: "Class-I density moments" },
    Tolerance { name: "class1-norm", value: 1e-3, description: "Class-I Bessel closed form vs series" },
    Tolerance { name: "class2-norm-raw", value: 1e-4, description: "Class-II signed norm, raw partial sum" },
    Tolerance { name: "class2-norm-accelerated", value: 1e-6, description: "Class-II signed norm, accelerated" },
    Tolerance { name: "class2-moment", value: 1e-12, description: "Class-II density moments" },
    Tolerance { name: "buchholz-raw", value: 1e-4, description: "Buchholz sums, raw partial sum" },
    Tolerance { name: "buchholz-accelerated", value: 1e-6, description: "Buchholz sums, accelerated" },
    Tolerance { name: "buchholz-smooth", value: 1e-8, description: "Buchholz sums, smooth cutoff mean" },
    Tolerance { name: "fast-norm", value: 1e-12, description: "GK, shifted GK, linear-spectrum and Mittag-Leffler normalizations" },
    Tolerance { name: "self-norm", value: 1e-10, description: "sum |c_m|^2 = 1 at converged truncation" },
    Tolerance { name: "density-moment", value: 1e-10, description: "action-angle and Mittag-Leffler moments" },
    Tolerance { name: "resolution", value: 1e-9, description: "max |S - I| of the resolution matrix" },
    Tolerance { name: "temporal", value: 1e-13, description: "evolve vs relabel, coefficientwise" },
    Tolerance { name: "reduction", value: 1e-14, description: "linear spectrum c=4, d=2γ vs GK, coefficientwise" },
    Tolerance { name: "counterexample", value: 0.01, description: "Class-I evolved-state distance must exceed this" },
    Tolerance { name: "overlap", value: 1e-12, description: "series overlap vs closed form" },
    Tolerance { name: "self-overlap", value: 1e-14, description: "<z|z> = 1" },
    Tolerance { name: "overlap-bound", value: 1e-14, description: "slack on |<z|z'>| <= 1" },
    Tolerance { name: "action", value: 1e-12, description: "shifted GK <H - e_0> = J" },
    Tolerance { name: "action-gap", value: 1e-6, description: "unshifted GK |<H> - J| must exceed this" },
    Tolerance { name: "ml-reduction", value: 1e-13, description: "Mittag-Leffler a=b=1 vs canonical states" },
    Tolerance { name: "ml-identity", value: 1e-12, description: "Γ(ω) E_{1,ω} = 1F1(1; ω; ·)" },
    Tolerance { name: "class2-energy", value: 1e-8, description: "Class-II energy, smoothed series vs closed form" },
    Tolerance { name: "cauchy-schwarz", value: 1e-13, description: "slack on |K(a,b)|² <= K(a,a) K(b,b)" },
    Tolerance { name: "hermitian", value: 1e-14, description: "kernel Hermitian symmetry" },
    Tolerance { name: "h2-dual", value: 1e-12, description: "two index forms of the H2 energy" },
    Tolerance { name: "chu-vandermonde", value: 1e-12, description: "2F1(-m, 1; b; 1) closed form vs termwise sum" },
];

/// The table with optional per-name overrides.
#[derive(Debug, Clone, Default)]
pub struct Tolerances {
    overrides: BTreeMap<String, f64>,
}

impl Tolerances {
    pub fn with_overrides(overrides: BTreeMap<String, f64>) -> Result<Self, String> {
        for k in overrides.keys() {
            if !TABLE.iter().any(|t| t.name == k) {
                return Err(format!("unknown tolerance name '{k}'"));
            }
        }
        Ok(Self { overrides })
    }

    pub fn get(&self, name: &str) -> f64 {
        if let Some(v) = self.overrides.get(name) {
            return *v;
        }
        TABLE
            .iter()
            .find(|t| t.name == name)
            .map(|t| t.value)
            .unwrap_or_else(|| panic!("tolerance '{name}' missing from table"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = TABLE.iter().map(|t| t.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), TABLE.len());
    }

    #[test]
    fn overrides_apply_and_are_validated() {
        let t = Tolerances::with_overrides([("gram".to_string(), 1e-8)].into()).unwrap();
        assert_eq!(t.get("gram"), 1e-8);
        assert_eq!(t.get("overlap"), 1e-12);
        assert!(Tolerances::with_overrides([("nope".to_string(), 1.0)].into()).is_err());
    }
}
