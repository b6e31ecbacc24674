//! JSON model files.
//!
//! ```json
//! {
//!   "hamiltonian": { "h": [0, 0, 1], "h0": 0 },
//!   "dissipator": { "form": "B", "terms": [{ "lambda": 1, "n": [0, 0, 1] }] },
//!   "initial": { "bloch": [0.9, 0, 0.3] }
//! }
//! ```
//!
//! `dissipator.form` is one of
//! * `"A"` with `operators`: 2×2 matrices of `[re, im]` pairs,
//! * `"B"` with `terms`: `{ lambda, n }` objects,
//! * `"C"` with `matrix`: the symmetric 3×3 `L`,
//! * `"E"` with the six numbers `a, b, c, alpha, beta, gamma`.
//!
//! `initial` is optional and holds either `bloch` or `rho` (a 2×2 matrix of
//! `[re, im]` pairs).

use std::path::Path;

use lindblad2_core::qubit::{density_from_bloch, density_from_matrix};
use lindblad2_core::{
    ComplexMatrix2, DensityState, DissipationMatrix, DissipatorForm, FormA, FormB, FormE,
    Hamiltonian, Mat3,
};
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

type ComplexEntries = [[[f64; 2]; 2]; 2];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub hamiltonian: HamiltonianSpec,
    pub dissipator: DissipatorSpec,
    #[serde(default)]
    pub initial: Option<InitialSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    pub h: [f64; 3],
    #[serde(default)]
    pub h0: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "form", deny_unknown_fields)]
pub enum DissipatorSpec {
    A { operators: Vec<ComplexEntries> },
    B { terms: Vec<TermSpec> },
    C { matrix: [[f64; 3]; 3] },
    E { a: f64, b: f64, c: f64, alpha: f64, beta: f64, gamma: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub lambda: f64,
    pub n: [f64; 3],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    #[serde(default)]
    pub bloch: Option<[f64; 3]>,
    #[serde(default)]
    pub rho: Option<ComplexEntries>,
}

/// A validated model.
#[derive(Debug, Clone)]
pub struct Model {
    pub hamiltonian: Hamiltonian,
    pub dissipator: DissipatorForm,
    pub initial: Option<DensityState>,
}

impl Model {
    pub fn dissipation_matrix(&self) -> DissipationMatrix {
        self.dissipator.dissipation_matrix()
    }

    pub fn initial(&self) -> Result<&DensityState, CliError> {
        self.initial
            .as_ref()
            .ok_or_else(|| CliError::Model("this command needs an \"initial\" state".into()))
    }
}

fn finite(what: &str, xs: impl IntoIterator<Item = f64>) -> Result<(), CliError> {
    if xs.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(CliError::Model(format!("{what} contains a non-finite number")))
    }
}

fn complex_matrix(m: &ComplexEntries) -> ComplexMatrix2 {
    let z = |e: [f64; 2]| Complex64::new(e[0], e[1]);
    ComplexMatrix2::new(z(m[0][0]), z(m[0][1]), z(m[1][0]), z(m[1][1]))
}

impl ModelFile {
    pub fn validate(self) -> Result<Model, CliError> {
        let h = &self.hamiltonian;
        finite("hamiltonian", h.h.iter().copied().chain([h.h0]))?;
        let hamiltonian = Hamiltonian::with_identity(h.h, h.h0);

        let dissipator = match self.dissipator {
            DissipatorSpec::A { operators } => {
                finite("dissipator", operators.iter().flatten().flatten().flatten().copied())?;
                DissipatorForm::A(FormA::new(operators.iter().map(complex_matrix).collect())?)
            }
            DissipatorSpec::B { terms } => {
                finite("dissipator", terms.iter().flat_map(|t| t.n.iter().copied().chain([t.lambda])))?;
                let pairs: Vec<_> = terms.iter().map(|t| (t.lambda, t.n)).collect();
                DissipatorForm::B(FormB::from_pairs(&pairs)?)
            }
            DissipatorSpec::C { matrix } => {
                finite("dissipator", matrix.iter().flatten().copied())?;
                DissipatorForm::C(DissipationMatrix::new(Mat3(matrix))?)
            }
            DissipatorSpec::E { a, b, c, alpha, beta, gamma } => {
                finite("dissipator", [a, b, c, alpha, beta, gamma])?;
                DissipatorForm::E(FormE { a, b, c, alpha, beta, gamma })
            }
        };

        let initial = match self.initial {
            None => None,
            Some(InitialSpec { bloch: Some(r), rho: None }) => {
                finite("initial", r)?;
                Some(density_from_bloch(r)?)
            }
            Some(InitialSpec { bloch: None, rho: Some(m) }) => {
                finite("initial", m.iter().flatten().flatten().copied())?;
                Some(density_from_matrix(&complex_matrix(&m))?)
            }
            Some(_) => {
                return Err(CliError::Model(
                    "\"initial\" needs exactly one of \"bloch\" or \"rho\"".into(),
                ))
            }
        };
        Ok(Model { hamiltonian, dissipator, initial })
    }
}

pub fn parse_model(text: &str) -> Result<Model, CliError> {
    let file: ModelFile = serde_json::from_str(text)?;
    file.validate()
}

pub fn load_model(path: &Path) -> Result<Model, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_model(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        let m = parse_model(
            r#"{"hamiltonian":{"h":[0,0,1]},"dissipator":{"form":"B","terms":[{"lambda":1,"n":[0,0,1]}]},
                "initial":{"bloch":[0.9,0,0.3]}}"#,
        )
        .unwrap();
        assert_eq!(m.dissipation_matrix().matrix(), &Mat3::diag([0.5, 0.5, 0.0]));
        assert_eq!(m.initial().unwrap().bloch(), [0.9, 0.0, 0.3]);

        let m = parse_model(
            r#"{"hamiltonian":{"h":[0,0,0],"h0":2},
                "dissipator":{"form":"A","operators":[[[[0.5,0],[0,0]],[[0,0],[-0.5,0]]]]}}"#,
        )
        .unwrap();
        assert_eq!(m.dissipation_matrix().matrix(), &Mat3::diag([0.5, 0.5, 0.0]));
        assert!(m.initial.is_none());

        let m = parse_model(
            r#"{"hamiltonian":{"h":[0,0,0]},"dissipator":{"form":"C","matrix":[[1,0,0],[0,1,0],[0,0,1]]},
                "initial":{"rho":[[[0.5,0],[0,-0.5]],[[0,0.5],[0.5,0]]]}}"#,
        )
        .unwrap();
        assert_eq!(m.initial().unwrap().bloch(), [0.0, 1.0, 0.0]);

        let m = parse_model(
            r#"{"hamiltonian":{"h":[0,0,0]},
                "dissipator":{"form":"E","a":0.5,"b":0,"c":0,"alpha":0.5,"beta":0,"gamma":0.5}}"#,
        )
        .unwrap();
        assert_eq!(m.dissipation_matrix().matrix(), &Mat3::IDENTITY);
    }

    #[test]
    fn rejects_invalid_models() {
        let bad = [
            "{",
            r#"{"hamiltonian":{"h":[0,0,0]}}"#,
            r#"{"hamiltonian":{"h":[0,0,0]},"dissipator":{"form":"D","q":[]}}"#,
            r#"{"hamiltonian":{"h":[0,0,0]},"dissipator":{"form":"B","terms":[]}}"#,
            r#"{"hamiltonian":{"h":[0,0,0]},"dissipator":{"form":"B","terms":[{"lambda":-1,"n":[0,0,1]}]}}"#,
            r#"{"hamiltonian":{"h":[0,0,0]},"dissipator":{"form":"C","matrix":[[0,1,0],[0,0,0],[0,0,0]]}}"#,
            r#"{"hamiltonian":{"h":[0,0,0]},"dissipator":{"form":"A","operators":[[[[0,0],[1,0]],[[0,0],[0,0]]]]}}"#,
            r#"{"hamiltonian":{"h":[0,0,0]},"dissipator":{"form":"C","matrix":[[0,0,0],[0,0,0],[0,0,0]]},
                "initial":{"bloch":[1,1,0]}}"#,
            r#"{"hamiltonian":{"h":[0,0,0]},"dissipator":{"form":"C","matrix":[[0,0,0],[0,0,0],[0,0,0]]},
                "initial":{}}"#,
            r#"{"hamiltonian":{"h":[0,0,0],"x":1},"dissipator":{"form":"C","matrix":[[0,0,0],[0,0,0],[0,0,0]]}}"#,
        ];
        for text in bad {
            let err = parse_model(text).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}: {err}");
        }
    }
}
