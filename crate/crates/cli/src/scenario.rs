//! Scenario files: the JSON schema and its resolution against a universe.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tolkit_core::domains::{Formalism, ModelBox, PropertiesElement, Universe};
use tolkit_core::tag_options::TagOptionsSpace;

use crate::codec::{decode_box, decode_properties, BoxLiteral, PropertiesLiteral, Scalar};
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub components: Vec<String>,
    /// Pairs that may carry a line; every pair of components when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(String, String)>>,
    pub grid_denominator: u32,
    #[serde(default)]
    pub properties: PropertiesLiteral,
    #[serde(default)]
    pub models: BTreeMap<String, BoxLiteral>,
    /// Connections checked by `check --laws galois|correctness`.
    #[serde(default = "default_connections")]
    pub connections: Vec<String>,
    #[serde(default)]
    pub lattices: BTreeMap<String, LatticeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homomorphism: Option<SpaceSpec>,
    #[serde(default)]
    pub selector: SelectorSpec,
    #[serde(default)]
    pub pipeline: Vec<StepSpec>,
}

fn default_connections() -> Vec<String> {
    vec!["reliability".into(), "topology".into()]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub tags: Vec<String>,
    pub options: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LatticeSpec {
    /// Options lattice over `domain` (all tags when absent).
    Options {
        tags: Vec<String>,
        options: Vec<String>,
        #[serde(default)]
        domain: Option<Vec<String>>,
    },
    TagOptions {
        tags: Vec<String>,
        options: Vec<String>,
    },
    Powerset {
        atoms: Vec<String>,
    },
    Interval {
        denominator: u32,
    },
    /// The scenario's properties lattice.
    Properties,
    /// The model boxes of one formalism over the scenario's universe.
    Boxes {
        formalism: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SelectorSpec {
    /// Only `"canonical-least"` is recognized.
    Named(String),
    Fixed {
        fixed: BTreeMap<String, Scalar>,
    },
}

impl Default for SelectorSpec {
    fn default() -> Self {
        SelectorSpec::Named("canonical-least".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StepSpec {
    /// Records `α(p)` for a formalism.
    Abstract {
        formalism: String,
    },
    /// `m := σ(α(p))`, then `p := p ⊓ γ({m})`.
    Select {
        formalism: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        selector: Option<SelectorSpec>,
    },
    /// `p := p ⊓ γ(box)` for a named model.
    Refine {
        model: String,
    },
    Transform {
        from: String,
        to: String,
    },
    /// Consistency of the named models (all models when absent).
    Consistency {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        models: Option<Vec<String>>,
    },
    Bound {
        source: String,
        sink: String,
    },
}

/// A scenario with every name resolved.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub universe: Universe,
    pub properties: PropertiesElement,
    pub models: BTreeMap<String, (Formalism, ModelBox)>,
}

impl Scenario {
    pub fn load(path: &Path, grid_override: Option<u32>) -> CliResult<Scenario> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read `{}`: {e}", path.display())))?;
        Scenario::parse(&text, grid_override)
    }

    pub fn parse(text: &str, grid_override: Option<u32>) -> CliResult<Scenario> {
        let mut file: ScenarioFile =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("scenario: {e}")))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        if let Some(d) = grid_override {
            file.grid_denominator = d;
        }
        Scenario::resolve(file)
    }

    pub fn resolve(file: ScenarioFile) -> CliResult<Scenario> {
        let pairs: Option<Vec<(&str, &str)>> = file
            .pairs
            .as_ref()
            .map(|ps| ps.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect());
        let names: Vec<&str> = file.components.iter().map(String::as_str).collect();
        let universe = Universe::new(&names, pairs.as_deref(), file.grid_denominator).map_err(CliError::input)?;
        let properties =
            decode_properties(&universe, &file.properties).map_err(|e| CliError::Input(format!("properties: {e}")))?;
        let mut models = BTreeMap::new();
        for (name, lit) in &file.models {
            let m = decode_box(&universe, lit).map_err(|e| CliError::Input(format!("model `{name}`: {e}")))?;
            models.insert(name.clone(), m);
        }
        if let SelectorSpec::Named(n) = &file.selector {
            if n != "canonical-least" {
                return Err(CliError::Input(format!("unknown selector `{n}`")));
            }
        }
        for c in &file.connections {
            if !matches!(c.as_str(), "reliability" | "topology" | "box-hull") {
                return Err(CliError::Input(format!("unknown connection `{c}`")));
            }
        }
        let scenario = Scenario {
            file,
            universe,
            properties,
            models,
        };
        for (i, step) in scenario.file.pipeline.iter().enumerate() {
            scenario
                .validate_step(step)
                .map_err(|e| CliError::Input(format!("pipeline step {i}: {e}")))?;
        }
        Ok(scenario)
    }

    fn validate_step(&self, step: &StepSpec) -> CliResult<()> {
        match step {
            StepSpec::Abstract { formalism } | StepSpec::Select { formalism, .. } => {
                formalism.parse::<Formalism>()?;
            }
            StepSpec::Refine { model } => {
                self.model(model)?;
            }
            StepSpec::Transform { from, to } => {
                self.model(from)?;
                to.parse::<Formalism>()?;
            }
            StepSpec::Consistency { models } => {
                for m in models.iter().flatten() {
                    self.model(m)?;
                }
            }
            StepSpec::Bound { source, sink } => {
                self.universe.component_index(source)?;
                self.universe.component_index(sink)?;
            }
        }
        Ok(())
    }

    pub fn model(&self, name: &str) -> CliResult<&(Formalism, ModelBox)> {
        self.models
            .get(name)
            .ok_or_else(|| CliError::Input(format!("unknown model `{name}`")))
    }

    pub fn homomorphism_space(&self) -> CliResult<Option<TagOptionsSpace>> {
        self.file
            .homomorphism
            .as_ref()
            .map(|s| TagOptionsSpace::from_names(s.tags.clone(), s.options.clone()).map_err(CliError::input))
            .transpose()
    }
}
