//! Curve configuration files.
//!
//! ```toml
//! model = "superelliptic"   # or "elliptic"
//! m = 3                     # optional: 3 for superelliptic, 2 for elliptic
//! f = [1, 1, 0, 0, 1]       # constant term first
//! d = 3                     # E = Q(sqrt(-d))
//! ```

use std::path::Path;

use ordlab_core::classify::{signature, Signature};
use ordlab_core::curve_counts::{CurveModel, CurveSpec};
use ordlab_core::quad_field::QuadField;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Superelliptic,
    Elliptic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub model: ModelName,
    #[serde(default)]
    pub m: Option<u32>,
    pub f: Vec<i64>,
    pub d: u32,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Curve {
    pub spec: CurveSpec,
    pub field: QuadField,
    pub signature: Option<Signature>,
}

impl Curve {
    pub fn from_config(cfg: &CurveConfig) -> Result<Self, CliError> {
        let (model, default_m) = match cfg.model {
            ModelName::Superelliptic => (CurveModel::Superelliptic, 3),
            ModelName::Elliptic => (CurveModel::Elliptic, 2),
        };
        let spec = CurveSpec::new(model, cfg.m.unwrap_or(default_m), cfg.f.clone())
            .map_err(|e| CliError::Invalid(format!("curve: {e}")))?;
        let field = QuadField::new(cfg.d).map_err(|e| CliError::Invalid(format!("field: {e}")))?;
        let signature = signature(&spec).ok();
        Ok(Curve { spec, field, signature })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let cfg: CurveConfig =
            toml::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        Self::from_config(&cfg)
    }

    pub fn genus(&self) -> usize {
        self.spec.genus()
    }

    /// Canonical description used for hashing and reports; trailing zero
    /// coefficients of `f` are already stripped by the model.
    pub fn canonical(&self) -> String {
        let f: Vec<String> = self.spec.f().iter().map(ToString::to_string).collect();
        format!("{}:m={}:f=[{}]:d={}", self.spec.model(), self.spec.m(), f.join(","), self.field.d())
    }

    /// First 16 hex digits of the SHA-256 of [`Curve::canonical`].
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        hex::encode(&digest[..8])
    }

    /// Largest `pmax` accepted without `--force`.
    pub fn default_cap(&self) -> u64 {
        match self.genus() {
            1 => 100_000,
            3 => 300,
            _ => 60,
        }
    }
}
