//! JSON run configuration.

use std::path::Path;

use caloron_core::boundary::{BoundaryData, Line};
use caloron_core::chern_weil::GridSpec;
use caloron_core::field::{make_clutching_map, make_monopole_pullback, make_twisted_caloron, ClutchingMap, FieldConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSpec {
    pub mu: f64,
    pub k: i64,
}

/// How to build a field for the numeric checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldRecipe {
    #[serde(default = "defaults::grid3")]
    pub grid3: usize,
    #[serde(default = "defaults::gridz")]
    pub gridz: usize,
    #[serde(default = "defaults::h_fd")]
    pub h_fd: f64,
    #[serde(default)]
    pub twist_degree: i64,
    #[serde(default = "defaults::r1")]
    pub r1: f64,
    #[serde(default = "defaults::rho_out")]
    pub rho_out: f64,
}

mod defaults {
    pub fn grid3() -> usize {
        48
    }
    pub fn gridz() -> usize {
        32
    }
    pub fn h_fd() -> f64 {
        1.0 / 96.0
    }
    pub fn r1() -> f64 {
        0.6
    }
    pub fn rho_out() -> f64 {
        0.45
    }
}

impl Default for FieldRecipe {
    fn default() -> Self {
        FieldRecipe {
            grid3: defaults::grid3(),
            gridz: defaults::gridz(),
            h_fd: defaults::h_fd(),
            twist_degree: 0,
            r1: defaults::r1(),
            rho_out: defaults::rho_out(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub mu0: f64,
    pub k0: i64,
    pub lines: Vec<LineSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldRecipe>,
}

/// A parsed and validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub boundary: BoundaryData,
    pub recipe: FieldRecipe,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn validate(self) -> CliResult<RunConfig> {
        let lines = self.lines.iter().map(|l| Line::new(l.mu, l.k)).collect();
        let boundary = BoundaryData::new(self.mu0, lines, self.k0).map_err(|e| CliError::Config(e.to_string()))?;
        Ok(RunConfig {
            boundary,
            recipe: self.field.unwrap_or_default(),
        })
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        ConfigFile::parse(&text)?.validate()
    }

    /// Grid from the recipe, with `--grid` overriding the 3D resolution.
    pub fn grid(&self, n3: Option<usize>) -> GridSpec {
        GridSpec {
            n3: n3.unwrap_or(self.recipe.grid3),
            nz: self.recipe.gridz,
            h_fd: self.recipe.h_fd,
            ..Default::default()
        }
    }

    /// Monopole pullback, twisted when the recipe asks for a nonzero degree.
    pub fn field(&self) -> CliResult<(FieldConfig, Option<ClutchingMap>)> {
        let r = &self.recipe;
        let base = make_monopole_pullback(&self.boundary, r.r1).map_err(config_error)?;
        if r.twist_degree == 0 {
            return Ok((base, None));
        }
        let c = make_clutching_map(self.boundary.rank(), r.twist_degree, r.rho_out).map_err(config_error)?;
        let field = make_twisted_caloron(&base, &c, base.default_profile()).map_err(config_error)?;
        Ok((field, Some(c)))
    }
}

/// Geometry problems in a recipe are input errors.
fn config_error(e: caloron_core::Error) -> CliError {
    CliError::Config(e.to_string())
}
