//! Build recipes and search specifications read from TOML files.

use std::path::Path;

use serde::de::DeserializeOwned;
use wf4::Recipe;

use crate::search::SearchSpec;
use crate::CliError;

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input("Io", format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::input("ConfigParse", format!("{}: {e}", path.display())))
}

pub fn load_recipe(path: &Path) -> Result<Recipe, CliError> {
    load(path)
}

pub fn load_search_spec(path: &Path) -> Result<SearchSpec, CliError> {
    let spec: SearchSpec = load(path)?;
    spec.validate()?;
    Ok(spec)
}
