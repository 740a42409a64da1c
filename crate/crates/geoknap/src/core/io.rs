use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::model::{Instance, Packing};
use crate::error::{Error, Result};

pub(crate) fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parses instance JSON and checks it; duplicate ids are reported as parse errors.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let inst: Instance = parse_json(text)?;
    let mut seen = BTreeSet::new();
    for (k, it) in inst.items.iter().enumerate() {
        if !seen.insert(it.id) {
            return Err(Error::Parse {
                location: format!("items[{k}].id"),
                message: format!("duplicate item id {}", it.id),
            });
        }
    }
    inst.check().map_err(|e| Error::Parse {
        location: "items".into(),
        message: e.to_string(),
    })?;
    Ok(inst)
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path)?)
}

pub fn instance_to_json(inst: &Instance) -> Result<String> {
    let mut canon = inst.clone();
    canon.items.sort_by_key(|it| it.id);
    to_json(&canon)
}

pub fn save_instance(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    fs::write(path, instance_to_json(inst)?)?;
    Ok(())
}

pub fn parse_packing(text: &str) -> Result<Packing> {
    let p: Packing = parse_json(text)?;
    let mut seen = BTreeSet::new();
    for (k, pl) in p.placements.iter().enumerate() {
        if !seen.insert(pl.id) {
            return Err(Error::Parse {
                location: format!("placements[{k}].id"),
                message: format!("duplicate item id {}", pl.id),
            });
        }
    }
    Ok(p.canonical())
}

pub fn load_packing(path: impl AsRef<Path>) -> Result<Packing> {
    parse_packing(&fs::read_to_string(path)?)
}

/// Canonical form: placements sorted by item id.
pub fn packing_to_json(packing: &Packing) -> Result<String> {
    to_json(&packing.clone().canonical())
}

pub fn save_packing(path: impl AsRef<Path>, packing: &Packing) -> Result<()> {
    fs::write(path, packing_to_json(packing)?)?;
    Ok(())
}
