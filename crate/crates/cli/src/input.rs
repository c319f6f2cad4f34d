//! Resolution of --field, --subset and --recipe into a tower and a subset.

use std::path::Path;

use mincodes::recipes::{recipe, QuadricChoice, SubsetSpec};
use mincodes::{Error, FieldSpec, FieldTower, SubsetD};
use serde::de::DeserializeOwned;

use crate::commands::CmdError;
use crate::Common;

/// Inline JSON when the argument starts with `{`, else a file path.
fn load<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CmdError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| CmdError::Config(format!("cannot read {what} file {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CmdError::Config(format!("bad {what} spec: {e}")))
}

pub struct Instance {
    pub name: Option<String>,
    pub field: FieldSpec,
    pub subset: SubsetSpec,
    pub tower: FieldTower,
    pub d: SubsetD,
}

pub fn resolve(c: &Common) -> Result<Instance, CmdError> {
    let mut choice = QuadricChoice::default();
    if let Some(k) = c.kind {
        choice.kind = k.into();
    }
    if let Some(p) = c.p {
        choice.p = p;
    }
    if let Some(m) = c.m {
        choice.m = m;
    }
    let base = c
        .recipe
        .as_deref()
        .map(|name| recipe(name, choice))
        .transpose()
        .map_err(CmdError::from_lib)?;
    let field = match (&c.field, &base) {
        (Some(f), _) => load::<FieldSpec>(f, "field")?,
        (None, Some(r)) => r.field.clone(),
        (None, None) => return Err(CmdError::Config("give --recipe or --field".into())),
    };
    let subset = match (&c.subset, &base) {
        (Some(s), _) => load::<SubsetSpec>(s, "subset")?,
        (None, Some(r)) => r.subset.clone(),
        (None, None) => return Err(CmdError::Config("give --recipe or --subset".into())),
    };
    let tower = FieldTower::new(&field).map_err(CmdError::from_lib)?;
    let d = subset.build(&tower).map_err(|e| match e {
        Error::NotPds(_) => CmdError::Negative(e.to_string()),
        e => CmdError::from_lib(e),
    })?;
    Ok(Instance {
        name: base.map(|r| r.name),
        field,
        subset,
        tower,
        d,
    })
}
