//! Reading input files. Paths inside a representation file resolve against that file's directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qrep_core::io::{GroupRepJson, QuiverJson, QuiverRef, RepJson};
use qrep_core::radical::GroupRep;
use qrep_core::reflect::ReflectionWord;
use qrep_core::{Error, Field, Quiver, Representation};

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

pub fn quiver(path: &Path) -> Result<Quiver, Failure> {
    let q: QuiverJson = parse(&read(path)?, &path.display().to_string())?;
    Ok(q.to_quiver()?)
}

/// Loads a representation, checking it against `expected` when one is given and
/// moving it to `field` when the global override is set.
pub fn rep(path: &Path, expected: Option<&Quiver>, field: Option<Field>) -> Result<Arc<Representation>, Failure> {
    let r: RepJson = parse(&read(path)?, &path.display().to_string())?;
    let q = match (&r.quiver, expected) {
        (QuiverRef::Inline(q), _) => q.to_quiver()?,
        (QuiverRef::Path(p), Some(q)) => {
            let own = quiver(&relative_to(path, p))?;
            if &own != q {
                return Err(Error::Invalid(format!("{} names a different quiver", path.display())).into());
            }
            own
        }
        (QuiverRef::Path(p), None) => quiver(&relative_to(path, p))?,
    };
    if let Some(e) = expected {
        if e != &q {
            return Err(Error::Invalid(format!("{} is not a representation of the given quiver", path.display())).into());
        }
    }
    let x = r.to_rep(&q)?;
    Ok(Arc::new(match field {
        Some(f) => x.to_field(f)?,
        None => x,
    }))
}

pub fn group_rep(path: &Path, field: Option<Field>) -> Result<GroupRep, Failure> {
    let mut g: GroupRepJson = parse(&read(path)?, &path.display().to_string())?;
    if let Some(f) = field {
        let declared: Field = g.field.parse()?;
        if declared != f {
            return Err(Error::FieldMismatch(format!("cannot convert a group representation over {declared} to {f}")).into());
        }
        g.field = f.to_string();
    }
    Ok(g.to_group_rep()?)
}

/// A word given inline (`[["+",2],...]`) or as a file holding the same JSON.
pub fn word(arg: &str) -> Result<ReflectionWord, Failure> {
    let text = if arg.trim_start().starts_with('[') { arg.to_string() } else { read(Path::new(arg))? };
    parse(&text, "reflection word")
}

/// Inline JSON, or a path to a file containing it.
pub fn inline_or_file<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read(Path::new(arg))? };
    parse(&text, what)
}

/// Every `*.json` representation in `dir`, in file name order.
pub fn universe(dir: &Path, field: Option<Field>) -> Result<Vec<Arc<Representation>>, Failure> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| rep(p, None, field)).collect()
}

fn relative_to(file: &Path, p: &str) -> PathBuf {
    let p = Path::new(p);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    file.parent().map_or_else(|| p.to_path_buf(), |d| d.join(p))
}
