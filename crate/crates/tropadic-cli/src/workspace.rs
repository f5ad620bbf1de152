//! Named objects loaded from files, and argument loading.
//!
//! Every object argument is either a path to a file or the object text itself.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use tropadic::text::{parse_prime, parse_series, parse_stream};
use tropadic::{Error, PrimeCongruence, Result, SeriesStream, TruncatedSeries};

#[derive(Default)]
pub struct Workspace {
    defs: BTreeMap<String, String>,
}

/// File contents when `arg` names a file, otherwise `arg` itself.
fn read_arg(arg: &str) -> Result<(String, Option<PathBuf>)> {
    let p = Path::new(arg);
    if p.is_file() {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        return Ok((text, p.parent().map(Path::to_path_buf)));
    }
    Ok((arg.to_string(), None))
}

impl Workspace {
    /// Builds the map from `name=source` definitions; names must be unique.
    pub fn new(defs: &[String]) -> Result<Self> {
        let mut ws = Workspace::default();
        for d in defs {
            let (name, src) = d
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("definition `{d}` is not `name=source`")))?;
            let name = name.trim().to_string();
            if ws.defs.contains_key(&name) {
                return Err(Error::Parse(format!("duplicate name `{name}`")));
            }
            let (text, _) = read_arg(src.trim())?;
            ws.defs.insert(name, text);
        }
        Ok(ws)
    }

    fn text(&self, arg: &str) -> Result<(String, Option<PathBuf>)> {
        match self.defs.get(arg) {
            Some(t) => Ok((t.clone(), None)),
            None => read_arg(arg),
        }
    }

    pub fn prime(&self, arg: &str) -> Result<PrimeCongruence> {
        parse_prime(&self.text(arg)?.0)
    }

    /// A series; its prime reference is a workspace name, a file next to the
    /// series file, or a path.
    pub fn series(&self, arg: &str) -> Result<TruncatedSeries> {
        let (text, dir) = self.text(arg)?;
        parse_series(&text, |r| {
            if let Some(t) = self.defs.get(r) {
                return parse_prime(t);
            }
            if let Some(d) = &dir {
                let local = d.join(r);
                if local.is_file() {
                    return self.prime(&local.to_string_lossy());
                }
            }
            if Path::new(r).is_file() {
                return self.prime(r);
            }
            Err(Error::Parse(format!("unresolved prime reference `{r}`")))
        })
    }

    pub fn stream(&self, arg: &str) -> Result<SeriesStream> {
        parse_stream(&self.text(arg)?.0)
    }

    pub fn raw(&self, arg: &str) -> Result<String> {
        Ok(self.text(arg)?.0)
    }
}
