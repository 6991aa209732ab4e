//! Pattern files and pattern-set spec strings.
//!
//! A spec string is one of
//!
//! ```text
//! T:k=3,r=2,m=1,I=1|2     one family T(k, r, m, I)
//! U:k=3,r=2,a=1,b=2,I=1   the union over m = a..b
//! @path/to/file.pat       explicit patterns, one per line
//! ```
//!
//! Pattern files are UTF-8 with one `s^c,...` permutation per line; blank
//! lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use colperm_core::{build_t, build_t_union, parse_perm, ColourSet, ColouredPermutation, PatternSet};

use crate::error::CliError;

/// Parses pattern-file text with every pattern at rank `r`.
pub fn parse_pattern_file(text: &str, rank: u32, origin: &str) -> Result<Vec<ColouredPermutation>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perm = parse_perm(line, Some(rank))
            .map_err(|source| CliError::PatternFile { path: origin.to_string(), line: i + 1, source })?;
        out.push(perm);
    }
    Ok(out)
}

pub fn read_pattern_file(path: &Path, rank: u32) -> Result<PatternSet, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    let patterns = parse_pattern_file(&text, rank, &shown)?;
    Ok(PatternSet::new(patterns, rank, format!("@{shown}"))?)
}

/// Renders a pattern set in pattern-file format.
pub fn write_pattern_file(set: &PatternSet) -> String {
    let mut out = format!("# {}\n", set.tag());
    for p in set {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

fn parse_colours(text: &str, rank: u32) -> Result<ColourSet, CliError> {
    let mut members = Vec::new();
    for part in text.split('|').map(str::trim).filter(|s| !s.is_empty()) {
        let c: u32 = part.parse().map_err(|_| CliError::Usage(format!("bad colour `{part}` in I")))?;
        members.push(c);
    }
    Ok(ColourSet::new(members, rank)?)
}

fn fields(body: &str) -> Result<BTreeMap<&str, &str>, CliError> {
    let mut map = BTreeMap::new();
    for part in body.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{part}`")))?;
        if map.insert(k.trim(), v.trim()).is_some() {
            return Err(CliError::Usage(format!("key `{}` given twice", k.trim())));
        }
    }
    Ok(map)
}

fn take_u32(map: &mut BTreeMap<&str, &str>, key: &str) -> Result<u32, CliError> {
    let v = map.remove(key).ok_or_else(|| CliError::Usage(format!("missing `{key}=`")))?;
    v.parse().map_err(|_| CliError::Usage(format!("`{key}={v}` is not a nonnegative integer")))
}

/// Resolves a spec string. `rank` is the rank of the surrounding count; a
/// family spec naming a different `r` is rejected.
pub fn parse_set_spec(spec: &str, rank: u32) -> Result<PatternSet, CliError> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        return read_pattern_file(Path::new(path), rank);
    }
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("unrecognised set spec `{spec}`")))?;
    let mut map = fields(body)?;
    let k = take_u32(&mut map, "k")?;
    let r = take_u32(&mut map, "r")?;
    if r != rank {
        return Err(colperm_core::Error::RankMismatch { expected: rank, found: r }.into());
    }
    let colours = parse_colours(map.remove("I").ok_or_else(|| CliError::Usage("missing `I=`".into()))?, r)?;
    let set = match kind.trim() {
        "T" => {
            let m = take_u32(&mut map, "m")?;
            build_t(k, r, m, &colours)?
        }
        "U" => {
            let a = take_u32(&mut map, "a")?;
            let b = take_u32(&mut map, "b")?;
            build_t_union(k, r, a, b, &colours)?
        }
        other => return Err(CliError::Usage(format!("unknown set kind `{other}` (expected T or U)"))),
    };
    if let Some(extra) = map.keys().next() {
        return Err(CliError::Usage(format!("unexpected key `{extra}` in set spec")));
    }
    Ok(set)
}
