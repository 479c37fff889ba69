//! Resolving complexes, groups and namings from files or embedded datasets.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use simplicial::datasets::{self, build_action, BuiltinAction, Payload};
use simplicial::{orbit_expand, parse_facets, parse_group_spec, Complex, Group, OrbitSpec};

/// A complex together with the orbit spec it was expanded from, if any.
pub struct Input {
    pub complex: Complex,
    pub spec: Option<OrbitSpec>,
    pub orbit_lengths: Vec<usize>,
}

fn looks_like_orbit_spec(text: &str) -> bool {
    text.lines()
        .map(str::trim_start)
        .any(|l| l.starts_with("GEN ") || l.starts_with("REPS:"))
}

fn from_text(text: &str) -> Result<Input> {
    if looks_like_orbit_spec(text) {
        let spec = parse_group_spec(text)?;
        let e = orbit_expand(&spec.reps, &spec.group)?;
        Ok(Input {
            complex: e.complex,
            spec: Some(spec),
            orbit_lengths: e.orbit_lengths,
        })
    } else {
        let parsed = parse_facets(text)?;
        if parsed.absorbed > 0 {
            eprintln!("note: absorbed {} non-maximal lines", parsed.absorbed);
        }
        Ok(Input {
            complex: parsed.complex,
            spec: None,
            orbit_lengths: Vec::new(),
        })
    }
}

pub fn load_dataset(name: &str) -> Result<Input> {
    let ds = datasets::load_dataset(name)?;
    match ds.payload {
        Payload::Naming(_) => bail!("dataset `{name}` is a vertex naming, not a complex"),
        Payload::Facets(complex) => Ok(Input {
            complex,
            spec: None,
            orbit_lengths: Vec::new(),
        }),
        Payload::Orbit(spec) => {
            let e = orbit_expand(&spec.reps, &spec.group)?;
            Ok(Input {
                complex: e.complex,
                spec: Some(spec),
                orbit_lengths: e.orbit_lengths,
            })
        }
    }
}

pub fn load_file(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_text(&text).with_context(|| format!("in {}", path.display()))
}

/// A dataset name if one matches, otherwise a file path.
pub fn load_named(source: &str) -> Result<Input> {
    if datasets::NAMES.contains(&source) {
        load_dataset(source)
    } else {
        load_file(Path::new(source))
    }
}

fn has_labels(x: &Complex, labels: &[String]) -> bool {
    x.num_vertices() == labels.len() && labels.iter().all(|l| x.vertices().contains(l))
}

/// `S3` and `A4` name the built-in actions on the 124- and 30-vertex label
/// sets, `spec` the group of the input's orbit spec; anything else is read
/// as a group spec file.
pub fn resolve_group(name: &str, input: &Input) -> Result<Group> {
    let x = &input.complex;
    let v124 = has_labels(x, &datasets::v124_labels());
    let v30 = has_labels(x, &datasets::v30_labels());
    let g = match name {
        "S3" if v124 => build_action(BuiltinAction::S3OnV124),
        "A4" if v124 => build_action(BuiltinAction::A4OnV124),
        "A4" if v30 => build_action(BuiltinAction::A4OnV30),
        "S3" | "A4" => bail!("group {name} is only defined on the built-in vertex sets"),
        "spec" => match &input.spec {
            Some(s) => s.group.clone(),
            None => bail!("the input has no orbit spec"),
        },
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            parse_group_spec(&text)?.group
        }
    };
    Ok(g.on_table(x.vertices())?)
}

/// `builtin` is the built-in 124 → 30 naming; otherwise a file of
/// `label -> name` lines.
pub fn resolve_naming(source: &str) -> Result<BTreeMap<String, String>> {
    if source == "builtin" || source == "cp3_30_naming" {
        return Ok(datasets::cp3_30_naming());
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once("->") else {
            bail!("{source}:{}: expected `label -> name`", n + 1);
        };
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}
