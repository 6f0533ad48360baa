//! Job documents: a group, a covering datum, and optional subgroups and
//! curves, written in TOML.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use gcurve_core::cover::CoverDatum;
use gcurve_core::group::{named_group, FiniteGroup, Permutation, Subgroup};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDocument {
    pub group: GroupSection,
    pub cover: CoverSection,
    #[serde(default)]
    pub subgroups: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub curves: BTreeMap<String, String>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub name: Option<String>,
    /// Cycle notation, e.g. `"(1 2 3)(4 5)"`.
    pub generators: Option<Vec<String>>,
    /// One-based image lists.
    pub images: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSection {
    pub genus: usize,
    #[serde(default)]
    pub handles: Vec<[String; 2]>,
    #[serde(default)]
    pub branch: Vec<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub cap_group: Option<usize>,
    pub cap_oracle: Option<usize>,
    /// Subgroup name used by `check-gn`.
    pub subgroup: Option<String>,
    /// Rational class (Galois orbit index) used by `certify`.
    pub class: Option<usize>,
}

/// A document resolved against its group.
#[derive(Clone, Debug)]
pub struct Job {
    pub datum: CoverDatum,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub curves: BTreeMap<String, String>,
    pub options: Options,
}

pub fn parse_document(text: &str) -> Result<JobDocument, CliError> {
    toml::from_str(text).map_err(|e| CliError::Input(e.to_string().trim_end().to_string()))
}

pub fn load_document(path: &Path) -> Result<JobDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
    parse_document(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {}", path.display(), msg)),
        other => other,
    })
}

fn field_err(field: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {}", field, e))
}

pub fn build_group(section: &GroupSection, cap: usize) -> Result<FiniteGroup, CliError> {
    let given = [section.name.is_some(), section.generators.is_some(), section.images.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(field_err("group", "give exactly one of name, generators, images"));
    }
    if let Some(name) = &section.name {
        let g = named_group(name).map_err(|e| field_err("group.name", e))?;
        if g.order() > cap {
            return Err(gcurve_core::Error::CapExceeded { what: "group order", size: g.order(), cap }.into());
        }
        return Ok(g);
    }
    let perms: Vec<Permutation> = if let Some(gens) = &section.generators {
        gens.iter()
            .enumerate()
            .map(|(i, s)| Permutation::parse_cycles(s).map_err(|e| field_err(&format!("group.generators[{}]", i), e)))
            .collect::<Result<_, _>>()?
    } else {
        section
            .images
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, v)| Permutation::from_one_based(v).map_err(|e| field_err(&format!("group.images[{}]", i), e)))
            .collect::<Result<_, _>>()?
    };
    Ok(FiniteGroup::from_generators(&perms, cap)?)
}

/// Evaluate a word such as `"g1 g2^-1 g1^3"`, `"e"`, or a literal
/// permutation `"(1 2 3)"`.
pub fn eval_word(g: &FiniteGroup, word: &str) -> Result<usize, String> {
    let w = word.trim();
    if w.starts_with('(') {
        let p = Permutation::parse_cycles(w).map_err(|e| e.to_string())?;
        return g.element_of(&p).ok_or_else(|| format!("{} is not in the group", w));
    }
    if w.is_empty() {
        return Err("empty word".to_string());
    }
    let mut acc = g.identity();
    for tok in w.split_whitespace() {
        if tok == "e" || tok == "1" {
            continue;
        }
        let (name, power) = match tok.split_once('^') {
            Some((n, p)) => (n, p.parse::<i64>().map_err(|_| format!("bad exponent in {:?}", tok))?),
            None => (tok, 1),
        };
        let idx: usize = name
            .strip_prefix('g')
            .and_then(|s| s.parse().ok())
            .filter(|&i| (1..=g.generators().len()).contains(&i))
            .ok_or_else(|| format!("unknown generator {:?}", name))?;
        acc = g.mul(acc, g.pow(g.generators()[idx - 1], power));
    }
    Ok(acc)
}

impl JobDocument {
    pub fn resolve(&self, cap_group: usize) -> Result<Job, CliError> {
        let g = Arc::new(build_group(&self.group, cap_group)?);
        if self.cover.handles.len() != self.cover.genus {
            return Err(field_err(
                "cover.handles",
                format!("{} handle pairs for quotient genus {}", self.cover.handles.len(), self.cover.genus),
            ));
        }
        let mut handles = Vec::new();
        for (i, [a, b]) in self.cover.handles.iter().enumerate() {
            let ea = eval_word(&g, a).map_err(|e| field_err(&format!("cover.handles[{}][0]", i), e))?;
            let eb = eval_word(&g, b).map_err(|e| field_err(&format!("cover.handles[{}][1]", i), e))?;
            handles.push((ea, eb));
        }
        let branch = self
            .cover
            .branch
            .iter()
            .enumerate()
            .map(|(i, w)| eval_word(&g, w).map_err(|e| field_err(&format!("cover.branch[{}]", i), e)))
            .collect::<Result<Vec<_>, _>>()?;
        let datum = CoverDatum::new(g.clone(), handles, branch)?;
        let mut subgroups = BTreeMap::new();
        for (name, gens) in &self.subgroups {
            let elems = gens
                .iter()
                .enumerate()
                .map(|(i, w)| eval_word(&g, w).map_err(|e| field_err(&format!("subgroups.{}[{}]", name, i), e)))
                .collect::<Result<Vec<_>, _>>()?;
            subgroups.insert(name.clone(), g.subgroup(&elems));
        }
        Ok(Job { datum, subgroups, curves: self.curves.clone(), options: self.options.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"
[group]
generators = ["(1 2 3)", "(1 2)"]

[cover]
genus = 0
branch = ["g2", "g2", "g1", "g1^-1"]

[subgroups]
A3 = ["g1"]
"#;

    #[test]
    fn resolves_words() {
        let doc = parse_document(DOC).unwrap();
        let job = doc.resolve(100).unwrap();
        assert_eq!(job.datum.group().order(), 6);
        assert_eq!(job.subgroups["A3"].order(), 3);
        let g = job.datum.group();
        assert_eq!(eval_word(g, "g1^3").unwrap(), 0);
        assert_eq!(eval_word(g, "(1 3 2)").unwrap(), eval_word(g, "g1^-1").unwrap());
        assert!(eval_word(g, "g3").is_err());
    }

    #[test]
    fn errors_name_the_field() {
        let bad = DOC.replace("\"g2\", \"g2\", \"g1\", \"g1^-1\"", "\"g2\", \"g9\"");
        let err = parse_document(&bad).unwrap().resolve(100).unwrap_err();
        assert!(err.to_string().contains("cover.branch[1]"), "{}", err);
        let err = parse_document("[group]\nname = 3\n").unwrap_err();
        assert!(err.to_string().contains("line"), "{}", err);
    }
}
