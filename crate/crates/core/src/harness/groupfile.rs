//! Line-oriented group files:
//!
//! ```text
//! # comment
//! name S3
//! degree 3
//! gen (0 1)
//! gen (0 1 2)
//! ```

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::Permutation;
use crate::Limits;

pub fn parse_group(text: &str) -> Result<Group> {
    parse_group_with(text, &Limits::default())
}

pub fn parse_group_with(text: &str, limits: &Limits) -> Result<Group> {
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut gens: Vec<(usize, String)> = Vec::new();
    let err = |line: usize, message: String| GroupError::Parse { line, message };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match key {
            "name" => {
                if name.is_some() {
                    return Err(err(line, "duplicate name".into()));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err(line, "name must be a single token".into()));
                }
                name = Some(rest.to_string());
            }
            "degree" => {
                if degree.is_some() {
                    return Err(err(line, "duplicate degree".into()));
                }
                let d: usize = rest
                    .parse()
                    .map_err(|_| err(line, format!("bad degree {rest:?}")))?;
                if d == 0 {
                    return Err(err(line, "degree must be positive".into()));
                }
                degree = Some(d);
            }
            "gen" => gens.push((line, rest.to_string())),
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    let last = text.lines().count().max(1);
    let name = name.ok_or_else(|| err(last, "missing name".into()))?;
    let degree = degree.ok_or_else(|| err(last, "missing degree".into()))?;
    let mut perms = Vec::with_capacity(gens.len());
    for (line, body) in gens {
        if !body.starts_with('(') {
            return Err(err(line, "generator must be in cycle notation".into()));
        }
        perms.push(Permutation::parse_cycles(degree, &body).map_err(|m| err(line, m))?);
    }
    Group::generate_with(degree, &perms, Some(name), limits)
}

/// Inverse of [`parse_group`] up to equality as permutation sets.
pub fn render_group(g: &Group) -> String {
    let mut out = format!("name {}\ndegree {}\n", render_name(g), g.degree());
    for p in g.generators() {
        out.push_str("gen ");
        out.push_str(&p.to_cycle_string());
        out.push('\n');
    }
    out
}

fn render_name(g: &Group) -> String {
    g.label().replace(char::is_whitespace, "_")
}
