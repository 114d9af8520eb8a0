//! Plain-text family files.
//!
//! ```text
//! elements: a,b,c
//! a,b
//! {}
//! c
//! ```
//!
//! The header fixes the universe and its order; each further non-empty line
//! is one set, `{}` being the empty set. A set may appear only once.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::explicit::{ExplicitFamily, SetBits};

const HEADER: &str = "elements:";
const EMPTY_SET: &str = "{}";

pub fn parse(text: &str) -> Result<ExplicitFamily> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, "missing `elements:` header"))?;
    let names = header
        .trim()
        .strip_prefix(HEADER)
        .ok_or_else(|| parse_err(1, "first line must start with `elements:`"))?;
    let universe = split_names(names);
    let mut family = ExplicitFamily::new(universe.iter().copied())?;
    let mut seen = BTreeSet::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bits = if line == EMPTY_SET {
            SetBits::EMPTY
        } else {
            let mut bits = SetBits::EMPTY;
            for name in split_names(line) {
                let pos = family.position(name).ok_or_else(|| {
                    parse_err(idx + 1, &format!("element `{name}` not declared in header"))
                })?;
                if bits.contains(pos) {
                    return Err(parse_err(idx + 1, &format!("element `{name}` repeated")));
                }
                bits = bits.with(pos);
            }
            bits
        };
        if !seen.insert(bits) {
            return Err(parse_err(idx + 1, "duplicate set"));
        }
        family.insert(bits);
    }
    Ok(family)
}

pub fn write(family: &ExplicitFamily) -> String {
    let mut out = format!("{} {}\n", HEADER, family.universe().join(","));
    for set in family.named_sets() {
        if set.is_empty() {
            out.push_str(EMPTY_SET);
        } else {
            out.push_str(&set.join(","));
        }
        out.push('\n');
    }
    out
}

pub fn read_file(path: &Path) -> Result<ExplicitFamily> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_file(path: &Path, family: &ExplicitFamily) -> Result<()> {
    std::fs::write(path, write(family))?;
    Ok(())
}

fn split_names(list: &str) -> Vec<&str> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}
