//! Plain-text family format.
//!
//! One set per line, elements as base-10 integers separated by spaces or
//! commas in any order. `#` starts a comment; blank lines are skipped. The
//! empty set is written as `{}` since a blank line carries no set. The
//! universe size is always supplied by the caller.

use super::element_set::ElementSet;
use super::family::Family;
use crate::{Error, Result};

/// Token standing for the empty set.
pub const EMPTY_SET_TOKEN: &str = "{}";

pub fn read_family(text: &str, n: usize) -> Result<Family> {
    ElementSet::empty(n)?;
    let mut sets = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content == EMPTY_SET_TOKEN {
            sets.push(ElementSet::empty(n)?);
            continue;
        }
        let mut bits = 0u128;
        for token in content
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
        {
            let x: usize = token.parse().map_err(|_| Error::Parse {
                line,
                message: format!("`{token}` is not a positive integer"),
            })?;
            if x == 0 || x > n {
                return Err(Error::Parse {
                    line,
                    message: format!("element {x} is outside [{n}]"),
                });
            }
            let bit = 1u128 << (x - 1);
            if bits & bit != 0 {
                return Err(Error::Parse {
                    line,
                    message: format!("element {x} appears twice"),
                });
            }
            bits |= bit;
        }
        sets.push(ElementSet::from_bits(n, bits)?);
    }
    Family::new(n, sets)
}

/// Canonical text: members in canonical order, elements ascending and
/// separated by single spaces, one newline-terminated line per set.
pub fn write_family(family: &Family) -> String {
    let mut out = String::new();
    for set in family {
        if set.is_empty() {
            out.push_str(EMPTY_SET_TOKEN);
        } else {
            let mut first = true;
            for x in set.iter() {
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&x.to_string());
            }
        }
        out.push('\n');
    }
    out
}
