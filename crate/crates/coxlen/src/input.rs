//! Text and JSON input formats for groups and words.

use coxlen_core::{CoxeterSystem, GroupSpec, Label, Word};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// JSON spelling of an explicit Coxeter matrix. `0` encodes ∞.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rank: usize,
    pub matrix: Vec<Vec<u32>>,
}

impl MatrixJson {
    pub fn of(sys: &CoxeterSystem) -> Self {
        let n = sys.rank();
        MatrixJson {
            rank: n,
            matrix: (0..n).map(|i| (0..n).map(|j| sys.label(i, j).encoded()).collect()).collect(),
        }
    }

    pub fn to_system(&self) -> Result<CoxeterSystem, CliError> {
        if self.matrix.len() != self.rank || self.matrix.iter().any(|row| row.len() != self.rank) {
            return Err(CliError::Input(format!("matrix must be {0}×{0}", self.rank)));
        }
        let labels = self.matrix.iter().flatten().map(|&v| Label::from_encoded(v)).collect();
        Ok(CoxeterSystem::new(self.rank, labels)?)
    }
}

/// Parses a shorthand (`single:3:5`), an inline JSON matrix, or `@path` to a
/// file holding the JSON matrix.
pub fn parse_group(text: &str) -> Result<(GroupSpec, CoxeterSystem), CliError> {
    let text = text.trim();
    let json = if let Some(path) = text.strip_prefix('@') {
        Some(std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?)
    } else if text.starts_with('{') {
        Some(text.to_string())
    } else {
        None
    };
    if let Some(json) = json {
        let m: MatrixJson =
            serde_json::from_str(&json).map_err(|e| CliError::Input(format!("bad matrix JSON: {e}")))?;
        let sys = m.to_system()?;
        return Ok((GroupSpec::Explicit(sys.clone()), sys));
    }
    let spec: GroupSpec = text.parse()?;
    let sys = spec.expand()?;
    Ok((spec, sys))
}

/// Parses a word, expanding power groups such as `(123)^4`.
///
/// Factors are separated by whitespace. A factor is either a generator token
/// (`3` or `s3`) or `(` digits `)` `^` count, where every digit inside the
/// parentheses is one generator. A group may also hold whitespace-separated
/// tokens, as in `(1 10 2)^3`, for ranks above nine.
pub fn parse_word(text: &str, sys: &CoxeterSystem) -> Result<Word, CliError> {
    let mut indices: Vec<usize> = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        if let Some(after) = rest.strip_prefix('(') {
            let close = after
                .find(')')
                .ok_or_else(|| CliError::Input(format!("unclosed parenthesis in {text:?}")))?;
            let body = &after[..close];
            let mut tail = &after[close + 1..];
            let group = parse_group_body(body)?;
            let mut count = 1;
            if let Some(exp) = tail.strip_prefix('^') {
                let end = exp.find(|c: char| !c.is_ascii_digit()).unwrap_or(exp.len());
                count = exp[..end]
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad exponent in {text:?}")))?;
                tail = &exp[end..];
            }
            if !(tail.is_empty() || tail.starts_with(char::is_whitespace)) {
                return Err(CliError::Input(format!("expected whitespace after power group in {text:?}")));
            }
            for _ in 0..count {
                indices.extend_from_slice(&group);
            }
            rest = tail.trim_start();
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            indices.push(parse_token(&rest[..end])?);
            rest = rest[end..].trim_start();
        }
    }
    Ok(Word::from_one_based(&indices, sys.rank())?)
}

fn parse_token(token: &str) -> Result<usize, CliError> {
    let digits = token.strip_prefix(['s', 'S']).unwrap_or(token);
    digits
        .parse()
        .map_err(|_| CliError::Input(format!("bad generator token {token:?}")))
}

fn parse_group_body(body: &str) -> Result<Vec<usize>, CliError> {
    if body.trim().contains(char::is_whitespace) {
        return body.split_whitespace().map(parse_token).collect();
    }
    body.trim()
        .chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as usize)
                .ok_or_else(|| CliError::Input(format!("bad generator {c:?} in power group")))
        })
        .collect()
}

/// 1-based generator indices, the form used in JSON output.
pub fn one_based(w: &Word) -> Vec<usize> {
    w.iter().map(|&a| a as usize + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys3() -> CoxeterSystem {
        "single:3:3".parse().unwrap()
    }

    #[test]
    fn power_syntax() {
        let w = parse_word("(123)^4 1 2", &sys3()).unwrap();
        assert_eq!(one_based(&w), [1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2]);
        let w = parse_word("s1 (12)^2 3", &sys3()).unwrap();
        assert_eq!(one_based(&w), [1, 1, 2, 1, 2, 3]);
        assert_eq!(parse_word("(1 2)^0", &sys3()).unwrap().len(), 0);
        assert_eq!(parse_word("  ", &sys3()).unwrap().len(), 0);
        assert!(parse_word("(12", &sys3()).is_err());
        assert!(parse_word("(12)^x", &sys3()).is_err());
        assert!(parse_word("(12)^2x", &sys3()).is_err());
        assert!(parse_word("4", &sys3()).is_err());
    }

    #[test]
    fn group_forms() {
        let (_, a) = parse_group("triangle:3:3:4").unwrap();
        let (_, b) = parse_group(r#"{"rank":3,"matrix":[[1,3,3],[3,1,4],[3,4,1]]}"#).unwrap();
        assert_eq!(a, b);
        let (_, u) = parse_group(r#"{"rank":2,"matrix":[[1,0],[0,1]]}"#).unwrap();
        assert!(u.is_universal());
        assert_eq!(MatrixJson::of(&u).matrix, [[1, 0], [0, 1]]);
        assert!(parse_group(r#"{"rank":2,"matrix":[[1,3],[2,1]]}"#).is_err());
        assert!(parse_group(r#"{"rank":3,"matrix":[[1,3],[3,1]]}"#).is_err());
        assert!(parse_group("single:3:1").is_err());
        assert!(parse_group("cube:3").is_err());
    }
}
