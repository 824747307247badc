//! Graph ingestion and serialization.
//!
//! Edge-list format: the first significant line is `n m`, followed by `m`
//! lines `u v` (0-based labels). Blank lines and lines starting with `#`
//! are ignored.
//!
//! DOT subset: `digraph [name] { stmt; ... }` where each statement is a
//! node id or a chain `u -> v -> w`, node ids are non-negative integers, and
//! the order is one more than the largest id mentioned. Attributes are not
//! accepted. `//` starts a comment.

use std::fmt::Write as _;

use crate::{Digraph, Error, Result, Vertex};

/// Parses either format, choosing DOT when the first token is `digraph`.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"));
    match first {
        Some(line) if line.starts_with("digraph") => parse_dot(text),
        _ => parse_edge_list(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(line, header)?;

    let mut arcs = Vec::with_capacity(m);
    for (line, content) in lines {
        if arcs.len() == m {
            return Err(Error::Parse {
                line,
                message: format!("more than {m} arc lines"),
            });
        }
        arcs.push(parse_pair(line, content)?);
    }
    if arcs.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("expected {m} arcs, found {}", arcs.len()),
        });
    }
    Digraph::new(n, arcs)
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    let [a, b] = fields[..] else {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, got `{content}`"),
        });
    };
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            message: format!("`{s}` is not a non-negative integer"),
        })
    };
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(usize),
    Arrow,
    Semi,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut tokens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split("//").next().unwrap_or("");
        if content.trim_start().starts_with('#') {
            continue;
        }
        let mut chars = content.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            match c {
                c if c.is_whitespace() => {
                    chars.next();
                }
                '{' | '}' | ';' => {
                    chars.next();
                    tokens.push((
                        line,
                        match c {
                            '{' => Token::Open,
                            '}' => Token::Close,
                            _ => Token::Semi,
                        },
                    ));
                }
                '-' => {
                    chars.next();
                    match chars.next() {
                        Some((_, '>')) => tokens.push((line, Token::Arrow)),
                        _ => {
                            return Err(Error::Parse {
                                line,
                                message: "expected `->`".into(),
                            });
                        }
                    }
                }
                c if c.is_ascii_alphanumeric() || c == '_' => {
                    let mut end = start;
                    while let Some(&(j, d)) = chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            end = j + d.len_utf8();
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let word = &content[start..end];
                    if word.bytes().all(|b| b.is_ascii_digit()) {
                        let id = word.parse().map_err(|_| Error::Parse {
                            line,
                            message: format!("node id `{word}` out of range"),
                        })?;
                        tokens.push((line, Token::Number(id)));
                    } else {
                        tokens.push((line, Token::Ident(word.to_string())));
                    }
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unsupported character `{other}` in DOT input"),
                    });
                }
            }
        }
    }
    Ok(tokens)
}

pub fn parse_dot(text: &str) -> Result<Digraph> {
    let tokens = tokenize(text)?;
    let mut it = tokens.into_iter().peekable();
    let err = |line: usize, message: &str| Error::Parse {
        line,
        message: message.to_string(),
    };

    match it.next() {
        Some((_, Token::Ident(kw))) if kw == "digraph" => {}
        Some((line, _)) => return Err(err(line, "expected `digraph`")),
        None => return Err(err(0, "empty DOT input")),
    }
    if let Some((_, Token::Ident(_) | Token::Number(_))) = it.peek() {
        it.next();
    }
    match it.next() {
        Some((_, Token::Open)) => {}
        Some((line, _)) => return Err(err(line, "expected `{`")),
        None => return Err(err(0, "missing `{`")),
    }

    let mut max_id: Option<Vertex> = None;
    let mut arcs = Vec::new();
    let mut closed = false;
    while let Some((line, token)) = it.next() {
        match token {
            Token::Semi => continue,
            Token::Close => {
                closed = true;
                break;
            }
            Token::Number(first) => {
                max_id = max_id.max(Some(first));
                let mut prev = first;
                while let Some((_, Token::Arrow)) = it.peek() {
                    it.next();
                    match it.next() {
                        Some((_, Token::Number(next))) => {
                            max_id = max_id.max(Some(next));
                            arcs.push((prev, next));
                            prev = next;
                        }
                        Some((line, _)) => return Err(err(line, "expected node id after `->`")),
                        None => return Err(err(line, "unterminated edge statement")),
                    }
                }
            }
            _ => return Err(err(line, "expected integer node id")),
        }
    }
    if !closed {
        return Err(err(text.lines().count(), "missing closing `}`"));
    }
    if let Some((line, _)) = it.next() {
        return Err(err(line, "trailing input after `}`"));
    }
    Digraph::new(max_id.map_or(0, |m| m + 1), arcs)
}

/// Serializes `d` in edge-list format, preceded by optional `#` comment
/// lines.
pub fn write_edge_list(d: &Digraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", d.order(), d.arc_count());
    for &(u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
