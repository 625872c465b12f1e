//! Plain-text automaton files and DOT export.
//!
//! The text format is `n k` on the first line, then one line per letter with
//! the `n` zero-based targets of states `0..n`.

use std::fmt::Write as _;

use super::Dfa;
use crate::error::{Error, Result};

pub fn write_dfa(dfa: &Dfa) -> String {
    let mut out = format!("{} {}\n", dfa.n(), dfa.k());
    for a in 0..dfa.k() {
        let row: Vec<String> = dfa.letter_map(a).iter().map(|t| t.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the text format. Blank lines and `#` comments are skipped; errors
/// carry the 1-based line and column of the offending token.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("")))
        .filter(|(_, line)| !line.trim().is_empty());

    let (header_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `n k` header".into(),
    })?;
    let header_tokens = tokens(header_no, header)?;
    if header_tokens.len() != 2 {
        return Err(Error::Parse {
            line: header_no,
            column: 1,
            message: format!("header needs exactly two numbers, found {}", header_tokens.len()),
        });
    }
    let (n, k) = (header_tokens[0].1, header_tokens[1].1);
    if n == 0 || k == 0 {
        return Err(Error::Parse {
            line: header_no,
            column: 1,
            message: "n and k must be positive".into(),
        });
    }

    let mut table = Vec::with_capacity(n * k);
    for letter in 0..k {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: header_no + letter + 1,
            column: 1,
            message: format!("missing transition line for letter {letter}"),
        })?;
        let row = tokens(line_no, line)?;
        if row.len() != n {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: format!("expected {n} targets, found {}", row.len()),
            });
        }
        for (column, target) in row {
            if target >= n {
                return Err(Error::Parse {
                    line: line_no,
                    column,
                    message: format!("target {target} is not a state of 0..{n}"),
                });
            }
            table.push(target);
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            column: 1,
            message: "unexpected trailing content".into(),
        });
    }
    Dfa::from_table(n, k, table)
}

fn tokens(line_no: usize, line: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for token in line.split_whitespace() {
        let start = line[offset..].find(token).map(|p| p + offset).unwrap_or(offset);
        offset = start + token.len();
        let value = token.parse::<usize>().map_err(|_| Error::Parse {
            line: line_no,
            column: start + 1,
            message: format!("expected a non-negative integer, found {token:?}"),
        })?;
        out.push((start + 1, value));
    }
    Ok(out)
}

fn letter_label(letter: usize, k: usize) -> String {
    if k <= 26 {
        ((b'a' + letter as u8) as char).to_string()
    } else {
        letter.to_string()
    }
}

/// Graphviz rendering of the labelled digraph; parallel edges are merged
/// into one edge with a comma-separated label.
pub fn to_dot(dfa: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n    rankdir=LR;\n    node [shape=circle];\n");
    for p in 0..dfa.n() {
        let mut targets: Vec<(usize, Vec<String>)> = Vec::new();
        for a in 0..dfa.k() {
            let q = dfa.step(p, a);
            let label = letter_label(a, dfa.k());
            match targets.iter_mut().find(|(t, _)| *t == q) {
                Some((_, labels)) => labels.push(label),
                None => targets.push((q, vec![label])),
            }
        }
        for (q, labels) in targets {
            let _ = writeln!(out, "    {p} -> {q} [label=\"{}\"];", labels.join(","));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{cerny_automaton, random_dfa};
    use proptest::prelude::*;

    #[test]
    fn cerny_file() {
        let text = write_dfa(&cerny_automaton(4).unwrap());
        assert_eq!(text, "4 2\n1 2 3 0\n1 1 2 3\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let dfa = parse_dfa("# C_3\n3 2\n\n1 2 0  # a\n1 1 2\n").unwrap();
        assert_eq!(dfa, cerny_automaton(3).unwrap());
    }

    #[test]
    fn parse_errors_point_at_token() {
        let err = parse_dfa("3 2\n1 2 0\n1 x 2\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 3,
                message: "expected a non-negative integer, found \"x\"".into()
            }
        );
        let err = parse_dfa("3 1\n1 5 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }));
        assert!(matches!(parse_dfa("3 2\n1 2 0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_dfa("2 1\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_dfa("").is_err());
    }

    #[test]
    fn dot_merges_parallel_edges() {
        let dot = to_dot(&cerny_automaton(3).unwrap());
        assert!(dot.contains("0 -> 1 [label=\"a,b\"];"));
        assert!(dot.contains("1 -> 1 [label=\"b\"];"));
    }

    proptest! {
        #[test]
        fn write_then_parse_round_trips(n in 1usize..8, k in 1usize..5, seed: u64) {
            let dfa = random_dfa(n, k, seed).unwrap();
            prop_assert_eq!(parse_dfa(&write_dfa(&dfa)).unwrap(), dfa);
        }
    }
}
