//! Line-oriented text format and Graphviz export.
//!
//! ```text
//! tracks 2
//! track 0 -1 0 1
//! track 1 0 1
//! mode accept
//! state 0 1
//! state 1 0
//! trans 0 -1;0 1
//! ...
//! ```
//!
//! States are listed in order starting with the initial state 0, followed by
//! every transition, ordered by source state and letter.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use super::alphabet::{Letter, Track, TrackAlphabet};
use super::dfa::{Automaton, Mode};
use crate::error::{Error, Result};

pub fn write_automaton<W: Write>(automaton: &Automaton, mut out: W) -> Result<()> {
    out.write_all(automaton_to_string(automaton).as_bytes())?;
    Ok(())
}

pub fn automaton_to_string(automaton: &Automaton) -> String {
    let alphabet = automaton.alphabet();
    let mut s = String::new();
    let _ = writeln!(s, "tracks {}", alphabet.arity());
    for (i, track) in alphabet.tracks().iter().enumerate() {
        let syms: Vec<String> = track.symbols().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "track {i} {}", syms.join(" "));
    }
    let mode = match automaton.mode() {
        Mode::Accept => "accept",
        Mode::Output => "output",
    };
    let _ = writeln!(s, "mode {mode}");
    for q in 0..automaton.num_states() as u32 {
        let _ = writeln!(s, "state {q} {}", automaton.output(q));
    }
    for q in 0..automaton.num_states() as u32 {
        for a in 0..automaton.num_letters() as Letter {
            let _ = writeln!(
                s,
                "trans {q} {} {}",
                alphabet.letter_string(a),
                automaton.step(q, a)
            );
        }
    }
    s
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn next_line(&mut self) -> Result<Option<String>> {
        for line in self.inner.by_ref() {
            self.number += 1;
            let line = line?;
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                return Ok(Some(trimmed.to_string()));
            }
        }
        Ok(None)
    }

    fn expect_line(&mut self, what: &str) -> Result<String> {
        self.next_line()?.ok_or_else(|| Error::Parse {
            line: self.number + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            message: message.into(),
        }
    }
}

pub fn read_automaton<R: BufRead>(source: R) -> Result<Automaton> {
    let mut lines = Lines {
        inner: source.lines(),
        number: 0,
    };

    let header = lines.expect_line("`tracks <k>`")?;
    let k: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["tracks", k] => k.parse().map_err(|_| lines.err("bad track count"))?,
        _ => return Err(lines.err("expected `tracks <k>`")),
    };
    if k == 0 {
        return Err(lines.err("at least one track is required"));
    }
    let mut tracks = Vec::with_capacity(k);
    for i in 0..k {
        let line = lines.expect_line("a `track` line")?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() < 2 || parts[0] != "track" || parts[1] != i.to_string() {
            return Err(lines.err(format!("expected `track {i} ...`")));
        }
        let track = match &parts[2..] {
            ["-1", "0", "1"] => Track::Instruction,
            ["0", "1"] => Track::Binary,
            other => return Err(lines.err(format!("unsupported track symbols {other:?}"))),
        };
        tracks.push(track);
    }
    let alphabet = TrackAlphabet::new(tracks).map_err(|e| lines.err(e.to_string()))?;

    let mode_line = lines.expect_line("`mode accept|output`")?;
    let mode = match mode_line.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["mode", "accept"] => Mode::Accept,
        ["mode", "output"] => Mode::Output,
        _ => return Err(lines.err("expected `mode accept` or `mode output`")),
    };

    let mut outputs = Vec::new();
    let mut pending = None;
    while let Some(line) = lines.next_line()? {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["state", id, value] => {
                let id: usize = id.parse().map_err(|_| lines.err("bad state id"))?;
                if id != outputs.len() {
                    return Err(lines.err(format!("expected state {}", outputs.len())));
                }
                let value: u32 = value.parse().map_err(|_| lines.err("bad state value"))?;
                if mode == Mode::Accept && value > 1 {
                    return Err(lines.err("acceptor states must be 0 or 1"));
                }
                outputs.push(value);
            }
            _ => {
                pending = Some(line);
                break;
            }
        }
    }
    if outputs.is_empty() {
        return Err(lines.err("no states declared"));
    }

    let n = outputs.len();
    let letters = alphabet.size();
    let mut delta = vec![u32::MAX; n * letters];
    let mut filled = 0usize;
    let mut current = pending;
    while let Some(line) = current.take() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let ["trans", src, letter, dst] = parts.as_slice() else {
            return Err(lines.err("expected `trans <src> <s1;...;sk> <dst>`"));
        };
        let src: usize = src.parse().map_err(|_| lines.err("bad source state"))?;
        let dst: u32 = dst.parse().map_err(|_| lines.err("bad target state"))?;
        let letter = alphabet
            .parse_letter(letter)
            .ok_or_else(|| lines.err(format!("bad product symbol {letter:?}")))?;
        if src >= n || dst as usize >= n {
            return Err(lines.err("transition mentions an undeclared state"));
        }
        let slot = &mut delta[src * letters + letter as usize];
        if *slot != u32::MAX {
            return Err(lines.err("duplicate transition"));
        }
        *slot = dst;
        filled += 1;
        current = lines.next_line()?;
    }
    if filled != delta.len() {
        return Err(Error::Parse {
            line: lines.number + 1,
            message: format!(
                "transition table incomplete: {} of {} transitions",
                filled,
                delta.len()
            ),
        });
    }
    Automaton::new(alphabet, mode, outputs, delta)
}

pub fn automaton_from_str(s: &str) -> Result<Automaton> {
    read_automaton(s.as_bytes())
}

/// Graphviz rendering: states in BFS order, one edge per (source, target)
/// pair labeled with its product symbols.
pub fn to_dot(automaton: &Automaton) -> String {
    let a = automaton.trim();
    let alphabet = a.alphabet();
    let mut s = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    s.push_str("  init [shape=point];\n  init -> 0;\n");
    for q in 0..a.num_states() as u32 {
        let (label, shape) = match a.mode() {
            Mode::Accept => (
                q.to_string(),
                if a.output(q) != 0 {
                    "doublecircle"
                } else {
                    "circle"
                },
            ),
            Mode::Output => (format!("{q}/{}", a.output(q)), "circle"),
        };
        let _ = writeln!(s, "  {q} [label=\"{label}\", shape={shape}];");
    }
    for q in 0..a.num_states() as u32 {
        let mut edges: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        for l in 0..a.num_letters() as Letter {
            let comps: Vec<String> = alphabet.components(l).iter().map(|c| c.to_string()).collect();
            edges
                .entry(a.step(q, l))
                .or_default()
                .push(format!("[{}]", comps.join(",")));
        }
        for (r, labels) in edges {
            let _ = writeln!(s, "  {q} -> {r} [label=\"{}\"];", labels.join(" "));
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Automaton {
        let alphabet = TrackAlphabet::with_code(1);
        let delta = (0..12).map(|i| (i % 2) as u32).collect();
        Automaton::new(alphabet, Mode::Accept, vec![1, 0], delta).unwrap()
    }

    #[test]
    fn round_trip() {
        let a = sample();
        let text = automaton_to_string(&a);
        assert!(text.starts_with("tracks 2\ntrack 0 -1 0 1\ntrack 1 0 1\nmode accept\nstate 0 1\n"));
        assert_eq!(automaton_from_str(&text).unwrap(), a);
    }

    #[test]
    fn truncated_input() {
        let text = automaton_to_string(&sample());
        let cut: String = text.lines().take(8).map(|l| format!("{l}\n")).collect();
        match automaton_from_str(&cut) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 9),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            automaton_from_str("tracks 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn malformed_lines() {
        let text = automaton_to_string(&sample()).replace("mode accept", "mode maybe");
        assert!(matches!(
            automaton_from_str(&text),
            Err(Error::Parse { line: 4, .. })
        ));
        let text = automaton_to_string(&sample()).replace("trans 0 1;1 1", "trans 0 2;1 1");
        assert!(matches!(automaton_from_str(&text), Err(Error::Parse { .. })));
    }

    #[test]
    fn dot_is_deterministic() {
        let a = sample();
        let d = to_dot(&a);
        assert_eq!(d, to_dot(&a));
        assert!(d.contains("0 [label=\"0\", shape=doublecircle];"));
        assert_eq!(d.matches("\", shape=circle]").count(), 1);
    }
}
