//! The `ptri 1` text format, closure checkpoints and quadratic-form files.
//!
//! ```text
//! ptri 1
//! dim 2
//! classes 2
//! simplex
//! 0 0
//! 0 1
//! 1 1
//! simplex
//! ...
//! ```
//!
//! Parsing only checks the format and non-degeneracy; tiling properties are
//! left to [`PeriodicTriangulation::validate`].

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::enumerate::ClosureState;
use crate::exact::{Point, QuadForm, MAX_DIM, Q};
use crate::tri::{PeriodicTriangulation, Simplex, TriError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected `{expected}`")]
    Header { line: usize, expected: &'static str },
    #[error("line {line}: dimension {dim} not supported")]
    Dimension { line: usize, dim: usize },
    #[error("line {line}: bad number `{token}`")]
    Number { line: usize, token: String },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    CoordinateCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: simplex block has {found} vertices, expected {expected}")]
    VertexCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: degenerate simplex")]
    Degenerate { line: usize },
    #[error("unexpected end of input")]
    UnexpectedEof,
    #[error("line {line}: unexpected trailing content")]
    Trailing { line: usize },
    #[error("form: {0}")]
    Form(String),
    #[error("checkpoint queue index {0} out of range")]
    QueueIndex(usize),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io { path: path.to_path_buf(), source }
}

fn parse_err(path: &Path) -> impl FnOnce(ParseError) -> IoError + '_ {
    move |source| IoError::Parse { path: path.to_path_buf(), source }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Cursor { lines, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Result<(usize, &'a str), ParseError> {
        let l = self.peek().ok_or(ParseError::UnexpectedEof)?;
        self.pos += 1;
        Ok(l)
    }

    fn keyed<T: FromStr>(&mut self, key: &str, expected: &'static str) -> Result<(usize, T), ParseError> {
        let (line, l) = self.next()?;
        let rest =
            l.strip_prefix(key).filter(|r| r.starts_with(' ')).ok_or(ParseError::Header { line, expected })?.trim();
        let v = rest.parse().map_err(|_| ParseError::Number { line, token: rest.to_string() })?;
        Ok((line, v))
    }
}

fn parse_numbers<T: FromStr>(line: usize, l: &str) -> Result<Vec<T>, ParseError> {
    l.split_whitespace().map(|t| t.parse().map_err(|_| ParseError::Number { line, token: t.to_string() })).collect()
}

/// Serializes the canonical classes in canonical order.
pub fn to_ptri(t: &PeriodicTriangulation) -> String {
    let n = t.dim();
    let mut s = String::new();
    writeln!(s, "ptri 1\ndim {n}\nclasses {}", t.len()).unwrap();
    for c in t.classes() {
        s.push_str("simplex\n");
        for v in c.vertices() {
            let row: Vec<String> = v.coords(n).iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
    }
    s
}

fn parse_one(cur: &mut Cursor<'_>) -> Result<PeriodicTriangulation, ParseError> {
    let (line, l) = cur.next()?;
    if l != "ptri 1" {
        return Err(ParseError::Header { line, expected: "ptri 1" });
    }
    let (line, n): (usize, usize) = cur.keyed("dim", "dim N")?;
    if n == 0 || n > MAX_DIM {
        return Err(ParseError::Dimension { line, dim: n });
    }
    let (_, m): (usize, usize) = cur.keyed("classes", "classes M")?;
    let mut classes = Vec::with_capacity(m);
    for _ in 0..m {
        let (block, l) = cur.next()?;
        if l != "simplex" {
            return Err(ParseError::Header { line: block, expected: "simplex" });
        }
        let mut verts = Vec::with_capacity(n + 1);
        while let Some((line, l)) = cur.peek() {
            if !l.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+') {
                break;
            }
            cur.pos += 1;
            let xs: Vec<i64> = parse_numbers(line, l)?;
            if xs.len() != n {
                return Err(ParseError::CoordinateCount { line, expected: n, found: xs.len() });
            }
            verts.push(Point::new(&xs));
        }
        if verts.len() != n + 1 {
            return Err(ParseError::VertexCount { line: block, expected: n + 1, found: verts.len() });
        }
        let s = Simplex::new(n, verts).map_err(|e| match e {
            TriError::Degenerate(..) => ParseError::Degenerate { line: block },
            _ => ParseError::VertexCount { line: block, expected: n + 1, found: 0 },
        })?;
        classes.push(s.class());
    }
    Ok(PeriodicTriangulation::new(n, classes).expect("dimension checked"))
}

/// Parses one `ptri 1` document; vertices need not be canonical.
pub fn parse_ptri(text: &str) -> Result<PeriodicTriangulation, ParseError> {
    let mut cur = Cursor::new(text);
    let t = parse_one(&mut cur)?;
    match cur.peek() {
        Some((line, _)) => Err(ParseError::Trailing { line }),
        None => Ok(t),
    }
}

pub fn read_ptri(path: &Path) -> Result<PeriodicTriangulation, IoError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_ptri(&text).map_err(parse_err(path))
}

pub fn write_ptri(path: &Path, t: &PeriodicTriangulation) -> Result<(), IoError> {
    fs::write(path, to_ptri(t)).map_err(io_err(path))
}

/// Checkpoint: the archive documents in order, a `queue` line, then the
/// pending archive indices one per line.
pub fn to_checkpoint(state: &ClosureState) -> String {
    let mut s = String::new();
    for t in &state.archive {
        s.push_str(&to_ptri(t));
    }
    s.push_str("queue\n");
    for i in &state.queue {
        writeln!(s, "{i}").unwrap();
    }
    s
}

pub fn parse_checkpoint(text: &str) -> Result<ClosureState, ParseError> {
    let mut cur = Cursor::new(text);
    let mut archive = Vec::new();
    loop {
        match cur.peek() {
            Some((_, "queue")) => {
                cur.pos += 1;
                break;
            }
            Some(_) => archive.push(parse_one(&mut cur)?),
            None => return Err(ParseError::UnexpectedEof),
        }
    }
    let mut queue = VecDeque::new();
    while let Some((line, l)) = cur.peek() {
        cur.pos += 1;
        let i: usize = l.parse().map_err(|_| ParseError::Number { line, token: l.to_string() })?;
        if i >= archive.len() {
            return Err(ParseError::QueueIndex(i));
        }
        queue.push_back(i);
    }
    let dim = archive.first().map(|t| t.dim()).ok_or(ParseError::UnexpectedEof)?;
    // the queue is always a suffix of the archive
    let processed = archive.len() - queue.len();
    Ok(ClosureState { dim, archive, queue, processed })
}

/// Writes atomically through a temporary file.
pub fn write_checkpoint(path: &Path, state: &ClosureState) -> Result<(), IoError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, to_checkpoint(state)).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

pub fn read_checkpoint(path: &Path) -> Result<ClosureState, IoError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_checkpoint(&text).map_err(parse_err(path))
}

/// `n` lines of `n` rationals (`3`, `-1/2`).
pub fn parse_form(text: &str) -> Result<QuadForm, ParseError> {
    let cur = Cursor::new(text);
    let mut entries: Vec<Q> = Vec::new();
    let n = cur.lines.len();
    for &(line, l) in &cur.lines {
        let row: Vec<Q> = parse_numbers(line, l)?;
        if row.len() != n {
            return Err(ParseError::CoordinateCount { line, expected: n, found: row.len() });
        }
        entries.extend(row);
    }
    if n == 0 || n > MAX_DIM {
        return Err(ParseError::Dimension { line: 1, dim: n });
    }
    QuadForm::new(n, entries).map_err(|e| ParseError::Form(e.to_string()))
}

pub fn read_form(path: &Path) -> Result<QuadForm, IoError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_form(&text).map_err(parse_err(path))
}

pub fn form_to_string(a: &QuadForm) -> String {
    let n = a.dim();
    let mut s = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| a.get(i, j).to_string()).collect();
        writeln!(s, "{}", row.join(" ")).unwrap();
    }
    s
}

/// Archive directory layout: `tri_0000.ptri`, `tri_0001.ptri`, ...
pub fn write_archive(dir: &Path, archive: &[PeriodicTriangulation]) -> Result<(), IoError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for (i, t) in archive.iter().enumerate() {
        write_ptri(&dir.join(format!("tri_{i:04}.ptri")), t)?;
    }
    Ok(())
}

/// All `*.ptri` files of a directory, in file-name order.
pub fn read_archive(dir: &Path) -> Result<Vec<(PathBuf, PeriodicTriangulation)>, IoError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ptri"))
        .collect();
    paths.sort();
    paths.into_iter().map(|p| read_ptri(&p).map(|t| (p, t))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::freudenthal_seed;

    #[test]
    fn round_trip() {
        for n in 1..=5 {
            let t = freudenthal_seed(n);
            let s = to_ptri(&t);
            let back = parse_ptri(&s).unwrap();
            assert_eq!(back, t);
            assert_eq!(to_ptri(&back), s);
        }
        let s = to_ptri(&freudenthal_seed(3));
        assert_eq!(s.matches("simplex").count(), 6);
        assert_eq!(s.lines().count(), 3 + 6 * 5);
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(parse_ptri("ptri 2\n"), Err(ParseError::Header { line: 1, .. })));
        assert!(matches!(parse_ptri("ptri 1\ndim x\n"), Err(ParseError::Number { line: 2, .. })));
        assert!(matches!(parse_ptri("ptri 1\ndim 9\n"), Err(ParseError::Dimension { .. })));
        let few = "ptri 1\ndim 2\nclasses 1\nsimplex\n0 0\n1 0\n";
        assert!(matches!(parse_ptri(few), Err(ParseError::VertexCount { line: 4, found: 2, .. })));
        let bad = "ptri 1\ndim 2\nclasses 1\nsimplex\n0 0\n1 0 0\n";
        assert!(matches!(parse_ptri(bad), Err(ParseError::CoordinateCount { line: 6, .. })));
        let deg = "ptri 1\ndim 2\nclasses 1\nsimplex\n0 0\n1 1\n2 2\n";
        assert!(matches!(parse_ptri(deg), Err(ParseError::Degenerate { line: 4 })));
        let short = "ptri 1\ndim 2\nclasses 2\nsimplex\n0 0\n1 0\n1 1\n";
        assert_eq!(parse_ptri(short), Err(ParseError::UnexpectedEof));
        let extra = "ptri 1\ndim 1\nclasses 1\nsimplex\n0\n1\nsimplex\n";
        assert!(matches!(parse_ptri(extra), Err(ParseError::Trailing { line: 7 })));
    }

    #[test]
    fn parse_then_validate_are_separate() {
        // one triangle only: volume 1 instead of 2
        let t = parse_ptri("ptri 1\ndim 2\nclasses 1\nsimplex\n0 0\n1 0\n1 1\n").unwrap();
        assert!(!t.validate().is_valid());
    }

    #[test]
    fn checkpoint_round_trip() {
        let mut st = ClosureState::new(&freudenthal_seed(3));
        st.archive.push(freudenthal_seed(3));
        st.queue = VecDeque::from([1]);
        st.processed = 1;
        let back = parse_checkpoint(&to_checkpoint(&st)).unwrap();
        assert_eq!(back, st);
        assert_eq!(
            parse_checkpoint("ptri 1\ndim 1\nclasses 1\nsimplex\n0\n1\nqueue\n5\n"),
            Err(ParseError::QueueIndex(5))
        );
    }

    #[test]
    fn forms() {
        let a = parse_form("2 1/2\n1/2 3\n").unwrap();
        assert_eq!(form_to_string(&a), "2 1/2\n1/2 3\n");
        assert!(matches!(parse_form("1 2\n3 4\n"), Err(ParseError::Form(_))));
        assert!(matches!(parse_form("1 2\n"), Err(ParseError::CoordinateCount { .. })));
    }
}
