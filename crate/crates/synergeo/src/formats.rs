//! Text formats: point files and certificates.
//!
//! Point files hold one `x y` pair per line; `#` starts a comment and blank
//! lines separate sequences. Certificates hold one argument per line:
//!
//! ```text
//! DOM  i a     <- j b c ; ...
//! MAX  i a b   <- j a b ; ...
//! ELIM i a j b <- k c d e ; ...
//! CONV i a b   <- k c d e ; ...
//! ```
//!
//! All indices are 1-based. An empty maximality witness is written with
//! `a = b + 1`. Output blocks are the MAX (CONV) subjects in file order.

use std::fmt::Write as _;

use synergeo_core::geom::COORD_LIMIT;
use synergeo_core::hull::{HullArgument, HullCertificate, HullKind};
use synergeo_core::maxima::{BlockRef, MaximaArgument, MaximaCertificate, MaximaKind};
use synergeo_core::Point;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Whitespace-separated tokens of a line with their 1-based columns,
/// comment stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

/// Parses a point file into its sequences.
pub fn parse_points(text: &str) -> Result<Vec<Vec<Point>>, ParseError> {
    let mut seqs = Vec::new();
    let mut cur: Vec<Point> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        if line.trim().is_empty() {
            if !cur.is_empty() {
                seqs.push(std::mem::take(&mut cur));
            }
            continue;
        }
        let toks = tokens(line);
        match toks.as_slice() {
            [] => {}
            [(cx, x), (cy, y)] => {
                let x = coordinate(ln, *cx, x)?;
                let y = coordinate(ln, *cy, y)?;
                cur.push(Point::new(x, y));
            }
            [(c, _)] => return Err(err(ln, *c, "expected two coordinates")),
            [_, _, (c, _), ..] => return Err(err(ln, *c, "unexpected token after the coordinates")),
        }
    }
    if !cur.is_empty() {
        seqs.push(cur);
    }
    Ok(seqs)
}

fn coordinate(line: usize, column: usize, tok: &str) -> Result<i64, ParseError> {
    let v: i64 = tok.parse().map_err(|_| err(line, column, format!("not an integer: {tok:?}")))?;
    if v.abs() > COORD_LIMIT {
        return Err(err(line, column, format!("coordinate {v} outside ±2^31")));
    }
    Ok(v)
}

/// Prints sequences in the point-file grammar.
pub fn format_points<S: AsRef<[Point]>>(seqs: &[S]) -> String {
    let mut out = String::new();
    for (k, s) in seqs.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for p in s.as_ref() {
            let _ = writeln!(out, "{} {}", p.x, p.y);
        }
    }
    out
}

fn join_witnesses(ws: &[BlockRef], f: impl Fn(&BlockRef) -> String) -> String {
    ws.iter().map(f).collect::<Vec<_>>().join(" ; ")
}

pub fn format_maxima_certificate(cert: &MaximaCertificate) -> String {
    let mut out = String::new();
    for a in &cert.arguments {
        let s = a.subject;
        let w = join_witnesses(&a.witnesses, |b| format!("{} {} {}", b.seq, b.lo, b.hi));
        let _ = match a.kind {
            MaximaKind::Domination => writeln!(out, "DOM {} {} <- {w}", s.seq, s.lo),
            MaximaKind::Maximality => writeln!(out, "MAX {} {} {} <- {w}", s.seq, s.lo, s.hi),
        };
    }
    out.lines().map(|l| l.trim_end().to_string() + "\n").collect()
}

pub fn format_hull_certificate(cert: &HullCertificate) -> String {
    let mut out = String::new();
    for a in &cert.arguments {
        let [(i, pa), (j, pb)] = a.anchors;
        let w = join_witnesses(&a.witnesses, |b| format!("{} {} {} {}", b.seq, b.lo, b.pivot.unwrap_or(0), b.hi));
        let _ = match a.kind {
            HullKind::Eliminator => writeln!(out, "ELIM {i} {pa} {j} {pb} <- {w}"),
            HullKind::Convex => writeln!(out, "CONV {i} {pa} {pb} <- {w}"),
        };
    }
    out.lines().map(|l| l.trim_end().to_string() + "\n").collect()
}

/// One certificate line: keyword, head numbers, witness groups.
struct Line {
    keyword: String,
    head: Vec<usize>,
    groups: Vec<Vec<usize>>,
}

fn number(line: usize, column: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| err(line, column, format!("not an index: {tok:?}")))
}

fn cert_lines(text: &str) -> Result<Vec<(usize, Line)>, ParseError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let toks = tokens(raw);
        let Some(&(_, keyword)) = toks.first() else { continue };
        let Some(arrow) = toks.iter().position(|&(_, t)| t == "<-") else {
            return Err(err(ln, raw.len() + 1, "missing `<-`"));
        };
        let head = toks[1..arrow].iter().map(|&(c, t)| number(ln, c, t)).collect::<Result<Vec<_>, _>>()?;
        let mut groups = vec![Vec::new()];
        for &(c, t) in &toks[arrow + 1..] {
            if t == ";" {
                groups.push(Vec::new());
            } else {
                groups.last_mut().unwrap().push(number(ln, c, t)?);
            }
        }
        if groups.len() == 1 && groups[0].is_empty() {
            groups.clear();
        }
        out.push((ln, Line { keyword: keyword.to_string(), head, groups }));
    }
    Ok(out)
}

fn expect(ln: usize, got: &[usize], want: usize, what: &str) -> Result<(), ParseError> {
    if got.len() != want {
        return Err(err(ln, 1, format!("{what}: expected {want} numbers, got {}", got.len())));
    }
    Ok(())
}

pub fn parse_maxima_certificate(text: &str) -> Result<MaximaCertificate, ParseError> {
    let mut cert = MaximaCertificate::default();
    for (ln, l) in cert_lines(text)? {
        let mut ws = Vec::with_capacity(l.groups.len());
        for g in &l.groups {
            expect(ln, g, 3, "witness")?;
            ws.push(BlockRef::new(g[0], g[1], g[2]));
        }
        match l.keyword.as_str() {
            "DOM" => {
                expect(ln, &l.head, 2, "DOM")?;
                cert.arguments.push(MaximaArgument::domination(l.head[0], l.head[1], ws));
            }
            "MAX" => {
                expect(ln, &l.head, 3, "MAX")?;
                let b = BlockRef::new(l.head[0], l.head[1], l.head[2]);
                cert.output_blocks.push(b);
                cert.arguments.push(MaximaArgument::maximality(b, ws));
            }
            k => return Err(err(ln, 1, format!("unknown argument kind {k:?}"))),
        }
    }
    Ok(cert)
}

pub fn parse_hull_certificate(text: &str) -> Result<HullCertificate, ParseError> {
    let mut cert = HullCertificate::default();
    for (ln, l) in cert_lines(text)? {
        let mut ws = Vec::with_capacity(l.groups.len());
        for g in &l.groups {
            expect(ln, g, 4, "witness")?;
            ws.push(BlockRef::with_pivot(g[0], g[1], g[2], g[3]));
        }
        match l.keyword.as_str() {
            "ELIM" => {
                expect(ln, &l.head, 4, "ELIM")?;
                let h = &l.head;
                cert.arguments.push(HullArgument::eliminator((h[0], h[1]), (h[2], h[3]), ws));
            }
            "CONV" => {
                expect(ln, &l.head, 3, "CONV")?;
                let h = &l.head;
                cert.output_blocks.push(BlockRef::new(h[0], h[1], h[2]));
                cert.arguments.push(HullArgument::convex(h[0], h[1], h[2], ws));
            }
            k => return Err(err(ln, 1, format!("unknown argument kind {k:?}"))),
        }
    }
    Ok(cert)
}
