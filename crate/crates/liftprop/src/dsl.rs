//! Text format for spaces and maps.
//!
//! A file is a sequence of `space NAME = {...}` and `map NAME = {...} => {...}`
//! statements. A space expression lists chains of points joined by `->`
//! (left specializes to right, i.e. the right point is in the closure of the
//! left), `<-` (the reverse), or `=` (topologically indistinguishable). `#`
//! starts a line comment. In a map statement, points of the codomain
//! expression name the images: a domain point maps to the codomain point
//! with the same identifier, and writing `a=b` in the codomain merges two
//! domain points into one image point.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::finspace::{CMap, FinSpace, TopologyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: unexpected character `{ch}`")]
    UnexpectedChar { line: usize, col: usize, ch: char },
    #[error("{line}:{col}: expected {expected}, found {found}")]
    Unexpected {
        line: usize,
        col: usize,
        expected: &'static str,
        found: String,
    },
    #[error("{line}:{col}: duplicate definition of `{name}`")]
    DuplicateName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: domain point `{name}` is never assigned an image")]
    UnassignedPoint { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {source}")]
    Topology {
        line: usize,
        col: usize,
        source: TopologyError,
    },
}

/// One parsed statement, in file order.
#[derive(Debug, Clone)]
pub enum Item {
    Space { name: String, space: FinSpace },
    Map { name: String, map: CMap },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Arrow,     // ->
    BackArrow, // <-
    Equals,    // =
    Comma,
    LBrace,
    RBrace,
    FatArrow, // =>
    KwSpace,
    KwMap,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Arrow => "`->`".into(),
            Tok::BackArrow => "`<-`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::KwSpace => "`space`".into(),
            Tok::KwMap => "`map`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            '#' => {
                for c in chars.by_ref() {
                    bump(c, &mut line, &mut col);
                    if c == '\n' {
                        break;
                    }
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '{' | '}' | ',' => {
                chars.next();
                bump(c, &mut line, &mut col);
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    _ => Tok::Comma,
                };
                out.push(Spanned { tok, line: tline, col: tcol });
            }
            '-' => {
                chars.next();
                bump('-', &mut line, &mut col);
                match chars.peek() {
                    Some('>') => {
                        chars.next();
                        bump('>', &mut line, &mut col);
                        out.push(Spanned { tok: Tok::Arrow, line: tline, col: tcol });
                    }
                    other => {
                        let ch = other.copied().unwrap_or('-');
                        return Err(ParseError::UnexpectedChar { line, col, ch });
                    }
                }
            }
            '<' => {
                chars.next();
                bump('<', &mut line, &mut col);
                match chars.peek() {
                    Some('-') => {
                        chars.next();
                        bump('-', &mut line, &mut col);
                        out.push(Spanned { tok: Tok::BackArrow, line: tline, col: tcol });
                    }
                    other => {
                        let ch = other.copied().unwrap_or('<');
                        return Err(ParseError::UnexpectedChar { line, col, ch });
                    }
                }
            }
            '=' => {
                chars.next();
                bump('=', &mut line, &mut col);
                if chars.peek() == Some(&'>') {
                    chars.next();
                    bump('>', &mut line, &mut col);
                    out.push(Spanned { tok: Tok::FatArrow, line: tline, col: tcol });
                } else {
                    out.push(Spanned { tok: Tok::Equals, line: tline, col: tcol });
                }
            }
            c if is_ident_char(c) => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if is_ident_char(c) {
                        ident.push(c);
                        chars.next();
                        bump(c, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                let tok = match ident.as_str() {
                    "space" => Tok::KwSpace,
                    "map" => Tok::KwMap,
                    _ => Tok::Ident(ident),
                };
                out.push(Spanned { tok, line: tline, col: tcol });
            }
            ch => return Err(ParseError::UnexpectedChar { line, col, ch }),
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// A space expression before elaboration: idents in first-appearance order
/// plus raw links between them.
#[derive(Debug, Clone, Default)]
struct SpaceExpr {
    idents: Vec<String>,
    /// `(from, to)` meaning `to ∈ cl{from}` after direction normalization.
    arrows: Vec<(usize, usize)>,
    /// `a = b` links (indistinguishability, or merging in a map codomain).
    merges: Vec<(usize, usize)>,
    line: usize,
    col: usize,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<Spanned, ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(ParseError::Unexpected {
                line: t.line,
                col: t.col,
                expected,
                found: t.tok.describe(),
            })
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.col)),
            other => Err(ParseError::Unexpected {
                line: t.line,
                col: t.col,
                expected: "identifier",
                found: other.describe(),
            }),
        }
    }

    fn space_expr(&mut self) -> Result<SpaceExpr, ParseError> {
        let open = self.expect(Tok::LBrace, "`{`")?;
        let mut expr = SpaceExpr {
            line: open.line,
            col: open.col,
            ..SpaceExpr::default()
        };
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut intern = |name: String, expr: &mut SpaceExpr| -> usize {
            *index.entry(name.clone()).or_insert_with(|| {
                expr.idents.push(name);
                expr.idents.len() - 1
            })
        };
        if self.peek().tok == Tok::RBrace {
            self.next();
            return Ok(expr);
        }
        loop {
            // One chain: IDENT (link IDENT)*
            let (first, ..) = self.ident()?;
            let mut prev = intern(first, &mut expr);
            loop {
                let t = self.peek().clone();
                match t.tok {
                    Tok::Arrow | Tok::BackArrow | Tok::Equals => {
                        self.next();
                        let (name, ..) = self.ident()?;
                        let cur = intern(name, &mut expr);
                        match t.tok {
                            Tok::Arrow => expr.arrows.push((prev, cur)),
                            Tok::BackArrow => expr.arrows.push((cur, prev)),
                            Tok::Equals => expr.merges.push((prev, cur)),
                            _ => unreachable!(),
                        }
                        prev = cur;
                    }
                    _ => break,
                }
            }
            let t = self.next();
            match t.tok {
                Tok::Comma => continue,
                Tok::RBrace => break,
                other => {
                    return Err(ParseError::Unexpected {
                        line: t.line,
                        col: t.col,
                        expected: "`,`, `}`, or a link",
                        found: other.describe(),
                    })
                }
            }
        }
        Ok(expr)
    }
}

/// Elaborates a plain space expression: `=`-linked points become
/// indistinguishable (mutual specialization), keeping both names.
fn elaborate_space(expr: &SpaceExpr) -> Result<FinSpace, ParseError> {
    let mut edges: Vec<(usize, usize)> = expr.arrows.clone();
    for &(a, b) in &expr.merges {
        edges.push((a, b));
        edges.push((b, a));
    }
    FinSpace::from_indexed_edges(expr.idents.clone(), &edges).map_err(|source| {
        ParseError::Topology { line: expr.line, col: expr.col, source }
    })
}

/// Elaborates a map statement. The codomain expression's `=`-links merge
/// identifiers into a single codomain point named after the class's first
/// identifier. An identifier shared with the domain pins that domain point's
/// image; identifiers the domain lacks denote fresh codomain points. Every
/// domain point must appear somewhere in the codomain expression.
fn elaborate_map(cod_expr: &SpaceExpr, dom: FinSpace) -> Result<CMap, ParseError> {
    // Union-find the codomain identifiers over `=` links.
    let m = cod_expr.idents.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for &(a, b) in &cod_expr.merges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            // Keep the earlier identifier as the class representative.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    let mut class_of = vec![0usize; m];
    let mut classes: Vec<usize> = Vec::new(); // representative ident per class
    for i in 0..m {
        let r = find(&mut parent, i);
        if r == i {
            classes.push(i);
        }
    }
    for (i, slot) in class_of.iter_mut().enumerate() {
        let r = find(&mut parent, i);
        *slot = classes.iter().position(|&c| c == r).unwrap();
    }

    let cod_points: Vec<String> = classes.iter().map(|&i| cod_expr.idents[i].clone()).collect();
    let cod_edges: Vec<(usize, usize)> = cod_expr
        .arrows
        .iter()
        .map(|&(a, b)| (class_of[a], class_of[b]))
        .collect();
    let cod = FinSpace::from_indexed_edges(cod_points, &cod_edges).map_err(|source| {
        ParseError::Topology { line: cod_expr.line, col: cod_expr.col, source }
    })?;

    // Domain points map to the codomain class carrying the same identifier;
    // identifiers without a domain counterpart are fresh codomain points.
    let mut assign = vec![usize::MAX; dom.len()];
    for (i, ident) in cod_expr.idents.iter().enumerate() {
        if let Some(x) = dom.index_of(ident) {
            assign[x] = class_of[i];
        }
    }
    if let Some(x) = assign.iter().position(|&v| v == usize::MAX) {
        return Err(ParseError::UnassignedPoint {
            line: cod_expr.line,
            col: cod_expr.col,
            name: dom.name(x).to_string(),
        });
    }
    CMap::new(dom, cod, assign).map_err(|source| ParseError::Topology {
        line: cod_expr.line,
        col: cod_expr.col,
        source,
    })
}

/// Parses a whole file of `space` and `map` statements.
pub fn parse_file(input: &str) -> Result<Vec<Item>, ParseError> {
    let mut parser = Parser { toks: lex(input)?, pos: 0 };
    let mut items = Vec::new();
    let mut names: BTreeMap<String, ()> = BTreeMap::new();
    loop {
        let t = parser.next();
        match t.tok {
            Tok::Eof => break,
            Tok::KwSpace => {
                let (name, nline, ncol) = parser.ident()?;
                if names.insert(name.clone(), ()).is_some() {
                    return Err(ParseError::DuplicateName { line: nline, col: ncol, name });
                }
                parser.expect(Tok::Equals, "`=`")?;
                let expr = parser.space_expr()?;
                let space = elaborate_space(&expr)?;
                items.push(Item::Space { name, space });
            }
            Tok::KwMap => {
                let (name, nline, ncol) = parser.ident()?;
                if names.insert(name.clone(), ()).is_some() {
                    return Err(ParseError::DuplicateName { line: nline, col: ncol, name });
                }
                parser.expect(Tok::Equals, "`=`")?;
                let dom_expr = parser.space_expr()?;
                parser.expect(Tok::FatArrow, "`=>`")?;
                let cod_expr = parser.space_expr()?;
                let dom = elaborate_space(&dom_expr)?;
                let map = elaborate_map(&cod_expr, dom)?;
                items.push(Item::Map { name, map });
            }
            other => {
                return Err(ParseError::Unexpected {
                    line: t.line,
                    col: t.col,
                    expected: "`space` or `map`",
                    found: other.describe(),
                })
            }
        }
    }
    Ok(items)
}

/// Parses a bare space expression such as `{a -> b, c}`.
pub fn parse_space(input: &str) -> Result<FinSpace, ParseError> {
    let mut parser = Parser { toks: lex(input)?, pos: 0 };
    let expr = parser.space_expr()?;
    let t = parser.next();
    if t.tok != Tok::Eof {
        return Err(ParseError::Unexpected {
            line: t.line,
            col: t.col,
            expected: "end of input",
            found: t.tok.describe(),
        });
    }
    elaborate_space(&expr)
}

/// Parses a bare map expression `{...} => {...}`.
pub fn parse_map(input: &str) -> Result<CMap, ParseError> {
    let mut parser = Parser { toks: lex(input)?, pos: 0 };
    let dom_expr = parser.space_expr()?;
    parser.expect(Tok::FatArrow, "`=>`")?;
    let cod_expr = parser.space_expr()?;
    let t = parser.next();
    if t.tok != Tok::Eof {
        return Err(ParseError::Unexpected {
            line: t.line,
            col: t.col,
            expected: "end of input",
            found: t.tok.describe(),
        });
    }
    let dom = elaborate_space(&dom_expr)?;
    elaborate_map(&cod_expr, dom)
}

/// Indistinguishability classes of a space, each sorted by point index,
/// listed by least member.
fn indist_classes(space: &FinSpace) -> Vec<Vec<usize>> {
    let n = space.len();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let class: Vec<usize> = (i..n).filter(|&j| space.indistinguishable(i, j)).collect();
        for &j in &class {
            seen[j] = true;
        }
        classes.push(class);
    }
    classes
}

/// Covering edges of the quotient-by-indistinguishability partial order:
/// `a -> b` with no class strictly between.
fn quotient_covers(space: &FinSpace, classes: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let k = classes.len();
    let leq = |a: usize, b: usize| space.specializes(classes[a][0], classes[b][0]);
    let mut covers = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a == b || !leq(a, b) {
                continue;
            }
            let has_mid = (0..k).any(|m| m != a && m != b && leq(a, m) && leq(m, b));
            if !has_mid {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// Renders a space back to the chain syntax. Each indistinguishability class
/// prints as `a=b=...`; covering edges of the quotient order are then walked
/// into as few chains as possible. The output reparses to an equal space.
pub fn render_space(space: &FinSpace) -> String {
    let classes = indist_classes(space);
    let class_label: Vec<String> = classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|&i| space.name(i).to_string())
                .collect::<Vec<_>>()
                .join("=")
        })
        .collect();
    let covers = quotient_covers(space, &classes);
    let chains = walk_chains(classes.len(), &covers);

    let mut pieces: Vec<String> = Vec::new();
    let mut used = vec![false; classes.len()];
    for chain in &chains {
        let mut s = String::new();
        for (k, step) in chain.iter().enumerate() {
            match step {
                ChainStep::Start(c) => {
                    used[*c] = true;
                    s.push_str(&class_label[*c]);
                    debug_assert_eq!(k, 0);
                }
                ChainStep::Forward(c) => {
                    used[*c] = true;
                    write!(s, " -> {}", class_label[*c]).unwrap();
                }
                ChainStep::Back(c) => {
                    used[*c] = true;
                    write!(s, " <- {}", class_label[*c]).unwrap();
                }
            }
        }
        pieces.push(s);
    }
    for (c, label) in class_label.iter().enumerate() {
        if !used[c] {
            pieces.push(label.clone());
        }
    }
    format!("{{{}}}", pieces.join(", "))
}

enum ChainStep {
    Start(usize),
    Forward(usize),
    Back(usize),
}

/// Greedy chain cover of an edge set: repeatedly start at a node of odd
/// unused degree (least index first, falling back to any node with unused
/// edges) and extend through unused edges in either direction.
fn walk_chains(k: usize, covers: &[(usize, usize)]) -> Vec<Vec<ChainStep>> {
    let mut unused: Vec<bool> = vec![true; covers.len()];
    let mut remaining = covers.len();
    let degree = |node: usize, unused: &[bool]| -> usize {
        covers
            .iter()
            .enumerate()
            .filter(|&(e, &(a, b))| unused[e] && (a == node || b == node))
            .count()
    };
    let mut chains = Vec::new();
    while remaining > 0 {
        let start = (0..k)
            .find(|&v| degree(v, &unused) % 2 == 1)
            .or_else(|| (0..k).find(|&v| degree(v, &unused) > 0))
            .expect("edges remain");
        let mut chain = vec![ChainStep::Start(start)];
        let mut at = start;
        loop {
            let next = covers.iter().enumerate().find_map(|(e, &(a, b))| {
                if !unused[e] {
                    None
                } else if a == at {
                    Some((e, ChainStep::Forward(b), b))
                } else if b == at {
                    Some((e, ChainStep::Back(a), a))
                } else {
                    None
                }
            });
            match next {
                Some((e, step, to)) => {
                    unused[e] = false;
                    remaining -= 1;
                    chain.push(step);
                    at = to;
                }
                None => break,
            }
        }
        chains.push(chain);
    }
    chains
}

/// Renders a map as `{dom} => {cod-with-merges}`: the codomain expression
/// names each image point by the `=`-joined list of its preimage points,
/// so the output reparses to an equal map. Codomain points with empty
/// preimage keep their own name, primed until it avoids the domain's names.
pub fn render_map(map: &CMap) -> String {
    let dom_text = render_space(map.dom());
    let cod = map.cod();
    let mut label: Vec<String> = Vec::with_capacity(cod.len());
    for y in 0..cod.len() {
        let preimage: Vec<&str> = (0..map.dom().len())
            .filter(|&x| map.apply(x) == y)
            .map(|x| map.dom().name(x))
            .collect();
        if preimage.is_empty() {
            let mut name = cod.name(y).to_string();
            while map.dom().index_of(&name).is_some() {
                name.push('\'');
            }
            label.push(name);
        } else {
            label.push(preimage.join("="));
        }
    }

    // Same chain walk as render_space, but over the codomain's own quotient
    // structure with the preimage labels.
    let classes = indist_classes(cod);
    let class_label: Vec<String> = classes
        .iter()
        .map(|c| c.iter().map(|&y| label[y].clone()).collect::<Vec<_>>().join("="))
        .collect();
    let covers = quotient_covers(cod, &classes);
    let chains = walk_chains(classes.len(), &covers);
    let mut pieces: Vec<String> = Vec::new();
    let mut used = vec![false; classes.len()];
    for chain in &chains {
        let mut s = String::new();
        for step in chain {
            match step {
                ChainStep::Start(c) => {
                    used[*c] = true;
                    s.push_str(&class_label[*c]);
                }
                ChainStep::Forward(c) => {
                    used[*c] = true;
                    write!(s, " -> {}", class_label[*c]).unwrap();
                }
                ChainStep::Back(c) => {
                    used[*c] = true;
                    write!(s, " <- {}", class_label[*c]).unwrap();
                }
            }
        }
        pieces.push(s);
    }
    for (c, label) in class_label.iter().enumerate() {
        if !used[c] {
            pieces.push(label.clone());
        }
    }
    format!("{dom_text} => {{{}}}", pieces.join(", "))
}

/// Renders a space in Graphviz DOT: one node per indistinguishability class
/// (labeled `a=b` when merged) and one edge per covering pair of the
/// quotient order.
pub fn render_dot(space: &FinSpace) -> String {
    let classes = indist_classes(space);
    let labels: Vec<String> = classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|&i| space.name(i).to_string())
                .collect::<Vec<_>>()
                .join("=")
        })
        .collect();
    dot_graph(space, &classes, &labels)
}

/// Renders a map in Graphviz DOT as its codomain's diagram with each point
/// labeled by the `=`-joined list of its preimage points (its own name when
/// the preimage is empty).
pub fn render_dot_map(map: &CMap) -> String {
    let cod = map.cod();
    let point_label: Vec<String> = (0..cod.len())
        .map(|y| {
            let preimage: Vec<&str> = (0..map.dom().len())
                .filter(|&x| map.apply(x) == y)
                .map(|x| map.dom().name(x))
                .collect();
            if preimage.is_empty() {
                cod.name(y).to_string()
            } else {
                preimage.join("=")
            }
        })
        .collect();
    let classes = indist_classes(cod);
    let labels: Vec<String> = classes
        .iter()
        .map(|c| c.iter().map(|&y| point_label[y].clone()).collect::<Vec<_>>().join("="))
        .collect();
    dot_graph(cod, &classes, &labels)
}

fn dot_graph(space: &FinSpace, classes: &[Vec<usize>], labels: &[String]) -> String {
    let mut out = String::from("digraph topo {\n");
    for (c, class) in classes.iter().enumerate() {
        let id = space.name(class[0]);
        writeln!(out, "  \"{id}\" [label=\"{}\"];", labels[c]).unwrap();
    }
    for (a, b) in quotient_covers(space, classes) {
        let from = space.name(classes[a][0]);
        let to = space.name(classes[b][0]);
        writeln!(out, "  \"{from}\" -> \"{to}\";").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::PointSet;

    fn tau_text() -> &'static str {
        "{L -> 0 <- M -> 1 <- R}"
    }

    #[test]
    fn parses_arrow_chain() {
        let x = parse_space(tau_text()).unwrap();
        assert_eq!(x.points(), &["L", "0", "M", "1", "R"]);
        let l = x.index_of("L").unwrap();
        let zero = x.index_of("0").unwrap();
        let m = x.index_of("M").unwrap();
        assert!(x.specializes(l, zero));
        assert!(x.specializes(m, zero));
        assert!(!x.specializes(l, m));
    }

    #[test]
    fn parses_indistinguishable_points() {
        let x = parse_space("{a = b -> c}").unwrap();
        let (a, b, c) = (
            x.index_of("a").unwrap(),
            x.index_of("b").unwrap(),
            x.index_of("c").unwrap(),
        );
        assert!(x.indistinguishable(a, b));
        assert!(x.specializes(a, c) && x.specializes(b, c));
        assert!(!x.indistinguishable(a, c));
    }

    #[test]
    fn parses_multiple_chains_and_isolated_points() {
        let x = parse_space("{x -> a, x -> b, y -> b, y -> c, z}").unwrap();
        assert_eq!(x.len(), 6);
        let z = x.index_of("z").unwrap();
        assert_eq!(x.min_open(PointSet::singleton(z)).unwrap(), PointSet::singleton(z));
        assert_eq!(parse_space("{}").unwrap().len(), 0);
    }

    #[test]
    fn parses_file_with_comments() {
        let text = "\
# interval shadow
space tau = {L -> 0 <- M -> 1 <- R}

map collapse = {a -> b} => {a=b}
";
        let items = parse_file(text).unwrap();
        assert_eq!(items.len(), 2);
        match &items[0] {
            Item::Space { name, space } => {
                assert_eq!(name, "tau");
                assert_eq!(space.len(), 5);
            }
            other => panic!("expected a space, got {other:?}"),
        }
        match &items[1] {
            Item::Map { name, map } => {
                assert_eq!(name, "collapse");
                assert_eq!(map.dom().len(), 2);
                assert_eq!(map.cod().len(), 1);
                assert_eq!(map.assign(), &[0, 0]);
            }
            other => panic!("expected a map, got {other:?}"),
        }
    }

    #[test]
    fn map_codomain_merge_and_relabel() {
        // Collapse the fence's two open points into one, giving the claw
        // with a, b, c closed under the merged class.
        let map =
            parse_map("{x -> a, x -> b, y -> b, y -> c} => {a <- x = y -> b, x -> c}").unwrap();
        assert_eq!(map.cod().len(), 4);
        let xy = map.cod().index_of("x").unwrap();
        assert_eq!(map.apply(map.dom().index_of("x").unwrap()), xy);
        assert_eq!(map.apply(map.dom().index_of("y").unwrap()), xy);
    }

    #[test]
    fn map_with_fresh_codomain_points() {
        // Five-point chain onto its double-pointed shadow: the three middle
        // points collapse, and L', R' are fresh (empty preimage).
        let map = parse_map(
            "{L -> 0 <- M -> 1 <- R} => {L' <- L -> 0 = M = 1 <- R -> R'}",
        )
        .unwrap();
        assert_eq!(map.dom().len(), 5);
        assert_eq!(map.cod().len(), 5);
        let mid = map.cod().index_of("0").unwrap();
        for p in ["0", "M", "1"] {
            assert_eq!(map.apply(map.dom().index_of(p).unwrap()), mid);
        }
        let (l, r) = (map.dom().index_of("L").unwrap(), map.dom().index_of("R").unwrap());
        assert_ne!(map.apply(l), mid);
        assert_ne!(map.apply(r), mid);
        // Fresh points are the closed ends, below the images of L and R.
        let lp = map.cod().index_of("L'").unwrap();
        assert!(map.cod().specializes(map.apply(l), lp));
    }

    #[test]
    fn map_errors() {
        // Domain point never assigned.
        let err = parse_map("{a -> b, c} => {a -> b}").unwrap_err();
        assert!(matches!(err, ParseError::UnassignedPoint { ref name, .. } if name == "c"));
        // Non-monotone assignment.
        let err = parse_map("{a -> b} => {b -> a}").unwrap_err();
        assert!(matches!(err, ParseError::Topology { source: TopologyError::NotMonotone { .. }, .. }));
    }

    #[test]
    fn lex_and_parse_errors_carry_positions() {
        let err = parse_space("{a @ b}").unwrap_err();
        assert!(matches!(err, ParseError::UnexpectedChar { line: 1, col: 4, ch: '@' }));
        let err = parse_file("space x = {a -> b} space x = {c}").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateName { ref name, .. } if name == "x"));
        let err = parse_space("{a -> }").unwrap_err();
        assert!(matches!(err, ParseError::Unexpected { expected: "identifier", .. }));
    }

    /// Homeomorphic via the identity on point names; rendering may reorder
    /// points, so round-trip checks compare up to this.
    fn iso_by_names(a: &FinSpace, b: &FinSpace) -> bool {
        let mut an: Vec<&str> = a.points().iter().map(String::as_str).collect();
        let mut bn: Vec<&str> = b.points().iter().map(String::as_str).collect();
        an.sort_unstable();
        bn.sort_unstable();
        if an != bn {
            return false;
        }
        an.iter().all(|p| {
            an.iter().all(|q| {
                let (ap, aq) = (a.index_of(p).unwrap(), a.index_of(q).unwrap());
                let (bp, bq) = (b.index_of(p).unwrap(), b.index_of(q).unwrap());
                a.specializes(ap, aq) == b.specializes(bp, bq)
            })
        })
    }

    #[test]
    fn render_space_round_trips_fixed_examples() {
        let cases = [
            "{L -> 0 <- M -> 1 <- R}",
            "{a = b -> c}",
            "{x -> a, x -> b, y -> b, y -> c}",
            "{}",
            "{a, b, c}",
            "{0' <- m -> 1'}",
            "{u <- u' -> r <- v' -> v}",
        ];
        for text in cases {
            let x = parse_space(text).unwrap();
            let rendered = render_space(&x);
            let back = parse_space(&rendered).unwrap();
            assert!(iso_by_names(&back, &x), "render {text} as {rendered}");
        }
        // Exact text for the plain chain.
        let tau = parse_space(tau_text()).unwrap();
        assert_eq!(render_space(&tau), "{L -> 0 <- M -> 1 <- R}");
    }

    #[test]
    fn render_map_round_trips() {
        let cases = [
            "{a -> b} => {a=b}",
            "{x -> a, x -> b, y -> b, y -> c} => {a <- x = y -> b, x -> c}",
            "{u <- u' -> r <- v' -> v} => {u <- u'=r=v' -> v}",
            "{L -> 0 <- M -> 1 <- R} => {L' <- L -> 0 = M = 1 <- R -> R'}",
        ];
        for text in cases {
            let map = parse_map(text).unwrap();
            let rendered = render_map(&map);
            let back = parse_map(&rendered).unwrap();
            assert!(iso_by_names(back.dom(), map.dom()), "in {text} as {rendered}");
            // The codomain is relabeled by preimages, so compare the fiber
            // partition, the transported order relation, and the shape.
            let dn = map.dom().len();
            for p in 0..dn {
                let name = map.dom().name(p);
                let bp = back.dom().index_of(name).unwrap();
                for q in 0..dn {
                    let bq = back.dom().index_of(map.dom().name(q)).unwrap();
                    assert_eq!(
                        map.apply(p) == map.apply(q),
                        back.apply(bp) == back.apply(bq),
                        "fibers differ at ({name}, {}) in {text} as {rendered}",
                        map.dom().name(q)
                    );
                    assert_eq!(
                        map.cod().specializes(map.apply(p), map.apply(q)),
                        back.cod().specializes(back.apply(bp), back.apply(bq)),
                        "image order differs in {text} as {rendered}"
                    );
                }
            }
            assert_eq!(
                back.cod().canonical_form(),
                map.cod().canonical_form(),
                "in {text} as {rendered}"
            );
        }
    }

    #[test]
    fn render_dot_shape() {
        let tau = parse_space(tau_text()).unwrap();
        let dot = render_dot(&tau);
        assert!(dot.starts_with("digraph topo {"));
        assert_eq!(dot.matches(';').count(), 9, "5 nodes + 4 cover edges:\n{dot}");
        assert!(dot.contains("\"L\" [label=\"L\"];"));
        assert!(dot.contains("\"L\" -> \"0\";"));
        assert!(dot.contains("\"M\" -> \"0\";"));

        // A merged pair collapses to a single class node labeled a=b.
        let glued = parse_space("{a = b -> c}").unwrap();
        let dot = render_dot(&glued);
        assert!(dot.contains("\"a\" [label=\"a=b\"];"), "{dot}");
        assert!(dot.contains("\"a\" -> \"c\";"), "{dot}");
        assert!(!dot.contains("\"b\" ->"), "{dot}");
    }

    #[test]
    fn render_dot_map_labels_points_by_preimage() {
        let file = "space d = {L -> 0 <- M -> 1 <- R}\n\
                    map q = {L -> 0 <- M -> 1 <- R} => {L' <- L -> 0 = M = 1 <- R -> R'}";
        let items = parse_file(file).unwrap();
        let Item::Map { map, .. } = &items[1] else { panic!("expected map") };
        let dot = render_dot_map(map);
        assert!(dot.contains("[label=\"0=M=1\"];"), "{dot}");
        assert!(dot.contains("[label=\"L'\"];"), "{dot}");
        assert!(dot.contains("\"L\" -> \"L'\";"), "{dot}");
    }

    #[test]
    fn transitive_edges_do_not_survive_render() {
        // a -> b -> c plus the redundant a -> c; render walks covers only.
        let x = parse_space("{a -> b -> c, a -> c}").unwrap();
        assert_eq!(render_space(&x), "{a -> b -> c}");
    }
}
