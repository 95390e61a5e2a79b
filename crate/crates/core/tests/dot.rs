//! DOT exports parsed back by a recursive-descent reader of the Graphviz
//! grammar (no subgraphs or ports) and compared with the source graph.

mod common;

use fropin::analysis::{cayley_graph, export_dot, IndexedDigraph};
use fropin::{full_transformation_generators, Side, Word};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Quoted(String),
    Sym(&'static str),
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            _ if c.is_ascii_whitespace() => i += 1,
            '{' | '}' | '[' | ']' | ';' | ',' | '=' | ':' => {
                out.push(Tok::Sym(match c {
                    '{' => "{",
                    '}' => "}",
                    '[' => "[",
                    ']' => "]",
                    ';' => ";",
                    ',' => ",",
                    '=' => "=",
                    _ => ":",
                }));
                i += 1;
            }
            '-' if b.get(i + 1) == Some(&b'>') => {
                out.push(Tok::Sym("->"));
                i += 2;
            }
            '-' if b.get(i + 1) == Some(&b'-') => {
                out.push(Tok::Sym("--"));
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match b.get(i) {
                        None => return Err("unterminated string".into()),
                        Some(b'"') => break,
                        Some(b'\\') if b.get(i + 1) == Some(&b'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some(&x) => {
                            s.push(x as char);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Quoted(s));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push(Tok::Id(src[start..i].to_owned()));
            }
            _ if c.is_ascii_digit() || c == '.' || c == '-' => {
                let start = i;
                i += 1;
                while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
                    i += 1;
                }
                let num = &src[start..i];
                if num == "-" || num == "." || num.matches('.').count() > 1 {
                    return Err(format!("bad numeral {num:?}"));
                }
                out.push(Tok::Id(num.to_owned()));
            }
            _ => return Err(format!("unexpected character {c:?} at {i}")),
        }
    }
    Ok(out)
}

#[derive(Debug, Default)]
struct Parsed {
    directed: bool,
    nodes: Vec<(String, Vec<(String, String)>)>,
    edges: Vec<(String, String, Vec<(String, String)>)>,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<(), String> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(format!("expected {sym:?} at token {}, found {:?}", self.pos, self.peek()))
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Id(s)) if s.eq_ignore_ascii_case(kw))
    }

    fn id(&mut self) -> Result<String, String> {
        let t = self.peek().cloned();
        match t {
            Some(Tok::Id(s)) | Some(Tok::Quoted(s)) => {
                self.pos += 1;
                Ok(s)
            }
            t => Err(format!("expected an ID at token {}, found {t:?}", self.pos)),
        }
    }

    fn graph(&mut self) -> Result<Parsed, String> {
        let mut p = Parsed::default();
        if self.keyword("strict") {
            self.pos += 1;
        }
        if self.keyword("digraph") {
            p.directed = true;
        } else if !self.keyword("graph") {
            return Err("expected graph or digraph".into());
        }
        self.pos += 1;
        if !matches!(self.peek(), Some(Tok::Sym("{"))) {
            self.id()?;
        }
        self.expect("{")?;
        while !self.eat("}") {
            self.stmt(&mut p)?;
            self.eat(";");
        }
        if self.pos != self.toks.len() {
            return Err("trailing tokens".into());
        }
        Ok(p)
    }

    fn attr_list(&mut self) -> Result<Vec<(String, String)>, String> {
        let mut attrs = Vec::new();
        while self.eat("[") {
            while !self.eat("]") {
                let k = self.id()?;
                self.expect("=")?;
                let v = self.id()?;
                attrs.push((k, v));
                if !self.eat(";") {
                    self.eat(",");
                }
            }
        }
        Ok(attrs)
    }

    fn stmt(&mut self, p: &mut Parsed) -> Result<(), String> {
        if self.keyword("graph") || self.keyword("node") || self.keyword("edge") {
            self.pos += 1;
            self.attr_list()?;
            return Ok(());
        }
        let first = self.id()?;
        if self.eat("=") {
            self.id()?;
            return Ok(());
        }
        let op = if p.directed { "->" } else { "--" };
        let mut chain = vec![first];
        while self.eat(op) {
            chain.push(self.id()?);
        }
        let attrs = self.attr_list()?;
        if chain.len() == 1 {
            p.nodes.push((chain.pop().unwrap(), attrs));
        } else {
            for w in chain.windows(2) {
                p.edges.push((w[0].clone(), w[1].clone(), attrs.clone()));
            }
        }
        Ok(())
    }
}

fn parse_dot(src: &str) -> Result<Parsed, String> {
    Parser { toks: lex(src)?, pos: 0 }.graph()
}

fn label(attrs: &[(String, String)]) -> Option<&str> {
    attrs.iter().find(|(k, _)| k == "label").map(|(_, v)| v.as_str())
}

fn check_round_trip(g: &IndexedDigraph, words: Option<&[Word]>) {
    let doc = export_dot(g, words).unwrap();
    let p = parse_dot(&doc).unwrap_or_else(|e| panic!("{e}\n{doc}"));
    assert!(p.directed);
    let mut edges: Vec<(usize, usize, usize)> = p
        .edges
        .iter()
        .map(|(u, v, attrs)| {
            let a = label(attrs).and_then(|l| l.strip_prefix('a')).expect("edge label aN");
            (u.parse().unwrap(), a.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    let mut expected: Vec<_> = g.edges().collect();
    edges.sort_unstable();
    expected.sort_unstable();
    assert_eq!(edges, expected);

    let mut seen: Vec<usize> = p.nodes.iter().map(|(v, _)| v.parse().unwrap()).collect();
    seen.extend(edges.iter().flat_map(|&(u, _, v)| [u, v]));
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen, (0..g.vertex_count()).collect::<Vec<_>>());

    if let Some(words) = words {
        assert_eq!(p.nodes.len(), g.vertex_count());
        for (v, attrs) in &p.nodes {
            let v: usize = v.parse().unwrap();
            assert_eq!(label(attrs), Some(words[v].to_string().as_str()));
        }
    }
}

#[test]
fn reader_rejects_malformed_documents() {
    assert!(parse_dot("digraph { 0 -> 1 [label=\"a0\"]; }").is_ok());
    assert!(parse_dot("strict digraph G { node [shape=box]; 0; 0 -> 1 -> 2 }").is_ok());
    assert!(parse_dot("digraph { 0 -> }").is_err());
    assert!(parse_dot("digraph { 0 -- 1 }").is_err());
    assert!(parse_dot("digraph { 0 [label=] }").is_err());
    assert!(parse_dot("digraph { 0 -> 1").is_err());
    assert!(parse_dot("digraph { \"open }").is_err());
    assert!(parse_dot("graph { } }").is_err());
}

#[test]
fn t3_cayley_graphs_round_trip() {
    let s = common::complete(full_transformation_generators(3));
    let words: Vec<Word> = (0..s.len()).map(|i| s.word_of(i).unwrap()).collect();
    for side in [Side::Right, Side::Left] {
        let g = cayley_graph(&s, side).unwrap();
        check_round_trip(&g, None);
        check_round_trip(&g, Some(&words));
    }
}

#[test]
fn isolated_vertices_round_trip() {
    let g = IndexedDigraph::from_edges(4, [(0, 2, 1), (1, 0, 1)]).unwrap();
    check_round_trip(&g, None);
    let words = [Word::new(vec![0]), Word::new(vec![1]), Word::new(vec![0, 1]), Word::new(vec![2])];
    check_round_trip(&g, Some(&words));
}
