//! Newick parsing and writing for a topology-only dialect: bare
//! alphanumeric/underscore labels, branch lengths and inner-node labels are
//! parsed and discarded, quoted labels are unsupported.
//!
//! Parsing goes through a name-carrying shape so that several trees can be
//! interned against one shared [`LabelUniverse`]; ids are only assigned once
//! all labels are known.

use crate::label::LabelUniverse;
use crate::tree::{Mode, RootedTree, TreeError, TreeShape, UnrootedTree};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NewickError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate leaf label '{0}'")]
    DuplicateLabel(String),
}

/// Parsed tree structure with label names still attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedShape {
    Leaf(String),
    Node(Vec<NamedShape>),
}

impl NamedShape {
    pub fn labels<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            NamedShape::Leaf(s) => out.push(s),
            NamedShape::Node(kids) => {
                for k in kids {
                    k.labels(out);
                }
            }
        }
    }

    /// Resolves names to ids; every label must exist in the universe.
    pub fn to_tree_shape(&self, universe: &LabelUniverse) -> TreeShape {
        match self {
            NamedShape::Leaf(s) => TreeShape::Leaf(universe.id(s).expect("label interned")),
            NamedShape::Node(kids) => {
                TreeShape::Node(kids.iter().map(|k| k.to_tree_shape(universe)).collect())
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T, NewickError> {
        Err(NewickError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn is_label_byte(b: u8) -> bool {
        b.is_ascii_alphanumeric() || b == b'_'
    }

    fn label(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.bytes.len() && Self::is_label_byte(self.bytes[self.pos]) {
            self.pos += 1;
        }
        if self.pos > start {
            Some(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
        } else {
            None
        }
    }

    /// Skips an optional inner-node label and an optional `:length` suffix.
    fn skip_decorations(&mut self, allow_label: bool) {
        self.skip_ws();
        if allow_label {
            self.label();
            self.skip_ws();
        }
        if self.peek() == Some(b':') {
            self.pos += 1;
            while self
                .peek()
                .map(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
                .unwrap_or(false)
            {
                self.pos += 1;
            }
        }
    }

    fn subtree(&mut self) -> Result<NamedShape, NewickError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let mut kids = vec![self.subtree()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            kids.push(self.subtree()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.err("expected ',' or ')'"),
                    }
                }
                self.skip_decorations(true);
                Ok(NamedShape::Node(kids))
            }
            Some(b) if Self::is_label_byte(b) => {
                let name = self.label().unwrap();
                self.skip_decorations(false);
                Ok(NamedShape::Leaf(name))
            }
            _ => self.err("expected '(' or a label"),
        }
    }

    fn tree(&mut self) -> Result<NamedShape, NewickError> {
        let t = self.subtree()?;
        self.skip_ws();
        if self.peek() != Some(b';') {
            return self.err("expected ';'");
        }
        self.pos += 1;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.err("trailing input after ';'");
        }
        Ok(t)
    }
}

/// Parses one Newick expression into a named shape.
pub fn parse_shape(text: &str) -> Result<NamedShape, NewickError> {
    Parser::new(text).tree()
}

fn lift_tree_error(e: TreeError, universe: &LabelUniverse) -> NewickError {
    match e {
        TreeError::DuplicateLabel(id) => NewickError::DuplicateLabel(universe.name(id).to_string()),
        other => panic!("unexpected tree construction error: {other}"),
    }
}

/// Builds a rooted tree from a parsed shape against a shared universe.
pub fn shape_to_rooted(
    shape: &NamedShape,
    universe: &LabelUniverse,
) -> Result<RootedTree, NewickError> {
    RootedTree::from_shape(shape.to_tree_shape(universe)).map_err(|e| lift_tree_error(e, universe))
}

/// Builds an unrooted tree from a parsed shape: a rooted topology whose root
/// has two children gets its root edges fused. Single-leaf input yields the
/// degenerate one-node tree.
pub fn shape_to_unrooted(
    shape: &NamedShape,
    universe: &LabelUniverse,
) -> Result<UnrootedTree, NewickError> {
    let rooted = shape_to_rooted(shape, universe)?;
    if rooted.num_leaves() < 2 {
        return Ok(match rooted.leafset().min() {
            Some(l) => UnrootedTree::single_leaf(l),
            None => UnrootedTree::empty(),
        });
    }
    Ok(rooted.unroot().expect("at least two leaves"))
}

/// Parses several Newick strings against one shared universe.
pub fn parse_many_rooted(
    texts: &[&str],
) -> Result<(Vec<RootedTree>, LabelUniverse), NewickError> {
    let shapes: Vec<NamedShape> = texts
        .iter()
        .map(|t| parse_shape(t))
        .collect::<Result<_, _>>()?;
    let mut labels: Vec<&str> = Vec::new();
    for s in &shapes {
        s.labels(&mut labels);
    }
    let universe = LabelUniverse::from_labels(labels.iter().map(|s| s.to_string()));
    let trees = shapes
        .iter()
        .map(|s| shape_to_rooted(s, &universe))
        .collect::<Result<_, _>>()?;
    Ok((trees, universe))
}

/// Unrooted counterpart of [`parse_many_rooted`].
pub fn parse_many_unrooted(
    texts: &[&str],
) -> Result<(Vec<UnrootedTree>, LabelUniverse), NewickError> {
    let shapes: Vec<NamedShape> = texts
        .iter()
        .map(|t| parse_shape(t))
        .collect::<Result<_, _>>()?;
    let mut labels: Vec<&str> = Vec::new();
    for s in &shapes {
        s.labels(&mut labels);
    }
    let universe = LabelUniverse::from_labels(labels.iter().map(|s| s.to_string()));
    let trees = shapes
        .iter()
        .map(|s| shape_to_unrooted(s, &universe))
        .collect::<Result<_, _>>()?;
    Ok((trees, universe))
}

/// Convenience single-tree parse with its own universe.
pub fn parse_rooted_str(text: &str) -> Result<(RootedTree, LabelUniverse), NewickError> {
    let (mut trees, u) = parse_many_rooted(&[text])?;
    Ok((trees.pop().unwrap(), u))
}

/// Convenience single-tree parse with its own universe.
pub fn parse_unrooted_str(text: &str) -> Result<(UnrootedTree, LabelUniverse), NewickError> {
    let (mut trees, u) = parse_many_unrooted(&[text])?;
    Ok((trees.pop().unwrap(), u))
}

/// Rooted-or-unrooted parse result for the spec-level entry point.
#[derive(Debug, Clone)]
pub enum ParsedTree {
    Rooted(RootedTree),
    Unrooted(UnrootedTree),
}

/// Parses a single Newick expression in the requested mode.
pub fn parse_newick(text: &str, mode: Mode) -> Result<(ParsedTree, LabelUniverse), NewickError> {
    match mode {
        Mode::Rooted => parse_rooted_str(text).map(|(t, u)| (ParsedTree::Rooted(t), u)),
        Mode::Unrooted => parse_unrooted_str(text).map(|(t, u)| (ParsedTree::Unrooted(t), u)),
    }
}
