//! Recursive-descent parser for the tree naming language.
//!
//! Grammar (preorder token stream):
//!
//! ```text
//! spec  := item*            whitespace is ignored
//! item  := token ('^' k)?   k ≥ 1 repeats the token k times
//! token := 'a' | 'b' | "b'" | 'c'
//! ```
//!
//! `a` has two leaf children, `b` one subtree on the right, `b'` one subtree
//! on the left, and `c` two subtrees (left first). The prime may also be
//! written as U+2032.

use serde::Serialize;
use thiserror::Error;

use super::tree::{NodeType, Shape, Tree};

/// Largest number of branching nodes accepted.
pub const MAX_NODES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum ParseError {
    #[error("unexpected end of input at position {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("trailing tokens starting at position {pos}")]
    TrailingTokens { pos: usize },
    #[error("zero exponent at position {pos}")]
    ZeroExponent { pos: usize },
    #[error("unknown token {token:?} at position {pos}")]
    UnknownToken { pos: usize, token: char },
    #[error("missing exponent after '^' at position {pos}")]
    MissingExponent { pos: usize },
    #[error("tree exceeds {max} branching nodes (position {pos})", max = MAX_NODES)]
    TooLarge { pos: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnexpectedEnd { pos }
            | ParseError::TrailingTokens { pos }
            | ParseError::ZeroExponent { pos }
            | ParseError::UnknownToken { pos, .. }
            | ParseError::MissingExponent { pos }
            | ParseError::TooLarge { pos } => *pos,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::UnexpectedEnd { .. } => "UnexpectedEnd",
            ParseError::TrailingTokens { .. } => "TrailingTokens",
            ParseError::ZeroExponent { .. } => "ZeroExponent",
            ParseError::UnknownToken { .. } => "UnknownToken",
            ParseError::MissingExponent { .. } => "MissingExponent",
            ParseError::TooLarge { .. } => "TooLarge",
        }
    }
}

/// Splits the input into expanded tokens tagged with their character position.
fn lex(spec: &str) -> Result<(Vec<(NodeType, usize)>, usize), ParseError> {
    let chars: Vec<char> = spec.chars().collect();
    let mut out: Vec<(NodeType, usize)> = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        let pos = i;
        let ty = match chars[i] {
            'a' => NodeType::A,
            'c' => NodeType::C,
            'b' => {
                let mut j = i + 1;
                skip_ws(&mut j);
                if j < chars.len() && (chars[j] == '\'' || chars[j] == '\u{2032}') {
                    i = j;
                    NodeType::BPrime
                } else {
                    NodeType::B
                }
            }
            ch => return Err(ParseError::UnknownToken { pos, token: ch }),
        };
        i += 1;
        let mut j = i;
        skip_ws(&mut j);
        let mut count = 1usize;
        if j < chars.len() && chars[j] == '^' {
            let caret = j;
            j += 1;
            skip_ws(&mut j);
            let start = j;
            let mut k: usize = 0;
            while j < chars.len() && chars[j].is_ascii_digit() {
                k = k
                    .saturating_mul(10)
                    .saturating_add(chars[j].to_digit(10).unwrap_or(0) as usize);
                j += 1;
            }
            if j == start {
                return Err(ParseError::MissingExponent { pos: caret });
            }
            if k == 0 {
                return Err(ParseError::ZeroExponent { pos: start });
            }
            count = k;
            i = j;
        }
        if out.len() + count > MAX_NODES {
            return Err(ParseError::TooLarge { pos });
        }
        out.extend(std::iter::repeat((ty, pos)).take(count));
    }
    Ok((out, chars.len()))
}

struct Parser {
    toks: Vec<(NodeType, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn subtree(&mut self) -> Result<Shape, ParseError> {
        let (ty, _) = *self
            .toks
            .get(self.at)
            .ok_or(ParseError::UnexpectedEnd { pos: self.end })?;
        self.at += 1;
        Ok(match ty {
            NodeType::A => Shape::node(Shape::Leaf, Shape::Leaf),
            NodeType::B => {
                let r = self.subtree()?;
                Shape::node(Shape::Leaf, r)
            }
            NodeType::BPrime => {
                let l = self.subtree()?;
                Shape::node(l, Shape::Leaf)
            }
            NodeType::C => {
                let l = self.subtree()?;
                let r = self.subtree()?;
                Shape::node(l, r)
            }
        })
    }
}

/// Parses a tree spelling such as "ba", "b^2a", "ca^2" or "b'ba".
pub fn parse_tree(spec: &str) -> Result<Tree, ParseError> {
    let (toks, end) = lex(spec)?;
    let mut p = Parser { toks, at: 0, end };
    let shape = p.subtree()?;
    if p.at < p.toks.len() {
        return Err(ParseError::TrailingTokens { pos: p.toks[p.at].1 });
    }
    Ok(Tree::from_shape(&shape).expect("parsed shape has a branching node"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspherical::tree::format_tree;

    #[test]
    fn documented_examples() {
        assert_eq!(parse_tree("a").unwrap().dimension(), 2);
        assert_eq!(parse_tree("ba").unwrap().dimension(), 3);
        let h = parse_tree("ca^2").unwrap();
        assert_eq!(h.dimension(), 4);
        assert_eq!(h.node(0).node_type, NodeType::C);
        assert_eq!(parse_tree("b^2a").unwrap(), Tree::standard(4).unwrap());
    }

    #[test]
    fn round_trip_four_dimensional_trees() {
        for s in ["b^2a", "bb'a", "b'ba", "b'^2a", "ca^2"] {
            assert_eq!(format_tree(&parse_tree(s).unwrap()), s);
        }
    }

    #[test]
    fn whitespace_and_prime_variants() {
        assert_eq!(parse_tree(" b ' a ").unwrap(), parse_tree("b'a").unwrap());
        assert_eq!(parse_tree("b\u{2032}a").unwrap(), parse_tree("b'a").unwrap());
        assert_eq!(parse_tree("c a ^ 2").unwrap(), parse_tree("caa").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_tree("c a"), Err(ParseError::UnexpectedEnd { pos: 3 }));
        assert_eq!(parse_tree(""), Err(ParseError::UnexpectedEnd { pos: 0 }));
        assert_eq!(parse_tree("a a"), Err(ParseError::TrailingTokens { pos: 2 }));
        assert_eq!(parse_tree("ba^0"), Err(ParseError::ZeroExponent { pos: 3 }));
        assert_eq!(parse_tree("bx"), Err(ParseError::UnknownToken { pos: 1, token: 'x' }));
        assert_eq!(parse_tree("b^a"), Err(ParseError::MissingExponent { pos: 1 }));
        assert!(matches!(parse_tree("b^100000a"), Err(ParseError::TooLarge { .. })));
    }
}
