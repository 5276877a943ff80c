//! Polylinear terms in one multiplication (algebras) or two (dialgebras).

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{parse_rat, rat_to_string, Rat};

/// The single multiplication of an ordinary algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Product;

/// The two multiplications of a dialgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiOp {
    /// `⊣`
    Left,
    /// `⊢`
    Right,
}

pub trait OpSymbol: Copy + Eq + fmt::Debug {
    fn symbol(self) -> &'static str;
    fn from_symbol(s: &str) -> Option<Self>;
}

impl OpSymbol for Product {
    fn symbol(self) -> &'static str {
        "*"
    }
    fn from_symbol(s: &str) -> Option<Self> {
        (s == "*").then_some(Product)
    }
}

impl OpSymbol for DiOp {
    fn symbol(self) -> &'static str {
        match self {
            DiOp::Left => "⊣",
            DiOp::Right => "⊢",
        }
    }
    fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "⊣" | "-|" => Some(DiOp::Left),
            "⊢" | "|-" => Some(DiOp::Right),
            _ => None,
        }
    }
}

/// A fully bracketed monomial. Leaves are 0-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree<Op> {
    Leaf(usize),
    Node(Op, Box<Tree<Op>>, Box<Tree<Op>>),
}

impl<Op: Copy> Tree<Op> {
    pub fn node(op: Op, l: Tree<Op>, r: Tree<Op>) -> Self {
        Tree::Node(op, Box::new(l), Box::new(r))
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(i) => out.push(*i),
            Tree::Node(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Same shape, each node's operation chosen by `f(node, leaves before
    /// the split point)`.
    pub fn relabel<New: Copy>(&self, f: &mut impl FnMut(Op, usize) -> New) -> Tree<New> {
        self.relabel_from(0, f)
    }

    fn relabel_from<New: Copy>(&self, offset: usize, f: &mut impl FnMut(Op, usize) -> New) -> Tree<New> {
        match self {
            Tree::Leaf(i) => Tree::Leaf(*i),
            Tree::Node(op, l, r) => {
                let split = offset + l.leaf_count();
                let new_op = f(*op, split);
                let nl = l.relabel_from(offset, f);
                let nr = r.relabel_from(split, f);
                Tree::node(new_op, nl, nr)
            }
        }
    }

    pub fn evaluate<M: Model<Op>>(&self, model: &M, args: &[M::Value]) -> M::Value {
        match self {
            Tree::Leaf(i) => args[*i].clone(),
            Tree::Node(op, l, r) => {
                let a = l.evaluate(model, args);
                let b = r.evaluate(model, args);
                model.product(*op, &a, &b)
            }
        }
    }
}

/// Anything on which terms can be evaluated: a vector space with bilinear
/// products labelled by `Op`.
pub trait Model<Op> {
    type Value: Clone;

    fn product(&self, op: Op, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn combine(&self, terms: &[(Rat, Self::Value)]) -> Self::Value;
    fn is_zero(&self, v: &Self::Value) -> bool;
}

/// A formal linear combination of fully bracketed monomials in the
/// variables `x1..xn`, each variable occurring exactly once per monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polylinear<Op> {
    arity: usize,
    monomials: Vec<(Rat, Tree<Op>)>,
}

/// Identity in the signature of ordinary algebras.
pub type IdentityTerm = Polylinear<Product>;
/// Identity in the signature of dialgebras.
pub type DiTerm = Polylinear<DiOp>;

impl<Op: Copy> Polylinear<Op> {
    pub fn new(arity: usize, monomials: Vec<(Rat, Tree<Op>)>) -> Result<Self> {
        for (_, tree) in &monomials {
            let mut leaves = tree.leaves();
            leaves.sort_unstable();
            if leaves != (0..arity).collect::<Vec<_>>() {
                return Err(Error::NotPolylinear(format!(
                    "monomial uses variables {:?}, expected each of x1..x{} once",
                    leaves.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    arity
                )));
            }
        }
        let monomials = monomials.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        Ok(Polylinear { arity, monomials })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn monomials(&self) -> &[(Rat, Tree<Op>)] {
        &self.monomials
    }

    pub fn evaluate<M: Model<Op>>(&self, model: &M, args: &[M::Value]) -> M::Value {
        let terms: Vec<(Rat, M::Value)> = self
            .monomials
            .iter()
            .map(|(c, t)| (c.clone(), t.evaluate(model, args)))
            .collect();
        model.combine(&terms)
    }

    /// First tuple of `values` indices on which the term does not vanish.
    ///
    /// By polylinearity, exhausting a basis decides the identity.
    pub fn find_violation<M: Model<Op>>(&self, model: &M, values: &[M::Value]) -> Option<Vec<usize>> {
        let n = values.len();
        if n == 0 {
            return None;
        }
        let mut idx = vec![0usize; self.arity];
        loop {
            let args: Vec<M::Value> = idx.iter().map(|&i| values[i].clone()).collect();
            if !model.is_zero(&self.evaluate(model, &args)) {
                return Some(idx);
            }
            // odometer
            let mut pos = self.arity;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn holds_on<M: Model<Op>>(&self, model: &M, values: &[M::Value]) -> bool {
        self.find_violation(model, values).is_none()
    }
}

impl<Op: OpSymbol> Polylinear<Op> {
    /// Parses terms like `(x1*x2)*x3 - x1*(x2*x3)` or `2*(x1 ⊢ x2) ⊣ x3`.
    ///
    /// Chains of equal precedence associate to the left; the arity is the
    /// largest variable index.
    pub fn parse(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let monomials = p.sum::<Op>()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("unexpected token {:?}", p.tokens[p.pos])));
        }
        let arity = monomials
            .iter()
            .flat_map(|(_, t)| t.leaves())
            .max()
            .map_or(0, |m| m + 1);
        Polylinear::new(arity, monomials)
    }
}

impl<Op: OpSymbol> fmt::Display for Tree<Op> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(i) => write!(f, "x{}", i + 1),
            Tree::Node(op, l, r) => {
                let wrap = |t: &Tree<Op>| match t {
                    Tree::Leaf(_) => t.to_string(),
                    _ => format!("({t})"),
                };
                write!(f, "{} {} {}", wrap(l), op.symbol(), wrap(r))
            }
        }
    }
}

impl<Op: OpSymbol> fmt::Display for Polylinear<Op> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, t)) in self.monomials.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let body = match t {
                Tree::Leaf(_) => t.to_string(),
                _ if abs.is_one() => t.to_string(),
                _ => format!("({t})"),
            };
            if abs.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{}*{}", rat_to_string(&abs), body)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Var(usize),
    Op(String),
    Plus,
    Minus,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '*' | '⊣' | '⊢' => {
                out.push(Token::Op(c.to_string()));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'|') => {
                out.push(Token::Op("-|".into()));
                i += 2;
            }
            '|' if chars.get(i + 1) == Some(&'-') => {
                out.push(Token::Op("|-".into()));
                i += 2;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            'x' => {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let digits: String = chars[start..end].iter().collect();
                let n: usize = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("variable without index at {i}")))?;
                if n == 0 {
                    return Err(Error::Parse("variables are numbered from x1".into()));
                }
                out.push(Token::Var(n - 1));
                i = end;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Num(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum<Op: OpSymbol>(&mut self) -> Result<Vec<(Rat, Tree<Op>)>> {
        let mut out = Vec::new();
        let mut sign = Rat::one();
        match self.peek() {
            Some(Token::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, t) = self.signed_monomial::<Op>()?;
            out.push((sign * c, t));
            match self.peek() {
                Some(Token::Plus) => sign = Rat::one(),
                Some(Token::Minus) => sign = -Rat::one(),
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn signed_monomial<Op: OpSymbol>(&mut self) -> Result<(Rat, Tree<Op>)> {
        let mut coeff = Rat::one();
        if let Some(Token::Num(n)) = self.peek().cloned() {
            self.pos += 1;
            let mut text = n;
            if self.peek() == Some(&Token::Slash) {
                self.pos += 1;
                match self.next() {
                    Some(Token::Num(d)) => text = format!("{text}/{d}"),
                    other => return Err(Error::Parse(format!("expected denominator, got {other:?}"))),
                }
            }
            coeff = parse_rat(&text)?;
            if self.peek() == Some(&Token::Op("*".into())) {
                self.pos += 1;
            }
        }
        Ok((coeff, self.chain::<Op>()?))
    }

    fn chain<Op: OpSymbol>(&mut self) -> Result<Tree<Op>> {
        let mut acc = self.atom::<Op>()?;
        while let Some(Token::Op(sym)) = self.peek().cloned() {
            self.pos += 1;
            let op = Op::from_symbol(&sym)
                .ok_or_else(|| Error::Parse(format!("operation {sym:?} not allowed here")))?;
            let rhs = self.atom::<Op>()?;
            acc = Tree::node(op, acc, rhs);
        }
        Ok(acc)
    }

    fn atom<Op: OpSymbol>(&mut self) -> Result<Tree<Op>> {
        match self.next() {
            Some(Token::Var(i)) => Ok(Tree::Leaf(i)),
            Some(Token::LParen) => {
                let t = self.chain::<Op>()?;
                match self.next() {
                    Some(Token::RParen) => Ok(t),
                    other => Err(Error::Parse(format!("expected ')', got {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("expected variable or '(', got {other:?}"))),
        }
    }
}
