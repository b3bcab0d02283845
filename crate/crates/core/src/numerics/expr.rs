//! Infix expression parsing and jet evaluation.
//!
//! Grammar: `+ - * /`, unary minus, `^` for power (right associative),
//! function call syntax `name(arg)` for `sqrt exp log sin cos sinh cosh
//! tanh`, real literals, declared variables (`s` for curves, `x y z` for
//! fields) and named constants substituted at parse time. Unknown
//! identifiers are rejected at parse time.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::numerics::jet::Jet;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tanh,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        match name {
            "sqrt" => Some(Func::Sqrt),
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sinh" => Some(Func::Sinh),
            "cosh" => Some(Func::Cosh),
            "tanh" => Some(Func::Tanh),
            _ => None,
        }
    }

    fn apply(self, arg: &Jet) -> Result<Jet> {
        Ok(match self {
            Func::Sqrt => arg.sqrt()?,
            Func::Exp => arg.exp(),
            Func::Log => arg.ln()?,
            Func::Sin => arg.sin(),
            Func::Cos => arg.cos(),
            Func::Sinh => arg.sinh(),
            Func::Cosh => arg.cosh(),
            Func::Tanh => arg.tanh(),
        })
    }
}

#[derive(Debug, Clone)]
enum Node {
    Num(f64),
    Var(usize),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Powi(Box<Node>, i32),
    Powf(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// A parsed expression over a fixed set of variables.
#[derive(Debug, Clone)]
pub struct Expression {
    root: Node,
    vars: Vec<String>,
    source: String,
}

impl PartialEq for Expression {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.vars == other.vars
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl Expression {
    /// Parse `source` over the variable set `vars`; identifiers found in
    /// `constants` are substituted as literals.
    pub fn parse(source: &str, vars: &[&str], constants: &BTreeMap<String, f64>) -> Result<Expression> {
        let tokens = tokenize(source)?;
        let mut parser = Parser { tokens, pos: 0, vars, constants };
        let root = parser.parse_expr()?;
        parser.expect_end()?;
        let root = fold(root);
        Ok(Expression {
            root,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            source: source.trim().to_string(),
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Evaluate with one jet per declared variable.
    pub fn eval_jets(&self, values: &[Jet]) -> Result<Jet> {
        debug_assert_eq!(values.len(), self.vars.len());
        eval_node(&self.root, values)
    }

    /// Plain scalar evaluation.
    pub fn eval(&self, values: &[f64]) -> Result<f64> {
        let jets: Vec<Jet> = values
            .iter()
            .map(|&v| Jet::constant(v, 0))
            .collect::<Result<_>>()?;
        Ok(self.eval_jets(&jets)?.value())
    }
}

/// Jet of a univariate expression at `at`: entry `k` of the result is the
/// exact `k`-th derivative, by truncated Taylor arithmetic.
pub fn eval_jet(e: &Expression, at: f64, order: usize) -> Result<Jet> {
    if e.vars.len() != 1 {
        return Err(Error::Domain(format!(
            "eval_jet needs a univariate expression, got {} variables",
            e.vars.len()
        )));
    }
    let x = Jet::variable(at, order)?;
    e.eval_jets(&[x])
}

fn eval_node(node: &Node, values: &[Jet]) -> Result<Jet> {
    let order = values.first().map(|j| j.order()).unwrap_or(0);
    Ok(match node {
        Node::Num(v) => Jet::constant(*v, order)?,
        Node::Var(i) => values[*i],
        Node::Add(a, b) => eval_node(a, values)? + eval_node(b, values)?,
        Node::Sub(a, b) => eval_node(a, values)? - eval_node(b, values)?,
        Node::Mul(a, b) => eval_node(a, values)?.mul(&eval_node(b, values)?),
        Node::Div(a, b) => eval_node(a, values)?.div(&eval_node(b, values)?)?,
        Node::Neg(a) => -eval_node(a, values)?,
        Node::Powi(a, n) => eval_node(a, values)?.powi(*n)?,
        Node::Powf(a, p) => {
            let base = eval_node(a, values)?;
            let pw = eval_node(p, values)?;
            if pw.order() > 0 && pw.derivatives()[1..].iter().any(|d| *d != 0.0) {
                // variable exponent: exp(p ln base)
                base.ln()?.mul(&pw).exp()
            } else {
                base.powf(pw.value())?
            }
        }
        Node::Call(f, a) => f.apply(&eval_node(a, values)?)?,
    })
}

/// Bottom-up constant folding; leaves nodes untouched when evaluation of a
/// constant subtree fails (the error then surfaces with eval context).
fn fold(node: Node) -> Node {
    fn num(n: &Node) -> Option<f64> {
        match n {
            Node::Num(v) => Some(*v),
            _ => None,
        }
    }
    let folded = match node {
        Node::Add(a, b) => binary(fold(*a), fold(*b), |x, y| x + y, Node::Add),
        Node::Sub(a, b) => binary(fold(*a), fold(*b), |x, y| x - y, Node::Sub),
        Node::Mul(a, b) => binary(fold(*a), fold(*b), |x, y| x * y, Node::Mul),
        Node::Div(a, b) => binary(fold(*a), fold(*b), |x, y| x / y, Node::Div),
        Node::Neg(a) => {
            let a = fold(*a);
            match num(&a) {
                Some(x) if (-x).is_finite() => Node::Num(-x),
                _ => Node::Neg(Box::new(a)),
            }
        }
        Node::Powi(a, n) => {
            let a = fold(*a);
            match num(&a) {
                Some(x) if x.powi(n).is_finite() => Node::Num(x.powi(n)),
                _ => Node::Powi(Box::new(a), n),
            }
        }
        Node::Powf(a, p) => {
            let a = fold(*a);
            let p = fold(*p);
            // integer-valued constant exponents route through powi
            if let Some(e) = num(&p) {
                if e.fract() == 0.0 && e.abs() <= 16.0 {
                    return fold(Node::Powi(Box::new(a), e as i32));
                }
                if let Some(x) = num(&a) {
                    let v = x.powf(e);
                    if v.is_finite() {
                        return Node::Num(v);
                    }
                }
            }
            Node::Powf(Box::new(a), Box::new(p))
        }
        Node::Call(f, a) => {
            let a = fold(*a);
            if let Some(x) = num(&a) {
                let v = match f {
                    Func::Sqrt => x.sqrt(),
                    Func::Exp => x.exp(),
                    Func::Log => x.ln(),
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Tanh => x.tanh(),
                };
                if v.is_finite() {
                    return Node::Num(v);
                }
            }
            Node::Call(f, Box::new(a))
        }
        other => other,
    };

    fn binary(
        a: Node,
        b: Node,
        op: fn(f64, f64) -> f64,
        ctor: fn(Box<Node>, Box<Node>) -> Node,
    ) -> Node {
        if let (Node::Num(x), Node::Num(y)) = (&a, &b) {
            let v = op(*x, *y);
            if v.is_finite() {
                return Node::Num(v);
            }
        }
        ctor(Box::new(a), Box::new(b))
    }

    folded
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, col });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, col });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, col });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, col });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, col });
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, col });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, col });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == 'e' || bytes[i] == 'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == '+' || bytes[j] == '-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = bytes[start..i].iter().collect();
                let v: f64 = text.parse().map_err(|_| Error::Parse {
                    line: 1,
                    col: start + 1,
                    msg: format!("bad number `{text}`"),
                })?;
                out.push(Spanned { tok: Tok::Num(v), col: start + 1 });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Ident(text), col: start + 1 });
            }
            other => {
                return Err(Error::Parse {
                    line: 1,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    vars: &'a [&'a str],
    constants: &'a BTreeMap<String, f64>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|s| s.col)
            .unwrap_or_else(|| self.tokens.last().map(|s| s.col + 1).unwrap_or(1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: 1, col: self.col(), msg: msg.into() }
    }

    fn expect_end(&self) -> Result<()> {
        if self.pos < self.tokens.len() {
            return Err(self.err("trailing input"));
        }
        Ok(())
    }

    fn parse_expr(&mut self) -> Result<Node> {
        let mut node = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    node = Node::Add(Box::new(node), Box::new(self.parse_term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    node = Node::Sub(Box::new(node), Box::new(self.parse_term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Node> {
        let mut node = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    node = Node::Mul(Box::new(node), Box::new(self.parse_unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    node = Node::Div(Box::new(node), Box::new(self.parse_unary()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Node> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(Node::Neg(Box::new(self.parse_unary()?)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Node> {
        let base = self.parse_atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            // right associative; allow a signed exponent
            let exponent = self.parse_unary()?;
            return Ok(Node::Powf(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Node> {
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Node::Num(v)),
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(Tok::Ident(name)) => {
                if matches!(self.peek(), Some(Tok::LParen)) {
                    let f = Func::from_name(&name)
                        .ok_or_else(|| self.err(format!("unknown function `{name}`")))?;
                    self.bump();
                    let arg = self.parse_expr()?;
                    match self.bump() {
                        Some(Tok::RParen) => Ok(Node::Call(f, Box::new(arg))),
                        _ => Err(self.err("expected `)` after function argument")),
                    }
                } else if let Some(idx) = self.vars.iter().position(|v| *v == name) {
                    Ok(Node::Var(idx))
                } else if let Some(v) = self.constants.get(&name) {
                    Ok(Node::Num(*v))
                } else {
                    Err(self.err(format!("unknown identifier `{name}`")))
                }
            }
            Some(other) => Err(self.err(format!("unexpected token {other:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
