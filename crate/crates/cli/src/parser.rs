//! Expression language for multivectors and Clifford matrices.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := complex | blade | '(' expr ')' | '-' factor
//! matrix := '[' row (';' row)* ']'  |  '[' '[' row ']' (',' '[' row ']')* ']'
//! row    := expr (',' expr)*
//! ```
//!
//! Complex literals are `2`, `0.5`, `1e-3`, `3i`, `i`; blades are `e12`
//! (one digit per generator), `e{1,12}`, the volume element `e[k]`, and a
//! bare `e` when there is a single generator.

use cliffrep::{AlgebraSignature, BladeIndex, CliffordMatrix, Complex, Multivector};
use thiserror::Error;

/// Parse or evaluation failure, located by character offset.
#[derive(Clone, Debug, PartialEq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum BladeSymbol {
    /// Generator indices as written, e.g. `e12` -> `[1, 2]`.
    Generators(Vec<usize>),
    /// `e[k]` = e1 e2 ... ek.
    Volume(usize),
    /// `e`, only meaningful with one generator.
    Bare,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Complex { re: f64, im: f64 },
    Blade { symbol: BladeSymbol, position: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Expr(Expr),
    Matrix { rows: Vec<Vec<Expr>>, position: usize },
}

/// An evaluated expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Element(Multivector),
    Matrix(CliffordMatrix),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Blade(BladeSymbol),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // An exponent needs an explicit sign so `2e1` never reads as a number.
            if chars.get(i).is_some_and(|&e| e == 'e' || e == 'E')
                && chars.get(i + 1).is_some_and(|&s| s == '+' || s == '-')
                && chars.get(i + 2).is_some_and(|d| d.is_ascii_digit())
            {
                i += 2;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let value: f64 = lit.parse().map_err(|_| ParseError {
                position: start,
                message: format!("malformed number '{lit}'"),
            })?;
            if chars.get(i) == Some(&'i') && !chars.get(i + 1).is_some_and(|c| c.is_alphanumeric()) {
                i += 1;
                out.push((Tok::Imag(value), start));
            } else {
                out.push((Tok::Num(value), start));
            }
            continue;
        }
        if c == 'i' && !chars.get(i + 1).is_some_and(|c| c.is_alphanumeric()) {
            out.push((Tok::Imag(1.0), start));
            i += 1;
            continue;
        }
        if c == 'e' {
            i += 1;
            match chars.get(i) {
                Some(d) if d.is_ascii_digit() => {
                    let mut gens = Vec::new();
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        gens.push(chars[i] as usize - '0' as usize);
                        i += 1;
                    }
                    out.push((Tok::Blade(BladeSymbol::Generators(gens)), start));
                }
                Some('{') => {
                    let close = (i..chars.len()).find(|&k| chars[k] == '}');
                    let Some(close) = close else {
                        return err(start, "unterminated blade index list");
                    };
                    let body: String = chars[i + 1..close].iter().collect();
                    let mut gens = Vec::new();
                    for part in body.split(',') {
                        let idx = part.trim().parse::<usize>().map_err(|_| ParseError {
                            position: start,
                            message: format!("bad generator index '{}' in blade", part.trim()),
                        })?;
                        gens.push(idx);
                    }
                    i = close + 1;
                    out.push((Tok::Blade(BladeSymbol::Generators(gens)), start));
                }
                Some('[') => {
                    let close = (i..chars.len()).find(|&k| chars[k] == ']');
                    let Some(close) = close else {
                        return err(start, "unterminated volume element");
                    };
                    let body: String = chars[i + 1..close].iter().collect();
                    let k = body.trim().parse::<usize>().map_err(|_| ParseError {
                        position: start,
                        message: format!("bad volume element size '{}'", body.trim()),
                    })?;
                    i = close + 1;
                    out.push((Tok::Blade(BladeSymbol::Volume(k)), start));
                }
                Some(c) if c.is_alphanumeric() => return err(start, "unknown identifier"),
                _ => out.push((Tok::Blade(BladeSymbol::Bare), start)),
            }
            continue;
        }
        return err(start, format!("unexpected character '{c}'"));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(self.pos(), format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let position = self.pos();
        match self.bump() {
            Tok::Num(re) => Ok(Expr::Complex { re, im: 0.0 }),
            Tok::Imag(im) => Ok(Expr::Complex { re: 0.0, im }),
            Tok::Blade(symbol) => Ok(Expr::Blade { symbol, position }),
            Tok::Minus => Ok(Expr::Neg(Box::new(self.factor()?))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::End => err(position, "unexpected end of input"),
            _ => err(position, "expected a number, blade or '('"),
        }
    }

    fn row(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut row = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            row.push(self.expr()?);
        }
        Ok(row)
    }

    fn matrix(&mut self) -> Result<Ast, ParseError> {
        let position = self.pos();
        self.expect(Tok::LBrack, "'['")?;
        let mut rows = Vec::new();
        if *self.peek() == Tok::LBrack {
            loop {
                self.expect(Tok::LBrack, "'['")?;
                rows.push(self.row()?);
                self.expect(Tok::RBrack, "']'")?;
                if *self.peek() != Tok::Comma {
                    break;
                }
                self.bump();
            }
        } else {
            rows.push(self.row()?);
            while *self.peek() == Tok::Semi {
                self.bump();
                rows.push(self.row()?);
            }
        }
        self.expect(Tok::RBrack, "']'")?;
        Ok(Ast::Matrix { rows, position })
    }
}

/// Parse text into an expression or a matrix literal.
pub fn parse(text: &str) -> Result<Ast, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let ast = if *p.peek() == Tok::LBrack {
        p.matrix()?
    } else {
        Ast::Expr(p.expr()?)
    };
    if *p.peek() != Tok::End {
        return err(p.pos(), "unexpected trailing input");
    }
    Ok(ast)
}

fn blade(symbol: &BladeSymbol, position: usize, sig: &AlgebraSignature) -> Result<Multivector, ParseError> {
    let n = sig.n();
    let gens = match symbol {
        BladeSymbol::Bare if n == 1 => vec![1],
        BladeSymbol::Bare => {
            return err(
                position,
                format!("bare 'e' needs exactly one generator, session has {n}"),
            )
        }
        BladeSymbol::Volume(k) => (1..=*k).collect(),
        BladeSymbol::Generators(g) => g.clone(),
    };
    if gens.is_empty() || gens.windows(2).any(|w| w[0] >= w[1]) {
        return err(position, "blade indices must be strictly increasing");
    }
    if let Some(&bad) = gens.iter().find(|&&g| g == 0 || g > n) {
        return err(position, format!("blade index {bad} is out of range for n = {n}"));
    }
    Ok(Multivector::basis(sig, BladeIndex::from_generators(&gens)))
}

fn eval_expr(e: &Expr, sig: &AlgebraSignature) -> Result<Multivector, ParseError> {
    Ok(match e {
        Expr::Complex { re, im } => Multivector::scalar(sig, Complex::new(*re, *im)),
        Expr::Blade { symbol, position } => blade(symbol, *position, sig)?,
        Expr::Neg(x) => -&eval_expr(x, sig)?,
        Expr::Add(a, b) => &eval_expr(a, sig)? + &eval_expr(b, sig)?,
        Expr::Sub(a, b) => &eval_expr(a, sig)? - &eval_expr(b, sig)?,
        Expr::Mul(a, b) => &eval_expr(a, sig)? * &eval_expr(b, sig)?,
    })
}

/// Evaluate a parsed expression over `sig`.
pub fn evaluate(ast: &Ast, sig: &AlgebraSignature) -> Result<Value, ParseError> {
    match ast {
        Ast::Expr(e) => Ok(Value::Element(eval_expr(e, sig)?)),
        Ast::Matrix { rows, position } => {
            let width = rows[0].len();
            if rows.iter().any(|r| r.len() != width) {
                return err(*position, "matrix rows have different lengths");
            }
            let entries = rows
                .iter()
                .map(|r| r.iter().map(|e| eval_expr(e, sig)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let m = CliffordMatrix::from_rows(sig, entries).map_err(|e| ParseError {
                position: *position,
                message: e.to_string(),
            })?;
            Ok(Value::Matrix(m))
        }
    }
}

/// Parse and evaluate in one step.
pub fn parse_value(text: &str, sig: &AlgebraSignature) -> Result<Value, ParseError> {
    evaluate(&parse(text)?, sig)
}

/// Parse text that must denote a single complex number.
pub fn parse_complex(text: &str) -> Result<Complex, ParseError> {
    let scalars = AlgebraSignature::standard(0).expect("empty signature");
    match parse_value(text, &scalars)? {
        Value::Element(m) => Ok(m.scalar_part()),
        Value::Matrix(_) => err(0, "expected a complex number, found a matrix"),
    }
}
