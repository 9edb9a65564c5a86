//! The ideal-definition language.
//!
//! ```text
//! input    := family | explicit
//! family   := "kpartite" int+ | "hyperbipartite" "V1=" int "V2=" int "s=" int | family "extend" "p=" int
//! explicit := "ideal" "n=" int ":" gen ("," gen)*
//! gen      := var ("*" var)* ; var := "x" int
//! ```
//!
//! Whitespace between tokens is ignored. Keywords split into letter and digit
//! runs, so `V1=` and `V1 =` parse the same way.

use std::fmt;

use stanley_core::{
    extend_with_variables, kpartite_edge_ideal, uniform_bipartite_hypergraph_ideal, HypergraphSpec, KPartiteSpec,
    Monomial, SqfreeIdeal,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    KPartite(KPartiteSpec),
    Hypergraph(HypergraphSpec),
}

/// A named family, optionally extended by `extend` fresh variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub base: Base,
    pub extend: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealSource {
    Family(FamilySpec),
    Explicit(SqfreeIdeal),
}

impl IdealSource {
    pub fn ideal(&self) -> stanley_core::Result<SqfreeIdeal> {
        match self {
            IdealSource::Explicit(ideal) => Ok(ideal.clone()),
            IdealSource::Family(f) => {
                let base = match &f.base {
                    Base::KPartite(spec) => kpartite_edge_ideal(spec)?,
                    Base::Hypergraph(spec) => uniform_bipartite_hypergraph_ideal(spec)?,
                };
                if f.extend == 0 {
                    Ok(base)
                } else {
                    extend_with_variables(&base, f.extend)
                }
            }
        }
    }

    /// The k-partite spec when the source is an unextended k-partite family.
    pub fn kpartite(&self) -> Option<&KPartiteSpec> {
        match self {
            IdealSource::Family(FamilySpec { base: Base::KPartite(spec), extend: 0 }) => Some(spec),
            _ => None,
        }
    }

    /// Canonical text form; parsing it gives back an equal source.
    pub fn to_dsl(&self) -> String {
        match self {
            IdealSource::Explicit(ideal) => {
                let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
                format!("ideal n={}: {}", ideal.n(), gens.join(", "))
            }
            IdealSource::Family(f) => {
                let base = match &f.base {
                    Base::KPartite(spec) => spec.dsl(),
                    Base::Hypergraph(spec) => spec.dsl(),
                };
                if f.extend == 0 {
                    base
                } else {
                    format!("{base} extend p={}", f.extend)
                }
            }
        }
    }
}

impl fmt::Display for IdealSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(u64),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::Int(i) => write!(f, "'{i}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, column: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut pos);
        } else if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphabetic()) {
                word.push(c);
                chars.next();
                advance(c, &mut pos);
            }
            out.push((Tok::Word(word), start));
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(c);
                chars.next();
                advance(c, &mut pos);
            }
            let value = digits.parse().map_err(|_| start.error(format!("integer {digits} is too large")))?;
            out.push((Tok::Int(value), start));
        } else if matches!(c, '=' | ':' | ',' | '*') {
            chars.next();
            advance(c, &mut pos);
            out.push((Tok::Sym(c), start));
        } else {
            return Err(start.error(format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, pos));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.pos().error(format!("expected {wanted}, found {}", self.peek()))
    }

    fn word(&mut self, w: &str) -> Result<Pos, ParseError> {
        match self.peek() {
            Tok::Word(x) if x == w => Ok(self.bump().1),
            _ => Err(self.unexpected(&format!("'{w}'"))),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Sym(x) if *x == c => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("'{c}'"))),
        }
    }

    fn int(&mut self) -> Result<(u64, Pos), ParseError> {
        match self.peek() {
            Tok::Int(v) => {
                let v = *v;
                Ok((v, self.bump().1))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn usize(&mut self) -> Result<(usize, Pos), ParseError> {
        let (v, pos) = self.int()?;
        usize::try_from(v).map(|v| (v, pos)).map_err(|_| pos.error(format!("integer {v} is too large")))
    }

    /// `name` `=` int, where `name` may end in a digit such as `V1`.
    fn assignment(&mut self, letters: &str, digit: Option<u64>) -> Result<(usize, Pos), ParseError> {
        let label = match digit {
            Some(d) => format!("{letters}{d}="),
            None => format!("{letters}="),
        };
        let start = self.pos();
        let ok_word = matches!(self.peek(), Tok::Word(w) if w == letters);
        if !ok_word {
            return Err(self.unexpected(&format!("'{label}'")));
        }
        self.bump();
        if let Some(d) = digit {
            match self.peek() {
                Tok::Int(v) if *v == d => {
                    self.bump();
                }
                _ => return Err(start.error(format!("expected '{label}'"))),
            }
        }
        self.sym('=')?;
        self.usize()
    }

    fn input(&mut self) -> Result<IdealSource, ParseError> {
        let source = match self.peek() {
            Tok::Word(w) if w == "ideal" => self.explicit()?,
            Tok::Word(w) if w == "kpartite" || w == "hyperbipartite" => IdealSource::Family(self.family()?),
            _ => return Err(self.unexpected("'kpartite', 'hyperbipartite' or 'ideal'")),
        };
        match self.peek() {
            Tok::End => Ok(source),
            Tok::Word(w) if w == "extend" => {
                Err(self.pos().error("'extend' applies only to a family, not an explicit ideal"))
            }
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn family(&mut self) -> Result<FamilySpec, ParseError> {
        let start = self.pos();
        let base = match self.bump().0 {
            Tok::Word(w) if w == "kpartite" => {
                let mut parts = Vec::new();
                while let Tok::Int(_) = self.peek() {
                    parts.push(self.usize()?.0);
                }
                if parts.is_empty() {
                    return Err(self.unexpected("a part size"));
                }
                Base::KPartite(KPartiteSpec::new(parts).map_err(|e| start.error(e.to_string()))?)
            }
            _ => {
                let (v1, _) = self.assignment("V", Some(1))?;
                let (v2, _) = self.assignment("V", Some(2))?;
                let (s, _) = self.assignment("s", None)?;
                Base::Hypergraph(HypergraphSpec::new(v1, v2, s).map_err(|e| start.error(e.to_string()))?)
            }
        };
        let mut extend = 0usize;
        while matches!(self.peek(), Tok::Word(w) if w == "extend") {
            self.bump();
            let (p, pos) = self.assignment("p", None)?;
            extend = extend.checked_add(p).ok_or_else(|| pos.error("extension too large"))?;
        }
        let family = FamilySpec { base, extend };
        let n = match &family.base {
            Base::KPartite(s) => s.n(),
            Base::Hypergraph(s) => s.v(),
        };
        if n.saturating_add(extend) > stanley_core::ideal::MAX_VARS {
            return Err(start.error(format!(
                "{} variables exceed the limit of {}",
                n.saturating_add(extend),
                stanley_core::ideal::MAX_VARS
            )));
        }
        Ok(family)
    }

    fn explicit(&mut self) -> Result<IdealSource, ParseError> {
        let start = self.word("ideal")?;
        let (n, n_pos) = self.assignment("n", None)?;
        if n == 0 || n > stanley_core::ideal::MAX_VARS {
            return Err(n_pos.error(format!("n must lie in 1..={}", stanley_core::ideal::MAX_VARS)));
        }
        self.sym(':')?;
        let mut gens = vec![self.generator(n)?];
        while let Tok::Sym(',') = self.peek() {
            self.bump();
            gens.push(self.generator(n)?);
        }
        SqfreeIdeal::new(n, gens).map(IdealSource::Explicit).map_err(|e| start.error(e.to_string()))
    }

    fn generator(&mut self, n: usize) -> Result<Monomial, ParseError> {
        let mut mask = 0u64;
        loop {
            let pos = self.pos();
            self.word("x").map_err(|_| self.unexpected("a variable 'x<index>'"))?;
            let (i, _) = self.usize()?;
            if i == 0 || i > n {
                return Err(pos.error(format!("variable x{i} out of range 1..={n}")));
            }
            let bit = 1u64 << (i - 1);
            if mask & bit != 0 {
                return Err(pos.error(format!("duplicate variable x{i} in generator")));
            }
            mask |= bit;
            if let Tok::Sym('*') = self.peek() {
                self.bump();
            } else {
                return Ok(Monomial::from_mask(mask));
            }
        }
    }
}

pub fn parse_ideal_dsl(text: &str) -> Result<IdealSource, ParseError> {
    let toks = tokenize(text)?;
    Parser { toks, at: 0 }.input()
}
