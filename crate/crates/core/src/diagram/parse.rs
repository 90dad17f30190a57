//! Tokenizer and recursive-descent parser for terms and term files.

use std::collections::BTreeMap;

use super::{DiagramError, Term, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    LBrack,
    RBrack,
    LParen,
    RParen,
    Semi,
    Star,
    Comma,
    Equals,
    End,
}

const KEYWORDS: [&str; 7] = ["id", "copy", "del", "swap", "dom", "mass", "let"];

fn describe(t: &Tok) -> String {
    match t {
        Tok::Name(n) => format!("`{n}`"),
        Tok::LBrack => "`[`".into(),
        Tok::RBrack => "`]`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Star => "`*`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Equals => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize, usize)>, DiagramError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        let single = match c {
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            '*' => Some(Tok::Star),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = single {
            chars.next();
            col += 1;
            out.push((t, l, k));
        } else if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|c| *c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                name.push(c);
                chars.next();
                col += 1;
            }
            out.push((Tok::Name(name), l, k));
        } else {
            return Err(DiagramError::Syntax { line, col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, line, col));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn error(&self, message: String) -> DiagramError {
        let (_, line, col) = self.toks[self.pos];
        DiagramError::Syntax { line, col, message }
    }

    fn expect(&mut self, want: Tok) -> Result<(), DiagramError> {
        if *self.peek() == want {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", describe(&want), describe(self.peek()))))
        }
    }

    fn name(&mut self) -> Result<String, DiagramError> {
        match self.peek().clone() {
            Tok::Name(n) if !KEYWORDS.contains(&n.as_str()) => {
                self.pos += 1;
                Ok(n)
            }
            t => Err(self.error(format!("expected a name, found {}", describe(&t)))),
        }
    }

    fn word(&mut self) -> Result<Word, DiagramError> {
        let mut w = Vec::new();
        if matches!(self.peek(), Tok::RBrack | Tok::Semi) {
            return Ok(w);
        }
        w.push(self.name()?);
        while *self.peek() == Tok::Comma {
            self.pos += 1;
            w.push(self.name()?);
        }
        Ok(w)
    }

    fn bracketed(&mut self) -> Result<Word, DiagramError> {
        self.expect(Tok::LBrack)?;
        let w = self.word()?;
        self.expect(Tok::RBrack)?;
        Ok(w)
    }

    fn term(&mut self) -> Result<Term, DiagramError> {
        let mut t = self.tensor()?;
        while *self.peek() == Tok::Semi {
            self.pos += 1;
            t = Term::seq(t, self.tensor()?);
        }
        Ok(t)
    }

    fn tensor(&mut self) -> Result<Term, DiagramError> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Star {
            self.pos += 1;
            t = Term::tensor(t, self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, DiagramError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Name(n) => match n.as_str() {
                "id" | "copy" | "del" => {
                    self.pos += 1;
                    let w = self.bracketed()?;
                    Ok(match n.as_str() {
                        "id" => Term::Id(w),
                        "copy" => Term::Copy(w),
                        _ => Term::Del(w),
                    })
                }
                "swap" => {
                    self.pos += 1;
                    self.expect(Tok::LBrack)?;
                    let a = self.word()?;
                    self.expect(Tok::Semi)?;
                    let b = self.word()?;
                    self.expect(Tok::RBrack)?;
                    Ok(Term::Swap(a, b))
                }
                "dom" | "mass" => {
                    self.pos += 1;
                    self.expect(Tok::LParen)?;
                    let t = Box::new(self.term()?);
                    self.expect(Tok::RParen)?;
                    Ok(if n == "dom" { Term::Dom(t) } else { Term::Mass(t) })
                }
                "let" => Err(self.error("`let` is only allowed at the start of a binding".into())),
                _ => {
                    self.pos += 1;
                    Ok(Term::Gen(n))
                }
            },
            t => Err(self.error(format!("expected a term, found {}", describe(&t)))),
        }
    }
}

/// Parses a single term.
pub fn parse_term(text: &str) -> Result<Term, DiagramError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let t = p.term()?;
    p.expect(Tok::End)?;
    Ok(t)
}

/// A parsed term file: named bindings and the term it denotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermFile {
    /// Bindings in file order, each already expanded.
    pub bindings: Vec<(String, Term)>,
    /// The trailing term, or the last binding when there is none.
    pub main: Term,
}

fn substitute(t: &Term, env: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Gen(g) => env.get(g).cloned().unwrap_or_else(|| t.clone()),
        Term::Seq(a, b) => Term::seq(substitute(a, env), substitute(b, env)),
        Term::Tensor(a, b) => Term::tensor(substitute(a, env), substitute(b, env)),
        Term::Dom(a) => Term::Dom(Box::new(substitute(a, env))),
        Term::Mass(a) => Term::Mass(Box::new(substitute(a, env))),
        _ => t.clone(),
    }
}

/// Parses `let name = term` bindings followed by an optional term. Bound
/// names used later are replaced by their definitions.
pub fn parse_file(text: &str) -> Result<TermFile, DiagramError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let mut env = BTreeMap::new();
    let mut bindings = Vec::new();
    while *p.peek() == Tok::Name("let".into()) {
        p.pos += 1;
        let name = p.name()?;
        p.expect(Tok::Equals)?;
        let t = substitute(&p.term()?, &env);
        env.insert(name.clone(), t.clone());
        bindings.push((name, t));
    }
    let main = if *p.peek() == Tok::End {
        match bindings.last() {
            Some((_, t)) => t.clone(),
            None => return Err(p.error("empty term file".into())),
        }
    } else {
        let t = substitute(&p.term()?, &env);
        p.expect(Tok::End)?;
        t
    };
    Ok(TermFile { bindings, main })
}
