use std::fmt;

use super::lexer::{lex, Pos, Tok, Token};
use super::syntax::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let message = match self.peek() {
            Tok::Eps => "`ε` is output-only and cannot appear in input".to_string(),
            t => format!("unexpected {t}"),
        };
        Err(ParseError {
            pos: self.pos(),
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(&[what])
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(&["name"]),
        }
    }

    fn groups(&mut self, at_least_one: bool) -> PResult<Vec<Group>> {
        let mut gs = Vec::new();
        while *self.peek() == Tok::LParen {
            self.bump();
            let mut names = vec![self.name()?];
            while matches!(self.peek(), Tok::Ident(s) if !is_keyword(s)) {
                names.push(self.name()?);
            }
            self.expect(Tok::Colon, "`:`")?;
            let ty = self.term()?;
            self.expect(Tok::RParen, "`)`")?;
            gs.push(Group { names, ty });
        }
        if at_least_one && gs.is_empty() {
            return self.error(&["binder group `(x : A)`"]);
        }
        Ok(gs)
    }

    fn term(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        for (kw, sep) in [("fun", Tok::FatArrow), ("Pi", Tok::Comma), ("Sig", Tok::Comma)] {
            if self.is_kw(kw) {
                self.bump();
                let gs = self.groups(true)?;
                self.expect(sep.clone(), if kw == "fun" { "`=>`" } else { "`,`" })?;
                let body = Box::new(self.term()?);
                let kind = match kw {
                    "fun" => ExprKind::Fun(gs, body),
                    "Pi" => ExprKind::Pi(gs, body),
                    _ => ExprKind::Sig(gs, body),
                };
                return Ok(Expr::new(kind, pos));
            }
        }
        let lhs = self.prod()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.term()?;
            return Ok(Expr::new(ExprKind::Arrow(Box::new(lhs), Box::new(rhs)), pos));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        let lhs = self.app()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.prod()?;
            return Ok(Expr::new(ExprKind::Prod(Box::new(lhs), Box::new(rhs)), pos));
        }
        Ok(lhs)
    }

    fn atom_start(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !is_keyword(s) || matches!(s.as_str(), "Prop" | "Type" | "pair"),
            Tok::Num(_) | Tok::LParen | Tok::LBrace => true,
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        let mut head = if self.is_kw("fst") || self.is_kw("snd") {
            let first = self.is_kw("fst");
            self.bump();
            let t = Box::new(self.atom()?);
            Expr::new(if first { ExprKind::Fst(t) } else { ExprKind::Snd(t) }, pos)
        } else {
            self.atom()?
        };
        while self.atom_start() {
            let arg = self.atom()?;
            head = Expr::new(ExprKind::App(Box::new(head), Box::new(arg)), pos);
        }
        Ok(head)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::new(ExprKind::Num(n), pos))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::LBrace => {
                self.bump();
                let x = self.name()?;
                self.expect(Tok::Colon, "`:`")?;
                let a = self.term()?;
                self.expect(Tok::Bar, "`|`")?;
                let p = self.term()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(Expr::new(ExprKind::Subset(x, Box::new(a), Box::new(p)), pos))
            }
            Tok::Ident(s) if s == "Prop" => {
                self.bump();
                Ok(Expr::new(ExprKind::Prop, pos))
            }
            Tok::Ident(s) if s == "Type" => {
                self.bump();
                match self.peek().clone() {
                    Tok::Num(n) => {
                        self.bump();
                        let level = u32::try_from(n).map_err(|_| ParseError {
                            pos,
                            message: "universe level too large".into(),
                            expected: vec![],
                        })?;
                        Ok(Expr::new(ExprKind::Type(level), pos))
                    }
                    _ => self.error(&["universe level"]),
                }
            }
            Tok::Ident(s) if s == "pair" => {
                self.bump();
                let ann = if *self.peek() == Tok::LBracket {
                    self.bump();
                    let t = self.term()?;
                    self.expect(Tok::RBracket, "`]`")?;
                    Some(Box::new(t))
                } else {
                    None
                };
                self.expect(Tok::LParen, "`(`")?;
                let a = self.term()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::new(ExprKind::Pair(ann, Box::new(a), Box::new(b)), pos))
            }
            Tok::Ident(s) if !is_keyword(&s) => {
                self.bump();
                let level = if *self.peek() == Tok::At {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Num(n) if n <= u32::MAX as u64 => {
                            self.bump();
                            Some(n as u32)
                        }
                        _ => return self.error(&["universe level"]),
                    }
                } else {
                    None
                };
                Ok(Expr::new(ExprKind::Var(s, level), pos))
            }
            _ => self.error(&["term"]),
        }
    }

    fn command(&mut self) -> PResult<Located> {
        let pos = self.pos();
        let command = match self.peek().clone() {
            Tok::Ident(kw) if kw == "def" => {
                self.bump();
                let name = self.name()?;
                let params = self.groups(false)?;
                let ty = if *self.peek() == Tok::Colon {
                    self.bump();
                    Some(self.term()?)
                } else {
                    None
                };
                self.expect(Tok::Define, "`:=`")?;
                let body = self.term()?;
                Command::Def { name, params, ty, body }
            }
            Tok::Ident(kw) if kw == "axiom" => {
                self.bump();
                let name = self.name()?;
                let params = self.groups(false)?;
                self.expect(Tok::Colon, "`:`")?;
                let ty = self.term()?;
                Command::Axiom { name, params, ty }
            }
            Tok::Ident(kw) if kw == "propdata" => {
                self.bump();
                let name = self.name()?;
                let params = self.groups(false)?;
                self.expect(Tok::Define, "`:=`")?;
                let ctor = self.name()?;
                let args = self.groups(false)?;
                self.expect(Tok::Colon, "`:`")?;
                let result = self.term()?;
                Command::PropData {
                    name,
                    params,
                    ctor,
                    args,
                    result,
                }
            }
            Tok::Directive(d) => {
                let Some(kind) = DirectiveKind::from_name(&d) else {
                    return Err(ParseError {
                        pos,
                        message: format!("unknown directive #{d}"),
                        expected: DirectiveKind::ALL.iter().map(|k| format!("#{}", k.name())).collect(),
                    });
                };
                self.bump();
                let args = match kind {
                    DirectiveKind::Check | DirectiveKind::Model => {
                        let t = self.term()?;
                        self.expect(Tok::Colon, "`:`")?;
                        vec![t, self.term()?]
                    }
                    DirectiveKind::Convert => vec![self.atom()?, self.atom()?],
                    _ => vec![self.term()?],
                };
                Command::Directive { kind, args }
            }
            _ => return self.error(&["`def`", "`axiom`", "`propdata`", "directive"]),
        };
        Ok(Located { command, pos })
    }
}

/// Parses a whole file.
pub fn parse(src: &str) -> PResult<Vec<Located>> {
    let toks = lex(src).map_err(|e| ParseError {
        pos: e.pos,
        message: e.message,
        expected: vec![],
    })?;
    let mut p = Parser { toks, i: 0 };
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        out.push(p.command()?);
    }
    Ok(out)
}

/// Parses a single term.
pub fn parse_term(src: &str) -> PResult<Expr> {
    let toks = lex(src).map_err(|e| ParseError {
        pos: e.pos,
        message: e.message,
        expected: vec![],
    })?;
    let mut p = Parser { toks, i: 0 };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.error(&["end of input"]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn def_command() {
        let cmds = parse("def id : Pi (A : Type 0), A -> A := fun (A : Type 0) => fun (x : A) => x").unwrap();
        assert_eq!(cmds.len(), 1);
        assert!(matches!(cmds[0].command, Command::Def { .. }));
    }

    #[test]
    fn check_directive() {
        let cmds = parse("#check fun (x : nat) => x : nat -> nat").unwrap();
        assert!(matches!(
            &cmds[0].command,
            Command::Directive { kind: DirectiveKind::Check, args } if args.len() == 2
        ));
    }

    #[test]
    fn incomplete_def() {
        let err = parse("def bad := ").unwrap_err();
        assert_eq!(err.pos.line, 1);
        assert!(err.expected.contains(&"term".to_string()));
    }

    #[test]
    fn eps_is_rejected() {
        let err = parse("#normalize ε").unwrap_err();
        assert!(err.message.contains("ε"));
    }

    #[test]
    fn precedence() {
        let t = parse_term("A * B -> f x (g y) -> C").unwrap();
        assert_eq!(t.to_string(), "A * B -> f x (g y) -> C");
        let t = parse_term("fst p q").unwrap();
        assert!(matches!(t.kind, ExprKind::App(ref f, _) if matches!(f.kind, ExprKind::Fst(_))));
        let t = parse_term("(A -> B) -> {x : nat | P x} * eqrec@1").unwrap();
        assert_eq!(t.to_string(), "(A -> B) -> {x : nat | P x} * eqrec@1");
    }
}
