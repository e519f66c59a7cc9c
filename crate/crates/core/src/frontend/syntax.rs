//! Surface syntax and its canonical printer.

use std::fmt::{self, Write};

use super::lexer::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

/// `(x y : A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub names: Vec<String>,
    pub ty: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    /// A name, with an optional universe level (`eqrec@1`).
    Var(String, Option<u32>),
    Num(u64),
    Prop,
    Type(u32),
    Fun(Vec<Group>, Box<Expr>),
    Pi(Vec<Group>, Box<Expr>),
    Sig(Vec<Group>, Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Subset(String, Box<Expr>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Pair(Option<Box<Expr>>, Box<Expr>, Box<Expr>),
    Fst(Box<Expr>),
    Snd(Box<Expr>),
    /// Only produced when printing kernel terms.
    Eps,
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Expr {
        Expr { kind, pos }
    }

    /// An expression without a source position.
    pub fn synth(kind: ExprKind) -> Expr {
        Expr::new(kind, Pos::default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectiveKind {
    Check,
    Infer,
    Normalize,
    Extract,
    Convert,
    Mu,
    Coerce,
    Tcc,
    Model,
}

impl DirectiveKind {
    pub const ALL: [DirectiveKind; 9] = [
        DirectiveKind::Check,
        DirectiveKind::Infer,
        DirectiveKind::Normalize,
        DirectiveKind::Extract,
        DirectiveKind::Convert,
        DirectiveKind::Mu,
        DirectiveKind::Coerce,
        DirectiveKind::Tcc,
        DirectiveKind::Model,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DirectiveKind::Check => "check",
            DirectiveKind::Infer => "infer",
            DirectiveKind::Normalize => "normalize",
            DirectiveKind::Extract => "extract",
            DirectiveKind::Convert => "convert",
            DirectiveKind::Mu => "mu",
            DirectiveKind::Coerce => "coerce",
            DirectiveKind::Tcc => "tcc",
            DirectiveKind::Model => "model",
        }
    }

    pub fn from_name(s: &str) -> Option<DirectiveKind> {
        DirectiveKind::ALL.into_iter().find(|d| d.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Def {
        name: String,
        params: Vec<Group>,
        ty: Option<Expr>,
        body: Expr,
    },
    Axiom {
        name: String,
        params: Vec<Group>,
        ty: Expr,
    },
    /// `propdata I (x : A) := c (y : B) : I u`.
    PropData {
        name: String,
        params: Vec<Group>,
        ctor: String,
        args: Vec<Group>,
        result: Expr,
    },
    /// `#check t : T` and `#model t : T` carry two arguments, `#convert`
    /// two terms, the others one.
    Directive { kind: DirectiveKind, args: Vec<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub command: Command,
    pub pos: Pos,
}

pub const KEYWORDS: [&str; 11] = ["def", "axiom", "propdata", "fun", "Pi", "Sig", "Prop", "Type", "pair", "fst", "snd"];

const TERM: u8 = 0;
const PROD: u8 = 1;
const APP: u8 = 2;
const ATOM: u8 = 3;

fn level(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Fun(..) | ExprKind::Pi(..) | ExprKind::Sig(..) | ExprKind::Arrow(..) => TERM,
        ExprKind::Prod(..) => PROD,
        ExprKind::App(..) | ExprKind::Fst(_) | ExprKind::Snd(_) | ExprKind::Type(_) => APP,
        _ => ATOM,
    }
}

fn groups(out: &mut String, gs: &[Group]) {
    for g in gs {
        out.push_str(" (");
        out.push_str(&g.names.join(" "));
        out.push_str(" : ");
        expr_at(out, &g.ty, TERM);
        out.push(')');
    }
}

fn expr_at(out: &mut String, e: &Expr, min: u8) {
    let paren = level(e) < min;
    if paren {
        out.push('(');
    }
    match &e.kind {
        ExprKind::Var(n, None) => out.push_str(n),
        ExprKind::Var(n, Some(l)) => {
            let _ = write!(out, "{n}@{l}");
        }
        ExprKind::Num(n) => {
            let _ = write!(out, "{n}");
        }
        ExprKind::Prop => out.push_str("Prop"),
        ExprKind::Type(i) => {
            let _ = write!(out, "Type {i}");
        }
        ExprKind::Fun(gs, body) => {
            out.push_str("fun");
            groups(out, gs);
            out.push_str(" => ");
            expr_at(out, body, TERM);
        }
        ExprKind::Pi(gs, body) | ExprKind::Sig(gs, body) => {
            out.push_str(if matches!(e.kind, ExprKind::Pi(..)) { "Pi" } else { "Sig" });
            groups(out, gs);
            out.push_str(", ");
            expr_at(out, body, TERM);
        }
        ExprKind::Arrow(a, b) => {
            expr_at(out, a, PROD);
            out.push_str(" -> ");
            expr_at(out, b, TERM);
        }
        ExprKind::Prod(a, b) => {
            expr_at(out, a, APP);
            out.push_str(" * ");
            expr_at(out, b, PROD);
        }
        ExprKind::Subset(x, a, p) => {
            let _ = write!(out, "{{{x} : ");
            expr_at(out, a, TERM);
            out.push_str(" | ");
            expr_at(out, p, TERM);
            out.push('}');
        }
        ExprKind::App(f, a) => {
            expr_at(out, f, APP);
            out.push(' ');
            expr_at(out, a, ATOM);
        }
        ExprKind::Pair(ann, a, b) => {
            out.push_str("pair");
            if let Some(t) = ann {
                out.push('[');
                expr_at(out, t, TERM);
                out.push(']');
            }
            out.push('(');
            expr_at(out, a, TERM);
            out.push_str(", ");
            expr_at(out, b, TERM);
            out.push(')');
        }
        ExprKind::Fst(t) | ExprKind::Snd(t) => {
            out.push_str(if matches!(e.kind, ExprKind::Fst(_)) { "fst " } else { "snd " });
            expr_at(out, t, ATOM);
        }
        ExprKind::Eps => out.push('ε'),
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        expr_at(&mut s, self, TERM);
        f.write_str(&s)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match self {
            Command::Def { name, params, ty, body } => {
                let _ = write!(s, "def {name}");
                groups(&mut s, params);
                if let Some(t) = ty {
                    let _ = write!(s, " : {t}");
                }
                let _ = write!(s, " := {body}");
            }
            Command::Axiom { name, params, ty } => {
                let _ = write!(s, "axiom {name}");
                groups(&mut s, params);
                let _ = write!(s, " : {ty}");
            }
            Command::PropData {
                name,
                params,
                ctor,
                args,
                result,
            } => {
                let _ = write!(s, "propdata {name}");
                groups(&mut s, params);
                let _ = write!(s, " := {ctor}");
                groups(&mut s, args);
                let _ = write!(s, " : {result}");
            }
            Command::Directive { kind, args } => {
                let _ = write!(s, "#{}", kind.name());
                match kind {
                    DirectiveKind::Check | DirectiveKind::Model => {
                        let _ = write!(s, " {} : {}", args[0], args[1]);
                    }
                    DirectiveKind::Convert => {
                        for a in args {
                            s.push(' ');
                            expr_at(&mut s, a, ATOM);
                        }
                    }
                    _ => {
                        let _ = write!(s, " {}", args[0]);
                    }
                }
            }
        }
        f.write_str(&s)
    }
}

/// Prints `e` parenthesized unless it is atomic.
pub fn print_atom(e: &Expr) -> String {
    let mut s = String::new();
    expr_at(&mut s, e, ATOM);
    s
}

/// Prints a whole file, one command per line.
pub fn print_commands(cmds: &[Located]) -> String {
    let mut s = String::new();
    for c in cmds {
        let _ = writeln!(s, "{}", c.command);
    }
    s
}
