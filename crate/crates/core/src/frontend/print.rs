//! Kernel terms back to surface syntax.

use std::collections::HashSet;

use super::syntax::{Expr, ExprKind, Group, KEYWORDS};
use crate::signature::as_numeral;
use crate::term::{ElimKind, Term};

fn globals(t: &Term, out: &mut HashSet<String>) {
    match t {
        Term::Const(n, _) => {
            out.insert(n.to_string());
        }
        Term::EqRec(_) => {
            out.insert("eqrec".into());
        }
        Term::Rec(n, k, _) => {
            out.insert(rec_name(n, *k));
        }
        _ => t.children().for_each(|c| globals(c, out)),
    }
}

fn rec_name(base: &str, kind: ElimKind) -> String {
    match kind {
        ElimKind::Rec => format!("{base}_rec"),
        ElimKind::Ind => format!("{base}_ind"),
    }
}

struct Printer {
    reserved: HashSet<String>,
    scope: Vec<String>,
}

impl Printer {
    fn fresh(&self, hint: &str) -> String {
        let base = if hint.is_empty() || hint == "_" || hint.starts_with(|c: char| c.is_ascii_digit()) {
            "x"
        } else {
            hint
        };
        let taken = |s: &str| self.reserved.contains(s) || self.scope.iter().any(|n| n == s);
        if !taken(base) {
            return base.to_string();
        }
        (0..).map(|i| format!("{base}{i}")).find(|s| !taken(s)).unwrap()
    }

    fn bind<R>(&mut self, hint: &str, f: impl FnOnce(&mut Printer, String) -> R) -> R {
        let name = self.fresh(hint);
        self.scope.push(name.clone());
        let r = f(self, name);
        self.scope.pop();
        r
    }

    fn expr(&mut self, t: &Term) -> Expr {
        if let Some(n) = as_numeral(t) {
            return Expr::synth(ExprKind::Num(n));
        }
        let kind = match t {
            Term::Sort(crate::term::Sort::Prop) => ExprKind::Prop,
            Term::Sort(crate::term::Sort::Type(u)) => ExprKind::Type(u.0),
            Term::Var(i, _) => {
                let name = match self.scope.len().checked_sub(i + 1) {
                    Some(k) => self.scope[k].clone(),
                    None => format!("#{i}"),
                };
                ExprKind::Var(name, None)
            }
            Term::Lam(b, a, body) => {
                let dom = self.expr(a);
                self.bind(&b.name, |p, x| {
                    let body = p.expr(body);
                    let mut gs = vec![Group { names: vec![x], ty: dom }];
                    match body.kind {
                        ExprKind::Fun(inner, b) => {
                            gs.extend(inner);
                            ExprKind::Fun(gs, b)
                        }
                        k => ExprKind::Fun(gs, Box::new(Expr::synth(k))),
                    }
                })
            }
            Term::Pi(b, a, c) => {
                let dom = self.expr(a);
                if c.has_free(0) {
                    self.bind(&b.name, |p, x| {
                        let cod = p.expr(c);
                        let mut gs = vec![Group { names: vec![x], ty: dom }];
                        match cod.kind {
                            ExprKind::Pi(inner, b) => {
                                gs.extend(inner);
                                ExprKind::Pi(gs, b)
                            }
                            k => ExprKind::Pi(gs, Box::new(Expr::synth(k))),
                        }
                    })
                } else {
                    ExprKind::Arrow(Box::new(dom), Box::new(self.expr(&c.shift(-1))))
                }
            }
            Term::Sigma(s, b, a, c) => {
                let dom = self.expr(a);
                if !c.has_free(0) {
                    ExprKind::Prod(Box::new(dom), Box::new(self.expr(&c.shift(-1))))
                } else {
                    self.bind(&b.name, |p, x| {
                        let cod = Box::new(p.expr(c));
                        match s {
                            crate::term::Tag::Star => ExprKind::Subset(x, Box::new(dom), cod),
                            crate::term::Tag::Diamond => ExprKind::Sig(vec![Group { names: vec![x], ty: dom }], cod),
                        }
                    })
                }
            }
            Term::App(f, a) => ExprKind::App(Box::new(self.expr(f)), Box::new(self.expr(a))),
            Term::Pair(ann, a, b) => ExprKind::Pair(
                Some(Box::new(self.expr(ann))),
                Box::new(self.expr(a)),
                Box::new(self.expr(b)),
            ),
            Term::Proj1(_, p) => ExprKind::Fst(Box::new(self.expr(p))),
            Term::Proj2(_, p) => ExprKind::Snd(Box::new(self.expr(p))),
            Term::Eps => ExprKind::Eps,
            Term::Const(n, _) => ExprKind::Var(n.to_string(), None),
            Term::EqRec(l) => ExprKind::Var("eqrec".into(), (l.0 > 0).then_some(l.0)),
            Term::Rec(n, k, l) => {
                let level = (*k == ElimKind::Rec && l.0 > 0).then_some(l.0);
                ExprKind::Var(rec_name(n, *k), level)
            }
        };
        Expr::synth(kind)
    }
}

/// Surface form of `t` in a context with the given names, outermost first.
pub fn to_surface(t: &Term, names: &[impl AsRef<str>]) -> Expr {
    let mut reserved: HashSet<String> = KEYWORDS.iter().map(|s| s.to_string()).collect();
    globals(t, &mut reserved);
    let mut p = Printer {
        reserved,
        scope: names.iter().map(|n| n.as_ref().to_string()).collect(),
    };
    p.expr(t)
}

pub fn print_term(t: &Term, names: &[impl AsRef<str>]) -> String {
    to_surface(t, names).to_string()
}

/// Prints a closed term.
pub fn print_closed(t: &Term) -> String {
    print_term(t, &[] as &[&str])
}
