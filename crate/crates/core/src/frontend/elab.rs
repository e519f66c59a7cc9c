//! Surface terms to tagged kernel terms.

use std::sync::Arc;

use super::lexer::Pos;
use super::syntax::{Expr, ExprKind, Group};
use super::Diagnostic;
use crate::signature::{numeral, Decl, DeclKind, PropDataInfo, Signature};
use crate::term::*;
use crate::typecheck::{ErrorKind, TypeChecker, TypeError};

pub type ElabResult<T> = Result<T, Diagnostic>;

fn type_error(pos: Pos, e: TypeError) -> Diagnostic {
    Diagnostic::from_type_error(pos, &e)
}

fn unbound(pos: Pos, msg: String) -> Diagnostic {
    Diagnostic::new(pos, ErrorKind::UnboundVariable.to_string(), msg)
}

/// Whether elaborating `e` benefits from an expected type.
fn wants_expected(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Pair(None, ..) => true,
        ExprKind::Fun(_, body) => wants_expected(body),
        _ => false,
    }
}

pub struct Elaborator<'s> {
    pub tc: TypeChecker<'s>,
}

impl<'s> Elaborator<'s> {
    pub fn new(tc: TypeChecker<'s>) -> Elaborator<'s> {
        Elaborator { tc }
    }

    fn sig(&self) -> &'s Signature {
        self.tc.sig
    }

    fn sort_tag(&self, ctx: &Context, a: &Term, pos: Pos) -> ElabResult<Tag> {
        self.tc
            .infer_sort(ctx, a)
            .map(|s| s.inhabitant_tag())
            .map_err(|e| type_error(pos, e))
    }

    fn whnf(&self, t: &Term, pos: Pos) -> ElabResult<Term> {
        self.tc.whnf(t).map_err(|e| type_error(pos, e))
    }

    fn resolve(&self, ctx: &Context, name: &str, level: Option<u32>, pos: Pos) -> ElabResult<Term> {
        let entries = ctx.entries();
        if let Some(k) = entries.iter().rposition(|e| &*e.name == name) {
            if level.is_some() {
                return Err(unbound(pos, format!("local {name} takes no universe level")));
            }
            return Ok(var(entries.len() - 1 - k, entries[k].tag));
        }
        let lvl = Universe(level.unwrap_or(0));
        if name == "eqrec" {
            return Ok(Term::EqRec(lvl));
        }
        if let Some((base, kind)) = self.sig().eliminator(name) {
            let lvl = if kind == ElimKind::Ind { Universe(0) } else { lvl };
            return Ok(Term::Rec(base, kind, lvl));
        }
        if let Some(d) = self.sig().get(name) {
            if level.is_some() {
                return Err(unbound(pos, format!("constant {name} takes no universe level")));
            }
            return Ok(Term::Const(d.name.clone(), d.tag));
        }
        Err(unbound(pos, format!("unknown identifier {name}")))
    }

    /// Elaborates each binder of the groups, pushing it onto `ctx`.
    fn telescope(&self, ctx: &mut Context, gs: &[Group]) -> ElabResult<Vec<(Name, Tag, Term)>> {
        let mut out = Vec::new();
        for g in gs {
            let ty = self.elab(ctx, &g.ty, None)?;
            let tag = self.sort_tag(ctx, &ty, g.ty.pos)?;
            for (k, n) in g.names.iter().enumerate() {
                let ty_k = ty.shift(k as isize);
                ctx.push(n, tag, ty_k.clone());
                out.push((Name::from(n.as_str()), tag, ty_k));
            }
        }
        Ok(out)
    }

    pub fn elab(&self, ctx: &Context, e: &Expr, expected: Option<&Term>) -> ElabResult<Term> {
        let pos = e.pos;
        match &e.kind {
            ExprKind::Var(n, level) => self.resolve(ctx, n, *level, pos),
            ExprKind::Num(n) => Ok(numeral(*n)),
            ExprKind::Prop => Ok(prop()),
            ExprKind::Type(i) => Ok(type_(*i)),
            ExprKind::Eps => Err(Diagnostic::new(pos, "ParseError".into(), "ε cannot be elaborated".into())),
            ExprKind::Fun(gs, body) => {
                let mut inner = ctx.clone();
                let mut exp = expected.cloned();
                let mut binders = Vec::new();
                for g in gs {
                    let ty = self.elab(&inner, &g.ty, None)?;
                    let tag = self.sort_tag(&inner, &ty, g.ty.pos)?;
                    for (k, n) in g.names.iter().enumerate() {
                        let ty_k = ty.shift(k as isize);
                        exp = match exp {
                            Some(t) => match self.whnf(&t, pos)? {
                                Term::Pi(_, _, cod) => Some((*cod).clone()),
                                _ => None,
                            },
                            None => None,
                        };
                        inner.push(n, tag, ty_k.clone());
                        binders.push((n.clone(), tag, ty_k));
                    }
                }
                let mut t = self.elab(&inner, body, exp.as_ref())?;
                for (n, tag, ty) in binders.into_iter().rev() {
                    t = lam(&n, tag, ty, t);
                }
                Ok(t)
            }
            ExprKind::Pi(gs, body) => {
                let mut inner = ctx.clone();
                let binders = self.telescope(&mut inner, gs)?;
                let mut t = self.elab(&inner, body, None)?;
                for (n, tag, ty) in binders.into_iter().rev() {
                    t = pi(&n, tag, ty, t);
                }
                Ok(t)
            }
            ExprKind::Sig(gs, body) => {
                let mut inner = ctx.clone();
                let binders = self.telescope(&mut inner, gs)?;
                let mut t = self.elab(&inner, body, None)?;
                for (n, tag, ty) in binders.into_iter().rev() {
                    let s = self.sort_tag(&inner, &t, body.pos)?;
                    inner.pop();
                    t = Term::Sigma(s, Binder::new(&n, tag), Arc::new(ty), Arc::new(t));
                }
                Ok(t)
            }
            ExprKind::Subset(x, a, p) => {
                let a2 = self.elab(ctx, a, None)?;
                let tag = self.sort_tag(ctx, &a2, a.pos)?;
                let inner = ctx.extended(x, tag, a2.clone());
                let p2 = self.elab(&inner, p, None)?;
                let s = self.sort_tag(&inner, &p2, p.pos)?;
                Ok(Term::Sigma(s, Binder::new(x, tag), Arc::new(a2), Arc::new(p2)))
            }
            ExprKind::Arrow(a, b) => {
                let a2 = self.elab(ctx, a, None)?;
                let tag = self.sort_tag(ctx, &a2, a.pos)?;
                let b2 = self.elab(ctx, b, None)?;
                Ok(arrow(tag, a2, b2))
            }
            ExprKind::Prod(a, b) => {
                let a2 = self.elab(ctx, a, None)?;
                let tag = self.sort_tag(ctx, &a2, a.pos)?;
                let b2 = self.elab(ctx, b, None)?;
                let s = self.sort_tag(ctx, &b2, b.pos)?;
                Ok(Term::Sigma(s, Binder::new("_", tag), Arc::new(a2), Arc::new(b2.shift(1))))
            }
            ExprKind::App(f, a) => {
                let f2 = self.elab(ctx, f, None)?;
                let dom = if wants_expected(a) {
                    let ft = self.tc.infer(ctx, &f2).map_err(|e| type_error(f.pos, e))?;
                    match self.whnf(&ft, f.pos)? {
                        Term::Pi(_, dom, _) => Some((*dom).clone()),
                        _ => None,
                    }
                } else {
                    None
                };
                let a2 = self.elab(ctx, a, dom.as_ref())?;
                Ok(app(f2, a2))
            }
            ExprKind::Pair(ann, a, b) => {
                let ann2 = match (ann, expected) {
                    (Some(t), _) => {
                        let t2 = self.elab(ctx, t, None)?;
                        self.tc.infer_sort(ctx, &t2).map_err(|e| type_error(t.pos, e))?;
                        self.whnf(&t2, t.pos)?
                    }
                    (None, Some(t)) => self.whnf(t, pos)?,
                    (None, None) => {
                        return Err(Diagnostic::new(
                            pos,
                            "AnnotationRequired".into(),
                            "pair needs an annotation `pair[T](a, b)`".into(),
                        ))
                    }
                };
                let Term::Sigma(_, _, dom, cod) = &ann2 else {
                    return Err(Diagnostic::new(
                        pos,
                        ErrorKind::NotAPair.to_string(),
                        "pair annotation is not a Σ-type".into(),
                    ));
                };
                let a2 = self.elab(ctx, a, Some(dom))?;
                let b2 = self.elab(ctx, b, Some(&cod.instantiate(&a2)))?;
                Ok(pair(ann2, a2, b2))
            }
            ExprKind::Fst(p) | ExprKind::Snd(p) => {
                let p2 = self.elab(ctx, p, None)?;
                let ty = self.tc.infer(ctx, &p2).map_err(|e| type_error(p.pos, e))?;
                let Term::Sigma(s, ..) = self.whnf(&ty, p.pos)? else {
                    return Err(Diagnostic::new(
                        p.pos,
                        ErrorKind::NotAPair.to_string(),
                        "projection of a term whose type is not a Σ-type".into(),
                    ));
                };
                Ok(match e.kind {
                    ExprKind::Fst(_) => proj1(s, p2),
                    _ => proj2(s, p2),
                })
            }
        }
    }

    /// Elaborates and type-checks a closed type.
    pub fn elab_type(&self, ctx: &Context, e: &Expr) -> ElabResult<Term> {
        let t = self.elab(ctx, e, None)?;
        self.tc.infer_sort(ctx, &t).map_err(|err| type_error(e.pos, err))?;
        Ok(t)
    }

    /// Elaborates `e` and checks it against `ty`, or infers its type.
    pub fn elab_checked(&self, ctx: &Context, e: &Expr, ty: Option<&Term>) -> ElabResult<(Term, Term)> {
        let t = self.elab(ctx, e, ty)?;
        match ty {
            Some(ty) => {
                self.tc.check(ctx, &t, ty).map_err(|err| type_error(e.pos, err))?;
                Ok((t, ty.clone()))
            }
            None => {
                let ty = self.tc.infer(ctx, &t).map_err(|err| type_error(e.pos, err))?;
                Ok((t, ty))
            }
        }
    }

    /// Elaborates a `propdata` declaration.
    pub fn propdata(&self, name: &str, params: &[Group], ctor: &str, args: &[Group], result: &Expr) -> ElabResult<PropDataInfo> {
        let mut ctx = Context::new();
        let indices = self.telescope(&mut ctx, params)?;
        let family = pis(&indices);
        let mut with_family = self.sig().clone();
        with_family.push(Decl {
            name: Name::from(name),
            ty: family,
            tag: Tag::Diamond,
            kind: DeclKind::Axiom,
        });
        let inner = Elaborator::new(TypeChecker::new(&with_family, self.tc.mode, self.tc.fuel));
        let mut actx = Context::new();
        let targs = inner.telescope(&mut actx, args)?;
        let r = inner.elab(&actx, result, None)?;
        let (head, us) = r.spine();
        if !matches!(head, Term::Const(n, _) if &**n == name) {
            return Err(Diagnostic::new(
                result.pos,
                ErrorKind::IllFormedDeclaration.to_string(),
                format!("constructor result must be an instance of {name}"),
            ));
        }
        Ok(PropDataInfo {
            name: Name::from(name),
            indices,
            ctor: Name::from(ctor),
            args: targs,
            result: us.into_iter().cloned().collect(),
        })
    }
}

fn pis(tel: &[(Name, Tag, Term)]) -> Term {
    crate::signature::pis(tel, prop())
}
