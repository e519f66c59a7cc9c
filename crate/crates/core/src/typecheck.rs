//! Type inference and checking for the kernel calculus.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::reduce::{tag, Fuel, FuelExhausted, Mode, Reducer};
use crate::signature::{eqrec_type, Decl, DeclKind, PropDataInfo, Signature};
use crate::term::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ErrorKind {
    UnboundVariable,
    NotAFunction,
    NotAPair,
    TagMismatch,
    NotConvertible,
    NotASubtype,
    UniverseError,
    SigmaOnStarFirst,
    FuelExhausted,
    IllFormedDeclaration,
    /// `ε` has no type.
    Untypable,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct TypeError {
    pub kind: ErrorKind,
    /// Declaration or directive the error arose in, when known.
    pub location: Option<String>,
    pub message: String,
    /// The offending subterm.
    pub term: Option<Term>,
    pub expected: Option<Term>,
    pub actual: Option<Term>,
}

impl TypeError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> TypeError {
        TypeError {
            kind,
            location: None,
            message: message.into(),
            term: None,
            expected: None,
            actual: None,
        }
    }

    fn at(mut self, t: &Term) -> TypeError {
        self.term = Some(t.clone());
        self
    }

    fn types(mut self, expected: &Term, actual: &Term) -> TypeError {
        self.expected = Some(expected.clone());
        self.actual = Some(actual.clone());
        self
    }

    pub fn located(mut self, loc: impl Into<String>) -> TypeError {
        if self.location.is_none() {
            self.location = Some(loc.into());
        }
        self
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for TypeError {}

impl From<FuelExhausted> for TypeError {
    fn from(_: FuelExhausted) -> TypeError {
        TypeError::new(ErrorKind::FuelExhausted, "conversion undecided within the fuel budget")
    }
}

pub type TcResult<T> = Result<T, TypeError>;

/// A declaration before checking.
#[derive(Clone, Debug)]
pub enum Declaration {
    Def { name: Name, ty: Option<Term>, body: Term },
    Axiom { name: Name, ty: Term },
    PropData(PropDataInfo),
}

impl Declaration {
    pub fn name(&self) -> &str {
        match self {
            Declaration::Def { name, .. } | Declaration::Axiom { name, .. } => name,
            Declaration::PropData(info) => &info.name,
        }
    }
}

/// Type checker over a fixed signature. Every conversion obligation gets a
/// fresh budget of `fuel` steps.
#[derive(Clone, Copy)]
pub struct TypeChecker<'s> {
    pub sig: &'s Signature,
    pub mode: Mode,
    pub fuel: u64,
}

impl<'s> TypeChecker<'s> {
    pub fn new(sig: &'s Signature, mode: Mode, fuel: u64) -> TypeChecker<'s> {
        TypeChecker { sig, mode, fuel }
    }

    pub fn reducer(&self) -> Reducer<'s> {
        Reducer::new(self.sig, self.mode)
    }

    fn fresh_fuel(&self) -> Fuel {
        Fuel::new(self.fuel)
    }

    pub fn tag(&self, t: &Term) -> Tag {
        tag(t, self.mode)
    }

    pub fn whnf(&self, t: &Term) -> TcResult<Term> {
        Ok(self.reducer().whnf(t, &mut self.fresh_fuel(), false)?)
    }

    pub fn subtype(&self, t: &Term, u: &Term) -> TcResult<bool> {
        Ok(self.reducer().subtype(t, u, &mut self.fresh_fuel())?)
    }

    pub fn convert(&self, t: &Term, u: &Term) -> TcResult<bool> {
        Ok(self.reducer().convert(t, u, &mut self.fresh_fuel())?)
    }

    /// Checks that every binding's type is a type whose sort agrees with the
    /// binding's tag.
    pub fn wf_context(&self, ctx: &Context) -> TcResult<()> {
        let mut prefix = Context::new();
        for e in ctx.entries() {
            let s = self.infer_sort(&prefix, &e.ty)?;
            if s.inhabitant_tag() != e.tag {
                return Err(TypeError::new(
                    ErrorKind::TagMismatch,
                    format!("binding {} is tagged {} but its type lives in {}", e.name, e.tag, s),
                )
                .at(&e.ty));
            }
            prefix.push(&e.name, e.tag, e.ty.clone());
        }
        Ok(())
    }

    /// Principal type.
    pub fn infer(&self, ctx: &Context, t: &Term) -> TcResult<Term> {
        match t {
            Term::Sort(s) => Ok(Term::Sort(s.principal_type())),
            Term::Var(i, s) => {
                let (name, btag, ty) = ctx
                    .lookup(*i)
                    .ok_or_else(|| TypeError::new(ErrorKind::UnboundVariable, format!("variable #{i}")).at(t))?;
                if btag != *s {
                    return Err(TypeError::new(
                        ErrorKind::TagMismatch,
                        format!("occurrence of {name} tagged {s}, bound as {btag}"),
                    )
                    .at(t));
                }
                Ok(ty)
            }
            Term::Lam(b, a, body) => {
                self.binder(ctx, b, a)?;
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                let bt = self.infer(&ctx2, body)?;
                Ok(Term::Pi(b.clone(), a.clone(), Arc::new(bt)))
            }
            Term::Pi(b, a, c) => {
                let sa = self.binder(ctx, b, a)?;
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                let sc = self.infer_sort(&ctx2, c)?;
                Ok(Term::Sort(match sc {
                    Sort::Prop => Sort::Prop,
                    _ => sa.max(sc),
                }))
            }
            Term::Sigma(s, b, a, c) => {
                if b.tag != Tag::Diamond {
                    return Err(TypeError::new(ErrorKind::SigmaOnStarFirst, "Σ over a proof-tagged binder").at(t));
                }
                let sa = self.infer_sort(ctx, a)?;
                if sa == Sort::Prop {
                    return Err(TypeError::new(
                        ErrorKind::SigmaOnStarFirst,
                        "first component of a Σ-type cannot be a proof",
                    )
                    .at(t));
                }
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                let sc = self.infer_sort(&ctx2, c)?;
                if sc.inhabitant_tag() != *s {
                    return Err(TypeError::new(
                        ErrorKind::TagMismatch,
                        format!("Σ tagged {s} but its second component lives in {sc}"),
                    )
                    .at(t));
                }
                Ok(Term::Sort(match s {
                    Tag::Star => sa,
                    Tag::Diamond => sa.max(sc),
                }))
            }
            Term::App(f, a) => {
                let ft = self.infer(ctx, f)?;
                let (b, dom, cod) = match self.whnf(&ft)? {
                    Term::Pi(b, dom, cod) => (b, dom, cod),
                    other => {
                        return Err(TypeError::new(ErrorKind::NotAFunction, "applied term is not a function")
                            .at(f)
                            .types(&other, &other))
                    }
                };
                let at = self.tag(a);
                if at != b.tag {
                    return Err(TypeError::new(
                        ErrorKind::TagMismatch,
                        format!("argument of tag {at} given to a binder of tag {}", b.tag),
                    )
                    .at(t));
                }
                let aty = self.infer(ctx, a)?;
                if !self.subtype(&aty, &dom)? {
                    return Err(TypeError::new(ErrorKind::NotASubtype, "argument type mismatch")
                        .at(a)
                        .types(&dom, &aty));
                }
                Ok(cod.instantiate(a))
            }
            Term::Pair(ann, a, b) => {
                self.infer_sort(ctx, ann)?;
                let Term::Sigma(s, _, dom, cod) = &**ann else {
                    return Err(TypeError::new(ErrorKind::NotAPair, "pair annotation is not a Σ-type").at(ann));
                };
                if self.tag(a) != Tag::Diamond {
                    return Err(TypeError::new(ErrorKind::TagMismatch, "first component of a pair must be computational").at(a));
                }
                self.check(ctx, a, dom)?;
                if self.tag(b) != *s {
                    return Err(TypeError::new(
                        ErrorKind::TagMismatch,
                        format!("second component must be of tag {s}"),
                    )
                    .at(b));
                }
                self.check(ctx, b, &cod.instantiate(a))?;
                Ok((**ann).clone())
            }
            Term::Proj1(s, p) | Term::Proj2(s, p) => {
                let pt = self.infer(ctx, p)?;
                let (ps, dom, cod) = match self.whnf(&pt)? {
                    Term::Sigma(ps, _, dom, cod) => (ps, dom, cod),
                    other => {
                        return Err(TypeError::new(ErrorKind::NotAPair, "projection of a non-pair").at(p).types(&other, &other))
                    }
                };
                if ps != *s {
                    return Err(TypeError::new(
                        ErrorKind::TagMismatch,
                        format!("projection tagged {s} on a Σ tagged {ps}"),
                    )
                    .at(t));
                }
                match t {
                    Term::Proj1(..) => Ok((*dom).clone()),
                    _ => Ok(cod.instantiate(&proj1(*s, (**p).clone()))),
                }
            }
            Term::Eps => Err(TypeError::new(ErrorKind::Untypable, "ε has no type").at(t)),
            Term::Const(name, s) => {
                let d = self
                    .sig
                    .get(name)
                    .ok_or_else(|| TypeError::new(ErrorKind::UnboundVariable, format!("unknown constant {name}")).at(t))?;
                if d.tag != *s {
                    return Err(TypeError::new(
                        ErrorKind::TagMismatch,
                        format!("constant {name} used with tag {s}, declared {}", d.tag),
                    )
                    .at(t));
                }
                Ok(d.ty.clone())
            }
            Term::EqRec(l) => Ok(eqrec_type(*l)),
            Term::Rec(name, kind, level) => self
                .sig
                .eliminator_type(name, *kind, *level)
                .ok_or_else(|| TypeError::new(ErrorKind::UnboundVariable, format!("unknown eliminator for {name}")).at(t)),
        }
    }

    /// Checks a binder's domain and that the binder tag matches its sort.
    fn binder(&self, ctx: &Context, b: &Binder, a: &Term) -> TcResult<Sort> {
        let s = self.infer_sort(ctx, a)?;
        if s.inhabitant_tag() != b.tag {
            return Err(TypeError::new(
                ErrorKind::TagMismatch,
                format!("binder {} tagged {} over a type in {}", b.name, b.tag, s),
            )
            .at(a));
        }
        Ok(s)
    }

    /// The sort of a type.
    pub fn infer_sort(&self, ctx: &Context, a: &Term) -> TcResult<Sort> {
        let ty = self.infer(ctx, a)?;
        match self.whnf(&ty)? {
            Term::Sort(s) => Ok(s),
            other => Err(TypeError::new(ErrorKind::UniverseError, "expected a type").at(a).types(&prop(), &other)),
        }
    }

    pub fn check(&self, ctx: &Context, t: &Term, expected: &Term) -> TcResult<()> {
        let actual = self.infer(ctx, t)?;
        if self.subtype(&actual, expected)? {
            Ok(())
        } else {
            Err(TypeError::new(ErrorKind::NotASubtype, "type mismatch").at(t).types(expected, &actual))
        }
    }

    /// Checks a declaration and returns the extended signature.
    pub fn check_declaration(&self, d: &Declaration) -> TcResult<Signature> {
        let name = d.name();
        if self.sig.contains(name) || name.ends_with("_rec") || name.ends_with("_ind") {
            return Err(TypeError::new(ErrorKind::IllFormedDeclaration, format!("{name} is already declared")));
        }
        let empty = Context::new();
        let mut sig = self.sig.clone();
        match d {
            Declaration::Def { name, ty, body } => {
                let ty = match ty {
                    Some(ty) => {
                        self.infer_sort(&empty, ty)?;
                        self.check(&empty, body, ty)?;
                        ty.clone()
                    }
                    None => self.infer(&empty, body)?,
                };
                let s = self.infer_sort(&empty, &ty)?;
                sig.push(Decl::def(name, ty, s.inhabitant_tag(), body.clone()));
            }
            Declaration::Axiom { name, ty } => {
                let s = self.infer_sort(&empty, ty)?;
                sig.push(Decl {
                    name: name.clone(),
                    ty: ty.clone(),
                    tag: s.inhabitant_tag(),
                    kind: DeclKind::Axiom,
                });
            }
            Declaration::PropData(info) => {
                self.check_propdata(info)?;
                let info = Arc::new(info.clone());
                sig.push(Decl {
                    name: info.name.clone(),
                    ty: info.family_type(),
                    tag: Tag::Diamond,
                    kind: DeclKind::PropData(info.clone()),
                });
                sig.push(Decl {
                    name: info.ctor.clone(),
                    ty: info.ctor_type(),
                    tag: Tag::Star,
                    kind: DeclKind::PropCtor(info.clone()),
                });
            }
        }
        Ok(sig)
    }

    fn check_propdata(&self, info: &PropDataInfo) -> TcResult<()> {
        let ill = |msg: String| TypeError::new(ErrorKind::IllFormedDeclaration, msg);
        if info.ctor == info.name || self.sig.contains(&info.ctor) {
            return Err(ill(format!("constructor name {} is not fresh", info.ctor)));
        }
        let mut ctx = Context::new();
        for (n, t, ty) in &info.indices {
            let s = self.infer_sort(&ctx, ty).map_err(|e| ill(format!("index {n}: {e}")))?;
            if s.inhabitant_tag() != *t {
                return Err(ill(format!("index {n} has a mis-tagged binder")));
            }
            ctx.push(n, *t, ty.clone());
        }
        if info.result.len() != info.indices.len() {
            return Err(ill(format!(
                "constructor result gives {} indices, family expects {}",
                info.result.len(),
                info.indices.len()
            )));
        }
        let mut ctx = Context::new();
        for (n, t, ty) in &info.args {
            // Referring to the family being declared is recursion.
            let s = self
                .infer_sort(&ctx, ty)
                .map_err(|e| ill(format!("constructor argument {n}: {e}")))?;
            if s != Sort::Prop {
                return Err(ill(format!("constructor argument {n} is not a proposition (its type lives in {s})")));
            }
            if *t != Tag::Star {
                return Err(ill(format!("constructor argument {n} has a mis-tagged binder")));
            }
            ctx.push(n, *t, ty.clone());
        }
        // The result indices must fit the family.
        let mut with_family = self.sig.clone();
        with_family.push(Decl {
            name: info.name.clone(),
            ty: info.family_type(),
            tag: Tag::Diamond,
            kind: DeclKind::Axiom,
        });
        let tc = TypeChecker::new(&with_family, self.mode, self.fuel);
        let s = tc
            .infer_sort(&Context::new(), &info.ctor_type())
            .map_err(|e| ill(format!("constructor type: {e}")))?;
        if s != Sort::Prop {
            return Err(ill("constructor type is not a proposition".into()));
        }
        Ok(())
    }

    /// Type synthesis that skips premises and accepts `ε` where a proof is
    /// expected. Used to recover sorts of reducts that contain `ε`.
    pub fn infer_unchecked(&self, ctx: &Context, t: &Term) -> Option<Term> {
        match t {
            Term::Sort(s) => Some(Term::Sort(s.principal_type())),
            Term::Var(i, _) => ctx.lookup(*i).map(|(_, _, ty)| ty),
            Term::Lam(b, a, body) => {
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                let bt = self.infer_unchecked(&ctx2, body)?;
                Some(Term::Pi(b.clone(), a.clone(), Arc::new(bt)))
            }
            Term::Pi(b, a, c) => {
                let sa = self.sort_unchecked(ctx, a)?;
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                let sc = self.sort_unchecked(&ctx2, c)?;
                Some(Term::Sort(if sc == Sort::Prop { Sort::Prop } else { sa.max(sc) }))
            }
            Term::Sigma(s, b, a, c) => {
                let sa = self.sort_unchecked(ctx, a)?;
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                let sc = self.sort_unchecked(&ctx2, c)?;
                Some(Term::Sort(if *s == Tag::Star { sa } else { sa.max(sc) }))
            }
            Term::App(f, a) => {
                let ft = self.infer_unchecked(ctx, f)?;
                match self.whnf(&ft).ok()? {
                    Term::Pi(_, _, cod) => Some(cod.instantiate(a)),
                    _ => None,
                }
            }
            Term::Pair(ann, _, _) => Some((**ann).clone()),
            Term::Proj1(s, p) | Term::Proj2(s, p) => {
                let pt = self.infer_unchecked(ctx, p)?;
                match self.whnf(&pt).ok()? {
                    Term::Sigma(_, _, dom, cod) => match t {
                        Term::Proj1(..) => Some((*dom).clone()),
                        _ => Some(cod.instantiate(&proj1(*s, (**p).clone()))),
                    },
                    _ => None,
                }
            }
            Term::Eps => None,
            _ => self.infer(ctx, t).ok(),
        }
    }

    pub fn sort_unchecked(&self, ctx: &Context, a: &Term) -> Option<Sort> {
        let ty = self.infer_unchecked(ctx, a)?;
        self.whnf(&ty).ok()?.as_sort()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{bool_ty, nat, numeral, tt};
    use Tag::*;

    fn tc(sig: &Signature) -> TypeChecker<'_> {
        TypeChecker::new(sig, Mode::base(), 10_000)
    }

    fn refl_term() -> Term {
        lam(
            "A",
            Diamond,
            type_(0),
            lam(
                "x",
                Diamond,
                var(0, Diamond),
                lam(
                    "P",
                    Diamond,
                    arrow(Diamond, var(1, Diamond), prop()),
                    lam("p", Star, app(var(0, Diamond), var(1, Diamond)), var(0, Star)),
                ),
            ),
        )
    }

    #[test]
    fn sorts() {
        let sig = Signature::new();
        let c = Context::new();
        assert_eq!(tc(&sig).infer(&c, &prop()).unwrap(), type_(1));
        assert_eq!(tc(&sig).infer(&c, &type_(2)).unwrap(), type_(3));
    }

    #[test]
    fn refl_type() {
        let sig = Signature::new();
        let ty = tc(&sig).infer(&Context::new(), &refl_term()).unwrap();
        let p_x = app(var(0, Diamond), var(1, Diamond));
        let expected = pi(
            "A",
            Diamond,
            type_(0),
            pi(
                "x",
                Diamond,
                var(0, Diamond),
                pi(
                    "P",
                    Diamond,
                    arrow(Diamond, var(1, Diamond), prop()),
                    arrow(Star, p_x.clone(), p_x),
                ),
            ),
        );
        assert_eq!(ty, expected);
    }

    #[test]
    fn star_sigma_rejected() {
        let sig = Signature::new();
        let mut ctx = Context::new();
        ctx.push("A", Diamond, prop());
        ctx.push("B", Diamond, prop());
        let t = Term::Sigma(Star, Binder::new("x", Star), Arc::new(var(1, Diamond)), Arc::new(var(1, Diamond)));
        assert_eq!(tc(&sig).infer(&ctx, &t).unwrap_err().kind, ErrorKind::SigmaOnStarFirst);
    }

    #[test]
    fn context_formation() {
        let sig = Signature::new();
        let t = tc(&sig);
        assert!(t.wf_context(&Context::new()).is_ok());
        let mut ok = Context::new();
        ok.push("A", Diamond, type_(0));
        ok.push("x", Diamond, var(0, Diamond));
        assert!(t.wf_context(&ok).is_ok());
        let mut bad = Context::new();
        bad.push("P", Diamond, prop());
        bad.push("h", Diamond, var(0, Diamond));
        assert_eq!(t.wf_context(&bad).unwrap_err().kind, ErrorKind::TagMismatch);
    }

    #[test]
    fn check_examples() {
        let sig = Signature::new();
        let t = tc(&sig);
        let c = Context::new();
        assert!(t.check(&c, &tt(), &bool_ty()).is_ok());
        let id = lam("x", Diamond, nat(), var(0, Diamond));
        assert!(t.check(&c, &id, &arrow(Diamond, nat(), nat())).is_ok());
        assert_eq!(t.check(&c, &numeral(0), &prop()).unwrap_err().kind, ErrorKind::NotASubtype);
    }

    #[test]
    fn tag_mismatched_application() {
        let sig = Signature::new();
        let mut ctx = Context::new();
        ctx.push("P", Diamond, prop());
        ctx.push("h", Star, var(0, Diamond));
        // (λx:nat.x) h
        let t = app(lam("x", Diamond, nat(), var(0, Diamond)), var(0, Star));
        assert_eq!(tc(&sig).infer(&ctx, &t).unwrap_err().kind, ErrorKind::TagMismatch);
    }

    #[test]
    fn propdata_rejects_computational_argument() {
        let sig = Signature::new();
        let info = PropDataInfo {
            name: "Bad".into(),
            indices: vec![],
            ctor: "mk".into(),
            args: vec![("n".into(), Diamond, nat())],
            result: vec![],
        };
        let err = tc(&sig).check_declaration(&Declaration::PropData(info)).unwrap_err();
        assert_eq!(err.kind, ErrorKind::IllFormedDeclaration);
    }
}
