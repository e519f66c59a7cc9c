//! Set-theoretic semantics over hereditarily finite sets.
//!
//! Proofs denote `∅`, propositions denote subsets of `𝕀 = {∅}`, functions
//! are finite graphs of Kuratowski pairs. Universes are truncated by rank, so
//! anything that needs a universe as a carrier is reported as not finitely
//! modelable instead of being approximated.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::reduce::{tag, Fuel, Mode, Reducer};
use crate::signature::{DeclKind, Signature, BOOL, FALSE, NAT, SUCC, TRUE, ZERO};
use crate::term::*;
use crate::typecheck::TypeChecker;

/// A hereditarily finite set, kept as a sorted, duplicate-free slice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HFSet(Arc<[HFSet]>);

impl HFSet {
    pub fn empty() -> HFSet {
        HFSet(Arc::from(Vec::new()))
    }

    /// `𝕀 = {∅}`.
    pub fn unit() -> HFSet {
        HFSet::singleton(HFSet::empty())
    }

    pub fn singleton(x: HFSet) -> HFSet {
        HFSet(Arc::from(vec![x]))
    }

    pub fn from_vec(mut v: Vec<HFSet>) -> HFSet {
        v.sort();
        v.dedup();
        HFSet(Arc::from(v))
    }

    pub fn elements(&self) -> &[HFSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &HFSet) -> bool {
        self.0.binary_search(x).is_ok()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|e| e.rank() + 1).max().unwrap_or(0)
    }

    /// The von Neumann numeral `n`.
    pub fn ordinal(n: usize) -> HFSet {
        (0..n).fold(HFSet::empty(), |k, _| k.successor())
    }

    /// `k ∪ {k}`.
    pub fn successor(&self) -> HFSet {
        let mut v = self.0.to_vec();
        v.push(self.clone());
        HFSet::from_vec(v)
    }

    /// Position in the von Neumann sequence, if this is a numeral.
    pub fn as_ordinal(&self) -> Option<usize> {
        let n = self.len();
        (*self == HFSet::ordinal(n)).then_some(n)
    }

    /// Kuratowski pair `{{a},{a,b}}`.
    pub fn pair(a: HFSet, b: HFSet) -> HFSet {
        HFSet::from_vec(vec![HFSet::singleton(a.clone()), HFSet::from_vec(vec![a, b])])
    }

    pub fn as_pair(&self) -> Option<(HFSet, HFSet)> {
        match self.elements() {
            [x] if x.len() == 1 => Some((x.0[0].clone(), x.0[0].clone())),
            [x, y] => {
                let (single, double) = if x.len() == 1 { (x, y) } else { (y, x) };
                if single.len() != 1 || double.len() != 2 {
                    return None;
                }
                let a = &single.0[0];
                if !double.contains(a) {
                    return None;
                }
                let b = double.elements().iter().find(|e| *e != a)?;
                Some((a.clone(), b.clone()))
            }
            _ => None,
        }
    }

    /// Function application on a graph; `None` outside the domain.
    pub fn apply(&self, x: &HFSet) -> Option<HFSet> {
        self.elements().iter().filter_map(|p| p.as_pair()).find(|(a, _)| a == x).map(|(_, b)| b)
    }

    /// Domain of a graph, if this is a functional relation.
    pub fn graph_domain(&self) -> Option<Vec<HFSet>> {
        let mut dom = Vec::with_capacity(self.len());
        for p in self.elements() {
            let (a, _) = p.as_pair()?;
            dom.push(a);
        }
        let n = dom.len();
        dom.sort();
        dom.dedup();
        (dom.len() == n).then_some(dom)
    }
}

impl fmt::Debug for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        if *self == HFSet::unit() {
            return f.write_str("𝕀");
        }
        if let Some(n) = self.as_ordinal() {
            return write!(f, "{n}");
        }
        if let Some((a, b)) = self.as_pair() {
            return write!(f, "({a}, {b})");
        }
        f.write_str("{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("not finitely modelable: {0}")]
    NotFinitelyModelable(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("model violation: {0}")]
    ModelViolation(String),
}

pub type ModelResult<T> = Result<T, ModelError>;

fn nfm<T>(why: impl Into<String>) -> ModelResult<T> {
    Err(ModelError::NotFinitelyModelable(why.into()))
}

fn undefined<T>(why: impl Into<String>) -> ModelResult<T> {
    Err(ModelError::Undefined(why.into()))
}

#[derive(Clone, Copy, Debug)]
pub struct ModelConfig {
    /// `Type(i)` holds the sets of rank at most `rank + i`.
    pub rank: usize,
    /// `nat` is modelled by the numerals below this bound.
    pub nat_bound: usize,
    /// Largest carrier that may be enumerated.
    pub max_carrier: usize,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            rank: 3,
            nat_bound: 3,
            max_carrier: 1 << 12,
        }
    }
}

/// Values of the context variables; index 0 is the innermost.
pub type Valuation = Vec<HFSet>;

fn lookup(env: &Valuation, i: usize) -> ModelResult<HFSet> {
    match env.len().checked_sub(i + 1) {
        Some(k) => Ok(env[k].clone()),
        None => undefined(format!("no value for variable #{i}")),
    }
}

fn extended(env: &Valuation, v: HFSet) -> Valuation {
    let mut e = env.clone();
    e.push(v);
    e
}

pub struct Model<'s> {
    pub sig: &'s Signature,
    pub config: ModelConfig,
    tc: TypeChecker<'s>,
    defs: RefCell<HashMap<Name, ModelResult<HFSet>>>,
}

impl<'s> Model<'s> {
    pub fn new(sig: &'s Signature, config: ModelConfig) -> Model<'s> {
        Model {
            sig,
            config,
            tc: TypeChecker::new(sig, Mode::base(), 100_000),
            defs: RefCell::new(HashMap::new()),
        }
    }

    /// `|Γ ⊢ t|_I`.
    pub fn interp(&self, ctx: &Context, t: &Term, env: &Valuation) -> ModelResult<HFSet> {
        if tag(t, Mode::base()) == Tag::Star {
            return Ok(HFSet::empty());
        }
        match t {
            Term::Var(i, _) => lookup(env, *i),
            Term::Sort(Sort::Prop) => Ok(HFSet::from_vec(vec![HFSet::empty(), HFSet::unit()])),
            Term::Sort(Sort::Type(_)) => nfm("a universe is used as a carrier"),
            Term::Lam(b, a, body) => {
                let dom = self.carrier(ctx, a, env)?;
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                let mut graph = Vec::with_capacity(dom.len());
                for alpha in dom.elements() {
                    let v = self.interp(&ctx2, body, &extended(env, alpha.clone()))?;
                    graph.push(HFSet::pair(alpha.clone(), v));
                }
                Ok(HFSet::from_vec(graph))
            }
            Term::Pi(b, a, body) => {
                let dom = self.carrier(ctx, a, env)?;
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                if self.is_prop(&ctx2, body) {
                    let mut acc: Option<HFSet> = None;
                    for alpha in dom.elements() {
                        let s = self.interp(&ctx2, body, &extended(env, alpha.clone()))?;
                        acc = Some(match acc {
                            None => s,
                            Some(prev) => intersect(&prev, &s),
                        });
                    }
                    Ok(acc.unwrap_or_else(HFSet::unit))
                } else {
                    let mut fibers = Vec::with_capacity(dom.len());
                    for alpha in dom.elements() {
                        let s = self.carrier(&ctx2, body, &extended(env, alpha.clone()))?;
                        fibers.push((alpha.clone(), s));
                    }
                    self.function_space(&fibers)
                }
            }
            Term::Sigma(_, b, a, body) => {
                let dom = self.carrier(ctx, a, env)?;
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                let mut out = Vec::new();
                for alpha in dom.elements() {
                    let s = self.carrier(&ctx2, body, &extended(env, alpha.clone()))?;
                    for beta in s.elements() {
                        out.push(HFSet::pair(alpha.clone(), beta.clone()));
                    }
                    if out.len() > self.config.max_carrier {
                        return nfm("Σ-type too large");
                    }
                }
                Ok(HFSet::from_vec(out))
            }
            Term::Pair(_, a, b) => Ok(HFSet::pair(self.interp(ctx, a, env)?, self.interp(ctx, b, env)?)),
            Term::Proj1(_, p) | Term::Proj2(_, p) => {
                let v = self.interp(ctx, p, env)?;
                match v.as_pair() {
                    Some((a, b)) => Ok(if matches!(t, Term::Proj1(..)) { a } else { b }),
                    None => undefined("projection of a non-pair"),
                }
            }
            Term::App(..) => {
                let (head, args) = t.spine();
                let args: Vec<Term> = args.into_iter().cloned().collect();
                self.apply_term(ctx, head, env, &args, ctx, env)
            }
            Term::Const(name, _) => self.constant(name),
            Term::EqRec(_) | Term::Rec(..) => nfm("partially applied eliminator"),
            Term::Eps => Ok(HFSet::empty()),
        }
    }

    /// Interpretation of a type used as a domain.
    fn carrier(&self, ctx: &Context, a: &Term, env: &Valuation) -> ModelResult<HFSet> {
        let s = self.interp(ctx, a, env)?;
        if s.len() > self.config.max_carrier {
            return nfm("carrier too large");
        }
        Ok(s)
    }

    fn is_prop(&self, ctx: &Context, body: &Term) -> bool {
        self.tc.sort_unchecked(ctx, body) == Some(Sort::Prop)
    }

    fn function_space(&self, fibers: &[(HFSet, HFSet)]) -> ModelResult<HFSet> {
        let mut size: usize = 1;
        for (_, s) in fibers {
            size = size.saturating_mul(s.len());
            if size > self.config.max_carrier {
                return nfm("function space too large");
            }
        }
        let mut graphs: Vec<Vec<HFSet>> = vec![Vec::new()];
        for (alpha, s) in fibers {
            let mut next = Vec::with_capacity(graphs.len() * s.len());
            for g in &graphs {
                for beta in s.elements() {
                    let mut g2 = g.clone();
                    g2.push(HFSet::pair(alpha.clone(), beta.clone()));
                    next.push(g2);
                }
            }
            graphs = next;
        }
        Ok(HFSet::from_vec(graphs.into_iter().map(HFSet::from_vec).collect()))
    }

    fn constant(&self, name: &Name) -> ModelResult<HFSet> {
        let n = self.config.nat_bound;
        match &**name {
            NAT => return Ok(HFSet::from_vec((0..n).map(HFSet::ordinal).collect())),
            BOOL => return Ok(HFSet::from_vec(vec![HFSet::empty(), HFSet::unit()])),
            ZERO | FALSE => return Ok(HFSet::empty()),
            TRUE => return Ok(HFSet::unit()),
            SUCC => return nfm("successor is partial on the truncated naturals"),
            _ => {}
        }
        if let Some(v) = self.defs.borrow().get(name) {
            return v.clone();
        }
        let v = match self.sig.get(name).map(|d| &d.kind) {
            Some(DeclKind::Def { body, .. }) => self.interp(&Context::new(), body, &Vec::new()),
            Some(_) => nfm(format!("{name} has no interpretation")),
            None => undefined(format!("unknown constant {name}")),
        };
        self.defs.borrow_mut().insert(name.clone(), v.clone());
        v
    }

    /// `|head|` applied to `args`, where the head lives in `(hctx, henv)` and
    /// the arguments in `(actx, aenv)`. Applied abstractions and eliminators
    /// are evaluated without building their graphs.
    fn apply_term(
        &self,
        hctx: &Context,
        head: &Term,
        henv: &Valuation,
        args: &[Term],
        actx: &Context,
        aenv: &Valuation,
    ) -> ModelResult<HFSet> {
        let vals = |range: std::ops::Range<usize>| -> ModelResult<Vec<HFSet>> {
            args[range].iter().map(|a| self.interp(actx, a, aenv)).collect()
        };
        match head {
            Term::EqRec(_) if args.len() >= 6 => {
                let rest = vals(6..args.len())?;
                let p = self.interp(actx, &args[4], aenv)?;
                self.apply_values(p, &rest)
            }
            Term::Rec(name, ElimKind::Rec, _) => {
                let Some(arity) = self.sig.eliminator_arity(name) else {
                    return undefined(format!("unknown eliminator {name}"));
                };
                if args.len() < arity {
                    return nfm("partially applied eliminator");
                }
                let rest = vals(arity..args.len())?;
                let scrut = self.interp(actx, &args[arity - 1], aenv)?;
                let v = match &**name {
                    NAT => {
                        let Some(k) = scrut.as_ordinal() else {
                            return undefined("recursion on a non-numeral");
                        };
                        let mut r = self.interp(actx, &args[1], aenv)?;
                        for j in 0..k {
                            r = self.apply_with(actx, &args[2], aenv, &[HFSet::ordinal(j), r])?;
                        }
                        r
                    }
                    BOOL => {
                        if scrut == HFSet::unit() {
                            self.interp(actx, &args[1], aenv)?
                        } else if scrut.is_empty() {
                            self.interp(actx, &args[2], aenv)?
                        } else {
                            return undefined("case analysis on a non-boolean");
                        }
                    }
                    _ => {
                        let m = self.sig.propdata(name).map_or(0, |p| p.args.len());
                        self.apply_with(actx, &args[1], aenv, &vec![HFSet::empty(); m])?
                    }
                };
                self.apply_values(v, &rest)
            }
            Term::Const(c, _) if &**c == SUCC && !args.is_empty() => {
                let k = self.interp(actx, &args[0], aenv)?;
                let Some(n) = k.as_ordinal() else {
                    return undefined("successor of a non-numeral");
                };
                if n + 1 >= self.config.nat_bound {
                    return nfm(format!("numeral {} exceeds the nat bound", n + 1));
                }
                self.apply_values(k.successor(), &vals(1..args.len())?)
            }
            Term::Const(c, _) if !args.is_empty() => match self.sig.def_body(c, None) {
                Some(body) => self.apply_term(&Context::new(), body, &Vec::new(), args, actx, aenv),
                None => {
                    let f = self.constant(c)?;
                    self.apply_values(f, &vals(0..args.len())?)
                }
            },
            Term::Lam(b, a, body) if !args.is_empty() => {
                let v = self.interp(actx, &args[0], aenv)?;
                if !self.member(hctx, &v, a, henv)? {
                    return undefined("argument outside the domain");
                }
                let ctx2 = hctx.extended(&b.name, b.tag, (**a).clone());
                let env2 = extended(henv, v);
                let rest = &args[1..];
                if rest.is_empty() {
                    return self.interp(&ctx2, body, &env2);
                }
                // The body becomes the head; remaining arguments stay put.
                let (h2, a2) = body.spine();
                if a2.is_empty() && matches!(h2, Term::Lam(..)) {
                    return self.apply_term(&ctx2, h2, &env2, rest, actx, aenv);
                }
                let f = self.interp(&ctx2, body, &env2)?;
                self.apply_values(f, &vals(1..args.len())?)
            }
            _ => {
                let f = self.interp(hctx, head, henv)?;
                self.apply_values(f, &vals(0..args.len())?)
            }
        }
    }

    /// Applies the term `f` (in `ctx`, `env`) to already computed values.
    fn apply_with(&self, ctx: &Context, f: &Term, env: &Valuation, vals: &[HFSet]) -> ModelResult<HFSet> {
        if vals.is_empty() {
            return self.interp(ctx, f, env);
        }
        if let Term::Lam(b, a, body) = f {
            if !self.member(ctx, &vals[0], a, env)? {
                return undefined("argument outside the domain");
            }
            let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
            return self.apply_with(&ctx2, body, &extended(env, vals[0].clone()), &vals[1..]);
        }
        let g = self.interp(ctx, f, env)?;
        self.apply_values(g, vals)
    }

    fn apply_values(&self, mut f: HFSet, vals: &[HFSet]) -> ModelResult<HFSet> {
        for v in vals {
            f = match f.apply(v) {
                Some(r) => r,
                None => return undefined("application outside the domain of a function"),
            };
        }
        Ok(f)
    }

    /// `v ∈ |Γ ⊢ T|_I`, without enumerating function spaces or universes.
    pub fn member(&self, ctx: &Context, v: &HFSet, ty: &Term, env: &Valuation) -> ModelResult<bool> {
        let r = Reducer::new(self.sig, Mode::base());
        let w = r
            .whnf(ty, &mut Fuel::new(100_000), false)
            .map_err(|_| ModelError::NotFinitelyModelable("type does not reduce within fuel".into()))?;
        match &w {
            Term::Sort(Sort::Type(i)) => {
                if v.rank() <= self.config.rank + i.0 as usize {
                    Ok(true)
                } else {
                    nfm(format!("set of rank {} exceeds the truncated universe", v.rank()))
                }
            }
            Term::Sort(Sort::Prop) => Ok(v.is_empty() || *v == HFSet::unit()),
            Term::Pi(b, a, body) => {
                let dom = self.carrier(ctx, a, env)?;
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                if self.is_prop(&ctx2, body) {
                    for alpha in dom.elements() {
                        if !self.member(&ctx2, v, body, &extended(env, alpha.clone()))? {
                            return Ok(false);
                        }
                    }
                    Ok(!dom.is_empty() || v.is_empty())
                } else {
                    let Some(gdom) = v.graph_domain() else {
                        return Ok(false);
                    };
                    if gdom.as_slice() != dom.elements() {
                        return Ok(false);
                    }
                    for alpha in dom.elements() {
                        let beta = v.apply(alpha).expect("in domain");
                        if !self.member(&ctx2, &beta, body, &extended(env, alpha.clone()))? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
            }
            Term::Sigma(_, b, a, body) => {
                let Some((x, y)) = v.as_pair() else {
                    return Ok(false);
                };
                if !self.member(ctx, &x, a, env)? {
                    return Ok(false);
                }
                let ctx2 = ctx.extended(&b.name, b.tag, (**a).clone());
                self.member(&ctx2, &y, body, &extended(env, x))
            }
            _ => Ok(self.interp(ctx, &w, env)?.contains(v)),
        }
    }

    /// `|Γ ⊢ t|_I ∈ |Γ ⊢ T|_I`.
    pub fn check_model(&self, ctx: &Context, t: &Term, ty: &Term, env: &Valuation) -> ModelResult<()> {
        let v = self.interp(ctx, t, env)?;
        if self.member(ctx, &v, ty, env)? {
            Ok(())
        } else {
            Err(ModelError::ModelViolation(format!("{v} is not in the interpretation of the type")))
        }
    }

    /// A valuation satisfying the context, choosing the least element of
    /// each carrier; `None` if some carrier is empty.
    pub fn some_valuation(&self, ctx: &Context) -> ModelResult<Option<Valuation>> {
        let mut env = Vec::new();
        let mut prefix = Context::new();
        for e in ctx.entries() {
            let s = self.carrier(&prefix, &e.ty, &env)?;
            match s.elements().first() {
                Some(x) => env.push(x.clone()),
                None => return Ok(None),
            }
            prefix.push(&e.name, e.tag, e.ty.clone());
        }
        Ok(Some(env))
    }
}

fn intersect(a: &HFSet, b: &HFSet) -> HFSet {
    HFSet::from_vec(a.elements().iter().filter(|x| b.contains(x)).cloned().collect())
}
