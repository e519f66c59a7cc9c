//! Reduction: tags, ε-extraction, tag-guarded β with ι/δ/eqrec rules, η,
//! weak-head and full normalization.

use std::fmt;
use std::sync::Arc;

use crate::signature::{Signature, BOOL, FALSE, NAT, SUCC, TRUE, ZERO};
use crate::term::*;

/// Reduction flags.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Mode {
    /// Singleton simplification: `⟨a,p⟩_{Σ*} ▷ε a` and `π₁*(c) ▷ε c`.
    pub singleton: bool,
    /// Generalized η in conversion and normalization.
    pub eta: bool,
}

impl Mode {
    pub fn base() -> Mode {
        Mode::default()
    }

    pub fn singleton() -> Mode {
        Mode {
            singleton: true,
            eta: false,
        }
    }

    pub fn with_eta(self) -> Mode {
        Mode { eta: true, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("fuel exhausted")]
pub struct FuelExhausted;

/// Step budget shared by mutually recursive reduction and conversion.
#[derive(Clone, Debug)]
pub struct Fuel {
    left: u64,
}

impl Fuel {
    pub fn new(steps: u64) -> Fuel {
        Fuel { left: steps }
    }

    pub fn remaining(&self) -> u64 {
        self.left
    }

    pub fn tick(&mut self) -> Result<(), FuelExhausted> {
        if self.left == 0 {
            return Err(FuelExhausted);
        }
        self.left -= 1;
        Ok(())
    }
}

/// Normalization ran out of fuel; `partial` is the last term reached.
#[derive(Clone, Debug, thiserror::Error)]
pub struct Exhausted {
    pub partial: Term,
}

impl fmt::Display for Exhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("fuel exhausted before reaching a normal form")
    }
}

/// Syntactic tag: `Star` iff the term ε-reduces to `ε`.
pub fn tag(t: &Term, mode: Mode) -> Tag {
    match t {
        Term::Var(_, s) | Term::Const(_, s) | Term::Proj2(s, _) => *s,
        Term::Lam(_, _, body) => tag(body, mode),
        Term::App(f, _) => tag(f, mode),
        Term::Proj1(Tag::Star, c) if mode.singleton => tag(c, mode),
        Term::Pair(ann, a, _) if mode.singleton && is_star_sigma(ann) => tag(a, mode),
        Term::Rec(_, ElimKind::Ind, _) | Term::Eps => Tag::Star,
        Term::Sort(_)
        | Term::Pi(..)
        | Term::Sigma(..)
        | Term::Pair(..)
        | Term::Proj1(..)
        | Term::EqRec(_)
        | Term::Rec(_, ElimKind::Rec, _) => Tag::Diamond,
    }
}

fn is_star_sigma(t: &Term) -> bool {
    matches!(t, Term::Sigma(Tag::Star, ..))
}

/// The ε-normal form ("pre-cooked" term).
pub fn eps_normalize(t: &Term, mode: Mode) -> Term {
    match t {
        Term::Var(_, Tag::Star) | Term::Const(_, Tag::Star) | Term::Rec(_, ElimKind::Ind, _) => Term::Eps,
        Term::Lam(b, a, body) => match eps_normalize(body, mode) {
            Term::Eps => Term::Eps,
            body => Term::Lam(b.clone(), Arc::new(eps_normalize(a, mode)), Arc::new(body)),
        },
        Term::App(f, a) => match eps_normalize(f, mode) {
            Term::Eps => Term::Eps,
            f => Term::App(Arc::new(f), Arc::new(eps_normalize(a, mode))),
        },
        Term::Proj2(Tag::Star, _) => Term::Eps,
        Term::Proj2(s, c) => Term::Proj2(*s, Arc::new(eps_normalize(c, mode))),
        Term::Proj1(s, c) => {
            let c = eps_normalize(c, mode);
            if mode.singleton && *s == Tag::Star {
                c
            } else {
                Term::Proj1(*s, Arc::new(c))
            }
        }
        Term::Pair(ann, a, b) => {
            if mode.singleton && is_star_sigma(ann) {
                eps_normalize(a, mode)
            } else {
                Term::Pair(
                    Arc::new(eps_normalize(ann, mode)),
                    Arc::new(eps_normalize(a, mode)),
                    Arc::new(eps_normalize(b, mode)),
                )
            }
        }
        Term::Pi(b, a, c) => Term::Pi(b.clone(), Arc::new(eps_normalize(a, mode)), Arc::new(eps_normalize(c, mode))),
        Term::Sigma(s, b, a, c) => Term::Sigma(
            *s,
            b.clone(),
            Arc::new(eps_normalize(a, mode)),
            Arc::new(eps_normalize(c, mode)),
        ),
        Term::Sort(_) | Term::Var(..) | Term::Eps | Term::Const(..) | Term::EqRec(_) | Term::Rec(..) => t.clone(),
    }
}

/// Contracts an ε-redex at the root.
pub fn eps_contract(t: &Term, mode: Mode) -> Option<Term> {
    match t {
        Term::Var(_, Tag::Star) | Term::Const(_, Tag::Star) | Term::Rec(_, ElimKind::Ind, _) => Some(Term::Eps),
        Term::Lam(_, _, body) if **body == Term::Eps => Some(Term::Eps),
        Term::App(f, _) if **f == Term::Eps => Some(Term::Eps),
        Term::Proj2(Tag::Star, _) => Some(Term::Eps),
        Term::Proj1(Tag::Star, c) if mode.singleton => Some((**c).clone()),
        Term::Pair(ann, a, _) if mode.singleton && is_star_sigma(ann) => Some((**a).clone()),
        _ => None,
    }
}

/// One leftmost-outermost ε-step.
pub fn eps_step(t: &Term, mode: Mode) -> Option<Term> {
    let r: Result<Option<Term>, std::convert::Infallible> = leftmost(t, &mut |s| Ok(eps_contract(s, mode)));
    r.unwrap_or_else(|e| match e {})
}

/// Every one-step ε-reduct.
pub fn eps_reducts(t: &Term, mode: Mode) -> Vec<Term> {
    let r: Result<Vec<Term>, std::convert::Infallible> = all_positions(t, &mut |s| Ok(eps_contract(s, mode)));
    r.unwrap_or_else(|e| match e {})
}

/// Contracts an η-redex at the root.
///
/// Besides `λx:A.(t x) ▷ t` and `⟨π₁(t),π₂(t)⟩ ▷ t`, the pre-cooked form
/// `⟨π₁(t),ε⟩_{Σ*}` (where `π₂*(t)` was already erased) is also contracted.
pub fn eta_contract(t: &Term) -> Option<Term> {
    match t {
        Term::Lam(b, _, body) => match &**body {
            Term::App(f, x) if **x == Term::Var(0, b.tag) && !f.has_free(0) => Some(f.shift(-1)),
            _ => None,
        },
        Term::Pair(ann, a, b) => match (&**a, &**b) {
            (Term::Proj1(_, c1), Term::Proj2(_, c2)) if c1 == c2 => Some((**c1).clone()),
            (Term::Proj1(_, c1), Term::Eps) if is_star_sigma(ann) => Some((**c1).clone()),
            _ => None,
        },
        _ => None,
    }
}

/// One leftmost-outermost η-step.
pub fn eta_step(t: &Term) -> Option<Term> {
    let r: Result<Option<Term>, std::convert::Infallible> = leftmost(t, &mut |s| Ok(eta_contract(s)));
    r.unwrap_or_else(|e| match e {})
}

/// Rebuilds `t` with its `i`-th child (in [`Term::children`] order) replaced.
pub fn replace_child(t: &Term, i: usize, c: Term) -> Term {
    let c = Arc::new(c);
    match (t, i) {
        (Term::Lam(b, _, x), 0) => Term::Lam(b.clone(), c, x.clone()),
        (Term::Lam(b, a, _), 1) => Term::Lam(b.clone(), a.clone(), c),
        (Term::Pi(b, _, x), 0) => Term::Pi(b.clone(), c, x.clone()),
        (Term::Pi(b, a, _), 1) => Term::Pi(b.clone(), a.clone(), c),
        (Term::Sigma(s, b, _, x), 0) => Term::Sigma(*s, b.clone(), c, x.clone()),
        (Term::Sigma(s, b, a, _), 1) => Term::Sigma(*s, b.clone(), a.clone(), c),
        (Term::App(_, a), 0) => Term::App(c, a.clone()),
        (Term::App(f, _), 1) => Term::App(f.clone(), c),
        (Term::Pair(_, a, b), 0) => Term::Pair(c, a.clone(), b.clone()),
        (Term::Pair(n, _, b), 1) => Term::Pair(n.clone(), c, b.clone()),
        (Term::Pair(n, a, _), 2) => Term::Pair(n.clone(), a.clone(), c),
        (Term::Proj1(s, _), 0) => Term::Proj1(*s, c),
        (Term::Proj2(s, _), 0) => Term::Proj2(*s, c),
        _ => panic!("replace_child: no child {i}"),
    }
}

/// Applies `contract` at the leftmost-outermost position where it fires.
pub fn leftmost<E, F>(t: &Term, contract: &mut F) -> Result<Option<Term>, E>
where
    F: FnMut(&Term) -> Result<Option<Term>, E>,
{
    if let Some(r) = contract(t)? {
        return Ok(Some(r));
    }
    for (i, c) in t.children().enumerate() {
        if let Some(r) = leftmost(c, contract)? {
            return Ok(Some(replace_child(t, i, r)));
        }
    }
    Ok(None)
}

/// Applies `contract` at every position, collecting all one-step results.
pub fn all_positions<E, F>(t: &Term, contract: &mut F) -> Result<Vec<Term>, E>
where
    F: FnMut(&Term) -> Result<Option<Term>, E>,
{
    let mut out = Vec::new();
    if let Some(r) = contract(t)? {
        out.push(r);
    }
    for (i, c) in t.children().enumerate() {
        for r in all_positions(c, contract)? {
            out.push(replace_child(t, i, r));
        }
    }
    Ok(out)
}

/// Reduction relative to a signature (for δ and the eliminators).
#[derive(Clone, Copy)]
pub struct Reducer<'s> {
    pub sig: &'s Signature,
    pub mode: Mode,
}

impl<'s> Reducer<'s> {
    pub fn new(sig: &'s Signature, mode: Mode) -> Reducer<'s> {
        Reducer { sig, mode }
    }

    pub fn tag(&self, t: &Term) -> Tag {
        tag(t, self.mode)
    }

    pub fn cook(&self, t: &Term) -> Term {
        eps_normalize(t, self.mode)
    }

    /// Contracts a β, projection, ι, eqrec or δ redex at the root.
    pub fn beta_contract(&self, t: &Term, fuel: &mut Fuel) -> Result<Option<Term>, FuelExhausted> {
        match t {
            Term::App(f, a) => {
                if let Term::Lam(b, _, body) = &**f {
                    return Ok((self.tag(a) == b.tag).then(|| body.instantiate(a)));
                }
            }
            Term::Proj1(_, p) => {
                if let Term::Pair(_, a, _) = &**p {
                    return Ok((self.tag(a) == Tag::Diamond).then(|| (**a).clone()));
                }
                return Ok(None);
            }
            Term::Proj2(s, p) => {
                if let Term::Pair(_, _, b) = &**p {
                    return Ok((self.tag(b) == *s).then(|| (**b).clone()));
                }
                return Ok(None);
            }
            Term::Const(name, _) => return Ok(self.sig.def_body(name, None).cloned()),
            _ => return Ok(None),
        }
        let (head, args) = t.spine();
        match self.arity(head) {
            Some(n) if n == args.len() => {
                let args: Vec<Term> = args.into_iter().cloned().collect();
                self.iota(head, &args, fuel)
            }
            _ => Ok(None),
        }
    }

    fn arity(&self, head: &Term) -> Option<usize> {
        match head {
            Term::EqRec(_) => Some(6),
            Term::Rec(name, _, _) => self.sig.eliminator_arity(name),
            _ => None,
        }
    }

    /// Computation rule for an eliminator applied to exactly its arity.
    fn iota(&self, head: &Term, args: &[Term], fuel: &mut Fuel) -> Result<Option<Term>, FuelExhausted> {
        match head {
            Term::EqRec(_) => {
                if self.convert(&args[2], &args[3], fuel)? {
                    Ok(Some(args[4].clone()))
                } else {
                    Ok(None)
                }
            }
            Term::Rec(name, kind, level) if &**name == NAT => {
                let scrut = &args[3];
                if let Term::Const(c, _) = scrut {
                    if &**c == ZERO {
                        return Ok(Some(args[1].clone()));
                    }
                }
                if let Term::App(f, m) = scrut {
                    if matches!(&**f, Term::Const(c, _) if &**c == SUCC) {
                        let rec = apps(
                            Term::Rec(name.clone(), *kind, *level),
                            [args[0].clone(), args[1].clone(), args[2].clone(), (**m).clone()],
                        );
                        return Ok(Some(apps(args[2].clone(), [(**m).clone(), rec])));
                    }
                }
                Ok(None)
            }
            Term::Rec(name, _, _) if &**name == BOOL => match &args[3] {
                Term::Const(c, _) if &**c == TRUE => Ok(Some(args[1].clone())),
                Term::Const(c, _) if &**c == FALSE => Ok(Some(args[2].clone())),
                _ => Ok(None),
            },
            Term::Rec(name, kind, _) => {
                let Some(info) = self.sig.propdata(name) else {
                    return Ok(None);
                };
                let n = info.indices.len();
                match kind {
                    ElimKind::Ind => {
                        let (h, cargs) = args[n + 2].spine();
                        match h {
                            Term::Const(c, _) if *c == info.ctor && cargs.len() == info.args.len() => {
                                Ok(Some(apps(args[1].clone(), cargs.into_iter().cloned())))
                            }
                            _ => Ok(None),
                        }
                    }
                    ElimKind::Rec => {
                        let m = info.args.len();
                        for (k, u) in info.result.iter().enumerate() {
                            let erased = (0..m).fold(u.clone(), |acc, _| acc.instantiate(&Term::Eps));
                            if !self.convert(&erased, &args[2 + k], fuel)? {
                                return Ok(None);
                            }
                        }
                        Ok(Some(apps(args[1].clone(), (0..m).map(|_| Term::Eps))))
                    }
                }
            }
            _ => Ok(None),
        }
    }

    /// One leftmost-outermost β (ι, δ, eqrec) step.
    pub fn beta_step(&self, t: &Term, fuel: &mut Fuel) -> Result<Option<Term>, FuelExhausted> {
        leftmost(t, &mut |s| self.beta_contract(s, fuel))
    }

    /// Every one-step β (ι, δ, eqrec) reduct.
    pub fn beta_reducts(&self, t: &Term, fuel: &mut Fuel) -> Result<Vec<Term>, FuelExhausted> {
        all_positions(t, &mut |s| self.beta_contract(s, fuel))
    }

    /// One leftmost-outermost step of the combined relation (ε before β at
    /// each position, then η when enabled).
    pub fn step(&self, t: &Term, fuel: &mut Fuel) -> Result<Option<Term>, FuelExhausted> {
        leftmost(t, &mut |s| {
            if let Some(r) = eps_contract(s, self.mode) {
                return Ok(Some(r));
            }
            if let Some(r) = self.beta_contract(s, fuel)? {
                return Ok(Some(r));
            }
            Ok(if self.mode.eta { eta_contract(s) } else { None })
        })
    }

    /// βε(ι,δ)-normal form by leftmost-outermost reduction, plus η when the
    /// mode enables it. Every step costs one unit of fuel.
    pub fn normalize(&self, t: &Term, fuel: &mut Fuel) -> Result<Term, Exhausted> {
        let mut cur = t.clone();
        loop {
            if fuel.tick().is_err() {
                return Err(Exhausted { partial: cur });
            }
            match self.step(&cur, fuel) {
                Ok(Some(next)) => cur = next,
                Ok(None) => return Ok(cur),
                Err(FuelExhausted) => return Err(Exhausted { partial: cur }),
            }
        }
    }

    /// Weak-head normal form.
    ///
    /// With `cooked` set the input must be ε-normal; δ then unfolds to
    /// pre-cooked bodies and `*`-tagged terms collapse to `ε` directly.
    pub fn whnf(&self, t: &Term, fuel: &mut Fuel, cooked: bool) -> Result<Term, FuelExhausted> {
        let mut cur = t.clone();
        loop {
            if cooked && self.tag(&cur) == Tag::Star {
                return Ok(Term::Eps);
            }
            let (head, args) = cur.spine();
            let next = match head {
                Term::Lam(b, _, body) if !args.is_empty() => {
                    if self.tag(args[0]) != b.tag {
                        return Ok(cur);
                    }
                    Some(apps(body.instantiate(args[0]), args[1..].iter().map(|a| (*a).clone())))
                }
                Term::Const(name, _) => {
                    let mode = cooked.then_some(self.mode);
                    match self.sig.def_body(name, mode) {
                        Some(body) => Some(apps(body.clone(), args.iter().map(|a| (*a).clone()))),
                        None => return Ok(cur),
                    }
                }
                Term::Proj1(s, p) | Term::Proj2(s, p) => {
                    let first = matches!(head, Term::Proj1(..));
                    let p = self.whnf(p, fuel, cooked)?;
                    let rest = args.iter().map(|a| (*a).clone());
                    match &p {
                        Term::Pair(_, a, b) => {
                            let fires = if first {
                                self.tag(a) == Tag::Diamond
                            } else {
                                self.tag(b) == *s
                            };
                            if fires {
                                Some(apps(if first { (**a).clone() } else { (**b).clone() }, rest))
                            } else {
                                let h = if first { proj1(*s, p.clone()) } else { proj2(*s, p.clone()) };
                                return Ok(apps(h, rest));
                            }
                        }
                        _ => {
                            let h = if first { proj1(*s, p.clone()) } else { proj2(*s, p.clone()) };
                            return Ok(apps(h, rest));
                        }
                    }
                }
                Term::EqRec(_) | Term::Rec(..) => {
                    let Some(n) = self.arity(head) else {
                        return Ok(cur);
                    };
                    if args.len() < n {
                        return Ok(cur);
                    }
                    let mut own: Vec<Term> = args[..n].iter().map(|a| (*a).clone()).collect();
                    if !matches!(head, Term::EqRec(_)) {
                        own[n - 1] = self.whnf(&own[n - 1], fuel, cooked)?;
                    }
                    let rest: Vec<Term> = args[n..].iter().map(|a| (*a).clone()).collect();
                    match self.iota(head, &own, fuel)? {
                        Some(r) => Some(apps(r, rest)),
                        None => return Ok(apps(apps(head.clone(), own), rest)),
                    }
                }
                _ => return Ok(cur),
            };
            fuel.tick()?;
            cur = next.expect("reduct");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{self, numeral, succ, zero};
    use Tag::*;

    fn sig() -> Signature {
        Signature::new()
    }

    /// `λA:Type(0).λx:A.λP:A→Prop.λp:(P x).p`
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
    fn tag_of_proof_variable_and_projection() {
        assert_eq!(tag(&var(0, Star), Mode::base()), Star);
        assert_eq!(tag(&proj2(Star, var(0, Diamond)), Mode::base()), Star);
        assert_eq!(tag(&refl_term(), Mode::base()), Star);
    }

    #[test]
    fn eps_normalize_collapses_proof_lambda() {
        let t = lam("p", Star, constant("P", Diamond), var(0, Star));
        assert_eq!(eps_normalize(&t, Mode::base()), Term::Eps);
        assert_eq!(eps_normalize(&refl_term(), Mode::base()), Term::Eps);
    }

    #[test]
    fn eps_normalize_leaves_guarded_redex() {
        let t = app(lam("x", Diamond, prop(), var(0, Diamond)), prop());
        assert_eq!(eps_normalize(&t, Mode::base()), t);
    }

    #[test]
    fn singleton_mode_erases_subset_pairs() {
        let ann = sigma(Star, "x", constant("A", Diamond), constant("P", Diamond));
        let t = pair(ann, constant("a", Diamond), constant("p", Star));
        assert_eq!(eps_normalize(&t, Mode::singleton()), constant("a", Diamond));
        assert_ne!(eps_normalize(&t, Mode::base()), constant("a", Diamond));
    }

    #[test]
    fn beta_respects_tag_guard() {
        let s = sig();
        let r = Reducer::new(&s, Mode::base());
        let mut fuel = Fuel::new(10);
        let t = app(lam("x", Diamond, prop(), var(0, Diamond)), prop());
        assert_eq!(r.beta_step(&t, &mut fuel).unwrap(), Some(prop()));
        let blocked = app(lam("x", Diamond, prop(), var(0, Diamond)), constant("h", Star));
        assert_eq!(r.beta_contract(&blocked, &mut fuel).unwrap(), None);
    }

    #[test]
    fn projections_fire_on_pairs() {
        let s = sig();
        let r = Reducer::new(&s, Mode::base());
        let mut fuel = Fuel::new(10);
        let ann = sigma(Diamond, "x", constant("A", Diamond), constant("B", Diamond));
        let p = pair(ann, constant("a", Diamond), constant("b", Diamond));
        assert_eq!(r.beta_step(&proj1(Diamond, p.clone()), &mut fuel).unwrap(), Some(constant("a", Diamond)));
        assert_eq!(r.beta_step(&proj2(Diamond, p.clone()), &mut fuel).unwrap(), Some(constant("b", Diamond)));
        // π₂* on a ◇ component is blocked.
        assert_eq!(r.beta_contract(&proj2(Star, p), &mut fuel).unwrap(), None);
    }

    #[test]
    fn nat_rec_computes() {
        let s = sig();
        let r = Reducer::new(&s, Mode::base());
        // plus m n := nat_rec (λ_.nat) n (λ_ r. S r) m
        let motive = lam("_", Diamond, signature::nat(), signature::nat());
        let step = lam("k", Diamond, signature::nat(), lam("r", Diamond, signature::nat(), succ(var(0, Diamond))));
        let plus = |m: Term, n: Term| apps(Term::Rec("nat".into(), ElimKind::Rec, Universe(0)), [motive.clone(), n, step.clone(), m]);
        let mut fuel = Fuel::new(1000);
        let nf = r.normalize(&plus(numeral(2), numeral(2)), &mut fuel).unwrap();
        assert_eq!(nf, numeral(4));
        let _ = zero();
    }

    #[test]
    fn normalize_refl_application() {
        let s = sig();
        let r = Reducer::new(&s, Mode::base());
        let t = apps(
            refl_term(),
            [signature::nat(), zero(), constant("Q", Diamond), constant("q", Star)],
        );
        let mut fuel = Fuel::new(100);
        // The whole application is a proof and extracts to ε.
        assert_eq!(r.normalize(&t, &mut fuel).unwrap(), Term::Eps);
        // β alone reaches q.
        let mut fuel = Fuel::new(100);
        let mut cur = t;
        for _ in 0..4 {
            cur = r.beta_step(&cur, &mut fuel).unwrap().unwrap();
        }
        assert_eq!(cur, constant("q", Star));
    }

    #[test]
    fn normalize_reports_exhaustion() {
        let s = sig();
        let r = Reducer::new(&s, Mode::base());
        let w = lam("x", Diamond, prop(), app(var(0, Diamond), var(0, Diamond)));
        let omega = app(w.clone(), w);
        let err = r.normalize(&omega, &mut Fuel::new(50)).unwrap_err();
        assert!(err.partial.size() > 0);
    }

    #[test]
    fn eps_application_collapses() {
        let s = sig();
        let r = Reducer::new(&s, Mode::base());
        let t = app(Term::Eps, constant("t", Diamond));
        assert_eq!(r.normalize(&t, &mut Fuel::new(10)).unwrap(), Term::Eps);
    }

    #[test]
    fn eta_examples() {
        let a = constant("A", Diamond);
        let f = constant("f", Diamond);
        let t = lam("x", Diamond, a.clone(), app(f.clone(), var(0, Diamond)));
        assert_eq!(eta_step(&t), Some(f));
        let c = constant("c", Diamond);
        let ann = sigma(Diamond, "x", a.clone(), a.clone());
        let p = pair(ann, proj1(Diamond, c.clone()), proj2(Diamond, c.clone()));
        assert_eq!(eta_step(&p), Some(c));
        let selfapp = lam("x", Diamond, a, app(var(0, Diamond), var(0, Diamond)));
        assert_eq!(eta_step(&selfapp), None);
    }
}
