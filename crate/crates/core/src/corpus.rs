//! Embedded example files, random term generators and TAP output.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::reduce::Mode;
use crate::signature::{bool_ty, ff, nat, numeral, succ, tt, Signature, BOOL, NAT};
use crate::term::*;
use crate::typecheck::TypeChecker;

/// The example files shipped with the crate, in dependency-free order.
pub const FILES: [(&str, &str); 9] = [
    ("prelude.irr", include_str!("../corpus/prelude.irr")),
    ("equality.irr", include_str!("../corpus/equality.irr")),
    ("k_statement.irr", include_str!("../corpus/k_statement.irr")),
    ("dependent_arrays.irr", include_str!("../corpus/dependent_arrays.irr")),
    ("subset_equality.irr", include_str!("../corpus/subset_equality.irr")),
    ("bounded_arrays.irr", include_str!("../corpus/bounded_arrays.irr")),
    ("diaconescu.irr", include_str!("../corpus/diaconescu.irr")),
    ("normalized_types.irr", include_str!("../corpus/normalized_types.irr")),
    ("classical.irr", include_str!("../corpus/classical.irr")),
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

const D: Tag = Tag::Diamond;
const S: Tag = Tag::Star;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn any_tag(r: &mut ChaCha8Rng) -> Tag {
    if r.gen_bool(0.5) {
        S
    } else {
        D
    }
}

/// Raw terms: closed and tag-consistent, but not necessarily typable.
struct Raw {
    r: ChaCha8Rng,
}

impl Raw {
    fn leaf(&mut self, scope: &[Tag]) -> Term {
        let k = self.r.gen_range(0..10);
        match k {
            0..=3 if !scope.is_empty() => {
                let i = self.r.gen_range(0..scope.len());
                var(i, scope[scope.len() - 1 - i])
            }
            4 => Term::Eps,
            5 => constant("c", S),
            6 => constant("d", D),
            7 => prop(),
            8 => Term::Rec(NAT.into(), ElimKind::Ind, Universe(0)),
            _ => constant("e", any_tag(&mut self.r)),
        }
    }

    fn binder(&mut self, scope: &mut Vec<Tag>, size: usize, build: impl FnOnce(Binder, Term, Term) -> Term) -> Term {
        let tag = any_tag(&mut self.r);
        let dom = self.leaf(scope);
        scope.push(tag);
        let body = self.term(scope, size - 2);
        scope.pop();
        build(Binder::new("x", tag), dom, body)
    }

    fn term(&mut self, scope: &mut Vec<Tag>, size: usize) -> Term {
        if size <= 1 {
            return self.leaf(scope);
        }
        if size == 2 {
            let c = self.leaf(scope);
            let s = any_tag(&mut self.r);
            return if self.r.gen_bool(0.5) { proj1(s, c) } else { proj2(s, c) };
        }
        let choice = self.r.gen_range(0..12);
        match choice {
            0 | 1 => self.binder(scope, size, |b, a, x| Term::Lam(b, a.into(), x.into())),
            2 => self.binder(scope, size, |b, a, x| Term::Pi(b, a.into(), x.into())),
            3..=5 if size >= 5 => {
                let arg_size = self.r.gen_range(1..=(size - 4));
                let f = self.binder(scope, size - 1 - arg_size, |b, a, x| Term::Lam(b, a.into(), x.into()));
                let a = self.term(scope, arg_size);
                app(f, a)
            }
            6 | 7 if size >= 6 => {
                let s = any_tag(&mut self.r);
                let ann = sigma(s, "x", self.leaf(scope), self.leaf(&[]));
                let rest = size - 4;
                let k = self.r.gen_range(1..rest);
                let a = self.term(scope, k);
                let b = self.term(scope, rest - k);
                pair(ann, a, b)
            }
            8 => {
                let c = self.term(scope, size - 1);
                let s = any_tag(&mut self.r);
                if self.r.gen_bool(0.5) {
                    proj1(s, c)
                } else {
                    proj2(s, c)
                }
            }
            _ => {
                let k = self.r.gen_range(1..size - 1);
                let f = self.term(scope, k);
                let a = self.term(scope, size - 1 - k);
                app(f, a)
            }
        }
    }
}

/// A closed, tag-consistent raw term of at most `size` nodes, mixing `ε`,
/// starred constants and variables, projections, pairs, and β-redexes whose
/// guard may or may not match.
pub fn gen_raw_term(seed: u64, size: usize) -> Term {
    let mut g = Raw { r: rng(seed) };
    let n = g.r.gen_range(1..=size.max(1));
    let t = g.term(&mut Vec::new(), n);
    debug_assert!(t.is_closed() && t.tags_consistent() && t.size() <= size.max(1));
    t
}

/// Simple types used by the typed generator.
#[derive(Clone, Debug, PartialEq)]
enum Ty {
    Nat,
    Bool,
    /// The abstract type variable `A : Type 0`.
    A,
    /// The proposition variable `P : Prop`.
    P,
    /// `Q n` for a numeral `n`.
    Q(u64),
    /// `Π n:nat. Q n`.
    AllQ,
    /// `{x : nat | Q x}`.
    SubQ,
    Arrow(Box<Ty>, Box<Ty>),
    Prod(Box<Ty>, Box<Ty>),
    Type0,
    PropSort,
}

impl Ty {
    fn tag(&self) -> Tag {
        match self {
            Ty::P | Ty::Q(_) | Ty::AllQ => S,
            Ty::Arrow(_, b) => b.tag(),
            _ => D,
        }
    }
}

const A_LVL: usize = 0;
const LOCAL_A: usize = 1;
const P_LVL: usize = 2;
const LOCAL_P: usize = 3;
const F_LVL: usize = 4;
const Q_LVL: usize = 5;
const LOCAL_Q: usize = 6;

/// Variables in scope, outermost first.
struct Typed {
    r: ChaCha8Rng,
    env: Vec<Ty>,
}

impl Typed {
    fn at(&self, level: usize) -> Term {
        var(self.env.len() - 1 - level, self.env[level].tag())
    }

    fn q(&self, n: Term) -> Term {
        app(self.at(Q_LVL), n)
    }

    fn term_of(&self, ty: &Ty) -> Term {
        match ty {
            Ty::Nat => nat(),
            Ty::Bool => bool_ty(),
            Ty::A => self.at(A_LVL),
            Ty::P => self.at(P_LVL),
            Ty::Q(n) => self.q(numeral(*n)),
            Ty::AllQ => pi("n", D, nat(), app(var(self.env.len() - Q_LVL, D), var(0, D))),
            Ty::SubQ => sigma(S, "x", nat(), app(var(self.env.len() - Q_LVL, D), var(0, D))),
            Ty::Arrow(a, b) => arrow(a.tag(), self.term_of(a), self.term_of(b)),
            Ty::Prod(a, b) => sigma(b.tag(), "_", self.term_of(a), self.term_of(b).shift(1)),
            Ty::Type0 => type_(0),
            Ty::PropSort => prop(),
        }
    }

    fn vars_of(&self, ty: &Ty) -> Vec<usize> {
        (0..self.env.len()).filter(|&l| self.env[l] == *ty).collect()
    }

    fn pick_var(&mut self, ty: &Ty) -> Option<Term> {
        let vs = self.vars_of(ty);
        if vs.is_empty() {
            return None;
        }
        let l = vs[self.r.gen_range(0..vs.len())];
        Some(self.at(l))
    }

    fn under(&mut self, ty: Ty, f: impl FnOnce(&mut Typed) -> Term) -> Term {
        self.env.push(ty);
        let t = f(self);
        self.env.pop();
        t
    }

    /// `(λx:D. body) arg` at type `ty`.
    fn redex(&mut self, ty: &Ty, depth: usize) -> Term {
        let dom = self.small_ty();
        let arg = self.gen(&dom, depth - 1);
        let dom_t = self.term_of(&dom);
        let tag = dom.tag();
        let body = self.under(dom, |g| g.gen(ty, depth - 1));
        app(lam("x", tag, dom_t, body), arg)
    }

    fn small_ty(&mut self) -> Ty {
        match self.r.gen_range(0..6) {
            0 => Ty::Nat,
            1 => Ty::Bool,
            2 => Ty::A,
            3 => Ty::P,
            4 => Ty::Q(self.r.gen_range(0..3)),
            _ => Ty::Arrow(Box::new(Ty::Nat), Box::new(Ty::Nat)),
        }
    }

    fn any_ty(&mut self) -> Ty {
        match self.r.gen_range(0..14) {
            0..=5 => self.small_ty(),
            6 => Ty::AllQ,
            7 => Ty::SubQ,
            8 => Ty::Prod(Box::new(Ty::Nat), Box::new(Ty::Bool)),
            9 => Ty::Arrow(Box::new(Ty::Bool), Box::new(Ty::Nat)),
            10 => Ty::Arrow(Box::new(Ty::P), Box::new(Ty::P)),
            11 => Ty::Type0,
            12 => Ty::PropSort,
            _ => Ty::Arrow(Box::new(Ty::Arrow(Box::new(Ty::Nat), Box::new(Ty::Nat))), Box::new(Ty::Nat)),
        }
    }

    fn gen(&mut self, ty: &Ty, depth: usize) -> Term {
        let leafy = depth == 0 || self.r.gen_bool(0.3);
        if leafy || self.r.gen_bool(0.75) {
            if let Some(v) = self.pick_var(ty).filter(|_| self.r.gen_bool(0.5)) {
                return v;
            }
        }
        if !leafy && self.r.gen_bool(0.2) {
            return self.redex(ty, depth);
        }
        let d = depth.saturating_sub(1);
        match ty {
            Ty::Nat => match if leafy { 0 } else { self.r.gen_range(0..7) } {
                0 => numeral(self.r.gen_range(0..3)),
                1 => succ(self.gen(&Ty::Nat, d)),
                2 => {
                    let f = self.gen(&Ty::Arrow(Box::new(Ty::Nat), Box::new(Ty::Nat)), d);
                    app(f, self.gen(&Ty::Nat, d))
                }
                3 => proj1(D, self.gen(&Ty::Prod(Box::new(Ty::Nat), Box::new(Ty::Bool)), d)),
                4 => proj1(S, self.gen(&Ty::SubQ, d)),
                5 => {
                    let motive = lam("k", D, nat(), nat());
                    let step = lam("k", D, nat(), lam("r", D, nat(), succ(var(0, D))));
                    let z = self.gen(&Ty::Nat, d);
                    let n = self.gen(&Ty::Nat, d);
                    apps(Term::Rec(NAT.into(), ElimKind::Rec, Universe(0)), [motive, z, step, n])
                }
                _ => {
                    let a = self.gen(&Ty::Nat, d);
                    let t = self.gen(&Ty::Nat, d);
                    let motive = lam("y", D, nat(), nat());
                    // λQ:nat→Prop. λp:Q a. p
                    let q_ty = arrow(D, nat(), prop());
                    let refl = lam("Q", D, q_ty, lam("p", S, app(var(0, D), a.shift(1)), var(0, S)));
                    apps(Term::EqRec(Universe(0)), [nat(), motive, a.clone(), a, t, refl])
                }
            },
            Ty::Bool => match if leafy { 0 } else { self.r.gen_range(0..4) } {
                0 => {
                    if self.r.gen_bool(0.5) {
                        tt()
                    } else {
                        ff()
                    }
                }
                1 => proj2(D, self.gen(&Ty::Prod(Box::new(Ty::Nat), Box::new(Ty::Bool)), d)),
                2 => {
                    let motive = lam("y", D, bool_ty(), bool_ty());
                    let (a, b, c) = (self.gen(&Ty::Bool, d), self.gen(&Ty::Bool, d), self.gen(&Ty::Bool, d));
                    apps(Term::Rec(BOOL.into(), ElimKind::Rec, Universe(0)), [motive, a, b, c])
                }
                _ => {
                    let f = self.gen(&Ty::Arrow(Box::new(Ty::Bool), Box::new(Ty::Bool)), d);
                    app(f, self.gen(&Ty::Bool, d))
                }
            },
            Ty::A => {
                if leafy || self.r.gen_bool(0.4) {
                    self.at(LOCAL_A)
                } else {
                    app(self.at(F_LVL), self.gen(&Ty::A, d))
                }
            }
            Ty::P => {
                if leafy || self.r.gen_bool(0.5) {
                    self.at(LOCAL_P)
                } else {
                    let f = self.gen(&Ty::Arrow(Box::new(Ty::P), Box::new(Ty::P)), d);
                    app(f, self.gen(&Ty::P, d))
                }
            }
            Ty::Q(n) => {
                if leafy || self.r.gen_bool(0.5) {
                    app(self.at(LOCAL_Q), numeral(*n))
                } else {
                    let all = self.gen(&Ty::AllQ, d);
                    app(all, numeral(*n))
                }
            }
            Ty::AllQ => {
                if leafy || self.r.gen_bool(0.5) {
                    self.at(LOCAL_Q)
                } else {
                    let q = self.at(LOCAL_Q).shift(1);
                    lam("n", D, nat(), app(q, var(0, D)))
                }
            }
            Ty::SubQ => {
                let n = self.r.gen_range(0..3);
                let ann = self.term_of(ty);
                let proof = self.gen(&Ty::Q(n), d);
                pair(ann, numeral(n), proof)
            }
            Ty::Prod(a, b) => {
                let ann = self.term_of(ty);
                let x = self.gen(a, d);
                let y = self.gen(b, d);
                pair(ann, x, y)
            }
            Ty::Arrow(a, b) => {
                let dom = self.term_of(a);
                let tag = a.tag();
                let body = self.under((**a).clone(), |g| g.gen(b, d));
                lam("x", tag, dom, body)
            }
            Ty::Type0 => {
                let t = self.small_ty();
                if t.tag() == S {
                    nat()
                } else {
                    self.term_of(&t)
                }
            }
            Ty::PropSort => match self.r.gen_range(0..4) {
                0 => self.at(P_LVL),
                1 => {
                    let n = self.r.gen_range(0..3);
                    self.q(numeral(n))
                }
                2 => self.term_of(&Ty::AllQ),
                _ => arrow(S, self.at(P_LVL), self.at(P_LVL)),
            },
        }
    }
}

/// A well-typed term in a random context.
///
/// The context always starts with `A : Type 0, a : A, P : Prop, p : P,
/// f : A → A, Q : nat → Prop, q : Πn:nat. Q n`, followed by `depth` more
/// hypotheses. The result is `(Γ, t, T)` with `Γ ⊢ t : T`, `T` inferred.
pub fn gen_typed_term(seed: u64, depth: usize) -> (Context, Term, Term) {
    let mut g = Typed { r: rng(seed), env: Vec::new() };
    let mut ctx = Context::new();
    let prefix = [
        ("A", Ty::Type0),
        ("a", Ty::A),
        ("P", Ty::PropSort),
        ("p", Ty::P),
        ("f", Ty::Arrow(Box::new(Ty::A), Box::new(Ty::A))),
        ("Q", Ty::Arrow(Box::new(Ty::Nat), Box::new(Ty::PropSort))),
        ("q", Ty::AllQ),
    ];
    for (name, ty) in prefix {
        let t = g.term_of(&ty);
        ctx.push(name, ty.tag(), t);
        g.env.push(ty);
    }
    for i in 0..depth {
        let ty = g.any_ty();
        if matches!(ty, Ty::Type0 | Ty::PropSort) {
            continue;
        }
        ctx.push(&format!("h{i}"), ty.tag(), g.term_of(&ty));
        g.env.push(ty);
    }
    let target = g.any_ty();
    let t = g.gen(&target, 4);
    let sig = Signature::new();
    let tc = TypeChecker::new(&sig, Mode::base(), 100_000);
    let ty = match tc.infer(&ctx, &t) {
        Ok(ty) => ty,
        Err(e) => panic!("generator produced an ill-typed term (seed {seed}): {e}\n{}", crate::frontend::print_term(&t, &ctx.names())),
    };
    tc.check(&ctx, &t, &g.term_of(&target))
        .unwrap_or_else(|e| panic!("generated term misses its target type (seed {seed}): {e}"));
    (ctx, t, ty)
}

/// Greedily replaces `t` by a closed immediate subterm (or a body that does
/// not use its binder) for as long as `fails` still holds.
pub fn shrink(t: &Term, mut fails: impl FnMut(&Term) -> bool) -> Term {
    let mut cur = t.clone();
    'outer: loop {
        let mut candidates: Vec<Term> = cur.children().filter(|c| c.is_closed()).cloned().collect();
        if let Term::Lam(_, _, b) | Term::Pi(_, _, b) | Term::Sigma(_, _, _, b) = &cur {
            if !b.has_free(0) {
                candidates.push(b.shift(-1));
            }
        }
        for c in candidates {
            if fails(&c) {
                cur = c;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Test Anything Protocol output.
#[derive(Default)]
pub struct Tap {
    lines: Vec<String>,
    failed: usize,
}

impl Tap {
    pub fn new() -> Tap {
        Tap::default()
    }

    pub fn record(&mut self, ok: bool, name: &str, detail: &str) {
        let n = self.lines.len() + 1;
        let mut line = format!("{} {n} - {name}", if ok { "ok" } else { "not ok" });
        if !detail.is_empty() {
            let _ = write!(line, " # {detail}");
        }
        if !ok {
            self.failed += 1;
        }
        self.lines.push(line);
    }

    pub fn failed(&self) -> usize {
        self.failed
    }

    pub fn all_ok(&self) -> bool {
        self.failed == 0
    }

    pub fn render(&self) -> String {
        let mut s = format!("1..{}\n", self.lines.len());
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}
