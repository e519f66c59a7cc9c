//! Raw terms, contexts and de Bruijn plumbing.
//!
//! Variables are de Bruijn indices. Binder names are kept only for printing,
//! so `==` on [`Term`] is alpha-equivalence: [`Binder`] compares by tag alone.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub type Name = Arc<str>;

/// Computational marker. `Star` is proof-level (erasable), `Diamond` computational.
///
/// Deliberately not `Ord`: the two tags are never compared by magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Star,
    Diamond,
}

impl Tag {
    pub fn symbol(self) -> &'static str {
        match self {
            Tag::Star => "*",
            Tag::Diamond => "◇",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Universe(pub u32);

impl Universe {
    pub fn succ(self) -> Universe {
        Universe(self.0 + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Prop,
    Type(Universe),
}

impl Sort {
    /// The principal type of the sort: `Prop : Type(1)`, `Type(i) : Type(i+1)`.
    pub fn principal_type(self) -> Sort {
        match self {
            Sort::Prop => Sort::Type(Universe(1)),
            Sort::Type(u) => Sort::Type(u.succ()),
        }
    }

    /// Maximum for the order `Prop < Type(0) < Type(1) < ...`.
    pub fn max(self, other: Sort) -> Sort {
        match (self, other) {
            (Sort::Prop, s) | (s, Sort::Prop) => s,
            (Sort::Type(a), Sort::Type(b)) => Sort::Type(a.max(b)),
        }
    }

    /// Tag of the inhabitants of a type living in this sort.
    pub fn inhabitant_tag(self) -> Tag {
        match self {
            Sort::Prop => Tag::Star,
            Sort::Type(_) => Tag::Diamond,
        }
    }
}

/// A binding occurrence: a display name plus the tag of the bound variable.
#[derive(Clone, Debug)]
pub struct Binder {
    pub name: Name,
    pub tag: Tag,
}

impl Binder {
    pub fn new(name: &str, tag: Tag) -> Binder {
        Binder {
            name: Name::from(name),
            tag,
        }
    }
}

impl PartialEq for Binder {
    fn eq(&self, other: &Binder) -> bool {
        self.tag == other.tag
    }
}

impl Eq for Binder {}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tag.hash(state);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElimKind {
    /// Elimination into `Prop`; the eliminator is a proof (tag `*`).
    Ind,
    /// Elimination into `Type(i)`; computational (tag `◇`).
    Rec,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Sort(Sort),
    Var(usize, Tag),
    Lam(Binder, Arc<Term>, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Pi(Binder, Arc<Term>, Arc<Term>),
    /// `Σ^s x:A.B`; the binder is always `◇` on well-formed terms.
    Sigma(Tag, Binder, Arc<Term>, Arc<Term>),
    /// `⟨a, b⟩` annotated with its `Sigma` type.
    Pair(Arc<Term>, Arc<Term>, Arc<Term>),
    Proj1(Tag, Arc<Term>),
    Proj2(Tag, Arc<Term>),
    Eps,
    /// Global constant, carrying the tag of its declaration.
    Const(Name, Tag),
    EqRec(Universe),
    /// Eliminator of a data or prop-data declaration. The level is the
    /// target universe for `Rec`, and is ignored for `Ind`.
    Rec(Name, ElimKind, Universe),
}

pub fn prop() -> Term {
    Term::Sort(Sort::Prop)
}

pub fn type_(level: u32) -> Term {
    Term::Sort(Sort::Type(Universe(level)))
}

pub fn var(index: usize, tag: Tag) -> Term {
    Term::Var(index, tag)
}

pub fn lam(name: &str, tag: Tag, dom: Term, body: Term) -> Term {
    Term::Lam(Binder::new(name, tag), Arc::new(dom), Arc::new(body))
}

pub fn pi(name: &str, tag: Tag, dom: Term, cod: Term) -> Term {
    Term::Pi(Binder::new(name, tag), Arc::new(dom), Arc::new(cod))
}

/// Non-dependent product `A -> B`; `cod` is given in the outer context.
pub fn arrow(tag: Tag, dom: Term, cod: Term) -> Term {
    pi("_", tag, dom, cod.shift(1))
}

pub fn sigma(tag: Tag, name: &str, dom: Term, cod: Term) -> Term {
    Term::Sigma(tag, Binder::new(name, Tag::Diamond), Arc::new(dom), Arc::new(cod))
}

pub fn app(f: Term, a: Term) -> Term {
    Term::App(Arc::new(f), Arc::new(a))
}

pub fn apps<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
    args.into_iter().fold(f, app)
}

pub fn pair(ann: Term, a: Term, b: Term) -> Term {
    Term::Pair(Arc::new(ann), Arc::new(a), Arc::new(b))
}

pub fn proj1(tag: Tag, t: Term) -> Term {
    Term::Proj1(tag, Arc::new(t))
}

pub fn proj2(tag: Tag, t: Term) -> Term {
    Term::Proj2(tag, Arc::new(t))
}

pub fn constant(name: &str, tag: Tag) -> Term {
    Term::Const(Name::from(name), tag)
}

impl Term {
    pub fn is_sort(&self) -> bool {
        matches!(self, Term::Sort(_))
    }

    pub fn as_sort(&self) -> Option<Sort> {
        match self {
            Term::Sort(s) => Some(*s),
            _ => None,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().map(|c| c.size()).sum::<usize>()
    }

    /// Direct subterms, left to right.
    pub fn children(&self) -> impl Iterator<Item = &Term> {
        let v: Vec<&Term> = match self {
            Term::Lam(_, a, b) | Term::Pi(_, a, b) | Term::Sigma(_, _, a, b) => vec![a, b],
            Term::App(f, a) => vec![f, a],
            Term::Pair(ann, a, b) => vec![ann, a, b],
            Term::Proj1(_, t) | Term::Proj2(_, t) => vec![t],
            _ => vec![],
        };
        v.into_iter()
    }

    /// Splits `f a1 .. an` into `(f, [a1, .., an])`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Adds `d` to every free variable index at or above `cutoff`.
    pub fn shift_from(&self, d: isize, cutoff: usize) -> Term {
        if d == 0 || self.max_free_index().is_none_or(|m| m < cutoff) {
            return self.clone();
        }
        self.map_vars(cutoff, &|i, tag, depth| {
            if i >= depth {
                let j = i as isize + d;
                assert!(j >= 0, "shift produced a negative index");
                Term::Var(j as usize, tag)
            } else {
                Term::Var(i, tag)
            }
        })
    }

    pub fn shift(&self, d: isize) -> Term {
        self.shift_from(d, 0)
    }

    /// Replaces variable `k` by `u` and lowers the variables above `k`.
    ///
    /// `u` lives in the context obtained by removing the `k+1` innermost
    /// entries visible to `self`.
    pub fn subst(&self, k: usize, u: &Term) -> Term {
        if self.max_free_index().is_none_or(|m| m < k) {
            return self.clone();
        }
        self.map_vars(0, &|i, tag, depth| {
            if i < depth + k {
                Term::Var(i, tag)
            } else if i == depth + k {
                u.shift((depth + k) as isize)
            } else {
                Term::Var(i - 1, tag)
            }
        })
    }

    /// `body[x := u]` where `x` is the innermost binder of `body`.
    pub fn instantiate(&self, u: &Term) -> Term {
        self.subst(0, u)
    }

    fn map_vars<F>(&self, depth: usize, f: &F) -> Term
    where
        F: Fn(usize, Tag, usize) -> Term,
    {
        match self {
            Term::Var(i, tag) => f(*i, *tag, depth),
            Term::Lam(b, a, body) => Term::Lam(
                b.clone(),
                Arc::new(a.map_vars(depth, f)),
                Arc::new(body.map_vars(depth + 1, f)),
            ),
            Term::Pi(b, a, body) => Term::Pi(
                b.clone(),
                Arc::new(a.map_vars(depth, f)),
                Arc::new(body.map_vars(depth + 1, f)),
            ),
            Term::Sigma(s, b, a, body) => Term::Sigma(
                *s,
                b.clone(),
                Arc::new(a.map_vars(depth, f)),
                Arc::new(body.map_vars(depth + 1, f)),
            ),
            Term::App(g, a) => Term::App(Arc::new(g.map_vars(depth, f)), Arc::new(a.map_vars(depth, f))),
            Term::Pair(ann, a, b) => Term::Pair(
                Arc::new(ann.map_vars(depth, f)),
                Arc::new(a.map_vars(depth, f)),
                Arc::new(b.map_vars(depth, f)),
            ),
            Term::Proj1(s, t) => Term::Proj1(*s, Arc::new(t.map_vars(depth, f))),
            Term::Proj2(s, t) => Term::Proj2(*s, Arc::new(t.map_vars(depth, f))),
            Term::Sort(_) | Term::Eps | Term::Const(..) | Term::EqRec(_) | Term::Rec(..) => self.clone(),
        }
    }

    /// Largest free de Bruijn index, if any variable is free.
    pub fn max_free_index(&self) -> Option<usize> {
        fn go(t: &Term, depth: usize) -> Option<usize> {
            match t {
                Term::Var(i, _) => i.checked_sub(depth),
                Term::Lam(_, a, b) | Term::Pi(_, a, b) | Term::Sigma(_, _, a, b) => {
                    go(a, depth).max(go(b, depth + 1))
                }
                Term::App(f, a) => go(f, depth).max(go(a, depth)),
                Term::Pair(ann, a, b) => go(ann, depth).max(go(a, depth)).max(go(b, depth)),
                Term::Proj1(_, t) | Term::Proj2(_, t) => go(t, depth),
                _ => None,
            }
        }
        go(self, 0)
    }

    pub fn is_closed(&self) -> bool {
        self.max_free_index().is_none()
    }

    /// Whether variable `k` occurs free.
    pub fn has_free(&self, k: usize) -> bool {
        fn go(t: &Term, k: usize) -> bool {
            match t {
                Term::Var(i, _) => *i == k,
                Term::Lam(_, a, b) | Term::Pi(_, a, b) | Term::Sigma(_, _, a, b) => go(a, k) || go(b, k + 1),
                Term::App(f, a) => go(f, k) || go(a, k),
                Term::Pair(ann, a, b) => go(ann, k) || go(a, k) || go(b, k),
                Term::Proj1(_, t) | Term::Proj2(_, t) => go(t, k),
                _ => false,
            }
        }
        go(self, k)
    }

    /// Whether the term mentions `Eps` anywhere.
    pub fn contains_eps(&self) -> bool {
        matches!(self, Term::Eps) || self.children().any(|c| c.contains_eps())
    }

    /// Free variables paired with the tags their occurrences carry.
    pub fn free_var_tags(&self) -> Vec<(usize, Tag)> {
        fn go(t: &Term, depth: usize, out: &mut Vec<(usize, Tag)>) {
            match t {
                Term::Var(i, tag) if *i >= depth => out.push((i - depth, *tag)),
                Term::Lam(_, a, b) | Term::Pi(_, a, b) | Term::Sigma(_, _, a, b) => {
                    go(a, depth, out);
                    go(b, depth + 1, out);
                }
                _ => t.children().for_each(|c| go(c, depth, out)),
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    /// Whether every variable occurrence carries the tag of its binder.
    pub fn tags_consistent(&self) -> bool {
        fn go(t: &Term, scope: &mut Vec<Tag>) -> bool {
            match t {
                Term::Var(i, tag) => match scope.len().checked_sub(i + 1) {
                    Some(pos) => scope[pos] == *tag,
                    None => true,
                },
                Term::Lam(b, a, body) | Term::Pi(b, a, body) | Term::Sigma(_, b, a, body) => {
                    if !go(a, scope) {
                        return false;
                    }
                    scope.push(b.tag);
                    let ok = go(body, scope);
                    scope.pop();
                    ok
                }
                _ => t.children().all(|c| go(c, scope)),
            }
        }
        go(self, &mut Vec::new())
    }
}

/// Alpha-equivalence. Tags on binders, variables, sigmas and projections
/// must agree exactly.
pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    t == u
}

/// Capture-avoiding substitution of the free variable with de Bruijn index
/// `x` by `u`.
pub fn subst(t: &Term, x: usize, u: &Term) -> Term {
    t.subst(x, u)
}

/// One telescope entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: Name,
    pub tag: Tag,
    /// Type, well-scoped in the prefix before this entry.
    pub ty: Term,
}

/// A typing context `Γ`, innermost binding last.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Context {
    entries: Vec<Entry>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, name: &str, tag: Tag, ty: Term) {
        self.entries.push(Entry {
            name: Name::from(name),
            tag,
            ty,
        });
    }

    pub fn pop(&mut self) -> Option<Entry> {
        self.entries.pop()
    }

    pub fn extended(&self, name: &str, tag: Tag, ty: Term) -> Context {
        let mut c = self.clone();
        c.push(name, tag, ty);
        c
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Entry for de Bruijn index `i`, with its type lifted into the full context.
    pub fn lookup(&self, i: usize) -> Option<(Name, Tag, Term)> {
        let pos = self.entries.len().checked_sub(i + 1)?;
        let e = &self.entries[pos];
        Some((e.name.clone(), e.tag, e.ty.shift(i as isize + 1)))
    }

    /// Names from outermost to innermost.
    pub fn names(&self) -> Vec<Name> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Prop => f.write_str("Prop"),
            Sort::Type(u) => write!(f, "Type {}", u.0),
        }
    }
}
