//! Brute-force βε rewriting on closed raw terms, written against the term
//! datatype only. Substitution, tags and redex search are local to this file.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use irr_core::term::{ElimKind, Tag, Term};

pub fn tag(t: &Term, singleton: bool) -> Tag {
    match t {
        Term::Var(_, s) | Term::Const(_, s) => *s,
        Term::Proj2(s, _) => *s,
        Term::Lam(_, _, b) => tag(b, singleton),
        Term::App(f, _) => tag(f, singleton),
        Term::Eps => Tag::Star,
        Term::Rec(_, ElimKind::Ind, _) => Tag::Star,
        Term::Proj1(Tag::Star, c) if singleton => tag(c, singleton),
        Term::Pair(ann, a, _) if singleton && matches!(&**ann, Term::Sigma(Tag::Star, ..)) => tag(a, singleton),
        _ => Tag::Diamond,
    }
}

fn lift(t: &Term, by: usize, depth: usize) -> Term {
    let r = |u: &Arc<Term>, d: usize| Arc::new(lift(u, by, d));
    match t {
        Term::Var(i, s) if *i >= depth => Term::Var(i + by, *s),
        Term::Lam(b, a, x) => Term::Lam(b.clone(), r(a, depth), r(x, depth + 1)),
        Term::Pi(b, a, x) => Term::Pi(b.clone(), r(a, depth), r(x, depth + 1)),
        Term::Sigma(s, b, a, x) => Term::Sigma(*s, b.clone(), r(a, depth), r(x, depth + 1)),
        Term::App(f, a) => Term::App(r(f, depth), r(a, depth)),
        Term::Pair(n, a, b) => Term::Pair(r(n, depth), r(a, depth), r(b, depth)),
        Term::Proj1(s, c) => Term::Proj1(*s, r(c, depth)),
        Term::Proj2(s, c) => Term::Proj2(*s, r(c, depth)),
        _ => t.clone(),
    }
}

/// `body[0 := u]`, decrementing the other free indices.
fn inst(body: &Term, u: &Term, depth: usize) -> Term {
    let r = |x: &Arc<Term>, d: usize| Arc::new(inst(x, u, d));
    match body {
        Term::Var(i, s) => {
            if *i == depth {
                lift(u, depth, 0)
            } else if *i > depth {
                Term::Var(i - 1, *s)
            } else {
                Term::Var(*i, *s)
            }
        }
        Term::Lam(b, a, x) => Term::Lam(b.clone(), r(a, depth), r(x, depth + 1)),
        Term::Pi(b, a, x) => Term::Pi(b.clone(), r(a, depth), r(x, depth + 1)),
        Term::Sigma(s, b, a, x) => Term::Sigma(*s, b.clone(), r(a, depth), r(x, depth + 1)),
        Term::App(f, a) => Term::App(r(f, depth), r(a, depth)),
        Term::Pair(n, a, b) => Term::Pair(r(n, depth), r(a, depth), r(b, depth)),
        Term::Proj1(s, c) => Term::Proj1(*s, r(c, depth)),
        Term::Proj2(s, c) => Term::Proj2(*s, r(c, depth)),
        _ => body.clone(),
    }
}

pub fn eps_root(t: &Term, singleton: bool) -> Option<Term> {
    match t {
        Term::Var(_, Tag::Star) | Term::Const(_, Tag::Star) => Some(Term::Eps),
        Term::Rec(_, ElimKind::Ind, _) => Some(Term::Eps),
        Term::Lam(_, _, b) if matches!(**b, Term::Eps) => Some(Term::Eps),
        Term::App(f, _) if matches!(**f, Term::Eps) => Some(Term::Eps),
        Term::Proj2(Tag::Star, _) => Some(Term::Eps),
        Term::Proj1(Tag::Star, c) if singleton => Some((**c).clone()),
        Term::Pair(ann, a, _) if singleton && matches!(&**ann, Term::Sigma(Tag::Star, ..)) => Some((**a).clone()),
        _ => None,
    }
}

pub fn beta_root(t: &Term, singleton: bool) -> Option<Term> {
    match t {
        Term::App(f, a) => match &**f {
            Term::Lam(b, _, body) if tag(a, singleton) == b.tag => Some(inst(body, a, 0)),
            _ => None,
        },
        Term::Proj1(_, p) => match &**p {
            Term::Pair(_, a, _) if tag(a, singleton) == Tag::Diamond => Some((**a).clone()),
            _ => None,
        },
        Term::Proj2(s, p) => match &**p {
            Term::Pair(_, _, b) if tag(b, singleton) == *s => Some((**b).clone()),
            _ => None,
        },
        _ => None,
    }
}

fn children(t: &Term) -> Vec<&Arc<Term>> {
    match t {
        Term::Lam(_, a, b) | Term::Pi(_, a, b) | Term::Sigma(_, _, a, b) | Term::App(a, b) => vec![a, b],
        Term::Pair(n, a, b) => vec![n, a, b],
        Term::Proj1(_, c) | Term::Proj2(_, c) => vec![c],
        _ => vec![],
    }
}

fn with_child(t: &Term, i: usize, c: Term) -> Term {
    let c = Arc::new(c);
    match t {
        Term::Lam(b, a, x) => if i == 0 { Term::Lam(b.clone(), c, x.clone()) } else { Term::Lam(b.clone(), a.clone(), c) },
        Term::Pi(b, a, x) => if i == 0 { Term::Pi(b.clone(), c, x.clone()) } else { Term::Pi(b.clone(), a.clone(), c) },
        Term::Sigma(s, b, a, x) => {
            if i == 0 {
                Term::Sigma(*s, b.clone(), c, x.clone())
            } else {
                Term::Sigma(*s, b.clone(), a.clone(), c)
            }
        }
        Term::App(f, a) => if i == 0 { Term::App(c, a.clone()) } else { Term::App(f.clone(), c) },
        Term::Pair(n, a, b) => match i {
            0 => Term::Pair(c, a.clone(), b.clone()),
            1 => Term::Pair(n.clone(), c, b.clone()),
            _ => Term::Pair(n.clone(), a.clone(), c),
        },
        Term::Proj1(s, _) => Term::Proj1(*s, c),
        Term::Proj2(s, _) => Term::Proj2(*s, c),
        _ => unreachable!(),
    }
}

fn everywhere(t: &Term, rule: &dyn Fn(&Term) -> Option<Term>, out: &mut Vec<Term>) {
    if let Some(r) = rule(t) {
        out.push(r);
    }
    for (i, c) in children(t).into_iter().enumerate() {
        let mut sub = Vec::new();
        everywhere(c, rule, &mut sub);
        out.extend(sub.into_iter().map(|r| with_child(t, i, r)));
    }
}

pub fn eps_steps(t: &Term, singleton: bool) -> Vec<Term> {
    let mut out = Vec::new();
    everywhere(t, &|s| eps_root(s, singleton), &mut out);
    out
}

pub fn beta_steps(t: &Term, singleton: bool) -> Vec<Term> {
    let mut out = Vec::new();
    everywhere(t, &|s| beta_root(s, singleton), &mut out);
    out
}

pub fn steps(t: &Term, singleton: bool) -> Vec<Term> {
    let mut out = eps_steps(t, singleton);
    out.extend(beta_steps(t, singleton));
    out
}

/// Binder-name-free rendering, used as a hash key.
pub fn key(t: &Term) -> String {
    match t {
        Term::Sort(s) => format!("{s:?}"),
        Term::Var(i, s) => format!("#{i}{s:?}"),
        Term::Lam(b, a, x) => format!("(L{:?} {} {})", b.tag, key(a), key(x)),
        Term::Pi(b, a, x) => format!("(P{:?} {} {})", b.tag, key(a), key(x)),
        Term::Sigma(s, b, a, x) => format!("(S{s:?}{:?} {} {})", b.tag, key(a), key(x)),
        Term::App(f, a) => format!("({} {})", key(f), key(a)),
        Term::Pair(n, a, b) => format!("<{} {} {}>", key(n), key(a), key(b)),
        Term::Proj1(s, c) => format!("p1{s:?}({})", key(c)),
        Term::Proj2(s, c) => format!("p2{s:?}({})", key(c)),
        Term::Eps => "e".into(),
        Term::Const(n, s) => format!("{n}{s:?}"),
        Term::EqRec(l) => format!("eqrec{}", l.0),
        Term::Rec(n, k, l) => format!("{n}{k:?}{}", l.0),
    }
}

/// Every term reachable from `t`, or `None` past `limit` terms.
pub fn reachable(t: &Term, singleton: bool, limit: usize) -> Option<HashSet<String>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key(t));
    queue.push_back(t.clone());
    while let Some(u) = queue.pop_front() {
        for v in steps(&u, singleton) {
            if v.size() > 400 {
                return None;
            }
            if seen.insert(key(&v)) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(v);
            }
        }
    }
    Some(seen)
}

/// `Some(b)` when joinability could be decided by exhaustive search.
pub fn joinable(t: &Term, u: &Term, singleton: bool, limit: usize) -> Option<bool> {
    let a = reachable(t, singleton, limit)?;
    let b = reachable(u, singleton, limit)?;
    Some(!a.is_disjoint(&b))
}

/// The unique normal form, if every reduction sequence terminates within
/// the search limit.
pub fn normal_forms(t: &Term, singleton: bool, limit: usize) -> Option<Vec<Term>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut nfs = Vec::new();
    let mut nf_keys = HashSet::new();
    seen.insert(key(t));
    queue.push_back(t.clone());
    while let Some(u) = queue.pop_front() {
        let next = steps(&u, singleton);
        if next.is_empty() && nf_keys.insert(key(&u)) {
            nfs.push(u.clone());
        }
        for v in next {
            if v.size() > 400 {
                return None;
            }
            if seen.insert(key(&v)) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(v);
            }
        }
    }
    Some(nfs)
}
