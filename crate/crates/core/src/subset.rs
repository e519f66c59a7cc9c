//! Maximal super-types and subset coercions.
//!
//! For a type `A` built from data types, subsets, non-dependent arrows and
//! non-dependent products:
//! - `mu(A)` strips every subset predicate,
//! - `mu_bar(A) : A → μ(A)` forgets the proofs,
//! - `pi_pred(A) : μ(A) → Prop` is the condition for casting back,
//! - `pi_bar(A) : Πx:μ(A). π(A) x → A` performs the cast.

use crate::reduce::Mode;
use crate::signature::{true_prop, Signature};
use crate::term::*;
use crate::typecheck::{TypeChecker, TypeError};

#[derive(Debug, Clone, thiserror::Error)]
pub enum SubsetError {
    #[error("no maximal super-type: {0}")]
    NoSupertype(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}

pub type SubsetResult<T> = Result<T, SubsetError>;

/// Shape of a type after weak-head normalization.
enum Shape {
    Data(Term),
    /// `{x:B | P}`, with `P` under the binder `x`.
    Subset(Term, Term, Term),
    /// `C → B`.
    Arrow(Term, Term),
    /// `B × C`.
    Product(Term, Term, Term),
}

use Tag::{Diamond as D, Star as S};

/// `∀q:Prop. (X → Y → q) → q`.
fn and_prop(x: &Term, y: &Term) -> Term {
    let k = arrow(S, x.shift(1), arrow(S, y.shift(1), var(0, D)));
    pi("q", D, prop(), arrow(S, k, var(0, D)))
}

/// `P[x := u]` where `P` lives under `x` and `u` lives `k` binders deeper.
fn p_inst(p: &Term, k: usize, u: &Term) -> Term {
    p.shift_from(k as isize, 1).instantiate(u)
}

/// Synthesizes coercions over a signature.
pub struct Bridge<'s> {
    pub tc: TypeChecker<'s>,
}

impl<'s> Bridge<'s> {
    pub fn new(sig: &'s Signature, fuel: u64) -> Bridge<'s> {
        Bridge {
            tc: TypeChecker::new(sig, Mode::base(), fuel),
        }
    }

    fn shape(&self, a: &Term) -> SubsetResult<Shape> {
        let w = self.tc.whnf(a)?;
        let none = |why: &str| Err(SubsetError::NoSupertype(why.to_string()));
        match &w {
            Term::Const(name, _) => {
                let sig = self.tc.sig;
                let opaque = matches!(sig.get(name), Some(d) if matches!(d.ty, Term::Sort(Sort::Type(_))));
                if sig.is_data_type(name) || opaque {
                    Ok(Shape::Data(w.clone()))
                } else {
                    none("constant is not a data type")
                }
            }
            Term::Sigma(Tag::Star, b, dom, p) if b.tag == D => Ok(Shape::Subset(w.clone(), (**dom).clone(), (**p).clone())),
            Term::Sigma(Tag::Diamond, _, dom, cod) => {
                if cod.has_free(0) {
                    return none("dependent sum");
                }
                Ok(Shape::Product(w.clone(), (**dom).clone(), cod.shift(-1)))
            }
            Term::Pi(b, dom, cod) => {
                if b.tag != D {
                    return none("function out of a proposition");
                }
                if cod.has_free(0) {
                    return none("dependent product");
                }
                Ok(Shape::Arrow((**dom).clone(), cod.shift(-1)))
            }
            Term::Sort(_) => none("sorts have no maximal super-type"),
            _ => none("type is not built from data types, subsets, arrows and products"),
        }
    }

    pub fn mu(&self, a: &Term) -> SubsetResult<Term> {
        Ok(match self.shape(a)? {
            Shape::Data(t) => t,
            Shape::Subset(_, b, _) => self.mu(&b)?,
            Shape::Arrow(c, b) => arrow(D, c, self.mu(&b)?),
            Shape::Product(_, b, c) => sigma(D, "_", self.mu(&b)?, self.mu(&c)?.shift(1)),
        })
    }

    pub fn mu_bar(&self, a: &Term) -> SubsetResult<Term> {
        Ok(match self.shape(a)? {
            Shape::Data(t) => lam("x", D, t, var(0, D)),
            Shape::Subset(w, b, _) => {
                let mb = self.mu_bar(&b)?;
                lam("x", D, w, app(mb.shift(1), proj1(S, var(0, D))))
            }
            Shape::Arrow(c, b) => {
                let w = arrow(D, c.clone(), b.clone());
                let mb = self.mu_bar(&b)?;
                lam(
                    "h",
                    D,
                    w,
                    lam("x", D, c.shift(1), app(mb.shift(2), app(var(1, D), var(0, D)))),
                )
            }
            Shape::Product(w, b, c) => {
                let mu_a = self.mu(a)?;
                let mb = self.mu_bar(&b)?;
                let mc = self.mu_bar(&c)?;
                let x = var(0, D);
                lam(
                    "x",
                    D,
                    w,
                    pair(
                        mu_a.shift(1),
                        app(mb.shift(1), proj1(D, x.clone())),
                        app(mc.shift(1), proj2(D, x)),
                    ),
                )
            }
        })
    }

    pub fn pi_pred(&self, a: &Term) -> SubsetResult<Term> {
        let mu_a = self.mu(a)?;
        Ok(match self.shape(a)? {
            Shape::Data(_) => lam("x", D, mu_a, true_prop()),
            Shape::Arrow(c, b) => {
                let pb = self.pi_pred(&b)?;
                lam(
                    "f",
                    D,
                    mu_a,
                    pi("x", D, c.shift(1), app(pb.shift(2), app(var(1, D), var(0, D)))),
                )
            }
            Shape::Product(_, b, c) => {
                let pb = self.pi_pred(&b)?;
                let pc = self.pi_pred(&c)?;
                let z = var(0, D);
                let x = app(pb.shift(1), proj1(D, z.clone()));
                let y = app(pc.shift(1), proj2(D, z));
                lam("z", D, mu_a, and_prop(&x, &y))
            }
            Shape::Subset(_, b, p) => {
                let pb = self.pi_pred(&b)?;
                let qb = self.pi_bar(&b)?;
                // Under y, q, h.
                let cast = apps(qb.shift(3), [var(2, D), var(0, S)]);
                let cont = pi("h", S, app(pb.shift(2), var(1, D)), arrow(S, p_inst(&p, 3, &cast), var(1, D)));
                lam("y", D, mu_a, pi("q", D, prop(), arrow(S, cont, var(0, D))))
            }
        })
    }

    pub fn pi_bar(&self, a: &Term) -> SubsetResult<Term> {
        let mu_a = self.mu(a)?;
        let pa = self.pi_pred(a)?;
        let body = match self.shape(a)? {
            Shape::Data(_) => var(1, D),
            Shape::Arrow(c, b) => {
                let qb = self.pi_bar(&b)?;
                // Under f, p, x.
                let fx = app(var(2, D), var(0, D));
                let px = app(var(1, S), var(0, D));
                lam("x", D, c.shift(2), apps(qb.shift(3), [fx, px]))
            }
            Shape::Product(w, b, c) => {
                let (pb, qb) = (self.pi_pred(&b)?, self.pi_bar(&b)?);
                let (pc, qc) = (self.pi_pred(&c)?, self.pi_bar(&c)?);
                // Under z, p.
                let z = var(1, D);
                let x = app(pb.shift(2), proj1(D, z.clone()));
                let y = app(pc.shift(2), proj2(D, z.clone()));
                let select = |first: bool| {
                    let chosen = if first { var(1, S) } else { var(0, S) };
                    let k = lam("a", S, x.clone(), lam("b", S, y.shift(1), chosen));
                    apps(var(0, S), [if first { x.clone() } else { y.clone() }, k])
                };
                pair(
                    w.shift(2),
                    apps(qb.shift(2), [proj1(D, z.clone()), select(true)]),
                    apps(qc.shift(2), [proj2(D, z), select(false)]),
                )
            }
            Shape::Subset(w, b, p) => {
                let (pb, qb) = (self.pi_pred(&b)?, self.pi_bar(&b)?);
                // Under y, p.
                let pby = app(pb.shift(2), var(1, D));
                // Under y, p, h.
                let cast_h = apps(qb.shift(3), [var(2, D), var(0, S)]);
                let r_dom = p_inst(&p, 3, &cast_h);
                let h0 = apps(
                    var(0, S),
                    [pby.clone(), lam("h", S, pby.clone(), lam("r", S, r_dom.clone(), var(1, S)))],
                );
                let first = apps(qb.shift(2), [var(1, D), h0]);
                let second = apps(
                    var(0, S),
                    [p_inst(&p, 2, &first), lam("h", S, pby, lam("r", S, r_dom, var(0, S)))],
                );
                pair(w.shift(2), first, second)
            }
        };
        Ok(lam("y", D, mu_a, lam("p", S, app(pa.shift(1), var(0, D)), body)))
    }

    /// `A → μ(A)`.
    pub fn mu_bar_type(&self, a: &Term) -> SubsetResult<Term> {
        Ok(arrow(D, a.clone(), self.mu(a)?))
    }

    /// `Πx:μ(A). (π(A) x) → A`.
    pub fn pi_bar_type(&self, a: &Term) -> SubsetResult<Term> {
        let pa = self.pi_pred(a)?;
        Ok(pi("x", D, self.mu(a)?, arrow(S, app(pa.shift(1), var(0, D)), a.shift(1))))
    }

    /// `μ(A) → Prop`.
    pub fn pi_pred_type(&self, a: &Term) -> SubsetResult<Term> {
        Ok(arrow(D, self.mu(a)?, prop()))
    }

    /// Checks `μ̄(A) : A → μ(A)` in base conversion.
    pub fn check_mu_bar(&self, ctx: &Context, a: &Term) -> SubsetResult<Term> {
        let t = self.mu_bar(a)?;
        self.tc.check(ctx, &t, &self.mu_bar_type(a)?)?;
        Ok(t)
    }

    /// Checks `π(A) : μ(A) → Prop` and `π̄(A) : Πx:μ(A). π(A) x → A` with η
    /// added to conversion.
    pub fn check_pi_bar(&self, ctx: &Context, a: &Term) -> SubsetResult<Term> {
        let eta = TypeChecker::new(self.tc.sig, self.tc.mode.with_eta(), self.tc.fuel);
        eta.check(ctx, &self.pi_pred(a)?, &self.pi_pred_type(a)?)?;
        let t = self.pi_bar(a)?;
        eta.check(ctx, &t, &self.pi_bar_type(a)?)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{Fuel, Reducer};
    use crate::signature::{bool_ty, nat, Decl, DeclKind};

    fn sig_with_preds() -> Signature {
        let mut sig = Signature::new();
        for (n, dom) in [("P", nat()), ("Q", bool_ty())] {
            sig.push(Decl {
                name: n.into(),
                ty: arrow(D, dom, prop()),
                tag: D,
                kind: DeclKind::Axiom,
            });
        }
        sig
    }

    fn subset_nat() -> Term {
        sigma(S, "x", nat(), app(constant("P", D), var(0, D)))
    }

    fn simplified(sig: &Signature, t: &Term) -> Term {
        let r = Reducer::new(sig, Mode::singleton().with_eta());
        r.normalize(t, &mut Fuel::new(100_000)).unwrap()
    }

    #[test]
    fn mu_examples() {
        let sig = sig_with_preds();
        let b = Bridge::new(&sig, 10_000);
        assert_eq!(b.mu(&subset_nat()).unwrap(), nat());
        let a = arrow(D, nat(), sigma(S, "y", bool_ty(), app(constant("Q", D), var(0, D))));
        assert_eq!(b.mu(&a).unwrap(), arrow(D, nat(), bool_ty()));
        assert!(matches!(b.mu(&prop()), Err(SubsetError::NoSupertype(_))));
    }

    #[test]
    fn mu_bar_of_subset_is_identity() {
        let sig = sig_with_preds();
        let b = Bridge::new(&sig, 10_000);
        let a = subset_nat();
        let t = b.check_mu_bar(&Context::new(), &a).unwrap();
        assert!(matches!(simplified(&sig, &t), Term::Lam(_, _, body) if *body == var(0, D)));
    }

    #[test]
    fn pi_bar_of_subset() {
        let sig = sig_with_preds();
        let b = Bridge::new(&sig, 10_000);
        let t = b.check_pi_bar(&Context::new(), &subset_nat()).unwrap();
        let nf = simplified(&sig, &t);
        match nf {
            Term::Lam(_, _, body) => assert!(matches!(&*body, Term::Lam(_, _, x) if **x == var(1, D))),
            other => panic!("unexpected {other:?}"),
        }
    }
}
