//! Relaxed conversion `=βε` and syntactic subtyping `≤`.
//!
//! Both sides are ε-normalized first; the β-comparison then proceeds by
//! weak-head reduction, with the same answer as normalize-and-compare.

use crate::reduce::{Fuel, FuelExhausted, Mode, Reducer};
use crate::signature::Signature;
use crate::term::*;

impl<'s> Reducer<'s> {
    /// `t =βε u`.
    pub fn convert(&self, t: &Term, u: &Term, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
        let t = self.cook(t);
        let u = self.cook(u);
        self.conv(&t, &u, fuel)
    }

    /// `t ≤ u`.
    pub fn subtype(&self, t: &Term, u: &Term, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
        let t = self.cook(t);
        let u = self.cook(u);
        self.sub(&t, &u, fuel)
    }

    fn sub(&self, t: &Term, u: &Term, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
        if t == u {
            return Ok(true);
        }
        let t = self.whnf(t, fuel, true)?;
        let u = self.whnf(u, fuel, true)?;
        match (&t, &u) {
            (Term::Sort(Sort::Type(i)), Term::Sort(Sort::Type(j))) => Ok(i <= j),
            (Term::Pi(b1, a1, c1), Term::Pi(b2, a2, c2)) => {
                Ok(b1 == b2 && self.conv(a1, a2, fuel)? && self.sub(c1, c2, fuel)?)
            }
            _ => self.conv_whnf(&t, &u, fuel),
        }
    }

    /// Conversion of ε-normal terms.
    fn conv(&self, t: &Term, u: &Term, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
        if t == u {
            return Ok(true);
        }
        fuel.tick()?;
        // Same defined head: try the arguments before unfolding.
        let (h1, a1) = t.spine();
        let (h2, a2) = u.spine();
        if let (Term::Const(c1, _), Term::Const(c2, _)) = (h1, h2) {
            if c1 == c2 && a1.len() == a2.len() && self.sig.def_body(c1, None).is_some() {
                let mut same = true;
                for (x, y) in a1.iter().zip(&a2) {
                    if !self.conv(x, y, fuel)? {
                        same = false;
                        break;
                    }
                }
                if same {
                    return Ok(true);
                }
            }
        }
        let t = self.whnf(t, fuel, true)?;
        let u = self.whnf(u, fuel, true)?;
        if t == u {
            return Ok(true);
        }
        self.conv_whnf(&t, &u, fuel)
    }

    fn conv_whnf(&self, t: &Term, u: &Term, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
        match (t, u) {
            (Term::Sort(a), Term::Sort(b)) => Ok(a == b),
            (Term::Eps, Term::Eps) => Ok(true),
            (Term::Lam(b1, a1, x1), Term::Lam(b2, a2, x2)) => {
                Ok(b1 == b2 && self.conv(a1, a2, fuel)? && self.conv(x1, x2, fuel)?)
            }
            (Term::Pi(b1, a1, x1), Term::Pi(b2, a2, x2)) => {
                Ok(b1 == b2 && self.conv(a1, a2, fuel)? && self.conv(x1, x2, fuel)?)
            }
            (Term::Sigma(s1, b1, a1, x1), Term::Sigma(s2, b2, a2, x2)) => {
                Ok(s1 == s2 && b1 == b2 && self.conv(a1, a2, fuel)? && self.conv(x1, x2, fuel)?)
            }
            (Term::Pair(n1, a1, b1), Term::Pair(n2, a2, b2)) => {
                Ok(self.conv(n1, n2, fuel)? && self.conv(a1, a2, fuel)? && self.conv(b1, b2, fuel)?)
            }
            (Term::Lam(b, _, x), other) | (other, Term::Lam(b, _, x)) if self.mode.eta => {
                let arg = match b.tag {
                    Tag::Star => Term::Eps,
                    Tag::Diamond => Term::Var(0, Tag::Diamond),
                };
                let expanded = self.cook(&app(other.shift(1), arg));
                self.conv(x, &expanded, fuel)
            }
            (Term::Pair(ann, a, b), other) | (other, Term::Pair(ann, a, b)) if self.mode.eta => {
                let s = match &**ann {
                    Term::Sigma(s, ..) => *s,
                    _ => return Ok(false),
                };
                let p1 = self.cook(&proj1(s, other.clone()));
                let p2 = self.cook(&proj2(s, other.clone()));
                Ok(self.conv(a, &p1, fuel)? && self.conv(b, &p2, fuel)?)
            }
            _ => {
                let (h1, a1) = t.spine();
                let (h2, a2) = u.spine();
                if a1.len() != a2.len() {
                    return Ok(false);
                }
                if a1.is_empty() {
                    return match (h1, h2) {
                        (Term::Proj1(s1, x), Term::Proj1(s2, y)) | (Term::Proj2(s1, x), Term::Proj2(s2, y)) => {
                            Ok(s1 == s2 && self.conv(x, y, fuel)?)
                        }
                        _ => Ok(h1 == h2),
                    };
                }
                if !self.conv(h1, h2, fuel)? {
                    return Ok(false);
                }
                for (x, y) in a1.iter().zip(&a2) {
                    if !self.conv(x, y, fuel)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// `t =βε u` in the given mode.
pub fn convert(sig: &Signature, mode: Mode, t: &Term, u: &Term, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
    Reducer::new(sig, mode).convert(t, u, fuel)
}

/// `t ≤ u` in the given mode.
pub fn subtype(sig: &Signature, mode: Mode, t: &Term, u: &Term, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
    Reducer::new(sig, mode).subtype(t, u, fuel)
}

/// Conversion extended with η.
pub fn convert_eta(sig: &Signature, mode: Mode, t: &Term, u: &Term, fuel: &mut Fuel) -> Result<bool, FuelExhausted> {
    Reducer::new(sig, mode.with_eta()).convert(t, u, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Tag::*;

    fn run(f: impl Fn(&Signature, &mut Fuel) -> Result<bool, FuelExhausted>) -> bool {
        let sig = Signature::new();
        f(&sig, &mut Fuel::new(10_000)).unwrap()
    }

    #[test]
    fn proof_irrelevant_pairs() {
        let ann = sigma(Star, "x", constant("A", Diamond), constant("P", Diamond));
        let a = constant("a", Diamond);
        let p1 = pair(ann.clone(), a.clone(), constant("p", Star));
        let p2 = pair(ann, a, constant("q", Star));
        assert!(run(|s, f| convert(s, Mode::base(), &p1, &p2, f)));
    }

    #[test]
    fn sorts_are_distinct() {
        assert!(!run(|s, f| convert(s, Mode::base(), &prop(), &type_(0), f)));
        assert!(!run(|s, f| convert(s, Mode::base(), &type_(1), &type_(0), f)));
        assert!(!run(|s, f| subtype(s, Mode::base(), &prop(), &type_(0), f)));
        assert!(run(|s, f| subtype(s, Mode::base(), &type_(0), &type_(3), f)));
        assert!(!run(|s, f| subtype(s, Mode::base(), &type_(3), &type_(0), f)));
    }

    #[test]
    fn product_codomain_covariance() {
        let nat = crate::signature::nat();
        let t = pi("x", Diamond, nat.clone(), type_(0));
        let u = pi("x", Diamond, nat, type_(1));
        assert!(run(|s, f| subtype(s, Mode::base(), &t, &u, f)));
        assert!(!run(|s, f| subtype(s, Mode::base(), &u, &t, f)));
    }

    #[test]
    fn eta_conversion() {
        let a = constant("A", Diamond);
        let fcst = constant("f", Diamond);
        let expanded = lam("x", Diamond, a.clone(), app(fcst.clone(), var(0, Diamond)));
        assert!(run(|s, f| convert_eta(s, Mode::base(), &expanded, &fcst, f)));
        assert!(!run(|s, f| convert(s, Mode::base(), &expanded, &fcst, f)));
        let c = constant("c", Diamond);
        let ann = sigma(Diamond, "x", a.clone(), a.clone());
        let p = pair(ann, proj1(Diamond, c.clone()), proj2(Diamond, c.clone()));
        assert!(run(|s, f| convert_eta(s, Mode::base(), &p, &c, f)));
        let id = lam("x", Diamond, a.clone(), var(0, Diamond));
        let selfapp = lam("x", Diamond, a, app(var(0, Diamond), var(0, Diamond)));
        assert!(!run(|s, f| convert_eta(s, Mode::base(), &id, &selfapp, f)));
    }

    #[test]
    fn divergence_is_reported() {
        let sig = Signature::new();
        let w = lam("x", Diamond, prop(), app(var(0, Diamond), var(0, Diamond)));
        let omega = app(w.clone(), w);
        let r = convert(&sig, Mode::base(), &omega, &prop(), &mut Fuel::new(100));
        assert_eq!(r, Err(FuelExhausted));
    }
}
