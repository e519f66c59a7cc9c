//! Global declarations: definitions, axioms, the built-in `nat`/`bool`
//! data types and single-constructor propositional declarations.

use std::collections::HashMap;
use std::sync::Arc;

use crate::reduce::{eps_normalize, Mode};
use crate::term::*;

pub const NAT: &str = "nat";
pub const ZERO: &str = "O";
pub const SUCC: &str = "S";
pub const BOOL: &str = "bool";
pub const TRUE: &str = "true";
pub const FALSE: &str = "false";

pub fn nat() -> Term {
    constant(NAT, Tag::Diamond)
}

pub fn zero() -> Term {
    constant(ZERO, Tag::Diamond)
}

pub fn succ(t: Term) -> Term {
    app(constant(SUCC, Tag::Diamond), t)
}

pub fn numeral(n: u64) -> Term {
    (0..n).fold(zero(), |t, _| succ(t))
}

/// Reads back `S (S .. O)`.
pub fn as_numeral(t: &Term) -> Option<u64> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match cur {
            Term::Const(c, _) if &**c == ZERO => return Some(n),
            Term::App(f, a) if matches!(&**f, Term::Const(c, _) if &**c == SUCC) => {
                n += 1;
                cur = a;
            }
            _ => return None,
        }
    }
}

pub fn bool_ty() -> Term {
    constant(BOOL, Tag::Diamond)
}

pub fn tt() -> Term {
    constant(TRUE, Tag::Diamond)
}

pub fn ff() -> Term {
    constant(FALSE, Tag::Diamond)
}

/// `ΠQ:Prop. Q → Q`.
pub fn true_prop() -> Term {
    pi("Q", Tag::Diamond, prop(), arrow(Tag::Star, var(0, Tag::Diamond), var(0, Tag::Diamond)))
}

/// Leibniz equality `ΠQ:A→Prop. Q a → Q b`, with `a`, `b`, `ty` in the current context.
pub fn leibniz(ty: &Term, a: &Term, b: &Term) -> Term {
    let d = Tag::Diamond;
    let q_ty = arrow(d, ty.clone(), prop());
    // Under Q: Q a → Q b.
    let qa = app(var(0, d), a.shift(1));
    let qb = app(var(1, d), b.shift(2));
    pi("Q", d, q_ty, pi("_", Tag::Star, qa, qb))
}

/// A single-constructor, non-recursive inductive proposition
/// `I : Πx̄:Ā.Prop` with constructor `c : Πȳ:B̄. I ū`.
#[derive(Clone, Debug)]
pub struct PropDataInfo {
    pub name: Name,
    /// `x̄ : Ā` as a telescope.
    pub indices: Vec<(Name, Tag, Term)>,
    pub ctor: Name,
    /// `ȳ : B̄` as a telescope; every `Bj` is a proposition.
    pub args: Vec<(Name, Tag, Term)>,
    /// `ū`, well-scoped in the context `ȳ`.
    pub result: Vec<Term>,
}

impl PropDataInfo {
    pub fn ind_name(&self) -> String {
        format!("{}_ind", self.name)
    }

    pub fn rec_name(&self) -> String {
        format!("{}_rec", self.name)
    }

    /// Motive, minor premise, indices, scrutinee.
    pub fn eliminator_arity(&self) -> usize {
        self.indices.len() + 3
    }

    pub fn family_type(&self) -> Term {
        pis(&self.indices, prop())
    }

    pub fn ctor_type(&self) -> Term {
        let head = constant(&self.name, Tag::Diamond);
        pis(&self.args, apps(head, self.result.iter().cloned()))
    }

    /// `ΠP:(Πx̄:Ā.S). (Πȳ:B̄. P ū) → Πx̄:Ā. I x̄ → P x̄` with `S` the target sort.
    pub fn eliminator_type(&self, kind: ElimKind, level: Universe) -> Term {
        let target = match kind {
            ElimKind::Ind => Sort::Prop,
            ElimKind::Rec => Sort::Type(level),
        };
        let n = self.indices.len();
        let m = self.args.len();
        let d = Tag::Diamond;
        let motive_ty = pis(&self.indices, Term::Sort(target));
        // Under the motive.
        let minor_args = shift_telescope(&self.args, 1);
        let minor_body = apps(var(m, d), self.result.iter().map(|u| u.shift_from(1, m)));
        let minor_ty = pis(&minor_args, minor_body);
        let minor_tag = target.inhabitant_tag();
        // Under motive and minor premise.
        let idx = shift_telescope(&self.indices, 2);
        let i_applied = apps(
            constant(&self.name, Tag::Diamond),
            (0..n).map(|k| var(n - 1 - k, self.indices[k].1)),
        );
        // Under motive, minor, x̄ and the scrutinee.
        let p_applied = apps(var(n + 2, d), (0..n).map(|k| var(n - k, self.indices[k].1)));
        let scrut = pi("h", Tag::Star, i_applied, p_applied);
        pi(
            "P",
            d,
            motive_ty,
            pi("f", minor_tag, minor_ty, pis(&idx, scrut)),
        )
    }
}

/// `Πx̄:Ā. body`.
pub fn pis(tel: &[(Name, Tag, Term)], body: Term) -> Term {
    tel.iter()
        .rev()
        .fold(body, |acc, (n, tag, ty)| Term::Pi(Binder { name: n.clone(), tag: *tag }, Arc::new(ty.clone()), Arc::new(acc)))
}

/// Lifts a telescope into a context with `d` more outer entries.
pub fn shift_telescope(tel: &[(Name, Tag, Term)], d: isize) -> Vec<(Name, Tag, Term)> {
    tel.iter()
        .enumerate()
        .map(|(k, (n, tag, ty))| (n.clone(), *tag, ty.shift_from(d, k)))
        .collect()
}

#[derive(Clone, Debug)]
pub enum DeclKind {
    Def {
        body: Term,
        /// ε-normal forms of the body, used by conversion (base and
        /// singleton-simplification modes).
        cooked: Term,
        cooked_singleton: Term,
    },
    Axiom,
    /// Built-in data type or constructor.
    Builtin,
    PropData(Arc<PropDataInfo>),
    PropCtor(Arc<PropDataInfo>),
}

#[derive(Clone, Debug)]
pub struct Decl {
    pub name: Name,
    pub ty: Term,
    pub tag: Tag,
    pub kind: DeclKind,
}

impl Decl {
    pub fn def(name: &str, ty: Term, tag: Tag, body: Term) -> Decl {
        let cooked = eps_normalize(&body, Mode::base());
        let cooked_singleton = eps_normalize(&body, Mode::singleton());
        Decl {
            name: Name::from(name),
            ty,
            tag,
            kind: DeclKind::Def {
                body,
                cooked,
                cooked_singleton,
            },
        }
    }
}

/// Ordered, append-only list of checked declarations.
#[derive(Clone, Debug)]
pub struct Signature {
    decls: Vec<Arc<Decl>>,
    index: HashMap<Name, usize>,
    propdata: HashMap<Name, Arc<PropDataInfo>>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new()
    }
}

impl Signature {
    /// A signature holding the built-in data types `nat` and `bool`.
    pub fn new() -> Signature {
        let mut sig = Signature {
            decls: Vec::new(),
            index: HashMap::new(),
            propdata: HashMap::new(),
        };
        let d = Tag::Diamond;
        let builtin = |name: &str, ty: Term| Decl {
            name: Name::from(name),
            ty,
            tag: d,
            kind: DeclKind::Builtin,
        };
        sig.push(builtin(NAT, type_(0)));
        sig.push(builtin(ZERO, nat()));
        sig.push(builtin(SUCC, arrow(d, nat(), nat())));
        sig.push(builtin(BOOL, type_(0)));
        sig.push(builtin(TRUE, bool_ty()));
        sig.push(builtin(FALSE, bool_ty()));
        sig
    }

    pub fn push(&mut self, decl: Decl) {
        if let DeclKind::PropData(info) = &decl.kind {
            self.propdata.insert(info.name.clone(), info.clone());
        }
        self.index.insert(decl.name.clone(), self.decls.len());
        self.decls.push(Arc::new(decl));
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.index.get(name).map(|&i| self.decls[i].as_ref())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name) || self.eliminator(name).is_some()
    }

    pub fn decls(&self) -> impl Iterator<Item = &Decl> {
        self.decls.iter().map(|d| d.as_ref())
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn propdata(&self, name: &str) -> Option<&Arc<PropDataInfo>> {
        self.propdata.get(name)
    }

    pub fn is_builtin(&self, name: &str) -> bool {
        matches!(self.get(name), Some(Decl { kind: DeclKind::Builtin, .. }))
    }

    /// Whether `name` is a data type whose maximal super-type is itself.
    pub fn is_data_type(&self, name: &str) -> bool {
        name == NAT || name == BOOL
    }

    /// Body used for δ-unfolding: raw, or pre-cooked for conversion.
    pub fn def_body(&self, name: &str, cooked: Option<Mode>) -> Option<&Term> {
        match &self.get(name)?.kind {
            DeclKind::Def {
                body,
                cooked: c,
                cooked_singleton,
            } => Some(match cooked {
                None => body,
                Some(m) if m.singleton => cooked_singleton,
                Some(_) => c,
            }),
            _ => None,
        }
    }

    /// Resolves an eliminator name (`nat_rec`, `bool_ind`, `I_rec`, ...).
    pub fn eliminator(&self, name: &str) -> Option<(Name, ElimKind)> {
        let (base, kind) = match name.strip_suffix("_rec") {
            Some(b) => (b, ElimKind::Rec),
            None => (name.strip_suffix("_ind")?, ElimKind::Ind),
        };
        if base == NAT || base == BOOL || self.propdata.contains_key(base) {
            Some((Name::from(base), kind))
        } else {
            None
        }
    }

    /// Number of arguments an eliminator consumes before it can compute.
    pub fn eliminator_arity(&self, ind: &str) -> Option<usize> {
        match ind {
            NAT | BOOL => Some(4),
            _ => self.propdata(ind).map(|p| p.eliminator_arity()),
        }
    }

    pub fn eliminator_type(&self, ind: &str, kind: ElimKind, level: Universe) -> Option<Term> {
        match ind {
            NAT => Some(nat_eliminator_type(kind, level)),
            BOOL => Some(bool_eliminator_type(kind, level)),
            _ => self.propdata(ind).map(|p| p.eliminator_type(kind, level)),
        }
    }
}

fn target_sort(kind: ElimKind, level: Universe) -> Sort {
    match kind {
        ElimKind::Ind => Sort::Prop,
        ElimKind::Rec => Sort::Type(level),
    }
}

/// `ΠP:nat→S. P O → (Πn:nat. P n → P (S n)) → Πn:nat. P n`.
fn nat_eliminator_type(kind: ElimKind, level: Universe) -> Term {
    let d = Tag::Diamond;
    let s = target_sort(kind, level);
    let t = s.inhabitant_tag();
    let motive = arrow(d, nat(), Term::Sort(s));
    // Under P.
    let base = app(var(0, d), zero());
    // Under P, z: Πn:nat. P n → P (S n).
    let step = pi(
        "n",
        d,
        nat(),
        pi("ih", t, app(var(2, d), var(0, d)), app(var(3, d), succ(var(1, d)))),
    );
    // Under P, z, s.
    let concl = pi("n", d, nat(), app(var(3, d), var(0, d)));
    pi("P", d, motive, pi("z", t, base, pi("s", t, step, concl)))
}

/// `ΠP:bool→S. P true → P false → Πb:bool. P b`.
fn bool_eliminator_type(kind: ElimKind, level: Universe) -> Term {
    let d = Tag::Diamond;
    let s = target_sort(kind, level);
    let t = s.inhabitant_tag();
    let motive = arrow(d, bool_ty(), Term::Sort(s));
    let on_true = app(var(0, d), tt());
    let on_false = app(var(1, d), ff());
    let concl = pi("b", d, bool_ty(), app(var(3, d), var(0, d)));
    pi("P", d, motive, pi("t", t, on_true, pi("f", t, on_false, concl)))
}

/// `ΠA:Type(i).ΠP:A→Type(i).Πa,b:A.(P a)→(a =_A b)→(P b)`.
pub fn eqrec_type(level: Universe) -> Term {
    let d = Tag::Diamond;
    let ty = Term::Sort(Sort::Type(level));
    // Under A.
    let motive = arrow(d, var(0, d), ty);
    // Under A P a b.
    let pa = app(var(2, d), var(1, d));
    // Under A P a b p.
    let eq = leibniz(&var(4, d), &var(2, d), &var(1, d));
    // Under A P a b p e.
    let pb = app(var(4, d), var(2, d));
    pi(
        "A",
        d,
        Term::Sort(Sort::Type(level)),
        pi(
            "P",
            d,
            motive,
            pi("a", d, var(1, d), pi("b", d, var(2, d), pi("p", d, pa, pi("e", Tag::Star, eq, pb)))),
        ),
    )
}
