use irr_core::frontend::{parse_term, run_source, Elaborator, Flags, Report};
use irr_core::model::{HFSet, Model, ModelConfig};
use irr_core::reduce::{eps_normalize, Fuel, Mode, Reducer};
use irr_core::signature::{numeral, Signature};
use irr_core::subset::Bridge;
use irr_core::term::*;
use irr_core::typecheck::{ErrorKind, TypeChecker};

const ARITH: &str = r"
def plus (m n : nat) : nat := nat_rec (fun (k : nat) => nat) n (fun (k : nat) (r : nat) => S r) m
def mult (m n : nat) : nat := nat_rec (fun (k : nat) => nat) 0 (fun (k : nat) (r : nat) => plus n r) m
def pred (n : nat) : nat := nat_rec (fun (k : nat) => nat) 0 (fun (k : nat) (r : nat) => k) n
def negb (b : bool) : bool := bool_rec (fun (y : bool) => bool) false true b
def andb (a b : bool) : bool := bool_rec (fun (y : bool) => bool) b false a
def eqb (m n : nat) : bool :=
  nat_rec (fun (k : nat) => nat -> bool)
    (fun (j : nat) => nat_rec (fun (i : nat) => bool) true (fun (i : nat) (r : bool) => false) j)
    (fun (k : nat) (r : nat -> bool) (j : nat) => nat_rec (fun (i : nat) => bool) false (fun (i : nat) (s : bool) => r i) j)
    m n
def True : Prop := Pi (Q : Prop), Q -> Q
def trivial : True := fun (Q : Prop) (q : Q) => q
def False : Prop := Pi (Q : Prop), Q
def eq (A : Type 0) (a b : A) : Prop := Pi (P : A -> Prop), P a -> P b
def refl (A : Type 0) (a : A) : eq A a a := fun (P : A -> Prop) (p : P a) => p
";

fn load(src: &str) -> Report {
    let r = run_source(src, &Flags::default());
    assert_eq!(r.exit_code, 0, "{}", r.text());
    r
}

fn term(sig: &Signature, src: &str) -> Term {
    let el = Elaborator::new(TypeChecker::new(sig, Mode::base(), 100_000));
    el.elab(&Context::new(), &parse_term(src).unwrap(), None).unwrap()
}

fn nf(sig: &Signature, t: &Term) -> Term {
    Reducer::new(sig, Mode::base()).normalize(t, &mut Fuel::new(1_000_000)).unwrap()
}

#[test]
fn arithmetic_matches_machine_arithmetic() {
    let r = load(ARITH);
    let sig = &r.signature;
    for m in 0..5u64 {
        for n in 0..5u64 {
            assert_eq!(nf(sig, &term(sig, &format!("plus {m} {n}"))), numeral(m + n));
            assert_eq!(nf(sig, &term(sig, &format!("mult {m} {n}"))), numeral(m * n));
            let b = nf(sig, &term(sig, &format!("eqb {m} {n}")));
            assert_eq!(b, term(sig, if m == n { "true" } else { "false" }), "eqb {m} {n}");
        }
        assert_eq!(nf(sig, &term(sig, &format!("pred {m}"))), numeral(m.saturating_sub(1)));
    }
}

#[test]
fn boolean_connectives_match_truth_tables() {
    let r = load(ARITH);
    let sig = &r.signature;
    let lit = |b: bool| if b { "true" } else { "false" };
    for a in [false, true] {
        assert_eq!(nf(sig, &term(sig, &format!("negb {}", lit(a)))), term(sig, lit(!a)));
        for b in [false, true] {
            let got = nf(sig, &term(sig, &format!("andb {} {}", lit(a), lit(b))));
            assert_eq!(got, term(sig, lit(a && b)));
        }
    }
}

#[test]
fn equality_proofs_are_convertible() {
    let r = load(ARITH);
    let sig = &r.signature;
    let tc = TypeChecker::new(sig, Mode::base(), 100_000);
    let ctx = Context::new();
    let ty = term(sig, "eq nat 4 (plus 2 2)");
    assert!(tc.check(&ctx, &term(sig, "refl nat 4"), &ty).is_ok());
    let wrong = term(sig, "eq nat 5 (plus 2 2)");
    assert_eq!(tc.check(&ctx, &term(sig, "refl nat 4"), &wrong).unwrap_err().kind, ErrorKind::NotASubtype);
}

#[test]
fn eqrec_fires_only_on_convertible_endpoints() {
    let src = format!("{ARITH}axiom a : nat\naxiom b : nat\naxiom e : eq nat a b\naxiom f : eq nat 2 2\n");
    let r = load(&src);
    let sig = &r.signature;
    let red = Reducer::new(sig, Mode::base());
    let fires = term(sig, "eqrec nat (fun (y : nat) => nat) 2 (plus 1 1) 7 f");
    assert_eq!(nf(sig, &fires), numeral(7));
    let stuck = term(sig, "eqrec nat (fun (y : nat) => nat) a b 7 e");
    assert_eq!(red.beta_contract(&stuck, &mut Fuel::new(1_000)).unwrap(), None);
    let tc = TypeChecker::new(sig, Mode::base(), 100_000);
    assert!(tc.check(&Context::new(), &stuck, &term(sig, "nat")).is_ok());
}

#[test]
fn propdata_eliminators_compute() {
    let src = "axiom T : Prop\naxiom t0 : T\npropdata Wrap (n : nat) := wrap (t : T) : Wrap 0\n";
    let r = run_source(
        src,
        &Flags {
            propdata: true,
            ..Flags::default()
        },
    );
    assert_eq!(r.exit_code, 0, "{}", r.text());
    let sig = &r.signature;
    let red = Reducer::new(sig, Mode::base());
    let mut fuel = Fuel::new(1_000);
    // I_ind X p a (c b) ▷ p b
    let ind = term(sig, "Wrap_ind (fun (n : nat) => T) (fun (t : T) => t) 0 (wrap t0)");
    let got = red.beta_contract(&ind, &mut fuel).unwrap().unwrap();
    assert!(alpha_eq(&got, &term(sig, "(fun (t : T) => t) t0")));
    // I_rec X p a i ▷ p ε
    let rec = term(sig, "Wrap_rec (fun (n : nat) => nat) (fun (t : T) => 3) 0 (wrap t0)");
    let got = red.beta_contract(&rec, &mut fuel).unwrap().unwrap();
    let Term::App(f, arg) = got else { panic!("{got:?}") };
    assert_eq!(*arg, Term::Eps);
    assert!(alpha_eq(&f, &term(sig, "fun (t : T) => 3")));
    assert_eq!(nf(sig, &rec), numeral(3));
}

#[test]
fn universes() {
    let ok = "def a : Type 1 := Prop\ndef b : Type 1 := Type 0\ndef c : Type 1 := nat\ndef d : Type 2 := Type 0 -> Prop\n";
    load(ok);
    let cases = [
        ("def x : Type 0 := Type 0\n", ErrorKind::NotASubtype),
        ("def x : Prop := nat\n", ErrorKind::NotASubtype),
        ("def x : nat := Prop\n", ErrorKind::NotASubtype),
    ];
    for (src, kind) in cases {
        let r = run_source(src, &Flags::default());
        assert_eq!(r.first_error().map(|d| d.kind.clone()), Some(kind.to_string()), "{src}");
    }
}

#[test]
fn subset_types_live_in_the_universe_of_their_carrier() {
    let r = load("axiom P : nat -> Prop\ndef S0 : Type 0 := {x : nat | P x}\ndef S1 : Type 1 := {A : Type 0 | Pi (Q : Prop), A -> Q}\n");
    let sig = &r.signature;
    let tc = TypeChecker::new(sig, Mode::base(), 1_000);
    assert_eq!(tc.infer(&Context::new(), &term(sig, "{x : nat | P x}")).unwrap(), type_(0));
}

#[test]
fn epsilon_has_no_type() {
    let sig = Signature::new();
    let tc = TypeChecker::new(&sig, Mode::base(), 1_000);
    assert_eq!(tc.infer(&Context::new(), &Term::Eps).unwrap_err().kind, ErrorKind::Untypable);
}

#[test]
fn extraction_erases_proofs_only() {
    let r = load(&format!("{ARITH}axiom P : nat -> Prop\naxiom h : P 2\n"));
    let sig = &r.signature;
    let t = term(sig, "pair[{x : nat | P x}](plus 1 1, h)");
    let e = eps_normalize(&t, Mode::base());
    let Term::Pair(_, a, b) = &e else { panic!("{e:?}") };
    assert_eq!(**b, Term::Eps);
    assert!(alpha_eq(a, &term(sig, "plus 1 1")));
    assert_eq!(eps_normalize(&t, Mode::singleton()), term(sig, "plus 1 1"));
    assert_eq!(eps_normalize(&term(sig, "trivial"), Mode::base()), Term::Eps);
}

#[test]
fn model_clauses() {
    let r = load(&format!("{ARITH}axiom P : Prop\naxiom h : P\n"));
    let sig = &r.signature;
    let m = Model::new(sig, ModelConfig::default());
    let ctx = Context::new();
    let v = |s: &str| m.interp(&ctx, &term(sig, s), &vec![]).unwrap();
    let (empty, unit) = (HFSet::empty(), HFSet::unit());
    assert_eq!(v("Prop"), HFSet::from_vec(vec![empty.clone(), unit.clone()]));
    assert_eq!(v("trivial"), empty);
    assert_eq!(v("h"), empty);
    assert_eq!(v("True"), unit);
    assert_eq!(v("False"), empty);
    assert_eq!(v("Pi (b : bool), True"), unit);
    assert_eq!(v("pair[nat * bool](2, true)"), HFSet::pair(v("2"), v("true")));
    assert_eq!(v("fst pair[nat * bool](2, true)"), v("2"));
    assert_eq!(v("eqrec nat (fun (y : nat) => nat) 1 1 2 (refl nat 1)"), v("2"));
    assert_eq!(v("eq nat 1 1"), unit);
    assert_eq!(v("eq nat 0 1"), empty);
}

#[test]
fn model_functions_are_graphs() {
    let r = load(ARITH);
    let sig = &r.signature;
    let m = Model::new(sig, ModelConfig::default());
    let ctx = Context::new();
    let v = |s: &str| m.interp(&ctx, &term(sig, s), &vec![]).unwrap();
    let negb = v("negb");
    for (a, b) in [("true", "false"), ("false", "true")] {
        assert_eq!(negb.apply(&v(a)), Some(v(b)));
    }
    let andb = v("andb");
    for a in [false, true] {
        for b in [false, true] {
            let lit = |x: bool| if x { "true" } else { "false" };
            let got = andb.apply(&v(lit(a))).and_then(|g| g.apply(&v(lit(b))));
            assert_eq!(got, Some(v(lit(a && b))));
        }
    }
    assert!(m.check_model(&ctx, &term(sig, "negb"), &term(sig, "bool -> bool"), &vec![]).is_ok());
}

#[test]
fn maximal_supertypes() {
    let r = load("axiom P : nat -> Prop\naxiom Q : bool -> Prop\n");
    let sig = &r.signature;
    let b = Bridge::new(sig, 10_000);
    let cases = [
        ("{x : nat | P x}", "nat"),
        ("{y : {x : nat | P x} | P (fst y)}", "nat"),
        ("bool -> {b : bool | Q b}", "bool -> bool"),
        ("{x : nat | P x} * {b : bool | Q b}", "nat * bool"),
    ];
    for (a, mu) in cases {
        assert!(alpha_eq(&b.mu(&term(sig, a)).unwrap(), &term(sig, mu)), "{a}");
    }
    assert!(b.mu(&term(sig, "Prop")).is_err());
}
