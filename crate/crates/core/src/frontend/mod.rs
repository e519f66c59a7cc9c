//! Vernacular front end: parsing, elaboration, printing and the command
//! processor behind the `irr` binary.

pub mod elab;
pub mod lexer;
pub mod parser;
pub mod print;
pub mod syntax;

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::model::{Model, ModelConfig, ModelError};
use crate::reduce::{eps_normalize, Fuel, Mode};
use crate::signature::Signature;
use crate::subset::{Bridge, SubsetError};
use crate::term::{Context, Term};
use crate::typecheck::{Declaration, ErrorKind, TypeChecker, TypeError};

pub use elab::Elaborator;
pub use lexer::Pos;
pub use parser::{parse, parse_term, ParseError};
pub use print::{print_closed, print_term, to_surface};
pub use syntax::{Command, DirectiveKind, Expr, Located};

/// A located error from any stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub pos: Pos,
    pub kind: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(pos: Pos, kind: String, message: String) -> Diagnostic {
        Diagnostic { pos, kind, message }
    }

    pub fn from_type_error(pos: Pos, e: &TypeError) -> Diagnostic {
        let mut message = e.message.clone();
        if let (Some(x), Some(y)) = (&e.expected, &e.actual) {
            if x != y {
                let _ = write!(message, "; expected {}, found {}", print_closed(x), print_closed(y));
            } else {
                let _ = write!(message, "; found {}", print_closed(y));
            }
        }
        if let Some(t) = &e.term {
            let _ = write!(message, "; in {}", print_closed(t));
        }
        Diagnostic::new(pos, e.kind.to_string(), message)
    }

    fn from_subset(pos: Pos, e: &SubsetError) -> Diagnostic {
        match e {
            SubsetError::NoSupertype(why) => Diagnostic::new(pos, "NoSupertype".into(), why.clone()),
            SubsetError::Type(t) => Diagnostic::from_type_error(pos, t),
        }
    }

    fn from_model(pos: Pos, e: &ModelError) -> Diagnostic {
        let kind = match e {
            ModelError::NotFinitelyModelable(_) => "NotFinitelyModelable",
            ModelError::Undefined(_) => "Undefined",
            ModelError::ModelViolation(_) => "ModelViolation",
        };
        Diagnostic::new(pos, kind.into(), e.to_string())
    }

    /// Process exit status for a run stopped by this error.
    pub fn exit_code(&self) -> i32 {
        match self.kind.as_str() {
            "ParseError" => 2,
            "FuelExhausted" => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Flags {
    pub fuel: u64,
    pub eta: bool,
    pub singleton: bool,
    pub propdata: bool,
    pub model_bound: usize,
    pub keep_going: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            fuel: 100_000,
            eta: false,
            singleton: false,
            propdata: false,
            model_bound: ModelConfig::default().rank,
            keep_going: false,
        }
    }
}

impl Flags {
    pub fn mode(&self) -> Mode {
        let m = if self.singleton { Mode::singleton() } else { Mode::base() };
        if self.eta {
            m.with_eta()
        } else {
            m
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// One line of the report.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub status: Status,
    pub pos: Pos,
    /// Declared name, or the directive with its printed argument.
    pub name: String,
    /// Type of a declaration or `#check`/`#infer`; result of other directives.
    pub result: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Diagnostic>,
    #[serde(skip)]
    sep: &'static str,
}

impl Entry {
    fn ok(pos: Pos, name: String, sep: &'static str, result: Option<String>) -> Entry {
        Entry {
            status: Status::Ok,
            pos,
            name,
            result,
            error: None,
            sep,
        }
    }

    fn error(name: String, d: Diagnostic) -> Entry {
        Entry {
            status: Status::Error,
            pos: d.pos,
            name,
            result: None,
            error: Some(d),
            sep: "",
        }
    }

    pub fn line(&self) -> String {
        match (&self.error, &self.result) {
            (Some(d), _) => format!("ERROR {} {} {}", d.pos, d.kind, d.message),
            (None, Some(r)) => format!("OK {}{}{}", self.name, self.sep, r),
            (None, None) => format!("OK {}", self.name),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
    pub declarations: usize,
    pub directives: usize,
    pub errors: usize,
    pub exit_code: i32,
    #[serde(skip)]
    pub signature: Signature,
}

impl Report {
    pub fn summary(&self) -> String {
        format!(
            "SUMMARY {} declarations checked, {} directives evaluated, {} errors",
            self.declarations, self.directives, self.errors
        )
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let _ = writeln!(s, "{}", e.line());
        }
        let _ = writeln!(s, "{}", self.summary());
        s
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The last successful entry with the given name.
    pub fn find(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().rev().find(|e| e.status == Status::Ok && e.name == name)
    }

    pub fn first_error(&self) -> Option<&Diagnostic> {
        self.entries.iter().find_map(|e| e.error.as_ref())
    }
}

/// Processes commands against a growing signature.
pub struct Session {
    pub sig: Signature,
    pub flags: Flags,
}

const NO_NAMES: &[&str] = &[];
const TYPE_SEP: &str = " : ";
const RESULT_SEP: &str = " ~> ";

impl Session {
    pub fn new(flags: Flags) -> Session {
        Session {
            sig: Signature::new(),
            flags,
        }
    }

    fn tc(&self) -> TypeChecker<'_> {
        TypeChecker::new(&self.sig, self.flags.mode(), self.flags.fuel)
    }

    fn declare(&mut self, pos: Pos, d: Declaration) -> Result<(), Diagnostic> {
        if d.name() == "eqrec" {
            return Err(Diagnostic::new(
                pos,
                ErrorKind::IllFormedDeclaration.to_string(),
                "eqrec is reserved".into(),
            ));
        }
        let sig = self
            .tc()
            .check_declaration(&d)
            .map_err(|e| Diagnostic::from_type_error(pos, &e))?;
        self.sig = sig;
        Ok(())
    }

    /// Runs one command; returns the report entry for it.
    pub fn run(&mut self, cmd: &Located) -> Result<Entry, Diagnostic> {
        let pos = cmd.pos;
        let ctx = Context::new();
        match &cmd.command {
            Command::Def { name, params, ty, body } => {
                let (ty, body) = wrap_params(params, ty.as_ref(), body);
                let el = Elaborator::new(self.tc());
                let ty = ty.map(|t| el.elab_type(&ctx, &t)).transpose()?;
                let (body, ty) = el.elab_checked(&ctx, &body, ty.as_ref())?;
                self.declare(
                    pos,
                    Declaration::Def {
                        name: name.as_str().into(),
                        ty: Some(ty.clone()),
                        body,
                    },
                )?;
                Ok(Entry::ok(pos, name.clone(), TYPE_SEP, Some(print_closed(&ty))))
            }
            Command::Axiom { name, params, ty } => {
                let ty = wrap_pi(params, ty);
                let ty = Elaborator::new(self.tc()).elab_type(&ctx, &ty)?;
                self.declare(
                    pos,
                    Declaration::Axiom {
                        name: name.as_str().into(),
                        ty: ty.clone(),
                    },
                )?;
                Ok(Entry::ok(pos, name.clone(), TYPE_SEP, Some(print_closed(&ty))))
            }
            Command::PropData {
                name,
                params,
                ctor,
                args,
                result,
            } => {
                if !self.flags.propdata {
                    return Err(Diagnostic::new(
                        pos,
                        ErrorKind::IllFormedDeclaration.to_string(),
                        "propdata declarations require --propdata".into(),
                    ));
                }
                let info = Elaborator::new(self.tc()).propdata(name, params, ctor, args, result)?;
                let family = info.family_type();
                self.declare(pos, Declaration::PropData(info))?;
                Ok(Entry::ok(pos, name.clone(), TYPE_SEP, Some(print_closed(&family))))
            }
            Command::Directive { kind, args } => self.directive(pos, *kind, args),
        }
    }

    fn directive(&mut self, pos: Pos, kind: DirectiveKind, args: &[Expr]) -> Result<Entry, Diagnostic> {
        let ctx = Context::new();
        let tc = self.tc();
        let el = Elaborator::new(tc);
        let label = |t: &Term| format!("#{} {}", kind.name(), print_closed(t));
        let fuel_err = || Diagnostic::new(pos, ErrorKind::FuelExhausted.to_string(), "fuel exhausted".into());
        match kind {
            DirectiveKind::Check => {
                let ty = el.elab_type(&ctx, &args[1])?;
                let (t, ty) = el.elab_checked(&ctx, &args[0], Some(&ty))?;
                Ok(Entry::ok(pos, label(&t), TYPE_SEP, Some(print_closed(&ty))))
            }
            DirectiveKind::Infer => {
                let (t, ty) = el.elab_checked(&ctx, &args[0], None)?;
                Ok(Entry::ok(pos, label(&t), TYPE_SEP, Some(print_closed(&ty))))
            }
            DirectiveKind::Normalize => {
                let (t, _) = el.elab_checked(&ctx, &args[0], None)?;
                let nf = tc
                    .reducer()
                    .normalize(&t, &mut Fuel::new(self.flags.fuel))
                    .map_err(|_| fuel_err())?;
                Ok(Entry::ok(pos, label(&t), RESULT_SEP, Some(print_closed(&nf))))
            }
            DirectiveKind::Extract => {
                let (t, _) = el.elab_checked(&ctx, &args[0], None)?;
                let e = eps_normalize(&t, tc.mode);
                Ok(Entry::ok(pos, label(&t), RESULT_SEP, Some(print_closed(&e))))
            }
            DirectiveKind::Convert => {
                let (a, _) = el.elab_checked(&ctx, &args[0], None)?;
                let (b, _) = el.elab_checked(&ctx, &args[1], None)?;
                let name = format!("#convert {} {}", syntax::print_atom(&to_surface(&a, NO_NAMES)), syntax::print_atom(&to_surface(&b, NO_NAMES)));
                match tc.convert(&a, &b) {
                    Ok(true) => Ok(Entry::ok(pos, name, RESULT_SEP, Some("true".into()))),
                    Ok(false) => Err(Diagnostic::new(
                        pos,
                        ErrorKind::NotConvertible.to_string(),
                        format!("{} and {} are not convertible", print_closed(&a), print_closed(&b)),
                    )),
                    Err(e) => Err(Diagnostic::from_type_error(pos, &e)),
                }
            }
            DirectiveKind::Mu | DirectiveKind::Coerce | DirectiveKind::Tcc => {
                let a = el.elab_type(&ctx, &args[0])?;
                let bridge = Bridge {
                    tc: TypeChecker::new(&self.sig, Mode::base(), self.flags.fuel),
                };
                let sub = |e: SubsetError| Diagnostic::from_subset(args[0].pos, &e);
                let (result, ty) = match kind {
                    DirectiveKind::Mu => (bridge.mu(&a).map_err(sub)?, None),
                    DirectiveKind::Coerce => (
                        bridge.check_mu_bar(&ctx, &a).map_err(sub)?,
                        Some(bridge.mu_bar_type(&a).map_err(sub)?),
                    ),
                    _ => {
                        bridge.check_pi_bar(&ctx, &a).map_err(sub)?;
                        (bridge.pi_pred(&a).map_err(sub)?, Some(bridge.pi_pred_type(&a).map_err(sub)?))
                    }
                };
                let mut r = print_closed(&result);
                if let Some(ty) = ty {
                    let _ = write!(r, " : {}", print_closed(&ty));
                }
                Ok(Entry::ok(pos, label(&a), RESULT_SEP, Some(r)))
            }
            DirectiveKind::Model => {
                let ty = el.elab_type(&ctx, &args[1])?;
                let (t, ty) = el.elab_checked(&ctx, &args[0], Some(&ty))?;
                let model = Model::new(
                    &self.sig,
                    ModelConfig {
                        rank: self.flags.model_bound,
                        ..ModelConfig::default()
                    },
                );
                let env = Vec::new();
                let merr = |e: ModelError| Diagnostic::from_model(pos, &e);
                model.check_model(&ctx, &t, &ty, &env).map_err(merr)?;
                let v = model.interp(&ctx, &t, &env).map_err(merr)?;
                let name = format!("#model {} : {}", print_closed(&t), print_closed(&ty));
                Ok(Entry::ok(pos, name, RESULT_SEP, Some(v.to_string())))
            }
        }
    }
}

fn wrap_pi(params: &[syntax::Group], ty: &Expr) -> Expr {
    if params.is_empty() {
        ty.clone()
    } else {
        Expr::new(syntax::ExprKind::Pi(params.to_vec(), Box::new(ty.clone())), ty.pos)
    }
}

fn wrap_params(params: &[syntax::Group], ty: Option<&Expr>, body: &Expr) -> (Option<Expr>, Expr) {
    if params.is_empty() {
        return (ty.cloned(), body.clone());
    }
    let body = Expr::new(syntax::ExprKind::Fun(params.to_vec(), Box::new(body.clone())), body.pos);
    (ty.map(|t| wrap_pi(params, t)), body)
}

/// Parses and runs a whole source text.
pub fn run_source(src: &str, flags: &Flags) -> Report {
    let mut session = Session::new(*flags);
    let mut report = Report {
        entries: Vec::new(),
        declarations: 0,
        directives: 0,
        errors: 0,
        exit_code: 0,
        signature: Signature::new(),
    };
    let cmds = match parse(src) {
        Ok(c) => c,
        Err(e) => {
            let d = Diagnostic::new(e.pos, "ParseError".into(), e.to_string());
            report.exit_code = d.exit_code();
            report.errors = 1;
            report.entries.push(Entry::error(String::new(), d));
            return report;
        }
    };
    for cmd in &cmds {
        let is_directive = matches!(cmd.command, Command::Directive { .. });
        match session.run(cmd) {
            Ok(entry) => {
                if is_directive {
                    report.directives += 1;
                } else {
                    report.declarations += 1;
                }
                report.entries.push(entry);
            }
            Err(d) => {
                report.errors += 1;
                if report.exit_code == 0 {
                    report.exit_code = d.exit_code();
                }
                report.entries.push(Entry::error(cmd.command.to_string(), d));
                if !flags.keep_going {
                    break;
                }
            }
        }
    }
    report.signature = session.sig;
    report
}

pub fn run_file(path: &Path, flags: &Flags) -> std::io::Result<Report> {
    let src = std::fs::read_to_string(path)?;
    Ok(run_source(&src, flags))
}
