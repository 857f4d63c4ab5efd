use std::collections::BTreeMap;
use std::fmt;

use super::{Elem, FiniteAlgebra, Signature};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

/// Values for variables, by name.
pub type Assignment = BTreeMap<String, Elem>;

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(op.into(), args)
    }

    pub fn constant(op: impl Into<String>) -> Term {
        Term::App(op.into(), Vec::new())
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Checks operation names and arities against a signature.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(name, args) => {
                let op = sig
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownOperation(name.clone()))?;
                if sig.arity(op) != args.len() {
                    return Err(Error::ArityMismatch {
                        name: name.clone(),
                        expected: sig.arity(op),
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(sig))
            }
        }
    }

    /// Replaces every occurrence of an operation by a term over `x`, `y`, …
    /// (the placeholders `_0`, `_1`, …).
    pub fn expand(&self, op: &str, body: &Term) -> Term {
        match self {
            Term::Var(v) => Term::Var(v.clone()),
            Term::App(name, args) => {
                let args: Vec<Term> = args.iter().map(|a| a.expand(op, body)).collect();
                if name == op {
                    body.substitute(&|v: &str| {
                        v.strip_prefix('_')
                            .and_then(|i| i.parse::<usize>().ok())
                            .and_then(|i| args.get(i).cloned())
                    })
                } else {
                    Term::App(name.clone(), args)
                }
            }
        }
    }

    pub fn substitute(&self, f: &dyn Fn(&str) -> Option<Term>) -> Term {
        match self {
            Term::Var(v) => f(v).unwrap_or_else(|| Term::Var(v.clone())),
            Term::App(name, args) => {
                Term::App(name.clone(), args.iter().map(|a| a.substitute(f)).collect())
            }
        }
    }

    pub fn uses_op(&self, op: &str) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(name, args) => name == op || args.iter().any(|a| a.uses_op(op)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let infix = |name: &str| match name {
            "meet" => Some("^"),
            "join" => Some("v"),
            "fuse" => Some("*"),
            "imp" => Some("->"),
            _ => None,
        };
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(name, args) if args.is_empty() && name == "e" => write!(f, "e"),
            Term::App(name, args) if name == "neg" && args.len() == 1 => write!(f, "~{}", Paren(&args[0])),
            Term::App(name, args) if args.len() == 2 && infix(name).is_some() => {
                write!(f, "{} {} {}", Paren(&args[0]), infix(name).unwrap(), Paren(&args[1]))
            }
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Paren<'a>(&'a Term);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Term::App(name, args) if args.len() == 2 && name != "neg" => write!(f, "({})", self.0),
            t => write!(f, "{t}"),
        }
    }
}

/// Bottom-up evaluation.
pub fn eval(t: &Term, a: &FiniteAlgebra, v: &Assignment) -> Result<Elem> {
    match t {
        Term::Var(name) => v
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnassignedVariable(name.clone())),
        Term::App(name, args) => {
            let op = a.op(name)?;
            let arity = a.signature().arity(op);
            if arity != args.len() {
                return Err(Error::ArityMismatch {
                    name: name.clone(),
                    expected: arity,
                    got: args.len(),
                });
            }
            let vals = args
                .iter()
                .map(|s| eval(s, a, v))
                .collect::<Result<Vec<_>>>()?;
            Ok(a.apply(op, &vals))
        }
    }
}

/// A term with operation and variable names resolved to indices, for
/// tight evaluation loops.
#[derive(Clone, Debug)]
pub enum Compiled {
    Var(usize),
    App(usize, Vec<Compiled>),
}

impl Compiled {
    pub fn new(t: &Term, sig: &Signature, vars: &[String]) -> Result<Compiled> {
        t.check(sig)?;
        Self::build(t, sig, vars)
    }

    fn build(t: &Term, sig: &Signature, vars: &[String]) -> Result<Compiled> {
        Ok(match t {
            Term::Var(v) => Compiled::Var(
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnassignedVariable(v.clone()))?,
            ),
            Term::App(name, args) => Compiled::App(
                sig.index_of(name).expect("checked"),
                args.iter()
                    .map(|a| Self::build(a, sig, vars))
                    .collect::<Result<_>>()?,
            ),
        })
    }

    pub fn eval(&self, a: &FiniteAlgebra, vals: &[Elem]) -> Elem {
        match self {
            Compiled::Var(i) => vals[*i],
            Compiled::App(op, args) => match args.len() {
                0 => a.constant(*op),
                1 => a.apply1(*op, args[0].eval(a, vals)),
                2 => a.apply2(*op, args[0].eval(a, vals), args[1].eval(a, vals)),
                _ => {
                    let v: Vec<Elem> = args.iter().map(|s| s.eval(a, vals)).collect();
                    a.apply(*op, &v)
                }
            },
        }
    }
}

/// `premises ⟹ conclusion`; no premises means an equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiEquation {
    pub premises: Vec<(Term, Term)>,
    pub conclusion: (Term, Term),
}

impl QuasiEquation {
    pub fn equation(lhs: Term, rhs: Term) -> Self {
        QuasiEquation {
            premises: Vec::new(),
            conclusion: (lhs, rhs),
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (s, t) in self.premises.iter().chain(std::iter::once(&self.conclusion)) {
            s.collect_vars(&mut out);
            t.collect_vars(&mut out);
        }
        out
    }

    pub fn map_terms(&self, f: impl Fn(&Term) -> Term) -> QuasiEquation {
        QuasiEquation {
            premises: self.premises.iter().map(|(s, t)| (f(s), f(t))).collect(),
            conclusion: (f(&self.conclusion.0), f(&self.conclusion.1)),
        }
    }

    pub fn compile(&self, sig: &Signature) -> Result<CompiledQe> {
        let vars = self.variables();
        let pair = |(s, t): &(Term, Term)| -> Result<(Compiled, Compiled)> {
            Ok((Compiled::new(s, sig, &vars)?, Compiled::new(t, sig, &vars)?))
        };
        Ok(CompiledQe {
            premises: self.premises.iter().map(pair).collect::<Result<_>>()?,
            conclusion: pair(&self.conclusion)?,
            vars,
        })
    }
}

impl fmt::Display for QuasiEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, t)) in self.premises.iter().enumerate() {
            if i > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{s} = {t}")?;
        }
        if !self.premises.is_empty() {
            write!(f, " => ")?;
        }
        write!(f, "{} = {}", self.conclusion.0, self.conclusion.1)
    }
}

#[derive(Clone, Debug)]
pub struct CompiledQe {
    pub vars: Vec<String>,
    pub premises: Vec<(Compiled, Compiled)>,
    pub conclusion: (Compiled, Compiled),
}

impl CompiledQe {
    pub fn premises_hold(&self, a: &FiniteAlgebra, vals: &[Elem]) -> bool {
        self.premises
            .iter()
            .all(|(s, t)| s.eval(a, vals) == t.eval(a, vals))
    }

    pub fn holds(&self, a: &FiniteAlgebra, vals: &[Elem]) -> bool {
        !self.premises_hold(a, vals)
            || self.conclusion.0.eval(a, vals) == self.conclusion.1.eval(a, vals)
    }
}
