//! Terms, identities and their evaluation in finite algebras.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::odometer::Odometer;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(op: &str, args: Vec<Term>) -> Term {
        Term::App(op.to_string(), args)
    }

    pub fn constant(op: &str) -> Term {
        Term::App(op.to_string(), Vec::new())
    }

    pub fn unary(op: &str, x: Term) -> Term {
        Term::App(op.to_string(), vec![x])
    }

    pub fn binary(op: &str, x: Term, y: Term) -> Term {
        Term::App(op.to_string(), vec![x, y])
    }

    /// One more than the largest variable index, or 0 for ground terms.
    pub fn variable_bound(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::App(_, args) => args.iter().map(Term::variable_bound).max().unwrap_or(0),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Replaces variable `i` by `subst[i]`.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        match self {
            Term::Var(i) => subst.get(*i).cloned().unwrap_or(Term::Var(*i)),
            Term::App(op, args) => {
                Term::App(op.clone(), args.iter().map(|a| a.substitute(subst)).collect())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(op, args) if args.is_empty() => write!(f, "{op}"),
            Term::App(op, args) => {
                write!(f, "{op}(")?;
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

/// A term resolved against one signature, ready for repeated evaluation.
#[derive(Clone, Debug)]
pub(crate) enum Compiled {
    Var(usize),
    Op(usize, Box<[Compiled]>),
}

impl Compiled {
    pub(crate) fn new(alg: &FiniteAlgebra, t: &Term) -> Result<Compiled> {
        match t {
            Term::Var(i) => Ok(Compiled::Var(*i)),
            Term::App(name, args) => {
                let op = alg
                    .op(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                let arity = alg.signature().arity(op);
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: name.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                let children = args
                    .iter()
                    .map(|a| Compiled::new(alg, a))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Compiled::Op(op, children.into_boxed_slice()))
            }
        }
    }

    pub(crate) fn eval(&self, alg: &FiniteAlgebra, env: &[usize]) -> usize {
        match self {
            Compiled::Var(i) => env[*i],
            Compiled::Op(op, children) => match children.len() {
                0 => alg.table(*op)[0],
                1 => alg.apply1(*op, children[0].eval(alg, env)),
                2 => alg.apply2(*op, children[0].eval(alg, env), children[1].eval(alg, env)),
                _ => {
                    let args: Vec<usize> = children.iter().map(|c| c.eval(alg, env)).collect();
                    alg.apply(*op, &args)
                }
            },
        }
    }
}

/// Value of `t` in `alg` with variable `x_i` bound to `env[i]`.
pub fn eval_term(alg: &FiniteAlgebra, t: &Term, env: &[usize]) -> Result<usize> {
    let bound = t.variable_bound();
    if bound > env.len() {
        return Err(Error::VariableOutOfRange {
            index: bound - 1,
            len: env.len(),
        });
    }
    if let Some(&bad) = env.iter().find(|&&e| e >= alg.size()) {
        return Err(Error::ElementOutOfRange {
            element: bad,
            size: alg.size(),
        });
    }
    Ok(Compiled::new(alg, t)?.eval(alg, env))
}

/// An equation `lhs ≈ rhs` in the variables `x_0 … x_{variable_count-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub variable_count: usize,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term, variable_count: usize) -> Result<Identity> {
        let bound = lhs.variable_bound().max(rhs.variable_bound());
        if bound > variable_count {
            return Err(Error::VariableOutOfRange {
                index: bound - 1,
                len: variable_count,
            });
        }
        Ok(Identity {
            lhs,
            rhs,
            variable_count,
        })
    }

    /// Identity using exactly the variables that occur in it.
    pub fn from_terms(lhs: Term, rhs: Term) -> Identity {
        let variable_count = lhs.variable_bound().max(rhs.variable_bound());
        Identity {
            lhs,
            rhs,
            variable_count,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub holds: bool,
    /// Lexicographically least failing assignment, when the identity fails.
    pub counterexample: Option<Vec<usize>>,
}

/// Exhaustive check of an identity under the default evaluation cap.
pub fn holds_identity(alg: &FiniteAlgebra, id: &Identity) -> Result<IdentityVerdict> {
    holds_identity_capped(alg, id, crate::Caps::default().identity_evaluations)
}

/// Exhaustive check over all `n^variable_count` assignments, refusing to
/// start when that count exceeds `cap`.
pub fn holds_identity_capped(alg: &FiniteAlgebra, id: &Identity, cap: u64) -> Result<IdentityVerdict> {
    let bound = id.lhs.variable_bound().max(id.rhs.variable_bound());
    if bound > id.variable_count {
        return Err(Error::VariableOutOfRange {
            index: bound - 1,
            len: id.variable_count,
        });
    }
    let total = (alg.size() as u64).checked_pow(id.variable_count as u32);
    match total {
        Some(t) if t <= cap => {}
        _ => {
            return Err(Error::CapExceeded {
                what: "identity assignments",
                size: total.unwrap_or(u64::MAX),
                cap,
            })
        }
    }
    let lhs = Compiled::new(alg, &id.lhs)?;
    let rhs = Compiled::new(alg, &id.rhs)?;
    let mut od = Odometer::new(alg.size(), id.variable_count);
    while let Some(env) = od.next() {
        if lhs.eval(alg, env) != rhs.eval(alg, env) {
            return Ok(IdentityVerdict {
                holds: false,
                counterexample: Some(env.to_vec()),
            });
        }
    }
    Ok(IdentityVerdict {
        holds: true,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residuated::names::{IMP, JOIN, MEET, MUL, TOP};
    use crate::tnorm::{boolean_algebra, lukasiewicz_chain};

    #[test]
    fn evaluates_join_and_projection() {
        let b = boolean_algebra();
        let t = Term::binary(JOIN, Term::var(0), Term::var(1));
        assert_eq!(eval_term(&b, &t, &[0, 1]).unwrap(), 1);
        let l6 = lukasiewicz_chain(6);
        assert_eq!(eval_term(&l6, &Term::var(0), &[5]).unwrap(), 5);
    }

    #[test]
    fn lukasiewicz_square_of_half_is_zero() {
        let l2 = lukasiewicz_chain(2);
        let t = Term::binary(MUL, Term::var(0), Term::var(0));
        assert_eq!(eval_term(&l2, &t, &[1]).unwrap(), 0);
    }

    #[test]
    fn evaluation_errors() {
        let b = boolean_algebra();
        assert!(matches!(
            eval_term(&b, &Term::constant("nope"), &[]),
            Err(Error::UnknownSymbol(_))
        ));
        assert!(matches!(
            eval_term(&b, &Term::unary(MEET, Term::var(0)), &[0]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            eval_term(&b, &Term::var(2), &[0]),
            Err(Error::VariableOutOfRange { .. })
        ));
    }

    #[test]
    fn identity_checks() {
        let b = boolean_algebra();
        let x = Term::var(0);
        let idem = Identity::from_terms(Term::binary(MEET, x.clone(), x.clone()), x.clone());
        assert!(holds_identity(&b, &idem).unwrap().holds);

        let l2 = lukasiewicz_chain(2);
        let sq = Identity::from_terms(Term::binary(MUL, x.clone(), x.clone()), x.clone());
        let v = holds_identity(&l2, &sq).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample, Some(vec![1]));

        let y = Term::var(1);
        let prelin = Identity::from_terms(
            Term::binary(
                JOIN,
                Term::binary(IMP, x.clone(), y.clone()),
                Term::binary(IMP, y, x),
            ),
            Term::constant(TOP),
        );
        assert!(holds_identity(&l2, &prelin).unwrap().holds);
    }

    #[test]
    fn identity_cap_enforced() {
        let l2 = lukasiewicz_chain(2);
        let id = Identity::new(Term::var(0), Term::var(0), 20).unwrap();
        assert!(matches!(
            holds_identity(&l2, &id),
            Err(Error::CapExceeded { .. })
        ));
        assert!(Identity::new(Term::var(3), Term::var(0), 2).is_err());
    }
}
