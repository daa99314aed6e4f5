//! The ambient theory a file elaborates to: the signature plus the named
//! isomorphisms and proven equalities accumulated so far. Immutable while
//! goals are being checked; goal runners extend it between goals.

use crate::syntax::*;

/// A named protype isomorphism that has been checked.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoDef {
    pub left: Context,
    pub right: Context,
    pub lhs: ProtypeExpr,
    pub rhs: ProtypeExpr,
    pub body: IsoExpr,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Theory {
    pub sig: Signature,
    /// Named isomorphisms, in declaration order.
    pub isos: Vec<(String, IsoDef)>,
    /// Equalities proven by earlier goals, usable as rewrite rules and as
    /// instances: named `equal` goals under their name, anonymous ones
    /// under "".
    pub lemmas: Vec<(String, EqAxiom)>,
}

/// A term-level rewrite rule extracted from a substitution-equality axiom
/// or lemma. The variables of `vars` are the rule's metavariables.
#[derive(Debug, Clone, PartialEq)]
pub struct TermRule {
    pub name: String,
    pub vars: Context,
    pub lhs: TermExpr,
    pub rhs: TermExpr,
}

pub(crate) fn term_size(t: &TermExpr) -> usize {
    match t {
        TermExpr::Var(_) | TermExpr::UnitTm => 1,
        TermExpr::App { args, .. } => 1 + args.iter().map(term_size).sum::<usize>(),
        TermExpr::Pair(a, b) => 1 + term_size(a) + term_size(b),
        TermExpr::Proj0(a) | TermExpr::Proj1(a) | TermExpr::TabL(a) | TermExpr::TabR(a) => {
            1 + term_size(a)
        }
        TermExpr::Subst { inner, subst } => {
            1 + term_size(inner) + subst.iter().map(|(c, _)| term_size(c)).sum::<usize>()
        }
        TermExpr::TabFactor { left, right, .. } => 2 + term_size(left) + term_size(right),
    }
}

impl Theory {
    pub fn new(sig: Signature) -> Theory {
        Theory { sig, isos: Vec::new(), lemmas: Vec::new() }
    }

    pub fn iso(&self, name: &str) -> Option<&IsoDef> {
        self.isos.iter().rev().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn add_iso(&mut self, name: String, def: IsoDef) {
        self.isos.push((name, def));
    }

    pub fn add_lemma(&mut self, name: String, ax: EqAxiom) {
        self.lemmas.push((name, ax));
    }

    /// All equational facts: signature axioms first, then proven lemmas.
    pub fn eq_facts(&self) -> impl Iterator<Item = &(String, EqAxiom)> + DoubleEndedIterator {
        self.sig.eq_axioms.iter().chain(self.lemmas.iter())
    }

    pub fn eq_fact(&self, name: &str) -> Option<&EqAxiom> {
        self.eq_facts().rev().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    /// Oriented term-level rewrite rules: the componentwise equations of
    /// substitution-equality facts whose left side is strictly larger than
    /// the right. Facts that do not orient are available to scripts only.
    pub fn term_rewrites(&self) -> Vec<TermRule> {
        let mut out = Vec::new();
        for (name, ax) in self.eq_facts() {
            if let EqAxiom::Subst(se) = ax {
                for (i, (l, r)) in se.lhs.iter().zip(se.rhs.iter()).enumerate() {
                    let (lhs, rhs, tag) = if term_size(l) > term_size(r) {
                        (l.clone(), r.clone(), "")
                    } else if term_size(r) > term_size(l) {
                        (r.clone(), l.clone(), "~")
                    } else {
                        continue;
                    };
                    out.push(TermRule {
                        name: format!("{name}.{i}{tag}"),
                        vars: se.src.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        out
    }
}
