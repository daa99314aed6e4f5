//! A proof-checking kernel for a fibrational virtual double type theory.
//!
//! The library implements:
//!
//! - the abstract syntax of signatures, the four expression sorts, protype
//!   isomorphisms, and judgments ([`syntax`]);
//! - a textual surface format (`.fvdt`) with a lexer, parser, elaborator,
//!   and pretty-printer ([`surface`]);
//! - the explicit-substitution engine, including the directed restriction
//!   rewrites and substitution equality ([`subst`]);
//! - a bidirectional derivability checker producing replayable derivation
//!   trees ([`checker`]);
//! - the proterm equational theory: a normalizer for the oriented fragment
//!   and a verifier for step-by-step equality scripts ([`equality`]);
//! - rule plugins for the optional constructors: path protypes, composition
//!   protypes, filler protypes, comprehension types, and involution
//!   ([`extensions`]);
//! - finite models: relations over finite sets and profunctors between
//!   finite categories, with an interpretation function and exhaustive
//!   law/soundness checkers ([`models`]);
//! - a batch front end with machine-readable diagnostics ([`cli`]).
//!
//! Checking is pure: a [`theory::Theory`] is immutable once elaborated and
//! may be shared freely across threads.

pub mod checker;
pub mod equality;
mod rename;
pub mod subst;
pub mod syntax;
pub mod theory;

pub use syntax::{
    alpha_equal, free_variables, validate_interleaving, wf_signature, Context, EqJudgment,
    Extension, IsoExpr, Judgment, ProContext, ProtermExpr, ProtypeExpr, Signature, SubstEq,
    TermExpr, TypeExpr,
};
