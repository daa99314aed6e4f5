//! Bidirectional derivability checker for all judgment forms.
//!
//! Every successful check returns a [`Derivation`]: the rule name, the
//! premise derivations, and the conclusion judgment. Protype equality
//! during checking is alpha-equality after substitution normalization;
//! coercions across isomorphic protypes must be explicit iso applications.

mod iso;
mod proterm;

pub use iso::check_iso;
pub use proterm::{check_proterm, infer_proterm};
pub(crate) use proterm::{match_boundary_pub, tsub_abstract_expected_pub, tsub_inner_pc_pub};

pub(crate) fn match_contexts_pub(
    decl: &[Context],
    actual: &[Context],
) -> CheckResult<crate::rename::VarMap> {
    match_contexts(decl, actual)
}

/// Crate-internal view of the slice machinery for the rewrite engine.
pub(crate) fn split_slices_pub(
    pc: &ProContext,
    args: &[&ProtermExpr],
) -> CheckResult<Vec<PcSlice>> {
    split_slices(pc, args)
}

pub(crate) fn sub_pc_pub(pc: &ProContext, s: PcSlice) -> ProContext {
    sub_pc(pc, s)
}

use crate::rename::{rename_context, rename_protype, VarMap};
use crate::subst::{protype_nf_opt, shallow_ty};
use crate::syntax::*;
use crate::theory::Theory;
use std::fmt;

/// Evidence object for a successful check: a valid instance tree of the
/// named rule schemas.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub rule: &'static str,
    pub premises: Vec<Derivation>,
    pub conclusion: Judgment,
}

impl Derivation {
    pub fn leaf(rule: &'static str, conclusion: Judgment) -> Derivation {
        Derivation { rule, premises: Vec::new(), conclusion }
    }

    /// Renders the tree with two-space indentation.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        use std::fmt::Write;
        let _ = writeln!(out, "{}{}", "  ".repeat(depth), self.rule);
        for p in &self.premises {
            p.render_into(depth + 1, out);
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckError {
    UnknownType(String),
    UnknownTermSym(String),
    UnknownProtype(String),
    UnknownAxiom(String),
    UnknownIso(String),
    UnknownLemma(String),
    UnboundVariable(String),
    UnboundProvariable(String),
    ArityMismatch { what: String, expected: usize, got: usize },
    TypeMismatch { expected: String, got: String },
    SubstIllTyped(String),
    ExtensionDisabled(Extension),
    BoundaryMismatch(String),
    /// Expected vs inferred protype, both rendered after normalization.
    ProtypeMismatch { expected: String, got: String },
    NotMutuallyInverse { equation: String },
    ChainBreak(usize),
    /// Procontext shape violations: wrong provariable counts, slice
    /// inference failures, non-variable path endpoints, and the like.
    Shape(String),
    AnnotationNeeded(String),
    SideConditionFailed(String),
    DuplicateName(String),
    /// A script step is not a rule instance, its position is invalid, or
    /// the chain breaks (1-based step index).
    BadStep { step: usize, reason: String },
    /// Carries the smallest failing sub-derivation context.
    In { what: String, inner: Box<CheckError> },
}

impl CheckError {
    pub(crate) fn within(self, what: impl Into<String>) -> CheckError {
        CheckError::In { what: what.into(), inner: Box::new(self) }
    }

    /// The innermost error, unwrapping breadcrumbs.
    pub fn root(&self) -> &CheckError {
        match self {
            CheckError::In { inner, .. } => inner.root(),
            other => other,
        }
    }
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::UnknownType(s) => write!(f, "unknown type {s}"),
            CheckError::UnknownTermSym(s) => write!(f, "unknown term symbol {s}"),
            CheckError::UnknownProtype(s) => write!(f, "unknown protype {s}"),
            CheckError::UnknownAxiom(s) => write!(f, "unknown proterm axiom {s}"),
            CheckError::UnknownIso(s) => write!(f, "unknown isomorphism {s}"),
            CheckError::UnknownLemma(s) => write!(f, "unknown equation {s}"),
            CheckError::UnboundVariable(s) => write!(f, "unbound variable {s}"),
            CheckError::UnboundProvariable(s) => write!(f, "unbound provariable {s}"),
            CheckError::ArityMismatch { what, expected, got } => {
                write!(f, "{what}: expected {expected} arguments, got {got}")
            }
            CheckError::TypeMismatch { expected, got } => {
                write!(f, "type mismatch: expected {expected}, got {got}")
            }
            CheckError::SubstIllTyped(s) => write!(f, "ill-typed substitution: {s}"),
            CheckError::ExtensionDisabled(e) => {
                write!(f, "the {e} extension is not enabled in this signature")
            }
            CheckError::BoundaryMismatch(s) => write!(f, "boundary mismatch: {s}"),
            CheckError::ProtypeMismatch { expected, got } => {
                write!(f, "protype mismatch: expected {expected}, inferred {got}")
            }
            CheckError::NotMutuallyInverse { equation } => {
                write!(f, "proterms are not mutually inverse: {equation} not established")
            }
            CheckError::ChainBreak(i) => {
                write!(f, "boundary contexts do not chain at index {i}")
            }
            CheckError::Shape(s) => write!(f, "{s}"),
            CheckError::AnnotationNeeded(s) => write!(f, "annotation needed: {s}"),
            CheckError::SideConditionFailed(s) => write!(f, "side condition failed: {s}"),
            CheckError::DuplicateName(s) => write!(f, "duplicate name {s}"),
            CheckError::BadStep { step, reason } => write!(f, "bad step {step}: {reason}"),
            CheckError::In { what, inner } => write!(f, "{inner}\n  while checking {what}"),
        }
    }
}

pub type CheckResult<T> = Result<T, CheckError>;

pub(crate) fn types_equal(a: &TypeExpr, b: &TypeExpr) -> bool {
    alpha_equal(ExprRef::Type(a), ExprRef::Type(b)).unwrap_or(false)
}

/// Checks a type expression.
pub fn check_type(thy: &Theory, ty: &TypeExpr) -> CheckResult<Derivation> {
    let conclusion = Judgment::Type(ty.clone());
    match ty {
        TypeExpr::Base(b) => {
            if thy.sig.types.contains(b) {
                Ok(Derivation::leaf("type-base", conclusion))
            } else {
                Err(CheckError::UnknownType(b.clone()))
            }
        }
        TypeExpr::Unit => Ok(Derivation::leaf("type-unit", conclusion)),
        TypeExpr::Prod(a, b) => {
            let da = check_type(thy, a)?;
            let db = check_type(thy, b)?;
            Ok(Derivation { rule: "type-prod", premises: vec![da, db], conclusion })
        }
        TypeExpr::Compr(c) => {
            if !thy.sig.enabled(Extension::Compr) {
                return Err(CheckError::ExtensionDisabled(Extension::Compr));
            }
            let dl = check_type(thy, &c.lty)?;
            let dr = check_type(thy, &c.rty)?;
            let lctx = Context::single(c.lvar.clone(), c.lty.clone());
            let rctx = Context::single(c.rvar.clone(), c.rty.clone());
            let dp = check_protype(thy, &lctx, &rctx, &c.protype)?;
            Ok(Derivation { rule: "type-compr", premises: vec![dl, dr, dp], conclusion })
        }
    }
}

/// Checks a context: distinct names, all types well-formed.
pub fn check_context(thy: &Theory, ctx: &Context) -> CheckResult<()> {
    if !ctx.distinct_names() {
        let dup = ctx
            .0
            .iter()
            .enumerate()
            .find(|(i, (v, _))| ctx.0[..*i].iter().any(|(w, _)| w == v))
            .map(|(_, (v, _))| v.clone())
            .unwrap_or_default();
        return Err(CheckError::DuplicateName(dup));
    }
    for (v, t) in &ctx.0 {
        check_type(thy, t).map_err(|e| e.within(format!("the type of {v}")))?;
    }
    Ok(())
}

/// Infers the unique type of a term.
pub fn infer_term(thy: &Theory, ctx: &Context, t: &TermExpr) -> CheckResult<(TypeExpr, Derivation)> {
    let done = |rule, ty: TypeExpr, premises| {
        let conclusion = Judgment::Term { ctx: ctx.clone(), term: t.clone(), ty: ty.clone() };
        Ok((ty, Derivation { rule, premises, conclusion }))
    };
    match t {
        TermExpr::Var(v) => match ctx.lookup(v) {
            Some(ty) => done("term-var", ty.clone(), vec![]),
            None => Err(CheckError::UnboundVariable(v.clone())),
        },
        TermExpr::App { sym, args } => {
            let decl = thy
                .sig
                .terms
                .get(sym)
                .ok_or_else(|| CheckError::UnknownTermSym(sym.clone()))?;
            if args.len() != decl.inputs.len() {
                return Err(CheckError::ArityMismatch {
                    what: format!("term symbol {sym}"),
                    expected: decl.inputs.len(),
                    got: args.len(),
                });
            }
            let mut premises = Vec::new();
            for (arg, (v, tysym)) in args.iter().zip(&decl.inputs) {
                let (got, d) = infer_term(thy, ctx, arg)?;
                let want = TypeExpr::Base(tysym.clone());
                if !types_equal(&got, &want) {
                    return Err(CheckError::TypeMismatch {
                        expected: format!("{tysym} (input {v} of {sym})"),
                        got: format!("{got:?}"),
                    });
                }
                premises.push(d);
            }
            done("term-app", TypeExpr::Base(decl.output.clone()), premises)
        }
        TermExpr::Pair(a, b) => {
            let (ta, da) = infer_term(thy, ctx, a)?;
            let (tb, db) = infer_term(thy, ctx, b)?;
            done("term-pair", TypeExpr::prod(ta, tb), vec![da, db])
        }
        TermExpr::Proj0(a) => {
            let (ta, da) = infer_term(thy, ctx, a)?;
            match ta {
                TypeExpr::Prod(x, _) => done("term-proj0", *x, vec![da]),
                other => Err(CheckError::TypeMismatch {
                    expected: "a product type".into(),
                    got: format!("{other:?}"),
                }),
            }
        }
        TermExpr::Proj1(a) => {
            let (ta, da) = infer_term(thy, ctx, a)?;
            match ta {
                TypeExpr::Prod(_, y) => done("term-proj1", *y, vec![da]),
                other => Err(CheckError::TypeMismatch {
                    expected: "a product type".into(),
                    got: format!("{other:?}"),
                }),
            }
        }
        TermExpr::UnitTm => done("term-unit", TypeExpr::Unit, vec![]),
        TermExpr::Subst { inner, subst } => {
            let (tgt_ctx, premises) = infer_subst_group(thy, ctx, subst)?;
            let (ty, d) = infer_term(thy, &tgt_ctx, inner)?;
            let mut ps = premises;
            ps.push(d);
            done("term-subst", ty, ps)
        }
        TermExpr::TabL(a) => {
            if !thy.sig.enabled(Extension::Compr) {
                return Err(CheckError::ExtensionDisabled(Extension::Compr));
            }
            let (ta, da) = infer_term(thy, ctx, a)?;
            match ta {
                TypeExpr::Compr(c) => done("compr-left-leg", c.lty.clone(), vec![da]),
                other => Err(CheckError::TypeMismatch {
                    expected: "a comprehension type".into(),
                    got: format!("{other:?}"),
                }),
            }
        }
        TermExpr::TabR(a) => {
            if !thy.sig.enabled(Extension::Compr) {
                return Err(CheckError::ExtensionDisabled(Extension::Compr));
            }
            let (ta, da) = infer_term(thy, ctx, a)?;
            match ta {
                TypeExpr::Compr(c) => done("compr-right-leg", c.rty.clone(), vec![da]),
                other => Err(CheckError::TypeMismatch {
                    expected: "a comprehension type".into(),
                    got: format!("{other:?}"),
                }),
            }
        }
        TermExpr::TabFactor { compr, left, right, cell } => {
            if !thy.sig.enabled(Extension::Compr) {
                return Err(CheckError::ExtensionDisabled(Extension::Compr));
            }
            let ty = TypeExpr::Compr(compr.clone());
            let dt = check_type(thy, &ty)?;
            let (tl, dl) = infer_term(thy, ctx, left)?;
            if !types_equal(&tl, &compr.lty) {
                return Err(CheckError::TypeMismatch {
                    expected: format!("{:?}", compr.lty),
                    got: format!("{tl:?}"),
                });
            }
            let (tr, dr) = infer_term(thy, ctx, right)?;
            if !types_equal(&tr, &compr.rty) {
                return Err(CheckError::TypeMismatch {
                    expected: format!("{:?}", compr.rty),
                    got: format!("{tr:?}"),
                });
            }
            let expected = ProtypeExpr::rest(
                compr.protype.clone(),
                vec![(left.as_ref().clone(), compr.lvar.clone())],
                vec![(right.as_ref().clone(), compr.rvar.clone())],
            );
            let pc = ProContext::single(ctx.clone());
            let dc = check_proterm(thy, &pc, cell, &expected)
                .map_err(|e| e.within("the cone cell of a comprehension factorization"))?;
            done("compr-factor", ty, vec![dt, dl, dr, dc])
        }
    }
}

/// Infers a substitution group's target context from its components.
/// Components type in `src`; the target context pairs each binder name with
/// the inferred component type.
pub(crate) fn infer_subst_group(
    thy: &Theory,
    src: &Context,
    group: &SubstGroup,
) -> CheckResult<(Context, Vec<Derivation>)> {
    let mut entries = Vec::new();
    let mut premises = Vec::new();
    for (comp, name) in group {
        if entries.iter().any(|(n, _)| n == name) {
            return Err(CheckError::DuplicateName(name.clone()));
        }
        let (ty, d) = infer_term(thy, src, comp)
            .map_err(|e| e.within(format!("the substitution component for {name}")))?;
        entries.push((name.clone(), ty));
        premises.push(d);
    }
    Ok((Context(entries), premises))
}

/// Checks a substitution `src |- terms / tgt` componentwise.
pub fn check_term_subst(
    thy: &Theory,
    src: &Context,
    terms: &[TermExpr],
    tgt: &Context,
) -> CheckResult<Vec<Derivation>> {
    if terms.len() != tgt.0.len() {
        return Err(CheckError::ArityMismatch {
            what: "substitution".into(),
            expected: tgt.0.len(),
            got: terms.len(),
        });
    }
    let mut out = Vec::new();
    for (term, (v, want)) in terms.iter().zip(&tgt.0) {
        let (got, d) = infer_term(thy, src, term)?;
        if !types_equal(&got, want) {
            return Err(CheckError::SubstIllTyped(format!(
                "component for {v} has the wrong type"
            )));
        }
        out.push(d);
    }
    Ok(out)
}

/// Checks a protype in its two boundary contexts.
pub fn check_protype(
    thy: &Theory,
    left: &Context,
    right: &Context,
    alpha: &ProtypeExpr,
) -> CheckResult<Derivation> {
    let done = |rule, premises| {
        let conclusion = Judgment::Protype {
            left: left.clone(),
            right: right.clone(),
            protype: alpha.clone(),
        };
        Ok(Derivation { rule, premises, conclusion })
    };
    match alpha {
        ProtypeExpr::Sym { sym, left: ls, right: rs } => {
            let (dl, dr) = thy
                .sig
                .protype_ctxs(sym)
                .ok_or_else(|| CheckError::UnknownProtype(sym.clone()))?;
            let mut premises = check_term_subst(thy, left, ls, &dl)
                .map_err(|e| e.within(format!("the left instance of {sym}")))?;
            premises.extend(
                check_term_subst(thy, right, rs, &dr)
                    .map_err(|e| e.within(format!("the right instance of {sym}")))?,
            );
            done("protype-sym", premises)
        }
        ProtypeExpr::Top => done("protype-top", vec![]),
        ProtypeExpr::And(a, b) => {
            let da = check_protype(thy, left, right, a)?;
            let db = check_protype(thy, left, right, b)?;
            done("protype-and", vec![da, db])
        }
        ProtypeExpr::Rest { inner, left: lg, right: rg } => {
            let (lt, mut premises) = infer_subst_group(thy, left, lg)?;
            let (rt, ps) = infer_subst_group(thy, right, rg)?;
            premises.extend(ps);
            let di = check_protype(thy, &lt, &rt, inner)?;
            premises.push(di);
            done("protype-rest", premises)
        }
        ProtypeExpr::Path { left: s, ty, right: t } => {
            if !thy.sig.enabled(Extension::Ide) {
                return Err(CheckError::ExtensionDisabled(Extension::Ide));
            }
            let dt = check_type(thy, ty)?;
            let (ts, ds) = infer_term(thy, left, s)?;
            if !types_equal(&ts, ty) {
                return Err(CheckError::TypeMismatch {
                    expected: format!("{ty:?}"),
                    got: format!("{ts:?}"),
                });
            }
            let (tt, dtm) = infer_term(thy, right, t)?;
            if !types_equal(&tt, ty) {
                return Err(CheckError::TypeMismatch {
                    expected: format!("{ty:?}"),
                    got: format!("{tt:?}"),
                });
            }
            done("ide-form", vec![dt, ds, dtm])
        }
        ProtypeExpr::Comp { left: a, mid, right: b } => {
            if !thy.sig.enabled(Extension::Comp) {
                return Err(CheckError::ExtensionDisabled(Extension::Comp));
            }
            let dt = check_type(thy, &mid.1)?;
            let mctx = Context::single(mid.0.clone(), mid.1.clone());
            let da = check_protype(thy, left, &mctx, a)?;
            let db = check_protype(thy, &mctx, right, b)?;
            done("comp-form", vec![dt, da, db])
        }
        ProtypeExpr::RExt { alpha: a, bound, beta: b } => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let dt = check_type(thy, &bound.1)?;
            let wctx = Context::single(bound.0.clone(), bound.1.clone());
            let da = check_protype(thy, &wctx, left, a)?;
            let db = check_protype(thy, &wctx, right, b)?;
            done("rext-form", vec![dt, da, db])
        }
        ProtypeExpr::RLift { beta: b, bound, alpha: a } => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let dt = check_type(thy, &bound.1)?;
            let zctx = Context::single(bound.0.clone(), bound.1.clone());
            let db = check_protype(thy, left, &zctx, b)?;
            let da = check_protype(thy, right, &zctx, a)?;
            done("rlift-form", vec![dt, db, da])
        }
        ProtypeExpr::Invol(a) => {
            if !thy.sig.enabled(Extension::Involution) {
                return Err(CheckError::ExtensionDisabled(Extension::Involution));
            }
            let da = check_protype(thy, right, left, a)?;
            done("invol-form", vec![da])
        }
    }
}

/// Checks the contexts and provariable protypes of a procontext. Contexts
/// may repeat only as entirely identical groups (this arises at the merge
/// points of prosubstitution instances).
pub fn check_procontext(thy: &Theory, pc: &ProContext) -> CheckResult<()> {
    if pc.contexts.len() != pc.provars.len() + 1 {
        return Err(CheckError::Shape(format!(
            "procontext has {} contexts for {} provariables",
            pc.contexts.len(),
            pc.provars.len()
        )));
    }
    for ctx in &pc.contexts {
        check_context(thy, ctx)?;
    }
    for (i, ci) in pc.contexts.iter().enumerate() {
        for cj in pc.contexts.iter().skip(i + 1) {
            let overlap = ci.0.iter().any(|(v, _)| cj.lookup(v).is_some());
            if overlap && ci != cj {
                return Err(CheckError::Shape(
                    "distinct procontext groups share a variable name".into(),
                ));
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for (p, _) in &pc.provars {
        if !seen.insert(p.as_str()) {
            return Err(CheckError::DuplicateName(p.clone()));
        }
    }
    for (i, (p, al)) in pc.provars.iter().enumerate() {
        check_protype(thy, &pc.contexts[i], &pc.contexts[i + 1], al)
            .map_err(|e| e.within(format!("the protype of provariable {p}")))?;
    }
    Ok(())
}

/// Protype equality used throughout the checker.
pub(crate) fn protypes_match(
    thy: &Theory,
    left: &Context,
    right: &Context,
    expected: &ProtypeExpr,
    got: &ProtypeExpr,
) -> bool {
    crate::subst::protype_nf_eq(thy, Some(left), Some(right), expected, got)
}

pub(crate) fn protype_mismatch(
    thy: &Theory,
    left: &Context,
    right: &Context,
    expected: &ProtypeExpr,
    got: &ProtypeExpr,
) -> CheckError {
    CheckError::ProtypeMismatch {
        expected: format!("{:?}", protype_nf_opt(thy, Some(left), Some(right), expected)),
        got: format!("{:?}", protype_nf_opt(thy, Some(left), Some(right), got)),
    }
}

/// A sub-range of a procontext: contexts `c0..=c1`, provariables `p0..p1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PcSlice {
    pub c0: usize,
    pub c1: usize,
    pub p0: usize,
    pub p1: usize,
}

pub(crate) fn sub_pc(pc: &ProContext, s: PcSlice) -> ProContext {
    ProContext {
        contexts: pc.contexts[s.c0..=s.c1].to_vec(),
        provars: pc.provars[s.p0..s.p1].to_vec(),
    }
}

/// Splits a procontext into consecutive slices consumed by the given
/// arguments, guided by their free provariables. The final argument absorbs
/// any trailing hypotheses.
pub(crate) fn split_slices(
    pc: &ProContext,
    args: &[&ProtermExpr],
) -> CheckResult<Vec<PcSlice>> {
    let n = pc.provars.len();
    let index_of = |name: &str| pc.provars.iter().position(|(p, _)| p == name);
    let mut out = Vec::with_capacity(args.len());
    let mut cur = 0usize;
    for (k, arg) in args.iter().enumerate() {
        let (_, fpv) = free_variables(ExprRef::Proterm(arg));
        let used: Vec<usize> = fpv.iter().filter_map(|p| index_of(p)).collect();
        let lo = used.iter().min().copied();
        let hi = used.iter().max().copied();
        if let Some(lo) = lo {
            if lo < cur {
                return Err(CheckError::Shape(
                    "argument uses provariables out of order".into(),
                ));
            }
        }
        let end = if k + 1 == args.len() {
            n
        } else {
            hi.map(|h| h + 1).unwrap_or(cur)
        };
        if let Some(hi) = hi {
            if hi >= end {
                return Err(CheckError::Shape(
                    "argument slices overlap; reorder the arguments".into(),
                ));
            }
        }
        out.push(PcSlice { c0: cur, c1: end, p0: cur, p1: end });
        cur = end;
    }
    if cur != n && args.is_empty() {
        return Err(CheckError::Shape("no arguments consume the hypotheses".into()));
    }
    Ok(out)
}

/// Matches two context lists positionally, producing a renaming from the
/// declared names to the actual ones. Types must agree exactly.
pub(crate) fn match_contexts(
    decl: &[Context],
    actual: &[Context],
) -> CheckResult<VarMap> {
    if decl.len() != actual.len() {
        return Err(CheckError::Shape(format!(
            "expected {} context groups, got {}",
            decl.len(),
            actual.len()
        )));
    }
    let mut map = VarMap::new();
    for (d, a) in decl.iter().zip(actual) {
        if d.0.len() != a.0.len() {
            return Err(CheckError::Shape(
                "context group length differs from the declaration".into(),
            ));
        }
        for ((dv, dt), (av, at)) in d.0.iter().zip(&a.0) {
            if !types_equal(dt, at) {
                return Err(CheckError::TypeMismatch {
                    expected: format!("{dt:?} (for {dv})"),
                    got: format!("{at:?}"),
                });
            }
            map.insert(dv.clone(), av.clone());
        }
    }
    Ok(map)
}

/// Instantiates a declared judgment piece under a context renaming.
pub(crate) fn rename_decl_protype(p: &ProtypeExpr, map: &VarMap) -> ProtypeExpr {
    rename_protype(p, map)
}

pub(crate) fn identity_group(ctx: &Context) -> SubstGroup {
    ctx.0.iter().map(|(v, _)| (TermExpr::var(v.clone()), v.clone())).collect()
}

pub(crate) fn single_var(ctx: &Context) -> Option<(&String, &TypeExpr)> {
    match ctx.0.as_slice() {
        [(v, t)] => Some((v, t)),
        _ => None,
    }
}

/// Quick typing used where full derivations are not needed.
pub(crate) fn quick_ty(thy: &Theory, ctx: &Context, t: &TermExpr) -> Option<TypeExpr> {
    shallow_ty(&thy.sig, Some(ctx), t)
}

pub(crate) fn renamed_context(ctx: &Context, map: &VarMap) -> Context {
    rename_context(ctx, map)
}
