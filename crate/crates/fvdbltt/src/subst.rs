//! The explicit-substitution engine.
//!
//! Terms form a first-order theory with finite products, so term-level
//! substitution nodes are resolved completely by the normalizer here.
//! Protype-level restriction nodes are pushed by the directed rewrites:
//! distribute over `/\`, erase on `top`, fuse stacked restrictions, absorb
//! into protype symbols and path protypes, and erase identity restrictions.
//! Restriction stops at the extension constructors `(+)`, `|>`, `<|`, `^o`:
//! a restricted constructor is a primitive formation instance.

use crate::syntax::*;
use crate::theory::{term_size, Theory};

/// Budget for axiom-driven rewriting; exceeding it aborts normalization of
/// the offending term (the structural rules alone always terminate).
const REWRITE_BUDGET: usize = 4_000;

/// Fully carries out a substitution on a term. Inner substitution nodes are
/// resolved by map composition; proterm cells embedded in terms receive an
/// explicit proterm-level substitution node instead.
pub fn subst_eval(t: &TermExpr, group: &SubstGroup) -> TermExpr {
    let lookup = |v: &str| -> Option<&TermExpr> {
        group.iter().find(|(_, x)| x == v).map(|(c, _)| c)
    };
    match t {
        TermExpr::Var(v) => lookup(v).cloned().unwrap_or_else(|| t.clone()),
        TermExpr::App { sym, args } => TermExpr::App {
            sym: sym.clone(),
            args: args.iter().map(|a| subst_eval(a, group)).collect(),
        },
        TermExpr::Pair(a, b) => TermExpr::pair(subst_eval(a, group), subst_eval(b, group)),
        TermExpr::Proj0(a) => TermExpr::Proj0(Box::new(subst_eval(a, group))),
        TermExpr::Proj1(a) => TermExpr::Proj1(Box::new(subst_eval(a, group))),
        TermExpr::UnitTm => TermExpr::UnitTm,
        TermExpr::Subst { inner, subst } => {
            let composed: SubstGroup = subst
                .iter()
                .map(|(c, x)| (subst_eval(c, group), x.clone()))
                .collect();
            subst_eval(inner, &composed)
        }
        TermExpr::TabL(a) => TermExpr::TabL(Box::new(subst_eval(a, group))),
        TermExpr::TabR(a) => TermExpr::TabR(Box::new(subst_eval(a, group))),
        TermExpr::TabFactor { compr, left, right, cell } => TermExpr::TabFactor {
            compr: compr.clone(),
            left: Box::new(subst_eval(left, group)),
            right: Box::new(subst_eval(right, group)),
            cell: Box::new(ProtermExpr::term_subst(
                cell.as_ref().clone(),
                vec![group.clone()],
            )),
        },
    }
}

/// Shallow type inference used by type-directed eta steps. Assumes the term
/// is well-typed; returns `None` when the type cannot be determined locally.
pub(crate) fn shallow_ty(sig: &Signature, ctx: Option<&Context>, t: &TermExpr) -> Option<TypeExpr> {
    match t {
        TermExpr::Var(v) => ctx.and_then(|c| c.lookup(v).cloned()),
        TermExpr::App { sym, .. } => {
            sig.terms.get(sym).map(|d| TypeExpr::Base(d.output.clone()))
        }
        TermExpr::Pair(a, b) => Some(TypeExpr::prod(
            shallow_ty(sig, ctx, a)?,
            shallow_ty(sig, ctx, b)?,
        )),
        TermExpr::Proj0(a) => match shallow_ty(sig, ctx, a)? {
            TypeExpr::Prod(x, _) => Some(*x),
            _ => None,
        },
        TermExpr::Proj1(a) => match shallow_ty(sig, ctx, a)? {
            TypeExpr::Prod(_, y) => Some(*y),
            _ => None,
        },
        TermExpr::UnitTm => Some(TypeExpr::Unit),
        TermExpr::Subst { .. } => None,
        TermExpr::TabL(a) => match shallow_ty(sig, ctx, a)? {
            TypeExpr::Compr(c) => Some(c.lty),
            _ => None,
        },
        TermExpr::TabR(a) => match shallow_ty(sig, ctx, a)? {
            TypeExpr::Compr(c) => Some(c.rty),
            _ => None,
        },
        TermExpr::TabFactor { compr, .. } => Some(TypeExpr::Compr(compr.clone())),
    }
}

fn terms_alpha_eq(a: &TermExpr, b: &TermExpr) -> bool {
    alpha_equal(ExprRef::Term(a), ExprRef::Term(b)).unwrap_or(false)
}

/// Normalizes a term: resolves substitution nodes, applies product beta and
/// eta (including the unit type when the context allows typing), the
/// comprehension leg computations, and the oriented term rewrites extracted
/// from substitution-equality axioms.
pub fn normalize_term(thy: &Theory, ctx: Option<&Context>, t: &TermExpr) -> TermExpr {
    let rules = thy.term_rewrites();
    let mut budget = REWRITE_BUDGET;
    let t = nf_struct(&thy.sig, ctx, t);
    apply_rules_deep(thy, ctx, &rules, t, &mut budget)
}

fn nf_struct(sig: &Signature, ctx: Option<&Context>, t: &TermExpr) -> TermExpr {
    let out = match t {
        TermExpr::Var(_) | TermExpr::UnitTm => t.clone(),
        TermExpr::App { sym, args } => TermExpr::App {
            sym: sym.clone(),
            args: args.iter().map(|a| nf_struct(sig, ctx, a)).collect(),
        },
        TermExpr::Pair(a, b) => {
            let a = nf_struct(sig, ctx, a);
            let b = nf_struct(sig, ctx, b);
            // surjective pairing, oriented as collapse
            if let (TermExpr::Proj0(x), TermExpr::Proj1(y)) = (&a, &b) {
                if terms_alpha_eq(x, y) {
                    return x.as_ref().clone();
                }
            }
            TermExpr::pair(a, b)
        }
        TermExpr::Proj0(a) => match nf_struct(sig, ctx, a) {
            TermExpr::Pair(x, _) => *x,
            other => TermExpr::Proj0(Box::new(other)),
        },
        TermExpr::Proj1(a) => match nf_struct(sig, ctx, a) {
            TermExpr::Pair(_, y) => *y,
            other => TermExpr::Proj1(Box::new(other)),
        },
        TermExpr::Subst { inner, subst } => {
            let group: SubstGroup = subst
                .iter()
                .map(|(c, x)| (nf_struct(sig, ctx, c), x.clone()))
                .collect();
            nf_struct(sig, ctx, &subst_eval(inner, &group))
        }
        TermExpr::TabL(a) => match nf_struct(sig, ctx, a) {
            TermExpr::TabFactor { left, .. } => *left,
            other => TermExpr::TabL(Box::new(other)),
        },
        TermExpr::TabR(a) => match nf_struct(sig, ctx, a) {
            TermExpr::TabFactor { right, .. } => *right,
            other => TermExpr::TabR(Box::new(other)),
        },
        TermExpr::TabFactor { compr, left, right, cell } => {
            let left = nf_struct(sig, ctx, left);
            let right = nf_struct(sig, ctx, right);
            // tabf(lleg(u), rleg(u), tab[u/w]) collapses to u
            if let (TermExpr::TabL(u), TermExpr::TabR(u2)) = (&left, &right) {
                if terms_alpha_eq(u, u2) {
                    if let ProtermExpr::TermSubst { inner, groups } = cell.as_ref() {
                        if let (ProtermExpr::Tab { .. }, [g]) = (inner.as_ref(), &groups[..]) {
                            if g.len() == 1 && terms_alpha_eq(&g[0].0, u) {
                                return u.as_ref().clone();
                            }
                        }
                    }
                }
            }
            TermExpr::TabFactor {
                compr: compr.clone(),
                left: Box::new(left),
                right: Box::new(right),
                cell: cell.clone(),
            }
        }
    };
    // unit eta: any term of type 1 is the unit element
    if !matches!(out, TermExpr::UnitTm) && shallow_ty(sig, ctx, &out) == Some(TypeExpr::Unit) {
        return TermExpr::UnitTm;
    }
    out
}

/// First-order matching of a rule pattern against a term. Pattern variables
/// are the rule's metavariables; other variables match literally.
pub(crate) fn match_term(
    pat: &TermExpr,
    t: &TermExpr,
    pat_vars: &Context,
    binds: &mut Vec<(String, TermExpr)>,
) -> bool {
    match (pat, t) {
        (TermExpr::Var(v), _) if pat_vars.lookup(v).is_some() => {
            if let Some((_, prev)) = binds.iter().find(|(x, _)| x == v) {
                terms_alpha_eq(prev, t)
            } else {
                binds.push((v.clone(), t.clone()));
                true
            }
        }
        (TermExpr::Var(v), TermExpr::Var(w)) => v == w,
        (TermExpr::App { sym: f, args: xs }, TermExpr::App { sym: g, args: ys }) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, pat_vars, binds))
        }
        (TermExpr::Pair(a, b), TermExpr::Pair(c, d)) => {
            match_term(a, c, pat_vars, binds) && match_term(b, d, pat_vars, binds)
        }
        (TermExpr::Proj0(a), TermExpr::Proj0(b))
        | (TermExpr::Proj1(a), TermExpr::Proj1(b))
        | (TermExpr::TabL(a), TermExpr::TabL(b))
        | (TermExpr::TabR(a), TermExpr::TabR(b)) => match_term(a, b, pat_vars, binds),
        (TermExpr::UnitTm, TermExpr::UnitTm) => true,
        _ => false,
    }
}

fn apply_rules_deep(
    thy: &Theory,
    ctx: Option<&Context>,
    rules: &[crate::theory::TermRule],
    t: TermExpr,
    budget: &mut usize,
) -> TermExpr {
    if rules.is_empty() {
        return t;
    }
    let mut cur = t;
    loop {
        match rewrite_once(rules, &cur, budget) {
            Some(next) => {
                cur = nf_struct(&thy.sig, ctx, &next);
            }
            None => return cur,
        }
    }
}

fn rewrite_once(
    rules: &[crate::theory::TermRule],
    t: &TermExpr,
    budget: &mut usize,
) -> Option<TermExpr> {
    if *budget == 0 {
        return None;
    }
    for rule in rules {
        let mut binds = Vec::new();
        if match_term(&rule.lhs, t, &rule.vars, &mut binds) {
            // strict size decrease keeps axiom-driven rewriting terminating
            let group: SubstGroup = binds.into_iter().map(|(v, tm)| (tm, v)).collect();
            let replaced = subst_eval(&rule.rhs, &group);
            if term_size(&replaced) < term_size(t) {
                *budget -= 1;
                return Some(replaced);
            }
        }
    }
    let rebuilt = |inner: Option<TermExpr>, f: &dyn Fn(TermExpr) -> TermExpr| {
        inner.map(f)
    };
    match t {
        TermExpr::App { sym, args } => {
            for (i, a) in args.iter().enumerate() {
                if let Some(a2) = rewrite_once(rules, a, budget) {
                    let mut args = args.clone();
                    args[i] = a2;
                    return Some(TermExpr::App { sym: sym.clone(), args });
                }
            }
            None
        }
        TermExpr::Pair(a, b) => {
            if let Some(a2) = rewrite_once(rules, a, budget) {
                return Some(TermExpr::pair(a2, b.as_ref().clone()));
            }
            rebuilt(rewrite_once(rules, b, budget), &|b2| {
                TermExpr::pair(a.as_ref().clone(), b2)
            })
        }
        TermExpr::Proj0(a) => {
            rebuilt(rewrite_once(rules, a, budget), &|x| TermExpr::Proj0(Box::new(x)))
        }
        TermExpr::Proj1(a) => {
            rebuilt(rewrite_once(rules, a, budget), &|x| TermExpr::Proj1(Box::new(x)))
        }
        TermExpr::TabL(a) => {
            rebuilt(rewrite_once(rules, a, budget), &|x| TermExpr::TabL(Box::new(x)))
        }
        TermExpr::TabR(a) => {
            rebuilt(rewrite_once(rules, a, budget), &|x| TermExpr::TabR(Box::new(x)))
        }
        TermExpr::TabFactor { compr, left, right, cell } => {
            if let Some(l2) = rewrite_once(rules, left, budget) {
                return Some(TermExpr::TabFactor {
                    compr: compr.clone(),
                    left: Box::new(l2),
                    right: right.clone(),
                    cell: cell.clone(),
                });
            }
            rebuilt(rewrite_once(rules, right, budget), &|r2| TermExpr::TabFactor {
                compr: compr.clone(),
                left: left.clone(),
                right: Box::new(r2),
                cell: cell.clone(),
            })
        }
        _ => None,
    }
}

/// Componentwise composition `S[S'/G']` of substitutions, normalized.
/// `outer` is `G' |- S / G`, `inner` is `G'' |- S' / G'`; the result is
/// `G'' |- S[S'] / G`.
pub fn compose_subst(
    thy: &Theory,
    src: Option<&Context>,
    outer: &SubstGroup,
    inner: &SubstGroup,
) -> SubstGroup {
    outer
        .iter()
        .map(|(c, x)| (normalize_term(thy, src, &subst_eval(c, inner)), x.clone()))
        .collect()
}

/// Errors from building a restriction node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RestrictError {
    /// A substitution component does not type against the target context.
    IllTyped { target: String, detail: String },
    ArityMismatch { expected: usize, got: usize },
}

impl std::fmt::Display for RestrictError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RestrictError::IllTyped { target, detail } => {
                write!(f, "ill-typed substitution for {target}: {detail}")
            }
            RestrictError::ArityMismatch { expected, got } => {
                write!(f, "substitution has {got} components, target context has {expected}")
            }
        }
    }
}

/// Builds the explicit restriction node `alpha[S ; T]`, validating component
/// arity against the protype's boundary contexts. Component typing is
/// validated shallowly here; the checker re-derives it fully.
pub fn restrict_protype(
    thy: &Theory,
    alpha: &ProtypeExpr,
    alpha_left: &Context,
    alpha_right: &Context,
    src_left: Option<&Context>,
    src_right: Option<&Context>,
    left: Vec<TermExpr>,
    right: Vec<TermExpr>,
) -> Result<ProtypeExpr, RestrictError> {
    if left.len() != alpha_left.0.len() {
        return Err(RestrictError::ArityMismatch {
            expected: alpha_left.0.len(),
            got: left.len(),
        });
    }
    if right.len() != alpha_right.0.len() {
        return Err(RestrictError::ArityMismatch {
            expected: alpha_right.0.len(),
            got: right.len(),
        });
    }
    let pairs = |terms: Vec<TermExpr>, tgt: &Context, src: Option<&Context>| {
        let mut out = Vec::new();
        for (term, (v, ty)) in terms.into_iter().zip(tgt.0.iter()) {
            if let Some(got) = shallow_ty(&thy.sig, src, &term) {
                if &got != ty {
                    return Err(RestrictError::IllTyped {
                        target: v.clone(),
                        detail: "component type differs from the target context".into(),
                    });
                }
            }
            out.push((term, v.clone()));
        }
        Ok(out)
    };
    Ok(ProtypeExpr::rest(
        alpha.clone(),
        pairs(left, alpha_left, src_left)?,
        pairs(right, alpha_right, src_right)?,
    ))
}

fn group_is_identity(g: &SubstGroup) -> bool {
    g.iter().all(|(c, x)| matches!(c, TermExpr::Var(v) if v == x))
}

/// Protype normal form without boundary contexts (unit eta on embedded
/// terms is skipped where typing is unavailable).
pub fn push_substitutions(thy: &Theory, alpha: &ProtypeExpr) -> ProtypeExpr {
    protype_nf_opt(thy, None, None, alpha)
}

/// Protype normal form in known boundary contexts.
pub fn protype_nf(thy: &Theory, left: &Context, right: &Context, alpha: &ProtypeExpr) -> ProtypeExpr {
    protype_nf_opt(thy, Some(left), Some(right), alpha)
}

fn ctx_from_group(thy: &Theory, src: Option<&Context>, g: &SubstGroup) -> Option<Context> {
    let mut out = Vec::new();
    for (c, x) in g {
        out.push((x.clone(), shallow_ty(&thy.sig, src, c)?));
    }
    Some(Context(out))
}

pub(crate) fn protype_nf_opt(
    thy: &Theory,
    left: Option<&Context>,
    right: Option<&Context>,
    alpha: &ProtypeExpr,
) -> ProtypeExpr {
    match alpha {
        ProtypeExpr::Sym { sym, left: ls, right: rs } => ProtypeExpr::Sym {
            sym: sym.clone(),
            left: ls.iter().map(|t| normalize_term(thy, left, t)).collect(),
            right: rs.iter().map(|t| normalize_term(thy, right, t)).collect(),
        },
        ProtypeExpr::Top => ProtypeExpr::Top,
        ProtypeExpr::And(a, b) => ProtypeExpr::and(
            protype_nf_opt(thy, left, right, a),
            protype_nf_opt(thy, left, right, b),
        ),
        ProtypeExpr::Path { left: s, ty, right: t } => ProtypeExpr::Path {
            left: Box::new(normalize_term(thy, left, s)),
            ty: ty.clone(),
            right: Box::new(normalize_term(thy, right, t)),
        },
        ProtypeExpr::Comp { left: a, mid, right: b } => {
            let mctx = Context::single(mid.0.clone(), mid.1.clone());
            ProtypeExpr::Comp {
                left: Box::new(protype_nf_opt(thy, left, Some(&mctx), a)),
                mid: mid.clone(),
                right: Box::new(protype_nf_opt(thy, Some(&mctx), right, b)),
            }
        }
        ProtypeExpr::RExt { alpha: a, bound, beta: b } => {
            let wctx = Context::single(bound.0.clone(), bound.1.clone());
            ProtypeExpr::RExt {
                alpha: Box::new(protype_nf_opt(thy, Some(&wctx), left, a)),
                bound: bound.clone(),
                beta: Box::new(protype_nf_opt(thy, Some(&wctx), right, b)),
            }
        }
        ProtypeExpr::RLift { beta: b, bound, alpha: a } => {
            let zctx = Context::single(bound.0.clone(), bound.1.clone());
            ProtypeExpr::RLift {
                beta: Box::new(protype_nf_opt(thy, left, Some(&zctx), b)),
                bound: bound.clone(),
                alpha: Box::new(protype_nf_opt(thy, right, Some(&zctx), a)),
            }
        }
        ProtypeExpr::Invol(a) => match protype_nf_opt(thy, right, left, a) {
            ProtypeExpr::Invol(inner) => *inner,
            other => ProtypeExpr::Invol(Box::new(other)),
        },
        ProtypeExpr::Rest { inner, left: lg, right: rg } => {
            let lg: SubstGroup = lg
                .iter()
                .map(|(c, x)| (normalize_term(thy, left, c), x.clone()))
                .collect();
            let rg: SubstGroup = rg
                .iter()
                .map(|(c, x)| (normalize_term(thy, right, c), x.clone()))
                .collect();
            push_rest(thy, left, right, inner, lg, rg)
        }
    }
}

/// Pushes one (already term-normalized) restriction into a protype.
fn push_rest(
    thy: &Theory,
    src_left: Option<&Context>,
    src_right: Option<&Context>,
    inner: &ProtypeExpr,
    lg: SubstGroup,
    rg: SubstGroup,
) -> ProtypeExpr {
    match inner {
        // rest-top: top[S;T] erases
        ProtypeExpr::Top => ProtypeExpr::Top,
        // rest-and: distribute over the local product
        ProtypeExpr::And(a, b) => ProtypeExpr::and(
            push_rest(thy, src_left, src_right, a, lg.clone(), rg.clone()),
            push_rest(thy, src_left, src_right, b, lg, rg),
        ),
        // rest-sym-fuse: absorb into the symbol instance
        ProtypeExpr::Sym { sym, left, right } => ProtypeExpr::Sym {
            sym: sym.clone(),
            left: left
                .iter()
                .map(|t| normalize_term(thy, src_left, &subst_eval(t, &lg)))
                .collect(),
            right: right
                .iter()
                .map(|t| normalize_term(thy, src_right, &subst_eval(t, &rg)))
                .collect(),
        },
        // rest-path: a substituted path protype is a primitive instance
        ProtypeExpr::Path { left, ty, right } => ProtypeExpr::Path {
            left: Box::new(normalize_term(thy, src_left, &subst_eval(left, &lg))),
            ty: ty.clone(),
            right: Box::new(normalize_term(thy, src_right, &subst_eval(right, &rg))),
        },
        // rest-i-fuse: stacked restrictions compose
        ProtypeExpr::Rest { inner: inner2, left: lg2, right: rg2 } => {
            let lg2 = compose_group(thy, src_left, lg2, &lg);
            let rg2 = compose_group(thy, src_right, rg2, &rg);
            push_rest(thy, src_left, src_right, inner2, lg2, rg2)
        }
        // restriction stops at extension constructors; normalize below and
        // erase identity restrictions (rest-e)
        _ => {
            let in_left = ctx_from_group(thy, src_left, &lg);
            let in_right = ctx_from_group(thy, src_right, &rg);
            let inner_nf = protype_nf_opt(thy, in_left.as_ref(), in_right.as_ref(), inner);
            if group_is_identity(&lg) && group_is_identity(&rg) {
                inner_nf
            } else if let ProtypeExpr::Rest { inner: inner2, left: lg2, right: rg2 } = inner_nf {
                // inner normalization surfaced another restriction: fuse
                let lg2 = compose_group(thy, src_left, &lg2, &lg);
                let rg2 = compose_group(thy, src_right, &rg2, &rg);
                push_rest(thy, src_left, src_right, &inner2, lg2, rg2)
            } else {
                ProtypeExpr::rest(inner_nf, lg, rg)
            }
        }
    }
}

fn compose_group(
    thy: &Theory,
    src: Option<&Context>,
    outer: &SubstGroup,
    inner: &SubstGroup,
) -> SubstGroup {
    outer
        .iter()
        .map(|(c, x)| (normalize_term(thy, src, &subst_eval(c, inner)), x.clone()))
        .collect()
}

/// Protype equality used by the checker: alpha-equality of normal forms.
pub fn protype_nf_eq(
    thy: &Theory,
    left: Option<&Context>,
    right: Option<&Context>,
    a: &ProtypeExpr,
    b: &ProtypeExpr,
) -> bool {
    let na = protype_nf_opt(thy, left, right, a);
    let nb = protype_nf_opt(thy, left, right, b);
    alpha_equal(ExprRef::Protype(&na), ExprRef::Protype(&nb)).unwrap_or(false)
}

/// Decides a substitution equality `src |- s0 / tgt == s1 / tgt` via the
/// term equational theory (product beta/eta, substitution composition, and
/// oriented substitution-equality axioms).
pub fn check_subst_eq(
    thy: &Theory,
    src: &Context,
    s0: &[TermExpr],
    s1: &[TermExpr],
    _tgt: &Context,
) -> bool {
    s0.len() == s1.len()
        && s0.iter().zip(s1).all(|(a, b)| {
            let na = normalize_term(thy, Some(src), a);
            let nb = normalize_term(thy, Some(src), b);
            terms_alpha_eq(&na, &nb)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thy() -> Theory {
        let mut sig = Signature::default();
        sig.types.insert("I".into());
        sig.types.insert("J".into());
        sig.terms.insert(
            "f".into(),
            TermDecl { inputs: vec![("x".into(), "I".into())], output: "J".into() },
        );
        sig.protypes.insert(
            "al".into(),
            ProtypeDecl {
                left: vec![("x".into(), "I".into())],
                right: vec![("y".into(), "I".into())],
            },
        );
        Theory::new(sig)
    }

    #[test]
    fn identity_composition_laws() {
        let thy = thy();
        let s: SubstGroup = vec![(TermExpr::var("y"), "x".into())];
        let id: SubstGroup = vec![(TermExpr::var("y"), "y".into())];
        // id o S = S
        assert_eq!(compose_subst(&thy, None, &s, &id), s);
        // S o id on the outer side
        let id_outer: SubstGroup = vec![(TermExpr::var("x"), "x".into())];
        assert_eq!(compose_subst(&thy, None, &id_outer, &s), s);
    }

    /// Independent oracle: evaluate both composition orders on every term
    /// of depth <= 2 over a one-type signature and compare.
    #[test]
    fn composition_matches_brute_force_on_small_terms() {
        let thy = thy();
        // terms of depth <= 2 in context {x : I*I} (so pairing/projection apply)
        let x = TermExpr::var("x");
        let depth1 = vec![
            x.clone(),
            TermExpr::Proj0(Box::new(x.clone())),
            TermExpr::Proj1(Box::new(x.clone())),
            TermExpr::pair(x.clone(), x.clone()),
            TermExpr::UnitTm,
        ];
        let mut terms = depth1.clone();
        for a in &depth1 {
            terms.push(TermExpr::Proj0(Box::new(a.clone())));
            terms.push(TermExpr::Proj1(Box::new(a.clone())));
            for b in &depth1 {
                terms.push(TermExpr::pair(a.clone(), b.clone()));
            }
        }
        // outer: x |-> <y,y>; inner: y |-> z
        let outer: SubstGroup = vec![(
            TermExpr::pair(TermExpr::var("y"), TermExpr::var("y")),
            "x".into(),
        )];
        let inner: SubstGroup = vec![(TermExpr::var("z"), "y".into())];
        let composed = compose_subst(&thy, None, &outer, &inner);
        assert_eq!(
            composed,
            vec![(
                TermExpr::pair(TermExpr::var("z"), TermExpr::var("z")),
                "x".to_string()
            )]
        );
        for t in &terms {
            // applying the composed substitution == applying outer then inner
            let via_composed = normalize_term(&thy, None, &subst_eval(t, &composed));
            let stepwise =
                normalize_term(&thy, None, &subst_eval(&subst_eval(t, &outer), &inner));
            assert!(
                terms_alpha_eq(&via_composed, &stepwise),
                "mismatch on {t:?}: {via_composed:?} vs {stepwise:?}"
            );
        }
    }

    #[test]
    fn beta_and_eta_on_terms() {
        let thy = thy();
        let s = TermExpr::var("s");
        let t = TermExpr::var("t");
        let beta = TermExpr::Proj0(Box::new(TermExpr::pair(s.clone(), t.clone())));
        assert_eq!(normalize_term(&thy, None, &beta), s);
        let eta = TermExpr::pair(
            TermExpr::Proj0(Box::new(TermExpr::var("u"))),
            TermExpr::Proj1(Box::new(TermExpr::var("u"))),
        );
        assert_eq!(normalize_term(&thy, None, &eta), TermExpr::var("u"));
    }

    #[test]
    fn unit_eta_is_type_directed() {
        let thy = thy();
        let ctx = Context::single("u", TypeExpr::Unit);
        let u = TermExpr::var("u");
        assert_eq!(normalize_term(&thy, Some(&ctx), &u), TermExpr::UnitTm);
        assert_eq!(normalize_term(&thy, None, &u), u);
    }

    #[test]
    fn push_distributes_and_erases() {
        let thy = thy();
        let al = ProtypeExpr::Sym {
            sym: "al".into(),
            left: vec![TermExpr::var("x")],
            right: vec![TermExpr::var("y")],
        };
        let s: SubstGroup = vec![(TermExpr::var("w"), "x".into())];
        let t: SubstGroup = vec![(TermExpr::var("v"), "y".into())];
        // (al /\ top)[S;T] -> al[S;T] /\ top
        let node = ProtypeExpr::rest(
            ProtypeExpr::and(al.clone(), ProtypeExpr::Top),
            s.clone(),
            t.clone(),
        );
        let nf = push_substitutions(&thy, &node);
        let expected = ProtypeExpr::and(
            ProtypeExpr::Sym {
                sym: "al".into(),
                left: vec![TermExpr::var("w")],
                right: vec![TermExpr::var("v")],
            },
            ProtypeExpr::Top,
        );
        assert_eq!(nf, expected);
        // top[S;T][S';T'] -> top
        let stacked = ProtypeExpr::rest(
            ProtypeExpr::rest(ProtypeExpr::Top, s.clone(), t.clone()),
            vec![(TermExpr::var("w2"), "w".into())],
            vec![(TermExpr::var("v2"), "v".into())],
        );
        assert_eq!(push_substitutions(&thy, &stacked), ProtypeExpr::Top);
        // identity restriction erases
        let ide_rest = ProtypeExpr::rest(
            al.clone(),
            vec![(TermExpr::var("x"), "x".into())],
            vec![(TermExpr::var("y"), "y".into())],
        );
        assert_eq!(push_substitutions(&thy, &ide_rest), al);
    }

    #[test]
    fn stacked_symbol_restrictions_fuse() {
        let thy = thy();
        let al = ProtypeExpr::Sym {
            sym: "al".into(),
            left: vec![TermExpr::var("x")],
            right: vec![TermExpr::var("y")],
        };
        let node = ProtypeExpr::rest(
            ProtypeExpr::rest(
                al,
                vec![(TermExpr::var("a"), "x".into())],
                vec![(TermExpr::var("b"), "y".into())],
            ),
            vec![(TermExpr::var("c"), "a".into())],
            vec![(TermExpr::var("d"), "b".into())],
        );
        let nf = push_substitutions(&thy, &node);
        assert_eq!(
            nf,
            ProtypeExpr::Sym {
                sym: "al".into(),
                left: vec![TermExpr::var("c")],
                right: vec![TermExpr::var("d")],
            }
        );
    }

    #[test]
    fn subst_eq_by_normalization() {
        let thy = thy();
        let src = Context(vec![
            ("s".into(), TypeExpr::Base("I".into())),
            ("t".into(), TypeExpr::Base("I".into())),
        ]);
        let tgt = Context::single("x", TypeExpr::Base("I".into()));
        let s = TermExpr::var("s");
        let t = TermExpr::var("t");
        // S == S
        assert!(check_subst_eq(&thy, &src, &[s.clone()], &[s.clone()], &tgt));
        // pi0<s,t> == s
        let proj = TermExpr::Proj0(Box::new(TermExpr::pair(s.clone(), t.clone())));
        assert!(check_subst_eq(&thy, &src, &[proj], &[s.clone()], &tgt));
        // distinct variables differ
        assert!(!check_subst_eq(&thy, &src, &[s], &[t], &tgt));
    }
}
