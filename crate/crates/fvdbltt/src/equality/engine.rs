//! Position-addressed rewriting: child navigation with procontext tracking,
//! script step application, and instance matching of equational facts.

use super::rules::{self, RuleCtx};
use crate::checker::{infer_proterm, CheckError, CheckResult};
use crate::rename::VarMap;
use crate::subst::{match_term, protype_nf_opt};
use crate::syntax::*;
use crate::theory::Theory;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Fwd,
    Rev,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Pro(ProtermExpr),
    Tm(TermExpr),
    Iso(IsoExpr),
    Nat(usize),
}

pub type Bindings = BTreeMap<String, BoundValue>;

/// A child position of a proterm node, with its local procontext and, when
/// derivable, its expected protype.
pub(crate) struct Child {
    pub idx: usize,
    pub pc: ProContext,
    pub expected: Option<ProtypeExpr>,
    pub term: ProtermExpr,
}

fn nf(thy: &Theory, pc: &ProContext, p: &ProtypeExpr) -> ProtypeExpr {
    protype_nf_opt(thy, Some(pc.first()), Some(pc.last()), p)
}

/// Computes the navigable children of a node. Children inside opaque
/// positions (isomorphism expressions, substitution components) are not
/// addressable.
pub(crate) fn children(
    thy: &Theory,
    pc: &ProContext,
    expected: Option<&ProtypeExpr>,
    t: &ProtermExpr,
) -> CheckResult<Vec<Child>> {
    use ProtermExpr::*;
    let same = |idx: usize, term: &ProtermExpr, exp: Option<ProtypeExpr>| Child {
        idx,
        pc: pc.clone(),
        expected: exp,
        term: term.clone(),
    };
    Ok(match t {
        ProVar(_) | AxiomRef(_) | Empty | Refl { .. } | Tab { .. } => vec![],
        Pair(a, b) => {
            let (ea, eb) = match expected.map(|e| nf(thy, pc, e)) {
                Some(ProtypeExpr::And(x, y)) => (Some(*x), Some(*y)),
                _ => (None, None),
            };
            vec![same(0, a, ea), same(1, b, eb)]
        }
        Proj0(a) | Proj1(a) => vec![same(0, a, None)],
        Invol(a) => {
            let inner_exp = expected.map(|e| match nf(thy, pc, e) {
                ProtypeExpr::Invol(x) => *x,
                other => ProtypeExpr::Invol(Box::new(other)),
            });
            vec![Child { idx: 0, pc: flip_pc(pc), expected: inner_exp, term: a.as_ref().clone() }]
        }
        ProSubst { target, args } => {
            let refs: Vec<&ProtermExpr> = args.iter().map(|a| &a.proterm).collect();
            let slices = crate::checker::split_slices_pub(pc, &refs)?;
            let mut out = Vec::new();
            let mut tilde_ctx = Vec::new();
            let mut tilde_pv = Vec::new();
            for (i, (arg, sl)) in args.iter().zip(&slices).enumerate() {
                let sub = crate::checker::sub_pc_pub(pc, *sl);
                let (ty, _) = infer_proterm(thy, &sub, &arg.proterm)?;
                tilde_ctx.push(pc.contexts[sl.c0].clone());
                let name = arg
                    .target
                    .clone()
                    .unwrap_or_else(|| format!("b{}", i + 1));
                tilde_pv.push((name, ty));
                out.push(Child {
                    idx: i + 1,
                    pc: sub,
                    expected: None,
                    term: arg.proterm.clone(),
                });
            }
            tilde_ctx.push(pc.last().clone());
            let target_pc = ProContext { contexts: tilde_ctx, provars: tilde_pv };
            out.insert(0, Child {
                idx: 0,
                pc: target_pc,
                expected: expected.cloned(),
                term: target.as_ref().clone(),
            });
            out
        }
        TermSubst { inner, groups } => match inner.as_ref() {
            Refl { .. } | Tab { .. } | AxiomRef(_) => vec![],
            _ => {
                let inner_pc = crate::checker::tsub_inner_pc_pub(thy, pc, groups)?;
                let inner_exp = expected.and_then(|e| {
                    crate::checker::tsub_abstract_expected_pub(thy, pc, groups, e)
                });
                vec![Child { idx: 0, pc: inner_pc, expected: inner_exp, term: inner.as_ref().clone() }]
            }
        },
        IsoApp { iso, arg } => {
            let exp = crate::checker::check_iso(thy, pc.first(), pc.last(), iso, None)
                .ok()
                .map(|(lhs, _, _)| lhs);
            vec![same(0, arg, exp)]
        }
        IdeInd { pos, body } => {
            let (premise_pc, map) = ide_premise(thy, pc, *pos)?;
            let exp = expected.map(|e| crate::rename::rename_protype(e, &map));
            vec![Child { idx: 0, pc: premise_pc, expected: exp, term: body.as_ref().clone() }]
        }
        CompIntro(a, b) => {
            let slices = crate::checker::split_slices_pub(pc, &[a, b])?;
            let pa = crate::checker::sub_pc_pub(pc, slices[0]);
            let pb = crate::checker::sub_pc_pub(pc, slices[1]);
            let (ea, eb) = match expected.map(|e| nf(thy, pc, e)) {
                Some(ProtypeExpr::Comp { left, right, .. }) => (Some(*left), Some(*right)),
                _ => (None, None),
            };
            vec![
                Child { idx: 0, pc: pa, expected: ea, term: a.as_ref().clone() },
                Child { idx: 1, pc: pb, expected: eb, term: b.as_ref().clone() },
            ]
        }
        CompInd { pos, var_a, mid, var_b, body } => {
            let premise_pc = comp_premise(thy, pc, *pos, var_a, mid, var_b)?;
            vec![Child {
                idx: 0,
                pc: premise_pc,
                expected: expected.cloned(),
                term: body.as_ref().clone(),
            }]
        }
        RExtApp(a, e) | RLiftApp(a, e) => {
            let slices = crate::checker::split_slices_pub(pc, &[a, e])?;
            let pa = crate::checker::sub_pc_pub(pc, slices[0]);
            let pe = crate::checker::sub_pc_pub(pc, slices[1]);
            vec![
                Child { idx: 0, pc: pa, expected: None, term: a.as_ref().clone() },
                Child { idx: 1, pc: pe, expected: None, term: e.as_ref().clone() },
            ]
        }
        RExtTr { ann, cvar, provar, body } => {
            let owned;
            let e = match (ann, expected) {
                (Some(a), _) => a.as_ref(),
                (None, Some(e)) => {
                    owned = e;
                    owned
                }
                (None, None) => {
                    return Err(CheckError::Shape(
                        "cannot navigate into an unannotated transpose without its protype".into(),
                    ))
                }
            };
            let (premise_pc, beta) = rext_premise(thy, pc, e, cvar, provar)?;
            vec![Child { idx: 0, pc: premise_pc, expected: Some(beta), term: body.as_ref().clone() }]
        }
        RLiftTr { ann, cvar, provar, body } => {
            let owned;
            let e = match (ann, expected) {
                (Some(a), _) => a.as_ref(),
                (None, Some(e)) => {
                    owned = e;
                    owned
                }
                (None, None) => {
                    return Err(CheckError::Shape(
                        "cannot navigate into an unannotated transpose without its protype".into(),
                    ))
                }
            };
            let (premise_pc, beta) = rlift_premise(thy, pc, e, cvar, provar)?;
            vec![Child { idx: 0, pc: premise_pc, expected: Some(beta), term: body.as_ref().clone() }]
        }
        TabPath { left, right } => {
            vec![same(0, left, None), same(1, right, None)]
        }
    })
}

pub(crate) fn flip_pc(pc: &ProContext) -> ProContext {
    ProContext {
        contexts: pc.contexts.iter().rev().cloned().collect(),
        provars: pc
            .provars
            .iter()
            .rev()
            .map(|(p, al)| {
                let flipped = match al {
                    ProtypeExpr::Invol(x) => x.as_ref().clone(),
                    other => ProtypeExpr::Invol(Box::new(other.clone())),
                };
                (p.clone(), flipped)
            })
            .collect(),
    }
}

/// Premise procontext of `ideind[pos]` plus the merge renaming.
pub(crate) fn ide_premise(
    thy: &Theory,
    pc: &ProContext,
    pos: usize,
) -> CheckResult<(ProContext, VarMap)> {
    if pos == 0 || pos > pc.provars.len() {
        return Err(CheckError::Shape(format!("ideind position {pos} out of range")));
    }
    let lctx = &pc.contexts[pos - 1];
    let rctx = &pc.contexts[pos];
    let x = match lctx.0.as_slice() {
        [(v, _)] => v.clone(),
        _ => return Err(CheckError::Shape("ideind endpoints must be single variables".into())),
    };
    let x2 = match rctx.0.as_slice() {
        [(v, _)] => v.clone(),
        _ => return Err(CheckError::Shape("ideind endpoints must be single variables".into())),
    };
    let _ = thy;
    let mut map = VarMap::new();
    map.insert(x2, x);
    let mut contexts = Vec::new();
    contexts.extend(pc.contexts[..pos].iter().cloned());
    contexts.extend(pc.contexts[pos + 1..].iter().cloned());
    let mut provars = Vec::new();
    for (i, (p, al)) in pc.provars.iter().enumerate() {
        if i + 1 == pos {
            continue;
        }
        provars.push((p.clone(), crate::rename::rename_protype(al, &map)));
    }
    Ok((ProContext { contexts, provars }, map))
}

pub(crate) fn comp_premise(
    thy: &Theory,
    pc: &ProContext,
    pos: usize,
    var_a: &str,
    mid: &(String, TypeExpr),
    var_b: &str,
) -> CheckResult<ProContext> {
    if pos == 0 || pos > pc.provars.len() {
        return Err(CheckError::Shape(format!("compind position {pos} out of range")));
    }
    let (_, kappa) = &pc.provars[pos - 1];
    let kn = protype_nf_opt(
        thy,
        Some(&pc.contexts[pos - 1]),
        Some(&pc.contexts[pos]),
        kappa,
    );
    let (alpha, dm, beta) = match kn {
        ProtypeExpr::Comp { left, mid: dm, right } => (*left, dm, *right),
        other => {
            return Err(CheckError::ProtypeMismatch {
                expected: "a composition protype".into(),
                got: format!("{other:?}"),
            })
        }
    };
    let mut map = VarMap::new();
    map.insert(dm.0.clone(), mid.0.clone());
    let alpha = crate::rename::rename_protype(&alpha, &map);
    let beta = crate::rename::rename_protype(&beta, &map);
    let mut contexts = Vec::new();
    contexts.extend(pc.contexts[..pos].iter().cloned());
    contexts.push(Context::single(mid.0.clone(), mid.1.clone()));
    contexts.extend(pc.contexts[pos..].iter().cloned());
    let mut provars = Vec::new();
    provars.extend(pc.provars[..pos - 1].iter().cloned());
    provars.push((var_a.to_string(), alpha));
    provars.push((var_b.to_string(), beta));
    provars.extend(pc.provars[pos..].iter().cloned());
    Ok(ProContext { contexts, provars })
}

pub(crate) fn rext_premise(
    thy: &Theory,
    pc: &ProContext,
    expected: &ProtypeExpr,
    cvar: &str,
    provar: &str,
) -> CheckResult<(ProContext, ProtypeExpr)> {
    let (alpha, bound, beta) = match nf(thy, pc, expected) {
        ProtypeExpr::RExt { alpha, bound, beta } => (*alpha, bound, *beta),
        other => {
            return Err(CheckError::ProtypeMismatch {
                expected: "a right extension".into(),
                got: format!("{other:?}"),
            })
        }
    };
    let mut map = VarMap::new();
    map.insert(bound.0.clone(), cvar.to_string());
    let alpha = crate::rename::rename_protype(&alpha, &map);
    let beta = crate::rename::rename_protype(&beta, &map);
    let mut contexts = vec![Context::single(cvar.to_string(), bound.1.clone())];
    contexts.extend(pc.contexts.iter().cloned());
    let mut provars = vec![(provar.to_string(), alpha)];
    provars.extend(pc.provars.iter().cloned());
    Ok((ProContext { contexts, provars }, beta))
}

pub(crate) fn rlift_premise(
    thy: &Theory,
    pc: &ProContext,
    expected: &ProtypeExpr,
    cvar: &str,
    provar: &str,
) -> CheckResult<(ProContext, ProtypeExpr)> {
    let (beta, bound, alpha) = match nf(thy, pc, expected) {
        ProtypeExpr::RLift { beta, bound, alpha } => (*beta, bound, *alpha),
        other => {
            return Err(CheckError::ProtypeMismatch {
                expected: "a right lift".into(),
                got: format!("{other:?}"),
            })
        }
    };
    let mut map = VarMap::new();
    map.insert(bound.0.clone(), cvar.to_string());
    let alpha = crate::rename::rename_protype(&alpha, &map);
    let beta = crate::rename::rename_protype(&beta, &map);
    let mut contexts = pc.contexts.clone();
    contexts.push(Context::single(cvar.to_string(), bound.1.clone()));
    let mut provars = pc.provars.clone();
    provars.push((provar.to_string(), alpha));
    Ok((ProContext { contexts, provars }, beta))
}

/// Replaces the child at `idx` (per the numbering of [`children`]).
pub(crate) fn with_child(t: &ProtermExpr, idx: usize, new: ProtermExpr) -> ProtermExpr {
    use ProtermExpr::*;
    match (t, idx) {
        (Pair(_, b), 0) => ProtermExpr::pair(new, b.as_ref().clone()),
        (Pair(a, _), 1) => ProtermExpr::pair(a.as_ref().clone(), new),
        (Proj0(_), 0) => ProtermExpr::proj0(new),
        (Proj1(_), 0) => ProtermExpr::proj1(new),
        (Invol(_), 0) => ProtermExpr::Invol(Box::new(new)),
        (ProSubst { args, .. }, 0) => ProtermExpr::ProSubst {
            target: Box::new(new),
            args: args.clone(),
        },
        (ProSubst { target, args }, i) => {
            let mut args = args.clone();
            args[i - 1].proterm = new;
            ProtermExpr::ProSubst { target: target.clone(), args }
        }
        (TermSubst { groups, .. }, 0) => ProtermExpr::TermSubst {
            inner: Box::new(new),
            groups: groups.clone(),
        },
        (IsoApp { iso, .. }, 0) => ProtermExpr::IsoApp {
            iso: iso.clone(),
            arg: Box::new(new),
        },
        (IdeInd { pos, .. }, 0) => ProtermExpr::IdeInd { pos: *pos, body: Box::new(new) },
        (CompIntro(_, b), 0) => ProtermExpr::CompIntro(Box::new(new), b.clone()),
        (CompIntro(a, _), 1) => ProtermExpr::CompIntro(a.clone(), Box::new(new)),
        (CompInd { pos, var_a, mid, var_b, .. }, 0) => ProtermExpr::CompInd {
            pos: *pos,
            var_a: var_a.clone(),
            mid: mid.clone(),
            var_b: var_b.clone(),
            body: Box::new(new),
        },
        (RExtApp(_, e), 0) => ProtermExpr::RExtApp(Box::new(new), e.clone()),
        (RExtApp(a, _), 1) => ProtermExpr::RExtApp(a.clone(), Box::new(new)),
        (RLiftApp(_, e), 0) => ProtermExpr::RLiftApp(Box::new(new), e.clone()),
        (RLiftApp(a, _), 1) => ProtermExpr::RLiftApp(a.clone(), Box::new(new)),
        (RExtTr { ann, cvar, provar, .. }, 0) => ProtermExpr::RExtTr {
            ann: ann.clone(),
            cvar: cvar.clone(),
            provar: provar.clone(),
            body: Box::new(new),
        },
        (RLiftTr { ann, cvar, provar, .. }, 0) => ProtermExpr::RLiftTr {
            ann: ann.clone(),
            cvar: cvar.clone(),
            provar: provar.clone(),
            body: Box::new(new),
        },
        (TabPath { right, .. }, 0) => ProtermExpr::TabPath {
            left: Box::new(new),
            right: right.clone(),
        },
        (TabPath { left, .. }, 1) => ProtermExpr::TabPath {
            left: left.clone(),
            right: Box::new(new),
        },
        _ => unreachable!("with_child index out of range"),
    }
}

/// One leftmost-outermost normalizer step.
pub(crate) fn normalizer_step(
    thy: &Theory,
    pc: &ProContext,
    expected: Option<&ProtypeExpr>,
    t: &ProtermExpr,
) -> CheckResult<Option<(ProtermExpr, String)>> {
    let ctx = RuleCtx { thy, pc, expected };
    if let Some((next, rule)) = rules::try_normalizer(&ctx, t)? {
        return Ok(Some((next, rule)));
    }
    for child in children(thy, pc, expected, t)? {
        if let Some((next, rule)) =
            normalizer_step(thy, &child.pc, child.expected.as_ref(), &child.term)?
        {
            return Ok(Some((with_child(t, child.idx, next), rule)));
        }
    }
    Ok(None)
}

/// Enumerates every position (with its rule) where a normalizer rule fires.
pub fn normalizer_redexes(
    thy: &Theory,
    pc: &ProContext,
    expected: Option<&ProtypeExpr>,
    t: &ProtermExpr,
) -> CheckResult<Vec<(Vec<usize>, String)>> {
    let mut out = Vec::new();
    collect_redexes(thy, pc, expected, t, &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn collect_redexes(
    thy: &Theory,
    pc: &ProContext,
    expected: Option<&ProtypeExpr>,
    t: &ProtermExpr,
    path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, String)>,
) -> CheckResult<()> {
    let ctx = RuleCtx { thy, pc, expected };
    if let Some((_, rule)) = rules::try_normalizer(&ctx, t)? {
        out.push((path.clone(), rule));
    }
    for child in children(thy, pc, expected, t)? {
        path.push(child.idx);
        collect_redexes(thy, &child.pc, child.expected.as_ref(), &child.term, path, out)?;
        path.pop();
    }
    Ok(())
}

/// Applies the first normalizer rule that fires at the given position.
pub fn rewrite_step(
    thy: &Theory,
    pc: &ProContext,
    expected: Option<&ProtypeExpr>,
    t: &ProtermExpr,
    path: &[usize],
) -> CheckResult<ProtermExpr> {
    if path.is_empty() {
        let ctx = RuleCtx { thy, pc, expected };
        return match rules::try_normalizer(&ctx, t)? {
            Some((next, _)) => Ok(next),
            None => Err(CheckError::Shape("no rule fires at this position".into())),
        };
    }
    for child in children(thy, pc, expected, t)? {
        if child.idx == path[0] {
            let next = rewrite_step(thy, &child.pc, child.expected.as_ref(), &child.term, &path[1..])?;
            return Ok(with_child(t, child.idx, next));
        }
    }
    Err(CheckError::Shape("position does not exist".into()))
}

/// Applies a named rule instance at a path within a checked proterm and
/// re-checks the side conditions. The spec-level entry point for both the
/// script verifier and direct use.
pub fn apply_rule_instance(
    thy: &Theory,
    pc: &ProContext,
    protype: &ProtypeExpr,
    t: &ProtermExpr,
    rule: &str,
    dir: Direction,
    path: &[usize],
    binds: &Bindings,
) -> CheckResult<ProtermExpr> {
    apply_at(thy, pc, Some(protype), t, rule, dir, path, binds)
}

#[allow(clippy::too_many_arguments)]
fn apply_at(
    thy: &Theory,
    pc: &ProContext,
    expected: Option<&ProtypeExpr>,
    t: &ProtermExpr,
    rule: &str,
    dir: Direction,
    path: &[usize],
    binds: &Bindings,
) -> CheckResult<ProtermExpr> {
    if path.is_empty() {
        let ctx = RuleCtx { thy, pc, expected };
        return match rules::apply_named(rule, dir, &ctx, t, binds)? {
            Some(next) => Ok(next),
            None => Err(CheckError::Shape(format!(
                "rule {rule} is not an instance at this position"
            ))),
        };
    }
    for child in children(thy, pc, expected, t)? {
        if child.idx == path[0] {
            let next = apply_at(
                thy,
                &child.pc,
                child.expected.as_ref(),
                &child.term,
                rule,
                dir,
                &path[1..],
                binds,
            )?;
            return Ok(with_child(t, child.idx, next));
        }
    }
    Err(CheckError::Shape("position does not exist".into()))
}

pub(crate) fn apply_script_step(
    thy: &Theory,
    pc: &ProContext,
    omega: &ProtypeExpr,
    t: &ProtermExpr,
    step: &super::ScriptStep,
) -> CheckResult<ProtermExpr> {
    if step.rule == "norm" {
        if !step.path.is_empty() {
            return Err(CheckError::Shape("norm applies at the root position".into()));
        }
        return super::normalize_proterm(thy, pc, t, omega);
    }
    apply_at(thy, pc, Some(omega), t, &step.rule, step.dir, &step.path, &step.binds)
}

// ---------------------------------------------------------------------
// Instance matching of equational facts
// ---------------------------------------------------------------------

/// Flattened metavariable context of a fact; `None` when the fact's context
/// variable names collide (such facts match literally only).
fn fact_vars(fact: &EqJudgment) -> Option<Context> {
    let mut out = Vec::new();
    for ctx in &fact.pc.contexts {
        for (v, ty) in &ctx.0 {
            if out.iter().any(|(w, _)| w == v) {
                return None;
            }
            out.push((v.clone(), ty.clone()));
        }
    }
    Some(Context(out))
}

pub(crate) struct FactBinds {
    pub terms: Vec<(String, TermExpr)>,
    pub provars: BTreeMap<String, ProtermExpr>,
}

/// Does the goal arise from the fact by substituting terms for its context
/// variables and proterms for its provariables?
pub(crate) fn fact_matches_instance(thy: &Theory, fact: &EqJudgment, goal: &EqJudgment) -> bool {
    let Some(vars) = fact_vars(fact) else { return false };
    let pvs: Vec<&str> = fact.pc.provars.iter().map(|(p, _)| p.as_str()).collect();
    let mut binds = FactBinds { terms: Vec::new(), provars: BTreeMap::new() };
    let _ = thy;
    match_proterm_pattern(&fact.lhs, &goal.lhs, &vars, &pvs, &mut binds)
        && match_proterm_pattern(&fact.rhs, &goal.rhs, &vars, &pvs, &mut binds)
}

/// Structural pattern matching: fact provariables bind subterms, fact
/// context variables bind terms; binders must coincide literally.
pub(crate) fn match_proterm_pattern(
    pat: &ProtermExpr,
    t: &ProtermExpr,
    vars: &Context,
    pvs: &[&str],
    binds: &mut FactBinds,
) -> bool {
    use ProtermExpr::*;
    let tm = |p: &TermExpr, g: &TermExpr, binds: &mut FactBinds| -> bool {
        match_term(p, g, vars, &mut binds.terms)
    };
    let grp = |p: &SubstGroup, g: &SubstGroup, binds: &mut FactBinds| -> bool {
        p.len() == g.len()
            && p.iter().zip(g).all(|((pt, pv), (gt, gv))| pv == gv && tm(pt, gt, binds))
    };
    match (pat, t) {
        (ProVar(b), _) if pvs.contains(&b.as_str()) => {
            if let Some(prev) = binds.provars.get(b) {
                alpha_equal(ExprRef::Proterm(prev), ExprRef::Proterm(t)).unwrap_or(false)
            } else {
                binds.provars.insert(b.clone(), t.clone());
                true
            }
        }
        (ProVar(a), ProVar(b)) => a == b,
        (AxiomRef(a), AxiomRef(b)) => a == b,
        (Pair(a1, b1), Pair(a2, b2)) => {
            match_proterm_pattern(a1, a2, vars, pvs, binds)
                && match_proterm_pattern(b1, b2, vars, pvs, binds)
        }
        (Proj0(a), Proj0(b)) | (Proj1(a), Proj1(b)) | (Invol(a), Invol(b)) => {
            match_proterm_pattern(a, b, vars, pvs, binds)
        }
        (Empty, Empty) => true,
        (
            ProSubst { target: t1, args: a1 },
            ProSubst { target: t2, args: a2 },
        ) => {
            a1.len() == a2.len()
                && match_proterm_pattern(t1, t2, vars, pvs, binds)
                && a1
                    .iter()
                    .zip(a2)
                    .all(|(x, y)| match_proterm_pattern(&x.proterm, &y.proterm, vars, pvs, binds))
        }
        (
            TermSubst { inner: i1, groups: g1 },
            TermSubst { inner: i2, groups: g2 },
        ) => {
            g1.len() == g2.len()
                && g1.iter().zip(g2).all(|(x, y)| grp(x, y, binds))
                && match_proterm_pattern(i1, i2, vars, pvs, binds)
        }
        (IsoApp { iso: u1, arg: m1 }, IsoApp { iso: u2, arg: m2 }) => {
            alpha_equal(ExprRef::Iso(u1), ExprRef::Iso(u2)).unwrap_or(false)
                && match_proterm_pattern(m1, m2, vars, pvs, binds)
        }
        (Refl { ty: t1, var: v1 }, Refl { ty: t2, var: v2 }) => {
            t1 == t2 && tm(&TermExpr::var(v1.clone()), &TermExpr::var(v2.clone()), binds)
        }
        (IdeInd { pos: p1, body: b1 }, IdeInd { pos: p2, body: b2 }) => {
            p1 == p2 && match_proterm_pattern(b1, b2, vars, pvs, binds)
        }
        (CompIntro(a1, b1), CompIntro(a2, b2)) => {
            match_proterm_pattern(a1, a2, vars, pvs, binds)
                && match_proterm_pattern(b1, b2, vars, pvs, binds)
        }
        (
            CompInd { pos: p1, var_a: a1, mid: m1, var_b: b1, body: c1 },
            CompInd { pos: p2, var_a: a2, mid: m2, var_b: b2, body: c2 },
        ) => {
            p1 == p2
                && a1 == a2
                && b1 == b2
                && m1 == m2
                && match_proterm_pattern(c1, c2, vars, pvs, binds)
        }
        (RExtApp(a1, e1), RExtApp(a2, e2)) | (RLiftApp(a1, e1), RLiftApp(a2, e2)) => {
            match_proterm_pattern(a1, a2, vars, pvs, binds)
                && match_proterm_pattern(e1, e2, vars, pvs, binds)
        }
        (
            RExtTr { cvar: c1, provar: p1, body: b1, .. },
            RExtTr { cvar: c2, provar: p2, body: b2, .. },
        )
        | (
            RLiftTr { cvar: c1, provar: p1, body: b1, .. },
            RLiftTr { cvar: c2, provar: p2, body: b2, .. },
        ) => c1 == c2 && p1 == p2 && match_proterm_pattern(b1, b2, vars, pvs, binds),
        (Tab { var: v1 }, Tab { var: v2 }) => {
            tm(&TermExpr::var(v1.clone()), &TermExpr::var(v2.clone()), binds)
        }
        (
            TabPath { left: l1, right: r1 },
            TabPath { left: l2, right: r2 },
        ) => {
            match_proterm_pattern(l1, l2, vars, pvs, binds)
                && match_proterm_pattern(r1, r2, vars, pvs, binds)
        }
        _ => false,
    }
}

/// Builds the instance of a fact side under matched bindings.
pub(crate) fn splice(pat: &ProtermExpr, binds: &FactBinds) -> ProtermExpr {
    let group: SubstGroup = binds
        .terms
        .iter()
        .map(|(v, t)| (t.clone(), v.clone()))
        .collect();
    splice_rec(pat, &group, &binds.provars)
}

fn splice_term(t: &TermExpr, group: &SubstGroup) -> TermExpr {
    crate::subst::subst_eval(t, group)
}

fn splice_rec(
    pat: &ProtermExpr,
    group: &SubstGroup,
    pbinds: &BTreeMap<String, ProtermExpr>,
) -> ProtermExpr {
    use ProtermExpr::*;
    match pat {
        ProVar(b) => pbinds.get(b).cloned().unwrap_or_else(|| pat.clone()),
        AxiomRef(_) | Empty => pat.clone(),
        Pair(a, b) => {
            ProtermExpr::pair(splice_rec(a, group, pbinds), splice_rec(b, group, pbinds))
        }
        Proj0(a) => ProtermExpr::proj0(splice_rec(a, group, pbinds)),
        Proj1(a) => ProtermExpr::proj1(splice_rec(a, group, pbinds)),
        Invol(a) => ProtermExpr::Invol(Box::new(splice_rec(a, group, pbinds))),
        ProSubst { target, args } => ProtermExpr::ProSubst {
            target: Box::new(splice_rec(target, group, pbinds)),
            args: args
                .iter()
                .map(|a| ProArg {
                    proterm: splice_rec(&a.proterm, group, pbinds),
                    target: a.target.clone(),
                })
                .collect(),
        },
        TermSubst { inner, groups } => ProtermExpr::TermSubst {
            inner: Box::new(splice_rec(inner, group, pbinds)),
            groups: groups
                .iter()
                .map(|g| g.iter().map(|(c, x)| (splice_term(c, group), x.clone())).collect())
                .collect(),
        },
        IsoApp { iso, arg } => ProtermExpr::IsoApp {
            iso: iso.clone(),
            arg: Box::new(splice_rec(arg, group, pbinds)),
        },
        Refl { ty, var } => match splice_term(&TermExpr::var(var.clone()), group) {
            TermExpr::Var(v) => Refl { ty: ty.clone(), var: v },
            t => ProtermExpr::term_subst(
                Refl { ty: ty.clone(), var: var.clone() },
                vec![vec![(t, var.clone())]],
            ),
        },
        IdeInd { pos, body } => ProtermExpr::IdeInd {
            pos: *pos,
            body: Box::new(splice_rec(body, group, pbinds)),
        },
        CompIntro(a, b) => ProtermExpr::CompIntro(
            Box::new(splice_rec(a, group, pbinds)),
            Box::new(splice_rec(b, group, pbinds)),
        ),
        CompInd { pos, var_a, mid, var_b, body } => ProtermExpr::CompInd {
            pos: *pos,
            var_a: var_a.clone(),
            mid: mid.clone(),
            var_b: var_b.clone(),
            body: Box::new(splice_rec(body, group, pbinds)),
        },
        RExtApp(a, e) => ProtermExpr::RExtApp(
            Box::new(splice_rec(a, group, pbinds)),
            Box::new(splice_rec(e, group, pbinds)),
        ),
        RLiftApp(a, e) => ProtermExpr::RLiftApp(
            Box::new(splice_rec(a, group, pbinds)),
            Box::new(splice_rec(e, group, pbinds)),
        ),
        RExtTr { ann, cvar, provar, body } => ProtermExpr::RExtTr {
            ann: ann.clone(),
            cvar: cvar.clone(),
            provar: provar.clone(),
            body: Box::new(splice_rec(body, group, pbinds)),
        },
        RLiftTr { ann, cvar, provar, body } => ProtermExpr::RLiftTr {
            ann: ann.clone(),
            cvar: cvar.clone(),
            provar: provar.clone(),
            body: Box::new(splice_rec(body, group, pbinds)),
        },
        Tab { var } => match splice_term(&TermExpr::var(var.clone()), group) {
            TermExpr::Var(v) => Tab { var: v },
            t => ProtermExpr::term_subst(
                Tab { var: var.clone() },
                vec![vec![(t, var.clone())]],
            ),
        },
        TabPath { left, right } => ProtermExpr::TabPath {
            left: Box::new(splice_rec(left, group, pbinds)),
            right: Box::new(splice_rec(right, group, pbinds)),
        },
    }
}
