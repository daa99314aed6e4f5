//! Inference and checking of proterms over interleaved procontexts.
//!
//! Most formers infer; the binding eliminators and transposes (`ideind`,
//! `rtr`, `ltr`) check against an expected protype, which distributes
//! through pairing, prosubstitution targets, iso application arguments, and
//! the intro formers.

use super::iso::check_iso;
use super::*;
use crate::rename::{rename_proterm, rename_protype, VarMap};
use crate::subst::protype_nf_opt;
use crate::syntax::*;
use crate::theory::Theory;

/// Infers the protype of a proterm. Returns the protype (not normalized)
/// and the derivation.
pub fn infer_proterm(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
) -> CheckResult<(ProtypeExpr, Derivation)> {
    infer(thy, pc, mu)
}

/// Checks a proterm against an expected protype.
pub fn check_proterm(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    expected: &ProtypeExpr,
) -> CheckResult<Derivation> {
    check(thy, pc, mu, expected)
}

fn done(
    pc: &ProContext,
    mu: &ProtermExpr,
    rule: &'static str,
    protype: ProtypeExpr,
    premises: Vec<Derivation>,
) -> (ProtypeExpr, Derivation) {
    let conclusion = Judgment::Proterm {
        pc: pc.clone(),
        proterm: mu.clone(),
        protype: protype.clone(),
    };
    (protype, Derivation { rule, premises, conclusion })
}

fn nf_here(thy: &Theory, pc: &ProContext, p: &ProtypeExpr) -> ProtypeExpr {
    protype_nf_opt(thy, Some(pc.first()), Some(pc.last()), p)
}

fn infer(thy: &Theory, pc: &ProContext, mu: &ProtermExpr) -> CheckResult<(ProtypeExpr, Derivation)> {
    match mu {
        ProtermExpr::ProVar(a) => {
            let hit = pc.provars.iter().position(|(p, _)| p == a);
            match hit {
                None => Err(CheckError::UnboundProvariable(a.clone())),
                Some(_) if pc.provars.len() != 1 => Err(CheckError::Shape(format!(
                    "a provariable consumes exactly its own hypothesis; {} extra provariable(s) in scope",
                    pc.provars.len() - 1
                ))),
                Some(i) => {
                    let al = pc.provars[i].1.clone();
                    Ok(done(pc, mu, "provar", al, vec![]))
                }
            }
        }
        ProtermExpr::AxiomRef(k) => {
            let decl = thy
                .sig
                .proterm_axioms
                .get(k)
                .ok_or_else(|| CheckError::UnknownAxiom(k.clone()))?;
            let map = match_contexts(&decl.pc.contexts, &pc.contexts)
                .map_err(|e| e.within(format!("the procontext of axiom {k}")))?;
            if decl.pc.provars.len() != pc.provars.len() {
                return Err(CheckError::Shape(format!(
                    "axiom {k} takes {} hypotheses, procontext has {}",
                    decl.pc.provars.len(),
                    pc.provars.len()
                )));
            }
            for ((_, dal), (i, (p, al))) in
                decl.pc.provars.iter().zip(pc.provars.iter().enumerate())
            {
                let want = rename_decl_protype(dal, &map);
                if !protypes_match(thy, &pc.contexts[i], &pc.contexts[i + 1], &want, al) {
                    return Err(protype_mismatch(thy, &pc.contexts[i], &pc.contexts[i + 1], &want, al)
                        .within(format!("hypothesis {p} of axiom {k}")));
                }
            }
            let result = rename_decl_protype(&decl.result, &map);
            Ok(done(pc, mu, "axiom", result, vec![]))
        }
        ProtermExpr::Pair(a, b) => {
            let (ta, da) = infer(thy, pc, a)?;
            let (tb, db) = infer(thy, pc, b)?;
            Ok(done(pc, mu, "pair-intro", ProtypeExpr::and(ta, tb), vec![da, db]))
        }
        ProtermExpr::Proj0(a) => {
            let (ta, da) = infer(thy, pc, a)?;
            match nf_here(thy, pc, &ta) {
                ProtypeExpr::And(x, _) => Ok(done(pc, mu, "proj0-elim", *x, vec![da])),
                other => Err(CheckError::ProtypeMismatch {
                    expected: "a conjunction".into(),
                    got: format!("{other:?}"),
                }),
            }
        }
        ProtermExpr::Proj1(a) => {
            let (ta, da) = infer(thy, pc, a)?;
            match nf_here(thy, pc, &ta) {
                ProtypeExpr::And(_, y) => Ok(done(pc, mu, "proj1-elim", *y, vec![da])),
                other => Err(CheckError::ProtypeMismatch {
                    expected: "a conjunction".into(),
                    got: format!("{other:?}"),
                }),
            }
        }
        ProtermExpr::Empty => Ok(done(pc, mu, "top-intro", ProtypeExpr::Top, vec![])),
        ProtermExpr::ProSubst { .. } => infer_prosubst(thy, pc, mu, None),
        ProtermExpr::TermSubst { .. } => infer_term_subst(thy, pc, mu, None),
        ProtermExpr::IsoApp { iso, arg } => {
            let (lhs, rhs, di) = check_iso(thy, pc.first(), pc.last(), iso, None)?;
            let (ta, da) = infer(thy, pc, arg)?;
            if !protypes_match(thy, pc.first(), pc.last(), &lhs, &ta) {
                return Err(protype_mismatch(thy, pc.first(), pc.last(), &lhs, &ta)
                    .within("the argument of an iso application"));
            }
            Ok(done(pc, mu, "iso-app", rhs, vec![di, da]))
        }
        ProtermExpr::Refl { ty, var } => {
            if !thy.sig.enabled(Extension::Ide) {
                return Err(CheckError::ExtensionDisabled(Extension::Ide));
            }
            if !pc.provars.is_empty() {
                return Err(CheckError::Shape(
                    "refl takes no hypotheses; the procontext must be a single context".into(),
                ));
            }
            let dt = check_type(thy, ty)?;
            match pc.first().lookup(var) {
                Some(t) if types_equal(t, ty) => {
                    let path = ProtypeExpr::path(TermExpr::var(var.clone()), ty.clone(), TermExpr::var(var.clone()));
                    Ok(done(pc, mu, "refl-intro", path, vec![dt]))
                }
                Some(t) => Err(CheckError::TypeMismatch {
                    expected: format!("{ty:?}"),
                    got: format!("{t:?}"),
                }),
                None => Err(CheckError::UnboundVariable(var.clone())),
            }
        }
        ProtermExpr::IdeInd { .. } => Err(CheckError::AnnotationNeeded(
            "ideind checks against an expected protype".into(),
        )),
        ProtermExpr::CompIntro(a, b) => {
            if !thy.sig.enabled(Extension::Comp) {
                return Err(CheckError::ExtensionDisabled(Extension::Comp));
            }
            let slices = split_slices(pc, &[a, b])?;
            let pa = sub_pc(pc, slices[0]);
            let pb = sub_pc(pc, slices[1]);
            let (ta, da) = infer(thy, &pa, a)?;
            let (tb, db) = infer(thy, &pb, b)?;
            let midc = &pc.contexts[slices[0].c1];
            let (m, mt) = single_var(midc).ok_or_else(|| {
                CheckError::Shape("the middle of a composition must be a single variable".into())
            })?;
            Ok(done(
                pc,
                mu,
                "comp-intro",
                ProtypeExpr::Comp {
                    left: Box::new(ta),
                    mid: (m.clone(), mt.clone()),
                    right: Box::new(tb),
                },
                vec![da, db],
            ))
        }
        ProtermExpr::CompInd { .. } => infer_comp_ind(thy, pc, mu, None),
        ProtermExpr::RExtApp(a, e) => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let slices = split_slices(pc, &[a, e])?;
            let pa = sub_pc(pc, slices[0]);
            let pe = sub_pc(pc, slices[1]);
            let (te, de) = infer(thy, &pe, e)?;
            let (alpha, bound, beta) = match nf_here(thy, &pe, &te) {
                ProtypeExpr::RExt { alpha, bound, beta } => (*alpha, bound, *beta),
                ProtypeExpr::Rest { .. } => {
                    return Err(CheckError::Shape(
                        "cannot apply a restricted right extension; mediate with restrext".into(),
                    ))
                }
                other => {
                    return Err(CheckError::ProtypeMismatch {
                        expected: "a right extension".into(),
                        got: format!("{other:?}"),
                    })
                }
            };
            let (ta, da) = infer(thy, &pa, a)?;
            let u = match_boundary_instance(
                thy, &pa, &bound, &alpha, &ta, pa.first(),
            )
            .map_err(|e| e.within("the first argument of rbl"))?;
            let result = instance_protype(thy, &beta, &bound, &u, pc.last(), true);
            Ok(done(pc, mu, "rext-app", result, vec![da, de]))
        }
        ProtermExpr::RLiftApp(e, a) => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let slices = split_slices(pc, &[e, a])?;
            let pe = sub_pc(pc, slices[0]);
            let pa = sub_pc(pc, slices[1]);
            let (te, de) = infer(thy, &pe, e)?;
            let (beta, bound, alpha) = match nf_here(thy, &pe, &te) {
                ProtypeExpr::RLift { beta, bound, alpha } => (*beta, bound, *alpha),
                ProtypeExpr::Rest { .. } => {
                    return Err(CheckError::Shape(
                        "cannot apply a restricted right lift; mediate with restrlift".into(),
                    ))
                }
                other => {
                    return Err(CheckError::ProtypeMismatch {
                        expected: "a right lift".into(),
                        got: format!("{other:?}"),
                    })
                }
            };
            let (ta, da) = infer(thy, &pa, a)?;
            let u = match_boundary_instance(
                thy, &pa, &bound, &alpha, &ta, pa.last(),
            )
            .map_err(|e| e.within("the second argument of lbl"))?;
            let result = instance_protype(thy, &beta, &bound, &u, pc.first(), false);
            Ok(done(pc, mu, "rlift-app", result, vec![de, da]))
        }
        ProtermExpr::RExtTr { ann: Some(a), .. } | ProtermExpr::RLiftTr { ann: Some(a), .. } => {
            let ann = a.as_ref().clone();
            let d = check(thy, pc, mu, &ann)?;
            Ok((ann, d))
        }
        ProtermExpr::RExtTr { ann: None, .. } | ProtermExpr::RLiftTr { ann: None, .. } => {
            Err(CheckError::AnnotationNeeded(
                "a transpose checks against an expected filler protype".into(),
            ))
        }
        ProtermExpr::Tab { var } => {
            if !thy.sig.enabled(Extension::Compr) {
                return Err(CheckError::ExtensionDisabled(Extension::Compr));
            }
            if !pc.provars.is_empty() {
                return Err(CheckError::Shape(
                    "tab takes no hypotheses; the procontext must be a single context".into(),
                ));
            }
            match pc.first().lookup(var) {
                Some(TypeExpr::Compr(c)) => {
                    let result = ProtypeExpr::rest(
                        c.protype.clone(),
                        vec![(TermExpr::TabL(Box::new(TermExpr::var(var.clone()))), c.lvar.clone())],
                        vec![(TermExpr::TabR(Box::new(TermExpr::var(var.clone()))), c.rvar.clone())],
                    );
                    Ok(done(pc, mu, "tab", result, vec![]))
                }
                Some(t) => Err(CheckError::TypeMismatch {
                    expected: "a comprehension type".into(),
                    got: format!("{t:?}"),
                }),
                None => Err(CheckError::UnboundVariable(var.clone())),
            }
        }
        ProtermExpr::TabPath { left, right } => infer_tabpath(thy, pc, mu, left, right),
        ProtermExpr::Invol(a) => {
            if !thy.sig.enabled(Extension::Involution) {
                return Err(CheckError::ExtensionDisabled(Extension::Involution));
            }
            let flipped = flip_pc(pc);
            let (ta, da) = infer(thy, &flipped, a)?;
            Ok(done(pc, mu, "invol-intro", ProtypeExpr::Invol(Box::new(strip_invol(ta))), vec![da]))
        }
    }
}

/// Reverses a procontext and involutes its hypotheses.
fn flip_pc(pc: &ProContext) -> ProContext {
    ProContext {
        contexts: pc.contexts.iter().rev().cloned().collect(),
        provars: pc
            .provars
            .iter()
            .rev()
            .map(|(p, al)| (p.clone(), strip_or_add_invol(al)))
            .collect(),
    }
}

fn strip_or_add_invol(al: &ProtypeExpr) -> ProtypeExpr {
    match al {
        ProtypeExpr::Invol(inner) => inner.as_ref().clone(),
        other => ProtypeExpr::Invol(Box::new(other.clone())),
    }
}

fn strip_invol(al: ProtypeExpr) -> ProtypeExpr {
    match al {
        ProtypeExpr::Invol(inner) => *inner,
        other => other,
    }
}

fn check(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    expected: &ProtypeExpr,
) -> CheckResult<Derivation> {
    match mu {
        ProtermExpr::Pair(a, b) => {
            if let ProtypeExpr::And(ea, eb) = nf_here(thy, pc, expected) {
                let da = check(thy, pc, a, &ea)?;
                let db = check(thy, pc, b, &eb)?;
                let conclusion = Judgment::Proterm {
                    pc: pc.clone(),
                    proterm: mu.clone(),
                    protype: expected.clone(),
                };
                return Ok(Derivation { rule: "pair-intro", premises: vec![da, db], conclusion });
            }
            infer_and_compare(thy, pc, mu, expected)
        }
        ProtermExpr::ProSubst { .. } => {
            let (_, d) = infer_prosubst(thy, pc, mu, Some(expected))?;
            Ok(d)
        }
        ProtermExpr::TermSubst { .. } => {
            let (_, d) = infer_term_subst(thy, pc, mu, Some(expected))?;
            Ok(d)
        }
        ProtermExpr::IsoApp { iso, arg } => {
            let (lhs, rhs, di) = check_iso(thy, pc.first(), pc.last(), iso, None)?;
            if !protypes_match(thy, pc.first(), pc.last(), expected, &rhs) {
                return Err(protype_mismatch(thy, pc.first(), pc.last(), expected, &rhs));
            }
            let da = check(thy, pc, arg, &lhs)?;
            let conclusion = Judgment::Proterm {
                pc: pc.clone(),
                proterm: mu.clone(),
                protype: expected.clone(),
            };
            Ok(Derivation { rule: "iso-app", premises: vec![di, da], conclusion })
        }
        ProtermExpr::IdeInd { pos, body } => check_ide_ind(thy, pc, mu, *pos, body, expected),
        ProtermExpr::CompInd { .. } => {
            let (_, d) = infer_comp_ind(thy, pc, mu, Some(expected))?;
            Ok(d)
        }
        ProtermExpr::CompIntro(a, b) => {
            if !thy.sig.enabled(Extension::Comp) {
                return Err(CheckError::ExtensionDisabled(Extension::Comp));
            }
            if let ProtypeExpr::Comp { left, mid, right } = nf_here(thy, pc, expected) {
                let slices = split_slices(pc, &[a, b])?;
                let pa = sub_pc(pc, slices[0]);
                let pb = sub_pc(pc, slices[1]);
                let midc = &pc.contexts[slices[0].c1];
                if let Some((m, mt)) = single_var(midc) {
                    if m == &mid.0 && types_equal(mt, &mid.1) {
                        let da = check(thy, &pa, a, &left)?;
                        let db = check(thy, &pb, b, &right)?;
                        let conclusion = Judgment::Proterm {
                            pc: pc.clone(),
                            proterm: mu.clone(),
                            protype: expected.clone(),
                        };
                        return Ok(Derivation {
                            rule: "comp-intro",
                            premises: vec![da, db],
                            conclusion,
                        });
                    }
                }
            }
            infer_and_compare(thy, pc, mu, expected)
        }
        ProtermExpr::RExtTr { ann, cvar, provar, body } => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            if let Some(a) = ann {
                if !protypes_match(thy, pc.first(), pc.last(), expected, a) {
                    return Err(protype_mismatch(thy, pc.first(), pc.last(), expected, a)
                        .within("the annotation of a transpose"));
                }
            }
            let (alpha, bound, beta) = match nf_here(thy, pc, expected) {
                ProtypeExpr::RExt { alpha, bound, beta } => (*alpha, bound, *beta),
                other => {
                    return Err(CheckError::ProtypeMismatch {
                        expected: "a right extension".into(),
                        got: format!("{other:?}"),
                    })
                }
            };
            let mut map = VarMap::new();
            map.insert(bound.0.clone(), cvar.clone());
            let alpha = rename_protype(&alpha, &map);
            let beta = rename_protype(&beta, &map);
            ensure_fresh_var(pc, cvar)?;
            ensure_fresh_provar(pc, provar)?;
            let mut contexts = vec![Context::single(cvar.clone(), bound.1.clone())];
            contexts.extend(pc.contexts.iter().cloned());
            let mut provars = vec![(provar.clone(), alpha)];
            provars.extend(pc.provars.iter().cloned());
            let premise_pc = ProContext { contexts, provars };
            let db = check(thy, &premise_pc, body, &beta)?;
            let conclusion = Judgment::Proterm {
                pc: pc.clone(),
                proterm: mu.clone(),
                protype: expected.clone(),
            };
            Ok(Derivation { rule: "rext-intro", premises: vec![db], conclusion })
        }
        ProtermExpr::RLiftTr { ann, cvar, provar, body } => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            if let Some(a) = ann {
                if !protypes_match(thy, pc.first(), pc.last(), expected, a) {
                    return Err(protype_mismatch(thy, pc.first(), pc.last(), expected, a)
                        .within("the annotation of a transpose"));
                }
            }
            let (beta, bound, alpha) = match nf_here(thy, pc, expected) {
                ProtypeExpr::RLift { beta, bound, alpha } => (*beta, bound, *alpha),
                other => {
                    return Err(CheckError::ProtypeMismatch {
                        expected: "a right lift".into(),
                        got: format!("{other:?}"),
                    })
                }
            };
            let mut map = VarMap::new();
            map.insert(bound.0.clone(), cvar.clone());
            let alpha = rename_protype(&alpha, &map);
            let beta = rename_protype(&beta, &map);
            ensure_fresh_var(pc, cvar)?;
            ensure_fresh_provar(pc, provar)?;
            let mut contexts = pc.contexts.clone();
            contexts.push(Context::single(cvar.clone(), bound.1.clone()));
            let mut provars = pc.provars.clone();
            provars.push((provar.clone(), alpha));
            let premise_pc = ProContext { contexts, provars };
            let db = check(thy, &premise_pc, body, &beta)?;
            let conclusion = Judgment::Proterm {
                pc: pc.clone(),
                proterm: mu.clone(),
                protype: expected.clone(),
            };
            Ok(Derivation { rule: "rlift-intro", premises: vec![db], conclusion })
        }
        ProtermExpr::Invol(a) => {
            if !thy.sig.enabled(Extension::Involution) {
                return Err(CheckError::ExtensionDisabled(Extension::Involution));
            }
            let inner_expected = strip_or_add_invol(&nf_here(thy, pc, expected));
            let flipped = flip_pc(pc);
            let da = check(thy, &flipped, a, &inner_expected)?;
            let conclusion = Judgment::Proterm {
                pc: pc.clone(),
                proterm: mu.clone(),
                protype: expected.clone(),
            };
            Ok(Derivation { rule: "invol-intro", premises: vec![da], conclusion })
        }
        _ => infer_and_compare(thy, pc, mu, expected),
    }
}

fn infer_and_compare(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    expected: &ProtypeExpr,
) -> CheckResult<Derivation> {
    let (got, d) = infer(thy, pc, mu)?;
    if protypes_match(thy, pc.first(), pc.last(), expected, &got) {
        Ok(d)
    } else {
        Err(protype_mismatch(thy, pc.first(), pc.last(), expected, &got))
    }
}

fn ensure_fresh_var(pc: &ProContext, v: &str) -> CheckResult<()> {
    if pc.contexts.iter().any(|c| c.lookup(v).is_some()) {
        Err(CheckError::DuplicateName(v.to_string()))
    } else {
        Ok(())
    }
}

fn ensure_fresh_provar(pc: &ProContext, p: &str) -> CheckResult<()> {
    if pc.provars.iter().any(|(q, _)| q == p) {
        Err(CheckError::DuplicateName(p.to_string()))
    } else {
        Ok(())
    }
}

/// Prosubstitution: splits the procontext into slices, infers each argument,
/// assembles the target's tilde procontext, and checks the target there.
fn infer_prosubst(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    expected: Option<&ProtypeExpr>,
) -> CheckResult<(ProtypeExpr, Derivation)> {
    let (target, args) = match mu {
        ProtermExpr::ProSubst { target, args } => (target, args),
        _ => unreachable!(),
    };
    let refs: Vec<&ProtermExpr> = args.iter().map(|a| &a.proterm).collect();
    let slices = split_slices(pc, &refs)?;
    let mut premises = Vec::new();
    let mut tilde_contexts = Vec::new();
    let mut tilde_provars = Vec::new();
    for (i, (arg, slice)) in args.iter().zip(&slices).enumerate() {
        let sub = sub_pc(pc, *slice);
        let (ty, d) = infer(thy, &sub, &arg.proterm)
            .map_err(|e| e.within(format!("prosubstitution argument {}", i + 1)))?;
        let name = match (&arg.target, target.as_ref()) {
            (Some(n), _) => n.clone(),
            (None, ProtermExpr::AxiomRef(k)) => thy
                .sig
                .proterm_axioms
                .get(k)
                .and_then(|d| d.pc.provars.get(i).map(|(p, _)| p.clone()))
                .ok_or_else(|| CheckError::UnknownAxiom(k.clone()))?,
            (None, ProtermExpr::ProVar(b)) if args.len() == 1 => b.clone(),
            (None, _) => {
                return Err(CheckError::AnnotationNeeded(
                    "name the target provariable of each prosubstitution argument".into(),
                ))
            }
        };
        tilde_contexts.push(pc.contexts[slice.c0].clone());
        tilde_provars.push((name, ty));
        premises.push(d);
    }
    tilde_contexts.push(pc.last().clone());
    if tilde_contexts.len() != tilde_provars.len() + 1 {
        return Err(CheckError::Shape("malformed prosubstitution".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (p, _) in &tilde_provars {
        if !seen.insert(p.clone()) {
            return Err(CheckError::DuplicateName(p.clone()));
        }
    }
    let target_pc = ProContext { contexts: tilde_contexts, provars: tilde_provars };
    let (result, dt) = match expected {
        Some(exp) => {
            let d = check(thy, &target_pc, target, exp)
                .map_err(|e| e.within("the prosubstitution target"))?;
            (exp.clone(), d)
        }
        None => infer(thy, &target_pc, target)
            .map_err(|e| e.within("the prosubstitution target"))?,
    };
    premises.push(dt);
    Ok(done(pc, mu, "prosubst", result, premises))
}

/// Group-wise term substitution on a proterm. With an expected protype the
/// general mode checks the inner proterm against the abstracted expectation
/// (enabling check-mode formers under a substitution); rigid inner proterms
/// always infer.
fn infer_term_subst(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    expected: Option<&ProtypeExpr>,
) -> CheckResult<(ProtypeExpr, Derivation)> {
    let (inner, groups) = match mu {
        ProtermExpr::TermSubst { inner, groups } => (inner, groups),
        _ => unreachable!(),
    };
    let finish = |result: ProtypeExpr, premises: Vec<Derivation>| -> CheckResult<(ProtypeExpr, Derivation)> {
        if let Some(exp) = expected {
            if !protypes_match(thy, pc.first(), pc.last(), exp, &result) {
                return Err(protype_mismatch(thy, pc.first(), pc.last(), exp, &result));
            }
        }
        Ok(done(pc, mu, "tsub", result, premises))
    };
    if groups.len() != pc.contexts.len() {
        return Err(CheckError::Shape(format!(
            "term substitution has {} groups for {} context groups",
            groups.len(),
            pc.contexts.len()
        )));
    }
    let mut premises = Vec::new();
    let mut targets = Vec::new();
    for (g, src) in groups.iter().zip(&pc.contexts) {
        let (tgt, ds) = infer_subst_group(thy, src, g)?;
        premises.extend(ds);
        targets.push(tgt);
    }
    // rigid inner proterms determine their own procontext
    match inner.as_ref() {
        ProtermExpr::Refl { ty, var } => {
            if !thy.sig.enabled(Extension::Ide) {
                return Err(CheckError::ExtensionDisabled(Extension::Ide));
            }
            if groups.len() != 1 || !pc.provars.is_empty() {
                return Err(CheckError::Shape("refl takes a single substitution group".into()));
            }
            let g = &groups[0];
            if g.len() != 1 || &g[0].1 != var {
                return Err(CheckError::Shape(format!(
                    "the substitution into refl must target its variable {var}"
                )));
            }
            if !types_equal(&targets[0].0[0].1, ty) {
                return Err(CheckError::TypeMismatch {
                    expected: format!("{ty:?}"),
                    got: format!("{:?}", targets[0].0[0].1),
                });
            }
            let t = g[0].0.clone();
            let result = ProtypeExpr::path(t.clone(), ty.clone(), t);
            return finish(result, premises);
        }
        ProtermExpr::Tab { var } => {
            if !thy.sig.enabled(Extension::Compr) {
                return Err(CheckError::ExtensionDisabled(Extension::Compr));
            }
            if groups.len() != 1 || !pc.provars.is_empty() {
                return Err(CheckError::Shape("tab takes a single substitution group".into()));
            }
            let g = &groups[0];
            if g.len() != 1 || &g[0].1 != var {
                return Err(CheckError::Shape(format!(
                    "the substitution into tab must target its variable {var}"
                )));
            }
            let c = match &targets[0].0[0].1 {
                TypeExpr::Compr(c) => c.clone(),
                other => {
                    return Err(CheckError::TypeMismatch {
                        expected: "a comprehension type".into(),
                        got: format!("{other:?}"),
                    })
                }
            };
            let t = g[0].0.clone();
            let result = ProtypeExpr::rest(
                c.protype.clone(),
                vec![(TermExpr::TabL(Box::new(t.clone())), c.lvar.clone())],
                vec![(TermExpr::TabR(Box::new(t)), c.rvar.clone())],
            );
            return finish(result, premises);
        }
        ProtermExpr::AxiomRef(k) => {
            let decl = thy
                .sig
                .proterm_axioms
                .get(k)
                .ok_or_else(|| CheckError::UnknownAxiom(k.clone()))?;
            // groups target the declared contexts of the axiom
            let map = match_contexts(&decl.pc.contexts, &targets)
                .map_err(|e| e.within(format!("the substitution groups into axiom {k}")))?;
            let renamed_groups: Vec<SubstGroup> = groups
                .iter()
                .zip(&decl.pc.contexts)
                .map(|(g, dctx)| {
                    // rebind each component to the declared variable names
                    g.iter()
                        .zip(&dctx.0)
                        .map(|((c, _), (dv, _))| (c.clone(), dv.clone()))
                        .collect()
                })
                .collect();
            let _ = map;
            if decl.pc.provars.len() != pc.provars.len() {
                return Err(CheckError::Shape(format!(
                    "axiom {k} takes {} hypotheses, procontext has {}",
                    decl.pc.provars.len(),
                    pc.provars.len()
                )));
            }
            for (i, ((p, al), (_, dal))) in
                pc.provars.iter().zip(&decl.pc.provars).enumerate()
            {
                let want = ProtypeExpr::Rest {
                    inner: Box::new(dal.clone()),
                    left: renamed_groups[i].clone(),
                    right: renamed_groups[i + 1].clone(),
                };
                if !protypes_match(thy, &pc.contexts[i], &pc.contexts[i + 1], &want, al) {
                    return Err(protype_mismatch(
                        thy,
                        &pc.contexts[i],
                        &pc.contexts[i + 1],
                        &want,
                        al,
                    )
                    .within(format!("hypothesis {p} of the instance of axiom {k}")));
                }
            }
            let result = ProtypeExpr::Rest {
                inner: Box::new(decl.result.clone()),
                left: renamed_groups[0].clone(),
                right: renamed_groups[renamed_groups.len() - 1].clone(),
            };
            return finish(result, premises);
        }
        _ => {}
    }
    // General mode: recover the inner procontext by abstracting the outer
    // hypothesis protypes over the substitution groups, then validate.
    let mut inner_provars = Vec::new();
    for (i, (p, al)) in pc.provars.iter().enumerate() {
        let al_nf = protype_nf_opt(
            thy,
            Some(&pc.contexts[i]),
            Some(&pc.contexts[i + 1]),
            al,
        );
        let candidate = abstract_protype(&al_nf, &groups[i], &groups[i + 1]);
        let rebuilt = ProtypeExpr::Rest {
            inner: Box::new(candidate.clone()),
            left: groups[i].clone(),
            right: groups[i + 1].clone(),
        };
        if !protypes_match(thy, &pc.contexts[i], &pc.contexts[i + 1], &rebuilt, &al_nf) {
            return Err(CheckError::Shape(format!(
                "hypothesis {p} does not carry this substitution as its outermost restriction"
            )));
        }
        inner_provars.push((p.clone(), candidate));
    }
    let inner_pc = ProContext { contexts: targets, provars: inner_provars };
    check_procontext(thy, &inner_pc)
        .map_err(|e| e.within("the inner procontext of a term substitution"))?;
    match expected {
        Some(exp) => {
            let exp_nf = nf_here(thy, pc, exp);
            let candidate =
                abstract_protype(&exp_nf, &groups[0], &groups[groups.len() - 1]);
            let rebuilt = ProtypeExpr::Rest {
                inner: Box::new(candidate.clone()),
                left: groups[0].clone(),
                right: groups[groups.len() - 1].clone(),
            };
            if !protypes_match(thy, pc.first(), pc.last(), &rebuilt, &exp_nf) {
                return Err(CheckError::Shape(
                    "the expected protype does not carry this substitution as its outermost restriction"
                        .into(),
                ));
            }
            let di = check(thy, &inner_pc, inner, &candidate)?;
            premises.push(di);
            Ok(done(pc, mu, "tsub", exp.clone(), premises))
        }
        None => {
            let (ti, di) = infer(thy, &inner_pc, inner)?;
            premises.push(di);
            let result = ProtypeExpr::Rest {
                inner: Box::new(ti),
                left: groups[0].clone(),
                right: groups[groups.len() - 1].clone(),
            };
            Ok(done(pc, mu, "tsub", result, premises))
        }
    }
}

/// Recovers the inner procontext of a general-mode term substitution:
/// target contexts from the groups, hypothesis protypes by abstraction.
pub(crate) fn tsub_inner_pc_pub(
    thy: &Theory,
    pc: &ProContext,
    groups: &[SubstGroup],
) -> CheckResult<ProContext> {
    if groups.len() != pc.contexts.len() {
        return Err(CheckError::Shape("group count differs from the procontext".into()));
    }
    let mut targets = Vec::new();
    for (g, src) in groups.iter().zip(&pc.contexts) {
        let (tgt, _) = infer_subst_group(thy, src, g)?;
        targets.push(tgt);
    }
    let mut inner_provars = Vec::new();
    for (i, (p, al)) in pc.provars.iter().enumerate() {
        let al_nf = protype_nf_opt(
            thy,
            Some(&pc.contexts[i]),
            Some(&pc.contexts[i + 1]),
            al,
        );
        let candidate = abstract_protype(&al_nf, &groups[i], &groups[i + 1]);
        inner_provars.push((p.clone(), candidate));
    }
    Ok(ProContext { contexts: targets, provars: inner_provars })
}

/// Abstracts an expected protype through the outer groups of a term
/// substitution, validating the abstraction; `None` when it does not carry
/// the substitution.
pub(crate) fn tsub_abstract_expected_pub(
    thy: &Theory,
    pc: &ProContext,
    groups: &[SubstGroup],
    expected: &ProtypeExpr,
) -> Option<ProtypeExpr> {
    if groups.is_empty() {
        return None;
    }
    let exp_nf = nf_here(thy, pc, expected);
    let candidate = abstract_protype(&exp_nf, &groups[0], &groups[groups.len() - 1]);
    let rebuilt = ProtypeExpr::Rest {
        inner: Box::new(candidate.clone()),
        left: groups[0].clone(),
        right: groups[groups.len() - 1].clone(),
    };
    if protypes_match(thy, pc.first(), pc.last(), &rebuilt, &exp_nf) {
        Some(candidate)
    } else {
        None
    }
}

/// Replaces occurrences of each component term by its target variable,
/// left side with the left group, right side with the right group.
fn abstract_protype(p: &ProtypeExpr, lg: &SubstGroup, rg: &SubstGroup) -> ProtypeExpr {
    let empty: SubstGroup = Vec::new();
    match p {
        ProtypeExpr::Sym { sym, left, right } => ProtypeExpr::Sym {
            sym: sym.clone(),
            left: left.iter().map(|t| abstract_term(t, lg)).collect(),
            right: right.iter().map(|t| abstract_term(t, rg)).collect(),
        },
        ProtypeExpr::Top => ProtypeExpr::Top,
        ProtypeExpr::And(a, b) => {
            ProtypeExpr::and(abstract_protype(a, lg, rg), abstract_protype(b, lg, rg))
        }
        ProtypeExpr::Rest { inner, left, right } => ProtypeExpr::Rest {
            inner: inner.clone(),
            left: left.iter().map(|(c, x)| (abstract_term(c, lg), x.clone())).collect(),
            right: right.iter().map(|(c, x)| (abstract_term(c, rg), x.clone())).collect(),
        },
        ProtypeExpr::Path { left, ty, right } => ProtypeExpr::Path {
            left: Box::new(abstract_term(left, lg)),
            ty: ty.clone(),
            right: Box::new(abstract_term(right, rg)),
        },
        ProtypeExpr::Comp { left, mid, right } => ProtypeExpr::Comp {
            left: Box::new(abstract_protype(left, lg, &empty)),
            mid: mid.clone(),
            right: Box::new(abstract_protype(right, &empty, rg)),
        },
        ProtypeExpr::RExt { alpha, bound, beta } => ProtypeExpr::RExt {
            alpha: Box::new(abstract_protype(alpha, &empty, lg)),
            bound: bound.clone(),
            beta: Box::new(abstract_protype(beta, &empty, rg)),
        },
        ProtypeExpr::RLift { beta, bound, alpha } => ProtypeExpr::RLift {
            beta: Box::new(abstract_protype(beta, lg, &empty)),
            bound: bound.clone(),
            alpha: Box::new(abstract_protype(alpha, rg, &empty)),
        },
        ProtypeExpr::Invol(a) => ProtypeExpr::Invol(Box::new(abstract_protype(a, rg, lg))),
    }
}

fn abstract_term(t: &TermExpr, group: &SubstGroup) -> TermExpr {
    let mut out = t.clone();
    for (comp, var) in group {
        if matches!(comp, TermExpr::Var(v) if v == var) {
            continue;
        }
        out = abstract_one(&out, comp, var);
    }
    out
}

fn abstract_one(t: &TermExpr, comp: &TermExpr, var: &str) -> TermExpr {
    if alpha_equal(ExprRef::Term(t), ExprRef::Term(comp)).unwrap_or(false) {
        return TermExpr::var(var);
    }
    match t {
        TermExpr::Var(_) | TermExpr::UnitTm => t.clone(),
        TermExpr::App { sym, args } => TermExpr::App {
            sym: sym.clone(),
            args: args.iter().map(|a| abstract_one(a, comp, var)).collect(),
        },
        TermExpr::Pair(a, b) => {
            TermExpr::pair(abstract_one(a, comp, var), abstract_one(b, comp, var))
        }
        TermExpr::Proj0(a) => TermExpr::Proj0(Box::new(abstract_one(a, comp, var))),
        TermExpr::Proj1(a) => TermExpr::Proj1(Box::new(abstract_one(a, comp, var))),
        TermExpr::TabL(a) => TermExpr::TabL(Box::new(abstract_one(a, comp, var))),
        TermExpr::TabR(a) => TermExpr::TabR(Box::new(abstract_one(a, comp, var))),
        TermExpr::Subst { inner, subst } => TermExpr::Subst {
            inner: inner.clone(),
            subst: subst.iter().map(|(c, x)| (abstract_one(c, comp, var), x.clone())).collect(),
        },
        TermExpr::TabFactor { .. } => t.clone(),
    }
}

/// Directed path induction, check mode.
fn check_ide_ind(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    pos: usize,
    body: &ProtermExpr,
    expected: &ProtypeExpr,
) -> CheckResult<Derivation> {
    if !thy.sig.enabled(Extension::Ide) {
        return Err(CheckError::ExtensionDisabled(Extension::Ide));
    }
    if pos == 0 || pos > pc.provars.len() {
        return Err(CheckError::Shape(format!("ideind position {pos} out of range")));
    }
    let (pname, path) = &pc.provars[pos - 1];
    let lctx = &pc.contexts[pos - 1];
    let rctx = &pc.contexts[pos];
    let (x, xt) = single_var(lctx).ok_or_else(|| {
        CheckError::Shape("the path endpoints of ideind must be single-variable contexts".into())
    })?;
    let (x2, x2t) = single_var(rctx).ok_or_else(|| {
        CheckError::Shape("the path endpoints of ideind must be single-variable contexts".into())
    })?;
    let path_nf = protype_nf_opt(thy, Some(lctx), Some(rctx), path);
    match &path_nf {
        ProtypeExpr::Path { left, ty, right } => {
            let ok = matches!(left.as_ref(), TermExpr::Var(v) if v == x)
                && matches!(right.as_ref(), TermExpr::Var(v) if v == x2)
                && types_equal(ty, xt)
                && types_equal(ty, x2t);
            if !ok {
                return Err(CheckError::Shape(format!(
                    "hypothesis {pname} is not a generic path between its boundary variables"
                )));
            }
        }
        other => {
            return Err(CheckError::ProtypeMismatch {
                expected: "a path protype".into(),
                got: format!("{other:?}"),
            })
        }
    }
    // merge the right endpoint into the left one
    let mut map = VarMap::new();
    map.insert(x2.clone(), x.clone());
    let mut contexts = Vec::new();
    contexts.extend(pc.contexts[..pos].iter().cloned());
    contexts.extend(pc.contexts[pos + 1..].iter().cloned());
    let mut provars = Vec::new();
    for (i, (p, al)) in pc.provars.iter().enumerate() {
        if i + 1 == pos {
            continue;
        }
        provars.push((p.clone(), rename_protype(al, &map)));
    }
    let premise_pc = ProContext { contexts, provars };
    let premise_expected = rename_protype(expected, &map);
    let db = check(thy, &premise_pc, body, &premise_expected)
        .map_err(|e| e.within("the premise of ideind"))?;
    let conclusion = Judgment::Proterm {
        pc: pc.clone(),
        proterm: mu.clone(),
        protype: expected.clone(),
    };
    Ok(Derivation { rule: "ide-elim", premises: vec![db], conclusion })
}

/// Eliminator of the composition protype.
fn infer_comp_ind(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    expected: Option<&ProtypeExpr>,
) -> CheckResult<(ProtypeExpr, Derivation)> {
    let (pos, var_a, mid, var_b, body) = match mu {
        ProtermExpr::CompInd { pos, var_a, mid, var_b, body } => (*pos, var_a, mid, var_b, body),
        _ => unreachable!(),
    };
    if !thy.sig.enabled(Extension::Comp) {
        return Err(CheckError::ExtensionDisabled(Extension::Comp));
    }
    if pos == 0 || pos > pc.provars.len() {
        return Err(CheckError::Shape(format!("compind position {pos} out of range")));
    }
    let (cname, kappa) = &pc.provars[pos - 1];
    let lctx = &pc.contexts[pos - 1];
    let rctx = &pc.contexts[pos];
    let kn = protype_nf_opt(thy, Some(lctx), Some(rctx), kappa);
    let (alpha, dm, beta) = match kn {
        ProtypeExpr::Comp { left, mid: dm, right } => (*left, dm, *right),
        ProtypeExpr::Rest { .. } => {
            return Err(CheckError::Shape(format!(
                "hypothesis {cname} is a restricted composition; only the generic composite eliminates"
            )))
        }
        other => {
            return Err(CheckError::ProtypeMismatch {
                expected: "a composition protype".into(),
                got: format!("{other:?}"),
            })
        }
    };
    if !types_equal(&dm.1, &mid.1) {
        return Err(CheckError::TypeMismatch {
            expected: format!("{:?}", dm.1),
            got: format!("{:?}", mid.1),
        });
    }
    ensure_fresh_var(pc, &mid.0)?;
    ensure_fresh_provar(pc, var_a)?;
    ensure_fresh_provar(pc, var_b)?;
    if var_a == var_b {
        return Err(CheckError::DuplicateName(var_a.clone()));
    }
    let mut map = VarMap::new();
    map.insert(dm.0.clone(), mid.0.clone());
    let alpha = rename_protype(&alpha, &map);
    let beta = rename_protype(&beta, &map);
    let mut contexts = Vec::new();
    contexts.extend(pc.contexts[..pos].iter().cloned());
    contexts.push(Context::single(mid.0.clone(), mid.1.clone()));
    contexts.extend(pc.contexts[pos..].iter().cloned());
    let mut provars = Vec::new();
    provars.extend(pc.provars[..pos - 1].iter().cloned());
    provars.push((var_a.clone(), alpha));
    provars.push((var_b.clone(), beta));
    provars.extend(pc.provars[pos..].iter().cloned());
    let premise_pc = ProContext { contexts, provars };
    let (result, db) = match expected {
        Some(exp) => {
            let d = check(thy, &premise_pc, body, exp)
                .map_err(|e| e.within("the premise of compind"))?;
            (exp.clone(), d)
        }
        None => {
            infer(thy, &premise_pc, body).map_err(|e| e.within("the premise of compind"))?
        }
    };
    Ok(done(pc, mu, "comp-elim", result, vec![db]))
}

/// Matches an inferred protype against `pattern[u/bound]` for a boundary
/// term `u` in `uctx`, returning `u`.
pub(crate) fn match_boundary_pub(
    thy: &Theory,
    pa: &ProContext,
    bound: &(String, TypeExpr),
    pattern: &ProtypeExpr,
    got: &ProtypeExpr,
    uctx: &Context,
) -> CheckResult<TermExpr> {
    match_boundary_instance(thy, pa, bound, pattern, got, uctx)
}

fn match_boundary_instance(
    thy: &Theory,
    pa: &ProContext,
    bound: &(String, TypeExpr),
    pattern: &ProtypeExpr,
    got: &ProtypeExpr,
    uctx: &Context,
) -> CheckResult<TermExpr> {
    let wctx = Context::single(bound.0.clone(), bound.1.clone());
    let pat_nf = protype_nf_opt(thy, Some(&wctx), None, pattern);
    let got_nf = protype_nf_opt(thy, Some(pa.first()), Some(pa.last()), got);
    let mut binding: Option<TermExpr> = None;
    if !match_protype_meta(&pat_nf, &got_nf, &bound.0, &mut binding) {
        return Err(CheckError::ProtypeMismatch {
            expected: format!("an instance of {pat_nf:?}"),
            got: format!("{got_nf:?}"),
        });
    }
    match binding {
        Some(u) => {
            let ty = quick_ty(thy, uctx, &u);
            if ty.as_ref().map(|t| types_equal(t, &bound.1)) == Some(false) {
                return Err(CheckError::TypeMismatch {
                    expected: format!("{:?}", bound.1),
                    got: format!("{ty:?}"),
                });
            }
            Ok(u)
        }
        None => {
            // the bound variable does not occur; any boundary instance works
            // only when the result protype ignores it as well
            Ok(TermExpr::var(bound.0.clone()))
        }
    }
}

/// Structural matching of protypes where `var` occurrences in embedded
/// terms of `pat` bind to terms of the target.
fn match_protype_meta(
    pat: &ProtypeExpr,
    got: &ProtypeExpr,
    var: &str,
    binding: &mut Option<TermExpr>,
) -> bool {
    let term = |p: &TermExpr, g: &TermExpr, binding: &mut Option<TermExpr>| {
        match_term_meta(p, g, var, binding)
    };
    match (pat, got) {
        (
            ProtypeExpr::Sym { sym: f, left: l1, right: r1 },
            ProtypeExpr::Sym { sym: g, left: l2, right: r2 },
        ) => {
            f == g
                && l1.len() == l2.len()
                && r1.len() == r2.len()
                && l1.iter().zip(l2).all(|(p, q)| term(p, q, binding))
                && r1.iter().zip(r2).all(|(p, q)| term(p, q, binding))
        }
        (ProtypeExpr::Top, ProtypeExpr::Top) => true,
        (ProtypeExpr::And(a1, b1), ProtypeExpr::And(a2, b2)) => {
            match_protype_meta(a1, a2, var, binding) && match_protype_meta(b1, b2, var, binding)
        }
        (
            ProtypeExpr::Path { left: l1, ty: t1, right: r1 },
            ProtypeExpr::Path { left: l2, ty: t2, right: r2 },
        ) => types_equal(t1, t2) && term(l1, l2, binding) && term(r1, r2, binding),
        // under further binders the variable cannot be captured because the
        // normal forms keep constructors' bound variables distinct; compare
        // those alpha-structurally when the metavariable no longer occurs
        _ => {
            let (ltv, _) = free_variables(ExprRef::Protype(pat));
            if ltv.contains(var) {
                return false;
            }
            alpha_equal(ExprRef::Protype(pat), ExprRef::Protype(got)).unwrap_or(false)
        }
    }
}

fn match_term_meta(
    pat: &TermExpr,
    got: &TermExpr,
    var: &str,
    binding: &mut Option<TermExpr>,
) -> bool {
    if let TermExpr::Var(v) = pat {
        if v == var {
            return match binding {
                Some(prev) => {
                    alpha_equal(ExprRef::Term(prev), ExprRef::Term(got)).unwrap_or(false)
                }
                None => {
                    *binding = Some(got.clone());
                    true
                }
            };
        }
    }
    match (pat, got) {
        (TermExpr::Var(a), TermExpr::Var(b)) => a == b,
        (TermExpr::App { sym: f, args: xs }, TermExpr::App { sym: g, args: ys }) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| match_term_meta(x, y, var, binding))
        }
        (TermExpr::Pair(a, b), TermExpr::Pair(c, d)) => {
            match_term_meta(a, c, var, binding) && match_term_meta(b, d, var, binding)
        }
        (TermExpr::Proj0(a), TermExpr::Proj0(b))
        | (TermExpr::Proj1(a), TermExpr::Proj1(b))
        | (TermExpr::TabL(a), TermExpr::TabL(b))
        | (TermExpr::TabR(a), TermExpr::TabR(b)) => match_term_meta(a, b, var, binding),
        (TermExpr::UnitTm, TermExpr::UnitTm) => true,
        _ => false,
    }
}

/// Builds the instance `protype[u / bound]` on the bound side, identity on
/// the outer side. `bound_on_left` says whether the bound variable is the
/// left context of `protype`.
fn instance_protype(
    thy: &Theory,
    protype: &ProtypeExpr,
    bound: &(String, TypeExpr),
    u: &TermExpr,
    outer: &Context,
    bound_on_left: bool,
) -> ProtypeExpr {
    let bg: SubstGroup = vec![(u.clone(), bound.0.clone())];
    let og = identity_group(outer);
    let node = if bound_on_left {
        ProtypeExpr::rest(protype.clone(), bg, og)
    } else {
        ProtypeExpr::rest(protype.clone(), og, bg)
    };
    protype_nf_opt(thy, None, None, &node)
}

/// Path introduction into a comprehension type; the transport-compatibility
/// side condition is discharged through the proterm equational theory.
fn infer_tabpath(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    sigma: &ProtermExpr,
    theta: &ProtermExpr,
) -> CheckResult<(ProtypeExpr, Derivation)> {
    if !thy.sig.enabled(Extension::Compr) {
        return Err(CheckError::ExtensionDisabled(Extension::Compr));
    }
    if !thy.sig.enabled(Extension::Ide) {
        return Err(CheckError::ExtensionDisabled(Extension::Ide));
    }
    let (ts, ds) = infer(thy, pc, sigma)?;
    let (tt, dt) = infer(thy, pc, theta)?;
    let sn = nf_here(thy, pc, &ts);
    let tn = nf_here(thy, pc, &tt);
    let (s, t) = match (&sn, &tn) {
        (
            ProtypeExpr::Path { left: l1, right: r1, .. },
            ProtypeExpr::Path { left: l2, right: r2, .. },
        ) => {
            let unl = |e: &TermExpr| match e {
                TermExpr::TabL(u) => Some(u.as_ref().clone()),
                _ => None,
            };
            let unr = |e: &TermExpr| match e {
                TermExpr::TabR(u) => Some(u.as_ref().clone()),
                _ => None,
            };
            let s = unl(l1).ok_or_else(|| {
                CheckError::Shape("tabpath's first cell must target left-leg paths".into())
            })?;
            let t = unl(r1).ok_or_else(|| {
                CheckError::Shape("tabpath's first cell must target left-leg paths".into())
            })?;
            let s2 = unr(l2).ok_or_else(|| {
                CheckError::Shape("tabpath's second cell must target right-leg paths".into())
            })?;
            let t2 = unr(r2).ok_or_else(|| {
                CheckError::Shape("tabpath's second cell must target right-leg paths".into())
            })?;
            let eq = |a: &TermExpr, b: &TermExpr| {
                alpha_equal(ExprRef::Term(a), ExprRef::Term(b)).unwrap_or(false)
            };
            if !eq(&s, &s2) || !eq(&t, &t2) {
                return Err(CheckError::BoundaryMismatch(
                    "tabpath's two cells disagree on the comprehension endpoints".into(),
                ));
            }
            (s, t)
        }
        _ => {
            return Err(CheckError::ProtypeMismatch {
                expected: "paths on the comprehension legs".into(),
                got: format!("{sn:?} and {tn:?}"),
            })
        }
    };
    let cty = quick_ty(thy, pc.first(), &s).ok_or_else(|| {
        CheckError::Shape("cannot type the left endpoint of tabpath".into())
    })?;
    let c = match &cty {
        TypeExpr::Compr(c) => c.clone(),
        other => {
            return Err(CheckError::TypeMismatch {
                expected: "a comprehension type".into(),
                got: format!("{other:?}"),
            })
        }
    };
    let t_ty = quick_ty(thy, pc.last(), &t);
    if t_ty.as_ref().map(|x| types_equal(x, &cty)) == Some(false) {
        return Err(CheckError::BoundaryMismatch(
            "tabpath endpoints have different comprehension types".into(),
        ));
    }
    // side condition: transporting tab(t) backward along sigma agrees with
    // transporting tab(s) forward along theta
    let way1 = transport_cell(&c, &s, &t, sigma, theta, true);
    let way2 = transport_cell(&c, &s, &t, sigma, theta, false);
    let omega = ProtypeExpr::rest(
        c.protype.clone(),
        vec![(TermExpr::TabL(Box::new(s.clone())), c.lvar.clone())],
        vec![(TermExpr::TabR(Box::new(t.clone())), c.rvar.clone())],
    );
    let goal = EqJudgment { pc: pc.clone(), lhs: way1, rhs: way2 };
    match crate::equality::check_proterm_eq_at(thy, &goal, Some(&omega)) {
        Ok(true) => {}
        Ok(false) => {
            return Err(CheckError::SideConditionFailed(
                "tabpath transport compatibility not established".into(),
            ))
        }
        Err(e) => return Err(e.within("the tabpath side condition")),
    }
    let result = ProtypeExpr::path(s, cty, t);
    Ok(done(pc, mu, "tabpath", result, vec![ds, dt]))
}

/// Builds one side of the tabpath compatibility condition: the generic
/// transport of the tabulator cell along a leg path, instantiated at the
/// endpoints and prosubstituted with the given cells.
fn transport_cell(
    c: &ComprData,
    s: &TermExpr,
    t: &TermExpr,
    sigma: &ProtermExpr,
    theta: &ProtermExpr,
    along_left: bool,
) -> ProtermExpr {
    // fresh generic names
    let p = "p^".to_string();
    let q = "q^".to_string();
    let y = "y^".to_string();
    let (leg_s, leg_t, other_end): (TermExpr, TermExpr, TermExpr) = if along_left {
        (
            TermExpr::TabL(Box::new(s.clone())),
            TermExpr::TabL(Box::new(t.clone())),
            TermExpr::TabR(Box::new(t.clone())),
        )
    } else {
        (
            TermExpr::TabR(Box::new(s.clone())),
            TermExpr::TabR(Box::new(t.clone())),
            TermExpr::TabL(Box::new(s.clone())),
        )
    };
    // generic transport: (h: p ide q ; k: alpha-instance) |- k transported
    let hypo = "h^".to_string();
    let kvar = "k^".to_string();
    let (pos, groups, args) = if along_left {
        // k : al[q/x ; y/yv]  --  transport the left boundary backward
        let gt = ProtermExpr::IdeInd { pos: 1, body: Box::new(ProtermExpr::provar(kvar.clone())) };
        let groups = vec![
            vec![(leg_s.clone(), p.clone())],
            vec![(leg_t.clone(), q.clone())],
            vec![(other_end.clone(), y.clone())],
        ];
        let args = vec![
            ProArg { proterm: sigma.clone(), target: Some(hypo.clone()) },
            ProArg {
                proterm: ProtermExpr::term_subst(
                    ProtermExpr::Tab { var: "w^".into() },
                    vec![vec![(t.clone(), "w^".into())]],
                ),
                target: Some(kvar.clone()),
            },
        ];
        (gt, groups, args)
    } else {
        // k : al[x-end ; p/yv]  --  transport the right boundary forward
        let gt = ProtermExpr::IdeInd { pos: 2, body: Box::new(ProtermExpr::provar(kvar.clone())) };
        let groups = vec![
            vec![(other_end.clone(), y.clone())],
            vec![(leg_s.clone(), p.clone())],
            vec![(leg_t.clone(), q.clone())],
        ];
        let args = vec![
            ProArg {
                proterm: ProtermExpr::term_subst(
                    ProtermExpr::Tab { var: "w^".into() },
                    vec![vec![(s.clone(), "w^".into())]],
                ),
                target: Some(kvar.clone()),
            },
            ProArg { proterm: theta.clone(), target: Some(hypo.clone()) },
        ];
        (gt, groups, args)
    };
    let instanced = ProtermExpr::term_subst(pos, groups);
    ProtermExpr::prosubst(instanced, args)
}

#[cfg(test)]
mod tests;
