//! Checking of protype isomorphism expressions. Each node determines (or is
//! checked against) the pair of protypes it relates.

use super::proterm::check_proterm;
use super::*;
use crate::rename::{rename_protype, VarMap};
use crate::subst::{check_subst_eq, compose_subst};
use crate::syntax::*;
use crate::theory::Theory;

/// Checks an isomorphism expression in its two boundary contexts, returning
/// the protypes it relates. The `expected` pair is required by inline
/// pairings (their components cannot be inferred).
pub fn check_iso(
    thy: &Theory,
    left: &Context,
    right: &Context,
    iso: &IsoExpr,
    expected: Option<(&ProtypeExpr, &ProtypeExpr)>,
) -> CheckResult<(ProtypeExpr, ProtypeExpr, Derivation)> {
    let (lhs, rhs, d) = check_iso_inner(thy, left, right, iso, expected)?;
    if let Some((el, er)) = expected {
        if !protypes_match(thy, left, right, el, &lhs) {
            return Err(protype_mismatch(thy, left, right, el, &lhs)
                .within("the source of the isomorphism"));
        }
        if !protypes_match(thy, left, right, er, &rhs) {
            return Err(protype_mismatch(thy, left, right, er, &rhs)
                .within("the target of the isomorphism"));
        }
    }
    Ok((lhs, rhs, d))
}

fn conclude(
    left: &Context,
    right: &Context,
    iso: &IsoExpr,
    rule: &'static str,
    lhs: ProtypeExpr,
    rhs: ProtypeExpr,
    premises: Vec<Derivation>,
) -> (ProtypeExpr, ProtypeExpr, Derivation) {
    let conclusion = Judgment::Iso {
        left: left.clone(),
        right: right.clone(),
        iso: iso.clone(),
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    };
    (lhs, rhs, Derivation { rule, premises, conclusion })
}

fn check_iso_inner(
    thy: &Theory,
    left: &Context,
    right: &Context,
    iso: &IsoExpr,
    expected: Option<(&ProtypeExpr, &ProtypeExpr)>,
) -> CheckResult<(ProtypeExpr, ProtypeExpr, Derivation)> {
    match iso {
        IsoExpr::Id(alpha) => {
            let d = check_protype(thy, left, right, alpha)?;
            Ok(conclude(left, right, iso, "iso-id", alpha.as_ref().clone(), alpha.as_ref().clone(), vec![d]))
        }
        IsoExpr::Inv(inner) => {
            let swapped = expected.map(|(a, b)| (b, a));
            let (lhs, rhs, d) = check_iso(thy, left, right, inner, swapped)?;
            Ok(conclude(left, right, iso, "iso-inv", rhs, lhs, vec![d]))
        }
        IsoExpr::Compose { after, before } => {
            let (a, b, d1) = check_iso(thy, left, right, before, None)?;
            let (b2, c, d2) = check_iso(thy, left, right, after, None)?;
            if !protypes_match(thy, left, right, &b, &b2) {
                return Err(protype_mismatch(thy, left, right, &b, &b2)
                    .within("the middle protype of a composition"));
            }
            Ok(conclude(left, right, iso, "iso-compose", a, c, vec![d1, d2]))
        }
        IsoExpr::RestE { alpha } => {
            let d = check_protype(thy, left, right, alpha)?;
            let lhs = ProtypeExpr::Rest {
                inner: alpha.clone(),
                left: identity_group(left),
                right: identity_group(right),
            };
            Ok(conclude(left, right, iso, "rest-e", lhs, alpha.as_ref().clone(), vec![d]))
        }
        IsoExpr::RestI { alpha, left: lg, right: rg, left2: lg2, right2: rg2 } => {
            let (mid_l, mut premises) = infer_subst_group(thy, left, lg2)?;
            let (mid_r, ps) = infer_subst_group(thy, right, rg2)?;
            premises.extend(ps);
            let (tgt_l, ps) = infer_subst_group(thy, &mid_l, lg)?;
            premises.extend(ps);
            let (tgt_r, ps) = infer_subst_group(thy, &mid_r, rg)?;
            premises.extend(ps);
            let d = check_protype(thy, &tgt_l, &tgt_r, alpha)?;
            premises.push(d);
            let lhs = ProtypeExpr::Rest {
                inner: Box::new(ProtypeExpr::Rest {
                    inner: alpha.clone(),
                    left: lg.clone(),
                    right: rg.clone(),
                }),
                left: lg2.clone(),
                right: rg2.clone(),
            };
            let rhs = ProtypeExpr::Rest {
                inner: alpha.clone(),
                left: compose_subst(thy, Some(left), lg, lg2),
                right: compose_subst(thy, Some(right), rg, rg2),
            };
            Ok(conclude(left, right, iso, "rest-i", lhs, rhs, premises))
        }
        IsoExpr::RestAnd { alpha, beta, left: lg, right: rg } => {
            let (tgt_l, mut premises) = infer_subst_group(thy, left, lg)?;
            let (tgt_r, ps) = infer_subst_group(thy, right, rg)?;
            premises.extend(ps);
            premises.push(check_protype(thy, &tgt_l, &tgt_r, alpha)?);
            premises.push(check_protype(thy, &tgt_l, &tgt_r, beta)?);
            let lhs = ProtypeExpr::Rest {
                inner: Box::new(ProtypeExpr::and(
                    alpha.as_ref().clone(),
                    beta.as_ref().clone(),
                )),
                left: lg.clone(),
                right: rg.clone(),
            };
            let rhs = ProtypeExpr::and(
                ProtypeExpr::Rest { inner: alpha.clone(), left: lg.clone(), right: rg.clone() },
                ProtypeExpr::Rest { inner: beta.clone(), left: lg.clone(), right: rg.clone() },
            );
            Ok(conclude(left, right, iso, "rest-and", lhs, rhs, premises))
        }
        IsoExpr::RestTop { left: lg, right: rg } => {
            let (_, mut premises) = infer_subst_group(thy, left, lg)?;
            let (_, ps) = infer_subst_group(thy, right, rg)?;
            premises.extend(ps);
            let lhs = ProtypeExpr::Rest {
                inner: Box::new(ProtypeExpr::Top),
                left: lg.clone(),
                right: rg.clone(),
            };
            Ok(conclude(left, right, iso, "rest-top", lhs, ProtypeExpr::Top, premises))
        }
        IsoExpr::Repl { alpha, left0, left1, right0, right1 } => {
            let (tgt_l0, mut premises) = infer_subst_group(thy, left, left0)?;
            let (tgt_l1, ps) = infer_subst_group(thy, left, left1)?;
            premises.extend(ps);
            let (tgt_r0, ps) = infer_subst_group(thy, right, right0)?;
            premises.extend(ps);
            let (tgt_r1, ps) = infer_subst_group(thy, right, right1)?;
            premises.extend(ps);
            if tgt_l0 != tgt_l1 || tgt_r0 != tgt_r1 {
                return Err(CheckError::Shape(
                    "the two substitutions of repl must share their target context".into(),
                ));
            }
            if let ProtypeExpr::Comp { .. }
            | ProtypeExpr::RExt { .. }
            | ProtypeExpr::RLift { .. }
            | ProtypeExpr::Invol(_) = alpha.as_ref()
            {
                return Err(CheckError::Shape(
                    "repl applies at protype symbols and explicit restrictions; restricted constructors are primitive instances".into(),
                ));
            }
            premises.push(check_protype(thy, &tgt_l0, &tgt_r0, alpha)?);
            let comps = |g: &SubstGroup| g.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>();
            if !check_subst_eq(thy, left, &comps(left0), &comps(left1), &tgt_l0) {
                return Err(CheckError::SideConditionFailed(
                    "left substitutions of repl are not provably equal".into(),
                ));
            }
            if !check_subst_eq(thy, right, &comps(right0), &comps(right1), &tgt_r0) {
                return Err(CheckError::SideConditionFailed(
                    "right substitutions of repl are not provably equal".into(),
                ));
            }
            let lhs = ProtypeExpr::Rest {
                inner: alpha.clone(),
                left: left0.clone(),
                right: right0.clone(),
            };
            let rhs = ProtypeExpr::Rest {
                inner: alpha.clone(),
                left: left1.clone(),
                right: right1.clone(),
            };
            Ok(conclude(left, right, iso, "repl", lhs, rhs, premises))
        }
        IsoExpr::PairIso { var_fwd, fwd, var_bwd, bwd } => {
            let (el, er) = expected.ok_or_else(|| {
                CheckError::AnnotationNeeded(
                    "an inline pairing needs the isomorphism's protypes".into(),
                )
            })?;
            let pc_fwd = ProContext {
                contexts: vec![left.clone(), right.clone()],
                provars: vec![(var_fwd.clone(), el.clone())],
            };
            let d_fwd = check_proterm(thy, &pc_fwd, fwd, er)
                .map_err(|e| e.within("the forward component of the pairing"))?;
            let pc_bwd = ProContext {
                contexts: vec![left.clone(), right.clone()],
                provars: vec![(var_bwd.clone(), er.clone())],
            };
            let d_bwd = check_proterm(thy, &pc_bwd, bwd, el)
                .map_err(|e| e.within("the backward component of the pairing"))?;
            // round trips
            let sub_into = |outer: &ProtermExpr, ovar: &str, inner: ProtermExpr| {
                ProtermExpr::prosubst(
                    outer.clone(),
                    vec![ProArg { proterm: inner, target: Some(ovar.to_string()) }],
                )
            };
            let retr = EqJudgment {
                pc: pc_bwd.clone(),
                lhs: sub_into(fwd, var_fwd, sub_into(bwd, var_bwd, ProtermExpr::provar(var_bwd.clone()))),
                rhs: ProtermExpr::provar(var_bwd.clone()),
            };
            match crate::equality::check_proterm_eq_at(thy, &retr, Some(er)) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(CheckError::NotMutuallyInverse {
                        equation: "mu{nu{b}} == b".into(),
                    })
                }
                Err(e) => return Err(e.within("the first round-trip equation of a pairing")),
            }
            let sect = EqJudgment {
                pc: pc_fwd.clone(),
                lhs: sub_into(bwd, var_bwd, sub_into(fwd, var_fwd, ProtermExpr::provar(var_fwd.clone()))),
                rhs: ProtermExpr::provar(var_fwd.clone()),
            };
            match crate::equality::check_proterm_eq_at(thy, &sect, Some(el)) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(CheckError::NotMutuallyInverse {
                        equation: "nu{mu{a}} == a".into(),
                    })
                }
                Err(e) => return Err(e.within("the second round-trip equation of a pairing")),
            }
            Ok(conclude(left, right, iso, "iso-pair", el.clone(), er.clone(), vec![d_fwd, d_bwd]))
        }
        IsoExpr::Named(name) => {
            let def = thy
                .iso(name)
                .ok_or_else(|| CheckError::UnknownIso(name.clone()))?;
            let map = match_contexts(
                &[def.left.clone(), def.right.clone()],
                &[left.clone(), right.clone()],
            )
            .map_err(|e| e.within(format!("the contexts of isomorphism {name}")))?;
            let lhs = rename_protype(&def.lhs, &map);
            let rhs = rename_protype(&def.rhs, &map);
            Ok(conclude(left, right, iso, "iso-named", lhs, rhs, vec![]))
        }
        IsoExpr::Restrict { inner, left: lg, right: rg } => {
            let (tgt_l, mut premises) = infer_subst_group(thy, left, lg)?;
            let (tgt_r, ps) = infer_subst_group(thy, right, rg)?;
            premises.extend(ps);
            let (lhs0, rhs0, d) = check_iso(thy, &tgt_l, &tgt_r, inner, None)?;
            premises.push(d);
            let lhs = ProtypeExpr::Rest { inner: Box::new(lhs0), left: lg.clone(), right: rg.clone() };
            let rhs = ProtypeExpr::Rest { inner: Box::new(rhs0), left: lg.clone(), right: rg.clone() };
            Ok(conclude(left, right, iso, "iso-restrict", lhs, rhs, premises))
        }
        IsoExpr::AndCong(u, v) => {
            let (la, ra, du) = check_iso(thy, left, right, u, None)?;
            let (lb, rb, dv) = check_iso(thy, left, right, v, None)?;
            Ok(conclude(
                left,
                right,
                iso,
                "cong-and",
                ProtypeExpr::and(la, lb),
                ProtypeExpr::and(ra, rb),
                vec![du, dv],
            ))
        }
        IsoExpr::CompCong { left: u, mid, right: v } => {
            if !thy.sig.enabled(Extension::Comp) {
                return Err(CheckError::ExtensionDisabled(Extension::Comp));
            }
            let mctx = Context::single(mid.0.clone(), mid.1.clone());
            let (la, ra, du) = check_iso(thy, left, &mctx, u, None)?;
            let (lb, rb, dv) = check_iso(thy, &mctx, right, v, None)?;
            let mk = |a: ProtypeExpr, b: ProtypeExpr| ProtypeExpr::Comp {
                left: Box::new(a),
                mid: mid.clone(),
                right: Box::new(b),
            };
            Ok(conclude(left, right, iso, "cong-comp", mk(la, lb), mk(ra, rb), vec![du, dv]))
        }
        IsoExpr::RExtCong { alpha: u, bound, beta: v } => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let wctx = Context::single(bound.0.clone(), bound.1.clone());
            let (la, ra, du) = check_iso(thy, &wctx, left, u, None)?;
            let (lb, rb, dv) = check_iso(thy, &wctx, right, v, None)?;
            let mk = |a: ProtypeExpr, b: ProtypeExpr| ProtypeExpr::RExt {
                alpha: Box::new(a),
                bound: bound.clone(),
                beta: Box::new(b),
            };
            Ok(conclude(left, right, iso, "cong-rext", mk(la, lb), mk(ra, rb), vec![du, dv]))
        }
        IsoExpr::RLiftCong { beta: u, bound, alpha: v } => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let zctx = Context::single(bound.0.clone(), bound.1.clone());
            let (lb, rb, du) = check_iso(thy, left, &zctx, u, None)?;
            let (la, ra, dv) = check_iso(thy, right, &zctx, v, None)?;
            let mk = |b: ProtypeExpr, a: ProtypeExpr| ProtypeExpr::RLift {
                beta: Box::new(b),
                bound: bound.clone(),
                alpha: Box::new(a),
            };
            Ok(conclude(left, right, iso, "cong-rlift", mk(lb, la), mk(rb, ra), vec![du, dv]))
        }
        IsoExpr::InvolCong(u) => {
            if !thy.sig.enabled(Extension::Involution) {
                return Err(CheckError::ExtensionDisabled(Extension::Involution));
            }
            let (la, ra, du) = check_iso(thy, right, left, u, None)?;
            Ok(conclude(
                left,
                right,
                iso,
                "cong-invol",
                ProtypeExpr::Invol(Box::new(la)),
                ProtypeExpr::Invol(Box::new(ra)),
                vec![du],
            ))
        }
        IsoExpr::ExcIdeProd { lty, rty } => {
            if !thy.sig.enabled(Extension::Ide) {
                return Err(CheckError::ExtensionDisabled(Extension::Ide));
            }
            let pick = |ctx: &Context, what: &str| -> CheckResult<(String, String)> {
                match ctx.0.as_slice() {
                    [(x, tx), (y, ty2)] if types_equal(tx, lty) && types_equal(ty2, rty) => {
                        Ok((x.clone(), y.clone()))
                    }
                    _ => Err(CheckError::Shape(format!(
                        "{what} context of exc-ide-prod must be two variables of the component types"
                    ))),
                }
            };
            let (x, y) = pick(left, "left")?;
            let (x2, y2) = pick(right, "right")?;
            let lhs = ProtypeExpr::path(
                TermExpr::pair(TermExpr::var(x.clone()), TermExpr::var(y.clone())),
                TypeExpr::prod(lty.clone(), rty.clone()),
                TermExpr::pair(TermExpr::var(x2.clone()), TermExpr::var(y2.clone())),
            );
            let rhs = ProtypeExpr::and(
                ProtypeExpr::path(TermExpr::var(x), lty.clone(), TermExpr::var(x2)),
                ProtypeExpr::path(TermExpr::var(y), rty.clone(), TermExpr::var(y2)),
            );
            Ok(conclude(left, right, iso, "exc-ide-prod", lhs, rhs, vec![]))
        }
        IsoExpr::ExcIdeUnit => {
            if !thy.sig.enabled(Extension::Ide) {
                return Err(CheckError::ExtensionDisabled(Extension::Ide));
            }
            let lhs = ProtypeExpr::path(TermExpr::UnitTm, TypeExpr::Unit, TermExpr::UnitTm);
            Ok(conclude(left, right, iso, "exc-ide-unit", lhs, ProtypeExpr::Top, vec![]))
        }
        IsoExpr::ExcCompTop => {
            if !thy.sig.enabled(Extension::Comp) {
                return Err(CheckError::ExtensionDisabled(Extension::Comp));
            }
            let lhs = ProtypeExpr::Comp {
                left: Box::new(ProtypeExpr::Top),
                mid: ("u0".into(), TypeExpr::Unit),
                right: Box::new(ProtypeExpr::Top),
            };
            Ok(conclude(left, right, iso, "exc-comp-top", lhs, ProtypeExpr::Top, vec![]))
        }
        IsoExpr::ExcExtTop => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let lhs = ProtypeExpr::RExt {
                alpha: Box::new(ProtypeExpr::Top),
                bound: ("u0".into(), TypeExpr::Unit),
                beta: Box::new(ProtypeExpr::Top),
            };
            Ok(conclude(left, right, iso, "exc-ext-top", lhs, ProtypeExpr::Top, vec![]))
        }
        IsoExpr::ExcCompProd(d) => {
            if !thy.sig.enabled(Extension::Comp) {
                return Err(CheckError::ExtensionDisabled(Extension::Comp));
            }
            let (lhs, rhs, premises) = exc_comp_prod(thy, left, right, d)?;
            Ok(conclude(left, right, iso, "exc-comp-prod", lhs, rhs, premises))
        }
        IsoExpr::ExcExtProd(d) => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let (lhs, rhs, premises) = exc_ext_prod(thy, left, right, d)?;
            Ok(conclude(left, right, iso, "exc-ext-prod", lhs, rhs, premises))
        }
        IsoExpr::RestComp { protype, left: lg, right: rg } => {
            if !thy.sig.enabled(Extension::Comp) {
                return Err(CheckError::ExtensionDisabled(Extension::Comp));
            }
            let (tgt_l, mut premises) = infer_subst_group(thy, left, lg)?;
            let (tgt_r, ps) = infer_subst_group(thy, right, rg)?;
            premises.extend(ps);
            let (a, mid, b) = match protype.as_ref() {
                ProtypeExpr::Comp { left, mid, right } => (left, mid, right),
                _ => {
                    return Err(CheckError::Shape(
                        "rest-comp expects a composition protype".into(),
                    ))
                }
            };
            premises.push(check_protype(thy, &tgt_l, &tgt_r, protype)?);
            let mctx = Context::single(mid.0.clone(), mid.1.clone());
            let lhs = ProtypeExpr::Rest {
                inner: protype.clone(),
                left: lg.clone(),
                right: rg.clone(),
            };
            let rhs = ProtypeExpr::Comp {
                left: Box::new(ProtypeExpr::Rest {
                    inner: a.clone(),
                    left: lg.clone(),
                    right: identity_group(&mctx),
                }),
                mid: mid.clone(),
                right: Box::new(ProtypeExpr::Rest {
                    inner: b.clone(),
                    left: identity_group(&mctx),
                    right: rg.clone(),
                }),
            };
            Ok(conclude(left, right, iso, "rest-comp", lhs, rhs, premises))
        }
        IsoExpr::RestRExt { protype, left: lg, right: rg } => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let (tgt_l, mut premises) = infer_subst_group(thy, left, lg)?;
            let (tgt_r, ps) = infer_subst_group(thy, right, rg)?;
            premises.extend(ps);
            let (a, bound, b) = match protype.as_ref() {
                ProtypeExpr::RExt { alpha, bound, beta } => (alpha, bound, beta),
                _ => {
                    return Err(CheckError::Shape(
                        "rest-rext expects a right extension protype".into(),
                    ))
                }
            };
            premises.push(check_protype(thy, &tgt_l, &tgt_r, protype)?);
            let wctx = Context::single(bound.0.clone(), bound.1.clone());
            let lhs = ProtypeExpr::Rest {
                inner: protype.clone(),
                left: lg.clone(),
                right: rg.clone(),
            };
            let rhs = ProtypeExpr::RExt {
                alpha: Box::new(ProtypeExpr::Rest {
                    inner: a.clone(),
                    left: identity_group(&wctx),
                    right: lg.clone(),
                }),
                bound: bound.clone(),
                beta: Box::new(ProtypeExpr::Rest {
                    inner: b.clone(),
                    left: identity_group(&wctx),
                    right: rg.clone(),
                }),
            };
            Ok(conclude(left, right, iso, "rest-rext", lhs, rhs, premises))
        }
        IsoExpr::RestRLift { protype, left: lg, right: rg } => {
            if !thy.sig.enabled(Extension::Filler) {
                return Err(CheckError::ExtensionDisabled(Extension::Filler));
            }
            let (tgt_l, mut premises) = infer_subst_group(thy, left, lg)?;
            let (tgt_r, ps) = infer_subst_group(thy, right, rg)?;
            premises.extend(ps);
            let (b, bound, a) = match protype.as_ref() {
                ProtypeExpr::RLift { beta, bound, alpha } => (beta, bound, alpha),
                _ => {
                    return Err(CheckError::Shape(
                        "rest-rlift expects a right lift protype".into(),
                    ))
                }
            };
            premises.push(check_protype(thy, &tgt_l, &tgt_r, protype)?);
            let zctx = Context::single(bound.0.clone(), bound.1.clone());
            let lhs = ProtypeExpr::Rest {
                inner: protype.clone(),
                left: lg.clone(),
                right: rg.clone(),
            };
            let rhs = ProtypeExpr::RLift {
                beta: Box::new(ProtypeExpr::Rest {
                    inner: b.clone(),
                    left: lg.clone(),
                    right: identity_group(&zctx),
                }),
                bound: bound.clone(),
                alpha: Box::new(ProtypeExpr::Rest {
                    inner: a.clone(),
                    left: rg.clone(),
                    right: identity_group(&zctx),
                }),
            };
            Ok(conclude(left, right, iso, "rest-rlift", lhs, rhs, premises))
        }
    }
}

/// Projection instance of a component protype into paired-up contexts.
fn proj_rest(
    inner: &ProtypeExpr,
    lpair: (&str, &str, bool),
    rpair: (&str, &str, bool),
) -> ProtypeExpr {
    let side = |(outer, var, first): (&str, &str, bool)| -> SubstGroup {
        let proj = if first {
            TermExpr::Proj0(Box::new(TermExpr::var(outer)))
        } else {
            TermExpr::Proj1(Box::new(TermExpr::var(outer)))
        };
        vec![(proj, var.to_string())]
    };
    ProtypeExpr::Rest { inner: Box::new(inner.clone()), left: side(lpair), right: side(rpair) }
}

/// `(a1 (+) a2) x (b1 (+) b2) ~= (a1 x b1) (+) (a2 x b2)` in the internal
/// form over product contexts, where `x` pairs the strands via projection
/// restrictions and a conjunction.
fn exc_comp_prod(
    thy: &Theory,
    left: &Context,
    right: &Context,
    d: &ExcProdData,
) -> CheckResult<(ProtypeExpr, ProtypeExpr, Vec<Derivation>)> {
    let lt = TypeExpr::prod(d.lty1.clone(), d.lty2.clone());
    let mt = TypeExpr::prod(d.mty1.clone(), d.mty2.clone());
    let rt = TypeExpr::prod(d.rty1.clone(), d.rty2.clone());
    expect_single(left, &lt, "left")?;
    expect_single(right, &rt, "right")?;
    let (w1, m1, y1) = (&d.vars1.0, &d.vars1.1, &d.vars1.2);
    let (w2, m2, y2) = (&d.vars2.0, &d.vars2.1, &d.vars2.2);
    let mut premises = Vec::new();
    premises.push(check_protype(
        thy,
        &Context::single(w1.clone(), d.lty1.clone()),
        &Context::single(m1.clone(), d.mty1.clone()),
        &d.a1,
    )?);
    premises.push(check_protype(
        thy,
        &Context::single(m1.clone(), d.mty1.clone()),
        &Context::single(y1.clone(), d.rty1.clone()),
        &d.a2,
    )?);
    premises.push(check_protype(
        thy,
        &Context::single(w2.clone(), d.lty2.clone()),
        &Context::single(m2.clone(), d.mty2.clone()),
        &d.b1,
    )?);
    premises.push(check_protype(
        thy,
        &Context::single(m2.clone(), d.mty2.clone()),
        &Context::single(y2.clone(), d.rty2.clone()),
        &d.b2,
    )?);
    let lv = left.0[0].0.as_str();
    let rv = right.0[0].0.as_str();
    let mv = d.mvar.as_str();
    let lhs = ProtypeExpr::Comp {
        left: Box::new(ProtypeExpr::and(
            proj_rest(&d.a1, (lv, w1, true), (mv, m1, true)),
            proj_rest(&d.b1, (lv, w2, false), (mv, m2, false)),
        )),
        mid: (d.mvar.clone(), mt),
        right: Box::new(ProtypeExpr::and(
            proj_rest(&d.a2, (mv, m1, true), (rv, y1, true)),
            proj_rest(&d.b2, (mv, m2, false), (rv, y2, false)),
        )),
    };
    let comp1 = ProtypeExpr::Comp {
        left: Box::new(d.a1.clone()),
        mid: (m1.clone(), d.mty1.clone()),
        right: Box::new(d.a2.clone()),
    };
    let comp2 = ProtypeExpr::Comp {
        left: Box::new(d.b1.clone()),
        mid: (m2.clone(), d.mty2.clone()),
        right: Box::new(d.b2.clone()),
    };
    let rhs = ProtypeExpr::and(
        proj_rest(&comp1, (lv, w1, true), (rv, y1, true)),
        proj_rest(&comp2, (lv, w2, false), (rv, y2, false)),
    );
    Ok((lhs, rhs, premises))
}

/// `(a1 |> a2) x (b1 |> b2) ~= (a1 x b1) |> (a2 x b2)` in the internal form
/// over product contexts. Here `vars1 = (w1, x1, y1)` with `a1` over
/// `(w1; x1)` and `a2` over `(w1; y1)`.
fn exc_ext_prod(
    thy: &Theory,
    left: &Context,
    right: &Context,
    d: &ExcProdData,
) -> CheckResult<(ProtypeExpr, ProtypeExpr, Vec<Derivation>)> {
    let wt = TypeExpr::prod(d.mty1.clone(), d.mty2.clone());
    let xt = TypeExpr::prod(d.lty1.clone(), d.lty2.clone());
    let yt = TypeExpr::prod(d.rty1.clone(), d.rty2.clone());
    expect_single(left, &xt, "left")?;
    expect_single(right, &yt, "right")?;
    let (w1, x1, y1) = (&d.vars1.0, &d.vars1.1, &d.vars1.2);
    let (w2, x2, y2) = (&d.vars2.0, &d.vars2.1, &d.vars2.2);
    let mut premises = Vec::new();
    premises.push(check_protype(
        thy,
        &Context::single(w1.clone(), d.mty1.clone()),
        &Context::single(x1.clone(), d.lty1.clone()),
        &d.a1,
    )?);
    premises.push(check_protype(
        thy,
        &Context::single(w1.clone(), d.mty1.clone()),
        &Context::single(y1.clone(), d.rty1.clone()),
        &d.a2,
    )?);
    premises.push(check_protype(
        thy,
        &Context::single(w2.clone(), d.mty2.clone()),
        &Context::single(x2.clone(), d.lty2.clone()),
        &d.b1,
    )?);
    premises.push(check_protype(
        thy,
        &Context::single(w2.clone(), d.mty2.clone()),
        &Context::single(y2.clone(), d.rty2.clone()),
        &d.b2,
    )?);
    let xv = left.0[0].0.as_str();
    let yv = right.0[0].0.as_str();
    let wv = d.mvar.as_str();
    let lhs = ProtypeExpr::RExt {
        alpha: Box::new(ProtypeExpr::and(
            proj_rest(&d.a1, (wv, w1, true), (xv, x1, true)),
            proj_rest(&d.b1, (wv, w2, false), (xv, x2, false)),
        )),
        bound: (d.mvar.clone(), wt),
        beta: Box::new(ProtypeExpr::and(
            proj_rest(&d.a2, (wv, w1, true), (yv, y1, true)),
            proj_rest(&d.b2, (wv, w2, false), (yv, y2, false)),
        )),
    };
    let ext1 = ProtypeExpr::RExt {
        alpha: Box::new(d.a1.clone()),
        bound: (w1.clone(), d.mty1.clone()),
        beta: Box::new(d.a2.clone()),
    };
    let ext2 = ProtypeExpr::RExt {
        alpha: Box::new(d.b1.clone()),
        bound: (w2.clone(), d.mty2.clone()),
        beta: Box::new(d.b2.clone()),
    };
    let rhs = ProtypeExpr::and(
        proj_rest(&ext1, (xv, x1, true), (yv, y1, true)),
        proj_rest(&ext2, (xv, x2, false), (yv, y2, false)),
    );
    Ok((lhs, rhs, premises))
}

fn expect_single(ctx: &Context, ty: &TypeExpr, what: &str) -> CheckResult<()> {
    match ctx.0.as_slice() {
        [(_, t)] if types_equal(t, ty) => Ok(()),
        _ => Err(CheckError::Shape(format!(
            "the {what} context of this schema must be a single variable of type {ty:?}"
        ))),
    }
}
