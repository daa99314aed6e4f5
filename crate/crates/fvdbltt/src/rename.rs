//! Capture-aware renaming of free term variables and provariables. Binders
//! shadow: a renaming stops at any binder that rebinds the source name.

use crate::syntax::*;
use std::collections::BTreeMap;

pub type VarMap = BTreeMap<String, String>;

fn tgt<'a>(map: &'a VarMap, v: &'a str) -> &'a str {
    map.get(v).map(|s| s.as_str()).unwrap_or(v)
}

fn without<'a>(map: &VarMap, shadowed: impl Iterator<Item = &'a String>) -> VarMap {
    let mut m = map.clone();
    for s in shadowed {
        m.remove(s);
    }
    m
}

pub fn rename_term(t: &TermExpr, map: &VarMap) -> TermExpr {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        TermExpr::Var(v) => TermExpr::Var(tgt(map, v).to_string()),
        TermExpr::App { sym, args } => TermExpr::App {
            sym: sym.clone(),
            args: args.iter().map(|a| rename_term(a, map)).collect(),
        },
        TermExpr::Pair(a, b) => TermExpr::pair(rename_term(a, map), rename_term(b, map)),
        TermExpr::Proj0(a) => TermExpr::Proj0(Box::new(rename_term(a, map))),
        TermExpr::Proj1(a) => TermExpr::Proj1(Box::new(rename_term(a, map))),
        TermExpr::UnitTm => TermExpr::UnitTm,
        TermExpr::Subst { inner, subst } => TermExpr::Subst {
            // targets are binders for `inner`; only components rename
            inner: inner.clone(),
            subst: subst.iter().map(|(c, x)| (rename_term(c, map), x.clone())).collect(),
        },
        TermExpr::TabL(a) => TermExpr::TabL(Box::new(rename_term(a, map))),
        TermExpr::TabR(a) => TermExpr::TabR(Box::new(rename_term(a, map))),
        TermExpr::TabFactor { compr, left, right, cell } => TermExpr::TabFactor {
            compr: compr.clone(),
            left: Box::new(rename_term(left, map)),
            right: Box::new(rename_term(right, map)),
            cell: Box::new(rename_proterm(cell, map, &VarMap::new())),
        },
    }
}

fn rename_group(g: &SubstGroup, map: &VarMap) -> SubstGroup {
    g.iter().map(|(c, x)| (rename_term(c, map), x.clone())).collect()
}

pub fn rename_protype(p: &ProtypeExpr, map: &VarMap) -> ProtypeExpr {
    if map.is_empty() {
        return p.clone();
    }
    match p {
        ProtypeExpr::Sym { sym, left, right } => ProtypeExpr::Sym {
            sym: sym.clone(),
            left: left.iter().map(|t| rename_term(t, map)).collect(),
            right: right.iter().map(|t| rename_term(t, map)).collect(),
        },
        ProtypeExpr::Top => ProtypeExpr::Top,
        ProtypeExpr::And(a, b) => {
            ProtypeExpr::and(rename_protype(a, map), rename_protype(b, map))
        }
        ProtypeExpr::Rest { inner, left, right } => ProtypeExpr::Rest {
            inner: inner.clone(),
            left: rename_group(left, map),
            right: rename_group(right, map),
        },
        ProtypeExpr::Path { left, ty, right } => ProtypeExpr::Path {
            left: Box::new(rename_term(left, map)),
            ty: ty.clone(),
            right: Box::new(rename_term(right, map)),
        },
        ProtypeExpr::Comp { left, mid, right } => {
            let inner = without(map, std::iter::once(&mid.0));
            ProtypeExpr::Comp {
                left: Box::new(rename_protype(left, &inner)),
                mid: mid.clone(),
                right: Box::new(rename_protype(right, &inner)),
            }
        }
        ProtypeExpr::RExt { alpha, bound, beta } => {
            let inner = without(map, std::iter::once(&bound.0));
            ProtypeExpr::RExt {
                alpha: Box::new(rename_protype(alpha, &inner)),
                bound: bound.clone(),
                beta: Box::new(rename_protype(beta, &inner)),
            }
        }
        ProtypeExpr::RLift { beta, bound, alpha } => {
            let inner = without(map, std::iter::once(&bound.0));
            ProtypeExpr::RLift {
                beta: Box::new(rename_protype(beta, &inner)),
                bound: bound.clone(),
                alpha: Box::new(rename_protype(alpha, &inner)),
            }
        }
        ProtypeExpr::Invol(a) => ProtypeExpr::Invol(Box::new(rename_protype(a, map))),
    }
}

/// Renames free term variables by `tmap` and free provariables by `pmap`.
pub fn rename_proterm(p: &ProtermExpr, tmap: &VarMap, pmap: &VarMap) -> ProtermExpr {
    if tmap.is_empty() && pmap.is_empty() {
        return p.clone();
    }
    match p {
        ProtermExpr::ProVar(a) => ProtermExpr::ProVar(tgt(pmap, a).to_string()),
        ProtermExpr::AxiomRef(_) | ProtermExpr::Empty => p.clone(),
        ProtermExpr::Pair(a, b) => {
            ProtermExpr::pair(rename_proterm(a, tmap, pmap), rename_proterm(b, tmap, pmap))
        }
        ProtermExpr::Proj0(a) => {
            ProtermExpr::proj0(rename_proterm(a, tmap, pmap))
        }
        ProtermExpr::Proj1(a) => {
            ProtermExpr::proj1(rename_proterm(a, tmap, pmap))
        }
        ProtermExpr::ProSubst { target, args } => ProtermExpr::ProSubst {
            target: Box::new(rename_proterm(target, tmap, pmap)),
            args: args
                .iter()
                .map(|a| ProArg {
                    proterm: rename_proterm(&a.proterm, tmap, pmap),
                    target: a.target.clone(),
                })
                .collect(),
        },
        ProtermExpr::TermSubst { inner, groups } => ProtermExpr::TermSubst {
            // group targets bind `inner`; provariables are not bound here
            inner: Box::new(rename_proterm(inner, &VarMap::new(), pmap)),
            groups: groups.iter().map(|g| rename_group(g, tmap)).collect(),
        },
        ProtermExpr::IsoApp { iso, arg } => ProtermExpr::IsoApp {
            iso: Box::new(rename_iso(iso, tmap)),
            arg: Box::new(rename_proterm(arg, tmap, pmap)),
        },
        ProtermExpr::Refl { ty, var } => ProtermExpr::Refl {
            ty: ty.clone(),
            var: tgt(tmap, var).to_string(),
        },
        ProtermExpr::IdeInd { pos, body } => ProtermExpr::IdeInd {
            pos: *pos,
            body: Box::new(rename_proterm(body, tmap, pmap)),
        },
        ProtermExpr::CompIntro(a, b) => ProtermExpr::CompIntro(
            Box::new(rename_proterm(a, tmap, pmap)),
            Box::new(rename_proterm(b, tmap, pmap)),
        ),
        ProtermExpr::CompInd { pos, var_a, mid, var_b, body } => {
            let tin = without(tmap, std::iter::once(&mid.0));
            let pin = without(pmap, [var_a, var_b].into_iter().map(|s| s as &String));
            ProtermExpr::CompInd {
                pos: *pos,
                var_a: var_a.clone(),
                mid: mid.clone(),
                var_b: var_b.clone(),
                body: Box::new(rename_proterm(body, &tin, &pin)),
            }
        }
        ProtermExpr::RExtApp(a, b) => ProtermExpr::RExtApp(
            Box::new(rename_proterm(a, tmap, pmap)),
            Box::new(rename_proterm(b, tmap, pmap)),
        ),
        ProtermExpr::RLiftApp(a, b) => ProtermExpr::RLiftApp(
            Box::new(rename_proterm(a, tmap, pmap)),
            Box::new(rename_proterm(b, tmap, pmap)),
        ),
        ProtermExpr::RExtTr { ann, cvar, provar, body } => {
            let tin = without(tmap, std::iter::once(cvar));
            let pin = without(pmap, std::iter::once(provar));
            ProtermExpr::RExtTr {
                ann: ann.as_ref().map(|a| Box::new(rename_protype(a, tmap))),
                cvar: cvar.clone(),
                provar: provar.clone(),
                body: Box::new(rename_proterm(body, &tin, &pin)),
            }
        }
        ProtermExpr::RLiftTr { ann, cvar, provar, body } => {
            let tin = without(tmap, std::iter::once(cvar));
            let pin = without(pmap, std::iter::once(provar));
            ProtermExpr::RLiftTr {
                ann: ann.as_ref().map(|a| Box::new(rename_protype(a, tmap))),
                cvar: cvar.clone(),
                provar: provar.clone(),
                body: Box::new(rename_proterm(body, &tin, &pin)),
            }
        }
        ProtermExpr::Tab { var } => ProtermExpr::Tab { var: tgt(tmap, var).to_string() },
        ProtermExpr::TabPath { left, right } => ProtermExpr::TabPath {
            left: Box::new(rename_proterm(left, tmap, pmap)),
            right: Box::new(rename_proterm(right, tmap, pmap)),
        },
        ProtermExpr::Invol(a) => ProtermExpr::Invol(Box::new(rename_proterm(a, tmap, pmap))),
    }
}

pub fn rename_iso(u: &IsoExpr, tmap: &VarMap) -> IsoExpr {
    if tmap.is_empty() {
        return u.clone();
    }
    match u {
        IsoExpr::Id(a) => IsoExpr::Id(Box::new(rename_protype(a, tmap))),
        IsoExpr::Inv(a) => IsoExpr::Inv(Box::new(rename_iso(a, tmap))),
        IsoExpr::Compose { after, before } => IsoExpr::Compose {
            after: Box::new(rename_iso(after, tmap)),
            before: Box::new(rename_iso(before, tmap)),
        },
        IsoExpr::RestE { alpha } => IsoExpr::RestE { alpha: Box::new(rename_protype(alpha, tmap)) },
        IsoExpr::RestI { alpha, left, right, left2, right2 } => IsoExpr::RestI {
            alpha: alpha.clone(),
            left: left.clone(),
            right: right.clone(),
            left2: rename_group(left2, tmap),
            right2: rename_group(right2, tmap),
        },
        IsoExpr::RestAnd { alpha, beta, left, right } => IsoExpr::RestAnd {
            alpha: alpha.clone(),
            beta: beta.clone(),
            left: rename_group(left, tmap),
            right: rename_group(right, tmap),
        },
        IsoExpr::RestTop { left, right } => IsoExpr::RestTop {
            left: rename_group(left, tmap),
            right: rename_group(right, tmap),
        },
        IsoExpr::Repl { alpha, left0, left1, right0, right1 } => IsoExpr::Repl {
            alpha: alpha.clone(),
            left0: rename_group(left0, tmap),
            left1: rename_group(left1, tmap),
            right0: rename_group(right0, tmap),
            right1: rename_group(right1, tmap),
        },
        IsoExpr::PairIso { var_fwd, fwd, var_bwd, bwd } => IsoExpr::PairIso {
            var_fwd: var_fwd.clone(),
            fwd: Box::new(rename_proterm(fwd, tmap, &VarMap::new())),
            var_bwd: var_bwd.clone(),
            bwd: Box::new(rename_proterm(bwd, tmap, &VarMap::new())),
        },
        IsoExpr::Named(n) => IsoExpr::Named(n.clone()),
        IsoExpr::Restrict { inner, left, right } => IsoExpr::Restrict {
            inner: inner.clone(),
            left: rename_group(left, tmap),
            right: rename_group(right, tmap),
        },
        IsoExpr::AndCong(a, b) => {
            IsoExpr::AndCong(Box::new(rename_iso(a, tmap)), Box::new(rename_iso(b, tmap)))
        }
        IsoExpr::CompCong { left, mid, right } => {
            let inner = without(tmap, std::iter::once(&mid.0));
            IsoExpr::CompCong {
                left: Box::new(rename_iso(left, &inner)),
                mid: mid.clone(),
                right: Box::new(rename_iso(right, &inner)),
            }
        }
        IsoExpr::RExtCong { alpha, bound, beta } => {
            let inner = without(tmap, std::iter::once(&bound.0));
            IsoExpr::RExtCong {
                alpha: Box::new(rename_iso(alpha, &inner)),
                bound: bound.clone(),
                beta: Box::new(rename_iso(beta, &inner)),
            }
        }
        IsoExpr::RLiftCong { beta, bound, alpha } => {
            let inner = without(tmap, std::iter::once(&bound.0));
            IsoExpr::RLiftCong {
                beta: Box::new(rename_iso(beta, &inner)),
                bound: bound.clone(),
                alpha: Box::new(rename_iso(alpha, &inner)),
            }
        }
        IsoExpr::InvolCong(a) => IsoExpr::InvolCong(Box::new(rename_iso(a, tmap))),
        IsoExpr::ExcIdeProd { .. }
        | IsoExpr::ExcIdeUnit
        | IsoExpr::ExcCompTop
        | IsoExpr::ExcExtTop
        | IsoExpr::ExcCompProd(_)
        | IsoExpr::ExcExtProd(_) => u.clone(),
        IsoExpr::RestComp { protype, left, right } => IsoExpr::RestComp {
            protype: protype.clone(),
            left: rename_group(left, tmap),
            right: rename_group(right, tmap),
        },
        IsoExpr::RestRExt { protype, left, right } => IsoExpr::RestRExt {
            protype: protype.clone(),
            left: rename_group(left, tmap),
            right: rename_group(right, tmap),
        },
        IsoExpr::RestRLift { protype, left, right } => IsoExpr::RestRLift {
            protype: protype.clone(),
            left: rename_group(left, tmap),
            right: rename_group(right, tmap),
        },
    }
}

/// Renames a context's variable names (types are closed).
pub fn rename_context(ctx: &Context, map: &VarMap) -> Context {
    Context(ctx.0.iter().map(|(v, t)| (tgt(map, v).to_string(), t.clone())).collect())
}
