//! The rule registry: every oriented rewrite and script rule under its
//! frozen name. The normalizer applies the forward orientations listed in
//! [`NORMALIZER_RULES`]; scripts may cite any rule here (plus named
//! equational facts) in either direction where a reverse is defined.

use super::engine::{
    flip_pc, match_proterm_pattern, splice, Bindings, BoundValue, Direction, FactBinds,
};
use crate::checker::{infer_proterm, match_boundary_pub, CheckError, CheckResult};
use crate::rename::{rename_iso, rename_proterm, rename_protype, VarMap};
use crate::subst::{normalize_term, protype_nf_opt, subst_eval};
use crate::syntax::*;
use crate::theory::Theory;

pub struct RuleCtx<'a> {
    pub thy: &'a Theory,
    pub pc: &'a ProContext,
    pub expected: Option<&'a ProtypeExpr>,
}

/// Rules the normalizer applies, in priority order at each node.
pub const NORMALIZER_RULES: &[&str] = &[
    "prosub-unit-l",
    "prosub-unit-r",
    "pair-beta-0",
    "pair-beta-1",
    "pair-eta",
    "iso-id",
    "iso-cancel-l",
    "iso-cancel-r",
    "iso-inv-inv",
    "iso-compose",
    "iso-pair-beta",
    "iso-pair-inv",
    "rest-e-beta",
    "rest-i-beta",
    "rest-and-beta",
    "rest-top-beta",
    "repl-refl",
    "repl-fuse",
    "iso-cong-and-beta",
    "iso-cong-invol-beta",
    "iso-cong-comp-beta",
    "iso-cong-rext-beta",
    "iso-cong-rlift-beta",
    "iso-restrict-beta",
    "iso-unfold",
    "ide-beta",
    "comp-beta",
    "rext-beta",
    "rlift-beta",
    "tab-beta",
    "tabpath-beta-refl",
    "invol-invol",
    "prosub-pair",
    "prosub-proj-0",
    "prosub-proj-1",
    "prosub-empty",
    "prosub-iso",
    "prosub-assoc",
    "prosub-comp-intro",
    "prosub-rbl",
    "prosub-lbl",
    "prosub-tabpath",
    "prosub-invol",
    "tsub-pair",
    "tsub-proj-0",
    "tsub-proj-1",
    "tsub-empty",
    "tsub-fuse",
    "tsub-id",
    "tsub-prosub",
    "tsub-iso",
    "top-eta",
];

/// Script-only rules (no terminating orientation, or requiring bindings).
pub const SCRIPT_RULES: &[&str] = &[
    "ide-eta",
    "comp-eta",
    "rext-eta",
    "rlift-eta",
    "tabpath-eta",
    "prosub-rtr",
    "prosub-ltr",
    "conv",
    "rest-i-interchange",
    "repl-rest-interchange",
    "norm",
];

/// One-line documentation per rule, published for script authors.
pub const RULE_DOCS: &[(&str, &str)] = &[
    ("prosub-unit-l", "b{mu} == mu: prosubstitution into a provariable"),
    ("prosub-unit-r", "mu{a1;...;an} == mu: identity prosubstitution"),
    ("pair-beta-0", "pi0{<mu,nu>} == mu"),
    ("pair-beta-1", "pi1{<mu,nu>} == nu"),
    ("pair-eta", "<pi0{mu},pi1{mu}> == mu"),
    ("top-eta", "mu == <> at protype top"),
    ("iso-id", "id[al]{a} == a"),
    ("iso-cancel-l", "inv(U){U{a}} == a"),
    ("iso-cancel-r", "U{inv(U){b}} == b"),
    ("iso-inv-inv", "inv(inv(U)){a} == U{a}"),
    ("iso-compose", "(om . up){a} == om{up{a}}"),
    ("iso-pair-beta", "pair(a.mu, b.nu){x} == mu{x/a}"),
    ("iso-pair-inv", "inv(pair(a.mu, b.nu)){x} == nu{x/b} (derived)"),
    ("rest-e-beta", "reste{a} erases: identity restrictions are normalized away"),
    ("rest-i-beta", "resti{a} erases: stacked restrictions are fused"),
    ("rest-and-beta", "restand{a} == <pi0{a}, pi1{a}>"),
    ("rest-top-beta", "resttop{a} == <>"),
    ("repl-refl", "repl with equal substitutions is the identity"),
    ("repl-fuse", "repl . repl == repl of the endpoints"),
    ("iso-cong-and-beta", "congand(U,V){m} == <U{pi0{m}}, V{pi1{m}}>"),
    ("iso-cong-invol-beta", "conginvol(U){m} == (U{m^o})^o"),
    ("iso-cong-comp-beta", "congcomp(U,V){m}: eliminate, map, reintroduce"),
    ("iso-cong-rext-beta", "congrext(U,V){m}: transpose through the congruence"),
    ("iso-cong-rlift-beta", "congrlift(U,V){m}: transpose through the congruence"),
    ("iso-restrict-beta", "U[S|T]{m} == (U{a})[S;T]{m/a}"),
    ("iso-unfold", "replace a named isomorphism by its definition"),
    ("prosub-pair", "<mu,nu>{args} == <mu{args}, nu{args}>"),
    ("prosub-proj-0", "pi0{nu}{args} == pi0{nu{args}}"),
    ("prosub-proj-1", "pi1{nu}{args} == pi1{nu{args}}"),
    ("prosub-empty", "<>{args} == <>"),
    ("prosub-iso", "U{a}{args} == U{a{args}}"),
    ("prosub-assoc", "lam{nus}{mus} == lam{nu_i{mu-slices}}"),
    ("prosub-comp-intro", "(a (+) b){args} distributes to the arguments"),
    ("prosub-rbl", "rbl(a;e){args} distributes to the arguments"),
    ("prosub-lbl", "lbl(e;a){args} distributes to the arguments"),
    ("prosub-tabpath", "tabpath(s;t){args} distributes to both cells"),
    ("prosub-invol", "(mu^o){args} == (mu{args^o reversed})^o"),
    ("tsub-pair", "<mu,nu>[S] == <mu[S], nu[S]>"),
    ("tsub-proj-0", "pi0{mu}[S] == pi0{mu[S]}"),
    ("tsub-proj-1", "pi1{mu}[S] == pi1{mu[S]}"),
    ("tsub-empty", "<>[S] == <>"),
    ("tsub-fuse", "mu[T][S] == mu[T[S]]"),
    ("tsub-id", "mu[G/G] == mu"),
    ("tsub-prosub", "nu{mus}[S] == nu[tilde S]{mu_i[S-slices]}"),
    ("tsub-iso", "U{a}[S;T] == U[S|T]{a[S;T]}"),
    ("ide-beta", "ideind applied to refl computes to its premise"),
    ("comp-beta", "compind applied to an intro computes to its premise"),
    ("rext-beta", "rbl(mu; rtr(w,a. nu)) == nu{mu/a}"),
    ("rlift-beta", "lbl(ltr(z,a. nu); mu) == nu{mu/a}"),
    ("tab-beta", "tab[tabf(h;k;nu)/w] == nu"),
    ("tabpath-beta-refl", "tabpath of refl cells is refl"),
    ("invol-invol", "mu^o^o == mu"),
    ("ide-eta", "script: mu == ideind[j]{mu{refl/path}} (with {pos := j})"),
    ("comp-eta", "script: mu == compind[j](..., mu{a(+)b/c})"),
    ("rext-eta", "script: e == rtr(w, a. rbl(a; e))"),
    ("rlift-eta", "script: e == ltr(z, a. lbl(e; a))"),
    ("tabpath-eta", "script: p == tabpath(lpath(p); rpath(p))"),
    ("prosub-rtr", "script: rtr(w,a. nu){args} == rtr(w,a. nu{a/a; args})"),
    ("prosub-ltr", "script: ltr(z,a. nu){args} == ltr(z,a. nu{args; a/a})"),
    ("conv", "script: rewrite to a normalizer-equal proterm (with {to := ...})"),
    ("rest-i-interchange", "script: stacked-restriction interchange (via conv)"),
    ("repl-rest-interchange", "script: repl/restriction interchange (via conv)"),
    ("norm", "script: replace the current side by its normal form"),
];

pub fn intern_rule_name(name: &str) -> &'static str {
    for (n, _) in RULE_DOCS {
        if *n == name {
            return n;
        }
    }
    "fact"
}

fn proterm_size(t: &ProtermExpr) -> usize {
    use ProtermExpr::*;
    match t {
        ProVar(_) | AxiomRef(_) | Empty | Refl { .. } | Tab { .. } => 1,
        Pair(a, b)
        | CompIntro(a, b)
        | RExtApp(a, b)
        | RLiftApp(a, b)
        | TabPath { left: a, right: b } => 1 + proterm_size(a) + proterm_size(b),
        Proj0(a) | Proj1(a) | Invol(a) | IdeInd { body: a, .. } => 1 + proterm_size(a),
        CompInd { body, .. } | RExtTr { body, .. } | RLiftTr { body, .. } => {
            1 + proterm_size(body)
        }
        ProSubst { target, args } => {
            1 + proterm_size(target) + args.iter().map(|a| proterm_size(&a.proterm)).sum::<usize>()
        }
        TermSubst { inner, .. } => 1 + proterm_size(inner),
        IsoApp { arg, .. } => 1 + proterm_size(arg),
    }
}

fn fresh_name(base: &str, pc: &ProContext) -> String {
    let taken = |n: &str| {
        pc.contexts.iter().any(|c| c.lookup(n).is_some())
            || pc.provars.iter().any(|(p, _)| p == n)
    };
    if !taken(base) {
        return base.to_string();
    }
    for i in 1.. {
        let cand = format!("{base}{i}");
        if !taken(&cand) {
            return cand;
        }
    }
    unreachable!()
}

fn alpha_pt(a: &ProtermExpr, b: &ProtermExpr) -> bool {
    alpha_equal(ExprRef::Proterm(a), ExprRef::Proterm(b)).unwrap_or(false)
}

fn alpha_iso(a: &IsoExpr, b: &IsoExpr) -> bool {
    alpha_equal(ExprRef::Iso(a), ExprRef::Iso(b)).unwrap_or(false)
}

fn nf_group(thy: &Theory, src: Option<&Context>, g: &SubstGroup) -> SubstGroup {
    g.iter().map(|(c, x)| (normalize_term(thy, src, c), x.clone())).collect()
}

fn groups_alpha_eq(thy: &Theory, src: Option<&Context>, a: &SubstGroup, b: &SubstGroup) -> bool {
    let na = nf_group(thy, src, a);
    let nb = nf_group(thy, src, b);
    na.len() == nb.len()
        && na.iter().zip(&nb).all(|((t1, x1), (t2, x2))| {
            x1 == x2 && alpha_equal(ExprRef::Term(t1), ExprRef::Term(t2)).unwrap_or(false)
        })
}

/// Resolves named isomorphisms inside an iso expression, renaming each
/// definition into its use-site contexts. Mirrors the context discipline of
/// iso checking.
fn resolve_named(
    thy: &Theory,
    left: &Context,
    right: &Context,
    iso: &IsoExpr,
) -> CheckResult<(IsoExpr, bool)> {
    use IsoExpr::*;
    Ok(match iso {
        Named(n) => {
            let def = thy.iso(n).ok_or_else(|| CheckError::UnknownIso(n.clone()))?;
            let map = crate::checker::match_contexts_pub(
                &[def.left.clone(), def.right.clone()],
                &[left.clone(), right.clone()],
            )?;
            let body = rename_iso(&def.body, &map);
            let (resolved, _) = resolve_named(thy, left, right, &body)?;
            (resolved, true)
        }
        Inv(u) => {
            let (r, ch) = resolve_named(thy, left, right, u)?;
            (Inv(Box::new(r)), ch)
        }
        Compose { after, before } => {
            let (b, cb) = resolve_named(thy, left, right, before)?;
            let (a, ca) = resolve_named(thy, left, right, after)?;
            (Compose { after: Box::new(a), before: Box::new(b) }, ca || cb)
        }
        AndCong(u, v) => {
            let (a, ca) = resolve_named(thy, left, right, u)?;
            let (b, cb) = resolve_named(thy, left, right, v)?;
            (AndCong(Box::new(a), Box::new(b)), ca || cb)
        }
        CompCong { left: u, mid, right: v } => {
            let mctx = Context::single(mid.0.clone(), mid.1.clone());
            let (a, ca) = resolve_named(thy, left, &mctx, u)?;
            let (b, cb) = resolve_named(thy, &mctx, right, v)?;
            (CompCong { left: Box::new(a), mid: mid.clone(), right: Box::new(b) }, ca || cb)
        }
        RExtCong { alpha: u, bound, beta: v } => {
            let wctx = Context::single(bound.0.clone(), bound.1.clone());
            let (a, ca) = resolve_named(thy, &wctx, left, u)?;
            let (b, cb) = resolve_named(thy, &wctx, right, v)?;
            (RExtCong { alpha: Box::new(a), bound: bound.clone(), beta: Box::new(b) }, ca || cb)
        }
        RLiftCong { beta: u, bound, alpha: v } => {
            let zctx = Context::single(bound.0.clone(), bound.1.clone());
            let (b, cb) = resolve_named(thy, left, &zctx, u)?;
            let (a, ca) = resolve_named(thy, right, &zctx, v)?;
            (RLiftCong { beta: Box::new(b), bound: bound.clone(), alpha: Box::new(a) }, ca || cb)
        }
        InvolCong(u) => {
            let (a, ca) = resolve_named(thy, right, left, u)?;
            (InvolCong(Box::new(a)), ca)
        }
        Restrict { inner, left: lg, right: rg } => {
            let tgt_l = group_target(thy, left, lg)?;
            let tgt_r = group_target(thy, right, rg)?;
            let (a, ca) = resolve_named(thy, &tgt_l, &tgt_r, inner)?;
            (
                Restrict { inner: Box::new(a), left: lg.clone(), right: rg.clone() },
                ca,
            )
        }
        other => (other.clone(), false),
    })
}

fn group_target(thy: &Theory, src: &Context, g: &SubstGroup) -> CheckResult<Context> {
    let mut out = Vec::new();
    for (c, x) in g {
        let ty = crate::subst::shallow_ty(&thy.sig, Some(src), c).ok_or_else(|| {
            CheckError::Shape("cannot type a substitution component".into())
        })?;
        out.push((x.clone(), ty));
    }
    Ok(Context(out))
}

/// A refl node or its single-group instance, returning the endpoint term.
fn refl_instance(t: &ProtermExpr) -> Option<(TypeExpr, TermExpr)> {
    match t {
        ProtermExpr::Refl { ty, var } => Some((ty.clone(), TermExpr::var(var.clone()))),
        ProtermExpr::TermSubst { inner, groups } => match (inner.as_ref(), groups.as_slice()) {
            (ProtermExpr::Refl { ty, var }, [g]) if g.len() == 1 && &g[0].1 == var => {
                Some((ty.clone(), g[0].0.clone()))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Tries the normalizer rules (and oriented equational facts) at the root
/// of `t`.
pub(crate) fn try_normalizer(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
) -> CheckResult<Option<(ProtermExpr, String)>> {
    for rule in NORMALIZER_RULES {
        if let Some(next) = apply_named(rule, Direction::Fwd, ctx, t, &Bindings::new())? {
            return Ok(Some((next, rule.to_string())));
        }
    }
    // oriented instances of equational facts (strict size decrease)
    for (name, ax) in ctx.thy.eq_facts() {
        if let EqAxiom::Proterm(eq) = ax {
            for (pat, out) in [(&eq.lhs, &eq.rhs), (&eq.rhs, &eq.lhs)] {
                if let Some(next) = try_fact(ctx, t, eq, pat, out)? {
                    if proterm_size(&next) < proterm_size(t) {
                        return Ok(Some((next, format!("fact:{name}"))));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn fact_vars_ctx(eq: &EqJudgment) -> Option<Context> {
    let mut out = Vec::new();
    for ctx in &eq.pc.contexts {
        for (v, ty) in &ctx.0 {
            if out.iter().any(|(w, _)| w == v) {
                return None;
            }
            out.push((v.clone(), ty.clone()));
        }
    }
    Some(Context(out))
}

fn try_fact(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    eq: &EqJudgment,
    pat: &ProtermExpr,
    out: &ProtermExpr,
) -> CheckResult<Option<ProtermExpr>> {
    let Some(vars) = fact_vars_ctx(eq) else { return Ok(None) };
    let pvs: Vec<&str> = eq.pc.provars.iter().map(|(p, _)| p.as_str()).collect();
    let mut binds = FactBinds { terms: Vec::new(), provars: Default::default() };
    if !match_proterm_pattern(pat, t, &vars, &pvs, &mut binds) {
        return Ok(None);
    }
    // all metavariables of the output side must be determined; missing term
    // variables are recovered from the protype instance when possible
    let (otv, opv) = free_variables(ExprRef::Proterm(out));
    for p in &opv {
        if pvs.contains(&p.as_str()) && !binds.provars.contains_key(p) {
            return Ok(None);
        }
    }
    let unbound: Vec<String> = otv
        .iter()
        .filter(|v| vars.lookup(v).is_some() && !binds.terms.iter().any(|(w, _)| w == *v))
        .cloned()
        .collect();
    if !unbound.is_empty() {
        // derive from the protype of the matched side
        let Ok((got_ty, _)) = infer_proterm(ctx.thy, ctx.pc, t) else {
            return Ok(None);
        };
        let Ok((pat_ty, _)) = infer_proterm(ctx.thy, &eq.pc, pat) else {
            return Ok(None);
        };
        let got_nf = protype_nf_opt(ctx.thy, Some(ctx.pc.first()), Some(ctx.pc.last()), &got_ty);
        let pat_nf = protype_nf_opt(ctx.thy, Some(eq.pc.first()), Some(eq.pc.last()), &pat_ty);
        if !match_protype_pattern(&pat_nf, &got_nf, &vars, &mut binds.terms) {
            return Ok(None);
        }
        for v in &unbound {
            if !binds.terms.iter().any(|(w, _)| w == v) {
                return Ok(None);
            }
        }
    }
    // validity of the instance: the rewritten side must keep the protype
    let result = splice(out, &binds);
    if let (Ok((ty_t, _)), Ok((ty_r, _))) = (
        infer_proterm(ctx.thy, ctx.pc, t),
        infer_proterm(ctx.thy, ctx.pc, &result),
    ) {
        if crate::subst::protype_nf_eq(
            ctx.thy,
            Some(ctx.pc.first()),
            Some(ctx.pc.last()),
            &ty_t,
            &ty_r,
        ) {
            return Ok(Some(result));
        }
        return Ok(None);
    }
    Ok(None)
}

/// Structural protype matching with term metavariables (used to recover
/// fact instances from protypes).
pub(crate) fn match_protype_pattern(
    pat: &ProtypeExpr,
    got: &ProtypeExpr,
    vars: &Context,
    binds: &mut Vec<(String, TermExpr)>,
) -> bool {
    use ProtypeExpr::*;
    match (pat, got) {
        (Sym { sym: f, left: l1, right: r1 }, Sym { sym: g, left: l2, right: r2 }) => {
            f == g
                && l1.len() == l2.len()
                && r1.len() == r2.len()
                && l1.iter().zip(l2).all(|(a, b)| crate::subst::match_term(a, b, vars, binds))
                && r1.iter().zip(r2).all(|(a, b)| crate::subst::match_term(a, b, vars, binds))
        }
        (Top, Top) => true,
        (And(a1, b1), And(a2, b2)) => {
            match_protype_pattern(a1, a2, vars, binds)
                && match_protype_pattern(b1, b2, vars, binds)
        }
        (Path { left: l1, ty: t1, right: r1 }, Path { left: l2, ty: t2, right: r2 }) => {
            t1 == t2
                && crate::subst::match_term(l1, l2, vars, binds)
                && crate::subst::match_term(r1, r2, vars, binds)
        }
        (Rest { inner: i1, left: l1, right: r1 }, Rest { inner: i2, left: l2, right: r2 }) => {
            let grp = |a: &SubstGroup, b: &SubstGroup, binds: &mut Vec<(String, TermExpr)>| {
                a.len() == b.len()
                    && a.iter().zip(b).all(|((t1, x1), (t2, x2))| {
                        x1 == x2 && crate::subst::match_term(t1, t2, vars, binds)
                    })
            };
            grp(l1, l2, binds)
                && grp(r1, r2, binds)
                && alpha_equal(ExprRef::Protype(i1), ExprRef::Protype(i2)).unwrap_or(false)
        }
        _ => alpha_equal(ExprRef::Protype(pat), ExprRef::Protype(got)).unwrap_or(false),
    }
}

fn get_pro(binds: &Bindings, key: &str) -> Option<ProtermExpr> {
    match binds.get(key) {
        Some(BoundValue::Pro(p)) => Some(p.clone()),
        _ => None,
    }
}

fn get_iso(binds: &Bindings, key: &str) -> Option<IsoExpr> {
    match binds.get(key) {
        Some(BoundValue::Iso(u)) => Some(u.clone()),
        _ => None,
    }
}

fn get_nat(binds: &Bindings, key: &str) -> Option<usize> {
    match binds.get(key) {
        Some(BoundValue::Nat(n)) => Some(*n),
        _ => None,
    }
}

/// Applies a named rule (or named equational fact) at the root of `t`.
/// Returns `None` when the rule is known but does not match here.
pub(crate) fn apply_named(
    rule: &str,
    dir: Direction,
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    binds: &Bindings,
) -> CheckResult<Option<ProtermExpr>> {
    use ProtermExpr::*;
    let fwd = dir == Direction::Fwd;
    match rule {
        "prosub-unit-l" if fwd => Ok(match t {
            ProSubst { target, args }
                if matches!(target.as_ref(), ProVar(_)) && args.len() == 1 =>
            {
                Some(args[0].proterm.clone())
            }
            _ => None,
        }),
        "prosub-unit-r" if fwd => Ok(match t {
            ProSubst { target, args }
                if args.len() == ctx.pc.provars.len()
                    && args.iter().zip(&ctx.pc.provars).all(|(a, (p, _))| {
                        matches!(&a.proterm, ProVar(v) if v == p)
                            && a.target.as_deref().map(|n| n == p).unwrap_or(true)
                    }) =>
            {
                Some(target.as_ref().clone())
            }
            _ => None,
        }),
        "pair-beta-0" => Ok(match (fwd, t) {
            (true, Proj0(inner)) => match inner.as_ref() {
                Pair(a, _) => Some(a.as_ref().clone()),
                _ => None,
            },
            (false, _) => get_pro(binds, "nu").map(|nu| {
                ProtermExpr::proj0(ProtermExpr::pair(t.clone(), nu))
            }),
            _ => None,
        }),
        "pair-beta-1" => Ok(match (fwd, t) {
            (true, Proj1(inner)) => match inner.as_ref() {
                Pair(_, b) => Some(b.as_ref().clone()),
                _ => None,
            },
            (false, _) => get_pro(binds, "mu").map(|mu| {
                ProtermExpr::proj1(ProtermExpr::pair(mu, t.clone()))
            }),
            _ => None,
        }),
        "pair-eta" => Ok(match (fwd, t) {
            (true, Pair(a, b)) => match (a.as_ref(), b.as_ref()) {
                (Proj0(x), Proj1(y)) if alpha_pt(x, y) => Some(x.as_ref().clone()),
                _ => None,
            },
            (false, _) => Some(ProtermExpr::pair(
                ProtermExpr::proj0(t.clone()),
                ProtermExpr::proj1(t.clone()),
            )),
            _ => None,
        }),
        "top-eta" if fwd => {
            if matches!(t, Empty) {
                return Ok(None);
            }
            let ty = match ctx.expected {
                Some(e) => Some(protype_nf_opt(
                    ctx.thy,
                    Some(ctx.pc.first()),
                    Some(ctx.pc.last()),
                    e,
                )),
                None => infer_proterm(ctx.thy, ctx.pc, t).ok().map(|(ty, _)| {
                    protype_nf_opt(ctx.thy, Some(ctx.pc.first()), Some(ctx.pc.last()), &ty)
                }),
            };
            Ok(match ty {
                Some(ProtypeExpr::Top) => Some(Empty),
                _ => None,
            })
        }
        "iso-id" if fwd => Ok(match t {
            IsoApp { iso, arg } if matches!(iso.as_ref(), IsoExpr::Id(_)) => {
                Some(arg.as_ref().clone())
            }
            _ => None,
        }),
        "iso-cancel-l" => Ok(match (fwd, t) {
            (true, IsoApp { iso, arg }) => match (iso.as_ref(), arg.as_ref()) {
                (IsoExpr::Inv(u1), IsoApp { iso: u2, arg: m }) if alpha_iso(u1, u2) => {
                    Some(m.as_ref().clone())
                }
                _ => None,
            },
            (false, _) => get_iso(binds, "iso").map(|u| {
                ProtermExpr::iso_app(
                    IsoExpr::Inv(Box::new(u.clone())),
                    ProtermExpr::iso_app(u, t.clone()),
                )
            }),
            _ => None,
        }),
        "iso-cancel-r" => Ok(match (fwd, t) {
            (true, IsoApp { iso, arg }) => match arg.as_ref() {
                IsoApp { iso: inner, arg: m } => match inner.as_ref() {
                    IsoExpr::Inv(u2) if alpha_iso(iso, u2) => Some(m.as_ref().clone()),
                    _ => None,
                },
                _ => None,
            },
            (false, _) => get_iso(binds, "iso").map(|u| {
                ProtermExpr::iso_app(
                    u.clone(),
                    ProtermExpr::iso_app(IsoExpr::Inv(Box::new(u)), t.clone()),
                )
            }),
            _ => None,
        }),
        "iso-inv-inv" if fwd => Ok(match t {
            IsoApp { iso, arg } => match iso.as_ref() {
                IsoExpr::Inv(u) => match u.as_ref() {
                    IsoExpr::Inv(v) => Some(ProtermExpr::iso_app(
                        v.as_ref().clone(),
                        arg.as_ref().clone(),
                    )),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }),
        "iso-compose" if fwd => Ok(match t {
            IsoApp { iso, arg } => match iso.as_ref() {
                IsoExpr::Compose { after, before } => Some(ProtermExpr::iso_app(
                    after.as_ref().clone(),
                    ProtermExpr::iso_app(before.as_ref().clone(), arg.as_ref().clone()),
                )),
                IsoExpr::Inv(u) => match u.as_ref() {
                    // inv(om . up) == inv(up) . inv(om)
                    IsoExpr::Compose { after, before } => Some(ProtermExpr::iso_app(
                        IsoExpr::Inv(before.clone()),
                        ProtermExpr::iso_app(IsoExpr::Inv(after.clone()), arg.as_ref().clone()),
                    )),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }),
        "iso-pair-beta" => Ok(match (fwd, t) {
            (true, IsoApp { iso, arg }) => match iso.as_ref() {
                IsoExpr::PairIso { var_fwd, fwd: mu, .. } => Some(ProtermExpr::prosubst(
                    mu.as_ref().clone(),
                    vec![ProArg { proterm: arg.as_ref().clone(), target: Some(var_fwd.clone()) }],
                )),
                _ => None,
            },
            (false, _) => {
                let Some(u) = get_iso(binds, "iso") else { return Ok(None) };
                let (resolved, _) =
                    resolve_named(ctx.thy, ctx.pc.first(), ctx.pc.last(), &u)?;
                let IsoExpr::PairIso { var_fwd, fwd: mu, .. } = &resolved else {
                    return Ok(None);
                };
                match t {
                    ProSubst { target, args } if args.len() == 1 => {
                        let mut env = crate::syntax::AlphaEnv::new();
                        let tname =
                            args[0].target.clone().unwrap_or_else(|| var_fwd.clone());
                        env.push_provar(var_fwd, &tname);
                        let same = crate::syntax::alpha_equal_under(
                            &mut env,
                            ExprRef::Proterm(mu),
                            ExprRef::Proterm(target),
                        )
                        .unwrap_or(false);
                        if same {
                            Ok(Some(ProtermExpr::iso_app(u, args[0].proterm.clone())))?
                        } else {
                            return Ok(None);
                        }
                    }
                    _ => return Ok(None),
                }
            }
            _ => None,
        }),
        "iso-pair-inv" if fwd => Ok(match t {
            IsoApp { iso, arg } => match iso.as_ref() {
                IsoExpr::Inv(u) => match u.as_ref() {
                    IsoExpr::PairIso { var_bwd, bwd, .. } => Some(ProtermExpr::prosubst(
                        bwd.as_ref().clone(),
                        vec![ProArg {
                            proterm: arg.as_ref().clone(),
                            target: Some(var_bwd.clone()),
                        }],
                    )),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }),
        "rest-e-beta" if fwd => Ok(iso_erase(t, |u| matches!(u, IsoExpr::RestE { .. }))),
        "rest-i-beta" if fwd => Ok(iso_erase(t, |u| matches!(u, IsoExpr::RestI { .. }))),
        "rest-and-beta" if fwd => Ok(match t {
            IsoApp { iso, arg } if head_is(iso, |u| matches!(u, IsoExpr::RestAnd { .. })) => {
                Some(ProtermExpr::pair(
                    ProtermExpr::proj0(arg.as_ref().clone()),
                    ProtermExpr::proj1(arg.as_ref().clone()),
                ))
            }
            _ => None,
        }),
        "rest-top-beta" if fwd => Ok(match t {
            IsoApp { iso, .. } if head_is(iso, |u| matches!(u, IsoExpr::RestTop { .. })) => {
                Some(Empty)
            }
            _ => None,
        }),
        "repl-refl" if fwd => Ok(match t {
            IsoApp { iso, arg } => match iso.as_ref() {
                IsoExpr::Repl { left0, left1, right0, right1, .. } => {
                    if groups_alpha_eq(ctx.thy, Some(ctx.pc.first()), left0, left1)
                        && groups_alpha_eq(ctx.thy, Some(ctx.pc.last()), right0, right1)
                    {
                        Some(arg.as_ref().clone())
                    } else {
                        None
                    }
                }
                _ => None,
            },
            _ => None,
        }),
        "repl-fuse" if fwd => Ok(match t {
            IsoApp { iso, arg } => match (iso.as_ref(), arg.as_ref()) {
                (
                    IsoExpr::Repl { alpha, left0: b1, left1: b2, right0: d1, right1: d2 },
                    IsoApp { iso: inner, arg: m },
                ) => match inner.as_ref() {
                    IsoExpr::Repl { left0: a0, left1: a1, right0: c0, right1: c1, .. }
                        if groups_alpha_eq(ctx.thy, Some(ctx.pc.first()), a1, b1)
                            && groups_alpha_eq(ctx.thy, Some(ctx.pc.last()), c1, d1) =>
                    {
                        Some(ProtermExpr::iso_app(
                            IsoExpr::Repl {
                                alpha: alpha.clone(),
                                left0: a0.clone(),
                                left1: b2.clone(),
                                right0: c0.clone(),
                                right1: d2.clone(),
                            },
                            m.as_ref().clone(),
                        ))
                    }
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }),
        "iso-cong-and-beta" if fwd => Ok(match t {
            IsoApp { iso, arg } => match cong_head(iso) {
                Some((IsoExpr::AndCong(u, v), inv)) => {
                    let (u, v) = if inv {
                        (IsoExpr::Inv(u.clone()), IsoExpr::Inv(v.clone()))
                    } else {
                        (u.as_ref().clone(), v.as_ref().clone())
                    };
                    Some(ProtermExpr::pair(
                        ProtermExpr::iso_app(u, ProtermExpr::proj0(arg.as_ref().clone())),
                        ProtermExpr::iso_app(v, ProtermExpr::proj1(arg.as_ref().clone())),
                    ))
                }
                _ => None,
            },
            _ => None,
        }),
        "iso-cong-invol-beta" if fwd => Ok(match t {
            IsoApp { iso, arg } => match cong_head(iso) {
                Some((IsoExpr::InvolCong(u), inv)) => {
                    let u = if inv { IsoExpr::Inv(u.clone()) } else { u.as_ref().clone() };
                    Some(ProtermExpr::Invol(Box::new(ProtermExpr::iso_app(
                        u,
                        ProtermExpr::Invol(Box::new(arg.as_ref().clone())),
                    ))))
                }
                _ => None,
            },
            _ => None,
        }),
        "iso-cong-comp-beta" if fwd => Ok(match t {
            IsoApp { iso, arg } => match cong_head(iso) {
                Some((IsoExpr::CompCong { left: u, mid, right: v }, inv)) => {
                    let (u, v) = if inv {
                        (IsoExpr::Inv(u.clone()), IsoExpr::Inv(v.clone()))
                    } else {
                        (u.as_ref().clone(), v.as_ref().clone())
                    };
                    let a = fresh_name("ca", ctx.pc);
                    let b = fresh_name("cb", ctx.pc);
                    let c = fresh_name("cc", ctx.pc);
                    let mid = (fresh_name(&mid.0, ctx.pc), mid.1.clone());
                    let body = ProtermExpr::CompIntro(
                        Box::new(ProtermExpr::iso_app(u, ProtermExpr::provar(a.clone()))),
                        Box::new(ProtermExpr::iso_app(v, ProtermExpr::provar(b.clone()))),
                    );
                    Some(ProtermExpr::prosubst(
                        ProtermExpr::CompInd {
                            pos: 1,
                            var_a: a,
                            mid,
                            var_b: b,
                            body: Box::new(body),
                        },
                        vec![ProArg { proterm: arg.as_ref().clone(), target: Some(c) }],
                    ))
                }
                _ => None,
            },
            _ => None,
        }),
        "iso-cong-rext-beta" if fwd => Ok(match t {
            IsoApp { iso, arg } => match cong_head(iso) {
                Some((IsoExpr::RExtCong { alpha: u, bound, beta: v }, inv)) => {
                    let (u, v) = if inv {
                        (IsoExpr::Inv(u.clone()), IsoExpr::Inv(v.clone()))
                    } else {
                        (u.as_ref().clone(), v.as_ref().clone())
                    };
                    let w = fresh_name(&bound.0, ctx.pc);
                    let a = fresh_name("ea", ctx.pc);
                    // the annotation is the target side of the congruence
                    let ann = iso_rhs(ctx, iso).map(Box::new);
                    Some(ProtermExpr::RExtTr {
                        ann,
                        cvar: w,
                        provar: a.clone(),
                        body: Box::new(ProtermExpr::iso_app(
                            v,
                            ProtermExpr::RExtApp(
                                Box::new(ProtermExpr::iso_app(
                                    IsoExpr::Inv(Box::new(u)),
                                    ProtermExpr::provar(a),
                                )),
                                Box::new(arg.as_ref().clone()),
                            ),
                        )),
                    })
                }
                _ => None,
            },
            _ => None,
        }),
        "iso-cong-rlift-beta" if fwd => Ok(match t {
            IsoApp { iso, arg } => match cong_head(iso) {
                Some((IsoExpr::RLiftCong { beta: u, bound, alpha: v }, inv)) => {
                    let (u, v) = if inv {
                        (IsoExpr::Inv(u.clone()), IsoExpr::Inv(v.clone()))
                    } else {
                        (u.as_ref().clone(), v.as_ref().clone())
                    };
                    let z = fresh_name(&bound.0, ctx.pc);
                    let a = fresh_name("la", ctx.pc);
                    let ann = iso_rhs(ctx, iso).map(Box::new);
                    Some(ProtermExpr::RLiftTr {
                        ann,
                        cvar: z,
                        provar: a.clone(),
                        body: Box::new(ProtermExpr::iso_app(
                            u,
                            ProtermExpr::RLiftApp(
                                Box::new(arg.as_ref().clone()),
                                Box::new(ProtermExpr::iso_app(
                                    IsoExpr::Inv(Box::new(v)),
                                    ProtermExpr::provar(a),
                                )),
                            ),
                        )),
                    })
                }
                _ => None,
            },
            _ => None,
        }),
        "iso-restrict-beta" if fwd => Ok(match t {
            IsoApp { iso, arg } => match iso_restrict_parts(iso) {
                Some((inner, lg, rg)) => {
                    let a = fresh_name("ra", ctx.pc);
                    Some(ProtermExpr::prosubst(
                        ProtermExpr::term_subst(
                            ProtermExpr::iso_app(inner, ProtermExpr::provar(a.clone())),
                            vec![lg, rg],
                        ),
                        vec![ProArg { proterm: arg.as_ref().clone(), target: Some(a) }],
                    ))
                }
                None => None,
            },
            _ => None,
        }),
        "iso-unfold" => Ok(match t {
            IsoApp { iso, arg } => {
                let (resolved, changed) =
                    resolve_named(ctx.thy, ctx.pc.first(), ctx.pc.last(), iso)?;
                match (fwd, changed) {
                    (true, true) => {
                        Some(ProtermExpr::iso_app(resolved, arg.as_ref().clone()))
                    }
                    _ => None,
                }
            }
            _ => None,
        }),
        "prosub-pair" if fwd => Ok(match t {
            ProSubst { target, args } => match target.as_ref() {
                Pair(a, b) => Some(ProtermExpr::pair(
                    ProtermExpr::prosubst(a.as_ref().clone(), args.clone()),
                    ProtermExpr::prosubst(b.as_ref().clone(), args.clone()),
                )),
                _ => None,
            },
            _ => None,
        }),
        "prosub-proj-0" if fwd => Ok(match t {
            ProSubst { target, args } => match target.as_ref() {
                Proj0(m) => Some(ProtermExpr::proj0(ProtermExpr::prosubst(
                    m.as_ref().clone(),
                    args.clone(),
                ))),
                _ => None,
            },
            _ => None,
        }),
        "prosub-proj-1" if fwd => Ok(match t {
            ProSubst { target, args } => match target.as_ref() {
                Proj1(m) => Some(ProtermExpr::proj1(ProtermExpr::prosubst(
                    m.as_ref().clone(),
                    args.clone(),
                ))),
                _ => None,
            },
            _ => None,
        }),
        "prosub-empty" if fwd => Ok(match t {
            ProSubst { target, .. } if matches!(target.as_ref(), Empty) => Some(Empty),
            _ => None,
        }),
        "prosub-iso" if fwd => Ok(match t {
            ProSubst { target, args } => match target.as_ref() {
                IsoApp { iso, arg } => Some(ProtermExpr::iso_app(
                    iso.as_ref().clone(),
                    ProtermExpr::prosubst(arg.as_ref().clone(), args.clone()),
                )),
                _ => None,
            },
            _ => None,
        }),
        "prosub-assoc" if fwd => prosub_assoc(ctx, t),
        "prosub-comp-intro" if fwd => prosub_two(ctx, t, TwoArg::CompIntro),
        "prosub-rbl" if fwd => prosub_two(ctx, t, TwoArg::RExtApp),
        "prosub-lbl" if fwd => prosub_two(ctx, t, TwoArg::RLiftApp),
        "prosub-tabpath" if fwd => Ok(match t {
            ProSubst { target, args } => match target.as_ref() {
                TabPath { left, right } => Some(ProtermExpr::TabPath {
                    left: Box::new(ProtermExpr::prosubst(left.as_ref().clone(), args.clone())),
                    right: Box::new(ProtermExpr::prosubst(
                        right.as_ref().clone(),
                        args.clone(),
                    )),
                }),
                _ => None,
            },
            _ => None,
        }),
        "prosub-invol" if fwd => Ok(match t {
            ProSubst { target, args } => match target.as_ref() {
                Invol(m) => {
                    let flipped: Vec<ProArg> = args
                        .iter()
                        .rev()
                        .map(|a| ProArg {
                            proterm: ProtermExpr::Invol(Box::new(a.proterm.clone())),
                            target: a.target.clone(),
                        })
                        .collect();
                    Some(ProtermExpr::Invol(Box::new(ProtermExpr::prosubst(
                        m.as_ref().clone(),
                        flipped,
                    ))))
                }
                _ => None,
            },
            _ => None,
        }),
        "tsub-pair" if fwd => Ok(match t {
            TermSubst { inner, groups } => match inner.as_ref() {
                Pair(a, b) => Some(ProtermExpr::pair(
                    ProtermExpr::term_subst(a.as_ref().clone(), groups.clone()),
                    ProtermExpr::term_subst(b.as_ref().clone(), groups.clone()),
                )),
                _ => None,
            },
            _ => None,
        }),
        "tsub-proj-0" if fwd => Ok(match t {
            TermSubst { inner, groups } => match inner.as_ref() {
                Proj0(m) => Some(ProtermExpr::proj0(ProtermExpr::term_subst(
                    m.as_ref().clone(),
                    groups.clone(),
                ))),
                _ => None,
            },
            _ => None,
        }),
        "tsub-proj-1" if fwd => Ok(match t {
            TermSubst { inner, groups } => match inner.as_ref() {
                Proj1(m) => Some(ProtermExpr::proj1(ProtermExpr::term_subst(
                    m.as_ref().clone(),
                    groups.clone(),
                ))),
                _ => None,
            },
            _ => None,
        }),
        "tsub-empty" if fwd => Ok(match t {
            TermSubst { inner, .. } if matches!(inner.as_ref(), Empty) => Some(Empty),
            _ => None,
        }),
        "tsub-fuse" if fwd => Ok(match t {
            TermSubst { inner, groups } => match inner.as_ref() {
                TermSubst { inner: i2, groups: g2 } if g2.len() == groups.len() => {
                    let composed: Vec<SubstGroup> = g2
                        .iter()
                        .zip(groups)
                        .map(|(ig, og)| {
                            ig.iter()
                                .map(|(c, x)| (subst_eval(c, og), x.clone()))
                                .collect()
                        })
                        .collect();
                    Some(ProtermExpr::term_subst(i2.as_ref().clone(), composed))
                }
                _ => None,
            },
            _ => None,
        }),
        "tsub-id" if fwd => Ok(match t {
            TermSubst { inner, groups } => {
                let identity = groups.len() == ctx.pc.contexts.len()
                    && groups.iter().zip(&ctx.pc.contexts).all(|(g, c)| {
                        g.len() == c.0.len()
                            && g.iter().zip(&c.0).all(|((tm, x), (v, _))| {
                                x == v && matches!(tm, TermExpr::Var(w) if w == v)
                            })
                    });
                if identity {
                    Some(inner.as_ref().clone())
                } else {
                    None
                }
            }
            _ => None,
        }),
        "tsub-prosub" if fwd => tsub_prosub(ctx, t),
        "tsub-iso" if fwd => Ok(match t {
            TermSubst { inner, groups } => match inner.as_ref() {
                IsoApp { iso, arg } if groups.len() >= 2 => {
                    Some(ProtermExpr::iso_app(
                        IsoExpr::Restrict {
                            inner: iso.clone(),
                            left: groups[0].clone(),
                            right: groups[groups.len() - 1].clone(),
                        },
                        ProtermExpr::term_subst(arg.as_ref().clone(), groups.clone()),
                    ))
                }
                _ => None,
            },
            _ => None,
        }),
        "ide-beta" if fwd => ide_beta(ctx, t),
        "comp-beta" if fwd => comp_beta(ctx, t),
        "rext-beta" if fwd => rext_beta(ctx, t),
        "rlift-beta" if fwd => rlift_beta(ctx, t),
        "tab-beta" if fwd => Ok(match t {
            TermSubst { inner, groups } => match (inner.as_ref(), groups.as_slice()) {
                (Tab { var }, [g]) if g.len() == 1 && &g[0].1 == var => match &g[0].0 {
                    TermExpr::TabFactor { cell, .. } => Some(cell.as_ref().clone()),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }),
        "tabpath-beta-refl" if fwd => Ok(match t {
            TabPath { left, right } => {
                match (refl_instance(left), refl_instance(right)) {
                    (Some((_, lu)), Some((_, ru))) => {
                        let u = match &lu {
                            TermExpr::TabL(u) => Some(u.as_ref().clone()),
                            _ => None,
                        };
                        let v = match &ru {
                            TermExpr::TabR(v) => Some(v.as_ref().clone()),
                            _ => None,
                        };
                        match (u, v) {
                            (Some(u), Some(v))
                                if alpha_equal(ExprRef::Term(&u), ExprRef::Term(&v))
                                    .unwrap_or(false) =>
                            {
                                let Some(cty) = crate::subst::shallow_ty(
                                    &ctx.thy.sig,
                                    Some(ctx.pc.first()),
                                    &u,
                                ) else {
                                    return Ok(None);
                                };
                                let w = fresh_name("w", ctx.pc);
                                Some(ProtermExpr::term_subst(
                                    Refl { ty: cty, var: w.clone() },
                                    vec![vec![(u, w)]],
                                ))
                            }
                            _ => None,
                        }
                    }
                    _ => None,
                }
            }
            _ => None,
        }),
        "invol-invol" if fwd => Ok(match t {
            Invol(a) => match a.as_ref() {
                Invol(b) => Some(b.as_ref().clone()),
                _ => None,
            },
            _ => None,
        }),
        // script rules
        "rext-eta" => rext_eta(ctx, t, dir),
        "rlift-eta" => rlift_eta(ctx, t, dir),
        "ide-eta" => ide_eta(ctx, t, dir, binds),
        "comp-eta" => comp_eta(ctx, t, dir, binds),
        "tabpath-eta" => tabpath_eta(ctx, t, dir, binds),
        "prosub-rtr" => prosub_tr(ctx, t, dir, true),
        "prosub-ltr" => prosub_tr(ctx, t, dir, false),
        "conv" | "rest-i-interchange" | "repl-rest-interchange" => conv(ctx, t, binds),
        _ => {
            // a named equational fact
            let Some(ax) = ctx.thy.eq_fact(rule) else {
                return Err(CheckError::UnknownLemma(rule.to_string()));
            };
            let EqAxiom::Proterm(eq) = ax.clone() else {
                return Err(CheckError::Shape(format!(
                    "{rule} is a substitution equality; it rewrites terms, not proterms"
                )));
            };
            let (pat, out) = if fwd { (&eq.lhs, &eq.rhs) } else { (&eq.rhs, &eq.lhs) };
            try_fact(ctx, t, &eq, pat, out)
        }
    }
}

fn head_is(iso: &IsoExpr, pred: impl Fn(&IsoExpr) -> bool) -> bool {
    pred(iso)
        || match iso {
            IsoExpr::Inv(u) => pred(u),
            _ => false,
        }
}

fn iso_erase(t: &ProtermExpr, pred: impl Fn(&IsoExpr) -> bool) -> Option<ProtermExpr> {
    match t {
        ProtermExpr::IsoApp { iso, arg } if head_is(iso, pred) => Some(arg.as_ref().clone()),
        _ => None,
    }
}

/// Unwraps a congruence head, reporting whether it sat under an inverse.
fn cong_head(iso: &IsoExpr) -> Option<(&IsoExpr, bool)> {
    match iso {
        IsoExpr::AndCong(..)
        | IsoExpr::CompCong { .. }
        | IsoExpr::RExtCong { .. }
        | IsoExpr::RLiftCong { .. }
        | IsoExpr::InvolCong(..) => Some((iso, false)),
        IsoExpr::Inv(u) => match u.as_ref() {
            IsoExpr::AndCong(..)
            | IsoExpr::CompCong { .. }
            | IsoExpr::RExtCong { .. }
            | IsoExpr::RLiftCong { .. }
            | IsoExpr::InvolCong(..) => Some((u, true)),
            _ => None,
        },
        _ => None,
    }
}

fn iso_restrict_parts(iso: &IsoExpr) -> Option<(IsoExpr, SubstGroup, SubstGroup)> {
    match iso {
        IsoExpr::Restrict { inner, left, right } => {
            Some((inner.as_ref().clone(), left.clone(), right.clone()))
        }
        IsoExpr::Inv(u) => match u.as_ref() {
            IsoExpr::Restrict { inner, left, right } => Some((
                IsoExpr::Inv(inner.clone()),
                left.clone(),
                right.clone(),
            )),
            _ => None,
        },
        _ => None,
    }
}

fn iso_rhs(ctx: &RuleCtx<'_>, iso: &IsoExpr) -> Option<ProtypeExpr> {
    crate::checker::check_iso(ctx.thy, ctx.pc.first(), ctx.pc.last(), iso, None)
        .ok()
        .map(|(_, rhs, _)| rhs)
}

fn prosubst_layout(
    ctx: &RuleCtx<'_>,
    args: &[ProArg],
) -> CheckResult<(ProContext, Vec<(usize, usize)>)> {
    let refs: Vec<&ProtermExpr> = args.iter().map(|a| &a.proterm).collect();
    let slices = crate::checker::split_slices_pub(ctx.pc, &refs)?;
    let mut tilde_ctx = Vec::new();
    let mut tilde_pv = Vec::new();
    for (i, (arg, sl)) in args.iter().zip(&slices).enumerate() {
        let sub = crate::checker::sub_pc_pub(ctx.pc, *sl);
        let (ty, _) = infer_proterm(ctx.thy, &sub, &arg.proterm)?;
        tilde_ctx.push(ctx.pc.contexts[sl.c0].clone());
        tilde_pv.push((arg.target.clone().unwrap_or_else(|| format!("b{}", i + 1)), ty));
    }
    tilde_ctx.push(ctx.pc.last().clone());
    Ok((
        ProContext { contexts: tilde_ctx, provars: tilde_pv },
        slices.iter().map(|s| (s.p0, s.p1)).collect(),
    ))
}

fn prosub_assoc(ctx: &RuleCtx<'_>, t: &ProtermExpr) -> CheckResult<Option<ProtermExpr>> {
    let ProtermExpr::ProSubst { target, args } = t else { return Ok(None) };
    let ProtermExpr::ProSubst { target: lam, args: iargs } = target.as_ref() else {
        return Ok(None);
    };
    let (tilde_pc, _) = prosubst_layout(ctx, args)?;
    let irefs: Vec<&ProtermExpr> = iargs.iter().map(|a| &a.proterm).collect();
    let islices = crate::checker::split_slices_pub(&tilde_pc, &irefs)?;
    let mut new_iargs = Vec::new();
    for (iarg, isl) in iargs.iter().zip(&islices) {
        let outer_slice: Vec<ProArg> = args[isl.p0..isl.p1].to_vec();
        new_iargs.push(ProArg {
            proterm: ProtermExpr::prosubst(iarg.proterm.clone(), outer_slice),
            target: iarg.target.clone(),
        });
    }
    Ok(Some(ProtermExpr::prosubst(lam.as_ref().clone(), new_iargs)))
}

enum TwoArg {
    CompIntro,
    RExtApp,
    RLiftApp,
}

fn prosub_two(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    kind: TwoArg,
) -> CheckResult<Option<ProtermExpr>> {
    let ProtermExpr::ProSubst { target, args } = t else { return Ok(None) };
    let (m1, m2) = match (&kind, target.as_ref()) {
        (TwoArg::CompIntro, ProtermExpr::CompIntro(a, b)) => (a, b),
        (TwoArg::RExtApp, ProtermExpr::RExtApp(a, b)) => (a, b),
        (TwoArg::RLiftApp, ProtermExpr::RLiftApp(a, b)) => (a, b),
        _ => return Ok(None),
    };
    let (tilde_pc, _) = prosubst_layout(ctx, args)?;
    let slices =
        crate::checker::split_slices_pub(&tilde_pc, &[m1.as_ref(), m2.as_ref()])?;
    let a1: Vec<ProArg> = args[slices[0].p0..slices[0].p1].to_vec();
    let a2: Vec<ProArg> = args[slices[1].p0..slices[1].p1].to_vec();
    let w1 = ProtermExpr::prosubst(m1.as_ref().clone(), a1);
    let w2 = ProtermExpr::prosubst(m2.as_ref().clone(), a2);
    Ok(Some(match kind {
        TwoArg::CompIntro => ProtermExpr::CompIntro(Box::new(w1), Box::new(w2)),
        TwoArg::RExtApp => ProtermExpr::RExtApp(Box::new(w1), Box::new(w2)),
        TwoArg::RLiftApp => ProtermExpr::RLiftApp(Box::new(w1), Box::new(w2)),
    }))
}

fn tsub_prosub(ctx: &RuleCtx<'_>, t: &ProtermExpr) -> CheckResult<Option<ProtermExpr>> {
    let ProtermExpr::TermSubst { inner, groups } = t else { return Ok(None) };
    let ProtermExpr::ProSubst { target, args } = inner.as_ref() else { return Ok(None) };
    let inner_pc = crate::checker::tsub_inner_pc_pub(ctx.thy, ctx.pc, groups)?;
    let refs: Vec<&ProtermExpr> = args.iter().map(|a| &a.proterm).collect();
    let slices = crate::checker::split_slices_pub(&inner_pc, &refs)?;
    let mut new_args = Vec::new();
    let mut tilde_groups = Vec::new();
    for (arg, sl) in args.iter().zip(&slices) {
        tilde_groups.push(groups[sl.c0].clone());
        let arg_groups: Vec<SubstGroup> = groups[sl.c0..=sl.c1].to_vec();
        new_args.push(ProArg {
            proterm: ProtermExpr::term_subst(arg.proterm.clone(), arg_groups),
            target: arg.target.clone(),
        });
    }
    tilde_groups.push(groups[groups.len() - 1].clone());
    Ok(Some(ProtermExpr::prosubst(
        ProtermExpr::term_subst(target.as_ref().clone(), tilde_groups),
        new_args,
    )))
}

fn ide_beta(ctx: &RuleCtx<'_>, t: &ProtermExpr) -> CheckResult<Option<ProtermExpr>> {
    let ProtermExpr::ProSubst { target, args } = t else { return Ok(None) };
    match target.as_ref() {
        ProtermExpr::IdeInd { pos, body } => {
            let j = *pos;
            if j == 0 || j > args.len() {
                return Ok(None);
            }
            if !matches!(&args[j - 1].proterm, ProtermExpr::Refl { .. }) {
                return Ok(None);
            }
            let mut rest = args.clone();
            rest.remove(j - 1);
            Ok(Some(ProtermExpr::prosubst(body.as_ref().clone(), rest)))
        }
        ProtermExpr::TermSubst { inner, groups } => {
            let ProtermExpr::IdeInd { pos, body } = inner.as_ref() else { return Ok(None) };
            let j = *pos;
            if j == 0 || j > args.len() || groups.len() < j + 1 {
                return Ok(None);
            }
            let Some((_, u)) = refl_instance(&args[j - 1].proterm) else { return Ok(None) };
            let single = |g: &SubstGroup| -> Option<TermExpr> {
                match g.as_slice() {
                    [(c, _)] => Some(c.clone()),
                    _ => None,
                }
            };
            let (Some(tl), Some(tr)) = (single(&groups[j - 1]), single(&groups[j])) else {
                return Ok(None);
            };
            let eq = |a: &TermExpr, b: &TermExpr| {
                let na = normalize_term(ctx.thy, None, a);
                let nb = normalize_term(ctx.thy, None, b);
                alpha_equal(ExprRef::Term(&na), ExprRef::Term(&nb)).unwrap_or(false)
            };
            if !eq(&tl, &u) || !eq(&tr, &u) {
                return Ok(None);
            }
            let mut new_groups = groups.clone();
            new_groups.remove(j);
            let mut rest = args.clone();
            rest.remove(j - 1);
            Ok(Some(ProtermExpr::prosubst(
                ProtermExpr::term_subst(body.as_ref().clone(), new_groups),
                rest,
            )))
        }
        _ => Ok(None),
    }
}

fn comp_beta(ctx: &RuleCtx<'_>, t: &ProtermExpr) -> CheckResult<Option<ProtermExpr>> {
    let ProtermExpr::ProSubst { target, args } = t else { return Ok(None) };
    let ProtermExpr::CompInd { pos, var_a, mid, var_b, body } = target.as_ref() else {
        return Ok(None);
    };
    let j = *pos;
    if j == 0 || j > args.len() {
        return Ok(None);
    }
    let ProtermExpr::CompIntro(m, n) = &args[j - 1].proterm else { return Ok(None) };
    // locate the ambient middle context of the intro
    let refs: Vec<&ProtermExpr> = args.iter().map(|a| &a.proterm).collect();
    let slices = crate::checker::split_slices_pub(ctx.pc, &refs)?;
    let sub = crate::checker::sub_pc_pub(ctx.pc, slices[j - 1]);
    let inner = crate::checker::split_slices_pub(&sub, &[m.as_ref(), n.as_ref()])?;
    let midc = &sub.contexts[inner[0].c1];
    let [(v, _)] = midc.0.as_slice() else { return Ok(None) };
    let mut tmap = VarMap::new();
    if v != &mid.0 {
        tmap.insert(mid.0.clone(), v.clone());
    }
    let body = rename_proterm(body, &tmap, &VarMap::new());
    let mut new_args = Vec::new();
    new_args.extend(args[..j - 1].iter().cloned());
    new_args.push(ProArg { proterm: m.as_ref().clone(), target: Some(var_a.clone()) });
    new_args.push(ProArg { proterm: n.as_ref().clone(), target: Some(var_b.clone()) });
    new_args.extend(args[j..].iter().cloned());
    Ok(Some(ProtermExpr::prosubst(body, new_args)))
}

fn identity_args(pc: &ProContext, skip: Option<usize>) -> Vec<ProArg> {
    pc.provars
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, (p, _))| ProArg {
            proterm: ProtermExpr::provar(p.clone()),
            target: Some(p.clone()),
        })
        .collect()
}

fn rext_beta(ctx: &RuleCtx<'_>, t: &ProtermExpr) -> CheckResult<Option<ProtermExpr>> {
    let ProtermExpr::RExtApp(m, e) = t else { return Ok(None) };
    let ProtermExpr::RExtTr { ann: Some(ann), cvar, provar, body } = e.as_ref() else {
        return Ok(None);
    };
    let (alpha, bound, _beta) = match protype_nf_opt(ctx.thy, None, None, ann) {
        ProtypeExpr::RExt { alpha, bound, beta } => (*alpha, bound, *beta),
        _ => return Ok(None),
    };
    let slices = crate::checker::split_slices_pub(ctx.pc, &[m.as_ref(), e.as_ref()])?;
    let pm = crate::checker::sub_pc_pub(ctx.pc, slices[0]);
    let pe = crate::checker::sub_pc_pub(ctx.pc, slices[1]);
    let Ok((ta, _)) = infer_proterm(ctx.thy, &pm, m) else { return Ok(None) };
    let Ok(u) = match_boundary_pub(ctx.thy, &pm, &bound, &alpha, &ta, pm.first()) else {
        return Ok(None);
    };
    // body[u/w ; identities]{m/a ; identities}
    let mut groups: Vec<SubstGroup> = vec![vec![(u, cvar.clone())]];
    for c in &pe.contexts {
        groups.push(c.0.iter().map(|(v, _)| (TermExpr::var(v.clone()), v.clone())).collect());
    }
    let mut args = vec![ProArg { proterm: m.as_ref().clone(), target: Some(provar.clone()) }];
    args.extend(identity_args(&pe, None));
    Ok(Some(ProtermExpr::prosubst(
        ProtermExpr::term_subst(body.as_ref().clone(), groups),
        args,
    )))
}

fn rlift_beta(ctx: &RuleCtx<'_>, t: &ProtermExpr) -> CheckResult<Option<ProtermExpr>> {
    let ProtermExpr::RLiftApp(e, m) = t else { return Ok(None) };
    let ProtermExpr::RLiftTr { ann: Some(ann), cvar, provar, body } = e.as_ref() else {
        return Ok(None);
    };
    let (alpha, bound, _beta) = match protype_nf_opt(ctx.thy, None, None, ann) {
        ProtypeExpr::RLift { beta, bound, alpha } => (*alpha, bound, *beta),
        _ => return Ok(None),
    };
    let slices = crate::checker::split_slices_pub(ctx.pc, &[e.as_ref(), m.as_ref()])?;
    let pe = crate::checker::sub_pc_pub(ctx.pc, slices[0]);
    let pm = crate::checker::sub_pc_pub(ctx.pc, slices[1]);
    let Ok((ta, _)) = infer_proterm(ctx.thy, &pm, m) else { return Ok(None) };
    let Ok(u) = match_boundary_pub(ctx.thy, &pm, &bound, &alpha, &ta, pm.last()) else {
        return Ok(None);
    };
    let mut groups: Vec<SubstGroup> = Vec::new();
    for c in &pe.contexts {
        groups.push(c.0.iter().map(|(v, _)| (TermExpr::var(v.clone()), v.clone())).collect());
    }
    groups.push(vec![(u, cvar.clone())]);
    let mut args = identity_args(&pe, None);
    args.push(ProArg { proterm: m.as_ref().clone(), target: Some(provar.clone()) });
    Ok(Some(ProtermExpr::prosubst(
        ProtermExpr::term_subst(body.as_ref().clone(), groups),
        args,
    )))
}

fn expected_nf(ctx: &RuleCtx<'_>) -> Option<ProtypeExpr> {
    ctx.expected.map(|e| {
        protype_nf_opt(ctx.thy, Some(ctx.pc.first()), Some(ctx.pc.last()), e)
    })
}

fn rext_eta(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    dir: Direction,
) -> CheckResult<Option<ProtermExpr>> {
    match dir {
        Direction::Fwd => {
            let Some(exp) = expected_nf(ctx) else {
                return Err(CheckError::AnnotationNeeded(
                    "rext-eta needs the protype at this position".into(),
                ));
            };
            if !matches!(exp, ProtypeExpr::RExt { .. }) {
                return Ok(None);
            }
            let w = fresh_name("w", ctx.pc);
            let a = fresh_name("a", ctx.pc);
            Ok(Some(ProtermExpr::RExtTr {
                ann: Some(Box::new(exp)),
                cvar: w,
                provar: a.clone(),
                body: Box::new(ProtermExpr::RExtApp(
                    Box::new(ProtermExpr::provar(a)),
                    Box::new(t.clone()),
                )),
            }))
        }
        Direction::Rev => Ok(match t {
            ProtermExpr::RExtTr { provar, body, cvar, .. } => match body.as_ref() {
                ProtermExpr::RExtApp(a, inner) => match a.as_ref() {
                    ProtermExpr::ProVar(v) if v == provar => {
                        let (tv, pv) = free_variables(ExprRef::Proterm(inner));
                        if pv.contains(provar) || tv.contains(cvar) {
                            None
                        } else {
                            Some(inner.as_ref().clone())
                        }
                    }
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }),
    }
}

fn rlift_eta(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    dir: Direction,
) -> CheckResult<Option<ProtermExpr>> {
    match dir {
        Direction::Fwd => {
            let Some(exp) = expected_nf(ctx) else {
                return Err(CheckError::AnnotationNeeded(
                    "rlift-eta needs the protype at this position".into(),
                ));
            };
            if !matches!(exp, ProtypeExpr::RLift { .. }) {
                return Ok(None);
            }
            let z = fresh_name("z", ctx.pc);
            let a = fresh_name("a", ctx.pc);
            Ok(Some(ProtermExpr::RLiftTr {
                ann: Some(Box::new(exp)),
                cvar: z,
                provar: a.clone(),
                body: Box::new(ProtermExpr::RLiftApp(
                    Box::new(t.clone()),
                    Box::new(ProtermExpr::provar(a)),
                )),
            }))
        }
        Direction::Rev => Ok(match t {
            ProtermExpr::RLiftTr { provar, body, cvar, .. } => match body.as_ref() {
                ProtermExpr::RLiftApp(inner, a) => match a.as_ref() {
                    ProtermExpr::ProVar(v) if v == provar => {
                        let (tv, pv) = free_variables(ExprRef::Proterm(inner));
                        if pv.contains(provar) || tv.contains(cvar) {
                            None
                        } else {
                            Some(inner.as_ref().clone())
                        }
                    }
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }),
    }
}

/// Eta-expansion of a path hypothesis: `mu == ideind[j]{mu<merge>{refl}}`.
fn ide_eta(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    dir: Direction,
    binds: &Bindings,
) -> CheckResult<Option<ProtermExpr>> {
    let j = get_nat(binds, "pos").unwrap_or(1);
    if j == 0 || j > ctx.pc.provars.len() {
        return Ok(None);
    }
    let lctx = &ctx.pc.contexts[j - 1];
    let rctx = &ctx.pc.contexts[j];
    let ([(x, xt)], [(x2, _)]) = (lctx.0.as_slice(), rctx.0.as_slice()) else {
        return Ok(None);
    };
    let expand = |inner: &ProtermExpr| -> ProtermExpr {
        let mut map = VarMap::new();
        map.insert(x2.clone(), x.clone());
        let renamed = rename_proterm(inner, &map, &VarMap::new());
        let mut args = Vec::new();
        for (i, (p, _)) in ctx.pc.provars.iter().enumerate() {
            if i + 1 == j {
                args.push(ProArg {
                    proterm: ProtermExpr::Refl { ty: xt.clone(), var: x.clone() },
                    target: Some(p.clone()),
                });
            } else {
                args.push(ProArg {
                    proterm: ProtermExpr::provar(p.clone()),
                    target: Some(p.clone()),
                });
            }
        }
        ProtermExpr::IdeInd { pos: j, body: Box::new(ProtermExpr::prosubst(renamed, args)) }
    };
    match dir {
        Direction::Fwd => Ok(Some(expand(t))),
        Direction::Rev => {
            let Some(to) = get_pro(binds, "to") else {
                return Err(CheckError::AnnotationNeeded(
                    "ide-eta rev needs {to := <proterm>}".into(),
                ));
            };
            verify_eta_rev(ctx, t, &expand(&to), to)
        }
    }
}

fn comp_eta(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    dir: Direction,
    binds: &Bindings,
) -> CheckResult<Option<ProtermExpr>> {
    let j = get_nat(binds, "pos").unwrap_or(1);
    if j == 0 || j > ctx.pc.provars.len() {
        return Ok(None);
    }
    let (cname, kappa) = &ctx.pc.provars[j - 1];
    let kn = protype_nf_opt(
        ctx.thy,
        Some(&ctx.pc.contexts[j - 1]),
        Some(&ctx.pc.contexts[j]),
        kappa,
    );
    let ProtypeExpr::Comp { mid, .. } = kn else { return Ok(None) };
    let expand = |inner: &ProtermExpr| -> ProtermExpr {
        let a = fresh_name("ka", ctx.pc);
        let b = fresh_name("kb", ctx.pc);
        let m = (fresh_name(&mid.0, ctx.pc), mid.1.clone());
        let mut args = Vec::new();
        for (i, (p, _)) in ctx.pc.provars.iter().enumerate() {
            if i + 1 == j {
                args.push(ProArg {
                    proterm: ProtermExpr::CompIntro(
                        Box::new(ProtermExpr::provar(a.clone())),
                        Box::new(ProtermExpr::provar(b.clone())),
                    ),
                    target: Some(cname.clone()),
                });
            } else {
                args.push(ProArg {
                    proterm: ProtermExpr::provar(p.clone()),
                    target: Some(p.clone()),
                });
            }
        }
        ProtermExpr::CompInd {
            pos: j,
            var_a: a,
            mid: m,
            var_b: b,
            body: Box::new(ProtermExpr::prosubst(inner.clone(), args)),
        }
    };
    match dir {
        Direction::Fwd => Ok(Some(expand(t))),
        Direction::Rev => {
            let Some(to) = get_pro(binds, "to") else {
                return Err(CheckError::AnnotationNeeded(
                    "comp-eta rev needs {to := <proterm>}".into(),
                ));
            };
            verify_eta_rev(ctx, t, &expand(&to), to)
        }
    }
}

fn tabpath_eta(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    dir: Direction,
    binds: &Bindings,
) -> CheckResult<Option<ProtermExpr>> {
    // lpath/rpath: the leg image of a comprehension path
    let Ok((ty, _)) = infer_proterm(ctx.thy, ctx.pc, t) else { return Ok(None) };
    let tn = protype_nf_opt(ctx.thy, Some(ctx.pc.first()), Some(ctx.pc.last()), &ty);
    let ProtypeExpr::Path { left: u, ty: cty, right: v } = tn else { return Ok(None) };
    let TypeExpr::Compr(c) = cty.clone() else { return Ok(None) };
    let leg = |left_leg: bool| -> ProtermExpr {
        let p = fresh_name("p", ctx.pc);
        let q = fresh_name("q", ctx.pc);
        let h = fresh_name("h", ctx.pc);
        let y = fresh_name("y", ctx.pc);
        let (lty, mk): (TypeExpr, fn(TermExpr) -> TermExpr) = if left_leg {
            (c.lty.clone(), |t| TermExpr::TabL(Box::new(t)))
        } else {
            (c.rty.clone(), |t| TermExpr::TabR(Box::new(t)))
        };
        let body = ProtermExpr::term_subst(
            ProtermExpr::Refl { ty: lty, var: y.clone() },
            vec![vec![(mk(TermExpr::var(p.clone())), y)]],
        );
        let gi = ProtermExpr::IdeInd { pos: 1, body: Box::new(body) };
        ProtermExpr::prosubst(
            ProtermExpr::term_subst(
                gi,
                vec![
                    vec![(u.as_ref().clone(), p)],
                    vec![(v.as_ref().clone(), q)],
                ],
            ),
            vec![ProArg { proterm: t.clone(), target: Some(h) }],
        )
    };
    let expand = ProtermExpr::TabPath {
        left: Box::new(leg(true)),
        right: Box::new(leg(false)),
    };
    match dir {
        Direction::Fwd => Ok(Some(expand)),
        Direction::Rev => {
            let Some(to) = get_pro(binds, "to") else {
                return Err(CheckError::AnnotationNeeded(
                    "tabpath-eta rev needs {to := <proterm>}".into(),
                ));
            };
            let _ = to;
            Ok(None)
        }
    }
}

fn prosub_tr(
    ctx: &RuleCtx<'_>,
    t: &ProtermExpr,
    dir: Direction,
    rext: bool,
) -> CheckResult<Option<ProtermExpr>> {
    let _ = ctx;
    match dir {
        Direction::Fwd => {
            let ProtermExpr::ProSubst { target, args } = t else { return Ok(None) };
            match (rext, target.as_ref()) {
                (true, ProtermExpr::RExtTr { ann, cvar, provar, body }) => {
                    let mut inner_args = vec![ProArg {
                        proterm: ProtermExpr::provar(provar.clone()),
                        target: Some(provar.clone()),
                    }];
                    inner_args.extend(args.iter().cloned());
                    Ok(Some(ProtermExpr::RExtTr {
                        ann: ann.clone(),
                        cvar: cvar.clone(),
                        provar: provar.clone(),
                        body: Box::new(ProtermExpr::prosubst(
                            body.as_ref().clone(),
                            inner_args,
                        )),
                    }))
                }
                (false, ProtermExpr::RLiftTr { ann, cvar, provar, body }) => {
                    let mut inner_args: Vec<ProArg> = args.to_vec();
                    inner_args.push(ProArg {
                        proterm: ProtermExpr::provar(provar.clone()),
                        target: Some(provar.clone()),
                    });
                    Ok(Some(ProtermExpr::RLiftTr {
                        ann: ann.clone(),
                        cvar: cvar.clone(),
                        provar: provar.clone(),
                        body: Box::new(ProtermExpr::prosubst(
                            body.as_ref().clone(),
                            inner_args,
                        )),
                    }))
                }
                _ => Ok(None),
            }
        }
        Direction::Rev => {
            // pull a prosubstitution out of a transpose body
            let (ann, cvar, provar, body, is_rext) = match t {
                ProtermExpr::RExtTr { ann, cvar, provar, body } if rext => {
                    (ann, cvar, provar, body, true)
                }
                ProtermExpr::RLiftTr { ann, cvar, provar, body } if !rext => {
                    (ann, cvar, provar, body, false)
                }
                _ => return Ok(None),
            };
            let ProtermExpr::ProSubst { target, args } = body.as_ref() else {
                return Ok(None);
            };
            let (own, rest): (Option<&ProArg>, &[ProArg]) = if is_rext {
                (args.first(), &args[1.min(args.len())..])
            } else {
                (args.last(), &args[..args.len().saturating_sub(1)])
            };
            match own {
                Some(a) if matches!(&a.proterm, ProtermExpr::ProVar(v) if v == provar) => {
                    for r in rest {
                        let (tv, pv) = free_variables(ExprRef::Proterm(&r.proterm));
                        if pv.contains(provar) || tv.contains(cvar) {
                            return Ok(None);
                        }
                    }
                    let tr = if is_rext {
                        ProtermExpr::RExtTr {
                            ann: ann.clone(),
                            cvar: cvar.clone(),
                            provar: provar.clone(),
                            body: target.clone(),
                        }
                    } else {
                        ProtermExpr::RLiftTr {
                            ann: ann.clone(),
                            cvar: cvar.clone(),
                            provar: provar.clone(),
                            body: target.clone(),
                        }
                    };
                    Ok(Some(ProtermExpr::prosubst(tr, rest.to_vec())))
                }
                _ => Ok(None),
            }
        }
    }
}

/// `conv`: rewrite to a proterm with the same normal form.
fn conv(ctx: &RuleCtx<'_>, t: &ProtermExpr, binds: &Bindings) -> CheckResult<Option<ProtermExpr>> {
    let Some(to) = get_pro(binds, "to") else {
        return Err(CheckError::AnnotationNeeded("conv needs {to := <proterm>}".into()));
    };
    let Some(exp) = ctx.expected else {
        return Err(CheckError::AnnotationNeeded(
            "conv needs the protype at this position".into(),
        ));
    };
    let a = super::normalize_proterm(ctx.thy, ctx.pc, t, exp)?;
    let b = super::normalize_proterm(ctx.thy, ctx.pc, &to, exp)?;
    if alpha_pt(&a, &b) {
        Ok(Some(to))
    } else {
        Ok(None)
    }
}

/// Eta reverses verify that the expansion of the replacement normalizes to
/// the current proterm.
fn verify_eta_rev(
    ctx: &RuleCtx<'_>,
    cur: &ProtermExpr,
    expanded: &ProtermExpr,
    to: ProtermExpr,
) -> CheckResult<Option<ProtermExpr>> {
    let Some(exp) = ctx.expected else {
        return Err(CheckError::AnnotationNeeded(
            "eta reverses need the protype at this position".into(),
        ));
    };
    let a = super::normalize_proterm(ctx.thy, ctx.pc, cur, exp)?;
    let b = super::normalize_proterm(ctx.thy, ctx.pc, expanded, exp)?;
    if alpha_pt(&a, &b) {
        Ok(Some(to))
    } else {
        Ok(None)
    }
}
