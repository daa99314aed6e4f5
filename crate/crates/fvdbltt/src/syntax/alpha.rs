//! Alpha-equality: structural comparison up to consistent renaming of bound
//! term variables and provariables. Free variables must agree literally;
//! explicit-substitution nodes compare structurally (they are never
//! evaluated here).

use super::*;

/// Renaming environment carried through the comparison. Entries pair a
/// left-side binder with the corresponding right-side binder; lookups are
/// innermost-first.
#[derive(Debug, Default, Clone)]
pub struct AlphaEnv {
    terms: Vec<(String, String)>,
    provars: Vec<(String, String)>,
}

impl AlphaEnv {
    pub fn new() -> AlphaEnv {
        AlphaEnv::default()
    }

    pub fn push_term(&mut self, a: &str, b: &str) {
        self.terms.push((a.to_string(), b.to_string()));
    }

    pub fn push_provar(&mut self, a: &str, b: &str) {
        self.provars.push((a.to_string(), b.to_string()));
    }

    fn term_marker(&self) -> usize {
        self.terms.len()
    }

    fn provar_marker(&self) -> usize {
        self.provars.len()
    }

    fn reset(&mut self, tm: usize, pm: usize) {
        self.terms.truncate(tm);
        self.provars.truncate(pm);
    }

    fn term_eq(&self, a: &str, b: &str) -> bool {
        lookup(&self.terms, a, b)
    }

    fn provar_eq(&self, a: &str, b: &str) -> bool {
        lookup(&self.provars, a, b)
    }
}

fn lookup(env: &[(String, String)], a: &str, b: &str) -> bool {
    for (x, y) in env.iter().rev() {
        let hit_a = x == a;
        let hit_b = y == b;
        if hit_a || hit_b {
            return hit_a && hit_b;
        }
    }
    a == b
}

/// The two expressions handed to [`alpha_equal`] had different sorts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortMismatch {
    pub left: &'static str,
    pub right: &'static str,
}

impl fmt::Display for SortMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot compare a {} with a {}", self.left, self.right)
    }
}

/// A reference to an expression of any sort.
#[derive(Debug, Clone, Copy)]
pub enum ExprRef<'a> {
    Type(&'a TypeExpr),
    Term(&'a TermExpr),
    Protype(&'a ProtypeExpr),
    Proterm(&'a ProtermExpr),
    Iso(&'a IsoExpr),
}

impl ExprRef<'_> {
    fn sort(&self) -> &'static str {
        match self {
            ExprRef::Type(_) => "type",
            ExprRef::Term(_) => "term",
            ExprRef::Protype(_) => "protype",
            ExprRef::Proterm(_) => "proterm",
            ExprRef::Iso(_) => "isomorphism",
        }
    }
}

/// Compares two expressions of the same sort up to renaming of bound
/// variables; errors if the sorts differ.
pub fn alpha_equal(e1: ExprRef<'_>, e2: ExprRef<'_>) -> Result<bool, SortMismatch> {
    let mut env = AlphaEnv::new();
    alpha_equal_under(&mut env, e1, e2)
}

/// Same as [`alpha_equal`], but starting from a caller-provided renaming of
/// free variables (used to compare expressions across renamed contexts).
pub fn alpha_equal_under(
    env: &mut AlphaEnv,
    e1: ExprRef<'_>,
    e2: ExprRef<'_>,
) -> Result<bool, SortMismatch> {
    match (e1, e2) {
        (ExprRef::Type(a), ExprRef::Type(b)) => Ok(ty_eq(env, a, b)),
        (ExprRef::Term(a), ExprRef::Term(b)) => Ok(term_eq(env, a, b)),
        (ExprRef::Protype(a), ExprRef::Protype(b)) => Ok(protype_eq(env, a, b)),
        (ExprRef::Proterm(a), ExprRef::Proterm(b)) => Ok(proterm_eq(env, a, b)),
        (ExprRef::Iso(a), ExprRef::Iso(b)) => Ok(iso_eq(env, a, b)),
        (a, b) => Err(SortMismatch { left: a.sort(), right: b.sort() }),
    }
}

pub(crate) fn ty_eq(env: &mut AlphaEnv, a: &TypeExpr, b: &TypeExpr) -> bool {
    match (a, b) {
        (TypeExpr::Base(x), TypeExpr::Base(y)) => x == y,
        (TypeExpr::Unit, TypeExpr::Unit) => true,
        (TypeExpr::Prod(a0, a1), TypeExpr::Prod(b0, b1)) => {
            ty_eq(env, a0, b0) && ty_eq(env, a1, b1)
        }
        (TypeExpr::Compr(c), TypeExpr::Compr(d)) => compr_eq(env, c, d),
        _ => false,
    }
}

fn compr_eq(env: &mut AlphaEnv, c: &ComprData, d: &ComprData) -> bool {
    if !ty_eq(env, &c.lty, &d.lty) || !ty_eq(env, &c.rty, &d.rty) {
        return false;
    }
    let tm = env.term_marker();
    env.push_term(&c.lvar, &d.lvar);
    env.push_term(&c.rvar, &d.rvar);
    let ok = protype_eq(env, &c.protype, &d.protype);
    env.reset(tm, env.provar_marker());
    ok
}

pub(crate) fn term_eq(env: &mut AlphaEnv, a: &TermExpr, b: &TermExpr) -> bool {
    match (a, b) {
        (TermExpr::Var(x), TermExpr::Var(y)) => env.term_eq(x, y),
        (TermExpr::App { sym: f, args: xs }, TermExpr::App { sym: g, args: ys }) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(env, x, y))
        }
        (TermExpr::Pair(a0, a1), TermExpr::Pair(b0, b1)) => {
            term_eq(env, a0, b0) && term_eq(env, a1, b1)
        }
        (TermExpr::Proj0(x), TermExpr::Proj0(y)) | (TermExpr::Proj1(x), TermExpr::Proj1(y)) => {
            term_eq(env, x, y)
        }
        (TermExpr::UnitTm, TermExpr::UnitTm) => true,
        (
            TermExpr::Subst { inner: i1, subst: s1 },
            TermExpr::Subst { inner: i2, subst: s2 },
        ) => {
            if s1.len() != s2.len() {
                return false;
            }
            if !s1.iter().zip(s2).all(|((t1, _), (t2, _))| term_eq(env, t1, t2)) {
                return false;
            }
            let tm = env.term_marker();
            for ((_, x1), (_, x2)) in s1.iter().zip(s2) {
                env.push_term(x1, x2);
            }
            let ok = term_eq(env, i1, i2);
            env.reset(tm, env.provar_marker());
            ok
        }
        (TermExpr::TabL(x), TermExpr::TabL(y)) | (TermExpr::TabR(x), TermExpr::TabR(y)) => {
            term_eq(env, x, y)
        }
        (
            TermExpr::TabFactor { compr: c1, left: l1, right: r1, cell: m1 },
            TermExpr::TabFactor { compr: c2, left: l2, right: r2, cell: m2 },
        ) => {
            compr_eq(env, c1, c2)
                && term_eq(env, l1, l2)
                && term_eq(env, r1, r2)
                && proterm_eq(env, m1, m2)
        }
        _ => false,
    }
}

fn group_eq(env: &mut AlphaEnv, a: &SubstGroup, b: &SubstGroup) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|((t1, _), (t2, _))| term_eq(env, t1, t2))
}

/// Pushes the binder pairs of two substitution groups.
fn push_group(env: &mut AlphaEnv, a: &SubstGroup, b: &SubstGroup) {
    for ((_, x1), (_, x2)) in a.iter().zip(b) {
        env.push_term(x1, x2);
    }
}

pub(crate) fn protype_eq(env: &mut AlphaEnv, a: &ProtypeExpr, b: &ProtypeExpr) -> bool {
    match (a, b) {
        (
            ProtypeExpr::Sym { sym: f, left: l1, right: r1 },
            ProtypeExpr::Sym { sym: g, left: l2, right: r2 },
        ) => {
            f == g
                && l1.len() == l2.len()
                && r1.len() == r2.len()
                && l1.iter().zip(l2).all(|(x, y)| term_eq(env, x, y))
                && r1.iter().zip(r2).all(|(x, y)| term_eq(env, x, y))
        }
        (ProtypeExpr::Top, ProtypeExpr::Top) => true,
        (ProtypeExpr::And(a0, a1), ProtypeExpr::And(b0, b1)) => {
            protype_eq(env, a0, b0) && protype_eq(env, a1, b1)
        }
        (
            ProtypeExpr::Rest { inner: i1, left: l1, right: r1 },
            ProtypeExpr::Rest { inner: i2, left: l2, right: r2 },
        ) => {
            if !group_eq(env, l1, l2) || !group_eq(env, r1, r2) {
                return false;
            }
            let tm = env.term_marker();
            push_group(env, l1, l2);
            push_group(env, r1, r2);
            let ok = protype_eq(env, i1, i2);
            env.reset(tm, env.provar_marker());
            ok
        }
        (
            ProtypeExpr::Path { left: l1, ty: t1, right: r1 },
            ProtypeExpr::Path { left: l2, ty: t2, right: r2 },
        ) => ty_eq(env, t1, t2) && term_eq(env, l1, l2) && term_eq(env, r1, r2),
        (
            ProtypeExpr::Comp { left: l1, mid: m1, right: r1 },
            ProtypeExpr::Comp { left: l2, mid: m2, right: r2 },
        ) => {
            if !ty_eq(env, &m1.1, &m2.1) {
                return false;
            }
            let tm = env.term_marker();
            env.push_term(&m1.0, &m2.0);
            let ok = protype_eq(env, l1, l2) && protype_eq(env, r1, r2);
            env.reset(tm, env.provar_marker());
            ok
        }
        (
            ProtypeExpr::RExt { alpha: a1, bound: w1, beta: b1 },
            ProtypeExpr::RExt { alpha: a2, bound: w2, beta: b2 },
        )
        | (
            ProtypeExpr::RLift { beta: a1, bound: w1, alpha: b1 },
            ProtypeExpr::RLift { beta: a2, bound: w2, alpha: b2 },
        ) => {
            if !ty_eq(env, &w1.1, &w2.1) {
                return false;
            }
            let tm = env.term_marker();
            env.push_term(&w1.0, &w2.0);
            let ok = protype_eq(env, a1, a2) && protype_eq(env, b1, b2);
            env.reset(tm, env.provar_marker());
            ok
        }
        (ProtypeExpr::Invol(x), ProtypeExpr::Invol(y)) => protype_eq(env, x, y),
        _ => false,
    }
}

pub(crate) fn proterm_eq(env: &mut AlphaEnv, a: &ProtermExpr, b: &ProtermExpr) -> bool {
    match (a, b) {
        (ProtermExpr::ProVar(x), ProtermExpr::ProVar(y)) => env.provar_eq(x, y),
        (ProtermExpr::AxiomRef(x), ProtermExpr::AxiomRef(y)) => x == y,
        (ProtermExpr::Pair(a0, a1), ProtermExpr::Pair(b0, b1)) => {
            proterm_eq(env, a0, b0) && proterm_eq(env, a1, b1)
        }
        (ProtermExpr::Proj0(x), ProtermExpr::Proj0(y))
        | (ProtermExpr::Proj1(x), ProtermExpr::Proj1(y)) => proterm_eq(env, x, y),
        (ProtermExpr::Empty, ProtermExpr::Empty) => true,
        (
            ProtermExpr::ProSubst { target: t1, args: a1 },
            ProtermExpr::ProSubst { target: t2, args: a2 },
        ) => {
            proterm_eq(env, t1, t2)
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(x, y)| proterm_eq(env, &x.proterm, &y.proterm))
        }
        (
            ProtermExpr::TermSubst { inner: i1, groups: g1 },
            ProtermExpr::TermSubst { inner: i2, groups: g2 },
        ) => {
            if g1.len() != g2.len() {
                return false;
            }
            if !g1.iter().zip(g2.iter()).all(|(x, y)| group_eq(env, x, y)) {
                return false;
            }
            let tm = env.term_marker();
            for (x, y) in g1.iter().zip(g2.iter()) {
                push_group(env, x, y);
            }
            let ok = proterm_eq(env, i1, i2);
            env.reset(tm, env.provar_marker());
            ok
        }
        (
            ProtermExpr::IsoApp { iso: u1, arg: m1 },
            ProtermExpr::IsoApp { iso: u2, arg: m2 },
        ) => iso_eq(env, u1, u2) && proterm_eq(env, m1, m2),
        (
            ProtermExpr::Refl { ty: t1, var: v1 },
            ProtermExpr::Refl { ty: t2, var: v2 },
        ) => ty_eq(env, t1, t2) && env.term_eq(v1, v2),
        (
            ProtermExpr::IdeInd { pos: p1, body: b1 },
            ProtermExpr::IdeInd { pos: p2, body: b2 },
        ) => p1 == p2 && proterm_eq(env, b1, b2),
        (ProtermExpr::CompIntro(a0, a1), ProtermExpr::CompIntro(b0, b1)) => {
            proterm_eq(env, a0, b0) && proterm_eq(env, a1, b1)
        }
        (
            ProtermExpr::CompInd { pos: p1, var_a: a1, mid: m1, var_b: b1, body: c1 },
            ProtermExpr::CompInd { pos: p2, var_a: a2, mid: m2, var_b: b2, body: c2 },
        ) => {
            if p1 != p2 || !ty_eq(env, &m1.1, &m2.1) {
                return false;
            }
            let tm = env.term_marker();
            let pm = env.provar_marker();
            env.push_term(&m1.0, &m2.0);
            env.push_provar(a1, a2);
            env.push_provar(b1, b2);
            let ok = proterm_eq(env, c1, c2);
            env.reset(tm, pm);
            ok
        }
        (ProtermExpr::RExtApp(a0, a1), ProtermExpr::RExtApp(b0, b1))
        | (ProtermExpr::RLiftApp(a0, a1), ProtermExpr::RLiftApp(b0, b1)) => {
            proterm_eq(env, a0, b0) && proterm_eq(env, a1, b1)
        }
        (
            ProtermExpr::RExtTr { ann: n1, cvar: c1, provar: p1, body: b1 },
            ProtermExpr::RExtTr { ann: n2, cvar: c2, provar: p2, body: b2 },
        )
        | (
            ProtermExpr::RLiftTr { ann: n1, cvar: c1, provar: p1, body: b1 },
            ProtermExpr::RLiftTr { ann: n2, cvar: c2, provar: p2, body: b2 },
        ) => {
            let ann_ok = match (n1, n2) {
                (None, None) => true,
                (Some(x), Some(y)) => protype_eq(env, x, y),
                _ => false,
            };
            if !ann_ok {
                return false;
            }
            let tm = env.term_marker();
            let pm = env.provar_marker();
            env.push_term(c1, c2);
            env.push_provar(p1, p2);
            let ok = proterm_eq(env, b1, b2);
            env.reset(tm, pm);
            ok
        }
        (ProtermExpr::Tab { var: v1 }, ProtermExpr::Tab { var: v2 }) => env.term_eq(v1, v2),
        (
            ProtermExpr::TabPath { left: l1, right: r1 },
            ProtermExpr::TabPath { left: l2, right: r2 },
        ) => proterm_eq(env, l1, l2) && proterm_eq(env, r1, r2),
        (ProtermExpr::Invol(x), ProtermExpr::Invol(y)) => proterm_eq(env, x, y),
        _ => false,
    }
}

pub(crate) fn iso_eq(env: &mut AlphaEnv, a: &IsoExpr, b: &IsoExpr) -> bool {
    match (a, b) {
        (IsoExpr::Id(x), IsoExpr::Id(y)) => protype_eq(env, x, y),
        (IsoExpr::Inv(x), IsoExpr::Inv(y)) => iso_eq(env, x, y),
        (
            IsoExpr::Compose { after: a1, before: b1 },
            IsoExpr::Compose { after: a2, before: b2 },
        ) => iso_eq(env, a1, a2) && iso_eq(env, b1, b2),
        (IsoExpr::RestE { alpha: x }, IsoExpr::RestE { alpha: y }) => protype_eq(env, x, y),
        (
            IsoExpr::RestI { alpha: x, left: l1, right: r1, left2: l1b, right2: r1b },
            IsoExpr::RestI { alpha: y, left: l2, right: r2, left2: l2b, right2: r2b },
        ) => {
            if !group_eq(env, l1b, l2b) || !group_eq(env, r1b, r2b) {
                return false;
            }
            let tm = env.term_marker();
            push_group(env, l1b, l2b);
            push_group(env, r1b, r2b);
            let ok = rest_like_eq(env, x, &[(l1, l2), (r1, r2)], y);
            env.reset(tm, env.provar_marker());
            ok
        }
        (
            IsoExpr::RestAnd { alpha: x1, beta: y1, left: l1, right: r1 },
            IsoExpr::RestAnd { alpha: x2, beta: y2, left: l2, right: r2 },
        ) => {
            if !group_eq(env, l1, l2) || !group_eq(env, r1, r2) {
                return false;
            }
            let tm = env.term_marker();
            push_group(env, l1, l2);
            push_group(env, r1, r2);
            let ok = protype_eq(env, x1, x2) && protype_eq(env, y1, y2);
            env.reset(tm, env.provar_marker());
            ok
        }
        (
            IsoExpr::RestTop { left: l1, right: r1 },
            IsoExpr::RestTop { left: l2, right: r2 },
        ) => group_eq(env, l1, l2) && group_eq(env, r1, r2),
        (
            IsoExpr::Repl { alpha: x, left0: a0, left1: a1, right0: c0, right1: c1 },
            IsoExpr::Repl { alpha: y, left0: b0, left1: b1, right0: d0, right1: d1 },
        ) => {
            if !group_eq(env, a0, b0)
                || !group_eq(env, a1, b1)
                || !group_eq(env, c0, d0)
                || !group_eq(env, c1, d1)
            {
                return false;
            }
            let tm = env.term_marker();
            push_group(env, a0, b0);
            push_group(env, c0, d0);
            let ok = protype_eq(env, x, y);
            env.reset(tm, env.provar_marker());
            ok
        }
        (
            IsoExpr::PairIso { var_fwd: f1, fwd: m1, var_bwd: g1, bwd: n1 },
            IsoExpr::PairIso { var_fwd: f2, fwd: m2, var_bwd: g2, bwd: n2 },
        ) => {
            let pm = env.provar_marker();
            env.push_provar(f1, f2);
            let ok_f = proterm_eq(env, m1, m2);
            env.reset(env.term_marker(), pm);
            if !ok_f {
                return false;
            }
            env.push_provar(g1, g2);
            let ok_b = proterm_eq(env, n1, n2);
            env.reset(env.term_marker(), pm);
            ok_b
        }
        (IsoExpr::Named(x), IsoExpr::Named(y)) => x == y,
        (
            IsoExpr::Restrict { inner: i1, left: l1, right: r1 },
            IsoExpr::Restrict { inner: i2, left: l2, right: r2 },
        ) => {
            if !group_eq(env, l1, l2) || !group_eq(env, r1, r2) {
                return false;
            }
            let tm = env.term_marker();
            push_group(env, l1, l2);
            push_group(env, r1, r2);
            let ok = iso_eq(env, i1, i2);
            env.reset(tm, env.provar_marker());
            ok
        }
        (IsoExpr::AndCong(a0, a1), IsoExpr::AndCong(b0, b1)) => {
            iso_eq(env, a0, b0) && iso_eq(env, a1, b1)
        }
        (
            IsoExpr::CompCong { left: l1, mid: m1, right: r1 },
            IsoExpr::CompCong { left: l2, mid: m2, right: r2 },
        )
        | (
            IsoExpr::RExtCong { alpha: l1, bound: m1, beta: r1 },
            IsoExpr::RExtCong { alpha: l2, bound: m2, beta: r2 },
        )
        | (
            IsoExpr::RLiftCong { beta: l1, bound: m1, alpha: r1 },
            IsoExpr::RLiftCong { beta: l2, bound: m2, alpha: r2 },
        ) => {
            if !ty_eq(env, &m1.1, &m2.1) {
                return false;
            }
            let tm = env.term_marker();
            env.push_term(&m1.0, &m2.0);
            let ok = iso_eq(env, l1, l2) && iso_eq(env, r1, r2);
            env.reset(tm, env.provar_marker());
            ok
        }
        (IsoExpr::InvolCong(x), IsoExpr::InvolCong(y)) => iso_eq(env, x, y),
        (
            IsoExpr::ExcIdeProd { lty: a0, rty: a1 },
            IsoExpr::ExcIdeProd { lty: b0, rty: b1 },
        ) => ty_eq(env, a0, b0) && ty_eq(env, a1, b1),
        (IsoExpr::ExcIdeUnit, IsoExpr::ExcIdeUnit) => true,
        (IsoExpr::ExcCompTop, IsoExpr::ExcCompTop) => true,
        (IsoExpr::ExcExtTop, IsoExpr::ExcExtTop) => true,
        (IsoExpr::ExcCompProd(x), IsoExpr::ExcCompProd(y))
        | (IsoExpr::ExcExtProd(x), IsoExpr::ExcExtProd(y)) => exc_prod_eq(env, x, y),
        (
            IsoExpr::RestComp { protype: p1, left: l1, right: r1 },
            IsoExpr::RestComp { protype: p2, left: l2, right: r2 },
        )
        | (
            IsoExpr::RestRExt { protype: p1, left: l1, right: r1 },
            IsoExpr::RestRExt { protype: p2, left: l2, right: r2 },
        )
        | (
            IsoExpr::RestRLift { protype: p1, left: l1, right: r1 },
            IsoExpr::RestRLift { protype: p2, left: l2, right: r2 },
        ) => {
            if !group_eq(env, l1, l2) || !group_eq(env, r1, r2) {
                return false;
            }
            let tm = env.term_marker();
            push_group(env, l1, l2);
            push_group(env, r1, r2);
            let ok = protype_eq(env, p1, p2);
            env.reset(tm, env.provar_marker());
            ok
        }
        _ => false,
    }
}

fn rest_like_eq(
    env: &mut AlphaEnv,
    x: &ProtypeExpr,
    groups: &[(&SubstGroup, &SubstGroup)],
    y: &ProtypeExpr,
) -> bool {
    for (g1, g2) in groups {
        if !group_eq(env, g1, g2) {
            return false;
        }
    }
    let tm = env.term_marker();
    for (g1, g2) in groups {
        push_group(env, g1, g2);
    }
    let ok = protype_eq(env, x, y);
    env.reset(tm, env.provar_marker());
    ok
}

fn exc_prod_eq(env: &mut AlphaEnv, x: &ExcProdData, y: &ExcProdData) -> bool {
    ty_eq(env, &x.lty1, &y.lty1)
        && ty_eq(env, &x.lty2, &y.lty2)
        && ty_eq(env, &x.mty1, &y.mty1)
        && ty_eq(env, &x.mty2, &y.mty2)
        && ty_eq(env, &x.rty1, &y.rty1)
        && ty_eq(env, &x.rty2, &y.rty2)
        && strand_eq(env, &x.a1, &x.a2, &x.vars1, &y.a1, &y.a2, &y.vars1)
        && strand_eq(env, &x.b1, &x.b2, &x.vars2, &y.b1, &y.b2, &y.vars2)
}

fn strand_eq(
    env: &mut AlphaEnv,
    a1: &ProtypeExpr,
    a2: &ProtypeExpr,
    v1: &(String, String, String),
    b1: &ProtypeExpr,
    b2: &ProtypeExpr,
    v2: &(String, String, String),
) -> bool {
    let tm = env.term_marker();
    env.push_term(&v1.0, &v2.0);
    env.push_term(&v1.1, &v2.1);
    env.push_term(&v1.2, &v2.2);
    let ok = protype_eq(env, a1, b1) && protype_eq(env, a2, b2);
    env.reset(tm, env.provar_marker());
    ok
}

/// Compares two equality judgments up to renaming of their procontexts.
pub fn alpha_equal_eq_judgment(a: &EqJudgment, b: &EqJudgment) -> bool {
    if a.pc.contexts.len() != b.pc.contexts.len() || a.pc.provars.len() != b.pc.provars.len() {
        return false;
    }
    let mut env = AlphaEnv::new();
    for (c1, c2) in a.pc.contexts.iter().zip(&b.pc.contexts) {
        if c1.0.len() != c2.0.len() {
            return false;
        }
        for ((v1, t1), (v2, t2)) in c1.0.iter().zip(&c2.0) {
            if !ty_eq(&mut env, t1, t2) {
                return false;
            }
            env.push_term(v1, v2);
        }
    }
    for ((p1, a1), (p2, a2)) in a.pc.provars.iter().zip(&b.pc.provars) {
        if !protype_eq(&mut env, a1, a2) {
            return false;
        }
        env.push_provar(p1, p2);
    }
    proterm_eq(&mut env, &a.lhs, &b.lhs) && proterm_eq(&mut env, &a.rhs, &b.rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renamed_pair_of_provars_is_alpha_equal_under_binders() {
        // pair(a. <a,a>, b. <b,b>) vs pair(a'. <a',a'>, b'. <b',b'>)
        let mk = |v: &str| {
            IsoExpr::PairIso {
                var_fwd: v.to_string(),
                fwd: Box::new(ProtermExpr::pair(
                    ProtermExpr::provar(v),
                    ProtermExpr::provar(v),
                )),
                var_bwd: format!("{v}2"),
                bwd: Box::new(ProtermExpr::provar(format!("{v}2"))),
            }
        };
        let a = mk("a");
        let b = mk("b");
        assert!(alpha_equal(ExprRef::Iso(&a), ExprRef::Iso(&b)).unwrap());
    }

    #[test]
    fn free_provariables_compare_literally() {
        let a = ProtermExpr::provar("a");
        let b = ProtermExpr::provar("b");
        assert!(!alpha_equal(ExprRef::Proterm(&a), ExprRef::Proterm(&b)).unwrap());
        assert!(alpha_equal(ExprRef::Proterm(&a), ExprRef::Proterm(&a.clone())).unwrap());
    }

    #[test]
    fn explicit_substitution_is_syntax() {
        // al[x/x ; y/y] differs from al as a tree.
        let al = ProtypeExpr::Sym {
            sym: "al".into(),
            left: vec![TermExpr::var("x")],
            right: vec![TermExpr::var("y")],
        };
        let rested = ProtypeExpr::rest(
            al.clone(),
            vec![(TermExpr::var("x"), "x".into())],
            vec![(TermExpr::var("y"), "y".into())],
        );
        assert!(!alpha_equal(ExprRef::Protype(&al), ExprRef::Protype(&rested)).unwrap());
    }

    #[test]
    fn beta_redex_differs_from_contractum() {
        let redex = ProtermExpr::proj0(ProtermExpr::pair(
            ProtermExpr::provar("a"),
            ProtermExpr::provar("b"),
        ));
        let contractum = ProtermExpr::provar("a");
        assert!(!alpha_equal(ExprRef::Proterm(&redex), ExprRef::Proterm(&contractum)).unwrap());
    }

    #[test]
    fn sort_mismatch_is_an_error() {
        let t = TermExpr::var("x");
        let p = ProtermExpr::provar("a");
        assert!(alpha_equal(ExprRef::Term(&t), ExprRef::Proterm(&p)).is_err());
    }

    #[test]
    fn subst_binders_rename() {
        // t[u/x] with inner x  vs  t[u/y] with inner y
        let a = TermExpr::subst(TermExpr::var("x"), vec![(TermExpr::var("u"), "x".into())]);
        let b = TermExpr::subst(TermExpr::var("y"), vec![(TermExpr::var("u"), "y".into())]);
        assert!(alpha_equal(ExprRef::Term(&a), ExprRef::Term(&b)).unwrap());
        // but the substituted terms themselves are free
        let c = TermExpr::subst(TermExpr::var("x"), vec![(TermExpr::var("w"), "x".into())]);
        assert!(!alpha_equal(ExprRef::Term(&a), ExprRef::Term(&c)).unwrap());
    }
}
