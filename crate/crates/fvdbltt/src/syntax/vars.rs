//! Free-variable computation. Substitution nodes act as binders for the
//! substituted-away variables.

use super::alpha::ExprRef;
use super::*;

#[derive(Default)]
struct Scope {
    bound_terms: Vec<String>,
    bound_provars: Vec<String>,
    free_terms: BTreeSet<String>,
    free_provars: BTreeSet<String>,
}

impl Scope {
    fn term(&mut self, v: &str) {
        if !self.bound_terms.iter().any(|b| b == v) {
            self.free_terms.insert(v.to_string());
        }
    }

    fn provar(&mut self, v: &str) {
        if !self.bound_provars.iter().any(|b| b == v) {
            self.free_provars.insert(v.to_string());
        }
    }

    fn markers(&self) -> (usize, usize) {
        (self.bound_terms.len(), self.bound_provars.len())
    }

    fn reset(&mut self, m: (usize, usize)) {
        self.bound_terms.truncate(m.0);
        self.bound_provars.truncate(m.1);
    }
}

/// Returns the exact free term-variable and provariable sets of an expression.
pub fn free_variables(e: ExprRef<'_>) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut sc = Scope::default();
    match e {
        ExprRef::Type(t) => ty(&mut sc, t),
        ExprRef::Term(t) => term(&mut sc, t),
        ExprRef::Protype(p) => protype(&mut sc, p),
        ExprRef::Proterm(p) => proterm(&mut sc, p),
        ExprRef::Iso(u) => iso(&mut sc, u),
    }
    (sc.free_terms, sc.free_provars)
}

fn ty(sc: &mut Scope, t: &TypeExpr) {
    match t {
        TypeExpr::Base(_) | TypeExpr::Unit => {}
        TypeExpr::Prod(a, b) => {
            ty(sc, a);
            ty(sc, b);
        }
        TypeExpr::Compr(c) => compr(sc, c),
    }
}

fn compr(sc: &mut Scope, c: &ComprData) {
    ty(sc, &c.lty);
    ty(sc, &c.rty);
    let m = sc.markers();
    sc.bound_terms.push(c.lvar.clone());
    sc.bound_terms.push(c.rvar.clone());
    protype(sc, &c.protype);
    sc.reset(m);
}

fn group(sc: &mut Scope, g: &SubstGroup) {
    for (t, _) in g {
        term(sc, t);
    }
}

fn bind_group(sc: &mut Scope, g: &SubstGroup) {
    for (_, x) in g {
        sc.bound_terms.push(x.clone());
    }
}

fn term(sc: &mut Scope, t: &TermExpr) {
    match t {
        TermExpr::Var(v) => sc.term(v),
        TermExpr::App { args, .. } => args.iter().for_each(|a| term(sc, a)),
        TermExpr::Pair(a, b) => {
            term(sc, a);
            term(sc, b);
        }
        TermExpr::Proj0(a) | TermExpr::Proj1(a) | TermExpr::TabL(a) | TermExpr::TabR(a) => {
            term(sc, a)
        }
        TermExpr::UnitTm => {}
        TermExpr::Subst { inner, subst } => {
            group(sc, subst);
            let m = sc.markers();
            bind_group(sc, subst);
            term(sc, inner);
            sc.reset(m);
        }
        TermExpr::TabFactor { compr: c, left, right, cell } => {
            compr(sc, c);
            term(sc, left);
            term(sc, right);
            proterm(sc, cell);
        }
    }
}

fn protype(sc: &mut Scope, p: &ProtypeExpr) {
    match p {
        ProtypeExpr::Sym { left, right, .. } => {
            left.iter().for_each(|t| term(sc, t));
            right.iter().for_each(|t| term(sc, t));
        }
        ProtypeExpr::Top => {}
        ProtypeExpr::And(a, b) => {
            protype(sc, a);
            protype(sc, b);
        }
        ProtypeExpr::Rest { inner, left, right } => {
            group(sc, left);
            group(sc, right);
            let m = sc.markers();
            bind_group(sc, left);
            bind_group(sc, right);
            protype(sc, inner);
            sc.reset(m);
        }
        ProtypeExpr::Path { left, ty: t, right } => {
            ty(sc, t);
            term(sc, left);
            term(sc, right);
        }
        ProtypeExpr::Comp { left, mid, right } => {
            ty(sc, &mid.1);
            let m = sc.markers();
            sc.bound_terms.push(mid.0.clone());
            protype(sc, left);
            protype(sc, right);
            sc.reset(m);
        }
        ProtypeExpr::RExt { alpha, bound, beta } | ProtypeExpr::RLift { beta: alpha, bound, alpha: beta } => {
            ty(sc, &bound.1);
            let m = sc.markers();
            sc.bound_terms.push(bound.0.clone());
            protype(sc, alpha);
            protype(sc, beta);
            sc.reset(m);
        }
        ProtypeExpr::Invol(a) => protype(sc, a),
    }
}

fn proterm(sc: &mut Scope, p: &ProtermExpr) {
    match p {
        ProtermExpr::ProVar(v) => sc.provar(v),
        ProtermExpr::AxiomRef(_) | ProtermExpr::Empty => {}
        ProtermExpr::Pair(a, b)
        | ProtermExpr::CompIntro(a, b)
        | ProtermExpr::RExtApp(a, b)
        | ProtermExpr::RLiftApp(a, b)
        | ProtermExpr::TabPath { left: a, right: b } => {
            proterm(sc, a);
            proterm(sc, b);
        }
        ProtermExpr::Proj0(a) | ProtermExpr::Proj1(a) | ProtermExpr::Invol(a) => proterm(sc, a),
        ProtermExpr::ProSubst { target, args } => {
            proterm(sc, target);
            args.iter().for_each(|a| proterm(sc, &a.proterm));
        }
        ProtermExpr::TermSubst { inner, groups } => {
            groups.iter().for_each(|g| group(sc, g));
            let m = sc.markers();
            groups.iter().for_each(|g| bind_group(sc, g));
            proterm(sc, inner);
            sc.reset(m);
        }
        ProtermExpr::IsoApp { iso: u, arg } => {
            iso(sc, u);
            proterm(sc, arg);
        }
        ProtermExpr::Refl { ty: t, var } => {
            ty(sc, t);
            sc.term(var);
        }
        ProtermExpr::IdeInd { body, .. } => proterm(sc, body),
        ProtermExpr::CompInd { var_a, mid, var_b, body, .. } => {
            ty(sc, &mid.1);
            let m = sc.markers();
            sc.bound_terms.push(mid.0.clone());
            sc.bound_provars.push(var_a.clone());
            sc.bound_provars.push(var_b.clone());
            proterm(sc, body);
            sc.reset(m);
        }
        ProtermExpr::RExtTr { ann, cvar, provar, body }
        | ProtermExpr::RLiftTr { ann, cvar, provar, body } => {
            if let Some(a) = ann {
                protype(sc, a);
            }
            let m = sc.markers();
            sc.bound_terms.push(cvar.clone());
            sc.bound_provars.push(provar.clone());
            proterm(sc, body);
            sc.reset(m);
        }
        ProtermExpr::Tab { var } => sc.term(var),
    }
}

fn iso(sc: &mut Scope, u: &IsoExpr) {
    match u {
        IsoExpr::Id(a) | IsoExpr::RestE { alpha: a } => protype(sc, a),
        IsoExpr::Inv(a) | IsoExpr::InvolCong(a) => iso(sc, a),
        IsoExpr::Compose { after, before } => {
            iso(sc, after);
            iso(sc, before);
        }
        IsoExpr::RestI { alpha, left, right, left2, right2 } => {
            group(sc, left2);
            group(sc, right2);
            let m = sc.markers();
            bind_group(sc, left2);
            bind_group(sc, right2);
            group(sc, left);
            group(sc, right);
            bind_group(sc, left);
            bind_group(sc, right);
            protype(sc, alpha);
            sc.reset(m);
        }
        IsoExpr::RestAnd { alpha, beta, left, right } => {
            group(sc, left);
            group(sc, right);
            let m = sc.markers();
            bind_group(sc, left);
            bind_group(sc, right);
            protype(sc, alpha);
            protype(sc, beta);
            sc.reset(m);
        }
        IsoExpr::RestTop { left, right } => {
            group(sc, left);
            group(sc, right);
        }
        IsoExpr::Repl { alpha, left0, left1, right0, right1 } => {
            group(sc, left0);
            group(sc, left1);
            group(sc, right0);
            group(sc, right1);
            let m = sc.markers();
            bind_group(sc, left0);
            bind_group(sc, right0);
            protype(sc, alpha);
            sc.reset(m);
        }
        IsoExpr::PairIso { var_fwd, fwd, var_bwd, bwd } => {
            let m = sc.markers();
            sc.bound_provars.push(var_fwd.clone());
            proterm(sc, fwd);
            sc.reset(m);
            sc.bound_provars.push(var_bwd.clone());
            proterm(sc, bwd);
            sc.reset(m);
        }
        IsoExpr::Named(_) | IsoExpr::ExcIdeUnit | IsoExpr::ExcCompTop | IsoExpr::ExcExtTop => {}
        IsoExpr::Restrict { inner, left, right } => {
            group(sc, left);
            group(sc, right);
            let m = sc.markers();
            bind_group(sc, left);
            bind_group(sc, right);
            iso(sc, inner);
            sc.reset(m);
        }
        IsoExpr::AndCong(a, b) => {
            iso(sc, a);
            iso(sc, b);
        }
        IsoExpr::CompCong { left, mid, right }
        | IsoExpr::RExtCong { alpha: left, bound: mid, beta: right }
        | IsoExpr::RLiftCong { beta: left, bound: mid, alpha: right } => {
            ty(sc, &mid.1);
            let m = sc.markers();
            sc.bound_terms.push(mid.0.clone());
            iso(sc, left);
            iso(sc, right);
            sc.reset(m);
        }
        IsoExpr::ExcIdeProd { lty, rty } => {
            ty(sc, lty);
            ty(sc, rty);
        }
        IsoExpr::ExcCompProd(d) | IsoExpr::ExcExtProd(d) => {
            let m = sc.markers();
            sc.bound_terms.push(d.vars1.0.clone());
            sc.bound_terms.push(d.vars1.1.clone());
            sc.bound_terms.push(d.vars1.2.clone());
            protype(sc, &d.a1);
            protype(sc, &d.a2);
            sc.reset(m);
            sc.bound_terms.push(d.vars2.0.clone());
            sc.bound_terms.push(d.vars2.1.clone());
            sc.bound_terms.push(d.vars2.2.clone());
            protype(sc, &d.b1);
            protype(sc, &d.b2);
            sc.reset(m);
        }
        IsoExpr::RestComp { protype: p, left, right }
        | IsoExpr::RestRExt { protype: p, left, right }
        | IsoExpr::RestRLift { protype: p, left, right } => {
            group(sc, left);
            group(sc, right);
            let m = sc.markers();
            bind_group(sc, left);
            bind_group(sc, right);
            protype(sc, p);
            sc.reset(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provar_only() {
        let m = ProtermExpr::prosubst(
            ProtermExpr::provar("b"),
            vec![ProArg { proterm: ProtermExpr::provar("a"), target: Some("b".into()) }],
        );
        let (tv, pv) = free_variables(ExprRef::Proterm(&m));
        assert!(tv.is_empty());
        assert_eq!(pv.into_iter().collect::<Vec<_>>(), vec!["a", "b"]);
    }

    #[test]
    fn substitution_rebinds() {
        // al[S ; T] with S using x' : term vars are those of S and T only.
        let al = ProtypeExpr::Sym {
            sym: "al".into(),
            left: vec![TermExpr::var("x")],
            right: vec![TermExpr::var("y")],
        };
        let rested = ProtypeExpr::rest(
            al,
            vec![(TermExpr::var("xp"), "x".into())],
            vec![(TermExpr::var("yp"), "y".into())],
        );
        let (tv, pv) = free_variables(ExprRef::Protype(&rested));
        assert_eq!(tv.into_iter().collect::<Vec<_>>(), vec!["xp", "yp"]);
        assert!(pv.is_empty());
    }

    #[test]
    fn refl_frees_its_variable() {
        let r = ProtermExpr::Refl { ty: TypeExpr::Base("I".into()), var: "x".into() };
        let (tv, pv) = free_variables(ExprRef::Proterm(&r));
        assert_eq!(tv.into_iter().collect::<Vec<_>>(), vec!["x"]);
        assert!(pv.is_empty());
    }
}
