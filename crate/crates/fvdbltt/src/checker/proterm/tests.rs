use super::*;
use crate::checker::{check_iso, check_type};
use crate::syntax::{ProtypeDecl, TermDecl};

fn base(n: &str) -> TypeExpr {
    TypeExpr::Base(n.into())
}

/// Types I, J, K; term s : (x:I) -> J; protypes al : (I;I), be : (I;J),
/// ga : (J;K); all extensions enabled.
pub(crate) fn fixture() -> Theory {
    let mut sig = Signature::default();
    for t in ["I", "J", "K"] {
        sig.types.insert(t.into());
    }
    sig.terms.insert(
        "s".into(),
        TermDecl { inputs: vec![("x".into(), "I".into())], output: "J".into() },
    );
    sig.protypes.insert(
        "al".into(),
        ProtypeDecl {
            left: vec![("x".into(), "I".into())],
            right: vec![("y".into(), "I".into())],
        },
    );
    sig.protypes.insert(
        "be".into(),
        ProtypeDecl {
            left: vec![("x".into(), "I".into())],
            right: vec![("y".into(), "J".into())],
        },
    );
    sig.protypes.insert(
        "ga".into(),
        ProtypeDecl {
            left: vec![("x".into(), "J".into())],
            right: vec![("y".into(), "K".into())],
        },
    );
    for e in Extension::ALL {
        sig.extensions.insert(e);
    }
    Theory::new(sig)
}

pub(crate) fn al(x: &str, y: &str) -> ProtypeExpr {
    ProtypeExpr::Sym {
        sym: "al".into(),
        left: vec![TermExpr::var(x)],
        right: vec![TermExpr::var(y)],
    }
}

fn sym(s: &str, x: &str, y: &str) -> ProtypeExpr {
    ProtypeExpr::Sym {
        sym: s.into(),
        left: vec![TermExpr::var(x)],
        right: vec![TermExpr::var(y)],
    }
}

#[test]
fn type_checking_examples() {
    let thy = fixture();
    // I * (J * 1)
    let t = TypeExpr::prod(base("I"), TypeExpr::prod(base("J"), TypeExpr::Unit));
    assert!(check_type(&thy, &t).is_ok());
    assert!(check_type(&thy, &TypeExpr::Unit).is_ok());
    assert!(matches!(
        check_type(&thy, &base("Q")),
        Err(CheckError::UnknownType(_))
    ));
}

#[test]
fn term_inference_examples() {
    let thy = fixture();
    let ctx = Context::single("x", base("I"));
    let (ty, d) = infer_term(&thy, &ctx, &TermExpr::var("x")).unwrap();
    assert_eq!(ty, base("I"));
    assert_eq!(d.rule, "term-var");
    let (ty, _) =
        infer_term(&thy, &ctx, &TermExpr::pair(TermExpr::var("x"), TermExpr::var("x"))).unwrap();
    assert_eq!(ty, TypeExpr::prod(base("I"), base("I")));
    // s(x) : J
    let app = TermExpr::App { sym: "s".into(), args: vec![TermExpr::var("x")] };
    let (ty, _) = infer_term(&thy, &ctx, &app).unwrap();
    assert_eq!(ty, base("J"));
    assert!(matches!(
        infer_term(&thy, &ctx, &TermExpr::var("zz")),
        Err(CheckError::UnboundVariable(_))
    ));
}

#[test]
fn protype_formation_examples() {
    let thy = fixture();
    let xi = Context::single("x", base("I"));
    let yi = Context::single("y", base("I"));
    // x:I ; y:I |- x ide[I] y
    let path = ProtypeExpr::path(TermExpr::var("x"), base("I"), TermExpr::var("y"));
    assert!(check_protype(&thy, &xi, &yi, &path).is_ok());
    // disabled extension
    let mut no_ide = fixture();
    no_ide.sig.extensions.remove(&Extension::Ide);
    assert!(matches!(
        check_protype(&no_ide, &xi, &yi, &path),
        Err(CheckError::ExtensionDisabled(Extension::Ide))
    ));
    // x:I ; z:K |- be(x;y) (+)[y:J] ga(y;z)
    let zk = Context::single("z", base("K"));
    let comp = ProtypeExpr::Comp {
        left: Box::new(sym("be", "x", "y")),
        mid: ("y".into(), base("J")),
        right: Box::new(sym("ga", "y", "z")),
    };
    assert!(check_protype(&thy, &xi, &zk, &comp).is_ok());
}

fn pc1(x: &str, y: &str, a: &str, p: ProtypeExpr) -> ProContext {
    ProContext {
        contexts: vec![Context::single(x, base("I")), Context::single(y, base("I"))],
        provars: vec![(a.into(), p)],
    }
}

#[test]
fn provariable_is_identity_cell() {
    let thy = fixture();
    let pc = pc1("x", "y", "a", al("x", "y"));
    let (ty, d) = infer_proterm(&thy, &pc, &ProtermExpr::provar("a")).unwrap();
    assert_eq!(ty, al("x", "y"));
    assert_eq!(d.rule, "provar");
}

#[test]
fn pairing_projection_swap_on_a_conjunction() {
    // c : al /\ al  |-  < pi1{<pi0{c},pi1{c}>}, pi0{c} > : al /\ al
    let thy = fixture();
    let both = ProtypeExpr::and(al("x", "y"), al("x", "y"));
    let pc = pc1("x", "y", "c", both.clone());
    let c = || ProtermExpr::provar("c");
    let inner = ProtermExpr::pair(ProtermExpr::proj0(c()), ProtermExpr::proj1(c()));
    let swap = ProtermExpr::pair(ProtermExpr::proj1(inner), ProtermExpr::proj0(c()));
    let (ty, _) = infer_proterm(&thy, &pc, &swap).unwrap();
    assert!(protypes_match(&thy, pc.first(), pc.last(), &both, &ty));
}

#[test]
fn refl_checks_and_requires_matching_type() {
    let thy = fixture();
    let pc = ProContext::single(Context::single("x", base("I")));
    let refl = ProtermExpr::Refl { ty: base("I"), var: "x".into() };
    let (ty, d) = infer_proterm(&thy, &pc, &refl).unwrap();
    assert_eq!(d.rule, "refl-intro");
    assert_eq!(ty, ProtypeExpr::path(TermExpr::var("x"), base("I"), TermExpr::var("x")));
    let bad = ProtermExpr::Refl { ty: base("J"), var: "x".into() };
    assert!(infer_proterm(&thy, &pc, &bad).is_err());
}

#[test]
fn ide_induction_checks_the_figure_judgment() {
    // x:I ; x':I | a : x ide x'  |-  ideind{refl[J][s(x)/y]} : s(x) ide s(x')
    let thy = fixture();
    let path = ProtypeExpr::path(TermExpr::var("x"), base("I"), TermExpr::var("xp"));
    let pc = ProContext {
        contexts: vec![Context::single("x", base("I")), Context::single("xp", base("I"))],
        provars: vec![("a".into(), path)],
    };
    let s_of_x = TermExpr::App { sym: "s".into(), args: vec![TermExpr::var("x")] };
    let s_of_xp = TermExpr::App { sym: "s".into(), args: vec![TermExpr::var("xp")] };
    let body = ProtermExpr::term_subst(
        ProtermExpr::Refl { ty: base("J"), var: "y".into() },
        vec![vec![(s_of_x.clone(), "y".into())]],
    );
    let goal = ProtypeExpr::path(s_of_x, base("J"), s_of_xp);
    let ideind = ProtermExpr::IdeInd { pos: 1, body: Box::new(body) };
    let d = check_proterm(&thy, &pc, &ideind, &goal).unwrap();
    assert_eq!(d.rule, "ide-elim");
}

#[test]
fn comp_intro_checks() {
    // a : be(x;y) ; b : ga(y;z) |- a (+) b : be (+)[y:J] ga
    let thy = fixture();
    let pc = ProContext {
        contexts: vec![
            Context::single("x", base("I")),
            Context::single("y", base("J")),
            Context::single("z", base("K")),
        ],
        provars: vec![
            ("a".into(), sym("be", "x", "y")),
            ("b".into(), sym("ga", "y", "z")),
        ],
    };
    let intro = ProtermExpr::CompIntro(
        Box::new(ProtermExpr::provar("a")),
        Box::new(ProtermExpr::provar("b")),
    );
    let (ty, d) = infer_proterm(&thy, &pc, &intro).unwrap();
    assert_eq!(d.rule, "comp-intro");
    match ty {
        ProtypeExpr::Comp { mid, .. } => assert_eq!(mid, ("y".into(), base("J"))),
        other => panic!("expected a composition, got {other:?}"),
    }
}

#[test]
fn rext_application_checks_with_the_generic_boundary() {
    // w:I ; x:I ; z:K | a : al(w;x) ; e : al |>[w] de(w;z)  |-  rbl(a; e) : de(w;z)
    // with de := be (+) ga composed protype to have something over (I;K):
    // use a fresh protype by restriction of ga . be is (I;J); instead take
    // beta := be(w;yj) |> is overkill -- use al and be directly:
    // alpha = al(w;x) over (w:I ; x:I), beta = be(w;z') over (w:I ; z':J)
    let thy = fixture();
    let alpha = al("w", "x");
    let beta = sym("be", "w", "zp");
    let rext = ProtypeExpr::RExt {
        alpha: Box::new(alpha.clone()),
        bound: ("w".into(), base("I")),
        beta: Box::new(beta.clone()),
    };
    let pc = ProContext {
        contexts: vec![
            Context::single("w", base("I")),
            Context::single("x", base("I")),
            Context::single("zp", base("J")),
        ],
        provars: vec![("a".into(), al("w", "x")), ("e".into(), rext)],
    };
    let app = ProtermExpr::RExtApp(
        Box::new(ProtermExpr::provar("a")),
        Box::new(ProtermExpr::provar("e")),
    );
    let (ty, d) = infer_proterm(&thy, &pc, &app).unwrap();
    assert_eq!(d.rule, "rext-app");
    assert!(protypes_match(&thy, pc.first(), pc.last(), &sym("be", "w", "zp"), &ty));
}

#[test]
fn axiom_reference_and_instance() {
    let mut thy = fixture();
    // axiom k : (x:I ; y:I | a : al(x;y)) -> al(y;x)  (a flip axiom)
    let decl_pc = pc1("x", "y", "a", al("x", "y"));
    thy.sig.proterm_axioms.insert(
        "k".into(),
        crate::syntax::AxiomDecl { pc: decl_pc, result: al("y", "x") },
    );
    // bare reference in alpha-renamed procontext
    let pc = pc1("u", "v", "h", al("u", "v"));
    let (ty, _) = infer_proterm(&thy, &pc, &ProtermExpr::AxiomRef("k".into())).unwrap();
    assert!(protypes_match(&thy, pc.first(), pc.last(), &al("v", "u"), &ty));
    // instance k(s-free terms) with explicit groups and a prosubstitution
    let pc2 = pc1("u", "v", "h", al("u", "v"));
    let inst = ProtermExpr::prosubst(
        ProtermExpr::term_subst(
            ProtermExpr::AxiomRef("k".into()),
            vec![
                vec![(TermExpr::var("u"), "x".into())],
                vec![(TermExpr::var("v"), "y".into())],
            ],
        ),
        vec![ProArg { proterm: ProtermExpr::provar("h"), target: Some("a".into()) }],
    );
    let (ty, _) = infer_proterm(&thy, &pc2, &inst).unwrap();
    assert!(protypes_match(&thy, pc2.first(), pc2.last(), &al("v", "u"), &ty));
}

#[test]
fn term_subst_general_mode_strips_restrictions() {
    let thy = fixture();
    // hypothesis carries al(s(?), ...) shaped instance: use al over I with
    // components u,v and substitute u:=x, v:=y
    let outer = ProtypeExpr::Sym {
        sym: "al".into(),
        left: vec![TermExpr::var("u")],
        right: vec![TermExpr::var("v")],
    };
    let _ = outer;
    let pc = pc1("x", "y", "a", al("x", "y"));
    // a[x/u ; y/v] where the inner proterm is the provariable over (u;v)
    let node = ProtermExpr::term_subst(
        ProtermExpr::provar("a"),
        vec![
            vec![(TermExpr::var("x"), "u".into())],
            vec![(TermExpr::var("y"), "v".into())],
        ],
    );
    let (ty, d) = infer_proterm(&thy, &pc, &node).unwrap();
    assert_eq!(d.rule, "tsub");
    assert!(protypes_match(&thy, pc.first(), pc.last(), &al("x", "y"), &ty));
}

#[test]
fn iso_identity_checks() {
    let thy = fixture();
    let xi = Context::single("x", base("I"));
    let yi = Context::single("y", base("I"));
    let (lhs, rhs, d) =
        check_iso(&thy, &xi, &yi, &IsoExpr::Id(Box::new(al("x", "y"))), None).unwrap();
    assert_eq!(d.rule, "iso-id");
    assert_eq!(lhs, rhs);
}

#[test]
fn exc_ide_prod_schema() {
    let thy = fixture();
    let left = Context(vec![("x".into(), base("I")), ("y".into(), base("J"))]);
    let right = Context(vec![("xp".into(), base("I")), ("yp".into(), base("J"))]);
    let iso = IsoExpr::ExcIdeProd { lty: base("I"), rty: base("J") };
    let (lhs, rhs, _) = check_iso(&thy, &left, &right, &iso, None).unwrap();
    assert!(matches!(lhs, ProtypeExpr::Path { .. }));
    assert!(matches!(rhs, ProtypeExpr::And(..)));
}

#[test]
fn weakening_by_fresh_variables() {
    let thy = fixture();
    let pc = pc1("x", "y", "a", al("x", "y"));
    let (ty, _) = infer_proterm(&thy, &pc, &ProtermExpr::provar("a")).unwrap();
    // extend both contexts with fresh variables
    let wide = ProContext {
        contexts: vec![
            Context(vec![("x".into(), base("I")), ("fresh1".into(), base("K"))]),
            Context(vec![("y".into(), base("I")), ("fresh2".into(), base("J"))]),
        ],
        provars: vec![("a".into(), al("x", "y"))],
    };
    let (ty2, _) = infer_proterm(&thy, &wide, &ProtermExpr::provar("a")).unwrap();
    assert_eq!(ty, ty2);
}

#[test]
fn derivations_replay() {
    let thy = fixture();
    let pc = pc1("x", "y", "c", ProtypeExpr::and(al("x", "y"), al("x", "y")));
    let m = ProtermExpr::proj0(ProtermExpr::provar("c"));
    let (ty, d) = infer_proterm(&thy, &pc, &m).unwrap();
    // re-running the checker on the conclusion reproduces the tree
    let (ty2, d2) = infer_proterm(&thy, &pc, &m).unwrap();
    assert_eq!(ty, ty2);
    assert_eq!(d, d2);
    match &d.conclusion {
        Judgment::Proterm { protype, .. } => assert_eq!(protype, &ty),
        other => panic!("unexpected conclusion {other:?}"),
    }
}
