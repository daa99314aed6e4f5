//! Abstract syntax: signatures, contexts, the four expression sorts,
//! isomorphism expressions, and judgments.
//!
//! Substitution is explicit everywhere: a substitution node is part of the
//! syntax tree and is never silently evaluated. Surface sugar such as
//! `f(s,t)` is desugared into these nodes by the elaborator.

mod alpha;
mod vars;

pub use alpha::{
    alpha_equal, alpha_equal_eq_judgment, alpha_equal_under, AlphaEnv, ExprRef, SortMismatch,
};
pub use vars::free_variables;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Optional constructor packages that a signature may enable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extension {
    Ide,
    Comp,
    Filler,
    Compr,
    Involution,
}

impl Extension {
    pub const ALL: [Extension; 5] = [
        Extension::Ide,
        Extension::Comp,
        Extension::Filler,
        Extension::Compr,
        Extension::Involution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Extension::Ide => "ide",
            Extension::Comp => "comp",
            Extension::Filler => "filler",
            Extension::Compr => "compr",
            Extension::Involution => "involution",
        }
    }

    pub fn from_name(s: &str) -> Option<Extension> {
        Extension::ALL.iter().copied().find(|e| e.name() == s)
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Binder data of a comprehension type `{| x:I ; y:J | al |}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComprData {
    pub lvar: String,
    pub lty: TypeExpr,
    pub rvar: String,
    pub rty: TypeExpr,
    pub protype: ProtypeExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeExpr {
    Base(String),
    Unit,
    Prod(Box<TypeExpr>, Box<TypeExpr>),
    /// Comprehension type (requires the `compr` extension).
    Compr(Box<ComprData>),
}

impl TypeExpr {
    pub fn prod(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::Prod(Box::new(a), Box::new(b))
    }
}

/// An ordered typing context; variable names are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Context(pub Vec<(String, TypeExpr)>);

impl Context {
    pub fn empty() -> Context {
        Context(Vec::new())
    }

    pub fn single(var: impl Into<String>, ty: TypeExpr) -> Context {
        Context(vec![(var.into(), ty)])
    }

    pub fn lookup(&self, var: &str) -> Option<&TypeExpr> {
        self.0.iter().find(|(v, _)| v == var).map(|(_, t)| t)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(v, _)| v.as_str())
    }

    pub fn distinct_names(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.0.iter().all(|(v, _)| seen.insert(v.as_str()))
    }
}

/// One component of an explicit substitution: the term together with the
/// target variable it replaces. The target variable is a binder for the
/// expression the substitution is applied to.
pub type SubstPair = (TermExpr, String);

/// One group of an explicit substitution (all components into one context).
pub type SubstGroup = Vec<SubstPair>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermExpr {
    Var(String),
    /// Declared symbol applied to its full argument list `f[S]`,
    /// positionally matching the declared input context.
    App { sym: String, args: Vec<TermExpr> },
    Pair(Box<TermExpr>, Box<TermExpr>),
    Proj0(Box<TermExpr>),
    Proj1(Box<TermExpr>),
    UnitTm,
    /// Explicit substitution node `t[s0/x0, ..., sn/xn]`.
    Subst { inner: Box<TermExpr>, subst: SubstGroup },
    /// Left leg of a comprehension type, `lleg(t)`.
    TabL(Box<TermExpr>),
    /// Right leg of a comprehension type, `rleg(t)`.
    TabR(Box<TermExpr>),
    /// Cone factorization into a comprehension type:
    /// `tabf[{|x:I;y:J| al |}](h; k; nu)`.
    TabFactor {
        compr: Box<ComprData>,
        left: Box<TermExpr>,
        right: Box<TermExpr>,
        cell: Box<ProtermExpr>,
    },
}

impl TermExpr {
    pub fn var(v: impl Into<String>) -> TermExpr {
        TermExpr::Var(v.into())
    }

    pub fn pair(a: TermExpr, b: TermExpr) -> TermExpr {
        TermExpr::Pair(Box::new(a), Box::new(b))
    }

    pub fn subst(inner: TermExpr, subst: SubstGroup) -> TermExpr {
        TermExpr::Subst { inner: Box::new(inner), subst }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProtypeExpr {
    /// Declared protype symbol with its full (two-sided) instantiation,
    /// positionally matching the declared boundary contexts.
    Sym { sym: String, left: Vec<TermExpr>, right: Vec<TermExpr> },
    Top,
    And(Box<ProtypeExpr>, Box<ProtypeExpr>),
    /// Explicit restriction node `al[S ; T]`. The group names bind the
    /// variables of the inner protype's boundary contexts.
    Rest { inner: Box<ProtypeExpr>, left: SubstGroup, right: SubstGroup },
    /// Path protype `s ide[I] t` (extension `ide`).
    Path { left: Box<TermExpr>, ty: TypeExpr, right: Box<TermExpr> },
    /// Composition protype `al (+)[x:J] be` (extension `comp`).
    Comp { left: Box<ProtypeExpr>, mid: (String, TypeExpr), right: Box<ProtypeExpr> },
    /// Right extension `al |>[w:I] be` (extension `filler`).
    RExt { alpha: Box<ProtypeExpr>, bound: (String, TypeExpr), beta: Box<ProtypeExpr> },
    /// Right lift `be <|[z:K] al` (extension `filler`).
    RLift { beta: Box<ProtypeExpr>, bound: (String, TypeExpr), alpha: Box<ProtypeExpr> },
    /// Involution `al ^o` (extension `involution`).
    Invol(Box<ProtypeExpr>),
}

impl ProtypeExpr {
    pub fn and(a: ProtypeExpr, b: ProtypeExpr) -> ProtypeExpr {
        ProtypeExpr::And(Box::new(a), Box::new(b))
    }

    pub fn rest(inner: ProtypeExpr, left: SubstGroup, right: SubstGroup) -> ProtypeExpr {
        ProtypeExpr::Rest { inner: Box::new(inner), left, right }
    }

    pub fn path(l: TermExpr, ty: TypeExpr, r: TermExpr) -> ProtypeExpr {
        ProtypeExpr::Path { left: Box::new(l), ty, right: Box::new(r) }
    }
}

/// One argument of a prosubstitution. Arguments are positional against the
/// target's procontext; an explicit target provariable name, when present,
/// is validated during checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProArg {
    pub proterm: ProtermExpr,
    pub target: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProtermExpr {
    ProVar(String),
    /// Bare reference to a declared proterm axiom; its procontext is the
    /// declared one.
    AxiomRef(String),
    Pair(Box<ProtermExpr>, Box<ProtermExpr>),
    Proj0(Box<ProtermExpr>),
    Proj1(Box<ProtermExpr>),
    Empty,
    /// Prosubstitution `nu{mu1/b1; ...; mun/bn}`.
    ProSubst { target: Box<ProtermExpr>, args: Vec<ProArg> },
    /// Group-wise term substitution `mu[S0 ; ... ; Sn]`.
    TermSubst { inner: Box<ProtermExpr>, groups: Vec<SubstGroup> },
    /// Application of a protype isomorphism `U{mu}`.
    IsoApp { iso: Box<IsoExpr>, arg: Box<ProtermExpr> },
    /// `refl[I](x)` (extension `ide`).
    Refl { ty: TypeExpr, var: String },
    /// Directed path induction `ideind[j]{body}` (extension `ide`).
    /// `pos` is the 1-based index of the path provariable in the
    /// conclusion procontext.
    IdeInd { pos: usize, body: Box<ProtermExpr> },
    /// `mu (+) nu` (extension `comp`).
    CompIntro(Box<ProtermExpr>, Box<ProtermExpr>),
    /// Eliminator of the composition protype,
    /// `compind[j](a, x:J, b. body)` (extension `comp`).
    CompInd {
        pos: usize,
        var_a: String,
        mid: (String, TypeExpr),
        var_b: String,
        body: Box<ProtermExpr>,
    },
    /// Counit application `rbl(mu; nu)` of a right extension.
    RExtApp(Box<ProtermExpr>, Box<ProtermExpr>),
    /// Transpose into a right extension, `rtr[ann](w, a. body)`. The
    /// optional annotation is the right-extension protype being introduced;
    /// an annotated transpose infers, an unannotated one checks.
    RExtTr {
        ann: Option<Box<ProtypeExpr>>,
        cvar: String,
        provar: String,
        body: Box<ProtermExpr>,
    },
    /// Counit application `lbl(nu; mu)` of a right lift.
    RLiftApp(Box<ProtermExpr>, Box<ProtermExpr>),
    /// Transpose into a right lift, `ltr[ann](z, a. body)`.
    RLiftTr {
        ann: Option<Box<ProtypeExpr>>,
        cvar: String,
        provar: String,
        body: Box<ProtermExpr>,
    },
    /// Generic element of a comprehension type, `tab(w)`.
    Tab { var: String },
    /// Path introduction into a comprehension type (extensions `compr`+`ide`):
    /// `tabpath(sigma; theta)`.
    TabPath { left: Box<ProtermExpr>, right: Box<ProtermExpr> },
    /// `mu ^o` (extension `involution`).
    Invol(Box<ProtermExpr>),
}

impl ProtermExpr {
    pub fn provar(v: impl Into<String>) -> ProtermExpr {
        ProtermExpr::ProVar(v.into())
    }

    pub fn pair(a: ProtermExpr, b: ProtermExpr) -> ProtermExpr {
        ProtermExpr::Pair(Box::new(a), Box::new(b))
    }

    pub fn proj0(a: ProtermExpr) -> ProtermExpr {
        ProtermExpr::Proj0(Box::new(a))
    }

    pub fn proj1(a: ProtermExpr) -> ProtermExpr {
        ProtermExpr::Proj1(Box::new(a))
    }

    pub fn prosubst(target: ProtermExpr, args: Vec<ProArg>) -> ProtermExpr {
        ProtermExpr::ProSubst { target: Box::new(target), args }
    }

    pub fn term_subst(inner: ProtermExpr, groups: Vec<SubstGroup>) -> ProtermExpr {
        ProtermExpr::TermSubst { inner: Box::new(inner), groups }
    }

    pub fn iso_app(iso: IsoExpr, arg: ProtermExpr) -> ProtermExpr {
        ProtermExpr::IsoApp { iso: Box::new(iso), arg: Box::new(arg) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoExpr {
    /// `id[al]`
    Id(Box<ProtypeExpr>),
    /// `inv(U)`
    Inv(Box<IsoExpr>),
    /// `om . up` — `om` composed after `up`.
    Compose { after: Box<IsoExpr>, before: Box<IsoExpr> },
    /// `reste[al]` : al[G/G ; D/D] ~= al
    RestE { alpha: Box<ProtypeExpr> },
    /// `resti[al | S | T | S' | T']` : al[S;T][S';T'] ~= al[S[S'];T[T']]
    RestI {
        alpha: Box<ProtypeExpr>,
        left: SubstGroup,
        right: SubstGroup,
        left2: SubstGroup,
        right2: SubstGroup,
    },
    /// `restand[al | be | S | T]` : (al /\ be)[S;T] ~= al[S;T] /\ be[S;T]
    RestAnd { alpha: Box<ProtypeExpr>, beta: Box<ProtypeExpr>, left: SubstGroup, right: SubstGroup },
    /// `resttop[S | T]` : top[S;T] ~= top
    RestTop { left: SubstGroup, right: SubstGroup },
    /// `repl[al | S0 | S1 | T0 | T1]` : al[S0;T0] ~= al[S1;T1],
    /// provided S0 == S1 and T0 == T1 as substitutions.
    Repl {
        alpha: Box<ProtypeExpr>,
        left0: SubstGroup,
        left1: SubstGroup,
        right0: SubstGroup,
        right1: SubstGroup,
    },
    /// `pair(a. mu, b. nu)` — mutually inverse proterms.
    PairIso { var_fwd: String, fwd: Box<ProtermExpr>, var_bwd: String, bwd: Box<ProtermExpr> },
    /// A named isomorphism declared earlier in the file.
    Named(String),
    /// Instance of an isomorphism under a substitution, `U[S | T]`.
    Restrict { inner: Box<IsoExpr>, left: SubstGroup, right: SubstGroup },
    /// `congand(U, V)`
    AndCong(Box<IsoExpr>, Box<IsoExpr>),
    /// `congcomp[x:J](U, V)`
    CompCong { left: Box<IsoExpr>, mid: (String, TypeExpr), right: Box<IsoExpr> },
    /// `congrext[w:I](U, V)`
    RExtCong { alpha: Box<IsoExpr>, bound: (String, TypeExpr), beta: Box<IsoExpr> },
    /// `congrlift[z:K](U, V)`
    RLiftCong { beta: Box<IsoExpr>, bound: (String, TypeExpr), alpha: Box<IsoExpr> },
    /// `conginvol(U)`
    InvolCong(Box<IsoExpr>),
    /// `excideprod[I, J]` : <x,y> ide[I*J] <x',y'> ~= x ide[I] x' /\ y ide[J] y'
    ExcIdeProd { lty: TypeExpr, rty: TypeExpr },
    /// `excideunit` : <> ide[1] <> ~= top
    ExcIdeUnit,
    /// `exccompprod[...]` — product compatibility of the composition protype.
    ExcCompProd(Box<ExcProdData>),
    /// `exccomptop` : top (+)[x:1] top ~= top
    ExcCompTop,
    /// `excextprod[...]` — product compatibility of the right extension.
    ExcExtProd(Box<ExcProdData>),
    /// `excexttop` : top |>[w:1] top ~= top
    ExcExtTop,
    /// `restcomp[al (+)[x:J] be | S | T]` : (al (+) be)[S;T] ~= al[S;x] (+) be[x;T]
    RestComp { protype: Box<ProtypeExpr>, left: SubstGroup, right: SubstGroup },
    /// `restrext[al |>[w:I] be | S | T]` : (al |> be)[S;T] ~= al[w;S] |> be[w;T]
    RestRExt { protype: Box<ProtypeExpr>, left: SubstGroup, right: SubstGroup },
    /// `restrlift[be <|[z:K] al | S | T]`
    RestRLift { protype: Box<ProtypeExpr>, left: SubstGroup, right: SubstGroup },
}

/// Data of the binary product-compatibility schemas for `(+)` and `|>`.
///
/// All four component protypes have single-variable boundary contexts; the
/// schema produces the isomorphism over the paired-up product contexts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcProdData {
    /// Outer-left variable and its two component types.
    pub lvar: String,
    pub lty1: TypeExpr,
    pub lty2: TypeExpr,
    /// Middle (bound) variable and its two component types.
    pub mvar: String,
    pub mty1: TypeExpr,
    pub mty2: TypeExpr,
    /// Outer-right variable and its two component types.
    pub rvar: String,
    pub rty1: TypeExpr,
    pub rty2: TypeExpr,
    /// First pair of components (the "alpha" strand), with single-variable
    /// contexts as recorded in `vars1`.
    pub a1: ProtypeExpr,
    pub a2: ProtypeExpr,
    /// Second pair of components (the "beta" strand).
    pub b1: ProtypeExpr,
    pub b2: ProtypeExpr,
    /// Variable names the four components are written in:
    /// a1 over (w1; m1), a2 over (m1; y1), b1 over (w2; m2), b2 over (m2; y2).
    pub vars1: (String, String, String),
    pub vars2: (String, String, String),
}

/// An interleaved procontext: contexts `G0; ...; Gn` and provariables
/// `a1:al1; ...; an:aln` with `ali` judged in `(G(i-1); Gi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProContext {
    pub contexts: Vec<Context>,
    pub provars: Vec<(String, ProtypeExpr)>,
}

impl ProContext {
    pub fn single(ctx: Context) -> ProContext {
        ProContext { contexts: vec![ctx], provars: Vec::new() }
    }

    pub fn first(&self) -> &Context {
        self.contexts.first().expect("procontext has at least one context")
    }

    pub fn last(&self) -> &Context {
        self.contexts.last().expect("procontext has at least one context")
    }

    /// The flattened (overline) context: concatenation of all groups.
    pub fn flatten(&self) -> Context {
        let mut out = Vec::new();
        for ctx in &self.contexts {
            out.extend(ctx.0.iter().cloned());
        }
        Context(out)
    }

    pub fn wellformed_shape(&self) -> bool {
        if self.contexts.len() != self.provars.len() + 1 {
            return false;
        }
        let mut vars = BTreeSet::new();
        for ctx in &self.contexts {
            for (v, _) in &ctx.0 {
                if !vars.insert(v.as_str()) {
                    return false;
                }
            }
        }
        let mut pvs = BTreeSet::new();
        self.provars.iter().all(|(p, _)| pvs.insert(p.as_str()))
    }
}

/// A proterm equality judgment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqJudgment {
    pub pc: ProContext,
    pub lhs: ProtermExpr,
    pub rhs: ProtermExpr,
}

/// A substitution equality judgment `G' |- S0 / G == S1 / G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstEq {
    pub src: Context,
    pub lhs: Vec<TermExpr>,
    pub rhs: Vec<TermExpr>,
    pub tgt: Context,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Judgment {
    Type(TypeExpr),
    Term { ctx: Context, term: TermExpr, ty: TypeExpr },
    Protype { left: Context, right: Context, protype: ProtypeExpr },
    Proterm { pc: ProContext, proterm: ProtermExpr, protype: ProtypeExpr },
    Iso { left: Context, right: Context, iso: IsoExpr, lhs: ProtypeExpr, rhs: ProtypeExpr },
    ProtermEq(EqJudgment),
    SubstEq(SubstEq),
}

/// Declared term symbol: input context over type symbols, output type symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDecl {
    pub inputs: Vec<(String, String)>,
    pub output: String,
}

/// Declared protype symbol: two boundary contexts over type symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtypeDecl {
    pub left: Vec<(String, String)>,
    pub right: Vec<(String, String)>,
}

/// Declared proterm axiom: a procontext and a result protype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomDecl {
    pub pc: ProContext,
    pub result: ProtypeExpr,
}

/// A named equational axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqAxiom {
    Proterm(EqJudgment),
    Subst(SubstEq),
}

/// The ambient theory every judgment is checked against. Immutable after
/// elaboration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Signature {
    pub types: BTreeSet<String>,
    pub terms: BTreeMap<String, TermDecl>,
    pub protypes: BTreeMap<String, ProtypeDecl>,
    pub proterm_axioms: BTreeMap<String, AxiomDecl>,
    pub eq_axioms: Vec<(String, EqAxiom)>,
    pub extensions: BTreeSet<Extension>,
}

impl Signature {
    pub fn enabled(&self, ext: Extension) -> bool {
        self.extensions.contains(&ext)
    }

    pub fn term_ctx(&self, sym: &str) -> Option<Context> {
        self.terms.get(sym).map(|d| {
            Context(d.inputs.iter().map(|(v, t)| (v.clone(), TypeExpr::Base(t.clone()))).collect())
        })
    }

    pub fn protype_ctxs(&self, sym: &str) -> Option<(Context, Context)> {
        self.protypes.get(sym).map(|d| {
            let mk = |side: &Vec<(String, String)>| {
                Context(side.iter().map(|(v, t)| (v.clone(), TypeExpr::Base(t.clone()))).collect())
            };
            (mk(&d.left), mk(&d.right))
        })
    }
}

/// One diagnostic produced by [`wf_signature`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigDiagnostic {
    pub location: String,
    pub message: String,
}

impl fmt::Display for SigDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// A provariable with its own boundary contexts, before flattening into a
/// shared-context procontext.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterleavingPiece {
    pub left: Context,
    pub right: Context,
    pub provar: String,
    pub protype: ProtypeExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterleaveError {
    /// Boundary contexts fail to chain at the given 0-based piece index:
    /// the right context of piece `i` differs from the left context of
    /// piece `i+1`.
    ChainBreak(usize),
    DuplicateProvar(String),
    DuplicateVar(String),
    MissingContext,
}

impl fmt::Display for InterleaveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterleaveError::ChainBreak(i) => {
                write!(f, "boundary contexts do not chain at provariable index {i}")
            }
            InterleaveError::DuplicateProvar(p) => write!(f, "duplicate provariable `{p}`"),
            InterleaveError::DuplicateVar(v) => write!(f, "duplicate context variable `{v}`"),
            InterleaveError::MissingContext => {
                write!(f, "an empty procontext needs its single context")
            }
        }
    }
}

/// Validates that a list of two-sided pieces chains into an interleaved
/// procontext and computes the shared-context form. An empty piece list
/// describes a procontext with no provariables over `empty`.
pub fn validate_interleaving(
    empty: Option<&Context>,
    pieces: &[InterleavingPiece],
) -> Result<ProContext, InterleaveError> {
    if pieces.is_empty() {
        let ctx = empty.ok_or(InterleaveError::MissingContext)?;
        if !ctx.distinct_names() {
            let dup = first_dup(ctx).unwrap_or_default();
            return Err(InterleaveError::DuplicateVar(dup));
        }
        return Ok(ProContext::single(ctx.clone()));
    }
    for i in 0..pieces.len() - 1 {
        if pieces[i].right != pieces[i + 1].left {
            return Err(InterleaveError::ChainBreak(i + 1));
        }
    }
    let mut contexts = Vec::with_capacity(pieces.len() + 1);
    contexts.push(pieces[0].left.clone());
    for p in pieces {
        contexts.push(p.right.clone());
    }
    let mut vars = BTreeSet::new();
    for ctx in &contexts {
        for (v, _) in &ctx.0 {
            if !vars.insert(v.clone()) {
                return Err(InterleaveError::DuplicateVar(v.clone()));
            }
        }
    }
    let mut pvs = BTreeSet::new();
    let mut provars = Vec::with_capacity(pieces.len());
    for p in pieces {
        if !pvs.insert(p.provar.clone()) {
            return Err(InterleaveError::DuplicateProvar(p.provar.clone()));
        }
        provars.push((p.provar.clone(), p.protype.clone()));
    }
    Ok(ProContext { contexts, provars })
}

fn first_dup(ctx: &Context) -> Option<String> {
    let mut seen = BTreeSet::new();
    for (v, _) in &ctx.0 {
        if !seen.insert(v.as_str()) {
            return Some(v.clone());
        }
    }
    None
}

/// Checks the declaration-level invariants of a signature and reports one
/// diagnostic per violation. Full typing of axiom bodies happens in the
/// checker; this pass covers symbol resolution, arity shapes, boundary
/// chaining, name uniqueness, and extension gating of declared protypes.
pub fn wf_signature(sig: &Signature) -> Vec<SigDiagnostic> {
    let mut out: Vec<SigDiagnostic> = Vec::new();

    for (name, decl) in &sig.terms {
        for (v, t) in &decl.inputs {
            if !sig.types.contains(t) {
                push_diag(&mut out, name, format!("unknown type {t} for input {v}"));
            }
        }
        if !sig.types.contains(&decl.output) {
            push_diag(&mut out, name, format!("unknown type {} in output", decl.output));
        }
        let mut seen = BTreeSet::new();
        for (v, _) in &decl.inputs {
            if !seen.insert(v.as_str()) {
                push_diag(&mut out, name, format!("duplicate input variable {v}"));
            }
        }
    }
    for (name, decl) in &sig.protypes {
        for (v, t) in decl.left.iter().chain(decl.right.iter()) {
            if !sig.types.contains(t) {
                push_diag(&mut out, name, format!("unknown type {t} for variable {v}"));
            }
        }
        let mut seen = BTreeSet::new();
        for (v, _) in decl.left.iter().chain(decl.right.iter()) {
            if !seen.insert(v.as_str()) {
                push_diag(&mut out, name, format!("duplicate boundary variable {v}"));
            }
        }
    }
    for (name, decl) in &sig.proterm_axioms {
        if !decl.pc.wellformed_shape() {
            push_diag(&mut out, name, "malformed procontext".to_string());
        }
        for ctx in &decl.pc.contexts {
            for (v, t) in &ctx.0 {
                check_type_symbols(sig, t, name, v, &mut out);
            }
        }
        for (_, pt) in &decl.pc.provars {
            check_protype_symbols(sig, pt, name, &mut out);
        }
        check_protype_symbols(sig, &decl.result, name, &mut out);
    }
    for (name, ax) in &sig.eq_axioms {
        if let EqAxiom::Proterm(eq) = ax {
            if !eq.pc.wellformed_shape() {
                out.push(SigDiagnostic {
                    location: name.clone(),
                    message: "malformed procontext".to_string(),
                });
            }
        }
    }
    out
}

fn push_diag(out: &mut Vec<SigDiagnostic>, location: &str, message: String) {
    out.push(SigDiagnostic { location: location.to_string(), message });
}

fn check_type_symbols(
    sig: &Signature,
    ty: &TypeExpr,
    loc: &str,
    var: &str,
    out: &mut Vec<SigDiagnostic>,
) {
    match ty {
        TypeExpr::Base(b) => {
            if !sig.types.contains(b) {
                out.push(SigDiagnostic {
                    location: loc.to_string(),
                    message: format!("unknown type {b} for variable {var}"),
                });
            }
        }
        TypeExpr::Unit => {}
        TypeExpr::Prod(a, b) => {
            check_type_symbols(sig, a, loc, var, out);
            check_type_symbols(sig, b, loc, var, out);
        }
        TypeExpr::Compr(c) => {
            if !sig.enabled(Extension::Compr) {
                out.push(SigDiagnostic {
                    location: loc.to_string(),
                    message: "comprehension type used without the compr extension".to_string(),
                });
            }
            check_type_symbols(sig, &c.lty, loc, var, out);
            check_type_symbols(sig, &c.rty, loc, var, out);
            check_protype_symbols(sig, &c.protype, loc, out);
        }
    }
}

fn check_protype_symbols(
    sig: &Signature,
    pt: &ProtypeExpr,
    loc: &str,
    out: &mut Vec<SigDiagnostic>,
) {
    let mut diag = |message: String| {
        out.push(SigDiagnostic { location: loc.to_string(), message });
    };
    match pt {
        ProtypeExpr::Sym { sym, left, right } => {
            match sig.protypes.get(sym) {
                None => diag(format!("unknown protype {sym}")),
                Some(decl) => {
                    if decl.left.len() != left.len() || decl.right.len() != right.len() {
                        diag(format!("arity mismatch in instance of {sym}"));
                    }
                }
            }
        }
        ProtypeExpr::Top => {}
        ProtypeExpr::And(a, b) => {
            check_protype_symbols(sig, a, loc, out);
            check_protype_symbols(sig, b, loc, out);
        }
        ProtypeExpr::Rest { inner, .. } => check_protype_symbols(sig, inner, loc, out),
        ProtypeExpr::Path { ty, .. } => {
            if !sig.enabled(Extension::Ide) {
                diag("path protype used without the ide extension".to_string());
            }
            check_type_symbols(sig, ty, loc, "_", out);
        }
        ProtypeExpr::Comp { left, right, .. } => {
            if !sig.enabled(Extension::Comp) {
                diag("composition protype used without the comp extension".to_string());
            }
            check_protype_symbols(sig, left, loc, out);
            check_protype_symbols(sig, right, loc, out);
        }
        ProtypeExpr::RExt { alpha, beta, .. } | ProtypeExpr::RLift { beta, alpha, .. } => {
            if !sig.enabled(Extension::Filler) {
                diag("filler protype used without the filler extension".to_string());
            }
            check_protype_symbols(sig, alpha, loc, out);
            check_protype_symbols(sig, beta, loc, out);
        }
        ProtypeExpr::Invol(a) => {
            if !sig.enabled(Extension::Involution) {
                diag("involution used without the involution extension".to_string());
            }
            check_protype_symbols(sig, a, loc, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig_with(types: &[&str]) -> Signature {
        let mut sig = Signature::default();
        for t in types {
            sig.types.insert(t.to_string());
        }
        sig
    }

    #[test]
    fn wf_empty_signature_is_clean() {
        assert!(wf_signature(&Signature::default()).is_empty());
    }

    #[test]
    fn wf_reports_unknown_type_in_protype_decl() {
        let mut sig = sig_with(&["J"]);
        sig.protypes.insert(
            "al".into(),
            ProtypeDecl {
                left: vec![("x".into(), "I".into())],
                right: vec![("y".into(), "J".into())],
            },
        );
        let report = wf_signature(&sig);
        assert_eq!(report.len(), 1);
        assert!(report[0].message.contains("unknown type I"));
    }

    #[test]
    fn wf_fully_faithful_signature_is_clean() {
        let mut sig = sig_with(&["I", "J"]);
        sig.terms.insert(
            "s".into(),
            TermDecl { inputs: vec![("x".into(), "I".into())], output: "J".into() },
        );
        sig.extensions.insert(Extension::Ide);
        assert!(wf_signature(&sig).is_empty());
    }

    #[test]
    fn interleaving_chains_and_flattens() {
        let i = TypeExpr::Base("I".into());
        let j = TypeExpr::Base("J".into());
        let k = TypeExpr::Base("K".into());
        let al = ProtypeExpr::Sym {
            sym: "al".into(),
            left: vec![TermExpr::var("x")],
            right: vec![TermExpr::var("y")],
        };
        let be = ProtypeExpr::Sym {
            sym: "be".into(),
            left: vec![TermExpr::var("y")],
            right: vec![TermExpr::var("z")],
        };
        let pieces = vec![
            InterleavingPiece {
                left: Context::single("x", i.clone()),
                right: Context::single("y", j.clone()),
                provar: "a".into(),
                protype: al,
            },
            InterleavingPiece {
                left: Context::single("y", j.clone()),
                right: Context::single("z", k.clone()),
                provar: "b".into(),
                protype: be,
            },
        ];
        let pc = validate_interleaving(None, &pieces).unwrap();
        assert_eq!(pc.contexts.len(), 3);
        let flat = pc.flatten();
        assert_eq!(
            flat.names().collect::<Vec<_>>(),
            vec!["x", "y", "z"],
        );
    }

    #[test]
    fn interleaving_empty_procontext() {
        let ctx = Context::single("x", TypeExpr::Base("I".into()));
        let pc = validate_interleaving(Some(&ctx), &[]).unwrap();
        assert_eq!(pc.contexts.len(), 1);
        assert!(pc.provars.is_empty());
    }

    #[test]
    fn interleaving_detects_chain_break() {
        let i = TypeExpr::Base("I".into());
        let j = TypeExpr::Base("J".into());
        let k = TypeExpr::Base("K".into());
        let al = ProtypeExpr::Top;
        let pieces = vec![
            InterleavingPiece {
                left: Context::single("x", i),
                right: Context::single("y", j),
                provar: "a".into(),
                protype: al.clone(),
            },
            InterleavingPiece {
                left: Context::single("yq", k.clone()),
                right: Context::single("z", k),
                provar: "b".into(),
                protype: al,
            },
        ];
        assert_eq!(
            validate_interleaving(None, &pieces),
            Err(InterleaveError::ChainBreak(1))
        );
    }
}
