//! The proterm equational theory: a directed normalizer for the oriented
//! fragment and a verifier for step-by-step equality scripts.
//!
//! The normalizer is a heuristic; scripts are ground truth. Every rule is a
//! named, frozen identifier (see [`rules::RULE_DOCS`]); the normalizer uses
//! the forward orientation of the subset in [`rules::NORMALIZER_RULES`].
//! Several appendix laws have no terminating orientation (the interchange
//! laws across stacked substitutions, the eliminator uniqueness laws); those
//! are available to scripts only.

mod engine;
pub mod rules;

pub use engine::{apply_rule_instance, rewrite_step, Bindings, BoundValue, Direction};

use crate::checker::{check_proterm, infer_proterm, CheckError, CheckResult, Derivation};
use crate::subst::protype_nf_opt;
use crate::syntax::*;
use crate::theory::Theory;

/// Step budget for a single normalization; exceeding it is reported as an
/// error (the fuzz suite asserts it never triggers).
const NORMALIZE_BUDGET: usize = 20_000;

/// One step of an equality script.
#[derive(Debug, Clone, PartialEq)]
pub struct ScriptStep {
    pub rule: String,
    pub dir: Direction,
    pub path: Vec<usize>,
    pub binds: Bindings,
}

/// A proof object for the equational theory: a goal and a chain of rule
/// instances rewriting its left side into its right side.
#[derive(Debug, Clone, PartialEq)]
pub struct EqScript {
    pub goal: EqJudgment,
    pub steps: Vec<ScriptStep>,
}

/// Normalizes a checked proterm with the oriented rules. `protype` is the
/// proterm's protype (used for type-directed steps and premise tracking).
pub fn normalize_proterm(
    thy: &Theory,
    pc: &ProContext,
    mu: &ProtermExpr,
    protype: &ProtypeExpr,
) -> CheckResult<ProtermExpr> {
    let mut cur = mu.clone();
    for _ in 0..NORMALIZE_BUDGET {
        match engine::normalizer_step(thy, pc, Some(protype), &cur)? {
            Some((next, _rule)) => cur = next,
            None => return Ok(cur),
        }
    }
    Err(CheckError::Shape("normalization budget exhausted".into()))
}

/// Establishes the protype both sides of a goal check with.
fn goal_protype(
    thy: &Theory,
    goal: &EqJudgment,
    expected: Option<&ProtypeExpr>,
) -> CheckResult<ProtypeExpr> {
    crate::checker::check_procontext(thy, &goal.pc)?;
    let omega = match expected {
        Some(e) => {
            check_proterm(thy, &goal.pc, &goal.lhs, e)
                .map_err(|er| er.within("the left side of the equality"))?;
            e.clone()
        }
        None => {
            let (t, _) = infer_proterm(thy, &goal.pc, &goal.lhs)
                .map_err(|er| er.within("the left side of the equality"))?;
            t
        }
    };
    check_proterm(thy, &goal.pc, &goal.rhs, &omega).map_err(|er| match er.root() {
        CheckError::ProtypeMismatch { .. } => {
            er.within("the right side of the equality (sides must share a protype)")
        }
        _ => er.within("the right side of the equality"),
    })?;
    Ok(omega)
}

/// Decides a proterm equality: true iff the normal forms agree or the goal
/// is an instance of an equational fact. `false` means "not proven".
pub fn check_proterm_eq(thy: &Theory, goal: &EqJudgment) -> CheckResult<bool> {
    check_proterm_eq_at(thy, goal, None)
}

/// Like [`check_proterm_eq`], with the protype supplied for goals whose
/// sides contain check-mode formers.
pub fn check_proterm_eq_at(
    thy: &Theory,
    goal: &EqJudgment,
    expected: Option<&ProtypeExpr>,
) -> CheckResult<bool> {
    let omega = goal_protype(thy, goal, expected)?;
    let ln = normalize_proterm(thy, &goal.pc, &goal.lhs, &omega)?;
    let rn = normalize_proterm(thy, &goal.pc, &goal.rhs, &omega)?;
    if alpha_equal(ExprRef::Proterm(&ln), ExprRef::Proterm(&rn)).unwrap_or(false) {
        return Ok(true);
    }
    // instance of a recorded fact, either way around
    let nf_goal = EqJudgment { pc: goal.pc.clone(), lhs: ln.clone(), rhs: rn.clone() };
    for (_, ax) in thy.eq_facts() {
        if let EqAxiom::Proterm(eq) = ax {
            if eq_is_instance(thy, eq, goal) || eq_is_instance(thy, eq, &nf_goal) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn eq_is_instance(thy: &Theory, fact: &EqJudgment, goal: &EqJudgment) -> bool {
    if alpha_equal_eq_judgment(fact, goal) {
        return true;
    }
    let swapped =
        EqJudgment { pc: fact.pc.clone(), lhs: fact.rhs.clone(), rhs: fact.lhs.clone() };
    if alpha_equal_eq_judgment(&swapped, goal) {
        return true;
    }
    engine::fact_matches_instance(thy, fact, goal)
        || engine::fact_matches_instance(thy, &swapped, goal)
}

/// Verifies an equality script: every step must be a literal instance of a
/// named rule at the stated position, and the chain must connect the left
/// side to the right side.
pub fn check_script(thy: &Theory, script: &EqScript) -> CheckResult<Derivation> {
    let omega = goal_protype(thy, &script.goal, None).or_else(|e| {
        // sides with check-mode heads need a protype; try the rhs first
        match infer_proterm(thy, &script.goal.pc, &script.goal.rhs) {
            Ok((t, _)) => {
                check_proterm(thy, &script.goal.pc, &script.goal.lhs, &t)?;
                Ok(t)
            }
            Err(_) => Err(e),
        }
    })?;
    let mut cur = script.goal.lhs.clone();
    let mut premises = Vec::new();
    for (i, step) in script.steps.iter().enumerate() {
        let next = engine::apply_script_step(thy, &script.goal.pc, &omega, &cur, step)
            .map_err(|e| CheckError::BadStep { step: i + 1, reason: e.to_string() })?;
        // each step preserves the protype (subject reduction per step)
        check_proterm(thy, &script.goal.pc, &next, &omega)
            .map_err(|e| CheckError::BadStep { step: i + 1, reason: e.to_string() })?;
        premises.push(Derivation::leaf(
            rules::intern_rule_name(&step.rule),
            Judgment::ProtermEq(EqJudgment {
                pc: script.goal.pc.clone(),
                lhs: cur.clone(),
                rhs: next.clone(),
            }),
        ));
        cur = next;
    }
    let closes = alpha_equal(ExprRef::Proterm(&cur), ExprRef::Proterm(&script.goal.rhs))
        .unwrap_or(false)
        || {
            let cn = normalize_proterm(thy, &script.goal.pc, &cur, &omega)?;
            let rn = normalize_proterm(thy, &script.goal.pc, &script.goal.rhs, &omega)?;
            alpha_equal(ExprRef::Proterm(&cn), ExprRef::Proterm(&rn)).unwrap_or(false)
        };
    if !closes {
        return Err(CheckError::BadStep {
            step: script.steps.len(),
            reason: "the chain does not reach the right side".into(),
        });
    }
    Ok(Derivation {
        rule: "script",
        premises,
        conclusion: Judgment::ProtermEq(script.goal.clone()),
    })
}

/// The protype a checked proterm normalizes at, for reporting.
pub fn proterm_protype_nf(
    thy: &Theory,
    pc: &ProContext,
    protype: &ProtypeExpr,
) -> ProtypeExpr {
    protype_nf_opt(thy, Some(pc.first()), Some(pc.last()), protype)
}

#[cfg(test)]
mod tests;
