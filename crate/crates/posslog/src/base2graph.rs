//! Compiling a weighted clause base into a min-based possibilistic network:
//! clausal preprocessing, parent determination with subsumption removal and
//! tail replacement, complete extension of each node's clauses, and
//! conditional table extraction. The min chain rule over the result
//! reproduces the base's distribution exactly.

use std::collections::{BTreeMap, BTreeSet};

use crate::base::PossBase;
use crate::logic::{Clause, Formula, Literal, VarId, VarSet};
use crate::network::PossNetwork;
use crate::weight::Weight;
use crate::{Error, Result};

/// Rewrites weighted formulas into an equivalent clausal base: CNF at the
/// same weight, tautologies dropped.
pub fn preprocess(vars: VarSet, items: &[(Formula, Weight)]) -> PossBase {
    PossBase::from_formulas(vars, items)
}

/// One rewriting event of the compilation. Replaying the steps in order on
/// the input base reproduces the final rewritten base; each step on its own
/// preserves the induced distribution.
#[derive(Clone, PartialEq, Debug)]
pub enum TraceStep {
    /// A clause entailed by the other entries at its level was dropped.
    RemoveSubsumed { clause: Clause, weight: Weight },
    /// `(x | tail : w)` was replaced by `(tail : w)` because the base
    /// already entails the tail at that level.
    ReplaceTail { clause: Clause, tail: Clause, weight: Weight },
    /// A node's clause set was replaced by its complete extension.
    Extend {
        node: VarId,
        removed: Vec<(Clause, Weight)>,
        added: Vec<(Clause, Weight)>,
    },
}

impl TraceStep {
    /// Applies this step to `base` (which must be in the state the step was
    /// recorded against).
    pub fn apply(&self, base: &mut PossBase) {
        match self {
            TraceStep::RemoveSubsumed { clause, .. } => {
                base.remove(clause);
            }
            TraceStep::ReplaceTail { clause, tail, weight } => {
                base.remove(clause);
                base.insert(tail.clone(), weight.clone());
            }
            TraceStep::Extend { removed, added, .. } => {
                for (c, _) in removed {
                    base.remove(c);
                }
                for (c, w) in added {
                    base.insert(c.clone(), w.clone());
                }
            }
        }
    }

    pub fn display(&self, vars: &VarSet) -> String {
        match self {
            TraceStep::RemoveSubsumed { clause, weight } => {
                format!("remove subsumed ({} : {weight})", clause.display(vars))
            }
            TraceStep::ReplaceTail { clause, tail, weight } => format!(
                "replace ({} : {weight}) by ({} : {weight})",
                clause.display(vars),
                tail.display(vars)
            ),
            TraceStep::Extend { node, removed, added } => format!(
                "extend {}: {{{}}} -> {{{}}}",
                vars.name(*node),
                removed
                    .iter()
                    .map(|(c, w)| format!("{} : {w}", c.display(vars)))
                    .collect::<Vec<_>>()
                    .join(", "),
                added
                    .iter()
                    .map(|(c, w)| format!("{} : {w}", c.display(vars)))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }
    }
}

/// Outcome of compiling a base: the variable ordering used, each node's
/// parents, the per-node sub-base the conditional tables are read from, and
/// the rewriting trace.
#[derive(Clone, Debug)]
pub struct CompilationResult {
    vars: VarSet,
    pub ordering: Vec<VarId>,
    pub parents: BTreeMap<VarId, Vec<VarId>>,
    /// One entry per variable, in `ordering` order; clauses of entry `i`
    /// mention only `ordering[i]` and later variables.
    pub sub_bases: Vec<(VarId, PossBase)>,
    pub trace: Vec<TraceStep>,
}

impl CompilationResult {
    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    /// Union of all sub-bases; equivalent to the compiled input.
    pub fn union_base(&self) -> PossBase {
        let mut out = PossBase::new(self.vars.clone());
        for (_, sub) in &self.sub_bases {
            for (c, w) in sub.iter() {
                out.insert(c.clone(), w.clone());
            }
        }
        out
    }
}

/// Definition-4 rewriting of a node's clause set: one clause per instance of
/// `node` and full instantiation of `parents`, at the strongest weight among
/// the clauses of `k` whose tail literals all appear in the instantiation.
/// Zero-weight (no contributing clause) entries are omitted. Equivalent to
/// `k` as a base.
pub fn complete_extension(
    k: &[(Clause, Weight)],
    node: VarId,
    parents: &[VarId],
) -> Result<Vec<(Clause, Weight)>> {
    let par_set: BTreeSet<VarId> = parents.iter().copied().collect();
    for (c, _) in k {
        let Some((_, tail)) = c.split(node) else {
            return Err(Error::Invalid("clause lacks an instance of the head variable".into()));
        };
        if !tail.vars().all(|v| par_set.contains(&v)) {
            return Err(Error::Invalid("clause tail mentions a non-parent variable".into()));
        }
    }
    let mut out = Vec::new();
    for positive in [false, true] {
        for inst in PossNetwork::instantiations(parents) {
            let inst_set: BTreeSet<Literal> = inst.iter().copied().collect();
            let alpha = k
                .iter()
                .filter(|(c, _)| {
                    c.literal_of(node).map(|l| l.positive) == Some(positive)
                        && c.literals()
                            .iter()
                            .filter(|l| l.var != node)
                            .all(|l| inst_set.contains(l))
                })
                .map(|(_, w)| w.clone())
                .max();
            if let Some(a) = alpha {
                let mut lits = vec![Literal { var: node, positive }];
                lits.extend(inst.iter().copied());
                out.push((Clause::new(lits), a));
            }
        }
    }
    Ok(out)
}

/// Compiles `input` (assumed clausal; `PossBase` enforces that shape) along
/// `ordering`. For each variable in turn: drop subsumed head clauses and
/// replace entailed tails, read off the parents, rewrite the node's clauses
/// into their complete extension, re-run tail replacement on the extension,
/// and record the remaining clauses as the node's sub-base. Every rewriting
/// step preserves the induced distribution.
pub fn build_graph(input: &PossBase, ordering: &[VarId]) -> Result<CompilationResult> {
    let declared: BTreeSet<VarId> = input.vars().ids().collect();
    let listed: BTreeSet<VarId> = ordering.iter().copied().collect();
    if declared != listed || ordering.len() != declared.len() {
        return Err(Error::Invalid("ordering must cover every variable exactly once".into()));
    }
    let mut rank = vec![0usize; ordering.len()];
    for (i, &v) in ordering.iter().enumerate() {
        rank[v.0] = i;
    }

    let mut base = input.clone();
    let mut trace = Vec::new();
    let mut parents_map = BTreeMap::new();
    let mut sub_bases = Vec::new();

    for (i, &x) in ordering.iter().enumerate() {
        // head clauses of x over strictly later variables, in deterministic
        // visit order: decreasing weight, ties by canonical clause order
        let heads = |base: &PossBase| -> Vec<(Clause, Weight)> {
            let mut v: Vec<(Clause, Weight)> = base
                .iter()
                .filter(|(c, _)| {
                    c.contains_var(x) && c.vars().all(|v| v == x || rank[v.0] > i)
                })
                .map(|(c, w)| (c.clone(), w.clone()))
                .collect();
            v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            v
        };

        let replace_entailed_tails = |base: &mut PossBase,
                                          trace: &mut Vec<TraceStep>,
                                          drop_subsumed: bool|
         -> Result<()> {
            for (c, w) in heads(base) {
                if base.weight_of(&c) != Some(&w) {
                    continue;
                }
                if drop_subsumed && base.is_subsumed(&c)? {
                    base.remove(&c);
                    trace.push(TraceStep::RemoveSubsumed { clause: c, weight: w });
                    continue;
                }
                let (_, tail) = c.split(x).expect("head clause contains x");
                if base.entails_clause(&tail, &w)? {
                    base.remove(&c);
                    base.insert(tail.clone(), w.clone());
                    trace.push(TraceStep::ReplaceTail { clause: c, tail, weight: w });
                }
            }
            Ok(())
        };

        replace_entailed_tails(&mut base, &mut trace, true)?;

        let k = heads(&base);
        let mut par: Vec<VarId> = k
            .iter()
            .flat_map(|(c, _)| c.vars())
            .filter(|&v| v != x)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        par.sort();
        parents_map.insert(x, par.clone());

        if !k.is_empty() {
            let extended = complete_extension(&k, x, &par)?;
            let step = TraceStep::Extend { node: x, removed: k, added: extended };
            step.apply(&mut base);
            trace.push(step);
        }

        replace_entailed_tails(&mut base, &mut trace, false)?;

        let mut sigma = PossBase::new(base.vars().clone());
        for (c, w) in heads(&base) {
            sigma.insert(c, w);
        }
        sub_bases.push((x, sigma));
    }

    Ok(CompilationResult {
        vars: input.vars().clone(),
        ordering: ordering.to_vec(),
        parents: parents_map,
        sub_bases,
        trace,
    })
}

/// Reads the conditional tables out of a compilation: for node `x` with
/// parent instantiation `P`, the entry for instance `x'` is `1 - a` when the
/// sub-base holds the clause complementary to `x'` and `P` at weight `a`,
/// and 1 otherwise. Nodes are declared in reverse compile order, so parents
/// precede children.
pub fn conditional_tables(r: &CompilationResult) -> Result<PossNetwork> {
    let mut net = PossNetwork::new(r.vars.clone());
    for &x in r.ordering.iter().rev() {
        net.add_node(x, r.parents[&x].clone())?;
    }
    for (x, sigma) in &r.sub_bases {
        for (c, a) in sigma.iter() {
            let (lit, rest) = c.split(*x).expect("sub-base clause heads its variable");
            let ctx: Vec<Literal> = rest.literals().iter().map(|l| l.negated()).collect();
            net.set_entry(*x, !lit.positive, &ctx, a.complement())?;
        }
    }
    Ok(net)
}

/// Full pipeline: compile and extract tables.
pub fn compile(input: &PossBase, ordering: &[VarId]) -> Result<(CompilationResult, PossNetwork)> {
    let r = build_graph(input, ordering)?;
    let net = conditional_tables(&r)?;
    Ok((r, net))
}
