//! Directed possibilistic graphs: DAG structure, conditional possibility
//! tables, normalization checks, min/product chain rules, conditioning, and
//! the chain-rule decomposition of a distribution.

use std::collections::{BTreeMap, BTreeSet};

use crate::base::PossibilityDistribution;
use crate::logic::{Literal, VarId, VarSet};
use crate::weight::Weight;
use crate::{Error, Result};

/// How conditional tables combine along the chain rule.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Min,
    Product,
}

/// One non-trivial table entry viewed as a triple `(instance, parent
/// context, degree)`. Entries equal to 1 are never materialized: they do not
/// contribute to the joint.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Triple {
    pub instance: Literal,
    pub context: Vec<Literal>,
    pub degree: Weight,
}

/// Sparse conditional possibility table for one node. Keys are the node
/// instance polarity plus the canonical (variable-index sorted) parent
/// instantiation; unlisted entries default to 1.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ConditionalTable {
    entries: BTreeMap<(bool, Vec<Literal>), Weight>,
}

impl ConditionalTable {
    pub fn get(&self, positive: bool, context: &[Literal]) -> Weight {
        self.entries
            .get(&(positive, context.to_vec()))
            .cloned()
            .unwrap_or_else(Weight::one)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(bool, Vec<Literal>), &Weight)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A DAG of binary variables with one conditional table per node.
#[derive(Clone, PartialEq, Debug)]
pub struct PossNetwork {
    vars: VarSet,
    nodes: Vec<VarId>,
    parents: BTreeMap<VarId, Vec<VarId>>,
    tables: BTreeMap<VarId, ConditionalTable>,
}

/// Acyclicity/normalization errors and coherence warnings found by
/// [`PossNetwork::validate`]. A network is usable when `errors` is empty.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

impl PossNetwork {
    pub fn new(vars: VarSet) -> Self {
        PossNetwork { vars, nodes: Vec::new(), parents: BTreeMap::new(), tables: BTreeMap::new() }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn vars_mut(&mut self) -> &mut VarSet {
        &mut self.vars
    }

    pub fn nodes(&self) -> &[VarId] {
        &self.nodes
    }

    pub fn parents(&self, node: VarId) -> &[VarId] {
        self.parents.get(&node).map(|p| p.as_slice()).unwrap_or(&[])
    }

    pub fn table(&self, node: VarId) -> Option<&ConditionalTable> {
        self.tables.get(&node)
    }

    pub fn add_node(&mut self, node: VarId, parents: Vec<VarId>) -> Result<()> {
        if self.parents.contains_key(&node) {
            return Err(Error::InvalidNetwork(format!(
                "node `{}` declared twice",
                self.vars.name(node)
            )));
        }
        let mut seen = BTreeSet::new();
        for &p in &parents {
            if p == node || !seen.insert(p) {
                return Err(Error::InvalidNetwork(format!(
                    "bad parent list for `{}`",
                    self.vars.name(node)
                )));
            }
        }
        self.nodes.push(node);
        self.parents.insert(node, parents);
        self.tables.insert(node, ConditionalTable::default());
        Ok(())
    }

    /// Records `pi(instance | context) = weight`. The context must
    /// instantiate exactly the node's declared parents; degree-1 entries are
    /// simply not stored.
    pub fn set_entry(
        &mut self,
        node: VarId,
        positive: bool,
        context: &[Literal],
        weight: Weight,
    ) -> Result<()> {
        let parents = self
            .parents
            .get(&node)
            .ok_or_else(|| {
                Error::InvalidNetwork(format!("undeclared node `{}`", self.vars.name(node)))
            })?
            .clone();
        let ctx_vars: BTreeSet<VarId> = context.iter().map(|l| l.var).collect();
        let par_vars: BTreeSet<VarId> = parents.iter().copied().collect();
        if ctx_vars != par_vars || ctx_vars.len() != context.len() {
            return Err(Error::InvalidNetwork(format!(
                "context for `{}` must instantiate exactly its parents",
                self.vars.name(node)
            )));
        }
        if weight.is_one() {
            return Ok(());
        }
        let mut key = context.to_vec();
        key.sort();
        self.tables.get_mut(&node).unwrap().entries.insert((positive, key), weight);
        Ok(())
    }

    /// All instantiations of `parents`, each canonical, in ascending
    /// bit-pattern order of the parent list.
    pub fn instantiations(parents: &[VarId]) -> Vec<Vec<Literal>> {
        let k = parents.len();
        (0..1u64 << k)
            .map(|bits| {
                let mut lits: Vec<Literal> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| Literal { var: v, positive: (bits >> (k - 1 - i)) & 1 == 1 })
                    .collect();
                lits.sort();
                lits
            })
            .collect()
    }

    /// Topological order (parents before children), or a cycle error.
    pub fn topological_order(&self) -> Result<Vec<VarId>> {
        let mut indegree: BTreeMap<VarId, usize> =
            self.nodes.iter().map(|&n| (n, self.parents(n).len())).collect();
        let mut order = Vec::new();
        let mut ready: Vec<VarId> =
            self.nodes.iter().copied().filter(|&n| self.parents(n).is_empty()).collect();
        while let Some(n) = ready.pop() {
            order.push(n);
            for &m in &self.nodes {
                if self.parents(m).contains(&n) {
                    let d = indegree.get_mut(&m).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.push(m);
                    }
                }
            }
        }
        if order.len() != self.nodes.len() {
            return Err(Error::InvalidNetwork("parent relation has a cycle".into()));
        }
        Ok(order)
    }

    /// Structural and semantic validation: acyclicity and per-row
    /// normalization are errors; table entries exceeding the possibility of
    /// their own context under the min-joint are coherence warnings (such
    /// entries cannot be recovered by min-conditioning).
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if let Err(e) = self.topological_order() {
            report.errors.push(e.to_string());
        }
        for &node in &self.nodes {
            let table = &self.tables[&node];
            let mut by_ctx: BTreeMap<&Vec<Literal>, Vec<bool>> = BTreeMap::new();
            for ((positive, ctx), _) in table.iter() {
                by_ctx.entry(ctx).or_default().push(*positive);
            }
            for (ctx, polarities) in by_ctx {
                if polarities.len() == 2 {
                    report.errors.push(format!(
                        "node `{}`: no instance has possibility 1 for context `{}`",
                        self.vars.name(node),
                        ctx.iter().map(|l| l.display(&self.vars)).collect::<Vec<_>>().join(" ")
                    ));
                }
            }
        }
        if report.errors.is_empty() {
            if let Ok(joint) = self.joint(Mode::Min) {
                for &node in &self.nodes {
                    for ((positive, ctx), w) in self.tables[&node].iter() {
                        let ctx_possibility = joint.possibility_of_lits(ctx);
                        if *w > ctx_possibility {
                            report.warnings.push(format!(
                                "node `{}`: pi({} | {}) = {} exceeds the context possibility {}",
                                self.vars.name(node),
                                Literal { var: node, positive: *positive }.display(&self.vars),
                                ctx.iter()
                                    .map(|l| l.display(&self.vars))
                                    .collect::<Vec<_>>()
                                    .join(" "),
                                w,
                                ctx_possibility
                            ));
                        }
                    }
                }
            }
        }
        report
    }

    /// The network as a set of triples, node declaration order first, then
    /// canonical table order.
    pub fn triples(&self) -> Vec<Triple> {
        let mut out = Vec::new();
        for &node in &self.nodes {
            for ((positive, ctx), w) in self.tables[&node].iter() {
                out.push(Triple {
                    instance: Literal { var: node, positive: *positive },
                    context: ctx.clone(),
                    degree: w.clone(),
                });
            }
        }
        out
    }

    fn joint(&self, mode: Mode) -> Result<PossibilityDistribution> {
        let worlds = self.vars.interpretations()?;
        let degrees = worlds
            .iter()
            .map(|w| {
                let mut acc = Weight::one();
                for &node in &self.nodes {
                    let ctx: Vec<Literal> = {
                        let mut lits: Vec<Literal> = self
                            .parents(node)
                            .iter()
                            .map(|&p| Literal { var: p, positive: w.value(p) })
                            .collect();
                        lits.sort();
                        lits
                    };
                    let e = self.tables[&node].get(w.value(node), &ctx);
                    acc = match mode {
                        Mode::Min => acc.min(e),
                        Mode::Product => acc.times(&e),
                    };
                }
                acc
            })
            .collect();
        PossibilityDistribution::from_degrees(self.vars.clone(), degrees)
    }

    /// Joint distribution under the min chain rule.
    pub fn joint_min(&self) -> Result<PossibilityDistribution> {
        self.joint(Mode::Min)
    }

    /// Joint distribution under the product chain rule.
    pub fn joint_product(&self) -> Result<PossibilityDistribution> {
        self.joint(Mode::Product)
    }

    pub fn joint_by_mode(&self, mode: Mode) -> Result<PossibilityDistribution> {
        self.joint(mode)
    }
}

/// Chain-rule decomposition of a normal distribution along `ordering`: node
/// `i` is conditioned on all earlier variables, and recomposing with the same
/// mode returns `d` exactly.
pub fn decompose(
    d: &PossibilityDistribution,
    ordering: &[VarId],
    mode: Mode,
) -> Result<PossNetwork> {
    if !d.is_normal() {
        return Err(Error::Invalid("cannot decompose a subnormal distribution".into()));
    }
    let declared: BTreeSet<VarId> = d.vars().ids().collect();
    let listed: BTreeSet<VarId> = ordering.iter().copied().collect();
    if declared != listed || ordering.len() != declared.len() {
        return Err(Error::Invalid("ordering must cover every variable exactly once".into()));
    }
    let mut net = PossNetwork::new(d.vars().clone());
    for (i, &x) in ordering.iter().enumerate() {
        let parents: Vec<VarId> = ordering[..i].to_vec();
        net.add_node(x, parents.clone())?;
        for ctx in PossNetwork::instantiations(&parents) {
            let p_ctx = d.possibility_of_lits(&ctx);
            for positive in [false, true] {
                let mut lits = ctx.clone();
                lits.push(Literal { var: x, positive });
                let p_joint = d.possibility_of_lits(&lits);
                let entry = match mode {
                    Mode::Min => {
                        if p_joint == p_ctx {
                            Weight::one()
                        } else {
                            p_joint
                        }
                    }
                    Mode::Product => {
                        if p_ctx.is_zero() {
                            Weight::zero()
                        } else {
                            p_joint.div_by(&p_ctx)
                        }
                    }
                };
                net.set_entry(x, positive, &ctx, entry)?;
            }
        }
    }
    Ok(net)
}

/// A kappa (ordinal conditional) function: integer implausibility ranks,
/// `None` meaning infinitely implausible.
#[derive(Clone, PartialEq, Debug)]
pub struct KappaRanking {
    vars: VarSet,
    ranks: Vec<Option<u64>>,
}

impl KappaRanking {
    pub fn new(vars: VarSet, ranks: Vec<Option<u64>>) -> Result<Self> {
        let expected = vars.world_count()?;
        if ranks.len() != expected {
            return Err(Error::Invalid(format!(
                "kappa ranking has {} ranks, expected {expected}",
                ranks.len()
            )));
        }
        Ok(KappaRanking { vars, ranks })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn vars_mut(&mut self) -> &mut VarSet {
        &mut self.vars
    }

    pub fn rank(&self, index: usize) -> Option<u64> {
        self.ranks[index]
    }

    /// Possibility degree `2^-rank` per world; infinite rank maps to 0.
    pub fn to_possibility(&self) -> PossibilityDistribution {
        let degrees = self.ranks.iter().map(|r| Weight::pow2_neg(*r)).collect();
        PossibilityDistribution::from_degrees(self.vars.clone(), degrees)
            .expect("rank vector already sized")
    }

    /// Kappa conditioning: `k(w|p) = k(w) - k(p)` on models of `p`, infinity
    /// elsewhere, with `k(p)` the minimum rank over models of `p`.
    pub fn condition(&self, p: &crate::logic::Formula) -> Result<KappaRanking> {
        let worlds = self.vars.interpretations()?;
        let kp = worlds
            .iter()
            .filter(|w| p.eval(w))
            .filter_map(|w| self.ranks[w.index()])
            .min()
            .ok_or(Error::ImpossibleEvidence)?;
        let ranks = worlds
            .iter()
            .map(|w| {
                if p.eval(w) {
                    self.ranks[w.index()].map(|r| r - kp)
                } else {
                    None
                }
            })
            .collect();
        Ok(KappaRanking { vars: self.vars.clone(), ranks })
    }
}
