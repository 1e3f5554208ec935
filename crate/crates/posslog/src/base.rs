//! Weighted clause bases and their possibility-distribution semantics:
//! necessity/possibility measures, alpha-cuts, entailment, subsumption and
//! base equivalence.

use std::collections::BTreeMap;

use crate::logic::{Clause, Formula, Interpretation, VarSet};
use crate::sat::is_consistent;
use crate::weight::Weight;
use crate::{Error, Result};

/// A clause paired with a certainty level in `(0, 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedClause {
    pub clause: Clause,
    pub weight: Weight,
}

/// A possibilistic base: a set of weighted clauses, at most one weight per
/// distinct clause (the strongest occurrence wins). Tautologies and weight-0
/// entries carry no constraint and are dropped at insertion.
#[derive(Clone, PartialEq, Debug)]
pub struct PossBase {
    vars: VarSet,
    entries: BTreeMap<Clause, Weight>,
}

impl PossBase {
    pub fn new(vars: VarSet) -> Self {
        PossBase { vars, entries: BTreeMap::new() }
    }

    /// Builds a clausal base from weighted formulas: each formula is replaced
    /// by its CNF clauses at the same weight, tautologies removed. The
    /// induced distribution is unchanged by this rewriting.
    pub fn from_formulas(vars: VarSet, items: &[(Formula, Weight)]) -> Self {
        let mut base = PossBase::new(vars);
        for (f, w) in items {
            for c in f.to_cnf() {
                base.insert(c, w.clone());
            }
        }
        base
    }

    /// Max-merge insert; tautologies and zero weights are dropped.
    pub fn insert(&mut self, clause: Clause, weight: Weight) {
        if weight.is_zero() || clause.is_tautology() {
            return;
        }
        let entry = self.entries.entry(clause).or_insert_with(Weight::zero);
        if *entry < weight {
            *entry = weight;
        }
    }

    pub fn remove(&mut self, clause: &Clause) -> Option<Weight> {
        self.entries.remove(clause)
    }

    pub fn weight_of(&self, clause: &Clause) -> Option<&Weight> {
        self.entries.get(clause)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Clause, &Weight)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn vars_mut(&mut self) -> &mut VarSet {
        &mut self.vars
    }

    /// The classical clause set of entries with weight >= `a`.
    pub fn alpha_cut(&self, a: &Weight) -> Vec<Clause> {
        self.entries.iter().filter(|(_, w)| *w >= a).map(|(c, _)| c.clone()).collect()
    }

    /// The induced possibility distribution: a world satisfying every clause
    /// gets degree 1, otherwise 1 minus the strongest falsified weight.
    pub fn pi(&self) -> Result<PossibilityDistribution> {
        let worlds = self.vars.interpretations()?;
        let degrees = worlds
            .iter()
            .map(|w| {
                let worst = self
                    .entries
                    .iter()
                    .filter(|(c, _)| !c.eval(w))
                    .map(|(_, a)| a)
                    .max();
                match worst {
                    None => Weight::one(),
                    Some(a) => a.complement(),
                }
            })
            .collect();
        Ok(PossibilityDistribution { vars: self.vars.clone(), degrees })
    }

    /// Syntactic possibilistic entailment of `(f, a)`: the alpha-cut at `a`
    /// together with the clauses of `!f` is inconsistent. Coincides with
    /// `N(f) >= a` on the induced distribution.
    pub fn entails(&self, f: &Formula, a: &Weight) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::Invalid("entailment level must be positive".into()));
        }
        let mut cs = self.alpha_cut(a);
        cs.extend(Formula::not(f.clone()).to_cnf());
        Ok(!is_consistent(&cs, &self.vars)?)
    }

    /// Clause form of [`PossBase::entails`]: the negation of a clause is the
    /// set of complementary unit clauses.
    pub fn entails_clause(&self, c: &Clause, a: &Weight) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::Invalid("entailment level must be positive".into()));
        }
        let mut cs = self.alpha_cut(a);
        cs.extend(c.negation_units());
        Ok(!is_consistent(&cs, &self.vars)?)
    }

    fn subsumed_by_cut(&self, clause: &Clause, strict: bool) -> Result<bool> {
        let w = self
            .entries
            .get(clause)
            .ok_or_else(|| Error::Invalid("clause not in base".into()))?
            .clone();
        let mut cs: Vec<Clause> = self
            .entries
            .iter()
            .filter(|(c, b)| *c != clause && if strict { **b > w } else { **b >= w })
            .map(|(c, _)| c.clone())
            .collect();
        cs.extend(clause.negation_units());
        Ok(!is_consistent(&cs, &self.vars)?)
    }

    /// Definition-3 subsumption: the other entries at this weight level or
    /// above classically entail the clause.
    pub fn is_subsumed(&self, clause: &Clause) -> Result<bool> {
        self.subsumed_by_cut(clause, false)
    }

    /// Strict variant: only entries with weight strictly above count.
    pub fn is_strictly_subsumed(&self, clause: &Clause) -> Result<bool> {
        self.subsumed_by_cut(clause, true)
    }

    /// Removes subsumed entries one at a time (each removal preserves the
    /// distribution) until none remain. Deterministic: highest weight first,
    /// ties broken by canonical clause order.
    pub fn remove_subsumed(&self) -> Result<PossBase> {
        let mut base = self.clone();
        loop {
            let mut order: Vec<(Clause, Weight)> =
                base.entries.iter().map(|(c, w)| (c.clone(), w.clone())).collect();
            order.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            let mut removed = false;
            for (c, _) in order {
                if base.is_subsumed(&c)? {
                    base.remove(&c);
                    removed = true;
                    break;
                }
            }
            if !removed {
                return Ok(base);
            }
        }
    }

    /// Semantic equivalence: identical induced distributions. Both bases
    /// must share the variable universe.
    pub fn equivalent(&self, other: &PossBase) -> Result<bool> {
        if self.vars != other.vars {
            return Err(Error::Invalid("bases declare different variable universes".into()));
        }
        Ok(self.pi()? == other.pi()?)
    }
}

/// An exact mapping from every interpretation to a possibility degree.
#[derive(Clone, PartialEq, Debug)]
pub struct PossibilityDistribution {
    vars: VarSet,
    degrees: Vec<Weight>,
}

impl PossibilityDistribution {
    pub fn from_degrees(vars: VarSet, degrees: Vec<Weight>) -> Result<Self> {
        let expected = vars.world_count()?;
        if degrees.len() != expected {
            return Err(Error::Invalid(format!(
                "distribution has {} degrees, expected {expected}",
                degrees.len()
            )));
        }
        Ok(PossibilityDistribution { vars, degrees })
    }

    /// The all-ones distribution (complete ignorance).
    pub fn vacuous(vars: VarSet) -> Result<Self> {
        let n = vars.world_count()?;
        Ok(PossibilityDistribution { vars, degrees: vec![Weight::one(); n] })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn degree(&self, w: &Interpretation) -> &Weight {
        &self.degrees[w.index()]
    }

    pub fn worlds(&self) -> Vec<Interpretation> {
        self.vars.interpretations().expect("distribution already enumerated")
    }

    /// Possibility measure: max degree over the models of `f` (0 when `f`
    /// has no model).
    pub fn possibility(&self, f: &Formula) -> Weight {
        self.worlds()
            .iter()
            .filter(|w| f.eval(w))
            .map(|w| self.degree(w))
            .max()
            .cloned()
            .unwrap_or_else(Weight::zero)
    }

    /// Max degree over worlds satisfying every literal of `lits`.
    pub fn possibility_of_lits(&self, lits: &[crate::logic::Literal]) -> Weight {
        self.worlds()
            .iter()
            .filter(|w| lits.iter().all(|l| w.satisfies(l)))
            .map(|w| self.degree(w))
            .max()
            .cloned()
            .unwrap_or_else(Weight::zero)
    }

    /// Necessity measure: min of `1 - degree` over the countermodels of `f`
    /// (1 when `f` is valid). Satisfies `N(f) = 1 - possibility(!f)`.
    pub fn necessity(&self, f: &Formula) -> Weight {
        self.worlds()
            .iter()
            .filter(|w| !f.eval(w))
            .map(|w| self.degree(w).complement())
            .min()
            .unwrap_or_else(Weight::one)
    }

    /// Normal iff some world is totally possible.
    pub fn is_normal(&self) -> bool {
        self.degrees.iter().any(|d| d.is_one())
    }

    pub fn pointwise_min(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    pub fn pointwise_product(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.times(b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Weight, &Weight) -> Weight) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::Invalid("distributions over different universes".into()));
        }
        let degrees =
            self.degrees.iter().zip(&other.degrees).map(|(a, b)| f(a, b)).collect();
        Ok(PossibilityDistribution { vars: self.vars.clone(), degrees })
    }

    /// Min-based conditioning: models of `p` at the plateau `possibility(p)`
    /// are promoted to 1, other models keep their degree, countermodels drop
    /// to 0. Rejects evidence with possibility 0.
    pub fn condition_min(&self, p: &Formula) -> Result<Self> {
        let pp = self.possibility(p);
        if pp.is_zero() {
            return Err(Error::ImpossibleEvidence);
        }
        let worlds = self.worlds();
        let degrees = worlds
            .iter()
            .map(|w| {
                if !p.eval(w) {
                    Weight::zero()
                } else if *self.degree(w) == pp {
                    Weight::one()
                } else {
                    self.degree(w).clone()
                }
            })
            .collect();
        Ok(PossibilityDistribution { vars: self.vars.clone(), degrees })
    }

    /// Product-based conditioning: models of `p` are rescaled by
    /// `possibility(p)`, countermodels drop to 0.
    pub fn condition_product(&self, p: &Formula) -> Result<Self> {
        let pp = self.possibility(p);
        if pp.is_zero() {
            return Err(Error::ImpossibleEvidence);
        }
        let worlds = self.worlds();
        let degrees = worlds
            .iter()
            .map(|w| {
                if !p.eval(w) {
                    Weight::zero()
                } else {
                    self.degree(w).div_by(&pp)
                }
            })
            .collect();
        Ok(PossibilityDistribution { vars: self.vars.clone(), degrees })
    }
}
