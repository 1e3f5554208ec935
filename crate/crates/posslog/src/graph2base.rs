//! Translating a possibilistic network into a weighted clause base whose
//! induced distribution matches the chain-rule joint, for both the min and
//! product combinations.

use crate::base::PossBase;
use crate::logic::Clause;
use crate::network::{Mode, PossNetwork, Triple};
use crate::weight::Weight;
use crate::Result;

/// The clause carried by one table entry: `pi(x | context) = 1 - a` becomes
/// `(!x | !context : a)`.
pub fn triple_to_clause(t: &Triple) -> (Clause, Weight) {
    let mut lits = vec![t.instance.negated()];
    lits.extend(t.context.iter().map(|l| l.negated()));
    (Clause::new(lits), t.degree.complement())
}

/// Min-mode translation: one weighted clause per table entry. The induced
/// distribution equals the min-joint of the network.
pub fn encode_min(net: &PossNetwork) -> PossBase {
    let mut base = PossBase::new(net.vars().clone());
    for t in net.triples() {
        let (c, w) = triple_to_clause(&t);
        base.insert(c, w);
    }
    base
}

/// Product combination of two bases on the same universe: keeps every clause
/// of each side, plus each cross disjunction `ci | dj` at weight
/// `ai + bj - ai*bj`. The induced distribution is the pointwise product.
pub fn combine_product(lhs: &PossBase, rhs: &PossBase) -> Result<PossBase> {
    if lhs.vars() != rhs.vars() {
        return Err(crate::Error::Invalid(
            "bases declare different variable universes".into(),
        ));
    }
    let mut out = PossBase::new(lhs.vars().clone());
    for (c, w) in lhs.iter() {
        out.insert(c.clone(), w.clone());
    }
    for (d, v) in rhs.iter() {
        out.insert(d.clone(), v.clone());
    }
    for (c, w) in lhs.iter() {
        for (d, v) in rhs.iter() {
            out.insert(c.union(d), w.cross(v));
        }
    }
    Ok(out)
}

/// Product-mode translation: folds [`combine_product`] over the singleton
/// bases of the table entries, in the deterministic order of
/// [`PossNetwork::triples`]. The result is order-independent up to
/// max-merging, and its induced distribution equals the product-joint.
pub fn encode_product(net: &PossNetwork) -> Result<PossBase> {
    let mut acc = PossBase::new(net.vars().clone());
    for t in net.triples() {
        let (c, w) = triple_to_clause(&t);
        let mut single = PossBase::new(net.vars().clone());
        single.insert(c, w);
        acc = combine_product(&acc, &single)?;
    }
    Ok(acc)
}

/// Mode-dispatched translation.
pub fn encode(net: &PossNetwork, mode: Mode) -> Result<PossBase> {
    match mode {
        Mode::Min => Ok(encode_min(net)),
        Mode::Product => encode_product(net),
    }
}
