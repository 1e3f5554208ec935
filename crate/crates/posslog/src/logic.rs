//! Propositional substrate: variables, literals, clauses, formulas, CNF
//! conversion, and interpretation enumeration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::{Error, Result};

/// Default cap on exhaustive world enumeration (2^20 interpretations).
pub const DEFAULT_ENUM_GUARD: usize = 20;

/// Index of a variable inside a [`VarSet`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId(pub usize);

/// Registry of binary variables for one problem instance.
///
/// Names are unique and indices form a bijection onto `0..n`. Variables are
/// registered in first-appearance order, which fixes the default ordering
/// everywhere (world bit patterns, compile orderings, golden files).
#[derive(Clone, Debug)]
pub struct VarSet {
    names: Vec<String>,
    by_name: HashMap<String, usize>,
    guard: usize,
}

impl Default for VarSet {
    fn default() -> Self {
        Self::new()
    }
}

impl VarSet {
    pub fn new() -> Self {
        VarSet { names: Vec::new(), by_name: HashMap::new(), guard: DEFAULT_ENUM_GUARD }
    }

    pub fn with_guard(guard: usize) -> Self {
        VarSet { guard, ..Self::new() }
    }

    /// Registers `name`, or returns the existing id if already declared.
    pub fn declare(&mut self, name: &str) -> Result<VarId> {
        if !Self::valid_name(name) {
            return Err(Error::InvalidName(name.to_string()));
        }
        if let Some(&i) = self.by_name.get(name) {
            return Ok(VarId(i));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), i);
        Ok(VarId(i))
    }

    fn valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).map(|&i| VarId(i))
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.0]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len()).map(VarId)
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    pub fn set_guard(&mut self, guard: usize) {
        self.guard = guard;
    }

    pub fn check_guard(&self) -> Result<()> {
        if self.names.len() > self.guard || self.names.len() > 63 {
            Err(Error::GuardExceeded { vars: self.names.len(), guard: self.guard.min(63) })
        } else {
            Ok(())
        }
    }

    /// All `2^n` interpretations in ascending bit-pattern order
    /// (variable 0 is the leftmost, most significant bit).
    pub fn interpretations(&self) -> Result<Vec<Interpretation>> {
        self.check_guard()?;
        let n = self.names.len();
        Ok((0..1u64 << n).map(|bits| Interpretation { bits, width: n }).collect())
    }

    pub fn world_count(&self) -> Result<usize> {
        self.check_guard()?;
        Ok(1usize << self.names.len())
    }
}

/// Two registries are the same universe iff they declare the same names in
/// the same order; the guard is not part of identity.
impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

/// One truth assignment to every declared variable (a world).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Interpretation {
    bits: u64,
    width: usize,
}

impl Interpretation {
    pub fn new(bits: u64, width: usize) -> Self {
        debug_assert!(width == 64 || bits < (1u64 << width));
        Interpretation { bits, width }
    }

    pub fn from_values(values: &[bool]) -> Self {
        let mut bits = 0u64;
        for &v in values {
            bits = (bits << 1) | v as u64;
        }
        Interpretation { bits, width: values.len() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn value(&self, v: VarId) -> bool {
        debug_assert!(v.0 < self.width);
        (self.bits >> (self.width - 1 - v.0)) & 1 == 1
    }

    pub fn satisfies(&self, l: &Literal) -> bool {
        self.value(l.var) == l.positive
    }

    /// Index of this world in ascending bit-pattern order.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    /// Bit pattern, one character per variable index (1 = positive).
    pub fn pattern(&self) -> String {
        (0..self.width).map(|i| if self.value(VarId(i)) { '1' } else { '0' }).collect()
    }

    /// Literal rendering, e.g. `a !b` for the pattern `10`.
    pub fn literal_form(&self, vars: &VarSet) -> String {
        vars.ids()
            .map(|v| {
                if self.value(v) {
                    vars.name(v).to_string()
                } else {
                    format!("!{}", vars.name(v))
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A variable instance: `a` or `!a`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal {
    pub var: VarId,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: VarId) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: VarId) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(&self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    pub fn display(&self, vars: &VarSet) -> String {
        if self.positive {
            vars.name(self.var).to_string()
        } else {
            format!("!{}", vars.name(self.var))
        }
    }
}

/// A disjunction of literals in canonical form: deduplicated and sorted by
/// variable index then polarity, so equality is structural. The empty clause
/// is permitted and unsatisfiable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(mut literals: Vec<Literal>) -> Self {
        literals.sort();
        literals.dedup();
        Clause(literals)
    }

    pub fn empty() -> Self {
        Clause(Vec::new())
    }

    pub fn unit(l: Literal) -> Self {
        Clause(vec![l])
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True iff the clause contains a literal and its complement.
    pub fn is_tautology(&self) -> bool {
        self.0.windows(2).any(|w| w[0].var == w[1].var && w[0].positive != w[1].positive)
    }

    /// True iff some literal is satisfied by `w`. The empty clause is false
    /// under every interpretation.
    pub fn eval(&self, w: &Interpretation) -> bool {
        self.0.iter().any(|l| w.satisfies(l))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|l| l.var)
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.0.iter().any(|l| l.var == v)
    }

    pub fn literal_of(&self, v: VarId) -> Option<Literal> {
        self.0.iter().copied().find(|l| l.var == v)
    }

    /// Splits off the literal of `v`, returning it and the remaining clause.
    pub fn split(&self, v: VarId) -> Option<(Literal, Clause)> {
        let lit = self.literal_of(v)?;
        let rest: Vec<Literal> = self.0.iter().copied().filter(|l| l.var != v).collect();
        Some((lit, Clause(rest)))
    }

    pub fn union(&self, other: &Clause) -> Clause {
        let mut lits = self.0.clone();
        lits.extend_from_slice(&other.0);
        Clause::new(lits)
    }

    /// Unit clauses asserting the complement of each literal (the CNF of the
    /// clause's negation).
    pub fn negation_units(&self) -> Vec<Clause> {
        self.0.iter().map(|l| Clause::unit(l.negated())).collect()
    }

    pub fn display(&self, vars: &VarSet) -> String {
        if self.0.is_empty() {
            return "false".to_string();
        }
        self.0.iter().map(|l| l.display(vars)).collect::<Vec<_>>().join(" | ")
    }
}

/// A propositional formula tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    True,
    False,
    Atom(VarId),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn lit(l: Literal) -> Formula {
        if l.positive {
            Formula::Atom(l.var)
        } else {
            Formula::not(Formula::Atom(l.var))
        }
    }

    /// Conjunction of literals; `True` when empty.
    pub fn conjunction(lits: &[Literal]) -> Formula {
        lits.iter().map(|&l| Formula::lit(l)).reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Disjunction form of a clause; `False` when empty.
    pub fn from_clause(c: &Clause) -> Formula {
        c.literals().iter().map(|&l| Formula::lit(l)).reduce(Formula::or).unwrap_or(Formula::False)
    }

    pub fn eval(&self, w: &Interpretation) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(v) => w.value(*v),
            Formula::Not(f) => !f.eval(w),
            Formula::And(a, b) => a.eval(w) && b.eval(w),
            Formula::Or(a, b) => a.eval(w) || b.eval(w),
            Formula::Implies(a, b) => !a.eval(w) || b.eval(w),
        }
    }

    /// Equivalent clause set, obtained by distribution over the same
    /// variables (no auxiliary variables: the translated bases must stay in
    /// the original vocabulary). Tautological clauses are dropped, the rest
    /// canonicalized and deduplicated.
    pub fn to_cnf(&self) -> Vec<Clause> {
        let n = nnf(self, false);
        let mut out: BTreeSet<Clause> = BTreeSet::new();
        for lits in cnf_sets(&n) {
            let c = Clause::new(lits.into_iter().collect());
            if !c.is_tautology() {
                out.insert(c);
            }
        }
        out.into_iter().collect()
    }
}

enum Nnf {
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    True,
    False,
}

fn nnf(f: &Formula, neg: bool) -> Nnf {
    match f {
        Formula::True => {
            if neg {
                Nnf::False
            } else {
                Nnf::True
            }
        }
        Formula::False => {
            if neg {
                Nnf::True
            } else {
                Nnf::False
            }
        }
        Formula::Atom(v) => Nnf::Lit(Literal { var: *v, positive: !neg }),
        Formula::Not(g) => nnf(g, !neg),
        Formula::And(a, b) => {
            let (x, y) = (nnf(a, neg), nnf(b, neg));
            if neg {
                Nnf::Or(vec![x, y])
            } else {
                Nnf::And(vec![x, y])
            }
        }
        Formula::Or(a, b) => {
            let (x, y) = (nnf(a, neg), nnf(b, neg));
            if neg {
                Nnf::And(vec![x, y])
            } else {
                Nnf::Or(vec![x, y])
            }
        }
        Formula::Implies(a, b) => {
            let (x, y) = (nnf(a, !neg), nnf(b, neg));
            if neg {
                Nnf::And(vec![x, y])
            } else {
                Nnf::Or(vec![x, y])
            }
        }
    }
}

/// Clause sets as literal sets; conjunction of the returned disjunctions.
fn cnf_sets(n: &Nnf) -> Vec<BTreeSet<Literal>> {
    match n {
        Nnf::True => vec![],
        Nnf::False => vec![BTreeSet::new()],
        Nnf::Lit(l) => vec![BTreeSet::from([*l])],
        Nnf::And(xs) => xs.iter().flat_map(cnf_sets).collect(),
        Nnf::Or(xs) => {
            let mut acc: Vec<BTreeSet<Literal>> = vec![BTreeSet::new()];
            for x in xs {
                let child = cnf_sets(x);
                let mut next = Vec::with_capacity(acc.len() * child.len());
                for a in &acc {
                    for c in &child {
                        let mut u = a.clone();
                        u.extend(c.iter().copied());
                        next.push(u);
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
