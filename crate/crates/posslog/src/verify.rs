//! Randomized and exhaustive oracle checks: every structural claim the
//! library relies on (encoding equalities, conditioning recovery, graph
//! independence, compile round-trips, combination algebra) is validated by
//! brute-force world enumeration on seeded random instances.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{PossBase, PossibilityDistribution};
use crate::base2graph::compile;
use crate::format::{write_pkb, write_pnet};
use crate::graph2base::{combine_product, encode_min, encode_product};
use crate::logic::{Clause, Formula, Literal, VarId, VarSet};
use crate::network::{PossNetwork, Triple};
use crate::weight::Weight;
use crate::Result;

/// Parameters of the random instance generators. All generation is a
/// deterministic function of `seed`.
#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Upper bound on the number of variables per instance.
    pub vars: usize,
    /// Upper bound on parents per node (networks only).
    pub max_parents: usize,
    /// Upper bound on generated weight denominators.
    pub max_denominator: u64,
    /// Upper bound on clauses per base (bases only).
    pub max_clauses: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { seed: 0, vars: 5, max_parents: 3, max_denominator: 8, max_clauses: 8 }
    }
}

/// One counterexample: the instance rendered in its file format so it can be
/// replayed, plus the expected and observed values.
#[derive(Clone, Debug)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of a check run; reproducible from `(seed, config)`.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub seed: u64,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: {} on {} instance(s), seed {}, {:?}\n",
            self.name,
            if self.passed() { "pass" } else { "FAIL" },
            self.instances,
            self.seed,
            self.elapsed
        );
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!(
                "  failure: expected {}, got {}\n  instance:\n{}\n",
                f.expected,
                f.actual,
                f.instance.trim_end()
            ));
        }
        out
    }
}

/// The available checks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    EncodeMin,
    EncodeProduct,
    RecoveryProduct,
    RecoveryMin,
    Independence,
    Roundtrip,
    CstarAlgebra,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::EncodeMin,
        CheckKind::EncodeProduct,
        CheckKind::RecoveryProduct,
        CheckKind::RecoveryMin,
        CheckKind::Independence,
        CheckKind::Roundtrip,
        CheckKind::CstarAlgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::EncodeMin => "encode-min",
            CheckKind::EncodeProduct => "encode-product",
            CheckKind::RecoveryProduct => "recovery-product",
            CheckKind::RecoveryMin => "recovery-min",
            CheckKind::Independence => "independence",
            CheckKind::Roundtrip => "roundtrip",
            CheckKind::CstarAlgebra => "cstar-algebra",
        }
    }

    pub fn parse(name: &str) -> Option<CheckKind> {
        CheckKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    // independent per-trial streams from the master seed
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(trial))
}

fn random_weight(rng: &mut ChaCha8Rng, max_den: u64, allow_zero: bool) -> Weight {
    let den = rng.gen_range(1..=max_den.max(1));
    let lo = if allow_zero { 0 } else { 1 };
    let num = rng.gen_range(lo..=den);
    Weight::new(num as i64, den as i64).expect("generated weight in range")
}

fn generated_vars(rng: &mut ChaCha8Rng, bound: usize) -> VarSet {
    let n = rng.gen_range(1..=bound.max(1));
    let mut vars = VarSet::new();
    for i in 0..n {
        vars.declare(&format!("v{i}")).expect("generated name is valid");
    }
    vars
}

/// A random normalized acyclic network: parents drawn among earlier nodes,
/// each table row keeps at least one degree-1 entry, and the other polarity
/// receives a random degree that may be 0.
pub fn random_network(cfg: &GeneratorConfig) -> Result<PossNetwork> {
    let mut rng = trial_rng(cfg.seed, 0);
    random_network_with(cfg, &mut rng)
}

fn random_network_with(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<PossNetwork> {
    let vars = generated_vars(rng, cfg.vars);
    let ids: Vec<VarId> = vars.ids().collect();
    let mut net = PossNetwork::new(vars);
    for (i, &node) in ids.iter().enumerate() {
        let k = rng.gen_range(0..=cfg.max_parents.min(i));
        let mut pool = ids[..i].to_vec();
        for j in 0..k {
            let pick = rng.gen_range(j..pool.len());
            pool.swap(j, pick);
        }
        let mut parents = pool[..k].to_vec();
        parents.sort();
        net.add_node(node, parents.clone())?;
        for ctx in PossNetwork::instantiations(&parents) {
            if rng.gen_bool(0.3) {
                continue; // whole row stays at 1
            }
            let low = rng.gen_bool(0.5);
            let w = random_weight(rng, cfg.max_denominator, true);
            if !w.is_one() {
                net.set_entry(node, low, &ctx, w)?;
            }
        }
    }
    Ok(net)
}

/// A random classically consistent clausal base: non-tautological clauses
/// with weights in `(0, 1]`. Inconsistent draws are resampled with a salted
/// seed, so the result is still a deterministic function of the input seed.
pub fn random_base(cfg: &GeneratorConfig) -> Result<PossBase> {
    let mut rng = trial_rng(cfg.seed, 0);
    random_base_with(cfg, &mut rng)
}

fn random_base_with(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<PossBase> {
    loop {
        let vars = generated_vars(rng, cfg.vars);
        let n = vars.len();
        let m = rng.gen_range(0..=cfg.max_clauses);
        let mut base = PossBase::new(vars);
        for _ in 0..m {
            let width = rng.gen_range(1..=n.min(3));
            let mut pool: Vec<usize> = (0..n).collect();
            for j in 0..width {
                let pick = rng.gen_range(j..pool.len());
                pool.swap(j, pick);
            }
            let lits: Vec<Literal> = pool[..width]
                .iter()
                .map(|&v| Literal { var: VarId(v), positive: rng.gen_bool(0.5) })
                .collect();
            base.insert(Clause::new(lits), random_weight(rng, cfg.max_denominator, false));
        }
        let clauses: Vec<Clause> = base.iter().map(|(c, _)| c.clone()).collect();
        if crate::sat::is_consistent(&clauses, base.vars())? {
            return Ok(base);
        }
    }
}

fn distribution_failure(
    net_text: String,
    expected: &PossibilityDistribution,
    actual: &PossibilityDistribution,
) -> Failure {
    let worlds = expected.worlds();
    let bad = worlds
        .iter()
        .find(|w| expected.degree(w) != actual.degree(w))
        .expect("distributions differ");
    Failure {
        instance: net_text,
        expected: format!("degree {} at world {}", expected.degree(bad), bad.pattern()),
        actual: format!("degree {}", actual.degree(bad)),
    }
}

/// Min-conditional possibility of `instance` given `context`, read off a
/// joint distribution.
fn min_conditional(d: &PossibilityDistribution, t: &Triple) -> Weight {
    let mut lits = t.context.clone();
    lits.push(t.instance);
    let joint = d.possibility_of_lits(&lits);
    let ctx = d.possibility_of_lits(&t.context);
    if joint == ctx {
        Weight::one()
    } else {
        joint
    }
}

fn check_network_instance(
    kind: CheckKind,
    net: &PossNetwork,
    failures: &mut Vec<Failure>,
    notes: &mut Vec<String>,
) -> Result<()> {
    match kind {
        CheckKind::EncodeMin => {
            let expected = net.joint_min()?;
            let actual = encode_min(net).pi()?;
            if expected != actual {
                failures.push(distribution_failure(write_pnet(net), &expected, &actual));
            }
        }
        CheckKind::EncodeProduct => {
            let expected = net.joint_product()?;
            let actual = encode_product(net)?.pi()?;
            if expected != actual {
                failures.push(distribution_failure(write_pnet(net), &expected, &actual));
            }
        }
        CheckKind::RecoveryProduct => {
            let joint = net.joint_product()?;
            for t in net.triples() {
                let ctx = joint.possibility_of_lits(&t.context);
                if ctx.is_zero() {
                    notes.push(format!(
                        "context of {} has possibility 0; entry unconstrained",
                        t.instance.display(net.vars())
                    ));
                    continue;
                }
                let mut lits = t.context.clone();
                lits.push(t.instance);
                let recovered = joint.possibility_of_lits(&lits).div_by(&ctx);
                if recovered != t.degree {
                    failures.push(Failure {
                        instance: write_pnet(net),
                        expected: format!("entry {}", t.degree),
                        actual: format!("recovered {recovered}"),
                    });
                }
            }
        }
        CheckKind::RecoveryMin => {
            let joint = net.joint_min()?;
            for t in net.triples() {
                let recovered = min_conditional(&joint, &t);
                if recovered == t.degree {
                    continue;
                }
                if recovered.is_one() {
                    notes.push(format!(
                        "entry for {} degraded: {} -> 1",
                        t.instance.display(net.vars()),
                        t.degree
                    ));
                } else {
                    failures.push(Failure {
                        instance: write_pnet(net),
                        expected: format!("entry {} or 1", t.degree),
                        actual: format!("recovered {recovered}"),
                    });
                }
            }
        }
        CheckKind::Independence => check_independence_instance(net, failures, notes)?,
        CheckKind::Roundtrip | CheckKind::CstarAlgebra => {
            unreachable!("base checks handled separately")
        }
    }
    Ok(())
}

/// All strict descendants of each node.
fn descendants(net: &PossNetwork) -> Vec<BTreeSet<VarId>> {
    let n = net.vars().len();
    let mut desc: Vec<BTreeSet<VarId>> = vec![BTreeSet::new(); n];
    // repeated relaxation; the graph is tiny
    for _ in 0..n {
        for &child in net.nodes() {
            for &p in net.parents(child) {
                let mut grow: BTreeSet<VarId> = desc[child.0].clone();
                grow.insert(child);
                desc[p.0].extend(grow);
            }
        }
    }
    desc
}

fn check_independence_instance(
    net: &PossNetwork,
    failures: &mut Vec<Failure>,
    notes: &mut Vec<String>,
) -> Result<()> {
    let joint = net.joint_min()?;
    let desc = descendants(net);
    for &x in net.nodes() {
        let parents = net.parents(x).to_vec();
        let blocked: BTreeSet<VarId> = parents
            .iter()
            .copied()
            .chain(desc[x.0].iter().copied())
            .chain([x])
            .collect();
        for &y in net.nodes() {
            if blocked.contains(&y) || parents.contains(&y) {
                continue;
            }
            for ctx in PossNetwork::instantiations(&parents) {
                if joint.possibility_of_lits(&ctx).is_zero() {
                    notes.push("context with possibility 0 skipped".into());
                    continue;
                }
                for xv in [false, true] {
                    for yv in [false, true] {
                        let lx = Literal { var: x, positive: xv };
                        let ly = Literal { var: y, positive: yv };
                        let joint_xy = {
                            let mut lits = ctx.clone();
                            lits.push(lx);
                            lits.push(ly);
                            let p_all = joint.possibility_of_lits(&lits);
                            let p_ctx = joint.possibility_of_lits(&ctx);
                            if p_all == p_ctx {
                                Weight::one()
                            } else {
                                p_all
                            }
                        };
                        let px = min_conditional(
                            &joint,
                            &Triple { instance: lx, context: ctx.clone(), degree: Weight::zero() },
                        );
                        let py = min_conditional(
                            &joint,
                            &Triple { instance: ly, context: ctx.clone(), degree: Weight::zero() },
                        );
                        let expected = px.clone().min(py.clone());
                        if joint_xy != expected {
                            failures.push(Failure {
                                instance: write_pnet(net),
                                expected: format!(
                                    "pi({}, {} | ctx) = min({px}, {py})",
                                    lx.display(net.vars()),
                                    ly.display(net.vars())
                                ),
                                actual: format!("{joint_xy}"),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_roundtrip_instance(
    base: &PossBase,
    ordering: &[VarId],
    failures: &mut Vec<Failure>,
    _notes: &mut Vec<String>,
) -> Result<()> {
    let expected = base.pi()?;
    let (_, net) = compile(base, ordering)?;
    let actual = net.joint_min()?;
    if expected != actual {
        failures.push(distribution_failure(write_pkb(base), &expected, &actual));
        return Ok(());
    }
    // compiled tables must be recovered exactly, never degraded
    for t in net.triples() {
        let recovered = min_conditional(&actual, &t);
        if recovered != t.degree {
            failures.push(Failure {
                instance: write_pkb(base),
                expected: format!("entry {}", t.degree),
                actual: format!("recovered {recovered}"),
            });
        }
    }
    Ok(())
}

fn check_cstar_instance(
    bases: &[PossBase; 3],
    failures: &mut Vec<Failure>,
    _notes: &mut Vec<String>,
) -> Result<()> {
    let [s1, s2, s3] = bases;
    let instance = || format!("{}\n{}\n{}", write_pkb(s1), write_pkb(s2), write_pkb(s3));
    let ab = combine_product(s1, s2)?;
    let ba = combine_product(s2, s1)?;
    if !ab.equivalent(&ba)? {
        failures.push(Failure {
            instance: instance(),
            expected: "commutativity of the product combination".into(),
            actual: "pi(S1 x S2) != pi(S2 x S1)".into(),
        });
    }
    let left = combine_product(&ab, s3)?;
    let right = combine_product(s1, &combine_product(s2, s3)?)?;
    if !left.equivalent(&right)? {
        failures.push(Failure {
            instance: instance(),
            expected: "associativity of the product combination".into(),
            actual: "pi((S1 x S2) x S3) != pi(S1 x (S2 x S3))".into(),
        });
    }
    // the combined base induces the pointwise product of the distributions
    let direct = s1.pi()?.pointwise_product(&s2.pi()?)?;
    if ab.pi()? != direct {
        failures.push(Failure {
            instance: instance(),
            expected: "pointwise product semantics".into(),
            actual: "combined base induces a different distribution".into(),
        });
    }
    Ok(())
}

/// Runs `trials` seeded instances of one check. Network checks draw random
/// networks; `roundtrip` draws random bases with three random orderings
/// each; `cstar-algebra` draws random base triples over a shared vocabulary.
pub fn run_check(kind: CheckKind, cfg: &GeneratorConfig, trials: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut instances = 0;
    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, trial as u64 + 1);
        match kind {
            CheckKind::Roundtrip => {
                let base = random_base_with(cfg, &mut rng)?;
                for _ in 0..3 {
                    let mut ordering: Vec<VarId> = base.vars().ids().collect();
                    for j in 0..ordering.len() {
                        let pick = rng.gen_range(j..ordering.len());
                        ordering.swap(j, pick);
                    }
                    check_roundtrip_instance(&base, &ordering, &mut failures, &mut notes)?;
                    instances += 1;
                }
            }
            CheckKind::CstarAlgebra => {
                let vars = generated_vars(&mut rng, cfg.vars);
                let draw = |rng: &mut ChaCha8Rng| -> Result<PossBase> {
                    let n = vars.len();
                    let m = rng.gen_range(0..=cfg.max_clauses);
                    let mut b = PossBase::new(vars.clone());
                    for _ in 0..m {
                        let width = rng.gen_range(1..=n.min(3));
                        let mut pool: Vec<usize> = (0..n).collect();
                        for j in 0..width {
                            let pick = rng.gen_range(j..pool.len());
                            pool.swap(j, pick);
                        }
                        let lits: Vec<Literal> = pool[..width]
                            .iter()
                            .map(|&v| Literal { var: VarId(v), positive: rng.gen_bool(0.5) })
                            .collect();
                        b.insert(
                            Clause::new(lits),
                            random_weight(rng, cfg.max_denominator, false),
                        );
                    }
                    Ok(b)
                };
                let bases = [draw(&mut rng)?, draw(&mut rng)?, draw(&mut rng)?];
                check_cstar_instance(&bases, &mut failures, &mut notes)?;
                instances += 1;
            }
            _ => {
                let net = random_network_with(cfg, &mut rng)?;
                check_network_instance(kind, &net, &mut failures, &mut notes)?;
                instances += 1;
            }
        }
    }
    notes.dedup();
    Ok(CheckReport {
        name: kind.name().to_string(),
        instances,
        failures,
        notes,
        seed: cfg.seed,
        elapsed: start.elapsed(),
    })
}

fn single_report(
    name: &str,
    body: impl FnOnce(&mut Vec<Failure>, &mut Vec<String>) -> Result<()>,
) -> Result<CheckReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    body(&mut failures, &mut notes)?;
    Ok(CheckReport {
        name: name.to_string(),
        instances: 1,
        failures,
        notes,
        seed: 0,
        elapsed: start.elapsed(),
    })
}

pub fn check_encode_min(net: &PossNetwork) -> Result<CheckReport> {
    single_report("encode-min", |f, n| check_network_instance(CheckKind::EncodeMin, net, f, n))
}

pub fn check_encode_product(net: &PossNetwork) -> Result<CheckReport> {
    single_report("encode-product", |f, n| {
        check_network_instance(CheckKind::EncodeProduct, net, f, n)
    })
}

pub fn check_recovery_product(net: &PossNetwork) -> Result<CheckReport> {
    single_report("recovery-product", |f, n| {
        check_network_instance(CheckKind::RecoveryProduct, net, f, n)
    })
}

pub fn check_recovery_min(net: &PossNetwork) -> Result<CheckReport> {
    single_report("recovery-min", |f, n| {
        check_network_instance(CheckKind::RecoveryMin, net, f, n)
    })
}

pub fn check_independence(net: &PossNetwork) -> Result<CheckReport> {
    single_report("independence", |f, n| {
        check_network_instance(CheckKind::Independence, net, f, n)
    })
}

pub fn check_roundtrip(base: &PossBase, ordering: &[VarId]) -> Result<CheckReport> {
    single_report("roundtrip", |f, n| check_roundtrip_instance(base, ordering, f, n))
}

pub fn check_cstar_algebra(bases: &[PossBase; 3]) -> Result<CheckReport> {
    single_report("cstar-algebra", |f, n| check_cstar_instance(bases, f, n))
}

/// Duality and decomposition laws of the measures, checked exhaustively over
/// every semantic class of formulas on the base's variables (up to 3
/// variables; beyond that the class count explodes). Both measures depend
/// only on the semantic class, so each is evaluated once per class on the
/// canonical representative; disjunction and conjunction of classes are
/// their model-mask union and intersection.
pub fn check_measure_laws(base: &PossBase) -> Result<CheckReport> {
    single_report("measure-laws", |failures, _| {
        let d = base.pi()?;
        let vars = base.vars();
        if vars.len() > 3 {
            return Err(crate::Error::Invalid(
                "exhaustive formula enumeration is limited to 3 variables".into(),
            ));
        }
        let classes = all_formula_classes(vars);
        let full = (classes.len() - 1) as u64;
        let pi: Vec<Weight> = classes.iter().map(|(_, f)| d.possibility(f)).collect();
        let nec: Vec<Weight> = classes.iter().map(|(_, f)| d.necessity(f)).collect();
        for (mask_f, _) in &classes {
            let f = *mask_f as usize;
            if nec[f] != pi[(full ^ mask_f) as usize].complement() {
                failures.push(Failure {
                    instance: write_pkb(base),
                    expected: "N(f) = 1 - Pi(!f)".into(),
                    actual: format!("violated for formula class {mask_f:#b}"),
                });
            }
            for (mask_g, _) in &classes {
                let g = *mask_g as usize;
                let pi_or = &pi[(mask_f | mask_g) as usize];
                let pi_max = pi[f].clone().max(pi[g].clone());
                if *pi_or != pi_max {
                    failures.push(Failure {
                        instance: write_pkb(base),
                        expected: "Pi(f | g) = max(Pi(f), Pi(g))".into(),
                        actual: format!("violated for classes {mask_f:#b}, {mask_g:#b}"),
                    });
                }
                let n_and = &nec[(mask_f & mask_g) as usize];
                let n_min = nec[f].clone().min(nec[g].clone());
                if *n_and != n_min {
                    failures.push(Failure {
                        instance: write_pkb(base),
                        expected: "N(f & g) = min(N(f), N(g))".into(),
                        actual: format!("violated for classes {mask_f:#b}, {mask_g:#b}"),
                    });
                }
            }
        }
        Ok(())
    })
}

/// One representative formula per semantic equivalence class over the
/// variables of `vars` (2^(2^n) classes), built as a disjunction of minterms
/// from the class's model bitmask.
pub fn all_formula_classes(vars: &VarSet) -> Vec<(u64, Formula)> {
    let worlds = vars.interpretations().expect("small universe");
    let n = worlds.len();
    (0..1u64 << n)
        .map(|mask| {
            let f = worlds
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, w)| {
                    let lits: Vec<Literal> = vars
                        .ids()
                        .map(|v| Literal { var: v, positive: w.value(v) })
                        .collect();
                    Formula::conjunction(&lits)
                })
                .reduce(Formula::or)
                .unwrap_or(Formula::False);
            (mask, f)
        })
        .collect()
}

/// Strict-subsumption exactness: when no entry is strictly subsumed, the
/// necessity of every entry equals its weight exactly.
pub fn check_weight_exactness(base: &PossBase) -> Result<CheckReport> {
    single_report("weight-exactness", |failures, notes| {
        let mut strict = Vec::new();
        for (c, _) in base.iter() {
            if base.is_strictly_subsumed(c)? {
                strict.push(c.clone());
            }
        }
        if !strict.is_empty() {
            notes.push(format!("{} strictly subsumed entries excluded", strict.len()));
        }
        let d = base.pi()?;
        for (c, w) in base.iter() {
            if strict.contains(c) {
                continue;
            }
            let n = d.necessity(&Formula::from_clause(c));
            if &n != w {
                failures.push(Failure {
                    instance: write_pkb(base),
                    expected: format!("N({}) = {w}", c.display(base.vars())),
                    actual: format!("{n}"),
                });
            }
        }
        Ok(())
    })
}
