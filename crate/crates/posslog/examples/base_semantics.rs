//! Walkthrough of base semantics: the induced possibility distribution,
//! possibility/necessity measures, entailment, subsumption and equivalence.

use posslog::base::PossBase;
use posslog::format::{parse_pkb, write_distribution};
use posslog::parser::parse_formula_closed;
use posslog::weight::Weight;

fn main() -> posslog::Result<()> {
    // "if b then a" is certain to 3/10, "not a" to 2/10
    let sigma1 = parse_pkb("vars a b\n!b | a : 3/10\n!a : 2/10\n")?;

    let pi = sigma1.pi()?;
    println!("distribution induced by sigma1:");
    print!("{}", write_distribution(&pi));

    let a = parse_formula_closed("a", sigma1.vars())?;
    println!("\nPi(a) = {}", pi.possibility(&a));
    println!("N(!a) = {}", pi.necessity(&parse_formula_closed("!a", sigma1.vars())?));

    // syntactic entailment agrees with the necessity measure
    let na = parse_formula_closed("!a", sigma1.vars())?;
    for alpha in [Weight::new(1, 5)?, Weight::new(1, 4)?] {
        println!("sigma1 entails (!a, {alpha})? {}", sigma1.entails(&na, &alpha)?);
    }

    // a different syntactic presentation of the same distribution
    let sigma2 = parse_pkb("vars a b\nb | !a : 2/10\n!b | a : 3/10\n!b : 2/10\n")?;
    println!("\nsigma1 equivalent to sigma2? {}", sigma1.equivalent(&sigma2)?);

    // subsumed entries carry no information and can be dropped
    let redundant = parse_pkb("vars t v\nt : 3/5\nt | v : 2/5\n")?;
    let reduced = redundant.remove_subsumed()?;
    println!("\n{} entries before subsumption removal, {} after", redundant.len(), reduced.len());
    show(&reduced);
    Ok(())
}

fn show(base: &PossBase) {
    for (c, w) in base.iter() {
        println!("  {} : {}", c.display(base.vars()), w);
    }
}
