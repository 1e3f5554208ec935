//! Integer-ranked implausibility (kappa) functions and their possibility
//! scale: rank r maps to degree 2^-r, `inf` to 0.

use posslog::format::{parse_kap, write_distribution};
use posslog::parser::parse_formula_closed;

fn main() -> posslog::Result<()> {
    // unlisted worlds default to rank inf (impossible)
    let kappa = parse_kap(
        "vars a b\n\
         00 0\n\
         01 2\n\
         10 1\n",
    )?;

    println!("possibility scale of the ranking:");
    print!("{}", write_distribution(&kappa.to_possibility()));

    // kappa conditioning: subtract the rank of the evidence, drop the rest
    let a = parse_formula_closed("!a & b", kappa.vars())?;
    let cond = kappa.condition(&a)?;
    println!("\nafter conditioning on (!a & b):");
    print!("{}", write_distribution(&cond.to_possibility()));
    Ok(())
}
