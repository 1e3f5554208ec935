//! Min-based versus product-based conditioning on the same distribution.
//!
//! Min-conditioning is purely ordinal: the best models of the evidence are
//! promoted to 1 and everything else keeps its degree. Product-conditioning
//! rescales, like probability.

use posslog::format::{parse_pnet, write_distribution};
use posslog::parser::parse_formula_closed;

fn main() -> posslog::Result<()> {
    let net = parse_pnet(
        "node a\n\
         !a : 1/4\n\
         node b : a\n\
         b | a : 1/3\n\
         b | !a : 1/3\n",
    )?;
    let vars = net.vars().clone();

    let joint = net.joint_min()?;
    println!("min-based joint:");
    print!("{}", write_distribution(&joint));

    let evidence = parse_formula_closed("!a", &vars)?;
    let b = parse_formula_closed("b", &vars)?;

    // the table said Pi(b | !a) = 1/3, but that value is incoherent with
    // Pi(!a) = 1/4, so min-conditioning pushes it up to 1
    let cond_min = joint.condition_min(&evidence)?;
    println!("\nmin: Pi(b | !a) = {}", cond_min.possibility(&b));

    // the product chain rule keeps every specified value recoverable
    let joint_prod = net.joint_product()?;
    let cond_prod = joint_prod.condition_product(&evidence)?;
    println!("product: Pi(b | !a) = {}", cond_prod.possibility(&b));

    // impossible evidence is rejected rather than silently normalized
    let net2 = parse_pnet("node a\na : 0\n")?;
    let d = net2.joint_min()?;
    let a = parse_formula_closed("a", net2.vars())?;
    println!("\nconditioning on impossible evidence: {:?}", d.condition_min(&a).err());
    Ok(())
}
