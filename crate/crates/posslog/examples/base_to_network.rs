//! Compiling a weighted clause base into a min-based network: parent
//! discovery, the clause rewriting trace, and the recovered conditional
//! tables.

use posslog::base2graph::compile;
use posslog::format::{parse_pkb, write_pnet};

const SIGMA: &str = "vars a b c d e f\n\
                     a | b : 7/10\n\
                     !a | c | !d : 7/10\n\
                     a | c | d : 9/10\n\
                     b | c : 8/10\n\
                     !b | e : 2/10\n\
                     !d | f : 5/10\n";

fn main() -> posslog::Result<()> {
    let base = parse_pkb(SIGMA)?;
    let vars = base.vars().clone();
    let ordering: Vec<_> = vars.ids().collect();

    let (result, net) = compile(&base, &ordering)?;

    println!("rewriting steps:");
    for step in &result.trace {
        println!("  {}", step.display(&vars));
    }

    println!("\nparents:");
    for (&x, ps) in &result.parents {
        let names: Vec<&str> = ps.iter().map(|&p| vars.name(p)).collect();
        println!("  {} <- {{{}}}", vars.name(x), names.join(", "));
    }

    println!("\ncompiled network:");
    print!("{}", write_pnet(&net));

    // the compilation is exact: the min-based joint of the network is the
    // distribution of the input base, world for world
    assert_eq!(net.joint_min()?, base.pi()?);
    println!("\njoint of the network == distribution of the base: ok");
    Ok(())
}
