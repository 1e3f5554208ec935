//! Exact consistency checking for clause sets.
//!
//! A small DPLL search with unit propagation; complete, so it agrees with
//! exhaustive enumeration on every instance. The enumeration guard of the
//! variable registry is still enforced so callers get the same failure mode
//! everywhere.

use crate::logic::{Clause, VarSet};
use crate::Result;

/// True iff some interpretation satisfies every clause.
pub fn is_consistent(clauses: &[Clause], vars: &VarSet) -> Result<bool> {
    vars.check_guard()?;
    Ok(satisfiable(clauses, vars.len()))
}

/// Complete satisfiability search; no guard.
pub(crate) fn satisfiable(clauses: &[Clause], nvars: usize) -> bool {
    if clauses.iter().any(|c| c.is_empty()) {
        return false;
    }
    let assign = vec![None; nvars];
    solve(clauses, assign)
}

fn solve(clauses: &[Clause], mut assign: Vec<Option<bool>>) -> bool {
    // unit propagation to fixpoint
    loop {
        let mut changed = false;
        let mut all_sat = true;
        for c in clauses {
            let mut sat = false;
            let mut unassigned = None;
            let mut unassigned_count = 0;
            for l in c.literals() {
                match assign[l.var.0] {
                    Some(v) if v == l.positive => {
                        sat = true;
                        break;
                    }
                    None => {
                        unassigned = Some(l);
                        unassigned_count += 1;
                    }
                    _ => {}
                }
            }
            if sat {
                continue;
            }
            all_sat = false;
            match unassigned_count {
                0 => return false,
                1 => {
                    let l = unassigned.unwrap();
                    assign[l.var.0] = Some(l.positive);
                    changed = true;
                }
                _ => {}
            }
        }
        if all_sat {
            return true;
        }
        if !changed {
            break;
        }
    }
    // branch on the first unassigned variable of an unsatisfied clause
    let branch = clauses
        .iter()
        .filter(|c| !c.literals().iter().any(|l| assign[l.var.0] == Some(l.positive)))
        .flat_map(|c| c.literals())
        .find(|l| assign[l.var.0].is_none())
        .map(|l| l.var.0);
    let Some(v) = branch else {
        // every clause satisfied or no free variable left in an unsatisfied
        // clause (the latter would have returned false above)
        return true;
    };
    for val in [true, false] {
        let mut next = assign.clone();
        next[v] = Some(val);
        if solve(clauses, next) {
            return true;
        }
    }
    false
}
