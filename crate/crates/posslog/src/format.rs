//! Line-oriented text formats for bases (.pkb), networks (.pnet) and rank
//! functions (.kap). Everything the writers emit is re-readable by the
//! parsers and byte-stable across runs.
//!
//! Base files: `#` starts a comment; an optional `vars a b c` header pins
//! the variable order; each fact line is `lit | lit | ... : WEIGHT` with
//! `lit` either `name` or `!name` and WEIGHT a rational (`3/4`, `0.75`, `1`).
//! The literal list `false` denotes the empty clause. Variables not covered
//! by a header are declared in first-appearance order.
//!
//! Network files: per node a line `node NAME : PARENT PARENT ...` (colon and
//! list omitted for roots), followed by its table lines
//! `lit | parent-lit parent-lit ... : WEIGHT` (the `| ...` part omitted for
//! priors). Parents may reference nodes declared further down. Unlisted
//! entries default to 1.
//!
//! Kappa files: a `vars ...` header, then lines `BITPATTERN RANK` with RANK
//! a non-negative integer or `inf`; unlisted patterns default to `inf`.

use std::fmt::Write as _;

use crate::base::{PossBase, PossibilityDistribution};
use crate::logic::{Clause, Literal, VarSet};
use crate::network::{KappaRanking, PossNetwork};
use crate::weight::Weight;
use crate::{Error, Result};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseLine { line: line + 1, msg: msg.into() }
}

/// Non-comment content lines with their 0-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_literal(tok: &str, vars: &mut VarSet, line: usize) -> Result<Literal> {
    let (positive, name) = match tok.strip_prefix('!') {
        Some(rest) => (false, rest),
        None => (true, tok),
    };
    if name.is_empty() {
        return Err(err(line, "empty literal"));
    }
    let var = vars.declare(name)?;
    Ok(Literal { var, positive })
}

fn split_fact(line_text: &str, line: usize) -> Result<(&str, &str)> {
    let Some((lhs, rhs)) = line_text.rsplit_once(':') else {
        return Err(err(line, "expected `... : WEIGHT`"));
    };
    Ok((lhs.trim(), rhs.trim()))
}

/// Parses a base file.
pub fn parse_pkb(text: &str) -> Result<PossBase> {
    let mut vars = VarSet::new();
    let mut facts = Vec::new();
    for (i, (line, content)) in content_lines(text).into_iter().enumerate() {
        if i == 0 {
            if let Some(rest) = content.strip_prefix("vars ") {
                for name in rest.split_whitespace() {
                    vars.declare(name)?;
                }
                continue;
            }
        }
        let (lhs, rhs) = split_fact(content, line)?;
        let weight = Weight::parse(rhs)?;
        let clause = if lhs == "false" {
            Clause::empty()
        } else {
            let lits = lhs
                .split('|')
                .map(|tok| parse_literal(tok.trim(), &mut vars, line))
                .collect::<Result<Vec<_>>>()?;
            Clause::new(lits)
        };
        facts.push((clause, weight));
    }
    let mut base = PossBase::new(vars);
    for (c, w) in facts {
        base.insert(c, w);
    }
    Ok(base)
}

/// Renders a base file: `vars` header, then entries in canonical order.
pub fn write_pkb(base: &PossBase) -> String {
    let vars = base.vars();
    let mut out = String::new();
    if !vars.is_empty() {
        let names: Vec<&str> = vars.ids().map(|v| vars.name(v)).collect();
        let _ = writeln!(out, "vars {}", names.join(" "));
    }
    for (c, w) in base.iter() {
        let _ = writeln!(out, "{} : {w}", c.display(vars));
    }
    out
}

/// Parses a network file. Node declarations are collected first, so parent
/// lists may reference later nodes; table lines attach to the preceding
/// `node` line and must instantiate that node.
pub fn parse_pnet(text: &str) -> Result<PossNetwork> {
    let lines = content_lines(text);
    let mut vars = VarSet::new();
    for &(line, content) in &lines {
        if let Some(rest) = content.strip_prefix("node ") {
            let (name, _) = match rest.split_once(':') {
                Some((n, p)) => (n.trim(), p.trim()),
                None => (rest.trim(), ""),
            };
            if name.split_whitespace().count() != 1 {
                return Err(err(line, "expected `node NAME` or `node NAME : PARENTS`"));
            }
            vars.declare(name.trim())?;
        }
    }
    let mut net = PossNetwork::new(vars.clone());
    let mut current = None;
    for (line, content) in lines {
        if let Some(rest) = content.strip_prefix("node ") {
            let (name, parents_text) = match rest.split_once(':') {
                Some((n, p)) => (n.trim(), p.trim()),
                None => (rest.trim(), ""),
            };
            let node = vars.lookup(name).expect("declared in first pass");
            let parents = parents_text
                .split_whitespace()
                .map(|p| vars.lookup(p).ok_or_else(|| Error::UnknownVariable(p.to_string())))
                .collect::<Result<Vec<_>>>()?;
            net.add_node(node, parents)?;
            current = Some(node);
            continue;
        }
        let Some(node) = current else {
            return Err(err(line, "table entry before any `node` line"));
        };
        let (lhs, rhs) = split_fact(content, line)?;
        let weight = Weight::parse(rhs)?;
        let mut parts = lhs.split('|');
        let inst_tok = parts.next().unwrap().trim();
        let ctx_text = parts.next().map(str::trim);
        if parts.next().is_some() {
            return Err(err(line, "expected `lit | parent-lits : WEIGHT`"));
        }
        let inst = parse_closed_literal(inst_tok, &vars, line)?;
        if inst.var != node {
            return Err(err(
                line,
                format!("entry instantiates `{}`, not the current node", vars.name(inst.var)),
            ));
        }
        let ctx = ctx_text
            .map(|t| {
                t.split_whitespace()
                    .map(|tok| parse_closed_literal(tok, &vars, line))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?
            .unwrap_or_default();
        net.set_entry(node, inst.positive, &ctx, weight)?;
    }
    Ok(net)
}

fn parse_closed_literal(tok: &str, vars: &VarSet, line: usize) -> Result<Literal> {
    let (positive, name) = match tok.strip_prefix('!') {
        Some(rest) => (false, rest),
        None => (true, tok),
    };
    if name.is_empty() {
        return Err(err(line, "empty literal"));
    }
    let var = vars.lookup(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
    Ok(Literal { var, positive })
}

/// Renders a network file: nodes in declaration order, each followed by its
/// table entries in canonical order.
pub fn write_pnet(net: &PossNetwork) -> String {
    let vars = net.vars();
    let mut out = String::new();
    for &node in net.nodes() {
        let parents = net.parents(node);
        if parents.is_empty() {
            let _ = writeln!(out, "node {}", vars.name(node));
        } else {
            let names: Vec<&str> = parents.iter().map(|&p| vars.name(p)).collect();
            let _ = writeln!(out, "node {} : {}", vars.name(node), names.join(" "));
        }
        if let Some(table) = net.table(node) {
            for ((positive, ctx), w) in table.iter() {
                let lit = Literal { var: node, positive: *positive }.display(vars);
                if ctx.is_empty() {
                    let _ = writeln!(out, "{lit} : {w}");
                } else {
                    let ctx_text: Vec<String> = ctx.iter().map(|l| l.display(vars)).collect();
                    let _ = writeln!(out, "{lit} | {} : {w}", ctx_text.join(" "));
                }
            }
        }
    }
    out
}

/// Parses a kappa file into a ranking; unlisted patterns rank `inf`.
pub fn parse_kap(text: &str) -> Result<KappaRanking> {
    let lines = content_lines(text);
    let Some(&(first_line, header)) = lines.first() else {
        return Err(Error::ParseLine { line: 1, msg: "missing `vars` header".into() });
    };
    let Some(rest) = header.strip_prefix("vars ") else {
        return Err(err(first_line, "missing `vars` header"));
    };
    let mut vars = VarSet::new();
    for name in rest.split_whitespace() {
        vars.declare(name)?;
    }
    let n = vars.len();
    let mut ranks = vec![None; vars.world_count()?];
    for &(line, content) in &lines[1..] {
        let mut parts = content.split_whitespace();
        let (Some(pattern), Some(rank_tok), None) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(err(line, "expected `BITPATTERN RANK`"));
        };
        if pattern.len() != n || !pattern.chars().all(|c| c == '0' || c == '1') {
            return Err(err(line, format!("expected a bit pattern of length {n}")));
        }
        let index = usize::from_str_radix(pattern, 2).expect("binary digits");
        let rank = if rank_tok == "inf" {
            None
        } else {
            Some(
                rank_tok
                    .parse::<u64>()
                    .map_err(|_| err(line, "rank must be a non-negative integer or `inf`"))?,
            )
        };
        ranks[index] = rank;
    }
    KappaRanking::new(vars, ranks)
}

/// Renders a distribution listing: one line per world with bit pattern,
/// literal form, and the degree as an exact rational and a decimal.
pub fn write_distribution(d: &PossibilityDistribution) -> String {
    let vars = d.vars();
    let mut out = String::new();
    for w in d.worlds() {
        let degree = d.degree(&w);
        let _ = writeln!(
            out,
            "{} {} {} ({})",
            w.pattern(),
            w.literal_form(vars),
            degree,
            degree.to_f64()
        );
    }
    out
}
