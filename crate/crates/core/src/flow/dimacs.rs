use std::io::{BufRead, Write};

use super::network::FlowNetwork;
use super::FlowError;

/// Writes `net` in DIMACS max-flow format with 1-indexed nodes.
///
/// The fixed-point scale goes in a leading `c scale` comment so that
/// [`read_dimacs`] can restore real-valued cut values.
pub fn write_dimacs(net: &FlowNetwork, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "c scale {}", net.scale())?;
    writeln!(out, "p max {} {}", net.node_count(), net.arc_count())?;
    writeln!(out, "n {} s", net.source() + 1)?;
    writeln!(out, "n {} t", net.sink() + 1)?;
    for (u, v, c) in net.arcs() {
        writeln!(out, "a {} {} {}", u + 1, v + 1, c)?;
    }
    Ok(())
}

/// Reads a DIMACS max-flow file. A missing `c scale` comment means scale 1.
pub fn read_dimacs(input: impl BufRead) -> Result<FlowNetwork, FlowError> {
    let mut scale = 1u64;
    let mut header: Option<(usize, usize)> = None;
    let mut source = None;
    let mut sink = None;
    let mut arcs = Vec::new();

    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let err = |msg: String| FlowError::Parse { line: lineno, msg };
        let mut fields = line.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        let rest: Vec<&str> = fields.collect();
        match tag {
            "c" => {
                if rest.first() == Some(&"scale") {
                    scale = parse(rest.get(1), "scale").map_err(err)?;
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if rest.first() != Some(&"max") || rest.len() != 3 {
                    return Err(err("expected `p max <nodes> <arcs>`".into()));
                }
                let n = parse(rest.get(1), "node count").map_err(err)?;
                let m = parse(rest.get(2), "arc count").map_err(err)?;
                header = Some((n, m));
            }
            "n" => {
                let (n, _) = header.ok_or_else(|| err("node line before problem line".into()))?;
                let id: usize = parse(rest.first(), "node id").map_err(err)?;
                if id == 0 || id > n {
                    return Err(err(format!("node {id} is outside 1..={n}")));
                }
                match rest.get(1).copied() {
                    Some("s") => source = Some(id - 1),
                    Some("t") => sink = Some(id - 1),
                    other => return Err(err(format!("expected `s` or `t`, got {other:?}"))),
                }
            }
            "a" => {
                let (n, _) = header.ok_or_else(|| err("arc line before problem line".into()))?;
                if rest.len() != 3 {
                    return Err(err("expected `a <tail> <head> <capacity>`".into()));
                }
                let u: usize = parse(rest.first(), "tail").map_err(err)?;
                let v: usize = parse(rest.get(1), "head").map_err(err)?;
                let c: i64 = parse(rest.get(2), "capacity").map_err(err)?;
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(err(format!("node {id} is outside 1..={n}")));
                    }
                }
                arcs.push((u - 1, v - 1, c));
            }
            other => return Err(err(format!("unknown line type `{other}`"))),
        }
    }

    let eof = |msg: &str| FlowError::Parse {
        line: 0,
        msg: msg.into(),
    };
    let (n, m) = header.ok_or_else(|| eof("missing problem line"))?;
    if arcs.len() != m {
        return Err(eof(&format!(
            "header declares {m} arcs, found {}",
            arcs.len()
        )));
    }
    let source = source.ok_or_else(|| eof("missing source line"))?;
    let sink = sink.ok_or_else(|| eof("missing sink line"))?;
    FlowNetwork::from_arcs(n, source, sink, scale, arcs)
}

fn parse<T: std::str::FromStr>(field: Option<&&str>, what: &str) -> Result<T, String> {
    let s = field.ok_or_else(|| format!("missing {what}"))?;
    s.parse().map_err(|_| format!("invalid {what} `{s}`"))
}
