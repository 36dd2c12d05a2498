//! Plain-text instance files.
//!
//! ```text
//! # comment
//! n R
//! <penalty> <k> v1 v2 ... vk
//! ```
//!
//! Node ids are 1-indexed. Penalties are `dlin(d)`, `clique`, `sqrt`,
//! `pow(p)`, `vals(g0,...,gk)` or `symvals(h0,...,hr)`.

use std::fmt;

use sparse_card::dsfm::{shift_to_nonnegative, Component, DsfmInstance, PenaltySpec};

use crate::error::CliError;

/// One component as written in the file.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentLine {
    pub penalty: PenaltySpec,
    /// 0-indexed, in file order.
    pub nodes: Vec<usize>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub n: usize,
    pub components: Vec<ComponentLine>,
}

impl InstanceFile {
    /// The instance to solve, with explicit penalties lifted to be
    /// nonnegative, and the total constant that lifting added.
    pub fn to_instance(&self) -> Result<(DsfmInstance, f64), CliError> {
        let mut offset = 0.0;
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let (penalty, lift) = shift_to_nonnegative(&c.penalty);
            offset += lift;
            let mut support = c.nodes.clone();
            support.sort_unstable();
            components.push(Component::new(support, penalty));
        }
        let inst = DsfmInstance::new(self.n, components).map_err(|e| {
            // point at the offending line when the message names a component
            let text = e.to_string();
            let line = text
                .strip_prefix("component ")
                .and_then(|rest| rest.split(':').next())
                .and_then(|idx| idx.parse::<usize>().ok())
                .and_then(|idx| self.components.get(idx))
                .map(|c| c.line);
            match line {
                Some(line) => CliError::Validation(format!("line {line}: {text}")),
                None => CliError::from(e),
            }
        })?;
        Ok((inst, offset))
    }
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.components.len())?;
        for c in &self.components {
            write!(f, "{} {}", PenaltyText(&c.penalty), c.nodes.len())?;
            for v in &c.nodes {
                write!(f, " {}", v + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Writes a penalty in the file syntax.
pub struct PenaltyText<'a>(pub &'a PenaltySpec);

impl fmt::Display for PenaltyText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, v: &[f64]| {
            let items: Vec<String> = v.iter().map(f64::to_string).collect();
            write!(f, "{name}({})", items.join(","))
        };
        match self.0 {
            PenaltySpec::DeltaLinear(d) => write!(f, "dlin({d})"),
            PenaltySpec::Clique => write!(f, "clique"),
            PenaltySpec::Sqrt => write!(f, "sqrt"),
            PenaltySpec::Pow(p) => write!(f, "pow({p})"),
            PenaltySpec::ExplicitAsym(v) => list(f, "vals", v),
            PenaltySpec::ExplicitSym(v) => list(f, "symvals", v),
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> CliError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.line,
            column: self.text[..pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn skip_space(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_space();
        self.pos == self.text.len()
    }

    /// The next run of characters up to whitespace, `(`, `)` or `,`.
    fn word(&mut self) -> (usize, &'a str) {
        self.skip_space();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "(),".contains(c))
            .unwrap_or(rest.len());
        self.pos += len;
        (start, &rest[..len])
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_space();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self, what: &str) -> Result<usize, CliError> {
        let (start, w) = self.word();
        if w.is_empty() {
            return Err(self.error_at(start, format!("expected {what}")));
        }
        w.parse()
            .map_err(|_| self.error_at(start, format!("expected {what}, found `{w}`")))
    }

    fn number(&mut self) -> Result<f64, CliError> {
        let (start, w) = self.word();
        match w.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(self.error_at(start, format!("expected a finite number, found `{w}`"))),
        }
    }

    fn arguments(&mut self, name: &str) -> Result<Vec<f64>, CliError> {
        if !self.eat('(') {
            return Err(self.error(format!("`{name}` needs arguments in parentheses")));
        }
        let mut args = Vec::new();
        if self.eat(')') {
            return Ok(args);
        }
        loop {
            args.push(self.number()?);
            if self.eat(')') {
                return Ok(args);
            }
            if !self.eat(',') {
                return Err(self.error("expected `,` or `)`"));
            }
        }
    }

    fn penalty(&mut self) -> Result<PenaltySpec, CliError> {
        let (start, name) = self.word();
        let single = |cur: &mut Self, args: Vec<f64>| -> Result<f64, CliError> {
            match args[..] {
                [x] => Ok(x),
                _ => Err(cur.error_at(start, format!("`{name}` takes one argument"))),
            }
        };
        let spec = match name {
            "clique" => PenaltySpec::Clique,
            "sqrt" => PenaltySpec::Sqrt,
            "dlin" => {
                let args = self.arguments(name)?;
                PenaltySpec::DeltaLinear(single(self, args)?)
            }
            "pow" => {
                let args = self.arguments(name)?;
                PenaltySpec::Pow(single(self, args)?)
            }
            "vals" => PenaltySpec::ExplicitAsym(self.arguments(name)?),
            "symvals" => PenaltySpec::ExplicitSym(self.arguments(name)?),
            "" => return Err(self.error_at(start, "expected a penalty")),
            other => {
                return Err(self.error_at(
                    start,
                    format!(
                    "unknown penalty `{other}`; expected dlin, clique, sqrt, pow, vals or symvals"
                ),
                ))
            }
        };
        Ok(spec)
    }
}

/// Parses a penalty on its own, as given on the command line.
pub fn parse_penalty(text: &str) -> Result<PenaltySpec, CliError> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line: 1,
    };
    let spec = cur.penalty()?;
    if !cur.at_end() {
        return Err(cur.error("unexpected text after the penalty"));
    }
    Ok(spec)
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (line, header) = lines.next().ok_or(CliError::Parse {
        line: 1,
        column: 1,
        message: "missing header `n R`".into(),
    })?;
    let mut cur = Cursor {
        text: header,
        pos: 0,
        line,
    };
    let n = cur.integer("node count n")?;
    let declared = cur.integer("component count R")?;
    if !cur.at_end() {
        return Err(cur.error("header has more than two fields"));
    }

    let mut components = Vec::with_capacity(declared);
    for (line, text) in lines {
        let mut cur = Cursor { text, pos: 0, line };
        let spec_at = {
            cur.skip_space();
            cur.column()
        };
        let penalty = cur.penalty()?;
        let k = cur.integer("support size k")?;
        let mut nodes = Vec::with_capacity(k);
        let mut seen = std::collections::HashSet::with_capacity(k);
        while !cur.at_end() {
            let (start, w) = cur.word();
            let v: usize = w.parse().map_err(|_| {
                if w.is_empty() {
                    cur.error_at(start, "unexpected punctuation")
                } else {
                    cur.error_at(start, format!("expected a node id, found `{w}`"))
                }
            })?;
            if v == 0 || v > n {
                return Err(cur.error_at(start, format!("node {v} is outside 1..={n}")));
            }
            if !seen.insert(v) {
                return Err(cur.error_at(start, format!("node {v} is listed twice")));
            }
            nodes.push(v - 1);
        }
        if nodes.len() != k {
            return Err(cur.error(format!("expected {k} node ids, found {}", nodes.len())));
        }
        if k == 0 {
            return Err(cur.error("a component needs at least one node"));
        }
        let (lifted, _) = shift_to_nonnegative(&penalty);
        lifted.validate(k).map_err(|e| CliError::Parse {
            line,
            column: spec_at,
            message: e.to_string(),
        })?;
        components.push(ComponentLine {
            penalty,
            nodes,
            line,
        });
    }
    if components.len() != declared {
        return Err(CliError::Parse {
            line,
            column: 1,
            message: format!(
                "header declares {declared} components, found {}",
                components.len()
            ),
        });
    }
    Ok(InstanceFile { n, components })
}
