//! Text format for ring definitions and corpora.
//!
//! A ring file is a sequence of `key value` lines; `#` starts a comment.
//! A corpus is the same format with `instance NAME` headers separating
//! blocks (a single-ring file may omit the header).
//!
//! ```text
//! instance example_depth1
//! field Q                      # or: field Fp 32003
//! vars x y z w
//! relations x*y^3, x*z, x*w
//! ideal Q = x - y, x - z, x - w
//! expect d = 3
//! expect depth_class = lt
//! expect e = 1,0,3,3
//! ```
//!
//! Unknown keys are hard errors with line numbers, so typos cannot silently
//! weaken a corpus.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::{PresentedLocalRing, QuotientIdeal};
use std::sync::Arc;

/// Declared depth class of an instance: Cohen-Macaulay, depth exactly
/// d - 1, or lower than d - 1.  This is user metadata ("declared" in
/// hypothesis-status terms); the harness never computes depth R.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthClass {
    Cm,
    Dm1,
    Lt,
}

impl DepthClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DepthClass::Cm => "cm",
            DepthClass::Dm1 => "dm1",
            DepthClass::Lt => "lt",
        }
    }

    /// Whether the declaration asserts depth R >= dim R - 1.
    pub fn at_least_dm1(&self) -> bool {
        !matches!(self, DepthClass::Lt)
    }
}

/// `expect` metadata attached to an instance.
#[derive(Debug, Clone, Default)]
pub struct Expectations {
    pub d: Option<i64>,
    pub depth_class: Option<DepthClass>,
    pub e: Option<Vec<i64>>,
    pub parameter: Option<bool>,
}

/// One parsed block, still textual: polynomials are validated at build time
/// against the declared variables.
#[derive(Debug, Clone)]
pub struct InstanceDef {
    pub name: String,
    pub start_line: usize,
    field: Option<FieldSpec>,
    vars: Option<Vec<String>>,
    relations: Vec<(usize, String)>,
    ideals: Vec<(usize, String, Vec<String>)>,
    pub expect: Expectations,
}

impl InstanceDef {
    fn new(name: String, start_line: usize) -> Self {
        InstanceDef {
            name,
            start_line,
            field: None,
            vars: None,
            relations: Vec::new(),
            ideals: Vec::new(),
            expect: Expectations::default(),
        }
    }

    fn is_empty(&self) -> bool {
        self.field.is_none()
            && self.vars.is_none()
            && self.relations.is_empty()
            && self.ideals.is_empty()
    }

    /// Materialize the ring and its named ideals.  `field_override`
    /// replaces the declared field when given (the CLI `--field` flag).
    pub fn build(&self, field_override: Option<FieldSpec>) -> Result<BuiltInstance> {
        let field = field_override
            .or(self.field)
            .ok_or_else(|| Error::Parse {
                line: self.start_line,
                msg: format!("instance {}: missing `field` line", self.name),
            })?;
        field.validate()?;
        let vars = self.vars.clone().ok_or_else(|| Error::Parse {
            line: self.start_line,
            msg: format!("instance {}: missing `vars` line", self.name),
        })?;
        let ambient = PolyRing::new(vars, field, MonomialOrder::DegRevLex)?;
        let mut j = Vec::new();
        for (line, text) in &self.relations {
            j.push(parse_poly_at(&ambient, text, *line)?);
        }
        let ring = PresentedLocalRing::new(&ambient, j)?;
        let mut ideals = Vec::new();
        for (line, name, gens) in &self.ideals {
            let mut polys = Vec::new();
            for g in gens {
                polys.push(parse_poly_at(&ambient, g, *line)?);
            }
            let handle = ring.ideal_from_polys(polys)?;
            ideals.push((name.clone(), handle));
        }
        Ok(BuiltInstance {
            name: self.name.clone(),
            ring,
            ideals,
            expect: self.expect.clone(),
        })
    }
}

fn parse_poly_at(ring: &Arc<PolyRing>, text: &str, line: usize) -> Result<Polynomial> {
    Polynomial::parse(ring, text).map_err(|e| Error::Parse {
        line,
        msg: e.to_string(),
    })
}

/// A materialized instance: the ring plus its named ideals in file order.
#[derive(Debug, Clone)]
pub struct BuiltInstance {
    pub name: String,
    pub ring: Arc<PresentedLocalRing>,
    pub ideals: Vec<(String, QuotientIdeal)>,
    pub expect: Expectations,
}

impl BuiltInstance {
    /// The first declared ideal: the default subject of CLI commands.
    pub fn primary_ideal(&self) -> Result<&(String, QuotientIdeal)> {
        self.ideals
            .first()
            .ok_or_else(|| Error::invalid(format!("instance {} declares no ideal", self.name)))
    }
}

/// Parse a ring or corpus file.  Content before any `instance` header forms
/// an implicit instance called `default_name`.
pub fn parse_ring_file(text: &str, default_name: &str) -> Result<Vec<InstanceDef>> {
    let mut out: Vec<InstanceDef> = Vec::new();
    let mut current = InstanceDef::new(default_name.to_string(), 1);
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match key {
            "instance" => {
                if !current.is_empty() {
                    out.push(current);
                }
                let name = expect_identifier(rest, line_no, "instance name")?;
                if out.iter().any(|i| i.name == name) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("duplicate instance name {name}"),
                    });
                }
                current = InstanceDef::new(name, line_no);
            }
            "field" => {
                if current.field.is_some() {
                    return Err(dup(line_no, "field"));
                }
                current.field = Some(parse_field_decl(rest, line_no)?);
            }
            "vars" => {
                if current.vars.is_some() {
                    return Err(dup(line_no, "vars"));
                }
                let vars: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
                if vars.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "vars line declares no variables".into(),
                    });
                }
                current.vars = Some(vars);
            }
            "relations" => {
                for part in split_list(rest) {
                    current.relations.push((line_no, part));
                }
            }
            "ideal" => {
                let (name, gens_text) = rest.split_once('=').ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: "ideal line must look like `ideal NAME = f, g, ...`".into(),
                })?;
                let name = expect_identifier(name.trim(), line_no, "ideal name")?;
                if current.ideals.iter().any(|(_, n, _)| *n == name) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("duplicate ideal name {name}"),
                    });
                }
                let gens = split_list(gens_text);
                if gens.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("ideal {name} has no generators"),
                    });
                }
                current.ideals.push((line_no, name, gens));
            }
            "expect" => parse_expect(&mut current.expect, rest, line_no)?,
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown key `{other}`"),
                });
            }
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    Ok(out)
}

fn dup(line: usize, key: &str) -> Error {
    Error::Parse {
        line,
        msg: format!("duplicate `{key}` line in the same instance"),
    }
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn expect_identifier(text: &str, line: usize, what: &str) -> Result<String> {
    let ok = !text.is_empty()
        && text
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !text.chars().next().unwrap().is_ascii_digit();
    if ok {
        Ok(text.to_string())
    } else {
        Err(Error::Parse {
            line,
            msg: format!("invalid {what} `{text}`"),
        })
    }
}

fn parse_field_decl(rest: &str, line: usize) -> Result<FieldSpec> {
    let mut parts = rest.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some("Q"), None, _) | (Some("q"), None, _) => Ok(FieldSpec::Rational),
        (Some("Fp"), Some(p), None) | (Some("fp"), Some(p), None) => {
            let p: u64 = p.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid prime `{p}`"),
            })?;
            let spec = FieldSpec::Prime(p);
            spec.validate().map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            Ok(spec)
        }
        _ => Err(Error::Parse {
            line,
            msg: format!("unrecognized field declaration `{rest}` (use `Q` or `Fp P`)"),
        }),
    }
}

/// Parse the CLI `--field` value: `q` or `fp:P`.
pub fn parse_field_flag(text: &str) -> Result<FieldSpec> {
    if text.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rational);
    }
    if let Some(p) = text
        .strip_prefix("fp:")
        .or_else(|| text.strip_prefix("Fp:"))
        .or_else(|| text.strip_prefix("FP:"))
    {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::invalid(format!("invalid prime in --field value `{text}`")))?;
        let spec = FieldSpec::Prime(p);
        spec.validate()?;
        return Ok(spec);
    }
    Err(Error::invalid(format!(
        "unrecognized --field value `{text}` (use `q` or `fp:P`)"
    )))
}

fn parse_expect(expect: &mut Expectations, rest: &str, line: usize) -> Result<()> {
    let (key, value) = rest.split_once('=').ok_or_else(|| Error::Parse {
        line,
        msg: "expect line must look like `expect KEY = VALUE`".into(),
    })?;
    let key = key.trim();
    let value = value.trim();
    match key {
        "d" => {
            if expect.d.is_some() {
                return Err(dup(line, "expect d"));
            }
            expect.d = Some(value.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("expect d: `{value}` is not an integer"),
            })?);
        }
        "depth_class" => {
            if expect.depth_class.is_some() {
                return Err(dup(line, "expect depth_class"));
            }
            expect.depth_class = Some(match value {
                "cm" => DepthClass::Cm,
                "dm1" => DepthClass::Dm1,
                "lt" => DepthClass::Lt,
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expect depth_class: `{other}` is not one of cm, dm1, lt"),
                    })
                }
            });
        }
        "e" => {
            if expect.e.is_some() {
                return Err(dup(line, "expect e"));
            }
            let mut e = Vec::new();
            for part in value.split(',') {
                e.push(part.trim().parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("expect e: `{}` is not an integer", part.trim()),
                })?);
            }
            expect.e = Some(e);
        }
        "parameter" => {
            if expect.parameter.is_some() {
                return Err(dup(line, "expect parameter"));
            }
            expect.parameter = Some(match value {
                "true" => true,
                "false" => false,
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expect parameter: `{other}` is not true/false"),
                    })
                }
            });
        }
        other => {
            return Err(Error::Parse {
                line,
                msg: format!("unknown expect key `{other}`"),
            });
        }
    }
    Ok(())
}
