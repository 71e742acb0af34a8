//! Multivariate polynomials over a runtime-chosen coefficient field.
//!
//! A `PolyRing` carries the variable names, the field, and the active term
//! order; every `Polynomial` holds an `Arc` to its ring so cross-ring mixups
//! are structural errors instead of silent nonsense.  Term lists are kept in
//! canonical form at all times: strictly descending under the ring order,
//! coefficients nonzero, rationals reduced.  Two polynomials are equal iff
//! their canonical forms are equal, and printing then re-parsing is the
//! identity.

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::monomial::{Monomial, MonomialOrder};
use num::{BigInt, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// The ambient polynomial ring context.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: FieldSpec, order: MonomialOrder) -> Result<Arc<PolyRing>> {
        field.validate()?;
        if vars.is_empty() {
            return Err(Error::invalid("a ring needs at least one variable"));
        }
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::invalid(format!("bad variable name {v:?}")));
            }
        }
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(Error::invalid("duplicate variable names"));
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same ring up to pointer or value equality.
    pub fn same(self: &Arc<Self>, other: &Arc<PolyRing>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    /// A copy of this ring under a different term order.
    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            field: self.field,
            order,
        })
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    /// (monomial, coefficient), strictly descending in the ring order.
    terms: Vec<(Monomial, FieldElem)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.arity()), c)],
        }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(i, ring.arity()), ring.field.one())],
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: FieldElem) -> Result<Polynomial> {
        if m.arity() != ring.arity() {
            return Err(Error::ArityMismatch(m.arity(), ring.arity()));
        }
        if c.spec() != ring.field {
            return Err(Error::RingMismatch("coefficient field".into()));
        }
        Ok(if c.is_zero() {
            Polynomial::zero(ring)
        } else {
            Polynomial {
                ring: ring.clone(),
                terms: vec![(m, c)],
            }
        })
    }

    /// Build from arbitrary (monomial, coefficient) pairs, canonicalizing.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        pairs: Vec<(Monomial, FieldElem)>,
    ) -> Result<Polynomial> {
        let mut map: HashMap<Monomial, FieldElem> = HashMap::with_capacity(pairs.len());
        for (m, c) in pairs {
            if m.arity() != ring.arity() {
                return Err(Error::ArityMismatch(m.arity(), ring.arity()));
            }
            if c.spec() != ring.field {
                return Err(Error::RingMismatch("coefficient field".into()));
            }
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c)?;
                    *e.get_mut() = s;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut terms: Vec<(Monomial, FieldElem)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(ring.order, &mut terms);
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// All terms share one total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(_) => {
                let d = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// The constant coefficient (zero if absent).
    pub fn constant_term(&self) -> FieldElem {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.ring.vars.join(","),
                other.ring.vars.join(",")
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.compare(ma, mb)? {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add(cb)?;
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Result<Polynomial> {
        if c.spec() != self.ring.field {
            return Err(Error::RingMismatch("coefficient field".into()));
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| Ok((m.clone(), k.mul(c)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// Multiply by a single term c*m.  Order is preserved by translation
    /// invariance of global orders, so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| Ok((mm.mul(m)?, cc.mul(c)?)))
                .collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut acc: HashMap<Monomial, FieldElem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb)?;
                let c = ca.mul(cb)?;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&c)?;
                        *e.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, FieldElem)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(self.ring.order, &mut terms);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        let mut out = Polynomial::one(&self.ring);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        match self.leading_coeff() {
            None => Ok(self.clone()),
            Some(lc) => {
                if lc.is_one() {
                    Ok(self.clone())
                } else {
                    self.scale(&lc.inv()?)
                }
            }
        }
    }

    /// Normalize to an integer-primitive representative: over Q, clear
    /// denominators, divide by the content, make the leading coefficient
    /// positive.  Over F_p this is just `monic`.  The result generates the
    /// same principal ideal and keeps Buchberger arithmetic in Z.
    pub fn primitive(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        match self.ring.field {
            FieldSpec::Prime(_) => self.monic(),
            FieldSpec::Rational => {
                let mut den = BigInt::one();
                for (_, c) in &self.terms {
                    let r = c.as_rational().unwrap();
                    den = num::integer::lcm(den, r.denom().clone());
                }
                let mut content = BigInt::zero();
                let scaled: Vec<BigInt> = self
                    .terms
                    .iter()
                    .map(|(_, c)| {
                        let r = c.as_rational().unwrap();
                        let v = r.numer() * (&den / r.denom());
                        content = num::integer::gcd(content.clone(), v.clone());
                        v
                    })
                    .collect();
                if scaled[0].is_negative() {
                    content = -content;
                }
                let terms = self
                    .terms
                    .iter()
                    .zip(scaled)
                    .map(|((m, _), v)| {
                        (
                            m.clone(),
                            FieldElem::Q(num::BigRational::from_integer(&v / &content)),
                        )
                    })
                    .collect();
                Ok(Polynomial {
                    ring: self.ring.clone(),
                    terms,
                })
            }
        }
    }

    /// Re-interpret this polynomial in `target`, matching variables by name.
    /// Fails if a used variable is missing from the target ring.
    pub fn map_to(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if self.ring.field != target.field {
            return Err(Error::RingMismatch("coefficient field".into()));
        }
        let index: Vec<Option<usize>> = self
            .ring
            .vars
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let mut pairs = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.arity()];
            for (i, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                match index[i] {
                    Some(j) => exps[j] = *e,
                    None => {
                        return Err(Error::invalid(format!(
                            "variable {} not present in target ring",
                            self.ring.vars[i]
                        )))
                    }
                }
            }
            pairs.push((Monomial::new(exps), c.clone()));
        }
        Polynomial::from_terms(target, pairs)
    }

    /// Exact evaluation at a point (one field element per variable).
    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.ring.arity() {
            return Err(Error::ArityMismatch(point.len(), self.ring.arity()));
        }
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.exponents().iter().enumerate() {
                for _ in 0..*e {
                    t = t.mul(&point[i])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Parse the textual syntax: terms joined by `+`/`-`, `*` between
    /// factors, `^` for exponents, integer or `a/b` rational coefficients.
    pub fn parse(ring: &Arc<PolyRing>, input: &str) -> Result<Polynomial> {
        parse_poly(ring, input)
    }
}

fn sort_terms(order: MonomialOrder, terms: &mut [(Monomial, FieldElem)]) {
    terms.sort_by(|(a, _), (b, _)| {
        order
            .compare(b, a)
            .expect("canonical terms share the ring arity")
    });
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_display_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.format_with(&self.ring.vars))?;
            } else {
                write!(f, "{}*{}", abs, m.format_with(&self.ring.vars))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push(Tok::Num(s.parse().unwrap()));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => {
                return Err(Error::invalid(format!(
                    "unexpected character {c:?} in polynomial"
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut sign = 1i64;
        while matches!(self.peek(), Some(Tok::Minus) | Some(Tok::Plus)) {
            if matches!(self.bump(), Some(Tok::Minus)) {
                sign = -sign;
            }
        }
        let mut acc = self.term(sign)?;
        while let Some(t) = self.peek() {
            let mut sign = match t {
                Tok::Plus => 1i64,
                Tok::Minus => -1i64,
                other => return Err(Error::invalid(format!("expected + or -, found {other:?}"))),
            };
            self.pos += 1;
            while matches!(self.peek(), Some(Tok::Minus) | Some(Tok::Plus)) {
                if matches!(self.bump(), Some(Tok::Minus)) {
                    sign = -sign;
                }
            }
            let t = self.term(sign)?;
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    fn term(&mut self, sign: i64) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(self.ring, self.ring.field.from_i64(sign));
        loop {
            let f = self.factor()?;
            acc = acc.mul(&f)?;
            if matches!(self.peek(), Some(Tok::Star)) {
                self.pos += 1;
                continue;
            }
            break;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.bump().cloned() {
            Some(Tok::Num(n)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.pos += 1;
                    match self.bump().cloned() {
                        Some(Tok::Num(d)) => Ok(Polynomial::constant(
                            self.ring,
                            self.ring.field.from_fraction(&n, &d)?,
                        )),
                        other => Err(Error::invalid(format!(
                            "expected denominator after /, found {other:?}"
                        ))),
                    }
                } else {
                    Ok(Polynomial::constant(
                        self.ring,
                        self.ring.field.from_fraction(&n, &BigInt::one())?,
                    ))
                }
            }
            Some(Tok::Ident(name)) => {
                let idx = self.ring.var_index(&name).ok_or_else(|| {
                    Error::invalid(format!("unknown variable {name:?} (vars: {})",
                        self.ring.vars.join(" ")))
                })?;
                let mut exp = 1u32;
                if matches!(self.peek(), Some(Tok::Caret)) {
                    self.pos += 1;
                    match self.bump().cloned() {
                        Some(Tok::Num(n)) => {
                            exp = n.try_into().map_err(|_| {
                                Error::invalid("exponent out of range".to_string())
                            })?;
                        }
                        other => {
                            return Err(Error::invalid(format!(
                                "expected exponent after ^, found {other:?}"
                            )))
                        }
                    }
                }
                let m = Monomial::new(
                    (0..self.ring.arity())
                        .map(|i| if i == idx { exp } else { 0 })
                        .collect(),
                );
                Polynomial::monomial(self.ring, m, self.ring.field.one())
            }
            other => Err(Error::invalid(format!(
                "expected a coefficient or variable, found {other:?}"
            ))),
        }
    }
}

fn parse_poly(ring: &Arc<PolyRing>, input: &str) -> Result<Polynomial> {
    let trimmed = input.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(Polynomial::zero(ring));
    }
    let toks = tokenize(trimmed)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        ring,
    };
    let poly = p.poly()?;
    if p.pos != toks.len() {
        return Err(Error::invalid("trailing tokens in polynomial".to_string()));
    }
    Ok(poly)
}
