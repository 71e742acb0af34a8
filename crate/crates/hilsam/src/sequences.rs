//! Regular sequences, d-sequences, and superficial elements.
//!
//! Every check here reduces to colon-ideal equalities certified by reduced
//! Groebner bases, so verdicts are exact.  Superficiality is the one
//! window-limited notion: its definition quantifies over all n >> 0, and
//! the report records the window that was actually tested.

use crate::error::{Error, Result};
use crate::par;
use crate::poly::Polynomial;
use crate::ring::{PresentedLocalRing, QuotientIdeal, RingElement};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

/// One checked condition, like a single colon equality.
#[derive(Debug, Clone, Serialize)]
pub struct Condition {
    pub label: String,
    pub passed: bool,
}

/// Where a sequence check failed, with a concrete ring element separating
/// the two colon ideals.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    /// 1-based index of the offending element.
    pub index: usize,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub kind: &'static str,
    pub elements: Vec<String>,
    pub holds: bool,
    pub conditions: Vec<Condition>,
    pub failure: Option<Failure>,
    /// For superficial checks: the first c that certified the window.
    pub superficial_c: Option<u32>,
}

impl SequenceReport {
    fn new(kind: &'static str, xs: &[RingElement]) -> Self {
        SequenceReport {
            kind,
            elements: xs.iter().map(|x| x.rep().to_string()).collect(),
            holds: true,
            conditions: Vec::new(),
            failure: None,
            superficial_c: None,
        }
    }

    fn fail(&mut self, index: usize, witness: String) {
        if self.holds {
            self.holds = false;
            self.failure = Some(Failure { index, witness });
        }
    }
}

/// A generator of `larger` that does not lie in `smaller`; colon inflation
/// witnesses come from here.
fn separating_element(
    larger: &QuotientIdeal,
    smaller: &QuotientIdeal,
) -> Result<Option<Polynomial>> {
    for g in larger.lift().groebner_basis().iter() {
        if !smaller.lift().contains(g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

fn colon_equality_witness(
    prefix: &QuotientIdeal,
    colon: &QuotientIdeal,
    what: &str,
) -> Result<String> {
    let sep = separating_element(colon, prefix)?;
    Ok(match sep {
        Some(g) => format!("{g} lies in {what} but not in the prefix ideal"),
        None => format!("{what} is strictly smaller than the prefix ideal"),
    })
}

/// Check that x_1, ..., x_r is a regular sequence in R:
/// ((x_1..x_{i-1}) : x_i) = (x_1..x_{i-1}) for every i.
pub fn is_regular_sequence(
    ring: &Arc<PresentedLocalRing>,
    xs: &[RingElement],
) -> Result<SequenceReport> {
    let mut report = SequenceReport::new("regular", xs);
    for i in 1..=xs.len() {
        let prefix = ring.ideal(&xs[..i - 1])?;
        let colon = prefix.colon_elem(&xs[i - 1])?;
        let passed = colon.equals(&prefix)?;
        report.conditions.push(Condition {
            label: format!("((x_1..x_{}) : x_{i}) == (x_1..x_{})", i - 1, i - 1),
            passed,
        });
        if !passed {
            let witness = colon_equality_witness(&prefix, &colon, "the colon")?;
            report.fail(i, witness);
        }
    }
    Ok(report)
}

/// Check the d-sequence conditions (x_0 = 0 convention):
/// (i) each x_i lies outside the ideal of the other elements, and
/// (ii) ((x_0..x_i) : x_{i+1} x_j) = ((x_0..x_i) : x_j) for 0 <= i <= r-1
/// and j >= i + 1.  The (i, j) colon pairs are independent and run through
/// [`par::map`].
pub fn is_d_sequence(
    ring: &Arc<PresentedLocalRing>,
    xs: &[RingElement],
) -> Result<SequenceReport> {
    if xs.is_empty() {
        return Err(Error::invalid("is_d_sequence: empty sequence"));
    }
    let mut report = SequenceReport::new("d-sequence", xs);
    for i in 1..=xs.len() {
        let others: Vec<RingElement> = xs
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i - 1)
            .map(|(_, x)| x.clone())
            .collect();
        let rest = ring.ideal(&others)?;
        let inside = rest.contains(&xs[i - 1])?;
        report.conditions.push(Condition {
            label: format!("x_{i} not in the ideal of the others"),
            passed: !inside,
        });
        if inside {
            report.fail(i, format!("x_{i} = {} lies in the ideal of the others", xs[i - 1].rep()));
        }
    }

    let r = xs.len();
    // Prefix handles are shared between pairs; warming their bases here
    // keeps the parallel jobs from redoing the same reduction.
    let mut prefixes = Vec::with_capacity(r);
    for i in 0..r {
        let p = ring.ideal(&xs[..i])?;
        p.lift().groebner_basis();
        prefixes.push(p);
    }
    let mut jobs = Vec::new();
    for i in 0..r {
        for j in (i + 1)..=r {
            jobs.push((i, j, prefixes[i].clone()));
        }
    }
    let results = par::map(jobs, |(i, j, prefix)| -> Result<(usize, usize, bool, String)> {
        let product = xs[i].mul(&xs[j - 1])?;
        let lhs = prefix.colon_elem(&product)?;
        let rhs = prefix.colon_elem(&xs[j - 1])?;
        let passed = lhs.equals(&rhs)?;
        let witness = if passed {
            String::new()
        } else {
            let sep = separating_element(&lhs, &rhs)?;
            match sep {
                Some(g) => format!(
                    "{g} lies in ((x_1..x_{i}) : x_{} x_{j}) but not in ((x_1..x_{i}) : x_{j})",
                    i + 1
                ),
                None => "colon ideals differ".to_string(),
            }
        };
        Ok((i, j, passed, witness))
    });
    for res in results {
        let (i, j, passed, witness) = res?;
        report.conditions.push(Condition {
            label: format!("((x_1..x_{i}) : x_{} x_{j}) == ((x_1..x_{i}) : x_{j})", i + 1),
            passed,
        });
        if !passed {
            report.fail(i + 1, witness);
        }
    }
    Ok(report)
}

/// Window-limited superficiality certificate for a single element:
/// some c <= c_window satisfies (Q^{n+1} : x) cap Q^c = Q^n for all
/// c <= n <= n_max.
pub fn is_superficial(
    ring: &Arc<PresentedLocalRing>,
    q: &QuotientIdeal,
    x: &RingElement,
    c_window: u32,
    n_max: u32,
) -> Result<SequenceReport> {
    if !q.ring().same(ring) {
        return Err(Error::RingMismatch("is_superficial".into()));
    }
    if !q.contains(x)? {
        return Err(Error::invalid(format!(
            "is_superficial: {} does not lie in Q",
            x.rep()
        )));
    }
    let mut report = SequenceReport::new("superficial", std::slice::from_ref(x));
    report.holds = false;
    let mut powers = Vec::with_capacity(n_max as usize + 2);
    powers.push(q.power(0)?);
    for n in 1..=n_max + 1 {
        let next = powers[n as usize - 1].product(q)?;
        powers.push(next);
    }
    for c in 1..=c_window {
        let mut c_ok = true;
        for n in c..=n_max {
            let colon = powers[n as usize + 1].colon_elem(x)?;
            let lhs = colon.intersection(&powers[c as usize])?;
            if !lhs.equals(&powers[n as usize])? {
                report.conditions.push(Condition {
                    label: format!("c = {c}: fails at n = {n}"),
                    passed: false,
                });
                if report.failure.is_none() {
                    let witness = colon_equality_witness(
                        &powers[n as usize],
                        &lhs,
                        &format!("(Q^{} : x) cap Q^{c}", n + 1),
                    )?;
                    report.failure = Some(Failure { index: 1, witness });
                }
                c_ok = false;
                break;
            }
        }
        if c_ok {
            report.conditions.push(Condition {
                label: format!("c = {c}: certified for {c} <= n <= {n_max}"),
                passed: true,
            });
            report.holds = true;
            report.superficial_c = Some(c);
            report.failure = None;
            break;
        }
    }
    Ok(report)
}

const SEARCH_C_WINDOW: u32 = 3;
const SEARCH_N_MAX: u32 = 12;

/// Search for x_1, ..., x_k, random combinations of the generators of Q,
/// such that each x_i is (window-)superficial for the image of Q in
/// R/(x_1..x_{i-1}).  Deterministic for a fixed seed; coefficients start
/// in [-5, 5] and widen as attempts accumulate.
pub fn superficial_sequence_search(
    ring: &Arc<PresentedLocalRing>,
    q: &QuotientIdeal,
    k: u32,
    attempts: usize,
    seed: u64,
) -> Result<Vec<RingElement>> {
    if !q.ring().same(ring) {
        return Err(Error::RingMismatch("superficial_sequence_search".into()));
    }
    if i64::from(k) > ring.dim() {
        return Err(Error::invalid(format!(
            "superficial_sequence_search: k = {k} exceeds dim R = {}",
            ring.dim()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = ring.ambient().field();
    let mut chosen: Vec<RingElement> = Vec::new();
    for _ in 0..k {
        let quotient = ring.quotient_by(&chosen)?;
        let q_image = quotient.ideal_from_polys(q.gens().to_vec())?;
        let mut found = None;
        for attempt in 0..attempts {
            let bound = 5 * (1 + attempt as i64 / 16);
            let mut candidate = Polynomial::zero(ring.ambient());
            for g in q.gens() {
                let c = rng.gen_range(-bound..=bound);
                if c != 0 {
                    candidate = candidate.add(&g.scale(&field.from_i64(c))?)?;
                }
            }
            let image = quotient.element(&candidate)?;
            if image.is_zero() {
                continue;
            }
            let cert = is_superficial(&quotient, &q_image, &image, SEARCH_C_WINDOW, SEARCH_N_MAX)?;
            if cert.holds {
                found = Some(ring.element(&candidate)?);
                break;
            }
        }
        match found {
            Some(x) => chosen.push(x),
            None => return Err(Error::SearchExhausted { attempts }),
        }
    }
    Ok(chosen)
}
