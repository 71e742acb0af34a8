//! Monomials as dense exponent vectors, plus the supported term orders.
//!
//! Arity stays small (at most eight or nine variables including an
//! elimination auxiliary), so dense `Vec<u32>` exponents with a cached total
//! degree are the right representation; no sparse tricks.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A monomial: exponent per variable with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    /// The identity monomial 1 in `arity` variables.
    pub fn one(arity: usize) -> Monomial {
        Monomial {
            exps: vec![0; arity],
            deg: 0,
        }
    }

    /// x_i in `arity` variables.
    pub fn var(i: usize, arity: usize) -> Monomial {
        let mut exps = vec![0; arity];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    fn check_arity(&self, other: &Monomial) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Monomial {
            exps,
            deg: self.deg + other.deg,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.arity() == other.arity()
            && self.deg <= other.deg
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when the division is exact.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_arity(other)?;
        Ok(Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        ))
    }

    /// True when lcm(self, other) == self * other, i.e. disjoint support.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The set of variables with positive exponent, as a bitmask.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// All monomials of total degree exactly `d` in `arity` variables,
    /// in a fixed deterministic order.
    pub fn all_of_degree(arity: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; arity];
        fn rec(current: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
            if pos + 1 == current.len() {
                current[pos] = left;
                out.push(Monomial::new(current.clone()));
                current[pos] = 0;
                return;
            }
            for e in (0..=left).rev() {
                current[pos] = e;
                rec(current, pos + 1, left - e, out);
            }
            current[pos] = 0;
        }
        rec(&mut current, 0, d, &mut out);
        out
    }

    /// Format against variable names (used by polynomial display).
    pub fn format_with(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars[i].clone()),
                _ => parts.push(format!("{}^{}", vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.arity()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format_with(&names))
    }
}

/// Supported global term orders.
///
/// `Elim(k)` is the block order eliminating the first `k` variables: compare
/// the leading block by degrevlex, break ties on the remaining block.  Any
/// monomial involving an eliminated variable sorts above every monomial free
/// of them, which is exactly what elimination needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    Elim(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch(a.arity(), b.arity()));
        }
        Ok(self.cmp_slices(&a.exps, &b.exps))
    }

    fn cmp_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elim(k) => {
                let k = (*k).min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elim(k) => write!(f, "elim({k})"),
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Same degree: the monomial with the smaller exponent at the last
    // differing position is the larger one.
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_prefers_total_degree_then_revlex() {
        let ord = MonomialOrder::DegRevLex;
        // x^2 vs x*y in k[x,y]: same degree, x^2 has smaller y-exponent.
        assert_eq!(
            ord.compare(&m(&[2, 0]), &m(&[1, 1])).unwrap(),
            Ordering::Greater
        );
        // Degree wins first.
        assert_eq!(
            ord.compare(&m(&[0, 3]), &m(&[2, 0])).unwrap(),
            Ordering::Greater
        );
        // Classic separator from lex: x vs y^2.
        assert_eq!(
            ord.compare(&m(&[1, 0]), &m(&[0, 2])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            MonomialOrder::Lex.compare(&m(&[1, 0]), &m(&[0, 2])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn degrevlex_three_vars_tiebreak() {
        // x*z vs y^2 in k[x,y,z], degree 2 each: last differing exponent is z
        // (1 vs 0), so x*z is smaller.
        let ord = MonomialOrder::DegRevLex;
        assert_eq!(
            ord.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn one_is_minimal() {
        let ord = MonomialOrder::DegRevLex;
        for e in [[1, 0], [0, 1], [2, 3]] {
            assert_eq!(
                ord.compare(&Monomial::one(2), &m(&e)).unwrap(),
                Ordering::Less
            );
        }
    }

    #[test]
    fn elimination_block_dominates() {
        // With the first variable eliminated, any monomial containing it beats
        // any monomial free of it.
        let ord = MonomialOrder::Elim(1);
        assert_eq!(
            ord.compare(&m(&[1, 0, 0]), &m(&[0, 9, 9])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            ord.compare(&m(&[0, 2, 0]), &m(&[0, 0, 1])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let ord = MonomialOrder::DegRevLex;
        assert!(ord.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
        assert!(m(&[1, 0]).mul(&m(&[1])).is_err());
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b).unwrap(), m(&[2, 3]));
        assert_eq!(m(&[1, 1]).divide_into(&a).unwrap(), m(&[1, 0]));
        assert!(m(&[0, 2]).divide_into(&a).is_none());
        assert!(m(&[1, 0]).coprime(&m(&[0, 2])));
        assert!(!a.coprime(&b));
    }
}
