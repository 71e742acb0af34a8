//! Presented Noetherian local rings R = (S/J) localized at the origin.
//!
//! Ideals of R are represented by lifts to S that always carry the
//! generators of J, so every Groebner-level operation on lifts is
//! automatically an operation in R.  Local lengths at the origin are
//! computed through m-adic truncation: t_N = dim_k S/(lift + m^N) is
//! non-decreasing, and once two consecutive steps agree the value has
//! stabilized for good (Nakayama applied to the localization), at which
//! point t_N equals the local length.
//!
//! Two fast paths keep the truncation loop out of the hot code:
//! - homogeneous lifts: t_N is a partial sum of the staircase histogram of
//!   the lift's own Groebner basis, so no per-N basis is ever computed;
//! - zero-dimensional lifts whose only point is the origin (certified by
//!   m^N ⊆ lift for some N): the local length is the plain colength.

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use std::sync::Arc;

/// R = S/J localized at the image of the origin.
#[derive(Debug)]
pub struct PresentedLocalRing {
    ambient: Arc<PolyRing>,
    j: IdealHandle,
    dim: i64,
}

impl PresentedLocalRing {
    /// Present R = S/(j_gens) at the origin.  Every generator must vanish
    /// at the origin, otherwise the origin is not a point of the variety.
    pub fn new(ambient: &Arc<PolyRing>, j_gens: Vec<Polynomial>) -> Result<Arc<Self>> {
        for g in &j_gens {
            if !g.constant_term().is_zero() {
                return Err(Error::invalid(format!(
                    "relation {g} does not vanish at the origin"
                )));
            }
        }
        let j = IdealHandle::new(ambient, j_gens)?;
        let dim = j.dimension();
        if dim < 0 {
            return Err(Error::invalid("defining ideal is the unit ideal"));
        }
        Ok(Arc::new(PresentedLocalRing {
            ambient: ambient.clone(),
            j,
            dim,
        }))
    }

    /// A regular local ring: J = 0.
    pub fn regular(ambient: &Arc<PolyRing>) -> Arc<Self> {
        PresentedLocalRing::new(ambient, Vec::new()).expect("empty J always valid")
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn defining_ideal(&self) -> &IdealHandle {
        &self.j
    }

    /// Krull dimension of R (= of S/J; localization at a point of every
    /// component through the origin does not drop it for our corpora, and
    /// the declared metadata cross-checks it).
    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn same(&self, other: &PresentedLocalRing) -> bool {
        std::ptr::eq(self, other)
            || (self.ambient.same(&other.ambient) && self.j.gens() == other.j.gens())
    }

    /// Canonical representative: normal form against J's Groebner basis.
    pub fn element(self: &Arc<Self>, f: &Polynomial) -> Result<RingElement> {
        let rep = self.j.reduce(f)?;
        Ok(RingElement {
            ring: self.clone(),
            rep,
        })
    }

    pub fn parse_element(self: &Arc<Self>, s: &str) -> Result<RingElement> {
        let f = Polynomial::parse(&self.ambient, s)?;
        self.element(&f)
    }

    pub fn ideal(self: &Arc<Self>, gens: &[RingElement]) -> Result<QuotientIdeal> {
        for g in gens {
            if !g.ring.same(self) {
                return Err(Error::RingMismatch("quotient ideal generator".into()));
            }
        }
        self.ideal_from_polys(gens.iter().map(|g| g.rep.clone()).collect())
    }

    pub fn ideal_from_polys(self: &Arc<Self>, gens: Vec<Polynomial>) -> Result<QuotientIdeal> {
        QuotientIdeal::new(self, gens)
    }

    /// The zero ideal of R (lift = J).
    pub fn zero_ideal(self: &Arc<Self>) -> QuotientIdeal {
        self.ideal_from_polys(Vec::new()).expect("zero ideal")
    }

    /// The maximal ideal m of R, generated by the variables.
    pub fn maximal_ideal(self: &Arc<Self>) -> QuotientIdeal {
        let gens = (0..self.ambient.arity())
            .map(|v| Polynomial::var(&self.ambient, v))
            .collect();
        self.ideal_from_polys(gens).expect("maximal ideal")
    }

    /// R/(xs) as a presented local ring (J extended by the lifts).
    pub fn quotient_by(self: &Arc<Self>, xs: &[RingElement]) -> Result<Arc<Self>> {
        let mut gens = self.j.gens().to_vec();
        for x in xs {
            if !x.ring.same(self) {
                return Err(Error::RingMismatch("quotient_by".into()));
            }
            gens.push(x.rep.clone());
        }
        PresentedLocalRing::new(&self.ambient, gens)
    }

    /// λ_R(R/a) at the origin via m-adic truncation, see module docs.
    pub fn local_colength(&self, a: &QuotientIdeal, n_cap: u32) -> Result<u64> {
        self.check_ideal(a)?;
        let lift = a.lift();
        if lift.is_unit_ideal() {
            return Ok(0);
        }
        if lift.is_homogeneous() {
            // t_N is the partial sum of the staircase histogram; for a
            // finite staircase of top degree D it stabilizes exactly at
            // N = D + 1, and an infinite staircase never stabilizes.
            return match lift.colength() {
                Ok(count) => {
                    let hist = lift.standard_monomial_histogram(n_cap);
                    let top = hist.iter().rposition(|&c| c > 0).map_or(0, |d| d as u32);
                    if top + 3 > n_cap {
                        Err(Error::NoStabilization { n_cap })
                    } else {
                        Ok(count)
                    }
                }
                Err(Error::NotZeroDimensional { .. }) => Err(Error::NoStabilization { n_cap }),
                Err(e) => Err(e),
            };
        }
        // Zero-dimensional with origin-only variety: if m^N ⊆ lift for some
        // N (equivalently every degree-N monomial reduces to zero), the
        // truncations equal the plain colength from that N on.
        if let Ok(count) = lift.colength() {
            let hist = lift.standard_monomial_histogram(n_cap);
            let top = hist.iter().rposition(|&c| c > 0).map_or(0, |d| d as u32);
            let arity = self.ambient.arity();
            'scan: for n in (top + 1)..=n_cap.saturating_sub(2) {
                for mono in Monomial::all_of_degree(arity, n) {
                    let f = Polynomial::monomial(
                        &self.ambient,
                        mono,
                        self.ambient.field().one(),
                    )?;
                    if !lift.reduce(&f)?.is_zero() {
                        continue 'scan;
                    }
                }
                return Ok(count);
            }
            // No power of m inside the lift: fall through to the honest
            // loop (the variety has points away from the origin).
        }
        let mut window: Vec<u64> = Vec::new();
        for n in 1..=n_cap {
            let t = self.truncated_colength_raw(a.lift().gens(), n)?;
            window.push(t);
            let k = window.len();
            if k >= 3 && window[k - 1] == window[k - 2] && window[k - 2] == window[k - 3] {
                return Ok(window[k - 1]);
            }
        }
        Err(Error::NoStabilization { n_cap })
    }

    /// dim_k S/((gens) + m^n): the n-th truncation of the lift.
    fn truncated_colength_raw(&self, gens: &[Polynomial], n: u32) -> Result<u64> {
        let arity = self.ambient.arity();
        // Dropping terms of degree >= n is a reduction by the m^n block of
        // the generating set, so it does not change the ideal.
        let mut cut: Vec<Polynomial> = Vec::with_capacity(gens.len() + 8);
        for g in gens {
            let t = truncate_below(g, n)?;
            if !t.is_zero() && !cut.contains(&t) {
                cut.push(t);
            }
        }
        for mono in Monomial::all_of_degree(arity, n) {
            cut.push(Polynomial::monomial(
                &self.ambient,
                mono,
                self.ambient.field().one(),
            )?);
        }
        IdealHandle::new(&self.ambient, cut)?.colength()
    }

    /// λ_R((a + c)/c) when that subquotient has finite length, as the
    /// stabilized difference of truncated colengths.
    pub fn subquotient_length(
        &self,
        a: &QuotientIdeal,
        c: &QuotientIdeal,
        n_cap: u32,
    ) -> Result<u64> {
        self.check_ideal(a)?;
        self.check_ideal(c)?;
        let sum = a.sum(c)?;
        let (lc, ls) = (c.lift(), sum.lift());
        if lc.is_homogeneous() && ls.is_homogeneous() {
            // Per-degree histograms make the whole truncation window visible
            // at once: the difference has stabilized below the cap iff the
            // histograms agree from some degree on (with two clear degrees
            // of margin, matching the loop below).
            let hc = lc.standard_monomial_histogram(n_cap);
            let hs = ls.standard_monomial_histogram(n_cap);
            let last_diff = (0..n_cap as usize).rev().find(|&n| hc[n] != hs[n]);
            return match last_diff {
                None => Ok(0),
                Some(l) if l as u32 + 3 <= n_cap => {
                    let delta: i64 = (0..=l).map(|j| hc[j] as i64 - hs[j] as i64).sum();
                    Ok(delta as u64)
                }
                Some(_) => Err(Error::NoStabilization { n_cap }),
            };
        }
        let mut window: Vec<u64> = Vec::new();
        for n in 1..=n_cap {
            let tc = self.truncated_colength_raw(lc.gens(), n)?;
            let ts = self.truncated_colength_raw(ls.gens(), n)?;
            window.push(tc - ts);
            let k = window.len();
            if k >= 3 && window[k - 1] == window[k - 2] && window[k - 2] == window[k - 3] {
                return Ok(window[k - 1]);
            }
        }
        Err(Error::NoStabilization { n_cap })
    }

    /// λ(H⁰_m(R/c)) = λ((c : m^∞)/c).
    pub fn h0_length(self: &Arc<Self>, c: &QuotientIdeal, n_cap: u32) -> Result<u64> {
        self.check_ideal(c)?;
        let m_lift = IdealHandle::new(
            &self.ambient,
            (0..self.ambient.arity())
                .map(|v| Polynomial::var(&self.ambient, v))
                .collect(),
        )?;
        let sat = c.lift().saturation(&m_lift)?;
        let a = self.ideal_from_polys(sat.gens().to_vec())?;
        self.subquotient_length(&a, c, n_cap)
    }

    /// d = dim R elements generating an m-primary ideal.
    pub fn is_parameter_ideal(self: &Arc<Self>, gens: &[RingElement], n_cap: u32) -> Result<bool> {
        if gens.len() as i64 != self.dim {
            return Ok(false);
        }
        if gens.iter().any(|g| !g.rep.constant_term().is_zero()) {
            return Ok(false); // a unit among the generators: not inside m
        }
        let q = self.clone().ideal(gens)?;
        match self.local_colength(&q, n_cap) {
            Ok(_) => Ok(true),
            Err(Error::NoStabilization { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    fn check_ideal(&self, a: &QuotientIdeal) -> Result<()> {
        if !a.ring.same(self) {
            return Err(Error::RingMismatch("quotient ideal of a different ring".into()));
        }
        Ok(())
    }
}

/// Drop all terms of total degree >= n.
fn truncate_below(f: &Polynomial, n: u32) -> Result<Polynomial> {
    let kept: Vec<_> = f
        .terms()
        .iter()
        .filter(|(m, _)| m.degree() < n)
        .cloned()
        .collect();
    Polynomial::from_terms(f.ring(), kept)
}

/// An element of R, stored as the canonical normal form against J.
#[derive(Debug, Clone)]
pub struct RingElement {
    ring: Arc<PresentedLocalRing>,
    rep: Polynomial,
}

impl RingElement {
    pub fn ring(&self) -> &Arc<PresentedLocalRing> {
        &self.ring
    }

    pub fn rep(&self) -> &Polynomial {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch("element product".into()));
        }
        self.ring.element(&self.rep.mul(&other.rep)?)
    }

    pub fn pow(&self, e: u32) -> Result<RingElement> {
        self.ring.element(&self.rep.pow(e)?)
    }
}

impl std::fmt::Display for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.rep == other.rep
    }
}

/// An ideal of R, held as a lift to S.  `gens` are the R-level generators
/// (normal forms, J excluded); `lift` always carries J's generators too.
#[derive(Debug, Clone)]
pub struct QuotientIdeal {
    ring: Arc<PresentedLocalRing>,
    gens: Vec<Polynomial>,
    lift: IdealHandle,
}

impl QuotientIdeal {
    fn new(ring: &Arc<PresentedLocalRing>, gens: Vec<Polynomial>) -> Result<QuotientIdeal> {
        let mut own: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            let nf = ring.j.reduce(&g)?;
            if !nf.is_zero() && !own.contains(&nf) {
                own.push(nf);
            }
        }
        let mut lift_gens = own.clone();
        for g in ring.j.gens() {
            if !lift_gens.contains(g) {
                lift_gens.push(g.clone());
            }
        }
        let lift = IdealHandle::new(&ring.ambient, lift_gens)?;
        Ok(QuotientIdeal {
            ring: ring.clone(),
            gens: own,
            lift,
        })
    }

    pub fn ring(&self) -> &Arc<PresentedLocalRing> {
        &self.ring
    }

    /// R-level generators (without J).
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The lift to S, J included.
    pub fn lift(&self) -> &IdealHandle {
        &self.lift
    }

    pub fn is_zero_in_r(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &QuotientIdeal) -> Result<QuotientIdeal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        QuotientIdeal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &QuotientIdeal) -> Result<QuotientIdeal> {
        self.check(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        QuotientIdeal::new(&self.ring, gens)
    }

    /// a^n in R; a^0 is the unit ideal.
    pub fn power(&self, n: u32) -> Result<QuotientIdeal> {
        if n == 0 {
            return QuotientIdeal::new(&self.ring, vec![Polynomial::one(&self.ring.ambient)]);
        }
        let mut current = self.clone();
        for _ in 1..n {
            current = current.product(self)?;
        }
        Ok(current)
    }

    /// (self : f) in R, computed on the lift.
    pub fn colon_elem(&self, f: &RingElement) -> Result<QuotientIdeal> {
        if !f.ring.same(&self.ring) {
            return Err(Error::RingMismatch("colon".into()));
        }
        let c = self.lift.colon_poly(&f.rep)?;
        QuotientIdeal::new(&self.ring, c.gens().to_vec())
    }

    /// (self : other) in R: intersect over other's R-level generators.
    /// (Generators lying in J act as zero, with colon the whole ring.)
    pub fn colon(&self, other: &QuotientIdeal) -> Result<QuotientIdeal> {
        self.check(other)?;
        if other.gens.is_empty() {
            return QuotientIdeal::new(&self.ring, vec![Polynomial::one(&self.ring.ambient)]);
        }
        let mut acc = self.lift.clone();
        let mut first = true;
        for g in &other.gens {
            let c = self.lift.colon_poly(g)?;
            acc = if first { c } else { acc.intersection(&c)? };
            first = false;
        }
        QuotientIdeal::new(&self.ring, acc.gens().to_vec())
    }

    pub fn intersection(&self, other: &QuotientIdeal) -> Result<QuotientIdeal> {
        self.check(other)?;
        let i = self.lift.intersection(&other.lift)?;
        QuotientIdeal::new(&self.ring, i.gens().to_vec())
    }

    pub fn contains(&self, f: &RingElement) -> Result<bool> {
        if !f.ring.same(&self.ring) {
            return Err(Error::RingMismatch("contains".into()));
        }
        self.lift.contains(&f.rep)
    }

    pub fn contains_ideal(&self, other: &QuotientIdeal) -> Result<bool> {
        self.check(other)?;
        self.lift.contains_ideal(&other.lift)
    }

    /// Ideals of R are equal iff their lifts have the same reduced basis.
    pub fn equals(&self, other: &QuotientIdeal) -> Result<bool> {
        self.check(other)?;
        self.lift.equals(&other.lift)
    }

    fn check(&self, other: &QuotientIdeal) -> Result<()> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch("quotient ideal pair".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::monomial::MonomialOrder;
    use num::BigRational;
    use num::{One, Zero};

    fn ring(vars: &[&str], relations: &[&str]) -> Arc<PresentedLocalRing> {
        let s = PolyRing::new(
            vars.iter().map(|v| v.to_string()).collect(),
            FieldSpec::Rational,
            MonomialOrder::DegRevLex,
        )
        .unwrap();
        let j = relations
            .iter()
            .map(|r| Polynomial::parse(&s, r).unwrap())
            .collect();
        PresentedLocalRing::new(&s, j).unwrap()
    }

    fn ideal(r: &Arc<PresentedLocalRing>, gens: &[&str]) -> QuotientIdeal {
        let polys = gens
            .iter()
            .map(|g| Polynomial::parse(r.ambient(), g).unwrap())
            .collect();
        r.ideal_from_polys(polys).unwrap()
    }

    /// Independent oracle: dim_k S/((gens) + m^n) by exact row reduction
    /// over Q.  The degree-(< n) part of the ideal is spanned by the
    /// truncations of all products (monomial of degree < n) * generator.
    fn oracle_truncated_dim(r: &Arc<PresentedLocalRing>, gens: &[&str], n: u32) -> usize {
        let s = r.ambient();
        let arity = s.arity();
        let mut basis: Vec<Monomial> = Vec::new();
        for d in 0..n {
            basis.extend(Monomial::all_of_degree(arity, d));
        }
        let index = |m: &Monomial| basis.iter().position(|b| b == m).unwrap();
        let mut all_gens: Vec<Polynomial> = r.defining_ideal().gens().to_vec();
        for g in gens {
            all_gens.push(Polynomial::parse(s, g).unwrap());
        }
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for g in &all_gens {
            for mu in &basis {
                let prod = g
                    .mul(&Polynomial::monomial(s, mu.clone(), s.field().one()).unwrap())
                    .unwrap();
                let mut row = vec![BigRational::zero(); basis.len()];
                let mut nonzero = false;
                for (m, c) in prod.terms() {
                    if m.degree() < n {
                        row[index(m)] = c.as_rational().unwrap().clone();
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        // Gauss elimination, counting pivots.
        let cols = basis.len();
        let mut rank = 0usize;
        let mut pivot_row = 0usize;
        for col in 0..cols {
            let mut sel = None;
            for (i, row) in rows.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() {
                    sel = Some(i);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            rows.swap(pivot_row, sel);
            let inv = BigRational::one() / rows[pivot_row][col].clone();
            for c in col..cols {
                let v = rows[pivot_row][c].clone() * inv.clone();
                rows[pivot_row][c] = v;
            }
            for i in 0..rows.len() {
                if i != pivot_row && !rows[i][col].is_zero() {
                    let factor = rows[i][col].clone();
                    for c in col..cols {
                        let sub = rows[pivot_row][c].clone() * factor.clone();
                        rows[i][c] -= sub;
                    }
                }
            }
            rank += 1;
            pivot_row += 1;
        }
        cols - rank
    }

    #[test]
    fn regular_ring_basics() {
        let r = ring(&["x", "y"], &[]);
        assert_eq!(r.dim(), 2);
        let m = r.maximal_ideal();
        assert_eq!(r.local_colength(&m, 40).unwrap(), 1);
        assert_eq!(r.local_colength(&m.power(3).unwrap(), 40).unwrap(), 6);
        assert!(r
            .is_parameter_ideal(
                &[r.parse_element("x").unwrap(), r.parse_element("y").unwrap()],
                40
            )
            .unwrap());
        assert!(!r
            .is_parameter_ideal(&[r.parse_element("x").unwrap()], 40)
            .unwrap());
    }

    #[test]
    fn one_variable_truncation_examples() {
        // S = k[x], J = 0: a = (x^2) has length 2; a = (x^2 - x) has a
        // second component at x = 1 that the truncation discards.
        let r = ring(&["x"], &[]);
        assert_eq!(r.local_colength(&ideal(&r, &["x^2"]), 40).unwrap(), 2);
        assert_eq!(r.local_colength(&ideal(&r, &["x^2 - x"]), 40).unwrap(), 1);
        // Origin not on the variety at all: the local ring is killed.
        assert_eq!(r.local_colength(&ideal(&r, &["x - 1"]), 40).unwrap(), 0);
    }

    #[test]
    fn non_primary_ideal_does_not_stabilize() {
        let r = ring(&["x", "y"], &[]);
        match r.local_colength(&ideal(&r, &["x"]), 12) {
            Err(Error::NoStabilization { n_cap }) => assert_eq!(n_cap, 12),
            other => panic!("expected NoStabilization, got {other:?}"),
        }
        // Positive-dimensional component through the origin, inhomogeneous.
        match r.local_colength(&ideal(&r, &["x*y - y"]), 12) {
            Err(Error::NoStabilization { .. }) => {}
            other => panic!("expected NoStabilization, got {other:?}"),
        }
    }

    #[test]
    fn depth1_ring_lambda_r_mod_q_is_2() {
        // R = S/((X) ∩ (Y^3,Z,W)) = S/(xy^3, xz, xw), Q = (x-y, x-z, x-w).
        let r = ring(&["x", "y", "z", "w"], &["x*y^3", "x*z", "x*w"]);
        assert_eq!(r.dim(), 3);
        let q = ideal(&r, &["x - y", "x - z", "x - w"]);
        assert_eq!(r.local_colength(&q, 40).unwrap(), 2);
        assert!(r
            .is_parameter_ideal(
                &[
                    r.parse_element("x - y").unwrap(),
                    r.parse_element("x - z").unwrap(),
                    r.parse_element("x - w").unwrap(),
                ],
                40
            )
            .unwrap());
    }

    #[test]
    fn truncations_match_row_reduction_oracle() {
        let r = ring(&["x", "y", "z", "w"], &["x*y^3", "x*z", "x*w"]);
        let gens = ["x - y", "x - z", "x - w"];
        // The oracle computes dim S/(J + Q + m^N) independently of any
        // Groebner machinery; the sequence must stabilize at λ(R/Q) = 2.
        let dims: Vec<usize> = [4u32, 5, 6]
            .iter()
            .map(|&n| oracle_truncated_dim(&r, &gens, n))
            .collect();
        assert_eq!(dims, vec![2, 2, 2]);
        for n in [4u32, 5, 6] {
            let polys = gens
                .iter()
                .map(|g| Polynomial::parse(r.ambient(), g).unwrap())
                .collect::<Vec<_>>();
            let q = r.ideal_from_polys(polys).unwrap();
            assert_eq!(
                r.truncated_colength_raw(q.lift().gens(), n).unwrap(),
                oracle_truncated_dim(&r, &gens, n) as u64
            );
        }
    }

    #[test]
    fn oracle_agrees_on_a_homogeneous_quotient() {
        let r = ring(&["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]);
        let q = ideal(&r, &["x - u", "y - v"]);
        // λ(R/Q) = 3 and λ(R/Q^2) = 8, checked against the oracle.
        assert_eq!(r.local_colength(&q, 40).unwrap(), 3);
        assert_eq!(r.local_colength(&q.power(2).unwrap(), 40).unwrap(), 8);
        assert_eq!(oracle_truncated_dim(&r, &["x - u", "y - v"], 5), 3);
    }

    #[test]
    fn colon_in_quotient_ring() {
        // R = k[u,x]/(u^2, ux): (0 : x) = (0 : x^2) = (u).
        let r = ring(&["u", "x"], &["u^2", "u*x"]);
        let zero = r.zero_ideal();
        let x = r.parse_element("x").unwrap();
        let expect = ideal(&r, &["u"]);
        let c1 = zero.colon_elem(&x).unwrap();
        assert!(c1.equals(&expect).unwrap());
        let c2 = zero.colon_elem(&x.pow(2).unwrap()).unwrap();
        assert!(c2.equals(&expect).unwrap());
        // a + (0) = a.
        let a = ideal(&r, &["x"]);
        assert!(a.sum(&zero).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn subquotient_lengths() {
        let r = ring(&["x", "y"], &[]);
        // a = c gives 0.
        let c = ideal(&r, &["x"]);
        assert_eq!(r.subquotient_length(&c, &c, 40).unwrap(), 0);
        // a contained in c gives 0.
        let a = ideal(&r, &["x^2"]);
        assert_eq!(r.subquotient_length(&a, &c, 40).unwrap(), 0);
        // (x, y^2)/(x) in k[x,y] is y^2·k[y]: infinite length.
        let big = ideal(&r, &["x", "y^2"]);
        match r.subquotient_length(&big, &c, 12) {
            Err(Error::NoStabilization { .. }) => {}
            other => panic!("expected NoStabilization, got {other:?}"),
        }
        // Finite case: (x, y^2)/(x, y^3) has length 1.
        let c3 = ideal(&r, &["x", "y^3"]);
        assert_eq!(r.subquotient_length(&big, &c3, 40).unwrap(), 1);
    }

    #[test]
    fn regular_sequence_colon_subquotient_is_zero() {
        // Regular k[x,y,z], c = (x,y), a = ((x,y):z) = (x,y): length 0.
        let r = ring(&["x", "y", "z"], &[]);
        let c = ideal(&r, &["x", "y"]);
        let z = r.parse_element("z").unwrap();
        let a = c.colon_elem(&z).unwrap();
        assert!(a.equals(&c).unwrap());
        assert_eq!(r.subquotient_length(&a, &c, 40).unwrap(), 0);
    }

    #[test]
    fn h0_lengths() {
        // Domain: H^0_m = 0.
        let cusp = ring(&["x", "y"], &["y^2 - x^3"]);
        assert_eq!(cusp.h0_length(&cusp.zero_ideal(), 40).unwrap(), 0);
        // R = k[u,x]/(u^2, ux): H^0_m(R) = (u), length 1.
        let r = ring(&["u", "x"], &["u^2", "u*x"]);
        assert_eq!(r.h0_length(&r.zero_ideal(), 40).unwrap(), 1);
        // Two-planes ring modulo (x - u): saturation adds x, length 1.
        let tp = ring(&["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]);
        let c = ideal(&tp, &["x - u"]);
        assert_eq!(tp.h0_length(&c, 40).unwrap(), 1);
    }

    #[test]
    fn local_colength_monotone_under_containment() {
        let r = ring(&["x", "y"], &[]);
        let pairs = [
            (ideal(&r, &["x^2", "y^2"]), ideal(&r, &["x", "y^2"])),
            (ideal(&r, &["x^3", "x*y", "y^3"]), ideal(&r, &["x", "y"])),
        ];
        for (small, big) in &pairs {
            assert!(big.contains_ideal(small).unwrap());
            assert!(
                r.local_colength(small, 40).unwrap() >= r.local_colength(big, 40).unwrap()
            );
        }
    }

    #[test]
    fn quotient_ring_construction() {
        let r = ring(&["x", "y", "z"], &[]);
        let x = r.parse_element("x").unwrap();
        let q = r.quotient_by(&[x]).unwrap();
        assert_eq!(q.dim(), 2);
        // Relations must vanish at the origin.
        let s = r.ambient().clone();
        assert!(PresentedLocalRing::new(&s, vec![Polynomial::parse(&s, "x - 1").unwrap()]).is_err());
    }

    #[test]
    fn element_normal_forms_are_canonical() {
        let r = ring(&["u", "x"], &["u^2", "u*x"]);
        let e = r.parse_element("u^2 + u*x + x").unwrap();
        assert_eq!(e.rep().to_string(), "x");
        let z = r.parse_element("u^2").unwrap();
        assert!(z.is_zero());
        assert_eq!(
            r.parse_element("u").unwrap().mul(&r.parse_element("x").unwrap()).unwrap(),
            r.parse_element("0").unwrap()
        );
    }
}
