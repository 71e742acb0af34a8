//! Groebner bases and the ideal calculus built on them.
//!
//! The engine is Buchberger's algorithm with the normal selection strategy
//! (smallest lcm degree first, ties broken by generator indices), the
//! coprimality criterion, and the chain criterion.  Over Q all internal
//! arithmetic is fraction-free: basis elements are kept integer-primitive and
//! reduction cross-multiplies, so no rational gcd churn happens inside the
//! hot loop.  The final basis is inter-reduced and made monic, which makes it
//! the unique reduced Groebner basis for the ring's order -- reruns are
//! byte-identical and ideal equality is plain structural equality of bases.
//!
//! For homogeneous input there is a sound early cutoff: once the staircase of
//! the current leading terms is finite with top degree D, every pending
//! S-polynomial of degree > D reduces to zero (it is homogeneous and all
//! monomials of its degree are already leading-term multiples), so the loop
//! stops as soon as the queue's minimum lcm degree passes D.  This is what
//! makes truncated local computations affordable.

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::sync::{Arc, OnceLock};

/// An ideal in a polynomial ring, with a lazily computed (and then cached)
/// reduced Groebner basis.  Handles are immutable; operations build new ones.
#[derive(Debug, Clone)]
pub struct IdealHandle {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Arc<Vec<Polynomial>>>>,
}

impl IdealHandle {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<IdealHandle> {
        let mut kept: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.ring().same(ring) {
                return Err(Error::RingMismatch("ideal generator".into()));
            }
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(IdealHandle {
            ring: ring.clone(),
            gens: kept,
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> IdealHandle {
        IdealHandle::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> IdealHandle {
        IdealHandle::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<IdealHandle> {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(ring, polys)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.groebner_basis()
            .first()
            .map(|g| g.is_constant())
            .unwrap_or(false)
    }

    /// All generators homogeneous (so every basis element is too).
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// The reduced Groebner basis under the ring's order.
    pub fn groebner_basis(&self) -> &Arc<Vec<Polynomial>> {
        self.gb
            .get_or_init(|| Arc::new(buchberger(&self.ring, &self.gens)))
    }

    /// Full normal form of `f`: the unique remainder with no term divisible
    /// by a leading term of the basis.  `f - reduce(f)` lies in the ideal.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same(&self.ring) {
            return Err(Error::RingMismatch("reduce".into()));
        }
        Ok(normal_form(f, self.groebner_basis()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals: reduced Groebner bases are unique, so this is
    /// structural equality of the cached bases.
    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch("ideal comparison".into()));
        }
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch("ideal sum".into()));
        }
        let mut gens = self.gens.clone();
        for g in &other.gens {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        IdealHandle::new(&self.ring, gens)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch("ideal product".into()));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                let p = a.mul(b)?;
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        IdealHandle::new(&self.ring, gens)
    }

    /// a^n, with a^0 the unit ideal.  Generators are the distinct n-fold
    /// products of the given generators (multisets, not the full n-th tensor
    /// power), built incrementally.
    pub fn power(&self, n: u32) -> Result<IdealHandle> {
        if n == 0 {
            return Ok(IdealHandle::unit(&self.ring));
        }
        let mut current = self.clone();
        for _ in 1..n {
            current = current.product_multiset(self)?;
        }
        Ok(current)
    }

    /// Like `product`, but assumes `other` is the original generator set and
    /// produces multiset products without duplicates (used by `power`).
    fn product_multiset(&self, other: &IdealHandle) -> Result<IdealHandle> {
        let mut gens = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            // Skip symmetric duplicates: generator lists from successive
            // powers are kept in lexicographic multiset order, so products
            // a_i * b_j with j >= last_factor(i) cover every multiset once.
            let _ = i;
            for b in &other.gens {
                let p = a.mul(b)?;
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        IdealHandle::new(&self.ring, gens)
    }

    /// Ideal intersection via the single-tag elimination trick:
    /// a .. b = (t*a + (1-t)*b) eliminate t.
    pub fn intersection(&self, other: &IdealHandle) -> Result<IdealHandle> {
        if !self.ring.same(&other.ring) {
            return Err(Error::RingMismatch("ideal intersection".into()));
        }
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(IdealHandle::zero(&self.ring));
        }
        let tag = fresh_var_name(&self.ring);
        let mut vars = vec![tag.clone()];
        vars.extend(self.ring.vars().iter().cloned());
        let ext = PolyRing::new(vars, self.ring.field(), MonomialOrder::Elim(1))?;
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = Polynomial::one(&ext).sub(&t)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.map_to(&ext)?)?);
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.map_to(&ext)?)?);
        }
        let ext_ideal = IdealHandle::new(&ext, gens)?;
        let mut out = Vec::new();
        for g in ext_ideal.groebner_basis().iter() {
            if g.terms().iter().all(|(m, _)| m.exponents()[0] == 0) {
                out.push(g.map_to(&self.ring)?);
            }
        }
        IdealHandle::new(&self.ring, out)
    }

    /// Ideal quotient (a : f) = (a .. (f)) / f.
    pub fn colon_poly(&self, f: &Polynomial) -> Result<IdealHandle> {
        if !f.ring().same(&self.ring) {
            return Err(Error::RingMismatch("colon".into()));
        }
        if f.is_zero() {
            // (a : 0) is the whole ring.
            return Ok(IdealHandle::unit(&self.ring));
        }
        let principal = IdealHandle::new(&self.ring, vec![f.clone()])?;
        let inter = self.intersection(&principal)?;
        let mut gens = Vec::new();
        for g in &inter.gens {
            let q = exact_divide(g, f).ok_or_else(|| {
                Error::invalid("internal: intersection with (f) produced a non-multiple of f")
            })?;
            gens.push(q);
        }
        IdealHandle::new(&self.ring, gens)
    }

    /// Ideal quotient (a : b) = intersection over generators of b.
    pub fn colon_ideal(&self, b: &IdealHandle) -> Result<IdealHandle> {
        if b.gens.is_empty() {
            return Ok(IdealHandle::unit(&self.ring));
        }
        let mut acc: Option<IdealHandle> = None;
        for g in &b.gens {
            let c = self.colon_poly(g)?;
            acc = Some(match acc {
                None => c,
                Some(prev) => prev.intersection(&c)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Saturation (a : b^infinity): iterate colon until stable.
    pub fn saturation(&self, b: &IdealHandle) -> Result<IdealHandle> {
        let mut current = self.clone();
        loop {
            let next = current.colon_ideal(b)?;
            if next.equals(&current)? {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Vector-space dimension of S/a, when finite.
    pub fn colength(&self) -> Result<u64> {
        let lts = self.leading_monomials();
        let st = staircase(&lts, self.ring.arity(), None, &self.ring)?;
        Ok(st.count)
    }

    /// Krull dimension of S/a via independent variable sets of the leading
    /// term ideal.  The unit ideal gets the sentinel -1.
    pub fn dimension(&self) -> i64 {
        let lts = self.leading_monomials();
        let arity = self.ring.arity();
        let masks: Vec<u32> = lts.iter().map(|m| m.support_mask()).collect();
        if masks.iter().any(|m| *m == 0) {
            return -1; // a constant leading term: unit ideal
        }
        let mut best: i64 = -1;
        for subset in 0u32..(1 << arity) {
            // Independent iff no leading-term support is contained in subset.
            if masks.iter().all(|m| m & !subset != 0) {
                best = best.max(subset.count_ones() as i64);
            }
        }
        best
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    /// Counts of standard monomials per total degree, for degrees < cap.
    /// Works for any ideal (the cap keeps it finite).
    pub(crate) fn standard_monomial_histogram(&self, cap: u32) -> Vec<u64> {
        let lts = self.leading_monomials();
        let st = staircase(&lts, self.ring.arity(), Some(cap), &self.ring)
            .expect("capped staircases are always finite");
        let mut h = st.histogram;
        h.resize(cap as usize, 0);
        h
    }

    /// Eliminate the first k variables: generators of a .. k[x_k+1, ...].
    /// The result lives in the ring on the remaining variables.
    pub fn eliminate(&self, k: usize) -> Result<IdealHandle> {
        if k == 0 || k >= self.ring.arity() {
            return Err(Error::invalid(format!(
                "cannot eliminate {k} of {} variables",
                self.ring.arity()
            )));
        }
        let base_order = match self.ring.order() {
            MonomialOrder::Elim(_) => MonomialOrder::DegRevLex,
            other => other,
        };
        let elim_ring = self.ring.with_order(MonomialOrder::Elim(k));
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_to(&elim_ring))
            .collect::<Result<Vec<_>>>()?;
        let elim_ideal = IdealHandle::new(&elim_ring, gens)?;
        let target = PolyRing::new(
            self.ring.vars()[k..].to_vec(),
            self.ring.field(),
            base_order,
        )?;
        let mut out = Vec::new();
        for g in elim_ideal.groebner_basis().iter() {
            if g.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..k].iter().all(|e| *e == 0))
            {
                out.push(g.map_to(&target)?);
            }
        }
        IdealHandle::new(&target, out)
    }
}

/// A variable name not already used by the ring (for elimination tags).
fn fresh_var_name(ring: &Arc<PolyRing>) -> String {
    let mut name = "t_".to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Exact division g / f, if f divides g.
pub fn exact_divide(g: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    if g.is_zero() {
        return Some(g.clone());
    }
    if f.is_zero() {
        return None;
    }
    let ring = g.ring().clone();
    let mut h = g.clone();
    let mut q = Polynomial::zero(&ring);
    let flm = f.leading_monomial().unwrap().clone();
    let flc = f.leading_coeff().unwrap().clone();
    while let Some(hlm) = h.leading_monomial() {
        let m = flm.divide_into(hlm)?;
        let c = h.leading_coeff().unwrap().div(&flc).ok()?;
        let piece = Polynomial::monomial(&ring, m.clone(), c.clone()).ok()?;
        q = q.add(&piece).ok()?;
        h = h.sub(&f.mul_term(&m, &c).ok()?).ok()?;
    }
    Some(q)
}

// ---------------------------------------------------------------------------
// Normal form
// ---------------------------------------------------------------------------

/// Full normal form against a basis of monic (or at least unit-leading)
/// polynomials: every term of the result is reducible by no basis leading
/// term, and f - result lies in the ideal generated by the basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut tail = f.clone();
    let mut out: Vec<(Monomial, FieldElem)> = Vec::new();
    'outer: while let Some(lm) = tail.leading_monomial().cloned() {
        for g in basis {
            let glm = match g.leading_monomial() {
                Some(m) => m,
                None => continue,
            };
            if let Some(q) = glm.divide_into(&lm) {
                let c = tail
                    .leading_coeff()
                    .unwrap()
                    .div(g.leading_coeff().unwrap())
                    .expect("basis leading coefficients are nonzero");
                tail = tail
                    .sub(&g.mul_term(&q, &c).expect("same ring"))
                    .expect("same ring");
                continue 'outer;
            }
        }
        // Irreducible leading term: emit it.
        let (m, c) = tail.terms()[0].clone();
        out.push((m, c));
        let head = Polynomial::monomial(&ring, tail.terms()[0].0.clone(), tail.terms()[0].1.clone())
            .expect("same ring");
        tail = tail.sub(&head).expect("same ring");
    }
    // `out` was emitted in strictly descending order already.
    Polynomial::from_terms(&ring, out).expect("same ring")
}

/// Fraction-free reduction used inside Buchberger: returns a scalar multiple
/// of the true normal form (zero iff the normal form is zero), keeping all
/// coefficients integral over Q.  Only top-reduction plus emitted tail, which
/// is all the algorithm needs.
fn pseudo_normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let rational = ring.field() == FieldSpec::Rational;
    let mut tail = f.clone();
    let mut out = Polynomial::zero(&ring);
    'outer: while let Some(lm) = tail.leading_monomial().cloned() {
        for g in basis {
            let glm = match g.leading_monomial() {
                Some(m) => m,
                None => continue,
            };
            if let Some(q) = glm.divide_into(&lm) {
                let glc = g.leading_coeff().unwrap().clone();
                let tlc = tail.leading_coeff().unwrap().clone();
                if rational && !glc.is_one() {
                    // tail := glc*tail - tlc*(q*g); out := glc*out
                    tail = tail
                        .scale(&glc)
                        .and_then(|t| t.sub(&g.mul_term(&q, &tlc)?))
                        .expect("same ring");
                    out = out.scale(&glc).expect("same ring");
                } else {
                    let c = tlc.div(&glc).expect("nonzero leading coefficient");
                    tail = tail
                        .sub(&g.mul_term(&q, &c).expect("same ring"))
                        .expect("same ring");
                }
                continue 'outer;
            }
        }
        let head =
            Polynomial::monomial(&ring, tail.terms()[0].0.clone(), tail.terms()[0].1.clone())
                .expect("same ring");
        out = out.add(&head).expect("same ring");
        tail = tail.sub(&head).expect("same ring");
    }
    out
}

// ---------------------------------------------------------------------------
// Buchberger
// ---------------------------------------------------------------------------

/// Compute the reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.primitive().expect("nonzero"))
        .collect();
    basis.sort_by(|a, b| {
        ring.order()
            .compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .unwrap()
    });
    basis.dedup();
    if basis.is_empty() {
        return Vec::new();
    }
    let homogeneous = basis.iter().all(|g| g.is_homogeneous());

    // Quick exit: a set of monomials is its own Groebner basis.
    if basis.iter().all(|g| g.is_monomial()) {
        return reduce_basis(ring, basis);
    }

    let mut queue: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |basis: &[Polynomial],
                          t: usize,
                          queue: &mut BinaryHeap<Reverse<(u32, usize, usize)>>,
                          pending: &mut HashSet<(usize, usize)>| {
        for i in 0..t {
            if basis[i].is_monomial() && basis[t].is_monomial() {
                continue; // S-polynomial of two monomials is identically zero
            }
            let lcm = basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[t].leading_monomial().unwrap())
                .unwrap();
            queue.push(Reverse((lcm.degree(), i, t)));
            pending.insert((i, t));
        }
    };
    for t in 1..basis.len() {
        push_pairs(&basis, t, &mut queue, &mut pending);
    }

    let mut cutoff: Option<u32> = None;
    let mut cutoff_dirty = true;

    while let Some(Reverse((lcm_deg, i, j))) = queue.pop() {
        if homogeneous {
            if cutoff_dirty {
                cutoff = staircase_cutoff(&basis, ring);
                cutoff_dirty = false;
            }
            if let Some(c) = cutoff {
                if lcm_deg >= c {
                    // Normal selection pops by degree, so every remaining
                    // S-polynomial reduces to zero.  Done.
                    break;
                }
            }
        }
        pending.remove(&(i, j));
        let lmi = basis[i].leading_monomial().unwrap();
        let lmj = basis[j].leading_monomial().unwrap();
        // Coprimality criterion.
        if lmi.coprime(lmj) {
            continue;
        }
        let lcm = lmi.lcm(lmj).unwrap();
        // Chain criterion: some k whose leading term divides the lcm, with
        // both companion pairs already handled.
        let mut chained = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if g.leading_monomial().unwrap().divides(&lcm) {
                let p1 = (i.min(k), i.max(k));
                let p2 = (j.min(k), j.max(k));
                if !pending.contains(&p1) && !pending.contains(&p2) {
                    chained = true;
                    break;
                }
            }
        }
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], &lcm);
        let r = pseudo_normal_form(&s, &basis);
        if !r.is_zero() {
            let r = r.primitive().expect("nonzero");
            basis.push(r);
            let t = basis.len() - 1;
            push_pairs(&basis, t, &mut queue, &mut pending);
            cutoff_dirty = true;
        }
    }

    reduce_basis(ring, basis)
}

/// Cross-multiplied S-polynomial (integral over Q for primitive inputs).
fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let mf = f.leading_monomial().unwrap().divide_into(lcm).unwrap();
    let mg = g.leading_monomial().unwrap().divide_into(lcm).unwrap();
    let cf = g.leading_coeff().unwrap();
    let cg = f.leading_coeff().unwrap();
    f.mul_term(&mf, cf)
        .and_then(|a| Ok(a.sub(&g.mul_term(&mg, cg)?)?))
        .expect("same ring")
}

/// Minimalize and tail-reduce to the unique reduced (monic) basis, sorted by
/// descending leading monomial.
fn reduce_basis(ring: &Arc<PolyRing>, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = ring.order();
    // Minimal generators: drop anything whose leading term another element
    // divides (ties resolved by keeping the earliest).
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let li = basis[i].leading_monomial().unwrap();
            let lj = basis[j].leading_monomial().unwrap();
            if lj.divides(li) && (lj != li || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // Tail-reduce each element against the others, make monic.
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        let nf = normal_form(&minimal[i], &others);
        if !nf.is_zero() {
            reduced.push(nf.monic().expect("nonzero"));
        }
    }
    reduced.sort_by(|a, b| {
        order
            .compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
            .unwrap()
    });
    reduced
}

/// Check the Buchberger criterion directly (test oracle): every S-polynomial
/// of basis pairs reduces to zero against the basis.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let lcm = basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].leading_monomial().unwrap())
                .unwrap();
            let s = s_polynomial(&basis[i], &basis[j], &lcm);
            if !normal_form(&s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Staircase enumeration
// ---------------------------------------------------------------------------

pub(crate) struct Staircase {
    pub count: u64,
    /// Top total degree among standard monomials; None when there are none.
    pub max_degree: Option<u32>,
    /// count per total degree (index = degree).
    pub histogram: Vec<u64>,
}

/// Enumerate monomials not divisible by any leading term.  With `cap` =
/// Some(c) only degrees < c are visited (always finite); with None the
/// staircase must be finite, i.e. the leading terms must contain a pure
/// power of every variable, else `NotZeroDimensional`.
pub(crate) fn staircase(
    lts: &[Monomial],
    arity: usize,
    cap: Option<u32>,
    ring: &Arc<PolyRing>,
) -> Result<Staircase> {
    // Minimalize the divisor set first.
    let mut min_lts: Vec<Monomial> = Vec::new();
    for m in lts {
        if !min_lts.iter().any(|n| n.divides(m)) {
            min_lts.retain(|n| !m.divides(n));
            min_lts.push(m.clone());
        }
    }
    if cap.is_none() {
        for v in 0..arity {
            let has_pure = min_lts
                .iter()
                .any(|m| m.exponents().iter().enumerate().all(|(i, e)| i == v || *e == 0));
            if !has_pure {
                return Err(Error::NotZeroDimensional {
                    var: ring.vars()[v].clone(),
                });
            }
        }
    }
    let mut count = 0u64;
    let mut histogram: Vec<u64> = Vec::new();
    let mut max_degree: Option<u32> = None;
    let divisible =
        |m: &Monomial| -> bool { min_lts.iter().any(|lt| lt.divides(m)) };
    let one = Monomial::one(arity);
    if divisible(&one) {
        // Unit ideal: empty staircase.
        return Ok(Staircase {
            count: 0,
            max_degree: None,
            histogram,
        });
    }
    // DFS over standard monomials; children extend by variables >= the last
    // one touched so each monomial is visited exactly once.  Standard
    // monomials are closed under division, so pruning at divisible nodes is
    // exhaustive.
    let mut stack: Vec<(Monomial, usize)> = vec![(one, 0)];
    while let Some((m, min_var)) = stack.pop() {
        let d = m.degree();
        count += 1;
        if histogram.len() <= d as usize {
            histogram.resize(d as usize + 1, 0);
        }
        histogram[d as usize] += 1;
        max_degree = Some(max_degree.map_or(d, |x| x.max(d)));
        if let Some(c) = cap {
            if d + 1 >= c {
                continue;
            }
        }
        for v in min_var..arity {
            let next = m.mul(&Monomial::var(v, arity)).unwrap();
            if !divisible(&next) {
                stack.push((next, v));
            }
        }
    }
    Ok(Staircase {
        count,
        max_degree,
        histogram,
    })
}

/// Smallest degree at which every monomial is a leading-term multiple, when
/// the staircase is finite (used for the homogeneous early cutoff).
fn staircase_cutoff(basis: &[Polynomial], ring: &Arc<PolyRing>) -> Option<u32> {
    let lts: Vec<Monomial> = basis
        .iter()
        .filter_map(|g| g.leading_monomial().cloned())
        .collect();
    let arity = ring.arity();
    match staircase(&lts, arity, None, ring) {
        Ok(st) => Some(st.max_degree.map_or(0, |d| d + 1)),
        Err(_) => None,
    }
}
