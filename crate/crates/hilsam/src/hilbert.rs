//! Hilbert-Samuel tables, coefficient fitting, graded series, reductions,
//! and the Valabrega-Valla depth bound.
//!
//! For a parameter ideal Q of a d-dimensional R the function
//! H(Q, n) = lambda_R(R / Q^n) eventually agrees with a polynomial written
//! in the alternating binomial basis
//!
//! ```text
//! P(Q, x) = e0*C(x+d-1, d) - e1*C(x+d-2, d-1) + ... + (-1)^d * e_d
//! ```
//!
//! with integer coefficients e_0..e_d.  Fitting is exact: forward
//! differences of the trailing table entries give P, the alternating-basis
//! coefficients come out of the triangular system for P(0), P(-1), ...,
//! P(-d), and the postulation number eta(Q) = min { i : H(n) = P(n) for all
//! n > i } is found by scanning downward (H is extended by 0 for n <= 0).

use crate::error::{Error, Result};
use crate::par;
use crate::ring::{PresentedLocalRing, QuotientIdeal, RingElement};
use std::sync::Arc;

/// The values lambda_R(R / Q^n) for n = 0..=n_max.
#[derive(Debug, Clone)]
pub struct HilbertTable {
    ring: Arc<PresentedLocalRing>,
    d: u32,
    values: Vec<u64>,
}

impl HilbertTable {
    pub fn ring(&self) -> &Arc<PresentedLocalRing> {
        &self.ring
    }

    /// dim R, the degree of the Hilbert-Samuel polynomial.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n_max(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, n: u32) -> u64 {
        self.values[n as usize]
    }
}

/// Compute H(Q, n) for n = 0..=n_max.  Powers of Q are built up serially;
/// the (independent) colength computations run through [`par::map`].
pub fn hilbert_samuel_table(
    ring: &Arc<PresentedLocalRing>,
    q: &QuotientIdeal,
    n_max: u32,
    n_cap: u32,
) -> Result<HilbertTable> {
    table_impl(ring, q, n_max, n_cap, true)
}

/// Sequential twin of [`hilbert_samuel_table`], kept for benchmarking the
/// parallel map against a plain loop.  Results are identical.
pub fn hilbert_samuel_table_seq(
    ring: &Arc<PresentedLocalRing>,
    q: &QuotientIdeal,
    n_max: u32,
    n_cap: u32,
) -> Result<HilbertTable> {
    table_impl(ring, q, n_max, n_cap, false)
}

fn table_impl(
    ring: &Arc<PresentedLocalRing>,
    q: &QuotientIdeal,
    n_max: u32,
    n_cap: u32,
    parallel: bool,
) -> Result<HilbertTable> {
    if !q.ring().same(ring) {
        return Err(Error::RingMismatch("hilbert table".into()));
    }
    let dim = ring.dim();
    if dim < 0 {
        return Err(Error::invalid("the zero ring has no Hilbert-Samuel table"));
    }
    let d = dim as u32;
    if n_max < d + 3 {
        return Err(Error::invalid(format!(
            "n_max = {n_max} is too small for dimension {d}; need at least d + 3 = {}",
            d + 3
        )));
    }
    let mut powers = Vec::with_capacity(n_max as usize + 1);
    powers.push(q.power(0)?);
    for n in 1..=n_max {
        let next = powers[n as usize - 1].product(q)?;
        powers.push(next);
    }
    let jobs: Vec<QuotientIdeal> = powers;
    let compute = |p: QuotientIdeal| ring.local_colength(&p, n_cap);
    let results = if parallel {
        par::map(jobs, compute)
    } else {
        par::map_seq(jobs, compute)
    };
    let values = results.into_iter().collect::<Result<Vec<u64>>>()?;
    Ok(HilbertTable {
        ring: ring.clone(),
        d,
        values,
    })
}

/// The fitted polynomial: alternating-basis coefficients and the
/// postulation number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertCoefficients {
    d: u32,
    /// e_0, e_1, ..., e_d.  e_0 >= 1; the others may be negative.
    pub e: Vec<i64>,
    /// min { i : H(n) = P(n) for all n > i }, with H(n) = 0 for n <= 0.
    pub eta: i64,
}

impl HilbertCoefficients {
    pub fn d(&self) -> u32 {
        self.d
    }

    /// P(Q, x) at an integer, in the alternating binomial basis.  Always an
    /// integer, for any integer x.
    pub fn polynomial_value(&self, x: i64) -> i64 {
        let d = self.d as i128;
        let mut acc: i128 = 0;
        for (i, &ei) in self.e.iter().enumerate() {
            let i = i as i128;
            let term = ei as i128 * binomial(x as i128 + d - 1 - i, (d - i) as u32);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        i64::try_from(acc).expect("polynomial value overflows i64")
    }
}

/// C(x, k) for integer x (possibly negative) and k >= 0.
fn binomial(x: i128, k: u32) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= x - i;
        den *= i + 1;
    }
    num / den
}

/// Fit e_0..e_d and eta from a table.
///
/// The table must end in a genuinely polynomial stretch: the (d+1)-st
/// forward difference has to vanish at its trailing d + 2 positions, which
/// requires n_max >= 2d + 2.  Otherwise: [`Error::NoPolynomialWindow`].
pub fn fit_coefficients(table: &HilbertTable) -> Result<HilbertCoefficients> {
    fit_values(table.d(), table.values())
}

/// [`fit_coefficients`] on bare values (index n = 0..len-1) at a prescribed
/// dimension; used where a length table is assembled without a ring, like
/// the idealization cross-check.
pub fn fit_values(d: u32, values: &[u64]) -> Result<HilbertCoefficients> {
    if values.is_empty() {
        return Err(Error::invalid("empty table"));
    }
    let n_max = (values.len() - 1) as u32;
    let order = d + 1;
    let h: Vec<i128> = values.iter().map(|&v| v as i128).collect();
    // Positions n = 0 ..= n_max - order carry Delta^{d+1} H(n); the check
    // needs the last d + 2 of them.
    if n_max < 2 * d + 2 {
        return Err(Error::NoPolynomialWindow { order, n_max });
    }
    let first = (n_max - 2 * d - 2) as usize;
    for n in first..=(n_max - order) as usize {
        if difference(&h, order, n) != 0 {
            return Err(Error::NoPolynomialWindow { order, n_max });
        }
    }

    // Newton form on the last d + 1 points, base = n_max - d.
    let base = (n_max - d) as i128;
    let window = &h[(n_max - d) as usize..];
    let newton: Vec<i128> = (0..=d).map(|k| difference(window, k, 0)).collect();
    let p_at = |x: i128| -> i128 {
        (0..=d as usize)
            .map(|k| newton[k] * binomial(x - base, k as u32))
            .sum()
    };

    // P(-j) = (-1)^d * sum_{k <= j} C(j, k) e_{d-k}: solve triangularly.
    let sign = if d % 2 == 0 { 1 } else { -1 };
    let mut e = vec![0i128; d as usize + 1];
    for j in 0..=d {
        let mut rhs = sign * p_at(-(j as i128));
        for k in 0..j {
            rhs -= binomial(j as i128, k) * e[(d - k) as usize];
        }
        e[(d - j) as usize] = rhs;
    }
    let e: Vec<i64> = e
        .into_iter()
        .map(|v| i64::try_from(v).map_err(|_| Error::invalid("coefficient overflows i64")))
        .collect::<Result<_>>()?;
    if e[0] < 1 {
        return Err(Error::invalid(format!(
            "fitted multiplicity e0 = {} is not positive",
            e[0]
        )));
    }

    let coeffs = HilbertCoefficients {
        d,
        e,
        eta: i64::from(n_max),
    };
    // The alternating form must reproduce the interpolation window; this
    // ties the basis change back to the table.
    for n in (n_max - d)..=n_max {
        if coeffs.polynomial_value(n as i64) != h[n as usize] as i64 {
            return Err(Error::invalid("alternating basis does not match the table"));
        }
    }

    // eta: the largest n with H(n) != P(n).  P has at most d + 1 integer
    // roots and H vanishes for n <= 0, so a mismatch occurs by -(d + 2).
    let mut eta = None;
    for n in (-(d as i64 + 2)..=n_max as i64).rev() {
        let hn = if n <= 0 { 0 } else { h[n as usize] as i64 };
        if coeffs.polynomial_value(n) != hn {
            eta = Some(n);
            break;
        }
    }
    let eta = eta.ok_or_else(|| Error::invalid("postulation scan found no mismatch"))?;
    Ok(HilbertCoefficients { eta, ..coeffs })
}

/// The Hilbert series of gr_Q(R) as a rational function in t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeries {
    pub d: u32,
    /// h_k = H(k+1) - H(k) = lambda(Q^k / Q^{k+1}), k = 0..n_max-1.
    pub h: Vec<i64>,
    /// Numerator coefficients after multiplying by (1-t)^d, trailing zeros
    /// trimmed.
    pub numerator: Vec<i64>,
    /// Printed form, present when the numerator has visibly stabilized
    /// (trailing d + 2 coefficients zero within the window).
    pub closed_form: Option<String>,
}

pub fn graded_series(table: &HilbertTable) -> GradedSeries {
    let d = table.d();
    let values = table.values();
    let h: Vec<i64> = values
        .windows(2)
        .map(|w| w[1] as i64 - w[0] as i64)
        .collect();
    let binom: Vec<i128> = (0..=d).map(|i| binomial(d as i128, i)).collect();
    let mut a = vec![0i64; h.len()];
    for (k, ak) in a.iter_mut().enumerate() {
        let mut acc: i128 = 0;
        for i in 0..=(d as usize).min(k) {
            let term = binom[i] * h[k - i] as i128;
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        *ak = acc as i64;
    }
    let tail = (d + 2) as usize;
    let stabilized = a.len() >= tail && a[a.len() - tail..].iter().all(|&c| c == 0);
    let mut numerator = a;
    while numerator.last() == Some(&0) {
        numerator.pop();
    }
    let closed_form = stabilized.then(|| format_series(&numerator, d));
    GradedSeries {
        d,
        h,
        numerator,
        closed_form,
    }
}

fn format_series(numerator: &[i64], d: u32) -> String {
    let num = format_poly(numerator);
    let den = match d {
        0 => return num,
        1 => "(1 - t)".to_string(),
        _ => format!("(1 - t)^{d}"),
    };
    if num.contains(' ') {
        format!("({num})/{den}")
    } else {
        format!("{num}/{den}")
    }
}

fn format_poly(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else if c < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let power = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag == 1 {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{mag}{power}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Delta^k f at position n (forward differences).
fn difference(values: &[i128], k: u32, n: usize) -> i128 {
    let mut row: Vec<i128> = values[n..n + k as usize + 1].to_vec();
    for _ in 0..k {
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }
    row[0]
}

/// The reduction number r_J(I): the least r with I^{r+1} = J * I^r.
/// Requires J to be contained in I; gives up past `cap` with
/// [`Error::NotAReduction`].
pub fn reduction_number(i: &QuotientIdeal, j: &QuotientIdeal, cap: u32) -> Result<u32> {
    if !i.contains_ideal(j)? {
        return Err(Error::invalid("reduction_number: J is not contained in I"));
    }
    let mut i_pow = i.power(0)?;
    for r in 0..=cap {
        let next = i_pow.product(i)?;
        if j.product(&i_pow)?.equals(&next)? {
            return Ok(r);
        }
        i_pow = next;
    }
    Err(Error::NotAReduction { cap })
}

/// Result of the Valabrega-Valla scan, see [`vv_depth_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VvDepthBound {
    /// Certified lower bound for depth gr_Q(R): the largest prefix of `xs`
    /// passing both checks.
    pub k: u32,
    /// Window the intersection conditions were verified on.
    pub n_max: u32,
    /// Whether Q^n = (xs) Q^{n-1} was observed for some n <= n_max.
    pub reduction_reached: bool,
}

/// Certify `depth gr_Q(R) >= k` from a prefix x_1..x_k of `xs`.
///
/// For each j the scan demands two things: x_j is regular on
/// R/(x_1..x_{j-1}), i.e. ((x_1..x_{j-1}) : x_j) = (x_1..x_{j-1}), and the
/// Valabrega-Valla intersection condition
/// (x_1..x_j) cap Q^n = (x_1..x_j) Q^{n-1} holds for 2 <= n <= n_max.
/// Together these make the initial forms x_1*..x_j* a gr-regular sequence
/// (on the verified window); the intersection condition alone does not --
/// in k[x,y]/(y^2 - x^3) with Q = (x, y) it holds for j = 2 even though
/// depth gr is 1.
pub fn vv_depth_bound(
    ring: &Arc<PresentedLocalRing>,
    q: &QuotientIdeal,
    xs: &[RingElement],
    n_max: u32,
) -> Result<VvDepthBound> {
    if !q.ring().same(ring) {
        return Err(Error::RingMismatch("vv_depth_bound".into()));
    }
    for x in xs {
        if !q.contains(x)? {
            return Err(Error::invalid(format!(
                "vv_depth_bound: {} does not lie in Q",
                x.rep()
            )));
        }
    }
    let mut q_pow = Vec::with_capacity(n_max as usize + 1);
    q_pow.push(q.power(0)?);
    for n in 1..=n_max {
        let next = q_pow[n as usize - 1].product(q)?;
        q_pow.push(next);
    }

    let full = ring.ideal(xs)?;
    let mut reduction_reached = false;
    for n in 1..=n_max as usize {
        if full.product(&q_pow[n - 1])?.equals(&q_pow[n])? {
            reduction_reached = true;
            break;
        }
    }

    let mut k = 0;
    'outer: for j in 1..=xs.len() {
        let prev = ring.ideal(&xs[..j - 1])?;
        let colon = prev.colon_elem(&xs[j - 1])?;
        if !colon.equals(&prev)? {
            break;
        }
        let cur = ring.ideal(&xs[..j])?;
        for n in 2..=n_max as usize {
            let lhs = cur.intersection(&q_pow[n])?;
            let rhs = cur.product(&q_pow[n - 1])?;
            if !lhs.equals(&rhs)? {
                break 'outer;
            }
        }
        k = j as u32;
    }
    Ok(VvDepthBound {
        k,
        n_max,
        reduction_reached,
    })
}
