//! Exact arithmetic on integer polynomials.
//!
//! Polynomials are stored as ascending coefficient vectors: `coeffs[0]` is the
//! free term, the last entry the (nonzero) leading coefficient. The polynomials
//! of interest here are *admissible*: monic with free term `±2`. An admissible
//! polynomial generates a 2-attractor exactly when it is *expanding*, i.e. all
//! of its roots have modulus strictly greater than one; that verdict is decided
//! exactly by a Schur–Cohn recursion over big integers, never by floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Complex64 = nalgebra::Complex<f64>;

/// Integer polynomial with ascending coefficients and nonzero leading term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending coefficients. The leading (last)
    /// coefficient must be nonzero.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::validation("empty coefficient vector")),
            Some(0) => Err(Error::validation("leading coefficient is zero")),
            Some(_) => Ok(IntPolynomial { coeffs }),
        }
    }

    /// Like [`IntPolynomial::new`] but drops trailing zero coefficients first.
    pub fn trimmed(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    /// `z^d + tail`, the monic monomial plus a free term.
    pub fn monomial_plus(d: usize, free: i64) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[0] = free;
        coeffs[d] = 1;
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().unwrap()
    }

    pub fn free_term(&self) -> i64 {
        self.coeffs[0]
    }

    /// Monic with free term `±2`: the polynomials that generate 2-attractors.
    pub fn is_admissible(&self) -> bool {
        self.degree() >= 1 && self.leading() == 1 && self.free_term().abs() == 2
    }

    /// Horner evaluation at a complex point.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(c as f64, 0.0);
        }
        acc
    }

    /// Exact Horner evaluation at an integer point.
    pub fn evaluate_int(&self, z: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + BigInt::from(c);
        }
        acc
    }

    /// Derivative, for root polishing.
    pub fn derivative(&self) -> IntPolynomial {
        if self.degree() == 0 {
            return IntPolynomial { coeffs: vec![0] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as i64)
            .collect();
        IntPolynomial { coeffs }
    }

    /// Product of two polynomials, with overflow checks.
    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut acc = vec![0i128; self.degree() + other.degree() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as i128 * b as i128;
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| i64::try_from(c).expect("coefficient overflow in polynomial product"))
            .collect();
        IntPolynomial { coeffs }
    }

    /// `self + other`.
    pub fn add(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        let mut coeffs = vec![0i64; self.coeffs.len().max(other.coeffs.len())];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeffs.get(k).copied().unwrap_or(0) + other.coeffs.get(k).copied().unwrap_or(0);
        }
        Self::trimmed(coeffs)
    }

    /// `self + n`.
    pub fn add_constant(&self, n: i64) -> IntPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += n;
        IntPolynomial::trimmed(coeffs).expect("constant shift keeps leading coefficient")
    }

    /// Exact polynomial division; `None` if the remainder is nonzero.
    pub fn checked_div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if divisor.degree() > self.degree() {
            return None;
        }
        let mut rem: Vec<i64> = self.coeffs.clone();
        let dl = divisor.leading();
        let dd = divisor.degree();
        let mut quot = vec![0i64; self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd];
            if lead % dl != 0 {
                return None;
            }
            let q = lead / dl;
            quot[k] = q;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * c;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        IntPolynomial::trimmed(quot).ok()
    }

    /// Substitutes `z^k` for the variable: returns `self(z^k)`.
    pub fn compose_power(&self, k: usize) -> IntPolynomial {
        assert!(k >= 1);
        let mut coeffs = vec![0i64; self.degree() * k + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * k] = c;
        }
        IntPolynomial { coeffs }
    }

    /// The opposite polynomial `q_k = (-1)^{d-k} p_k`; its roots are the
    /// negated roots of `self`.
    pub fn opposite(&self) -> IntPolynomial {
        let d = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| if (d - k) % 2 == 1 { -c } else { c })
            .collect();
        IntPolynomial { coeffs }
    }

    /// Canonical representative of the pair `{p, opposite(p)}`: the
    /// lexicographically smaller coefficient vector. Two admissible expanding
    /// polynomials generate affinely similar 2-attractors iff their keys agree.
    pub fn class_key(&self) -> IntPolynomial {
        let opp = self.opposite();
        if opp.coeffs < self.coeffs {
            opp
        } else {
            self.clone()
        }
    }

    pub fn is_self_opposite(&self) -> bool {
        *self == self.opposite()
    }

    /// Exact expansion test: true iff every root satisfies `|z| > 1` strictly.
    ///
    /// The reciprocal polynomial `z^d p(1/z)` has the reversed coefficient
    /// vector, and its roots are the reciprocals of the roots of `p`; the
    /// verdict is therefore a strict Schur stability test, run in exact big
    /// integer arithmetic. Roots exactly on the unit circle yield `false`.
    pub fn is_expanding(&self) -> Result<bool> {
        if self.degree() == 0 {
            return Err(Error::validation("expansion test requires degree >= 1"));
        }
        if self.free_term() == 0 {
            // 0 is a root.
            return Ok(false);
        }
        let reversed: Vec<BigInt> = self.coeffs.iter().rev().map(|&c| BigInt::from(c)).collect();
        Ok(schur_stable(reversed))
    }

    /// Mahler measure `|a_d| ∏ max(1, |λ_i|)` from polished floating roots.
    ///
    /// For an admissible expanding polynomial this equals `|a_0| = 2`.
    pub fn mahler_measure(&self) -> f64 {
        if self.degree() == 0 {
            return self.leading().abs() as f64;
        }
        let spectrum = self.root_spectrum();
        let mut mu = self.leading().abs() as f64;
        for root in &spectrum.roots {
            mu *= root.norm().max(1.0);
        }
        mu
    }

    /// Floating roots with a-posteriori inclusion radii. A cross-oracle only:
    /// exact verdicts never depend on it.
    pub fn root_spectrum(&self) -> RootSpectrum {
        root_spectrum(self)
    }

    /// True iff all roots share one modulus.
    ///
    /// Admissible polynomials are decided exactly against the finite catalog
    /// (`z^d ± 2`, and `q(z^{d/2})` for the six isotropic admissible
    /// quadratics), which is complete for free term `±2`. Other polynomials
    /// fall back to the certified numeric intervals.
    pub fn is_isotropic(&self) -> bool {
        if self.degree() == 0 {
            return true;
        }
        if self.is_admissible() {
            return self.isotropic_catalog_match().is_some();
        }
        let spectrum = self.root_spectrum();
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 0..spectrum.roots.len() {
            let (l, h) = spectrum.modulus_interval(i);
            lo = lo.min(l);
            hi = hi.max(h);
        }
        hi - lo < 1e-9 * (1.0 + hi)
    }

    /// For an isotropic admissible polynomial of even degree `2k`, the
    /// quadratic `q` with `p(z) = q(z^k)`; `None` for odd degree, where the
    /// polynomial is necessarily `z^d ± 2`.
    pub fn isotropic_quadratic_factor(&self) -> Result<Option<(IntPolynomial, usize)>> {
        if !self.is_admissible() || !self.is_isotropic() {
            return Err(Error::validation(format!(
                "{self} is not an admissible isotropic polynomial"
            )));
        }
        let d = self.degree();
        if d % 2 == 1 {
            return Ok(None);
        }
        let k = d / 2;
        let q = IntPolynomial::new(vec![self.coeffs[0], self.coeffs[k], 1])?;
        debug_assert_eq!(q.compose_power(k), *self);
        Ok(Some((q, k)))
    }

    fn isotropic_catalog_match(&self) -> Option<IntPolynomial> {
        let d = self.degree();
        if *self == IntPolynomial::monomial_plus(d, 2) || *self == IntPolynomial::monomial_plus(d, -2)
        {
            return Some(self.clone());
        }
        if d % 2 == 0 && d >= 2 {
            let k = d / 2;
            for q in isotropic_admissible_quadratics() {
                if q.compose_power(k) == *self {
                    return Some(q);
                }
            }
        }
        None
    }
}

/// The six admissible quadratics with both roots of modulus `√2`.
pub fn isotropic_admissible_quadratics() -> Vec<IntPolynomial> {
    [
        vec![-2, 0, 1],
        vec![2, 0, 1],
        vec![2, 1, 1],
        vec![2, -1, 1],
        vec![2, 2, 1],
        vec![2, -2, 1],
    ]
    .into_iter()
    .map(|c| IntPolynomial::new(c).unwrap())
    .collect()
}

/// Strict Schur stability: all roots of the polynomial (ascending
/// coefficients) lie in the open unit disc.
///
/// One reduction step: with `q*` the coefficient-reversed polynomial, the
/// polynomial `r(z) = (a_n q(z) - a_0 q*(z)) / z` of degree `n-1` is Schur
/// stable iff `q` is, provided `|a_0| < |a_n|`; if `|a_0| >= |a_n|` the root
/// product already forces a root with `|z| >= 1`. Roots on the unit circle are
/// inherited by `r` (if `q(z0) = 0` and `|z0| = 1` then `q*(z0) = 0`), so they
/// always surface as a failed strict comparison.
fn schur_stable(mut c: Vec<BigInt>) -> bool {
    while c.len() > 1 && c.last().unwrap().is_zero() {
        // Leading zeros would mean a degenerate representation; trim.
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return true;
    }
    let a0 = c[0].clone();
    let an = c[n].clone();
    if a0.abs() >= an.abs() {
        return false;
    }
    let mut next: Vec<BigInt> = (0..n)
        .map(|k| &an * &c[k + 1] - &a0 * &c[n - 1 - k])
        .collect();
    // The verdict only depends on the roots, so dividing out the coefficient
    // content keeps the doubling growth of the recursion in check.
    let mut content = BigInt::zero();
    for v in &next {
        content = num_integer::Integer::gcd(&content, v);
        if content.is_one() {
            break;
        }
    }
    if !content.is_zero() && !content.is_one() {
        for v in next.iter_mut() {
            *v /= &content;
        }
    }
    schur_stable(next)
}

/// Floating roots plus certified inclusion radii.
#[derive(Debug, Clone)]
pub struct RootSpectrum {
    pub roots: Vec<Complex64>,
    /// Per-root inclusion radius from the Newton residual bound
    /// `d |p(ẑ)| / |p'(ẑ)|`.
    pub radius: Vec<f64>,
    /// Set when the inclusion disc of this root overlaps another one.
    pub multiple: Vec<bool>,
}

impl RootSpectrum {
    /// Certified interval for the modulus of root `i`.
    pub fn modulus_interval(&self, i: usize) -> (f64, f64) {
        let m = self.roots[i].norm();
        ((m - self.radius[i]).max(0.0), m + self.radius[i])
    }

    pub fn min_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Floating expansion verdict with a safety margin; `None` when some
    /// modulus is within `margin` of 1, i.e. the oracle abstains.
    pub fn expanding_verdict(&self, margin: f64) -> Option<bool> {
        let min = self.min_modulus();
        if (min - 1.0).abs() <= margin {
            None
        } else {
            Some(min > 1.0)
        }
    }
}

/// Durand–Kerner (Weierstrass) iteration with deterministic starting points
/// and a hard iteration cap, followed by Newton polishing. Self-contained so
/// the floating oracle stays independent of any eigenvalue library.
fn root_spectrum(p: &IntPolynomial) -> RootSpectrum {
    let d = p.degree();
    if d == 0 {
        return RootSpectrum {
            roots: vec![],
            radius: vec![],
            multiple: vec![],
        };
    }
    let lead = p.leading() as f64;
    // Cauchy bound on root moduli.
    let cauchy = 1.0
        + p.coeffs[..d]
            .iter()
            .map(|&c| (c as f64 / lead).abs())
            .fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / d as f64;
            Complex64::from_polar(0.7 * cauchy, angle)
        })
        .collect();
    for _ in 0..600 {
        let mut delta: f64 = 0.0;
        for i in 0..d {
            let zi = roots[i];
            let mut denom = Complex64::new(lead, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = p.evaluate(zi) / denom;
            roots[i] = zi - step;
            delta = delta.max(step.norm() / (1.0 + roots[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    let dp = p.derivative();
    let mut radius = Vec::with_capacity(d);
    for z in roots.iter_mut() {
        for _ in 0..30 {
            let f = p.evaluate(*z);
            let df = dp.evaluate(*z);
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            if step.norm() > 0.1 * (1.0 + z.norm()) {
                break; // near a multiple root; Newton would bounce
            }
            *z -= step;
            if step.norm() < 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        let f = p.evaluate(*z);
        let df = dp.evaluate(*z);
        // Distance to the nearest true root: min of the Newton bound
        // d |p/p'| and the unconditional bound (|p|/|a_d|)^{1/d}.
        let general = (f.norm() / lead.abs()).powf(1.0 / d as f64);
        let r = if df.norm() == 0.0 {
            general
        } else {
            (d as f64 * f.norm() / df.norm()).min(general)
        };
        radius.push(r);
    }
    let mut multiple = vec![false; d];
    for i in 0..d {
        for j in 0..d {
            if i != j && (roots[i] - roots[j]).norm() <= radius[i] + radius[j] {
                multiple[i] = true;
            }
        }
    }
    RootSpectrum {
        roots,
        radius,
        multiple,
    }
}

impl serde::Serialize for IntPolynomial {
    /// Serialized in the text format: comma-separated ascending coefficients.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for IntPolynomial {
    /// Comma-separated ascending coefficients, e.g. `2,2,2,1` for `2+2z+2z²+z³`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        match coeffs {
            Ok(c) => IntPolynomial::new(c),
            Err(e) => Err(Error::validation(format!("bad polynomial '{s}': {e}"))),
        }
    }
}

/// Human-oriented rendering like `z^3 - 2z + 2`, used in reports.
pub fn pretty(p: &IntPolynomial) -> String {
    let mut out = String::new();
    for (k, &c) in p.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else if c < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        match k {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                }
                out.push('z');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn evaluate_examples() {
        // z^3 + 2 at z = 1 is the coefficient sum.
        assert_eq!(p("2,0,0,1").evaluate_int(&BigInt::from(1)), BigInt::from(3));
        // z^2 + 2z + 2 at z = -1.
        assert_eq!(p("2,2,1").evaluate_int(&BigInt::from(-1)), BigInt::from(1));
    }

    #[test]
    fn evaluate_near_real_root() {
        // Bisection oracle for the real root of z^3 - 2z + 2 in [-1.8, -1.7].
        let poly = p("2,-2,0,1");
        let f = |x: f64| x * x * x - 2.0 * x + 2.0;
        let (mut lo, mut hi) = (-1.8, -1.7);
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((root - (-1.769292)).abs() < 1e-5);
        // Evaluating just left of the root gives a small negative value.
        let v = poly.evaluate(Complex64::new(-1.7693, 0.0));
        assert!(v.im.abs() < 1e-12);
        assert!(v.re < 0.0 && v.re > -1e-3, "value {v}");
    }

    #[test]
    fn expanding_examples() {
        assert!(p("2,0,0,1").is_expanding().unwrap()); // z^3 + 2
        assert!(!p("-2,1,1").is_expanding().unwrap()); // z = 1 is a root
        assert!(p("2,2,2,2,1").is_expanding().unwrap());
        // Oracle: all moduli comfortably above 1.
        let spec = p("2,2,2,2,1").root_spectrum();
        assert!(spec.min_modulus() > 1.06);
        assert!(p("2,0,1").is_expanding().unwrap()); // z^2 + 2
        assert!(p("-2,0,1").is_expanding().unwrap()); // z^2 - 2
        assert!(!p("1,-2,1").is_expanding().unwrap()); // (z-1)^2
        assert!(!p("1,0,1").is_expanding().unwrap()); // roots on the circle
        assert!(p("2,-1,1").is_expanding().unwrap()); // bear quadratic
        assert!(p("-2,0,0,0,0,0,1").is_expanding().unwrap()); // z^6 - 2
    }

    #[test]
    fn expanding_rejects_degree_zero() {
        assert!(p("3").is_expanding().is_err());
    }

    #[test]
    fn expanding_matches_float_oracle_on_small_box() {
        // Exhaustive degree <= 4 over |a_k| <= 6; the float oracle abstains
        // within its margin of the unit circle.
        for d in 1..=4usize {
            let mut coeffs = vec![0i64; d + 1];
            sweep(&mut coeffs, 0, d, &mut |c: &[i64]| {
                if c[d] == 0 {
                    return;
                }
                let poly = IntPolynomial::new(c.to_vec()).unwrap();
                let exact = poly.is_expanding().unwrap();
                if let Some(float) = poly.root_spectrum().expanding_verdict(1e-6) {
                    assert_eq!(exact, float, "disagreement on {poly}");
                }
            });
        }
    }

    fn sweep(coeffs: &mut Vec<i64>, k: usize, d: usize, f: &mut impl FnMut(&[i64])) {
        if k > d {
            f(coeffs);
            return;
        }
        for v in -6..=6 {
            coeffs[k] = v;
            sweep(coeffs, k + 1, d, f);
        }
    }

    #[test]
    fn mahler_examples() {
        assert!((p("2,0,0,1").mahler_measure() - 2.0).abs() < 1e-9);
        assert!((p("-2,1").mahler_measure() - 2.0).abs() < 1e-9);
        // Roots 1 and -2: max(1,1) * max(1,2) = 2.
        assert!((p("-2,1,1").mahler_measure() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(p("2,1,1,1").opposite(), p("-2,1,-1,1"));
        assert_eq!(p("2,0,1").opposite(), p("2,0,1"));
        assert_eq!(p("-2,1").opposite(), p("2,1"));
        // Roots negate: cross-check via the root oracle.
        let a = p("2,1,1,1");
        let b = a.opposite();
        let ra = a.root_spectrum();
        let rb = b.root_spectrum();
        for z in &ra.roots {
            let closest = rb
                .roots
                .iter()
                .map(|w| (w + z).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(closest < 1e-8);
        }
    }

    #[test]
    fn class_key_examples() {
        assert_eq!(p("2,1,1,1").class_key(), p("-2,1,-1,1").class_key());
        assert_eq!(p("2,0,1").class_key(), p("2,0,1"));
        assert_eq!(p("2,2,1").class_key(), p("2,-2,1").class_key());
        assert_ne!(p("2,2,1").class_key(), p("2,1,1").class_key());
    }

    #[test]
    fn isotropy_examples() {
        assert!(p("2,0,0,1").is_isotropic()); // z^3 + 2
        assert!(!p("2,1,1,1").is_isotropic());
        assert!(p("2,0,1,0,1").is_isotropic()); // z^4 + z^2 + 2
        assert!(p("2,2,1").is_isotropic()); // dragon
        assert!(p("2,1,1").is_isotropic()); // bear
        assert!(!p("2,0,1,1").is_isotropic()); // z^3 + z^2 + 2
        // Numeric cross-check of the non-isotropic cubic: real root and the
        // complex pair have clearly distinct moduli.
        let spec = p("2,1,1,1").root_spectrum();
        let real = spec
            .roots
            .iter()
            .find(|z| z.im.abs() < 1e-9)
            .expect("real root");
        assert!((real.norm() - 1.3532).abs() < 1e-3);
        let pair = spec
            .roots
            .iter()
            .find(|z| z.im.abs() > 1e-9)
            .expect("complex root");
        assert!((pair.norm() - 1.2157).abs() < 1e-3);
    }

    #[test]
    fn isotropic_catalog_agrees_with_numeric_intervals() {
        // Every admissible polynomial of degree <= 6 with |a_k| <= 2: the
        // catalog verdict must match the certified-interval verdict whenever
        // the intervals are decisive.
        for d in 1..=6usize {
            let mut coeffs = vec![0i64; d + 1];
            coeffs[d] = 1;
            sweep_middle(&mut coeffs, 1, d, &mut |c: &[i64]| {
                for a0 in [-2i64, 2] {
                    let mut v = c.to_vec();
                    v[0] = a0;
                    let poly = IntPolynomial::new(v).unwrap();
                    let catalog = poly.is_isotropic();
                    let spec = poly.root_spectrum();
                    let spread = spec.max_modulus() - spec.min_modulus();
                    if spread > 1e-6 {
                        assert!(!catalog, "catalog says isotropic but spread {spread} on {poly}");
                    } else if spread < 1e-9 && !spec.multiple.iter().any(|&m| m) {
                        assert!(catalog, "numerically isotropic but no catalog match on {poly}");
                    }
                }
            });
        }
    }

    fn sweep_middle(coeffs: &mut Vec<i64>, k: usize, d: usize, f: &mut impl FnMut(&[i64])) {
        if k >= d {
            f(coeffs);
            return;
        }
        for v in -2..=2 {
            coeffs[k] = v;
            sweep_middle(coeffs, k + 1, d, f);
        }
    }

    #[test]
    fn quadratic_factor_examples() {
        let (q, k) = p("2,0,1,0,1").isotropic_quadratic_factor().unwrap().unwrap();
        assert_eq!(q, p("2,1,1"));
        assert_eq!(k, 2);
        assert_eq!(q.compose_power(k), p("2,0,1,0,1"));

        let (q, k) = p("-2,0,0,0,0,0,1").isotropic_quadratic_factor().unwrap().unwrap();
        assert_eq!(q, p("-2,0,1"));
        assert_eq!(k, 3);

        assert!(p("2,0,0,1").isotropic_quadratic_factor().unwrap().is_none());
        assert!(p("2,1,1,1").isotropic_quadratic_factor().is_err());
    }

    #[test]
    fn division_and_composition() {
        // (z^2 + z - 2) / (z - 1) = z + 2
        assert_eq!(p("-2,1,1").checked_div_exact(&p("-1,1")), Some(p("2,1")));
        assert_eq!(p("2,1,1").checked_div_exact(&p("-1,1")), None);
        assert_eq!(p("2,1,1").compose_power(3), p("2,0,0,1,0,0,1"));
    }

    #[test]
    fn pretty_rendering() {
        assert_eq!(pretty(&p("2,-2,0,1")), "z^3 - 2z + 2");
        assert_eq!(pretty(&p("2,0,1")), "z^2 + 2");
    }
}
