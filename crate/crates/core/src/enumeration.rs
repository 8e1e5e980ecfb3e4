//! Exhaustive enumeration of admissible expanding polynomials by degree.
//!
//! The search runs over monic integer polynomials with free term `±2`. For an
//! expanding polynomial the root moduli lie in `(1, 2)` with product exactly
//! 2, which gives sound coefficient and power-sum bounds:
//!
//! * `|a_k| < 2 C(d, k)` — every elementary symmetric term is a product of
//!   root subsets, each worth less than 2;
//! * `|p_j| < 2^j + d - 1` — the power sum `Σ |λ_i|^j` is maximized at the
//!   extreme configuration (one modulus at 2, the rest at 1), never attained;
//! * in particular `|a_{d-1}| <= d`.
//!
//! Power sums of a coefficient prefix `a_{d-1}, ..., a_{d-j}` are available
//! through Newton's identities, so violating prefixes are cut before any
//! recursion below them. Every surviving candidate receives the exact
//! Schur–Cohn verdict. A regression test checks the pruned search against the
//! unpruned coefficient box for small degrees.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Hard cap: Table-scale enumeration is defined for degrees 1 through 8.
pub const MAX_DEGREE: usize = 8;

/// Complete enumeration result for one degree.
#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    pub degree: usize,
    /// All admissible expanding polynomials, sorted by coefficient vector.
    pub polys: Vec<IntPolynomial>,
    /// Distinct class keys (opposite-equivalence representatives), sorted.
    pub classes: Vec<IntPolynomial>,
    /// Geometric class count; differs from `classes.len()` only at degree 2,
    /// where `z²+2` and `z²-2` both generate a square.
    pub geometric_classes: usize,
}

impl Catalog {
    pub fn n_polys(&self) -> usize {
        self.polys.len()
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn contains(&self, p: &IntPolynomial) -> bool {
        self.polys.binary_search(p).is_ok()
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k.min(n - k) {
        num *= (n - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

/// Newton's identity: `p_j = Σ_{i<j} (-1)^{i-1} e_i p_{j-i} + (-1)^{j-1} j e_j`.
fn next_power_sum(e: &[i128], p: &[i128]) -> i128 {
    let j = p.len() + 1;
    let mut sum: i128 = 0;
    for i in 1..j {
        let term = e[i] * p[j - i - 1];
        if i % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let last = (j as i128) * e[j];
    if j % 2 == 1 {
        sum += last;
    } else {
        sum -= last;
    }
    sum
}

struct SearchFrame {
    degree: usize,
    /// Ascending coefficients, filled from the top down.
    coeffs: Vec<i64>,
    /// Elementary symmetric values `e_1..e_j` of the prefix (index 0 unused).
    elementary: Vec<i128>,
    /// Power sums `p_1..p_j` of the prefix.
    power_sums: Vec<i128>,
}

fn search(frame: &mut SearchFrame, level: usize, out: &mut Vec<IntPolynomial>) {
    let d = frame.degree;
    if level == d {
        let poly = IntPolynomial::new(frame.coeffs.clone()).unwrap();
        if poly.is_expanding().unwrap() {
            out.push(poly);
        }
        return;
    }
    // Choosing a_{d-level} at this level; j = level is the prefix length.
    let j = level;
    let bound = if j == 1 {
        d as i64
    } else {
        2 * binomial(d, j)
    };
    for a in -bound..=bound {
        frame.coeffs[d - j] = a;
        // e_j = (-1)^j a_{d-j}
        let e_j = if j % 2 == 1 { -(a as i128) } else { a as i128 };
        frame.elementary.push(e_j);
        let p_j = next_power_sum(&frame.elementary, &frame.power_sums);
        let cutoff = (1i128 << j) + d as i128 - 1;
        if p_j.abs() < cutoff {
            frame.power_sums.push(p_j);
            search(frame, level + 1, out);
            frame.power_sums.pop();
        }
        frame.elementary.pop();
    }
}

/// Enumerates all admissible expanding polynomials of the given degree.
pub fn enumerate_expanding(d: usize) -> Result<Catalog> {
    if d == 0 || d > MAX_DEGREE {
        return Err(Error::budget(format!(
            "enumeration supports degrees 1..={MAX_DEGREE}, got {d}"
        )));
    }
    // Work partitioning: split on the free-term sign and the a_{d-1} value.
    let mut tasks: Vec<(i64, Option<i64>)> = Vec::new();
    if d == 1 {
        tasks.push((2, None));
        tasks.push((-2, None));
    } else {
        for a0 in [2i64, -2] {
            for top in -(d as i64)..=d as i64 {
                tasks.push((a0, Some(top)));
            }
        }
    }
    let mut polys: Vec<IntPolynomial> = tasks
        .into_par_iter()
        .map(|(a0, top)| {
            let mut coeffs = vec![0i64; d + 1];
            coeffs[0] = a0;
            coeffs[d] = 1;
            let mut frame = SearchFrame {
                degree: d,
                coeffs,
                elementary: vec![0i128],
                power_sums: vec![],
            };
            let mut local = Vec::new();
            match top {
                None => search(&mut frame, 1, &mut local),
                Some(t) => {
                    // Replay level 1 with a fixed a_{d-1}.
                    frame.coeffs[d - 1] = t;
                    frame.elementary.push(-(t as i128));
                    let p1 = next_power_sum(&frame.elementary, &frame.power_sums);
                    if p1.abs() < 2 + d as i128 - 1 {
                        frame.power_sums.push(p1);
                        search(&mut frame, 2, &mut local);
                    }
                }
            }
            local
        })
        .reduce(Vec::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    polys.sort();
    polys.dedup();

    let mut classes: Vec<IntPolynomial> = polys.iter().map(|p| p.class_key()).collect();
    classes.sort();
    classes.dedup();

    // At d = 2 the opposite-classification yields four keys but z²+2 and
    // z²-2 both generate squares: three geometric classes.
    let geometric_classes = if d == 2 {
        classes.len() - 1
    } else {
        classes.len()
    };

    Ok(Catalog {
        degree: d,
        polys,
        classes,
        geometric_classes,
    })
}

/// Reference path for the soundness regression: plain sweep of the full
/// coefficient box `|a_k| <= 2 C(d,k)` with no pruning.
pub fn enumerate_unpruned_box(d: usize) -> Result<Vec<IntPolynomial>> {
    if d == 0 || d > 4 {
        return Err(Error::budget(
            "unpruned reference enumeration is limited to degree <= 4",
        ));
    }
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; d + 1];
    coeffs[d] = 1;
    for a0 in [2i64, -2] {
        coeffs[0] = a0;
        box_sweep(&mut coeffs, 1, d, &mut out);
    }
    out.sort();
    out.dedup();
    return Ok(out);

    fn box_sweep(coeffs: &mut Vec<i64>, k: usize, d: usize, out: &mut Vec<IntPolynomial>) {
        if k == d {
            let poly = IntPolynomial::new(coeffs.clone()).unwrap();
            if poly.is_expanding().unwrap() {
                out.push(poly);
            }
            return;
        }
        let bound = 2 * binomial(d, k);
        for a in -bound..=bound {
            coeffs[k] = a;
            box_sweep(coeffs, k + 1, d, out);
        }
    }
}

/// Number of opposite-equivalence classes at degree `d`.
pub fn count_classes(d: usize) -> Result<usize> {
    Ok(enumerate_expanding(d)?.n_classes())
}

/// The Mahler-measure counting bound `2^{d (1 + 16 ln ln d / ln d)}`; the
/// class count can never exceed it.
pub fn theoretical_upper_bound(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::validation(
            "the counting bound needs d >= 3 (ln ln d must be positive)",
        ));
    }
    let df = d as f64;
    let exponent = df * (1.0 + 16.0 * df.ln().ln() / df.ln());
    Ok(exponent.exp2())
}

/// Table of known counts `(degree, polynomials, classes)` for cross-checks.
pub const KNOWN_COUNTS: [(usize, usize, usize); 7] = [
    (2, 6, 4),
    (3, 14, 7),
    (4, 36, 21),
    (5, 58, 29),
    (6, 128, 71),
    (7, 190, 95),
    (8, 362, 199),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn degree_one() {
        let catalog = enumerate_expanding(1).unwrap();
        assert_eq!(catalog.polys, vec![p("-2,1"), p("2,1")]);
        assert_eq!(catalog.n_classes(), 1);
    }

    #[test]
    fn degree_two() {
        let catalog = enumerate_expanding(2).unwrap();
        assert_eq!(catalog.n_polys(), 6);
        let expected: Vec<IntPolynomial> = ["-2,0,1", "2,-2,1", "2,-1,1", "2,0,1", "2,1,1", "2,2,1"]
            .iter()
            .map(|s| p(s))
            .collect();
        assert_eq!(catalog.polys, expected);
        assert_eq!(catalog.n_classes(), 4);
        assert_eq!(catalog.geometric_classes, 3);
    }

    #[test]
    fn degree_three() {
        let catalog = enumerate_expanding(3).unwrap();
        assert_eq!(catalog.n_polys(), 14);
        assert_eq!(catalog.n_classes(), 7);
    }

    #[test]
    fn degree_four_counts_and_class_identity() {
        let catalog = enumerate_expanding(4).unwrap();
        assert_eq!(catalog.n_polys(), 36);
        assert_eq!(catalog.n_classes(), 21);
        // Self-opposite polynomials of degree 4 are exactly q(z²) over the
        // degree-2 catalog.
        let quadratics = enumerate_expanding(2).unwrap();
        let self_opposite: Vec<IntPolynomial> = catalog
            .polys
            .iter()
            .filter(|poly| poly.is_self_opposite())
            .cloned()
            .collect();
        let composed: Vec<IntPolynomial> = {
            let mut v: Vec<IntPolynomial> =
                quadratics.polys.iter().map(|q| q.compose_power(2)).collect();
            v.sort();
            v
        };
        assert_eq!(self_opposite, composed);
        assert_eq!(
            catalog.n_classes(),
            (catalog.n_polys() - self_opposite.len()) / 2 + self_opposite.len()
        );
    }

    #[test]
    fn closed_under_opposite() {
        for d in 1..=5 {
            let catalog = enumerate_expanding(d).unwrap();
            for poly in &catalog.polys {
                assert!(catalog.contains(&poly.opposite()), "{poly} at degree {d}");
            }
        }
    }

    #[test]
    fn every_member_has_mahler_measure_two() {
        for d in 1..=5 {
            let catalog = enumerate_expanding(d).unwrap();
            for poly in &catalog.polys {
                assert!((poly.mahler_measure() - 2.0).abs() < 1e-9, "{poly}");
            }
        }
    }

    #[test]
    fn pruned_search_matches_unpruned_box() {
        for d in 1..=4 {
            let pruned = enumerate_expanding(d).unwrap().polys;
            let reference = enumerate_unpruned_box(d).unwrap();
            assert_eq!(pruned, reference, "degree {d}");
        }
    }

    #[test]
    fn upper_bound_examples() {
        let b8 = theoretical_upper_bound(8).unwrap();
        assert!((b8.log2() - 53.06).abs() < 0.05, "log2 = {}", b8.log2());
        for d in 3..8 {
            assert!(theoretical_upper_bound(d).unwrap() <= theoretical_upper_bound(d + 1).unwrap());
        }
        assert!((count_classes(6).unwrap() as f64) <= theoretical_upper_bound(6).unwrap());
        assert!(theoretical_upper_bound(2).is_err());
    }

    #[test]
    fn known_counts_up_to_six() {
        for &(d, n_polys, n_classes) in KNOWN_COUNTS.iter().take(5) {
            let catalog = enumerate_expanding(d).unwrap();
            assert_eq!(catalog.n_polys(), n_polys, "degree {d} polynomials");
            assert_eq!(catalog.n_classes(), n_classes, "degree {d} classes");
        }
    }
}
