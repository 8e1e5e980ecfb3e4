//! Contact sets, exact Lebesgue measure, and the tile verdict.
//!
//! The contact set `Γ` collects the lattice translates `s` with
//! `G ∩ (G + s) ≠ ∅`. If `x` and `x + s` both lie in `G` with leading digits
//! `a` and `b`, then `y = Mx - a` and `y' = y + (Ms + a - b)` lie in `G`
//! again, so every touching vector has a successor `Ms + a - b` that is also
//! touching. Pruning the candidate ball `|s| <= 2R` to the largest set where
//! every nonzero element keeps a successor therefore yields exactly `Γ`:
//! survivors carry infinite transition chains, and summing the chain digits
//! reconstructs a point of `G ∩ (G + s)`.
//!
//! The contact matrix `A` counts transitions; the overlap vector
//! `v_s = |G ∩ (G + s)|` satisfies `Av = mv`, `v_0 = |G|` and `Σv = |G|²`,
//! which pins the measure down exactly.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use serde::Serialize;

use crate::attractor::DigitSystem;
use crate::error::{Error, Result};
use crate::matrix::{int_vec_to_rational, invariant_lattice, kernel_basis, spectral_radius, IntMatrix};
use crate::Rational;

/// Cap on the candidate ball when building contact sets.
const CANDIDATE_BUDGET: usize = 3_000_000;

/// Cap on `m^k` for the residue test.
const RESIDUE_BUDGET: usize = 1 << 22;

/// Contact set with its transition matrices.
#[derive(Debug, Clone, Serialize)]
pub struct ContactGraph {
    /// Sorted lattice translates with `G ∩ (G+s) ≠ ∅`; contains 0, closed
    /// under negation.
    pub gamma: Vec<Vec<i64>>,
    /// `A_{s,s'} = #{(a,b) ∈ D×D : s' = Ms + a - b}`.
    pub a: Vec<Vec<i64>>,
    /// Per-digit split: `(T_a)_{s,s'} = #{b ∈ D : s' = Ms + a - b}`; sums to `A`.
    pub t: Vec<Vec<Vec<i64>>>,
}

impl ContactGraph {
    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn zero_index(&self) -> usize {
        let zero = vec![0i64; self.gamma[0].len()];
        self.gamma
            .binary_search(&zero)
            .expect("0 is always a contact translate")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("contact graph serializes")
    }
}

/// Computes the exact contact set of a digit system by candidate-ball pruning.
pub fn contact_set(sys: &DigitSystem) -> Result<ContactGraph> {
    let dim = sys.dim();
    let radius = 2.0 * sys.bounding_radius();
    let limit = radius.floor() as i64;
    let mut count = 1usize;
    for _ in 0..dim {
        count = count.saturating_mul(2 * limit as usize + 1);
    }
    if count > CANDIDATE_BUDGET {
        return Err(Error::budget(format!(
            "contact candidate ball has {count} lattice points (radius {radius:.2})"
        )));
    }

    let mut survivors: HashSet<Vec<i64>> = HashSet::new();
    let mut current = vec![-limit; dim];
    loop {
        let norm2: i64 = current.iter().map(|&c| c * c).sum();
        if (norm2 as f64) <= radius * radius {
            survivors.insert(current.clone());
        }
        let mut idx = 0;
        loop {
            if idx == dim {
                break;
            }
            current[idx] += 1;
            if current[idx] <= limit {
                break;
            }
            current[idx] = -limit;
            idx += 1;
        }
        if idx == dim {
            break;
        }
    }

    let zero = vec![0i64; dim];
    let digits = sys.digits();
    // Prune until every surviving nonzero translate has a successor.
    loop {
        let mut removals: Vec<Vec<i64>> = Vec::new();
        for s in survivors.iter() {
            if *s == zero {
                continue;
            }
            let ms = sys.matrix().mul_vec(s);
            let mut keeps = false;
            'pairs: for a in digits {
                for b in digits {
                    let succ: Vec<i64> = (0..dim).map(|i| ms[i] + a[i] - b[i]).collect();
                    if survivors.contains(&succ) {
                        keeps = true;
                        break 'pairs;
                    }
                }
            }
            if !keeps {
                removals.push(s.clone());
            }
        }
        if removals.is_empty() {
            break;
        }
        for s in removals {
            survivors.remove(&s);
        }
    }

    let mut gamma: Vec<Vec<i64>> = survivors.into_iter().collect();
    gamma.sort();
    let index: HashMap<Vec<i64>, usize> = gamma
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();

    let n = gamma.len();
    let m = sys.modulus();
    let mut t = vec![vec![vec![0i64; n]; n]; m];
    for (si, s) in gamma.iter().enumerate() {
        let ms = sys.matrix().mul_vec(s);
        for (ai, a) in digits.iter().enumerate() {
            for b in digits {
                let succ: Vec<i64> = (0..dim).map(|i| ms[i] + a[i] - b[i]).collect();
                if let Some(&sj) = index.get(&succ) {
                    t[ai][si][sj] += 1;
                }
            }
        }
    }
    let mut a_mat = vec![vec![0i64; n]; n];
    for ta in &t {
        for i in 0..n {
            for j in 0..n {
                a_mat[i][j] += ta[i][j];
            }
        }
    }

    let graph = ContactGraph {
        gamma,
        a: a_mat,
        t,
    };
    validate_contact_graph(sys, &graph)?;
    Ok(graph)
}

/// Structural checks: `Γ = -Γ`, `0 ∈ Γ`, and every column of every `T_a` sums
/// to one (each translate has exactly one predecessor per digit). A failure
/// means the pruning returned a wrong set, which is a bug, not input data.
fn validate_contact_graph(sys: &DigitSystem, g: &ContactGraph) -> Result<()> {
    let n = g.len();
    for s in &g.gamma {
        let neg: Vec<i64> = s.iter().map(|&c| -c).collect();
        if g.gamma.binary_search(&neg).is_err() {
            return Err(Error::disagreement("contact set is not symmetric"));
        }
    }
    g.zero_index();
    let m = sys.modulus() as i64;
    for ta in &g.t {
        for j in 0..n {
            let col: i64 = (0..n).map(|i| ta[i][j]).sum();
            if col != 1 {
                return Err(Error::disagreement(format!(
                    "transfer matrix column sums to {col}, expected 1"
                )));
            }
        }
        for row in ta {
            if row.iter().sum::<i64>() > m {
                return Err(Error::disagreement("transfer matrix row sum exceeds m"));
            }
        }
    }
    Ok(())
}

fn to_rational_rows(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect()
}

/// Dimension of `ker(A - mI)` over the rationals.
///
/// The overlap vector `v_s = |G ∩ (G+s)|` always lies in this kernel, and so
/// does the 0-indicator (column 0 of `A` is supported at row 0 alone, since
/// `Ms = ±a` would put a digit difference inside `MZ^d`). A one-dimensional
/// kernel therefore forces `v = μ e_0`, and `Σ v = μ²` pins `μ = 1`: the
/// attractor is a tile. A larger kernel certifies positive overlaps, i.e. a
/// non-tile.
fn eigen_kernel_dim(g: &ContactGraph, m: usize) -> usize {
    let mut shifted = to_rational_rows(&g.a);
    let m_rat = BigRational::from_integer(BigInt::from(m as i64));
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= &m_rat;
    }
    kernel_basis(&shifted).len()
}

/// Exact Lebesgue measure of the attractor, always a natural number.
///
/// A one-dimensional `m`-eigenspace of the contact matrix gives measure one.
/// Otherwise the digit differences generate a proper `M`-invariant sublattice
/// `L` (found exactly by integer lattice closure); rewriting the system in a
/// basis of `L` divides the measure by the index `[Z^d : L]` and lands on a
/// full-lattice system, so `μ = [Z^d : L] · μ_reduced`. Full-lattice
/// non-tiles are outside this certified route and are reported as errors
/// rather than approximated.
pub fn measure(sys: &DigitSystem) -> Result<u64> {
    let digits = sys.digits();
    let diffs: Vec<Vec<i64>> = digits[1..]
        .iter()
        .map(|d| {
            (0..sys.dim())
                .map(|i| d[i] - digits[0][i])
                .collect()
        })
        .collect();
    let (p, index) = invariant_lattice(sys.matrix(), &diffs)?;
    if index == 1 {
        let g = contact_set(sys)?;
        return if eigen_kernel_dim(&g, sys.modulus()) == 1 {
            Ok(1)
        } else {
            Err(Error::validation(
                "non-tile with full digit lattice: the measure is not determined \
                 by the contact spectrum and no exact route is available",
            ))
        };
    }

    // Change to the sublattice basis: M' = P^{-1} M P, digits P^{-1}(d - d_0).
    let p_inv = p.inverse_rational()?;
    let dim = sys.dim();
    let to_int = |v: Vec<Rational>| -> Result<Vec<i64>> {
        v.into_iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer()
                        .to_i64()
                        .ok_or_else(|| Error::validation("lattice coordinate overflow"))
                } else {
                    Err(Error::disagreement(
                        "sublattice reduction produced a non-integer coordinate",
                    ))
                }
            })
            .collect()
    };
    let mp = p_inv.mul(&sys.matrix().to_rational()).mul(&p.to_rational());
    let mut m_reduced = IntMatrix::zeros(dim)?;
    for i in 0..dim {
        for j in 0..dim {
            let entry = &mp[(i, j)];
            if !entry.is_integer() {
                return Err(Error::disagreement(
                    "sublattice is not M-invariant after reduction",
                ));
            }
            m_reduced[(i, j)] = entry
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::validation("reduced matrix overflow"))?;
        }
    }
    let mut reduced_digits = vec![vec![0i64; dim]];
    for diff in &diffs {
        reduced_digits.push(to_int(p_inv.mul_vec(&int_vec_to_rational(diff)))?);
    }
    let reduced = DigitSystem::new(m_reduced, reduced_digits)?;
    let inner = measure(&reduced)?;
    index
        .checked_mul(inner)
        .ok_or_else(|| Error::validation("measure overflow"))
}

/// Tile verdict: measure one. Two criteria run always — the dimension of the
/// `m`-eigenspace of the contact matrix and the spectral radius of `A`
/// restricted to `Γ \ {0}` — and must agree; disagreement indicates a bug
/// and aborts.
pub fn is_tile(sys: &DigitSystem) -> Result<bool> {
    let g = contact_set(sys)?;
    is_tile_from_graph(sys, &g)
}

pub(crate) fn is_tile_from_graph(sys: &DigitSystem, g: &ContactGraph) -> Result<bool> {
    let m = sys.modulus();
    let eigen_tile = eigen_kernel_dim(g, m) == 1;

    let n = g.len();
    let z = g.zero_index();
    let restricted = nalgebra::DMatrix::<f64>::from_fn(n - 1, n - 1, |i, j| {
        let ii = if i >= z { i + 1 } else { i };
        let jj = if j >= z { j + 1 } else { j };
        g.a[ii][jj] as f64
    });
    let rho = spectral_radius(&restricted);
    let mf = m as f64;
    let spectral_tile = if rho < mf - 1e-6 {
        true
    } else if (rho - mf).abs() <= 1e-6 {
        false
    } else {
        return Err(Error::disagreement(format!(
            "restricted contact spectral radius {rho} exceeds m = {m}"
        )));
    };

    if eigen_tile != spectral_tile {
        return Err(Error::disagreement(format!(
            "tile criteria disagree: m-eigenspace dimension {}, restricted spectral radius {rho}",
            eigen_kernel_dim(g, m)
        )));
    }
    Ok(eigen_tile)
}

/// Necessary (not sufficient) tile condition: the `m^k` depth-`k` digit sums
/// must be pairwise distinct modulo `M^k Z^d`. A collision certifies
/// `|G| > 1`; passing certifies nothing.
pub fn residue_test(sys: &DigitSystem, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::validation("residue test depth must be >= 1"));
    }
    let strings = sys
        .modulus()
        .checked_pow(k as u32)
        .unwrap_or(usize::MAX);
    if strings > RESIDUE_BUDGET {
        return Err(Error::budget(format!(
            "residue test needs {strings} digit strings, budget {RESIDUE_BUDGET}"
        )));
    }
    let scaling = crate::attractor::cloud_scaling(sys, k)?;
    let modulus = scaling.denominator.abs();
    let dim = sys.dim();
    let mut seen: HashSet<Vec<i128>> = HashSet::with_capacity(strings);
    let mut distinct = true;
    crate::attractor::stream_integer_cloud(sys, k, &mut |_, x| {
        if !distinct {
            return;
        }
        let key: Vec<i128> = (0..dim)
            .map(|i| {
                let acc: i128 = (0..dim).map(|j| scaling.adjugate[i][j] * x[j]).sum();
                acc.rem_euclid(modulus)
            })
            .collect();
        if !seen.insert(key) {
            distinct = false;
        }
    })?;
    Ok(distinct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use crate::poly::IntPolynomial;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn interval_system(second: i64) -> DigitSystem {
        DigitSystem::new(
            IntMatrix::from_rows(vec![vec![2]]).unwrap(),
            vec![vec![0], vec![second]],
        )
        .unwrap()
    }

    #[test]
    fn contact_set_of_unit_interval() {
        let g = contact_set(&interval_system(1)).unwrap();
        assert_eq!(g.gamma, vec![vec![-1], vec![0], vec![1]]);
        // T_0 + T_1 = A.
        for i in 0..g.len() {
            for j in 0..g.len() {
                assert_eq!(g.a[i][j], g.t[0][i][j] + g.t[1][i][j]);
            }
        }
    }

    #[test]
    fn contact_set_symmetry() {
        for s in ["-2,0,1", "2,2,1", "2,1,1,1", "2,-2,0,1"] {
            let sys = DigitSystem::companion_default(&p(s)).unwrap();
            let g = contact_set(&sys).unwrap();
            for v in &g.gamma {
                let neg: Vec<i64> = v.iter().map(|&c| -c).collect();
                assert!(g.gamma.binary_search(&neg).is_ok());
            }
        }
    }

    #[test]
    fn measure_examples() {
        assert_eq!(measure(&DigitSystem::companion_default(&p("-2,0,1")).unwrap()).unwrap(), 1);
        assert_eq!(measure(&interval_system(3)).unwrap(), 3);
        // Scaled digits multiply the measure by 3^d.
        let m = IntMatrix::companion(&p("-2,0,1")).unwrap();
        let scaled = DigitSystem::new(m, vec![vec![0, 0], vec![3, 0]]).unwrap();
        assert_eq!(measure(&scaled).unwrap(), 9);
    }

    #[test]
    fn scaling_law_one_dimensional() {
        assert_eq!(measure(&interval_system(1)).unwrap(), 1);
        assert_eq!(measure(&interval_system(3)).unwrap(), 3);
    }

    #[test]
    fn tile_examples() {
        for s in ["-2,0,1", "2,0,1", "2,2,1", "2,-2,1", "2,1,1", "2,-1,1"] {
            let sys = DigitSystem::companion_default(&p(s)).unwrap();
            assert!(is_tile(&sys).unwrap(), "{s} should be a tile");
        }
        assert!(!is_tile(&interval_system(3)).unwrap());
    }

    #[test]
    fn seven_cubics_are_tiles_with_small_contact_sets() {
        let cubics = ["2,2,2,1", "2,1,1,1", "2,0,0,1", "2,-1,-1,1", "2,-1,0,1", "2,-2,0,1", "2,0,1,1"];
        for s in cubics {
            let sys = DigitSystem::companion_default(&p(s)).unwrap();
            let g = contact_set(&sys).unwrap();
            assert!(
                (4..=23).contains(&g.len()),
                "{s}: |Γ| = {} outside the reported 4..=23",
                g.len()
            );
            assert!(is_tile(&sys).unwrap(), "{s} should be a tile");
        }
    }

    #[test]
    fn residue_test_examples() {
        let sys = DigitSystem::companion_default(&p("-2,0,1")).unwrap();
        for k in 1..=8 {
            assert!(residue_test(&sys, k).unwrap());
        }
        // Odd scaled digit passes the residue test despite measure 3: the
        // test is necessary, not sufficient.
        let non_tile = interval_system(3);
        for k in 1..=10 {
            assert!(residue_test(&non_tile, k).unwrap());
        }
        assert!(!is_tile(&non_tile).unwrap());
    }

    #[test]
    fn invalid_digits_rejected_upstream() {
        let m = IntMatrix::companion(&p("-2,0,1")).unwrap();
        assert!(DigitSystem::new(m, vec![vec![0, 0], vec![2, 0]]).is_err());
    }

    #[test]
    fn contact_graph_json_roundtrip() {
        let g = contact_set(&interval_system(1)).unwrap();
        let json = g.to_json();
        assert!(json.contains("\"gamma\""));
        assert!(json.contains("\"a\""));
    }
}
