//! Convex hulls of 2-attractors as truncated zonotopes, polytope detection,
//! and recovery of the dilation from its segment trajectory.
//!
//! The hull of `G(M, {0, a})` is the infinite zonotope `Σ_{k≥1} M^{-k} ā`
//! with `ā = [0, a]`. Truncating after `K` segments leaves a Hausdorff error
//! bounded by the tail of the norm series. Internally the zonotope is kept in
//! symmetric-segment mode around the truncated symmetry center, which makes
//! the two-dimensional vertex walk a plain angular sweep.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::attractor::{classify_isotropic, AttractorClass, DigitSystem};
use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::poly::IntPolynomial;
use crate::Rational;

/// Truncated Minkowski sum of the segments `M^{-k} a`, plus a tail bound.
#[derive(Debug, Clone)]
pub struct Zonotope {
    /// Generators `M^{-1}a, ..., M^{-K}a`, exact.
    pub generators: Vec<Vec<Rational>>,
    pub depth: usize,
    /// Center `½ Σ_{k<=K} M^{-k} a` of the truncated hull.
    pub center: Vec<Rational>,
    /// Upper bound on the Hausdorff distance to the infinite zonotope.
    pub tail_bound: f64,
}

/// Truncated convex hull of a two-digit system.
pub fn hull_zonotope(sys: &DigitSystem, depth: usize) -> Result<Zonotope> {
    if sys.digits().len() != 2 || sys.digits()[0].iter().any(|&c| c != 0) {
        return Err(Error::validation("hull construction needs digits {0, a}"));
    }
    if depth == 0 {
        return Err(Error::validation("hull depth must be >= 1"));
    }
    let inv = sys.matrix().inverse_rational()?;
    let a = crate::matrix::int_vec_to_rational(&sys.digits()[1]);
    let mut generators = Vec::with_capacity(depth);
    let mut v = a;
    for _ in 0..depth {
        v = inv.mul_vec(&v);
        generators.push(v.clone());
    }
    let center = sys.truncated_center(depth)?;
    let tail_bound = tail_bound(sys, depth);
    Ok(Zonotope {
        generators,
        depth,
        center,
        tail_bound,
    })
}

/// `Σ_{k>K} |M^{-k} a| <= min_{J<=K} ‖M^{-J}‖ · |a| · Σ_{j>=1} ‖M^{-j}‖`;
/// taking the minimum over earlier truncation depths keeps the bound
/// monotone in `K`.
fn tail_bound(sys: &DigitSystem, depth: usize) -> f64 {
    let series = crate::attractor::inverse_norm_series(sys.matrix());
    let a_norm = sys.digits()[1]
        .iter()
        .map(|&c| (c * c) as f64)
        .sum::<f64>()
        .sqrt();
    let inv = sys
        .matrix()
        .inverse_rational()
        .expect("expanding matrix is invertible")
        .to_f64();
    let mut power = inv.clone();
    let mut best = f64::INFINITY;
    for _ in 1..=depth {
        best = best.min(crate::attractor::operator_norm(&power));
        power *= &inv;
    }
    best * a_norm * series
}

/// Canonical direction of a nonzero plane vector: scaled to the half-plane
/// `x > 0 or (x = 0, y > 0)` and reduced.
fn canonical_direction(v: &[Rational]) -> (Vec<Rational>, bool) {
    let flip = v[0].is_negative() || (v[0].is_zero() && v[1].is_negative());
    let sign = if flip { -1 } else { 1 };
    let scale: Rational = v.iter().map(|c| c.abs()).sum();
    let dir: Vec<Rational> = v
        .iter()
        .map(|c| c * BigRational::from_integer(BigInt::from(sign)) / &scale)
        .collect();
    (dir, flip)
}

/// Vertices of a two-dimensional truncated zonotope, counterclockwise.
/// Parallel generators merge; the polygon of `n` merged directions has `2n`
/// vertices.
pub fn hull_vertices_2d(z: &Zonotope) -> Result<Vec<Vec<Rational>>> {
    if z.generators.is_empty() || z.generators[0].len() != 2 {
        return Err(Error::validation("vertex construction requires dimension 2"));
    }
    // Merge parallel generators: group by canonical direction.
    let mut merged: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new(); // (direction, summed vector)
    for g in &z.generators {
        if g.iter().all(|c| c.is_zero()) {
            return Err(Error::validation("zero generator"));
        }
        let (dir, flip) = canonical_direction(g);
        let signed: Vec<Rational> = if flip { g.iter().map(|c| -c).collect() } else { g.clone() };
        match merged.iter_mut().find(|(d, _)| *d == dir) {
            Some((_, sum)) => {
                for (s, c) in sum.iter_mut().zip(signed.iter()) {
                    *s += c;
                }
            }
            None => merged.push((dir, signed)),
        }
    }
    // Angular sort within the half-plane by exact cross products.
    merged.sort_by(|(_, u), (_, v)| {
        let cross = &u[0] * &v[1] - &u[1] * &v[0];
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });

    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    // Start at the vertex supporting the downward directions: center - ½ Σ w.
    let mut start: Vec<Rational> = z.center.clone();
    for (_, w) in &merged {
        for (s, c) in start.iter_mut().zip(w.iter()) {
            *s -= &half * c;
        }
    }
    let mut vertices = Vec::with_capacity(2 * merged.len());
    let mut cursor = start.clone();
    vertices.push(cursor.clone());
    for (_, w) in &merged {
        cursor = cursor.iter().zip(w.iter()).map(|(c, x)| c + x).collect();
        vertices.push(cursor.clone());
    }
    for (_, w) in &merged {
        cursor = cursor.iter().zip(w.iter()).map(|(c, x)| c - x).collect();
        vertices.push(cursor.clone());
    }
    // The walk closes on the start vertex.
    let closing = vertices.pop();
    debug_assert_eq!(closing, Some(start));
    Ok(vertices)
}

/// Polytope-hull verdict plus the predicted vertex count where applicable:
/// parallelepipeds have `2^d` vertices, dragon products `2^{3d/2}`.
pub fn is_polytope_hull(p: &IntPolynomial) -> Result<(bool, Option<u128>)> {
    let d = p.degree() as u32;
    Ok(match classify_isotropic(p)? {
        AttractorClass::Parallelepiped => (true, Some(1u128 << d)),
        AttractorClass::DragonProduct(_) => (true, Some(1u128 << (3 * d / 2))),
        AttractorClass::BearProduct(_) | AttractorClass::Anisotropic => (false, None),
    })
}

/// Symmetric segments `[-v, v]` with multiplicity.
#[derive(Debug, Clone)]
pub struct SegmentMultiset {
    pub segments: Vec<(Vec<Rational>, usize)>,
}

impl SegmentMultiset {
    pub fn from_system(sys: &DigitSystem, depth: usize) -> Result<SegmentMultiset> {
        let z = hull_zonotope(sys, depth)?;
        Ok(SegmentMultiset {
            segments: z.generators.into_iter().map(|g| (g, 1)).collect(),
        })
    }

    /// One segment per line: `vx,vy[,vz] @ multiplicity` (multiplicity
    /// defaults to 1). Coordinates are rationals like `1/2` or integers.
    pub fn parse(text: &str) -> Result<SegmentMultiset> {
        let mut segments = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (coords, mult) = match line.split_once('@') {
                Some((c, m)) => {
                    let mult: usize = m.trim().parse().map_err(|_| {
                        Error::validation(format!("bad multiplicity in '{line}'"))
                    })?;
                    (c, mult)
                }
                None => (line, 1),
            };
            let vector: Result<Vec<Rational>> = coords
                .split(',')
                .map(|t| parse_rational(t.trim()))
                .collect();
            segments.push((vector?, mult));
        }
        if segments.is_empty() {
            return Err(Error::validation("no segments given"));
        }
        Ok(SegmentMultiset { segments })
    }

    fn expanded(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for (v, m) in &self.segments {
            for _ in 0..*m {
                out.push(v.clone());
            }
        }
        out
    }
}

fn parse_rational(t: &str) -> Result<Rational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.parse::<BigInt>()
            .map_err(|_| Error::validation(format!("bad rational component '{t}'")))
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::validation("zero denominator"));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(t)?)),
    }
}

/// Outcome of the dilation recovery.
#[derive(Debug, Clone)]
pub enum Recovery {
    /// The dilation, determined up to global sign: both `M` and `-M` map each
    /// segment line onto its successor.
    Recovered(RationalMatrix),
    /// Equal-length ties (or inconsistency) left the ordering undetermined.
    Ambiguous(String),
}

const ORDERING_CAP: usize = 720;

/// Recovers `±M` from the segment multiset `{M^{-k} ā}`.
///
/// Segments are ordered by decreasing length (ratios of consecutive lengths
/// tend to the leading eigenvalue, so the generic ordering is by length);
/// within equal-length groups all orderings are tried up to a cap. A fit
/// solves `M v_{j+1} = ±v_j` on the first `d` consecutive pairs and is
/// accepted only if it maps every segment to its successor, up to sign.
pub fn recover_dilation(t: &SegmentMultiset, dim: usize) -> Result<Recovery> {
    let mut segments = t.expanded();
    if segments.iter().any(|s| s.len() != dim) {
        return Err(Error::validation("segment dimension mismatch"));
    }
    if segments.len() < dim + 2 {
        return Err(Error::validation(format!(
            "need at least {} segments for dimension {dim}, got {}",
            dim + 2,
            segments.len()
        )));
    }
    let norm2 = |v: &[Rational]| -> Rational { v.iter().map(|c| c * c).sum() };
    segments.sort_by(|a, b| norm2(b).cmp(&norm2(a)));

    // Group indices by equal length.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..segments.len() {
        if i > 0 && norm2(&segments[i]) == norm2(&segments[i - 1]) {
            groups.last_mut().unwrap().push(i);
        } else {
            groups.push(vec![i]);
        }
    }
    let mut total_orderings: usize = 1;
    for g in &groups {
        let mut f: usize = 1;
        for i in 2..=g.len() {
            f = f.saturating_mul(i);
        }
        total_orderings = total_orderings.saturating_mul(f);
        if total_orderings > ORDERING_CAP {
            return Err(Error::validation(format!(
                "equal-length ties give {total_orderings}+ orderings (cap {ORDERING_CAP})",
            )))
            .map(|_: Recovery| unreachable!())
            .or_else(|_| {
                Ok(Recovery::Ambiguous(format!(
                    "equal-length ties give more than {ORDERING_CAP} orderings"
                )))
            });
        }
    }

    let mut orderings: Vec<Vec<usize>> = vec![vec![]];
    for g in &groups {
        let perms = permutations(g);
        let mut next = Vec::new();
        for base in &orderings {
            for perm in &perms {
                let mut ext = base.clone();
                ext.extend_from_slice(perm);
                next.push(ext);
            }
        }
        orderings = next;
    }

    for ordering in &orderings {
        let ordered: Vec<&Vec<Rational>> = ordering.iter().map(|&i| &segments[i]).collect();
        if let Some(m) = try_fit(&ordered, dim) {
            return Ok(Recovery::Recovered(m));
        }
    }
    Ok(Recovery::Ambiguous(
        "no segment ordering admits a consistent dilation".into(),
    ))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

fn try_fit(ordered: &[&Vec<Rational>], dim: usize) -> Option<RationalMatrix> {
    // Solve M v_{j+1} = ε_j v_j for j = 1..dim over all sign patterns, then
    // verify the whole chain.
    let cols: Vec<Vec<Rational>> = (1..=dim).map(|j| ordered[j].clone()).collect();
    let k = RationalMatrix::from_columns(&cols);
    let k_inv = k.inverse().ok()?;
    for pattern in 0..(1u32 << dim) {
        let images: Vec<Vec<Rational>> = (0..dim)
            .map(|j| {
                let sign = if pattern >> j & 1 == 1 { -1 } else { 1 };
                ordered[j]
                    .iter()
                    .map(|c| c * BigRational::from_integer(BigInt::from(sign)))
                    .collect()
            })
            .collect();
        let l = RationalMatrix::from_columns(&images);
        let m = l.mul(&k_inv);
        let mut consistent = true;
        for j in 0..ordered.len() - 1 {
            let image = m.mul_vec(ordered[j + 1]);
            let plus = image == *ordered[j];
            let minus = image
                .iter()
                .zip(ordered[j].iter())
                .all(|(x, y)| *x == -y.clone());
            if !(plus || minus) {
                consistent = false;
                break;
            }
        }
        if consistent {
            return Some(m);
        }
    }
    None
}
