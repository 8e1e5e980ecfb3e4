//! L2 Hölder exponents of attractor characteristic functions.
//!
//! For a two-digit tile the translate vector `Φ(t) = (φ(t+s))_{s∈Γ}` obeys
//! `Φ(M^{-1}(t+a)) = T_a Φ(t)` with the per-digit transfer matrices from the
//! contact graph. The smoothness of `φ` in L2 is governed by the L2 spectral
//! radius of `{T_0, T_1}` on the subspace spanned by the differences of
//! translate vectors:
//!
//! `ρ₂ = sqrt( ρ( ½(T_0⊗T_0 + T_1⊗T_1) |_{W⊗W} ) )`,
//! `α = -ln ρ₂ / ln λ_max`.
//!
//! `W` is taken as the smallest common `{T_0, T_1}`-invariant subspace
//! containing the columns of `T_0 - T_1`; those columns are exactly the
//! first-level differences, every transfer matrix preserves coordinate sums
//! (all columns sum to one), so `W` lies inside the zero-sum hyperplane.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::attractor::DigitSystem;
use crate::error::{Error, Result};
use crate::matrix::{spectral_radius, IntMatrix};
use crate::poly::IntPolynomial;
use crate::tiling::{contact_set, ContactGraph};
use crate::Rational;

/// Exact-restriction guard: larger systems switch to a floating restriction.
const EXACT_LIFT_GUARD: usize = 2500;

#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport {
    pub polynomial: String,
    pub gamma_size: usize,
    pub subspace_dim: usize,
    pub rho2: f64,
    pub alpha: f64,
    pub lambda_max: f64,
}

/// A linear subspace of `Q^n` kept as a reduced-echelon rational basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    n: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn empty(n: usize) -> Self {
        Subspace {
            n,
            basis: vec![],
            pivots: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Remainder of `v` after reduction against the basis.
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (b, &p) in self.basis.iter().zip(self.pivots.iter()) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, y) in v.iter_mut().zip(b.iter()) {
                *x -= &factor * y;
            }
        }
        v
    }

    /// Inserts a vector; returns true when the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.n);
        let mut r = self.reduce(v);
        let pivot = match r.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let scale = r[pivot].clone();
        for c in r.iter_mut() {
            *c /= &scale;
        }
        // Eliminate the new pivot from existing basis vectors.
        for b in self.basis.iter_mut() {
            if b[pivot].is_zero() {
                continue;
            }
            let factor = b[pivot].clone();
            for (x, y) in b.iter_mut().zip(r.iter()) {
                *x -= &factor * y;
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(at, pivot);
        self.basis.insert(at, r);
        true
    }

    /// Exact coordinates of `v` in the basis; `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut check = v.to_vec();
        for (c, b) in coords.iter().zip(self.basis.iter()) {
            for (x, y) in check.iter_mut().zip(b.iter()) {
                *x -= c * y;
            }
        }
        if check.iter().all(|c| c.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v.to_vec()).iter().all(|c| c.is_zero())
    }
}

fn apply_rows(t: &[Vec<i64>], v: &[Rational]) -> Vec<Rational> {
    t.iter()
        .map(|row| {
            let mut acc = BigRational::zero();
            for (c, x) in row.iter().zip(v.iter()) {
                if *c != 0 {
                    acc += BigRational::from_integer(BigInt::from(*c)) * x;
                }
            }
            acc
        })
        .collect()
}

/// Smallest common invariant subspace of the operators containing the seeds.
pub fn invariant_closure(n: usize, seeds: Vec<Vec<Rational>>, ops: &[&Vec<Vec<i64>>]) -> Subspace {
    let mut w = Subspace::empty(n);
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    for s in seeds {
        if w.insert(s.clone()) {
            queue.push(s);
        }
    }
    while let Some(v) = queue.pop() {
        for op in ops {
            let image = apply_rows(op, &v);
            if w.insert(image.clone()) {
                queue.push(image);
            }
        }
    }
    w
}

/// Transfer matrices of a two-digit system: the per-digit split of the
/// contact matrix, `T_0 + T_1 = A`.
pub fn transfer_matrices(sys: &DigitSystem) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>, ContactGraph)> {
    if sys.modulus() != 2 {
        return Err(Error::validation("transfer matrices require a two-digit system"));
    }
    let g = contact_set(sys)?;
    Ok((g.t[0].clone(), g.t[1].clone(), g))
}

/// The difference subspace: closure of the columns of `T_0 - T_1` under both
/// transfer operators.
pub fn special_subspace(t0: &[Vec<i64>], t1: &[Vec<i64>]) -> Subspace {
    let n = t0.len();
    let seeds: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| BigRational::from_integer(BigInt::from(t0[i][j] - t1[i][j])))
                .collect()
        })
        .collect();
    let t0v = t0.to_vec();
    let t1v = t1.to_vec();
    invariant_closure(n, seeds, &[&t0v, &t1v])
}

/// L2 spectral radius of the pair `{T_0, T_1}` restricted to a common
/// invariant subspace: the square root of the spectral radius of
/// `½(T_0⊗T_0 + T_1⊗T_1)` on `W⊗W`.
pub fn l2_spectral_radius(t0: &[Vec<i64>], t1: &[Vec<i64>], w: &Subspace) -> Result<f64> {
    let p = w.dim();
    if p == 0 {
        return Ok(0.0);
    }
    let n = w.ambient_dim();
    let restricted = if n * n <= EXACT_LIFT_GUARD {
        restrict_exact(&[t0, t1], w)?
    } else {
        restrict_float(&[t0, t1], w)?
    };
    let lift = nalgebra::DMatrix::<f64>::from_fn(p * p, p * p, |row, col| {
        let (k, l) = (row / p, row % p);
        let (i, j) = (col / p, col % p);
        0.5 * restricted.iter().map(|r| r[(k, i)] * r[(l, j)]).sum::<f64>()
    });
    Ok(spectral_radius(&lift).max(0.0).sqrt())
}

/// Exact restriction: coordinates of `T u_j` in the basis of `W`; errors when
/// `W` is not invariant.
fn restrict_exact(ts: &[&[Vec<i64>]], w: &Subspace) -> Result<Vec<nalgebra::DMatrix<f64>>> {
    let p = w.dim();
    let mut out = Vec::new();
    for t in ts {
        let mut r = nalgebra::DMatrix::<f64>::zeros(p, p);
        for (j, u) in w.basis().iter().enumerate() {
            let image = apply_rows(t, u);
            let coords = w.coordinates(&image).ok_or_else(|| {
                Error::validation("restriction subspace is not invariant")
            })?;
            for (i, c) in coords.iter().enumerate() {
                r[(i, j)] = crate::matrix::rational_to_f64(c);
            }
        }
        out.push(r);
    }
    Ok(out)
}

/// Floating restriction through an orthonormalized basis, with a residual
/// certificate.
fn restrict_float(ts: &[&[Vec<i64>]], w: &Subspace) -> Result<Vec<nalgebra::DMatrix<f64>>> {
    let n = w.ambient_dim();
    let p = w.dim();
    let basis = nalgebra::DMatrix::<f64>::from_fn(n, p, |i, j| {
        crate::matrix::rational_to_f64(&w.basis()[j][i])
    });
    let qr = basis.qr();
    let q = qr.q();
    let mut out = Vec::new();
    for t in ts {
        let tf = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| t[i][j] as f64);
        let tq = &tf * &q;
        let r = q.transpose() * &tq;
        let residual = (&tq - &q * &r).amax();
        if residual > 1e-8 {
            return Err(Error::validation(format!(
                "floating restriction residual {residual:.2e}: subspace not invariant"
            )));
        }
        out.push(r);
    }
    Ok(out)
}

/// Full regularity report for the default system of a polynomial.
pub fn holder_exponent(p: &IntPolynomial) -> Result<RegularityReport> {
    if !p.is_admissible() || !p.is_expanding()? {
        return Err(Error::validation(format!(
            "{p} is not an admissible expanding polynomial"
        )));
    }
    let sys = DigitSystem::companion_default(p)?;
    let (t0, t1, g) = transfer_matrices(&sys)?;
    let w = special_subspace(&t0, &t1);
    let rho2 = l2_spectral_radius(&t0, &t1, &w)?;
    if !(rho2 > 0.0 && rho2 < 1.0) {
        return Err(Error::disagreement(format!(
            "rho2 = {rho2} outside (0, 1) for {p}"
        )));
    }
    let lambda_max = IntMatrix::companion(p)?.spectral_radius();
    let alpha = -rho2.ln() / lambda_max.ln();
    Ok(RegularityReport {
        polynomial: p.to_string(),
        gamma_size: g.len(),
        subspace_dim: w.dim(),
        rho2,
        alpha,
        lambda_max,
    })
}

/// Surface dimension of an isotropic attractor: equal to the L2 Hölder
/// exponent of its characteristic function. Rejects anisotropic input, where
/// the identity is not claimed.
pub fn surface_dimension(p: &IntPolynomial) -> Result<f64> {
    if !p.is_isotropic() {
        return Err(Error::validation(format!(
            "{p} is anisotropic; surface dimension via the Hölder exponent needs isotropy"
        )));
    }
    Ok(holder_exponent(p)?.alpha)
}

/// The seven cubic admissible expanding polynomials, in the reference order
/// (types 1 through 7).
pub fn seven_cubics() -> Vec<IntPolynomial> {
    [
        "2,2,2,1",
        "2,1,1,1",
        "2,0,0,1",
        "2,-1,-1,1",
        "2,-1,0,1",
        "2,-2,0,1",
        "2,0,1,1",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

/// Reference `(ρ₂, α)` values for the seven cubics, same order.
pub const CUBIC_REFERENCE: [(f64, f64); 7] = [
    (0.97082, 0.06822),
    (0.93238, 0.23148),
    (0.8909, 0.5),
    (0.94278, 0.23282),
    (0.95197, 0.1173),
    (0.98548, 0.02563),
    (0.97542, 0.04713),
];
