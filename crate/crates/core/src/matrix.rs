//! Small exact and floating linear algebra.
//!
//! Structural computations (inverses, commuting maps, kernels) run in exact
//! rational arithmetic so that tile verdicts and class counts never depend on
//! rounding; only eigenvalue extraction is floating.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::Rational;

/// Dense square integer matrix, row-major, `d <= 16`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

pub const MAX_DIM: usize = 16;

impl IntMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::validation(format!(
                "matrix dimension {n} outside 1..={MAX_DIM}"
            )));
        }
        Ok(IntMatrix {
            n,
            data: vec![0; n * n],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m[(i, i)] = 1;
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::validation("matrix is not square"));
        }
        let mut m = Self::zeros(n)?;
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// `-a_0, ..., -a_{d-1}` down the last column.
    pub fn companion(p: &IntPolynomial) -> Result<Self> {
        if p.leading() != 1 {
            return Err(Error::validation(format!(
                "companion matrix requires a monic polynomial, got {p}"
            )));
        }
        let d = p.degree();
        if d == 0 {
            return Err(Error::validation("companion matrix requires degree >= 1"));
        }
        let mut m = Self::zeros(d)?;
        for i in 1..d {
            m[(i, i - 1)] = 1;
        }
        for i in 0..d {
            m[(i, d - 1)] = -p.coeffs()[i];
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMatrix {
            n,
            data: vec![0; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = (a as i128) * (other[(k, j)] as i128);
                    let sum = out[(i, j)] as i128 + prod;
                    out[(i, j)] = i64::try_from(sum).expect("integer matrix product overflow");
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| {
                let acc: i128 = (0..self.n)
                    .map(|j| self[(i, j)] as i128 * v[j] as i128)
                    .sum();
                i64::try_from(acc).expect("integer matrix-vector overflow")
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.n).unwrap();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self[(i, j)])).collect())
            .collect();
        // Bareiss algorithm.
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match swap {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Exact characteristic polynomial `det(λI - M)` via Faddeev–LeVerrier.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.n;
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(self[(i, j)])))
                    .collect()
            })
            .collect();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        // m holds M_{k-1}; ak holds A * M_{k-1}.
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for k in 1..=n {
            let ak: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|l| &a[i][l] * &m[l][j]).sum())
                        .collect()
                })
                .collect();
            let trace: BigRational = (0..n).map(|i| ak[i][i].clone()).sum();
            let c = -trace / BigRational::from_integer(BigInt::from(k as i64));
            coeffs[n - k] = c.clone();
            m = ak;
            for i in 0..n {
                m[i][i] += &c;
            }
        }
        let ints: Vec<i64> = coeffs
            .iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer().to_i64().expect("characteristic coefficient overflow")
            })
            .collect();
        IntPolynomial::new(ints).expect("monic characteristic polynomial")
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self[(i, j)] as f64)
    }

    /// Exact rational inverse. Errors on a singular matrix.
    pub fn inverse_rational(&self) -> Result<RationalMatrix> {
        self.to_rational().inverse()
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        spectral_radius(&self.to_f64())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for IntMatrix {
    /// Rows separated by `;`, entries by `,`, e.g. `0,-2;1,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: std::result::Result<Vec<Vec<i64>>, _> = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| t.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<i64>, _>>()
            })
            .collect();
        match rows {
            Ok(r) => IntMatrix::from_rows(r),
            Err(e) => Err(Error::validation(format!("bad matrix '{s}': {e}"))),
        }
    }
}

/// Dense square matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for i in 0..n {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| (0..self.n).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Gauss–Jordan inverse; errors on singular input.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Err(Error::validation("singular matrix")),
            };
            if pivot != col {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(col, j)].clone();
                    a[(col, j)] = tmp;
                    let tmp = inv[(pivot, j)].clone();
                    inv[(pivot, j)] = inv[(col, j)].clone();
                    inv[(col, j)] = tmp;
                }
            }
            let scale = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &scale;
                inv[(col, j)] /= &scale;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let factor = a[(i, col)].clone();
                for j in 0..n {
                    let av = &a[(col, j)] * &factor;
                    a[(i, j)] -= av;
                    let iv = &inv[(col, j)] * &factor;
                    inv[(i, j)] -= iv;
                }
            }
        }
        Ok(inv)
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| rational_to_f64(&self[(i, j)]))
    }

    pub fn spectral_radius(&self) -> f64 {
        spectral_radius(&self.to_f64())
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Largest eigenvalue modulus of a dense real matrix. The Schur iteration is
/// run with a bounded iteration count (it can cycle on rare inputs); on
/// non-convergence a perturbed retry and finally a growth-rate estimate from
/// repeated squaring take over.
pub fn spectral_radius(m: &nalgebra::DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    for (eps, iters) in [(1e-14, 200 * m.nrows()), (1e-12, 1000 * m.nrows())] {
        if let Some(schur) = nalgebra::linalg::Schur::try_new(m.clone(), eps, iters) {
            return schur
                .complex_eigenvalues()
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
        }
    }
    // Fallback: ρ(A) = lim ‖A^k‖^{1/k} via repeated squaring.
    let mut a = m.clone();
    let mut power: f64 = 1.0;
    let mut scale_log: f64 = 0.0;
    for _ in 0..40 {
        let norm = a.norm();
        if norm == 0.0 {
            break;
        }
        a /= norm;
        scale_log += norm.ln() / power;
        a = &a * &a;
        power *= 2.0;
    }
    scale_log.exp()
}

/// Finds the matrix `C` with `CM = MC` and `Ca = b`.
///
/// Requires `a` to be a cyclic vector of `M` (the Krylov vectors
/// `a, Ma, ..., M^{d-1}a` are linearly independent); `C` is then determined by
/// sending each Krylov vector `M^j a` to `M^j b`, and commutation follows from
/// Cayley–Hamilton.
pub fn find_commuting_map(m: &IntMatrix, a: &[i64], b: &[Rational]) -> Result<RationalMatrix> {
    let n = m.dim();
    if a.len() != n || b.len() != n {
        return Err(Error::validation("vector dimension mismatch"));
    }
    let mq = m.to_rational();
    let mut krylov_a: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut krylov_b: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut va: Vec<Rational> = a
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    let mut vb = b.to_vec();
    for _ in 0..n {
        krylov_a.push(va.clone());
        krylov_b.push(vb.clone());
        va = mq.mul_vec(&va);
        vb = mq.mul_vec(&vb);
    }
    let k = RationalMatrix::from_columns(&krylov_a);
    let l = RationalMatrix::from_columns(&krylov_b);
    let k_inv = k.inverse().map_err(|_| {
        Error::validation("the vector a lies in a proper invariant subspace of M")
    })?;
    Ok(l.mul(&k_inv))
}

pub fn int_vec_to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect()
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref_in_place(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let pivot = (r..rows.len()).find(|&i| !rows[i][c].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        rows.swap(r, pivot);
        let scale = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v /= &scale;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..ncols {
                let sub = &rows[r][j] * &factor;
                rows[i][j] -= sub;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel of a row-major matrix over the rationals.
pub fn kernel_basis(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut work: Vec<Vec<Rational>> = rows.to_vec();
    let pivots = rref_in_place(&mut work);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Upper-triangular basis (column vectors) of the integer lattice generated
/// by the given vectors, via column gcd reduction. Requires full rank.
pub fn lattice_basis(dim: usize, generators: &[Vec<i64>]) -> Result<Vec<Vec<i128>>> {
    let mut cols: Vec<Vec<i128>> = generators
        .iter()
        .map(|g| g.iter().map(|&c| c as i128).collect())
        .collect();
    cols.retain(|c| c.iter().any(|&v| v != 0));
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for row in 0..dim {
        loop {
            let mut nonzero: Vec<usize> = (0..cols.len()).filter(|&j| cols[j][row] != 0).collect();
            match nonzero.len() {
                0 => break,
                1 => {
                    let mut pivot = cols.swap_remove(nonzero[0]);
                    if pivot[row] < 0 {
                        for v in pivot.iter_mut() {
                            *v = -*v;
                        }
                    }
                    basis.push(pivot);
                    break;
                }
                _ => {
                    // Reduce the largest entry by the smallest.
                    nonzero.sort_by_key(|&j| cols[j][row].abs());
                    let (small, large) = (nonzero[0], *nonzero.last().unwrap());
                    let q = cols[large][row] / cols[small][row];
                    for i in 0..dim {
                        let sub = q * cols[small][i];
                        cols[large][i] -= sub;
                    }
                }
            }
        }
        if basis.len() != row + 1 {
            return Err(Error::validation(
                "lattice generators do not have full rank",
            ));
        }
        // Rows above the current one are already zero in the remaining
        // columns, so the basis comes out triangular.
    }
    Ok(basis)
}

/// Membership test against a triangular lattice basis (as from
/// [`lattice_basis`], with `basis[r][r]` the pivot of row `r`).
pub fn in_lattice(basis: &[Vec<i128>], v: &[i64]) -> bool {
    let dim = v.len();
    let mut rem: Vec<i128> = v.iter().map(|&c| c as i128).collect();
    for r in 0..dim {
        let pivot = basis[r][r];
        if rem[r] % pivot != 0 {
            return false;
        }
        let q = rem[r] / pivot;
        for i in 0..dim {
            rem[i] -= q * basis[r][i];
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// The smallest `M`-invariant sublattice of `Z^d` containing the generators:
/// returns its basis matrix `P` (columns) and the index `[Z^d : L]`.
pub fn invariant_lattice(m: &IntMatrix, generators: &[Vec<i64>]) -> Result<(IntMatrix, u64)> {
    let dim = m.dim();
    // Seed with the Krylov images so the generated lattice has full rank
    // before triangularization.
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for g in generators {
        let mut v = g.clone();
        for _ in 0..dim {
            gens.push(v.clone());
            v = m.mul_vec(&v);
        }
    }
    loop {
        let basis = lattice_basis(dim, &gens)?;
        let images: Vec<Vec<i64>> = basis
            .iter()
            .map(|b| {
                let bi: Vec<i64> = b
                    .iter()
                    .map(|&c| i64::try_from(c).expect("lattice entry overflow"))
                    .collect();
                m.mul_vec(&bi)
            })
            .collect();
        if images.iter().all(|im| in_lattice(&basis, im)) {
            let mut p = IntMatrix::zeros(dim)?;
            let mut index: i128 = 1;
            for (j, b) in basis.iter().enumerate() {
                index *= b[j];
                for i in 0..dim {
                    p[(i, j)] = i64::try_from(b[i]).expect("lattice entry overflow");
                }
            }
            let index = u64::try_from(index)
                .map_err(|_| Error::validation("lattice index overflow"))?;
            return Ok((p, index));
        }
        gens = basis
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&c| i64::try_from(c).expect("lattice entry overflow"))
                    .collect()
            })
            .collect();
        gens.extend(images);
    }
}

/// Checks that the digits lie in pairwise distinct residue classes of
/// `Z^d / M Z^d`. Errors when `|D| != |det M|`.
pub fn validate_digits(m: &IntMatrix, digits: &[Vec<i64>]) -> Result<bool> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::validation("dilation matrix is singular"));
    }
    let modulus = det.abs().to_usize().unwrap_or(usize::MAX);
    if digits.len() != modulus {
        return Err(Error::validation(format!(
            "expected {modulus} digits for |det| = {modulus}, got {}",
            digits.len()
        )));
    }
    if digits.iter().any(|d| d.len() != m.dim()) {
        return Err(Error::validation("digit dimension mismatch"));
    }
    let inv = m.inverse_rational()?;
    for i in 0..digits.len() {
        for j in 0..i {
            let diff: Vec<Rational> = (0..m.dim())
                .map(|k| BigRational::from_integer(BigInt::from(digits[i][k] - digits[j][k])))
                .collect();
            let x = inv.mul_vec(&diff);
            if x.iter().all(|c| c.is_integer()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn companion_examples() {
        let m = IntMatrix::companion(&p("2,0,0,1")).unwrap();
        assert_eq!(m.row(0), &[0, 0, -2]);
        assert_eq!(m.row(1), &[1, 0, 0]);
        assert_eq!(m.row(2), &[0, 1, 0]);

        let m = IntMatrix::companion(&p("-2,1")).unwrap();
        assert_eq!(m.row(0), &[2]);

        let m = IntMatrix::companion(&p("2,2,1")).unwrap();
        assert_eq!(m.row(0), &[0, -2]);
        assert_eq!(m.row(1), &[1, -2]);
    }

    #[test]
    fn char_poly_examples() {
        let m = IntMatrix::companion(&p("2,0,0,1")).unwrap();
        assert_eq!(m.char_poly(), p("2,0,0,1"));
        assert_eq!(IntMatrix::identity(2).unwrap().char_poly(), p("1,-2,1"));
    }

    #[test]
    fn char_poly_companion_roundtrip() {
        let polys = [
            "2,1",
            "2,-2,1",
            "2,1,1,1",
            "-2,0,3,-1,1",
            "2,-1,0,2,0,1",
            "2,0,0,0,0,0,0,0,0,0,1",
        ];
        for s in polys {
            let poly = p(s);
            assert_eq!(IntMatrix::companion(&poly).unwrap().char_poly(), poly);
        }
    }

    #[test]
    fn inverse_examples() {
        let m = IntMatrix::companion(&p("-2,0,1")).unwrap();
        let inv = m.inverse_rational().unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(inv[(0, 0)], BigRational::zero());
        assert_eq!(inv[(0, 1)], BigRational::one());
        assert_eq!(inv[(1, 0)], half);
        assert_eq!(inv[(1, 1)], BigRational::zero());
        assert_eq!(m.to_rational().mul(&inv), RationalMatrix::identity(2));

        let id = IntMatrix::identity(3).unwrap();
        assert_eq!(id.inverse_rational().unwrap(), RationalMatrix::identity(3));

        let one = IntMatrix::from_rows(vec![vec![2]]).unwrap();
        assert_eq!(one.inverse_rational().unwrap()[(0, 0)], half);

        let singular = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(singular.inverse_rational().is_err());
    }

    #[test]
    fn spectral_radius_examples() {
        let m = IntMatrix::from_rows(vec![vec![2]]).unwrap();
        assert!((m.spectral_radius() - 2.0).abs() < 1e-9);

        let m = IntMatrix::companion(&p("-2,0,1")).unwrap();
        assert!((m.spectral_radius() - 2f64.sqrt()).abs() < 1e-9);

        let m = IntMatrix::companion(&p("2,-2,0,1")).unwrap();
        assert!((m.spectral_radius() - 1.769292354).abs() < 1e-6);
    }

    #[test]
    fn spectral_radius_matches_certified_roots() {
        for s in ["2,0,0,1", "2,1,1,1", "-2,0,3,-1,1", "2,2,1"] {
            let poly = p(s);
            let m = IntMatrix::companion(&poly).unwrap();
            let spec = poly.root_spectrum();
            assert!((m.spectral_radius() - spec.max_modulus()).abs() < 1e-7);
        }
    }

    #[test]
    fn commuting_map_examples() {
        let m = IntMatrix::companion(&p("-2,0,1")).unwrap();
        let e1 = [1i64, 0];

        let c = find_commuting_map(&m, &e1, &int_vec_to_rational(&[1, 0])).unwrap();
        assert_eq!(c, RationalMatrix::identity(2));

        let me1 = m.mul_vec(&e1);
        let c = find_commuting_map(&m, &e1, &int_vec_to_rational(&me1)).unwrap();
        assert_eq!(c, m.to_rational());

        let c = find_commuting_map(&m, &e1, &int_vec_to_rational(&[1, 1])).unwrap();
        let mq = m.to_rational();
        assert_eq!(c.mul(&mq), mq.mul(&c));
        assert_eq!(
            c.mul_vec(&int_vec_to_rational(&e1)),
            int_vec_to_rational(&[1, 1])
        );
    }

    #[test]
    fn commuting_map_rejects_invariant_subspace() {
        // e1 is an eigenvector of a diagonal matrix.
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert!(find_commuting_map(&m, &[1, 0], &int_vec_to_rational(&[1, 1])).is_err());
    }

    #[test]
    fn validate_digits_examples() {
        let m = IntMatrix::companion(&p("-2,0,1")).unwrap();
        assert!(validate_digits(&m, &[vec![0, 0], vec![1, 0]]).unwrap());
        assert!(!validate_digits(&m, &[vec![0, 0], vec![2, 0]]).unwrap());
        assert!(validate_digits(&m, &[vec![0, 0], vec![3, 0]]).unwrap());
        assert!(validate_digits(&m, &[vec![0, 0]]).is_err());
    }

    #[test]
    fn det_and_pow() {
        let m = IntMatrix::companion(&p("-2,0,1")).unwrap();
        assert_eq!(m.det(), BigInt::from(-2));
        assert_eq!(m.pow(2), IntMatrix::from_rows(vec![vec![2, 0], vec![0, 2]]).unwrap());
    }
}
