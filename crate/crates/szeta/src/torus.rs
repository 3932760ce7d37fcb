//! Flat tori: lattice vector enumeration, theta coefficients, Epstein zeta
//! sums, and the classical isospectral pair of 16-dimensional lattices.
//!
//! Enumeration is pruned depth-first search over the quadratic-form
//! completion of the Gram matrix (one coordinate at a time, with partial
//! norms bounding the remaining coordinates). A plain box scan would be
//! hopeless at rank 16. For integer Gram matrices every reported squared
//! length is certified by exact integer arithmetic at the leaves.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::{parse_rational, Q};

/// A full-rank lattice given by a basis matrix whose columns generate it.
#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<f64>>,
    gram: Vec<Vec<f64>>,
    gram_int: Option<Vec<Vec<i64>>>,
    covolume: f64,
}

impl Lattice {
    /// Builds a lattice from a symmetric positive-definite Gram matrix,
    /// reconstructing an upper-triangular basis by Cholesky factorization.
    pub fn from_gram(gram: &[Vec<Q>]) -> Result<Lattice> {
        let dim = gram.len();
        if dim == 0 || gram.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch(dim, gram.first().map_or(0, Vec::len)));
        }
        for i in 0..dim {
            for j in 0..dim {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotPositiveDefinite);
                }
            }
        }
        let gram_f64: Vec<Vec<f64>> = gram
            .iter()
            .map(|row| row.iter().map(crate::num::q_to_f64).collect())
            .collect();
        let gram_int = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<Vec<i64>>>>();
        Self::assemble(dim, gram_f64, gram_int)
    }

    fn from_gram_int(gram: Vec<Vec<i64>>) -> Result<Lattice> {
        let dim = gram.len();
        let gram_f64: Vec<Vec<f64>> = gram
            .iter()
            .map(|row| row.iter().map(|&x| x as f64).collect())
            .collect();
        Self::assemble(dim, gram_f64, Some(gram))
    }

    fn assemble(
        dim: usize,
        gram: Vec<Vec<f64>>,
        gram_int: Option<Vec<Vec<i64>>>,
    ) -> Result<Lattice> {
        // Cholesky: gram = L L^T; basis = L^T has the generators as columns.
        let mut l = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for j in 0..=i {
                let mut sum = gram[i][j];
                for k in 0..j {
                    sum -= l[i][k] * l[j][k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(Error::NotPositiveDefinite);
                    }
                    l[i][j] = sum.sqrt();
                } else {
                    l[i][j] = sum / l[j][j];
                }
            }
        }
        let mut basis = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                basis[i][j] = l[j][i];
            }
        }
        let covolume = (0..dim).map(|i| l[i][i]).product();
        Ok(Lattice {
            dim,
            basis,
            gram,
            gram_int,
            covolume,
        })
    }

    /// The standard lattice `Z^b`.
    pub fn standard(dim: usize) -> Lattice {
        let gram: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Lattice::from_gram_int(gram).expect("identity is positive definite")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<f64>] {
        &self.gram
    }

    pub fn gram_int(&self) -> Option<&[Vec<i64>]> {
        self.gram_int.as_deref()
    }

    pub fn covolume(&self) -> f64 {
        self.covolume
    }

    /// Rescales to covolume 1, the Haar normalization under which residue
    /// statements are made.
    pub fn normalized(&self) -> Lattice {
        self.scaled(self.covolume.powf(-1.0 / self.dim as f64))
    }

    /// Scales every generator by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Lattice {
        let dim = self.dim;
        let gram: Vec<Vec<f64>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|x| x * lambda * lambda).collect())
            .collect();
        Lattice::assemble(dim, gram, None).expect("scaling preserves positive definiteness")
    }

    /// Exact squared length of an integer combination (integer Gram only).
    fn norm_sq_int(&self, coeffs: &[i64]) -> i64 {
        let g = self.gram_int.as_ref().expect("integer Gram");
        let mut acc: i128 = 0;
        for (i, &xi) in coeffs.iter().enumerate() {
            for (j, &xj) in coeffs.iter().enumerate() {
                acc += g[i][j] as i128 * xi as i128 * xj as i128;
            }
        }
        i64::try_from(acc).expect("squared norm fits i64")
    }

    /// Quadratic-form completion `Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2`.
    fn completion(&self) -> Vec<Vec<f64>> {
        let n = self.dim;
        let mut a = self.gram.clone();
        for i in 0..n {
            for j in i + 1..n {
                let aij = a[i][j];
                a[j][i] = aij;
                a[i][j] = aij / a[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    a[k][l] -= a[k][i] * a[i][l];
                }
            }
        }
        a
    }

    /// Visits one representative of every `±v` pair of nonzero lattice
    /// vectors with squared length at most `t_sq` (up to a small floating
    /// guard; integer Gram lattices get exact classification downstream).
    fn enumerate_half<F: FnMut(&[i64], f64)>(&self, t_sq: f64, mut visit: F) {
        let n = self.dim;
        let q = self.completion();
        let mut x = vec![0i64; n];
        // recursion encoded as an explicit level walk
        fn descend<F: FnMut(&[i64], f64)>(
            q: &[Vec<f64>],
            t_sq: f64,
            level: isize,
            partial: f64,
            x: &mut [i64],
            visit: &mut F,
        ) {
            if level < 0 {
                if x.iter().any(|&c| c != 0) {
                    visit(x, partial);
                }
                return;
            }
            let i = level as usize;
            let n = x.len();
            let center: f64 = (i + 1..n).map(|j| q[i][j] * x[j] as f64).sum();
            let remaining = t_sq - partial;
            if remaining < -1e-9 {
                return;
            }
            let r = (remaining.max(0.0) / q[i][i]).sqrt();
            let guard = 1e-9 * (1.0 + r);
            let mut lo = (-center - r - guard).ceil() as i64;
            let hi = (-center + r + guard).floor() as i64;
            // canonical half: highest-index nonzero coordinate positive
            if x[i + 1..].iter().all(|&c| c == 0) {
                lo = lo.max(0);
            }
            for xi in lo..=hi {
                x[i] = xi;
                let d = xi as f64 + center;
                descend(q, t_sq, level - 1, partial + q[i][i] * d * d, x, visit);
            }
            x[i] = 0;
        }
        descend(&q, t_sq * (1.0 + 1e-12) + 1e-9, n as isize - 1, 0.0, &mut x, &mut visit);
    }

    /// All nonzero lattice vectors of length at most `t`, as
    /// `(coefficient vector, squared length)`, both orientations included,
    /// sorted by squared length then coefficients.
    pub fn enumerate_vectors(&self, t: f64) -> Vec<(Vec<i64>, f64)> {
        let t_sq = t * t;
        let mut out: Vec<(Vec<i64>, f64)> = Vec::new();
        self.enumerate_half(t_sq, |coeffs, approx_sq| {
            let norm_sq = match self.gram_int {
                Some(_) => {
                    let exact = self.norm_sq_int(coeffs);
                    if exact as f64 > t_sq * (1.0 + 1e-12) {
                        return;
                    }
                    exact as f64
                }
                None => {
                    if approx_sq > t_sq * (1.0 + 1e-12) + 1e-9 {
                        return;
                    }
                    approx_sq
                }
            };
            out.push((coeffs.to_vec(), norm_sq));
            out.push((coeffs.iter().map(|&c| -c).collect(), norm_sq));
        });
        out.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then_with(|| a.0.cmp(&b.0)));
        out
    }
}

/// Theta coefficients `r(n) = #{v != 0 : <v, v> = n}` for `n = 1..=max_n`.
pub fn theta_coefficients(lat: &Lattice, max_n: i64) -> Result<Vec<u64>> {
    if lat.gram_int.is_none() {
        return Err(Error::NonIntegerGram);
    }
    let mut counts = vec![0u64; max_n as usize];
    lat.enumerate_half((max_n as f64).sqrt().powi(2) + 0.5, |coeffs, _| {
        let n = lat.norm_sq_int(coeffs);
        if n >= 1 && n <= max_n {
            counts[(n - 1) as usize] += 2;
        }
    });
    Ok(counts)
}

/// Gram matrix of the `E8` root lattice in a simple-root basis
/// (even, determinant 1).
pub fn e8_gram() -> Vec<Vec<i64>> {
    let edges = [(0usize, 1usize), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    let mut g = vec![vec![0i64; 8]; 8];
    for i in 0..8 {
        g[i][i] = 2;
    }
    for &(a, b) in &edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

/// The classical pair of even unimodular rank-16 lattices with equal theta
/// series: `E8 ⊕ E8` and `D16+` (the `D16` lattice glued with the
/// all-halves vector). Both come with integer Gram matrices.
pub fn witt_pair() -> (Lattice, Lattice) {
    // E8 ⊕ E8: block diagonal
    let e8 = e8_gram();
    let mut g1 = vec![vec![0i64; 16]; 16];
    for i in 0..8 {
        for j in 0..8 {
            g1[i][j] = e8[i][j];
            g1[i + 8][j + 8] = e8[i][j];
        }
    }
    let first = Lattice::from_gram_int(g1).expect("E8+E8 is positive definite");

    // D16+: generators in doubled coordinates so the glue vector is integral,
    // reduced to a basis by Hermite normal form.
    use num_bigint::BigInt;
    let mut generators: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..15 {
        let mut v = vec![BigInt::from(0); 16];
        v[i] = BigInt::from(2);
        v[i + 1] = BigInt::from(-2);
        generators.push(v);
    }
    let mut last = vec![BigInt::from(0); 16];
    last[14] = BigInt::from(2);
    last[15] = BigInt::from(2);
    generators.push(last);
    generators.push(vec![BigInt::from(1); 16]); // the glue vector, doubled
    let basis = crate::linalg::hermite_normal_form(&generators);
    assert_eq!(basis.len(), 16, "D16+ has full rank");
    let det: BigInt = (0..16).map(|i| basis[i][i].clone()).product();
    assert_eq!(det, BigInt::from(65536), "doubled D16+ has covolume 2^16");
    let mut g2 = vec![vec![0i64; 16]; 16];
    for i in 0..16 {
        for j in 0..16 {
            let dot: BigInt = (0..16).map(|k| &basis[i][k] * &basis[j][k]).sum();
            let (q, r) = num_integer::Integer::div_rem(&dot, &BigInt::from(4));
            assert!(r.is_zero(), "D16+ Gram entries are integers");
            g2[i][j] = q.to_i64().expect("small Gram entries");
        }
    }
    let second = Lattice::from_gram_int(g2).expect("D16+ is positive definite");
    (first, second)
}

/// Volume of the Euclidean unit ball in dimension `b`.
pub fn unit_ball_volume(b: usize) -> f64 {
    // omega_b = pi^{b/2} / Gamma(b/2 + 1), by the half-integer recursion
    let mut gamma = if b % 2 == 0 {
        1.0 // Gamma(1)
    } else {
        std::f64::consts::PI.sqrt() // Gamma(1/2)
    };
    let mut x = if b % 2 == 0 { 1.0 } else { 0.5 };
    while x < b as f64 / 2.0 + 0.5 {
        gamma *= x;
        x += 1.0;
    }
    std::f64::consts::PI.powf(b as f64 / 2.0) / gamma
}

/// A truncated Epstein zeta value with an upper bound on the dropped tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsteinValue {
    pub value: num_complex::Complex64,
    pub tail: f64,
}

/// `sum_{0 < |v| <= t} |v|^{-z}` with a rigorous tail bound, valid for
/// `Re z > b`.
///
/// The tail bound comes from packing unit cells: the number of lattice
/// points of length at most `sigma` is at most
/// `omega_b (sigma + s)^b / covol` with `s` the sum of the basis vector
/// lengths, so partial summation gives
/// `tail <= x * (omega_b/covol) * (1 + s/t)^b * t^{b-x} / (x - b)`.
pub fn epstein_zeta_truncated(
    lat: &Lattice,
    z: num_complex::Complex64,
    t: f64,
) -> Result<EpsteinValue> {
    let b = lat.dim();
    if z.re <= b as f64 {
        return Err(Error::ConvergenceDomain(b as f64));
    }
    let vectors = lat.enumerate_vectors(t);
    let mut sum = num_complex::Complex64::new(0.0, 0.0);
    let mut comp = num_complex::Complex64::new(0.0, 0.0);
    for (_, norm_sq) in &vectors {
        let term = (-z / 2.0 * norm_sq.ln()).exp();
        let y = term - comp;
        let t_new = sum + y;
        comp = (t_new - sum) - y;
        sum = t_new;
    }
    Ok(EpsteinValue {
        value: sum,
        tail: epstein_tail_bound(lat, z.re, t),
    })
}

fn epstein_tail_bound(lat: &Lattice, x: f64, t: f64) -> f64 {
    let b = lat.dim();
    let s: f64 = lat
        .basis
        .iter()
        .map(|_| 0.0)
        .zip(0..b)
        .map(|(_, j)| {
            (0..b)
                .map(|i| lat.basis[i][j] * lat.basis[i][j])
                .sum::<f64>()
                .sqrt()
        })
        .sum();
    let density = unit_ball_volume(b) / lat.covolume();
    x * density * (1.0 + s / t).powi(b as i32) * t.powf(b as f64 - x) / (x - b as f64)
}

/// Truncated Epstein sum with the integral tail reattached analytically:
/// meromorphic in `z` with the correct simple pole at `z = b`, so residue
/// extrapolation converges on it. Requires an integer Gram matrix.
pub struct CompensatedEpstein {
    counts: Vec<u64>,
    b: usize,
    density: f64,
    t: f64,
}

impl CompensatedEpstein {
    pub fn new(lat: &Lattice, t: f64) -> Result<CompensatedEpstein> {
        let max_n = (t * t).floor() as i64;
        Ok(CompensatedEpstein {
            counts: theta_coefficients(lat, max_n)?,
            b: lat.dim(),
            density: unit_ball_volume(lat.dim()) / lat.covolume(),
            t,
        })
    }

    pub fn eval(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let mut sum = num_complex::Complex64::new(0.0, 0.0);
        for (idx, &r) in self.counts.iter().enumerate() {
            if r == 0 {
                continue;
            }
            let n = (idx + 1) as f64;
            sum += r as f64 * (-z / 2.0 * n.ln()).exp();
        }
        let b = self.b as f64;
        let tail = ((b - z) * self.t.ln()).exp();
        sum + b * self.density * tail / (z - b)
    }
}

/// The analytic residue of the Epstein zeta function at `z = b`:
/// `b * omega_b / covol`.
pub fn torus_residue(lat: &Lattice) -> f64 {
    lat.dim() as f64 * unit_ball_volume(lat.dim()) / lat.covolume()
}

/// The 2-torus isoperimetric comparison: with the optimal planar constant
/// `v_2 = 3` (attained by affine regular hexagons) and degree 1,
/// `lhs = 2 * 3 * 1` must not exceed the residue of the covolume-normalized
/// lattice, which is `2 pi`.
pub fn torus_isoperimetric_check(lat: &Lattice) -> Result<(f64, f64, bool)> {
    if lat.dim() != 2 {
        return Err(Error::DimensionNotTwo);
    }
    let lhs = 2.0 * 3.0 * 1.0;
    let rhs = torus_residue(&lat.normalized());
    Ok((lhs, rhs, lhs <= rhs))
}

/// Parses the lattice file format: `lattice <b>` then `b` rows of `b`
/// rational or decimal Gram entries.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty lattice file".into()))?;
    let dim: usize = header
        .strip_prefix("lattice")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected `lattice <b>`, got `{header}`")))?;
    let mut gram = Vec::with_capacity(dim);
    for _ in 0..dim {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing Gram rows".into()))?;
        let row: Result<Vec<Q>> = line.split_whitespace().map(parse_rational).collect();
        let row = row?;
        if row.len() != dim {
            return Err(Error::Parse(format!("expected {dim} entries, got {}", row.len())));
        }
        gram.push(row);
    }
    Lattice::from_gram(&gram)
}

/// Theta report CSV: `n, r_n`.
pub fn write_theta_csv(counts: &[u64]) -> String {
    let mut out = String::from("n,r_n\n");
    for (idx, r) in counts.iter().enumerate() {
        out.push_str(&format!("{},{}\n", idx + 1, r));
    }
    out
}
