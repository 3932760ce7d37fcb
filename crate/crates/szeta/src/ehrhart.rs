//! Ehrhart quasi-polynomials of stable balls and the data driving the
//! meromorphic continuation of the stable zeta function.
//!
//! For a rational centrally symmetric polytope `B` of dimension `b`, the
//! dilate counts `L(n) = |nB ∩ Z^b|` form a quasi-polynomial
//! `L(n) = V n^b + sum_l q_l(n) n^l` whose coefficients `q_l` are periodic
//! with period `m` (any common multiple of the vertex coordinate
//! denominators works). The shell counts `A_n = L(n) - L(n-1)` then expand
//! as `A_n = bV n^{b-1} + p(n)` with `p` again `m`-periodic and the leading
//! coefficient averaging to zero over one period — the fact that kills the
//! would-be double pole of the associated Dirichlet series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{HomologyBasis, WeightedGraph};
use crate::num::{format_rational, Q};
use crate::spectrum::counting_function;
use crate::stable::{stable_ball, StableBall};

/// `L(n) = V n^b + sum_{l<b} q_l(n) n^l` with `m`-periodic coefficients.
///
/// `coeffs[l][k-1]` is the value of `q_l` on the residue class
/// `n ≡ k (mod m)`, `k = 1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub b: usize,
    pub m: i64,
    pub leading: Q,
    pub coeffs: Vec<Vec<Q>>,
}

/// `A_n = bV n^{b-1} + p(n)` in the same representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellCounts {
    pub b: usize,
    pub m: i64,
    pub volume: Q,
    pub p: Vec<Vec<Q>>,
}

/// The `(b, m, V, p_lk)` data evaluated by the Hurwitz-zeta form of the
/// stable zeta function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzDecomposition {
    pub b: usize,
    pub m: i64,
    pub volume: Q,
    pub p: Vec<Vec<Q>>,
}

/// Residue class of `n` in `1..=m`.
fn residue_class(n: i64, m: i64) -> usize {
    let r = n.rem_euclid(m);
    (if r == 0 { m } else { r }) as usize
}

impl QuasiPolynomial {
    /// Evaluates `L(n)` for any integer `n` (negative dilates are the formal
    /// evaluation used by the reciprocity check).
    pub fn eval(&self, n: i64) -> Q {
        let k = residue_class(n, self.m);
        let nq = Q::from_integer(n.into());
        let mut acc = self.leading.clone();
        for _ in 0..self.b {
            acc *= &nq;
        }
        for (l, row) in self.coeffs.iter().enumerate() {
            let mut term = row[k - 1].clone();
            for _ in 0..l {
                term *= &nq;
            }
            acc += term;
        }
        acc
    }
}

impl ShellCounts {
    /// Evaluates `A_n` for `n >= 1`.
    pub fn eval(&self, n: i64) -> Q {
        let k = residue_class(n, self.m);
        let nq = Q::from_integer(n.into());
        let mut acc = self.volume.clone() * Q::from_integer((self.b as i64).into());
        for _ in 0..self.b.saturating_sub(1) {
            acc *= &nq;
        }
        for (l, row) in self.p.iter().enumerate() {
            let mut term = row[k - 1].clone();
            for _ in 0..l {
                term *= &nq;
            }
            acc += term;
        }
        acc
    }
}

/// Exact dilate count `|nB ∩ Z^b|`, origin included.
pub fn dilate_count(ball: &StableBall, n: i64) -> u64 {
    1 + counting_function(ball, &Q::from_integer(n.into()))
}

/// Fits the Ehrhart quasi-polynomial of a rational centrally symmetric ball.
///
/// The period is taken as the lcm of the vertex coordinate denominators
/// (a valid quasi-period, not necessarily minimal). Counts at dilates
/// `n = 1..=m(b+1)` determine, per residue class, the `b+1` unknowns
/// `V, q_{b-1}(k), ..., q_0(k)`; the leading coefficient must come out equal
/// to the exact ball volume in every class.
pub fn ehrhart_fit(ball: &StableBall) -> Result<QuasiPolynomial> {
    let b = ball.dim();
    let mut m_big = BigInt::one();
    for v in ball.vertices() {
        for x in v {
            m_big = m_big.lcm(x.denom());
        }
    }
    let m = m_big.to_i64().ok_or_else(|| {
        Error::InconsistentFit("vertex denominators overflow the period".into())
    })?;

    let max_fit = m * (b as i64 + 1);
    let counts: Vec<Q> = (1..=max_fit)
        .map(|n| Q::from_integer(dilate_count(ball, n).into()))
        .collect();

    let mut coeffs: Vec<Vec<Q>> = vec![vec![Q::zero(); m as usize]; b];
    for k in 1..=m {
        let dilates: Vec<i64> = (0..=b as i64).map(|i| k + i * m).collect();
        // unknowns: [V, q_{b-1}, ..., q_0]
        let rows: Vec<Vec<Q>> = dilates
            .iter()
            .map(|&n| {
                let nq = Q::from_integer(n.into());
                let mut row = Vec::with_capacity(b + 1);
                let mut pw = Q::one();
                let mut powers = vec![Q::one()];
                for _ in 0..b {
                    pw *= &nq;
                    powers.push(pw.clone());
                }
                for l in (0..=b).rev() {
                    row.push(powers[l].clone());
                }
                row
            })
            .collect();
        let rhs: Vec<Q> = dilates.iter().map(|&n| counts[(n - 1) as usize].clone()).collect();
        let solution = crate::linalg::solve(&rows, &rhs)
            .map_err(|_| Error::InconsistentFit("singular dilate system".into()))?;
        if solution[0] != *ball.volume() {
            return Err(Error::InconsistentFit(format!(
                "leading coefficient {} differs from the ball volume {} in class {k}",
                format_rational(&solution[0]),
                format_rational(ball.volume()),
            )));
        }
        for l in 0..b {
            // solution[1] is q_{b-1}, ..., solution[b] is q_0
            coeffs[l][(k - 1) as usize] = solution[b - l].clone();
        }
    }

    let qp = QuasiPolynomial {
        b,
        m,
        leading: ball.volume().clone(),
        coeffs,
    };
    // every fitted dilate must be reproduced exactly
    for n in 1..=max_fit {
        if qp.eval(n) != counts[(n - 1) as usize] {
            return Err(Error::InconsistentFit(format!("misfit at dilate {n}")));
        }
    }
    Ok(qp)
}

/// Multiplies the polynomial (coefficient vector, index = degree) by
/// `(n - 1)^l` expanded binomially... rather, returns the coefficient
/// vector of `c * (n-1)^l` in `n`.
fn shifted_monomial(c: &Q, l: usize) -> Vec<Q> {
    // (n-1)^l = sum_j C(l,j) n^j (-1)^{l-j}
    let mut out = vec![Q::zero(); l + 1];
    let mut binom = BigInt::one();
    for j in 0..=l {
        // C(l, j)
        if j > 0 {
            binom = &binom * BigInt::from((l - j + 1) as i64) / BigInt::from(j as i64);
        }
        let sign = if (l - j) % 2 == 0 { 1 } else { -1 };
        out[j] = c * Q::from_integer(&binom * BigInt::from(sign));
    }
    out
}

/// Shell counts `A_n = L(n) - L(n-1) = bV n^{b-1} + p(n)`, with the
/// periodic remainder expanded exactly. Enforces the mean-zero property of
/// the leading coefficient.
pub fn shell_counts(qp: &QuasiPolynomial) -> Result<ShellCounts> {
    let b = qp.b;
    let m = qp.m;
    let mut p: Vec<Vec<Q>> = vec![vec![Q::zero(); m as usize]; b.max(1)];
    for k in 1..=m {
        let prev = residue_class(k - 1, m);
        // polynomial for n ≡ k: V n^b + sum_l q_l(k) n^l
        let mut poly = vec![Q::zero(); b + 1];
        poly[b] = qp.leading.clone();
        for (l, row) in qp.coeffs.iter().enumerate() {
            poly[l] += &row[(k - 1) as usize];
        }
        // subtract the shifted polynomial V (n-1)^b + sum_l q_l(prev) (n-1)^l
        let mut sub_terms = shifted_monomial(&qp.leading, b);
        for (l, row) in qp.coeffs.iter().enumerate() {
            let t = shifted_monomial(&row[prev - 1], l);
            for (j, c) in t.into_iter().enumerate() {
                sub_terms[j] += c;
            }
        }
        for (j, c) in sub_terms.into_iter().enumerate() {
            poly[j] -= c;
        }
        // subtract bV n^{b-1}
        if b >= 1 {
            poly[b - 1] -= &qp.leading * Q::from_integer((b as i64).into());
        }
        if !poly[b].is_zero() {
            return Err(Error::InconsistentFit("degree-b term survives in shells".into()));
        }
        for l in 0..b {
            p[l][(k - 1) as usize] = poly[l].clone();
        }
    }
    if b >= 1 {
        let mean: Q = p[b - 1].iter().sum();
        if !mean.is_zero() {
            return Err(Error::MeanZeroViolation);
        }
    }
    Ok(ShellCounts {
        b,
        m,
        volume: qp.leading.clone(),
        p,
    })
}

/// Repackages shell counts as the Hurwitz evaluation data: `p_lk` is already
/// the indicator-basis expansion of `p_l` over residue classes.
pub fn hurwitz_decomposition(sc: &ShellCounts) -> HurwitzDecomposition {
    HurwitzDecomposition {
        b: sc.b,
        m: sc.m,
        volume: sc.volume.clone(),
        p: sc.p.clone(),
    }
}

/// End-to-end decomposition for a combinatorial graph.
///
/// The Hurwitz form of the stable zeta function requires integer-valued
/// stable norms, which holds exactly when every weight is 1; the integrality
/// of the norm is additionally spot-checked on the fundamental classes.
pub fn hurwitz_for_graph(
    g: &WeightedGraph,
    basis: &HomologyBasis,
) -> Result<(StableBall, HurwitzDecomposition)> {
    if !g.is_combinatorial() {
        return Err(Error::NotCombinatorial);
    }
    let ball = stable_ball(g, basis)?;
    // integer-norm certificate on a generating sample
    for j in 0..basis.betti() {
        let mut unit = vec![0i64; basis.betti()];
        unit[j] = 1;
        let norm = ball.gauge_class(&crate::graph::HomologyClass(unit));
        if !norm.is_integer() {
            return Err(Error::NotCombinatorial);
        }
    }
    let qp = ehrhart_fit(&ball)?;
    let sc = shell_counts(&qp)?;
    Ok((ball, hurwitz_decomposition(&sc)))
}

/// Quasi-polynomial report: `b`, `m`, `V` headers, then `l k coeff` rows.
pub fn format_quasipolynomial(qp: &QuasiPolynomial) -> String {
    let mut out = format!(
        "b {}\nm {}\nV {}\n",
        qp.b,
        qp.m,
        format_rational(&qp.leading)
    );
    for (l, row) in qp.coeffs.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            out.push_str(&format!("{} {} {}\n", l, k + 1, format_rational(c)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qi};
    use crate::stable::fixtures::{figure_eight, linf_ball, theta_graph};
    use crate::stable::gl_transform;

    fn fig8_ball() -> StableBall {
        let g = figure_eight();
        stable_ball(&g, &g.homology_basis()).unwrap()
    }

    fn theta_ball() -> StableBall {
        let g = theta_graph();
        stable_ball(&g, &g.homology_basis()).unwrap()
    }

    #[test]
    fn figure_eight_is_polynomial() {
        let qp = ehrhart_fit(&fig8_ball()).unwrap();
        assert_eq!(qp.m, 1);
        assert_eq!(qp.leading, qi(2));
        // L(n) = 2n^2 + 2n + 1
        assert_eq!(qp.coeffs[1][0], qi(2));
        assert_eq!(qp.coeffs[0][0], qi(1));
        for n in 1..=5 {
            assert_eq!(qp.eval(n), qi(2 * n * n + 2 * n + 1));
            assert_eq!(dilate_count(&fig8_ball(), n), (2 * n * n + 2 * n + 1) as u64);
        }
    }

    #[test]
    fn theta_quasi_polynomial() {
        let qp = ehrhart_fit(&theta_ball()).unwrap();
        assert_eq!(qp.m, 2);
        assert_eq!(qp.leading, q(3, 4));
        // odd: L(n) = (3/4)n^2 + 1/4; even: L(n) = (3/4)n^2 + (3/2)n + 1
        assert_eq!(qp.coeffs[1][0], qi(0));
        assert_eq!(qp.coeffs[0][0], q(1, 4));
        assert_eq!(qp.coeffs[1][1], q(3, 2));
        assert_eq!(qp.coeffs[0][1], qi(1));
        for (n, want) in [(1, 1u64), (2, 7), (3, 7), (4, 19)] {
            assert_eq!(qp.eval(n), Q::from_integer(want.into()));
        }
    }

    #[test]
    fn segment_fit() {
        let ball = StableBall::from_points(1, &[vec![qi(1)]]).unwrap();
        let qp = ehrhart_fit(&ball).unwrap();
        assert_eq!(qp.m, 1);
        assert_eq!(qp.leading, qi(2));
        assert_eq!(qp.coeffs[0][0], qi(1));
        let sc = shell_counts(&qp).unwrap();
        assert!(sc.p[0].iter().all(|c| c.is_zero()));
        assert_eq!(sc.eval(5), qi(2));
    }

    #[test]
    fn held_out_dilates() {
        for ball in [fig8_ball(), theta_ball(), linf_ball(2)] {
            let qp = ehrhart_fit(&ball).unwrap();
            let lo = qp.m * (qp.b as i64 + 1) + 1;
            let hi = qp.m * (qp.b as i64 + 2);
            for n in lo..=hi {
                assert_eq!(
                    qp.eval(n),
                    Q::from_integer(dilate_count(&ball, n).into()),
                    "held-out dilate {n}"
                );
            }
        }
    }

    #[test]
    fn theta_shells() {
        let qp = ehrhart_fit(&theta_ball()).unwrap();
        let sc = shell_counts(&qp).unwrap();
        // A_n = 3n for even n, 0 for odd
        assert_eq!(sc.p[1][0], q(-3, 2));
        assert_eq!(sc.p[1][1], q(3, 2));
        assert!(sc.p[0].iter().all(|c| c.is_zero()));
        for n in 1..=8i64 {
            let want = if n % 2 == 0 { qi(3 * n) } else { qi(0) };
            assert_eq!(sc.eval(n), want, "A_{n}");
        }
        // shells must also match the direct counts
        for n in 1..=8i64 {
            let diff = dilate_count(&theta_ball(), n) as i64
                - if n > 1 {
                    dilate_count(&theta_ball(), n - 1) as i64
                } else {
                    1
                };
            assert_eq!(sc.eval(n), qi(diff));
        }
    }

    #[test]
    fn figure_eight_shells_vanish() {
        let qp = ehrhart_fit(&fig8_ball()).unwrap();
        let sc = shell_counts(&qp).unwrap();
        assert!(sc.p.iter().flatten().all(|c| c.is_zero()));
        for n in 1..=5i64 {
            assert_eq!(sc.eval(n), qi(4 * n));
        }
    }

    #[test]
    fn mean_zero_over_test_balls() {
        let sheared_theta = gl_transform(
            &theta_ball(),
            &[vec![qi(1), qi(1)], vec![qi(0), qi(1)]],
        )
        .unwrap();
        for ball in [fig8_ball(), theta_ball(), linf_ball(2), linf_ball(3), sheared_theta] {
            let qp = ehrhart_fit(&ball).unwrap();
            let sc = shell_counts(&qp).unwrap();
            let mean: Q = sc.p[sc.b - 1].iter().sum();
            assert!(mean.is_zero());
        }
    }

    #[test]
    fn reciprocity_smoke_test() {
        // interior counts by direct strict-gauge enumeration
        let ball = fig8_ball();
        let qp = ehrhart_fit(&ball).unwrap();
        for n in 1..=3i64 {
            let mut interior = 0u64;
            for x in -(n + 1)..=(n + 1) {
                for y in -(n + 1)..=(n + 1) {
                    let g = ball.gauge(&[qi(x), qi(y)]);
                    if g < qi(n) {
                        interior += 1;
                    }
                }
            }
            // (-1)^b L(-n) = interior count, b = 2
            assert_eq!(qp.eval(-n), Q::from_integer(interior.into()), "dilate {n}");
        }
    }

    #[test]
    fn decomposition_requires_combinatorial_weights() {
        let g = theta_graph();
        let basis = g.homology_basis();
        assert!(hurwitz_for_graph(&g, &basis).is_ok());
        let reweighted = g.reweighted(&[q(1, 2), qi(1), qi(1)]).unwrap();
        assert_eq!(
            hurwitz_for_graph(&reweighted, &basis).err(),
            Some(Error::NotCombinatorial)
        );
    }

    #[test]
    fn theta_decomposition_values() {
        let g = theta_graph();
        let (_, hd) = hurwitz_for_graph(&g, &g.homology_basis()).unwrap();
        assert_eq!(hd.m, 2);
        assert_eq!(hd.volume, q(3, 4));
        assert_eq!(hd.p[1][0], q(-3, 2));
        assert_eq!(hd.p[1][1], q(3, 2));
        assert_eq!(hd.p[0], vec![qi(0), qi(0)]);
    }

    #[test]
    fn report_format() {
        let qp = ehrhart_fit(&fig8_ball()).unwrap();
        let report = format_quasipolynomial(&qp);
        assert!(report.contains("b 2"));
        assert!(report.contains("m 1"));
        assert!(report.contains("V 2"));
        assert!(report.contains("1 1 2"));
    }
}
