//! Numeric check of the involution `q -> s_q` on the Hessian curve, where
//! `s_q` is the singular point of the polar conic of `q`.
//!
//! Points are sampled by cutting the Hessian with random rational lines and
//! solving the restricted cubic in double-precision complex arithmetic.
//! Projective points are compared with the chordal distance
//! `|p ^ q| / (|p| |q|)`, which is scale-free and, unlike `acos` or
//! `sqrt(1 - cos^2)` forms, accurate for nearby points.

use nalgebra::Matrix3;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{Space, TernaryForm};
use crate::geometry::hessian_curve;
use crate::rational::{int, to_f64};

/// Residual bound for sampled points, on the Hessian scaled to unit max coefficient.
pub const SAMPLE_RESIDUAL: f64 = 1e-10;

/// Relative threshold for numerical rank decisions on 3x3 Gram matrices.
const RANK_TOL: f64 = 1e-7;

const MAX_LINE_ATTEMPTS: usize = 100;

/// A complex projective point, stored with unit Euclidean norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint(pub [Complex64; 3]);

impl ComplexPoint {
    pub fn new(coords: [Complex64; 3]) -> Result<Self> {
        let n = norm(&coords);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroPoint);
        }
        Ok(ComplexPoint(coords.map(|c| c / n)))
    }

    pub fn from_real(coords: [f64; 3]) -> Result<Self> {
        Self::new(coords.map(|x| Complex64::new(x, 0.0)))
    }

    /// Sine of the Hermitian angle between the two lines.
    pub fn chordal_distance(&self, other: &ComplexPoint) -> f64 {
        let (p, q) = (&self.0, &other.0);
        let wedge: f64 = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| (p[i] * q[j] - p[j] * q[i]).norm_sqr())
            .sum();
        wedge.sqrt() / (norm(p) * norm(q))
    }
}

fn norm(v: &[Complex64; 3]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

fn cross(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &[Complex64; 3], b: &[Complex64; 3]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Evaluates a form with `f64` coefficients at a complex point.
fn eval_complex(terms: &[([u32; 3], f64)], q: &[Complex64; 3]) -> Complex64 {
    terms
        .iter()
        .map(|(e, c)| {
            let mut v = Complex64::new(*c, 0.0);
            for i in 0..3 {
                for _ in 0..e[i] {
                    v *= q[i];
                }
            }
            v
        })
        .sum()
}

/// Hessian coefficients scaled so the largest has absolute value 1.
fn normalized_terms(h: &TernaryForm) -> Vec<([u32; 3], f64)> {
    let terms: Vec<([u32; 3], f64)> = h.terms().map(|(m, c)| (m.0, to_f64(c))).collect();
    let max = terms.iter().map(|(_, c)| c.abs()).fold(0.0, f64::max);
    terms.into_iter().map(|(e, c)| (e, c / max)).collect()
}

/// Roots of `c0 + c1 x + c2 x^2 + c3 x^3` (with `c3 != 0`), from companion
/// matrix eigenvalues polished by Newton steps on the original cubic.
fn cubic_roots(c: [f64; 4]) -> Vec<Complex64> {
    let (a, b, d) = (c[2] / c[3], c[1] / c[3], c[0] / c[3]);
    let companion = Matrix3::new(0.0, 0.0, -d, 1.0, 0.0, -b, 0.0, 1.0, -a);
    let p = |x: Complex64| ((x + a) * x + b) * x + d;
    let dp = |x: Complex64| (x * 3.0 + 2.0 * a) * x + b;
    companion
        .complex_eigenvalues()
        .iter()
        .map(|&z| {
            let mut x = z;
            for _ in 0..4 {
                let der = dp(x);
                if der.norm() < 1e-12 {
                    break;
                }
                let step = p(x) / der;
                x -= step;
                if step.norm() <= 1e-17 * (1.0 + x.norm()) {
                    break;
                }
            }
            x
        })
        .collect()
}

fn random_point(rng: &mut ChaCha8Rng) -> [i64; 3] {
    loop {
        let p = [(); 3].map(|_| rng.random_range(-9..=9));
        if p.iter().any(|&x| x != 0) {
            return p;
        }
    }
}

/// Intersects the Hessian of `f` with `lines` random rational lines and
/// returns the intersection points (three per line).
pub fn sample_hessian_points(f: &TernaryForm, lines: usize, seed: u64) -> Result<Vec<ComplexPoint>> {
    let h = hessian_curve(f)?;
    if h.is_zero() {
        return Err(Error::ZeroInput("degenerate Hessian (zero form)".into()));
    }
    let scaled = normalized_terms(&h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(3 * lines);
    let u = TernaryForm::var(0, Space::Primal);
    let v = TernaryForm::var(1, Space::Primal);
    for _ in 0..lines {
        for attempt in 0.. {
            if attempt == MAX_LINE_ATTEMPTS {
                return Err(Error::Numeric("could not find a line transverse to the Hessian".into()));
            }
            let (p, q) = (random_point(&mut rng), random_point(&mut rng));
            // z_i = p_i u + q_i v; the restriction is a binary cubic in (u, v).
            let images = [0, 1, 2].map(|i| &u.scale(&int(p[i])) + &v.scale(&int(q[i])));
            let restricted = h.substitute(&images);
            let coeffs = [0u32, 1, 2, 3].map(|k| to_f64(&restricted.coeff(&crate::form::Monomial([3 - k, k, 0]))));
            if restricted.coeff(&crate::form::Monomial([0, 3, 0])).is_zero() || coeffs.iter().all(|c| *c == 0.0) {
                continue;
            }
            let mut found = Vec::with_capacity(3);
            for lambda in cubic_roots(coeffs) {
                let coords = [0, 1, 2].map(|i| Complex64::new(p[i] as f64, 0.0) + lambda * q[i] as f64);
                let Ok(pt) = ComplexPoint::new(coords) else { continue };
                if eval_complex(&scaled, &pt.0).norm() < SAMPLE_RESIDUAL {
                    found.push(pt);
                }
            }
            out.extend(found);
            break;
        }
    }
    Ok(out)
}

/// The map `q -> s_q` for a fixed cubic.
#[derive(Debug, Clone)]
pub struct Involution {
    /// Third partials `d_i d_j d_k f`, constant for a cubic.
    third: [[[f64; 3]; 3]; 3],
}

impl Involution {
    pub fn new(f: &TernaryForm) -> Result<Self> {
        if f.degree() != 3 {
            return Err(Error::DegreeMismatch {
                expected: 3,
                got: f.degree(),
            });
        }
        let mut third = [[[0.0; 3]; 3]; 3];
        let origin = [int(0), int(0), int(0)];
        for (i, plane) in third.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                for (k, v) in row.iter_mut().enumerate() {
                    *v = to_f64(&f.partial(i).partial(j).partial(k).eval(&origin));
                }
            }
        }
        Ok(Involution { third })
    }

    /// Gram matrix of the polar conic of `q`, scaled to unit max entry.
    fn polar_gram(&self, q: &ComplexPoint) -> [[Complex64; 3]; 3] {
        let mut g = [[Complex64::zero(); 3]; 3];
        for (j, row) in g.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|i| q.0[i] * self.third[i][j][k]).sum::<Complex64>() * 0.5;
            }
        }
        let max = g.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if max > 0.0 {
            for v in g.iter_mut().flatten() {
                *v /= max;
            }
        }
        g
    }

    pub fn apply(&self, q: &ComplexPoint) -> Result<ComplexPoint> {
        let g = self.polar_gram(q);
        let crosses = [cross(&g[0], &g[1]), cross(&g[0], &g[2]), cross(&g[1], &g[2])];
        let best = crosses
            .iter()
            .max_by(|a, b| norm(a).total_cmp(&norm(b)))
            .expect("three candidates");
        if norm(best) < RANK_TOL {
            return Err(Error::ConicRank { rank: 1 });
        }
        if dot(&g[0], &crosses[2]).norm() > RANK_TOL {
            return Err(Error::ConicRank { rank: 3 });
        }
        ComplexPoint::new(*best)
    }
}

pub fn involution_s(f: &TernaryForm, q: &ComplexPoint) -> Result<ComplexPoint> {
    Involution::new(f)?.apply(q)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvolutionReport {
    /// Usable samples, i.e. those where both `s(q)` and `s(s(q))` are defined.
    pub samples: usize,
    pub requested: usize,
    pub max_double_apply_error: f64,
    pub min_fixed_point_distance: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Samples `n` points on the Hessian and checks that `s` is an involution
/// without fixed points, within `tol` in the chordal metric.
pub fn check_involution(f: &TernaryForm, n: usize, tol: f64, seed: u64) -> Result<InvolutionReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let involution = Involution::new(f)?;
    let mut points = sample_hessian_points(f, n.div_ceil(3), seed)?;
    points.truncate(n);
    let mut usable = 0;
    let mut max_err: f64 = 0.0;
    let mut min_fix = f64::INFINITY;
    for q in &points {
        let Ok(s1) = involution.apply(q) else { continue };
        let Ok(s2) = involution.apply(&s1) else { continue };
        usable += 1;
        max_err = max_err.max(s2.chordal_distance(q));
        min_fix = min_fix.min(s1.chordal_distance(q));
    }
    if 2 * usable < n {
        return Err(Error::InsufficientSamples { usable, requested: n });
    }
    Ok(InvolutionReport {
        samples: usable,
        requested: n,
        max_double_apply_error: max_err,
        min_fixed_point_distance: min_fix,
        tolerance: tol,
        pass: max_err < tol && min_fix > tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hesse_cubic;
    use crate::rational::rat;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn cubic_solver() {
        // (x - 1)(x + 2)(x - 3) = x^3 - 2x^2 - 5x + 6
        let mut roots: Vec<f64> = cubic_roots([6.0, -5.0, -2.0, 1.0]).iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        for (r, e) in roots.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((r - e).abs() < 1e-12);
        }
        // x^3 + 1 has a complex pair.
        let roots = cubic_roots([1.0, 0.0, 0.0, 1.0]);
        assert!(roots.iter().all(|z| (z * z * z + 1.0).norm() < 1e-12));
    }

    #[test]
    fn chordal_metric_is_projective() {
        let p = ComplexPoint::new([c(1.0), c(2.0), c(3.0)]).unwrap();
        let scaled = ComplexPoint::new([1.0, 2.0, 3.0].map(|x| Complex64::new(0.0, -4.0) * x)).unwrap();
        assert!(p.chordal_distance(&scaled) < 1e-15);
        let e0 = ComplexPoint::from_real([1.0, 0.0, 0.0]).unwrap();
        let e1 = ComplexPoint::from_real([0.0, 1.0, 0.0]).unwrap();
        assert!((e0.chordal_distance(&e1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fermat_hand_computation() {
        let fermat = hesse_cubic(&int(0));
        let q = ComplexPoint::from_real([0.0, 1.0, -1.0]).unwrap();
        let s = involution_s(&fermat, &q).unwrap();
        let e0 = ComplexPoint::from_real([1.0, 0.0, 0.0]).unwrap();
        assert!(s.chordal_distance(&e0) < 1e-15);
        assert!(matches!(involution_s(&fermat, &e0), Err(Error::ConicRank { rank: 1 })));
        let off = ComplexPoint::from_real([1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(involution_s(&fermat, &off), Err(Error::ConicRank { rank: 3 })));
    }

    #[test]
    fn sampled_points_lie_on_the_hessian() {
        let f2 = hesse_cubic(&int(2));
        let pts = sample_hessian_points(&f2, 10, 42).unwrap();
        assert_eq!(pts.len(), 30);
        let h = normalized_terms(&hessian_curve(&f2).unwrap());
        assert!(pts.iter().all(|p| eval_complex(&h, &p.0).norm() < SAMPLE_RESIDUAL));
        assert_eq!(pts, sample_hessian_points(&f2, 10, 42).unwrap());

        let fermat_pts = sample_hessian_points(&hesse_cubic(&int(0)), 5, 1).unwrap();
        assert!(fermat_pts
            .iter()
            .all(|p| (p.0[0] * p.0[1] * p.0[2]).norm() < SAMPLE_RESIDUAL));

        let z0_cubed = crate::parse::parse_form("z0^3", Space::Primal).unwrap();
        assert!(matches!(sample_hessian_points(&z0_cubed, 3, 0), Err(Error::ZeroInput(_))));
    }

    #[test]
    fn involution_on_smooth_members() {
        for t in [int(2), rat(1, 2), int(-3)] {
            let report = check_involution(&hesse_cubic(&t), 100, 1e-8, 7).unwrap();
            assert!(report.pass, "{report:?}");
            assert!(report.samples >= 50);
        }
    }

    #[test]
    fn fermat_samples_are_filtered() {
        // s maps every Hessian point to a vertex of the triangle z0 z1 z2 = 0,
        // where the polar conic is a double line.
        let err = check_involution(&hesse_cubic(&int(0)), 100, 1e-8, 7).unwrap_err();
        assert!(matches!(err, Error::InsufficientSamples { usable: 0, requested: 100 }));
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(matches!(
            check_involution(&hesse_cubic(&int(2)), 10, 0.0, 0),
            Err(Error::InvalidArgument(_))
        ));
    }
}
