//! Classical constructions on plane cubics: Hesse pencil members, first
//! polars, Hessian curves, singular points of degenerate conics, smoothness
//! and the j-invariant on the Hesse pencil.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{Monomial, Space, TernaryForm};
use crate::matrix::ExactMatrix;
use crate::rational::{cube, int, Rational};
use crate::resultant::sylvester_resultant;

pub const DEFAULT_SMOOTHNESS_RETRIES: u32 = 3;

/// Member `z0^3 + z1^3 + z2^3 - 3t z0 z1 z2` of the Hesse pencil.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HesseCubic {
    pub t: Rational,
}

impl HesseCubic {
    pub fn new(t: Rational) -> Self {
        HesseCubic { t }
    }

    pub fn form(&self) -> TernaryForm {
        hesse_cubic(&self.t)
    }

    pub fn is_smooth(&self) -> bool {
        !cube(&self.t).is_one()
    }

    /// Recognizes `c (z0^3 + z1^3 + z2^3) + m z0 z1 z2` with `c != 0`.
    pub fn recognize(f: &TernaryForm) -> Option<HesseCubic> {
        let (pure, product) = hesse_coefficients(f)?;
        if pure.is_zero() {
            return None;
        }
        Some(HesseCubic::new(-product / (int(3) * pure)))
    }
}

/// For a cubic supported on `{x0^3, x1^3, x2^3, x0 x1 x2}` with equal
/// pure-cube coefficients, returns `(pure-cube coefficient, product coefficient)`.
pub(crate) fn hesse_coefficients(f: &TernaryForm) -> Option<(Rational, Rational)> {
    if f.degree() != 3 {
        return None;
    }
    let cubes = [Monomial([3, 0, 0]), Monomial([0, 3, 0]), Monomial([0, 0, 3])];
    let product = Monomial([1, 1, 1]);
    if f.terms().any(|(m, _)| *m != product && !cubes.contains(m)) {
        return None;
    }
    let pure = f.coeff(&cubes[0]);
    if cubes[1..].iter().any(|m| f.coeff(m) != pure) {
        return None;
    }
    Some((pure, f.coeff(&product)))
}

pub fn hesse_cubic(t: &Rational) -> TernaryForm {
    let terms = [
        (Monomial([3, 0, 0]), Rational::one()),
        (Monomial([0, 3, 0]), Rational::one()),
        (Monomial([0, 0, 3]), Rational::one()),
        (Monomial([1, 1, 1]), -int(3) * t),
    ];
    TernaryForm::from_terms(3, Space::Primal, terms).expect("cubic monomials")
}

/// A point of the projective plane with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePoint([Rational; 3]);

impl ProjectivePoint {
    pub fn new(coords: [Rational; 3]) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPoint);
        }
        Ok(ProjectivePoint(coords))
    }

    pub fn from_ints(coords: [i64; 3]) -> Result<Self> {
        Self::new(coords.map(int))
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.0
    }

    /// Representative whose last nonzero coordinate is 1.
    pub fn canonical(&self) -> ProjectivePoint {
        let last = self
            .0
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .expect("nonzero point")
            .clone();
        ProjectivePoint(self.0.clone().map(|c| c / &last))
    }
}

impl PartialEq<[i64; 3]> for ProjectivePoint {
    fn eq(&self, other: &[i64; 3]) -> bool {
        match ProjectivePoint::from_ints(*other) {
            Ok(p) => self.canonical() == p.canonical(),
            Err(_) => false,
        }
    }
}

fn expect_degree(f: &TernaryForm, d: u32) -> Result<()> {
    if f.degree() != d {
        return Err(Error::DegreeMismatch {
            expected: d,
            got: f.degree(),
        });
    }
    Ok(())
}

/// `a0 d0f + a1 d1f + a2 d2f` for `q = [a0 : a1 : a2]`.
pub fn first_polar(f: &TernaryForm, q: &ProjectivePoint) -> Result<TernaryForm> {
    expect_degree(f, 3)?;
    Ok(q.coords()
        .iter()
        .enumerate()
        .fold(TernaryForm::zero(2, f.space()), |acc, (i, a)| {
            &acc + &f.partial(i).scale(a)
        }))
}

/// Determinant of the matrix of second partials, unnormalized.
pub fn hessian_curve(f: &TernaryForm) -> Result<TernaryForm> {
    expect_degree(f, 3)?;
    let second: Vec<Vec<TernaryForm>> = (0..3)
        .map(|i| (0..3).map(|j| f.partial(i).partial(j)).collect())
        .collect();
    let det = det3(&second);
    Ok(if det.is_zero() {
        TernaryForm::zero(3, f.space())
    } else {
        det
    })
}

/// Leibniz expansion of a 3x3 determinant with form entries.
pub(crate) fn det3(m: &[Vec<TernaryForm>]) -> TernaryForm {
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], false),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([0, 2, 1], true),
        ([2, 1, 0], true),
        ([1, 0, 2], true),
    ];
    let mut acc: Option<TernaryForm> = None;
    for (p, odd) in PERMS {
        let term = &(&m[0][p[0]] * &m[1][p[1]]) * &m[2][p[2]];
        let term = if odd { -term } else { term };
        acc = Some(match acc {
            Some(a) => &a + &term,
            None => term,
        });
    }
    acc.expect("six terms")
}

/// Symmetric Gram matrix `G` with `Q(z) = z^T G z`.
pub fn gram_matrix(q: &TernaryForm) -> Result<ExactMatrix> {
    expect_degree(q, 2)?;
    let half = Rational::new(1.into(), 2.into());
    let mut g = ExactMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let c = q.coeff(&Monomial(e));
            g[(i, j)] = if i == j { c } else { c * &half };
        }
    }
    Ok(g)
}

/// The singular point of a conic whose Gram matrix has rank exactly 2.
pub fn conic_singular_point(q: &TernaryForm) -> Result<ProjectivePoint> {
    let g = gram_matrix(q)?;
    let rank = g.rank();
    if rank != 2 {
        return Err(Error::ConicRank { rank });
    }
    let v = g.kernel_basis().pop().expect("one-dimensional kernel");
    let coords: [Rational; 3] = v.try_into().expect("three coordinates");
    Ok(ProjectivePoint::new(coords)?.canonical())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothnessStatus {
    Smooth,
    Singular,
    ProbablySingular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessVerdict {
    pub status: SmoothnessStatus,
    pub witness: Option<String>,
}

impl SmoothnessVerdict {
    pub fn is_smooth(&self) -> bool {
        self.status == SmoothnessStatus::Smooth
    }
}

/// Random unimodular integer matrix with entries in `[-9, 9]`, as a product
/// of unit lower and upper triangular factors and a row permutation.
fn unimodular(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    loop {
        let mut l = [[0i64; 3]; 3];
        let mut u = [[0i64; 3]; 3];
        for i in 0..3 {
            l[i][i] = 1;
            u[i][i] = 1;
            for j in 0..i {
                l[i][j] = rng.random_range(-3..=3);
                u[j][i] = rng.random_range(-3..=3);
            }
        }
        let mut a = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] = (0..3).map(|k| l[i][k] * u[k][j]).sum();
            }
        }
        let shift = rng.random_range(0..3);
        a.rotate_left(shift);
        if a.iter().flatten().all(|x| x.abs() <= 9) {
            return a;
        }
    }
}

fn change_coordinates(f: &TernaryForm, a: &[[i64; 3]; 3]) -> TernaryForm {
    let images = a.map(|row| {
        (0..3).fold(TernaryForm::zero(1, f.space()), |acc, j| {
            &acc + &TernaryForm::var(j, f.space()).scale(&int(row[j]))
        })
    });
    f.substitute(&images)
}

/// Smoothness of a plane cubic.
///
/// Members of the Hesse pencil are decided exactly by `t^3 != 1`. Otherwise
/// the cubic is moved by a random unimodular coordinate change and the three
/// partials are eliminated by iterated Sylvester resultants; a nonzero final
/// resultant (together with the partials not all vanishing at `[1:0:0]`)
/// certifies smoothness.
pub fn is_smooth_cubic(f: &TernaryForm, retries: u32, seed: u64) -> Result<SmoothnessVerdict> {
    expect_degree(f, 3)?;
    if f.is_zero() {
        return Err(Error::ZeroInput("zero cubic".into()));
    }
    if let Some(h) = HesseCubic::recognize(f) {
        let witness = Some(format!("hesse pencil member t = {}", crate::rational::format_rational(&h.t)));
        let status = if h.is_smooth() {
            SmoothnessStatus::Smooth
        } else {
            SmoothnessStatus::Singular
        };
        return Ok(SmoothnessVerdict { status, witness });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e0 = [int(1), int(0), int(0)];
    for attempt in 1..=retries.max(1) {
        let a = unimodular(&mut rng);
        let g = change_coordinates(f, &a);
        let partials: Vec<TernaryForm> = (0..3).map(|i| g.partial(i)).collect();
        if partials.iter().all(|p| p.eval(&e0).is_zero()) {
            return Ok(SmoothnessVerdict {
                status: SmoothnessStatus::Singular,
                witness: Some(format!("all partials vanish at the image of [1:0:0] under {a:?}")),
            });
        }
        let r1 = sylvester_resultant(&partials[0], &partials[1], 0);
        let r2 = sylvester_resultant(&partials[0], &partials[2], 0);
        let last = match (r1, r2) {
            (Ok(r1), Ok(r2)) => sylvester_resultant(&r1, &r2, 1).ok(),
            _ => None,
        };
        if last.is_some_and(|r| !r.is_zero()) {
            return Ok(SmoothnessVerdict {
                status: SmoothnessStatus::Smooth,
                witness: Some(format!("nonzero resultant on attempt {attempt}")),
            });
        }
    }
    Ok(SmoothnessVerdict {
        status: SmoothnessStatus::ProbablySingular,
        witness: Some(format!("resultants vanished on all {} attempts", retries.max(1))),
    })
}

/// `j = t^3 (t^3 + 8)^3 / (64 (t^3 - 1)^3)`.
pub fn j_invariant_hesse(t: &Rational) -> Result<Rational> {
    let t3 = cube(t);
    if t3.is_one() {
        return Err(Error::SingularCubic(format!(
            "t^3 = 1 for t = {}",
            crate::rational::format_rational(t)
        )));
    }
    let num = &t3 * cube(&(&t3 + int(8)));
    let den = int(64) * cube(&(&t3 - int(1)));
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;
    use crate::rational::rat;

    fn form(s: &str) -> TernaryForm {
        parse_form(s, Space::Primal).unwrap()
    }

    #[test]
    fn pencil_members() {
        assert_eq!(hesse_cubic(&int(0)), form("z0^3 + z1^3 + z2^3"));
        assert_eq!(hesse_cubic(&int(0)).num_terms(), 3);
        assert_eq!(hesse_cubic(&int(2)), form("z0^3 + z1^3 + z2^3 - 6*z0*z1*z2"));
        assert!(!HesseCubic::new(int(1)).is_smooth());
        assert!(HesseCubic::new(int(2)).is_smooth());
        let scaled = hesse_cubic(&rat(3, 5)).scale(&int(-4));
        assert_eq!(HesseCubic::recognize(&scaled), Some(HesseCubic::new(rat(3, 5))));
        assert_eq!(HesseCubic::recognize(&form("z0^3 + 2*z1^3 + z2^3")), None);
    }

    #[test]
    fn polars() {
        let fermat = hesse_cubic(&int(0));
        let p = first_polar(&fermat, &ProjectivePoint::from_ints([1, 0, 0]).unwrap()).unwrap();
        assert_eq!(p, form("3*z0^2"));
        let p = first_polar(&hesse_cubic(&int(2)), &ProjectivePoint::from_ints([0, 0, 1]).unwrap()).unwrap();
        assert_eq!(p, form("3*z2^2 - 6*z0*z1"));
        assert!(matches!(ProjectivePoint::from_ints([0, 0, 0]), Err(Error::ZeroPoint)));
    }

    #[test]
    fn hessians() {
        assert_eq!(hessian_curve(&hesse_cubic(&int(0))).unwrap(), form("216*z0*z1*z2"));
        let h = hessian_curve(&form("z0^3")).unwrap();
        assert!(h.is_zero());
        assert_eq!(h.degree(), 3);
        let h2 = hessian_curve(&hesse_cubic(&int(2))).unwrap();
        assert!(hesse_coefficients(&h2).is_some());
    }

    #[test]
    fn conic_singular_points() {
        assert_eq!(conic_singular_point(&form("z0*z1")).unwrap(), [0, 0, 1]);
        assert_eq!(conic_singular_point(&form("z0^2 + z1^2")).unwrap(), [0, 0, 1]);
        assert!(matches!(
            conic_singular_point(&form("z0^2 + z1^2 + z2^2")),
            Err(Error::ConicRank { rank: 3 })
        ));
        assert!(matches!(
            conic_singular_point(&form("z0^2")),
            Err(Error::ConicRank { rank: 1 })
        ));
        // (z0 - z1)(z0 + z1 - 2 z2) meets at [1:1:1]
        assert_eq!(conic_singular_point(&form("(z0 - z1)*(z0 + z1 - 2*z2)")).unwrap(), [1, 1, 1]);
    }

    #[test]
    fn smoothness() {
        let v = is_smooth_cubic(&hesse_cubic(&int(2)), 3, 0).unwrap();
        assert_eq!(v.status, SmoothnessStatus::Smooth);
        let v = is_smooth_cubic(&hesse_cubic(&int(1)), 3, 0).unwrap();
        assert_eq!(v.status, SmoothnessStatus::Singular);
        let nodal = form("z1^2*z2 - z0^2*(z0 + z2)");
        let v = is_smooth_cubic(&nodal, 3, 7).unwrap();
        assert_ne!(v.status, SmoothnessStatus::Smooth);
        // Smooth, not in the Hesse pencil.
        let v = is_smooth_cubic(&form("z1^2*z2 - z0^3 - z0*z2^2"), 3, 1).unwrap();
        assert_eq!(v.status, SmoothnessStatus::Smooth);
        let v = is_smooth_cubic(&form("z0^3 + 2*z1^3 - 5*z2^3"), 3, 1).unwrap();
        assert_eq!(v.status, SmoothnessStatus::Smooth);
    }

    #[test]
    fn j_invariants() {
        assert_eq!(j_invariant_hesse(&int(0)).unwrap(), int(0));
        assert_eq!(j_invariant_hesse(&int(-2)).unwrap(), int(0));
        assert_eq!(j_invariant_hesse(&int(2)).unwrap(), rat(512, 343));
        assert!(matches!(j_invariant_hesse(&int(1)), Err(Error::SingularCubic(_))));
    }
}
