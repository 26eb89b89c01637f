//! Recovering a Hesse cubic from its two sheaf invariants: the Cayleyan
//! (jumping-line) cubic and the jumping-cubic hyperplane `J(f)_3`.
//!
//! A Cayleyan in Hesse form is `c (a0^3 + a1^3 + a2^3) - 3 s c a0 a1 a2`.
//! Every source parameter `x` with `(x^3 + 2) / (3x) = s`, i.e. every root of
//! `x^3 - 3 s x + 2`, produces the same Cayleyan; the hyperplane singles out
//! the true one. When `j = 0` the Cayleyan degenerates into three lines and
//! reconstruction is refused.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{Space, TernaryForm};
use crate::geometry::{hesse_coefficients, hesse_cubic, HesseCubic};
use crate::logsheaf::{cayleyan_cubic, jacobi_degree3, HyperplaneNormal};
use crate::rational::{cube, format_rational, int, Rational};
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafInvariants {
    pub cayleyan: TernaryForm,
    pub hyperplane: HyperplaneNormal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    /// Distinct rational candidates, increasing.
    #[serde(serialize_with = "ser_rationals")]
    pub exact_roots: Vec<Rational>,
    /// Remaining factor of `x^3 - 3 s x + 2`; it has no rational roots.
    #[serde(serialize_with = "ser_unipoly")]
    pub residual: UniPoly,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

fn ser_unipoly<S: serde::Serializer>(p: &UniPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(format_rational))
}

/// `s = (t^3 + 2) / (3t)`, the Hesse parameter of the Cayleyan of `f_t`.
pub fn cayleyan_hesse_param(t: &Rational) -> Result<Rational> {
    if t.is_zero() {
        return Err(Error::DegenerateCayleyan(
            "t = 0: the Cayleyan is a0 a1 a2 = 0 and has no finite Hesse parameter".into(),
        ));
    }
    let t3 = cube(t);
    if t3.is_one() {
        return Err(Error::SingularCubic(format!("t^3 = 1 for t = {}", format_rational(t))));
    }
    Ok((t3 + int(2)) / (int(3) * t))
}

/// The closed-form Cayleyan `t (a0^3 + a1^3 + a2^3) - (t^3 + 2) a0 a1 a2`.
pub fn hesse_cayleyan_closed_form(t: &Rational) -> TernaryForm {
    let pure = hesse_cubic(&Rational::zero()).with_space(Space::Dual).scale(t);
    let product = crate::parse::parse_form("a0*a1*a2", Space::Dual)
        .expect("literal")
        .scale(&(cube(t) + int(2)));
    &pure - &product
}

pub fn forward_invariants(t: &Rational) -> Result<SheafInvariants> {
    if !HesseCubic::new(t.clone()).is_smooth() {
        return Err(Error::SingularCubic(format!("t^3 = 1 for t = {}", format_rational(t))));
    }
    let f = hesse_cubic(t);
    Ok(SheafInvariants {
        cayleyan: cayleyan_cubic(&f)?,
        hyperplane: jacobi_degree3(&f)?,
    })
}

/// Rational roots of `x^3 - 3 s x + 2`, the remainder left factored.
pub fn reconstruct_candidates(s: &Rational) -> CandidateSet {
    let p = UniPoly::new(vec![int(2), -int(3) * s, Rational::zero(), Rational::one()]);
    let (exact_roots, residual) = p.split_rational_roots();
    CandidateSet {
        exact_roots,
        residual,
    }
}

/// Reads the Hesse parameter `s` off a Cayleyan presented in Hesse form.
pub fn cayleyan_parameter(cayleyan: &TernaryForm) -> Result<Rational> {
    if cayleyan.space() != Space::Dual || cayleyan.degree() != 3 {
        return Err(Error::NotHessePencil(format!(
            "expected a dual cubic, got a {} form of degree {}",
            cayleyan.space(),
            cayleyan.degree()
        )));
    }
    let (pure, product) = hesse_coefficients(cayleyan).ok_or_else(|| {
        Error::NotHessePencil(format!("{cayleyan} is not of the form c*(a0^3+a1^3+a2^3) + m*a0*a1*a2"))
    })?;
    if pure.is_zero() {
        if product.is_zero() {
            return Err(Error::ZeroInput("zero Cayleyan".into()));
        }
        return Err(Error::CayleyanSingular(
            "the Cayleyan is the triangle a0 a1 a2 = 0 (j = 0)".into(),
        ));
    }
    Ok(-product / (int(3) * pure))
}

/// Recovers `t` from the invariants of `f_t`.
pub fn reconstruct(inv: &SheafInvariants) -> Result<Rational> {
    let s = cayleyan_parameter(&inv.cayleyan)?;
    if cube(&s).is_one() {
        return Err(Error::CayleyanSingular(format!(
            "Cayleyan parameter s = {} has s^3 = 1 (j = 0)",
            format_rational(&s)
        )));
    }
    let candidates = reconstruct_candidates(&s);
    let mut matches = candidates
        .exact_roots
        .iter()
        .filter(|x| inv.hyperplane.projectively_equal(&HyperplaneNormal::hesse(x)));
    match (matches.next(), matches.next()) {
        (Some(t), None) => Ok(t.clone()),
        (Some(_), Some(_)) => unreachable!("distinct candidates have distinct hyperplanes"),
        (None, _) => Err(Error::NoCandidateMatch(format!(
            "hyperplane {} matches none of the rational candidates {:?} for s = {}",
            inv.hyperplane,
            candidates.exact_roots.iter().map(format_rational).collect::<Vec<_>>(),
            format_rational(&s)
        ))),
    }
}

/// Whether `a z0^3 + b z1^3 + c z2^3` has the triangle Cayleyan and the
/// `a_012`-only hyperplane, i.e. invariants independent of `(a, b, c)`.
pub fn counterexample_check(a: &Rational, b: &Rational, c: &Rational) -> Result<bool> {
    let inv = diagonal_invariants(a, b, c)?;
    let triangle = crate::parse::parse_form("a0*a1*a2", Space::Dual).expect("literal");
    Ok(inv.cayleyan.projectively_equal(&triangle) && inv.hyperplane == HyperplaneNormal::hesse(&Rational::zero()))
}

pub fn diagonal_cubic(a: &Rational, b: &Rational, c: &Rational) -> Result<TernaryForm> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::InvalidArgument("a, b and c must all be nonzero".into()));
    }
    let terms = [([3, 0, 0], a), ([0, 3, 0], b), ([0, 0, 3], c)]
        .map(|(e, v)| (crate::form::Monomial(e), v.clone()));
    TernaryForm::from_terms(3, Space::Primal, terms)
}

pub fn diagonal_invariants(a: &Rational, b: &Rational, c: &Rational) -> Result<SheafInvariants> {
    let f = diagonal_cubic(a, b, c)?;
    Ok(SheafInvariants {
        cayleyan: cayleyan_cubic(&f)?,
        hyperplane: jacobi_degree3(&f)?,
    })
}

/// Both sides of `(t^3 + 2)^3 - (3t)^3 = (t^3 - 1)^2 (t^3 + 8)` as polynomials in `t`.
pub fn cayleyan_discriminant_identity() -> (UniPoly, UniPoly) {
    let t = UniPoly::x();
    let t3 = t.pow(3);
    let two = UniPoly::constant(int(2));
    let lhs = &(&t3 + &two).pow(3) - &t.scale(&int(3)).pow(3);
    let rhs = &(&t3 - &UniPoly::constant(int(1))).pow(2) * &(&t3 + &UniPoly::constant(int(8)));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn discriminant_identity() {
        let (lhs, rhs) = cayleyan_discriminant_identity();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.degree(), Some(9));
    }

    #[test]
    fn hesse_params() {
        assert_eq!(cayleyan_hesse_param(&int(2)).unwrap(), rat(5, 3));
        assert_eq!(cayleyan_hesse_param(&int(-2)).unwrap(), int(1));
        assert!(matches!(cayleyan_hesse_param(&int(0)), Err(Error::DegenerateCayleyan(_))));
        assert!(matches!(cayleyan_hesse_param(&int(1)), Err(Error::SingularCubic(_))));
    }

    #[test]
    fn candidates() {
        let c = reconstruct_candidates(&rat(5, 3));
        assert_eq!(c.exact_roots, vec![int(2)]);
        assert_eq!(c.residual, UniPoly::from_ints(&[-1, 2, 1]));
        let c = reconstruct_candidates(&int(1));
        assert_eq!(c.exact_roots, vec![int(-2), int(1)]);
        let c = reconstruct_candidates(&int(0));
        assert!(c.exact_roots.is_empty());
        assert_eq!(c.residual, UniPoly::from_ints(&[2, 0, 0, 1]));
    }

    #[test]
    fn forward() {
        let inv = forward_invariants(&int(2)).unwrap();
        assert!(inv.cayleyan.projectively_equal(&hesse_cayleyan_closed_form(&int(2))));
        assert_eq!(inv.hyperplane, HyperplaneNormal::hesse(&int(2)));
        let inv0 = forward_invariants(&int(0)).unwrap();
        let triangle = crate::parse::parse_form("a0*a1*a2", Space::Dual).unwrap();
        assert!(inv0.cayleyan.projectively_equal(&triangle));
        assert!(matches!(forward_invariants(&int(1)), Err(Error::SingularCubic(_))));
    }

    #[test]
    fn round_trips() {
        for t in [int(2), rat(1, 2), int(-3), rat(-7, 4)] {
            assert_eq!(reconstruct(&forward_invariants(&t).unwrap()).unwrap(), t);
        }
    }

    #[test]
    fn j_zero_is_refused() {
        for t in [int(0), int(-2)] {
            let inv = forward_invariants(&t).unwrap();
            assert!(matches!(reconstruct(&inv), Err(Error::CayleyanSingular(_))));
        }
    }

    #[test]
    fn inconsistent_and_non_hesse_inputs() {
        let inv = SheafInvariants {
            cayleyan: forward_invariants(&int(2)).unwrap().cayleyan,
            hyperplane: HyperplaneNormal::hesse(&int(3)),
        };
        assert!(matches!(reconstruct(&inv), Err(Error::NoCandidateMatch(_))));
        let inv = SheafInvariants {
            cayleyan: crate::parse::parse_form("a0^3 + a1^2*a2", Space::Dual).unwrap(),
            hyperplane: HyperplaneNormal::hesse(&int(3)),
        };
        assert!(matches!(reconstruct(&inv), Err(Error::NotHessePencil(_))));
    }

    #[test]
    fn diagonal_family() {
        assert!(counterexample_check(&int(1), &int(1), &int(1)).unwrap());
        assert!(counterexample_check(&int(2), &int(3), &int(-5)).unwrap());
        assert!(counterexample_check(&rat(7, 3), &int(1), &int(1)).unwrap());
        assert!(counterexample_check(&int(0), &int(1), &int(1)).is_err());
        let inv = diagonal_invariants(&int(2), &int(3), &int(-5)).unwrap();
        assert!(matches!(reconstruct(&inv), Err(Error::CayleyanSingular(_))));
    }
}
