//! Sylvester resultants of ternary forms with respect to one variable.
//!
//! Both inputs are read as polynomials in the eliminated variable whose
//! coefficients are forms in the other two, with formal degree equal to the
//! total degree. The result is a form of degree `deg p * deg q` in the
//! remaining variables. It is computed by evaluating the Sylvester
//! determinant at `deg p * deg q + 1` points on an affine chart and
//! interpolating.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{Monomial, TernaryForm};
use crate::matrix::ExactMatrix;
use crate::rational::Rational;
use crate::univariate::UniPoly;

/// The Sylvester matrix of two univariate coefficient lists (lowest degree first).
pub fn sylvester_matrix(p: &[Rational], q: &[Rational]) -> ExactMatrix {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut s = ExactMatrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in p.iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in q.iter().rev().enumerate() {
            s[(n + i, i + k)] = c.clone();
        }
    }
    s
}

/// Coefficients of `f` as a polynomial in `z_var`, lowest power first, each
/// evaluated at the chart point `(z_a, z_b) = (1, y)`.
fn chart_coefficients(f: &TernaryForm, var: usize, others: [usize; 2], y: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); f.degree() as usize + 1];
    for (m, c) in f.terms() {
        let mut v = c.clone();
        for _ in 0..m.0[others[1]] {
            v *= y;
        }
        out[m.0[var] as usize] += v;
    }
    out
}

pub fn sylvester_resultant(p: &TernaryForm, q: &TernaryForm, var: usize) -> Result<TernaryForm> {
    assert!(var < 3, "variable index out of range");
    if p.space() != q.space() {
        return Err(Error::SpaceMismatch {
            expected: p.space().to_string(),
            got: q.space().to_string(),
        });
    }
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroInput("both resultant inputs are zero".into()));
    }
    let others = match var {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    let degree = p.degree() * q.degree();
    let samples: Vec<(Rational, Rational)> = (0..=degree)
        .map(|k| {
            let y = Rational::from_integer(k.into());
            let s = sylvester_matrix(
                &chart_coefficients(p, var, others, &y),
                &chart_coefficients(q, var, others, &y),
            );
            let det = s.determinant().expect("Sylvester matrix is square");
            (y, det)
        })
        .collect();
    let chart = UniPoly::interpolate(&samples);
    // y^k on the chart is z_a^(D-k) z_b^k.
    let terms = chart.coeffs().iter().enumerate().map(|(k, c)| {
        let mut e = [0u32; 3];
        e[others[0]] = degree - k as u32;
        e[others[1]] = k as u32;
        (Monomial(e), c.clone())
    });
    TernaryForm::from_terms(degree, p.space(), terms)
}

/// Resultant of two univariate polynomials (lowest degree first).
pub fn univariate_resultant(p: &UniPoly, q: &UniPoly) -> Result<Rational> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(Error::ZeroInput("both resultant inputs are zero".into())),
        (true, false) | (false, true) => Ok(Rational::zero()),
        _ => {
            if p.degree() == Some(0) && q.degree() == Some(0) {
                return Ok(Rational::one());
            }
            sylvester_matrix(p.coeffs(), q.coeffs()).determinant()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Space;
    use crate::parse::parse_form;
    use crate::rational::int;

    fn form(s: &str) -> TernaryForm {
        parse_form(s, Space::Primal).unwrap()
    }

    #[test]
    fn univariate_cases() {
        // Res(x^2 - 1, x - 1) = 0
        let r = univariate_resultant(&UniPoly::from_ints(&[-1, 0, 1]), &UniPoly::from_ints(&[-1, 1]));
        assert_eq!(r.unwrap(), int(0));
        // Res(x^2, x + c) = c^2
        for c in [-3, 2, 7] {
            let r = univariate_resultant(&UniPoly::from_ints(&[0, 0, 1]), &UniPoly::from_ints(&[c, 1]));
            assert_eq!(r.unwrap(), int(c * c));
        }
        assert!(univariate_resultant(&UniPoly::zero(), &UniPoly::zero()).is_err());
    }

    #[test]
    fn homogenized_univariate_cases() {
        // x -> z0, homogenizing with z1.
        let r = sylvester_resultant(&form("z0^2 - z1^2"), &form("z0 - z1"), 0).unwrap();
        assert!(r.is_zero());
        let r = sylvester_resultant(&form("z0^2"), &form("z0 + 5*z1"), 0).unwrap();
        assert_eq!(r, form("25*z1^2"));
    }

    #[test]
    fn formal_degree_is_total_degree() {
        let r = sylvester_resultant(&form("3*z0^2"), &form("3*z1^2"), 0).unwrap();
        assert_eq!(r, form("81*z1^4"));
        assert_eq!(r.degree(), 4);
    }

    #[test]
    fn both_zero_is_an_error() {
        let z = TernaryForm::zero(2, Space::Primal);
        assert!(matches!(sylvester_resultant(&z, &z, 1), Err(Error::ZeroInput(_))));
    }
}
