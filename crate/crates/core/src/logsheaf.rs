//! Cohomological computations for the sheaf of logarithmic vector fields
//! along a plane cubic `f`, all reduced to exact linear algebra on graded
//! pieces of the polynomial ring.
//!
//! * A line `{alpha = 0}` is a jumping line iff `z0 alpha, z1 alpha, z2 alpha,
//!   d0f, d1f, d2f` are linearly dependent in degree 2 ([`jumping_matrix`]).
//! * The locus of jumping lines is the determinant of that matrix with
//!   `alpha` symbolic ([`cayleyan_cubic`]).
//! * `H^0` of the restriction to a cubic `{g = 0}` is nonzero iff `g` lies in
//!   the hyperplane `J(f)_3` ([`jacobi_degree3`], [`is_jumping_cubic`]).

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{BasisOrder, Monomial, Space, TernaryForm};
use crate::geometry::{det3, is_smooth_cubic, DEFAULT_SMOOTHNESS_RETRIES};
use crate::matrix::ExactMatrix;
use crate::rational::{format_rational, Rational};

/// Splitting type `(a, b)` of the restriction to a line, `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplittingType(pub i32, pub i32);

impl SplittingType {
    pub const GENERIC: SplittingType = SplittingType(0, 0);
    pub const JUMPING: SplittingType = SplittingType(-1, 1);

    /// `h^0` of the restriction: `O(a) + O(b)` on a line.
    pub fn h0(&self) -> i32 {
        (self.0 + 1).max(0) + (self.1 + 1).max(0)
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}) + O({})", self.0, self.1)
    }
}

/// Normal vector of a hyperplane in the space of cubics, indexed by the
/// degree-3 basis. The coordinate on `z_i z_j z_k` (`i <= j <= k`) is the
/// `a_ijk` coordinate of `g = sum a_ijk z_i z_j z_k`, so the pairing with a
/// cubic is the plain dot product with its coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneNormal(Vec<Rational>);

impl HyperplaneNormal {
    const PRODUCT_INDEX: usize = 4;

    /// Canonical representative: the `a_012` entry is scaled to 1 when it is
    /// nonzero, otherwise the first nonzero entry.
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != 10 {
            return Err(Error::Dimension(format!(
                "hyperplane normal needs 10 entries, got {}",
                entries.len()
            )));
        }
        let pivot = if !entries[Self::PRODUCT_INDEX].is_zero() {
            entries[Self::PRODUCT_INDEX].clone()
        } else {
            entries
                .iter()
                .find(|x| !x.is_zero())
                .cloned()
                .ok_or_else(|| Error::ZeroInput("zero hyperplane normal".into()))?
        };
        let inv = pivot.recip();
        Ok(HyperplaneNormal(entries.into_iter().map(|x| x * &inv).collect()))
    }

    /// The normal `a_012 + t (a_000 + a_111 + a_222)` of `J(f_t)_3`.
    pub fn hesse(t: &Rational) -> Self {
        let basis = BasisOrder::new(3);
        let entries = basis
            .monomials()
            .iter()
            .map(|m| match m.0 {
                [1, 1, 1] => Rational::one(),
                [3, 0, 0] | [0, 3, 0] | [0, 0, 3] => t.clone(),
                _ => Rational::zero(),
            })
            .collect();
        Self::new(entries).expect("ten entries")
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    /// Entry for the monomial `z_i z_j z_k`.
    pub fn get(&self, indices: [usize; 3]) -> Rational {
        let mut e = [0u32; 3];
        for i in indices {
            e[i] += 1;
        }
        let idx = BasisOrder::new(3).index_of(&Monomial(e)).expect("cubic monomial");
        self.0[idx].clone()
    }

    pub fn pair(&self, g: &TernaryForm) -> Result<Rational> {
        let v = g.coefficient_vector(&BasisOrder::new(3))?;
        Ok(self.0.iter().zip(&v).map(|(a, b)| a * b).sum())
    }

    pub fn projectively_equal(&self, other: &HyperplaneNormal) -> bool {
        // Canonical scaling makes projective equality plain equality.
        self == other
    }
}

impl fmt::Display for HyperplaneNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", s.join(", "))
    }
}

/// Chern data of the twist `F(k)` for a curve of degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub c1: i64,
    pub c2: i64,
    pub d: i64,
    pub k: i64,
}

pub fn chern_data(d: i64, k: i64) -> Result<ChernData> {
    if d < 1 {
        return Err(Error::InvalidArgument(format!("curve degree must be positive, got {d}")));
    }
    Ok(ChernData {
        c1: 3 - d + 2 * k,
        c2: d * d - 3 * d + 3 + k * k + (3 - d) * k,
        d,
        k,
    })
}

/// The twist bringing `c1` into `{0, -1}`.
pub fn normalizing_twist(d: i64) -> i64 {
    (d - 3).div_euclid(2)
}

fn check_cubic(f: &TernaryForm) -> Result<()> {
    if f.degree() != 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            got: f.degree(),
        });
    }
    if f.space() != Space::Primal {
        return Err(Error::SpaceMismatch {
            expected: Space::Primal.to_string(),
            got: f.space().to_string(),
        });
    }
    Ok(())
}

fn check_linear(alpha: &TernaryForm) -> Result<()> {
    if alpha.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: alpha.degree(),
        });
    }
    if alpha.is_zero() {
        return Err(Error::ZeroInput("alpha must be a nonzero linear form".into()));
    }
    Ok(())
}

/// 6x6 matrix with columns `z0 alpha, z1 alpha, z2 alpha, d0f, d1f, d2f` in
/// the degree-2 basis.
pub fn jumping_matrix(f: &TernaryForm, alpha: &TernaryForm) -> Result<ExactMatrix> {
    check_cubic(f)?;
    check_linear(alpha)?;
    let alpha = alpha.clone().with_space(Space::Primal);
    let b2 = BasisOrder::new(2);
    let mut cols = Vec::with_capacity(6);
    for j in 0..3 {
        cols.push((&TernaryForm::var(j, Space::Primal) * &alpha).coefficient_vector(&b2)?);
    }
    for i in 0..3 {
        cols.push(f.partial(i).coefficient_vector(&b2)?);
    }
    ExactMatrix::from_columns(&cols)
}

pub fn jumping_line_rank(f: &TernaryForm, alpha: &TernaryForm) -> Result<usize> {
    Ok(jumping_matrix(f, alpha)?.rank())
}

pub fn jumping_line_test(f: &TernaryForm, alpha: &TernaryForm) -> Result<bool> {
    Ok(jumping_line_rank(f, alpha)? < 6)
}

pub fn splitting_type(f: &TernaryForm, alpha: &TernaryForm) -> Result<SplittingType> {
    Ok(if jumping_line_test(f, alpha)? {
        SplittingType::JUMPING
    } else {
        SplittingType::GENERIC
    })
}

/// The jumping-line locus as a cubic in the dual coordinates `a0, a1, a2`.
///
/// This is `det` of [`jumping_matrix`] with `alpha = a0 z0 + a1 z1 + a2 z2`
/// symbolic, expanded by generalized Laplace expansion along the three
/// constant columns. The sign follows the column order of [`jumping_matrix`].
pub fn cayleyan_cubic(f: &TernaryForm) -> Result<TernaryForm> {
    check_cubic(f)?;
    let b2 = BasisOrder::new(2);
    // Symbolic columns: entry (row m, column j) = sum_i a_i [z_j z_i = m].
    let symbolic: Vec<Vec<TernaryForm>> = b2
        .monomials()
        .iter()
        .map(|m| {
            (0..3)
                .map(|j| {
                    (0..3).fold(TernaryForm::zero(1, Space::Dual), |acc, i| {
                        if Monomial::var(j).mul(&Monomial::var(i)) == *m {
                            &acc + &TernaryForm::var(i, Space::Dual)
                        } else {
                            acc
                        }
                    })
                })
                .collect()
        })
        .collect();
    let constant = ExactMatrix::from_columns(
        &(0..3)
            .map(|i| f.partial(i).coefficient_vector(&b2))
            .collect::<Result<Vec<_>>>()?,
    )?;

    let mut det = TernaryForm::zero(3, Space::Dual);
    for rows in row_triples(6) {
        let rest: Vec<usize> = (0..6).filter(|r| !rows.contains(r)).collect();
        let minor = ExactMatrix::from_rows(
            rest.iter().map(|&r| constant.row(r).to_vec()).collect(),
        )?
        .determinant()?;
        if minor.is_zero() {
            continue;
        }
        let sym: Vec<Vec<TernaryForm>> = rows.iter().map(|&r| symbolic[r].clone()).collect();
        // (-1)^(sum of 1-based row indices + 1 + 2 + 3)
        let parity = rows.iter().map(|r| r + 1).sum::<usize>() % 2;
        let sign = if parity == 0 { minor } else { -minor };
        det = &det + &det3(&sym).scale(&sign);
    }
    if det.is_zero() {
        return Err(Error::DegenerateCayleyan(
            "jumping determinant vanishes identically; the cubic is not smooth".into(),
        ));
    }
    Ok(det)
}

fn row_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Matrix of `(g_0, g_1, g_2) -> sum g_i d_i f` from `(Sym^{k+1})^3` to
/// `Sym^{k+3}`; column `(i, m)` is the image of `m` placed in slot `i`.
pub fn syzygy_matrix(f: &TernaryForm, k: u32) -> Result<ExactMatrix> {
    check_cubic(f)?;
    let src = BasisOrder::new(k + 1);
    let dst = BasisOrder::new(k + 3);
    let mut cols = Vec::with_capacity(3 * src.len());
    for i in 0..3 {
        let d = f.partial(i);
        for m in src.monomials() {
            let mono = TernaryForm::monomial(*m, Rational::one(), Space::Primal);
            cols.push((&mono * &d).coefficient_vector(&dst)?);
        }
    }
    ExactMatrix::from_columns(&cols)
}

/// Dimension of the degree-`k` piece of the module of derivations
/// annihilating `f`, i.e. the kernel of [`syzygy_matrix`].
pub fn d0_graded_dim(f: &TernaryForm, k: u32) -> Result<usize> {
    let m = syzygy_matrix(f, k)?;
    Ok(m.cols() - m.rank())
}

/// The hyperplane `J(f)_3` of cubics in the Jacobi ideal, as its normal.
pub fn jacobi_degree3(f: &TernaryForm) -> Result<HyperplaneNormal> {
    let m = syzygy_matrix(f, 0)?;
    let rank = m.rank();
    if rank < 9 {
        return Err(Error::SingularCubic(format!(
            "the map (V*)^3 -> Sym^3 V* has rank {rank} < 9"
        )));
    }
    let mut left = m.transpose().kernel_basis();
    debug_assert_eq!(left.len(), 1);
    HyperplaneNormal::new(left.pop().expect("one-dimensional cokernel"))
}

pub fn is_jumping_cubic(f: &TernaryForm, g: &TernaryForm) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroInput("g must be a nonzero cubic".into()));
    }
    let normal = jacobi_degree3(f)?;
    Ok(normal.pair(g)?.is_zero())
}

/// Stability of the (already normalized, for cubics) logarithmic sheaf: no
/// global sections, i.e. `d0_graded_dim(f, 0) == 0`. Only decided for smooth
/// cubics; otherwise the kernel dimension is reported in the error.
pub fn is_stable(f: &TernaryForm) -> Result<bool> {
    let kernel_dim = d0_graded_dim(f, 0)?;
    let verdict = is_smooth_cubic(f, DEFAULT_SMOOTHNESS_RETRIES, 0)?;
    if !verdict.is_smooth() {
        return Err(Error::OutsideHypothesis { kernel_dim });
    }
    Ok(kernel_dim == 0)
}
