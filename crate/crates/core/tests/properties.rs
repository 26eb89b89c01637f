use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use logtorelli::form::{BasisOrder, Monomial, Space, TernaryForm};
use logtorelli::geometry::{gram_matrix, hesse_cubic, is_smooth_cubic, SmoothnessStatus};
use logtorelli::logsheaf::{cayleyan_cubic, is_jumping_cubic, jumping_line_test};
use logtorelli::rational::{cube, int, Rational};
use logtorelli::{
    conic_singular_point, first_polar, hessian_curve, j_invariant_hesse, parse_form, sylvester_resultant,
    ExactMatrix, ProjectivePoint,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn form_of_degree(d: u32) -> impl Strategy<Value = TernaryForm> {
    let n = BasisOrder::dimension(d);
    prop::collection::vec(rational(), n).prop_map(move |coeffs| {
        TernaryForm::from_coefficients(&BasisOrder::new(d), Space::Primal, &coeffs).unwrap()
    })
}

fn cubic() -> impl Strategy<Value = TernaryForm> {
    form_of_degree(3)
}

fn smooth_hesse_t() -> impl Strategy<Value = Rational> {
    rational().prop_filter("t^3 != 1", |t| !cube(t).is_one())
}

fn matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        // Small entries with many zeros so that rank deficiency is common.
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], r * c).prop_map(move |v| {
            ExactMatrix::from_rows(v.chunks(c).map(|row| row.iter().map(|&x| int(x)).collect()).collect())
                .unwrap()
        })
    })
}

// Independent rank oracles.

fn det_by_minors(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    (0..n)
        .map(|j| {
            let sub: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * det_by_minors(&sub);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn rank_by_minors(m: &ExactMatrix) -> usize {
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let sub: Vec<Vec<Rational>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
                if !det_by_minors(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn rank_by_fractions(m: &ExactMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            let factor = &a[i][c] / &a[rank][c];
            for j in c..m.cols() {
                let delta = &factor * &a[rank][j];
                a[i][j] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Symbolic Laplace expansion over forms.
fn det_forms(m: &[Vec<TernaryForm>], degree: u32) -> TernaryForm {
    let n = m.len();
    if n == 0 {
        return TernaryForm::constant(Rational::one(), Space::Primal);
    }
    let mut acc = TernaryForm::zero(degree, Space::Primal);
    for j in 0..n {
        let sub: Vec<Vec<TernaryForm>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &det_forms(&sub, degree);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Sylvester matrix with form entries, eliminating z0.
fn symbolic_resultant_z0(p: &TernaryForm, q: &TernaryForm) -> TernaryForm {
    let coeffs = |f: &TernaryForm| -> Vec<TernaryForm> {
        (0..=f.degree())
            .rev()
            .map(|k| {
                let terms = f
                    .terms()
                    .filter(|(m, _)| m.0[0] == k)
                    .map(|(m, c)| (Monomial([0, m.0[1], m.0[2]]), c.clone()));
                TernaryForm::from_terms(f.degree() - k, Space::Primal, terms).unwrap()
            })
            .collect()
    };
    let (pc, qc) = (coeffs(p), coeffs(q));
    let (m, n) = (p.degree() as usize, q.degree() as usize);
    let size = m + n;
    let zero = TernaryForm::zero(0, Space::Primal);
    let mut rows = vec![vec![zero; size]; size];
    for i in 0..n {
        for (k, c) in pc.iter().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in qc.iter().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    det_forms(&rows, p.degree() * q.degree())
}

fn linear(a: &[Rational; 3]) -> TernaryForm {
    TernaryForm::from_terms(1, Space::Primal, (0..3).map(|i| (Monomial::var(i), a[i].clone()))).unwrap()
}

fn cayleyan_closed_form(t: &Rational, a: &[Rational; 3]) -> Rational {
    t * (cube(&a[0]) + cube(&a[1]) + cube(&a[2])) - (cube(t) + int(2)) * &a[0] * &a[1] * &a[2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(f in form_of_degree(2), g in form_of_degree(2), h in form_of_degree(1)) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        let prod = &f * &h;
        prop_assert_eq!(prod.degree(), 3);
    }

    #[test]
    fn partials_commute(f in form_of_degree(4), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(f.partial(i).partial(j), f.partial(j).partial(i));
    }

    #[test]
    fn euler_identity(f in form_of_degree(4)) {
        let euler = (0..3).fold(TernaryForm::zero(4, Space::Primal), |acc, i| {
            &acc + &(&TernaryForm::var(i, Space::Primal) * &f.partial(i))
        });
        prop_assert_eq!(euler, f.scale(&int(4)));
    }

    #[test]
    fn coefficient_vector_round_trip(f in cubic()) {
        let b = BasisOrder::new(3);
        let v = f.coefficient_vector(&b).unwrap();
        prop_assert_eq!(TernaryForm::from_coefficients(&b, Space::Primal, &v).unwrap(), f);
    }

    #[test]
    fn canonical_text_round_trip(f in cubic()) {
        prop_assert_eq!(parse_form(&f.to_string(), Space::Primal).unwrap(), f);
    }

    #[test]
    fn rank_agrees_with_oracles(m in matrix(6)) {
        let r = m.rank();
        prop_assert_eq!(r, rank_by_fractions(&m));
        prop_assert_eq!(r, rank_by_minors(&m));
        prop_assert!(r <= m.rows().min(m.cols()));
        prop_assert_eq!(r, m.transpose().rank());
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(m.kernel_basis().len(), m.cols() - r);
        if m.rows() == m.cols() {
            let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
            prop_assert_eq!(m.determinant().unwrap(), det_by_minors(&rows));
        }
    }

    #[test]
    fn resultant_matches_symbolic_sylvester(p in form_of_degree(2), q in form_of_degree(2)) {
        prop_assume!(!(p.is_zero() && q.is_zero()));
        prop_assert_eq!(sylvester_resultant(&p, &q, 0).unwrap(), symbolic_resultant_z0(&p, &q));
    }

    #[test]
    fn first_polar_is_linear(f in cubic(),
                             a in prop::array::uniform3(-5i64..=5),
                             b in prop::array::uniform3(-5i64..=5)) {
        let sum = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
        prop_assume!(a != [0; 3] && b != [0; 3] && sum != [0; 3]);
        let pa = first_polar(&f, &ProjectivePoint::from_ints(a).unwrap()).unwrap();
        let pb = first_polar(&f, &ProjectivePoint::from_ints(b).unwrap()).unwrap();
        let ps = first_polar(&f, &ProjectivePoint::from_ints(sum).unwrap()).unwrap();
        prop_assert_eq!(ps, &pa + &pb);
    }

    #[test]
    fn hessian_of_hesse_member_stays_in_pencil(t in smooth_hesse_t()) {
        let h = hessian_curve(&hesse_cubic(&t)).unwrap();
        prop_assert!(!h.is_zero());
        let cubes = [Monomial([3, 0, 0]), Monomial([0, 3, 0]), Monomial([0, 0, 3])];
        for (m, _) in h.terms() {
            prop_assert!(cubes.contains(m) || *m == Monomial([1, 1, 1]));
        }
        prop_assert_eq!(h.coeff(&cubes[0]), h.coeff(&cubes[1]));
        prop_assert_eq!(h.coeff(&cubes[1]), h.coeff(&cubes[2]));
    }

    #[test]
    fn j_depends_on_t_cubed_only(t in smooth_hesse_t()) {
        let u = cube(&t);
        let expected = &u * cube(&(&u + int(8))) / (int(64) * cube(&(&u - int(1))));
        prop_assert_eq!(j_invariant_hesse(&t).unwrap(), expected);
    }

    #[test]
    fn conic_singular_point_is_in_kernel(l1 in prop::array::uniform3(-4i64..=4),
                                        l2 in prop::array::uniform3(-4i64..=4)) {
        let q = &linear(&l1.map(int)) * &linear(&l2.map(int));
        let g = gram_matrix(&q).unwrap();
        prop_assume!(g.rank() == 2);
        let p = conic_singular_point(&q).unwrap();
        prop_assert!(g.mul_vec(p.coords()).unwrap().iter().all(Zero::is_zero));
        prop_assert!(q.eval(p.coords()).is_zero());
    }

    #[test]
    fn singular_cubics_never_certified_smooth(quad in form_of_degree(2),
                                              cub in form_of_degree(3),
                                              shift in prop::array::uniform3(-3i64..=3),
                                              seed in any::<u64>()) {
        // z2 * Q(z0, z1) + C(z0, z1) is singular at [0:0:1]; then move that point.
        let keep01 = |f: &TernaryForm| {
            let terms = f.terms().filter(|(m, _)| m.0[2] == 0).map(|(m, c)| (*m, c.clone()));
            TernaryForm::from_terms(f.degree(), Space::Primal, terms).unwrap()
        };
        let f0 = &(&TernaryForm::var(2, Space::Primal) * &keep01(&quad)) + &keep01(&cub);
        prop_assume!(!f0.is_zero());
        let z = |i| TernaryForm::var(i, Space::Primal);
        let images = [
            &z(0) + &z(2).scale(&int(shift[0])),
            &z(1) + &z(2).scale(&int(shift[1])),
            z(2),
        ];
        let f = f0.substitute(&images);
        let singular_point = [int(-shift[0]), int(-shift[1]), int(1)];
        for i in 0..3 {
            prop_assert!(f.partial(i).eval(&singular_point).is_zero());
        }
        let verdict = is_smooth_cubic(&f, 3, seed).unwrap();
        prop_assert_ne!(verdict.status, SmoothnessStatus::Smooth);
    }

    #[test]
    fn jumping_lines_are_the_cayleyan(t in smooth_hesse_t(),
                                      a in prop::array::uniform3(rational()),
                                      on_curve in any::<bool>(),
                                      perm in 0usize..3) {
        let alpha = if on_curve {
            // (x, -x, 0) and its permutations lie on every Hesse Cayleyan.
            let mut v = [int(1), int(-1), int(0)];
            v.rotate_left(perm);
            v
        } else {
            a
        };
        prop_assume!(alpha.iter().any(|x| !x.is_zero()));
        let f = hesse_cubic(&t);
        let jumping = jumping_line_test(&f, &linear(&alpha)).unwrap();
        prop_assert_eq!(jumping, cayleyan_closed_form(&t, &alpha).is_zero());
        let c = cayleyan_cubic(&f).unwrap();
        prop_assert_eq!(c.degree(), 3);
        prop_assert_eq!(jumping, c.eval(&alpha).is_zero());
    }

    #[test]
    fn ideal_generators_are_jumping_cubics(t in smooth_hesse_t(), i in 0usize..3, j in 0usize..3) {
        let f = hesse_cubic(&t);
        let g = &TernaryForm::var(i, Space::Primal) * &f.partial(j);
        prop_assert!(is_jumping_cubic(&f, &g).unwrap());
    }
}
