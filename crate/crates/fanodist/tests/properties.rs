use fanodist::distribution::{class_symbolic, class_via_rank, form_from_skew};
use fanodist::linalg::Matrix;
use fanodist::skew::SkewMatrix;
use fanodist::{Form, Monomial, Polynomial, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

const DIM: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(|n| Rational::from_integer(n.into()))
}

fn polynomial(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nvars), rational()), 0..4).prop_map(
        move |terms| {
            terms
                .into_iter()
                .fold(Polynomial::zero(nvars), |acc, (e, c)| {
                    &acc + &Polynomial::monomial(Monomial::from_exponents(e), c)
                })
        },
    )
}

fn form(degree: usize) -> impl Strategy<Value = Form> {
    let indices: Vec<Vec<usize>> = fanodist::skew::subsets(DIM, degree);
    let count = indices.len();
    prop::collection::vec(polynomial(DIM), count).prop_map(move |coeffs| {
        Form::from_terms(degree, DIM, DIM, indices.clone().into_iter().zip(coeffs)).unwrap()
    })
}

fn any_form() -> impl Strategy<Value = (usize, Form)> {
    (0usize..=DIM).prop_flat_map(|p| form(p).prop_map(move |f| (p, f)))
}

fn sign(p: usize) -> Rational {
    if p % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Equality up to the degree label carried by zero forms.
fn same(a: &Form, b: &Form) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

fn skew() -> impl Strategy<Value = SkewMatrix> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(rational(), n * (n - 1) / 2)
            .prop_map(move |upper| SkewMatrix::from_upper(n, &upper).unwrap())
    })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .prop_filter("invertible", |m| !m.determinant().unwrap().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_commutativity((p, a) in any_form(), (q, b) in any_form()) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap().scale(&sign(p * q));
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn d_squared_vanishes((_, a) in any_form()) {
        prop_assert!(a.exterior_d().exterior_d().is_zero());
    }

    #[test]
    fn leibniz_rule((p, a) in any_form(), (_, b) in any_form()) {
        let lhs = a.wedge(&b).unwrap().exterior_d();
        let rhs = a.exterior_d().wedge(&b).unwrap()
            .add(&a.wedge(&b.exterior_d()).unwrap().scale(&sign(p)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_contraction_squares_to_zero((_, a) in any_form()) {
        let w = [1, 1, 1];
        prop_assert!(a.contract_euler(&w).unwrap().contract_euler(&w).unwrap().is_zero());
    }

    #[test]
    fn euler_contraction_is_a_derivation((p, a) in any_form(), (_, b) in any_form()) {
        let w = [1, 2, 1];
        let lhs = a.wedge(&b).unwrap().contract_euler(&w).unwrap();
        let rhs = a.contract_euler(&w).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&b.contract_euler(&w).unwrap()).unwrap().scale(&sign(p)))
            .unwrap();
        prop_assert!(same(&lhs, &rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn pullback_is_functorial(
        (_, a) in any_form(),
        g in prop::collection::vec(polynomial(DIM), DIM),
        f in prop::collection::vec(polynomial(2), DIM),
    ) {
        let composite: Vec<Polynomial> = g.iter().map(|gi| gi.substitute(&f).unwrap()).collect();
        let lhs = a.pullback(&composite).unwrap();
        let rhs = a.pullback(&g).unwrap().pullback(&f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_commutes_with_d_and_wedge(
        (_, a) in any_form(),
        (_, b) in any_form(),
        f in prop::collection::vec(polynomial(2), DIM),
    ) {
        prop_assert_eq!(a.exterior_d().pullback(&f).unwrap(), a.pullback(&f).unwrap().exterior_d());
        let lhs = a.wedge(&b).unwrap().pullback(&f).unwrap();
        let rhs = a.pullback(&f).unwrap().wedge(&b.pullback(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pfaffian_squares_to_determinant(m in skew()) {
        let det = m.matrix().determinant().unwrap();
        match m.pfaffian() {
            Ok(pf) => prop_assert_eq!(&pf * &pf, det),
            Err(_) => prop_assert!(m.size() % 2 == 1 && det.is_zero()),
        }
    }

    #[test]
    fn pfaffian_under_congruence(
        (m, p) in (1usize..=3).prop_flat_map(|h| {
            let n = 2 * h;
            (prop::collection::vec(rational(), n * (n - 1) / 2)
                .prop_map(move |u| SkewMatrix::from_upper(n, &u).unwrap()),
             invertible(n))
        })
    ) {
        let lhs = m.congruence(&p).unwrap().pfaffian().unwrap();
        let rhs = p.determinant().unwrap() * m.pfaffian().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn class_is_a_congruence_invariant(
        (m, p) in (2usize..=5).prop_flat_map(|n| {
            (prop::collection::vec(rational(), n * (n - 1) / 2)
                .prop_map(move |u| SkewMatrix::from_upper(n, &u).unwrap())
                .prop_filter("nonzero", |m| !m.is_zero()),
             invertible(n))
        })
    ) {
        let q = m.congruence(&p).unwrap();
        prop_assert_eq!(class_via_rank(&q).unwrap().class_k, class_via_rank(&m).unwrap().class_k);
        let a = class_symbolic(&form_from_skew(&m)).unwrap().class();
        let b = class_symbolic(&form_from_skew(&q)).unwrap().class();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn text_round_trip((_, a) in any_form()) {
        let text = a.to_string();
        let back = fanodist::parse_form(&text, DIM).unwrap();
        if a.is_zero() {
            prop_assert!(back.is_zero());
        } else {
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn class_only_drops_on_the_grassmannian(
        upper in prop::collection::vec(rational(), 45).prop_filter("nonzero", |u| u.iter().any(|x| !x.is_zero()))
    ) {
        let m = SkewMatrix::from_upper(10, &upper).unwrap();
        let ambient = class_via_rank(&m).unwrap().class_k;
        let restricted = fanodist::grassmann::class_on_g14(&m).unwrap().class().unwrap();
        prop_assert!(restricted <= ambient.min(2));
        prop_assert_eq!(restricted == 0, ambient == 0);
    }
}
