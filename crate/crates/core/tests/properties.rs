use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use fakelens::best::{beta, beta_inv, coefficient_count, membership_a};
use fakelens::expr::Expr;
use fakelens::ring::{crt_reconstruct, element_f};
use fakelens::structure::{rho_bracket, t_to_polynomial, NormalInvariantVector};
use fakelens::valuation::{normal_form, w_l, w_l_normal_form, Valuation};
use fakelens::{IntPolynomial, RingElement, Sign};

fn element(max_level: u32) -> impl Strategy<Value = RingElement> {
    (1..=max_level).prop_flat_map(|level| {
        let n = (1usize << level) - 1;
        (prop::collection::vec(-6i64..=6, n), 0u32..4, 0u32..=3).prop_map(move |(raw, two, j)| {
            let g = RingElement::from_integers(level, &raw).unwrap();
            g.scale(&BigRational::new(BigInt::from(1 << two), BigInt::from(2)))
                .mul_one_minus_chi_pow(j)
        })
    })
}

fn pair(max_level: u32) -> impl Strategy<Value = (RingElement, RingElement)> {
    (1..=max_level).prop_flat_map(|level| {
        let n = (1usize << level) - 1;
        (
            prop::collection::vec(-6i64..=6, n),
            prop::collection::vec(-6i64..=6, n),
            -1i64..3,
        )
            .prop_map(move |(a, b, e)| {
                let scale = if e >= 0 {
                    BigRational::from_integer(BigInt::from(1 << e))
                } else {
                    BigRational::new(BigInt::from(1), BigInt::from(2))
                };
                (
                    RingElement::from_integers(level, &a).unwrap().scale(&scale),
                    RingElement::from_integers(level, &b).unwrap(),
                )
            })
    })
}

fn int_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-100i64..=100, 1..9).prop_map(|c| IntPolynomial::from_i64(&c))
}

proptest! {
    #[test]
    fn ring_axioms((a, b) in pair(4)) {
        let level = a.level();
        let c = &a - &b.scale_int(&BigInt::from(3));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &RingElement::one(level).unwrap(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn reduction_ignores_the_norm_element(raw in prop::collection::vec(-9i64..=9, 1..40), level in 1u32..=4) {
        let n = 1usize << level;
        let mut shifted = raw.clone();
        shifted.resize(shifted.len().max(n), 0);
        for c in shifted.iter_mut().take(n) {
            *c += 5;
        }
        prop_assert_eq!(
            RingElement::from_integers(level, &raw).unwrap(),
            RingElement::from_integers(level, &shifted).unwrap()
        );
    }

    #[test]
    fn inverse_when_it_exists(g in element(4)) {
        match g.invert() {
            Ok(inv) => prop_assert_eq!(&g * &inv, RingElement::one(g.level()).unwrap()),
            Err(_) => prop_assert!(g.projections().iter().any(|p| p.is_zero())),
        }
    }

    #[test]
    fn text_round_trip(g in element(4)) {
        let back: RingElement = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn crt_round_trip(g in element(5)) {
        prop_assert_eq!(crt_reconstruct(&g.projections()).unwrap(), g);
    }

    #[test]
    fn eigenspace_split(g in element(4)) {
        let conj = g.conjugate();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let plus = (&g + &conj).scale(&half);
        let minus = (&g - &conj).scale(&half);
        prop_assert_eq!(plus.conjugate(), plus.clone());
        prop_assert!(minus.in_eigenspace(Sign::Minus));
        prop_assert_eq!(&plus + &minus, g.clone());
        prop_assert_eq!(conj.conjugate(), g);
    }

    #[test]
    fn f_is_injective_on_the_minus_eigenspace(g in element(5)) {
        let z = &g - &g.conjugate();
        let f = element_f(g.level()).unwrap();
        prop_assert_eq!((&f * &z).is_zero(), z.is_zero());
    }

    #[test]
    fn valuation_rules((g, h) in pair(5)) {
        for l in 0..g.level() {
            let (wg, wh) = (w_l(&g, l).unwrap(), w_l(&h, l).unwrap());
            prop_assert_eq!(w_l(&(&g * &h), l).unwrap(), wg + wh);
            let ws = w_l(&(&g + &h), l).unwrap();
            prop_assert!(ws >= wg.min(wh));
            if wg != wh {
                prop_assert_eq!(ws, wg.min(wh));
            }
            prop_assert_eq!(w_l_normal_form(&g, l).unwrap(), wg);
        }
    }

    #[test]
    fn normal_form_reassembles(g in element(5)) {
        for p in g.projections() {
            if p.is_zero() {
                continue;
            }
            let nf = normal_form(&p).unwrap();
            prop_assert_eq!(nf.reassemble().unwrap(), p);
        }
    }

    #[test]
    fn valuation_text_round_trip(a in -20i64..20, level in 0u32..6, b in 0u64..64) {
        let v = Valuation::finite(a, b % (1 << level), level).unwrap();
        prop_assert_eq!(v.to_string().parse::<Valuation>().unwrap(), v);
    }

    #[test]
    fn beta_is_a_bijection(q in int_poly()) {
        let b = beta(&q).unwrap();
        prop_assert_eq!(b.degree(), q.degree());
        prop_assert_eq!(beta_inv(&b).unwrap(), q.clone());
        prop_assert_eq!(beta(&beta_inv(&q).unwrap()).unwrap(), q);
    }

    #[test]
    fn division_with_remainder(a in int_poly(), lead in prop::sample::select(vec![-1i64, 1]), tail in prop::collection::vec(-9i64..=9, 0..4)) {
        let mut c = tail;
        c.push(lead);
        let b = IntPolynomial::from_i64(&c);
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
    }

    #[test]
    fn chi_powers_multiply(level in 1u32..=4, a in 0u32..20, b in 0u32..20) {
        let lhs: Expr = format!("chi^{a} * chi^{b}").parse().unwrap();
        let rhs: Expr = format!("chi^{}", a + b).parse().unwrap();
        prop_assert_eq!(lhs.eval(level).unwrap(), rhs.eval(level).unwrap());
    }

    #[test]
    fn rho_bracket_is_additive(
        d in 5u32..=9,
        level in 1u32..=4,
        k in prop::sample::select(vec![1u64, 3, 5]),
        s in prop::collection::vec(0i64..64, 4),
        t in prop::collection::vec(0i64..64, 4),
    ) {
        let c = coefficient_count(d);
        let zeros = vec![0; c];
        let sum: Vec<i64> = s.iter().zip(&t).take(c).map(|(x, y)| x + y).collect();
        let a = NormalInvariantVector::new(d, level, &s[..c], &zeros).unwrap();
        let b = NormalInvariantVector::new(d, level, &t[..c], &zeros).unwrap();
        let ab = NormalInvariantVector::new(d, level, &sum, &zeros).unwrap();
        let ra = rho_bracket(&a, k).unwrap();
        let rb = rho_bracket(&b, k).unwrap();
        let rab = rho_bracket(&ab, k).unwrap();
        let diff = &rab - &(&ra + &rb);
        let m = 1i64 << level;
        if s.iter().zip(&t).take(c).all(|(x, y)| x % m + y % m < m) {
            prop_assert!(diff.is_zero());
        } else {
            // A wrap modulo 2^K changes the value by an element of 4 Z[chi].
            prop_assert!(diff.is_in_4z());
        }
    }

    #[test]
    fn lifts_do_not_change_the_coset(
        d in 5u32..=9,
        level in 1u32..=4,
        t in prop::collection::vec(0i64..16, 4),
        j in 0usize..4,
    ) {
        let c = coefficient_count(d);
        let t = NormalInvariantVector::new(d, level, &t[..c], &vec![0; c]).unwrap();
        let q = t_to_polynomial(&t);
        let shift = IntPolynomial::monomial(j % c, BigInt::from(1) << level as usize);
        prop_assert_eq!(
            membership_a(&q, level, 1, d, None).unwrap(),
            membership_a(&(&q + &shift), level, 1, d, None).unwrap()
        );
    }
}
