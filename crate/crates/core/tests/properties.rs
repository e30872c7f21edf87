use balfact_core::factor_search::{achievable_set, general_factor, MatrixCertificate};
use balfact_core::fields::poly::prime_power;
use balfact_core::scalar_factor::{balanced_factor, four_factor, odd_k_factor, rational_factor};
use balfact_core::{Budget, GaloisField, Gf, Matrix, MatrixIndex, Rational, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;

const ODD_FIELDS: [u64; 8] = [7, 11, 13, 17, 19, 23, 25, 49];

fn field(q: u64) -> GaloisField {
    let (p, m) = prime_power(q).unwrap();
    GaloisField::new(p, m).unwrap()
}

fn element(f: &GaloisField, seed: u64) -> Gf {
    f.element((seed % f.order()) as u32).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000)
        .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !Scalar::is_zero(r))
}

fn balanced<T: Scalar>(target: &T, factors: &[T]) -> bool {
    let product = factors.iter().fold(target.one_like(), |a, f| a * f.clone());
    let sum = factors
        .iter()
        .fold(target.zero_like(), |a, f| a + f.clone());
    product == *target && sum.is_zero()
}

proptest! {
    #[test]
    fn four_factor_rationals(x in rational()) {
        let r = four_factor(&x).unwrap();
        prop_assert!(r.certificate.is_valid());
        prop_assert!(balanced(&x, &r.certificate.factors));
    }

    #[test]
    fn scale_equivariance_rationals(x in rational(), y in nonzero_rational()) {
        let r = four_factor(&(x.clone() * y.pow_i(4).unwrap())).unwrap();
        let divided: Vec<Rational> = r.certificate.factors.iter().map(|f| f / &y).collect();
        prop_assert!(balanced(&x, &divided));
    }

    #[test]
    fn scale_equivariance_fields(qi in 0usize..ODD_FIELDS.len(), xs in any::<u64>(), ys in any::<u64>()) {
        let f = field(ODD_FIELDS[qi]);
        let x = element(&f, xs);
        let y = element(&f, ys);
        prop_assume!(!y.is_zero());
        let r = four_factor(&(&x * &y.pow(4).unwrap())).unwrap();
        let inv = y.inv().unwrap();
        let divided: Vec<Gf> = r.certificate.factors.iter().map(|f| f * &inv).collect();
        prop_assert!(balanced(&x, &divided));
        // and the library's own scaling moves certificates the other way
        let back = r.certificate.scaled(&inv).unwrap();
        prop_assert_eq!(back.target, x);
    }

    #[test]
    fn odd_formula_rationals(x in nonzero_rational(), n in 0usize..20) {
        let c = odd_k_factor(&x, 5 + 2 * n).unwrap();
        prop_assert!(c.is_valid() && c.nonpower);
    }

    #[test]
    fn rational_dispatch(x in rational(), k in 4usize..30) {
        let c = rational_factor(&x, k, false).unwrap();
        prop_assert!(c.is_valid());
        prop_assert_eq!(c.k, k);
    }

    #[test]
    fn field_dispatch(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]), seed in any::<u64>(), k in 2usize..9) {
        let f = field(q);
        let a = element(&f, seed);
        match balanced_factor(&a, k, false, &Budget::default()) {
            Ok(c) => prop_assert!(c.is_valid() && balanced(&a, &c.factors)),
            Err(e) => prop_assert!(matches!(e, balfact_core::FactorError::NotFound { proven: true }), "{}", e),
        }
    }

    #[test]
    fn field_laws(q in prop::sample::select(vec![2u64, 4, 8, 9, 27, 32, 49, 64, 81, 121, 125, 243, 256]),
                  a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field(q);
        let (a, b, c) = (element(&f, a), element(&f, b), element(&f, c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // Frobenius is additive
        let p = f.characteristic() as i64;
        prop_assert_eq!((&a + &b).pow(p).unwrap(), &a.pow(p).unwrap() + &b.pow(p).unwrap());
        if !a.is_zero() {
            prop_assert!(a.pow(q as i64 - 1).unwrap().is_one());
        }
    }

    #[test]
    fn conjugated_certificates(qi in 0usize..2, ti in any::<u64>(), pi in any::<u64>(), k in 2usize..5) {
        let f = field([2, 3][qi]);
        let total = f.order().pow(4);
        let a = Matrix::from_index(&f, 2, MatrixIndex(ti % total)).unwrap();
        let p = Matrix::from_index(&f, 2, MatrixIndex(pi % total)).unwrap();
        prop_assume!(p.is_invertible());
        let p_inv = p.inverse().unwrap();
        let conj = |x: &Matrix| p.mul(x).unwrap().mul(&p_inv).unwrap();
        match general_factor(&a, k, false, &Budget::default()) {
            Ok(cert) => {
                let moved = MatrixCertificate {
                    target: conj(&cert.target),
                    k,
                    factors: cert.factors.iter().map(conj).collect(),
                    commuting: false,
                    in_subalgebra: false,
                    method: cert.method,
                };
                prop_assert!(moved.is_valid());
            }
            Err(_) => {
                let set = achievable_set(&f, 2, k, false, &Budget::default()).unwrap();
                prop_assert!(!set.contains(&a) && !set.contains(&conj(&a)));
            }
        }
    }
}
