use gcurve_core::linalg::{rat, CycloField, Cyclotomic, RatMatrix};
use proptest::prelude::*;

fn element(conductor: u32, coeffs: &[i64]) -> Cyclotomic {
    let field = CycloField::new(conductor);
    coeffs
        .iter()
        .enumerate()
        .fold(Cyclotomic::zero(&field), |acc, (j, &c)| acc + Cyclotomic::zeta_power(&field, j as i64).scale(&rat(c, 1 + j as i64 % 3)))
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12, 15])
}

proptest! {
    #[test]
    fn ring_axioms(n in conductor(), a in prop::collection::vec(-4i64..5, 0..6), b in prop::collection::vec(-4i64..5, 0..6), c in prop::collection::vec(-4i64..5, 0..6)) {
        let (x, y, z) = (element(n, &a), element(n, &b), element(n, &c));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn galois_action_is_a_field_automorphism(n in conductor(), a in prop::collection::vec(-4i64..5, 0..6), b in prop::collection::vec(-4i64..5, 0..6), k in 1i64..40) {
        let (x, y) = (element(n, &a), element(n, &b));
        match (x.galois(k), y.galois(k), (&x * &y).galois(k)) {
            (Ok(gx), Ok(gy), Ok(gxy)) => {
                prop_assert_eq!(&gx * &gy, gxy);
                prop_assert_eq!((&x + &y).galois(k).unwrap(), &gx + &gy);
            }
            (Err(_), Err(_), Err(_)) => prop_assert!(num_integer::gcd(k, n as i64) != 1),
            _ => prop_assert!(false, "inconsistent coprimality"),
        }
        prop_assert_eq!(x.conj().conj(), x.clone());
        let norm = &x * &x.conj();
        prop_assert!(norm.to_complex().1.abs() < 1e-9);
    }

    #[test]
    fn embedding_is_a_homomorphism(a in prop::collection::vec(-4i64..5, 0..4), b in prop::collection::vec(-4i64..5, 0..4)) {
        let big = CycloField::new(12);
        let (x, y) = (element(4, &a), element(4, &b));
        prop_assert_eq!((&x * &y).embed(&big), &x.embed(&big) * &y.embed(&big));
        let (re, im) = x.to_complex();
        let (re2, im2) = x.embed(&big).to_complex();
        prop_assert!((re - re2).abs() < 1e-9 && (im - im2).abs() < 1e-9);
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(-5i64..6, 9), b in prop::collection::vec(-5i64..6, 9)) {
        let m = |v: &[i64]| RatMatrix::from_i64(&[v[0..3].to_vec(), v[3..6].to_vec(), v[6..9].to_vec()]);
        let (x, y) = (m(&a), m(&b));
        prop_assert_eq!((&x * &y).determinant(), x.determinant() * y.determinant());
        prop_assert_eq!(x.transpose().determinant(), x.determinant());
    }
}

#[test]
fn display_is_exact() {
    let f = CycloField::new(3);
    let z = Cyclotomic::zeta_power(&f, 1);
    assert_eq!(format!("{}", &z * &z), "-z3 - 1");
    assert_eq!(format!("{}", Cyclotomic::from_rational(&f, rat(3, 2))), "3/2");
}
