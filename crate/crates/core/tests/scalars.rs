use bmw_core::{Field, FieldDescriptor, FieldElement, Order, PrimeField, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..30).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[test]
fn worked_examples() {
    let f = gf(7);
    assert_eq!(f.mul(&3, &5), 1);
    assert_eq!(f.inv(&3).unwrap(), 5);
    assert!(f.inv(&0).is_err());
    for x in 0..7 {
        assert_eq!(f.mul(&0, &x), 0);
    }
    assert_eq!(f.multiplicative_order(&2).unwrap(), Order::Finite(3));

    let q = Rationals;
    let half = q.parse("1/2").unwrap();
    let third = q.parse("1/3").unwrap();
    assert_eq!(q.render(&q.add(&half, &third)), "5/6");
    assert_eq!(q.render(&q.inv(&q.parse("3/2").unwrap()).unwrap()), "2/3");
    assert_eq!(q.multiplicative_order(&q.from_i64(-1)).unwrap(), Order::Finite(2));
    assert_eq!(q.multiplicative_order(&q.from_i64(2)).unwrap(), Order::Infinite);
}

#[test]
fn descriptors() {
    assert_eq!(gf(101).descriptor(), FieldDescriptor::prime(101).unwrap());
    assert_eq!(gf(101).descriptor().characteristic(), 101);
    assert_eq!(Rationals.descriptor().characteristic(), 0);
    assert!(PrimeField::new(100).is_err());
    assert!(FieldDescriptor::prime(1).is_err());
}

#[test]
fn order_is_minimal_for_every_unit() {
    for p in [2u64, 3, 7, 101, 103] {
        let f = gf(p);
        for a in 1..p {
            let Order::Finite(m) = f.multiplicative_order(&a).unwrap() else {
                panic!("finite field element of infinite order");
            };
            assert_eq!(f.pow_u64(&a, m), 1);
            assert!(
                (1..m).all(|k| f.pow_u64(&a, k) != 1),
                "order of {a} mod {p} not minimal"
            );
        }
    }
}

proptest! {
    #[test]
    fn prime_field_axioms(a in 0u64..1009, b in 0u64..1009, c in 0u64..1009) {
        let f = gf(1009);
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    #[test]
    fn rational_axioms(a in rational(), b in rational(), c in rational()) {
        let f = Rationals;
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if !a.is_zero() {
            prop_assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
        }
    }

    #[test]
    fn fractions_are_canonical(a in rational(), b in rational()) {
        let x = Rationals.add(&a, &b);
        prop_assert!(x.numer().gcd(x.denom()).is_one());
        prop_assert!(x.denom().is_positive());
    }

    #[test]
    fn render_parse_round_trip(a in rational(), v in 0u64..101) {
        prop_assert_eq!(Rationals.parse(&Rationals.render(&a)).unwrap(), a.clone());
        let f = gf(101);
        prop_assert_eq!(f.parse(&f.render(&v)).unwrap(), v);
        let el = Rationals.to_element(&a);
        prop_assert_eq!(FieldElement::parse(Rationals.descriptor(), &el.render()).unwrap(), el);
    }

    #[test]
    fn tagged_elements_agree_with_backends(a in 0u64..101, b in 1u64..101) {
        let f = gf(101);
        let (x, y) = (f.to_element(&a), f.to_element(&b));
        prop_assert_eq!(x.mul(&y).unwrap(), f.to_element(&f.mul(&a, &b)));
        prop_assert_eq!(y.inv().unwrap(), f.to_element(&f.inv(&b).unwrap()));
    }
}
