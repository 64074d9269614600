use exunits_core::arith::{factorize, BigCount};
use exunits_core::oracle::{count_by_enumeration, sumset_table};
use exunits_core::repcount::{
    phi_doublestar, phi_k, phi_k_prime_power, phi_star_two_units, CountQuery,
};
use exunits_core::residues::{
    count_exceptional_units, enumerate_exceptional_units, enumerate_units,
};
use exunits_core::Limits;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

fn phi(n: u64, k: u32, c: u64) -> BigCount {
    let q = CountQuery::new(n, k, c).unwrap();
    phi_k(&q, &factorize(n).unwrap()).unwrap()
}

fn oracle(n: u64, k: u32) -> Vec<BigCount> {
    let l = Limits::default();
    let s = enumerate_exceptional_units(n, &l).unwrap();
    sumset_table(&s, k, &l).unwrap().into_counts()
}

#[test]
fn formula_matches_convolution_oracle() {
    for n in 1..=60 {
        for k in 2..=5 {
            let table = oracle(n, k);
            for c in 0..n {
                assert_eq!(phi(n, k, c), table[c as usize], "n={n} k={k} c={c}");
            }
        }
    }
}

#[test]
fn column_sums_and_reflection() {
    for n in 1..=300u64 {
        let size = count_exceptional_units(&factorize(n).unwrap());
        for k in 2..=4u32 {
            let row: Vec<BigCount> = (0..n).map(|c| phi(n, k, c)).collect();
            assert_eq!(row.iter().sum::<BigCount>(), size.pow(k), "n={n} k={k}");
            for c in 0..n {
                let mirror = (k as u64 % n + n - c) % n;
                assert_eq!(row[c as usize], row[mirror as usize], "n={n} k={k} c={c}");
            }
        }
    }
}

#[test]
fn even_moduli_give_zero() {
    for n in (2..=200u64).step_by(2) {
        for k in 2..=6 {
            for c in 0..n {
                assert_eq!(phi(n, k, c), 0.into());
            }
        }
    }
}

#[test]
fn k_two_matches_piecewise_formula() {
    for n in 1..=500u64 {
        let f = factorize(n).unwrap();
        for c in 0..n {
            assert_eq!(phi(n, 2, c), phi_doublestar(&f, c), "n={n} c={c}");
        }
    }
}

#[test]
fn lifting_matches_oracle() {
    for p in [3u64, 5, 7] {
        for alpha in 1..=3 {
            let n = p.pow(alpha);
            for k in 2..=4 {
                let table = oracle(n, k);
                for c in 0..n {
                    assert_eq!(
                        phi_k_prime_power(p, alpha, k, c).unwrap(),
                        table[c as usize],
                        "p={p} alpha={alpha} k={k} c={c}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_is_multiplicative() {
    for m in 2..=150u64 {
        for n in (m + 1)..=(300 / m) {
            if m.gcd(&n) != 1 {
                continue;
            }
            for k in 2..=3 {
                let (tm, tn, tmn) = (oracle(m, k), oracle(n, k), oracle(m * n, k));
                for c in 0..m * n {
                    assert_eq!(
                        tmn[c as usize],
                        &tm[(c % m) as usize] * &tn[(c % n) as usize],
                        "m={m} n={n} k={k} c={c}"
                    );
                }
            }
        }
    }
}

#[test]
fn two_units_formula_matches_oracle() {
    let l = Limits::default();
    for n in 1..=100u64 {
        let units = enumerate_units(n, &l).unwrap();
        let table = sumset_table(&units, 2, &l).unwrap();
        let f = factorize(n).unwrap();
        for c in 0..n {
            assert_eq!(phi_star_two_units(&f, c), *table.get(c), "n={n} c={c}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_agrees_with_formula(n in 1u64..400, k in 2u32..4, c in any::<i64>()) {
        let l = Limits::default();
        let s = enumerate_exceptional_units(n, &l).unwrap();
        let q = CountQuery::new(n, k, c).unwrap();
        let by_formula = phi_k(&q, &factorize(n).unwrap()).unwrap();
        let by_tuples = count_by_enumeration(&s, k, q.c(), &l).unwrap();
        prop_assert_eq!(by_formula, by_tuples);
    }

    #[test]
    fn counts_are_nonnegative(n in 1u64..1_000_000_000_000, k in 2u32..40, c in any::<u64>()) {
        let q = CountQuery::new(n, k, c).unwrap();
        prop_assert!(!phi_k(&q, &factorize(n).unwrap()).unwrap().is_negative());
    }

    #[test]
    fn prime_lifting_law(p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 101, 65_521]),
                         alpha in 1u32..5, k in 2u32..30, c in any::<u64>()) {
        let modulus = p.pow(alpha);
        let c = c % modulus;
        let lifted = phi_k_prime_power(p, alpha, k, c).unwrap();
        let base = phi_k_prime_power(p, 1, k, c % p).unwrap();
        prop_assert_eq!(lifted, BigCount::from(p).pow((k - 1) * (alpha - 1)) * base);
    }
}
