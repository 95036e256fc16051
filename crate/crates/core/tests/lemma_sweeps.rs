use std::collections::HashMap;

use cycpres_core::arith::divisors;
use cycpres_core::classify::{is_unit_at_all_divisors, PowerSums};
use cycpres_core::{
    circulant_resultant, is_unit_at, main_lemma_instance, poly_f, unit_symmetry_search, BigInt, PrishParams,
};
use num_traits::{One, Signed};

#[test]
fn unit_symmetry_and_main_lemma_at_25() {
    let n = 25;
    let mut units = 0;
    for r in 2..=n {
        for k in 1..=n {
            let f = poly_f(r, k).unwrap();
            if is_unit_at(&f, n) {
                units += 1;
                assert!(unit_symmetry_search(n, r, k).unwrap().is_some(), "r={r} k={k}");
            }
            assert!(main_lemma_instance(n, r, k).unwrap(), "r={r} k={k}");
        }
    }
    assert!(units > 0);
}

/// Unit at every divisor of n is the same thing as |det| = 1 for s = r-1, q = 1.
#[test]
fn divisor_units_decide_perfectness() {
    for n in [5u64, 7, 11, 25] {
        for r in 2..=n {
            for k in 1..=n {
                let f = poly_f(r, k).unwrap();
                let p = PrishParams::new(r, n, k, r - 1, 1).unwrap();
                let det = circulant_resultant(&p.cyclic_poly(), n as usize).unwrap();
                assert_eq!(is_unit_at_all_divisors(&f, n), det.abs().is_one(), "{p}");
            }
        }
    }
}

fn multisets(n: u64, size: usize) -> Vec<Vec<u64>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for m in multisets(n, size - 1) {
        let start = m.last().copied().unwrap_or(0);
        for x in start..n {
            let mut v = m.clone();
            v.push(x);
            out.push(v);
        }
    }
    out
}

/// Power sums over Z[ζ_n] determine the elementary symmetric functions
/// (the ring is torsion-free), so no collisions appear even when 6 | n.
#[test]
fn power_sums_separate_multisets_beyond_coprime_n() {
    for n in [2u64, 3, 4, 6, 9, 12] {
        let sums = PowerSums::for_n(n).unwrap();
        let all = multisets(n, 4);
        let mut seen: HashMap<Vec<Vec<BigInt>>, &Vec<u64>> = HashMap::new();
        for m in &all {
            let key: Vec<Vec<BigInt>> = (1..=4).map(|j| sums.power_sum(m, j).coeffs().to_vec()).collect();
            if let Some(prev) = seen.insert(key, m) {
                panic!("n = {n}: {prev:?} and {m:?} share power sums");
            }
        }
    }
}

#[test]
fn divisors_cover_the_circulant_product() {
    // |R_n(f)| is the product of the cyclotomic norms over d | n.
    for n in 2..=24u64 {
        let p = PrishParams::new(3, n, 2, 2, 1).unwrap();
        let det = circulant_resultant(&p.cyclic_poly(), n as usize).unwrap().abs();
        let f = p.cyclic_poly();
        let product: BigInt = divisors(n)
            .into_iter()
            .map(|d| {
                let phi = cycpres_core::cyclotomic(d).unwrap();
                cycpres_core::resultant(&f, &phi).unwrap().abs()
            })
            .product();
        assert_eq!(det, product, "n = {n}");
    }
}
