use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use parke_taylor_core::linalg::{
    hnf, integer_kernel_basis, is_unimodular, kernel_via_transform, lattice_contains, rank, saturation_index,
    span_report, ExactMatrix, SparseVec,
};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

/// Rational nullspace by Gauss–Jordan, each vector scaled to a primitive
/// integer vector.
fn rational_kernel(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let cols = m[0].len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(p, row);
        let inv = a[row][c].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..cols {
                    let t = &a[row][k] * &f;
                    a[r][k] = &a[r][k] - t;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (t, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[t][f].clone();
            }
            let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.into_iter().map(|x| x / &g).collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hnf_transform_is_unimodular(m in small_matrix()) {
        let a = ExactMatrix::from_dense(&m).unwrap();
        let r = hnf(&a, true);
        let u = r.u.as_ref().unwrap();
        prop_assert!(is_unimodular(u));
        prop_assert_eq!(u.mul(&a).unwrap(), r.h.clone());
        for (t, &c) in r.pivot_cols.iter().enumerate() {
            let p = r.h.get(t, c);
            prop_assert!(p.is_positive());
            for s in 0..t {
                let e = r.h.get(s, c);
                prop_assert!(!e.is_negative() && e < p);
            }
        }
    }

    #[test]
    fn kernel_matches_rational_oracle(m in small_matrix()) {
        let a = ExactMatrix::from_dense(&m).unwrap();
        let k = integer_kernel_basis(&a);
        prop_assert_eq!(rank(&a) + k.rank(), a.cols());
        for v in &k.vectors {
            prop_assert!(a.mul_sparse(v).iter().all(|x| x.is_zero()));
        }
        let oracle = rational_kernel(&m);
        prop_assert_eq!(oracle.len(), k.rank());
        for v in &oracle {
            prop_assert!(lattice_contains(&k, v).unwrap());
        }
        // saturated: index one in its rational span
        prop_assert!(saturation_index(a.cols(), &k.vectors).is_one());
    }

    #[test]
    fn both_kernel_paths_agree(m in small_matrix()) {
        let a = ExactMatrix::from_dense(&m).unwrap();
        let k1 = integer_kernel_basis(&a);
        let k2 = kernel_via_transform(&a);
        prop_assert_eq!(k1.rank(), k2.rank());
        let r = span_report(a.cols(), &k2.vectors, Some(&k1)).unwrap();
        prop_assert_eq!(r.equals_reference, Some(true));
        let r = span_report(a.cols(), &k1.vectors, Some(&k2)).unwrap();
        prop_assert_eq!(r.equals_reference, Some(true));
    }

    #[test]
    fn modular_rank_agrees(m in small_matrix()) {
        let a = ExactMatrix::from_dense(&m).unwrap();
        prop_assert_eq!(rank(&a), hnf(&a, false).rank);
    }
}

#[test]
fn doubled_span_is_not_reference() {
    let a = ExactMatrix::from_dense(&[vec![1i64, 1, 1]]).unwrap();
    let k = integer_kernel_basis(&a);
    let doubled: Vec<SparseVec> = k.vectors.iter().map(|v| {
        let mut w = v.clone();
        w.scale(&BigInt::from(2));
        w
    }).collect();
    let r = span_report(3, &doubled, Some(&k)).unwrap();
    assert_eq!(r.rank, 2);
    assert_eq!(r.equals_reference, Some(false));
    assert_eq!(r.saturation_index, BigInt::from(4));
}
