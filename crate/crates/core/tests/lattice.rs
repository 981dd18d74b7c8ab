use covertorus_core::lattice::*;
use covertorus_core::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Gcd of all k x k minors, computed by brute force.
fn determinantal_divisor(a: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in combinations(a.rows(), k) {
        for cs in combinations(a.cols(), k) {
            let minor = IntMatrix::from_rows(
                k,
                rs.iter().map(|&i| cs.iter().map(|&j| a[(i, j)].clone()).collect()).collect(),
            );
            g = g.gcd(&minor.determinant());
        }
    }
    g
}

/// Elementary divisors from the determinantal divisors d_k / d_{k-1}.
fn divisor_oracle(a: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=a.rows().min(a.cols()) {
        let dk = determinantal_divisor(a, k);
        if dk.is_zero() {
            break;
        }
        out.push(&dk / &prev);
        prev = dk;
    }
    out
}

#[test]
fn hnf_examples() {
    let a = m(&[&[2, 4], &[1, 3]]);
    let res = hnf(&a);
    assert_eq!(res.h, m(&[&[1, 1], &[0, 2]]));
    assert_eq!(res.u.mul(&a), res.h);
    assert!(res.u.determinant().abs().is_one());

    let id = IntMatrix::identity(3);
    let res = hnf(&id);
    assert_eq!(res.h, id);
    assert_eq!(res.u, id);

    let z = IntMatrix::zeros(2, 2);
    let res = hnf(&z);
    assert_eq!(res.h, z);
    assert_eq!(res.u, IntMatrix::identity(2));
    assert_eq!(res.rank, 0);
}

#[test]
fn snf_examples() {
    let res = snf(&m(&[&[2, 0], &[0, 3]]));
    assert_eq!(res.d, m(&[&[1, 0], &[0, 6]]));
    let res = snf(&m(&[&[2, 3]]));
    assert_eq!(res.d, m(&[&[1, 0]]));
    let res = snf(&m(&[&[2, 0], &[0, 2]]));
    assert_eq!(res.d, m(&[&[2, 0], &[0, 2]]));
}

#[test]
fn snf_matches_minor_oracle_on_fixed_cases() {
    // d1 = 1, d1 d2 = 6
    assert_eq!(divisor_oracle(&m(&[&[2, 0], &[0, 3]])), bi(&[1, 6]));
    for a in [m(&[&[4, 6, 2], &[2, 8, 10], &[6, 0, 4]]), m(&[&[0, 0], &[0, 5]]), m(&[&[12, 18, 30]])] {
        assert_eq!(snf(&a).divisors(), divisor_oracle(&a), "{}", a);
    }
}

#[test]
fn complete_unimodular_examples() {
    assert_eq!(complete_unimodular(&bi(&[2, 3])).unwrap(), m(&[&[2, 3], &[1, 2]]));
    assert_eq!(complete_unimodular(&bi(&[1, 0, 0])).unwrap(), IntMatrix::identity(3));
    assert_eq!(complete_unimodular(&bi(&[2, 4])), Err(Error::NonPrimitive));
    assert_eq!(complete_unimodular(&bi(&[-1])).unwrap(), m(&[&[-1]]));
}

#[test]
fn linear_solve_examples() {
    // x1 - x2 = 0
    let a = RatMatrix::from_rows(2, vec![vec![r(1, 1), r(-1, 1)]]);
    let sol = linear_solve(&a, &[r(0, 1)]).unwrap();
    assert_eq!(sol.particular, vec![r(0, 1), r(0, 1)]);
    assert_eq!(sol.kernel, m(&[&[1, 1]]));

    // x = 1, x = 2
    let a = RatMatrix::from_rows(1, vec![vec![r(1, 1)], vec![r(1, 1)]]);
    assert!(linear_solve(&a, &[r(1, 1), r(2, 1)]).is_none());

    // 2 x1 + 3 x2 = 1
    let a = RatMatrix::from_rows(2, vec![vec![r(2, 1), r(3, 1)]]);
    let sol = linear_solve(&a, &[r(1, 1)]).unwrap();
    assert_eq!(sol.particular, vec![r(1, 2), r(0, 1)]);
    assert_eq!(sol.kernel, m(&[&[3, -2]]));
}

#[test]
fn saturate_examples() {
    assert_eq!(saturate(&m(&[&[2, 2]])), (m(&[&[1, 1]]), BigInt::from(2)));
    assert_eq!(saturate(&m(&[&[1, 0]])), (m(&[&[1, 0]]), BigInt::from(1)));
    assert_eq!(saturate(&m(&[&[6]])), (m(&[&[1]]), BigInt::from(6)));
    assert_eq!(saturate(&IntMatrix::zeros(0, 3)).1, BigInt::one());
}

#[test]
fn determinant_and_inverse() {
    let a = m(&[&[2, 3], &[1, 2]]);
    assert_eq!(a.determinant(), BigInt::one());
    let inv = a.unimodular_inverse().unwrap();
    assert_eq!(a.mul(&inv), IntMatrix::identity(2));
    assert!(m(&[&[2, 0], &[0, 1]]).unimodular_inverse().is_none());
    assert_eq!(m(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]).determinant(), BigInt::from(-3));
}

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(rows, cols)| {
        prop::collection::vec(-bound..=bound, rows * cols)
            .prop_map(move |v| IntMatrix::new(rows, cols, v.into_iter().map(BigInt::from).collect()))
    })
}

fn in_row_lattice(v: &[BigInt], basis: &IntMatrix) -> bool {
    let ext = basis.vstack(&IntMatrix::from_rows(basis.cols(), vec![v.to_vec()]));
    lattice_basis(&ext) == lattice_basis(basis)
}

proptest! {
    #[test]
    fn hnf_is_exact_and_canonical(a in matrix_strategy(5, 9)) {
        let res = hnf(&a);
        prop_assert_eq!(res.u.mul(&a), res.h.clone());
        prop_assert!(res.u.determinant().abs().is_one());
        let mut last_pivot = None;
        for i in 0..res.rank {
            let p = res.h.row(i).iter().position(|x| !x.is_zero()).unwrap();
            prop_assert!(last_pivot.is_none_or(|lp| p > lp));
            prop_assert!(res.h[(i, p)].is_positive());
            for k in 0..i {
                prop_assert!(!res.h[(k, p)].is_negative() && res.h[(k, p)] < res.h[(i, p)]);
            }
            last_pivot = Some(p);
        }
        for i in res.rank..a.rows() {
            prop_assert!(res.h.row_is_zero(i));
        }
        // Idempotent on its own output.
        prop_assert_eq!(hnf(&res.h).h, res.h);
    }

    #[test]
    fn snf_agrees_with_minor_oracle(a in matrix_strategy(4, 8)) {
        let res = snf(&a);
        prop_assert_eq!(res.u.mul(&a).mul(&res.v), res.d.clone());
        prop_assert!(res.u.determinant().abs().is_one());
        prop_assert!(res.v.determinant().abs().is_one());
        for i in 0..res.d.rows() {
            for j in 0..res.d.cols() {
                if i != j {
                    prop_assert!(res.d[(i, j)].is_zero());
                }
            }
        }
        let divs = res.divisors();
        for w in divs.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert_eq!(divs, divisor_oracle(&a));
    }

    #[test]
    fn completion_has_unit_determinant(v in prop::collection::vec(-20i64..=20, 1..=6)) {
        let row = bi(&v);
        let res = complete_unimodular(&row);
        if content(&row).is_one() {
            let a = res.unwrap();
            prop_assert_eq!(a.row(0), &row[..]);
            prop_assert!(a.determinant().abs().is_one());
        } else {
            prop_assert_eq!(res, Err(Error::NonPrimitive));
        }
    }

    #[test]
    fn saturation_matches_double_annihilator(a in matrix_strategy(4, 6)) {
        let (sat, index) = saturate(&a);
        // Oracle: the saturation is the annihilator of the annihilator.
        let ann = left_kernel(&a.transpose());
        let oracle = left_kernel(&ann.transpose());
        prop_assert_eq!(&sat, &oracle);
        for i in 0..sat.rows() {
            let scaled: Vec<BigInt> = sat.row(i).iter().map(|x| x * &index).collect();
            prop_assert!(in_row_lattice(&scaled, &a));
        }
        let (again, one) = saturate(&sat);
        prop_assert_eq!(again, sat);
        prop_assert!(one.is_one());
    }

    #[test]
    fn solve_substitutes_back(a in matrix_strategy(4, 5), b in prop::collection::vec(-5i64..=5, 4)) {
        let ar = a.to_rat();
        let rhs: Vec<Rat> = b.iter().take(a.rows()).map(|&x| r(x, 1)).collect();
        match linear_solve(&ar, &rhs) {
            Some(sol) => {
                for i in 0..a.rows() {
                    let lhs: Rat = (0..a.cols()).map(|j| &ar[(i, j)] * &sol.particular[j]).sum();
                    prop_assert_eq!(&lhs, &rhs[i]);
                }
                prop_assert_eq!(sol.kernel.rows() + ar.rank(), a.cols());
                for k in 0..sol.kernel.rows() {
                    prop_assert!(a.apply(sol.kernel.row(k)).iter().all(Zero::is_zero));
                }
            }
            None => {
                // Inconsistent: the augmented matrix has larger rank.
                let aug: Vec<Vec<Rat>> = (0..a.rows())
                    .map(|i| ar.row(i).iter().cloned().chain([rhs[i].clone()]).collect())
                    .collect();
                prop_assert!(RatMatrix::from_rows(a.cols() + 1, aug).rank() > ar.rank());
            }
        }
    }
}
