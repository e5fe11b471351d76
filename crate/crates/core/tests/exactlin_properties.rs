use proptest::prelude::*;
use zigzag_core::exactlin::{nullspace_basis, rank, rref, span_dim, span_equal, Field, Matrix, Scalar, Vector};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
    })
}

fn to_matrix(field: Field, rows: &[Vec<i64>]) -> Matrix {
    let dense = rows
        .iter()
        .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
        .collect();
    Matrix::from_dense(field, rows[0].len(), dense).unwrap()
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::rationals()),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(101).unwrap()),
    ]
}

proptest! {
    #[test]
    fn rref_is_idempotent(rows in small_matrix(), field in fields()) {
        let m = to_matrix(field, &rows);
        let once = rref(&m);
        let twice = rref(&once.reduced);
        prop_assert_eq!(&twice.reduced, &once.reduced);
        prop_assert_eq!(twice.pivot_cols, once.pivot_cols.clone());
        prop_assert!(once.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(once.rank, once.pivot_cols.len());
        prop_assert_eq!(once.reduced.nrows(), m.nrows());
    }

    #[test]
    fn rank_nullity(rows in small_matrix(), field in fields()) {
        let m = to_matrix(field, &rows);
        let kernel = nullspace_basis(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), m.ncols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(span_dim(&kernel).unwrap(), kernel.len());
    }

    #[test]
    fn rref_ignores_row_order(rows in small_matrix(), seed in any::<u64>()) {
        let q = Field::rationals();
        let mut shuffled = rows.clone();
        // deterministic Fisher-Yates from the seed
        let mut s = seed | 1;
        for i in (1..shuffled.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            shuffled.swap(i, (s % (i as u64 + 1)) as usize);
        }
        prop_assert_eq!(rref(&to_matrix(q, &rows)), rref(&to_matrix(q, &shuffled)));
    }

    #[test]
    fn span_equal_with_redundant_members(rows in small_matrix(), coeffs in proptest::collection::vec(-2i64..=2, 6)) {
        let q = Field::rationals();
        let a: Vec<Vector> = to_matrix(q, &rows).to_dense();
        let mut extended = a.clone();
        let combo: Vector = (0..a[0].len())
            .map(|c| a.iter().zip(&coeffs).fold(q.zero(), |acc, (v, &k)| &acc + &(&v[c] * &q.from_i64(k))))
            .collect();
        extended.push(combo);
        prop_assert!(span_equal(&a, &extended).unwrap());
        prop_assert!(span_equal(&extended, &a).unwrap());
        prop_assert!(span_equal(&a, &a).unwrap());
        prop_assert_eq!(span_dim(&a).unwrap(), span_dim(&extended).unwrap());
    }
}
