use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rhomotopy::geometry::{point_cloud, Metric};
use rhomotopy::{ExtDist, QMetSpace, Scalar, DEFAULT_TAU};
use rhomotopy_cli::input::{parse_matrix_as, BackendChoice};
use rhomotopy_cli::{parse_digraph, parse_matrix, print_digraph, print_matrix, Input};

/// Shortest-path closure of optional positive weights.
fn closure(raw: &[Vec<Option<i64>>]) -> Vec<Vec<Option<i64>>> {
    let n = raw.len();
    let mut d: Vec<Vec<Option<i64>>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Some(0) } else { raw[i][j] }).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn weights() -> impl Strategy<Value = Vec<Vec<Option<i64>>>> {
    (1usize..7).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(proptest::option::weighted(0.8, 1i64..1_000_000), n), n)
    })
}

fn build<T: Scalar>(d: &[Vec<Option<i64>>], f: impl Fn(i64) -> T) -> QMetSpace<T> {
    let matrix = d
        .iter()
        .map(|row| row.iter().map(|v| v.map_or(ExtDist::Infinite, |v| ExtDist::Finite(f(v)))).collect())
        .collect();
    QMetSpace::new(matrix).unwrap()
}

fn float_bits(space: &QMetSpace<f64>) -> Vec<u64> {
    space.rows().flatten().map(|d| d.to_f64().to_bits()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_matrices(raw in weights()) {
        let space = build(&closure(&raw), |v| v);
        let text = print_matrix(&space);
        let Input::Integer { space: back, .. } = parse_matrix(&text, BackendChoice::Auto, DEFAULT_TAU).unwrap() else {
            panic!("backend changed")
        };
        prop_assert_eq!(&*back, &space);
        prop_assert_eq!(print_matrix(&*back), text);
    }

    #[test]
    fn rational_matrices(raw in weights(), num in 1i64..50, den in 1i64..50) {
        let scale = BigRational::new(BigInt::from(num), BigInt::from(den));
        let space = build(&closure(&raw), |v| BigRational::from_i64(v) * &scale);
        let text = print_matrix(&space);
        let Input::Rational(back) = parse_matrix(&text, BackendChoice::Auto, DEFAULT_TAU).unwrap() else {
            panic!("backend changed")
        };
        prop_assert_eq!(&*back, &space);
        prop_assert_eq!(print_matrix(&*back), text);
    }

    #[test]
    fn float_matrices(raw in weights(), scale in 1e-6f64..1e6) {
        let space = build(&closure(&raw), |v| v as f64 * scale);
        let text = print_matrix(&space);
        let Input::Float(back) = parse_matrix(&text, BackendChoice::Auto, DEFAULT_TAU).unwrap() else {
            panic!("backend changed")
        };
        prop_assert_eq!(float_bits(&back), float_bits(&space));
        prop_assert_eq!(print_matrix(&*back), text);
    }

    #[test]
    fn point_clouds(points in proptest::collection::vec(proptest::collection::vec(-1e3f64..1e3, 2), 1..8)) {
        let mut distinct = points.clone();
        distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
        distinct.dedup();
        prop_assume!(distinct.len() == points.len());
        for metric in [Metric::Euclidean, Metric::Manhattan, Metric::Chebyshev] {
            let Ok(space) = point_cloud(points.clone(), metric) else { continue };
            let back = parse_matrix_as::<f64>(&print_matrix(&space), DEFAULT_TAU).unwrap();
            prop_assert_eq!(float_bits(&back), float_bits(&space));
        }
    }

    #[test]
    fn edge_lists(n in 1usize..8, arrows in proptest::collection::vec((0usize..8, 0usize..8), 0..20)) {
        let arrows: Vec<_> = arrows.into_iter().filter(|&(u, v)| u < n && v < n).collect();
        let graph = rhomotopy::Digraph::new(n, arrows).unwrap();
        prop_assert_eq!(parse_digraph(&print_digraph(&graph)).unwrap(), graph);
    }
}
