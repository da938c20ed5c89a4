use std::sync::OnceLock;

use apolar_core::apolarity::{catalecticant, hilbert_function};
use apolar_core::poly::{apolar_apply, parse_poly, power_linear};
use apolar_core::random::{derive_seed, nonzero_vector, rng};
use apolar_core::scalar::{int, DEFAULT_MODULUS};
use apolar_core::secant::{
    expected_dim, terracini_dim_segre, terracini_dim_veronese, TrialConfig, VarietySpec,
};
use apolar_core::tensor::{
    flatten, matmul_tensor, multilinear_rank, strassen_det_symbolic, strassen_matrix,
    FlatteningSpec,
};
use apolar_core::{
    Arithmetic, DenseTensor, HomogPoly, LinearForm, Monomial, PrimeField, QMatrix, Rational,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

/// Textbook Gaussian elimination over Q with row swaps, independent of the
/// fraction-free engine. Returns (rank, determinant if square).
fn naive_elimination(rows: &[Vec<Rational>]) -> (usize, Option<Rational>) {
    let mut a = rows.to_vec();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let mut det = Rational::one();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            det = -det;
        }
        let pivot = a[rank][col].clone();
        det *= &pivot;
        for i in rank + 1..m {
            let factor = &a[i][col] / &pivot;
            if factor.is_zero() {
                continue;
            }
            let pivot_row = a[rank].clone();
            for (x, p) in a[i][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    let det = (m == n).then(|| if rank == n { det } else { Rational::zero() });
    (rank, det)
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(rows, cols, k)| {
        let k = k.min(rows).min(cols);
        (
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, k), rows),
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), k),
            any::<bool>(),
        )
            .prop_map(|(a, b, full)| {
                if full {
                    // unstructured
                    a.iter()
                        .map(|r| {
                            (0..b[0].len())
                                .map(|j| r[j % r.len()] * 3 - j as i64)
                                .collect()
                        })
                        .collect()
                } else {
                    a.iter()
                        .map(|r| {
                            (0..b[0].len())
                                .map(|j| (0..r.len()).map(|t| r[t] * b[t][j]).sum())
                                .collect()
                        })
                        .collect()
                }
            })
    })
}

fn to_q(rows: &[Vec<i64>], den: i64) -> QMatrix {
    let q: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::new(x.into(), den.into()))
                .collect()
        })
        .collect();
    QMatrix::from_rows(q).unwrap()
}

fn form_strategy() -> impl Strategy<Value = HomogPoly> {
    (1usize..=3, 1u32..=4).prop_flat_map(|(vars, d)| {
        let len = apolar_core::poly::monomial_count(vars, d);
        proptest::collection::vec(-5i64..=5, len).prop_filter_map("nonzero", move |c| {
            let coeffs: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
            let f = HomogPoly::from_coefficients(vars, d, &coeffs).unwrap();
            (!f.is_zero()).then_some(f)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_and_det_match_naive_elimination(rows in matrix_strategy(6), den in 1i64..=4) {
        let m = to_q(&rows, den);
        let (rank, det) = naive_elimination(&m.to_rows());
        prop_assert_eq!(m.rank(), rank);
        prop_assert_eq!(m.transpose().rank(), rank);
        if let Some(det) = det {
            prop_assert_eq!(m.det().unwrap(), det);
        }
    }

    #[test]
    fn kernel_vectors_annihilate(rows in matrix_strategy(6)) {
        let m = to_q(&rows, 1);
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len() + m.rank(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_is_consistent(rows in matrix_strategy(5), x in proptest::collection::vec(-3i64..=3, 5)) {
        let m = to_q(&rows, 1);
        let x: Vec<Rational> = (0..m.cols()).map(|j| int(x[j % x.len()])).collect();
        let b = m.mul_vec(&x).unwrap();
        let sol = m.solve(&b).unwrap().expect("b is in the column space");
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn modular_rank_never_exceeds_exact(rows in matrix_strategy(6), den in 1i64..=4) {
        let m = to_q(&rows, den);
        prop_assert!(m.rank_mod(&PrimeField::new(DEFAULT_MODULUS).unwrap()) <= m.rank());
        prop_assert!(m.rank_mod(&PrimeField::new(7).unwrap()) <= m.rank());
    }

    #[test]
    fn render_parse_round_trip(f in form_strategy()) {
        let back = parse_poly(&f.to_string(), f.num_vars()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn hilbert_function_is_symmetric(f in form_strategy()) {
        let p = hilbert_function(&f).unwrap();
        let d = f.degree() as usize;
        for t in 0..=d {
            prop_assert_eq!(p.hf[t], p.hf[d - t]);
        }
        prop_assert_eq!(p.hf[0], 1);
        prop_assert_eq!(p.hf[d + 1], 0);
    }

    #[test]
    fn catalecticant_rank_matches_operator_images(f in form_strategy(), t in 0u32..=4) {
        prop_assume!(t <= f.degree());
        // rank = dim of the span of all t-th order derivatives
        let n = f.num_vars();
        let images: Vec<Vec<Rational>> = apolar_core::poly::monomials(n, t)
            .into_iter()
            .map(|m| apolar_apply(&HomogPoly::term(m, int(1)), &f).coefficients())
            .collect();
        let span = naive_elimination(&images).0;
        prop_assert_eq!(catalecticant(&f, t).unwrap().matrix.rank(), span);
    }

    #[test]
    fn power_of_linear_form_evaluates(c in proptest::collection::vec(-5i64..=5, 3), p in proptest::collection::vec(-5i64..=5, 3), d in 1u32..=5) {
        prop_assume!(c.iter().any(|&x| x != 0));
        let l = LinearForm::new(c.iter().map(|&x| int(x)).collect()).unwrap();
        let point: Vec<Rational> = p.iter().map(|&x| int(x)).collect();
        let value: i64 = c.iter().zip(&p).map(|(a, b)| a * b).sum();
        let want = (0..d).fold(Rational::one(), |acc, _| acc * int(value));
        prop_assert_eq!(power_linear(&l, d).eval(&point), want);
    }

    #[test]
    fn apolar_action_on_monomials(a in proptest::collection::vec(0u32..=4, 3), b in proptest::collection::vec(0u32..=4, 3)) {
        let x = HomogPoly::term(Monomial::new(a.clone()), int(1));
        let y = HomogPoly::term(Monomial::new(b.clone()), int(1));
        let got = apolar_apply(&y, &x);
        if a.iter().zip(&b).any(|(ai, bi)| bi > ai) {
            prop_assert!(got.is_zero());
        } else {
            let k: i64 = a.iter().zip(&b).map(|(&ai, &bi)| ((ai - bi + 1)..=ai).map(i64::from).product::<i64>()).product();
            let rest: Vec<u32> = a.iter().zip(&b).map(|(ai, bi)| ai - bi).collect();
            prop_assert_eq!(got, HomogPoly::term(Monomial::new(rest), int(k)));
        }
    }
}

fn random_tensor<R: Rng>(r: &mut R, shape: &[usize]) -> DenseTensor {
    let len = shape.iter().product();
    DenseTensor::new(
        shape.to_vec(),
        (0..len).map(|_| int(r.gen_range(-5..=5))).collect(),
    )
    .unwrap()
}

fn all_mode_sets(order: usize) -> Vec<Vec<usize>> {
    (1..(1usize << order) - 1)
        .map(|mask| (0..order).filter(|m| mask & (1 << m) != 0).collect())
        .collect()
}

#[test]
fn flatten_is_linear_and_transposes() {
    let mut r = rng(derive_seed(100, 0));
    for _ in 0..30 {
        let order = r.gen_range(2..=4);
        let shape: Vec<usize> = (0..order).map(|_| r.gen_range(1..=3)).collect();
        let (s, t) = (random_tensor(&mut r, &shape), random_tensor(&mut r, &shape));
        let (alpha, beta) = (int(r.gen_range(-4..=4)), int(r.gen_range(-4..=4)));
        let combo = s.scale(&alpha).add(&t.scale(&beta)).unwrap();
        for modes in all_mode_sets(order) {
            let spec = FlatteningSpec::new(modes.clone(), order).unwrap();
            let lhs = flatten(&combo, &spec).unwrap();
            let rhs = flatten(&s, &spec)
                .unwrap()
                .scale(&alpha)
                .add(&flatten(&t, &spec).unwrap().scale(&beta))
                .unwrap();
            assert_eq!(lhs, rhs);
            let comp = FlatteningSpec::new(spec.complement(order), order).unwrap();
            assert_eq!(
                flatten(&s, &spec).unwrap().transpose(),
                flatten(&s, &comp).unwrap()
            );
        }
    }
}

/// Mode-1 flattening of `sum a_i (x) b_i (x) c_i` built as `sum a_i (b_i kron c_i)^T`.
fn kron_flattening(terms: &[[Vec<Rational>; 3]]) -> Vec<Vec<Rational>> {
    let (n0, n1, n2) = (terms[0][0].len(), terms[0][1].len(), terms[0][2].len());
    let mut out = vec![vec![Rational::zero(); n1 * n2]; n0];
    for [a, b, c] in terms {
        for i in 0..n0 {
            for j in 0..n1 {
                for k in 0..n2 {
                    out[i][j * n2 + k] += &a[i] * &b[j] * &c[k];
                }
            }
        }
    }
    out
}

#[test]
fn generic_sums_have_full_multilinear_rank() {
    let mut r = rng(derive_seed(101, 0));
    for terms in 1..=3 {
        for _ in 0..10 {
            let factors: Vec<[Vec<Rational>; 3]> = (0..terms)
                .map(|_| {
                    [
                        nonzero_vector(&mut r, 3, 30),
                        nonzero_vector(&mut r, 3, 30),
                        nonzero_vector(&mut r, 3, 30),
                    ]
                })
                .collect();
            let t = factors
                .iter()
                .map(|f| DenseTensor::rank_one(f).unwrap())
                .reduce(|a, b| a.add(&b).unwrap())
                .unwrap();
            let ranks = multilinear_rank(&t).unwrap();
            assert!(ranks.iter().all(|&k| k <= terms));
            assert_eq!(ranks[0], naive_elimination(&kron_flattening(&factors)).0);
            assert_eq!(ranks, vec![terms; 3], "generic sum of {terms}");
        }
    }
}

#[test]
fn matmul_contracts_to_matrix_product() {
    let mut r = rng(derive_seed(102, 0));
    for n in 1..=3 {
        let t = matmul_tensor(n).unwrap();
        for _ in 0..5 {
            let a: Vec<i64> = (0..n * n).map(|_| r.gen_range(-9..=9)).collect();
            let b: Vec<i64> = (0..n * n).map(|_| r.gen_range(-9..=9)).collect();
            let want: Vec<Rational> = (0..n * n)
                .map(|idx| {
                    int((0..n)
                        .map(|k| a[idx / n * n + k] * b[k * n + idx % n])
                        .sum())
                })
                .collect();
            let q = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
            assert_eq!(t.bilinear(&q(&a), &q(&b)).unwrap(), want);
        }
    }
}

fn symbolic_det() -> &'static HomogPoly {
    static DET: OnceLock<HomogPoly> = OnceLock::new();
    DET.get_or_init(strassen_det_symbolic)
}

#[test]
fn strassen_symbolic_det_specializes() {
    let mut r = rng(derive_seed(103, 0));
    let det = symbolic_det();
    for k in 0..100 {
        let t = if k % 2 == 0 {
            random_tensor(&mut r, &[3, 3, 3])
        } else {
            (0..(k % 5)).fold(DenseTensor::zeros(vec![3, 3, 3]), |acc, _| {
                let f = [
                    nonzero_vector(&mut r, 3, 9),
                    nonzero_vector(&mut r, 3, 9),
                    nonzero_vector(&mut r, 3, 9),
                ];
                acc.add(&DenseTensor::rank_one(&f).unwrap()).unwrap()
            })
        };
        assert_eq!(
            det.eval(t.entries()),
            strassen_matrix(&t).unwrap().matrix.det().unwrap(),
            "sample {k}"
        );
    }
}

#[test]
fn strassen_rank_is_at_most_twice_tensor_rank() {
    let mut r = rng(derive_seed(104, 0));
    for terms in 1..=5 {
        for _ in 0..10 {
            let t = (0..terms).fold(DenseTensor::zeros(vec![3, 3, 3]), |acc, _| {
                let f = [
                    nonzero_vector(&mut r, 3, 9),
                    nonzero_vector(&mut r, 3, 9),
                    nonzero_vector(&mut r, 3, 9),
                ];
                acc.add(&DenseTensor::rank_one(&f).unwrap()).unwrap()
            });
            assert!(strassen_matrix(&t).unwrap().matrix.rank() <= 2 * terms);
        }
    }
}

#[test]
fn secant_dimension_bounded_by_expected() {
    let cfg = TrialConfig {
        seed: 5,
        trials: 2,
        arithmetic: Arithmetic::Exact,
    };
    let modular = TrialConfig {
        arithmetic: Arithmetic::Modular(PrimeField::default()),
        ..cfg
    };
    for n in 1..=3 {
        for d in 1..=4 {
            for s in 1..=4 {
                let exact = terracini_dim_veronese(n, d, s, &cfg).unwrap();
                let spec = VarietySpec::veronese(n, d).unwrap();
                assert!(exact.computed_dim <= expected_dim(&spec, s));
                assert!(
                    terracini_dim_veronese(n, d, s, &modular)
                        .unwrap()
                        .computed_dim
                        <= exact.computed_dim
                );
            }
        }
    }
    for dims in [vec![1, 1], vec![1, 2], vec![2, 2], vec![1, 1, 2]] {
        for s in 1..=4 {
            let r = terracini_dim_segre(&dims, s, &cfg).unwrap();
            assert!(r.computed_dim <= r.expected_dim);
            assert!(r.certified, "{dims:?} s={s}: {r:?}");
        }
    }
}

#[test]
fn secant_reports_are_reproducible() {
    let cfg = TrialConfig {
        seed: 42,
        trials: 3,
        arithmetic: Arithmetic::Exact,
    };
    let a = terracini_dim_segre(&[1, 2, 2], 3, &cfg).unwrap();
    let b = terracini_dim_segre(&[1, 2, 2], 3, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
