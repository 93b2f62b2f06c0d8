//! Dense linear algebra over F_l.

mod invariant;
mod matrix;
mod spectral;
mod subspace;

pub use invariant::{
    gaussian_binomial, invariant_subspaces_of_dim, EnumerationMode, DEFAULT_ENUMERATION_BUDGET,
};
pub use matrix::MatrixFp;
pub use spectral::{
    characteristic_polynomial, companion_matrix, has_eigenvalue_one, kernel, minimal_polynomial,
    primary_decomposition, PrimaryComponent,
};
pub use subspace::Subspace;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_field::{cyclotomic_mod, PolyFp, Prime};

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn poly(c: &[i64], q: u64) -> PolyFp {
        PolyFp::from_i64s(c, pr(q))
    }

    /// det(tI - M) by cofactor expansion over polynomial entries.
    fn charpoly_by_laplace(m: &MatrixFp) -> PolyFp {
        let n = m.rows();
        let q = m.modulus();
        let entries: Vec<Vec<PolyFp>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = PolyFp::constant(q.get() - m.get(i, j), q);
                        if i == j {
                            &c + &PolyFp::t(q)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(rows: &[Vec<PolyFp>], q: Prime) -> PolyFp {
            if rows.is_empty() {
                return PolyFp::one(q);
            }
            let mut acc = PolyFp::zero(q);
            for j in 0..rows.len() {
                let minor: Vec<Vec<PolyFp>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][j] * &det(&minor, q);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
        det(&entries, q)
    }

    #[test]
    fn companion_examples() {
        let phi7 = cyclotomic_mod(pr(7), pr(2)).unwrap();
        let c = companion_matrix(&phi7).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let expected = u64::from(j == 5 || i == j + 1);
                assert_eq!(c.get(i, j), expected, "({i}, {j})");
            }
        }
        // over F_5 the last column is -1 = 4
        let c5 = companion_matrix(&cyclotomic_mod(pr(3), pr(5)).unwrap()).unwrap();
        assert_eq!(c5.to_rows(), vec![vec![0, 4], vec![1, 4]]);
        let lin = companion_matrix(&poly(&[-3, 1], 7)).unwrap();
        assert_eq!(lin.to_rows(), vec![vec![3]]);
        let a2 = companion_matrix(&poly(&[1, 1, 0, 1], 2)).unwrap();
        assert_eq!(
            a2.to_rows(),
            vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]
        );
        assert_eq!(
            companion_matrix(&poly(&[1, 2], 5)),
            Err(crate::Error::NotMonic)
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&MatrixFp::zeros(3, 3, pr(2))).dim(), 3);
        assert!(kernel(&MatrixFp::identity(4, pr(2))).is_zero());
        let t = companion_matrix(&cyclotomic_mod(pr(7), pr(2)).unwrap()).unwrap();
        let f1 = poly(&[1, 0, 1, 1], 2);
        let k = kernel(&t.eval_poly(&f1).unwrap());
        assert_eq!(k.dim(), 3);
        let rect = MatrixFp::from_rows(&[vec![1, 2, 3]], pr(5)).unwrap();
        let kr = kernel(&rect);
        assert_eq!(kr.dim(), 2);
        for v in kr.basis() {
            assert!(rect.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        let c3 = companion_matrix(&poly(&[1, 1, 1], 2)).unwrap();
        assert_eq!(minimal_polynomial(&c3).unwrap(), poly(&[1, 1, 1], 2));
        assert_eq!(
            minimal_polynomial(&MatrixFp::identity(5, pr(7))).unwrap(),
            poly(&[-1, 1], 7)
        );
        let neg = MatrixFp::scalar(2, 2, pr(3));
        assert_eq!(minimal_polynomial(&neg).unwrap(), poly(&[1, 1], 3));
        // a Jordan block has minimal polynomial (t - 1)^2
        let jordan = MatrixFp::from_rows(&[vec![1, 1], vec![0, 1]], pr(5)).unwrap();
        assert_eq!(minimal_polynomial(&jordan).unwrap(), poly(&[1, -2, 1], 5));
    }

    #[test]
    fn characteristic_polynomial_examples() {
        let phi7 = cyclotomic_mod(pr(7), pr(2)).unwrap();
        let c = companion_matrix(&phi7).unwrap();
        assert_eq!(characteristic_polynomial(&c).unwrap(), phi7);
        assert_eq!(
            characteristic_polynomial(&MatrixFp::zeros(2, 2, pr(2))).unwrap(),
            poly(&[0, 0, 1], 2)
        );
        let a1 = companion_matrix(&poly(&[1, 0, 1, 1], 2)).unwrap();
        let a2 = companion_matrix(&poly(&[1, 1, 0, 1], 2)).unwrap();
        let blocks = MatrixFp::block_diag(&[a1, a2]).unwrap();
        assert_eq!(characteristic_polynomial(&blocks).unwrap(), phi7);
    }

    #[test]
    fn characteristic_polynomial_matches_laplace() {
        let samples = [
            (vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 1, 1]], 7),
            (
                vec![
                    vec![0, 1, 0, 1],
                    vec![1, 1, 0, 0],
                    vec![0, 0, 1, 1],
                    vec![1, 0, 1, 0],
                ],
                2,
            ),
            (
                vec![
                    vec![0, 0, 0, 2],
                    vec![0, 0, 1, 0],
                    vec![3, 0, 0, 0],
                    vec![0, 4, 0, 1],
                ],
                5,
            ),
            (
                vec![
                    vec![2, 0, 1, 1, 0],
                    vec![0, 0, 0, 1, 2],
                    vec![1, 1, 0, 0, 0],
                    vec![0, 2, 2, 1, 1],
                    vec![1, 0, 0, 0, 2],
                ],
                3,
            ),
        ];
        for (rows, q) in samples {
            let m = MatrixFp::from_rows(&rows, pr(q)).unwrap();
            assert_eq!(
                characteristic_polynomial(&m).unwrap(),
                charpoly_by_laplace(&m)
            );
        }
    }

    #[test]
    fn primary_decomposition_examples() {
        let phi7 = cyclotomic_mod(pr(7), pr(2)).unwrap();
        let t = companion_matrix(&phi7).unwrap();
        let parts = primary_decomposition(&t).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].factor, poly(&[1, 0, 1, 1], 2));
        assert_eq!(parts[1].factor, poly(&[1, 1, 0, 1], 2));
        assert!(parts.iter().all(|c| c.subspace.dim() == 3));
        assert!(parts[0]
            .subspace
            .intersects_trivially(&parts[1].subspace)
            .unwrap());

        let t3 = companion_matrix(&poly(&[1, 1, 1], 2)).unwrap();
        let parts = primary_decomposition(&t3).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].subspace.dim(), 2);

        let neg = MatrixFp::scalar(2, 2, pr(3));
        let parts = primary_decomposition(&neg).unwrap();
        assert_eq!(parts[0].factor, poly(&[1, 1], 3));
        assert_eq!(parts[0].subspace, Subspace::full(2, pr(3)));

        let jordan = MatrixFp::from_rows(&[vec![1, 1], vec![0, 1]], pr(5)).unwrap();
        assert_eq!(
            primary_decomposition(&jordan),
            Err(crate::Error::NotSemisimple)
        );
    }

    #[test]
    fn invariant_subspace_examples() {
        let budget = DEFAULT_ENUMERATION_BUDGET;
        let t7 = companion_matrix(&cyclotomic_mod(pr(7), pr(2)).unwrap()).unwrap();
        for mode in [EnumerationMode::Algebraic, EnumerationMode::BruteForce] {
            assert_eq!(
                invariant_subspaces_of_dim(&t7, 3, mode, budget)
                    .unwrap()
                    .len(),
                2
            );
        }
        let neg = MatrixFp::scalar(2, 2, pr(3));
        for mode in [EnumerationMode::Algebraic, EnumerationMode::BruteForce] {
            assert_eq!(
                invariant_subspaces_of_dim(&neg, 1, mode, budget)
                    .unwrap()
                    .len(),
                4
            );
        }
        let t3 = companion_matrix(&poly(&[1, 1, 1], 2)).unwrap();
        for mode in [EnumerationMode::Algebraic, EnumerationMode::BruteForce] {
            assert!(invariant_subspaces_of_dim(&t3, 1, mode, budget)
                .unwrap()
                .is_empty());
        }
        assert!(matches!(
            invariant_subspaces_of_dim(&t7, 3, EnumerationMode::BruteForce, 100),
            Err(crate::Error::BudgetExceeded {
                needed: 1395,
                budget: 100
            })
        ));
        let jordan = MatrixFp::from_rows(&[vec![1, 1], vec![0, 1]], pr(5)).unwrap();
        assert_eq!(
            invariant_subspaces_of_dim(&jordan, 1, EnumerationMode::Algebraic, budget),
            Err(crate::Error::NotSemisimple)
        );
        // brute force still works on non-semisimple input: only the eigenline
        assert_eq!(
            invariant_subspaces_of_dim(&jordan, 1, EnumerationMode::BruteForce, budget)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, 3), 4);
        assert_eq!(gaussian_binomial(6, 3, 2), 1395);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 4, 2), 0);
    }

    #[test]
    fn eigenvalue_one() {
        assert!(has_eigenvalue_one(&MatrixFp::identity(3, pr(5))).unwrap());
        assert!(!has_eigenvalue_one(&MatrixFp::scalar(2, 2, pr(3))).unwrap());
        let t = companion_matrix(&cyclotomic_mod(pr(5), pr(2)).unwrap()).unwrap();
        assert!(!has_eigenvalue_one(&t).unwrap());
    }
}
