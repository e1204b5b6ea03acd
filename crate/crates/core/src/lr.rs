//! Littlewood-Richardson coefficients `c^lambda_{alpha,nu}`, computed two ways.
//!
//! The crystal count enumerates `T` in `SST(nu)` with `alpha >= eps(T)` in the
//! omega product order and `alpha + wt(T) = lambda`. The classical count
//! enumerates skew fillings of `lambda / alpha` with content `nu` whose
//! reverse reading word is a lattice word. The two share no code beyond
//! [`Partition`].

use serde::{Deserialize, Serialize};

use crate::combinatorics::{leq_omega, partition_shift, Partition};
use crate::crystal::{enumerate_sst, Tableau};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClrQuery {
    pub lambda: Partition,
    pub alpha: Partition,
    pub nu: Partition,
}

impl ClrQuery {
    pub fn new(lambda: Partition, alpha: Partition, nu: Partition) -> Self {
        ClrQuery { lambda, alpha, nu }
    }
}

/// Whether `T` lies in `CLR^lambda_{alpha, shape(T)}`.
pub fn clr_contains(t: &Tableau, alpha: &Partition, lambda: &Partition) -> bool {
    let dominated = leq_omega(&t.epsilon_vector(), &alpha.to_omega()).expect("omega basis");
    dominated && partition_shift(alpha, &t.weight()).expect("epsilon basis") == lambda.to_epsilon()
}

/// `|CLR^lambda_{alpha,nu}|`.
///
/// Entries above `length(lambda)` would leave a positive coordinate of
/// `alpha + wt(T)` past the last row of `lambda`, so they are never generated.
pub fn lr_coefficient_crystal(q: &ClrQuery) -> u64 {
    if q.alpha.size() + q.nu.size() != q.lambda.size() {
        return 0;
    }
    enumerate_sst(&q.nu, q.lambda.length())
        .iter()
        .filter(|t| clr_contains(t, &q.alpha, &q.lambda))
        .count() as u64
}

/// Classical skew lattice-word rule.
pub fn lr_coefficient_classical(q: &ClrQuery) -> u64 {
    let (lambda, alpha, nu) = (&q.lambda, &q.alpha, &q.nu);
    if !lambda.contains(alpha) || alpha.size() + nu.size() != lambda.size() {
        return 0;
    }
    if nu.is_empty() {
        return 1;
    }
    // Cells of lambda/alpha in reverse reading order: rows top to bottom,
    // each row right to left. Filling in this order lets the lattice
    // condition be checked one letter at a time.
    let cells: Vec<(usize, usize)> = (0..lambda.length())
        .flat_map(|r| (alpha.part(r)..lambda.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = (0..lambda.length()).map(|r| vec![0; lambda.part(r)]).collect();
    let mut counts = vec![0usize; nu.length() + 1];

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        alpha: &Partition,
        nu: &Partition,
        grid: &mut Vec<Vec<usize>>,
        counts: &mut Vec<usize>,
    ) -> u64 {
        let Some(&(r, c)) = cells.get(idx) else {
            return 1;
        };
        let mut hi = nu.length();
        if c + 1 < grid[r].len() {
            hi = hi.min(grid[r][c + 1]);
        }
        let lo = if r > 0 && c >= alpha.part(r - 1) { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in lo..=hi {
            if counts[v] >= nu.part(v - 1) || (v > 1 && counts[v] >= counts[v - 1]) {
                continue;
            }
            counts[v] += 1;
            grid[r][c] = v;
            total += rec(idx + 1, cells, alpha, nu, grid, counts);
            counts[v] -= 1;
        }
        grid[r][c] = 0;
        total
    }

    rec(0, &cells, alpha, nu, &mut grid, &mut counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_partitions;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(l: &[usize], a: &[usize], n: &[usize]) -> ClrQuery {
        ClrQuery::new(p(l), p(a), p(n))
    }

    fn t(rows: &[&[usize]]) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn clr_membership_examples() {
        assert!(clr_contains(&t(&[&[1]]), &Partition::empty(), &p(&[1])));
        assert!(clr_contains(&t(&[&[2]]), &p(&[1]), &p(&[1, 1])));
        for lam in enumerate_partitions(3) {
            assert!(!clr_contains(&t(&[&[2]]), &Partition::empty(), &lam));
        }
    }

    #[test]
    fn crystal_examples() {
        for lam in enumerate_partitions(4) {
            for nu in enumerate_partitions(4) {
                let expected = u64::from(lam == nu);
                assert_eq!(lr_coefficient_crystal(&ClrQuery::new(lam.clone(), Partition::empty(), nu)), expected);
            }
        }
        assert_eq!(lr_coefficient_crystal(&q(&[2, 1], &[1], &[1, 1])), 1);
        assert_eq!(lr_coefficient_crystal(&q(&[3, 2, 1], &[2, 1], &[2, 1])), 2);
    }

    #[test]
    fn classical_examples() {
        assert_eq!(lr_coefficient_classical(&q(&[2, 2], &[2, 1], &[1])), 1);
        assert_eq!(lr_coefficient_classical(&q(&[2], &[1], &[1])), 1);
        assert_eq!(lr_coefficient_classical(&q(&[1, 1], &[1], &[1])), 1);
        assert_eq!(lr_coefficient_classical(&q(&[2, 1], &[3], &[])), 0);
        assert_eq!(lr_coefficient_classical(&q(&[3, 2, 1], &[2, 1], &[2, 1])), 2);
        assert_eq!(lr_coefficient_classical(&q(&[2, 1], &[1], &[1, 1])), 1);
        // s_21 * s_21 = s_42 + s_411 + s_33 + 2 s_321 + s_3111 + s_222 + s_2211
        for (lam, c) in [
            (vec![4, 2], 1),
            (vec![4, 1, 1], 1),
            (vec![3, 3], 1),
            (vec![3, 2, 1], 2),
            (vec![3, 1, 1, 1], 1),
            (vec![2, 2, 2], 1),
            (vec![2, 2, 1, 1], 1),
            (vec![2, 1, 1, 1, 1], 0),
            (vec![6], 0),
        ] {
            assert_eq!(lr_coefficient_classical(&ClrQuery::new(p(&lam), p(&[2, 1]), p(&[2, 1]))), c, "{lam:?}");
        }
    }

    #[test]
    fn crystal_and_classical_agree_small() {
        let all = enumerate_partitions(5);
        for lam in &all {
            for alpha in &all {
                for nu in &all {
                    let query = ClrQuery::new(lam.clone(), alpha.clone(), nu.clone());
                    assert_eq!(lr_coefficient_crystal(&query), lr_coefficient_classical(&query), "{query:?}");
                }
            }
        }
    }

    #[test]
    fn symmetry_in_alpha_and_nu() {
        let all = enumerate_partitions(6);
        for lam in all.iter().filter(|l| l.size() == 6) {
            for alpha in &all {
                for nu in all.iter().filter(|n| n.size() + alpha.size() == 6) {
                    let a = lr_coefficient_classical(&ClrQuery::new(lam.clone(), alpha.clone(), nu.clone()));
                    let b = lr_coefficient_classical(&ClrQuery::new(lam.clone(), nu.clone(), alpha.clone()));
                    assert_eq!(a, b);
                }
            }
        }
    }
}
