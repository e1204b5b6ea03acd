//! Partitions, finitely supported integer weight vectors and the two bases
//! used to write them.
//!
//! A weight `a_1 e_1 + a_2 e_2 + ...` (the epsilon basis) is rewritten in the
//! fundamental-weight basis `w_i = e_1 + ... + e_i` as `b_i = a_i - a_{i+1}`.
//! In omega coordinates the containment order on partitions becomes the
//! componentwise product order on `Z^inf`, which also makes sense for
//! non-dominant weights such as tableau weights.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing finite sequence of positive integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The single column `(1^m)`.
    pub fn column(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Young diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && (0..other.length()).all(|i| self.parts[i] >= other.parts[i])
    }

    pub fn to_epsilon(&self) -> WeightVector {
        WeightVector::from_dense(Basis::Epsilon, self.parts.iter().map(|&p| p as i64))
    }

    pub fn to_omega(&self) -> WeightVector {
        epsilon_to_omega(&self.to_epsilon()).expect("epsilon basis")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    Epsilon,
    Omega,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Epsilon => write!(f, "epsilon"),
            Basis::Omega => write!(f, "omega"),
        }
    }
}

/// A finitely supported vector in `Z^inf`, indexed from 1, tagged with the
/// basis its coordinates refer to. Zero coordinates are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    coords: BTreeMap<usize, i64>,
    basis: Basis,
}

impl WeightVector {
    pub fn zero(basis: Basis) -> Self {
        WeightVector { coords: BTreeMap::new(), basis }
    }

    /// Unit vector `e_i`.
    pub fn epsilon(i: usize) -> Self {
        let mut w = Self::zero(Basis::Epsilon);
        w.add_at(i, 1);
        w
    }

    /// Unit vector `w_i` in omega coordinates.
    pub fn omega(i: usize) -> Self {
        let mut w = Self::zero(Basis::Omega);
        w.add_at(i, 1);
        w
    }

    /// Dense coordinates, the first value being index 1.
    pub fn from_dense(basis: Basis, values: impl IntoIterator<Item = i64>) -> Self {
        let mut w = Self::zero(basis);
        for (i, v) in values.into_iter().enumerate() {
            w.add_at(i + 1, v);
        }
        w
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn get(&self, i: usize) -> i64 {
        self.coords.get(&i).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, i: usize, delta: i64) {
        assert!(i >= 1, "weight vectors are indexed from 1");
        let v = self.coords.entry(i).or_insert(0);
        *v += delta;
        if *v == 0 {
            self.coords.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Largest index with a nonzero coordinate, 0 for the zero vector.
    pub fn support_max(&self) -> usize {
        self.coords.keys().next_back().copied().unwrap_or(0)
    }

    /// Nonzero `(index, value)` pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coords.iter().map(|(&i, &v)| (i, v))
    }

    /// Dense coordinates `1..=len`.
    pub fn to_dense(&self, len: usize) -> Vec<i64> {
        (1..=len).map(|i| self.get(i)).collect()
    }

    pub fn expect_basis(&self, expected: Basis) -> Result<()> {
        if self.basis == expected {
            Ok(())
        } else {
            Err(Error::WrongBasis { expected, found: self.basis })
        }
    }

    fn combine(&self, other: &WeightVector, sign: i64) -> WeightVector {
        assert_eq!(self.basis, other.basis, "weight vector basis mismatch");
        let mut out = self.clone();
        for (i, v) in other.iter() {
            out.add_at(i, sign * v);
        }
        out
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;

    /// Panics if the bases differ.
    fn add(self, rhs: &WeightVector) -> WeightVector {
        self.combine(rhs, 1)
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;

    /// Panics if the bases differ.
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        self.combine(rhs, -1)
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;

    fn neg(self) -> WeightVector {
        WeightVector::zero(self.basis).combine(self, -1)
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.basis {
            Basis::Epsilon => "ε",
            Basis::Omega => "ω",
        };
        write!(f, "{tag}{:?}", self.to_dense(self.support_max()))
    }
}

/// `b_i = a_i - a_{i+1}`.
pub fn epsilon_to_omega(w: &WeightVector) -> Result<WeightVector> {
    w.expect_basis(Basis::Epsilon)?;
    let top = w.support_max();
    Ok(WeightVector::from_dense(
        Basis::Omega,
        (1..=top).map(|i| w.get(i) - w.get(i + 1)),
    ))
}

/// `a_i = sum_{j >= i} b_j`.
pub fn omega_to_epsilon(w: &WeightVector) -> Result<WeightVector> {
    w.expect_basis(Basis::Omega)?;
    let top = w.support_max();
    let mut dense = vec![0i64; top];
    let mut acc = 0;
    for i in (1..=top).rev() {
        acc += w.get(i);
        dense[i - 1] = acc;
    }
    Ok(WeightVector::from_dense(Basis::Epsilon, dense))
}

/// Product order on omega coordinates: `v - u` is componentwise nonnegative.
pub fn leq_omega(u: &WeightVector, v: &WeightVector) -> Result<bool> {
    u.expect_basis(Basis::Omega)?;
    v.expect_basis(Basis::Omega)?;
    let top = u.support_max().max(v.support_max());
    Ok((1..=top).all(|i| v.get(i) >= u.get(i)))
}

/// Componentwise sum of the epsilon coordinates of `p` and `w`.
pub fn partition_shift(p: &Partition, w: &WeightVector) -> Result<WeightVector> {
    w.expect_basis(Basis::Epsilon)?;
    Ok(&p.to_epsilon() + w)
}

/// The partition with these epsilon coordinates, or `None` when they are not
/// weakly decreasing and nonnegative.
pub fn as_partition(w: &WeightVector) -> Result<Option<Partition>> {
    w.expect_basis(Basis::Epsilon)?;
    let top = w.support_max();
    let dense = w.to_dense(top);
    if dense.iter().any(|&a| a < 0) || dense.windows(2).any(|x| x[0] < x[1]) {
        return Ok(None);
    }
    Ok(Some(Partition { parts: dense.into_iter().map(|a| a as usize).collect() }))
}

/// Partitions of exactly `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every partition of size at most `max_size`, ordered by size and then
/// reverse lexicographically.
pub fn enumerate_partitions(max_size: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn eps(values: &[i64]) -> WeightVector {
        WeightVector::from_dense(Basis::Epsilon, values.iter().copied())
    }

    fn om(values: &[i64]) -> WeightVector {
        WeightVector::from_dense(Basis::Omega, values.iter().copied())
    }

    #[test]
    fn change_of_basis_examples() {
        assert_eq!(epsilon_to_omega(&eps(&[3, 1])).unwrap(), om(&[2, 1]));
        assert_eq!(epsilon_to_omega(&eps(&[])).unwrap(), om(&[]));
        assert_eq!(epsilon_to_omega(&WeightVector::epsilon(2)).unwrap(), om(&[-1, 1]));

        assert_eq!(omega_to_epsilon(&om(&[2, 1])).unwrap(), eps(&[3, 1]));
        assert_eq!(omega_to_epsilon(&om(&[1])).unwrap(), eps(&[1]));
        assert_eq!(omega_to_epsilon(&om(&[-1, 1])).unwrap(), eps(&[0, 1]));
    }

    #[test]
    fn conversions_check_basis() {
        assert_eq!(
            epsilon_to_omega(&om(&[1])),
            Err(Error::WrongBasis { expected: Basis::Epsilon, found: Basis::Omega })
        );
        assert!(omega_to_epsilon(&eps(&[1])).is_err());
        assert!(leq_omega(&eps(&[1]), &om(&[1])).is_err());
        assert!(as_partition(&om(&[1])).is_err());
    }

    #[test]
    fn product_order() {
        assert!(leq_omega(&p(&[1]).to_omega(), &p(&[2, 1]).to_omega()).unwrap());
        let two = p(&[2]).to_omega();
        let one_one = p(&[1, 1]).to_omega();
        assert_eq!(two, om(&[2, 0]));
        assert_eq!(one_one, om(&[0, 1]));
        assert!(!leq_omega(&two, &one_one).unwrap());
        assert!(!leq_omega(&one_one, &two).unwrap());
        assert!(leq_omega(&two, &two).unwrap());
    }

    #[test]
    fn shift_and_as_partition() {
        let e2 = WeightVector::epsilon(2);
        assert_eq!(partition_shift(&p(&[1]), &e2).unwrap(), eps(&[1, 1]));
        assert_eq!(partition_shift(&Partition::empty(), &WeightVector::epsilon(1)).unwrap(), eps(&[1]));
        assert_eq!(partition_shift(&p(&[1, 1]), &-&e2).unwrap(), eps(&[1]));

        assert_eq!(as_partition(&eps(&[2, 1, 0])).unwrap(), Some(p(&[2, 1])));
        assert_eq!(as_partition(&eps(&[-1, 1])).unwrap(), None);
        assert_eq!(as_partition(&eps(&[1, 2])).unwrap(), None);
        assert_eq!(as_partition(&eps(&[0, 0])).unwrap(), Some(Partition::empty()));
    }

    #[test]
    fn partition_validation_and_json() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        let back: Partition = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(back, p(&[3, 1, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(
            enumerate_partitions(2),
            vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1])]
        );
        assert_eq!(enumerate_partitions(4).len(), 12);
    }

    /// Independent count of partitions of `n` with parts at most `m`.
    fn count_bounded(n: usize, m: usize) -> usize {
        if n == 0 {
            return 1;
        }
        if m == 0 {
            return 0;
        }
        count_bounded(n, m - 1) + if n >= m { count_bounded(n - m, m) } else { 0 }
    }

    #[test]
    fn enumeration_count_matches_recursive_count() {
        for d in 0..=14 {
            let expected: usize = (0..=d).map(|n| count_bounded(n, n)).sum();
            let got = enumerate_partitions(d);
            assert_eq!(got.len(), expected, "max size {d}");
            let mut dedup = got.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), got.len());
        }
    }

    #[test]
    fn order_agrees_with_difference_being_a_partition() {
        let all = enumerate_partitions(8);
        for mu in &all {
            for lam in &all {
                let by_order = leq_omega(&mu.to_omega(), &lam.to_omega()).unwrap();
                let diff = &lam.to_epsilon() - &mu.to_epsilon();
                let by_difference = as_partition(&diff).unwrap().is_some();
                assert_eq!(by_order, by_difference, "{mu} vs {lam}");
            }
        }
    }

    proptest! {
        #[test]
        fn omega_epsilon_round_trip(values in proptest::collection::vec(-5i64..=5, 0..=20)) {
            let w = eps(&values);
            let back = omega_to_epsilon(&epsilon_to_omega(&w).unwrap()).unwrap();
            prop_assert_eq!(back, w.clone());
            let o = om(&values);
            let back = epsilon_to_omega(&omega_to_epsilon(&o).unwrap()).unwrap();
            prop_assert_eq!(back, o);
        }
    }
}
