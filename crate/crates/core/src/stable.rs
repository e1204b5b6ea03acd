//! Stable graded multiplicities `m_nu^inf(q, k)` of K-types in the harmonics
//! of a cyclic quiver on `k` nodes.
//!
//! A K-type is a `k`-tuple of partition pairs `(nu_i^+, nu_i^-)`. A tableau
//! tuple `T = (T_1^+, T_1^-, ..., T_k^+, T_k^-)` with `T_i^pm` in
//! `SST(nu_i^pm)` is distinguished when the node weights
//! `wt(T_i) = wt(T_i^+) - wt(T_i^-)` sum to zero. For such `T` the admissible
//! parameters `lambda_1` form the cone `lambda_min(T) + P`, and
//!
//! ```text
//! m_nu^inf(q, k) = sum over distinguished T of q^{|lambda_1(T)| + ... + |lambda_k(T)|}
//! ```
//!
//! where `lambda_i(T) = lambda_min(T) + wt(T_2) + ... + wt(T_i)`.
//!
//! Node indices are cyclic with representatives `1..=k`, so node 0 is node `k`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    as_partition, epsilon_to_omega, omega_to_epsilon, partitions_of, Basis, Partition, WeightVector,
};
use crate::crystal::{enumerate_sst, Tableau};
use crate::error::{Error, Result};
use crate::lr::{clr_contains, lr_coefficient_classical, ClrQuery};
use crate::qseries::{euler_factor, partition_series, QSeries};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodePair {
    pub plus: Partition,
    pub minus: Partition,
}

impl NodePair {
    pub fn new(plus: Partition, minus: Partition) -> Self {
        NodePair { plus, minus }
    }
}

/// An irreducible rational representation of `GL_{n_1} x ... x GL_{n_k}`,
/// labelled by one partition pair per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "KTypeJson", into = "KTypeJson")]
pub struct KType {
    pairs: Vec<NodePair>,
}

#[derive(Serialize, Deserialize)]
struct KTypeJson {
    k: usize,
    nu: Vec<NodePair>,
}

impl TryFrom<KTypeJson> for KType {
    type Error = Error;

    fn try_from(raw: KTypeJson) -> Result<Self> {
        if raw.k != raw.nu.len() {
            return Err(Error::InvalidKType(format!(
                "k = {} but {} node pairs were given",
                raw.k,
                raw.nu.len()
            )));
        }
        KType::new(raw.nu)
    }
}

impl From<KType> for KTypeJson {
    fn from(t: KType) -> Self {
        KTypeJson { k: t.pairs.len(), nu: t.pairs }
    }
}

impl KType {
    pub fn new(pairs: Vec<NodePair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidKType("a quiver needs at least one node".into()));
        }
        Ok(KType { pairs })
    }

    /// The trivial representation on `k` nodes.
    pub fn trivial(k: usize) -> Self {
        KType { pairs: vec![NodePair::default(); k.max(1)] }
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[NodePair] {
        &self.pairs
    }

    /// Pair at node `i` (1-based, cyclic).
    pub fn pair(&self, i: usize) -> &NodePair {
        &self.pairs[cyclic(i, self.k())]
    }

    pub fn plus_size(&self) -> usize {
        self.pairs.iter().map(|p| p.plus.size()).sum()
    }

    pub fn minus_size(&self) -> usize {
        self.pairs.iter().map(|p| p.minus.size()).sum()
    }

    pub fn total_boxes(&self) -> usize {
        self.plus_size() + self.minus_size()
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}", p.plus, p.minus)?;
        }
        write!(f, ")")
    }
}

/// 0-based storage index of the 1-based cyclic node `i`.
fn cyclic(i: usize, k: usize) -> usize {
    (i + k - 1) % k
}

/// Every K-type on `k` nodes with at most `max_boxes` boxes in total.
pub fn enumerate_ktypes(k: usize, max_boxes: usize) -> Vec<KType> {
    let slots = 2 * k;
    let mut out = Vec::new();
    for total in 0..=max_boxes {
        // distribute `total` boxes over the 2k slots
        for sizes in compositions(total, slots) {
            let choices: Vec<Vec<Partition>> = sizes.iter().map(|&s| partitions_of(s)).collect();
            for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
                let pairs = pick
                    .chunks(2)
                    .map(|pm| NodePair::new(pm[0].clone(), pm[1].clone()))
                    .collect();
                out.push(KType { pairs });
            }
        }
    }
    out
}

/// Weak compositions of `n` into exactly `parts` parts, lexicographic.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(T_1^+, T_1^-, ..., T_k^+, T_k^-)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<TableauPair>", into = "Vec<TableauPair>")]
pub struct TableauTuple {
    entries: Vec<TableauPair>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableauPair {
    pub plus: Tableau,
    pub minus: Tableau,
}

impl TryFrom<Vec<TableauPair>> for TableauTuple {
    type Error = Error;

    fn try_from(entries: Vec<TableauPair>) -> Result<Self> {
        TableauTuple::new(entries)
    }
}

impl From<TableauTuple> for Vec<TableauPair> {
    fn from(t: TableauTuple) -> Self {
        t.entries
    }
}

impl TableauTuple {
    pub fn new(entries: Vec<TableauPair>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidKType("a tableau tuple needs at least one node".into()));
        }
        Ok(TableauTuple { entries })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Tableau, Tableau)>) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(plus, minus)| TableauPair { plus, minus }).collect())
    }

    /// The all-empty tuple on `k` nodes.
    pub fn empty(k: usize) -> Self {
        TableauTuple { entries: vec![TableauPair::default(); k.max(1)] }
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[TableauPair] {
        &self.entries
    }

    /// Pair at node `i` (1-based, cyclic).
    pub fn pair(&self, i: usize) -> &TableauPair {
        &self.entries[cyclic(i, self.k())]
    }

    pub fn max_entry(&self) -> usize {
        self.entries
            .iter()
            .map(|p| p.plus.max_entry().max(p.minus.max_entry()))
            .max()
            .unwrap_or(0)
    }

    /// The K-type whose shapes this tuple fills.
    pub fn ktype(&self) -> KType {
        KType {
            pairs: self
                .entries
                .iter()
                .map(|p| NodePair::new(p.plus.shape().clone(), p.minus.shape().clone()))
                .collect(),
        }
    }

    fn node_weight(&self, i: usize) -> WeightVector {
        let p = self.pair(i);
        &p.plus.weight() - &p.minus.weight()
    }
}

impl fmt::Display for TableauTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}", p.plus, p.minus)?;
        }
        write!(f, ")")
    }
}

/// `wt(T_i) = wt(T_i^+) - wt(T_i^-)` for node `1 <= i <= k`.
pub fn tuple_weight(t: &TableauTuple, i: usize) -> Result<WeightVector> {
    if i == 0 || i > t.k() {
        return Err(Error::IndexOutOfRange { index: i, k: t.k() });
    }
    Ok(t.node_weight(i))
}

/// Whether the node weights sum to zero.
pub fn is_distinguished(t: &TableauTuple) -> bool {
    let mut total = WeightVector::zero(Basis::Epsilon);
    for i in 1..=t.k() {
        total = &total + &t.node_weight(i);
    }
    total.is_zero()
}

/// `lambda_min`, `lambda_i` and `alpha_i` for a distinguished tuple, taken at
/// `lambda_1 = lambda_min + delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LambdaProfile {
    pub lambda_min: Partition,
    pub lambdas: Vec<Partition>,
    pub alphas: Vec<Partition>,
    pub degree: usize,
}

/// `lambda_i - lambda_1 = wt(T_2) + ... + wt(T_i)` for `i = 1..=k`.
fn partial_sums(t: &TableauTuple) -> Vec<WeightVector> {
    let mut running = WeightVector::zero(Basis::Epsilon);
    let mut out = Vec::with_capacity(t.k());
    for i in 1..=t.k() {
        if i >= 2 {
            running = &running + &t.node_weight(i);
        }
        out.push(running.clone());
    }
    out
}

/// The least `lambda_1` admitting `T`: the coordinatewise maximum, in omega
/// coordinates, of `S_i^pm = eps(T_i^pm) + wt(T_i^+) - sum_{j=2}^{i} wt(T_j)`.
pub fn lambda_min(t: &TableauTuple) -> Result<Partition> {
    if !is_distinguished(t) {
        return Err(Error::NotDistinguished);
    }
    let sums = partial_sums(t);
    let mut bound = WeightVector::zero(Basis::Omega);
    for (idx, running) in sums.iter().enumerate() {
        let pair = t.pair(idx + 1);
        let base = epsilon_to_omega(&(&pair.plus.weight() - running))?;
        for tab in [&pair.plus, &pair.minus] {
            let s = &tab.epsilon_vector() + &base;
            for (j, v) in s.iter() {
                if v > bound.get(j) {
                    bound.add_at(j, v - bound.get(j));
                }
            }
        }
    }
    let eps = omega_to_epsilon(&bound)?;
    as_partition(&eps)?.ok_or_else(|| Error::ProfileNotPartition(format!("lambda_min = {eps:?}")))
}

/// The profile of a distinguished tuple at `lambda_1 = lambda_min(T)`.
pub fn lambda_profile(t: &TableauTuple) -> Result<LambdaProfile> {
    lambda_profile_shifted(t, &Partition::empty())
}

/// The profile at `lambda_1 = lambda_min(T) + delta`.
pub fn lambda_profile_shifted(t: &TableauTuple, delta: &Partition) -> Result<LambdaProfile> {
    let lambda_min = lambda_min(t)?;
    let lambda1 = &lambda_min.to_epsilon() + &delta.to_epsilon();
    let (lambdas, alphas) = reconstruct(t, &lambda1);
    let to_partition = |w: &WeightVector, name: &str, i: usize| {
        as_partition(w)?.ok_or_else(|| Error::ProfileNotPartition(format!("{name}_{i} = {w:?} for {t}")))
    };
    let lambdas = lambdas
        .iter()
        .enumerate()
        .map(|(i, w)| to_partition(w, "lambda", i + 1))
        .collect::<Result<Vec<_>>>()?;
    let alphas = alphas
        .iter()
        .enumerate()
        .map(|(i, w)| to_partition(w, "alpha", i + 1))
        .collect::<Result<Vec<_>>>()?;
    let degree = lambdas.iter().map(Partition::size).sum();
    Ok(LambdaProfile { lambda_min, lambdas, alphas, degree })
}

/// `lambda_i = lambda_1 + sum_{j=2}^i wt(T_j)` and `alpha_i = lambda_i - wt(T_i^+)`
/// as epsilon vectors.
fn reconstruct(t: &TableauTuple, lambda1: &WeightVector) -> (Vec<WeightVector>, Vec<WeightVector>) {
    let lambdas: Vec<WeightVector> = partial_sums(t).iter().map(|s| lambda1 + s).collect();
    let alphas = lambdas
        .iter()
        .enumerate()
        .map(|(idx, l)| l - &t.pair(idx + 1).plus.weight())
        .collect();
    (lambdas, alphas)
}

/// Whether `T` lies in the product of CLR sets determined by `lambda_1`:
/// every `lambda_i`, `alpha_i` is a partition, `T_i^+` is in
/// `CLR^{lambda_i}_{alpha_i, nu_i^+}` and `T_i^-` is in
/// `CLR^{lambda_{i-1}}_{alpha_i, nu_i^-}`.
pub fn admits(t: &TableauTuple, lambda1: &Partition) -> bool {
    let (lambdas, alphas) = reconstruct(t, &lambda1.to_epsilon());
    let Some(lambdas) = lambdas.iter().map(|w| as_partition(w).ok().flatten()).collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    let Some(alphas) = alphas.iter().map(|w| as_partition(w).ok().flatten()).collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    let k = t.k();
    (1..=k).all(|i| {
        let pair = t.pair(i);
        let alpha = &alphas[cyclic(i, k)];
        clr_contains(&pair.plus, alpha, &lambdas[cyclic(i, k)])
            && clr_contains(&pair.minus, alpha, &lambdas[cyclic(i + k - 1, k)])
    })
}

/// One candidate tableau with its weight in dense epsilon coordinates.
struct Candidate {
    tableau: Tableau,
    weight: Vec<i64>,
}

struct Slot {
    sign: i64,
    candidates: Vec<Candidate>,
    boxes: usize,
}

/// Tableau sets for `T_1^+, T_1^-, ..., T_k^+, T_k^-` with entries bounded by
/// `max_entry`.
fn build_slots(nu: &KType, max_entry: usize) -> Vec<Slot> {
    nu.pairs()
        .iter()
        .flat_map(|p| [(&p.plus, 1i64), (&p.minus, -1i64)])
        .map(|(shape, sign)| Slot {
            sign,
            boxes: shape.size(),
            candidates: enumerate_sst(shape, max_entry)
                .into_iter()
                .map(|tableau| {
                    let w = tableau.weight();
                    Candidate { weight: w.to_dense(max_entry), tableau }
                })
                .collect(),
        })
        .collect()
}

struct Search<'a> {
    slots: &'a [Slot],
    /// `remaining[s]` = (plus boxes, minus boxes) in slots `s..`.
    remaining: Vec<(usize, usize)>,
    max_degree: usize,
}

impl Search<'_> {
    fn new(slots: &[Slot], max_degree: usize) -> Search<'_> {
        let mut remaining = vec![(0, 0); slots.len() + 1];
        for s in (0..slots.len()).rev() {
            let (p, m) = remaining[s + 1];
            remaining[s] = if slots[s].sign > 0 { (p + slots[s].boxes, m) } else { (p, m + slots[s].boxes) };
        }
        Search { slots, remaining, max_degree }
    }

    /// A zero total is still reachable: the positive excess must be absorbed
    /// by the remaining minus boxes and the negative excess by plus boxes.
    fn feasible(&self, slot: usize, sum: &[i64]) -> bool {
        let (plus_left, minus_left) = self.remaining[slot];
        let pos: i64 = sum.iter().filter(|&&v| v > 0).sum();
        let neg: i64 = -sum.iter().filter(|&&v| v < 0).sum::<i64>();
        pos as usize <= minus_left && neg as usize <= plus_left
    }

    fn run(
        &self,
        slot: usize,
        sum: &mut Vec<i64>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<(TableauTuple, LambdaProfile)>,
    ) {
        if !self.feasible(slot, sum) {
            return;
        }
        if slot == self.slots.len() {
            debug_assert!(sum.iter().all(|&v| v == 0));
            let tuple = TableauTuple::from_pairs(chosen.chunks(2).enumerate().map(|(i, pm)| {
                (
                    self.slots[2 * i].candidates[pm[0]].tableau.clone(),
                    self.slots[2 * i + 1].candidates[pm[1]].tableau.clone(),
                )
            }))
            .expect("nonempty");
            let profile = lambda_profile(&tuple).expect("distinguished tuples have partition profiles");
            if profile.degree <= self.max_degree {
                out.push((tuple, profile));
            }
            return;
        }
        let s = &self.slots[slot];
        for (idx, cand) in s.candidates.iter().enumerate() {
            for (acc, w) in sum.iter_mut().zip(&cand.weight) {
                *acc += s.sign * w;
            }
            chosen.push(idx);
            self.run(slot + 1, sum, chosen, out);
            chosen.pop();
            for (acc, w) in sum.iter_mut().zip(&cand.weight) {
                *acc -= s.sign * w;
            }
        }
    }
}

/// Every distinguished tuple for `nu` whose profile degree is at most
/// `max_degree`, with its profile.
///
/// An entry `m` in `T_i^+` forces `lambda_i` to have at least `m` rows (and
/// in `T_i^-` forces the same of `lambda_{i-1}`), so the degree is at least
/// the largest entry and bounding entries by `max_degree` loses nothing.
pub fn enumerate_distinguished(nu: &KType, max_degree: usize) -> Vec<(TableauTuple, LambdaProfile)> {
    let slots = build_slots(nu, max_degree);
    let search = Search::new(&slots, max_degree);
    let mut out = Vec::new();
    search.run(0, &mut vec![0; max_degree], &mut Vec::new(), &mut out);
    out
}

/// [`enumerate_distinguished`] with the first slot split across a pool of
/// `threads` workers. Output order does not depend on the thread count.
pub fn enumerate_distinguished_with_threads(
    nu: &KType,
    max_degree: usize,
    threads: usize,
) -> Vec<(TableauTuple, LambdaProfile)> {
    if threads <= 1 {
        return enumerate_distinguished(nu, max_degree);
    }
    let slots = build_slots(nu, max_degree);
    let search = Search::new(&slots, max_degree);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let first = &slots[0];
    let parts: Vec<Vec<(TableauTuple, LambdaProfile)>> = pool.install(|| {
        (0..first.candidates.len())
            .into_par_iter()
            .map(|idx| {
                let mut sum: Vec<i64> = first.candidates[idx].weight.iter().map(|w| first.sign * w).collect();
                let mut out = Vec::new();
                search.run(1, &mut sum, &mut vec![idx], &mut out);
                out
            })
            .collect()
    });
    parts.into_iter().flatten().collect()
}

fn series_from_profiles(profiles: &[(TableauTuple, LambdaProfile)], max_degree: usize) -> QSeries {
    let mut out = QSeries::zero(max_degree);
    for (_, p) in profiles {
        out.add_to_coeff(p.degree, 1);
    }
    out
}

/// `m_nu^inf(q, k)` up to `q^max_degree`, by counting distinguished tuples.
pub fn stable_multiplicity(nu: &KType, max_degree: usize) -> QSeries {
    series_from_profiles(&enumerate_distinguished(nu, max_degree), max_degree)
}

pub fn stable_multiplicity_with_threads(nu: &KType, max_degree: usize, threads: usize) -> QSeries {
    series_from_profiles(&enumerate_distinguished_with_threads(nu, max_degree, threads), max_degree)
}

/// `sum_{alpha, lambda} q^{sum |lambda_i|} prod_i c^{lambda_i}_{alpha_i, nu_i^+} c^{lambda_{i-1}}_{alpha_i, nu_i^-}`
/// up to `q^max_degree`, with classical Littlewood-Richardson coefficients.
pub fn branching_sum(nu: &KType, max_degree: usize) -> QSeries {
    let k = nu.k();
    let mut out = QSeries::zero(max_degree);
    if nu.plus_size() != nu.minus_size() {
        return out;
    }
    let mut lr_cache: HashMap<ClrQuery, u64> = HashMap::new();
    let mut lr = |lambda: &Partition, alpha: &Partition, nu: &Partition| -> u64 {
        let q = ClrQuery::new(lambda.clone(), alpha.clone(), nu.clone());
        *lr_cache.entry(q).or_insert_with_key(lr_coefficient_classical)
    };
    // sum over alpha_i of c^{lambda_i}_{alpha_i, nu_i^+} c^{lambda_{i-1}}_{alpha_i, nu_i^-}
    let mut node_cache: HashMap<(usize, Partition, Partition), u64> = HashMap::new();
    let mut node_factor = |i: usize, lam: &Partition, lam_prev: &Partition| -> u64 {
        let key = (i, lam.clone(), lam_prev.clone());
        if let Some(&v) = node_cache.get(&key) {
            return v;
        }
        let pair = nu.pair(i);
        let v = match lam.size().checked_sub(pair.plus.size()) {
            Some(a) if lam_prev.size() == a + pair.minus.size() => partitions_of(a)
                .iter()
                .map(|alpha| lr(lam, alpha, &pair.plus) * lr(lam_prev, alpha, &pair.minus))
                .sum(),
            _ => 0,
        };
        node_cache.insert(key, v);
        v
    };

    for s1 in 0..=max_degree {
        // |lambda_i| = |lambda_{i-1}| + |nu_i^+| - |nu_i^-|
        let mut sizes = vec![s1];
        let mut ok = true;
        for i in 2..=k {
            let pair = nu.pair(i);
            match (sizes[i - 2] + pair.plus.size()).checked_sub(pair.minus.size()) {
                Some(s) => sizes.push(s),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        let degree: usize = sizes.iter().sum();
        if !ok || degree > max_degree {
            continue;
        }
        let choices: Vec<Vec<Partition>> = sizes.iter().map(|&s| partitions_of(s)).collect();
        for lambdas in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            let mut term = BigInt::from(1u8);
            for i in 1..=k {
                let f = node_factor(i, lambdas[cyclic(i, k)], lambdas[cyclic(i + k - 1, k)]);
                if f == 0 {
                    term = BigInt::from(0u8);
                    break;
                }
                term *= f;
            }
            out.add_to_coeff(degree, term);
        }
    }
    out
}

/// `m_nu^inf(q, k)` from its definition: the Euler factor
/// `prod_{i >= 1} (1 - q^{k i})` times [`branching_sum`].
pub fn stable_multiplicity_definition(nu: &KType, max_degree: usize) -> QSeries {
    &euler_factor(nu.k(), max_degree) * &branching_sum(nu, max_degree)
}

/// Both sides of the separation identity: the branching sum, and the
/// partition series in `q^k` times the distinguished-tuple count.
pub fn separation_sides(nu: &KType, max_degree: usize) -> (QSeries, QSeries) {
    let lhs = branching_sum(nu, max_degree);
    let rhs = &partition_series(nu.k(), max_degree) * &stable_multiplicity(nu, max_degree);
    (lhs, rhs)
}

pub fn separation_check(nu: &KType, max_degree: usize) -> bool {
    let (lhs, rhs) = separation_sides(nu, max_degree);
    lhs == rhs
}
