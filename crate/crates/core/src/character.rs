//! Explicit character computations for tiny cyclic quivers.
//!
//! Torus characters are Laurent polynomials in the variables of all nodes,
//! grouped node by node. The graded character of `C[p]` is decomposed into
//! irreducible characters of `K = GL_{n_1} x ... x GL_{n_k}` by peeling off
//! leading monomials, and the harmonic multiplicities follow by multiplying
//! with `prod_{i=1}^{n} (1 - q^{k i})`.
//!
//! For `k = 1` the harmonic multiplicities are Kostant's generalized
//! exponents, computed independently by Hesselink's alternating sum of the
//! `q`-Kostant partition function.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Basis, Partition, WeightVector};
use crate::error::{Error, Result};
use crate::qseries::{euler_factor_finite, QSeries};
use crate::stable::{KType, NodePair};

/// Largest `dim p` the oracle accepts.
pub const MAX_P_DIM: usize = 12;
/// Largest degree the oracle accepts.
pub const MAX_DEGREE: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuiverConfig {
    dims: Vec<usize>,
}

impl QuiverConfig {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidQuiver("at least one node is required".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidQuiver("node dimensions must be positive".into()));
        }
        Ok(QuiverConfig { dims })
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `min n_i`.
    pub fn n(&self) -> usize {
        *self.dims.iter().min().expect("nonempty")
    }

    /// Total number of torus variables.
    pub fn nvars(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `sum_i n_i n_{i+1}`.
    pub fn p_dim(&self) -> usize {
        let k = self.k();
        (0..k).map(|i| self.dims[i] * self.dims[(i + 1) % k]).sum()
    }

    fn offset(&self, node: usize) -> usize {
        self.dims[..node].iter().sum()
    }

    /// Whether every `length(nu_i^+) + length(nu_i^-) <= n_i`.
    pub fn realizes(&self, nu: &KType) -> bool {
        nu.k() == self.k()
            && nu
                .pairs()
                .iter()
                .zip(&self.dims)
                .all(|(p, &n)| p.plus.length() + p.minus.length() <= n)
    }

    fn check_capacity(&self, d: usize) -> Result<()> {
        if self.p_dim() > MAX_P_DIM || d > MAX_DEGREE {
            return Err(Error::Capacity(format!(
                "dim p = {} (max {MAX_P_DIM}), degree {d} (max {MAX_DEGREE})",
                self.p_dim()
            )));
        }
        Ok(())
    }
}

/// Integer Laurent polynomial in a fixed number of variables. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(exponents: Vec<i64>, coeff: i64) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, coeff: i64) {
        assert_eq!(exponents.len(), self.nvars, "exponent length");
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    /// Lexicographically greatest monomial.
    pub fn leading(&self) -> Option<(&Vec<i64>, i64)> {
        self.terms.last_key_value().map(|(e, &c)| (e, c))
    }

    /// Value at `x_1 = ... = x_n = 1`.
    pub fn evaluate_at_ones(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, &v) in &self.terms {
            out.add_term(e.iter().zip(shift).map(|(a, b)| a + b).collect(), v);
        }
        out
    }

    /// Product in disjoint variable sets: `self(x) * other(y)` in `(x, y)`.
    pub fn tensor(&self, other: &LaurentPolynomial) -> Self {
        let mut out = Self::zero(self.nvars + other.nvars);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                out.add_term(a.iter().chain(b).copied().collect(), ca * cb);
            }
        }
        out
    }

    /// Exact quotient by `x_a - x_b`. Panics if the division is not exact.
    fn div_difference(&self, a: usize, b: usize) -> Self {
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.nvars);
        while !rem.is_zero() {
            let top = rem.terms.keys().map(|e| e[a]).max().expect("nonempty");
            let layer: Vec<(Vec<i64>, i64)> = rem
                .terms
                .iter()
                .filter(|(e, _)| e[a] == top)
                .map(|(e, &c)| (e.clone(), c))
                .collect();
            for (mut e, c) in layer {
                e[a] -= 1;
                quotient.add_term(e.clone(), c);
                rem.add_term(
                    {
                        let mut up = e.clone();
                        up[a] += 1;
                        up
                    },
                    -c,
                );
                e[b] += 1;
                rem.add_term(e, c);
            }
            assert!(
                rem.terms.keys().all(|e| e[a] < top),
                "division by x_{a} - x_{b} is not exact"
            );
        }
        quotient
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &rhs.scale(-1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

/// A dominant weight of `GL_n`: weakly decreasing integers, negatives allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct RationalWeight {
    entries: Vec<i64>,
}

impl RationalWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(entries));
        }
        Ok(RationalWeight { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// `(nu^+, nu^-)` with `nu^+` the positive entries and `nu^-` the negated
    /// negative entries read from the end.
    pub fn to_pair(&self) -> NodePair {
        let plus: Vec<usize> = self.entries.iter().filter(|&&a| a > 0).map(|&a| a as usize).collect();
        let minus: Vec<usize> = self.entries.iter().rev().filter(|&&a| a < 0).map(|&a| (-a) as usize).collect();
        NodePair::new(
            Partition::new(plus).expect("dominant"),
            Partition::new(minus).expect("dominant"),
        )
    }
}

impl TryFrom<Vec<i64>> for RationalWeight {
    type Error = Error;

    fn try_from(entries: Vec<i64>) -> Result<Self> {
        RationalWeight::new(entries)
    }
}

impl From<RationalWeight> for Vec<i64> {
    fn from(w: RationalWeight) -> Self {
        w.entries
    }
}

/// `(nu^+ parts, 0, ..., 0, -nu^- parts reversed)` of length `n`.
pub fn rational_weight(nu_plus: &Partition, nu_minus: &Partition, n: usize) -> Result<RationalWeight> {
    let used = nu_plus.length() + nu_minus.length();
    if used > n {
        return Err(Error::Stability(format!(
            "({nu_plus}, {nu_minus}) needs {used} rows but GL_{n} has {n}"
        )));
    }
    let mut entries: Vec<i64> = nu_plus.parts().iter().map(|&a| a as i64).collect();
    entries.resize(n - nu_minus.length(), 0);
    entries.extend(nu_minus.parts().iter().rev().map(|&b| -(b as i64)));
    RationalWeight::new(entries)
}

/// Character of the irreducible `GL_n` representation of highest weight `w`,
/// as the bialternant `det(x_j^{w_i + n - i}) / det(x_j^{n - i})`.
pub fn schur_rational(w: &RationalWeight) -> LaurentPolynomial {
    let n = w.n();
    let low = *w.entries.last().expect("nonempty");
    // shift to a polynomial weight, divide, then shift back
    let shifted: Vec<i64> = w.entries.iter().map(|&a| a - low).collect();
    let mut alternant = LaurentPolynomial::zero(n);
    for perm in (0..n).permutations(n) {
        let mut exps = vec![0i64; n];
        for (i, &var) in perm.iter().enumerate() {
            exps[var] = shifted[i] + (n - 1 - i) as i64;
        }
        alternant.add_term(exps, permutation_sign(&perm));
    }
    let mut quotient = alternant;
    for a in 0..n {
        for b in a + 1..n {
            quotient = quotient.div_difference(a, b);
        }
    }
    quotient.shift(&vec![low; n])
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Weyl dimension formula `prod_{i<j} (w_i - w_j + j - i) / (j - i)`.
pub fn weyl_dimension(w: &RationalWeight) -> u64 {
    let e = &w.entries;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            num *= (e[i] - e[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    (num / den) as u64
}

/// Character of a K-type: the product of the node characters.
pub fn ktype_character(cfg: &QuiverConfig, nu: &KType) -> Result<LaurentPolynomial> {
    let mut out = LaurentPolynomial::one(0);
    for (pair, &n) in nu.pairs().iter().zip(cfg.dims()) {
        out = out.tensor(&schur_rational(&rational_weight(&pair.plus, &pair.minus, n)?));
    }
    Ok(out)
}

/// Dimension of a K-type on the given quiver.
pub fn ktype_dimension(cfg: &QuiverConfig, nu: &KType) -> Result<u64> {
    nu.pairs()
        .iter()
        .zip(cfg.dims())
        .map(|(p, &n)| rational_weight(&p.plus, &p.minus, n).map(|w| weyl_dimension(&w)))
        .product()
}

/// Torus weights of the coordinate functions on `p`: on `Hom(V_i, V_{i+1})`
/// they are `x^{(i)}_s / x^{(i+1)}_r`.
fn coordinate_weights(cfg: &QuiverConfig) -> Vec<Vec<i64>> {
    let k = cfg.k();
    let nvars = cfg.nvars();
    let mut out = Vec::with_capacity(cfg.p_dim());
    for i in 0..k {
        let j = (i + 1) % k;
        for s in 0..cfg.dims[i] {
            for r in 0..cfg.dims[j] {
                let mut e = vec![0i64; nvars];
                e[cfg.offset(i) + s] += 1;
                e[cfg.offset(j) + r] -= 1;
                out.push(e);
            }
        }
    }
    out
}

/// Character of the degree-`d` polynomials on `p`: the complete homogeneous
/// symmetric function `h_d` of the coordinate weights.
pub fn graded_coordinate_character(cfg: &QuiverConfig, d: usize) -> Result<LaurentPolynomial> {
    cfg.check_capacity(d)?;
    let weights = coordinate_weights(cfg);
    let nvars = cfg.nvars();
    if d == 0 {
        return Ok(LaurentPolynomial::one(nvars));
    }
    let mut out = LaurentPolynomial::zero(nvars);
    for combo in (0..weights.len()).combinations_with_replacement(d) {
        let mut e = vec![0i64; nvars];
        for idx in combo {
            for (acc, w) in e.iter_mut().zip(&weights[idx]) {
                *acc += w;
            }
        }
        out.add_term(e, 1);
    }
    Ok(out)
}

/// Decomposes a K-character into irreducibles by repeatedly removing the
/// character of its lexicographically greatest monomial.
pub fn decompose_into_ktypes(ch: &LaurentPolynomial, cfg: &QuiverConfig) -> Result<BTreeMap<KType, u64>> {
    if ch.nvars() != cfg.nvars() {
        return Err(Error::NotACharacter(format!(
            "{} variables, quiver has {}",
            ch.nvars(),
            cfg.nvars()
        )));
    }
    let mut schur_cache: HashMap<RationalWeight, LaurentPolynomial> = HashMap::new();
    let mut rest = ch.clone();
    let mut out = BTreeMap::new();
    while let Some((lead, coeff)) = rest.leading() {
        if coeff < 0 {
            return Err(Error::NotACharacter(format!("negative multiplicity {coeff} at {lead:?}")));
        }
        let mut blocks = Vec::with_capacity(cfg.k());
        let mut product = LaurentPolynomial::one(0);
        for (node, &n) in cfg.dims().iter().enumerate() {
            let start = cfg.offset(node);
            let w = RationalWeight::new(lead[start..start + n].to_vec())
                .map_err(|_| Error::NotACharacter(format!("leading monomial {lead:?} is not dominant")))?;
            let chi = schur_cache.entry(w.clone()).or_insert_with(|| schur_rational(&w));
            product = product.tensor(chi);
            blocks.push(w.to_pair());
        }
        rest = &rest - &product.scale(coeff);
        *out.entry(KType::new(blocks)?).or_insert(0) += coeff as u64;
    }
    Ok(out)
}

/// Multiplicities of every K-type in `C[p]`, degree by degree.
pub fn graded_ktype_table(cfg: &QuiverConfig, max_degree: usize) -> Result<Vec<BTreeMap<KType, u64>>> {
    (0..=max_degree)
        .map(|d| decompose_into_ktypes(&graded_coordinate_character(cfg, d)?, cfg))
        .collect()
}

/// Harmonic multiplicity series of every K-type occurring in `C[p]` up to
/// `max_degree`: the coordinate-ring series times `prod_{i=1}^{n} (1 - q^{k i})`.
/// Degrees above `n` are allowed; the result is exact as long as the
/// invariants are polynomial on generators of degrees `k, 2k, ..., nk`.
pub fn harmonic_table(cfg: &QuiverConfig, max_degree: usize) -> Result<BTreeMap<KType, QSeries>> {
    let table = graded_ktype_table(cfg, max_degree)?;
    let invariants = euler_factor_finite(cfg.k(), cfg.n(), max_degree);
    let mut raw: BTreeMap<KType, QSeries> = BTreeMap::new();
    for (d, layer) in table.iter().enumerate() {
        for (nu, &m) in layer {
            raw.entry(nu.clone())
                .or_insert_with(|| QSeries::zero(max_degree))
                .add_to_coeff(d, m);
        }
    }
    Ok(raw.into_iter().map(|(nu, s)| (nu, &invariants * &s)).collect())
}

/// Graded multiplicity of `nu` in the harmonics, up to degree `max_degree <= n`.
pub fn harmonic_multiplicity_oracle(cfg: &QuiverConfig, nu: &KType, max_degree: usize) -> Result<QSeries> {
    if max_degree > cfg.n() {
        return Err(Error::Stability(format!(
            "degree {max_degree} exceeds n = {}",
            cfg.n()
        )));
    }
    if nu.k() != cfg.k() {
        return Err(Error::InvalidKType(format!("K-type has {} nodes, quiver has {}", nu.k(), cfg.k())));
    }
    if !cfg.realizes(nu) {
        return Err(Error::Stability(format!("{nu} is not a representation of K for dims {:?}", cfg.dims())));
    }
    Ok(harmonic_table(cfg, max_degree)?
        .remove(nu)
        .unwrap_or_else(|| QSeries::zero(max_degree)))
}

/// Largest degree through which the finite harmonics agree with the stable
/// series: `n` for `k >= 2`, `n - 1` for `k = 1`. For one node the shape
/// `lambda_i = lambda_{i-1}` only needs `l(lambda) <= d`, so rank `n` stops
/// seeing the tuples of degree `n` (e.g. `q^3` for the adjoint of GL_3).
pub fn stable_range(cfg: &QuiverConfig) -> usize {
    if cfg.k() == 1 {
        cfg.n().saturating_sub(1)
    } else {
        cfg.n()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub ktype: KType,
    pub oracle: QSeries,
    pub stable: QSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Compare oracle and stable series through `max_degree`. With `nus = None`
/// every realizable K-type that could appear (at most `2 * max_degree` boxes)
/// is checked, together with anything the oracle itself produces.
pub fn stable_agreement_sweep(cfg: &QuiverConfig, max_degree: usize, nus: Option<Vec<KType>>) -> Result<SweepReport> {
    if max_degree > cfg.n() {
        return Err(Error::Stability(format!("degree {max_degree} exceeds n = {}", cfg.n())));
    }
    let table = harmonic_table(cfg, max_degree)?;
    let nus = match nus {
        Some(v) => v,
        None => {
            let mut all: Vec<KType> = crate::stable::enumerate_ktypes(cfg.k(), 2 * max_degree)
                .into_iter()
                .filter(|nu| cfg.realizes(nu))
                .collect();
            for nu in table.keys() {
                if !all.contains(nu) {
                    all.push(nu.clone());
                }
            }
            all
        }
    };
    let mut mismatches = Vec::new();
    for nu in &nus {
        let oracle = table.get(nu).cloned().unwrap_or_else(|| QSeries::zero(max_degree));
        let stable = crate::stable::stable_multiplicity(nu, max_degree);
        if oracle != stable {
            mismatches.push(Mismatch { ktype: nu.clone(), oracle, stable });
        }
    }
    Ok(SweepReport { checked: nus.len(), mismatches })
}

/// `sum_m N_m(w) q^m`, `N_m(w)` counting the ways of writing `w` as a sum of
/// `m` positive roots `e_i - e_j` (`i < j <= n`), up to `q^truncation`.
pub fn q_kostant_partition(w: &WeightVector, n: usize, truncation: usize) -> QSeries {
    if w.basis() != Basis::Epsilon || w.support_max() > n {
        return QSeries::zero(truncation);
    }
    let roots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut memo = HashMap::new();
    kostant_rec(0, &w.to_dense(n), &roots, truncation, &mut memo)
}

/// Prefix sums of `v`, or `None` when `v` is not a nonnegative root combination.
fn prefix_sums(v: &[i64]) -> Option<Vec<i64>> {
    let mut acc = 0;
    let mut out = Vec::with_capacity(v.len());
    for &x in v {
        acc += x;
        if acc < 0 {
            return None;
        }
        out.push(acc);
    }
    (acc == 0).then_some(out)
}

fn kostant_rec(
    r: usize,
    v: &[i64],
    roots: &[(usize, usize)],
    truncation: usize,
    memo: &mut HashMap<(usize, Vec<i64>), QSeries>,
) -> QSeries {
    let Some(prefix) = prefix_sums(v) else {
        return QSeries::zero(truncation);
    };
    if r == roots.len() {
        return if v.iter().all(|&x| x == 0) { QSeries::one(truncation) } else { QSeries::zero(truncation) };
    }
    let key = (r, v.to_vec());
    if let Some(s) = memo.get(&key) {
        return s.clone();
    }
    let (i, j) = roots[r];
    // e_i - e_j lowers prefix sums i..j-1 by one
    let cap = prefix[i..j].iter().copied().min().unwrap_or(0).max(0) as usize;
    let mut out = QSeries::zero(truncation);
    let mut rest = v.to_vec();
    for c in 0..=cap.min(truncation) {
        let tail = kostant_rec(r + 1, &rest, roots, truncation, memo);
        for (d, coeff) in tail.coeffs().iter().enumerate() {
            out.add_to_coeff(d + c, coeff.clone());
        }
        rest[i] -= 1;
        rest[j] += 1;
    }
    memo.insert(key, out.clone());
    out
}

/// Generalized exponents `sum_{w in S_n} sign(w) P_q(w(lam + rho) - rho)` with
/// `rho = (n-1, ..., 1, 0)`.
pub fn hesselink_exponent(lam: &RationalWeight, truncation: usize) -> QSeries {
    let n = lam.n();
    let shifted: Vec<i64> = lam.entries.iter().enumerate().map(|(i, &a)| a + (n - 1 - i) as i64).collect();
    let mut out = QSeries::zero(truncation);
    for perm in (0..n).permutations(n) {
        let mu: Vec<i64> = (0..n).map(|i| shifted[perm[i]] - (n - 1 - i) as i64).collect();
        if prefix_sums(&mu).is_none() {
            continue;
        }
        let p = q_kostant_partition(&WeightVector::from_dense(Basis::Epsilon, mu), n, truncation);
        out = if permutation_sign(&perm) > 0 { &out + &p } else { &out - &p };
    }
    out
}
