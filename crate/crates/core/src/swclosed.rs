//! Closed-form Stiefel–Whitney data in terms of column intersection counts
//! `k_S = |{rows with a 1 in every column of S}|`.
//!
//! Coefficient tables are taken modulo the ideal `I` (before reduction by
//! the simplex relations). When every `n_i ≥ m` the ideal has no elements
//! in degree `m`, so the tables are then the classes themselves.
//!
//! All predicates split by block size per index (`n_i = 1` versus `n_i > 1`)
//! and never assume that the one-dimensional factors come first.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::binom_parity;
use crate::model::{require_valid, ReducedMatrix};
use crate::poly::{GradedPolynomial, Monomial};

fn odd(x: usize) -> bool {
    x & 1 == 1
}

/// `C(n, r) mod 2` for machine-sized counts.
fn c2(n: usize, r: usize) -> bool {
    binom_parity(n as u64, r as u64)
}

/// Column intersection counts of one matrix, computed once.
#[derive(Clone, Debug)]
pub struct Counts<'a> {
    a: &'a ReducedMatrix,
    single: Vec<usize>,
    pair: Vec<Vec<usize>>,
}

impl<'a> Counts<'a> {
    pub fn new(a: &'a ReducedMatrix) -> Self {
        let k = a.k();
        let single = (0..k).map(|i| a.column(i).count_ones()).collect();
        let pair = (0..k)
            .map(|i| (0..k).map(|j| a.column(i).and_count(a.column(j))).collect())
            .collect();
        Counts { a, single, pair }
    }

    pub fn k(&self, i: usize) -> usize {
        self.single[i]
    }

    pub fn k2(&self, i: usize, j: usize) -> usize {
        self.pair[i][j]
    }

    pub fn k3(&self, i: usize, j: usize, l: usize) -> usize {
        let mut v = self.a.column(i).clone();
        v.and_assign(self.a.column(j));
        v.and_count(self.a.column(l))
    }

    /// `k_S` for an arbitrary nonempty set.
    pub fn k_of(&self, s: &[usize]) -> usize {
        match s {
            [i] => self.k(*i),
            [i, j] => self.k2(*i, *j),
            [i, j, l] => self.k3(*i, *j, *l),
            _ => {
                let mut v = self.a.column(s[0]).clone();
                for &c in &s[1..] {
                    v.and_assign(self.a.column(c));
                }
                v.count_ones()
            }
        }
    }
}

/// Coefficients of one homogeneous class, keyed by sorted index multisets.
/// `[0, 0, 2]` is the coefficient of `x1^2*x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    degree: usize,
    entries: BTreeMap<Vec<usize>, bool>,
}

impl CoeffTable {
    fn new(degree: usize) -> Self {
        CoeffTable {
            degree,
            entries: BTreeMap::new(),
        }
    }

    fn put(&mut self, mut key: Vec<usize>, bit: bool) {
        debug_assert_eq!(key.len(), self.degree);
        key.sort_unstable();
        self.entries.insert(key, bit);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient for an index multiset given in any order.
    pub fn get(&self, key: &[usize]) -> Option<bool> {
        let mut key = key.to_vec();
        key.sort_unstable();
        self.entries.get(&key).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, bool)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    /// Keys with coefficient 1.
    pub fn support(&self) -> Vec<&Vec<usize>> {
        self.entries
            .iter()
            .filter(|(_, &v)| v)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|&v| !v)
    }

    pub fn to_polynomial(&self, k: usize) -> GradedPolynomial {
        GradedPolynomial::from_terms(
            k,
            self.support().into_iter().map(|key| Monomial::from_indices(k, key)),
        )
    }
}

impl fmt::Display for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self
            .entries
            .keys()
            .flat_map(|key| key.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        for (key, &bit) in &self.entries {
            writeln!(f, "{}: {}", Monomial::from_indices(k, key), u8::from(bit))?;
        }
        Ok(())
    }
}

/// `w_1 = Σ (k_i + 1) x_i`.
pub fn w1_coefficients(a: &ReducedMatrix) -> Result<CoeffTable> {
    require_valid(a)?;
    let c = Counts::new(a);
    let mut t = CoeffTable::new(1);
    for i in 0..a.k() {
        t.put(vec![i], !odd(c.k(i)));
    }
    Ok(t)
}

pub fn is_orientable(a: &ReducedMatrix) -> Result<bool> {
    require_valid(a)?;
    Ok((0..a.k()).all(|i| odd(a.column(i).count_ones())))
}

/// `α_i = C(1 + k_i, 2)` on `x_i^2` and `β_ij = (1+k_i)(1+k_j) + k_ij` on `x_i x_j`.
pub fn w2_coefficients(a: &ReducedMatrix) -> Result<CoeffTable> {
    require_valid(a)?;
    let c = Counts::new(a);
    let k = a.k();
    let mut t = CoeffTable::new(2);
    for i in 0..k {
        t.put(vec![i, i], c2(c.k(i) + 1, 2));
        for j in i + 1..k {
            let beta = (!odd(c.k(i)) && !odd(c.k(j))) ^ odd(c.k2(i, j));
            t.put(vec![i, j], beta);
        }
    }
    Ok(t)
}

/// Which condition of the Spin criterion failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    I,
    Ii,
    Iii,
    Iv,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "i",
            Condition::Ii => "ii",
            Condition::Iii => "iii",
            Condition::Iv => "iv",
        })
    }
}

/// A failed condition with its witness: one index for condition i, an
/// ordered pair otherwise (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.indices.as_slice() {
            [v] => write!(f, "condition {} at v{}", self.condition, v + 1),
            idx => write!(
                f,
                "condition {} at {}",
                self.condition,
                crate::model::one_based_tuple(idx)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinReport {
    pub orientable: bool,
    pub spin: bool,
    /// The first violation in evaluation order.
    pub failed: Option<Violation>,
    /// Every violation found. Pair conditions are only evaluated when all
    /// single-index conditions hold.
    pub violations: Vec<Violation>,
}

impl SpinReport {
    pub(crate) fn from_violations(orientable: bool, violations: Vec<Violation>) -> Self {
        SpinReport {
            orientable,
            spin: violations.is_empty(),
            failed: violations.first().cloned(),
            violations,
        }
    }

    pub fn failed_condition(&self) -> Option<Condition> {
        self.failed.as_ref().map(|v| v.condition)
    }
}

impl fmt::Display for SpinReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failed {
            None => f.write_str("spin"),
            Some(v) => write!(f, "not spin ({v})"),
        }
    }
}

/// The scalar entry `v_ij` of a block whose row count is one.
fn scalar(a: &ReducedMatrix, i: usize, j: usize) -> bool {
    a.matrix().get(a.omega().offset(i), j)
}

pub fn has_spin(a: &ReducedMatrix) -> Result<SpinReport> {
    require_valid(a)?;
    let c = Counts::new(a);
    let omega = a.omega();
    let k = a.k();
    let mut violations = Vec::new();
    for i in 0..k {
        let ok = if omega.dim(i) == 1 {
            odd(c.k(i))
        } else {
            c.k(i) % 4 == 3
        };
        if !ok {
            violations.push(Violation {
                condition: Condition::I,
                indices: vec![i],
            });
        }
    }
    let orientable = (0..k).all(|i| odd(c.k(i)));
    if !violations.is_empty() {
        return Ok(SpinReport::from_violations(orientable, violations));
    }
    for i in 0..k {
        for j in i + 1..k {
            let kij = odd(c.k2(i, j));
            let (cond, ok) = match (omega.dim(i) == 1, omega.dim(j) == 1) {
                (false, false) => (Condition::Ii, !kij),
                (true, true) => {
                    let s = usize::from(scalar(a, i, j)) * (c.k(i) + 1)
                        + usize::from(scalar(a, j, i)) * (c.k(j) + 1);
                    (Condition::Iii, kij == odd(s / 2))
                }
                (true, false) => {
                    let s = usize::from(scalar(a, i, j)) * (c.k(i) + 1);
                    (Condition::Iv, kij == odd(s / 2))
                }
                (false, true) => {
                    let s = usize::from(scalar(a, j, i)) * (c.k(j) + 1);
                    (Condition::Iv, kij == odd(s / 2))
                }
            };
            if !ok {
                violations.push(Violation {
                    condition: cond,
                    indices: vec![i, j],
                });
            }
        }
    }
    Ok(SpinReport::from_violations(orientable, violations))
}

/// `k_i ≡ 3 (mod 4)` for all `i` and `k_ij` even for all `i < j`.
pub fn spin_sufficient(a: &ReducedMatrix) -> Result<bool> {
    require_valid(a)?;
    let c = Counts::new(a);
    let k = a.k();
    Ok((0..k).all(|i| c.k(i) % 4 == 3)
        && (0..k).all(|i| (i + 1..k).all(|j| !odd(c.k2(i, j)))))
}

/// Number of one-dimensional factors.
pub fn one_dimensional_factors(a: &ReducedMatrix) -> usize {
    a.omega().dims().iter().filter(|&&d| d == 1).count()
}

fn w3_p(c: &Counts, i: usize, j: usize) -> bool {
    (c2(c.k(i) + 1, 2) && !odd(c.k(j))) ^ (odd(c.k(i)) && odd(c.k2(i, j)))
}

fn w3_q(c: &Counts, t: [usize; 3]) -> bool {
    let big = |i: usize| !odd(c.k(i));
    let mut q = big(t[0]) && big(t[1]) && big(t[2]);
    for p in 0..3 {
        let (r, s) = match p {
            0 => (t[1], t[2]),
            1 => (t[0], t[2]),
            _ => (t[0], t[1]),
        };
        q ^= big(t[p]) && odd(c.k2(r, s));
    }
    q
}

pub fn w3_coefficients(a: &ReducedMatrix) -> Result<CoeffTable> {
    require_valid(a)?;
    let c = Counts::new(a);
    let k = a.k();
    let mut t = CoeffTable::new(3);
    for i in 0..k {
        t.put(vec![i, i, i], c2(c.k(i) + 1, 3));
        for j in 0..k {
            if i != j {
                t.put(vec![i, i, j], w3_p(&c, i, j));
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                t.put(vec![i, j, l], w3_q(&c, [i, j, l]));
            }
        }
    }
    Ok(t)
}

fn require_min_dim(a: &ReducedMatrix, min: usize, what: &str) -> Result<()> {
    if let Some(i) = (0..a.k()).find(|&i| a.omega().dim(i) < min) {
        return Err(Error::Argument(format!(
            "{what} needs every n_i >= {min}, but n_{} = {}",
            i + 1,
            a.omega().dim(i)
        )));
    }
    Ok(())
}

/// Residue conditions for `w_3 = 0` when every `n_i ≥ 3`.
pub fn w3_vanishes_big(a: &ReducedMatrix) -> Result<bool> {
    require_valid(a)?;
    require_min_dim(a, 3, "w3_vanishes_big")?;
    let c = Counts::new(a);
    let k = a.k();
    let r: Vec<usize> = (0..k).map(|i| c.k(i) % 4).collect();
    Ok(w3_residue_conditions(k, &r, |i, j| c.k2(i, j)))
}

/// Shared by the matrix and digraph forms. `r[i] = k_i mod 4`.
pub(crate) fn w3_residue_conditions(k: usize, r: &[usize], k2: impl Fn(usize, usize) -> usize) -> bool {
    if r.iter().any(|&x| x == 2) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            if odd(r[i]) || odd(r[j]) {
                let want = matches!((r[i], r[j]), (0, 1) | (1, 0));
                if odd(k2(i, j)) != want {
                    return false;
                }
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                if r[i] == 0 && r[j] == 0 && r[l] == 0 && !odd(k2(i, j) + k2(i, l) + k2(j, l)) {
                    return false;
                }
            }
        }
    }
    true
}

fn w4_p1(c: &Counts, i: usize, j: usize) -> bool {
    (c2(c.k(i) + 1, 3) && !odd(c.k(j))) ^ (c2(c.k(i), 2) && odd(c.k2(i, j)))
}

fn w4_p2(c: &Counts, i: usize, j: usize) -> bool {
    (c2(c.k(i) + 1, 2) && c2(c.k(j) + 1, 2))
        ^ (odd(c.k(i)) && odd(c.k(j)) && odd(c.k2(i, j)))
        ^ c2(c.k2(i, j), 2)
}

/// Coefficient of `x_{s}^2 x_{u} x_{v}`.
fn w4_q(c: &Counts, s: usize, u: usize, v: usize) -> bool {
    let big = |i: usize| !odd(c.k(i));
    let first = c2(c.k(s) + 1, 2) && ((big(u) && big(v)) ^ odd(c.k2(u, v)));
    let second = odd(c.k(s)) && ((odd(c.k2(s, u)) && big(v)) ^ (odd(c.k2(s, v)) && big(u)));
    first ^ second ^ (odd(c.k2(s, u)) && odd(c.k2(s, v))) ^ odd(c.k3(s, u, v))
}

/// Coefficient of `x_a x_b x_c x_d`, in the form
/// `∏ K_p − Σ_{p<q} K_p K_q k_rs + Σ_{matchings} k_pq k_rs` with `K = k + 1`
/// and `{r, s}` the complement of `{p, q}`. Each unordered pair is counted
/// once, which keeps the halved term integral.
fn w4_r(c: &Counts, t: [usize; 4]) -> bool {
    let big = |i: usize| !odd(c.k(i));
    let mut r = t.iter().all(|&i| big(i));
    for p in 0..4 {
        for q in p + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&x| x != p && x != q).collect();
            r ^= big(t[p]) && big(t[q]) && odd(c.k2(t[rest[0]], t[rest[1]]));
        }
    }
    for (p, q, u, v) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        r ^= odd(c.k2(t[p], t[q])) && odd(c.k2(t[u], t[v]));
    }
    r
}

pub fn w4_coefficients(a: &ReducedMatrix) -> Result<CoeffTable> {
    require_valid(a)?;
    let c = Counts::new(a);
    let k = a.k();
    let mut t = CoeffTable::new(4);
    for i in 0..k {
        t.put(vec![i; 4], c2(c.k(i) + 1, 4));
        for j in 0..k {
            if i == j {
                continue;
            }
            t.put(vec![i, i, i, j], w4_p1(&c, i, j));
            if i < j {
                t.put(vec![i, i, j, j], w4_p2(&c, i, j));
            }
        }
    }
    for s in 0..k {
        for u in 0..k {
            for v in u + 1..k {
                if s != u && s != v {
                    t.put(vec![s, s, u, v], w4_q(&c, s, u, v));
                }
            }
        }
    }
    for a0 in 0..k {
        for b in a0 + 1..k {
            for cc in b + 1..k {
                for d in cc + 1..k {
                    t.put(vec![a0, b, cc, d], w4_r(&c, [a0, b, cc, d]));
                }
            }
        }
    }
    Ok(t)
}

/// Allowed residues of `k_ij mod 4` keyed by `(k_i mod 8, k_j mod 8)` with
/// both residues in `{0, 1, 2, 7}`, as a bit mask over `0..4`.
pub(crate) fn w4_pair_mask(ti: usize, tj: usize) -> u8 {
    let (lo, hi) = if ti <= tj { (ti, tj) } else { (tj, ti) };
    match (lo, hi) {
        (_, 7) => 0b0001,
        (0, 0) | (0, 1) => 0b0011,
        (0, 2) => 0b0010,
        (1, 1) => 0b0110,
        (1, 2) => 0b0100,
        (2, 2) => 0b1000,
        _ => 0,
    }
}

/// Residue conditions for `w_4 = 0` when every `n_i ≥ 4`:
/// i) `k_i mod 8 ∈ {0,1,2,7}`; ii) `k_ij mod 4` per [`w4_pair_mask`];
/// iii) for each triple and each choice of squared index, the parity of
/// `k_ijl` forced by the `x_s^2 x_u x_v` coefficient; iv) the quadruple
/// parity of pair counts.
pub fn w4_vanishes_big(a: &ReducedMatrix) -> Result<bool> {
    require_valid(a)?;
    require_min_dim(a, 4, "w4_vanishes_big")?;
    let c = Counts::new(a);
    let k = a.k();
    let theta: Vec<usize> = (0..k).map(|i| c.k(i) % 8).collect();
    if theta.iter().any(|t| ![0, 1, 2, 7].contains(t)) {
        return Ok(false);
    }
    for i in 0..k {
        for j in i + 1..k {
            if w4_pair_mask(theta[i], theta[j]) >> (c.k2(i, j) % 4) & 1 == 0 {
                return Ok(false);
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                if w4_q(&c, i, j, l) || w4_q(&c, j, i, l) || w4_q(&c, l, i, j) {
                    return Ok(false);
                }
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for m in l + 1..k {
                    if w4_r(&c, [i, j, l, m]) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `k_i ≡ 7 (mod 8)`, `k_ij ≡ 0 (mod 4)`, `k_ijl` even.
pub fn first_seven_vanish(a: &ReducedMatrix) -> Result<bool> {
    require_valid(a)?;
    require_min_dim(a, 4, "first_seven_vanish")?;
    let c = Counts::new(a);
    let k = a.k();
    for i in 0..k {
        if c.k(i) % 8 != 7 {
            return Ok(false);
        }
        for j in i + 1..k {
            if c.k2(i, j) % 4 != 0 {
                return Ok(false);
            }
            for l in j + 1..k {
                if odd(c.k3(i, j, l)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// How to read the modulus for sets of size at least two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    /// `2^{t+1-|S|}`.
    AsWritten,
    /// `2^{t+2-|S|}`.
    Shifted,
}

impl Reading {
    pub fn as_str(self) -> &'static str {
        match self {
            Reading::AsWritten => "as-written",
            Reading::Shifted => "shifted",
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Reading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-written" => Ok(Reading::AsWritten),
            "shifted" => Ok(Reading::Shifted),
            other => Err(Error::Argument(format!(
                "unknown reading {other:?} (expected as-written or shifted)"
            ))),
        }
    }
}

fn subsets_up_to(k: usize, max: usize) -> Vec<Vec<usize>> {
    crate::gf2::subsets_lex(k)
        .into_iter()
        .filter(|s| s.len() <= max)
        .collect()
}

/// Congruence conditions on `k_S` for `|S| ≤ t + 1` describing when the
/// first `2^{t+1} - 1` classes vanish.
pub fn conjecture_predicate(a: &ReducedMatrix, t: u32, reading: Reading) -> Result<bool> {
    if t == 0 || t > 16 {
        return Err(Error::Argument(format!("t must lie in 1..=16, got {t}")));
    }
    require_valid(a)?;
    require_min_dim(a, 1 << t, "conjecture_predicate")?;
    let c = Counts::new(a);
    let t = t as usize;
    let top = 1usize << (t + 1);
    for s in subsets_up_to(a.k(), t + 1) {
        let ks = c.k_of(&s);
        let ok = if s.len() == 1 {
            (ks + 1) % top == 0
        } else {
            let shift = match reading {
                Reading::AsWritten => t + 1 - s.len(),
                Reading::Shifted => t + 2 - s.len(),
            };
            ks % (1usize << shift) == 0
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
