//! Exhaustive and sampled cross-checks of the closed-form criteria against
//! the oracle, with an optional JSON-lines census.
//!
//! The candidates for a family `ω` are all matrices with all-ones diagonal
//! blocks. The off-diagonal entries, read in row-major order, form the bits
//! of the candidate index with the first entry most significant, so index
//! order is lexicographic order of the bit assignment.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{elementary_component, validate, DimensionVector, ReducedMatrix};
use crate::oracle::Oracle;
use crate::swclosed::{self, Reading};
use crate::wdigraph;

pub const DEFAULT_BUDGET: u64 = 1 << 24;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const SCHEMA_VERSION: u32 = 1;

/// Candidates handed to one worker at a time.
const CHUNK: u64 = 1 << 10;
/// Chunks processed between ordered writes.
const BATCH: usize = 64;

/// The candidate space of one dimension vector.
#[derive(Clone, Debug)]
pub struct Family {
    omega: DimensionVector,
    positions: Vec<(usize, usize)>,
}

impl Family {
    pub fn new(omega: DimensionVector) -> Self {
        let mut positions = Vec::new();
        for r in 0..omega.n() {
            let b = omega.block_of_row(r);
            for c in 0..omega.k() {
                if c != b {
                    positions.push((r, c));
                }
            }
        }
        Family { omega, positions }
    }

    pub fn omega(&self) -> &DimensionVector {
        &self.omega
    }

    /// Number of free off-diagonal entries.
    pub fn bits(&self) -> u32 {
        self.positions.len() as u32
    }

    /// `2^bits`, if it fits in a `u64`.
    pub fn space(&self) -> Option<u64> {
        1u64.checked_shl(self.bits())
    }

    pub fn candidate(&self, index: u64) -> ReducedMatrix {
        let nb = self.positions.len();
        let mut mat = self.omega.identity_matrix();
        for (p, &(r, c)) in self.positions.iter().enumerate() {
            if index >> (nb - 1 - p) & 1 == 1 {
                mat.set(r, c, true);
            }
        }
        ReducedMatrix::new(self.omega.clone(), mat).expect("shape follows ω")
    }

    /// Inverse of [`Family::candidate`] for matrices with all-ones diagonal blocks.
    pub fn index_of(&self, a: &ReducedMatrix) -> Option<u64> {
        if a.omega() != &self.omega || !a.has_unit_diagonal_blocks() || self.bits() > 63 {
            return None;
        }
        let nb = self.positions.len();
        Some(
            self.positions
                .iter()
                .enumerate()
                .filter(|(_, &(r, c))| a.matrix().get(r, c))
                .fold(0u64, |acc, (p, _)| acc | 1 << (nb - 1 - p)),
        )
    }

    fn require_within(&self, budget: u64) -> Result<u64> {
        match self.space() {
            Some(s) if s <= budget => Ok(s),
            _ => Err(Error::Budget {
                bits: self.bits(),
                budget,
            }),
        }
    }
}

/// All valid matrices of `ω` in candidate order.
pub fn enumerate_valid(
    omega: &DimensionVector,
    budget: u64,
) -> Result<impl Iterator<Item = ReducedMatrix>> {
    let family = Family::new(omega.clone());
    let space = family.require_within(budget)?;
    Ok((0..space)
        .map(move |i| family.candidate(i))
        .filter(|a| validate(a).valid))
}

/// What a run compares for each valid matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Matrix criterion, digraph criterion and oracle Spin verdicts.
    Spin,
    /// Degree-3 or degree-4 closed forms and vanishing predicates.
    W(usize),
    /// Spin of a matrix versus Spin of all its elementary components.
    Elementary,
    /// The conjectured congruences versus vanishing of the low classes.
    Conjecture { t: u32, reading: Reading },
}

impl Check {
    pub fn name(&self) -> String {
        match self {
            Check::Spin => "spin".into(),
            Check::W(m) => format!("w{m}"),
            Check::Elementary => "elementary".into(),
            Check::Conjecture { t, reading } => format!("conjecture-t{t}-{reading}"),
        }
    }

    fn precondition(&self, omega: &DimensionVector) -> Result<()> {
        let min = omega.dims().iter().copied().min().unwrap_or(0);
        match *self {
            Check::Spin => Ok(()),
            Check::W(m) if m != 3 && m != 4 => {
                Err(Error::Argument(format!("w check supports degrees 3 and 4, got {m}")))
            }
            Check::W(m) if min < m => Err(Error::Argument(format!(
                "w{m} check needs every n_i >= {m}, ω = {omega}"
            ))),
            Check::W(_) => Ok(()),
            Check::Elementary if omega.k() < 2 => Err(Error::Argument(
                "elementary check needs at least two factors".into(),
            )),
            Check::Elementary => Ok(()),
            Check::Conjecture { t, .. } if t != 1 && t != 2 => Err(Error::Argument(format!(
                "conjecture check supports t = 1 or 2, got {t}"
            ))),
            Check::Conjecture { t, .. } if min < 1 << t => Err(Error::Argument(format!(
                "conjecture check with t = {t} needs every n_i >= {}, ω = {omega}",
                1 << t
            ))),
            Check::Conjecture { .. } => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    /// Worker threads; 0 means the rayon default.
    pub threads: usize,
    pub budget: u64,
    pub seed: u64,
    /// Draw this many valid matrices at random instead of enumerating.
    pub sample: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threads: 0,
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            sample: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusHeader {
    pub schema_version: u32,
    pub omega: Vec<usize>,
    pub check: String,
    pub seed: u64,
    pub budget: u64,
    pub sample: Option<usize>,
}

/// Everything computed for one valid matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub index: u64,
    pub omega: Vec<usize>,
    pub matrix: Vec<String>,
    pub orientable: bool,
    pub spin_closed: bool,
    pub spin_digraph: bool,
    pub spin_oracle: bool,
    /// Closed-form classes before reduction, degrees `1..=min(4, n)`.
    pub w_closed: Vec<String>,
    /// Oracle classes after reduction, same degrees.
    pub w_oracle: Vec<String>,
    pub predicates: BTreeMap<String, bool>,
    pub flags: Vec<String>,
}

impl CensusRecord {
    pub fn matrix(&self) -> Result<ReducedMatrix> {
        let rows: Vec<&str> = self.matrix.iter().map(String::as_str).collect();
        ReducedMatrix::from_strs(&self.omega, &rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub omega: Vec<usize>,
    pub check: String,
    /// Candidates examined (drawn, when sampling).
    pub enumerated: u64,
    pub valid: u64,
    pub sampled: bool,
    pub counts: BTreeMap<String, u64>,
    pub discrepancies: Vec<CensusRecord>,
}

impl DiscrepancyReport {
    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    /// `valid: V, spin: S, discrepancies: D`.
    pub fn summary(&self) -> String {
        format!(
            "valid: {}, spin: {}, discrepancies: {}",
            self.valid,
            self.count("spin"),
            self.discrepancies.len()
        )
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let omega: Vec<String> = self.omega.iter().map(usize::to_string).collect();
        writeln!(f, "check {} over ω=({})", self.check, omega.join(","))?;
        writeln!(
            f,
            "{} candidates {}, {} valid",
            self.enumerated,
            if self.sampled { "drawn" } else { "enumerated" },
            self.valid
        )?;
        for (k, v) in &self.counts {
            writeln!(f, "  {k:<14} {v}")?;
        }
        if self.discrepancies.is_empty() {
            return writeln!(f, "no discrepancies");
        }
        writeln!(f, "{:>10}  {:<40}  flags", "index", "matrix")?;
        for r in &self.discrepancies {
            writeln!(
                f,
                "{:>10}  {:<40}  {}",
                r.index,
                r.matrix.join("/"),
                r.flags.join(",")
            )?;
        }
        Ok(())
    }
}

struct Context {
    family: Family,
    check: Check,
    oracle: Oracle,
    classes: usize,
}

impl Context {
    fn new(omega: &DimensionVector, check: Check) -> Self {
        let classes = omega.n().min(4);
        Context {
            family: Family::new(omega.clone()),
            check,
            oracle: Oracle::new(omega.k(), classes),
            classes,
        }
    }

    fn process(&self, index: u64) -> Result<Option<CensusRecord>> {
        let a = self.family.candidate(index);
        if !validate(&a).valid {
            return Ok(None);
        }
        self.record(index, &a).map(Some)
    }

    fn record(&self, index: u64, a: &ReducedMatrix) -> Result<CensusRecord> {
        let omega = a.omega();
        let classes = self.oracle.evaluate_unchecked(a);
        let spin = swclosed::has_spin(a)?;
        let spin_digraph = wdigraph::has_spin_digraph(&wdigraph::from_matrix(a)?).spin;
        let spin_oracle = classes.spin();
        let mut flags = Vec::new();
        let mut predicates = BTreeMap::new();

        if spin.spin != spin_oracle || spin_digraph != spin_oracle {
            flags.push("spin".to_string());
        }
        if swclosed::is_orientable(a)? != classes.vanishes(1) {
            flags.push("orientable".to_string());
        }

        let mut w_closed = Vec::with_capacity(self.classes);
        let mut w_oracle = Vec::with_capacity(self.classes);
        for m in 1..=self.classes {
            let table = match m {
                1 => swclosed::w1_coefficients(a)?,
                2 => swclosed::w2_coefficients(a)?,
                3 => swclosed::w3_coefficients(a)?,
                _ => swclosed::w4_coefficients(a)?,
            };
            let closed = table.to_polynomial(a.k());
            if closed != classes.expanded(m) {
                flags.push(format!("w{m}"));
            }
            w_closed.push(closed.to_string());
            w_oracle.push(classes.reduced(m).to_string());
        }
        // Wu: w_1 = w_2 = 0 forces w_3 = 0
        if classes.max_degree() >= 3 && classes.spin() && !classes.vanishes(3) {
            flags.push("wu".to_string());
        }

        match self.check {
            Check::Spin => {
                let sufficient = swclosed::spin_sufficient(a)?;
                predicates.insert("sufficient".to_string(), sufficient);
                if sufficient && !spin_oracle {
                    flags.push("sufficient".to_string());
                }
                let l = swclosed::one_dimensional_factors(a);
                if l == 0 && sufficient != spin_oracle {
                    flags.push("l0-equivalence".to_string());
                }
                if l == 0 && spin_oracle && !omega.dims().iter().any(|n| n % 4 == 3) {
                    flags.push("l0-dimension".to_string());
                }
                let rest = omega.dims().iter().filter(|&&n| n != 1);
                if l == 1 && omega.k() >= 3 && rest.clone().all(|n| n % 2 == 0) && spin_oracle {
                    flags.push("even-family".to_string());
                }
            }
            Check::W(m) => {
                let pred = if m == 3 {
                    swclosed::w3_vanishes_big(a)?
                } else {
                    swclosed::w4_vanishes_big(a)?
                };
                let vanish = classes.vanishes(m);
                predicates.insert(format!("w{m}_vanishes"), pred);
                predicates.insert(format!("w{m}_oracle_zero"), vanish);
                if pred != vanish {
                    flags.push(format!("vanish{m}"));
                }
                if m == 3 {
                    let dg = wdigraph::w3_vanishes_digraph(&wdigraph::from_matrix(a)?)?;
                    if dg != pred {
                        flags.push("vanish3-digraph".to_string());
                    }
                } else {
                    let seven = swclosed::first_seven_vanish(a)?;
                    predicates.insert("first_seven".to_string(), seven);
                    if seven && !(1..=4).all(|d| classes.vanishes(d)) {
                        flags.push("first-seven".to_string());
                    }
                }
            }
            Check::Elementary => {
                let mut all = true;
                for i in 0..a.k() {
                    for j in i + 1..a.k() {
                        let c = elementary_component(a, i, j)?;
                        if !validate(&c).valid {
                            flags.push(format!("component-invalid-{}-{}", i + 1, j + 1));
                            continue;
                        }
                        all &= swclosed::has_spin(&c)?.spin;
                    }
                }
                predicates.insert("components_spin".to_string(), all);
                if all != spin_oracle {
                    flags.push("elementary".to_string());
                }
            }
            Check::Conjecture { t, reading } => {
                let pred = swclosed::conjecture_predicate(a, t, reading)?;
                let top = if t == 1 { 3 } else { 4 };
                let vanish = (1..=top).all(|d| classes.vanishes(d));
                predicates.insert("conjecture".to_string(), pred);
                predicates.insert("oracle_zero".to_string(), vanish);
                if pred != vanish {
                    flags.push("conjecture".to_string());
                }
            }
        }

        Ok(CensusRecord {
            index,
            omega: omega.dims().to_vec(),
            matrix: a.row_strings(),
            orientable: spin.orientable,
            spin_closed: spin.spin,
            spin_digraph,
            spin_oracle,
            w_closed,
            w_oracle,
            predicates,
            flags,
        })
    }
}

#[derive(Default)]
struct Tally {
    valid: u64,
    counts: BTreeMap<String, u64>,
    discrepancies: Vec<CensusRecord>,
}

impl Tally {
    fn add(&mut self, r: &CensusRecord) {
        self.valid += 1;
        let mut bump = |k: &str, b: bool| {
            *self.counts.entry(k.to_string()).or_insert(0) += u64::from(b);
        };
        bump("orientable", r.orientable);
        bump("spin", r.spin_oracle);
        for (k, &v) in &r.predicates {
            bump(k, v);
        }
        if !r.flags.is_empty() {
            self.discrepancies.push(r.clone());
        }
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

/// Draws `n` valid candidates uniformly, with replacement.
fn sample_indices(family: &Family, n: usize, seed: u64, budget: u64) -> Result<(Vec<u64>, u64)> {
    let space = family.space().ok_or(Error::Budget {
        bits: family.bits(),
        budget,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut drawn = 0u64;
    while out.len() < n {
        if drawn >= budget {
            return Err(Error::Budget {
                bits: family.bits(),
                budget,
            });
        }
        drawn += 1;
        let idx = rng.gen_range(0..space);
        if validate(&family.candidate(idx)).valid {
            out.push(idx);
        }
    }
    Ok((out, drawn))
}

/// Runs `check` over `ω`, streaming one census line per valid matrix into
/// `census` when given. Output is identical for every thread count.
pub fn run(
    omega: &DimensionVector,
    check: Check,
    cfg: &RunConfig,
    mut census: Option<&mut dyn Write>,
) -> Result<DiscrepancyReport> {
    check.precondition(omega)?;
    let ctx = Context::new(omega, check);
    let (indices, enumerated): (Option<Vec<u64>>, u64) = match cfg.sample {
        Some(n) => {
            let (idx, drawn) = sample_indices(&ctx.family, n, cfg.seed, cfg.budget)?;
            (Some(idx), drawn)
        }
        None => (None, ctx.family.require_within(cfg.budget)?),
    };

    if let Some(w) = census.as_deref_mut() {
        let header = CensusHeader {
            schema_version: SCHEMA_VERSION,
            omega: omega.dims().to_vec(),
            check: check.name(),
            seed: cfg.seed,
            budget: cfg.budget,
            sample: cfg.sample,
        };
        serde_json::to_writer(&mut *w, &header)?;
        w.write_all(b"\n")?;
    }

    let pool = pool(cfg.threads)?;
    let mut tally = Tally::default();
    let chunks: Vec<(u64, u64)> = match &indices {
        Some(idx) => (0..idx.len() as u64)
            .step_by(CHUNK as usize)
            .map(|s| (s, (s + CHUNK).min(idx.len() as u64)))
            .collect(),
        None => (0..enumerated)
            .step_by(CHUNK as usize)
            .map(|s| (s, (s + CHUNK).min(enumerated)))
            .collect(),
    };
    let index_at = |p: u64| indices.as_ref().map_or(p, |v| v[p as usize]);

    for batch in chunks.chunks(BATCH) {
        let results: Vec<Result<Vec<CensusRecord>>> = pool.install(|| {
            batch
                .par_iter()
                .map(|&(lo, hi)| {
                    let mut out = Vec::new();
                    for p in lo..hi {
                        if let Some(r) = ctx.process(index_at(p))? {
                            out.push(r);
                        }
                    }
                    Ok(out)
                })
                .collect()
        });
        for chunk in results {
            for r in chunk? {
                tally.add(&r);
                if let Some(w) = census.as_deref_mut() {
                    serde_json::to_writer(&mut *w, &r)?;
                    w.write_all(b"\n")?;
                }
            }
        }
    }

    Ok(DiscrepancyReport {
        omega: omega.dims().to_vec(),
        check: check.name(),
        enumerated,
        valid: tally.valid,
        sampled: cfg.sample.is_some(),
        counts: tally.counts,
        discrepancies: tally.discrepancies,
    })
}

/// Runs a check on one matrix, outside any enumeration.
pub fn check_matrix(a: &ReducedMatrix, check: Check) -> Result<CensusRecord> {
    check.precondition(a.omega())?;
    crate::model::require_valid(a)?;
    let ctx = Context::new(a.omega(), check);
    let index = ctx.family.index_of(a).unwrap_or(u64::MAX);
    ctx.record(index, a)
}

pub fn crosscheck_spin(omega: &DimensionVector) -> Result<DiscrepancyReport> {
    run(omega, Check::Spin, &RunConfig::default(), None)
}

pub fn crosscheck_w(
    omega: &DimensionVector,
    m: usize,
    sample: Option<usize>,
) -> Result<DiscrepancyReport> {
    let cfg = RunConfig {
        sample,
        ..RunConfig::default()
    };
    run(omega, Check::W(m), &cfg, None)
}

pub fn verify_elementary(omega: &DimensionVector) -> Result<DiscrepancyReport> {
    run(omega, Check::Elementary, &RunConfig::default(), None)
}

pub fn verify_conjecture(
    omega: &DimensionVector,
    t: u32,
    reading: Reading,
) -> Result<DiscrepancyReport> {
    run(omega, Check::Conjecture { t, reading }, &RunConfig::default(), None)
}

/// Reads a census back: the header and the records.
pub fn read_census(text: &str) -> Result<(CensusHeader, Vec<CensusRecord>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: CensusHeader = serde_json::from_str(
        lines
            .next()
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: "empty census".into(),
            })?,
    )?;
    let records = lines
        .map(serde_json::from_str)
        .collect::<std::result::Result<Vec<CensusRecord>, _>>()?;
    Ok((header, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega(d: &[usize]) -> DimensionVector {
        DimensionVector::new(d.to_vec()).unwrap()
    }

    #[test]
    fn candidate_index_round_trip() {
        let f = Family::new(omega(&[1, 2, 2]));
        assert_eq!(f.bits(), 10);
        for i in [0u64, 1, 517, 1023] {
            assert_eq!(f.index_of(&f.candidate(i)), Some(i));
        }
        // first off-diagonal entry is the most significant bit
        let a = f.candidate(1 << 9);
        assert!(a.matrix().get(0, 1));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_valid(&omega(&[1, 1]), DEFAULT_BUDGET).unwrap().count(), 3);
        assert_eq!(enumerate_valid(&omega(&[1]), DEFAULT_BUDGET).unwrap().count(), 1);
    }

    #[test]
    fn budget_refusal() {
        let err = enumerate_valid(&omega(&[1, 2, 2]), 512).err().unwrap();
        assert!(matches!(err, Error::Budget { bits: 10, budget: 512 }));
    }

    #[test]
    fn torus_family_spin() {
        let r = crosscheck_spin(&omega(&[1, 1])).unwrap();
        assert_eq!((r.valid, r.count("spin")), (3, 1));
        assert!(r.is_clean());
        assert_eq!(r.summary(), "valid: 3, spin: 1, discrepancies: 0");
    }

    #[test]
    fn preconditions() {
        assert!(crosscheck_w(&omega(&[2, 3]), 3, None).is_err());
        assert!(crosscheck_w(&omega(&[3, 3]), 5, None).is_err());
        assert!(verify_elementary(&omega(&[2])).is_err());
        assert!(verify_conjecture(&omega(&[2, 2]), 2, Reading::Shifted).is_err());
    }

    #[test]
    fn census_round_trip() {
        let mut buf = Vec::new();
        let r = run(&omega(&[1, 1]), Check::Spin, &RunConfig::default(), Some(&mut buf)).unwrap();
        let (h, recs) = read_census(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(h.schema_version, SCHEMA_VERSION);
        assert_eq!(h.omega, vec![1, 1]);
        assert_eq!(recs.len() as u64, r.valid);
        assert_eq!(recs[0].matrix().unwrap().row_strings(), recs[0].matrix);
    }

    #[test]
    fn sampling_is_seeded() {
        let cfg = RunConfig {
            sample: Some(20),
            ..RunConfig::default()
        };
        let a = run(&omega(&[3, 3]), Check::W(3), &cfg, None).unwrap();
        let b = run(&omega(&[3, 3]), Check::W(3), &cfg, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.valid, 20);
    }
}
