//! Reduced characteristic matrices of small covers over `Δ^{n_1} × … × Δ^{n_k}`.
//!
//! Row `n_1 + … + n_{i-1} + t` (1-based `t`) corresponds to facet `F^i_t` and
//! column `j` to facet `F^j_0`. The vector-matrix view groups the rows of
//! block `i` so that `v_ij` is the length-`n_i` column segment of column `j`.
//!
//! Indices in this API are 0-based. Reports and file formats print them
//! 1-based.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};

/// The simplex dimensions `(n_1, …, n_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimensionVector {
    dims: Vec<usize>,
    offsets: Vec<usize>,
}

impl DimensionVector {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Argument("dimension vector must be nonempty".into()));
        }
        if dims.contains(&0) {
            return Err(Error::Argument(format!(
                "simplex dimensions must be positive, got {dims:?}"
            )));
        }
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &d in &dims {
            acc += d;
            offsets.push(acc);
        }
        Ok(DimensionVector { dims, offsets })
    }

    /// Parses a comma-separated list such as `1,2,2`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let dims = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Argument(format!("bad simplex dimension {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    /// Number of simplex factors.
    pub fn k(&self) -> usize {
        self.dims.len()
    }

    /// Manifold dimension `Σ n_i`.
    pub fn n(&self) -> usize {
        self.offsets[self.dims.len()]
    }

    /// Number of one-dimensional factors.
    pub fn l(&self) -> usize {
        self.dims.iter().filter(|&&d| d == 1).count()
    }

    /// First row of block `i`.
    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn block_rows(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Block index owning row `r`.
    pub fn block_of_row(&self, r: usize) -> usize {
        self.offsets.partition_point(|&o| o <= r) - 1
    }

    /// The identity vector matrix `I_ω`.
    pub fn identity_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.n(), self.k());
        for i in 0..self.k() {
            for r in self.block_rows(i) {
                m.set(r, i, true);
            }
        }
        m
    }
}

impl TryFrom<Vec<usize>> for DimensionVector {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DimensionVector> for Vec<usize> {
    fn from(d: DimensionVector) -> Self {
        d.dims
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// An `n × k` matrix over GF(2) together with its block structure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReducedMatrix {
    omega: DimensionVector,
    mat: BitMatrix,
    columns: Vec<BitVector>,
}

impl ReducedMatrix {
    pub fn new(omega: DimensionVector, mat: BitMatrix) -> Result<Self> {
        if mat.rows() != omega.n() || mat.cols() != omega.k() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but ω={omega} needs {}x{}",
                mat.rows(),
                mat.cols(),
                omega.n(),
                omega.k()
            )));
        }
        let columns = (0..mat.cols()).map(|c| mat.column(c)).collect();
        Ok(ReducedMatrix {
            omega,
            mat,
            columns,
        })
    }

    /// Builds a matrix from `dims` and rows written as `0`/`1` strings.
    pub fn from_strs(dims: &[usize], rows: &[&str]) -> Result<Self> {
        let omega = DimensionVector::new(dims.to_vec())?;
        let mut mat = BitMatrix::zeros(rows.len(), omega.k());
        for (r, s) in rows.iter().enumerate() {
            let v = BitVector::parse(s)
                .filter(|v| v.len() == omega.k())
                .ok_or_else(|| Error::Argument(format!("bad row {s:?}")))?;
            for c in v.ones_iter() {
                mat.set(r, c, true);
            }
        }
        Self::new(omega, mat)
    }

    /// The matrix `I_ω` of the product of real projective spaces.
    pub fn identity(omega: DimensionVector) -> Self {
        let mat = omega.identity_matrix();
        Self::new(omega, mat).expect("identity has consistent shape")
    }

    pub fn omega(&self) -> &DimensionVector {
        &self.omega
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.mat
    }

    pub fn column(&self, j: usize) -> &BitVector {
        &self.columns[j]
    }

    pub fn k(&self) -> usize {
        self.omega.k()
    }

    pub fn n(&self) -> usize {
        self.omega.n()
    }

    /// `v_ij`: rows of block `i` in column `j`.
    pub fn block(&self, i: usize, j: usize) -> BitVector {
        let rows = self.omega.block_rows(i);
        self.columns[j].slice(rows.start, rows.end)
    }

    /// Whether every diagonal block `v_ii` is all ones.
    pub fn has_unit_diagonal_blocks(&self) -> bool {
        (0..self.k()).all(|i| self.omega.block_rows(i).all(|r| self.mat.get(r, i)))
    }

    /// The matrix `A - I_ω` (equivalently `A + I_ω` over GF(2)).
    pub fn off_diagonal(&self) -> BitMatrix {
        let mut b = self.mat.clone();
        for i in 0..self.k() {
            for r in self.omega.block_rows(i) {
                let bit = b.get(r, i);
                b.set(r, i, !bit);
            }
        }
        b
    }

    /// Rows as `0`/`1` strings, one per row.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.n()).map(|r| self.mat.row(r).to_string()).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.k() {
            return Err(Error::Argument(format!(
                "column {} out of range 1..={}",
                i + 1,
                self.k()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for ReducedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedMatrix ω={} {:?}", self.omega, self.row_strings())
    }
}

impl fmt::Display for ReducedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_matrix_file(self))
    }
}

/// Outcome of the non-singularity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub valid: bool,
    /// Row chosen in each block (0-based within the block).
    pub failing_selection: Option<Vec<usize>>,
    /// Column/row subset of the singular principal minor (0-based).
    pub failing_subset: Option<Vec<usize>>,
}

impl ValidityReport {
    fn ok() -> Self {
        ValidityReport {
            valid: true,
            failing_selection: None,
            failing_subset: None,
        }
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.failing_selection, &self.failing_subset) {
            (Some(sel), Some(sub)) => write!(
                f,
                "singular principal minor {} of row selection {}",
                one_based_set(sub),
                one_based_tuple(sel)
            ),
            _ if self.valid => write!(f, "valid"),
            _ => write!(f, "invalid"),
        }
    }
}

pub(crate) fn one_based_tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

pub(crate) fn one_based_set(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Checks that every principal minor of every row selection `A_{l_1⋯l_k}`
/// equals 1. Selections are visited in lexicographic order (first block
/// most significant), subsets in lexicographic order of sorted indices.
pub fn validate(a: &ReducedMatrix) -> ValidityReport {
    let omega = a.omega();
    let k = omega.k();
    let subsets = gf2::subsets_lex(k);
    let mut selection = vec![0usize; k];
    let mut rows = vec![0u64; k];
    // k > 64 cannot be packed into words; fall back to the generic path
    let wide = k > 64;
    loop {
        if wide {
            let mut m = BitMatrix::zeros(k, k);
            for (j, &l) in selection.iter().enumerate() {
                for c in a.matrix().row(omega.offset(j) + l).ones_iter() {
                    m.set(j, c, true);
                }
            }
            if let Some(s) = gf2::first_singular_principal_minor(&m).expect("square") {
                return failure(&selection, s);
            }
        } else {
            for (j, &l) in selection.iter().enumerate() {
                rows[j] = row_word(a, omega.offset(j) + l);
            }
            if let Some(s) = subsets.iter().find(|s| !gf2::minor_words(&rows, s)) {
                return failure(&selection, s.clone());
            }
        }
        // advance the mixed-radix counter, last block fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return ValidityReport::ok();
            }
            pos -= 1;
            selection[pos] += 1;
            if selection[pos] < omega.dim(pos) {
                break;
            }
            selection[pos] = 0;
        }
    }
}

fn failure(selection: &[usize], subset: Vec<usize>) -> ValidityReport {
    ValidityReport {
        valid: false,
        failing_selection: Some(selection.to_vec()),
        failing_subset: Some(subset),
    }
}

fn row_word(a: &ReducedMatrix, r: usize) -> u64 {
    a.matrix()
        .row(r)
        .ones_iter()
        .fold(0u64, |w, c| w | (1u64 << c))
}

/// Validates and returns an error carrying the report on failure.
pub fn require_valid(a: &ReducedMatrix) -> Result<()> {
    let report = validate(a);
    if report.valid {
        Ok(())
    } else {
        Err(Error::Invalid(report))
    }
}

/// `A_i · A_j` as an integer.
pub fn columns_dot(a: &ReducedMatrix, i: usize, j: usize) -> Result<usize> {
    a.check_index(i)?;
    a.check_index(j)?;
    Ok(a.column(i).and_count(a.column(j)))
}

/// `k_S(A)` for a set of column indices.
pub fn k_set(a: &ReducedMatrix, s: &[usize]) -> Result<usize> {
    gf2::column_intersection_count(a.matrix(), s)
}

/// Relabels the simplex factors: old factor `i` becomes factor `sigma[i]`.
pub fn conjugate_by_permutation(a: &ReducedMatrix, sigma: &[usize]) -> Result<ReducedMatrix> {
    let k = a.k();
    if sigma.len() != k {
        return Err(Error::Argument(format!(
            "permutation has {} entries, expected {k}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; k];
    for &s in sigma {
        if s >= k || std::mem::replace(&mut seen[s], true) {
            return Err(Error::Argument(format!("{sigma:?} is not a permutation")));
        }
    }
    let omega = a.omega();
    let mut dims = vec![0; k];
    for i in 0..k {
        dims[sigma[i]] = omega.dim(i);
    }
    let new_omega = DimensionVector::new(dims)?;
    let mut mat = BitMatrix::zeros(a.n(), k);
    for i in 0..k {
        for (t, r) in omega.block_rows(i).enumerate() {
            let nr = new_omega.offset(sigma[i]) + t;
            for c in a.matrix().row(r).ones_iter() {
                mat.set(nr, sigma[c], true);
            }
        }
    }
    ReducedMatrix::new(new_omega, mat)
}

/// Factor-level edges `i → j` for every nonzero off-diagonal block `v_ij`.
pub(crate) fn block_edges(a: &ReducedMatrix) -> Vec<Vec<usize>> {
    let k = a.k();
    let mut out = vec![Vec::new(); k];
    for (i, succ) in out.iter_mut().enumerate() {
        for j in 0..k {
            if i != j && !a.block(i, j).is_zero() {
                succ.push(j);
            }
        }
    }
    out
}

/// Topological order of a digraph given by successor lists, smallest label
/// first among ready vertices. `None` if there is a cycle.
pub(crate) fn topological_order(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let k = succ.len();
    let mut indeg = vec![0usize; k];
    for s in succ {
        for &j in s {
            indeg[j] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..k).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &j in &succ[v] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.push(Reverse(j));
            }
        }
    }
    (order.len() == k).then_some(order)
}

/// Conjugates `a` to block upper triangular form (`v_ij = 0` for `i > j`).
/// Returns the conjugate and the permutation used (`sigma[old] = new`).
pub fn normalize_upper_triangular(a: &ReducedMatrix) -> Result<(ReducedMatrix, Vec<usize>)> {
    require_valid(a)?;
    let order = topological_order(&block_edges(a)).ok_or_else(|| {
        Error::Internal(format!("valid matrix {a:?} has a cyclic block digraph"))
    })?;
    let mut sigma = vec![0; a.k()];
    for (pos, &v) in order.iter().enumerate() {
        sigma[v] = pos;
    }
    Ok((conjugate_by_permutation(a, &sigma)?, sigma))
}

/// `I_ω + B_ij` where `B = A - I_ω` and `B_ij` keeps only columns `i`, `j`.
pub fn elementary_component(a: &ReducedMatrix, i: usize, j: usize) -> Result<ReducedMatrix> {
    a.check_index(i)?;
    a.check_index(j)?;
    if i >= j {
        return Err(Error::Argument(format!(
            "elementary component needs i < j, got ({}, {})",
            i + 1,
            j + 1
        )));
    }
    require_valid(a)?;
    let mut mat = a.omega().identity_matrix();
    for c in [i, j] {
        for r in a.column(c).ones_iter() {
            mat.set(r, c, true);
        }
    }
    ReducedMatrix::new(a.omega().clone(), mat)
}

/// Parses the text matrix format: a line of `k` dimensions, then `n` rows of
/// `k` characters from `{0,1}`. Blank lines and `#` comments are skipped.
pub fn parse_matrix_file(text: &str) -> Result<ReducedMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing dimension line".into(),
    })?;
    let dims = header
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: hline,
                msg: format!("bad simplex dimension {t:?}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let omega = DimensionVector::new(dims).map_err(|e| Error::Parse {
        line: hline,
        msg: e.to_string(),
    })?;
    let (n, k) = (omega.n(), omega.k());
    let mut mat = BitMatrix::zeros(n, k);
    let mut seen = 0;
    let mut last = hline;
    for (line, row) in lines {
        last = line;
        if seen == n {
            return Err(Error::Parse {
                line,
                msg: format!("extra row; ω={omega} needs exactly {n} rows"),
            });
        }
        if row.chars().count() != k {
            return Err(Error::Parse {
                line,
                msg: format!("row {row:?} has {} entries, expected {k}", row.chars().count()),
            });
        }
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => mat.set(seen, c, true),
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        seen += 1;
    }
    if seen < n {
        return Err(Error::Parse {
            line: last,
            msg: format!("found {seen} rows, ω={omega} needs {n}"),
        });
    }
    ReducedMatrix::new(omega, mat)
}

pub fn write_matrix_file(a: &ReducedMatrix) -> String {
    let dims: Vec<String> = a.omega().dims().iter().map(|d| d.to_string()).collect();
    let mut out = dims.join(" ");
    out.push('\n');
    for row in a.row_strings() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn section3_example() -> ReducedMatrix {
        ReducedMatrix::from_strs(
            &[2, 3, 5],
            &[
                "100", "100", "011", "111", "110", "101", "101", "101", "001", "001",
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let id = ReducedMatrix::from_strs(&[1, 1], &["10", "01"]).unwrap();
        assert!(validate(&id).valid);

        let ones = ReducedMatrix::from_strs(&[1, 1], &["11", "11"]).unwrap();
        let r = validate(&ones);
        assert!(!r.valid);
        assert_eq!(r.failing_selection, Some(vec![0, 0]));
        assert_eq!(r.failing_subset, Some(vec![0, 1]));
        assert_eq!(r.to_string(), "singular principal minor {1,2} of row selection (1,1)");

        assert!(validate(&section3_example()).valid);
    }

    #[test]
    fn zero_diagonal_is_reported_as_singleton() {
        let a = ReducedMatrix::from_strs(&[2, 1], &["10", "00", "01"]).unwrap();
        let r = validate(&a);
        assert_eq!(r.failing_selection, Some(vec![1, 0]));
        assert_eq!(r.failing_subset, Some(vec![0]));
    }

    #[test]
    fn columns_dot_examples() {
        let a = section3_example();
        assert_eq!(columns_dot(&a, 0, 0).unwrap(), 7);
        assert_eq!(columns_dot(&a, 1, 1).unwrap(), 3);
        assert_eq!(columns_dot(&a, 2, 2).unwrap(), 7);
        assert_eq!(columns_dot(&a, 1, 2).unwrap(), 2);
        assert_eq!(columns_dot(&a, 0, 1).unwrap(), 2);
        assert_eq!(columns_dot(&a, 0, 2).unwrap(), 4);
        assert!(columns_dot(&a, 0, 3).is_err());
        let rp = ReducedMatrix::from_strs(&[4], &["1", "1", "1", "1"]).unwrap();
        assert_eq!(columns_dot(&rp, 0, 0).unwrap(), 4);
    }

    #[test]
    fn k_set_examples() {
        let a = section3_example();
        assert_eq!(k_set(&a, &[0, 1]).unwrap(), 2);
        assert_eq!(k_set(&a, &[0, 1, 2]).unwrap(), 1);
    }

    #[test]
    fn conjugation_examples() {
        let a = section3_example();
        assert_eq!(conjugate_by_permutation(&a, &[0, 1, 2]).unwrap(), a);
        assert!(conjugate_by_permutation(&a, &[0, 0, 1]).is_err());
        assert!(conjugate_by_permutation(&a, &[0, 1]).is_err());

        let b = ReducedMatrix::from_strs(&[1, 2], &["11", "01", "01"]).unwrap();
        let c = conjugate_by_permutation(&b, &[1, 0]).unwrap();
        assert_eq!(c.omega().dims(), &[2, 1]);
        // block v_12 = (1) moves to position (2,1)
        assert_eq!(c.row_strings(), vec!["10", "10", "11"]);
    }

    #[test]
    fn normalize_examples() {
        let up = ReducedMatrix::from_strs(&[1, 1], &["11", "01"]).unwrap();
        let (same, sigma) = normalize_upper_triangular(&up).unwrap();
        assert_eq!(same, up);
        assert_eq!(sigma, vec![0, 1]);

        let low = ReducedMatrix::from_strs(&[1, 1], &["10", "11"]).unwrap();
        let (swapped, sigma) = normalize_upper_triangular(&low).unwrap();
        assert_eq!(swapped.row_strings(), vec!["11", "01"]);
        assert_eq!(sigma, vec![1, 0]);

        let bad = ReducedMatrix::from_strs(&[1, 1], &["11", "11"]).unwrap();
        assert!(matches!(
            normalize_upper_triangular(&bad),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn elementary_component_examples() {
        let id = ReducedMatrix::identity(DimensionVector::new(vec![1, 2, 3]).unwrap());
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(elementary_component(&id, i, j).unwrap(), id);
        }
        let two = ReducedMatrix::from_strs(&[1, 2], &["11", "01", "01"]).unwrap();
        assert_eq!(elementary_component(&two, 0, 1).unwrap(), two);

        let full = ReducedMatrix::from_strs(&[1, 1, 1], &["111", "011", "001"]).unwrap();
        let c = elementary_component(&full, 0, 1).unwrap();
        assert_eq!(c.row_strings(), vec!["110", "010", "001"]);
        assert!(elementary_component(&full, 1, 1).is_err());
        assert!(elementary_component(&full, 2, 1).is_err());
        assert!(elementary_component(&full, 0, 3).is_err());
    }

    #[test]
    fn matrix_file_round_trip() {
        let a = section3_example();
        let text = write_matrix_file(&a);
        assert!(text.starts_with("2 3 5\n100\n"));
        assert_eq!(parse_matrix_file(&text).unwrap(), a);

        let commented = "# torus\n\n1 1\n10\n# middle\n01\n\n";
        let t = parse_matrix_file(commented).unwrap();
        assert_eq!(t.row_strings(), vec!["10", "01"]);
    }

    #[test]
    fn matrix_file_errors_carry_line_numbers() {
        let short_row = "1 1\n10\n0\n";
        match parse_matrix_file(short_row) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_matrix_file("1 1\n10\n01\n11\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        match parse_matrix_file("1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse_matrix_file("2\n1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_matrix_file("1 1\n1a\n01\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_matrix_file("").is_err());
        assert!(parse_matrix_file("0 1\n").is_err());
    }

    #[test]
    fn dimension_vector_basics() {
        let w = DimensionVector::parse_list("1, 2,2").unwrap();
        assert_eq!((w.n(), w.k(), w.l()), (5, 3, 1));
        assert_eq!(w.block_rows(2), 3..5);
        assert_eq!(w.block_of_row(0), 0);
        assert_eq!(w.block_of_row(2), 1);
        assert_eq!(w.block_of_row(4), 2);
        assert!(DimensionVector::parse_list("1,0").is_err());
        assert!(DimensionVector::parse_list("").is_err());
        assert_eq!(w.to_string(), "(1,2,2)");
    }
}
