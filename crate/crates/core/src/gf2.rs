//! Bit-packed vectors and matrices over GF(2).
//!
//! Products between vectors return ordinary integer counts rather than their
//! residue mod 2: the criteria downstream reduce the same count modulo 2, 4
//! or 8 depending on the condition being evaluated.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A dense vector over GF(2), packed 64 entries per word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, index 0 leftmost.
    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Self::from_bits(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "and of vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Number of positions where both vectors carry a 1. Panics on a length
    /// mismatch; see [`dot_count`] for the checked version.
    pub fn and_count(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Copy of the entries in `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        BitVector::from_bits((start..end).map(|i| self.get(i)))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from nested rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    r.len()
                )));
            }
            for (j, &b) in r.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i, j, true),
                    other => {
                        return Err(Error::Argument(format!("entry {other} is not a bit")))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.data[r].set(c, bit)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bits((0..self.rows).map(|r| self.get(r, c)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.data[r].ones_iter() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// The square submatrix on rows and columns `indices`.
    pub fn principal_submatrix(&self, indices: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(indices.len(), indices.len());
        for (a, &r) in indices.iter().enumerate() {
            for (b, &c) in indices.iter().enumerate() {
                if self.get(r, c) {
                    m.set(a, b, true);
                }
            }
        }
        m
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// `|{t : u_t = v_t = 1}|` as an ordinary integer.
pub fn dot_count(u: &BitVector, v: &BitVector) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::Dimension(format!(
            "dot product of vectors of length {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(u.and_count(v))
}

/// Determinant over GF(2) by Gaussian elimination.
pub fn determinant(m: &BitMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if m.cols() <= WORD {
        let mut rows: Vec<u64> = (0..m.rows()).map(|r| m.row(r).words[0]).collect();
        if m.cols() == 0 {
            return Ok(true);
        }
        return Ok(det_words(&mut rows));
    }
    let mut rows: Vec<BitVector> = m.data.clone();
    let n = rows.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| rows[r].get(col)) else {
            return Ok(false);
        };
        rows.swap(col, p);
        let (head, tail) = rows.split_at_mut(col + 1);
        let pivot = &head[col];
        for r in tail.iter_mut() {
            if r.get(col) {
                r.xor_assign(pivot);
            }
        }
    }
    Ok(true)
}

/// Determinant of a square matrix with at most 64 columns, one word per row.
/// Destroys `rows`.
pub(crate) fn det_words(rows: &mut [u64]) -> bool {
    let n = rows.len();
    for col in 0..n {
        let bit = 1u64 << col;
        let Some(p) = (col..n).find(|&r| rows[r] & bit != 0) else {
            return false;
        };
        rows.swap(col, p);
        let pivot = rows[col];
        for r in rows[col + 1..].iter_mut() {
            if *r & bit != 0 {
                *r ^= pivot;
            }
        }
    }
    true
}

/// Determinant of the principal minor of `rows` (one word per row) on `subset`.
pub(crate) fn minor_words(rows: &[u64], subset: &[usize]) -> bool {
    let mut sub = [0u64; WORD];
    for (a, &r) in subset.iter().enumerate() {
        let mut w = 0u64;
        for (b, &c) in subset.iter().enumerate() {
            w |= ((rows[r] >> c) & 1) << b;
        }
        sub[a] = w;
    }
    det_words(&mut sub[..subset.len()])
}

/// All nonempty subsets of `0..k` in lexicographic order of their sorted
/// index sequences: `{0}, {0,1}, {0,1,2}, …, {0,2}, …, {k-1}`.
pub fn subsets_lex(k: usize) -> Vec<Vec<usize>> {
    fn extend(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..k {
            cur.push(i);
            out.push(cur.clone());
            extend(i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity((1usize << k.min(20)).saturating_sub(1));
    extend(0, k, &mut Vec::new(), &mut out);
    out
}

/// First subset (in [`subsets_lex`] order) whose principal minor vanishes.
pub fn first_singular_principal_minor(m: &BitMatrix) -> Result<Option<Vec<usize>>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "principal minors of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let subsets = subsets_lex(m.rows());
    if m.cols() <= WORD {
        let rows: Vec<u64> = (0..m.rows())
            .map(|r| m.row(r).words.first().copied().unwrap_or(0))
            .collect();
        return Ok(subsets.into_iter().find(|s| !minor_words(&rows, s)));
    }
    for s in subsets {
        if !determinant(&m.principal_submatrix(&s))? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// True iff every one of the `2^k - 1` principal minors equals 1.
pub fn principal_minors_all_one(m: &BitMatrix) -> Result<bool> {
    Ok(first_singular_principal_minor(m)?.is_none())
}

/// `k_S(A)`: number of rows carrying a 1 in every column of `columns`.
pub fn column_intersection_count(a: &BitMatrix, columns: &[usize]) -> Result<usize> {
    if columns.is_empty() {
        return Err(Error::Argument("empty column set".into()));
    }
    if let Some(&bad) = columns.iter().find(|&&c| c >= a.cols()) {
        return Err(Error::Argument(format!(
            "column {} out of range 1..={}",
            bad + 1,
            a.cols()
        )));
    }
    Ok((0..a.rows())
        .filter(|&r| columns.iter().all(|&c| a.get(r, c)))
        .count())
}

/// `C(n, r) mod 2`: odd exactly when every binary digit of `r` is also set
/// in `n`.
#[inline]
pub fn binom_parity(n: u64, r: u64) -> bool {
    r <= n && r & !n == 0
}
