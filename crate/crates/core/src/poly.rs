//! Polynomials over GF(2) in the variables `x1..xk` (standing for the
//! classes `x_{10}, …, x_{k0}`).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::gf2::BitVector;

/// An exponent vector. Ordered graded-lexicographically: total degree
/// first, then lexicographically with `x1 > x2 > … > xk`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(k: usize) -> Self {
        Monomial(vec![0; k])
    }

    /// The variable `x_{i+1}`.
    pub fn var(k: usize, i: usize) -> Self {
        let mut e = vec![0; k];
        e[i] = 1;
        Monomial(e)
    }

    /// Monomial from a multiset of variable indices, e.g. `[0, 0, 2]` is `x1^2*x3`.
    pub fn from_indices(k: usize, indices: &[usize]) -> Self {
        let mut e = vec![0; k];
        for &i in indices {
            e[i] += 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial over GF(2): the set of monomials with coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    k: usize,
    terms: BTreeSet<Monomial>,
}

impl GradedPolynomial {
    pub fn zero(k: usize) -> Self {
        GradedPolynomial {
            k,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        let mut p = Self::zero(k);
        p.add_term(Monomial::one(k));
        p
    }

    pub fn from_terms<I: IntoIterator<Item = Monomial>>(k: usize, terms: I) -> Self {
        let mut p = Self::zero(k);
        for t in terms {
            p.add_term(t);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.k
    }

    /// Adds a monomial with coefficient 1 (cancelling an existing copy).
    pub fn add_term(&mut self, m: Monomial) {
        assert_eq!(m.0.len(), self.k, "monomial in wrong number of variables");
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &GradedPolynomial) {
        for t in &other.terms {
            self.add_term(t.clone());
        }
    }

    pub fn mul(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = Self::zero(self.k);
        for a in &self.terms {
            for b in &other.terms {
                out.add_term(a.mul(b));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().next_back().map(Monomial::degree)
    }

    /// The homogeneous piece of degree `d`.
    pub fn degree_part(&self, d: u32) -> GradedPolynomial {
        Self::from_terms(
            self.k,
            self.terms.iter().filter(|m| m.degree() == d).cloned(),
        )
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPolynomial({self})")
    }
}

/// Indexing of all monomials of degree `0..=max_deg` in `k` variables, for
/// dense per-degree bit-vector arithmetic. Within a degree, index 0 is the
/// graded-lex largest monomial.
#[derive(Debug)]
pub struct MonomialTable {
    k: usize,
    max_deg: usize,
    monomials: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    /// `shift[d][i][v]`: index in degree `d+1` of monomial `i` times `x_v`.
    shift: Vec<Vec<Vec<usize>>>,
}

impl MonomialTable {
    pub fn new(k: usize, max_deg: usize) -> Self {
        let monomials: Vec<Vec<Monomial>> = (0..=max_deg)
            .map(|d| {
                let mut out = Vec::new();
                descending(k, d as u32, &mut Vec::with_capacity(k), &mut out);
                out
            })
            .collect();
        let index: Vec<HashMap<Monomial, usize>> = monomials
            .iter()
            .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let shift = (0..max_deg)
            .map(|d| {
                monomials[d]
                    .iter()
                    .map(|m| {
                        (0..k)
                            .map(|v| index[d + 1][&m.mul(&Monomial::var(k, v))])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        MonomialTable {
            k,
            max_deg,
            monomials,
            index,
            shift,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_degree(&self) -> usize {
        self.max_deg
    }

    pub fn monomials(&self, d: usize) -> &[Monomial] {
        &self.monomials[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.monomials[d].len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index
            .get(m.degree() as usize)
            .and_then(|ix| ix.get(m).copied())
    }

    /// Homogeneous degree-`d` vector times the linear form `Σ_{v ∈ form} x_v`.
    pub(crate) fn mul_linear(&self, d: usize, p: &BitVector, form: &[usize]) -> BitVector {
        let mut out = BitVector::zeros(self.dim(d + 1));
        for i in p.ones_iter() {
            for &v in form {
                out.flip(self.shift[d][i][v]);
            }
        }
        out
    }

    pub(crate) fn to_dense(&self, p: &GradedPolynomial, d: usize) -> BitVector {
        let mut v = BitVector::zeros(self.dim(d));
        for t in p.terms().filter(|t| t.degree() as usize == d) {
            v.flip(self.index[d][t]);
        }
        v
    }

    pub(crate) fn to_sparse(&self, d: usize, v: &BitVector) -> GradedPolynomial {
        GradedPolynomial::from_terms(self.k, v.ones_iter().map(|i| self.monomials[d][i].clone()))
    }
}

fn descending(k: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == k {
        prefix.push(d);
        out.push(Monomial(prefix.clone()));
        prefix.pop();
        return;
    }
    if k == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for e in (0..=d).rev() {
        prefix.push(e);
        descending(k, d - e, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn display_format() {
        let p = GradedPolynomial::from_terms(3, [mono(&[2, 0, 1]), mono(&[0, 1, 0])]);
        assert_eq!(p.to_string(), "x1^2*x3 + x2");
        assert_eq!(GradedPolynomial::zero(2).to_string(), "0");
        assert_eq!(GradedPolynomial::one(2).to_string(), "1");
    }

    #[test]
    fn graded_lex_order() {
        assert!(mono(&[0, 2]) > mono(&[1, 0]));
        assert!(mono(&[1, 1]) > mono(&[0, 2]));
        assert!(mono(&[2, 0]) > mono(&[1, 1]));
    }

    #[test]
    fn characteristic_two_arithmetic() {
        // (x1 + x2)^2 = x1^2 + x2^2
        let s = GradedPolynomial::from_terms(2, [mono(&[1, 0]), mono(&[0, 1])]);
        assert_eq!(s.mul(&s).to_string(), "x1^2 + x2^2");
        let mut t = s.clone();
        t.add_assign(&s);
        assert!(t.is_zero());
    }

    #[test]
    fn table_counts_and_order() {
        let t = MonomialTable::new(3, 4);
        for d in 0..=4 {
            // C(d + 2, 2)
            assert_eq!(t.dim(d), (d + 2) * (d + 1) / 2);
            let ms = t.monomials(d);
            assert!(ms.windows(2).all(|w| w[0] > w[1]));
        }
        assert_eq!(t.monomials(2)[0], mono(&[2, 0, 0]));
        let x1 = t.to_dense(&GradedPolynomial::from_terms(3, [mono(&[1, 0, 0])]), 1);
        let sq = t.mul_linear(1, &x1, &[0, 2]);
        assert_eq!(t.to_sparse(2, &sq).to_string(), "x1^2 + x1*x3");
    }
}
