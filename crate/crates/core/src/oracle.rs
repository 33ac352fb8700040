//! Independent ground truth for Stiefel–Whitney classes.
//!
//! The mod-2 cohomology of the small cover is the polynomial ring in
//! `x1..xk` modulo the substituted Stanley–Reisner generators
//!
//! ```text
//! g_i = x_i · ∏_{rows r of block i} (Σ_l a_{r,l} x_l),    deg g_i = n_i + 1
//! ```
//!
//! and the total class is `∏_i (1 + x_i) · ∏_r (1 + Σ_l a_{r,l} x_l)`.
//! Ideal membership is decided degree by degree with GF(2) row reduction;
//! pivots follow graded-lex order so normal forms are canonical.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::model::{require_valid, ReducedMatrix};
use crate::poly::{GradedPolynomial, Monomial, MonomialTable};

/// The presentation `Z_2[x1..xk] / (g_1, …, g_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub omega: crate::model::DimensionVector,
    /// `generators[i]` is `g_i`, homogeneous of degree `n_i + 1`.
    pub generators: Vec<GradedPolynomial>,
}

/// Variables appearing in row `r`: the linear form `Σ_l a_{r,l} x_l`.
fn row_form(a: &ReducedMatrix, r: usize) -> Vec<usize> {
    a.matrix().row(r).ones_iter().collect()
}

fn generator_dense(a: &ReducedMatrix, i: usize, table: &MonomialTable) -> BitVector {
    let k = a.k();
    let mut v = table.to_dense(&GradedPolynomial::from_terms(k, [Monomial::var(k, i)]), 1);
    for (d, r) in a.omega().block_rows(i).enumerate() {
        v = table.mul_linear(d + 1, &v, &row_form(a, r));
    }
    v
}

pub fn relation_generators(a: &ReducedMatrix) -> Result<RingPresentation> {
    require_valid(a)?;
    let max = a.omega().dims().iter().max().copied().unwrap_or(0) + 1;
    let table = MonomialTable::new(a.k(), max);
    let generators = (0..a.k())
        .map(|i| {
            let d = a.omega().dim(i) + 1;
            table.to_sparse(d, &generator_dense(a, i, &table))
        })
        .collect();
    Ok(RingPresentation {
        omega: a.omega().clone(),
        generators,
    })
}

/// Dense expansion of the total class, degrees `0..=maxdeg`.
fn total_dense(a: &ReducedMatrix, maxdeg: usize, table: &MonomialTable) -> Vec<BitVector> {
    let k = a.k();
    let mut p: Vec<BitVector> = (0..=maxdeg).map(|d| BitVector::zeros(table.dim(d))).collect();
    p[0].set(0, true);
    let forms = (0..k)
        .map(|i| vec![i])
        .chain((0..a.n()).map(|r| row_form(a, r)));
    for form in forms {
        for d in (1..=maxdeg).rev() {
            let shifted = table.mul_linear(d - 1, &p[d - 1], &form);
            p[d].xor_assign(&shifted);
        }
    }
    p
}

pub fn total_sw_truncated(a: &ReducedMatrix, maxdeg: usize) -> Result<GradedPolynomial> {
    require_valid(a)?;
    let table = MonomialTable::new(a.k(), maxdeg);
    let dense = total_dense(a, maxdeg, &table);
    let mut out = GradedPolynomial::zero(a.k());
    for (d, v) in dense.iter().enumerate() {
        out.add_assign(&table.to_sparse(d, v));
    }
    Ok(out)
}

/// A reduced row echelon basis of a subspace of the degree-`d` monomial
/// space. Row pivots are their graded-lex leading monomials.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    degree: usize,
    monomials: Arc<Vec<Monomial>>,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    fn new(degree: usize, monomials: Arc<Vec<Monomial>>) -> Self {
        EchelonBasis {
            degree,
            monomials,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Dimension of the ambient monomial space.
    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    /// Leading monomials of the basis rows, in increasing pivot index.
    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.pivots.iter().map(|&p| &self.monomials[p]).collect()
    }

    /// Basis rows as polynomials.
    pub fn polynomials(&self) -> Vec<GradedPolynomial> {
        let k = self.monomials.first().map_or(0, |m| m.exponents().len());
        self.rows
            .iter()
            .map(|r| {
                GradedPolynomial::from_terms(k, r.ones_iter().map(|i| self.monomials[i].clone()))
            })
            .collect()
    }

    pub(crate) fn reduce(&self, v: &mut BitVector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    fn insert(&mut self, mut v: BitVector) {
        self.reduce(&mut v);
        let Some(p) = v.first_one() else { return };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
    }
}

fn degree_basis(
    gens: &[(usize, GradedPolynomial)],
    d: usize,
    table: &MonomialTable,
) -> EchelonBasis {
    let mut basis = EchelonBasis::new(d, Arc::new(table.monomials(d).to_vec()));
    for (deg, g) in gens {
        if *deg > d {
            continue;
        }
        for m in table.monomials(d - deg) {
            let mut v = BitVector::zeros(table.dim(d));
            for t in g.terms() {
                let idx = table
                    .index_of(&t.mul(m))
                    .expect("product lies in the degree-d space");
                v.flip(idx);
            }
            basis.insert(v);
        }
    }
    basis
}

/// Basis of the degree-`d` part of the ideal `(g_1, …, g_k)`.
pub fn ideal_degree_basis(r: &RingPresentation, d: usize) -> EchelonBasis {
    let table = MonomialTable::new(r.omega.k(), d);
    degree_basis(&presentation_degrees(r), d, &table)
}

fn presentation_degrees(r: &RingPresentation) -> Vec<(usize, GradedPolynomial)> {
    r.generators
        .iter()
        .enumerate()
        .map(|(i, g)| (r.omega.dim(i) + 1, g.clone()))
        .collect()
}

/// Canonical representative of `p` modulo the ideal, degree by degree.
pub fn normal_form(p: &GradedPolynomial, r: &RingPresentation) -> GradedPolynomial {
    let Some(top) = p.max_degree() else {
        return p.clone();
    };
    let top = top as usize;
    let table = MonomialTable::new(r.omega.k(), top);
    let gens = presentation_degrees(r);
    let mut out = GradedPolynomial::zero(r.omega.k());
    for d in 0..=top {
        let mut v = table.to_dense(p, d);
        if v.is_zero() {
            continue;
        }
        degree_basis(&gens, d, &table).reduce(&mut v);
        out.add_assign(&table.to_sparse(d, &v));
    }
    out
}

/// Reduced `w_m(M)`.
pub fn sw_oracle(a: &ReducedMatrix, m: usize) -> Result<GradedPolynomial> {
    if m == 0 || m > a.n() {
        return Err(Error::Argument(format!(
            "degree {m} outside 1..={} (the manifold dimension)",
            a.n()
        )));
    }
    let oracle = Oracle::new(a.k(), m);
    Ok(oracle.evaluate(a)?.reduced(m))
}

/// Spin iff the reduced `w_1` and `w_2` vanish.
pub fn oracle_has_spin(a: &ReducedMatrix) -> Result<bool> {
    let oracle = Oracle::new(a.k(), 2);
    Ok(oracle.evaluate(a)?.spin())
}

/// Reusable oracle for many matrices with the same number of factors.
/// Immutable and shareable across worker threads.
#[derive(Debug)]
pub struct Oracle {
    table: MonomialTable,
}

impl Oracle {
    pub fn new(k: usize, max_deg: usize) -> Self {
        Oracle {
            table: MonomialTable::new(k, max_deg),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.table.max_degree()
    }

    pub fn table(&self) -> &MonomialTable {
        &self.table
    }

    /// Expands and reduces all classes up to the oracle's maximal degree.
    pub fn evaluate(&self, a: &ReducedMatrix) -> Result<OracleClasses> {
        require_valid(a)?;
        Ok(self.evaluate_unchecked(a))
    }

    /// As [`Oracle::evaluate`], for callers that already validated `a`.
    pub fn evaluate_unchecked(&self, a: &ReducedMatrix) -> OracleClasses {
        assert_eq!(a.k(), self.table.k(), "oracle built for a different k");
        let maxdeg = self.table.max_degree();
        let raw = total_dense(a, maxdeg, &self.table);
        let gens: Vec<(usize, GradedPolynomial)> = (0..a.k())
            .filter(|&i| a.omega().dim(i) < maxdeg)
            .map(|i| {
                let d = a.omega().dim(i) + 1;
                (d, self.table.to_sparse(d, &generator_dense(a, i, &self.table)))
            })
            .collect();
        let reduced = raw
            .iter()
            .enumerate()
            .map(|(d, v)| {
                let mut v = v.clone();
                if d > 0 {
                    degree_basis(&gens, d, &self.table).reduce(&mut v);
                }
                v
            })
            .collect();
        OracleClasses {
            k: a.k(),
            n: a.n(),
            monomials: (0..=maxdeg).map(|d| self.table.monomials(d).to_vec()).collect(),
            raw,
            reduced,
        }
    }
}

/// Pre- and post-reduction classes of one matrix.
#[derive(Clone, Debug)]
pub struct OracleClasses {
    k: usize,
    n: usize,
    monomials: Vec<Vec<Monomial>>,
    raw: Vec<BitVector>,
    reduced: Vec<BitVector>,
}

impl OracleClasses {
    fn sparse(&self, d: usize, v: &BitVector) -> GradedPolynomial {
        GradedPolynomial::from_terms(self.k, v.ones_iter().map(|i| self.monomials[d][i].clone()))
    }

    pub fn max_degree(&self) -> usize {
        self.raw.len() - 1
    }

    /// Degree-`m` piece of the expanded product, before reduction.
    pub fn expanded(&self, m: usize) -> GradedPolynomial {
        self.sparse(m, &self.raw[m])
    }

    /// Reduced `w_m`; zero above the manifold dimension.
    pub fn reduced(&self, m: usize) -> GradedPolynomial {
        self.sparse(m, &self.reduced[m])
    }

    pub fn vanishes(&self, m: usize) -> bool {
        m > self.n || self.reduced[m].is_zero()
    }

    /// `w_1 = w_2 = 0`.
    pub fn spin(&self) -> bool {
        self.vanishes(1) && self.vanishes(2)
    }

    /// Reduces an arbitrary homogeneous polynomial of degree `d` with the
    /// same ideal. Used to compare closed forms after reduction.
    pub fn reduce_with(&self, oracle: &Oracle, a: &ReducedMatrix, p: &GradedPolynomial, d: usize) -> GradedPolynomial {
        let table = oracle.table();
        let gens: Vec<(usize, GradedPolynomial)> = (0..a.k())
            .filter(|&i| a.omega().dim(i) < d)
            .map(|i| {
                let deg = a.omega().dim(i) + 1;
                (deg, table.to_sparse(deg, &generator_dense(a, i, table)))
            })
            .collect();
        let mut v = table.to_dense(p, d);
        degree_basis(&gens, d, table).reduce(&mut v);
        table.to_sparse(d, &v)
    }
}
