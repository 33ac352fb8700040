//! ω-weighted acyclic digraphs. Vertex `v_i` carries dimension `ω(i)`; an
//! edge `v_i → v_j` carries a nonzero weight in `GF(2)^{ω(i)}`. The
//! adjacency matrix of the digraph is `A - I_ω`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::model::{require_valid, topological_order, DimensionVector, ReducedMatrix};
use crate::swclosed::{w3_residue_conditions, Condition, SpinReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    omega: DimensionVector,
    edges: BTreeMap<(usize, usize), BitVector>,
}

impl WeightedDigraph {
    /// Builds a digraph from 0-based edges. Zero weights are dropped.
    pub fn new<I>(omega: DimensionVector, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, BitVector)>,
    {
        let k = omega.k();
        let mut map = BTreeMap::new();
        for (i, j, w) in edges {
            if i >= k || j >= k {
                return Err(Error::Structural(format!(
                    "edge ({}, {}) has a vertex outside 1..={k}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::Structural(format!("self-loop at v{}", i + 1)));
            }
            if w.len() != omega.dim(i) {
                return Err(Error::Structural(format!(
                    "edge v{} -> v{} has weight of length {}, expected {}",
                    i + 1,
                    j + 1,
                    w.len(),
                    omega.dim(i)
                )));
            }
            if map.contains_key(&(i, j)) {
                return Err(Error::Structural(format!(
                    "duplicate edge v{} -> v{}",
                    i + 1,
                    j + 1
                )));
            }
            if !w.is_zero() {
                map.insert((i, j), w);
            }
        }
        let g = WeightedDigraph { omega, edges: map };
        if topological_order(&g.successors()).is_none() {
            return Err(Error::Structural("digraph has a directed cycle".into()));
        }
        Ok(g)
    }

    pub fn edgeless(omega: DimensionVector) -> Self {
        WeightedDigraph {
            omega,
            edges: BTreeMap::new(),
        }
    }

    pub fn omega(&self) -> &DimensionVector {
        &self.omega
    }

    pub fn k(&self) -> usize {
        self.omega.k()
    }

    /// Edges in `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &BitVector)> {
        self.edges.iter().map(|(&(i, j), w)| (i, j, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<&BitVector> {
        self.edges.get(&(i, j))
    }

    fn weight_size(&self, i: usize, j: usize) -> usize {
        self.weight(i, j).map_or(0, BitVector::count_ones)
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k()];
        for &(i, j) in self.edges.keys() {
            out[i].push(j);
        }
        out
    }

    fn check_vertex(&self, i: usize) -> Result<()> {
        if i >= self.k() {
            return Err(Error::Argument(format!(
                "vertex {} out of range 1..={}",
                i + 1,
                self.k()
            )));
        }
        Ok(())
    }

    /// Vertex `i` becomes vertex `sigma[i]`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Self> {
        let k = self.k();
        let mut seen = vec![false; k];
        if sigma.len() != k
            || sigma
                .iter()
                .any(|&s| s >= k || std::mem::replace(&mut seen[s], true))
        {
            return Err(Error::Argument(format!("{sigma:?} is not a permutation")));
        }
        let mut dims = vec![0; k];
        for i in 0..k {
            dims[sigma[i]] = self.omega.dim(i);
        }
        Self::new(
            DimensionVector::new(dims)?,
            self.edges()
                .map(|(i, j, w)| (sigma[i], sigma[j], w.clone())),
        )
    }

    pub fn to_json(&self) -> String {
        let doc = DigraphDoc {
            omega: self.omega.dims().to_vec(),
            edges: self
                .edges()
                .map(|(i, j, w)| EdgeDoc {
                    from: i + 1,
                    to: j + 1,
                    w: w.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("digraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DigraphDoc = serde_json::from_str(text)?;
        let omega = DimensionVector::new(doc.omega)?;
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in doc.edges {
            if e.from == 0 || e.to == 0 {
                return Err(Error::Structural("vertices are numbered from 1".into()));
            }
            let w = BitVector::parse(&e.w).ok_or_else(|| {
                Error::Structural(format!("edge weight {:?} is not a bit string", e.w))
            })?;
            edges.push((e.from - 1, e.to - 1, w));
        }
        Self::new(omega, edges)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphDoc {
    omega: Vec<usize>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    from: usize,
    to: usize,
    w: String,
}

pub fn from_matrix(a: &ReducedMatrix) -> Result<WeightedDigraph> {
    require_valid(a)?;
    let k = a.k();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                edges.push((i, j, a.block(i, j)));
            }
        }
    }
    WeightedDigraph::new(a.omega().clone(), edges).map_err(|e| match e {
        Error::Structural(msg) => {
            Error::Structural(format!("matrix {a:?} does not give an acyclic digraph: {msg}"))
        }
        other => other,
    })
}

pub fn to_matrix(g: &WeightedDigraph) -> ReducedMatrix {
    let mut mat: BitMatrix = g.omega.identity_matrix();
    for (i, j, w) in g.edges() {
        let base = g.omega.offset(i);
        for t in w.ones_iter() {
            mat.set(base + t, j, true);
        }
    }
    ReducedMatrix::new(g.omega.clone(), mat).expect("shape follows ω")
}

/// `deg⁻(v_i) = Σ_u |w(u, v_i)|`.
pub fn weighted_in_degree(g: &WeightedDigraph, i: usize) -> Result<usize> {
    g.check_vertex(i)?;
    Ok((0..g.k()).map(|u| g.weight_size(u, i)).sum())
}

/// `M_ij = Σ_u w(u, v_i) · w(u, v_j)` over common in-neighbours `u`.
pub fn common_source_sum(g: &WeightedDigraph, i: usize, j: usize) -> Result<usize> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if i == j {
        return Err(Error::Argument(format!(
            "common_source_sum needs distinct vertices, got v{} twice",
            i + 1
        )));
    }
    Ok((0..g.k())
        .filter_map(|u| Some(g.weight(u, i)?.and_count(g.weight(u, j)?)))
        .sum())
}

fn odd(x: usize) -> bool {
    x & 1 == 1
}

pub fn has_spin_digraph(g: &WeightedDigraph) -> SpinReport {
    let k = g.k();
    let indeg: Vec<usize> = (0..k)
        .map(|i| weighted_in_degree(g, i).expect("index in range"))
        .collect();
    let orientable = (0..k).all(|i| odd(indeg[i] + g.omega.dim(i)));
    let mut violations = Vec::new();
    for (i, &d) in indeg.iter().enumerate() {
        let w = g.omega.dim(i);
        let ok = if w == 1 { !odd(d) } else { (d + w) % 4 == 3 };
        if !ok {
            violations.push(Violation {
                condition: Condition::I,
                indices: vec![i],
            });
        }
    }
    if !violations.is_empty() {
        return SpinReport::from_violations(orientable, violations);
    }
    for i in 0..k {
        for j in i + 1..k {
            let m = common_source_sum(g, i, j).expect("distinct vertices");
            let edge = match (g.weight(i, j), g.weight(j, i)) {
                (Some(w), _) => Some((i, j, w)),
                (None, Some(w)) => Some((j, i, w)),
                (None, None) => None,
            };
            let (condition, indices, ok) = match edge {
                None => (Condition::Ii, vec![i, j], !odd(m)),
                Some((s, t, w)) if g.omega.dim(s) == 1 => {
                    let lhs = usize::from(w.get(0)) * indeg[s];
                    (Condition::Iii, vec![s, t], odd(m) == odd(lhs / 2))
                }
                Some((s, t, w)) => (Condition::Iv, vec![s, t], odd(m) == odd(w.count_ones())),
            };
            if !ok {
                violations.push(Violation { condition, indices });
            }
        }
    }
    SpinReport::from_violations(orientable, violations)
}

/// The `w_3` vanishing conditions in digraph terms; every `ω(v_i) ≥ 3`.
pub fn w3_vanishes_digraph(g: &WeightedDigraph) -> Result<bool> {
    let k = g.k();
    if let Some(i) = (0..k).find(|&i| g.omega.dim(i) < 3) {
        return Err(Error::Argument(format!(
            "w3_vanishes_digraph needs every ω(v_i) >= 3, but ω(v{}) = {}",
            i + 1,
            g.omega.dim(i)
        )));
    }
    let r: Vec<usize> = (0..k)
        .map(|i| (weighted_in_degree(g, i).expect("in range") + g.omega.dim(i)) % 4)
        .collect();
    let k2 = |i: usize, j: usize| {
        common_source_sum(g, i, j).expect("distinct") + g.weight_size(i, j) + g.weight_size(j, i)
    };
    Ok(w3_residue_conditions(k, &r, k2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example4() -> ReducedMatrix {
        ReducedMatrix::from_strs(
            &[2, 3, 3, 3],
            &[
                "1101", "1001", "0100", "0100", "0100", "0010", "0010", "0010", "0111", "0101",
                "0111",
            ],
        )
        .unwrap()
    }

    fn bits(s: &str) -> BitVector {
        BitVector::parse(s).unwrap()
    }

    #[test]
    fn example_digraph_edges() {
        let g = from_matrix(&example4()).unwrap();
        let edges: Vec<(usize, usize, String)> =
            g.edges().map(|(i, j, w)| (i, j, w.to_string())).collect();
        assert_eq!(
            edges,
            vec![
                (0, 1, "10".into()),
                (0, 3, "11".into()),
                (3, 1, "111".into()),
                (3, 2, "101".into()),
            ]
        );
        assert_eq!(to_matrix(&g), example4());
        assert_eq!(weighted_in_degree(&g, 2).unwrap(), 2);
        assert_eq!(common_source_sum(&g, 1, 2).unwrap(), 2);
    }

    #[test]
    fn example_digraph_not_spin() {
        let r = has_spin_digraph(&from_matrix(&example4()).unwrap());
        assert!(!r.spin);
        assert_eq!(r.failed_condition(), Some(Condition::I));
        assert!(r.violations.contains(&Violation {
            condition: Condition::I,
            indices: vec![2]
        }));
    }

    #[test]
    fn identity_gives_edgeless() {
        let omega = DimensionVector::new(vec![1, 1]).unwrap();
        let g = from_matrix(&ReducedMatrix::identity(omega.clone())).unwrap();
        assert_eq!(g, WeightedDigraph::edgeless(omega.clone()));
        assert_eq!(to_matrix(&g), ReducedMatrix::identity(omega));
        assert!(has_spin_digraph(&g).spin);
        assert_eq!(weighted_in_degree(&g, 0).unwrap(), 0);
    }

    #[test]
    fn klein_bottle_edge() {
        let a = ReducedMatrix::from_strs(&[1, 1], &["11", "01"]).unwrap();
        let g = from_matrix(&a).unwrap();
        let edges: Vec<_> = g.edges().map(|(i, j, w)| (i, j, w.to_string())).collect();
        // v_12 = 1 sits in block 1, column 2
        assert_eq!(edges, vec![(0, 1, "1".to_string())]);
    }

    #[test]
    fn edgeless_three_mod_four_is_spin() {
        let g = WeightedDigraph::edgeless(DimensionVector::new(vec![3, 7, 11]).unwrap());
        assert!(has_spin_digraph(&g).spin);
    }

    #[test]
    fn construction_errors() {
        let omega = DimensionVector::new(vec![1, 2]).unwrap();
        let cyc = WeightedDigraph::new(
            omega.clone(),
            vec![(0, 1, bits("1")), (1, 0, bits("01"))],
        );
        assert!(matches!(cyc, Err(Error::Structural(_))));
        let short = WeightedDigraph::new(omega.clone(), vec![(1, 0, bits("1"))]);
        assert!(matches!(short, Err(Error::Structural(_))));
        let looped = WeightedDigraph::new(omega.clone(), vec![(0, 0, bits("1"))]);
        assert!(matches!(looped, Err(Error::Structural(_))));
        let zero = WeightedDigraph::new(omega.clone(), vec![(1, 0, bits("00"))]).unwrap();
        assert_eq!(zero, WeightedDigraph::edgeless(omega));
    }

    #[test]
    fn common_source_sum_rejects_equal() {
        let g = from_matrix(&example4()).unwrap();
        assert!(common_source_sum(&g, 1, 1).is_err());
        assert!(weighted_in_degree(&g, 9).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = from_matrix(&example4()).unwrap();
        let text = g.to_json();
        assert_eq!(WeightedDigraph::from_json(&text).unwrap(), g);
        let bad = r#"{"omega":[1],"edges":[],"extra":1}"#;
        assert!(WeightedDigraph::from_json(bad).is_err());
        let edgeless = r#"{"omega":[1,1],"edges":[]}"#;
        let g = WeightedDigraph::from_json(edgeless).unwrap();
        assert_eq!(crate::model::write_matrix_file(&to_matrix(&g)), "1 1\n10\n01\n");
    }

    #[test]
    fn w3_digraph_examples() {
        let g = WeightedDigraph::edgeless(DimensionVector::new(vec![3, 3]).unwrap());
        assert!(w3_vanishes_digraph(&g).unwrap());
        assert!(w3_vanishes_digraph(&from_matrix(&example4()).unwrap()).is_err());
    }
}
