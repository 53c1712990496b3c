//! The relation `ν ⊴ μ`, holding when `h_μ[h_ν] − h_ν[h_μ]` is Schur
//! positive, with Hasse diagrams and scans for transitivity and
//! antisymmetry.

use std::fmt::Write as _;

use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partitions::{partitions_up_to, Partition};
use crate::symfunc::{plethysm_schur, SymExpr};

/// Largest `|ν||μ|` computed by default.
pub const DEFAULT_MAX_DEGREE: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderConfig {
    pub max_degree: usize,
    pub include_columns: bool,
}

impl Default for OrderConfig {
    fn default() -> Self {
        OrderConfig {
            max_degree: DEFAULT_MAX_DEGREE,
            include_columns: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationVerdict {
    pub nu: Partition,
    pub mu: Partition,
    pub holds: bool,
    /// A shape with a negative coefficient in `difference`, when the relation fails.
    pub witness: Option<Partition>,
    /// `h_μ[h_ν] − h_ν[h_μ]` in the Schur basis.
    pub difference: SymExpr,
}

impl RelationVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "nu": self.nu.parts(),
            "mu": self.mu.parts(),
            "holds": self.holds,
            "witness": self.witness.as_ref().map(|w| w.parts().to_vec()),
            "difference": self.difference.to_json(),
        })
    }
}

fn check_degree(nu: &Partition, mu: &Partition, max_degree: usize) -> Result<()> {
    if nu.is_empty() || mu.is_empty() {
        return Err(Error::usage("the relation is defined for nonempty partitions"));
    }
    let degree = nu.size() * mu.size();
    if degree > max_degree {
        return Err(Error::resource("degree", degree as u64, max_degree as u64));
    }
    Ok(())
}

/// `h_μ[h_ν] − h_ν[h_μ]` in the Schur basis.
pub fn schur_difference(nu: &Partition, mu: &Partition) -> Result<SymExpr> {
    schur_difference_capped(nu, mu, DEFAULT_MAX_DEGREE)
}

pub fn schur_difference_capped(nu: &Partition, mu: &Partition, max_degree: usize) -> Result<SymExpr> {
    check_degree(nu, mu, max_degree)?;
    plethysm_schur(mu, nu)?.sub(&*plethysm_schur(nu, mu)?)
}

pub fn is_le(nu: &Partition, mu: &Partition) -> Result<RelationVerdict> {
    is_le_capped(nu, mu, DEFAULT_MAX_DEGREE)
}

pub fn is_le_capped(nu: &Partition, mu: &Partition, max_degree: usize) -> Result<RelationVerdict> {
    let difference = schur_difference_capped(nu, mu, max_degree)?;
    let witness = difference.first_negative().map(|(lambda, _)| lambda.clone());
    Ok(RelationVerdict {
        nu: nu.clone(),
        mu: mu.clone(),
        holds: witness.is_none(),
        witness,
        difference,
    })
}

/// Outcome of comparing one ordered pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Holds,
    Fails,
    Uncomputed,
}

/// `⊴` evaluated on every ordered pair of a node list.
#[derive(Clone, Debug)]
pub struct RelationTable {
    pub nodes: Vec<Partition>,
    table: Vec<Vec<Comparison>>,
}

impl RelationTable {
    /// Compares all pairs in parallel; pairs past the degree cap are left
    /// uncomputed.
    pub fn compute(nodes: &[Partition], config: &OrderConfig) -> Result<RelationTable> {
        for (i, a) in nodes.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::usage("nodes must be nonempty partitions"));
            }
            if nodes[..i].contains(a) {
                return Err(Error::usage(format!("node {a} is repeated")));
            }
        }
        let n = nodes.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let results = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (a, b) = (&nodes[i], &nodes[j]);
                match schur_difference_capped(a, b, config.max_degree) {
                    Ok(d) => {
                        let a_le_b = d.first_negative().is_none();
                        let b_le_a = d.terms().all(|(_, c)| !c.is_positive());
                        Ok((Comparison::from(a_le_b), Comparison::from(b_le_a)))
                    }
                    Err(Error::Resource { .. }) => Ok((Comparison::Uncomputed, Comparison::Uncomputed)),
                    Err(e) => Err(e),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut table = vec![vec![Comparison::Holds; n]; n];
        for (&(i, j), (ab, ba)) in pairs.iter().zip(results) {
            table[i][j] = ab;
            table[j][i] = ba;
        }
        Ok(RelationTable {
            nodes: nodes.to_vec(),
            table,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> Comparison {
        self.table[i][j]
    }

    fn holds(&self, i: usize, j: usize) -> bool {
        self.table[i][j] == Comparison::Holds
    }

    /// `i ⊴ j` but not `j ⊴ i`.
    fn strict(&self, i: usize, j: usize) -> bool {
        i != j && self.holds(i, j) && self.table[j][i] == Comparison::Fails
    }

    /// Unordered pairs `i < j` left uncomputed.
    pub fn uncomputed(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.table[i][j] == Comparison::Uncomputed)
            .collect()
    }
}

impl From<bool> for Comparison {
    fn from(b: bool) -> Self {
        if b {
            Comparison::Holds
        } else {
            Comparison::Fails
        }
    }
}

/// Partitions of sizes `1..=max_size`, columns only when asked for.
pub fn poset_nodes(max_size: usize, include_columns: bool) -> Result<Vec<Partition>> {
    Ok(partitions_up_to(max_size)?
        .into_iter()
        .filter(|p| !p.is_empty() && (include_columns || !p.is_column()))
        .collect())
}

fn filter_nodes(nodes: &[Partition], config: &OrderConfig) -> Vec<Partition> {
    nodes
        .iter()
        .filter(|p| config.include_columns || !p.is_column())
        .cloned()
        .collect()
}

/// Covering relations of the strict part of `⊴`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    pub nodes: Vec<Partition>,
    /// `(a, b)` with `a ⊴ b` covering, as node indices.
    pub edges: Vec<(usize, usize)>,
    pub uncomputed: Vec<(usize, usize)>,
    /// Distinct nodes related both ways.
    pub equivalent: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn edge_partitions(&self) -> Vec<(Partition, Partition)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.nodes[a].clone(), self.nodes[b].clone()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let pair = |&(a, b): &(usize, usize)| json!([self.nodes[a].parts(), self.nodes[b].parts()]);
        let mut out = json!({
            "nodes": self.nodes.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(pair).collect::<Vec<_>>(),
            "uncomputed": self.uncomputed.iter().map(pair).collect::<Vec<_>>(),
        });
        if !self.equivalent.is_empty() {
            out["equivalent"] = self.equivalent.iter().map(pair).collect();
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let label = |p: &Partition| p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut out = String::from("digraph poset {\n");
        for p in &self.nodes {
            writeln!(out, "  \"{}\";", label(p)).unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  \"{}\" -> \"{}\";", label(&self.nodes[a]), label(&self.nodes[b])).unwrap();
        }
        for &(a, b) in &self.equivalent {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [dir=both, style=dashed];",
                label(&self.nodes[a]),
                label(&self.nodes[b])
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Transitive reduction of the strict relation on `nodes`: an edge is
/// dropped when a longer chain of computed strict relations joins its ends.
pub fn hasse_diagram(nodes: &[Partition], config: &OrderConfig) -> Result<HasseDiagram> {
    let table = RelationTable::compute(&filter_nodes(nodes, config), config)?;
    Ok(hasse_from_table(&table))
}

pub fn hasse_from_table(table: &RelationTable) -> HasseDiagram {
    let n = table.nodes.len();
    // reach[i][j]: a chain of strict relations leads from i to j
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| table.strict(i, j)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if table.strict(i, j) && !(0..n).any(|k| k != i && k != j && reach[i][k] && reach[k][j]) {
                edges.push((i, j));
            }
        }
    }
    let equivalent = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| table.holds(i, j) && table.holds(j, i))
        .collect();
    HasseDiagram {
        nodes: table.nodes.clone(),
        edges,
        uncomputed: table.uncomputed(),
        equivalent,
    }
}

/// Findings of a conjecture scan, with the pairs it could not decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport<T> {
    pub violations: Vec<T>,
    pub uncomputed: Vec<(Partition, Partition)>,
}

fn uncomputed_pairs(table: &RelationTable) -> Vec<(Partition, Partition)> {
    table
        .uncomputed()
        .into_iter()
        .map(|(i, j)| (table.nodes[i].clone(), table.nodes[j].clone()))
        .collect()
}

/// Triples `(a, b, c)` of distinct nodes with `a ⊴ b`, `b ⊴ c` and not `a ⊴ c`.
pub fn transitivity_scan(
    nodes: &[Partition],
    config: &OrderConfig,
) -> Result<ScanReport<(Partition, Partition, Partition)>> {
    let table = RelationTable::compute(&filter_nodes(nodes, config), config)?;
    let n = table.nodes.len();
    let mut violations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !table.holds(a, b) {
                continue;
            }
            for c in 0..n {
                if c != a && c != b && table.holds(b, c) && table.get(a, c) == Comparison::Fails {
                    let p = |i: usize| table.nodes[i].clone();
                    violations.push((p(a), p(b), p(c)));
                }
            }
        }
    }
    Ok(ScanReport {
        violations,
        uncomputed: uncomputed_pairs(&table),
    })
}

/// Pairs `a ≠ b` with `a ⊴ b` and `b ⊴ a`.
pub fn antisymmetry_scan(nodes: &[Partition], config: &OrderConfig) -> Result<ScanReport<(Partition, Partition)>> {
    let table = RelationTable::compute(&filter_nodes(nodes, config), config)?;
    let n = table.nodes.len();
    let violations = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| table.holds(i, j) && table.holds(j, i))
        .map(|(i, j)| (table.nodes[i].clone(), table.nodes[j].clone()))
        .collect();
    Ok(ScanReport {
        violations,
        uncomputed: uncomputed_pairs(&table),
    })
}
