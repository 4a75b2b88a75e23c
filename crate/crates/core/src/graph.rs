//! Weighted dual graphs and their DOT rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::curveclass::{classify, minus_e_support};
use crate::error::Result;
use crate::fixtures::Fixture;
use crate::lattice::ClassVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub name: String,
    pub self_intersection: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorGraph {
    pub name: String,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl DivisorGraph {
    /// Vertices in the given order; an edge for every positive intersection,
    /// and a loop on a lone nodal curve `-e_I`.
    pub fn from_curves(name: &str, curves: &[(String, ClassVector)]) -> Result<Self> {
        let mut vertices = Vec::with_capacity(curves.len());
        let mut edges = Vec::new();
        for (i, (label, c)) in curves.iter().enumerate() {
            vertices.push(Vertex {
                name: label.clone(),
                self_intersection: c.self_intersection()?,
            });
            for (j, (_, d)) in curves.iter().enumerate().skip(i + 1) {
                let m = c.intersect(d)?;
                if m > 0 {
                    edges.push(Edge { u: i, v: j, multiplicity: m });
                }
            }
        }
        if let [(_, c)] = curves {
            if !classify(c).is_curve() && minus_e_support(c).is_some() {
                edges.push(Edge { u: 0, v: 0, multiplicity: 1 });
            }
        }
        Ok(Self {
            name: name.to_string(),
            vertices,
            edges,
        })
    }

    /// Curves named `D_i` by position.
    pub fn from_classes(name: &str, classes: &[ClassVector]) -> Result<Self> {
        let named: Vec<(String, ClassVector)> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("D_{i}"), c.clone()))
            .collect();
        Self::from_curves(name, &named)
    }

    /// Curves of the fixture configuration, named from its table.
    pub fn from_fixture(f: &Fixture) -> Result<Self> {
        let classes = match &f.config {
            crate::fixtures::Config::Divisor(d) => d.all_curves(),
            crate::fixtures::Config::Cycle(c) => c.curves().to_vec(),
        };
        let named: Vec<(String, ClassVector)> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let label = f.label_of(c).map_or_else(|| format!("D_{i}"), str::to_string);
                (label, c.clone())
            })
            .collect();
        Self::from_curves(&f.fixture, &named)
    }

    pub fn degree(&self, v: usize) -> i64 {
        self.edges
            .iter()
            .map(|e| match (e.u == v, e.v == v) {
                (true, true) => 2 * e.multiplicity,
                (true, false) | (false, true) => e.multiplicity,
                (false, false) => 0,
            })
            .sum()
    }

    /// Undirected DOT, one `--` line per unit of multiplicity.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {} {{", quote(&self.name));
        for v in &self.vertices {
            let label = format!("{} ({})", v.name, v.self_intersection);
            let _ = writeln!(out, "  {} [label={}];", quote(&v.name), quote(&label));
        }
        for e in &self.edges {
            let (u, v) = (&self.vertices[e.u].name, &self.vertices[e.v].name);
            for _ in 0..e.multiplicity {
                let _ = writeln!(out, "  {} -- {};", quote(u), quote(v));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
