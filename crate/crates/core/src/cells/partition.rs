//! Left, right and two-sided cells of the elements of a ball.
//!
//! `y ≤_L x` is generated by the terms of `C_s C_x` and by `τx`; right
//! cells use right multiplication and two-sided cells use both. Every edge
//! is a genuine relation in `W`, so each strongly connected component lies
//! inside one cell of `W`; a true cell may still be split when the paths
//! joining its pieces leave the ball.

use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use rustc_hash::FxHashMap;

use crate::hecke::{mult_c_s, KLCache};
use crate::weyl::{ball, GenSet, Generator, Side, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

impl CellKind {
    fn sides(self) -> &'static [Side] {
        match self {
            CellKind::Left => &[Side::Left],
            CellKind::Right => &[Side::Right],
            CellKind::TwoSided => &[Side::Left, Side::Right],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CellKind::Left => "left",
            CellKind::Right => "right",
            CellKind::TwoSided => "two-sided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Sorted by length, then reduced word.
    pub members: Vec<WeylElement>,
    /// Every member lies within distance 1 of the boundary, or the cell gains
    /// members of the ball once the ball grows by 2.
    pub provisional: bool,
    /// Common right descent set, if the members share one.
    pub r_set: Option<GenSet>,
    /// Common left descent set, if the members share one.
    pub l_set: Option<GenSet>,
}

impl Cell {
    pub fn contains(&self, w: &WeylElement) -> bool {
        self.members.contains(w)
    }

    pub fn min_element(&self) -> WeylElement {
        self.members[0]
    }
}

#[derive(Clone, Debug)]
pub struct CellPartition {
    pub radius: u32,
    pub kind: CellKind,
    /// Sorted by (shortest member, its reduced word).
    pub cells: Vec<Cell>,
    index: FxHashMap<WeylElement, usize>,
}

impl CellPartition {
    pub fn cell_of(&self, w: &WeylElement) -> Option<&Cell> {
        self.index.get(w).map(|i| &self.cells[*i])
    }

    pub fn cell_index(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn same_cell(&self, x: &WeylElement, y: &WeylElement) -> bool {
        match (self.index.get(x), self.index.get(y)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// Elements within distance 1 of the boundary, whose cell membership may
    /// change at a larger radius.
    pub fn is_provisional_element(&self, w: &WeylElement) -> bool {
        w.length() + 1 >= self.radius
    }

    pub fn elements(&self) -> impl Iterator<Item = &WeylElement> {
        self.cells.iter().flat_map(|c| c.members.iter())
    }

    /// One block per cell: a header line, then the members.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.cells.iter().enumerate() {
            let fmt_set = |s: Option<GenSet>| s.map_or("mixed".to_string(), |g| g.to_string());
            out.push_str(&format!(
                "cell {i} kind={} size={} R={} L={}{}\n",
                self.kind.name(),
                c.members.len(),
                fmt_set(c.r_set),
                fmt_set(c.l_set),
                if c.provisional { " provisional" } else { "" }
            ));
            let words: Vec<String> = c
                .members
                .iter()
                .map(|w| {
                    if self.is_provisional_element(w) {
                        format!("{w}?")
                    } else {
                        w.to_string()
                    }
                })
                .collect();
            out.push_str(&format!("  {}\n", words.join(" ")));
        }
        out
    }
}

impl fmt::Display for CellPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.report())
    }
}

/// Strongly connected components of the cell preorder on `ball(radius)`
/// (both cosets).
pub fn cells(radius: u32, kind: CellKind, cache: &KLCache) -> CellPartition {
    let mut cells = components(radius, kind, cache);
    let wider = components(radius + 2, kind, cache);
    let mut wider_index = FxHashMap::default();
    for (i, c) in wider.iter().enumerate() {
        for w in &c.members {
            wider_index.insert(*w, i);
        }
    }
    for c in &mut cells {
        let j = wider_index[&c.members[0]];
        let grows = wider[j].members.iter().filter(|w| w.length() <= radius).count() != c.members.len();
        c.provisional |= grows;
    }
    cells.sort_by_cached_key(|c| c.members[0].sort_key());
    let mut index = FxHashMap::default();
    for (i, c) in cells.iter().enumerate() {
        for w in &c.members {
            index.insert(*w, i);
        }
    }
    CellPartition {
        radius,
        kind,
        cells,
        index,
    }
}

fn components(radius: u32, kind: CellKind, cache: &KLCache) -> Vec<Cell> {
    let elems = ball(radius, true);
    let mut graph: DiGraph<WeylElement, ()> = DiGraph::with_capacity(elems.len(), 8 * elems.len());
    let mut node: FxHashMap<WeylElement, NodeIndex> = FxHashMap::default();
    for w in &elems {
        node.insert(*w, graph.add_node(*w));
    }
    for x in &elems {
        let nx = node[x];
        for &side in kind.sides() {
            let tx = x.mul_side(Generator::Tau, side);
            graph.add_edge(nx, node[&tx], ());
            for s in Generator::SIMPLE {
                if x.has_descent(s, side) {
                    continue;
                }
                for z in mult_c_s(s, x, side, cache).support() {
                    if let Some(&nz) = node.get(&z) {
                        graph.add_edge(nx, nz, ());
                    }
                }
            }
        }
    }
    tarjan_scc(&graph)
        .into_iter()
        .map(|comp| {
            let mut members: Vec<WeylElement> = comp.into_iter().map(|n| graph[n]).collect();
            members.sort_by_cached_key(|w| w.sort_key());
            let common = |side: Side| {
                let d = members[0].descents(side);
                members.iter().all(|w| w.descents(side) == d).then_some(d)
            };
            Cell {
                provisional: members.iter().all(|w| w.length() + 1 >= radius),
                r_set: common(Side::Right),
                l_set: common(Side::Left),
                members,
            }
        })
        .collect()
}

pub fn left_cells(radius: u32, cache: &KLCache) -> CellPartition {
    cells(radius, CellKind::Left, cache)
}

pub fn right_cells(radius: u32, cache: &KLCache) -> CellPartition {
    cells(radius, CellKind::Right, cache)
}

pub fn two_sided_cells(radius: u32, cache: &KLCache) -> CellPartition {
    cells(radius, CellKind::TwoSided, cache)
}
