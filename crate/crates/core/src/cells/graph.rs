//! Star edges `Γ --{s,t}-- Γ*` between the left cells of a partition.
//!
//! Right star operations map a left cell onto a left cell, so the image of
//! `Γ` is found by starring every member of `Γ` whose image stays inside the
//! ball; all such images must land in one cell.

use std::collections::BTreeSet;

use crate::cells::partition::{CellKind, CellPartition};
use crate::cells::star::{star, StarPair};
use crate::error::{Error, Result};
use crate::weyl::Side;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StarEdge {
    pub from: usize,
    pub pair: StarPair,
    pub to: usize,
}

/// For each seed cell and pair, the cell `Γ*`. Only images away from the
/// boundary of the ball are used. Seeds with no such image contribute no
/// edge. Images that disagree are an error: they would contradict the
/// partition.
pub fn cell_star_graph(partition: &CellPartition, seeds: &[usize], pairs: &[StarPair]) -> Result<Vec<StarEdge>> {
    if partition.kind != CellKind::Left {
        return Err(Error::Config("star graph needs a left cell partition".into()));
    }
    let mut edges = BTreeSet::new();
    for &from in seeds {
        for &pair in pairs {
            let mut targets = BTreeSet::new();
            for w in &partition.cells[from].members {
                if let Ok(image) = star(w, pair, Side::Right) {
                    if partition.is_provisional_element(&image) {
                        continue;
                    }
                    if let Some(j) = partition.cell_index(&image) {
                        targets.insert(j);
                    }
                }
            }
            match targets.len() {
                0 => {}
                1 => {
                    let to = *targets.first().expect("one target");
                    edges.insert(StarEdge { from, pair, to });
                }
                _ => {
                    return Err(Error::FactMismatch(format!(
                        "star {pair} sends cell {from} into cells {targets:?}"
                    )))
                }
            }
        }
    }
    Ok(edges.into_iter().collect())
}
