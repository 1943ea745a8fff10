//! Pinned reference data for `Sp6(C)`: the two-sided cell table,
//! representatives of the twelve left cells in the cell `D`, the star edges
//! between those left cells, and the parametrized involutions in
//! `Γ ∩ Γ⁻¹` for `Γ = D12` and `Γ = D013`.
//!
//! The table entries are used to certify computations (for instance the
//! value `a = 3` on `D`), never as a shortcut for computing them.

use crate::weyl::{evaluate, GenSet, WeylElement};

/// One row of the two-sided cell table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoSidedCellInfo {
    pub label: char,
    pub a: u32,
    pub left_cells: u32,
    pub jordan_blocks: &'static str,
    pub reductive_centralizer: &'static str,
}

pub const TWO_SIDED_CELLS: [TwoSidedCellInfo; 8] = [
    TwoSidedCellInfo {
        label: 'A',
        a: 9,
        left_cells: 48,
        jordan_blocks: "111111",
        reductive_centralizer: "Sp6(C)",
    },
    TwoSidedCellInfo {
        label: 'B',
        a: 6,
        left_cells: 24,
        jordan_blocks: "21111",
        reductive_centralizer: "Sp4(C) x Z/2",
    },
    TwoSidedCellInfo {
        label: 'C',
        a: 4,
        left_cells: 18,
        jordan_blocks: "2211",
        reductive_centralizer: "SL2(C) x O2(C)",
    },
    TwoSidedCellInfo {
        label: 'D',
        a: 3,
        left_cells: 12,
        jordan_blocks: "222",
        reductive_centralizer: "O3(C)",
    },
    TwoSidedCellInfo {
        label: 'E',
        a: 2,
        left_cells: 8,
        jordan_blocks: "411",
        reductive_centralizer: "SL2(C) x Z/2",
    },
    TwoSidedCellInfo {
        label: 'F',
        a: 2,
        left_cells: 6,
        jordan_blocks: "33",
        reductive_centralizer: "SL2(C)",
    },
    TwoSidedCellInfo {
        label: 'G',
        a: 1,
        left_cells: 4,
        jordan_blocks: "42",
        reductive_centralizer: "Z/2 x Z/2",
    },
    TwoSidedCellInfo {
        label: 'H',
        a: 0,
        left_cells: 1,
        jordan_blocks: "6",
        reductive_centralizer: "Z/2",
    },
];

pub fn two_sided_cell(label: char) -> Option<&'static TwoSidedCellInfo> {
    TWO_SIDED_CELLS.iter().find(|c| c.label == label)
}

/// Value of the a-function on the cell `D`.
pub const A_OF_D: u32 = 3;

/// A left cell of `D` with its name, right descent set and a representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeftCellRep {
    pub name: &'static str,
    pub r_set: &'static str,
    pub word: &'static str,
}

impl LeftCellRep {
    pub fn element(&self) -> WeylElement {
        evaluate(self.word).expect("valid pinned word")
    }

    pub fn r_set(&self) -> GenSet {
        GenSet::from_labels(self.r_set).expect("valid pinned labels")
    }
}

pub const D_LEFT_CELLS: [LeftCellRep; 12] = [
    LeftCellRep {
        name: "D013",
        r_set: "013",
        word: "013",
    },
    LeftCellRep {
        name: "D2",
        r_set: "2",
        word: "0132",
    },
    LeftCellRep {
        name: "D02",
        r_set: "02",
        word: "01320",
    },
    LeftCellRep {
        name: "D12",
        r_set: "12",
        word: "01321",
    },
    LeftCellRep {
        name: "D3",
        r_set: "3",
        word: "01323",
    },
    LeftCellRep {
        name: "D03",
        r_set: "03",
        word: "013203",
    },
    LeftCellRep {
        name: "D01",
        r_set: "01",
        word: "013201",
    },
    LeftCellRep {
        name: "D13",
        r_set: "13",
        word: "013213",
    },
    LeftCellRep {
        name: "D'2",
        r_set: "2",
        word: "0132032",
    },
    LeftCellRep {
        name: "D'2hat",
        r_set: "2",
        word: "0132132",
    },
    LeftCellRep {
        name: "D1",
        r_set: "1",
        word: "01320321",
    },
    LeftCellRep {
        name: "D0",
        r_set: "0",
        word: "01321320",
    },
];

pub fn d_left_cell(name: &str) -> Option<&'static LeftCellRep> {
    D_LEFT_CELLS.iter().find(|c| c.name == name)
}

/// Star edges `Γ --{s,t}-- Γ*` between left cells of `D`, with the pair given
/// by its two labels.
pub const D_STAR_EDGES: [(&str, &str, &str); 10] = [
    ("D3", "23", "D013"),
    ("D013", "12", "D2"),
    ("D0", "02", "D'2hat"),
    ("D'2hat", "23", "D12"),
    ("D12", "02", "D01"),
    ("D01", "12", "D02"),
    ("D02", "23", "D'2"),
    ("D'2", "12", "D1"),
    ("D'2hat", "12", "D13"),
    ("D'2", "02", "D03"),
];

fn power_word(block: &str, k: usize, tail: &str) -> WeylElement {
    evaluate(&format!("{}{}", block.repeat(k), tail)).expect("valid pinned word")
}

/// `x_k = (s1 s2 s3 s0)^k s1 s2 s1`.
pub fn x_k(k: usize) -> WeylElement {
    power_word("1230", k, "121")
}

/// `x'_0 = τ s2 s0 s1 s2 s1`, `x'_{k+1} = τ s0 s2 s3 s0 (s1 s2 s3 s0)^k s1 s2 s1`.
pub fn x_prime_k(k: usize) -> WeylElement {
    if k == 0 {
        evaluate("t20121").expect("valid pinned word")
    } else {
        evaluate("t0230")
            .expect("valid pinned word")
            .mul(&power_word("1230", k - 1, "121"))
    }
}

/// `u_k = (s0 s1 s3 s2)^k s0 s1 s3`.
pub fn u_k(k: usize) -> WeylElement {
    power_word("0132", k, "013")
}

/// `u'_k = τ u_k`.
pub fn u_prime_k(k: usize) -> WeylElement {
    WeylElement::tau().mul(&u_k(k))
}
