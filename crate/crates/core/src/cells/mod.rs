//! Cells, star operations, the a-function and the structure constants `γ`.

pub mod star;

pub use star::{in_string, separating_right_stars, star, string_context, StarPair, StringContext};
pub mod afn;

pub use afn::{
    a_factor_bound, a_lower_bound, d_string_closure, is_pinned_family_member, ACertifier, AStatus, AValue,
    CertifierConfig, Reason, A_GLOBAL_BOUND,
};
pub mod partition;

pub use partition::{cells, left_cells, right_cells, two_sided_cells, Cell, CellKind, CellPartition};
pub mod gamma;

pub use gamma::{gamma, leading_t_coefficients, GammaConfig, GammaRow, GammaTable, RowRoute};
pub mod graph;

pub use graph::{cell_star_graph, StarEdge};
pub mod laws;

pub use laws::LawReport;
