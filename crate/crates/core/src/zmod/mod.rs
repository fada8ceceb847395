//! Modules over the structure algebra of a block: the center, graded
//! lattices, translation through walls, Bott-Samelson lattices, graded Hom
//! spaces and decompositions.

pub mod algebra;
pub mod center;
pub mod decompose;
pub mod graph;
pub mod hom;
pub mod lattice;
pub mod poly;

pub use center::{structure_algebra, subalgebra_member};
pub use decompose::{decompose, graded_char, singular_reduce, Projectives};
pub use graph::MomentGraph;
pub use hom::{compose, hom_graded, HomMap};
pub use lattice::{bott_samelson, theta_s, verma_zmodule, Generator, ZLattice};
pub use poly::Poly;
