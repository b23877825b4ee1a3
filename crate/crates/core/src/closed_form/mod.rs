//! Closed forms for the sandpile and sand dune groups of generalized
//! de Bruijn (`d >= 2`) and Kautz (`d <= -2`) digraphs.

mod cosets;
mod dseq;
mod elements;
mod groups;

pub use cosets::{c_value, cyclotomic_cosets, CosetSystem, PrimeData};
pub use dseq::{d_type, DSequence, DType};
pub use elements::{
    element_order_in_sigma, membership_in_sandpile, sandpile_generators, Generator, SigmaElement,
};
pub use groups::{
    kernel_parts, sand_dune_coprime, sand_dune_group, sandpile_coprime, sandpile_group,
    sigma_relation_matrix, KernelParts,
};

pub fn d_sequence(n: u64, d: i64) -> crate::error::Result<DSequence> {
    DSequence::new(n, d)
}
