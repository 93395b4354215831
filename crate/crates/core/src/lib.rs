//! Exact rank and label computations for real binary forms relative to the
//! rational normal curve.
//!
//! A degree-`d` binary form is a point of `P^d`; its decompositions as sums
//! of `d`-th powers of linear forms are read off from square-free forms in
//! its apolar ideal. Everything here runs in exact integer/rational
//! arithmetic.

pub mod error;
pub mod forms;
pub mod labels;
pub mod matrix;
pub mod pencil;
pub mod poly;
pub mod rank;
pub mod realroots;
pub mod regions;
pub mod ring;

pub use error::{Error, Result};
pub use forms::{apolar_system, catalecticant, contract, ApolarSystem, BinaryForm};
pub use labels::{
    label_set, label_set_with, make_sigma_prime_real, min_weight_label, pencil_partition, real_rank,
    real_rank_with, Label, LabelOptions, LabelSet, PencilPartition, RealRank, SearchMode, Witness,
};
pub use rank::{
    admissible_rank, border_rank, complex_rank, rank_profile, scheme_label_of_border_scheme,
    RankProfile, SchemeLabel,
};
pub use pencil::{LambdaPoint, Pencil};
pub use realroots::{count_real_roots, discriminant_in_lambda, isolate_real_roots, RealStructure};
pub use regions::{boundary_tracks, sample_labels, BoundarySequence, RegionReport, SampleOptions};
