//! Pairwise secret-key rate regions for three-user generalized multiple-access
//! channels: entropy primitives, channel and auxiliary-design models, inner and
//! outer bound evaluators, closed forms for the binary examples and a
//! Monte-Carlo coding simulator.

pub mod channel;
pub mod closed_form;
pub mod design;
pub mod error;
pub mod figures;
pub mod prob;
pub mod region;
pub mod runner;
pub mod selfcheck;
pub mod sim;
pub mod sweep;

pub use channel::{ChannelSpec, Gdmmac};
pub use design::{induce_joint, AuxDesign, DesignSpec, Kernel, Marginal, SecondaryLayer};
pub use error::{Error, Result};
pub use prob::{binary_convolution, binary_entropy, Alphabet, EntropyCache, JointPmf};
pub use region::{
    gen_atoms, gen_region, outer_bound_th2, outer_bound_th4, pregen_atoms, pregen_region, GenAtoms,
    PreGenAtoms, RateAxis, RateTriple, RegionEvaluation, Scheme,
};
pub use sweep::{pareto_project, sweep, DesignFamily, Grid, NamedFamily, SweepPoint};
