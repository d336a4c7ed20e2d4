//! Superexponential linear logic: formulas, parameter instances, proof
//! checking, cut elimination, proof rewrites, preset systems and bounded
//! cut-free search.

pub mod gen;
pub mod instance;
pub mod parse;
pub mod presets;
pub mod proof;
pub mod search;
pub mod syntax;
pub mod transform;

pub use instance::{
    check_cut_axioms, check_expansion_axiom, check_girardization_axioms, check_subsumption_axioms,
    eval_param, find_witness, is_functional, parse_instance, AxiomReport, AxiomTable, Bounds,
    Domain, Instance, Obligation, ParamQuery, Proved,
};
pub use parse::{parse_formula, parse_sequent, ParseError};
pub use presets::{make_preset, PresetId};
pub use proof::{check_proof, infer, proof_size, CheckOptions, Proof, Rule, SizeMode};
pub use syntax::{dual, formula_size, sequent_perm_eq, Formula, Sequent, Signature};
