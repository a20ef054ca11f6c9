//! Hardness reductions and their solution translations.

pub mod cnf;
pub mod cp_mcc;
pub mod sat_mec;

pub use cnf::{parse_assignment, parse_dimacs, Assignment, CnfFormula, Literal};
pub use cp_mcc::{
    clique_partition_to_mcc_solution, extract_clique_partition, reduce_cp_to_mcc, CliqueExtraction,
    CliquePartition, MccGadgetMap, MccPair, RepairStep,
};
pub use sat_mec::{
    build_satisfying_solution, extract_assignment, reduce_sat_to_mec, CycleRole, ExtractionReport,
    MecGadgetMap, VariableCycle,
};
