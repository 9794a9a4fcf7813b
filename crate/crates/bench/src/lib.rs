//! Numerical benchmark for continued-fraction rounded rational arithmetic:
//! a truncated sine series evaluated under different rounding policies.

pub mod emit;
pub mod experiment;
pub mod taylor;

pub use emit::{EpsilonStyle, Format};
pub use experiment::{run_table1, run_table2, standard_variants, ExperimentConfig, Table1Row, Table2Row, Variant};
pub use taylor::taylor_sin;
