//! Branch-and-reduce solver for abstract argumentation frameworks.
//!
//! An argumentation framework is read as a sparse attack matrix whose rows
//! (offensive properties) and columns (defensive properties) are shrunk by
//! two transitions, `node_chosen` and `node_not_chosen`, until a stable or
//! complete extension is left in the extension accumulator.
//!
//! ```
//! use afmatrix::{parse_af, Format, Mode, enumerate};
//!
//! let af = parse_af("arg(a). arg(b). att(a,b).", Format::Apx).unwrap();
//! let result = enumerate(&af, Mode::Stable, None);
//! assert_eq!(result.extensions.len(), 1);
//! assert_eq!(af.render_extension(&result.extensions[0]), "[a]");
//! ```

pub mod af;
pub mod cli;
pub mod error;
pub mod generate;
pub mod nodeset;
pub mod oracle;
pub mod solver;
pub mod state;

pub use af::{parse_af, ArgId, ArgumentationFramework, Extension, Format};
pub use error::{AfError, SolveError};
pub use nodeset::NodeSet;
pub use solver::{
    enumerate, expand, grounded_extension, seed_with_grounded, solve, Answer, BranchOutcome,
    Enumeration, SolveResult, Stats, Task, TaskSpec,
};
pub use state::{MatrixState, Mode};
