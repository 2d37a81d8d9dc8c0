//! Analysis of finite causal nets.
//!
//! A causal net is a bipartite acyclic graph of conditions and events whose
//! flow relation induces a partial order. This crate validates the net
//! axioms, explores the order (cuts, lines, K-density, convexity), runs two
//! closure operators over subsets, assembles the ortholattice of closed
//! sets, derives two-valued states from lines and Boolean subalgebras from
//! condition cuts, and evaluates propositional formulas against lattice
//! interpretations.
//!
//! The pipeline:
//!
//! ```
//! use causalnet::{Lattice, NetDescription, Poset};
//!
//! let text = r#"{
//!     "conditions": ["p", "q", "r", "s"],
//!     "events": ["e"],
//!     "arcs": [["p", "e"], ["q", "e"], ["e", "r"], ["e", "s"]]
//! }"#;
//! let net = NetDescription::parse(text)?.validate()?;
//! let poset = Poset::from_net(&net);
//! assert!(poset.k_density().k_dense);
//!
//! let lattice = Lattice::build(&net, &poset, 16)?;
//! assert_eq!(lattice.len(), 6);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod closure;
pub mod generator;
pub mod lattice;
pub mod logic;
pub mod net;
pub mod order;
pub mod set;

pub use closure::{biortho, border, causal_closure, ortho};
pub use lattice::{BooleanBlock, Lattice, LatticeError, TwoValuedState};
pub use logic::{Formula, Interpretation, LawReport, LawSweepConfig};
pub use net::{ElementKind, Net, NetDescription, ParseError, ValidationError};
pub use order::{Cut, KDensityReport, Line, Poset};
pub use set::ElementSet;
