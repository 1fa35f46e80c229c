// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Acceptability evaluation for argumentation graphs built from requirements
//! discussions.
//!
//! A discussion is a graph of information vertices (statements) and rule
//! application vertices (inferences, conflicts, preferences). Lines are
//! derived from the parameters of each rule application. Evaluating the
//! discussion of a vertex yields a label per vertex: accepted (`A`),
//! accepted-but-dominated (`AD`) or rejected (`R`). Cyclic parts are handled
//! by a walker procedure that settles on a stable labeling or reports that no
//! stable labeling exists.
//!
//! ```
//! use ace_core::{AceGraph, VertexKind, find_discussion, evaluate_discussion,
//!                CLabel, EvaluationOptions, RuleCatalog};
//!
//! let mut g = AceGraph::new();
//! let premise = g.add_information("the device must play audio");
//! let claim = g.add_information("the device needs a speaker");
//! g.add_rule_application(VertexKind::Inference, "refine", [premise.clone()], [claim.clone()])
//!     .unwrap();
//!
//! let discussion = find_discussion(&g, &claim).unwrap();
//! let result = evaluate_discussion(&discussion, &RuleCatalog::new(), EvaluationOptions::default())
//!     .unwrap();
//! assert_eq!(result.lambda[&claim], CLabel::A);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod acceptability;
mod circuits;
mod closure;
mod evaluation;
mod graph;
mod label;
mod retrieval;
mod rules;
pub mod samples;
mod scc;

pub use acceptability::{
    check_acceptability, AcceptabilityError, AcceptabilityVerdict, ArtifactTriple,
};
pub use closure::{
    build_transitive_closure, close_preferences, group_transitive_applications, ClosureError,
    TransitiveGroup, TransitiveGroups,
};
pub use evaluation::{
    check_uniqueness, compute_label, evaluate_discussion, label_complex_scc, propagate_label,
    select_first_vertex, ComplexRun, ComponentReport, EvaluationError, EvaluationOptions,
    EvaluationResult, EvaluationStatus, LabelError, LabelingState, Stability, TraceStep,
    Uniqueness, TRACE_QUEUE_LIMIT,
};
pub use graph::{AceGraph, GraphError, Line, SourceStamp, Vertex, VertexId, VertexKind, Violation};
pub use label::{line_role, overrule, propagation_rule, CLabel, LineRole};
pub use retrieval::{find_discussion, is_subdiscussion, Discussion, RetrievalError};
pub use rules::{RuleCatalog, RuleMeta};
pub use scc::{
    contract_scc, count_simple_cycles, enumerate_scc, expand_scc, topological_sort, Condensation,
    Dag, SccError,
};
