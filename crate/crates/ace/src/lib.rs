// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! File storage, Graphviz export and the `ace` command line tool on top of
//! [`ace_core`].

pub mod cli;
pub mod dot;
pub mod report;
pub mod store;

pub use store::{GraphDocument, StoreError, StoredGraph};
