// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Discussion forum backend. Each thread holds one argumentation graph;
//! posts add rule applications to it and clients poll for verdicts.

pub mod error;
pub mod forum;
pub mod http;
pub mod model;
pub mod thread;

pub use error::ForumError;
pub use forum::Forum;
pub use http::router;
