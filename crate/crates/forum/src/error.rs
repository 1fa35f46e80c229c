// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use ace::StoreError;

#[derive(Debug, thiserror::Error)]
pub enum ForumError {
    #[error("no thread {0}")]
    UnknownThread(String),
    #[error("no post {0} in this thread")]
    UnknownPost(String),
    #[error("{0}")]
    Validation(String),
    #[error("post would break the graph: {}", .0.join("; "))]
    StructureViolation(Vec<String>),
    #[error("{0}")]
    RuleConflict(String),
    #[error("thread {0} was deleted")]
    ThreadDeleted(String),
    #[error("{0}")]
    BadRequest(String),
    #[error("no route {0}")]
    NoRoute(String),
    #[error("storage failure: {0}")]
    Storage(String),
    #[error("evaluation failed: {0}")]
    Evaluation(String),
}

impl ForumError {
    /// Stable machine-readable code used in error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            ForumError::UnknownThread(_) => "unknown_thread",
            ForumError::UnknownPost(_) => "unknown_post",
            ForumError::Validation(_) => "validation",
            ForumError::StructureViolation(_) => "structure_violation",
            ForumError::RuleConflict(_) => "rule_conflict",
            ForumError::ThreadDeleted(_) => "thread_deleted",
            ForumError::BadRequest(_) => "bad_request",
            ForumError::NoRoute(_) => "not_found",
            ForumError::Storage(_) => "storage",
            ForumError::Evaluation(_) => "evaluation",
        }
    }
}

impl From<StoreError> for ForumError {
    fn from(e: StoreError) -> Self {
        ForumError::Storage(e.to_string())
    }
}

impl From<std::io::Error> for ForumError {
    fn from(e: std::io::Error) -> Self {
        ForumError::Storage(e.to_string())
    }
}
