// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Request and response bodies.

use std::collections::BTreeSet;

use ace::report::EvaluationView;
use ace_core::{VertexId, VertexKind};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CreateThread {
    pub title: String,
    pub statement: String,
    #[serde(default)]
    pub author: String,
    /// Id for the root post. Generated when absent.
    #[serde(default)]
    pub root_id: Option<String>,
}

/// Statement posted together with a rule application. The application
/// refers to it as `#k`, k being its position in `new_information`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NewInformation {
    #[serde(default)]
    pub id: Option<String>,
    pub statement: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NewPost {
    #[serde(default)]
    pub author: String,
    pub kind: VertexKind,
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default)]
    pub statement: String,
    pub rule_id: String,
    /// Only read when the rule is new. A rule's transitivity cannot change
    /// once declared.
    #[serde(default)]
    pub transitive: Option<bool>,
    #[serde(default)]
    pub rule_description: Option<String>,
    #[serde(default)]
    pub antecedents: Vec<String>,
    #[serde(default)]
    pub consequents: Vec<String>,
    #[serde(default)]
    pub new_information: Vec<NewInformation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Post {
    pub post_id: VertexId,
    pub author: String,
    /// Milliseconds since the Unix epoch.
    pub created_at: u64,
    pub seq: u64,
    pub kind: VertexKind,
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_id: Option<String>,
    pub antecedents: BTreeSet<VertexId>,
    pub consequents: BTreeSet<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadSummary {
    pub id: String,
    pub title: String,
    pub created_at: u64,
    pub version: u64,
    pub root_post: VertexId,
    pub post_count: usize,
    pub evaluated_roots: Vec<VertexId>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CreatedThread {
    pub thread: ThreadSummary,
    pub root_post: Post,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PostsAdded {
    pub version: u64,
    pub posts: Vec<Post>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadEvaluation {
    pub thread: String,
    pub version: u64,
    pub evaluation: EvaluationView,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EventBody {
    PostAdded { post: Post },
    EvaluationUpdated { evaluation: EvaluationView },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub version: u64,
    #[serde(flatten)]
    pub body: EventBody,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EventBatch {
    /// Snapshot version at the time of the reply. Pass it as `since` on
    /// the next poll.
    pub version: u64,
    pub events: Vec<Event>,
}
