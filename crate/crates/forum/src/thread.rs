// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! State of one thread. Everything here is synchronous; callers serialize
//! writers and hand snapshots to readers.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use ace::report::EvaluationView;
use ace_core::{
    evaluate_discussion, find_discussion, AceGraph, EvaluationOptions, GraphError, RetrievalError,
    RuleCatalog, VertexId, VertexKind,
};
use serde::{Deserialize, Serialize};

use crate::error::ForumError;
use crate::model::{CreateThread, Event, EventBody, NewPost, Post, ThreadSummary};

/// Immutable view of a thread's graph at one version.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub version: u64,
    pub graph: AceGraph,
    pub rules: RuleCatalog,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostMeta {
    pub post_id: VertexId,
    pub author: String,
    pub created_at: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct EvalKey {
    check_unique: bool,
    trace: bool,
}

impl From<EvaluationOptions> for EvalKey {
    fn from(o: EvaluationOptions) -> Self {
        Self {
            check_unique: o.check_unique,
            trace: o.trace,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Thread {
    pub id: String,
    pub title: String,
    pub created_at: u64,
    snapshot: Arc<Snapshot>,
    posts: Vec<PostMeta>,
    events: Vec<Event>,
    tracked: BTreeSet<VertexId>,
    cache: BTreeMap<(VertexId, EvalKey), (u64, Arc<EvaluationView>)>,
}

fn check_slug(id: &str) -> Result<(), ForumError> {
    if id.is_empty() || id.starts_with('#') || id.chars().any(char::is_whitespace) {
        return Err(ForumError::Validation(format!(
            "post id {id:?} must be nonempty, without whitespace and not start with '#'"
        )));
    }
    Ok(())
}

fn graph_error(e: GraphError) -> ForumError {
    match e {
        GraphError::UnknownVertex(v) => ForumError::UnknownPost(v.to_string()),
        GraphError::DuplicateVertex(v) => {
            ForumError::Validation(format!("post id {v} is already taken"))
        }
        GraphError::StructureViolation(v) => ForumError::StructureViolation(vec![v.to_string()]),
        other => ForumError::Validation(other.to_string()),
    }
}

/// Evaluates the discussion of `root` on a snapshot.
pub fn evaluate(
    snapshot: &Snapshot,
    root: &VertexId,
    options: EvaluationOptions,
) -> Result<EvaluationView, ForumError> {
    let d = find_discussion(&snapshot.graph, root).map_err(|e| match e {
        RetrievalError::Graph(g) => graph_error(g),
        other => ForumError::Evaluation(other.to_string()),
    })?;
    let result = evaluate_discussion(&d, &snapshot.rules, options)
        .map_err(|e| ForumError::Evaluation(e.to_string()))?;
    Ok(EvaluationView::from(&result))
}

impl Thread {
    pub fn create(id: String, req: CreateThread, now: u64) -> Result<Self, ForumError> {
        if req.title.trim().is_empty() {
            return Err(ForumError::Validation("title must not be empty".into()));
        }
        if req.statement.trim().is_empty() {
            return Err(ForumError::Validation("statement must not be empty".into()));
        }
        let mut graph = AceGraph::new();
        let root = match req.root_id {
            Some(rid) => {
                check_slug(&rid)?;
                graph
                    .add_information_with_id(rid, req.statement)
                    .map_err(graph_error)?
            }
            None => graph.add_information(req.statement),
        };
        let mut thread = Self {
            id,
            title: req.title,
            created_at: now,
            snapshot: Arc::new(Snapshot {
                version: 1,
                graph,
                rules: RuleCatalog::new(),
            }),
            posts: vec![PostMeta {
                post_id: root.clone(),
                author: req.author,
                created_at: now,
            }],
            events: Vec::new(),
            tracked: BTreeSet::new(),
            cache: BTreeMap::new(),
        };
        let post = thread.post(&root).expect("root post exists");
        thread.events.push(Event {
            version: 1,
            body: EventBody::PostAdded { post },
        });
        Ok(thread)
    }

    /// Rebuilds a thread from persisted parts.
    pub fn restore(
        id: String,
        title: String,
        created_at: u64,
        snapshot: Snapshot,
        posts: Vec<PostMeta>,
        events: Vec<Event>,
        tracked: BTreeSet<VertexId>,
    ) -> Self {
        Self {
            id,
            title,
            created_at,
            snapshot: Arc::new(snapshot),
            posts,
            events,
            tracked,
            cache: BTreeMap::new(),
        }
    }

    pub fn snapshot(&self) -> Arc<Snapshot> {
        Arc::clone(&self.snapshot)
    }

    pub fn version(&self) -> u64 {
        self.snapshot.version
    }

    pub fn post_metas(&self) -> &[PostMeta] {
        &self.posts
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn tracked_roots(&self) -> &BTreeSet<VertexId> {
        &self.tracked
    }

    pub fn summary(&self) -> ThreadSummary {
        ThreadSummary {
            id: self.id.clone(),
            title: self.title.clone(),
            created_at: self.created_at,
            version: self.version(),
            root_post: self.posts[0].post_id.clone(),
            post_count: self.posts.len(),
            evaluated_roots: self.tracked.iter().cloned().collect(),
        }
    }

    pub fn post(&self, id: &VertexId) -> Option<Post> {
        let v = self.snapshot.graph.vertex(id)?;
        let meta = self.posts.iter().find(|p| &p.post_id == id)?;
        Some(Post {
            post_id: v.id.clone(),
            author: meta.author.clone(),
            created_at: meta.created_at,
            seq: v.seq,
            kind: v.kind,
            statement: v.statement.clone(),
            rule_id: v.rule_id.clone(),
            antecedents: v.antecedents.clone(),
            consequents: v.consequents.clone(),
        })
    }

    /// All posts in creation order.
    pub fn posts(&self) -> Vec<Post> {
        self.posts
            .iter()
            .filter_map(|m| self.post(&m.post_id))
            .collect()
    }

    pub fn events_since(&self, since: u64) -> Vec<Event> {
        let start = self.events.partition_point(|e| e.version <= since);
        self.events[start..].to_vec()
    }

    /// Cached evaluation for the current version, if any.
    pub fn cached(
        &self,
        root: &VertexId,
        options: EvaluationOptions,
    ) -> Option<Arc<EvaluationView>> {
        self.cache
            .get(&(root.clone(), options.into()))
            .filter(|(v, _)| *v == self.version())
            .map(|(_, e)| Arc::clone(e))
    }

    /// Records an evaluation computed on the snapshot with `version`.
    /// Returns whether `root` was newly tracked.
    pub fn remember(
        &mut self,
        root: &VertexId,
        options: EvaluationOptions,
        version: u64,
        view: Arc<EvaluationView>,
    ) -> bool {
        if version == self.version() {
            self.cache
                .insert((root.clone(), options.into()), (version, view));
        }
        self.tracked.insert(root.clone())
    }

    /// Adds a rule application and the statements it introduces, then
    /// re-evaluates every tracked root. Returns the new posts in seq order.
    pub fn add_post(&mut self, req: NewPost, now: u64) -> Result<Vec<Post>, ForumError> {
        if req.kind == VertexKind::Information {
            return Err(ForumError::Validation(
                "an information post must be introduced by a rule application \
                 through new_information"
                    .into(),
            ));
        }
        if req.rule_id.trim().is_empty() {
            return Err(ForumError::Validation("rule_id must not be empty".into()));
        }
        let mut rules = self.snapshot.rules.clone();
        match rules.get(&req.rule_id) {
            Some(meta) => {
                if meta.kind != req.kind {
                    return Err(ForumError::RuleConflict(format!(
                        "rule {:?} is a {} rule",
                        req.rule_id,
                        meta.kind.name()
                    )));
                }
                if req.transitive.is_some_and(|t| t != meta.transitive) {
                    return Err(ForumError::RuleConflict(format!(
                        "rule {:?} was declared with transitive = {}",
                        req.rule_id, meta.transitive
                    )));
                }
            }
            None => {
                let transitive = req.transitive.unwrap_or(false);
                if transitive && req.kind != VertexKind::Preference {
                    return Err(ForumError::Validation(
                        "only preference rules can be transitive".into(),
                    ));
                }
                rules.declare(
                    req.rule_id.clone(),
                    req.kind,
                    transitive,
                    req.rule_description.clone().unwrap_or_default(),
                );
            }
        }

        let mut graph = self.snapshot.graph.clone();
        let mut created = Vec::new();
        for info in &req.new_information {
            if info.statement.trim().is_empty() {
                return Err(ForumError::Validation("statement must not be empty".into()));
            }
            let id = match &info.id {
                Some(id) => {
                    check_slug(id)?;
                    graph
                        .add_information_with_id(id.as_str(), info.statement.clone())
                        .map_err(graph_error)?
                }
                None => graph.add_information(info.statement.clone()),
            };
            created.push(id);
        }
        let mut used = vec![false; created.len()];
        let mut resolve = |refs: &[String]| -> Result<Vec<VertexId>, ForumError> {
            refs.iter()
                .map(|r| match r.strip_prefix('#') {
                    Some(k) => {
                        let k: usize = k.parse().map_err(|_| {
                            ForumError::Validation(format!("bad placeholder {r:?}"))
                        })?;
                        let id = created.get(k).ok_or_else(|| {
                            ForumError::Validation(format!(
                                "placeholder {r:?} has no new_information entry"
                            ))
                        })?;
                        used[k] = true;
                        Ok(id.clone())
                    }
                    None if self.snapshot.graph.contains(&VertexId::from(r.as_str())) => {
                        Ok(VertexId::from(r.as_str()))
                    }
                    None => Err(ForumError::UnknownPost(r.clone())),
                })
                .collect()
        };
        let ants = resolve(&req.antecedents)?;
        let cons = resolve(&req.consequents)?;
        if let Some(k) = used.iter().position(|u| !u) {
            return Err(ForumError::Validation(format!(
                "new_information #{k} is not a parameter of the application"
            )));
        }
        let app = match &req.id {
            Some(id) => {
                check_slug(id)?;
                graph.insert_rule_application(
                    id.as_str(),
                    req.kind,
                    req.rule_id.clone(),
                    ants,
                    cons,
                )
            }
            None => graph.add_rule_application(req.kind, req.rule_id.clone(), ants, cons),
        }
        .map_err(graph_error)?;
        if !req.statement.is_empty() {
            graph
                .set_statement(&app, req.statement.clone())
                .map_err(graph_error)?;
        }
        let violations = graph.validate();
        if !violations.is_empty() {
            return Err(ForumError::StructureViolation(
                violations.iter().map(|v| v.to_string()).collect(),
            ));
        }
        created.push(app);

        let version = self.version() + 1;
        self.snapshot = Arc::new(Snapshot {
            version,
            graph,
            rules,
        });
        let now = now.max(self.posts.last().map_or(0, |p| p.created_at));
        for id in &created {
            self.posts.push(PostMeta {
                post_id: id.clone(),
                author: req.author.clone(),
                created_at: now,
            });
        }
        let posts: Vec<Post> = created
            .iter()
            .map(|id| self.post(id).expect("just added"))
            .collect();
        for post in &posts {
            self.events.push(Event {
                version,
                body: EventBody::PostAdded { post: post.clone() },
            });
        }
        self.reevaluate();
        Ok(posts)
    }

    fn reevaluate(&mut self) {
        let snapshot = self.snapshot();
        let roots: Vec<VertexId> = self.tracked.iter().cloned().collect();
        for root in roots {
            let options = EvaluationOptions::default();
            let Ok(view) = evaluate(&snapshot, &root, options) else {
                continue;
            };
            let view = Arc::new(view);
            self.cache.insert(
                (root, options.into()),
                (snapshot.version, Arc::clone(&view)),
            );
            self.events.push(Event {
                version: snapshot.version,
                body: EventBody::EvaluationUpdated {
                    evaluation: (*view).clone(),
                },
            });
        }
    }
}
