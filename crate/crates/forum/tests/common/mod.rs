#![allow(dead_code)]

use std::sync::Arc;

use ace_core::{AceGraph, RuleCatalog, VertexId};
use ace_forum::{router, Forum};
use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

#[derive(Clone)]
pub struct Client {
    app: Router,
}

impl Client {
    pub fn new(forum: Forum) -> Self {
        Self {
            app: router(Arc::new(forum)),
        }
    }

    pub async fn raw(
        &self,
        method: Method,
        uri: &str,
        body: Option<Value>,
    ) -> (StatusCode, Vec<u8>) {
        let builder = Request::builder().method(method).uri(uri);
        let req = match body {
            Some(v) => builder
                .header("content-type", "application/json")
                .body(Body::from(v.to_string())),
            None => builder.body(Body::empty()),
        }
        .unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp
            .into_body()
            .collect()
            .await
            .unwrap()
            .to_bytes()
            .to_vec();
        (status, bytes)
    }

    pub async fn call(
        &self,
        method: Method,
        uri: &str,
        body: Option<Value>,
    ) -> (StatusCode, Value) {
        let (status, bytes) = self.raw(method, uri, body).await;
        let value = if bytes.is_empty() {
            Value::Null
        } else {
            serde_json::from_slice(&bytes)
                .unwrap_or_else(|e| panic!("{uri}: {e}: {}", String::from_utf8_lossy(&bytes)))
        };
        (status, value)
    }

    pub async fn get(&self, uri: &str) -> (StatusCode, Value) {
        self.call(Method::GET, uri, None).await
    }

    pub async fn post(&self, uri: &str, body: Value) -> (StatusCode, Value) {
        self.call(Method::POST, uri, Some(body)).await
    }

    /// Creates a thread and returns its id.
    pub async fn thread(&self, title: &str, statement: &str, root_id: Option<&str>) -> String {
        let (status, v) = self
            .post(
                "/threads",
                json!({"title": title, "statement": statement, "author": "ann", "root_id": root_id}),
            )
            .await;
        assert_eq!(status, StatusCode::CREATED, "{v}");
        v["thread"]["id"].as_str().unwrap().to_owned()
    }

    pub async fn add(&self, thread: &str, post: Value) -> Value {
        let (status, v) = self.post(&format!("/threads/{thread}/posts"), post).await;
        assert_eq!(status, StatusCode::CREATED, "{v}");
        v
    }

    pub async fn evaluation(&self, thread: &str, root: &str) -> Value {
        let (status, v) = self
            .get(&format!("/threads/{thread}/evaluation?root={root}"))
            .await;
        assert_eq!(status, StatusCode::OK, "{v}");
        v
    }
}

pub fn error_code(v: &Value) -> &str {
    v["error"]["code"].as_str().unwrap_or("")
}

/// Replays a sample graph as posts: the oldest statement is the thread
/// root, every rule application brings along the statements it mentions
/// that do not exist yet.
pub async fn replay(client: &Client, title: &str, graph: &AceGraph, rules: &RuleCatalog) -> String {
    let mut vertices: Vec<_> = graph.vertices().collect();
    vertices.sort_by_key(|v| v.seq);
    let root = vertices[0];
    let thread = client
        .thread(title, &root.statement, Some(root.id.as_str()))
        .await;
    let mut known: Vec<VertexId> = vec![root.id.clone()];
    for v in vertices.iter().filter(|v| v.kind.is_rule_application()) {
        let mut fresh: Vec<VertexId> = Vec::new();
        let mut param = |p: &VertexId| {
            if known.contains(p) {
                p.to_string()
            } else {
                let k = fresh.iter().position(|f| f == p).unwrap_or_else(|| {
                    fresh.push(p.clone());
                    fresh.len() - 1
                });
                format!("#{k}")
            }
        };
        let ants: Vec<String> = v.antecedents.iter().map(&mut param).collect();
        let cons: Vec<String> = v.consequents.iter().map(&mut param).collect();
        let rule_id = v.rule_id.clone().unwrap();
        let meta = rules.get(&rule_id).unwrap();
        let new_information: Vec<Value> = fresh
            .iter()
            .map(|f| json!({"id": f, "statement": graph.vertex(f).unwrap().statement}))
            .collect();
        client
            .add(
                &thread,
                json!({
                    "author": "bob",
                    "id": v.id,
                    "kind": v.kind,
                    "statement": v.statement,
                    "rule_id": rule_id,
                    "transitive": meta.transitive,
                    "rule_description": meta.description,
                    "antecedents": ants,
                    "consequents": cons,
                    "new_information": new_information,
                }),
            )
            .await;
        known.extend(fresh);
        known.push(v.id.clone());
    }
    thread
}
