// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Routes. Every body is JSON; errors are `{"error": {"code", "message"}}`.

use std::sync::Arc;
use std::time::Duration;

use ace_core::{EvaluationOptions, VertexId};
use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use crate::error::ForumError;
use crate::forum::Forum;
use crate::model::{CreateThread, NewPost};

/// Longest a poll on the event log may wait.
pub const MAX_WAIT: Duration = Duration::from_secs(60);
const DEFAULT_WAIT_MS: u64 = 25_000;

impl IntoResponse for ForumError {
    fn into_response(self) -> Response {
        let status = match &self {
            ForumError::UnknownThread(_) | ForumError::UnknownPost(_) | ForumError::NoRoute(_) => {
                StatusCode::NOT_FOUND
            }
            ForumError::Validation(_) | ForumError::StructureViolation(_) => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
            ForumError::RuleConflict(_) => StatusCode::CONFLICT,
            ForumError::ThreadDeleted(_) => StatusCode::GONE,
            ForumError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ForumError::Storage(_) | ForumError::Evaluation(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let mut error = json!({ "code": self.code(), "message": self.to_string() });
        if let ForumError::StructureViolation(v) = &self {
            error["violations"] = json!(v);
        }
        (status, Json(json!({ "error": error }))).into_response()
    }
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ForumError> {
    payload
        .map(|Json(t)| t)
        .map_err(|e| ForumError::BadRequest(e.body_text()))
}

fn query<T>(q: Result<Query<T>, QueryRejection>) -> Result<T, ForumError> {
    q.map(|Query(t)| t)
        .map_err(|e| ForumError::BadRequest(e.body_text()))
}

type Shared = State<Arc<Forum>>;

async fn list_threads(State(forum): Shared) -> Response {
    Json(forum.list_threads()).into_response()
}

async fn create_thread(
    State(forum): Shared,
    payload: Result<Json<CreateThread>, JsonRejection>,
) -> Result<Response, ForumError> {
    let created = forum.create_thread(body(payload)?)?;
    Ok((StatusCode::CREATED, Json(created)).into_response())
}

async fn get_thread(State(forum): Shared, Path(id): Path<String>) -> Result<Response, ForumError> {
    Ok(Json(forum.thread(&id)?).into_response())
}

async fn delete_thread(
    State(forum): Shared,
    Path(id): Path<String>,
) -> Result<StatusCode, ForumError> {
    forum.delete_thread(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn list_posts(State(forum): Shared, Path(id): Path<String>) -> Result<Response, ForumError> {
    Ok(Json(forum.posts(&id)?).into_response())
}

async fn add_post(
    State(forum): Shared,
    Path(id): Path<String>,
    payload: Result<Json<NewPost>, JsonRejection>,
) -> Result<Response, ForumError> {
    let added = forum.add_post(&id, body(payload)?)?;
    Ok((StatusCode::CREATED, Json(added)).into_response())
}

#[derive(Deserialize)]
struct EvaluationQuery {
    root: String,
    #[serde(default)]
    check_unique: bool,
    #[serde(default)]
    trace: bool,
}

async fn evaluation(
    State(forum): Shared,
    Path(id): Path<String>,
    q: Result<Query<EvaluationQuery>, QueryRejection>,
) -> Result<Response, ForumError> {
    let q = query(q)?;
    let options = EvaluationOptions {
        check_unique: q.check_unique,
        trace: q.trace,
    };
    let forum = Arc::clone(&forum);
    let result = tokio::task::spawn_blocking(move || {
        forum.evaluation(&id, &VertexId::from(q.root), options)
    })
    .await
    .map_err(|e| ForumError::Evaluation(e.to_string()))??;
    Ok(Json(result).into_response())
}

#[derive(Deserialize)]
struct EventsQuery {
    #[serde(default)]
    since: u64,
    wait_ms: Option<u64>,
}

async fn events(
    State(forum): Shared,
    Path(id): Path<String>,
    q: Result<Query<EventsQuery>, QueryRejection>,
) -> Result<Response, ForumError> {
    let q = query(q)?;
    let wait = Duration::from_millis(q.wait_ms.unwrap_or(DEFAULT_WAIT_MS)).min(MAX_WAIT);
    Ok(Json(forum.events(&id, q.since, wait).await?).into_response())
}

async fn export(State(forum): Shared, Path(id): Path<String>) -> Result<Response, ForumError> {
    let (version, bytes) = forum.export(&id)?;
    Ok((
        [
            (header::CONTENT_TYPE, "application/json".to_owned()),
            (header::ETAG, format!("\"{version}\"")),
        ],
        bytes,
    )
        .into_response())
}

async fn not_found(uri: axum::http::Uri) -> ForumError {
    ForumError::NoRoute(uri.path().to_owned())
}

pub fn router(forum: Arc<Forum>) -> Router {
    Router::new()
        .route("/threads", get(list_threads).post(create_thread))
        .route("/threads/{id}", get(get_thread).delete(delete_thread))
        .route("/threads/{id}/posts", get(list_posts).post(add_post))
        .route("/threads/{id}/evaluation", get(evaluation))
        .route("/threads/{id}/events", get(events))
        .route("/threads/{id}/export", get(export))
        .fallback(not_found)
        .with_state(forum)
}
