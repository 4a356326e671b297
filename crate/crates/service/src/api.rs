//! HTTP routes.
//!
//! | method | path | success |
//! |---|---|---|
//! | POST | `/instances` | 201 `{instanceId}` |
//! | GET | `/instances/{id}` | 200 instance document |
//! | GET | `/instances/{id}/analysis` | 200 analysis report |
//! | POST | `/sessions` | 201 session state |
//! | GET | `/sessions/{id}` | 200 session state |
//! | POST | `/sessions/{id}/actions` | 200 session state |
//!
//! Errors carry `{code, message, detail?}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use maxtree_core::session::{
    analyze, Action, ExactModeConfig, Mode, SessionEngine, SessionError, SessionState,
};
use maxtree_core::{DocumentError, InstanceDocument};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::store::{SessionRecord, Store, StoreError};

#[derive(Debug, Clone, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.to_owned(),
            message: message.into(),
            detail: None,
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "malformedRequest", message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

impl From<DocumentError> for ApiError {
    fn from(e: DocumentError) -> Self {
        match &e {
            DocumentError::Syntax { line, column, .. } => ApiError {
                detail: Some(json!({ "line": line, "column": column })),
                ..ApiError::new(StatusCode::BAD_REQUEST, e.code(), e.to_string())
            },
            DocumentError::Invalid(_) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.code(), e.to_string())
            }
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::Document(d) => d.into(),
            StoreError::NotFound { .. } => {
                ApiError::new(StatusCode::NOT_FOUND, "notFound", e.to_string())
            }
            StoreError::Io(_) | StoreError::Corrupt { .. } => {
                tracing::error!("{e}");
                ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "storage", e.to_string())
            }
        }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::UnknownEdge(_) => StatusCode::NOT_FOUND,
            SessionError::Conflict(_) => StatusCode::CONFLICT,
            SessionError::BadAction(_)
            | SessionError::ExactUnavailable(_)
            | SessionError::Domain(_) => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError::new(status, e.code(), e.to_string())
    }
}

type ApiResult<T> = Result<T, ApiError>;

struct LiveSession {
    engine: Arc<SessionEngine>,
    record: SessionRecord,
    state: SessionState,
}

/// Shared server state. Sessions are serialized individually.
pub struct AppState {
    store: Store,
    config: ExactModeConfig,
    engines: Mutex<HashMap<(String, Mode), Arc<SessionEngine>>>,
    sessions: Mutex<HashMap<String, Arc<tokio::sync::Mutex<LiveSession>>>>,
}

impl AppState {
    pub fn new(store: Store, config: ExactModeConfig) -> Self {
        AppState {
            store,
            config,
            engines: Mutex::new(HashMap::new()),
            sessions: Mutex::new(HashMap::new()),
        }
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    fn engine(&self, instance_id: &str, requested: Option<Mode>) -> ApiResult<Arc<SessionEngine>> {
        if let Some(mode) = requested {
            let cached = self
                .engines
                .lock()
                .unwrap()
                .get(&(instance_id.to_owned(), mode))
                .cloned();
            if let Some(engine) = cached {
                return Ok(engine);
            }
        }
        let stored = self.store.get_instance(instance_id)?;
        let inst = stored
            .document
            .resolve()
            .and_then(|p| p.instance())
            .map_err(DocumentError::from)?;
        let engine = Arc::new(SessionEngine::new(inst, requested, &self.config)?);
        self.engines
            .lock()
            .unwrap()
            .insert((instance_id.to_owned(), engine.mode()), engine.clone());
        Ok(engine)
    }

    /// Live session from memory, or rebuilt from its transcript.
    fn session(&self, id: &str) -> ApiResult<Arc<tokio::sync::Mutex<LiveSession>>> {
        if let Some(live) = self.sessions.lock().unwrap().get(id) {
            return Ok(live.clone());
        }
        let record = self.store.get_session(id)?;
        let engine = self.engine(&record.instance_id, Some(record.mode))?;
        let mut state = engine.start(&record.session_id, &record.instance_id);
        for action in &record.actions {
            state = engine.apply(&state, action)?;
        }
        let live = Arc::new(tokio::sync::Mutex::new(LiveSession {
            engine,
            record,
            state,
        }));
        Ok(self
            .sessions
            .lock()
            .unwrap()
            .entry(id.to_owned())
            .or_insert(live)
            .clone())
    }
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &str) -> ApiResult<T> {
    serde_json::from_str(body).map_err(|e| ApiError {
        detail: Some(json!({ "line": e.line(), "column": e.column() })),
        ..ApiError::malformed(e.to_string())
    })
}

async fn create_instance(
    State(app): State<Arc<AppState>>,
    body: String,
) -> ApiResult<(StatusCode, Json<Value>)> {
    let stored = app.store.put_instance(&body)?;
    tracing::info!(id = %stored.id, "stored instance");
    Ok((
        StatusCode::CREATED,
        Json(json!({ "instanceId": stored.id })),
    ))
}

async fn get_instance(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> ApiResult<Json<InstanceDocument>> {
    Ok(Json(app.store.get_instance(&id)?.document))
}

async fn get_analysis(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> ApiResult<Response> {
    let stored = app.store.get_instance(&id)?;
    let inst = stored
        .document
        .resolve()
        .and_then(|p| p.instance())
        .map_err(DocumentError::from)?;
    Ok(Json(analyze(&inst, &app.config)).into_response())
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct NewSession {
    instance_id: String,
    #[serde(default)]
    mode: Option<Mode>,
}

async fn create_session(
    State(app): State<Arc<AppState>>,
    body: String,
) -> ApiResult<(StatusCode, Json<SessionState>)> {
    let request: NewSession = parse_body(&body)?;
    let engine = app.engine(&request.instance_id, request.mode)?;
    let record = SessionRecord {
        session_id: app.store.new_session_id(),
        instance_id: request.instance_id,
        mode: engine.mode(),
        actions: Vec::new(),
    };
    app.store.put_session(&record)?;
    let state = engine.start(&record.session_id, &record.instance_id);
    let id = record.session_id.clone();
    app.sessions.lock().unwrap().insert(
        id.clone(),
        Arc::new(tokio::sync::Mutex::new(LiveSession {
            engine,
            record,
            state: state.clone(),
        })),
    );
    tracing::info!(session = %id, mode = ?state.mode, "started session");
    Ok((StatusCode::CREATED, Json(state)))
}

async fn get_session(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> ApiResult<Json<SessionState>> {
    let live = app.session(&id)?;
    let state = live.lock().await.state.clone();
    Ok(Json(state))
}

async fn post_action(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: String,
) -> ApiResult<Json<SessionState>> {
    let action: Action = parse_body(&body)?;
    let live = app.session(&id)?;
    let mut live = live.lock().await;
    let next = live.engine.apply(&live.state, &action)?;
    live.record.actions.push(action);
    if let Err(e) = app.store.put_session(&live.record) {
        live.record.actions.pop();
        return Err(e.into());
    }
    live.state = next.clone();
    Ok(Json(next))
}

async fn fallback() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "notFound", "no such route")
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/instances", post(create_instance))
        .route("/instances/{id}", get(get_instance))
        .route("/instances/{id}/analysis", get(get_analysis))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/actions", post(post_action))
        .fallback(fallback)
        .with_state(state)
}
