use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use crate::session::{CreateRequest, Session, SessionError, View};

/// One live game. Mutations are serialised by `live`; reads go to `view`,
/// an immutable snapshot replaced after every mutation.
struct Slot {
    live: tokio::sync::Mutex<Session>,
    view: RwLock<Arc<View>>,
}

impl Slot {
    fn snapshot(&self) -> Arc<View> {
        self.view.read().expect("view lock").clone()
    }
}

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Arc<Slot>>>>,
}

impl AppState {
    fn slot(&self, id: &str) -> Result<Arc<Slot>, ApiError> {
        self.sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}")))
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: serde_json::Value,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError { status, body: json!({ "error": message.into() }) }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::BadRequest(m) => ApiError::new(StatusCode::BAD_REQUEST, m),
            SessionError::Illegal { reason, legal } => {
                ApiError { status: StatusCode::CONFLICT, body: json!({ "error": reason, "legal": legal }) }
            }
            SessionError::Machine(m) => ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, m),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

#[derive(Debug, Deserialize)]
struct MoveRequest {
    object: String,
}

async fn create(
    State(app): State<AppState>,
    req: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<impl IntoResponse, ApiError> {
    let Json(req) = req?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session::create(id.clone(), &req)?;
    let view = Arc::new(session.view());
    let slot = Arc::new(Slot { live: tokio::sync::Mutex::new(session), view: RwLock::new(view.clone()) });
    app.sessions.write().expect("session map lock").insert(id, slot);
    Ok((StatusCode::CREATED, Json(view.as_ref().clone())))
}

async fn get_state(State(app): State<AppState>, Path(id): Path<String>) -> Result<Json<View>, ApiError> {
    Ok(Json(app.slot(&id)?.snapshot().as_ref().clone()))
}

async fn submit(
    State(app): State<AppState>,
    Path(id): Path<String>,
    req: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<View>, ApiError> {
    let Json(req) = req?;
    let slot = app.slot(&id)?;
    let mut session = slot
        .live
        .try_lock()
        .map_err(|_| ApiError::new(StatusCode::CONFLICT, "another move for this session is in progress"))?;
    session.submit(&req.object)?;
    let view = Arc::new(session.view());
    *slot.view.write().expect("view lock") = view.clone();
    Ok(Json(view.as_ref().clone()))
}

async fn hint(State(app): State<AppState>, Path(id): Path<String>) -> Result<impl IntoResponse, ApiError> {
    let slot = app.slot(&id)?;
    let session = slot
        .live
        .try_lock()
        .map_err(|_| ApiError::new(StatusCode::CONFLICT, "a move for this session is in progress"))?;
    Ok(Json(session.hint()?))
}

async fn transcript(State(app): State<AppState>, Path(id): Path<String>) -> Result<impl IntoResponse, ApiError> {
    let slot = app.slot(&id)?;
    let session = slot.live.lock().await;
    Ok(Json(session.transcript()))
}

/// The HTTP API. `allow_origin` restricts CORS to one origin; any origin is
/// allowed otherwise.
pub fn router(state: AppState, allow_origin: Option<&str>) -> Router {
    let origin = match allow_origin.and_then(|o| HeaderValue::from_str(o).ok()) {
        Some(o) => AllowOrigin::exact(o),
        None => AllowOrigin::any(),
    };
    let cors = CorsLayer::new().allow_origin(origin).allow_methods(Any).allow_headers(Any);
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(get_state))
        .route("/sessions/{id}/moves", post(submit))
        .route("/sessions/{id}/hint", get(hint))
        .route("/sessions/{id}/transcript", get(transcript))
        .layer(cors)
        .with_state(state)
}

/// Serves the API until the process is stopped.
pub async fn serve(addr: std::net::SocketAddr, allow_origin: Option<&str>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(AppState::default(), allow_origin)).await
}
