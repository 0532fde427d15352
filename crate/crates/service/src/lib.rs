//! HTTP play service: a human plays one side of the marking game against a
//! strategy, on a generated lattice.
//!
//! Routes: `POST /sessions`, `GET /sessions/{id}`, `POST /sessions/{id}/moves`,
//! `GET /sessions/{id}/hint`, `GET /sessions/{id}/transcript`.

mod api;
pub mod session;

pub use api::{router, serve, AppState, ApiError};
pub use session::{CreateRequest, Hint, Session, SessionError, TranscriptView, View};
