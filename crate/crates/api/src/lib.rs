//! HTTP JSON API over the scoring engine, question banks and session store.
//!
//! All scores are computed here; clients only send inputs. Mutating
//! endpoints answer with the recomputed values and the new session revision.
//! The actor recorded in the audit journal comes from the `X-Actor` header.

mod error;
mod routes;

use std::net::SocketAddr;
use std::sync::Arc;

use axum::http::{header, HeaderName, HeaderValue, Method};
use axum::Router;
use esgai_core::bank::BankCatalog;
use esgai_core::store::SessionStore;
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use error::{status_for, ApiError};
pub use routes::{SessionView, ROUTES};

pub const ACTOR_HEADER: &str = "x-actor";
pub const DEFAULT_ACTOR: &str = "anonymous";

/// Shared, cheaply clonable application state.
#[derive(Clone)]
pub struct AppState {
    pub store: Arc<dyn SessionStore>,
    pub banks: Arc<BankCatalog>,
    /// Bank for sessions created without one.
    pub default_bank: String,
}

impl AppState {
    pub fn new(store: Arc<dyn SessionStore>, banks: BankCatalog) -> Self {
        Self {
            store,
            banks: Arc::new(banks),
            default_bank: "synthetic-complete-1".to_string(),
        }
    }
}

/// Allowed CORS origins. Empty means any origin.
#[derive(Debug, Clone, Default)]
pub struct CorsOrigins(pub Vec<String>);

fn cors_layer(origins: &CorsOrigins) -> CorsLayer {
    let allow = if origins.0.is_empty() {
        AllowOrigin::any()
    } else {
        AllowOrigin::list(
            origins
                .0
                .iter()
                .filter_map(|o| HeaderValue::from_str(o).ok()),
        )
    };
    CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([Method::GET, Method::POST, Method::PUT, Method::OPTIONS])
        .allow_headers([
            header::CONTENT_TYPE,
            header::IF_MATCH,
            HeaderName::from_static(ACTOR_HEADER),
        ])
        .expose_headers([header::ETAG])
}

pub fn router(state: AppState, origins: &CorsOrigins) -> Router {
    routes::routes()
        .layer(cors_layer(origins))
        .with_state(state)
}

/// Serve until Ctrl-C.
pub async fn serve(addr: SocketAddr, state: AppState, origins: CorsOrigins) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, router(state, &origins))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
