//! Storage and HTTP API for interactive maximal spanning tree sessions.

pub mod api;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

pub use api::{router, ApiError, AppState};
use maxtree_core::session::ExactModeConfig;
pub use store::{SessionRecord, Store, StoreError, StoredInstance};

/// Serves the API on `addr` with data kept under `data_dir` until the task is cancelled.
pub async fn serve(
    addr: SocketAddr,
    data_dir: PathBuf,
    config: ExactModeConfig,
) -> std::io::Result<()> {
    let store = Store::open(data_dir)?;
    let app = router(Arc::new(AppState::new(store, config)));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app).await
}
