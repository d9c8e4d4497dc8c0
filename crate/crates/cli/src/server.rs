//! Stateless JSON API over the planner, plus optional static file serving
//! for the browser client.

use std::path::PathBuf;

use axum::extract::rejection::BytesRejection;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use panoplan::error::{ConfigError, GeometryError, SamplingError, SolverError};
use panoplan::planner::{
    parse_json, plan, verify_placements, visibility_region, FloorplanDoc, VerifyReport,
    VisibilityReport,
};
use panoplan::{Constraints, PlanError, PlanReport, PlanRequest, PlanRequestDoc, Point2, SamplingConfig};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::services::ServeDir;

pub fn router(static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/health", get(health))
        .route("/api/plan", post(plan_handler))
        .route("/api/verify", post(verify_handler))
        .route("/api/visibility", post(visibility_handler));
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(bind: &str, static_dir: Option<PathBuf>) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(bind)
        .await
        .map_err(|e| anyhow::anyhow!("cannot bind {bind}: {e}"))?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

/// A failed request: 4xx for bad input, 500 for internal faults.
pub struct ApiError {
    status: StatusCode,
    kind: &'static str,
    message: String,
}

impl ApiError {
    fn internal(message: String) -> Self {
        Self {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            kind: "internal",
            message,
        }
    }
}

impl From<PlanError> for ApiError {
    fn from(e: PlanError) -> Self {
        let (status, kind) = match &e {
            PlanError::Parse { .. } | PlanError::Version(_) | PlanError::Units(_) => {
                (StatusCode::BAD_REQUEST, "parse")
            }
            PlanError::Geometry(GeometryError::ViewpointOutside(_)) | PlanError::PlacementOutside { .. } => {
                (StatusCode::BAD_REQUEST, "outside")
            }
            PlanError::Geometry(_) => (StatusCode::BAD_REQUEST, "geometry"),
            PlanError::Config(_)
            | PlanError::Sampling(SamplingError::Config(_))
            | PlanError::Solver(SolverError::Config(_)) => (StatusCode::BAD_REQUEST, "config"),
            PlanError::Sampling(SamplingError::Infeasible { .. })
            | PlanError::Solver(SolverError::NoCandidates(_)) => {
                (StatusCode::UNPROCESSABLE_ENTITY, "infeasible")
            }
            _ => (StatusCode::INTERNAL_SERVER_ERROR, "internal"),
        };
        Self {
            status,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<BytesRejection> for ApiError {
    fn from(e: BytesRejection) -> Self {
        Self {
            status: e.status(),
            kind: "body",
            message: e.body_text(),
        }
    }
}

impl From<ConfigError> for ApiError {
    fn from(e: ConfigError) -> Self {
        PlanError::from(e).into()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": self.kind, "message": self.message });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

async fn health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok", "version": env!("CARGO_PKG_VERSION") }))
}

/// Runs CPU-bound planner work off the async executor.
async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, PlanError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?
        .map_err(ApiError::from)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PlanResponse {
    #[serde(flatten)]
    pub report: PlanReport,
    pub warnings: Vec<String>,
}

async fn plan_handler(body: Result<axum::body::Bytes, BytesRejection>) -> ApiResult<PlanResponse> {
    let body = body?;
    let out = blocking(move || {
        let doc: PlanRequestDoc = parse_json(&String::from_utf8_lossy(&body))?;
        let (req, warnings) = PlanRequest::from_doc(&doc)?;
        Ok(PlanResponse {
            report: plan(&req)?,
            warnings: warnings.iter().map(ToString::to_string).collect(),
        })
    })
    .await?;
    Ok(Json(out))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyRequest {
    pub floorplan: FloorplanDoc,
    #[serde(default)]
    pub placements: Vec<Point2>,
    #[serde(default)]
    pub sampling: SamplingConfig,
    #[serde(default)]
    pub constraints: Constraints,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyResponse {
    #[serde(flatten)]
    pub report: VerifyReport,
    pub n_cameras: usize,
    pub n_covered: usize,
    pub n_missed: usize,
}

async fn verify_handler(body: Result<axum::body::Bytes, BytesRejection>) -> ApiResult<VerifyResponse> {
    let body = body?;
    let out = blocking(move || {
        let req: VerifyRequest = parse_json(&String::from_utf8_lossy(&body))?;
        let (f, _) = req.floorplan.to_floorplan()?;
        let report = verify_placements(&f, &req.placements, &req.sampling, &req.constraints)?;
        Ok(VerifyResponse {
            n_cameras: req.placements.len(),
            n_covered: report.covered.len(),
            n_missed: report.missed.len(),
            report,
        })
    })
    .await?;
    Ok(Json(out))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VisibilityRequest {
    pub floorplan: FloorplanDoc,
    pub point: Point2,
    #[serde(default)]
    pub constraints: Constraints,
}

async fn visibility_handler(
    body: Result<axum::body::Bytes, BytesRejection>,
) -> ApiResult<VisibilityReport> {
    let body = body?;
    let out = blocking(move || {
        let req: VisibilityRequest = parse_json(&String::from_utf8_lossy(&body))?;
        req.constraints.validate()?;
        let (f, _) = req.floorplan.to_floorplan()?;
        visibility_region(&f, req.point, &req.constraints)
    })
    .await?;
    Ok(Json(out))
}
