use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use panoplan_cli::server::router;
use serde_json::{json, Value};
use tower::ServiceExt;

const SQUARE: &str = r#"{"version": 1, "units": "meters", "outer": [[0,0],[4,0],[4,4],[0,4]], "holes": []}"#;

async fn call(method: &str, uri: &str, body: &str) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_owned()))
        .unwrap();
    let resp = router(None).oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

#[tokio::test]
async fn health_reports_ok() {
    let (status, body) = call("GET", "/api/health", "").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "ok");
}

#[tokio::test]
async fn plan_square_needs_one_camera() {
    let body = format!(r#"{{"floorplan": {SQUARE}}}"#);
    let (status, out) = call("POST", "/api/plan", &body).await;
    assert_eq!(status, StatusCode::OK, "{out}");
    assert_eq!(out["solution"]["objective"], 1);
    assert_eq!(out["solution"]["status"], "optimal");
    assert_eq!(out["chosen"].as_array().unwrap().len(), 1);
    assert!(out["missed_boundary"].as_array().unwrap().is_empty());
    assert_eq!(out["coverage_geometry"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn plan_accepts_constraints_and_solver() {
    let body = format!(
        r#"{{"floorplan": {SQUARE}, "constraints": {{"d_max": 2.0}}, "solver": "greedy",
            "sampling": {{"boundary_spacing": 0.5, "grid_spacing": 0.5}}}}"#
    );
    let (status, out) = call("POST", "/api/plan", &body).await;
    assert_eq!(status, StatusCode::OK, "{out}");
    assert!(out["solution"]["objective"].as_u64().unwrap() > 1);
}

#[tokio::test]
async fn verify_without_cameras_misses_everything() {
    let body = format!(r#"{{"floorplan": {SQUARE}, "placements": []}}"#);
    let (status, out) = call("POST", "/api/verify", &body).await;
    assert_eq!(status, StatusCode::OK, "{out}");
    let n = out["boundary"].as_array().unwrap().len();
    assert!(n > 0);
    assert_eq!(out["n_missed"], n);
    assert_eq!(out["n_covered"], 0);
}

#[tokio::test]
async fn verify_centre_camera_covers_square() {
    let body = format!(r#"{{"floorplan": {SQUARE}, "placements": [[2, 2]]}}"#);
    let (status, out) = call("POST", "/api/verify", &body).await;
    assert_eq!(status, StatusCode::OK, "{out}");
    assert_eq!(out["n_missed"], 0);
    assert_eq!(out["per_camera"][0].as_array().unwrap().len(), out["n_covered"].as_u64().unwrap() as usize);
}

#[tokio::test]
async fn verify_rejects_exterior_placement() {
    let body = format!(r#"{{"floorplan": {SQUARE}, "placements": [[9, 9]]}}"#);
    let (status, out) = call("POST", "/api/verify", &body).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(out["error"], "outside");
}

#[tokio::test]
async fn visibility_inside_returns_whole_square() {
    let body = format!(r#"{{"floorplan": {SQUARE}, "point": [1, 1]}}"#);
    let (status, out) = call("POST", "/api/visibility", &body).await;
    assert_eq!(status, StatusCode::OK, "{out}");
    assert!((out["area"].as_f64().unwrap() - 16.0).abs() < 1e-9);
}

#[tokio::test]
async fn visibility_outside_is_a_client_error() {
    let body = format!(r#"{{"floorplan": {SQUARE}, "point": [5, 5]}}"#);
    let (status, out) = call("POST", "/api/visibility", &body).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(out["message"].as_str().unwrap().contains("viewpoint outside floorplan"), "{out}");
}

#[tokio::test]
async fn malformed_json_names_the_location() {
    let (status, out) = call("POST", "/api/plan", r#"{"floorplan": {"outer": [[0, "x"]]}}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(out["error"], "parse");
    assert!(out["message"].as_str().unwrap().contains("floorplan.outer"), "{out}");
}

#[tokio::test]
async fn bad_geometry_is_rejected() {
    let bowtie = r#"{"floorplan": {"version": 1, "outer": [[0,0],[2,2],[2,0],[0,2]]}}"#;
    let (status, out) = call("POST", "/api/plan", bowtie).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(out["error"], "geometry");
}

#[tokio::test]
async fn infeasible_clearance_is_unprocessable() {
    let body = format!(r#"{{"floorplan": {SQUARE}, "sampling": {{"d_min": 3.0}}}}"#);
    let (status, out) = call("POST", "/api/plan", &body).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{out}");
}

#[tokio::test]
async fn requests_are_independent() {
    let square = format!(r#"{{"floorplan": {SQUARE}}}"#);
    let comb = json!({ "floorplan": panoplan::planner::FloorplanDoc::from(&panoplan::synth::comb(3)) }).to_string();
    let mut handles = Vec::new();
    for i in 0..6 {
        let body = if i % 2 == 0 { square.clone() } else { comb.clone() };
        handles.push(tokio::spawn(async move { call("POST", "/api/plan", &body).await }));
    }
    for (i, h) in handles.into_iter().enumerate() {
        let (status, out) = h.await.unwrap();
        assert_eq!(status, StatusCode::OK);
        assert_eq!(out["solution"]["objective"], if i % 2 == 0 { 1 } else { 3 });
    }
}

#[tokio::test]
async fn static_files_are_served() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<html></html>").unwrap();
    let req = Request::builder().uri("/index.html").body(Body::empty()).unwrap();
    let resp = router(Some(dir.path().to_path_buf())).oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
}
