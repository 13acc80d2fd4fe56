use axum::body::Body;
use axum::http::{Request, StatusCode};
use frieze_api::{router, router_with, Config};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes)
}

async fn post(uri: &str, body: Value) -> (StatusCode, Value) {
    let (status, bytes) = call(router(), "POST", uri, Some(body)).await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

const HEXAGON: &str = "6; 1-5, 2-5, 3-5";

#[tokio::test]
async fn health() {
    let (status, bytes) = call(router(), "GET", "/api/health", None).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["status"], "ok");
    assert!(v["version"].is_string());
}

#[tokio::test]
async fn frieze_of_the_hexagon() {
    let (status, v) = post("/api/frieze", json!({ "triangulation": HEXAGON })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["quiddity"], json!([2, 2, 2, 1, 4, 1]));
    assert_eq!(v["unit_positions"], json!(["1-5", "2-5", "3-5"]));
    assert_eq!(v["frieze"]["n"], 6);
    assert_eq!(v["frieze"]["entries"]["4-6"], "4");
    let structured = json!({ "triangulation": { "n": 6, "diagonals": [[1, 5], [2, 5], [3, 5]] } });
    assert_eq!(post("/api/frieze", structured).await.1, v);
}

#[tokio::test]
async fn mutate_reports_deltas() {
    let (status, v) = post("/api/mutate", json!({ "triangulation": HEXAGON, "at": "2-5" })).await;
    assert_eq!(status, StatusCode::OK);
    let expected = json!({
        "1-3": "1", "1-4": "1", "2-4": "-1", "2-5": "-1", "2-6": "-1",
        "3-6": "1", "4-6": "1", "1-5": "0", "3-5": "0"
    });
    assert_eq!(v["delta"], expected);
    assert_eq!(v["regions"]["4-6"], "BC");
    assert_eq!(v["flip"]["new_diagonal"], "1-3");
    let flipped = v["flip"]["triangulation"].clone();
    let (_, after) = post("/api/frieze", json!({ "triangulation": flipped })).await;
    assert_eq!(v["frieze_after"], after["frieze"]);
}

#[tokio::test]
async fn flipping_twice_restores() {
    let (status, once) = post("/api/flip", json!({ "triangulation": HEXAGON, "at": "2-5" })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(once["new_diagonal"], "1-3");
    let (_, twice) = post("/api/flip", json!({ "triangulation": once["triangulation"], "at": once["new_diagonal"] })).await;
    assert_eq!(twice["triangulation"], HEXAGON);
    assert_eq!(twice["new_diagonal"], "2-5");
}

#[tokio::test]
async fn submodule_counts() {
    let (status, v) = post("/api/submodules", json!({ "shape": [1, 3, 1] })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["count"], "16");
    assert_eq!(post("/api/submodules", json!({ "shape": "1,3,1" })).await.1["count"], "16");
    assert_eq!(post("/api/submodules", json!({ "walk": "1<2>3>4>5<6" })).await.1["count"], "16");
    assert_eq!(post("/api/submodules", json!({ "shape": [] })).await.1["count"], "2");
    let (status, v) = post("/api/submodules", json!({ "shape": [1, 0] })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["field"], "shape");
}

#[tokio::test]
async fn errors_name_the_field() {
    let (status, v) = post("/api/frieze", json!({ "triangulation": "6; 1-4, 2-5, 3-5" })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["field"], "triangulation");
    let (status, v) = post("/api/frieze", json!({})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["field"], "triangulation");
    let (status, v) = post("/api/flip", json!({ "triangulation": HEXAGON, "at": "x" })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["field"], "at");
    let (status, bytes) = call(router(), "POST", "/api/frieze", None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let v: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["error"]["field"], "body");
}

#[tokio::test]
async fn non_flippable_targets_are_unprocessable() {
    for at in ["1-3", "1-2"] {
        let (status, v) = post("/api/mutate", json!({ "triangulation": HEXAGON, "at": at })).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{at}");
        assert_eq!(v["error"]["field"], "at");
    }
}

#[tokio::test]
async fn polygon_size_is_capped() {
    let fan: Vec<String> = (3..41).map(|j| format!("1-{j}")).collect();
    let t = format!("42; {}, 1-41", fan.join(", "));
    let (status, v) = post("/api/frieze", json!({ "triangulation": t })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(v["error"]["message"].as_str().unwrap().contains("40"));
    let small = router_with(Config { max_n: 5 });
    let (status, _) = call(small, "POST", "/api/frieze", Some(json!({ "triangulation": HEXAGON }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn identical_requests_give_identical_bytes() {
    let body = json!({ "triangulation": "9; 1-3, 1-4, 4-6, 4-7, 7-9, 1-7", "at": "4-7" });
    let first = call(router(), "POST", "/api/mutate", Some(body.clone())).await;
    let second = call(router(), "POST", "/api/mutate", Some(body)).await;
    assert_eq!(first, second);
}

#[tokio::test]
async fn cors_headers() {
    let req = Request::builder()
        .method("OPTIONS")
        .uri("/api/frieze")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let resp = router().oneshot(req).await.unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}
