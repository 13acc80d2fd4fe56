//! Stateless HTTP/JSON facade over `frieze-core`.
//!
//! Every request carries the full triangulation, so responses depend on the
//! request body alone. Large integers are sent as decimal strings.
//!
//! | route | body | reply |
//! |---|---|---|
//! | `POST /api/frieze` | `{triangulation}` | `{frieze, quiddity, unit_positions}` |
//! | `POST /api/flip` | `{triangulation, at}` | `{triangulation, new_diagonal}` |
//! | `POST /api/mutate` | `{triangulation, at}` | `{frieze_before, frieze_after, delta, regions, flip}` |
//! | `POST /api/submodules` | `{shape}` or `{walk}` | `{count, shape}` |
//! | `GET /api/health` | | `{status, version}` |
//!
//! A triangulation is either the text form `"6; 1-5, 2-5, 3-5"` or
//! `{"n": 6, "diagonals": [[1,5],[2,5],[3,5]]}`.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use frieze_core::polygon::TriangulationData;
use frieze_core::{
    delta_report, frieze_from_cc, mutate_frieze, s_bruteforce, s_formula, shape_of, Chord, StringShape, StringWalk,
    Triangulation,
};
use serde_json::{json, Value};
use tower_http::cors::{Any, CorsLayer};

/// Default bound on the polygon size.
pub const DEFAULT_MAX_N: usize = 40;

/// Bound on the number of vertices of a submodule query.
pub const MAX_WALK_VERTICES: usize = 10_000;

#[derive(Debug, Clone)]
pub struct Config {
    pub max_n: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_n: DEFAULT_MAX_N }
    }
}

/// An error reply `{"error": {"field": ..., "message": ...}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub field: String,
    pub message: String,
}

impl ApiError {
    fn bad(field: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            field: field.into(),
            message: message.into(),
        }
    }

    fn unprocessable(field: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            field: field.into(),
            message: message.into(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": { "field": self.field, "message": self.message } });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

/// The service with the default configuration.
pub fn router() -> Router {
    router_with(Config::default())
}

pub fn router_with(config: Config) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/api/health", get(health))
        .route("/api/frieze", post(frieze))
        .route("/api/flip", post(flip))
        .route("/api/mutate", post(mutate))
        .route("/api/submodules", post(submodules))
        .layer(cors)
        .with_state(Arc::new(config))
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router_with(config)).await
}

fn parse_body(body: &Bytes) -> Result<Value, ApiError> {
    let value: Value = serde_json::from_slice(body).map_err(|e| ApiError::bad("body", format!("invalid JSON: {e}")))?;
    if !value.is_object() {
        return Err(ApiError::bad("body", "expected a JSON object"));
    }
    Ok(value)
}

fn triangulation_field(body: &Value, config: &Config) -> Result<Triangulation, ApiError> {
    const FIELD: &str = "triangulation";
    let raw = body.get(FIELD).ok_or_else(|| ApiError::bad(FIELD, "missing"))?;
    let n = match raw {
        Value::String(s) => s.split(';').next().and_then(|h| h.trim().parse::<usize>().ok()),
        Value::Object(o) => o.get("n").and_then(Value::as_u64).map(|n| n as usize),
        _ => None,
    };
    if let Some(n) = n {
        if n > config.max_n {
            return Err(ApiError::bad(FIELD, format!("N = {n} exceeds the limit of {}", config.max_n)));
        }
    }
    let parsed = match raw {
        Value::String(s) => Triangulation::parse(s),
        Value::Object(_) => {
            let data: TriangulationData =
                serde_json::from_value(raw.clone()).map_err(|e| ApiError::bad(FIELD, e.to_string()))?;
            Triangulation::try_from(data)
        }
        _ => return Err(ApiError::bad(FIELD, "expected a string or an object {n, diagonals}")),
    };
    parsed.map_err(|e| ApiError::bad(FIELD, e.to_string()))
}

/// The diagonal `at`, which must belong to `t`.
fn flip_target(body: &Value, t: &Triangulation) -> Result<Chord, ApiError> {
    const FIELD: &str = "at";
    let raw = body.get(FIELD).ok_or_else(|| ApiError::bad(FIELD, "missing"))?;
    let chord = match raw {
        Value::String(s) => Chord::parse(t.n(), s),
        Value::Array(v) if v.len() == 2 => match (v[0].as_i64(), v[1].as_i64()) {
            (Some(i), Some(j)) => Chord::new(t.n(), i, j),
            _ => return Err(ApiError::bad(FIELD, "expected two integers")),
        },
        _ => return Err(ApiError::bad(FIELD, "expected \"i-j\" or [i, j]")),
    }
    .map_err(|e| ApiError::bad(FIELD, e.to_string()))?;
    if chord.is_boundary() {
        return Err(ApiError::unprocessable(FIELD, format!("{chord} is a boundary segment")));
    }
    if !t.contains(&chord) {
        return Err(ApiError::unprocessable(FIELD, format!("{chord} is not a diagonal of the triangulation")));
    }
    Ok(chord)
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok", "version": env!("CARGO_PKG_VERSION") }))
}

async fn frieze(State(config): State<Arc<Config>>, body: Bytes) -> ApiResult {
    let body = parse_body(&body)?;
    let t = triangulation_field(&body, &config)?;
    let f = frieze_from_cc(&t);
    let units: Vec<String> = f.unit_positions().iter().map(Chord::to_string).collect();
    Ok(Json(json!({
        "frieze": f,
        "quiddity": t.quiddity(),
        "unit_positions": units,
    })))
}

async fn flip(State(config): State<Arc<Config>>, body: Bytes) -> ApiResult {
    let body = parse_body(&body)?;
    let t = triangulation_field(&body, &config)?;
    let a = flip_target(&body, &t)?;
    let (t2, a2) = t.flip(&a).map_err(|e| ApiError::unprocessable("at", e.to_string()))?;
    Ok(Json(json!({
        "triangulation": t2.to_string(),
        "new_diagonal": a2.to_string(),
    })))
}

async fn mutate(State(config): State<Arc<Config>>, body: Bytes) -> ApiResult {
    let body = parse_body(&body)?;
    let t = triangulation_field(&body, &config)?;
    let a = flip_target(&body, &t)?;
    let before = frieze_from_cc(&t);
    let report = delta_report(&before, &t, &a).map_err(|e| ApiError::unprocessable("at", e.to_string()))?;
    let (after, t2) = mutate_frieze(&before, &t, &a).map_err(|e| ApiError::unprocessable("at", e.to_string()))?;
    Ok(Json(json!({
        "frieze_before": before,
        "frieze_after": after,
        "delta": report.delta,
        "regions": report.regions,
        "flip": {
            "at": report.at,
            "new_diagonal": report.flip,
            "triangulation": t2.to_string(),
        },
    })))
}

async fn submodules(body: Bytes) -> ApiResult {
    let body = parse_body(&body)?;
    match (body.get("shape"), body.get("walk")) {
        (Some(_), Some(_)) => Err(ApiError::bad("shape", "give either shape or walk, not both")),
        (Some(raw), None) => {
            let shape = match raw {
                Value::String(s) => StringShape::parse(s).map_err(|e| ApiError::bad("shape", e.to_string()))?,
                Value::Array(v) => {
                    let legs = v
                        .iter()
                        .map(|x| x.as_u64().map(|k| k as usize))
                        .collect::<Option<Vec<usize>>>()
                        .ok_or_else(|| ApiError::bad("shape", "legs must be positive integers"))?;
                    StringShape::new(legs).map_err(|e| ApiError::bad("shape", e.to_string()))?
                }
                _ => return Err(ApiError::bad("shape", "expected [k1, k2, ...] or \"k1,k2,...\"")),
            };
            let vertices = shape.legs().iter().fold(1usize, |acc, &k| acc.saturating_add(k));
            if vertices > MAX_WALK_VERTICES {
                return Err(ApiError::bad("shape", format!("more than {MAX_WALK_VERTICES} vertices")));
            }
            Ok(Json(json!({ "count": s_formula(&shape).to_string(), "shape": shape.to_string() })))
        }
        (None, Some(raw)) => {
            let text = raw.as_str().ok_or_else(|| ApiError::bad("walk", "expected a string like \"1<2>3\""))?;
            let walk = StringWalk::parse(text).map_err(|e| ApiError::bad("walk", e.to_string()))?;
            if walk.len() > MAX_WALK_VERTICES {
                return Err(ApiError::bad("walk", format!("more than {MAX_WALK_VERTICES} vertices")));
            }
            let shape = shape_of(&walk).map(|s| s.to_string()).unwrap_or_else(|_| "zero".into());
            Ok(Json(json!({ "count": s_bruteforce(&walk).to_string(), "shape": shape })))
        }
        (None, None) => Err(ApiError::bad("shape", "missing: give shape or walk")),
    }
}
