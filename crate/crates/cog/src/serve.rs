//! Local JSON-over-HTTP access to one session.

use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cog_core::cognition::{Ontology, Reply, Session, Signals, Verdict};
use cog_core::language::Lexicon;
use cog_core::substrate::{NodeId, Rel};
use cog_core::ActivationParams;
use serde::{Deserialize, Serialize};

pub const BODY_LIMIT: usize = 64 * 1024;

/// Everything needed to rebuild a fresh session on `/reset`.
pub struct AppState {
    pub session: RwLock<Session>,
    pub lexicon: Lexicon,
    pub ontology: Ontology,
    pub params: ActivationParams,
}

impl AppState {
    pub fn new(lexicon: Lexicon, ontology: Ontology, params: ActivationParams) -> Self {
        let session = Session::new(lexicon.clone(), &ontology, params);
        AppState { session: RwLock::new(session), lexicon, ontology, params }
    }

    pub fn with_session(session: Session, lexicon: Lexicon, ontology: Ontology, params: ActivationParams) -> Self {
        AppState { session: RwLock::new(session), lexicon, ontology, params }
    }
}

#[derive(Debug, Serialize, Deserialize, Clone, Copy, PartialEq)]
pub struct SignalsJson {
    pub surprise: f64,
    pub certainty: f64,
    pub confusion: f64,
    pub boredom: f64,
}

impl From<Signals> for SignalsJson {
    fn from(s: Signals) -> Self {
        SignalsJson { surprise: s.surprise, certainty: s.certainty, confusion: s.confusion, boredom: s.boredom }
    }
}

#[derive(Debug, Deserialize)]
struct SayRequest {
    text: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SayResponse {
    pub kind: String,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
    pub signals: SignalsJson,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ActiveNode {
    pub id: u64,
    pub label: String,
    pub level: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TaxonomyNode {
    pub id: u64,
    pub label: String,
    pub kind: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TaxonomyEdge {
    pub id: u64,
    pub src: u64,
    pub dst: u64,
    pub rel: String,
    pub certainty: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Taxonomy {
    pub nodes: Vec<TaxonomyNode>,
    pub edges: Vec<TaxonomyEdge>,
}

#[derive(Serialize)]
struct ErrorBody {
    error: String,
}

fn bad_request(msg: impl Into<String>) -> Response {
    (StatusCode::BAD_REQUEST, Json(ErrorBody { error: msg.into() })).into_response()
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
        Verdict::Phrases(_) => "list",
    }
}

async fn say(State(app): State<Arc<AppState>>, body: Bytes) -> Response {
    let req: SayRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return bad_request(format!("malformed JSON: {e}")),
    };
    if req.text.trim().is_empty() {
        return bad_request("text is empty");
    }
    let reply = app.session.write().expect("session lock").say(&req.text);
    let signals = reply.signals().into();
    let resp = match reply {
        Reply::Ack { text, .. } => SayResponse { kind: "ack".into(), text, verdict: None, offset: None, signals },
        Reply::Answer(a) => {
            SayResponse { kind: "answer".into(), verdict: Some(verdict_name(&a.verdict).into()), text: a.text, offset: None, signals }
        }
        Reply::Error { message, offset, .. } => SayResponse { kind: "error".into(), text: message, verdict: None, offset, signals },
    };
    Json(resp).into_response()
}

pub fn activation_list(s: &Session) -> Vec<ActiveNode> {
    s.working_memory().into_iter().map(|(id, label, level)| ActiveNode { id: id.0, label: label.to_string(), level }).collect()
}

async fn activation(State(app): State<Arc<AppState>>) -> Json<Vec<ActiveNode>> {
    Json(activation_list(&app.session.read().expect("session lock")))
}

pub fn taxonomy(s: &Session) -> Taxonomy {
    let g = s.graph();
    let edges: Vec<TaxonomyEdge> = g
        .edges()
        .iter()
        .filter(|e| e.is_live_affirm() && (e.rel == Rel::IS_A || e.rel == Rel::INSTANCE_OF))
        .map(|e| TaxonomyEdge { id: e.id.0, src: e.src.0, dst: e.dst.0, rel: g.rel_name(e.rel).into(), certainty: e.certainty })
        .collect();
    let mut ids: Vec<u64> = edges.iter().flat_map(|e| [e.src, e.dst]).collect();
    ids.sort_unstable();
    ids.dedup();
    let nodes = ids
        .into_iter()
        .filter_map(|id| g.node(NodeId(id)))
        .map(|n| TaxonomyNode { id: n.id.0, label: n.label.clone(), kind: n.kind.as_str().into() })
        .collect();
    Taxonomy { nodes, edges }
}

async fn taxonomy_handler(State(app): State<Arc<AppState>>) -> Json<Taxonomy> {
    Json(taxonomy(&app.session.read().expect("session lock")))
}

async fn signals(State(app): State<Arc<AppState>>) -> Json<SignalsJson> {
    Json(app.session.read().expect("session lock").last_signals().into())
}

async fn reset(State(app): State<Arc<AppState>>) -> StatusCode {
    let fresh = Session::new(app.lexicon.clone(), &app.ontology, app.params);
    *app.session.write().expect("session lock") = fresh;
    StatusCode::NO_CONTENT
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/say", post(say))
        .route("/activation", get(activation))
        .route("/graph/taxonomy", get(taxonomy_handler))
        .route("/signals", get(signals))
        .route("/reset", post(reset))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .with_state(state)
}

/// Serves on 127.0.0.1:`port` until the process ends.
pub async fn serve(state: Arc<AppState>, port: u16) -> std::io::Result<()> {
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
