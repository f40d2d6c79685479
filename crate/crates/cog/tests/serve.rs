use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use cog::serve::{router, ActiveNode, AppState, SayResponse, SignalsJson, Taxonomy, BODY_LIMIT};
use cog_core::cognition::Ontology;
use cog_core::language::Lexicon;
use cog_core::ActivationParams;
use http_body_util::BodyExt;
use tower::ServiceExt;

fn app() -> (Router, Arc<AppState>) {
    let state = Arc::new(AppState::new(Lexicon::english(), Ontology::basic(), ActivationParams::default()));
    (router(state.clone()), state)
}

async fn send(app: &Router, req: Request<Body>) -> (StatusCode, Vec<u8>) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

fn post(uri: &str, body: impl Into<Body>) -> Request<Body> {
    Request::post(uri).header("content-type", "application/json").body(body.into()).unwrap()
}

fn get(uri: &str) -> Request<Body> {
    Request::get(uri).body(Body::empty()).unwrap()
}

async fn say(app: &Router, text: &str) -> SayResponse {
    let (status, body) = send(app, post("/say", serde_json::json!({ "text": text }).to_string())).await;
    assert_eq!(status, StatusCode::OK);
    serde_json::from_slice(&body).unwrap()
}

#[tokio::test]
async fn say_round_trip() {
    let (app, _) = app();
    let r = say(&app, "Tina wants a dog and a cat.").await;
    assert_eq!(r.kind, "ack");
    let r = say(&app, "Actually, Tina only wants a cat.").await;
    assert!((r.signals.surprise - 0.9).abs() < 1e-12);
    let r = say(&app, "What does Tina want?").await;
    assert_eq!((r.kind.as_str(), r.text.as_str(), r.verdict.as_deref()), ("answer", "a cat", Some("list")));
    let r = say(&app, "Does Tina want a dog?").await;
    assert_eq!(r.verdict.as_deref(), Some("unknown"));

    let r = say(&app, "Blorp glorp.").await;
    assert_eq!(r.kind, "error");
    assert_eq!(r.offset, Some(6));
    assert_eq!(r.signals.confusion, 1.0);

    let (status, body) = send(&app, get("/signals")).await;
    assert_eq!(status, StatusCode::OK);
    let s: SignalsJson = serde_json::from_slice(&body).unwrap();
    assert_eq!(s, r.signals);
}

#[tokio::test]
async fn bad_requests_are_rejected() {
    let (app, state) = app();
    for body in ["", "{", "{\"txt\": \"x\"}", "[1,2]", "{\"text\": 5}"] {
        let (status, _) = send(&app, post("/say", body)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body:?}");
    }
    let (status, _) = send(&app, post("/say", "{\"text\": \"   \"}")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let big = format!("{{\"text\": \"{}\"}}", "a".repeat(BODY_LIMIT + 1));
    let (status, _) = send(&app, post("/say", big)).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);

    // nothing above reached the session
    assert_eq!(state.session.read().unwrap().seq(), 0);
}

#[tokio::test]
async fn activation_mirrors_working_memory() {
    let (app, state) = app();
    say(&app, "Rover is a dog.").await;
    say(&app, "Tina loves Rover.").await;
    let (status, body) = send(&app, get("/activation")).await;
    assert_eq!(status, StatusCode::OK);
    let got: Vec<ActiveNode> = serde_json::from_slice(&body).unwrap();
    let want: Vec<ActiveNode> = state
        .session
        .read()
        .unwrap()
        .working_memory()
        .into_iter()
        .map(|(id, label, level)| ActiveNode { id: id.0, label: label.into(), level })
        .collect();
    assert!(!got.is_empty());
    assert_eq!(got, want);
    assert!(got.windows(2).all(|w| w[0].level >= w[1].level));
}

#[tokio::test]
async fn taxonomy_lists_live_hierarchy() {
    let (app, _) = app();
    say(&app, "Rover is a puppy.").await;
    let (status, body) = send(&app, get("/graph/taxonomy")).await;
    assert_eq!(status, StatusCode::OK);
    let t: Taxonomy = serde_json::from_slice(&body).unwrap();
    let label = |id: u64| t.nodes.iter().find(|n| n.id == id).map(|n| n.label.as_str()).unwrap();
    let pairs: Vec<(&str, &str, &str)> = t.edges.iter().map(|e| (label(e.src), e.rel.as_str(), label(e.dst))).collect();
    assert!(pairs.contains(&("Rover", "instance-of", "puppy")), "{pairs:?}");
    assert!(pairs.contains(&("puppy", "is-a", "dog")));
    assert!(pairs.contains(&("dog", "is-a", "mammal")));
    assert!(t.edges.iter().all(|e| e.rel == "is-a" || e.rel == "instance-of"));
}

#[tokio::test]
async fn reset_starts_over() {
    let (app, state) = app();
    say(&app, "Tina wants a cat.").await;
    let (status, _) = send(&app, post("/reset", Body::empty())).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    assert_eq!(state.session.read().unwrap().seq(), 0);
    let r = say(&app, "What does Tina want?").await;
    assert_eq!(r.verdict.as_deref(), Some("unknown"));
    // the seed ontology survives a reset
    say(&app, "Rover is a dog.").await;
    assert_eq!(say(&app, "Is Rover an animal?").await.verdict.as_deref(), Some("yes"));
}

#[tokio::test]
async fn unknown_route_is_404() {
    let (app, _) = app();
    let (status, _) = send(&app, get("/nope")).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}
