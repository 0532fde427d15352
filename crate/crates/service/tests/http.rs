use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use markgame_core::game::GameState;
use markgame_core::lattice::{generate, Family, LatticeMeta};
use markgame_core::strategy::{find_free_paths, BobGreedy, FreePathStrategy, Strategy};
use markgame_core::Move;
use markgame_service::{router, AppState, TranscriptView, View};

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(b) => {
            req = req.header("content-type", "application/json");
            Body::from(b.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

async fn create(app: &Router, human: &str, machine: &str) -> View {
    let body = json!({ "family": "T", "rows": 3, "cols": 3, "human": human, "machine": machine, "machine_seed": 5 });
    let (status, v) = call(app, Method::POST, "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    serde_json::from_value(v).unwrap()
}

async fn submit(app: &Router, id: &str, object: &str) -> (StatusCode, Value) {
    call(app, Method::POST, &format!("/sessions/{id}/moves"), Some(json!({ "object": object }))).await
}

fn app() -> Router {
    router(AppState::default(), None)
}

fn engine_state(view: &View) -> GameState {
    let bundle = generate(&view.lattice).unwrap();
    let moves: Vec<Move> = view.history.iter().map(|m| Move::parse(m, &bundle.graph).unwrap()).collect();
    GameState::replay(bundle.graph, &moves).unwrap()
}

#[tokio::test]
async fn create_and_read_back() {
    let app = app();
    let view = create(&app, "bob", "alice:angle").await;
    assert_eq!(view.vertices.iter().filter(|v| v.marked).count(), 1);
    assert_eq!(view.to_move, Some(markgame_core::Side::Bob));
    assert!(view.faces.iter().any(|f| f.marked_angle.is_some()));
    assert_eq!(view.id.len(), 32);

    let (status, again) = call(&app, Method::GET, &format!("/sessions/{}", view.id), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(serde_json::from_value::<View>(again).unwrap(), view);

    let alice = create(&app, "alice", "bob:freepath:n=0").await;
    assert!(alice.vertices.iter().all(|v| !v.marked));
}

#[tokio::test]
async fn errors_map_to_status_codes() {
    let app = app();
    let (status, _) = call(&app, Method::GET, "/sessions/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = submit(&app, "nope", "e:0").await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let bad = json!({ "family": "T", "rows": 3, "cols": 3, "human": "bob", "machine": "alice:sideways" });
    let (status, _) = call(&app, Method::POST, "/sessions", Some(bad)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let bad = json!({ "family": "Q", "rows": 3, "cols": 3, "human": "bob", "machine": "alice:angle" });
    let (status, _) = call(&app, Method::POST, "/sessions", Some(bad)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let view = create(&app, "bob", "alice:angle").await;
    let (status, _) = submit(&app, &view.id, "e:0").await;
    assert_eq!(status, StatusCode::OK);
    let (status, body) = submit(&app, &view.id, "e:0").await;
    assert_eq!(status, StatusCode::CONFLICT);
    let legal = body["legal"].as_array().unwrap();
    assert!(!legal.is_empty());
    assert!(!legal.contains(&json!("e:0")));
    let (status, _) = submit(&app, &view.id, "v:0").await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, _) = submit(&app, &view.id, "garbage").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn angle_alice_answers_a_hot_vertex_and_game_ends() {
    let app = app();
    let mut view = create(&app, "bob", "alice:angle").await;
    let mut answered_hot = 0;
    while !view.game_over {
        let state = engine_state(&view);
        let mv = BobGreedy.choose(&state).unwrap();
        let label = mv.label(state.graph());
        let after_bob = state.apply_move(mv).unwrap();
        let hot = (0..after_bob.graph().vertex_count()).find(|&v| after_bob.score(v) >= 3);

        let (status, body) = submit(&app, &view.id, &label).await;
        assert_eq!(status, StatusCode::OK, "{body}");
        view = serde_json::from_value(body).unwrap();
        if let (Some(v), false) = (hot, view.game_over) {
            assert_eq!(view.last_machine_move, Some(format!("v:{}", after_bob.graph().vertex_id(v))));
            answered_hot += 1;
        }
        // after Alice's reply no unmarked vertex carries three marked edges
        if view.to_move == Some(markgame_core::Side::Bob) {
            assert!(view.vertices.iter().all(|v| v.marked || v.score < 3));
        }
    }
    assert!(view.score <= 3);
    assert!(view.to_move.is_none());
    assert!(answered_hot > 0, "greedy Bob never made a vertex hot");
    let (status, _) = submit(&app, &view.id, "e:0").await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, _) = call(&app, Method::GET, &format!("/sessions/{}/hint", view.id), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn bob_hint_follows_a_free_path() {
    let app = app();
    let mut view = create(&app, "bob", "alice:random").await;
    loop {
        assert!(!view.game_over, "no free path showed up");
        let state = engine_state(&view);
        if !find_free_paths(&state, 0, 8).is_empty() {
            let (status, hint) = call(&app, Method::GET, &format!("/sessions/{}/hint", view.id), None).await;
            assert_eq!(status, StatusCode::OK);
            let expected = FreePathStrategy::new(0, 8).choose(&state).unwrap().label(state.graph());
            assert_eq!(hint["object"], json!(expected));
            assert_eq!(hint["strategy"], json!("bob:freepath:n=0"));
            let (_, unchanged) = call(&app, Method::GET, &format!("/sessions/{}", view.id), None).await;
            assert_eq!(serde_json::from_value::<View>(unchanged).unwrap(), view);
            break;
        }
        let label = BobGreedy.choose(&state).unwrap().label(state.graph());
        let (_, body) = submit(&app, &view.id, &label).await;
        view = serde_json::from_value(body).unwrap();
    }
}

#[tokio::test]
async fn alice_hint_is_the_angle_move() {
    let app = app();
    let view = create(&app, "alice", "bob:greedy").await;
    let (status, hint) = call(&app, Method::GET, &format!("/sessions/{}/hint", view.id), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(hint["strategy"], json!("alice:angle"));
    let bundle = generate(&LatticeMeta::window(Family::T, 3, 3)).unwrap();
    let mut angle = markgame_core::strategy::AngleStrategy::new(&bundle.graph, bundle.scheme.as_ref().unwrap(), None).unwrap();
    let state = GameState::new(bundle.graph.clone()).unwrap();
    assert_eq!(hint["object"], json!(angle.choose(&state).unwrap().label(&bundle.graph)));
}

#[tokio::test]
async fn transcript_replays_to_the_view() {
    let app = app();
    let mut view = create(&app, "bob", "alice:angle").await;
    for _ in 0..4 {
        let state = engine_state(&view);
        let label = BobGreedy.choose(&state).unwrap().label(state.graph());
        let (_, body) = submit(&app, &view.id, &label).await;
        view = serde_json::from_value(body).unwrap();
    }
    let (status, body) = call(&app, Method::GET, &format!("/sessions/{}/transcript", view.id), None).await;
    assert_eq!(status, StatusCode::OK);
    let t: TranscriptView = serde_json::from_value(body).unwrap();
    let bundle = generate(&t.lattice).unwrap();
    let moves = t.transcript.to_moves(&bundle.graph).unwrap();
    let state = GameState::replay(bundle.graph.clone(), &moves).unwrap();
    for (v, vv) in view.vertices.iter().enumerate() {
        assert_eq!(state.is_vertex_marked(v), vv.marked);
        assert_eq!(state.score(v), vv.score);
    }
    for (e, ev) in view.edges.iter().enumerate() {
        assert_eq!(state.is_edge_marked(e), ev.marked);
    }
    assert_eq!(t.transcript.trace, view.trace);
    assert_eq!(t.transcript.final_score, view.score);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_moves_have_one_winner() {
    let app = app();
    let view = create(&app, "bob", "alice:angle").await;
    let app = Arc::new(app);
    let mut tasks = Vec::new();
    for _ in 0..8 {
        let app = app.clone();
        let id = view.id.clone();
        tasks.push(tokio::spawn(async move { submit(&app, &id, "e:3").await.0 }));
    }
    let mut codes = Vec::new();
    for t in tasks {
        codes.push(t.await.unwrap());
    }
    assert_eq!(codes.iter().filter(|&&c| c == StatusCode::OK).count(), 1, "{codes:?}");
    assert!(codes.iter().all(|&c| c == StatusCode::OK || c == StatusCode::CONFLICT));
}

#[tokio::test]
async fn cors_preflight_is_answered() {
    let app = router(AppState::default(), Some("http://localhost:5173"));
    let req = Request::builder()
        .method(Method::OPTIONS)
        .uri("/sessions")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(resp.headers()["access-control-allow-origin"], "http://localhost:5173");
}
