use std::f64::consts::{FRAC_PI_4, PI};

use doubletip_client::{Client, ClientError};
use doubletip_core::analysis::Landmark;
use doubletip_core::export::{FramePose, MovieGrid};
use doubletip_core::{HomotopyKind, Vec3};
use doubletip_server::{serve, ServerConfig};
use tokio::net::TcpListener;
use tokio::sync::oneshot;

async fn spawn() -> (Client, oneshot::Sender<()>) {
    let listener = TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let (tx, rx) = oneshot::channel();
    tokio::spawn(serve(listener, ServerConfig::default(), async {
        let _ = rx.await;
    }));
    (Client::new(format!("http://{addr}")), tx)
}

#[tokio::test]
async fn remote_results_match_local() {
    let (client, _stop) = spawn().await;
    client.health().await.unwrap();

    let remote = client.frame(HomotopyKind::Fk, 0.4, 2.9).await.unwrap();
    assert_eq!(remote, FramePose::new(HomotopyKind::Fk, 0.4, 2.9).unwrap());

    let g = client.grid(HomotopyKind::DoubleTip, 9, 9).await.unwrap();
    assert_eq!(g, MovieGrid::new(HomotopyKind::DoubleTip, 9, 9).unwrap());
    let center = g.pose(4, 4).unwrap();
    assert!((center.angle - PI).abs() < 1e-9);

    let c = client.contrail(HomotopyKind::DoubleTip, Landmark::Candle, FRAC_PI_4, 65).await.unwrap();
    assert!(c.points[32].max_abs_diff(-Vec3::Z) < 1e-12);

    let f = client.hinge(Vec3::new(0.85, 0.4, 0.34278), 12).await.unwrap();
    assert_eq!(f.rotations.len(), 12);

    let s = client.phi_theta(5, 5).await.unwrap();
    assert_eq!(s.theta.len(), 5);
}

#[tokio::test]
async fn server_errors_surface_as_api_errors() {
    let (client, _stop) = spawn().await;
    match client.frame(HomotopyKind::DoubleTip, 3.0, 0.0).await {
        Err(ClientError::Api { status, error, .. }) => {
            assert_eq!(status, 400);
            assert_eq!(error, "invalid-input");
        }
        other => panic!("expected an API error, got {other:?}"),
    }
}
