// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use ace_forum::{router, Forum};
use clap::Parser;

#[derive(Parser)]
#[command(
    name = "ace-forum",
    version,
    about = "Serve discussion threads over HTTP"
)]
struct Args {
    #[arg(long, env = "ACE_FORUM_ADDR", default_value = "127.0.0.1:8080")]
    listen: SocketAddr,
    /// Keep threads in this directory. Without it threads live in memory.
    #[arg(long, env = "ACE_STORE_DIR")]
    store_dir: Option<PathBuf>,
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args = Args::parse();
    let forum = match &args.store_dir {
        Some(dir) => Forum::open(dir)?,
        None => Forum::in_memory(),
    };
    let listener = tokio::net::TcpListener::bind(args.listen).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(forum)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
