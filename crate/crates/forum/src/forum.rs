// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Thread registry, persistence and change notification.
//!
//! Each thread has a mutex that serializes writers. Readers take the
//! current snapshot under the lock and evaluate after releasing it.
//! With a store directory, thread `t` is kept as `t.json` (the graph
//! document) and `t.meta.json` (title, authors, event log).

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard, RwLock};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use ace::store;
use ace_core::{EvaluationOptions, VertexId};
use serde::{Deserialize, Serialize};
use tokio::sync::watch;

use crate::error::ForumError;
use crate::model::{
    CreateThread, CreatedThread, Event, EventBatch, NewPost, Post, PostsAdded, ThreadEvaluation,
    ThreadSummary,
};
use crate::thread::{evaluate, PostMeta, Snapshot, Thread};

const META_VERSION: u32 = 1;

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as u64)
}

#[derive(Serialize, Deserialize)]
struct ThreadMeta {
    format_version: u32,
    id: String,
    title: String,
    created_at: u64,
    version: u64,
    posts: Vec<PostMeta>,
    tracked_roots: BTreeSet<VertexId>,
    events: Vec<Event>,
}

struct ThreadCell {
    state: Mutex<Thread>,
    /// Current version, or None once the thread is deleted.
    version: watch::Sender<Option<u64>>,
}

impl ThreadCell {
    fn new(thread: Thread) -> Arc<Self> {
        let (version, _) = watch::channel(Some(thread.version()));
        Arc::new(Self {
            state: Mutex::new(thread),
            version,
        })
    }

    fn lock(&self) -> MutexGuard<'_, Thread> {
        self.state.lock().unwrap_or_else(|p| p.into_inner())
    }
}

pub struct Forum {
    threads: RwLock<BTreeMap<String, Arc<ThreadCell>>>,
    next_id: AtomicU64,
    store_dir: Option<PathBuf>,
}

impl Forum {
    /// Forum kept in memory only.
    pub fn in_memory() -> Self {
        Self {
            threads: RwLock::new(BTreeMap::new()),
            next_id: AtomicU64::new(1),
            store_dir: None,
        }
    }

    /// Forum persisted under `dir`, loading the threads already there.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, ForumError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        let mut threads = BTreeMap::new();
        let mut max_id = 0;
        for entry in std::fs::read_dir(&dir)? {
            let path = entry?.path();
            let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
                continue;
            };
            let Some(id) = name.strip_suffix(".meta.json") else {
                continue;
            };
            let thread = load_thread(&dir, id)?;
            if let Some(n) = id.strip_prefix('t').and_then(|n| n.parse::<u64>().ok()) {
                max_id = max_id.max(n);
            }
            threads.insert(id.to_owned(), ThreadCell::new(thread));
        }
        Ok(Self {
            threads: RwLock::new(threads),
            next_id: AtomicU64::new(max_id + 1),
            store_dir: Some(dir),
        })
    }

    fn cell(&self, id: &str) -> Result<Arc<ThreadCell>, ForumError> {
        self.threads
            .read()
            .unwrap_or_else(|p| p.into_inner())
            .get(id)
            .cloned()
            .ok_or_else(|| ForumError::UnknownThread(id.to_owned()))
    }

    fn persist(&self, thread: &Thread) -> Result<(), ForumError> {
        let Some(dir) = &self.store_dir else {
            return Ok(());
        };
        let snap = thread.snapshot();
        store::save(
            &dir.join(format!("{}.json", thread.id)),
            &snap.graph,
            &snap.rules,
        )?;
        let meta = ThreadMeta {
            format_version: META_VERSION,
            id: thread.id.clone(),
            title: thread.title.clone(),
            created_at: thread.created_at,
            version: thread.version(),
            posts: thread.post_metas().to_vec(),
            tracked_roots: thread.tracked_roots().clone(),
            events: thread.events().to_vec(),
        };
        let mut bytes =
            serde_json::to_vec_pretty(&meta).map_err(|e| ForumError::Storage(e.to_string()))?;
        bytes.push(b'\n');
        store::write_atomic(&dir.join(format!("{}.meta.json", thread.id)), &bytes)?;
        Ok(())
    }

    pub fn list_threads(&self) -> Vec<ThreadSummary> {
        let cells: Vec<Arc<ThreadCell>> = self
            .threads
            .read()
            .unwrap_or_else(|p| p.into_inner())
            .values()
            .cloned()
            .collect();
        cells.iter().map(|c| c.lock().summary()).collect()
    }

    pub fn create_thread(&self, req: CreateThread) -> Result<CreatedThread, ForumError> {
        let id = format!("t{}", self.next_id.fetch_add(1, Ordering::Relaxed));
        let thread = Thread::create(id.clone(), req, now_ms())?;
        self.persist(&thread)?;
        let summary = thread.summary();
        let root_post = thread.post(&summary.root_post).expect("root post exists");
        self.threads
            .write()
            .unwrap_or_else(|p| p.into_inner())
            .insert(id, ThreadCell::new(thread));
        Ok(CreatedThread {
            thread: summary,
            root_post,
        })
    }

    pub fn thread(&self, id: &str) -> Result<ThreadSummary, ForumError> {
        Ok(self.cell(id)?.lock().summary())
    }

    pub fn posts(&self, id: &str) -> Result<Vec<Post>, ForumError> {
        Ok(self.cell(id)?.lock().posts())
    }

    /// Applies a post. The thread is only changed if persisting succeeds.
    pub fn add_post(&self, id: &str, req: NewPost) -> Result<PostsAdded, ForumError> {
        let cell = self.cell(id)?;
        let mut thread = cell.lock();
        let mut next = thread.clone();
        let posts = next.add_post(req, now_ms())?;
        self.persist(&next)?;
        *thread = next;
        let version = thread.version();
        cell.version.send_replace(Some(version));
        Ok(PostsAdded { version, posts })
    }

    pub fn evaluation(
        &self,
        id: &str,
        root: &VertexId,
        options: EvaluationOptions,
    ) -> Result<ThreadEvaluation, ForumError> {
        let cell = self.cell(id)?;
        let snapshot: Arc<Snapshot> = {
            let thread = cell.lock();
            if let Some(view) = thread.cached(root, options) {
                return Ok(ThreadEvaluation {
                    thread: id.to_owned(),
                    version: thread.version(),
                    evaluation: (*view).clone(),
                });
            }
            thread.snapshot()
        };
        let view = Arc::new(evaluate(&snapshot, root, options)?);
        let mut thread = cell.lock();
        if thread.remember(root, options, snapshot.version, Arc::clone(&view)) {
            self.persist(&thread)?;
        }
        Ok(ThreadEvaluation {
            thread: id.to_owned(),
            version: snapshot.version,
            evaluation: (*view).clone(),
        })
    }

    /// Events newer than `since`. When there are none, waits up to `wait`
    /// for the next change.
    pub async fn events(
        &self,
        id: &str,
        since: u64,
        wait: Duration,
    ) -> Result<EventBatch, ForumError> {
        let cell = self.cell(id)?;
        let mut rx = cell.version.subscribe();
        let batch = |cell: &ThreadCell| {
            let thread = cell.lock();
            EventBatch {
                version: thread.version(),
                events: thread.events_since(since),
            }
        };
        let first = batch(&cell);
        if !first.events.is_empty() || wait.is_zero() {
            return Ok(first);
        }
        let deadline = tokio::time::Instant::now() + wait;
        loop {
            match *rx.borrow_and_update() {
                None => return Err(ForumError::ThreadDeleted(id.to_owned())),
                Some(v) if v > since => return Ok(batch(&cell)),
                Some(_) => {}
            }
            match tokio::time::timeout_at(deadline, rx.changed()).await {
                Ok(Ok(())) => continue,
                Ok(Err(_)) => return Err(ForumError::ThreadDeleted(id.to_owned())),
                Err(_) => return Ok(batch(&cell)),
            }
        }
    }

    /// Canonical graph document of the current snapshot.
    pub fn export(&self, id: &str) -> Result<(u64, Vec<u8>), ForumError> {
        let snapshot = self.cell(id)?.lock().snapshot();
        Ok((
            snapshot.version,
            store::to_bytes(&snapshot.graph, &snapshot.rules)?,
        ))
    }

    pub fn delete_thread(&self, id: &str) -> Result<(), ForumError> {
        let cell = self
            .threads
            .write()
            .unwrap_or_else(|p| p.into_inner())
            .remove(id)
            .ok_or_else(|| ForumError::UnknownThread(id.to_owned()))?;
        cell.version.send_replace(None);
        if let Some(dir) = &self.store_dir {
            for name in [format!("{id}.json"), format!("{id}.meta.json")] {
                match std::fs::remove_file(dir.join(name)) {
                    Err(e) if e.kind() != std::io::ErrorKind::NotFound => return Err(e.into()),
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

fn load_thread(dir: &Path, id: &str) -> Result<Thread, ForumError> {
    let meta_path = dir.join(format!("{id}.meta.json"));
    let bytes = std::fs::read(&meta_path)?;
    let meta: ThreadMeta = serde_json::from_slice(&bytes)
        .map_err(|e| ForumError::Storage(format!("{}: {e}", meta_path.display())))?;
    if meta.format_version != META_VERSION {
        return Err(ForumError::Storage(format!(
            "{}: unsupported format_version {}",
            meta_path.display(),
            meta.format_version
        )));
    }
    let stored = store::load(&dir.join(format!("{id}.json")))?;
    Ok(Thread::restore(
        meta.id,
        meta.title,
        meta.created_at,
        Snapshot {
            version: meta.version,
            graph: stored.graph,
            rules: stored.rules,
        },
        meta.posts,
        meta.events,
        meta.tracked_roots,
    ))
}
