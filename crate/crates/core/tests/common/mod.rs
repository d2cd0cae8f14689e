#![allow(dead_code)]

pub mod lists;

use std::time::{Duration, Instant};

/// Run a criterion body, print one pass/fail line, and enforce the stated
/// wall-clock limit.
pub fn criterion<F: FnOnce() -> Result<String, String>>(name: &str, limit: Duration, body: F) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    match &result {
        Ok(detail) => println!("ACCEPT {name}: PASS ({elapsed:.2?}) {detail}"),
        Err(detail) => println!("ACCEPT {name}: FAIL ({elapsed:.2?}) {detail}"),
    }
    assert!(result.is_ok(), "{name}: {}", result.unwrap_err());
    assert!(
        elapsed <= limit,
        "{name} exceeded its time limit: {elapsed:.2?} > {limit:.2?}"
    );
}

/// A rayon pool with one worker, for the single-threaded runtime criteria.
pub fn single_thread_pool() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("pool")
}
