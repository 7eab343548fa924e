//! Global thread-pool setup: `--threads` wins, then RMBLOCK_THREADS, then
//! rayon's default (all cores).

pub fn init_threads(flag: Option<usize>) {
    let from_env = std::env::var("RMBLOCK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(n) = flag.or(from_env) {
        if n > 0 {
            // A second build_global is an error only if a pool already
            // exists; the CLI calls this exactly once before any work.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}
