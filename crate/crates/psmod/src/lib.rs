//! Std side of the workspace: run configuration, parallel suite execution, JSON reports and
//! the on-disk Kazhdan-Lusztig table cache.

pub mod config;
pub mod klcache;
pub mod run;

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const CONFIG_ERROR: i32 = 2;
}
