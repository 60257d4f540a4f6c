use std::fmt::Write as _;
use std::path::Path;

use super::IterationRecord;
use crate::error::{Error, Result};

pub const HISTORY_COLUMNS: [&str; 7] = [
    "k",
    "constraint_index",
    "step_size",
    "w_norm",
    "max_violation",
    "objective_value",
    "elapsed_ms",
];

/// History as CSV. Missing values (no constraint at `k = 0`, no violation
/// between passes) are empty fields.
pub fn history_csv(history: &[IterationRecord]) -> String {
    let mut out = HISTORY_COLUMNS.join(",");
    out.push('\n');
    for r in history {
        let idx = r
            .constraint_index
            .map(|i| i.to_string())
            .unwrap_or_default();
        let viol = r.max_violation().map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.k, idx, r.step_size, r.w_norm, viol, r.objective_value, r.elapsed_ms
        );
    }
    out
}

pub fn write_history_csv(path: impl AsRef<Path>, history: &[IterationRecord]) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, history_csv(history)).map_err(|e| Error::io(path, e))
}
