//! Input resolution and atomic output.
//!
//! Inputs are looked up as literal paths first, then under
//! `$WHITNEY_SCENARIO_DIR`, then among the bundled scenario files, so
//! commands can name `cone.germ` without caring where it lives.

use std::env;
use std::fs;
use std::io::Write;
use std::path::Path;

/// Environment variable naming the default corpus directory.
pub const SCENARIO_DIR_VAR: &str = "WHITNEY_SCENARIO_DIR";

pub fn read_input(name: &str) -> Result<String, String> {
    let direct = Path::new(name);
    if direct.is_file() {
        return fs::read_to_string(direct).map_err(|e| format!("{name}: {e}"));
    }
    if let Ok(dir) = env::var(SCENARIO_DIR_VAR) {
        let under = Path::new(&dir).join(name);
        if under.is_file() {
            return fs::read_to_string(&under)
                .map_err(|e| format!("{}: {e}", under.display()));
        }
    }
    if let Some(text) = whitney_core::scenarios::bundled(name) {
        return Ok(text.to_string());
    }
    Err(format!(
        "input {name:?} not found as a path, under ${SCENARIO_DIR_VAR}, or among bundled scenarios"
    ))
}

/// Write via a temp file in the target directory and rename into place, so
/// readers never observe a partial report.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), String> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?;
    tmp.write_all(content.as_bytes())
        .map_err(|e| format!("{}: {e}", path.display()))?;
    tmp.persist(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(())
}
