//! Snapshot file handling.

/// Writes a keyspace snapshot under the data directory.
pub fn write_snapshot(dir: &Path, name: &str, bytes: &[u8]) -> io::Result<()> {
    let target = dir.join(name);
    fs::write(target, bytes)
}
