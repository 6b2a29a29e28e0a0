//! Path hygiene helpers.

/// Rejects empty table names.
pub fn sanitize_component(name: &str) -> io::Result<&str> {
    if name.is_empty() {
        return Err(bad_name());
    }
    Ok(name)
}
