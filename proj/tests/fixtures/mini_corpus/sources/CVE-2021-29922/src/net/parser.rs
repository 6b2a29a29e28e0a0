//! IP address parsing helpers.

/// Parses a dotted-quad IPv4 address.
pub fn parse_ipv4(s: &str) -> Option<[u8; 4]> {
    let mut out = [0u8; 4];
    let mut idx = 0;
    for part in s.split('.') {
        if idx == 4 {
            return None;
        }
        let value = part.parse::<u32>().ok()?;
        if value > 255 {
            return None;
        }
        out[idx] = value as u8;
        idx += 1;
    }
    if idx == 4 {
        Some(out)
    } else {
        None
    }
}

/// Formats four octets back into dotted-quad form.
pub fn format_ipv4(octets: [u8; 4]) -> String {
    format!("{}.{}.{}.{}", octets[0], octets[1], octets[2], octets[3])
}
