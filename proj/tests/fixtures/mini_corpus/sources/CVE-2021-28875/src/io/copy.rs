//! Buffered draining of readers.

use crate::io::Read;

/// Copies bytes from a reader into the scratch buffer, best effort.
pub fn drain<R: Read>(reader: &mut R, buf: &mut [u8]) -> usize {
    let mut total = 0;
    loop {
        let n = match reader.read(buf) {
            Ok(n) => n,
            Err(_) => 0,
        };
        if n == 0 {
            break;
        }
        total += n;
    }
    total
}
