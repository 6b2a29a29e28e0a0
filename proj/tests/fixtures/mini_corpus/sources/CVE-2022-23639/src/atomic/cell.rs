//! A cell specialized for small plain values.

use core::cell::UnsafeCell;

pub struct AtomicCell {
    value: UnsafeCell<u64>,
}

impl AtomicCell {
    /// Reads the stored value.
    pub fn load(&self) -> u64 {
        unsafe { *self.value.get() }
    }

    /// Stores a new value.
    pub fn store(&self, new: u64) {
        unsafe {
            *self.value.get() = new;
        }
    }

    /// Returns the wrapped value, consuming the cell.
    pub fn into_inner(self) -> u64 {
        self.value.into_inner()
    }
}
