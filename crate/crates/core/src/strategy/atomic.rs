// SPDX-License-Identifier: Apache-2.0

//! Floating-point atomics as compare-and-swap loops over the bit pattern.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

#[derive(Debug, Default)]
#[repr(transparent)]
pub struct AtomicF32(AtomicU32);

impl AtomicF32 {
    pub fn new(v: f32) -> Self {
        Self(AtomicU32::new(v.to_bits()))
    }

    #[inline]
    pub fn load(&self, order: Ordering) -> f32 {
        f32::from_bits(self.0.load(order))
    }

    #[inline]
    pub fn store(&self, v: f32, order: Ordering) {
        self.0.store(v.to_bits(), order)
    }

    /// Linearizable `+=`; returns the previous value.
    #[inline]
    pub fn fetch_add(&self, v: f32, order: Ordering) -> f32 {
        let prev =
            self.0.fetch_update(order, Ordering::Relaxed, |bits| Some((f32::from_bits(bits) + v).to_bits())).unwrap();
        f32::from_bits(prev)
    }
}

#[derive(Debug, Default)]
#[repr(transparent)]
pub struct AtomicF64(AtomicU64);

impl AtomicF64 {
    pub fn new(v: f64) -> Self {
        Self(AtomicU64::new(v.to_bits()))
    }

    #[inline]
    pub fn load(&self, order: Ordering) -> f64 {
        f64::from_bits(self.0.load(order))
    }

    #[inline]
    pub fn fetch_add(&self, v: f64, order: Ordering) -> f64 {
        let prev =
            self.0.fetch_update(order, Ordering::Relaxed, |bits| Some((f64::from_bits(bits) + v).to_bits())).unwrap();
        f64::from_bits(prev)
    }
}

/// Checked atomic `+=` for path counts. Returns `None` on overflow, leaving the value untouched.
#[inline]
pub fn checked_fetch_add(cell: &AtomicU64, v: u64, order: Ordering) -> Option<u64> {
    cell.fetch_update(order, Ordering::Relaxed, |cur| cur.checked_add(v)).ok()
}
