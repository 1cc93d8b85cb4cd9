//! Small deterministic generator for reproducible trials.
//!
//! SplitMix64 keeps seeded runs bit-stable across platforms, which the CLI
//! relies on for its `--seed` flag.

use crate::frame::Frame;
use crate::vvdft::VVSignal;
use crate::C64;

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            state: seed.wrapping_add(0x9e37_79b9_7f4a_7c15),
        }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[-1, 1)`.
    pub fn uniform(&mut self) -> f64 {
        let mantissa = self.next_u64() >> 11; // 53 bits
        mantissa as f64 / (1u64 << 52) as f64 - 1.0
    }

    pub fn complex(&mut self) -> C64 {
        C64::new(self.uniform(), self.uniform())
    }

    pub fn complex_vec(&mut self, len: usize) -> Vec<C64> {
        (0..len).map(|_| self.complex()).collect()
    }

    pub fn signal(&mut self, n: usize, d: usize) -> VVSignal {
        let rows = (0..n).map(|_| self.complex_vec(d)).collect();
        VVSignal::from_rows(rows).expect("generated rows are rectangular")
    }

    pub fn frame(&mut self, n: usize, d: usize) -> Frame {
        let vectors = (0..n).map(|_| self.complex_vec(d)).collect();
        Frame::new(d, vectors).expect("generated vectors are valid")
    }
}
