//! Deterministic, splittable random streams.
//!
//! A stream is identified by a (seed, stream-id) pair; the pair is expanded
//! through SplitMix64 into a ChaCha8 key, so distinct ids give statistically
//! independent counter-based streams and identical ids replay bit-exactly.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seedable, splittable deterministic random stream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut state = seed ^ 0x6A09_E667_F3BC_C908;
        let mixed_stream = {
            let mut s = stream_id ^ 0xBB67_AE85_84CA_A73B;
            splitmix64(&mut s)
        };
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            let word = splitmix64(&mut state) ^ mixed_stream;
            chunk.copy_from_slice(&word.to_le_bytes());
        }
        RngStream {
            seed,
            stream_id,
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Child stream `idx` of this stream. Children of distinct (stream, idx)
    /// pairs get distinct ids; the layout is a pure function of the inputs,
    /// which is what makes worker counts irrelevant to the output.
    pub fn child(&self, idx: u64) -> RngStream {
        let mut s = self.stream_id ^ idx.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0x1F83_D9AB_FB41_BD6B;
        let child_id = splitmix64(&mut s);
        RngStream::new(self.seed, child_id)
    }

    /// `k` child streams with distinct stream ids.
    pub fn split(&self, k: usize) -> Vec<RngStream> {
        (0..k as u64).map(|i| self.child(i)).collect()
    }

    /// Uniform draw in the open interval (0, 1).
    pub fn uniform_open(&mut self) -> f64 {
        // 53-bit uniform in [0,1), clamped away from the endpoints
        let u = (self.inner.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0);
        u.clamp(1e-16, 1.0 - 1e-16)
    }

    /// Standard normal via Box-Muller (two uniforms per pair, cached none —
    /// one draw per call keeps the consumption pattern simple and auditable).
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = self.uniform_open();
        let u2 = self.uniform_open();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Unit-rate exponential draw.
    pub fn exponential(&mut self) -> f64 {
        -self.uniform_open().ln()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}
