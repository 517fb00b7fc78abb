//! The frozen random generator behind every simulation in this workspace.
//!
//! Reproducibility across platforms, thread counts and releases is a hard
//! contract here, so the generator is pinned to an exact, documented
//! algorithm instead of delegating to an external crate whose stream may
//! change between versions. Three primitives are frozen:
//!
//! 1. **Stream generator** — SplitMix64 (Steele, Lea & Flood's public-domain
//!    mixer). State advances by the 64-bit golden-ratio constant and each
//!    output word is the finalizer of the new state:
//!
//!    ```text
//!    state += 0x9E3779B97F4A7C15
//!    z  = state
//!    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
//!    z ^= z >> 27;  z *= 0x94D049BB133111EB
//!    z ^= z >> 31
//!    ```
//!
//!    (all arithmetic mod 2⁶⁴). This is a counter-based generator: the i-th
//!    output is a pure function of `seed + i·0x9E3779B97F4A7C15`.
//!
//! 2. **Bounded integers** — Lemire's multiply-shift with rejection. For a
//!    bound `n`, let `t = (2⁶⁴ − n) mod n` (i.e. `n.wrapping_neg() % n`).
//!    Draw `x = next_u64()`, form the 128-bit product `m = x·n`; if the low
//!    64 bits of `m` are ≥ `t`, accept `m >> 64`, otherwise redraw.
//!
//! 3. **Open-unit uniforms** — `((x >> 11) + 0.5) · 2⁻⁵³`, which lies in the
//!    open interval (0, 1), so quantile transforms never see 0 or 1.
//!
//! Per-task seeds are derived with [`derive_stream`]: starting from the
//! master seed, each context word `p` is absorbed as
//! `h = mix64(h ⊕ (p + 0x9E3779B97F4A7C15·(i+1)))` where `i` is the word's
//! position and `mix64` is the finalizer above. Replicates seeded this way
//! are independent of scheduling order by construction.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; a bijective 64-bit mixing function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a master seed and context words
/// (e.g. `[n, replicate_index]`). See the module docs for the exact recipe.
pub fn derive_stream(master: u64, parts: &[u64]) -> u64 {
    let mut h = master;
    for (i, &p) in parts.iter().enumerate() {
        h = mix64(h ^ p.wrapping_add(GOLDEN.wrapping_mul(i as u64 + 1)));
    }
    h
}

/// The frozen SplitMix64 stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform draw from the open interval (0, 1).
    #[inline]
    pub fn next_open_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)` by Lemire's multiply-shift with rejection.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    #[inline]
    pub fn next_index(&mut self, n: u64) -> u64 {
        assert!(n > 0, "bounded draw requires n > 0");
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            let m = (x as u128) * (n as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }
}
