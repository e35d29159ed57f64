//! Bit-vector search points, Hamming geometry and standard bit mutation.
//!
//! A [`SearchPoint`] caches its ones-count and a 128-bit XOR fingerprint of
//! its set bits. Both are maintained incrementally under single-bit flips,
//! which keeps fitness evaluation O(1) per offspring even for runs with
//! hundreds of millions of evaluations. The fingerprint is the quantity the
//! frozen-noise oracle feeds into its keyed mixer; see
//! [`crate::fitness::distortion_decision`].

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use std::fmt;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Fixed 128-bit tag for bit position `i`; the fingerprint of a point is the
/// XOR of the tags of its set bits. Linear in flips, so O(1) to update.
#[inline]
pub(crate) fn position_tag(i: u32) -> u128 {
    let lo = mix64((i as u64).wrapping_add(0x9e37_79b9_7f4a_7c15));
    let hi = mix64((i as u64) ^ 0xd1b5_4a32_d192_ed03);
    ((hi as u128) << 64) | lo as u128
}

/// A fixed-length bit vector with cached ones-count and fingerprint.
#[derive(Clone, PartialEq, Eq)]
pub struct SearchPoint {
    words: Vec<u64>,
    n: usize,
    ones: u32,
    fingerprint: u128,
}

impl fmt::Debug for SearchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SearchPoint(n={}, ones={})", self.n, self.ones)
    }
}

impl SearchPoint {
    /// The all-zero string `0⃗`.
    pub fn all_zeros(n: usize) -> Self {
        SearchPoint {
            words: vec![0; n.div_ceil(64)],
            n,
            ones: 0,
            fingerprint: 0,
        }
    }

    /// The all-one string `1⃗`.
    pub fn all_ones(n: usize) -> Self {
        let mut p = Self::all_zeros(n);
        for i in 0..n {
            p.flip(i);
        }
        p
    }

    /// Uniformly random point.
    pub fn uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut p = Self::all_zeros(n);
        for i in 0..n {
            if rng.random::<bool>() {
                p.flip(i);
            }
        }
        p
    }

    /// Random point with exactly `zeros` zero-bits (uniform over that sphere).
    pub fn random_at_distance<R: Rng + ?Sized>(n: usize, zeros: usize, rng: &mut R) -> Result<Self> {
        if zeros > n {
            return Err(Error::Domain(format!("distance {zeros} exceeds dimension {n}")));
        }
        let mut p = Self::all_ones(n);
        // Floyd's combination sampling for the zero positions.
        let mut chosen: Vec<usize> = Vec::with_capacity(zeros);
        for j in (n - zeros)..n {
            let t = rng.random_range(0..=j);
            if chosen.contains(&t) {
                chosen.push(j);
            } else {
                chosen.push(t);
            }
        }
        for i in chosen {
            p.flip(i);
        }
        Ok(p)
    }

    /// Construct from a canonical little-endian packed encoding.
    pub fn from_canonical_bytes(n: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != n.div_ceil(8) {
            return Err(Error::Domain(format!(
                "canonical encoding for n={n} needs {} bytes, got {}",
                n.div_ceil(8),
                bytes.len()
            )));
        }
        let mut p = Self::all_zeros(n);
        for i in 0..n {
            if bytes[i / 8] >> (i % 8) & 1 == 1 {
                p.flip(i);
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cached number of 1-bits.
    pub fn ones(&self) -> u32 {
        self.ones
    }

    /// Number of 0-bits, `n - ones`.
    pub fn zeros(&self) -> u32 {
        self.n as u32 - self.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Flip bit `i`, updating the cached ones-count and fingerprint.
    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.n);
        let word = &mut self.words[i / 64];
        let mask = 1u64 << (i % 64);
        *word ^= mask;
        if *word & mask == 0 {
            self.ones -= 1;
        } else {
            self.ones += 1;
        }
        self.fingerprint ^= position_tag(i as u32);
    }

    /// 128-bit XOR fingerprint of the set bits.
    #[inline]
    pub fn fingerprint(&self) -> u128 {
        self.fingerprint
    }

    /// Ones-count recomputed from scratch (cache cross-check).
    pub fn recount_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Canonical byte encoding: little-endian bit packing, zero-padded final
    /// byte. This is the stable key format for trace logs and memo caches.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.n.div_ceil(8)];
        for (j, chunk) in out.chunks_mut(8).enumerate() {
            let word = self.words[j].to_le_bytes();
            chunk.copy_from_slice(&word[..chunk.len()]);
        }
        out
    }

    pub fn canonical_hex(&self) -> String {
        self.canonical_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `OM(x)`: the number of 1-bits.
pub fn one_max(x: &SearchPoint) -> u32 {
    x.ones()
}

/// `ZM(x) = n - OM(x)`: distance from the all-one string.
pub fn zero_max(x: &SearchPoint) -> u32 {
    x.zeros()
}

/// Hamming distance between two points of equal length.
pub fn hamming(x: &SearchPoint, y: &SearchPoint) -> Result<u32> {
    if x.n != y.n {
        return Err(Error::Dimension { expected: x.n, got: y.n });
    }
    Ok(x.words
        .iter()
        .zip(&y.words)
        .map(|(a, b)| (a ^ b).count_ones())
        .sum())
}

/// Representative state for drift probes: the first `k` bits zero, the rest
/// one, so that `ZM = k`.
pub fn canonical_point(n: usize, k: usize) -> Result<SearchPoint> {
    if k > n {
        return Err(Error::Domain(format!("k = {k} out of range [0, {n}]")));
    }
    let mut p = SearchPoint::all_ones(n);
    for i in 0..k {
        p.flip(i);
    }
    Ok(p)
}

/// Standard bit mutation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutationParams {
    n: usize,
    rate: f64,
    sampler: Binomial,
}

impl MutationParams {
    /// Default mutation rate `1/n`.
    pub fn standard(n: usize) -> Self {
        Self::with_rate(n, 1.0 / n as f64).expect("1/n is a valid rate")
    }

    /// Explicit rate in `[0, 1/2]`. Rate 0 is a degenerate test hook; the
    /// domination experiments require `rate ≤ 1/2`.
    pub fn with_rate(n: usize, rate: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        if !(0.0..=0.5).contains(&rate) {
            return Err(Error::Domain(format!("mutation rate {rate} outside [0, 1/2]")));
        }
        let sampler = Binomial::new(n as u64, rate)
            .map_err(|e| Error::Domain(format!("binomial sampler: {e}")))?;
        Ok(MutationParams { n, rate, sampler })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Sample a flip set distributed exactly as independent per-bit flips:
    /// `K ~ Bin(n, rate)`, then K distinct positions uniformly (Floyd's
    /// algorithm). O(K) expected work instead of O(n).
    pub fn sample_flips<R: Rng + ?Sized>(&self, rng: &mut R, flips: &mut Vec<u32>) {
        flips.clear();
        let k = self.sampler.sample(rng) as usize;
        for j in (self.n - k)..self.n {
            let t = rng.random_range(0..=j) as u32;
            if flips.contains(&t) {
                flips.push(j as u32);
            } else {
                flips.push(t);
            }
        }
    }
}

/// Standard bit mutation: each bit flipped independently with probability
/// `params.rate`. The returned point carries updated caches.
pub fn mutate<R: Rng + ?Sized>(x: &SearchPoint, params: &MutationParams, rng: &mut R) -> SearchPoint {
    debug_assert_eq!(x.n(), params.n);
    let mut y = x.clone();
    let mut flips = Vec::new();
    params.sample_flips(rng, &mut flips);
    for &i in &flips {
        y.flip(i as usize);
    }
    y
}
