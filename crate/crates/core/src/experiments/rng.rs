/// SplitMix64 generator. The stream depends only on the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[-bound, bound]` by rejection sampling.
    ///
    /// A draw `u` is accepted iff `u < 2^64 - (2^64 mod (2 bound + 1))`.
    pub fn rand_int(&mut self, bound: u32) -> i64 {
        assert!(bound >= 1, "bound must be positive");
        let n = 2 * u128::from(bound) + 1;
        let zone = (1u128 << 64) - ((1u128 << 64) % n);
        loop {
            let u = u128::from(self.next_u64());
            if u < zone {
                return (u % n) as i64 - i64::from(bound);
            }
        }
    }
}

/// Seed for trial `i` of a sweep under `master`: the `(i+1)`-th output of
/// SplitMix64 seeded with `master`.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut rng = SplitMix64::new(master);
    let mut out = rng.next_u64();
    for _ in 0..trial {
        out = rng.next_u64();
    }
    out
}
