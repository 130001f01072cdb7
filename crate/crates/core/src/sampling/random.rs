use num_bigint::BigUint;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

/// Seedable ChaCha stream. Identical seeds give identical output on every
/// platform; distinct worker indices select independent streams.
#[derive(Clone, Debug)]
pub struct RandomSource {
    rng: ChaCha12Rng,
}

impl RandomSource {
    pub fn from_seed(seed: u64) -> Self {
        RandomSource { rng: ChaCha12Rng::seed_from_u64(seed) }
    }

    pub fn for_worker(seed: u64, worker: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(worker);
        RandomSource { rng }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform_f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound`; `bound > 0`.
    pub fn uniform_index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound as u64) as usize
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform_f64() < p
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Uniform in `[0, bound)` by rejection on `bits(bound)`-bit candidates.
    pub fn uniform_below(&mut self, bound: &BigUint) -> BigUint {
        assert!(bound.bits() > 0, "empty range");
        let bits = bound.bits();
        let words = bits.div_ceil(64) as usize;
        let top_mask = if bits % 64 == 0 { u64::MAX } else { (1u64 << (bits % 64)) - 1 };
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.rng.next_u64()).collect();
            *digits.last_mut().unwrap() &= top_mask;
            let x = BigUint::from_slice(
                &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>(),
            );
            if &x < bound {
                return x;
            }
        }
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// A uniform real in `[0, 1)` whose binary digits are drawn only as far as
/// needed to compare it with a rational.
pub(crate) struct LazyUniform {
    words: Vec<u64>,
}

impl LazyUniform {
    pub fn new(rng: &mut RandomSource) -> Self {
        LazyUniform { words: vec![rng.next_u64()] }
    }

    /// Bounds `lo ≤ U < hi`, both exactly representable, `hi - lo = 2^-53`.
    pub fn bounds(&self) -> (f64, f64) {
        let lo = (self.words[0] >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        (lo, lo + 1.0 / (1u64 << 53) as f64)
    }

    /// Whether `U < num/den` (exact).
    pub fn less_than(&mut self, num: &BigUint, den: &BigUint, rng: &mut RandomSource) -> bool {
        if num >= den {
            return true;
        }
        let mut rem = num.clone();
        let mut i = 0;
        loop {
            if rem.bits() == 0 {
                // The rational has terminated; U equals it with probability 0.
                return false;
            }
            rem <<= 64u32;
            let digit = &rem / den;
            rem -= &digit * den;
            let digit: u64 = digit.try_into().expect("digit fits in a word");
            if i == self.words.len() {
                self.words.push(rng.next_u64());
            }
            match self.words[i].cmp(&digit) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => i += 1,
            }
        }
    }
}
