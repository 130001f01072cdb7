/// Leftmost-argmin range queries in O(1) after an O(n) build: a sparse
/// table over blocks of 32 entries, plus linear scans inside the two end
/// blocks. Memory is O(n + (n/32) log n).
#[derive(Clone, Debug)]
pub struct BlockRmq {
    values: Vec<u32>,
    // levels[j][b] = leftmost argmin over blocks b .. b + 2^j
    levels: Vec<Vec<u32>>,
}

const BLOCK: usize = 32;

impl BlockRmq {
    pub fn new(values: Vec<u32>) -> Self {
        assert!(values.len() < u32::MAX as usize, "too many values");
        let blocks = values.len().div_ceil(BLOCK);
        let mut base = Vec::with_capacity(blocks);
        for b in 0..blocks {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(values.len());
            base.push(scan(&values, lo, hi - 1) as u32);
        }
        let mut levels = vec![base];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = levels.last().unwrap();
            let next = (0..=blocks - 2 * width)
                .map(|b| pick(&values, prev[b] as usize, prev[b + width] as usize) as u32)
                .collect();
            levels.push(next);
            width *= 2;
        }
        BlockRmq { values, levels }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Leftmost position of the minimum of `values[lo..=hi]`.
    pub fn argmin(&self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi && hi < self.values.len(), "bad range {lo}..={hi}");
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bh <= bl + 1 {
            return scan(&self.values, lo, hi);
        }
        let mut best = scan(&self.values, lo, (bl + 1) * BLOCK - 1);
        let (from, to) = (bl + 1, bh - 1);
        let j = (usize::BITS - 1 - (to - from + 1).leading_zeros()) as usize;
        let mid = pick(
            &self.values,
            self.levels[j][from] as usize,
            self.levels[j][to + 1 - (1 << j)] as usize,
        );
        best = pick(&self.values, best, mid);
        pick(&self.values, best, scan(&self.values, bh * BLOCK, hi))
    }
}

fn scan(values: &[u32], lo: usize, hi: usize) -> usize {
    let mut best = lo;
    for i in lo + 1..=hi {
        if values[i] < values[best] {
            best = i;
        }
    }
    best
}

/// `a` lies left of `b`; ties go to `a`.
fn pick(values: &[u32], a: usize, b: usize) -> usize {
    if values[b] < values[a] {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RandomSource;

    #[test]
    fn matches_linear_scan() {
        let mut rng = RandomSource::from_seed(3);
        for len in [1usize, 5, 31, 32, 33, 64, 65, 200, 1000] {
            let values: Vec<u32> = (0..len).map(|_| rng.uniform_index(7) as u32).collect();
            let rmq = BlockRmq::new(values.clone());
            for _ in 0..500 {
                let a = rng.uniform_index(len);
                let b = rng.uniform_index(len);
                let (lo, hi) = (a.min(b), a.max(b));
                assert_eq!(rmq.argmin(lo, hi), scan(&values, lo, hi), "{len} {lo} {hi}");
            }
        }
    }
}
