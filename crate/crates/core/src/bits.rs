//! Dense bit rows and square bit matrices.
//!
//! Every relation the engine keeps on `V(H) x V(H)` is a square matrix of
//! `n` rows, each `ceil(n / 64)` words. Row operations work a word at a time,
//! which is what keeps envelope and implication steps near `O(n^2 / 64)`.

/// Number of 64-bit words needed for `n` bits.
#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Calls `f` for every set bit of `words`, in increasing order.
#[inline]
pub fn for_each_one(words: &[u64], mut f: impl FnMut(usize)) {
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let tz = w.trailing_zeros() as usize;
            f(wi * 64 + tz);
            w &= w - 1;
        }
    }
}

/// First set bit at position `>= from`, if any.
#[inline]
pub fn next_one(words: &[u64], from: usize) -> Option<usize> {
    let mut wi = from / 64;
    if wi >= words.len() {
        return None;
    }
    let mut w = words[wi] & (!0u64 << (from % 64));
    loop {
        if w != 0 {
            return Some(wi * 64 + w.trailing_zeros() as usize);
        }
        wi += 1;
        if wi == words.len() {
            return None;
        }
        w = words[wi];
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    /// Sets bit `(r, c)`; returns whether it was previously clear.
    #[inline]
    pub fn set(&mut self, r: usize, c: usize) -> bool {
        let w = &mut self.data[r * self.words + c / 64];
        let mask = 1u64 << (c % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn clear(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] &= !(1u64 << (c % 64));
    }

    #[inline]
    pub fn word(&self, r: usize, wi: usize) -> u64 {
        self.data[r * self.words + wi]
    }

    #[inline]
    pub fn set_word(&mut self, r: usize, wi: usize, v: u64) {
        self.data[r * self.words + wi] = v;
    }

    pub fn row_is_empty(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }

    pub fn row_count(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones_in_row(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for_each_one(self.row(r), |c| out.push(c));
        out
    }

    /// All set positions as `(row, col)` in row-major order.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for_each_one(self.row(r), |c| out.push((r, c)));
        }
        out
    }
}
