//! Deterministic hash families for color coding and derandomized selection.
//!
//! A splitter maps a universe `[N]` into `[k²]` so that every `k`-subset is
//! mapped injectively by at least one member. The modular family
//! `x ↦ ((a·x) mod P) mod k²` over `a ∈ [1, P)` has this property whenever
//! `P` is a prime larger than `N` and than `k²(k-1)/2 + 1`: a fixed pair
//! collides for at most `2(P-1)/k²` multipliers, and the union over the
//! `k(k-1)/2` pairs of a `k`-set leaves at least one good multiplier.
//!
//! A perfect coloring family maps `[N]` into `[k]` so that every set of at
//! most `k` elements receives pairwise distinct colors.

use std::collections::HashSet;

use rand::Rng;

/// One member of a [`SplitterFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HashFn {
    Identity,
    Modular { a: u64, prime: u64, range: u64 },
}

impl HashFn {
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        match *self {
            HashFn::Identity => x,
            HashFn::Modular { a, prime, range } => (((a * x as u64) % prime) % range) as usize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitterFamily {
    universe: usize,
    k: usize,
    range: usize,
    functions: Vec<HashFn>,
}

impl SplitterFamily {
    /// Family from `[universe]` to `[k²]` that is injective on every
    /// `k`-subset through some member. When the universe already fits into
    /// `k²` the identity suffices.
    pub fn new(universe: usize, k: usize) -> Self {
        let range = k * k;
        if k == 0 || universe <= range {
            return Self {
                universe,
                k,
                range: universe,
                functions: vec![HashFn::Identity],
            };
        }
        let bound = (universe as u64).max((range * k.saturating_sub(1) / 2 + 1) as u64);
        let prime = next_prime(bound + 1);
        let functions = (1..prime)
            .map(|a| HashFn::Modular {
                a,
                prime,
                range: range as u64,
            })
            .collect();
        Self {
            universe,
            k,
            range,
            functions,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Size of the codomain.
    pub fn range(&self) -> usize {
        self.range
    }

    pub fn functions(&self) -> &[HashFn] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

/// Smallest prime `>= from`.
pub fn next_prime(from: u64) -> u64 {
    let mut c = from.max(2);
    loop {
        if is_prime(c) {
            return c;
        }
        c += 1;
    }
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A coloring of `[N]` with colors `0..k`.
pub type Coloring = Vec<u8>;

/// Colorings of `[n]` with `k` colors such that every subset of at most `k`
/// elements is rainbow under some member. Colorings that differ only by a
/// permutation of colors are kept once.
pub fn perfect_colorings(n: usize, k: usize) -> Vec<Coloring> {
    assert!(k <= u8::MAX as usize + 1, "at most 256 colors");
    if n <= k {
        return vec![(0..n).map(|x| x as u8).collect()];
    }
    if k == 0 {
        return vec![vec![0; n]];
    }
    let direct = binomial(n, k);
    let splitter = SplitterFamily::new(n, k);
    let composed = (splitter.len() as u128) * binomial(splitter.range(), k);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut keep = |coloring: Coloring| {
        let canon = canonical(&coloring);
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    };
    if direct <= composed {
        for_each_subset(n, k, |t| keep(rank_coloring(n, t, |x| x)));
    } else {
        for f in splitter.functions() {
            for_each_subset(splitter.range(), k, |t| {
                keep(rank_coloring(n, t, |x| f.apply(x)));
            });
        }
    }
    out
}

/// `count` uniformly random colorings of `[n]` with `k` colors.
pub fn random_colorings<R: Rng>(n: usize, k: usize, count: usize, rng: &mut R) -> Vec<Coloring> {
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| if k == 0 { 0 } else { rng.gen_range(0..k) as u8 })
                .collect()
        })
        .collect()
}

/// Number of random trials that find a fixed `k`-set rainbow with failure
/// probability at most `delta`.
pub fn random_coloring_trials(k: usize, delta: f64) -> usize {
    ((k as f64).exp() * (1.0 / delta).ln()).ceil().max(1.0) as usize
}

/// Coloring where the members of `t` (a sorted subset of the hash range)
/// receive colors `0..k` by rank, applied through `hash`.
fn rank_coloring(n: usize, t: &[usize], hash: impl Fn(usize) -> usize) -> Coloring {
    (0..n)
        .map(|x| {
            let h = hash(x);
            t.iter().position(|&y| y == h).unwrap_or(0) as u8
        })
        .collect()
}

/// Renames colors in order of first appearance.
fn canonical(c: &[u8]) -> Coloring {
    let mut rename = [u8::MAX; 256];
    let mut next = 0u8;
    c.iter()
        .map(|&x| {
            if rename[x as usize] == u8::MAX {
                rename[x as usize] = next;
                next = next.wrapping_add(1);
            }
            rename[x as usize]
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Calls `f` on every `k`-subset of `0..n`, as a sorted slice, in
/// lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
