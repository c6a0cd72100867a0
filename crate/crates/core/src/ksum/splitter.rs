//! Families of colorings that split every k-subset one element per color.

use rand::Rng;
use serde::Serialize;

/// A coloring of `0..n` into `k` blocks, each block listing indices in
/// increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl ColorPartition {
    pub fn from_colors(colors: &[usize], k: usize) -> Self {
        let mut blocks = vec![Vec::new(); k];
        for (i, &c) in colors.iter().enumerate() {
            blocks[c].push(i);
        }
        ColorPartition { blocks }
    }

    /// Whether the given indices fall into pairwise different blocks.
    pub fn splits(&self, subset: &[usize]) -> bool {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut color = vec![usize::MAX; n];
        for (c, b) in self.blocks.iter().enumerate() {
            for &i in b {
                color[i] = c;
            }
        }
        let mut used = vec![false; self.blocks.len()];
        subset.iter().all(|&i| !std::mem::replace(&mut used[color[i]], true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitterFamily {
    pub partitions: Vec<ColorPartition>,
    /// Every set partition into exactly `k` nonempty blocks is present, so
    /// every k-subset is split.
    pub exhaustive: bool,
}

/// Stirling number of the second kind, saturating.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = (j as u128).saturating_mul(row[j]).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k]
}

/// Number of uniform colorings drawn in random mode:
/// `⌈e^k · k · (γ + 1) · ln n⌉`, at least 1.
pub fn random_family_size(n: usize, k: usize, gamma: u32) -> usize {
    let ln = (n.max(1) as f64).ln();
    let size = (k as f64).exp() * k as f64 * (gamma as f64 + 1.0) * ln;
    (size.ceil() as usize).max(1)
}

/// All set partitions of `0..n` into exactly `k` blocks, as restricted
/// growth strings in lexicographic order.
fn exhaustive(n: usize, k: usize) -> Vec<ColorPartition> {
    fn rec(i: usize, used: usize, n: usize, k: usize, colors: &mut Vec<usize>, out: &mut Vec<ColorPartition>) {
        if n - i < k - used {
            return;
        }
        if i == n {
            out.push(ColorPartition::from_colors(colors, k));
            return;
        }
        for c in 0..=used.min(k - 1) {
            colors.push(c);
            rec(i + 1, used.max(c + 1), n, k, colors, out);
            colors.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, 0, n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Exhaustive when the `S(n, k)` set partitions number at most
/// `exhaustive_cap`, random colorings otherwise. With random colorings a
/// fixed k-subset is missed with probability at most `n^{−(γ+1)k}`.
pub fn splitter_family<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    gamma: u32,
    exhaustive_cap: u128,
    rng: &mut R,
) -> SplitterFamily {
    assert!(k >= 1, "splitter needs k >= 1");
    if k == 1 {
        return SplitterFamily { partitions: vec![ColorPartition { blocks: vec![(0..n).collect()] }], exhaustive: true };
    }
    if n >= k && stirling2(n, k) <= exhaustive_cap {
        return SplitterFamily { partitions: exhaustive(n, k), exhaustive: true };
    }
    random_colorings(n, k, random_family_size(n, k, gamma), rng)
}

/// `count` independent uniform colorings.
pub fn random_colorings<R: Rng + ?Sized>(n: usize, k: usize, count: usize, rng: &mut R) -> SplitterFamily {
    let partitions = (0..count)
        .map(|_| {
            let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            ColorPartition::from_colors(&colors, k)
        })
        .collect();
    SplitterFamily { partitions, exhaustive: false }
}
