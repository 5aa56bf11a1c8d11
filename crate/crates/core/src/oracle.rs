//! Independent brute-force ground truth.
//!
//! Nothing here reuses the generating-square enumeration or the brick
//! construction: triples come from the classical (m, n) formulas, bricks from
//! an exhaustive edge scan, and the partition-counting law from the Stirling
//! recurrence. The only shared primitive is [`isqrt_exact`], which both sides
//! treat as the definition of "perfect square".

use crate::brick::EulerBrick;
use std::collections::BTreeSet;

/// Floor of the integer square root, pure integer Newton iteration.
pub fn isqrt_floor(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let bits = 128 - v.leading_zeros();
    let mut x = 1u128 << (bits / 2 + 1);
    loop {
        let y = (x + v / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Some(w) with w² = v when v is a perfect square, None otherwise. No
/// floating point takes part in the decision.
pub fn isqrt_exact(v: u128) -> Option<u128> {
    let w = isqrt_floor(v);
    (w * w == v).then_some(w)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All primitive triples with hypotenuse ≤ a_max via coprime (m, n) of
/// opposite parity, as (odd leg, even leg, hypotenuse).
pub fn classical_ppt_enum(a_max: u64) -> BTreeSet<(u64, u64, u64)> {
    let mut out = BTreeSet::new();
    let mut m = 2u64;
    while m * m + 1 <= a_max {
        for n in 1..m {
            if (m + n) % 2 == 1 && gcd(m, n) == 1 {
                let a = m * m + n * n;
                if a <= a_max {
                    out.insert((m * m - n * n, 2 * m * n, a));
                }
            }
        }
        m += 1;
    }
    out
}

/// Exhaustive scan for all integer bricks with edges x < y < z ≤ max_edge
/// whose three face diagonals are integers (common factors allowed).
///
/// Pair-driven: first collect, per edge, the sorted list of larger partners
/// forming a perfect-square sum, then intersect partner lists instead of
/// scanning all O(n³) triples.
pub fn brute_force_bricks(max_edge: u64) -> Vec<EulerBrick> {
    let n = max_edge as usize;
    let mut partners: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for p in 1..=max_edge {
        let p2 = (p as u128) * (p as u128);
        for q in (p + 1)..=max_edge {
            let q2 = (q as u128) * (q as u128);
            if isqrt_exact(p2 + q2).is_some() {
                partners[p as usize].push(q);
            }
        }
    }

    let mut bricks = Vec::new();
    for x in 1..=max_edge {
        let xs = &partners[x as usize];
        for (i, &y) in xs.iter().enumerate() {
            // z must partner both x and y; both lists are ascending
            let ys = &partners[y as usize];
            let (mut a, mut b) = (i + 1, 0usize);
            while a < xs.len() && b < ys.len() {
                match xs[a].cmp(&ys[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        let z = xs[a];
                        let brick = EulerBrick::from_edges(x, y, z)
                            .expect("pair scan guarantees square faces");
                        bricks.push(brick);
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
    }
    bricks
}

/// Stirling numbers of the second kind S(n, k) for 1 ≤ k ≤ n ≤ max_n,
/// from the recurrence S(n, k) = k·S(n−1, k) + S(n−1, k−1).
#[derive(Debug, Clone)]
pub struct StirlingTable {
    max_n: u32,
    rows: Vec<Vec<u64>>,
}

impl StirlingTable {
    pub fn new(max_n: u32) -> Self {
        assert!(max_n >= 1);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max_n as usize);
        rows.push(vec![1]); // S(1, 1)
        for n in 2..=max_n as usize {
            let prev = &rows[n - 2];
            let mut row = vec![0u64; n];
            for k in 1..=n {
                let carry_same = if k <= prev.len() { (k as u64) * prev[k - 1] } else { 0 };
                let carry_split = if k >= 2 { prev[k - 2] } else { 0 };
                row[k - 1] = carry_same + carry_split;
            }
            rows.push(row);
        }
        StirlingTable { max_n, rows }
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    /// S(n, k); zero outside 1 ≤ k ≤ n.
    pub fn get(&self, n: u32, k: u32) -> u64 {
        assert!(n >= 1 && n <= self.max_n, "n={n} outside table");
        if k < 1 || k > n {
            return 0;
        }
        self.rows[(n - 1) as usize][(k - 1) as usize]
    }
}

/// S(n,1) + S(n,2) from the recurrence table; asserts it equals 2^(n−1),
/// which is the count law for leg representations.
pub fn stirling_count_check(n: u32) -> u64 {
    assert!(n >= 1);
    let table = StirlingTable::new(n);
    let total = table.get(n, 1) + table.get(n, 2);
    assert_eq!(total, 1u64 << (n - 1), "Stirling count law failed at n={n}");
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_exact_examples() {
        assert_eq!(isqrt_exact(0), Some(0));
        assert_eq!(isqrt_exact(59536), Some(244));
        assert_eq!(isqrt_exact(261), None);
    }

    #[test]
    fn isqrt_floor_brackets_every_value() {
        for v in 0..100_000u128 {
            let w = isqrt_floor(v);
            assert!(w * w <= v);
            assert!((w + 1) * (w + 1) > v);
        }
        for r in [3u128, 1 << 20, 1 << 40, 123_456_789_012] {
            assert_eq!(isqrt_floor(r * r), r);
            assert_eq!(isqrt_floor(r * r - 1), r - 1);
            assert_eq!(isqrt_floor(r * r + 1), r);
            assert_eq!(isqrt_exact(r * r), Some(r));
            assert_eq!(isqrt_exact(r * r + 1), None);
        }
    }

    #[test]
    fn classical_enum_small_bounds() {
        let five: Vec<_> = classical_ppt_enum(5).into_iter().collect();
        assert_eq!(five, vec![(3, 4, 5)]);
        let t25 = classical_ppt_enum(25);
        let expect: BTreeSet<_> =
            [(3, 4, 5), (5, 12, 13), (15, 8, 17), (7, 24, 25)].into_iter().collect();
        assert_eq!(t25, expect);
        assert!(classical_ppt_enum(125).contains(&(117, 44, 125)));
    }

    #[test]
    fn brute_force_finds_the_minimal_brick() {
        let found = brute_force_bricks(250);
        let edges: Vec<_> = found.iter().map(|b| (b.x(), b.y(), b.z())).collect();
        assert_eq!(edges, vec![(44, 117, 240)]);

        let found = brute_force_bricks(300);
        let edges: Vec<_> = found.iter().map(|b| (b.x(), b.y(), b.z())).collect();
        assert_eq!(edges, vec![(44, 117, 240), (240, 252, 275)]);

        assert!(brute_force_bricks(100).is_empty());
    }

    #[test]
    fn stirling_recurrence_and_count_law() {
        let t = StirlingTable::new(10);
        assert_eq!(t.get(5, 3), 25);
        assert_eq!(t.get(6, 2), 31);
        assert_eq!(t.get(8, 2), 127);
        for n in 1..=10 {
            assert_eq!(t.get(n, 1), 1);
            assert_eq!(t.get(n, n), 1);
        }
        assert_eq!(stirling_count_check(1), 1);
        assert_eq!(stirling_count_check(2), 2);
        assert_eq!(stirling_count_check(3), 4);
        assert_eq!(stirling_count_check(20), 1 << 19);
    }
}
