//! Ordered primitive Pythagorean triples via generating squares.
//!
//! Every primitive Pythagorean triple (PPT) corresponds to exactly one
//! coprime pair (t, l) with l odd; the square of side S = 2tl generates the
//! triple
//!
//! ```text
//! x = S + l²   (odd leg)
//! y = S + 2t²  (even leg)
//! a = S + l² + 2t²
//! ```
//!
//! Walking S = 2, 4, 6, … and, inside each S, the admissible t in increasing
//! order enumerates all PPTs exactly once. The block for a given S holds
//! 2^r triples, where r is the number of distinct odd primes of S.

use crate::error::{Error, Result};
use crate::factor::{narrow, sq, Factorization};
use num_integer::Integer;
use std::io::Write;

/// The coprime pair (t, l) with l odd; the generating square has side S = 2tl.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratingSquare {
    t: u64,
    l: u64,
}

impl GeneratingSquare {
    /// Validates t ≥ 1, l ≥ 1 odd, GCD(t, l) = 1.
    pub fn new(t: u64, l: u64) -> Result<Self> {
        if t == 0 || l == 0 {
            return Err(Error::invalid(format!("t and l must be positive (got t={t}, l={l})")));
        }
        if l % 2 == 0 {
            return Err(Error::invalid(format!("l must be odd (got l={l})")));
        }
        if t.gcd(&l) != 1 {
            return Err(Error::invalid(format!("t and l must be coprime (got t={t}, l={l})")));
        }
        Ok(GeneratingSquare { t, l })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// Side of the generating square, S = 2tl.
    pub fn side(&self) -> u64 {
        narrow(2 * (self.t as u128) * (self.l as u128), "S = 2tl")
    }
}

/// A primitive Pythagorean triple in canonical orientation (x odd, y even)
/// together with the generating square it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveTriple {
    x: u64,
    y: u64,
    a: u64,
    gen: GeneratingSquare,
}

impl PrimitiveTriple {
    /// Odd leg, x = S + l² = l(l + 2t).
    pub fn x(&self) -> u64 {
        self.x
    }

    /// Even leg, y = S + 2t² = 2t(l + t).
    pub fn y(&self) -> u64 {
        self.y
    }

    /// Hypotenuse, a = S + l² + 2t² = (l + t)² + t².
    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn gen(&self) -> GeneratingSquare {
        self.gen
    }
}

/// Construct the unique PPT of a generating square.
pub fn triple_from(gen: GeneratingSquare) -> PrimitiveTriple {
    let s = gen.side() as u128;
    let x = narrow(s + sq(gen.l), "x = S + l^2");
    let y = narrow(s + 2 * sq(gen.t), "y = S + 2t^2");
    let a = narrow(s + sq(gen.l) + 2 * sq(gen.t), "a = S + l^2 + 2t^2");
    debug_assert_eq!(sq(x) + sq(y), sq(a));
    PrimitiveTriple { x, y, a, gen }
}

/// Two-level position of a triple in the ordered table: `major` = S/2,
/// `minor` = 1-based position within the S block (rows sorted by t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalIndex {
    pub major: u64,
    pub minor: u64,
}

impl std::fmt::Display for OrdinalIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.major, self.minor)
    }
}

impl std::str::FromStr for OrdinalIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (major, minor) = s
            .split_once('.')
            .ok_or_else(|| Error::invalid(format!("ordinal index must be N.n (got {s:?})")))?;
        let major = major.parse().map_err(|_| Error::invalid(format!("bad ordinal {s:?}")))?;
        let minor = minor.parse().map_err(|_| Error::invalid(format!("bad ordinal {s:?}")))?;
        Ok(OrdinalIndex { major, minor })
    }
}

/// The classical parameter pair: m > n ≥ 1, coprime, opposite parity, with
/// y = 2mn, x = m² − n², a = m² + n².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MnParams {
    m: u64,
    n: u64,
}

impl MnParams {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if n == 0 || m <= n {
            return Err(Error::invalid(format!("need m > n >= 1 (got m={m}, n={n})")));
        }
        if m.gcd(&n) != 1 {
            return Err(Error::invalid(format!("m and n must be coprime (got m={m}, n={n})")));
        }
        if (m + n) % 2 == 0 {
            return Err(Error::invalid(format!(
                "m and n must have opposite parity (got m={m}, n={n})"
            )));
        }
        Ok(MnParams { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// m = l + t, n = t.
pub fn to_mn(gen: GeneratingSquare) -> MnParams {
    MnParams {
        m: gen.l + gen.t,
        n: gen.t,
    }
}

/// Inverse of [`to_mn`]: t = n, l = m − n. Valid MnParams always map to a
/// valid generating square (m − n is odd by the parity rule and
/// gcd(n, m − n) = gcd(n, m) = 1).
pub fn from_mn(mn: MnParams) -> GeneratingSquare {
    GeneratingSquare {
        t: mn.n,
        l: mn.m - mn.n,
    }
}

fn require_even_side(s: u64) -> Result<()> {
    if s < 2 || s % 2 != 0 {
        return Err(Error::invalid(format!("S must be an even number >= 2 (got {s})")));
    }
    Ok(())
}

/// All partitions of S = 2tl into the coprime pair (t, l) with l odd,
/// ordered by increasing t. The list has 2^r entries.
pub fn partitions_of(s: u64) -> Result<Vec<GeneratingSquare>> {
    require_even_side(s)?;
    let half = s / 2;
    let (_, odd_parts) = Factorization::of(half).two_power_and_odd_parts();

    // l takes any subset of the odd prime powers; t gets the rest plus every
    // factor of 2 (l must stay odd, and full prime powers move together to
    // keep t and l coprime).
    let mut out = Vec::with_capacity(1 << odd_parts.len());
    for mask in 0u32..(1 << odd_parts.len()) {
        let mut l = 1u64;
        for (i, &pk) in odd_parts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                l *= pk;
            }
        }
        let t = half / l;
        debug_assert_eq!(t * l, half);
        out.push(GeneratingSquare { t, l });
    }
    out.sort_unstable_by_key(|g| g.t);
    Ok(out)
}

/// L(S) = 2^r, the number of triples in the block of side S.
pub fn count_l(s: u64) -> Result<u64> {
    require_even_side(s)?;
    let r = Factorization::of(s).distinct_odd_primes();
    Ok(1u64 << r)
}

/// Iterator over all triples with S ≤ s_max in table order, with their
/// two-level ordinal indices.
pub fn enumerate_ordered(s_max: u64) -> Result<OrderedTriples> {
    require_even_side(s_max)?;
    Ok(OrderedTriples {
        s_max,
        next_s: 2,
        block: Vec::new(),
        block_pos: 0,
    })
}

pub struct OrderedTriples {
    s_max: u64,
    next_s: u64,
    block: Vec<GeneratingSquare>,
    block_pos: usize,
}

impl Iterator for OrderedTriples {
    type Item = (OrdinalIndex, PrimitiveTriple);

    fn next(&mut self) -> Option<Self::Item> {
        while self.block_pos >= self.block.len() {
            if self.next_s > self.s_max {
                return None;
            }
            self.block = partitions_of(self.next_s).expect("even S by construction");
            self.block_pos = 0;
            self.next_s += 2;
        }
        let gen = self.block[self.block_pos];
        self.block_pos += 1;
        let idx = OrdinalIndex {
            major: gen.side() / 2,
            minor: self.block_pos as u64,
        };
        Some((idx, triple_from(gen)))
    }
}

/// Position of a generating square in the ordered table.
pub fn ordinal_of(gen: GeneratingSquare) -> OrdinalIndex {
    let s = gen.side();
    let minor = partitions_of(s)
        .expect("side of a valid generating square is even")
        .iter()
        .position(|g| *g == gen)
        .expect("gen is one of its side's partitions") as u64
        + 1;
    OrdinalIndex { major: s / 2, minor }
}

/// All generating squares whose triple has even leg y: y = 2t(l + t).
/// Sorted by increasing S. Empty when y is not a PPT even leg.
pub fn representations_of_even_leg(y: u64) -> Result<Vec<GeneratingSquare>> {
    if y == 0 || y % 2 != 0 {
        return Err(Error::invalid(format!("even leg required (got {y})")));
    }
    let half = y / 2;
    let mut out = Vec::new();
    for t in Factorization::of(half).divisors() {
        let sum = half / t; // l + t
        if sum <= t {
            continue;
        }
        let l = sum - t;
        if l % 2 == 1 && t.gcd(&l) == 1 {
            out.push(GeneratingSquare { t, l });
        }
    }
    out.sort_unstable_by_key(|g| g.side());
    Ok(out)
}

/// All generating squares whose triple has odd leg x: x = l(l + 2t).
/// Sorted by increasing S. Empty when x is not a PPT odd leg (x = 1).
pub fn representations_of_odd_leg(x: u64) -> Result<Vec<GeneratingSquare>> {
    if x % 2 == 0 {
        return Err(Error::invalid(format!("odd leg required (got {x})")));
    }
    let mut out = Vec::new();
    for l in Factorization::of(x).divisors() {
        let co = x / l; // l + 2t
        if co <= l {
            // l = x/l would force t = 0; larger l repeats a smaller split.
            continue;
        }
        let t = (co - l) / 2;
        if t.gcd(&l) == 1 {
            out.push(GeneratingSquare { t, l });
        }
    }
    out.sort_unstable_by_key(|g| g.side());
    Ok(out)
}

/// Writes the ordered table for S ≤ s_max as CSV with header `N,n,S,t,l,x,y,a`.
pub fn write_table_csv<W: Write>(s_max: u64, mut w: W) -> Result<()> {
    writeln!(w, "N,n,S,t,l,x,y,a")?;
    for (idx, tr) in enumerate_ordered(s_max)? {
        let g = tr.gen();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            idx.major,
            idx.minor,
            g.side(),
            g.t(),
            g.l(),
            tr.x(),
            tr.y(),
            tr.a()
        )?;
    }
    Ok(())
}
