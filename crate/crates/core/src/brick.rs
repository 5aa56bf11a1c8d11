//! Euler bricks from primitive triples.
//!
//! For a row (x, y, a) of the triple table, every factorization y = k1·m1
//! (4 | k1, m1 ≠ 1) together with a representation of m1 as a leg yields a
//! candidate third edge z = k1·m3, where m3 is the leg paired with m1; the
//! odd leg does the same with odd k2. A z common to both candidate lists
//! closes the system
//!
//! ```text
//! x² + y² = a²,   y² + z² = b²,   x² + z² = c²
//! ```
//!
//! and the truncation data (k1, m1, m3, k2, m2, m4, q) is kept as metadata.

use crate::error::{Error, Result};
use crate::factor::{narrow, sq, Factorization};
use crate::gnomon::{map_leg, MapDirection};
use crate::oracle::isqrt_exact;
use crate::ppt::{ordinal_of, GeneratingSquare, OrdinalIndex, PrimitiveTriple};
use num_integer::Integer;
use std::collections::BTreeMap;

/// One way of truncating a leg: leg = k·m, with m a PPT leg paired to
/// `paired`, giving the candidate third edge z = k·paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegCandidate {
    /// Truncation coefficient (4 | k for the even leg, k odd for the odd leg).
    pub k: u64,
    /// Truncated leg, never 1.
    pub m: u64,
    /// Representation of m as a PPT leg.
    pub sub_gen: GeneratingSquare,
    /// The other leg of the triple containing m.
    pub paired: u64,
    /// Candidate third edge, k·paired.
    pub z: u64,
}

/// Truncation metadata of a constructed brick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrickMeta {
    pub k1: u64,
    pub m1: u64,
    pub m3: u64,
    pub k2: u64,
    pub m2: u64,
    pub m4: u64,
    pub q: u64,
    pub source: OrdinalIndex,
}

/// Integer edges (x, y, z) with integer face diagonals a (x,y face),
/// b (y,z face), c (x,z face). Only constructible when all three faces
/// check out exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerBrick {
    x: u64,
    y: u64,
    z: u64,
    a: u64,
    b: u64,
    c: u64,
    meta: Option<BrickMeta>,
}

impl EulerBrick {
    /// Validates the three faces by exact integer square root; None when any
    /// face diagonal is not an integer.
    pub fn from_edges(x: u64, y: u64, z: u64) -> Option<Self> {
        if x == 0 || y == 0 || z == 0 {
            return None;
        }
        let a = narrow(isqrt_exact(sq(x) + sq(y))?, "diagonal a");
        let b = narrow(isqrt_exact(sq(y) + sq(z))?, "diagonal b");
        let c = narrow(isqrt_exact(sq(x) + sq(z))?, "diagonal c");
        Some(EulerBrick { x, y, z, a, b, c, meta: None })
    }

    /// Attaches truncation metadata after checking it against the edges.
    pub fn with_meta(mut self, meta: BrickMeta) -> Result<Self> {
        let consistent = self.y == meta.k1.checked_mul(meta.m1).unwrap_or(0)
            && self.x == meta.k2.checked_mul(meta.m2).unwrap_or(0)
            && meta.m3 == meta.k2.checked_mul(meta.q).unwrap_or(0)
            && meta.m4 == meta.k1.checked_mul(meta.q).unwrap_or(0)
            && self.z as u128 == meta.k1 as u128 * meta.k2 as u128 * meta.q as u128
            && isqrt_exact(sq(meta.m1) + sq(meta.m3)).is_some()
            && isqrt_exact(sq(meta.m2) + sq(meta.m4)).is_some();
        if !consistent {
            return Err(Error::invalid(format!(
                "meta {meta:?} inconsistent with edges ({}, {}, {})",
                self.x, self.y, self.z
            )));
        }
        self.meta = Some(meta);
        Ok(self)
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn meta(&self) -> Option<&BrickMeta> {
        self.meta.as_ref()
    }

    /// Edges sorted ascending; the deduplication identity of a brick.
    pub fn sorted_edges(&self) -> [u64; 3] {
        let mut e = [self.x, self.y, self.z];
        e.sort_unstable();
        e
    }

    /// GCD(x, y, z) = 1.
    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).gcd(&self.z) == 1
    }

    pub fn max_edge(&self) -> u64 {
        self.x.max(self.y).max(self.z)
    }

    /// Re-checks all three face equations from scratch.
    pub fn validate(&self) -> bool {
        sq(self.x) + sq(self.y) == sq(self.a)
            && sq(self.y) + sq(self.z) == sq(self.b)
            && sq(self.x) + sq(self.z) == sq(self.c)
    }
}

fn candidates_for_leg(leg: u64, even_side: bool) -> Vec<LegCandidate> {
    let mut out = Vec::new();
    for k in Factorization::of(leg).divisors() {
        let keep = if even_side { k % 4 == 0 } else { k % 2 == 1 };
        if !keep {
            continue;
        }
        let m = leg / k;
        if m == 1 {
            continue;
        }
        let reps = if m % 2 == 1 {
            crate::ppt::representations_of_odd_leg(m)
        } else {
            crate::ppt::representations_of_even_leg(m)
        }
        .expect("parity matches the representation routine");
        for sub_gen in reps {
            let paired = if m % 2 == 1 {
                map_leg(sub_gen, MapDirection::XToY)
            } else {
                map_leg(sub_gen, MapDirection::YToX)
            };
            let z = narrow(k as u128 * paired as u128, "z = k * paired");
            out.push(LegCandidate { k, m, sub_gen, paired, z });
        }
    }
    out.sort_unstable_by_key(|c| (c.z, c.k, c.m));
    out.dedup();
    out
}

/// Third-edge candidates reachable from the even leg: y = k1·m1 with
/// 4 | k1, m1 ≠ 1. Sorted by z.
pub fn even_leg_candidates(y: u64) -> Result<Vec<LegCandidate>> {
    if y < 4 || y % 2 != 0 {
        return Err(Error::invalid(format!("even leg >= 4 required (got {y})")));
    }
    Ok(candidates_for_leg(y, true))
}

/// Third-edge candidates reachable from the odd leg: x = k2·m2 with k2 odd
/// (k2 = 1 included). Sorted by z.
pub fn odd_leg_candidates(x: u64) -> Result<Vec<LegCandidate>> {
    if x % 2 == 0 {
        return Err(Error::invalid(format!("odd leg required (got {x})")));
    }
    Ok(candidates_for_leg(x, false))
}

/// All Euler bricks whose (x, y) face is the given triple: intersects the
/// even- and odd-leg candidate lists on z. Deduplicated, ascending in z.
///
/// Every emitted brick is revalidated against all three face equations, has
/// even z, and carries metadata satisfying the matching conditions
/// GCD(m3, x) = k2, GCD(m4, y) = k1, m3/k2 = m4/k1 = q.
pub fn build_bricks_for(tr: &PrimitiveTriple) -> Vec<EulerBrick> {
    let evens = even_leg_candidates(tr.y()).expect("even leg of a PPT is >= 4");
    let odds = odd_leg_candidates(tr.x()).expect("odd leg of a PPT is odd");

    let mut odd_by_z: BTreeMap<u64, LegCandidate> = BTreeMap::new();
    for o in odds {
        odd_by_z.entry(o.z).or_insert(o); // first in (z, k, m) order wins
    }

    let source = ordinal_of(tr.gen());
    let mut built: BTreeMap<u64, EulerBrick> = BTreeMap::new();
    for e in evens {
        let Some(o) = odd_by_z.get(&e.z) else { continue };
        if built.contains_key(&e.z) {
            continue;
        }
        let z = e.z;
        assert_eq!(z % 2, 0, "constructed z must be even (z={z})");

        // matching conditions hold for every intersection; check, don't trust
        let (k1, m1, m3) = (e.k, e.m, e.paired);
        let (k2, m2, m4) = (o.k, o.m, o.paired);
        assert_eq!(m3 % k2, 0, "k2 must divide m3");
        let q = m3 / k2;
        assert_eq!(m4, k1 * q, "m4/k1 must equal m3/k2");
        assert_eq!(m3.gcd(&tr.x()), k2, "GCD(m3, x) = k2");
        assert_eq!(m4.gcd(&tr.y()), k1, "GCD(m4, y) = k1");

        let brick = EulerBrick::from_edges(tr.x(), tr.y(), z)
            .expect("candidate intersection guarantees square faces")
            .with_meta(BrickMeta { k1, m1, m3, k2, m2, m4, q, source })
            .expect("meta built from the matched pair");
        assert!(brick.validate());
        built.insert(z, brick);
    }
    built.into_values().collect()
}

/// The alternative brick of a constructed brick: (q·x, q·y, m1·m2),
/// revalidated from scratch. Requires metadata.
pub fn alternative_brick(brick: &EulerBrick) -> Result<EulerBrick> {
    let meta = brick
        .meta()
        .ok_or_else(|| Error::invalid("alternative brick requires construction metadata"))?;
    let x = narrow(meta.q as u128 * brick.x() as u128, "q*x");
    let y = narrow(meta.q as u128 * brick.y() as u128, "q*y");
    let z = narrow(meta.m1 as u128 * meta.m2 as u128, "m1*m2");
    let alt = EulerBrick::from_edges(x, y, z)
        .expect("alternative construction always yields square faces");
    debug_assert_eq!(alt.a(), meta.q * brick.a());
    Ok(alt)
}

/// One member of the parametric family: two faces are exact by construction,
/// the third is tested and reported, not assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyBrick {
    pub r: u64,
    pub leg_a: u64,
    pub leg_b: u64,
    pub z: u64,
    pub diag_a: u64,
    pub diag_b: u64,
    /// Whether leg_a² + leg_b² is a perfect square.
    pub third_face_square: bool,
}

/// Family member for parameter r: legs (2r+1)(r+1)(2r−1) and r(2r+1)(2r+3)
/// share the third edge z = 4r(r+1), with k1 = r+1, k2 = r, q = 4.
pub fn parametric_family(r: u64) -> FamilyBrick {
    assert!(r >= 1, "family parameter must be positive");
    let (r1, u) = (r + 1, 2 * r + 1);
    let leg_a = narrow(u as u128 * r1 as u128 * (2 * r - 1) as u128, "family leg_a");
    let leg_b = narrow(r as u128 * u as u128 * (2 * r + 3) as u128, "family leg_b");
    let z = narrow(4 * r as u128 * r1 as u128, "family z");
    let diag_a = narrow(r1 as u128 * (4 * sq(r) + 1), "family diag_a");
    let diag_b = narrow(r as u128 * (4 * sq(r) + 8 * r as u128 + 5), "family diag_b");
    assert_eq!(sq(leg_a) + sq(z), sq(diag_a));
    assert_eq!(sq(leg_b) + sq(z), sq(diag_b));

    // matching conditions with m3 = 4r, m4 = 4(r+1)
    let (m3, m4) = (4 * r, 4 * r1);
    assert_eq!(m3.gcd(&leg_b), r);
    assert_eq!(m4.gcd(&leg_a), r1);
    assert_eq!(m3 / r, 4);
    assert_eq!(m4 / r1, 4);

    let third_face_square = isqrt_exact(sq(leg_a) + sq(leg_b)).is_some();
    FamilyBrick { r, leg_a, leg_b, z, diag_a, diag_b, third_face_square }
}

/// The reduced alternative of the family member: legs 4(r+1)(2r−1) and
/// 4r(2r+3) on z = (2r−1)(2r+1)(2r+3).
pub fn family_alternative(r: u64) -> FamilyBrick {
    assert!(r >= 1, "family parameter must be positive");
    let leg_a = narrow(4 * (r + 1) as u128 * (2 * r - 1) as u128, "alt leg_a");
    let leg_b = narrow(4 * r as u128 * (2 * r + 3) as u128, "alt leg_b");
    let z = narrow(
        (2 * r - 1) as u128 * (2 * r + 1) as u128 * (2 * r + 3) as u128,
        "alt z",
    );
    let diag_a = narrow(
        isqrt_exact(sq(leg_a) + sq(z)).expect("alternative face (leg_a, z) is exact"),
        "alt diag_a",
    );
    let diag_b = narrow(
        isqrt_exact(sq(leg_b) + sq(z)).expect("alternative face (leg_b, z) is exact"),
        "alt diag_b",
    );
    let third_face_square = isqrt_exact(sq(leg_a) + sq(leg_b)).is_some();
    FamilyBrick { r, leg_a, leg_b, z, diag_a, diag_b, third_face_square }
}
