//! Gnomons as arithmetic progressions of odd numbers.
//!
//! A gnomon of thickness T placed on a square of side b turns it into the
//! square of side b + T; its area is the sum of the T consecutive odd numbers
//! 2b+1, 2b+3, …, so a gnomon is fully described by an arithmetic progression
//! with common difference 2. The two gnomons of a primitive triple share
//! their last term 2a − 1; transformed gnomons preserve area while trading
//! thickness against the progression's mean.

use crate::error::{Error, Result, TransformObstacle};
use crate::factor::{narrow, sq, Factorization};
use crate::ppt::{GeneratingSquare, PrimitiveTriple};

/// An L-shaped area encoded as an arithmetic progression of odd numbers with
/// common difference 2.
///
/// Invariants: `first = middle − thickness + 1`, `last = middle + thickness − 1`,
/// `area = middle · thickness`, `first = 2·base + 1`. The mean of a step-2
/// progression is always an integer (`first + thickness − 1`), so `middle`
/// needs no fractional representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GnomonDescriptor {
    area: u128,
    thickness: u64,
    first: u64,
    middle: u64,
    last: u64,
    base: u64,
}

impl GnomonDescriptor {
    fn from_base_thickness(base: u64, thickness: u64) -> Self {
        debug_assert!(thickness >= 1);
        let first = 2 * base + 1;
        let middle = first + thickness - 1;
        let last = middle + thickness - 1;
        let area = (middle as u128) * (thickness as u128);
        GnomonDescriptor { area, thickness, first, middle, last, base }
    }

    /// Sum of the progression, i.e. the area of the L-shape.
    pub fn area(&self) -> u128 {
        self.area
    }

    /// Number of terms in the progression.
    pub fn thickness(&self) -> u64 {
        self.thickness
    }

    /// First (smallest) term.
    pub fn first(&self) -> u64 {
        self.first
    }

    /// Mean of the progression.
    pub fn middle(&self) -> u64 {
        self.middle
    }

    /// Last (largest) term.
    pub fn last(&self) -> u64 {
        self.last
    }

    /// Side of the square the gnomon is placed on.
    pub fn base(&self) -> u64 {
        self.base
    }

    /// Side of the square obtained after adding the gnomon.
    pub fn outer_side(&self) -> u64 {
        self.base + self.thickness
    }

    /// A base-0 gnomon is a full square rather than an L-shape.
    pub fn is_full_square(&self) -> bool {
        self.base == 0
    }

    /// The progression's terms, smallest first.
    pub fn terms(&self) -> impl Iterator<Item = u64> {
        let first = self.first;
        (0..self.thickness).map(move |i| first + 2 * i)
    }
}

/// The gnomon pair of one primitive triple: `g_y` has area y² and sits on the
/// square of x; `g_x` has area x² and sits on the square of y. Both end at
/// 2a − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectedGnomons {
    pub g_y: GnomonDescriptor,
    pub g_x: GnomonDescriptor,
}

/// Build the connected gnomon pair of a triple.
pub fn connected_gnomons(tr: &PrimitiveTriple) -> ConnectedGnomons {
    let gen = tr.gen();
    let (t, l) = (gen.t(), gen.l());
    let g_y = GnomonDescriptor::from_base_thickness(tr.x(), narrow(2 * sq(t), "2t^2"));
    let g_x = GnomonDescriptor::from_base_thickness(tr.y(), narrow(sq(l), "l^2"));
    debug_assert_eq!(g_y.area(), sq(tr.y()));
    debug_assert_eq!(g_x.area(), sq(tr.x()));
    debug_assert_eq!(g_y.last(), 2 * tr.a() - 1);
    debug_assert_eq!(g_x.last(), 2 * tr.a() - 1);
    ConnectedGnomons { g_y, g_x }
}

/// Which leg mapping to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapDirection {
    /// Odd leg to its paired even leg: ((l+2t)² − l²)/2 = 2t(l+t).
    XToY,
    /// Even leg to its paired odd leg: (l+t)² − t² = l(l+2t).
    YToX,
}

/// Maps one leg of the triple of `gen` to the other.
pub fn map_leg(gen: GeneratingSquare, direction: MapDirection) -> u64 {
    let (t, l) = (gen.t() as u128, gen.l() as u128);
    match direction {
        MapDirection::XToY => narrow(((l + 2 * t) * (l + 2 * t) - l * l) / 2, "x->y"),
        MapDirection::YToX => narrow((l + t) * (l + t) - t * t, "y->x"),
    }
}

/// Re-shapes an area into a gnomon of the requested thickness, or explains
/// why no such gnomon exists.
pub fn transform_gnomon(area: u128, new_thickness: u64) -> Result<GnomonDescriptor> {
    if area == 0 || new_thickness == 0 {
        return Err(Error::invalid(format!(
            "area and thickness must be positive (got area={area}, thickness={new_thickness})"
        )));
    }
    let not = |obstacle| Error::NotRepresentable {
        area: u64::try_from(area).unwrap_or(u64::MAX),
        thickness: new_thickness,
        obstacle,
    };
    let t = new_thickness as u128;
    if area % t != 0 {
        return Err(not(TransformObstacle::NonDivisor));
    }
    let s = area / t;
    if s < t {
        return Err(not(TransformObstacle::NegativeBase));
    }
    if (s - t) % 2 != 0 {
        return Err(not(TransformObstacle::Parity));
    }
    let base = narrow((s - t) / 2, "gnomon base");
    Ok(GnomonDescriptor::from_base_thickness(base, new_thickness))
}

/// All thicknesses T for which `transform_gnomon(area, T)` succeeds, ascending.
pub fn admissible_thicknesses(area: u64) -> Vec<u64> {
    Factorization::of(area)
        .divisors()
        .into_iter()
        .filter(|&t| {
            let s = area / t;
            s >= t && (s - t) % 2 == 0
        })
        .collect()
}

/// The gnomon of the k-scaled triple: area k²·A, thickness k·T, base k·b.
pub fn scale_gnomon(g: &GnomonDescriptor, k: u64) -> GnomonDescriptor {
    assert!(k >= 1, "scale factor must be positive");
    GnomonDescriptor::from_base_thickness(
        narrow(g.base as u128 * k as u128, "scaled base"),
        narrow(g.thickness as u128 * k as u128, "scaled thickness"),
    )
}

/// Renders the progression's terms space-separated, `per_line` terms per line.
pub fn format_terms(g: &GnomonDescriptor, per_line: usize) -> String {
    assert!(per_line >= 1);
    let mut out = String::new();
    for (i, term) in g.terms().enumerate() {
        if i > 0 {
            out.push(if i % per_line == 0 { '\n' } else { ' ' });
        }
        out.push_str(&term.to_string());
    }
    out.push('\n');
    out
}
