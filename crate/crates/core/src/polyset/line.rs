//! Canonical form for 1-dimensional sets.
//!
//! Every semilinear subset of ℝ is a finite disjoint union of points and
//! open intervals (the unbounded rays and the full line count as open
//! intervals with a missing endpoint). `canonicalize_line` produces the
//! coarsest such decomposition: `(a,b) ∪ {b} ∪ (b,c)` with all three
//! present becomes `(a,c)`, but an included endpoint next to only one of
//! its flanking intervals stays a separate `Point` piece, because
//! `[0,1)` and `(0,1)` have different Euler measures.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{midpoint, rat_int, Rat};

use super::{Formula, LinearForm, PolyhedralSet, Relation};

/// One piece of a canonical line: an isolated point or an open interval.
/// `None` endpoints mean -∞ (for `lo`) and +∞ (for `hi`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinePiece {
    Point(Rat),
    Interval { lo: Option<Rat>, hi: Option<Rat> },
}

impl LinePiece {
    /// A rational point inside the piece: the point itself, the midpoint of
    /// a bounded interval, lo+1 / hi-1 for rays, 0 for the full line.
    pub fn sample_point(&self) -> Rat {
        match self {
            LinePiece::Point(c) => c.clone(),
            LinePiece::Interval { lo: Some(a), hi: Some(b) } => midpoint(a, b),
            LinePiece::Interval { lo: Some(a), hi: None } => a + rat_int(1),
            LinePiece::Interval { lo: None, hi: Some(b) } => b - rat_int(1),
            LinePiece::Interval { lo: None, hi: None } => Rat::zero(),
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            LinePiece::Point(c) => c == x,
            LinePiece::Interval { lo, hi } => {
                lo.as_ref().map_or(true, |a| a < x) && hi.as_ref().map_or(true, |b| x < b)
            }
        }
    }
}

/// Ordered, pairwise-disjoint pieces of a subset of ℝ in coarsest form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalLine {
    pieces: Vec<LinePiece>,
}

impl CanonicalLine {
    pub fn empty() -> Self {
        CanonicalLine { pieces: Vec::new() }
    }

    /// Validates ordering, disjointness, and coarseness of `pieces`.
    pub fn from_pieces(pieces: Vec<LinePiece>) -> Result<Self> {
        // prev_end: last covered coordinate and whether it was included.
        let mut prev_end: Option<(Rat, bool)> = None;
        for (i, piece) in pieces.iter().enumerate() {
            match piece {
                LinePiece::Point(c) => {
                    if let Some((e, included)) = &prev_end {
                        let ok = c > e || (c == e && !included);
                        if !ok {
                            return Err(Error::Invalid(format!("piece {i} overlaps its predecessor")));
                        }
                    }
                    prev_end = Some((c.clone(), true));
                }
                LinePiece::Interval { lo, hi } => {
                    if let (Some(a), Some(b)) = (lo, hi) {
                        if a >= b {
                            return Err(Error::Invalid(format!("piece {i} is an empty interval")));
                        }
                    }
                    match (lo, &prev_end) {
                        (None, Some(_)) => {
                            return Err(Error::Invalid(format!("piece {i} extends to -infinity but is not first")))
                        }
                        (Some(a), Some((e, _))) => {
                            // Touching is fine: (a,b),(b,c) with b excluded, or {b},(b,c).
                            if a < e {
                                return Err(Error::Invalid(format!("piece {i} overlaps its predecessor")));
                            }
                            // Coarseness: interval, included point, interval all touching
                            // should have been merged.
                            if i >= 2 && a == e {
                                if let (LinePiece::Interval { hi: Some(h), .. }, LinePiece::Point(p)) =
                                    (&pieces[i - 2], &pieces[i - 1])
                                {
                                    if h == p && p == a {
                                        return Err(Error::Invalid(format!(
                                            "pieces {} ..= {i} should merge into one interval",
                                            i - 2
                                        )));
                                    }
                                }
                            }
                        }
                        _ => {}
                    }
                    match hi {
                        Some(b) => prev_end = Some((b.clone(), false)),
                        None => {
                            if i + 1 != pieces.len() {
                                return Err(Error::Invalid(format!(
                                    "piece {i} extends to +infinity but is not last"
                                )));
                            }
                            prev_end = None;
                        }
                    }
                }
            }
        }
        Ok(CanonicalLine { pieces })
    }

    pub fn pieces(&self) -> &[LinePiece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn point_count(&self) -> usize {
        self.pieces.iter().filter(|p| matches!(p, LinePiece::Point(_))).count()
    }

    pub fn interval_count(&self) -> usize {
        self.pieces.len() - self.point_count()
    }

    /// The same set as a 1-dimensional `PolyhedralSet`.
    pub fn to_set(&self) -> PolyhedralSet {
        let shifted = |c: &Rat| LinearForm::new(vec![rat_int(1)], -c.clone());
        let mut parts = Vec::new();
        for piece in &self.pieces {
            match piece {
                LinePiece::Point(c) => parts.push(Formula::atom(shifted(c), Relation::Eq)),
                LinePiece::Interval { lo, hi } => {
                    let mut conj = Vec::new();
                    if let Some(a) = lo {
                        // a < x, i.e. a - x < 0.
                        conj.push(Formula::atom(
                            LinearForm::new(vec![rat_int(-1)], a.clone()),
                            Relation::Lt,
                        ));
                    }
                    if let Some(b) = hi {
                        conj.push(Formula::atom(shifted(b), Relation::Lt));
                    }
                    parts.push(if conj.is_empty() {
                        // The full line; keep a vacuous atom-free conjunct.
                        Formula::True
                    } else {
                        Formula::and(conj)
                    });
                }
            }
        }
        let formula = if parts.is_empty() { Formula::False } else { Formula::or(parts) };
        PolyhedralSet { dim: 1, formula }
    }
}

/// Decomposes a 1-dimensional set into its canonical pieces.
///
/// Collects the roots of all non-constant atom forms as candidate
/// breakpoints, tests membership of each breakpoint and of a sample point
/// in every complementary interval, then merges `(a,b) ∪ {b} ∪ (b,c)`
/// runs whenever all three parts are present.
pub fn canonicalize_line(set: &PolyhedralSet) -> Result<CanonicalLine> {
    if set.dim != 1 {
        return Err(Error::NotALine { found: set.dim });
    }
    let mut breaks: Vec<Rat> = Vec::new();
    for h in set.hyperplanes() {
        // Normalized 1-d hyperplane is x + c = 0.
        breaks.push(-h.constant);
    }
    breaks.sort();
    breaks.dedup();

    if breaks.is_empty() {
        let pieces = if set.contains(&[Rat::zero()]) {
            vec![LinePiece::Interval { lo: None, hi: None }]
        } else {
            Vec::new()
        };
        return Ok(CanonicalLine { pieces });
    }

    // Alternating candidate pieces: ray, point, interval, ..., point, ray.
    let mut candidates: Vec<LinePiece> = Vec::new();
    candidates.push(LinePiece::Interval { lo: None, hi: Some(breaks[0].clone()) });
    for (i, b) in breaks.iter().enumerate() {
        candidates.push(LinePiece::Point(b.clone()));
        let hi = breaks.get(i + 1).cloned();
        candidates.push(LinePiece::Interval { lo: Some(b.clone()), hi });
    }
    let included: Vec<bool> =
        candidates.iter().map(|p| set.contains(&[p.sample_point()])).collect();

    let mut pieces = Vec::new();
    let mut i = 0;
    while i < candidates.len() {
        if !included[i] {
            i += 1;
            continue;
        }
        match &candidates[i] {
            LinePiece::Point(c) => {
                pieces.push(LinePiece::Point(c.clone()));
                i += 1;
            }
            LinePiece::Interval { lo, .. } => {
                let lo = lo.clone();
                // Absorb point+interval pairs while both are included.
                let mut j = i;
                while j + 2 < candidates.len() && included[j + 1] && included[j + 2] {
                    j += 2;
                }
                let hi = match &candidates[j] {
                    LinePiece::Interval { hi, .. } => hi.clone(),
                    _ => unreachable!("run ends on an interval"),
                };
                pieces.push(LinePiece::Interval { lo, hi });
                i = j + 1;
            }
        }
    }
    Ok(CanonicalLine { pieces })
}
