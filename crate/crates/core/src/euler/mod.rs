//! Euler measure by fiber recursion, and Euler integration.
//!
//! The measure χ here is the finitely additive valuation on semilinear
//! sets fixed by χ({pt}) = 1 and χ(open interval) = -1, where rays and
//! the whole line count as open intervals too. It is deliberately not a
//! homotopy invariant: [0,1], [0,1) and (0,1) measure 1, 0 and -1. That
//! failure is the point, because it is what makes χ additive over the
//! pieces of a partition and hence an integrator.
//!
//! In dimension n+1 the measure is defined inductively: fiber the set
//! over its last coordinate, measure each fiber in dimension n, and
//! integrate the resulting step function t ↦ χ(fiber at t) against χ on
//! the line. That function is piecewise constant, changing only where
//! the fibers change combinatorially. [`critical_values`] returns a
//! finite superset of the change points read off the constraint
//! hyperplanes; over-approximating is harmless since the line integral
//! is invariant under refining its partition.
//!
//! A second, independent engine computes the same measure by cell
//! enumeration over the hyperplane arrangement; it lives in [`cells`].
//! The test suite holds the two engines to exact agreement.

pub mod cells;

pub use cells::{arrangement_decompose, euler_measure_cells, FPolynomial};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyset::{canonicalize_line, Formula, LinePiece, PolyhedralSet};
use crate::rat::{Int, Rat};

/// χ of a canonical 1-dimensional set: +1 per point, -1 per open
/// interval, bounded or not.
pub fn chi_line(line: &crate::polyset::CanonicalLine) -> Int {
    Int::from(line.point_count() as i64) - Int::from(line.interval_count() as i64)
}

/// Integral ∫ f dχ of a step function on the line, given as a partition
/// of ℝ into points and open intervals with an integer value on each.
///
/// The value is Σ value over point pieces minus Σ value over interval
/// pieces, which is Σ_k k·χ(f⁻¹(k)) when f takes the value k there.
pub fn euler_integral_line(pieces: &[(LinePiece, Int)]) -> Result<Int> {
    check_line_partition(pieces)?;
    let mut acc = Int::zero();
    for (piece, value) in pieces {
        match piece {
            LinePiece::Point(_) => acc += value,
            LinePiece::Interval { .. } => acc -= value,
        }
    }
    Ok(acc)
}

// A partition of ℝ alternates interval, point, interval, ..., starting
// from -∞ and ending at +∞, with matching endpoints throughout.
fn check_line_partition(pieces: &[(LinePiece, Int)]) -> Result<()> {
    let fail = |i: usize, what: &str| Err(Error::BadPartition(format!("piece {i}: {what}")));
    if pieces.is_empty() {
        return Err(Error::BadPartition("no pieces".to_string()));
    }
    let mut cursor: Option<Rat> = None;
    for (i, (piece, _)) in pieces.iter().enumerate() {
        if i % 2 == 0 {
            let LinePiece::Interval { lo, hi } = piece else {
                return fail(i, "expected an interval");
            };
            match (i == 0, lo, &cursor) {
                (true, None, _) => {}
                (true, Some(_), _) => return fail(i, "first interval must start at -infinity"),
                (false, Some(a), Some(c)) if a == c => {}
                (false, _, _) => return fail(i, "interval must start at the preceding point"),
            }
            match hi {
                Some(b) => {
                    if lo.as_ref().is_some_and(|a| a >= b) {
                        return fail(i, "interval is empty");
                    }
                    if i + 1 == pieces.len() {
                        return fail(i, "last interval must extend to +infinity");
                    }
                    cursor = Some(b.clone());
                }
                None => {
                    if i + 1 != pieces.len() {
                        return fail(i, "interval to +infinity must come last");
                    }
                }
            }
        } else {
            let LinePiece::Point(p) = piece else {
                return fail(i, "expected a point");
            };
            if cursor.as_ref() != Some(p) {
                return fail(i, "point must sit at the preceding interval's end");
            }
        }
    }
    if pieces.len() % 2 == 0 {
        return Err(Error::BadPartition("pieces stop short of +infinity".to_string()));
    }
    Ok(())
}

/// Candidate breakpoints of t ↦ χ(fiber at t) over the last coordinate.
///
/// Every subset of at most `dim` of the set's distinct hyperplanes is
/// intersected exactly; when the flat is nonempty and the last coordinate
/// is constant on it (the last unit vector lies in the row span), that
/// constant is a candidate. The fiber can only change combinatorially at
/// such values, and extra candidates merely refine the line partition.
///
/// The subsets are walked as a tree sharing one augmented echelon basis,
/// which prunes without changing the result: an inconsistent equation
/// stays inconsistent in every superset, a dependent equation leaves the
/// flat of a smaller subset unchanged, and once the last coordinate is
/// pinned on a flat every consistent extension pins it to the same value.
pub fn critical_values(set: &PolyhedralSet) -> Vec<Rat> {
    assert!(set.dim >= 2, "critical values need at least two coordinates");
    let hyperplanes = set.simplified().hyperplanes();
    let d = set.dim;
    // Augmented rows [a | b] encode the equations a.x = b.
    let rows: Vec<Vec<Rat>> = hyperplanes
        .iter()
        .map(|h| {
            let mut row = h.coeffs.clone();
            row.push(-h.constant.clone());
            row
        })
        .collect();
    let mut search = FlatSearch { dim: d, echelon: Vec::new(), pivots: Vec::new(), values: Vec::new() };
    search.explore(&rows, 0);
    search.values.sort();
    search.values.dedup();
    search.values
}

// Depth-first walk over independent consistent subsets of the hyperplane
// equations, with the rows seen so far kept as a pivot-normalized echelon
// basis. Independent subsets have at most dim rows, so the recursion
// visits the same flats as enumerating all subsets of size up to dim.
struct FlatSearch {
    dim: usize,
    echelon: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    values: Vec<Rat>,
}

impl FlatSearch {
    // Forward-reduces an augmented row against the basis in place.
    fn reduce(&self, row: &mut [Rat]) {
        for (base, &p) in self.echelon.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(base.iter()) {
                *x = &*x - &(&f * y);
            }
        }
    }

    fn explore(&mut self, rows: &[Vec<Rat>], start: usize) {
        for i in start..rows.len() {
            let mut row = rows[i].clone();
            self.reduce(&mut row);
            let Some(p) = row[..self.dim].iter().position(|c| !c.is_zero()) else {
                // Coefficients cancelled: either the equation already held
                // on the current flat (a smaller subset reaches the same
                // flat) or it contradicts it (as it does in every
                // superset). Neither branch can contribute a new value.
                continue;
            };
            let lead = row[p].clone();
            if !lead.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &lead;
                }
            }
            self.echelon.push(row);
            self.pivots.push(p);
            let mut probe = vec![Rat::zero(); self.dim + 1];
            probe[self.dim - 1] = Rat::one();
            self.reduce(&mut probe);
            if probe[..self.dim].iter().all(Zero::is_zero) {
                // e_last = y.A for the reduction combination y, so the
                // last coordinate equals y.b everywhere on the flat, and
                // on every nonempty sub-flat as well: harvest and prune.
                self.values.push(-probe[self.dim].clone());
            } else {
                self.explore(rows, i + 1);
            }
            self.echelon.pop();
            self.pivots.pop();
        }
    }
}

/// The partition of ℝ cut by a sorted list of distinct values:
/// complementary open intervals interleaved with the points themselves.
fn partition_from_values(values: &[Rat]) -> Vec<LinePiece> {
    let Some(first) = values.first() else {
        return vec![LinePiece::Interval { lo: None, hi: None }];
    };
    let mut pieces = vec![LinePiece::Interval { lo: None, hi: Some(first.clone()) }];
    for (i, v) in values.iter().enumerate() {
        pieces.push(LinePiece::Point(v.clone()));
        pieces.push(LinePiece::Interval { lo: Some(v.clone()), hi: values.get(i + 1).cloned() });
    }
    pieces
}

/// χ(ℝ^d) = (-1)^d.
fn chi_whole_space(dim: usize) -> Int {
    if dim % 2 == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

/// Euler measure by the fiber recursion.
///
/// Dimension 0 is a point whose measure is its membership; dimension 1
/// goes through the canonical line form; above that, the set is fibered
/// over the last coordinate at the critical-value partition and the
/// fiber measures are integrated along the line.
pub fn euler_measure_fiber(set: &PolyhedralSet) -> Int {
    let s = set.simplified();
    match &s.formula {
        Formula::False => return Int::zero(),
        Formula::True => return chi_whole_space(s.dim),
        _ => {}
    }
    match s.dim {
        0 => Int::from(s.contains(&[]) as i64),
        1 => chi_line(&canonicalize_line(&s).expect("dimension is 1")),
        _ => {
            let values = critical_values(&s);
            let weighted: Vec<(LinePiece, Int)> = partition_from_values(&values)
                .into_iter()
                .map(|piece| {
                    let fiber = s.substitute_last(&piece.sample_point());
                    let chi = euler_measure_fiber(&fiber);
                    (piece, chi)
                })
                .collect();
            euler_integral_line(&weighted).expect("partition built from sorted values")
        }
    }
}

/// An integer-valued function on ℝ^n whose level sets are semilinear,
/// stored as a finite list of (value, region) pieces.
///
/// The regions must partition the ambient space: pairwise disjoint and
/// jointly covering, with explicit regions carrying the value 0. Both
/// conditions are enforced exactly at construction by emptiness checks
/// on the induced arrangements.
#[derive(Debug, Clone)]
pub struct ConstructibleFunction {
    ambient_dim: usize,
    pieces: Vec<(Int, PolyhedralSet)>,
}

impl ConstructibleFunction {
    pub fn new(ambient_dim: usize, pieces: Vec<(Int, PolyhedralSet)>) -> Result<Self> {
        for (_, region) in &pieces {
            if region.dim != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: region.dim });
            }
        }
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let overlap = pieces[i].1.intersection(&pieces[j].1)?;
                if let Some(p) = cells::member_witness(&overlap) {
                    return Err(Error::BadPartition(format!(
                        "regions {i} and {j} overlap at ({})",
                        format_point(&p)
                    )));
                }
            }
        }
        let mut uncovered = PolyhedralSet::whole_space(ambient_dim);
        for (_, region) in &pieces {
            uncovered = uncovered.difference(region)?;
        }
        if let Some(p) = cells::member_witness(&uncovered) {
            return Err(Error::BadPartition(format!(
                "regions do not cover the space: ({}) is missed",
                format_point(&p)
            )));
        }
        Ok(ConstructibleFunction { ambient_dim, pieces })
    }

    /// The indicator 1_S, with the complement carrying 0 explicitly.
    pub fn indicator(set: &PolyhedralSet) -> Self {
        ConstructibleFunction {
            ambient_dim: set.dim,
            pieces: vec![(Int::one(), set.clone()), (Int::zero(), set.complement())],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pieces(&self) -> &[(Int, PolyhedralSet)] {
        &self.pieces
    }

    pub fn value_at(&self, point: &[Rat]) -> Int {
        for (value, region) in &self.pieces {
            if region.contains(point) {
                return value.clone();
            }
        }
        unreachable!("regions cover the space");
    }

    /// The same function with coordinates permuted (axis i goes to
    /// perm[i]); a bijection of the domain, so still a partition.
    pub fn permute_coords(&self, perm: &[usize]) -> Self {
        ConstructibleFunction {
            ambient_dim: self.ambient_dim,
            pieces: self
                .pieces
                .iter()
                .map(|(v, region)| (v.clone(), region.permute_coords(perm)))
                .collect(),
        }
    }

    // The fiber function on ℝ^(n-1) at last coordinate = value. Fibers of
    // a partition partition the fiber space, so no re-validation.
    fn fiber_last(&self, value: &Rat) -> Self {
        ConstructibleFunction {
            ambient_dim: self.ambient_dim - 1,
            pieces: self
                .pieces
                .iter()
                .map(|(v, region)| (v.clone(), region.substitute_last(value)))
                .collect(),
        }
    }
}

fn format_point(p: &[Rat]) -> String {
    p.iter().map(crate::rat::format_rat).collect::<Vec<_>>().join(", ")
}

/// ∫ f dχ = Σ value · χ(region) over the pieces of f.
pub fn euler_integral(f: &ConstructibleFunction) -> Int {
    let mut acc = Int::zero();
    for (value, region) in f.pieces() {
        if !value.is_zero() {
            acc += value * euler_measure_fiber(region);
        }
    }
    acc
}

/// ∫ f dχ computed as an iterated integral, innermost axis last: the
/// line partition of the last coordinate is refined against every
/// region, each fiber function is integrated one dimension down, and
/// the results are integrated along the line.
///
/// Agreement with [`euler_integral`] in every coordinate order is the
/// Fubini property of the measure.
pub fn euler_integral_iterated(f: &ConstructibleFunction) -> Int {
    if f.ambient_dim() == 0 {
        for (value, region) in f.pieces() {
            if region.contains(&[]) {
                return value.clone();
            }
        }
        unreachable!("regions cover the point");
    }
    let mut values: Vec<Rat> = Vec::new();
    for (_, region) in f.pieces() {
        let s = region.simplified();
        match &s.formula {
            Formula::True | Formula::False => continue,
            _ => {}
        }
        if s.dim == 1 {
            values.extend(s.hyperplanes().into_iter().map(|h| -h.constant));
        } else {
            values.extend(critical_values(&s));
        }
    }
    values.sort();
    values.dedup();
    let weighted: Vec<(LinePiece, Int)> = partition_from_values(&values)
        .into_iter()
        .map(|piece| {
            let inner = euler_integral_iterated(&f.fiber_last(&piece.sample_point()));
            (piece, inner)
        })
        .collect();
    euler_integral_line(&weighted).expect("partition built from sorted values")
}
