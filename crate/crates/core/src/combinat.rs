//! Combinatorics over a polyhedral set of "points".
//!
//! The families here all instantiate one mechanism: a collection of
//! finite subsets of a polyhedral set P stratifies into polyhedral
//! pieces, and the signed count of strata behaves as if P had χ(P)
//! elements, whether or not that number is a nonnegative integer. So
//! ordered selections obey the binomial identity χ(P choose k) =
//! C(χ(P), k), proper colorings obey the chromatic polynomial at
//! q = χ(P), and fabulous subsets are counted by Fibonacci numbers of
//! possibly negative index.
//!
//! The generating-series members of the family (subsets of an interval,
//! pairs of subsets, subsets of fixed χ) are graded by their number of
//! breakpoints; a stratum with k breakpoints is an open k-simplex and
//! weighs (-1)^k. Those series live in [`crate::series`] types; this
//! module builds the specific ones and the word enumerations behind
//! their coefficients.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyset::{CanonicalLine, Formula, LinePiece, LinearForm, PolyhedralSet, Relation};
use crate::rat::{rat_int, Int, Rat};
use crate::series::{Polynomial, RationalFunction};

/// Finite simple graph on vertices 0..n_vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    // normalized to (min, max), sorted, distinct
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range
    /// endpoints. Edge order and orientation are normalized away.
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) out of range for {n_vertices} vertices"
                )));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        let distinct = norm.len();
        norm.dedup();
        if norm.len() != distinct {
            return Err(Error::Invalid("duplicate edge".to_string()));
        }
        Ok(Graph { n_vertices, edges: norm })
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph { n_vertices: n, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Chromatic polynomial of the graph, in the variable of [`Polynomial`],
/// by deletion and contraction: P(G) = P(G - e) - P(G / e), and qⁿ once
/// no edges remain. At a positive integer q it counts proper colorings;
/// the coloring theorem evaluates it at χ(P) instead.
pub fn chromatic_polynomial(g: &Graph) -> Polynomial {
    let Some(&(u, v)) = g.edges.first() else {
        return Polynomial::t().pow(g.n_vertices);
    };
    let deleted = Graph { n_vertices: g.n_vertices, edges: g.edges[1..].to_vec() };
    // Contract v into u, relabel vertices past v down by one, and drop
    // the loops and duplicates this creates.
    let relabel = |w: usize| {
        let w = if w == v { u } else { w };
        if w > v {
            w - 1
        } else {
            w
        }
    };
    let mut contracted_edges: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in &g.edges[1..] {
        let (a, b) = (relabel(a), relabel(b));
        if a != b {
            contracted_edges.push((a.min(b), a.max(b)));
        }
    }
    contracted_edges.sort_unstable();
    contracted_edges.dedup();
    let contracted = Graph { n_vertices: g.n_vertices - 1, edges: contracted_edges };
    &chromatic_polynomial(&deleted) - &chromatic_polynomial(&contracted)
}

// The form (block a, coordinate c) - (block b, coordinate c) inside
// ℝ^total, blocks being consecutive runs of d coordinates.
fn block_difference(total: usize, d: usize, a: usize, b: usize, c: usize) -> LinearForm {
    let mut coeffs = vec![Rat::zero(); total];
    coeffs[a * d + c] = Rat::one();
    coeffs[b * d + c] = -Rat::one();
    LinearForm::new(coeffs, Rat::zero())
}

// x⁽ᵃ⁾ <_lex x⁽ᵇ⁾, expanded: some coordinate strictly increases while
// every earlier one agrees.
fn lex_less(total: usize, d: usize, a: usize, b: usize) -> Formula {
    let mut cases = Vec::with_capacity(d);
    for c in 0..d {
        let mut clause: Vec<Formula> = (0..c)
            .map(|j| Formula::atom(block_difference(total, d, a, b, j), Relation::Eq))
            .collect();
        clause.push(Formula::atom(block_difference(total, d, a, b, c), Relation::Lt));
        cases.push(Formula::and(clause));
    }
    Formula::or(cases)
}

/// The set of k-element subsets of P in lexicographic presentation: k
/// blocks of P.dim coordinates, each in P, in strictly increasing
/// lexicographic order. Ordering the blocks picks one representative per
/// subset, so χ(choose_set(P, k)) = C(χ(P), k) as an [`IntegerBinomial`].
/// For k = 0 the result is the one-point space ℝ⁰.
pub fn choose_set(p: &PolyhedralSet, k: usize) -> PolyhedralSet {
    let d = p.dim;
    let total = k * d;
    let mut blocks = PolyhedralSet::whole_space(0);
    for _ in 0..k {
        blocks = blocks.product(p);
    }
    let mut parts = vec![blocks.formula];
    for i in 1..k {
        parts.push(lex_less(total, d, i - 1, i));
    }
    PolyhedralSet::new(total, Formula::and(parts)).expect("dimensions agree by construction")
}

/// The set of proper colorings of G by colors from P: one block of P.dim
/// coordinates per vertex, adjacent blocks forced to differ in some
/// coordinate (equality negated as < or >). χ of the result equals the
/// chromatic polynomial of G at q = χ(P).
pub fn coloring_set(g: &Graph, p: &PolyhedralSet) -> PolyhedralSet {
    let d = p.dim;
    let total = g.n_vertices * d;
    let mut blocks = PolyhedralSet::whole_space(0);
    for _ in 0..g.n_vertices {
        blocks = blocks.product(p);
    }
    let mut parts = vec![blocks.formula];
    for &(u, v) in &g.edges {
        let mut unequal = Vec::with_capacity(2 * d);
        for c in 0..d {
            unequal.push(Formula::atom(block_difference(total, d, u, v, c), Relation::Lt));
            unequal.push(Formula::atom(block_difference(total, d, v, u, c), Relation::Lt));
        }
        parts.push(Formula::or(unequal));
    }
    PolyhedralSet::new(total, Formula::and(parts)).expect("dimensions agree by construction")
}

/// A 1-dimensional polyhedral set P with the combinatorics of its
/// fabulous finite subsets.
///
/// A finite S ⊂ P is fabulous when every gap it cuts out of P has even
/// χ: the part of P before the first element of S, the parts between
/// consecutive elements, and the part after the last. For P a row of n
/// points, the fabulous subsets number F(n+1); in general the signed
/// stratum count equals [`extended_fibonacci`] of χ(P) + 1.
#[derive(Debug, Clone)]
pub struct FabulousInstance {
    pub components: CanonicalLine,
}

impl FabulousInstance {
    pub fn new(components: CanonicalLine) -> Self {
        FabulousInstance { components }
    }

    /// Signed count of fabulous strata, by a left-to-right scan.
    ///
    /// State: the signed totals over partial configurations whose
    /// running gap has even and odd χ. Skipping a component flips the
    /// parity (a point or an open interval is odd either way). A chosen
    /// point needs an even gap behind it and opens a fresh one. A chosen
    /// interval element splits its interval into two open halves: the
    /// left half closes the running gap, so that gap must have been odd
    /// before it, and the right half starts the new gap odd; the element
    /// itself sweeps an open interval, so the choice weighs -1. A
    /// configuration is accepted when the terminal gap is even.
    pub fn chi(&self) -> Int {
        let mut even = Int::one();
        let mut odd = Int::zero();
        for piece in self.components.pieces() {
            let (e, o) = (even, odd);
            match piece {
                LinePiece::Point(_) => {
                    even = &e + &o;
                    odd = e;
                }
                LinePiece::Interval { .. } => {
                    even = o.clone();
                    odd = &e - &o;
                }
            }
        }
        even
    }

    /// The same signed count by brute enumeration, allowing up to two
    /// chosen elements per interval and testing gap parities directly.
    /// Exponential in the number of components; it cross-checks
    /// [`FabulousInstance::chi`] and witnesses that a second element in
    /// one interval never survives: the part between the two elements is
    /// a whole open interval, an odd gap.
    pub fn stratum_sum(&self) -> Int {
        fn rec(pieces: &[LinePiece], odd: bool, weight: i64, total: &mut Int) {
            let Some((first, rest)) = pieces.split_first() else {
                if !odd {
                    *total += Int::from(weight);
                }
                return;
            };
            match first {
                LinePiece::Point(_) => {
                    rec(rest, !odd, weight, total);
                    if !odd {
                        rec(rest, false, weight, total);
                    }
                }
                LinePiece::Interval { .. } => {
                    for chosen in 0..=2usize {
                        // chosen elements split the interval into
                        // chosen + 1 open parts, each flipping parity,
                        // with a gap closing before every element
                        let mut parity = odd;
                        let mut alive = true;
                        for _ in 0..chosen {
                            parity = !parity;
                            if parity {
                                alive = false;
                                break;
                            }
                            parity = false;
                        }
                        if !alive {
                            continue;
                        }
                        let weight = if chosen % 2 == 1 { -weight } else { weight };
                        rec(rest, !parity, weight, total);
                    }
                }
            }
        }
        let mut total = Int::zero();
        rec(self.components.pieces(), false, 1, &mut total);
        total
    }
}

/// Signed count of fabulous-subset strata of P; equals
/// `extended_fibonacci(χ(P) + 1)`.
pub fn fabulous_chi(p: &CanonicalLine) -> Int {
    FabulousInstance::new(p.clone()).chi()
}

/// Fibonacci numbers extended to every integer index by running the
/// recurrence backwards: F(0) = 0, F(1) = 1, F(-k) = (-1)^(k+1) F(k).
pub fn extended_fibonacci(k: i64) -> Int {
    let m = k.unsigned_abs();
    let mut a = Int::zero();
    let mut b = Int::one();
    for _ in 0..m {
        let next = &a + &b;
        a = b;
        b = next;
    }
    if k >= 0 || m % 2 == 1 {
        a
    } else {
        -a
    }
}

/// Binomial coefficient C(n, k) for integer n of either sign:
/// n(n-1)⋯(n-k+1)/k!, always an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerBinomial {
    pub n: Int,
    pub k: usize,
}

impl IntegerBinomial {
    pub fn new(n: Int, k: usize) -> Self {
        IntegerBinomial { n, k }
    }

    pub fn value(&self) -> Int {
        let mut num = Int::one();
        let mut den = Int::one();
        for j in 0..self.k {
            num *= &self.n - Int::from(j as i64);
            den *= Int::from(j as i64 + 1);
        }
        let (q, r) = num.div_rem(&den);
        debug_assert!(r.is_zero(), "falling factorial not divisible by k!");
        q
    }
}

/// (1+t)^n as a rational function, n of either sign: the Euler series of
/// k-element subsets of a set with χ = n. Coefficient k is C(n, k), and
/// the value at t = 1 is the regularized subset count 2^n.
pub fn finite_subsets_series(n: i64) -> RationalFunction {
    let base = &Polynomial::one() + &Polynomial::t();
    if n >= 0 {
        RationalFunction::from_polynomial(base.pow(n as usize))
    } else {
        RationalFunction::new(Polynomial::one(), base.pow(n.unsigned_abs() as usize))
            .expect("1 + t is not the zero polynomial")
    }
}

/// The series of polyhedral subsets of one open interval, graded by
/// breakpoint count: 2·3^k membership words at k breakpoints (2 choices
/// of starting state, then 3 per breakpoint that keep it genuine), each
/// stratum an open k-simplex.
pub fn one_interval_subsets_series() -> RationalFunction {
    let den = &Polynomial::one() + &Polynomial::t().scaled(&rat_int(3));
    RationalFunction::new(Polynomial::constant(rat_int(2)), den)
        .expect("1 + 3t is not the zero polynomial")
}

/// Euler series of the polyhedral subsets of a 1-dimensional set,
/// graded by total breakpoint count.
///
/// Components contribute independently: an open interval contributes
/// 2/(1+3t), a point the constant 2 (in or out, no breakpoints), and the
/// whole series is the product. At t = 1 it regularizes to 2^χ(P), the
/// subset count of a set with χ(P) elements.
pub fn polyhedral_subsets_series(p: &CanonicalLine) -> RationalFunction {
    let points = num_traits::pow(Int::from(2), p.point_count());
    let series = RationalFunction::constant(Rat::from(points));
    &series * &one_interval_subsets_series().pow(p.interval_count())
}

/// Euler series of unordered pairs {A, B} of distinct finite subsets of
/// (0,1), graded by |A ∪ B| = k.
///
/// The k points are colored "A only", "B only" or "both"; all-"both" is
/// excluded (it would force A = B), and swapping A with B then acts
/// freely, leaving (3^k - 1)/2 strata, each an open k-simplex. The sum
/// is -t/((1+t)(1+3t)), and its value at t = 1 is -1/8 = C(1/2, 2), the
/// choose-two identity at the regularized count 2^χ((0,1)) = 1/2.
pub fn pairs_of_subsets_series() -> RationalFunction {
    let num = -&Polynomial::t();
    let den = &(&Polynomial::one() + &Polynomial::t())
        * &(&Polynomial::one() + &Polynomial::t().scaled(&rat_int(3)));
    RationalFunction::new(num, den).expect("(1+t)(1+3t) is not the zero polynomial")
}

/// Unsigned coefficients c_0..c_{n_max-1} of the Euler series of
/// polyhedral subsets of [0,1) with χ = 0: central trinomial numbers,
/// c_n = [x⁰] (x + 1 + 1/x)^n.
///
/// Scan such a subset as a membership word that starts outside; each of
/// its n breakpoints then admits three genuine local moves, contributing
/// -1, 0 or +1 to χ, and χ = 0 selects the balanced words. The stratum
/// with n breakpoints is an open n-simplex, so the signed series is
/// Σ c_n (-t)^n.
pub fn chi_zero_subsets_coefficients(count: usize) -> Vec<Int> {
    // row holds the coefficients of (x + 1 + 1/x)^n on x^(-n)..x^n
    let mut row = vec![Int::one()];
    let mut centrals = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            let mut next = vec![Int::zero(); row.len() + 2];
            for (j, c) in row.iter().enumerate() {
                next[j] += c;
                next[j + 1] += c;
                next[j + 2] += c;
            }
            row = next;
        }
        centrals.push(row[row.len() / 2].clone());
    }
    centrals
}

/// Regularized value of the χ = 0 subsets series: there is none. The
/// generating function is 1/√((1-t)(1+3t)), algebraic rather than
/// rational, and it blows up as t → 1, so evaluation is refused instead
/// of assigned.
pub fn chi_zero_subsets_regularized() -> Result<Rat> {
    Err(Error::Divergence)
}
