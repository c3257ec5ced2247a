//! Shared generators and randomized property suites for the integration
//! tests. Everything is seeded, so failures reproduce exactly.

#![allow(dead_code)]

use std::collections::HashSet;

use polychi_core::combinat::Graph;
use polychi_core::euler::{
    euler_integral, euler_integral_iterated, euler_integral_line, euler_measure_cells,
    euler_measure_fiber, ConstructibleFunction,
};
use polychi_core::polyset::{
    canonicalize_line, CanonicalLine, Formula, LinePiece, LinearForm, PolyhedralSet, Relation,
};
use polychi_core::series::{Polynomial, RationalFunction};
use num_traits::{One, Zero};
use polychi_core::{rat, rat_int, Int, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in -6..=6 and denominator in 1..=3.
pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize) -> LinearForm {
    loop {
        let coeffs: Vec<Rat> = (0..dim).map(|_| rat_int(rng.gen_range(-3..=3))).collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return LinearForm::new(coeffs, small_rat(rng));
        }
    }
}

fn random_atom(rng: &mut ChaCha8Rng, dim: usize) -> Formula {
    let relation = match rng.gen_range(0..5) {
        0 => Relation::Eq,
        1 | 2 => Relation::Lt,
        _ => Relation::Le,
    };
    Formula::atom(random_form(rng, dim), relation)
}

// Combines the given leaves into one random and/or/not tree, consuming them.
fn random_tree(rng: &mut ChaCha8Rng, leaves: &mut Vec<Formula>) -> Formula {
    let f = if leaves.len() == 1 {
        leaves.pop().unwrap()
    } else {
        let split = rng.gen_range(1..leaves.len());
        let mut right_leaves = leaves.split_off(split);
        let left = random_tree(rng, leaves);
        let right = random_tree(rng, &mut right_leaves);
        if rng.gen_bool(0.5) {
            Formula::and(vec![left, right])
        } else {
            Formula::or(vec![left, right])
        }
    };
    if rng.gen_bool(0.25) {
        Formula::not(f)
    } else {
        f
    }
}

/// A random semilinear set: `n_atoms` random strict/weak/equality atoms
/// combined by a random connective tree with occasional negations.
pub fn random_set(rng: &mut ChaCha8Rng, dim: usize, n_atoms: usize) -> PolyhedralSet {
    let mut leaves: Vec<Formula> = (0..n_atoms).map(|_| random_atom(rng, dim)).collect();
    let formula = random_tree(rng, &mut leaves);
    PolyhedralSet::new(dim, formula).expect("atoms share the requested dimension")
}

/// A random canonical one-dimensional set built as a union of a few
/// points and open or closed intervals (possibly overlapping).
pub fn random_line(rng: &mut ChaCha8Rng) -> CanonicalLine {
    let mut set = PolyhedralSet::empty(1);
    for _ in 0..rng.gen_range(1..=3) {
        let a = rat_int(rng.gen_range(-5..=5));
        let b = &a + &rat_int(rng.gen_range(1..=3));
        let piece = match rng.gen_range(0..4) {
            0 | 1 => PolyhedralSet::open_interval(a, b),
            2 => PolyhedralSet::closed_interval(a, b),
            _ => PolyhedralSet::single_point(&[a]),
        };
        set = set.union(&piece).expect("dimension 1 throughout");
    }
    canonicalize_line(&set).expect("the union is one-dimensional")
}

fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: usize) -> Polynomial {
    let degree = rng.gen_range(0..=max_degree);
    Polynomial::new((0..=degree).map(|_| rat_int(rng.gen_range(-4..=4))).collect())
}

/// A random rational function whose denominator does not vanish at 1 or
/// at -1, so both the series transforms and evaluation there are defined.
pub fn random_rational_function(rng: &mut ChaCha8Rng) -> RationalFunction {
    let num = random_polynomial(rng, 3);
    loop {
        let den = random_polynomial(rng, 2);
        if den.is_zero()
            || den.evaluate(&rat_int(1)).is_zero()
            || den.evaluate(&rat_int(-1)).is_zero()
        {
            continue;
        }
        return RationalFunction::new(num, den).expect("denominator is nonzero");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of simple graphs on at most
/// `max_n` vertices, found by canonicalizing each edge bitmask to its
/// minimum relabeling.
pub fn graph_representatives(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 5, "bitmask enumeration is sized for at most 5 vertices");
    let mut reps = Vec::new();
    for n in 0..=max_n {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let index_of = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
        let perms = permutations(n);
        let mut seen = HashSet::new();
        for mask in 0u32..1 << pairs.len() {
            let canonical = perms
                .iter()
                .map(|p| {
                    let mut relabeled = 0u32;
                    for (i, &(u, v)) in pairs.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                            relabeled |= 1 << index_of(a, b);
                        }
                    }
                    relabeled
                })
                .min()
                .unwrap();
            if seen.insert(canonical) && canonical == mask {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                reps.push(Graph::new(n, &edges).unwrap());
            }
        }
    }
    reps
}

/// Counts membership words for subsets of a one-interval set with k
/// genuine breakpoints: k (point, next-cell) bit pairs after a start
/// cell bit, where a breakpoint is genuine unless the point bit equals
/// both neighboring cell bits.
pub fn interval_word_count(k: usize) -> u64 {
    if k == 0 {
        return 2;
    }
    let mut count = 0u64;
    for word in 0u64..1 << (2 * k + 1) {
        let bit = |i: usize| word >> i & 1;
        let mut ok = true;
        for j in 0..k {
            let prev_cell = bit(2 * j);
            let point = bit(2 * j + 1);
            let next_cell = bit(2 * j + 2);
            if prev_cell == point && point == next_cell {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
    }
    count
}

fn chi_of_set(set: &PolyhedralSet) -> Int {
    euler_measure_fiber(set)
}

pub fn engine_agreement_suite(instances: usize) -> Result<(), String> {
    let mut rng = rng(0xA11CE);
    for i in 0..instances {
        let dim = rng.gen_range(1..=3);
        let n_atoms = if dim == 3 { rng.gen_range(2..=4) } else { rng.gen_range(2..=5) };
        let set = random_set(&mut rng, dim, n_atoms);
        let fiber = euler_measure_fiber(&set);
        let cells = euler_measure_cells(&set);
        if fiber != cells {
            return Err(format!(
                "instance {i}: fiber engine found {fiber}, cell engine found {cells} on {:?}",
                set
            ));
        }
    }
    Ok(())
}

pub fn additivity_suite(instances: usize) -> Result<(), String> {
    let mut rng = rng(0xADD);
    for i in 0..instances {
        let dim = rng.gen_range(1..=2);
        let (n_a, n_b) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
        let a = random_set(&mut rng, dim, n_a);
        let b = random_set(&mut rng, dim, n_b);
        let union = a.union(&b).unwrap();
        let meet = a.intersection(&b).unwrap();
        let lhs = chi_of_set(&union) + chi_of_set(&meet);
        let rhs = chi_of_set(&a) + chi_of_set(&b);
        if lhs != rhs {
            return Err(format!(
                "instance {i}: chi(A u B) + chi(A n B) = {lhs} but chi(A) + chi(B) = {rhs}"
            ));
        }
    }
    Ok(())
}

pub fn product_rule_suite(instances: usize) -> Result<(), String> {
    let mut rng = rng(0x9806);
    for i in 0..instances {
        let (dim_a, n_a, n_b) = (rng.gen_range(1..=2), rng.gen_range(2..=4), rng.gen_range(2..=4));
        let a = random_set(&mut rng, dim_a, n_a);
        let b = random_set(&mut rng, 1, n_b);
        let product = a.product(&b);
        let lhs = chi_of_set(&product);
        let rhs = chi_of_set(&a) * chi_of_set(&b);
        if lhs != rhs {
            return Err(format!("instance {i}: chi(A x B) = {lhs} but chi(A) chi(B) = {rhs}"));
        }
    }
    Ok(())
}

/// A random constructible function: a first-match partition of the
/// space into at most three random regions plus the leftover, each
/// carrying a small integer value.
pub fn random_function(rng: &mut ChaCha8Rng, dim: usize) -> ConstructibleFunction {
    let mut pieces = Vec::new();
    let mut rest = PolyhedralSet::whole_space(dim);
    for _ in 0..rng.gen_range(1..=2) {
        let n_atoms = if dim >= 3 { 2 } else { rng.gen_range(2..=3) };
        let raw = random_set(rng, dim, n_atoms);
        let region = raw.intersection(&rest).unwrap();
        rest = rest.difference(&region).unwrap();
        pieces.push((Int::from(rng.gen_range(-3..=3)), region));
    }
    pieces.push((Int::from(rng.gen_range(-3..=3)), rest));
    ConstructibleFunction::new(dim, pieces).expect("first-match regions partition the space")
}

pub fn fubini_suite(instances: usize) -> Result<(), String> {
    let mut rng = rng(0xF0B1);
    for i in 0..instances {
        let dim = rng.gen_range(2..=3);
        let f = random_function(&mut rng, dim);
        let direct = euler_integral(&f);
        let iterated = euler_integral_iterated(&f);
        if direct != iterated {
            return Err(format!(
                "instance {i}: direct integral {direct} differs from iterated {iterated}"
            ));
        }
    }
    Ok(())
}

pub fn axis_independence_suite(instances: usize) -> Result<(), String> {
    let mut rng = rng(0xA7E5);
    for i in 0..instances {
        let dim = rng.gen_range(2..=3);
        let n_atoms = if dim == 3 { rng.gen_range(2..=4) } else { rng.gen_range(2..=5) };
        let set = random_set(&mut rng, dim, n_atoms);
        let mut perm: Vec<usize> = (0..dim).collect();
        for j in (1..dim).rev() {
            perm.swap(j, rng.gen_range(0..=j));
        }
        let permuted = set.permute_coords(&perm);
        let original = chi_of_set(&set);
        let shuffled = chi_of_set(&permuted);
        if original != shuffled {
            return Err(format!(
                "instance {i}: chi {original} changed to {shuffled} under axis permutation {:?}",
                perm
            ));
        }
    }
    Ok(())
}

// The value of a line partition's step function at x.
fn step_value(pieces: &[(LinePiece, Int)], x: &Rat) -> Int {
    for (piece, value) in pieces {
        let inside = match piece {
            LinePiece::Point(v) => v == x,
            LinePiece::Interval { lo, hi } => {
                lo.as_ref().map_or(true, |l| l < x) && hi.as_ref().map_or(true, |h| x < h)
            }
        };
        if inside {
            return value.clone();
        }
    }
    unreachable!("line partitions cover the line")
}

// A full line partition over sorted distinct breakpoints, with values
// sampled by `value`.
fn line_partition(
    breakpoints: &[Rat],
    mut value: impl FnMut(&LinePiece) -> Int,
) -> Vec<(LinePiece, Int)> {
    let mut pieces = Vec::new();
    if breakpoints.is_empty() {
        pieces.push(LinePiece::Interval { lo: None, hi: None });
    } else {
        pieces.push(LinePiece::Interval { lo: None, hi: Some(breakpoints[0].clone()) });
        for (i, b) in breakpoints.iter().enumerate() {
            pieces.push(LinePiece::Point(b.clone()));
            pieces.push(LinePiece::Interval { lo: Some(b.clone()), hi: breakpoints.get(i + 1).cloned() });
        }
    }
    pieces
        .into_iter()
        .map(|piece| {
            let v = value(&piece);
            (piece, v)
        })
        .collect()
}

// A sample point inside a line piece.
fn piece_sample(piece: &LinePiece) -> Rat {
    match piece {
        LinePiece::Point(v) => v.clone(),
        LinePiece::Interval { lo: None, hi: None } => Rat::zero(),
        LinePiece::Interval { lo: Some(l), hi: None } => l + &Rat::one(),
        LinePiece::Interval { lo: None, hi: Some(h) } => h - &Rat::one(),
        LinePiece::Interval { lo: Some(l), hi: Some(h) } => (l + h) / rat_int(2),
    }
}

pub fn refinement_invariance_suite(instances: usize) -> Result<(), String> {
    let mut rng = rng(0x2EF1);
    for i in 0..instances {
        let mut base: Vec<Rat> = (0..rng.gen_range(0..=3)).map(|_| small_rat(&mut rng)).collect();
        base.sort();
        base.dedup();
        let values: Vec<Int> =
            (0..2 * base.len() + 1).map(|_| Int::from(rng.gen_range(-3..=3))).collect();
        let mut next = values.iter().cloned();
        let coarse = line_partition(&base, |_| next.next().unwrap());

        let mut refined_points = base.clone();
        for _ in 0..rng.gen_range(1..=3) {
            refined_points.push(small_rat(&mut rng) + rat(1, 7));
        }
        refined_points.sort();
        refined_points.dedup();
        let fine = line_partition(&refined_points, |piece| {
            step_value(&coarse, &piece_sample(piece))
        });

        let a = euler_integral_line(&coarse).map_err(|e| format!("instance {i}: {e:?}"))?;
        let b = euler_integral_line(&fine).map_err(|e| format!("instance {i}: {e:?}"))?;
        if a != b {
            return Err(format!("instance {i}: integral {a} changed to {b} under refinement"));
        }
    }
    Ok(())
}
