//! Euler measure by arrangement cell enumeration.
//!
//! The distinct hyperplanes of a formula cut ℝ^d into relatively open
//! convex faces, one per feasible sign vector over the hyperplanes. The
//! formula has constant truth on each face, so the set is an exact
//! disjoint union of the faces containing its points, and the Euler
//! measure is Σ (-1)^dim over those faces. Unbounded faces contribute by
//! the same sign rule: an unbounded relatively open convex k-cell fibers
//! over a ray or line with convex fibers one dimension down, so the same
//! recursion that grounds the fiber engine forces (-1)^k on it too. The
//! two engines are held to exact agreement by the test suite rather than
//! trusted individually.
//!
//! The face census also yields the f-polynomial Σ f_i t^i of the
//! decomposition, the dimension of the set, and the (dimension, measure,
//! boundedness) triple that classifies bounded semilinear sets up to
//! semilinear isomorphism.

use num_traits::{One, Zero};

use crate::elimination::System;
use crate::linalg::rank;
use crate::polyset::{Atom, Formula, LinearForm, PolyhedralSet, Relation};
use crate::rat::{Int, Rat};

/// Position of a point relative to one oriented hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// One relatively open convex face of a hyperplane arrangement.
#[derive(Debug, Clone)]
pub struct Cell {
    /// Position relative to each generating hyperplane, in order.
    pub sign_vector: Vec<Sign>,
    pub dimension: usize,
    pub bounded: bool,
    /// An exact rational point inside the cell.
    pub witness: Vec<Rat>,
}

/// The cells of an arrangement that lie inside a given set.
#[derive(Debug, Clone)]
pub struct CellDecomposition {
    pub dim: usize,
    /// Generating hyperplanes in canonical orientation; sign vectors are
    /// indexed against this list.
    pub hyperplanes: Vec<LinearForm>,
    pub cells: Vec<Cell>,
}

/// Decomposes a set into the faces of its own hyperplane arrangement.
///
/// Sign vectors are grown one hyperplane at a time; each candidate
/// extension is kept only when the conjunction of sign constraints is
/// feasible, witnessed by an exact interior point. A face is part of the
/// output when the set's formula holds at its witness, which decides
/// membership for the whole face since every atom has constant sign on
/// it. Dimension is the ambient dimension minus the rank of the
/// equality constraints; boundedness is decided by exact optimization of
/// every coordinate over the face.
pub fn arrangement_decompose(set: &PolyhedralSet) -> CellDecomposition {
    let s = set.simplified();
    let hyperplanes = s.hyperplanes();
    let cells = enumerate_faces(s.dim, &hyperplanes)
        .into_iter()
        .filter(|(_, witness)| s.contains(witness))
        .map(|(sign_vector, witness)| {
            let eq_rows: Vec<Vec<Rat>> = sign_vector
                .iter()
                .zip(&hyperplanes)
                .filter(|(s, _)| **s == Sign::Zero)
                .map(|(_, h)| h.coeffs.clone())
                .collect();
            let dimension = s.dim - rank(&eq_rows);
            let system = System::new(s.dim, face_atoms(&hyperplanes, &sign_vector));
            let bounded = (0..s.dim).all(|i| {
                system.coord_range(i).expect("face has a witness").is_bounded()
            });
            Cell { sign_vector, dimension, bounded, witness }
        })
        .collect();
    CellDecomposition { dim: s.dim, hyperplanes, cells }
}

// All feasible sign vectors over `hyperplanes`, each with a witness.
fn enumerate_faces(dim: usize, hyperplanes: &[LinearForm]) -> Vec<(Vec<Sign>, Vec<Rat>)> {
    let mut faces = vec![(Vec::new(), vec![Rat::zero(); dim])];
    for (k, h) in hyperplanes.iter().enumerate() {
        let mut grown = Vec::with_capacity(faces.len());
        for (signs, witness) in faces {
            let at_witness = match crate::rat::sign(&h.eval(&witness)) {
                -1 => Sign::Neg,
                0 => Sign::Zero,
                _ => Sign::Pos,
            };
            for sign in [Sign::Neg, Sign::Zero, Sign::Pos] {
                let mut extended = signs.clone();
                extended.push(sign);
                if sign == at_witness {
                    grown.push((extended, witness.clone()));
                } else {
                    let atoms = face_atoms(&hyperplanes[..=k], &extended);
                    if let Some(w) = System::new(dim, atoms).witness() {
                        grown.push((extended, w));
                    }
                }
            }
        }
        faces = grown;
    }
    faces
}

// The constraint list pinning a face: h = 0, h < 0, or h > 0 per sign.
fn face_atoms(hyperplanes: &[LinearForm], signs: &[Sign]) -> Vec<Atom> {
    signs
        .iter()
        .zip(hyperplanes)
        .map(|(sign, h)| match sign {
            Sign::Zero => Atom::new(h.clone(), Relation::Eq),
            Sign::Neg => Atom::new(h.clone(), Relation::Lt),
            Sign::Pos => Atom::new(-h.clone(), Relation::Lt),
        })
        .collect()
}

/// A point of the set, or `None` if it is empty. Exact: the formula is
/// constant on each face of its arrangement, so checking one witness per
/// face decides emptiness.
pub fn member_witness(set: &PolyhedralSet) -> Option<Vec<Rat>> {
    let s = set.simplified();
    match &s.formula {
        Formula::True => return Some(vec![Rat::zero(); s.dim]),
        Formula::False => return None,
        _ => {}
    }
    enumerate_faces(s.dim, &s.hyperplanes())
        .into_iter()
        .map(|(_, witness)| witness)
        .find(|w| s.contains(w))
}

/// Euler measure as the signed face count Σ (-1)^dim of the cells.
pub fn euler_measure_cells(set: &PolyhedralSet) -> Int {
    let mut acc = Int::zero();
    for cell in &arrangement_decompose(set).cells {
        if cell.dimension % 2 == 0 {
            acc += Int::one();
        } else {
            acc -= Int::one();
        }
    }
    acc
}

/// The face-count polynomial f(t) = Σ f_i t^i of a decomposition, where
/// f_i is the number of i-dimensional cells. f(-1) is the Euler measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPolynomial {
    coefficients: Vec<Int>,
}

impl FPolynomial {
    pub fn of(decomposition: &CellDecomposition) -> Self {
        let top = decomposition.cells.iter().map(|c| c.dimension).max();
        let mut coefficients = vec![Int::zero(); top.map_or(0, |d| d + 1)];
        for cell in &decomposition.cells {
            coefficients[cell.dimension] += Int::one();
        }
        FPolynomial { coefficients }
    }

    /// Coefficients f_0, f_1, ..., with no trailing zero entries; empty
    /// for the empty set.
    pub fn coefficients(&self) -> &[Int] {
        &self.coefficients
    }

    pub fn evaluate(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * t + Rat::from(c.clone());
        }
        acc
    }

    pub fn at_minus_one(&self) -> Int {
        let mut acc = Int::zero();
        for c in self.coefficients.iter().rev() {
            acc = c - acc;
        }
        acc
    }
}

impl std::fmt::Display for FPolynomial {
    /// Renders like `16+24t+8t^2`, skipping zero terms; `0` when empty.
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            if *c != Int::one() || i == 0 {
                write!(out, "{c}")?;
            }
            match i {
                0 => {}
                1 => write!(out, "t")?,
                _ => write!(out, "t^{i}")?,
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

/// Dimension of a set: the largest cell dimension, with -1 for ∅.
pub fn dimension(set: &PolyhedralSet) -> i64 {
    arrangement_decompose(set)
        .cells
        .iter()
        .map(|c| c.dimension as i64)
        .max()
        .unwrap_or(-1)
}

/// The complete semilinear isomorphism invariant of a bounded set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub dim: i64,
    pub chi: Int,
    /// Whether every cell of the set is bounded.
    pub bounded: bool,
}

/// Dimension, Euler measure, and boundedness in one pass.
pub fn iso_classify(set: &PolyhedralSet) -> IsoClass {
    let decomposition = arrangement_decompose(set);
    let mut dim = -1;
    let mut chi = Int::zero();
    let mut bounded = true;
    for cell in &decomposition.cells {
        dim = dim.max(cell.dimension as i64);
        if cell.dimension % 2 == 0 {
            chi += Int::one();
        } else {
            chi -= Int::one();
        }
        bounded &= cell.bounded;
    }
    IsoClass { dim, chi, bounded }
}

/// Whether two sets are semilinearly isomorphic: for bounded sets this
/// is decided exactly by (dimension, χ). Declines to answer when either
/// side is unbounded, where the pair is not known to classify.
pub fn isomorphic(a: &IsoClass, b: &IsoClass) -> Option<bool> {
    if !a.bounded || !b.bounded {
        return None;
    }
    Some(a.dim == b.dim && a.chi == b.chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::euler_measure_fiber;
    use crate::rat::{rat, rat_int};

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    fn open_unit_square() -> PolyhedralSet {
        let side = PolyhedralSet::open_interval(rat_int(0), rat_int(1));
        side.product(&side)
    }

    fn triangle_with_vertices() -> PolyhedralSet {
        let form = |cs: &[i64], k: i64| {
            LinearForm::new(cs.iter().map(|&c| rat_int(c)).collect(), rat_int(k))
        };
        let interior = Formula::and(vec![
            Formula::Atom(Atom::new(form(&[-1, 0], 0), Relation::Lt)),
            Formula::Atom(Atom::new(form(&[0, -1], 0), Relation::Lt)),
            Formula::Atom(Atom::new(form(&[1, 1], -1), Relation::Lt)),
        ]);
        let vertex = |x: i64, y: i64| {
            Formula::and(vec![
                Formula::Atom(Atom::new(form(&[1, 0], -x), Relation::Eq)),
                Formula::Atom(Atom::new(form(&[0, 1], -y), Relation::Eq)),
            ])
        };
        PolyhedralSet::new(2, Formula::or(vec![interior, vertex(0, 0), vertex(0, 1), vertex(1, 0)]))
            .unwrap()
    }

    fn punctured_square() -> PolyhedralSet {
        let outer = PolyhedralSet::closed_interval(rat_int(0), rat_int(3));
        let inner = PolyhedralSet::open_interval(rat_int(1), rat_int(2));
        outer.product(&outer).difference(&inner.product(&inner)).unwrap()
    }

    #[test]
    fn decomposition_of_open_square() {
        let d = arrangement_decompose(&open_unit_square());
        assert_eq!(d.cells.len(), 1);
        assert_eq!(d.cells[0].dimension, 2);
        assert!(d.cells[0].bounded);
        assert_eq!(FPolynomial::of(&d).to_string(), "t^2");
    }

    #[test]
    fn decomposition_of_triangle_with_vertices() {
        let d = arrangement_decompose(&triangle_with_vertices());
        let mut dims: Vec<usize> = d.cells.iter().map(|c| c.dimension).collect();
        dims.sort();
        assert_eq!(dims, vec![0, 0, 0, 2]);
        assert_eq!(FPolynomial::of(&d).to_string(), "3+t^2");
        assert_eq!(FPolynomial::of(&d).at_minus_one(), int(4));
    }

    #[test]
    fn decomposition_of_punctured_square() {
        let d = arrangement_decompose(&punctured_square());
        let f = FPolynomial::of(&d);
        assert_eq!(f.coefficients(), &[int(16), int(24), int(8)]);
        assert_eq!(f.to_string(), "16+24t+8t^2");
        assert_eq!(f.at_minus_one(), int(0));
        assert_eq!(f.evaluate(&rat_int(-1)), rat_int(0));
        assert_eq!(f.evaluate(&rat_int(1)), rat_int(48));
    }

    #[test]
    fn cell_measure_matches_fiber_measure_on_examples() {
        for set in [
            open_unit_square(),
            triangle_with_vertices(),
            punctured_square(),
            PolyhedralSet::whole_space(1),
            PolyhedralSet::whole_space(0),
            PolyhedralSet::empty(2),
        ] {
            assert_eq!(euler_measure_cells(&set), euler_measure_fiber(&set));
        }
        assert_eq!(euler_measure_cells(&PolyhedralSet::whole_space(1)), int(-1));
        assert_eq!(euler_measure_cells(&PolyhedralSet::empty(2)), int(0));
    }

    #[test]
    fn unbounded_cells_are_detected() {
        // x > 0 in the plane: one unbounded open half-plane.
        let half = PolyhedralSet::new(
            2,
            Formula::atom(LinearForm::new(vec![rat_int(-1), rat_int(0)], rat_int(0)), Relation::Lt),
        )
        .unwrap();
        let d = arrangement_decompose(&half);
        assert_eq!(d.cells.len(), 1);
        assert!(!d.cells[0].bounded);
        assert_eq!(d.cells[0].dimension, 2);
    }

    #[test]
    fn member_witness_finds_points_exactly() {
        assert!(member_witness(&PolyhedralSet::empty(3)).is_none());
        let w = member_witness(&triangle_with_vertices()).unwrap();
        assert!(triangle_with_vertices().contains(&w));
        // (0,1) ∩ (1,2) is empty even though the closures touch.
        let a = PolyhedralSet::open_interval(rat_int(0), rat_int(1));
        let b = PolyhedralSet::open_interval(rat_int(1), rat_int(2));
        assert!(member_witness(&a.intersection(&b).unwrap()).is_none());
        assert!(member_witness(&PolyhedralSet::whole_space(0)).is_some());
    }

    #[test]
    fn dimension_of_examples() {
        assert_eq!(dimension(&open_unit_square()), 2);
        assert_eq!(dimension(&triangle_with_vertices()), 2);
        assert_eq!(dimension(&PolyhedralSet::empty(2)), -1);
        assert_eq!(dimension(&PolyhedralSet::single_point(&[rat(1, 2)])), 0);
        assert_eq!(dimension(&PolyhedralSet::whole_space(0)), 0);
    }

    #[test]
    fn iso_classes_of_interval_unions() {
        let two_apart = PolyhedralSet::open_interval(rat_int(0), rat_int(1))
            .union(&PolyhedralSet::open_interval(rat_int(2), rat_int(3)))
            .unwrap();
        let touching = PolyhedralSet::open_interval(rat_int(0), rat(1, 2))
            .union(&PolyhedralSet::open_interval(rat(1, 2), rat_int(1)))
            .unwrap();
        let a = iso_classify(&two_apart);
        let b = iso_classify(&touching);
        assert_eq!(a, IsoClass { dim: 1, chi: int(-2), bounded: true });
        assert_eq!(b, IsoClass { dim: 1, chi: int(-2), bounded: true });
        assert_eq!(isomorphic(&a, &b), Some(true));

        let closed = iso_classify(&PolyhedralSet::closed_interval(rat_int(0), rat_int(1)));
        let open = iso_classify(&PolyhedralSet::open_interval(rat_int(0), rat_int(1)));
        assert_eq!(closed, IsoClass { dim: 1, chi: int(1), bounded: true });
        assert_eq!(open, IsoClass { dim: 1, chi: int(-1), bounded: true });
        assert_eq!(isomorphic(&closed, &open), Some(false));

        assert_eq!(
            iso_classify(&PolyhedralSet::empty(1)),
            IsoClass { dim: -1, chi: int(0), bounded: true }
        );
        let ray = iso_classify(&PolyhedralSet::whole_space(1));
        assert_eq!(isomorphic(&ray, &open), None);
    }
}
