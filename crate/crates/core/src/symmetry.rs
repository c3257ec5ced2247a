//! Group actions on polyhedral sets by exact affine maps.
//!
//! The trace of a map g on a set P is χ(Fix_P g), the Euler measure of
//! the fixed-point set. Because χ is a valuation and not a homotopy
//! invariant, these traces carry real information: on the three open
//! edges of a triangle the identity has trace -3, a flip 1, a rotation
//! 0. The claim under test is that for a G-invariant disjoint union of
//! open k-cells, the class function (-1)^k · trace is the character of a
//! genuine representation of G: decomposing it against an irreducible
//! character table must give non-negative integer multiplicities.
//!
//! Everything stays in rational arithmetic. Isometry groups are realized
//! by rational affine conjugates (the equilateral triangle becomes the
//! right triangle (0,0),(1,0),(0,1), its symmetric group generated by
//! the coordinate swap and the rotation (x,y) ↦ (1-x-y, x)); Euler
//! measure is invariant under affine isomorphism, so traces survive the
//! conjugation. Character tables are restricted to groups whose
//! irreducible characters are rational, which covers every instance the
//! claim is verified on here.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::euler::cells::member_witness;
use crate::euler::euler_measure_fiber;
use crate::linalg::invert;
use crate::polyset::{Formula, LinearForm, PolyhedralSet, Relation};
use crate::rat::{is_integer, rat_int, sign, Int, Rat};

/// Affine map x ↦ matrix·x + translation on ℝ^d, all entries rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: Vec<Vec<Rat>>,
    pub translation: Vec<Rat>,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Rat>>, translation: Vec<Rat>) -> Result<AffineMap> {
        let d = translation.len();
        if matrix.len() != d || matrix.iter().any(|row| row.len() != d) {
            return Err(Error::Invalid(format!(
                "matrix must be {d}x{d} to match the translation"
            )));
        }
        Ok(AffineMap { matrix, translation })
    }

    pub fn identity(dim: usize) -> AffineMap {
        let matrix = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        AffineMap { matrix, translation: vec![Rat::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, point: &[Rat]) -> Vec<Rat> {
        assert_eq!(point.len(), self.dim(), "point dimension mismatch");
        self.matrix
            .iter()
            .zip(&self.translation)
            .map(|(row, b)| {
                let mut acc = b.clone();
                for (c, x) in row.iter().zip(point) {
                    if !c.is_zero() {
                        acc += c * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// self ∘ other: `other` acts first.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        let d = self.dim();
        if other.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: other.dim() });
        }
        let matrix: Vec<Vec<Rat>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| &self.matrix[i][k] * &other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        let translation = self
            .apply(&other.translation)
            .into_iter()
            .collect();
        Ok(AffineMap { matrix, translation })
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = invert(&self.matrix)
            .ok_or_else(|| Error::Invalid("affine map is not invertible".to_string()))?;
        let neg: Vec<Rat> = self.translation.iter().map(|b| -b).collect();
        let translation = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| &inv[i][j] * &neg[j]).sum())
            .collect();
        Ok(AffineMap { matrix: inv, translation })
    }

    pub fn is_identity(&self) -> bool {
        self == &AffineMap::identity(self.dim())
    }

    /// The preimage {x : g(x) ∈ S}, by substituting the map into every
    /// atom. For invertible g this is g⁻¹(S).
    pub fn preimage(&self, set: &PolyhedralSet) -> Result<PolyhedralSet> {
        let d = self.dim();
        if set.dim != d {
            return Err(Error::DimensionMismatch { expected: d, found: set.dim });
        }
        let formula = set.formula.map_atoms(&|a| {
            // c·(Mx + b) + k = (cᵀM)·x + (c·b + k)
            let coeffs: Vec<Rat> = (0..d)
                .map(|j| (0..d).map(|i| &a.form.coeffs[i] * &self.matrix[i][j]).sum())
                .collect();
            let constant = a.form.coeffs.iter().zip(&self.translation).fold(
                a.form.constant.clone(),
                |acc, (c, b)| acc + c * b,
            );
            Formula::atom(LinearForm::new(coeffs, constant), a.relation)
        });
        PolyhedralSet::new(d, formula)
    }
}

/// Fix_P g = {x ∈ P : g(x) = x}: P cut by the d linear equations of the
/// map, one per coordinate.
pub fn fixed_set(p: &PolyhedralSet, g: &AffineMap) -> Result<PolyhedralSet> {
    if g.dim() != p.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: g.dim() });
    }
    let mut parts = vec![p.formula.clone()];
    for i in 0..p.dim {
        let mut coeffs = g.matrix[i].clone();
        coeffs[i] -= Rat::one();
        parts.push(Formula::atom(
            LinearForm::new(coeffs, g.translation[i].clone()),
            Relation::Eq,
        ));
    }
    PolyhedralSet::new(p.dim, Formula::and(parts))
}

/// Tr_P g = χ(Fix_P g).
pub fn trace(p: &PolyhedralSet, g: &AffineMap) -> Result<Int> {
    Ok(euler_measure_fiber(&fixed_set(p, g)?))
}

/// A finite group of affine maps together with the polyhedral set it
/// acts on. Construction verifies the group axioms on the element list,
/// the conjugacy-class partition, and the invariance of the target.
#[derive(Debug, Clone)]
pub struct GroupAction {
    elements: Vec<AffineMap>,
    conjugacy_classes: Vec<Vec<usize>>,
    target: PolyhedralSet,
}

impl GroupAction {
    pub fn new(
        elements: Vec<AffineMap>,
        conjugacy_classes: Vec<Vec<usize>>,
        target: PolyhedralSet,
    ) -> Result<GroupAction> {
        if elements.is_empty() {
            return Err(Error::Invalid("a group needs at least the identity".to_string()));
        }
        let d = target.dim;
        if let Some(g) = elements.iter().find(|g| g.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: g.dim() });
        }
        if !elements.iter().any(AffineMap::is_identity) {
            return Err(Error::Invalid("identity element missing".to_string()));
        }
        let index_of = |m: &AffineMap| elements.iter().position(|e| e == m);
        for g in &elements {
            for h in &elements {
                if index_of(&g.compose(h)?).is_none() {
                    return Err(Error::Invalid("element list is not closed under composition".to_string()));
                }
            }
            if index_of(&g.inverse()?).is_none() {
                return Err(Error::Invalid("element list is not closed under inverse".to_string()));
            }
        }
        // each element must carry the target onto itself: compare with the
        // preimage, which is exact on witnesses of the cell decomposition
        for g in &elements {
            let pre = g.preimage(&target)?;
            if member_witness(&target.difference(&pre)?).is_some()
                || member_witness(&pre.difference(&target)?).is_some()
            {
                return Err(Error::Invalid("target is not invariant under the action".to_string()));
            }
        }
        // the stated classes must be exactly the orbits of conjugation
        let mut seen = vec![false; elements.len()];
        for class in &conjugacy_classes {
            for &i in class {
                if i >= elements.len() || seen[i] {
                    return Err(Error::Invalid("conjugacy classes must partition the elements".to_string()));
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::Invalid("conjugacy classes must partition the elements".to_string()));
        }
        for class in &conjugacy_classes {
            let mut orbit: Vec<usize> = Vec::new();
            for x in &elements {
                let conj = x.compose(&elements[class[0]])?.compose(&x.inverse()?)?;
                let idx = index_of(&conj).expect("closure was already verified");
                if !orbit.contains(&idx) {
                    orbit.push(idx);
                }
            }
            let mut stated = class.clone();
            stated.sort_unstable();
            orbit.sort_unstable();
            if stated != orbit {
                return Err(Error::Invalid("a stated class is not a conjugacy class".to_string()));
            }
        }
        Ok(GroupAction { elements, conjugacy_classes, target })
    }

    pub fn elements(&self) -> &[AffineMap] {
        &self.elements
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.conjugacy_classes
    }

    pub fn target(&self) -> &PolyhedralSet {
        &self.target
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Tr of one representative per conjugacy class, in class order.
    pub fn class_traces(&self) -> Result<Vec<Int>> {
        self.conjugacy_classes
            .iter()
            .map(|class| trace(&self.target, &self.elements[class[0]]))
            .collect()
    }
}

/// An irreducible character table with rational values: one row per
/// irreducible, one column per conjugacy class. Construction checks that
/// the table is square and its rows orthonormal in the class-weighted
/// inner product (1/|G|) Σ |class| χᵢ χⱼ; groups whose irreducible
/// characters are irrational have no such table here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    class_sizes: Vec<usize>,
    rows: Vec<Vec<Rat>>,
}

impl CharacterTable {
    pub fn new(class_sizes: Vec<usize>, rows: Vec<Vec<Rat>>) -> Result<CharacterTable> {
        let classes = class_sizes.len();
        if classes == 0 || class_sizes.iter().any(|&s| s == 0) {
            return Err(Error::Invalid("class sizes must be positive".to_string()));
        }
        if rows.len() != classes || rows.iter().any(|r| r.len() != classes) {
            return Err(Error::Invalid(format!(
                "a complete table over {classes} classes must be {classes}x{classes}"
            )));
        }
        let order = rat_int(class_sizes.iter().sum::<usize>() as i64);
        for i in 0..classes {
            for j in i..classes {
                let mut inner = Rat::zero();
                for c in 0..classes {
                    inner += rat_int(class_sizes[c] as i64) * &rows[i][c] * &rows[j][c];
                }
                inner /= &order;
                let expected = if i == j { Rat::one() } else { Rat::zero() };
                if inner != expected {
                    return Err(Error::Invalid(format!(
                        "rows {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        Ok(CharacterTable { class_sizes, rows })
    }

    /// The one-class table of the trivial group.
    pub fn trivial() -> CharacterTable {
        CharacterTable::new(vec![1], vec![vec![rat_int(1)]]).expect("fixed table is valid")
    }

    /// Cyclic group of order 2, classes (identity, involution).
    pub fn cyclic_2() -> CharacterTable {
        CharacterTable::new(
            vec![1, 1],
            vec![vec![rat_int(1), rat_int(1)], vec![rat_int(1), rat_int(-1)]],
        )
        .expect("fixed table is valid")
    }

    /// S₃, classes ordered (identity, transpositions, 3-cycles); rows are
    /// trivial, sign, standard.
    pub fn symmetric_3() -> CharacterTable {
        CharacterTable::new(
            vec![1, 3, 2],
            vec![
                vec![rat_int(1), rat_int(1), rat_int(1)],
                vec![rat_int(1), rat_int(-1), rat_int(1)],
                vec![rat_int(2), rat_int(0), rat_int(-1)],
            ],
        )
        .expect("fixed table is valid")
    }

    /// Dihedral group of the square, order 8, classes ordered (identity,
    /// half turn, quarter turns, axis reflections, diagonal reflections).
    pub fn dihedral_square() -> CharacterTable {
        let r = |v: [i64; 5]| v.iter().map(|&c| rat_int(c)).collect::<Vec<_>>();
        CharacterTable::new(
            vec![1, 1, 2, 2, 2],
            vec![
                r([1, 1, 1, 1, 1]),
                r([1, 1, 1, -1, -1]),
                r([1, 1, -1, 1, -1]),
                r([1, 1, -1, -1, 1]),
                r([2, -2, 0, 0, 0]),
            ],
        )
        .expect("fixed table is valid")
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn group_order(&self) -> usize {
        self.class_sizes.iter().sum()
    }
}

/// Multiplicity of each irreducible in a class function: the inner
/// products (1/|G|) Σ |class| · value · irreducible value. The function
/// is the character of a genuine representation exactly when every
/// multiplicity is a non-negative integer; see
/// [`all_nonnegative_integers`].
pub fn character_multiplicities(values: &[Rat], table: &CharacterTable) -> Result<Vec<Rat>> {
    if values.len() != table.class_count() {
        return Err(Error::Invalid(format!(
            "expected one value per class, got {} for {} classes",
            values.len(),
            table.class_count()
        )));
    }
    let order = rat_int(table.group_order() as i64);
    Ok(table
        .rows()
        .iter()
        .map(|row| {
            let mut inner = Rat::zero();
            for (c, v) in values.iter().enumerate() {
                inner += rat_int(table.class_sizes()[c] as i64) * v * &row[c];
            }
            inner / &order
        })
        .collect())
}

/// Whether every entry is a non-negative integer: the verdict that a
/// multiplicity vector certifies an actual character.
pub fn all_nonnegative_integers(values: &[Rat]) -> bool {
    values.iter().all(|v| is_integer(v) && sign(v) >= 0)
}

// An atom c·x + k rel 0 in dimension d, coefficients given as integers.
fn atom(d: usize, coeffs: &[(usize, i64)], k: i64, relation: Relation) -> Formula {
    let mut c = vec![Rat::zero(); d];
    for &(i, v) in coeffs {
        c[i] = rat_int(v);
    }
    Formula::atom(LinearForm::new(c, rat_int(k)), relation)
}

fn map2(rows: [[i64; 2]; 2], translation: [i64; 2]) -> AffineMap {
    AffineMap::new(
        rows.iter().map(|r| r.iter().map(|&c| rat_int(c)).collect()).collect(),
        translation.iter().map(|&c| rat_int(c)).collect(),
    )
    .expect("fixed shape")
}

// The symmetric group of the triangle (0,0), (1,0), (0,1): generated by
// the coordinate swap and the rotation (x,y) ↦ (1-x-y, x). Classes in
// the order of CharacterTable::symmetric_3.
fn triangle_elements() -> (Vec<AffineMap>, Vec<Vec<usize>>) {
    let id = AffineMap::identity(2);
    let r = map2([[-1, -1], [1, 0]], [1, 0]);
    let s = map2([[0, 1], [1, 0]], [0, 0]);
    let sr = s.compose(&r).expect("dimensions match");
    let srr = s.compose(&r).and_then(|m| m.compose(&r)).expect("dimensions match");
    let rr = r.compose(&r).expect("dimensions match");
    (vec![id, s, sr, srr, r, rr], vec![vec![0], vec![1, 2, 3], vec![4, 5]])
}

/// The three open edges of the triangle (0,0), (1,0), (0,1).
pub fn triangle_edges() -> PolyhedralSet {
    let d = 2;
    let open01 = |i: usize| {
        Formula::and(vec![
            atom(d, &[(i, -1)], 0, Relation::Lt),
            atom(d, &[(i, 1)], -1, Relation::Lt),
        ])
    };
    let bottom = Formula::and(vec![atom(d, &[(1, 1)], 0, Relation::Eq), open01(0)]);
    let left = Formula::and(vec![atom(d, &[(0, 1)], 0, Relation::Eq), open01(1)]);
    let hypotenuse = Formula::and(vec![
        atom(d, &[(0, 1), (1, 1)], -1, Relation::Eq),
        open01(0),
    ]);
    PolyhedralSet::new(d, Formula::or(vec![bottom, left, hypotenuse])).expect("dimension 2")
}

/// The three vertices of the same triangle.
pub fn triangle_vertices() -> PolyhedralSet {
    let points = [[0, 0], [1, 0], [0, 1]];
    let parts = points
        .iter()
        .map(|p| PolyhedralSet::single_point(&[rat_int(p[0]), rat_int(p[1])]).formula)
        .collect();
    PolyhedralSet::new(2, Formula::or(parts)).expect("dimension 2")
}

/// S₃ acting on the open triangle edges (cells of dimension 1).
pub fn triangle_edges_action() -> GroupAction {
    let (elements, classes) = triangle_elements();
    GroupAction::new(elements, classes, triangle_edges()).expect("verified action")
}

/// S₃ acting on the triangle vertices (cells of dimension 0).
pub fn triangle_vertices_action() -> GroupAction {
    let (elements, classes) = triangle_elements();
    GroupAction::new(elements, classes, triangle_vertices()).expect("verified action")
}

// The dihedral group of the square [-1,1]^2. Classes in the order of
// CharacterTable::dihedral_square.
fn square_elements() -> (Vec<AffineMap>, Vec<Vec<usize>>) {
    let id = AffineMap::identity(2);
    let r90 = map2([[0, -1], [1, 0]], [0, 0]);
    let r180 = map2([[-1, 0], [0, -1]], [0, 0]);
    let r270 = map2([[0, 1], [-1, 0]], [0, 0]);
    let flip_x = map2([[1, 0], [0, -1]], [0, 0]);
    let flip_y = map2([[-1, 0], [0, 1]], [0, 0]);
    let diag = map2([[0, 1], [1, 0]], [0, 0]);
    let antidiag = map2([[0, -1], [-1, 0]], [0, 0]);
    (
        vec![id, r180, r90, r270, flip_x, flip_y, diag, antidiag],
        vec![vec![0], vec![1], vec![2, 3], vec![4, 5], vec![6, 7]],
    )
}

/// The four open edges of the square [-1,1]².
pub fn square_edges() -> PolyhedralSet {
    let d = 2;
    let open11 = |i: usize| {
        Formula::and(vec![
            atom(d, &[(i, -1)], -1, Relation::Lt),
            atom(d, &[(i, 1)], -1, Relation::Lt),
        ])
    };
    let side = |i: usize, v: i64| {
        Formula::and(vec![atom(d, &[(i, 1)], -v, Relation::Eq), open11(1 - i)])
    };
    let parts = vec![side(0, 1), side(0, -1), side(1, 1), side(1, -1)];
    PolyhedralSet::new(d, Formula::or(parts)).expect("dimension 2")
}

/// The four vertices of the square [-1,1]².
pub fn square_vertices() -> PolyhedralSet {
    let parts = [[1, 1], [1, -1], [-1, 1], [-1, -1]]
        .iter()
        .map(|p| PolyhedralSet::single_point(&[rat_int(p[0]), rat_int(p[1])]).formula)
        .collect();
    PolyhedralSet::new(2, Formula::or(parts)).expect("dimension 2")
}

/// The dihedral group acting on the open square edges (dimension 1).
pub fn square_edges_action() -> GroupAction {
    let (elements, classes) = square_elements();
    GroupAction::new(elements, classes, square_edges()).expect("verified action")
}

/// The dihedral group acting on the square vertices (dimension 0).
pub fn square_vertices_action() -> GroupAction {
    let (elements, classes) = square_elements();
    GroupAction::new(elements, classes, square_vertices()).expect("verified action")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn affine_maps_compose_and_invert() {
        let (elements, _) = triangle_elements();
        for g in &elements {
            let inv = g.inverse().unwrap();
            assert!(g.compose(&inv).unwrap().is_identity());
            assert!(inv.compose(g).unwrap().is_identity());
        }
        let r = &elements[4];
        let p = vec![rat(1, 3), rat(1, 5)];
        assert_eq!(r.apply(&p), vec![rat(7, 15), rat(1, 3)]);
        let singular = AffineMap::new(
            vec![vec![rat_int(1), rat_int(1)], vec![rat_int(2), rat_int(2)]],
            vec![rat_int(0), rat_int(0)],
        )
        .unwrap();
        assert!(singular.inverse().is_err());
        assert!(AffineMap::new(vec![vec![rat_int(1)]], vec![rat_int(0), rat_int(0)]).is_err());
    }

    #[test]
    fn fixed_set_of_identity_is_the_whole_set() {
        for p in [triangle_edges(), triangle_vertices(), square_edges()] {
            let id = AffineMap::identity(2);
            assert_eq!(
                euler_measure_fiber(&fixed_set(&p, &id).unwrap()),
                euler_measure_fiber(&p)
            );
        }
        let wrong_dim = AffineMap::identity(3);
        assert!(fixed_set(&triangle_edges(), &wrong_dim).is_err());
    }

    #[test]
    fn triangle_edge_traces_match_hand_computation() {
        let p = triangle_edges();
        let (elements, _) = triangle_elements();
        assert_eq!(trace(&p, &elements[0]).unwrap(), Int::from(-3));
        assert_eq!(trace(&p, &elements[1]).unwrap(), Int::from(1));
        assert_eq!(trace(&p, &elements[4]).unwrap(), Int::from(0));
        // the flip fixes exactly the midpoint of the hypotenuse
        let fixed = fixed_set(&p, &elements[1]).unwrap();
        assert!(fixed.contains(&[rat(1, 2), rat(1, 2)]));
    }

    #[test]
    fn traces_are_constant_on_conjugacy_classes() {
        for action in [triangle_edges_action(), triangle_vertices_action()] {
            for class in action.conjugacy_classes() {
                let traces: Vec<Int> = class
                    .iter()
                    .map(|&i| trace(action.target(), &action.elements()[i]).unwrap())
                    .collect();
                assert!(traces.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    fn group_action_validation_rejects_broken_input() {
        let (elements, classes) = triangle_elements();
        // dropping an element breaks closure
        assert!(GroupAction::new(
            elements[..5].to_vec(),
            vec![vec![0], vec![1, 2, 3], vec![4]],
            triangle_edges()
        )
        .is_err());
        // a shifted target is not invariant
        let shifted = PolyhedralSet::single_point(&[rat_int(5), rat_int(5)]);
        assert!(GroupAction::new(elements.clone(), classes.clone(), shifted).is_err());
        // a merged class partition is not the conjugacy partition
        assert!(GroupAction::new(
            elements.clone(),
            vec![vec![0, 1, 2, 3], vec![4, 5]],
            triangle_edges()
        )
        .is_err());
        assert!(GroupAction::new(elements, classes, triangle_edges()).is_ok());
    }

    #[test]
    fn character_table_validation() {
        for table in [
            CharacterTable::trivial(),
            CharacterTable::cyclic_2(),
            CharacterTable::symmetric_3(),
            CharacterTable::dihedral_square(),
        ] {
            assert_eq!(table.rows().len(), table.class_count());
        }
        // a non-orthonormal row is rejected
        assert!(CharacterTable::new(
            vec![1, 3, 2],
            vec![
                vec![rat_int(1), rat_int(1), rat_int(1)],
                vec![rat_int(1), rat_int(-1), rat_int(1)],
                vec![rat_int(2), rat_int(0), rat_int(1)],
            ],
        )
        .is_err());
        assert!(CharacterTable::new(vec![1, 3], vec![vec![rat_int(1), rat_int(1)]]).is_err());
    }

    #[test]
    fn s3_multiplicities_match_hand_computation() {
        let table = CharacterTable::symmetric_3();
        let m = character_multiplicities(&[rat_int(3), rat_int(-1), rat_int(0)], &table).unwrap();
        assert_eq!(m, vec![rat_int(0), rat_int(1), rat_int(1)]);
        assert!(all_nonnegative_integers(&m));
        let trivial =
            character_multiplicities(&[rat_int(1), rat_int(1), rat_int(1)], &table).unwrap();
        assert_eq!(trivial, vec![rat_int(1), rat_int(0), rat_int(0)]);
        let skew = character_multiplicities(&[rat_int(0), rat_int(1), rat_int(0)], &table).unwrap();
        assert!(!all_nonnegative_integers(&skew));
        assert!(character_multiplicities(&[rat_int(1)], &table).is_err());
    }

    #[test]
    fn cell_traces_decompose_as_characters() {
        // (action, cell dimension, table, expected multiplicities)
        let instances: Vec<(GroupAction, usize, CharacterTable, Vec<i64>)> = vec![
            (triangle_edges_action(), 1, CharacterTable::symmetric_3(), vec![0, 1, 1]),
            (triangle_vertices_action(), 0, CharacterTable::symmetric_3(), vec![1, 0, 1]),
            (square_edges_action(), 1, CharacterTable::dihedral_square(), vec![0, 1, 0, 1, 1]),
            (square_vertices_action(), 0, CharacterTable::dihedral_square(), vec![1, 0, 0, 1, 1]),
        ];
        for (action, k, table, expected) in instances {
            let traces = action.class_traces().unwrap();
            let rho: Vec<Rat> = traces
                .iter()
                .map(|t| {
                    let signed = if k % 2 == 1 { -t.clone() } else { t.clone() };
                    Rat::from(signed)
                })
                .collect();
            let m = character_multiplicities(&rho, &table).unwrap();
            assert!(all_nonnegative_integers(&m));
            let expected: Vec<Rat> = expected.into_iter().map(rat_int).collect();
            assert_eq!(m, expected);
        }
    }

    #[test]
    fn square_edge_traces_match_hand_computation() {
        let action = square_edges_action();
        let traces = action.class_traces().unwrap();
        let expected: Vec<Int> =
            [-4, 0, 0, 2, 0].iter().map(|&t| Int::from(t)).collect();
        assert_eq!(traces, expected);
        let vertex_traces = square_vertices_action().class_traces().unwrap();
        let expected: Vec<Int> = [4, 0, 0, 0, 2].iter().map(|&t| Int::from(t)).collect();
        assert_eq!(vertex_traces, expected);
    }
}
