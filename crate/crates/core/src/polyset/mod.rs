//! Semilinear subsets of ℝ^d.
//!
//! A set is described by a Boolean combination (and, or, not) of atomic
//! constraints `form = 0`, `form < 0`, `form ≤ 0`, where `form` is an
//! affine-linear form with rational coefficients. This class is closed
//! under the Boolean operations, products, and coordinate substitution,
//! and every Euler-measure computation in the crate works on it.
//!
//! Strict and non-strict relations are both kept: the Euler measure
//! treated here is a valuation, not a homotopy invariant, so `(0,1)` and
//! `[0,1]` are genuinely different sets (χ = -1 and χ = 1).

mod line;

pub use line::{canonicalize_line, CanonicalLine, LinePiece};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{sign, Rat};

/// Affine form `coeffs · x + constant` on ℝ^d with d = `coeffs.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Self {
        LinearForm { coeffs, constant }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.dim(), "point dimension mismatch");
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(point) {
            if !c.is_zero() {
                acc += c * x;
            }
        }
        acc
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The same form with the last coordinate fixed to `value`.
    pub fn substitute_last(&self, value: &Rat) -> LinearForm {
        assert!(self.dim() >= 1, "cannot substitute into a 0-dimensional form");
        let (last, rest) = self.coeffs.split_last().unwrap();
        LinearForm {
            coeffs: rest.to_vec(),
            constant: &self.constant + last * value,
        }
    }

    /// Scale so the first nonzero coefficient is ±1; identifies forms that
    /// cut the same hyperplane with the same orientation.
    pub fn normalized(&self) -> LinearForm {
        let lead = self.coeffs.iter().find(|c| !c.is_zero());
        let scale = match lead {
            Some(c) => {
                let mut s = c.clone();
                if sign(&s) < 0 {
                    s = -s;
                }
                s
            }
            None => return self.clone(),
        };
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| c / &scale).collect(),
            constant: &self.constant / &scale,
        }
    }

    /// Canonical representative of the hyperplane `self = 0`: normalized with
    /// the first nonzero coefficient equal to +1, so `f` and `-2f` collapse.
    pub fn hyperplane_key(&self) -> Option<LinearForm> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?;
        let scale = lead.clone();
        Some(LinearForm {
            coeffs: self.coeffs.iter().map(|c| c / &scale).collect(),
            constant: &self.constant / &scale,
        })
    }
}

impl std::ops::Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            constant: -self.constant,
        }
    }
}

/// Relation of an atom: the form compared to zero.
///
/// Only these three appear internally; `≥`, `>`, and `≠` are rewritten at
/// construction time by negating the form or splitting into a disjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Lt,
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub form: LinearForm,
    pub relation: Relation,
}

impl Atom {
    pub fn new(form: LinearForm, relation: Relation) -> Self {
        Atom { form, relation }
    }

    pub fn holds_at(&self, point: &[Rat]) -> bool {
        let v = self.form.eval(point);
        match self.relation {
            Relation::Eq => v.is_zero(),
            Relation::Lt => sign(&v) < 0,
            Relation::Le => sign(&v) <= 0,
        }
    }

    /// Truth value if the form is constant, `None` otherwise.
    pub fn constant_truth(&self) -> Option<bool> {
        if !self.form.is_constant() {
            return None;
        }
        let s = sign(&self.form.constant);
        Some(match self.relation {
            Relation::Eq => s == 0,
            Relation::Lt => s < 0,
            Relation::Le => s <= 0,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(form: LinearForm, relation: Relation) -> Formula {
        Formula::Atom(Atom::new(form, relation))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        Formula::And(fs)
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        Formula::Or(fs)
    }

    pub fn holds_at(&self, point: &[Rat]) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => a.holds_at(point),
            Formula::Not(f) => !f.holds_at(point),
            Formula::And(fs) => fs.iter().all(|f| f.holds_at(point)),
            Formula::Or(fs) => fs.iter().any(|f| f.holds_at(point)),
        }
    }

    fn visit_atoms<'a>(&'a self, visit: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => visit(a),
            Formula::Not(f) => f.visit_atoms(visit),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.visit_atoms(visit);
                }
            }
        }
    }

    pub(crate) fn map_atoms(&self, map: &impl Fn(&Atom) -> Formula) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => map(a),
            Formula::Not(f) => Formula::not(f.map_atoms(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.map_atoms(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.map_atoms(map)).collect()),
        }
    }

    /// Fold atoms with constant forms into True/False and propagate through
    /// the connectives. Purely syntactic; no feasibility reasoning.
    pub fn simplified(&self) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => match a.constant_truth() {
                Some(true) => Formula::True,
                Some(false) => Formula::False,
                None => Formula::Atom(a.clone()),
            },
            Formula::Not(f) => match f.simplified() {
                Formula::True => Formula::False,
                Formula::False => Formula::True,
                g => Formula::not(g),
            },
            Formula::And(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    match f.simplified() {
                        Formula::True => {}
                        Formula::False => return Formula::False,
                        g => out.push(g),
                    }
                }
                match out.len() {
                    0 => Formula::True,
                    1 => out.pop().unwrap(),
                    _ => Formula::And(out),
                }
            }
            Formula::Or(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    match f.simplified() {
                        Formula::False => {}
                        Formula::True => return Formula::True,
                        g => out.push(g),
                    }
                }
                match out.len() {
                    0 => Formula::False,
                    1 => out.pop().unwrap(),
                    _ => Formula::Or(out),
                }
            }
        }
    }
}

/// A semilinear subset of ℝ^dim.
///
/// The empty set keeps its ambient dimension (`formula` equivalent to
/// False); χ(∅) = 0 in every ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralSet {
    pub dim: usize,
    pub formula: Formula,
}

impl PolyhedralSet {
    /// Builds the set, checking that every atom's form has exactly `dim`
    /// coefficients.
    pub fn new(dim: usize, formula: Formula) -> Result<Self> {
        let mut bad = None;
        formula.visit_atoms(&mut |a| {
            if a.form.dim() != dim && bad.is_none() {
                bad = Some(a.form.dim());
            }
        });
        if let Some(found) = bad {
            return Err(Error::DimensionMismatch { expected: dim, found });
        }
        Ok(PolyhedralSet { dim, formula })
    }

    pub fn whole_space(dim: usize) -> Self {
        PolyhedralSet { dim, formula: Formula::True }
    }

    pub fn empty(dim: usize) -> Self {
        PolyhedralSet { dim, formula: Formula::False }
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        assert_eq!(point.len(), self.dim, "point dimension mismatch");
        self.formula.holds_at(point)
    }

    fn check_same_dim(&self, other: &PolyhedralSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn union(&self, other: &PolyhedralSet) -> Result<PolyhedralSet> {
        self.check_same_dim(other)?;
        Ok(PolyhedralSet {
            dim: self.dim,
            formula: Formula::or(vec![self.formula.clone(), other.formula.clone()]),
        })
    }

    pub fn intersection(&self, other: &PolyhedralSet) -> Result<PolyhedralSet> {
        self.check_same_dim(other)?;
        Ok(PolyhedralSet {
            dim: self.dim,
            formula: Formula::and(vec![self.formula.clone(), other.formula.clone()]),
        })
    }

    pub fn complement(&self) -> PolyhedralSet {
        PolyhedralSet { dim: self.dim, formula: Formula::not(self.formula.clone()) }
    }

    pub fn difference(&self, other: &PolyhedralSet) -> Result<PolyhedralSet> {
        self.intersection(&other.complement())
    }

    /// Cartesian product in ℝ^(m+n): `self`'s atoms keep their coordinates,
    /// `other`'s are shifted past them.
    pub fn product(&self, other: &PolyhedralSet) -> PolyhedralSet {
        let dim = self.dim + other.dim;
        let left = embed_formula(&self.formula, self.dim, 0, dim);
        let right = embed_formula(&other.formula, other.dim, self.dim, dim);
        PolyhedralSet { dim, formula: Formula::and(vec![left, right]) }
    }

    /// Disjoint sum inside ℝ^(dim+1): `self × {1} ∪ other × {2}`, the extra
    /// tag being the new last coordinate. Requires equal ambient dimensions.
    pub fn disjoint_sum(&self, other: &PolyhedralSet) -> Result<PolyhedralSet> {
        self.check_same_dim(other)?;
        let dim = self.dim + 1;
        let tag = |v: i64| {
            let mut coeffs = vec![Rat::zero(); dim];
            coeffs[dim - 1] = crate::rat::rat_int(1);
            Formula::atom(LinearForm::new(coeffs, crate::rat::rat_int(-v)), Relation::Eq)
        };
        let left = embed_formula(&self.formula, self.dim, 0, dim);
        let right = embed_formula(&other.formula, other.dim, 0, dim);
        Ok(PolyhedralSet {
            dim,
            formula: Formula::or(vec![
                Formula::and(vec![left, tag(1)]),
                Formula::and(vec![right, tag(2)]),
            ]),
        })
    }

    /// The fiber over `value` in the last coordinate, one dimension down.
    pub fn substitute_last(&self, value: &Rat) -> PolyhedralSet {
        assert!(self.dim >= 1, "cannot substitute into a 0-dimensional set");
        let formula = self
            .formula
            .map_atoms(&|a| Formula::Atom(Atom::new(a.form.substitute_last(value), a.relation)))
            .simplified();
        PolyhedralSet { dim: self.dim - 1, formula }
    }

    /// Image under the coordinate permutation sending axis i to `perm[i]`.
    pub fn permute_coords(&self, perm: &[usize]) -> PolyhedralSet {
        assert_eq!(perm.len(), self.dim, "permutation length mismatch");
        let formula = self.formula.map_atoms(&|a| {
            let mut coeffs = vec![Rat::zero(); self.dim];
            for (i, c) in a.form.coeffs.iter().enumerate() {
                coeffs[perm[i]] = c.clone();
            }
            Formula::Atom(Atom::new(LinearForm::new(coeffs, a.form.constant.clone()), a.relation))
        });
        PolyhedralSet { dim: self.dim, formula }
    }

    /// Constant-folds atoms whose forms have no variables left.
    pub fn simplified(&self) -> PolyhedralSet {
        PolyhedralSet { dim: self.dim, formula: self.formula.simplified() }
    }

    /// The distinct hyperplanes cut out by the formula's non-constant atoms,
    /// each in canonical orientation (`f` and `-2f` appear once).
    pub fn hyperplanes(&self) -> Vec<LinearForm> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        self.formula.visit_atoms(&mut |a| {
            if let Some(key) = a.form.hyperplane_key() {
                if seen.insert(key.clone()) {
                    out.push(key);
                }
            }
        });
        out
    }
}

fn embed_formula(f: &Formula, from_dim: usize, offset: usize, to_dim: usize) -> Formula {
    f.map_atoms(&|a| {
        assert_eq!(a.form.dim(), from_dim);
        let mut coeffs = vec![Rat::zero(); to_dim];
        for (i, c) in a.form.coeffs.iter().enumerate() {
            coeffs[offset + i] = c.clone();
        }
        Formula::Atom(Atom::new(LinearForm::new(coeffs, a.form.constant.clone()), a.relation))
    })
}

/// Convenience constructors for tests and built-in instances.
impl PolyhedralSet {
    /// `{x ∈ ℝ : lo < x < hi}` as a 1-dimensional set.
    pub fn open_interval(lo: Rat, hi: Rat) -> PolyhedralSet {
        let x = |c: Rat, k: Rat| LinearForm::new(vec![c], k);
        PolyhedralSet {
            dim: 1,
            formula: Formula::and(vec![
                Formula::atom(x(crate::rat::rat_int(-1), lo), Relation::Lt),
                Formula::atom(x(crate::rat::rat_int(1), -hi), Relation::Lt),
            ]),
        }
    }

    /// `{x ∈ ℝ : lo ≤ x ≤ hi}` as a 1-dimensional set.
    pub fn closed_interval(lo: Rat, hi: Rat) -> PolyhedralSet {
        let x = |c: Rat, k: Rat| LinearForm::new(vec![c], k);
        PolyhedralSet {
            dim: 1,
            formula: Formula::and(vec![
                Formula::atom(x(crate::rat::rat_int(-1), lo), Relation::Le),
                Formula::atom(x(crate::rat::rat_int(1), -hi), Relation::Le),
            ]),
        }
    }

    /// The single point `{p}` in ℝ^d.
    pub fn single_point(p: &[Rat]) -> PolyhedralSet {
        let dim = p.len();
        let eqs = p
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut coeffs = vec![Rat::zero(); dim];
                coeffs[i] = crate::rat::rat_int(1);
                Formula::atom(LinearForm::new(coeffs, -v.clone()), Relation::Eq)
            })
            .collect();
        PolyhedralSet { dim, formula: Formula::and(eqs) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn pt(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn membership_on_interval_endpoints() {
        let open = PolyhedralSet::open_interval(rat_int(0), rat_int(1));
        assert!(!open.contains(&pt(&[0])));
        assert!(open.contains(&[rat(1, 2)]));
        assert!(!open.contains(&pt(&[1])));
        let closed = PolyhedralSet::closed_interval(rat_int(0), rat_int(1));
        assert!(closed.contains(&pt(&[0])));
        assert!(closed.contains(&pt(&[1])));
        assert!(!closed.contains(&pt(&[2])));
    }

    #[test]
    fn set_algebra_membership() {
        let a = PolyhedralSet::open_interval(rat_int(0), rat_int(2));
        let b = PolyhedralSet::open_interval(rat_int(1), rat_int(3));
        let half = [rat(1, 2)];
        let mid = [rat(3, 2)];
        let late = [rat(5, 2)];
        let union = a.union(&b).unwrap();
        assert!(union.contains(&half) && union.contains(&mid) && union.contains(&late));
        let inter = a.intersection(&b).unwrap();
        assert!(!inter.contains(&half) && inter.contains(&mid) && !inter.contains(&late));
        let diff = a.difference(&b).unwrap();
        assert!(diff.contains(&half) && !diff.contains(&mid) && !diff.contains(&late));
        assert!(a.complement().contains(&late));
    }

    #[test]
    fn product_membership() {
        let a = PolyhedralSet::open_interval(rat_int(0), rat_int(1));
        let b = PolyhedralSet::closed_interval(rat_int(2), rat_int(3));
        let p = a.product(&b);
        assert_eq!(p.dim, 2);
        assert!(p.contains(&[rat(1, 2), rat_int(2)]));
        assert!(!p.contains(&[rat_int(0), rat_int(2)]));
        assert!(!p.contains(&[rat(1, 2), rat_int(4)]));
    }

    #[test]
    fn disjoint_sum_fibers() {
        let a = PolyhedralSet::open_interval(rat_int(0), rat_int(1));
        let s = a.disjoint_sum(&a).unwrap();
        assert_eq!(s.dim, 2);
        // Fiber over tag 1 and tag 2 is (0,1); over anything else, empty.
        assert!(s.substitute_last(&rat_int(1)).contains(&[rat(1, 2)]));
        assert!(s.substitute_last(&rat_int(2)).contains(&[rat(1, 2)]));
        assert_eq!(s.substitute_last(&rat(3, 2)).formula, Formula::False);
    }

    #[test]
    fn substitute_last_on_triangle_slab() {
        // {(x, y) : 0 < y, y < x, x < 1} at y = 1/4 is (1/4, 1).
        let y_pos = Formula::atom(LinearForm::new(vec![rat_int(0), rat_int(-1)], rat_int(0)), Relation::Lt);
        let y_lt_x = Formula::atom(LinearForm::new(vec![rat_int(-1), rat_int(1)], rat_int(0)), Relation::Lt);
        let x_lt_1 = Formula::atom(LinearForm::new(vec![rat_int(1), rat_int(0)], rat_int(-1)), Relation::Lt);
        let s = PolyhedralSet::new(2, Formula::and(vec![y_pos, y_lt_x, x_lt_1])).unwrap();
        let fiber = s.substitute_last(&rat(1, 4));
        assert!(!fiber.contains(&[rat(1, 4)]));
        assert!(fiber.contains(&[rat(1, 2)]));
        assert!(!fiber.contains(&[rat_int(1)]));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = PolyhedralSet::open_interval(rat_int(0), rat_int(1));
        let b = a.product(&a);
        assert!(matches!(a.union(&b), Err(Error::DimensionMismatch { expected: 1, found: 2 })));
        assert!(matches!(
            PolyhedralSet::new(2, Formula::atom(LinearForm::new(vec![rat_int(1)], rat_int(0)), Relation::Eq)),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn simplify_folds_constant_atoms() {
        let truthy = Formula::atom(LinearForm::new(vec![rat_int(0)], rat_int(-1)), Relation::Lt);
        let falsy = Formula::atom(LinearForm::new(vec![rat_int(0)], rat_int(1)), Relation::Lt);
        let live = Formula::atom(LinearForm::new(vec![rat_int(1)], rat_int(0)), Relation::Lt);
        let f = Formula::and(vec![truthy, Formula::or(vec![falsy.clone(), live.clone()])]);
        assert_eq!(f.simplified(), live);
        assert_eq!(Formula::not(falsy).simplified(), Formula::True);
    }

    #[test]
    fn permute_coords_moves_membership() {
        let a = PolyhedralSet::open_interval(rat_int(0), rat_int(1));
        let b = PolyhedralSet::open_interval(rat_int(2), rat_int(3));
        let p = a.product(&b);
        let swapped = p.permute_coords(&[1, 0]);
        assert!(swapped.contains(&[rat(5, 2), rat(1, 2)]));
        assert!(!swapped.contains(&[rat(1, 2), rat(5, 2)]));
    }

    #[test]
    fn hyperplanes_dedup_orientation_and_scale() {
        let f1 = LinearForm::new(vec![rat_int(1), rat_int(1)], rat_int(-1));
        let f2 = LinearForm::new(vec![rat_int(-2), rat_int(-2)], rat_int(2));
        let g = LinearForm::new(vec![rat_int(1), rat_int(0)], rat_int(0));
        let s = PolyhedralSet::new(
            2,
            Formula::or(vec![
                Formula::atom(f1, Relation::Lt),
                Formula::atom(f2, Relation::Le),
                Formula::atom(g, Relation::Eq),
            ]),
        )
        .unwrap();
        assert_eq!(s.hyperplanes().len(), 2);
    }
}
