//! Exact feasibility of linear constraint systems.
//!
//! A system is a conjunction of atoms `form = 0`, `form < 0`, `form ≤ 0`.
//! Variables are eliminated one at a time: through an equality by exact
//! substitution when one is available, otherwise by Fourier–Motzkin
//! combination of every lower bound with every upper bound (two strict
//! bounds combine to a strict one). Eliminating all variables decides
//! feasibility, and replaying the stages backwards yields an exact
//! rational witness. Projecting onto a single kept variable yields that
//! coordinate's exact range, which is how face boundedness is decided.
//!
//! Sizes here are desk scale (a dozen constraints, dimension ≤ 5), so the
//! quadratic growth of Fourier–Motzkin is tamed by per-stage
//! normalization and deduplication alone.

use std::collections::HashMap;

use num_traits::Zero;

use crate::polyset::{Atom, LinearForm, Relation};
use crate::rat::{midpoint, rat_int, sign, Rat};

/// One bound on a single variable, with strictness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: Rat,
    pub strict: bool,
}

/// Exact range of one coordinate over a feasible system's solution set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarRange {
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
}

impl VarRange {
    pub fn is_bounded(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }
}

enum Stage {
    Subst { var: usize, eq: Atom },
    Bounds { var: usize, lowers: Vec<Atom>, uppers: Vec<Atom> },
}

/// Conjunction of linear constraints on ℝ^dim.
pub struct System {
    dim: usize,
    atoms: Vec<Atom>,
}

impl System {
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Self {
        for a in &atoms {
            assert_eq!(a.form.dim(), dim, "constraint dimension mismatch");
        }
        System { dim, atoms }
    }

    /// A point satisfying every constraint, or `None` if infeasible.
    pub fn witness(&self) -> Option<Vec<Rat>> {
        let mut current = self.atoms.clone();
        let mut stages = Vec::new();
        for var in (0..self.dim).rev() {
            current = eliminate(current, var, &mut stages)?;
        }
        if !drain_constants(&mut current) {
            return None;
        }
        debug_assert!(current.is_empty());

        let mut values = vec![Rat::zero(); self.dim];
        for stage in stages.iter().rev() {
            match stage {
                Stage::Subst { var, eq } => {
                    let rest = eval_without(&eq.form, &values, *var);
                    values[*var] = -rest / &eq.form.coeffs[*var];
                }
                Stage::Bounds { var, lowers, uppers } => {
                    let lo = lowers
                        .iter()
                        .map(|a| bound_from(a, &values, *var))
                        .max_by(tighter_lower);
                    let hi = uppers
                        .iter()
                        .map(|a| bound_from(a, &values, *var))
                        .min_by(tighter_upper);
                    values[*var] = pick_between(lo.as_ref(), hi.as_ref());
                }
            }
        }
        Some(values)
    }

    pub fn is_feasible(&self) -> bool {
        self.witness().is_some()
    }

    /// Range of variable `target` over the solution set. `None` if the
    /// system is infeasible.
    pub fn coord_range(&self, target: usize) -> Option<VarRange> {
        assert!(target < self.dim);
        let mut current = self.atoms.clone();
        let mut stages = Vec::new();
        for var in (0..self.dim).rev() {
            if var != target {
                current = eliminate(current, var, &mut stages)?;
            }
        }
        if !drain_constants(&mut current) {
            return None;
        }
        // Remaining atoms involve only `target`.
        let zeros = vec![Rat::zero(); self.dim];
        let mut lower: Option<Bound> = None;
        let mut upper: Option<Bound> = None;
        for a in &current {
            let c = &a.form.coeffs[target];
            debug_assert!(!c.is_zero());
            let b = bound_from(a, &zeros, target);
            match (a.relation, sign(c)) {
                (Relation::Eq, _) => {
                    // x = b pins the coordinate; acts as both bounds.
                    let eq = Bound { value: b.value.clone(), strict: false };
                    lower = Some(max_bound(lower.take(), eq.clone(), tighter_lower));
                    upper = Some(min_bound(upper.take(), eq, tighter_upper));
                }
                (_, 1) => upper = Some(min_bound(upper.take(), b, tighter_upper)),
                (_, -1) => lower = Some(max_bound(lower.take(), b, tighter_lower)),
                _ => unreachable!(),
            }
        }
        // Feasibility of the final single-variable system.
        if let (Some(l), Some(u)) = (&lower, &upper) {
            if l.value > u.value || (l.value == u.value && (l.strict || u.strict)) {
                return None;
            }
        }
        Some(VarRange { lower, upper })
    }
}

fn max_bound(acc: Option<Bound>, next: Bound, ord: fn(&Bound, &Bound) -> std::cmp::Ordering) -> Bound {
    match acc {
        Some(b) if ord(&b, &next) == std::cmp::Ordering::Greater => b,
        _ => next,
    }
}

fn min_bound(acc: Option<Bound>, next: Bound, ord: fn(&Bound, &Bound) -> std::cmp::Ordering) -> Bound {
    match acc {
        Some(b) if ord(&b, &next) == std::cmp::Ordering::Less => b,
        _ => next,
    }
}

/// Orders lower bounds by tightness: larger value, then strict over not.
fn tighter_lower(a: &Bound, b: &Bound) -> std::cmp::Ordering {
    a.value.cmp(&b.value).then_with(|| a.strict.cmp(&b.strict))
}

/// Orders upper bounds by tightness reversed: smaller value is "greater"
/// tightness, so we take `min_by` with value order, strict first on ties.
fn tighter_upper(a: &Bound, b: &Bound) -> std::cmp::Ordering {
    a.value.cmp(&b.value).then_with(|| b.strict.cmp(&a.strict))
}

/// The bound that atom `a` (with nonzero coefficient on `var`) puts on
/// `var` once every other variable is fixed to `values`.
fn bound_from(a: &Atom, values: &[Rat], var: usize) -> Bound {
    let rest = eval_without(&a.form, values, var);
    Bound { value: -rest / &a.form.coeffs[var], strict: a.relation == Relation::Lt }
}

fn eval_without(form: &LinearForm, values: &[Rat], skip: usize) -> Rat {
    let mut acc = form.constant.clone();
    for (j, c) in form.coeffs.iter().enumerate() {
        if j != skip && !c.is_zero() {
            acc += c * &values[j];
        }
    }
    acc
}

fn pick_between(lo: Option<&Bound>, hi: Option<&Bound>) -> Rat {
    match (lo, hi) {
        (None, None) => Rat::zero(),
        (Some(l), None) => &l.value + rat_int(1),
        (None, Some(u)) => &u.value - rat_int(1),
        (Some(l), Some(u)) => {
            if l.value == u.value {
                debug_assert!(!l.strict && !u.strict, "empty interval slipped past elimination");
                l.value.clone()
            } else {
                midpoint(&l.value, &u.value)
            }
        }
    }
}

/// Checks and removes constant atoms; `false` means one of them is violated.
fn drain_constants(atoms: &mut Vec<Atom>) -> bool {
    let mut ok = true;
    atoms.retain(|a| match a.constant_truth() {
        Some(true) => false,
        Some(false) => {
            ok = false;
            false
        }
        None => true,
    });
    ok
}

/// One elimination step; returns the reduced system or `None` when a
/// constant contradiction surfaced.
fn eliminate(mut atoms: Vec<Atom>, var: usize, stages: &mut Vec<Stage>) -> Option<Vec<Atom>> {
    if !drain_constants(&mut atoms) {
        return None;
    }
    let eq_idx = atoms
        .iter()
        .position(|a| a.relation == Relation::Eq && !a.form.coeffs[var].is_zero());
    let next = if let Some(i) = eq_idx {
        let eq = atoms.remove(i);
        let pivot = eq.form.coeffs[var].clone();
        let reduced = atoms
            .into_iter()
            .map(|a| {
                let c = a.form.coeffs[var].clone();
                if c.is_zero() {
                    a
                } else {
                    combine(&a, &eq, &(-&c / &pivot))
                }
            })
            .collect();
        stages.push(Stage::Subst { var, eq });
        reduced
    } else {
        let mut passes = Vec::new();
        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        for a in atoms {
            match sign(&a.form.coeffs[var]) {
                0 => passes.push(a),
                1 => uppers.push(a),
                _ => lowers.push(a),
            }
        }
        for l in &lowers {
            for u in &uppers {
                // beta·l + (-alpha)·u: positive multiples of each side, and
                // the coefficient on var is beta·alpha + (-alpha)·beta = 0.
                let alpha = l.form.coeffs[var].clone();
                let beta = u.form.coeffs[var].clone();
                passes.push(combine_scaled(u, &-alpha, l, &beta));
            }
        }
        stages.push(Stage::Bounds { var, lowers, uppers });
        passes
    };
    Some(dedup(next))
}

/// `a + factor · eq`, keeping `a`'s relation (valid since `eq` is an equality).
fn combine(a: &Atom, eq: &Atom, factor: &Rat) -> Atom {
    let coeffs = a
        .form
        .coeffs
        .iter()
        .zip(&eq.form.coeffs)
        .map(|(x, y)| x + factor * y)
        .collect();
    let constant = &a.form.constant + factor * &eq.form.constant;
    Atom::new(LinearForm::new(coeffs, constant), a.relation)
}

/// `su · u + sl · l` with `su, sl > 0`; strict wins when either side is strict.
fn combine_scaled(u: &Atom, su: &Rat, l: &Atom, sl: &Rat) -> Atom {
    debug_assert!(sign(su) > 0 && sign(sl) > 0);
    let coeffs = l
        .form
        .coeffs
        .iter()
        .zip(&u.form.coeffs)
        .map(|(x, y)| sl * x + su * y)
        .collect();
    let constant = sl * &l.form.constant + su * &u.form.constant;
    let relation = if l.relation == Relation::Lt || u.relation == Relation::Lt {
        Relation::Lt
    } else {
        Relation::Le
    };
    Atom::new(LinearForm::new(coeffs, constant), relation)
}

/// Normalize and deduplicate. `f ≤ 0` together with `f < 0` collapses to
/// the strict one (their conjunction); equalities keep their own key so a
/// contradiction like `f = 0 ∧ f < 0` is preserved for later detection.
fn dedup(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut best: HashMap<(LinearForm, bool), Relation> = HashMap::new();
    let mut order = Vec::new();
    for a in atoms {
        let key = (a.form.normalized(), a.relation == Relation::Eq);
        match best.get_mut(&key) {
            None => {
                best.insert(key.clone(), a.relation);
                order.push(key);
            }
            Some(rel) => {
                if *rel == Relation::Le && a.relation == Relation::Lt {
                    *rel = Relation::Lt;
                }
            }
        }
    }
    order
        .into_iter()
        .map(|key| {
            let rel = best[&key];
            Atom::new(key.0, rel)
        })
        .collect()
}
