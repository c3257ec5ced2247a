//! Rational-function calculus for counting series.
//!
//! An infinite Eulerian sum V - E + F - ... is read off as the value of
//! its rational generating function at t = -1, and a signed series of
//! stratum measures as the value at t = +1. Regularization here is
//! nothing more than exact evaluation after full cancellation; there is
//! no analytic machinery, because every in-scope series is rational.
//!
//! The same polynomials also carry the σ-polytope semiring: formal cell
//! complexes modulo the subdivision move tᵏ ∼ 2tᵏ + tᵏ⁻¹ (a k-cell
//! splits into two k-cells and a separating (k-1)-cell). Two polynomial
//! series are equivalent exactly when they share degree and value at -1;
//! two infinite ones when they differ by a polynomial. On top of that
//! sit the choose-2 transform, whose regularized value realizes
//! "χ choose 2", and the map-space series m^{f₀} (m/(1-(m²-1)t))^{f₁}.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{is_integer, rat, rat_int, Rat};

/// Polynomial over ℚ; `coeffs[i]` multiplies tⁱ, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial t.
    pub fn t() -> Self {
        Polynomial { coeffs: vec![Rat::zero(), Rat::one()] }
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// f(tᵏ): spreads the coefficients k positions apart.
    pub fn compose_power(&self, k: usize) -> Polynomial {
        assert!(k >= 1, "substituting t^0 is not a series operation");
        let mut coeffs = vec![Rat::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Polynomial::new(coeffs)
    }

    pub fn scaled(&self, factor: &Rat) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn pow(&self, n: usize) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact long division: `self = q * div + r` with deg r < deg div.
    pub fn divrem(&self, div: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / lead;
            for (i, c) in div.coeffs.iter().enumerate() {
                let sub = &factor * c;
                rem[k + i] = &rem[k + i] - sub;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            quo[k] = factor;
        }
        (Polynomial::new(quo), Polynomial::new(rem))
    }

    /// Monic greatest common divisor (1 when coprime, 0 only for gcd(0,0)).
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        match a.leading() {
            Some(lead) => {
                let inv = Rat::one() / lead;
                a.scaled(&inv)
            }
            None => a,
        }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coefficient(i) + other.coefficient(i)).collect())
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coefficient(i) - other.coefficient(i)).collect())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::fmt::Display for Polynomial {
    /// Renders like `2+6t+18t^2` or `1-3t`; `0` for the zero polynomial.
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(out, "-")?;
                }
            } else if c.is_negative() {
                write!(out, "-")?;
            } else {
                write!(out, "+")?;
            }
            first = false;
            if !mag.is_one() || i == 0 {
                write!(out, "{}", crate::rat::format_rat(&mag))?;
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

/// Quotient of two polynomials in canonical form: numerator and
/// denominator coprime, denominator monic and nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".to_string()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Polynomial::one() };
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, den) = if g.degree() > Some(0) {
            (num.divrem(&g).0, den.divrem(&g).0)
        } else {
            (num, den)
        };
        let inv = Rat::one() / den.leading().expect("denominator is nonzero");
        RationalFunction { num: num.scaled(&inv), den: den.scaled(&inv) }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The numerator when the denominator is 1, i.e. the function is a
    /// polynomial.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// f(tᵏ).
    pub fn compose_power(&self, k: usize) -> Self {
        Self::normalized(self.num.compose_power(k), self.den.compose_power(k))
    }

    /// Exact value at `p`. Since numerator and denominator are coprime, a
    /// vanishing denominator is a genuine pole.
    pub fn evaluate(&self, p: &Rat) -> Result<Rat> {
        let d = self.den.evaluate(p);
        if d.is_zero() {
            return Err(Error::Pole { at: p.clone() });
        }
        Ok(self.num.evaluate(p) / d)
    }

    /// First `n` Taylor coefficients at t = 0.
    pub fn prefix_coefficients(&self, n: usize) -> Result<Vec<Rat>> {
        let d0 = self.den.coefficient(0);
        if d0.is_zero() {
            return Err(Error::ExpansionAtZero);
        }
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.num.coefficient(k);
            for j in 1..=k.min(self.den.coefficients().len().saturating_sub(1)) {
                acc -= self.den.coefficient(j) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }
}

impl std::ops::Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
}

impl std::ops::Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
}

impl std::ops::Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &other.num, &self.den * &other.den)
    }
}

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl RationalFunction {
    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::Invalid("division by the zero function".to_string()));
        }
        Ok(RationalFunction::normalized(&self.num * &other.den, &self.den * &other.num))
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() {
            write!(out, "{}", self.num)
        } else {
            write!(out, "({})/({})", self.num, self.den)
        }
    }
}

/// Regularized value of a series: exact evaluation of its rational form
/// after full cancellation. f-series of cell complexes are read at
/// t = -1, signed Euler series of stratified families at t = +1; the
/// point is the caller's choice.
pub fn regularized_value(r: &RationalFunction, p: &Rat) -> Result<Rat> {
    r.evaluate(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Polynomial,
    Infinite,
}

/// The f-series of a σ-polytope: a rational function whose expansion at
/// 0 counts cells per dimension, so the checked prefix must consist of
/// non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSeries {
    repr: RationalFunction,
    kind: SeriesKind,
}

impl SigmaSeries {
    pub const DEFAULT_CHECK_TERMS: usize = 64;

    pub fn new(repr: RationalFunction) -> Result<Self> {
        Self::with_checked_prefix(repr, Self::DEFAULT_CHECK_TERMS)
    }

    /// Builds the series, validating `terms` leading coefficients.
    pub fn with_checked_prefix(repr: RationalFunction, terms: usize) -> Result<Self> {
        for (index, c) in repr.prefix_coefficients(terms)?.into_iter().enumerate() {
            if !is_integer(&c) || c.is_negative() {
                return Err(Error::NotACellSeries { index, coefficient: c });
            }
        }
        let kind = if repr.is_polynomial() { SeriesKind::Polynomial } else { SeriesKind::Infinite };
        Ok(SigmaSeries { repr, kind })
    }

    pub fn repr(&self) -> &RationalFunction {
        &self.repr
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }
}

/// Equivalence of σ-polytope series under the subdivision moves
/// tᵏ ∼ 2tᵏ + tᵏ⁻¹.
///
/// Two polynomials are equivalent exactly when they have the same degree
/// and the same value at -1 (each move fixes both). Two infinite series
/// are equivalent exactly when they differ by a polynomial. A polynomial
/// is never equivalent to an infinite series.
pub fn sigma_equivalent(a: &SigmaSeries, b: &SigmaSeries) -> bool {
    match (a.kind, b.kind) {
        (SeriesKind::Polynomial, SeriesKind::Polynomial) => {
            let p = a.repr.as_polynomial().expect("polynomial kind");
            let q = b.repr.as_polynomial().expect("polynomial kind");
            p.degree() == q.degree() && p.evaluate(&rat_int(-1)) == q.evaluate(&rat_int(-1))
        }
        (SeriesKind::Infinite, SeriesKind::Infinite) => (&a.repr - &b.repr).is_polynomial(),
        _ => false,
    }
}

/// The unordered-pairs transform g(t) = ½(f(t)² - f(t²)) + t/(1-t) (f(t) - f(t²)).
///
/// When f is the f-series of P, g is an f-series for the configuration
/// space of unordered pairs of distinct points of P, and its regularized
/// value at -1 is χ(P) choose 2. Requires f finite at t = 1; there the
/// factor t/(1-t) has its pole, cancelled by the zero of f(t) - f(t²).
pub fn choose2_transform(f: &RationalFunction) -> Result<RationalFunction> {
    if f.denominator().evaluate(&rat_int(1)).is_zero() {
        return Err(Error::Pole { at: rat_int(1) });
    }
    let f_sq = f.compose_power(2);
    let half = RationalFunction::constant(rat(1, 2));
    let quadratic = &(f * f) - &f_sq;
    let linear = f - &f_sq;
    let shear = RationalFunction::new(
        Polynomial::t(),
        &Polynomial::one() - &Polynomial::t(),
    )
    .expect("1 - t is nonzero");
    Ok(&(&half * &quadratic) + &(&shear * &linear))
}

/// The f-series of the space of maps from a complex with f₀ vertices and
/// f₁ edges into a set of m points: m^{f₀} (m/(1-(m²-1)t))^{f₁}. The
/// regularized value at -1 is m^{f₀-f₁}.
pub fn mapspace_series(m: i64, f0: usize, f1: usize) -> RationalFunction {
    assert!(m >= 1, "the target must have at least one point");
    let edge = RationalFunction::new(
        Polynomial::constant(rat_int(m)),
        Polynomial::new(vec![Rat::one(), rat_int(-(m * m - 1))]),
    )
    .expect("denominator 1-(m^2-1)t is nonzero");
    let vertices =
        RationalFunction::constant(Rat::from(num_traits::pow(crate::rat::Int::from(m), f0)));
    &vertices * &edge.pow(f1)
}
