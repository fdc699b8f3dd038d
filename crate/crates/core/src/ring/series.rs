//! Truncated non-commutative integer series in colored variables.
//!
//! Every stored monomial uses each color at most once. A product that would
//! repeat a color is zero, which is what makes conjugates of same-colored
//! generators commute. The degree of a surviving monomial can therefore never
//! exceed the number of colors, so truncating there loses nothing.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::RingError;

/// Component color of a generator, 1-based.
pub type Color = u32;

/// The variable `X{i,j}` standing for the non-tree edge `x_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub color: Color,
    pub index: u32,
}

impl Variable {
    pub const fn new(color: Color, index: u32) -> Self {
        Self { color, index }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{{{},{}}}", self.color, self.index)
    }
}

/// An ordered product of variables with pairwise distinct colors.
///
/// Ordered first by degree, then lexicographically by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[Variable; 4]>);

impl Monomial {
    pub fn one() -> Self {
        Self(SmallVec::new())
    }

    /// Builds a monomial, returning `None` if two variables share a color.
    pub fn new(vars: impl IntoIterator<Item = Variable>) -> Option<Self> {
        let vars: SmallVec<[Variable; 4]> = vars.into_iter().collect();
        for (k, a) in vars.iter().enumerate() {
            if vars[k + 1..].iter().any(|b| b.color == a.color) {
                return None;
            }
        }
        Some(Self(vars))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.0
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.0.iter().map(|v| v.color)
    }

    pub fn contains_color(&self, color: Color) -> bool {
        self.0.iter().any(|v| v.color == color)
    }

    /// Concatenation, or `None` when the result would repeat a color.
    pub fn times(&self, other: &Monomial) -> Option<Monomial> {
        if self.0.iter().any(|a| other.contains_color(a.color)) {
            return None;
        }
        let mut vars = self.0.clone();
        vars.extend_from_slice(&other.0);
        Some(Monomial(vars))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for v in &self.0 {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Element of the reduced colored Magnus ring, truncated above `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusSeries {
    terms: BTreeMap<Monomial, BigInt>,
    max_degree: usize,
}

impl MagnusSeries {
    pub fn zero(max_degree: usize) -> Self {
        Self { terms: BTreeMap::new(), max_degree }
    }

    pub fn one(max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        s.terms.insert(Monomial::one(), BigInt::one());
        s
    }

    /// `1 + X`, the image of a generator.
    pub fn generator(var: Variable, max_degree: usize) -> Self {
        let mut s = Self::one(max_degree);
        if max_degree >= 1 {
            s.terms.insert(Monomial(SmallVec::from_slice(&[var])), BigInt::one());
        }
        s
    }

    /// `1 - X`. Exact, because `X^2` repeats a color.
    pub fn inverse_generator(var: Variable, max_degree: usize) -> Self {
        let mut s = Self::one(max_degree);
        if max_degree >= 1 {
            s.terms.insert(Monomial(SmallVec::from_slice(&[var])), -BigInt::one());
        }
        s
    }

    /// Builds a series from raw terms. Monomials that repeat a color or exceed
    /// the truncation degree are dropped, as are zero coefficients.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Vec<Variable>, BigInt)>,
        max_degree: usize,
    ) -> Self {
        let mut s = Self::zero(max_degree);
        for (vars, c) in terms {
            if let Some(m) = Monomial::new(vars) {
                s.add_term(m, c);
            }
        }
        s
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if m.degree() > self.max_degree || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.max_degree = self.max_degree.min(other.max_degree);
        out.terms.retain(|m, _| m.degree() <= out.max_degree);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            max_degree: self.max_degree,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Truncated product with same-color annihilation.
    pub fn multiply(&self, other: &Self) -> Self {
        let max_degree = self.max_degree.min(other.max_degree);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            if ma.degree() > max_degree {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > max_degree {
                    // terms are sorted by degree
                    break;
                }
                if let Some(m) = ma.times(mb) {
                    *acc.entry(m).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self { terms: acc, max_degree }
    }

    /// Two-sided inverse of a series with constant term 1, by the Neumann
    /// series `sum (-h)^k` where `h = self - 1`.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let c = self.constant_term();
        if !c.is_one() {
            return Err(RingError::NotInvertible { constant: c });
        }
        let one = Self::one(self.max_degree);
        let minus_h = one.sub(self);
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.max_degree {
            power = power.multiply(&minus_h);
            if power.is_empty() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    pub fn pow(&self, exp: i64) -> Result<Self, RingError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.max_degree);
        for _ in 0..exp.unsigned_abs() {
            out = out.multiply(&base);
        }
        Ok(out)
    }

    /// `g^-1 a g`.
    pub fn conjugate(&self, g: &Self) -> Result<Self, RingError> {
        Ok(g.inverse()?.multiply(self).multiply(g))
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, RingError> {
        Ok(a.inverse()?.multiply(&b.inverse()?).multiply(a).multiply(b))
    }

    /// Smallest positive degree carrying a nonzero term.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).find(|&d| d > 0)
    }

    /// Smallest degree among monomials that contain a variable of `color`.
    pub fn lowest_degree_with_color(&self, color: Color) -> Option<usize> {
        self.terms
            .keys()
            .filter(|m| m.contains_color(color))
            .map(Monomial::degree)
            .min()
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            max_degree: self.max_degree,
        }
    }

    /// Image under `x -> 1` for every generator whose color fails `keep`.
    /// This is the ring-side version of deleting components.
    pub fn restrict_colors(&self, keep: impl Fn(Color) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.colors().all(&keep))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            max_degree: self.max_degree,
        }
    }

    pub fn without_color(&self, color: Color) -> Self {
        self.restrict_colors(|c| c != color)
    }

    /// Changes the truncation degree, dropping terms above a lowered bound.
    pub fn with_max_degree(&self, max_degree: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            max_degree,
        }
    }
}

impl fmt::Display for MagnusSeries {
    /// Renders `1 + X{1,1} - 2·X{1,1}X{2,1}`, terms in (degree, lex) order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}·{m}")?;
            }
        }
        Ok(())
    }
}

/// Upper bound on the number of monomials over the given variables: ordered
/// selections of distinct colors, with one variable chosen per color.
pub fn monomial_bound(vars: &[Variable], max_degree: usize) -> u128 {
    let mut per_color: BTreeMap<Color, u128> = BTreeMap::new();
    for v in vars {
        *per_color.entry(v.color).or_default() += 1;
    }
    let counts: Vec<u128> = per_color.into_values().collect();
    // elementary symmetric polynomials e_k of the per-color counts
    let mut e = vec![0u128; counts.len() + 1];
    e[0] = 1;
    for &c in &counts {
        for k in (1..e.len()).rev() {
            e[k] += e[k - 1] * c;
        }
    }
    let mut total = 0u128;
    let mut fact = 1u128;
    for (k, ek) in e.iter().enumerate() {
        if k > max_degree {
            break;
        }
        if k > 0 {
            fact *= k as u128;
        }
        total += ek * fact;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(c: u32, j: u32) -> Variable {
        Variable::new(c, j)
    }

    #[test]
    fn inverse_generator_is_exact() {
        let a = MagnusSeries::generator(x(1, 1), 2);
        let b = MagnusSeries::inverse_generator(x(1, 1), 2);
        assert!(a.multiply(&b).is_one());
        assert_eq!(a.inverse().unwrap(), b);
    }

    #[test]
    fn distinct_colors_keep_cross_term() {
        let a = MagnusSeries::generator(x(1, 1), 2);
        let b = MagnusSeries::generator(x(2, 1), 2);
        let expected = MagnusSeries::from_terms(
            [
                (vec![], 1.into()),
                (vec![x(1, 1)], 1.into()),
                (vec![x(2, 1)], 1.into()),
                (vec![x(1, 1), x(2, 1)], 1.into()),
            ],
            2,
        );
        assert_eq!(a.multiply(&b), expected);
    }

    #[test]
    fn same_color_cross_term_vanishes() {
        let a = MagnusSeries::generator(x(1, 1), 2);
        let b = MagnusSeries::generator(x(1, 2), 2);
        let expected = MagnusSeries::from_terms(
            [(vec![], 1.into()), (vec![x(1, 1)], 1.into()), (vec![x(1, 2)], 1.into())],
            2,
        );
        assert_eq!(a.multiply(&b), expected);
    }

    #[test]
    fn not_invertible() {
        let s = MagnusSeries::zero(2);
        assert!(matches!(s.inverse(), Err(RingError::NotInvertible { .. })));
        let two = MagnusSeries::one(2).add(&MagnusSeries::one(2));
        assert!(MagnusSeries::commutator(&two, &MagnusSeries::one(2)).is_err());
    }

    #[test]
    fn rendering() {
        let s = MagnusSeries::from_terms(
            [
                (vec![], 1.into()),
                (vec![x(2, 1), x(1, 1)], (-2).into()),
                (vec![x(1, 1)], 1.into()),
            ],
            2,
        );
        assert_eq!(s.to_string(), "1 + X{1,1} - 2·X{2,1}X{1,1}");
        assert_eq!(MagnusSeries::zero(1).to_string(), "0");
    }

    #[test]
    fn lowest_degree_with_color_of_one_is_absent() {
        assert_eq!(MagnusSeries::one(3).lowest_degree_with_color(1), None);
    }

    #[test]
    fn bound_counts_colored_arrangements() {
        // two colors, one variable each: 1 + 2 + 2
        assert_eq!(monomial_bound(&[x(1, 1), x(2, 1)], 2), 5);
        // colors with 2 and 1 variables: 1 + 3 + 2*2
        assert_eq!(monomial_bound(&[x(1, 1), x(1, 2), x(2, 1)], 2), 8);
    }
}
