use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::InvariantError;
use crate::diagram::EmbeddingCode;
use crate::graph::{CycleSelection, DEFAULT_CYCLE_CAP};
use crate::presentation::PresentationBundle;
use crate::ring::{Color, MagnusSeries, Variable};

/// A multi-index `i1 ... ik` with pairwise distinct colors.
pub type MultiIndex = Vec<Color>;

/// Milnor invariants of a link read from its longitudes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuBarReport {
    pub colors: Vec<Color>,
    /// Longitude of each component with monomials of its own color dropped.
    pub longitudes: BTreeMap<Color, MagnusSeries>,
    /// Nonzero coefficients only; every other distinct-index tuple of length
    /// 2..=max_degree has coefficient 0.
    pub coefficients: BTreeMap<MultiIndex, BigInt>,
    pub max_degree: usize,
    pub exact: bool,
}

impl MuBarReport {
    pub fn coefficient(&self, index: &[Color]) -> BigInt {
        self.coefficients.get(index).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn trivial(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Shortest length with a nonzero coefficient.
    pub fn first_length(&self) -> Option<usize> {
        self.coefficients.keys().map(Vec::len).min()
    }

    /// All nonzero coefficients of the shortest nonvanishing length, in
    /// lexicographic multi-index order.
    pub fn first_nonvanishing(&self) -> Option<(usize, Vec<(MultiIndex, BigInt)>)> {
        let k = self.first_length()?;
        let entries = self
            .coefficients
            .iter()
            .filter(|(i, _)| i.len() == k)
            .map(|(i, c)| (i.clone(), c.clone()))
            .collect();
        Some((k, entries))
    }

    /// Coefficients longer than the first nonvanishing length are only
    /// defined modulo lower ones.
    pub fn subject_to_indeterminacy(&self, index: &[Color]) -> bool {
        self.first_length().is_some_and(|k| index.len() > k)
    }
}

/// Milnor invariants of a link code (every component a circle).
pub fn mu_bar(code: &EmbeddingCode) -> Result<MuBarReport, InvariantError> {
    mu_bar_with_degree(code, None)
}

pub fn mu_bar_with_degree(
    code: &EmbeddingCode,
    max_degree: Option<usize>,
) -> Result<MuBarReport, InvariantError> {
    if !code.is_link() {
        return Err(InvariantError::NotALink);
    }
    let g = code.graph();
    let single_loops = g.colors().into_iter().all(|c| g.edges_of(c).count() == 1);
    let smoothed;
    let code = if single_loops {
        code
    } else {
        let mut cycles = BTreeMap::new();
        for c in g.colors() {
            let mut cs = g.simple_cycles(c, DEFAULT_CYCLE_CAP)?;
            cycles.insert(c, cs.pop().expect("a circle has one cycle"));
        }
        smoothed = code.extract_sublink(&CycleSelection::new(cycles))?;
        &smoothed
    };
    let colors = code.graph().colors();
    let exact_degree = colors.len().max(1);
    let d = max_degree.unwrap_or(exact_degree);
    let bundle = PresentationBundle::resolve_with_degree(code, d)?;
    let mut longitudes = BTreeMap::new();
    let mut coefficients = BTreeMap::new();
    for &k in &colors {
        let l = bundle.longitude(Variable::new(k, 1)).expect("one generator per circle").without_color(k);
        for (m, c) in l.terms() {
            if m.degree() == 0 {
                continue;
            }
            let mut index: MultiIndex = m.colors().collect();
            index.push(k);
            coefficients.insert(index, c.clone());
        }
        longitudes.insert(k, l);
    }
    Ok(MuBarReport { colors, longitudes, coefficients, max_degree: d, exact: d >= exact_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid_closure;

    #[test]
    fn hopf_linking_number() {
        let pos = mu_bar(&braid_closure(2, &[1, 1]).unwrap()).unwrap();
        assert_eq!(pos.coefficient(&[1, 2]), BigInt::from(1));
        assert_eq!(pos.coefficient(&[2, 1]), BigInt::from(1));
        assert_eq!(pos.first_length(), Some(2));
        let neg = mu_bar(&braid_closure(2, &[-1, -1]).unwrap()).unwrap();
        assert_eq!(neg.coefficient(&[1, 2]), BigInt::from(-1));
    }

    #[test]
    fn unlink_and_knots_are_trivial() {
        assert!(mu_bar(&braid_closure(3, &[]).unwrap()).unwrap().trivial());
        assert!(mu_bar(&braid_closure(2, &[1, 1, 1]).unwrap()).unwrap().trivial());
    }

    #[test]
    fn borromean_triple() {
        let r = mu_bar(&braid_closure(3, &[1, -2, 1, -2, 1, -2]).unwrap()).unwrap();
        let (k, entries) = r.first_nonvanishing().unwrap();
        assert_eq!(k, 3);
        assert_eq!(r.coefficient(&[1, 2, 3]).magnitude(), &1u32.into());
        assert!(entries.iter().all(|(i, _)| i.len() == 3));
    }
}
