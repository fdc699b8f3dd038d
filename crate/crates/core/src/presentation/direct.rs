//! Presentations given as relator words.
//!
//! ```text
//! # comment
//! gen m1,1 m1,2 m2,1
//! rel [m1,1,[m2,1,m1,2]]
//! ```
//!
//! Any number of `gen` and `rel` lines; relators may only use declared
//! generators. Word syntax is that of [`crate::ring::parse_word`].

use std::collections::BTreeSet;

use super::{PresentationError, Relator};
use crate::ring::{parse_word, Color, GroupWord, MagnusSeries, Variable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectPresentation {
    generators: Vec<Variable>,
    relators: Vec<GroupWord>,
}

impl DirectPresentation {
    pub fn new(generators: Vec<Variable>, relators: Vec<GroupWord>) -> Result<Self, PresentationError> {
        let p = Self { generators, relators };
        p.check()?;
        Ok(p)
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut generators = Vec::new();
        let mut relators = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            match head {
                "gen" => {
                    for tok in rest.split_whitespace() {
                        let w = parse_word(tok).map_err(|source| PresentationError::Word { line, source })?;
                        match w.letters() {
                            [l] if l.exp == 1 => generators.push(l.var),
                            _ => {
                                return Err(PresentationError::Syntax {
                                    line,
                                    message: format!("'{tok}' is not a generator name"),
                                })
                            }
                        }
                    }
                }
                "rel" => {
                    let w = parse_word(rest).map_err(|source| PresentationError::Word { line, source })?;
                    relators.push(w);
                }
                other => {
                    return Err(PresentationError::Syntax {
                        line,
                        message: format!("expected 'gen' or 'rel', found '{other}'"),
                    })
                }
            }
        }
        Self::new(generators, relators)
    }

    fn check(&self) -> Result<(), PresentationError> {
        let known: BTreeSet<Variable> = self.generators.iter().copied().collect();
        for w in &self.relators {
            if let Some(v) = w.variables().find(|v| !known.contains(v)) {
                return Err(PresentationError::UnknownGenerator { color: v.color, index: v.index });
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Variable] {
        &self.generators
    }

    pub fn relator_words(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn colors(&self) -> BTreeSet<Color> {
        self.generators.iter().map(|v| v.color).collect()
    }

    /// Exact truncation degree: the number of colors.
    pub fn max_degree(&self) -> usize {
        self.colors().len().max(1)
    }

    /// Expansion of every relator, in file order.
    pub fn expand(&self, max_degree: usize) -> Vec<MagnusSeries> {
        self.relators.iter().map(|w| w.expand(max_degree)).collect()
    }

    /// Relators labelled `rel <k>` (1-based file order).
    pub fn relators(&self, max_degree: usize) -> Vec<Relator> {
        self.expand(max_degree)
            .into_iter()
            .enumerate()
            .map(|(k, series)| Relator { label: format!("rel {}", k + 1), series })
            .collect()
    }
}

/// Expands every relator of a presentation at its exact degree.
pub fn expand_direct(p: &DirectPresentation) -> Result<Vec<MagnusSeries>, PresentationError> {
    p.check()?;
    Ok(p.expand(p.max_degree()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOUR_COMPONENTS: &str = "\
gen m1,1 m1,2 m1,3 m2,1 m3,1 m3,2 m4,1 m4,2
rel [m1,3,[m2,1,m3,1]]
rel [m2,1,[m3,1,m1,3]]
rel [m3,1,[m1,3,m2,1]] [m3,2,m4,1]
rel [m4,1,m3,2]
";

    #[test]
    fn four_component_degrees() {
        let p = DirectPresentation::parse(FOUR_COMPONENTS).unwrap();
        assert_eq!(p.max_degree(), 4);
        let ex = expand_direct(&p).unwrap();
        assert_eq!(ex[3].lowest_degree(), Some(2));
        assert_eq!(ex[3].lowest_degree_with_color(4), Some(2));
        assert_eq!(ex[2].lowest_degree(), Some(2));
        assert_eq!(ex[0].lowest_degree(), Some(3));
    }

    #[test]
    fn unknown_generator() {
        assert_eq!(
            DirectPresentation::parse("gen m1,1\nrel [m1,1,m2,1]\n"),
            Err(PresentationError::UnknownGenerator { color: 2, index: 1 })
        );
    }

    #[test]
    fn trivial_relator() {
        let p = DirectPresentation::parse("gen m1,1\nrel 1\n").unwrap();
        assert!(expand_direct(&p).unwrap()[0].is_one());
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            DirectPresentation::parse("gen m1,1\nrelator m1,1"),
            Err(PresentationError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            DirectPresentation::parse("gen m1,1^-1"),
            Err(PresentationError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            DirectPresentation::parse("gen m1,1\nrel [m1,1"),
            Err(PresentationError::Word { line: 2, .. })
        ));
    }
}
