use std::fmt;

use serde::{Deserialize, Serialize};

use super::SemigroupError;
use crate::algebra::{Caps, RationalMap};

/// A nonempty word `g_{i1} … g_{ik}` over generator indices, denoting the map
/// `g_{i1} ∘ … ∘ g_{ik}` (the rightmost letter is applied first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>, generators: usize) -> Result<Self, SemigroupError> {
        if letters.is_empty() {
            return Err(SemigroupError::EmptyWord);
        }
        if let Some(&bad) = letters.iter().find(|&&l| l >= generators) {
            return Err(SemigroupError::BadLetter { letter: bad, generators });
        }
        Ok(Word(letters))
    }

    pub(crate) fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `g_i ∘ self`.
    pub fn prepend(&self, i: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Exact map of the word under the given generators.
    pub fn eval(&self, generators: &[RationalMap], caps: &Caps) -> Result<RationalMap, SemigroupError> {
        let get = |l: usize| {
            generators.get(l).ok_or(SemigroupError::BadLetter { letter: l, generators: generators.len() })
        };
        let (&last, rest) = self.0.split_last().expect("words are nonempty");
        let mut acc = get(last)?.clone();
        for &l in rest.iter().rev() {
            acc = get(l)?.compose_capped(&acc, caps)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{l}")?;
        }
        Ok(())
    }
}
