use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the free monoid on `{x1, .., xn}`, letters stored 0-based.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: usize) -> Self {
        Word(vec![x])
    }

    /// From 1-based letter names, e.g. `Word::from_names(&[1, 2])` is `x1x2`.
    pub fn from_names(names: &[usize]) -> Self {
        Word(names.iter().map(|&i| i - 1).collect())
    }

    pub fn power(x: usize, k: usize) -> Self {
        Word(vec![x; k])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn check_letters(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&x| x >= n) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, n }),
            None => Ok(()),
        }
    }

    /// Exponent vector if the word has the form `x1^k1 ... xn^kn`.
    pub fn ordered_exponents(&self, n: usize) -> Option<Vec<usize>> {
        if self.0.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut k = vec![0; n];
        for &x in &self.0 {
            k[x] += 1;
        }
        Some(k)
    }

    /// The word `x1^k1 ... xn^kn`.
    pub fn from_exponents(k: &[usize]) -> Word {
        Word(
            k.iter()
                .enumerate()
                .flat_map(|(x, &e)| std::iter::repeat_n(x, e))
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for x in &self.0 {
            write!(f, "x{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All words of the given degree in lexicographic order.
pub fn all_words(n: usize, degree: usize) -> impl Iterator<Item = Word> {
    let total = (n as u128).pow(degree as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; degree];
        for i in (0..degree).rev() {
            v[i] = (idx % n as u128) as usize;
            idx /= n as u128;
        }
        Word(v)
    })
}
