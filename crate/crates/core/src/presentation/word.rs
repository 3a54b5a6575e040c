use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::scalars::Field;

/// A generator of the algebra: `g_i`, `e_i` (1-based) or `x_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    G(usize),
    X,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::G(i) => write!(f, "g{i}"),
            Generator::X => f.write_str("x1"),
        }
    }
}

/// Maps generators to letter codes for a fixed `n`. Codes increase along
/// the precedence `e_1 < ... < e_(n-1) < g_1 < ... < g_(n-1) < x_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    n: usize,
}

impl Alphabet {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        Alphabet { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        2 * (self.n - 1) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn code(&self, g: Generator) -> u8 {
        let n = self.n;
        let c = match g {
            Generator::E(i) => {
                assert!(1 <= i && i < n, "e{i} out of range for n = {n}");
                i - 1
            }
            Generator::G(i) => {
                assert!(1 <= i && i < n, "g{i} out of range for n = {n}");
                n - 1 + i - 1
            }
            Generator::X => 2 * (n - 1),
        };
        c as u8
    }

    pub fn generator(&self, code: u8) -> Generator {
        let c = code as usize;
        let m = self.n - 1;
        if c < m {
            Generator::E(c + 1)
        } else if c < 2 * m {
            Generator::G(c - m + 1)
        } else {
            assert_eq!(c, 2 * m, "letter code out of range");
            Generator::X
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.len() as u8).map(|c| self.generator(c))
    }

    pub fn word(&self, gens: &[Generator]) -> Word {
        Word(gens.iter().map(|g| self.code(*g)).collect())
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = w.0.iter().map(|c| self.generator(*c).to_string()).collect();
        parts.join(".")
    }

    pub fn parse(&self, s: &str) -> Option<Word> {
        let s = s.trim();
        if s == "1" {
            return Some(Word::empty());
        }
        let mut out = Vec::new();
        for part in s.split('.') {
            let g = if part == "x1" {
                Generator::X
            } else {
                let (head, idx) = part.split_at(1);
                let i: usize = idx.parse().ok()?;
                if i == 0 || i >= self.n {
                    return None;
                }
                match head {
                    "e" => Generator::E(i),
                    "g" => Generator::G(i),
                    _ => return None,
                }
            };
            out.push(self.code(g));
        }
        Some(Word(out))
    }
}

/// A monomial: a string of letter codes. Ordered degree-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(c: u8) -> Self {
        Word(alloc::vec![c])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn contains(&self, sub: &[u8]) -> bool {
        sub.is_empty() || self.0.windows(sub.len()).any(|w| w == sub)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse linear combination of words with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement<E> {
    terms: BTreeMap<Word, E>,
}

impl<E: Clone + PartialEq> Default for AlgebraElement<E> {
    fn default() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }
}

impl<E: Clone + PartialEq> AlgebraElement<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, w: Word, c: E) -> Self {
        let mut out = Self::zero();
        out.add_term(field, w, c);
        out
    }

    pub fn from_word<F: Field<Elem = E>>(field: &F, w: Word) -> Self {
        Self::monomial(field, w, field.one())
    }

    pub fn scalar<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::monomial(field, Word::empty(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &E)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, E> {
        self.terms
    }

    pub fn from_terms(terms: BTreeMap<Word, E>) -> Self {
        AlgebraElement { terms }
    }

    pub fn coefficient(&self, w: &Word) -> Option<&E> {
        self.terms.get(w)
    }

    pub fn leading(&self) -> Option<(&Word, &E)> {
        self.terms.last_key_value()
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, w: Word, c: E) {
        add_term(field, &mut self.terms, w, c);
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(field, w.clone(), c.clone());
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), field.mul(x, c))).collect(),
        }
    }

    /// Free-algebra product (concatenation), no rewriting.
    pub fn concat_mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(field, a.concat(b), field.mul(x, y));
            }
        }
        out
    }

    /// Word reversal; the anti-involution fixing every generator.
    pub fn reversed(&self) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())).collect(),
        }
    }

    pub fn render<F: Field<Elem = E>>(&self, field: &F, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| alloc::format!("{}*{}", field.render(c), alphabet.render(w)))
            .collect();
        parts.join(" + ")
    }
}

pub(crate) fn add_term<F: Field>(field: &F, terms: &mut BTreeMap<Word, F::Elem>, w: Word, c: F::Elem) {
    if field.is_zero(&c) {
        return;
    }
    match terms.entry(w) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            let s = field.add(o.get(), &c);
            if field.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}
