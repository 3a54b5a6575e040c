//! Noncommutative rewriting: oriented rules, overlap completion and normal
//! forms under the degree-lexicographic order.

use alloc::collections::{BTreeMap, BinaryHeap, VecDeque};
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashMap;
use thiserror::Error;

use super::word::{add_term, AlgebraElement, Word};
use crate::scalars::Field;

/// `lead -> tail`, with every word of `tail` smaller than `lead`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule<E> {
    pub lead: Word,
    pub tail: AlgebraElement<E>,
}

impl<E: Clone + PartialEq> RewriteRule<E> {
    /// Orients the relation `poly = 0`. Returns `None` for the zero relation.
    pub fn from_relation<F: Field<Elem = E>>(field: &F, poly: AlgebraElement<E>) -> Option<Self> {
        let mut terms = poly.into_terms();
        let (lead, c) = terms.pop_last()?;
        let scale = field.neg(&field.inv(&c).expect("nonzero coefficient"));
        let tail = AlgebraElement::from_terms(terms).scale(field, &scale);
        Some(RewriteRule { lead, tail })
    }

    /// `lead - tail`
    pub fn as_relation<F: Field<Elem = E>>(&self, field: &F) -> AlgebraElement<E> {
        let mut out = self.tail.scale(field, &field.neg(&field.one()));
        out.add_term(field, self.lead.clone(), field.one());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("completion needs overlaps of degree {smallest_pending} > cap {cap} ({pending} unresolved)")]
    CapExceeded {
        cap: usize,
        pending: usize,
        smallest_pending: usize,
    },
    #[error("irreducible words of length {0} remain; the quotient is not finite-dimensional at this cap")]
    InfiniteBasis(usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub cap: usize,
    pub input_rules: usize,
    pub final_rules: usize,
    pub overlaps_processed: usize,
    pub max_overlap_degree: usize,
    pub max_lead_length: usize,
}

#[derive(Debug, Clone)]
struct RuleStore<F: Field> {
    field: F,
    slots: Vec<Option<RewriteRule<F::Elem>>>,
    index: HashMap<Vec<u8>, usize>,
    max_lead: usize,
    /// A rule with empty lead: `1 = 0`, everything vanishes.
    collapsed: bool,
}

impl<F: Field> RuleStore<F> {
    fn new(field: F) -> Self {
        RuleStore {
            field,
            slots: Vec::new(),
            index: HashMap::new(),
            max_lead: 0,
            collapsed: false,
        }
    }

    /// Leftmost-shortest occurrence of a rule lead inside `w`.
    fn find(&self, w: &[u8]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            let top = self.max_lead.min(w.len() - start);
            for len in 1..=top {
                if let Some(&id) = self.index.get(&w[start..start + len]) {
                    return Some((start, id));
                }
            }
        }
        None
    }

    /// Whether some lead is a suffix of `w`.
    fn has_suffix_lead(&self, w: &[u8]) -> bool {
        let top = self.max_lead.min(w.len());
        (1..=top).any(|len| self.index.contains_key(&w[w.len() - len..]))
    }

    fn reduce_terms(&self, mut work: BTreeMap<Word, F::Elem>) -> BTreeMap<Word, F::Elem> {
        let f = &self.field;
        let mut done = BTreeMap::new();
        if self.collapsed {
            return done;
        }
        while let Some((w, c)) = work.pop_last() {
            match self.find(w.letters()) {
                None => {
                    done.insert(w, c);
                }
                Some((start, id)) => {
                    let rule = self.slots[id].as_ref().expect("indexed rule is live");
                    let (pre, rest) = w.letters().split_at(start);
                    let post = &rest[rule.lead.len()..];
                    for (t, tc) in rule.tail.terms() {
                        let mut nw = Vec::with_capacity(pre.len() + t.len() + post.len());
                        nw.extend_from_slice(pre);
                        nw.extend_from_slice(t.letters());
                        nw.extend_from_slice(post);
                        add_term(f, &mut work, Word(nw), f.mul(&c, tc));
                    }
                }
            }
        }
        done
    }

    fn reduce(&self, p: AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        AlgebraElement::from_terms(self.reduce_terms(p.into_terms()))
    }

    fn live(&self) -> impl Iterator<Item = (usize, &RewriteRule<F::Elem>)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }
}

fn sandwich<F: Field>(field: &F, left: &[u8], p: &AlgebraElement<F::Elem>, right: &[u8]) -> AlgebraElement<F::Elem> {
    let mut out = AlgebraElement::zero();
    for (w, c) in p.terms() {
        let mut nw = Vec::with_capacity(left.len() + w.len() + right.len());
        nw.extend_from_slice(left);
        nw.extend_from_slice(w.letters());
        nw.extend_from_slice(right);
        out.add_term(field, Word(nw), c.clone());
    }
    out
}

/// Proper overlaps: suffix of `a` of length `k` equal to the prefix of `b`.
fn overlaps<'a>(a: &'a [u8], b: &'a [u8]) -> impl Iterator<Item = usize> + 'a {
    (1..a.len().min(b.len())).filter(move |&k| a[a.len() - k..] == b[..k])
}

/// A completed (locally confluent) rewriting system.
#[derive(Debug, Clone)]
pub struct RewriteSystem<F: Field> {
    store: RuleStore<F>,
    rules: Vec<RewriteRule<F::Elem>>,
    stats: CompletionStats,
}

/// Buchberger–Mora completion. Overlaps are resolved in order of degree;
/// any overlap above `degree_cap` that is still live at the end makes the
/// completion fail rather than return an unverified system.
pub fn complete<F: Field>(
    field: &F,
    rules: Vec<RewriteRule<F::Elem>>,
    degree_cap: usize,
) -> Result<RewriteSystem<F>, CompletionError> {
    let mut store = RuleStore::new(field.clone());
    let mut stats = CompletionStats {
        cap: degree_cap,
        input_rules: rules.len(),
        ..Default::default()
    };
    let mut pending: VecDeque<AlgebraElement<F::Elem>> = rules.iter().map(|r| r.as_relation(field)).collect();
    // (degree, a, b, k)
    let mut pairs: BinaryHeap<Reverse<(usize, usize, usize, usize)>> = BinaryHeap::new();
    let mut deferred: Vec<(usize, usize, usize)> = Vec::new();

    loop {
        while let Some(p) = pending.pop_front() {
            let p = store.reduce(p);
            let Some(rule) = RewriteRule::from_relation(field, p) else {
                continue;
            };
            if rule.lead.is_empty() {
                store.collapsed = true;
                pending.clear();
                pairs.clear();
                deferred.clear();
                for s in store.slots.iter_mut() {
                    *s = None;
                }
                store.index.clear();
                store.slots.push(Some(rule));
                break;
            }
            // rules whose lead contains the new lead are retired and re-queued
            let lead = rule.lead.clone();
            let retired: Vec<usize> = store
                .live()
                .filter(|(_, r)| r.lead.contains(lead.letters()))
                .map(|(i, _)| i)
                .collect();
            for i in retired {
                let old = store.slots[i].take().expect("live");
                store.index.remove(old.lead.letters());
                pending.push_back(old.as_relation(field));
            }
            let id = store.slots.len();
            store.max_lead = store.max_lead.max(lead.len());
            store.index.insert(lead.0.clone(), id);
            store.slots.push(Some(rule));
            for (j, other) in store.live() {
                let b = other.lead.letters();
                for k in overlaps(lead.letters(), b) {
                    pairs.push(Reverse((lead.len() + b.len() - k, id, j, k)));
                }
                if j != id {
                    for k in overlaps(b, lead.letters()) {
                        pairs.push(Reverse((lead.len() + b.len() - k, j, id, k)));
                    }
                }
            }
        }
        if store.collapsed {
            break;
        }
        let Some(Reverse((deg, a, b, k))) = pairs.pop() else {
            break;
        };
        let (Some(ra), Some(rb)) = (&store.slots[a], &store.slots[b]) else {
            continue;
        };
        if deg > degree_cap {
            deferred.push((a, b, deg));
            continue;
        }
        stats.overlaps_processed += 1;
        stats.max_overlap_degree = stats.max_overlap_degree.max(deg);
        let a_lead = ra.lead.letters();
        let b_lead = rb.lead.letters();
        let left = sandwich(field, &[], &ra.tail, &b_lead[k..]);
        let right = sandwich(field, &a_lead[..a_lead.len() - k], &rb.tail, &[]);
        let s = store.reduce(left.sub(field, &right));
        if !s.is_zero() {
            pending.push_back(s);
        }
    }

    let live_deferred: Vec<usize> = deferred
        .iter()
        .filter(|(a, b, _)| store.slots[*a].is_some() && store.slots[*b].is_some())
        .map(|(_, _, d)| *d)
        .collect();
    if let Some(&smallest) = live_deferred.iter().min() {
        return Err(CompletionError::CapExceeded {
            cap: degree_cap,
            pending: live_deferred.len(),
            smallest_pending: smallest,
        });
    }

    // interreduce tails and compact
    let ids: Vec<usize> = store.live().map(|(i, _)| i).collect();
    for i in ids {
        let tail = store.slots[i].as_ref().expect("live").tail.clone();
        let reduced = store.reduce(tail);
        store.slots[i].as_mut().expect("live").tail = reduced;
    }
    let mut rules: Vec<RewriteRule<F::Elem>> = store.slots.iter().flatten().cloned().collect();
    rules.sort_by(|a, b| a.lead.cmp(&b.lead));
    let mut compact = RuleStore::new(field.clone());
    compact.collapsed = store.collapsed;
    for (i, r) in rules.iter().enumerate() {
        compact.max_lead = compact.max_lead.max(r.lead.len());
        compact.index.insert(r.lead.0.clone(), i);
        compact.slots.push(Some(r.clone()));
    }
    stats.final_rules = rules.len();
    stats.max_lead_length = compact.max_lead;
    Ok(RewriteSystem {
        store: compact,
        rules,
        stats,
    })
}

impl<F: Field> RewriteSystem<F> {
    pub fn field(&self) -> &F {
        &self.store.field
    }

    pub fn rules(&self) -> &[RewriteRule<F::Elem>] {
        &self.rules
    }

    pub fn stats(&self) -> CompletionStats {
        self.stats
    }

    /// True when the relations force `1 = 0`.
    pub fn is_collapsed(&self) -> bool {
        self.store.collapsed
    }

    pub fn normal_form(&self, x: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.store.reduce(x.clone())
    }

    pub fn reduce_word(&self, w: Word) -> AlgebraElement<F::Elem> {
        let mut terms = BTreeMap::new();
        terms.insert(w, self.field().one());
        AlgebraElement::from_terms(self.store.reduce_terms(terms))
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        !self.store.collapsed && self.store.find(w.letters()).is_none()
    }

    /// All irreducible words over an alphabet of `letters` letters, in
    /// increasing order. Fails if irreducible words longer than
    /// `max_length` exist.
    pub fn irreducible_words(&self, letters: usize, max_length: usize) -> Result<Vec<Word>, CompletionError> {
        if self.store.collapsed {
            return Ok(Vec::new());
        }
        let mut out = alloc::vec![Word::empty()];
        let mut level = alloc::vec![Word::empty()];
        while !level.is_empty() {
            let mut next = Vec::new();
            for w in &level {
                for c in 0..letters as u8 {
                    let mut nw = w.0.clone();
                    nw.push(c);
                    if !self.store.has_suffix_lead(&nw) {
                        next.push(Word(nw));
                    }
                }
            }
            if let Some(w) = next.first() {
                if w.len() > max_length {
                    return Err(CompletionError::InfiniteBasis(w.len()));
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out.sort();
        Ok(out)
    }

    /// Irreducible words of length at most `max_length`.
    pub fn irreducible_words_up_to(&self, letters: usize, max_length: usize) -> Vec<Word> {
        match self.irreducible_words(letters, max_length) {
            Ok(words) => words,
            Err(_) => {
                let mut out = alloc::vec![Word::empty()];
                let mut level = alloc::vec![Word::empty()];
                for _ in 0..max_length {
                    let mut next = Vec::new();
                    for w in &level {
                        for c in 0..letters as u8 {
                            let mut nw = w.0.clone();
                            nw.push(c);
                            if !self.store.has_suffix_lead(&nw) {
                                next.push(Word(nw));
                            }
                        }
                    }
                    out.extend(next.iter().cloned());
                    level = next;
                }
                out.sort();
                out
            }
        }
    }

    /// Overlaps of the final rule set that fail to resolve; empty for a
    /// confluent system.
    pub fn unresolved_overlaps(&self) -> usize {
        let f = self.field();
        let mut bad = 0;
        for a in &self.rules {
            for b in &self.rules {
                for k in overlaps(a.lead.letters(), b.lead.letters()) {
                    let left = sandwich(f, &[], &a.tail, &b.lead.letters()[k..]);
                    let right = sandwich(f, &a.lead.letters()[..a.lead.len() - k], &b.tail, &[]);
                    if !self.normal_form(&left.sub(f, &right)).is_zero() {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }
}
