//! Partitions, multipartitions, the index posets of the cell modules,
//! Kleshchev multipartitions and aperiodic multisegments.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Range;

use thiserror::Error;

use crate::params::{OmegaMode, ParameterSet};
use crate::scalars::{Field, Order};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("level mismatch: {0} components vs {1}")]
    LevelMismatch(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("e = 1 (q^2 = 1) is not allowed")]
    EIsOne,
    #[error("e is infinite: a residue window is required")]
    NeedWindow,
    #[error("u{0} is not an integral power of q^2; reducing to that case is out of scope for the Kleshchev test")]
    NotPowerOfQSquared(usize),
    #[error("multicharge does not match the parameters: {0}")]
    InconsistentMulticharge(String),
    #[error("parameters must be admissible")]
    NotAdmissible,
    #[error(transparent)]
    Param(#[from] crate::params::ParamError),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Drops trailing zeros; `None` if the parts are not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Option<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return None;
        }
        Some(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Partitions of `m` in decreasing lexicographic order: `(3), (2,1), (1,1,1)`.
pub fn partitions(m: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// An ordered tuple of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        Multipartition(components)
    }

    pub fn empty(level: usize) -> Self {
        Multipartition(vec![Partition::empty(); level])
    }

    /// From raw component lists; `None` if some component is not a partition.
    pub fn from_lists(lists: Vec<Vec<usize>>) -> Option<Self> {
        lists
            .into_iter()
            .map(Partition::new)
            .collect::<Option<Vec<_>>>()
            .map(Multipartition)
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Component lists, e.g. `[[2,1],[]]`.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.0.iter().map(|p| p.0.clone()).collect()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All `r`-multipartitions of `m`, ordered by the component sizes
/// (decreasing lexicographically) and then componentwise.
pub fn enumerate_multipartitions(r: usize, m: usize) -> Vec<Multipartition> {
    fn compositions(r: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == r {
            cur.push(m);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=m).rev() {
            cur.push(k);
            compositions(r, m - k, cur, out);
            cur.pop();
        }
    }
    assert!(r >= 1);
    let mut comps = Vec::new();
    compositions(r, m, &mut Vec::new(), &mut comps);
    let mut out = Vec::new();
    for comp in comps {
        let mut acc: Vec<Vec<Partition>> = vec![Vec::new()];
        for &k in &comp {
            let ps = partitions(k);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    ps.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(Multipartition));
    }
    out
}

fn check_comparable(a: &Multipartition, b: &Multipartition) -> Result<(), CombError> {
    if a.level() != b.level() {
        return Err(CombError::LevelMismatch(a.level(), b.level()));
    }
    if a.size() != b.size() {
        return Err(CombError::SizeMismatch(a.size(), b.size()));
    }
    Ok(())
}

/// `a ⊵ b`: every prefix sum of `a` (earlier components counted whole)
/// is at least the matching prefix sum of `b`.
pub fn dominates(a: &Multipartition, b: &Multipartition) -> Result<bool, CombError> {
    check_comparable(a, b)?;
    let (mut before_a, mut before_b) = (0usize, 0usize);
    for (pa, pb) in a.0.iter().zip(&b.0) {
        let rows = pa.len().max(pb.len());
        let (mut sa, mut sb) = (before_a, before_b);
        for l in 0..rows {
            sa += pa.part(l);
            sb += pb.part(l);
            if sa < sb {
                return Ok(false);
            }
        }
        before_a += pa.size();
        before_b += pb.size();
    }
    Ok(true)
}

/// `a ⊴ b`
pub fn is_dominated_by(a: &Multipartition, b: &Multipartition) -> Result<bool, CombError> {
    dominates(b, a)
}

/// `(f, λ)` with `λ` a multipartition of `n - 2f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    pub f: usize,
    pub lambda: Multipartition,
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetMode {
    /// `Λ_(r,n)`: level `r` at every `f`.
    Full,
    /// Level `r` at `f = 0` and level `d` for `f >= 1`.
    Semi(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPoset {
    pub r: usize,
    pub n: usize,
    pub mode: PosetMode,
    pub pairs: Vec<IndexPair>,
}

impl IndexPoset {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `(k, λ) ⊵ (l, μ)` iff `k > l`, or `k = l` and `λ ⊵ μ`.
    pub fn dominates(&self, a: &IndexPair, b: &IndexPair) -> bool {
        match a.f.cmp(&b.f) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => dominates(&a.lambda, &b.lambda).unwrap_or(false),
        }
    }
}

pub fn enumerate_index_poset(r: usize, n: usize, mode: PosetMode) -> IndexPoset {
    let mut pairs = Vec::new();
    for f in (0..=n / 2).rev() {
        let level = match mode {
            PosetMode::Semi(d) if f >= 1 => d,
            _ => r,
        };
        if level == 0 {
            continue;
        }
        for lambda in enumerate_multipartitions(level, n - 2 * f) {
            pairs.push(IndexPair { f, lambda });
        }
    }
    IndexPoset { r, n, mode, pairs }
}

/// Residues `(s_1, ..., s_r)` with `u_j = q^(2 s_j)`, reduced mod `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multicharge {
    e: Order,
    residues: Vec<i64>,
}

impl Multicharge {
    pub fn new(e: Order, residues: Vec<i64>) -> Result<Self, CombError> {
        let residues = match e {
            Order::Finite(1) => return Err(CombError::EIsOne),
            Order::Finite(0) => return Err(CombError::EIsOne),
            Order::Finite(m) => residues.into_iter().map(|s| s.rem_euclid(m as i64)).collect(),
            Order::Infinite => residues,
        };
        Ok(Multicharge { e, residues })
    }

    /// Solves `u_j = q^(2 s_j)` for each parameter. Over a field where
    /// `q^2` has infinite order the exponent is searched in `-64..=64`.
    pub fn from_params<F: Field>(p: &ParameterSet<F>) -> Result<Self, CombError> {
        let f = p.field();
        let q2 = f.mul(p.q(), p.q());
        let q2_inv = f.inv(&q2).map_err(crate::params::ParamError::from)?;
        let e = p.e();
        let mut residues = Vec::with_capacity(p.r());
        for (j, u) in p.u().iter().enumerate() {
            let found = match e {
                Order::Finite(m) => {
                    let mut x = f.one();
                    let mut hit = None;
                    for s in 0..m {
                        if &x == u {
                            hit = Some(s as i64);
                            break;
                        }
                        x = f.mul(&x, &q2);
                    }
                    hit
                }
                Order::Infinite => {
                    let (mut up, mut down) = (f.one(), f.one());
                    let mut hit = None;
                    for s in 0..=64i64 {
                        if &up == u {
                            hit = Some(s);
                            break;
                        }
                        if &down == u {
                            hit = Some(-s);
                            break;
                        }
                        up = f.mul(&up, &q2);
                        down = f.mul(&down, &q2_inv);
                    }
                    hit
                }
            };
            residues.push(found.ok_or(CombError::NotPowerOfQSquared(j + 1))?);
        }
        Multicharge::new(e, residues)
    }

    pub fn e(&self) -> Order {
        self.e
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    pub fn level(&self) -> usize {
        self.residues.len()
    }

    fn reduce(&self, x: i64) -> i64 {
        match self.e {
            Order::Finite(m) => x.rem_euclid(m as i64),
            Order::Infinite => x,
        }
    }
}

/// A node `(component, row, column)`, all 0-based.
pub type Node = (usize, usize, usize);

fn residue(mc: &Multicharge, node: Node) -> i64 {
    let (c, row, col) = node;
    mc.reduce(col as i64 - row as i64 + mc.residues[c])
}

/// Addable and removable nodes of `λ` sorted by (component, row).
fn addable_removable(lambda: &Multipartition) -> Vec<(Node, bool)> {
    let mut out = Vec::new();
    for (c, p) in lambda.0.iter().enumerate() {
        for row in 0..=p.len() {
            let len = p.part(row);
            let above = if row == 0 { usize::MAX } else { p.part(row - 1) };
            // removable node ends this row
            if len > 0 && p.part(row + 1) < len {
                out.push(((c, row, len - 1), false));
            }
            if len < above {
                out.push(((c, row, len), true));
            }
        }
    }
    out
}

/// The good `i`-node of `λ`, if any: read addable (`+`) and removable
/// (`-`) `i`-nodes from the top component and row downwards, cancel
/// adjacent `-+` pairs, and take the first surviving `-`.
pub fn good_node(lambda: &Multipartition, mc: &Multicharge, i: i64) -> Option<Node> {
    let mut stack: Vec<Node> = Vec::new();
    for (node, addable) in addable_removable(lambda) {
        if residue(mc, node) != i {
            continue;
        }
        if addable {
            // cancels the nearest unmatched removable node above it
            stack.pop();
        } else {
            stack.push(node);
        }
    }
    stack.first().copied()
}

fn remove_node(lambda: &Multipartition, node: Node) -> Multipartition {
    let mut out = lambda.clone();
    let (c, row, _) = node;
    out.0[c].0[row] -= 1;
    if out.0[c].0[row] == 0 {
        out.0[c].0.pop();
    }
    out
}

/// Sequence of good nodes removed on the way from `λ` to the empty
/// multipartition, or `None` if `λ` gets stuck.
pub fn good_node_path(lambda: &Multipartition, mc: &Multicharge) -> Result<Option<Vec<Node>>, CombError> {
    if lambda.level() != mc.level() {
        return Err(CombError::LevelMismatch(lambda.level(), mc.level()));
    }
    let mut cur = lambda.clone();
    let mut path = Vec::new();
    while !cur.is_empty() {
        let mut residues: Vec<i64> = addable_removable(&cur)
            .into_iter()
            .filter(|(_, add)| !add)
            .map(|(node, _)| residue(mc, node))
            .collect();
        residues.sort_unstable();
        residues.dedup();
        let Some(node) = residues.into_iter().find_map(|i| good_node(&cur, mc, i)) else {
            return Ok(None);
        };
        path.push(node);
        cur = remove_node(&cur, node);
    }
    Ok(Some(path))
}

pub fn is_kleshchev(lambda: &Multipartition, mc: &Multicharge) -> Result<bool, CombError> {
    Ok(good_node_path(lambda, mc)?.is_some())
}

/// `[start, start + 1, ..., start + len - 1]`, residues mod `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub start: i64,
    pub len: usize,
}

impl Segment {
    pub fn residues(&self, e: Order) -> Vec<i64> {
        (0..self.len as i64)
            .map(|k| match e {
                Order::Finite(m) => (self.start + k).rem_euclid(m as i64),
                Order::Infinite => self.start + k,
            })
            .collect()
    }
}

/// Canonical order: longer first, then smaller start.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        other.len.cmp(&self.len).then(self.start.cmp(&other.start))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multiset of segments kept sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multisegment(Vec<Segment>);

impl Multisegment {
    pub fn new(mut segments: Vec<Segment>) -> Self {
        segments.sort();
        Multisegment(segments)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    /// Total length.
    pub fn size(&self) -> usize {
        self.0.iter().map(|s| s.len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn render(&self, e: Order) -> String {
        let mut s = String::from("{");
        for (k, seg) in self.0.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push('[');
            for (t, x) in seg.residues(e).iter().enumerate() {
                if t > 0 {
                    s.push(',');
                }
                s.push_str(&alloc::format!("{x}"));
            }
            s.push(']');
        }
        s.push('}');
        s
    }
}

/// For every length `j` occurring in `Δ`, some start `i` in `Z_e` has
/// `[i, ..., i + j - 1]` absent from `Δ`.
pub fn is_aperiodic(delta: &Multisegment, e: Order) -> bool {
    let Order::Finite(m) = e else {
        return true;
    };
    let m = m as i64;
    let lengths: BTreeSet<usize> = delta.0.iter().map(|s| s.len).collect();
    lengths
        .into_iter()
        .all(|j| (0..m).any(|i| !delta.0.iter().any(|s| s.len == j && s.start.rem_euclid(m) == i)))
}

fn starts(e: Order, window: Option<Range<i64>>) -> Result<Vec<i64>, CombError> {
    match e {
        Order::Finite(0) | Order::Finite(1) => Err(CombError::EIsOne),
        Order::Finite(m) => Ok((0..m as i64).collect()),
        Order::Infinite => window.map(|w| w.collect()).ok_or(CombError::NeedWindow),
    }
}

/// `M_e^n`: aperiodic multisegments of total length `n`, canonically
/// sorted. For `e = ∞` starts range over `window`.
pub fn enumerate_aperiodic(e: Order, n: usize, window: Option<Range<i64>>) -> Result<Vec<Multisegment>, CombError> {
    let starts = starts(e, window)?;
    let mut kinds: Vec<Segment> = (1..=n)
        .flat_map(|len| starts.iter().map(move |&start| Segment { start, len }))
        .collect();
    kinds.sort();
    fn go(kinds: &[Segment], from: usize, rem: usize, cur: &mut Vec<Segment>, e: Order, out: &mut Vec<Multisegment>) {
        if rem == 0 {
            let m = Multisegment(cur.clone());
            if is_aperiodic(&m, e) {
                out.push(m);
            }
            return;
        }
        for k in from..kinds.len() {
            if kinds[k].len > rem {
                continue;
            }
            cur.push(kinds[k]);
            go(kinds, k, rem - kinds[k].len, cur, e, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&kinds, 0, n, &mut Vec::new(), e, &mut out);
    out.sort();
    Ok(out)
}

/// Sufficiency of the index set is only established at the ends of the
/// `f` range.
pub const AFFINE_CAVEAT: &str =
    "for 0 < f < floor(n/2) membership is necessary; it is not established that every pair indexes a simple module";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineClassification {
    pub n: usize,
    pub e: Order,
    pub omega_all_zero: bool,
    pub entries: Vec<(usize, Multisegment)>,
    pub caveat: &'static str,
}

/// Pairs `(f, Δ)` with `Δ` in `M_e^(n-2f)`; `f = n/2` is dropped when all
/// `ω_a` vanish and `n` is even.
pub fn classify_affine(
    n: usize,
    e: Order,
    omega_all_zero: bool,
    window: Option<Range<i64>>,
) -> Result<AffineClassification, CombError> {
    let mut entries = Vec::new();
    for f in 0..=n / 2 {
        if omega_all_zero && n % 2 == 0 && f == n / 2 {
            continue;
        }
        for m in enumerate_aperiodic(e, n - 2 * f, window.clone())? {
            entries.push((f, m));
        }
    }
    Ok(AffineClassification {
        n,
        e,
        omega_all_zero,
        entries,
        caveat: AFFINE_CAVEAT,
    })
}

/// `(f, λ)` with `λ` Kleshchev of size `n - 2f`, `f` up to `n/2` (strictly
/// below when all `ω_a` vanish and `n` is even).
pub fn classify_with_multicharge(
    mc: &Multicharge,
    n: usize,
    omega_all_zero: bool,
) -> Result<Vec<IndexPair>, CombError> {
    let mut out = Vec::new();
    for f in 0..=n / 2 {
        if omega_all_zero && n % 2 == 0 && f == n / 2 {
            continue;
        }
        for lambda in enumerate_multipartitions(mc.level(), n - 2 * f) {
            if is_kleshchev(&lambda, mc)? {
                out.push(IndexPair { f, lambda });
            }
        }
    }
    Ok(out)
}

/// Index set of the simple modules of `B_(r,n)(u)` for admissible
/// parameters, after checking the multicharge against `u` and `q`.
pub fn classify_cyclotomic<F: Field>(
    p: &ParameterSet<F>,
    mc: &Multicharge,
    n: usize,
) -> Result<Vec<IndexPair>, CombError> {
    if !matches!(p.mode(), OmegaMode::Admissible) {
        return Err(CombError::NotAdmissible);
    }
    if mc.level() != p.r() {
        return Err(CombError::LevelMismatch(mc.level(), p.r()));
    }
    if mc.e() != p.e() {
        return Err(CombError::InconsistentMulticharge(alloc::format!(
            "multicharge e = {} but q^2 has order {}",
            mc.e(),
            p.e()
        )));
    }
    let f = p.field();
    let q2 = f.mul(p.q(), p.q());
    for (j, (s, u)) in mc.residues().iter().zip(p.u()).enumerate() {
        let v = f.pow(&q2, *s).map_err(crate::params::ParamError::from)?;
        if &v != u {
            return Err(CombError::InconsistentMulticharge(alloc::format!(
                "q^(2*{s}) != u{}",
                j + 1
            )));
        }
    }
    let all_zero = p.omega_vanishing_report()?.all_zero;
    classify_with_multicharge(mc, n, all_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(lists: &[&[usize]]) -> Multipartition {
        Multipartition::from_lists(lists.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|m| partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(enumerate_multipartitions(2, 2).len(), 5);
        assert_eq!(enumerate_multipartitions(2, 0).len(), 1);
        assert_eq!(enumerate_multipartitions(1, 3).len(), 3);
        assert!(Partition::new(vec![1, 2]).is_none());
    }

    #[test]
    fn dominance_examples() {
        assert!(is_dominated_by(&mp(&[&[1], &[2]]), &mp(&[&[2], &[1]])).unwrap());
        assert!(!is_dominated_by(&mp(&[&[2], &[1]]), &mp(&[&[1], &[2]])).unwrap());
        assert!(is_dominated_by(&mp(&[&[1, 1, 1]]), &mp(&[&[3]])).unwrap());
        assert!(!is_dominated_by(&mp(&[&[3]]), &mp(&[&[1, 1, 1]])).unwrap());
        assert!(dominates(&mp(&[&[2, 1]]), &mp(&[&[2, 1]])).unwrap());
        assert_eq!(
            dominates(&mp(&[&[2]]), &mp(&[&[1]])),
            Err(CombError::SizeMismatch(2, 1))
        );
    }

    #[test]
    fn poset_sizes() {
        assert_eq!(enumerate_index_poset(1, 3, PosetMode::Full).len(), 4);
        assert_eq!(enumerate_index_poset(2, 2, PosetMode::Full).len(), 6);
        assert_eq!(enumerate_index_poset(2, 2, PosetMode::Semi(1)).len(), 6);
        assert_eq!(enumerate_index_poset(2, 2, PosetMode::Semi(0)).len(), 5);
    }

    #[test]
    fn kleshchev_level_one_examples() {
        let mc2 = Multicharge::new(Order::Finite(2), vec![0]).unwrap();
        assert!(is_kleshchev(&mp(&[&[1, 1]]), &mc2).unwrap());
        assert!(!is_kleshchev(&mp(&[&[2]]), &mc2).unwrap());
        assert!(is_kleshchev(&mp(&[&[]]), &mc2).unwrap());
        let inf = Multicharge::new(Order::Infinite, vec![0]).unwrap();
        assert!(partitions(6)
            .into_iter()
            .all(|p| is_kleshchev(&Multipartition::new(vec![p]), &inf).unwrap()));
        assert_eq!(Multicharge::new(Order::Finite(1), vec![0]), Err(CombError::EIsOne));
    }

    #[test]
    fn kleshchev_path_removes_nodes_in_order() {
        let mc = Multicharge::new(Order::Finite(3), vec![0, 1]).unwrap();
        let mut seen = 0;
        for lam in enumerate_multipartitions(2, 4) {
            let Some(path) = good_node_path(&lam, &mc).unwrap() else {
                continue;
            };
            seen += 1;
            assert_eq!(path.len(), lam.size());
            // every intermediate multipartition is Kleshchev
            let mut cur = lam;
            for node in path {
                cur = remove_node(&cur, node);
                assert!(is_kleshchev(&cur, &mc).unwrap());
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn aperiodic_examples() {
        let e2 = Order::Finite(2);
        let seg = |start, len| Segment { start, len };
        assert!(!is_aperiodic(&Multisegment::new(vec![seg(0, 1), seg(1, 1)]), e2));
        assert!(is_aperiodic(&Multisegment::new(vec![seg(0, 1), seg(0, 1)]), e2));
        assert!(is_aperiodic(
            &Multisegment::new(vec![seg(0, 1), seg(1, 1)]),
            Order::Infinite
        ));
        assert_eq!(enumerate_aperiodic(e2, 1, None).unwrap().len(), 2);
        assert_eq!(enumerate_aperiodic(e2, 2, None).unwrap().len(), 4);
        assert_eq!(enumerate_aperiodic(Order::Finite(1), 2, None), Err(CombError::EIsOne));
        assert_eq!(
            enumerate_aperiodic(Order::Infinite, 2, None),
            Err(CombError::NeedWindow)
        );
        // window {0, 1}: [0],[0] / [1],[1] / [0],[1] / [0,1] / [1,2]
        assert_eq!(enumerate_aperiodic(Order::Infinite, 2, Some(0..2)).unwrap().len(), 5);
    }

    #[test]
    fn affine_classification_parity() {
        let e2 = Order::Finite(2);
        assert_eq!(classify_affine(2, e2, true, None).unwrap().entries.len(), 4);
        assert_eq!(classify_affine(2, e2, false, None).unwrap().entries.len(), 5);
        assert_eq!(classify_affine(1, e2, true, None).unwrap().entries.len(), 2);
    }

    #[test]
    fn cyclotomic_classification_level_one() {
        let mc = Multicharge::new(Order::Finite(2), vec![0]).unwrap();
        let entries = classify_with_multicharge(&mc, 2, false).unwrap();
        assert_eq!(
            entries,
            vec![
                IndexPair {
                    f: 0,
                    lambda: mp(&[&[1, 1]])
                },
                IndexPair {
                    f: 1,
                    lambda: mp(&[&[]])
                },
            ]
        );
        assert_eq!(classify_with_multicharge(&mc, 2, true).unwrap().len(), 1);
        let big = Multicharge::new(Order::Finite(50), vec![0]).unwrap();
        assert_eq!(classify_with_multicharge(&big, 3, false).unwrap().len(), 4);
    }
}
