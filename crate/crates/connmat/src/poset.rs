//! Finite strict posets, their intervals, adjacent tuples and
//! noncomparability tests.
//!
//! Elements are opaque strings with a fixed user-supplied order; internally
//! everything works with indices into that order, and every canonical
//! ordering in the crate derives from it.

use crate::{Error, Result};
use std::fmt;

/// A finite strict poset. The `gt` relation is stored transitively closed
/// at construction, so all queries are O(1) pair lookups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    gt: Vec<bool>, // n*n row-major, gt[q*n+p] <=> q > p
}

impl Poset {
    /// Builds a poset from named elements and `(q, p)` pairs meaning `q > p`,
    /// taking the transitive closure of the given relations.
    pub fn from_relations<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Poset> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        if elements.is_empty() {
            return Err(Error::InvalidInstance("poset needs at least one element".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let idx = |name: &str| -> Result<usize> {
            elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let mut gt = vec![false; n * n];
        for (q, p) in relations {
            let (qi, pi) = (idx(q.as_ref())?, idx(p.as_ref())?);
            gt[qi * n + pi] = true;
        }
        // Floyd-Warshall closure
        for k in 0..n {
            for i in 0..n {
                if !gt[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if gt[k * n + j] {
                        gt[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            if gt[i * n + i] {
                return Err(Error::Cycle(elements[i].clone()));
            }
        }
        Ok(Poset { elements, gt })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn element_index(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// `q > p` in the closed order.
    pub fn gt(&self, q: usize, p: usize) -> bool {
        self.gt[q * self.len() + p]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.gt(a, b) || self.gt(b, a)
    }

    /// Height of an element: length of the longest strictly descending
    /// chain below it. Minimal elements have height zero.
    pub fn height(&self, q: usize) -> usize {
        (0..self.len())
            .filter(|&r| self.gt(q, r))
            .map(|r| self.height(r) + 1)
            .max()
            .unwrap_or(0)
    }

    fn check_members(&self, members: &[usize]) -> Result<()> {
        for &m in members {
            if m >= self.len() {
                return Err(Error::UnknownElement(format!("#{m}")));
            }
        }
        Ok(())
    }

    /// Convexity test: a subset is an interval iff it contains every
    /// element strictly between two of its members.
    pub fn is_interval(&self, members: &[usize]) -> Result<bool> {
        self.check_members(members)?;
        for &q in members {
            for &p in members {
                if !self.gt(q, p) {
                    continue;
                }
                for r in 0..self.len() {
                    if self.gt(q, r) && self.gt(r, p) && !members.contains(&r) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// All intervals in canonical order: by size, then lexicographically on
    /// the member lists (which are kept in element order).
    pub fn intervals(&self) -> Vec<Interval> {
        let n = self.len();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if self.is_interval(&members).expect("in-range members") {
                out.push(Interval { members });
            }
        }
        out.sort();
        out
    }

    /// Adjacency of a tuple of intervals: mutually disjoint, interval
    /// union, and no element of an earlier part above an element of a
    /// later part.
    pub fn is_adjacent(&self, tuple: &[Interval]) -> bool {
        let mut union: Vec<usize> = Vec::new();
        for iv in tuple {
            for &m in iv.members() {
                if union.contains(&m) {
                    return false; // not disjoint
                }
                union.push(m);
            }
        }
        union.sort_unstable();
        if !self.is_interval(&union).expect("members from intervals") {
            return false;
        }
        for j in 0..tuple.len() {
            for k in j + 1..tuple.len() {
                for &p in tuple[j].members() {
                    for &q in tuple[k].members() {
                        if self.gt(p, q) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// All adjacent `n`-tuples in canonical order (lexicographic in the
    /// canonical interval order, componentwise).
    pub fn adjacent_tuples(&self, n: usize) -> Vec<Vec<Interval>> {
        assert!(n >= 1, "tuple length must be positive");
        let intervals = self.intervals();
        let mut out = Vec::new();
        let mut stack: Vec<Interval> = Vec::new();
        fn rec(
            poset: &Poset,
            intervals: &[Interval],
            n: usize,
            stack: &mut Vec<Interval>,
            out: &mut Vec<Vec<Interval>>,
        ) {
            if stack.len() == n {
                if poset.is_adjacent(stack) {
                    out.push(stack.clone());
                }
                return;
            }
            for iv in intervals {
                stack.push(iv.clone());
                rec(poset, intervals, n, stack, out);
                stack.pop();
            }
        }
        rec(self, &intervals, n, &mut stack, &mut out);
        out
    }

    /// `I` and `J` are noncomparable iff both (I, J) and (J, I) are adjacent.
    pub fn noncomparable(&self, i: &Interval, j: &Interval) -> bool {
        self.is_adjacent(&[i.clone(), j.clone()]) && self.is_adjacent(&[j.clone(), i.clone()])
    }

    /// Renders an interval with element names, e.g. `{1,3}`.
    pub fn interval_label(&self, iv: &Interval) -> String {
        format!("{{{}}}", self.interval_key(iv))
    }

    /// Canonical string key: member names joined by commas in element order.
    pub fn interval_key(&self, iv: &Interval) -> String {
        iv.members()
            .iter()
            .map(|&m| self.element_name(m).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses an interval from its canonical key.
    pub fn interval_from_key(&self, key: &str) -> Result<Interval> {
        if key.is_empty() {
            return Ok(Interval::empty());
        }
        let mut members = Vec::new();
        for part in key.split(',') {
            members.push(self.element_index(part)?);
        }
        Interval::new(self, members)
    }
}

/// A convex subset of a poset; members are stored sorted in the poset's
/// canonical element order. The empty interval is first class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    members: Vec<usize>,
}

impl Interval {
    pub fn empty() -> Interval {
        Interval { members: Vec::new() }
    }

    /// Validates convexity against the poset.
    pub fn new(poset: &Poset, mut members: Vec<usize>) -> Result<Interval> {
        members.sort_unstable();
        members.dedup();
        if !poset.is_interval(&members)? {
            let label = members
                .iter()
                .map(|&m| poset.element_name(m).to_string())
                .collect::<Vec<_>>()
                .join(",");
            return Err(Error::NotAnInterval(format!("{{{label}}}")));
        }
        Ok(Interval { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.contains(&e)
    }

    /// Union with a disjoint interval, re-sorted into canonical order.
    pub fn union(&self, other: &Interval) -> Vec<usize> {
        let mut u: Vec<usize> = self.members.iter().chain(other.members.iter()).copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::from_relations(&["1", "2", "3"], &[("3", "2"), ("2", "1")]).unwrap()
    }

    fn wedge() -> Poset {
        // 3 > 1 and 3 > 2, with 1, 2 incomparable
        Poset::from_relations(&["1", "2", "3"], &[("3", "1"), ("3", "2")]).unwrap()
    }

    fn iv(p: &Poset, members: &[usize]) -> Interval {
        Interval::new(p, members.to_vec()).unwrap()
    }

    #[test]
    fn closure_of_chain() {
        let p = chain3();
        assert!(p.gt(2, 1) && p.gt(1, 0) && p.gt(2, 0));
        assert!(!p.gt(0, 2) && !p.gt(1, 1));
    }

    #[test]
    fn singleton_poset() {
        let p = Poset::from_relations(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(!p.gt(0, 0));
        assert_eq!(p.intervals().len(), 2);
    }

    #[test]
    fn two_cycle_rejected() {
        let r = Poset::from_relations(&["1", "2"], &[("1", "2"), ("2", "1")]);
        assert!(matches!(r, Err(Error::Cycle(_))));
    }

    #[test]
    fn unknown_element_in_relation() {
        let r = Poset::from_relations(&["1", "2"], &[("1", "7")]);
        assert!(matches!(r, Err(Error::UnknownElement(_))));
    }

    #[test]
    fn interval_examples() {
        let p = chain3();
        assert!(!p.is_interval(&[0, 2]).unwrap()); // 3 > 2 > 1 with 2 missing
        assert!(p.is_interval(&[]).unwrap());
        let w = wedge();
        assert!(w.is_interval(&[0, 2]).unwrap()); // nothing strictly between 3 and 1
    }

    #[test]
    fn intervals_of_chain() {
        let p = chain3();
        let ivs = p.intervals();
        assert_eq!(ivs.len(), 7);
        let expected: Vec<Vec<usize>> =
            vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 1, 2]];
        let got: Vec<Vec<usize>> = ivs.iter().map(|i| i.members().to_vec()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn intervals_of_wedge() {
        assert_eq!(wedge().intervals().len(), 8);
    }

    #[test]
    fn adjacency_examples() {
        let w = wedge();
        let one = iv(&w, &[0]);
        let three = iv(&w, &[2]);
        assert!(w.is_adjacent(&[one.clone(), three.clone()]));
        assert!(!w.is_adjacent(&[three.clone(), one.clone()])); // 3 > 1
        assert!(w.is_adjacent(&[iv(&w, &[0, 1]), Interval::empty()]));
    }

    #[test]
    fn adjacent_pairs_of_chain2() {
        let p = Poset::from_relations(&["1", "2"], &[("2", "1")]).unwrap();
        let pairs = p.adjacent_tuples(2);
        let nonempty: Vec<_> =
            pairs.iter().filter(|t| t.iter().all(|i| !i.is_empty())).collect();
        assert_eq!(nonempty.len(), 1);
        assert_eq!(nonempty[0][0].members(), &[0]);
        assert_eq!(nonempty[0][1].members(), &[1]);
    }

    #[test]
    fn adjacent_triples_of_chain3() {
        let p = chain3();
        let triples = p.adjacent_tuples(3);
        let nonempty: Vec<_> =
            triples.iter().filter(|t| t.iter().all(|i| !i.is_empty())).collect();
        assert_eq!(nonempty.len(), 1);
        let t = nonempty[0];
        assert_eq!(
            (t[0].members(), t[1].members(), t[2].members()),
            (&[0usize][..], &[1usize][..], &[2usize][..])
        );
    }

    #[test]
    fn adjacent_tuples_n1_equals_intervals() {
        let w = wedge();
        let singles: Vec<Interval> = w.adjacent_tuples(1).into_iter().map(|mut t| t.remove(0)).collect();
        assert_eq!(singles, w.intervals());
    }

    #[test]
    fn noncomparable_examples() {
        let w = wedge();
        assert!(w.noncomparable(&iv(&w, &[0]), &iv(&w, &[1])));
        let c = Poset::from_relations(&["1", "2"], &[("2", "1")]).unwrap();
        assert!(!c.noncomparable(&iv(&c, &[0]), &iv(&c, &[1])));
        assert!(c.noncomparable(&Interval::empty(), &iv(&c, &[0, 1])));
    }

    #[test]
    fn union_of_adjacent_tuple_is_interval() {
        let w = wedge();
        for t in w.adjacent_tuples(2) {
            let mut u: Vec<usize> = t.iter().flat_map(|i| i.members().iter().copied()).collect();
            u.sort_unstable();
            assert!(w.is_interval(&u).unwrap());
        }
    }

    #[test]
    fn triples_consistent_with_pairs() {
        let w = wedge();
        for t in w.adjacent_tuples(3) {
            let (i, j, k) = (&t[0], &t[1], &t[2]);
            assert!(w.is_adjacent(&[i.clone(), j.clone()]));
            assert!(w.is_adjacent(&[j.clone(), k.clone()]));
            let ij = Interval::new(&w, i.union(j)).unwrap();
            assert!(w.is_adjacent(&[ij, k.clone()]));
        }
    }

    #[test]
    fn adjacency_preserved_by_automorphism() {
        // swapping 1 and 2 is an order automorphism of the wedge
        let w = wedge();
        let sigma = [1usize, 0, 2];
        for t in w.adjacent_tuples(2) {
            let mapped: Vec<Interval> = t
                .iter()
                .map(|i| {
                    let m: Vec<usize> = i.members().iter().map(|&e| sigma[e]).collect();
                    Interval::new(&w, m).unwrap()
                })
                .collect();
            assert!(w.is_adjacent(&mapped));
        }
    }

    #[test]
    fn heights() {
        let p = chain3();
        assert_eq!((p.height(0), p.height(1), p.height(2)), (0, 1, 2));
    }

    #[test]
    fn interval_keys_roundtrip() {
        let w = wedge();
        for ivl in w.intervals() {
            let key = w.interval_key(&ivl);
            assert_eq!(w.interval_from_key(&key).unwrap(), ivl);
        }
    }
}
