//! Cycle enumeration, negative-cycle covers, packings and double covers.
//!
//! Cycles are enumerated as edge sets: loops, pairs of parallel edges, and
//! simple cycles of length at least three in the underlying simple graph
//! expanded over every choice of parallel edge. Each simple cycle is found
//! once by starting at its smallest vertex and requiring the second vertex
//! to be smaller than the last.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frustration::check_size;
use crate::graph::{sign_of, Cycle, EdgeId, EdgeSet, Sign, SignedGraph};
use crate::limits::Limits;

/// Visit every cycle whose edges lie in `within`. Stops early when the
/// visitor breaks.
pub fn visit_cycles(
    g: &SignedGraph,
    within: EdgeSet,
    mut f: impl FnMut(EdgeSet) -> ControlFlow<()>,
) -> Result<()> {
    check_size(g)?;
    let n = g.vertex_count();
    let mut pairs: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
    for e in within.iter() {
        let ed = g.edge(e);
        if ed.is_loop() {
            if f(EdgeSet::single(e)).is_break() {
                return Ok(());
            }
        } else {
            pairs.entry(ed.pair()).or_default().push(e);
        }
    }
    for list in pairs.values() {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                if f(EdgeSet::single(list[i]).with(list[j])).is_break() {
                    return Ok(());
                }
            }
        }
    }
    let mut nbr = vec![Vec::new(); n];
    for &(a, b) in pairs.keys() {
        nbr[a].push(b);
        nbr[b].push(a);
    }
    for l in &mut nbr {
        l.sort_unstable();
    }

    struct Walk<'a, F> {
        nbr: &'a [Vec<usize>],
        pairs: &'a BTreeMap<(usize, usize), Vec<EdgeId>>,
        path: Vec<usize>,
        on_path: u64,
        f: F,
        stop: bool,
    }

    impl<F: FnMut(EdgeSet) -> ControlFlow<()>> Walk<'_, F> {
        fn expand(&mut self, i: usize, acc: EdgeSet) {
            if self.stop {
                return;
            }
            let len = self.path.len();
            if i == len {
                if (self.f)(acc).is_break() {
                    self.stop = true;
                }
                return;
            }
            let a = self.path[i];
            let b = self.path[(i + 1) % len];
            let key = if a < b { (a, b) } else { (b, a) };
            for &e in &self.pairs[&key] {
                self.expand(i + 1, acc.with(e));
            }
        }

        fn dfs(&mut self, s: usize, v: usize) {
            for idx in 0..self.nbr[v].len() {
                if self.stop {
                    return;
                }
                let w = self.nbr[v][idx];
                if w == s {
                    if self.path.len() >= 3 && self.path[1] < *self.path.last().unwrap() {
                        self.expand(0, EdgeSet::EMPTY);
                    }
                } else if w > s && self.on_path >> w & 1 == 0 {
                    self.path.push(w);
                    self.on_path |= 1 << w;
                    self.dfs(s, w);
                    self.on_path &= !(1 << w);
                    self.path.pop();
                }
            }
        }
    }

    let mut walk = Walk {
        nbr: &nbr,
        pairs: &pairs,
        path: Vec::new(),
        on_path: 0,
        f: &mut f,
        stop: false,
    };
    for s in 0..n {
        walk.path = vec![s];
        walk.on_path = 1 << s;
        walk.dfs(s, s);
        if walk.stop {
            break;
        }
    }
    Ok(())
}

/// All cycles within `within`, optionally only the negative ones, refusing
/// to materialize more than the cycle cap.
pub(crate) fn cycle_sets(g: &SignedGraph, within: EdgeSet, negative_only: bool, limits: &Limits) -> Result<Vec<EdgeSet>> {
    let mut out = Vec::new();
    let mut overflow = false;
    visit_cycles(g, within, |c| {
        if !negative_only || sign_of(g, c).is_negative() {
            if out.len() == limits.cycle_cap {
                overflow = true;
                return ControlFlow::Break(());
            }
            out.push(c);
        }
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::CycleCapExceeded {
            cap: limits.cycle_cap,
        });
    }
    Ok(out)
}

fn to_cycles(g: &SignedGraph, sets: &[EdgeSet]) -> Vec<Cycle> {
    sets.iter()
        .map(|s| Cycle::from_edges(g, &s.to_vec()).expect("enumerated edge set is a cycle"))
        .collect()
}

/// Every cycle of `g`.
pub fn enumerate_cycles(g: &SignedGraph) -> Result<Vec<Cycle>> {
    Ok(to_cycles(g, &cycle_sets(g, g.all_edges(), false, &Limits::current())?))
}

/// Every negative cycle of `g`.
pub fn negative_cycles(g: &SignedGraph) -> Result<Vec<Cycle>> {
    Ok(to_cycles(g, &cycle_sets(g, g.all_edges(), true, &Limits::current())?))
}

/// Lexicographically least minimum edge set meeting every cycle in
/// `cycles`. Edge subsets of equal size are compared as sorted id lists.
pub(crate) fn min_hitting_set(cycles: &[EdgeSet], m: usize) -> Vec<EdgeId> {
    fn rec(cycles: &[EdgeSet], m: usize, next: usize, chosen: &mut Vec<EdgeId>, hit: EdgeSet, left: usize) -> bool {
        let unhit: Vec<&EdgeSet> = cycles.iter().filter(|c| c.is_disjoint(hit)).collect();
        if unhit.is_empty() {
            return true;
        }
        if left == 0 {
            return false;
        }
        // every unhit cycle still needs an edge with id >= next
        let tail = if next >= 128 { 0 } else { u128::MAX << next };
        if unhit.iter().any(|c| c.0 & tail == 0) {
            return false;
        }
        for e in next..m {
            if !unhit.iter().any(|c| c.contains(e)) {
                continue;
            }
            chosen.push(e);
            if rec(cycles, m, e + 1, chosen, hit.with(e), left - 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    for size in 0..=m {
        let mut chosen = Vec::new();
        if rec(cycles, m, 0, &mut chosen, EdgeSet::EMPTY, size) {
            return chosen;
        }
    }
    unreachable!("the full edge set meets every cycle")
}

/// Lexicographically least minimum negative-cycle cover.
pub fn min_negative_cycle_cover(g: &SignedGraph) -> Result<Vec<EdgeId>> {
    let cycles = cycle_sets(g, g.all_edges(), true, &Limits::current())?;
    Ok(min_hitting_set(&cycles, g.edge_count()))
}

/// The frustration index computed as the size of a minimum negative-cycle
/// cover. Independent of the switching search.
pub fn frustration_by_cover(g: &SignedGraph) -> Result<usize> {
    Ok(min_negative_cycle_cover(g)?.len())
}

/// Largest multiset of cycles from `cycles` using each edge at most
/// `capacity` times. Returns indices into `cycles`.
pub(crate) fn max_packing(cycles: &[EdgeSet], m: usize, capacity: u8) -> Vec<usize> {
    struct St<'a> {
        cycles: &'a [EdgeSet],
        through: Vec<Vec<usize>>,
        cap: Vec<u8>,
        chosen: Vec<usize>,
        best: Vec<usize>,
    }
    impl St<'_> {
        fn feasible(&self, c: usize) -> bool {
            self.cycles[c].iter().all(|e| self.cap[e] > 0)
        }
        fn rec(&mut self, focus: Option<usize>, min_idx: usize) {
            let m = self.cap.len();
            let mut lowest = None;
            let mut open = 0usize;
            let mut min_len = usize::MAX;
            for e in 0..m {
                if self.cap[e] == 0 {
                    continue;
                }
                let mut any = false;
                for &c in &self.through[e] {
                    if self.feasible(c) {
                        any = true;
                        min_len = min_len.min(self.cycles[c].len());
                    }
                }
                if any {
                    open += self.cap[e] as usize;
                    if lowest.is_none() {
                        lowest = Some(e);
                    }
                }
            }
            let Some(e) = lowest else {
                if self.chosen.len() > self.best.len() {
                    self.best = self.chosen.clone();
                }
                return;
            };
            if self.chosen.len() + open / min_len <= self.best.len() {
                return;
            }
            let floor = if focus == Some(e) { min_idx } else { 0 };
            let cands: Vec<usize> = self.through[e]
                .iter()
                .copied()
                .filter(|&c| c >= floor && self.feasible(c))
                .collect();
            for c in cands {
                for x in self.cycles[c].iter() {
                    self.cap[x] -= 1;
                }
                self.chosen.push(c);
                self.rec(Some(e), c);
                self.chosen.pop();
                for x in self.cycles[c].iter() {
                    self.cap[x] += 1;
                }
            }
            let saved = self.cap[e];
            self.cap[e] = 0;
            self.rec(None, 0);
            self.cap[e] = saved;
        }
    }
    let mut through = vec![Vec::new(); m];
    for (i, c) in cycles.iter().enumerate() {
        for e in c.iter() {
            through[e].push(i);
        }
    }
    let mut st = St {
        cycles,
        through,
        cap: vec![capacity; m],
        chosen: Vec::new(),
        best: Vec::new(),
    };
    st.rec(None, 0);
    st.best
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleFamily {
    pub schema: u32,
    pub cycles: Vec<Vec<EdgeId>>,
    pub signs: Vec<Sign>,
    /// How many cycles of the family contain each edge, indexed by edge id.
    pub incidence: Vec<usize>,
    /// Number of edges covered exactly `i` times, keyed by `i`.
    pub histogram: BTreeMap<usize, usize>,
}

impl CycleFamily {
    pub fn new(g: &SignedGraph, cycles: &[Cycle]) -> CycleFamily {
        let incidence = incidence(g, cycles);
        let mut histogram = BTreeMap::new();
        for &c in &incidence {
            *histogram.entry(c).or_insert(0) += 1;
        }
        CycleFamily {
            schema: 1,
            cycles: cycles.iter().map(|c| c.edges().to_vec()).collect(),
            signs: cycles.iter().map(|c| c.sign(g)).collect(),
            incidence,
            histogram,
        }
    }
}

fn incidence(g: &SignedGraph, cycles: &[Cycle]) -> Vec<usize> {
    let mut inc = vec![0; g.edge_count()];
    for c in cycles {
        for &e in c.edges() {
            inc[e] += 1;
        }
    }
    inc
}

/// Maximum number of pairwise edge-disjoint negative cycles, with a witness.
pub fn max_edge_disjoint_negative_cycles(g: &SignedGraph) -> Result<Vec<Cycle>> {
    packing_within(g, g.all_edges(), 1)
}

/// Largest family of negative cycles using each edge at most twice. The
/// family is a multiset: a cycle may appear twice.
pub fn max_leq2_cover(g: &SignedGraph) -> Result<Vec<Cycle>> {
    packing_within(g, g.all_edges(), 2)
}

pub(crate) fn packing_within(g: &SignedGraph, within: EdgeSet, capacity: u8) -> Result<Vec<Cycle>> {
    let cycles = cycle_sets(g, within, true, &Limits::current())?;
    let best = max_packing(&cycles, g.edge_count(), capacity);
    Ok(best
        .into_iter()
        .map(|i| Cycle::from_edges(g, &cycles[i].to_vec()).expect("cycle"))
        .collect())
}

/// True when every member is a negative cycle and no edge lies in more
/// than two members.
pub fn is_leq2_cover(g: &SignedGraph, family: &[Cycle]) -> bool {
    family.iter().all(|c| c.sign(g).is_negative()) && incidence(g, family).iter().all(|&c| c <= 2)
}

/// True when every member is a negative cycle and every edge lies in
/// exactly two members.
pub fn is_double_cover(g: &SignedGraph, family: &[Cycle]) -> bool {
    family.iter().all(|c| c.sign(g).is_negative()) && incidence(g, family).iter().all(|&c| c == 2)
}

/// A negative-cycle double cover with exactly `order` cycles, if one
/// exists. With `allow_repeats` a cycle may be used twice.
pub fn negative_cycle_double_cover(g: &SignedGraph, order: usize, allow_repeats: bool) -> Result<Option<Vec<Cycle>>> {
    let mut cycles = cycle_sets(g, g.all_edges(), true, &Limits::current())?;
    cycles.sort_by_key(|c| (c.len(), c.0));
    let m = g.edge_count();
    if m == 0 {
        return Ok(if order == 0 { Some(Vec::new()) } else { None });
    }
    let mut through = vec![Vec::new(); m];
    for (i, c) in cycles.iter().enumerate() {
        for e in c.iter() {
            through[e].push(i);
        }
    }
    // `one` holds the edges still needing at least one cycle, `two` those
    // needing two. The cycles through an edge are taken in nondecreasing
    // index order, which `floor` records per edge.
    struct St<'a> {
        cycles: &'a [EdgeSet],
        through: &'a [Vec<usize>],
        one: u128,
        two: u128,
        floor: Vec<usize>,
        used: Vec<u8>,
        chosen: Vec<usize>,
        order: usize,
        repeats: bool,
    }
    impl St<'_> {
        fn fits(&self, c: usize) -> bool {
            let set = self.cycles[c];
            set.0 & !self.one == 0
                && (self.repeats || self.used[c] == 0)
                && set.iter().all(|e| c >= self.floor[e])
        }
        fn rec(&mut self) -> bool {
            let demand = (self.one.count_ones() + self.two.count_ones()) as usize;
            let slots = self.order - self.chosen.len();
            if demand == 0 {
                return slots == 0;
            }
            if slots == 0 {
                return false;
            }
            // edge with the fewest fitting cycles
            let mut pick: Option<(usize, Vec<usize>)> = None;
            let (mut lo, mut hi) = (usize::MAX, 0);
            for e in EdgeSet(self.one).iter() {
                let c: Vec<usize> = self.through[e].iter().copied().filter(|&c| self.fits(c)).collect();
                if c.is_empty() {
                    return false;
                }
                for &i in &c {
                    lo = lo.min(self.cycles[i].len());
                    hi = hi.max(self.cycles[i].len());
                }
                if pick.as_ref().map_or(true, |(_, p)| c.len() < p.len()) {
                    pick = Some((e, c));
                }
            }
            if demand > slots * hi || demand < slots * lo {
                return false;
            }
            let (e, cands) = pick.unwrap();
            let (one, two, floor) = (self.one, self.two, self.floor[e]);
            for c in cands {
                let set = self.cycles[c].0;
                self.one = one & !(set & !two);
                self.two = two & !set;
                self.floor[e] = c;
                self.used[c] += 1;
                self.chosen.push(c);
                if self.rec() {
                    return true;
                }
                self.chosen.pop();
                self.used[c] -= 1;
            }
            self.one = one;
            self.two = two;
            self.floor[e] = floor;
            false
        }
    }
    let all = g.all_edges().0;
    let mut st = St {
        cycles: &cycles,
        through: &through,
        one: all,
        two: all,
        floor: vec![0; m],
        used: vec![0; cycles.len()],
        chosen: Vec::new(),
        order,
        repeats: allow_repeats,
    };
    if !st.rec() {
        return Ok(None);
    }
    let mut chosen = st.chosen;
    chosen.sort_unstable();
    Ok(Some(
        chosen
            .into_iter()
            .map(|i| Cycle::from_edges(g, &cycles[i].to_vec()).expect("cycle"))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frustration::frustration_index;

    fn sg(s: &str) -> SignedGraph {
        SignedGraph::parse_sg(s).unwrap()
    }

    fn k4_minus() -> SignedGraph {
        sg("a b -\na c -\na d -\nb c -\nb d -\nc d -\n")
    }

    /// Oracle: test every edge subset for being a cycle.
    fn brute_cycles(g: &SignedGraph) -> usize {
        let m = g.edge_count();
        (1u128..1 << m)
            .filter(|&s| {
                let ids = EdgeSet(s).to_vec();
                Cycle::from_edges(g, &ids).is_ok()
            })
            .count()
    }

    #[test]
    fn counts_match_subset_oracle() {
        let k4 = k4_minus();
        assert_eq!(enumerate_cycles(&k4).unwrap().len(), 7);
        assert_eq!(brute_cycles(&k4), 7);
        let multi = sg("a a -\na b +\na b -\nb c +\nc a -\nc a +\nc c +\n");
        assert_eq!(enumerate_cycles(&multi).unwrap().len(), brute_cycles(&multi));
        let neg = negative_cycles(&k4).unwrap();
        assert_eq!(neg.len(), 4);
    }

    #[test]
    fn cover_equals_index() {
        let k4 = k4_minus();
        let cover = min_negative_cycle_cover(&k4).unwrap();
        assert_eq!(cover.len(), 2);
        // {ab, cd} is the least pair meeting all four triangles
        assert_eq!(cover, vec![0, 5]);
        assert_eq!(frustration_by_cover(&sg("v v -\nv v -\n")).unwrap(), 2);
        let g = sg("0 1 -\n1 2 +\n2 0 +\n2 3 -\n3 3 -\n3 4 +\n4 2 -\n4 2 -\n");
        assert_eq!(frustration_by_cover(&g).unwrap(), frustration_index(&g).unwrap().ell);
    }

    #[test]
    fn packing_and_double_cover_of_k4() {
        let k4 = k4_minus();
        assert_eq!(max_edge_disjoint_negative_cycles(&k4).unwrap().len(), 1);
        let two = max_leq2_cover(&k4).unwrap();
        assert_eq!(two.len(), 4);
        assert!(is_leq2_cover(&k4, &two));
        let dc = negative_cycle_double_cover(&k4, 4, false).unwrap().unwrap();
        assert!(is_double_cover(&k4, &dc));
        assert!(negative_cycle_double_cover(&k4, 3, true).unwrap().is_none());
    }

    #[test]
    fn double_cover_needs_repeats_on_loops() {
        let g = sg("v v -\nv v -\n");
        assert!(negative_cycle_double_cover(&g, 4, false).unwrap().is_none());
        let dc = negative_cycle_double_cover(&g, 4, true).unwrap().unwrap();
        assert_eq!(dc.len(), 4);
        assert!(is_double_cover(&g, &dc));
        let fam = CycleFamily::new(&g, &dc);
        assert_eq!(fam.histogram.get(&2), Some(&2));
    }

    #[test]
    fn packing_matches_subset_search() {
        let g = sg("a b -\nb c -\nc a -\na d -\nd c +\nc c -\nb d +\nd d -\n");
        let cyc = cycle_sets(&g, g.all_edges(), true, &Limits::default()).unwrap();
        assert!(cyc.len() < 24);
        let mut best = 0;
        for s in 0u32..1 << cyc.len() {
            let mut used = EdgeSet::EMPTY;
            let mut ok = true;
            for (i, c) in cyc.iter().enumerate() {
                if s >> i & 1 == 1 {
                    if !used.is_disjoint(*c) {
                        ok = false;
                        break;
                    }
                    used = used.union(*c);
                }
            }
            if ok {
                best = best.max(s.count_ones() as usize);
            }
        }
        assert_eq!(max_edge_disjoint_negative_cycles(&g).unwrap().len(), best);
    }

    #[test]
    fn cap_overflow_is_an_error() {
        let lim = Limits {
            cycle_cap: 3,
            ..Limits::default()
        };
        let k4 = k4_minus();
        assert_eq!(
            cycle_sets(&k4, k4.all_edges(), false, &lim),
            Err(Error::CycleCapExceeded { cap: 3 })
        );
    }
}
