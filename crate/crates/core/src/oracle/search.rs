//! Exhaustive search for odd `K_r` models over bitmask graphs (`n <= 64`).
//!
//! Branch sets are connected vertex sets picked in increasing order of their
//! minimum vertex. Each set carries a tree-proper coloring chosen up to a
//! global flip; the flips themselves are resolved as parity constraints, so
//! a pair only constrains the search when all of its edges agree or all
//! disagree under the chosen representatives.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

#[derive(Debug, Clone, Copy)]
pub(crate) struct SetEntry {
    pub mask: u64,
    /// Vertices outside `mask` adjacent to it.
    pub nbr: u64,
}

/// A tree-proper coloring of a set, normalized so its least vertex is in `c1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Class {
    pub c1: u64,
    pub c2: u64,
    nb1: u64,
    nb2: u64,
}

const SAME: u8 = 1;
const DIFF: u8 = 2;

impl Class {
    /// `SAME` if some edge joins equal colors, `DIFF` if some edge joins
    /// different colors, or both.
    fn relation(&self, other: &Class) -> u8 {
        let same = (self.nb1 & other.c1) | (self.nb2 & other.c2) != 0;
        let diff = (self.nb1 & other.c2) | (self.nb2 & other.c1) != 0;
        (same as u8 * SAME) | (diff as u8 * DIFF)
    }
}

/// Relative flips of the chosen sets: `sign[i] ^ sign[j]` is fixed within a
/// component.
#[derive(Debug, Clone)]
pub(crate) struct Signs {
    comp: Vec<u8>,
    pub sign: Vec<u8>,
}

impl Signs {
    fn new(r: usize) -> Self {
        Signs {
            comp: (0..r as u8).collect(),
            sign: vec![0; r],
        }
    }

    fn join(&mut self, i: usize, j: usize, parity: u8) -> bool {
        let (ci, cj) = (self.comp[i], self.comp[j]);
        if ci == cj {
            return self.sign[i] ^ self.sign[j] == parity;
        }
        let shift = self.sign[i] ^ self.sign[j] ^ parity;
        for m in 0..self.comp.len() {
            if self.comp[m] == cj {
                self.comp[m] = ci;
                self.sign[m] ^= shift;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Chosen {
    pub mask: u64,
    nbr: u64,
    pub class: Class,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Abort {
    Timeout,
    Cancelled,
}

/// Shared limits and progress of one or more searches.
pub(crate) struct Control {
    deadline: Instant,
    node_limit: u64,
    nodes: AtomicU64,
    timed_out: AtomicBool,
    found: AtomicUsize,
}

impl Control {
    pub fn new(deadline: Instant, node_limit: u64) -> Self {
        Control {
            deadline,
            node_limit,
            nodes: AtomicU64::new(0),
            timed_out: AtomicBool::new(false),
            found: AtomicUsize::new(usize::MAX),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn reset_found(&self) {
        self.found.store(usize::MAX, Ordering::SeqCst);
    }
}

pub(crate) enum Outcome {
    Found(Vec<Chosen>, Signs),
    Absent,
    Timeout,
}

pub(crate) struct Engine {
    pub n: usize,
    pub adj: Vec<u64>,
    all: u64,
    /// Connected sets by least vertex, sorted by `(size, mask)`.
    sets: Vec<Vec<SetEntry>>,
}

type Cache = HashMap<u64, Arc<Vec<Class>>>;

impl Engine {
    pub fn new(adj: Vec<u64>) -> Self {
        let n = adj.len();
        assert!(n <= 64, "bitmask engine supports at most 64 vertices");
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut engine = Engine {
            n,
            adj,
            all,
            sets: Vec::with_capacity(n),
        };
        for v in 0..n {
            let mut out = Vec::new();
            let above = all & !((1u64 << v) - 1) & !(1u64 << v);
            engine.grow(1u64 << v, engine.adj[v] & above, 0, above, &mut out);
            out.sort_by_key(|e| (e.mask.count_ones(), e.mask));
            engine.sets.push(out);
        }
        engine
    }

    #[cfg(test)]
    pub fn set_count(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    fn neighborhood(&self, mut mask: u64) -> u64 {
        let mut out = 0;
        while mask != 0 {
            out |= self.adj[mask.trailing_zeros() as usize];
            mask &= mask - 1;
        }
        out
    }

    /// Every connected set containing `sub` inside `sub ∪ above`, each once:
    /// candidates are tried in order and excluded from later siblings.
    fn grow(&self, sub: u64, cand: u64, forbidden: u64, above: u64, out: &mut Vec<SetEntry>) {
        out.push(SetEntry {
            mask: sub,
            nbr: self.neighborhood(sub) & !sub,
        });
        let mut rest = cand;
        let mut f = forbidden;
        while rest != 0 {
            let w = rest & rest.wrapping_neg();
            rest ^= w;
            let next = sub | w;
            let grown = (rest | self.adj[w.trailing_zeros() as usize]) & above & !next & !f & !w;
            self.grow(next, grown, f | w, above, out);
            f |= w;
        }
    }

    fn tree_proper(&self, mask: u64, c1: u64) -> bool {
        let c2 = mask & !c1;
        let start = mask & mask.wrapping_neg();
        let mut reach = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let opposite = if c1 >> v & 1 == 1 { c2 } else { c1 };
            let new = self.adj[v] & opposite & !reach;
            reach |= new;
            frontier |= new;
        }
        reach == mask
    }

    /// Tree-proper colorings of `mask` up to a flip, deduplicated by their
    /// restriction to the vertices with outside neighbors.
    fn classes(&self, mask: u64) -> Vec<Class> {
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut boundary = 0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.adj[v] & !mask != 0 {
                boundary |= 1u64 << v;
            }
        }
        let b0 = boundary & boundary.wrapping_neg();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut sub = 0u64;
        loop {
            let c1 = low | sub;
            if self.tree_proper(mask, c1) {
                let key = if c1 & b0 != 0 {
                    c1 & boundary
                } else {
                    boundary & !c1
                };
                if seen.insert(key) {
                    let c2 = mask & !c1;
                    out.push(Class {
                        c1,
                        c2,
                        nb1: self.neighborhood(c1),
                        nb2: self.neighborhood(c2),
                    });
                }
            }
            sub = sub.wrapping_sub(rest) & rest;
            if sub == 0 {
                break;
            }
        }
        out
    }

    /// Searches for `r` branch sets, fanning out over the first set when
    /// `jobs > 1`. The first model in canonical order wins either way.
    pub fn search(&self, r: usize, ctl: &Control, jobs: usize) -> Outcome {
        ctl.reset_found();
        let roots: Vec<(usize, SetEntry)> = (0..self.n)
            .flat_map(|v| self.sets[v].iter().map(move |&e| (v, e)))
            .filter(|(_, e)| e.mask.count_ones() as usize + r - 1 <= self.n)
            .collect();
        let run = |cache: &mut Cache, index: usize, (v, e): (usize, SetEntry)| {
            let mut w = Worker {
                engine: self,
                ctl,
                r,
                index,
                local_nodes: 0,
                cache,
            };
            let mut chosen = Vec::with_capacity(r);
            let res = w.place(e, v, 0, &mut chosen, &Signs::new(r));
            w.flush();
            match res {
                Ok(Some(signs)) => {
                    ctl.found.fetch_min(index, Ordering::SeqCst);
                    Outcome::Found(chosen, signs)
                }
                Ok(None) => Outcome::Absent,
                Err(Abort::Timeout) => Outcome::Timeout,
                Err(Abort::Cancelled) => Outcome::Absent,
            }
        };

        let results: Vec<Outcome> = if jobs <= 1 {
            let mut cache = Cache::new();
            let mut out = Vec::new();
            for (i, root) in roots.into_iter().enumerate() {
                let o = run(&mut cache, i, root);
                let stop = !matches!(o, Outcome::Absent);
                out.push(o);
                if stop {
                    break;
                }
            }
            out
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            pool.install(|| {
                roots
                    .into_par_iter()
                    .enumerate()
                    .map_init(Cache::new, |cache, (i, root)| run(cache, i, root))
                    .collect()
            })
        };

        let mut timed_out = false;
        for o in results {
            match o {
                Outcome::Found(c, s) => return Outcome::Found(c, s),
                Outcome::Timeout => timed_out = true,
                Outcome::Absent => {}
            }
        }
        if timed_out || ctl.timed_out.load(Ordering::SeqCst) {
            Outcome::Timeout
        } else {
            Outcome::Absent
        }
    }
}

struct Worker<'a> {
    engine: &'a Engine,
    ctl: &'a Control,
    r: usize,
    index: usize,
    local_nodes: u64,
    cache: &'a mut Cache,
}

impl Worker<'_> {
    fn flush(&mut self) {
        let pending = self.local_nodes & 1023;
        self.ctl.nodes.fetch_add(pending, Ordering::Relaxed);
        self.local_nodes -= pending;
    }

    fn tick(&mut self) -> Result<(), Abort> {
        self.local_nodes += 1;
        if self.local_nodes & 1023 != 0 {
            return Ok(());
        }
        let total = self.ctl.nodes.fetch_add(1024, Ordering::Relaxed) + 1024;
        if total > self.ctl.node_limit || Instant::now() > self.ctl.deadline {
            self.ctl.timed_out.store(true, Ordering::SeqCst);
        }
        if self.ctl.timed_out.load(Ordering::Relaxed) {
            return Err(Abort::Timeout);
        }
        if self.ctl.found.load(Ordering::Relaxed) < self.index {
            return Err(Abort::Cancelled);
        }
        Ok(())
    }

    fn classes(&mut self, mask: u64) -> Arc<Vec<Class>> {
        if let Some(c) = self.cache.get(&mask) {
            return Arc::clone(c);
        }
        let c = Arc::new(self.engine.classes(mask));
        self.cache.insert(mask, Arc::clone(&c));
        c
    }

    /// Tries every class of set `e` (least vertex `v`) as the next branch set.
    fn place(
        &mut self,
        e: SetEntry,
        v: usize,
        used: u64,
        chosen: &mut Vec<Chosen>,
        signs: &Signs,
    ) -> Result<Option<Signs>, Abort> {
        let k = chosen.len();
        let classes = self.classes(e.mask);
        for cls in classes.iter() {
            self.tick()?;
            let mut s = signs.clone();
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(j, c)| match cls.relation(&c.class) {
                    SAME => s.join(j, k, 0),
                    DIFF => s.join(j, k, 1),
                    0 => false,
                    _ => true,
                });
            if !ok {
                continue;
            }
            chosen.push(Chosen {
                mask: e.mask,
                nbr: e.nbr,
                class: *cls,
            });
            if let Some(done) = self.extend(v, used | e.mask, chosen, &s)? {
                return Ok(Some(done));
            }
            chosen.pop();
        }
        Ok(None)
    }

    fn extend(
        &mut self,
        prev: usize,
        used: u64,
        chosen: &mut Vec<Chosen>,
        signs: &Signs,
    ) -> Result<Option<Signs>, Abort> {
        let remaining = self.r - chosen.len();
        if remaining == 0 {
            return Ok(Some(signs.clone()));
        }
        let engine = self.engine;
        for v in prev + 1..engine.n {
            if used >> v & 1 == 1 {
                continue;
            }
            let pool = engine.all & !used & !((1u64 << v) - 1);
            let avail = pool.count_ones() as usize;
            if avail < remaining || chosen.iter().any(|c| c.nbr & pool == 0) {
                break;
            }
            let max_size = avail - (remaining - 1);
            for &e in &engine.sets[v] {
                if e.mask.count_ones() as usize > max_size {
                    break;
                }
                if e.mask & used != 0 || chosen.iter().any(|c| e.nbr & c.mask == 0) {
                    continue;
                }
                if let Some(done) = self.place(e, v, used, chosen, signs)? {
                    return Ok(Some(done));
                }
            }
        }
        Ok(None)
    }
}
