//! Todd-Coxeter coset enumeration and complete coset tables.
//!
//! The enumerator runs either the HLT strategy (relator scans with filling,
//! plus a lookahead pass under table pressure) or the Felsch strategy
//! (definition-driven deduction scans). Coincidences are handled with a
//! union-find over coset labels and a queue of pending merges. Completed
//! tables are compressed and standardized: cosets are renumbered in BFS
//! discovery order, scanning generator columns in order from coset 0, so a
//! subgroup has exactly one table no matter which strategy produced it.

use std::collections::VecDeque;

use thiserror::Error;

use crate::perm::Permutation;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

pub(crate) const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Relator-driven scans with lookahead under table pressure. Default.
    Hlt,
    /// Definition-driven deduction propagation.
    Felsch,
}

#[derive(Clone, Debug)]
pub struct EnumerationLimits {
    /// Cap on simultaneously live cosets before the enumeration gives up.
    pub max_cosets: usize,
    pub strategy: Strategy,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cosets: 1_000_000,
            strategy: Strategy::Hlt,
        }
    }
}

impl EnumerationLimits {
    pub fn with_max(max_cosets: usize) -> Self {
        EnumerationLimits {
            max_cosets,
            ..Default::default()
        }
    }

    pub fn felsch() -> Self {
        EnumerationLimits {
            strategy: Strategy::Felsch,
            ..Default::default()
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    /// The enumeration needed more live cosets than allowed; the subgroup
    /// may have infinite index or the budget may be too small.
    #[error("enumeration exceeded the limit of {max_cosets} cosets")]
    LimitExceeded { max_cosets: usize },
    #[error("subgroup generator references generator {found}, presentation has {count}")]
    GeneratorOutOfRange { found: usize, count: usize },
}

/// Complete right-coset table of a finite-index subgroup H.
///
/// Rows are cosets with 0 denoting H itself; columns alternate
/// `g1 g1' g2 g2' ...`. Tables are standardized on construction and
/// immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    n_generators: usize,
    index: usize,
    entries: Vec<u32>,
    subgroup_generators: Vec<Word>,
}

impl CosetTable {
    pub(crate) fn from_parts(
        n_generators: usize,
        index: usize,
        entries: Vec<u32>,
        subgroup_generators: Vec<Word>,
    ) -> CosetTable {
        debug_assert_eq!(entries.len(), index * 2 * n_generators);
        debug_assert!(entries.iter().all(|&e| (e as usize) < index));
        CosetTable {
            n_generators,
            index,
            entries,
            subgroup_generators,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup_generators
    }

    fn ncols(&self) -> usize {
        2 * self.n_generators
    }

    pub fn entry(&self, coset: usize, letter: Letter) -> usize {
        self.entries[coset * self.ncols() + letter.column()] as usize
    }

    /// Coset reached from `start` by applying `w` letter by letter.
    pub fn trace(&self, start: usize, w: &Word) -> usize {
        assert!(start < self.index, "coset {start} out of range");
        w.letters()
            .iter()
            .fold(start, |c, &l| self.entry(c, l))
    }

    /// Membership in H: true iff `w` fixes coset 0.
    pub fn contains(&self, w: &Word) -> bool {
        self.trace(0, w) == 0
    }

    /// One permutation of the cosets per generator.
    pub fn coset_action(&self) -> Vec<Permutation> {
        (0..self.n_generators)
            .map(|g| {
                Permutation::from_images(
                    (0..self.index)
                        .map(|c| self.entry(c, Letter::gen(g)))
                        .collect(),
                )
                .expect("columns of a complete table are permutations")
            })
            .collect()
    }

    /// BFS spanning tree: for each coset except 0, the (parent, letter)
    /// edge by which it is first reached scanning generator columns from
    /// coset 0 in standardized order.
    pub fn schreier_tree(&self) -> Vec<Option<(usize, Letter)>> {
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; self.index];
        let mut seen = vec![false; self.index];
        seen[0] = true;
        for c in 0..self.index {
            for g in 0..self.n_generators {
                let l = Letter::gen(g);
                let t = self.entry(c, l);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((c, l));
                }
            }
        }
        debug_assert!(seen.iter().all(|&s| s));
        parent
    }

    /// Schreier transversal: `r[0]` is empty and `r[i]` is the BFS word
    /// reaching coset i, so the set is prefix-closed and
    /// `trace(0, r[i]) == i`.
    pub fn representatives(&self) -> Vec<Word> {
        let tree = self.schreier_tree();
        let mut reps: Vec<Option<Word>> = vec![None; self.index];
        reps[0] = Some(Word::empty());
        fn rep(i: usize, tree: &[Option<(usize, Letter)>], reps: &mut Vec<Option<Word>>) -> Word {
            if let Some(w) = &reps[i] {
                return w.clone();
            }
            let (p, l) = tree[i].expect("non-root coset has a tree edge");
            let w = rep(p, tree, reps).concat(&Word::letter(l));
            reps[i] = Some(w.clone());
            w
        }
        (0..self.index)
            .map(|i| rep(i, &tree, &mut reps))
            .collect()
    }

    /// True iff every subgroup generator fixes every coset, i.e. H equals
    /// its core and is normal.
    pub fn is_normal(&self) -> bool {
        self.subgroup_generators
            .iter()
            .all(|w| (0..self.index).all(|c| self.trace(c, w) == c))
    }

    /// Cosets fixed by every subgroup generator. These are exactly the
    /// cosets of the normalizer of H, so the count is `|N(H) : H|`.
    pub fn fixed_cosets(&self) -> Vec<usize> {
        (0..self.index)
            .filter(|&c| {
                self.subgroup_generators
                    .iter()
                    .all(|w| self.trace(c, w) == c)
            })
            .collect()
    }

    /// `(|N(H):H|, |G:N(H)|)`; the product is the index.
    pub fn normalizer_index(&self) -> (usize, usize) {
        let fixed = self.fixed_cosets().len();
        assert!(
            self.index % fixed == 0,
            "fixed-coset count {fixed} does not divide index {}",
            self.index
        );
        (fixed, self.index / fixed)
    }

    /// Plain text export: one row per coset, columns `g1 g1' g2 g2' ...`.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        for c in 0..self.index {
            let row: Vec<String> = (0..self.ncols())
                .map(|col| self.entries[c * self.ncols() + col].to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub(crate) fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Full consistency and closure check against `p`. Used by tests and
    /// debug assertions; enumeration output always satisfies it.
    pub fn check(&self, p: &Presentation) -> Result<(), String> {
        if p.n_generators() != self.n_generators {
            return Err("generator count mismatch".into());
        }
        let ncols = self.ncols();
        for c in 0..self.index {
            for col in 0..ncols {
                let t = self.entries[c * ncols + col] as usize;
                if t >= self.index {
                    return Err(format!("entry ({c},{col}) out of range"));
                }
                let back = self.entries[t * ncols + (col ^ 1)] as usize;
                if back != c {
                    return Err(format!("inverse consistency fails at ({c},{col})"));
                }
            }
        }
        for r in p.relators() {
            for c in 0..self.index {
                if self.trace(c, r) != c {
                    return Err(format!("relator does not close at coset {c}"));
                }
            }
        }
        for w in &self.subgroup_generators {
            if self.trace(0, w) != 0 {
                return Err("subgroup generator does not fix coset 0".into());
            }
        }
        Ok(())
    }
}

/// Renumbers `entries` in place so cosets appear in BFS discovery order,
/// scanning generator columns `g1, g2, ...` from coset 0. Requires a
/// complete table; positive columns reach every coset because each
/// generator permutes the finitely many cosets.
pub(crate) fn standardize(n_generators: usize, n: usize, entries: &mut Vec<u32>) {
    let map = bfs_renumbering(n_generators, n, entries, 0)
        .expect("complete tables are positively connected");
    apply_renumbering(n_generators, n, entries, &map);
}

/// BFS renumbering of a (possibly partial) table starting from `start`:
/// `map[old] = new`. Returns None for cosets not reached (partial tables);
/// on complete tables every coset is reached.
pub(crate) fn bfs_renumbering(
    n_generators: usize,
    n: usize,
    entries: &[u32],
    start: usize,
) -> Option<Vec<u32>> {
    let ncols = 2 * n_generators;
    let mut map = vec![UNDEF; n];
    let mut order = Vec::with_capacity(n);
    map[start] = 0;
    order.push(start as u32);
    let mut head = 0;
    while head < order.len() {
        let c = order[head] as usize;
        head += 1;
        for g in 0..n_generators {
            let t = entries[c * ncols + 2 * g];
            if t == UNDEF {
                continue;
            }
            if map[t as usize] == UNDEF {
                map[t as usize] = order.len() as u32;
                order.push(t);
            }
        }
    }
    if order.len() == n {
        Some(map)
    } else {
        None
    }
}

pub(crate) fn apply_renumbering(n_generators: usize, n: usize, entries: &mut Vec<u32>, map: &[u32]) {
    let ncols = 2 * n_generators;
    let mut out = vec![UNDEF; entries.len()];
    for c in 0..n {
        for col in 0..ncols {
            let t = entries[c * ncols + col];
            out[(map[c] as usize) * ncols + col] = map[t as usize];
        }
    }
    *entries = out;
}

struct Enumerator {
    ncols: usize,
    max_cosets: usize,
    felsch: bool,
    relators: Vec<Vec<u32>>,
    subgens: Vec<Vec<u32>>,
    table: Vec<u32>,
    parent: Vec<u32>,
    dead_queue: VecDeque<u32>,
    deductions: Vec<(u32, u32)>,
    /// For Felsch: per column, the (relator, position) pairs with that
    /// letter, so a new table entry triggers scans through those positions.
    edp: Vec<Vec<(u32, u32)>>,
    n_alive: usize,
}

/// Outcome of a single enumeration pass.
enum Pass {
    Done,
    /// Live cosets hit the cap; caller may try lookahead and retry.
    Full,
}

impl Enumerator {
    fn new(p: &Presentation, subgens: &[Word], limits: &EnumerationLimits) -> Enumerator {
        let ncols = 2 * p.n_generators();
        let to_cols = |w: &Word| -> Vec<u32> {
            w.letters().iter().map(|l| l.column() as u32).collect()
        };
        let relators: Vec<Vec<u32>> = p
            .relators()
            .iter()
            .map(|r| to_cols(&r.cyclically_reduced()))
            .filter(|r| !r.is_empty())
            .collect();
        let subgens_cols: Vec<Vec<u32>> = subgens
            .iter()
            .map(to_cols)
            .filter(|w| !w.is_empty())
            .collect();
        let mut edp = vec![Vec::new(); ncols];
        for (ri, r) in relators.iter().enumerate() {
            for (pos, &col) in r.iter().enumerate() {
                edp[col as usize].push((ri as u32, pos as u32));
            }
        }
        Enumerator {
            ncols,
            max_cosets: limits.max_cosets.max(1),
            felsch: limits.strategy == Strategy::Felsch,
            relators,
            subgens: subgens_cols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            dead_queue: VecDeque::new(),
            deductions: Vec::new(),
            edp,
            n_alive: 1,
        }
    }

    fn n_rows(&self) -> usize {
        self.parent.len()
    }

    fn is_alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while cur != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.ncols + col as usize]
    }

    fn set(&mut self, a: u32, col: u32, b: u32) {
        self.table[a as usize * self.ncols + col as usize] = b;
        self.table[b as usize * self.ncols + (col ^ 1) as usize] = a;
        if self.felsch {
            self.deductions.push((a, col));
            self.deductions.push((b, col ^ 1));
        }
    }

    fn define(&mut self, c: u32, col: u32) -> Result<u32, ()> {
        if self.n_alive >= self.max_cosets {
            return Err(());
        }
        let fresh = self.n_rows() as u32;
        self.table.extend(std::iter::repeat(UNDEF).take(self.ncols));
        self.parent.push(fresh);
        self.n_alive += 1;
        self.set(c, col, fresh);
        Ok(fresh)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra != rb {
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[drop as usize] = keep;
            self.n_alive -= 1;
            self.dead_queue.push_back(drop);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(dead) = self.dead_queue.pop_front() {
            for col in 0..self.ncols as u32 {
                let target = self.get(dead, col);
                if target == UNDEF {
                    continue;
                }
                // Remove the mirrored edge, then re-route both endpoints
                // through their representatives.
                self.table[target as usize * self.ncols + (col ^ 1) as usize] = UNDEF;
                let d = self.rep(dead);
                let t = self.rep(target);
                let via_d = self.get(d, col);
                let via_t = self.get(t, col ^ 1);
                if via_d != UNDEF {
                    self.merge(via_d, t);
                } else if via_t != UNDEF {
                    self.merge(via_t, d);
                } else {
                    self.set(d, col, t);
                }
            }
        }
    }

    /// HLT scan of `word` at coset `c`, defining cosets to fill gaps.
    fn scan_and_fill(&mut self, c: u32, word: &[u32]) -> Result<(), ()> {
        debug_assert!(!word.is_empty());
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = word.len() - 1;
        loop {
            while i <= j {
                let next = self.get(f, word[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            loop {
                let next = self.get(b, word[j] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                if j == i {
                    // Backward consumed the position the forward scan is
                    // stuck on: the boundary cosets disagree.
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j == i {
                self.set(f, word[i], b);
                return Ok(());
            }
            // Gap of length >= 2: define and keep scanning forward.
            self.define(f, word[i]).map_err(|()| ())?;
        }
    }

    /// Scan without filling: cyclic rotation of `word` starting at `start`,
    /// anchored at coset `c`. May complete a deduction (single gap) or find
    /// a coincidence.
    fn scan_lookahead(&mut self, c: u32, word: &[u32], start: usize) {
        let len = word.len();
        let at = |k: usize| word[(start + k) % len];
        let mut f = c;
        let mut i = 0usize;
        while i < len {
            let next = self.get(f, at(i));
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == len {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        let mut j = len - 1;
        while j >= i {
            let next = self.get(b, at(j) ^ 1);
            if next == UNDEF {
                break;
            }
            b = next;
            if j == i {
                self.coincidence(f, b);
                return;
            }
            j -= 1;
        }
        if j == i {
            self.set(f, at(i), b);
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, col)) = self.deductions.pop() {
            let c = self.rep(c);
            if self.get(c, col) == UNDEF {
                continue;
            }
            let pairs = self.edp[col as usize].clone();
            for (ri, pos) in pairs {
                let word = std::mem::take(&mut self.relators[ri as usize]);
                self.scan_lookahead(c, &word, pos as usize);
                self.relators[ri as usize] = word;
            }
        }
    }

    fn hlt_pass(&mut self) -> Result<Pass, ()> {
        for si in 0..self.subgens.len() {
            let word = std::mem::take(&mut self.subgens[si]);
            let res = self.scan_and_fill(0, &word);
            self.subgens[si] = word;
            if res.is_err() {
                return Ok(Pass::Full);
            }
        }
        let mut alpha = 0u32;
        while (alpha as usize) < self.n_rows() {
            if self.is_alive(alpha) {
                for ri in 0..self.relators.len() {
                    if !self.is_alive(alpha) {
                        break;
                    }
                    let word = std::mem::take(&mut self.relators[ri]);
                    let res = self.scan_and_fill(alpha, &word);
                    self.relators[ri] = word;
                    if res.is_err() {
                        return Ok(Pass::Full);
                    }
                }
                if self.is_alive(alpha) {
                    for col in 0..self.ncols as u32 {
                        if self.get(alpha, col) == UNDEF && self.define(alpha, col).is_err() {
                            return Ok(Pass::Full);
                        }
                    }
                }
            }
            alpha += 1;
            // Reclaim space when most rows are dead.
            if self.n_rows() > 4096 && self.n_alive * 4 < self.n_rows() {
                alpha = self.compact(alpha);
            }
        }
        Ok(Pass::Done)
    }

    fn felsch_pass(&mut self) -> Result<Pass, ()> {
        for si in 0..self.subgens.len() {
            let word = std::mem::take(&mut self.subgens[si]);
            let res = self.scan_and_fill(0, &word);
            self.subgens[si] = word;
            if res.is_err() {
                return Ok(Pass::Full);
            }
            self.process_deductions();
        }
        let mut alpha = 0u32;
        while (alpha as usize) < self.n_rows() {
            let mut col = 0u32;
            while col < self.ncols as u32 {
                if !self.is_alive(alpha) {
                    break;
                }
                if self.get(alpha, col) == UNDEF {
                    if self.define(alpha, col).is_err() {
                        return Ok(Pass::Full);
                    }
                    self.process_deductions();
                }
                col += 1;
            }
            alpha += 1;
            if self.n_rows() > 4096 && self.n_alive * 4 < self.n_rows() {
                alpha = self.compact(alpha);
            }
        }
        Ok(Pass::Done)
    }

    /// Full lookahead: scan every relator at every live coset without
    /// defining, in the hope of collapsing the table.
    fn lookahead(&mut self) {
        for c in 0..self.n_rows() as u32 {
            if !self.is_alive(c) {
                continue;
            }
            for ri in 0..self.relators.len() {
                if !self.is_alive(c) {
                    break;
                }
                let word = std::mem::take(&mut self.relators[ri]);
                self.scan_lookahead(c, &word, 0);
                self.relators[ri] = word;
            }
        }
    }

    /// Renumbers live cosets, preserving order; returns the new scan cursor
    /// for a caller positioned at `alpha`.
    fn compact(&mut self, alpha: u32) -> u32 {
        debug_assert!(self.dead_queue.is_empty());
        self.deductions.clear();
        let mut map = vec![UNDEF; self.n_rows()];
        let mut fresh = 0u32;
        for c in 0..self.n_rows() as u32 {
            if self.is_alive(c) {
                map[c as usize] = fresh;
                fresh += 1;
            }
        }
        let mut new_table = vec![UNDEF; fresh as usize * self.ncols];
        for c in 0..self.n_rows() {
            if map[c] == UNDEF {
                continue;
            }
            for col in 0..self.ncols {
                let t = self.table[c * self.ncols + col];
                if t != UNDEF {
                    let rt = {
                        // Entries of live rows always point at live cosets.
                        debug_assert_eq!(self.parent[t as usize], t);
                        t
                    };
                    new_table[map[c] as usize * self.ncols + col] = map[rt as usize];
                }
            }
        }
        self.table = new_table;
        self.parent = (0..fresh).collect();
        let new_alpha = (0..alpha.min(map.len() as u32))
            .filter(|&c| map[c as usize] != UNDEF)
            .count() as u32;
        new_alpha
    }

    fn run(&mut self) -> Result<(), EnumerationError> {
        loop {
            let pass = if self.felsch {
                self.felsch_pass()
            } else {
                self.hlt_pass()
            };
            match pass {
                Ok(Pass::Done) => return Ok(()),
                Ok(Pass::Full) | Err(()) => {
                    let before = self.n_alive;
                    self.lookahead();
                    self.process_deductions();
                    if self.n_alive < before {
                        self.compact(0);
                        // Restart the pass; completed rows rescan cheaply.
                        continue;
                    }
                    return Err(EnumerationError::LimitExceeded {
                        max_cosets: self.max_cosets,
                    });
                }
            }
        }
    }

    fn into_entries(mut self) -> (usize, Vec<u32>) {
        self.compact(0);
        let n = self.n_rows();
        debug_assert!(self.table.iter().all(|&e| e != UNDEF));
        (n, self.table)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgens` in the
/// group presented by `p`, producing a complete standardized table.
pub fn todd_coxeter(
    p: &Presentation,
    subgens: &[Word],
    limits: &EnumerationLimits,
) -> Result<CosetTable, EnumerationError> {
    for w in subgens {
        if let Some(found) = w.max_generator() {
            if found >= p.n_generators() {
                return Err(EnumerationError::GeneratorOutOfRange {
                    found,
                    count: p.n_generators(),
                });
            }
        }
    }
    let mut en = Enumerator::new(p, subgens, limits);
    en.run()?;
    let (n, mut entries) = en.into_entries();
    standardize(p.n_generators(), n, &mut entries);
    let table = CosetTable::from_parts(p.n_generators(), n, entries, subgens.to_vec());
    debug_assert_eq!(table.check(p), Ok(()));
    Ok(table)
}
