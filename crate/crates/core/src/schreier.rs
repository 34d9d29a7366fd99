//! Reidemeister-Schreier: presentations of finite-index subgroups and
//! rewriting of subgroup elements over the Schreier generators.

use std::collections::HashSet;

use thiserror::Error;

use crate::coset::CosetTable;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("word does not lie in the subgroup (traces coset 0 to {reached})")]
    NotInSubgroup { reached: usize },
}

/// Rewriting machinery for one subgroup given by its coset table.
///
/// Built once per (presentation, table) pair; exposes the subgroup
/// presentation on the nontrivial Schreier generators and rewrites words of
/// the subgroup into it. Generators defined trivial by length-one relators
/// are eliminated from the presentation and from rewritten words.
pub struct SubgroupRewriter {
    table: CosetTable,
    /// (coset, generator) -> Schreier generator index before elimination,
    /// or None for spanning-tree edges.
    pair_gen: Vec<Option<usize>>,
    /// Nontrivial Schreier generators as words of the parent group.
    schreier_words: Vec<Word>,
    /// Pre-elimination generator -> surviving generator index.
    keep: Vec<Option<usize>>,
    presentation: Presentation,
}

impl SubgroupRewriter {
    pub fn new(p: &Presentation, t: &CosetTable) -> SubgroupRewriter {
        let n = p.n_generators();
        let index = t.index();
        let tree = t.schreier_tree();
        let reps = t.representatives();

        // Tree edges always carry positive letters (the BFS scans generator
        // columns), so pair (i, g) is trivial iff it is the discovery edge
        // of its target.
        let mut pair_gen = vec![None; index * n];
        let mut schreier_words = Vec::new();
        for i in 0..index {
            for g in 0..n {
                let l = Letter::gen(g);
                let target = t.entry(i, l);
                if tree[target] == Some((i, l)) {
                    continue;
                }
                pair_gen[i * n + g] = Some(schreier_words.len());
                let w = reps[i]
                    .concat(&Word::letter(l))
                    .concat(&reps[target].inverse());
                debug_assert!(!w.is_empty(), "non-tree Schreier generator reduced to 1");
                schreier_words.push(w);
            }
        }
        debug_assert_eq!(schreier_words.len(), n * index - (index - 1).min(n * index));

        // Reidemeister rewriting of every relator at every coset.
        let mut relators: Vec<Word> = Vec::new();
        let mut seen: HashSet<Word> = HashSet::new();
        for r in p.relators() {
            for i in 0..index {
                let w = rewrite_at(t, &pair_gen, n, i, r)
                    .expect("relators close at every coset")
                    .cyclically_reduced();
                if w.is_empty() {
                    continue;
                }
                if seen.insert(w.clone()) {
                    relators.push(w);
                }
            }
        }

        // Light simplification: generators forced trivial by length-one
        // relators are deleted, repeatedly.
        let mut trivial = vec![false; schreier_words.len()];
        loop {
            let mut changed = false;
            for r in &relators {
                if r.len() == 1 {
                    let g = r.letters()[0].generator();
                    if !trivial[g] {
                        trivial[g] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
            let mut next: Vec<Word> = Vec::new();
            let mut seen: HashSet<Word> = HashSet::new();
            for r in &relators {
                let filtered = Word::from_letters(
                    r.letters()
                        .iter()
                        .copied()
                        .filter(|l| !trivial[l.generator()]),
                )
                .cyclically_reduced();
                if filtered.is_empty() {
                    continue;
                }
                if seen.insert(filtered.clone()) {
                    next.push(filtered);
                }
            }
            relators = next;
        }

        let mut keep = vec![None; schreier_words.len()];
        let mut kept = 0usize;
        for (g, is_trivial) in trivial.iter().enumerate() {
            if !is_trivial {
                keep[g] = Some(kept);
                kept += 1;
            }
        }
        let names: Vec<String> = (1..=kept).map(|i| format!("x{i}")).collect();
        let relators: Vec<Word> = relators
            .into_iter()
            .map(|r| {
                Word::from_letters(r.letters().iter().map(|l| {
                    Letter::new(keep[l.generator()].expect("trivial generators removed"), l.is_inverse())
                }))
            })
            .collect();
        let presentation =
            Presentation::new(names, relators).expect("valid subgroup presentation");

        SubgroupRewriter {
            table: t.clone(),
            pair_gen,
            schreier_words,
            keep,
            presentation,
        }
    }

    /// The subgroup presentation on the surviving Schreier generators.
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Nontrivial Schreier generators as words of the parent group, before
    /// elimination. Their count is `index * n - (index - 1)`.
    pub fn schreier_generator_words(&self) -> &[Word] {
        &self.schreier_words
    }

    /// Parent-group word for a surviving subgroup generator.
    pub fn generator_word(&self, subgroup_gen: usize) -> &Word {
        let pre = self
            .keep
            .iter()
            .position(|k| *k == Some(subgroup_gen))
            .expect("subgroup generator index in range");
        &self.schreier_words[pre]
    }

    /// Rewrites a word of the subgroup over the subgroup presentation's
    /// generators.
    pub fn rewrite(&self, w: &Word) -> Result<Word, RewriteError> {
        let reached = self.table.trace(0, w);
        if reached != 0 {
            return Err(RewriteError::NotInSubgroup { reached });
        }
        let n = self.table.n_generators();
        let raw = rewrite_at(&self.table, &self.pair_gen, n, 0, w)
            .expect("membership already checked");
        Ok(Word::from_letters(raw.letters().iter().filter_map(|l| {
            self.keep[l.generator()].map(|g| Letter::new(g, l.is_inverse()))
        })))
    }
}

/// Reidemeister rewriting of `w` starting at coset `start`: every letter
/// consumed at a coset emits the Schreier generator of that table edge
/// (skipping tree edges). Returns None if the walk does not return to
/// `start`.
fn rewrite_at(
    t: &CosetTable,
    pair_gen: &[Option<usize>],
    n: usize,
    start: usize,
    w: &Word,
) -> Option<Word> {
    let mut out: Vec<Letter> = Vec::new();
    let mut c = start;
    for &l in w.letters() {
        if !l.is_inverse() {
            if let Some(g) = pair_gen[c * n + l.generator()] {
                out.push(Letter::gen(g));
            }
            c = t.entry(c, l);
        } else {
            let source = t.entry(c, l);
            if let Some(g) = pair_gen[source * n + l.generator()] {
                out.push(Letter::new(g, true));
            }
            c = source;
        }
    }
    if c != start {
        return None;
    }
    Some(Word::from_letters(out))
}

/// The nontrivial Schreier generators of the subgroup of `t`, as words of
/// the parent group.
pub fn schreier_generators(p: &Presentation, t: &CosetTable) -> Vec<Word> {
    SubgroupRewriter::new(p, t).schreier_words
}

/// Presentation of the subgroup of `t` on its Schreier generators.
pub fn subgroup_presentation(p: &Presentation, t: &CosetTable) -> Presentation {
    SubgroupRewriter::new(p, t).presentation
}

/// Rewrites `w` (an element of the subgroup of `t`) over the subgroup
/// presentation's generators.
pub fn rewrite_word(p: &Presentation, t: &CosetTable, w: &Word) -> Result<Word, RewriteError> {
    SubgroupRewriter::new(p, t).rewrite(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::{todd_coxeter, EnumerationLimits};
    use crate::homology::abelian_invariants;
    use crate::parse::parse_presentation;

    #[test]
    fn index_one_recovers_the_group() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(0), Word::generator(1)], &EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 1);
        let rw = SubgroupRewriter::new(&p, &t);
        assert_eq!(rw.schreier_generator_words().len(), 2);
        let sub = rw.presentation();
        assert_eq!(abelian_invariants(sub), abelian_invariants(&p));
    }

    #[test]
    fn even_subgroup_of_free_rank_one() {
        let p = parse_presentation("< a | >").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(0).pow(2)], &EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 2);
        let rw = SubgroupRewriter::new(&p, &t);
        assert_eq!(rw.schreier_generator_words().len(), 1);
        assert_eq!(rw.schreier_generator_words()[0], Word::generator(0).pow(2));
        let sub = rw.presentation();
        assert_eq!(sub.n_generators(), 1);
        assert_eq!(sub.relators().len(), 0);
    }

    #[test]
    fn schreier_count_formula() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(1)], &EnumerationLimits::default()).unwrap();
        assert_eq!(t.index(), 2);
        let gens = schreier_generators(&p, &t);
        assert_eq!(gens.len(), 2 * 2 - 1);
    }

    #[test]
    fn rewrite_round_trips_through_expansion() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(1)], &EnumerationLimits::default()).unwrap();
        let rw = SubgroupRewriter::new(&p, &t);
        let w = Word::generator(1); // b is in the subgroup
        let rewritten = rw.rewrite(&w).unwrap();
        assert!(!rewritten.is_empty());
        // Expanding the subgroup generators must land back in the subgroup
        // and trace to the same coset everywhere.
        let expanded = rewritten.letters().iter().fold(Word::empty(), |acc, l| {
            let g = rw.generator_word(l.generator()).clone();
            acc.concat(&if l.is_inverse() { g.inverse() } else { g })
        });
        assert!(t.contains(&expanded));
        for c in 0..t.index() {
            assert_eq!(t.trace(c, &expanded), t.trace(c, &w));
        }
    }

    #[test]
    fn rewrite_rejects_non_members() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(1)], &EnumerationLimits::default()).unwrap();
        let rw = SubgroupRewriter::new(&p, &t);
        assert_eq!(
            rw.rewrite(&Word::generator(0)),
            Err(RewriteError::NotInSubgroup { reached: 1 })
        );
    }

    #[test]
    fn empty_word_rewrites_to_empty() {
        let p = parse_presentation("< a | a^4 >").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(0).pow(2)], &EnumerationLimits::default()).unwrap();
        let rw = SubgroupRewriter::new(&p, &t);
        assert!(rw.rewrite(&Word::empty()).unwrap().is_empty());
    }

    #[test]
    fn nielsen_schreier_rank_in_free_group() {
        // Index-k subgroups of a rank-2 free group are free of rank k+1.
        // Use the kernel of a -> 1, b -> 0 onto Z_k: generated by a^k and
        // the conjugates a^j b a^-j.
        let p = parse_presentation("< a, b | >").unwrap();
        for k in 1i64..=4 {
            let a = Word::generator(0);
            let b = Word::generator(1);
            let mut sub = vec![a.pow(k)];
            for j in 0..k {
                sub.push(a.pow(j).concat(&b).concat(&a.pow(-j)));
            }
            let t = todd_coxeter(&p, &sub, &EnumerationLimits::default()).unwrap();
            assert_eq!(t.index(), k as usize);
            let inv = abelian_invariants(&subgroup_presentation(&p, &t));
            assert_eq!(inv.free_rank, k as usize + 1);
            assert!(inv.torsion.is_empty());
        }
    }
}
