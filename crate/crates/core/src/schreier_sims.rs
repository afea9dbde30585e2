//! Deterministic Schreier–Sims stabilizer chains with generator words.
//!
//! Every transversal element and strong generator carries the word over the
//! original generators that produces it, so sifting a member yields its
//! factorization directly. Base points are chosen as the smallest point
//! moved by the generators that fix all earlier base points, and orbits are
//! grown breadth-first scanning generators in the order they were added.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::{Circuit, GateLibrary};
use crate::perm::Permutation;

/// One letter of a generator word. `inverse` is only ever set for
/// generators that are not involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

#[derive(Clone, Debug)]
struct Element {
    perm: Permutation,
    inv: Permutation,
    word: Word,
}

#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    /// Indices into `StabilizerChain::strong`.
    generators: Vec<usize>,
    /// Orbit points in discovery order, 0-based.
    orbit: Vec<u32>,
    /// Point -> index into `transversal`.
    slot: Vec<Option<u32>>,
    transversal: Vec<Element>,
}

impl Level {
    fn entry(&self, point: u32) -> Option<&Element> {
        self.slot[point as usize].map(|i| &self.transversal[i as usize])
    }
}

/// Outcome of stripping a permutation through the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiftResult {
    pub is_member: bool,
    pub residue: Permutation,
    /// Present iff the permutation is a member; composes to it exactly.
    pub word: Option<Word>,
}

#[derive(Clone, Debug)]
pub struct StabilizerChain {
    n_points: usize,
    labels: Vec<String>,
    generators: Vec<Permutation>,
    involution: Vec<bool>,
    strong: Vec<Element>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn build(generators: &[(Permutation, String)]) -> Result<Self> {
        let Some((first, _)) = generators.first() else {
            return Err(Error::InvalidArgument(
                "a stabilizer chain needs at least one generator".into(),
            ));
        };
        let n_points = first.n_points();
        if let Some((p, label)) = generators.iter().find(|(p, _)| p.n_points() != n_points) {
            return Err(Error::InvalidArgument(format!(
                "generator {label} acts on {} points, expected {n_points}",
                p.n_points()
            )));
        }
        let mut chain = StabilizerChain {
            n_points,
            labels: generators.iter().map(|(_, l)| l.clone()).collect(),
            generators: generators.iter().map(|(p, _)| p.clone()).collect(),
            involution: generators.iter().map(|(p, _)| p.is_involution()).collect(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for (i, (p, _)) in generators.iter().enumerate() {
            if !p.is_identity() {
                chain.strong.push(Element {
                    perm: p.clone(),
                    inv: p.inverse(),
                    word: vec![Letter {
                        generator: i as u32,
                        inverse: false,
                    }],
                });
            }
        }
        chain.extend_base_for_all();
        chain.complete();
        Ok(chain)
    }

    /// Chain for the group generated by a gate library, labelled by gate
    /// names.
    pub fn from_library(library: &GateLibrary) -> Self {
        let gens: Vec<(Permutation, String)> = library
            .perms()
            .into_iter()
            .zip(library.names())
            .collect();
        StabilizerChain::build(&gens).expect("libraries are non-empty")
    }

    /// Adds base points until every strong generator moves some base point.
    fn extend_base_for_all(&mut self) {
        loop {
            let base: Vec<u32> = self.levels.iter().map(|l| l.base_point).collect();
            let next = self
                .strong
                .iter()
                .filter(|s| base.iter().all(|&b| s.perm.zero_based()[b as usize] == b))
                .filter_map(|s| s.perm.first_moved_point())
                .min();
            match next {
                Some(point) => self.push_level(point - 1),
                None => break,
            }
        }
        for i in 0..self.levels.len() {
            self.levels[i].generators = self.generators_fixing_prefix(i);
            self.rebuild_orbit(i);
        }
    }

    fn push_level(&mut self, base_point: u32) {
        self.levels.push(Level {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            slot: vec![None; self.n_points],
            transversal: Vec::new(),
        });
    }

    fn generators_fixing_prefix(&self, level: usize) -> Vec<usize> {
        (0..self.strong.len())
            .filter(|&s| {
                self.levels[..level].iter().all(|l| {
                    self.strong[s].perm.zero_based()[l.base_point as usize] == l.base_point
                })
            })
            .collect()
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let n = self.n_points;
        let identity = Permutation::identity_unchecked(n);
        let lvl = &mut self.levels[level];
        lvl.slot = vec![None; n];
        lvl.orbit = vec![lvl.base_point];
        lvl.transversal = vec![Element {
            perm: identity.clone(),
            inv: identity,
            word: Vec::new(),
        }];
        lvl.slot[lvl.base_point as usize] = Some(0);
        let mut head = 0;
        while head < lvl.orbit.len() {
            let point = lvl.orbit[head];
            let from = lvl.slot[point as usize].unwrap() as usize;
            for &s in &lvl.generators {
                let gen = &self.strong[s];
                let image = gen.perm.zero_based()[point as usize];
                if lvl.slot[image as usize].is_some() {
                    continue;
                }
                let base = &lvl.transversal[from];
                let perm = base.perm.then_unchecked(&gen.perm);
                let inv = gen.inv.then_unchecked(&base.inv);
                let word = concat_words(&base.word, &gen.word, &self.involution);
                lvl.slot[image as usize] = Some(lvl.transversal.len() as u32);
                lvl.transversal.push(Element { perm, inv, word });
                lvl.orbit.push(image);
            }
            head += 1;
        }
    }

    /// Strips `p` through levels `start..`; returns the residue, the level
    /// where stripping stopped (`levels.len()` if it passed every level),
    /// and the inverse-transversal word that was applied.
    fn strip(&self, start: usize, mut p: Permutation) -> (Permutation, usize, Word) {
        let mut applied = Word::new();
        for (j, lvl) in self.levels.iter().enumerate().skip(start) {
            let b = p.zero_based()[lvl.base_point as usize];
            let Some(u) = lvl.entry(b) else {
                return (p, j, applied);
            };
            p = p.then_unchecked(&u.inv);
            applied = concat_words(&applied, &invert_word(&u.word, &self.involution), &self.involution);
        }
        let depth = self.levels.len();
        (p, depth, applied)
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_new_generator(level) {
                Some((h, stop)) => {
                    let idx = self.strong.len();
                    let moved = h.perm.first_moved_point();
                    self.strong.push(h);
                    if stop == self.levels.len() {
                        let point = moved.expect("non-identity residue") - 1;
                        self.push_level(point);
                    }
                    for j in level + 1..=stop {
                        self.levels[j].generators.push(idx);
                        self.rebuild_orbit(j);
                    }
                    i = stop + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// First Schreier generator of `level` that does not sift through the
    /// levels below it, as a strong-generator candidate.
    fn find_new_generator(&self, level: usize) -> Option<(Element, usize)> {
        let lvl = &self.levels[level];
        for &point in &lvl.orbit {
            let u = lvl.entry(point).unwrap();
            for &s in &lvl.generators {
                let gen = &self.strong[s];
                let image = gen.perm.zero_based()[point as usize];
                let v = lvl.entry(image).unwrap();
                let us = u.perm.then_unchecked(&gen.perm);
                if us == v.perm {
                    continue;
                }
                let schreier = us.then_unchecked(&v.inv);
                let (residue, stop, applied) = self.strip(level + 1, schreier);
                if residue.is_identity() {
                    continue;
                }
                let word = concat_words(
                    &concat_words(&u.word, &gen.word, &self.involution),
                    &concat_words(&invert_word(&v.word, &self.involution), &applied, &self.involution),
                    &self.involution,
                );
                let inv = residue.inverse();
                return Some((
                    Element {
                        perm: residue,
                        inv,
                        word,
                    },
                    stop,
                ));
            }
        }
        None
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point + 1).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<(Permutation, Word)> {
        self.strong
            .iter()
            .map(|e| (e.perm.clone(), e.word.clone()))
            .collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.n_points() == self.n_points && self.strip(0, p.clone()).0.is_identity()
    }

    pub fn sift(&self, p: &Permutation) -> Result<SiftResult> {
        if p.n_points() != self.n_points {
            return Err(Error::InvalidArgument(format!(
                "permutation on {} points sifted through a chain on {}",
                p.n_points(),
                self.n_points
            )));
        }
        let (residue, _, applied) = self.strip(0, p.clone());
        let is_member = residue.is_identity();
        Ok(SiftResult {
            is_member,
            residue,
            word: is_member.then(|| invert_word(&applied, &self.involution)),
        })
    }

    pub fn factorize(&self, p: &Permutation) -> Result<Word> {
        let result = self.sift(p)?;
        match result.word {
            Some(word) => Ok(word),
            None => Err(Error::NotInGroup {
                residue: result.residue,
            }),
        }
    }

    /// Cascade product of a word: first letter applied first.
    pub fn evaluate(&self, word: &[Letter]) -> Permutation {
        word.iter()
            .fold(Permutation::identity_unchecked(self.n_points), |acc, l| {
                let g = &self.generators[l.generator as usize];
                if l.inverse {
                    acc.then_unchecked(&g.inverse())
                } else {
                    acc.then_unchecked(g)
                }
            })
    }

    pub fn word_labels(&self, word: &[Letter]) -> Vec<String> {
        word.iter()
            .map(|l| {
                let name = &self.labels[l.generator as usize];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect()
    }

    /// Converts a word over a library's gates into a circuit.
    pub fn word_to_circuit(&self, library: &GateLibrary, word: &[Letter]) -> Circuit {
        debug_assert!(word.iter().all(|l| !l.inverse), "gates are involutions");
        let gates = word
            .iter()
            .map(|l| library.gates()[l.generator as usize].clone())
            .collect();
        Circuit::new(library.n_wires(), gates).expect("library gates fit")
    }

    /// Calls `f` with the 0-based images of every group element, each
    /// exactly once, by walking products of transversal elements.
    pub fn for_each_element<F: FnMut(&[u32])>(&self, mut f: F) {
        let identity: Vec<u32> = (0..self.n_points as u32).collect();
        let mut scratch = vec![vec![0u32; self.n_points]; self.levels.len()];
        self.walk(self.levels.len(), &identity, &mut scratch, &mut f);
    }

    fn walk<F: FnMut(&[u32])>(
        &self,
        depth: usize,
        acc: &[u32],
        scratch: &mut [Vec<u32>],
        f: &mut F,
    ) {
        if depth == 0 {
            f(acc);
            return;
        }
        let lvl = &self.levels[depth - 1];
        let (head, tail) = scratch.split_at_mut(depth - 1);
        let buf = &mut tail[0];
        for u in &lvl.transversal {
            let images = u.perm.zero_based();
            for (dst, &a) in buf.iter_mut().zip(acc) {
                *dst = images[a as usize];
            }
            let next = std::mem::take(buf);
            self.walk(depth - 1, &next, head, f);
            *buf = next;
        }
    }

    pub fn dump(&self) -> ChainDump {
        ChainDump {
            n_points: self.n_points,
            base: self.base(),
            order: self.order().to_string(),
            levels: self
                .levels
                .iter()
                .map(|l| LevelDump {
                    base_point: l.base_point + 1,
                    orbit_size: l.orbit.len(),
                    transversal: l
                        .orbit
                        .iter()
                        .map(|&p| TransversalDump {
                            point: p + 1,
                            word: self.word_labels(&l.entry(p).unwrap().word),
                        })
                        .collect(),
                })
                .collect(),
            strong_generators: self
                .strong
                .iter()
                .map(|e| StrongGeneratorDump {
                    cycles: e.perm.format_cycles(),
                    word: self.word_labels(&e.word),
                })
                .collect(),
        }
    }
}

/// Diagnostic JSON view of a chain.
#[derive(Clone, Debug, Serialize)]
pub struct ChainDump {
    pub n_points: usize,
    pub base: Vec<u32>,
    pub order: String,
    pub levels: Vec<LevelDump>,
    pub strong_generators: Vec<StrongGeneratorDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelDump {
    pub base_point: u32,
    pub orbit_size: usize,
    pub transversal: Vec<TransversalDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalDump {
    pub point: u32,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongGeneratorDump {
    pub cycles: String,
    pub word: Vec<String>,
}

impl fmt::Display for SiftResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_member {
            write!(f, "member")
        } else {
            write!(f, "non-member (residue {})", self.residue)
        }
    }
}

fn invert_letter(l: Letter, involution: &[bool]) -> Letter {
    Letter {
        generator: l.generator,
        inverse: !l.inverse && !involution[l.generator as usize],
    }
}

fn invert_word(word: &[Letter], involution: &[bool]) -> Word {
    word.iter().rev().map(|&l| invert_letter(l, involution)).collect()
}

/// Concatenates two words with free cancellation at the seam.
fn concat_words(a: &[Letter], b: &[Letter], involution: &[bool]) -> Word {
    let mut out = a.to_vec();
    for &l in b {
        match out.last() {
            Some(&prev) if prev == invert_letter(l, involution) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}
