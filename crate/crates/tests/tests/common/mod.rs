#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use revsynth::Permutation;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Every product of the generators, by breadth-first closure on image
/// lists.
pub fn brute_closure(generators: &[Permutation], n_points: usize) -> HashSet<Vec<u32>> {
    let identity: Vec<u32> = (0..n_points as u32).collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q: Vec<u32> = p.iter().map(|&x| g.zero_based()[x as usize]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

pub fn random_perm(rng: &mut StdRng, n_points: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n_points as u32).collect();
    images.shuffle(rng);
    Permutation::from_zero_based(images).unwrap()
}

/// A random non-empty sub-library mask of the 12-gate library.
pub fn random_mask(rng: &mut StdRng) -> u32 {
    rng.random_range(1..=0xfffu32)
}
