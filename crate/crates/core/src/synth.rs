//! Exact synthesis by search over the Cayley graph of a gate library.
//!
//! States are permutations of `2^n` points indexed by lexicographic rank, and
//! a [`StateSpace`] precomputes the successor of every state under every NFT
//! gate. A census is single-source search from the identity; because every
//! gate is an involution the graph is undirected and the distance from the
//! identity to `p` is the optimal circuit size for `p`.
//!
//! Values are compared as pairs: `(length, cost)` for the length objective
//! and `(cost, length)` for the cost objective. Among circuits with the
//! optimal pair the witness is the lexicographically smallest sequence of
//! library gate indices, first gate first.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{nft_gates, Circuit, CostModel, Gate, GateLibrary};
use crate::perm::{factorial, Permutation, Specification};
use crate::schreier_sims::StabilizerChain;

/// Largest state space a census will allocate.
pub const MAX_STATES: u64 = 1 << 24;

pub const UNREACHED: u32 = u32::MAX;
const NO_PRED: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Length,
    Cost,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Length => "length",
            Objective::Cost => "cost",
        })
    }
}

/// Every permutation of `2^n` points with successor links for each NFT gate.
pub struct StateSpace {
    n_wires: u8,
    n_points: usize,
    size: usize,
    gates: Vec<Gate>,
    /// `table[state * gates.len() + g]` is `state` followed by gate `g`.
    table: Vec<u32>,
    identity: u32,
}

impl fmt::Debug for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateSpace")
            .field("n_wires", &self.n_wires)
            .field("size", &self.size)
            .field("gates", &self.gates)
            .finish()
    }
}

impl StateSpace {
    pub fn new(n_wires: u8) -> Result<Self> {
        let gates = nft_gates(n_wires)?;
        let n_points = 1usize << n_wires;
        let size = factorial(n_points)
            .filter(|&s| s <= MAX_STATES)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "the state space of {n_wires}-wire circuits ({n_points}! permutations) is too large to search"
                ))
            })? as usize;
        let gate_perms: Vec<Permutation> = gates
            .iter()
            .map(|g| g.perm(n_wires).expect("NFT gates fit"))
            .collect();
        let mut table = vec![0u32; size * gates.len()];
        for (state, row) in table.chunks_mut(gates.len()).enumerate() {
            let p = Permutation::unrank(state as u64, n_points).expect("rank in range");
            for (slot, g) in row.iter_mut().zip(&gate_perms) {
                *slot = p.then_unchecked(g).rank() as u32;
            }
        }
        Ok(StateSpace {
            n_wires,
            n_points,
            size,
            gates,
            table,
            identity: 0,
        })
    }

    /// Process-wide shared space for `n_wires`, built on first use.
    pub fn shared(n_wires: u8) -> Result<Arc<StateSpace>> {
        static SPACES: [OnceLock<Arc<StateSpace>>; 4] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let slot = SPACES.get(n_wires as usize).ok_or_else(|| {
            Error::Unsupported(format!(
                "the state space of {n_wires}-wire circuits is too large to search"
            ))
        })?;
        if let Some(space) = slot.get() {
            return Ok(space.clone());
        }
        let space = Arc::new(StateSpace::new(n_wires)?);
        Ok(slot.get_or_init(|| space).clone())
    }

    pub fn n_wires(&self) -> u8 {
        self.n_wires
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    pub fn index_of(&self, p: &Permutation) -> Result<u32> {
        if p.n_points() != self.n_points {
            return Err(Error::InvalidArgument(format!(
                "permutation on {} points, state space has {}",
                p.n_points(),
                self.n_points
            )));
        }
        Ok(p.rank() as u32)
    }

    pub fn perm_at(&self, index: u32) -> Permutation {
        Permutation::unrank(index as u64, self.n_points).expect("index in range")
    }

    #[inline]
    pub fn step(&self, state: u32, gate_column: usize) -> u32 {
        self.table[state as usize * self.gates.len() + gate_column]
    }

    /// Columns of the library's gates in this space.
    pub fn columns(&self, library: &GateLibrary) -> Result<Vec<usize>> {
        if library.n_wires() != self.n_wires {
            return Err(Error::InvalidArgument(format!(
                "library on {} wires, state space on {}",
                library.n_wires(),
                self.n_wires
            )));
        }
        library
            .gates()
            .iter()
            .map(|g| {
                self.gates.iter().position(|a| a == g).ok_or_else(|| {
                    Error::Unsupported(format!("gate {g} is not a NOT, Feynman or Toffoli gate"))
                })
            })
            .collect()
    }
}

/// Single-source optimal values from the identity over one library.
#[derive(Clone)]
pub struct CayleyCensus {
    space: Arc<StateSpace>,
    library: GateLibrary,
    objective: Objective,
    columns: Vec<usize>,
    gate_costs: Vec<u32>,
    /// Optimal value of the objective, `UNREACHED` outside the group.
    value: Vec<u32>,
    /// Length when optimizing cost, cost when optimizing length.
    companion: Vec<u32>,
    /// Last gate (library index) of the witness, when witnesses were built.
    pred: Option<Vec<u8>>,
    reachable: usize,
}

impl fmt::Debug for CayleyCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyCensus")
            .field("library", &self.library.to_string())
            .field("objective", &self.objective)
            .field("reachable", &self.reachable)
            .finish()
    }
}

/// Minimum-length census with witnesses; companion values are minimum costs.
pub fn bfs_census(
    space: &Arc<StateSpace>,
    library: &GateLibrary,
    model: &CostModel,
) -> Result<CayleyCensus> {
    CayleyCensus::compute(space, library, model, Objective::Length, true)
}

/// Minimum-cost census with witnesses; companion values are minimum lengths.
pub fn dijkstra_census(
    space: &Arc<StateSpace>,
    library: &GateLibrary,
    model: &CostModel,
) -> Result<CayleyCensus> {
    CayleyCensus::compute(space, library, model, Objective::Cost, true)
}

impl CayleyCensus {
    pub fn compute(
        space: &Arc<StateSpace>,
        library: &GateLibrary,
        model: &CostModel,
        objective: Objective,
        witnesses: bool,
    ) -> Result<Self> {
        let columns = space.columns(library)?;
        if columns.len() >= NO_PRED as usize {
            return Err(Error::Unsupported(format!(
                "libraries are limited to {} gates",
                NO_PRED as usize - 1
            )));
        }
        let gate_costs = library
            .gates()
            .iter()
            .map(|g| model.gate_cost(g))
            .collect::<Result<Vec<_>>>()?;
        let mut census = CayleyCensus {
            space: space.clone(),
            library: library.clone(),
            objective,
            columns,
            gate_costs,
            value: vec![UNREACHED; space.size()],
            companion: vec![UNREACHED; space.size()],
            pred: None,
            reachable: 0,
        };
        match objective {
            Objective::Length => census.breadth_first(),
            Objective::Cost => census.uniform_cost(),
        }
        if witnesses {
            census.rank_witnesses();
        }
        Ok(census)
    }

    /// Layered BFS; each layer's minimum costs are final before it is
    /// expanded because all of its parents lie in the previous layer.
    fn breadth_first(&mut self) {
        let space = &*self.space;
        let id = space.identity_index() as usize;
        self.value[id] = 0;
        self.companion[id] = 0;
        let mut frontier = vec![id as u32];
        let mut reached = 1;
        let mut depth = 0u32;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &s in &frontier {
                let base_cost = self.companion[s as usize];
                for (k, &col) in self.columns.iter().enumerate() {
                    let t = space.step(s, col) as usize;
                    let c = base_cost.saturating_add(self.gate_costs[k]);
                    if self.value[t] == UNREACHED {
                        self.value[t] = depth + 1;
                        self.companion[t] = c;
                        next.push(t as u32);
                    } else if self.value[t] == depth + 1 && c < self.companion[t] {
                        self.companion[t] = c;
                    }
                }
            }
            reached += next.len();
            frontier = next;
            depth += 1;
        }
        self.reachable = reached;
    }

    /// Dijkstra on `(cost, length)` keys with one bucket per distinct key.
    fn uniform_cost(&mut self) {
        let space = &*self.space;
        let id = space.identity_index() as usize;
        self.value[id] = 0;
        self.companion[id] = 0;
        let mut buckets: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
        buckets.insert((0, 0), vec![id as u32]);
        let mut reached = 0;
        while let Some(((cost, len), states)) = buckets.pop_first() {
            for s in states {
                let s = s as usize;
                if (self.value[s], self.companion[s]) != (cost, len) {
                    continue;
                }
                reached += 1;
                for (k, &col) in self.columns.iter().enumerate() {
                    let t = space.step(s as u32, col) as usize;
                    let key = (cost.saturating_add(self.gate_costs[k]), len + 1);
                    if key < (self.value[t], self.companion[t]) {
                        self.value[t] = key.0;
                        self.companion[t] = key.1;
                        buckets.entry(key).or_default().push(t as u32);
                    }
                }
            }
        }
        self.reachable = reached;
    }

    fn length_of(&self, s: usize) -> u32 {
        match self.objective {
            Objective::Length => self.value[s],
            Objective::Cost => self.companion[s],
        }
    }

    fn cost_of(&self, s: usize) -> u32 {
        match self.objective {
            Objective::Length => self.companion[s],
            Objective::Cost => self.value[s],
        }
    }

    /// Assigns each state the last gate of its lexicographically smallest
    /// optimal circuit. States are ranked layer by layer (by optimal length)
    /// so that comparing `(rank of prefix, last gate)` compares whole gate
    /// sequences.
    fn rank_witnesses(&mut self) {
        let space = &*self.space;
        let mut layers: Vec<Vec<u32>> = Vec::new();
        for s in 0..space.size() {
            if self.value[s] != UNREACHED {
                let len = self.length_of(s) as usize;
                if layers.len() <= len {
                    layers.resize_with(len + 1, Vec::new);
                }
                layers[len].push(s as u32);
            }
        }
        let mut rank = vec![u32::MAX; space.size()];
        let mut pred = vec![NO_PRED; space.size()];
        rank[space.identity_index() as usize] = 0;
        for (len, layer) in layers.iter().enumerate().skip(1) {
            let mut keyed: Vec<((u32, u8), u32)> = layer
                .iter()
                .map(|&s| {
                    let s_us = s as usize;
                    let best = self
                        .columns
                        .iter()
                        .enumerate()
                        .filter_map(|(k, &col)| {
                            let q = space.step(s, col) as usize;
                            let on_optimal_path = self.value[q] != UNREACHED
                                && self.length_of(q) + 1 == len as u32
                                && self.cost_of(q) + self.gate_costs[k] == self.cost_of(s_us);
                            on_optimal_path.then_some((rank[q], k as u8))
                        })
                        .min()
                        .expect("every reached state has an optimal predecessor");
                    (best, s)
                })
                .collect();
            keyed.sort_unstable();
            for (r, &((_, k), s)) in keyed.iter().enumerate() {
                rank[s as usize] = r as u32;
                pred[s as usize] = k;
            }
        }
        self.pred = Some(pred);
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn library(&self) -> &GateLibrary {
        &self.library
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    /// `|⟨L⟩|`, the number of states reached.
    pub fn reachable_count(&self) -> usize {
        self.reachable
    }

    pub fn value_at(&self, index: u32) -> Option<u32> {
        let v = self.value[index as usize];
        (v != UNREACHED).then_some(v)
    }

    pub fn companion_at(&self, index: u32) -> Option<u32> {
        let v = self.companion[index as usize];
        (self.value[index as usize] != UNREACHED).then_some(v)
    }

    pub fn values(&self) -> &[u32] {
        &self.value
    }

    pub fn companions(&self) -> &[u32] {
        &self.companion
    }

    pub fn value(&self, p: &Permutation) -> Result<Option<u32>> {
        Ok(self.value_at(self.space.index_of(p)?))
    }

    pub fn companion(&self, p: &Permutation) -> Result<Option<u32>> {
        Ok(self.companion_at(self.space.index_of(p)?))
    }

    pub fn has_witnesses(&self) -> bool {
        self.pred.is_some()
    }

    /// Optimal circuit for a state, or `None` outside the group.
    pub fn witness_at(&self, index: u32) -> Result<Option<Circuit>> {
        let pred = self.pred.as_ref().ok_or_else(|| {
            Error::InvalidArgument("census was computed without witnesses".into())
        })?;
        if self.value[index as usize] == UNREACHED {
            return Ok(None);
        }
        let mut reversed = Vec::new();
        let mut s = index;
        while s != self.space.identity_index() {
            let k = pred[s as usize] as usize;
            reversed.push(self.library.gates()[k].clone());
            s = self.space.step(s, self.columns[k]);
        }
        reversed.reverse();
        Ok(Some(Circuit::new(self.library.n_wires(), reversed)?))
    }

    pub fn witness(&self, p: &Permutation) -> Result<Option<Circuit>> {
        self.witness_at(self.space.index_of(p)?)
    }
}

/// An optimal circuit for one specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynthesisResult {
    pub spec: Specification,
    pub library: GateLibrary,
    pub objective: Objective,
    pub value: u32,
    /// Minimum cost among length-optimal circuits, or minimum length among
    /// cost-optimal circuits.
    pub companion: u32,
    pub witness: Circuit,
}

/// Exact synthesis of one specification. `Ok(None)` when the specification
/// is outside the group generated by the library.
pub fn synthesize(
    space: &Arc<StateSpace>,
    library: &GateLibrary,
    spec: &Specification,
    objective: Objective,
    model: &CostModel,
) -> Result<Option<SynthesisResult>> {
    let census = CayleyCensus::compute(space, library, model, objective, true)?;
    let p = spec.to_perm();
    let index = space.index_of(&p)?;
    let Some(witness) = census.witness_at(index)? else {
        return Ok(None);
    };
    Ok(Some(SynthesisResult {
        spec: spec.clone(),
        library: library.clone(),
        objective,
        value: census.value_at(index).expect("reached"),
        companion: census.companion_at(index).expect("reached"),
        witness,
    }))
}

/// Outcome of factorization-based synthesis: a circuit when the
/// specification is a member, otherwise an empty circuit with
/// `member == false`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizedCircuit {
    pub member: bool,
    pub circuit: Circuit,
}

/// Synthesis by sifting through a stabilizer chain of the library. The
/// circuit realizes the specification but is not optimal in general.
pub fn ss_synthesize(library: &GateLibrary, spec: &Specification) -> Result<FactorizedCircuit> {
    let chain = StabilizerChain::from_library(library);
    ss_synthesize_with(&chain, library, spec)
}

pub fn ss_synthesize_with(
    chain: &StabilizerChain,
    library: &GateLibrary,
    spec: &Specification,
) -> Result<FactorizedCircuit> {
    let result = chain.sift(&spec.to_perm())?;
    Ok(match result.word {
        Some(word) => FactorizedCircuit {
            member: true,
            circuit: chain.word_to_circuit(library, &word),
        },
        None => FactorizedCircuit {
            member: false,
            circuit: Circuit::empty(library.n_wires())?,
        },
    })
}

/// A library's worst-case optimal value over its non-identity elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremes {
    pub objective: Objective,
    /// Eccentricity of the identity in the Cayley graph; 0 for a library
    /// generating only the identity.
    pub value: u32,
    /// Companion of the smallest-rank state attaining `value`.
    pub companion: u32,
    /// Smallest companion among the states attaining `value`.
    pub companion_min: u32,
    /// Largest companion among the states attaining `value`.
    pub companion_max: u32,
    /// Rank indices of the states attaining `value`.
    pub arg_indices: Vec<u32>,
}

pub fn library_extremes(census: &CayleyCensus) -> Extremes {
    let id = census.space.identity_index() as usize;
    let mut value = 0;
    let mut args = Vec::new();
    for (s, &v) in census.value.iter().enumerate() {
        if v == UNREACHED || s == id {
            continue;
        }
        if v > value || args.is_empty() {
            value = v;
            args.clear();
        }
        if v == value {
            args.push(s as u32);
        }
    }
    let companions = args.iter().map(|&s| census.companion[s as usize]);
    Extremes {
        objective: census.objective,
        value,
        companion: args.first().map_or(0, |&s| census.companion[s as usize]),
        companion_min: companions.clone().min().unwrap_or(0),
        companion_max: companions.max().unwrap_or(0),
        arg_indices: args,
    }
}
