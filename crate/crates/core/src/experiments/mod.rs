//! The census over every non-empty sub-library of the 3-wire NFT library.
//!
//! Each sub-library is an independent unit of work: a stabilizer chain
//! gives its group order and (by walking transversal products) its element
//! set, and two searches give per-specification optimal lengths and costs.
//! Units are reduced into per-specification records and per-library
//! records. The reduction is associative and commutative with total
//! tie-breaks, so results do not depend on the number of workers.
//!
//! Extremal values are per-sub-library optima: a specification's maximum
//! length is the largest optimal length over the sub-libraries that can
//! realize it. Companion values follow one policy throughout: the minimum
//! cost among length-optimal circuits (or minimum length among
//! cost-optimal circuits); ties between sub-libraries go to the smallest
//! mask, and ties between specifications go to the smallest specification.

pub mod cache;
pub mod reference;
pub mod report;

use std::collections::BTreeMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{CostModel, GateLibrary};
use crate::schreier_sims::StabilizerChain;
use crate::synth::{library_extremes, CayleyCensus, Objective, StateSpace, UNREACHED};

pub use cache::{load_records, run_cached, save_records, CacheLoad, CACHE_FORMAT_VERSION};
pub use report::{emit_report, ReportFormat, Summary, REPORT_SCHEMA_VERSION};

pub const NFT_WIRES: u8 = 3;
pub const NFT_GATE_COUNT: usize = 12;
pub const LIBRARY_COUNT: u32 = (1 << NFT_GATE_COUNT) - 1;
pub const STATE_COUNT: usize = 40320;
/// Specifications other than the identity.
pub const SPEC_COUNT: u64 = STATE_COUNT as u64 - 1;

/// Every sub-library mask, `1..=4095`.
pub fn all_masks() -> Vec<u32> {
    (1..=LIBRARY_COUNT).collect()
}

/// An extremal optimal value and its companion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Extremum {
    pub value: u32,
    pub companion: u32,
}

/// Group order of one sub-library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub mask: u32,
    pub order: u64,
    pub universal: bool,
}

/// Everything the census keeps about one sub-library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LibraryRecord {
    pub mask: u32,
    pub order: u64,
    /// The library generates every 3-bit reversible function.
    pub universal: bool,
    /// Length eccentricity, companion cost.
    pub max_len: Extremum,
    /// Cost eccentricity, companion length.
    pub max_cost: Extremum,
}

impl LibraryRecord {
    pub fn library(&self) -> GateLibrary {
        GateLibrary::from_mask(NFT_WIRES, self.mask as u64).expect("valid mask")
    }
}

/// One per-specification extremum together with the sub-library that
/// attains it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pick {
    pub value: u32,
    pub companion: u32,
    pub mask: u32,
}

impl Pick {
    const NONE: Pick = Pick {
        value: UNREACHED,
        companion: UNREACHED,
        mask: u32::MAX,
    };

    pub fn is_set(&self) -> bool {
        self.mask != u32::MAX
    }

    pub fn extremum(&self) -> Extremum {
        Extremum {
            value: self.value,
            companion: self.companion,
        }
    }

    /// Smaller value, then smaller companion, then smaller mask.
    fn min_key(&self) -> (u32, u32, u32) {
        (self.value, self.companion, self.mask)
    }

    /// Larger value, then smaller mask.
    fn better_max(&self, other: &Pick) -> bool {
        if !other.is_set() {
            return self.is_set();
        }
        self.is_set() && (self.value > other.value || (self.value == other.value && self.mask < other.mask))
    }
}

/// Per-specification census results, indexed by specification rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecTable {
    pub covering: Vec<u32>,
    pub min_len: Vec<Pick>,
    pub max_len: Vec<Pick>,
    pub min_cost: Vec<Pick>,
    pub max_cost: Vec<Pick>,
}

/// One row of [`SpecTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub spec_id: u32,
    pub covering_count: u32,
    pub min_len: Pick,
    pub max_len: Pick,
    pub min_cost: Pick,
    pub max_cost: Pick,
}

impl SpecTable {
    fn new(states: usize) -> Self {
        SpecTable {
            covering: vec![0; states],
            min_len: vec![Pick::NONE; states],
            max_len: vec![Pick::NONE; states],
            min_cost: vec![Pick::NONE; states],
            max_cost: vec![Pick::NONE; states],
        }
    }

    fn merge(mut self, other: SpecTable) -> SpecTable {
        for s in 0..self.covering.len() {
            self.covering[s] += other.covering[s];
            if other.min_len[s].min_key() < self.min_len[s].min_key() {
                self.min_len[s] = other.min_len[s];
            }
            if other.min_cost[s].min_key() < self.min_cost[s].min_key() {
                self.min_cost[s] = other.min_cost[s];
            }
            if other.max_len[s].better_max(&self.max_len[s]) {
                self.max_len[s] = other.max_len[s];
            }
            if other.max_cost[s].better_max(&self.max_cost[s]) {
                self.max_cost[s] = other.max_cost[s];
            }
        }
        self
    }

    fn absorb(&mut self, mask: u32, census: &CayleyCensus) {
        let (min, max) = match census.objective() {
            Objective::Length => (&mut self.min_len, &mut self.max_len),
            Objective::Cost => (&mut self.min_cost, &mut self.max_cost),
        };
        for (s, (&value, &companion)) in census
            .values()
            .iter()
            .zip(census.companions())
            .enumerate()
        {
            if value == UNREACHED {
                continue;
            }
            let pick = Pick {
                value,
                companion,
                mask,
            };
            if pick.min_key() < min[s].min_key() {
                min[s] = pick;
            }
            if pick.better_max(&max[s]) {
                max[s] = pick;
            }
        }
    }

    pub fn record(&self, spec_id: u32) -> SpecRecord {
        let s = spec_id as usize;
        SpecRecord {
            spec_id,
            covering_count: self.covering[s],
            min_len: self.min_len[s],
            max_len: self.max_len[s],
            min_cost: self.min_cost[s],
            max_cost: self.max_cost[s],
        }
    }

    /// Ranks of the specifications that aggregates range over: every
    /// covered specification except the identity.
    pub fn spec_ids(&self) -> impl Iterator<Item = u32> + '_ {
        (1..self.covering.len() as u32).filter(|&s| self.covering[s as usize] > 0)
    }
}

/// What a census run computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusScope {
    /// Group orders only.
    Groups,
    /// Group orders and per-library eccentricities.
    Libraries,
    /// Everything, including per-specification records.
    #[default]
    Full,
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub model: CostModel,
    pub scope: CensusScope,
    /// Sub-library masks to process, ascending; all 4095 when `None`.
    pub masks: Option<Vec<u32>>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            jobs: 0,
            model: CostModel::default(),
            scope: CensusScope::Full,
            masks: None,
        }
    }
}

impl CensusConfig {
    fn masks(&self) -> Result<Vec<u32>> {
        let mut masks = self.masks.clone().unwrap_or_else(all_masks);
        masks.sort_unstable();
        masks.dedup();
        if let Some(&bad) = masks.iter().find(|&&m| m == 0 || m > LIBRARY_COUNT) {
            return Err(Error::InvalidArgument(format!(
                "sub-library mask {bad:#x} outside 0x1..=0xfff"
            )));
        }
        Ok(masks)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusResult {
    pub scope: CensusScope,
    /// Group records in mask order.
    pub groups: Vec<GroupRecord>,
    /// Library records in mask order (scopes `Libraries` and `Full`).
    pub libraries: Option<Vec<LibraryRecord>>,
    /// Per-specification table (scope `Full`).
    pub specs: Option<SpecTable>,
    /// Σ (order − 1) over the processed sub-libraries.
    pub total_pairs: u64,
    /// Σ over sub-libraries of membership-set size minus one, counted from
    /// enumerated elements (scope `Full`).
    pub enumerated_pairs: Option<u64>,
}

impl CensusResult {
    pub fn universal_count(&self) -> usize {
        self.groups.iter().filter(|g| g.universal).count()
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

pub fn chain_for_mask(mask: u32) -> StabilizerChain {
    StabilizerChain::from_library(
        &GateLibrary::from_mask(NFT_WIRES, mask as u64).expect("valid mask"),
    )
}

fn group_record(mask: u32, chain: &StabilizerChain) -> GroupRecord {
    let order = chain.order() as u64;
    GroupRecord {
        mask,
        order,
        universal: order == STATE_COUNT as u64,
    }
}

/// Element set of a chain's group as a bitset over specification ranks.
pub fn membership_set(chain: &StabilizerChain) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(STATE_COUNT);
    chain.for_each_element(|images| set.insert(rank8(images)));
    set
}

/// Lehmer rank of a permutation of eight points given 0-based images.
fn rank8(images: &[u32]) -> usize {
    let mut rank = 0usize;
    let mut used = 0u32;
    for (i, &x) in images.iter().enumerate() {
        let smaller_unused = x - (used & ((1 << x) - 1)).count_ones();
        rank = rank * (8 - i) + smaller_unused as usize;
        used |= 1 << x;
    }
    rank
}

fn library_record(
    mask: u32,
    group: GroupRecord,
    length: &CayleyCensus,
    cost: &CayleyCensus,
) -> LibraryRecord {
    let pick = |census: &CayleyCensus| {
        let e = library_extremes(census);
        Extremum {
            value: e.value,
            companion: e.companion,
        }
    };
    LibraryRecord {
        mask,
        order: group.order,
        universal: group.universal,
        max_len: pick(length),
        max_cost: pick(cost),
    }
}

struct Unit {
    group: GroupRecord,
    library: Option<LibraryRecord>,
    enumerated: u64,
}

fn process(
    space: &Arc<StateSpace>,
    mask: u32,
    config: &CensusConfig,
    specs: Option<&mut SpecTable>,
) -> Result<Unit> {
    let chain = chain_for_mask(mask);
    let group = group_record(mask, &chain);
    if config.scope == CensusScope::Groups {
        return Ok(Unit {
            group,
            library: None,
            enumerated: 0,
        });
    }
    let library = GateLibrary::from_mask(NFT_WIRES, mask as u64)?;
    let length = CayleyCensus::compute(space, &library, &config.model, Objective::Length, false)?;
    let cost = CayleyCensus::compute(space, &library, &config.model, Objective::Cost, false)?;
    let record = library_record(mask, group, &length, &cost);
    let mut enumerated = 0;
    if let Some(table) = specs {
        let members = membership_set(&chain);
        for s in members.ones() {
            table.covering[s] += 1;
        }
        table.absorb(mask, &length);
        table.absorb(mask, &cost);
        enumerated = members.count_ones(..) as u64 - 1;
    }
    Ok(Unit {
        group,
        library: Some(record),
        enumerated,
    })
}

/// Runs the census described by `config`.
pub fn run_census(config: &CensusConfig) -> Result<CensusResult> {
    let masks = config.masks()?;
    let space = StateSpace::shared(NFT_WIRES)?;
    let full = config.scope == CensusScope::Full;

    struct Acc {
        groups: Vec<GroupRecord>,
        libraries: Vec<LibraryRecord>,
        specs: Option<SpecTable>,
        enumerated: u64,
    }
    let empty = || Acc {
        groups: Vec::new(),
        libraries: Vec::new(),
        specs: full.then(|| SpecTable::new(STATE_COUNT)),
        enumerated: 0,
    };
    let merge = |mut a: Acc, b: Acc| -> Acc {
        a.groups.extend(b.groups);
        a.libraries.extend(b.libraries);
        a.specs = match (a.specs, b.specs) {
            (Some(x), Some(y)) => Some(x.merge(y)),
            (x, y) => x.or(y),
        };
        a.enumerated += b.enumerated;
        a
    };

    let acc = with_pool(config.jobs, || {
        masks
            .par_iter()
            .try_fold(empty, |mut acc, &mask| {
                let unit = process(&space, mask, config, acc.specs.as_mut())?;
                acc.groups.push(unit.group);
                acc.libraries.extend(unit.library);
                acc.enumerated += unit.enumerated;
                Ok::<_, Error>(acc)
            })
            .try_reduce(empty, |a, b| Ok(merge(a, b)))
    })??;

    let mut groups = acc.groups;
    groups.sort_by_key(|g| g.mask);
    let mut libraries = acc.libraries;
    libraries.sort_by_key(|l| l.mask);
    Ok(CensusResult {
        scope: config.scope,
        total_pairs: groups.iter().map(|g| g.order - 1).sum(),
        groups,
        libraries: (config.scope != CensusScope::Groups).then_some(libraries),
        specs: acc.specs,
        enumerated_pairs: full.then_some(acc.enumerated),
    })
}

/// Group order and universality of every sub-library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalityCensus {
    pub records: Vec<GroupRecord>,
    pub universal_count: usize,
    pub total_pairs: u64,
}

pub fn universality_census(jobs: usize) -> Result<UniversalityCensus> {
    let records = with_pool(jobs, || {
        all_masks()
            .into_par_iter()
            .map(|mask| group_record(mask, &chain_for_mask(mask)))
            .collect::<Vec<_>>()
    })?;
    Ok(UniversalityCensus {
        universal_count: records.iter().filter(|r| r.universal).count(),
        total_pairs: records.iter().map(|r| r.order - 1).sum(),
        records,
    })
}

/// Coverage of specifications by sub-library groups, from enumerated
/// element sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCensus {
    /// Number of sub-libraries whose group contains each specification,
    /// indexed by rank.
    pub covering: Vec<u32>,
    /// Non-identity specifications covered by each sub-library, in mask
    /// order.
    pub coverage: Vec<(u32, u64)>,
    pub total_pairs: u64,
}

pub fn membership_census(groups: &UniversalityCensus, jobs: usize) -> Result<MembershipCensus> {
    let per_library = with_pool(jobs, || {
        groups
            .records
            .par_iter()
            .map(|g| {
                let set = membership_set(&chain_for_mask(g.mask));
                (g.mask, set)
            })
            .fold(
                || (vec![0u32; STATE_COUNT], Vec::new()),
                |(mut covering, mut coverage), (mask, set)| {
                    for s in set.ones() {
                        covering[s] += 1;
                    }
                    coverage.push((mask, set.count_ones(..) as u64 - 1));
                    (covering, coverage)
                },
            )
            .reduce(
                || (vec![0u32; STATE_COUNT], Vec::new()),
                |(mut a, mut ca), (b, cb)| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    ca.extend(cb);
                    (a, ca)
                },
            )
    })?;
    let (covering, mut coverage) = per_library;
    coverage.sort_unstable();
    Ok(MembershipCensus {
        covering,
        total_pairs: coverage.iter().map(|&(_, c)| c).sum(),
        coverage,
    })
}

/// Histogram of a value, and of (value, companion) pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub name: String,
    pub counts: BTreeMap<u32, u64>,
    pub paired: BTreeMap<(u32, u32), u64>,
}

impl Distribution {
    pub fn new(name: impl Into<String>) -> Self {
        Distribution {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add(&mut self, value: u32, companion: Option<u32>) {
        *self.counts.entry(value).or_default() += 1;
        if let Some(c) = companion {
            *self.paired.entry((value, c)).or_default() += 1;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn mean(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let sum: f64 = self.counts.iter().map(|(&v, &c)| v as f64 * c as f64).sum();
        sum / total as f64
    }

    pub fn count(&self, value: u32) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }
}

/// The per-specification distributions (covering count, minimum and
/// maximum length and cost).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDistributions {
    pub covering: Distribution,
    pub min_len: Distribution,
    pub max_len: Distribution,
    pub min_cost: Distribution,
    pub max_cost: Distribution,
}

pub fn spec_distributions(table: &SpecTable) -> SpecDistributions {
    let mut d = SpecDistributions {
        covering: Distribution::new("covering_count"),
        min_len: Distribution::new("min_len"),
        max_len: Distribution::new("max_len"),
        min_cost: Distribution::new("min_cost"),
        max_cost: Distribution::new("max_cost"),
    };
    for s in table.spec_ids() {
        let r = table.record(s);
        d.covering.add(r.covering_count, None);
        d.min_len.add(r.min_len.value, Some(r.min_len.companion));
        d.max_len.add(r.max_len.value, Some(r.max_len.companion));
        d.min_cost.add(r.min_cost.value, Some(r.min_cost.companion));
        d.max_cost.add(r.max_cost.value, Some(r.max_cost.companion));
    }
    d
}

/// Per-library distributions: coverage, length and cost eccentricities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LibraryDistributions {
    pub coverage: Distribution,
    pub max_len: Distribution,
    pub max_cost: Distribution,
}

pub fn library_distributions(records: &[LibraryRecord]) -> LibraryDistributions {
    let mut d = LibraryDistributions {
        coverage: Distribution::new("library_coverage"),
        max_len: Distribution::new("library_max_len"),
        max_cost: Distribution::new("library_max_cost"),
    };
    for r in records {
        d.coverage.add((r.order - 1) as u32, None);
        d.max_len.add(r.max_len.value, Some(r.max_len.companion));
        d.max_cost.add(r.max_cost.value, Some(r.max_cost.companion));
    }
    d
}

/// Length and cost eccentricity histograms over sub-libraries.
pub fn library_bounds_census(jobs: usize, model: &CostModel) -> Result<LibraryDistributions> {
    let result = run_census(&CensusConfig {
        jobs,
        model: model.clone(),
        scope: CensusScope::Libraries,
        masks: None,
    })?;
    Ok(library_distributions(
        result.libraries.as_deref().expect("library scope"),
    ))
}

/// Per-specification length bounds over all sub-libraries.
pub fn length_bounds_census(jobs: usize, model: &CostModel) -> Result<(SpecTable, Distribution, Distribution)> {
    let table = run_census(&CensusConfig {
        jobs,
        model: model.clone(),
        scope: CensusScope::Full,
        masks: None,
    })?
    .specs
    .expect("full scope");
    let d = spec_distributions(&table);
    Ok((table, d.min_len, d.max_len))
}

/// Per-specification cost bounds over all sub-libraries.
pub fn cost_bounds_census(jobs: usize, model: &CostModel) -> Result<(SpecTable, Distribution, Distribution)> {
    let table = run_census(&CensusConfig {
        jobs,
        model: model.clone(),
        scope: CensusScope::Full,
        masks: None,
    })?
    .specs
    .expect("full scope");
    let d = spec_distributions(&table);
    Ok((table, d.min_cost, d.max_cost))
}
