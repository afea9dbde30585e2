//! Multiple-control Toffoli gates, the NOT/Feynman/Toffoli (NFT) library,
//! gate cascades and the additive quantum cost model.
//!
//! Wire 1 is the most significant bit of the input word, so on three wires
//! `N1` maps input `000` to `100` and its permutation is `(1,5)(2,6)(3,7)(4,8)`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest wire count whose gates can be named with single-digit wires.
pub const MAX_WIRES: u8 = 9;

/// A C^kNOT gate: the target wire flips iff every control wire is 1.
///
/// Controls keep the order they are written in (`T321` has controls 3, 2),
/// but equality only looks at the control set and target.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Gate {
    controls: Vec<u8>,
    target: u8,
}

impl Gate {
    pub fn new(controls: Vec<u8>, target: u8) -> Result<Self> {
        if target == 0 || target > MAX_WIRES {
            return Err(Error::InvalidArgument(format!(
                "target wire {target} out of range 1..={MAX_WIRES}"
            )));
        }
        let mut seen = 0u16;
        for &c in &controls {
            if c == 0 || c > MAX_WIRES {
                return Err(Error::InvalidArgument(format!(
                    "control wire {c} out of range 1..={MAX_WIRES}"
                )));
            }
            if c == target {
                return Err(Error::InvalidArgument(format!(
                    "wire {c} is both control and target"
                )));
            }
            if seen & (1 << c) != 0 {
                return Err(Error::InvalidArgument(format!("control wire {c} repeated")));
            }
            seen |= 1 << c;
        }
        Ok(Gate { controls, target })
    }

    pub fn not(target: u8) -> Result<Self> {
        Gate::new(vec![], target)
    }

    pub fn feynman(control: u8, target: u8) -> Result<Self> {
        Gate::new(vec![control], target)
    }

    pub fn toffoli(c1: u8, c2: u8, target: u8) -> Result<Self> {
        Gate::new(vec![c1, c2], target)
    }

    pub fn controls(&self) -> &[u8] {
        &self.controls
    }

    pub fn target(&self) -> u8 {
        self.target
    }

    pub fn control_count(&self) -> usize {
        self.controls.len()
    }

    fn control_mask(&self) -> u16 {
        self.controls.iter().fold(0, |m, &c| m | (1 << c))
    }

    /// Highest wire index the gate touches.
    pub fn max_wire(&self) -> u8 {
        self.controls.iter().copied().fold(self.target, u8::max)
    }

    /// Canonical label: `N<t>`, `F<c><t>`, `T<c1><c2><t>`, or `C<c...><t>`
    /// for three or more controls.
    pub fn name(&self) -> String {
        self.to_string()
    }

    /// Applies the gate to an `n`-bit input word (wire 1 is the MSB).
    pub fn apply_word(&self, word: u32, n_wires: u8) -> u32 {
        let bit = |w: u8| 1u32 << (n_wires - w);
        let all_set = self.controls.iter().all(|&c| word & bit(c) != 0);
        if all_set {
            word ^ bit(self.target)
        } else {
            word
        }
    }

    /// The gate's permutation on `2^n_wires` points.
    pub fn perm(&self, n_wires: u8) -> Result<Permutation> {
        if n_wires == 0 || n_wires > MAX_WIRES || self.max_wire() > n_wires {
            return Err(Error::InvalidArgument(format!(
                "gate {self} does not fit on {n_wires} wires"
            )));
        }
        let images = (0..1u32 << n_wires)
            .map(|w| self.apply_word(w, n_wires))
            .collect();
        Ok(Permutation::from_zero_based_unchecked(images))
    }
}

pub fn gate_perm(gate: &Gate, n_wires: u8) -> Result<Permutation> {
    gate.perm(n_wires)
}

impl PartialEq for Gate {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.control_mask() == other.control_mask()
    }
}

impl Eq for Gate {}

impl Hash for Gate {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.target.hash(state);
        self.control_mask().hash(state);
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.controls.len() {
            0 => 'N',
            1 => 'F',
            2 => 'T',
            _ => 'C',
        };
        write!(f, "{prefix}")?;
        for c in &self.controls {
            write!(f, "{c}")?;
        }
        write!(f, "{}", self.target)
    }
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut chars = text.chars();
        let kind = chars
            .next()
            .ok_or_else(|| Error::parse(0, "empty gate name"))?
            .to_ascii_uppercase();
        let wires: Vec<u8> = chars
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::parse(i + 1, format!("unknown gate '{text}'")))
            })
            .collect::<Result<_>>()?;
        let expected = match kind {
            'N' => Some(1),
            'F' => Some(2),
            'T' => Some(3),
            'C' => None,
            _ => return Err(Error::parse(0, format!("unknown gate '{text}'"))),
        };
        let ok = match expected {
            Some(k) => wires.len() == k,
            None => wires.len() >= 4,
        };
        if !ok {
            return Err(Error::parse(
                1,
                format!("unknown gate '{text}': wrong number of wires"),
            ));
        }
        let (target, controls) = wires.split_last().expect("at least one wire");
        Gate::new(controls.to_vec(), *target)
            .map_err(|e| Error::parse(0, format!("unknown gate '{text}': {e}")))
    }
}

impl TryFrom<String> for Gate {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        value.parse()
    }
}

impl From<Gate> for String {
    fn from(gate: Gate) -> Self {
        gate.to_string()
    }
}

/// Every NOT, Feynman and two-control Toffoli gate on `n_wires` wires.
///
/// On three wires this is the 12-gate list
/// `N1 N2 N3 F12 F13 F23 F21 F32 F31 T123 T132 T321`, and that order is the
/// bit order of library masks. Other wire counts list NOT gates by target,
/// then Feynman gates with control below target, then above target, then
/// Toffoli gates, each group in lexicographic order.
pub fn nft_gates(n_wires: u8) -> Result<Vec<Gate>> {
    if n_wires == 0 || n_wires > MAX_WIRES {
        return Err(Error::InvalidArgument(format!(
            "wire count must be in 1..={MAX_WIRES}, got {n_wires}"
        )));
    }
    if n_wires == 3 {
        return Ok(NFT3
            .iter()
            .map(|name| name.parse().expect("canonical gate name"))
            .collect());
    }
    let wires = 1..=n_wires;
    let mut gates: Vec<Gate> = wires.clone().map(|t| Gate::not(t).unwrap()).collect();
    for (below, above) in [(true, false), (false, true)] {
        for c in wires.clone() {
            for t in wires.clone() {
                if (below && c < t) || (above && c > t) {
                    gates.push(Gate::feynman(c, t).unwrap());
                }
            }
        }
    }
    for c1 in wires.clone() {
        for c2 in c1 + 1..=n_wires {
            for t in wires.clone() {
                if t != c1 && t != c2 {
                    gates.push(Gate::toffoli(c1, c2, t).unwrap());
                }
            }
        }
    }
    Ok(gates)
}

const NFT3: [&str; 12] = [
    "N1", "N2", "N3", "F12", "F13", "F23", "F21", "F32", "F31", "T123", "T132", "T321",
];

/// Per-gate quantum cost keyed by number of controls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    cost_by_control_count: Vec<u32>,
}

impl Default for CostModel {
    /// NOT is free, Feynman costs 1, Toffoli costs 5.
    fn default() -> Self {
        CostModel {
            cost_by_control_count: vec![0, 1, 5],
        }
    }
}

impl CostModel {
    pub fn new(cost_by_control_count: Vec<u32>) -> Self {
        CostModel {
            cost_by_control_count,
        }
    }

    /// Every gate costs 1, so cost equals length.
    pub fn unit() -> Self {
        CostModel::new(vec![1, 1, 1])
    }

    pub fn costs(&self) -> &[u32] {
        &self.cost_by_control_count
    }

    pub fn set_cost(&mut self, controls: usize, cost: u32) {
        if self.cost_by_control_count.len() <= controls {
            self.cost_by_control_count.resize(controls + 1, 0);
        }
        self.cost_by_control_count[controls] = cost;
    }

    pub fn gate_cost(&self, gate: &Gate) -> Result<u32> {
        self.cost_by_control_count
            .get(gate.control_count())
            .copied()
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "cost model has no cost for {} controls (gate {gate})",
                    gate.control_count()
                ))
            })
    }
}

/// An ordered, duplicate-free set of gates on a fixed number of wires.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateLibrary {
    n_wires: u8,
    gates: Vec<Gate>,
}

impl GateLibrary {
    pub fn new(n_wires: u8, gates: Vec<Gate>) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::InvalidArgument("a gate library cannot be empty".into()));
        }
        if n_wires == 0 || n_wires > MAX_WIRES {
            return Err(Error::InvalidArgument(format!(
                "wire count must be in 1..={MAX_WIRES}, got {n_wires}"
            )));
        }
        for (i, g) in gates.iter().enumerate() {
            if g.max_wire() > n_wires {
                return Err(Error::InvalidArgument(format!(
                    "gate {g} does not fit on {n_wires} wires"
                )));
            }
            if gates[..i].contains(g) {
                return Err(Error::InvalidArgument(format!("gate {g} listed twice")));
            }
        }
        Ok(GateLibrary { n_wires, gates })
    }

    /// The full NFT library on `n_wires` wires.
    pub fn nft(n_wires: u8) -> Result<Self> {
        GateLibrary::new(n_wires, nft_gates(n_wires)?)
    }

    /// Sub-library of the NFT library selected by a bitmask over its
    /// canonical order (bit 0 is `N1`).
    pub fn from_mask(n_wires: u8, mask: u64) -> Result<Self> {
        let all = nft_gates(n_wires)?;
        if all.len() < 64 && mask >> all.len() != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#x} selects gates beyond the {}-gate NFT library",
                all.len()
            )));
        }
        let gates = all
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| i < 64 && mask & (1 << i) != 0)
            .map(|(_, g)| g)
            .collect();
        GateLibrary::new(n_wires, gates)
    }

    /// Parses `NFT`/`ALL`, a `0x`-prefixed mask, or comma-separated gate
    /// names. Named gates are put into canonical NFT order when they all
    /// belong to the NFT library.
    pub fn parse(text: &str, n_wires: u8) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.eq_ignore_ascii_case("nft") || trimmed.eq_ignore_ascii_case("all") {
            return GateLibrary::nft(n_wires);
        }
        if let Some(hex) = trimmed
            .strip_prefix("0x")
            .or_else(|| trimmed.strip_prefix("0X"))
        {
            let mask = u64::from_str_radix(hex, 16)
                .map_err(|_| Error::parse(2, format!("invalid hexadecimal mask '{trimmed}'")))?;
            if mask == 0 {
                return Err(Error::InvalidArgument("a gate library cannot be empty".into()));
            }
            return GateLibrary::from_mask(n_wires, mask);
        }
        let gates: Vec<Gate> = trimmed
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        let lib = GateLibrary::new(n_wires, gates)?;
        match lib.mask() {
            Some(mask) => GateLibrary::from_mask(n_wires, mask),
            None => Ok(lib),
        }
    }

    pub fn n_wires(&self) -> u8 {
        self.n_wires
    }

    pub fn n_points(&self) -> usize {
        1 << self.n_wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn perms(&self) -> Vec<Permutation> {
        self.gates
            .iter()
            .map(|g| g.perm(self.n_wires).expect("validated at construction"))
            .collect()
    }

    /// Bitmask over the canonical NFT order, if every gate is an NFT gate.
    pub fn mask(&self) -> Option<u64> {
        let all = nft_gates(self.n_wires).ok()?;
        self.gates.iter().try_fold(0u64, |m, g| {
            let i = all.iter().position(|a| a == g)?;
            (i < 64).then(|| m | (1 << i))
        })
    }

    pub fn names(&self) -> Vec<String> {
        self.gates.iter().map(Gate::name).collect()
    }

    /// Every non-empty subset of this library, in ascending bitmask order
    /// over this library's own gate order.
    pub fn sublibraries(&self) -> Result<impl Iterator<Item = GateLibrary> + '_> {
        if self.gates.len() > 24 {
            return Err(Error::Unsupported(format!(
                "sub-library enumeration is limited to 24 gates, library has {}",
                self.gates.len()
            )));
        }
        Ok((1u32..1 << self.gates.len()).map(move |mask| GateLibrary {
            n_wires: self.n_wires,
            gates: self
                .gates
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, g)| g.clone())
                .collect(),
        }))
    }
}

impl fmt::Display for GateLibrary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(","))
    }
}

/// A cascade of gates; the first gate listed is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    n_wires: u8,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_wires: u8, gates: Vec<Gate>) -> Result<Self> {
        if n_wires == 0 || n_wires > MAX_WIRES {
            return Err(Error::InvalidArgument(format!(
                "wire count must be in 1..={MAX_WIRES}, got {n_wires}"
            )));
        }
        if let Some(g) = gates.iter().find(|g| g.max_wire() > n_wires) {
            return Err(Error::InvalidArgument(format!(
                "gate {g} does not fit on {n_wires} wires"
            )));
        }
        Ok(Circuit { n_wires, gates })
    }

    pub fn empty(n_wires: u8) -> Result<Self> {
        Circuit::new(n_wires, Vec::new())
    }

    /// Parses whitespace- or comma-separated gate names.
    pub fn parse(text: &str, n_wires: u8) -> Result<Self> {
        let gates = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        Circuit::new(n_wires, gates)
    }

    pub fn n_wires(&self) -> u8 {
        self.n_wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.gates.iter().map(Gate::name).collect()
    }

    pub fn perm(&self) -> Permutation {
        let mut acc = Permutation::identity_unchecked(1 << self.n_wires);
        for g in &self.gates {
            let gp = g.perm(self.n_wires).expect("validated at construction");
            acc = acc.then_unchecked(&gp);
        }
        acc
    }

    pub fn cost(&self, model: &CostModel) -> Result<u64> {
        self.gates
            .iter()
            .map(|g| model.gate_cost(g).map(u64::from))
            .sum()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit> {
        if self.n_wires != other.n_wires {
            return Err(Error::InvalidArgument(format!(
                "cannot join circuits on {} and {} wires",
                self.n_wires, other.n_wires
            )));
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit {
            n_wires: self.n_wires,
            gates,
        })
    }
}

pub fn circuit_perm(circuit: &Circuit) -> Permutation {
    circuit.perm()
}

pub fn circuit_cost(circuit: &Circuit, model: &CostModel) -> Result<u64> {
    circuit.cost(model)
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(text: &str) -> Permutation {
        Permutation::parse_cycles(text, 8).unwrap()
    }

    const GOLDEN: [(&str, &str); 12] = [
        ("N1", "(1,5)(2,6)(3,7)(4,8)"),
        ("N2", "(1,3)(2,4)(5,7)(6,8)"),
        ("N3", "(1,2)(3,4)(5,6)(7,8)"),
        ("F12", "(5,7)(6,8)"),
        ("F13", "(5,6)(7,8)"),
        ("F23", "(3,4)(7,8)"),
        ("F21", "(3,7)(4,8)"),
        ("F32", "(2,4)(6,8)"),
        ("F31", "(2,6)(4,8)"),
        ("T123", "(7,8)"),
        ("T132", "(6,8)"),
        ("T321", "(4,8)"),
    ];

    #[test]
    fn nft3_matches_cycle_list() {
        let lib = GateLibrary::nft(3).unwrap();
        assert_eq!(lib.len(), 12);
        for (gate, (name, cycles)) in lib.gates().iter().zip(GOLDEN) {
            assert_eq!(gate.name(), name);
            assert_eq!(gate.perm(3).unwrap().format_cycles(), cycles);
        }
        assert_eq!(lib.gates()[10].perm(3).unwrap().format_cycles(), "(6,8)");
    }

    /// Truth-table oracle written straight from the gate equations.
    fn simulate(gate: &Gate, bits: &mut [bool]) {
        if gate.controls().iter().all(|&c| bits[c as usize - 1]) {
            let t = gate.target() as usize - 1;
            bits[t] = !bits[t];
        }
    }

    #[test]
    fn gate_perm_agrees_with_truth_table_simulation() {
        for n in 2u8..=4 {
            for gate in nft_gates(n).unwrap() {
                let p = gate.perm(n).unwrap();
                for input in 0..1u32 << n {
                    let mut bits: Vec<bool> =
                        (1..=n).map(|w| input >> (n - w) & 1 == 1).collect();
                    simulate(&gate, &mut bits);
                    let output = bits.iter().fold(0u32, |acc, &b| acc << 1 | b as u32);
                    assert_eq!(p.apply(input + 1), output + 1, "{gate} on {input:0w$b}", w = n as usize);
                }
                assert!(p.then(&p).unwrap().is_identity(), "{gate} is an involution");
            }
        }
    }

    #[test]
    fn library_sizes() {
        let names = |n| {
            nft_gates(n)
                .unwrap()
                .iter()
                .map(Gate::name)
                .collect::<Vec<_>>()
        };
        assert_eq!(names(2), ["N1", "N2", "F12", "F21"]);
        assert_eq!(names(1), ["N1"]);
        // n NOTs + n(n-1) Feynman + n*C(n-1,2) Toffoli
        assert_eq!(nft_gates(4).unwrap().len(), 4 + 12 + 12);
        assert!(nft_gates(0).is_err());
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::feynman(2, 2).is_err());
        assert!(Gate::toffoli(1, 1, 3).is_err());
        assert!(Gate::not(0).is_err());
        assert!(Gate::not(4).unwrap().perm(3).is_err());
        assert!("X12".parse::<Gate>().is_err());
        assert!("F1".parse::<Gate>().is_err());
        assert!("T12".parse::<Gate>().is_err());
        assert_eq!("t321".parse::<Gate>().unwrap().name(), "T321");
        assert_eq!("T231".parse::<Gate>().unwrap(), "T321".parse().unwrap());
    }

    #[test]
    fn circuit_examples() {
        assert!(Circuit::empty(3).unwrap().perm().is_identity());
        assert!(Circuit::parse("N1 N1", 3).unwrap().perm().is_identity());
        let best_len = Circuit::parse("F12,T321,T123,N1,F13,F32,T123", 3).unwrap();
        assert_eq!(best_len.perm(), cyc("(1,7)(2,5)(3,6,8,4)"));
        assert_eq!(best_len.cost(&CostModel::default()).unwrap(), 18);
        let best_cost =
            Circuit::parse("N2 N3 T321 N2 F13 T321 N2 N3 F12 T321 N2 N3", 3).unwrap();
        assert_eq!(best_cost.len(), 12);
        assert_eq!(best_cost.cost(&CostModel::default()).unwrap(), 17);
        assert_eq!(best_cost.perm(), cyc("(1,7)(2,5)(3,6,8,4)"));
        assert_eq!(Circuit::empty(3).unwrap().cost(&CostModel::default()).unwrap(), 0);
    }

    #[test]
    fn cost_model_rejects_unpriced_gates() {
        let c = Circuit::parse("C1234", 4).unwrap();
        assert!(matches!(
            c.cost(&CostModel::default()),
            Err(Error::Unsupported(_))
        ));
        let mut m = CostModel::default();
        m.set_cost(3, 13);
        assert_eq!(c.cost(&m).unwrap(), 13);
    }

    #[test]
    fn library_text_forms() {
        let full = GateLibrary::parse("NFT", 3).unwrap();
        assert_eq!(full.mask(), Some(0xfff));
        assert_eq!(GateLibrary::parse("0xfff", 3).unwrap(), full);
        let lib = GateLibrary::parse("T123, N3,F32,F31", 3).unwrap();
        assert_eq!(lib.names(), ["N3", "F32", "F31", "T123"]);
        assert_eq!(lib.mask(), Some(0x384));
        assert_eq!(GateLibrary::from_mask(3, lib.mask().unwrap()).unwrap(), lib);
        assert!(GateLibrary::parse("N1,N1", 3).is_err());
        assert!(GateLibrary::parse("N1,Q7", 3).is_err());
        assert!(GateLibrary::parse("0x0", 3).is_err());
        assert!(GateLibrary::parse("0x1000", 3).is_err());
        assert!(GateLibrary::parse("", 3).is_err());
    }

    #[test]
    fn sublibrary_enumeration() {
        let full = GateLibrary::nft(3).unwrap();
        let subs: Vec<_> = full.sublibraries().unwrap().collect();
        assert_eq!(subs.len(), 4095);
        assert_eq!(subs[0].names(), ["N1"]);
        assert_eq!(subs[4094], full);
        for (i, s) in subs.iter().enumerate().take(64) {
            assert_eq!(s.mask(), Some(i as u64 + 1));
        }
        let single = GateLibrary::parse("F31", 3).unwrap();
        assert_eq!(single.sublibraries().unwrap().count(), 1);
        let pair = GateLibrary::parse("F31,N2", 3).unwrap();
        assert_eq!(pair.sublibraries().unwrap().count(), 3);
        let big = GateLibrary::nft(4).unwrap();
        assert!(big.sublibraries().is_err());
    }

    fn arb_circuit() -> impl Strategy<Value = Circuit> {
        prop::collection::vec(0usize..12, 0..12).prop_map(|idx| {
            let all = nft_gates(3).unwrap();
            Circuit::new(3, idx.into_iter().map(|i| all[i].clone()).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn cascade_and_cost_are_additive(a in arb_circuit(), b in arb_circuit()) {
            let ab = a.concat(&b).unwrap();
            prop_assert_eq!(ab.perm(), a.perm().then(&b.perm()).unwrap());
            let m = CostModel::default();
            prop_assert_eq!(ab.cost(&m).unwrap(), a.cost(&m).unwrap() + b.cost(&m).unwrap());
            prop_assert_eq!(Circuit::parse(&ab.to_string(), 3).unwrap(), ab);
        }
    }
}
