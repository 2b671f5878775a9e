//! Cardinality-targeted synthesis of quantum Latin squares of order `4m`.
//!
//! Every synthesized square sits on the cyclic scaffold `a(i,k) = (k - i) mod m`:
//! block `(i, k)` holds `|a(i,k)> (x) G` for an order-4 square `G`. The `m`
//! blocks sharing a value of `a` form a *diagonal*; slot `i` of diagonal `d`
//! is block `(i, (i + d) mod m)`. Diagonals live in orthogonal subspaces, so
//! the cardinality is the sum over diagonals of the number of distinct
//! elements among that diagonal's slots.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::generators::{generated, GeneratorId};
use crate::square::{cardinality, count_new_elements, ElementSet, QlsGrid};
use crate::vectors::{tensor, QVector};

/// Allowed values for slot 1 of a low-regime diagonal.
pub const LOW_SLOT1_VALUES: [usize; 9] = [0, 2, 3, 4, 5, 6, 7, 8, 16];
/// Allowed values for slot 1 of a high-regime diagonal.
pub const HIGH_SLOT1_VALUES: [usize; 9] = [0, 2, 4, 6, 8, 12, 14, 15, 16];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "QLS8-low")]
    Qls8Low,
    #[serde(rename = "QLS8-high")]
    Qls8High,
    #[serde(rename = "QLS8-c57")]
    Qls8C57,
    #[serde(rename = "low")]
    Low,
    #[serde(rename = "high")]
    High,
    #[serde(rename = "QLS12-c105")]
    Qls12C105,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Regime::Qls8Low => "QLS8-low",
            Regime::Qls8High => "QLS8-high",
            Regime::Qls8C57 => "QLS8-c57",
            Regime::Low => "low",
            Regime::High => "high",
            Regime::Qls12C105 => "QLS12-c105",
        };
        f.write_str(name)
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GeneratorId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The order-4 squares placed along one diagonal, slot by slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalPlan {
    pub diagonal: usize,
    pub slots: Vec<GeneratorId>,
    /// Regime witness `(x_0, x_1, x_2, ...)`; empty for fixed layouts.
    pub x: Vec<usize>,
    /// Distinct elements this diagonal contributes.
    pub contribution: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthPlan {
    pub m: usize,
    pub target_c: usize,
    pub regime: Regime,
    pub diagonals: Vec<DiagonalPlan>,
    pub witness_sum: usize,
}

fn low_formula(x: &[usize]) -> usize {
    4 + 4 * x[0] + x[1] + 16 * x[2..].iter().sum::<usize>()
}

fn high_formula(m: usize, x: &[usize]) -> usize {
    16 * (m - 1) + x[1]
}

impl SynthPlan {
    pub fn order(&self) -> usize {
        4 * self.m
    }

    /// Checks shape, witness domains and the arithmetic `sum = target`
    /// without building any grid.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Internal(format!("plan for m={} c={}: {msg}", self.m, self.target_c)));
        if self.diagonals.len() != self.m {
            return bad(format!("{} diagonals", self.diagonals.len()));
        }
        for (j, d) in self.diagonals.iter().enumerate() {
            if d.diagonal != j || d.slots.len() != self.m {
                return bad(format!("diagonal {j} is malformed"));
            }
            let expected = match self.regime {
                Regime::Low | Regime::Qls8Low if d.x.len() == self.m => {
                    if d.x[0] > 1 || !LOW_SLOT1_VALUES.contains(&d.x[1]) || d.x[2..].iter().any(|&v| v > 1) {
                        return bad(format!("diagonal {j} witness {:?} out of domain", d.x));
                    }
                    Some(low_formula(&d.x))
                }
                Regime::High | Regime::Qls8High if d.x.len() == self.m => {
                    if d.x[0] != 0 || !HIGH_SLOT1_VALUES.contains(&d.x[1]) || d.x[2..].iter().any(|&v| v != 1) {
                        return bad(format!("diagonal {j} witness {:?} out of domain", d.x));
                    }
                    Some(high_formula(self.m, &d.x))
                }
                Regime::Low | Regime::High | Regime::Qls8High => {
                    return bad(format!("diagonal {j} is missing its witness"));
                }
                _ => None,
            };
            if let Some(expected) = expected {
                if expected != d.contribution {
                    return bad(format!("diagonal {j} contributes {} but its witness gives {expected}", d.contribution));
                }
            }
        }
        let sum: usize = self.diagonals.iter().map(|d| d.contribution).sum();
        if sum != self.witness_sum || sum != self.target_c {
            return bad(format!("witness sum {sum} does not reach the target"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plan serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

/// Slot-1 generators keyed by the number of new elements they add.
#[derive(Clone, Debug)]
pub struct Bindings {
    /// Measured against the elements of `H(0)` and `H(1)`.
    pub low_slot1: BTreeMap<usize, GeneratorId>,
    /// Measured against the elements of `W0`.
    pub high_slot1: BTreeMap<usize, GeneratorId>,
}

fn union_of(ids: &[GeneratorId]) -> Result<ElementSet> {
    let mut set = ElementSet::new();
    for id in ids {
        set.extend(generated(id)?.elements.iter().cloned());
    }
    Ok(set)
}

fn measure(candidates: &[GeneratorId], baseline: &ElementSet, wanted: &[usize]) -> Result<BTreeMap<usize, GeneratorId>> {
    let mut map = BTreeMap::new();
    for id in candidates {
        let new = count_new_elements(&generated(id)?.grid, baseline)?;
        map.entry(new).or_insert_with(|| id.clone());
    }
    map.retain(|k, _| wanted.contains(k));
    let missing: Vec<_> = wanted.iter().filter(|v| **v != 0 && !map.contains_key(v)).collect();
    if !missing.is_empty() {
        return Err(Error::Internal(format!("no generator adds {missing:?} new elements")));
    }
    Ok(map)
}

fn compute_bindings() -> Result<Bindings> {
    let low_candidates: Vec<GeneratorId> = (2..=8)
        .map(GeneratorId::H)
        .chain([GeneratorId::w_pair(5, 6)])
        .collect();
    let low_base = union_of(&[GeneratorId::H(0), GeneratorId::H(1)])?;
    let low_slot1 = measure(&low_candidates, &low_base, &LOW_SLOT1_VALUES)?;

    let high_candidates: Vec<GeneratorId> = [2, 4, 6, 8]
        .map(GeneratorId::Hprime)
        .into_iter()
        .chain((1..=4).map(GeneratorId::Wk))
        .chain([GeneratorId::w_pair(5, 6)])
        .collect();
    let high_base = union_of(&[GeneratorId::W0])?;
    let high_slot1 = measure(&high_candidates, &high_base, &HIGH_SLOT1_VALUES)?;
    Ok(Bindings { low_slot1, high_slot1 })
}

/// The measured slot-1 bindings, computed once per process.
pub fn bindings() -> Result<&'static Bindings> {
    static BINDINGS: OnceLock<Result<Bindings>> = OnceLock::new();
    BINDINGS.get_or_init(compute_bindings).as_ref().map_err(Clone::clone)
}

/// `W(2i+3, 2i+4)`, the square reserved for slot `i >= 1`.
pub fn slot_family(i: usize) -> GeneratorId {
    GeneratorId::w_pair(2 * i as i64 + 3, 2 * i as i64 + 4)
}

/// All sums of `count` values, each drawn from `values`.
pub fn reachable_sums(values: &[usize], count: usize) -> BTreeSet<usize> {
    let table = reach_table(values, count);
    table[count].iter().enumerate().filter(|(_, r)| **r).map(|(s, _)| s).collect()
}

/// `table[k][s]`: whether `s` is a sum of `k` values.
fn reach_table(values: &[usize], count: usize) -> Vec<Vec<bool>> {
    let max = values.iter().copied().max().unwrap_or(0);
    let mut table = vec![vec![true]];
    for k in 1..=count {
        let prev = &table[k - 1];
        let mut next = vec![false; k * max + 1];
        for (s, _) in prev.iter().enumerate().filter(|(_, r)| **r) {
            for &v in values {
                next[s + v] = true;
            }
        }
        table.push(next);
    }
    table
}

/// Chooses one option per diagonal so the values sum to `target`, taking
/// the earliest feasible option on each diagonal in turn.
fn decompose(values: &[usize], count: usize, target: usize) -> Option<Vec<usize>> {
    let table = reach_table(values, count);
    if !table[count].get(target).copied().unwrap_or(false) {
        return None;
    }
    let mut remaining = target;
    let mut picks = Vec::with_capacity(count);
    for j in 0..count {
        let rest = count - j - 1;
        let index = values.iter().position(|&v| {
            v <= remaining && table[rest].get(remaining - v).copied().unwrap_or(false)
        })?;
        remaining -= values[index];
        picks.push(index);
    }
    Some(picks)
}

/// Low-regime witnesses `(x_0, x_1, s)` in tie-break order, where `s` ones
/// fill the last `s` positions of slots `2..m`.
fn low_options(m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for x0 in 0..=1 {
        for &x1 in &LOW_SLOT1_VALUES {
            for s in 0..=m - 2 {
                out.push((x0, x1, s));
            }
        }
    }
    out
}

fn low_diagonal(m: usize, j: usize, (x0, x1, s): (usize, usize, usize), b: &Bindings) -> DiagonalPlan {
    let first = GeneratorId::H(x0 as u8);
    let mut x = vec![x0, x1];
    x.extend((2..m).map(|i| usize::from(i >= m - s)));
    let mut slots = vec![first.clone()];
    slots.push(if x1 == 0 { first.clone() } else { b.low_slot1[&x1].clone() });
    for (i, &xi) in x.iter().enumerate().skip(2) {
        slots.push(if xi == 1 { slot_family(i) } else { first.clone() });
    }
    let contribution = low_formula(&x);
    DiagonalPlan { diagonal: j, slots, x, contribution }
}

fn high_diagonal(m: usize, j: usize, x1: usize, b: &Bindings) -> DiagonalPlan {
    let mut x = vec![0, x1];
    x.extend(std::iter::repeat(1).take(m - 2));
    let mut slots = vec![GeneratorId::W0];
    slots.push(if x1 == 0 { GeneratorId::W0 } else { b.high_slot1[&x1].clone() });
    slots.extend((2..m).map(slot_family));
    let contribution = high_formula(m, &x);
    DiagonalPlan { diagonal: j, slots, x, contribution }
}

fn finish(m: usize, target_c: usize, regime: Regime, diagonals: Vec<DiagonalPlan>) -> Result<SynthPlan> {
    let witness_sum = diagonals.iter().map(|d| d.contribution).sum();
    let plan = SynthPlan { m, target_c, regime, diagonals, witness_sum };
    plan.validate()?;
    Ok(plan)
}

fn check_target(m: usize, c: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::MTooSmall { m, min: 2 });
    }
    let n = 4 * m;
    if c == n + 1 {
        return Err(Error::ImpossibleCardinality { order: n, c });
    }
    if c < n || c > n * n {
        return Err(Error::CardinalityOutOfRange { order: n, c, min: n, max: n * n });
    }
    Ok(())
}

/// The order-8 low table: `(base, P, Q, R)` with layout
/// `(|0>P, |1>Q; |1>R, |0>H(l))` and cardinality `base + l`.
pub fn qls8_low_table() -> Vec<(usize, GeneratorId, GeneratorId, GeneratorId)> {
    let h = GeneratorId::H;
    let w56 = GeneratorId::w_pair(5, 6);
    let w78 = GeneratorId::w_pair(7, 8);
    vec![
        (8, h(0), h(0), h(0)),
        (12, h(0), h(8), h(8)),
        (16, h(0), h(0), h(8)),
        (20, h(0), w56.clone(), w56.clone()),
        (24, h(0), h(0), w56.clone()),
        (28, h(0), h(8), w56.clone()),
        (32, h(1), h(8), w56.clone()),
        (36, h(0), w56.clone(), w78.clone()),
        (40, h(1), w56, w78),
    ]
}

/// Values of `l` usable with the order-8 low table.
pub const QLS8_LOW_L: [usize; 8] = [0, 2, 3, 4, 5, 6, 7, 8];

/// Plan for order 8 from one row of the low table.
pub fn qls8_low_plan(row: usize, l: usize) -> Result<SynthPlan> {
    let table = qls8_low_table();
    let (base, p, q, r) = table
        .get(row)
        .cloned()
        .ok_or_else(|| Error::Parameter(format!("low table row {row} not in 0..9")))?;
    if !QLS8_LOW_L.contains(&l) {
        return Err(Error::Parameter(format!("l = {l} not in {QLS8_LOW_L:?}")));
    }
    let x0 = usize::from(p == GeneratorId::H(1));
    let s = if l == 0 { p.clone() } else { bindings()?.low_slot1[&l].clone() };
    let diag0 = DiagonalPlan {
        diagonal: 0,
        slots: vec![p, s],
        x: vec![x0, l],
        contribution: 4 + 4 * x0 + l,
    };
    let diag1 = DiagonalPlan {
        diagonal: 1,
        slots: vec![q, r],
        x: vec![],
        contribution: base - 4 - 4 * x0,
    };
    finish(2, base + l, Regime::Qls8Low, vec![diag0, diag1])
}

fn fixed_diagonal(j: usize, slots: Vec<GeneratorId>, contribution: usize) -> DiagonalPlan {
    DiagonalPlan { diagonal: j, slots, x: vec![], contribution }
}

/// `(W0, W2; W4, W1)` with cardinality 57.
pub fn qls8_c57_plan() -> Result<SynthPlan> {
    let wk = GeneratorId::Wk;
    finish(
        2,
        57,
        Regime::Qls8C57,
        vec![
            fixed_diagonal(0, vec![GeneratorId::W0, wk(1)], 31),
            fixed_diagonal(1, vec![wk(2), wk(4)], 26),
        ],
    )
}

/// The fixed order-12 square with cardinality 105, as rows of blocks
/// `(W0, W0, H0 | H6, W1, W0 | W56, W56, W56)`.
pub fn qls12_c105_plan() -> Result<SynthPlan> {
    let w0 = GeneratorId::W0;
    let w56 = GeneratorId::w_pair(5, 6);
    let rows = [
        [w0.clone(), w0.clone(), GeneratorId::H(0)],
        [GeneratorId::H(6), GeneratorId::Wk(1), w0.clone()],
        [w56.clone(), w56.clone(), w56],
    ];
    let contributions = [47, 32, 26];
    let diagonals = (0..3)
        .map(|d| fixed_diagonal(d, (0..3).map(|i| rows[i][(i + d) % 3].clone()).collect(), contributions[d]))
        .collect();
    finish(3, 105, Regime::Qls12C105, diagonals)
}

/// Plans an order-8 square of cardinality `c`.
pub fn plan_qls8(c: usize) -> Result<SynthPlan> {
    check_target(2, c)?;
    if c == 57 {
        return qls8_c57_plan();
    }
    if c <= 48 {
        // rows are tried in order, and the smallest l wins within a row
        for (row, (base, ..)) in qls8_low_table().iter().enumerate() {
            if c >= *base && QLS8_LOW_L.contains(&(c - base)) {
                return qls8_low_plan(row, c - base);
            }
        }
        return Err(Error::Internal(format!("order-8 low table misses {c}")));
    }
    plan_high(2, c)?.ok_or_else(|| Error::Internal(format!("order-8 high layout misses {c}")))
}

fn low_values(m: usize) -> (Vec<(usize, usize, usize)>, Vec<usize>) {
    let options = low_options(m);
    let values = options.iter().map(|&(x0, x1, s)| 4 + 4 * x0 + x1 + 16 * s).collect();
    (options, values)
}

fn high_values(m: usize) -> Vec<usize> {
    HIGH_SLOT1_VALUES.iter().map(|v| 16 * (m - 1) + v).collect()
}

fn plan_low(m: usize, c: usize) -> Result<Option<SynthPlan>> {
    let (options, values) = low_values(m);
    let Some(picks) = decompose(&values, m, c) else {
        return Ok(None);
    };
    let b = bindings()?;
    let diagonals = picks.iter().enumerate().map(|(j, &p)| low_diagonal(m, j, options[p], b)).collect();
    finish(m, c, Regime::Low, diagonals).map(Some)
}

/// A high-regime plan with the given slot-1 value on each diagonal.
pub fn high_diagonal_plan(m: usize, slot1: &[usize]) -> Result<SynthPlan> {
    if m < 2 || slot1.len() != m {
        return Err(Error::Parameter(format!("need {m} slot-1 values, got {}", slot1.len())));
    }
    if let Some(v) = slot1.iter().find(|v| !HIGH_SLOT1_VALUES.contains(v)) {
        return Err(Error::Parameter(format!("slot-1 value {v} not in {HIGH_SLOT1_VALUES:?}")));
    }
    let b = bindings()?;
    let diagonals: Vec<DiagonalPlan> = slot1.iter().enumerate().map(|(j, &x1)| high_diagonal(m, j, x1, b)).collect();
    let c = diagonals.iter().map(|d| d.contribution).sum();
    let regime = if m == 2 { Regime::Qls8High } else { Regime::High };
    finish(m, c, regime, diagonals)
}

fn plan_high(m: usize, c: usize) -> Result<Option<SynthPlan>> {
    let Some(picks) = decompose(&high_values(m), m, c) else {
        return Ok(None);
    };
    let slot1: Vec<usize> = picks.iter().map(|&p| HIGH_SLOT1_VALUES[p]).collect();
    high_diagonal_plan(m, &slot1).map(Some)
}

/// Plans an order-`4m` square of cardinality `c` for `m >= 3`.
pub fn plan_qls4m(m: usize, c: usize) -> Result<SynthPlan> {
    if m < 3 {
        return Err(Error::MTooSmall { m, min: 3 });
    }
    check_target(m, c)?;
    if (m, c) == (3, 105) {
        return qls12_c105_plan();
    }
    if c + 8 * m + 8 <= 16 * m * m {
        if let Some(plan) = plan_low(m, c)? {
            return Ok(plan);
        }
    }
    if let Some(plan) = plan_high(m, c)? {
        return Ok(plan);
    }
    if let Some(plan) = plan_low(m, c)? {
        return Ok(plan);
    }
    Err(Error::Internal(format!("no plan reaches c={c} for m={m}")))
}

/// Plans any valid target; `m = 2` goes to the order-8 constructions.
pub fn plan(m: usize, c: usize) -> Result<SynthPlan> {
    if m == 2 {
        plan_qls8(c)
    } else {
        check_target(m, c)?;
        plan_qls4m(m, c)
    }
}

/// Builds the planned grid, verifies it, and checks that its counted
/// cardinality equals the target.
pub fn execute_plan(plan: &SynthPlan) -> Result<QlsGrid> {
    plan.validate()?;
    let m = plan.m;
    let n = 4 * m;
    let prefixes: Vec<QVector> = (0..m).map(|a| QVector::basis(m, a)).collect();
    let mut blocks = vec![vec![None; m]; m];
    for d in &plan.diagonals {
        for (i, id) in d.slots.iter().enumerate() {
            blocks[i][(i + d.diagonal) % m] = Some((d.diagonal, generated(id)?));
        }
    }
    let mut cells = vec![Vec::with_capacity(n); n];
    for (bi, block_row) in blocks.iter().enumerate() {
        for block in block_row {
            let (a, g) = block.as_ref().expect("every block is assigned");
            for r in 0..4 {
                cells[4 * bi + r].extend((0..4).map(|c| tensor(&prefixes[*a], g.grid.cell(r, c))));
            }
        }
    }
    let provenance = format!("synth(m={m},c={},regime={})", plan.target_c, plan.regime);
    let grid = QlsGrid::new(provenance, cells)?;
    if !grid.is_qls() {
        return Err(Error::Internal(format!("planned grid fails verification: {}", grid.verify())));
    }
    let counted = cardinality(&grid)?.cardinality;
    if counted != plan.target_c {
        return Err(Error::Internal(format!(
            "planned grid has cardinality {counted}, expected {}",
            plan.target_c
        )));
    }
    Ok(grid)
}

/// Plans and builds a verified square of order `4m` and cardinality `c`.
pub fn synth(m: usize, c: usize) -> Result<(SynthPlan, QlsGrid)> {
    let p = plan(m, c)?;
    let grid = execute_plan(&p)?;
    Ok((p, grid))
}

pub fn synth_qls8(c: usize) -> Result<QlsGrid> {
    execute_plan(&plan_qls8(c)?)
}

/// The valid cardinalities for order `4m`, derived from the constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityRange {
    pub m: usize,
    pub min: usize,
    pub max: usize,
    /// Values in `[min, max]` that no construction reaches.
    pub excluded: BTreeSet<usize>,
    pub low_reachable: BTreeSet<usize>,
    pub high_reachable: BTreeSet<usize>,
    pub special: BTreeSet<usize>,
}

impl CardinalityRange {
    pub fn contains(&self, c: usize) -> bool {
        (self.min..=self.max).contains(&c) && !self.excluded.contains(&c)
    }

    /// E.g. `[8,64] excluding 9`.
    pub fn describe(&self) -> String {
        let mut text = format!("[{},{}]", self.min, self.max);
        if !self.excluded.is_empty() {
            let list: Vec<String> = self.excluded.iter().map(|c| c.to_string()).collect();
            text.push_str(" excluding ");
            text.push_str(&list.join(", "));
        }
        text
    }
}

impl fmt::Display for CardinalityRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

pub fn valid_cardinalities(m: usize) -> Result<CardinalityRange> {
    if m < 2 {
        return Err(Error::MTooSmall { m, min: 2 });
    }
    let (low, high, special): (BTreeSet<usize>, BTreeSet<usize>, BTreeSet<usize>) = if m == 2 {
        let low = qls8_low_table()
            .iter()
            .flat_map(|(base, ..)| QLS8_LOW_L.iter().map(move |l| base + l))
            .collect();
        let high = reachable_sums(&HIGH_SLOT1_VALUES, 2).into_iter().map(|s| 32 + s).collect();
        (low, high, BTreeSet::from([57]))
    } else {
        let low = reachable_sums(&low_values(m).1, m);
        let high = reachable_sums(&high_values(m), m);
        let special = if m == 3 { BTreeSet::from([105]) } else { BTreeSet::new() };
        (low, high, special)
    };
    let (min, max) = (4 * m, 16 * m * m);
    let excluded = (min..=max)
        .filter(|c| !low.contains(c) && !high.contains(c) && !special.contains(c))
        .collect();
    Ok(CardinalityRange {
        m,
        min,
        max,
        excluded,
        low_reachable: low,
        high_reachable: high,
        special,
    })
}

/// Sums of slot-1 witnesses over `m` diagonals, per regime.
pub fn slot1_sum_sets(m: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
    (
        reachable_sums(&LOW_SLOT1_VALUES, m),
        reachable_sums(&HIGH_SLOT1_VALUES, m),
    )
}

/// Checks that `W(2i+3, 2i+4)` for `1 <= i < m` are pairwise disjoint and
/// disjoint from every other square the constructions combine them with.
pub fn check_family_disjointness(m: usize) -> Result<()> {
    let family: Vec<GeneratorId> = (1..m.max(2)).map(slot_family).collect();
    let mut others: Vec<GeneratorId> = (0..=8).map(GeneratorId::H).collect();
    others.extend([2, 4, 6, 8].map(GeneratorId::Hprime));
    others.push(GeneratorId::W0);
    others.extend((1..=4).map(GeneratorId::Wk));
    let others_set = union_of(&others)?;
    let mut seen = ElementSet::new();
    for id in &family {
        let g = generated(id)?;
        if g.elements.len() != 16 {
            return Err(Error::Internal(format!("{id} has {} elements, expected 16", g.elements.len())));
        }
        if let Some(shared) = g.elements.iter().find(|e| seen.contains(*e) || others_set.contains(*e)) {
            return Err(Error::Internal(format!("{id} shares the element {shared}")));
        }
        seen.extend(g.elements.iter().cloned());
    }
    Ok(())
}
