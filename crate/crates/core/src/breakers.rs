//! Breaking functions for families of finite sets.
//!
//! A function `f` on the universe *breaks* a family onto a value set `V`
//! when `f[A] ⊇ V` for every member `A`. Two constructions live here:
//!
//! * the diagonal selection: members are indexed `A_0..A_{n-1}` and, in
//!   rounds `r = 0, 1, ...`, globally distinct points `x(a, b)` with
//!   `max(a, b) = r` are picked, `x(a, b) ∈ A_a` receiving value `b`
//!   (reduced modulo the number of target values);
//! * the splitting recursion: successive splitters `S_n ⊆ M_n` peel off
//!   disjoint sets `R_n = M_n \ S_n`, each meeting every member.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::substream;

/// Indexed list of subsets of `0..universe`. Members are stored sorted and
/// deduplicated; repeated and empty members are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyFile", into = "FamilyFile")]
pub struct SubsetFamily {
    universe: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    universe: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<FamilyFile> for SubsetFamily {
    type Error = Error;
    fn try_from(f: FamilyFile) -> Result<Self> {
        SubsetFamily::new(f.universe, f.sets)
    }
}

impl From<SubsetFamily> for FamilyFile {
    fn from(f: SubsetFamily) -> Self {
        FamilyFile {
            universe: f.universe,
            sets: f.sets,
        }
    }
}

impl SubsetFamily {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&x) = s.last() {
                if x >= universe {
                    return Err(Error::IndexOutOfRange {
                        index: x,
                        size: universe,
                    });
                }
            }
        }
        Ok(SubsetFamily { universe, sets })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The first `count` members.
    pub fn prefix(&self, count: usize) -> SubsetFamily {
        SubsetFamily {
            universe: self.universe,
            sets: self.sets[..count.min(self.sets.len())].to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        crate::report::to_canonical_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A total map `0..domain_size -> 0..range_target`. Serializes as the plain
/// array of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BreakingFunction {
    values: Vec<usize>,
    range_target: usize,
}

impl Serialize for BreakingFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

impl BreakingFunction {
    pub fn new(values: Vec<usize>, range_target: usize) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v >= range_target.max(1)) {
            return Err(Error::ClassOutOfRange {
                class: v,
                count: range_target,
            });
        }
        Ok(BreakingFunction {
            values,
            range_target,
        })
    }

    pub fn constant_zero(domain_size: usize, range_target: usize) -> Self {
        BreakingFunction {
            values: vec![0; domain_size],
            range_target,
        }
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn range_target(&self) -> usize {
        self.range_target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn image(&self, set: &[usize]) -> BTreeSet<usize> {
        set.iter().map(|&x| self.values[x]).collect()
    }

    /// Least value in `0..upto` missing from `f[set]`.
    pub fn first_missing(&self, set: &[usize], upto: usize) -> Option<usize> {
        let img = self.image(set);
        (0..upto).find(|v| !img.contains(v))
    }

    /// `f[set] ⊇ {0..upto-1}`.
    pub fn covers(&self, set: &[usize], upto: usize) -> bool {
        self.first_missing(set, upto).is_none()
    }
}

/// How the diagonal selection treats a pair whose member already holds a
/// point of the requested value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionRule {
    /// Every pair receives its own fresh point.
    #[default]
    Fresh,
    /// A pair is skipped when its member already contains a selected point
    /// carrying the pair's value. Uses at most as many points as `Fresh`.
    ReuseCovered,
}

/// One selected point `x(member, round) = point` with its assigned value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub member: usize,
    pub round: usize,
    pub point: usize,
    pub value: usize,
}

/// Runs the diagonal selection over pairs `(a, b)` with `a < n` and
/// `b < rounds`, visiting them by `max(a, b)` and, within a layer `r`, as
/// `(0, r), (r, 0), (1, r), (r, 1), ..., (r, r)`.
fn diagonal_select(
    family: &SubsetFamily,
    rounds: usize,
    value_of: impl Fn(usize) -> usize,
    range_target: usize,
    rule: SelectionRule,
) -> Result<(BreakingFunction, Vec<Selection>)> {
    let n = family.len();
    let u = family.universe();
    let mut used = vec![false; u];
    let mut values = vec![0usize; u];
    let mut cursor = vec![0usize; n];
    let mut selections = Vec::new();

    // covered[a][v]: member a already contains a selected point of value v
    let width = (0..rounds).map(&value_of).max().map_or(0, |v| v + 1);
    let mut covered = vec![vec![false; width]; n];
    let mut members_of = vec![Vec::new(); u];
    if rule == SelectionRule::ReuseCovered {
        for (a, s) in family.sets().iter().enumerate() {
            for &x in s {
                members_of[x].push(a);
            }
        }
    }

    let layers = n.max(rounds);
    for r in 0..layers {
        for a in 0..=r {
            let mut pairs = [(a, r), (r, a)];
            let count = if a == r { 1 } else { 2 };
            for &mut (member, round) in pairs[..count].iter_mut() {
                if member >= n || round >= rounds {
                    continue;
                }
                let value = value_of(round);
                if rule == SelectionRule::ReuseCovered && covered[member][value] {
                    continue;
                }
                let set = &family.sets()[member];
                let c = &mut cursor[member];
                while *c < set.len() && used[set[*c]] {
                    *c += 1;
                }
                let Some(&point) = set.get(*c) else {
                    return Err(Error::SelectionExhausted {
                        member,
                        round,
                        column: None,
                    });
                };
                used[point] = true;
                values[point] = value;
                if rule == SelectionRule::ReuseCovered {
                    for &m in &members_of[point] {
                        covered[m][value] = true;
                    }
                }
                selections.push(Selection {
                    member,
                    round,
                    point,
                    value,
                });
            }
        }
    }
    Ok((
        BreakingFunction {
            values,
            range_target,
        },
        selections,
    ))
}

/// Breaks `family` onto `0..range` by the diagonal selection with fresh
/// points, returning the selection trace as well.
///
/// With `n` members the selection runs `max(n, range)` rounds and round `b`
/// writes value `b mod range`. It picks at most `n * max(n, range)` points,
/// so members of at least that size never exhaust. Unselected points map to
/// 0. An empty family is broken by the constant function.
pub fn kuratowski_break_traced(
    family: &SubsetFamily,
    range: usize,
    rule: SelectionRule,
) -> Result<(BreakingFunction, Vec<Selection>)> {
    if range == 0 {
        return Err(Error::InvalidParameter("breaking range must be positive".into()));
    }
    let rounds = family.len().max(range);
    diagonal_select(family, rounds, |b| b % range, range, rule)
}

pub fn kuratowski_break(family: &SubsetFamily, range: usize) -> Result<BreakingFunction> {
    kuratowski_break_traced(family, range, SelectionRule::Fresh).map(|(f, _)| f)
}

pub fn kuratowski_break_with(
    family: &SubsetFamily,
    range: usize,
    rule: SelectionRule,
) -> Result<BreakingFunction> {
    kuratowski_break_traced(family, range, rule).map(|(f, _)| f)
}

/// A function into `0..range` whose image on every member contains
/// `0..depth`. Same selection as [`kuratowski_break`], writing the values
/// `0..depth` cyclically; depth 0 gives the constant function.
pub fn prefix_break_with(
    family: &SubsetFamily,
    depth: usize,
    range: usize,
    rule: SelectionRule,
) -> Result<BreakingFunction> {
    if depth > range {
        return Err(Error::InvalidParameter(format!(
            "depth {depth} exceeds the range {range}"
        )));
    }
    if depth == 0 {
        return Ok(BreakingFunction::constant_zero(family.universe(), range));
    }
    let rounds = family.len().max(depth);
    diagonal_select(family, rounds, |b| b % depth, range, rule).map(|(f, _)| f)
}

pub fn prefix_break(family: &SubsetFamily, depth: usize, range: usize) -> Result<BreakingFunction> {
    prefix_break_with(family, depth, range, SelectionRule::Fresh)
}

/// Result of [`search_break`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BreakSearch {
    Found(BreakingFunction),
    Infeasible,
    OutOfNodes,
}

/// Complete backtracking search for `f` into `0..range` with
/// `f[A] ⊇ {0..depth-1}` for every member.
///
/// Only values below `depth` are tried (a larger value can always be
/// replaced by 0) and a point may open at most one new value, which removes
/// value-permutation symmetry. A member with fewer undecided points than
/// missing values prunes the branch.
pub fn search_break(family: &SubsetFamily, depth: usize, range: usize, node_limit: u64) -> BreakSearch {
    let u = family.universe();
    if depth == 0 || depth > range {
        return if depth == 0 {
            BreakSearch::Found(BreakingFunction::constant_zero(u, range))
        } else {
            BreakSearch::Infeasible
        };
    }
    let n = family.len();
    let mut owners = vec![Vec::new(); u];
    for (a, s) in family.sets().iter().enumerate() {
        for &x in s {
            owners[x].push(a);
        }
    }
    let points: Vec<usize> = (0..u).filter(|&x| !owners[x].is_empty()).collect();
    let mut count = vec![vec![0u32; depth]; n];
    let mut missing = vec![depth; n];
    let mut undecided: Vec<usize> = family.sets().iter().map(Vec::len).collect();
    if undecided.iter().any(|&k| k < depth) {
        return BreakSearch::Infeasible;
    }
    let mut values = vec![0usize; u];
    let mut assigned: Vec<usize> = Vec::with_capacity(points.len());
    let mut opened: Vec<usize> = vec![0];
    let mut next_value = 0usize;
    let mut nodes = 0u64;

    loop {
        let i = assigned.len();
        if i == points.len() {
            if missing.iter().all(|&k| k == 0) {
                for (&x, &v) in points.iter().zip(&assigned) {
                    values[x] = v;
                }
                return BreakSearch::Found(BreakingFunction { values, range_target: range });
            }
        } else {
            let limit = (*opened.last().unwrap()).min(depth - 1);
            if next_value <= limit {
                nodes += 1;
                if nodes > node_limit {
                    return BreakSearch::OutOfNodes;
                }
                let v = next_value;
                let x = points[i];
                let mut ok = true;
                for &a in &owners[x] {
                    undecided[a] -= 1;
                    count[a][v] += 1;
                    if count[a][v] == 1 {
                        missing[a] -= 1;
                    }
                    if undecided[a] < missing[a] {
                        ok = false;
                    }
                }
                if ok {
                    assigned.push(v);
                    let top = *opened.last().unwrap();
                    opened.push(if v == top { top + 1 } else { top });
                    next_value = 0;
                    continue;
                }
                for &a in &owners[x] {
                    undecided[a] += 1;
                    count[a][v] -= 1;
                    if count[a][v] == 0 {
                        missing[a] += 1;
                    }
                }
                next_value = v + 1;
                continue;
            }
        }
        // backtrack
        let Some(v) = assigned.pop() else {
            return BreakSearch::Infeasible;
        };
        opened.pop();
        let x = points[assigned.len()];
        for &a in &owners[x] {
            undecided[a] += 1;
            count[a][v] -= 1;
            if count[a][v] == 0 {
                missing[a] += 1;
            }
        }
        next_value = v + 1;
    }
}

/// Diagonal selection with [`SelectionRule::ReuseCovered`], falling back to
/// [`search_break`] when the greedy selection exhausts. The original
/// exhaustion error is returned when the search proves infeasibility or runs
/// out of nodes.
pub fn break_with_fallback(
    family: &SubsetFamily,
    depth: usize,
    range: usize,
    node_limit: u64,
) -> Result<BreakingFunction> {
    match prefix_break_with(family, depth, range, SelectionRule::ReuseCovered) {
        Ok(f) => Ok(f),
        Err(e @ Error::SelectionExhausted { .. }) => match search_break(family, depth, range, node_limit) {
            BreakSearch::Found(f) => Ok(f),
            BreakSearch::Infeasible | BreakSearch::OutOfNodes => Err(e),
        },
        Err(e) => Err(e),
    }
}

/// Search limits for [`split_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBudget {
    /// Minimum size of both sides of every split trace.
    pub threshold: usize,
    /// Traces over at most this many relevant points are searched completely.
    pub exhaustive_limit: usize,
    /// Node limit of the backtracking search above the exhaustive limit.
    pub node_limit: u64,
    /// Random splitters tried once the node limit is hit.
    pub random_tries: u32,
    pub seed: u64,
}

impl Default for SplitBudget {
    fn default() -> Self {
        SplitBudget {
            threshold: 1,
            exhaustive_limit: 24,
            node_limit: 200_000,
            random_tries: 2_000,
            seed: 0,
        }
    }
}

/// One round `M_n ⊇ S_n`, `R_n = M_n \ S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRound {
    #[serde(rename = "M")]
    pub pool: Vec<usize>,
    #[serde(rename = "S")]
    pub kept: Vec<usize>,
    #[serde(rename = "R")]
    pub removed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitTrace {
    pub rounds: Vec<SplitRound>,
    pub residual: Vec<usize>,
}

impl SplitTrace {
    /// The disjoint sets `R_0, R_1, ...`.
    pub fn removed_sets(&self) -> impl Iterator<Item = &[usize]> {
        self.rounds.iter().map(|r| r.removed.as_slice())
    }
}

/// Per-round splitter requirements: every trace keeps at least `keep`
/// points in `S` and loses at least `lose` points to `R`.
struct SplitterQuery<'a> {
    // relevant points, ascending
    points: &'a [usize],
    // traces as positions into `points`
    traces: Vec<Vec<usize>>,
    // for each point position, the traces containing it
    owners: Vec<Vec<usize>>,
    keep: usize,
    lose: usize,
}

enum Search {
    Found(Vec<bool>),
    Infeasible,
    OutOfNodes,
}

impl SplitterQuery<'_> {
    fn check(&self, in_s: &[bool]) -> bool {
        self.traces.iter().all(|t| {
            let s = t.iter().filter(|&&p| in_s[p]).count();
            s >= self.keep && t.len() - s >= self.lose
        })
    }

    /// Backtracking over points in ascending order, trying `S` before `R`.
    fn backtrack(&self, node_limit: Option<u64>) -> Search {
        let n = self.points.len();
        let mut in_s_count = vec![0usize; self.traces.len()];
        let mut in_r_count = vec![0usize; self.traces.len()];
        let mut undecided: Vec<usize> = self.traces.iter().map(Vec::len).collect();
        if undecided.iter().any(|&u| u < self.keep + self.lose) {
            return Search::Infeasible;
        }
        let mut choice: Vec<u8> = Vec::with_capacity(n);
        let mut nodes = 0u64;
        // choice[i] = 0 -> S, 1 -> R
        let apply = |i: usize, side: u8, sc: &mut [usize], rc: &mut [usize], un: &mut [usize]| {
            let mut ok = true;
            for &t in &self.owners[i] {
                un[t] -= 1;
                if side == 0 {
                    sc[t] += 1;
                } else {
                    rc[t] += 1;
                }
                if sc[t] + un[t] < self.keep || rc[t] + un[t] < self.lose {
                    ok = false;
                }
            }
            ok
        };
        let undo = |i: usize, side: u8, sc: &mut [usize], rc: &mut [usize], un: &mut [usize]| {
            for &t in &self.owners[i] {
                un[t] += 1;
                if side == 0 {
                    sc[t] -= 1;
                } else {
                    rc[t] -= 1;
                }
            }
        };
        let mut side: u8 = 0;
        loop {
            let i = choice.len();
            if i == n {
                return Search::Found(choice.iter().map(|&c| c == 0).collect());
            }
            nodes += 1;
            if node_limit.is_some_and(|lim| nodes > lim) {
                return Search::OutOfNodes;
            }
            if apply(i, side, &mut in_s_count, &mut in_r_count, &mut undecided) {
                choice.push(side);
                side = 0;
                continue;
            }
            undo(i, side, &mut in_s_count, &mut in_r_count, &mut undecided);
            if side == 0 {
                side = 1;
                continue;
            }
            // both sides failed at i: pop until a point can switch to R
            loop {
                let Some(last) = choice.pop() else {
                    return Search::Infeasible;
                };
                let j = choice.len();
                undo(j, last, &mut in_s_count, &mut in_r_count, &mut undecided);
                if last == 0 {
                    side = 1;
                    break;
                }
            }
        }
    }
}

/// Runs `parts` rounds of the splitting recursion starting from the whole
/// universe and returns the trace together with `f = n on R_n`, 0 elsewhere.
///
/// In round `n` a splitter `S_n ⊆ M_n` must leave at least
/// `threshold * (parts - n)` points of every member trace in `S_n` (room for
/// the remaining rounds) and move at least `threshold` of them to `R_n`.
/// Points outside every trace stay in `S_n`.
pub fn split_family(
    family: &SubsetFamily,
    parts: usize,
    budget: &SplitBudget,
) -> Result<(SplitTrace, BreakingFunction)> {
    if parts == 0 {
        return Err(Error::InvalidParameter("at least one part is required".into()));
    }
    if budget.threshold == 0 {
        return Err(Error::InvalidParameter("split threshold must be at least 1".into()));
    }
    if let Some(i) = family.sets().iter().position(Vec::is_empty) {
        return Err(Error::InvalidParameter(format!("member {i} is empty")));
    }
    let u = family.universe();
    let mut pool: Vec<usize> = (0..u).collect();
    let mut rounds = Vec::with_capacity(parts);
    let mut values = vec![0usize; u];

    for round in 0..parts {
        let mut in_pool = vec![false; u];
        pool.iter().for_each(|&x| in_pool[x] = true);
        let mut relevant = vec![false; u];
        for s in family.sets() {
            for &x in s {
                if in_pool[x] {
                    relevant[x] = true;
                }
            }
        }
        let points: Vec<usize> = (0..u).filter(|&x| relevant[x]).collect();
        let mut position = vec![usize::MAX; u];
        for (p, &x) in points.iter().enumerate() {
            position[x] = p;
        }
        let traces: Vec<Vec<usize>> = family
            .sets()
            .iter()
            .map(|s| s.iter().filter(|&&x| in_pool[x]).map(|&x| position[x]).collect())
            .collect();
        let mut owners = vec![Vec::new(); points.len()];
        for (t, tr) in traces.iter().enumerate() {
            for &p in tr {
                owners[p].push(t);
            }
        }
        let query = SplitterQuery {
            points: &points,
            traces,
            owners,
            keep: budget.threshold * (parts - round),
            lose: budget.threshold,
        };
        let limit = (points.len() > budget.exhaustive_limit).then_some(budget.node_limit);
        let found = match query.backtrack(limit) {
            Search::Found(s) => Some(s),
            Search::Infeasible => None,
            Search::OutOfNodes => {
                let mut rng = substream(budget.seed, "split-round", round as u64);
                (0..budget.random_tries).find_map(|_| {
                    let s: Vec<bool> = (0..points.len()).map(|_| rng.gen_bool(0.5)).collect();
                    query.check(&s).then_some(s)
                })
            }
        };
        let Some(in_s) = found else {
            return Err(Error::SplitterNotFound {
                round,
                column: None,
            });
        };
        let removed: Vec<usize> = points
            .iter()
            .zip(&in_s)
            .filter(|(_, &s)| !s)
            .map(|(&x, _)| x)
            .collect();
        let mut is_removed = vec![false; u];
        removed.iter().for_each(|&x| is_removed[x] = true);
        let kept: Vec<usize> = pool.iter().copied().filter(|&x| !is_removed[x]).collect();
        for &x in &removed {
            values[x] = round;
        }
        rounds.push(SplitRound {
            pool: std::mem::take(&mut pool),
            kept: kept.clone(),
            removed,
        });
        pool = kept;
    }
    Ok((
        SplitTrace {
            rounds,
            residual: pool,
        },
        BreakingFunction {
            values,
            range_target: parts,
        },
    ))
}
